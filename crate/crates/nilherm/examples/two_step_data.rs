//! Complex 2-step data: the worked family in its three flavors (abelian,
//! bi-invariant, neither), validation clause reporting, and the exact
//! build → extract → build round trip.
//!
//! Run: `cargo run --example two_step_data`

use nilherm::complex::classify;
use nilherm::construct::{
    build_from_2step_data, example_2step, extract_2step_data, validate_2step_data,
    ExampleTwoStepVariant,
};

fn main() {
    for variant in [
        ExampleTwoStepVariant::Abelian,
        ExampleTwoStepVariant::BiInvariant,
        ExampleTwoStepVariant::Generic,
    ] {
        let (data, triple) = example_2step(2, variant).unwrap();
        let derived = validate_2step_data(&data).unwrap();
        let c = classify(&triple.algebra, &triple.j);
        println!(
            "{variant:?}: type {:?}, dim {}, abelian={}, bi-invariant={}",
            derived.ty,
            triple.dim(),
            c.abelian,
            c.biinvariant
        );

        let extracted = extract_2step_data(&triple).unwrap();
        let rebuilt = build_from_2step_data(&extracted).unwrap();
        assert_eq!(triple.algebra.brackets(), rebuilt.algebra.brackets());
        assert_eq!(triple.j, rebuilt.j);
        assert_eq!(triple.gram, rebuilt.gram);
        println!("  extract/rebuild: bit-exact round trip");
    }

    // A clause violation is reported by name: reuse the abelian data but let
    // psi collide with (j0)+.
    let (mut data, _) = example_2step(2, ExampleTwoStepVariant::Abelian).unwrap();
    data.psi[0] = data.j_v.clone();
    match validate_2step_data(&data) {
        Err(violations) => {
            for v in violations {
                println!("violation: {v}");
            }
        }
        Ok(_) => unreachable!(),
    }
}
