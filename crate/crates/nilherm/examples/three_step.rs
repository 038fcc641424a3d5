//! 3-step complex structures assembled from a 2-step piece, an abelian piece
//! and a twisting map rho; the 6-dimensional instance reproduces the free
//! algebra f_3 up to isomorphism.
//!
//! Run: `cargo run --example three_step`

use nilherm::complex::nilpotent_step;
use nilherm::construct::{
    build_from_3step_data, example_3step, extract_3step_data, surjectivity_conditions,
    validate_3step_data,
};
use nilherm::rational::rat;

fn main() {
    for n in 3..=5 {
        let m = n - 2;
        let mut a = vec![rat(0); m];
        a[0] = rat(1);
        let b = vec![rat(0); m];
        let d = example_3step(n, &a, &b).unwrap();
        assert!(validate_3step_data(&d).unwrap().is_ok());
        let surj = surjectivity_conditions(&d).unwrap();
        let t = build_from_3step_data(&d).unwrap();
        let r = t.algebra.report().unwrap();
        println!(
            "n={n}: dim {}, dim n' = {}, dim z = {}, J step {:?}, n' = z1+q: {}",
            r.dim,
            r.dim_commutator,
            r.dim_center,
            nilpotent_step(&t.algebra, &t.j),
            surj.holds
        );

        let extracted = extract_3step_data(&t).unwrap();
        let rebuilt = build_from_3step_data(&extracted).unwrap();
        assert_eq!(t.algebra.brackets(), rebuilt.algebra.brackets());
        println!("  extraction validates and rebuilds identically");
    }

    // Degenerate inputs are rejected with named clauses.
    let mut bad = example_3step(3, &[rat(1)], &[rat(0)]).unwrap();
    bad.mu.clear();
    match validate_3step_data(&bad).unwrap() {
        Err(clauses) => {
            for c in clauses {
                println!("rejected: {c}");
            }
        }
        Ok(()) => unreachable!(),
    }
}
