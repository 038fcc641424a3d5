//! Pluriclosed (SKT) metrics on trivial central extensions of Heisenberg
//! algebras: the metric is pluriclosed exactly when the Heisenberg factor is
//! h_3, and three independent routes agree (dc ≡ 0, the 2-step quadruple
//! criterion, and the abelian triple criterion).
//!
//! Run: `cargo run --example pluriclosed`

use nilherm::construct::standard_heisenberg_abelian_triple;
use nilherm::hermitian::{
    is_pluriclosed, pluriclosed_center_sampling_check, pluriclosed_criterion_2step,
    pluriclosed_criterion_abelian, pluriclosed_witness,
};

fn main() {
    println!("algebra          dc == 0   2-step eq   abelian eq");
    for k in 0..=1 {
        for m in 1..=3 {
            let t = standard_heisenberg_abelian_triple(k, m).unwrap();
            let dc = is_pluriclosed(&t);
            let two = pluriclosed_criterion_2step(&t).unwrap();
            let ab = pluriclosed_criterion_abelian(&t).unwrap();
            println!(
                "R^{} + h{}:      {:<9} {:<11} {}",
                2 * k + 1,
                2 * m + 1,
                dc,
                two,
                ab
            );
            if let Some(((i, j, a, b), val)) = pluriclosed_witness(&t) {
                println!(
                    "                 witness dc(e{}, e{}, e{}, e{}) = {val}",
                    i + 1,
                    j + 1,
                    a + 1,
                    b + 1
                );
            }
        }
    }

    // For the pluriclosed cases the center is exactly { y : [y, Jy] = 0 };
    // one inclusion is exact, the other sampled.
    let t = standard_heisenberg_abelian_triple(1, 1).unwrap();
    let rec = pluriclosed_center_sampling_check(&t, 0, 200);
    println!(
        "center criterion on R^3 + h3: exact inclusion {}, {} noncentral samples all nonzero: {}",
        rec.exact_inclusion_holds, rec.samples, rec.sampled_noncentral_all_nonzero
    );
}
