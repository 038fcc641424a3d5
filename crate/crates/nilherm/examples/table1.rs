//! The seven 6-dimensional real 2-step nilpotent Lie algebras: parse each
//! Salamon tuple and print its invariant fingerprint.
//!
//! Run: `cargo run --example table1`

use nilherm::construct::{table1, table1_tuple};

fn main() {
    println!("{:<24} {:<12} dim n'  dim z  step  b1", "tuple", "name");
    for row in 1..=7 {
        let (tuple, name) = table1_tuple(row).unwrap();
        let l = table1(row).unwrap();
        let r = l.report().unwrap();
        println!(
            "{:<24} {:<12} {:^6}  {:^5}  {:^4}  {:^2}",
            tuple, name, r.dim_commutator, r.dim_center, r.nilpotency_step, r.first_betti
        );
    }
}
