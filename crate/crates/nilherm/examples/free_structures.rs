//! Complex structures on free 2-step nilpotent Lie algebras: `f_r` carries
//! one when `dim f_r` is even (2-step for `r ≡ 0`, 3-step for `r ≡ 3` mod 4),
//! and `R ⊕ f_r` does otherwise.
//!
//! Run: `cargo run --release --example free_structures`

use nilherm::complex::{classify, nilpotent_step};
use nilherm::construct::free_complex_structure;

fn main() {
    println!(
        "{:<8} {:<6} {:<12} {:<11} abelian",
        "rank", "dim", "algebra", "J step"
    );
    for r in 2..=8 {
        let (l, j) = free_complex_structure(r).unwrap();
        let on_extension = l.dim() % 2 == 0 && r % 4 != 0 && r % 4 != 3;
        let c = classify(&l, &j);
        assert!(c.integrable);
        println!(
            "{:<8} {:<6} {:<12} {:<11} {}",
            r,
            l.dim(),
            if on_extension {
                format!("R + f{r}")
            } else {
                format!("f{r}")
            },
            format!("{:?}", nilpotent_step(&l, &j)),
            c.abelian,
        );
    }
}
