//! 2-step nilalgebras from compact semisimple symmetric pairs, with the -B
//! metric; the Hermitian symmetric case carries a canonical abelian complex
//! structure making -B pluriclosed.
//!
//! Run: `cargo run --example symmetric_pair`

use nilherm::complex::is_abelian_j;
use nilherm::construct::{hermitian_symmetric_j, su2_su2_diagonal_pair, su2_u1_pair};
use nilherm::hermitian::is_pluriclosed;
use nilherm::linalg::RMatrix;
use nilherm::rational::rat;

fn main() {
    let pair = su2_u1_pair().unwrap();
    let r = pair.nil.algebra.report().unwrap();
    println!(
        "n(su(2), u(1)): dim {}, dim n' = {}, irreducible: {}",
        r.dim, r.dim_commutator, pair.irreducible
    );

    // The Hermitian symmetric structure: J_m rotates m, J_1 pairs the flat
    // padding direction with h (the -B metric gives h the norm 2).
    let j_m = RMatrix::from_i64(vec![vec![0, -1], vec![1, 0]]);
    let j_1 = RMatrix::from_i64(vec![vec![0, -1], vec![1, 0]]);
    let gram_s = RMatrix::identity(1).scale(&rat(2));
    let t = hermitian_symmetric_j(&pair, &j_m, &j_1, &gram_s).unwrap();
    println!(
        "R ⊕ n(su(2), u(1)): dim {}, abelian J: {}, -B pluriclosed: {}",
        t.dim(),
        is_abelian_j(&t.algebra, &t.j),
        is_pluriclosed(&t)
    );

    let pair2 = su2_su2_diagonal_pair().unwrap();
    let r2 = pair2.nil.algebra.report().unwrap();
    println!(
        "n(su(2)+su(2), diagonal): dim {}, dim n' = {}, dim z = {}",
        r2.dim, r2.dim_commutator, r2.dim_center
    );
    // m is odd dimensional here, so no J_m candidate can even square to -I.
    let bad = hermitian_symmetric_j(&pair2, &RMatrix::identity(3), &j_1, &gram_s);
    println!("diagonal pair J_m candidate: {}", bad.unwrap_err());
}
