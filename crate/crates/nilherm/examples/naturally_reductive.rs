//! Naturally reductive 2-step nilalgebras from representations of compact
//! Lie algebras: Schur types via commutants, invariant abelian complex
//! structures (even real multiplicities), and the hypercomplex HKT case.
//!
//! Run: `cargo run --example naturally_reductive`

use nilherm::complex::is_abelian_j;
use nilherm::construct::{
    commutant, invariant_complex_on_isotypic, irreducible_type, natred_abelian_complex,
    natred_hypercomplex, su2_adjoint_rep, su2_spin_rep, u1_rotation_rep, IsotypicBlock,
    Representation,
};
use nilherm::hermitian::{is_hkt, validate_hypercomplex};
use nilherm::linalg::RMatrix;

fn main() {
    for (name, rep) in [
        ("u(1) on R^2", u1_rotation_rep()),
        ("su(2) adjoint on R^3", su2_adjoint_rep()),
        ("su(2) spin on R^4", su2_spin_rep()),
    ] {
        println!(
            "{name}: commutant dim {}, type {:?}",
            commutant(&rep).dim(),
            irreducible_type(&rep).unwrap()
        );
    }

    // Real type with multiplicity 1 has no invariant complex structure.
    let adj = su2_adjoint_rep();
    let single = IsotypicBlock::new(adj.clone(), 3, 1, RMatrix::identity(3)).unwrap();
    println!(
        "adjoint x1: invariant J -> {}",
        invariant_complex_on_isotypic(&single).unwrap_err()
    );

    // Multiplicity 2 succeeds and assembles into an abelian Hermitian pair.
    let doubled = Representation {
        algebra: adj.algebra.clone(),
        mats: adj
            .mats
            .iter()
            .map(|m| RMatrix::block_diag(&[m.clone(), m.clone()]))
            .collect(),
    };
    let block = IsotypicBlock::new(doubled, 3, 2, RMatrix::identity(6)).unwrap();
    let t = natred_abelian_complex(&[block], &RMatrix::identity(3), None).unwrap();
    println!(
        "adjoint x2: R ⊕ N(su(2), R^6) has dim {}, abelian J: {}",
        t.dim(),
        is_abelian_j(&t.algebra, &t.j)
    );

    // The quaternionic block gives the 8-dimensional HKT example.
    let spin = IsotypicBlock::new(su2_spin_rep(), 4, 1, RMatrix::identity(4)).unwrap();
    let (nil, h) = natred_hypercomplex(&[spin], &RMatrix::identity(3), None).unwrap();
    validate_hypercomplex(&nil.algebra, &h).unwrap();
    println!(
        "spin x1: R ⊕ quaternionic Heisenberg, dim {}, HKT: {}",
        nil.algebra.dim(),
        is_hkt(&nil.algebra, &h, &nil.gram).unwrap()
    );
}
