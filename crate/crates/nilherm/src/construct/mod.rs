//! Explicit constructions: Heisenberg and free algebras with their complex
//! structures, complex 2-step and 3-step data, symmetric-pair and naturally
//! reductive nilalgebras.

mod free;
mod natred;
mod three_step;
mod two_step;

pub use free::{free_complex_structure, free_two_step};
pub use natred::{
    commutant, hermitian_symmetric_j, invariant_complex_on_isotypic, invariant_quaternionic_triple,
    irreducible_type, killing_form, natred_abelian_complex, natred_hypercomplex,
    naturally_reductive, su2, su2_adjoint_rep, su2_spin_rep, su2_su2_diagonal_pair, su2_u1_pair,
    symmetric_pair_nilalgebra, u1_rotation_rep, IrreducibleType, IsotypicBlock, Representation,
    SymmetricPair,
};
pub use three_step::{
    build_from_3step_data, example_3step, extract_3step_data, surjectivity_conditions,
    validate_3step_data, Complex3StepData, SurjectivityReport, ThreeStepClause,
};
pub use two_step::{
    build_from_2step_data, decompose_njprime, example_2step, extract_2step_data,
    validate_2step_data, Complex2StepData, ExampleTwoStepVariant, TwoStepClause, TwoStepType,
};

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::complex::ComplexStructure;
use crate::error::{Error, Result};
use crate::hermitian::MetricComplexTriple;
use crate::lie::{parse_salamon, LieAlgebra};
use crate::linalg::RMatrix;
use crate::rational::{rat, Rational};

/// The `(2m+1)`-dimensional Heisenberg algebra in the basis
/// `(e_1..e_m, f_1..f_m, z)` with `[e_i, f_i] = z`.
pub fn heisenberg(m: usize) -> Result<LieAlgebra> {
    if m == 0 {
        return Err(Error::precondition("heisenberg requires m >= 1"));
    }
    let dim = 2 * m + 1;
    let mut table = BTreeMap::new();
    for i in 0..m {
        let mut z = vec![Rational::zero(); dim];
        z[2 * m] = rat(1);
        table.insert((i, m + i), z);
    }
    LieAlgebra::new(dim, table, Some(format!("h{}", dim)))
}

/// The seven 6-dimensional real 2-step nilpotent Lie algebras, by their
/// Salamon tuples (rows 1..=7).
pub fn table1(row: usize) -> Result<LieAlgebra> {
    let (tuple, name) = table1_tuple(row)?;
    Ok(parse_salamon(tuple, 6)?.with_name(name))
}

pub fn table1_tuple(row: usize) -> Result<(&'static str, &'static str)> {
    Ok(match row {
        1 => ("(0,0,0,12,13,23)", "f3"),
        2 => ("(0,0,0,0,13-24,14+23)", "h3(C)"),
        3 => ("(0,0,0,0,12,14+23)", "h3 x| R3"),
        4 => ("(0,0,0,0,12,34)", "h3 + h3"),
        5 => ("(0,0,0,0,12,13)", "R x| R5"),
        6 => ("(0,0,0,0,0,12+34)", "R + h5"),
        7 => ("(0,0,0,0,0,12)", "R3 + h3"),
        _ => return Err(Error::precondition("table1 rows are 1..=7")),
    })
}

/// Expected `(dim n', dim z)` pairs for the seven Table rows, in order.
pub const TABLE1_DIMS: [(usize, usize); 7] =
    [(3, 3), (2, 2), (2, 2), (2, 2), (2, 3), (1, 2), (1, 4)];

/// `R^{2k+1} ⊕ h_{2m+1}` with the standard abelian complex structure and the
/// identity metric: pairs `(u_{2i-1}, u_{2i})`, `(e_i, f_i)` and `(z, u_0)`.
pub fn standard_heisenberg_abelian_triple(k: usize, m: usize) -> Result<MetricComplexTriple> {
    let flat = LieAlgebra::abelian(2 * k + 1);
    let l = flat.direct_sum(&heisenberg(m)?);
    let dim = l.dim();
    let mut j = RMatrix::zeros(dim, dim);
    let mut pair = |a: usize, b: usize| {
        j.set(b, a, rat(1));
        j.set(a, b, rat(-1));
    };
    for i in 0..k {
        pair(1 + 2 * i, 2 + 2 * i);
    }
    let e0 = 2 * k + 1;
    for i in 0..m {
        pair(e0 + i, e0 + m + i);
    }
    // z pairs with the leftover flat direction u_0.
    pair(e0 + 2 * m, 0);
    let j = ComplexStructure::new(j)?;
    MetricComplexTriple::new(l, j, RMatrix::identity(dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{classify, is_abelian_j, NilpotentStep};

    #[test]
    fn heisenberg_invariants() {
        let h3 = heisenberg(1).unwrap();
        assert_eq!(
            h3.brackets(),
            parse_salamon("(0,0,12)", 3).unwrap().brackets()
        );
        let r = heisenberg(2).unwrap().report().unwrap();
        assert_eq!(
            (r.dim, r.dim_commutator, r.dim_center, r.nilpotency_step),
            (5, 1, 1, 2)
        );
        assert!(heisenberg(0).is_err());
    }

    #[test]
    fn table1_reproduction() {
        for (row, &(dn, dz)) in (1..=7).zip(TABLE1_DIMS.iter()) {
            let l = table1(row).unwrap();
            assert_eq!(l.commutator_ideal().dim(), dn, "row {row} dim n'");
            assert_eq!(l.center().dim(), dz, "row {row} dim z");
            assert_eq!(l.nilpotency_step().unwrap(), 2, "row {row} step");
        }
        // Row 6 matches R ⊕ h5 invariants.
        let rh5 = LieAlgebra::abelian(1).direct_sum(&heisenberg(2).unwrap());
        let r = rh5.report().unwrap();
        assert_eq!((r.dim_commutator, r.dim_center), TABLE1_DIMS[5]);
    }

    #[test]
    fn standard_triples_are_abelian() {
        for (k, m) in [(0, 1), (0, 2), (1, 1), (1, 3)] {
            let t = standard_heisenberg_abelian_triple(k, m).unwrap();
            assert!(is_abelian_j(&t.algebra, &t.j), "k={k} m={m}");
            let c = classify(&t.algebra, &t.j);
            assert!(c.integrable);
            assert_eq!(c.nilpotent_step, NilpotentStep::Step(2));
        }
    }
}
