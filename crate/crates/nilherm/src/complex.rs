//! Almost-complex and complex structures on Lie algebras.
//!
//! Integrability is the vanishing of the Nijenhuis tensor
//! `N_J(x,y) = [x,y] + J([Jx,y] + [x,Jy]) - [Jx,Jy]`, decided on basis pairs
//! (sufficient by bilinearity). The nilpotency classification of `J` runs the
//! ascending series `a_0(J) = 0`,
//! `a_l(J) = { x : [x,g] ⊆ a_{l-1}(J) and [Jx,g] ⊆ a_{l-1}(J) }`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{annihilator_rows, LieAlgebra};
use crate::linalg::{rank_and_kernel, RMatrix, Subspace};
use crate::rational::{rat, Rational};

/// A linear map with `J² = -I`, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    mat: RMatrix,
}

impl ComplexStructure {
    pub fn new(mat: RMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotComplexStructure);
        }
        let n = mat.rows();
        if &mat * &mat != -RMatrix::identity(n) {
            return Err(Error::NotComplexStructure);
        }
        Ok(ComplexStructure { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.mat
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.mat.apply(v)
    }

    /// Standard block structure `J e_i = e_{n+i}`, `J e_{n+i} = -e_i` on `R^{2n}`.
    pub fn standard(two_n: usize) -> Self {
        assert!(
            two_n.is_multiple_of(2),
            "standard complex structure needs even dim"
        );
        let n = two_n / 2;
        let mut m = RMatrix::zeros(two_n, two_n);
        for i in 0..n {
            m.set(n + i, i, rat(1));
            m.set(i, n + i, rat(-1));
        }
        ComplexStructure { mat: m }
    }
}

/// Nijenhuis tensor at a pair of vectors.
pub fn nijenhuis(
    l: &LieAlgebra,
    j: &ComplexStructure,
    x: &[Rational],
    y: &[Rational],
) -> Result<Vec<Rational>> {
    if j.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            got: j.dim(),
        });
    }
    let jx = j.apply(x);
    let jy = j.apply(y);
    let mut inner = l.bracket(&jx, y)?;
    for (a, b) in inner.iter_mut().zip(l.bracket(x, &jy)?) {
        *a += b;
    }
    let mut n = l.bracket(x, y)?;
    for ((a, b), c) in n.iter_mut().zip(j.apply(&inner)).zip(l.bracket(&jx, &jy)?) {
        *a += b - c;
    }
    Ok(n)
}

/// First basis pair with nonzero Nijenhuis tensor, if any.
pub fn integrability_witness(
    l: &LieAlgebra,
    j: &ComplexStructure,
) -> Option<(usize, usize, Vec<Rational>)> {
    let d = l.dim();
    for i in 0..d {
        for k in i + 1..d {
            let mut ei = vec![Rational::zero(); d];
            ei[i] = rat(1);
            let mut ek = vec![Rational::zero(); d];
            ek[k] = rat(1);
            let n = nijenhuis(l, j, &ei, &ek).expect("dims validated");
            if !n.iter().all(|x| x.is_zero()) {
                return Some((i, k, n));
            }
        }
    }
    None
}

pub fn is_integrable(l: &LieAlgebra, j: &ComplexStructure) -> bool {
    integrability_witness(l, j).is_none()
}

/// The ascending series `a_l(J)`, from `a_0 = 0` up to stabilization.
///
/// Each entry is checked to be a J-invariant ideal, which the theory
/// guarantees; a failure would be an internal bug.
pub fn j_ascending_series(l: &LieAlgebra, j: &ComplexStructure) -> Vec<Subspace> {
    let d = l.dim();
    let mut series = vec![Subspace::zero(d)];
    let ad_neg: Vec<RMatrix> = (0..d)
        .map(|k| {
            let mut e = vec![Rational::zero(); d];
            e[k] = rat(1);
            -l.ad(&e)
        })
        .collect();
    loop {
        let prev = series.last().unwrap();
        let r = annihilator_rows(prev);
        let mut stacked = RMatrix::zeros(0, d);
        for m in &ad_neg {
            stacked = stacked.vcat(&(&r * m));
            stacked = stacked.vcat(&(&r * &(m * j.matrix())));
        }
        let (_, next) = rank_and_kernel(&stacked);
        if &next == prev {
            break;
        }
        debug_assert!(
            next.is_invariant_under(j.matrix()),
            "a_l(J) not J-invariant"
        );
        debug_assert!(is_ideal(l, &next), "a_l(J) not an ideal");
        series.push(next);
        if series.last().unwrap().dim() == d || series.len() > d + 1 {
            break;
        }
    }
    series
}

pub fn is_ideal(l: &LieAlgebra, s: &Subspace) -> bool {
    let d = l.dim();
    for v in s.basis_vectors() {
        for k in 0..d {
            let mut e = vec![Rational::zero(); d];
            e[k] = rat(1);
            if !s.contains_vector(&l.bracket(&v, &e).expect("dims match")) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum NilpotentStep {
    NonNilpotent,
    Step(usize),
}

/// `Step(t)` iff `a_t(J)` is everything with `t` minimal.
pub fn nilpotent_step(l: &LieAlgebra, j: &ComplexStructure) -> NilpotentStep {
    let series = j_ascending_series(l, j);
    if series.last().unwrap().dim() == l.dim() {
        NilpotentStep::Step(series.len() - 1)
    } else {
        NilpotentStep::NonNilpotent
    }
}

/// `[Jx, Jy] = [x, y]` on all basis pairs.
pub fn is_abelian_j(l: &LieAlgebra, j: &ComplexStructure) -> bool {
    abelian_witness(l, j).is_none()
}

pub fn abelian_witness(l: &LieAlgebra, j: &ComplexStructure) -> Option<(usize, usize)> {
    pair_witness(l, j, |l, j, x, y| {
        let lhs = l.bracket(&j.apply(x), &j.apply(y)).expect("dims");
        let rhs = l.bracket(x, y).expect("dims");
        lhs.iter().zip(&rhs).all(|(a, b)| a == b)
    })
}

/// `J[x, y] = [x, Jy]` on all basis pairs.
pub fn is_biinvariant_j(l: &LieAlgebra, j: &ComplexStructure) -> bool {
    biinvariant_witness(l, j).is_none()
}

pub fn biinvariant_witness(l: &LieAlgebra, j: &ComplexStructure) -> Option<(usize, usize)> {
    pair_witness(l, j, |l, j, x, y| {
        let lhs = j.apply(&l.bracket(x, y).expect("dims"));
        let rhs = l.bracket(x, &j.apply(y)).expect("dims");
        lhs.iter().zip(&rhs).all(|(a, b)| a == b)
    })
}

fn pair_witness(
    l: &LieAlgebra,
    j: &ComplexStructure,
    ok: impl Fn(&LieAlgebra, &ComplexStructure, &[Rational], &[Rational]) -> bool,
) -> Option<(usize, usize)> {
    let d = l.dim();
    for i in 0..d {
        for k in i + 1..d {
            let mut ei = vec![Rational::zero(); d];
            ei[i] = rat(1);
            let mut ek = vec![Rational::zero(); d];
            ek[k] = rat(1);
            if !ok(l, j, &ei, &ek) {
                return Some((i, k));
            }
        }
    }
    None
}

/// `n'_J = n' ∩ J n'`.
pub fn njprime(l: &LieAlgebra, j: &ComplexStructure) -> Subspace {
    let c = l.commutator_ideal();
    c.intersection(&c.map_by(j.matrix()))
}

/// `z ∩ Jz = 0`.
pub fn is_strongly_non_nilpotent(l: &LieAlgebra, j: &ComplexStructure) -> bool {
    let z = l.center();
    z.intersection(&z.map_by(j.matrix())).is_zero()
}

/// True iff a nonzero J-invariant central abelian factor splits off,
/// i.e. `z ∩ Jz ⊄ n' + Jn'`.
///
/// A J-invariant central subspace meeting `n' + Jn'` trivially always admits a
/// J-invariant complementary ideal containing `n' + Jn'`, and conversely a
/// complex abelian factor inside the center avoids `n' + Jn'`; factors not
/// contained in the center are out of scope and flagged in analysis output.
pub fn has_central_complex_abelian_factor(l: &LieAlgebra, j: &ComplexStructure) -> bool {
    let z = l.center();
    let zjz = z.intersection(&z.map_by(j.matrix()));
    let c = l.commutator_ideal();
    let z0 = c.sum(&c.map_by(j.matrix()));
    !z0.contains(&zjz)
}

/// Full classification of a complex structure on a Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct JClassification {
    pub integrable: bool,
    pub nilpotent_step: NilpotentStep,
    pub abelian: bool,
    pub biinvariant: bool,
    pub strongly_non_nilpotent: bool,
    pub dim_njprime: usize,
    pub j_series_dims: Vec<usize>,
    pub has_central_complex_abelian_factor: Option<bool>,
}

pub fn classify(l: &LieAlgebra, j: &ComplexStructure) -> JClassification {
    let integrable = is_integrable(l, j);
    let series = j_ascending_series(l, j);
    let c = JClassification {
        integrable,
        nilpotent_step: nilpotent_step(l, j),
        abelian: is_abelian_j(l, j),
        biinvariant: is_biinvariant_j(l, j),
        strongly_non_nilpotent: is_strongly_non_nilpotent(l, j),
        dim_njprime: njprime(l, j).dim(),
        j_series_dims: series.iter().map(|s| s.dim()).collect(),
        // Only meaningful for integrable J.
        has_central_complex_abelian_factor: integrable
            .then(|| has_central_complex_abelian_factor(l, j)),
    };
    // Abelian and bi-invariant structures are integrable; on 2-step algebras
    // integrable structures are 2- or 3-step.
    assert!(!(c.abelian || c.biinvariant) || c.integrable);
    if c.integrable && l.is_two_step() {
        assert!(matches!(
            c.nilpotent_step,
            NilpotentStep::Step(2) | NilpotentStep::Step(3)
        ));
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{free_complex_structure, free_two_step, heisenberg};
    use crate::lie::BracketTable;

    fn basis_vec(dim: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        v[i] = rat(1);
        v
    }

    /// R ⊕ h3 in basis (w, e1, f1, z) with the standard abelian J:
    /// Je1 = f1, Jz = w.
    fn r_h3_with_abelian_j() -> (LieAlgebra, ComplexStructure) {
        let l = LieAlgebra::abelian(1).direct_sum(&heisenberg(1).unwrap());
        let mut m = RMatrix::zeros(4, 4);
        m.set(2, 1, rat(1)); // Je1 = f1
        m.set(1, 2, rat(-1));
        m.set(0, 3, rat(1)); // Jz = w
        m.set(3, 0, rat(-1));
        (l, ComplexStructure::new(m).unwrap())
    }

    #[test]
    fn rejects_non_complex_structure() {
        assert!(ComplexStructure::new(RMatrix::identity(2)).is_err());
        assert!(ComplexStructure::new(RMatrix::zeros(2, 3)).is_err());
        // J^2 = +I is not enough.
        let swap = RMatrix::from_i64(vec![vec![0, 1], vec![1, 0]]);
        assert!(ComplexStructure::new(swap).is_err());
    }

    #[test]
    fn abelian_j_has_zero_nijenhuis() {
        let (l, j) = r_h3_with_abelian_j();
        assert!(is_abelian_j(&l, &j));
        assert!(is_integrable(&l, &j));
    }

    #[test]
    fn free_rank4_structure_is_integrable() {
        let (l, j) = free_complex_structure(4).unwrap();
        assert!(is_integrable(&l, &j));
    }

    #[test]
    fn mixing_center_breaks_integrability() {
        // On h3 ⊕ R in basis (w, e1, f1, z), choose J pairing e1 with z:
        // Je1 = z, Jf1 = w. Expansion gives N_J(e1, f1) = [e1,f1] = z != 0.
        let l = LieAlgebra::abelian(1).direct_sum(&heisenberg(1).unwrap());
        let mut m = RMatrix::zeros(4, 4);
        m.set(3, 1, rat(1)); // Je1 = z
        m.set(1, 3, rat(-1));
        m.set(0, 2, rat(1)); // Jf1 = w
        m.set(2, 0, rat(-1));
        let j = ComplexStructure::new(m).unwrap();
        let n = nijenhuis(&l, &j, &basis_vec(4, 1), &basis_vec(4, 2)).unwrap();
        assert_eq!(n, basis_vec(4, 3));
        assert!(!is_integrable(&l, &j));
    }

    #[test]
    fn nijenhuis_is_antisymmetric_bilinear() {
        let (l, j) = free_complex_structure(3).unwrap();
        let x = basis_vec(l.dim(), 0);
        let y = basis_vec(l.dim(), 2);
        let nxy = nijenhuis(&l, &j, &x, &y).unwrap();
        let nyx = nijenhuis(&l, &j, &y, &x).unwrap();
        assert!(nxy.iter().zip(&nyx).all(|(a, b)| a == &-b));
        let nxx = nijenhuis(&l, &j, &x, &x).unwrap();
        assert!(nxx.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn trivial_z_cap_jz_freezes_the_series() {
        // On R ⊕ h5, basis (w, e1, e2, f1, f2, z), pick J with Jz = e1 and
        // Jf2 = w. Then z(R ⊕ h5) = span(w, z) meets Jz = span(e1, f2)
        // trivially, a_1(J) = 0 and J is not nilpotent.
        let l = LieAlgebra::abelian(1).direct_sum(&heisenberg(2).unwrap());
        let mut m = RMatrix::zeros(6, 6);
        m.set(1, 5, rat(1)); // Jz = e1
        m.set(5, 1, rat(-1));
        m.set(3, 2, rat(1)); // Je2 = f1
        m.set(2, 3, rat(-1));
        m.set(0, 4, rat(1)); // Jf2 = w
        m.set(4, 0, rat(-1));
        let j = ComplexStructure::new(m).unwrap();
        let series = j_ascending_series(&l, &j);
        assert_eq!(series.len(), 1);
        assert_eq!(nilpotent_step(&l, &j), NilpotentStep::NonNilpotent);
        assert!(is_strongly_non_nilpotent(&l, &j));
    }

    #[test]
    fn free_structures_have_documented_steps() {
        let (l3, j3) = free_complex_structure(3).unwrap();
        assert_eq!(nilpotent_step(&l3, &j3), NilpotentStep::Step(3));
        // The series stabilizes at f3 in 3 steps.
        let series = j_ascending_series(&l3, &j3);
        assert_eq!(series.last().unwrap().dim(), 6);

        let (l4, j4) = free_complex_structure(4).unwrap();
        assert_eq!(nilpotent_step(&l4, &j4), NilpotentStep::Step(2));
    }

    #[test]
    fn abelian_algebra_is_one_step() {
        let l = LieAlgebra::abelian(4);
        let j = ComplexStructure::standard(4);
        let series = j_ascending_series(&l, &j);
        assert_eq!(series.last().unwrap().dim(), 4);
        assert_eq!(nilpotent_step(&l, &j), NilpotentStep::Step(1));
        assert!(is_abelian_j(&l, &j));
        assert!(is_biinvariant_j(&l, &j));
        assert!(!is_strongly_non_nilpotent(&l, &j));
    }

    #[test]
    fn njprime_cases() {
        // 3-step J on f3 has nonzero n'_J.
        let (l3, j3) = free_complex_structure(3).unwrap();
        assert!(!njprime(&l3, &j3).is_zero());

        // Bi-invariant J keeps n' invariant, so n'_J = n'.
        let l = LieAlgebra::abelian(4);
        let j = ComplexStructure::standard(4);
        assert_eq!(njprime(&l, &j).dim(), l.commutator_ideal().dim());

        // R ⊕ h3 with abelian J: dim n' = 1 forces n' ∩ Jn' = 0.
        let (lh, jh) = r_h3_with_abelian_j();
        assert!(njprime(&lh, &jh).is_zero());
    }

    #[test]
    fn two_step_never_strongly_non_nilpotent() {
        let (lh, jh) = r_h3_with_abelian_j();
        assert!(!is_strongly_non_nilpotent(&lh, &jh));
        let (l4, j4) = free_complex_structure(4).unwrap();
        assert!(!is_strongly_non_nilpotent(&l4, &j4));
    }

    #[test]
    fn central_complex_abelian_factor_detection() {
        // R^2 ⊕ (R ⊕ h3) with J preserving the R^2 factor.
        let (lh, jh) = r_h3_with_abelian_j();
        let l = LieAlgebra::abelian(2).direct_sum(&lh);
        let mut m = RMatrix::zeros(6, 6);
        m.set(1, 0, rat(1)); // Ja1 = a2
        m.set(0, 1, rat(-1));
        for i in 0..4 {
            for k in 0..4 {
                m.set(2 + i, 2 + k, jh.matrix().at(i, k).clone());
            }
        }
        let j = ComplexStructure::new(m).unwrap();
        assert!(is_integrable(&l, &j));
        assert!(has_central_complex_abelian_factor(&l, &j));

        // f3 with its J: z ∩ Jz ⊆ z = n' ⊆ n' + Jn'.
        let (l3, j3) = free_complex_structure(3).unwrap();
        assert!(!has_central_complex_abelian_factor(&l3, &j3));
    }

    #[test]
    fn dim_one_commutator_forces_abelian_j() {
        // Any integrable J on an algebra with dim n' = 1 is abelian.
        let (lh, jh) = r_h3_with_abelian_j();
        assert!(is_abelian_j(&lh, &jh));
        let c = classify(&lh, &jh);
        assert!(c.integrable && c.abelian);
        assert_eq!(c.nilpotent_step, NilpotentStep::Step(2));
        assert_eq!(c.has_central_complex_abelian_factor, Some(false));
    }

    #[test]
    fn j_series_is_dominated_by_central_series() {
        // a_l(J) ⊆ g_l along the whole series.
        for (l, j) in [
            free_complex_structure(3).unwrap(),
            free_complex_structure(4).unwrap(),
            r_h3_with_abelian_j(),
        ] {
            let a_series = j_ascending_series(&l, &j);
            let g_series = l.ascending_central_series();
            let top = g_series.last().unwrap();
            for (step, a) in a_series.iter().enumerate() {
                // The central series is stored up to stabilization; beyond
                // that g_l is the stabilized subspace.
                let g = g_series.get(step).unwrap_or(top);
                assert!(g.contains(a), "a_{step}(J) must sit inside g_{step}");
            }
        }
    }

    #[test]
    fn jacobi_free_checks_on_classification() {
        let f4 = free_two_step(4).unwrap();
        assert_eq!(f4.dim(), 10);
        assert_eq!(f4.commutator_ideal().dim(), 6);
        let mut table = BracketTable::new();
        table.insert((0, 1), basis_vec(3, 2));
        let h3 = LieAlgebra::new(3, table, None).unwrap();
        assert_eq!(h3.brackets(), heisenberg(1).unwrap().brackets());
    }
}
