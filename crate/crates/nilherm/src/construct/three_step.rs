//! Complex 3-step data: a 3-step complex structure on a 2-step nilpotent
//! algebra is assembled from a 2-step piece `(n0 = q ⊕ v, α)` and an abelian
//! piece `(n1 = h ⊕ v, μ)` twisted together by an injective complex-linear
//! `ρ: u → Hom(v, q)`.
//!
//! The build uses the basis order `z2, u, z1, q, v` with the identity metric;
//! extraction re-derives the data in the same normal form.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::complex::{
    is_abelian_j, is_integrable, nilpotent_step, njprime, ComplexStructure, NilpotentStep,
};
use crate::error::{Error, Result};
use crate::hermitian::MetricComplexTriple;
use crate::lie::{BracketTable, LieAlgebra};
use crate::linalg::{rank_and_kernel, solve, RMatrix, Subspace};
use crate::rational::{rat, Rational};

/// Constructive input for a 3-step complex structure.
///
/// `h = (z2 ⊕ u) ⊕ z1` carries `J_1` (in the basis order `z2, u, z1`) with
/// `J_1 z1 = z2 ⊕ u`; `alpha` and `mu` are the `q`- and `z1`-valued 2-forms
/// on `v` (keys `i < j` over the `v`-basis), and `rho` maps each `u`-basis
/// vector to a `q × v` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex3StepData {
    pub dim_v: usize,
    pub j_v: RMatrix,
    pub dim_q: usize,
    pub j_0: RMatrix,
    pub dim_z1: usize,
    pub dim_z2: usize,
    pub j_1: RMatrix,
    pub alpha: BTreeMap<(usize, usize), Vec<Rational>>,
    pub mu: BTreeMap<(usize, usize), Vec<Rational>>,
    pub rho: Vec<RMatrix>,
}

impl Complex3StepData {
    pub fn dim_u(&self) -> usize {
        self.dim_z1 - self.dim_z2
    }

    pub fn total_dim(&self) -> usize {
        2 * self.dim_z1 + self.dim_q + self.dim_v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreeStepClause {
    /// (i): ρ injective and complex-linear intertwining.
    RhoInjective,
    RhoComplexLinear,
    /// (ii): `J_0 ⊕ J_v` integrable of step at most 2 on `(n0, α)`.
    TwoStepPiece,
    /// (iii): `μ != 0` and `J_1 ⊕ J_v` abelian on `(n1, μ)`.
    MuNonzero,
    AbelianPiece,
}

impl fmt::Display for ThreeStepClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ThreeStepClause::RhoInjective => "(i): rho is not injective",
            ThreeStepClause::RhoComplexLinear => "(i): rho is not complex linear",
            ThreeStepClause::TwoStepPiece => "(ii): J0 + Jv is not 2-step on (n0, alpha)",
            ThreeStepClause::MuNonzero => "(iii): mu = 0",
            ThreeStepClause::AbelianPiece => "(iii): J1 + Jv is not abelian on (n1, mu)",
        };
        write!(f, "{s}")
    }
}

/// Structural shape checks, reported as hard errors rather than clauses.
fn check_shape(d: &Complex3StepData) -> Result<()> {
    let (nv, q, z1, z2) = (d.dim_v, d.dim_q, d.dim_z1, d.dim_z2);
    if z2 > z1 || z1 == z2 {
        return Err(Error::precondition("need dim z2 < dim z1 (u nonzero)"));
    }
    if z1 == 0 {
        return Err(Error::precondition("z1 must be nonzero"));
    }
    for (m, n, name) in [
        (&d.j_v, nv, "J_v"),
        (&d.j_0, q, "J_0"),
        (&d.j_1, 2 * z1, "J_1"),
    ] {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.rows(),
            });
        }
        if (m * m) != (-RMatrix::identity(n)) {
            return Err(Error::validation(format!("{name}^2 != -I")));
        }
    }
    // J_1 must swap z1 into z2 ⊕ u (first z1 coordinates of h).
    let h = 2 * z1;
    for col in z1..h {
        for row in z1..h {
            if !d.j_1.at(row, col).is_zero() {
                return Err(Error::validation(
                    "J_1 must map z1 into z2 ⊕ u (h-basis order z2, u, z1)",
                ));
            }
        }
    }
    if d.rho.len() != d.dim_u() {
        return Err(Error::DimensionMismatch {
            expected: d.dim_u(),
            got: d.rho.len(),
        });
    }
    for r in &d.rho {
        if r.rows() != q || r.cols() != nv {
            return Err(Error::DimensionMismatch {
                expected: q,
                got: r.rows(),
            });
        }
    }
    for (&(i, j), val) in &d.alpha {
        if i >= j || j >= nv || val.len() != q {
            return Err(Error::validation("alpha key or value out of shape"));
        }
    }
    for (&(i, j), val) in &d.mu {
        if i >= j || j >= nv || val.len() != z1 {
            return Err(Error::validation("mu key or value out of shape"));
        }
    }
    Ok(())
}

/// Check conditions (i)-(iii); each failure named.
pub fn validate_3step_data(
    d: &Complex3StepData,
) -> Result<std::result::Result<(), Vec<ThreeStepClause>>> {
    check_shape(d)?;
    let mut violations = Vec::new();

    // (i) rho injective as a linear map u -> Hom(v, q), and J_0 ρ(u) = ρ(u) J_v.
    if d.dim_u() > 0 {
        let cols: Vec<Vec<Rational>> = d.rho.iter().map(|r| r.vectorize()).collect();
        let m = RMatrix::from_columns(d.dim_q * d.dim_v, &cols);
        let (rank, _) = rank_and_kernel(&m);
        if rank != d.dim_u() {
            violations.push(ThreeStepClause::RhoInjective);
        }
    }
    for r in &d.rho {
        if (&d.j_0 * r) != (r * &d.j_v) {
            violations.push(ThreeStepClause::RhoComplexLinear);
            break;
        }
    }

    // (ii) the 2-step piece.
    let (n0, j_n0) = two_step_piece(d)?;
    let step_ok = match nilpotent_step(&n0, &j_n0) {
        NilpotentStep::Step(s) => s <= 2,
        NilpotentStep::NonNilpotent => false,
    };
    if !is_integrable(&n0, &j_n0) || !step_ok {
        violations.push(ThreeStepClause::TwoStepPiece);
    }

    // (iii) the abelian piece.
    if d.mu.values().all(|v| v.iter().all(|c| c.is_zero())) {
        violations.push(ThreeStepClause::MuNonzero);
    }
    let (n1, j_n1) = abelian_piece(d)?;
    if !is_abelian_j(&n1, &j_n1) {
        violations.push(ThreeStepClause::AbelianPiece);
    }

    Ok(if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    })
}

/// `(n0 = q ⊕ v, α)` with `J_0 ⊕ J_v`.
fn two_step_piece(d: &Complex3StepData) -> Result<(LieAlgebra, ComplexStructure)> {
    let dim = d.dim_q + d.dim_v;
    let mut table = BracketTable::new();
    for (&(i, j), val) in &d.alpha {
        let mut v = vec![Rational::zero(); dim];
        v[..d.dim_q].clone_from_slice(val);
        if !v.iter().all(|c| c.is_zero()) {
            table.insert((d.dim_q + i, d.dim_q + j), v);
        }
    }
    let l = LieAlgebra::new(dim, table, None)?;
    let j = ComplexStructure::new(RMatrix::block_diag(&[d.j_0.clone(), d.j_v.clone()]))?;
    Ok((l, j))
}

/// `(n1 = h ⊕ v, μ)` with `J_1 ⊕ J_v`.
fn abelian_piece(d: &Complex3StepData) -> Result<(LieAlgebra, ComplexStructure)> {
    let h = 2 * d.dim_z1;
    let dim = h + d.dim_v;
    let mut table = BracketTable::new();
    for (&(i, j), val) in &d.mu {
        let mut v = vec![Rational::zero(); dim];
        // z1 sits after z2 ⊕ u inside h.
        v[d.dim_z1..h].clone_from_slice(val);
        if !v.iter().all(|c| c.is_zero()) {
            table.insert((h + i, h + j), v);
        }
    }
    let l = LieAlgebra::new(dim, table, None)?;
    let j = ComplexStructure::new(RMatrix::block_diag(&[d.j_1.clone(), d.j_v.clone()]))?;
    Ok((l, j))
}

/// Whether the assembled algebra will have `n' = z1 ⊕ q` (and `n'_J = q`),
/// with the twisted-sum conditions as diagnostics.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SurjectivityReport {
    /// Direct check: span of all brackets equals `z1 ⊕ q`.
    pub holds: bool,
    /// For every `z1`-basis vector, some `y ∈ Λ²v` has `μ(y) = z` and
    /// `α(y) ∈ Im ρ`.
    pub condition_i: bool,
    /// For every `q`-basis vector `x`, some `y ∈ ker μ` has `x - α(y) ∈ Im ρ`.
    pub condition_ii: bool,
}

pub fn surjectivity_conditions(d: &Complex3StepData) -> Result<SurjectivityReport> {
    check_shape(d)?;
    let nv = d.dim_v;
    let q = d.dim_q;
    let z1 = d.dim_z1;
    // Wedge basis of Λ²v: pairs (i, j), i < j.
    let pairs: Vec<(usize, usize)> = (0..nv)
        .flat_map(|i| ((i + 1)..nv).map(move |j| (i, j)))
        .collect();
    let nw = pairs.len();
    let zerov = |n: usize| vec![Rational::zero(); n];
    let alpha_mat = RMatrix::from_fn(q, nw, |row, col| {
        d.alpha
            .get(&pairs[col])
            .map(|v| v[row].clone())
            .unwrap_or_else(Rational::zero)
    });
    let mu_mat = RMatrix::from_fn(z1, nw, |row, col| {
        d.mu.get(&pairs[col])
            .map(|v| v[row].clone())
            .unwrap_or_else(Rational::zero)
    });
    // Total image of rho inside q.
    let rho_img: Vec<Vec<Rational>> = d.rho.iter().flat_map(|r| r.columns()).collect();
    let rho_span = Subspace::from_spanning(q, &rho_img);
    let rmat = rho_span.basis().clone();
    let nr = rmat.cols();

    // Direct span test: n' = Im(α ⊕ μ) + Im ρ inside z1 ⊕ q.
    let mut span_vecs: Vec<Vec<Rational>> = Vec::new();
    for col in 0..nw {
        let mut v = zerov(z1 + q);
        for (row, slot) in v.iter_mut().take(z1).enumerate() {
            *slot = mu_mat.at(row, col).clone();
        }
        for row in 0..q {
            v[z1 + row] = alpha_mat.at(row, col).clone();
        }
        span_vecs.push(v);
    }
    for rv in &rho_img {
        let mut v = zerov(z1 + q);
        v[z1..].clone_from_slice(rv);
        span_vecs.push(v);
    }
    let holds = Subspace::from_spanning(z1 + q, &span_vecs).dim() == z1 + q;

    // (i): solve [mu; alpha - R c] per z1-basis target.
    let mut condition_i = true;
    for m in 0..z1 {
        // Unknowns (y, c): mu_mat y = e_m, alpha_mat y - R c = 0.
        let top = mu_mat.hcat(&RMatrix::zeros(z1, nr));
        let bottom = alpha_mat.hcat(&(-rmat.clone()));
        let a = top.vcat(&bottom);
        let mut rhs = zerov(z1 + q);
        rhs[m] = rat(1);
        if solve(&a, &RMatrix::column_vector(&rhs)).is_none() {
            condition_i = false;
            break;
        }
    }
    // (ii): per q-basis target x: mu y = 0, alpha y + R c = x.
    let mut condition_ii = true;
    for m in 0..q {
        let top = mu_mat.hcat(&RMatrix::zeros(z1, nr));
        let bottom = alpha_mat.hcat(&rmat.clone());
        let a = top.vcat(&bottom);
        let mut rhs = zerov(z1 + q);
        rhs[z1 + m] = rat(1);
        if solve(&a, &RMatrix::column_vector(&rhs)).is_none() {
            condition_ii = false;
            break;
        }
    }

    Ok(SurjectivityReport {
        holds,
        condition_i,
        condition_ii,
    })
}

/// Assemble the 3-step triple in the basis `z2, u, z1, q, v` with the
/// identity metric. Postconditions asserted: the structure is integrable and
/// 3-step; when the surjectivity conditions hold, `n' = z1 ⊕ q` and
/// `n'_J = q`.
pub fn build_from_3step_data(d: &Complex3StepData) -> Result<MetricComplexTriple> {
    match validate_3step_data(d)? {
        Ok(()) => {}
        Err(vs) => {
            return Err(Error::Validation(
                vs.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
            ))
        }
    }
    let surj = surjectivity_conditions(d)?;

    let z1 = d.dim_z1;
    let z2 = d.dim_z2;
    let du = d.dim_u();
    let q = d.dim_q;
    let nv = d.dim_v;
    let dim = d.total_dim();
    let q_off = 2 * z1;
    let v_off = q_off + q;

    let mut table = BracketTable::new();
    // [v_i, v_j] = alpha(i,j) in q plus mu(i,j) in z1.
    for i in 0..nv {
        for j in i + 1..nv {
            let mut v = vec![Rational::zero(); dim];
            let mut nonzero = false;
            if let Some(a) = d.alpha.get(&(i, j)) {
                for (row, c) in a.iter().enumerate() {
                    if !c.is_zero() {
                        v[q_off + row] = c.clone();
                        nonzero = true;
                    }
                }
            }
            if let Some(m) = d.mu.get(&(i, j)) {
                // The z1-block sits after z2 ⊕ u, i.e. at offset dim_z1.
                for (row, c) in m.iter().enumerate() {
                    if !c.is_zero() {
                        v[z1 + row] = c.clone();
                        nonzero = true;
                    }
                }
            }
            if nonzero {
                table.insert((v_off + i, v_off + j), v);
            }
        }
    }
    // [u_a, v_i] = rho(u_a) v_i in q.
    for a in 0..du {
        for i in 0..nv {
            let col = d.rho[a].col(i);
            if col.iter().all(|c| c.is_zero()) {
                continue;
            }
            let mut v = vec![Rational::zero(); dim];
            v[q_off..q_off + q].clone_from_slice(&col);
            table.insert((z2 + a, v_off + i), v);
        }
    }
    let algebra = LieAlgebra::new(dim, table, None)?;
    let jm = RMatrix::block_diag(&[d.j_1.clone(), d.j_0.clone(), d.j_v.clone()]);
    let j = ComplexStructure::new(jm)?;
    let triple = MetricComplexTriple::new(algebra, j, RMatrix::identity(dim))?;

    assert!(
        is_integrable(&triple.algebra, &triple.j),
        "3-step build must be integrable"
    );
    assert_eq!(
        nilpotent_step(&triple.algebra, &triple.j),
        NilpotentStep::Step(3),
        "3-step build must be 3-step"
    );
    if surj.holds {
        let block = |from: usize, len: usize| -> Subspace {
            let vecs: Vec<Vec<Rational>> = (from..from + len)
                .map(|i| {
                    let mut v = vec![Rational::zero(); dim];
                    v[i] = rat(1);
                    v
                })
                .collect();
            Subspace::from_spanning(dim, &vecs)
        };
        assert_eq!(
            triple.algebra.commutator_ideal(),
            block(z1, z1).sum(&block(q_off, q)),
            "n' must be z1 ⊕ q"
        );
        assert_eq!(
            njprime(&triple.algebra, &triple.j),
            block(q_off, q),
            "n'_J must be q"
        );
    }
    Ok(triple)
}

/// Recover a data tuple from a 3-step pair: the decompositions
/// `n' = z1 ⊕ n'_J`, `J z1 = z2 ⊕ u`, `v = (n' + Jn')^⊥`, with `α, μ, ρ` read
/// off the brackets. The extracted tuple always validates (the
/// characterization theorem, run as a check).
pub fn extract_3step_data(t: &MetricComplexTriple) -> Result<Complex3StepData> {
    if !is_integrable(&t.algebra, &t.j) {
        return Err(Error::precondition(
            "extract_3step_data requires integrable J",
        ));
    }
    if nilpotent_step(&t.algebra, &t.j) != NilpotentStep::Step(3) {
        return Err(Error::precondition(
            "extract_3step_data requires a 3-step J",
        ));
    }
    if t.algebra.nilpotency_step()? != 2 {
        return Err(Error::precondition(
            "extract_3step_data requires a 2-step nilpotent algebra",
        ));
    }
    let dim = t.dim();
    let jm = t.j.matrix();
    let nprime = t.algebra.commutator_ideal();
    let nj = njprime(&t.algebra, &t.j);
    let center = t.algebra.center();

    // n' = z1 ⊕⊥ n'_J.
    let z1_space = nprime.intersection(&nj.orthogonal_complement(Some(&t.gram))?);
    if z1_space.is_zero() {
        return Err(Error::validation("z1 = 0: J would be 2-step"));
    }
    // J z1 = z2 ⊕⊥ u with z2 ⊆ z.
    let jz1 = z1_space.map_by(jm);
    let z2_space = jz1.intersection(&center);
    let u_space = jz1.intersection(&z2_space.orthogonal_complement(Some(&t.gram))?);
    if u_space.is_zero() {
        return Err(Error::validation("u = 0: J z1 would be central"));
    }
    // v = (n' + Jn')^⊥ is J-invariant.
    let z0 = nprime.sum(&nprime.map_by(jm));
    let v_space = z0.orthogonal_complement(Some(&t.gram))?;
    if !v_space.is_invariant_under(jm) {
        return Err(Error::precondition("v = (n' + Jn')^⊥ is not J-invariant"));
    }

    let z1 = z1_space.dim();
    let z2 = z2_space.dim();
    let q = nj.dim();
    let nv = v_space.dim();

    // Basis columns in the canonical order z2, u, z1, q, v.
    let mut h_cols = z2_space.basis_vectors();
    h_cols.extend(u_space.basis_vectors());
    h_cols.extend(z1_space.basis_vectors());
    let q_cols = nj.basis_vectors();
    let v_cols = v_space.basis_vectors();

    let restrict = |cols: &[Vec<Rational>]| -> Result<RMatrix> {
        let b = RMatrix::from_columns(dim, cols);
        let imgs: Vec<Vec<Rational>> = cols.iter().map(|c| jm.apply(c)).collect();
        solve(&b, &RMatrix::from_columns(dim, &imgs))
            .ok_or_else(|| Error::precondition("subspace not J-invariant"))
    };
    let j_1 = restrict(&h_cols)?;
    let j_0 = restrict(&q_cols)?;
    let j_v = restrict(&v_cols)?;

    // Components of [v_i, v_j] in z1 ⊕ q, and rho from [u_a, v_i].
    let zq_cols: Vec<Vec<Rational>> = z1_space
        .basis_vectors()
        .into_iter()
        .chain(q_cols.iter().cloned())
        .collect();
    let zq = RMatrix::from_columns(dim, &zq_cols);
    let mut alpha = BTreeMap::new();
    let mut mu = BTreeMap::new();
    for i in 0..nv {
        for j in i + 1..nv {
            let br = t.algebra.bracket(&v_cols[i], &v_cols[j])?;
            let coords = solve(&zq, &RMatrix::column_vector(&br))
                .ok_or_else(|| Error::validation("[v,v] does not lie in z1 ⊕ q"))?;
            let c = coords.col(0);
            let muv = c[..z1].to_vec();
            let alv = c[z1..].to_vec();
            if !muv.iter().all(|x| x.is_zero()) {
                mu.insert((i, j), muv);
            }
            if !alv.iter().all(|x| x.is_zero()) {
                alpha.insert((i, j), alv);
            }
        }
    }
    let qmat = RMatrix::from_columns(dim, &q_cols);
    let mut rho = Vec::new();
    for ua in u_space.basis_vectors() {
        let cols: Vec<Vec<Rational>> = v_cols
            .iter()
            .map(|vi| {
                let br = t.algebra.bracket(&ua, vi).expect("dims");
                solve(&qmat, &RMatrix::column_vector(&br))
                    .ok_or_else(|| Error::validation("[u, v] does not lie in n'_J"))
                    .map(|m| m.col(0))
            })
            .collect::<Result<_>>()?;
        rho.push(RMatrix::from_columns(q, &cols));
    }

    let data = Complex3StepData {
        dim_v: nv,
        j_v,
        dim_q: q,
        j_0,
        dim_z1: z1,
        dim_z2: z2,
        j_1,
        alpha,
        mu,
        rho,
    };
    // Characterization theorem as an extraction postcondition.
    match validate_3step_data(&data)? {
        Ok(()) => Ok(data),
        Err(vs) => Err(Error::validation(format!(
            "extracted 3-step data fails validation: {}",
            vs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        ))),
    }
}

/// The 2n-dimensional worked family with `n' = z` of dimension 3: the `n = 3`
/// instance is the free algebra `f_3` up to isomorphism. `a` and `b` are the
/// `ρ`-coefficient rows (length `n - 2`), not both zero.
pub fn example_3step(n: usize, a: &[Rational], b: &[Rational]) -> Result<Complex3StepData> {
    if n < 3 {
        return Err(Error::precondition("example_3step requires n >= 3"));
    }
    let m = n - 2;
    if a.len() != m || b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: a.len(),
        });
    }
    if a.iter().all(|c| c.is_zero()) && b.iter().all(|c| c.is_zero()) {
        return Err(Error::precondition(
            "example_3step needs some a_i or b_i nonzero (rank ρ = 2)",
        ));
    }
    let nv = 2 * m;
    let j_v = ComplexStructure::standard(nv).matrix().clone();
    let j_0 = ComplexStructure::standard(2).matrix().clone();
    // h-basis (y, x) = (u, z1); J_1 x = y.
    let j_1 = RMatrix::from_i64(vec![vec![0, 1], vec![-1, 0]]);
    // mu(e_k, e_{k+m}) = x.
    let mut mu = BTreeMap::new();
    for k in 0..m {
        mu.insert((k, k + m), vec![rat(1)]);
    }
    // alpha(e_i, e_j) = <J_v e_i, e_j> f1: the Heisenberg-style bracket.
    let mut alpha = BTreeMap::new();
    for i in 0..nv {
        for j in i + 1..nv {
            let val = j_v.at(j, i).clone();
            if !val.is_zero() {
                alpha.insert((i, j), vec![val, Rational::zero()]);
            }
        }
    }
    // rho(y) = [[a, -b], [b, a]].
    let rho = RMatrix::from_fn(2, nv, |row, col| {
        let (coef, i) = if col < m { (0, col) } else { (1, col - m) };
        match (row, coef) {
            (0, 0) => a[i].clone(),
            (0, 1) => -b[i].clone(),
            (1, 0) => b[i].clone(),
            (1, 1) => a[i].clone(),
            _ => unreachable!(),
        }
    });
    Ok(Complex3StepData {
        dim_v: nv,
        j_v,
        dim_q: 2,
        j_0,
        dim_z1: 1,
        dim_z2: 0,
        j_1,
        alpha,
        mu,
        rho: vec![rho],
    })
}
