//! Complex 2-step data: the 5-tuple `(n0, <,>_0, J_v, z1, ψ)` from which
//! every 2-step nilpotent algebra with a 2-step complex structure and no
//! complex abelian factor is assembled, together with the inverse extraction.
//!
//! The build output is always expressed in the canonical adapted basis
//! `z~1, z1, Jp+, Jp-, Ja1, p+, p-, a1, v0, Jv0`; extraction re-derives the
//! data in the same normal form, which pins the build → extract → build round
//! trip bit-exactly.

use std::fmt;

use num_traits::Zero;

use crate::complex::{
    has_central_complex_abelian_factor, is_integrable, nilpotent_step, njprime, ComplexStructure,
    NilpotentStep,
};
use crate::error::{Error, Result};
use crate::hermitian::{
    is_skew, j_map, minus_part, plus_part, restrict_to_subspace, s_map, MetricComplexTriple,
};
use crate::lie::{BracketTable, LieAlgebra, MetricLieAlgebra};
use crate::linalg::{rank_and_kernel, RMatrix, Subspace};
use crate::rational::{rat, ratio, Rational};

/// The constructive input: a 2-step (or abelian) metric algebra `n0` with
/// `b = [n0, n0]`, a compatible complex structure `J_v` on `v = b^⊥`, an
/// abstract summand `z1` of dimension `z1_dim` (implicitly carrying the
/// identity inner product) and a linear map `ψ: z1 ⊕ b → u(n)`.
///
/// `ψ` is indexed by the `z1` unit vectors followed by the canonical echelon
/// basis of `b`; its values are operators on `v` in the canonical echelon
/// basis of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex2StepData {
    pub n0: MetricLieAlgebra,
    pub j_v: RMatrix,
    pub z1_dim: usize,
    pub psi: Vec<RMatrix>,
}

/// Type `(r, p+, p-, a1, n)` of a complex 2-step data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TwoStepType {
    pub r: usize,
    pub p_plus: usize,
    pub p_minus: usize,
    pub a_one: usize,
    pub n: usize,
}

/// Clause labels of the data definition, used in validation reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoStepClause {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for TwoStepClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TwoStepClause::I => "(i)",
            TwoStepClause::II => "(ii)",
            TwoStepClause::III => "(iii)",
            TwoStepClause::IV => "(iv)",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub struct TwoStepViolation {
    pub clause: TwoStepClause,
    pub detail: String,
}

impl fmt::Display for TwoStepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clause {}: {}", self.clause, self.detail)
    }
}

/// Everything derivable from a valid data: the pieces of `b`, the bracket
/// operators and restricted grams.
#[derive(Clone, Debug)]
pub struct TwoStepDerived {
    pub b: Subspace,
    pub v: Subspace,
    pub gram_b: RMatrix,
    pub gram_v: RMatrix,
    /// `j0` per canonical `b`-basis column, acting on `v`-coordinates.
    pub j0: Vec<RMatrix>,
    /// Subspaces of the `b`-coordinate space (dimension `dim b`).
    pub p_plus: Subspace,
    pub p_minus: Subspace,
    pub a_one: Subspace,
    pub ty: TwoStepType,
}

/// Check every clause of the data definition; failures are named
/// individually.
pub fn validate_2step_data(
    data: &Complex2StepData,
) -> std::result::Result<TwoStepDerived, Vec<TwoStepViolation>> {
    let mut violations = Vec::new();
    let alg = &data.n0.algebra;
    let gram0 = &data.n0.gram;

    // (i) n0 is 2-step nilpotent or abelian, with b of even codimension.
    let step = alg.nilpotency_step();
    match step {
        Ok(s) if s <= 2 => {}
        Ok(s) => violations.push(TwoStepViolation {
            clause: TwoStepClause::I,
            detail: format!("n0 is {s}-step nilpotent, expected 2-step or abelian"),
        }),
        Err(_) => violations.push(TwoStepViolation {
            clause: TwoStepClause::I,
            detail: "n0 is not nilpotent".into(),
        }),
    }
    let b = alg.commutator_ideal();
    let codim = alg.dim() - b.dim();
    if !codim.is_multiple_of(2) {
        violations.push(TwoStepViolation {
            clause: TwoStepClause::I,
            detail: format!("b has odd codimension {codim} in n0"),
        });
    }

    // (ii) J_v is an orthogonal complex structure on v = b^⊥.
    let v = match b.orthogonal_complement(Some(gram0)) {
        Ok(v) => v,
        Err(e) => {
            violations.push(TwoStepViolation {
                clause: TwoStepClause::II,
                detail: format!("cannot form v = b^⊥: {e}"),
            });
            return Err(violations);
        }
    };
    let vb = v.basis();
    let gram_v = &(&vb.transpose() * gram0) * vb;
    let nv = v.dim();
    if data.j_v.rows() != nv || data.j_v.cols() != nv {
        violations.push(TwoStepViolation {
            clause: TwoStepClause::II,
            detail: format!(
                "J_v is {}x{}, expected {nv}x{nv}",
                data.j_v.rows(),
                data.j_v.cols()
            ),
        });
        return Err(violations);
    }
    if (&data.j_v * &data.j_v) != (-RMatrix::identity(nv)) {
        violations.push(TwoStepViolation {
            clause: TwoStepClause::II,
            detail: "J_v^2 != -I".into(),
        });
    }
    if !is_skew(&data.j_v, &gram_v) {
        violations.push(TwoStepViolation {
            clause: TwoStepClause::II,
            detail: "J_v is not skew-symmetric with respect to the inner product on v".into(),
        });
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    // Bracket operators j0 on b (injective automatically since b = [n0, n0]).
    let j0 = bracket_operators(&data.n0, &b, &v, &gram_v);

    // Maximal p+ / p- inside the b-coordinate space, a1 the orthogonal rest.
    let db = b.dim();
    let combine = |coords: &[Rational], ops: &[RMatrix]| -> RMatrix {
        let mut acc = RMatrix::zeros(nv, nv);
        for (c, op) in coords.iter().zip(ops) {
            if !c.is_zero() {
                acc = acc + op.scale(c);
            }
        }
        acc
    };
    let p_plus = kernel_of_operator_map(db, |c| {
        minus_part(&combine(c, &j0), &data.j_v).expect("J_v validated")
    });
    let p_minus = kernel_of_operator_map(db, |c| {
        plus_part(&combine(c, &j0), &data.j_v).expect("J_v validated")
    });
    let gram_b = &(&b.basis().transpose() * gram0) * b.basis();
    let pp_sum = p_plus.sum(&p_minus);
    if pp_sum.dim() != p_plus.dim() + p_minus.dim() {
        violations.push(TwoStepViolation {
            clause: TwoStepClause::IV,
            detail: "p+ and p- overlap; j0 cannot be injective".into(),
        });
        return Err(violations);
    }
    let a_one = pp_sum
        .orthogonal_complement(Some(&gram_b))
        .expect("gram_b is SPD");

    let ty = TwoStepType {
        r: data.z1_dim,
        p_plus: p_plus.dim(),
        p_minus: p_minus.dim(),
        a_one: a_one.dim(),
        n: nv / 2,
    };

    // (iii) ψ shape, values in u(n), injectivity on z1 ⊕ p+, p- ⊆ ker ψ,
    // π(ker ψ) ⊆ ker ψ, and z1 != 0 when n0 is abelian.
    if data.psi.len() != data.z1_dim + db {
        violations.push(TwoStepViolation {
            clause: TwoStepClause::III,
            detail: format!(
                "ψ has {} entries, expected z1_dim + dim b = {}",
                data.psi.len(),
                data.z1_dim + db
            ),
        });
        return Err(violations);
    }
    for (k, m) in data.psi.iter().enumerate() {
        if m.rows() != nv || m.cols() != nv {
            violations.push(TwoStepViolation {
                clause: TwoStepClause::III,
                detail: format!("ψ[{k}] has wrong shape"),
            });
            return Err(violations);
        }
        if !is_skew(m, &gram_v) || !m.commutator(&data.j_v).is_zero() {
            violations.push(TwoStepViolation {
                clause: TwoStepClause::III,
                detail: format!("ψ[{k}] is not in u(n)"),
            });
        }
    }
    if b.is_zero() && data.z1_dim == 0 {
        violations.push(TwoStepViolation {
            clause: TwoStepClause::III,
            detail: "z1 must be nonzero when n0 is abelian".into(),
        });
    }
    let psi_of = |c: &[Rational]| -> RMatrix {
        // c lives in z1 ⊕ b coordinates.
        combine(c, &data.psi)
    };
    // Injectivity on z1 ⊕ p+.
    {
        let mut span: Vec<Vec<Rational>> = Vec::new();
        for i in 0..data.z1_dim {
            let mut c = vec![Rational::zero(); data.z1_dim + db];
            c[i] = rat(1);
            span.push(c);
        }
        for p in p_plus.basis_vectors() {
            let mut c = vec![Rational::zero(); data.z1_dim + db];
            c[data.z1_dim..].clone_from_slice(&p);
            span.push(c);
        }
        let imgs: Vec<Vec<Rational>> = span.iter().map(|c| psi_of(c).vectorize()).collect();
        if !imgs.is_empty() {
            let m = RMatrix::from_columns(nv * nv, &imgs);
            let (rank, _) = rank_and_kernel(&m);
            if rank != imgs.len() {
                violations.push(TwoStepViolation {
                    clause: TwoStepClause::III,
                    detail: "ψ is not injective on z1 ⊕ p+".into(),
                });
            }
        }
    }
    // p- ⊆ ker ψ.
    for p in p_minus.basis_vectors() {
        let mut c = vec![Rational::zero(); data.z1_dim + db];
        c[data.z1_dim..].clone_from_slice(&p);
        if !psi_of(&c).is_zero() {
            violations.push(TwoStepViolation {
                clause: TwoStepClause::III,
                detail: "p- is not contained in ker ψ".into(),
            });
            break;
        }
    }
    // π(ker ψ) ⊆ ker ψ, π the projection onto the b-part.
    {
        let total = data.z1_dim + db;
        if total > 0 {
            let cols: Vec<Vec<Rational>> = (0..total).map(|k| data.psi[k].vectorize()).collect();
            let m = RMatrix::from_columns(nv * nv, &cols);
            let (_, ker) = rank_and_kernel(&m);
            for kvec in ker.basis_vectors() {
                let mut proj = kvec.clone();
                for c in proj.iter_mut().take(data.z1_dim) {
                    *c = Rational::zero();
                }
                if !psi_of(&proj).is_zero() {
                    violations.push(TwoStepViolation {
                        clause: TwoStepClause::III,
                        detail: "π(ker ψ) is not contained in ker ψ".into(),
                    });
                    break;
                }
            }
        }
    }

    // (iv) Im (j0)+ ∩ Im ψ = 0.
    {
        let j0_plus_img: Vec<Vec<Rational>> = j0
            .iter()
            .map(|op| plus_part(op, &data.j_v).expect("validated").vectorize())
            .collect();
        let psi_img: Vec<Vec<Rational>> = data.psi.iter().map(|m| m.vectorize()).collect();
        let s1 = Subspace::from_spanning(nv * nv, &j0_plus_img);
        let s2 = Subspace::from_spanning(nv * nv, &psi_img);
        if !s1.intersection(&s2).is_zero() {
            violations.push(TwoStepViolation {
                clause: TwoStepClause::IV,
                detail: "Im (j0)+ meets Im ψ nontrivially".into(),
            });
        }
    }

    if violations.is_empty() {
        Ok(TwoStepDerived {
            b,
            v,
            gram_b,
            gram_v,
            j0,
            p_plus,
            p_minus,
            a_one,
            ty,
        })
    } else {
        Err(violations)
    }
}

/// `j(z)` per basis column of a central ideal `b` of a metric algebra,
/// acting on `v`-coordinates: `⟨j(z)v, w⟩ = ⟨z, [v, w]⟩`.
fn bracket_operators(
    mla: &MetricLieAlgebra,
    b: &Subspace,
    v: &Subspace,
    gram_v: &RMatrix,
) -> Vec<RMatrix> {
    let vb = v.basis().columns();
    let n = vb.len();
    let gram_v_inv = gram_v.inverse().expect("gram_v is SPD");
    b.basis_vectors()
        .iter()
        .map(|z| {
            let m = RMatrix::from_fn(n, n, |a, c| {
                let br = mla.algebra.bracket(&vb[a], &vb[c]).expect("dims");
                mla.inner(z, &br)
            });
            &gram_v_inv * &m.transpose()
        })
        .collect()
}

/// Kernel of a linear operator-valued map on `Q^dim`, as a subspace of `Q^dim`.
fn kernel_of_operator_map(dim: usize, f: impl Fn(&[Rational]) -> RMatrix) -> Subspace {
    if dim == 0 {
        return Subspace::zero(0);
    }
    let cols: Vec<Vec<Rational>> = (0..dim)
        .map(|k| {
            let mut c = vec![Rational::zero(); dim];
            c[k] = rat(1);
            f(&c).vectorize()
        })
        .collect();
    let rows = cols[0].len();
    let m = RMatrix::from_columns(rows, &cols);
    let (_, ker) = rank_and_kernel(&m);
    ker
}

/// Assemble the 2-step nilpotent Hermitian algebra of a valid data, in the
/// canonical adapted basis. All theorem-level postconditions are asserted:
/// the result is integrable, 2-step, `n' = z1 ⊕ b~ ⊕ b`, `n'_J = b~ ⊕ b`,
/// has no central complex abelian factor, and its S-map matches the
/// case-by-case closed form.
pub fn build_from_2step_data(data: &Complex2StepData) -> Result<MetricComplexTriple> {
    let derived = validate_2step_data(data).map_err(|vs| {
        Error::Validation(
            vs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        )
    })?;
    build_validated(data, &derived)
}

fn build_validated(
    data: &Complex2StepData,
    derived: &TwoStepDerived,
) -> Result<MetricComplexTriple> {
    let r = data.z1_dim;
    let db = derived.b.dim();
    let nv = derived.v.dim();
    let dim = 2 * r + 2 * db + nv;

    // Reorder the b-basis as (p+, p-, a1); R has the new basis in old
    // b-coordinates as columns.
    let mut reorder_cols: Vec<Vec<Rational>> = Vec::new();
    reorder_cols.extend(derived.p_plus.basis_vectors());
    reorder_cols.extend(derived.p_minus.basis_vectors());
    reorder_cols.extend(derived.a_one.basis_vectors());
    let rmat = RMatrix::from_columns(db, &reorder_cols);
    if reorder_cols.len() != db {
        return Err(Error::validation("b does not decompose as p+ ⊕ p- ⊕ a1"));
    }
    let gram_b_new = &(&rmat.transpose() * &derived.gram_b) * &rmat;
    let combine = |coords: &[Rational], ops: &[RMatrix]| -> RMatrix {
        let mut acc = RMatrix::zeros(nv, nv);
        for (c, op) in coords.iter().zip(ops) {
            if !c.is_zero() {
                acc = acc + op.scale(c);
            }
        }
        acc
    };
    let j0_new: Vec<RMatrix> = reorder_cols
        .iter()
        .map(|c| combine(c, &derived.j0))
        .collect();
    let psi_b: Vec<RMatrix> = data.psi[r..].to_vec();
    let psi_b_new: Vec<RMatrix> = reorder_cols.iter().map(|c| combine(c, &psi_b)).collect();
    let psi_z1: Vec<RMatrix> = data.psi[..r].to_vec();

    // Adapt the v-basis to (v0, J_v v0); J_v becomes the standard block form.
    let v_half = Subspace::full(nv).j_adapted_half(&data.j_v, false);
    let mut w_cols = v_half.basis_vectors();
    let jw: Vec<Vec<Rational>> = w_cols.iter().map(|c| data.j_v.apply(c)).collect();
    w_cols.extend(jw);
    let w = RMatrix::from_columns(nv, &w_cols);
    let w_inv = w.inverse().expect("adapted vectors form a basis");
    let conj = |m: &RMatrix| -> RMatrix { &(&w_inv * m) * &w };
    let j_v_std = conj(&data.j_v);
    debug_assert_eq!(j_v_std, ComplexStructure::standard(nv).matrix().clone());
    let gram_v_new = &(&w.transpose() * &derived.gram_v) * &w;
    let j0_ad: Vec<RMatrix> = j0_new.iter().map(&conj).collect();
    let psi_b_ad: Vec<RMatrix> = psi_b_new.iter().map(&conj).collect();
    let psi_z1_ad: Vec<RMatrix> = psi_z1.iter().map(&conj).collect();

    // j over the z-part basis (z~1, z1, b~ = Jb, b blocks), per the inverse
    // construction: j = 0 on z~1, ψ on z1, j0 on b, and on b~ the value at
    // w = J z is (1/2)[J_v, j0(z)] + ψ(z).
    let half = ratio(1, 2);
    let mut j_ops: Vec<RMatrix> = Vec::with_capacity(2 * r + 2 * db);
    for _ in 0..r {
        j_ops.push(RMatrix::zeros(nv, nv));
    }
    j_ops.extend(psi_z1_ad.iter().cloned());
    for l in 0..db {
        let comm = j_v_std.commutator(&j0_ad[l]).scale(&half);
        j_ops.push(&comm + &psi_b_ad[l]);
    }
    j_ops.extend(j0_ad.iter().cloned());

    // Gram: identity on z~1 and z1, the reordered b-gram on both b~ and b,
    // the adapted v-gram on v.
    let gram = RMatrix::block_diag(&[
        RMatrix::identity(r),
        RMatrix::identity(r),
        gram_b_new.clone(),
        gram_b_new.clone(),
        gram_v_new.clone(),
    ]);

    // Brackets: only v x v is nonzero; the z-components come from the dual
    // basis of the z-part gram.
    let zdim = 2 * r + 2 * db;
    let gram_z = RMatrix::block_diag(&[
        RMatrix::identity(r),
        RMatrix::identity(r),
        gram_b_new.clone(),
        gram_b_new,
    ]);
    let gram_z_inv = gram_z.inverse().expect("SPD");
    let mut table = BracketTable::new();
    for a in 0..nv {
        for c in a + 1..nv {
            let mut y = vec![Rational::zero(); zdim];
            for (m, op) in j_ops.iter().enumerate() {
                // ⟨j(z_m) e_a, e_c⟩ with respect to gram_v_new.
                y[m] = gram_v_new.apply(&op.col(a))[c].clone();
            }
            let x = gram_z_inv.apply(&y);
            if x.iter().all(|t| t.is_zero()) {
                continue;
            }
            let mut vfull = vec![Rational::zero(); dim];
            vfull[..zdim].clone_from_slice(&x);
            table.insert((zdim + a, zdim + c), vfull);
        }
    }
    let algebra = LieAlgebra::new(dim, table, None)?;

    // J: z1 -> z~1, b -> b~, standard on v.
    let mut jm = RMatrix::zeros(dim, dim);
    for i in 0..r {
        jm.set(i, r + i, rat(1)); // J z1_i = z~1_i
        jm.set(r + i, i, rat(-1));
    }
    for l in 0..db {
        jm.set(2 * r + l, 2 * r + db + l, rat(1)); // J b_l = b~_l
        jm.set(2 * r + db + l, 2 * r + l, rat(-1));
    }
    for a in 0..nv {
        for c in 0..nv {
            if !j_v_std.at(a, c).is_zero() {
                jm.set(zdim + a, zdim + c, j_v_std.at(a, c).clone());
            }
        }
    }
    let j = ComplexStructure::new(jm)?;
    let triple = MetricComplexTriple::new(algebra, j, gram)?;

    assert_build_postconditions(&triple, r, db, &j0_ad, &psi_z1_ad, &psi_b_ad, &j_v_std);
    Ok(triple)
}

/// Theorem-level postconditions of the inverse construction.
#[allow(clippy::too_many_arguments)]
fn assert_build_postconditions(
    t: &MetricComplexTriple,
    r: usize,
    db: usize,
    j0_ad: &[RMatrix],
    psi_z1_ad: &[RMatrix],
    psi_b_ad: &[RMatrix],
    j_v_std: &RMatrix,
) {
    let dim = t.dim();
    let zdim = 2 * r + 2 * db;
    assert!(
        is_integrable(&t.algebra, &t.j),
        "built J must be integrable"
    );
    assert_eq!(
        nilpotent_step(&t.algebra, &t.j),
        NilpotentStep::Step(2),
        "built J must be 2-step"
    );
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
    let nprime = t.algebra.commutator_ideal();
    assert_eq!(nprime, block(r, r + 2 * db), "n' must be z1 ⊕ b~ ⊕ b");
    assert_eq!(
        njprime(&t.algebra, &t.j),
        block(2 * r, 2 * db),
        "n'_J must be b~ ⊕ b"
    );
    assert!(
        !has_central_complex_abelian_factor(&t.algebra, &t.j),
        "built pair must have no central complex abelian factor"
    );

    // S matches the closed form case by case.
    let z0 = block(0, zdim);
    let pkg = j_map(t, &z0).expect("z0 is sandwiched");
    let s = s_map(t, &pkg).expect("z0 is J-invariant");
    let half = ratio(1, 2);
    for (idx, z) in z0.basis_vectors().iter().enumerate() {
        // The canonical z0 basis is the unit vectors of the z-blocks.
        let pos = z.iter().position(|c| !c.is_zero()).unwrap();
        let expected = if pos < r {
            // z~1 = J z1: S(z) = ψ(Jz) with Jz = -z1_pos.
            -psi_z1_ad[pos].clone()
        } else if pos < 2 * r {
            // z1: S(z) = -J_v ψ(z).
            -(j_v_std * &psi_z1_ad[pos - r])
        } else if pos < 2 * r + db {
            // b~ = Jb: S(Jz) = (1/2) J_v {J_v, j0(z)} - J_v ψ(z).
            let l = pos - 2 * r;
            let anti = j_v_std.anticommutator(&j0_ad[l]);
            (j_v_std * &anti).scale(&half) - (j_v_std * &psi_b_ad[l])
        } else {
            // b: S(z) = -(1/2){J_v, j0(z)} + ψ(z).
            let l = pos - 2 * r - db;
            &psi_b_ad[l] - &j_v_std.anticommutator(&j0_ad[l]).scale(&half)
        };
        assert_eq!(s[idx], expected, "S closed form mismatch at z-basis {idx}");
    }
}

/// The refining decomposition of `n'_J` into J-invariant, pairwise
/// g-orthogonal pieces: `((n'_J)+, ker(S|n'_J), a)`.
///
/// Requires `J` 2-step. For metrics where the pieces fail to be orthogonal
/// the decomposition of the theorem does not exist and an error is returned.
pub fn decompose_njprime(t: &MetricComplexTriple) -> Result<(Subspace, Subspace, Subspace)> {
    if nilpotent_step(&t.algebra, &t.j) != NilpotentStep::Step(2) {
        return Err(Error::precondition("decompose_njprime requires a 2-step J"));
    }
    let nj = njprime(&t.algebra, &t.j);
    let nprime = t.algebra.commutator_ideal();
    let z0 = nprime.sum(&nprime.map_by(t.j.matrix()));
    let pkg = j_map(t, &z0)?;
    let j_v = restrict_to_subspace(t.j.matrix(), &pkg.v)?;
    let s_ops = s_map(t, &pkg)?;

    let dim_nj = nj.dim();
    let nj_basis = nj.basis_vectors();
    // Operators indexed by n'_J coordinates.
    let op_at = |c: &[Rational], f: &dyn Fn(&[Rational]) -> RMatrix| -> RMatrix {
        let mut amb = vec![Rational::zero(); t.dim()];
        for (coef, bvec) in c.iter().zip(&nj_basis) {
            for (a, b) in amb.iter_mut().zip(bvec) {
                *a += coef * b;
            }
        }
        f(&amb)
    };
    let j_of = |amb: &[Rational]| pkg.j_of(amb).expect("n'_J ⊆ z0");
    let s_of = |amb: &[Rational]| -> RMatrix {
        let coords = z0.coordinates_of(amb).expect("n'_J ⊆ z0");
        let mut acc = RMatrix::zeros(pkg.v.dim(), pkg.v.dim());
        for (c, sop) in coords.iter().zip(&s_ops) {
            if !c.is_zero() {
                acc = acc + sop.scale(c);
            }
        }
        acc
    };

    let plus_coords = kernel_of_operator_map(dim_nj, |c| {
        op_at(c, &|amb| minus_part(&j_of(amb), &j_v).expect("J_v valid"))
    });
    let kers_coords = kernel_of_operator_map(dim_nj, |c| op_at(c, &s_of));

    let to_ambient = |s: &Subspace| -> Subspace {
        let vecs: Vec<Vec<Rational>> = s
            .basis_vectors()
            .iter()
            .map(|c| nj.basis().apply(c))
            .collect();
        Subspace::from_spanning(t.dim(), &vecs)
    };
    let plus = to_ambient(&plus_coords);
    let kers = to_ambient(&kers_coords);

    // ker(S|n'_J) ⊆ (n'_J)- means it cannot meet (n'_J)+.
    if !plus.intersection(&kers).is_zero() {
        return Err(Error::validation(
            "(n'_J)+ meets ker(S|n'_J); j is not injective on n'_J",
        ));
    }
    let both = plus.sum(&kers);
    // Orthogonality of the first two pieces is a property of the metric, not
    // a theorem; reject metrics where it fails.
    let gram_pair = |x: &[Rational], y: &[Rational]| -> Rational { t.inner(x, y) };
    for p in plus.basis_vectors() {
        for k in kers.basis_vectors() {
            if !gram_pair(&p, &k).is_zero() {
                return Err(Error::precondition(
                    "metric is not adapted: (n'_J)+ is not orthogonal to ker(S|n'_J)",
                ));
            }
        }
    }
    let a = nj.intersection(&both.orthogonal_complement(Some(&t.gram))?);
    assert_eq!(
        both.sum(&a).dim(),
        nj.dim(),
        "refined pieces must span n'_J"
    );
    for s in [&plus, &kers, &a] {
        assert!(
            s.is_invariant_under(t.j.matrix()),
            "refined pieces must be J-invariant"
        );
    }
    Ok((plus, kers, a))
}

/// Extract a complex 2-step data from a Hermitian 2-step pair, in canonical
/// form.
///
/// Preconditions: `J` integrable and 2-step, no central complex abelian
/// factor, and the metric adapted in two respects that hold automatically for
/// built triples: `J(ker j) ⊆ n'` and the refining decomposition of `n'_J`
/// orthogonal. The inner product on the extracted `z1` summand is
/// re-canonicalized to the identity, so `build ∘ extract` reproduces the
/// input bit-exactly exactly when the input is in canonical form.
pub fn extract_2step_data(t: &MetricComplexTriple) -> Result<Complex2StepData> {
    if !is_integrable(&t.algebra, &t.j) {
        return Err(Error::precondition(
            "extract_2step_data requires integrable J",
        ));
    }
    if nilpotent_step(&t.algebra, &t.j) != NilpotentStep::Step(2) {
        return Err(Error::precondition(
            "extract_2step_data requires a 2-step J",
        ));
    }
    if has_central_complex_abelian_factor(&t.algebra, &t.j) {
        return Err(Error::precondition(
            "extract_2step_data requires no central complex abelian factor",
        ));
    }
    let dim = t.dim();
    let nprime = t.algebra.commutator_ideal();
    let z0 = nprime.sum(&nprime.map_by(t.j.matrix()));
    let pkg = j_map(t, &z0)?;

    // z1 := J(ker j) must land inside n'.
    let z1 = pkg.z1_candidate(&t.j);
    if !nprime.contains(&z1) {
        return Err(Error::precondition(
            "metric is not adapted: J(ker j) is not contained in n'",
        ));
    }
    let r = z1.dim();

    // Halves of the refined decomposition, orthogonal and preferring the
    // late coordinates so built triples extract to their own blocks.
    let (plus, kers, a) = decompose_njprime(t)?;
    let p_plus = plus.j_adapted_half_orthogonal(t.j.matrix(), &t.gram, true)?;
    let p_minus = kers.j_adapted_half_orthogonal(t.j.matrix(), &t.gram, true)?;
    let a_one = a.j_adapted_half_orthogonal(t.j.matrix(), &t.gram, true)?;

    // Canonical adapted v-basis (v0, J v0).
    let j_v_old = restrict_to_subspace(t.j.matrix(), &pkg.v)?;
    let v_half = Subspace::full(pkg.v.dim()).j_adapted_half(&j_v_old, false);
    let mut v_cols_coords = v_half.basis_vectors();
    let jw: Vec<Vec<Rational>> = v_cols_coords.iter().map(|c| j_v_old.apply(c)).collect();
    v_cols_coords.extend(jw);
    let v_cols: Vec<Vec<Rational>> = v_cols_coords
        .iter()
        .map(|c| pkg.v.basis().apply(c))
        .collect();

    // n0 = b ⊕ v with the restricted metric; basis (p+, p-, a1, v-adapted).
    let mut b_cols: Vec<Vec<Rational>> = Vec::new();
    b_cols.extend(p_plus.basis_vectors());
    b_cols.extend(p_minus.basis_vectors());
    b_cols.extend(a_one.basis_vectors());
    let db = b_cols.len();
    let nv = pkg.v.dim();
    let mut n0_cols = b_cols.clone();
    n0_cols.extend(v_cols.iter().cloned());
    let n0_basis = RMatrix::from_columns(dim, &n0_cols);
    let n0_gram = &(&n0_basis.transpose() * &t.gram) * &n0_basis;

    // Brackets of n0: project [v_a, v_c] orthogonally onto b.
    let b_matrix = RMatrix::from_columns(dim, &b_cols);
    let gram_b = &(&b_matrix.transpose() * &t.gram) * &b_matrix;
    let gram_b_inv = if db > 0 {
        gram_b.inverse().expect("SPD")
    } else {
        RMatrix::zeros(0, 0)
    };
    let mut table = BracketTable::new();
    for a_i in 0..nv {
        for c_i in a_i + 1..nv {
            let br = t.algebra.bracket(&v_cols[a_i], &v_cols[c_i])?;
            if db == 0 {
                continue;
            }
            let y: Vec<Rational> = b_cols.iter().map(|b| t.inner(b, &br)).collect();
            let x = gram_b_inv.apply(&y);
            if x.iter().all(|c| c.is_zero()) {
                continue;
            }
            let mut vfull = vec![Rational::zero(); db + nv];
            vfull[..db].clone_from_slice(&x);
            table.insert((db + a_i, db + c_i), vfull);
        }
    }
    let n0_alg = LieAlgebra::new(db + nv, table, None)?;
    let n0 = MetricLieAlgebra::new(n0_alg, n0_gram)?;

    // J_v in the adapted coordinates.
    let v_ambient = Subspace::from_spanning(dim, &v_cols);
    debug_assert_eq!(v_ambient, pkg.v);
    let w_full = RMatrix::from_columns(dim, &v_cols);
    let j_cols: Vec<Vec<Rational>> = v_cols.iter().map(|c| t.j.matrix().apply(c)).collect();
    let j_v = crate::linalg::solve(&w_full, &RMatrix::from_columns(dim, &j_cols))
        .expect("v is J-invariant");

    // ψ on z1 (values j(z)) and on b (values S(z)_skew = j(Jz) - ½[J_v, j(z)]),
    // expressed in adapted v-coordinates.
    let w_coords = RMatrix::from_columns(nv, &v_cols_coords);
    let w_coords_inv = w_coords.inverse().expect("adapted basis");
    let conj = |m: &RMatrix| -> RMatrix { &(&w_coords_inv * m) * &w_coords };
    let half = ratio(1, 2);
    let mut psi: Vec<RMatrix> = Vec::with_capacity(r + db);
    for z in z1.basis_vectors() {
        psi.push(conj(&pkg.j_of(&z)?));
    }
    let j_v_ad = conj(&j_v_old);
    for z in &b_cols {
        let jz = t.j.apply(z);
        let s_skew = conj(&pkg.j_of(&jz)?) - j_v_ad.commutator(&conj(&pkg.j_of(z)?)).scale(&half);
        psi.push(s_skew);
    }

    let data = Complex2StepData {
        n0,
        j_v,
        z1_dim: r,
        psi,
    };
    // Prop-level postcondition: the extracted tuple is a valid data.
    if let Err(vs) = validate_2step_data(&data) {
        return Err(Error::validation(format!(
            "extracted data fails validation: {}",
            vs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }
    Ok(data)
}

/// Variants of the worked low-dimensional family: a 2-step algebra with
/// commutator `R x` extended by `R y = R Jx`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleTwoStepVariant {
    Abelian,
    BiInvariant,
    Generic,
}

/// The `(2n+2)`-dimensional family with `n' = z` of dimension 2; the variant
/// selects `j0(x)` and `ψ(x)` so the resulting structure is abelian,
/// bi-invariant, or neither. Requires `n >= 2`.
pub fn example_2step(
    n: usize,
    variant: ExampleTwoStepVariant,
) -> Result<(Complex2StepData, MetricComplexTriple)> {
    if n < 2 {
        return Err(Error::precondition(
            "example_2step requires n >= 2 (u(n) must exceed R·J_v)",
        ));
    }
    let nv = 2 * n;
    let j_v = ComplexStructure::standard(nv).matrix().clone();
    // Skew block helpers in the (v0, Jv0) splitting.
    let rot_first = {
        // A = E12 - E21 in the first block, duplicated per u(n) form.
        let mut a = RMatrix::zeros(n, n);
        a.set(0, 1, rat(1));
        a.set(1, 0, rat(-1));
        a
    };
    let (j0x, psix): (RMatrix, RMatrix) = match variant {
        ExampleTwoStepVariant::Abelian => {
            // j0(x) = J_v ∈ u(n); ψ(x) = [[0, -B], [B, 0]] with B = E11, an
            // element of u(n) that is not a multiple of J_v.
            let mut psi = RMatrix::zeros(2 * n, 2 * n);
            psi.set(0, n, rat(-1));
            psi.set(n, 0, rat(1));
            (j_v.clone(), psi)
        }
        ExampleTwoStepVariant::BiInvariant => {
            // j0(x) = [[A, 0], [0, -A]] anticommutes with J_v; ψ = 0.
            let j0 = RMatrix::block_diag(&[rot_first.clone(), -rot_first.clone()]);
            (j0, RMatrix::zeros(nv, nv))
        }
        ExampleTwoStepVariant::Generic => {
            // j0(x) = [[A, 0], [0, 0]]: both parts nonzero, so neither in
            // u(n) nor purely anticommuting; ψ(x) = J_v.
            let j0 = RMatrix::block_diag(&[rot_first.clone(), RMatrix::zeros(n, n)]);
            (j0, j_v.clone())
        }
    };

    // n0 = R x ⊕ v with [a, b] = ⟨j0(x) a, b⟩ x.
    let dim0 = 1 + nv;
    let mut table = BracketTable::new();
    for a in 0..nv {
        for c in a + 1..nv {
            let val = j0x.at(c, a).clone(); // ⟨j0 e_a, e_c⟩ for identity gram
            if val.is_zero() {
                continue;
            }
            let mut v = vec![Rational::zero(); dim0];
            v[0] = val;
            table.insert((1 + a, 1 + c), v);
        }
    }
    let n0 = MetricLieAlgebra::new(LieAlgebra::new(dim0, table, None)?, RMatrix::identity(dim0))?;
    let data = Complex2StepData {
        n0,
        j_v,
        z1_dim: 0,
        psi: vec![psix],
    };
    let triple = build_from_2step_data(&data)?;
    Ok((data, triple))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{is_abelian_j, is_biinvariant_j};

    #[test]
    fn example_variants_classify_as_documented() {
        let (_, t) = example_2step(2, ExampleTwoStepVariant::Abelian).unwrap();
        assert!(is_abelian_j(&t.algebra, &t.j));
        assert!(!is_biinvariant_j(&t.algebra, &t.j));

        let (_, t) = example_2step(2, ExampleTwoStepVariant::BiInvariant).unwrap();
        assert!(is_biinvariant_j(&t.algebra, &t.j));
        assert!(!is_abelian_j(&t.algebra, &t.j));

        let (_, t) = example_2step(2, ExampleTwoStepVariant::Generic).unwrap();
        assert!(!is_abelian_j(&t.algebra, &t.j));
        assert!(!is_biinvariant_j(&t.algebra, &t.j));

        assert!(example_2step(1, ExampleTwoStepVariant::Abelian).is_err());
    }

    #[test]
    fn psi_outside_un_violates_clause_iii() {
        let (mut data, _) = example_2step(2, ExampleTwoStepVariant::Abelian).unwrap();
        // Replace ψ(x) by something skew but anticommuting with J_v.
        let mut a = RMatrix::zeros(2, 2);
        a.set(0, 1, rat(1));
        a.set(1, 0, rat(-1));
        data.psi[0] = RMatrix::block_diag(&[a.clone(), -a]);
        let vs = validate_2step_data(&data).unwrap_err();
        assert!(vs.iter().any(|v| v.clause == TwoStepClause::III));
    }

    #[test]
    fn psi_overlapping_j0_plus_violates_clause_iv() {
        // ψ(x) = (j0(x))+ = J_v for the abelian variant's j0(x) = J_v.
        let (mut data, _) = example_2step(2, ExampleTwoStepVariant::Abelian).unwrap();
        data.psi[0] = data.j_v.clone();
        let vs = validate_2step_data(&data).unwrap_err();
        assert!(vs.iter().any(|v| v.clause == TwoStepClause::IV));
    }

    #[test]
    fn decompose_njprime_shapes() {
        // Bi-invariant: n'_J = ker(S), others zero.
        let (_, t) = example_2step(2, ExampleTwoStepVariant::BiInvariant).unwrap();
        let (p, k, a) = decompose_njprime(&t).unwrap();
        assert!(p.is_zero());
        assert_eq!(k.dim(), 2);
        assert!(a.is_zero());

        // Abelian: n'_J = (n'_J)+.
        let (_, t) = example_2step(2, ExampleTwoStepVariant::Abelian).unwrap();
        let (p, k, a) = decompose_njprime(&t).unwrap();
        assert_eq!(p.dim(), 2);
        assert!(k.is_zero());
        assert!(a.is_zero());

        // Generic: a != 0.
        let (_, t) = example_2step(2, ExampleTwoStepVariant::Generic).unwrap();
        let (p, k, a) = decompose_njprime(&t).unwrap();
        assert!(p.is_zero());
        assert!(k.is_zero());
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn build_extract_build_round_trip_on_examples() {
        for variant in [
            ExampleTwoStepVariant::Abelian,
            ExampleTwoStepVariant::BiInvariant,
            ExampleTwoStepVariant::Generic,
        ] {
            let (_, t) = example_2step(2, variant).unwrap();
            let data2 = extract_2step_data(&t).unwrap();
            let t2 = build_from_2step_data(&data2).unwrap();
            assert_eq!(t.algebra.brackets(), t2.algebra.brackets(), "{variant:?}");
            assert_eq!(t.j, t2.j, "{variant:?}");
            assert_eq!(t.gram, t2.gram, "{variant:?}");
        }
    }

    #[test]
    fn extraction_type_of_r_h3() {
        // R ⊕ h3 with the standard abelian structure: type (1, 0, 0, 0, 1).
        let t = crate::construct::standard_heisenberg_abelian_triple(0, 1).unwrap();
        let data = extract_2step_data(&t).unwrap();
        let derived = validate_2step_data(&data).unwrap();
        assert_eq!(
            derived.ty,
            TwoStepType {
                r: 1,
                p_plus: 0,
                p_minus: 0,
                a_one: 0,
                n: 1
            }
        );
        // Rebuild reproduces the 4-dimensional triple.
        let t2 = build_from_2step_data(&data).unwrap();
        assert_eq!(t2.dim(), 4);
        let r2 = t2.algebra.report().unwrap();
        assert_eq!((r2.dim_commutator, r2.dim_center), (1, 2));
    }

    #[test]
    fn extraction_of_f4_succeeds() {
        let (l, j) = crate::construct::free_complex_structure(4).unwrap();
        let dim = l.dim();
        let report = l.report().unwrap();
        let t = MetricComplexTriple::new(l, j, RMatrix::identity(dim)).unwrap();
        let data = extract_2step_data(&t).unwrap();
        let t2 = build_from_2step_data(&data).unwrap();
        let report2 = t2.algebra.report().unwrap();
        assert_eq!(report, report2);
        // z1 = 0 here since n' is J-invariant.
        assert_eq!(data.z1_dim, 0);
    }

    #[test]
    fn extraction_rejects_non_adapted_metrics() {
        // An integrable 2-step structure without complex abelian factor whose
        // ker(j) is not isotropic for the Kaehler form: J(ker j) then fails
        // to land inside n' and no valid z1 choice exists, so extraction must
        // refuse rather than produce a broken tuple.
        //
        // z0 = R^4 central with the standard J; ker j = span(e1, e2 + e3) is
        // not omega-isotropic; j takes u(2) values on J(ker j), making J
        // abelian (hence integrable and 2-step).
        let j_v = ComplexStructure::standard(4).matrix().clone();
        let u1 = j_v.clone();
        let mut b = RMatrix::zeros(2, 2);
        b.set(0, 0, rat(1));
        let mut u2 = RMatrix::zeros(4, 4);
        for i in 0..2 {
            for k in 0..2 {
                let val = b.at(i, k).clone();
                if !val.is_zero() {
                    u2.set(i, 2 + k, -val.clone());
                    u2.set(2 + i, k, val);
                }
            }
        }
        // Basis of z0 as (k1, k2, Jk1, Jk2) with values (0, 0, U1, U2).
        let jz = ComplexStructure::standard(4).matrix().clone();
        let k1 = vec![rat(1), rat(0), rat(0), rat(0)];
        let k2 = vec![rat(0), rat(1), rat(1), rat(0)];
        let cols = vec![k1.clone(), k2.clone(), jz.apply(&k1), jz.apply(&k2)];
        let m = RMatrix::from_columns(4, &cols);
        let m_inv = m.inverse().unwrap();
        let ops = [
            RMatrix::zeros(4, 4),
            RMatrix::zeros(4, 4),
            u1.clone(),
            u2.clone(),
        ];
        // j at the standard z-basis vectors, by change of basis.
        let j_std: Vec<RMatrix> = (0..4)
            .map(|col| {
                let mut acc = RMatrix::zeros(4, 4);
                for (i, op) in ops.iter().enumerate() {
                    let c = m_inv.at(i, col);
                    if !c.is_zero() {
                        acc = acc + op.scale(c);
                    }
                }
                acc
            })
            .collect();
        let mut table = BracketTable::new();
        for a in 0..4usize {
            for c in a + 1..4 {
                let mut v = vec![Rational::zero(); 8];
                let mut nonzero = false;
                for (idx, op) in j_std.iter().enumerate() {
                    let val = op.at(c, a).clone();
                    if !val.is_zero() {
                        v[idx] = val;
                        nonzero = true;
                    }
                }
                if nonzero {
                    table.insert((4 + a, 4 + c), v);
                }
            }
        }
        let l = LieAlgebra::new(8, table, None).unwrap();
        let jm = RMatrix::block_diag(&[jz, j_v]);
        let t =
            MetricComplexTriple::new(l, ComplexStructure::new(jm).unwrap(), RMatrix::identity(8))
                .unwrap();

        assert!(is_integrable(&t.algebra, &t.j));
        assert_eq!(nilpotent_step(&t.algebra, &t.j), NilpotentStep::Step(2));
        assert!(!has_central_complex_abelian_factor(&t.algebra, &t.j));
        let err = extract_2step_data(&t).unwrap_err();
        assert!(
            err.to_string().contains("not adapted"),
            "unexpected error: {err}"
        );
    }
}
