//! Seeded random generators for the verification suite: random valid complex
//! 2-step data, and random almost-complex structures with `Jn' ⊆ z` (both
//! integrable by construction and unconstrained).
//!
//! Everything is deterministic given the seed (ChaCha8), with small integer
//! coefficients to keep the exact arithmetic light.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::ComplexStructure;
use crate::construct::{validate_2step_data, Complex2StepData, TwoStepType};
use crate::error::Result;
use crate::hermitian::MetricComplexTriple;
use crate::lie::{BracketTable, LieAlgebra, MetricLieAlgebra};
use crate::linalg::{rank_and_kernel, RMatrix};
use crate::rational::{rat, ratio, Rational};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_int(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-2..=2))
}

/// Basis of `{T : [T, J] = 0, T skew for gram}` (that is, `u(n)`).
pub fn u_n_basis(j: &RMatrix, gram: &RMatrix) -> Vec<RMatrix> {
    operator_space(j.rows(), |e| {
        let mut rows = e.commutator(j).vectorize();
        rows.extend((&(gram * e) + &(&e.transpose() * gram)).vectorize());
        rows
    })
}

/// Basis of `{T : TJ = -JT, T skew for gram}`.
pub fn anti_commuting_skew_basis(j: &RMatrix, gram: &RMatrix) -> Vec<RMatrix> {
    operator_space(j.rows(), |e| {
        let mut rows = (&(e * j) + &(j * e)).vectorize();
        rows.extend((&(gram * e) + &(&e.transpose() * gram)).vectorize());
        rows
    })
}

/// Basis of skew operators for `gram`.
pub fn skew_basis(dim: usize, gram: &RMatrix) -> Vec<RMatrix> {
    operator_space(dim, |e| {
        (&(gram * e) + &(&e.transpose() * gram)).vectorize()
    })
}

fn operator_space(dim: usize, constraints: impl Fn(&RMatrix) -> Vec<Rational>) -> Vec<RMatrix> {
    let mut cols = Vec::with_capacity(dim * dim);
    for p in 0..dim {
        for q in 0..dim {
            let mut e = RMatrix::zeros(dim, dim);
            e.set(p, q, rat(1));
            cols.push(constraints(&e));
        }
    }
    let rows = cols[0].len();
    let m = RMatrix::from_columns(rows, &cols);
    let (_, ker) = rank_and_kernel(&m);
    ker.basis_vectors()
        .iter()
        .map(|c| {
            let mut m = RMatrix::zeros(dim, dim);
            let mut idx = 0;
            for p in 0..dim {
                for q in 0..dim {
                    m.set(p, q, c[idx].clone());
                    idx += 1;
                }
            }
            m
        })
        .collect()
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[RMatrix], dim: usize) -> RMatrix {
    let mut acc = RMatrix::zeros(dim, dim);
    for b in basis {
        let c = small_int(rng);
        if !c.is_zero() {
            acc = acc + b.scale(&c);
        }
    }
    acc
}

/// Random valid complex 2-step data of the given type, found by rejection
/// sampling on the validation clauses (deterministic for a fixed seed).
pub fn random_2step_data(seed: u64, ty: TwoStepType) -> Complex2StepData {
    let mut rng = rng_from_seed(seed);
    let nv = 2 * ty.n;
    let j_v = ComplexStructure::standard(nv).matrix().clone();
    let gram_v = RMatrix::identity(nv);
    let un = u_n_basis(&j_v, &gram_v);
    let anti = anti_commuting_skew_basis(&j_v, &gram_v);
    let db = ty.p_plus + ty.p_minus + ty.a_one;

    for _attempt in 0..200 {
        // j0 values per block: u(n) on p+, anticommuting on p-, mixed on a1.
        let mut j0: Vec<RMatrix> = Vec::with_capacity(db);
        for _ in 0..ty.p_plus {
            j0.push(random_combination(&mut rng, &un, nv));
        }
        for _ in 0..ty.p_minus {
            j0.push(random_combination(&mut rng, &anti, nv));
        }
        for _ in 0..ty.a_one {
            let mut m =
                random_combination(&mut rng, &un, nv) + random_combination(&mut rng, &anti, nv);
            // Both parts must be nonzero for the vector to land in a1.
            if crate::hermitian::plus_part(&m, &j_v).unwrap().is_zero()
                || crate::hermitian::minus_part(&m, &j_v).unwrap().is_zero()
            {
                m = &m + &un[0] + &anti[0];
            }
            j0.push(m);
        }
        // ψ: random u(n) on z1 and p+; zero on p-; zero or random on a1.
        let psi_a1_zero = rng.gen_bool(0.5);
        let mut psi: Vec<RMatrix> = Vec::with_capacity(ty.r + db);
        for _ in 0..ty.r {
            psi.push(random_combination(&mut rng, &un, nv));
        }
        for _ in 0..ty.p_plus {
            psi.push(random_combination(&mut rng, &un, nv));
        }
        for _ in 0..ty.p_minus {
            psi.push(RMatrix::zeros(nv, nv));
        }
        for _ in 0..ty.a_one {
            if psi_a1_zero {
                psi.push(RMatrix::zeros(nv, nv));
            } else {
                psi.push(random_combination(&mut rng, &un, nv));
            }
        }

        // n0 = b ⊕ v with [v_a, v_c] = Σ_k ⟨j0_k v_a, v_c⟩ b_k.
        let dim0 = db + nv;
        let mut table = BracketTable::new();
        for a in 0..nv {
            for c in a + 1..nv {
                let mut v = vec![Rational::zero(); dim0];
                let mut nonzero = false;
                for (k, op) in j0.iter().enumerate() {
                    let val = op.at(c, a).clone();
                    if !val.is_zero() {
                        v[k] = val;
                        nonzero = true;
                    }
                }
                if nonzero {
                    table.insert((db + a, db + c), v);
                }
            }
        }
        let Ok(alg) = LieAlgebra::new(dim0, table, None) else {
            continue;
        };
        // The commutator must be the whole b-block (j0 injective).
        if alg.commutator_ideal().dim() != db {
            continue;
        }
        let Ok(n0) = MetricLieAlgebra::new(alg, RMatrix::identity(dim0)) else {
            continue;
        };
        let data = Complex2StepData {
            n0,
            j_v: j_v.clone(),
            z1_dim: ty.r,
            psi,
        };
        if let Ok(derived) = validate_2step_data(&data) {
            if derived.ty == ty {
                return data;
            }
        }
    }
    panic!("no valid 2-step data of type {ty:?} found for seed {seed}");
}

/// Random metric almost-complex structure with `Jn' ⊆ z` on a 2-step
/// algebra; with `force_integrable` the second half of the j-map is defined
/// through the integrability identity, otherwise it is unconstrained.
pub fn random_central_almost_complex(
    seed: u64,
    k: usize,
    n: usize,
    force_integrable: bool,
    vary_gram: bool,
) -> Result<MetricComplexTriple> {
    let mut rng = rng_from_seed(seed);
    let zdim = 2 * k;
    let nv = 2 * n;
    let dim = zdim + nv;
    let j_v = ComplexStructure::standard(nv).matrix().clone();
    let gram_v = RMatrix::identity(nv);
    let skew = skew_basis(nv, &gram_v);
    let un = u_n_basis(&j_v, &gram_v);

    // j over the z-basis: free on the first half, constrained (or free) on
    // the J-image half.
    let mut j_ops: Vec<RMatrix> = Vec::with_capacity(zdim);
    for _ in 0..k {
        j_ops.push(random_combination(&mut rng, &skew, nv));
    }
    for i in 0..k {
        if force_integrable {
            // j(Jz) = (1/2)[J_v, j(z)] + U with U in u(n) keeps S(z)
            // commuting with J_v.
            let u = random_combination(&mut rng, &un, nv);
            let comm = j_v.commutator(&j_ops[i]).scale(&ratio(1, 2));
            j_ops.push(&comm + &u);
        } else {
            j_ops.push(random_combination(&mut rng, &skew, nv));
        }
    }

    let mut table = BracketTable::new();
    for a in 0..nv {
        for c in a + 1..nv {
            let mut v = vec![Rational::zero(); dim];
            let mut nonzero = false;
            for (m, op) in j_ops.iter().enumerate() {
                let val = op.at(c, a).clone();
                if !val.is_zero() {
                    v[m] = val;
                    nonzero = true;
                }
            }
            if nonzero {
                table.insert((zdim + a, zdim + c), v);
            }
        }
    }
    let algebra = LieAlgebra::new(dim, table, None)?;
    // J = standard on the z-block (pairing z_i with z_{k+i}) ⊕ J_v.
    let jm = RMatrix::block_diag(&[
        ComplexStructure::standard(zdim).matrix().clone(),
        j_v.clone(),
    ]);
    let j = ComplexStructure::new(jm)?;
    let gram = if vary_gram {
        random_hermitian_gram(&mut rng, &j, dim)
    } else {
        RMatrix::identity(dim)
    };
    MetricComplexTriple::new(algebra, j, gram)
}

/// Random SPD gram compatible with `J`: `M^t M + I` symmetrized by averaging
/// with its J-pullback.
fn random_hermitian_gram(rng: &mut ChaCha8Rng, j: &ComplexStructure, dim: usize) -> RMatrix {
    let m = RMatrix::from_fn(dim, dim, |_, _| rat(rng.gen_range(-1..=1)));
    let spd = &(&m.transpose() * &m) + &RMatrix::identity(dim).scale(&rat(2));
    let jm = j.matrix();
    let pulled = &(&jm.transpose() * &spd) * jm;
    (&spd + &pulled).scale(&ratio(1, 2))
}
