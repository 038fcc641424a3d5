//! Free 2-step nilpotent Lie algebras `f_r = V ⊕ Λ²V` and their complex
//! structures.
//!
//! The structures depend on `r mod 4`: for `r ≡ 0, 3` the algebra `f_r`
//! itself carries one (2-step and 3-step respectively); for `r ≡ 1, 2` the
//! extension `R w0 ⊕ f_r` does (2-step). The bases `α±, β±, γ, ε, δ` below
//! follow the explicit pairings of the construction.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::complex::ComplexStructure;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::RMatrix;
use crate::rational::{rat, Rational};

/// `f_r = V ⊕ Λ²V` with `[v, w] = v ∧ w`; basis: `V` first, then `e_i ∧ e_j`
/// lexicographic.
pub fn free_two_step(r: usize) -> Result<LieAlgebra> {
    if r < 2 {
        return Err(Error::precondition("free_two_step requires r >= 2"));
    }
    let dim = r + r * (r - 1) / 2;
    let mut table = BTreeMap::new();
    for a in 0..r {
        for b in a + 1..r {
            let mut v = vec![Rational::zero(); dim];
            v[r + wedge_offset(r, a, b)] = rat(1);
            table.insert((a, b), v);
        }
    }
    LieAlgebra::new(dim, table, Some(format!("f{r}")))
}

/// Position of `e_a ∧ e_b` (`a < b`, 0-based) in the lexicographic wedge
/// ordering.
fn wedge_offset(r: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < r);
    a * r - a * (a + 1) / 2 + (b - a - 1)
}

/// Basis bookkeeping for `f_r`, possibly shifted inside `R ⊕ f_r`.
struct FreeBasis {
    r: usize,
    dim: usize,
    /// 1 when the algebra is `R w0 ⊕ f_r` (w0 at index 0), else 0.
    offset: usize,
}

impl FreeBasis {
    fn unit(&self, idx: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[idx] = rat(1);
        v
    }

    /// Generator `x_a` of `V` (0-based within `V`).
    fn gen(&self, a: usize) -> Vec<Rational> {
        self.unit(self.offset + a)
    }

    /// `x_a ∧ x_b` as a vector, any order of `a, b`.
    fn wedge(&self, a: usize, b: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        let (p, q, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        v[self.offset + self.r + wedge_offset(self.r, p, q)] = rat(s);
        v
    }

    fn add(mut x: Vec<Rational>, y: &[Rational]) -> Vec<Rational> {
        for (a, b) in x.iter_mut().zip(y) {
            *a += b;
        }
        x
    }

    fn sub(mut x: Vec<Rational>, y: &[Rational]) -> Vec<Rational> {
        for (a, b) in x.iter_mut().zip(y) {
            *a -= b;
        }
        x
    }
}

/// The free algebra (or its 1-dimensional extension, when `dim f_r` is odd)
/// together with its complex structure.
///
/// The returned structure is integrable, 2-step for `r ≡ 0, 1, 2 (mod 4)` and
/// 3-step for `r ≡ 3 (mod 4)`.
pub fn free_complex_structure(r: usize) -> Result<(LieAlgebra, ComplexStructure)> {
    if r < 2 {
        return Err(Error::precondition(
            "free_complex_structure requires r >= 2",
        ));
    }
    let fr = free_two_step(r)?;
    let (alg, offset) = match r % 4 {
        0 | 3 => (fr, 0),
        _ => (LieAlgebra::abelian(1).direct_sum(&fr), 1),
    };
    let dim = alg.dim();
    let fb = FreeBasis { r, dim, offset };

    // (u, Ju) pairs whose union is a full basis; J is then assembled from
    // them as a matrix.
    let mut pairs: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::new();

    // Positions of the v_i / w_i generators inside V differ per case.
    match r % 4 {
        0 => {
            let p = r / 2; // v_1..v_p, w_1..w_p
            let v = |i: usize| fb.gen(i - 1);
            let w = |i: usize| fb.gen(p + i - 1);
            for i in 1..=p {
                pairs.push((v(i), w(i)));
            }
            push_alpha_beta(&fb, &mut pairs, p, 0);
            for i in 1..=(p / 2) {
                // γ_{2i-1} -> γ_{2i}
                pairs.push((
                    fb.wedge(2 * i - 2, p + 2 * i - 2),
                    fb.wedge(2 * i - 1, p + 2 * i - 1),
                ));
            }
        }
        3 => {
            let p = (r - 1) / 2; // v_0, v_1..v_p, w_1..w_p
            let k = (r + 1) / 4;
            let v = |i: usize| fb.gen(i); // v_i = x_i, v_0 = x_0
            let w = |i: usize| fb.gen(p + i);
            // Jv_0 = γ_p = v_p ∧ w_p.
            pairs.push((fb.gen(0), fb.wedge(p, 2 * p)));
            for i in 1..=p {
                pairs.push((v(i), w(i)));
            }
            push_alpha_beta(&fb, &mut pairs, p, 1);
            for i in 1..=p {
                // ε_i = v_0 ∧ v_i -> δ_i = v_0 ∧ w_i
                pairs.push((fb.wedge(0, i), fb.wedge(0, p + i)));
            }
            for i in 1..=(k - 1) {
                pairs.push((
                    fb.wedge(2 * i - 1, p + 2 * i - 1),
                    fb.wedge(2 * i, p + 2 * i),
                ));
            }
        }
        1 => {
            let p = (r - 1) / 2;
            let k = (r - 1) / 4;
            // Jv_0 = w0, the extension generator.
            pairs.push((fb.gen(0), fb.unit(0)));
            for i in 1..=p {
                pairs.push((fb.gen(i), fb.gen(p + i)));
            }
            push_alpha_beta(&fb, &mut pairs, p, 1);
            for i in 1..=p {
                pairs.push((fb.wedge(0, i), fb.wedge(0, p + i)));
            }
            for i in 1..=k {
                pairs.push((
                    fb.wedge(2 * i - 1, p + 2 * i - 1),
                    fb.wedge(2 * i, p + 2 * i),
                ));
            }
        }
        2 => {
            let p = r / 2; // odd: v_1..v_p, w_1..w_p with p = 2k+1
            let k = (r - 2) / 4;
            for i in 1..=p {
                pairs.push((fb.gen(i - 1), fb.gen(p + i - 1)));
            }
            push_alpha_beta(&fb, &mut pairs, p, 0);
            for i in 1..=k {
                pairs.push((
                    fb.wedge(2 * i - 2, p + 2 * i - 2),
                    fb.wedge(2 * i - 1, p + 2 * i - 1),
                ));
            }
            // The odd leftover pairs with the extension generator: Jγ_p = w0.
            pairs.push((fb.wedge(p - 1, 2 * p - 1), fb.unit(0)));
        }
        _ => unreachable!(),
    }

    let j = assemble_from_pairs(dim, &pairs)?;
    Ok((alg, j))
}

/// Pairs `(α⁺, β⁻)` and `(α⁻, β⁺)` over `1 <= i < j <= p`, with the
/// v-generators at V-offset `base` and the w-generators at `base + p`.
fn push_alpha_beta(
    fb: &FreeBasis,
    pairs: &mut Vec<(Vec<Rational>, Vec<Rational>)>,
    p: usize,
    base: usize,
) {
    let vi = |i: usize| base + i - 1;
    let wi = |i: usize| base + p + i - 1;
    for i in 1..=p {
        for j in i + 1..=p {
            let alpha_plus = FreeBasis::add(fb.wedge(wi(i), vi(j)), &fb.wedge(vi(i), wi(j)));
            let alpha_minus = FreeBasis::sub(fb.wedge(wi(i), vi(j)), &fb.wedge(vi(i), wi(j)));
            let beta_plus = FreeBasis::add(fb.wedge(wi(i), wi(j)), &fb.wedge(vi(i), vi(j)));
            let beta_minus = FreeBasis::sub(fb.wedge(wi(i), wi(j)), &fb.wedge(vi(i), vi(j)));
            pairs.push((alpha_plus, beta_minus));
            pairs.push((alpha_minus, beta_plus));
        }
    }
}

/// Build `J` from `(u, Ju)` pairs covering a full basis: `J` maps each `u` to
/// `Ju` and each `Ju` back to `-u`.
fn assemble_from_pairs(
    dim: usize,
    pairs: &[(Vec<Rational>, Vec<Rational>)],
) -> Result<ComplexStructure> {
    if 2 * pairs.len() != dim {
        return Err(Error::validation(format!(
            "pairing covers {} directions, expected {dim}",
            2 * pairs.len()
        )));
    }
    let mut b_cols = Vec::with_capacity(dim);
    let mut jb_cols = Vec::with_capacity(dim);
    for (u, ju) in pairs {
        b_cols.push(u.clone());
        jb_cols.push(ju.clone());
        b_cols.push(ju.clone());
        jb_cols.push(u.iter().map(|x| -x).collect());
    }
    let b = RMatrix::from_columns(dim, &b_cols);
    let jb = RMatrix::from_columns(dim, &jb_cols);
    let b_inv = b
        .inverse()
        .ok_or_else(|| Error::validation("pairing vectors are not a basis"))?;
    ComplexStructure::new(&jb * &b_inv)
}
