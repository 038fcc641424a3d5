//! Lie algebras given by structure constants.
//!
//! A [`LieAlgebra`] stores the coordinate vectors of `[e_i, e_j]` for `i < j`;
//! antisymmetry is built into the accessors and the Jacobi identity is
//! validated on every construction path, so no unvalidated value exists.
//! Indices are 0-based internally; Salamon notation and the JSON format are
//! 1-based.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank_and_kernel, RMatrix, Subspace};
use crate::rational::{parse_rational, rat, Rational};

pub type BracketTable = BTreeMap<(usize, usize), Vec<Rational>>;

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    brackets: BracketTable,
    name: Option<String>,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LieAlgebra(dim {}{})",
            self.dim,
            self.name
                .as_deref()
                .map(|n| format!(", {n}"))
                .unwrap_or_default()
        )
    }
}

impl LieAlgebra {
    /// Build and validate. Zero bracket vectors are dropped from the table.
    pub fn new(dim: usize, brackets: BracketTable, name: Option<String>) -> Result<Self> {
        let mut table = BracketTable::new();
        for ((i, j), v) in brackets {
            if i >= j || j >= dim {
                return Err(Error::validation(format!(
                    "bracket key ({i}, {j}) out of range for dim {dim} (need i < j < dim)"
                )));
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            if !v.iter().all(|x| x.is_zero()) {
                table.insert((i, j), v);
            }
        }
        let alg = LieAlgebra {
            dim,
            brackets: table,
            name,
        };
        alg.validate_jacobi()?;
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            brackets: BracketTable::new(),
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn brackets(&self) -> &BracketTable {
        &self.brackets
    }

    /// Whether `[e_i, e_j]` is nonzero, without cloning the table entry.
    pub fn has_bracket_basis(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let key = if i < j { (i, j) } else { (j, i) };
        self.brackets.contains_key(&key)
    }

    /// `[e_i, e_j]` with antisymmetry for free.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        if i == j {
            return vec![Rational::zero(); self.dim];
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        match self.brackets.get(&(a, b)) {
            Some(v) if sign == 1 => v.clone(),
            Some(v) => v.iter().map(|x| -x).collect(),
            None => vec![Rational::zero(); self.dim],
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: y.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j), v) in &self.brackets {
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            if c.is_zero() {
                continue;
            }
            for (o, vk) in out.iter_mut().zip(v) {
                if !vk.is_zero() {
                    *o += &c * vk;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(x): y -> [x, y]`.
    pub fn ad(&self, x: &[Rational]) -> RMatrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim)
            .map(|j| {
                let mut e = vec![Rational::zero(); self.dim];
                e[j] = rat(1);
                self.bracket(x, &e).expect("dimensions match")
            })
            .collect();
        RMatrix::from_columns(self.dim, &cols)
    }

    fn ad_basis(&self, i: usize) -> RMatrix {
        let mut e = vec![Rational::zero(); self.dim];
        e[i] = rat(1);
        self.ad(&e)
    }

    /// `Ok(())` or the first violating triple `i < j < k` with its residual.
    pub fn validate_jacobi(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let bij = self.bracket_basis(i, j);
                if bij.iter().all(|x| x.is_zero()) {
                    continue;
                }
                for k in j + 1..self.dim {
                    let mut ek = vec![Rational::zero(); self.dim];
                    ek[k] = rat(1);
                    let mut r = self.bracket(&bij, &ek)?;
                    let bjk = self.bracket_basis(j, k);
                    let mut ei = vec![Rational::zero(); self.dim];
                    ei[i] = rat(1);
                    for (a, b) in r.iter_mut().zip(self.bracket(&bjk, &ei)?) {
                        *a += b;
                    }
                    let bki = self.bracket_basis(k, i);
                    let mut ej = vec![Rational::zero(); self.dim];
                    ej[j] = rat(1);
                    for (a, b) in r.iter_mut().zip(self.bracket(&bki, &ej)?) {
                        *a += b;
                    }
                    if !r.iter().all(|x| x.is_zero()) {
                        return Err(Error::JacobiViolation {
                            i,
                            j,
                            k,
                            residual: r,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Commutator ideal `n' = span of all [e_i, e_j]`.
    pub fn commutator_ideal(&self) -> Subspace {
        let vecs: Vec<Vec<Rational>> = self.brackets.values().cloned().collect();
        Subspace::from_spanning(self.dim, &vecs)
    }

    /// Center `z = { x : [x, e_i] = 0 for all i }`, computed as a kernel.
    pub fn center(&self) -> Subspace {
        if self.brackets.is_empty() {
            return Subspace::full(self.dim);
        }
        let mut stacked = RMatrix::zeros(0, self.dim);
        for i in 0..self.dim {
            stacked = stacked.vcat(&(-self.ad_basis(i)));
        }
        let (_, ker) = rank_and_kernel(&stacked);
        ker
    }

    /// Ascending central series `g_0 = 0 ⊆ g_1 = z ⊆ ...` up to stabilization.
    pub fn ascending_central_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::zero(self.dim)];
        loop {
            let prev = series.last().unwrap();
            let next = self.centralizer_mod(prev);
            if &next == prev {
                break;
            }
            series.push(next);
            if series.last().unwrap().dim() == self.dim {
                break;
            }
        }
        series
    }

    /// `{ x : [x, g] ⊆ s }`.
    fn centralizer_mod(&self, s: &Subspace) -> Subspace {
        // v ∈ s  ⟺  R v = 0, where the rows of R span the annihilator of s.
        let r = annihilator_rows(s);
        let mut stacked = RMatrix::zeros(0, self.dim);
        for k in 0..self.dim {
            // x -> [x, e_k] is -ad(e_k).
            let m = -self.ad_basis(k);
            stacked = stacked.vcat(&(&r * &m));
        }
        let (_, ker) = rank_and_kernel(&stacked);
        ker
    }

    /// Least `s` with `g_s = g`; error when the series stabilizes early.
    pub fn nilpotency_step(&self) -> Result<usize> {
        let series = self.ascending_central_series();
        let last = series.last().unwrap();
        if last.dim() < self.dim {
            return Err(Error::NotNilpotent {
                stabilized_dim: last.dim(),
                dim: self.dim,
            });
        }
        Ok(series.len() - 1)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_step().is_ok()
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let dim = self.dim + other.dim;
        let mut table = BracketTable::new();
        for (&(i, j), v) in &self.brackets {
            let mut w = v.clone();
            w.extend(vec![Rational::zero(); other.dim]);
            table.insert((i, j), w);
        }
        for (&(i, j), v) in &other.brackets {
            let mut w = vec![Rational::zero(); self.dim];
            w.extend(v.clone());
            table.insert((i + self.dim, j + self.dim), w);
        }
        // Jacobi holds componentwise; revalidation cannot fail.
        LieAlgebra::new(dim, table, None).expect("direct sum preserves Jacobi")
    }

    pub fn report(&self) -> Result<AlgebraReport> {
        let step = self.nilpotency_step()?;
        let series = self.ascending_central_series();
        let commutator = self.commutator_ideal();
        let center = self.center();
        Ok(AlgebraReport {
            dim: self.dim,
            dim_commutator: commutator.dim(),
            dim_center: center.dim(),
            nilpotency_step: step,
            ascending_series_dims: series.iter().map(|s| s.dim()).collect(),
            first_betti: self.dim - commutator.dim(),
            is_two_step: step == 2,
        })
    }

    /// Non-abelian with central commutator ideal.
    pub fn is_two_step(&self) -> bool {
        let c = self.commutator_ideal();
        !c.is_zero() && self.center().contains(&c)
    }
}

/// Rows spanning the annihilator of a subspace: `R v = 0 ⟺ v ∈ s`.
pub fn annihilator_rows(s: &Subspace) -> RMatrix {
    let (_, ker) = rank_and_kernel(&s.basis().transpose());
    ker.basis().transpose()
}

/// Invariant fingerprint of a nilpotent Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AlgebraReport {
    pub dim: usize,
    pub dim_commutator: usize,
    pub dim_center: usize,
    pub nilpotency_step: usize,
    pub ascending_series_dims: Vec<usize>,
    pub first_betti: usize,
    pub is_two_step: bool,
}

/// A Lie algebra together with an inner product on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricLieAlgebra {
    pub algebra: LieAlgebra,
    pub gram: RMatrix,
}

impl MetricLieAlgebra {
    pub fn new(algebra: LieAlgebra, gram: RMatrix) -> Result<Self> {
        if gram.rows() != algebra.dim() || gram.cols() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                got: gram.rows(),
            });
        }
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(MetricLieAlgebra { algebra, gram })
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let gx = self.gram.apply(x);
        gx.iter().zip(y).map(|(a, b)| a * b).sum()
    }
}

// ---------------------------------------------------------------------------
// Salamon notation
// ---------------------------------------------------------------------------

/// Parse an m-tuple `(de^1, ..., de^m)` of wedge sums with single-digit
/// indices, e.g. `"(0,0,0,0,12,14+23)"`.
///
/// `de^i = Σ c^i_{jk} e^j ∧ e^k` translates to `[e_j, e_k] = Σ_i c^i_{jk} e_i`
/// (sign convention fixed once; the alternative differs by `e_i ↦ -e_i` on
/// targets and changes no invariant). The result must satisfy Jacobi, which is
/// exactly `d² = 0`.
pub fn parse_salamon(text: &str, dim: usize) -> Result<LieAlgebra> {
    if dim > 9 {
        return Err(Error::precondition(
            "Salamon notation supports single-digit indices only (dim <= 9)",
        ));
    }
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse {
            position: 0,
            message: "expected parenthesized tuple".into(),
        })?;
    let entries = split_top_level(inner);
    if entries.len() != dim {
        return Err(Error::Parse {
            position: 0,
            message: format!("expected {dim} entries, found {}", entries.len()),
        });
    }
    let mut table: BracketTable = BTreeMap::new();
    for (target, (entry, offset)) in entries.iter().enumerate() {
        for (coeff, j, k) in parse_entry(entry, *offset, dim)? {
            let (a, b, sgn) = if j < k { (j, k, coeff) } else { (k, j, -coeff) };
            let v = table
                .entry((a, b))
                .or_insert_with(|| vec![Rational::zero(); dim]);
            v[target] += sgn;
        }
    }
    LieAlgebra::new(dim, table, None)
}

fn split_top_level(s: &str) -> Vec<(String, usize)> {
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if c == ',' {
            parts.push((s[start..i].trim().to_string(), start));
            start = i + 1;
        }
    }
    parts.push((s[start..].trim().to_string(), start));
    parts
}

/// One tuple entry: `0` or a ±-separated list of terms. A term is an optional
/// rational coefficient followed by exactly two index digits, e.g. `12`,
/// `-24`, `213` (= 2·e1∧e3), `1/213` (= ½·e1∧e3).
fn parse_entry(entry: &str, offset: usize, dim: usize) -> Result<Vec<(Rational, usize, usize)>> {
    let e = entry.trim();
    if e.is_empty() {
        return Err(Error::Parse {
            position: offset,
            message: "empty tuple entry".into(),
        });
    }
    if e == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut rest = e;
    let mut sign = rat(1);
    let mut pos = offset;
    loop {
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
            pos += 1;
            continue;
        }
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
            pos += 1;
            continue;
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = rest[..end].trim();
        terms.push(parse_term(term, pos, dim, &sign)?);
        sign = rat(1);
        if end == rest.len() {
            break;
        }
        rest = &rest[end..];
        pos += end;
    }
    Ok(terms)
}

fn parse_term(
    term: &str,
    pos: usize,
    dim: usize,
    sign: &Rational,
) -> Result<(Rational, usize, usize)> {
    let t = term.trim_end_matches('*').trim();
    if t.len() < 2 {
        return Err(Error::Parse {
            position: pos,
            message: format!("term {term:?} too short; expected index pair"),
        });
    }
    let (coeff_str, pair) = t.split_at(t.len() - 2);
    let mut chars = pair.chars();
    let j = digit_index(chars.next().unwrap(), pos, dim)?;
    let k = digit_index(chars.next().unwrap(), pos, dim)?;
    if j == k {
        return Err(Error::Parse {
            position: pos,
            message: format!("repeated index in term {term:?}"),
        });
    }
    let coeff = if coeff_str.trim().trim_end_matches('*').is_empty() {
        rat(1)
    } else {
        parse_rational(coeff_str.trim().trim_end_matches('*'))?
    };
    Ok((sign * coeff, j, k))
}

fn digit_index(c: char, pos: usize, dim: usize) -> Result<usize> {
    let d = c.to_digit(10).ok_or_else(|| Error::Parse {
        position: pos,
        message: format!("expected index digit, found {c:?}"),
    })? as usize;
    if d == 0 || d > dim {
        return Err(Error::Parse {
            position: pos,
            message: format!("index {d} out of range 1..={dim}"),
        });
    }
    Ok(d - 1)
}

/// Inverse of [`parse_salamon`] on structure constants.
pub fn print_salamon(l: &LieAlgebra) -> Result<String> {
    if l.dim() > 9 {
        return Err(Error::precondition(
            "Salamon notation supports single-digit indices only (dim <= 9)",
        ));
    }
    let mut entries = vec![String::new(); l.dim()];
    for (&(i, j), v) in l.brackets() {
        for (target, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = &mut entries[target];
            let mag = c.abs();
            let coeff = if mag == rat(1) {
                String::new()
            } else {
                mag.to_string()
            };
            let term = format!("{coeff}{}{}", i + 1, j + 1);
            if *c < rat(0) {
                e.push('-');
            } else if !e.is_empty() {
                e.push('+');
            }
            e.push_str(&term);
        }
    }
    let parts: Vec<String> = entries
        .into_iter()
        .map(|e| if e.is_empty() { "0".into() } else { e })
        .collect();
    Ok(format!("({})", parts.join(",")))
}
