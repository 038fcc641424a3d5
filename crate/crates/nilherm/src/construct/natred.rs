//! Symmetric-pair nilalgebras and naturally reductive 2-step nilmanifolds
//! built from representations of compact Lie algebras, plus the commutant
//! machinery that decides real/complex/quaternionic type and produces
//! invariant (hyper)complex structures on isotypic blocks.

use num_traits::{Signed, Zero};

use crate::complex::{is_abelian_j, ComplexStructure};
use crate::error::{Error, Result};
use crate::hermitian::{
    is_pluriclosed, is_skew, validate_hypercomplex, HypercomplexStructure, MetricComplexTriple,
};
use crate::lie::{BracketTable, LieAlgebra, MetricLieAlgebra};
use crate::linalg::{rank_and_kernel, solve, RMatrix, Subspace};
use crate::rational::{rat, rational_sqrt, Rational};

/// `B(x, y) = tr(ad x ∘ ad y)`.
pub fn killing_form(l: &LieAlgebra) -> RMatrix {
    let d = l.dim();
    let ads: Vec<RMatrix> = (0..d)
        .map(|i| {
            let mut e = vec![Rational::zero(); d];
            e[i] = rat(1);
            l.ad(&e)
        })
        .collect();
    RMatrix::from_fn(d, d, |i, j| (&ads[i] * &ads[j]).trace())
}

/// `su(2)` with the cyclic brackets `[e1,e2] = e3`, `[e2,e3] = e1`,
/// `[e3,e1] = e2`; its Killing form is `-2 I`.
pub fn su2() -> LieAlgebra {
    let mut table = BracketTable::new();
    let unit = |i: usize, c: i64| {
        let mut v = vec![Rational::zero(); 3];
        v[i] = rat(c);
        v
    };
    table.insert((0, 1), unit(2, 1)); // [e1, e2] = e3
    table.insert((1, 2), unit(0, 1)); // [e2, e3] = e1
    table.insert((0, 2), unit(1, -1)); // [e1, e3] = -e2
    LieAlgebra::new(3, table, Some("su(2)".into())).expect("su(2) satisfies Jacobi")
}

/// A 2-step nilalgebra from a compact semisimple symmetric pair.
#[derive(Clone, Debug)]
pub struct SymmetricPair {
    pub g: LieAlgebra,
    pub h: Subspace,
    pub m: Subspace,
    /// `n(g, h)` with inner product `-B`, basis (h-basis, m-basis).
    pub nil: MetricLieAlgebra,
    /// Whether `ad h` acts irreducibly on `m` (commutant is a division
    /// algebra).
    pub irreducible: bool,
}

/// Validate a compact semisimple symmetric pair and assemble `n(g, h)` with
/// the bracket `[z + x, z' + x']_n = [x, x']` and inner product `-B`.
pub fn symmetric_pair_nilalgebra(g: &LieAlgebra, h: &Subspace) -> Result<SymmetricPair> {
    let b = killing_form(g);
    if !b.is_negative_definite() {
        return Err(Error::precondition(
            "Killing form is not negative definite; g is not compact semisimple",
        ));
    }
    let minus_b = -&b;
    let m = h.orthogonal_complement(Some(&minus_b))?;
    let hb = h.basis_vectors();
    let mb = m.basis_vectors();
    // h a subalgebra; [m, m] ⊆ h; [h, m] ⊆ m.
    for (i, x) in hb.iter().enumerate() {
        for y in hb.iter().skip(i + 1) {
            if !h.contains_vector(&g.bracket(x, y)?) {
                return Err(Error::precondition("h is not a subalgebra"));
            }
        }
    }
    for (i, x) in mb.iter().enumerate() {
        for y in mb.iter().skip(i + 1) {
            if !h.contains_vector(&g.bracket(x, y)?) {
                return Err(Error::precondition("[m, m] is not contained in h"));
            }
        }
    }
    for x in &hb {
        for y in &mb {
            if !m.contains_vector(&g.bracket(x, y)?) {
                return Err(Error::precondition("[h, m] is not contained in m"));
            }
        }
    }

    // n = h ⊕ m, brackets only [m, m] -> h.
    let dh = h.dim();
    let dm = m.dim();
    let dim = dh + dm;
    let hmat = RMatrix::from_columns(g.dim(), &hb);
    let mut table = BracketTable::new();
    for i in 0..dm {
        for j in i + 1..dm {
            let br = g.bracket(&mb[i], &mb[j])?;
            let coords = solve(&hmat, &RMatrix::column_vector(&br))
                .ok_or_else(|| Error::precondition("[m, m] is not contained in h"))?;
            let c = coords.col(0);
            if c.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut v = vec![Rational::zero(); dim];
            v[..dh].clone_from_slice(&c);
            table.insert((dh + i, dh + j), v);
        }
    }
    let algebra = LieAlgebra::new(dim, table, None)?;
    // Gram = -B in the (h, m) basis; the blocks are B-orthogonal.
    let full = {
        let mut cols = hb.clone();
        cols.extend(mb.iter().cloned());
        RMatrix::from_columns(g.dim(), &cols)
    };
    let gram = &(&full.transpose() * &minus_b) * &full;
    let nil = MetricLieAlgebra::new(algebra, gram)?;

    // Irreducibility of ad h on m decides whether center = h and j = ad.
    let rep = adjoint_on_m(g, h, &m)?;
    let irreducible = irreducible_type(&rep).is_ok();
    if irreducible {
        let center = nil.algebra.center();
        let h_block = coordinate_block(dim, 0, dh);
        assert_eq!(center, h_block, "irreducible pair must have center h");
        // j(z) = ad_z restricted to m.
        for (k, z) in hb.iter().enumerate() {
            let ad_m = restrict_map(g, z, &m)?;
            let jop = j_operator(&nil, k, dh, dm);
            assert_eq!(jop, ad_m, "j(z) must equal ad_z|m");
        }
    }
    Ok(SymmetricPair {
        g: g.clone(),
        h: h.clone(),
        m,
        nil,
        irreducible,
    })
}

/// `ad_z` restricted to a subspace (as a matrix in the subspace basis).
fn restrict_map(g: &LieAlgebra, z: &[Rational], s: &Subspace) -> Result<RMatrix> {
    let cols: Vec<Vec<Rational>> = s
        .basis_vectors()
        .iter()
        .map(|v| g.bracket(z, v).expect("dims"))
        .collect();
    solve(
        &RMatrix::from_columns(g.dim(), &s.basis_vectors()),
        &RMatrix::from_columns(g.dim(), &cols),
    )
    .ok_or_else(|| Error::precondition("subspace not invariant under ad_z"))
}

/// `j(z_k)` of a metric 2-step algebra whose first `dh` coordinates span a
/// central block and the last `dm` the complement.
fn j_operator(mla: &MetricLieAlgebra, k: usize, dh: usize, dm: usize) -> RMatrix {
    let gram_v = mla.gram.submatrix(dh, dh + dm, dh, dh + dm);
    let gram_v_inv = gram_v.inverse().expect("SPD");
    let dim = dh + dm;
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); dim];
        v[i] = rat(1);
        v
    };
    let zk = unit(k);
    let m = RMatrix::from_fn(dm, dm, |a, c| {
        let br = mla.algebra.bracket(&unit(dh + a), &unit(dh + c)).unwrap();
        mla.inner(&zk, &br)
    });
    &gram_v_inv * &m.transpose()
}

fn coordinate_block(dim: usize, from: usize, len: usize) -> Subspace {
    let vecs: Vec<Vec<Rational>> = (from..from + len)
        .map(|i| {
            let mut v = vec![Rational::zero(); dim];
            v[i] = rat(1);
            v
        })
        .collect();
    Subspace::from_spanning(dim, &vecs)
}

/// The adjoint representation of the subalgebra `h` on `m`, with `h` as an
/// abstract Lie algebra in its own basis.
fn adjoint_on_m(g: &LieAlgebra, h: &Subspace, m: &Subspace) -> Result<Representation> {
    let hb = h.basis_vectors();
    let hmat = RMatrix::from_columns(g.dim(), &hb);
    let dh = h.dim();
    let mut table = BracketTable::new();
    for i in 0..dh {
        for j in i + 1..dh {
            let br = g.bracket(&hb[i], &hb[j])?;
            let coords = solve(&hmat, &RMatrix::column_vector(&br))
                .ok_or_else(|| Error::precondition("h is not a subalgebra"))?;
            let c = coords.col(0);
            if !c.iter().all(|x| x.is_zero()) {
                table.insert((i, j), c);
            }
        }
    }
    let h_alg = LieAlgebra::new(dh, table, None)?;
    let mats: Vec<RMatrix> = hb
        .iter()
        .map(|z| restrict_map(g, z, m))
        .collect::<Result<_>>()?;
    Ok(Representation {
        algebra: h_alg,
        mats,
    })
}

/// A real representation of a Lie algebra: one matrix per basis element.
#[derive(Clone, Debug)]
pub struct Representation {
    pub algebra: LieAlgebra,
    pub mats: Vec<RMatrix>,
}

impl Representation {
    pub fn dim_v(&self) -> usize {
        self.mats.first().map_or(0, |m| m.rows())
    }

    /// `π([x, y]) = [π(x), π(y)]` on all basis pairs.
    pub fn check_homomorphism(&self) -> Result<()> {
        let d = self.algebra.dim();
        if self.mats.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: self.mats.len(),
            });
        }
        for i in 0..d {
            for j in i + 1..d {
                let br = self.algebra.bracket_basis(i, j);
                let mut expect = RMatrix::zeros(self.dim_v(), self.dim_v());
                for (c, m) in br.iter().zip(&self.mats) {
                    if !c.is_zero() {
                        expect = expect + m.scale(c);
                    }
                }
                if self.mats[i].commutator(&self.mats[j]) != expect {
                    return Err(Error::precondition(format!(
                        "not a representation: [π(e{}), π(e{})] != π([e{}, e{}])",
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// `π` applied to an arbitrary element of the algebra.
    pub fn of(&self, x: &[Rational]) -> RMatrix {
        let dv = self.dim_v();
        let mut acc = RMatrix::zeros(dv, dv);
        for (c, m) in x.iter().zip(&self.mats) {
            if !c.is_zero() {
                acc = acc + m.scale(c);
            }
        }
        acc
    }
}

/// Naturally reductive 2-step nilalgebra `N(h, V) = h ⊕ V` with
/// `⟨[v,w], x⟩_h = ⟨π(x)v, w⟩_V`.
///
/// Preconditions, each checked and named: `π` a representation, `π(x)` skew,
/// `gram_h` ad-invariant, `ker π = 0`, and no trivial subrepresentation.
/// Postconditions asserted: the result is 2-step with center exactly `h` and
/// `j(x) = π(x)`.
pub fn naturally_reductive(
    rep: &Representation,
    gram_h: &RMatrix,
    gram_v: &RMatrix,
) -> Result<MetricLieAlgebra> {
    rep.check_homomorphism()?;
    let dh = rep.algebra.dim();
    let dv = rep.dim_v();
    if !gram_h.is_positive_definite() || !gram_v.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    for (k, m) in rep.mats.iter().enumerate() {
        if !is_skew(m, gram_v) {
            return Err(Error::precondition(format!(
                "π(e{}) is not skew-symmetric for the inner product on V",
                k + 1
            )));
        }
    }
    // ad-invariance of gram_h.
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); dh];
        v[i] = rat(1);
        v
    };
    let inner_h = |x: &[Rational], y: &[Rational]| -> Rational {
        gram_h.apply(x).iter().zip(y).map(|(a, b)| a * b).sum()
    };
    for i in 0..dh {
        for j in 0..dh {
            for k in 0..dh {
                let lhs = inner_h(&rep.algebra.bracket(&unit(i), &unit(j)).unwrap(), &unit(k));
                let rhs = inner_h(&unit(j), &rep.algebra.bracket(&unit(i), &unit(k)).unwrap());
                if !(lhs.clone() + rhs.clone()).is_zero() {
                    return Err(Error::precondition(
                        "inner product on h is not ad-invariant",
                    ));
                }
            }
        }
    }
    // Faithful: ker π = 0.
    {
        let cols: Vec<Vec<Rational>> = rep.mats.iter().map(|m| m.vectorize()).collect();
        let m = RMatrix::from_columns(dv * dv, &cols);
        let (rank, _) = rank_and_kernel(&m);
        if rank != dh {
            return Err(Error::precondition("representation is not faithful"));
        }
    }
    // No trivial subrepresentation: ∩ ker π(e_i) = 0.
    {
        let mut common = Subspace::full(dv);
        for m in &rep.mats {
            let (_, ker) = rank_and_kernel(m);
            common = common.intersection(&ker);
        }
        if !common.is_zero() {
            return Err(Error::precondition(
                "representation has a trivial subrepresentation",
            ));
        }
    }

    let dim = dh + dv;
    let gram_h_inv = gram_h.inverse().expect("SPD");
    let mut table = BracketTable::new();
    for a in 0..dv {
        for c in a + 1..dv {
            // ⟨[v_a, v_c], x_k⟩_h = ⟨π(x_k) v_a, v_c⟩_V.
            let y: Vec<Rational> = (0..dh)
                .map(|k| gram_v.apply(&rep.mats[k].col(a))[c].clone())
                .collect();
            let x = gram_h_inv.apply(&y);
            if x.iter().all(|t| t.is_zero()) {
                continue;
            }
            let mut v = vec![Rational::zero(); dim];
            v[..dh].clone_from_slice(&x);
            table.insert((dh + a, dh + c), v);
        }
    }
    let algebra = LieAlgebra::new(dim, table, None)?;
    let gram = RMatrix::block_diag(&[gram_h.clone(), gram_v.clone()]);
    let out = MetricLieAlgebra::new(algebra, gram)?;

    assert_eq!(out.algebra.nilpotency_step().expect("nilpotent"), 2);
    assert_eq!(
        out.algebra.center(),
        coordinate_block(dim, 0, dh),
        "center must be exactly h"
    );
    for k in 0..dh {
        assert_eq!(
            j_operator(&out, k, dh, dv),
            rep.mats[k],
            "j(x) must equal π(x)"
        );
    }
    Ok(out)
}

/// Commutant `{T : T π(x) = π(x) T}` as a subspace of vectorized `End(V)`.
pub fn commutant(rep: &Representation) -> Subspace {
    let dv = rep.dim_v();
    if dv == 0 {
        return Subspace::zero(0);
    }
    if rep.mats.is_empty() {
        return Subspace::full(dv * dv);
    }
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(dv * dv);
    for p in 0..dv {
        for q in 0..dv {
            let mut e = RMatrix::zeros(dv, dv);
            e.set(p, q, rat(1));
            let mut stacked = Vec::new();
            for m in &rep.mats {
                stacked.extend(e.commutator(m).vectorize());
            }
            cols.push(stacked);
        }
    }
    let rows = cols[0].len();
    let m = RMatrix::from_columns(rows, &cols);
    let (_, ker) = rank_and_kernel(&m);
    // Kernel coordinates are exactly vectorized matrices in column-major
    // order of E_{pq} enumeration; re-normalize to the canonical subspace of
    // End(V) with vectorize() layout.
    let vecs: Vec<Vec<Rational>> = ker
        .basis_vectors()
        .iter()
        .map(|c| {
            let mut m = RMatrix::zeros(dv, dv);
            let mut idx = 0;
            for p in 0..dv {
                for q in 0..dv {
                    m.set(p, q, c[idx].clone());
                    idx += 1;
                }
            }
            m.vectorize()
        })
        .collect();
    Subspace::from_spanning(dv * dv, &vecs)
}

pub fn commutant_matrices(rep: &Representation) -> Vec<RMatrix> {
    let dv = rep.dim_v();
    commutant(rep)
        .basis_vectors()
        .iter()
        .map(|v| RMatrix::from_vectorized(dv, dv, v))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum IrreducibleType {
    Real,
    Complex,
    Quaternionic,
}

/// Schur type by the commutant: `R`, `C` or `H` exactly when the commutant is
/// a division algebra of dimension 1, 2 or 4. Reducible representations are
/// detected by nontrivial idempotents (a non-scalar element with a real
/// quadratic eigenvalue, or an indefinite norm form on the pure part).
pub fn irreducible_type(rep: &Representation) -> Result<IrreducibleType> {
    let c = commutant_matrices(rep);
    match c.len() {
        1 => Ok(IrreducibleType::Real),
        2 => {
            let pure = pure_elements(&c);
            let t = &pure[0];
            let sq = scalar_of(&(t * t)).ok_or_else(|| {
                Error::NotIrreducible("commutant is not a division algebra".into())
            })?;
            if sq.is_negative() {
                Ok(IrreducibleType::Complex)
            } else {
                Err(Error::NotIrreducible(
                    "commutant splits: non-scalar element with real spectrum".into(),
                ))
            }
        }
        4 => {
            let pure = pure_elements(&c);
            let q = norm_form(&pure)?;
            if (-&q).is_positive_definite() {
                Ok(IrreducibleType::Quaternionic)
            } else {
                Err(Error::NotIrreducible(
                    "commutant splits: norm form on the pure part is not definite".into(),
                ))
            }
        }
        k => Err(Error::NotIrreducible(format!(
            "commutant has dimension {k}, not 1, 2 or 4"
        ))),
    }
}

/// Traceless part of a commutant basis (dimension one less; the identity
/// accounts for the trace direction).
fn pure_elements(c: &[RMatrix]) -> Vec<RMatrix> {
    let n = c.len();
    let traces: Vec<Rational> = c.iter().map(|m| m.trace()).collect();
    let constraint = RMatrix::from_fn(1, n, |_, j| traces[j].clone());
    let (_, ker) = rank_and_kernel(&constraint);
    ker.basis_vectors()
        .iter()
        .map(|coords| {
            let mut acc = RMatrix::zeros(c[0].rows(), c[0].cols());
            for (co, m) in coords.iter().zip(c) {
                if !co.is_zero() {
                    acc = acc + m.scale(co);
                }
            }
            acc
        })
        .collect()
}

/// `Q` with `(S T + T S)/2 = Q(S, T) · I` on the pure part; errors when
/// products leave the scalar line (then the commutant is not `H`-like).
fn norm_form(pure: &[RMatrix]) -> Result<RMatrix> {
    let k = pure.len();
    let mut q = RMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let half = crate::rational::ratio(1, 2);
            let anti = pure[i].anticommutator(&pure[j]).scale(&half);
            let s = scalar_of(&anti).ok_or_else(|| {
                Error::NotIrreducible("commutant is not a division algebra".into())
            })?;
            q.set(i, j, s);
        }
    }
    Ok(q)
}

fn scalar_of(m: &RMatrix) -> Option<Rational> {
    let c = m.at(0, 0).clone();
    if *m == RMatrix::identity(m.rows()).scale(&c) {
        Some(c)
    } else {
        None
    }
}

/// An isotypic block `W^{⊕r}` in standard form: the representation matrices
/// are block diagonal with `r` equal copies, and the inner product is block
/// diagonal with equal blocks.
#[derive(Clone, Debug)]
pub struct IsotypicBlock {
    pub rep: Representation,
    pub copy_dim: usize,
    pub multiplicity: usize,
    pub gram: RMatrix,
}

impl IsotypicBlock {
    pub fn new(
        rep: Representation,
        copy_dim: usize,
        multiplicity: usize,
        gram: RMatrix,
    ) -> Result<Self> {
        let dv = rep.dim_v();
        if dv != copy_dim * multiplicity {
            return Err(Error::DimensionMismatch {
                expected: copy_dim * multiplicity,
                got: dv,
            });
        }
        rep.check_homomorphism()?;
        if !gram.is_positive_definite() || gram.rows() != dv {
            return Err(Error::NotPositiveDefinite);
        }
        let block = IsotypicBlock {
            rep,
            copy_dim,
            multiplicity,
            gram,
        };
        block.check_standard_form()?;
        Ok(block)
    }

    /// Representation matrices and gram must be `r` equal diagonal copies.
    fn check_standard_form(&self) -> Result<()> {
        let w = self.copy_dim;
        let r = self.multiplicity;
        for m in self.rep.mats.iter().chain(std::iter::once(&self.gram)) {
            let top = m.submatrix(0, w, 0, w);
            for bi in 0..r {
                for bj in 0..r {
                    let sub = m.submatrix(bi * w, (bi + 1) * w, bj * w, (bj + 1) * w);
                    let expect = if bi == bj {
                        top.clone()
                    } else {
                        RMatrix::zeros(w, w)
                    };
                    if sub != expect {
                        return Err(Error::precondition(
                            "isotypic block is not in standard form (r equal diagonal copies)",
                        ));
                    }
                }
            }
        }
        for m in &self.rep.mats {
            if !is_skew(m, &self.gram) {
                return Err(Error::precondition(
                    "representation is not skew for the block inner product",
                ));
            }
        }
        Ok(())
    }

    /// The representation on a single copy `W`.
    pub fn copy_rep(&self) -> Representation {
        let w = self.copy_dim;
        Representation {
            algebra: self.rep.algebra.clone(),
            mats: self
                .rep
                .mats
                .iter()
                .map(|m| m.submatrix(0, w, 0, w))
                .collect(),
        }
    }

    pub fn copy_gram(&self) -> RMatrix {
        self.gram.submatrix(0, self.copy_dim, 0, self.copy_dim)
    }

    pub fn block_type(&self) -> Result<IrreducibleType> {
        irreducible_type(&self.copy_rep())
    }
}

/// A gram-orthogonal complex structure on one copy, found inside the copy
/// commutant. Exact arithmetic: the normalization must be a rational square
/// root, otherwise an error is reported.
fn copy_complex_structure(block: &IsotypicBlock) -> Result<RMatrix> {
    let c = commutant_matrices(&block.copy_rep());
    let pure = pure_elements(&c);
    let t = &pure[0];
    let sq = scalar_of(&(t * t))
        .ok_or_else(|| Error::NotIrreducible("commutant is not a division algebra".into()))?;
    let s = rational_sqrt(&(-sq)).ok_or_else(|| {
        Error::NoInvariantComplexStructure(
            "normalizing the commutant square root of -I needs an irrational scale".into(),
        )
    })?;
    let j = t.scale(&(rat(1) / s));
    debug_assert!(scalar_of(&(&j * &j)) == Some(rat(-1)));
    if !is_skew(&j, &block.copy_gram()) {
        return Err(Error::NoInvariantComplexStructure(
            "commutant square root is not orthogonal for the block metric".into(),
        ));
    }
    Ok(j)
}

/// Invariant orthogonal complex structure on an isotypic block: the block
/// swap `J(u, w) = (-w, u)` for real type with even multiplicity, and a
/// commutant square root of `-I` copied along the diagonal for complex or
/// quaternionic type.
pub fn invariant_complex_on_isotypic(block: &IsotypicBlock) -> Result<RMatrix> {
    let ty = block.block_type()?;
    let w = block.copy_dim;
    let r = block.multiplicity;
    let j = match ty {
        IrreducibleType::Real => {
            if !r.is_multiple_of(2) {
                return Err(Error::NoInvariantComplexStructure(format!(
                    "real type with odd multiplicity {r}"
                )));
            }
            block_swap(w * r / 2)
        }
        IrreducibleType::Complex | IrreducibleType::Quaternionic => {
            let jw = copy_complex_structure(block)?;
            RMatrix::block_diag(&vec![jw; r])
        }
    };
    finish_invariant(block, &j)?;
    Ok(j)
}

fn block_swap(half: usize) -> RMatrix {
    let mut m = RMatrix::zeros(2 * half, 2 * half);
    for i in 0..half {
        m.set(i, half + i, rat(-1));
        m.set(half + i, i, rat(1));
    }
    m
}

fn finish_invariant(block: &IsotypicBlock, j: &RMatrix) -> Result<()> {
    let dv = block.rep.dim_v();
    if (j * j) != (-RMatrix::identity(dv)) {
        return Err(Error::validation("constructed J does not square to -I"));
    }
    if !is_skew(j, &block.gram) {
        return Err(Error::validation("constructed J is not orthogonal"));
    }
    for m in &block.rep.mats {
        if !j.commutator(m).is_zero() {
            return Err(Error::validation("constructed J does not commute with π"));
        }
    }
    Ok(())
}

/// Invariant orthogonal quaternionic triple on an isotypic block:
/// the two 4-block shuffles for real type with multiplicity `≡ 0 (mod 4)`,
/// `J1(u,w) = (Ju, -Jw)`, `J2(u,w) = (-w, u)` for complex type with even
/// multiplicity, and anticommuting pure units of the copy commutant for
/// quaternionic type.
pub fn invariant_quaternionic_triple(block: &IsotypicBlock) -> Result<(RMatrix, RMatrix, RMatrix)> {
    let ty = block.block_type()?;
    let w = block.copy_dim;
    let r = block.multiplicity;
    let (j1, j2) = match ty {
        IrreducibleType::Real => {
            if !r.is_multiple_of(4) {
                return Err(Error::NoInvariantTriple(format!(
                    "real type with multiplicity {r} not divisible by 4"
                )));
            }
            let k = w * r / 4;
            // J1(x,y,z,w) = (-y, x, -w, z); J2(x,y,z,w) = (-z, w, x, -y).
            let id = RMatrix::identity(k);
            let z = RMatrix::zeros(k, k);
            let j1 = stack4(&[
                [&z, &(-&id), &z, &z],
                [&id, &z, &z, &z],
                [&z, &z, &z, &(-&id)],
                [&z, &z, &id, &z],
            ]);
            let j2 = stack4(&[
                [&z, &z, &(-&id), &z],
                [&z, &z, &z, &id],
                [&id, &z, &z, &z],
                [&z, &(-&id), &z, &z],
            ]);
            (j1, j2)
        }
        IrreducibleType::Complex => {
            if !r.is_multiple_of(2) {
                return Err(Error::NoInvariantTriple(format!(
                    "complex type with odd multiplicity {r}"
                )));
            }
            let jw = copy_complex_structure(block)?;
            let half = RMatrix::block_diag(&vec![jw; r / 2]);
            let j1 = RMatrix::block_diag(&[half.clone(), -&half]);
            let j2 = block_swap(w * r / 2);
            (j1, j2)
        }
        IrreducibleType::Quaternionic => {
            let (u1, u2) = quaternion_units(block)?;
            let j1 = RMatrix::block_diag(&vec![u1; r]);
            let j2 = RMatrix::block_diag(&vec![u2; r]);
            (j1, j2)
        }
    };
    let j3 = &j1 * &j2;
    for j in [&j1, &j2, &j3] {
        finish_invariant(block, j)?;
    }
    if &j2 * &j1 != -j3.clone() {
        return Err(Error::validation("triple does not anticommute"));
    }
    Ok((j1, j2, j3))
}

/// 4x4 block matrix from equally sized square blocks.
fn stack4(blocks: &[[&RMatrix; 4]; 4]) -> RMatrix {
    let rows: Vec<RMatrix> = blocks
        .iter()
        .map(|row| {
            row.iter()
                .skip(1)
                .fold((*row[0]).clone(), |acc, b| acc.hcat(b))
        })
        .collect();
    rows.iter()
        .skip(1)
        .fold(rows[0].clone(), |acc, r| acc.vcat(r))
}

/// Two anticommuting square roots of `-I` in the copy commutant, by
/// Q-orthogonalizing the pure part. Needs rational normalizations.
fn quaternion_units(block: &IsotypicBlock) -> Result<(RMatrix, RMatrix)> {
    let c = commutant_matrices(&block.copy_rep());
    let pure = pure_elements(&c);
    let q = norm_form(&pure)?;
    // Q-orthogonalize the first two basis elements.
    let p1 = pure[0].clone();
    let q11 = q.at(0, 0).clone();
    // Find an element Q-orthogonal to p1 among the rest.
    let mut p2 = None;
    for (i, cand) in pure.iter().enumerate().skip(1) {
        let q1i = q.at(0, i).clone();
        let adjusted = cand.scale(&q11) - p1.scale(&q1i);
        if !adjusted.is_zero() {
            p2 = Some(adjusted);
            break;
        }
    }
    let p2 = p2.ok_or_else(|| Error::NoInvariantTriple("pure part is degenerate".into()))?;
    let normalize = |p: &RMatrix| -> Result<RMatrix> {
        let sq = scalar_of(&(p * p))
            .ok_or_else(|| Error::NotIrreducible("commutant is not a division algebra".into()))?;
        let s = rational_sqrt(&(-sq)).ok_or_else(|| {
            Error::NoInvariantTriple(
                "normalizing a quaternion unit needs an irrational scale".into(),
            )
        })?;
        Ok(p.scale(&(rat(1) / s)))
    };
    let u1 = normalize(&p1)?;
    let u2 = normalize(&p2)?;
    if !(&u1 * &u2 + &u2 * &u1).is_zero() {
        return Err(Error::NoInvariantTriple(
            "orthogonalized units do not anticommute".into(),
        ));
    }
    Ok((u1, u2))
}

// ---------------------------------------------------------------------------
// Assemblies on R^s ⊕ N(h, V)
// ---------------------------------------------------------------------------

/// Orthogonal abelian complex structure on `R^s ⊕ N(h, V)` with the blocks'
/// invariant structures on `V` and a caller-supplied (or standard) `J` on
/// `R^s ⊕ h`; succeeds exactly when every real-type block has even
/// multiplicity.
pub fn natred_abelian_complex(
    blocks: &[IsotypicBlock],
    gram_h: &RMatrix,
    j_center: Option<RMatrix>,
) -> Result<MetricComplexTriple> {
    let (nil, s, dh) = assemble_natred(blocks, gram_h)?;
    let dim = nil.algebra.dim();
    let j_z = center_complex_structure(s + dh, gram_h, s, j_center)?;
    let mut j_blocks = vec![j_z];
    for b in blocks {
        j_blocks.push(invariant_complex_on_isotypic(b)?);
    }
    let j = ComplexStructure::new(RMatrix::block_diag(&j_blocks))?;
    let triple = MetricComplexTriple::new(nil.algebra.clone(), j, nil.gram.clone())?;
    assert!(
        is_abelian_j(&triple.algebra, &triple.j),
        "assembled structure must be abelian"
    );
    let _ = dim;
    Ok(triple)
}

/// Abelian hypercomplex structure on `R^s ⊕ N(h, V)` (with `s = 4 - (dim h
/// mod 4)` padding); succeeds exactly when real-type multiplicities are
/// divisible by 4 and complex-type multiplicities are even. The metric is
/// then hyper-Hermitian and HKT.
pub fn natred_hypercomplex(
    blocks: &[IsotypicBlock],
    gram_h: &RMatrix,
    center_triple: Option<(RMatrix, RMatrix)>,
) -> Result<(MetricLieAlgebra, HypercomplexStructure)> {
    let dh = gram_h.rows();
    let s = (4 - dh % 4) % 4;
    let (nil, s_built, _) = assemble_natred_padded(blocks, gram_h, s)?;
    debug_assert_eq!(s, s_built);
    let dz = s + dh;
    let (c1, c2) = match center_triple {
        Some(pair) => pair,
        None => {
            if !dz.is_multiple_of(4) {
                return Err(Error::precondition(
                    "R^s ⊕ h must have dimension divisible by 4",
                ));
            }
            standard_quaternion_pair(dz)
        }
    };
    let mut j1_blocks = vec![c1];
    let mut j2_blocks = vec![c2];
    for b in blocks {
        let (b1, b2, _) = invariant_quaternionic_triple(b)?;
        j1_blocks.push(b1);
        j2_blocks.push(b2);
    }
    let j1m = RMatrix::block_diag(&j1_blocks);
    let j2m = RMatrix::block_diag(&j2_blocks);
    let j3m = &j1m * &j2m;
    let h = HypercomplexStructure::new(
        ComplexStructure::new(j1m)?,
        ComplexStructure::new(j2m)?,
        ComplexStructure::new(j3m)?,
    );
    validate_hypercomplex(&nil.algebra, &h)?;
    for j in h.structures() {
        assert!(
            is_abelian_j(&nil.algebra, j),
            "assembled hypercomplex structure must be abelian"
        );
    }
    Ok((nil, h))
}

/// `L_i`- and `L_j`-style quaternion left multiplications, block-diagonally
/// extended.
fn standard_quaternion_pair(d: usize) -> (RMatrix, RMatrix) {
    let li = RMatrix::from_i64(vec![
        vec![0, -1, 0, 0],
        vec![1, 0, 0, 0],
        vec![0, 0, 0, -1],
        vec![0, 0, 1, 0],
    ]);
    let lj = RMatrix::from_i64(vec![
        vec![0, 0, -1, 0],
        vec![0, 0, 0, 1],
        vec![1, 0, 0, 0],
        vec![0, -1, 0, 0],
    ]);
    let k = d / 4;
    (
        RMatrix::block_diag(&vec![li; k]),
        RMatrix::block_diag(&vec![lj; k]),
    )
}

fn center_complex_structure(
    dz: usize,
    gram_h: &RMatrix,
    s: usize,
    supplied: Option<RMatrix>,
) -> Result<RMatrix> {
    let gram_z = RMatrix::block_diag(&[RMatrix::identity(s), gram_h.clone()]);
    let j = match supplied {
        Some(j) => j,
        None => {
            if !dz.is_multiple_of(2) {
                return Err(Error::precondition("R^s ⊕ h must be even dimensional"));
            }
            ComplexStructure::standard(dz).matrix().clone()
        }
    };
    if j.rows() != dz || (&j * &j) != (-RMatrix::identity(dz)) {
        return Err(Error::validation("J on R^s ⊕ h does not square to -I"));
    }
    if !is_skew(&j, &gram_z) {
        return Err(Error::validation("J on R^s ⊕ h is not orthogonal"));
    }
    Ok(j)
}

fn assemble_natred(
    blocks: &[IsotypicBlock],
    gram_h: &RMatrix,
) -> Result<(MetricLieAlgebra, usize, usize)> {
    let dh = gram_h.rows();
    let s = dh % 2;
    let (nil, s2, dh2) = assemble_natred_padded(blocks, gram_h, s)?;
    Ok((nil, s2, dh2))
}

/// `R^s ⊕ N(h, V)` with the identity metric on the flat factor; the flat
/// directions are central and act trivially.
fn assemble_natred_padded(
    blocks: &[IsotypicBlock],
    gram_h: &RMatrix,
    s: usize,
) -> Result<(MetricLieAlgebra, usize, usize)> {
    if blocks.is_empty() {
        return Err(Error::precondition("need at least one isotypic block"));
    }
    let h_alg = blocks[0].rep.algebra.clone();
    for b in blocks {
        if b.rep.algebra.brackets() != h_alg.brackets() || b.rep.algebra.dim() != h_alg.dim() {
            return Err(Error::precondition("blocks must share the same algebra h"));
        }
    }
    let dh = h_alg.dim();
    if gram_h.rows() != dh {
        return Err(Error::DimensionMismatch {
            expected: dh,
            got: gram_h.rows(),
        });
    }
    let mats: Vec<RMatrix> = (0..dh)
        .map(|k| {
            RMatrix::block_diag(
                &blocks
                    .iter()
                    .map(|b| b.rep.mats[k].clone())
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let gram_v = RMatrix::block_diag(&blocks.iter().map(|b| b.gram.clone()).collect::<Vec<_>>());
    let rep = Representation {
        algebra: h_alg,
        mats,
    };
    let n = naturally_reductive(&rep, gram_h, &gram_v)?;
    let padded = LieAlgebra::abelian(s).direct_sum(&n.algebra);
    let gram = RMatrix::block_diag(&[RMatrix::identity(s), n.gram.clone()]);
    Ok((MetricLieAlgebra::new(padded, gram)?, s, dh))
}

// ---------------------------------------------------------------------------
// Hermitian symmetric assemblies
// ---------------------------------------------------------------------------

/// `R^s ⊕ n(g, h)` with the abelian structure built from a Hermitian
/// symmetric `J_m` on `m` (`[J_m x, J_m y] = [x, y]` checked) and an
/// orthogonal `J_1` on `R^s ⊕ h`; the `-B` metric is asserted pluriclosed.
pub fn hermitian_symmetric_j(
    pair: &SymmetricPair,
    j_m: &RMatrix,
    j_1: &RMatrix,
    gram_s: &RMatrix,
) -> Result<MetricComplexTriple> {
    let dm = pair.m.dim();
    let dh = pair.h.dim();
    let s = gram_s.rows();
    if s > 0 && !gram_s.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if !(s + dh).is_multiple_of(2) {
        return Err(Error::precondition(
            "R^s ⊕ h must be even dimensional (take s = dim h mod 2)",
        ));
    }
    // J_m: complex structure on m, orthogonal for -B, satisfying the
    // Hermitian-symmetric identity.
    if j_m.rows() != dm || (j_m * j_m) != (-RMatrix::identity(dm)) {
        return Err(Error::precondition("J_m does not square to -I on m"));
    }
    let gram_m = pair.nil.gram.submatrix(dh, dh + dm, dh, dh + dm);
    if !is_skew(j_m, &gram_m) {
        return Err(Error::precondition("J_m is not orthogonal for -B on m"));
    }
    let mb = pair.m.basis_vectors();
    let to_ambient = |coords: &[Rational]| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); pair.g.dim()];
        for (c, b) in coords.iter().zip(&mb) {
            for (a, x) in v.iter_mut().zip(b) {
                *a += c * x;
            }
        }
        v
    };
    for i in 0..dm {
        for j in i + 1..dm {
            let ji = to_ambient(&j_m.col(i));
            let jj = to_ambient(&j_m.col(j));
            let lhs = pair.g.bracket(&ji, &jj)?;
            let rhs = pair.g.bracket(&mb[i], &mb[j])?;
            if lhs != rhs {
                return Err(Error::precondition(
                    "J_m fails the Hermitian symmetric identity [Jx, Jy] = [x, y]",
                ));
            }
        }
    }
    // J_1 on R^s ⊕ h.
    let gram_h = pair.nil.gram.submatrix(0, dh, 0, dh);
    let gram_z = RMatrix::block_diag(&[gram_s.clone(), gram_h]);
    if j_1.rows() != s + dh || (j_1 * j_1) != (-RMatrix::identity(s + dh)) {
        return Err(Error::precondition("J_1 does not square to -I on R^s ⊕ h"));
    }
    if !is_skew(j_1, &gram_z) {
        return Err(Error::precondition("J_1 is not orthogonal on R^s ⊕ h"));
    }

    let algebra = LieAlgebra::abelian(s).direct_sum(&pair.nil.algebra);
    let gram = RMatrix::block_diag(&[gram_s.clone(), pair.nil.gram.clone()]);
    let jm_full = RMatrix::block_diag(&[j_1.clone(), j_m.clone()]);
    let j = ComplexStructure::new(jm_full)?;
    let triple = MetricComplexTriple::new(algebra, j, gram)?;
    assert!(
        is_abelian_j(&triple.algebra, &triple.j),
        "Hermitian symmetric assembly must be abelian"
    );
    assert!(
        is_pluriclosed(&triple),
        "Hermitian symmetric assembly must be pluriclosed"
    );
    Ok(triple)
}

// ---------------------------------------------------------------------------
// Built-in representations and pairs
// ---------------------------------------------------------------------------

/// Adjoint representation of su(2) on R^3 (real type).
pub fn su2_adjoint_rep() -> Representation {
    let g = su2();
    let mats = (0..3)
        .map(|i| {
            let mut e = vec![Rational::zero(); 3];
            e[i] = rat(1);
            g.ad(&e)
        })
        .collect();
    Representation { algebra: g, mats }
}

/// Realified spin representation of su(2) on R^4 ≅ H by halved quaternion
/// left multiplications (quaternionic type).
pub fn su2_spin_rep() -> Representation {
    let half = crate::rational::ratio(1, 2);
    let li = RMatrix::from_i64(vec![
        vec![0, -1, 0, 0],
        vec![1, 0, 0, 0],
        vec![0, 0, 0, -1],
        vec![0, 0, 1, 0],
    ]);
    let lj = RMatrix::from_i64(vec![
        vec![0, 0, -1, 0],
        vec![0, 0, 0, 1],
        vec![1, 0, 0, 0],
        vec![0, -1, 0, 0],
    ]);
    let lk = RMatrix::from_i64(vec![
        vec![0, 0, 0, -1],
        vec![0, 0, -1, 0],
        vec![0, 1, 0, 0],
        vec![1, 0, 0, 0],
    ]);
    Representation {
        algebra: su2(),
        mats: vec![li.scale(&half), lj.scale(&half), lk.scale(&half)],
    }
}

/// Rotation representation of u(1) = R on R^2 (complex type). The resulting
/// `N(R, R^2)` is the Heisenberg algebra with its standard metric.
pub fn u1_rotation_rep() -> Representation {
    Representation {
        algebra: LieAlgebra::abelian(1),
        mats: vec![RMatrix::from_i64(vec![vec![0, -1], vec![1, 0]])],
    }
}

/// The symmetric pair (su(2), u(1)) with h spanned by the third generator.
pub fn su2_u1_pair() -> Result<SymmetricPair> {
    let g = su2();
    let h = Subspace::from_spanning(3, &[vec![rat(0), rat(0), rat(1)]]);
    symmetric_pair_nilalgebra(&g, &h)
}

/// The symmetric pair (su(2) ⊕ su(2), diagonal su(2)).
pub fn su2_su2_diagonal_pair() -> Result<SymmetricPair> {
    let g = su2().direct_sum(&su2());
    let diag: Vec<Vec<Rational>> = (0..3)
        .map(|i| {
            let mut v = vec![Rational::zero(); 6];
            v[i] = rat(1);
            v[3 + i] = rat(1);
            v
        })
        .collect();
    let h = Subspace::from_spanning(6, &diag);
    symmetric_pair_nilalgebra(&g, &h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_killing_is_minus_two_i() {
        let b = killing_form(&su2());
        assert_eq!(b, RMatrix::identity(3).scale(&rat(-2)));
    }

    #[test]
    fn su2_u1_pair_is_heisenberg_like() {
        let pair = su2_u1_pair().unwrap();
        assert!(pair.irreducible);
        let r = pair.nil.algebra.report().unwrap();
        assert_eq!((r.dim, r.dim_commutator), (3, 1));
    }

    #[test]
    fn su2_su2_diagonal_dims() {
        let pair = su2_su2_diagonal_pair().unwrap();
        let r = pair.nil.algebra.report().unwrap();
        assert_eq!((r.dim, r.dim_commutator, r.dim_center), (6, 3, 3));
        assert!(pair.irreducible);
    }

    #[test]
    fn whole_algebra_as_h_gives_abelian() {
        let g = su2();
        let h = Subspace::full(3);
        let pair = symmetric_pair_nilalgebra(&g, &h).unwrap();
        assert!(pair.nil.algebra.brackets().is_empty());
    }

    #[test]
    fn commutant_types() {
        assert_eq!(
            irreducible_type(&su2_adjoint_rep()).unwrap(),
            IrreducibleType::Real
        );
        assert_eq!(
            irreducible_type(&su2_spin_rep()).unwrap(),
            IrreducibleType::Quaternionic
        );
        assert_eq!(
            irreducible_type(&u1_rotation_rep()).unwrap(),
            IrreducibleType::Complex
        );
        assert_eq!(commutant(&su2_adjoint_rep()).dim(), 1);
        assert_eq!(commutant(&su2_spin_rep()).dim(), 4);
        assert_eq!(commutant(&u1_rotation_rep()).dim(), 2);
    }

    #[test]
    fn reducible_rep_detected() {
        // Two inequivalent real irreducibles: adjoint ⊕ trivial-free rotation
        // pair on R^3 ⊕ R^2 has a 2-dimensional split commutant.
        let adj = su2_adjoint_rep();
        let rot = u1_rotation_rep();
        // A direct sum of two copies of the rotation on R^2 ⊕ R^2 with
        // DIFFERENT speeds commutes only blockwise: commutant is C ⊕ C.
        let two_speeds = Representation {
            algebra: rot.algebra.clone(),
            mats: vec![RMatrix::block_diag(&[
                rot.mats[0].clone(),
                rot.mats[0].scale(&rat(2)),
            ])],
        };
        assert!(irreducible_type(&two_speeds).is_err());
        let _ = adj;
    }

    #[test]
    fn naturally_reductive_u1_is_h3() {
        let n = naturally_reductive(
            &u1_rotation_rep(),
            &RMatrix::identity(1),
            &RMatrix::identity(2),
        )
        .unwrap();
        // Basis (x, v1, v2) with [v1, v2] = x: the Heisenberg algebra up to
        // reordering.
        let r = n.algebra.report().unwrap();
        assert_eq!((r.dim, r.dim_commutator, r.dim_center), (3, 1, 1));
    }

    #[test]
    fn naturally_reductive_su2_spin_is_quaternionic_heisenberg() {
        let n = naturally_reductive(
            &su2_spin_rep(),
            &RMatrix::identity(3),
            &RMatrix::identity(4),
        )
        .unwrap();
        let r = n.algebra.report().unwrap();
        assert_eq!((r.dim, r.dim_commutator, r.dim_center), (7, 3, 3));
    }

    #[test]
    fn naturally_reductive_su2_adjoint() {
        let n = naturally_reductive(
            &su2_adjoint_rep(),
            &RMatrix::identity(3),
            &RMatrix::identity(3),
        )
        .unwrap();
        let r = n.algebra.report().unwrap();
        assert_eq!((r.dim, r.dim_center), (6, 3));
    }

    #[test]
    fn real_multiplicity_one_refuses_j() {
        let block = IsotypicBlock::new(su2_adjoint_rep(), 3, 1, RMatrix::identity(3)).unwrap();
        assert!(matches!(
            invariant_complex_on_isotypic(&block),
            Err(Error::NoInvariantComplexStructure(_))
        ));
    }

    #[test]
    fn real_multiplicity_two_swaps() {
        let adj = su2_adjoint_rep();
        let rep = Representation {
            algebra: adj.algebra.clone(),
            mats: adj
                .mats
                .iter()
                .map(|m| RMatrix::block_diag(&[m.clone(), m.clone()]))
                .collect(),
        };
        let block = IsotypicBlock::new(rep, 3, 2, RMatrix::identity(6)).unwrap();
        let j = invariant_complex_on_isotypic(&block).unwrap();
        assert_eq!(j, block_swap(3));
    }

    #[test]
    fn complex_type_square_root() {
        let block = IsotypicBlock::new(u1_rotation_rep(), 2, 1, RMatrix::identity(2)).unwrap();
        let j = invariant_complex_on_isotypic(&block).unwrap();
        // The commutant square root of -I is the rotation itself (up to sign).
        assert!(j == block.rep.mats[0] || j == -block.rep.mats[0].clone());
    }

    #[test]
    fn quaternionic_triple_r1() {
        let block = IsotypicBlock::new(su2_spin_rep(), 4, 1, RMatrix::identity(4)).unwrap();
        let (j1, j2, j3) = invariant_quaternionic_triple(&block).unwrap();
        assert_eq!(&j1 * &j2, j3);
        assert_eq!(&j2 * &j1, -j3.clone());
    }

    #[test]
    fn real_type_multiplicity_four_uses_block_shuffles() {
        let adj = su2_adjoint_rep();
        let rep = Representation {
            algebra: adj.algebra.clone(),
            mats: adj
                .mats
                .iter()
                .map(|m| RMatrix::block_diag(&vec![m.clone(); 4]))
                .collect(),
        };
        let block = IsotypicBlock::new(rep, 3, 4, RMatrix::identity(12)).unwrap();
        let (j1, j2, j3) = invariant_quaternionic_triple(&block).unwrap();
        // J1(x,y,z,w) = (-y, x, -w, z) and J2(x,y,z,w) = (-z, w, x, -y).
        let id = RMatrix::identity(3);
        let z = RMatrix::zeros(3, 3);
        let expect1 = z
            .hcat(&(-&id))
            .hcat(&z)
            .hcat(&z)
            .vcat(&id.hcat(&z).hcat(&z).hcat(&z))
            .vcat(&z.hcat(&z).hcat(&z).hcat(&(-&id)))
            .vcat(&z.hcat(&z).hcat(&id).hcat(&z));
        let expect2 = z
            .hcat(&z)
            .hcat(&(-&id))
            .hcat(&z)
            .vcat(&z.hcat(&z).hcat(&z).hcat(&id))
            .vcat(&id.hcat(&z).hcat(&z).hcat(&z))
            .vcat(&z.hcat(&(-&id)).hcat(&z).hcat(&z));
        assert_eq!(j1, expect1);
        assert_eq!(j2, expect2);
        assert_eq!(&j1 * &j2, j3);
    }

    #[test]
    fn complex_type_even_multiplicity_triple() {
        let rot = u1_rotation_rep();
        let rep = Representation {
            algebra: rot.algebra.clone(),
            mats: vec![RMatrix::block_diag(&[
                rot.mats[0].clone(),
                rot.mats[0].clone(),
            ])],
        };
        let block = IsotypicBlock::new(rep, 2, 2, RMatrix::identity(4)).unwrap();
        let (j1, j2, j3) = invariant_quaternionic_triple(&block).unwrap();
        assert_eq!(&j1 * &j2, j3);
        // Real type with multiplicity 2 (not 0 mod 4) refuses a triple.
        let adj = su2_adjoint_rep();
        let rep2 = Representation {
            algebra: adj.algebra.clone(),
            mats: adj
                .mats
                .iter()
                .map(|m| RMatrix::block_diag(&[m.clone(), m.clone()]))
                .collect(),
        };
        let block2 = IsotypicBlock::new(rep2, 3, 2, RMatrix::identity(6)).unwrap();
        assert!(matches!(
            invariant_quaternionic_triple(&block2),
            Err(Error::NoInvariantTriple(_))
        ));
    }

    #[test]
    fn hermitian_symmetric_su2_u1() {
        let pair = su2_u1_pair().unwrap();
        // J_m is the rotation on m = span(e1, e2); J_1 pairs the flat
        // direction with h; gram on R^1 matches -B|h = diag(2).
        let j_m = RMatrix::from_i64(vec![vec![0, -1], vec![1, 0]]);
        let j_1 = RMatrix::from_i64(vec![vec![0, -1], vec![1, 0]]);
        let gram_s = RMatrix::identity(1).scale(&rat(2));
        let t = hermitian_symmetric_j(&pair, &j_m, &j_1, &gram_s).unwrap();
        assert_eq!(t.dim(), 4);
        // Negating J_m still works (sign symmetry of the identity).
        let t2 = hermitian_symmetric_j(&pair, &(-&j_m), &j_1, &gram_s).unwrap();
        assert_eq!(t2.dim(), 4);
    }

    #[test]
    fn hermitian_symmetric_rejects_bad_candidates() {
        let pair = su2_u1_pair().unwrap();
        // Non-orthogonal J_m with det 1 and J^2 = -I.
        let skewed = RMatrix::from_i64(vec![vec![1, -1], vec![2, -1]]);
        let j_1 = RMatrix::from_i64(vec![vec![0, -1], vec![1, 0]]);
        let gram_s = RMatrix::identity(1).scale(&rat(2));
        assert!(hermitian_symmetric_j(&pair, &skewed, &j_1, &gram_s).is_err());

        // su(2) ⊕ su(2) diagonal: m is 3-dimensional, no J_m can exist.
        let pair2 = su2_su2_diagonal_pair().unwrap();
        let j_m3 = RMatrix::identity(3);
        assert!(hermitian_symmetric_j(&pair2, &j_m3, &j_1, &gram_s).is_err());
    }
}
