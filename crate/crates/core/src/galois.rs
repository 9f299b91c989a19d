//! Φ-semisimple Weil–Deligne representations in a graded block model.
//!
//! Inertia acts through a finite abelian group of characters: every basis
//! vector carries a grade, grade 0 being the inertia invariants. A block of
//! Steinberg length `k` with Frobenius scalar `α` has basis `e_1, …, e_k`,
//! `Φ e_i = α q^{-(i-1)} e_i` and `N e_i = e_{i+1}` (`N e_k = 0`), so that
//! `Φ N Φ^{-1} = q^{-1} N`.
//!
//! L-factors are computed from the matrices: since `Φ` is diagonal, the
//! Φ-stable subspace `Ker N ∩ (grade 0)` splits along Φ-eigenspaces and the
//! kernel dimension in each eigenspace is a rank computation over `Q`.

use std::fmt;

use num_traits::{One, Zero};
use rand::seq::IndexedRandom;
use rand::Rng;

use crate::algebra::{MultiPoly, Scalar};
use crate::error::{Error, Result};
use crate::lfactors::{formal_ext_sq_l, LFactor, SatakeParams};

/// `Z/m_1 × … × Z/m_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
}

/// Element of a [`FiniteAbelianGroup`], stored as reduced residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem(Vec<u32>);

impl GroupElem {
    pub fn residues(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidRep(format!("cyclic orders must be ≥ 1: {orders:?}")));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { orders: vec![] }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem(vec![0; self.orders.len()])
    }

    pub fn elem(&self, residues: &[i64]) -> Result<GroupElem> {
        if residues.len() != self.orders.len() {
            return Err(Error::InvalidRep(format!(
                "grade {residues:?} does not match group orders {:?}",
                self.orders
            )));
        }
        Ok(GroupElem(
            residues
                .iter()
                .zip(&self.orders)
                .map(|(&r, &m)| r.rem_euclid(m as i64) as u32)
                .collect(),
        ))
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), m)| (x + y) % m)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElem) -> GroupElem {
        GroupElem(a.0.iter().zip(&self.orders).map(|(x, m)| (m - x) % m).collect())
    }

    fn contains(&self, a: &GroupElem) -> bool {
        a.0.len() == self.orders.len() && a.0.iter().zip(&self.orders).all(|(x, m)| x < m)
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElem {
        GroupElem(self.orders.iter().map(|&m| rng.random_range(0..m)).collect())
    }
}

/// Indecomposable summand: a character of inertia (its grade) twisted into a
/// Steinberg block of the given length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdBlock {
    pub grade: GroupElem,
    pub length: usize,
    pub frobenius: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdRep {
    q: Scalar,
    group: FiniteAbelianGroup,
    nvars: usize,
    blocks: Vec<WdBlock>,
}

impl WdRep {
    /// Validates `q ≥ 2` integral, block lengths ≥ 1, nonzero Frobenius
    /// scalars, and that symbolic scalars only occur without Steinberg
    /// blocks.
    pub fn new(q: Scalar, group: FiniteAbelianGroup, nvars: usize, blocks: Vec<WdBlock>) -> Result<Self> {
        if !q.is_integer() || q < Scalar::from_integer(2.into()) {
            return Err(Error::InvalidRep(format!("q must be an integer ≥ 2, got {q}")));
        }
        let symbolic = blocks.iter().any(|b| b.frobenius.as_constant().is_none());
        for (i, b) in blocks.iter().enumerate() {
            if b.length == 0 {
                return Err(Error::InvalidRep(format!("block {i} has length 0")));
            }
            if b.frobenius.is_zero() {
                return Err(Error::InvalidRep(format!("block {i} has zero Frobenius scalar")));
            }
            if b.frobenius.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    left: nvars,
                    right: b.frobenius.nvars(),
                });
            }
            if !group.contains(&b.grade) {
                return Err(Error::InvalidRep(format!("block {i} grade {} not in group", b.grade)));
            }
            if symbolic && b.length > 1 {
                return Err(Error::MixedSymbolicSteinberg {
                    block: i,
                    length: b.length,
                });
            }
        }
        Ok(WdRep {
            q,
            group,
            nvars,
            blocks,
        })
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn blocks(&self) -> &[WdBlock] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.length).sum()
    }

    fn q_inv(&self) -> Scalar {
        Scalar::one() / &self.q
    }
}

/// `q=5 Z/4 [Sp(1) χ(1) α=2, Sp(2) χ(0) α=3/2]`.
impl fmt::Display for WdRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group: Vec<String> = self.group.orders.iter().map(|m| format!("Z/{m}")).collect();
        let group = if group.is_empty() {
            "1".to_string()
        } else {
            group.join("×")
        };
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("Sp({}) χ{} α={}", b.length, b.grade, b.frobenius))
            .collect();
        write!(f, "q={} {} [{}]", self.q, group, blocks.join(", "))
    }
}

/// Dense square matrix over [`MultiPoly`], row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    size: usize,
    entries: Vec<MultiPoly>,
}

impl Matrix {
    pub fn zero(size: usize, nvars: usize) -> Self {
        Matrix {
            size,
            entries: vec![MultiPoly::zero(nvars); size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.size + c]
    }

    fn set(&mut self, r: usize, c: usize, v: MultiPoly) {
        self.entries[r * self.size + c] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.size;
        let nvars = self.entries.first().map_or(0, MultiPoly::nvars);
        let mut out = Matrix::zero(n, nvars);
        for r in 0..n {
            for c in 0..n {
                let mut acc = MultiPoly::zero(nvars);
                for k in 0..n {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            size: self.size,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.size).all(|r| (0..self.size).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    /// Column `c` as rationals, if all its entries are constants.
    fn rational_column(&self, c: usize) -> Option<Vec<Scalar>> {
        (0..self.size).map(|r| self.get(r, c).as_constant()).collect()
    }
}

/// Rank over `Q` of a set of column vectors.
fn rank(mut cols: Vec<Vec<Scalar>>) -> usize {
    let mut rank = 0;
    let len = cols.first().map_or(0, Vec::len);
    for row in 0..len {
        let Some(pivot) = (rank..cols.len()).find(|&c| !cols[c][row].is_zero()) else {
            continue;
        };
        cols.swap(rank, pivot);
        let p = cols[rank].clone();
        for col in cols.iter_mut().skip(rank + 1) {
            if col[row].is_zero() {
                continue;
            }
            let f = &col[row] / &p[row];
            for (x, y) in col.iter_mut().zip(&p) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Frobenius, monodromy and grading of a representation (or of its exterior
/// square).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdMatrices {
    pub frobenius: Matrix,
    pub nilpotent: Matrix,
    pub grades: Vec<GroupElem>,
}

impl WdMatrices {
    /// `Φ N = q^{-1} N Φ`, equivalent to `Φ N Φ^{-1} = q^{-1} N`.
    pub fn satisfies_relation(&self, q_inv: &Scalar) -> bool {
        self.frobenius.mul(&self.nilpotent) == self.nilpotent.mul(&self.frobenius).scale(q_inv)
    }

    /// Frobenius eigenvalues on `Ker N ∩ (grade 0)`, with multiplicity, in
    /// basis order of first occurrence.
    pub fn invariant_kernel_eigenvalues(&self) -> Vec<MultiPoly> {
        assert!(self.frobenius.is_diagonal(), "Frobenius is diagonal in the block model");
        let n = self.frobenius.size();
        let mut groups: Vec<(MultiPoly, Vec<usize>)> = Vec::new();
        for i in (0..n).filter(|&i| self.grades[i].is_zero()) {
            let lambda = self.frobenius.get(i, i);
            match groups.iter_mut().find(|(l, _)| l == lambda) {
                Some((_, idx)) => idx.push(i),
                None => groups.push((lambda.clone(), vec![i])),
            }
        }
        let mut out = Vec::new();
        for (lambda, idx) in groups {
            let cols = idx
                .iter()
                .map(|&c| {
                    self.nilpotent
                        .rational_column(c)
                        .expect("monodromy has rational entries")
                })
                .collect();
            let kernel_dim = idx.len() - rank(cols);
            out.extend(std::iter::repeat_n(lambda, kernel_dim));
        }
        out
    }
}

/// Φ, N and grades on the block basis; asserts the Φ–N relation.
pub fn build_matrices(rep: &WdRep) -> WdMatrices {
    let n = rep.dim();
    let mut frobenius = Matrix::zero(n, rep.nvars);
    let mut nilpotent = Matrix::zero(n, rep.nvars);
    let mut grades = Vec::with_capacity(n);
    let q_inv = rep.q_inv();
    let mut offset = 0;
    for b in &rep.blocks {
        let mut eigen = b.frobenius.clone();
        for i in 0..b.length {
            frobenius.set(offset + i, offset + i, eigen.clone());
            eigen = eigen.scale(&q_inv);
            if i + 1 < b.length {
                nilpotent.set(offset + i + 1, offset + i, MultiPoly::one(rep.nvars));
            }
            grades.push(b.grade.clone());
        }
        offset += b.length;
    }
    let m = WdMatrices {
        frobenius,
        nilpotent,
        grades,
    };
    assert!(m.satisfies_relation(&q_inv), "Φ N Φ^-1 = q^-1 N by construction");
    m
}

/// `det(1 - tΦ | (Ker N)^{I_F})^{-1}`.
pub fn wd_lfactor(rep: &WdRep) -> LFactor {
    let m = build_matrices(rep);
    LFactor::from_inverse_roots(rep.nvars, &m.invariant_kernel_eigenvalues())
}

/// `∧²` of a representation: basis `e_i ∧ e_j` (`i < j`), Frobenius `∧²Φ`,
/// monodromy `N ⊗ 1 + 1 ⊗ N`, grades added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtSquare {
    pub pairs: Vec<(usize, usize)>,
    pub matrices: WdMatrices,
}

pub fn ext_sq(rep: &WdRep) -> ExtSquare {
    let base = build_matrices(rep);
    let n = rep.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let index = |k: usize, l: usize| pairs.iter().position(|&p| p == (k, l)).unwrap();
    let d = pairs.len();
    let nvars = rep.nvars;
    let mut frobenius = Matrix::zero(d, nvars);
    let mut nilpotent = Matrix::zero(d, nvars);
    let phi = &base.frobenius;
    let nil = &base.nilpotent;
    for (col, &(i, j)) in pairs.iter().enumerate() {
        // Φe_i ∧ Φe_j = Σ_{k<l} (Φ_ki Φ_lj - Φ_li Φ_kj) e_k ∧ e_l
        for (row, &(k, l)) in pairs.iter().enumerate() {
            let v = &(phi.get(k, i) * phi.get(l, j)) - &(phi.get(l, i) * phi.get(k, j));
            frobenius.set(row, col, v);
        }
        // N e_i ∧ e_j + e_i ∧ N e_j
        let mut image = vec![MultiPoly::zero(nvars); d];
        let mut wedge = |a: usize, b: usize, c: &MultiPoly| {
            if a == b || c.is_zero() {
                return;
            }
            let (slot, c) = if a < b {
                (index(a, b), c.clone())
            } else {
                (index(b, a), -c)
            };
            image[slot] = &image[slot] + &c;
        };
        for k in 0..n {
            wedge(k, j, nil.get(k, i));
            wedge(i, k, nil.get(k, j));
        }
        for (row, v) in image.into_iter().enumerate() {
            nilpotent.set(row, col, v);
        }
    }
    let grades = pairs
        .iter()
        .map(|&(i, j)| rep.group.add(&base.grades[i], &base.grades[j]))
        .collect();
    ExtSquare {
        pairs,
        matrices: WdMatrices {
            frobenius,
            nilpotent,
            grades,
        },
    }
}

/// `L(s, ∧²ρ) = det(1 - t∧²Φ | Ker(N⊗1 + 1⊗N)^{I_F})^{-1}`.
pub fn ext_sq_lfactor(rep: &WdRep) -> LFactor {
    let sq = ext_sq(rep);
    LFactor::from_inverse_roots(rep.nvars, &sq.matrices.invariant_kernel_eigenvalues())
}

/// Frobenius eigenvalues on `(Ker N)^{I_F}` read off the blocks
/// (`α q^{-(k-1)}` per unramified block), zero-padded to the dimension.
pub fn standard_satake(rep: &WdRep) -> SatakeParams {
    let q_inv = rep.q_inv();
    let mut entries: Vec<MultiPoly> = rep
        .blocks
        .iter()
        .filter(|b| b.grade.is_zero())
        .map(|b| b.frobenius.scale(&num_traits::pow(q_inv.clone(), b.length - 1)))
        .collect();
    entries.resize(rep.dim(), MultiPoly::zero(rep.nvars));
    SatakeParams::from_polys(rep.nvars, entries).expect("blocks share the ring")
}

/// `det(1 - tΦ | ∧²((Ker N)^{I_F}))^{-1}` from the matrices.
pub fn wedge_of_invariant_kernel_lfactor(rep: &WdRep) -> LFactor {
    let eig = build_matrices(rep).invariant_kernel_eigenvalues();
    let mut roots = Vec::new();
    for (i, a) in eig.iter().enumerate() {
        for b in &eig[i + 1..] {
            roots.push(a * b);
        }
    }
    LFactor::from_inverse_roots(rep.nvars, &roots)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisibility {
    pub formal: LFactor,
    pub ext_sq: LFactor,
    pub divides: bool,
    /// Divides with a quotient of positive degree.
    pub strict: bool,
    /// `P_{∧²} / P_𝓛` on the reciprocal polynomials.
    pub quotient: Option<LFactor>,
}

/// Whether `𝓛(s, π, ∧²)` divides `L(s, ∧²ρ)`: with `𝓛 = 1/P_𝓛` and
/// `L = 1/P_∧`, this holds iff `P_𝓛` divides `P_∧`.
pub fn divisibility_check(rep: &WdRep) -> Divisibility {
    let formal = formal_ext_sq_l(&standard_satake(rep));
    let ext = ext_sq_lfactor(rep);
    let quotient = formal.divides(&ext).expect("same ring");
    Divisibility {
        divides: quotient.is_some(),
        strict: quotient.as_ref().is_some_and(|q| !q.is_one()),
        quotient,
        formal,
        ext_sq: ext,
    }
}

/// First pair `i < j` of ramified grades whose sum is unramified.
pub fn h_violation(group: &FiniteAbelianGroup, grades: &[GroupElem]) -> Option<(usize, usize)> {
    for (i, a) in grades.iter().enumerate() {
        for (j, b) in grades.iter().enumerate().skip(i + 1) {
            if !a.is_zero() && !b.is_zero() && group.add(a, b).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Hypothesis (H): products of two ramified characters stay ramified.
pub fn hypothesis_h(group: &FiniteAbelianGroup, grades: &[GroupElem]) -> bool {
    h_violation(group, grades).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HEquality {
    pub formal: LFactor,
    pub ext_sq: LFactor,
    /// `Π_{i<j} L(s, χ_i χ_j)`, each pair factor computed on its own.
    pub pairwise: LFactor,
    pub equal: bool,
}

/// `Π_{i<j} L(s, χ_i χ_j)`: the pair contributes `(1 - β_i β_j t)^{-1}`
/// exactly when `χ_i χ_j` is unramified.
pub fn pairwise_character_lfactor(rep: &WdRep) -> Result<LFactor> {
    require_principal_series(rep)?;
    let mut roots = Vec::new();
    for (i, a) in rep.blocks.iter().enumerate() {
        for b in &rep.blocks[i + 1..] {
            if rep.group.add(&a.grade, &b.grade).is_zero() {
                roots.push(&a.frobenius * &b.frobenius);
            }
        }
    }
    Ok(LFactor::from_inverse_roots(rep.nvars, &roots))
}

fn require_principal_series(rep: &WdRep) -> Result<()> {
    match rep.blocks.iter().position(|b| b.length != 1) {
        Some(i) => Err(Error::NotPrincipalSeries {
            block: i,
            length: rep.blocks[i].length,
        }),
        None => Ok(()),
    }
}

/// Equality `𝓛 = L(s, π, ∧²)` for a principal series satisfying (H).
pub fn prop_h_equality(rep: &WdRep) -> Result<HEquality> {
    require_principal_series(rep)?;
    let grades: Vec<GroupElem> = rep.blocks.iter().map(|b| b.grade.clone()).collect();
    if let Some((i, j)) = h_violation(&rep.group, &grades) {
        return Err(Error::HypothesisH { i, j });
    }
    let formal = formal_ext_sq_l(&standard_satake(rep));
    let ext = ext_sq_lfactor(rep);
    let pairwise = pairwise_character_lfactor(rep)?;
    Ok(HEquality {
        equal: formal == ext,
        formal,
        ext_sq: ext,
        pairwise,
    })
}

/// Bounds for randomly generated representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomRepBounds {
    pub max_dim: usize,
    pub max_blocks: usize,
    pub max_length: usize,
    pub max_order: u32,
    pub qs: Vec<i64>,
}

impl Default for RandomRepBounds {
    fn default() -> Self {
        RandomRepBounds {
            max_dim: 6,
            max_blocks: 4,
            max_length: 3,
            max_order: 6,
            qs: vec![2, 3, 5],
        }
    }
}

fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let mut num = rng.random_range(-9i64..=8);
    if num >= 0 {
        num += 1;
    }
    Scalar::new(num.into(), rng.random_range(1i64..=5).into())
}

fn random_group<R: Rng + ?Sized>(rng: &mut R, max_order: u32) -> FiniteAbelianGroup {
    let factors = rng.random_range(1..=2);
    FiniteAbelianGroup {
        orders: (0..factors).map(|_| rng.random_range(1..=max_order)).collect(),
    }
}

/// Grades biased towards 0 and towards negatives of earlier grades, so that
/// ramified pairs with unramified product show up often.
fn random_grade<R: Rng + ?Sized>(rng: &mut R, group: &FiniteAbelianGroup, earlier: &[GroupElem]) -> GroupElem {
    let roll = rng.random_range(0..10);
    if roll < 4 {
        group.zero()
    } else if roll < 7 && !earlier.is_empty() {
        group.neg(earlier.choose(rng).unwrap())
    } else {
        group.random_elem(rng)
    }
}

/// Random graded representation with rational Frobenius scalars.
pub fn random_rep<R: Rng + ?Sized>(rng: &mut R, bounds: &RandomRepBounds) -> WdRep {
    let group = random_group(rng, bounds.max_order);
    let q = *bounds.qs.choose(rng).expect("at least one q");
    let nblocks = rng.random_range(1..=bounds.max_blocks);
    let mut blocks: Vec<WdBlock> = Vec::new();
    let mut dim = 0;
    for _ in 0..nblocks {
        let room = bounds.max_dim - dim;
        if room == 0 {
            break;
        }
        let length = rng.random_range(1..=bounds.max_length.min(room));
        let earlier: Vec<GroupElem> = blocks.iter().map(|b| b.grade.clone()).collect();
        let grade = random_grade(rng, &group, &earlier);
        blocks.push(WdBlock {
            grade,
            length,
            frobenius: MultiPoly::constant(0, random_scalar(rng)),
        });
        dim += length;
    }
    WdRep::new(Scalar::from_integer(q.into()), group, 0, blocks).expect("valid by construction")
}

/// Random principal series (all blocks of length 1), retried until its
/// grades satisfy or violate (H) as requested.
pub fn random_principal_series<R: Rng + ?Sized>(rng: &mut R, bounds: &RandomRepBounds, satisfy_h: bool) -> WdRep {
    loop {
        let group = random_group(rng, bounds.max_order);
        let q = *bounds.qs.choose(rng).expect("at least one q");
        let n = rng.random_range(2..=bounds.max_dim);
        let mut grades: Vec<GroupElem> = Vec::new();
        for _ in 0..n {
            let g = random_grade(rng, &group, &grades);
            grades.push(g);
        }
        if hypothesis_h(&group, &grades) != satisfy_h {
            continue;
        }
        let blocks = grades
            .into_iter()
            .map(|grade| WdBlock {
                grade,
                length: 1,
                frobenius: MultiPoly::constant(0, random_scalar(rng)),
            })
            .collect();
        return WdRep::new(Scalar::from_integer(q.into()), group, 0, blocks).expect("valid by construction");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UniPoly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n.into(), d.into())
    }

    fn c(v: Scalar) -> MultiPoly {
        MultiPoly::constant(0, v)
    }

    fn block(group: &FiniteAbelianGroup, grade: &[i64], length: usize, alpha: Scalar) -> WdBlock {
        WdBlock {
            grade: group.elem(grade).unwrap(),
            length,
            frobenius: c(alpha),
        }
    }

    fn rep(q: i64, group: FiniteAbelianGroup, blocks: Vec<WdBlock>) -> WdRep {
        WdRep::new(s(q, 1), group, 0, blocks).unwrap()
    }

    fn lf(roots: &[Scalar]) -> LFactor {
        LFactor::from_unipoly(0, &UniPoly::from_inverse_roots(roots)).unwrap()
    }

    #[test]
    fn single_character_matrices() {
        let g = FiniteAbelianGroup::trivial();
        let r = rep(5, g.clone(), vec![block(&g, &[], 1, s(3, 1))]);
        let m = build_matrices(&r);
        assert_eq!(m.frobenius.get(0, 0), &c(s(3, 1)));
        assert!(m.nilpotent.is_zero());
    }

    #[test]
    fn steinberg_two_matrices() {
        let g = FiniteAbelianGroup::trivial();
        let r = rep(5, g.clone(), vec![block(&g, &[], 2, s(2, 1))]);
        let m = build_matrices(&r);
        assert_eq!(m.frobenius.get(0, 0), &c(s(2, 1)));
        assert_eq!(m.frobenius.get(1, 1), &c(s(2, 5)));
        assert!(m.nilpotent.get(1, 0).is_one());
        assert!(m.satisfies_relation(&s(1, 5)));
        assert!(!m.satisfies_relation(&s(1, 3)));
    }

    #[test]
    fn direct_sum_is_block_diagonal() {
        let g = FiniteAbelianGroup::trivial();
        let r = rep(
            3,
            g.clone(),
            vec![block(&g, &[], 1, s(2, 1)), block(&g, &[], 1, s(7, 1))],
        );
        let m = build_matrices(&r);
        assert!(m.frobenius.is_diagonal());
        assert_eq!(m.frobenius.get(1, 1), &c(s(7, 1)));
    }

    #[test]
    fn wd_lfactor_examples() {
        let g = FiniteAbelianGroup::new(vec![4]).unwrap();
        let unram = rep(5, g.clone(), vec![block(&g, &[0], 1, s(3, 1))]);
        assert_eq!(wd_lfactor(&unram), lf(&[s(3, 1)]));
        let ram = rep(5, g.clone(), vec![block(&g, &[1], 1, s(3, 1))]);
        assert!(wd_lfactor(&ram).is_one());
        let st = rep(5, g.clone(), vec![block(&g, &[0], 2, s(3, 1))]);
        assert_eq!(wd_lfactor(&st), lf(&[s(3, 5)]));
    }

    #[test]
    fn ext_sq_examples() {
        let g = FiniteAbelianGroup::new(vec![3]).unwrap();
        let two = rep(
            5,
            g.clone(),
            vec![block(&g, &[0], 1, s(2, 1)), block(&g, &[0], 1, s(3, 1))],
        );
        let sq = ext_sq(&two);
        assert_eq!(sq.pairs.len(), 1);
        assert_eq!(sq.matrices.frobenius.get(0, 0), &c(s(6, 1)));
        assert!(sq.matrices.grades[0].is_zero());

        let sp2 = rep(5, g.clone(), vec![block(&g, &[0], 2, s(2, 1))]);
        let sq = ext_sq(&sp2);
        assert_eq!(sq.matrices.frobenius.get(0, 0), &c(s(4, 5)));
        assert!(sq.matrices.nilpotent.is_zero());

        let pair = rep(
            5,
            g.clone(),
            vec![block(&g, &[1], 1, s(2, 1)), block(&g, &[-1], 1, s(3, 1))],
        );
        assert!(ext_sq(&pair).matrices.grades[0].is_zero());
    }

    #[test]
    fn ext_sq_lfactor_examples() {
        let g = FiniteAbelianGroup::new(vec![5]).unwrap();
        let pair = rep(
            3,
            g.clone(),
            vec![block(&g, &[2], 1, s(2, 1)), block(&g, &[3], 1, s(-1, 3))],
        );
        assert_eq!(ext_sq_lfactor(&pair), lf(&[s(-2, 3)]));

        let alphas = [s(2, 1), s(3, 1), s(-1, 2)];
        let ps = rep(
            3,
            g.clone(),
            alphas.iter().map(|a| block(&g, &[0], 1, a.clone())).collect(),
        );
        let prods = [s(6, 1), s(-1, 1), s(-3, 2)];
        assert_eq!(ext_sq_lfactor(&ps), lf(&prods));

        let all_ram = rep(
            3,
            g.clone(),
            vec![block(&g, &[1], 1, s(2, 1)), block(&g, &[1], 1, s(3, 1))],
        );
        assert!(ext_sq_lfactor(&all_ram).is_one());
    }

    #[test]
    fn standard_satake_examples() {
        let g = FiniteAbelianGroup::new(vec![2]).unwrap();
        let r = rep(
            5,
            g.clone(),
            vec![block(&g, &[0], 1, s(2, 1)), block(&g, &[1], 1, s(3, 1))],
        );
        let sat = standard_satake(&r);
        assert_eq!(sat.entries(), &[c(s(2, 1)), MultiPoly::zero(0)]);
        let sp2 = rep(5, g.clone(), vec![block(&g, &[0], 2, s(3, 1))]);
        assert_eq!(standard_satake(&sp2).entries(), &[c(s(3, 5)), MultiPoly::zero(0)]);
    }

    #[test]
    fn divisibility_witnesses() {
        let g = FiniteAbelianGroup::new(vec![4]).unwrap();
        let ps = rep(
            2,
            g.clone(),
            vec![block(&g, &[0], 1, s(2, 1)), block(&g, &[0], 1, s(5, 3))],
        );
        let d = divisibility_check(&ps);
        assert!(d.divides && !d.strict);
        assert!(d.quotient.unwrap().is_one());

        let pair = rep(
            2,
            g.clone(),
            vec![block(&g, &[1], 1, s(2, 1)), block(&g, &[3], 1, s(7, 1))],
        );
        let d = divisibility_check(&pair);
        assert!(d.divides && d.strict);
        assert!(d.formal.is_one());
        assert_eq!(d.ext_sq, lf(&[s(14, 1)]));

        let sp2 = rep(3, g.clone(), vec![block(&g, &[0], 2, s(2, 1))]);
        let d = divisibility_check(&sp2);
        assert!(d.divides && d.strict);
        assert_eq!(d.ext_sq, lf(&[s(4, 3)]));
    }

    #[test]
    fn hypothesis_h_examples() {
        let g = FiniteAbelianGroup::new(vec![3]).unwrap();
        let e = |r: i64| g.elem(&[r]).unwrap();
        assert!(hypothesis_h(&g, &[e(0), e(0), e(0)]));
        assert!(!hypothesis_h(&g, &[e(1), e(2)]));
        assert!(hypothesis_h(&g, &[e(1), e(1), e(0)]));
    }

    #[test]
    fn prop_h_examples() {
        let g = FiniteAbelianGroup::trivial();
        let r = rep(5, g.clone(), (1..=3).map(|a| block(&g, &[], 1, s(a, 1))).collect());
        let h = prop_h_equality(&r).unwrap();
        assert!(h.equal);
        assert_eq!(h.formal, lf(&[s(2, 1), s(3, 1), s(6, 1)]));

        let z4 = FiniteAbelianGroup::new(vec![4]).unwrap();
        let r = rep(
            5,
            z4.clone(),
            vec![
                block(&z4, &[1], 1, s(2, 1)),
                block(&z4, &[1], 1, s(3, 1)),
                block(&z4, &[0], 1, s(5, 1)),
            ],
        );
        let h = prop_h_equality(&r).unwrap();
        assert!(h.equal && h.formal.is_one());

        let z2 = FiniteAbelianGroup::new(vec![2]).unwrap();
        let r = rep(
            5,
            z2.clone(),
            vec![block(&z2, &[1], 1, s(2, 1)), block(&z2, &[1], 1, s(3, 1))],
        );
        assert_eq!(prop_h_equality(&r), Err(Error::HypothesisH { i: 0, j: 1 }));

        let st = rep(5, z2.clone(), vec![block(&z2, &[0], 2, s(2, 1))]);
        assert_eq!(
            prop_h_equality(&st),
            Err(Error::NotPrincipalSeries { block: 0, length: 2 })
        );
    }

    #[test]
    fn symbolic_principal_series() {
        let n = 3;
        let g = FiniteAbelianGroup::trivial();
        let blocks = (0..n)
            .map(|i| WdBlock {
                grade: g.zero(),
                length: 1,
                frobenius: MultiPoly::var(n, i),
            })
            .collect();
        let r = WdRep::new(s(5, 1), g, n, blocks).unwrap();
        let h = prop_h_equality(&r).unwrap();
        assert!(h.equal);
        assert_eq!(h.formal, formal_ext_sq_l(&SatakeParams::symbolic(3)));
    }

    #[test]
    fn rejects_symbolic_steinberg() {
        let g = FiniteAbelianGroup::trivial();
        let blocks = vec![
            WdBlock {
                grade: g.zero(),
                length: 1,
                frobenius: MultiPoly::var(1, 0),
            },
            WdBlock {
                grade: g.zero(),
                length: 2,
                frobenius: MultiPoly::one(1),
            },
        ];
        assert_eq!(
            WdRep::new(s(5, 1), g, 1, blocks),
            Err(Error::MixedSymbolicSteinberg { block: 1, length: 2 })
        );
    }

    #[test]
    fn rejects_bad_q_and_blocks() {
        let g = FiniteAbelianGroup::trivial();
        assert!(WdRep::new(s(1, 1), g.clone(), 0, vec![]).is_err());
        assert!(WdRep::new(s(5, 2), g.clone(), 0, vec![]).is_err());
        assert!(WdRep::new(s(5, 1), g.clone(), 0, vec![block(&g, &[], 0, s(1, 1))]).is_err());
        assert!(WdRep::new(s(5, 1), g.clone(), 0, vec![block(&g, &[], 1, s(0, 1))]).is_err());
        assert!(FiniteAbelianGroup::new(vec![0]).is_err());
    }

    #[test]
    fn randomized_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let bounds = RandomRepBounds::default();
        for _ in 0..40 {
            let r = random_rep(&mut rng, &bounds);
            assert!(r.dim() <= 6);
            let q_inv = Scalar::one() / r.q();
            let sq = ext_sq(&r);
            assert!(sq.matrices.satisfies_relation(&q_inv));
            // LLC compatibility of the standard factor in the block model.
            assert_eq!(wd_lfactor(&r), crate::lfactors::standard_l(&standard_satake(&r)));
            // 𝓛 equals the wedge of the invariant kernel.
            assert_eq!(
                formal_ext_sq_l(&standard_satake(&r)),
                wedge_of_invariant_kernel_lfactor(&r)
            );
            let d = divisibility_check(&r);
            assert!(d.divides);
        }
    }

    #[test]
    fn pairwise_rule_matches_ext_sq_on_principal_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let bounds = RandomRepBounds::default();
        for satisfy in [true, false] {
            for _ in 0..20 {
                let r = random_principal_series(&mut rng, &bounds, satisfy);
                assert_eq!(ext_sq_lfactor(&r), pairwise_character_lfactor(&r).unwrap());
            }
        }
    }
}
