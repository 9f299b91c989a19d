//! Partitions, Schur polynomials and the enumerations that index every
//! torus sum.
//!
//! [`schur`] evaluates the Jacobi–Trudi determinant `det(h_{f_i - i + j})`;
//! [`schur_bialternant`] divides the alternant `det(X_j^{f_i + n - i})` by the
//! Vandermonde product. The two share nothing but [`MultiPoly`], which is what
//! makes the bialternant a useful oracle.

use std::collections::HashMap;

use num_traits::One;

use crate::algebra::{MultiPoly, Scalar};
use crate::error::{Error, Result};
use crate::lfactors::SatakeParams;

/// Weakly decreasing sequence of nonnegative integers. Trailing zeros are
/// kept; [`Partition::length`] counts only the nonzero parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).all(|w| w[0] >= w[1]) {
            Ok(Partition(parts))
        } else {
            Err(Error::InvalidPartition(parts))
        }
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of stored entries, zeros included.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.iter().take_while(|&&p| p > 0).count()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn trimmed(&self) -> Partition {
        Partition(self.0[..self.length()].to_vec())
    }

    /// Zero-padded (or zero-trimmed) to exactly `n` entries.
    pub fn padded(&self, n: usize) -> Result<Partition> {
        if self.length() > n {
            return Err(Error::ShapeTooLong {
                parts: self.0.clone(),
                nvars: n,
            });
        }
        let mut parts = self.trimmed().0;
        parts.resize(n, 0);
        Ok(Partition(parts))
    }

    pub fn doubled(&self, trailing_zeros: usize) -> DoubledPartition {
        DoubledPartition {
            base: self.clone(),
            trailing_zeros,
        }
    }
}

/// The shape `(f1, f1, f2, f2, …, fh, fh)` followed by explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledPartition {
    pub base: Partition,
    pub trailing_zeros: usize,
}

impl DoubledPartition {
    pub fn shape(&self) -> Partition {
        let mut parts: Vec<u32> = self.base.0.iter().flat_map(|&p| [p, p]).collect();
        parts.extend(std::iter::repeat_n(0, self.trailing_zeros));
        Partition(parts)
    }
}

/// Sum of all monomials of total degree `k` in `n` variables; `h_k = 0` for
/// negative `k`.
pub fn complete_homogeneous(k: i64, n: usize) -> MultiPoly {
    if k < 0 {
        return MultiPoly::zero(n);
    }
    let k = k as u32;
    if n == 0 {
        return if k == 0 { MultiPoly::one(0) } else { MultiPoly::zero(0) };
    }
    let mut terms = Vec::new();
    let mut exps = vec![0u32; n];
    compositions(k, 0, &mut exps, &mut |e| terms.push((e.to_vec(), Scalar::one())));
    MultiPoly::from_terms(n, terms)
}

fn compositions(rest: u32, pos: usize, exps: &mut [u32], emit: &mut dyn FnMut(&[u32])) {
    if pos + 1 == exps.len() {
        exps[pos] = rest;
        emit(exps);
        return;
    }
    for e in (0..=rest).rev() {
        exps[pos] = e;
        compositions(rest - e, pos + 1, exps, emit);
    }
}

/// Schur polynomial `s_f(x_1, …, x_n)` via the Jacobi–Trudi determinant.
pub fn schur(f: &Partition, n: usize) -> Result<MultiPoly> {
    let f = f.padded(n)?;
    let rows = f.length();
    if rows == 0 {
        return Ok(MultiPoly::one(n));
    }
    let parts = &f.0[..rows];
    let mut h_cache: HashMap<i64, MultiPoly> = HashMap::new();
    let mut entry = |i: usize, j: usize| -> MultiPoly {
        let k = parts[i] as i64 - i as i64 + j as i64;
        h_cache.entry(k).or_insert_with(|| complete_homogeneous(k, n)).clone()
    };
    let matrix: Vec<Vec<MultiPoly>> = (0..rows).map(|i| (0..rows).map(|j| entry(i, j)).collect()).collect();
    Ok(determinant(&matrix, n))
}

/// Row-by-row Laplace expansion over column subsets; `O(r·2^r)` products.
fn determinant(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let r = m.len();
    let mut minors: HashMap<u32, MultiPoly> = HashMap::new();
    minors.insert(0, MultiPoly::one(nvars));
    for (row, entries) in m.iter().enumerate() {
        let mut next: HashMap<u32, MultiPoly> = HashMap::new();
        for (&mask, minor) in &minors {
            debug_assert_eq!(mask.count_ones() as usize, row);
            for (col, e) in entries.iter().enumerate() {
                if mask & (1 << col) != 0 || e.is_zero() {
                    continue;
                }
                let inversions = (mask >> (col + 1)).count_ones();
                let mut term = minor * e;
                if inversions % 2 == 1 {
                    term = -&term;
                }
                let slot = next.entry(mask | (1 << col)).or_insert_with(|| MultiPoly::zero(nvars));
                *slot = &*slot + &term;
            }
        }
        next.retain(|_, p| !p.is_zero());
        minors = next;
    }
    minors
        .remove(&((1u32 << r) - 1))
        .unwrap_or_else(|| MultiPoly::zero(nvars))
}

/// Schur polynomial as alternant over Vandermonde.
pub fn schur_bialternant(f: &Partition, n: usize) -> Result<MultiPoly> {
    let f = f.padded(n)?;
    if n == 0 {
        return Ok(MultiPoly::one(0));
    }
    // det(X_j^{f_i + n - i}) = Σ_σ sgn σ Π_i X_{σ(i)}^{f_i + n - i}
    let powers: Vec<u32> = (0..n).map(|i| f.0[i] + (n - 1 - i) as u32).collect();
    let mut terms = Vec::new();
    for_each_permutation(n, &mut |perm, odd| {
        let mut exps = vec![0u32; n];
        for (i, &p) in perm.iter().enumerate() {
            exps[p] = powers[i];
        }
        let sign = if odd { -Scalar::one() } else { Scalar::one() };
        terms.push((exps, sign));
    });
    let mut quotient = MultiPoly::from_terms(n, terms);
    for i in 0..n {
        for j in i + 1..n {
            let factor = &MultiPoly::var(n, i) - &MultiPoly::var(n, j);
            quotient = quotient.div_exact(&factor).map_err(|e| match e {
                Error::InexactDivision(msg) => Error::InexactDivision(format!("alternant by Vandermonde: {msg}")),
                other => other,
            })?;
        }
    }
    Ok(quotient)
}

/// Calls `emit(perm, is_odd)` for every permutation of `0..n`.
fn for_each_permutation(n: usize, emit: &mut dyn FnMut(&[usize], bool)) {
    // Heap's algorithm: every step is a single transposition.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut odd = false;
    emit(&perm, odd);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            odd = !odd;
            emit(&perm, odd);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Evaluates `s_f` at Satake parameters that may contain zeros.
///
/// The parameters are reordered so the `k` nonzero entries come first. Then
/// `s_f` vanishes unless `f_{k+1} = … = f_n = 0`, in which case it equals
/// `s_{(f_1, …, f_k)}` at the nonzero entries.
pub fn schur_eval_padded(f: &Partition, values: &SatakeParams) -> Result<MultiPoly> {
    let n = values.n();
    let f = f.padded(n)?;
    let nonzero = values.nonzero_entries();
    let k = nonzero.len();
    if f.0[k..].iter().any(|&p| p > 0) {
        return Ok(MultiPoly::zero(values.nvars()));
    }
    let reduced = Partition(f.0[..k].to_vec());
    schur(&reduced, k)?.substitute(&nonzero, values.nvars())
}

/// All partitions of `weight` into at most `max_parts` parts, each padded to
/// `max_parts` entries, in increasing colexicographic order.
pub fn partitions_bounded(weight: u32, max_parts: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if max_parts == 0 {
        if weight == 0 {
            out.push(Partition::empty());
        }
        return out;
    }
    // (prefix, remaining weight)
    let mut stack: Vec<(Vec<u32>, u32)> = vec![(Vec::with_capacity(max_parts), weight)];
    while let Some((prefix, rest)) = stack.pop() {
        let slots = max_parts - prefix.len();
        if slots == 0 {
            if rest == 0 {
                out.push(Partition(prefix));
            }
            continue;
        }
        let cap = prefix.last().copied().unwrap_or(rest).min(rest);
        // The remaining slots can hold at most `cap` each.
        let lo = rest.div_ceil(slots as u32);
        for p in lo..=cap {
            let mut next = prefix.clone();
            next.push(p);
            stack.push((next, rest - p));
        }
    }
    out.sort_by(|a, b| a.0.iter().rev().cmp(b.0.iter().rev()));
    out
}

/// Exponents `(a(f), b(f))` of `(t1, t2)` attached to a weakly decreasing
/// vector: `a = f1 - f2 + f3 - …`, `b = f2 + f4 + …`.
pub fn window_exponents(f: &[u32]) -> (u64, u64) {
    let mut a: i64 = 0;
    let mut b: u64 = 0;
    for (i, &x) in f.iter().enumerate() {
        if i % 2 == 0 {
            a += x as i64;
        } else {
            a -= x as i64;
            b += x as u64;
        }
    }
    (a as u64, b)
}

/// Every weakly decreasing nonnegative vector of length `len` whose
/// `(t1, t2)`-exponents lie in `[0, window.0] × [0, window.1]`, in
/// lexicographic order.
pub fn dominant_vectors(window: (usize, usize), len: usize) -> Vec<Vec<u32>> {
    let (l1, l2) = (window.0 as u32, window.1 as u32);
    let mut out = Vec::new();
    // (prefix, alternating sum over completed pairs, sum of even slots)
    let mut stack: Vec<(Vec<u32>, u32, u32)> = vec![(Vec::with_capacity(len), 0, 0)];
    while let Some((prefix, a, b)) = stack.pop() {
        let i = prefix.len();
        if i == len {
            out.push(prefix);
            continue;
        }
        let prev = prefix.last().copied();
        let (lo, hi) = if i % 2 == 0 {
            // odd slot (1-based): closes the vector or opens a pair
            let hi = if i + 1 == len { l1 - a } else { (l2 - b) + (l1 - a) };
            (0, prev.map_or(hi, |p| p.min(hi)))
        } else {
            let p = prev.unwrap();
            (p.saturating_sub(l1 - a), p.min(l2 - b))
        };
        for x in (lo..=hi).rev() {
            let mut next = prefix.clone();
            next.push(x);
            let (na, nb) = if i % 2 == 1 {
                (a + (prefix[i - 1] - x), b + x)
            } else {
                (a, b)
            };
            stack.push((next, na, nb));
        }
    }
    out
}
