//! Standard and formal exterior square L-factors, and the doubled-shape
//! Schur expansions of the latter.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{product_of_inverse_linear_factors, unipoly_divides, MultiPoly, Scalar, TruncSeries1, UniPoly};
use crate::error::{Error, Result};
use crate::symmetric::{partitions_bounded, schur_eval_padded};

/// One input Satake parameter: a fresh indeterminate or an exact rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Symbol,
    Scalar(Scalar),
}

impl Entry {
    pub fn zero() -> Self {
        Entry::Scalar(Scalar::zero())
    }

    pub fn int(v: i64) -> Self {
        Entry::Scalar(Scalar::from_integer(v.into()))
    }
}

/// Inverse roots `α_1, …, α_n` of the standard L-factor. Entries are
/// polynomials in a shared ring; in practice each is a single indeterminate,
/// a rational constant, or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeParams {
    nvars: usize,
    entries: Vec<MultiPoly>,
}

impl SatakeParams {
    /// `n` independent indeterminates `α1, …, αn`.
    pub fn symbolic(n: usize) -> Self {
        SatakeParams {
            nvars: n,
            entries: (0..n).map(|i| MultiPoly::var(n, i)).collect(),
        }
    }

    /// Symbols are numbered in order of appearance, so `[sym, 3, sym]` uses
    /// the indeterminates `α1, α2`.
    pub fn from_entries(entries: &[Entry]) -> Self {
        let nvars = entries.iter().filter(|e| matches!(e, Entry::Symbol)).count();
        let mut next = 0;
        let entries = entries
            .iter()
            .map(|e| match e {
                Entry::Symbol => {
                    next += 1;
                    MultiPoly::var(nvars, next - 1)
                }
                Entry::Scalar(c) => MultiPoly::constant(nvars, c.clone()),
            })
            .collect();
        SatakeParams { nvars, entries }
    }

    pub fn from_polys(nvars: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if let Some(p) = entries.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::DimensionMismatch {
                left: nvars,
                right: p.nvars(),
            });
        }
        Ok(SatakeParams { nvars, entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn nonzero_entries(&self) -> Vec<MultiPoly> {
        self.entries.iter().filter(|e| !e.is_zero()).cloned().collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn has_zero(&self) -> bool {
        self.nonzero_count() < self.n()
    }

    /// Nonzero entries first (in their original order), zeros trailing.
    pub fn normalized(&self) -> Self {
        let mut entries = self.nonzero_entries();
        entries.resize(self.n(), MultiPoly::zero(self.nvars));
        SatakeParams {
            nvars: self.nvars,
            entries,
        }
    }

    /// The nonzero entries alone, as a parameter list of length `k`.
    pub fn restricted_to_nonzero(&self) -> Self {
        SatakeParams {
            nvars: self.nvars,
            entries: self.nonzero_entries(),
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        SatakeParams {
            nvars: self.nvars,
            entries: perm.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    /// Central-character value `ω = α_1 ⋯ α_n`.
    pub fn omega(&self) -> MultiPoly {
        self.entries.iter().fold(MultiPoly::one(self.nvars), |acc, e| &acc * e)
    }

    pub fn pair_products(&self) -> Vec<MultiPoly> {
        let mut out = Vec::new();
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                out.push(a * b);
            }
        }
        out
    }
}

impl fmt::Display for SatakeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `1 / P(t)` with `t = q^{-s}`, stored through the reciprocal polynomial
/// `P` (constant term 1), lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LFactor {
    nvars: usize,
    reciprocal: Vec<MultiPoly>,
}

impl LFactor {
    pub fn one(nvars: usize) -> Self {
        LFactor {
            nvars,
            reciprocal: vec![MultiPoly::one(nvars)],
        }
    }

    /// `Π (1 - r t)^{-1}`; zero inverse roots contribute nothing.
    pub fn from_inverse_roots(nvars: usize, roots: &[MultiPoly]) -> Self {
        let mut coeffs = vec![MultiPoly::one(nvars)];
        for r in roots.iter().filter(|r| !r.is_zero()) {
            let mut next = coeffs.clone();
            next.push(MultiPoly::zero(nvars));
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = &next[i + 1] - &(c * r);
            }
            coeffs = next;
        }
        Self::from_reciprocal(nvars, coeffs).expect("constant term is 1")
    }

    pub fn from_reciprocal(nvars: usize, mut coeffs: Vec<MultiPoly>) -> Result<Self> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(MultiPoly::is_zero) {
            coeffs.pop();
        }
        if coeffs.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::NotInvertible);
        }
        if let Some(c) = coeffs.iter().find(|c| c.nvars() != nvars) {
            return Err(Error::DimensionMismatch {
                left: nvars,
                right: c.nvars(),
            });
        }
        Ok(LFactor {
            nvars,
            reciprocal: coeffs,
        })
    }

    pub fn from_unipoly(nvars: usize, p: &UniPoly) -> Result<Self> {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| MultiPoly::constant(nvars, c.clone()))
            .collect();
        Self::from_reciprocal(nvars, coeffs)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn reciprocal(&self) -> &[MultiPoly] {
        &self.reciprocal
    }

    pub fn degree(&self) -> usize {
        self.reciprocal.len() - 1
    }

    pub fn is_one(&self) -> bool {
        self.degree() == 0
    }

    /// The reciprocal polynomial as a rational univariate polynomial, when
    /// no indeterminate appears in it.
    pub fn to_unipoly(&self) -> Option<UniPoly> {
        self.reciprocal
            .iter()
            .map(MultiPoly::as_constant)
            .collect::<Option<Vec<_>>>()
            .map(UniPoly::new)
    }

    /// Expansion of `1/P` up to `t^order`.
    pub fn series(&self, order: usize) -> TruncSeries1 {
        TruncSeries1::from_coeffs(self.nvars, order, self.reciprocal.clone())
            .and_then(|s| s.inverse())
            .expect("reciprocal has constant term 1")
    }

    /// `Some(Q)` with `P_other = P_self · Q` when this factor's reciprocal
    /// divides the other's, i.e. when `self` divides `other` as L-factors.
    pub fn divides(&self, other: &LFactor) -> Result<Option<LFactor>> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if let (Some(d), Some(p)) = (self.to_unipoly(), other.to_unipoly()) {
            return Ok(unipoly_divides(&p, &d)?.map(|q| LFactor::from_unipoly(self.nvars, &q).expect("q(0) = 1")));
        }
        let Some(qdeg) = other.degree().checked_sub(self.degree()) else {
            return Ok(None);
        };
        // P_self(0) = 1 is a unit, so the candidate quotient is the power
        // series P_other / P_self cut at degree qdeg; it divides iff the
        // product reproduces P_other exactly.
        let inv = self.series(qdeg);
        let num = TruncSeries1::from_coeffs(self.nvars, qdeg, other.reciprocal.clone())?;
        let quot = num.checked_mul(&inv)?;
        let candidate = LFactor::from_reciprocal(self.nvars, quot.coeffs().to_vec())?;
        let product = poly_mul_t(&self.reciprocal, &candidate.reciprocal);
        Ok((trim(product) == other.reciprocal).then_some(candidate))
    }

    pub fn display_with(&self, names: &[String]) -> String {
        poly_in_t_display(&self.reciprocal, names)
    }
}

impl fmt::Display for LFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&MultiPoly::default_names(self.nvars)))
    }
}

fn poly_mul_t(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let nvars = a[0].nvars();
    let mut out = vec![MultiPoly::zero(nvars); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn trim(mut v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    while v.len() > 1 && v.last().is_some_and(MultiPoly::is_zero) {
        v.pop();
    }
    v
}

/// Renders `Σ c_i t^i` with polynomial coefficients, e.g. `1 - (α1*α2)*t`.
pub fn poly_in_t_display(coeffs: &[MultiPoly], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let body = c.display_with(names);
        let tpow = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        parts.push(match (i, c.num_terms()) {
            (0, _) => body,
            (_, 1) if body == "1" => tpow,
            (_, 1) if body == "-1" => format!("-{tpow}"),
            (_, 1) => format!("{body}*{tpow}"),
            _ => format!("({body})*{tpow}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// `L(s, π)`: reciprocal `Π_i (1 - α_i t)`.
pub fn standard_l(params: &SatakeParams) -> LFactor {
    LFactor::from_inverse_roots(params.nvars(), params.entries())
}

/// `𝓛(s, π, ∧²)`: reciprocal `Π_{i<j} (1 - α_i α_j t)`.
pub fn formal_ext_sq_l(params: &SatakeParams) -> LFactor {
    LFactor::from_inverse_roots(params.nvars(), &params.pair_products())
}

/// Series of `𝓛` computed straight from the pair products.
pub fn formal_ext_sq_series(params: &SatakeParams, order: usize) -> TruncSeries1 {
    product_of_inverse_linear_factors(&params.pair_products(), params.nvars(), order).expect("entries share one ring")
}

/// `Σ_l t^l Σ_{|f| = l} s_{(f1,f1,…,fh,fh[,0])}(α_1, …, α_k)` over the `k`
/// nonzero parameters, with `h = ⌊k/2⌋` parts and a trailing zero for odd
/// `k`.
pub fn ext_sq_expansion(params: &SatakeParams, k: usize, order: usize) -> Result<TruncSeries1> {
    let found = params.nonzero_count();
    if found != k {
        return Err(Error::NonzeroCount { expected: k, found });
    }
    let values = params.restricted_to_nonzero();
    doubled_shape_sum(&values, k / 2, k % 2, order)
}

/// `Σ_l t^l Σ_{|f| = l, ≤ parts} s_{doubled(f) + zeros}(values)`.
pub(crate) fn doubled_shape_sum(
    values: &SatakeParams,
    parts: usize,
    trailing_zeros: usize,
    order: usize,
) -> Result<TruncSeries1> {
    let mut out = TruncSeries1::zero(values.nvars(), order);
    for l in 0..=order {
        let mut acc = MultiPoly::zero(values.nvars());
        for f in partitions_bounded(l as u32, parts) {
            let shape = f.doubled(trailing_zeros).shape();
            acc = &acc + &schur_eval_padded(&shape, values)?;
        }
        *out.coeff_mut(l) = acc;
    }
    Ok(out)
}

/// Result of the rank-`n` doubled-shape expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullExpansion {
    pub series: TruncSeries1,
    /// For even `n` the expansion equals `𝓛` only when some `α_i = 0`;
    /// odd `n` imposes no condition.
    pub hypothesis_met: bool,
}

/// The `n`-variable expansion: for `n = 2m` shapes
/// `(f1,f1,…,f_{m-1},f_{m-1},0,0)`, for `n = 2m+1` shapes
/// `(f1,f1,…,fm,fm,0)`, evaluated at all `n` parameters.
pub fn formal_l_via_full_expansion(params: &SatakeParams, order: usize) -> Result<FullExpansion> {
    let n = params.n();
    let (parts, zeros, hypothesis_met) = if n.is_multiple_of(2) {
        ((n / 2).saturating_sub(1), 2.min(n), params.has_zero())
    } else {
        (n / 2, 1, true)
    };
    let series = doubled_shape_sum(&params.normalized(), parts, zeros, order)?;
    Ok(FullExpansion { series, hypothesis_met })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> SatakeParams {
        SatakeParams::symbolic(n)
    }

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn standard_l_definition() {
        let p = sym(2);
        let l = standard_l(&p);
        let expect =
            LFactor::from_reciprocal(2, vec![MultiPoly::one(2), -&(&x(2, 0) + &x(2, 1)), &x(2, 0) * &x(2, 1)]).unwrap();
        assert_eq!(l, expect);

        let with_zero = SatakeParams::from_entries(&[Entry::Symbol, Entry::zero()]);
        assert_eq!(standard_l(&with_zero).reciprocal(), &[MultiPoly::one(1), -&x(1, 0)]);

        let zeros = SatakeParams::from_entries(&[Entry::zero(), Entry::zero()]);
        assert!(standard_l(&zeros).is_one());
    }

    #[test]
    fn formal_ext_sq_small() {
        let l = formal_ext_sq_l(&sym(2));
        assert_eq!(l.reciprocal(), &[MultiPoly::one(2), -&(&x(2, 0) * &x(2, 1))]);
        let a0 = SatakeParams::from_entries(&[Entry::Symbol, Entry::zero()]);
        assert!(formal_ext_sq_l(&a0).is_one());
        assert_eq!(formal_ext_sq_l(&a0).to_string(), "1");
        assert_eq!(l.to_string(), "1 - α1*α2*t");
    }

    #[test]
    fn degree_bound_and_ordering_invariance() {
        let p = SatakeParams::from_entries(&[Entry::Symbol, Entry::zero(), Entry::Symbol, Entry::Symbol]);
        let l = formal_ext_sq_l(&p);
        assert!(l.degree() <= 3);
        let perm = [3, 1, 0, 2];
        assert_eq!(formal_ext_sq_l(&p.permuted(&perm)), l);
        assert_eq!(standard_l(&p.permuted(&perm)), standard_l(&p));
    }

    #[test]
    fn expansion_two_variables_is_geometric() {
        let p = sym(2);
        let s = ext_sq_expansion(&p, 2, 3).unwrap();
        assert_eq!(s, TruncSeries1::geometric(&(&x(2, 0) * &x(2, 1)), 3));
    }

    #[test]
    fn expansion_three_variables_matches_series() {
        let p = sym(3);
        assert_eq!(ext_sq_expansion(&p, 3, 2).unwrap(), formal_ext_sq_l(&p).series(2));
    }

    #[test]
    fn expansion_rejects_wrong_k() {
        assert_eq!(
            ext_sq_expansion(&sym(3), 2, 2),
            Err(Error::NonzeroCount { expected: 2, found: 3 })
        );
    }

    #[test]
    fn expansion_constant_term_is_one() {
        for k in 0..6 {
            let s = ext_sq_expansion(&sym(k), k, 0).unwrap();
            assert!(s.is_one());
        }
    }

    #[test]
    fn full_expansion_cases() {
        let odd = formal_l_via_full_expansion(&sym(3), 4).unwrap();
        assert!(odd.hypothesis_met);
        assert_eq!(odd.series, formal_ext_sq_series(&sym(3), 4));

        let p = SatakeParams::from_entries(&[Entry::Symbol, Entry::Symbol, Entry::Symbol, Entry::zero()]);
        let even = formal_l_via_full_expansion(&p, 4).unwrap();
        assert!(even.hypothesis_met);
        assert_eq!(even.series, formal_ext_sq_series(&p, 4));

        let two = SatakeParams::from_entries(&[Entry::Symbol, Entry::zero()]);
        let e = formal_l_via_full_expansion(&two, 5).unwrap();
        assert!(e.series.is_one());

        let flagged = formal_l_via_full_expansion(&sym(4), 3).unwrap();
        assert!(!flagged.hypothesis_met);
    }

    #[test]
    fn series_of_factor_matches_pair_product_series() {
        let p = sym(4);
        assert_eq!(formal_ext_sq_l(&p).series(5), formal_ext_sq_series(&p, 5));
    }

    #[test]
    fn lfactor_divisibility_symbolic() {
        let n = 2;
        let a = LFactor::from_inverse_roots(n, &[x(n, 0)]);
        let ab = LFactor::from_inverse_roots(n, &[x(n, 0), x(n, 1)]);
        let q = a.divides(&ab).unwrap().unwrap();
        assert_eq!(q, LFactor::from_inverse_roots(n, &[x(n, 1)]));
        assert_eq!(ab.divides(&a).unwrap(), None);
        let b = LFactor::from_inverse_roots(n, &[x(n, 1)]);
        assert_eq!(
            b.divides(&LFactor::from_inverse_roots(n, &[x(n, 0), x(n, 0)])).unwrap(),
            None
        );
    }

    #[test]
    fn display_of_polynomial_coefficients() {
        let p = sym(3);
        let l = formal_ext_sq_l(&p);
        assert!(l.to_string().starts_with("1 + (-α1*α2 - α1*α3 - α2*α3)*t + "));
    }
}
