//! Jacquet–Shalika and Bump–Friedberg zeta integrals at the newform, as the
//! torus sums they collapse to.
//!
//! With the mirahoric-fixed newform `W` normalized by `W(1) = 1` and the
//! Schwartz function at the conductor, each integral reduces to a sum over
//! lattice points of a torus. A lattice point is recorded by the valuations
//! `g` of its diagonal entries, and `W(diag(ϖ^g)) = δ^{1/2} · s_g(α)` when
//! `g` is weakly decreasing with `g_n ≥ 0`, zero otherwise. Haar measures
//! give each lattice point mass one.
//!
//! Powers of `q^{1/2}` are carried as integer half-exponents.

use crate::algebra::{MultiPoly, TruncSeries1, TruncSeries2};
use crate::error::{Error, Result};
use crate::lfactors::{formal_ext_sq_l, standard_l, SatakeParams};
use crate::symmetric::{dominant_vectors, schur_eval_padded, Partition};

/// Valuations `g_i = ν(t_i)` of a diagonal torus element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusExponents(pub Vec<i64>);

impl TorusExponents {
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

/// `q^{half_exponent / 2} · coefficient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerValue {
    pub half_exponent: i64,
    pub coefficient: MultiPoly,
}

impl WhittakerValue {
    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }
}

/// Exponent `e` with `δ_{B_n}(diag(ϖ^g))^{1/2} = q^{e/2}`, i.e.
/// `e = -Σ_i (n - 2i + 1) g_i` for `i = 1..n`.
pub fn delta_half_exponent(g: &[i64]) -> i64 {
    let n = g.len() as i64;
    -g.iter()
        .enumerate()
        .map(|(i, &gi)| (n - 2 * (i as i64 + 1) + 1) * gi)
        .sum::<i64>()
}

/// `(f1, f1, f2, f2, …, fk, fk)` followed by `trailing` zeros.
pub fn doubled_torus(a: &[i64], trailing: usize) -> Vec<i64> {
    a.iter()
        .flat_map(|&x| [x, x])
        .chain(std::iter::repeat_n(0, trailing))
        .collect()
}

/// Newform Whittaker value at `diag(ϖ^{g_1}, …, ϖ^{g_n})`.
pub fn whittaker_value(g: &TorusExponents, params: &SatakeParams) -> Result<WhittakerValue> {
    let n = params.n();
    if g.0.len() != n {
        return Err(Error::Rank(format!(
            "torus element of length {} for rank {n}",
            g.0.len()
        )));
    }
    if g.0.last().is_some_and(|&x| x < 0) {
        return Err(Error::UnsupportedTorus(g.0.clone()));
    }
    if !g.is_dominant() {
        return Ok(WhittakerValue {
            half_exponent: 0,
            coefficient: MultiPoly::zero(params.nvars()),
        });
    }
    let shape = Partition::new(g.0.iter().map(|&x| x as u32).collect())?;
    Ok(WhittakerValue {
        half_exponent: delta_half_exponent(&g.0),
        coefficient: schur_eval_padded(&shape, params)?,
    })
}

/// `W(b) · δ_{B_n}(b)^{-1/2}`. The modulus factors cancel exactly; a
/// nonzero leftover power of `q` would mean the reduction is wrong.
fn normalized_whittaker(g: Vec<i64>, params: &SatakeParams) -> Result<MultiPoly> {
    let w = whittaker_value(&TorusExponents(g.clone()), params)?;
    if w.is_zero() {
        return Ok(w.coefficient);
    }
    let leftover = w.half_exponent - delta_half_exponent(&g);
    assert_eq!(leftover, 0, "modulus characters must cancel at {g:?}");
    Ok(w.coefficient)
}

/// All nonnegative integer vectors of length `len` summing to `total`.
fn compositions(total: u32, len: usize) -> Vec<Vec<i64>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut stack = vec![(Vec::with_capacity(len), total)];
    while let Some((prefix, rest)) = stack.pop() {
        if prefix.len() + 1 == len {
            let mut v = prefix;
            v.push(rest as i64);
            out.push(v);
            continue;
        }
        for x in (0..=rest).rev() {
            let mut v = prefix.clone();
            v.push(x as i64);
            stack.push((v, rest - x));
        }
    }
    out
}

/// Jacquet–Shalika sum for `n = 2m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsEven {
    pub series: TruncSeries1,
    /// Some `α_i = 0` (positive conductor); only then is the sum claimed to
    /// equal `𝓛`.
    pub hypothesis_met: bool,
}

/// Even Jacquet–Shalika integral over `a ∈ T_{m,1}`:
/// `b = diag(a1, a1, …, a_{m-1}, a_{m-1}, 1, 1)` and the term
/// `W(b) δ_{B_n}(b)^{-1/2} |det a|^s` lands on `t^{Σ f}`.
pub fn js_even_series(params: &SatakeParams, order: usize) -> Result<JsEven> {
    let n = params.n();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Rank(format!("even Jacquet-Shalika needs even n ≥ 2, got {n}")));
    }
    let free = n / 2 - 1;
    let mut series = TruncSeries1::zero(params.nvars(), order);
    for l in 0..=order {
        let mut acc = MultiPoly::zero(params.nvars());
        for a in compositions(l as u32, free) {
            acc = &acc + &normalized_whittaker(doubled_torus(&a, 2), params)?;
        }
        *series.coeff_mut(l) = acc;
    }
    Ok(JsEven {
        series,
        hypothesis_met: params.has_zero(),
    })
}

/// Odd Jacquet–Shalika integral over `a ∈ T_m`, `n = 2m + 1`:
/// `b = diag(a1, a1, …, am, am, 1)`.
pub fn js_odd_series(params: &SatakeParams, order: usize) -> Result<TruncSeries1> {
    let n = params.n();
    if n % 2 != 1 {
        return Err(Error::Rank(format!("odd Jacquet-Shalika needs odd n, got {n}")));
    }
    let free = n / 2;
    let mut series = TruncSeries1::zero(params.nvars(), order);
    for l in 0..=order {
        let mut acc = MultiPoly::zero(params.nvars());
        for a in compositions(l as u32, free) {
            acc = &acc + &normalized_whittaker(doubled_torus(&a, 1), params)?;
        }
        *series.coeff_mut(l) = acc;
    }
    Ok(series)
}

/// Torus part of the embedding `J: G_m × G_{m'} → G_n`, `m = ⌈n/2⌉`,
/// `m' = ⌊n/2⌋`. For even `n` the `G_m` factor fills the even diagonal
/// slots (1-based) and `G_{m'}` the odd ones; for odd `n` the roles swap.
pub fn embed_torus(a: &[i64], a_prime: &[i64], n: usize) -> Vec<i64> {
    let (m, mp) = (n.div_ceil(2), n / 2);
    assert_eq!(a.len(), m);
    assert_eq!(a_prime.len(), mp);
    let (odd_slots, even_slots) = if n.is_multiple_of(2) {
        (a_prime, a)
    } else {
        (a, a_prime)
    };
    (0..n)
        .map(|k| {
            if k % 2 == 0 {
                odd_slots[k / 2]
            } else {
                even_slots[k / 2]
            }
        })
        .collect()
}

/// Inverse of [`embed_torus`]: `(a, a')`.
pub fn split_torus(g: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let odd: Vec<i64> = g.iter().step_by(2).copied().collect();
    let even: Vec<i64> = g.iter().skip(1).step_by(2).copied().collect();
    if g.len().is_multiple_of(2) {
        (even, odd)
    } else {
        (odd, even)
    }
}

/// `(t1, t2)` exponents of the Bump–Friedberg integrand at `J(a, a')`.
///
/// Even `n`: `|det a|^{1/2 + s2 - s1} |det a'|^{s1 - 1/2}`, whose half powers
/// are absorbed with the modulus characters. Odd `n`:
/// `|det a|^{s1} |det a'|^{s2 - s1}`. Both give
/// `t1^{ν(det a_odd) - ν(det a_even)} t2^{ν(det a_even)}`, where `a_odd`
/// collects odd diagonal slots of `J(a, a')`.
fn bf_exponents(a: &[i64], a_prime: &[i64], n: usize) -> (i64, i64) {
    let (da, dap) = (a.iter().sum::<i64>(), a_prime.iter().sum::<i64>());
    if n.is_multiple_of(2) {
        // q^{-s2 ν(det a) - s1 (ν(det a') - ν(det a))}
        (dap - da, da)
    } else {
        // q^{-s1 ν(det a) - (s2 - s1) ν(det a')}
        (da - dap, dap)
    }
}

/// Bump–Friedberg integral at the newform, truncated to `window`:
/// `Σ_f s_{(f, 0)}(α) t1^{f1 - f2 + f3 - …} t2^{f2 + f4 + …}` over weakly
/// decreasing `f ∈ Z_{≥0}^{n-1}`.
pub fn bf_series(params: &SatakeParams, window: (usize, usize)) -> Result<TruncSeries2> {
    let n = params.n();
    if n < 2 {
        return Err(Error::Rank(format!("Bump-Friedberg needs n ≥ 2, got {n}")));
    }
    let mut out = TruncSeries2::zero(params.nvars(), window);
    for f in dominant_vectors(window, n - 1) {
        let mut g: Vec<i64> = f.iter().map(|&x| x as i64).collect();
        g.push(0);
        let (a, a_prime) = split_torus(&g);
        let (e1, e2) = bf_exponents(&a, &a_prime, n);
        let c = normalized_whittaker(g, params)?;
        if !c.is_zero() {
            out.add_to(e1 as usize, e2 as usize, &c);
        }
    }
    Ok(out)
}

/// `L(t1, π) · 𝓛(t2, π, ∧²)` on the window.
pub fn bf_candidate(params: &SatakeParams, window: (usize, usize)) -> TruncSeries2 {
    let l1 = TruncSeries2::from_t1(&standard_l(params).series(window.0), window.1);
    let l2 = TruncSeries2::from_t2(window.0, &formal_ext_sq_l(params).series(window.1));
    l1.checked_mul(&l2).expect("same window")
}

/// `(1 - ω t2^m) · L(t1) · 𝓛(t2)` for `n = 2m`, `ω = α_1 ⋯ α_n`.
pub fn bf_even_closed_form(params: &SatakeParams, window: (usize, usize)) -> Result<TruncSeries2> {
    let n = params.n();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Rank(format!("closed form needs even n ≥ 2, got {n}")));
    }
    let mut factor = TruncSeries2::one(params.nvars(), window);
    factor.add_to(0, n / 2, &-&params.omega());
    factor.checked_mul(&bf_candidate(params, window))
}

/// Odd Bump–Friedberg sum against `L(t1)·𝓛(t2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfOddProbe {
    pub bf: TruncSeries2,
    pub candidate: TruncSeries2,
    /// `bf / candidate` on the window.
    pub correction: TruncSeries2,
    /// Equality is claimed only when some `α_i = 0`.
    pub asserted: bool,
    /// `Some(correction ≡ 1)` when asserted.
    pub holds: Option<bool>,
}

pub fn bf_odd_correction_probe(params: &SatakeParams, window: (usize, usize)) -> Result<BfOddProbe> {
    let n = params.n();
    if n % 2 != 1 {
        return Err(Error::Rank(format!("odd probe needs odd n, got {n}")));
    }
    let bf = bf_series(params, window)?;
    let candidate = bf_candidate(params, window);
    let correction = bf.checked_mul(&candidate.inverse()?)?;
    let asserted = params.has_zero();
    let holds = asserted.then(|| correction.is_one());
    Ok(BfOddProbe {
        bf,
        candidate,
        correction,
        asserted,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfactors::{formal_ext_sq_series, Entry};

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn params(entries: &[Entry]) -> SatakeParams {
        SatakeParams::from_entries(entries)
    }

    use Entry::Symbol as S;

    #[test]
    fn delta_exponents() {
        assert_eq!(delta_half_exponent(&[0, 0, 0]), 0);
        assert_eq!(delta_half_exponent(&[1, 0]), -1);
        // n = 3: weights 2, 0, -2
        assert_eq!(delta_half_exponent(&[2, 1, 0]), -4);
    }

    #[test]
    fn delta_doubling_identity() {
        // δ_{B_m}(a)^2 = δ_{B_{2m}}(b)^{1/2}: as q-exponents, 2·E_m(a) = e(b)/2
        // where E_m is the full δ exponent (= delta_half_exponent(a)).
        for a in [vec![3, -1, 2], vec![0, 0], vec![5], vec![1, 4, -2, 7]] {
            let b = doubled_torus(&a, 0);
            assert_eq!(2 * delta_half_exponent(&a) * 2, delta_half_exponent(&b));
        }
    }

    #[test]
    fn whittaker_normalization_and_support() {
        let p = SatakeParams::symbolic(2);
        let w = whittaker_value(&TorusExponents(vec![0, 0]), &p).unwrap();
        assert_eq!(w.half_exponent, 0);
        assert!(w.coefficient.is_one());

        let w = whittaker_value(&TorusExponents(vec![0, 1]), &p).unwrap();
        assert!(w.is_zero());

        let w = whittaker_value(&TorusExponents(vec![1, 0]), &p).unwrap();
        assert_eq!(w.half_exponent, -1);
        assert_eq!(w.coefficient, &x(2, 0) + &x(2, 1));

        assert_eq!(
            whittaker_value(&TorusExponents(vec![1, -1]), &p),
            Err(Error::UnsupportedTorus(vec![1, -1]))
        );
    }

    #[test]
    fn js_even_small_rank() {
        let p = params(&[S, Entry::zero()]);
        let js = js_even_series(&p, 4).unwrap();
        assert!(js.series.is_one());
        assert!(js.hypothesis_met);
    }

    #[test]
    fn js_even_rank_four_with_zero() {
        let p = params(&[S, S, S, Entry::zero()]);
        let js = js_even_series(&p, 5).unwrap();
        assert_eq!(js.series, formal_ext_sq_series(&p, 5));
    }

    #[test]
    fn js_even_needs_conductor_hypothesis() {
        let p = SatakeParams::symbolic(4);
        let js = js_even_series(&p, 3).unwrap();
        assert!(!js.hypothesis_met);
        let diff = js.series.first_difference(&formal_ext_sq_series(&p, 3)).unwrap();
        // s_(1,1,1,1) is missing from the t^2 coefficient.
        assert_eq!(diff, Some(2));
    }

    #[test]
    fn js_odd_cases() {
        let p = params(&[S, S, Entry::zero()]);
        let ab = &x(2, 0) * &x(2, 1);
        assert_eq!(js_odd_series(&p, 4).unwrap(), TruncSeries1::geometric(&ab, 4));

        let p = SatakeParams::symbolic(3);
        assert_eq!(js_odd_series(&p, 4).unwrap(), formal_ext_sq_series(&p, 4));
        assert!(js_odd_series(&p, 0).unwrap().is_one());
    }

    #[test]
    fn parity_errors() {
        assert!(matches!(
            js_odd_series(&SatakeParams::symbolic(2), 2),
            Err(Error::Rank(_))
        ));
        assert!(matches!(
            js_even_series(&SatakeParams::symbolic(3), 2),
            Err(Error::Rank(_))
        ));
        assert!(matches!(
            bf_odd_correction_probe(&SatakeParams::symbolic(4), (1, 1)),
            Err(Error::Rank(_))
        ));
    }

    #[test]
    fn embedding_round_trip() {
        let g = embed_torus(&[1, 2], &[7, 8], 4);
        assert_eq!(g, vec![7, 1, 8, 2]);
        assert_eq!(split_torus(&g), (vec![1, 2], vec![7, 8]));
        let g = embed_torus(&[1, 2, 3], &[7, 8], 5);
        assert_eq!(g, vec![1, 7, 2, 8, 3]);
        assert_eq!(split_torus(&g), (vec![1, 2, 3], vec![7, 8]));
    }

    #[test]
    fn bf_constant_term() {
        let p = SatakeParams::symbolic(4);
        let z = bf_series(&p, (0, 0)).unwrap();
        assert!(z.is_one());
    }

    #[test]
    fn bf_even_closed_form_symbolic() {
        let p = SatakeParams::symbolic(4);
        let w = (3, 3);
        assert_eq!(bf_series(&p, w).unwrap(), bf_even_closed_form(&p, w).unwrap());
    }

    #[test]
    fn bf_even_positive_conductor() {
        let p = params(&[S, S, S, Entry::zero()]);
        let w = (3, 3);
        assert_eq!(bf_series(&p, w).unwrap(), bf_candidate(&p, w));
    }

    #[test]
    fn bf_odd_probe_with_zero() {
        let p = params(&[S, S, Entry::zero()]);
        let probe = bf_odd_correction_probe(&p, (4, 4)).unwrap();
        assert!(probe.asserted);
        assert_eq!(probe.holds, Some(true));
    }

    #[test]
    fn bf_odd_probe_symbolic_reports_only() {
        let probe = bf_odd_correction_probe(&SatakeParams::symbolic(3), (2, 2)).unwrap();
        assert!(!probe.asserted);
        assert_eq!(probe.holds, None);
        assert!(probe.correction.coeff(0, 0).is_one());
        let trivial = bf_odd_correction_probe(&SatakeParams::symbolic(3), (0, 0)).unwrap();
        assert!(trivial.correction.is_one());
    }
}
