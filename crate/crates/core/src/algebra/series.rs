use num_traits::Zero;

use super::multipoly::MultiPoly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Power series in `t` with polynomial coefficients, known up to and
/// including `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries1 {
    nvars: usize,
    order: usize,
    coeffs: Vec<MultiPoly>,
}

impl TruncSeries1 {
    pub fn zero(nvars: usize, order: usize) -> Self {
        TruncSeries1 {
            nvars,
            order,
            coeffs: vec![MultiPoly::zero(nvars); order + 1],
        }
    }

    pub fn one(nvars: usize, order: usize) -> Self {
        let mut s = Self::zero(nvars, order);
        s.coeffs[0] = MultiPoly::one(nvars);
        s
    }

    /// Pads with zeros or drops terms beyond `order`.
    pub fn from_coeffs(nvars: usize, order: usize, coeffs: Vec<MultiPoly>) -> Result<Self> {
        let mut s = Self::zero(nvars, order);
        for (l, c) in coeffs.into_iter().enumerate() {
            if c.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    left: nvars,
                    right: c.nvars(),
                });
            }
            if l <= order {
                s.coeffs[l] = c;
            }
        }
        Ok(s)
    }

    /// `1 - m t`.
    pub fn linear(m: &MultiPoly, order: usize) -> Self {
        let n = m.nvars();
        Self::from_coeffs(n, order, vec![MultiPoly::one(n), -m]).expect("same ring")
    }

    /// `(1 - m t)^{-1} = Σ m^l t^l`.
    pub fn geometric(m: &MultiPoly, order: usize) -> Self {
        let mut s = Self::one(m.nvars(), order);
        for l in 1..=order {
            s.coeffs[l] = &s.coeffs[l - 1] * m;
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, l: usize) -> &MultiPoly {
        &self.coeffs[l]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub(crate) fn coeff_mut(&mut self, l: usize) -> &mut MultiPoly {
        &mut self.coeffs[l]
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(MultiPoly::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: (self.order, 0),
                right: (other.order, 0),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncSeries1 { coeffs, ..*self })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncSeries1 { coeffs, ..*self })
    }

    /// Cauchy product truncated at the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars, self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse. The constant coefficient must be a nonzero
    /// rational (a unit of the coefficient ring).
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].as_constant().ok_or(Error::NotInvertible)?;
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = Scalar::from_integer(1.into()) / c0;
        let mut out = Self::zero(self.nvars, self.order);
        out.coeffs[0] = MultiPoly::constant(self.nvars, inv0.clone());
        for l in 1..=self.order {
            let mut acc = MultiPoly::zero(self.nvars);
            for i in 1..=l {
                if !self.coeffs[i].is_zero() {
                    acc = &acc + &(&self.coeffs[i] * &out.coeffs[l - i]);
                }
            }
            out.coeffs[l] = acc.scale(&-inv0.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, p: &MultiPoly) -> Self {
        TruncSeries1 {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
            ..*self
        }
    }

    /// Index of the first coefficient where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<usize>> {
        self.check(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b))
    }

    /// Same coefficients, lower truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TruncSeries1 {
            nvars: self.nvars,
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }
}

/// `Π_k (1 - m_k t)^{-1}` truncated at `order`. Zero factors contribute 1.
pub fn product_of_inverse_linear_factors(ms: &[MultiPoly], nvars: usize, order: usize) -> Result<TruncSeries1> {
    let mut acc = TruncSeries1::one(nvars, order);
    for m in ms {
        if m.nvars() != nvars {
            return Err(Error::DimensionMismatch {
                left: nvars,
                right: m.nvars(),
            });
        }
        if m.is_zero() {
            continue;
        }
        // Multiplying by the geometric series Σ m^l t^l is the running
        // recurrence b_l = a_l + m b_{l-1}.
        for l in 1..=order {
            let shifted = &acc.coeffs[l - 1] * m;
            acc.coeffs[l] = &acc.coeffs[l] + &shifted;
        }
    }
    Ok(acc)
}

/// Power series in `t1, t2` known on the rectangle `[0, L1] × [0, L2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries2 {
    nvars: usize,
    orders: (usize, usize),
    coeffs: Vec<Vec<MultiPoly>>,
}

impl TruncSeries2 {
    pub fn zero(nvars: usize, orders: (usize, usize)) -> Self {
        TruncSeries2 {
            nvars,
            orders,
            coeffs: vec![vec![MultiPoly::zero(nvars); orders.1 + 1]; orders.0 + 1],
        }
    }

    pub fn one(nvars: usize, orders: (usize, usize)) -> Self {
        let mut s = Self::zero(nvars, orders);
        s.coeffs[0][0] = MultiPoly::one(nvars);
        s
    }

    /// A series in `t1` alone.
    pub fn from_t1(s: &TruncSeries1, order2: usize) -> Self {
        let mut out = Self::zero(s.nvars, (s.order, order2));
        for (a, c) in s.coeffs.iter().enumerate() {
            out.coeffs[a][0] = c.clone();
        }
        out
    }

    /// A series in `t2` alone.
    pub fn from_t2(order1: usize, s: &TruncSeries1) -> Self {
        let mut out = Self::zero(s.nvars, (order1, s.order));
        out.coeffs[0] = s.coeffs.clone();
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn orders(&self) -> (usize, usize) {
        self.orders
    }

    pub fn coeff(&self, a: usize, b: usize) -> &MultiPoly {
        &self.coeffs[a][b]
    }

    pub fn rows(&self) -> &[Vec<MultiPoly>] {
        &self.coeffs
    }

    /// Adds `p` to the coefficient of `t1^a t2^b`; out-of-window terms are
    /// dropped.
    pub fn add_to(&mut self, a: usize, b: usize, p: &MultiPoly) {
        if a <= self.orders.0 && b <= self.orders.1 {
            self.coeffs[a][b] = &self.coeffs[a][b] + p;
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(a, row)| {
            row.iter()
                .enumerate()
                .all(|(b, c)| if a == 0 && b == 0 { c.is_one() } else { c.is_zero() })
        })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.orders != other.orders {
            return Err(Error::OrderMismatch {
                left: self.orders,
                right: other.orders,
            });
        }
        Ok(())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| a - b).collect())
            .collect();
        Ok(TruncSeries2 { coeffs, ..*self })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (l1, l2) = self.orders;
        let mut out = Self::zero(self.nvars, self.orders);
        for a1 in 0..=l1 {
            for b1 in 0..=l2 {
                let x = &self.coeffs[a1][b1];
                if x.is_zero() {
                    continue;
                }
                for a2 in 0..=l1 - a1 {
                    for b2 in 0..=l2 - b1 {
                        let y = &other.coeffs[a2][b2];
                        if !y.is_zero() {
                            out.coeffs[a1 + a2][b1 + b2] = &out.coeffs[a1 + a2][b1 + b2] + &(x * y);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse when the constant coefficient is a nonzero rational.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0][0].as_constant().ok_or(Error::NotInvertible)?;
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let neg_inv0 = -(Scalar::from_integer(1.into()) / c0.clone());
        let (l1, l2) = self.orders;
        let mut out = Self::zero(self.nvars, self.orders);
        out.coeffs[0][0] = MultiPoly::constant(self.nvars, Scalar::from_integer(1.into()) / c0);
        // Graded by a+b so every needed coefficient is already known.
        for total in 1..=(l1 + l2) {
            for a in total.saturating_sub(l2)..=total.min(l1) {
                let b = total - a;
                let mut acc = MultiPoly::zero(self.nvars);
                for i in 0..=a {
                    for j in 0..=b {
                        if (i, j) == (0, 0) || self.coeffs[i][j].is_zero() {
                            continue;
                        }
                        acc = &acc + &(&self.coeffs[i][j] * &out.coeffs[a - i][b - j]);
                    }
                }
                out.coeffs[a][b] = acc.scale(&neg_inv0);
            }
        }
        Ok(out)
    }

    pub fn first_difference(&self, other: &Self) -> Result<Option<(usize, usize)>> {
        self.check(other)?;
        for (a, (ra, rb)) in self.coeffs.iter().zip(&other.coeffs).enumerate() {
            if let Some(b) = ra.iter().zip(rb).position(|(x, y)| x != y) {
                return Ok(Some((a, b)));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::int;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn naive_coeff(a: &TruncSeries1, b: &TruncSeries1, l: usize) -> MultiPoly {
        let mut acc = MultiPoly::zero(a.nvars());
        for i in 0..=l {
            acc = &acc + &(a.coeff(i) * b.coeff(l - i));
        }
        acc
    }

    #[test]
    fn identity_and_geometric() {
        let n = 1;
        let a = TruncSeries1::from_coeffs(n, 4, vec![x(n, 0), MultiPoly::one(n), x(n, 0)]).unwrap();
        assert_eq!(a.checked_mul(&TruncSeries1::one(n, 4)).unwrap(), a);

        let ones = TruncSeries1::geometric(&MultiPoly::one(n), 5);
        let one_minus_t = TruncSeries1::linear(&MultiPoly::one(n), 5);
        assert!(ones.checked_mul(&one_minus_t).unwrap().is_one());
    }

    #[test]
    fn inverse_of_linear_is_geometric() {
        let m = x(1, 0);
        let inv = TruncSeries1::linear(&m, 5).inverse().unwrap();
        assert_eq!(inv, TruncSeries1::geometric(&m, 5));
        assert!(TruncSeries1::one(1, 3).inverse().unwrap().is_one());
    }

    #[test]
    fn non_unit_constant_rejected() {
        let s = TruncSeries1::from_coeffs(1, 2, vec![x(1, 0)]).unwrap();
        assert_eq!(s.inverse(), Err(Error::NotInvertible));
        assert_eq!(TruncSeries1::zero(1, 2).inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = TruncSeries1::one(1, 2);
        let b = TruncSeries1::one(1, 3);
        assert!(matches!(a.checked_mul(&b), Err(Error::OrderMismatch { .. })));
        let c = TruncSeries1::one(2, 2);
        assert!(matches!(a.checked_mul(&c), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn inverse_linear_factors_complete_homogeneous() {
        let n = 2;
        let s = product_of_inverse_linear_factors(&[x(n, 0), x(n, 1)], n, 2).unwrap();
        assert!(s.coeff(0).is_one());
        assert_eq!(s.coeff(1), &(&x(n, 0) + &x(n, 1)));
        let h2 = MultiPoly::from_terms(n, [(vec![2, 0], int(1)), (vec![1, 1], int(1)), (vec![0, 2], int(1))]);
        assert_eq!(s.coeff(2), &h2);
        let z = product_of_inverse_linear_factors(&[MultiPoly::zero(n)], n, 7).unwrap();
        assert!(z.is_one());
    }

    #[test]
    fn two_variable_inverse_round_trip() {
        let n = 2;
        let mut s = TruncSeries2::one(n, (3, 2));
        s.add_to(1, 0, &x(n, 0));
        s.add_to(0, 1, &x(n, 1));
        s.add_to(1, 1, &MultiPoly::constant(n, int(3)));
        let inv = s.inverse().unwrap();
        assert!(s.checked_mul(&inv).unwrap().is_one());
    }

    fn arb_series(order: usize) -> impl Strategy<Value = TruncSeries1> {
        prop::collection::vec(
            prop::collection::vec((prop::collection::vec(0u32..3, 2), -3i64..4), 0..3),
            order + 1,
        )
        .prop_map(move |cs| {
            let cs = cs
                .into_iter()
                .map(|ts| MultiPoly::from_terms(2, ts.into_iter().map(|(e, c)| (e, int(c)))))
                .collect();
            TruncSeries1::from_coeffs(2, order, cs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn mul_matches_naive_convolution(a in arb_series(4), b in arb_series(4)) {
            let p = a.checked_mul(&b).unwrap();
            for l in 0..=4 {
                prop_assert_eq!(p.coeff(l), &naive_coeff(&a, &b, l));
            }
        }

        #[test]
        fn inverse_round_trip(a in arb_series(4)) {
            let mut a = a;
            *a.coeff_mut(0) = MultiPoly::one(2);
            let inv = a.inverse().unwrap();
            prop_assert!(a.checked_mul(&inv).unwrap().is_one());
        }

        #[test]
        fn product_matches_iterated_series_mul(
            ms in prop::collection::vec((prop::collection::vec(0u32..3, 2), -2i64..3), 0..4)
        ) {
            let ms: Vec<MultiPoly> = ms
                .into_iter()
                .map(|(e, c)| MultiPoly::from_terms(2, [(e, int(c))]))
                .collect();
            let fast = product_of_inverse_linear_factors(&ms, 2, 5).unwrap();
            let mut slow = TruncSeries1::one(2, 5);
            for m in &ms {
                slow = slow.checked_mul(&TruncSeries1::linear(m, 5).inverse().unwrap()).unwrap();
            }
            prop_assert_eq!(fast, slow);
        }
    }
}
