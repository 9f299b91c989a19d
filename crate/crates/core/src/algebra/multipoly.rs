use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Exponent vector of a monomial. Ordered graded-lexicographically: total
/// degree first, then the exponent of the first variable, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients in a fixed number of
/// indeterminates. No zero coefficient is ever stored, so structural equality
/// is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    /// The indeterminate `x_{index}` (zero-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable {index} out of range for {nvars}");
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Self::monomial(nvars, Monomial(exps), Scalar::one())
    }

    pub fn monomial(nvars: usize, mono: Monomial, c: Scalar) -> Self {
        assert_eq!(mono.0.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars);
            p.add_term(Monomial(exps), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&vec![0; self.nvars])
    }

    /// `Some(c)` when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some((monomial, coefficient))` for a single nonzero term.
    pub fn as_term(&self) -> Option<(&Monomial, &Scalar)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().unwrap())
    }

    /// Highest term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    fn add_term(&mut self, mono: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Exact product. Fails when the operands live in different rings.
    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if let Some(c) = self.as_constant() {
            return Ok(other.scale(&c));
        }
        if let Some(c) = other.as_constant() {
            return Ok(self.scale(&c));
        }
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by a monomial term `c·x^exps`.
    pub fn mul_term(&self, exps: &Monomial, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.mul(exps), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `values[i]` for `x_i`. All values must share one ring,
    /// which becomes the ring of the result.
    pub fn substitute(&self, values: &[MultiPoly], target_nvars: usize) -> Result<MultiPoly> {
        if values.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| v.nvars != target_nvars) {
            return Err(Error::DimensionMismatch {
                left: target_nvars,
                right: v.nvars,
            });
        }
        // Monomial values map terms to terms; this covers every Satake
        // evaluation (symbols and constants).
        let as_terms: Option<Vec<(Monomial, Scalar)>> = values
            .iter()
            .map(|v| {
                if v.is_zero() {
                    Some((Monomial::one(target_nvars), Scalar::zero()))
                } else {
                    v.as_term().map(|(m, c)| (m.clone(), c.clone()))
                }
            })
            .collect();
        if let Some(as_terms) = as_terms {
            let mut out = Self::zero(target_nvars);
            for (mono, coeff) in &self.terms {
                let mut exps = vec![0u32; target_nvars];
                let mut c = coeff.clone();
                for (e, (vm, vc)) in mono.0.iter().zip(&as_terms) {
                    if *e == 0 {
                        continue;
                    }
                    for (acc, x) in exps.iter_mut().zip(&vm.0) {
                        *acc += x * e;
                    }
                    c *= num_traits::pow(vc.clone(), *e as usize);
                }
                out.add_term(Monomial(exps), c);
            }
            return Ok(out);
        }
        let mut powers: Vec<Vec<MultiPoly>> = values
            .iter()
            .map(|v| vec![MultiPoly::one(target_nvars), v.clone()])
            .collect();
        let mut out = Self::zero(target_nvars);
        for (mono, coeff) in &self.terms {
            let mut term = Self::constant(target_nvars, coeff.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &values[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    term = &term * &powers[i][e];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at rational points.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&mono.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> MultiPoly {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; self.nvars];
            for (i, &e) in m.0.iter().enumerate() {
                exps[perm[i]] = e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        let mut perm: Vec<usize> = (0..self.nvars).collect();
        perm.swap(i, j);
        self.permute_vars(&perm)
    }

    /// Exact division. Errors if `divisor` does not divide `self`.
    ///
    /// Uses leading-term reduction under graded-lex order; when the division
    /// is exact the leading term of the remainder is always divisible by the
    /// leading term of the divisor, so a failed step proves inexactness.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&lm).ok_or_else(|| {
                Error::InexactDivision(format!("leading monomial {:?} not divisible by {:?}", rm.0, lm.0))
            })?;
            let qc = rc / &lc;
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Canonical text with caller-supplied variable names, highest term first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (mono, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let factors: Vec<String> = mono
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    let name = names.get(v).cloned().unwrap_or_else(|| format!("x{}", v + 1));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Default symbol names `α1, α2, …`.
    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("α{i}")).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&Self::default_names(self.nvars)))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Scalar::one())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}
