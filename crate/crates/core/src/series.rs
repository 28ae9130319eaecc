//! Sparse truncated multivariate power series over the integers.
//!
//! Terms live in a `BTreeMap` from exponent vector to coefficient, so
//! iteration order (and therefore any mismatch witness) is deterministic.
//! Every stored exponent vector respects the per-variable caps; any term
//! exceeding a cap is dropped on creation. Since all exponents are
//! nonnegative, dropping over-cap terms never corrupts the coefficients
//! that remain below the caps.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Zero};

use crate::poly::IntPoly;

/// Exponent vector, one slot per tracked variable.
pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    caps: Vec<u32>,
    terms: BTreeMap<Exponents, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(caps: Vec<u32>) -> Self {
        TruncatedSeries {
            caps,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(caps: Vec<u32>) -> Self {
        let vars = caps.len();
        let mut s = Self::zero(caps);
        s.add_term(&vec![0; vars], BigInt::one());
        s
    }

    /// A single monomial (dropped silently if it exceeds the caps).
    pub fn monomial(caps: Vec<u32>, exps: &[u32], coeff: BigInt) -> Self {
        let mut s = Self::zero(caps);
        s.add_term(exps, coeff);
        s
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn num_vars(&self) -> usize {
        self.caps.len()
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    fn within_caps(&self, exps: &[u32]) -> bool {
        exps.iter().zip(&self.caps).all(|(e, c)| e <= c)
    }

    /// Add `coeff * x^exps`, respecting caps and pruning zeros.
    pub fn add_term(&mut self, exps: &[u32], coeff: BigInt) {
        debug_assert_eq!(exps.len(), self.caps.len());
        if coeff.is_zero() || !self.within_caps(exps) {
            return;
        }
        let entry = self.terms.entry(exps.to_vec()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(exps);
        }
    }

    pub fn add_assign(&mut self, other: &TruncatedSeries) {
        debug_assert_eq!(self.caps, other.caps);
        for (e, c) in &other.terms {
            self.add_term(e, c.clone());
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        debug_assert_eq!(self.caps, other.caps);
        let mut out = TruncatedSeries::zero(self.caps.clone());
        let mut exps = vec![0u32; self.caps.len()];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut ok = true;
                for i in 0..exps.len() {
                    let e = ea[i] + eb[i];
                    if e > self.caps[i] {
                        ok = false;
                        break;
                    }
                    exps[i] = e;
                }
                if ok {
                    out.add_term(&exps, ca * cb);
                }
            }
        }
        out
    }

    /// Multiply by a single monomial.
    pub fn mul_monomial(&self, exps: &[u32], coeff: &BigInt) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.caps.clone());
        let mut e = vec![0u32; self.caps.len()];
        for (ea, ca) in &self.terms {
            let mut ok = true;
            for i in 0..e.len() {
                let v = ea[i] + exps[i];
                if v > self.caps[i] {
                    ok = false;
                    break;
                }
                e[i] = v;
            }
            if ok {
                out.add_term(&e, ca * coeff);
            }
        }
        out
    }

    /// Geometric series 1/(1 - u) = sum_{j>=0} u^j for a monomial u.
    ///
    /// The expansion terminates because `u` must carry a strictly positive
    /// exponent of the designated truncation variable; this is enforced, not
    /// assumed.
    pub fn geometric(caps: Vec<u32>, u: &[u32], truncation_var: usize) -> TruncatedSeries {
        assert!(
            u[truncation_var] > 0,
            "geometric-series denominator must contain the truncation variable"
        );
        let mut s = TruncatedSeries::zero(caps);
        let mut power = vec![0u32; u.len()];
        loop {
            if !s.within_caps(&power) {
                break;
            }
            s.add_term(&power, BigInt::one());
            for (p, inc) in power.iter_mut().zip(u) {
                *p += inc;
            }
        }
        s
    }

    /// Inject a univariate polynomial in q as a series in variable `var`,
    /// with each q-exponent multiplied by `scale` (q -> x_var^scale).
    pub fn from_univariate(caps: Vec<u32>, p: &IntPoly, var: usize, scale: u32) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(caps);
        let vars = s.caps.len();
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut exps = vec![0u32; vars];
            exps[var] = (k as u32) * scale;
            s.add_term(&exps, c.clone());
        }
        s
    }

    /// First differing exponent vector between two series, with both
    /// coefficients; `None` when equal.
    pub fn first_difference(&self, other: &TruncatedSeries) -> Option<(Exponents, BigInt, BigInt)> {
        debug_assert_eq!(self.caps, other.caps);
        let mut keys: Vec<&Exponents> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let a = self.coeff(k);
            let b = other.coeff(k);
            if a != b {
                return Some((k.clone(), a, b));
            }
        }
        None
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TruncatedSeries(caps={:?}, {} terms)",
            self.caps,
            self.terms.len()
        )
    }
}
