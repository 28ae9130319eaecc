//! Dense univariate polynomials with exact coefficients.
//!
//! `Poly<C>` stores coefficients in ascending degree order. Invariant: the
//! vector is empty (zero polynomial) or its last element is nonzero.
//! Integer polynomials (`IntPoly`) carry descent counts; rational polynomials
//! (`RatPoly`) carry Ehrhart polynomials and everything root-related.

use std::fmt;
use std::ops::{Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::CmeError;
use crate::numeric::binomial;
use crate::Result;

/// Coefficient ring required by `Poly`.
pub trait Coeff:
    Clone
    + Eq
    + Ord
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![C::one()],
        }
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c * x^k.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Poly::new(values.iter().map(|&v| C::from_i64(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero outside the stored range).
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &C) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Poly { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let out: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * C::from_i64(i as i64))
            .collect();
        Poly::new(out)
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// The reciprocal x^d p(1/x): coefficient reversal padded to length d+1.
    pub fn reciprocal(&self, d: usize) -> Result<Self> {
        match self.degree() {
            None => Ok(Poly::zero()),
            Some(deg) if deg > d => Err(CmeError::DegreeError { deg, bound: d }),
            Some(_) => {
                let mut out = vec![C::zero(); d + 1];
                for (k, c) in self.coeffs.iter().enumerate() {
                    out[d - k] = c.clone();
                }
                Ok(Poly::new(out))
            }
        }
    }

    /// The reflection (-1)^d p(-1-x).
    pub fn reflect(&self, d: usize) -> Result<Self> {
        if let Some(deg) = self.degree() {
            if deg > d {
                return Err(CmeError::DegreeError { deg, bound: d });
            }
        }
        let inner = Poly::new(vec![C::from_i64(-1), C::from_i64(-1)]);
        let composed = self.compose(&inner);
        Ok(if d.is_multiple_of(2) { composed } else { composed.neg() })
    }

    /// True iff p_s = p_{n-s} for all s. A polynomial of degree above n is
    /// never palindromic with respect to n.
    pub fn palindromic(&self, n: usize) -> bool {
        if let Some(deg) = self.degree() {
            if deg > n {
                return false;
            }
        }
        for s in 0..=n / 2 {
            if self.coeff(s) != self.coeff(n - s) {
                return false;
            }
        }
        true
    }

    pub fn is_nonnegative(&self) -> bool {
        let zero = C::zero();
        self.coeffs.iter().all(|c| *c >= zero)
    }
}

impl IntPoly {
    pub fn to_rational(&self) -> RatPoly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl RatPoly {
    /// Back to integer coefficients; `None` if any coefficient has a
    /// nontrivial denominator.
    pub fn to_integer(&self) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(Poly::new(out))
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divrem(&self, div: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let factor = rem[k].clone() / lead.clone();
            if factor.is_zero() {
                continue;
            }
            quot[k - dd] = factor.clone();
            for j in 0..=dd {
                let val = rem[k - dd + j].clone() - factor.clone() * div.coeffs[j].clone();
                rem[k - dd + j] = val;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic polynomial gcd. Intermediate remainders are rescaled to
    /// primitive integer coefficients to keep the arithmetic small.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.primitive_scaled();
        let mut b = other.primitive_scaled();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.primitive_scaled();
        }
        a.monic()
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> RatPoly {
        match self.degree() {
            None => Poly::zero(),
            Some(d) => {
                let lead = self.coeffs[d].clone();
                Poly::new(self.coeffs.iter().map(|c| c.clone() / lead.clone()).collect())
            }
        }
    }

    /// Sign of the evaluation at a rational point: -1, 0, or 1.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Scale by a positive rational so the coefficients become coprime
    /// integers. Signs (and roots) are unchanged; this keeps Sturm-chain
    /// arithmetic small.
    pub fn primitive_scaled(&self) -> RatPoly {
        use num::Integer;
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        Poly::new(
            ints.into_iter()
                .map(|v| BigRational::from_integer(v / &content))
                .collect(),
        )
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Gaussian binomial [a choose b]_q by the Pascal recursion
/// [a b] = [a-1 b-1] + q^b [a-1 b], with the out-of-range conventions
/// [a 0] = 1 for any a, and 0 whenever b < 0 or (b > 0 and a < b).
pub fn q_binomial(a: i64, b: i64) -> IntPoly {
    if b == 0 {
        return Poly::one();
    }
    if b < 0 || a < b {
        return Poly::zero();
    }
    // Dense DP over rows; row[j] = [row_index choose j]_q.
    let b = b as usize;
    let mut row: Vec<IntPoly> = vec![Poly::one(); 1];
    for i in 1..=(a as usize) {
        let width = b.min(i);
        let mut next: Vec<IntPoly> = Vec::with_capacity(width + 1);
        next.push(Poly::one());
        for j in 1..=width {
            let keep = if j < row.len() {
                row[j].shift_up(j)
            } else {
                Poly::zero()
            };
            next.push(row[j - 1].add(&keep));
        }
        row = next;
    }
    row[b].clone()
}

/// Gaussian binomial [A+B choose A]_q by the nondecreasing-sequence sum
/// identity: sum over 0 <= g_1 <= ... <= g_A <= B of q^(g_1+...+g_A).
/// Used as the independent route against `q_binomial`.
pub fn q_binomial_by_sum(a: i64, b: i64) -> IntPoly {
    if b == 0 {
        return Poly::one();
    }
    if b < 0 || a < b {
        return Poly::zero();
    }
    let slots = b as usize; // A
    let max = (a - b) as usize; // B
    let mut coeffs = vec![BigInt::zero(); slots * max + 1];
    fn walk(coeffs: &mut [BigInt], remaining: usize, low: usize, max: usize, total: usize) {
        if remaining == 0 {
            coeffs[total] += 1;
            return;
        }
        for g in low..=max {
            walk(coeffs, remaining - 1, g, max, total + g);
        }
    }
    walk(&mut coeffs, slots, 0, max, 0);
    Poly::new(coeffs)
}

/// Substitute q = 1: the coefficient sum.
pub fn q_eval_one(p: &IntPoly) -> BigInt {
    p.coeffs().iter().sum()
}

/// The binomial-coefficient polynomial C(t, k) as a rational polynomial in t.
pub fn binom_poly(k: usize) -> RatPoly {
    let mut out = RatPoly::one();
    for i in 0..k {
        // factor (t - i) / (i + 1)
        let factor = Poly::new(vec![
            BigRational::from_integer(BigInt::from(-(i as i64))),
            BigRational::one(),
        ]);
        out = out.mul(&factor);
        out = out.scale(&BigRational::new(BigInt::one(), BigInt::from(i as i64 + 1)));
    }
    out
}

/// The Ehrhart factor C(r*t + m, m) = prod_{i=1}^{m} (r*t + i) / i as a
/// rational polynomial in t.
pub fn dilated_simplex_ehrhart(r: u32, m: u32) -> RatPoly {
    let mut out = RatPoly::one();
    for i in 1..=i64::from(m) {
        let factor = Poly::new(vec![
            BigRational::from_integer(BigInt::from(i)),
            BigRational::from_integer(BigInt::from(i64::from(r))),
        ]);
        out = out.mul(&factor);
        out = out.scale(&BigRational::new(BigInt::one(), BigInt::from(i)));
    }
    out
}

/// h*-vector from an Ehrhart polynomial of degree d:
/// h*_j = sum_{i=0}^{j} (-1)^i C(d+1, i) L(j-i), trailing zeros trimmed.
pub fn hstar_from_ehrhart(ehrhart: &RatPoly, d: usize) -> Result<IntPoly> {
    match ehrhart.degree() {
        Some(deg) if deg == d => {}
        Some(deg) => return Err(CmeError::DegreeError { deg, bound: d }),
        None => return Err(CmeError::NotEhrhart("zero polynomial".into())),
    }
    let values: Vec<BigRational> = (0..=d as i64)
        .map(|t| ehrhart.eval(&BigRational::from_integer(BigInt::from(t))))
        .collect();
    let mut coeffs = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let mut acc = BigRational::zero();
        for i in 0..=j {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let c = binomial(d as i64 + 1, i as i64) * BigInt::from(sign);
            acc += BigRational::from_integer(c) * values[j - i].clone();
        }
        if !acc.is_integer() {
            return Err(CmeError::NotEhrhart(format!(
                "h*_{j} = {acc} is not an integer"
            )));
        }
        coeffs.push(acc.to_integer());
    }
    Ok(Poly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::big;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly::from_i64s(v)
    }

    #[test]
    fn q_binomial_basics() {
        // (3,1) -> 1 + q + q^2, frozen from the sum-identity oracle
        assert_eq!(q_binomial(3, 1), ip(&[1, 1, 1]));
        assert_eq!(q_binomial_by_sum(3, 1), ip(&[1, 1, 1]));
        // (a,0) -> 1 for any a, including negative
        assert_eq!(q_binomial(5, 0), ip(&[1]));
        assert_eq!(q_binomial(-1, 0), ip(&[1]));
        // (2,3) -> 0
        assert_eq!(q_binomial(2, 3), ip(&[]));
        assert_eq!(q_binomial(3, -1), ip(&[]));
    }

    #[test]
    fn q_binomial_routes_agree() {
        for a in 0..=12 {
            for b in 0..=a {
                assert_eq!(q_binomial(a, b), q_binomial_by_sum(a, b), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn q_binomial_at_one_is_binomial() {
        for a in 0..=10 {
            for b in 0..=a {
                assert_eq!(q_eval_one(&q_binomial(a, b)), binomial(a, b));
            }
        }
    }

    #[test]
    fn hstar_examples() {
        // L(t) = C(t+3,3)^2, d = 6 -> 1 + 9x + 9x^2 + x^3
        let l = dilated_simplex_ehrhart(1, 3).mul(&dilated_simplex_ehrhart(1, 3));
        assert_eq!(hstar_from_ehrhart(&l, 6).unwrap(), ip(&[1, 9, 9, 1]));
        // L(t) = t + 1, d = 1 -> 1
        let l = RatPoly::from_i64s(&[1, 1]);
        assert_eq!(hstar_from_ehrhart(&l, 1).unwrap(), ip(&[1]));
        // L(t) = 2t + 1, d = 1 -> 1 + x
        let l = RatPoly::from_i64s(&[1, 2]);
        assert_eq!(hstar_from_ehrhart(&l, 1).unwrap(), ip(&[1, 1]));
    }

    #[test]
    fn hstar_reexpansion_reproduces_ehrhart() {
        // sum_j h*_j C(t - j + d, d) must reproduce L at t = 0..d+3
        let l = dilated_simplex_ehrhart(2, 2).mul(&dilated_simplex_ehrhart(3, 1));
        let d = 3usize;
        let h = hstar_from_ehrhart(&l, d).unwrap();
        for t in 0..=(d as i64 + 3) {
            let mut acc = big(0);
            for (j, c) in h.coeffs().iter().enumerate() {
                acc += c * binomial(t - j as i64 + d as i64, d as i64);
            }
            let direct = l.eval(&BigRational::from_integer(BigInt::from(t)));
            assert_eq!(BigRational::from_integer(acc), direct, "t={t}");
        }
    }

    #[test]
    fn hstar_rejects_non_ehrhart() {
        // t^2/2 + 1 is not integer-valued
        let l = Poly::new(vec![
            BigRational::from_integer(big(1)),
            BigRational::zero(),
            BigRational::new(big(1), big(2)),
        ]);
        assert!(matches!(
            hstar_from_ehrhart(&l, 2),
            Err(CmeError::NotEhrhart(_))
        ));
    }

    #[test]
    fn reciprocal_examples() {
        // I_4(1+5x+17x^2+15x^3+2x^4) = 2+15x+17x^2+5x^3+x^4
        let p = ip(&[1, 5, 17, 15, 2]);
        assert_eq!(p.reciprocal(4).unwrap(), ip(&[2, 15, 17, 5, 1]));
        // applied twice is the identity when p(0) != 0
        assert_eq!(p.reciprocal(4).unwrap().reciprocal(4).unwrap(), p);
        // the degree-3 Eulerian polynomial is its own reciprocal
        let a4 = ip(&[1, 11, 11, 1]);
        assert_eq!(a4.reciprocal(3).unwrap(), a4);
        // degree error
        assert!(p.reciprocal(3).is_err());
    }

    #[test]
    fn reflect_examples() {
        // R_1(1+3x) = -(1 + 3(-1-x)) = 2 + 3x
        assert_eq!(ip(&[1, 3]).reflect(1).unwrap(), ip(&[2, 3]));
        // R_2((1+2x)^2) = (1+2x)^2
        let sq = ip(&[1, 4, 4]);
        assert_eq!(sq.reflect(2).unwrap(), sq);
        // R_d(c) = (-1)^d c
        assert_eq!(ip(&[7]).reflect(3).unwrap(), ip(&[-7]));
        assert_eq!(ip(&[7]).reflect(4).unwrap(), ip(&[7]));
        // reflect is an involution on degree-bounded polynomials
        let p = ip(&[1, 5, 17, 15, 2]);
        assert_eq!(p.reflect(4).unwrap().reflect(4).unwrap(), p);
    }

    #[test]
    fn palindromic_examples() {
        assert!(ip(&[1, 9, 9, 1]).palindromic(3));
        assert!(!ip(&[1, 2]).palindromic(1));
        assert!(!ip(&[1, 2]).palindromic(2));
        assert!(ip(&[1, 4, 6, 4, 1]).palindromic(4));
        assert!(!ip(&[1, 1]).palindromic(0));
    }

    #[test]
    fn divrem_and_gcd() {
        let p = RatPoly::from_i64s(&[1, 4, 4]); // (1+2x)^2
        let d = RatPoly::from_i64s(&[1, 2]);
        let (q, r) = p.divrem(&d);
        assert!(r.is_zero());
        assert_eq!(q, d);
        let g = p.gcd(&p.derivative());
        // gcd is monic: x + 1/2
        assert_eq!(
            g,
            Poly::new(vec![BigRational::new(big(1), big(2)), BigRational::one()])
        );
    }

    #[test]
    fn binom_poly_values() {
        let c3 = binom_poly(3);
        for t in 0..8 {
            assert_eq!(
                c3.eval(&BigRational::from_integer(big(t))),
                BigRational::from_integer(binomial(t, 3))
            );
        }
    }
}
