//! Distributional analysis: symmetric decompositions, gamma expansions,
//! coefficient-shape checks, exact root certification, and the
//! five-condition self-interlacing suite.

pub mod roots;

pub use roots::{
    interlace_pair, interlaces, interlaces_certified, real_root_certificate, AlgebraicRoot,
    CertifiedRoot, RootCertificate,
};

use num::{BigInt, BigRational, Zero};

use crate::error::CmeError;
use crate::numeric::binomial;
use crate::poly::{IntPoly, Poly, RatPoly};
use crate::Result;

/// The unique split p = a + x*b with a symmetric with respect to n and b
/// with respect to n-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricDecomposition {
    pub a: IntPoly,
    pub b: IntPoly,
    pub n: usize,
}

impl SymmetricDecomposition {
    pub fn is_nonnegative(&self) -> bool {
        self.a.is_nonnegative() && self.b.is_nonnegative()
    }
}

/// Closed-form symmetric decomposition:
/// a_k = sum_{i<=k} (p_i - p_{n+1-i}), b_k = sum_{i<=k} (p_{n-i} - p_i),
/// with out-of-range coefficients read as zero. The construction is then
/// checked against every type invariant.
pub fn symmetric_decomposition(p: &IntPoly, n: usize) -> Result<SymmetricDecomposition> {
    if let Some(deg) = p.degree() {
        if deg > n {
            return Err(CmeError::DegreeError { deg, bound: n });
        }
    }
    let at = |i: i64| -> BigInt {
        if i < 0 {
            BigInt::zero()
        } else {
            p.coeff(i as usize)
        }
    };
    let mut a_coeffs = Vec::with_capacity(n + 1);
    let mut acc = BigInt::zero();
    for k in 0..=n as i64 {
        acc += at(k) - at(n as i64 + 1 - k);
        a_coeffs.push(acc.clone());
    }
    let mut b_coeffs = Vec::with_capacity(n);
    let mut acc = BigInt::zero();
    for k in 0..n as i64 {
        acc += at(n as i64 - k) - at(k);
        b_coeffs.push(acc.clone());
    }
    let a = Poly::new(a_coeffs);
    let b = Poly::new(b_coeffs);
    // invariants certify correctness and uniqueness
    assert_eq!(&a.add(&b.shift_up(1)), p, "a + x*b must reconstruct p");
    assert!(a.palindromic(n), "a must be symmetric with respect to n");
    assert!(
        n == 0 || b.palindromic(n - 1),
        "b must be symmetric with respect to n-1"
    );
    Ok(SymmetricDecomposition { a, b, n })
}

/// Coordinates of a palindromic polynomial in the basis x^i (1+x)^{n-2i}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaVector {
    pub gammas: Vec<BigInt>,
    pub n: usize,
}

impl GammaVector {
    pub fn is_nonnegative(&self) -> bool {
        self.gammas.iter().all(|g| g >= &BigInt::zero())
    }

    /// Rebuild sum gamma_i x^i (1+x)^{n-2i}.
    pub fn reconstruct(&self) -> IntPoly {
        let base = IntPoly::from_i64s(&[1, 1]);
        let mut out = IntPoly::zero();
        for (i, g) in self.gammas.iter().enumerate() {
            let term = base
                .pow((self.n - 2 * i) as u32)
                .shift_up(i)
                .scale(g);
            out = out.add(&term);
        }
        out
    }
}

/// Gamma expansion by peeling from the bottom coefficient. Errors when the
/// input is not palindromic with respect to n.
pub fn gamma_expansion(p: &IntPoly, n: usize) -> Result<GammaVector> {
    if !p.palindromic(n) {
        return Err(CmeError::NotPalindromic(n));
    }
    if p.is_zero() {
        return Ok(GammaVector {
            gammas: vec![BigInt::zero(); n / 2 + 1],
            n,
        });
    }
    let base = IntPoly::from_i64s(&[1, 1]);
    let mut residual = p.clone();
    let mut gammas = Vec::with_capacity(n / 2 + 1);
    for i in 0..=n / 2 {
        let g = residual.coeff(i);
        if !g.is_zero() {
            let term = base.pow((n - 2 * i) as u32).shift_up(i).scale(&g);
            residual = residual.sub(&term);
        }
        gammas.push(g);
    }
    assert!(residual.is_zero(), "palindromic peeling must terminate");
    Ok(GammaVector { gammas, n })
}

/// Direct coefficient-shape flags. The alternating chain is read with
/// respect to the reference degree n, so trailing zero coefficients count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeReport {
    pub nonnegative: bool,
    pub unimodal: bool,
    pub log_concave: bool,
    pub alternatingly_increasing: bool,
}

pub fn shape_checks(p: &IntPoly, n: usize) -> ShapeReport {
    let coeffs = p.coeffs();
    let nonnegative = p.is_nonnegative();

    let unimodal = {
        let mut i = 0;
        while i + 1 < coeffs.len() && coeffs[i] <= coeffs[i + 1] {
            i += 1;
        }
        while i + 1 < coeffs.len() && coeffs[i] >= coeffs[i + 1] {
            i += 1;
        }
        coeffs.is_empty() || i == coeffs.len() - 1
    };

    let log_concave = (1..coeffs.len()).all(|i| {
        let prev = &coeffs[i - 1];
        let next = if i + 1 < coeffs.len() {
            coeffs[i + 1].clone()
        } else {
            BigInt::zero()
        };
        &coeffs[i] * &coeffs[i] >= prev * next
    });

    let alternatingly_increasing = {
        // p_0 <= p_n <= p_1 <= p_{n-1} <= ...
        let mut order = Vec::with_capacity(n + 1);
        let (mut lo, mut hi) = (0usize, n);
        while lo < hi {
            order.push(lo);
            order.push(hi);
            lo += 1;
            hi -= 1;
        }
        if lo == hi {
            order.push(lo);
        }
        order.windows(2).all(|w| p.coeff(w[0]) <= p.coeff(w[1]))
    };

    ShapeReport {
        nonnegative,
        unimodal,
        log_concave,
        alternatingly_increasing,
    }
}

/// The subdivision operator: expand in the binomial-coefficient basis via
/// forward differences at 0, then map C(t, k) to x^k.
pub fn subdivision_operator(p: &RatPoly) -> RatPoly {
    let Some(deg) = p.degree() else {
        return RatPoly::zero();
    };
    let values: Vec<BigRational> = (0..=deg as i64)
        .map(|t| p.eval(&BigRational::from_integer(BigInt::from(t))))
        .collect();
    let mut coeffs = Vec::with_capacity(deg + 1);
    for k in 0..=deg {
        let mut delta = BigRational::zero();
        for (i, v) in values.iter().enumerate().take(k + 1) {
            let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
            let c = binomial(k as i64, i as i64) * BigInt::from(sign);
            delta += BigRational::from_integer(c) * v.clone();
        }
        coeffs.push(delta);
    }
    Poly::new(coeffs)
}

/// Coordinates of a degree-<= d polynomial in the magic basis
/// t^i (1+t)^{d-i}, by triangular peeling.
pub fn magic_basis_expansion(l: &RatPoly, d: usize) -> Result<Vec<BigRational>> {
    if let Some(deg) = l.degree() {
        if deg > d {
            return Err(CmeError::DegreeError { deg, bound: d });
        }
    }
    let base = RatPoly::from_i64s(&[1, 1]);
    let mut cur = l.clone();
    let mut out = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let c = cur.coeff(0);
        out.push(c.clone());
        let peeled = cur.sub(&base.pow((d - i) as u32).scale(&c));
        // divisible by t: drop the vanished constant term
        assert!(
            peeled.coeff(0).is_zero(),
            "magic-basis peeling left a remainder"
        );
        let mut coeffs = peeled.coeffs().to_vec();
        if coeffs.is_empty() {
            cur = RatPoly::zero();
        } else {
            coeffs.remove(0);
            cur = Poly::new(coeffs);
        }
    }
    assert!(cur.is_zero(), "magic-basis peeling must exhaust the input");
    Ok(out)
}

/// One interlacing condition evaluated weakly and strictly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionPair {
    pub weak: bool,
    pub strict: bool,
}

/// The five equivalent self-interlacing conditions evaluated on root chains:
/// b against a, b against p, a against p, the reciprocal against p, and the
/// reflection against p.
#[derive(Debug, Clone)]
pub struct BlSuiteReport {
    pub hypothesis_nonnegative: bool,
    pub decomposition: SymmetricDecomposition,
    /// Conditions in the order [b vs a, b vs p, a vs p, I_d(p) vs p,
    /// R_d(p) vs p].
    pub conditions: [ConditionPair; 5],
}

impl BlSuiteReport {
    pub const LABELS: [&'static str; 5] = [
        "b interlaces a",
        "b interlaces p",
        "a interlaces p",
        "reciprocal interlaces p",
        "reflection interlaces p",
    ];

    pub fn all_weak(&self) -> bool {
        self.conditions.iter().all(|c| c.weak)
    }

    pub fn all_strict(&self) -> bool {
        self.conditions.iter().all(|c| c.strict)
    }
}

/// Evaluates the five conditions for p with respect to degree d. Each
/// polynomial is root-certified once and the chain checks run on the cached
/// certificates.
pub fn self_interlacing_suite(p: &IntPoly, d: usize) -> Result<BlSuiteReport> {
    let decomposition = symmetric_decomposition(p, d)?;
    let hypothesis_nonnegative = decomposition.is_nonnegative();
    let pr = p.to_rational();
    let a = decomposition.a.to_rational();
    let b = decomposition.b.to_rational();
    let reciprocal = pr.reciprocal(d)?;
    let reflection = pr.reflect(d)?;
    let certify = |f: &RatPoly| (!f.is_zero()).then(|| real_root_certificate(f));
    let cert_p = certify(&pr);
    let cert_a = certify(&a);
    let cert_b = certify(&b);
    let cert_rec = certify(&reciprocal);
    let cert_ref = certify(&reflection);
    let pairs = [
        (&cert_b, &cert_a),
        (&cert_b, &cert_p),
        (&cert_a, &cert_p),
        (&cert_rec, &cert_p),
        (&cert_ref, &cert_p),
    ];
    let conditions = pairs.map(|(q, target)| match (q, target) {
        // a zero polynomial interlaces and is interlaced by everything
        (None, _) | (_, None) => ConditionPair {
            weak: true,
            strict: true,
        },
        (Some(cq), Some(cp)) => {
            let (weak, strict) = interlace_pair(cq, cp);
            ConditionPair { weak, strict }
        }
    });
    Ok(BlSuiteReport {
        hypothesis_nonnegative,
        decomposition,
        conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;
    use proptest::prelude::*;

    fn ip(v: &[i64]) -> IntPoly {
        IntPoly::from_i64s(v)
    }

    #[test]
    fn decomposition_worked_examples() {
        // 1+5x+17x^2+15x^3+2x^4 at n=4: ((1+x)^4, 1+11x+11x^2+x^3)
        let d = symmetric_decomposition(&ip(&[1, 5, 17, 15, 2]), 4).unwrap();
        assert_eq!(d.a, ip(&[1, 4, 6, 4, 1]));
        assert_eq!(d.b, ip(&[1, 11, 11, 1]));
        // (1+2x)^2 at n=2: (1+x+x^2, 3+3x)
        let d = symmetric_decomposition(&ip(&[1, 4, 4]), 2).unwrap();
        assert_eq!(d.a, ip(&[1, 1, 1]));
        assert_eq!(d.b, ip(&[3, 3]));
        // palindromic input: (p, 0)
        let p = ip(&[1, 9, 9, 1]);
        let d = symmetric_decomposition(&p, 3).unwrap();
        assert_eq!(d.a, p);
        assert!(d.b.is_zero());
    }

    #[test]
    fn gamma_examples() {
        // 1+11x+11x^2+x^3 -> (1, 8)
        let g = gamma_expansion(&ip(&[1, 11, 11, 1]), 3).unwrap();
        assert_eq!(g.gammas, vec![BigInt::from(1), BigInt::from(8)]);
        assert_eq!(g.reconstruct(), ip(&[1, 11, 11, 1]));
        // (1+x)^4 -> (1, 0, 0)
        let g = gamma_expansion(&ip(&[1, 4, 6, 4, 1]), 4).unwrap();
        assert_eq!(g.gammas, vec![BigInt::from(1), BigInt::zero(), BigInt::zero()]);
        // 1+4x+x^2 -> (1, 2)
        let g = gamma_expansion(&ip(&[1, 4, 1]), 2).unwrap();
        assert_eq!(g.gammas, vec![BigInt::from(1), BigInt::from(2)]);
        // non-palindromic input is rejected
        assert!(matches!(
            gamma_expansion(&ip(&[1, 2]), 1),
            Err(CmeError::NotPalindromic(1))
        ));
    }

    #[test]
    fn shape_examples() {
        let s = shape_checks(&ip(&[1, 9, 9, 1]), 3);
        assert!(s.nonnegative && s.unimodal && s.log_concave && s.alternatingly_increasing);
        // 1 <= 2 <= 5 <= 15 <= 17
        let s = shape_checks(&ip(&[1, 5, 17, 15, 2]), 4);
        assert!(s.alternatingly_increasing);
        let s = shape_checks(&ip(&[1]), 0);
        assert!(s.nonnegative && s.unimodal && s.log_concave && s.alternatingly_increasing);
        // 1 + x + 3x^2 is not log-concave (1 < 3) and 3 > 1 breaks nothing
        // unimodal-wise, while 2+x+2x^2 fails unimodality
        let s = shape_checks(&ip(&[2, 1, 2]), 2);
        assert!(!s.unimodal);
        assert!(!s.log_concave);
    }

    #[test]
    fn subdivision_examples() {
        use crate::poly::binom_poly;
        // C(t,2) -> x^2
        let img = subdivision_operator(&binom_poly(2));
        assert_eq!(img, RatPoly::from_i64s(&[0, 0, 1]));
        // t^2 = C(t,1) + 2 C(t,2) -> x + 2x^2
        let img = subdivision_operator(&RatPoly::from_i64s(&[0, 0, 1]));
        assert_eq!(img, RatPoly::from_i64s(&[0, 1, 2]));
        // constants are fixed
        let img = subdivision_operator(&RatPoly::from_i64s(&[1]));
        assert_eq!(img, RatPoly::from_i64s(&[1]));
    }

    #[test]
    fn magic_basis_examples() {
        // 2t+1 = 1*(1+t) + 1*t
        let cs = magic_basis_expansion(&RatPoly::from_i64s(&[1, 2]), 1).unwrap();
        assert_eq!(cs, vec![BigRational::one(), BigRational::one()]);
        // (1+t)^d -> (1, 0, ..., 0)
        let base = RatPoly::from_i64s(&[1, 1]).pow(3);
        let cs = magic_basis_expansion(&base, 3).unwrap();
        assert_eq!(cs[0], BigRational::one());
        assert!(cs[1..].iter().all(|c| c.is_zero()));
        // 3t+1 at d=1 -> (1, 2), nonnegative
        let cs = magic_basis_expansion(&RatPoly::from_i64s(&[1, 3]), 1).unwrap();
        assert_eq!(
            cs,
            vec![BigRational::one(), BigRational::from_integer(2.into())]
        );
    }

    #[test]
    fn magic_basis_reconstructs() {
        let l = RatPoly::from_i64s(&[1, 5, 7, 2]);
        let d = 4;
        let cs = magic_basis_expansion(&l, d).unwrap();
        let base = RatPoly::from_i64s(&[1, 1]);
        let mut rebuilt = RatPoly::zero();
        for (i, c) in cs.iter().enumerate() {
            let term = base.pow((d - i) as u32).shift_up(i).scale(c);
            rebuilt = rebuilt.add(&term);
        }
        assert_eq!(rebuilt, l);
    }

    #[test]
    fn suite_on_colored_line() {
        // p = A for m=(1), r=(3): 1+2x at d=1; I_1(p) = 2+x strictly
        // interlaces, and all five weak conditions hold
        let report = self_interlacing_suite(&ip(&[1, 2]), 1).unwrap();
        assert!(report.hypothesis_nonnegative);
        assert!(report.all_weak(), "{:?}", report.conditions);
        assert!(report.conditions[3].strict);
    }

    #[test]
    fn suite_on_non_real_rooted_example() {
        // p = 1+5x+17x^2+15x^3+2x^4: all five conditions false
        let report = self_interlacing_suite(&ip(&[1, 5, 17, 15, 2]), 4).unwrap();
        assert!(report.hypothesis_nonnegative);
        for c in report.conditions {
            assert!(!c.weak && !c.strict);
        }
    }

    #[test]
    fn suite_on_squared_binomial() {
        // p = (1+x)^2 at d=2: the root-bearing strict conditions fail on the
        // repeated shared roots
        let report = self_interlacing_suite(&ip(&[1, 2, 1]), 2).unwrap();
        assert!(report.hypothesis_nonnegative);
        assert!(!report.conditions[2].strict);
        assert!(!report.conditions[3].strict);
        assert!(!report.conditions[4].strict);
        // weakly, p interlaces itself
        assert!(report.conditions[2].weak);
        assert!(report.conditions[3].weak);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Decomposition round-trip on arbitrary small polynomials.
        #[test]
        fn decomposition_roundtrip(
            coeffs in prop::collection::vec(-9i64..=9, 1..=6),
            pad in 0usize..=2,
        ) {
            let p = IntPoly::from_i64s(&coeffs);
            let n = coeffs.len() - 1 + pad;
            let d = symmetric_decomposition(&p, n).unwrap();
            prop_assert_eq!(d.a.add(&d.b.shift_up(1)), p);
            prop_assert!(d.a.palindromic(n));
            prop_assert!(n == 0 || d.b.palindromic(n - 1));
        }

        /// Gamma round-trip on arbitrary palindromic inputs.
        #[test]
        fn gamma_roundtrip(
            half in prop::collection::vec(-9i64..=9, 1..=3),
            odd in prop::bool::ANY,
        ) {
            // build a palindrome from the half
            let mut coeffs = half.clone();
            let mirror: Vec<i64> = half.iter().rev().copied().collect();
            if odd {
                coeffs.extend(mirror);
            } else {
                coeffs.extend(mirror.into_iter().skip(1));
            }
            let p = IntPoly::from_i64s(&coeffs);
            let n = coeffs.len() - 1;
            if p.is_zero() {
                return Ok(());
            }
            let g = gamma_expansion(&p, n).unwrap();
            prop_assert_eq!(g.reconstruct(), p);
        }
    }
}
