//! Arbitrary-precision combinatorial helpers.

use num::{BigInt, BigRational, One, Zero};

/// Binomial coefficient C(a, b) for integer a (possibly negative) and b >= 0,
/// with the convention C(a, 0) = 1 and C(a, b) = 0 for 0 <= a < b.
///
/// For negative a the rising-product definition is used:
/// C(a, b) = a(a-1)...(a-b+1)/b!, so e.g. C(-1, 0) = 1 and C(-1, 1) = -1.
/// The identity-verifier call sites only ever hit the nonnegative range plus
/// C(t+i-1, i) at t = 0, which vanishes for i > 0 under this definition...
/// except C(i-1, i) = 0 holds already for a >= 0, so the negative branch is
/// only exercised by C(-1, 0) = 1.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if b == 0 {
        return BigInt::one();
    }
    if a >= 0 && a < b {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= BigInt::from(a - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Multinomial coefficient m! / (m_1! ... m_n!) for the multiplicity vector.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let mut result = BigInt::one();
    let mut total: i64 = 0;
    for &p in parts {
        total += i64::from(p);
        result *= binomial(total, i64::from(p));
    }
    result
}

/// Number of colored multiset permutations: multinomial(m) * prod r_k^{m_k}.
pub fn colored_count(m: &[u32], r: &[u32]) -> BigInt {
    let mut count = multinomial(m);
    for (&mk, &rk) in m.iter().zip(r) {
        count *= BigInt::from(rk).pow(mk);
    }
    count
}

/// Ceiling of a/b for positive integers.
pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(-1, 0), big(1));
        assert_eq!(binomial(3, 7), big(0));
        assert_eq!(binomial(2, 3), big(0));
    }

    #[test]
    fn multinomial_small() {
        assert_eq!(multinomial(&[3, 3]), big(20));
        assert_eq!(multinomial(&[1, 1, 1]), big(6));
        assert_eq!(multinomial(&[2]), big(1));
    }

    #[test]
    fn colored_counts() {
        // 2! * 2 * 2 = 8 signed permutations of {1,2}
        assert_eq!(colored_count(&[1, 1], &[2, 2]), big(8));
        assert_eq!(colored_count(&[3, 3], &[1, 1]), big(20));
    }
}
