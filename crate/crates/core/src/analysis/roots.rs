//! Exact real-root certification: Sturm chains over the rationals, root
//! isolation by sign-variation bisection, and root-chain interlacing.
//!
//! No floating point appears anywhere. A root is carried either as an exact
//! rational point or as an open interval with rational endpoints on which
//! the square-free polynomial changes sign; comparisons refine intervals
//! until they separate, with shared roots detected exactly through a gcd.

use num::{BigRational, One, Signed, Zero};

use crate::poly::RatPoly;

/// A real algebraic number: the unique root of the square-free `poly`
/// within `[lo, hi]`. Rational roots collapse to lo == hi; otherwise the
/// interval is open with sign(poly(lo)) * sign(poly(hi)) < 0.
#[derive(Debug, Clone)]
pub struct AlgebraicRoot {
    poly: RatPoly,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicRoot {
    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Halve the enclosing interval.
    pub fn refine(&mut self) {
        if self.is_point() {
            return;
        }
        let two = BigRational::from_integer(2.into());
        let mid = (&self.lo + &self.hi) / two;
        let s_mid = self.poly.sign_at(&mid);
        if s_mid == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        if self.poly.sign_at(&self.lo) * s_mid < 0 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    fn disjoint_from(&self, other: &AlgebraicRoot) -> Option<std::cmp::Ordering> {
        // closed-interval comparison; point roots make ties possible
        if self.hi < other.lo || (self.hi == other.lo && !(self.is_point() && other.is_point())) {
            return Some(std::cmp::Ordering::Less);
        }
        if other.hi < self.lo || (other.hi == self.lo && !(self.is_point() && other.is_point())) {
            return Some(std::cmp::Ordering::Greater);
        }
        if self.is_point() && other.is_point() {
            return Some(self.lo.cmp(&other.lo));
        }
        None
    }

    /// Exact comparison of two algebraic numbers.
    pub fn compare(&mut self, other: &mut AlgebraicRoot) -> std::cmp::Ordering {
        if let Some(ord) = self.disjoint_from(other) {
            return ord;
        }
        // shared-root detection: a common root of both polynomials inside the
        // overlap is necessarily this root on both sides
        let g = self.poly.gcd(&other.poly);
        let has_common_factor = g.degree().is_some_and(|d| d >= 1);
        loop {
            if let Some(ord) = self.disjoint_from(other) {
                return ord;
            }
            if has_common_factor {
                let lo = self.lo.clone().max(other.lo.clone());
                let hi = self.hi.clone().min(other.hi.clone());
                if count_roots_closed(&g, &lo, &hi) > 0 {
                    return std::cmp::Ordering::Equal;
                }
            }
            self.refine();
            other.refine();
        }
    }
}

/// Sturm chain: p, p', then negated remainders. Every element is scaled to
/// primitive integer coefficients, which only multiplies it by a positive
/// constant and keeps the sign-variation counts intact while preventing
/// coefficient blowup.
fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.primitive_scaled(), p.derivative().primitive_scaled()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        if chain[n - 1].degree() == Some(0) {
            break;
        }
        let (_, rem) = chain[n - 2].divrem(&chain[n - 1]);
        if rem.is_zero() {
            break;
        }
        chain.push(rem.neg().primitive_scaled());
    }
    chain
}

fn sign_variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut variations = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            variations += 1;
        }
        last = s;
    }
    variations
}

/// Number of distinct roots of square-free `p` in the open interval (lo, hi),
/// requiring p(lo) != 0 and p(hi) != 0.
fn count_roots_open(chain: &[RatPoly], lo: &BigRational, hi: &BigRational) -> usize {
    sign_variations(chain, lo) - sign_variations(chain, hi)
}

/// Number of distinct roots of square-free `p` in the closed interval
/// [lo, hi]. Callers guarantee that a non-degenerate interval has non-root
/// endpoints: the enclosure endpoints produced by isolation never vanish on
/// the isolated polynomial, hence not on any divisor of it either.
fn count_roots_closed(p: &RatPoly, lo: &BigRational, hi: &BigRational) -> usize {
    if lo > hi {
        return 0;
    }
    if lo == hi {
        return usize::from(p.sign_at(lo) == 0);
    }
    debug_assert!(p.sign_at(lo) != 0 && p.sign_at(hi) != 0);
    let chain = sturm_chain(p);
    count_roots_open(&chain, lo, hi)
}

/// Cauchy bound: every real root lies strictly inside (-B, B).
fn cauchy_bound(p: &RatPoly) -> BigRational {
    let d = p.degree().expect("nonzero polynomial");
    let lead = p.coeff(d);
    let mut max = BigRational::zero();
    for c in p.coeffs()[..d].iter() {
        let ratio = (c / &lead).abs();
        if ratio > max {
            max = ratio;
        }
    }
    BigRational::one() + max
}

/// Isolating roots of a square-free polynomial: disjoint enclosures, sorted
/// in increasing order.
pub fn isolate_square_free(p: &RatPoly) -> Vec<AlgebraicRoot> {
    match p.degree() {
        None | Some(0) => return Vec::new(),
        _ => {}
    }
    let chain = sturm_chain(p);
    let bound = cauchy_bound(p);
    let lo = -bound.clone();
    let hi = bound;
    let total = count_roots_open(&chain, &lo, &hi);
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi, total)];
    let two = BigRational::from_integer(2.into());
    while let Some((a, b, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(AlgebraicRoot {
                poly: p.clone(),
                lo: a,
                hi: b,
            });
            continue;
        }
        let mid = (&a + &b) / two.clone();
        if p.sign_at(&mid) == 0 {
            out.push(AlgebraicRoot {
                poly: p.clone(),
                lo: mid.clone(),
                hi: mid.clone(),
            });
            // carve out a gap around the rational root
            let mut delta = (&b - &a) / BigRational::from_integer(4.into());
            loop {
                let l = &mid - &delta;
                let r = &mid + &delta;
                if p.sign_at(&l) != 0
                    && p.sign_at(&r) != 0
                    && count_roots_open(&chain, &l, &r) == 1
                {
                    stack.push((a.clone(), l.clone(), count_roots_open(&chain, &a, &l)));
                    stack.push((r.clone(), b.clone(), count_roots_open(&chain, &r, &b)));
                    break;
                }
                delta /= two.clone();
            }
        } else {
            let left = count_roots_open(&chain, &a, &mid);
            stack.push((a, mid.clone(), left));
            stack.push((mid, b, count - left));
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo).then_with(|| x.hi.cmp(&y.hi)));
    out
}

/// One distinct real root with its multiplicity in the original polynomial.
#[derive(Debug, Clone)]
pub struct CertifiedRoot {
    pub root: AlgebraicRoot,
    pub multiplicity: usize,
}

/// Exact real-rootedness certificate.
#[derive(Debug, Clone)]
pub struct RootCertificate {
    /// p / gcd(p, p'), monic.
    pub square_free_part: RatPoly,
    /// Distinct real roots, increasing, with pairwise disjoint enclosures.
    pub roots: Vec<CertifiedRoot>,
    /// Real roots counted with multiplicity.
    pub real_root_count: usize,
    pub degree: usize,
    /// real_root_count == degree.
    pub real_rooted: bool,
}

/// Yun square-free decomposition of a monic polynomial: factors[i] collects
/// the roots of multiplicity i+1.
fn square_free_decomposition(p: &RatPoly) -> Vec<RatPoly> {
    let f = p.monic();
    let deriv = f.derivative();
    let g = f.gcd(&deriv);
    if g.degree().unwrap_or(0) == 0 {
        return vec![f];
    }
    let mut factors = Vec::new();
    let (mut c, _) = f.divrem(&g);
    let (dq, _) = deriv.divrem(&g);
    let mut d = dq.sub(&c.derivative());
    loop {
        let a = c.gcd(&d);
        factors.push(a.clone());
        let (c_next, _) = c.divrem(&a);
        let (d_over, _) = d.divrem(&a);
        c = c_next;
        d = d_over.sub(&c.derivative());
        if c.degree().unwrap_or(0) == 0 {
            break;
        }
    }
    factors
}

/// Certifies the real-root structure of a nonzero polynomial.
pub fn real_root_certificate(p: &RatPoly) -> RootCertificate {
    assert!(!p.is_zero(), "certificate of the zero polynomial");
    let degree = p.degree().unwrap();
    if degree == 0 {
        return RootCertificate {
            square_free_part: RatPoly::one(),
            roots: Vec::new(),
            real_root_count: 0,
            degree,
            real_rooted: true, // constants count as real-rooted
        };
    }
    let factors = square_free_decomposition(p);
    let mut roots: Vec<CertifiedRoot> = Vec::new();
    let mut count = 0;
    for (idx, factor) in factors.iter().enumerate() {
        let multiplicity = idx + 1;
        for root in isolate_square_free(factor) {
            count += multiplicity;
            roots.push(CertifiedRoot { root, multiplicity });
        }
    }
    // order globally and shrink enclosures until pairwise disjoint
    roots.sort_by(|a, b| {
        a.root
            .lo
            .cmp(&b.root.lo)
            .then_with(|| a.root.hi.cmp(&b.root.hi))
    });
    let mut i = 1;
    while i < roots.len() {
        let (left, right) = roots.split_at_mut(i);
        let a = &mut left[i - 1].root;
        let b = &mut right[0].root;
        match a.compare(b) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => {
                roots.swap(i - 1, i);
                i = 1.max(i - 1);
            }
            std::cmp::Ordering::Equal => {
                unreachable!("square-free factors share no roots")
            }
        }
    }
    let square_free_part = factors
        .iter()
        .fold(RatPoly::one(), |acc, f| acc.mul(f))
        .monic();
    RootCertificate {
        square_free_part,
        roots,
        real_root_count: count,
        degree,
        real_rooted: count == degree,
    }
}

/// Roots listed in decreasing order, one entry per multiplicity.
fn descending_root_list(cert: &RootCertificate) -> Vec<AlgebraicRoot> {
    let mut out = Vec::new();
    for cr in cert.roots.iter().rev() {
        for _ in 0..cr.multiplicity {
            out.push(cr.root.clone());
        }
    }
    out
}

/// Walks the descending chain starting with `first[0]` and reports
/// (weak, strict): weak needs every consecutive pair >=, strict needs >.
fn chain_eval(first: &[AlgebraicRoot], second: &[AlgebraicRoot]) -> (bool, bool) {
    let mut first: Vec<AlgebraicRoot> = first.to_vec();
    let mut second: Vec<AlgebraicRoot> = second.to_vec();
    let mut strict = true;
    let len = first.len() + second.len();
    for i in 0..len.saturating_sub(1) {
        let ord = if i % 2 == 0 {
            // first[i/2] vs second[i/2]
            let (a, b) = (i / 2, i / 2);
            if a >= first.len() || b >= second.len() {
                break;
            }
            let (fa, sb) = (&mut first[a], &mut second[b]);
            fa.compare(sb)
        } else {
            // second[i/2] vs first[i/2 + 1]
            let (a, b) = (i / 2, i / 2 + 1);
            if a >= second.len() || b >= first.len() {
                break;
            }
            let (sa, fb) = (&mut second[a], &mut first[b]);
            sa.compare(fb)
        };
        match ord {
            std::cmp::Ordering::Less => return (false, false),
            std::cmp::Ordering::Equal => strict = false,
            std::cmp::Ordering::Greater => {}
        }
    }
    (true, strict)
}

/// Root-chain interlacing q against p, with multiplicities expanded.
///
/// The zero polynomial interlaces everything. Otherwise both inputs must be
/// real-rooted, their root counts may differ by at most one, and the merged
/// descending root sequence must alternate between the two polynomials; the
/// longer list leads, and for equal counts either side may lead. In strict
/// mode every chain inequality must be strict, so shared roots (and repeated
/// roots meeting in the chain) fail.
pub fn interlaces(q: &RatPoly, p: &RatPoly, strict: bool) -> bool {
    if q.is_zero() || p.is_zero() {
        return true;
    }
    let cq = real_root_certificate(q);
    let cp = real_root_certificate(p);
    interlaces_certified(&cq, &cp, strict)
}

/// Interlacing on precomputed certificates; see `interlaces`.
pub fn interlaces_certified(cq: &RootCertificate, cp: &RootCertificate, strict: bool) -> bool {
    let (weak, strict_holds) = interlace_pair(cq, cp);
    if strict {
        strict_holds
    } else {
        weak
    }
}

/// Both flavors of the interlacing predicate in one pass over the chains.
pub fn interlace_pair(cq: &RootCertificate, cp: &RootCertificate) -> (bool, bool) {
    if !cq.real_rooted || !cp.real_rooted {
        return (false, false);
    }
    let rq = descending_root_list(cq);
    let rp = descending_root_list(cp);
    if rq.len().abs_diff(rp.len()) > 1 {
        return (false, false);
    }
    if rp.len() > rq.len() {
        chain_eval(&rp, &rq)
    } else if rq.len() > rp.len() {
        chain_eval(&rq, &rp)
    } else {
        let (w1, s1) = chain_eval(&rp, &rq);
        // for equal root counts either side may lead the chain
        if w1 && s1 {
            return (true, true);
        }
        let (w2, s2) = chain_eval(&rq, &rp);
        (w1 || w2, s1 || s2)
    }
}
