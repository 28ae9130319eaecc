//! Colored multiset Eulerian polynomials.
//!
//! Two independent constructions are kept side by side: direct descent
//! enumeration over the permutation stream, and the h*-transform of the
//! Ehrhart polynomial of the corresponding product of dilated simplices.
//! The transform is the default (polynomial-time in the spec size); the
//! enumeration is the oracle. Brute-force lattice counting gives a third,
//! geometry-level check on the Ehrhart side.

use num::{BigInt, One, Zero};

use crate::combinatorics::{par_fold_permutations, statistics, MultisetSpec};
use crate::error::CmeError;
use crate::limits::Limits;
use crate::numeric::ceil_div;
use crate::poly::{dilated_simplex_ehrhart, hstar_from_ehrhart, IntPoly, Poly, RatPoly};
use crate::Result;

/// Which construction produced a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Enumeration,
    Transform,
}

/// A constructed Eulerian polynomial together with its invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianResult {
    pub spec: MultisetSpec,
    pub poly: IntPoly,
    pub method: Method,
    pub degree: usize,
    pub codegree: u64,
    pub symmetric_wrt_degree: bool,
}

impl EulerianResult {
    fn finish(spec: &MultisetSpec, poly: IntPoly, method: Method) -> Result<Self> {
        let (degree, codegree) = degree_and_codegree(spec);
        let actual = poly.degree().unwrap_or(0);
        if actual != degree {
            // The degree formula is part of the contract; a mismatch means a
            // construction bug, not a warning.
            return Err(CmeError::InvalidSpec(format!(
                "constructed degree {actual} contradicts the formula value {degree}"
            )));
        }
        if poly.coeff(0) != BigInt::one() || !poly.is_nonnegative() {
            return Err(CmeError::InvalidSpec(
                "Eulerian polynomial must have constant term 1 and nonnegative coefficients"
                    .into(),
            ));
        }
        if poly.eval(&BigInt::one()) != spec.permutation_count() {
            return Err(CmeError::InvalidSpec(
                "coefficient sum must equal the permutation count".into(),
            ));
        }
        let symmetric_wrt_degree = poly.palindromic(degree);
        Ok(EulerianResult {
            spec: spec.clone(),
            poly,
            method,
            degree,
            codegree,
            symmetric_wrt_degree,
        })
    }
}

/// Descent-count vector accumulated as machine integers; stream lengths are
/// capped well below u64 range.
fn descent_histogram(spec: &MultisetSpec, limits: &Limits) -> Result<Vec<u64>> {
    let m = spec.total() as usize;
    par_fold_permutations(
        spec,
        limits,
        vec![0u64; m + 1],
        |mut acc, pi| {
            let st = statistics(pi, None).expect("statistics on stream element");
            acc[st.des as usize] += 1;
            acc
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )
}

/// The Eulerian polynomial by full descent enumeration.
pub fn eulerian_by_enumeration(spec: &MultisetSpec, limits: &Limits) -> Result<EulerianResult> {
    let hist = descent_histogram(spec, limits)?;
    let poly = Poly::new(hist.into_iter().map(BigInt::from).collect());
    EulerianResult::finish(spec, poly, Method::Enumeration)
}

/// Ehrhart polynomial of the product of dilated simplices:
/// prod_k C(r_k t + m_k, m_k), of degree m.
pub fn ehrhart_product(spec: &MultisetSpec) -> RatPoly {
    let mut out = RatPoly::one();
    for (&mk, &rk) in spec.m().iter().zip(spec.r()) {
        out = out.mul(&dilated_simplex_ehrhart(rk, mk));
    }
    out
}

/// The Eulerian polynomial as the h*-vector of the simplex product.
pub fn eulerian_by_transform(spec: &MultisetSpec) -> Result<EulerianResult> {
    let ehrhart = ehrhart_product(spec);
    let poly = hstar_from_ehrhart(&ehrhart, spec.total() as usize)?;
    EulerianResult::finish(spec, poly, Method::Transform)
}

/// Degree m + 1 - max_k ceil((m_k+1)/r_k) and codegree max_k ceil((m_k+1)/r_k).
pub fn degree_and_codegree(spec: &MultisetSpec) -> (usize, u64) {
    let codegree = spec
        .m()
        .iter()
        .zip(spec.r())
        .map(|(&mk, &rk)| ceil_div(u64::from(mk) + 1, u64::from(rk)))
        .max()
        .unwrap();
    let degree = u64::from(spec.total()) + 1 - codegree;
    (degree as usize, codegree)
}

/// The symmetry characterization: max_k ceil((m_k+1)/r_k) * r_j = m_j + 1
/// for every j.
pub fn symmetry_criterion(spec: &MultisetSpec) -> bool {
    let (_, codegree) = degree_and_codegree(spec);
    spec.m()
        .iter()
        .zip(spec.r())
        .all(|(&mj, &rj)| codegree * u64::from(rj) == u64::from(mj) + 1)
}

/// Counts integer points of the t-th dilate of the simplex product by nested
/// enumeration: x_{jk} >= 0 and sum_k x_{jk} <= t r_j per block (strict
/// inequalities with x_{jk} >= 1 for the interior). The blocks are
/// independent, so the total is the product of per-block counts.
pub fn brute_lattice_count(
    spec: &MultisetSpec,
    t: u64,
    interior: bool,
    limits: &Limits,
) -> Result<BigInt> {
    let max_r = u64::from(spec.max_color());
    if t * max_r > limits.lattice_bound {
        return Err(CmeError::CapacityExceeded {
            required: (t * max_r) as u128,
            cap: limits.lattice_bound as u128,
        });
    }
    let mut total = BigInt::one();
    for (&mj, &rj) in spec.m().iter().zip(spec.r()) {
        let bound = t * u64::from(rj);
        let block = count_block(mj as usize, bound, interior);
        if block.is_zero() {
            return Ok(BigInt::zero());
        }
        total *= block;
    }
    Ok(total)
}

/// Nested enumeration of one simplex block.
fn count_block(dims: usize, bound: u64, interior: bool) -> BigInt {
    fn walk(remaining: usize, budget: i64, interior: bool) -> BigInt {
        if remaining == 0 {
            let ok = if interior { budget > 0 } else { budget >= 0 };
            return if ok { BigInt::one() } else { BigInt::zero() };
        }
        let low = if interior { 1 } else { 0 };
        let mut acc = BigInt::zero();
        let mut x = low;
        while x <= budget {
            acc += walk(remaining - 1, budget - x, interior);
            x += 1;
        }
        acc
    }
    walk(dims, bound as i64, interior)
}
