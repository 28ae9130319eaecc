//! s-Eulerian polynomials over inversion sequences, the lecture-hall
//! equalities, the exhaustive not-s-Eulerian search, and the symmetric
//! decomposition identities for the hat sequence.
//!
//! Ascent comparisons between e_i/s_i and e_{i+1}/s_{i+1} are done by exact
//! cross-multiplication; no rational division appears.

use num::{BigInt, One};

use crate::combinatorics::MultisetSpec;
use crate::error::CmeError;
use crate::eulerian::{degree_and_codegree, eulerian_by_transform};
use crate::limits::Limits;
use crate::analysis::symmetric_decomposition;
use crate::poly::{IntPoly, Poly};
use crate::Result;

/// A bounding sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SSequence(Vec<u32>);

impl SSequence {
    pub fn new(s: Vec<u32>) -> Result<Self> {
        if s.contains(&0) {
            return Err(CmeError::InvalidSpec(
                "s-sequence entries must be positive".into(),
            ));
        }
        Ok(SSequence(s))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of inversion sequences: prod s_i.
    pub fn count(&self) -> BigInt {
        self.0.iter().map(|&v| BigInt::from(v)).product()
    }
}

/// An integer sequence with 0 <= e_i <= s_i - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionSequence(Vec<u32>);

impl InversionSequence {
    pub fn new(e: Vec<u32>, s: &SSequence) -> Result<Self> {
        if e.len() != s.len() {
            return Err(CmeError::InvalidSpec(format!(
                "inversion sequence length {} does not match s length {}",
                e.len(),
                s.len()
            )));
        }
        for (i, (&ei, &si)) in e.iter().zip(s.entries()).enumerate() {
            if ei >= si {
                return Err(CmeError::InvalidSpec(format!(
                    "entry e_{} = {ei} violates bound s_{} = {si}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(InversionSequence(e))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

/// Ascent count: positions i in {0, ..., n-1} with e_i/s_i < e_{i+1}/s_{i+1},
/// where s_0 = 1 and e_0 = 0, compared by cross-multiplication.
pub fn asc_inversion(e: &InversionSequence, s: &SSequence) -> u32 {
    let mut asc = 0;
    let mut prev = (0u64, 1u64); // (e_0, s_0)
    for (&ei, &si) in e.entries().iter().zip(s.entries()) {
        let cur = (u64::from(ei), u64::from(si));
        // e_i / s_i < e_{i+1} / s_{i+1}  <=>  e_i * s_{i+1} < e_{i+1} * s_i
        if prev.0 * cur.1 < cur.0 * prev.1 {
            asc += 1;
        }
        prev = cur;
    }
    asc
}

/// The ascent generating polynomial over all inversion sequences bounded
/// by s.
pub fn s_eulerian_poly(s: &SSequence, limits: &Limits) -> Result<IntPoly> {
    let count = s.count();
    if count > BigInt::from(limits.enumeration_cap) {
        return Err(CmeError::CapacityExceeded {
            required: u128::try_from(&count).unwrap_or(u128::MAX),
            cap: limits.enumeration_cap,
        });
    }
    let n = s.len();
    let mut hist = vec![BigInt::from(0); n + 1];
    let mut e = vec![0u32; n];
    loop {
        // inline ascent count over the counter state
        let mut asc = 0usize;
        let mut prev = (0u64, 1u64);
        for (&ei, &si) in e.iter().zip(s.entries()) {
            let cur = (u64::from(ei), u64::from(si));
            if prev.0 * cur.1 < cur.0 * prev.1 {
                asc += 1;
            }
            prev = cur;
        }
        hist[asc] += 1;
        // mixed-radix increment
        let mut advanced = false;
        for i in (0..n).rev() {
            if e[i] + 1 < s.entries()[i] {
                e[i] += 1;
                for v in &mut e[i + 1..] {
                    *v = 0;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    Ok(Poly::new(hist))
}

/// r * hat-sequence truncated to length n, where hat_i = i for odd i and
/// i/2 for even i.
pub fn hat_sequence(n: usize, r: u32) -> SSequence {
    let s = (1..=n as u32)
        .map(|i| if i % 2 == 1 { i * r } else { i / 2 * r })
        .collect();
    SSequence(s)
}

/// One verified equality between an s-Eulerian polynomial and a colored
/// multiset Eulerian polynomial.
#[derive(Debug, Clone)]
pub struct EqualityCheck {
    pub label: String,
    pub s: SSequence,
    pub s_poly: IntPoly,
    pub spec: MultisetSpec,
    pub eulerian_poly: IntPoly,
    pub equal: bool,
}

/// The three lecture-hall equalities at size n and color count r.
pub fn verify_s_equalities(n: usize, r: u32, limits: &Limits) -> Result<Vec<EqualityCheck>> {
    if n == 0 {
        return Err(CmeError::InvalidSpec("n must be positive".into()));
    }
    let mut checks = Vec::new();
    let mut push = |label: String, s: SSequence, spec: MultisetSpec| -> Result<()> {
        let s_poly = s_eulerian_poly(&s, limits)?;
        let eulerian_poly = eulerian_by_transform(&spec)?.poly;
        checks.push(EqualityCheck {
            label,
            equal: s_poly == eulerian_poly,
            s,
            s_poly,
            spec,
            eulerian_poly,
        });
        Ok(())
    };

    // E_n^{(r, 2r, ..., nr)} = A for m = 1, colors r
    let ladder = SSequence((1..=n as u32).map(|i| i * r).collect());
    push(
        format!("E_{n}^(r,2r,...) = A(1^n, {r})"),
        ladder,
        MultisetSpec::new(vec![1; n], vec![r; n])?,
    )?;

    // E_{2n}^{r*hat} = A for m = 2, colors r
    push(
        format!("E_{}^(r*hat) = A(2^n, {r})", 2 * n),
        hat_sequence(2 * n, r),
        MultisetSpec::new(vec![2; n], vec![r; n])?,
    )?;

    // E_{2n-1}^{r*hat} = A for m = (2, ..., 2, 1), colors r
    let mut m = vec![2; n];
    m[n - 1] = 1;
    push(
        format!("E_{}^(r*hat) = A((2,..,2,1), {r})", 2 * n - 1),
        hat_sequence(2 * n - 1, r),
        MultisetSpec::new(m, vec![r; n])?,
    )?;

    Ok(checks)
}

/// One candidate from the factorization search.
#[derive(Debug, Clone)]
pub struct SearchCandidate {
    pub s: SSequence,
    pub poly: IntPoly,
    pub matched: bool,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub target: IntPoly,
    pub candidates: Vec<SearchCandidate>,
    pub matches: Vec<SSequence>,
    /// The reduction justifying the candidate cut: sequences with two
    /// adjacent ones collapse, so one optional 1 per gap is exhaustive.
    pub pruning_rule: &'static str,
}

/// Exhaustive search for sequences s with E^s equal to the target.
///
/// Any matching s must satisfy prod s_i = target(1), so s is an ordered
/// factorization of that number into factors >= 2 with ones inserted in the
/// gaps. Inserting a 1 next to an existing 1 never changes the polynomial,
/// so at most one 1 per gap (ends included) covers every case.
pub fn not_s_eulerian_search(target: &IntPoly, limits: &Limits) -> Result<SearchReport> {
    let total = target.eval(&BigInt::one());
    let total: u64 = u64::try_from(&total)
        .map_err(|_| CmeError::CapacityExceeded {
            required: u128::MAX,
            cap: limits.enumeration_cap,
        })?;
    if u128::from(total) > limits.enumeration_cap {
        return Err(CmeError::CapacityExceeded {
            required: u128::from(total),
            cap: limits.enumeration_cap,
        });
    }
    let mut candidates = Vec::new();
    if total == 1 {
        // the family {(), (1), (1,1), ...} all give the constant 1; keep the
        // canonical single-entry representative
        let s = SSequence(vec![1]);
        let poly = s_eulerian_poly(&s, limits)?;
        let matched = &poly == target;
        candidates.push(SearchCandidate { s, poly, matched });
    } else {
        for factors in ordered_factorizations(total, limits.enumeration_cap)? {
            let gaps = factors.len() + 1;
            for mask in 0u32..(1 << gaps) {
                let mut s = Vec::new();
                for (i, &f) in factors.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        s.push(1);
                    }
                    s.push(f as u32);
                }
                if mask & (1 << factors.len()) != 0 {
                    s.push(1);
                }
                let s = SSequence(s);
                let poly = s_eulerian_poly(&s, limits)?;
                let matched = &poly == target;
                candidates.push(SearchCandidate { s, poly, matched });
            }
        }
    }
    let mut matches: Vec<SSequence> = candidates
        .iter()
        .filter(|c| c.matched)
        .map(|c| c.s.clone())
        .collect();
    matches.sort();
    matches.dedup();
    Ok(SearchReport {
        target: target.clone(),
        candidates,
        matches,
        pruning_rule:
            "sequences with adjacent ones reduce to a listed candidate (1-insertion invariance)",
    })
}

/// All ordered factorizations of n into factors >= 2, capped.
fn ordered_factorizations(n: u64, cap: u128) -> Result<Vec<Vec<u64>>> {
    fn walk(n: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>, cap: u128) -> Result<()> {
        if n == 1 {
            if out.len() as u128 >= cap {
                return Err(CmeError::CapacityExceeded {
                    required: out.len() as u128 + 1,
                    cap,
                });
            }
            out.push(prefix.clone());
            return Ok(());
        }
        for d in 2..=n {
            if n.is_multiple_of(d) {
                prefix.push(d);
                walk(n / d, prefix, out, cap)?;
                prefix.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(n, &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}

/// The decomposition identities for A((2,...,2,1), 1): with d its degree and
/// (a, b) its symmetric decomposition, a = E_{2n-1}^{s~} where s~ is the
/// (2n-1)-term hat sequence with its last entry lowered by one, and
/// b = E_{2n-2}^{hat}.
#[derive(Debug, Clone)]
pub struct DecompositionRemarkReport {
    pub n: usize,
    pub a: IntPoly,
    pub b: IntPoly,
    /// None when n = 1 (the modified sequence would need a zero entry).
    pub a_check: Option<EqualityCheck>,
    pub b_check: Option<EqualityCheck>,
    pub passed: bool,
}

pub fn verify_decomposition_remark(n: usize, limits: &Limits) -> Result<DecompositionRemarkReport> {
    if n == 0 {
        return Err(CmeError::InvalidSpec("n must be positive".into()));
    }
    let mut m = vec![2u32; n];
    m[n - 1] = 1;
    let spec = MultisetSpec::new(m, vec![1; n])?;
    let result = eulerian_by_transform(&spec)?;
    let (degree, _) = degree_and_codegree(&spec);
    let decomposition = symmetric_decomposition(&result.poly, degree)?;
    let (a, b) = (decomposition.a, decomposition.b);

    if n == 1 {
        // A = 1: a = 1, b = 0, and there is no meaningful hat comparison
        let passed = a == IntPoly::one() && b.is_zero();
        return Ok(DecompositionRemarkReport {
            n,
            a,
            b,
            a_check: None,
            b_check: None,
            passed,
        });
    }

    let hat = hat_sequence(2 * n - 1, 1);
    let mut tilde = hat.entries().to_vec();
    let last = tilde.len() - 1;
    tilde[last] -= 1; // entry 2n-1 becomes 2n-2
    let tilde = SSequence::new(tilde)?;
    let a_poly = s_eulerian_poly(&tilde, limits)?;
    let b_poly = s_eulerian_poly(&hat_sequence(2 * n - 2, 1), limits)?;

    let a_check = EqualityCheck {
        label: format!("a = E_{}^(hat - e_{})", 2 * n - 1, 2 * n - 1),
        equal: a_poly == a,
        s: tilde,
        s_poly: a_poly,
        spec: spec.clone(),
        eulerian_poly: a.clone(),
    };
    let b_check = EqualityCheck {
        label: format!("b = E_{}^(hat)", 2 * n - 2),
        equal: b_poly == b,
        s: hat_sequence(2 * n - 2, 1),
        s_poly: b_poly,
        spec,
        eulerian_poly: b.clone(),
    };
    let passed = a_check.equal && b_check.equal;
    Ok(DecompositionRemarkReport {
        n,
        a,
        b,
        a_check: Some(a_check),
        b_check: Some(b_check),
        passed,
    })
}
