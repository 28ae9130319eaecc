//! Barred permutations, proof weights, and truncated-series verification of
//! the multivariate generating-function identities.
//!
//! Each identity is checked by expanding both sides as `TruncatedSeries`
//! under identical caps. The left side is assembled permutation by
//! permutation: the numerator monomial of the closed-form term times one
//! geometric series per denominator factor, every factor carrying the
//! designated truncation variable. The right side is built from products of
//! Gaussian binomials. Ascent-based statistics use strict ascents: a space
//! holding equal adjacent letters needs no bar, because letters between bars
//! only have to be weakly increasing.

use std::collections::BTreeMap;

use num::{BigInt, One};
use rayon::prelude::*;

use crate::combinatorics::{
    enumerate_colored_permutations, par_fold_permutations, statistics, ColoredPermutation,
    MultisetSpec,
};
use crate::error::CmeError;
use crate::limits::Limits;
use crate::numeric::binomial;
use crate::poly::q_binomial;
use crate::series::TruncatedSeries;
use crate::Result;

/// The identities the verifier knows how to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    /// MacMahon's univariate identity, r = 1.
    Classic,
    /// Signed-multiset identity with the double-binomial right side, r = 2.
    LinA,
    /// Signed-multiset identity with the C(2t+m, m) right side, r = 2.
    LinB,
    /// The full multivariate identity in z_1..z_n, z_{m+1}.
    MacmahonMv,
    /// The (x, q) specialization with fdmaj on the enumerator, constant r.
    Fdmaj,
    /// The ascent analog of the multivariate identity.
    AscentMv,
    /// Exact bivariate equality of (asc, famaj) and (des, fdmaj), r = 2.
    Equidistribution,
    /// The second multivariate identity with colored-letter variables.
    SecondMv,
    /// Its (x, q) specialization, constant r.
    SecondQ,
    /// The flag-barred identity in z_0, z_1..z_n, constant r.
    Flag,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 10] = [
        IdentityKind::Classic,
        IdentityKind::LinA,
        IdentityKind::LinB,
        IdentityKind::MacmahonMv,
        IdentityKind::Fdmaj,
        IdentityKind::AscentMv,
        IdentityKind::Equidistribution,
        IdentityKind::SecondMv,
        IdentityKind::SecondQ,
        IdentityKind::Flag,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityKind::Classic => "classic",
            IdentityKind::LinA => "lin_a",
            IdentityKind::LinB => "lin_b",
            IdentityKind::MacmahonMv => "macmahon_mv",
            IdentityKind::Fdmaj => "fdmaj",
            IdentityKind::AscentMv => "ascent_mv",
            IdentityKind::Equidistribution => "equidistribution",
            IdentityKind::SecondMv => "second_mv",
            IdentityKind::SecondQ => "second_q",
            IdentityKind::Flag => "flag",
        }
    }

    pub fn from_name(name: &str) -> Option<IdentityKind> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }
}

/// Truncation caps: degree of the truncation variable (t-cap) and of every
/// other tracked variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyCaps {
    pub t_cap: u32,
    pub var_cap: u32,
}

impl Default for VerifyCaps {
    fn default() -> Self {
        VerifyCaps {
            t_cap: 4,
            var_cap: 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityStatus {
    Match,
    Mismatch {
        exponents: Vec<u32>,
        lhs: BigInt,
        rhs: BigInt,
    },
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub kind: IdentityKind,
    pub spec: MultisetSpec,
    pub caps: VerifyCaps,
    /// Names of the tracked variables, in exponent-vector order.
    pub variables: Vec<String>,
    pub status: IdentityStatus,
}

impl IdentityReport {
    pub fn matched(&self) -> bool {
        self.status == IdentityStatus::Match
    }
}

// ---------------------------------------------------------------------------
// Barred permutations
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BarMode {
    Barred,
    Flag,
}

/// A permutation with bars. `bars[i]` is the number of bars in space i:
/// space 0 sits before the first letter, space i between letters i and i+1,
/// space m before the sentinel. Bars after the sentinel do not exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarredPermutation {
    base: ColoredPermutation,
    bars: Vec<u32>,
}

impl BarredPermutation {
    pub fn new(base: ColoredPermutation, bars: Vec<u32>, mode: BarMode) -> Result<Self> {
        let m = base.len();
        if bars.len() != m + 1 {
            return Err(CmeError::ModeMismatch(format!(
                "expected {} bar spaces, got {}",
                m + 1,
                bars.len()
            )));
        }
        let sigma = BarredPermutation { base, bars };
        sigma.validate(mode)?;
        Ok(sigma)
    }

    fn validate(&self, mode: BarMode) -> Result<()> {
        let st = statistics(&self.base, None)?;
        match mode {
            BarMode::Barred => {
                for &j in &st.des_set {
                    if self.bars[j as usize] == 0 {
                        return Err(CmeError::ModeMismatch(format!(
                            "descent space {j} has no bar"
                        )));
                    }
                }
            }
            BarMode::Flag => {
                let r = self.base.spec().constant_color().ok_or_else(|| {
                    CmeError::ModeMismatch("flag mode requires a constant color vector".into())
                })?;
                for j in 1..=self.base.len() {
                    let a = st.color_changes[j - 1];
                    let b = self.bars[j];
                    if b % r != a % r {
                        return Err(CmeError::ModeMismatch(format!(
                            "space {j} holds {b} bars, not congruent to color change {a} mod {r}"
                        )));
                    }
                    if a == 0 && st.des_set.contains(&(j as u32)) && b < r {
                        return Err(CmeError::ModeMismatch(format!(
                            "descent space {j} with zero color change needs at least {r} bars"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &ColoredPermutation {
        &self.base
    }

    pub fn bars(&self) -> &[u32] {
        &self.bars
    }

    pub fn total_bars(&self) -> u32 {
        self.bars.iter().sum()
    }
}

impl std::fmt::Display for BarredPermutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.base.len() {
            for _ in 0..self.bars[i] {
                write!(f, "|")?;
            }
            write!(f, "{}", self.base.letters()[i])?;
        }
        for _ in 0..self.bars[self.base.len()] {
            write!(f, "|")?;
        }
        write!(f, "{}", self.base.spec().sentinel())
    }
}

/// Every legal bar placement on `pi` with at most `max_bars` bars in total,
/// in lexicographic order of the bar vector.
pub fn enumerate_barred(
    pi: &ColoredPermutation,
    max_bars: u32,
    mode: BarMode,
    limits: &Limits,
) -> Result<Vec<BarredPermutation>> {
    let st = statistics(pi, None)?;
    let m = pi.len();
    let r = match mode {
        BarMode::Flag => pi.spec().constant_color().ok_or_else(|| {
            CmeError::ModeMismatch("flag mode requires a constant color vector".into())
        })?,
        BarMode::Barred => 1,
    };
    // per-space minimum and step
    let mut base = vec![0u32; m + 1];
    let mut step = vec![1u32; m + 1];
    for j in 1..=m {
        let descent = st.des_set.contains(&(j as u32));
        match mode {
            BarMode::Barred => {
                base[j] = u32::from(descent);
            }
            BarMode::Flag => {
                let a = st.color_changes[j - 1];
                base[j] = if a == 0 && descent { r } else { a };
                step[j] = r;
            }
        }
    }
    let mut out = Vec::new();
    let mut bars = vec![0u32; m + 1];
    fn walk(
        space: usize,
        budget: u32,
        base: &[u32],
        step: &[u32],
        bars: &mut Vec<u32>,
        pi: &ColoredPermutation,
        out: &mut Vec<BarredPermutation>,
        cap: u128,
    ) -> Result<()> {
        if space == bars.len() {
            if out.len() as u128 >= cap {
                return Err(CmeError::CapacityExceeded {
                    required: out.len() as u128 + 1,
                    cap,
                });
            }
            out.push(BarredPermutation {
                base: pi.clone(),
                bars: bars.clone(),
            });
            return Ok(());
        }
        let mut d = base[space];
        while d <= budget {
            bars[space] = d;
            walk(space + 1, budget - d, base, step, bars, pi, out, cap)?;
            d += step[space];
        }
        bars[space] = 0;
        Ok(())
    }
    walk(
        0,
        max_bars,
        &base,
        &step,
        &mut bars,
        pi,
        &mut out,
        limits.enumeration_cap,
    )?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightScheme {
    /// z_{pi_1}^{c_1-1}...  *  prod over spaces of (z_{pi_i}^{r}...z_{m+1})^{d_i}.
    Thm1,
    /// y-color counts and colored-letter variables z_{k^l}.
    Thm2,
    /// Flag weight prod (z_0 z_{pi_1}...z_{pi_i})^{b_i}, including space 0.
    Flag,
}

/// Variable names and the exponent vector of the weight monomial assigned to
/// a barred permutation by the respective proof.
pub fn weight(sigma: &BarredPermutation, scheme: WeightScheme) -> Result<(Vec<String>, Vec<u32>)> {
    let pi = &sigma.base;
    let spec = pi.spec();
    let n = spec.n();
    let m = pi.len();
    match scheme {
        WeightScheme::Thm1 => {
            // vars: z_1..z_n, z_{m+1}
            let names = thm1_names(spec);
            let mut exps = vec![0u32; n + 1];
            for l in pi.letters() {
                exps[l.value as usize - 1] += l.color - 1;
            }
            let factors = thm1_suffix_factors(pi);
            for i in 1..=m + 1 {
                let d = sigma.bars[i - 1];
                for (slot, inc) in exps.iter_mut().zip(&factors[i]) {
                    *slot += inc * d;
                }
            }
            Ok((names, exps))
        }
        WeightScheme::Thm2 => {
            let names = thm2_names(spec);
            let mut exps = vec![0u32; names.len()];
            for l in pi.letters() {
                exps[l.color as usize - 1] += 1;
            }
            let factors = thm2_suffix_factors(pi);
            for i in 1..=m + 1 {
                let d = sigma.bars[i - 1];
                for (slot, inc) in exps.iter_mut().zip(&factors[i]) {
                    *slot += inc * d;
                }
            }
            Ok((names, exps))
        }
        WeightScheme::Flag => {
            spec.constant_color().ok_or_else(|| {
                CmeError::ModeMismatch("flag weight requires a constant color vector".into())
            })?;
            let names = flag_names(spec);
            let mut exps = vec![0u32; n + 1];
            let prefixes = flag_prefix_factors(pi);
            for i in 0..=m {
                let b = sigma.bars[i];
                for (slot, inc) in exps.iter_mut().zip(&prefixes[i]) {
                    *slot += inc * b;
                }
            }
            Ok((names, exps))
        }
    }
}

fn thm1_names(spec: &MultisetSpec) -> Vec<String> {
    let mut names: Vec<String> = (1..=spec.n()).map(|k| format!("z{k}")).collect();
    names.push(format!("z{}", spec.total() + 1));
    names
}

/// u_i = z_{pi_i}^{r_{pi_i}} ... z_{pi_m}^{r_{pi_m}} z_{m+1} for i in [m+1],
/// indexed 1..=m+1 (slot 0 unused).
fn thm1_suffix_factors(pi: &ColoredPermutation) -> Vec<Vec<u32>> {
    let spec = pi.spec();
    let n = spec.n();
    let m = pi.len();
    let mut factors = vec![vec![0u32; n + 1]; m + 2];
    factors[m + 1][n] = 1; // z_{m+1}
    for i in (1..=m).rev() {
        let mut f = factors[i + 1].clone();
        let v = pi.letters()[i - 1].value as usize - 1;
        f[v] += spec.r()[v];
        factors[i] = f;
    }
    factors
}

fn thm2_names(spec: &MultisetSpec) -> Vec<String> {
    let big_r = spec.max_color();
    let mut names: Vec<String> = (1..=big_r).map(|p| format!("y{p}")).collect();
    for k in 1..=spec.n() {
        for l in 1..=spec.r()[k - 1] {
            names.push(format!("z{k}^{l}"));
        }
    }
    names.push(format!("z{}", spec.total() + 1));
    names
}

/// Slot of z_{k^l} in the thm2 layout.
fn thm2_z_slot(spec: &MultisetSpec, value: u32, color: u32) -> usize {
    let big_r = spec.max_color() as usize;
    let offset: u32 = spec.r()[..value as usize - 1].iter().sum();
    big_r + offset as usize + color as usize - 1
}

/// u_i with colored-letter variables, indexed as in `thm1_suffix_factors`.
fn thm2_suffix_factors(pi: &ColoredPermutation) -> Vec<Vec<u32>> {
    let spec = pi.spec();
    let m = pi.len();
    let width = thm2_names(spec).len();
    let mut factors = vec![vec![0u32; width]; m + 2];
    factors[m + 1][width - 1] = 1; // z_{m+1}
    for i in (1..=m).rev() {
        let mut f = factors[i + 1].clone();
        let l = pi.letters()[i - 1];
        f[thm2_z_slot(spec, l.value, l.color)] += spec.r()[l.value as usize - 1];
        factors[i] = f;
    }
    factors
}

fn flag_names(spec: &MultisetSpec) -> Vec<String> {
    let mut names = vec!["z0".to_string()];
    names.extend((1..=spec.n()).map(|k| format!("z{k}")));
    names
}

/// v_i = z_0 z_{pi_1} ... z_{pi_i} for i in 0..=m.
fn flag_prefix_factors(pi: &ColoredPermutation) -> Vec<Vec<u32>> {
    let n = pi.spec().n();
    let m = pi.len();
    let mut prefixes = vec![vec![0u32; n + 1]; m + 1];
    prefixes[0][0] = 1; // z_0
    for i in 1..=m {
        let mut f = prefixes[i - 1].clone();
        f[pi.letters()[i - 1].value as usize] += 1;
        prefixes[i] = f;
    }
    prefixes
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Expands both sides of the chosen identity under the caps and diffs them.
pub fn verify_identity(
    kind: IdentityKind,
    spec: &MultisetSpec,
    caps: VerifyCaps,
    limits: &Limits,
) -> Result<IdentityReport> {
    validate_kind(kind, spec)?;
    let (variables, lhs, rhs) = match kind {
        IdentityKind::Classic | IdentityKind::LinA | IdentityKind::LinB => {
            let vars = vec!["x".to_string()];
            let lhs = univariate_lhs(spec, caps, limits)?;
            let rhs = univariate_rhs(kind, spec, caps);
            (vars, lhs, rhs)
        }
        IdentityKind::MacmahonMv => mv_sides(spec, caps, limits, false)?,
        IdentityKind::AscentMv => mv_sides(spec, caps, limits, true)?,
        IdentityKind::Fdmaj => fdmaj_sides(spec, caps, limits, false)?,
        IdentityKind::SecondQ => fdmaj_sides(spec, caps, limits, true)?,
        IdentityKind::SecondMv => second_mv_sides(spec, caps, limits)?,
        IdentityKind::Flag => flag_sides(spec, caps, limits)?,
        IdentityKind::Equidistribution => return equidistribution(spec, caps, limits),
    };
    let status = match lhs.first_difference(&rhs) {
        None => IdentityStatus::Match,
        Some((exponents, lhs, rhs)) => IdentityStatus::Mismatch { exponents, lhs, rhs },
    };
    Ok(IdentityReport {
        kind,
        spec: spec.clone(),
        caps,
        variables,
        status,
    })
}

fn validate_kind(kind: IdentityKind, spec: &MultisetSpec) -> Result<()> {
    let constant = spec.constant_color();
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(CmeError::InvalidKindSpec(format!(
                "{} requires {what}",
                kind.name()
            )))
        }
    };
    match kind {
        IdentityKind::Classic => need(constant == Some(1), "r = 1"),
        IdentityKind::LinA | IdentityKind::LinB | IdentityKind::Equidistribution => {
            need(constant == Some(2), "r = 2")
        }
        IdentityKind::Fdmaj | IdentityKind::SecondQ | IdentityKind::Flag => {
            need(constant.is_some(), "a constant color vector")
        }
        IdentityKind::MacmahonMv | IdentityKind::AscentMv | IdentityKind::SecondMv => Ok(()),
    }
}

/// Parallel sum of per-permutation series terms.
fn sum_over_permutations<F>(
    spec: &MultisetSpec,
    caps_vec: Vec<u32>,
    limits: &Limits,
    term: F,
) -> Result<TruncatedSeries>
where
    F: Fn(&ColoredPermutation) -> TruncatedSeries + Sync + Send,
{
    par_fold_permutations(
        spec,
        limits,
        TruncatedSeries::zero(caps_vec),
        |mut acc, pi| {
            acc.add_assign(&term(pi));
            acc
        },
        |mut a, b| {
            a.add_assign(&b);
            a
        },
    )
}

/// Left side of the univariate identities: each permutation contributes
/// x^{des} / (1-x)^{m+1}.
fn univariate_lhs(
    spec: &MultisetSpec,
    caps: VerifyCaps,
    limits: &Limits,
) -> Result<TruncatedSeries> {
    let caps_vec = vec![caps.t_cap];
    let geom = TruncatedSeries::geometric(caps_vec.clone(), &[1], 0);
    let mut denom = TruncatedSeries::one(caps_vec.clone());
    for _ in 0..=spec.total() {
        denom = denom.mul(&geom);
    }
    let hist = par_fold_permutations(
        spec,
        limits,
        vec![0u64; spec.total() as usize + 1],
        |mut acc, pi| {
            acc[statistics(pi, None).unwrap().des as usize] += 1;
            acc
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )?;
    let mut numer = TruncatedSeries::zero(caps_vec);
    for (d, count) in hist.into_iter().enumerate() {
        numer.add_term(&[d as u32], BigInt::from(count));
    }
    Ok(numer.mul(&denom))
}

fn univariate_rhs(kind: IdentityKind, spec: &MultisetSpec, caps: VerifyCaps) -> TruncatedSeries {
    let mut rhs = TruncatedSeries::zero(vec![caps.t_cap]);
    for t in 0..=i64::from(caps.t_cap) {
        let mut c = BigInt::one();
        for &mk in spec.m() {
            let mk = i64::from(mk);
            let factor = match kind {
                IdentityKind::Classic => binomial(t + mk, mk),
                IdentityKind::LinB => binomial(2 * t + mk, mk),
                IdentityKind::LinA => (0..=mk)
                    .map(|i| binomial(t + mk - i, mk - i) * binomial(t + i - 1, i))
                    .sum(),
                _ => unreachable!("univariate right side"),
            };
            c *= factor;
        }
        rhs.add_term(&[t as u32], c);
    }
    rhs
}

/// Sides of the multivariate identity (descent version) or its ascent
/// analog. Variables: z_1..z_n then x = z_{m+1}.
fn mv_sides(
    spec: &MultisetSpec,
    caps: VerifyCaps,
    limits: &Limits,
    ascents: bool,
) -> Result<(Vec<String>, TruncatedSeries, TruncatedSeries)> {
    let n = spec.n();
    let mut caps_vec = vec![caps.var_cap; n];
    caps_vec.push(caps.t_cap);
    let names = thm1_names(spec);

    let r = spec.r().to_vec();
    let lhs = sum_over_permutations(spec, caps_vec.clone(), limits, |pi| {
        let st = statistics(pi, None).unwrap();
        let factors = thm1_suffix_factors(pi);
        let mut numer = vec![0u32; n + 1];
        for l in pi.letters() {
            let slot = l.value as usize - 1;
            if ascents {
                numer[slot] += r[slot] - l.color;
            } else {
                numer[slot] += l.color - 1;
            }
        }
        let marked = if ascents {
            &st.asc_strict_set
        } else {
            &st.des_set
        };
        for &j in marked {
            for (slot, inc) in numer.iter_mut().zip(&factors[j as usize + 1]) {
                *slot += inc;
            }
        }
        let mut term = TruncatedSeries::monomial(caps_vec.clone(), &numer, BigInt::one());
        for factor in factors.iter().skip(1) {
            term = term.mul(&TruncatedSeries::geometric(caps_vec.clone(), factor, n));
        }
        term
    })?;

    let mut rhs = TruncatedSeries::zero(caps_vec.clone());
    for t in 0..=i64::from(caps.t_cap) {
        let mut x_t = vec![0u32; n + 1];
        x_t[n] = t as u32;
        let mut term = TruncatedSeries::monomial(caps_vec.clone(), &x_t, BigInt::one());
        for (k, (&mk, &rk)) in spec.m().iter().zip(spec.r()).enumerate() {
            let top = if ascents {
                i64::from(rk) * t + i64::from(rk) - 2 + i64::from(mk)
            } else {
                i64::from(rk) * t + i64::from(mk)
            };
            let qb = q_binomial(top, i64::from(mk));
            term = term.mul(&TruncatedSeries::from_univariate(caps_vec.clone(), &qb, k, 1));
        }
        rhs.add_assign(&term);
    }
    Ok((names, lhs, rhs))
}

/// Sides of the (x, q) specializations for constant r: the fdmaj corollary
/// or the second identity's q-analog. Variables: x then q.
fn fdmaj_sides(
    spec: &MultisetSpec,
    caps: VerifyCaps,
    limits: &Limits,
    second: bool,
) -> Result<(Vec<String>, TruncatedSeries, TruncatedSeries)> {
    let r = spec.constant_color().unwrap();
    let caps_vec = vec![caps.t_cap, caps.var_cap];
    let names = vec!["x".to_string(), "q".to_string()];

    // numerator sum_pi x^des q^fdmaj, then one geometric factor per
    // denominator term (1 - q^{ri} x), i = 0..m
    let numer = sum_over_permutations(spec, caps_vec.clone(), limits, |pi| {
        let st = statistics(pi, Some(r)).unwrap();
        TruncatedSeries::monomial(
            caps_vec.clone(),
            &[st.des, st.fdmaj.unwrap() as u32],
            BigInt::one(),
        )
    })?;
    let mut lhs = numer;
    for i in 0..=spec.total() {
        lhs = lhs.mul(&TruncatedSeries::geometric(caps_vec.clone(), &[1, r * i], 0));
    }

    let mut rhs = TruncatedSeries::zero(caps_vec.clone());
    for t in 0..=i64::from(caps.t_cap) {
        let mut term =
            TruncatedSeries::monomial(caps_vec.clone(), &[t as u32, 0], BigInt::one());
        for &mk in spec.m() {
            let factor = if second {
                second_q_factor(t, mk, r, &caps_vec)
            } else {
                let qb = q_binomial(i64::from(r) * t + i64::from(mk), i64::from(mk));
                TruncatedSeries::from_univariate(caps_vec.clone(), &qb, 1, 1)
            };
            term = term.mul(&factor);
        }
        rhs.add_assign(&term);
    }
    Ok((names, lhs, rhs))
}

/// One k-factor of the second identity's q-analog right side:
/// sum over color compositions of prod_p [t + floor((1-p)/p) + i_p, i_p]_{q^r}
/// q^{(p-1) i_p}.
fn second_q_factor(t: i64, mk: u32, r: u32, caps_vec: &[u32]) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(caps_vec.to_vec());
    for comp in compositions(mk, r) {
        let mut term = TruncatedSeries::one(caps_vec.to_vec());
        for (p_idx, &ip) in comp.iter().enumerate() {
            let p = p_idx as i64 + 1;
            let floor_term = if p == 1 { 0 } else { -1 };
            let qb = q_binomial(t + floor_term + i64::from(ip), i64::from(ip));
            // q -> q^r on the binomial, plus the q^{(p-1) i_p} prefactor
            let injected = TruncatedSeries::from_univariate(caps_vec.to_vec(), &qb, 1, r);
            let prefactor = [0u32, (p as u32 - 1) * ip];
            term = term.mul(&injected).mul_monomial(&prefactor, &BigInt::one());
        }
        acc.add_assign(&term);
    }
    acc
}

/// All (i_1, ..., i_r) with nonnegative entries summing to mk.
fn compositions(mk: u32, r: u32) -> Vec<Vec<u32>> {
    fn walk(slots: u32, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=remaining {
            prefix.push(v);
            walk(slots - 1, remaining - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    walk(r, mk, &mut Vec::new(), &mut out);
    out
}

/// Sides of the second multivariate identity. Variables: y_1..y_R, then
/// z_{k^l} blocks, then x = z_{m+1}.
fn second_mv_sides(
    spec: &MultisetSpec,
    caps: VerifyCaps,
    limits: &Limits,
) -> Result<(Vec<String>, TruncatedSeries, TruncatedSeries)> {
    let names = thm2_names(spec);
    let width = names.len();
    let x_slot = width - 1;
    let mut caps_vec = vec![caps.var_cap; width];
    caps_vec[x_slot] = caps.t_cap;

    let lhs = sum_over_permutations(spec, caps_vec.clone(), limits, |pi| {
        let st = statistics(pi, None).unwrap();
        let factors = thm2_suffix_factors(pi);
        let mut numer = vec![0u32; width];
        for l in pi.letters() {
            numer[l.color as usize - 1] += 1;
        }
        for &j in &st.des_set {
            for (slot, inc) in numer.iter_mut().zip(&factors[j as usize + 1]) {
                *slot += inc;
            }
        }
        let mut term = TruncatedSeries::monomial(caps_vec.clone(), &numer, BigInt::one());
        for factor in factors.iter().skip(1) {
            term = term.mul(&TruncatedSeries::geometric(caps_vec.clone(), factor, x_slot));
        }
        term
    })?;

    let mut rhs = TruncatedSeries::zero(caps_vec.clone());
    for t in 0..=i64::from(caps.t_cap) {
        let mut x_t = vec![0u32; width];
        x_t[x_slot] = t as u32;
        let mut term = TruncatedSeries::monomial(caps_vec.clone(), &x_t, BigInt::one());
        for (k, (&mk, &rk)) in spec.m().iter().zip(spec.r()).enumerate() {
            let mut k_factor = TruncatedSeries::zero(caps_vec.clone());
            for comp in compositions(mk, rk) {
                let mut c_term = TruncatedSeries::one(caps_vec.clone());
                for (l_idx, &il) in comp.iter().enumerate() {
                    let l = l_idx as i64 + 1;
                    let floor_term = if l == 1 { 0 } else { -1 };
                    let qb = q_binomial(t + floor_term + i64::from(il), i64::from(il));
                    let z_slot = thm2_z_slot(spec, k as u32 + 1, l as u32);
                    let injected =
                        TruncatedSeries::from_univariate(caps_vec.clone(), &qb, z_slot, rk);
                    let mut y_exp = vec![0u32; width];
                    y_exp[l_idx] = il;
                    c_term = c_term.mul(&injected).mul_monomial(&y_exp, &BigInt::one());
                }
                k_factor.add_assign(&c_term);
            }
            term = term.mul(&k_factor);
        }
        rhs.add_assign(&term);
    }
    Ok((names, lhs, rhs))
}

/// Sides of the flag-barred identity. Variables: z_0 (truncation) then
/// z_1..z_n.
fn flag_sides(
    spec: &MultisetSpec,
    caps: VerifyCaps,
    limits: &Limits,
) -> Result<(Vec<String>, TruncatedSeries, TruncatedSeries)> {
    let r = spec.constant_color().unwrap();
    let n = spec.n();
    let mut caps_vec = vec![caps.var_cap; n + 1];
    caps_vec[0] = caps.t_cap;
    let names = flag_names(spec);

    let lhs = sum_over_permutations(spec, caps_vec.clone(), limits, |pi| {
        let st = statistics(pi, None).unwrap();
        let prefixes = flag_prefix_factors(pi);
        let m = pi.len();
        let mut numer = vec![0u32; n + 1];
        for i in 1..=m {
            let a = st.color_changes[i - 1];
            let weight = if a == 0 && st.des_set.contains(&(i as u32)) {
                r
            } else {
                a
            };
            for (slot, inc) in numer.iter_mut().zip(&prefixes[i]) {
                *slot += inc * weight;
            }
        }
        let mut term = TruncatedSeries::monomial(caps_vec.clone(), &numer, BigInt::one());
        term = term.mul(&TruncatedSeries::geometric(caps_vec.clone(), &prefixes[0], 0));
        for prefix in prefixes.iter().skip(1) {
            let u: Vec<u32> = prefix.iter().map(|e| e * r).collect();
            term = term.mul(&TruncatedSeries::geometric(caps_vec.clone(), &u, 0));
        }
        term
    })?;

    let rhs = flag_rhs(spec, &caps_vec, caps.t_cap);
    Ok((names, lhs, rhs))
}

fn flag_rhs(spec: &MultisetSpec, caps_vec: &[u32], t_cap: u32) -> TruncatedSeries {
    let n = spec.n();
    let mut rhs = TruncatedSeries::zero(caps_vec.to_vec());
    for t in 0..=i64::from(t_cap) {
        let mut z0_t = vec![0u32; n + 1];
        z0_t[0] = t as u32;
        let mut term = TruncatedSeries::monomial(caps_vec.to_vec(), &z0_t, BigInt::one());
        for (k, &mk) in spec.m().iter().enumerate() {
            let qb = q_binomial(t + i64::from(mk), i64::from(mk));
            term = term.mul(&TruncatedSeries::from_univariate(
                caps_vec.to_vec(),
                &qb,
                k + 1,
                1,
            ));
        }
        rhs.add_assign(&term);
    }
    rhs
}

/// The flag identity's right side alone; the identity asserts it does not
/// depend on the (constant) color count.
pub fn flag_right_side(spec: &MultisetSpec, caps: VerifyCaps) -> Result<TruncatedSeries> {
    validate_kind(IdentityKind::Flag, spec)?;
    let n = spec.n();
    let mut caps_vec = vec![caps.var_cap; n + 1];
    caps_vec[0] = caps.t_cap;
    Ok(flag_rhs(spec, &caps_vec, caps.t_cap))
}

/// Exact bivariate equality of (asc, famaj) against (des, fdmaj); no
/// truncation is involved, the caps are recorded for the report only.
fn equidistribution(
    spec: &MultisetSpec,
    caps: VerifyCaps,
    limits: &Limits,
) -> Result<IdentityReport> {
    let r = spec.constant_color().unwrap();
    let fold = |use_ascents: bool| -> Result<BTreeMap<(u32, u64), u64>> {
        par_fold_permutations(
            spec,
            limits,
            BTreeMap::new(),
            |mut acc: BTreeMap<(u32, u64), u64>, pi| {
                let st = statistics(pi, Some(r)).unwrap();
                let key = if use_ascents {
                    (st.asc_strict_set.len() as u32, st.famaj.unwrap())
                } else {
                    (st.des, st.fdmaj.unwrap())
                };
                *acc.entry(key).or_insert(0) += 1;
                acc
            },
            |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            },
        )
    };
    let asc_side = fold(true)?;
    let des_side = fold(false)?;
    let mut status = IdentityStatus::Match;
    let mut keys: Vec<&(u32, u64)> = asc_side.keys().chain(des_side.keys()).collect();
    keys.sort();
    keys.dedup();
    for key in keys {
        let a = asc_side.get(key).copied().unwrap_or(0);
        let d = des_side.get(key).copied().unwrap_or(0);
        if a != d {
            status = IdentityStatus::Mismatch {
                exponents: vec![key.0, key.1 as u32],
                lhs: BigInt::from(a),
                rhs: BigInt::from(d),
            };
            break;
        }
    }
    Ok(IdentityReport {
        kind: IdentityKind::Equidistribution,
        spec: spec.clone(),
        caps,
        variables: vec!["x".to_string(), "q".to_string()],
        status,
    })
}

/// Per-permutation double count: the weight sum over all bar placements with
/// at most `t_cap` total bars must equal the truncated expansion of the
/// permutation's closed-form term. Exposed for tests and the CLI.
pub fn barred_weight_sum(
    pi: &ColoredPermutation,
    mode: BarMode,
    scheme: WeightScheme,
    caps_vec: &[u32],
    truncation_var: usize,
    limits: &Limits,
) -> Result<TruncatedSeries> {
    let t_cap = caps_vec[truncation_var];
    let placements = enumerate_barred(pi, t_cap, mode, limits)?;
    let mut acc = TruncatedSeries::zero(caps_vec.to_vec());
    for sigma in &placements {
        let (_, exps) = weight(sigma, scheme)?;
        acc.add_term(&exps, BigInt::one());
    }
    Ok(acc)
}

/// Number of barred permutations of the whole spec with exactly t bars, for
/// t = 0..=t_cap.
pub fn barred_slice_counts(
    spec: &MultisetSpec,
    mode: BarMode,
    t_cap: u32,
    limits: &Limits,
) -> Result<Vec<BigInt>> {
    let stream: Vec<ColoredPermutation> =
        enumerate_colored_permutations(spec, limits)?.collect();
    let counts = stream
        .par_iter()
        .map(|pi| {
            let mut local = vec![0u64; t_cap as usize + 1];
            for sigma in enumerate_barred(pi, t_cap, mode, limits).unwrap() {
                local[sigma.total_bars() as usize] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; t_cap as usize + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(counts.into_iter().map(BigInt::from).collect())
}
