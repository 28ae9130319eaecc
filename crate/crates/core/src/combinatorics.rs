//! Colored multiset permutations and their descent statistics.
//!
//! Letters are compared in the color ordering: color is the primary key and
//! value the secondary, so 1^1 < 2^1 < ... < n^1 < (n+1)^1 < 1^2 < ... The
//! sentinel (n+1)^1 is never stored; it is consulted as position m+1 whenever
//! statistics are computed. A position where adjacent letters are equal is
//! classified as an ascent (the descent comparison is strict), so descents
//! and ascents always partition [m].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::BigInt;
use rayon::prelude::*;

use crate::error::CmeError;
use crate::limits::Limits;
use crate::numeric::colored_count;
use crate::Result;

/// Ground multiset: value k in [n] appears m_k times and carries r_k colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultisetSpec {
    m: Vec<u32>,
    r: Vec<u32>,
}

impl MultisetSpec {
    pub fn new(m: Vec<u32>, r: Vec<u32>) -> Result<Self> {
        if m.is_empty() {
            return Err(CmeError::InvalidSpec("empty multiplicity vector".into()));
        }
        if m.len() != r.len() {
            return Err(CmeError::InvalidSpec(format!(
                "m has {} entries but r has {}",
                m.len(),
                r.len()
            )));
        }
        if m.contains(&0) || r.contains(&0) {
            return Err(CmeError::InvalidSpec(
                "multiplicities and color counts must be positive".into(),
            ));
        }
        Ok(MultisetSpec { m, r })
    }

    /// Uncolored spec with the given multiplicities.
    pub fn uncolored(m: Vec<u32>) -> Result<Self> {
        let r = vec![1; m.len()];
        MultisetSpec::new(m, r)
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }

    pub fn r(&self) -> &[u32] {
        &self.r
    }

    /// Ground-set size n.
    pub fn n(&self) -> usize {
        self.m.len()
    }

    /// Word length m = m_1 + ... + m_n.
    pub fn total(&self) -> u32 {
        self.m.iter().sum()
    }

    pub fn max_color(&self) -> u32 {
        *self.r.iter().max().unwrap()
    }

    /// Some(r) when every value carries the same number of colors.
    pub fn constant_color(&self) -> Option<u32> {
        let r0 = self.r[0];
        self.r.iter().all(|&v| v == r0).then_some(r0)
    }

    /// Number of colored multiset permutations.
    pub fn permutation_count(&self) -> BigInt {
        colored_count(&self.m, &self.r)
    }

    pub fn sentinel(&self) -> ColoredLetter {
        ColoredLetter {
            value: self.n() as u32 + 1,
            color: 1,
        }
    }
}

/// A colored letter value^color. The comparison key is (color, value), which
/// realizes the color ordering with the sentinel (n+1)^1 topping the color-1
/// block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColoredLetter {
    pub value: u32,
    pub color: u32,
}

impl Ord for ColoredLetter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.color, self.value).cmp(&(other.color, other.value))
    }
}

impl PartialOrd for ColoredLetter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColoredLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.value, self.color)
    }
}

/// Total order on colored letters.
pub fn compare_colored(a: &ColoredLetter, b: &ColoredLetter) -> std::cmp::Ordering {
    a.cmp(b)
}

/// A colored multiset permutation. The sentinel is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredPermutation {
    letters: Vec<ColoredLetter>,
    spec: MultisetSpec,
}

impl ColoredPermutation {
    pub fn new(letters: Vec<ColoredLetter>, spec: MultisetSpec) -> Result<Self> {
        let mut counts = vec![0u32; spec.n()];
        for l in &letters {
            if l.value == 0 || l.value as usize > spec.n() {
                return Err(CmeError::InvalidPermutation(format!(
                    "value {} outside ground set",
                    l.value
                )));
            }
            if l.color == 0 || l.color > spec.r[l.value as usize - 1] {
                return Err(CmeError::InvalidPermutation(format!(
                    "letter {l} has color outside its bound"
                )));
            }
            counts[l.value as usize - 1] += 1;
        }
        if counts != spec.m {
            return Err(CmeError::InvalidPermutation(format!(
                "value counts {counts:?} do not match multiplicities {:?}",
                spec.m
            )));
        }
        Ok(ColoredPermutation { letters, spec })
    }

    pub fn spec(&self) -> &MultisetSpec {
        &self.spec
    }

    pub fn letters(&self) -> &[ColoredLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based position j, with the sentinel at position m+1.
    pub fn letter(&self, j: usize) -> ColoredLetter {
        if j == self.letters.len() + 1 {
            self.spec.sentinel()
        } else {
            self.letters[j - 1]
        }
    }

    /// Uncolored value word.
    pub fn values(&self) -> Vec<u32> {
        self.letters.iter().map(|l| l.value).collect()
    }

    /// Reverse with a leading sentinel.
    pub fn reverse(&self) -> ReversedPermutation {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(self.spec.sentinel());
        letters.extend(self.letters.iter().rev().copied());
        ReversedPermutation {
            letters,
            spec: self.spec.clone(),
        }
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses "1^2 2^1 2^2" against a spec.
pub fn parse_permutation(text: &str, spec: &MultisetSpec) -> Result<ColoredPermutation> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let (v, c) = token
            .split_once('^')
            .ok_or_else(|| CmeError::Parse(format!("bad letter token {token:?}")))?;
        let value = u32::from_str(v).map_err(|e| CmeError::Parse(e.to_string()))?;
        let color = u32::from_str(c).map_err(|e| CmeError::Parse(e.to_string()))?;
        letters.push(ColoredLetter { value, color });
    }
    ColoredPermutation::new(letters, spec.clone())
}

/// The reverse word (n+1)^1 pi_m ... pi_1. Statistics run over positions
/// 0..m-1, comparing consecutive letters with the sentinel participating at
/// position 0, so that position i of the original is an ascent exactly when
/// position m-i here is a descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversedPermutation {
    letters: Vec<ColoredLetter>,
    spec: MultisetSpec,
}

impl ReversedPermutation {
    pub fn letters(&self) -> &[ColoredLetter] {
        &self.letters
    }

    /// Descent positions in {0, ..., m-1}.
    pub fn descent_set(&self) -> Vec<u32> {
        (0..self.letters.len() - 1)
            .filter(|&j| self.letters[j] > self.letters[j + 1])
            .map(|j| j as u32)
            .collect()
    }

    /// Ascent positions in {0, ..., m-1} (ties count as ascents).
    pub fn ascent_set(&self) -> Vec<u32> {
        (0..self.letters.len() - 1)
            .filter(|&j| self.letters[j] <= self.letters[j + 1])
            .map(|j| j as u32)
            .collect()
    }

    /// Undo the reversal.
    pub fn reverse(&self) -> ColoredPermutation {
        let letters: Vec<ColoredLetter> = self.letters[1..].iter().rev().copied().collect();
        ColoredPermutation {
            letters,
            spec: self.spec.clone(),
        }
    }
}

/// Every descent-side statistic of a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatisticBundle {
    /// Descent positions, 1-based, subset of [m].
    pub des_set: Vec<u32>,
    /// Non-descent positions (ties included); together with `des_set` this
    /// partitions [m].
    pub asc_set: Vec<u32>,
    /// Positions where the letter strictly increases. The major-type ascent
    /// statistics and the ascent generating identities are built on this
    /// set; a tie is neither a descent nor a strict ascent.
    pub asc_strict_set: Vec<u32>,
    pub des: u32,
    pub asc: u32,
    pub dmaj: u64,
    /// amaj = sum of (m - i) over strict ascent positions.
    pub amaj: u64,
    /// Flag statistics, present only when the color count is constant.
    pub fdmaj: Option<u64>,
    pub famaj: Option<u64>,
    /// j -> number of j-colored entries, for j in [max r].
    pub color_counts: BTreeMap<u32, u32>,
    /// Color changes a_j = (c_j - c_{j+1}) mod r, j in [m], with c_{m+1} = 1.
    pub color_changes: Vec<u32>,
}

/// Computes the full statistic bundle.
///
/// `flag_scale`, when given, must equal every r_k; the flag statistics are
/// also computed automatically whenever the color vector is constant.
pub fn statistics(pi: &ColoredPermutation, flag_scale: Option<u32>) -> Result<StatisticBundle> {
    let spec = pi.spec();
    let m = pi.len();
    let constant = spec.constant_color();
    let flag = match flag_scale {
        Some(r) => {
            if constant != Some(r) {
                return Err(CmeError::UnsupportedStatistic(format!(
                    "flag statistics need constant color vector r = {r}, got {:?}",
                    spec.r()
                )));
            }
            Some(r)
        }
        None => constant,
    };

    let mut des_set = Vec::new();
    let mut asc_set = Vec::new();
    let mut asc_strict_set = Vec::new();
    for j in 1..=m {
        match pi.letter(j).cmp(&pi.letter(j + 1)) {
            std::cmp::Ordering::Greater => des_set.push(j as u32),
            std::cmp::Ordering::Less => {
                asc_set.push(j as u32);
                asc_strict_set.push(j as u32);
            }
            std::cmp::Ordering::Equal => asc_set.push(j as u32),
        }
    }
    let dmaj: u64 = des_set.iter().map(|&j| (m as u64) - u64::from(j)).sum();
    let amaj: u64 = asc_strict_set
        .iter()
        .map(|&j| (m as u64) - u64::from(j))
        .sum();

    let max_r = spec.max_color();
    let mut color_counts: BTreeMap<u32, u32> = (1..=max_r).map(|j| (j, 0)).collect();
    for l in pi.letters() {
        *color_counts.get_mut(&l.color).unwrap() += 1;
    }

    let color_changes: Vec<u32> = (1..=m)
        .map(|j| {
            let cj = i64::from(pi.letter(j).color);
            let cnext = i64::from(pi.letter(j + 1).color);
            (cj - cnext).rem_euclid(i64::from(max_r)) as u32
        })
        .collect();

    let (fdmaj, famaj) = if let Some(r) = flag {
        let excess: u64 = pi.letters().iter().map(|l| u64::from(l.color) - 1).sum();
        let fd = u64::from(r) * dmaj + excess;
        let fa = u64::from(r) * amaj
            + color_counts
                .iter()
                .map(|(&j, &c)| u64::from(r - j) * u64::from(c))
                .sum::<u64>();
        (Some(fd), Some(fa))
    } else {
        (None, None)
    };

    Ok(StatisticBundle {
        des: des_set.len() as u32,
        asc: asc_set.len() as u32,
        des_set,
        asc_set,
        asc_strict_set,
        dmaj,
        amaj,
        fdmaj,
        famaj,
        color_counts,
        color_changes,
    })
}

/// Multiset permutations of the value word in lexicographic order.
pub fn value_words(m: &[u32]) -> Vec<Vec<u32>> {
    let mut word: Vec<u32> = Vec::new();
    for (k, &mk) in m.iter().enumerate() {
        word.extend(std::iter::repeat_n(k as u32 + 1, mk as usize));
    }
    let mut out = Vec::new();
    loop {
        out.push(word.clone());
        if !next_permutation(&mut word) {
            break;
        }
    }
    out
}

/// Classic next-lexicographic-permutation step; works on multisets.
fn next_permutation(word: &mut [u32]) -> bool {
    if word.len() < 2 {
        return false;
    }
    let mut i = word.len() - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = word.len() - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// Deterministic stream of every colored permutation of the spec, in
/// lexicographic order of (value word, color word).
pub struct PermutationStream {
    spec: MultisetSpec,
    words: Vec<Vec<u32>>,
    word_idx: usize,
    colors: Vec<u32>,
    exhausted_word: bool,
}

impl PermutationStream {
    fn make(&self) -> ColoredPermutation {
        let letters: Vec<ColoredLetter> = self.words[self.word_idx]
            .iter()
            .zip(&self.colors)
            .map(|(&value, &color)| ColoredLetter { value, color })
            .collect();
        ColoredPermutation {
            letters,
            spec: self.spec.clone(),
        }
    }

    /// Lexicographic increment of the color word; false when wrapped.
    fn next_colors(&mut self) -> bool {
        let word = &self.words[self.word_idx];
        for i in (0..self.colors.len()).rev() {
            let bound = self.spec.r[word[i] as usize - 1];
            if self.colors[i] < bound {
                self.colors[i] += 1;
                for c in &mut self.colors[i + 1..] {
                    *c = 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PermutationStream {
    type Item = ColoredPermutation;

    fn next(&mut self) -> Option<ColoredPermutation> {
        if self.word_idx >= self.words.len() {
            return None;
        }
        if self.exhausted_word {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.colors = vec![1; self.colors.len()];
            self.exhausted_word = false;
        }
        let item = self.make();
        if !self.next_colors() {
            self.exhausted_word = true;
        }
        Some(item)
    }
}

/// Opens the enumeration stream after a capacity check.
pub fn enumerate_colored_permutations(
    spec: &MultisetSpec,
    limits: &Limits,
) -> Result<PermutationStream> {
    let count = spec.permutation_count();
    if count > BigInt::from(limits.enumeration_cap) {
        return Err(CmeError::CapacityExceeded {
            required: u128::try_from(&count).unwrap_or(u128::MAX),
            cap: limits.enumeration_cap,
        });
    }
    let words = value_words(&spec.m);
    Ok(PermutationStream {
        spec: spec.clone(),
        colors: vec![1; spec.total() as usize],
        words,
        word_idx: 0,
        exhausted_word: false,
    })
}

/// Parallel fold over the full stream, split by value word. The merge must
/// be commutative and associative for the result to be deterministic.
pub fn par_fold_permutations<T, FMap, FMerge>(
    spec: &MultisetSpec,
    limits: &Limits,
    identity: T,
    map: FMap,
    merge: FMerge,
) -> Result<T>
where
    T: Clone + Send + Sync,
    FMap: Fn(T, &ColoredPermutation) -> T + Sync + Send,
    FMerge: Fn(T, T) -> T + Sync + Send,
{
    let count = spec.permutation_count();
    if count > BigInt::from(limits.enumeration_cap) {
        return Err(CmeError::CapacityExceeded {
            required: u128::try_from(&count).unwrap_or(u128::MAX),
            cap: limits.enumeration_cap,
        });
    }
    let words = value_words(&spec.m);
    let result = words
        .par_iter()
        .map(|word| {
            let mut acc = identity.clone();
            let m = word.len();
            let mut colors = vec![1u32; m];
            loop {
                let letters: Vec<ColoredLetter> = word
                    .iter()
                    .zip(&colors)
                    .map(|(&value, &color)| ColoredLetter { value, color })
                    .collect();
                let pi = ColoredPermutation {
                    letters,
                    spec: spec.clone(),
                };
                acc = map(acc, &pi);
                let mut advanced = false;
                for i in (0..m).rev() {
                    if colors[i] < spec.r[word[i] as usize - 1] {
                        colors[i] += 1;
                        for c in &mut colors[i + 1..] {
                            *c = 1;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
            acc
        })
        .reduce(|| identity.clone(), &merge);
    Ok(result)
}
