//! Canonical sequences, non-crossing partitions, subword patterns and
//! exhaustive enumeration of `NC_n`.
//!
//! A set partition of `[n]` is stored in canonical sequential form: position
//! `i` holds the index of the block containing `i`, blocks numbered by their
//! minima. Such words are exactly the restricted growth sequences.

use std::fmt;
use std::str::FromStr;

use num::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single letter of a sequence or pattern.
pub type Letter = u8;

/// Default cap on `n` for exhaustive enumeration (`C_16` is about 35.4 million).
pub const DEFAULT_ENUM_LIMIT: usize = 16;

/// `true` iff `w` is empty or starts with 1 and never exceeds its running
/// maximum by more than one.
pub fn is_restricted_growth(w: &[Letter]) -> bool {
    let mut max = 0;
    for &c in w {
        if c == 0 || c > max + 1 {
            return false;
        }
        max = max.max(c);
    }
    true
}

/// Crossing test by scanning every pair of letters `a < b` for a subsequence
/// `a b a b`. Quadratic in the number of blocks times `n`.
pub fn is_noncrossing_pairwise(w: &[Letter]) -> bool {
    let k = w.iter().copied().max().unwrap_or(0);
    for a in 1..=k {
        for b in (a + 1)..=k {
            let target = [a, b, a, b];
            let mut matched = 0;
            for &c in w {
                if c == target[matched] {
                    matched += 1;
                    if matched == 4 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Linear crossing test: a letter may recur only if it sits on top of the
/// stack of letters still awaiting a later occurrence.
pub fn is_noncrossing_stack(w: &[Letter]) -> bool {
    let k = w.iter().copied().max().unwrap_or(0) as usize;
    let mut last = vec![usize::MAX; k + 1];
    for (i, &c) in w.iter().enumerate() {
        last[c as usize] = i;
    }
    let mut seen = vec![false; k + 1];
    let mut stack: Vec<Letter> = Vec::new();
    for (i, &c) in w.iter().enumerate() {
        if seen[c as usize] {
            if stack.last() != Some(&c) {
                return false;
            }
        } else {
            seen[c as usize] = true;
            stack.push(c);
        }
        if last[c as usize] == i {
            stack.pop();
        }
    }
    true
}

/// Non-crossing test on a canonical sequence. Uses the stack check; the
/// pairwise scan is kept as an independent cross-check.
pub fn is_noncrossing(w: &CanonicalSeq) -> bool {
    is_noncrossing_stack(w.letters())
}

fn format_letters(w: &[Letter], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if w.iter().all(|&c| c <= 9) {
        for &c in w {
            write!(f, "{c}")?;
        }
    } else {
        for (i, &c) in w.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
    }
    Ok(())
}

/// Parses the sequence text format: a digit string when every letter is at
/// most 9, otherwise comma-separated integers. The empty string is the empty
/// sequence.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let parse_one = |t: &str| -> Result<Letter> {
        let v: Letter = t
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad letter {t:?} in {s:?}")))?;
        if v == 0 {
            return Err(Error::Parse(format!("letters must be positive in {s:?}")));
        }
        Ok(v)
    };
    if s.contains(',') {
        s.split(',').map(parse_one).collect()
    } else {
        s.chars().map(|ch| parse_one(&ch.to_string())).collect()
    }
}

/// Writes letters in the sequence text format.
pub fn letters_to_string(w: &[Letter]) -> String {
    struct Text<'a>(&'a [Letter]);
    impl fmt::Display for Text<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            format_letters(self.0, f)
        }
    }
    Text(w).to_string()
}

/// A restricted growth sequence, i.e. a set partition in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CanonicalSeq(Vec<Letter>);

impl CanonicalSeq {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if !is_restricted_growth(&letters) {
            return Err(Error::InvalidSequence(format!(
                "{} is not a restricted growth sequence",
                letters_to_string(&letters)
            )));
        }
        Ok(CanonicalSeq(letters))
    }

    /// Relabels an arbitrary positive word by order of first occurrence.
    pub fn standardize(word: &[Letter]) -> Self {
        let mut map = std::collections::HashMap::new();
        let mut next = 0u8;
        let letters = word
            .iter()
            .map(|c| {
                *map.entry(*c).or_insert_with(|| {
                    next += 1;
                    next
                })
            })
            .collect();
        CanonicalSeq(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl fmt::Display for CanonicalSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_letters(&self.0, f)
    }
}

impl FromStr for CanonicalSeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CanonicalSeq::new(parse_letters(s)?)
    }
}

/// A canonical sequence avoiding the classical pattern 1-2-1-2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NCPartition(CanonicalSeq);

impl NCPartition {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        let seq = CanonicalSeq::new(letters)?;
        Self::from_canonical(seq)
    }

    pub fn from_canonical(seq: CanonicalSeq) -> Result<Self> {
        if !is_noncrossing(&seq) {
            return Err(Error::InvalidSequence(format!("{seq} is crossing")));
        }
        Ok(NCPartition(seq))
    }

    /// Wraps letters already known to be a non-crossing RGS.
    pub(crate) fn from_trusted(letters: Vec<Letter>) -> Self {
        debug_assert!(is_restricted_growth(&letters) && is_noncrossing_stack(&letters));
        NCPartition(CanonicalSeq(letters))
    }

    pub fn seq(&self) -> &CanonicalSeq {
        &self.0
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0.into_letters()
    }
}

impl fmt::Display for NCPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for NCPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NCPartition::new(parse_letters(s)?)
    }
}

/// A word whose distinct letters are exactly `{1, ..., ℓ}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SubwordPattern {
    word: Vec<Letter>,
    alphabet: Letter,
}

impl SubwordPattern {
    pub fn new(word: Vec<Letter>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidPattern("pattern must be nonempty".into()));
        }
        let alphabet = *word.iter().max().unwrap();
        let mut present = vec![false; alphabet as usize + 1];
        for &c in &word {
            present[c as usize] = true;
        }
        if present[1..].iter().any(|p| !p) || present[0] {
            return Err(Error::InvalidPattern(format!(
                "letters of {} do not cover [{alphabet}]",
                letters_to_string(&word)
            )));
        }
        Ok(SubwordPattern { word, alphabet })
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn alphabet_size(&self) -> Letter {
        self.alphabet
    }

    /// The pattern `1^a`.
    pub fn run(a: usize) -> Self {
        SubwordPattern::new(vec![1; a]).expect("1^a is a pattern")
    }

    /// The pattern `1^a 2`.
    pub fn run_ascent(a: usize) -> Self {
        let mut w = vec![1; a];
        w.push(2);
        SubwordPattern::new(w).expect("1^a 2 is a pattern")
    }

    /// The pattern `12...(m-1) m^a`.
    pub fn staircase_tail(m: usize, a: usize) -> Self {
        let mut w: Vec<Letter> = (1..m as Letter).collect();
        w.extend(std::iter::repeat_n(m as Letter, a));
        SubwordPattern::new(w).expect("staircase tail is a pattern")
    }

    /// The pattern `1^a 23...m`.
    pub fn run_staircase(a: usize, m: usize) -> Self {
        let mut w = vec![1; a];
        w.extend(2..=m as Letter);
        SubwordPattern::new(w).expect("run staircase is a pattern")
    }
}

impl fmt::Display for SubwordPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_letters(&self.word, f)
    }
}

impl FromStr for SubwordPattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SubwordPattern::new(parse_letters(s)?)
    }
}

impl TryFrom<String> for SubwordPattern {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SubwordPattern> for String {
    fn from(p: SubwordPattern) -> String {
        p.to_string()
    }
}

/// The pattern families that have closed-form generating functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PatternFamily {
    /// `1^a`
    Run { a: usize },
    /// `1^a 2`
    RunAscent { a: usize },
    /// `(ρ+1) 1^b`
    RhoTail { rho: NCPartition, b: usize },
    /// `1^a (ρ+1) 1^b`
    Sandwich { a: usize, rho: NCPartition, b: usize },
    /// `12...(m-1) m^a`
    StaircaseTail { m: usize, a: usize },
    /// `1^a 23...m`
    RunStaircase { a: usize, m: usize },
    Generic,
}

impl PatternFamily {
    /// Position in the principal-tag priority order (lower wins).
    pub fn priority(&self) -> u8 {
        match self {
            PatternFamily::Run { .. } => 0,
            PatternFamily::RunAscent { .. } => 1,
            PatternFamily::StaircaseTail { .. } => 2,
            PatternFamily::RunStaircase { .. } => 3,
            PatternFamily::Sandwich { .. } => 4,
            PatternFamily::RhoTail { .. } => 5,
            PatternFamily::Generic => 6,
        }
    }

    /// Checks the family's parameter constraints.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::FamilyViolation(msg));
        match self {
            PatternFamily::Run { a } | PatternFamily::RunAscent { a } if *a == 0 => {
                bad("run length must be at least 1".into())
            }
            PatternFamily::RhoTail { rho, b } => {
                if rho.is_empty() {
                    return bad("rho must be nonempty".into());
                }
                if *b == 0 {
                    return bad("b must be at least 1".into());
                }
                if *b >= 2 && rho.len() >= 2 && rho.letters()[1] == 1 {
                    return bad(format!("rho = {rho} must start with a single 1 when b = {b}"));
                }
                Ok(())
            }
            PatternFamily::Sandwich { a, rho, b } => {
                if rho.is_empty() {
                    return bad("rho must be nonempty".into());
                }
                if *a == 0 || *b == 0 {
                    return bad("a and b must be at least 1".into());
                }
                Ok(())
            }
            PatternFamily::StaircaseTail { m, a } | PatternFamily::RunStaircase { a, m } => {
                if *m < 2 || *a < 2 {
                    return bad(format!("need a, m >= 2, got a = {a}, m = {m}"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Builds the pattern word for an explicitly requested family.
    pub fn pattern(&self) -> Result<SubwordPattern> {
        self.validate()?;
        let word = match self {
            PatternFamily::Run { a } => vec![1; *a],
            PatternFamily::RunAscent { a } => return Ok(SubwordPattern::run_ascent(*a)),
            PatternFamily::RhoTail { rho, b } => {
                let mut w: Vec<Letter> = rho.letters().iter().map(|c| c + 1).collect();
                w.extend(std::iter::repeat_n(1, *b));
                w
            }
            PatternFamily::Sandwich { a, rho, b } => {
                let mut w = vec![1; *a];
                w.extend(rho.letters().iter().map(|c| c + 1));
                w.extend(std::iter::repeat_n(1, *b));
                w
            }
            PatternFamily::StaircaseTail { m, a } => return Ok(SubwordPattern::staircase_tail(*m, *a)),
            PatternFamily::RunStaircase { a, m } => return Ok(SubwordPattern::run_staircase(*a, *m)),
            PatternFamily::Generic => {
                return Err(Error::FamilyViolation("Generic has no canonical pattern".into()))
            }
        };
        SubwordPattern::new(word)
    }
}

impl fmt::Display for PatternFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternFamily::Run { a } => write!(f, "Run(a={a})"),
            PatternFamily::RunAscent { a } => write!(f, "RunAscent(a={a})"),
            PatternFamily::RhoTail { rho, b } => write!(f, "RhoTail(rho=\"{rho}\", b={b})"),
            PatternFamily::Sandwich { a, rho, b } => {
                write!(f, "Sandwich(a={a}, rho=\"{rho}\", b={b})")
            }
            PatternFamily::StaircaseTail { m, a } => write!(f, "StaircaseTail(m={m}, a={a})"),
            PatternFamily::RunStaircase { a, m } => write!(f, "RunStaircase(a={a}, m={m})"),
            PatternFamily::Generic => f.write_str("Generic"),
        }
    }
}

/// Result of [`classify_pattern`]: the principal tag plus every match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub principal: PatternFamily,
    pub matches: Vec<PatternFamily>,
}

fn leading_run(w: &[Letter], c: Letter) -> usize {
    w.iter().take_while(|&&x| x == c).count()
}

fn trailing_run(w: &[Letter], c: Letter) -> usize {
    w.iter().rev().take_while(|&&x| x == c).count()
}

/// `middle - 1` as a non-crossing partition, when `middle` avoids 1.
fn shifted_rho(middle: &[Letter]) -> Option<NCPartition> {
    if middle.is_empty() || middle.contains(&1) {
        return None;
    }
    NCPartition::new(middle.iter().map(|c| c - 1).collect()).ok()
}

/// Every family the pattern belongs to, most specific first.
pub fn classify_pattern(p: &SubwordPattern) -> Classification {
    let w = p.word();
    let n = w.len();
    let mut matches = Vec::new();

    if w.iter().all(|&c| c == 1) {
        matches.push(PatternFamily::Run { a: n });
    }
    let lead = leading_run(w, 1);
    if n >= 2 && lead == n - 1 && w[n - 1] == 2 {
        matches.push(PatternFamily::RunAscent { a: lead });
    }
    // 12...(m-1) m^a
    let top = p.alphabet_size() as usize;
    if top >= 2 {
        let a = trailing_run(w, top as Letter);
        let head_ok = n == a + top - 1 && w[..top - 1].iter().enumerate().all(|(i, &c)| c as usize == i + 1);
        if a >= 2 && head_ok {
            matches.push(PatternFamily::StaircaseTail { m: top, a });
        }
        // 1^a 23...m
        let tail_ok = n == lead + top - 1
            && w[lead..].iter().enumerate().all(|(i, &c)| c as usize == i + 2);
        if lead >= 2 && tail_ok {
            matches.push(PatternFamily::RunStaircase { a: lead, m: top });
        }
    }
    if lead >= 1 && lead < n {
        let b = trailing_run(w, 1);
        if b >= 1 && lead + b < n {
            if let Some(rho) = shifted_rho(&w[lead..n - b]) {
                matches.push(PatternFamily::Sandwich { a: lead, rho, b });
            }
        }
    }
    if lead == 0 {
        let b = trailing_run(w, 1);
        if b >= 1 {
            if let Some(rho) = shifted_rho(&w[..n - b]) {
                let fam = PatternFamily::RhoTail { rho, b };
                if fam.validate().is_ok() {
                    matches.push(fam);
                }
            }
        }
    }
    matches.sort_by_key(PatternFamily::priority);
    let principal = matches.first().cloned().unwrap_or(PatternFamily::Generic);
    if matches.is_empty() {
        matches.push(PatternFamily::Generic);
    }
    Classification { principal, matches }
}

/// Exact Catalan number `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    num::integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Enumeration settings.
#[derive(Clone, Copy, Debug)]
pub struct EnumConfig {
    pub limit: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { limit: DEFAULT_ENUM_LIMIT }
    }
}

impl EnumConfig {
    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.limit {
            return Err(Error::LimitExceeded { n, limit: self.limit });
        }
        Ok(())
    }
}

struct NcWalker<'f, F: FnMut(&[Letter])> {
    n: usize,
    word: Vec<Letter>,
    open: Vec<Letter>,
    visit: &'f mut F,
}

impl<F: FnMut(&[Letter])> NcWalker<'_, F> {
    fn walk(&mut self, max: Letter) {
        if self.word.len() == self.n {
            (self.visit)(&self.word);
            return;
        }
        // Reusing open[k] closes every block opened after it.
        for k in 0..self.open.len() {
            let c = self.open[k];
            let closed = self.open.split_off(k + 1);
            self.word.push(c);
            self.walk(max);
            self.word.pop();
            self.open.extend(closed);
        }
        let c = max + 1;
        self.word.push(c);
        self.open.push(c);
        self.walk(c);
        self.open.pop();
        self.word.pop();
    }
}

/// Visits every member of `NC_n` in lexicographic order without checking the
/// limit.
pub fn for_each_nc<F: FnMut(&[Letter])>(n: usize, mut visit: F) {
    let mut walker = NcWalker { n, word: Vec::with_capacity(n), open: Vec::new(), visit: &mut visit };
    walker.walk(0);
}

/// Visits the members of `NC_n` whose second letter is `second` (1 or 2).
/// The two sub-ranges partition `NC_n` for `n >= 2` and can be processed
/// independently.
pub fn for_each_nc_with_second<F: FnMut(&[Letter])>(n: usize, second: Letter, mut visit: F) {
    if n < 2 || !(1..=2).contains(&second) {
        return;
    }
    let mut walker = NcWalker {
        n,
        word: vec![1, second],
        open: if second == 1 { vec![1] } else { vec![1, 2] },
        visit: &mut visit,
    };
    walker.walk(second);
}

/// Every member of `NC_n`, lexicographically increasing.
pub fn enumerate_nc(n: usize) -> Result<Vec<NCPartition>> {
    enumerate_nc_with(n, &EnumConfig::default())
}

pub fn enumerate_nc_with(n: usize, config: &EnumConfig) -> Result<Vec<NCPartition>> {
    config.check(n)?;
    let mut out = Vec::new();
    for_each_nc(n, |w| out.push(NCPartition::from_trusted(w.to_vec())));
    Ok(out)
}

/// Every restricted growth sequence of length `n` (crossing or not).
pub fn for_each_rgs<F: FnMut(&[Letter])>(n: usize, mut visit: F) {
    fn rec<F: FnMut(&[Letter])>(n: usize, word: &mut Vec<Letter>, max: Letter, visit: &mut F) {
        if word.len() == n {
            visit(word);
            return;
        }
        for c in 1..=max + 1 {
            word.push(c);
            rec(n, word, max.max(c), visit);
            word.pop();
        }
    }
    rec(n, &mut Vec::with_capacity(n), 0, &mut visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(n: usize) -> Vec<String> {
        enumerate_nc(n).unwrap().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn restricted_growth_examples() {
        assert!(is_restricted_growth(&[]));
        assert!(is_restricted_growth(&[1, 2, 2, 1]));
        assert!(!is_restricted_growth(&[1, 3, 2]));
        assert!(!is_restricted_growth(&[2]));
    }

    #[test]
    fn noncrossing_examples() {
        for (w, expect) in [(vec![1, 2, 1, 2], false), (vec![1, 2, 2, 1], true), (vec![1, 2, 1, 3], true)] {
            assert_eq!(is_noncrossing_pairwise(&w), expect, "{w:?}");
            assert_eq!(is_noncrossing_stack(&w), expect, "{w:?}");
        }
    }

    #[test]
    fn crossing_checks_agree_on_all_rgs() {
        for n in 0..=10 {
            for_each_rgs(n, |w| {
                assert_eq!(is_noncrossing_pairwise(w), is_noncrossing_stack(w), "{w:?}");
            });
        }
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(strings(0), vec![""]);
        assert_eq!(strings(3), vec!["111", "112", "121", "122", "123"]);
        assert_eq!(strings(4).len(), 14);
    }

    #[test]
    fn enumeration_matches_filtered_rgs() {
        for n in 0..=9 {
            let mut brute = Vec::new();
            for_each_rgs(n, |w| {
                if is_noncrossing_pairwise(w) {
                    brute.push(w.to_vec());
                }
            });
            let got: Vec<Vec<Letter>> = enumerate_nc(n).unwrap().into_iter().map(|p| p.into_letters()).collect();
            assert_eq!(got, brute, "n = {n}");
        }
    }

    #[test]
    fn enumeration_sorted_and_counted() {
        for n in 0..=12 {
            let all = enumerate_nc(n).unwrap();
            assert_eq!(BigUint::from(all.len()), catalan(n));
            assert!(all.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn second_letter_split_partitions_nc() {
        for n in 2..=9 {
            let mut parts = Vec::new();
            for s in 1..=2 {
                for_each_nc_with_second(n, s, |w| parts.push(w.to_vec()));
            }
            let all: Vec<Vec<Letter>> = enumerate_nc(n).unwrap().into_iter().map(|p| p.into_letters()).collect();
            assert_eq!(parts, all);
        }
    }

    #[test]
    fn limit_is_enforced() {
        assert_eq!(enumerate_nc(17).unwrap_err(), Error::LimitExceeded { n: 17, limit: 16 });
        assert!(enumerate_nc_with(3, &EnumConfig { limit: 2 }).is_err());
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(4), BigUint::from(14u32));
        assert_eq!(catalan(12), BigUint::from(208012u32));
    }

    #[test]
    fn text_format() {
        assert_eq!(letters_to_string(&[1, 2, 2, 10]), "1,2,2,10");
        assert_eq!(parse_letters("1,2,2,10").unwrap(), vec![1, 2, 2, 10]);
        assert_eq!(parse_letters("1221").unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(parse_letters("").unwrap(), Vec::<Letter>::new());
        assert!(parse_letters("102").is_err());
        assert!("1212".parse::<NCPartition>().is_err());
        assert!("132".parse::<CanonicalSeq>().is_err());
    }

    #[test]
    fn pattern_alphabet_must_be_covered() {
        assert!("13".parse::<SubwordPattern>().is_err());
        assert_eq!("231".parse::<SubwordPattern>().unwrap().alphabet_size(), 3);
    }

    fn nc(s: &str) -> NCPartition {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = |s: &str| classify_pattern(&s.parse().unwrap());
        assert_eq!(c("211").principal, PatternFamily::RhoTail { rho: nc("1"), b: 2 });
        assert_eq!(c("122").principal, PatternFamily::StaircaseTail { m: 2, a: 2 });
        assert_eq!(c("121").principal, PatternFamily::Sandwich { a: 1, rho: nc("1"), b: 1 });
        assert_eq!(c("111").principal, PatternFamily::Run { a: 3 });
        assert_eq!(c("231").principal, PatternFamily::RhoTail { rho: nc("12"), b: 1 });
        assert_eq!(c("212").principal, PatternFamily::Generic);
        assert_eq!(c("1123").principal, PatternFamily::RunStaircase { a: 2, m: 3 });
        let ra = c("112");
        assert_eq!(ra.principal, PatternFamily::RunAscent { a: 2 });
        assert!(ra.matches.contains(&PatternFamily::RunStaircase { a: 2, m: 2 }));
        // ρ = 11 with b = 2 breaks the single-leading-1 rule
        assert_eq!(c("2211").principal, PatternFamily::Generic);
    }

    #[test]
    fn every_match_rebuilds_its_pattern() {
        // all words over [1..4] of length <= 5 that cover their alphabet
        for len in 1..=5usize {
            let total = 4usize.pow(len as u32);
            for code in 0..total {
                let word: Vec<Letter> = (0..len).map(|i| (code / 4usize.pow(i as u32) % 4) as Letter + 1).collect();
                let Ok(p) = SubwordPattern::new(word) else { continue };
                for fam in classify_pattern(&p).matches {
                    if fam != PatternFamily::Generic {
                        assert_eq!(fam.pattern().unwrap(), p, "{fam} from {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_family_requests() {
        let ok = PatternFamily::RhoTail { rho: nc("12"), b: 2 };
        assert_eq!(ok.pattern().unwrap().to_string(), "2311");
        let bad = PatternFamily::RhoTail { rho: nc("112"), b: 2 };
        assert!(matches!(bad.pattern(), Err(Error::FamilyViolation(_))));
        assert!(PatternFamily::StaircaseTail { m: 1, a: 2 }.pattern().is_err());
        assert_eq!(
            PatternFamily::Sandwich { a: 1, rho: nc("12"), b: 2 }.pattern().unwrap().to_string(),
            "12311"
        );
    }
}
