//! Bijections on `NC_n` that trade occurrences of one pattern for another.

mod chains;
pub mod descent;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{classify_pattern, is_noncrossing_stack, is_restricted_growth, CanonicalSeq, Letter, NCPartition, PatternFamily, SubwordPattern};
use crate::stats::order_isomorphic;

pub use descent::{descent_bottoms, descent_decode, descent_encode, map_descent_code, DescentCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StringKind {
    Tau,
    Tau2,
}

impl StringKind {
    fn flip(self) -> Self {
        match self {
            StringKind::Tau => StringKind::Tau2,
            StringKind::Tau2 => StringKind::Tau,
        }
    }
}

/// A window `π[start..end]` realizing one of two patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TauString {
    pub start: usize,
    pub end: usize,
    pub kind: StringKind,
}

/// Every window isomorphic to `tau` or `tau2`, left to right.
pub fn find_tau_strings(w: &[Letter], tau: &SubwordPattern, tau2: &SubwordPattern) -> Vec<TauString> {
    let len = tau.len();
    if w.len() < len {
        return Vec::new();
    }
    (0..=w.len() - len)
        .filter_map(|start| {
            let win = &w[start..start + len];
            let kind = if order_isomorphic(win, tau.word()) {
                StringKind::Tau
            } else if order_isomorphic(win, tau2.word()) {
                StringKind::Tau2
            } else {
                return None;
            };
            Some(TauString { start, end: start + len, kind })
        })
        .collect()
}

/// `(ρ+1) 1` with the single 1 at the end.
fn check_single_tail(tau: &SubwordPattern) -> Result<()> {
    let w = tau.word();
    let ones = w.iter().filter(|&&c| c == 1).count();
    if w.len() < 3 || ones != 1 || w[w.len() - 1] != 1 {
        return Err(Error::FamilyViolation(format!("{tau} is not of the form (rho+1)1 with |rho| >= 2")));
    }
    Ok(())
}

/// Rewrites one string as the other pattern: the bottom letter and the
/// leading letter stay, every other letter of the target gets a fresh
/// label, and the word is relabelled by first occurrence.
fn convert(w: &[Letter], s: &TauString, target: &SubwordPattern) -> Result<Vec<Letter>> {
    let v = w[s.end - 1];
    let u = w[s.start];
    let top = *w.iter().max().expect("nonempty");
    let mut out = w.to_vec();
    for (slot, &c) in out[s.start..s.end].iter_mut().zip(target.word()) {
        *slot = match c {
            1 => v,
            2 => u,
            c => top
                .checked_add(c - 2)
                .ok_or_else(|| Error::InvariantViolation("letter overflow".into()))?,
        };
    }
    Ok(CanonicalSeq::standardize(&out).into_letters())
}

fn run_conversions(
    pi: &NCPartition,
    tau: &SubwordPattern,
    tau2: &SubwordPattern,
    forward: bool,
) -> Result<NCPartition> {
    check_single_tail(tau)?;
    check_single_tail(tau2)?;
    if tau.len() != tau2.len() {
        return Err(Error::PatternLengthMismatch(tau.len(), tau2.len()));
    }
    if tau == tau2 {
        return Ok(pi.clone());
    }
    let mut w = pi.letters().to_vec();
    let mut expected = find_tau_strings(&w, tau, tau2);
    if expected.windows(2).any(|p| p[1].start + 1 < p[0].end) {
        return Err(Error::InvariantViolation(format!("strings of {pi} share more than one letter")));
    }
    let order: Vec<usize> = if forward { (0..expected.len()).collect() } else { (0..expected.len()).rev().collect() };
    for i in order {
        let s = expected[i];
        let target = match s.kind {
            StringKind::Tau => tau2,
            StringKind::Tau2 => tau,
        };
        w = convert(&w, &s, target)?;
        expected[i].kind = s.kind.flip();
        if find_tau_strings(&w, tau, tau2) != expected {
            return Err(Error::InvariantViolation(format!(
                "strings of {pi} moved after converting the one at {}",
                s.start
            )));
        }
    }
    NCPartition::new(w).map_err(|e| Error::InvariantViolation(format!("conversion left NC_n: {e}")))
}

/// Converts every `τ`-string into a `τ'`-string and vice versa, left to
/// right. Both patterns must be `(ρ+1)1` of the same length.
pub fn map_f(pi: &NCPartition, tau: &SubwordPattern, tau2: &SubwordPattern) -> Result<NCPartition> {
    run_conversions(pi, tau, tau2, true)
}

/// Inverse of [`map_f`]: the same conversions undone right to left.
pub fn map_f_inverse(pi: &NCPartition, tau: &SubwordPattern, tau2: &SubwordPattern) -> Result<NCPartition> {
    run_conversions(pi, tau, tau2, false)
}

/// Checks that `2σ` is a nonempty non-crossing word on `{2, 3, ...}` with
/// `σ` starting at 3.
fn check_sigma(sigma: &[Letter]) -> Result<()> {
    if sigma.first().is_some_and(|&c| c != 3) {
        return Err(Error::FamilyViolation("sigma must start with 3".into()));
    }
    let mut shifted = vec![1];
    for &c in sigma {
        if c < 2 {
            return Err(Error::FamilyViolation("sigma uses letters >= 2".into()));
        }
        shifted.push(c - 1);
    }
    if !is_restricted_growth(&shifted) || !is_noncrossing_stack(&shifted) {
        return Err(Error::FamilyViolation("2sigma must be a non-crossing partition".into()));
    }
    Ok(())
}

/// Exchanges `2σ1^b` and `2^bσ1`: along every maximal chain
/// `u_1^{r_1} σ_1 u_2^{r_2} σ_2 ⋯` with `u_i σ_i ≅ 2σ` and `u_1 > u_2 > ⋯`,
/// the run lengths are reversed. An involution preserving block count.
pub fn map_g(pi: &NCPartition, sigma: &[Letter], b: usize) -> Result<NCPartition> {
    check_sigma(sigma)?;
    if b < 2 {
        return Err(Error::FamilyViolation(format!("b must be at least 2, got {b}")));
    }
    let mut head = vec![2];
    head.extend_from_slice(sigma);
    let k = sigma.len();
    let found = chains::chains(pi.letters(), |w, r| {
        let gap_end = r.end() + k;
        if gap_end >= w.len() || w[gap_end] >= r.letter {
            return None;
        }
        let mut win = vec![r.letter];
        win.extend_from_slice(&w[r.end()..gap_end]);
        order_isomorphic(&win, &head).then_some(gap_end)
    });
    chains::reverse_chains(pi.letters(), &found)
}

/// `(ρ, b)` of a `(ρ+1)1^b` pattern.
fn rho_tail(tau: &SubwordPattern) -> Result<(NCPartition, usize)> {
    classify_pattern(tau)
        .matches
        .into_iter()
        .find_map(|f| match f {
            PatternFamily::RhoTail { rho, b } => Some((rho, b)),
            _ => None,
        })
        .ok_or_else(|| Error::FamilyViolation(format!("{tau} is not of the form (rho+1)1^b")))
}

/// `2σ1^b -> 2^bσ1`, with `σ` the tail of `ρ + 1`.
fn reduce(rho: &NCPartition, b: usize) -> (Vec<Letter>, SubwordPattern) {
    let sigma: Vec<Letter> = rho.letters()[1..].iter().map(|c| c + 1).collect();
    let mut w = vec![2; b];
    w.extend_from_slice(&sigma);
    w.push(1);
    (sigma, SubwordPattern::new(w).expect("reduced pattern"))
}

/// `g_{τ'} ∘ f ∘ g_τ`, trading occurrences of `τ = (ρ+1)1^b` for those of
/// `τ' = (ρ'+1)1^{b'}` of the same length.
pub fn map_equiv(pi: &NCPartition, tau: &SubwordPattern, tau2: &SubwordPattern) -> Result<NCPartition> {
    if tau.len() != tau2.len() {
        return Err(Error::PatternLengthMismatch(tau.len(), tau2.len()));
    }
    if tau == tau2 {
        rho_tail(tau)?;
        return Ok(pi.clone());
    }
    let (rho, b) = rho_tail(tau)?;
    let (rho2, b2) = rho_tail(tau2)?;
    let (sigma, red) = reduce(&rho, b);
    let (sigma2, red2) = reduce(&rho2, b2);
    let mut w = pi.clone();
    if b >= 2 {
        w = map_g(&w, &sigma, b)?;
    }
    w = map_f(&w, &red, &red2)?;
    if b2 >= 2 {
        w = map_g(&w, &sigma2, b2)?;
    }
    Ok(w)
}

/// Inverse of [`map_equiv`].
pub fn map_equiv_inverse(pi: &NCPartition, tau: &SubwordPattern, tau2: &SubwordPattern) -> Result<NCPartition> {
    if tau.len() != tau2.len() {
        return Err(Error::PatternLengthMismatch(tau.len(), tau2.len()));
    }
    if tau == tau2 {
        return Ok(pi.clone());
    }
    let (rho, b) = rho_tail(tau)?;
    let (rho2, b2) = rho_tail(tau2)?;
    let (sigma, red) = reduce(&rho, b);
    let (sigma2, red2) = reduce(&rho2, b2);
    let mut w = pi.clone();
    if b2 >= 2 {
        w = map_g(&w, &sigma2, b2)?;
    }
    w = map_f_inverse(&w, &red, &red2)?;
    if b >= 2 {
        w = map_g(&w, &sigma, b)?;
    }
    Ok(w)
}

/// Reverses the `x`-run lengths of every maximal string
/// `x^{i_1} α_1 x^{i_2} ⋯ α_r x^{i_{r+1}}` with `α_j ≅ ρ` and
/// `x < min α_j`. An involution trading `1^a(ρ+1)1^b` for `1^b(ρ+1)1^a`;
/// the map itself only depends on `ρ`.
pub fn map_runrev(pi: &NCPartition, a: usize, rho: &NCPartition, b: usize) -> Result<NCPartition> {
    PatternFamily::Sandwich { a, rho: rho.clone(), b }.validate()?;
    let m = rho.len();
    let found = chains::chains(pi.letters(), |w, r| {
        let back = r.end() + m;
        if back >= w.len() || w[back] != r.letter {
            return None;
        }
        let alpha = &w[r.end()..back];
        (alpha.iter().all(|&c| c > r.letter) && order_isomorphic(alpha, rho.letters())).then_some(back)
    });
    chains::reverse_chains(pi.letters(), &found)
}

#[cfg(test)]
mod tests;
