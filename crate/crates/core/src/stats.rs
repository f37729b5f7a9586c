//! Occurrence counting and brute-force distributions over `NC_n`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Marker, Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::partition::{for_each_nc, for_each_nc_with_second, EnumConfig, Letter, NCPartition, SubwordPattern};

/// `true` iff `window` is order-isomorphic to `pattern` (same length assumed).
pub fn order_isomorphic(window: &[Letter], pattern: &[Letter]) -> bool {
    debug_assert_eq!(window.len(), pattern.len());
    for j in 0..pattern.len() {
        for k in (j + 1)..pattern.len() {
            if window[j].cmp(&window[k]) != pattern[j].cmp(&pattern[k]) {
                return false;
            }
        }
    }
    true
}

/// Number of windows of `word` order-isomorphic to `pattern`.
pub fn count_occurrences(word: &[Letter], pattern: &[Letter]) -> usize {
    if pattern.is_empty() || pattern.len() > word.len() {
        return 0;
    }
    word.windows(pattern.len()).filter(|w| order_isomorphic(w, pattern)).count()
}

/// `μ_τ(π)`.
pub fn count_subword(pi: &NCPartition, tau: &SubwordPattern) -> usize {
    count_occurrences(pi.letters(), tau.word())
}

/// Smallest repeated letter on raw letters; 0 for a strictly increasing word.
pub fn rep_of(word: &[Letter]) -> Result<Letter> {
    if word.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let top = *word.iter().max().unwrap() as usize;
    let mut count = vec![0u32; top + 1];
    for &c in word {
        count[c as usize] += 1;
    }
    Ok((1..=top).find(|&c| count[c] >= 2).map_or(0, |c| c as Letter))
}

/// Smallest repeated letter; `rep(12...n) = 0`.
pub fn rep(pi: &NCPartition) -> Result<Letter> {
    rep_of(pi.letters())
}

pub fn block_count(pi: &[Letter]) -> usize {
    pi.iter().copied().max().unwrap_or(0) as usize
}

pub fn ascent_count(pi: &[Letter]) -> usize {
    pi.windows(2).filter(|w| w[0] < w[1]).count()
}

pub fn descent_count(pi: &[Letter]) -> usize {
    pi.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Histogram of `key(π)` over `NC_n`. The two halves split on the second
/// letter are processed in parallel; the merge is order-independent.
pub fn nc_histogram<K, F>(n: usize, config: &EnumConfig, key: F) -> Result<BTreeMap<K, u64>>
where
    K: Ord + Send,
    F: Fn(&[Letter]) -> K + Sync,
{
    config.check(n)?;
    let mut hist = BTreeMap::new();
    if n < 2 {
        for_each_nc(n, |w| *hist.entry(key(w)).or_insert(0) += 1);
        return Ok(hist);
    }
    let parts: Vec<BTreeMap<K, u64>> = [1, 2]
        .into_par_iter()
        .map(|second| {
            let mut h = BTreeMap::new();
            for_each_nc_with_second(n, second, |w| *h.entry(key(w)).or_insert(0) += 1);
            h
        })
        .collect();
    for part in parts {
        for (k, c) in part {
            *hist.entry(k).or_insert(0) += c;
        }
    }
    Ok(hist)
}

/// `Σ_{π ∈ NC_n} q^{μ_τ(π)}`.
pub fn distribution(n: usize, tau: &SubwordPattern) -> Result<MultiPoly> {
    distribution_with(n, tau, &EnumConfig::default())
}

pub fn distribution_with(n: usize, tau: &SubwordPattern, config: &EnumConfig) -> Result<MultiPoly> {
    let hist = nc_histogram(n, config, |w| count_occurrences(w, tau.word()) as u32)?;
    Ok(MultiPoly::from_counts(hist.into_iter().map(|(e, c)| (Monomial::of(Marker::Q, e), c))))
}

/// `Σ_{π ∈ NC_n} p^{μ_{τ1}(π)} q^{μ_{τ2}(π)}`, in one enumeration pass.
pub fn joint_distribution(n: usize, tau1: &SubwordPattern, tau2: &SubwordPattern) -> Result<MultiPoly> {
    let hist = nc_histogram(n, &EnumConfig::default(), |w| {
        (count_occurrences(w, tau1.word()) as u32, count_occurrences(w, tau2.word()) as u32)
    })?;
    Ok(MultiPoly::from_counts(hist.into_iter().map(|((e1, e2), c)| (Monomial::new(e2, e1, 0), c))))
}

/// `Σ_{π ∈ NC_n} v^{rep(π)} q^{μ_τ(π)}`; the increasing partition (and the
/// empty one) contribute `v^0`.
pub fn rep_joint_distribution(n: usize, tau: &SubwordPattern) -> Result<MultiPoly> {
    let hist = nc_histogram(n, &EnumConfig::default(), |w| {
        let r = rep_of(w).unwrap_or(0) as u32;
        (count_occurrences(w, tau.word()) as u32, r)
    })?;
    Ok(MultiPoly::from_counts(hist.into_iter().map(|((e, r), c)| (Monomial::new(e, 0, r), c))))
}

/// Brute-force distribution rows `n -> polynomial` for one or two patterns.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistributionTable {
    pub patterns: Vec<SubwordPattern>,
    pub rows: BTreeMap<usize, MultiPoly>,
}

impl DistributionTable {
    /// Rows `0..=n_max` of the distribution of `tau` (marker `q`).
    pub fn single(tau: &SubwordPattern, n_max: usize) -> Result<Self> {
        let rows = (0..=n_max).map(|n| Ok((n, distribution(n, tau)?))).collect::<Result<_>>()?;
        Ok(DistributionTable { patterns: vec![tau.clone()], rows })
    }

    /// Rows of the joint distribution (markers `p` for `tau1`, `q` for `tau2`).
    pub fn joint(tau1: &SubwordPattern, tau2: &SubwordPattern, n_max: usize) -> Result<Self> {
        let rows = (0..=n_max).map(|n| Ok((n, joint_distribution(n, tau1, tau2)?))).collect::<Result<_>>()?;
        Ok(DistributionTable { patterns: vec![tau1.clone(), tau2.clone()], rows })
    }
}

/// Total occurrences `Σ_{π ∈ NC_n} μ_τ(π)` by brute force.
pub fn total_by_enumeration(n: usize, tau: &SubwordPattern) -> Result<u64> {
    let hist = nc_histogram(n, &EnumConfig::default(), |w| count_occurrences(w, tau.word()) as u64)?;
    Ok(hist.into_iter().map(|(e, c)| e * c).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::partition::{binomial, catalan, enumerate_nc};
    use num::BigUint;

    fn pat(s: &str) -> SubwordPattern {
        s.parse().unwrap()
    }

    fn nc(s: &str) -> NCPartition {
        s.parse().unwrap()
    }

    fn q() -> MultiPoly {
        MultiPoly::marker(Marker::Q)
    }

    #[test]
    fn occurrence_examples() {
        let pi = nc("122322114115");
        assert_eq!(count_subword(&pi, &pat("221")), 1);
        assert_eq!(count_subword(&pi, &pat("211")), 3);
        assert_eq!(count_subword(&nc("111"), &pat("111")), 1);
        let long = NCPartition::new(vec![1, 2, 3, 1, 1, 4, 5, 1, 6, 7, 8, 6, 6, 1, 9]).unwrap();
        assert_eq!(count_subword(&long, &pat("231")), 3);
        assert_eq!(count_subword(&long, &pat("221")), 1);
    }

    #[test]
    fn rep_examples() {
        assert_eq!(rep(&nc("1234")).unwrap(), 0);
        assert_eq!(rep(&nc("1213")).unwrap(), 1);
        assert_eq!(rep(&nc("1233")).unwrap(), 3);
        assert_eq!(rep(&nc("")), Err(Error::EmptyPartition));
    }

    #[test]
    fn simple_statistics() {
        assert_eq!((block_count(&[1, 2, 3]), ascent_count(&[1, 2, 3]), descent_count(&[1, 2, 3])), (3, 2, 0));
        assert_eq!((block_count(&[1, 2, 2, 1]), ascent_count(&[1, 2, 2, 1]), descent_count(&[1, 2, 2, 1])), (2, 1, 1));
        let total: usize = enumerate_nc(3).unwrap().iter().map(|p| block_count(p.letters())).sum();
        assert_eq!(total, 10);
    }

    #[test]
    fn blocks_and_ascents_over_nc() {
        for r in 1..=12 {
            let mut blocks = 0u64;
            crate::partition::for_each_nc(r, |w| {
                assert_eq!(ascent_count(w) + 1, block_count(w));
                blocks += block_count(w) as u64;
            });
            assert_eq!(BigUint::from(blocks), binomial(2 * r - 1, r), "r = {r}");
        }
    }

    #[test]
    fn distribution_examples() {
        assert_eq!(distribution(3, &pat("112")).unwrap(), MultiPoly::from_int(4) + q());
        assert_eq!(distribution(3, &pat("212")).unwrap(), MultiPoly::from_int(5));
        assert_eq!(distribution(0, &pat("12")).unwrap(), MultiPoly::one());
    }

    #[test]
    fn joint_examples() {
        let p = MultiPoly::marker(Marker::P);
        let got = joint_distribution(2, &pat("1"), &pat("12")).unwrap();
        assert_eq!(got, p.pow(2) * q() + p.pow(2));
        assert_eq!(joint_distribution(0, &pat("1"), &pat("12")).unwrap(), MultiPoly::one());
        // NC_3: 111 -> (1,0), 112 -> (0,1), others (0,0)
        let got = joint_distribution(3, &pat("111"), &pat("112")).unwrap();
        assert_eq!(got, MultiPoly::from_int(3) + p + q());
    }

    #[test]
    fn rep_joint_examples() {
        let v = MultiPoly::marker(Marker::V);
        assert_eq!(rep_joint_distribution(1, &pat("122")).unwrap(), MultiPoly::one());
        assert_eq!(rep_joint_distribution(2, &pat("122")).unwrap(), MultiPoly::one() + v.clone());
        // NC_3: 111 v, 112 v, 121 v, 122 v^2 q, 123 1
        let want = MultiPoly::one() + v.scale(&rat(3)) + v.pow(2) * q();
        assert_eq!(rep_joint_distribution(3, &pat("122")).unwrap(), want);
    }

    #[test]
    fn distributions_sum_to_catalan() {
        for tau in ["11", "12", "111", "112", "121", "122", "211", "221", "1231"] {
            for n in 0..=10 {
                let d = distribution(n, &pat(tau)).unwrap();
                assert!(d.is_integral() && d.is_nonnegative());
                assert_eq!(d.sum_of_coefficients(), num::BigRational::from_integer(catalan(n).into()));
            }
        }
    }

    #[test]
    fn pattern_212_never_occurs() {
        for n in 0..=12 {
            let d = distribution(n, &pat("212")).unwrap();
            assert_eq!(d, MultiPoly::constant(num::BigRational::from_integer(catalan(n).into())));
        }
    }

    #[test]
    fn length_three_equivalences() {
        for n in 0..=12 {
            assert_eq!(distribution(n, &pat("211")).unwrap(), distribution(n, &pat("221")).unwrap());
            assert_eq!(distribution(n, &pat("112")).unwrap(), distribution(n, &pat("122")).unwrap());
        }
    }

    #[test]
    fn limit_propagates() {
        let cfg = EnumConfig { limit: 4 };
        assert!(matches!(distribution_with(5, &pat("11"), &cfg), Err(Error::LimitExceeded { .. })));
    }
}
