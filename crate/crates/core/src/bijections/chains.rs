//! Run-length reversal along chains of runs.
//!
//! A chain is a maximal sequence of runs `R_1, ..., R_L` where each `R_i`
//! is linked to `R_{i+1}` through a fixed-length gap. Reversing the run
//! lengths along every chain (gaps untouched) is an involution whenever
//! the link relation only looks at run letters and gap contents.

use crate::error::{Error, Result};
use crate::partition::{Letter, NCPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Run {
    pub start: usize,
    pub len: usize,
    pub letter: Letter,
}

impl Run {
    pub fn end(&self) -> usize {
        self.start + self.len
    }
}

pub(crate) fn runs(w: &[Letter]) -> Vec<Run> {
    let mut out: Vec<Run> = Vec::new();
    for (i, &c) in w.iter().enumerate() {
        match out.last_mut() {
            Some(r) if r.letter == c => r.len += 1,
            _ => out.push(Run { start: i, len: 1, letter: c }),
        }
    }
    out
}

/// `link(word, run)` returns the start position of the linked run, if any.
pub(crate) fn chains<F>(w: &[Letter], link: F) -> Vec<Vec<Run>>
where
    F: Fn(&[Letter], &Run) -> Option<usize>,
{
    let rs = runs(w);
    let mut index_at = vec![usize::MAX; w.len()];
    for (k, r) in rs.iter().enumerate() {
        index_at[r.start] = k;
    }
    let next: Vec<Option<usize>> = rs
        .iter()
        .map(|r| link(w, r).map(|p| index_at[p]).filter(|&k| k != usize::MAX))
        .collect();
    let mut has_prev = vec![false; rs.len()];
    for k in next.iter().flatten() {
        has_prev[*k] = true;
    }
    let mut out = Vec::new();
    for k in 0..rs.len() {
        if has_prev[k] || next[k].is_none() {
            continue;
        }
        let mut chain = vec![rs[k]];
        let mut cur = k;
        while let Some(nx) = next[cur] {
            chain.push(rs[nx]);
            cur = nx;
        }
        out.push(chain);
    }
    out
}

/// Reverses the run lengths of every chain. Chains must not overlap.
pub(crate) fn reverse_chains(w: &[Letter], chains: &[Vec<Run>]) -> Result<NCPartition> {
    let mut spans: Vec<(usize, usize)> =
        chains.iter().map(|c| (c[0].start, c.last().expect("nonempty chain").end())).collect();
    spans.sort_unstable();
    if spans.windows(2).any(|p| p[1].0 < p[0].1) {
        return Err(Error::InvariantViolation("overlapping chains".into()));
    }
    let mut out = w.to_vec();
    for chain in chains {
        let mut pos = chain[0].start;
        let last = chain.len() - 1;
        for (i, run) in chain.iter().enumerate() {
            let len = chain[last - i].len;
            out[pos..pos + len].fill(run.letter);
            pos += len;
            if i < last {
                let gap = &w[run.end()..chain[i + 1].start];
                out[pos..pos + gap.len()].copy_from_slice(gap);
                pos += gap.len();
            }
        }
        debug_assert_eq!(pos, chain[last].end());
    }
    NCPartition::new(out).map_err(|e| Error::InvariantViolation(format!("chain reversal left NC_n: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs_of_word() {
        let r = runs(&[1, 2, 2, 3, 2, 2]);
        assert_eq!(r.len(), 4);
        assert_eq!(r[1], Run { start: 1, len: 2, letter: 2 });
        assert!(runs(&[]).is_empty());
    }

    #[test]
    fn decreasing_chain() {
        let w = [1, 2, 2, 3, 2, 2, 1, 1];
        let ch = chains(&w, |w, r| (r.end() < w.len() && w[r.end()] < r.letter).then(|| r.end()));
        assert_eq!(ch.len(), 1);
        assert_eq!(reverse_chains(&w, &ch).unwrap().letters(), &[1, 2, 2, 3, 3, 2, 2, 1]);
    }
}
