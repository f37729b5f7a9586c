//! Descent-bottom / plateau-code description of a non-crossing partition.
//!
//! Cutting `π` at its descents leaves weakly increasing sections. Each
//! section is recorded by its first letter (a descent bottom, or 1 for the
//! first section) and a bit per step: 1 for a rise, 0 for a repeat.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Letter, NCPartition};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DescentCode {
    /// Descent bottoms `b_1, ..., b_r`.
    pub bottoms: Vec<Letter>,
    /// One code per section, `r + 1` in all.
    pub codes: Vec<Vec<bool>>,
}

impl DescentCode {
    pub fn len(&self) -> usize {
        self.codes.iter().map(|c| c.len() + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Every section code reversed.
    pub fn reversed(&self) -> DescentCode {
        DescentCode {
            bottoms: self.bottoms.clone(),
            codes: self.codes.iter().map(|c| c.iter().rev().copied().collect()).collect(),
        }
    }
}

/// Splits a word into its maximal weakly increasing sections.
pub fn sections(w: &[Letter]) -> Vec<&[Letter]> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..w.len() {
        if w[i] < w[i - 1] {
            out.push(&w[start..i]);
            start = i;
        }
    }
    if !w.is_empty() {
        out.push(&w[start..]);
    }
    out
}

/// Descent bottoms of a word, left to right.
pub fn descent_bottoms(w: &[Letter]) -> Vec<Letter> {
    w.windows(2).filter(|p| p[1] < p[0]).map(|p| p[1]).collect()
}

pub fn descent_encode(pi: &NCPartition) -> Result<DescentCode> {
    if pi.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let secs = sections(pi.letters());
    let bottoms = secs[1..].iter().map(|s| s[0]).collect();
    let codes = secs.iter().map(|s| s.windows(2).map(|p| p[1] > p[0]).collect()).collect();
    Ok(DescentCode { bottoms, codes })
}

/// Rebuilds the partition: a 0 repeats the previous letter and a 1 opens a
/// new block, since every ascent top of a non-crossing partition is the
/// first occurrence of its letter.
pub fn descent_decode(code: &DescentCode) -> Result<NCPartition> {
    if code.codes.is_empty() {
        return Err(Error::EmptyPartition);
    }
    if code.codes.len() != code.bottoms.len() + 1 {
        return Err(Error::InvalidSequence(format!(
            "{} sections need {} bottoms, got {}",
            code.codes.len(),
            code.codes.len() - 1,
            code.bottoms.len()
        )));
    }
    let mut w: Vec<Letter> = Vec::with_capacity(code.len());
    let mut top: Letter = 0;
    for (k, bits) in code.codes.iter().enumerate() {
        let first = if k == 0 { 1 } else { code.bottoms[k - 1] };
        if k > 0 && first >= *w.last().expect("earlier section") {
            return Err(Error::InvalidSequence(format!("bottom {first} is not below the previous letter")));
        }
        w.push(first);
        top = top.max(first);
        for &rise in bits {
            let prev = *w.last().expect("nonempty");
            if rise {
                top += 1;
                w.push(top);
            } else {
                w.push(prev);
            }
        }
    }
    NCPartition::new(w)
}

/// Reverses every section code; an involution on `NC_n`.
pub fn map_descent_code(pi: &NCPartition) -> Result<NCPartition> {
    let code = descent_encode(pi)?;
    let image = descent_decode(&code.reversed())
        .map_err(|e| Error::InvariantViolation(format!("reversed code of {pi} does not decode: {e}")))?;
    if descent_encode(&image)? != code.reversed() {
        return Err(Error::InvariantViolation(format!("decoding of the reversed code of {pi} is not faithful")));
    }
    Ok(image)
}
