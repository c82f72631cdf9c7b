use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};

/// A transcript word and the 1 s bin it was aligned to, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WordTimestamp {
    pub word: String,
    pub bin_s: Option<u32>,
}

impl WordTimestamp {
    pub fn new(word: impl Into<String>, bin_s: Option<u32>) -> Self {
        Self {
            word: word.into(),
            bin_s,
        }
    }
}

/// Fills every run of unbinned words lying between bins `i` and `j`: the
/// whole run gets `i` when `i == j`, otherwise one fair coin per run picks
/// `i + 1` or `j - 1`.
pub fn align_words<R: Rng + ?Sized>(
    words: &[WordTimestamp],
    rng: &mut R,
) -> Result<Vec<WordTimestamp>> {
    if words.is_empty() {
        return Ok(Vec::new());
    }
    if words[0].bin_s.is_none() || words[words.len() - 1].bin_s.is_none() {
        return Err(Error::UnanchoredSequence);
    }
    let mut last: Option<u32> = None;
    for (k, w) in words.iter().enumerate() {
        if let Some(b) = w.bin_s {
            if last.is_some_and(|l| b < l) {
                return Err(Error::NonMonotonicBins(k));
            }
            last = Some(b);
        }
    }
    let mut out = words.to_vec();
    let mut k = 0;
    while k < out.len() {
        if out[k].bin_s.is_some() {
            k += 1;
            continue;
        }
        let start = k;
        while out[k].bin_s.is_none() {
            k += 1;
        }
        let i = out[start - 1].bin_s.expect("anchored");
        let j = out[k].bin_s.expect("anchored");
        let fill = if i == j {
            i
        } else if rng.random_bool(0.5) {
            i + 1
        } else {
            j - 1
        };
        for w in &mut out[start..k] {
            w.bin_s = Some(fill);
        }
    }
    Ok(out)
}
