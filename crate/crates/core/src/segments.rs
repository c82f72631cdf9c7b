use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

/// A named contiguous span inside a feature vector.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Segment {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

impl Segment {
    pub fn range(&self) -> Range<usize> {
        self.start..self.start + self.len
    }
}

/// Ordered, gap-free layout of a concatenated feature vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SegmentMap {
    pub segments: Vec<Segment>,
}

impl SegmentMap {
    pub fn from_lengths(parts: &[(&str, usize)]) -> Self {
        let mut start = 0;
        let segments = parts
            .iter()
            .map(|(name, len)| {
                let s = Segment {
                    name: name.to_string(),
                    start,
                    len: *len,
                };
                start += len;
                s
            })
            .collect();
        Self { segments }
    }

    pub fn total_len(&self) -> usize {
        self.segments.iter().map(|s| s.len).sum()
    }

    pub fn get(&self, name: &str) -> Option<&Segment> {
        self.segments.iter().find(|s| s.name == name)
    }

    /// This map followed by `other`, with `other`'s spans shifted and prefixed.
    pub fn concat(&self, other: &SegmentMap, prefix_self: &str, prefix_other: &str) -> Self {
        let offset = self.total_len();
        let mut segments: Vec<Segment> = self
            .segments
            .iter()
            .map(|s| Segment {
                name: alloc::format!("{prefix_self}{}", s.name),
                ..s.clone()
            })
            .collect();
        segments.extend(other.segments.iter().map(|s| Segment {
            name: alloc::format!("{prefix_other}{}", s.name),
            start: s.start + offset,
            len: s.len,
        }));
        Self { segments }
    }
}
