//! Clip segmentation, annotation processing, word alignment, manifests and splits.

mod align;
mod annotation;
mod manifest;
mod segment;
mod split;

pub use align::{align_words, WordTimestamp};
pub use annotation::{
    average_annotators, clip_label, likert_to_unit, rescale_unit, AffectDimension, AnnotationScale,
    AnnotationStream, ANNOTATION_RATE_HZ, CLIP_SAMPLES,
};
pub use manifest::{ClipManifest, ClipRecord, LabelScale};
pub use segment::{segment_clips, DEFAULT_CLIP_S};
pub use split::{apply_split, split_fractional, PartitionedSamples, SplitSpec};
