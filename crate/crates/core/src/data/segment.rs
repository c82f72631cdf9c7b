use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::signal::AudioClip;

pub const DEFAULT_CLIP_S: f64 = 3.0;

/// Consecutive non-overlapping clips of `clip_len_s`; a shorter trailing
/// remainder is dropped. Clip ids are `<session>#<index>`.
pub fn segment_clips(session: &AudioClip, clip_len_s: f64) -> Result<Vec<AudioClip>> {
    if !(clip_len_s > 0.0 && clip_len_s.is_finite()) {
        return Err(Error::InvalidParameter(
            "clip length must be positive".into(),
        ));
    }
    let per = math::round(clip_len_s * session.sample_rate_hz() as f64) as usize;
    if per == 0 {
        return Err(Error::InvalidParameter(
            "clip length is shorter than one sample".into(),
        ));
    }
    if session.len() < per {
        return Err(Error::ClipTooShort {
            needed: per,
            got: session.len(),
        });
    }
    Ok((0..session.len() / per)
        .map(|k| {
            session.slice(
                k * per,
                (k + 1) * per,
                format!("{}#{k:04}", session.source_id()),
            )
        })
        .collect())
}
