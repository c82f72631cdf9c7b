//! Affective-state features h_A = concat(f_t, f_a, f_v).
//!
//! Each modality is produced by an [`AffectProvider`]. The crate ships
//! deterministic baselines: lexicon averaging for text, MFCC and prosodic
//! statistics for audio, and a lookup into precomputed vectors for video.
//! Pretrained extractors can be plugged in behind the same trait.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::cognitive::{prosody::prosody, SpeechAnalysis};
use crate::error::{Error, Result};
use crate::math;
use crate::segments::SegmentMap;
use crate::signal::{frame_signal, AudioClip, MfccExtractor, SignalConfig, Window};

pub const AUDIO_AFFECT_DIM: usize = 150;
pub const VIDEO_AFFECT_DIM: usize = 100;
/// 27 emotion categories plus neutral.
pub const DEFAULT_TEXT_AFFECT_DIM: usize = 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Modality {
    Text,
    Audio,
    Video,
}

/// Everything a provider may look at for one clip.
#[derive(Debug, Clone, Copy)]
pub struct AffectInput<'a> {
    pub clip_id: &'a str,
    pub audio: &'a AudioClip,
    pub transcript: &'a [String],
}

/// A source of affect features for one modality with a fixed output length.
pub trait AffectProvider {
    fn name(&self) -> &str;
    fn modality(&self) -> Modality;
    fn output_dim(&self) -> usize;
    fn extract(&self, input: &AffectInput<'_>) -> Result<Vec<f64>>;
}

// ---------------------------------------------------------------- audio

const STAT_COUNT: usize = 5;

/// mean, std, min, max, median
fn summary(xs: &[f64]) -> [f64; STAT_COUNT] {
    if xs.is_empty() {
        return [0.0; STAT_COUNT];
    }
    let (lo, hi) = xs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    [math::mean(xs), math::std_dev(xs), lo, hi, math::median(xs)]
}

/// Regression deltas over +-2 frames with edge replication.
fn deltas(frames: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = frames.len();
    let at = |i: isize| &frames[i.clamp(0, n as isize - 1) as usize];
    (0..n as isize)
        .map(|t| {
            (0..frames[0].len())
                .map(|c| (at(t + 1)[c] - at(t - 1)[c] + 2.0 * (at(t + 2)[c] - at(t - 2)[c])) / 10.0)
                .collect()
        })
        .collect()
}

/// Deterministic 150-dimensional audio affect baseline.
///
/// Layout: five statistics (mean, std, min, max, median) of each of 13 MFCCs
/// (65 values, grouped by statistic), the same for their deltas (65), then 20
/// prosodic summaries: RMS energy statistics, voiced F0 statistics,
/// zero-crossing-rate statistics, voicing fraction, pause fraction, segment
/// rate and mean speech/pause run lengths.
pub fn affect_audio_baseline(clip: &AudioClip) -> Result<Vec<f64>> {
    affect_audio_baseline_with(clip, &SignalConfig::default())
}

pub fn affect_audio_baseline_with(clip: &AudioClip, config: &SignalConfig) -> Result<Vec<f64>> {
    let analysis = SpeechAnalysis::new(clip, config)?;
    let frames = frame_signal(clip, config.mfcc_frame_ms, config.mfcc_hop_ms, Window::Hann)?;
    let extractor = MfccExtractor::new(
        frames.frame_len,
        clip.sample_rate_hz(),
        config.n_mels,
        config.n_mfcc,
        config.mel_floor,
    )?;
    let coeffs: Vec<Vec<f64>> = frames
        .frames
        .iter()
        .map(|f| extractor.compute(f))
        .collect::<Result<_>>()?;
    let d = deltas(&coeffs);

    let mut out = Vec::with_capacity(AUDIO_AFFECT_DIM);
    for table in [&coeffs, &d] {
        let per_coeff: Vec<[f64; STAT_COUNT]> = (0..config.n_mfcc)
            .map(|c| summary(&table.iter().map(|row| row[c]).collect::<Vec<_>>()))
            .collect();
        for stat in 0..STAT_COUNT {
            out.extend(per_coeff.iter().map(|s| s[stat]));
        }
    }

    let p = prosody(&analysis);
    let zcr: Vec<f64> = analysis
        .frames
        .frames
        .iter()
        .map(|f| {
            f.windows(2)
                .filter(|w| (w[0] >= 0.0) != (w[1] >= 0.0))
                .count() as f64
                / (f.len() - 1) as f64
        })
        .collect();
    out.extend(summary(&analysis.energy));
    out.extend(summary(&analysis.pitch.voiced_f0()));
    out.extend(summary(&zcr));
    out.extend([
        analysis.pitch.voicing_fraction,
        p.pause_fraction,
        p.voiced_segment_rate,
        p.mean_voiced_run_s,
        p.mean_pause_run_s,
    ]);
    // Non-default MFCC counts change the layout; pad or trim to the fixed width.
    out.resize(AUDIO_AFFECT_DIM, 0.0);
    Ok(out)
}

#[derive(Debug, Clone, Default)]
pub struct AudioBaseline {
    pub config: SignalConfig,
}

impl AffectProvider for AudioBaseline {
    fn name(&self) -> &str {
        "audio-baseline"
    }

    fn modality(&self) -> Modality {
        Modality::Audio
    }

    fn output_dim(&self) -> usize {
        AUDIO_AFFECT_DIM
    }

    fn extract(&self, input: &AffectInput<'_>) -> Result<Vec<f64>> {
        affect_audio_baseline_with(input.audio, &self.config)
    }
}

// ----------------------------------------------------------------- text

/// Word to affect-vector table; keys are matched case-insensitively.
#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon {
    dim: usize,
    entries: BTreeMap<String, Vec<f64>>,
}

impl Lexicon {
    pub fn new(entries: impl IntoIterator<Item = (String, Vec<f64>)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut dim = None;
        for (word, v) in entries {
            let d = *dim.get_or_insert(v.len());
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
            map.insert(word.to_lowercase(), v);
        }
        match dim {
            Some(d) if d > 0 => Ok(Self {
                dim: d,
                entries: map,
            }),
            _ => Err(Error::EmptyLexicon),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&Vec<f64>> {
        self.entries.get(&word.to_lowercase())
    }
}

/// Mean lexicon vector over in-vocabulary tokens; zeros when none match.
pub fn affect_text_baseline<S: AsRef<str>>(transcript: &[S], lexicon: &Lexicon) -> Vec<f64> {
    let mut sum = vec![0.0; lexicon.dim()];
    let mut hits = 0usize;
    for v in transcript.iter().filter_map(|t| lexicon.get(t.as_ref())) {
        for (s, x) in sum.iter_mut().zip(v) {
            *s += x;
        }
        hits += 1;
    }
    if hits > 0 {
        for s in &mut sum {
            *s /= hits as f64;
        }
    }
    sum
}

#[derive(Debug, Clone)]
pub struct LexiconText {
    pub lexicon: Lexicon,
}

impl AffectProvider for LexiconText {
    fn name(&self) -> &str {
        "lexicon-text"
    }

    fn modality(&self) -> Modality {
        Modality::Text
    }

    fn output_dim(&self) -> usize {
        self.lexicon.dim()
    }

    fn extract(&self, input: &AffectInput<'_>) -> Result<Vec<f64>> {
        Ok(affect_text_baseline(input.transcript, &self.lexicon))
    }
}

// ---------------------------------------------------------------- video

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum MissingPolicy {
    Strict,
    #[default]
    ZeroFill,
}

/// Precomputed per-clip vectors, immutable once built.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VectorStore {
    vectors: BTreeMap<String, Vec<f64>>,
}

impl VectorStore {
    pub fn new(vectors: impl IntoIterator<Item = (String, Vec<f64>)>) -> Self {
        Self {
            vectors: vectors.into_iter().collect(),
        }
    }

    pub fn get(&self, clip_id: &str) -> Option<&Vec<f64>> {
        self.vectors.get(clip_id)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

pub fn affect_video_load(
    clip_id: &str,
    store: &VectorStore,
    policy: MissingPolicy,
) -> Result<Vec<f64>> {
    match store.get(clip_id) {
        Some(v) if v.len() == VIDEO_AFFECT_DIM => Ok(v.clone()),
        Some(v) => Err(Error::DimensionMismatch {
            expected: VIDEO_AFFECT_DIM,
            found: v.len(),
        }),
        None => match policy {
            MissingPolicy::Strict => Err(Error::MissingVideoAffect(clip_id.to_string())),
            MissingPolicy::ZeroFill => Ok(vec![0.0; VIDEO_AFFECT_DIM]),
        },
    }
}

#[derive(Debug, Clone)]
pub struct StoredVideo {
    pub store: VectorStore,
    pub policy: MissingPolicy,
}

impl AffectProvider for StoredVideo {
    fn name(&self) -> &str {
        "stored-video"
    }

    fn modality(&self) -> Modality {
        Modality::Video
    }

    fn output_dim(&self) -> usize {
        VIDEO_AFFECT_DIM
    }

    fn extract(&self, input: &AffectInput<'_>) -> Result<Vec<f64>> {
        affect_video_load(input.clip_id, &self.store, self.policy)
    }
}

// ---------------------------------------------------------------- fused

#[derive(Debug, Clone, PartialEq)]
pub struct AffectiveVector {
    pub values: Vec<f64>,
    pub segment_map: SegmentMap,
}

pub fn affective_segment_map(text_dim: usize) -> SegmentMap {
    SegmentMap::from_lengths(&[
        ("f_t", text_dim),
        ("f_a", AUDIO_AFFECT_DIM),
        ("f_v", VIDEO_AFFECT_DIM),
    ])
}

/// Concatenates (f_t, f_a, f_v), checking each against the declared layout.
pub fn affective_vector(
    text: &[f64],
    audio: &[f64],
    video: &[f64],
    text_dim: usize,
) -> Result<AffectiveVector> {
    for (got, want) in [
        (text.len(), text_dim),
        (audio.len(), AUDIO_AFFECT_DIM),
        (video.len(), VIDEO_AFFECT_DIM),
    ] {
        if got != want {
            return Err(Error::DimensionMismatch {
                expected: want,
                found: got,
            });
        }
    }
    let mut values = Vec::with_capacity(text_dim + AUDIO_AFFECT_DIM + VIDEO_AFFECT_DIM);
    values.extend_from_slice(text);
    values.extend_from_slice(audio);
    values.extend_from_slice(video);
    Ok(AffectiveVector {
        values,
        segment_map: affective_segment_map(text_dim),
    })
}

pub type BoxedProvider = Box<dyn AffectProvider + Send + Sync>;

/// Three providers whose modalities and widths were validated up front.
pub struct AffectPipeline {
    text: BoxedProvider,
    audio: BoxedProvider,
    video: BoxedProvider,
}

impl core::fmt::Debug for AffectPipeline {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("AffectPipeline")
            .field("text", &self.text.name())
            .field("audio", &self.audio.name())
            .field("video", &self.video.name())
            .finish()
    }
}

impl AffectPipeline {
    pub fn new(text: BoxedProvider, audio: BoxedProvider, video: BoxedProvider) -> Result<Self> {
        for (p, modality) in [
            (&text, Modality::Text),
            (&audio, Modality::Audio),
            (&video, Modality::Video),
        ] {
            if p.modality() != modality {
                return Err(Error::InvalidParameter(alloc::format!(
                    "provider `{}` is not a {modality:?} provider",
                    p.name()
                )));
            }
        }
        if audio.output_dim() != AUDIO_AFFECT_DIM {
            return Err(Error::DimensionMismatch {
                expected: AUDIO_AFFECT_DIM,
                found: audio.output_dim(),
            });
        }
        if video.output_dim() != VIDEO_AFFECT_DIM {
            return Err(Error::DimensionMismatch {
                expected: VIDEO_AFFECT_DIM,
                found: video.output_dim(),
            });
        }
        Ok(Self { text, audio, video })
    }

    pub fn text_dim(&self) -> usize {
        self.text.output_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.text_dim() + AUDIO_AFFECT_DIM + VIDEO_AFFECT_DIM
    }

    pub fn extract(&self, input: &AffectInput<'_>) -> Result<AffectiveVector> {
        let t = self.text.extract(input)?;
        let a = self.audio.extract(input)?;
        let v = self.video.extract(input)?;
        affective_vector(&t, &a, &v, self.text_dim())
    }
}
