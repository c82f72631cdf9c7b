//! TOML run configuration.
//!
//! ```toml
//! [training]
//! batch_size = 64
//! epochs = 50
//!
//! [training.loss_weights]
//! gp = 10.0
//!
//! [providers]
//! lexicon = "lexicon.csv"
//! video_store = "video.csv"
//! missing_video = "zero_fill"
//!
//! [signal]
//! fmin_hz = 60.0
//! ```
//!
//! Every table and key is optional; missing keys take their defaults.
//! Unknown keys are rejected. Relative paths resolve against the directory
//! holding the config file.

use std::fs;
use std::path::{Path, PathBuf};

use engage_core::affect::{MissingPolicy, DEFAULT_TEXT_AFFECT_DIM};
use engage_core::signal::SignalConfig;
use engage_core::ssgan::SSGanConfig;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProviderConfig {
    /// `word,v1..v_d` table for the text baseline. Without it the text
    /// segment is `text_dim` zeros.
    pub lexicon: Option<PathBuf>,
    pub text_dim: usize,
    /// `clip_id,v1..v100` precomputed video vectors.
    pub video_store: Option<PathBuf>,
    pub missing_video: MissingPolicy,
}

impl Default for ProviderConfig {
    fn default() -> Self {
        Self {
            lexicon: None,
            text_dim: DEFAULT_TEXT_AFFECT_DIM,
            video_store: None,
            missing_video: MissingPolicy::ZeroFill,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfigFile {
    pub training: SSGanConfig,
    pub providers: ProviderConfig,
    pub signal: SignalConfig,
}

impl RunConfigFile {
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let cfg: RunConfigFile = toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start].matches('\n').count() as u64 + 1);
            Error::parse(origin, line, e.message().to_string())
        })?;
        Ok(cfg)
    }

    /// Reads `path` and resolves provider paths relative to its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::read(path, e))?;
        let mut cfg = Self::parse(&text, path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cfg.providers.lexicon, &mut cfg.providers.video_store]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration is always representable as TOML")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use engage_core::fusion::Task;

    #[test]
    fn empty_document_gives_defaults() {
        let cfg = RunConfigFile::parse("", Path::new("c.toml")).unwrap();
        assert_eq!(cfg, RunConfigFile::default());
        assert_eq!(cfg.training.batch_size, 512);
        assert_eq!(cfg.training.loss_weights.gp, 10.0);
    }

    #[test]
    fn partial_tables_merge_with_defaults() {
        let text = "[training]\nepochs = 3\ntask = \"valence_arousal\"\n[training.loss_weights]\nfake = 0.5\n";
        let cfg = RunConfigFile::parse(text, Path::new("c.toml")).unwrap();
        assert_eq!(cfg.training.epochs, 3);
        assert_eq!(cfg.training.task, Task::ValenceArousal);
        assert_eq!(cfg.training.loss_weights.fake, 0.5);
        assert_eq!(cfg.training.loss_weights.un, 1.0);
        assert_eq!(cfg.training.learning_rate, 1e-4);
    }

    #[test]
    fn unknown_keys_rejected() {
        for text in [
            "bogus = 1\n",
            "[training]\nepoch = 3\n",
            "[training.loss_weights]\nw_gp = 1.0\n",
            "[providers]\nlexicon_path = \"x\"\n",
            "[signal]\nfmin = 50.0\n",
        ] {
            let err = RunConfigFile::parse(text, Path::new("c.toml")).unwrap_err();
            assert!(matches!(err, Error::Parse { .. }), "{text}: {err}");
        }
    }

    #[test]
    fn echo_round_trips() {
        let mut cfg = RunConfigFile::default();
        cfg.training.learning_rate = 3e-4;
        cfg.training.seed = 11;
        cfg.providers.lexicon = Some("lex.csv".into());
        let back = RunConfigFile::parse(&cfg.to_toml(), Path::new("echo.toml")).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn relative_paths_resolve_against_config_dir() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.toml");
        fs::write(
            &p,
            "[providers]\nlexicon = \"lex.csv\"\nvideo_store = \"/abs/v.csv\"\n",
        )
        .unwrap();
        let cfg = RunConfigFile::load(&p).unwrap();
        assert_eq!(cfg.providers.lexicon, Some(dir.path().join("lex.csv")));
        assert_eq!(cfg.providers.video_store, Some(PathBuf::from("/abs/v.csv")));
    }
}
