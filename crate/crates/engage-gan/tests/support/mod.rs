//! Helpers for driving the `engage-gan` binary against generated corpora.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const RATE: u32 = 16_000;

pub fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_engage-gan"));
    cmd.env_remove("ENGAGE_GAN_THREADS");
    cmd
}

pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    bin().args(args).output().expect("binary runs")
}

/// Runs the binary and panics with its stderr unless it exits 0.
pub fn ok<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = run(args);
    assert!(
        out.status.success(),
        "exit {:?}\nstderr:\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn p(path: &Path) -> &str {
    path.to_str().expect("utf-8 path")
}

pub fn write_wav(path: &Path, samples: &[f64]) {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: RATE,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut w = hound::WavWriter::create(path, spec).unwrap();
    for &s in samples {
        w.write_sample((s.clamp(-1.0, 1.0) * 32767.0).round() as i16)
            .unwrap();
    }
    w.finalize().unwrap();
}

/// Voiced harmonic segments with a silent gap: `f0` in Hz, `gap_s` of silence.
pub fn speech_like(f0: f64, gap_s: f64, amp: f64, secs: f64) -> Vec<f64> {
    let n = (secs * RATE as f64) as usize;
    let gap_start = (0.45 * secs * RATE as f64) as usize;
    let gap_end = gap_start + (gap_s * RATE as f64) as usize;
    (0..n)
        .map(|i| {
            if (gap_start..gap_end).contains(&i) {
                return 0.0;
            }
            let t = i as f64 / RATE as f64;
            let vibrato = 1.0 + 0.02 * (2.0 * PI * 5.0 * t).sin();
            let phase = 2.0 * PI * f0 * vibrato * t;
            let v: f64 = (1..=8).map(|h| (h as f64 * phase).sin() / h as f64).sum();
            amp * 0.4 * v
        })
        .collect()
}

/// Twelve labeled clips over four speakers, plus lexicon, video store and
/// external session ratings. Returns the manifest path.
pub fn corpus(dir: &Path) -> PathBuf {
    fs::create_dir_all(dir.join("wav")).unwrap();
    let words = ["we", "think", "this", "is", "good", "bad", "maybe", "yes"];
    let mut manifest = String::new();
    let mut video = String::from("clip_id");
    for k in 1..=100 {
        video.push_str(&format!(",v{k}"));
    }
    video.push('\n');
    for i in 0..12 {
        let id = format!("c{i:02}");
        let speaker = format!("p{}", i % 4);
        let session = format!("s{}", i % 4);
        let wav = format!("wav/{id}.wav");
        write_wav(
            &dir.join(&wav),
            &speech_like(
                100.0 + 12.0 * i as f64,
                0.1 + 0.03 * i as f64,
                0.5 + 0.03 * i as f64,
                2.0,
            ),
        );
        let transcript: Vec<&str> = (0..4).map(|k| words[(i + 3 * k) % words.len()]).collect();
        let label = 0.1 + 0.07 * i as f64;
        manifest.push_str(
            &serde_json::json!({
                "clip_id": id,
                "session_id": session,
                "speaker_id": speaker,
                "wav_path": wav,
                "transcript": transcript,
                "raw_label": [label],
                "scale": "unit",
            })
            .to_string(),
        );
        manifest.push('\n');
        if i != 5 {
            video.push_str(&id);
            for k in 0..100 {
                video.push_str(&format!(",{}", ((i * 7 + k) % 13) as f64 / 13.0));
            }
            video.push('\n');
        }
    }
    let mut lexicon = String::from("word,a,b,c,d\n");
    for (i, w) in words.iter().enumerate() {
        lexicon.push_str(&format!(
            "{w},{},{},{},{}\n",
            i as f64 / 8.0,
            1.0 - i as f64 / 8.0,
            0.5,
            (i % 2) as f64
        ));
    }
    fs::write(dir.join("manifest.jsonl"), manifest).unwrap();
    fs::write(dir.join("video.csv"), video).unwrap();
    fs::write(dir.join("lexicon.csv"), lexicon).unwrap();
    fs::write(
        dir.join("external.csv"),
        "session_id,score\ns0,0.2\ns1,0.5\ns2,0.4\ns3,0.9\n",
    )
    .unwrap();
    fs::write(
        dir.join("extract.toml"),
        "[providers]\nlexicon = \"lexicon.csv\"\nvideo_store = \"video.csv\"\n",
    )
    .unwrap();
    dir.join("manifest.jsonl")
}

/// A small, quick training configuration.
pub fn small_config(dir: &Path, epochs: usize) -> PathBuf {
    let path = dir.join("small.toml");
    fs::write(
        &path,
        format!(
            "[training]\nbatch_size = 8\nepochs = {epochs}\nnoise_dim = 4\nlearning_rate = 0.001\n\
             discriminator_hidden = [16, 8]\ngenerator_hidden = [8, 16]\n"
        ),
    )
    .unwrap();
    path
}

pub fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    read(path)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

pub fn metric(path: &Path, name: &str) -> f64 {
    csv_rows(path)
        .into_iter()
        .find(|r| r[0] == name)
        .unwrap_or_else(|| panic!("metric {name} missing"))[2]
        .parse()
        .unwrap()
}
