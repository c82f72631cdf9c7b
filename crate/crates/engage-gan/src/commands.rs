use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use engage_core::affect::{
    AffectInput, AffectPipeline, AffectProvider, AudioBaseline, LexiconText, Modality, StoredVideo,
    VectorStore,
};
use engage_core::cognitive::{cognitive_vector_with, SpeechAnalysis};
use engage_core::data::{
    align_words, apply_split, average_annotators, clip_label, split_fractional,
};
use engage_core::eval::{
    aggregate_session, correlation_matrix, rmse, run_ablation_case, synth_dataset_with,
    AblationMode, AblationResult, SessionScore, SynthConfig,
};
use engage_core::fusion::{fuse, Sample, Task};
use engage_core::nn::Matrix;
use engage_core::ssgan::{feature_matrix, train, TrainRun};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::cli::{
    AblateArgs, AlignTextArgs, Command, DataArgs, EvaluateArgs, ExtractArgs, LabelsArgs,
    PredictArgs, SplitArgs, SynthArgs, TrainArgs, THREADS_ENV,
};
use crate::config::RunConfigFile;
use crate::error::{CoreContext, Error, Result};
use crate::formats::{
    self, read_external_scores, read_lexicon, read_manifest, read_samples, read_video_store,
    read_words, write_ablation, write_correlation, write_feature_cache, write_frame_dump,
    write_history, write_json, write_metrics, write_predictions, write_samples, write_sessions,
    write_words, MetricRow, SampleTable, SessionRow,
};
use crate::model::Checkpoint;
use crate::plot::correlation_svg;
use crate::rundir::RunDir;
use crate::wav::load_wav;

pub(crate) fn run(command: Command) -> Result<()> {
    match command {
        Command::Extract(a) => extract(a),
        Command::Split(a) => split(a),
        Command::Train(a) => train_cmd(a),
        Command::Predict(a) => predict(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Ablate(a) => ablate(a),
        Command::AlignText(a) => align_text(a),
        Command::Synth(a) => synth(a),
        Command::Labels(a) => labels(a),
    }
}

fn require(flag: &str, path: &Path) -> Result<()> {
    if path.exists() {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "{flag} {}: no such file or directory",
            path.display()
        )))
    }
}

fn load_config(path: Option<&Path>) -> Result<RunConfigFile> {
    match path {
        Some(p) => {
            require("--config", p)?;
            RunConfigFile::load(p)
        }
        None => Ok(RunConfigFile::default()),
    }
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => {
                return Err(Error::Usage(format!(
                    "{THREADS_ENV} must be a positive integer, got {v:?}"
                )))
            }
        },
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start worker threads: {e}")))
}

fn fmt_task(task: Task) -> &'static str {
    match task {
        Task::Engagement => "engagement",
        Task::ValenceArousal => "valence_arousal",
    }
}

// ------------------------------------------------------------------ extract

/// Text provider used when no lexicon is configured.
struct ZeroText {
    dim: usize,
}

impl AffectProvider for ZeroText {
    fn name(&self) -> &str {
        "zero-text"
    }

    fn modality(&self) -> Modality {
        Modality::Text
    }

    fn output_dim(&self) -> usize {
        self.dim
    }

    fn extract(&self, _: &AffectInput<'_>) -> engage_core::Result<Vec<f64>> {
        Ok(vec![0.0; self.dim])
    }
}

fn affect_pipeline(cfg: &RunConfigFile) -> Result<AffectPipeline> {
    let p = &cfg.providers;
    let text: engage_core::affect::BoxedProvider = match &p.lexicon {
        Some(path) => {
            require("lexicon", path)?;
            Box::new(LexiconText {
                lexicon: read_lexicon(path)?,
            })
        }
        None => Box::new(ZeroText { dim: p.text_dim }),
    };
    let store = match &p.video_store {
        Some(path) => {
            require("video_store", path)?;
            read_video_store(path)?
        }
        None => VectorStore::default(),
    };
    AffectPipeline::new(
        text,
        Box::new(AudioBaseline {
            config: cfg.signal.clone(),
        }),
        Box::new(StoredVideo {
            store,
            policy: p.missing_video,
        }),
    )
    .data(|| "affect providers".into())
}

struct Extracted {
    sample: Sample,
    cognitive: Vec<f64>,
    frames: Option<(Vec<f64>, Vec<Vec<f64>>)>,
}

fn extract_clip(
    rec: &engage_core::data::ClipRecord,
    base: &Path,
    cfg: &RunConfigFile,
    pipeline: &AffectPipeline,
    task: Task,
    dump_frames: bool,
) -> Result<Extracted> {
    let ctx = || format!("clip `{}`", rec.clip_id);
    let targets = rec.unit_targets().data(ctx)?;
    if let Some(t) = &targets {
        if t.len() != task.output_dim() {
            return Err(Error::Data {
                context: ctx(),
                source: engage_core::Error::DimensionMismatch {
                    expected: task.output_dim(),
                    found: t.len(),
                },
            });
        }
    }
    let clip = load_wav(&base.join(&rec.wav_path))?;
    let cognitive = cognitive_vector_with(&clip, &cfg.signal).data(ctx)?;
    let affective = pipeline
        .extract(&AffectInput {
            clip_id: rec.video_key(),
            audio: &clip,
            transcript: &rec.transcript,
        })
        .data(ctx)?;
    let fused = fuse(&cognitive, &affective).data(ctx)?;
    let frames = if dump_frames {
        let a = SpeechAnalysis::new(&clip, &cfg.signal).data(ctx)?;
        let rows = (0..a.frames.len())
            .map(|i| {
                let f0 = a.pitch.frames[i].f0_hz;
                vec![
                    f0.unwrap_or(0.0),
                    f64::from(u8::from(f0.is_some())),
                    a.energy[i],
                ]
            })
            .collect();
        Some((a.frames.start_times_s.clone(), rows))
    } else {
        None
    };
    Ok(Extracted {
        sample: Sample {
            features: fused.values,
            targets,
            clip_id: rec.clip_id.clone(),
            session_id: rec.session_id.clone(),
            speaker_id: rec.speaker_id.clone(),
        },
        cognitive: cognitive.values,
        frames,
    })
}

fn file_stem_safe(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "-_.".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn extract(args: ExtractArgs) -> Result<()> {
    require("--manifest", &args.manifest)?;
    let cfg = load_config(args.config.as_deref())?;
    let task = args.task.unwrap_or(cfg.training.task);
    let manifest = read_manifest(&args.manifest)?;
    let base = args
        .manifest
        .parent()
        .unwrap_or(Path::new("."))
        .to_path_buf();
    let pipeline = affect_pipeline(&cfg)?;
    let mut inputs: Vec<(&str, &Path)> = vec![("manifest", args.manifest.as_path())];
    if let Some(c) = &args.config {
        inputs.push(("config", c));
    }
    let mut run = RunDir::create(&args.out, "extract", None, &inputs)?;
    let extracted = thread_pool()?.install(|| {
        manifest
            .records()
            .par_iter()
            .map(|rec| extract_clip(rec, &base, &cfg, &pipeline, task, args.dump_frames))
            .collect::<Result<Vec<_>>>()
    })?;

    let cache: Vec<(String, Vec<f64>)> = extracted
        .iter()
        .map(|e| (e.sample.clip_id.clone(), e.cognitive.clone()))
        .collect();
    write_feature_cache(&run.file("features.csv")?, &cache)?;
    let table = SampleTable {
        task,
        samples: extracted.iter().map(|e| e.sample.clone()).collect(),
    };
    write_samples(&run.file("samples.csv")?, &table)?;
    for e in &extracted {
        if let Some((times, rows)) = &e.frames {
            let path = run.file(&format!("frames/{}.csv", file_stem_safe(&e.sample.clip_id)))?;
            write_frame_dump(&path, times, &["f0_hz", "voiced", "energy"], rows)?;
        }
    }
    run.set_details(json!({
        "task": fmt_task(task),
        "clips": table.samples.len(),
        "labeled": table.samples.iter().filter(|s| s.is_labeled()).count(),
        "feature_dim": pipeline.output_dim() + engage_core::cognitive::COGNITIVE_DIM,
        "text_dim": pipeline.text_dim(),
        "providers": format!("{pipeline:?}"),
    }));
    run.finish()?;
    Ok(())
}

// -------------------------------------------------------------------- split

fn split(args: SplitArgs) -> Result<()> {
    require("--manifest", &args.manifest)?;
    require("--samples", &args.samples)?;
    if args.ratios.len() != 3 {
        return Err(Error::Usage(
            "--ratios takes three comma-separated fractions".into(),
        ));
    }
    let manifest = read_manifest(&args.manifest)?;
    let table = read_samples(&args.samples)?;
    let ratios = (args.ratios[0], args.ratios[1], args.ratios[2]);
    let spec = split_fractional(
        &manifest,
        ratios,
        args.labeled_fraction,
        args.speaker_exclusive,
        args.seed,
    )
    .data(|| "split".into())?;
    let parts = apply_split(&table.samples, &spec);
    let mut run = RunDir::create(
        &args.out,
        "split",
        Some(args.seed),
        &[("manifest", &args.manifest), ("samples", &args.samples)],
    )?;
    write_json(&run.file("split.json")?, &spec)?;
    for (name, samples) in [
        ("labeled", parts.labeled),
        ("unlabeled", parts.unlabeled),
        ("val", parts.val),
        ("test", parts.test),
    ] {
        write_samples(
            &run.file(&format!("{name}.csv"))?,
            &SampleTable {
                task: table.task,
                samples,
            },
        )?;
    }
    run.set_details(json!({
        "ratios": args.ratios,
        "labeled_fraction": args.labeled_fraction,
        "speaker_exclusive": args.speaker_exclusive,
    }));
    run.finish()?;
    Ok(())
}

// -------------------------------------------------------------------- train

struct TrainingData {
    task: Task,
    labeled: Vec<Sample>,
    unlabeled: Vec<Sample>,
    val: Vec<Sample>,
    files: Vec<PathBuf>,
}

fn load_data(args: &DataArgs) -> Result<(TrainingData, RunConfigFile)> {
    require("--data", &args.data)?;
    let mut cfg = load_config(args.config.as_deref())?;
    let mut files = Vec::new();
    let mut read = |name: &str, optional: bool| -> Result<Option<SampleTable>> {
        let path = args.data.join(format!("{name}.csv"));
        if optional && !path.exists() {
            return Ok(None);
        }
        require("--data", &path)?;
        let t = read_samples(&path)?;
        files.push(path);
        Ok(Some(t))
    };
    let labeled = read("labeled", false)?.expect("required table");
    let unlabeled = read("unlabeled", false)?.expect("required table");
    let val = read("val", true)?;

    let task = args.task.unwrap_or(labeled.task);
    for t in [Some(&labeled), Some(&unlabeled), val.as_ref()]
        .into_iter()
        .flatten()
    {
        if t.task != task {
            return Err(Error::Data {
                context: format!(
                    "{}: sample files are for {}",
                    args.data.display(),
                    fmt_task(t.task)
                ),
                source: engage_core::Error::InvalidParameter(format!("task is {}", fmt_task(task))),
            });
        }
    }
    if let Some(s) = labeled.samples.iter().find(|s| !s.is_labeled()) {
        return Err(Error::Data {
            context: format!("labeled.csv clip `{}`", s.clip_id),
            source: engage_core::Error::InvalidParameter("labeled sample without targets".into()),
        });
    }
    cfg.training.task = task;
    if let Some(seed) = args.seed {
        cfg.training.seed = seed;
    }
    cfg.training
        .validate()
        .data(|| "training configuration".into())?;
    let data = TrainingData {
        task,
        unlabeled: unlabeled
            .samples
            .into_iter()
            .map(Sample::unlabeled)
            .collect(),
        labeled: labeled.samples,
        val: val.map(|t| t.samples).unwrap_or_default(),
        files,
    };
    if data.labeled.is_empty() || data.unlabeled.is_empty() {
        return Err(Error::Data {
            context: args.data.display().to_string(),
            source: engage_core::Error::EmptyBatch,
        });
    }
    let dim = data.labeled[0].features.len();
    for set in [&data.labeled, &data.unlabeled, &data.val] {
        feature_matrix(set, dim).data(|| args.data.display().to_string())?;
    }
    Ok((data, cfg))
}

fn input_list<'a>(data: &'a TrainingData, args: &'a DataArgs) -> Vec<(&'a str, &'a Path)> {
    let mut inputs: Vec<(&str, &Path)> = data
        .files
        .iter()
        .map(|p| {
            (
                p.file_stem().and_then(|s| s.to_str()).unwrap_or("data"),
                p.as_path(),
            )
        })
        .collect();
    inputs.push(("data", &args.data));
    if let Some(c) = &args.config {
        inputs.push(("config", c));
    }
    inputs
}

fn per_target_rmse(task: Task, predictions: &Matrix, samples: &[Sample]) -> Result<Vec<MetricRow>> {
    let labeled: Vec<usize> = (0..samples.len())
        .filter(|&i| samples[i].is_labeled())
        .collect();
    if labeled.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    let (mut all_p, mut all_t) = (Vec::new(), Vec::new());
    for (k, name) in task.target_names().iter().enumerate() {
        let p: Vec<f64> = labeled.iter().map(|&i| predictions[(i, k)]).collect();
        let t: Vec<f64> = labeled
            .iter()
            .map(|&i| samples[i].targets.as_ref().expect("labeled")[k])
            .collect();
        rows.push(MetricRow::new(
            "rmse",
            name,
            rmse(&p, &t).data(|| "rmse".into())?,
        ));
        all_p.extend(p);
        all_t.extend(t);
    }
    if task.output_dim() > 1 {
        rows.push(MetricRow::new(
            "rmse",
            "all",
            rmse(&all_p, &all_t).data(|| "rmse".into())?,
        ));
    }
    rows.push(MetricRow::new("labeled_clips", "all", labeled.len() as f64));
    Ok(rows)
}

fn train_cmd(args: TrainArgs) -> Result<()> {
    let (data, cfg) = load_data(&args.data)?;
    let mode = args.mode;
    let mut run_dir = RunDir::create(
        &args.out,
        "train",
        Some(cfg.training.seed),
        &input_list(&data, &args.data),
    )?;
    std::fs::write(run_dir.file("config.toml")?, cfg.to_toml())
        .map_err(|e| Error::write(&args.out.join("config.toml"), e))?;
    let run = train(
        &mode.mask_samples(&data.labeled),
        &mode.mask_samples(&data.unlabeled),
        &mode.mask_samples(&data.val),
        &cfg.training,
    )
    .runtime(|| "training".into())?;

    write_history(&run_dir.file("history.csv")?, &run.history)?;
    let last = run.history.len();
    let final_ck = Checkpoint::new(run.final_model.clone(), mode, last);
    let best_ck = Checkpoint::new(run.best_model.clone(), mode, run.best_epoch.unwrap_or(last));
    final_ck.save(&run_dir.file("checkpoints/final.json")?)?;
    best_ck.save(&run_dir.file("checkpoints/best.json")?)?;

    let mut metrics = Vec::new();
    if let Some(v) = run.final_val_rmse() {
        metrics.push(MetricRow::new("final_val_rmse", "all", v));
    }
    if let Some(e) = run.best_epoch {
        metrics.push(MetricRow::new(
            "best_val_rmse",
            "all",
            run.history[e - 1].val_rmse.unwrap_or(f64::NAN),
        ));
        metrics.push(MetricRow::new("best_epoch", "all", e as f64));
    }
    if !data.val.is_empty() {
        let x =
            feature_matrix(&data.val, final_ck.model.standardizer.dim()).data(|| "val".into())?;
        let p = final_ck.predict(&x)?;
        metrics.extend(per_target_rmse(data.task, &p, &data.val)?);
    }
    write_metrics(&run_dir.file("metrics.csv")?, &metrics)?;
    run_dir.set_details(json!({
        "mode": mode,
        "task": fmt_task(data.task),
        "config": cfg.training,
        "history": run.history,
        "best_epoch": run.best_epoch,
    }));
    run_dir.finish()?;
    Ok(())
}

// ------------------------------------------------------- predict / evaluate

fn score(checkpoint: &Path, samples: &Path) -> Result<(Checkpoint, SampleTable, Matrix)> {
    require("--checkpoint", checkpoint)?;
    require("--samples", samples)?;
    let ck = Checkpoint::load(checkpoint)?;
    let table = read_samples(samples)?;
    let x = feature_matrix(&table.samples, ck.model.standardizer.dim())
        .data(|| samples.display().to_string())?;
    let p = ck.predict(&x)?;
    Ok((ck, table, p))
}

fn predict(args: PredictArgs) -> Result<()> {
    let (ck, table, p) = score(&args.checkpoint, &args.samples)?;
    let mut run = RunDir::create(
        &args.out,
        "predict",
        None,
        &[("checkpoint", &args.checkpoint), ("samples", &args.samples)],
    )?;
    write_predictions(
        &run.file("predictions.csv")?,
        &table.samples,
        &p,
        ck.model.task,
    )?;
    run.finish()?;
    Ok(())
}

fn evaluate(args: EvaluateArgs) -> Result<()> {
    let (ck, table, p) = score(&args.checkpoint, &args.samples)?;
    let task = ck.model.task;
    if table.task != task {
        return Err(Error::Data {
            context: args.samples.display().to_string(),
            source: engage_core::Error::DimensionMismatch {
                expected: task.output_dim(),
                found: table.task.output_dim(),
            },
        });
    }
    let external = match &args.external {
        Some(path) => {
            require("--external", path)?;
            Some(read_external_scores(path)?)
        }
        None => None,
    };
    let mut inputs: Vec<(&str, &Path)> =
        vec![("checkpoint", &args.checkpoint), ("samples", &args.samples)];
    if let Some(e) = &args.external {
        inputs.push(("external", e));
    }
    let mut run = RunDir::create(&args.out, "evaluate", None, &inputs)?;
    write_predictions(&run.file("predictions.csv")?, &table.samples, &p, task)?;
    let mut metrics = per_target_rmse(task, &p, &table.samples)?;

    let mut by_session: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, s) in table.samples.iter().enumerate() {
        by_session.entry(&s.session_id).or_default().push(i);
    }
    let mut sessions = Vec::with_capacity(by_session.len());
    for (id, rows) in &by_session {
        let ext = external.as_ref().and_then(|m| m.get(*id).copied());
        let scores = (0..task.output_dim())
            .map(|k| {
                let s = SessionScore {
                    session_id: id.to_string(),
                    clip_scores: rows.iter().map(|&i| p[(i, k)]).collect(),
                    external_score: ext,
                };
                aggregate_session(&s, args.aggregate).data(|| format!("session `{id}`"))
            })
            .collect::<Result<Vec<_>>>()?;
        sessions.push(SessionRow {
            session_id: id.to_string(),
            clips: rows.len(),
            scores,
            external: ext,
        });
    }
    write_sessions(&run.file("sessions.csv")?, task, &sessions)?;

    if external.is_some() {
        let paired: Vec<(f64, f64)> = sessions
            .iter()
            .filter_map(|s| s.external.map(|e| (s.scores[0], e)))
            .collect();
        let (a, b): (Vec<f64>, Vec<f64>) = paired.into_iter().unzip();
        let m = correlation_matrix(&a, &b).data(|| "session correlation".into())?;
        let names = [task.target_names()[0], "external"];
        write_correlation(&run.file("correlation.csv")?, names, &m)?;
        let svg = run.file("correlation.svg")?;
        std::fs::write(&svg, correlation_svg(names, &m)).map_err(|e| Error::write(&svg, e))?;
        metrics.push(MetricRow::new("pearson_r", names[0], m[0][1]));
        metrics.push(MetricRow::new("sessions_correlated", "all", a.len() as f64));
    }
    write_metrics(&run.file("metrics.csv")?, &metrics)?;
    run.set_details(json!({
        "aggregate": match args.aggregate {
            engage_core::eval::Aggregation::Median => "median",
            engage_core::eval::Aggregation::Mean => "mean",
        },
        "checkpoint_mode": ck.mode,
        "checkpoint_epoch": ck.epoch,
        "sessions": sessions.len(),
    }));
    run.finish()?;
    Ok(())
}

// ------------------------------------------------------------------- ablate

fn ablate(args: AblateArgs) -> Result<()> {
    let (data, cfg) = load_data(&args.data)?;
    if data.val.is_empty() {
        return Err(Error::Usage(format!(
            "{}: ablation needs val.csv",
            args.data.data.display()
        )));
    }
    if args.seeds == 0 {
        return Err(Error::Usage("--seeds must be at least 1".into()));
    }
    let modes = if args.mode.is_empty() {
        AblationMode::ALL.to_vec()
    } else {
        args.mode.clone()
    };
    let base_seed = cfg.training.seed;
    let cases: Vec<(AblationMode, u64)> = modes
        .iter()
        .flat_map(|&m| (0..args.seeds).map(move |i| (m, base_seed + i)))
        .collect();
    let mut run_dir = RunDir::create(
        &args.out,
        "ablate",
        Some(base_seed),
        &input_list(&data, &args.data),
    )?;
    std::fs::write(run_dir.file("config.toml")?, cfg.to_toml())
        .map_err(|e| Error::write(&args.out.join("config.toml"), e))?;
    let outcomes: Vec<(AblationResult, TrainRun)> = thread_pool()?.install(|| {
        cases
            .par_iter()
            .map(|&(mode, seed)| {
                run_ablation_case(
                    &data.labeled,
                    &data.unlabeled,
                    &data.val,
                    &cfg.training,
                    mode,
                    seed,
                )
                .runtime(|| format!("ablation {} seed {seed}", mode.name()))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let results: Vec<AblationResult> = outcomes.iter().map(|(r, _)| r.clone()).collect();
    write_ablation(&run_dir.file("ablation.csv")?, &results)?;
    for (r, run) in &outcomes {
        write_history(
            &run_dir.file(&format!("histories/{}-{}.csv", r.mode.name(), r.seed))?,
            &run.history,
        )?;
    }
    let metrics: Vec<MetricRow> = modes
        .iter()
        .map(|&m| {
            let v: Vec<f64> = results
                .iter()
                .filter(|r| r.mode == m)
                .map(|r| r.val_rmse)
                .collect();
            MetricRow::new(
                "mean_val_rmse",
                m.name(),
                v.iter().sum::<f64>() / v.len() as f64,
            )
        })
        .collect();
    write_metrics(&run_dir.file("metrics.csv")?, &metrics)?;
    run_dir.set_details(json!({
        "task": fmt_task(data.task),
        "config": cfg.training,
        "modes": modes,
        "seeds": cases.iter().map(|c| c.1).take(args.seeds as usize).collect::<Vec<_>>(),
    }));
    run_dir.finish()?;
    Ok(())
}

// ------------------------------------------------------ align-text / synth

fn align_text(args: AlignTextArgs) -> Result<()> {
    require("--input", &args.input)?;
    let words = read_words(&args.input)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let aligned = align_words(&words, &mut rng).data(|| args.input.display().to_string())?;
    let mut run = RunDir::create(
        &args.out,
        "align-text",
        Some(args.seed),
        &[("input", &args.input)],
    )?;
    write_words(&run.file("aligned.csv")?, &aligned)?;
    run.set_details(json!({
        "words": aligned.len(),
        "filled": words.iter().filter(|w| w.bin_s.is_none()).count(),
    }));
    run.finish()?;
    Ok(())
}

fn synth(args: SynthArgs) -> Result<()> {
    let defaults = SynthConfig::default();
    let cfg = SynthConfig {
        n_labeled: args.n_labeled,
        n_unlabeled: args.n_unlabeled,
        n_val: args.n_val,
        noise_sd: args.noise_sd,
        seed: args.seed,
        dim: args.dim.unwrap_or(defaults.dim),
        dependence: args.dependence,
        task: args.task,
        ..defaults
    };
    let data = synth_dataset_with(&cfg).data(|| "synthetic dataset".into())?;
    let mut run = RunDir::create(&args.out, "synth", Some(args.seed), &[])?;
    for (name, samples) in [
        ("labeled", data.labeled),
        ("unlabeled", data.unlabeled),
        ("val", data.validation),
    ] {
        write_samples(
            &run.file(&format!("{name}.csv"))?,
            &SampleTable {
                task: args.task,
                samples,
            },
        )?;
    }
    run.set_details(json!({ "synth": cfg }));
    run.finish()?;
    Ok(())
}

// ------------------------------------------------------------------- labels

fn labels(args: LabelsArgs) -> Result<()> {
    if !(args.clip_len > 0.0) {
        return Err(Error::Usage("--clip-len must be positive".into()));
    }
    let mut streams = Vec::with_capacity(args.annotations.len());
    for path in &args.annotations {
        require("--annotation", path)?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        streams.push(formats::read_annotation(
            path,
            &id,
            args.dimension,
            args.scale,
        )?);
    }
    let consensus = average_annotators(&streams).data(|| "annotator average".into())?;
    let inputs: Vec<(&str, &Path)> = args
        .annotations
        .iter()
        .map(|p| ("annotation", p.as_path()))
        .collect();
    let mut run = RunDir::create(&args.out, "labels", None, &inputs)?;
    formats::write_annotation(&run.file("consensus.csv")?, &consensus)?;
    let clips = (consensus.duration_s() / args.clip_len + 1e-9).floor() as usize;
    let rows = (0..clips)
        .map(|k| {
            let start = k as f64 * args.clip_len;
            clip_label(&consensus, start, args.clip_len)
                .data(|| format!("clip {k}"))
                .map(|v| (k, start, v))
        })
        .collect::<Result<Vec<_>>>()?;
    formats::write_clip_labels(&run.file("clip_labels.csv")?, &rows)?;
    run.set_details(json!({
        "annotators": streams.len(),
        "dimension": args.dimension,
        "scale": args.scale,
        "clip_len_s": args.clip_len,
    }));
    run.finish()?;
    Ok(())
}
