use std::fs;
use std::path::Path;

use engage_core::data::{
    AffectDimension, AnnotationScale, ClipManifest, ClipRecord, LabelScale, WordTimestamp,
};
use engage_core::eval::{synth_dataset_with, AblationMode, SynthConfig};
use engage_core::fusion::{Sample, Task};
use engage_core::ssgan::{feature_matrix, train, SSGanConfig};
use engage_gan::formats::*;
use engage_gan::model::Checkpoint;
use engage_gan::Error;
use proptest::prelude::*;

fn any_finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE / 3.0),
        Just(f64::MAX),
        -1e3..1e3f64,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn feature_cache_reload_is_bit_exact(rows in prop::collection::vec(prop::collection::vec(any_finite(), 24), 0..8)) {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("features.csv");
        let rows: Vec<(String, Vec<f64>)> = rows.into_iter().enumerate().map(|(i, v)| (format!("clip,{i}"), v)).collect();
        write_feature_cache(&p, &rows).unwrap();
        let back = read_feature_cache(&p).unwrap();
        prop_assert_eq!(back.len(), rows.len());
        for ((a, va), (b, vb)) in rows.iter().zip(&back) {
            prop_assert_eq!(a, b);
            prop_assert!(va.iter().zip(vb).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
    }

    #[test]
    fn sample_table_reload_is_bit_exact(
        features in prop::collection::vec(prop::collection::vec(any_finite(), 5), 1..6),
        labels in prop::collection::vec(prop::option::of((0.0..=1.0f64, 0.0..=1.0f64)), 6),
        va in any::<bool>(),
    ) {
        let task = if va { Task::ValenceArousal } else { Task::Engagement };
        let samples: Vec<Sample> = features.into_iter().zip(labels).enumerate().map(|(i, (f, l))| Sample {
            features: f,
            targets: l.map(|(a, b)| if va { vec![a, b] } else { vec![a] }),
            clip_id: format!("c{i}"),
            session_id: format!("s \"{}\"", i / 2),
            speaker_id: "spk".into(),
        }).collect();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("samples.csv");
        let table = SampleTable { task, samples };
        write_samples(&p, &table).unwrap();
        let back = read_samples(&p).unwrap();
        prop_assert_eq!(back.task, task);
        prop_assert_eq!(back.samples.len(), table.samples.len());
        for (a, b) in table.samples.iter().zip(&back.samples) {
            prop_assert_eq!(&a.clip_id, &b.clip_id);
            prop_assert_eq!(&a.session_id, &b.session_id);
            prop_assert_eq!(&a.targets, &b.targets);
            prop_assert!(a.features.iter().zip(&b.features).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
    }
}

#[test]
fn feature_cache_rejects_foreign_columns() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.csv");
    fs::write(&p, "clip_id,a,b\nx,1,2\n").unwrap();
    assert!(matches!(
        read_feature_cache(&p),
        Err(Error::Parse { line: Some(1), .. })
    ));
}

#[test]
fn ragged_and_non_numeric_rows_report_their_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("v.csv");
    fs::write(&p, "clip_id,v1,v2\na,1,2\nb,1\n").unwrap();
    let err = read_vector_table(&p, "clip_id").unwrap_err();
    assert!(matches!(err, Error::Parse { line: Some(3), .. }), "{err}");
    fs::write(&p, "clip_id,v1,v2\na,1,2\nb,1,two\n").unwrap();
    let err = read_vector_table(&p, "clip_id").unwrap_err();
    assert!(matches!(err, Error::Parse { line: Some(3), .. }), "{err}");
    assert_eq!(err.exit_code(), 2);
    fs::write(&p, "clip_id,v1\na,1\na,2\n").unwrap();
    assert!(read_vector_table(&p, "clip_id").is_err());
}

#[test]
fn lexicon_and_video_store_load() {
    let dir = tempfile::tempdir().unwrap();
    let lex = dir.path().join("lex.csv");
    fs::write(&lex, "word,v1,v2\ncalm,0.5,0\nangry,0,1\n").unwrap();
    let l = read_lexicon(&lex).unwrap();
    assert_eq!((l.len(), l.dim()), (2, 2));
    assert_eq!(l.get("Calm"), Some(&vec![0.5, 0.0]));
    fs::write(&lex, "word,v1\n").unwrap();
    assert!(matches!(
        read_lexicon(&lex),
        Err(Error::Data {
            source: engage_core::Error::EmptyLexicon,
            ..
        })
    ));

    let video = dir.path().join("video.csv");
    let header: Vec<String> = (1..=100).map(|i| format!("v{i}")).collect();
    let row: Vec<String> = (0..100).map(|i| (i as f64 / 10.0).to_string()).collect();
    fs::write(
        &video,
        format!("clip_id,{}\nc1,{}\n", header.join(","), row.join(",")),
    )
    .unwrap();
    let store = read_video_store(&video).unwrap();
    assert_eq!(store.get("c1").unwrap()[99], 9.9);
}

#[test]
fn annotation_requires_the_25hz_grid() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("a.csv");
    fs::write(&p, "t_s,value\n0.00,0.1\n0.04,-0.2\n0.08,0.3\n").unwrap();
    let s = read_annotation(&p, "a", AffectDimension::Arousal, AnnotationScale::Raw).unwrap();
    assert_eq!(s.values(), &[0.1, -0.2, 0.3]);
    assert_eq!(s.annotator_id(), "a");

    let out = dir.path().join("b.csv");
    write_annotation(&out, &s).unwrap();
    assert_eq!(
        read_annotation(&out, "a", AffectDimension::Arousal, AnnotationScale::Raw).unwrap(),
        s
    );

    for bad in [
        "t_s,value\n0.00,0.1\n0.05,0.2\n",
        "t_s,value\n0.04,0.1\n",
        "t_s,value\n0.00,0.1\n0.08,0.2\n",
    ] {
        fs::write(&p, bad).unwrap();
        let err =
            read_annotation(&p, "a", AffectDimension::Arousal, AnnotationScale::Raw).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{bad:?}: {err}");
    }
    fs::write(&p, "t_s,value\n0.00,1.5\n").unwrap();
    assert!(matches!(
        read_annotation(&p, "a", AffectDimension::Arousal, AnnotationScale::Raw),
        Err(Error::Data {
            source: engage_core::Error::OutOfRange { .. },
            ..
        })
    ));
}

#[test]
fn words_round_trip_with_empty_bins() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("w.csv");
    let words = vec![
        WordTimestamp::new("so", Some(0)),
        WordTimestamp::new("we, uh", None),
        WordTimestamp::new("agree", Some(2)),
    ];
    write_words(&p, &words).unwrap();
    assert_eq!(
        fs::read_to_string(&p).unwrap(),
        "word,bin_s\nso,0\n\"we, uh\",\nagree,2\n"
    );
    assert_eq!(read_words(&p).unwrap(), words);
    fs::write(&p, "word,bin_s\nx,1.5\n").unwrap();
    assert!(read_words(&p).is_err());
}

#[test]
fn manifest_lines_round_trip_and_report_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m.jsonl");
    let rec = |id: &str| ClipRecord {
        clip_id: id.into(),
        session_id: "s1".into(),
        speaker_id: "p1".into(),
        wav_path: format!("{id}.wav"),
        transcript: vec!["hello".into()],
        video_affect_id: None,
        raw_label: Some(vec![2.0]),
        scale: Some(LabelScale::LikertM3To3),
    };
    let m = ClipManifest::new(vec![rec("a"), rec("b")]).unwrap();
    write_manifest(&p, &m).unwrap();
    assert_eq!(read_manifest(&p).unwrap(), m);

    fs::write(&p, "{\"clip_id\":\"a\",\"session_id\":\"s\",\"speaker_id\":\"p\",\"wav_path\":\"a.wav\"}\n\n{\"clip_id\":\"b\"}\n").unwrap();
    assert!(matches!(
        read_manifest(&p),
        Err(Error::Parse { line: Some(3), .. })
    ));
    let line =
        "{\"clip_id\":\"a\",\"session_id\":\"s\",\"speaker_id\":\"p\",\"wav_path\":\"a.wav\"}";
    fs::write(&p, format!("{line}\n{line}\n")).unwrap();
    assert!(matches!(
        read_manifest(&p),
        Err(Error::Data {
            source: engage_core::Error::DuplicateClipId(_),
            ..
        })
    ));
    fs::write(&p, "{\"clip_id\":\"a\",\"session_id\":\"s\",\"speaker_id\":\"p\",\"wav_path\":\"a.wav\",\"raw_label\":[1.0]}\n").unwrap();
    assert!(matches!(
        read_manifest(&p),
        Err(Error::Data {
            source: engage_core::Error::MissingScaleTag(_),
            ..
        })
    ));
    assert!(fs::read_to_string(Path::new(&p)).is_ok());
}

#[test]
fn checkpoint_reload_predicts_bit_identically() {
    let d = synth_dataset_with(&SynthConfig {
        n_labeled: 30,
        n_unlabeled: 60,
        n_val: 20,
        dim: 40,
        noise_sd: 0.01,
        seed: 3,
        ..SynthConfig::default()
    })
    .unwrap();
    let cfg = SSGanConfig {
        batch_size: 16,
        epochs: 2,
        noise_dim: 4,
        discriminator_hidden: vec![12, 6],
        generator_hidden: vec![6, 12],
        ..SSGanConfig::default()
    };
    let run = train(&d.labeled, &d.unlabeled, &d.validation, &cfg).unwrap();
    let ck = Checkpoint::new(run.final_model.clone(), AblationMode::C, 2);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("ck.json");
    ck.save(&p).unwrap();
    let back = Checkpoint::load(&p).unwrap();
    assert_eq!(back, ck);
    let x = feature_matrix(&d.validation, 40).unwrap();
    let (a, b) = (ck.predict(&x).unwrap(), back.predict(&x).unwrap());
    assert!(a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .all(|(u, v)| u.to_bits() == v.to_bits()));

    let mut masked = x.clone();
    for r in 0..masked.rows() {
        AblationMode::C.mask(masked.row_mut(r));
    }
    assert_eq!(run.final_model.predict(&masked).unwrap(), a);

    let text = fs::read_to_string(&p)
        .unwrap()
        .replace("\"format\": 1", "\"format\": 9");
    fs::write(&p, text).unwrap();
    assert!(matches!(Checkpoint::load(&p), Err(Error::Parse { .. })));
}
