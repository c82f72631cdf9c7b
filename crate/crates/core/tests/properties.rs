use engage_core::data::{
    align_words, average_annotators, clip_label, likert_to_unit, rescale_unit, split_fractional,
    AffectDimension, AnnotationScale, AnnotationStream, ClipManifest, ClipRecord, WordTimestamp,
};
use engage_core::eval::{aggregate_session, correlation_matrix, rmse, Aggregation, SessionScore};
use engage_core::nn::Matrix;
use engage_core::signal::{frame_signal, AudioClip, Window};
use engage_core::ssgan::{
    fake_loss, generator_loss, gradient_penalty_at, labeled_loss, unlabeled_loss, LossWeights,
    SSGanConfig,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-10.0f64..10.0, rows * cols)
        .prop_map(move |d| Matrix::new(rows, cols, d).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frame_count_formula(n in 640usize..20000, frame_ms in 10.0f64..40.0, hop_ms in 5.0f64..20.0) {
        let clip = AudioClip::new(vec![0.0; n], 16000, "c").unwrap();
        let track = frame_signal(&clip, frame_ms, hop_ms, Window::Hann).unwrap();
        prop_assert_eq!(track.len(), (n - track.frame_len) / track.hop + 1);
        prop_assert!(track.frame_start(track.len() - 1) + track.frame_len <= n);
    }

    #[test]
    fn loss_signs_and_identities(
        (a, b, c) in (1usize..6, 1usize..6, 1usize..5).prop_flat_map(|(r1, r2, d)| (matrix(r1, d), matrix(r2, d), matrix(r1, d)))
    ) {
        prop_assert_eq!(labeled_loss(&a, &a).unwrap(), 0.0);
        prop_assert!(labeled_loss(&a, &c).unwrap() >= 0.0);
        let un = unlabeled_loss(&a, &b).unwrap();
        let fake = fake_loss(&a, &b).unwrap();
        let gen = generator_loss(&a, &b).unwrap();
        prop_assert!(un >= 0.0 && gen >= 0.0 && fake <= 0.0);
        prop_assert_eq!(gen == 0.0, fake == 0.0);
        prop_assert_eq!(unlabeled_loss(&a, &a).unwrap(), 0.0);
        prop_assert_eq!(fake_loss(&a, &a).unwrap(), 0.0);
        prop_assert_eq!(generator_loss(&a, &a).unwrap(), 0.0);
        // Row order differs but the batch means coincide.
        let reversed: Vec<usize> = (0..a.rows()).rev().collect();
        prop_assert_eq!(generator_loss(&a.select_rows(&reversed), &a).unwrap(), 0.0);
    }

    #[test]
    fn losses_ignore_row_order(
        (a, b, pa, pb) in (2usize..7, 2usize..7, 1usize..4).prop_flat_map(|(r1, r2, d)| {
            (matrix(r1, d), matrix(r2, d), permutation(r1), permutation(r2))
        }),
        seed in any::<u64>(),
    ) {
        let (ap, bp) = (a.select_rows(&pa), b.select_rows(&pb));
        let truth = a.map(|v| v * 0.5);
        prop_assert_eq!(labeled_loss(&a, &truth).unwrap(), labeled_loss(&ap, &truth.select_rows(&pa)).unwrap());
        prop_assert_eq!(unlabeled_loss(&a, &b).unwrap(), unlabeled_loss(&ap, &bp).unwrap());
        prop_assert_eq!(fake_loss(&a, &b).unwrap(), fake_loss(&ap, &bp).unwrap());
        prop_assert_eq!(generator_loss(&a, &b).unwrap(), generator_loss(&ap, &bp).unwrap());

        let cfg = SSGanConfig { discriminator_hidden: vec![4, 3], ..SSGanConfig::default() };
        let disc = cfg.build_discriminator(a.cols(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let square = &a.select_rows(&(0..a.rows()).map(|i| i % b.rows()).collect::<Vec<_>>());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p1 = gradient_penalty_at(&disc, &a, square, 1.0, &mut rng, Some(0.3)).unwrap();
        let p2 = gradient_penalty_at(&disc, &ap, &square.select_rows(&pa), 1.0, &mut rng, Some(0.3)).unwrap();
        prop_assert!(p1 >= 0.0);
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn alignment_stays_in_gap_and_monotone(
        gaps in prop::collection::vec((0u32..4, 0usize..4), 1..12),
        start in 0u32..5,
        seed in any::<u64>(),
    ) {
        let mut words = vec![WordTimestamp::new("w", Some(start))];
        let mut bin = start;
        for (step, missing) in &gaps {
            words.extend((0..*missing).map(|_| WordTimestamp::new("w", None)));
            bin += step;
            words.push(WordTimestamp::new("w", Some(bin)));
        }
        let out = align_words(&words, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(out.len(), words.len());
        let bins: Vec<u32> = out.iter().map(|w| w.bin_s.unwrap()).collect();
        prop_assert!(bins.windows(2).all(|w| w[0] <= w[1]));
        let mut k = 0;
        while k < words.len() {
            if words[k].bin_s.is_some() { k += 1; continue; }
            let s = k;
            while words[k].bin_s.is_none() { k += 1; }
            let (i, j) = (words[s - 1].bin_s.unwrap(), words[k].bin_s.unwrap());
            let fill = bins[s];
            prop_assert!(bins[s..k].iter().all(|b| *b == fill));
            if i == j { prop_assert_eq!(fill, i) } else { prop_assert!(fill == i + 1 || fill == j - 1) }
        }
    }

    #[test]
    fn split_partitions_exactly(n in 3usize..80, speakers in 3usize..12, seed in any::<u64>(), exclusive in any::<bool>(), lab in 0.0f64..=1.0) {
        let records = (0..n).map(|i| ClipRecord {
            clip_id: format!("c{i}"), session_id: "s".into(), speaker_id: format!("p{}", i % speakers),
            wav_path: String::new(), transcript: vec![], video_affect_id: None, raw_label: None, scale: None,
        }).collect();
        let m = ClipManifest::new(records).unwrap();
        let speakers_present = n.min(speakers);
        let result = split_fractional(&m, (0.7, 0.1, 0.2), lab, exclusive, seed);
        if exclusive && speakers_present < 3 {
            prop_assert!(result.is_err());
            return Ok(());
        }
        let s = result.unwrap();
        prop_assert_eq!(&s, &split_fractional(&m, (0.7, 0.1, 0.2), lab, exclusive, seed).unwrap());
        let all: Vec<&String> = s.train.iter().chain(&s.val).chain(&s.test).collect();
        let set: BTreeSet<&String> = all.iter().copied().collect();
        prop_assert_eq!(all.len(), n);
        prop_assert_eq!(set.len(), n);
        let lab_set: BTreeSet<&String> = s.labeled.iter().chain(&s.unlabeled).collect();
        prop_assert_eq!(lab_set, s.train.iter().collect::<BTreeSet<_>>());
        prop_assert_eq!(s.labeled.len() + s.unlabeled.len(), s.train.len());
        if exclusive {
            let spk = |ids: &[String]| ids.iter().map(|c| m.get(c).unwrap().speaker_id.clone()).collect::<BTreeSet<_>>();
            let (a, b, c) = (spk(&s.train), spk(&s.val), spk(&s.test));
            prop_assert!(a.is_disjoint(&b) && a.is_disjoint(&c) && b.is_disjoint(&c));
            prop_assert!(!s.train.is_empty() && !s.val.is_empty() && !s.test.is_empty());
        }
    }

    #[test]
    fn unit_maps_invert(v in -1.0f64..=1.0) {
        let u = rescale_unit(v).unwrap();
        prop_assert!((0.0..=1.0).contains(&u));
        prop_assert!((2.0 * u - 1.0 - v).abs() <= 1e-15);
    }

    #[test]
    fn clip_label_ignores_annotator_order(
        values in prop::collection::vec(prop::collection::vec(-1.0f64..=1.0, 80), 2..7),
        perm_seed in any::<u64>(),
    ) {
        let streams: Vec<AnnotationStream> = values.iter().enumerate().map(|(i, v)| {
            AnnotationStream::new(format!("a{i}"), v.clone(), AffectDimension::Arousal, AnnotationScale::Raw).unwrap()
        }).collect();
        let mut shuffled = streams.clone();
        use rand::seq::SliceRandom;
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(perm_seed));
        let a = clip_label(&average_annotators(&streams).unwrap(), 0.0, 3.0).unwrap();
        let b = clip_label(&average_annotators(&shuffled).unwrap(), 0.0, 3.0).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rmse_shift_invariant(
        pairs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..40),
        c in -5.0f64..5.0,
    ) {
        let (x, y): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let xs: Vec<f64> = x.iter().map(|v| v + c).collect();
        let ys: Vec<f64> = y.iter().map(|v| v + c).collect();
        prop_assert!((rmse(&xs, &ys).unwrap() - rmse(&x, &y).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn correlation_matrix_shape(
        a in prop::collection::vec(-10.0f64..10.0, 3..30),
        scale in prop_oneof![-4.0f64..-0.25, 0.25f64..4.0],
        shift in -3.0f64..3.0,
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b: Vec<f64> = a.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
        let Ok(m) = correlation_matrix(&a, &b) else { return Ok(()) };
        prop_assert_eq!(m[0][0], 1.0);
        prop_assert_eq!(m[1][1], 1.0);
        prop_assert_eq!(m[0][1], m[1][0]);
        prop_assert!((-1.0..=1.0).contains(&m[0][1]));
        let rescaled: Vec<f64> = b.iter().map(|v| scale * v + shift).collect();
        let r = correlation_matrix(&a, &rescaled).unwrap()[0][1];
        prop_assert!((r - scale.signum() * m[0][1]).abs() < 1e-9);
    }

    #[test]
    fn median_ignores_order(scores in prop::collection::vec(0.0f64..=1.0, 1..30), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut shuffled = scores.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let s = |v: Vec<f64>| SessionScore { session_id: "s".into(), clip_scores: v, external_score: None };
        prop_assert_eq!(
            aggregate_session(&s(scores), Aggregation::Median).unwrap(),
            aggregate_session(&s(shuffled), Aggregation::Median).unwrap()
        );
    }
}

#[test]
fn likert_points_map_to_sixths() {
    for k in -3..=3 {
        let expected = (k + 3) as f64 / 6.0;
        assert_eq!(likert_to_unit(k as f64).unwrap(), expected);
    }
}

#[test]
fn alignment_coin_is_fair() {
    let words = vec![
        WordTimestamp::new("a", Some(3)),
        WordTimestamp::new("b", None),
        WordTimestamp::new("c", None),
        WordTimestamp::new("d", Some(9)),
    ];
    let low = (0..1000u64)
        .filter(|&seed| {
            align_words(&words, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()[1].bin_s == Some(4)
        })
        .count();
    let share = low as f64 / 1000.0;
    assert!((0.45..=0.55).contains(&share), "share {share}");
}

#[test]
fn zero_weight_configs_validate() {
    let cfg = SSGanConfig {
        loss_weights: LossWeights::labeled_only(),
        ..SSGanConfig::default()
    };
    assert!(cfg.validate().is_ok());
    let bad = SSGanConfig {
        batch_size: 1,
        ..SSGanConfig::default()
    };
    assert!(bad.validate().is_err());
}
