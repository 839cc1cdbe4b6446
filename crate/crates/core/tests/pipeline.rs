mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stagparse::classifier::Hyperparameters;
use stagparse::corpus::generate_treebank;
use stagparse::features::FeatureModel;
use stagparse::parser::{
    evaluate, evaluate_sentences, parse_corpus, parse_sentence_traced, train_pipeline, EvalOptions,
    ParserModel, TrainOptions,
};
use stagparse::transition::Transition;
use stagparse::treebank::{attach_supertags, synth_supertags, Arc, Sentence, Token};
use stagparse::Error;

fn annotated(count: usize, seed: u64) -> (Vec<Sentence>, stagparse::treebank::SupertagInventory) {
    let sentences = generate_treebank(count, seed);
    let synth = synth_supertags(&sentences, 60, 0.2, seed).unwrap();
    (
        attach_supertags(sentences, synth.annotations).unwrap(),
        synth.inventory,
    )
}

fn options(features: &str, k: usize) -> TrainOptions {
    TrainOptions {
        k,
        hyper: Hyperparameters {
            epochs: 3,
            ..Hyperparameters::default()
        },
        ..TrainOptions::new(FeatureModel::parse(features).unwrap())
    }
}

/// Every token has exactly one head and following heads reaches the root.
fn is_tree(n: usize, arcs: &[Arc]) -> bool {
    let mut heads = vec![usize::MAX; n + 1];
    for a in arcs {
        if heads[a.dependent] != usize::MAX {
            return false;
        }
        heads[a.dependent] = a.head;
    }
    (1..=n).all(|start| {
        let mut cur = start;
        for _ in 0..=n {
            if cur == 0 {
                return true;
            }
            cur = heads[cur];
            if cur == usize::MAX {
                return false;
            }
        }
        false
    })
}

#[test]
fn parses_terminate_in_linear_steps_and_form_trees() {
    let (train, inventory) = annotated(150, 5);
    let (model, _) = train_pipeline(&train, Some(&inventory), &options("BL+BS+SD", 8)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (held_out, _) = annotated(60, 6);
    for s in held_out {
        let trace = parse_sentence_traced(&model, &s).unwrap();
        assert_eq!(trace.transitions.len(), 2 * s.len());
        assert_eq!(
            trace
                .transitions
                .iter()
                .filter(|t| **t == Transition::Shift)
                .count(),
            s.len()
        );
        assert!(is_tree(s.len(), &trace.arcs));
    }
    // Unannotated random sentences still parse: NULL supertags, zero SD block.
    for n in 1..12 {
        let s = common::random_projective_sentence(&mut rng, n);
        let trace = parse_sentence_traced(&model, &s).unwrap();
        assert_eq!(trace.transitions.len(), 2 * n);
        assert!(is_tree(n, &trace.arcs));
    }
}

#[test]
fn saved_models_parse_identically() {
    let (train, inventory) = annotated(80, 2);
    let (model, _) = train_pipeline(&train, Some(&inventory), &options("BL+SD", 6)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.bin");
    model.save(&path).unwrap();
    let loaded = ParserModel::load(&path).unwrap();
    assert_eq!(loaded, model);
    assert_eq!(
        parse_corpus(&loaded, &train).unwrap(),
        parse_corpus(&model, &train).unwrap()
    );

    let mut bytes = std::fs::read(&path).unwrap();
    bytes[8] = bytes[8].wrapping_add(1);
    assert!(matches!(
        ParserModel::from_bytes(&bytes),
        Err(Error::Model(_))
    ));
}

#[test]
fn training_is_deterministic() {
    let (train, inventory) = annotated(60, 3);
    let a = train_pipeline(&train, Some(&inventory), &options("BL+BS+SD", 4))
        .unwrap()
        .0;
    let b = train_pipeline(&train, Some(&inventory), &options("BL+BS+SD", 4))
        .unwrap()
        .0;
    assert_eq!(a.to_bytes().unwrap(), b.to_bytes().unwrap());
}

#[test]
fn reports_have_uas_at_least_las() {
    let (train, inventory) = annotated(100, 4);
    let (dev, _) = annotated(40, 40);
    let (model, _) = train_pipeline(&train, Some(&inventory), &options("BL", 0)).unwrap();
    let predicted = parse_corpus(&model, &dev).unwrap();
    for opts in [EvalOptions::default(), EvalOptions::excluding_punct()] {
        let r = evaluate(&dev, &predicted, &opts).unwrap();
        assert!(r.uas >= r.las);
    }
}

#[test]
fn non_projective_sentences_are_filtered() {
    let crossing = Sentence::new(
        [(0, "root"), (1, "dep"), (1, "dep"), (2, "dep"), (3, "dep")]
            .iter()
            .enumerate()
            .map(|(i, &(h, l))| Token::new(format!("w{i}"), "NN").with_head(h, l))
            .collect(),
    )
    .unwrap();
    let mut train = generate_treebank(20, 1);
    train.insert(3, crossing.clone());
    let (_, summary) = train_pipeline(&train, None, &options("BL", 0)).unwrap();
    assert_eq!(summary.filtered, vec![4]);
    assert!(matches!(
        train_pipeline(&[crossing], None, &options("BL", 0)),
        Err(Error::Training(_))
    ));
}

#[test]
fn supertag_models_need_annotations() {
    let train = generate_treebank(10, 1);
    assert!(matches!(
        train_pipeline(&train, None, &options("BL+BS", 0)),
        Err(Error::Config(_))
    ));
}

#[test]
fn counting_ten_tokens() {
    // 10 tokens: 9 correct heads, 8 of them correctly labelled.
    let heads: Vec<usize> = vec![2, 0, 2, 3, 4, 5, 6, 7, 8, 9];
    let gold = Sentence::new(
        heads
            .iter()
            .enumerate()
            .map(|(i, &h)| {
                Token::new(format!("w{i}"), "NN").with_head(h, if h == 0 { "root" } else { "dep" })
            })
            .collect(),
    )
    .unwrap();
    let mut system = gold.clone();
    let mut arcs = gold.gold_arcs();
    arcs[9].head = 1;
    arcs[8].label = "other".into();
    system.set_predicted(&arcs).unwrap();
    let r = evaluate(
        std::slice::from_ref(&gold),
        std::slice::from_ref(&arcs),
        &EvalOptions::default(),
    )
    .unwrap();
    assert!((r.uas - 90.0).abs() < 1e-12);
    assert!((r.las - 80.0).abs() < 1e-12);

    let mut relabelled: Vec<Token> = gold.tokens().to_vec();
    for (t, a) in relabelled.iter_mut().zip(&arcs) {
        t.head = Some(a.head);
        t.deprel = Some(a.label.clone());
    }
    let r = evaluate_sentences(
        &[gold],
        &[Sentence::new(relabelled).unwrap()],
        &EvalOptions::default(),
    )
    .unwrap();
    assert!((r.uas - 90.0).abs() < 1e-12);
}
