//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the report reads top to bottom; exits non-zero on any FAIL.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use finorient::baselines::{wordcount_rule, wordcount_vote};
use finorient::classifier::{train_pair, TrainParams};
use finorient::eval::reliability::{finn_scores, icc_scores, robinson_scores};
use finorient::eval::{cross_validate, load_corpus, Coefficient, IccVariant, LabelDistribution};
use finorient::extractor::{apply_influencers, detect, extract, fill_neutral, merge_neutrals, ExtractOptions};
use finorient::ingest::{HeuristicTagger, Pos, Sentence};
use finorient::label::Label;
use finorient::lexicon::Lexicon;
use finorient::pipeline::{ModelKind, Pipeline};
use finorient::projection::{equivalent, kernel, ProjectedSequence};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- 1

/// Published label distribution per agreement file: % negative, % neutral,
/// % positive, count.
const GOLD_TABLE: [(&str, [f64; 3], usize); 4] = [
    ("Sentences_AllAgree.txt", [13.4, 61.4, 25.2], 2259),
    ("Sentences_75Agree.txt", [12.2, 62.1, 25.7], 3448),
    ("Sentences_66Agree.txt", [12.2, 60.1, 27.7], 4211),
    ("Sentences_50Agree.txt", [12.5, 59.4, 28.2], 4840),
];

fn phrasebank_dir() -> PathBuf {
    std::env::var_os("FINORIENT_PHRASEBANK_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| common::data_path("FinancialPhraseBank-v1.0"))
}

fn gold_distribution() -> Check {
    let dir = phrasebank_dir();
    let mut notes = Vec::new();
    for (file, pct, count) in GOLD_TABLE {
        let path = dir.join(file);
        let bytes =
            std::fs::read(&path).map_err(|e| format!("{}: {e} (set FINORIENT_PHRASEBANK_DIR)", path.display()))?;
        let corpus = load_corpus(&bytes).map_err(|e| format!("{file}: {e}"))?;
        let d = LabelDistribution::from_labels(corpus.iter().map(|(_, l)| *l));
        for (label, want) in [Label::Negative, Label::Neutral, Label::Positive].into_iter().zip(pct) {
            let got = d.percent(label);
            ensure((got - want).abs() <= 1.0, || {
                format!("{file}: {label} {got:.1}% vs {want}%")
            })?;
        }
        let n = d.total();
        ensure(n.abs_diff(count) as f64 <= 0.02 * count as f64, || {
            format!("{file}: n = {n} vs {count}")
        })?;
        notes.push(n.to_string());
    }
    Ok(format!("n = {}", notes.join(" / ")))
}

// ---------------------------------------------------------------- 2

fn solver_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let mut worst = 0.0f64;
    for set in 0..50 {
        let coding = common::coding(rng.random_range(2..6));
        let n = rng.random_range(2..=8);
        let (pts, labels) = loop {
            let pts: Vec<ProjectedSequence> = (0..n)
                .map(|_| common::random_projection(&mut rng, &coding, 4))
                .collect();
            let labels: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
            if labels.contains(&true) && labels.contains(&false) {
                break (pts, labels);
            }
        };
        let c = [0.25, 1.0, 4.0][set % 3];
        let data: Vec<_> = pts.iter().zip(labels.iter().copied()).collect();
        let (_, sol) = train_pair(&data, (Label::Positive, Label::Negative), TrainParams { c, eps: 1e-3 })
            .map_err(|e| format!("set {set}: {e}"))?;
        let k: Vec<Vec<f64>> = pts
            .iter()
            .map(|a| pts.iter().map(|b| kernel(a, b).unwrap()).collect())
            .collect();
        let y: Vec<f64> = labels.iter().map(|&l| if l { 1.0 } else { -1.0 }).collect();
        let oracle = common::qp_oracle(&k, &y, c);
        let rel = (sol.objective - oracle).abs() / oracle.abs().max(1e-12);
        worst = worst.max(rel);
        ensure(rel <= 1e-3, || {
            format!("set {set}: objective {} vs oracle {oracle}", sol.objective)
        })?;
        ensure(sol.alpha.iter().all(|&a| (-1e-6..=c + 1e-6).contains(&a)), || {
            format!("set {set}: alpha out of box")
        })?;
        let balance: f64 = sol.alpha.iter().zip(&y).map(|(a, y)| a * y).sum();
        ensure(balance.abs() <= 1e-6, || format!("set {set}: y·alpha = {balance}"))?;
    }
    Ok(format!("50 sets, worst relative gap {worst:.1e}"))
}

// ---------------------------------------------------------------- 3

fn kernel_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut min_eig = f64::INFINITY;
    for batch in 0..100 {
        let coding = common::coding(rng.random_range(2..8));
        let pts: Vec<ProjectedSequence> = (0..rng.random_range(2..25))
            .map(|_| common::random_projection(&mut rng, &coding, 8))
            .collect();
        for p in &pts {
            let k = kernel(p, p).unwrap();
            ensure(k == p.len() as f64, || {
                format!("batch {batch}: K(x,x) = {k}, n = {}", p.len())
            })?;
        }
        let g = DMatrix::from_fn(pts.len(), pts.len(), |i, j| kernel(&pts[i], &pts[j]).unwrap());
        let e = g.symmetric_eigen().eigenvalues.min();
        min_eig = min_eig.min(e);
        ensure(e >= -1e-9, || format!("batch {batch}: eigenvalue {e}"))?;
    }
    let coding = common::coding(3);
    let mut equal = 0;
    for i in 0..1000 {
        let a = common::random_sequence(&mut rng, &coding, 3);
        // every other pair reuses the type sequence with fresh spans
        let b = if i % 2 == 0 {
            let mut b = common::random_sequence(&mut rng, &coding, 3);
            let mut start = 0;
            b.entities = a
                .entities
                .iter()
                .map(|e| {
                    let mut e = e.clone();
                    let len = rng.random_range(1..4);
                    (e.start, e.end) = (start, start + len);
                    start += len;
                    e
                })
                .collect();
            b
        } else {
            common::random_sequence(&mut rng, &coding, 3)
        };
        let (pa, pb) = (coding.encode(&a).unwrap(), coding.encode(&b).unwrap());
        let k = kernel(&pa, &pb).unwrap();
        let by_kernel = pa.len() == pb.len() && k == pa.len() as f64;
        ensure(equivalent(&a, &b) == by_kernel, || {
            format!("pair {i}: equivalence disagrees with kernel")
        })?;
        equal += usize::from(by_kernel);
    }
    Ok(format!("min eigenvalue {min_eig:.1e}, {equal}/1000 equivalent pairs"))
}

// ---------------------------------------------------------------- 4

const VOCAB: &[(&str, Pos)] = &[
    ("profit", Pos::Noun),
    ("operating", Pos::Verb),
    ("sales", Pos::Noun),
    ("costs", Pos::Noun),
    ("net", Pos::Adj),
    ("loss", Pos::Noun),
    ("fell", Pos::Verb),
    ("rose", Pos::Verb),
    ("speeded", Pos::Verb),
    ("up", Pos::Part),
    ("not", Pos::Part),
    ("may", Pos::Verb),
    ("lawsuit", Pos::Noun),
    ("uncertain", Pos::Adj),
    ("good", Pos::Adj),
    ("considerably", Pos::Adv),
    ("collection", Pos::Noun),
    ("errors", Pos::Noun),
    ("the", Pos::Other),
    ("and", Pos::Other),
    ("eur", Pos::Noun),
    ("cut", Pos::Verb),
    ("interest", Pos::Noun),
    ("expense", Pos::Noun),
];

fn extractor_suite() -> Check {
    let lex = common::demo_lexicon();
    let tagger = HeuristicTagger::with_lexicon(&lex);
    let golden = std::fs::read_to_string(common::test_data_path("extractor_golden.tsv")).map_err(|e| e.to_string())?;
    let mut rows = 0;
    for line in golden.lines() {
        let (text, expected) = line.split_once('\t').ok_or("malformed golden line")?;
        let s = Sentence::from_text(None, text, &tagger);
        let got = extract(&lex, &s, ExtractOptions::default()).to_tsv_line("");
        ensure(got.trim_start_matches('\t') == expected, || {
            format!("{text}: got {got}")
        })?;
        rows += 1;
    }
    ensure(rows >= 40, || format!("only {rows} golden sentences"))?;
    let errs = Sentence::from_text(
        None,
        "The number of collection errors fell considerably, and operations speeded up",
        &tagger,
    );
    let candidates: Vec<String> = detect(&lex, &errs)
        .iter()
        .map(|e| {
            errs.tokens[e.start..e.end]
                .iter()
                .map(|t| t.lower.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    ensure(
        candidates == ["collection errors", "fell", "considerably", "operations", "speeded up"],
        || format!("candidates {candidates:?}"),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..10_000 {
        let words: Vec<(&str, Pos)> = (0..rng.random_range(0..18))
            .map(|_| VOCAB[rng.random_range(0..VOCAB.len())])
            .collect();
        let s = Sentence::from_tagged(None, &words);
        let options = ExtractOptions {
            window: 1 + i % 3,
            prune: true,
        };
        let out = extract(&lex, &s, options);
        ensure(out.covers(s.len()), || format!("no full cover: {}", s.text))?;
        let again = merge_neutrals(apply_influencers(merge_neutrals(out.clone()), options.window));
        ensure(again == out, || format!("pruning not idempotent: {}", s.text))?;
        let filled = fill_neutral(&s, detect(&lex, &s));
        ensure(out.len() <= filled.len(), || {
            format!("pruning grew the sequence: {}", s.text)
        })?;
    }
    Ok(format!("{rows} golden sentences, 10000 random sentences"))
}

// ---------------------------------------------------------------- 5

/// `a/b >= 2/3` on reduced fractions.
fn at_least_two_thirds(a: u64, b: u64) -> bool {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let d = gcd(a, b).max(1);
    let (a, b) = (a / d, b / d);
    a * 3 >= b * 2
}

fn wordcount_conformance() -> Check {
    let lex =
        Lexicon::parse_str("\tgood\t-\tGeneralPositive\n\tbad\t-\tGeneralNegative\n").map_err(|e| e.to_string())?;
    let mut cases = 0;
    for p in 0..=12u64 {
        for g in 0..=12 - p {
            let n = p + g;
            let want = if n == 0 {
                Label::Neutral
            } else if at_least_two_thirds(g, n) {
                Label::Negative
            } else if at_least_two_thirds(p, n) {
                Label::Positive
            } else {
                Label::Neutral
            };
            ensure(wordcount_rule(p as usize, g as usize) == want, || {
                format!("rule({p}, {g})")
            })?;
            let mut words = vec![("good", Pos::Adj); p as usize];
            words.extend(vec![("bad", Pos::Adj); g as usize]);
            words.push(("results", Pos::Noun));
            let s = Sentence::from_tagged(None, &words);
            ensure(wordcount_vote(&lex, &s) == want, || format!("vote({p}, {g})"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (p, g) cases"))
}

// ---------------------------------------------------------------- 6

fn reliability_oracle() -> Check {
    let text =
        std::fs::read_to_string(common::test_data_path("reliability_reference.tsv")).map_err(|e| e.to_string())?;
    let mut count = 0;
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let f: Vec<&str> = line.split('\t').collect();
        let k: usize = f[2].parse().unwrap();
        let flat: Vec<f64> = f[3].split(',').map(|v| v.parse().unwrap()).collect();
        let x: Vec<Vec<f64>> = flat.chunks(k).map(<[f64]>::to_vec).collect();
        let got = [
            icc_scores(&x, IccVariant::Consistency),
            icc_scores(&x, IccVariant::Agreement),
            finn_scores(&x),
            robinson_scores(&x),
        ];
        for (i, g) in got.iter().enumerate() {
            let want: f64 = f[4 + i].parse().unwrap();
            let g = g.value().ok_or_else(|| format!("{}: degenerate", f[0]))?;
            ensure((g - want).abs() <= 1e-6, || {
                format!("{} column {i}: {g} vs {want}", f[0])
            })?;
        }
        count += 1;
    }
    ensure(count >= 20, || format!("only {count} reference matrices"))?;
    for x in [vec![vec![0.0; 3]; 5], vec![vec![-1.0; 6]; 2]] {
        let all = [
            icc_scores(&x, IccVariant::Consistency),
            icc_scores(&x, IccVariant::Agreement),
            finn_scores(&x),
            robinson_scores(&x),
        ];
        ensure(all.iter().all(|c| *c == Coefficient::Degenerate), || {
            "constant matrix not degenerate".into()
        })?;
    }
    Ok(format!("{count} reference matrices, constant matrices degenerate"))
}

// ---------------------------------------------------------------- 7

fn toy_ordering() -> Check {
    let lex = common::demo_lexicon();
    let general = Lexicon::load(common::data_path("general_polarity.tsv")).map_err(|e| e.to_string())?;
    let tagger = HeuristicTagger::with_lexicon(&lex);
    let corpus = load_corpus(&std::fs::read(common::data_path("toy_corpus.txt")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(corpus.len() == 60, || {
        format!("toy corpus has {} sentences", corpus.len())
    })?;
    let data: Vec<(Sentence, Label)> = corpus
        .iter()
        .map(|(t, l)| (Sentence::from_text(None, t, &tagger), *l))
        .collect();
    let seed = finorient::eval::cv::DEFAULT_SEED;
    let lps = Pipeline::new(ModelKind::Lps, &lex);
    let wg = Pipeline::new(ModelKind::WordcountGeneral, &general);
    let run = |p: &Pipeline| cross_validate(p, &data, 10, seed).map_err(|e| e.to_string());
    let (a, b) = (run(&lps)?, run(&lps)?);
    ensure(a == b, || "LPS cross-validation is not deterministic".into())?;
    let w = run(&wg)?;
    ensure(run(&wg)? == w, || {
        "wordcount cross-validation is not deterministic".into()
    })?;
    ensure(a.accuracy() >= w.accuracy(), || {
        format!("LPS {:.3} < w-general {:.3}", a.accuracy(), w.accuracy())
    })?;
    Ok(format!("LPS {:.3} >= w-general {:.3}", a.accuracy(), w.accuracy()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        (
            "1 gold-standard reproduction",
            gold_distribution,
            Duration::from_secs(5),
        ),
        ("2 solver oracle", solver_oracle, Duration::from_secs(30)),
        (
            "3 kernel/projection properties",
            kernel_properties,
            Duration::from_secs(10),
        ),
        ("4 extractor golden suite", extractor_suite, Duration::from_secs(20)),
        ("5 wordcount rule", wordcount_conformance, Duration::from_secs(1)),
        ("6 reliability oracle", reliability_oracle, Duration::from_secs(5)),
        ("7 toy corpus ordering", toy_ordering, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let line = match outcome {
            Ok(note) if took <= budget => format!("PASS  {name}: {note} ({took:.2?})"),
            Ok(note) => format!("FAIL  {name}: {note}, but took {took:.2?} > {budget:?}"),
            Err(why) => format!("FAIL  {name}: {why} ({took:.2?})"),
        };
        failed += usize::from(line.starts_with("FAIL"));
        println!("{line}");
    }
    if failed > 0 {
        println!("{failed} of 7 criteria failed");
        std::process::exit(1);
    }
}
