//! Acceptance criteria, one line each. Runs without the test harness so the
//! pass/fail lines always reach the output.

use std::collections::HashMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use matroid_depth::decomposition::{csd, csd_search, SearchOptions};
use matroid_depth::depth::contraction_depth;
use matroid_depth::matroid::{free, loops, minor, MatroidRef, Uniform};
use matroid_depth::tamed::{Mutation, TamedExtension};
use matroid_depth::verify::{is_exceptional, run_suite, Check, Corpus, TheoremReport, VerifyConfig};
use matroid_depth::ElementSet;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

/// Contraction-depth straight from the recursion, over minor views, with
/// components found from pairwise shared circuits. No memo, no rank table.
fn oracle_cd(m: &MatroidRef) -> usize {
    let n = m.len();
    if n == 0 {
        return 0;
    }
    if n == 1 {
        return 1;
    }
    let circuits = m.circuits(16).unwrap();
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for c in &circuits {
            let low = c.iter().map(|e| label[e]).min().unwrap();
            for e in c.iter() {
                if label[e] != low {
                    label[e] = low;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut blocks: HashMap<usize, ElementSet> = HashMap::new();
    for (e, &l) in label.iter().enumerate() {
        blocks.entry(l).or_default().insert(e);
    }
    if blocks.len() > 1 {
        return blocks
            .values()
            .map(|&b| {
                let view: MatroidRef = Arc::new(minor(m, ElementSet::empty(), m.ground() - b).unwrap());
                oracle_cd(&view)
            })
            .max()
            .unwrap();
    }
    1 + (0..n)
        .map(|e| {
            let view: MatroidRef = Arc::new(minor(m, ElementSet::singleton(e), ElementSet::empty()).unwrap());
            oracle_cd(&view)
        })
        .min()
        .unwrap()
}

fn suite(corpus: &Corpus, check: Check, config: &VerifyConfig) -> Vec<TheoremReport> {
    run_suite(corpus, &[check], config)
}

/// Passes when no report failed; describes the counts either way.
fn no_failures(reports: &[TheoremReport]) -> Outcome {
    let ran = reports.iter().filter(|r| !r.skipped()).count();
    let checks: u64 = reports.iter().map(|r| r.checks).sum();
    match reports.iter().find(|r| r.failed()) {
        None => Ok(format!("{ran} instances, {checks} assertions")),
        Some(r) => Err(r.line()),
    }
}

fn named_values() -> Outcome {
    let opts = SearchOptions::default();
    let l = loops(3);
    let u = Uniform::new(3, 1).unwrap();
    let f = free(3);
    let got = [
        (contraction_depth(&l, 16).unwrap(), csd(&l, &opts).unwrap()),
        (contraction_depth(&u, 16).unwrap(), csd(&u, &opts).unwrap()),
        (contraction_depth(&f, 16).unwrap(), csd(&f, &opts).unwrap()),
    ];
    if got != [(1, 0), (2, 1), (1, 1)] {
        return Err(format!("(cd, csd) values {got:?}"));
    }
    // free(3) is its own extension of depth 1, below csd + 1
    if !is_exceptional(&f) || got[2].0 == got[2].1 + 1 {
        return Err("free matroid does not fall under the exception".into());
    }
    Ok("loops(3), uniform(3,1), free(3)".into())
}

fn main_pipeline(corpus: &Corpus, config: &VerifyConfig) -> Outcome {
    let reports = suite(corpus, Check::Main, config);
    no_failures(&reports)?;
    let in_range = reports
        .iter()
        .filter(|r| !r.skipped())
        .filter(|r| {
            let m = &corpus.entries[r.instance].matroid;
            m.full_rank() <= 4 && m.len() <= 8
        })
        .count();
    if in_range < 30 {
        return Err(format!("only {in_range} instances with rank <= 4 and at most 8 elements"));
    }
    // independent recursion on the small extensions
    let mut cross = 0;
    for e in &corpus.entries {
        let m = &e.matroid;
        if is_exceptional(m.as_ref()) || m.len() + m.full_rank() > 7 {
            continue;
        }
        let report = csd_search(m.as_ref(), &config.search).unwrap().unwrap();
        let ext: MatroidRef = Arc::new(TamedExtension::new(m.clone(), report.decomposition).unwrap());
        let c = oracle_cd(&ext);
        if c != report.depth + 1 {
            return Err(format!("{}: oracle cd {c}, csd {}", e.label, report.depth));
        }
        cross += 1;
    }
    Ok(format!("{in_range} instances in range, {cross} confirmed by the plain recursion"))
}

fn mutation_sensitivity(corpus: &Corpus) -> Outcome {
    let mut shown = Vec::new();
    for mutation in Mutation::ACTIVE {
        let config = VerifyConfig {
            mutation,
            ..VerifyConfig::default()
        };
        let failing = run_suite(corpus, &Check::ALL, &config).iter().filter(|r| r.failed()).count();
        if failing == 0 {
            return Err(format!("{mutation} went unnoticed"));
        }
        shown.push(format!("{mutation}: {failing}"));
    }
    Ok(shown.join(", "))
}

fn main() -> ExitCode {
    let corpus = Corpus::generate(0);
    let config = VerifyConfig::default();
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("named values", secs(1), Box::new(named_values)),
        ("main theorem pipeline", secs(300), Box::new(|| main_pipeline(&corpus, &config))),
        ("extension axioms", secs(300), Box::new(|| no_failures(&suite(&corpus, Check::Axioms, &config)))),
        ("restriction", secs(60), Box::new(|| no_failures(&suite(&corpus, Check::Restriction, &config)))),
        ("token laws", secs(60), Box::new(|| no_failures(&suite(&corpus, Check::Tokens, &config)))),
        ("depth bound", secs(300), Box::new(|| no_failures(&suite(&corpus, Check::DepthBound, &config)))),
        ("altered variant", secs(120), Box::new(|| {
            let reports = suite(&corpus, Check::Altered, &config);
            if reports.iter().any(|r| r.skipped()) {
                return Err("altered check skipped an instance".into());
            }
            no_failures(&reports)
        })),
        ("cross-oracle", secs(120), Box::new(|| no_failures(&suite(&corpus, Check::CrossOracle, &config)))),
        ("duality and bounds", secs(60), Box::new(|| no_failures(&suite(&corpus, Check::Duality, &config)))),
        ("mutation sensitivity", secs(300), Box::new(|| mutation_sensitivity(&corpus))),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > *budget => Err(format!("{msg}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {:>2} {name}: PASS ({msg}; {elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({msg})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
