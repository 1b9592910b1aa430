//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use paramodular::verify::{plan, run_case, CaseOutcome, Mode, Suite, VerifyConfig};

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Option<Duration>,
    runs: Vec<(VerifyConfig, Option<&'static str>)>,
    expect_cases: Option<usize>,
}

fn cfg(suite: Suite) -> VerifyConfig {
    VerifyConfig::for_suite(suite)
}

fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    let mut unramified = cfg(Suite::Unramified);
    unramified.mode = Mode::Evaluation;
    vec![
        Criterion {
            id: 1,
            title: "unramified identity P_phi * Psi / P_wedge2 = 1 through Y^8, n <= 3",
            budget: secs(60),
            runs: vec![(unramified, None)],
            expect_cases: Some(6 * 20),
        },
        Criterion {
            id: 2,
            title: "dimension formula equals basis enumeration, n <= 4, m - a <= 8",
            budget: secs(1),
            runs: vec![(cfg(Suite::Dims), None)],
            expect_cases: Some(36),
        },
        Criterion {
            id: 3,
            title: "GSp4 raising recursions on Psi series, 100 random data sets",
            budget: secs(30),
            runs: vec![(cfg(Suite::Gsp4Raising), None)],
            expect_cases: Some(100),
        },
        Criterion {
            id: 4,
            title: "eta lemma at n = 3, 50 random data sets",
            budget: secs(60),
            runs: vec![(cfg(Suite::EtaLemma), None)],
            expect_cases: Some(100),
        },
        Criterion {
            id: 5,
            title: "level a+1 images and constants at n = 2",
            budget: None,
            runs: vec![(cfg(Suite::LevelA1), None)],
            expect_cases: Some(3),
        },
        Criterion {
            id: 6,
            title: "specialization chain and r = 1 zeta recursions",
            budget: None,
            runs: vec![(cfg(Suite::Prop4), None)],
            expect_cases: None,
        },
        Criterion {
            id: 7,
            title: "dependence relation at a+3 and ranks of the oldform images",
            budget: None,
            runs: vec![
                (cfg(Suite::Dependence), None),
                (n2(cfg(Suite::OldformBases)), Some("rank")),
            ],
            expect_cases: Some(4 + 5),
        },
        Criterion {
            id: 8,
            title: "basis comparison at m - a = 2",
            budget: None,
            runs: vec![
                (n2(cfg(Suite::OldformBases)), Some("displayed quadruples")),
                (n2(cfg(Suite::OldformBases)), Some("compare m_minus_a=2")),
            ],
            expect_cases: Some(2),
        },
        Criterion {
            id: 9,
            title: "oracle equivalences for characters and Whittaker values",
            budget: None,
            runs: vec![(cfg(Suite::Oracles), None)],
            expect_cases: None,
        },
        Criterion {
            id: 10,
            title: "property suites: homogeneity, S0 closure, palindromicity, grading, kernel",
            budget: None,
            runs: vec![
                (cfg(Suite::Properties), None),
                (cfg(Suite::Fe), None),
                (cfg(Suite::Kernel), None),
            ],
            expect_cases: None,
        },
    ]
}

fn n2(mut c: VerifyConfig) -> VerifyConfig {
    c.n = Some(2);
    c
}

fn run(c: &Criterion) -> (Vec<CaseOutcome>, Duration, Option<String>) {
    let start = Instant::now();
    let mut out = Vec::new();
    for (config, filter) in &c.runs {
        let cases = match plan(config) {
            Ok(cases) => cases,
            Err(e) => return (out, start.elapsed(), Some(format!("plan failed: {e}"))),
        };
        for case in cases
            .iter()
            .filter(|k| filter.is_none_or(|f| k.label.starts_with(f)))
        {
            out.push(run_case(config, case));
        }
    }
    (out, start.elapsed(), None)
}

fn main() -> ExitCode {
    let mut failures = 0;
    for c in criteria() {
        let (outcomes, elapsed, error) = run(&c);
        let failed = outcomes.iter().find(|o| !o.passed);
        let conditional = outcomes.iter().filter(|o| o.conditional).count();
        let mut problems = Vec::new();
        if let Some(e) = error {
            problems.push(e);
        }
        if let Some(f) = failed {
            let w = f.witness.as_ref().expect("failing case carries a witness");
            problems.push(format!(
                "{}: {} expected {} got {}",
                f.label, w.location, w.expected, w.actual
            ));
        }
        if outcomes.is_empty() {
            problems.push("no cases ran".into());
        }
        if let Some(k) = c.expect_cases {
            if outcomes.len() != k {
                problems.push(format!("expected {k} cases, ran {}", outcomes.len()));
            }
        }
        if let Some(budget) = c.budget {
            if elapsed > budget {
                problems.push(format!("took {:.2?}, budget {:.0?}", elapsed, budget));
            }
        }
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        let note = if conditional > 0 {
            format!(", {conditional} conditional")
        } else {
            String::new()
        };
        println!(
            "{verdict} criterion {}: {} ({} cases{note}, {:.2?})",
            c.id,
            c.title,
            outcomes.len(),
            elapsed
        );
        for p in &problems {
            println!("    {p}");
        }
        if !problems.is_empty() {
            failures += 1;
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
