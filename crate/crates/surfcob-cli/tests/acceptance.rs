//! Acceptance run: one PASS/FAIL line per criterion, built from the
//! relation suites at pinned genera, seed and tolerances.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use surfcob_cli::{run_suite_with, SuiteOptions, SuiteReport};

const SEED: u64 = 7;
/// Holonomy and area equalities.
const HOL_TOL: f64 = 1e-6;
/// Developed turning residual, in whole turns.
const WINDING_TOL: f64 = 0.01;

struct Criterion {
    title: &'static str,
    /// `(suite, genera, check ids)`.
    checks: &'static [(&'static str, &'static [usize], &'static [&'static str])],
    /// Measured values that must stay below a pinned tolerance.
    bounds: &'static [(&'static str, f64)],
}

const ALL: &[usize] = &[2, 3, 4];
const LOW: &[usize] = &[2, 3];

const CRITERIA: &[Criterion] = &[
    Criterion { title: "word problem", checks: &[("classes", ALL, &["word-problem"])], bounds: &[] },
    Criterion {
        title: "winding integrality",
        checks: &[("moves", LOW, &["winding-integrality"])],
        bounds: &[("max_residual_turns", WINDING_TOL)],
    },
    Criterion { title: "Maslov spot values", checks: &[("classes", ALL, &["maslov-spot-values"])], bounds: &[] },
    Criterion {
        title: "move invariance",
        checks: &[("moves", LOW, &["moves-conserve", "vertex-push-shift", "move-holonomy"])],
        bounds: &[("max_error", HOL_TOL)],
    },
    Criterion {
        title: "resolution and surgery conservation",
        checks: &[("classes", ALL, &["resolution-conservation", "iterated-resolution", "surgery-conservation"])],
        bounds: &[("max_hol_error", HOL_TOL)],
    },
    Criterion {
        title: "twist formula",
        checks: &[("mcg", ALL, &["twist-lickorish", "twist-random"]), ("holonomy", ALL, &["twist-defect"])],
        bounds: &[],
    },
    Criterion {
        title: "structure constants",
        checks: &[
            ("classes", ALL, &["torus-class", "subsurface-class"]),
            ("mcg", ALL, &["gamma-identity"]),
            ("holonomy", ALL, &["t-order"]),
        ],
        bounds: &[],
    },
    Criterion {
        title: "unobstructedness",
        checks: &[("classes", ALL, &["unobstructed-verdicts", "surgery-unobstructed"])],
        bounds: &[],
    },
    Criterion {
        title: "holonomy section",
        checks: &[("holonomy", ALL, &["hol-section", "hol-section-chunked", "hol-reversal"])],
        bounds: &[("max_error", HOL_TOL)],
    },
    Criterion {
        title: "Floer complexes",
        checks: &[(
            "floer",
            ALL,
            &[
                "floer-d-squared",
                "floer-grading",
                "floer-exponents",
                "floer-minimal-pair",
                "floer-rank-invariance",
                "floer-minimal-position",
                "floer-saturation",
            ],
        )],
        bounds: &[],
    },
    Criterion { title: "Leibniz rule for the product", checks: &[("floer", ALL, &["floer-leibniz"])], bounds: &[] },
    Criterion { title: "K0 compatibility", checks: &[("classes", ALL, &["k0-reversal", "k0-agrees"])], bounds: &[] },
];

fn evaluate(c: &Criterion, reports: &BTreeMap<(&str, usize), SuiteReport>) -> (bool, Vec<String>) {
    let mut pass = true;
    let mut notes = Vec::new();
    for (suite, genera, ids) in c.checks {
        for g in *genera {
            let r = &reports[&(*suite, *g)];
            for id in *ids {
                let Some(check) = r.check(id) else {
                    pass = false;
                    notes.push(format!("{id} missing at g={g}"));
                    continue;
                };
                if !check.pass {
                    pass = false;
                    notes.push(format!("{id} failed at g={g}"));
                }
                for (key, tol) in c.bounds {
                    if let Some(v) = check.measured.get(*key) {
                        if v.is_nan() || *v >= *tol {
                            pass = false;
                            notes.push(format!("{id} {key}={v:e} at g={g} exceeds {tol:e}"));
                        }
                    }
                }
            }
        }
    }
    (pass, notes)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut reports = BTreeMap::new();
    for c in CRITERIA {
        for (suite, genera, _) in c.checks {
            for g in *genera {
                if reports.contains_key(&(*suite, *g)) {
                    continue;
                }
                let o = SuiteOptions { genus: *g, seed: SEED, tolerance: HOL_TOL };
                let r = run_suite_with(suite, o).unwrap_or_else(|e| panic!("suite {suite} g={g}: {e}"));
                reports.insert((*suite, *g), r);
            }
        }
    }
    let mut failed = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        let (pass, notes) = evaluate(c, &reports);
        failed += usize::from(!pass);
        let status = if pass { "PASS" } else { "FAIL" };
        let detail = if notes.is_empty() { String::new() } else { format!(" ({})", notes.join("; ")) };
        println!("{status} criterion {:>2}: {}{detail}", i + 1, c.title);
    }
    for g in ALL {
        if let Some(x) = reports[&("holonomy", *g)].check("twist-defect").and_then(|c| c.measured.get("x_alpha1_beta1")) {
            println!("     twist holonomy defect x(alpha_1, beta_1) at g={g}: {}", surfcob_cli::sig12(*x));
        }
    }
    println!("{} criteria, {failed} failed, {:.1} s", CRITERIA.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
