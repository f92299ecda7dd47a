//! Acceptance gate: one PASS/FAIL line per primary criterion, evaluated on the
//! default configuration with tolerances pinned here rather than taken from
//! the suite defaults.

use std::process::ExitCode;
use std::time::Instant;

use massless_verify::config::RunConfig;
use massless_verify::report::Report;

struct Criterion {
    number: u32,
    title: &'static str,
    /// `(check_id, pinned tolerance)`; every residual must be within its bound.
    bounds: &'static [(&'static str, f64)],
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        title: "isotropy characterization",
        bounds: &[("isotropy_membership", 1e-10), ("isotropy_rejection", 0.0)],
    },
    Criterion {
        number: 2,
        title: "cocycle identity and Jacobian",
        bounds: &[("cocycle_jacobian", 1e-6), ("cocycle_multiplicativity", 1e-9)],
    },
    Criterion {
        number: 3,
        title: "double-coset structure",
        bounds: &[
            ("coset_transitivity", 1e-10),
            ("stabilizer_triviality", 0.0),
            ("double_coset_classification", 0.0),
        ],
    },
    Criterion {
        number: 4,
        title: "unitarity and group law of the translation representation",
        bounds: &[("unitarity", 1e-7), ("group_law", 1e-12)],
    },
    Criterion {
        number: 5,
        title: "regular-representation equivalence",
        bounds: &[("intertwiner", 1e-12)],
    },
    Criterion {
        number: 6,
        title: "generators: limit orders, commutator, (anti)symmetry",
        bounds: &[
            ("generator_limit_order", 0.1),
            ("generator_limit_richardson", 0.2),
            ("commutator", 1e-10),
            ("antisymmetry", 1e-7),
            ("pi_symmetry", 1e-7),
        ],
    },
    Criterion {
        number: 7,
        title: "spectral problem: P^2 forms, eigen-residuals, packet transport",
        bounds: &[
            ("p_squared_polar", 1e-9),
            ("eigen_residuals", 1e-10),
            ("eigenvalue_exact", 1e-10),
            ("packet_transport", 1e-10),
        ],
    },
    Criterion {
        number: 8,
        title: "reference integral pi/2 at the default grid",
        bounds: &[("quadrature_reference", 1e-8)],
    },
];

fn judge(report: &Report, criterion: &Criterion) -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for (id, bound) in criterion.bounds {
        match report.record(id).and_then(|r| r.residual) {
            Some(residual) => {
                let within = residual <= *bound;
                ok &= within;
                details.push(format!("{id} {residual:.2e}{}{bound:.0e}", if within { "<=" } else { ">" }));
            }
            None => {
                ok = false;
                details.push(format!("{id} not evaluated"));
            }
        }
    }
    (ok, details.join(", "))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let config = RunConfig::default();
    let report = massless_verify::suite::run(&config).expect("default config is valid");
    let mut all = true;
    for criterion in CRITERIA {
        let (ok, details) = judge(&report, criterion);
        all &= ok;
        println!(
            "criterion {} {}: {}  [{}]",
            criterion.number,
            if ok { "PASS" } else { "FAIL" },
            criterion.title,
            details
        );
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("acceptance: {} in {elapsed:.1} s", if all { "PASS" } else { "FAIL" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
