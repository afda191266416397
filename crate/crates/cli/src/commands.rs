use std::f64::consts::TAU;

use munorm_core::bistochastic::{
    abs_sq_coefficients, build_finite, build_torus, koopman_case_compare, BistochasticKernel,
    CheckOutcome, KernelMode,
};
use munorm_core::finite_space::{
    mu_norm_formula, mu_norm_infimum, Partition, DEFAULT_PARTITION_GUARD,
};
use munorm_core::koopman::{ks_entropy_stage, quantum_entropy_stage};
use munorm_core::regular::{
    fejer_nu, fejer_order, mu_norm_integral_estimate, mu_norm_regular, omega_convergence_report,
    omega_exact, omega_window_table, OmegaTable, Source,
};
use munorm_core::sample::{random_trig_poly, random_vector};
use munorm_core::torus::{IntegerInterval, LatticeOperator, OperatorKind};
use munorm_core::{Complex64, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{Command, Emit, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::{num, opt_num, Format, Report};
use crate::spec::{parse_operator, Operator, ParsedOperator, SpecDefaults};
use crate::suite::{run_suite, SuiteConfig};

/// Environment variable overriding the partition enumeration guard.
pub const GUARD_ENV: &str = "MUNORM_GUARD_J";

const INFIMUM_TOL: f64 = 1e-9;
const STAGE_TOL: f64 = 1e-10;
const FEJER_TOL: f64 = 1e-8;
const NONNEG_TOL: f64 = 1e-9;
const UNIT_TOL: f64 = 1e-10;
const L1_TOL: f64 = 1e-9;
const BISTOCHASTIC_TRIALS: usize = 200;
const OMEGA_RADIUS: usize = 3;
const KERNEL_RADIUS: usize = 32;
const CIRCLE_GRID: usize = 256;
const KERNEL_GRID: usize = 64;

pub fn run(command: Command, cfg: &RunConfig) -> CliResult<Report> {
    match command {
        Command::MuNorm => cmd_mu_norm(cfg),
        Command::Entropy => cmd_entropy(cfg),
        Command::Omega => cmd_omega(cfg),
        Command::Bistochastic => cmd_bistochastic(cfg),
        Command::Suite => cmd_suite(cfg),
    }
}

pub fn load_operator(cfg: &RunConfig) -> CliResult<ParsedOperator> {
    let text = match (&cfg.op, &cfg.inline) {
        (Some(path), _) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        (None, Some(text)) => text.clone(),
        (None, None) => {
            return Err(CliError::input(
                "an operator is required: pass --op FILE or --inline JSON",
            ))
        }
    };
    parse_operator(
        &text,
        &SpecDefaults {
            size: cfg.size,
            band: cfg.band,
            seed: cfg.seed,
        },
    )
}

fn partition_guard() -> CliResult<usize> {
    match std::env::var(GUARD_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::input(format!(
                "{GUARD_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_PARTITION_GUARD),
        Err(e) => Err(CliError::input(format!("{GUARD_ENV}: {e}"))),
    }
}

fn reject_emit(cfg: &RunConfig, allowed: &[Emit]) -> CliResult<()> {
    match cfg.emit {
        Some(e) if !allowed.contains(&e) => Err(CliError::input(format!(
            "--emit {e:?} does not apply to this command"
        ))),
        _ => Ok(()),
    }
}

fn interval(len: usize) -> CliResult<IntegerInterval> {
    Ok(IntegerInterval::with_len(-((len / 2) as i64), len)?)
}

fn longest_interval(cfg: &RunConfig) -> CliResult<usize> {
    cfg.intervals
        .iter()
        .copied()
        .max()
        .ok_or_else(|| CliError::input("--intervals must list at least one length"))
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Exact table when a closed form exists, otherwise the window over the
/// longest interval.
fn table_for(w: &LatticeOperator, radius: usize, cfg: &RunConfig) -> CliResult<OmegaTable> {
    match omega_exact(w, radius) {
        Ok(t) => Ok(t),
        Err(Error::NoClosedForm(_)) => Ok(omega_window_table(
            w,
            &interval(longest_interval(cfg)?)?,
            radius,
        )),
        Err(e) => Err(e.into()),
    }
}

fn source_fields(source: Source) -> (&'static str, Option<usize>) {
    match source {
        Source::Exact => ("exact", None),
        Source::Estimated { interval_len } => ("window", Some(interval_len)),
    }
}

pub fn cmd_mu_norm(cfg: &RunConfig) -> CliResult<Report> {
    reject_emit(cfg, &[])?;
    let parsed = load_operator(cfg)?;
    match parsed.operator {
        Operator::Finite(w) => {
            let guard = partition_guard()?;
            let tol = cfg.tol.unwrap_or(INFIMUM_TOL);
            let formula = mu_norm_formula(&w);
            let n = w.size();
            let formula_sq = w.value_matrix().frobenius_sq() / n as f64;
            let mut rows = vec![
                vec!["J".into(), n.to_string()],
                vec!["mu_norm".into(), num(formula)],
                vec!["mu_norm_sq".into(), num(formula_sq)],
            ];
            let (infimum, passed) = if n <= guard {
                let inf = mu_norm_infimum(&w, guard)?;
                let diff = (inf.minimum - formula).abs();
                let at_singleton = inf.singleton - inf.minimum;
                let passed = diff <= tol && at_singleton <= tol;
                rows.push(vec!["infimum".into(), num(inf.minimum)]);
                rows.push(vec!["infimum_at_singletons".into(), num(inf.singleton)]);
                rows.push(vec!["difference".into(), num(diff)]);
                rows.push(vec![
                    "partitions_checked".into(),
                    inf.partitions_checked.to_string(),
                ]);
                rows.push(vec!["passed".into(), passed.to_string()]);
                let report = json!({
                    "minimum": inf.minimum,
                    "singleton": inf.singleton,
                    "minimizer": inf.minimizer.labels(),
                    "partitions_checked": inf.partitions_checked,
                    "difference": diff,
                    "passed": passed,
                });
                (report, passed)
            } else {
                (Value::Null, true)
            };
            let json = json!({
                "check": "mu-norm-formula-vs-partition-infimum",
                "space": "finite",
                "J": n,
                "mu_norm": formula,
                "mu_norm_sq": formula_sq,
                "guard": guard,
                "tolerance": tol,
                "infimum": infimum,
                "passed": passed,
            });
            Ok(Report {
                json,
                header: vec!["quantity", "value"],
                rows,
                passed,
                default_format: Format::Json,
            })
        }
        Operator::Torus(w) => {
            let grid = cfg.grid.unwrap_or(CIRCLE_GRID);
            let len = longest_interval(cfg)?;
            let table = table_for(&w, 0, cfg)?;
            let mu = mu_norm_regular(&table)?;
            let (source, interval_len) = source_fields(table.overall_source());
            let estimate = mu_norm_integral_estimate(&w, grid, &interval(len)?)?;
            let json = json!({
                "check": "mu-norm-from-omega00",
                "space": "torus",
                "mu_norm": mu,
                "mu_norm_sq": mu * mu,
                "source": source,
                "interval_len": interval_len,
                "integral_estimate": {"value": estimate, "interval_len": len, "grid": grid},
                "passed": true,
            });
            let rows = vec![
                vec!["mu_norm".into(), num(mu)],
                vec!["mu_norm_sq".into(), num(mu * mu)],
                vec!["source".into(), source.into()],
                vec!["integral_estimate".into(), num(estimate)],
            ];
            Ok(Report {
                json,
                header: vec!["quantity", "value"],
                rows,
                passed: true,
                default_format: Format::Json,
            })
        }
    }
}

pub fn cmd_entropy(cfg: &RunConfig) -> CliResult<Report> {
    reject_emit(cfg, &[])?;
    let parsed = load_operator(cfg)?;
    let Operator::Finite(u) = parsed.operator else {
        return Err(CliError::input("entropy stages need a finite operator"));
    };
    let n = u.size();
    let labels = match &cfg.partition {
        Some(l) if l.len() != n => {
            return Err(CliError::input(format!(
                "--partition has {} labels for J = {n}",
                l.len()
            )));
        }
        Some(l) => l.clone(),
        None => (0..n).map(|x| 2 * x / n).collect(),
    };
    let chi = Partition::from_labels(&labels)?;
    let tol = cfg.tol.unwrap_or(STAGE_TOL);
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut passed = true;
    for stage in 1..=cfg.n_max {
        let quantum = quantum_entropy_stage(&u, &chi, stage - 1)?;
        let ks = parsed
            .permutation
            .as_ref()
            .map(|f| ks_entropy_stage(f, &chi, stage - 1))
            .transpose()?;
        let ratio = quantum / stage as f64;
        if let Some(k) = ks {
            passed &= (k - quantum).abs() <= tol;
        }
        rows.push(vec![
            stage.to_string(),
            opt_num(ks),
            num(quantum),
            num(ratio),
        ]);
        json_rows
            .push(json!({"n": stage, "ks_stage": ks, "quantum_stage": quantum, "ratio": ratio}));
    }
    let json = json!({
        "check": "koopman-entropy-stages",
        "J": n,
        "partition": labels,
        "koopman": parsed.permutation.is_some(),
        "tolerance": tol,
        "rows": json_rows,
        "passed": passed,
    });
    Ok(Report {
        json,
        header: vec!["n", "ks_stage", "quantum_stage", "ratio"],
        rows,
        passed,
        default_format: Format::Csv,
    })
}

pub fn cmd_omega(cfg: &RunConfig) -> CliResult<Report> {
    reject_emit(cfg, &[Emit::Table, Emit::Convergence, Emit::Kernel])?;
    let parsed = load_operator(cfg)?;
    let Operator::Torus(w) = parsed.operator else {
        return Err(CliError::input("omega tables need a torus operator"));
    };
    let radius = cfg.radius.unwrap_or(OMEGA_RADIUS);
    match cfg.emit.unwrap_or(Emit::Table) {
        Emit::Convergence => omega_convergence(&w, radius, cfg),
        Emit::Kernel => omega_kernel(&w, radius, cfg),
        _ => omega_table(&w, radius, cfg),
    }
}

fn omega_table(w: &LatticeOperator, radius: usize, cfg: &RunConfig) -> CliResult<Report> {
    let table = table_for(w, radius, cfg)?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (m, n, v, source) in table.entries() {
        let (name, len) = source_fields(source);
        rows.push(vec![
            m.to_string(),
            n.to_string(),
            num(v.re),
            num(v.im),
            name.into(),
            len.map(|l| l.to_string()).unwrap_or_default(),
        ]);
        entries.push(json!([m, n, v.re, v.im]));
    }
    let (source, interval_len) = source_fields(table.overall_source());
    let json = json!({
        "check": "omega-table",
        "radius": radius,
        "source": source,
        "interval_len": interval_len,
        "dt_norm_sq": w.dt_norm().powi(2),
        "hermitian_defect": table.hermitian_defect(),
        "max_line_l1": table.max_line_l1(),
        "entries": entries,
        "passed": true,
    });
    Ok(Report {
        json,
        header: vec!["m", "n", "re", "im", "source", "interval_len"],
        rows,
        passed: true,
        default_format: Format::Csv,
    })
}

/// Bound on `|ω_I − ω|` for one window: the periodic bound when the period
/// is known and shorter than the window, `2c̄²/#I` for diagonal kinds.
fn window_bound(w: &LatticeOperator, periodic: Option<f64>, len: usize) -> Option<f64> {
    let cbar = w.dt_norm();
    periodic.or(match w.kind() {
        OperatorKind::Convolution | OperatorKind::Multiplication => {
            Some(2.0 * cbar * cbar / len as f64)
        }
        _ => None,
    })
}

fn omega_convergence(w: &LatticeOperator, radius: usize, cfg: &RunConfig) -> CliResult<Report> {
    let r = radius as i64;
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut passed = true;
    for m in -r..=r {
        for n in -r..=r {
            for row in omega_convergence_report(w, m, n, &cfg.intervals, 0)? {
                let bound = window_bound(w, row.periodic_bound, row.interval_len);
                let within = bound.map(|b| row.error <= b);
                passed &= within.unwrap_or(true);
                rows.push(vec![
                    m.to_string(),
                    n.to_string(),
                    row.interval_len.to_string(),
                    num(row.estimate.re),
                    num(row.estimate.im),
                    num(row.exact.re),
                    num(row.exact.im),
                    num(row.error),
                    opt_num(bound),
                    within.map(|b| b.to_string()).unwrap_or_default(),
                ]);
                json_rows.push(json!({
                    "m": m,
                    "n": n,
                    "interval_len": row.interval_len,
                    "estimate": complex(row.estimate),
                    "exact": complex(row.exact),
                    "error": row.error,
                    "bound": bound,
                    "within": within,
                }));
            }
        }
    }
    let json = json!({
        "check": "omega-window-convergence",
        "radius": radius,
        "intervals": cfg.intervals,
        "dt_norm": w.dt_norm(),
        "period": w.period(),
        "rows": json_rows,
        "passed": passed,
    });
    Ok(Report {
        json,
        header: vec![
            "m",
            "n",
            "interval_len",
            "re",
            "im",
            "exact_re",
            "exact_im",
            "error",
            "bound",
            "within",
        ],
        rows,
        passed,
        default_format: Format::Csv,
    })
}

fn omega_kernel(w: &LatticeOperator, radius: usize, cfg: &RunConfig) -> CliResult<Report> {
    let table = table_for(w, radius, cfg)?;
    let order = fejer_order(&table)?;
    let grid = cfg.grid.unwrap_or(KERNEL_GRID);
    let tol = cfg.tol.unwrap_or(FEJER_TOL);
    let mut rows = Vec::with_capacity(grid * grid);
    let mut values = Vec::with_capacity(grid * grid);
    let mut min_value = f64::INFINITY;
    for i in 0..grid {
        let x = TAU * i as f64 / grid as f64;
        for j in 0..grid {
            let a = TAU * j as f64 / grid as f64;
            let v = fejer_nu(&table, x, a)?;
            min_value = min_value.min(v.re);
            rows.push(vec![num(x), num(a), num(v.re), num(v.im)]);
            values.push(json!([x, a, v.re, v.im]));
        }
    }
    let passed = min_value >= -tol;
    let json = json!({
        "check": "fejer-kernel-nonnegativity",
        "radius": radius,
        "fejer_order": order,
        "grid": grid,
        "min_value": min_value,
        "tolerance": tol,
        "values": values,
        "passed": passed,
    });
    Ok(Report {
        json,
        header: vec!["x", "a", "re", "im"],
        rows,
        passed,
        default_format: Format::Csv,
    })
}

fn outcome_json(outcome: CheckOutcome, threshold: f64) -> (Value, bool) {
    match outcome {
        CheckOutcome::Residual(r) => {
            let passed = r <= threshold;
            (
                json!({"status": "checked", "residual": r, "threshold": threshold, "passed": passed}),
                passed,
            )
        }
        CheckOutcome::Skipped => (
            json!({"status": "skipped", "notice": "source operator is not unitary, so this condition is not expected"}),
            true,
        ),
    }
}

fn worst(a: CheckOutcome, b: CheckOutcome) -> CheckOutcome {
    match (a, b) {
        (CheckOutcome::Residual(x), CheckOutcome::Residual(y)) => CheckOutcome::Residual(x.max(y)),
        (CheckOutcome::Skipped, o) | (o, CheckOutcome::Skipped) => o,
    }
}

fn kernel_export(kernel: &BistochasticKernel) -> Report {
    let mode = match kernel.mode() {
        KernelMode::Finite { .. } => "finite",
        KernelMode::Torus { .. } => "torus",
    };
    let entries = kernel.omega_entries();
    let json = json!({
        "mode": mode,
        "omega": entries.iter().map(|(m, n, v)| json!([m, n, v.re, v.im])).collect::<Vec<_>>(),
    });
    let rows = entries
        .iter()
        .map(|(m, n, v)| vec![m.to_string(), n.to_string(), num(v.re), num(v.im)])
        .collect();
    Report {
        json,
        header: vec!["m", "n", "re", "im"],
        rows,
        passed: true,
        default_format: Format::Json,
    }
}

pub fn cmd_bistochastic(cfg: &RunConfig) -> CliResult<Report> {
    reject_emit(cfg, &[Emit::Kernel, Emit::Report])?;
    let parsed = load_operator(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let grid = cfg.grid.unwrap_or(CIRCLE_GRID);
    let (kernel, mode, nonneg, mass) = match &parsed.operator {
        Operator::Finite(w) => {
            let kernel = build_finite(w);
            let trials: Vec<Vec<Complex64>> = (0..BISTOCHASTIC_TRIALS)
                .map(|_| random_vector(&mut rng, w.size()))
                .collect();
            let nonneg = kernel.check_nonnegativity(&trials)?;
            let mut mass = CheckOutcome::Skipped;
            for g in &trials {
                let f = abs_sq_coefficients(g);
                mass = worst(mass, kernel.check_mass(&f)?);
            }
            (
                kernel,
                json!({"mode": "finite", "J": w.size()}),
                nonneg,
                mass,
            )
        }
        Operator::Torus(w) => {
            let radius = cfg.radius.unwrap_or(KERNEL_RADIUS);
            let kernel = build_torus(w, radius)?;
            let sum_band = kernel.table().map_or(0, OmegaTable::sum_band);
            let degree = (radius.saturating_sub(sum_band) / 2).min(3);
            let trials: Vec<_> = (0..BISTOCHASTIC_TRIALS)
                .map(|_| random_trig_poly(&mut rng, degree))
                .collect();
            let nonneg = kernel.check_nonnegativity_torus(&trials, grid)?;
            let mut mass = CheckOutcome::Skipped;
            for g in &trials {
                mass = worst(mass, kernel.check_mass_poly(&g.abs_sq())?);
            }
            (
                kernel,
                json!({"mode": "torus", "radius": radius, "trial_degree": degree}),
                nonneg,
                mass,
            )
        }
    };
    if cfg.emit == Some(Emit::Kernel) {
        return Ok(kernel_export(&kernel));
    }
    let nonneg_tol = cfg.tol.unwrap_or(NONNEG_TOL);
    let unit_tol = cfg.tol.unwrap_or(UNIT_TOL);
    let l1_tol = cfg.tol.unwrap_or(L1_TOL);
    let nonneg_passed = nonneg.min_value >= -nonneg_tol;
    let (unit_json, unit_passed) = outcome_json(kernel.check_unit(), unit_tol);
    let (mass_json, mass_passed) = outcome_json(mass, unit_tol);
    let l1 = kernel.l1_bound(grid);
    let l1_passed = l1.slack >= -l1_tol;
    let orientation = parsed.permutation.as_ref().map(|f| {
        let rep = koopman_case_compare(f);
        let tol = cfg.tol.unwrap_or(UNIT_TOL);
        let matches = match (rep.forward_matches(tol), rep.inverse_matches(tol)) {
            (true, true) => "both",
            (true, false) => "forward",
            (false, true) => "inverse",
            (false, false) => "neither",
        };
        json!({
            "forward_residual": rep.forward_residual,
            "inverse_residual": rep.inverse_residual,
            "matches": matches,
        })
    });
    let passed = nonneg_passed && unit_passed && mass_passed && l1_passed;
    let rows = vec![
        vec![
            "nonnegativity".into(),
            num(nonneg.min_value),
            num(-nonneg_tol),
            nonneg_passed.to_string(),
        ],
        vec![
            "unit".into(),
            opt_num(kernel.check_unit().residual()),
            num(unit_tol),
            unit_passed.to_string(),
        ],
        vec![
            "mass".into(),
            opt_num(mass.residual()),
            num(unit_tol),
            mass_passed.to_string(),
        ],
        vec![
            "l1_slack".into(),
            num(l1.slack),
            num(-l1_tol),
            l1_passed.to_string(),
        ],
    ];
    let json = json!({
        "check": "bistochastic-conditions",
        "kernel": mode,
        "seed": cfg.seed,
        "unitary_source": kernel.unitary_source(),
        "nonnegativity": {
            "trials": nonneg.trials,
            "min_value": nonneg.min_value,
            "max_imag": nonneg.max_imag,
            "threshold": -nonneg_tol,
            "passed": nonneg_passed,
        },
        "unit": unit_json,
        "mass": mass_json,
        "l1_bound": {
            "induced": l1.induced,
            "marginal_dt": l1.marginal_dt,
            "bound": l1.bound,
            "slack": l1.slack,
            "passed": l1_passed,
        },
        "orientation": orientation,
        "passed": passed,
    });
    Ok(Report {
        json,
        header: vec!["condition", "value", "threshold", "passed"],
        rows,
        passed,
        default_format: Format::Json,
    })
}

pub fn cmd_suite(cfg: &RunConfig) -> CliResult<Report> {
    reject_emit(cfg, &[])?;
    let report = run_suite(&SuiteConfig {
        seed: cfg.seed,
        tol: cfg.tol,
        jobs: cfg.jobs,
    })?;
    let rows = report
        .criteria
        .iter()
        .flat_map(|c| {
            c.checks.iter().map(move |k| {
                vec![
                    c.id.to_string(),
                    c.name.to_string(),
                    k.name.to_string(),
                    k.passed().to_string(),
                    opt_num(k.tolerance),
                    k.cases.to_string(),
                    k.violations.to_string(),
                    num(k.worst_excess),
                ]
            })
        })
        .collect();
    Ok(Report {
        json: serde_json::to_value(&report)?,
        header: vec![
            "id",
            "criterion",
            "check",
            "passed",
            "tolerance",
            "cases",
            "violations",
            "worst_excess",
        ],
        rows,
        passed: report.passed,
        default_format: Format::Json,
    })
}
