use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use exfgm::oracle::{
    boundary_check, density_min_scan, falsify_published_ranges, rho_numeric, tau_numeric,
    volume_check, FalsificationReport, GridReport, QuadratureResult,
};
use exfgm::region::{self, RegionSweep};
use exfgm::sampler::{self, empirical_rho, empirical_tau};
use exfgm::{
    corrected_range, is_admissible, measures as closed_measures, published_range, AdmissibleRange,
    CopulaParams, PublishedVariant, RangeKind,
};

use crate::output::{
    create_file, human, interval, machine, print_json, write_csv, CliError, CliResult, ExitCode,
    OutputFormat,
};

fn shape(b: f64) -> Result<f64, CliError> {
    if (0.0..=2.0).contains(&b) {
        Ok(b)
    } else {
        Err(CliError::input(format!("b = {b} is outside [0, 2]")))
    }
}

fn params(a: f64, b: f64) -> Result<CopulaParams, CliError> {
    Ok(CopulaParams::new(a, shape(b)?)?)
}

fn stdout_csv(header: &str, rows: &[Vec<String>]) -> Result<(), CliError> {
    write_csv(io::stdout().lock(), header, rows).map_err(|e| CliError::io("stdout", e))
}

#[derive(Serialize)]
struct RangeOut {
    lower: f64,
    upper: f64,
    kind: RangeKind,
    empty: bool,
    valid: bool,
    b: f64,
}

pub fn range(fmt: OutputFormat, b: f64, ebaid_min: bool, ebaid_online: bool) -> CliResult {
    let b = shape(b)?;
    let variant = match (ebaid_min, ebaid_online) {
        (true, _) => Some(PublishedVariant::MinForm),
        (_, true) => Some(PublishedVariant::OnlineForm),
        _ => None,
    };
    let r: AdmissibleRange = match variant {
        Some(v) => published_range(b, v)?,
        None => corrected_range(b)?,
    };
    let valid = r.kind.is_valid();
    match fmt {
        OutputFormat::Text => {
            if !valid {
                println!("WARNING: {} range is NOT a valid copula range", r.kind);
            }
            println!("{}", interval(r.lower, r.upper));
            if r.empty {
                println!(
                    "WARNING: empty range (lower {} > upper {})",
                    human(r.lower),
                    human(r.upper)
                );
            }
        }
        OutputFormat::Json => print_json(&RangeOut {
            lower: r.lower,
            upper: r.upper,
            kind: r.kind,
            empty: r.empty,
            valid,
            b,
        })?,
        OutputFormat::Csv => stdout_csv(
            "b,lower,upper,kind,empty,valid",
            &[vec![
                machine(b),
                machine(r.lower),
                machine(r.upper),
                r.kind.to_string(),
                r.empty.to_string(),
                valid.to_string(),
            ]],
        )?,
    }
    Ok(ExitCode::Success)
}

#[derive(Serialize)]
struct ValidateOut {
    a: f64,
    b: f64,
    admissible: bool,
    lower: f64,
    upper: f64,
}

pub fn validate(fmt: OutputFormat, a: f64, b: f64) -> CliResult {
    let p = params(a, b)?;
    let r = corrected_range(p.b())?;
    let admissible = is_admissible(&p);
    match fmt {
        OutputFormat::Text => {
            if admissible {
                println!("ADMISSIBLE");
            } else {
                println!(
                    "NOT ADMISSIBLE (corrected range {})",
                    interval(r.lower, r.upper)
                );
            }
        }
        OutputFormat::Json => print_json(&ValidateOut {
            a,
            b,
            admissible,
            lower: r.lower,
            upper: r.upper,
        })?,
        OutputFormat::Csv => stdout_csv(
            "a,b,admissible,lower,upper",
            &[vec![
                machine(a),
                machine(b),
                admissible.to_string(),
                machine(r.lower),
                machine(r.upper),
            ]],
        )?,
    }
    Ok(if admissible {
        ExitCode::Success
    } else {
        ExitCode::NotValid
    })
}

#[derive(Serialize)]
struct NumericOut {
    rho: QuadratureResult,
    tau: QuadratureResult,
    rho_abs_diff: f64,
    tau_abs_diff: f64,
}

#[derive(Serialize)]
struct MeasuresOut {
    a: f64,
    b: f64,
    admissible: bool,
    formal: bool,
    rho: f64,
    tau: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric: Option<NumericOut>,
}

pub fn measures(fmt: OutputFormat, a: f64, b: f64, nodes: Option<usize>) -> CliResult {
    let p = params(a, b)?;
    let admissible = is_admissible(&p);
    let m = closed_measures(&p);
    let numeric = match nodes {
        Some(n) => {
            let rho = rho_numeric(&p, n)?;
            let tau = tau_numeric(&p, n)?;
            Some(NumericOut {
                rho_abs_diff: (rho.value - m.rho).abs(),
                tau_abs_diff: (tau.value - m.tau).abs(),
                rho,
                tau,
            })
        }
        None => None,
    };
    match fmt {
        OutputFormat::Text => {
            if !admissible {
                let r = corrected_range(p.b())?;
                println!(
                    "WARNING: (a, b) = ({}, {}) is not admissible (corrected range {}); values are formal",
                    human(a),
                    human(b),
                    interval(r.lower, r.upper)
                );
            }
            let label = if admissible { "" } else { "formal " };
            println!("{label}rho={} tau={}", human(m.rho), human(m.tau));
            if let Some(n) = &numeric {
                println!(
                    "quadrature ({} nodes): rho={} |diff|={} tau={} |diff|={}",
                    n.rho.nodes_per_axis,
                    human(n.rho.value),
                    human(n.rho_abs_diff),
                    human(n.tau.value),
                    human(n.tau_abs_diff)
                );
            }
        }
        OutputFormat::Json => print_json(&MeasuresOut {
            a,
            b,
            admissible,
            formal: !admissible,
            rho: m.rho,
            tau: m.tau,
            numeric,
        })?,
        OutputFormat::Csv => {
            let mut header = "a,b,admissible,rho,tau".to_string();
            let mut row = vec![
                machine(a),
                machine(b),
                admissible.to_string(),
                machine(m.rho),
                machine(m.tau),
            ];
            if let Some(n) = &numeric {
                header.push_str(",rho_numeric,tau_numeric,rho_abs_diff,tau_abs_diff");
                row.extend([
                    machine(n.rho.value),
                    machine(n.tau.value),
                    machine(n.rho_abs_diff),
                    machine(n.tau_abs_diff),
                ]);
            }
            stdout_csv(&header, &[row])?;
        }
    }
    Ok(ExitCode::Success)
}

#[derive(Serialize)]
struct CheckOut {
    a: f64,
    b: f64,
    passed: bool,
    reports: Vec<GridReport>,
}

pub fn check(fmt: OutputFormat, a: f64, b: f64, grid: usize) -> CliResult {
    let p = params(a, b)?;
    let reports = vec![
        boundary_check(&p, grid)?,
        density_min_scan(&p, grid)?,
        volume_check(&p, grid)?,
    ];
    let passed = reports.iter().all(|r| r.passed);
    match fmt {
        OutputFormat::Text => {
            for r in &reports {
                println!(
                    "{:<13} {} worst_value={} at ({}, {}) grid_n={}",
                    r.check_kind.to_string(),
                    if r.passed { "PASS" } else { "FAIL" },
                    human(r.worst_value),
                    human(r.worst_u),
                    human(r.worst_v),
                    r.grid_n
                );
            }
            println!(
                "{}",
                if passed {
                    "ALL CHECKS PASSED"
                } else {
                    "CHECK FAILED"
                }
            );
        }
        OutputFormat::Json => print_json(&CheckOut {
            a,
            b,
            passed,
            reports,
        })?,
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.passed.to_string(),
                        machine(r.worst_value),
                        machine(r.worst_u),
                        machine(r.worst_v),
                        r.grid_n.to_string(),
                        r.check_kind.to_string(),
                    ]
                })
                .collect();
            stdout_csv(
                "passed,worst_value,worst_u,worst_v,grid_n,check_kind",
                &rows,
            )?;
        }
    }
    Ok(if passed {
        ExitCode::Success
    } else {
        ExitCode::NotValid
    })
}

#[derive(Serialize)]
struct SampleOut<'a> {
    a: f64,
    b: f64,
    count: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
    empirical_rho: Option<f64>,
    empirical_tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairs: Option<&'a [exfgm::UnitPoint]>,
}

pub fn sample(
    fmt: OutputFormat,
    a: f64,
    b: f64,
    count: usize,
    seed: u64,
    out: Option<&Path>,
) -> CliResult {
    let p = params(a, b)?;
    if count == 0 {
        return Err(CliError::input("sample count must be at least 1"));
    }
    let batch = sampler::sample(&p, count, seed)?;
    let rho = empirical_rho(&batch).ok();
    let tau = empirical_tau(&batch).ok();

    if let Some(path) = out {
        let file = create_file(path)?;
        batch
            .write_csv(file)
            .map_err(|e| CliError::io(&format!("cannot write {}", path.display()), e))?;
    }

    let opt = |x: Option<f64>| x.map_or_else(|| "n/a".to_string(), human);
    let summary = format!(
        "empirical rho={} tau={} (n={count}, seed={seed})",
        opt(rho),
        opt(tau)
    );
    match (fmt, out) {
        (OutputFormat::Json, _) => print_json(&SampleOut {
            a,
            b,
            count,
            seed,
            out: out.map(|p| p.display().to_string()),
            empirical_rho: rho,
            empirical_tau: tau,
            pairs: out.is_none().then_some(batch.pairs.as_slice()),
        })?,
        (_, Some(_)) => println!("{summary}"),
        (_, None) => {
            batch
                .write_csv(io::stdout().lock())
                .map_err(|e| CliError::io("stdout", e))?;
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::Success)
}

fn region_rows(sweep: &RegionSweep) -> Vec<Vec<String>> {
    sweep
        .rows
        .iter()
        .map(|r| {
            [
                r.b, r.a_lower, r.a_upper, r.rho_min, r.rho_max, r.tau_min, r.tau_max,
            ]
            .into_iter()
            .map(machine)
            .collect()
        })
        .collect()
}

fn region_summary(sweep: &RegionSweep) -> String {
    let s = &sweep.summary;
    format!(
        "rho in [{}, {}] (min at a={}, b={}; max at a={}, b={}); tau in [{}, {}]",
        human(s.rho_min.value),
        human(s.rho_max.value),
        human(s.rho_min.a),
        human(s.rho_min.b),
        human(s.rho_max.a),
        human(s.rho_max.b),
        human(s.tau_min.value),
        human(s.tau_max.value),
    )
}

pub fn region(fmt: OutputFormat, steps: usize, out: Option<&Path>) -> CliResult {
    let sweep = region::sweep(steps)?;
    let rows = region_rows(&sweep);
    if let Some(path) = out {
        let file = create_file(path)?;
        write_csv(file, region::CSV_HEADER, &rows)
            .map_err(|e| CliError::io(&format!("cannot write {}", path.display()), e))?;
    }
    match (fmt, out) {
        (OutputFormat::Json, Some(_)) => print_json(&sweep.summary)?,
        (OutputFormat::Json, None) => print_json(&sweep)?,
        (_, Some(_)) => println!("{}", region_summary(&sweep)),
        (_, None) => {
            stdout_csv(region::CSV_HEADER, &rows)?;
            eprintln!("{}", region_summary(&sweep));
        }
    }
    Ok(ExitCode::Success)
}

fn verdict(confirmed: bool) -> &'static str {
    if confirmed {
        "CONFIRMED"
    } else {
        "NOT CONFIRMED"
    }
}

fn print_falsification(r: &FalsificationReport) -> io::Result<()> {
    let mut out = io::stdout().lock();
    let e = &r.empty_range;
    writeln!(
        out,
        "[1] published range -1 <= a <= min{{1/(1-b), 2}} at b = {}",
        human(e.b)
    )?;
    writeln!(
        out,
        "    published: {}{}",
        interval(e.published.lower, e.published.upper),
        if e.published.empty { " (EMPTY)" } else { "" }
    )?;
    writeln!(
        out,
        "    corrected: {}",
        interval(e.corrected.lower, e.corrected.upper)
    )?;
    writeln!(out, "    {}", verdict(e.confirmed))?;

    let x = &r.rho_excess;
    writeln!(
        out,
        "[2] published range -1 <= a <= 1/(1-b) at b = {} admits a = {}",
        human(x.b),
        human(x.a)
    )?;
    writeln!(
        out,
        "    published: {} admits a: {}",
        interval(x.published.lower, x.published.upper),
        x.admitted_by_published
    )?;
    writeln!(
        out,
        "    corrected: {} admits a: {}",
        interval(x.corrected.lower, x.corrected.upper),
        x.admitted_by_corrected
    )?;
    writeln!(
        out,
        "    formal rho = {} (quadrature {}) > 1",
        human(x.rho_formal),
        human(x.rho_quadrature)
    )?;
    writeln!(
        out,
        "    density at (0, 0) = {}; at ({}, 0) = {} with alpha = {}",
        human(x.density_at_origin),
        human(x.arg_alpha),
        human(x.density_at_arg_alpha),
        human(x.alpha)
    )?;
    writeln!(
        out,
        "    density scan (grid {}): worst {} at ({}, {}) {}",
        x.density_scan.grid_n,
        human(x.density_scan.worst_value),
        human(x.density_scan.worst_u),
        human(x.density_scan.worst_v),
        if x.density_scan.passed {
            "PASS"
        } else {
            "FAIL"
        }
    )?;
    writeln!(out, "    {}", verdict(x.confirmed))?;
    writeln!(
        out,
        "{}",
        if r.confirmed {
            "BOTH FALSIFICATIONS CONFIRMED"
        } else {
            "FALSIFICATION NOT CONFIRMED"
        }
    )
}

pub fn falsify(fmt: OutputFormat) -> CliResult {
    let report = falsify_published_ranges()?;
    match fmt {
        OutputFormat::Text => {
            print_falsification(&report).map_err(|e| CliError::io("stdout", e))?
        }
        OutputFormat::Json => print_json(&report)?,
        OutputFormat::Csv => {
            let e = &report.empty_range;
            let x = &report.rho_excess;
            stdout_csv(
                "case,confirmed,a,b,published_lower,published_upper,corrected_lower,corrected_upper,rho_formal,density_min",
                &[
                    vec![
                        "empty_range".into(),
                        e.confirmed.to_string(),
                        String::new(),
                        machine(e.b),
                        machine(e.published.lower),
                        machine(e.published.upper),
                        machine(e.corrected.lower),
                        machine(e.corrected.upper),
                        String::new(),
                        String::new(),
                    ],
                    vec![
                        "rho_excess".into(),
                        x.confirmed.to_string(),
                        machine(x.a),
                        machine(x.b),
                        machine(x.published.lower),
                        machine(x.published.upper),
                        machine(x.corrected.lower),
                        machine(x.corrected.upper),
                        machine(x.rho_formal),
                        machine(x.density_scan.worst_value),
                    ],
                ],
            )?;
        }
    }
    Ok(if report.confirmed {
        ExitCode::Success
    } else {
        ExitCode::NotConfirmed
    })
}
