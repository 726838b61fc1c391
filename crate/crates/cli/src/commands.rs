//! Implementations of the four subcommands.

use std::f64::consts::PI;
use std::io::Write;

use gadsim_core::{
    analytic_rows, apply_channel, beta_out, inverse_temperature, kraus_gad, pipeline,
    run_experiment, thermal_state, trace_distance, verify_cptp, xi_from_angles, BathAngles,
    DensityMatrix, GadParams, Mat2, Populations, RngStream, SweepRow, ThermalSpec,
};
use serde_json::json;

use crate::args::{ApplyArgs, OutputFormat, SweepArgs, VerifyArgs};
use crate::config::RunConfig;
use crate::output::{json_float, state_from_json, write_csv, write_json};
use crate::CliError;

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

/// `--state` accepts the pure tokens, a thermal token, or a JSON file path.
fn resolve_state(token: &str, eps: f64) -> Result<DensityMatrix, CliError> {
    match token {
        "H" => Ok(DensityMatrix::pure_h()),
        "V" => Ok(DensityMatrix::pure_v()),
        _ => {
            if let Some(beta_text) = token.strip_prefix("mixed:") {
                let beta: f64 = beta_text
                    .parse()
                    .map_err(|_| CliError::Usage(format!("invalid beta in state `{token}`")))?;
                let spec = ThermalSpec::new(beta, eps).map_err(usage)?;
                Ok(thermal_state(&spec))
            } else {
                let text = std::fs::read_to_string(token).map_err(|e| {
                    CliError::Usage(format!("cannot read state file `{token}`: {e}"))
                })?;
                state_from_json(&text)
                    .map_err(|e| CliError::Usage(format!("invalid state in `{token}`: {e}")))
            }
        }
    }
}

pub fn cmd_apply<W: Write>(args: &ApplyArgs, out: &mut W) -> Result<(), CliError> {
    if !args.eps.is_finite() || args.eps <= 0.0 {
        return Err(CliError::Usage("eps must be finite and positive".into()));
    }
    let rho = resolve_state(&args.state, args.eps)?;
    let params = GadParams::new(args.xi, args.p).map_err(usage)?;
    let output = apply_channel(&kraus_gad(&params), &rho).map_err(usage)?;

    let pops = Populations::from_state(&output);
    let beta = inverse_temperature(&pops, args.eps).map_err(usage)?;
    let report = json!({
        "state": serde_json::to_value(output).expect("state serializes"),
        "p_h": json_float(pops.p_h()),
        "p_v": json_float(pops.p_v()),
        "beta": json_float(beta),
    });
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&report).expect("json renders")
    )
    .map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

/// Re-derive every analytic temperature from its angles before anything is
/// written; a mismatch would mean rows were assembled incorrectly.
fn self_check_rows(rows: &[SweepRow], eps: f64) -> Result<(), CliError> {
    for row in rows {
        let angles = BathAngles::with_eps(row.theta, row.phi, eps).map_err(usage)?;
        let expected = beta_out(&angles);
        let ok = if expected.is_finite() {
            (row.beta_out_analytic - expected).abs() <= 1e-12
        } else {
            row.beta_out_analytic == expected
        };
        if !ok {
            return Err(CliError::Verification(format!(
                "self-check failed at theta={} phi={}: emitted {} but recomputed {}",
                row.theta, row.phi, row.beta_out_analytic, expected
            )));
        }
    }
    Ok(())
}

fn write_rows(rows: &[SweepRow], cfg: &RunConfig) -> Result<(), CliError> {
    let mut buffer = Vec::new();
    match cfg.format {
        OutputFormat::Csv => write_csv(rows, &mut buffer),
        OutputFormat::Json => write_json(rows, &mut buffer),
    }
    .map_err(|e| CliError::Io(e.to_string()))?;

    match &cfg.out {
        Some(path) => std::fs::write(path, &buffer)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(&buffer)
                .and_then(|_| lock.flush())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(args)?;
    let inputs = cfg.sweep_inputs()?;
    let rows = analytic_rows(&inputs, &cfg.phis, &cfg.thetas(), cfg.eps).map_err(usage)?;
    self_check_rows(&rows, cfg.eps)?;
    write_rows(&rows, &cfg)
}

pub fn cmd_simulate(args: &SweepArgs) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(args)?;
    let inputs = cfg.sweep_inputs()?;
    let rows = run_experiment(
        &inputs,
        &cfg.phis,
        &cfg.thetas(),
        cfg.n_per_point,
        cfg.eps,
        &RngStream::new(cfg.seed),
    )
    .map_err(usage)?;
    self_check_rows(&rows, cfg.eps)?;
    write_rows(&rows, &cfg)
}

fn default_unit_grid() -> Vec<f64> {
    (0..=10).map(|k| k as f64 / 10.0).collect()
}

/// States exercised by the equivalence check, including coherent ones.
fn probe_states() -> Vec<DensityMatrix> {
    use gadsim_core::Complex64 as C64;
    let coherent = DensityMatrix::new(Mat2::new([
        [C64::new(0.7, 0.0), C64::new(0.1, -0.2)],
        [C64::new(0.1, 0.2), C64::new(0.3, 0.0)],
    ]))
    .expect("probe state is valid");
    let diagonal_plus = DensityMatrix::new(Mat2::from_real([[0.5, 0.5], [0.5, 0.5]]))
        .expect("probe state is valid");
    vec![
        DensityMatrix::pure_h(),
        DensityMatrix::pure_v(),
        DensityMatrix::maximally_mixed(),
        coherent,
        diagonal_plus,
    ]
}

pub fn cmd_verify<W: Write>(args: &VerifyArgs, out: &mut W) -> Result<(), CliError> {
    let xi_grid = args.xi.clone().unwrap_or_else(default_unit_grid);
    let p_grid = args.p.clone().unwrap_or_else(default_unit_grid);
    for v in xi_grid.iter().chain(&p_grid) {
        if !v.is_finite() || !(0.0..=1.0).contains(v) {
            return Err(CliError::Usage(format!("grid value {v} outside [0, 1]")));
        }
    }
    if let Some(perturb) = args.perturb {
        if !perturb.is_finite() {
            return Err(CliError::Usage("perturbation must be finite".into()));
        }
    }

    let mut io_err = |e: std::io::Error| CliError::Io(e.to_string());
    let mut failures = 0usize;

    for &xi in &xi_grid {
        for &p in &p_grid {
            let params = GadParams::new(xi, p).map_err(usage)?;
            let mut ops = *kraus_gad(&params).ops();
            if let Some(perturb) = args.perturb {
                ops[0] = ops[0].scale_re(1.0 + perturb);
            }
            let report = verify_cptp(&ops);
            if !report.pass {
                failures += 1;
            }
            writeln!(
                out,
                "cptp xi={xi:.3} p={p:.3} residual={:.3e} min_choi={:.3e} {}",
                report.completeness_residual,
                report.min_choi_eigenvalue,
                if report.pass { "PASS" } else { "FAIL" }
            )
            .map_err(&mut io_err)?;
        }
    }

    // Interferometer ↔ channel equivalence on the default angle grid.
    let states = probe_states();
    let mut worst = 0.0f64;
    for i in 0..37 {
        for j in 0..37 {
            let angles =
                BathAngles::new(i as f64 * PI / 36.0, j as f64 * PI / 36.0).map_err(usage)?;
            let xi = xi_from_angles(&angles);
            let k = kraus_gad(&GadParams::new(xi, 1.0).map_err(usage)?);
            for rho in &states {
                for pre_dephase in [false, true] {
                    let optical = pipeline(rho, &angles, pre_dephase);
                    let channel = apply_channel(&k, rho).map_err(usage)?;
                    worst = worst.max(optical.mat().max_abs_diff(&channel.mat()));
                    worst = worst.max(trace_distance(&optical, &channel));
                }
            }
        }
    }
    let equivalence_pass = worst <= 1e-12;
    if !equivalence_pass {
        failures += 1;
    }
    writeln!(
        out,
        "equivalence 37x37 angle grid, {} states: max deviation {:.3e} {}",
        states.len(),
        worst,
        if equivalence_pass { "PASS" } else { "FAIL" }
    )
    .map_err(&mut io_err)?;

    if failures > 0 {
        Err(CliError::Verification(format!(
            "{failures} verification check(s) failed"
        )))
    } else {
        Ok(())
    }
}
