//! Resolution of sweep/simulate configuration from defaults, an optional
//! key=value file, and command-line flags (in that order of precedence).

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use gadsim_core::{ExpError, SweepInput};

use crate::args::{OutputFormat, SweepArgs};
use crate::CliError;

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub eps: f64,
    pub theta_start: f64,
    pub theta_stop: f64,
    pub theta_count: usize,
    pub phis: Vec<f64>,
    pub inputs: Vec<String>,
    pub n_per_point: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            eps: 1.0,
            theta_start: 0.0,
            theta_stop: PI,
            theta_count: 37,
            phis: vec![0.0, PI / 8.0, PI / 4.0, 3.0 * PI / 8.0],
            inputs: ["H", "V", "mixed:1", "mixed:0", "mixed:-1"]
                .map(String::from)
                .to_vec(),
            n_per_point: 10_000,
            seed: 0,
            out: None,
            format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    /// Defaults, overridden by the config file (if any), overridden by flags.
    pub fn resolve(args: &SweepArgs) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &args.config {
            cfg.apply_file(path)?;
        }
        cfg.apply_flags(args);
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_flags(&mut self, args: &SweepArgs) {
        if let Some(v) = args.eps {
            self.eps = v;
        }
        if let Some(v) = args.theta_start {
            self.theta_start = v;
        }
        if let Some(v) = args.theta_stop {
            self.theta_stop = v;
        }
        if let Some(v) = args.theta_count {
            self.theta_count = v;
        }
        if let Some(v) = &args.phi {
            self.phis = v.clone();
        }
        if let Some(v) = &args.inputs {
            self.inputs = v.clone();
        }
        if let Some(v) = args.n_per_point {
            self.n_per_point = v;
        }
        if let Some(v) = args.seed {
            self.seed = v;
        }
        if let Some(v) = &args.out {
            self.out = Some(v.clone());
        }
        if let Some(v) = args.format {
            self.format = v;
        }
    }

    fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "{}:{}: expected key=value, got `{line}`",
                    path.display(),
                    lineno + 1
                ))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| {
                CliError::Usage(format!(
                    "{}:{}: invalid {what} `{value}`",
                    path.display(),
                    lineno + 1
                ))
            };
            match key {
                "eps" => self.eps = value.parse().map_err(|_| bad("eps"))?,
                "theta_start" => {
                    self.theta_start = value.parse().map_err(|_| bad("theta_start"))?
                }
                "theta_stop" => self.theta_stop = value.parse().map_err(|_| bad("theta_stop"))?,
                "theta_count" => {
                    self.theta_count = value.parse().map_err(|_| bad("theta_count"))?
                }
                "phi" => {
                    self.phis = value
                        .split(',')
                        .map(|s| s.trim().parse())
                        .collect::<Result<_, _>>()
                        .map_err(|_| bad("phi list"))?;
                }
                "inputs" => {
                    self.inputs = value.split(',').map(|s| s.trim().to_string()).collect();
                }
                "n_per_point" => {
                    self.n_per_point = value.parse().map_err(|_| bad("n_per_point"))?
                }
                "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
                "out" => self.out = Some(PathBuf::from(value)),
                "format" => self.format = value.parse().map_err(CliError::Usage)?,
                other => {
                    return Err(CliError::Usage(format!(
                        "{}:{}: unknown key `{other}`",
                        path.display(),
                        lineno + 1
                    )))
                }
            }
        }
        Ok(())
    }

    fn validate(&self) -> Result<(), CliError> {
        if !self.eps.is_finite() || self.eps <= 0.0 {
            return Err(CliError::Usage(
                "eps must be finite and positive".to_string(),
            ));
        }
        if self.theta_count < 1 {
            return Err(CliError::Usage(
                "theta_count must be at least 1".to_string(),
            ));
        }
        if !self.theta_start.is_finite() || !self.theta_stop.is_finite() {
            return Err(CliError::Usage(
                "theta grid bounds must be finite".to_string(),
            ));
        }
        if self.phis.is_empty() || self.phis.iter().any(|p| !p.is_finite()) {
            return Err(CliError::Usage(
                "phi list must be nonempty and finite".to_string(),
            ));
        }
        if self.inputs.is_empty() {
            return Err(CliError::Usage("input list must be nonempty".to_string()));
        }
        if self.n_per_point < 1 {
            return Err(CliError::Usage(
                "n_per_point must be at least 1".to_string(),
            ));
        }
        Ok(())
    }

    /// The realized theta grid.
    pub fn thetas(&self) -> Vec<f64> {
        if self.theta_count == 1 {
            return vec![self.theta_start];
        }
        let step = (self.theta_stop - self.theta_start) / (self.theta_count - 1) as f64;
        (0..self.theta_count)
            .map(|k| self.theta_start + k as f64 * step)
            .collect()
    }

    /// The input tokens converted to sweep inputs.
    pub fn sweep_inputs(&self) -> Result<Vec<SweepInput>, CliError> {
        self.inputs
            .iter()
            .map(|token| parse_input_token(token, self.eps))
            .collect()
    }
}

/// Parse one input token: `H`, `V`, `mixed:<beta>`, or a pump angle in
/// radians. The token itself becomes the row label.
pub fn parse_input_token(token: &str, eps: f64) -> Result<SweepInput, CliError> {
    let build = |res: Result<SweepInput, ExpError>| {
        res.map_err(|e| CliError::Usage(format!("invalid input `{token}`: {e}")))
    };
    match token {
        "H" => build(SweepInput::from_beta(token, f64::INFINITY, eps)),
        "V" => build(SweepInput::from_beta(token, f64::NEG_INFINITY, eps)),
        _ => {
            if let Some(beta_text) = token.strip_prefix("mixed:") {
                let beta: f64 = beta_text
                    .parse()
                    .map_err(|_| CliError::Usage(format!("invalid beta in input `{token}`")))?;
                build(SweepInput::from_beta(token, beta, eps))
            } else {
                let alpha: f64 = token.parse().map_err(|_| {
                    CliError::Usage(format!(
                        "invalid input `{token}` (expected H, V, mixed:<beta>, or an angle)"
                    ))
                })?;
                build(SweepInput::from_alpha(token, alpha, eps))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn no_flags() -> SweepArgs {
        SweepArgs {
            config: None,
            eps: None,
            theta_start: None,
            theta_stop: None,
            theta_count: None,
            phi: None,
            inputs: None,
            n_per_point: None,
            seed: None,
            out: None,
            format: None,
        }
    }

    #[test]
    fn defaults_cover_the_reference_sweep() {
        let cfg = RunConfig::resolve(&no_flags()).unwrap();
        assert_eq!(cfg.thetas().len(), 37);
        assert_eq!(cfg.thetas()[0], 0.0);
        assert!((cfg.thetas()[36] - PI).abs() < 1e-15);
        assert_eq!(cfg.phis.len(), 4);
        assert_eq!(cfg.inputs.len(), 5);
        assert_eq!(cfg.n_per_point, 10_000);
        assert_eq!(cfg.format, OutputFormat::Csv);
    }

    #[test]
    fn flags_override_file_overrides_defaults() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# comment line").unwrap();
        writeln!(file, "seed = 7").unwrap();
        writeln!(file, "n_per_point = 500").unwrap();
        writeln!(file, "phi = 0.1, 0.2").unwrap();
        writeln!(file, "format = json").unwrap();

        let mut args = no_flags();
        args.config = Some(file.path().to_path_buf());
        args.seed = Some(99);
        let cfg = RunConfig::resolve(&args).unwrap();
        assert_eq!(cfg.seed, 99, "flag wins over file");
        assert_eq!(cfg.n_per_point, 500, "file wins over default");
        assert_eq!(cfg.phis, vec![0.1, 0.2]);
        assert_eq!(cfg.format, OutputFormat::Json);
    }

    #[test]
    fn bad_config_lines_are_rejected() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "bogus_key = 3").unwrap();
        let mut args = no_flags();
        args.config = Some(file.path().to_path_buf());
        assert!(matches!(RunConfig::resolve(&args), Err(CliError::Usage(_))));

        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "no equals sign here").unwrap();
        let mut args = no_flags();
        args.config = Some(file.path().to_path_buf());
        assert!(matches!(RunConfig::resolve(&args), Err(CliError::Usage(_))));
    }

    #[test]
    fn validation_catches_empty_grids() {
        let mut args = no_flags();
        args.theta_count = Some(0);
        assert!(RunConfig::resolve(&args).is_err());

        let mut args = no_flags();
        args.inputs = Some(vec![]);
        assert!(RunConfig::resolve(&args).is_err());

        let mut args = no_flags();
        args.eps = Some(0.0);
        assert!(RunConfig::resolve(&args).is_err());
    }

    #[test]
    fn input_tokens_parse() {
        let h = parse_input_token("H", 1.0).unwrap();
        assert_eq!(h.beta_in, f64::INFINITY);
        let v = parse_input_token("V", 1.0).unwrap();
        assert_eq!(v.beta_in, f64::NEG_INFINITY);
        let m = parse_input_token("mixed:-1.5", 1.0).unwrap();
        assert_eq!(m.beta_in, -1.5);
        assert_eq!(m.id, "mixed:-1.5");
        let a = parse_input_token("0.785398", 1.0).unwrap();
        assert!(a.beta_in.abs() < 1e-5);
        assert!(parse_input_token("mixed:abc", 1.0).is_err());
        assert!(parse_input_token("nonsense", 1.0).is_err());
    }
}
