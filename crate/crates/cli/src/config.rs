//! Effective run configuration: defaults, then the TOML file, then flags.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use heavytail::dist::{InnovationSpec, Support, TailProfile};
use heavytail::{Drift, Model};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DriftArg {
    Down,
    Up,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SideArg {
    Positive,
    Negative,
    TwoSided,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub drift: DriftArg,
    pub gamma: f64,
    pub target_a: f64,
    pub reflect: bool,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            drift: DriftArg::Down,
            gamma: 0.5,
            target_a: 2.0,
            reflect: true,
        }
    }
}

/// For one-sided laws `theta` and `c` describe the single tail; for
/// two-sided laws they describe the right tail and `theta_left`/`c_left` the left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InnovationSection {
    pub side: SideArg,
    pub theta: f64,
    pub c: f64,
    pub theta_left: Option<f64>,
    pub c_left: Option<f64>,
    pub y0: f64,
    pub amplitude: f64,
    pub lattice: bool,
    pub right_body_share: f64,
}

impl Default for InnovationSection {
    fn default() -> Self {
        Self {
            side: SideArg::Positive,
            theta: 0.7,
            c: 0.05,
            theta_left: None,
            c_left: None,
            y0: 1.0,
            amplitude: 0.0,
            lattice: false,
            right_body_share: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub seed: u64,
    pub n: usize,
    pub horizon: u64,
    pub x0: f64,
    /// Trajectory index for `simulate`.
    pub index: u64,
    pub out: Option<PathBuf>,
    /// Lyapunov exponent for `drift-check`; the classifier's recipe when absent.
    pub delta: Option<f64>,
    /// `lo:hi:per_decade` certificate grid for `drift-check`.
    pub grid: String,
    pub gamma_grid: String,
    pub theta_grid: String,
    pub delta_grid: String,
    pub c_grid: String,
    /// Trajectories per cell for the optional phase-sweep campaign; 0 skips it.
    pub sweep_n: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            seed: 0,
            n: 1000,
            horizon: 100_000,
            x0: 100.0,
            index: 0,
            out: None,
            delta: None,
            grid: "100:1000000:64".into(),
            gamma_grid: "0.1:0.9:0.1".into(),
            theta_grid: "0.1:0.9:0.1".into(),
            delta_grid: "0".into(),
            c_grid: "0.05".into(),
            sweep_n: 0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub model: ModelSection,
    pub innovation: InnovationSection,
    pub run: RunSection,
}

/// Flags shared by every subcommand; each one overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    #[arg(long, value_enum)]
    pub drift: Option<DriftArg>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Upper end `a` of the target set `[0, a]`.
    #[arg(long)]
    pub target_a: Option<f64>,
    /// Let the state go negative instead of clipping at 0.
    #[arg(long)]
    pub no_reflect: bool,
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub theta_left: Option<f64>,
    #[arg(long)]
    pub c_left: Option<f64>,
    #[arg(long)]
    pub y0: Option<f64>,
    /// Amplitude of the log-periodic tail modulation.
    #[arg(long)]
    pub amplitude: Option<f64>,
    #[arg(long)]
    pub lattice: bool,
    #[arg(long)]
    pub right_body_share: Option<f64>,
    #[arg(long, env = "HEAVYTAIL_SEED")]
    pub seed: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub horizon: Option<u64>,
    #[arg(long)]
    pub x0: Option<f64>,
    #[arg(long)]
    pub index: Option<u64>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub gamma_grid: Option<String>,
    #[arg(long)]
    pub theta_grid: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta_grid: Option<String>,
    #[arg(long)]
    pub c_grid: Option<String>,
    #[arg(long)]
    pub sweep_n: Option<usize>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn apply(&mut self, o: &Overrides) {
        fn set<T: Clone>(slot: &mut T, v: &Option<T>) {
            if let Some(v) = v {
                *slot = v.clone();
            }
        }
        let (m, i, r) = (&mut self.model, &mut self.innovation, &mut self.run);
        set(&mut m.drift, &o.drift);
        set(&mut m.gamma, &o.gamma);
        set(&mut m.target_a, &o.target_a);
        if o.no_reflect {
            m.reflect = false;
        }
        set(&mut i.side, &o.side);
        set(&mut i.theta, &o.theta);
        set(&mut i.c, &o.c);
        if o.theta_left.is_some() {
            i.theta_left = o.theta_left;
        }
        if o.c_left.is_some() {
            i.c_left = o.c_left;
        }
        set(&mut i.y0, &o.y0);
        set(&mut i.amplitude, &o.amplitude);
        if o.lattice {
            i.lattice = true;
        }
        set(&mut i.right_body_share, &o.right_body_share);
        set(&mut r.seed, &o.seed);
        set(&mut r.n, &o.n);
        set(&mut r.horizon, &o.horizon);
        set(&mut r.x0, &o.x0);
        set(&mut r.index, &o.index);
        if o.out.is_some() {
            r.out = o.out.clone();
        }
        if o.delta.is_some() {
            r.delta = o.delta;
        }
        set(&mut r.grid, &o.grid);
        set(&mut r.gamma_grid, &o.gamma_grid);
        set(&mut r.theta_grid, &o.theta_grid);
        set(&mut r.delta_grid, &o.delta_grid);
        set(&mut r.c_grid, &o.c_grid);
        set(&mut r.sweep_n, &o.sweep_n);
    }

    pub fn model(&self) -> Result<Model, CliError> {
        let drift = match self.model.drift {
            DriftArg::Down => Drift::Down,
            DriftArg::Up => Drift::Up,
        };
        let m = Model::new(drift, self.model.gamma, self.model.target_a)
            .map_err(|e| CliError::field("model", e))?;
        Ok(m.with_reflect(self.model.reflect))
    }

    pub fn innovation(&self) -> Result<InnovationSpec<f64>, CliError> {
        self.innovation_with(self.innovation.theta)
    }

    /// The configured law with the (right, or only) tail exponent replaced.
    pub fn innovation_with(&self, theta: f64) -> Result<InnovationSpec<f64>, CliError> {
        let i = &self.innovation;
        let support = match i.side {
            SideArg::Positive => Support::PositiveOnly,
            SideArg::Negative => Support::NegativeOnly,
            SideArg::TwoSided => Support::TwoSided,
        };
        let mut b = InnovationSpec::builder(support)
            .y0(i.y0)
            .lattice(i.lattice)
            .right_body_share(i.right_body_share);
        if i.amplitude != 0.0 {
            b = b.profile(TailProfile::Oscillating { amplitude: i.amplitude });
        }
        b = match i.side {
            SideArg::Positive => b.right_tail(theta, i.c),
            SideArg::Negative => b.left_tail(theta, i.c),
            SideArg::TwoSided => {
                let (Some(tl), Some(cl)) = (i.theta_left, i.c_left) else {
                    return Err(CliError::Config(
                        "innovation: two-sided laws need theta_left and c_left".into(),
                    ));
                };
                b.right_tail(theta, i.c).left_tail(tl, cl)
            }
        };
        b.build().map_err(|e| CliError::field("innovation", e))
    }
}

/// Parses `lo:hi:step` (inclusive) or a comma-separated list.
pub fn parse_grid(name: &str, text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Config(format!("run.{name} = {text:?}: {why}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let parts: Vec<&str> = text.split(':').collect();
    let values = match parts.as_slice() {
        [lo, hi, step] => {
            let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
            if !(step > 0.0) || !(hi >= lo) {
                return Err(bad("need lo <= hi and step > 0"));
            }
            let n = ((hi - lo) / step + 1e-9).floor() as usize;
            // Rounding keeps 0.1:0.9:0.1 on the decimal values.
            (0..=n).map(|k| ((lo + k as f64 * step) * 1e12).round() / 1e12).collect()
        }
        [_] => text.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(bad("expected lo:hi:step or a comma-separated list")),
    };
    if values.is_empty() {
        return Err(bad("empty grid"));
    }
    Ok(values)
}

/// Parses the `lo:hi:per_decade` certificate grid.
pub fn parse_log_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Config(format!("run.grid = {text:?}: {why}"));
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, per] = parts.as_slice() else {
        return Err(bad("expected lo:hi:per_decade"));
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad("bad lower end"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad("bad upper end"))?;
    let per: usize = per.trim().parse().map_err(|_| bad("bad points per decade"))?;
    if !(lo > 0.0 && hi > lo) || per == 0 {
        return Err(bad("need 0 < lo < hi and per_decade >= 1"));
    }
    Ok(heavytail::drift::geometric_grid(lo, hi, per))
}
