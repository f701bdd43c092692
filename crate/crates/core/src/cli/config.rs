use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::control::{pow4_schedule, ControlBox, ControlProblem, MinimizeOptions};
use crate::error::{Error, Result};
use crate::fem::{assemble_mass, assemble_stiffness, FracOrder, Mesh1D};
use crate::parabolic::{HeatSolver, SpaceTimeField, TimeGrid};
use crate::verify::ExactProfile;

/// Closed-form space-time data. `ũ` is the exact profile centred on the
/// domain and vanishing at its endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    Zero,
    Const(f64),
    /// `c ũ(x)`
    Profile(f64),
    /// `c t² ũ(x)`
    ProfileT2(f64),
    /// `c (1 - t)⁴ ũ(x)`
    ProfileDecay4(f64),
    /// `c (1 + t) ũ(x)`
    ProfileLin(f64),
}

impl FieldSpec {
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let text = text.trim();
        if text == "zero" {
            return Ok(Self::Zero);
        }
        let Some((atom, arg)) = text.split_once(':') else {
            return Err(format!("unknown field spec `{text}`"));
        };
        let c: f64 = arg
            .trim()
            .parse()
            .map_err(|_| format!("field spec `{text}` needs a numeric argument"))?;
        if !c.is_finite() {
            return Err(format!("field spec `{text}` has a non-finite argument"));
        }
        match atom.trim() {
            "const" => Ok(Self::Const(c)),
            "profile" => Ok(Self::Profile(c)),
            "profile_t2" => Ok(Self::ProfileT2(c)),
            "profile_decay4" => Ok(Self::ProfileDecay4(c)),
            "profile_lin" => Ok(Self::ProfileLin(c)),
            other => Err(format!("unknown field spec atom `{other}`")),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match *self {
            Self::Zero => true,
            Self::Const(c) | Self::Profile(c) | Self::ProfileT2(c) | Self::ProfileDecay4(c) | Self::ProfileLin(c) => c >= 0.0,
        }
    }

    pub fn field(&self, order: FracOrder, mesh: &Mesh1D, grid: &TimeGrid) -> Result<SpaceTimeField> {
        let profile = ExactProfile::for_mesh(order, mesh)?;
        let u = |x: f64| profile.value(x);
        Ok(match *self {
            Self::Zero => SpaceTimeField::zeros(mesh, grid),
            Self::Const(c) => SpaceTimeField::from_fn(mesh, grid, |_, _| c),
            Self::Profile(c) => SpaceTimeField::from_fn(mesh, grid, |_, x| c * u(x)),
            Self::ProfileT2(c) => SpaceTimeField::from_fn(mesh, grid, |t, x| c * t * t * u(x)),
            Self::ProfileDecay4(c) => SpaceTimeField::from_fn(mesh, grid, |t, x| c * (1.0 - t).powi(4) * u(x)),
            Self::ProfileLin(c) => SpaceTimeField::from_fn(mesh, grid, |t, x| c * (1.0 + t) * u(x)),
        })
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Zero => write!(f, "zero"),
            Self::Const(c) => write!(f, "const:{c}"),
            Self::Profile(c) => write!(f, "profile:{c}"),
            Self::ProfileT2(c) => write!(f, "profile_t2:{c}"),
            Self::ProfileDecay4(c) => write!(f, "profile_decay4:{c}"),
            Self::ProfileLin(c) => write!(f, "profile_lin:{c}"),
        }
    }
}

/// Validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub domain: (f64, f64),
    pub s: FracOrder,
    pub n_x: usize,
    pub horizon: f64,
    pub n_t: usize,
    pub alpha: f64,
    pub gamma_schedule: Vec<f64>,
    pub u_d: FieldSpec,
    pub u_b: FieldSpec,
    pub f: FieldSpec,
    pub z: FieldSpec,
    pub mu_hat: FieldSpec,
    pub box_lo: Option<f64>,
    pub box_hi: Option<f64>,
    pub tol_opt: f64,
    pub tol_vi: f64,
    pub max_iter: usize,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub norm_p: f64,
    pub norm_r: f64,
}

const KEYS: &[&str] = &[
    "domain",
    "s",
    "n_x",
    "T",
    "n_t",
    "alpha",
    "gamma_schedule",
    "u_d",
    "u_b",
    "f",
    "z",
    "mu_hat",
    "box_lo",
    "box_hi",
    "tol_opt",
    "tol_vi",
    "max_iter",
    "seed",
    "output_dir",
    "norm_p",
    "norm_r",
];
const REQUIRED: &[&str] = &["domain", "s", "n_x", "T", "n_t", "u_d", "u_b"];

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        message: message.into(),
    }
}

fn number(line: usize, key: &str, v: &str) -> Result<f64> {
    let x: f64 = v
        .parse()
        .map_err(|_| err(line, format!("{key}: `{v}` is not a number")))?;
    if x.is_nan() {
        return Err(err(line, format!("{key} is NaN")));
    }
    Ok(x)
}

fn count(line: usize, key: &str, v: &str) -> Result<usize> {
    v.parse()
        .map_err(|_| err(line, format!("{key}: `{v}` is not a nonnegative integer")))
}

fn norm_exponent(line: usize, key: &str, v: &str) -> Result<f64> {
    let x = match v {
        "inf" | "infinity" => f64::INFINITY,
        _ => number(line, key, v)?,
    };
    if !(x >= 1.0) {
        return Err(err(line, format!("{key} must be at least 1")));
    }
    Ok(x)
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: HashMap<&str, (usize, &str)> = HashMap::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return Err(err(line, format!("expected `key = value`, found `{body}`")));
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(err(line, format!("unknown key `{key}`")));
            }
            if value.is_empty() {
                return Err(err(line, format!("{key} has no value")));
            }
            if let Some((first, _)) = entries.insert(key, (line, value)) {
                return Err(err(line, format!("{key} already set on line {first}")));
            }
        }
        for key in REQUIRED {
            if !entries.contains_key(key) {
                return Err(err(last_line + 1, format!("missing required key `{key}`")));
            }
        }
        let get = |key: &str| entries.get(key).copied();
        let spec = |key: &str, default: FieldSpec| -> Result<FieldSpec> {
            match get(key) {
                Some((line, v)) => FieldSpec::parse(v).map_err(|m| err(line, format!("{key}: {m}"))),
                None => Ok(default),
            }
        };

        let (line, v) = get("domain").unwrap();
        let inner = v.trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(err(line, "domain must be `a, b`"));
        }
        let domain = (number(line, "domain", parts[0])?, number(line, "domain", parts[1])?);
        if !(domain.0 < domain.1) || !domain.0.is_finite() || !domain.1.is_finite() {
            return Err(err(line, "domain must satisfy a < b"));
        }

        let (line, v) = get("s").unwrap();
        let s = number(line, "s", v)?;
        let s = FracOrder::new(s).map_err(|_| err(line, "s must lie in (0,1)"))?;

        let (line, v) = get("n_x").unwrap();
        let n_x = count(line, "n_x", v)?;
        if n_x < 1 {
            return Err(err(line, "n_x must be at least 1"));
        }
        let (line, v) = get("n_t").unwrap();
        let n_t = count(line, "n_t", v)?;
        if n_t < 1 {
            return Err(err(line, "n_t must be at least 1"));
        }
        let (line, v) = get("T").unwrap();
        let horizon = number(line, "T", v)?;
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(err(line, "T must be positive"));
        }

        let positive = |key: &str, default: f64| -> Result<f64> {
            match get(key) {
                Some((line, v)) => {
                    let x = number(line, key, v)?;
                    if !(x > 0.0 && x.is_finite()) {
                        return Err(err(line, format!("{key} must be positive")));
                    }
                    Ok(x)
                }
                None => Ok(default),
            }
        };
        let alpha = positive("alpha", 1e-2)?;
        let tol_opt = positive("tol_opt", 1e-8)?;
        let tol_vi = positive("tol_vi", 1e-6)?;

        let gamma_schedule = match get("gamma_schedule") {
            None => pow4_schedule(10),
            Some((line, v)) => {
                let schedule = if let Some(k) = v.strip_prefix("pow4:") {
                    let k: u32 = k
                        .trim()
                        .parse()
                        .map_err(|_| err(line, "gamma_schedule: pow4 needs an integer exponent"))?;
                    pow4_schedule(k)
                } else {
                    v.split(',')
                        .map(|g| number(line, "gamma_schedule", g.trim()))
                        .collect::<Result<Vec<f64>>>()?
                };
                if schedule.iter().any(|g| !(*g > 0.0 && g.is_finite())) {
                    return Err(err(line, "gamma values must be positive"));
                }
                if schedule.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(err(line, "gamma_schedule must be strictly increasing"));
                }
                schedule
            }
        };

        let bound = |key: &str| -> Result<Option<f64>> {
            match get(key) {
                Some((line, v)) => {
                    let x = number(line, key, v)?;
                    if x.is_nan() {
                        return Err(err(line, format!("{key} is NaN")));
                    }
                    Ok(Some(x))
                }
                None => Ok(None),
            }
        };
        let box_lo = bound("box_lo")?;
        let box_hi = bound("box_hi")?;
        if let (Some(lo), Some(hi)) = (box_lo, box_hi) {
            if lo >= hi {
                return Err(err(get("box_hi").unwrap().0, "box_lo must be below box_hi"));
            }
        }

        let mu_hat = spec("mu_hat", FieldSpec::Zero)?;
        if !mu_hat.is_nonnegative() {
            return Err(err(get("mu_hat").unwrap().0, "mu_hat must be nonnegative"));
        }

        Ok(Self {
            domain,
            s,
            n_x,
            horizon,
            n_t,
            alpha,
            gamma_schedule,
            u_d: spec("u_d", FieldSpec::Zero)?,
            u_b: spec("u_b", FieldSpec::Zero)?,
            f: spec("f", FieldSpec::Zero)?,
            z: spec("z", FieldSpec::Zero)?,
            mu_hat,
            box_lo,
            box_hi,
            tol_opt,
            tol_vi,
            max_iter: match get("max_iter") {
                Some((line, v)) => count(line, "max_iter", v)?,
                None => 50_000,
            },
            seed: match get("seed") {
                Some((line, v)) => v
                    .parse()
                    .map_err(|_| err(line, format!("seed: `{v}` is not a nonnegative integer")))?,
                None => 0,
            },
            output_dir: get("output_dir").map_or_else(|| PathBuf::from("out"), |(_, v)| PathBuf::from(v)),
            norm_p: match get("norm_p") {
                Some((line, v)) => norm_exponent(line, "norm_p", v)?,
                None => 2.0,
            },
            norm_r: match get("norm_r") {
                Some((line, v)) => norm_exponent(line, "norm_r", v)?,
                None => 2.0,
            },
        })
    }

    pub fn mesh(&self) -> Result<Mesh1D> {
        Mesh1D::new(self.domain.0, self.domain.1, self.n_x)
    }

    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::new(self.horizon, self.n_t)
    }

    pub fn solver(&self) -> Result<HeatSolver> {
        let mesh = self.mesh()?;
        HeatSolver::new(assemble_stiffness(&mesh, self.s)?, assemble_mass(&mesh), self.grid()?)
    }

    pub fn field(&self, spec: FieldSpec) -> Result<SpaceTimeField> {
        spec.field(self.s, &self.mesh()?, &self.grid()?)
    }

    pub fn control_box(&self) -> Result<ControlBox> {
        ControlBox::new(self.box_lo, self.box_hi)
    }

    pub fn problem(&self) -> Result<ControlProblem> {
        Ok(ControlProblem::new(self.solver()?, self.alpha)?
            .with_desired(self.field(self.u_d)?)?
            .with_upper_bound(self.field(self.u_b)?)?
            .with_force(self.field(self.f)?)?
            .with_mu_hat(self.field(self.mu_hat)?)?
            .with_box(self.control_box()?))
    }

    pub fn options(&self) -> MinimizeOptions {
        MinimizeOptions {
            tol_opt: self.tol_opt,
            tol_vi: self.tol_vi,
            max_iterations: self.max_iter,
            ..MinimizeOptions::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "domain = (-0.5, 0.5)\ns = 0.8\nn_x = 15\nT = 1\nn_t = 10\nu_d = profile_t2:10\nu_b = profile_decay4:0.1\n";

    fn line_of(e: Error) -> usize {
        match e {
            Error::Config { line, .. } => line,
            other => panic!("expected a config error, got {other}"),
        }
    }

    #[test]
    fn minimal_config_defaults() {
        let c = RunConfig::parse(MINIMAL).unwrap();
        assert_eq!(c.alpha, 1e-2);
        assert_eq!(c.tol_opt, 1e-8);
        assert_eq!(c.tol_vi, 1e-6);
        assert_eq!(c.gamma_schedule, pow4_schedule(10));
        assert_eq!(c.f, FieldSpec::Zero);
        assert_eq!(c.seed, 0);
        assert_eq!(c.output_dir, PathBuf::from("out"));
        assert!(c.box_lo.is_none() && c.box_hi.is_none());
        assert_eq!(c.u_d, FieldSpec::ProfileT2(10.0));
    }

    #[test]
    fn order_out_of_range() {
        let text = MINIMAL.replace("s = 0.8", "s = 1.2");
        let e = RunConfig::parse(&text).unwrap_err();
        assert!(e.to_string().contains("s must lie in (0,1)"));
        assert_eq!(line_of(e), 2);
    }

    #[test]
    fn errors_name_their_line() {
        let e = RunConfig::parse(&format!("{MINIMAL}# note\nalpah = 1\n")).unwrap_err();
        assert_eq!(line_of(e), 9);
        let e = RunConfig::parse(&MINIMAL.replace("profile_t2:10", "parabola:1")).unwrap_err();
        assert_eq!(line_of(e), 6);
        let e = RunConfig::parse(&MINIMAL.replace("n_t = 10", "n_t = 0")).unwrap_err();
        assert_eq!(line_of(e), 5);
        let e = RunConfig::parse(&MINIMAL.replace("u_b = profile_decay4:0.1\n", "")).unwrap_err();
        assert!(e.to_string().contains("u_b"));
        let e = RunConfig::parse(&format!("{MINIMAL}s = 0.5\n")).unwrap_err();
        assert_eq!(line_of(e), 8);
    }

    #[test]
    fn second_family() {
        let text = "domain = -0.5, 0.5\ns = 0.8\nn_x = 7\nT = 1\nn_t = 4\nu_d = profile_lin:10  # rising target\nu_b = profile:0.25\nf = const:1000\ngamma_schedule = 1, 10, 100\nbox_lo = -5\nnorm_r = inf\n";
        let c = RunConfig::parse(text).unwrap();
        assert_eq!(c.f, FieldSpec::Const(1000.0));
        assert_eq!(c.u_b, FieldSpec::Profile(0.25));
        assert_eq!(c.gamma_schedule, vec![1.0, 10.0, 100.0]);
        assert_eq!(c.box_lo, Some(-5.0));
        assert_eq!(c.norm_r, f64::INFINITY);
        let f = c.field(c.f).unwrap();
        assert!(f.values().iter().all(|v| *v == 1000.0));
        let ud = c.field(c.u_d).unwrap();
        let mesh = c.mesh().unwrap();
        let p = ExactProfile::for_mesh(c.s, &mesh).unwrap();
        assert!((ud.get(4, 3) - 10.0 * 2.0 * p.value(0.0)).abs() < 1e-12);
        assert!(c.problem().is_ok());
    }

    #[test]
    fn schedule_must_increase() {
        let e = RunConfig::parse(&format!("{MINIMAL}gamma_schedule = 4, 1\n")).unwrap_err();
        assert_eq!(line_of(e), 8);
    }

    #[test]
    fn spec_display_round_trips() {
        for s in ["zero", "const:-2.5", "profile:0.25", "profile_t2:10", "profile_decay4:0.1", "profile_lin:10"] {
            assert_eq!(FieldSpec::parse(s).unwrap().to_string(), s);
        }
    }
}
