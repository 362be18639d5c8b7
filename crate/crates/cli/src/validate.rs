//! Closed form against the truncated-Fock oracle over a parameter grid.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};
use std::fmt;

use hcs_core::fock::{build_hcs, choose_truncation, numeric_moment, quadrature_central_moment};
use hcs_core::moments::moment;
use hcs_core::params::MOMENT_CAP;
use hcs_core::witnesses::{hm_squeezing, hoa_g, SQUEEZING_CAP};
use hcs_core::{ClosedForm, Error as CoreError, FockVector, HcsParams, MomentKey, QuadratureSpec, TruncationPolicy};

use crate::error::{CliError, EXIT_BREACH, EXIT_OK, EXIT_TRUNCATION};

#[derive(Debug, Clone, PartialEq)]
pub struct ValidateSpec {
    pub epsilons: Vec<f64>,
    pub phis: Vec<f64>,
    pub alpha_abs: Vec<f64>,
    pub alpha_args: Vec<f64>,
    /// Largest `n + m` compared for raw moments.
    pub moment_order: u32,
    /// Largest `n` for `S^(2n)` and `g^(n+1)`.
    pub witness_order: u32,
    /// Forces the oracle cutoff instead of choosing it from `|α|`.
    pub dim: Option<usize>,
    pub tail_tol: f64,
    pub tol: f64,
    pub coherent_tol: f64,
}

impl Default for ValidateSpec {
    fn default() -> Self {
        Self {
            epsilons: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            phis: vec![0.0, FRAC_PI_4, FRAC_PI_2, PI],
            alpha_abs: vec![0.0, 0.5, 1.0, 2.0, 3.0],
            alpha_args: vec![0.0, FRAC_PI_3],
            moment_order: 12,
            witness_order: 3,
            dim: None,
            tail_tol: hcs_core::fock::DEFAULT_TAIL_TOL,
            tol: 1e-9,
            coherent_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Breach,
    /// The oracle basis could not represent the state; no numeric verdict.
    TruncationInadequate,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Breach => "FAIL",
            Status::TruncationInadequate => "TRUNCATION-INADEQUATE",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub points: usize,
    pub worst: f64,
    pub tol: f64,
    pub status: Status,
    /// First offending point, if any.
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &'static str, tol: f64) -> Self {
        Self {
            name,
            points: 0,
            worst: 0.0,
            tol,
            status: Status::Pass,
            detail: None,
        }
    }

    fn record(&mut self, err: f64, at: impl FnOnce() -> String) {
        self.points += 1;
        if !(err <= self.worst) {
            self.worst = err;
        }
        if !(err <= self.tol) && self.status == Status::Pass {
            self.status = Status::Breach;
            self.detail = Some(at());
        }
    }

    fn truncated(&mut self, at: String) {
        if self.status != Status::TruncationInadequate {
            self.status = Status::TruncationInadequate;
            self.detail = Some(at);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        if self.checks.iter().any(|c| c.status == Status::TruncationInadequate) {
            EXIT_TRUNCATION
        } else if self.checks.iter().any(|c| c.status == Status::Breach) {
            EXIT_BREACH
        } else {
            EXIT_OK
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<16} {:>7} {:>12} {:>9}  status", "check", "points", "worst_err", "tol")?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<16} {:>7} {:>12.3e} {:>9.1e}  {}",
                c.name,
                c.points,
                c.worst,
                c.tol,
                c.status.label()
            )?;
            if let Some(detail) = &c.detail {
                writeln!(f, "    {detail}")?;
            }
        }
        let overall = match self.exit_code() {
            EXIT_OK => "PASS",
            EXIT_TRUNCATION => "TRUNCATION-INADEQUATE",
            _ => "FAIL",
        };
        write!(f, "overall: {overall}")
    }
}

/// Relative error, measured absolutely below unit scale.
fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn is_truncation(e: &CoreError) -> bool {
    matches!(e, CoreError::InadequateTruncation { .. } | CoreError::LadderExceedsDim { .. })
}

fn numeric(context: String, source: CoreError) -> CliError {
    CliError::Numeric { context, source }
}

pub fn run_validate(spec: &ValidateSpec) -> Result<Report, CliError> {
    if spec.epsilons.is_empty() || spec.phis.is_empty() || spec.alpha_abs.is_empty() || spec.alpha_args.is_empty() {
        return Err(CliError::usage("validation grid has an empty axis"));
    }
    if !(spec.tol > 0.0 && spec.tol.is_finite()) {
        return Err(CliError::usage("tol must be positive"));
    }
    if !(spec.tail_tol > 0.0 && spec.tail_tol < 1.0) {
        return Err(CliError::usage("truncation-tol must lie in (0, 1)"));
    }
    if spec.witness_order == 0 || spec.witness_order > SQUEEZING_CAP {
        return Err(CliError::usage(format!("witness order must lie in 1..={SQUEEZING_CAP}")));
    }
    if spec.moment_order > MOMENT_CAP {
        return Err(CliError::usage(format!("moment order must not exceed {MOMENT_CAP}")));
    }
    let policy = TruncationPolicy::new(spec.tail_tol, hcs_core::fock::DEFAULT_MIN_DIM)?
        .with_ladder_power(spec.moment_order.max(2 * spec.witness_order + 2) as usize);

    let mut truncation = Check::new("truncation", spec.tail_tol);
    let mut moments = Check::new("moments", spec.tol);
    let mut squeezing = Check::new("squeezing", spec.tol);
    let mut antibunching = Check::new("antibunching", spec.tol);
    let mut variance = Check::new("variance", spec.tol);
    let mut coherent = Check::new("coherent-limit", spec.coherent_tol);

    let mut grid = Vec::new();
    for &eps in &spec.epsilons {
        for &phi in &spec.phis {
            for &abs in &spec.alpha_abs {
                for &arg in &spec.alpha_args {
                    grid.push(HcsParams::from_polar(eps, phi, abs, arg)?);
                }
            }
        }
    }

    for p in &grid {
        let at = format!("eps={} phi={:.6} |alpha|={} arg={:.6}", p.epsilon(), p.phi(), p.alpha_abs(), p.alpha_arg());
        let closed = ClosedForm::new(*p);
        let quads = [QuadratureSpec::at(0.0), QuadratureSpec::at(FRAC_PI_2)];

        if p.epsilon() == 1.0 {
            for quad in &quads {
                for n in 1..=spec.witness_order {
                    let s = hm_squeezing(&closed, quad, n).map_err(|e| numeric(at.clone(), e))?;
                    coherent.record(s.s_value.abs(), || format!("{at} psi={} n={n}: S = {:e}", quad.psi, s.s_value));
                }
            }
            if p.alpha_abs() > 0.0 {
                for n in 1..=spec.witness_order {
                    let g = hoa_g(&closed, n).map_err(|e| numeric(at.clone(), e))?.g_value;
                    coherent.record((g - 1.0).abs(), || format!("{at} n={n}: g = {g}"));
                }
            }
        }

        let dim = spec.dim.unwrap_or_else(|| choose_truncation(p.alpha(), &policy));
        let state: FockVector = match build_hcs(p, dim, policy.tail_tol) {
            Ok(s) => {
                truncation.points += 1;
                truncation.worst = truncation.worst.max(s.tail_mass());
                s
            }
            Err(CoreError::InadequateTruncation { tail_mass, tol, .. }) => {
                truncation.points += 1;
                truncation.worst = truncation.worst.max(tail_mass);
                truncation.truncated(format!("{at} dim={dim}: tail mass {tail_mass:.3e} above {tol:.1e}"));
                for check in [&mut moments, &mut squeezing, &mut antibunching, &mut variance] {
                    check.truncated(format!("{at} dim={dim}: oracle state not representable"));
                }
                continue;
            }
            Err(e) => return Err(numeric(at, e)),
        };

        'moments: for n in 0..=spec.moment_order {
            for m in 0..=(spec.moment_order - n) {
                let key = MomentKey::new(n, m);
                let want = match numeric_moment(&state, key) {
                    Ok(v) => v,
                    Err(e) if is_truncation(&e) => {
                        moments.truncated(format!("{at} dim={dim}: {e}"));
                        break 'moments;
                    }
                    Err(e) => return Err(numeric(at, e)),
                };
                let got = moment(p, key).map_err(|e| numeric(at.clone(), e))?;
                let diff = (got - want).norm();
                let err = if diff <= 1e-12 {
                    0.0
                } else {
                    diff / got.norm().max(want.norm())
                };
                moments.record(err, || format!("{at} n={n} m={m}: closed {got} vs oracle {want}"));
            }
        }

        for quad in &quads {
            for n in 1..=spec.witness_order {
                let s = hm_squeezing(&closed, quad, n).map_err(|e| numeric(at.clone(), e))?;
                match hm_squeezing(&state, quad, n) {
                    Ok(o) => squeezing.record(rel_err(s.s_value, o.s_value), || {
                        format!("{at} psi={} n={n}: closed {} vs oracle {}", quad.psi, s.s_value, o.s_value)
                    }),
                    Err(e) if is_truncation(&e) => squeezing.truncated(format!("{at} dim={dim}: {e}")),
                    Err(e) => return Err(numeric(at, e)),
                }
                match quadrature_central_moment(&state, quad, 2 * n) {
                    Ok(direct) => variance.record(rel_err(s.total_variance, direct), || {
                        format!("{at} psi={} n={n}: S+CS {} vs direct {direct}", quad.psi, s.total_variance)
                    }),
                    Err(e) if is_truncation(&e) => variance.truncated(format!("{at} dim={dim}: {e}")),
                    Err(e) => return Err(numeric(at, e)),
                }
            }
        }

        for n in 1..=spec.witness_order {
            let g = match hoa_g(&closed, n) {
                Ok(r) => r.g_value,
                Err(CoreError::VacuumState) => continue,
                Err(e) => return Err(numeric(at, e)),
            };
            match hoa_g(&state, n) {
                Ok(o) => antibunching.record(rel_err(g, o.g_value), || {
                    format!("{at} n={n}: closed {g} vs oracle {}", o.g_value)
                }),
                Err(e) if is_truncation(&e) => antibunching.truncated(format!("{at} dim={dim}: {e}")),
                Err(e) => return Err(numeric(at, e)),
            }
        }
    }

    let mut checks = vec![truncation, moments, squeezing, antibunching, variance];
    if coherent.points > 0 {
        checks.push(coherent);
    }
    Ok(Report { checks })
}
