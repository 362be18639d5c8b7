//! Closed-form witness sweeps along a ray in the α plane, and their CSV form.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use csv::{Terminator, WriterBuilder};
use hcs_core::witnesses::{hm_squeezing, hoa_g, ANTIBUNCHING_CAP, SQUEEZING_CAP};
use hcs_core::{ClosedForm, Error as CoreError, HcsParams, QuadratureSpec};

use crate::error::CliError;

pub const HEADER: [&str; 9] = [
    "witness", "order", "epsilon", "phi", "psi", "alpha_abs", "alpha_arg", "value", "flag",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// `S_ψ^(2n)`; `order` is `n`.
    Squeezing,
    /// `g^(n+1)`; `order` is `n`.
    Antibunching,
}

impl Witness {
    pub fn name(self) -> &'static str {
        match self {
            Witness::Squeezing => "squeezing",
            Witness::Antibunching => "antibunching",
        }
    }

    pub fn max_order(self) -> u32 {
        match self {
            Witness::Squeezing => SQUEEZING_CAP,
            Witness::Antibunching => ANTIBUNCHING_CAP,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Witness {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "squeezing" => Ok(Witness::Squeezing),
            "antibunching" => Ok(Witness::Antibunching),
            other => Err(format!("unknown witness `{other}` (squeezing | antibunching)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub witness: Witness,
    pub epsilons: Vec<f64>,
    pub orders: Vec<u32>,
    pub phi: f64,
    pub psi: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_steps: usize,
    pub alpha_arg: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            witness: Witness::Squeezing,
            epsilons: vec![0.5],
            orders: vec![1],
            phi: 0.0,
            psi: 0.0,
            alpha_min: 0.0,
            alpha_max: 4.0,
            alpha_steps: 81,
            alpha_arg: 0.0,
        }
    }
}

impl SweepSpec {
    pub fn check(&self) -> Result<(), CliError> {
        for (name, v) in [("phi", self.phi), ("psi", self.psi), ("alpha-arg", self.alpha_arg)] {
            if !v.is_finite() {
                return Err(CliError::usage(format!("{name} must be finite")));
            }
        }
        if !(self.alpha_min.is_finite() && self.alpha_max.is_finite() && self.alpha_min >= 0.0) {
            return Err(CliError::usage("alpha range must be finite and non-negative"));
        }
        if self.alpha_min > self.alpha_max {
            return Err(CliError::usage("alpha-min exceeds alpha-max"));
        }
        if self.alpha_steps < 2 {
            return Err(CliError::usage("alpha-steps must be at least 2"));
        }
        if self.epsilons.is_empty() {
            return Err(CliError::usage("epsilon list is empty"));
        }
        if let Some(e) = self.epsilons.iter().find(|e| !(0.0..=1.0).contains(*e)) {
            return Err(CliError::usage(format!("epsilon {e} outside [0, 1]")));
        }
        if self.orders.is_empty() {
            return Err(CliError::usage("order list is empty"));
        }
        let max = self.witness.max_order();
        if let Some(n) = self.orders.iter().find(|&&n| n == 0 || n > max) {
            return Err(CliError::usage(format!("{} order {n} outside 1..={max}", self.witness)));
        }
        Ok(())
    }

    /// Uniform `|α|` samples, endpoints included.
    pub fn alpha_axis(&self) -> Vec<f64> {
        let last = (self.alpha_steps - 1) as f64;
        (0..self.alpha_steps)
            .map(|i| {
                if i + 1 == self.alpha_steps {
                    self.alpha_max
                } else {
                    self.alpha_min + (self.alpha_max - self.alpha_min) * i as f64 / last
                }
            })
            .collect()
    }

    pub fn grid_size(&self) -> usize {
        self.epsilons.len() * self.orders.len() * self.alpha_steps
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub witness: Witness,
    pub order: u32,
    pub epsilon: f64,
    pub phi: f64,
    pub psi: f64,
    pub alpha_abs: f64,
    pub alpha_arg: f64,
    pub value: f64,
    /// Squeezed (`value < 0`) or antibunched (`value < 1`).
    pub flag: bool,
}

impl CsvRow {
    fn record(&self) -> [String; 9] {
        [
            self.witness.name().to_string(),
            self.order.to_string(),
            num(self.epsilon),
            num(self.phi),
            num(self.psi),
            num(self.alpha_abs),
            num(self.alpha_arg),
            num(self.value),
            u8::from(self.flag).to_string(),
        ]
    }
}

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOutput {
    pub rows: Vec<CsvRow>,
    /// Pure-vacuum points dropped from antibunching sweeps.
    pub skipped_vacuum: usize,
}

/// Evaluates every grid point with the closed-form engine, ε outer, order
/// middle, `|α|` inner.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutput, CliError> {
    spec.check()?;
    let axis = spec.alpha_axis();
    let quad = QuadratureSpec::at(spec.psi);
    let mut out = SweepOutput::default();
    for &epsilon in &spec.epsilons {
        for &order in &spec.orders {
            for &alpha_abs in &axis {
                let params = HcsParams::from_polar(epsilon, spec.phi, alpha_abs, spec.alpha_arg)?;
                let provider = ClosedForm::new(params);
                let evaluated = match spec.witness {
                    Witness::Squeezing => hm_squeezing(&provider, &quad, order).map(|r| (r.s_value, r.squeezed)),
                    Witness::Antibunching => hoa_g(&provider, order).map(|r| (r.g_value, r.antibunched)),
                };
                let (value, flag) = match evaluated {
                    Ok(v) => v,
                    Err(CoreError::VacuumState) => {
                        out.skipped_vacuum += 1;
                        continue;
                    }
                    Err(source) => {
                        return Err(CliError::Numeric {
                            context: format!("{} n={order} eps={epsilon} |alpha|={alpha_abs}", spec.witness),
                            source,
                        })
                    }
                };
                out.rows.push(CsvRow {
                    witness: spec.witness,
                    order,
                    epsilon,
                    phi: spec.phi,
                    psi: spec.psi,
                    alpha_abs,
                    alpha_arg: spec.alpha_arg,
                    value,
                    flag,
                });
            }
        }
    }
    Ok(out)
}

pub fn write_csv<W: Write>(rows: &[CsvRow], sink: W) -> std::io::Result<()> {
    let mut writer = WriterBuilder::new().terminator(Terminator::Any(b'\n')).from_writer(sink);
    writer.write_record(HEADER)?;
    for row in rows {
        writer.write_record(row.record())?;
    }
    writer.flush()
}

/// Canned sweeps for the published figures; multi-panel figures yield
/// several specs whose rows are concatenated.
pub fn figure_preset(name: &str) -> Option<Vec<SweepSpec>> {
    let squeezing = SweepSpec::default();
    let antibunching = SweepSpec {
        witness: Witness::Antibunching,
        alpha_min: 0.03,
        alpha_max: 3.0,
        alpha_steps: 100,
        ..SweepSpec::default()
    };
    let fig2a = SweepSpec {
        orders: vec![1, 2, 3],
        ..squeezing.clone()
    };
    let fig4a = SweepSpec {
        orders: vec![1, 2, 3],
        ..antibunching.clone()
    };
    let fig4b = SweepSpec {
        epsilons: vec![0.0, 0.5, 1.0],
        orders: vec![2],
        ..antibunching
    };
    let specs = match name {
        "2a" => vec![fig2a],
        "2b" => vec![
            fig2a.clone(),
            SweepSpec {
                psi: FRAC_PI_2,
                ..fig2a
            },
        ],
        "3" => vec![SweepSpec {
            epsilons: vec![0.0, 0.25, 0.5, 0.75],
            orders: vec![2],
            ..squeezing
        }],
        "4" => vec![fig4a, fig4b],
        "4a" => vec![fig4a],
        "4b" => vec![fig4b],
        _ => return None,
    };
    Some(specs)
}

pub const FIGURES: &[&str] = &["2a", "2b", "3", "4", "4a", "4b"];
