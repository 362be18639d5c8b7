use std::fmt;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use hcs_core::fock::{build_hcs, fidelity};
use hcs_core::herald::simulate_herald;
use hcs_core::{HcsParams, HeraldingParams, KerrMode, TruncationPolicy};

use crate::error::CliError;

pub const HERALD_HEADER: &str = "transmissivity,theta,phi_xpm,alpha_abs,alpha_arg,kerr_mode,epsilon,phi,\
fidelity_linearized_hcs,fidelity_exact_linearized,success_prob";

#[derive(Debug, Clone, PartialEq)]
pub struct HeraldReport {
    pub params: HeraldingParams,
    pub mapped: HcsParams,
    pub dim: usize,
    /// Linearized-Kerr heralded state against the ideal HCS of the mapping.
    pub fidelity_linearized_hcs: f64,
    /// Exact against linearized Kerr coupling.
    pub fidelity_exact_linearized: f64,
    /// D1 click probability under the requested Kerr mode.
    pub success_prob: f64,
}

pub fn kerr_mode_name(mode: KerrMode) -> &'static str {
    match mode {
        KerrMode::Linearized => "linearized",
        KerrMode::Exact => "exact",
    }
}

pub fn parse_kerr_mode(s: &str) -> Result<KerrMode, String> {
    match s {
        "linearized" => Ok(KerrMode::Linearized),
        "exact" => Ok(KerrMode::Exact),
        other => Err(format!("unknown kerr mode `{other}` (linearized | exact)")),
    }
}

pub fn run_herald(hp: &HeraldingParams, policy: &TruncationPolicy) -> Result<HeraldReport, CliError> {
    let numeric = |source| CliError::Numeric {
        context: format!(
            "herald t={} theta={} phi_xpm={} alpha={}",
            hp.t_bs2(),
            hp.theta(),
            hp.phi_xpm(),
            hp.alpha()
        ),
        source,
    };
    let lin = simulate_herald(&hp.with_kerr_mode(KerrMode::Linearized), policy).map_err(numeric)?;
    let exact = simulate_herald(&hp.with_kerr_mode(KerrMode::Exact), policy).map_err(numeric)?;
    let target = build_hcs(&lin.mapped, lin.state_a.dim(), policy.tail_tol).map_err(numeric)?;
    let fidelity_linearized_hcs = fidelity(&lin.state_a, &target).map_err(numeric)?;
    let fidelity_exact_linearized = fidelity(&exact.state_a, &lin.state_a).map_err(numeric)?;
    let success_prob = match hp.kerr_mode() {
        KerrMode::Linearized => lin.success_prob,
        KerrMode::Exact => exact.success_prob,
    };
    Ok(HeraldReport {
        params: *hp,
        mapped: lin.mapped,
        dim: lin.state_a.dim(),
        fidelity_linearized_hcs,
        fidelity_exact_linearized,
        success_prob,
    })
}

impl HeraldReport {
    fn csv_line(&self) -> String {
        let p = &self.params;
        let fields = [
            p.t_bs2(),
            p.theta(),
            p.phi_xpm(),
            p.alpha().norm(),
            if p.alpha().norm() == 0.0 { 0.0 } else { p.alpha().arg() },
        ]
        .iter()
        .map(|x| format!("{x:.16e}"))
        .chain([kerr_mode_name(p.kerr_mode()).to_string()])
        .chain(
            [
                self.mapped.epsilon(),
                self.mapped.phi(),
                self.fidelity_linearized_hcs,
                self.fidelity_exact_linearized,
                self.success_prob,
            ]
            .iter()
            .map(|x| format!("{x:.16e}")),
        )
        .collect::<Vec<_>>();
        fields.join(",")
    }

    /// Appends one row, writing the header first if the file is new or empty.
    pub fn append_csv(&self, path: &Path) -> Result<(), CliError> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| CliError::io(path, e))?;
        let empty = file.metadata().map_err(|e| CliError::io(path, e))?.len() == 0;
        let mut text = String::new();
        if empty {
            text.push_str(HERALD_HEADER);
            text.push('\n');
        }
        text.push_str(&self.csv_line());
        text.push('\n');
        file.write_all(text.as_bytes()).map_err(|e| CliError::io(path, e))
    }
}

impl fmt::Display for HeraldReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(
            f,
            "input: t={} r={} theta={} phi_xpm={} alpha={} kerr={}",
            p.t_bs2(),
            p.r_bs2(),
            p.theta(),
            p.phi_xpm(),
            p.alpha(),
            kerr_mode_name(p.kerr_mode())
        )?;
        writeln!(
            f,
            "mapped: epsilon={:.12} phi={:.12} alpha={}",
            self.mapped.epsilon(),
            self.mapped.phi(),
            self.mapped.alpha()
        )?;
        writeln!(f, "fock dim: {}", self.dim)?;
        writeln!(f, "fidelity linearized vs HCS: {:.15}", self.fidelity_linearized_hcs)?;
        writeln!(f, "fidelity exact vs linearized: {:.15}", self.fidelity_exact_linearized)?;
        write!(f, "success probability: {:.12e}", self.success_prob)
    }
}
