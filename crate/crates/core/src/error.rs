use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// Mixing weight outside `[0, 1]`.
    EpsilonOutOfRange(f64),
    /// A parameter that must be finite was NaN or infinite.
    NonFinite(&'static str),
    /// A parameter violated its documented range.
    InvalidParameter(&'static str),
    /// `n + m` above the supported moment order.
    MomentCapExceeded { n: u32, m: u32, cap: u32 },
    /// Witness order outside the supported range.
    OrderOutOfRange { order: u32, max: u32 },
    /// Probability mass beyond the Fock cutoff exceeds the tolerance.
    InadequateTruncation { dim: usize, tail_mass: f64, tol: f64 },
    /// Ladder operator power does not fit in the truncated basis.
    LadderExceedsDim { power: u32, dim: usize },
    /// Input state is not unit-normalized.
    NotNormalized { norm_sqr: f64 },
    /// A quantity that must be real carried an imaginary part.
    ImaginaryResidue { re: f64, im: f64 },
    /// `⟨a†a⟩ = 0`: antibunching ratio undefined.
    VacuumState,
    /// Both heralded branch amplitudes vanish.
    DegenerateBranches,
    /// Beam splitter coefficients with `t² + r² ≠ 1`.
    NonUnitaryBeamSplitter { t: f64, r: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EpsilonOutOfRange(e) => write!(f, "epsilon {e} outside [0, 1]"),
            Error::NonFinite(what) => write!(f, "{what} is not finite"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::MomentCapExceeded { n, m, cap } => {
                write!(f, "moment <a†^{n} a^{m}> exceeds order cap n + m <= {cap}")
            }
            Error::OrderOutOfRange { order, max } => {
                write!(f, "order {order} outside supported range 1..={max}")
            }
            Error::InadequateTruncation { dim, tail_mass, tol } => write!(
                f,
                "truncation dim {dim} inadequate: tail mass {tail_mass:e} above tolerance {tol:e}"
            ),
            Error::LadderExceedsDim { power, dim } => {
                write!(f, "ladder power {power} does not fit in dimension {dim}")
            }
            Error::NotNormalized { norm_sqr } => {
                write!(f, "state not normalized (norm² = {norm_sqr})")
            }
            Error::ImaginaryResidue { re, im } => {
                write!(f, "real quantity has imaginary residue {im:e} (real part {re})")
            }
            Error::VacuumState => write!(f, "vacuum state: <a†a> = 0"),
            Error::DegenerateBranches => write!(f, "both heralded branch amplitudes vanish"),
            Error::NonUnitaryBeamSplitter { t, r } => {
                write!(f, "beam splitter t = {t}, r = {r} violates t² + r² = 1")
            }
        }
    }
}

impl core::error::Error for Error {}
