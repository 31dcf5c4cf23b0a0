use core::fmt;

/// Crate wide result alias.
pub type Result<T> = core::result::Result<T, RhoError>;

/// Everything that can go wrong on the mathematical side.
///
/// Parse and IO failures are deliberately absent: they belong to whatever
/// frontend feeds matrices into this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum RhoError {
    /// A square matrix was required.
    NonSquare { rows: usize, cols: usize },
    /// Two operands had incompatible shapes.
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// Two paired sequences had different lengths.
    LengthMismatch { left: usize, right: usize },
    /// An exactly Hermitian Laurent matrix was required (`B = B*`).
    NotHermitianExact,
    /// A numerically Hermitian complex matrix was required; the value is
    /// the max-norm residual of `H - H*`.
    NotHermitian { residual: f64 },
    /// A numerically unitary matrix was required; the value is the
    /// max-norm residual of `U* U - I`.
    NotUnitary { residual: f64 },
    /// The zero polynomial has no circle roots to locate.
    ZeroPolynomial,
    /// `det B` vanishes identically, so the form is singular on all of the
    /// circle and no signature step function exists.
    IdenticallySingular,
    /// An arc midpoint evaluation was singular, meaning two circle roots
    /// were not separated at the requested tolerance.
    MidpointDegenerate { theta: f64 },
    /// A congruence transform must be invertible over the Laurent ring
    /// (determinant a unit, i.e. a nonzero monomial).
    NotInvertible,
    /// Delocalized classes are indexed by nonzero powers of the generator.
    ZeroClassPower,
    /// A class intersection containing the identity must be exactly the
    /// trivial one, and a nontrivial one holds at most a power and its
    /// inverse.
    InvalidClassIntersection,
    /// Sign flip patterns consist of the values `+1` and `-1` only.
    InvalidFlip { value: i64 },
    /// A sampling grid was too coarse to be meaningful.
    GridTooSmall { got: usize },
    /// A Gaussian rational was built with a vanishing denominator.
    ZeroDenominator,
    /// Iterative eigenvalue or root extraction failed to converge.
    NoConvergence,
}

impl RhoError {
    /// Stable machine readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            RhoError::NonSquare { .. } => "NonSquare",
            RhoError::ShapeMismatch { .. } => "ShapeMismatch",
            RhoError::LengthMismatch { .. } => "LengthMismatch",
            RhoError::NotHermitianExact => "NotHermitianExact",
            RhoError::NotHermitian { .. } => "NotHermitian",
            RhoError::NotUnitary { .. } => "NotUnitary",
            RhoError::ZeroPolynomial => "ZeroPolynomial",
            RhoError::IdenticallySingular => "IdenticallySingular",
            RhoError::MidpointDegenerate { .. } => "MidpointDegenerate",
            RhoError::NotInvertible => "NotInvertible",
            RhoError::ZeroClassPower => "ZeroClassPower",
            RhoError::InvalidClassIntersection => "InvalidClassIntersection",
            RhoError::InvalidFlip { .. } => "InvalidFlip",
            RhoError::GridTooSmall { .. } => "GridTooSmall",
            RhoError::ZeroDenominator => "ZeroDenominator",
            RhoError::NoConvergence => "NoConvergence",
        }
    }
}

impl fmt::Display for RhoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoError::NonSquare { rows, cols } => {
                write!(f, "expected a square matrix, got {rows}x{cols}")
            }
            RhoError::ShapeMismatch { left, right } => write!(
                f,
                "incompatible shapes {}x{} and {}x{}",
                left.0, left.1, right.0, right.1
            ),
            RhoError::LengthMismatch { left, right } => {
                write!(f, "paired sequences of lengths {left} and {right}")
            }
            RhoError::NotHermitianExact => {
                write!(f, "matrix is not equal to its star transpose")
            }
            RhoError::NotHermitian { residual } => {
                write!(f, "matrix is not Hermitian (residual {residual:e})")
            }
            RhoError::NotUnitary { residual } => {
                write!(f, "matrix is not unitary (residual {residual:e})")
            }
            RhoError::ZeroPolynomial => write!(f, "the zero polynomial was given"),
            RhoError::IdenticallySingular => {
                write!(f, "determinant vanishes identically on the circle")
            }
            RhoError::MidpointDegenerate { theta } => write!(
                f,
                "singular evaluation at arc midpoint theta = {theta}; roots unseparated"
            ),
            RhoError::NotInvertible => {
                write!(f, "transform is not invertible over the Laurent ring")
            }
            RhoError::ZeroClassPower => {
                write!(f, "delocalized classes require a nonzero power")
            }
            RhoError::InvalidClassIntersection => {
                write!(f, "class intersection mixes the identity with other powers or holds more than one absolute power")
            }
            RhoError::InvalidFlip { value } => {
                write!(f, "sign flips must be +1 or -1, got {value}")
            }
            RhoError::GridTooSmall { got } => {
                write!(f, "grid of size {got} is below the minimum of 8")
            }
            RhoError::ZeroDenominator => write!(f, "zero denominator"),
            RhoError::NoConvergence => write!(f, "iteration failed to converge"),
        }
    }
}
