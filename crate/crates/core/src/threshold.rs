//! Symmetry-breaking thresholds along a gain ray, found by bracketing and
//! bisection on the unbroken/broken indicator.

use crate::eigen::EigenSolver;
use crate::error::{Error, Result};
use crate::lattice::LatticeSpec;
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;
use crate::sector::{decompose, ScalarLatticeSpec, SectorBasis};
use crate::spectrum::{classify_spectrum, Phase, DEFAULT_REALITY_TOLERANCE};
use crate::spin::SpinMatrix;

/// Number of points in the post-bisection re-entrance scan over `[0, lower]`.
pub const VALIDATION_POINTS: usize = 16;

/// One-parameter family `Gamma(gamma) = gamma * direction`, `gamma >= 0`,
/// with the direction normalized so that `max(|s|, |x|, |z|) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainRay<T> {
    direction: SpinMatrix<T>,
}

impl<T: Real> GainRay<T> {
    pub fn new(direction: SpinMatrix<T>) -> Result<Self> {
        let direction = SpinMatrix::new(direction.s, direction.x, direction.z)?;
        let norm = direction.max_coefficient();
        if norm.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(Self { direction: direction.scale(T::one() / norm) })
    }

    /// Gain on one pseudospin, loss on the other.
    pub fn tau_z() -> Self {
        Self { direction: SpinMatrix::tau_z() }
    }

    pub fn identity() -> Self {
        Self { direction: SpinMatrix::identity() }
    }

    pub fn direction(&self) -> SpinMatrix<T> {
        self.direction
    }

    /// `spec` with its gain matrix replaced by the ray direction.
    pub fn apply(&self, spec: &LatticeSpec<T>) -> Result<LatticeSpec<T>> {
        spec.with_gain(self.direction)
    }
}

/// Hamiltonians parameterized by a non-negative gain strength.
pub trait GainFamily<T: Real>: Sync {
    /// Energy unit used to scale default tolerances.
    fn scale(&self) -> T;
    fn hamiltonian(&self, gamma: T) -> ComplexMatrix<T>;
}

/// The stored gain matrix is the direction; `gamma` replaces the gain scale.
impl<T: Real> GainFamily<T> for LatticeSpec<T> {
    fn scale(&self) -> T {
        LatticeSpec::scale(self)
    }

    fn hamiltonian(&self, gamma: T) -> ComplexMatrix<T> {
        self.hamiltonian_at(gamma)
    }
}

/// The stored strength is the impurity strength per unit `gamma`.
impl<T: Real> GainFamily<T> for ScalarLatticeSpec<T> {
    fn scale(&self) -> T {
        ScalarLatticeSpec::scale(self)
    }

    fn hamiltonian(&self, gamma: T) -> ComplexMatrix<T> {
        self.hamiltonian_with(gamma * self.strength())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ThresholdOptions<T> {
    /// Bisection stops once `upper - lower <= tolerance`.
    pub tolerance: T,
    /// First trial for the broken side; doubled until broken.
    pub initial_upper: T,
    /// Largest gain tried while bracketing.
    pub bracket_cap: T,
    /// Spectrum counts as real while `max |Im e| <= reality_tolerance`.
    pub reality_tolerance: T,
    pub solver: EigenSolver,
}

impl<T: Real> ThresholdOptions<T> {
    /// Defaults in units of `scale`: tolerance `1e-4`, initial upper `1/2`,
    /// cap `8`, reality tolerance `1e-8`.
    pub fn for_scale(scale: T) -> Self {
        Self {
            tolerance: T::lit(1e-4) * scale,
            initial_upper: T::half() * scale,
            bracket_cap: T::lit(8.0) * scale,
            reality_tolerance: T::lit(DEFAULT_REALITY_TOLERANCE) * scale,
            solver: EigenSolver::default(),
        }
    }

    pub fn with_tolerance(self, tolerance: T) -> Self {
        Self { tolerance, ..self }
    }

    fn validate(&self) -> Result<()> {
        for v in [self.tolerance, self.initial_upper, self.reality_tolerance] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidTolerance(v.to_f64_lossy()));
            }
        }
        if !(self.bracket_cap > T::zero()) {
            return Err(Error::InvalidTolerance(self.bracket_cap.to_f64_lossy()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdStatus {
    Converged,
    /// Bracket converged, but the validation scan found a broken point below it.
    NonMonotone,
    /// No broken spectrum up to the bracket cap (e.g. a Hermitian ray).
    NoUpperBracket,
    /// Broken already at zero gain.
    AlwaysBroken,
    /// The eigensolver failed; only produced by sweeps, which record rather than abort.
    NoConvergence,
}

impl ThresholdStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ThresholdStatus::Converged => "converged",
            ThresholdStatus::NonMonotone => "non-monotone",
            ThresholdStatus::NoUpperBracket => "no-upper-bracket",
            ThresholdStatus::AlwaysBroken => "always-broken",
            ThresholdStatus::NoConvergence => "no-convergence",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult<T> {
    /// Bracket midpoint; `+inf` without an upper bracket, `0` when always broken.
    pub gamma_pt: T,
    /// Largest gain seen unbroken.
    pub lower: T,
    /// Smallest gain seen broken.
    pub upper: T,
    pub tolerance: T,
    pub evaluations: usize,
    pub status: ThresholdStatus,
}

impl<T: Real> ThresholdResult<T> {
    /// Threshold when a bracket was found.
    pub fn value(&self) -> Option<T> {
        matches!(self.status, ThresholdStatus::Converged | ThresholdStatus::NonMonotone).then_some(self.gamma_pt)
    }

    /// Like [`value`](Self::value) but a missing upper bracket counts as infinite.
    pub fn value_or_infinite(&self) -> Option<T> {
        match self.status {
            ThresholdStatus::NoUpperBracket => Some(T::infinity()),
            _ => self.value(),
        }
    }
}

struct Indicator<'a, T, F> {
    family: &'a F,
    opts: &'a ThresholdOptions<T>,
    evaluations: usize,
}

impl<T: Real, F: GainFamily<T>> Indicator<'_, T, F> {
    fn broken(&mut self, gamma: T) -> Result<bool> {
        self.evaluations += 1;
        let eigs = self.opts.solver.eigenvalues(&self.family.hamiltonian(gamma))?;
        Ok(classify_spectrum(&eigs, self.opts.reality_tolerance)?.phase == Phase::Broken)
    }
}

/// Locates the smallest gain along the family at which the spectrum turns complex.
///
/// Doubles the trial gain from `initial_upper` until the spectrum breaks (or
/// the cap is passed), bisects to `tolerance`, then scans
/// [`VALIDATION_POINTS`] evenly spaced gains in `[0, lower]` and reports
/// [`ThresholdStatus::NonMonotone`] if any of them is broken.
pub fn find_threshold<T: Real, F: GainFamily<T>>(family: &F, opts: &ThresholdOptions<T>) -> Result<ThresholdResult<T>> {
    opts.validate()?;
    let mut ind = Indicator { family, opts, evaluations: 0 };
    let result = |lower, upper, gamma_pt, status, evaluations| ThresholdResult {
        gamma_pt,
        lower,
        upper,
        tolerance: opts.tolerance,
        evaluations,
        status,
    };

    if ind.broken(T::zero())? {
        return Ok(result(T::zero(), T::zero(), T::zero(), ThresholdStatus::AlwaysBroken, ind.evaluations));
    }

    let cap = opts.bracket_cap * (T::one() + T::lit(1e-12));
    let mut lower = T::zero();
    let mut upper = opts.initial_upper;
    loop {
        if upper > cap {
            let inf = T::infinity();
            return Ok(result(lower, inf, inf, ThresholdStatus::NoUpperBracket, ind.evaluations));
        }
        if ind.broken(upper)? {
            break;
        }
        lower = upper;
        upper = upper * T::two();
    }

    while upper - lower > opts.tolerance {
        let mid = (lower + upper) * T::half();
        if ind.broken(mid)? {
            upper = mid;
        } else {
            lower = mid;
        }
    }

    let mut status = ThresholdStatus::Converged;
    let last = T::from_usize_lossy(VALIDATION_POINTS - 1);
    for i in 0..VALIDATION_POINTS {
        let gamma = lower * T::from_usize_lossy(i) / last;
        if ind.broken(gamma)? {
            status = ThresholdStatus::NonMonotone;
            break;
        }
    }
    Ok(result(lower, upper, (lower + upper) * T::half(), status, ind.evaluations))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectorThreshold<T> {
    pub basis: SectorBasis,
    pub symmetric: ThresholdResult<T>,
    pub antisymmetric: ThresholdResult<T>,
    /// Smaller of the two sector thresholds; a Hermitian sector counts as `+inf`.
    pub gamma_pt: T,
}

/// Threshold of a decomposable lattice as the smaller of its two sector thresholds.
pub fn sector_threshold_min<T: Real>(
    spec: &LatticeSpec<T>,
    ray: &GainRay<T>,
    opts: &ThresholdOptions<T>,
) -> Result<SectorThreshold<T>> {
    let unit = ray.apply(spec)?.with_gain_scale(T::one())?;
    let sectors = decompose(&unit)?;
    let (s, a) = rayon::join(
        || find_threshold(&sectors.symmetric, opts),
        || find_threshold(&sectors.antisymmetric, opts),
    );
    let (symmetric, antisymmetric) = (s?, a?);
    let pick = |r: &ThresholdResult<T>| r.value_or_infinite().unwrap_or(T::zero());
    Ok(SectorThreshold {
        basis: sectors.basis,
        gamma_pt: pick(&symmetric).min(pick(&antisymmetric)),
        symmetric,
        antisymmetric,
    })
}
