//! Parity-symmetric bond profiles.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spin::SpinMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    Periodic,
}

impl Boundary {
    /// Number of bonds on an `n`-site lattice.
    pub fn bond_count(self, n: usize) -> usize {
        match self {
            Boundary::Open => n - 1,
            Boundary::Periodic => n,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        }
    }
}

/// Family used to generate a [`TunnelingProfile`].
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind<T> {
    /// Every bond is `t_s * 1 + t_d * tau_x`.
    Constant { t_s: T, t_d: T },
    /// `t_s(k) = t0 * sqrt(k (N - k))`, `t_d(k) = t_d_fraction * t_s(k)`.
    ///
    /// On a periodic lattice the closing bond `N -> 1` evaluates to zero.
    ParabolicSqrt { t0: T, t_d_fraction: T },
    /// Full bond list. `force` lifts the `|x| <= s` restriction.
    Explicit { bonds: Vec<SpinMatrix<T>>, force: bool },
}

impl<T> ProfileKind<T> {
    pub fn label(&self) -> &'static str {
        match self {
            ProfileKind::Constant { .. } => "constant",
            ProfileKind::ParabolicSqrt { .. } => "parabolic-sqrt",
            ProfileKind::Explicit { .. } => "explicit",
        }
    }
}

/// Bond matrices of an `N`-site lattice. Bond `k` (1-based) couples sites `k`
/// and `k + 1`; on a periodic lattice bond `N` couples site `N` back to site 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TunnelingProfile<T> {
    sites: usize,
    boundary: Boundary,
    bonds: Vec<SpinMatrix<T>>,
}

impl<T: Real> TunnelingProfile<T> {
    /// Validates an explicit bond list.
    pub fn new(sites: usize, boundary: Boundary, bonds: Vec<SpinMatrix<T>>, force: bool) -> Result<Self> {
        if sites < 2 {
            return Err(Error::TooFewSites(sites));
        }
        let expected = boundary.bond_count(sites);
        if bonds.len() != expected {
            return Err(Error::BadLength { expected, got: bonds.len() });
        }
        for (i, b) in bonds.iter().enumerate() {
            SpinMatrix::new(b.s, b.x, b.z)?;
            if b.s < T::zero() {
                return Err(Error::NegativeAmplitude { bond: i + 1 });
            }
            if !force && b.x.abs() > b.s {
                return Err(Error::MixingExceedsPreserving { bond: i + 1 });
            }
        }
        check_parity(sites, &bonds)?;
        Ok(Self { sites, boundary, bonds })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn bonds(&self) -> &[SpinMatrix<T>] {
        &self.bonds
    }

    /// Largest bond coefficient; the natural energy unit of the lattice.
    pub fn scale(&self) -> T {
        self.bonds.iter().fold(T::zero(), |acc, b| acc.max(b.max_coefficient()))
    }
}

/// Bond `k` must equal bond `N - k` for `k = 1..N-1`. The periodic closing bond
/// maps onto itself under site reversal.
fn check_parity<T: Real>(sites: usize, bonds: &[SpinMatrix<T>]) -> Result<()> {
    let open = sites - 1;
    for k in 1..=open / 2 {
        let (a, b) = (&bonds[k - 1], &bonds[sites - k - 1]);
        let tol = T::epsilon() * T::lit(16.0) * T::one().max(a.max_coefficient()).max(b.max_coefficient());
        if !a.approx_eq(b, tol) {
            return Err(Error::NonParitySymmetric { bond: k, mirror: sites - k });
        }
    }
    Ok(())
}

pub fn build_profile<T: Real>(kind: &ProfileKind<T>, sites: usize, boundary: Boundary) -> Result<TunnelingProfile<T>> {
    if sites < 2 {
        return Err(Error::TooFewSites(sites));
    }
    let count = boundary.bond_count(sites);
    match kind {
        ProfileKind::Constant { t_s, t_d } => {
            if *t_s < T::zero() || *t_d < T::zero() {
                return Err(Error::NegativeAmplitude { bond: 1 });
            }
            TunnelingProfile::new(sites, boundary, vec![SpinMatrix::tunneling(*t_s, *t_d); count], false)
        }
        ProfileKind::ParabolicSqrt { t0, t_d_fraction } => {
            if *t0 < T::zero() || *t_d_fraction < T::zero() {
                return Err(Error::NegativeAmplitude { bond: 1 });
            }
            let n = T::from_usize_lossy(sites);
            let bonds = (1..=count)
                .map(|k| {
                    let k = T::from_usize_lossy(k);
                    let t_s = *t0 * (k * (n - k)).sqrt();
                    SpinMatrix::tunneling(t_s, *t_d_fraction * t_s)
                })
                .collect();
            TunnelingProfile::new(sites, boundary, bonds, false)
        }
        ProfileKind::Explicit { bonds, force } => TunnelingProfile::new(sites, boundary, bonds.clone(), *force),
    }
}
