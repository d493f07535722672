//! Periodic lattice whose two arms between the impurity pair carry different,
//! constant tunneling matrices.

use crate::error::{Error, Result};
use crate::lattice::{check_site, mirror_site, LatticeSpec};
use crate::profile::{Boundary, TunnelingProfile};
use crate::scalar::Real;
use crate::spin::SpinMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct RingSpec<T> {
    sites: usize,
    impurity_site: usize,
    /// Bonds on the outer arm (through the closing bond `N -> 1`).
    outer: SpinMatrix<T>,
    /// Bonds strictly between `m` and `N + 1 - m`, in increasing site order.
    inner: SpinMatrix<T>,
}

impl<T: Real> RingSpec<T> {
    pub fn new(sites: usize, impurity_site: usize, outer: SpinMatrix<T>, inner: SpinMatrix<T>) -> Result<Self> {
        if sites < 3 {
            return Err(Error::TooFewSites(sites));
        }
        check_site(sites, impurity_site)?;
        for arm in [outer, inner] {
            if !arm.z.is_zero() {
                return Err(Error::NotDecomposable);
            }
            SpinMatrix::new(arm.s, arm.x, arm.z)?;
        }
        Ok(Self { sites, impurity_site, outer, inner })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn impurity_site(&self) -> usize {
        self.impurity_site
    }

    pub fn outer(&self) -> SpinMatrix<T> {
        self.outer
    }

    pub fn inner(&self) -> SpinMatrix<T> {
        self.inner
    }

    pub fn with_impurity_site(&self, m: usize) -> Result<Self> {
        Self::new(self.sites, m, self.outer, self.inner)
    }

    /// Bond `k` (1-based, coupling `k` and `k + 1`) is inner for `m <= k < N + 1 - m`.
    pub fn profile(&self) -> Result<TunnelingProfile<T>> {
        let mb = mirror_site(self.sites, self.impurity_site);
        let bonds = (1..=self.sites)
            .map(|k| if (self.impurity_site..mb).contains(&k) { self.inner } else { self.outer })
            .collect();
        TunnelingProfile::new(self.sites, Boundary::Periodic, bonds, true)
    }

    /// Pseudospin lattice with `gain` as the impurity direction at zero scale.
    pub fn lattice_spec(&self, gain: SpinMatrix<T>) -> Result<LatticeSpec<T>> {
        LatticeSpec::new(self.profile()?, self.impurity_site, gain, T::zero())
    }
}

/// `min(t0S - tbS, t0A - tbA)` with `t^{S,A} = s +- x` on each arm.
///
/// Refuses with [`Error::OutOfRegime`] when either difference is negative.
pub fn ring_threshold_formula<T: Real>(ring: &RingSpec<T>) -> Result<T> {
    let (o, b) = (ring.outer, ring.inner);
    let symmetric = (o.s + o.x) - (b.s + b.x);
    let antisymmetric = (o.s - o.x) - (b.s - b.x);
    if symmetric < T::zero() || antisymmetric < T::zero() {
        return Err(Error::OutOfRegime { symmetric: symmetric.to_f64_lossy(), antisymmetric: antisymmetric.to_f64_lossy() });
    }
    Ok(symmetric.min(antisymmetric))
}
