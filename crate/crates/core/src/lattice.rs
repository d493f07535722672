//! Full pseudospin lattice: problem definition, Hamiltonian assembly and
//! symmetry checks.
//!
//! Basis state `(site k, pseudospin sigma)` with `k` 1-based occupies row
//! `2 (k - 1)` for `sigma = +` and `2 (k - 1) + 1` for `sigma = -`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::profile::{Boundary, TunnelingProfile};
use crate::scalar::Real;
use crate::spin::SpinMatrix;

/// Validates an impurity site against an `sites`-site lattice.
pub(crate) fn check_site(sites: usize, m: usize) -> Result<()> {
    if sites % 2 == 1 && m == (sites + 1) / 2 {
        return Err(Error::CenterImpurity { m });
    }
    let max = sites / 2;
    if m < 1 || m > max {
        return Err(Error::ImpurityOutOfRange { m, max });
    }
    Ok(())
}

/// Mirror site `N + 1 - m`.
pub fn mirror_site(sites: usize, m: usize) -> usize {
    sites + 1 - m
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec<T> {
    profile: TunnelingProfile<T>,
    impurity_site: usize,
    gain: SpinMatrix<T>,
    gain_scale: T,
}

impl<T: Real> LatticeSpec<T> {
    /// `+i gain_scale * gain` sits at site `impurity_site`, its negative at the mirror site.
    pub fn new(profile: TunnelingProfile<T>, impurity_site: usize, gain: SpinMatrix<T>, gain_scale: T) -> Result<Self> {
        check_site(profile.sites(), impurity_site)?;
        SpinMatrix::new(gain.s, gain.x, gain.z)?;
        check_gain_scale(gain_scale)?;
        Ok(Self { profile, impurity_site, gain, gain_scale })
    }

    pub fn profile(&self) -> &TunnelingProfile<T> {
        &self.profile
    }

    pub fn sites(&self) -> usize {
        self.profile.sites()
    }

    pub fn boundary(&self) -> Boundary {
        self.profile.boundary()
    }

    pub fn impurity_site(&self) -> usize {
        self.impurity_site
    }

    pub fn mirror_site(&self) -> usize {
        mirror_site(self.sites(), self.impurity_site)
    }

    pub fn gain(&self) -> SpinMatrix<T> {
        self.gain
    }

    pub fn gain_scale(&self) -> T {
        self.gain_scale
    }

    pub fn with_gain_scale(&self, gain_scale: T) -> Result<Self> {
        check_gain_scale(gain_scale)?;
        Ok(Self { gain_scale, ..self.clone() })
    }

    pub fn with_impurity_site(&self, m: usize) -> Result<Self> {
        check_site(self.sites(), m)?;
        Ok(Self { impurity_site: m, ..self.clone() })
    }

    pub fn with_gain(&self, gain: SpinMatrix<T>) -> Result<Self> {
        SpinMatrix::new(gain.s, gain.x, gain.z)?;
        Ok(Self { gain, ..self.clone() })
    }

    /// Energy unit: the largest bond coefficient.
    pub fn scale(&self) -> T {
        self.profile.scale()
    }

    pub fn dimension(&self) -> usize {
        2 * self.sites()
    }

    /// Hamiltonian with the gain scale overridden.
    pub(crate) fn hamiltonian_at(&self, gain_scale: T) -> ComplexMatrix<T> {
        let n = self.sites();
        let mut h = ComplexMatrix::zeros(2 * n);
        for (i, bond) in self.profile.bonds().iter().enumerate() {
            let (a, b) = (i, (i + 1) % n);
            let hop = bond.scale(-T::one()).complex_entries();
            h.add_block(2 * a, 2 * b, hop);
            h.add_block(2 * b, 2 * a, hop);
        }
        let g = self.gain.scale(gain_scale).entries();
        let i_times = |sign: T| {
            let mut block = [[Complex::new(T::zero(), T::zero()); 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    block[r][c] = Complex::new(T::zero(), sign * g[r][c]);
                }
            }
            block
        };
        h.add_block(2 * (self.impurity_site - 1), 2 * (self.impurity_site - 1), i_times(T::one()));
        let mb = self.mirror_site();
        h.add_block(2 * (mb - 1), 2 * (mb - 1), i_times(-T::one()));
        h
    }
}

fn check_gain_scale<T: Real>(gain_scale: T) -> Result<()> {
    if !gain_scale.is_finite() || gain_scale < T::zero() {
        return Err(Error::NegativeGain(gain_scale.to_f64_lossy()));
    }
    Ok(())
}

/// Single-particle `2N x 2N` matrix of `H_0 + V`.
///
/// Hopping blocks `-T(k)` couple sites `k` and `k + 1` in both directions
/// (the periodic closing bond couples `N` and `1`); `+i gamma Gamma` is added to
/// the diagonal block of site `m` and `-i gamma Gamma` to that of `N + 1 - m`.
pub fn assemble_hamiltonian<T: Real>(spec: &LatticeSpec<T>) -> ComplexMatrix<T> {
    spec.hamiltonian_at(spec.gain_scale())
}

/// `P conj(H) P == H` entrywise, where `P` reverses the site order and acts
/// trivially on the `dof` local states.
pub fn check_pt_symmetry_local<T: Real>(h: &ComplexMatrix<T>, sites: usize, dof: usize) -> Result<bool> {
    let expected = sites * dof;
    if h.dim() != expected {
        return Err(Error::DimensionMismatch { expected, got: h.dim() });
    }
    let parity = |i: usize| (sites - 1 - i / dof) * dof + i % dof;
    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(4.0)) * h.max_norm();
    for i in 0..expected {
        for j in 0..expected {
            if (h[(parity(i), parity(j))].conj() - h[(i, j)]).norm() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// PT check for a pseudospin Hamiltonian of dimension `2 sites`.
pub fn check_pt_symmetry<T: Real>(h: &ComplexMatrix<T>, sites: usize) -> Result<bool> {
    check_pt_symmetry_local(h, sites, 2)
}

/// Every bond and the gain matrix commute with `tau_x`, i.e. the lattice is
/// invariant under exchanging the two pseudospin labels.
pub fn is_exchange_symmetric<T: Real>(spec: &LatticeSpec<T>) -> bool {
    spec.profile().bonds().iter().all(SpinMatrix::commutes_with_tau_x) && spec.gain().commutes_with_tau_x()
}
