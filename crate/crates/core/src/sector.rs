//! Reduction of a pseudospin lattice to two uncoupled scalar lattices.
//!
//! When every bond and the gain matrix commute with `tau_x`, the symmetric /
//! antisymmetric combinations `f +- g` decouple: sector S sees bonds `t_s + t_d`
//! and impurity `gamma_s + gamma_d`, sector A sees `t_s - t_d` and
//! `gamma_s - gamma_d`. When all matrices are already diagonal the pseudospin
//! basis itself splits the problem.

use num_complex::Complex;

use crate::eigen::EigenSolver;
use crate::error::{Error, Result};
use crate::lattice::{assemble_hamiltonian, check_site, mirror_site, LatticeSpec};
use crate::matrix::ComplexMatrix;
use crate::profile::{Boundary, TunnelingProfile};
use crate::scalar::Real;
use crate::spectrum::multiset_distance;
use crate::spin::SpinMatrix;

/// Spinless lattice: `-t_k` hopping, `+i strength` at `m`, `-i strength` at `N + 1 - m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarLatticeSpec<T> {
    sites: usize,
    boundary: Boundary,
    bonds: Vec<T>,
    impurity_site: usize,
    strength: T,
}

impl<T: Real> ScalarLatticeSpec<T> {
    pub fn new(sites: usize, boundary: Boundary, bonds: Vec<T>, impurity_site: usize, strength: T) -> Result<Self> {
        if sites < 2 {
            return Err(Error::TooFewSites(sites));
        }
        let expected = boundary.bond_count(sites);
        if bonds.len() != expected {
            return Err(Error::BadLength { expected, got: bonds.len() });
        }
        if bonds.iter().any(|t| !t.is_finite()) || !strength.is_finite() {
            return Err(Error::NonFinite("scalar lattice"));
        }
        for k in 1..=(sites - 1) / 2 {
            let (a, b) = (bonds[k - 1], bonds[sites - k - 1]);
            let tol = T::epsilon() * T::lit(16.0) * T::one().max(a.abs()).max(b.abs());
            if (a - b).abs() > tol {
                return Err(Error::NonParitySymmetric { bond: k, mirror: sites - k });
            }
        }
        check_site(sites, impurity_site)?;
        Ok(Self { sites, boundary, bonds, impurity_site, strength })
    }

    /// Uniform open chain.
    pub fn chain(sites: usize, t: T, impurity_site: usize, strength: T) -> Result<Self> {
        if sites < 2 {
            return Err(Error::TooFewSites(sites));
        }
        Self::new(sites, Boundary::Open, vec![t; sites - 1], impurity_site, strength)
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn bonds(&self) -> &[T] {
        &self.bonds
    }

    pub fn impurity_site(&self) -> usize {
        self.impurity_site
    }

    pub fn strength(&self) -> T {
        self.strength
    }

    pub fn with_strength(&self, strength: T) -> Self {
        Self { strength, ..self.clone() }
    }

    pub fn with_impurity_site(&self, m: usize) -> Result<Self> {
        check_site(self.sites, m)?;
        Ok(Self { impurity_site: m, ..self.clone() })
    }

    pub fn scale(&self) -> T {
        self.bonds.iter().fold(T::zero(), |acc, t| acc.max(t.abs()))
    }

    pub(crate) fn hamiltonian_with(&self, strength: T) -> ComplexMatrix<T> {
        let n = self.sites;
        let mut h = ComplexMatrix::zeros(n);
        for (i, &t) in self.bonds.iter().enumerate() {
            let j = (i + 1) % n;
            h[(i, j)] += Complex::new(-t, T::zero());
            h[(j, i)] += Complex::new(-t, T::zero());
        }
        let m = self.impurity_site - 1;
        let mb = mirror_site(n, self.impurity_site) - 1;
        h[(m, m)] += Complex::new(T::zero(), strength);
        h[(mb, mb)] += Complex::new(T::zero(), -strength);
        h
    }
}

pub fn assemble_scalar_hamiltonian<T: Real>(spec: &ScalarLatticeSpec<T>) -> ComplexMatrix<T> {
    spec.hamiltonian_with(spec.strength)
}

/// Fixed single-site unitary that block-diagonalizes the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorBasis {
    /// `(f + g, f - g)`: every matrix commutes with `tau_x`.
    Exchange,
    /// `(f, g)`: every matrix is already diagonal (no `tau_x` content).
    Pseudospin,
}

impl SectorBasis {
    pub fn as_str(self) -> &'static str {
        match self {
            SectorBasis::Exchange => "exchange",
            SectorBasis::Pseudospin => "pseudospin",
        }
    }
}

/// Basis in which the lattice splits, or `None` when it mixes `tau_x` and `tau_z`.
/// The pseudospin basis is reported whenever every matrix is diagonal.
pub fn decomposition_basis<T: Real>(spec: &LatticeSpec<T>) -> Option<SectorBasis> {
    let all = || spec.profile().bonds().iter().copied().chain(std::iter::once(spec.gain()));
    if all().all(|m| m.is_diagonal()) {
        Some(SectorBasis::Pseudospin)
    } else if all().all(|m| m.commutes_with_tau_x()) {
        Some(SectorBasis::Exchange)
    } else {
        None
    }
}

/// The two uncoupled scalar lattices of a decomposable spec.
#[derive(Debug, Clone, PartialEq)]
pub struct Sectors<T> {
    pub basis: SectorBasis,
    /// Symmetric sector (`+` in the pseudospin basis).
    pub symmetric: ScalarLatticeSpec<T>,
    /// Antisymmetric sector (`-` in the pseudospin basis).
    pub antisymmetric: ScalarLatticeSpec<T>,
}

pub fn decompose<T: Real>(spec: &LatticeSpec<T>) -> Result<Sectors<T>> {
    let basis = decomposition_basis(spec).ok_or(Error::NotDecomposable)?;
    // eigenvalue of each 2x2 matrix on the sector's basis vector
    let project = |m: &SpinMatrix<T>, sign: T| match basis {
        SectorBasis::Exchange => m.s + sign * m.x,
        SectorBasis::Pseudospin => m.s + sign * m.z,
    };
    let sector = |sign: T| {
        let bonds = spec.profile().bonds().iter().map(|b| project(b, sign)).collect();
        let strength = spec.gain_scale() * project(&spec.gain(), sign);
        ScalarLatticeSpec::new(spec.sites(), spec.boundary(), bonds, spec.impurity_site(), strength)
    };
    Ok(Sectors { basis, symmetric: sector(T::one())?, antisymmetric: sector(-T::one())? })
}

/// Rebuilds the exchange-symmetric pseudospin lattice from its two sectors via
/// `t_s = (t^S + t^A) / 2`, `t_d = (t^S - t^A) / 2`. Impurity strengths become a
/// gain matrix at unit scale.
pub fn recompose<T: Real>(symmetric: &ScalarLatticeSpec<T>, antisymmetric: &ScalarLatticeSpec<T>) -> Result<LatticeSpec<T>> {
    if symmetric.sites != antisymmetric.sites {
        return Err(Error::DimensionMismatch { expected: symmetric.sites, got: antisymmetric.sites });
    }
    if symmetric.boundary != antisymmetric.boundary || symmetric.impurity_site != antisymmetric.impurity_site {
        return Err(Error::NotDecomposable);
    }
    let half = T::half();
    let bonds = symmetric
        .bonds
        .iter()
        .zip(&antisymmetric.bonds)
        .map(|(&s, &a)| SpinMatrix::tunneling((s + a) * half, (s - a) * half))
        .collect();
    let profile = TunnelingProfile::new(symmetric.sites, symmetric.boundary, bonds, true)?;
    let gain = SpinMatrix::new(
        (symmetric.strength + antisymmetric.strength) * half,
        (symmetric.strength - antisymmetric.strength) * half,
        T::zero(),
    )?;
    LatticeSpec::new(profile, symmetric.impurity_site, gain, T::one())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectSumReport<T> {
    pub basis: SectorBasis,
    pub full: Vec<Complex<T>>,
    pub symmetric: Vec<Complex<T>>,
    pub antisymmetric: Vec<Complex<T>>,
    pub max_multiset_distance: T,
    pub tolerance: T,
    pub pass: bool,
}

/// Compares the full `2N` spectrum with the union of both sector spectra.
pub fn verify_direct_sum<T: Real>(spec: &LatticeSpec<T>, tolerance: T, solver: &EigenSolver) -> Result<DirectSumReport<T>> {
    let sectors = decompose(spec)?;
    let full = solver.eigenvalues(&assemble_hamiltonian(spec))?;
    let (symmetric, antisymmetric) = rayon::join(
        || solver.eigenvalues(&assemble_scalar_hamiltonian(&sectors.symmetric)),
        || solver.eigenvalues(&assemble_scalar_hamiltonian(&sectors.antisymmetric)),
    );
    let (symmetric, antisymmetric) = (symmetric?, antisymmetric?);
    let union: Vec<_> = symmetric.iter().chain(&antisymmetric).copied().collect();
    let dist = multiset_distance(&full, &union);
    Ok(DirectSumReport {
        basis: sectors.basis,
        full,
        symmetric,
        antisymmetric,
        max_multiset_distance: dist,
        tolerance,
        pass: dist <= tolerance,
    })
}
