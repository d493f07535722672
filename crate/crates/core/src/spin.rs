//! Real 2x2 pseudospin matrices in the {1, tau_x, tau_z} basis.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `s * 1 + x * tau_x + z * tau_z`, i.e. `[[s + z, x], [x, s - z]]`.
///
/// Used both for bond tunneling matrices `T(k)` and for the Hermitian gain
/// matrix whose `+i` / `-i` multiples sit on the impurity pair.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpinMatrix<T> {
    pub s: T,
    pub x: T,
    pub z: T,
}

impl<T: Real> SpinMatrix<T> {
    pub fn new(s: T, x: T, z: T) -> Result<Self> {
        if !(s.is_finite() && x.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite("spin matrix"));
        }
        Ok(Self { s, x, z })
    }

    /// Tunneling matrix `t_s * 1 + t_d * tau_x`.
    pub fn tunneling(t_s: T, t_d: T) -> Self {
        Self { s: t_s, x: t_d, z: T::zero() }
    }

    pub fn scalar(s: T) -> Self {
        Self { s, x: T::zero(), z: T::zero() }
    }

    pub fn identity() -> Self {
        Self::scalar(T::one())
    }

    pub fn tau_x() -> Self {
        Self { s: T::zero(), x: T::one(), z: T::zero() }
    }

    pub fn tau_z() -> Self {
        Self { s: T::zero(), x: T::zero(), z: T::one() }
    }

    pub fn scale(self, k: T) -> Self {
        Self { s: self.s * k, x: self.x * k, z: self.z * k }
    }

    /// Entries `[[a00, a01], [a10, a11]]` of the represented matrix.
    pub fn entries(&self) -> [[T; 2]; 2] {
        [[self.s + self.z, self.x], [self.x, self.s - self.z]]
    }

    pub fn complex_entries(&self) -> [[Complex<T>; 2]; 2] {
        let e = self.entries();
        let c = |v: T| Complex::new(v, T::zero());
        [[c(e[0][0]), c(e[0][1])], [c(e[1][0]), c(e[1][1])]]
    }

    /// Largest coefficient magnitude, `max(|s|, |x|, |z|)`.
    pub fn max_coefficient(&self) -> T {
        self.s.abs().max(self.x.abs()).max(self.z.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.s.is_zero() && self.x.is_zero() && self.z.is_zero()
    }

    /// Commutes with `tau_x`, so it is diagonal in the symmetric/antisymmetric basis.
    pub fn commutes_with_tau_x(&self) -> bool {
        self.z.is_zero()
    }

    /// Already diagonal in the pseudospin basis.
    pub fn is_diagonal(&self) -> bool {
        self.x.is_zero()
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        (self.s - other.s).abs() <= tol
            && (self.x - other.x).abs() <= tol
            && (self.z - other.z).abs() <= tol
    }
}
