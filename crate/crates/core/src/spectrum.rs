//! PT-phase classification of complex spectra.

use std::cmp::Ordering;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;

/// Default reality tolerance relative to the lattice energy scale.
pub const DEFAULT_REALITY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Entirely real spectrum.
    Unbroken,
    /// At least one complex-conjugate pair.
    Broken,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Unbroken => "unbroken",
            Phase::Broken => "broken",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    /// Sorted by `(re, im)`.
    pub eigenvalues: Vec<Complex<T>>,
    pub max_abs_imag: T,
    pub phase: Phase,
    /// Distance of the multiset from its own complex conjugate.
    pub pairing_defect: T,
}

impl<T: Real> Spectrum<T> {
    pub fn is_unbroken(&self) -> bool {
        self.phase == Phase::Unbroken
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Total order on `(re, im)`; NaNs sort last.
pub fn cmp_re_im<T: Real>(a: &Complex<T>, b: &Complex<T>) -> Ordering {
    let key = |x: T, y: T| x.partial_cmp(&y).unwrap_or_else(|| x.is_nan().cmp(&y.is_nan()));
    key(a.re, b.re).then_with(|| key(a.im, b.im))
}

pub fn sort_re_im<T: Real>(values: &mut [Complex<T>]) {
    values.sort_by(cmp_re_im);
}

/// Max distance under sort-then-greedy nearest pairing of two multisets.
///
/// Both inputs are sorted by `(re, im)`; each element of `a` in turn claims the
/// nearest unclaimed element of `b`. Returns infinity when sizes differ.
pub fn multiset_distance<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    if a.len() != b.len() {
        return T::infinity();
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    sort_re_im(&mut a);
    sort_re_im(&mut b);
    let mut taken = vec![false; b.len()];
    let mut worst = T::zero();
    for x in &a {
        let mut best: Option<(usize, T)> = None;
        for (j, y) in b.iter().enumerate() {
            if taken[j] {
                continue;
            }
            let d = (x - y).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        if let Some((j, d)) = best {
            taken[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}

pub fn pairing_defect<T: Real>(values: &[Complex<T>]) -> T {
    let conj: Vec<_> = values.iter().map(|z| z.conj()).collect();
    multiset_distance(values, &conj)
}

/// Classifies a spectrum as unbroken iff `max |Im e| <= reality_tolerance`.
pub fn classify_spectrum<T: Real>(eigs: &[Complex<T>], reality_tolerance: T) -> Result<Spectrum<T>> {
    if !(reality_tolerance > T::zero()) {
        return Err(Error::InvalidTolerance(reality_tolerance.to_f64_lossy()));
    }
    let mut eigenvalues = eigs.to_vec();
    sort_re_im(&mut eigenvalues);
    let max_abs_imag = eigenvalues.iter().fold(T::zero(), |acc, z| acc.max(z.im.abs()));
    let phase = if max_abs_imag <= reality_tolerance { Phase::Unbroken } else { Phase::Broken };
    let pairing_defect = pairing_defect(&eigenvalues);
    Ok(Spectrum { eigenvalues, max_abs_imag, phase, pairing_defect })
}

/// `||M v - e v|| / (||M|| ||v||)` with Frobenius `||M||`.
pub fn residual_check<T: Real>(m: &ComplexMatrix<T>, eigenvalue: Complex<T>, v: &[Complex<T>]) -> Result<T> {
    if v.len() != m.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), got: v.len() });
    }
    let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    if vnorm.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mnorm = m.frobenius_norm();
    let mv = m.mul_vec(v);
    let r = mv.iter().zip(v).map(|(a, b)| (a - b * eigenvalue).norm_sqr()).sum::<T>().sqrt();
    if mnorm.is_zero() {
        return Ok(r / vnorm);
    }
    Ok(r / (mnorm * vnorm))
}
