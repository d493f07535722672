//! Dense eigensolver for general complex matrices.
//!
//! Householder reduction to upper Hessenberg form followed by single-shift
//! complex QR iteration with Wilkinson shifts and deflation. Eigenvectors are
//! recovered from the Schur form by back substitution.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;

pub const DEFAULT_MAX_DIMENSION: usize = 4096;

/// Eigenvalues together with unit-norm right eigenvectors (`vectors[i]` pairs with `values[i]`).
#[derive(Debug, Clone)]
pub struct EigenPairs<T> {
    pub values: Vec<Complex<T>>,
    pub vectors: Vec<Vec<Complex<T>>>,
}

#[derive(Debug, Clone, Copy)]
pub struct EigenSolver {
    pub max_dimension: usize,
    /// Total QR sweeps allowed is `sweeps_per_eigenvalue * max(10, d)`.
    pub sweeps_per_eigenvalue: usize,
}

impl Default for EigenSolver {
    fn default() -> Self {
        Self { max_dimension: DEFAULT_MAX_DIMENSION, sweeps_per_eigenvalue: 30 }
    }
}

impl EigenSolver {
    pub fn eigenvalues<T: Real>(&self, m: &ComplexMatrix<T>) -> Result<Vec<Complex<T>>> {
        let mut work = self.prepare(m, false)?;
        work.schur(self.sweeps_per_eigenvalue)?;
        Ok(work.diagonal())
    }

    pub fn eigenpairs<T: Real>(&self, m: &ComplexMatrix<T>) -> Result<EigenPairs<T>> {
        let mut work = self.prepare(m, true)?;
        work.schur(self.sweeps_per_eigenvalue)?;
        let values = work.diagonal();
        let vectors = work.eigenvectors();
        Ok(EigenPairs { values, vectors })
    }

    fn prepare<T: Real>(&self, m: &ComplexMatrix<T>, want_vectors: bool) -> Result<Work<T>> {
        if m.dim() > self.max_dimension {
            return Err(Error::DimensionCap { dim: m.dim(), cap: self.max_dimension });
        }
        if !m.is_finite() {
            return Err(Error::NonFiniteMatrix);
        }
        let n = m.dim();
        let mut work = Work {
            n,
            a: m.as_slice().to_vec(),
            q: want_vectors.then(|| ComplexMatrix::identity(n).as_slice().to_vec()),
        };
        work.hessenberg();
        Ok(work)
    }
}

/// All eigenvalues of `m` with the default solver settings.
pub fn eigenvalues<T: Real>(m: &ComplexMatrix<T>) -> Result<Vec<Complex<T>>> {
    EigenSolver::default().eigenvalues(m)
}

pub fn eigenpairs<T: Real>(m: &ComplexMatrix<T>) -> Result<EigenPairs<T>> {
    EigenSolver::default().eigenpairs(m)
}

struct Work<T> {
    n: usize,
    a: Vec<Complex<T>>,
    /// Accumulated unitary similarity, present only when vectors are wanted.
    q: Option<Vec<Complex<T>>>,
}

#[inline]
fn l1<T: Real>(z: Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

#[inline]
fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

impl<T: Real> Work<T> {
    #[inline]
    fn at(&self, i: usize, j: usize) -> Complex<T> {
        self.a[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex<T> {
        &mut self.a[i * self.n + j]
    }

    fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.n).map(|i| self.at(i, i)).collect()
    }

    fn hessenberg(&mut self) {
        let n = self.n;
        let mut v = vec![zero::<T>(); n];
        for k in 0..n.saturating_sub(2) {
            let norm = (k + 1..n).map(|i| self.at(i, k).norm_sqr()).sum::<T>().sqrt();
            if norm.is_zero() {
                continue;
            }
            let x0 = self.at(k + 1, k);
            let phase = if x0.norm().is_zero() { Complex::new(T::one(), T::zero()) } else { x0 / x0.norm() };
            let alpha = -phase * norm;
            for i in 0..n {
                v[i] = if i > k { self.at(i, k) } else { zero() };
            }
            v[k + 1] -= alpha;
            let vn2 = v[k + 1..].iter().map(|z| z.norm_sqr()).sum::<T>();
            if vn2.is_zero() {
                continue;
            }
            let beta = T::two() / vn2;

            // left: A <- (I - beta v v^H) A
            for j in k..n {
                let s = (k + 1..n).fold(zero::<T>(), |acc, i| acc + v[i].conj() * self.at(i, j)) * beta;
                for i in k + 1..n {
                    let d = v[i] * s;
                    *self.at_mut(i, j) -= d;
                }
            }
            // right: A <- A (I - beta v v^H)
            for i in 0..n {
                let s = (k + 1..n).fold(zero::<T>(), |acc, j| acc + self.at(i, j) * v[j]) * beta;
                for j in k + 1..n {
                    let d = s * v[j].conj();
                    *self.at_mut(i, j) -= d;
                }
            }
            if let Some(q) = self.q.as_mut() {
                for i in 0..n {
                    let row = &mut q[i * n..(i + 1) * n];
                    let s = (k + 1..n).fold(zero::<T>(), |acc, j| acc + row[j] * v[j]) * beta;
                    for j in k + 1..n {
                        row[j] -= s * v[j].conj();
                    }
                }
            }
            *self.at_mut(k + 1, k) = alpha;
            for i in k + 2..n {
                *self.at_mut(i, k) = zero();
            }
        }
    }

    /// Reduces the Hessenberg matrix to upper triangular (Schur) form. When
    /// vectors are not wanted only the active diagonal block is updated.
    fn schur(&mut self, sweeps_per_eigenvalue: usize) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Ok(());
        }
        let want_full = self.q.is_some();
        let eps = T::epsilon();
        let fallback = self.a.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt().max(T::min_positive_value());
        let max_sweeps = sweeps_per_eigenvalue * n.max(10);
        let mut sweeps = 0usize;
        let mut its = 0usize;
        let mut hi = n;
        let mut rotations: Vec<(T, Complex<T>)> = Vec::with_capacity(n);

        while hi > 0 {
            let end = hi - 1;
            let mut lo = end;
            while lo > 0 {
                let sub = l1(self.at(lo, lo - 1));
                let mut d = l1(self.at(lo - 1, lo - 1)) + l1(self.at(lo, lo));
                if d.is_zero() {
                    d = fallback;
                }
                if sub <= eps * d {
                    *self.at_mut(lo, lo - 1) = zero();
                    break;
                }
                lo -= 1;
            }
            if lo == end {
                hi -= 1;
                its = 0;
                continue;
            }

            sweeps += 1;
            its += 1;
            if sweeps > max_sweeps {
                return Err(Error::NoConvergence { iterations: sweeps - 1 });
            }

            let shift = if its % 10 == 0 {
                self.at(end, end) + Complex::new(T::lit(0.75) * l1(self.at(end, end - 1)), T::zero())
            } else {
                self.wilkinson_shift(end)
            };

            let col_hi = if want_full { n } else { end + 1 };
            let row_lo = if want_full { 0 } else { lo };

            for k in lo..=end {
                *self.at_mut(k, k) -= shift;
            }
            rotations.clear();
            for k in lo..end {
                let (c, s) = givens(self.at(k, k), self.at(k + 1, k));
                for j in k..col_hi {
                    let x = self.at(k, j);
                    let y = self.at(k + 1, j);
                    *self.at_mut(k, j) = x.scale(c) + s * y;
                    *self.at_mut(k + 1, j) = -s.conj() * x + y.scale(c);
                }
                rotations.push((c, s));
            }
            for (offset, &(c, s)) in rotations.iter().enumerate() {
                let k = lo + offset;
                for i in row_lo..=(k + 1) {
                    let x = self.at(i, k);
                    let y = self.at(i, k + 1);
                    *self.at_mut(i, k) = x.scale(c) + y * s.conj();
                    *self.at_mut(i, k + 1) = -x * s + y.scale(c);
                }
                if let Some(q) = self.q.as_mut() {
                    for i in 0..n {
                        let x = q[i * n + k];
                        let y = q[i * n + k + 1];
                        q[i * n + k] = x.scale(c) + y * s.conj();
                        q[i * n + k + 1] = -x * s + y.scale(c);
                    }
                }
            }
            for k in lo..=end {
                *self.at_mut(k, k) += shift;
            }
        }
        Ok(())
    }

    /// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
    fn wilkinson_shift(&self, end: usize) -> Complex<T> {
        let a = self.at(end - 1, end - 1);
        let b = self.at(end - 1, end);
        let c = self.at(end, end - 1);
        let d = self.at(end, end);
        let half = T::half();
        let mean = (a + d).scale(half);
        let diff = (a - d).scale(half);
        let disc = (diff * diff + b * c).sqrt();
        let (m1, m2) = (mean + disc, mean - disc);
        if (m1 - d).norm() <= (m2 - d).norm() {
            m1
        } else {
            m2
        }
    }

    /// Back substitution on the triangular Schur factor, mapped through `Q`.
    fn eigenvectors(&self) -> Vec<Vec<Complex<T>>> {
        let n = self.n;
        let q = self.q.as_ref().expect("eigenvectors need the accumulated transform");
        let tnorm = self.a.iter().fold(T::zero(), |acc, z| acc.max(z.norm()));
        let smin = (T::epsilon() * tnorm).max(T::min_positive_value());
        let big = T::lit(1e10);
        let mut out = Vec::with_capacity(n);
        let mut x = vec![zero::<T>(); n];
        for k in 0..n {
            let lambda = self.at(k, k);
            x.iter_mut().for_each(|z| *z = zero());
            x[k] = Complex::new(T::one(), T::zero());
            for i in (0..k).rev() {
                let sum = (i + 1..=k).fold(zero::<T>(), |acc, j| acc + self.at(i, j) * x[j]);
                let mut denom = self.at(i, i) - lambda;
                if denom.norm() < smin {
                    denom = Complex::new(smin, T::zero());
                }
                x[i] = -sum / denom;
                let mag = x[i].norm();
                if mag > big {
                    let inv = T::one() / mag;
                    x[i..=k].iter_mut().for_each(|z| *z = z.scale(inv));
                }
            }
            let mut v: Vec<Complex<T>> = (0..n)
                .map(|i| (0..=k).fold(zero::<T>(), |acc, j| acc + q[i * n + j] * x[j]))
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
            if norm > T::zero() {
                v.iter_mut().for_each(|z| *z = z.unscale(norm));
            }
            out.push(v);
        }
        out
    }
}

/// Rotation `[[c, s], [-conj(s), c]]` with real `c` that zeroes `b` in `(a, b)`.
fn givens<T: Real>(a: Complex<T>, b: Complex<T>) -> (T, Complex<T>) {
    let na = a.norm();
    let nb = b.norm();
    if nb.is_zero() {
        return (T::one(), zero());
    }
    if na.is_zero() {
        return (T::zero(), b.conj().unscale(nb));
    }
    let r = na.hypot(nb);
    let phase = a.unscale(na);
    (na / r, (phase * b.conj()).unscale(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn sorted(mut v: Vec<Complex<f64>>) -> Vec<Complex<f64>> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    fn dimer(t: f64, g: f64) -> ComplexMatrix<f64> {
        ComplexMatrix::from_row_major(vec![c(0., g), c(-t, 0.), c(-t, 0.), c(0., -g)]).unwrap()
    }

    #[test]
    fn diagonal_matrix() {
        let m = ComplexMatrix::from_row_major(vec![c(1., 0.), c(0., 0.), c(0., 0.), c(0., 2.)]).unwrap();
        let e = sorted(eigenvalues(&m).unwrap());
        assert_eq!(e, vec![c(0., 2.), c(1., 0.)]);
    }

    #[test]
    fn dimer_unbroken() {
        let e = sorted(eigenvalues(&dimer(1.0, 0.5)).unwrap());
        let r = 0.75f64.sqrt();
        assert!((e[0] - c(-r, 0.)).norm() < 1e-14);
        assert!((e[1] - c(r, 0.)).norm() < 1e-14);
    }

    #[test]
    fn dimer_broken() {
        let mut e = eigenvalues(&dimer(1.0, 2.0)).unwrap();
        e.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        let r = 3f64.sqrt();
        assert!((e[0] - c(0., -r)).norm() < 1e-14);
        assert!((e[1] - c(0., r)).norm() < 1e-14);
    }

    #[test]
    fn empty_and_scalar() {
        assert!(eigenvalues(&ComplexMatrix::<f64>::zeros(0)).unwrap().is_empty());
        let m = ComplexMatrix::from_row_major(vec![c(3., -1.)]).unwrap();
        assert_eq!(eigenvalues(&m).unwrap(), vec![c(3., -1.)]);
    }

    #[test]
    fn zero_matrix() {
        let e = eigenvalues(&ComplexMatrix::<f64>::zeros(5)).unwrap();
        assert!(e.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn jordan_block_converges() {
        // nilpotent shift matrix: all eigenvalues zero, defective
        let m = ComplexMatrix::from_fn(6, |i, j| if j == i + 1 { c(1., 0.) } else { c(0., 0.) });
        let e = eigenvalues(&m).unwrap();
        assert!(e.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn permutation_cycle() {
        // cyclic shift: eigenvalues are the 5th roots of unity
        let n = 5;
        let m = ComplexMatrix::from_fn(n, |i, j| if j == (i + 1) % n { c(1., 0.) } else { c(0., 0.) });
        let e = eigenvalues(&m).unwrap();
        for k in 0..n {
            let w = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
            assert!(e.iter().any(|z| (z - w).norm() < 1e-12), "missing root {w}");
        }
    }

    #[test]
    fn eigenpair_residuals() {
        let n = 9;
        let m = ComplexMatrix::from_fn(n, |i, j| {
            let x = ((i * 7 + j * 3) % 11) as f64 / 11.0 - 0.5;
            let y = ((i * 5 + j * 2) % 13) as f64 / 13.0 - 0.5;
            c(x, y)
        });
        let pairs = eigenpairs(&m).unwrap();
        let scale = m.frobenius_norm();
        for (val, vec) in pairs.values.iter().zip(&pairs.vectors) {
            let mv = m.mul_vec(vec);
            let r = mv.iter().zip(vec).map(|(a, b)| (a - b * val).norm_sqr()).sum::<f64>().sqrt();
            assert!(r <= 1e-12 * scale, "residual {r}");
        }
    }

    #[test]
    fn rejects_non_finite_and_oversized() {
        let m = ComplexMatrix::from_row_major(vec![c(f64::NAN, 0.)]).unwrap();
        assert_eq!(eigenvalues(&m), Err(Error::NonFiniteMatrix));
        let solver = EigenSolver { max_dimension: 2, ..Default::default() };
        assert_eq!(
            solver.eigenvalues(&ComplexMatrix::<f64>::zeros(3)),
            Err(Error::DimensionCap { dim: 3, cap: 2 })
        );
    }

    #[test]
    fn sweep_cap_reports_no_convergence() {
        let n = 6;
        let m = ComplexMatrix::from_fn(n, |i, j| c(((i + 2 * j) % 5) as f64, (i as f64 - j as f64) * 0.1));
        let solver = EigenSolver { sweeps_per_eigenvalue: 0, ..Default::default() };
        assert!(matches!(solver.eigenvalues(&m), Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn f32_dimer() {
        let m = ComplexMatrix::from_row_major(vec![
            Complex::new(0.0f32, 0.5),
            Complex::new(-1.0, 0.0),
            Complex::new(-1.0, 0.0),
            Complex::new(0.0, -0.5),
        ])
        .unwrap();
        let e = eigenvalues(&m).unwrap();
        for z in e {
            assert!((z.re.abs() - 0.75f32.sqrt()).abs() < 1e-5);
            assert!(z.im.abs() < 1e-5);
        }
    }
}
