//! Threshold sweeps over impurity positions.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{check_site, LatticeSpec};
use crate::profile::Boundary;
use crate::scalar::Real;
use crate::sector::ScalarLatticeSpec;
use crate::spin::SpinMatrix;
use crate::threshold::{find_threshold, GainFamily, GainRay, ThresholdOptions, ThresholdResult, ThresholdStatus};

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseRow<T> {
    pub m: usize,
    /// `m / N`.
    pub mu: T,
    pub gamma_pt: T,
    pub status: ThresholdStatus,
    pub evaluations: usize,
}

impl<T: Real> PhaseRow<T> {
    fn from_result(m: usize, sites: usize, r: Result<ThresholdResult<T>>) -> Self {
        let mu = T::from_usize_lossy(m) / T::from_usize_lossy(sites);
        match r {
            Ok(r) => Self { m, mu, gamma_pt: r.gamma_pt, status: r.status, evaluations: r.evaluations },
            Err(_) => Self { m, mu, gamma_pt: T::nan(), status: ThresholdStatus::NoConvergence, evaluations: 0 },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramMetadata<T> {
    pub sites: usize,
    pub boundary: Boundary,
    /// Profile family label, e.g. `constant`.
    pub profile: String,
    pub t_d_over_t_s: Option<T>,
    pub direction: SpinMatrix<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagram<T> {
    pub metadata: DiagramMetadata<T>,
    /// Strictly increasing in `m`.
    pub rows: Vec<PhaseRow<T>>,
}

impl<T: Real> PhaseDiagram<T> {
    /// Mean threshold over rows that converged.
    pub fn mean_threshold(&self) -> Option<T> {
        let vals: Vec<T> = self.rows.iter().filter(|r| r.gamma_pt.is_finite()).map(|r| r.gamma_pt).collect();
        (!vals.is_empty()).then(|| vals.iter().copied().sum::<T>() / T::from_usize_lossy(vals.len()))
    }
}

/// Sorted, de-duplicated impurity sites, each admissible for `sites`.
fn normalize_sites(sites: usize, ms: &[usize]) -> Result<Vec<usize>> {
    let mut ms = ms.to_vec();
    ms.sort_unstable();
    ms.dedup();
    for &m in &ms {
        check_site(sites, m)?;
    }
    Ok(ms)
}

/// Runs one threshold search per site, in parallel on `workers` threads. A
/// failed eigensolve becomes a row status instead of aborting the sweep.
pub fn sweep<T, F, G>(sites: usize, ms: &[usize], make: G, opts: &ThresholdOptions<T>, workers: usize) -> Result<Vec<PhaseRow<T>>>
where
    T: Real,
    F: GainFamily<T>,
    G: Fn(usize) -> Result<F> + Sync,
{
    let ms = normalize_sites(sites, ms)?;
    // construction errors are configuration errors; surface them before any work
    let families = ms.iter().map(|&m| make(m)).collect::<Result<Vec<F>>>()?;
    let run = |(m, family): (&usize, &F)| PhaseRow::from_result(*m, sites, find_threshold(family, opts));
    if workers <= 1 {
        return Ok(ms.iter().zip(&families).map(run).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::WorkerPool(e.to_string()))?;
    Ok(pool.install(|| ms.par_iter().zip(families.par_iter()).map(run).collect()))
}

/// Threshold versus impurity site for a pseudospin lattice along `ray`.
pub fn phase_diagram<T: Real>(
    base: &LatticeSpec<T>,
    ms: &[usize],
    ray: &GainRay<T>,
    opts: &ThresholdOptions<T>,
    workers: usize,
) -> Result<PhaseDiagram<T>> {
    let directed = ray.apply(base)?;
    let rows = sweep(base.sites(), ms, |m| directed.with_impurity_site(m), opts, workers)?;
    let bonds = base.profile().bonds();
    let ratio = bonds.first().filter(|b| b.s > T::zero()).map(|b| b.x / b.s);
    Ok(PhaseDiagram {
        metadata: DiagramMetadata {
            sites: base.sites(),
            boundary: base.boundary(),
            profile: "unspecified".into(),
            t_d_over_t_s: ratio,
            direction: ray.direction(),
        },
        rows,
    })
}

/// Same sweep for a spinless lattice; the base strength is the impurity per unit gain.
pub fn scalar_phase_diagram<T: Real>(
    base: &ScalarLatticeSpec<T>,
    ms: &[usize],
    opts: &ThresholdOptions<T>,
    workers: usize,
) -> Result<PhaseDiagram<T>> {
    let rows = sweep(base.sites(), ms, |m| base.with_impurity_site(m), opts, workers)?;
    Ok(PhaseDiagram {
        metadata: DiagramMetadata {
            sites: base.sites(),
            boundary: base.boundary(),
            profile: "scalar".into(),
            t_d_over_t_s: None,
            direction: SpinMatrix::scalar(base.strength()),
        },
        rows,
    })
}

/// All admissible impurity sites `1..=floor(N/2)`.
pub fn all_sites(sites: usize) -> Vec<usize> {
    (1..=sites / 2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{build_profile, ProfileKind};

    fn base(n: usize, t_d: f64) -> LatticeSpec<f64> {
        let p = build_profile(&ProfileKind::Constant { t_s: 1.0, t_d }, n, Boundary::Open).unwrap();
        LatticeSpec::new(p, 1, SpinMatrix::tau_z(), 0.0).unwrap()
    }

    #[test]
    fn rows_sorted_and_deduplicated() {
        let d = phase_diagram(&base(8, 0.2), &[3, 1, 3, 2], &GainRay::tau_z(), &ThresholdOptions::for_scale(1.0), 2).unwrap();
        let ms: Vec<_> = d.rows.iter().map(|r| r.m).collect();
        assert_eq!(ms, vec![1, 2, 3]);
        assert_eq!(d.rows[1].mu, 2.0 / 8.0);
        assert_eq!(d.metadata.t_d_over_t_s, Some(0.2));
    }

    #[test]
    fn out_of_range_site_rejected() {
        let r = phase_diagram(&base(8, 0.0), &[1, 5], &GainRay::tau_z(), &ThresholdOptions::for_scale(1.0), 1);
        assert_eq!(r.unwrap_err(), Error::ImpurityOutOfRange { m: 5, max: 4 });
    }

    #[test]
    fn worker_count_does_not_change_rows() {
        let opts = ThresholdOptions::for_scale(1.0);
        let one = phase_diagram(&base(10, 0.4), &all_sites(10), &GainRay::tau_z(), &opts, 1).unwrap();
        let four = phase_diagram(&base(10, 0.4), &all_sites(10), &GainRay::tau_z(), &opts, 4).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn hermitian_ray_rows_keep_status() {
        let scalar = ScalarLatticeSpec::chain(6, 1.0f64, 1, 0.0).unwrap();
        let d = scalar_phase_diagram(&scalar, &all_sites(6), &ThresholdOptions::for_scale(1.0), 1).unwrap();
        assert_eq!(d.rows.len(), 3);
        assert!(d.rows.iter().all(|r| r.status == ThresholdStatus::NoUpperBracket));
        assert_eq!(d.mean_threshold(), None);
    }
}
