//! Acceptance criteria. Each test prints one `[PASS]` / `[FAIL]` line per
//! criterion (run with `--nocapture` to see them) and then asserts it.

use std::time::{Duration, Instant};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ptlattice_core::{
    all_sites, assemble_hamiltonian, assemble_scalar_hamiltonian, build_profile, check_pt_symmetry, classify_spectrum,
    decompose, eigenvalues, find_threshold, multiset_distance, phase_diagram, scalar_phase_diagram,
    sector_threshold_min, verify_direct_sum, Boundary, EigenSolver, GainRay, LatticeSpec, Phase, PhaseDiagram,
    ProfileKind, RingSpec, ScalarLatticeSpec, SpinMatrix, ThresholdOptions, ring_threshold_formula,
};

const BISECTION_TOL: f64 = 1e-4;

fn report(name: &str, pass: bool, detail: String) -> bool {
    println!("[{}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn constant_chain(n: usize, t_s: f64, t_d: f64, m: usize) -> LatticeSpec<f64> {
    let p = build_profile(&ProfileKind::Constant { t_s, t_d }, n, Boundary::Open).unwrap();
    LatticeSpec::new(p, m, SpinMatrix::tau_z(), 0.0).unwrap()
}

fn opts() -> ThresholdOptions<f64> {
    ThresholdOptions::for_scale(1.0).with_tolerance(BISECTION_TOL)
}

/// Parity-symmetric random bonds with `0 <= t_d <= t_s`.
fn random_profile(rng: &mut ChaCha8Rng, n: usize, boundary: Boundary) -> Vec<SpinMatrix<f64>> {
    let half: Vec<SpinMatrix<f64>> = (0..n / 2)
        .map(|_| {
            let s = rng.gen_range(0.3..1.5);
            SpinMatrix::tunneling(s, s * rng.gen_range(0.0..1.0))
        })
        .collect();
    let mut bonds: Vec<_> = (1..n).map(|k| half[k.min(n - k) - 1]).collect();
    if boundary == Boundary::Periodic {
        let s = rng.gen_range(0.3..1.5);
        bonds.push(SpinMatrix::tunneling(s, s * rng.gen_range(0.0..1.0)));
    }
    bonds
}

fn random_decomposable(rng: &mut ChaCha8Rng, max_sites: usize) -> LatticeSpec<f64> {
    let n = rng.gen_range(2..=max_sites);
    let boundary = if rng.gen_bool(0.5) { Boundary::Open } else { Boundary::Periodic };
    let bonds = random_profile(rng, n, boundary);
    let p = build_profile(&ProfileKind::Explicit { bonds, force: false }, n, boundary).unwrap();
    let m = rng.gen_range(1..=n / 2);
    let g_s = rng.gen_range(0.0..1.5);
    let g_d = g_s * rng.gen_range(0.0..1.0);
    LatticeSpec::new(p, m, SpinMatrix::tunneling(g_s, g_d), 1.0).unwrap()
}

#[test]
fn odd_lattice_edge_impurity() {
    let start = Instant::now();
    let spec = constant_chain(41, 1.0, 0.0, 1);
    let r = find_threshold(&GainRay::tau_z().apply(&spec).unwrap(), &opts()).unwrap();
    let elapsed = start.elapsed();
    let expected = (1.0f64 + 1.0 / 41.0).sqrt();
    let pass = (r.gamma_pt - expected).abs() <= 2e-3 && elapsed < Duration::from_secs(10);
    let ok = report(
        "odd-N edge impurity (N=41, m=1, tau_z)",
        pass,
        format!(
            "gamma_pt={:.6} expected sqrt(1+1/41)={expected:.6} |diff|={:.2e} tol=2e-3 runtime={elapsed:.2?}; \
             closed form for a 41-site chain is sqrt(1+2/(N-1))={:.6}",
            r.gamma_pt,
            (r.gamma_pt - expected).abs(),
            (1.0f64 + 2.0 / 40.0).sqrt()
        ),
    );
    assert!(ok);
}

#[test]
fn dimer_oracle() {
    let dimer = ScalarLatticeSpec::chain(2, 1.0f64, 1, 1.0).unwrap();
    let r = find_threshold(&dimer, &opts()).unwrap();
    let ok = report("dimer oracle", (r.gamma_pt - 1.0).abs() <= 1e-4, format!("gamma_pt={:.8} expected 1 tol=1e-4", r.gamma_pt));
    assert!(ok);
}

#[test]
fn direct_sum_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD1_5EC7);
    let solver = EigenSolver::default();
    let mut worst = 0.0f64;
    let mut both = [0usize; 2];
    for _ in 0..50 {
        let spec = random_decomposable(&mut rng, 16);
        both[(spec.boundary() == Boundary::Periodic) as usize] += 1;
        let r = verify_direct_sum(&spec, 1e-8, &solver).unwrap();
        worst = worst.max(r.max_multiset_distance);
    }
    let elapsed = start.elapsed();
    let ok = report(
        "direct-sum equivalence (50 random specs)",
        worst <= 1e-8 && elapsed < Duration::from_secs(30) && both.iter().all(|&c| c > 0),
        format!("max distance={worst:.2e} tol=1e-8 open/periodic={both:?} runtime={elapsed:.2?}"),
    );
    assert!(ok);
}

#[test]
fn threshold_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7A_E5);
    let o = opts();
    let mut worst = 0.0f64;
    let mut detail = Vec::new();
    for _ in 0..20 {
        let spec = random_decomposable(&mut rng, 16);
        let ray = GainRay::new(spec.gain()).unwrap_or_else(|_| GainRay::identity());
        let sectors = sector_threshold_min(&spec, &ray, &o).unwrap();
        let full = find_threshold(&ray.apply(&spec).unwrap(), &o).unwrap();
        let full_value = full.value_or_infinite().unwrap();
        let diff = if full_value.is_infinite() && sectors.gamma_pt.is_infinite() { 0.0 } else { (full_value - sectors.gamma_pt).abs() };
        if diff > worst {
            worst = diff;
            detail = vec![format!("N={} m={} {:?}", spec.sites(), spec.impurity_site(), spec.boundary())];
        }
    }
    let ok = report(
        "threshold consistency (20 random decomposable specs)",
        worst <= 2e-4,
        format!("max |full - min(sector)|={worst:.2e} tol=2e-4 {}", detail.join("")),
    );
    assert!(ok);
}

#[test]
fn equal_gain_components() {
    let o = opts();
    let mut worst = 0.0f64;
    let mut max_imag = 0.0f64;
    for (n, t_d, m) in [(12usize, 0.3, 2usize), (9, 0.6, 4), (16, 0.1, 1)] {
        let p = build_profile(&ProfileKind::Constant { t_s: 1.0, t_d }, n, Boundary::Open).unwrap();
        let spec = LatticeSpec::new(p, m, SpinMatrix::identity(), 0.0).unwrap();
        let ray = GainRay::new(SpinMatrix::tunneling(1.0, 1.0)).unwrap();
        let full = find_threshold(&ray.apply(&spec).unwrap(), &o).unwrap();
        let sectors = sector_threshold_min(&spec, &ray, &o).unwrap();
        worst = worst.max((full.gamma_pt - sectors.symmetric.gamma_pt).abs());
        // sector A at the full threshold and beyond stays Hermitian
        for g in [full.gamma_pt, 2.0 * full.gamma_pt] {
            let a = decompose(&ray.apply(&spec).unwrap().with_gain_scale(g).unwrap()).unwrap().antisymmetric;
            let s = classify_spectrum(&eigenvalues(&assemble_scalar_hamiltonian(&a)).unwrap(), 1e-8).unwrap();
            max_imag = max_imag.max(s.max_abs_imag);
        }
    }
    let ok = report(
        "gamma_s = gamma_d (sector S decides)",
        worst <= 2e-4 && max_imag <= 1e-10,
        format!("max |full - S|={worst:.2e} tol=2e-4; sector A max|Im|={max_imag:.1e} tol=1e-10"),
    );
    assert!(ok);
}

#[test]
fn ring_distance_independence() {
    let o = opts();
    let base = RingSpec::new(12, 1, SpinMatrix::scalar(1.0), SpinMatrix::scalar(0.5)).unwrap();
    let formula = ring_threshold_formula(&base).unwrap();
    let thresholds: Vec<f64> = all_sites(12)
        .into_iter()
        .map(|m| {
            let spec = base.with_impurity_site(m).unwrap().lattice_spec(SpinMatrix::identity()).unwrap();
            find_threshold(&spec, &o).unwrap().gamma_pt
        })
        .collect();
    let lo = thresholds.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = thresholds.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = thresholds.iter().sum::<f64>() / thresholds.len() as f64;
    let ok = report(
        "ring distance independence (N=12, t0=1, tb=0.5)",
        hi - lo < 2e-4 && (mean - formula).abs() <= 1e-2,
        format!("spread={:.2e} tol=2e-4; bisection mean={mean:.6} formula={formula} tol=1e-2", hi - lo),
    );
    assert!(ok);
}

#[test]
fn u_curve_maximum() {
    let o = opts();
    let mut ok = true;
    for (t_s, t_d) in [(1.0, 0.0), (1.0, 0.4)] {
        let spec = {
            let p = build_profile(&ProfileKind::Constant { t_s, t_d }, 20, Boundary::Open).unwrap();
            LatticeSpec::new(p, 1, SpinMatrix::identity(), 0.0).unwrap()
        };
        let d = phase_diagram(&spec, &all_sites(20), &GainRay::identity(), &o, 4).unwrap();
        let max = d.rows.iter().map(|r| r.gamma_pt).fold(f64::NEG_INFINITY, f64::max);
        ok &= report(
            &format!("U-curve maximum (N=20, t_s={t_s}, t_d={t_d})"),
            (max - (t_s - t_d)).abs() <= 2e-3,
            format!("max gamma_pt={max:.6} expected {} tol=2e-3", t_s - t_d),
        );
    }
    assert!(ok);
}

fn mixing_panel(n: usize) -> (Vec<PhaseDiagram<f64>>, PhaseDiagram<f64>) {
    let o = opts();
    let diagrams = [0.0, 0.4, 0.7]
        .iter()
        .map(|&t_d| phase_diagram(&constant_chain(n, 1.0, t_d, 1), &all_sites(n), &GainRay::tau_z(), &o, 4).unwrap())
        .collect();
    let scalar = scalar_phase_diagram(&ScalarLatticeSpec::chain(n, 1.0, 1, 1.0).unwrap(), &all_sites(n), &o, 4).unwrap();
    (diagrams, scalar)
}

#[test]
fn site_dependence_under_mixing() {
    let start = Instant::now();
    let mut ok = true;
    for n in [40usize, 41] {
        let (diagrams, scalar) = mixing_panel(n);
        let pointwise = diagrams[0]
            .rows
            .iter()
            .zip(&scalar.rows)
            .map(|(a, b)| (a.gamma_pt - b.gamma_pt).abs())
            .fold(0.0f64, f64::max);
        ok &= report(
            &format!("tau_z sweep N={n}: t_d=0 equals scalar chain"),
            pointwise <= 1e-4,
            format!("max pointwise diff={pointwise:.2e} tol=1e-4"),
        );
        let means: Vec<f64> = diagrams.iter().map(|d| d.mean_threshold().unwrap()).collect();
        let decreasing = means.windows(2).all(|w| w[1] < w[0]);
        ok &= report(
            &format!("tau_z sweep N={n}: mean gamma_pt strictly decreases over t_d=0,0.4,0.7"),
            decreasing,
            format!("means={:.6?}", means),
        );
    }
    let elapsed = start.elapsed();
    ok &= report("tau_z sweep runtime (4 workers)", elapsed < Duration::from_secs(600), format!("{elapsed:.2?} limit 600s"));
    assert!(ok);
}

#[test]
fn invariant_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1A_7A);
    let (mut conj, mut trace, mut herm, mut bip) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut pt_ok = true;
    for _ in 0..200 {
        let n = rng.gen_range(2..=16);
        let boundary = if rng.gen_bool(0.5) { Boundary::Open } else { Boundary::Periodic };
        let bonds = random_profile(&mut rng, n, boundary);
        let p = build_profile(&ProfileKind::Explicit { bonds, force: false }, n, boundary).unwrap();
        let gain = SpinMatrix::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)).unwrap();
        let spec = LatticeSpec::new(p, rng.gen_range(1..=n / 2), gain, rng.gen_range(0.0..2.0)).unwrap();
        let h = assemble_hamiltonian(&spec);
        pt_ok &= check_pt_symmetry(&h, n).unwrap();
        let e = eigenvalues(&h).unwrap();
        let conjugated: Vec<_> = e.iter().map(|z| z.conj()).collect();
        conj = conj.max(multiset_distance(&e, &conjugated));
        let sum: Complex<f64> = e.iter().sum();
        trace = trace.max((sum - h.trace()).norm());
        let e0 = eigenvalues(&assemble_hamiltonian(&spec.with_gain_scale(0.0).unwrap())).unwrap();
        herm = herm.max(e0.iter().fold(0.0, |a, z| a.max(z.im.abs())));
        if boundary == Boundary::Open {
            let neg: Vec<_> = e.iter().map(|z| -z).collect();
            bip = bip.max(multiset_distance(&e, &neg));
        }
    }
    let ok = report(
        "invariant suite (200 random Hamiltonians)",
        pt_ok && conj <= 1e-8 && trace <= 1e-8 && herm <= 1e-10 && bip <= 1e-8,
        format!(
            "PT identity={pt_ok} conj={conj:.1e}(1e-8) trace={trace:.1e}(1e-8) gamma=0 imag={herm:.1e}(1e-10) bipartite={bip:.1e}(1e-8)"
        ),
    );
    assert!(ok);
}

#[test]
fn gain_bound_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0_0D);
    let mut unbroken = Vec::new();
    let mut checked = 0usize;
    for _ in 0..20 {
        let n = rng.gen_range(2..=20);
        let t_d = rng.gen_range(0.0..1.0);
        let sum = (1.0 + t_d) * (1.0 + rng.gen_range(1e-3..0.5));
        let f: f64 = rng.gen_range(0.0..1.0);
        let g_d = sum * f / (1.0 + f);
        let g_s = sum - g_d;
        for m in all_sites(n) {
            let p = build_profile(&ProfileKind::Constant { t_s: 1.0, t_d }, n, Boundary::Open).unwrap();
            let spec = LatticeSpec::new(p, m, SpinMatrix::tunneling(g_s, g_d), 1.0).unwrap();
            let s = classify_spectrum(&eigenvalues(&assemble_hamiltonian(&spec)).unwrap(), 1e-8).unwrap();
            checked += 1;
            if s.phase == Phase::Unbroken {
                unbroken.push(format!("(N={n} m={m} ratio={:.4})", sum / (1.0 + t_d)));
            }
        }
    }
    let ok = report(
        "gain bound gamma_s+gamma_d > t_s+t_d => broken (20 configs, all m)",
        unbroken.is_empty(),
        format!("{checked} cases, unbroken: {}", if unbroken.is_empty() { "none".to_string() } else { unbroken.join(" ") }),
    );
    assert!(ok);
}
