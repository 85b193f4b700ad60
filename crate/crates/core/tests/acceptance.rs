//! Acceptance suite. Each test prints one `[PASS]` or `[FAIL]` line; run with
//! `cargo test -p frontpair --test acceptance -- --nocapture --test-threads=1`
//! to see them in order.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::time::{Duration, Instant};

use frontpair::cli_io::{parse_config, run_sample};
use frontpair::spectrum::{cluster_contains, uniform_grid};
use frontpair::{
    angular_spectrum, bogoliubov_coefficients, critical_occupancy, divergent_clusters, entanglement_entropy,
    log_negativity, mean_pair_number, mean_pair_number_closed_form, pair_distribution, resonance_angles,
    sample_pair_counts, scatter, BoundaryConfig, Branch, PointStatus, Regime, ThermalContext, WaveMode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Print the verdict line and fail the test unless both the check and the
/// runtime budget hold.
fn report(id: u32, what: &str, outcome: Result<(), String>, elapsed: Duration, budget_s: f64) {
    let secs = elapsed.as_secs_f64();
    let verdict = match (&outcome, secs < budget_s) {
        (Ok(()), true) => Ok(()),
        (Ok(()), false) => Err(format!("runtime {secs:.3} s over budget")),
        (Err(e), _) => Err(e.clone()),
    };
    match &verdict {
        Ok(()) => println!("[PASS] criterion {id}: {what} ({secs:.3} s, budget {budget_s} s)"),
        Err(e) => println!("[FAIL] criterion {id}: {what} ({secs:.3} s, budget {budget_s} s): {e}"),
    }
    if let Err(e) = verdict {
        panic!("criterion {id} failed: {e}");
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn glass_pair(beta: f64) -> BoundaryConfig {
    BoundaryConfig::new(beta, 1.1, 1.5, 1.5, 1.1).unwrap()
}

#[test]
fn criterion_1_identity_medium() {
    let start = Instant::now();
    let outcome = (|| {
        for beta in [0.1, 0.5, 0.9, 0.99] {
            let cfg = BoundaryConfig::new(beta, 1.3, 1.3, 1.3, 1.3).map_err(|e| e.to_string())?;
            let grid = uniform_grid(2000, 0.0, PI, false).map_err(|e| e.to_string())?;
            let pts = angular_spectrum(&cfg, &grid, &ThermalContext::vacuum(), 1e6).map_err(|e| e.to_string())?;
            check(pts.len() == 2000, || format!("beta {beta}: {} points", pts.len()))?;
            for p in &pts {
                check(
                    p.status == PointStatus::Ok && p.mean_pairs.abs() <= 1e-12 && p.e_vn.abs() <= 1e-12,
                    || format!("beta {beta}, theta {}: N = {}, E = {}, {}", p.theta_i, p.mean_pairs, p.e_vn, p.status.as_str()),
                )?;
            }
        }
        Ok(())
    })();
    report(1, "identity medium emits no pairs", outcome, start.elapsed(), 1.0);
}

#[test]
fn criterion_2_bogoliubov_consistency() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut accepted = 0;
    let mut outcome = Ok(());
    while accepted < 10_000 && outcome.is_ok() {
        let beta = rng.random_range(0.01..0.999);
        let n_i = rng.random_range(1.0..2.0);
        let n_t = rng.random_range(1.0..2.0);
        let n_r = rng.random_range(1.0..2.0);
        let theta = rng.random_range(0.0..PI);
        let cfg = BoundaryConfig::new(beta, n_i, n_t, n_r, n_i).unwrap();
        // draws on or between resonances have no finite squeezing
        let Ok(c) = bogoliubov_coefficients(theta, &cfg) else { continue };
        accepted += 1;
        outcome = (|| {
            let at = format!("beta {beta}, n = ({n_i}, {n_t}, {n_r}), theta {theta}");
            let unit = c.a_coef * c.a_coef - c.b_coef * c.b_coef;
            check((unit - 1.0).abs() <= 1e-10, || format!("{at}: A^2 - B^2 = {unit}"))?;
            let n = mean_pair_number(c.z).map_err(|e| e.to_string())?;
            let b2 = c.b_coef * c.b_coef;
            check((n - b2).abs() <= 1e-10 * n.max(b2), || format!("{at}: N = {n}, B^2 = {b2}"))?;
            let closed = mean_pair_number_closed_form(theta, &cfg).map_err(|e| e.to_string())?;
            check((n - closed).abs() <= 1e-9 * n.max(closed), || format!("{at}: N(z) = {n}, closed form {closed}"))
        })();
    }
    report(2, "Bogoliubov identities over 10^4 draws", outcome, start.elapsed(), 5.0);
}

#[test]
fn criterion_3_resonance_structure() {
    let start = Instant::now();
    let outcome = (|| {
        let grid = uniform_grid(10_000, 0.0, PI, false).map_err(|e| e.to_string())?;
        for (beta, regime, expect) in [(0.9, Regime::SingleResonance, 1), (0.99, Regime::DoubleResonance, 2)] {
            let cfg = glass_pair(beta);
            let report = resonance_angles(&cfg, 1e-13).map_err(|e| e.to_string())?;
            check(report.regime == regime, || format!("beta {beta}: regime {}", report.regime.as_str()))?;
            let pts = angular_spectrum(&cfg, &grid, &ThermalContext::vacuum(), 1e6).map_err(|e| e.to_string())?;
            let clusters = divergent_clusters(&pts);
            check(clusters.len() == expect, || format!("beta {beta}: {} clusters", clusters.len()))?;
            check(report.resonances.len() == expect, || format!("beta {beta}: {} roots", report.resonances.len()))?;
            for r in &report.resonances {
                let hits = clusters.iter().filter(|c| cluster_contains(&pts, c, r.theta_i, 2.0)).count();
                check(hits == 1, || format!("beta {beta}: root {} in {hits} clusters", r.theta_i))?;
            }
            if beta == 0.99 {
                let inc = report
                    .resonances
                    .iter()
                    .find(|r| r.branch == Branch::Incident)
                    .ok_or("no incident root")?;
                let want = (1.0f64 / 1.089).acos();
                check((inc.theta_i - want).abs() <= 1e-9, || format!("incident root {} vs {want}", inc.theta_i))?;
            }
        }
        Ok(())
    })();
    report(3, "resonance structure at beta 0.9 and 0.99", outcome, start.elapsed(), 10.0);
}

#[test]
fn criterion_4_entropy_oracle() {
    let start = Instant::now();
    let outcome = (|| {
        for z in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let q: f64 = z * z;
            // smallest n_max leaving less than 1e-12 in the tail
            let n_max = ((1e-12f64).ln() / q.ln()).ceil() as usize;
            let d = pair_distribution(z, n_max).map_err(|e| e.to_string())?;
            check(d.truncation_mass < 1e-12, || format!("z {z}: tail {}", d.truncation_mass))?;
            let shannon: f64 = d.probabilities.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum();
            let e = entanglement_entropy(mean_pair_number(z).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            check((e - shannon).abs() <= 1e-8, || format!("z {z}: {e} vs {shannon}"))?;
        }
        Ok(())
    })();
    report(4, "entropy matches Shannon entropy of pair law", outcome, start.elapsed(), 1.0);
}

#[test]
fn criterion_5_thermal_criticality() {
    let start = Instant::now();
    let outcome = (|| {
        for z in [0.3, 0.5, 0.9] {
            let n_c = critical_occupancy(z).map_err(|e| e.to_string())?;
            let want = z / (1.0 - z);
            check((n_c - want).abs() <= 1e-12 * want, || format!("z {z}: n_c {n_c} vs {want}"))?;
            let below = log_negativity(&ThermalContext::new(n_c * (1.0 - 1e-6)).unwrap(), z).map_err(|e| e.to_string())?;
            let above = log_negativity(&ThermalContext::new(n_c * (1.0 + 1e-6)).unwrap(), z).map_err(|e| e.to_string())?;
            check(below > 0.0, || format!("z {z}: E_N below n_c = {below}"))?;
            check(above == 0.0, || format!("z {z}: E_N above n_c = {above}"))?;
        }
        let e = log_negativity(&ThermalContext::vacuum(), 0.5).map_err(|e| e.to_string())?;
        check((e - 3f64.ln()).abs() <= 1e-12, || format!("E_N(0, 0.5) = {e}"))
    })();
    report(5, "critical thermal occupancy", outcome, start.elapsed(), 1.0);
}

#[test]
fn criterion_6_sampler_statistics() {
    let start = Instant::now();
    let outcome = (|| {
        let z = FRAC_1_SQRT_2;
        let count = 100_000usize;
        let draws = sample_pair_counts(z, 42, count).map_err(|e| e.to_string())?;
        let q = z * z;
        let mean = draws.iter().sum::<u64>() as f64 / count as f64;
        let sigma = q.sqrt() / (1.0 - q);
        let se = sigma / (count as f64).sqrt();
        check((mean - 1.0).abs() < 3.0 * se, || format!("mean {mean}, 3 se = {}", 3.0 * se))?;

        // bins 0..=k while the expected count stays >= 5, then one tail bin
        let mut expected = Vec::new();
        let mut p = 1.0 - q;
        while count as f64 * p * q >= 5.0 {
            expected.push(count as f64 * p);
            p *= q;
        }
        let k = expected.len();
        expected.push(count as f64 * q.powi(k as i32));
        let mut observed = vec![0.0; k + 1];
        for &d in &draws {
            observed[(d as usize).min(k)] += 1.0;
        }
        let stat: f64 = observed.iter().zip(&expected).map(|(o, e)| (o - e) * (o - e) / e).sum();
        let critical = ChiSquared::new(k as f64).unwrap().inverse_cdf(0.999);
        check(stat < critical, || format!("chi-square {stat:.3} >= {critical:.3} with {k} dof"))?;

        let cfg = parse_config(r#"{"beta": 0.9, "n_i": 1.1, "n_t": 1.5, "n_r": 1.5, "n_a": 1.1, "seed": 42, "z": 0.7071067811865476}"#)
            .map_err(|e| e.to_string())?;
        let a = run_sample(&cfg, None, count).map_err(|e| e.to_string())?;
        let b = run_sample(&cfg, None, count).map_err(|e| e.to_string())?;
        check(a.as_bytes() == b.as_bytes(), || "sampler output differs between runs".into())
    })();
    report(6, "geometric sampler mean, chi-square and reproducibility", outcome, start.elapsed(), 5.0);
}

#[test]
fn criterion_7_time_refraction_limit() {
    let start = Instant::now();
    let outcome = (|| {
        let cfg = glass_pair(1e-12);
        for k in 1..=1000 {
            let theta = PI * k as f64 / 1001.0;
            let inc = WaveMode::incident(1.0, theta, 1.1).map_err(|e| e.to_string())?;
            let (t, r, a) = scatter(&inc, &cfg).map_err(|e| e.to_string())?;
            // at rest the transmitted wave keeps k, the reversed waves carry -k
            for (m, sign) in [(t, 1.0), (r, -1.0), (a, -1.0)] {
                let err = ((m.k_par - sign * inc.k_par).powi(2) + (m.k_perp - sign * inc.k_perp).powi(2)).sqrt();
                check(err <= 1e-9 * inc.magnitude, || {
                    format!("theta {theta}, {}: error {err}", m.branch.as_str())
                })?;
            }
        }
        Ok(())
    })();
    report(7, "beta -> 0 reproduces time refraction", outcome, start.elapsed(), 1.0);
}

#[test]
fn criterion_8_divergence_growth_below_incident_root() {
    let start = Instant::now();
    let outcome = (|| {
        let cfg = glass_pair(0.99);
        let report = resonance_angles(&cfg, 1e-14).map_err(|e| e.to_string())?;
        let root = report
            .resonances
            .iter()
            .find(|r| r.branch == Branch::Incident)
            .ok_or("no incident root")?
            .theta_i;
        let mut prev = (0.0, 0.0);
        for delta in [1e-2, 1e-3, 1e-4] {
            let theta = root - delta;
            let n = mean_pair_number_closed_form(theta, &cfg)
                .map_err(|e| format!("delta {delta}: theta {theta} gives {e}"))?;
            let e = entanglement_entropy(n).map_err(|e| format!("delta {delta}: {e}"))?;
            check(n > prev.0 && e > prev.1, || format!("delta {delta}: N {n}, E {e} after {prev:?}"))?;
            prev = (n, e);
        }
        Ok(())
    })();
    report(8, "pairs and entropy grow approaching the incident root from below", outcome, start.elapsed(), 1.0);
}
