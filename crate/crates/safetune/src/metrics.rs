//! Episode cost, constraints and data-driven task parameters.
//!
//! All spectral quantities use one fixed convention: un-normalized forward
//! transform, magnitude spectrum, series mean removed, no taper. Thresholds
//! are calibrated under the same convention, so the convention itself is
//! arbitrary but must not change.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plant::{TrajectoryRecord, RADPS_TO_RPM, RAD_TO_DEG};

/// Floor used when a residual series is identically zero.
const TAU_LOG_FLOOR: f64 = 1e-12;

/// Metrics of one episode. Position errors are in millidegrees, `q1` in the
/// magnitude units of the transform convention above, `tau_b` in Nm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpisodeMetrics {
    /// Mean absolute position error [mdeg].
    pub f: f64,
    /// Peak torque spectrum magnitude inside the vibration window.
    pub q1: f64,
    /// Max absolute position error [mdeg].
    pub q2: f64,
    /// Inertia task parameter: log10 mean velocity-residual spectrum.
    pub tau_m: f64,
    /// Friction task parameter: mean applied torque [Nm].
    pub tau_b: f64,
}

impl EpisodeMetrics {
    /// Sentinel metrics for an aborted episode: everything unsafe.
    pub fn aborted() -> Self {
        Self {
            f: f64::INFINITY,
            q1: f64::INFINITY,
            q2: f64::INFINITY,
            tau_m: f64::INFINITY,
            tau_b: f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.f.is_finite() && self.q1.is_finite() && self.q2.is_finite()
    }
}

fn magnitude_spectrum(series: &[f64]) -> Vec<f64> {
    let n = series.len();
    let mean = series.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex<f64>> = series.iter().map(|&x| Complex::new(x - mean, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    buf.iter().map(|c| c.norm()).collect()
}

/// Mean absolute position tracking error in millidegrees.
pub fn cost_f(traj: &TrajectoryRecord) -> f64 {
    if traj.aborted || traj.is_empty() {
        return f64::INFINITY;
    }
    let n = traj.len();
    let sum: f64 = (0..n).map(|i| (traj.p_ref[i] - traj.p[i]).abs()).sum();
    sum / n as f64 * RAD_TO_DEG * 1e3
}

/// Max absolute position tracking error in millidegrees.
pub fn constraint_q2(traj: &TrajectoryRecord) -> f64 {
    if traj.aborted || traj.is_empty() {
        return f64::INFINITY;
    }
    (0..traj.len())
        .map(|i| (traj.p_ref[i] - traj.p[i]).abs())
        .fold(0.0_f64, f64::max)
        * RAD_TO_DEG
        * 1e3
}

/// Peak magnitude of the applied-torque spectrum restricted to
/// `window = [f_lo, f_hi]` in Hz (bin frequencies inclusive).
pub fn constraint_q1(traj: &TrajectoryRecord, window: [f64; 2]) -> Result<f64> {
    if traj.aborted {
        return Ok(f64::INFINITY);
    }
    let n = traj.len();
    if n < 2 {
        return Err(Error::Contract("q1 needs at least two samples".into()));
    }
    let nyquist = 0.5 / traj.dt;
    if window[0] >= window[1] || window[0] <= 0.0 || window[1] >= nyquist {
        return Err(Error::Config(format!(
            "q1 window [{}, {}] Hz must sit inside (0, {nyquist}) Hz",
            window[0], window[1]
        )));
    }
    let spectrum = magnitude_spectrum(&traj.torque_applied);
    let df = 1.0 / (n as f64 * traj.dt);
    let lo = (window[0] / df).ceil() as usize;
    let hi = (window[1] / df).floor() as usize;
    if lo > hi {
        return Err(Error::Config(format!(
            "q1 window [{}, {}] Hz contains no FFT bin (resolution {df} Hz)",
            window[0], window[1]
        )));
    }
    Ok(spectrum[lo..=hi.min(n / 2)].iter().fold(0.0_f64, |a, &b| a.max(b)))
}

/// Inertia task parameter: `log10` of the mean magnitude spectrum of the
/// velocity residual `v - kff*v_ref`, both in RPM.
pub fn tau_inertia(traj: &TrajectoryRecord) -> f64 {
    if traj.aborted || traj.is_empty() {
        return f64::INFINITY;
    }
    let residual: Vec<f64> = (0..traj.len())
        .map(|i| (traj.v[i] - traj.kff * traj.v_ref[i]) * RADPS_TO_RPM)
        .collect();
    let spectrum = magnitude_spectrum(&residual);
    let mean = spectrum.iter().sum::<f64>() / spectrum.len() as f64;
    mean.max(TAU_LOG_FLOOR).log10()
}

/// Friction task parameter: mean applied torque over the episode [Nm].
pub fn tau_friction(traj: &TrajectoryRecord) -> f64 {
    if traj.aborted || traj.is_empty() {
        return f64::INFINITY;
    }
    traj.torque_applied.iter().sum::<f64>() / traj.len() as f64
}

/// All metrics of one episode.
pub fn compute(traj: &TrajectoryRecord, q1_window: [f64; 2]) -> Result<EpisodeMetrics> {
    if traj.aborted {
        return Ok(EpisodeMetrics::aborted());
    }
    Ok(EpisodeMetrics {
        f: cost_f(traj),
        q1: constraint_q1(traj, q1_window)?,
        q2: constraint_q2(traj),
        tau_m: tau_inertia(traj),
        tau_b: tau_friction(traj),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn flat_traj(n: usize, dt: f64) -> TrajectoryRecord {
        TrajectoryRecord {
            p_ref: vec![0.0; n],
            v_ref: vec![0.0; n],
            p: vec![0.0; n],
            v: vec![0.0; n],
            torque_cmd: vec![0.0; n],
            torque_applied: vec![0.0; n],
            dt,
            kff: 1.0,
            aborted: false,
        }
    }

    #[test]
    fn perfect_tracking_costs_zero() {
        let t = flat_traj(256, 1e-3);
        assert_eq!(cost_f(&t), 0.0);
        assert_eq!(constraint_q2(&t), 0.0);
    }

    #[test]
    fn constant_offset_one_mdeg() {
        let mut t = flat_traj(500, 1e-3);
        let offset = 1e-3 / RAD_TO_DEG; // 1 mdeg in rad
        for p in &mut t.p {
            *p = -offset;
        }
        assert_relative_eq!(cost_f(&t), 1.0, max_relative = 1e-12);
        assert_relative_eq!(constraint_q2(&t), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn single_spike_sets_q2() {
        let mut t = flat_traj(500, 1e-3);
        t.p[123] = 5e-3 / RAD_TO_DEG;
        assert_relative_eq!(constraint_q2(&t), 5.0, max_relative = 1e-12);
        assert!(cost_f(&t) < constraint_q2(&t));
    }

    #[test]
    fn cost_matches_direct_summation() {
        let mut rng = crate::rng::stream(11, "metrics-test", 0);
        let mut t = flat_traj(777, 1e-3);
        for p in &mut t.p {
            *p = rng.random_range(-1e-3..1e-3);
        }
        let direct: f64 = t
            .p
            .iter()
            .zip(&t.p_ref)
            .map(|(p, r)| (r - p).abs())
            .sum::<f64>()
            / t.len() as f64
            * RAD_TO_DEG
            * 1e3;
        assert_abs_diff_eq!(cost_f(&t), direct, epsilon = 1e-12);
    }

    #[test]
    fn q1_of_bin_centered_sinusoid() {
        // Amplitude A at an exact bin frequency gives magnitude N*A/2.
        let n = 2000;
        let dt = 1e-3;
        let mut t = flat_traj(n, dt);
        let freq = 50.0; // bin 100, inside the default window
        let a = 0.25;
        for (i, x) in t.torque_applied.iter_mut().enumerate() {
            *x = a * (2.0 * std::f64::consts::PI * freq * (i as f64 * dt)).cos();
        }
        let q1 = constraint_q1(&t, [10.0, 100.0]).unwrap();
        assert_relative_eq!(q1, n as f64 * a / 2.0, max_relative = 1e-10);
    }

    #[test]
    fn q1_constant_torque_is_zero() {
        let mut t = flat_traj(512, 1e-3);
        for x in &mut t.torque_applied {
            *x = 2.5;
        }
        let q1 = constraint_q1(&t, [10.0, 100.0]).unwrap();
        assert_abs_diff_eq!(q1, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn q1_invariant_to_torque_offset() {
        let mut rng = crate::rng::stream(13, "metrics-test", 1);
        let mut t = flat_traj(640, 1e-3);
        for x in &mut t.torque_applied {
            *x = rng.random_range(-1.0..1.0);
        }
        let base = constraint_q1(&t, [10.0, 100.0]).unwrap();
        for x in &mut t.torque_applied {
            *x += 7.7;
        }
        let shifted = constraint_q1(&t, [10.0, 100.0]).unwrap();
        assert_relative_eq!(base, shifted, max_relative = 1e-9);
    }

    #[test]
    fn spectrum_matches_naive_dft() {
        // O(N^2) direct transform as the independent oracle.
        let n = 256;
        let mut rng = crate::rng::stream(17, "metrics-test", 2);
        let series: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let fast = magnitude_spectrum(&series);
        let mean = series.iter().sum::<f64>() / n as f64;
        for k in 0..n {
            let mut re = 0.0;
            let mut im = 0.0;
            for (i, &x) in series.iter().enumerate() {
                let angle = -2.0 * std::f64::consts::PI * (k * i) as f64 / n as f64;
                re += (x - mean) * angle.cos();
                im += (x - mean) * angle.sin();
            }
            let mag = (re * re + im * im).sqrt();
            assert_relative_eq!(fast[k], mag, max_relative = 1e-8, epsilon = 1e-8);
        }
    }

    #[test]
    fn q1_window_validation() {
        let t = flat_traj(100, 1e-3);
        assert!(constraint_q1(&t, [100.0, 10.0]).is_err());
        assert!(constraint_q1(&t, [0.0, 10.0]).is_err());
        assert!(constraint_q1(&t, [10.0, 600.0]).is_err());
    }

    #[test]
    fn tau_floor_on_zero_residual() {
        let t = flat_traj(256, 1e-3);
        assert_eq!(tau_inertia(&t), (1e-12_f64).log10());
    }

    #[test]
    fn tau_shifts_by_log10_2_when_residual_doubles() {
        let mut rng = crate::rng::stream(19, "metrics-test", 3);
        let mut t = flat_traj(400, 1e-3);
        for v in &mut t.v {
            *v = rng.random_range(-0.01..0.01);
        }
        let base = tau_inertia(&t);
        for v in &mut t.v {
            *v *= 2.0;
        }
        assert_relative_eq!(tau_inertia(&t) - base, 2.0_f64.log10(), epsilon = 1e-9);
    }

    #[test]
    fn tau_friction_cases() {
        let mut t = flat_traj(100, 1e-3);
        assert_eq!(tau_friction(&t), 0.0);
        for x in &mut t.torque_applied {
            *x = 1.9;
        }
        assert_relative_eq!(tau_friction(&t), 1.9, max_relative = 1e-12);
    }

    #[test]
    fn aborted_episode_gives_sentinels() {
        let mut t = flat_traj(100, 1e-3);
        t.aborted = true;
        let m = compute(&t, [10.0, 100.0]).unwrap();
        assert!(!m.is_finite());
        assert_eq!(cost_f(&t), f64::INFINITY);
        assert_eq!(constraint_q2(&t), f64::INFINITY);
    }

    #[test]
    fn mean_error_never_exceeds_max_error() {
        let mut rng = crate::rng::stream(23, "metrics-test", 4);
        for _ in 0..20 {
            let mut t = flat_traj(300, 1e-3);
            for p in &mut t.p {
                *p = rng.random_range(-1e-2..1e-2);
            }
            assert!(cost_f(&t) <= constraint_q2(&t) + 1e-15);
        }
    }
}
