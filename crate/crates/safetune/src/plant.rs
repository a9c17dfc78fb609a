//! Discrete-time simulation of a rotational axis drive under a three-loop
//! cascade controller.
//!
//! The linear part of the plant is a damped single mass, `G_v(s) = 1/(ms+b)`
//! from torque to angular velocity, integrated exactly per sample (zero-order
//! hold). A position-periodic cogging torque and zero-mean white torque noise
//! act as disturbances. The controller is a P position loop cascaded with a
//! PI velocity loop plus velocity feed-forward; it adds a cogging-compensation
//! estimate to its torque command.
//!
//! Internal state is SI (rad, rad/s, Nm). The controller-facing signals use
//! the drive's conventions: position errors in degrees, velocities in RPM.
//! `vel_loop_scale` (Nm per RPM of weighted velocity error) and `ti_unit_s`
//! (seconds per `Ti` unit) convert the dimensionless tuning gains to torque;
//! both are fixed config constants, chosen so that the default safe seed
//! `(15, 0.05, 3)` is comfortably stable while the most aggressive corner of
//! the tuning domain is not.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const RAD_TO_DEG: f64 = 180.0 / std::f64::consts::PI;
pub const RADPS_TO_RPM: f64 = 60.0 / (2.0 * std::f64::consts::PI);

/// The tunable controller gains. `kff` is scenario-controlled, not tuned.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControllerParams {
    /// Position loop gain [RPM/deg].
    pub kp: f64,
    /// Velocity loop gain (dimensionless; scaled by `vel_loop_scale`).
    pub kv: f64,
    /// Integral time constant in units of `ti_unit_s`.
    pub ti: f64,
    /// Velocity feed-forward gain.
    pub kff: f64,
}

impl ControllerParams {
    pub fn new(kp: f64, kv: f64, ti: f64) -> Self {
        Self {
            kp,
            kv,
            ti,
            kff: 1.0,
        }
    }

    pub fn with_kff(mut self, kff: f64) -> Self {
        self.kff = kff;
        self
    }

    /// The tuned dimensions as a point in the optimization domain.
    pub fn gains(&self) -> [f64; 3] {
        [self.kp, self.kv, self.ti]
    }

    pub fn from_gains(g: [f64; 3]) -> Self {
        Self::new(g[0], g[1], g[2])
    }
}

/// Truncated Fourier cogging model with one harmonic:
/// `f_c(p) = c1 + c2*p + c4*sin(2*pi*p/c3 + c5)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoggingParams {
    /// Average thrust torque [Nm].
    pub c1: f64,
    /// Gradient of the curve [Nm/rad].
    pub c2: f64,
    /// Dominant period (angular distance of a magnet pair) [rad].
    pub c3: f64,
    /// First-harmonic amplitude [Nm].
    pub c4: f64,
    /// First-harmonic phase [rad].
    pub c5: f64,
}

impl CoggingParams {
    pub fn nominal() -> Self {
        Self {
            c1: 1.78e-3,
            c2: 0.0295,
            c3: 0.372,
            c4: 8.99e-3,
            c5: 0.11,
        }
    }

    pub fn zero() -> Self {
        Self {
            c1: 0.0,
            c2: 0.0,
            c3: 1.0,
            c4: 0.0,
            c5: 0.0,
        }
    }

    pub fn torque(&self, p: f64) -> f64 {
        self.c1 + self.c2 * p + self.c4 * (2.0 * std::f64::consts::PI * p / self.c3 + self.c5).sin()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantConfig {
    /// Moment of inertia [kg m^2].
    pub inertia: f64,
    /// Rotational damping [kg m^2 / s].
    pub damping: f64,
    /// True cogging torque acting on the plant.
    pub cogging: CoggingParams,
    /// Cogging estimate the controller adds to its command.
    pub compensation: CoggingParams,
    /// Variance of the zero-mean white torque noise [Nm^2].
    pub torque_noise_variance: f64,
    /// Torque saturation [Nm].
    pub torque_limit: f64,
    /// Velocity limit [RPM]; reference profiles beyond it are rejected.
    pub velocity_limit_rpm: f64,
    /// Sample interval [s].
    pub dt: f64,
    /// Velocity-loop output scale [Nm/RPM].
    pub vel_loop_scale: f64,
    /// Seconds per `Ti` unit.
    pub ti_unit_s: f64,
}

impl Default for PlantConfig {
    fn default() -> Self {
        Self {
            inertia: 0.0191,
            damping: 30.08,
            cogging: CoggingParams::nominal(),
            compensation: CoggingParams::nominal(),
            torque_noise_variance: 6.09e-3,
            torque_limit: 3.48,
            velocity_limit_rpm: 50.0,
            dt: 1e-3,
            vel_loop_scale: 50.0,
            ti_unit_s: 0.01,
        }
    }
}

/// Point-to-point move: trapezoidal velocity profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceConfig {
    pub amplitude_deg: f64,
    pub cruise_rpm: f64,
    pub duration_s: f64,
    pub dt_s: f64,
    pub velocity_limit_rpm: f64,
}

impl Default for ReferenceConfig {
    fn default() -> Self {
        Self {
            amplitude_deg: 6.0,
            cruise_rpm: 0.625,
            duration_s: 2.0,
            dt_s: 1e-3,
            velocity_limit_rpm: 50.0,
        }
    }
}

/// Sampled reference trajectory, SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub p_ref: Vec<f64>,
    pub v_ref: Vec<f64>,
    pub dt: f64,
}

impl Reference {
    pub fn len(&self) -> usize {
        self.p_ref.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p_ref.is_empty()
    }
}

/// Builds the reference series. Samples are taken at `t_i = (i+1)*dt` so the
/// final sample lands exactly on `duration_s`, where the analytic position
/// equals the amplitude.
pub fn make_reference(cfg: &ReferenceConfig) -> Result<Reference> {
    if cfg.dt_s <= 0.0 || cfg.duration_s <= 0.0 {
        return Err(Error::Config("reference dt and duration must be positive".into()));
    }
    if cfg.cruise_rpm > cfg.velocity_limit_rpm {
        return Err(Error::Config(format!(
            "cruise velocity {} RPM exceeds the velocity limit {} RPM",
            cfg.cruise_rpm, cfg.velocity_limit_rpm
        )));
    }
    let n = (cfg.duration_s / cfg.dt_s).round() as usize;
    if cfg.amplitude_deg == 0.0 {
        return Ok(Reference {
            p_ref: vec![0.0; n],
            v_ref: vec![0.0; n],
            dt: cfg.dt_s,
        });
    }
    if cfg.amplitude_deg < 0.0 || cfg.cruise_rpm <= 0.0 {
        return Err(Error::Config("amplitude and cruise velocity must be nonnegative".into()));
    }
    let amp = cfg.amplitude_deg / RAD_TO_DEG;
    let v_c = cfg.cruise_rpm / RADPS_TO_RPM;
    let total = cfg.duration_s;
    // Trapezoid with equal ramps t_r: area = v_c * (total - t_r).
    let t_r = total - amp / v_c;
    if t_r <= 0.0 || t_r > total / 2.0 {
        return Err(Error::Config(format!(
            "no trapezoid with amplitude {} deg, cruise {} RPM, duration {} s \
             (need amplitude in [cruise*T/2, cruise*T))",
            cfg.amplitude_deg, cfg.cruise_rpm, cfg.duration_s
        )));
    }
    let mut p_ref = Vec::with_capacity(n);
    let mut v_ref = Vec::with_capacity(n);
    for i in 0..n {
        let t = (i + 1) as f64 * cfg.dt_s;
        let (p, v) = if t <= t_r {
            (0.5 * v_c * t * t / t_r, v_c * t / t_r)
        } else if t <= total - t_r {
            (0.5 * v_c * t_r + v_c * (t - t_r), v_c)
        } else if t < total {
            let s = total - t;
            (amp - 0.5 * v_c * s * s / t_r, v_c * s / t_r)
        } else {
            (amp, 0.0)
        };
        p_ref.push(p);
        v_ref.push(v);
    }
    Ok(Reference {
        p_ref,
        v_ref,
        dt: cfg.dt_s,
    })
}

/// One step of the exact zero-order-hold discretization of
/// `v' = (T - b v)/m`, `p' = v` with `T` held constant over `dt`.
pub fn zoh_step(inertia: f64, damping: f64, dt: f64, p: f64, v: f64, torque: f64) -> (f64, f64) {
    let lambda = damping / inertia;
    let a = (-lambda * dt).exp();
    let h = (1.0 - a) / lambda;
    let v_next = a * v + (1.0 - a) * torque / damping;
    let p_next = p + h * v + (dt - h) * torque / damping;
    (p_next, v_next)
}

/// Time series from one episode, SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    pub p_ref: Vec<f64>,
    pub v_ref: Vec<f64>,
    pub p: Vec<f64>,
    pub v: Vec<f64>,
    /// Controller torque command plus noise, before saturation [Nm].
    pub torque_cmd: Vec<f64>,
    /// Torque acting on the plant: saturated command minus true cogging [Nm].
    pub torque_applied: Vec<f64>,
    pub dt: f64,
    pub kff: f64,
    /// True when the state went non-finite and the episode was cut short.
    pub aborted: bool,
}

impl TrajectoryRecord {
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Writes one row per sample: `t,p_ref,v_ref,p,v,torque_cmd,torque_applied`.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# schema=trajectory-v1")?;
        writeln!(w, "t,p_ref,v_ref,p,v,torque_cmd,torque_applied")?;
        for i in 0..self.len() {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                (i + 1) as f64 * self.dt,
                self.p_ref[i],
                self.v_ref[i],
                self.p[i],
                self.v[i],
                self.torque_cmd[i],
                self.torque_applied[i]
            )?;
        }
        Ok(())
    }
}

/// Runs one episode of the cascade loop against the plant.
///
/// Per sample: position error (deg) feeds the P loop, whose output plus
/// velocity feed-forward forms the velocity command (RPM); the PI velocity
/// loop turns the weighted error into a torque command, adds the cogging
/// compensation estimate, picks up torque noise, saturates at the torque
/// limit (with the integrator frozen while saturated), and the true cogging
/// torque is subtracted before the ZOH plant update.
pub fn simulate(
    x: &ControllerParams,
    cfg: &PlantConfig,
    reference: &Reference,
    seed: u64,
) -> TrajectoryRecord {
    let n = reference.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, cfg.torque_noise_variance.sqrt()).expect("noise std is finite");

    let ti_s = x.ti * cfg.ti_unit_s;
    let mut p = 0.0_f64;
    let mut v = 0.0_f64;
    let mut integ = 0.0_f64;

    let mut rec = TrajectoryRecord {
        p_ref: reference.p_ref.clone(),
        v_ref: reference.v_ref.clone(),
        p: Vec::with_capacity(n),
        v: Vec::with_capacity(n),
        torque_cmd: Vec::with_capacity(n),
        torque_applied: Vec::with_capacity(n),
        dt: reference.dt,
        kff: x.kff,
        aborted: false,
    };

    for k in 0..n {
        let e_p_deg = (reference.p_ref[k] - p) * RAD_TO_DEG;
        let v_cmd_rpm = x.kp * e_p_deg + x.kff * reference.v_ref[k] * RADPS_TO_RPM;
        let e_v_rpm = v_cmd_rpm - v * RADPS_TO_RPM;

        let integ_candidate = integ + e_v_rpm * reference.dt;
        let t_cmd = x.kv * cfg.vel_loop_scale * (e_v_rpm + integ_candidate / ti_s);
        let t_ctrl = t_cmd + cfg.compensation.torque(p);
        let t_total = t_ctrl + noise.sample(&mut rng);

        let t_sat = if t_total.abs() <= cfg.torque_limit {
            integ = integ_candidate;
            t_total
        } else {
            t_total.clamp(-cfg.torque_limit, cfg.torque_limit)
        };
        let t_applied = t_sat - cfg.cogging.torque(p);

        let (p_next, v_next) = zoh_step(cfg.inertia, cfg.damping, reference.dt, p, v, t_applied);
        rec.p.push(p);
        rec.v.push(v);
        rec.torque_cmd.push(t_total);
        rec.torque_applied.push(t_applied);

        if !p_next.is_finite() || !v_next.is_finite() {
            rec.aborted = true;
            break;
        }
        p = p_next;
        v = v_next;
    }
    if rec.aborted {
        let n_done = rec.p.len();
        rec.p_ref.truncate(n_done);
        rec.v_ref.truncate(n_done);
    }
    rec
}

/// Disturbance schedules applied on top of a base plant configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scenario {
    Stationary,
    /// Moment of inertia toggles between `low` and `high` every `period`.
    InertiaSwitch { period: u64, low: f64, high: f64 },
    /// Damping grows linearly: `b(t) = b0 * (1 + t/divisor)`.
    DampingDrift { divisor: f64 },
    /// Feed-forward gain steps through `values`, one every `period`.
    KffSwitch { period: u64, values: Vec<f64> },
    /// Damping scaled by `factor` while `switch_at <= t < revert_at`.
    FrictionSwitch {
        factor: f64,
        switch_at: u64,
        revert_at: u64,
    },
}

impl Scenario {
    /// Scenario with the standard schedule for a given id.
    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "stationary" => Ok(Scenario::Stationary),
            "inertia-switch" => Ok(Scenario::InertiaSwitch {
                period: 100,
                low: 0.0191,
                high: 0.0382,
            }),
            "damping-drift" => Ok(Scenario::DampingDrift { divisor: 1000.0 }),
            "kff-switch" => Ok(Scenario::KffSwitch {
                period: 50,
                values: vec![1.0, 0.95, 1.05, 0.9, 1.1],
            }),
            "friction-switch" => Ok(Scenario::FrictionSwitch {
                factor: 1.3,
                switch_at: 100,
                revert_at: 200,
            }),
            other => Err(Error::Config(format!("unknown scenario id `{other}`"))),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            Scenario::Stationary => "stationary",
            Scenario::InertiaSwitch { .. } => "inertia-switch",
            Scenario::DampingDrift { .. } => "damping-drift",
            Scenario::KffSwitch { .. } => "kff-switch",
            Scenario::FrictionSwitch { .. } => "friction-switch",
        }
    }
}

/// Plant configuration and feed-forward gain for one loop iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioStep {
    pub plant: PlantConfig,
    pub kff: f64,
}

/// Resolves the scenario schedule at `iteration`.
pub fn apply_scenario(base: &PlantConfig, scenario: &Scenario, iteration: u64) -> ScenarioStep {
    let mut plant = base.clone();
    let mut kff = 1.0;
    match scenario {
        Scenario::Stationary => {}
        Scenario::InertiaSwitch { period, low, high } => {
            plant.inertia = if (iteration / period) % 2 == 0 { *low } else { *high };
        }
        Scenario::DampingDrift { divisor } => {
            plant.damping = base.damping * (1.0 + iteration as f64 / divisor);
        }
        Scenario::KffSwitch { period, values } => {
            let idx = ((iteration / period) as usize).min(values.len().saturating_sub(1));
            kff = values[idx];
        }
        Scenario::FrictionSwitch {
            factor,
            switch_at,
            revert_at,
        } => {
            if iteration >= *switch_at && iteration < *revert_at {
                plant.damping = base.damping * factor;
            }
        }
    }
    ScenarioStep { plant, kff }
}
