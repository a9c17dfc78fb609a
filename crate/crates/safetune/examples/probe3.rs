// Dev probe: Kv slice of the landscape at candidate vel_loop_scale values,
// both inertia regimes, plus band-limited tau_m separation.
use safetune::metrics;
use safetune::plant::{self, ControllerParams, PlantConfig, ReferenceConfig, RADPS_TO_RPM};

fn mean_metrics(
    x: &ControllerParams,
    cfg: &PlantConfig,
    r: &plant::Reference,
    n: u64,
    window: [f64; 2],
) -> (f64, f64, f64) {
    let (mut f, mut q1, mut q2) = (0.0, 0.0, 0.0);
    for s in 0..n {
        let t = plant::simulate(x, cfg, r, s);
        let m = metrics::compute(&t, window).unwrap();
        f += m.f;
        q1 += m.q1;
        q2 += m.q2;
    }
    (f / n as f64, q1 / n as f64, q2 / n as f64)
}

// tau_m restricted to a frequency band
fn tau_band(t: &plant::TrajectoryRecord, lo_hz: f64, hi_hz: f64) -> f64 {
    use rustfft::num_complex::Complex;
    let n = t.len();
    let res: Vec<f64> = (0..n)
        .map(|i| (t.v[i] - t.kff * t.v_ref[i]) * RADPS_TO_RPM)
        .collect();
    let mean = res.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex<f64>> = res.iter().map(|&x| Complex::new(x - mean, 0.0)).collect();
    rustfft::FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let df = 1.0 / (n as f64 * t.dt);
    let lo = (lo_hz / df).ceil() as usize;
    let hi = ((hi_hz / df).floor() as usize).min(n / 2);
    let m = buf[lo..=hi].iter().map(|c| c.norm()).sum::<f64>() / (hi - lo + 1) as f64;
    m.max(1e-12).log10()
}

fn main() {
    let r = plant::make_reference(&ReferenceConfig::default()).unwrap();
    let window = [10.0, 300.0];
    for scale in [40.0, 45.0, 50.0] {
        println!("===== vel_loop_scale {scale}, q1 window {window:?} =====");
        for (label, m) in [("m-lo", 0.0191), ("m-hi", 0.0382)] {
            let cfg = PlantConfig {
                vel_loop_scale: scale,
                inertia: m,
                ..PlantConfig::default()
            };
            println!("  -- {label} Kp=50 Ti=1, Kv slice --");
            for i in 0..11 {
                let kv = 0.01 + 0.01 * i as f64;
                let x = ControllerParams::new(50.0, kv, 1.0);
                let (f, q1, q2) = mean_metrics(&x, &cfg, &r, 5, window);
                println!("    kv={kv:4.2}: f={f:9.3} q1={q1:10.2} q2={q2:9.3}");
            }
            let (f, q1, q2) = mean_metrics(&ControllerParams::new(15.0, 0.05, 3.0), &cfg, &r, 5, window);
            println!("    seed     : f={f:9.3} q1={q1:10.2} q2={q2:9.3}");
        }
    }

    // band-limited tau_m: separation and per-controller spread
    println!("\n===== tau_m bands at scale 45 =====");
    let cfg_lo = PlantConfig {
        vel_loop_scale: 45.0,
        ..PlantConfig::default()
    };
    let cfg_hi = PlantConfig {
        inertia: 0.0382,
        ..cfg_lo.clone()
    };
    for (blo, bhi) in [(0.0_f64, 500.0_f64), (150.0, 500.0), (200.0, 500.0), (250.0, 500.0)] {
        let mut lo_vals = Vec::new();
        let mut hi_vals = Vec::new();
        for (kp, kv, ti) in [
            (15.0, 0.05, 3.0),
            (50.0, 0.08, 1.0),
            (5.0, 0.03, 5.0),
            (50.0, 0.11, 1.0),
            (27.5, 0.06, 2.0),
        ] {
            let x = ControllerParams::new(kp, kv, ti);
            let tl: f64 = (0..10)
                .map(|s| tau_band(&plant::simulate(&x, &cfg_lo, &r, s), blo.max(0.5), bhi))
                .sum::<f64>()
                / 10.0;
            let th: f64 = (0..10)
                .map(|s| tau_band(&plant::simulate(&x, &cfg_hi, &r, s + 500), blo.max(0.5), bhi))
                .sum::<f64>()
                / 10.0;
            lo_vals.push(tl);
            hi_vals.push(th);
        }
        let lo_min = lo_vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let lo_max = lo_vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let hi_min = hi_vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi_max = hi_vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        println!(
            "band [{blo:5.1},{bhi:5.1}]: lo range [{lo_min:7.3},{lo_max:7.3}] hi range [{hi_min:7.3},{hi_max:7.3}] gap={:7.3}",
            lo_min - hi_max
        );
    }
}
