// Dev probe: landscape + task parameter separation scan.
use safetune::metrics;
use safetune::plant::{self, ControllerParams, PlantConfig, ReferenceConfig};

fn eval(
    x: &ControllerParams,
    cfg: &PlantConfig,
    r: &plant::Reference,
    seeds: &[u64],
) -> (f64, f64, f64, f64, f64) {
    let (mut f, mut q1, mut q2, mut tm, mut tb) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &s in seeds {
        let t = plant::simulate(x, cfg, r, s);
        let m = metrics::compute(&t, [10.0, 100.0]).unwrap();
        f += m.f;
        q1 += m.q1;
        q2 += m.q2;
        tm += m.tau_m;
        tb += m.tau_b;
    }
    let n = seeds.len() as f64;
    (f / n, q1 / n, q2 / n, tm / n, tb / n)
}

fn main() {
    let scale: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(50.0);
    let cfg = PlantConfig {
        vel_loop_scale: scale,
        ..PlantConfig::default()
    };
    let r = plant::make_reference(&ReferenceConfig::default()).unwrap();
    let seeds: Vec<u64> = (0..5).collect();

    println!("=== vel_loop_scale = {scale} ===");
    let seed_x = ControllerParams::new(15.0, 0.05, 3.0);
    let (f, q1, q2, tm, tb) = eval(&seed_x, &cfg, &r, &seeds);
    println!("seed (15,0.05,3):   f={f:10.4} q1={q1:10.2} q2={q2:10.4} tau_m={tm:7.3} tau_b={tb:7.4}");

    // landscape over the 5x11x10 grid
    let kp_vals: Vec<f64> = (0..5).map(|i| 5.0 + 45.0 * i as f64 / 4.0).collect();
    let kv_vals: Vec<f64> = (0..11).map(|i| 0.01 + 0.01 * i as f64).collect();
    let ti_vals: Vec<f64> = (1..=10).map(|i| i as f64).collect();
    let mut rows = Vec::new();
    for &kp in &kp_vals {
        for &kv in &kv_vals {
            for &ti in &ti_vals {
                let x = ControllerParams::new(kp, kv, ti);
                let (f, q1, q2, _, _) = eval(&x, &cfg, &r, &seeds);
                rows.push((kp, kv, ti, f, q1, q2));
            }
        }
    }
    rows.sort_by(|a, b| a.3.partial_cmp(&b.3).unwrap());
    println!("--- best 10 by f ---");
    for (kp, kv, ti, f, q1, q2) in rows.iter().take(10) {
        println!("({kp:5.2},{kv:4.2},{ti:4.1}) f={f:9.4} q1={q1:10.2} q2={q2:9.4}");
    }
    println!("--- worst 5 by f ---");
    for (kp, kv, ti, f, q1, q2) in rows.iter().rev().take(5) {
        println!("({kp:5.2},{kv:4.2},{ti:4.1}) f={f:9.4} q1={q1:10.2} q2={q2:9.4}");
    }
    // quantiles of q1/q2
    let mut q1s: Vec<f64> = rows.iter().map(|r| r.4).collect();
    let mut q2s: Vec<f64> = rows.iter().map(|r| r.5).collect();
    q1s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    q2s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for q in [0.1, 0.5, 0.9, 1.0] {
        let i = ((rows.len() - 1) as f64 * q) as usize;
        println!("q1 p{:3.0}={:12.2}  q2 p{:3.0}={:10.3}", q * 100.0, q1s[i], q * 100.0, q2s[i]);
    }

    // tau separation: inertia
    let cfg_hi_m = PlantConfig {
        inertia: 0.0382,
        ..cfg.clone()
    };
    let many: Vec<u64> = (100..120).collect();
    let (_, q1n, q2n, tm_lo, _) = eval(&seed_x, &cfg, &r, &many);
    let (_, q1h, q2h, tm_hi, _) = eval(&seed_x, &cfg_hi_m, &r, &many);
    println!("tau_m nominal={tm_lo:7.3} doubled={tm_hi:7.3} sep={:6.3}", (tm_lo - tm_hi).abs());
    println!("  (seed ctrl) q1 nominal={q1n:10.2} doubled={q1h:10.2} | q2 nominal={q2n:8.4} doubled={q2h:8.4}");

    // friction
    let cfg_fric = PlantConfig {
        damping: 30.08 * 1.3,
        ..cfg.clone()
    };
    let (_, _, _, _, tb_lo) = eval(&seed_x, &cfg, &r, &many);
    let (_, _, _, _, tb_hi) = eval(&seed_x, &cfg_fric, &r, &many);
    println!("tau_b nominal={tb_lo:7.4} scaled={tb_hi:7.4} sep={:6.4}", (tb_lo - tb_hi).abs());

    // m-dependence of q1 at aggressive gains (ablation physics):
    for x in [
        ControllerParams::new(50.0, 0.09, 1.0),
        ControllerParams::new(50.0, 0.11, 1.0),
        ControllerParams::new(50.0, 0.05, 1.0),
        ControllerParams::new(50.0, 0.03, 2.0),
        ControllerParams::new(38.75, 0.02, 3.0),
    ] {
        let (fl, q1l, q2l, _, _) = eval(&x, &cfg, &r, &seeds);
        let (fh, q1h, q2h, _, _) = eval(&x, &cfg_hi_m, &r, &seeds);
        println!(
            "({:5.2},{:4.2},{:4.1}) m-lo: f={fl:8.3} q1={q1l:10.2} q2={q2l:8.3} | m-hi: f={fh:8.3} q1={q1h:10.2} q2={q2h:8.3}",
            x.kp, x.kv, x.ti
        );
    }
}
