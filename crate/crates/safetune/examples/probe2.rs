// Dev probe: tau_m spread across controllers, per-seed noise levels.
use safetune::metrics;
use safetune::plant::{self, ControllerParams, PlantConfig, ReferenceConfig};

fn stats(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn main() {
    let cfg = PlantConfig::default();
    let cfg_hi = PlantConfig {
        inertia: 0.0382,
        ..cfg.clone()
    };
    let r = plant::make_reference(&ReferenceConfig::default()).unwrap();
    let seeds: Vec<u64> = (0..20).collect();

    println!("tau_m across controllers (mean over 20 seeds), m-lo vs m-hi:");
    let ctrls = [
        (15.0, 0.05, 3.0),
        (50.0, 0.08, 1.0),
        (50.0, 0.05, 1.0),
        (27.5, 0.07, 2.0),
        (5.0, 0.03, 5.0),
        (38.75, 0.1, 1.0),
        (50.0, 0.11, 1.0),
    ];
    for (kp, kv, ti) in ctrls {
        let x = ControllerParams::new(kp, kv, ti);
        let tlo: Vec<f64> = seeds
            .iter()
            .map(|&s| metrics::tau_inertia(&plant::simulate(&x, &cfg, &r, s)))
            .collect();
        let thi: Vec<f64> = seeds
            .iter()
            .map(|&s| metrics::tau_inertia(&plant::simulate(&x, &cfg_hi, &r, s + 1000)))
            .collect();
        let (mlo, slo) = stats(&tlo);
        let (mhi, shi) = stats(&thi);
        println!(
            "({kp:5.2},{kv:4.2},{ti:4.1}) lo: {mlo:7.3} (std {slo:6.4})   hi: {mhi:7.3} (std {shi:6.4})"
        );
    }

    println!("\nepisode metric noise at key controllers (20 seeds, nominal m):");
    for (kp, kv, ti) in [(15.0, 0.05, 3.0), (50.0, 0.08, 1.0)] {
        let x = ControllerParams::new(kp, kv, ti);
        let fs: Vec<f64> = seeds
            .iter()
            .map(|&s| metrics::cost_f(&plant::simulate(&x, &cfg, &r, s)))
            .collect();
        let q1s: Vec<f64> = seeds
            .iter()
            .map(|&s| metrics::constraint_q1(&plant::simulate(&x, &cfg, &r, s), [10.0, 100.0]).unwrap())
            .collect();
        let q2s: Vec<f64> = seeds
            .iter()
            .map(|&s| metrics::constraint_q2(&plant::simulate(&x, &cfg, &r, s)))
            .collect();
        let (fm, fsd) = stats(&fs);
        let (q1m, q1sd) = stats(&q1s);
        let (q2m, q2sd) = stats(&q2s);
        println!("({kp:5.2},{kv:4.2},{ti:4.1}) f={fm:8.4}±{fsd:7.4}  q1={q1m:8.3}±{q1sd:6.3}  q2={q2m:8.4}±{q2sd:7.4}");
        println!("  max q1 over seeds = {:.3}, max q2 = {:.4}", q1s.iter().fold(0.0f64, |a, &b| a.max(b)), q2s.iter().fold(0.0f64, |a, &b| a.max(b)));
    }

    // damping drift: q2 at seed and at optimum as b rises 30%
    println!("\ndamping drift effect at fixed controllers:");
    for frac in [0.0, 0.15, 0.3] {
        let cfg_d = PlantConfig {
            damping: 30.08 * (1.0 + frac),
            ..cfg.clone()
        };
        for (kp, kv, ti) in [(15.0, 0.05, 3.0), (50.0, 0.08, 1.0)] {
            let x = ControllerParams::new(kp, kv, ti);
            let t = plant::simulate(&x, &cfg_d, &r, 5);
            let m = metrics::compute(&t, [10.0, 100.0]).unwrap();
            println!(
                "b=+{:3.0}% ({kp:5.2},{kv:4.2},{ti:4.1}) f={:8.4} q1={:8.3} q2={:8.4}",
                frac * 100.0,
                m.f,
                m.q1,
                m.q2
            );
        }
    }
}
