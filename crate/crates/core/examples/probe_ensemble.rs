use rydlhz_core::anneal::*;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let a: f64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(1.0);
    let n_inst: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(40);
    let seed: u64 = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(7);
    let params = EnsembleParams {
        n_instances: n_inst,
        seed,
        a_site: a,
        a_ancilla: a,
        dt_max: 0.02,
        tol: 1e-4,
        ..EnsembleParams::default()
    };
    let t0 = Instant::now();
    let result = run_ensemble(&params).unwrap();
    for s in &result.summaries {
        println!("a={a} seed={seed} T={:>5}: mean P0 = {:.4} +- {:.4}", s.sweep_time, s.mean_p0, s.std_p0);
    }
    println!("elapsed: {:.1?}", t0.elapsed());
}
