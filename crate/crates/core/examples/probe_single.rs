use rydlhz_core::anneal::*;
use std::time::Instant;

fn main() {
    let params = EnsembleParams::default();
    for idx in [0usize, 1, 2] {
        let inst = ensemble_instance(&params, idx).unwrap();
        for t in [50.0, 150.0] {
            let schedule = ScheduleSpec::linear(t);
            print!("inst {idx} T={t}: P0 =");
            for dt in [0.1, 0.05, 0.025, 0.0125, 0.00625] {
                let t0 = Instant::now();
                // force exactly one pass at dt: huge tol
                let evo = evolve(&inst, &schedule, dt, 1e9).unwrap();
                let p0 = success_probability(&evo.psi, &inst);
                print!(" {:.6}({}st,{:.0?})", p0, evo.steps, t0.elapsed());
            }
            println!();
        }
    }
}
