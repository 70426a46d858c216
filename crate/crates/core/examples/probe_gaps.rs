use rydlhz_core::anneal::*;
use rydlhz_core::lhz::{encode, LogicalProblem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    for n in [3usize, 4] {
        for seed in 10u64..30 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut p = LogicalProblem::new(n).unwrap();
            for mu in 0..n {
                for nu in (mu + 1)..n {
                    p.set_coupling(mu, nu, rng.gen_range(-0.5..=0.5)).unwrap();
                }
            }
            let inst = AnnealInstance::new(encode(&p).unwrap(), ConstraintForm::Stabilizer, 1.0).unwrap();
            let schedule = ScheduleSpec::linear(10.0);
            let mut min_gap = f64::INFINITY;
            for i in 0..=40 {
                let s = i as f64 / 40.0;
                let lv = instantaneous_spectrum(&inst, &schedule, s, 2).unwrap();
                if lv[1] < min_gap { min_gap = lv[1]; }
            }
            if min_gap > 0.35 { println!("n {n} seed {seed}: min_gap {min_gap:.4}"); }
        }
    }
}
