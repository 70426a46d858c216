use rydlhz_core::anneal::*;

fn main() {
    for (a_site, a_anc, gap) in [(0.2, 0.2, 1.0), (0.15, 0.15, 1.0), (0.25, 0.25, 1.0), (1.0, 1.0, 4.0), (0.5, 0.5, 4.0)] {
        let params = EnsembleParams { seed: 7, a_site, a_ancilla: a_anc, gap, ..EnsembleParams::default() };
        let schedule = ScheduleSpec::linear(50.0);
        let mut pass = 0;
        let mut ratios = Vec::new();
        for idx in 0..40 {
            let inst = ensemble_instance(&params, idx).unwrap();
            let n_grid = 50usize;
            let mut min_gap = f64::INFINITY;
            let mut argmin = 0usize;
            let mut final_gap = 0.0;
            for i in 0..=n_grid {
                let s = i as f64 / n_grid as f64;
                let lv = instantaneous_spectrum(&inst, &schedule, s, 2).unwrap();
                if lv[1] < min_gap { min_gap = lv[1]; argmin = i; }
                if i == n_grid { final_gap = lv[1]; }
            }
            if argmin > 0 && argmin < n_grid && min_gap <= 0.5 * final_gap { pass += 1; }
            else { ratios.push(min_gap / final_gap); }
        }
        println!("a=({a_site},{a_anc}) gap={gap}: {pass}/40; fail ratios: {:?}",
            ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>());
    }
}
