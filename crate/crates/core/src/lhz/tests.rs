use super::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_problem(n: usize, seed: u64) -> LogicalProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = LogicalProblem::new(n).unwrap();
    for mu in 0..n {
        for nu in (mu + 1)..n {
            p.set_coupling(mu, nu, rng.gen_range(-0.5..=0.5)).unwrap();
        }
    }
    p
}

fn all_logical_configs(n: usize) -> impl Iterator<Item = Vec<i8>> {
    (0..1usize << n).map(move |c| {
        (0..n)
            .map(|mu| if c >> (n - 1 - mu) & 1 == 0 { 1 } else { -1 })
            .collect()
    })
}

#[test]
fn minimal_instance_layout_matches_reference() {
    let p = random_problem(4, 1);
    let enc = encode(&p).unwrap();
    assert_eq!(enc.n_physical(), 8);
    assert_eq!(enc.n_ancilla(), 3);
    assert_eq!(enc.n_fixed(), 2);

    // One-based corner sets of the three plaquettes.
    let expected: [[usize; 4]; 3] = [[1, 3, 4, 6], [2, 4, 5, 7], [6, 4, 7, 8]];
    for (plq, exp) in enc.plaquettes().iter().zip(expected) {
        let mut got: Vec<usize> = plq.corners.iter().map(|c| c + 1).collect();
        let mut exp: Vec<usize> = exp.to_vec();
        got.sort_unstable();
        exp.sort_unstable();
        assert_eq!(got, exp);
    }
    assert_eq!(enc.plaquettes()[0].ancilla, 8);
    assert_eq!(enc.plaquettes()[2].ancilla, 10);

    // Boundary fields have magnitude 5 on the first two spins.
    assert_eq!(enc.fields()[0].abs(), DEFAULT_FIXED_FIELD);
    assert_eq!(enc.fields()[1].abs(), DEFAULT_FIXED_FIELD);

    // The field ordering starts at the bottom row: J_12 sits on physical 3.
    assert_eq!(enc.pair_of(2), Some((0, 1)));

    // Exactly one pair spin carries a flipped sign, the fourth.
    let flipped: Vec<usize> = (0..enc.n_physical())
        .filter(|&i| enc.pair_of(i).is_some() && enc.parity_signs()[i] == -1)
        .collect();
    assert_eq!(flipped, vec![3]);
}

#[test]
fn zero_problem_keeps_only_boundary_fields() {
    let p = LogicalProblem::new(4).unwrap();
    let enc = encode(&p).unwrap();
    for i in 0..enc.n_physical() {
        if enc.pair_of(i).is_some() {
            assert_eq!(enc.fields()[i], 0.0);
        } else {
            assert_eq!(enc.fields()[i].abs(), DEFAULT_FIXED_FIELD);
        }
    }
}

#[test]
fn five_spin_layout_counts() {
    let enc = encode(&random_problem(5, 2)).unwrap();
    assert_eq!(enc.n_physical(), 13);
    assert_eq!(enc.n_ancilla(), 6);
    assert_eq!(enc.plaquettes().len(), 6);
}

#[test]
fn encode_rejects_small_problems() {
    let p = LogicalProblem::new(2).unwrap();
    assert!(matches!(encode(&p), Err(LhzError::ProblemTooSmall(2))));
}

#[test]
fn ferromagnetic_configuration_decodes_to_all_up() {
    let enc = encode(&random_problem(4, 3)).unwrap();
    let config = induced_configuration(&enc, &[1, 1, 1, 1]).unwrap();
    // All relative orientations parallel: raw bits equal the parity signs.
    for i in 0..enc.n_physical() {
        if enc.pair_of(i).is_some() {
            assert_eq!(config.bits[i], enc.parity_signs()[i]);
        }
    }
    assert_eq!(decode(&config, &enc).unwrap(), vec![1, 1, 1, 1]);
}

#[test]
fn decode_names_the_violated_plaquette() {
    let enc = encode(&random_problem(4, 4)).unwrap();
    let mut config = induced_configuration(&enc, &[1, -1, 1, 1]).unwrap();
    // Physical spin 3 (one-based) belongs to the first plaquette only.
    config.bits[2] = -config.bits[2];
    match decode(&config, &enc) {
        Err(LhzError::ParityViolation { plaquette: 0 }) => {}
        other => panic!("expected parity violation on plaquette 0, got {other:?}"),
    }
}

#[test]
fn decode_rejects_misaligned_boundary_spin() {
    let enc = encode(&random_problem(4, 5)).unwrap();
    let mut config = induced_configuration(&enc, &[1, 1, -1, 1]).unwrap();
    config.bits[0] = -1;
    assert!(matches!(
        decode(&config, &enc),
        Err(LhzError::FixedSpinViolation { index: 0 })
    ));
}

#[test]
fn logical_energy_two_spins() {
    let mut p = LogicalProblem::new(2).unwrap();
    p.set_coupling(0, 1, 1.0).unwrap();
    assert_eq!(logical_energy(&[1, 1], &p), 1.0);
    assert_eq!(logical_energy(&[1, -1], &p), -1.0);
}

#[test]
fn brute_force_two_spin_tie_break() {
    let mut p = LogicalProblem::new(2).unwrap();
    p.set_coupling(0, 1, 1.0).unwrap();
    let (config, energy) = brute_force_optimum(&p).unwrap();
    assert_eq!(energy, -1.0);
    // (+1,-1) and (-1,+1) tie; the lexicographically smaller one wins.
    assert_eq!(config, vec![1, -1]);
}

#[test]
fn brute_force_frustrated_triangle() {
    let mut p = LogicalProblem::new(3).unwrap();
    for (mu, nu) in [(0, 1), (0, 2), (1, 2)] {
        p.set_coupling(mu, nu, 1.0).unwrap();
    }
    let (_, energy) = brute_force_optimum(&p).unwrap();
    assert_eq!(energy, -1.0);
}

#[test]
fn brute_force_matches_plain_enumeration() {
    for seed in 0..10 {
        let p = random_problem(4, 100 + seed);
        let (config, energy) = brute_force_optimum(&p).unwrap();
        let min = all_logical_configs(4)
            .map(|s| logical_energy(&s, &p))
            .fold(f64::INFINITY, f64::min);
        assert_eq!(energy, min);
        assert_eq!(logical_energy(&config, &p), min);
    }
}

#[test]
fn brute_force_respects_size_limit() {
    let p = LogicalProblem::new(25).unwrap();
    assert!(matches!(
        brute_force_optimum(&p),
        Err(LhzError::EnumerationTooLarge { n: 25, limit: 24 })
    ));
}

#[test]
fn energy_identity_all_up() {
    let p = random_problem(4, 6);
    let enc = encode(&p).unwrap();
    let (phys, logic) = encoded_energy_identity_check(&enc, &p, &[1, 1, 1, 1]).unwrap();
    let expected: f64 = p.pairs().map(|(_, _, j)| j).sum();
    assert!((phys - expected).abs() < 1e-12);
    assert!((logic - expected).abs() < 1e-12);
}

#[test]
fn energy_identity_random_configurations() {
    let p = random_problem(4, 7);
    let enc = encode(&p).unwrap();
    for logical in all_logical_configs(4) {
        let (phys, logic) = encoded_energy_identity_check(&enc, &p, &logical).unwrap();
        assert!((phys - logic).abs() < 1e-12, "identity broken at {logical:?}");
    }
}

#[test]
fn energy_identity_single_flip_differences() {
    let p = random_problem(5, 8);
    let enc = encode(&p).unwrap();
    let up = vec![1i8; 5];
    let (p_up, l_up) = encoded_energy_identity_check(&enc, &p, &up).unwrap();
    for k in 0..5 {
        let mut flipped = up.clone();
        flipped[k] = -1;
        let (p_f, l_f) = encoded_energy_identity_check(&enc, &p, &flipped).unwrap();
        assert!(((p_f - p_up) - (l_f - l_up)).abs() < 1e-12);
    }
}

#[test]
fn round_trip_all_configurations_up_to_six_spins() {
    for n in 3..=6 {
        let p = random_problem(n, 20 + n as u64);
        let enc = encode(&p).unwrap();
        for logical in all_logical_configs(n) {
            let config = induced_configuration(&enc, &logical).unwrap();
            let decoded = decode(&config, &enc).unwrap();
            let flipped: Vec<i8> = logical.iter().map(|s| -s).collect();
            assert!(
                decoded == logical || decoded == flipped,
                "round trip failed for n={n} {logical:?} -> {decoded:?}"
            );
        }
    }
}

#[test]
fn induced_configurations_have_odd_parity_everywhere() {
    for n in 3..=6 {
        let enc = encode(&random_problem(n, 40 + n as u64)).unwrap();
        for logical in all_logical_configs(n) {
            let config = induced_configuration(&enc, &logical).unwrap();
            for p in enc.plaquettes() {
                let sum: i32 = p.corners.iter().map(|&c| i32::from(config.bits[c])).sum();
                assert!(sum == 2 || sum == -2);
            }
        }
    }
}

#[test]
fn valid_ground_configuration_decodes_to_brute_force_optimum() {
    for seed in 0..20 {
        let p = random_problem(4, 200 + seed);
        let enc = encode(&p).unwrap();
        let (opt, opt_energy) = brute_force_optimum(&p).unwrap();

        // Minimize the physical field energy over all valid codewords.
        let best = all_logical_configs(4)
            .map(|s| {
                let (e, _) = encoded_energy_identity_check(&enc, &p, &s).unwrap();
                (e, s)
            })
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .unwrap();
        assert!((best.0 - opt_energy).abs() < 1e-12);

        let config = induced_configuration(&enc, &best.1).unwrap();
        let decoded = decode(&config, &enc).unwrap();
        let flipped: Vec<i8> = opt.iter().map(|s| -s).collect();
        assert!(decoded == opt || decoded == flipped);
    }
}

#[test]
fn local_fields_fold_into_extended_layout() {
    let mut p = random_problem(4, 9);
    p.set_local_fields(&[0.3, -0.2, 0.1, 0.4]).unwrap();
    let enc = encode(&p).unwrap();
    assert!(enc.has_folded_field_spin());
    assert_eq!(enc.n_logical(), 5);
    assert_eq!(enc.n_physical(), 13);

    // Identity still holds against the full logical energy (fields included).
    for logical in all_logical_configs(4) {
        let (phys, logic) = encoded_energy_identity_check(&enc, &p, &logical).unwrap();
        assert!((phys - logic).abs() < 1e-12);
        assert!((logic - logical_energy(&logical, &p)).abs() < 1e-12);
    }

    // Round trip returns the original-length configuration, exactly.
    for logical in all_logical_configs(4) {
        let mut ext = logical.clone();
        ext.push(1);
        let config = induced_configuration(&enc, &ext).unwrap();
        assert_eq!(decode(&config, &enc).unwrap(), logical);
    }
}

#[test]
fn problem_json_round_trip() {
    let text = r#"{"n": 4, "couplings": [[1,2,0.25],[3,4,-0.5]], "fields": [0,0,0,0], "seed": 11}"#;
    let (problem, enc) = io::encode_from_json(text).unwrap();
    assert_eq!(problem.coupling(0, 1), 0.25);
    assert_eq!(problem.coupling(2, 3), -0.5);
    assert_eq!(enc.n_physical(), 8);

    let file = io::ProblemFile::from_problem(&problem, Some(11));
    let back = file.to_problem().unwrap();
    assert_eq!(back, problem);

    let enc_json = serde_json::to_string(&io::EncodingFile::from_encoding(&enc)).unwrap();
    let parsed: io::EncodingFile = serde_json::from_str(&enc_json).unwrap();
    assert_eq!(parsed.n_physical, 8);
    assert_eq!(parsed.plaquettes.len(), 3);
}

proptest! {
    #[test]
    fn prop_round_trip_and_identity(n in 3usize..=6, seed in 0u64..1000) {
        let p = random_problem(n, seed);
        let enc = encode(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
        let logical: Vec<i8> = (0..n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();

        let config = induced_configuration(&enc, &logical).unwrap();
        let decoded = decode(&config, &enc).unwrap();
        let flipped: Vec<i8> = logical.iter().map(|s| -s).collect();
        prop_assert!(decoded == logical || decoded == flipped);

        let (phys, logic) = encoded_energy_identity_check(&enc, &p, &logical).unwrap();
        prop_assert!((phys - logic).abs() < 1e-12);
    }
}
