//! Wigner 3j and 6j symbols from the Racah closed forms.
//!
//! Arguments are doubled angular momenta, so half-integer inputs stay exact.
//! Factorials are tabulated in f64, which holds every value up to 170! and
//! keeps the alternating Racah sums accurate to ~1e-12 for the small momenta
//! used in dipole-dipole matrix elements.

use super::RydbergError;

const MAX_FACTORIAL: usize = 170;

fn factorial(n: i32) -> f64 {
    // Tabulated lazily would buy nothing here; the recursion is cheap and
    // the compiler folds it into a lookup for constant arguments.
    debug_assert!((0..=MAX_FACTORIAL as i32).contains(&n));
    let mut acc = 1.0f64;
    for k in 2..=n {
        acc *= f64::from(k);
    }
    acc
}

fn triangle_ok(da: i32, db: i32, dc: i32) -> bool {
    dc >= (da - db).abs() && dc <= da + db && (da + db + dc) % 2 == 0
}

/// Δ(abc) = (a+b−c)!(a−b+c)!(−a+b+c)!/(a+b+c+1)!, with doubled arguments.
fn triangle_coefficient(da: i32, db: i32, dc: i32) -> f64 {
    factorial((da + db - dc) / 2) * factorial((da - db + dc) / 2)
        * factorial((-da + db + dc) / 2)
        / factorial((da + db + dc) / 2 + 1)
}

/// Wigner 3j symbol with doubled arguments; invalid magnetic numbers or
/// parity mismatches are the caller's responsibility (checked in debug).
pub fn wigner_3j(dj1: i32, dj2: i32, dj3: i32, dm1: i32, dm2: i32, dm3: i32) -> f64 {
    debug_assert!(dm1.abs() <= dj1 && (dj1 + dm1) % 2 == 0);
    debug_assert!(dm2.abs() <= dj2 && (dj2 + dm2) % 2 == 0);
    debug_assert!(dm3.abs() <= dj3 && (dj3 + dm3) % 2 == 0);
    if dm1 + dm2 + dm3 != 0 || !triangle_ok(dj1, dj2, dj3) {
        return 0.0;
    }

    // Integer combinations entering the Racah sum.
    let j1pj2mj3 = (dj1 + dj2 - dj3) / 2;
    let j1mm1 = (dj1 - dm1) / 2;
    let j2pm2 = (dj2 + dm2) / 2;
    let j3mj2pm1 = (dj3 - dj2 + dm1) / 2;
    let j3mj1mm2 = (dj3 - dj1 - dm2) / 2;

    let t_min = 0.max(-j3mj2pm1).max(-j3mj1mm2);
    let t_max = j1pj2mj3.min(j1mm1).min(j2pm2);
    if t_min > t_max {
        return 0.0;
    }

    let mut sum = 0.0;
    for t in t_min..=t_max {
        let denom = factorial(t)
            * factorial(j1pj2mj3 - t)
            * factorial(j1mm1 - t)
            * factorial(j2pm2 - t)
            * factorial(j3mj2pm1 + t)
            * factorial(j3mj1mm2 + t);
        sum += parity(t) / denom;
    }

    let norm = triangle_coefficient(dj1, dj2, dj3)
        * factorial((dj1 + dm1) / 2)
        * factorial((dj1 - dm1) / 2)
        * factorial((dj2 + dm2) / 2)
        * factorial((dj2 - dm2) / 2)
        * factorial((dj3 + dm3) / 2)
        * factorial((dj3 - dm3) / 2);

    parity((dj1 - dj2 - dm3) / 2) * norm.sqrt() * sum
}

/// Wigner 6j symbol with doubled arguments.
pub fn wigner_6j(da: i32, db: i32, dc: i32, dd: i32, de: i32, df: i32) -> f64 {
    if !triangle_ok(da, db, dc)
        || !triangle_ok(da, de, df)
        || !triangle_ok(dd, db, df)
        || !triangle_ok(dd, de, dc)
    {
        return 0.0;
    }

    let t1 = (da + db + dc) / 2;
    let t2 = (da + de + df) / 2;
    let t3 = (dd + db + df) / 2;
    let t4 = (dd + de + dc) / 2;
    let q1 = (da + db + dd + de) / 2;
    let q2 = (db + dc + de + df) / 2;
    let q3 = (dc + da + df + dd) / 2;

    let t_min = t1.max(t2).max(t3).max(t4);
    let t_max = q1.min(q2).min(q3);
    let mut sum = 0.0;
    for t in t_min..=t_max {
        let denom = factorial(t - t1)
            * factorial(t - t2)
            * factorial(t - t3)
            * factorial(t - t4)
            * factorial(q1 - t)
            * factorial(q2 - t)
            * factorial(q3 - t);
        sum += parity(t) * factorial(t + 1) / denom;
    }

    let norm = triangle_coefficient(da, db, dc)
        * triangle_coefficient(da, de, df)
        * triangle_coefficient(dd, db, df)
        * triangle_coefficient(dd, de, dc);
    norm.sqrt() * sum
}

/// Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M>, doubled arguments.
pub fn clebsch_gordan(dj1: i32, dm1: i32, dj2: i32, dm2: i32, dj: i32, dm: i32) -> f64 {
    if dm1 + dm2 != dm {
        return 0.0;
    }
    parity((dj1 - dj2 + dm) / 2)
        * (f64::from(dj) + 1.0).sqrt()
        * wigner_3j(dj1, dj2, dj, dm1, dm2, -dm)
}

fn parity(k: i32) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Symbol kind for the checked, half-integer-valued interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WignerKind {
    ThreeJ,
    SixJ,
}

/// Evaluate a 3j or 6j symbol from six half-integer values given as reals.
///
/// Inputs that are not integers or half-integers are rejected; selection-rule
/// failures return 0.
pub fn wigner_symbol(kind: WignerKind, args: [f64; 6]) -> Result<f64, RydbergError> {
    let mut doubled = [0i32; 6];
    for (d, &x) in doubled.iter_mut().zip(&args) {
        let twice = 2.0 * x;
        let rounded = twice.round();
        if (twice - rounded).abs() > 1e-9 || !rounded.is_finite() {
            return Err(RydbergError::NotHalfInteger { value: x });
        }
        *d = rounded as i32;
    }
    let [a, b, c, d, e, f] = doubled;
    match kind {
        WignerKind::ThreeJ => {
            if d.abs() > a || e.abs() > b || f.abs() > c
                || (a + d) % 2 != 0
                || (b + e) % 2 != 0
                || (c + f) % 2 != 0
            {
                return Err(RydbergError::BadSymbolArguments);
            }
            Ok(wigner_3j(a, b, c, d, e, f))
        }
        WignerKind::SixJ => Ok(wigner_6j(a, b, c, d, e, f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn three_j_reference_values() {
        // (value, doubled arguments); closed forms like sqrt(2/15) evaluated
        // exactly from the Racah rational under the root.
        let cases: [(i32, i32, i32, i32, i32, i32, f64); 8] = [
            (2, 2, 4, 0, 0, 0, (2.0f64 / 15.0).sqrt()),
            (2, 2, 4, 2, -2, 0, (30.0f64).sqrt() / 30.0),
            (4, 4, 8, 4, -4, 0, (70.0f64).sqrt() / 210.0),
            (1, 1, 2, 1, -1, 0, (6.0f64).sqrt() / 6.0),
            (3, 2, 1, 1, 0, -1, (6.0f64).sqrt() / 6.0),
            (6, 4, 2, -2, 0, 2, (70.0f64).sqrt() / 35.0),
            (2, 2, 2, 2, 0, -2, -(6.0f64).sqrt() / 6.0),
            (4, 4, 4, 2, 2, -4, -(105.0f64).sqrt() / 35.0),
        ];
        for (a, b, c, d, e, f, expected) in cases {
            assert_relative_eq!(wigner_3j(a, b, c, d, e, f), expected, epsilon = 1e-13);
        }
    }

    #[test]
    fn three_j_selection_rules() {
        // m-sum and triangle violations vanish.
        assert_eq!(wigner_3j(2, 2, 4, 2, 0, 0), 0.0);
        assert_eq!(wigner_3j(2, 2, 8, 0, 0, 0), 0.0);
        // Odd total j with equal (j, m) columns vanishes by symmetry.
        assert_eq!(wigner_3j(2, 2, 2, 0, 0, 0), 0.0);
    }

    #[test]
    fn six_j_reference_values() {
        let cases: [(i32, i32, i32, i32, i32, i32, f64); 8] = [
            (2, 2, 2, 2, 2, 2, 1.0 / 6.0),
            (2, 2, 4, 2, 2, 4, 1.0 / 30.0),
            (4, 4, 4, 4, 4, 4, -3.0 / 70.0),
            (2, 4, 6, 4, 2, 4, (21.0f64).sqrt() / 105.0),
            (1, 1, 2, 1, 1, 2, 1.0 / 6.0),
            (3, 1, 2, 1, 3, 2, (10.0f64).sqrt() / 12.0),
            (4, 2, 2, 2, 4, 2, -(5.0f64).sqrt() / 10.0),
            (3, 3, 2, 3, 3, 2, -11.0 / 60.0),
        ];
        for (a, b, c, d, e, f, expected) in cases {
            assert_relative_eq!(wigner_6j(a, b, c, d, e, f), expected, epsilon = 1e-13);
        }
    }

    #[test]
    fn six_j_from_three_j_contraction() {
        // Independent route: contract four 3j symbols over all magnetic
        // numbers. Checked for a grid of small momenta, half-integers included.
        for (da, db, dc, dd, de, df) in [
            (2, 2, 2, 2, 2, 2),
            (2, 2, 4, 2, 2, 4),
            (1, 1, 2, 1, 1, 2),
            (3, 1, 2, 1, 3, 2),
            (4, 2, 2, 2, 4, 2),
            (2, 4, 6, 4, 2, 4),
            (3, 3, 2, 3, 3, 2),
        ] {
            let direct = wigner_6j(da, db, dc, dd, de, df);
            let contracted = six_j_by_contraction(da, db, dc, dd, de, df);
            assert_relative_eq!(direct, contracted, epsilon = 1e-11);
        }
    }

    /// Sum over products of four 3j symbols (the defining contraction):
    /// {abc;def} = sum (-1)^{sum_k (j_k - m_k)} (a b c; -m1 -m2 -m3)
    /// (a e f; m1 -m5 m6) (d b f; m4 m2 -m6) (d e c; -m4 m5 m3).
    fn six_j_by_contraction(da: i32, db: i32, dc: i32, dd: i32, de: i32, df: i32) -> f64 {
        let mut sum = 0.0;
        for dm1 in range(da) {
            for dm2 in range(db) {
                let dm3 = -dm1 - dm2;
                if dm3.abs() > dc {
                    continue;
                }
                for dm5 in range(de) {
                    let dm6 = dm5 - dm1;
                    let dm4 = dm5 + dm3;
                    if dm6.abs() > df || dm4.abs() > dd {
                        continue;
                    }
                    let exponent =
                        (da - dm1 + db - dm2 + dc - dm3 + dd - dm4 + de - dm5 + df - dm6) / 2;
                    sum += parity(exponent)
                        * wigner_3j(da, db, dc, -dm1, -dm2, -dm3)
                        * wigner_3j(da, de, df, dm1, -dm5, dm6)
                        * wigner_3j(dd, db, df, dm4, dm2, -dm6)
                        * wigner_3j(dd, de, dc, -dm4, dm5, dm3);
                }
            }
        }
        sum
    }

    fn range(dj: i32) -> impl Iterator<Item = i32> {
        (-dj..=dj).step_by(2)
    }

    #[test]
    fn checked_interface_validates_half_integers() {
        let ok = wigner_symbol(WignerKind::ThreeJ, [1.0, 1.0, 2.0, 0.0, 0.0, 0.0]).unwrap();
        assert_relative_eq!(ok, (2.0f64 / 15.0).sqrt(), epsilon = 1e-13);
        assert!(matches!(
            wigner_symbol(WignerKind::ThreeJ, [1.0, 1.0, 2.0, 0.3, -0.3, 0.0]),
            Err(RydbergError::NotHalfInteger { .. })
        ));
        assert!(matches!(
            wigner_symbol(WignerKind::ThreeJ, [1.0, 1.0, 2.0, 0.5, -0.5, 0.0]),
            Err(RydbergError::BadSymbolArguments)
        ));
        let half = wigner_symbol(WignerKind::SixJ, [0.5, 0.5, 1.0, 0.5, 0.5, 1.0]).unwrap();
        assert_relative_eq!(half, 1.0 / 6.0, epsilon = 1e-13);
    }

    #[test]
    fn clebsch_gordan_rank_two_table() {
        // The 1 x 1 -> 2 coefficients used in the dipole-dipole contraction.
        assert_relative_eq!(clebsch_gordan(2, 2, 2, 2, 4, 4), 1.0, epsilon = 1e-13);
        assert_relative_eq!(clebsch_gordan(2, 2, 2, 0, 4, 2), 0.5f64.sqrt(), epsilon = 1e-13);
        assert_relative_eq!(clebsch_gordan(2, 2, 2, -2, 4, 0), (1.0f64 / 6.0).sqrt(), epsilon = 1e-13);
        assert_relative_eq!(clebsch_gordan(2, 0, 2, 0, 4, 0), (2.0f64 / 3.0).sqrt(), epsilon = 1e-13);
    }
}
