//! Dipole operators and the dipole-dipole pair coupling.
//!
//! Single-atom elements factor through the Wigner-Eckart theorem in the
//! fine-structure basis; the two-atom coupling contracts the rank-1 dipoles
//! into the rank-2 spherical form
//!
//! ```text
//! V_dd = -sqrt(24 pi / 5) / R^3 * sum_{mu nu} C^{1 1 2}_{mu nu} Y_2^{mu+nu}(theta, phi)^* d1_mu d2_nu
//! ```
//!
//! Distances in micrometers, energies in MHz, dipoles in `e a0`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::radial::RadialProvider;
use super::state::{PairState, RydbergState};
use super::wigner::{clebsch_gordan, wigner_3j, wigner_6j};
use super::RydbergError;

/// `e^2 a0^2 / (4 pi eps0 h)` in MHz um^3: converts a product of dipole
/// elements in `e a0` over a distance in um into a frequency.
pub const DIPOLE_UNIT_MHZ_UM3: f64 = 9.75024e-4;

/// Reduced matrix element `<a || d || b>` (radial integral included).
pub fn reduced_dipole(
    a: &RydbergState,
    b: &RydbergState,
    radial: &dyn RadialProvider,
) -> Result<f64, RydbergError> {
    if a.species != b.species || a.l.abs_diff(b.l) != 1 {
        return Ok(0.0);
    }
    let dl_a = 2 * a.l as i32;
    let dl_b = 2 * b.l as i32;
    // <l_a || C^1 || l_b>
    let c1 = phase((dl_a / 2) as i32)
        * ((f64::from(dl_a) + 1.0) * (f64::from(dl_b) + 1.0)).sqrt()
        * wigner_3j(dl_a, 2, dl_b, 0, 0, 0);
    // Fine-structure recoupling with s = 1/2.
    let recouple = phase((dl_a + 1 + b.dj + 2) / 2)
        * ((f64::from(a.dj) + 1.0) * (f64::from(b.dj) + 1.0)).sqrt()
        * wigner_6j(dl_a, a.dj, 1, b.dj, dl_b, 2);
    Ok(recouple * c1 * radial.radial_element(a, b)?)
}

fn phase(k: i32) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Spherical component `<a| d_q |b>`, `q` in {-1, 0, 1}.
pub fn dipole_component(
    a: &RydbergState,
    b: &RydbergState,
    q: i32,
    radial: &dyn RadialProvider,
) -> Result<f64, RydbergError> {
    if a.dmj != b.dmj + 2 * q {
        return Ok(0.0);
    }
    let reduced = reduced_dipole(a, b, radial)?;
    if reduced == 0.0 {
        return Ok(0.0);
    }
    Ok(phase((a.dj - a.dmj) / 2)
        * wigner_3j(a.dj, 2, b.dj, -a.dmj, 2 * q, b.dmj)
        * reduced)
}

/// Spherical harmonic `Y_2^m(theta, phi)` (Condon-Shortley).
pub fn spherical_harmonic_y2(m: i32, theta: f64, phi: f64) -> Complex64 {
    let (sin_t, cos_t) = theta.sin_cos();
    let magnitude = match m {
        0 => (5.0 / (16.0 * PI)).sqrt() * (3.0 * cos_t * cos_t - 1.0),
        1 | -1 => -f64::from(m.signum()) * (15.0 / (8.0 * PI)).sqrt() * sin_t * cos_t,
        2 | -2 => (15.0 / (32.0 * PI)).sqrt() * sin_t * sin_t,
        _ => 0.0,
    };
    magnitude * Complex64::from_polar(1.0, f64::from(m) * phi)
}

/// `<bra| V_dd(R) |ket>` for a pair of atoms at separation `r_um`,
/// interatomic axis at polar angles `(theta, phi)` from the quantization axis.
pub fn dipole_dipole_element(
    bra: &PairState,
    ket: &PairState,
    r_um: f64,
    theta: f64,
    phi: f64,
    radial: &dyn RadialProvider,
) -> Result<Complex64, RydbergError> {
    if r_um <= 0.0 {
        return Err(RydbergError::BadDistance { r_um });
    }
    // Both atoms must change l by one; this also kills diagonal elements.
    if bra.first.l.abs_diff(ket.first.l) != 1 || bra.second.l.abs_diff(ket.second.l) != 1 {
        return Ok(Complex64::ZERO);
    }

    let mut sum = Complex64::ZERO;
    for mu in -1..=1 {
        let d1 = dipole_component(&bra.first, &ket.first, mu, radial)?;
        if d1 == 0.0 {
            continue;
        }
        for nu in -1..=1 {
            let d2 = dipole_component(&bra.second, &ket.second, nu, radial)?;
            if d2 == 0.0 {
                continue;
            }
            let cg = clebsch_gordan(2, 2 * mu, 2, 2 * nu, 4, 2 * (mu + nu));
            let y2 = spherical_harmonic_y2(mu + nu, theta, phi).conj();
            sum += cg * y2 * d1 * d2;
        }
    }
    let prefactor = -(24.0 * PI / 5.0).sqrt() * DIPOLE_UNIT_MHZ_UM3 / r_um.powi(3);
    Ok(prefactor * sum)
}

/// Cartesian dipole vector `<a| (d_x, d_y, d_z) |b>`: the independent route
/// used to validate the spherical-tensor contraction.
pub fn dipole_vector(
    a: &RydbergState,
    b: &RydbergState,
    radial: &dyn RadialProvider,
) -> Result<[Complex64; 3], RydbergError> {
    let d_minus = dipole_component(a, b, -1, radial)?;
    let d_zero = dipole_component(a, b, 0, radial)?;
    let d_plus = dipole_component(a, b, 1, radial)?;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    Ok([
        Complex64::new((d_minus - d_plus) * inv_sqrt2, 0.0),
        Complex64::new(0.0, (d_minus + d_plus) * inv_sqrt2),
        Complex64::new(d_zero, 0.0),
    ])
}

/// Direct Cartesian evaluation `[d1.d2 - 3 (d1.rhat)(d2.rhat)] / R^3`.
pub fn dipole_dipole_cartesian(
    bra: &PairState,
    ket: &PairState,
    r_um: f64,
    theta: f64,
    phi: f64,
    radial: &dyn RadialProvider,
) -> Result<Complex64, RydbergError> {
    if r_um <= 0.0 {
        return Err(RydbergError::BadDistance { r_um });
    }
    let d1 = dipole_vector(&bra.first, &ket.first, radial)?;
    let d2 = dipole_vector(&bra.second, &ket.second, radial)?;
    let rhat = [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ];
    let dot: Complex64 = d1.iter().zip(&d2).map(|(x, y)| x * y).sum();
    let d1r: Complex64 = d1.iter().zip(&rhat).map(|(x, r)| x * *r).sum();
    let d2r: Complex64 = d2.iter().zip(&rhat).map(|(x, r)| x * *r).sum();
    Ok((dot - 3.0 * d1r * d2r) * DIPOLE_UNIT_MHZ_UM3 / r_um.powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rydberg::radial::UnitRadial;
    use crate::rydberg::state::Species;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    fn state(n: u32, l: u32, dj: i32, dmj: i32) -> RydbergState {
        RydbergState::new(Species::Rb87, n, l, dj, dmj).unwrap()
    }

    #[test]
    fn s_to_s_pairs_do_not_couple() {
        let s = state(39, 0, 1, 1);
        let pair = PairState::new(s, s);
        let v = dipole_dipole_element(&pair, &pair, 1.0, FRAC_PI_2, 0.0, &UnitRadial).unwrap();
        assert_eq!(v, Complex64::ZERO);
    }

    #[test]
    fn in_plane_geometry_blocks_odd_m_changes() {
        // Delta M = +-1 vanishes at theta = pi/2.
        let bra = PairState::new(state(39, 1, 3, 1), state(39, 1, 3, 1));
        let ket = PairState::new(state(39, 0, 1, 1), state(40, 0, 1, -1));
        assert_eq!(bra.dm_total() - ket.dm_total(), 2, "doubled Delta M of 2 is physical 1");
        let v = dipole_dipole_element(&bra, &ket, 0.8, FRAC_PI_2, 0.0, &UnitRadial).unwrap();
        assert!(v.norm() < 1e-14, "got {v}");
    }

    #[test]
    fn even_m_changes_survive_in_plane() {
        let bra = PairState::new(state(39, 1, 3, 1), state(39, 1, 3, -1));
        let ket = PairState::new(state(39, 0, 1, 1), state(40, 0, 1, -1));
        let v = dipole_dipole_element(&bra, &ket, 0.8, FRAC_PI_2, 0.0, &UnitRadial).unwrap();
        assert!(v.norm() > 1e-6, "expected coupling, got {v}");
    }

    #[test]
    fn scales_as_inverse_cube() {
        let bra = PairState::new(state(39, 1, 3, 1), state(39, 1, 3, -1));
        let ket = PairState::new(state(39, 0, 1, 1), state(40, 0, 1, -1));
        let v1 = dipole_dipole_element(&bra, &ket, 0.5, FRAC_PI_2, 0.0, &UnitRadial).unwrap();
        let v2 = dipole_dipole_element(&bra, &ket, 1.0, FRAC_PI_2, 0.0, &UnitRadial).unwrap();
        assert_relative_eq!(v1.re, v2.re * 8.0, max_relative = 1e-12);
    }

    #[test]
    fn spherical_matches_cartesian_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut checked = 0;
        while checked < 100 {
            let l1 = rng.gen_range(0..=2u32);
            let l2 = if l1 == 0 { 1 } else { l1 - 1 + 2 * rng.gen_range(0..=1u32) };
            if l2 > 2 {
                continue;
            }
            let pick = |rng: &mut ChaCha8Rng, l: u32| {
                let dj = 2 * l as i32 + if l > 0 && rng.gen::<bool>() { -1 } else { 1 };
                let m_options: Vec<i32> = (-dj..=dj).step_by(2).collect();
                let dmj = m_options[rng.gen_range(0..m_options.len())];
                state(rng.gen_range(30..45), l, dj, dmj)
            };
            let bra = PairState::new(pick(&mut rng, l1), pick(&mut rng, l1));
            let ket = PairState::new(pick(&mut rng, l2), pick(&mut rng, l2));
            let theta = rng.gen_range(0.0..PI);
            let phi = rng.gen_range(0.0..2.0 * PI);
            let r = rng.gen_range(0.3..3.0);
            let sph = dipole_dipole_element(&bra, &ket, r, theta, phi, &UnitRadial).unwrap();
            let cart = dipole_dipole_cartesian(&bra, &ket, r, theta, phi, &UnitRadial).unwrap();
            let scale = sph.norm().max(cart.norm());
            if scale > 0.0 {
                assert!(
                    (sph - cart).norm() <= 1e-10 * scale,
                    "mismatch {sph} vs {cart} for {bra} -> {ket}"
                );
                checked += 1;
            }
        }
    }

    #[test]
    fn axial_geometry_closed_form() {
        // At theta = 0 the coupling reduces to
        // -(d0 d0' ... ) [d.d - 3 dz dz']/R^3 with only mu+nu = 0 surviving.
        let bra = PairState::new(state(39, 1, 3, 1), state(39, 1, 3, 1));
        let ket = PairState::new(state(39, 0, 1, 1), state(40, 0, 1, 1));
        let sph = dipole_dipole_element(&bra, &ket, 0.7, 0.0, 0.0, &UnitRadial).unwrap();
        let cart = dipole_dipole_cartesian(&bra, &ket, 0.7, 0.0, 0.0, &UnitRadial).unwrap();
        assert_relative_eq!(sph.re, cart.re, max_relative = 1e-12);
        assert!(sph.im.abs() < 1e-16);
    }

    #[test]
    fn rejects_nonpositive_distance() {
        let s = state(39, 1, 3, 1);
        let pair = PairState::new(s, s);
        assert!(matches!(
            dipole_dipole_element(&pair, &pair, 0.0, FRAC_PI_2, 0.0, &UnitRadial),
            Err(RydbergError::BadDistance { .. })
        ));
    }
}
