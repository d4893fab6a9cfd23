use crown_kernels::geometry::{alpha, bilinear, cayley, in_crown, ray_inversion, sigma_v, CPoint};
use crown_kernels::group_action::{make_boost, random_unit_vector, random_word, sample_crown};
use crown_kernels::integral_reps::sphere_rule;
use crown_kernels::kernels::{mass_param, psi_kernel};
use crown_kernels::oracles::normalized_gegenbauer;
use crown_kernels::special_functions::{gamma, gauss_2f1, HypParams};
use crown_kernels::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recurrence(re in 0.1f64..8.0, im in -4.0f64..4.0) {
        let z = Complex64::new(re, im);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!(close(lhs, rhs, 1e-12));
    }

    #[test]
    fn hypergeometric_symmetric_in_numerators(
        a in -2.5f64..3.0, b in -2.5f64..3.0, c in 0.3f64..4.0,
        zr in -0.9f64..0.9, zi in -0.9f64..0.9,
    ) {
        let z = Complex64::new(zr, zi);
        let ab = gauss_2f1(&HypParams::real(a, b, c).unwrap(), z).unwrap();
        let ba = gauss_2f1(&HypParams::real(b, a, c).unwrap(), z).unwrap();
        prop_assert!(close(ab, ba, 1e-11));
    }

    #[test]
    fn hypergeometric_conjugate_symmetry(
        a in -2.0f64..3.0, b in -2.0f64..3.0, c in 0.3f64..4.0,
        zr in -3.0f64..0.95, zi in 0.01f64..2.0,
    ) {
        let p = HypParams::real(a, b, c).unwrap();
        let z = Complex64::new(zr, zi);
        let up = gauss_2f1(&p, z).unwrap();
        let down = gauss_2f1(&p, z.conj()).unwrap();
        prop_assert!(close(up, down.conj(), 1e-10));
    }

    #[test]
    fn kernel_invariant_and_hermitian(seed in any::<u64>(), n in 1usize..=4, m in 0.1f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = mass_param(n, m).unwrap();
        let z = sample_crown(n, 1.5, 1.2, &mut rng);
        let w = sample_crown(n, 1.5, 1.2, &mut rng);
        let g = random_word(n, 5, &mut rng);
        let base = psi_kernel(&p, &z, &w).unwrap();
        let moved = psi_kernel(&p, &g.act(&z).unwrap(), &g.act(&w).unwrap()).unwrap();
        prop_assert!(close(base, moved, 1e-8));
        let swapped = psi_kernel(&p, &w, &z).unwrap();
        prop_assert!(close(base, swapped.conj(), 1e-10));
    }

    #[test]
    fn crown_membership_is_invariant(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = sample_crown(n, 1.5, 1.3, &mut rng);
        let g = random_word(n, 4, &mut rng);
        prop_assert!(in_crown(&z, 1e-12));
        prop_assert!(in_crown(&g.act(&z).unwrap(), 1e-9));
    }

    #[test]
    fn cocycle_identity(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_word(n, 3, &mut rng);
        let h = random_word(n, 3, &mut rng);
        let u = random_unit_vector(n, &mut rng);
        let (hu, _) = h.boundary_action(&u).unwrap();
        let lhs = g.compose(&h).cocycle(&u).unwrap();
        let rhs = g.cocycle(&hu).unwrap() * h.cocycle(&u).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0));
    }

    #[test]
    fn bilinear_form_preserved(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = sample_crown(n, 1.0, 1.0, &mut rng);
        let w = sample_crown(n, 1.0, 1.0, &mut rng);
        let g = random_word(n, 4, &mut rng);
        let before = bilinear(&z, &sigma_v(&w)).unwrap();
        let after = bilinear(&g.act(&z).unwrap(), &sigma_v(&g.act(&w).unwrap())).unwrap();
        prop_assert!(close(before, after, 1e-9));
    }

    #[test]
    fn cayley_intertwines_ray_inversion(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = sample_crown(n, 1.0, 1.0, &mut rng);
        let Ok(lhs) = ray_inversion(&z).and_then(|r| cayley(&r)) else { return Ok(()) };
        let Ok(c) = cayley(&z) else { return Ok(()) };
        let rhs = -&alpha(&c);
        prop_assert!(lhs.distance(&rhs) <= 1e-8 * (1.0 + c.norm()));
    }

    #[test]
    fn sphere_rule_has_unit_mass(d in 0usize..=3, order in 2usize..20) {
        let rule = sphere_rule(d, order).unwrap();
        let mass = rule.integrate(|_| Complex64::new(1.0, 0.0)).unwrap();
        prop_assert!((mass.re - 1.0).abs() <= 1e-13);
    }

    #[test]
    fn sphere_rule_averages_zonal_harmonics(d in 1usize..=3, degree in 1usize..8) {
        // zonal harmonics of positive degree average to zero
        let rule = sphere_rule(d, 12).unwrap();
        let alpha = (d as f64 - 1.0) / 2.0;
        let avg = rule.integrate(|u| Complex64::new(normalized_gegenbauer(degree, alpha, u[0]), 0.0)).unwrap();
        prop_assert!(avg.norm() <= 1e-12);
    }

    #[test]
    fn boosts_form_a_one_parameter_group(n in 1usize..=4, s in -2.0f64..2.0, t in -2.0f64..2.0) {
        let lhs = make_boost(n, s).compose(&make_boost(n, t));
        let rhs = make_boost(n, s + t);
        prop_assert!((lhs.real_matrix() - rhs.real_matrix()).norm() <= 1e-11 * (s + t).abs().exp().max(1.0) * 4.0);
    }
}

#[test]
fn cayley_of_inversion_is_not_minus_alpha_of_input() {
    let z = &CPoint::basis(2, 0) * 2.0;
    let lhs = cayley(&ray_inversion(&z).unwrap()).unwrap();
    let naive = -&alpha(&z);
    assert!(lhs.distance(&naive) > 0.5);
}
