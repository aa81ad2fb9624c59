use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use ultraparallel::certify::{
    indices_to_check, projection_f, quadratic_coeffs, regions_containing, t_n_threshold, trace_w_at,
};
use ultraparallel::hermitian::{
    bergman_distance, cvec, hermitian_cross, reflection_from_polar, vector_class, ComplexVector3, HermitianModel,
    IsometryMatrix, VectorClass,
};
use ultraparallel::oracle::{disk_action, enumerate_g2_words, restrict_to_c12};
use ultraparallel::siegel::{
    cygan_distance, generators_zero, h_value, heisenberg_translation, kn_condition_lhs, r2r1_translation, r_to_xy,
    region_index_n, t_n_zero, HeisenbergPoint, ZeroParams,
};
use ultraparallel::triangle::{
    existence_bound, generators, polar_vectors, power_r2r1, project_to_axis, projected_disk, v_coordinate,
    TriangleParams,
};

const MODELS: [HermitianModel; 2] = [HermitianModel::Ball, HermitianModel::Siegel];

fn complex() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn vector() -> impl Strategy<Value = ComplexVector3> {
    (complex(), complex(), complex()).prop_map(|(a, b, c)| cvec(a, b, c))
}

fn heisenberg() -> impl Strategy<Value = HeisenbergPoint> {
    (complex(), -5.0..5.0f64).prop_map(|(z, t)| HeisenbergPoint::new(z, t))
}

/// `(r₁, r₂, r₃, cos α)` for an existing triangle with `C₃`, `C₁₂` ultra-parallel.
fn triangle() -> impl Strategy<Value = TriangleParams> {
    (0.01..1.5f64, 0.0..1.5f64, 0.0..1.5f64, 0.0..1.0f64).prop_filter_map("no admissible angle", |(a, b, c, u)| {
        let r3 = 1. + a;
        let r2 = r3 + b;
        let r1 = r2 + c;
        let cond1 = (r1 * r1 + r2 * r2) / (2. * r1 * r2 * r3);
        let hi = cond1.min(existence_bound(r1, r2, r3)).min(1.) - 1e-6;
        if hi <= -1. {
            return None;
        }
        let cos = -1. + u * (hi + 1.);
        TriangleParams::new(r1, r2, r3, cos.acos()).ok()
    })
}

fn zero_params() -> impl Strategy<Value = ZeroParams> {
    (0.01..3.0f64, 0.0..3.0f64, 0.0..PI).prop_map(|(a, b, alpha)| ZeroParams::new(1. + a + b, 1. + a, alpha).unwrap())
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_is_hermitian(z in vector(), w in vector()) {
        for m in MODELS {
            prop_assert!(close(m.product(&z, &w), m.product(&w, &z).conj(), 1e-14));
        }
    }

    #[test]
    fn cross_is_orthogonal(z in vector(), w in vector()) {
        for m in MODELS {
            if let Ok(c) = hermitian_cross(&z, &w, m) {
                let scale = c.norm() * z.norm().max(w.norm());
                prop_assert!(m.product(&c, &z).norm() <= 1e-12 * scale);
                prop_assert!(m.product(&c, &w).norm() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn reflection_in_positive_vector_is_involution(n in vector()) {
        for m in MODELS {
            if vector_class(&n, m).ok() != Some(VectorClass::Positive) || m.norm_sq(&n) < 1e-3 * n.norm_squared() {
                continue;
            }
            let r = reflection_from_polar(&n, m).unwrap();
            prop_assert!(r.pow(2).relative_distance(&IsometryMatrix::identity(m)) < 1e-10);
            prop_assert!(close(r.apply(&n)[0] - n[0], Complex64::new(0., 0.), 1e-10 * n.norm()));
        }
    }

    #[test]
    fn bergman_distance_is_symmetric(a in complex(), b in complex()) {
        let (a, b) = (a / (1. + a.norm()), b / (1. + b.norm()));
        let one = Complex64::new(1., 0.);
        let zero = Complex64::new(0., 0.);
        let (p, q) = (cvec(a, zero, one), cvec(b, zero, one));
        let d1 = bergman_distance(&p, &q, HermitianModel::Ball).unwrap();
        let d2 = bergman_distance(&q, &p, HermitianModel::Ball).unwrap();
        prop_assert!(d1 >= 0. && (d1 - d2).abs() < 1e-12);
    }

    #[test]
    fn polar_triple_recovers_parameters(p in triangle()) {
        let (r1, r2, r3, alpha) = polar_vectors(&p).invariants();
        prop_assert!((r1 - p.r1()).abs() < 1e-10 * p.r1());
        prop_assert!((r2 - p.r2()).abs() < 1e-10 * p.r2());
        prop_assert!((r3 - p.r3()).abs() < 1e-10 * p.r3());
        prop_assert!((alpha - p.alpha()).abs() < 1e-7);
    }

    #[test]
    fn closed_generators_match_polar_reflections(p in triangle()) {
        let g = generators(&p);
        let polars = polar_vectors(&p);
        for (r, n) in [(&g.r1, &polars.n1), (&g.r2, &polars.n2), (&g.r3, &polars.n3)] {
            let from_polar = reflection_from_polar(n, HermitianModel::Ball).unwrap();
            prop_assert!(r.relative_distance(&from_polar) < 1e-10);
        }
    }

    #[test]
    fn power_closed_form(p in triangle(), n in -12i64..12) {
        let g = generators(&p);
        prop_assert!((&g.r2 * &g.r1).pow(n).relative_distance(&power_r2r1(&p, n)) < 1e-9);
    }

    #[test]
    fn projection_routes_agree(p in triangle()) {
        let disk = projected_disk(&p).unwrap();
        let direct = project_to_axis(disk.center).unwrap();
        let closed = projection_f(p.r1(), p.r2(), p.r3(), p.cos_alpha()).unwrap();
        prop_assert!((direct - closed).abs() < 1e-10);
        prop_assert!(closed > 0.);
    }

    #[test]
    fn projection_is_monotone(p in triangle(), a in -1.0..1.0f64, b in -1.0..1.0f64) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let f = |t| projection_f(p.r1(), p.r2(), p.r3(), t).unwrap();
        prop_assert!(f(lo) <= f(hi) + 1e-15);
    }

    #[test]
    fn at_most_two_indices(p in triangle()) {
        prop_assert!(indices_to_check(&p).unwrap().len() <= 2);
    }

    #[test]
    fn trace_is_decreasing_in_cos_alpha(p in triangle(), n in 1u32..8) {
        let (r1, r2, r3) = (p.r1(), p.r2(), p.r3());
        prop_assert!(trace_w_at(r1, r2, r3, 0.3, n) > trace_w_at(r1, r2, r3, 0.4, n));
    }

    #[test]
    fn threshold_is_trace_root(p in triangle(), n in 1u32..8) {
        let (r1, r2, r3) = (p.r1(), p.r2(), p.r3());
        let t = t_n_threshold(r1, r2, r3, n);
        let slope = trace_w_at(r1, r2, r3, 0., n) - trace_w_at(r1, r2, r3, 1., n);
        prop_assert!((trace_w_at(r1, r2, r3, t, n) - 3.).abs() <= 1e-12 * slope.abs().max(1.) * t.abs().max(1.));
    }

    #[test]
    fn quadratic_sign_matches_disk_separation(p in triangle()) {
        let disk = projected_disk(&p).unwrap();
        let image = power_r2r1(&p, 1).apply(&cvec(0.0.into(), disk.center, 1.0.into()));
        let moved = image[1] / image[2];
        let gap = ultraparallel::triangle::disk_distance(disk.center, moved) - 2. * disk.radius;
        let g = quadratic_coeffs(p.r1(), p.r2(), p.r3()).eval(p.cos_alpha());
        if gap.abs() > 1e-6 && g.abs() > 1e-6 {
            prop_assert_eq!(gap > 0., g > 0.);
        }
    }

    #[test]
    fn v_coordinates_are_equally_spaced(r3 in 1.01..4.0f64, j in -3i64..3) {
        let d = |a: f64, b: f64| ultraparallel::triangle::disk_distance(a.into(), b.into());
        let step = d(v_coordinate(r3, 0), v_coordinate(r3, 1));
        prop_assert!((d(v_coordinate(r3, j), v_coordinate(r3, j + 1)) - step).abs() < 1e-7 * step.max(1.));
    }

    #[test]
    fn region_ties_share_thresholds(r2 in 1.05..6.0f64, extra in 0.0..5.0f64, r3 in 1.005..2.0f64) {
        let r1 = r2 + extra;
        let found = regions_containing(r1, r2, r3, 4).unwrap();
        let min = found.iter().map(|m| m.t_j).fold(f64::INFINITY, f64::min);
        for m in &found {
            prop_assert!(m.t_j <= min);
            prop_assert!(m.thresholds.iter().all(|&t| m.t_j <= t));
        }
    }

    #[test]
    fn heisenberg_law_is_associative(a in heisenberg(), b in heisenberg(), c in heisenberg()) {
        let l = a.compose(&b).compose(&c);
        let r = a.compose(&b.compose(&c));
        prop_assert!((l.zeta - r.zeta).norm() < 1e-12 && (l.t - r.t).abs() < 1e-11);
    }

    #[test]
    fn cygan_is_left_invariant(g in heisenberg(), p in heisenberg(), q in heisenberg()) {
        let d = cygan_distance(&p, &q);
        let e = cygan_distance(&g.compose(&p), &g.compose(&q));
        prop_assert!((d - e).abs() < 1e-12 * d.max(1.));
        prop_assert!(cygan_distance(&p, &p) == 0.);
    }

    #[test]
    fn translation_matrix_is_left_multiplication(g in heisenberg(), p in heisenberg()) {
        let image = HeisenbergPoint::from_lift(&heisenberg_translation(&g).apply(&p.lift())).unwrap();
        let expect = g.compose(&p);
        prop_assert!((image.zeta - expect.zeta).norm() < 1e-11 && (image.t - expect.t).abs() < 1e-10);
    }

    #[test]
    fn zero_generators_are_isometric_involutions(z in zero_params()) {
        let g = generators_zero(&z);
        for r in [&g.r1, &g.r2, &g.r3] {
            prop_assert!(r.form_residual() < 1e-12);
            prop_assert!(r.pow(2).relative_distance(&IsometryMatrix::identity(HermitianModel::Siegel)) < 1e-12);
        }
        prop_assert!((&g.r2 * &g.r1).relative_distance(&heisenberg_translation(&r2r1_translation(&z))) < 1e-13);
    }

    #[test]
    fn h_matches_cygan_separation(z in zero_params()) {
        let d = cygan_distance(&HeisenbergPoint::ORIGIN, &r2r1_translation(&z));
        let lhs = d.powi(4) / 16. - 1.;
        let h = h_value(z.r1(), z.r2(), z.cos_alpha());
        prop_assert!((lhs - h).abs() < 1e-9 * h.abs().max(lhs.abs()).max(1.));
    }

    #[test]
    fn region_index_word_goes_elliptic_first(z in zero_params()) {
        let (r1, r2) = (z.r1(), z.r2());
        if let Ok(ns) = region_index_n(r1, r2) {
            for n in ns {
                let tn = t_n_zero(r1, r2, n);
                for m in 1..=10 {
                    prop_assert!(tn <= t_n_zero(r1, r2, m) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn threshold_gap_in_xy(z in zero_params(), n in 2u32..12) {
        let (r1, r2) = (z.r1(), z.r2());
        let (x, y) = r_to_xy(r1, r2);
        let nf = n as f64;
        let gap = t_n_zero(r1, r2, n - 1) - t_n_zero(r1, r2, n);
        let expect = (x * (1. - nf) + 2.) / (2. * nf * (nf * nf - 1.) * ((1. + y) * (1. + x + y)).sqrt());
        prop_assert!((gap - expect).abs() < 1e-12 * expect.abs().max(1.));
    }

    #[test]
    fn kn_lhs_is_scaled_h_at_threshold(z in zero_params(), n in 1u32..=10) {
        let (r1, r2) = (z.r1(), z.r2());
        let lhs = kn_condition_lhs(r1, r2, n);
        let rhs = (n * (n + 1)) as f64 * h_value(r1, r2, t_n_zero(r1, r2, n));
        prop_assert!((lhs - rhs).abs() < 1e-9 * lhs.abs().max(1.));
    }

    #[test]
    fn restricted_blocks_preserve_the_disk(p in triangle(), u in complex()) {
        let u = u / (1. + u.norm());
        for e in enumerate_g2_words(&generators(&p), 3) {
            let b = restrict_to_c12(&e.matrix).unwrap();
            let scale = b.iter().map(|c| c.norm()).fold(1., f64::max);
            prop_assert!((b.determinant().norm() - 1.).abs() < 1e-13 * scale * scale);
            prop_assert!(disk_action(&b, u).norm() < 1. + 1e-12);
        }
    }
}
