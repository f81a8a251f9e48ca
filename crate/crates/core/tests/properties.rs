mod common;

use proptest::prelude::*;
use qcut::certify::{check_certificate, friends_split};
use qcut::linalg::{eig_sym, norm2, Mat};
use qcut::model::{eval_body, eval_cut, ConvexBody, Cut, SplitDisjunction};
use qcut::splitcuts::{homogeneous_coeffs, lift_affine, secant_coeffs, split_cut};
use qcut::verify::ConvexPolygon;

fn sym_mat(vals: &[f64], n: usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = vals[i * n + j];
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

fn interval() -> impl Strategy<Value = (f64, f64)> {
    (-3.0..3.0f64, 0.05..3.0f64).prop_map(|(a, w)| (a, a + w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn secant_interpolates(f0 in -5.0..5.0f64, f1 in -5.0..5.0f64, (p0, p1) in interval()) {
        let s = secant_coeffs(f0, f1, p0, p1).unwrap();
        prop_assert!((s.a * p0 + s.b - f0).abs() <= 1e-9);
        prop_assert!((s.a * p1 + s.b - f1).abs() <= 1e-9);
    }

    #[test]
    fn homogeneous_matches_abs_at_ends(p0 in -5.0..-0.01f64, p1 in 0.01..5.0f64) {
        let h = homogeneous_coeffs(p0, p1).unwrap();
        prop_assert!((h.a * p0 + h.b - p0.abs()).abs() <= 1e-9);
        prop_assert!((h.a * p1 + h.b - p1.abs()).abs() <= 1e-9);
    }

    #[test]
    fn eig_reconstructs(n in 1usize..5, vals in prop::collection::vec(-2.0..2.0f64, 16)) {
        let m = sym_mat(&vals, n);
        let (w, v) = eig_sym(&m).unwrap();
        let back = v.matmul(&Mat::diag(&w)).unwrap().matmul(&v.transpose()).unwrap();
        prop_assert!(back.sub(&m).unwrap().max_abs() <= 1e-9);
        prop_assert!(w.windows(2).all(|p| p[0] <= p[1] + 1e-12));
    }

    #[test]
    fn hull_contains_its_points(pts in prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 3..40)) {
        let pts: Vec<[f64; 2]> = pts.into_iter().map(|(x, y)| [x, y]).collect();
        let hull = ConvexPolygon::hull(&pts);
        if hull.area() > 1e-9 {
            for p in &pts {
                prop_assert!(hull.contains(*p) || hull.boundary_distance(*p) <= 1e-9);
            }
        }
    }

    /// Body points outside the open strip satisfy the ellipsoid split cut.
    #[test]
    fn ellipsoid_cut_keeps_outside_points(
        seed in 0u64..1_000_000,
        (u0, u1) in interval(),
        dirs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, 0.0..1.0f64), 50),
    ) {
        let mut rng = common::rng(seed);
        let b = common::rand_mat(&mut rng, 2);
        let c = common::rand_vec(&mut rng, 2, -1.0, 1.0);
        let body = ConvexBody::ellipsoid(b, c.clone(), 2.0).unwrap();
        let split = SplitDisjunction::new(vec![0.6, 0.8], u0, u1).unwrap();
        let (cut, _) = split_cut(&body, &split).unwrap();
        for (dx, dy, s) in dirs {
            let d = norm2(&[dx, dy]);
            if d < 1e-3 {
                continue;
            }
            let x = [c[0] + 6.0 * s * dx / d, c[1] + 6.0 * s * dy / d];
            let v = split.value(&x).unwrap();
            if eval_body(&body, &x).unwrap() <= 0.0 && (v <= u0 || v >= u1) {
                prop_assert!(eval_cut(&cut, &x).unwrap() <= 1e-9, "{x:?}");
            }
        }
    }

    /// Points in the strip kept by a paraboloid cut have checkable friends.
    #[test]
    fn paraboloid_friends_check(
        seed in 0u64..1_000_000,
        (u0, u1) in interval(),
        x0 in -2.0..2.0f64,
        lift in 0.0..4.0f64,
    ) {
        let mut rng = common::rng(seed);
        let b = common::rand_mat(&mut rng, 1);
        let c = common::rand_vec(&mut rng, 1, -1.0, 1.0);
        let body = ConvexBody::paraboloid(b, c).unwrap();
        let split = SplitDisjunction::new(vec![1.0], u0, u1).unwrap();
        let (cut, _) = split_cut(&body, &split).unwrap();
        let x = u0 + (u1 - u0) * (x0 + 2.0) / 4.0;
        let p = [x, body.value(&[x]).unwrap() + lift];
        let inside = split.value(&p).unwrap();
        prop_assume!(inside > u0 + 1e-6 && inside < u1 - 1e-6);
        prop_assume!(eval_cut(&cut, &p).unwrap() <= 0.0);
        let cert = friends_split(&body, &split, &p).unwrap();
        prop_assert!(check_certificate(&body, &split, &p, &cert));
    }

    #[test]
    fn lift_is_conjugation(seed in 0u64..1_000_000, t in -2.0..4.0f64, xs in prop::collection::vec(-2.0..2.0f64, 2)) {
        let mut rng = common::rng(seed);
        let b = common::rand_mat(&mut rng, 2);
        let c = common::rand_vec(&mut rng, 2, -1.0, 1.0);
        let cut = Cut::Norm { matrix: Mat::identity(2), offset: vec![0.3, -0.2], p: 2, slope: vec![0.5, 0.1], t_coef: 0.7, constant: 0.4 };
        let lifted = lift_affine(&cut, &b, &c).unwrap();
        let y = b.matvec(&[xs[0] - c[0], xs[1] - c[1]]).unwrap();
        let u = eval_cut(&lifted, &[xs[0], xs[1], t]).unwrap();
        let v = eval_cut(&cut, &[y[0], y[1], t]).unwrap();
        prop_assert!((u - v).abs() <= 1e-10 * v.abs().max(1.0));
    }

    #[test]
    fn cut_json_round_trip(seed in 0u64..1_000_000) {
        for case in common::all_cases(seed, 1, true) {
            let text = serde_json::to_string(&case.cut).unwrap();
            let back: Cut = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, case.cut);
        }
    }
}
