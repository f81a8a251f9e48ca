#![allow(dead_code)]

use std::sync::Arc;

use qcut::interscuts::{
    aggregate_epigraph, concentric_ellipsoid_cut, intersection_cut_quadratic, AggregationForm, Piece,
};
use qcut::linalg::{dot, eig_sym, inverse, min_eigenvalue, norm2, Mat};
use qcut::model::{ConvexBody, Cut, Forbidden, SplitDisjunction};
use qcut::splitcuts::split_cut;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(lo..hi)).collect()
}

/// `I + 0.4·U[−1, 1]` conditioned so that `σ_min(B) ≥ 0.4`.
pub fn rand_mat(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    loop {
        let mut m = Mat::identity(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += 0.4 * rng.gen_range(-1.0..1.0);
            }
        }
        let gram = m.transpose().matmul(&m).unwrap();
        if min_eigenvalue(&gram).unwrap() >= 0.16 {
            return m;
        }
    }
}

fn rand_dir(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v = rand_vec(rng, n, -1.0, 1.0);
        if norm2(&v) > 0.3 {
            return v;
        }
    }
}

fn sign(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen::<bool>() {
        1.0
    } else {
        -1.0
    }
}

/// Two sorted values in `[lo, hi]` at least `gap` apart.
fn interval(rng: &mut ChaCha8Rng, lo: f64, hi: f64, gap: f64) -> (f64, f64) {
    loop {
        let (a, b) = (rng.gen_range(lo..hi), rng.gen_range(lo..hi));
        if (a - b).abs() >= gap {
            return (a.min(b), a.max(b));
        }
    }
}

/// Body, removed region and the closed-form cut for it.
#[derive(Clone, Debug)]
pub struct Case {
    pub family: &'static str,
    pub body: ConvexBody,
    pub forbidden: Forbidden,
    pub split: Option<SplitDisjunction>,
    pub aggregation: Option<AggregationForm>,
    pub cut: Cut,
}

impl Case {
    fn split(family: &'static str, body: ConvexBody, split: SplitDisjunction) -> Case {
        let (cut, _) = split_cut(&body, &split).unwrap_or_else(|e| panic!("{family}: {e} for {split:?}"));
        Case { family, body, forbidden: Forbidden::Split(split.clone()), split: Some(split), aggregation: None, cut }
    }
}

/// Split families that do not involve `t` use `π0, π1` within 1.5
/// standardized units of the centre, so friends stay in default boxes.
fn std_scale(b: &Mat, c: &[f64], pi: &[f64]) -> (f64, f64) {
    let binv = inverse(b).unwrap();
    (norm2(&binv.tr_matvec(pi).unwrap()), dot(pi, c))
}

fn frame(rng: &mut ChaCha8Rng, n: usize) -> (Mat, Vec<f64>, Vec<f64>) {
    let b = rand_mat(rng, n);
    let c = rand_vec(rng, n, -1.0, 1.0);
    let pi = if n == 1 { vec![sign(rng) * rng.gen_range(0.5..1.5)] } else { rand_dir(rng, n) };
    (b, c, pi)
}

pub fn paraboloid_simple(rng: &mut ChaCha8Rng, n: usize) -> Case {
    let (b, c, pi) = frame(rng, n);
    let (rho, shift) = std_scale(&b, &c, &pi);
    let (u0, u1) = interval(rng, -1.5, 1.5, 0.3);
    let split = SplitDisjunction::new(pi, shift + rho * u0, shift + rho * u1).unwrap();
    Case::split("paraboloid", ConvexBody::paraboloid(b, c).unwrap(), split)
}

pub fn cone_simple(rng: &mut ChaCha8Rng, n: usize) -> Case {
    let (b, c, pi) = frame(rng, n);
    let (rho, shift) = std_scale(&b, &c, &pi);
    let (u0, u1) = interval(rng, -1.5, 1.5, 0.3);
    let split = SplitDisjunction::new(pi, shift + rho * u0, shift + rho * u1).unwrap();
    Case::split("cone", ConvexBody::cone(b, c).unwrap(), split)
}

pub fn ellipsoid(rng: &mut ChaCha8Rng, n: usize, squared: bool) -> Case {
    let (b, c, pi) = frame(rng, n);
    let r: f64 = rng.gen_range(0.8..2.0);
    let (rho, shift) = std_scale(&b, &c, &pi);
    let (u0, u1) = interval(rng, -1.1 * r, 1.1 * r, 0.2 * r);
    let split = SplitDisjunction::new(pi, shift + rho * u0, shift + rho * u1).unwrap();
    let body = if squared {
        ConvexBody::ellipsoid_squared(b, c, r * r).unwrap()
    } else {
        ConvexBody::ellipsoid(b, c, r).unwrap()
    };
    Case::split(if squared { "ellipsoid_squared" } else { "ellipsoid" }, body, split)
}

pub fn hyperboloid(rng: &mut ChaCha8Rng, n: usize) -> Case {
    let pi = if n == 1 { vec![sign(rng) * rng.gen_range(0.5..1.5)] } else { rand_dir(rng, n) };
    let l = sign(rng) * rng.gen_range(0.3..1.5);
    let rho = norm2(&pi);
    let (u0, u1) = if rng.gen_range(0..4) == 0 {
        let h = rng.gen_range(0.3..1.5);
        (-h, h)
    } else {
        interval(rng, -1.5, 1.5, 0.3)
    };
    let split = SplitDisjunction::new(pi, rho * u0, rho * u1).unwrap();
    Case::split("hyperboloid", ConvexBody::hyperboloid(n, l).unwrap(), split)
}

pub fn p_cone(rng: &mut ChaCha8Rng, n: usize) -> Case {
    let p = [1, 3, 4][rng.gen_range(0..3)];
    let k = rng.gen_range(0..n);
    let lambda = sign(rng) * rng.gen_range(0.5..1.5);
    let (a, b) = interval(rng, -1.5, 1.5, 0.3);
    let mut pi = vec![0.0; n];
    pi[k] = lambda;
    let (p0, p1) = if lambda > 0.0 { (lambda * a, lambda * b) } else { (lambda * b, lambda * a) };
    let split = SplitDisjunction::new(pi, p0, p1).unwrap();
    Case::split("p_cone", ConvexBody::p_cone(n, p).unwrap(), split)
}

pub fn p_ball(rng: &mut ChaCha8Rng, n: usize) -> Case {
    let p = [1, 3, 4][rng.gen_range(0..3)];
    let r = rng.gen_range(0.8..2.0);
    let k = rng.gen_range(0..n);
    let lambda = sign(rng) * rng.gen_range(0.5..1.5);
    let (a, b) = interval(rng, -0.95 * r, 0.95 * r, 0.2 * r);
    let mut pi = vec![0.0; n];
    pi[k] = lambda;
    let (p0, p1) = if lambda > 0.0 { (lambda * a, lambda * b) } else { (lambda * b, lambda * a) };
    let split = SplitDisjunction::new(pi, p0, p1).unwrap();
    Case::split("p_ball", ConvexBody::p_ball(n, p, r).unwrap(), split)
}

/// `π̂ ≠ 0` on a paraboloid; the interval sits between the vertex value and
/// a few units above it along the direction of growth.
pub fn paraboloid_general(rng: &mut ChaCha8Rng, n: usize) -> Case {
    let (b, c, pi) = frame(rng, n);
    let (rho, shift) = std_scale(&b, &c, &pi);
    let pi_hat = sign(rng) * rng.gen_range(0.3..1.5);
    let tau = -rho * rho / (4.0 * pi_hat);
    let (a, bb) = interval(rng, -0.5, 2.5, 0.3);
    let (v0, v1) = if pi_hat > 0.0 { (tau + a, tau + bb) } else { (tau - bb, tau - a) };
    let split = SplitDisjunction::with_t(pi, pi_hat, shift + v0, shift + v1).unwrap();
    Case::split("paraboloid_general", ConvexBody::paraboloid(b, c).unwrap(), split)
}

pub fn cone_general(rng: &mut ChaCha8Rng, n: usize) -> Case {
    let (b, c, pi) = frame(rng, n);
    let (rho, shift) = std_scale(&b, &c, &pi);
    let pi_hat = rho * rng.gen_range(-1.5..1.5);
    let (a, bb) = interval(rng, -1.5, 1.5, 0.3);
    let split = SplitDisjunction::with_t(pi, pi_hat, shift + a, shift + bb).unwrap();
    Case::split("cone_general", ConvexBody::cone(b, c).unwrap(), split)
}

pub fn cylinder(rng: &mut ChaCha8Rng) -> Case {
    let base = paraboloid_simple(rng, 2);
    let mut pi = base.split.clone().unwrap().pi;
    pi.insert(1, 0.0);
    let s = base.split.unwrap();
    let body = ConvexBody::cylinder(base.body, vec![1]).unwrap();
    Case::split("cylinder", body, SplitDisjunction::new(pi, s.pi0, s.pi1).unwrap())
}

pub fn intersection_quadratic(rng: &mut ChaCha8Rng, n: usize) -> Case {
    let b = rand_mat(rng, n);
    let c = rand_vec(rng, n, -0.5, 0.5);
    let a = rand_mat(rng, n).scale(rng.gen_range(0.6..1.4));
    let d = rand_vec(rng, n, -0.5, 0.5);
    let q = -rng.gen_range(0.2..1.5);
    let gamma = if rng.gen::<bool>() { 0.0 } else { rng.gen_range(0.0..1.0) };
    let cut = intersection_cut_quadratic(&b, &c, &a, &d, q, gamma).unwrap();
    Case {
        family: "intersection_quadratic",
        body: ConvexBody::paraboloid(b, c).unwrap(),
        forbidden: Forbidden::QuadraticHypograph { a, d, q, gamma },
        split: None,
        aggregation: None,
        cut,
    }
}

pub fn concentric(rng: &mut ChaCha8Rng, n: usize) -> Case {
    let b = rand_mat(rng, n);
    let c = rand_vec(rng, n, -1.0, 1.0);
    let r1: f64 = rng.gen_range(1.0..4.0);
    let r2 = r1 * rng.gen_range(0.2..0.9);
    let (cut, _) = concentric_ellipsoid_cut(&b, &c, r1, r2).unwrap();
    Case {
        family: "concentric",
        body: ConvexBody::ellipsoid_squared(b.clone(), c.clone(), r1).unwrap(),
        forbidden: Forbidden::EllipsoidExterior { b, c, r2 },
        split: None,
        aggregation: None,
        cut,
    }
}

/// Random aggregation data whose `F` is exactly a paraboloid `‖K(x − c)‖²`.
pub fn aggregation(rng: &mut ChaCha8Rng, n: usize) -> Case {
    let rot = eig_sym(&{
        let m = rand_mat(rng, n);
        m.transpose().matmul(&m).unwrap()
    })
    .unwrap()
    .1;
    let directions: Vec<Vec<f64>> = (0..n).map(|i| rot.col(i)).collect();
    let kappas = rand_vec(rng, n, 0.5, 2.0);
    let alpha_n = rng.gen_range(0.5..2.0);
    let mut weights: Vec<f64> = (0..n - 1).map(|_| alpha_n * rng.gen_range(0.0..1.0)).collect();
    weights.push(alpha_n);
    let m = rand_vec(rng, n, -1.0, 1.0);
    let l = rand_vec(rng, n, -1.0, 1.0);
    let gamma = if rng.gen::<bool>() { 0.0 } else { rng.gen_range(0.0..1.0) };
    // K has rows √κᵢ aᵢᵀ; F = ‖K(x − c)‖² when c = −(KᵀK)⁻¹m/2 and r = cᵀKᵀKc
    let mut k = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            k[(i, j)] = kappas[i].sqrt() * directions[i][j];
        }
    }
    let ktk = k.transpose().matmul(&k).unwrap();
    let c: Vec<f64> = inverse(&ktk).unwrap().matvec(&m).unwrap().iter().map(|v| -0.5 * v).collect();
    let r = ktk.quad_form(&c).unwrap();
    let q = -rng.gen_range(0.5..2.0);
    let form = AggregationForm {
        directions,
        pieces: kappas.iter().map(|k| Piece::Quadratic(*k)).collect(),
        weights,
        m,
        l,
        r,
        q,
        gamma,
    };
    let cut = aggregate_epigraph(&form).unwrap().to_cut().unwrap();
    let g = form.clone();
    let forbidden = Forbidden::Custom(Arc::new(move |p: &[f64]| {
        let n = g.n();
        g.eval_g(&p[..n]) - g.gamma * p[n]
    }));
    Case {
        family: "aggregation",
        body: ConvexBody::paraboloid(k, c).unwrap(),
        forbidden,
        split: None,
        aggregation: Some(form),
        cut,
    }
}

/// Every family, `per_family` instances each. Planar mode uses `n = 1` for
/// epigraphs and `n = 2` for level sets so the feasible slice is 2D.
pub fn all_cases(seed: u64, per_family: usize, planar: bool) -> Vec<Case> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for _ in 0..per_family {
        let ne = if planar { 1 } else { rng.gen_range(2..4) };
        let nl = if planar { 2 } else { rng.gen_range(2..4) };
        out.push(paraboloid_simple(&mut rng, ne));
        out.push(cone_simple(&mut rng, ne));
        out.push(ellipsoid(&mut rng, nl, false));
        out.push(ellipsoid(&mut rng, nl, true));
        out.push(hyperboloid(&mut rng, ne));
        out.push(p_cone(&mut rng, ne));
        out.push(p_ball(&mut rng, nl));
        out.push(paraboloid_general(&mut rng, ne));
        out.push(cone_general(&mut rng, ne));
        out.push(intersection_quadratic(&mut rng, ne));
        out.push(concentric(&mut rng, nl));
        out.push(aggregation(&mut rng, ne));
        if !planar {
            out.push(cylinder(&mut rng));
        }
    }
    out
}
