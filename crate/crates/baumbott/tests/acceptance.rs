//! Acceptance suite. One test per criterion; each prints a PASS line
//! with the measured quantities once its assertions hold.
//!
//! Exact criteria assert equality of Gaussian rationals; numeric
//! criteria pin the tolerances stated alongside each assertion.

use baumbott::charclass::{phi_eval, phi_mixed, SymmetricPolynomial};
use baumbott::error::Error;
use baumbott::foliation::{
    bb_residue, global_sum_check, invert_exact, linear_pullback, FoliationP2, SingularPoint,
    VectorField,
};
use baumbott::localalg::{
    grothendieck_residue, milnor_number, residue_pairing_matrix, MonomialOrder, ResidueCalculator,
};
use baumbott::parse::parse_polynomial;
use baumbott::poly::{ComplexPoint, Polynomial};
use baumbott::rational::GaussianRational as Q;
use baumbott::regnum::{
    bb_integrand, bb_numeric, bb_numeric_with_error, frame_eval, homotopy_identity_check,
    minimal_inverse_pointwise, ChiProfile, ShellQuadrature,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::time::Instant;

fn poly(src: &str, n: usize) -> Polynomial {
    parse_polynomial(src, n).unwrap()
}

fn gens(srcs: &[&str]) -> Vec<Polynomial> {
    let n = srcs.len();
    srcs.iter().map(|s| poly(s, n)).collect()
}

fn field(srcs: &[&str]) -> VectorField {
    VectorField::new(gens(srcs)).unwrap()
}

fn phi(src: &str, n: usize) -> SymmetricPolynomial {
    SymmetricPolynomial::parse_or_preset(src, n).unwrap()
}

/// Systems with the origin as their only affine common zero, with
/// local algebra dimensions verified by staircase count (and
/// independently against a computer-algebra oracle before freezing).
const SUITE: &[(&[&str], usize)] = &[
    (&["z1", "z2"], 1),
    (&["z1^2", "z2^2"], 4),
    (&["z1^2", "z2^3"], 6),
    (&["z1^2 - z2^3", "z2^2"], 4),
    (&["z1^3 - z2", "z2^2"], 6),
    (&["z1^2 - z2^2", "z2^3"], 6),
];

fn rational(rng: &mut StdRng) -> Q {
    let num = rng.gen_range(-4i64..=4);
    let den = rng.gen_range(1i64..=4);
    Q::from_ratio(num, den)
}

fn rational_matrix(rng: &mut StdRng, n: usize) -> Vec<Vec<Q>> {
    (0..n).map(|_| (0..n).map(|_| rational(rng)).collect()).collect()
}

fn mat_mul_exact(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Q::zero();
                    for k in 0..n {
                        acc = &acc + &(&a[i][k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Exact determinant by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
fn det_exact(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return Q::zero(),
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -&det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].inv();
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for j in col..n {
                a[r][j] = &a[r][j] - &(&f * &a[col][j]);
            }
        }
    }
    det
}

#[test]
fn criterion_1_exact_grothendieck_suite() {
    let started = Instant::now();
    // Values 1, 1, 1, 0. The fourth is the exponent-mismatch case
    // h = z2 against (z1^2, z2): z2/(z1^2 z2) has no z1 coefficient.
    assert_eq!(grothendieck_residue(&Polynomial::one(2), &gens(&["z1", "z2"])).unwrap(), Q::one());
    assert_eq!(
        grothendieck_residue(&poly("z1*z2", 2), &gens(&["z1^2", "z2^2"])).unwrap(),
        Q::one()
    );
    assert_eq!(
        grothendieck_residue(&poly("z1*z2", 2), &gens(&["z1^2 - z2^3", "z2^2"])).unwrap(),
        Q::one()
    );
    assert_eq!(grothendieck_residue(&poly("z2", 2), &gens(&["z1^2", "z2"])).unwrap(), Q::zero());
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("[PASS] criterion 1: exact Grothendieck suite (1, 1, 1, 0) in {elapsed:?}");
}

#[test]
fn criterion_2_jacobian_dimension_identity() {
    let started = Instant::now();
    for (srcs, dim) in SUITE {
        let g = gens(srcs);
        let x = VectorField::new(g.clone()).unwrap();
        let jac = x.jacobian();
        let det = jac[0][0].mul(&jac[1][1]).sub(&jac[0][1].mul(&jac[1][0]));
        let res = grothendieck_residue(&det, &g).unwrap();
        let staircase = milnor_number(&g).unwrap();
        assert_eq!(staircase, *dim, "staircase of {srcs:?}");
        assert_eq!(res, Q::from_int(*dim as i64), "residue of det J for {srcs:?}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "[PASS] criterion 2: Res[det J dz/a] = dim O/(a) on {} systems in {elapsed:?}",
        SUITE.len()
    );
}

#[test]
fn criterion_3_baum_bott_localization_on_p2() {
    let started = Instant::now();
    let origin = vec![Q::zero(), Q::zero()];
    let points = [vec![origin.clone()], vec![origin.clone()], vec![origin]];

    // Weights (0, 1, 3): affine pair (x, 3y).
    let f = FoliationP2::new(1, poly("z1", 2), poly("3*z2", 2), false).unwrap();
    let r = global_sum_check(&f, &points, &phi("c1^2", 2)).unwrap();
    let vals: Vec<Q> = r.per_point.iter().map(|p| p.residue.clone()).collect();
    assert_eq!(vals, vec![Q::from_ratio(16, 3), Q::from_ratio(-1, 2), Q::from_ratio(25, 6)]);
    assert_eq!(r.sum, Q::from_int(9));
    assert!(r.matched);
    let r = global_sum_check(&f, &points, &phi("c2", 2)).unwrap();
    assert_eq!(r.sum, Q::from_int(3));
    assert!(r.matched);

    // Weights (0, 1, 2): affine pair (x, 2y).
    let f = FoliationP2::new(1, poly("z1", 2), poly("2*z2", 2), false).unwrap();
    let r = global_sum_check(&f, &points, &phi("c1^2", 2)).unwrap();
    let vals: Vec<Q> = r.per_point.iter().map(|p| p.residue.clone()).collect();
    assert_eq!(vals, vec![Q::from_ratio(9, 2), Q::zero(), Q::from_ratio(9, 2)]);
    assert_eq!(r.sum, Q::from_int(9));
    assert!(r.matched);
    let r = global_sum_check(&f, &points, &phi("c2", 2)).unwrap();
    assert_eq!(r.sum, Q::from_int(3));
    assert!(r.matched);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("[PASS] criterion 3: P^2 localization sums 9 = (d+2)^2 and 3 = d^2+d+1 in {elapsed:?}");
}

#[test]
fn criterion_4_cn_residue_equals_milnor_number() {
    let started = Instant::now();
    let origin = SingularPoint::origin(2);
    let cn = phi("cn", 2);
    for (srcs, dim) in SUITE {
        let x = field(srcs);
        let res = bb_residue(&x, &origin, &cn).unwrap();
        assert_eq!(res, Q::from_int(*dim as i64), "c_n residue for {srcs:?}");
        assert_eq!(milnor_number(x.components()).unwrap(), *dim);
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("[PASS] criterion 4: bb_residue(c_n) = Milnor number on all suite fields in {elapsed:?}");
}

#[test]
fn criterion_5_regularized_curvature_convergence() {
    let started = Instant::now();
    let chi = ChiProfile::quintic();

    // n = 2, eps = 1e-2, grid 40 per real dimension, radius 1.
    let q = ShellQuadrature { radius: 1.0, grid: 40, eps: 1e-2, ..ShellQuadrature::for_dim(2, 1e-2) };
    let v = bb_numeric(&field(&["z1", "z2"]), &phi("c2", 2), &chi, &q).unwrap();
    let rel_a = (v - Complex64::new(1.0, 0.0)).norm();
    assert!(rel_a < 0.02, "c2 of (z1, z2): {v}, rel err {rel_a}");

    let v = bb_numeric(&field(&["z1", "2*z2"]), &phi("c1^2", 2), &chi, &q).unwrap();
    let rel_b = (v - Complex64::new(4.5, 0.0)).norm() / 4.5;
    assert!(rel_b < 0.02, "c1^2 of (z1, 2z2): {v}, rel err {rel_b}");

    // n = 1 Cauchy sign anchor: +1 within 1%.
    let q1 = ShellQuadrature::for_dim(1, 1e-3);
    let v = bb_numeric(&field(&["z1"]), &phi("c1", 1), &chi, &q1).unwrap();
    let rel_c = (v - Complex64::new(1.0, 0.0)).norm();
    assert!(rel_c < 0.01, "Cauchy case: {v}, rel err {rel_c}");
    assert!(v.re > 0.0, "sign anchor must be +1, got {v}");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 600.0, "took {elapsed:?}");
    println!(
        "[PASS] criterion 5: regularized curvature gives 1, 4.5, +1 \
         (rel errs {rel_a:.2e}, {rel_b:.2e}, {rel_c:.2e}) in {elapsed:?}"
    );
}

#[test]
fn criterion_6_vanishing_theorem_pointwise() {
    let mut rng = StdRng::seed_from_u64(600);
    let mut worst: f64 = 0.0;
    for (srcs, _) in SUITE {
        let x = field(srcs);
        let n = x.dim();
        let cn = phi("cn", n);
        let chi = ChiProfile::quintic();
        let mut checked = 0;
        while checked < 100 {
            let coords: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let z = ComplexPoint::new(coords).unwrap();
            let frame = match frame_eval(&x, &z) {
                Ok(f) => f,
                Err(_) => continue,
            };
            // Pick eps so that t = |a|^2/eps = 2.5 > t1: chi_eps = 1.
            let eps = frame.norm_sqr / 2.5;
            let density = bb_integrand(&x, &cn, &chi, eps, &z).unwrap();
            // Normalize by the magnitude of the terms being cancelled:
            // the density here is n!/pi^n * det(dbar sigma) * Phi(J).
            let s_norm: f64 = frame
                .dbar_sigma
                .iter()
                .flatten()
                .map(|v| v.norm_sqr())
                .sum::<f64>()
                .sqrt();
            let phi_j = phi_eval::<Complex64>(&cn, &frame.jac).unwrap();
            let factorial: f64 = (1..=n as u64).product::<u64>() as f64;
            let scale = factorial / std::f64::consts::PI.powi(n as i32)
                * s_norm.powi(n as i32)
                * (1.0 + phi_j.norm());
            let normalized = density.norm() / (scale + f64::MIN_POSITIVE);
            assert!(
                normalized <= 1e-10,
                "field {srcs:?} at {z:?}: normalized residual {normalized}"
            );
            worst = worst.max(normalized);
            checked += 1;
        }
    }
    println!(
        "[PASS] criterion 6: integrand vanishes where chi = 1 (100 pts/field, worst {worst:.2e})"
    );
}

#[test]
fn criterion_7_chi_and_section_choice_independence() {
    let started = Instant::now();
    let quintic = ChiProfile::quintic();
    let cubic = ChiProfile::cubic();
    let cases: &[(&[&str], &str)] = &[
        (&["z1", "z2"], "c2"),
        (&["z1", "2*z2"], "c1^2"),
        (&["z1^2 - z2^3", "z2^2"], "c2"),
    ];
    for (srcs, phi_src) in cases {
        let x = field(srcs);
        let p = phi(phi_src, x.dim());
        let q = ShellQuadrature { eps: 1e-2, ..ShellQuadrature::for_dim(x.dim(), 1e-2) };
        let (vq, eq) = bb_numeric_with_error(&x, &p, &quintic, &q).unwrap();
        let (vc, ec) = bb_numeric_with_error(&x, &p, &cubic, &q).unwrap();
        let diff = (vq - vc).norm();
        let budget = 2.0 * eq.max(ec);
        assert!(
            diff <= budget,
            "field {srcs:?}: profiles differ by {diff:.3e}, budget {budget:.3e}"
        );
        println!(
            "  {srcs:?} {phi_src}: |quintic - cubic| = {diff:.3e} <= 2 max(est) = {budget:.3e}"
        );
    }
    // n = 1 case.
    let x = field(&["z1"]);
    let p = phi("c1", 1);
    let q = ShellQuadrature::for_dim(1, 1e-3);
    let (vq, eq) = bb_numeric_with_error(&x, &p, &quintic, &q).unwrap();
    let (vc, ec) = bb_numeric_with_error(&x, &p, &cubic, &q).unwrap();
    assert!((vq - vc).norm() <= 2.0 * eq.max(ec));
    let elapsed = started.elapsed();
    println!("[PASS] criterion 7: cubic vs quintic within twice the estimated quadrature error in {elapsed:?}");
}

#[test]
fn criterion_8_algebraic_identities() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(800);

    // Polarization sum identity, 50 random rational instances.
    let phi3 = phi("c1*c2", 3);
    for _ in 0..50 {
        let a = rational_matrix(&mut rng, 3);
        let b = rational_matrix(&mut rng, 3);
        let sum_ab: Vec<Vec<Q>> = (0..3)
            .map(|i| (0..3).map(|j| &a[i][j] + &b[i][j]).collect())
            .collect();
        let mut total = Q::zero();
        for k in 0..=3 {
            total = &total + &phi_mixed(&phi3, &a, &b, k).unwrap();
        }
        assert_eq!(total, phi_eval(&phi3, &sum_ab).unwrap());
    }

    // Conjugation invariance, 50 random rational instances, sizes <= 4.
    for i in 0..50 {
        let n = 2 + (i % 3);
        let p = phi(if n == 2 { "c2" } else { "c1*cn-1" }, n);
        let a = rational_matrix(&mut rng, n);
        let t = loop {
            let cand = rational_matrix(&mut rng, n);
            if let Some(inv) = invert_exact(&cand) {
                break (cand, inv);
            }
        };
        let conj = mat_mul_exact(&mat_mul_exact(&t.0, &a), &t.1);
        assert_eq!(phi_eval(&p, &conj).unwrap(), phi_eval(&p, &a).unwrap());
    }

    // Residue pairing matrices nonsingular on the suite.
    for (srcs, dim) in SUITE {
        let m = residue_pairing_matrix(&gens(srcs)).unwrap();
        assert_eq!(m.len(), *dim);
        assert!(!det_exact(&m).is_zero(), "singular pairing for {srcs:?}");
    }

    // Coordinate invariance of bb_residue under 20 random linear changes.
    let origin = SingularPoint::origin(2);
    let fields = [field(&["z1^2 - z2^3", "z2^2"]), field(&["z1", "3*z2"])];
    let phis = [phi("c1^2", 2), phi("c2", 2)];
    for i in 0..20 {
        let x = &fields[i % 2];
        let p = &phis[(i / 2) % 2];
        let base = bb_residue(x, &origin, p).unwrap();
        let l = loop {
            let cand = rational_matrix(&mut rng, 2);
            if invert_exact(&cand).is_some() {
                break cand;
            }
        };
        let pulled = linear_pullback(x, &l).unwrap();
        assert_eq!(bb_residue(&pulled, &origin, p).unwrap(), base, "change {l:?}");
    }

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!("[PASS] criterion 8: polarization, conjugation, pairing, coordinate invariance in {elapsed:?}");
}

fn random_complex_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

#[test]
fn criterion_9_penrose_and_homotopy_identities() {
    let mut rng = StdRng::seed_from_u64(900);
    let tol = 1e-10;
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let a = if i % 3 == 0 && rows.min(cols) > 1 {
            // Rank-deficient: a product through a thinner space.
            let k = rng.gen_range(1..rows.min(cols));
            random_complex_matrix(&mut rng, rows, k) * random_complex_matrix(&mut rng, k, cols)
        } else {
            random_complex_matrix(&mut rng, rows, cols)
        };
        let x = minimal_inverse_pointwise(&a);
        let r1 = (&a * &x * &a - &a).norm() / (1.0 + a.norm());
        let r2 = (&x * &a * &x - &x).norm() / (1.0 + x.norm());
        let ax = &a * &x;
        let xa = &x * &a;
        let r3 = (ax.adjoint() - &ax).norm() / (1.0 + ax.norm());
        let r4 = (xa.adjoint() - &xa).norm() / (1.0 + xa.norm());
        for (name, r) in [("AXA=A", r1), ("XAX=X", r2), ("(AX)*=AX", r3), ("(XA)*=XA", r4)] {
            assert!(r <= tol, "Penrose {name} failed at instance {i}: {r:.3e}");
            worst = worst.max(r);
        }
    }

    // Homotopy identities on exact chains: the orthonormal splitting...
    let c = |re: f64| Complex64::new(re, 0.0);
    let phi1 = DMatrix::from_row_slice(2, 1, &[c(1.0), c(0.0)]);
    let phi0 = DMatrix::from_row_slice(1, 2, &[c(0.0), c(1.0)]);
    let check = homotopy_identity_check(&[phi0, phi1]).unwrap();
    assert!(check.residual < 1e-12, "orthonormal chain residual {}", check.residual);
    assert!(check.idempotency_residual < 1e-12 && check.hermitian_residual < 1e-12);

    // ...plus randomly generated pointwise-exact chains.
    let mut worst_chain: f64 = 0.0;
    for _ in 0..10 {
        let phi1 = loop {
            let m = random_complex_matrix(&mut rng, 3, 1);
            if m.norm() > 0.5 {
                break m;
            }
        };
        let sigma1 = minimal_inverse_pointwise(&phi1);
        let proj = DMatrix::<Complex64>::identity(3, 3) - &phi1 * &sigma1;
        let phi0 = random_complex_matrix(&mut rng, 2, 3) * proj;
        let check = homotopy_identity_check(&[phi0, phi1]).unwrap();
        assert!(check.residual < 1e-12, "exact chain residual {}", check.residual);
        worst_chain = worst_chain.max(check.residual);
    }
    // A length-two resolution with exactness in the middle.
    let phi2 = random_complex_matrix(&mut rng, 3, 1);
    let proj2 = {
        let s = minimal_inverse_pointwise(&phi2);
        DMatrix::<Complex64>::identity(3, 3) - &phi2 * &s
    };
    let phi1 = random_complex_matrix(&mut rng, 3, 3) * proj2;
    let proj1 = {
        let s = minimal_inverse_pointwise(&phi1);
        DMatrix::<Complex64>::identity(3, 3) - &phi1 * &s
    };
    let phi0 = random_complex_matrix(&mut rng, 1, 3) * proj1;
    let check = homotopy_identity_check(&[phi0, phi1, phi2]).unwrap();
    assert!(check.residual < 1e-12, "length-two chain residual {}", check.residual);
    worst_chain = worst_chain.max(check.residual);

    println!(
        "[PASS] criterion 9: Penrose residuals <= {worst:.2e}, homotopy residuals <= {worst_chain:.2e}"
    );
}

#[test]
fn origin_not_only_zero_is_surfaced() {
    // (x^2 + y^3, y^2 + x^3) has five extra common zeros on x^5 = -1,
    // so the purely global residue computation must refuse.
    let g = gens(&["z1^2 + z2^3", "z2^2 + z1^3"]);
    assert!(matches!(
        ResidueCalculator::new(&g, MonomialOrder::GrevLex),
        Err(Error::OriginNotOnlyZero { .. })
    ));
    // The global quotient itself is finite (dimension 9 over all five
    // points plus the origin), so the failure is nilpotency, not
    // finiteness.
    assert_eq!(milnor_number(&g).unwrap(), 9);
}
