//! Pointwise frame data of a vector field off its zero set, minimal
//! inverses, and the homotopy identities of a pointwise-exact complex.
//!
//! The minimal inverse of the bundle map `phi_1 = a : C -> C^n` with the
//! trivial metric is the row `sigma = conj(a) / |a|^2`, the unique
//! solution of minimal norm to `sigma . a = 1`. Its antiholomorphic
//! derivative has the closed form
//!
//! ```text
//! d sigma_j / d zbar_k
//!   = ( conj(J_jk) |a|^2 - conj(a_j) * sum_m a_m conj(J_mk) ) / |a|^4
//! ```
//!
//! which the quadrature consumes directly; a finite-difference check
//! lives in the tests.

use crate::error::{Error, Result};
use crate::foliation::VectorField;
use crate::poly::{ComplexPoint, Polynomial};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// A polynomial with coefficients lowered to complex floats, for fast
/// repeated evaluation on quadrature grids.
#[derive(Debug, Clone)]
pub(crate) struct CompiledPoly {
    terms: Vec<(Complex64, Vec<u32>)>,
}

impl CompiledPoly {
    pub(crate) fn new(p: &Polynomial) -> Self {
        CompiledPoly {
            terms: p.terms().map(|(m, c)| (c.to_complex64(), m.0.clone())).collect(),
        }
    }

    pub(crate) fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => t *= z[i],
                    2 => t *= z[i] * z[i],
                    _ => t *= z[i].powu(e),
                }
            }
            acc += t;
        }
        acc
    }
}

/// A vector field with all components and Jacobian entries compiled.
#[derive(Debug, Clone)]
pub(crate) struct CompiledField {
    pub(crate) n: usize,
    pub(crate) components: Vec<CompiledPoly>,
    pub(crate) jac: Vec<Vec<CompiledPoly>>,
}

impl CompiledField {
    pub(crate) fn new(x: &VectorField) -> Self {
        let jac = x.jacobian();
        CompiledField {
            n: x.dim(),
            components: x.components().iter().map(CompiledPoly::new).collect(),
            jac: jac.iter().map(|row| row.iter().map(CompiledPoly::new).collect()).collect(),
        }
    }

    pub(crate) fn eval_components(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|p| p.eval(z)).collect()
    }

    pub(crate) fn eval_jacobian(&self, z: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.jac.iter().map(|row| row.iter().map(|p| p.eval(z)).collect()).collect()
    }
}

/// Everything the regularized integrand needs at one point: field and
/// Jacobian values, `|a|^2`, the minimal inverse `sigma`, and its
/// antiholomorphic derivative.
#[derive(Debug, Clone)]
pub struct PointFrame {
    pub a: Vec<Complex64>,
    pub jac: Vec<Vec<Complex64>>,
    pub norm_sqr: f64,
    pub sigma: Vec<Complex64>,
    /// Entry `[j][k]` is `d sigma_j / d zbar_k`.
    pub dbar_sigma: Vec<Vec<Complex64>>,
}

pub fn frame_eval(x: &VectorField, z: &ComplexPoint) -> Result<PointFrame> {
    if z.len() != x.dim() {
        return Err(Error::VariableMismatch { expected: x.dim(), found: z.len() });
    }
    let cf = CompiledField::new(x);
    frame_eval_compiled(&cf, z.coords()).ok_or(Error::OnSingularity)
}

pub(crate) fn frame_eval_compiled(cf: &CompiledField, z: &[Complex64]) -> Option<PointFrame> {
    let n = cf.n;
    let a = cf.eval_components(z);
    let norm_sqr: f64 = a.iter().map(|v| v.norm_sqr()).sum();
    if norm_sqr == 0.0 {
        return None;
    }
    let jac = cf.eval_jacobian(z);
    let sigma: Vec<Complex64> = a.iter().map(|v| v.conj() / norm_sqr).collect();
    // w_k = sum_m a_m conj(J_mk) = d |a|^2 / d zbar_k.
    let w: Vec<Complex64> = (0..n)
        .map(|k| (0..n).map(|m| a[m] * jac[m][k].conj()).sum())
        .collect();
    let n2sq = norm_sqr * norm_sqr;
    let dbar_sigma: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| (jac[j][k].conj() * norm_sqr - a[j].conj() * w[k]) / n2sq)
                .collect()
        })
        .collect();
    Some(PointFrame { a, jac, norm_sqr, sigma, dbar_sigma })
}

/// Moore-Penrose pseudoinverse of a complex matrix via SVD. The zero
/// matrix maps to the zero matrix.
pub fn minimal_inverse_pointwise(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let max_norm = a.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    if max_norm == 0.0 {
        return DMatrix::zeros(a.ncols(), a.nrows());
    }
    let eps = max_norm * (a.nrows().max(a.ncols()) as f64) * f64::EPSILON * 16.0;
    a.clone()
        .svd(true, true)
        .pseudo_inverse(eps)
        .expect("svd requested both sets of singular vectors")
}

/// Result of checking the homotopy identities of a chain
/// `E_N -> ... -> E_1 -> E_0 -> E_{-1}` given as `[phi_0, phi_1, ..., phi_N]`.
#[derive(Debug, Clone)]
pub struct HomotopyCheck {
    /// Max over levels `k` of the Frobenius norm of
    /// `I - (phi_{k+1} sigma_{k+1} + sigma_k phi_k)` on `E_k`.
    pub residual: f64,
    /// The orthogonal projection `pi_0 = I - phi_1 sigma_1` onto the
    /// complement of the image of `phi_1` in `E_0`.
    pub pi0: DMatrix<Complex64>,
    /// `|pi0^2 - pi0|`.
    pub idempotency_residual: f64,
    /// `|pi0* - pi0|`.
    pub hermitian_residual: f64,
}

impl HomotopyCheck {
    /// Whether the chain passes as pointwise exact at `tol`.
    pub fn is_exact(&self, tol: f64) -> bool {
        self.residual <= tol
            && self.idempotency_residual <= tol
            && self.hermitian_residual <= tol
    }
}

/// Check `I = phi_{k+1} sigma_{k+1} + sigma_k phi_k` (with
/// `phi_{N+1} = 0`) at every level of a chain of matrices, where
/// `sigma_k` is the minimal inverse of `phi_k`. For a pointwise-exact
/// chain with the standard metrics the residual vanishes; a non-exact
/// chain is flagged by a residual bounded away from zero.
pub fn homotopy_identity_check(chain: &[DMatrix<Complex64>]) -> Result<HomotopyCheck> {
    if chain.len() < 2 {
        return Err(Error::NonSquare { rows: chain.len(), cols: 0 });
    }
    for k in 0..chain.len() - 1 {
        if chain[k].ncols() != chain[k + 1].nrows() {
            return Err(Error::NonSquare {
                rows: chain[k].ncols(),
                cols: chain[k + 1].nrows(),
            });
        }
    }
    let sigmas: Vec<DMatrix<Complex64>> = chain.iter().map(minimal_inverse_pointwise).collect();
    let top = chain.len() - 1;
    let mut residual = 0.0f64;
    for k in 0..=top {
        let dim = chain[k].ncols();
        let mut s = &sigmas[k] * &chain[k];
        if k < top {
            s += &chain[k + 1] * &sigmas[k + 1];
        }
        let r = (DMatrix::<Complex64>::identity(dim, dim) - s).norm();
        residual = residual.max(r);
    }
    let e0 = chain[1].nrows();
    let pi0 = DMatrix::<Complex64>::identity(e0, e0) - &chain[1] * &sigmas[1];
    let idempotency_residual = (&pi0 * &pi0 - &pi0).norm();
    let hermitian_residual = (pi0.adjoint() - &pi0).norm();
    Ok(HomotopyCheck { residual, pi0, idempotency_residual, hermitian_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn field(srcs: &[&str]) -> VectorField {
        let n = srcs.len();
        VectorField::new(srcs.iter().map(|s| parse_polynomial(s, n).unwrap()).collect()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn frame_on_one_dimensional_field() {
        // X = z at z = 1: sigma = 1, dbar sigma = 0.
        let x = field(&["z1"]);
        let f = frame_eval(&x, &ComplexPoint::new(vec![c(1.0, 0.0)]).unwrap()).unwrap();
        assert!((f.sigma[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(f.dbar_sigma[0][0].norm() < 1e-15);
    }

    #[test]
    fn frame_on_identity_field() {
        let x = field(&["z1", "z2"]);
        let z = ComplexPoint::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let f = frame_eval(&x, &z).unwrap();
        assert!((f.sigma[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(f.sigma[1].norm() < 1e-15);
        for (j, k, want) in [(0, 0, 0.0), (0, 1, 0.0), (1, 0, 0.0), (1, 1, 1.0)] {
            assert!(
                (f.dbar_sigma[j][k] - c(want, 0.0)).norm() < 1e-15,
                "entry ({j},{k})"
            );
        }
    }

    #[test]
    fn frame_errors_on_zero_set() {
        let x = field(&["z1", "z2"]);
        let z = ComplexPoint::new(vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(frame_eval(&x, &z), Err(Error::OnSingularity)));
    }

    #[test]
    fn minimal_inverse_identity_on_sigma() {
        // sum_j a_j sigma_j = 1 off the zero set, at random points.
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for srcs in [&["z1^2 - z2^3", "z2^2"][..], &["z1", "3*z2"][..]] {
            let x = field(srcs);
            for _ in 0..50 {
                let z = ComplexPoint::new(
                    (0..2)
                        .map(|_| c(rng.gen_range(0.1..1.0), rng.gen_range(0.1..1.0)))
                        .collect(),
                )
                .unwrap();
                let f = frame_eval(&x, &z).unwrap();
                let s: Complex64 = f.a.iter().zip(&f.sigma).map(|(a, s)| a * s).sum();
                assert!((s - c(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn dbar_sigma_matches_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(12);
        let h = 1e-5;
        for srcs in [&["z1^2 - z2^3", "z2^2"][..], &["z1 + z2^2", "2*z2"][..]] {
            let x = field(srcs);
            let cf = CompiledField::new(&x);
            let sigma_at = |z: &[Complex64]| -> Vec<Complex64> {
                frame_eval_compiled(&cf, z).unwrap().sigma
            };
            let mut checked = 0;
            while checked < 100 {
                let z: Vec<Complex64> = (0..2)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let f = match frame_eval_compiled(&cf, &z) {
                    Some(f) if f.norm_sqr > 1e-2 => f,
                    _ => continue,
                };
                checked += 1;
                for k in 0..2 {
                    let mut zp = z.clone();
                    let mut zm = z.clone();
                    zp[k] += c(h, 0.0);
                    zm[k] -= c(h, 0.0);
                    let dx: Vec<Complex64> = sigma_at(&zp)
                        .iter()
                        .zip(sigma_at(&zm))
                        .map(|(p, m)| (p - m) / (2.0 * h))
                        .collect();
                    zp = z.clone();
                    zm = z.clone();
                    zp[k] += c(0.0, h);
                    zm[k] -= c(0.0, h);
                    let dy: Vec<Complex64> = sigma_at(&zp)
                        .iter()
                        .zip(sigma_at(&zm))
                        .map(|(p, m)| (p - m) / (2.0 * h))
                        .collect();
                    for j in 0..2 {
                        // d/dzbar = (d/dx + i d/dy) / 2.
                        let fd = (dx[j] + Complex64::i() * dy[j]) / 2.0;
                        let closed = f.dbar_sigma[j][k];
                        assert!(
                            (fd - closed).norm() <= 1e-6 * (1.0 + closed.norm()),
                            "entry ({j},{k}) at {z:?}: fd {fd} vs closed {closed}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pseudoinverse_simple_cases() {
        let a = DMatrix::from_row_slice(1, 1, &[c(2.0, 0.0)]);
        let p = minimal_inverse_pointwise(&a);
        assert!((p[(0, 0)] - c(0.5, 0.0)).norm() < 1e-14);

        // Column vector: minimal-norm left inverse a*/|a|^2.
        let a = DMatrix::from_row_slice(2, 1, &[c(1.0, 0.0), c(0.0, 2.0)]);
        let p = minimal_inverse_pointwise(&a);
        assert!((p[(0, 0)] - c(0.2, 0.0)).norm() < 1e-14);
        assert!((p[(0, 1)] - c(0.0, -0.4)).norm() < 1e-14);

        let z = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0); 4]);
        assert_eq!(minimal_inverse_pointwise(&z), DMatrix::zeros(2, 2));
    }

    #[test]
    fn homotopy_identity_orthonormal_chain() {
        // 0 -> C -> C^2 -> C with phi_1 = (1,0)^t and phi_0 = (0,1).
        let phi1 = DMatrix::from_row_slice(2, 1, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let phi0 = DMatrix::from_row_slice(1, 2, &[c(0.0, 0.0), c(1.0, 0.0)]);
        let check = homotopy_identity_check(&[phi0, phi1]).unwrap();
        assert!(check.residual < 1e-14, "residual {}", check.residual);
        assert!(check.is_exact(1e-13));
        // pi0 projects onto the second coordinate axis's complement.
        assert!((check.pi0[(1, 1)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(check.pi0[(0, 0)].norm() < 1e-14);
    }

    #[test]
    fn homotopy_identity_flags_non_exact_chain() {
        // phi_0 phi_1 != 0.
        let phi1 = DMatrix::from_row_slice(2, 1, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let phi0 = DMatrix::from_row_slice(1, 2, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let check = homotopy_identity_check(&[phi0, phi1]).unwrap();
        assert!(check.residual > 0.5, "residual {}", check.residual);
        assert!(!check.is_exact(1e-12));
    }
}
