//! Tensor-grid quadrature of the regularized curvature density.
//!
//! With the trivial metric and trivial background connection the
//! smoothed connection matrix is `theta = chi_eps * b`,
//! `b = -sigma~ (x) J`, where `sigma~ = sum_i sigma_i dz_i` is the
//! minimal-inverse one-form and `J` the Jacobian. Since
//! `sigma~ ^ sigma~ = 0` the curvature's (1,1) part is the scalar
//! two-form `omega = -(dbar chi_eps ^ sigma~ + chi_eps dbar sigma~)`
//! tensored with `J`, so the top characteristic form collapses to
//! `omega^n * Phi(J)`.
//!
//! Writing `u_k` for the `dzbar_k` coefficient of `dbar chi_eps` and
//! `S[k][i] = d sigma_i / d zbar_k`, the density of
//! `(i/2pi)^n Phi(curvature)` against the real volume element is
//!
//! ```text
//! (1/pi)^n n! det( u sigma^T + chi_eps S ) Phi(J)
//! ```
//!
//! (each `dzbar_k ^ dz_k` contributes `2i dx_k ^ dy_k`, and
//! `omega^n = n! det(coefficients)` times the standard orientation).
//! The normalization is anchored by the one-dimensional Cauchy case
//! `X = z`, whose ball integral is exactly +1.
//!
//! Since `sigma . a = 1` forces `S a = 0`, `det S = 0` identically off
//! the zero set; that is the vanishing theorem for this connection, and
//! it means the density is supported exactly on the shell where
//! `chi'` is nonzero. Shell-only mode exploits this by shrinking the
//! integration box to the detected shell region; full-ball mode
//! integrates the raw density over the whole ball (useful for verifying
//! the vanishing numerically).
//!
//! Nodes are midpoints of a tensor grid. Per-node densities are
//! computed in parallel but combined by a fixed-shape pairwise tree, so
//! results are bit-identical across thread counts.

use crate::charclass::{phi_eval, SymmetricPolynomial};
use crate::error::{Error, Result};
use crate::foliation::{bb_residue, SingularPoint, VectorField};
use crate::poly::{ComplexPoint, Polynomial};
use crate::rational::GaussianRational;
use crate::regnum::chi::ChiProfile;
use crate::regnum::frame::{frame_eval_compiled, CompiledField, CompiledPoly};
use num_complex::Complex64;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureMode {
    FullBall,
    ShellOnly,
}

/// Quadrature parameters: a ball that contains only the origin
/// singularity, the grid resolution per real dimension, and `eps`.
#[derive(Debug, Clone, Copy)]
pub struct ShellQuadrature {
    pub radius: f64,
    pub grid: usize,
    pub eps: f64,
    pub mode: QuadratureMode,
}

impl ShellQuadrature {
    /// Default resolution: 200 per real dimension for n = 1, 40 for
    /// n = 2; radius 1, shell-only.
    pub fn for_dim(n: usize, eps: f64) -> Self {
        ShellQuadrature {
            radius: 1.0,
            grid: if n == 1 { 200 } else { 40 },
            eps,
            mode: QuadratureMode::ShellOnly,
        }
    }
}

/// Safety factor applied to the shell threshold during domain detection.
const SHELL_MARGIN: f64 = 1.3;

fn det_small(m: &[Vec<Complex64>]) -> Complex64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                let minor: Vec<Vec<Complex64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let term = m[0][j] * det_small(&minor);
                acc += if j % 2 == 0 { term } else { -term };
            }
            acc
        }
    }
}

/// Shared per-point evaluation. `phi_of_jac` is `Phi(J)` compiled to a
/// single polynomial so the grid loop never rebuilds matrix invariants.
struct Integrand {
    field: CompiledField,
    phi_of_jac: Option<CompiledPoly>,
    weight: Option<CompiledPoly>,
    chi: ChiProfile,
    eps: f64,
    scale: f64,
    bm_mode: bool,
}

impl Integrand {
    fn curvature(x: &VectorField, phi: &SymmetricPolynomial, chi: ChiProfile, eps: f64) -> Result<Self> {
        let n = x.dim();
        let h = phi_eval::<Polynomial>(phi, &x.jacobian())?;
        let factorial: f64 = (1..=n as u64).product::<u64>() as f64;
        Ok(Integrand {
            field: CompiledField::new(x),
            phi_of_jac: Some(CompiledPoly::new(&h)),
            weight: None,
            chi,
            eps,
            scale: factorial / std::f64::consts::PI.powi(n as i32),
            bm_mode: false,
        })
    }

    fn bochner_martinelli(x: &VectorField, g: &Polynomial, chi: ChiProfile, eps: f64) -> Result<Self> {
        let n = x.dim();
        if g.nvars() != n {
            return Err(Error::VariableMismatch { expected: n, found: g.nvars() });
        }
        let factorial: f64 = (1..n as u64).product::<u64>() as f64;
        Ok(Integrand {
            field: CompiledField::new(x),
            phi_of_jac: None,
            weight: Some(CompiledPoly::new(g)),
            chi,
            eps,
            scale: factorial / std::f64::consts::PI.powi(n as i32),
            bm_mode: true,
        })
    }

    /// Density at `z` relative to the real volume element; `None` when
    /// `z` lies exactly on the zero set.
    fn density(&self, z: &[Complex64]) -> Option<Complex64> {
        let n = self.field.n;
        let f = frame_eval_compiled(&self.field, z)?;
        let t = f.norm_sqr / self.eps;
        let chi = self.chi.chi(t);
        let dchi = self.chi.dchi(t) / self.eps;
        // u_k = chi'(t)/eps * d|a|^2/dzbar_k.
        let u: Vec<Complex64> = (0..n)
            .map(|k| {
                let w: Complex64 = (0..n).map(|m| f.a[m] * f.jac[m][k].conj()).sum();
                dchi * w
            })
            .collect();

        if self.bm_mode {
            // (1/pi)^n (n-1)! * (det(S + u sigma^T) - det S) * g.
            let s: Vec<Vec<Complex64>> =
                (0..n).map(|k| (0..n).map(|i| f.dbar_sigma[i][k]).collect()).collect();
            let v: Vec<Vec<Complex64>> = (0..n)
                .map(|k| (0..n).map(|i| s[k][i] + u[k] * f.sigma[i]).collect())
                .collect();
            let det_diff = det_small(&v) - det_small(&s);
            let g = self.weight.as_ref().unwrap().eval(z);
            Some(self.scale * det_diff * g)
        } else {
            // (1/pi)^n n! * det(u sigma^T + chi S) * Phi(J).
            let m: Vec<Vec<Complex64>> = (0..n)
                .map(|k| {
                    (0..n)
                        .map(|i| u[k] * f.sigma[i] + chi * f.dbar_sigma[i][k])
                        .collect()
                })
                .collect();
            let phi_j = self.phi_of_jac.as_ref().unwrap().eval(z);
            Some(self.scale * det_small(&m) * phi_j)
        }
    }
}

/// The top-degree density of the regularized characteristic form at a
/// single point, relative to the standard real volume. Errors with
/// [`Error::OnSingularity`] when the point lies on the zero set of the
/// field.
pub fn bb_integrand(
    x: &VectorField,
    phi: &SymmetricPolynomial,
    chi: &ChiProfile,
    eps: f64,
    z: &ComplexPoint,
) -> Result<Complex64> {
    if phi.weight != x.dim() || phi.n != x.dim() {
        return Err(Error::DegreeMismatch { expected: x.dim(), found: phi.weight });
    }
    if z.len() != x.dim() {
        return Err(Error::VariableMismatch { expected: x.dim(), found: z.len() });
    }
    let integrand = Integrand::curvature(x, phi, *chi, eps)?;
    integrand.density(z.coords()).ok_or(Error::OnSingularity)
}

/// Midpoint coordinates of a tensor grid cell.
#[derive(Debug, Clone, Copy)]
struct Grid {
    half: f64,
    cell: f64,
    m: usize,
    dims: usize,
    shift: f64,
}

impl Grid {
    fn new(half: f64, m: usize, dims: usize, shifted: bool) -> Self {
        let cell = 2.0 * half / m as f64;
        Grid { half, cell, m, dims, shift: if shifted { 0.5 } else { 0.0 } }
    }

    fn nodes(&self) -> usize {
        self.m.pow(self.dims as u32)
    }

    fn coord(&self, index: usize, out: &mut [f64]) {
        let mut rest = index;
        for slot in out.iter_mut().take(self.dims) {
            let i = rest % self.m;
            rest /= self.m;
            *slot = -self.half + (i as f64 + 0.5 + self.shift) * self.cell;
        }
    }

    fn volume_element(&self) -> f64 {
        self.cell.powi(self.dims as i32)
    }
}

fn to_complex(reals: &[f64]) -> Vec<Complex64> {
    reals.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

/// Fixed-association pairwise sum: deterministic regardless of how the
/// per-node values were produced.
fn tree_sum(values: &[Complex64]) -> Complex64 {
    if values.len() <= 8 {
        let mut acc = Complex64::new(0.0, 0.0);
        for v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    tree_sum(&values[..mid]) + tree_sum(&values[mid..])
}

/// Scan the cube for the region where the cutoff can vary and return
/// the half-width of the smallest centered box containing it (plus one
/// scan cell of padding). Falls back to the full cube when nodes
/// outside the candidate box still see `|a|^2 <= t1 * eps`.
fn detect_shell_box(field: &CompiledField, q: &ShellQuadrature, chi: &ChiProfile) -> f64 {
    let dims = 2 * field.n;
    let threshold = chi.t1 * q.eps;
    let mut half = q.radius;
    for _ in 0..48 {
        let grid = Grid::new(half, q.grid, dims, false);
        let found = (0..grid.nodes())
            .into_par_iter()
            .map(|idx| {
                let mut reals = vec![0.0; dims];
                grid.coord(idx, &mut reals);
                let z = to_complex(&reals);
                let n2: f64 = field.eval_components(&z).iter().map(|v| v.norm_sqr()).sum();
                if n2 <= threshold * SHELL_MARGIN {
                    reals.iter().fold(0.0f64, |acc, &r| acc.max(r.abs()))
                } else {
                    -1.0
                }
            })
            .reduce(|| -1.0f64, f64::max);
        if found >= 0.0 {
            let box_half = (found + grid.cell).min(q.radius);
            if box_half >= q.radius {
                return q.radius;
            }
            // Containment: every scan node outside the box must be
            // strictly past the shell.
            let full = Grid::new(q.radius, q.grid, dims, false);
            let contained = (0..full.nodes())
                .into_par_iter()
                .map(|idx| {
                    let mut reals = vec![0.0; dims];
                    full.coord(idx, &mut reals);
                    if reals.iter().all(|r| r.abs() <= box_half) {
                        return true;
                    }
                    let z = to_complex(&reals);
                    let n2: f64 = field.eval_components(&z).iter().map(|v| v.norm_sqr()).sum();
                    n2 > threshold
                })
                .reduce(|| true, |a, b| a && b);
            return if contained { box_half } else { q.radius };
        }
        // The shell fell between scan nodes; zoom in around the origin.
        half *= 0.5;
        if half < 1e-12 {
            break;
        }
    }
    q.radius
}

/// One full integration pass; `Err(())` signals a node exactly on the
/// zero set.
fn integrate_pass(
    integrand: &Integrand,
    q: &ShellQuadrature,
    box_half: f64,
    grid_m: usize,
    shifted: bool,
) -> std::result::Result<Complex64, ()> {
    let dims = 2 * integrand.field.n;
    let grid = Grid::new(box_half, grid_m, dims, shifted);
    let r2 = q.radius * q.radius;
    let shell_only = q.mode == QuadratureMode::ShellOnly;
    let t1 = integrand.chi.t1;

    let values: Vec<std::result::Result<Complex64, ()>> = (0..grid.nodes())
        .into_par_iter()
        .map(|idx| {
            let mut reals = vec![0.0; dims];
            grid.coord(idx, &mut reals);
            if reals.iter().map(|r| r * r).sum::<f64>() > r2 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let z = to_complex(&reals);
            if shell_only {
                let n2: f64 = integrand.field.eval_components(&z).iter().map(|v| v.norm_sqr()).sum();
                if n2 == 0.0 {
                    return Err(());
                }
                // Outside the closed shell the density vanishes
                // identically (chi' = 0 and det S = 0), so only nodes
                // up to the outer cut contribute.
                if n2 > t1 * integrand.eps {
                    return Ok(Complex64::new(0.0, 0.0));
                }
            }
            match integrand.density(&z) {
                Some(v) => Ok(v),
                None => Err(()),
            }
        })
        .collect();

    let mut flat = Vec::with_capacity(values.len());
    for v in values {
        flat.push(v?);
    }
    Ok(tree_sum(&flat) * grid.volume_element())
}

fn run_quadrature(integrand: &Integrand, q: &ShellQuadrature, chi: &ChiProfile, grid_m: usize) -> Result<Complex64> {
    let box_half = match q.mode {
        QuadratureMode::FullBall => q.radius,
        QuadratureMode::ShellOnly => detect_shell_box(&integrand.field, q, chi),
    };
    match integrate_pass(integrand, q, box_half, grid_m, false) {
        Ok(v) => Ok(v),
        // A node hit the zero set exactly: shift the whole grid by half
        // a cell and retry once.
        Err(()) => integrate_pass(integrand, q, box_half, grid_m, true)
            .map_err(|()| Error::OnSingularity),
    }
}

fn check_numeric_preconditions(x: &VectorField) -> Result<()> {
    if x.dim() > 2 {
        return Err(Error::Parse {
            offset: 0,
            message: "numeric quadrature is implemented for n <= 2; use the exact engine".into(),
        });
    }
    Ok(())
}

/// Tensor-grid approximation of the Baum-Bott residue of `X` at the
/// origin: the ball integral of the regularized curvature density.
/// The origin must be the only zero of `X` in the closed ball of radius
/// `q.radius` (caller-asserted).
pub fn bb_numeric(
    x: &VectorField,
    phi: &SymmetricPolynomial,
    chi: &ChiProfile,
    q: &ShellQuadrature,
) -> Result<Complex64> {
    check_numeric_preconditions(x)?;
    if phi.weight != x.dim() || phi.n != x.dim() {
        return Err(Error::DegreeMismatch { expected: x.dim(), found: phi.weight });
    }
    let integrand = Integrand::curvature(x, phi, *chi, q.eps)?;
    run_quadrature(&integrand, q, chi, q.grid)
}

/// `bb_numeric` together with an error estimate: the difference against
/// the same integral at half the grid resolution.
pub fn bb_numeric_with_error(
    x: &VectorField,
    phi: &SymmetricPolynomial,
    chi: &ChiProfile,
    q: &ShellQuadrature,
) -> Result<(Complex64, f64)> {
    check_numeric_preconditions(x)?;
    if phi.weight != x.dim() || phi.n != x.dim() {
        return Err(Error::DegreeMismatch { expected: x.dim(), found: phi.weight });
    }
    let integrand = Integrand::curvature(x, phi, *chi, q.eps)?;
    let fine = run_quadrature(&integrand, q, chi, q.grid)?;
    let coarse = run_quadrature(&integrand, q, chi, (q.grid / 2).max(4))?;
    Ok((fine, (fine - coarse).norm()))
}

/// Numerical action of the Bochner-Martinelli residue current on a
/// polynomial `g`: approximates the Grothendieck residue
/// `Res_0[ g dz / (a_1 ... a_n) ]` as `eps -> 0`.
pub fn bm_action(
    x: &VectorField,
    g: &Polynomial,
    chi: &ChiProfile,
    q: &ShellQuadrature,
) -> Result<Complex64> {
    check_numeric_preconditions(x)?;
    let integrand = Integrand::bochner_martinelli(x, g, *chi, q.eps)?;
    run_quadrature(&integrand, q, chi, q.grid)
}

/// One row of a convergence table.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub eps: f64,
    pub value: Complex64,
    pub abs_error: f64,
}

#[derive(Debug, Clone)]
pub struct ConvergenceTable {
    pub exact: GaussianRational,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    /// CSV with header `eps,value_re,value_im,abs_error`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eps,value_re,value_im,abs_error\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.eps, r.value.re, r.value.im, r.abs_error));
        }
        out
    }
}

/// Run `bb_numeric` across an `eps` schedule and tabulate the error
/// against the exact residue. The error trend is reported, not
/// asserted: for linear fields the limit is exact at every `eps` and
/// only quadrature noise remains.
pub fn convergence_study(
    x: &VectorField,
    phi: &SymmetricPolynomial,
    chi: &ChiProfile,
    eps_schedule: &[f64],
    q: &ShellQuadrature,
) -> Result<ConvergenceTable> {
    let exact = bb_residue(x, &SingularPoint::origin(x.dim()), phi)?;
    let exact_c = exact.to_complex64();
    let mut rows = Vec::with_capacity(eps_schedule.len());
    for &eps in eps_schedule {
        let mut qe = *q;
        qe.eps = eps;
        let value = bb_numeric(x, phi, chi, &qe)?;
        rows.push(ConvergenceRow { eps, value, abs_error: (value - exact_c).norm() });
    }
    Ok(ConvergenceTable { exact, rows })
}
