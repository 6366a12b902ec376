//! Baum-Bott residues of polynomial vector fields and the global
//! index-sum check on the projective plane.
//!
//! For an isolated singularity `p` of `X = sum a_i d/dz_i` and a
//! symmetric polynomial `Phi` of weight `n`, the residue is
//!
//! ```text
//! Res_p[ Phi((da_i/dz_j)) dz / (a_1 ... a_n) ]
//! ```
//!
//! computed exactly after translating `p` to the origin. For a degree-d
//! foliation of P^2 that leaves no line at infinity invariant, the
//! residues over all singularities sum to the characteristic number
//! `Phi^(c_1, c_2)` of the normal sheaf, with total Chern class
//! `1 + (d+2) h + (d^2+d+1) h^2`.

use crate::charclass::{phi_eval, SymmetricPolynomial};
use crate::error::{Error, Result};
use crate::localalg::{milnor_number, MonomialOrder, ResidueCalculator};
use crate::poly::{jacobian, Monomial, Polynomial};
use crate::rational::GaussianRational;

/// A polynomial vector field `X = sum a_i d/dz_i` on C^n.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    n: usize,
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::NonSquare { rows: 0, cols: 0 });
        }
        for c in &components {
            if c.nvars() != n {
                return Err(Error::VariableMismatch { expected: n, found: c.nvars() });
            }
        }
        Ok(VectorField { n, components })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Exact Jacobian matrix `(da_i/dz_j)`.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial>> {
        jacobian(&self.components).expect("components validated square")
    }

    pub fn vanishes_at(&self, point: &[GaussianRational]) -> Result<bool> {
        for c in &self.components {
            if !c.eval_exact(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A singular point of a field, with an optional chart tag for
/// projective inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularPoint {
    pub coordinates: Vec<GaussianRational>,
    pub chart: Option<usize>,
}

impl SingularPoint {
    /// Validates that the field vanishes at the coordinates.
    pub fn new(coordinates: Vec<GaussianRational>, field: &VectorField) -> Result<Self> {
        if !field.vanishes_at(&coordinates)? {
            return Err(Error::NotSingular);
        }
        Ok(SingularPoint { coordinates, chart: None })
    }

    pub fn origin(n: usize) -> Self {
        SingularPoint { coordinates: vec![GaussianRational::zero(); n], chart: None }
    }
}

/// Compose the components with `z -> z + p` so that the singular point
/// moves to the origin. Errors with [`Error::NotSingular`] when the
/// field does not vanish at `p`.
pub fn translate_to_origin(x: &VectorField, p: &SingularPoint) -> Result<VectorField> {
    if p.coordinates.len() != x.n {
        return Err(Error::VariableMismatch { expected: x.n, found: p.coordinates.len() });
    }
    if !x.vanishes_at(&p.coordinates)? {
        return Err(Error::NotSingular);
    }
    let components = x
        .components
        .iter()
        .map(|c| c.translate(&p.coordinates))
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(components)
}

/// The Baum-Bott residue of `X` at the isolated singular point `p`
/// against `Phi` (which must have weight `n`), exactly.
pub fn bb_residue(
    x: &VectorField,
    p: &SingularPoint,
    phi: &SymmetricPolynomial,
) -> Result<GaussianRational> {
    bb_residue_with(x, p, phi, MonomialOrder::GrevLex)
}

pub fn bb_residue_with(
    x: &VectorField,
    p: &SingularPoint,
    phi: &SymmetricPolynomial,
    order: MonomialOrder,
) -> Result<GaussianRational> {
    if phi.weight != x.n || phi.n != x.n {
        return Err(Error::DegreeMismatch { expected: x.n, found: phi.weight });
    }
    let local = translate_to_origin(x, p)?;
    let h = phi_eval(phi, &local.jacobian())?;
    ResidueCalculator::new(local.components(), order)?.residue(&h)
}

/// Milnor number of `X` at `p`: the dimension of the local algebra of
/// the translated components. Cross-checked against the `c_n` residue,
/// which must agree exactly.
pub fn milnor_at(x: &VectorField, p: &SingularPoint) -> Result<usize> {
    let local = translate_to_origin(x, p)?;
    let dim = milnor_number(local.components())?;
    let cn = SymmetricPolynomial::parse_or_preset("cn", x.n)?;
    let res = bb_residue(x, p, &cn)?;
    assert_eq!(
        res,
        GaussianRational::from_int(dim as i64),
        "c_n residue disagrees with the local algebra dimension"
    );
    Ok(dim)
}

/// A degree-d foliation of P^2 given by its affine pair `(P, Q)` in the
/// chart `(x, y) = (z1, z2)`.
#[derive(Debug, Clone)]
pub struct FoliationP2 {
    pub degree: u32,
    pub p: Polynomial,
    pub q: Polynomial,
    /// The shipped chart formulas require this to be false.
    pub line_at_infinity_invariant: bool,
}

impl FoliationP2 {
    pub fn new(degree: u32, p: Polynomial, q: Polynomial, line_at_infinity_invariant: bool) -> Result<Self> {
        if p.nvars() != 2 || q.nvars() != 2 {
            return Err(Error::VariableMismatch { expected: 2, found: p.nvars().max(q.nvars()) });
        }
        if !line_at_infinity_invariant {
            let d = p.total_degree().max(q.total_degree());
            if d != degree {
                return Err(Error::PoleClearingFailed {
                    detail: format!("max(deg P, deg Q) = {d} but degree = {degree}"),
                });
            }
        }
        Ok(FoliationP2 { degree, p, q, line_at_infinity_invariant })
    }
}

fn top_part(p: &Polynomial, d: u32) -> Polynomial {
    let mut out = Polynomial::zero(p.nvars());
    for (m, c) in p.terms() {
        if m.degree() == d {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

/// The three affine charts of the foliation. Chart 0 is `(P, Q)`
/// itself; chart 1 uses `(u, v) = (1/x, y/x)` and chart 2 the symmetric
/// substitution in `y`. Pole clearing multiplies by `u^(d-1)` (resp.
/// `w^(d-1)`), which works exactly when the line at infinity is not
/// invariant; the invariant case is detected as `x Q_d - y P_d = 0`
/// and rejected, since the singular set then contains the whole line.
pub fn p2_charts(f: &FoliationP2) -> Result<[VectorField; 3]> {
    if f.line_at_infinity_invariant {
        return Err(Error::PoleClearingFailed {
            detail: "line at infinity declared invariant; chart exponents differ".into(),
        });
    }
    let d = f.degree;
    let x = Polynomial::var(2, 0).unwrap();
    let y = Polynomial::var(2, 1).unwrap();
    let pd = top_part(&f.p, d);
    let qd = top_part(&f.q, d);
    if x.mul(&qd).sub(&y.mul(&pd)).is_zero() {
        return Err(Error::NotIsolatedOnP2);
    }

    let chart0 = VectorField::new(vec![f.p.clone(), f.q.clone()])?;

    let clear = |deg: u32, j: u32, k: u32| -> Result<u32> {
        (deg).checked_sub(j + k).ok_or_else(|| Error::PoleClearingFailed {
            detail: format!("monomial of degree {} exceeds degree {d}", j + k),
        })
    };

    // Chart 1, coordinates (u, v) = (1/x, y/x):
    //   u' = u^(d-1) * (-u^2 P(1/u, v/u))
    //   v' = u^(d-1) * (u Q(1/u, v/u) - u v P(1/u, v/u))
    let mut c1_u = Polynomial::zero(2);
    let mut c1_v = Polynomial::zero(2);
    for (m, c) in f.p.terms() {
        let (j, k) = (m.0[0], m.0[1]);
        c1_u.add_term(Monomial(vec![clear(d + 1, j, k)?, k]), -c);
        c1_v.add_term(Monomial(vec![clear(d, j, k)?, k + 1]), -c);
    }
    for (m, c) in f.q.terms() {
        let (j, k) = (m.0[0], m.0[1]);
        c1_v.add_term(Monomial(vec![clear(d, j, k)?, k]), c.clone());
    }

    // Chart 2, coordinates (w, s) = (1/y, x/y):
    //   w' = w^(d-1) * (-w^2 Q(s/w, 1/w))
    //   s' = w^(d-1) * (w P(s/w, 1/w) - w s Q(s/w, 1/w))
    let mut c2_w = Polynomial::zero(2);
    let mut c2_s = Polynomial::zero(2);
    for (m, c) in f.q.terms() {
        let (j, k) = (m.0[0], m.0[1]);
        c2_w.add_term(Monomial(vec![clear(d + 1, j, k)?, j]), -c);
        c2_s.add_term(Monomial(vec![clear(d, j, k)?, j + 1]), -c);
    }
    for (m, c) in f.p.terms() {
        let (j, k) = (m.0[0], m.0[1]);
        c2_s.add_term(Monomial(vec![clear(d, j, k)?, j]), c.clone());
    }

    Ok([
        chart0,
        VectorField::new(vec![c1_u, c1_v])?,
        VectorField::new(vec![c2_w, c2_s])?,
    ])
}

/// `Phi^` evaluated on the total Chern class of the normal sheaf of a
/// degree-d foliation of P^2: `(c_1, c_2) = (d + 2, d^2 + d + 1)`.
pub fn chern_normal_sheaf_p2(d: u32, phi: &SymmetricPolynomial) -> Result<GaussianRational> {
    if phi.n != 2 || phi.weight != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: phi.weight.max(phi.n) });
    }
    let d = d as i64;
    let c1 = GaussianRational::from_int(d + 2);
    let c2 = GaussianRational::from_int(d * d + d + 1);
    phi.hat.eval_exact(&[c1, c2])
}

/// One row of a [`BBReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct PointResidue {
    pub chart: usize,
    pub point: Vec<GaussianRational>,
    pub residue: GaussianRational,
}

/// Result of a global index-sum verification.
#[derive(Debug, Clone, PartialEq)]
pub struct BBReport {
    pub per_point: Vec<PointResidue>,
    pub sum: GaussianRational,
    pub expected: GaussianRational,
    pub matched: bool,
}

/// Sum the residues of the user-supplied singular points (one list per
/// chart, each point in its chart's coordinates) and compare exactly
/// with the characteristic number of the normal sheaf. The caller must
/// supply every singularity exactly once; this is a documented contract,
/// not verified globally.
pub fn global_sum_check(
    f: &FoliationP2,
    points_by_chart: &[Vec<Vec<GaussianRational>>; 3],
    phi: &SymmetricPolynomial,
) -> Result<BBReport> {
    let charts = p2_charts(f)?;
    let expected = chern_normal_sheaf_p2(f.degree, phi)?;
    let mut per_point = Vec::new();
    let mut sum = GaussianRational::zero();
    for (chart, points) in points_by_chart.iter().enumerate() {
        for (index, coords) in points.iter().enumerate() {
            let residue = SingularPoint::new(coords.clone(), &charts[chart])
                .and_then(|pt| bb_residue(&charts[chart], &pt, phi))
                .map_err(|e| e.with_context(format!("chart {chart}, point {index}")))?;
            sum = &sum + &residue;
            per_point.push(PointResidue { chart, point: coords.clone(), residue });
        }
    }
    let matched = sum == expected;
    Ok(BBReport { per_point, sum, expected, matched })
}

/// Exact inverse of a square Gaussian-rational matrix by Gauss-Jordan
/// elimination; `None` when singular.
pub fn invert_exact(m: &[Vec<GaussianRational>]) -> Option<Vec<Vec<GaussianRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<GaussianRational>> = m.to_vec();
    let mut inv: Vec<Vec<GaussianRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let inv_p = a[col][col].inv();
        for j in 0..n {
            a[col][j] = &a[col][j] * &inv_p;
            inv[col][j] = &inv[col][j] * &inv_p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                a[r][j] = &a[r][j] - &(&factor * &a[col][j]);
                inv[r][j] = &inv[r][j] - &(&factor * &inv[col][j]);
            }
        }
    }
    Some(inv)
}

/// The pulled-back field `z -> L^-1 X(L z)` for an invertible linear
/// change of coordinates; `bb_residue` at the origin is invariant under
/// this operation.
pub fn linear_pullback(x: &VectorField, l: &[Vec<GaussianRational>]) -> Result<VectorField> {
    let n = x.n;
    if l.len() != n || l.iter().any(|row| row.len() != n) {
        return Err(Error::NonSquare { rows: l.len(), cols: l.first().map_or(0, Vec::len) });
    }
    let l_inv = invert_exact(l).ok_or(Error::NotSingular)?;
    let args: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut acc = Polynomial::zero(n);
            for (j, c) in l[i].iter().enumerate() {
                acc = acc.add(&Polynomial::var(n, j).unwrap().scale(c));
            }
            acc
        })
        .collect();
    let composed: Vec<Polynomial> =
        x.components.iter().map(|a| a.substitute(&args)).collect::<Result<Vec<_>>>()?;
    let components: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut acc = Polynomial::zero(n);
            for (j, c) in l_inv[i].iter().enumerate() {
                acc = acc.add(&composed[j].scale(c));
            }
            acc
        })
        .collect();
    VectorField::new(components)
}
