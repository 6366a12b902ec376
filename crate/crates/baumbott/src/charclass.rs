//! Invariant symmetric polynomials evaluated on matrices.
//!
//! A symmetric polynomial of weight `l` is stored through its unique
//! expression `hat` in the elementary symmetric (Chern) basis
//! `c_1, ..., c_l`, where `c_k` carries weight `k`. Evaluation on a
//! matrix goes through `det(I + tA) = 1 + e_1(A) t + ... + e_n(A) t^n`,
//! computed by the Faddeev-LeVerrier recursion so that exact inputs stay
//! exact. The mixed terms `Phi_k(A, B)` (coefficient of `s^k` in
//! `Phi(sA + B)`) are obtained by interpolation at the integer nodes
//! `s = 0..l`, which is exactly solvable over the rationals.
//!
//! Everything is generic over [`PhiScalar`], so the same code path
//! evaluates on exact Gaussian-rational matrices, complex floating
//! matrices, and matrices of polynomials (the Jacobian of a vector
//! field).

use crate::error::{Error, Result};
use crate::parse::{max_var_index, parse_with_prefix};
use crate::poly::{Monomial, Polynomial};
use crate::rational::GaussianRational;
use num_complex::Complex64;

/// Ring scalar usable as a matrix entry. Constructors are contextual
/// (`*_like`) so that polynomial entries can carry their variable count.
pub trait PhiScalar: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    /// Exact division by a nonzero integer.
    fn div_int(&self, k: i64) -> Self;
    fn lift_gaussian(&self, q: &GaussianRational) -> Self;
    fn lift_int(&self, k: i64) -> Self {
        self.lift_gaussian(&GaussianRational::from_int(k))
    }
}

impl PhiScalar for GaussianRational {
    fn zero_like(&self) -> Self {
        GaussianRational::zero()
    }
    fn one_like(&self) -> Self {
        GaussianRational::one()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_int(&self, k: i64) -> Self {
        self * &GaussianRational::from_ratio(1, k)
    }
    fn lift_gaussian(&self, q: &GaussianRational) -> Self {
        q.clone()
    }
}

impl PhiScalar for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_int(&self, k: i64) -> Self {
        self / k as f64
    }
    fn lift_gaussian(&self, q: &GaussianRational) -> Self {
        q.to_complex64()
    }
}

impl PhiScalar for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.nvars())
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        Polynomial::add(self, rhs)
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        Polynomial::sub(self, rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        Polynomial::mul(self, rhs)
    }
    fn div_int(&self, k: i64) -> Self {
        self.scale(&GaussianRational::from_ratio(1, k))
    }
    fn lift_gaussian(&self, q: &GaussianRational) -> Self {
        Polynomial::constant(self.nvars(), q.clone())
    }
}

fn check_square<T>(a: &[Vec<T>]) -> Result<usize> {
    let n = a.len();
    if n == 0 {
        return Err(Error::NonSquare { rows: 0, cols: 0 });
    }
    for row in a {
        if row.len() != n {
            return Err(Error::NonSquare { rows: n, cols: row.len() });
        }
    }
    Ok(n)
}

fn mat_mul<T: PhiScalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = a.len();
    let proto = &a[0][0];
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = proto.zero_like();
                    for k in 0..n {
                        acc = acc.ring_add(&a[i][k].ring_mul(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn mat_trace<T: PhiScalar>(a: &[Vec<T>]) -> T {
    let mut acc = a[0][0].zero_like();
    for (i, row) in a.iter().enumerate() {
        acc = acc.ring_add(&row[i]);
    }
    acc
}

/// All elementary symmetric functions `e_0..e_n` of the eigenvalues
/// (the coefficients of `det(I + tA)`), by Faddeev-LeVerrier.
pub fn elem_symm_all<T: PhiScalar>(a: &[Vec<T>]) -> Result<Vec<T>> {
    let n = check_square(a)?;
    let proto = &a[0][0];
    let mut out = Vec::with_capacity(n + 1);
    out.push(proto.one_like());

    // det(lambda I - A) = sum c_k lambda^{n-k} with c_k = (-1)^k e_k.
    let mut m: Vec<Vec<T>> = (0..n).map(|_| (0..n).map(|_| proto.zero_like()).collect()).collect();
    let mut c_prev = proto.one_like();
    for k in 1..=n as i64 {
        let mut am = mat_mul(a, &m);
        for (i, row) in am.iter_mut().enumerate() {
            row[i] = row[i].ring_add(&c_prev);
        }
        m = am;
        let c_k = mat_trace(&mat_mul(a, &m)).div_int(-k);
        // e_k = (-1)^k c_k.
        let e_k = if k % 2 == 0 { c_k.clone() } else { c_k.zero_like().ring_sub(&c_k) };
        out.push(e_k);
        c_prev = c_k;
    }
    Ok(out)
}

/// Coefficient of `t^k` in `det(I + tA)`.
pub fn elem_symm<T: PhiScalar>(a: &[Vec<T>], k: usize) -> Result<T> {
    let n = check_square(a)?;
    if k > n {
        return Err(Error::DegreeMismatch { expected: n, found: k });
    }
    Ok(elem_symm_all(a)?[k].clone())
}

/// An invariant symmetric polynomial in its elementary-symmetric
/// encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricPolynomial {
    /// Ambient matrix size the polynomial applies to.
    pub n: usize,
    /// Total weight `l` (homogeneity degree in the eigenvalues).
    pub weight: usize,
    /// Polynomial in the formal variables `c_1..c_l`, `c_k` of weight `k`;
    /// every monomial has total weight `l`.
    pub hat: Polynomial,
}

fn monomial_weight(m: &Monomial) -> usize {
    m.0.iter().enumerate().map(|(i, &e)| (i + 1) * e as usize).sum()
}

impl SymmetricPolynomial {
    /// Build from a `hat` polynomial in `c`-variables, validating
    /// weighted homogeneity and `1 <= weight <= n`.
    pub fn new(n: usize, hat: Polynomial) -> Result<Self> {
        let mut weight = None;
        for (m, _) in hat.terms() {
            let w = monomial_weight(m);
            match weight {
                None => weight = Some(w),
                Some(prev) if prev != w => {
                    return Err(Error::NotWeightedHomogeneous {
                        detail: format!("monomials of weight {prev} and {w}"),
                    })
                }
                _ => {}
            }
        }
        let weight = weight.ok_or_else(|| Error::NotWeightedHomogeneous {
            detail: "zero polynomial".into(),
        })?;
        if weight == 0 || weight > n {
            return Err(Error::DegreeMismatch { expected: n, found: weight });
        }
        // Re-embed into exactly `weight` variables c_1..c_l.
        let hat = embed(&hat, weight);
        Ok(SymmetricPolynomial { n, weight, hat })
    }

    /// Parse `c`-basis or `p`-basis (power sum) text, e.g. `c1^2`,
    /// `c1*c2`, `p2`, `1/2*p1^2 - 1/2*p2`.
    pub fn parse(src: &str, n: usize) -> Result<Self> {
        let has_c = max_var_index(src, 'c') > 0;
        let has_p = max_var_index(src, 'p') > 0;
        if has_c && has_p {
            return Err(Error::Parse {
                offset: 0,
                message: "mixed c- and p-basis variables".into(),
            });
        }
        if has_p {
            let k = max_var_index(src, 'p');
            let expr = parse_with_prefix(src, 'p', k)?;
            newton_convert(&expr, n)
        } else {
            let k = max_var_index(src, 'c');
            if k == 0 {
                return Err(Error::Parse {
                    offset: 0,
                    message: "no c- or p-basis variable found".into(),
                });
            }
            let hat = parse_with_prefix(src, 'c', k)?;
            SymmetricPolynomial::new(n, hat)
        }
    }

    /// Recognized preset names, resolved for ambient size `n`:
    /// `c1^n`, `cn`, `c1*cn-1`, `chn` (the degree-n Chern character,
    /// `p_n/n!`). Returns the equivalent source text.
    pub fn preset(name: &str, n: usize) -> Option<String> {
        match name {
            "c1^n" => Some(format!("c1^{n}")),
            "cn" => Some(format!("c{n}")),
            "c1*cn-1" if n >= 2 => Some(format!("c1*c{}", n - 1)),
            "chn" => {
                let fact: u64 = (1..=n as u64).product();
                Some(format!("1/{fact}*p{n}"))
            }
            _ => None,
        }
    }

    /// Parse either a preset name or literal syntax.
    pub fn parse_or_preset(src: &str, n: usize) -> Result<Self> {
        match SymmetricPolynomial::preset(src, n) {
            Some(resolved) => SymmetricPolynomial::parse(&resolved, n),
            None => SymmetricPolynomial::parse(src, n),
        }
    }
}

fn embed(p: &Polynomial, nvars: usize) -> Polynomial {
    let mut out = Polynomial::zero(nvars);
    for (m, c) in p.terms() {
        let mut exps = vec![0u32; nvars];
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                exps[i] = e;
            }
        }
        out.add_term(Monomial(exps), c.clone());
    }
    out
}

/// `Phi(A) = hat(e_1(A), ..., e_l(A))`.
pub fn phi_eval<T: PhiScalar>(phi: &SymmetricPolynomial, a: &[Vec<T>]) -> Result<T> {
    let n = check_square(a)?;
    if n != phi.n {
        return Err(Error::DegreeMismatch { expected: phi.n, found: n });
    }
    let elems = elem_symm_all(a)?;
    let proto = &a[0][0];
    let mut acc = proto.zero_like();
    for (m, coeff) in phi.hat.terms() {
        let mut t = proto.lift_gaussian(coeff);
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                t = t.ring_mul(&elems[i + 1]);
            }
        }
        acc = acc.ring_add(&t);
    }
    Ok(acc)
}

/// The mixed term `Phi_k(A, B)`: the coefficient of `s^k` in
/// `Phi(sA + B)`, so that `Phi(A + B) = sum_k Phi_k(A, B)`. Computed by
/// interpolation at `s = 0..l`; the divided-difference solve divides
/// only by integers, hence is exact on exact inputs.
pub fn phi_mixed<T: PhiScalar>(
    phi: &SymmetricPolynomial,
    a: &[Vec<T>],
    b: &[Vec<T>],
    k: usize,
) -> Result<T> {
    let n = check_square(a)?;
    let nb = check_square(b)?;
    if n != nb {
        return Err(Error::DegreeMismatch { expected: n, found: nb });
    }
    let l = phi.weight;
    if k > l {
        return Err(Error::DegreeMismatch { expected: l, found: k });
    }
    let proto = &a[0][0];

    let mut values = Vec::with_capacity(l + 1);
    for s in 0..=l as i64 {
        let sa_plus_b: Vec<Vec<T>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| a[i][j].ring_mul(&proto.lift_int(s)).ring_add(&b[i][j]))
                    .collect()
            })
            .collect();
        values.push(phi_eval(phi, &sa_plus_b)?);
    }

    // Newton divided differences on the nodes 0..l, then expansion to
    // monomial coefficients.
    let mut dd = values;
    for level in 1..=l {
        for j in (level..=l).rev() {
            dd[j] = dd[j].ring_sub(&dd[j - 1]).div_int(level as i64);
        }
    }
    let mut coeffs: Vec<T> = (0..=l).map(|_| proto.zero_like()).collect();
    let mut basis: Vec<T> = vec![proto.one_like()];
    for (j, d) in dd.iter().enumerate() {
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c = c.ring_add(&d.ring_mul(b));
        }
        // basis *= (s - j)
        let node = proto.lift_int(j as i64);
        let mut next: Vec<T> = (0..=basis.len()).map(|_| proto.zero_like()).collect();
        for (d, b) in basis.iter().enumerate() {
            next[d + 1] = next[d + 1].ring_add(b);
            next[d] = next[d].ring_sub(&b.ring_mul(&node));
        }
        basis = next;
    }
    Ok(coeffs[k].clone())
}

/// Rewrite a weighted-homogeneous expression in the power sums
/// `p_1..p_m` into the elementary basis via Newton's identities.
pub fn newton_convert(expr: &Polynomial, n: usize) -> Result<SymmetricPolynomial> {
    let m = expr.nvars();
    // Weighted homogeneity in p-weights equals weighted homogeneity in
    // c-weights, so validation happens in SymmetricPolynomial::new; the
    // weight here only sizes the target ring.
    let weight = expr
        .terms()
        .map(|(mon, _)| monomial_weight(mon))
        .max()
        .ok_or_else(|| Error::NotWeightedHomogeneous { detail: "zero polynomial".into() })?;
    let nvars = weight.max(m);

    // p_1 = e_1;  p_k = sum_{i=1}^{k-1} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k.
    let mut power_sums: Vec<Polynomial> = Vec::with_capacity(m + 1);
    power_sums.push(Polynomial::zero(nvars));
    for k in 1..=m {
        let mut acc = Polynomial::zero(nvars);
        for i in 1..k {
            let e_i = Polynomial::var(nvars, i - 1).unwrap();
            let term = e_i.mul(&power_sums[k - i]);
            acc = if (i - 1) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        let sign = if (k - 1) % 2 == 0 { k as i64 } else { -(k as i64) };
        let e_k = Polynomial::var(nvars, k - 1).unwrap();
        acc = acc.add(&e_k.scale(&GaussianRational::from_int(sign)));
        power_sums.push(acc);
    }

    let subs: Vec<Polynomial> = (1..=m).map(|k| power_sums[k].clone()).collect();
    let hat = expr.substitute(&subs)?;
    SymmetricPolynomial::new(n, hat)
}

/// A square matrix of scalars, either exact or floating; the CLI's
/// `phi-eval` surface.
#[derive(Debug, Clone)]
pub enum ScalarMatrix {
    Exact(Vec<Vec<GaussianRational>>),
    Float(Vec<Vec<Complex64>>),
}

/// The value of a [`ScalarMatrix`] evaluation, in the matching mode.
#[derive(Debug, Clone)]
pub enum ScalarValue {
    Exact(GaussianRational),
    Float(Complex64),
}

impl ScalarMatrix {
    pub fn size(&self) -> Result<usize> {
        match self {
            ScalarMatrix::Exact(a) => check_square(a),
            ScalarMatrix::Float(a) => check_square(a),
        }
    }

    pub fn phi_eval(&self, phi: &SymmetricPolynomial) -> Result<ScalarValue> {
        match self {
            ScalarMatrix::Exact(a) => Ok(ScalarValue::Exact(phi_eval(phi, a)?)),
            ScalarMatrix::Float(a) => Ok(ScalarValue::Float(phi_eval(phi, a)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::GaussianRational as Q;

    fn diag(values: &[i64]) -> Vec<Vec<Q>> {
        let n = values.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Q::from_int(values[i]) } else { Q::zero() })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn elem_symm_examples() {
        let a = diag(&[1, 1]);
        assert_eq!(elem_symm(&a, 1).unwrap(), Q::from_int(2));
        assert_eq!(elem_symm(&a, 2).unwrap(), Q::one());

        // Oracle: expand (1+t)(1+2t)(1+3t) = 1 + 6t + 11t^2 + 6t^3.
        let a = diag(&[1, 2, 3]);
        assert_eq!(elem_symm(&a, 1).unwrap(), Q::from_int(6));
        assert_eq!(elem_symm(&a, 2).unwrap(), Q::from_int(11));
        assert_eq!(elem_symm(&a, 3).unwrap(), Q::from_int(6));

        let nil = vec![vec![Q::zero(), Q::one()], vec![Q::zero(), Q::zero()]];
        assert_eq!(elem_symm(&nil, 1).unwrap(), Q::zero());
        assert_eq!(elem_symm(&nil, 2).unwrap(), Q::zero());

        let bad = vec![vec![Q::one()], vec![Q::one()]];
        assert!(elem_symm(&bad, 1).is_err());
    }

    #[test]
    fn elem_symm_matches_symmetric_functions_of_diagonal() {
        let lam = [2i64, -3, 5, 7];
        let a = diag(&lam);
        let e = elem_symm_all(&a).unwrap();
        // e_2 = sum_{i<j} lam_i lam_j, e_4 = product.
        let mut e2 = 0i64;
        for i in 0..4 {
            for j in (i + 1)..4 {
                e2 += lam[i] * lam[j];
            }
        }
        assert_eq!(e[2], Q::from_int(e2));
        assert_eq!(e[4], Q::from_int(lam.iter().product()));
    }

    #[test]
    fn phi_eval_examples() {
        // c1^2 on diag(1, lambda) = (1 + lambda)^2
        let phi = SymmetricPolynomial::parse("c1^2", 2).unwrap();
        let a = diag(&[1, 4]);
        assert_eq!(phi_eval(&phi, &a).unwrap(), Q::from_int(25));

        // c2 on a 2x2 matrix is the determinant.
        let phi = SymmetricPolynomial::parse("c2", 2).unwrap();
        let a = vec![
            vec![Q::from_int(2), Q::from_int(3)],
            vec![Q::from_int(5), Q::from_int(7)],
        ];
        assert_eq!(phi_eval(&phi, &a).unwrap(), Q::from_int(-1));

        // c1*c2 on diag(1,2,3) = 6 * 11 = 66.
        let phi = SymmetricPolynomial::parse("c1*c2", 3).unwrap();
        assert_eq!(phi_eval(&phi, &diag(&[1, 2, 3])).unwrap(), Q::from_int(66));

        // Size mismatch.
        assert!(phi_eval(&phi, &diag(&[1, 2])).is_err());
    }

    #[test]
    fn phi_mixed_examples() {
        let phi = SymmetricPolynomial::parse("c1^2", 2).unwrap();
        let a = diag(&[1, 1]);
        // (tr(sA + A))^2 = (2s + 2)^2: coefficient of s is 8.
        assert_eq!(phi_mixed(&phi, &a, &a, 1).unwrap(), Q::from_int(8));
        // k = l recovers Phi(A) regardless of B.
        let b = diag(&[3, -2]);
        assert_eq!(phi_mixed(&phi, &a, &b, 2).unwrap(), phi_eval(&phi, &a).unwrap());
        // B = 0: zero below top degree, Phi(A) at top.
        let zero = diag(&[0, 0]);
        assert_eq!(phi_mixed(&phi, &a, &zero, 0).unwrap(), Q::zero());
        assert_eq!(phi_mixed(&phi, &a, &zero, 1).unwrap(), Q::zero());
        assert_eq!(phi_mixed(&phi, &a, &zero, 2).unwrap(), phi_eval(&phi, &a).unwrap());
    }

    #[test]
    fn polarization_sum_identity() {
        let phi = SymmetricPolynomial::parse("c1*c2", 3).unwrap();
        let a = vec![
            vec![Q::from_int(1), Q::from_int(2), Q::zero()],
            vec![Q::from_ratio(1, 2), Q::from_int(-1), Q::one()],
            vec![Q::zero(), Q::from_int(3), Q::from_int(2)],
        ];
        let b = vec![
            vec![Q::from_int(2), Q::zero(), Q::from_ratio(3, 4)],
            vec![Q::one(), Q::from_int(1), Q::zero()],
            vec![Q::from_int(-2), Q::zero(), Q::from_int(5)],
        ];
        let sum_ab: Vec<Vec<Q>> = (0..3)
            .map(|i| (0..3).map(|j| &a[i][j] + &b[i][j]).collect())
            .collect();
        let mut total = Q::zero();
        for k in 0..=3 {
            total = &total + &phi_mixed(&phi, &a, &b, k).unwrap();
        }
        assert_eq!(total, phi_eval(&phi, &sum_ab).unwrap());
    }

    #[test]
    fn newton_convert_examples() {
        let p1 = SymmetricPolynomial::parse("p1", 3).unwrap();
        assert_eq!(p1.hat, parse_with_prefix("c1", 'c', 1).unwrap());

        let p2 = SymmetricPolynomial::parse("p2", 3).unwrap();
        assert_eq!(p2.hat, parse_with_prefix("c1^2 - 2*c2", 'c', 2).unwrap());

        let p1sq = SymmetricPolynomial::parse("p1^2", 3).unwrap();
        assert_eq!(p1sq.hat, parse_with_prefix("c1^2", 'c', 2).unwrap());

        // Power-sum evaluation agrees with the definition on a diagonal.
        let a = diag(&[2, 3, -1]);
        let p3 = SymmetricPolynomial::parse("p3", 3).unwrap();
        let want = 2i64.pow(3) + 3i64.pow(3) + (-1i64).pow(3);
        assert_eq!(phi_eval(&p3, &a).unwrap(), Q::from_int(want));
    }

    #[test]
    fn homogeneity_is_validated() {
        assert!(matches!(
            SymmetricPolynomial::parse("c1 + c2", 3),
            Err(Error::NotWeightedHomogeneous { .. })
        ));
        assert!(matches!(
            SymmetricPolynomial::parse("p1 + p2", 3),
            Err(Error::NotWeightedHomogeneous { .. })
        ));
        // Weight exceeding the ambient size is rejected.
        assert!(matches!(
            SymmetricPolynomial::parse("c1^3", 2),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn presets_resolve() {
        let phi = SymmetricPolynomial::parse_or_preset("cn", 2).unwrap();
        assert_eq!(phi.weight, 2);
        let phi = SymmetricPolynomial::parse_or_preset("c1^n", 3).unwrap();
        assert_eq!(phi.weight, 3);
        let phi = SymmetricPolynomial::parse_or_preset("c1*cn-1", 3).unwrap();
        assert_eq!(phi.weight, 3);
        // ch2 = p2/2 = (c1^2 - 2 c2)/2.
        let phi = SymmetricPolynomial::parse_or_preset("chn", 2).unwrap();
        assert_eq!(
            phi.hat,
            parse_with_prefix("1/2*c1^2 - c2", 'c', 2).unwrap()
        );
    }

    #[test]
    fn conjugation_invariance_sample() {
        // P A P^-1 with P = [[1, 1], [0, 1]]: phi_eval is unchanged.
        let phi = SymmetricPolynomial::parse("c1^2", 2).unwrap();
        let a = vec![
            vec![Q::from_int(3), Q::from_int(1)],
            vec![Q::from_int(2), Q::from_int(-1)],
        ];
        // Conjugate by hand: P A P^-1 where P^-1 = [[1, -1], [0, 1]].
        let conj = vec![
            vec![&a[0][0] + &a[1][0], &(&(&a[0][1] + &a[1][1]) - &a[0][0]) - &a[1][0]],
            vec![a[1][0].clone(), &a[1][1] - &a[1][0]],
        ];
        assert_eq!(phi_eval(&phi, &conj).unwrap(), phi_eval(&phi, &a).unwrap());
    }
}
