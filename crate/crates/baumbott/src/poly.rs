//! Sparse multivariate polynomials over Gaussian rationals.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vector; the key
//! order is graded reverse lexicographic, so iteration over terms is
//! deterministic. No zero coefficients are ever stored.

use crate::error::{Error, Result};
use crate::rational::GaussianRational;
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// An exponent vector. The intrinsic `Ord` is graded reverse
/// lexicographic with `z1 > z2 > ...`; it fixes the storage order of
/// polynomial terms. Runtime monomial orders live in `localalg`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // Smaller exponent in the last differing slot wins.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, GaussianRational::one())
    }

    /// The variable `z_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::IndexOutOfRange { index, nvars });
        }
        let mut p = Polynomial::zero(nvars);
        p.terms.insert(Monomial::var(nvars, index), GaussianRational::one());
        Ok(p)
    }

    pub fn monomial(nvars: usize, exps: &[u32], c: GaussianRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps.to_vec()), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Constant term, i.e. the value at the origin.
    pub fn constant_term(&self) -> GaussianRational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_nvars(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_nvars(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.try_add(other).expect("variable count mismatch")
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.try_sub(other).expect("variable count mismatch")
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.try_mul(other).expect("variable count mismatch")
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, q)| (m.clone(), q * c)).collect(),
        }
    }

    /// Multiply by a single term `c * z^e`.
    pub fn mul_term(&self, e: &Monomial, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, q)| (m.mul(e), q * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact partial derivative with respect to `z_{index+1}`.
    pub fn differentiate(&self, index: usize) -> Result<Polynomial> {
        if index >= self.nvars {
            return Err(Error::IndexOutOfRange { index, nvars: self.nvars });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] = e - 1;
            out.add_term(Monomial(exps), c * &GaussianRational::from_int(e as i64));
        }
        Ok(out)
    }

    pub fn eval_exact(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        if point.len() != self.nvars {
            return Err(Error::VariableMismatch { expected: self.nvars, found: point.len() });
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &point[i];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.nvars {
            return Err(Error::VariableMismatch { expected: self.nvars, found: point.len() });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex64();
            for (i, &e) in m.0.iter().enumerate() {
                t *= point[i].powu(e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute `z_i -> args[i]`; all `args` must share a variable count.
    pub fn substitute(&self, args: &[Polynomial]) -> Result<Polynomial> {
        if args.len() != self.nvars {
            return Err(Error::VariableMismatch { expected: self.nvars, found: args.len() });
        }
        let out_vars = match args.first() {
            Some(a) => a.nvars,
            None => return Ok(Polynomial::constant(0, self.constant_term())),
        };
        for a in args {
            if a.nvars != out_vars {
                return Err(Error::VariableMismatch { expected: out_vars, found: a.nvars });
            }
        }
        let mut acc = Polynomial::zero(out_vars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(out_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&args[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Shift of coordinates `z -> z + p`, so the returned polynomial
    /// satisfies `result(z) = self(z + p)`.
    pub fn translate(&self, p: &[GaussianRational]) -> Result<Polynomial> {
        if p.len() != self.nvars {
            return Err(Error::VariableMismatch { expected: self.nvars, found: p.len() });
        }
        let args: Vec<Polynomial> = (0..self.nvars)
            .map(|i| {
                Polynomial::var(self.nvars, i)
                    .unwrap()
                    .add(&Polynomial::constant(self.nvars, p[i].clone()))
            })
            .collect();
        self.substitute(&args)
    }
}

/// Entry `(i, j)` is the partial derivative of `components[i]` with
/// respect to `z_{j+1}`; errors when the component count differs from
/// the variable count.
pub fn jacobian(components: &[Polynomial]) -> Result<Vec<Vec<Polynomial>>> {
    let n = components.len();
    for c in components {
        if c.nvars() != n {
            return Err(Error::NonSquare { rows: n, cols: c.nvars() });
        }
    }
    components
        .iter()
        .map(|a| (0..n).map(|j| a.differentiate(j)).collect())
        .collect()
}

/// A point of C^n with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoint {
    coords: Vec<Complex64>,
}

impl ComplexPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse {
                offset: 0,
                message: "complex point has non-finite coordinates".into(),
            });
        }
        Ok(ComplexPoint { coords })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 1 {
            parts.push(format!("z{}", i + 1));
        } else if e > 1 {
            parts.push(format!("z{}^{}", i + 1, e));
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    /// Terms in descending grevlex order; round-trips through the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_real() && c.re < num_rational::BigRational::from_integer(0.into())
            {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let coeff_str = if !mag.is_real() {
                format!("({})", mag)
            } else {
                mag.to_string()
            };
            if m.is_one() {
                write!(f, "{}", coeff_str)?;
            } else if coeff_str == "1" {
                write!(f, "{}", fmt_monomial(m))?;
            } else {
                write!(f, "{}*{}", coeff_str, fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}
