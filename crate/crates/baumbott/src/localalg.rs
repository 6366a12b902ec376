//! Zero-dimensional local algebras and the exact Grothendieck residue.
//!
//! The pipeline is: Buchberger with cofactor tracking (every basis
//! element carries an exact certificate `g = sum_j c_j * a_j` over the
//! input generators), the standard-monomial basis of the quotient, and
//! the classical transformation law. For each variable the minimal
//! power with `z_i^{N_i}` in the ideal yields a certificate row
//! `z_i^{N_i} = sum_j C_ij * a_j`; then
//!
//! ```text
//! Res_0[ h dz / (a_1 ... a_n) ]
//!     = Res_0[ h det(C) dz / (z_1^{N_1} ... z_n^{N_n}) ]
//! ```
//!
//! and the right-hand side is the coefficient of the monomial
//! `z^(N_1 - 1, ..., N_n - 1)` in the polynomial `h * det(C)`.
//!
//! Gröbner computation is global, not local (Mora): the residue
//! pipeline requires every variable to be nilpotent in the quotient
//! (origin the only affine common zero), which makes the global basis
//! sufficient. Violations surface as [`Error::OriginNotOnlyZero`].

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::rational::GaussianRational;
use std::cmp::Ordering;

/// Runtime monomial order for the Gröbner engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => a.cmp(b),
            MonomialOrder::Lex => {
                for (x, y) in a.0.iter().zip(&b.0) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::GrevLex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

/// Leading (monomial, coefficient) of a nonzero polynomial under `order`.
fn leading_term(p: &Polynomial, order: MonomialOrder) -> Option<(Monomial, GaussianRational)> {
    let mut best: Option<(&Monomial, &GaussianRational)> = None;
    for (m, c) in p.terms() {
        match best {
            None => best = Some((m, c)),
            Some((bm, _)) if order.cmp(m, bm) == Ordering::Greater => best = Some((m, c)),
            _ => {}
        }
    }
    best.map(|(m, c)| (m.clone(), c.clone()))
}

/// A Gröbner basis of the ideal generated by `generators`, with an exact
/// cofactor certificate for every element.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub generators: Vec<Polynomial>,
    pub elements: Vec<Polynomial>,
    /// `cofactors[t][j]` with `elements[t] = sum_j cofactors[t][j] * generators[j]`.
    pub cofactors: Vec<Vec<Polynomial>>,
    pub order: MonomialOrder,
    leading: Vec<Monomial>,
}

/// Buchberger with the normal pair-selection strategy (smallest lcm
/// under the order, ties broken by pair creation index) and the coprime
/// criterion. Output is deterministic for a fixed order. Input
/// generators are kept verbatim as the first elements with identity
/// cofactor rows; elements added by S-pair reduction are normalized to
/// monic leading coefficient.
pub fn buchberger_with_cofactors(
    generators: &[Polynomial],
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    if generators.is_empty() {
        return Err(Error::Parse { offset: 0, message: "empty generator list".into() });
    }
    let nvars = generators[0].nvars();
    for g in generators {
        if g.nvars() != nvars {
            return Err(Error::VariableMismatch { expected: nvars, found: g.nvars() });
        }
        if g.is_zero() {
            return Err(Error::Parse { offset: 0, message: "zero generator".into() });
        }
    }

    let ngens = generators.len();
    let mut elements: Vec<Polynomial> = generators.to_vec();
    let mut cofactors: Vec<Vec<Polynomial>> = (0..ngens)
        .map(|t| {
            (0..ngens)
                .map(|j| if j == t { Polynomial::one(nvars) } else { Polynomial::zero(nvars) })
                .collect()
        })
        .collect();
    let mut leading: Vec<(Monomial, GaussianRational)> =
        elements.iter().map(|e| leading_term(e, order).unwrap()).collect();

    // (i, j, lcm); position in the vec is the creation index.
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
    let push_pairs = |pairs: &mut Vec<(usize, usize, Monomial)>,
                          leading: &[(Monomial, GaussianRational)],
                          t: usize| {
        for s in 0..t {
            pairs.push((s, t, leading[s].0.lcm(&leading[t].0)));
        }
    };
    for t in 0..ngens {
        push_pairs(&mut pairs, &leading, t);
    }

    let mut done = vec![false; pairs.len()];
    loop {
        // Normal strategy: smallest lcm, first creation index on ties.
        let mut pick: Option<usize> = None;
        for (k, (_, _, l)) in pairs.iter().enumerate() {
            if done[k] {
                continue;
            }
            match pick {
                None => pick = Some(k),
                Some(b) if order.cmp(l, &pairs[b].2) == Ordering::Less => pick = Some(k),
                _ => {}
            }
        }
        let Some(k) = pick else { break };
        done[k] = true;
        let (i, j, ref l) = pairs[k];

        // Coprime leading monomials: S-polynomial reduces to zero.
        let (ref lm_i, ref lc_i) = leading[i];
        let (ref lm_j, ref lc_j) = leading[j];
        if lm_i.mul(lm_j) == *l {
            continue;
        }

        let ui = lm_i.div(l);
        let uj = lm_j.div(l);
        let ci = lc_i.inv();
        let cj = lc_j.inv();
        let s = elements[i].mul_term(&ui, &ci).sub(&elements[j].mul_term(&uj, &cj));
        let mut row: Vec<Polynomial> = (0..ngens)
            .map(|g| {
                cofactors[i][g]
                    .mul_term(&ui, &ci)
                    .sub(&cofactors[j][g].mul_term(&uj, &cj))
            })
            .collect();

        let (rem, quot) = reduce_tracking(&s, &elements, &leading, order);
        if rem.is_zero() {
            continue;
        }
        for (t, q) in quot.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for g in 0..ngens {
                row[g] = row[g].sub(&q.mul(&cofactors[t][g]));
            }
        }
        let (lm, lc) = leading_term(&rem, order).unwrap();
        let inv = lc.inv();
        let rem = rem.scale(&inv);
        for r in row.iter_mut() {
            *r = r.scale(&inv);
        }
        elements.push(rem);
        cofactors.push(row);
        leading.push((lm, GaussianRational::one()));
        let t = elements.len() - 1;
        let before = pairs.len();
        push_pairs(&mut pairs, &leading, t);
        done.resize(before + t, false);
    }

    let leading = leading.into_iter().map(|(m, _)| m).collect();
    Ok(GroebnerBasis { generators: generators.to_vec(), elements, cofactors, order, leading })
}

/// Full multivariate division: the remainder has no term divisible by
/// any leading monomial. Reduces the leading term first and always uses
/// the first reducer in element order, so the result is deterministic.
/// Also returns the quotients `q_t` with `p = sum_t q_t * elements[t] + rem`.
fn reduce_tracking(
    p: &Polynomial,
    elements: &[Polynomial],
    leading: &[(Monomial, GaussianRational)],
    order: MonomialOrder,
) -> (Polynomial, Vec<Polynomial>) {
    let nvars = p.nvars();
    let mut quot = vec![Polynomial::zero(nvars); elements.len()];
    let mut rem = Polynomial::zero(nvars);
    let mut work = p.clone();
    'outer: while let Some((m, c)) = leading_term(&work, order) {
        for (t, (lm, lc)) in leading.iter().enumerate() {
            if lm.divides(&m) {
                let u = lm.div(&m);
                let q = &c / lc;
                work = work.sub(&elements[t].mul_term(&u, &q));
                quot[t] = quot[t].add(&Polynomial::monomial(nvars, &u.0, q));
                continue 'outer;
            }
        }
        // Leading term is standard: move it to the remainder.
        let term = Polynomial::monomial(nvars, &m.0, c);
        rem = rem.add(&term);
        work = work.sub(&term);
    }
    (rem, quot)
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.generators[0].nvars()
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    /// Normal form of `p` modulo the basis: supported on standard
    /// monomials, with `p - normal_form(p)` in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.nvars() != self.nvars() {
            return Err(Error::VariableMismatch { expected: self.nvars(), found: p.nvars() });
        }
        let leading: Vec<(Monomial, GaussianRational)> = self
            .elements
            .iter()
            .map(|e| leading_term(e, self.order).unwrap())
            .collect();
        Ok(reduce_tracking(p, &self.elements, &leading, self.order).0)
    }

    /// Normal form plus an exact membership certificate over the
    /// original generators: `p = sum_j c_j * a_j + rem`.
    pub fn reduce_with_certificate(&self, p: &Polynomial) -> Result<(Polynomial, Vec<Polynomial>)> {
        if p.nvars() != self.nvars() {
            return Err(Error::VariableMismatch { expected: self.nvars(), found: p.nvars() });
        }
        let nvars = self.nvars();
        let leading: Vec<(Monomial, GaussianRational)> = self
            .elements
            .iter()
            .map(|e| leading_term(e, self.order).unwrap())
            .collect();
        let (rem, quot) = reduce_tracking(p, &self.elements, &leading, self.order);
        let ngens = self.generators.len();
        let mut cert = vec![Polynomial::zero(nvars); ngens];
        for (t, q) in quot.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (g, c) in cert.iter_mut().enumerate() {
                *c = c.add(&q.mul(&self.cofactors[t][g]));
            }
        }
        Ok((rem, cert))
    }

    /// Debug snapshot: elements and cofactor rows in polynomial text
    /// syntax.
    pub fn to_debug_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order.name(),
            "generators": self.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "elements": self.elements.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "cofactors": self
                .cofactors
                .iter()
                .map(|row| row.iter().map(|p| p.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// The standard-monomial basis of the quotient algebra.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    pub basis: Vec<Monomial>,
    pub dimension: usize,
}

/// All monomials not divisible by a leading monomial of the basis,
/// sorted ascending under the basis order. Errors with
/// [`Error::InfiniteDimensional`] when the staircase does not bound
/// every variable.
pub fn quotient_basis(gb: &GroebnerBasis) -> Result<QuotientAlgebra> {
    let nvars = gb.nvars();
    let lts = gb.leading_monomials();
    let mut bounds = vec![None::<u32>; nvars];
    for lt in lts {
        for (i, slot) in bounds.iter_mut().enumerate() {
            if lt.0[i] > 0 && lt.0.iter().enumerate().all(|(j, &e)| j == i || e == 0) {
                let b = lt.0[i];
                *slot = Some(slot.map_or(b, |old: u32| old.min(b)));
            }
        }
        if lt.is_one() {
            // Unit ideal: the quotient is the zero ring.
            return Ok(QuotientAlgebra { basis: Vec::new(), dimension: 0 });
        }
    }
    let bounds: Vec<u32> = bounds
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::InfiniteDimensional)?;

    let mut basis = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        let m = Monomial(exps.clone());
        if !lts.iter().any(|lt| lt.divides(&m)) {
            basis.push(m);
        }
        // Odometer over the box below the pure-power bounds.
        let mut i = 0;
        loop {
            if i == nvars {
                basis.sort_by(|a, b| gb.order.cmp(a, b));
                let dimension = basis.len();
                return Ok(QuotientAlgebra { basis, dimension });
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Smallest `N <= bound` with `z_{var+1}^N` in the ideal, together with
/// the exact certificate `z^N = sum_j c_j * a_j`. Errors with
/// [`Error::OriginNotOnlyZero`] when no such power exists within the
/// bound, i.e. the variable is not nilpotent in the quotient.
pub fn nilpotent_power(
    var: usize,
    gb: &GroebnerBasis,
    bound: usize,
) -> Result<(usize, Vec<Polynomial>)> {
    let nvars = gb.nvars();
    if var >= nvars {
        return Err(Error::IndexOutOfRange { index: var, nvars });
    }
    for n in 1..=bound {
        let mut exps = vec![0u32; nvars];
        exps[var] = n as u32;
        let p = Polynomial::monomial(nvars, &exps, GaussianRational::one());
        let (rem, cert) = gb.reduce_with_certificate(&p)?;
        if rem.is_zero() {
            return Ok((n, cert));
        }
    }
    Err(Error::OriginNotOnlyZero { variable: var })
}

/// Determinant of a square polynomial matrix by Laplace expansion along
/// the first row; the matrices here are small (n x n with n <= 4 or so).
pub(crate) fn poly_matrix_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero(nvars);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = entry.mul(&poly_matrix_det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Precomputed transformation-law data for a fixed generator system;
/// residues of many numerators against the same denominators reuse it.
pub struct ResidueCalculator {
    pub gb: GroebnerBasis,
    pub quotient: QuotientAlgebra,
    pub powers: Vec<usize>,
    det_cofactors: Polynomial,
    target: Monomial,
}

impl ResidueCalculator {
    pub fn new(gens: &[Polynomial], order: MonomialOrder) -> Result<Self> {
        let gb = buchberger_with_cofactors(gens, order)?;
        let n = gb.nvars();
        if gens.len() != n {
            return Err(Error::NonSquare { rows: gens.len(), cols: n });
        }
        let quotient = quotient_basis(&gb)?;
        if quotient.dimension == 0 {
            // Unit ideal: the generators have no common zero at all, so
            // the residue functional is identically zero.
            return Ok(ResidueCalculator {
                gb,
                quotient,
                powers: vec![0; n],
                det_cofactors: Polynomial::zero(n),
                target: Monomial::one(n),
            });
        }
        let bound = quotient.dimension + 1;
        let mut powers = Vec::with_capacity(n);
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let (ni, cert) = nilpotent_power(i, &gb, bound)?;
            powers.push(ni);
            rows.push(cert);
        }
        let det_cofactors = poly_matrix_det(&rows);
        let target = Monomial(powers.iter().map(|&p| (p - 1) as u32).collect());
        Ok(ResidueCalculator { gb, quotient, powers, det_cofactors, target })
    }

    /// `Res_0[ h dz / (a_1 ... a_n) ]`, exactly.
    pub fn residue(&self, h: &Polynomial) -> Result<GaussianRational> {
        if h.nvars() != self.gb.nvars() {
            return Err(Error::VariableMismatch { expected: self.gb.nvars(), found: h.nvars() });
        }
        Ok(h.mul(&self.det_cofactors).coefficient(&self.target))
    }
}

/// The Grothendieck residue of `h` against the complete intersection
/// `(gens)` at the origin, via the transformation law. Requires the
/// origin to be the only common zero in affine space.
pub fn grothendieck_residue(h: &Polynomial, gens: &[Polynomial]) -> Result<GaussianRational> {
    grothendieck_residue_with(h, gens, MonomialOrder::GrevLex)
}

pub fn grothendieck_residue_with(
    h: &Polynomial,
    gens: &[Polynomial],
    order: MonomialOrder,
) -> Result<GaussianRational> {
    ResidueCalculator::new(gens, order)?.residue(h)
}

/// Dimension of the local algebra `O/(gens)`.
pub fn milnor_number(gens: &[Polynomial]) -> Result<usize> {
    let gb = buchberger_with_cofactors(gens, MonomialOrder::GrevLex)?;
    Ok(quotient_basis(&gb)?.dimension)
}

/// Gram matrix of the residue pairing on the standard-monomial basis:
/// entry `(i, j)` is the residue of `b_i * b_j`. Nonsingular by local
/// duality.
pub fn residue_pairing_matrix(gens: &[Polynomial]) -> Result<Vec<Vec<GaussianRational>>> {
    let calc = ResidueCalculator::new(gens, MonomialOrder::GrevLex)?;
    let nvars = calc.gb.nvars();
    let basis: Vec<Polynomial> = calc
        .quotient
        .basis
        .iter()
        .map(|m| Polynomial::monomial(nvars, &m.0, GaussianRational::one()))
        .collect();
    let mut out = Vec::with_capacity(basis.len());
    for bi in &basis {
        let mut row = Vec::with_capacity(basis.len());
        for bj in &basis {
            row.push(calc.residue(&bi.mul(bj))?);
        }
        out.push(row);
    }
    Ok(out)
}
