//! Baum-Bott residues of isolated singularities of holomorphic vector
//! fields.
//!
//! The exact side computes Grothendieck residues
//! `Res_0[ h dz / (a_1 ... a_n) ]` over polynomial local algebras with
//! Gaussian-rational coefficients ([`localalg`]), evaluates invariant
//! symmetric polynomials on Jacobian matrices ([`charclass`]), and
//! assembles residues of vector-field singularities plus the global
//! index-sum check on the projective plane ([`foliation`]).
//!
//! The numeric side ([`regnum`]) realizes the same residues as limits of
//! regularized curvature integrals: a smooth cutoff `chi(|a|^2/eps)`
//! interpolates between a flat connection near the singularity and a
//! singular connection built from the pointwise minimal inverse of the
//! field, and the top characteristic form of the resulting curvature
//! concentrates on the shell where the cutoff varies. Tensor-grid
//! quadrature of that density converges to the exact residue as
//! `eps -> 0`.

pub mod charclass;
pub mod error;
pub mod foliation;
pub mod localalg;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod regnum;

pub use error::{Error, Result};
pub use poly::{ComplexPoint, Polynomial};
pub use rational::GaussianRational;
