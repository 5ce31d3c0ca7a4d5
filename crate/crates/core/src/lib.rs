//! Vector-valued Jack polynomials for irreducible `S_N`-modules.
//!
//! The algebraic side (tableaux, the seminormal representation, Dunkl and
//! Cherednik operators, the Yang-Baxter graph, norms and symmetric Jack
//! polynomials) is generic over [`Scalar`]; use [`Rational`] for exact work.
//! The [`torus_wave`] module is numerical and works in `f64`.

pub mod combinatorics;
pub mod error;
pub mod group_action;
pub mod hermitian;
pub mod matrix;
pub mod operators;
pub mod perm;
pub mod scalar;
pub mod symmetric_jack;
pub mod torus_wave;
pub mod vvpoly;
pub mod yang_baxter;

pub use combinatorics::{Composition, Filling, Partition, Rsyt};
pub use error::{Error, Result};
pub use group_action::{Basis, Representation, TableauBasis};
pub use matrix::SquareMatrix;
pub use perm::Permutation;
pub use scalar::Scalar;
pub use symmetric_jack::{ComponentSet, SymmetricJack};
pub use torus_wave::{BaseState, TorusPoint};
pub use vvpoly::{Degree, KappaContext, VvPoly};
pub use yang_baxter::{Edge, GraphNode, JackEngine, Strategy};

pub type Rational = num_rational::BigRational;
pub type Poly = VvPoly<Rational>;
pub type Context = KappaContext<Rational>;
pub type Engine = yang_baxter::JackEngine<Rational>;
pub type Jack = symmetric_jack::SymmetricJack<Rational>;
pub type Poly64 = VvPoly<f64>;
pub type Engine64 = yang_baxter::JackEngine<f64>;
