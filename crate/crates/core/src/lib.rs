//! Exact arithmetic for quasi-modular forms attached to elliptic curves.
//!
//! The crate computes, over exact coefficient fields:
//!
//! - reduction of differential forms on Weierstrass curves to the de Rham
//!   basis {dx/y, x dx/y} ([`derham`]);
//! - the Gauss-Manin connection of the Weierstrass family, the Ramanujan and
//!   Darboux-Halphen vector fields and the pullback relating them
//!   ([`gaussmanin`]);
//! - q-expansions of E2, E4, E6 by three independent routes: the Ramanujan
//!   recursion and divisor sums ([`eisenstein`]), theta/eta products
//!   ([`theta`]) and reversion of the hypergeometric period map ([`periods`]);
//! - the classical generating functions tied to this circle of ideas: the
//!   j-function, Ramanujan tau, Dijkgraaf's F_g, Yau-Zaslow and Bryan-Leung
//!   series ([`genfun`]), and finite-field averages reproducing tau(p)
//!   ([`curves`]);
//! - high-precision numeric checks of the Legendre relation and the Schwarz
//!   map ([`periods::numeric`]).
//!
//! Identity checks are exposed behind the [`verify::Check`] trait and a
//! by-name registry so they can be selected at runtime.

pub mod curves;
pub mod derham;
pub mod eisenstein;
pub mod field;
pub mod fraction;
pub mod gaussmanin;
pub mod genfun;
pub mod linalg;
pub mod periods;
pub mod poly;
pub mod series;
pub mod theta;
pub mod verify;
pub mod weierstrass;

pub use field::{BigComplex, BigFloat, CycloNumber, Field, Rat};
pub use series::PuiseuxSeries;
