//! Exact computations for abelian covers of rational surfaces and the
//! bicanonical map of surfaces of general type with `p_g = 0`.
//!
//! Everything here works over the integers or exact rationals:
//!
//! - [`group`]: finite abelian groups, characters, automorphisms, graph subgroups
//! - [`picard`]: Picard lattices of blowups of the plane and of `P^1 x P^1`
//! - [`linsys`]: dimensions of fat-point linear systems by exact rank
//! - [`covers`]: double covers and `Z_2^n` covers of `P^1` and of surfaces
//! - [`beauville`]: product-quotient surfaces `(C_1 x C_2)/Gamma`
//! - [`fermat`]: the `Z_5^2` action on bicanonical monomials of the Fermat quintic
//! - [`proofcheck`]: replay of the numerical case analyses for `K^2 = 7, 8, 9`

pub mod beauville;
pub mod covers;
mod error;
pub mod exact;
pub mod fermat;
pub mod group;
pub mod linsys;
pub mod picard;
pub mod proofcheck;
pub mod verdict;

pub use error::{Error, Result};
