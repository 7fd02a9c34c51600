//! Root localization and maximal univalent disks for real rational functions
//! `R = q/p` whose numerator and denominator have real, simple, interlacing
//! roots.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`] and [`pair`]: polynomial arithmetic, the Wronskian, residues and
//!   the validated [`InterlacingPair`].
//! * [`roots`]: Aberth–Ehrlich complex roots and bracketed real roots of the
//!   pencil `p + αq`.
//! * [`disks`]: the diameter disks `D_j`, the region `Ω_p` and its pencil
//!   intersections.
//! * [`analysis`]: `|R|²` on the half-circles, its minimum, `Re R`
//!   monotonicity and level-curve topology.
//! * [`univalence`]: argument-principle certification of univalent disks.
//! * [`hb`]: Hermite–Biehler root location and the per-disk root census.
//! * [`wronski`]: numerical inverse of the Wronski map.
//! * [`sample`] and [`report`]: seeded instance generation and JSON reports.

pub mod analysis;
pub mod disks;
mod error;
pub mod hb;
pub mod pair;
pub mod poly;
pub mod report;
pub mod roots;
pub mod sample;
pub mod tol;
pub mod univalence;
pub mod wronski;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use disks::{Disk, MembershipVerdict, OmegaRegion};
pub use pair::InterlacingPair;
pub use poly::{ComplexPolynomial, RealPolynomial};
pub use roots::RootSet;
