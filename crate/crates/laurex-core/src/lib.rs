//! Exact computer algebra for finite graded modules.
//!
//! The crate computes Hilbert series of finitely presented graded modules
//! over weighted polynomial rings and their quotients, graded free
//! resolutions (including the 2-periodic resolutions coming from matrix
//! factorizations over hypersurfaces), Hilbert series of graded Ext and Tor
//! modules, Laurent expansions of the resulting rational functions around
//! 0, 1 and infinity, and the Laurent-coefficient invariants derived from
//! those expansions. Every computation is exact: coefficients are
//! arbitrary-precision rationals and no floating point is used anywhere.
//!
//! The crate is `no_std` (with `alloc`); all IO, parsing of session files
//! and the command-line front end live in the companion `laurex` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod groebner;
pub mod homalg;
pub mod invariants;
pub mod polyring;
pub mod ratfun;
pub mod reference;
pub mod resolve;
