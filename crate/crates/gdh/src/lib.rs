//! Exact lattice computations for generalised deep holes of the Leech lattice
//! vertex operator algebra.
//!
//! The modules build on each other roughly bottom-up:
//! [`exactlat`] → [`enumerate`] → [`diagram`]; [`liealg`] and [`orbnum`] are
//! pure arithmetic; [`classify`] combines all of them with the bundled data.

pub mod classify;
pub mod data;
pub mod diagram;
pub mod enumerate;
pub mod exactlat;
pub mod liealg;
pub mod orbnum;
