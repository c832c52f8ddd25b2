//! Transmission through a triangular barrier and bound levels of a
//! triangular well for the Schrödinger equation with a linearly varying
//! effective mass, m(x) = M0 − M1·x.
//!
//! * [`sfun`] — Airy, Kummer and Gamma functions.
//! * [`model`] — units, profiles and coefficient bookkeeping.
//! * [`scatter`] — region waves, matching system, transmission, sweeps.
//! * [`bound`] — closed-form energy levels of the well.
//! * [`oracle`] — independent ODE integration used for verification.
//! * [`cli`] — command-line front end.

pub mod sfun;
pub mod model;
pub mod scatter;
pub mod bound;
pub mod oracle;
pub mod cli;
