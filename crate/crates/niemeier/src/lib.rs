//! Construction of the 24 Niemeier lattices and exact computation of their
//! Siegel theta series of degrees 1-3, together with Sturm-certified
//! congruence checking, the theta operator, and the weight-12 generator
//! combinations that express every Niemeier theta series in closed form.

pub mod error;
pub mod exactmath;
pub mod linalg;

pub mod fourier;
pub mod lattices;
pub mod enumeration;
pub mod eisenstein;
pub mod forms3;
pub mod verify;

pub mod cache;
pub mod context;
pub mod export;

pub use error::{Error, Result};
