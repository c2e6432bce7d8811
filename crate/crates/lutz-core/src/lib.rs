#![no_std]
//! Symbolic-numeric exterior calculus for confoliations and contact
//! structures: trig-polynomial coefficients, sparse forms on charts, grid
//! certification, and the named constructions built on them.

extern crate alloc;

pub mod analysis;
pub mod chart;
pub mod constructions;
pub mod error;
pub mod forms;
pub mod handles;
pub mod profile;
pub mod report;
pub mod scalar;
pub mod slice;
pub mod surgery;

pub use chart::{Chart, CoordKind};
pub use error::{Error, Result};
pub use forms::{ChartRef, DiagonalMetric, DifferentialForm, VectorField};
pub use scalar::{Arg, Atom, Base, ScalarExpr, Value, Q};
