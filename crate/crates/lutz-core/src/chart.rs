//! Coordinate charts.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoordKind {
    /// Periodic with period 2π.
    Angle,
    /// Non-negative.
    Radial,
    Linear,
    BoundedLinear(f64, f64),
}

impl CoordKind {
    /// Negative powers of the bare coordinate are admitted.
    pub fn allows_negative_power(self) -> bool {
        !matches!(self, CoordKind::Angle)
    }

    pub fn allows_square(self) -> bool {
        !matches!(self, CoordKind::Angle)
    }

    pub fn contains(self, v: f64) -> bool {
        match self {
            CoordKind::Angle | CoordKind::Linear => v.is_finite(),
            CoordKind::Radial => v >= 0.0,
            CoordKind::BoundedLinear(a, b) => v >= a && v <= b,
        }
    }

    /// Range used when a sampler needs a default box.
    pub fn default_range(self) -> (f64, f64) {
        match self {
            CoordKind::Angle => (0.0, 2.0 * PI),
            CoordKind::Radial => (0.0, 2.0),
            CoordKind::Linear => (-2.0, 2.0),
            CoordKind::BoundedLinear(a, b) => (a, b),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Coordinate {
    pub name: String,
    pub kind: CoordKind,
}

/// An ordered coordinate system. `weights` lists coordinates whose product
/// is the density of the declared volume form (e.g. the radii of a
/// cylindrical chart).
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    coords: Vec<Coordinate>,
    weights: Vec<usize>,
}

impl Chart {
    pub fn new(coords: Vec<(&str, CoordKind)>) -> Result<Chart> {
        let coords: Vec<Coordinate> = coords
            .into_iter()
            .map(|(n, k)| Coordinate { name: n.to_string(), kind: k })
            .collect();
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].iter().any(|d| d.name == c.name) {
                return Err(Error::DuplicateCoordinate(c.name.clone()));
            }
        }
        if coords.len() > 32 {
            return Err(Error::BadIndex("charts are limited to 32 coordinates".into()));
        }
        Ok(Chart { coords, weights: Vec::new() })
    }

    pub fn with_weights(mut self, weights: Vec<usize>) -> Chart {
        self.weights = weights;
        self
    }

    /// (φ, r₁, θ₁, …, rₙ, θₙ) with volume density r₁⋯rₙ.
    pub fn cylindrical(n: usize) -> Chart {
        Self::tube(n, "phi", CoordKind::Angle)
    }

    /// (z, r₁, θ₁, …, rₙ, θₙ): the line version.
    pub fn line_cylindrical(n: usize) -> Chart {
        Self::tube(n, "z", CoordKind::Linear)
    }

    fn tube(n: usize, core: &str, kind: CoordKind) -> Chart {
        let mut names = Vec::new();
        for i in 1..=n {
            names.push((format!("r{i}"), CoordKind::Radial));
            names.push((format!("th{i}"), CoordKind::Angle));
        }
        let mut coords = Vec::with_capacity(2 * n + 1);
        coords.push(Coordinate { name: core.to_string(), kind });
        coords.extend(names.into_iter().map(|(name, kind)| Coordinate { name, kind }));
        Chart { coords, weights: (0..n).map(|i| 1 + 2 * i).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Coordinate] {
        &self.coords
    }

    pub fn name(&self, i: usize) -> &str {
        &self.coords[i].name
    }

    pub fn kind(&self, i: usize) -> CoordKind {
        self.coords[i].kind
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c.name == name)
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::BadAssignment(format!("no coordinate named `{name}`")))
    }

    /// Chart on the listed coordinates, in their original order. Weights on
    /// dropped coordinates are discarded.
    pub fn sub_chart(&self, keep: &[usize]) -> Chart {
        let coords = keep.iter().map(|&i| self.coords[i].clone()).collect();
        let weights = self
            .weights
            .iter()
            .filter_map(|w| keep.iter().position(|k| k == w))
            .collect();
        Chart { coords, weights }
    }
}
