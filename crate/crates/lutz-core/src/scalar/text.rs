//! Deterministic text form. Grammar in `docs/expr-grammar.md`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::{One, Signed};

use super::{Arg, Base, ScalarExpr};
use crate::chart::Chart;

/// Display names for parameters and profiles.
#[derive(Clone, Debug, Default)]
pub struct Symbols {
    pub params: Vec<String>,
    pub profiles: Vec<String>,
}

impl Symbols {
    fn param(&self, id: u16) -> String {
        self.params.get(id as usize).cloned().unwrap_or_else(|| format!("p{id}"))
    }

    fn profile(&self, id: u16) -> String {
        self.profiles.get(id as usize).cloned().unwrap_or_else(|| format!("F{id}"))
    }
}

fn coord_name(chart: Option<&Chart>, i: u16) -> String {
    match chart {
        Some(c) if (i as usize) < c.dim() => c.name(i as usize).to_string(),
        _ => format!("x{i}"),
    }
}

fn arg_text(a: Arg, chart: Option<&Chart>) -> String {
    match a {
        Arg::Coord(i) => coord_name(chart, i),
        Arg::CoordSquared(i) => format!("{}^2", coord_name(chart, i)),
        Arg::Norm(m) => norm_text(m, chart),
    }
}

fn norm_text(m: u32, chart: Option<&Chart>) -> String {
    let names: Vec<String> =
        (0..32u16).filter(|i| m & (1 << i) != 0).map(|i| coord_name(chart, i)).collect();
    format!("|{}|", names.join(","))
}

fn base_text(b: Base, chart: Option<&Chart>, sym: &Symbols) -> String {
    match b {
        Base::Coord(i) => coord_name(chart, i),
        Base::Norm(m) => norm_text(m, chart),
        Base::Sin(a) => format!("sin({})", arg_text(a, chart)),
        Base::Cos(a) => format!("cos({})", arg_text(a, chart)),
        Base::Param(id) => sym.param(id),
        Base::Profile { id, order: 0, arg } => format!("{}({})", sym.profile(id), arg_text(arg, chart)),
        Base::Profile { id, order, arg } => {
            format!("D{order}[{}]({})", sym.profile(id), arg_text(arg, chart))
        }
    }
}

impl ScalarExpr {
    /// Text with coordinate names taken from `chart`.
    pub fn to_text(&self, chart: Option<&Chart>, sym: &Symbols) -> String {
        if self.is_symbolic_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_empty() {
                factors.push(mag.to_string());
            }
            for a in m {
                let b = base_text(a.base, chart, sym);
                if a.exp == 1 {
                    factors.push(b);
                } else {
                    factors.push(format!("{b}^{}", a.exp));
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

impl core::fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.to_text(None, &Symbols::default()))
    }
}
