//! Trig-polynomial coefficient algebra.
//!
//! A [`ScalarExpr`] is a finite sum of rational multiples of monomials in
//! coordinates, sines and cosines of a coordinate or of its square, named
//! parameters and opaque one-variable profiles. The canonical form reduces
//! every term modulo sin²u + cos²u = 1 (positive sine powers are lowered to
//! at most one; a negative sine power instead lowers the cosine power).

mod eval;
mod text;

pub use eval::{Env, NoEnv, ZeroTest};
pub use text::Symbols;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::chart::{Chart, CoordKind};
use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(q(1), |acc, k| acc * q(k))
}

/// Argument of a trig function or of an opaque profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arg {
    Coord(u16),
    CoordSquared(u16),
    /// Euclidean norm of the coordinates in the bit mask. Profiles only.
    Norm(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    Coord(u16),
    Norm(u32),
    Sin(Arg),
    Cos(Arg),
    /// A named constant with zero derivative.
    Param(u16),
    /// `order`-th derivative of the opaque function `id`.
    Profile { id: u16, order: u8, arg: Arg },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub base: Base,
    pub exp: i32,
}

impl Atom {
    pub fn new(base: Base, exp: i32) -> Atom {
        Atom { base, exp }
    }
}

/// Sorted atoms with merged exponents.
pub type Monomial = Vec<Atom>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ScalarExpr {
    terms: Vec<(Monomial, Q)>,
}

/// A constant assigned to a coordinate by `restrict`.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Rational(Q),
    /// q·π
    PiMultiple(Q),
    /// √(q·π)
    SqrtPiMultiple(Q),
}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Rational(q(n))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Rational(v) => q_to_f64(v),
            Value::PiMultiple(v) => q_to_f64(v) * core::f64::consts::PI,
            Value::SqrtPiMultiple(v) => libm::sqrt(q_to_f64(v) * core::f64::consts::PI),
        }
    }

    /// Exact (sin, cos) when the value squared (for `squared`) or the value
    /// itself is a multiple of π/2.
    fn exact_trig(&self, squared: bool) -> Option<(i64, i64)> {
        let angle = match (self, squared) {
            (Value::Rational(v), _) if v.is_zero() => q(0),
            (Value::PiMultiple(v), false) => v.clone(),
            (Value::SqrtPiMultiple(v), true) => v.clone(),
            _ => return None,
        };
        let twice = angle * q(2);
        if !twice.is_integer() {
            return None;
        }
        let k = twice.to_integer().to_i64()?.rem_euclid(4);
        Some([(0, 1), (1, 0), (0, -1), (-1, 0)][k as usize])
    }
}

pub fn q_to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

fn arg_mentions(arg: Arg, i: u16) -> bool {
    match arg {
        Arg::Coord(j) | Arg::CoordSquared(j) => j == i,
        Arg::Norm(mask) => mask & (1 << i) != 0,
    }
}

fn base_mentions(base: Base, i: u16) -> bool {
    match base {
        Base::Coord(j) => j == i,
        Base::Norm(mask) => mask & (1 << i) != 0,
        Base::Sin(a) | Base::Cos(a) | Base::Profile { arg: a, .. } => arg_mentions(a, i),
        Base::Param(_) => false,
    }
}

fn check_atom(atom: &Atom, chart: &Chart) -> Result<()> {
    let dim = chart.dim() as u32;
    let coord_ok = |j: u16| (j as u32) < dim;
    let mask_ok = |m: u32| dim >= 32 || m >> dim == 0;
    let bad = |msg: &str| Err(Error::IllFormedAtom(format!("{msg} in {atom:?}")));
    if atom.exp == 0 {
        return bad("zero exponent");
    }
    let check_arg = |a: Arg| -> Result<()> {
        match a {
            Arg::Coord(j) if !coord_ok(j) => bad("index out of range"),
            Arg::CoordSquared(j) if !coord_ok(j) => bad("index out of range"),
            Arg::CoordSquared(j) if !chart.kind(j as usize).allows_square() => {
                bad("squared angle coordinate")
            }
            Arg::Norm(m) if !mask_ok(m) || m == 0 => bad("bad norm mask"),
            _ => Ok(()),
        }
    };
    match atom.base {
        Base::Coord(j) => {
            if !coord_ok(j) {
                return bad("index out of range");
            }
            if atom.exp < 0 && !chart.kind(j as usize).allows_negative_power() {
                return bad("negative power of an angle coordinate");
            }
            Ok(())
        }
        Base::Norm(m) => {
            if !mask_ok(m) || m == 0 {
                return bad("bad norm mask");
            }
            Ok(())
        }
        Base::Sin(a) | Base::Cos(a) => {
            if matches!(a, Arg::Norm(_)) {
                return bad("trig of a norm");
            }
            check_arg(a)
        }
        Base::Profile { arg, .. } => check_arg(arg),
        Base::Param(_) => Ok(()),
    }
}

/// Sort atoms and merge equal bases.
fn normalize_atoms(mut atoms: Vec<Atom>) -> Monomial {
    atoms.sort();
    let mut out: Monomial = Vec::with_capacity(atoms.len());
    for a in atoms {
        match out.last_mut() {
            Some(last) if last.base == a.base => last.exp += a.exp,
            _ => out.push(a),
        }
        if out.last().map_or(false, |l| l.exp == 0) {
            out.pop();
        }
    }
    out
}

fn exp_of(m: &Monomial, base: Base) -> i32 {
    m.iter().find(|a| a.base == base).map_or(0, |a| a.exp)
}

fn with_shifted(m: &Monomial, shifts: &[(Base, i32)]) -> Monomial {
    let mut atoms = m.clone();
    for &(b, e) in shifts {
        atoms.push(Atom::new(b, e));
    }
    normalize_atoms(atoms)
}

/// Reduce one term modulo sin² + cos² = 1 and accumulate it.
fn reduce_into(m: Monomial, c: Q, out: &mut BTreeMap<Monomial, Q>) {
    for a in &m {
        if let Base::Sin(arg) = a.base {
            let cos = Base::Cos(arg);
            if a.exp >= 2 {
                reduce_into(with_shifted(&m, &[(a.base, -2)]), c.clone(), out);
                reduce_into(with_shifted(&m, &[(a.base, -2), (cos, 2)]), -c, out);
                return;
            }
            if a.exp < 0 && exp_of(&m, cos) >= 2 {
                reduce_into(with_shifted(&m, &[(cos, -2)]), c.clone(), out);
                reduce_into(with_shifted(&m, &[(cos, -2), (a.base, 2)]), -c, out);
                return;
            }
        }
    }
    let slot = out.entry(m).or_insert_with(Q::zero);
    *slot += c;
}

impl ScalarExpr {
    pub fn zero() -> ScalarExpr {
        ScalarExpr { terms: Vec::new() }
    }

    pub fn constant(c: Q) -> ScalarExpr {
        Self::term(c, Vec::new())
    }

    pub fn int(n: i64) -> ScalarExpr {
        Self::constant(q(n))
    }

    pub fn one() -> ScalarExpr {
        Self::int(1)
    }

    pub fn term(c: Q, atoms: Vec<Atom>) -> ScalarExpr {
        Self::from_raw(vec![(c, atoms)])
    }

    pub fn atom(base: Base, exp: i32) -> ScalarExpr {
        Self::term(q(1), vec![Atom::new(base, exp)])
    }

    pub fn coord(i: usize) -> ScalarExpr {
        Self::atom(Base::Coord(i as u16), 1)
    }

    pub fn coord_pow(i: usize, e: i32) -> ScalarExpr {
        Self::atom(Base::Coord(i as u16), e)
    }

    pub fn sin(i: usize) -> ScalarExpr {
        Self::atom(Base::Sin(Arg::Coord(i as u16)), 1)
    }

    pub fn cos(i: usize) -> ScalarExpr {
        Self::atom(Base::Cos(Arg::Coord(i as u16)), 1)
    }

    /// sin(xᵢ²)
    pub fn sin_sq(i: usize) -> ScalarExpr {
        Self::atom(Base::Sin(Arg::CoordSquared(i as u16)), 1)
    }

    /// cos(xᵢ²)
    pub fn cos_sq(i: usize) -> ScalarExpr {
        Self::atom(Base::Cos(Arg::CoordSquared(i as u16)), 1)
    }

    pub fn param(id: u16) -> ScalarExpr {
        Self::atom(Base::Param(id), 1)
    }

    pub fn profile(id: u16, order: u8, arg: Arg) -> ScalarExpr {
        Self::atom(Base::Profile { id, order, arg }, 1)
    }

    pub fn norm(mask: u32) -> ScalarExpr {
        Self::atom(Base::Norm(mask), 1)
    }

    /// Canonical form of an arbitrary list of (coefficient, atoms) terms.
    pub fn from_raw(raw: Vec<(Q, Vec<Atom>)>) -> ScalarExpr {
        let mut acc = BTreeMap::new();
        for (c, atoms) in raw {
            if c.is_zero() {
                continue;
            }
            reduce_into(normalize_atoms(atoms), c, &mut acc);
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Monomial, Q>) -> ScalarExpr {
        ScalarExpr { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Canonicalize a raw term list after checking every atom against the chart.
    pub fn canonicalize(raw: Vec<(Q, Vec<Atom>)>, chart: &Chart) -> Result<ScalarExpr> {
        for (_, atoms) in &raw {
            for a in atoms {
                check_atom(a, chart)?;
            }
        }
        Ok(Self::from_raw(raw))
    }

    pub fn check_on(&self, chart: &Chart) -> Result<()> {
        for (m, _) in &self.terms {
            for a in m {
                check_atom(a, chart)?;
            }
        }
        Ok(())
    }

    /// Re-run canonicalization on the stored terms.
    pub fn recanonicalize(&self) -> ScalarExpr {
        Self::from_raw(self.terms.iter().map(|(m, c)| (c.clone(), m.clone())).collect())
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn is_symbolic_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The rational value if the expression is constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if m.is_empty() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Coordinates the expression depends on.
    pub fn dependencies(&self) -> u32 {
        let mut mask = 0u32;
        for (m, _) in &self.terms {
            for a in m {
                for i in 0..32u16 {
                    if base_mentions(a.base, i) {
                        mask |= 1 << i;
                    }
                }
            }
        }
        mask
    }

    pub fn mentions_symbols(&self) -> bool {
        self.terms
            .iter()
            .any(|(m, _)| m.iter().any(|a| matches!(a.base, Base::Param(_) | Base::Profile { .. })))
    }

    pub fn scale(&self, c: &Q) -> ScalarExpr {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarExpr { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> ScalarExpr {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact inverse of a single-term expression.
    pub fn inverse(&self) -> Result<ScalarExpr> {
        match self.terms.as_slice() {
            [(m, c)] => {
                let atoms = m.iter().map(|a| Atom::new(a.base, -a.exp)).collect();
                Ok(Self::term(c.recip(), atoms))
            }
            _ => Err(Error::NonMonomial(format!("{} terms", self.terms.len()))),
        }
    }

    pub fn product<'a, I: IntoIterator<Item = &'a ScalarExpr>>(items: I) -> ScalarExpr {
        items.into_iter().fold(Self::one(), |acc, x| &acc * x)
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a ScalarExpr>>(items: I) -> ScalarExpr {
        let mut acc = BTreeMap::new();
        for e in items {
            for (m, c) in &e.terms {
                *acc.entry(m.clone()).or_insert_with(Q::zero) += c;
            }
        }
        Self::from_map(acc)
    }

    /// Exact partial derivative with respect to coordinate `i`.
    pub fn differentiate(&self, i: usize) -> ScalarExpr {
        let i = i as u16;
        let mut raw = Vec::new();
        for (m, c) in &self.terms {
            for (k, a) in m.iter().enumerate() {
                if !base_mentions(a.base, i) {
                    continue;
                }
                for (dc, extra) in base_derivative(a.base, i) {
                    let mut atoms: Vec<Atom> = Vec::with_capacity(m.len() + extra.len());
                    for (l, b) in m.iter().enumerate() {
                        if l == k {
                            if a.exp != 1 {
                                atoms.push(Atom::new(a.base, a.exp - 1));
                            }
                        } else {
                            atoms.push(*b);
                        }
                    }
                    atoms.extend(extra);
                    raw.push((c * q(a.exp as i64) * dc, atoms));
                }
            }
        }
        Self::from_raw(raw)
    }

    /// Substitute a constant for coordinate `i`, keeping the result exact.
    pub fn substitute(&self, i: usize, value: &Value) -> Result<ScalarExpr> {
        let i = i as u16;
        let mut raw = Vec::new();
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut atoms = Vec::with_capacity(m.len());
            for a in m {
                if !base_mentions(a.base, i) {
                    atoms.push(*a);
                    continue;
                }
                let factor = match a.base {
                    Base::Coord(_) => match value {
                        Value::Rational(v) => {
                            if v.is_zero() && a.exp < 0 {
                                return Err(Error::DomainPole(format!("x{i}^{} at 0", a.exp)));
                            }
                            rational_pow(v, a.exp)
                        }
                        _ => {
                            return Err(Error::NonExactSubstitution(format!(
                                "bare coordinate x{i} set to an irrational constant"
                            )))
                        }
                    },
                    Base::Sin(arg) | Base::Cos(arg) => {
                        let squared = matches!(arg, Arg::CoordSquared(_));
                        let (s, co) = value.exact_trig(squared).ok_or_else(|| {
                            Error::NonExactSubstitution(format!("trig value at x{i} not in {{0, ±1}}"))
                        })?;
                        let v = if matches!(a.base, Base::Sin(_)) { s } else { co };
                        if v == 0 && a.exp < 0 {
                            return Err(Error::DomainPole(format!("{:?} vanishes", a.base)));
                        }
                        rational_pow(&q(v), a.exp)
                    }
                    _ => {
                        return Err(Error::NonExactSubstitution(format!(
                            "x{i} occurs inside a norm or profile"
                        )))
                    }
                };
                c *= factor;
            }
            raw.push((c, atoms));
        }
        Ok(Self::from_raw(raw))
    }

    /// Renumber coordinates; `map[i]` is the new index of old coordinate `i`.
    /// Fails if a dropped coordinate still occurs.
    pub fn reindex(&self, map: &[Option<usize>]) -> Result<ScalarExpr> {
        let ri = |j: u16| -> Result<u16> {
            map.get(j as usize)
                .copied()
                .flatten()
                .map(|n| n as u16)
                .ok_or_else(|| Error::BadAssignment(format!("coordinate x{j} is not mapped")))
        };
        let rmask = |m: u32| -> Result<u32> {
            let mut out = 0;
            for j in 0..32u16 {
                if m & (1 << j) != 0 {
                    out |= 1 << ri(j)?;
                }
            }
            Ok(out)
        };
        let rarg = |a: Arg| -> Result<Arg> {
            Ok(match a {
                Arg::Coord(j) => Arg::Coord(ri(j)?),
                Arg::CoordSquared(j) => Arg::CoordSquared(ri(j)?),
                Arg::Norm(m) => Arg::Norm(rmask(m)?),
            })
        };
        let mut raw = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut atoms = Vec::with_capacity(m.len());
            for a in m {
                let base = match a.base {
                    Base::Coord(j) => Base::Coord(ri(j)?),
                    Base::Norm(mk) => Base::Norm(rmask(mk)?),
                    Base::Sin(x) => Base::Sin(rarg(x)?),
                    Base::Cos(x) => Base::Cos(rarg(x)?),
                    Base::Profile { id, order, arg } => Base::Profile { id, order, arg: rarg(arg)? },
                    Base::Param(p) => Base::Param(p),
                };
                atoms.push(Atom::new(base, a.exp));
            }
            raw.push((c.clone(), atoms));
        }
        Ok(Self::from_raw(raw))
    }

    /// Replace coordinates by expressions in another chart. Coordinates that
    /// occur inside trig, norm or profile atoms must map to a single target
    /// coordinate; bare coordinates may map to any expression (negative
    /// powers need a single-term image).
    pub fn compose(&self, images: &[ScalarExpr]) -> Result<ScalarExpr> {
        let rename: Vec<Option<usize>> = images.iter().map(pure_coordinate).collect();
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut acc = ScalarExpr::constant(c.clone());
            let mut others = Vec::new();
            for a in m {
                match a.base {
                    Base::Coord(j) => {
                        let img = images.get(j as usize).ok_or_else(|| {
                            Error::BadAssignment(format!("no image for x{j}"))
                        })?;
                        let f = if a.exp >= 0 {
                            img.pow(a.exp as u32)
                        } else {
                            img.inverse()?.pow((-a.exp) as u32)
                        };
                        acc = &acc * &f;
                    }
                    Base::Param(_) => others.push(*a),
                    _ => others.push(*a),
                }
            }
            let rest = ScalarExpr::term(q(1), others);
            let rest = rest.reindex(&rename).map_err(|_| {
                Error::NonExactSubstitution("non-polynomial occurrence of a substituted coordinate".into())
            })?;
            out.push(&acc * &rest);
        }
        Ok(Self::sum(out.iter()))
    }

    pub fn substitute_param(&self, id: u16, value: &Q) -> ScalarExpr {
        let mut raw = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut atoms = Vec::with_capacity(m.len());
            for a in m {
                if a.base == Base::Param(id) {
                    if value.is_zero() && a.exp < 0 {
                        c = Q::zero();
                    } else {
                        c *= rational_pow(value, a.exp);
                    }
                } else {
                    atoms.push(*a);
                }
            }
            raw.push((c, atoms));
        }
        Self::from_raw(raw)
    }

    /// Replace the opaque profile `id` by a constant (derivatives become 0).
    pub fn substitute_profile(&self, id: u16, value: &Q) -> ScalarExpr {
        let mut raw = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut atoms = Vec::with_capacity(m.len());
            for a in m {
                match a.base {
                    Base::Profile { id: pid, order, .. } if pid == id => {
                        if order > 0 || (value.is_zero() && a.exp > 0) {
                            c = Q::zero();
                        } else {
                            c *= rational_pow(value, a.exp);
                        }
                    }
                    _ => atoms.push(*a),
                }
            }
            raw.push((c, atoms));
        }
        Self::from_raw(raw)
    }
}

impl ScalarExpr {
    /// Replace the profile `id` and its derivatives by expressions:
    /// `images[k]` stands for the k-th derivative at the atom's argument.
    pub fn replace_profile(&self, id: u16, images: &[ScalarExpr]) -> Result<ScalarExpr> {
        let mut out = ScalarExpr::zero();
        for (m, c) in &self.terms {
            let mut term = ScalarExpr::constant(c.clone());
            let mut rest = Vec::with_capacity(m.len());
            for a in m {
                match a.base {
                    Base::Profile { id: pid, order, .. } if pid == id => {
                        let img = images.get(order as usize).ok_or_else(|| {
                            Error::UnboundSymbol(format!("derivative {order} of profile {id}"))
                        })?;
                        let f = if a.exp < 0 { img.inverse()?.pow(a.exp.unsigned_abs()) } else { img.pow(a.exp as u32) };
                        term = &term * &f;
                    }
                    _ => rest.push(*a),
                }
            }
            term = &term * &ScalarExpr::from_raw(vec![(q(1), rest)]);
            out = &out + &term;
        }
        Ok(out)
    }
}

fn pure_coordinate(e: &ScalarExpr) -> Option<usize> {
    match e.terms.as_slice() {
        [(m, c)] if c.is_one() && m.len() == 1 && m[0].exp == 1 => match m[0].base {
            Base::Coord(k) => Some(k as usize),
            _ => None,
        },
        _ => None,
    }
}

fn rational_pow(v: &Q, e: i32) -> Q {
    let mut out = q(1);
    for _ in 0..e.unsigned_abs() {
        out *= v;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// ∂ᵢ of a base as (coefficient, extra atoms) terms.
fn base_derivative(base: Base, i: u16) -> Vec<(Q, Vec<Atom>)> {
    let arg_d = |a: Arg| -> Vec<(Q, Vec<Atom>)> {
        match a {
            Arg::Coord(j) if j == i => vec![(q(1), vec![])],
            Arg::CoordSquared(j) if j == i => vec![(q(2), vec![Atom::new(Base::Coord(i), 1)])],
            Arg::Norm(m) if m & (1 << i) != 0 => {
                vec![(q(1), vec![Atom::new(Base::Coord(i), 1), Atom::new(Base::Norm(m), -1)])]
            }
            _ => vec![],
        }
    };
    let chain = |outer: Atom, sign: i64, a: Arg| -> Vec<(Q, Vec<Atom>)> {
        arg_d(a)
            .into_iter()
            .map(|(c, mut atoms)| {
                atoms.push(outer);
                (c * q(sign), atoms)
            })
            .collect()
    };
    match base {
        Base::Coord(j) if j == i => vec![(q(1), vec![])],
        Base::Coord(_) | Base::Param(_) => vec![],
        Base::Norm(m) => arg_d(Arg::Norm(m)),
        Base::Sin(a) => chain(Atom::new(Base::Cos(a), 1), 1, a),
        Base::Cos(a) => chain(Atom::new(Base::Sin(a), 1), -1, a),
        Base::Profile { id, order, arg } => {
            chain(Atom::new(Base::Profile { id, order: order + 1, arg }, 1), 1, arg)
        }
    }
}

impl Add for &ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::sum([self, rhs])
    }
}

impl Sub for &ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        let neg = -rhs;
        ScalarExpr::sum([self, &neg])
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return ScalarExpr::zero();
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut atoms = ma.clone();
                atoms.extend_from_slice(mb);
                raw.push((ca * cb, atoms));
            }
        }
        ScalarExpr::from_raw(raw)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for ScalarExpr {
            type Output = ScalarExpr;
            fn $f(self, rhs: ScalarExpr) -> ScalarExpr {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $f(self, rhs: &ScalarExpr) -> ScalarExpr {
                (&self).$f(rhs)
            }
        }
        impl $tr<ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $f(self, rhs: ScalarExpr) -> ScalarExpr {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        -&self
    }
}

impl From<i64> for ScalarExpr {
    fn from(n: i64) -> ScalarExpr {
        ScalarExpr::int(n)
    }
}

impl From<Q> for ScalarExpr {
    fn from(c: Q) -> ScalarExpr {
        ScalarExpr::constant(c)
    }
}

/// Sign of a rational.
pub fn q_sign(v: &Q) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Check that kinds are respected by a coordinate value.
pub fn check_value(chart: &Chart, i: usize, v: &Value) -> Result<()> {
    let x = v.to_f64();
    let kind = chart.kind(i);
    let ok = match kind {
        CoordKind::Radial => x >= 0.0,
        _ => kind.contains(x),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::BadAssignment(format!("{} = {x} outside {:?}", chart.name(i), kind)))
    }
}
