//! Exact angle and position arithmetic over the two rotation generators
//! π/3 and α.
//!
//! Every angle met in a triangle/shield tiling is an integer combination
//! `a·π/3 + b·α`, and every vertex is a sum of unit vectors pointing in such
//! directions. Keeping the two integers (and, for points, a sparse map of
//! Eisenstein-integer coefficients per power of `e^{iα}`) makes vertex sums and
//! polygon closure exact when α is left symbolic.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::AlphaError;

/// Global numeric tolerance, in radians or unit lengths.
pub const TOLERANCE: f64 = 1e-9;

/// The value used to evaluate a symbolic α numerically (overlap tests,
/// rendering, distances).
pub const REFERENCE_ALPHA_DEG: f64 = 99.0;

const EXCEPTIONAL: [(i64, i64); 4] = [(2, 5), (5, 12), (4, 9), (5, 9)];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaKind {
    /// α is a free symbol; only relations valid for every α hold.
    Generic,
    /// α = s·π/t with gcd(s, t) = 1 and t > 0.
    Rational { s: i64, t: i64 },
    /// α given numerically, in degrees.
    Degrees(f64),
}

/// The shield angle parameter, validated and normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaSpec {
    kind: AlphaKind,
    right_shield: bool,
    exceptional: bool,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl AlphaSpec {
    pub fn generic() -> Self {
        AlphaSpec { kind: AlphaKind::Generic, right_shield: false, exceptional: false }
    }

    /// α = s·π/t, normalized.
    pub fn rational(s: i64, t: i64) -> Result<Self, AlphaError> {
        if t == 0 {
            return Err(AlphaError::ZeroDenominator);
        }
        let g = gcd(s, t).max(1);
        let (mut s, mut t) = (s / g, t / g);
        if t < 0 {
            s = -s;
            t = -t;
        }
        // π/3 < sπ/t < 2π/3  <=>  t < 3s < 2t
        if !(t < 3 * s && 3 * s < 2 * t) {
            return Err(AlphaError::OutOfRange(format!("{s}π/{t}")));
        }
        let right_shield = (s, t) == (1, 2);
        let exceptional = EXCEPTIONAL.contains(&(s, t));
        Ok(AlphaSpec { kind: AlphaKind::Rational { s, t }, right_shield, exceptional })
    }

    /// α given in degrees. Values within 1e-9 rad of π/2 or of an exceptional
    /// value are refused: the caller must use the rational form.
    pub fn degrees(deg: f64) -> Result<Self, AlphaError> {
        if !deg.is_finite() {
            return Err(AlphaError::OutOfRange(format!("{deg}°")));
        }
        let rad = deg.to_radians();
        if rad <= PI / 3.0 || rad >= 2.0 * PI / 3.0 {
            return Err(AlphaError::OutOfRange(format!("{deg}°")));
        }
        for (s, t) in std::iter::once((1, 2)).chain(EXCEPTIONAL) {
            let special = s as f64 * PI / t as f64;
            if (rad - special).abs() <= TOLERANCE {
                return Err(AlphaError::AmbiguousDecimal { deg, s, t });
            }
        }
        Ok(AlphaSpec { kind: AlphaKind::Degrees(deg), right_shield: false, exceptional: false })
    }

    /// Construct from a kind, applying the same normalization as the
    /// dedicated constructors.
    pub fn make(kind: AlphaKind) -> Result<Self, AlphaError> {
        match kind {
            AlphaKind::Generic => Ok(Self::generic()),
            AlphaKind::Rational { s, t } => Self::rational(s, t),
            AlphaKind::Degrees(d) => Self::degrees(d),
        }
    }

    pub fn right() -> Self {
        Self::rational(1, 2).expect("π/2 is admissible")
    }

    pub fn kind(&self) -> AlphaKind {
        self.kind
    }

    pub fn is_generic(&self) -> bool {
        matches!(self.kind, AlphaKind::Generic)
    }

    pub fn is_right_shield(&self) -> bool {
        self.right_shield
    }

    pub fn is_exceptional(&self) -> bool {
        self.exceptional
    }

    /// Numeric value in radians, if α is not symbolic.
    pub fn radians(&self) -> Option<f64> {
        match self.kind {
            AlphaKind::Generic => None,
            AlphaKind::Rational { s, t } => Some(s as f64 * PI / t as f64),
            AlphaKind::Degrees(d) => Some(d.to_radians()),
        }
    }

    /// Numeric value, falling back to the reference angle for symbolic α.
    pub fn eval_radians(&self) -> f64 {
        self.radians().unwrap_or_else(|| REFERENCE_ALPHA_DEG.to_radians())
    }

    /// Is `x` exactly zero under this α?
    pub fn angle_is_zero(&self, x: SymbolicAngle) -> bool {
        match self.kind {
            AlphaKind::Generic => x.a == 0 && x.b == 0,
            AlphaKind::Rational { s, t } => t * x.a + 3 * s * x.b == 0,
            AlphaKind::Degrees(_) => x.eval(self.eval_radians()).abs() < TOLERANCE,
        }
    }

    pub fn angles_equal(&self, x: SymbolicAngle, y: SymbolicAngle) -> bool {
        self.angle_is_zero(x - y)
    }

    /// Compare two angles by value. Symbolic α is ordered at the reference
    /// value; exact equality still wins.
    pub fn compare_angles(&self, x: SymbolicAngle, y: SymbolicAngle) -> Ordering {
        if self.angles_equal(x, y) {
            return Ordering::Equal;
        }
        match self.kind {
            AlphaKind::Rational { s, t } => (t * x.a + 3 * s * x.b).cmp(&(t * y.a + 3 * s * y.b)),
            _ => {
                let al = self.eval_radians();
                x.eval(al).total_cmp(&y.eval(al))
            }
        }
    }

    /// Directions agree modulo 2π.
    pub fn directions_equal(&self, x: Direction, y: Direction) -> bool {
        let d = x.angle() - y.angle();
        match self.kind {
            AlphaKind::Generic => d.a.rem_euclid(6) == 0 && d.b == 0,
            AlphaKind::Rational { s, t } => (t * d.a + 3 * s * d.b).rem_euclid(6 * t) == 0,
            AlphaKind::Degrees(_) => {
                let v = d.eval(self.eval_radians()).rem_euclid(2.0 * PI);
                v < TOLERANCE || 2.0 * PI - v < TOLERANCE
            }
        }
    }

    /// Counter-clockwise angle from `from` to `to`, reduced into `[0, 2π)`.
    /// For symbolic α the `b` part is kept and only whole turns of the π/3
    /// part are removed, using the reference value to pick the branch.
    pub fn ccw_between(&self, from: Direction, to: Direction) -> SymbolicAngle {
        let mut d = to.angle() - from.angle();
        if self.angle_is_zero(d) || self.directions_equal(from, to) {
            return SymbolicAngle::ZERO;
        }
        while self.compare_angles(d, SymbolicAngle::ZERO) == Ordering::Less {
            d = d + SymbolicAngle::FULL;
        }
        while self.compare_angles(d, SymbolicAngle::FULL) != Ordering::Less {
            d = d - SymbolicAngle::FULL;
        }
        d
    }
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AlphaKind::Generic => write!(f, "generic"),
            AlphaKind::Rational { s, t } => {
                if s == 1 {
                    write!(f, "π/{t}")
                } else {
                    write!(f, "{s}π/{t}")
                }
            }
            AlphaKind::Degrees(d) => write!(f, "{d}°"),
        }
    }
}

/// Parses `generic`, `s/t` (meaning s·π/t) or a decimal number of degrees
/// (an optional `deg` suffix is accepted).
impl FromStr for AlphaSpec {
    type Err = AlphaError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("generic") {
            return Ok(Self::generic());
        }
        if let Some((s, t)) = text.split_once('/') {
            let s = s.trim().trim_end_matches("pi").trim_end_matches('π');
            let s: i64 = if s.is_empty() { 1 } else { s.parse().map_err(|_| AlphaError::Parse(text.into()))? };
            let t: i64 = t.trim().parse().map_err(|_| AlphaError::Parse(text.into()))?;
            return Self::rational(s, t);
        }
        let deg = text.trim_end_matches("deg").trim_end_matches('°');
        let deg: f64 = deg.parse().map_err(|_| AlphaError::Parse(text.into()))?;
        Self::degrees(deg)
    }
}

/// An angle `a·π/3 + b·α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymbolicAngle {
    pub a: i64,
    pub b: i64,
}

impl SymbolicAngle {
    pub const ZERO: Self = Self::new(0, 0);
    /// Triangle corner, π/3.
    pub const THIRD: Self = Self::new(1, 0);
    /// Shield corner α.
    pub const ALPHA: Self = Self::new(0, 1);
    /// Shield corner β = 4π/3 − α.
    pub const BETA: Self = Self::new(4, -1);
    pub const HALF: Self = Self::new(3, 0);
    pub const FULL: Self = Self::new(6, 0);

    pub const fn new(a: i64, b: i64) -> Self {
        SymbolicAngle { a, b }
    }

    pub fn eval(self, alpha_rad: f64) -> f64 {
        self.a as f64 * PI / 3.0 + self.b as f64 * alpha_rad
    }

    /// Numeric value; fails for symbolic α.
    pub fn radians(self, alpha: &AlphaSpec) -> Result<f64, crate::error::AngleError> {
        alpha.radians().map(|al| self.eval(al)).ok_or(crate::error::AngleError::NoNumericValue)
    }
}

impl Add for SymbolicAngle {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for SymbolicAngle {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for SymbolicAngle {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul<i64> for SymbolicAngle {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        Self::new(self.a * k, self.b * k)
    }
}

impl std::iter::Sum for SymbolicAngle {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |x, y| x + y)
    }
}

impl fmt::Display for SymbolicAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·π/3 + {}·α", self.a, self.b)
    }
}

/// Numeric value of an angle; `NoNumericValue` for symbolic α.
pub fn angle_radians(x: SymbolicAngle, alpha: &AlphaSpec) -> Result<f64, crate::error::AngleError> {
    x.radians(alpha)
}

/// Does the multiset of angles add up to exactly one full turn?
pub fn full_turn_check<'a, I>(angles: I, alpha: &AlphaSpec) -> bool
where
    I: IntoIterator<Item = &'a SymbolicAngle>,
{
    let total: SymbolicAngle = angles.into_iter().copied().sum();
    alpha.angles_equal(total, SymbolicAngle::FULL)
}

/// An edge direction `a·π/3 + b·α` modulo 2π, with `a` kept in `[0, 6)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Direction {
    a: i64,
    b: i64,
}

impl Direction {
    pub const EAST: Self = Direction { a: 0, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        Direction { a: a.rem_euclid(6), b }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn angle(&self) -> SymbolicAngle {
        SymbolicAngle::new(self.a, self.b)
    }

    pub fn rotated(self, by: SymbolicAngle) -> Self {
        Self::new(self.a + by.a, self.b + by.b)
    }

    pub fn opposite(self) -> Self {
        self.rotated(SymbolicAngle::HALF)
    }

    /// Mirror image under complex conjugation.
    pub fn conj(self) -> Self {
        Self::new(-self.a, -self.b)
    }

    /// Value in `[0, 2π)`.
    pub fn radians(&self, alpha_rad: f64) -> f64 {
        self.angle().eval(alpha_rad).rem_euclid(2.0 * PI)
    }

    pub fn unit(&self, alpha_rad: f64) -> (f64, f64) {
        let t = self.angle().eval(alpha_rad);
        (t.cos(), t.sin())
    }
}

impl From<SymbolicAngle> for Direction {
    fn from(x: SymbolicAngle) -> Self {
        Direction::new(x.a, x.b)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

// ω^k in the {1, ω} basis, using ω² = ω − 1.
const SIXTH_ROOTS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

fn times_omega((u, v): (i64, i64)) -> (i64, i64) {
    (-v, u + v)
}

fn times_omega_pow((u, v): (i64, i64), k: i64) -> (i64, i64) {
    (0..k.rem_euclid(6)).fold((u, v), |acc, _| times_omega(acc))
}

/// One term `(u + v·ω)·e^{ibα}` of an [`ExactPoint`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub b: i64,
    pub u: i64,
    pub v: i64,
}

/// A planar point `Σ_b (u_b + v_b·ω)·e^{ibα}` with ω = e^{iπ/3}, stored
/// sparsely and sorted by `b`. Zero terms are never stored, so for symbolic α
/// structural equality is point equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactPoint {
    terms: Vec<Term>,
}

impl ExactPoint {
    pub fn origin() -> Self {
        ExactPoint { terms: Vec::new() }
    }

    pub fn is_origin(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Build from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> Self {
        let mut p = Self::origin();
        for t in terms {
            p.add_term(t.b, t.u, t.v);
        }
        p
    }

    fn add_term(&mut self, b: i64, u: i64, v: i64) {
        match self.terms.binary_search_by_key(&b, |t| t.b) {
            Ok(i) => {
                let t = &mut self.terms[i];
                t.u += u;
                t.v += v;
                if t.u == 0 && t.v == 0 {
                    self.terms.remove(i);
                }
            }
            Err(i) => {
                if u != 0 || v != 0 {
                    self.terms.insert(i, Term { b, u, v });
                }
            }
        }
    }

    /// The point reached by one unit step in direction `d`.
    pub fn step(&self, d: Direction) -> Self {
        let mut p = self.clone();
        p.step_mut(d);
        p
    }

    pub fn step_mut(&mut self, d: Direction) {
        let (u, v) = SIXTH_ROOTS[d.a as usize];
        self.add_term(d.b, u, v);
    }

    /// Rotation about the origin by the angle of `d`.
    pub fn rotated(&self, d: Direction) -> Self {
        ExactPoint {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let (u, v) = times_omega_pow((t.u, t.v), d.a);
                    Term { b: t.b + d.b, u, v }
                })
                .collect(),
        }
    }

    /// Complex conjugate (reflection in the real axis).
    pub fn conj(&self) -> Self {
        let mut terms: Vec<Term> =
            self.terms.iter().map(|t| Term { b: -t.b, u: t.u + t.v, v: -t.v }).collect();
        terms.reverse();
        ExactPoint { terms }
    }

    pub fn to_xy(&self, alpha_rad: f64) -> (f64, f64) {
        let (wx, wy) = (0.5, 3f64.sqrt() / 2.0);
        let mut x = 0.0;
        let mut y = 0.0;
        for t in &self.terms {
            let (re, im) = (t.u as f64 + t.v as f64 * wx, t.v as f64 * wy);
            let (s, c) = ((t.b as f64) * alpha_rad).sin_cos();
            x += re * c - im * s;
            y += re * s + im * c;
        }
        (x, y)
    }
}

impl Add for &ExactPoint {
    type Output = ExactPoint;
    fn add(self, o: &ExactPoint) -> ExactPoint {
        let mut p = self.clone();
        p += o;
        p
    }
}

impl AddAssign<&ExactPoint> for ExactPoint {
    fn add_assign(&mut self, o: &ExactPoint) {
        for t in &o.terms {
            self.add_term(t.b, t.u, t.v);
        }
    }
}

impl Neg for &ExactPoint {
    type Output = ExactPoint;
    fn neg(self) -> ExactPoint {
        ExactPoint { terms: self.terms.iter().map(|t| Term { b: t.b, u: -t.u, v: -t.v }).collect() }
    }
}

impl Sub for &ExactPoint {
    type Output = ExactPoint;
    fn sub(self, o: &ExactPoint) -> ExactPoint {
        self + &(-o)
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0:0,0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{}:{},{}", t.b, t.u, t.v)?;
        }
        Ok(())
    }
}

impl FromStr for ExactPoint {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut terms = Vec::new();
        for part in text.split(';').filter(|s| !s.trim().is_empty()) {
            let (b, uv) = part.split_once(':').ok_or_else(|| format!("bad term `{part}`"))?;
            let (u, v) = uv.split_once(',').ok_or_else(|| format!("bad term `{part}`"))?;
            let parse = |s: &str| s.trim().parse::<i64>().map_err(|e| format!("bad term `{part}`: {e}"));
            terms.push(Term { b: parse(b)?, u: parse(u)?, v: parse(v)? });
        }
        Ok(Self::from_terms(terms))
    }
}

/// Exact addition of the unit vector pointing in direction `d`.
pub fn unit_step(p: &ExactPoint, d: Direction) -> ExactPoint {
    p.step(d)
}
