//! Finite windows of the known tiling families.
//!
//! Everything is built from one reference shield `s`, anchored at the origin
//! with heading 0, whose corners are `s0..s5`. Its long axis `T = s3 − s0`
//! joins two α corners and is the period of a shield line.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::angle::{AlphaSpec, Direction, ExactPoint, SymbolicAngle};
use crate::enumerate::{dodecagon, dodecagon_fillings, Filling};
use crate::error::GenerateError;
use crate::geom::{self, Xy};
use crate::patch::{Anchor, Patch, Placement, TileKind};

fn reference_shield() -> Vec<ExactPoint> {
    let pl = Placement::shield(ExactPoint::origin(), Direction::EAST);
    pl.corners(1.0).into_iter().map(|c| c.pos.exact.unwrap()).collect()
}

fn unit(d: SymbolicAngle) -> ExactPoint {
    ExactPoint::origin().step(Direction::from(d))
}

/// Point reflection `p ↦ m − p` of a placement.
fn reflected(pl: &Placement, m: &ExactPoint) -> Placement {
    let Anchor::Exact(p) = &pl.anchor else { unreachable!("generators are exact") };
    Placement { kind: pl.kind, anchor: Anchor::Exact(m - p), heading: pl.heading.opposite() }
}

/// Add the triangle lying outside every shield edge that is not shared with
/// another shield.
fn fill_triangles(patch: &mut Patch, shields: &[Placement]) {
    let al = patch.eval_radians();
    for s in shields {
        let cs = s.corners(al);
        for i in 0..cs.len() {
            let (a, b) = (&cs[i], &cs[(i + 1) % cs.len()]);
            let (Some(va), Some(vb)) = (patch.find_vertex(&a.pos), patch.find_vertex(&b.pos)) else { continue };
            if patch.edge_tiles(va, vb).len() >= 2 {
                continue;
            }
            let tri = Placement::triangle(b.pos.exact.clone().unwrap(), a.start.opposite());
            patch.add_tile(tri).expect("outer triangle of a generated tiling fits");
        }
    }
}

/// One letter per shield line, bottom to top.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientationWord(Vec<bool>);

impl OrientationWord {
    pub fn new(letters: Vec<bool>) -> Option<Self> {
        (!letters.is_empty()).then_some(OrientationWord(letters))
    }

    pub fn letters(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        OrientationWord(self.0.iter().rev().copied().collect())
    }

    pub fn flipped(&self) -> Self {
        OrientationWord(self.0.iter().map(|x| !x).collect())
    }

    /// Least of the word, its reversal, its flip and both, with `+` < `-`.
    pub fn normalized(&self) -> Self {
        let r = self.reversed();
        [self.clone(), r.flipped(), self.flipped(), r].into_iter().min_by_key(|w| w.to_string()).unwrap()
    }
}

impl fmt::Display for OrientationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|&x| f.write_str(if x { "+" } else { "-" }))
    }
}

impl FromStr for OrientationWord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .chars()
            .map(|c| match c {
                '+' | 'p' | 'P' => Ok(true),
                '-' | '−' | 'm' | 'M' => Ok(false),
                _ => Err(format!("bad orientation letter `{c}` (use + or -)")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        OrientationWord::new(letters).ok_or_else(|| "empty orientation word".to_string())
    }
}

/// Stacked shield lines, `2·extent + 1` shields per line.
pub fn gen_line_tiling(word: &OrientationWord, extent: usize, alpha: AlphaSpec) -> Patch {
    let s = reference_shield();
    let period = &s[3] - &s[0];
    // offsets between consecutive lines: same orientation, + then −, − then +
    let same = &(&s[5] - &s[2]) - &period;
    let plus_minus = &s[4] + &s[5];
    let minus_plus = -&(&s[1] + &s[2]);

    let mut patch = Patch::new(alpha);
    let al = patch.eval_radians();
    let (px, py) = period.to_xy(al);
    let plen2 = px * px + py * py;
    let e = extent as i64;
    let mut offset = ExactPoint::origin();
    let mut shields = Vec::new();
    for (j, &up) in word.letters().iter().enumerate() {
        if j > 0 {
            let step = match (word.letters()[j - 1], up) {
                (true, false) => &plus_minus,
                (false, true) => &minus_plus,
                _ => &same,
            };
            offset = &offset + step;
            // slide back along the line so the stack stays upright
            let (ox, oy) = offset.to_xy(al);
            let along = ((ox * px + oy * py) / plen2).round() as i64;
            offset = &offset - &times(&period, along);
        }
        for i in -e..=e {
            let base = Placement::shield(times(&period, i), Direction::EAST);
            let pl = if up { base } else { reflected(&base, &ExactPoint::origin()) };
            let pl = pl.translated(&offset);
            patch.add_tile(pl.clone()).expect("shield lines fit");
            shields.push(pl);
        }
    }
    let al = patch.eval_radians();
    for pl in &shields {
        let cs = pl.corners(al);
        // the two triangles at each end of the shield
        for i in [0, 2, 3, 5] {
            let (a, b) = (&cs[i], &cs[(i + 1) % 6]);
            let (va, vb) = (patch.find_vertex(&a.pos).unwrap(), patch.find_vertex(&b.pos).unwrap());
            if patch.edge_tiles(va, vb).len() < 2 {
                patch.add_tile(Placement::triangle(b.pos.exact.clone().unwrap(), a.start.opposite())).expect("junction triangles fit");
            }
        }
    }
    patch
}

fn times(p: &ExactPoint, k: i64) -> ExactPoint {
    let mut out = ExactPoint::origin();
    let step = if k >= 0 { p.clone() } else { -p };
    for _ in 0..k.unsigned_abs() {
        out = &out + &step;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleOrder {
    Finite(u32),
    Infinite,
}

impl fmt::Display for TriangleOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangleOrder::Finite(k) => write!(f, "{k}"),
            TriangleOrder::Infinite => write!(f, "∞"),
        }
    }
}

impl FromStr for TriangleOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "infinite" | "∞" => Ok(TriangleOrder::Infinite),
            _ => s.parse().map(TriangleOrder::Finite).map_err(|_| format!("bad order `{s}` (integer or `inf`)")),
        }
    }
}

/// Geometry of the order-k shield triangle tiling: the shields of one
/// fundamental domain, its two periods and the hex it is centred on.
#[derive(Debug, Clone)]
pub struct TriangleLattice {
    pub order: u32,
    pub shields: Vec<Placement>,
    pub periods: [ExactPoint; 2],
    pub hex: ExactPoint,
}

impl TriangleLattice {
    pub fn new(k: u32) -> Self {
        if k == 0 {
            let p1 = unit(SymbolicAngle::ZERO);
            let p2 = unit(SymbolicAngle::THIRD);
            return TriangleLattice { order: 0, shields: Vec::new(), periods: [p1, p2], hex: ExactPoint::origin() };
        }
        let s = reference_shield();
        let t = &s[3] - &s[0];
        let q = &t + &(&s[5] - &s[2]);
        let k1 = k as i64 - 1;
        // three hexes around the cluster, at the apexes of its corner triangles
        let h1 = &s[0] + &unit(SymbolicAngle::new(5, 0));
        let h2 = &(&s[2] + &times(&t, k1)) + &unit(SymbolicAngle::new(1, 0));
        let h3 = &(&s[4] + &times(&q, k1)) + &unit(SymbolicAngle::new(3, 0));
        let mut shields = Vec::new();
        for i in 0..k as i64 {
            for j in 0..k as i64 - i {
                shields.push(Placement::shield(&times(&t, i) + &times(&q, j), Direction::EAST));
            }
        }
        let m = &h1 + &h2;
        let down: Vec<Placement> = shields.iter().map(|pl| reflected(pl, &m)).collect();
        shields.extend(down);
        let periods = [&h2 - &h1, &h3 - &h1];
        TriangleLattice { order: k, shields, periods, hex: h1 }
    }

    /// Every tile whose centroid lies within `radius` of the designated hex.
    pub fn window(&self, radius: f64, alpha: AlphaSpec) -> Patch {
        let mut patch = Patch::new(alpha);
        let al = patch.eval_radians();
        let c = self.hex.to_xy(al);
        let near = |pl: &Placement| {
            let xy: Vec<Xy> = pl.corners(al).iter().map(|c| c.pos.xy).collect();
            geom::dist(geom::centroid(&xy), c) <= radius
        };
        let (p1, p2) = (self.periods[0].to_xy(al), self.periods[1].to_xy(al));
        let short = geom::dist(p1, (0.0, 0.0)).min(geom::dist(p2, (0.0, 0.0)));
        let n = ((radius + 4.0) / short).ceil() as i64 + 1;
        let mut all = Vec::new();
        if self.order == 0 {
            for x in -n..=n {
                for y in -n..=n {
                    let p = &(&self.hex + &times(&self.periods[0], x)) + &times(&self.periods[1], y);
                    all.push(Placement::triangle(p.clone(), Direction::EAST));
                    all.push(Placement::triangle(p, Direction::new(1, 0)));
                }
            }
            all.retain(near);
            for pl in all {
                patch.add_tile(pl).expect("triangle lattice fits");
            }
            return patch;
        }
        let mut shields = Vec::new();
        for x in -n..=n {
            for y in -n..=n {
                let shift = &times(&self.periods[0], x) + &times(&self.periods[1], y);
                for pl in &self.shields {
                    let moved = pl.translated(&shift);
                    // keep a margin of shields so boundary triangles are well defined
                    let xy: Vec<Xy> = moved.corners(al).iter().map(|c| c.pos.xy).collect();
                    if geom::dist(geom::centroid(&xy), c) <= radius + 3.0 {
                        shields.push(moved);
                    }
                }
            }
        }
        let mut full = Patch::new(alpha);
        for pl in &shields {
            full.add_tile(pl.clone()).expect("shield lattice fits");
        }
        fill_triangles(&mut full, &shields);
        for t in full.tiles() {
            if near(&t.placement) {
                patch.add_tile(t.placement.clone()).expect("window of a valid tiling");
            }
        }
        patch
    }

    /// Shields and triangles in one fundamental domain.
    pub fn period_census(&self, alpha: AlphaSpec) -> (usize, usize) {
        if self.order == 0 {
            return (0, 2);
        }
        let big = self.window(3.0 * geom::dist(self.periods[0].to_xy(alpha.eval_radians()), (0.0, 0.0)) + 6.0, alpha);
        let al = big.eval_radians();
        let o = self.hex.to_xy(al);
        let (p1, p2) = (self.periods[0].to_xy(al), self.periods[1].to_xy(al));
        let det = p1.0 * p2.1 - p1.1 * p2.0;
        let mut shields = 0;
        let mut triangles = 0;
        for t in big.tiles() {
            let (x, y) = (t.centroid.0 - o.0, t.centroid.1 - o.1);
            let a = (x * p2.1 - y * p2.0) / det;
            let b = (p1.0 * y - p1.1 * x) / det;
            if (0.0..1.0).contains(&a) && (0.0..1.0).contains(&b) {
                match t.placement.kind {
                    TileKind::Shield => shields += 1,
                    TileKind::Triangle => triangles += 1,
                }
            }
        }
        (shields, triangles)
    }
}

/// A window of radius `extent` about a hex of the order-k tiling; the
/// infinite order uses order `2·extent + 1`, whose second hex lies outside.
pub fn gen_triangle_tiling(order: TriangleOrder, extent: usize, alpha: AlphaSpec) -> Patch {
    let k = match order {
        TriangleOrder::Finite(k) => k,
        TriangleOrder::Infinite => 2 * extent as u32 + 1,
    };
    TriangleLattice::new(k).window(extent as f64 + 1.5, alpha)
}

/// Which filling goes into each dodecagon of the packing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DodecagonChoice {
    pub cells: BTreeMap<(i64, i64), usize>,
    pub default: Option<usize>,
}

impl DodecagonChoice {
    pub fn constant(index: usize) -> Self {
        DodecagonChoice { cells: BTreeMap::new(), default: Some(index) }
    }

    pub fn get(&self, cell: (i64, i64)) -> Option<usize> {
        self.cells.get(&cell).copied().or(self.default)
    }
}

/// The periods of the dodecagon packing: translations to the neighbours
/// across edges 3 and 5.
pub fn dodecagon_periods() -> [ExactPoint; 2] {
    let c = dodecagon();
    let v = c.corners();
    [&v[4] - &v[9], &v[6] - &v[11]]
}

/// Right-shield tiling: dodecagons on a triangular grid, each filled per
/// `choice`, triangles in the holes. Covers the disk of radius `extent`
/// about corner 0 of cell (0, 0).
pub fn gen_dodecagon_tiling(choice: &DodecagonChoice, extent: usize) -> Result<Patch, GenerateError> {
    let fillings = dodecagon_fillings();
    gen_dodecagon_tiling_with(&fillings, choice, extent)
}

pub fn gen_dodecagon_tiling_with(
    fillings: &[Filling],
    choice: &DodecagonChoice,
    extent: usize,
) -> Result<Patch, GenerateError> {
    let alpha = AlphaSpec::right();
    let shape = dodecagon();
    let [p1, p2] = dodecagon_periods();
    let mut patch = Patch::new(alpha);
    let al = patch.eval_radians();
    let mid = shape.center();
    let reach = extent as f64 + 6.0;
    let n = (reach / 3.7).ceil() as i64 + 2;
    let mut cells = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            let shift = &times(&p1, i) + &times(&p2, j);
            let (x, y) = shift.to_xy(al);
            if geom::dist((x + mid.0, y + mid.1), (0.0, 0.0)) <= reach {
                cells.push(((i, j), shift));
            }
        }
    }
    for ((i, j), shift) in &cells {
        let index = choice.get((*i, *j)).ok_or(GenerateError::MissingChoice(*i, *j))?;
        let filling = fillings.get(index).ok_or(GenerateError::BadChoice { i: *i, j: *j, index })?;
        for pl in filling.patch.placements() {
            patch.add_tile(pl.translated(shift)).expect("dodecagon cells tile the plane");
        }
    }
    // the two holes owned by each cell sit outside its edges 4 and 6
    let corners = shape.corners();
    let step = SymbolicAngle::new(-1, 1);
    for (_, shift) in &cells {
        for e in [4, 6] {
            let b = &corners[(e + 1) % 12] + shift;
            let d = Direction::from(step * e as i64);
            let tri = Placement::triangle(b, d.opposite());
            let _ = patch.add_tile(tri);
        }
    }
    Ok(patch)
}
