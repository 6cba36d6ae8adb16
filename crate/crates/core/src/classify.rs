//! Deciding which family a finite patch belongs to.
//!
//! Without a hex the shields must stack into parallel lines and the patch is
//! read as an orientation word. With a hex, the hexes must be isolated and
//! sit on a triangular grid whose spacing gives the order.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::angle::ExactPoint;
use crate::atlas::{AngleLabel, VertexConfig};
use crate::error::PatchError;
use crate::generators::{OrientationWord, TriangleLattice, TriangleOrder};
use crate::geom::{self, Xy};
use crate::patch::{Patch, TileKind};

/// Interior vertices grouped by configuration.
pub fn vertex_census(patch: &Patch) -> Result<BTreeMap<VertexConfig, Vec<usize>>, PatchError> {
    let report = patch.validate();
    if !report.is_valid() {
        return Err(PatchError::NotValidated(report.to_string()));
    }
    let mut out: BTreeMap<VertexConfig, Vec<usize>> = BTreeMap::new();
    for v in patch.interior_vertices() {
        out.entry(patch.config(v).expect("interior")).or_default().push(v);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Terminus {
    PatchBoundary,
    HexVertex(usize),
}

/// A maximal chain of fault vertices. Consecutive vertices share alternately
/// an edge between two shields and an edge between two triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaultLine {
    pub vertices: Vec<usize>,
    pub termini: (Terminus, Terminus),
    /// Translation taking each chain vertex two steps along; constant on the
    /// chain when it has at least three vertices.
    pub period: Option<ExactPoint>,
}

fn is_fault(patch: &Patch, v: usize) -> bool {
    patch.config(v).is_some_and(|c| c == VertexConfig::fault())
}

fn is_hex(patch: &Patch, v: usize) -> bool {
    patch.config(v).is_some_and(|c| c == VertexConfig::hex())
}

/// Neighbour of a complete vertex across the edge between two adjacent
/// corners of the given kind (both shields or both triangles).
fn across(patch: &Patch, v: usize, shields: bool) -> Option<usize> {
    let star = patch.star(v);
    let n = star.corners.len();
    let is_shield = |l: AngleLabel| l != AngleLabel::T;
    (0..n).find_map(|i| {
        let (c, d) = (star.corners[i], star.corners[(i + 1) % n]);
        if is_shield(c.label) != shields || is_shield(d.label) != shields {
            return None;
        }
        let tile = patch.tile(d.tile);
        let j = tile.verts.iter().position(|&x| x == v)?;
        Some(tile.verts[(j + 1) % tile.verts.len()])
    })
}

/// The maximal fault chain through `v`.
pub fn trace_fault_line(patch: &Patch, v: usize) -> FaultLine {
    let mut halves = Vec::new();
    for first_shields in [true, false] {
        let mut chain = Vec::new();
        let mut seen: HashSet<usize> = HashSet::from([v]);
        let (mut cur, mut shields) = (v, first_shields);
        let end = loop {
            let Some(next) = across(patch, cur, shields) else { break Terminus::PatchBoundary };
            if is_hex(patch, next) {
                break Terminus::HexVertex(next);
            }
            if !is_fault(patch, next) || !seen.insert(next) {
                break Terminus::PatchBoundary;
            }
            chain.push(next);
            cur = next;
            shields = !shields;
        };
        halves.push((chain, end));
    }
    let (back, back_end) = halves.pop().unwrap();
    let (fwd, fwd_end) = halves.pop().unwrap();
    let mut vertices: Vec<usize> = back.into_iter().rev().collect();
    vertices.push(v);
    vertices.extend(fwd);
    let mut termini = (back_end, fwd_end);
    let key = |u: usize| patch.vertex(u).pos.exact.clone();
    let (first, last) = (vertices[0], *vertices.last().unwrap());
    let pos = |u: usize| patch.vertex(u).pos.xy;
    let flip = match (key(first), key(last)) {
        (Some(a), Some(b)) if patch.alpha().is_generic() => a > b,
        _ => pos(first).0 > pos(last).0 || (pos(first).0 == pos(last).0 && pos(first).1 > pos(last).1),
    };
    if flip {
        vertices.reverse();
        termini = (termini.1, termini.0);
    }
    let period = match vertices.get(2) {
        Some(&v2) => key(v2).zip(key(vertices[0])).map(|(a, b)| &a - &b),
        None => None,
    };
    FaultLine { vertices, termini, period }
}

/// All maximal fault chains, each reported once.
pub fn fault_lines(patch: &Patch) -> Vec<FaultLine> {
    let mut covered = HashSet::new();
    let mut out = Vec::new();
    for v in patch.interior_vertices() {
        if is_fault(patch, v) && !covered.contains(&v) {
            let line = trace_fault_line(patch, v);
            covered.extend(line.vertices.iter().copied());
            out.push(line);
        }
    }
    out
}

/// Hexes that have another hex as a neighbour (none may, once shields are
/// present).
pub fn adjacent_hexes(patch: &Patch) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in patch.interior_vertices().filter(|&v| is_hex(patch, v)) {
        for w in patch.neighbors(v) {
            if w > v && is_hex(patch, w) {
                out.push((v, w));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Line { word: OrientationWord, complete: bool },
    Triangle { order: TriangleOrder, complete: bool },
    Inconclusive(String),
}

impl Classification {
    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Classification::Inconclusive(_))
    }

    pub fn complete(&self) -> bool {
        match self {
            Classification::Line { complete, .. } | Classification::Triangle { complete, .. } => *complete,
            Classification::Inconclusive(_) => false,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Line { word, .. } => write!(f, "Line(word={word})"),
            Classification::Triangle { order, .. } => write!(f, "Triangle(order={order})"),
            Classification::Inconclusive(why) => write!(f, "Inconclusive({why})"),
        }
    }
}

fn inconclusive(why: impl Into<String>) -> Classification {
    Classification::Inconclusive(why.into())
}

pub fn classify(patch: &Patch) -> Classification {
    if patch.alpha().is_right_shield() {
        return inconclusive("right shield out of classification scope");
    }
    let census = match vertex_census(patch) {
        Ok(c) => c,
        Err(e) => return inconclusive(e.to_string()),
    };
    let generic = [VertexConfig::hex(), VertexConfig::bowtie(), VertexConfig::fault()];
    if let Some(odd) = census.keys().find(|c| !generic.contains(c)) {
        return inconclusive(format!("exceptional vertex configuration {odd}"));
    }
    let has_shields = patch.tiles().iter().any(|t| t.placement.kind == TileKind::Shield);
    match census.get(&VertexConfig::hex()) {
        Some(hexes) if !hexes.is_empty() => {
            if !has_shields {
                return Classification::Triangle { order: TriangleOrder::Finite(0), complete: true };
            }
            classify_triangle(patch, hexes)
        }
        _ if !has_shields => inconclusive("no interior vertex"),
        _ => classify_lines(patch, !census.contains_key(&VertexConfig::fault())),
    }
}

/// Unit vectors along the three long axes of a shield, each from an α corner
/// to the opposite β corner.
fn shield_axes(patch: &Patch, tile: usize) -> [Xy; 3] {
    let xy = &patch.tile(tile).xy;
    let axis = |i: usize| {
        let (a, b) = (xy[i], xy[(i + 3) % 6]);
        let l = geom::dist(a, b);
        ((b.0 - a.0) / l, (b.1 - a.1) / l)
    };
    [axis(0), axis(2), axis(4)]
}

fn classify_lines(patch: &Patch, uniform: bool) -> Classification {
    let shields: Vec<usize> =
        (0..patch.tiles().len()).filter(|&t| patch.tile(t).placement.kind == TileKind::Shield).collect();
    let mut best: Option<(usize, Vec<bool>)> = None;
    for u in shield_axes(patch, shields[0]) {
        // each shield's letter is whether it has an axis along +u or −u
        let mut rows: BTreeMap<i64, BTreeSet<bool>> = BTreeMap::new();
        let mut consistent = true;
        for &t in &shields {
            let dots: Vec<f64> = shield_axes(patch, t).iter().map(|a| a.0 * u.0 + a.1 * u.1).collect();
            let letter = if dots.iter().any(|&d| (d - 1.0).abs() < 1e-6) {
                true
            } else if dots.iter().any(|&d| (d + 1.0).abs() < 1e-6) {
                false
            } else {
                consistent = false;
                break;
            };
            let c = patch.tile(t).centroid;
            let offset = u.0 * c.1 - u.1 * c.0;
            rows.entry((offset * 1e6).round() as i64).or_default().insert(letter);
        }
        if !consistent || rows.values().any(|r| r.len() != 1) {
            continue;
        }
        let word: Vec<bool> = rows.values().map(|r| *r.iter().next().unwrap()).collect();
        if best.as_ref().is_none_or(|(n, _)| word.len() < *n) {
            best = Some((word.len(), word));
        }
    }
    match best {
        Some((_, word)) => Classification::Line {
            word: OrientationWord::new(word).unwrap().normalized(),
            complete: !uniform,
        },
        None => inconclusive("shields do not stack into parallel lines"),
    }
}

fn classify_triangle(patch: &Patch, hexes: &[usize]) -> Classification {
    if let Some((a, b)) = adjacent_hexes(patch).first() {
        return inconclusive(format!("hexes at vertices {a} and {b} are adjacent"));
    }
    for line in fault_lines(patch) {
        if let (Terminus::HexVertex(a), Terminus::HexVertex(b)) = line.termini {
            if a == b {
                return inconclusive("fault line returns to its own hex");
            }
        }
    }
    if hexes.len() == 1 {
        return Classification::Triangle { order: TriangleOrder::Infinite, complete: false };
    }
    let pos: Vec<Xy> = hexes.iter().map(|&h| patch.vertex(h).pos.xy).collect();
    let mut spacing = f64::INFINITY;
    for i in 0..pos.len() {
        for j in 0..i {
            spacing = spacing.min(geom::dist(pos[i], pos[j]));
        }
    }
    // every hex difference must be an integer combination of two lattice
    // vectors of that length at 60°
    let base = pos[0];
    let nearest = pos.iter().copied().find(|&p| (geom::dist(p, base) - spacing).abs() < 1e-6);
    let Some(p) = nearest else {
        return inconclusive("hexes do not form a triangular grid");
    };
    let e1 = (p.0 - base.0, p.1 - base.1);
    let (s, c) = (std::f64::consts::FRAC_PI_3).sin_cos();
    let e2 = (e1.0 * c - e1.1 * s, e1.0 * s + e1.1 * c);
    let det = e1.0 * e2.1 - e1.1 * e2.0;
    for q in &pos {
        let (x, y) = (q.0 - base.0, q.1 - base.1);
        let a = (x * e2.1 - y * e2.0) / det;
        let b = (e1.0 * y - e1.1 * x) / det;
        if (a - a.round()).abs() > 1e-6 || (b - b.round()).abs() > 1e-6 {
            return inconclusive("hexes do not form a triangular grid");
        }
    }
    let al = patch.eval_radians();
    for k in 1.. {
        let period = TriangleLattice::new(k).periods[0].to_xy(al);
        let d = geom::dist(period, (0.0, 0.0));
        if (d - spacing).abs() < 1e-6 {
            return Classification::Triangle { order: TriangleOrder::Finite(k), complete: true };
        }
        if d > spacing + 1.0 {
            break;
        }
    }
    inconclusive(format!("hex spacing {spacing:.6} matches no order"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::AlphaSpec;
    use crate::generators::{gen_line_tiling, gen_triangle_tiling};

    #[test]
    fn census_of_uniform_lines() {
        let p = gen_line_tiling(&"+".parse().unwrap(), 3, AlphaSpec::generic());
        let c = vertex_census(&p).unwrap();
        assert_eq!(c.keys().cloned().collect::<Vec<_>>(), vec![VertexConfig::bowtie()]);
    }

    #[test]
    fn fault_line_spans_the_window() {
        let p = gen_line_tiling(&"+-".parse().unwrap(), 3, AlphaSpec::generic());
        let lines = fault_lines(&p);
        assert_eq!(lines.len(), 1);
        let l = &lines[0];
        assert_eq!(l.termini, (Terminus::PatchBoundary, Terminus::PatchBoundary));
        for &v in &l.vertices {
            assert_eq!(&trace_fault_line(&p, v), l);
        }
    }

    #[test]
    fn infinite_order_has_six_lines_from_its_hex() {
        let p = gen_triangle_tiling(TriangleOrder::Infinite, 4, AlphaSpec::generic());
        let lines = fault_lines(&p);
        let at_hex = lines
            .iter()
            .filter(|l| matches!(l.termini.0, Terminus::HexVertex(_)) || matches!(l.termini.1, Terminus::HexVertex(_)))
            .count();
        assert_eq!(at_hex, 6);
        assert_eq!(classify(&p), Classification::Triangle { order: TriangleOrder::Infinite, complete: false });
    }

    #[test]
    fn round_trips() {
        let alpha = AlphaSpec::generic();
        for w in ["+", "+-", "++-", "+-+-"] {
            let word: OrientationWord = w.parse().unwrap();
            let got = classify(&gen_line_tiling(&word, 3, alpha));
            assert!(matches!(&got, Classification::Line { word: x, .. } if *x == word.normalized()), "{w}: {got}");
        }
        for k in 0..3 {
            let got = classify(&gen_triangle_tiling(TriangleOrder::Finite(k), 8, alpha));
            assert_eq!(got.to_string(), format!("Triangle(order={k})"));
        }
        let right = gen_line_tiling(&"+".parse().unwrap(), 2, AlphaSpec::right());
        assert!(!classify(&right).is_conclusive());
    }
}
