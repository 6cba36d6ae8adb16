#![allow(dead_code)]

use std::collections::BTreeSet;

use shield_tilings::angle::{AlphaSpec, Direction, ExactPoint};
use shield_tilings::generators::{gen_line_tiling, gen_triangle_tiling, OrientationWord, TriangleOrder};
use shield_tilings::patch::{Isometry, Patch};

pub fn word(s: &str) -> OrientationWord {
    s.parse().unwrap()
}

/// Every orientation word of the given length, one per dihedral class.
pub fn words_of_length(len: usize) -> Vec<OrientationWord> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0..(1u32 << len) {
        let w = OrientationWord::new((0..len).map(|i| bits >> i & 1 == 1).collect()).unwrap();
        if seen.insert(w.normalized()) {
            out.push(w);
        }
    }
    out
}

pub fn harvest(p: &Patch, n: f64, out: &mut BTreeSet<String>) {
    for v in 0..p.vertices().len() {
        if let Ok(b) = p.extract_ball(v, n) {
            out.insert(b.key().to_string());
        }
    }
}

/// Ball keys of radius `n` found in windows of the line and triangle
/// families at generic α.
pub fn generator_balls(n: f64, max_word: usize, max_order: u32) -> BTreeSet<String> {
    let a = AlphaSpec::generic();
    let mut out = BTreeSet::new();
    let line_extent = (n.ceil() as usize).max(2) + 3;
    for len in 1..=max_word {
        for w in words_of_length(len) {
            harvest(&gen_line_tiling(&w, line_extent, a), n, &mut out);
        }
    }
    let tri_extent = 2 * max_order as usize + 2;
    for k in 0..=max_order {
        harvest(&gen_triangle_tiling(TriangleOrder::Finite(k), tri_extent, a), n, &mut out);
    }
    harvest(&gen_triangle_tiling(TriangleOrder::Infinite, line_extent + 2, a), n, &mut out);
    out
}

/// Small windows of every family at one α.
pub fn fixtures(alpha: AlphaSpec) -> Vec<(String, Patch)> {
    let mut out = Vec::new();
    for w in ["+", "+-", "++-", "+--+"] {
        out.push((format!("line {w}"), gen_line_tiling(&word(w), 2, alpha)));
    }
    for k in 0..=2 {
        out.push((format!("triangle {k}"), gen_triangle_tiling(TriangleOrder::Finite(k), 2, alpha)));
    }
    out.push(("triangle ∞".into(), gen_triangle_tiling(TriangleOrder::Infinite, 2, alpha)));
    out
}

/// A translation by a sum of unit steps.
pub fn walk(steps: &[(i64, i64)]) -> ExactPoint {
    steps.iter().fold(ExactPoint::origin(), |p, &(a, b)| p.step(Direction::new(a, b)))
}

pub fn isometry(reflect: bool, rotation: (i64, i64), steps: &[(i64, i64)]) -> Isometry {
    Isometry { reflect, rotation: Direction::new(rotation.0, rotation.1), shift: walk(steps) }
}

/// Rebuild the image of an exact patch under an isometry.
pub fn transformed(p: &Patch, iso: &Isometry) -> Patch {
    let mut q = Patch::new(*p.alpha());
    for pl in p.placements() {
        q.insert_unchecked(pl.transformed(iso));
    }
    q
}
