//! Independent recomputations checked against the library.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use shield_tilings::angle::AlphaSpec;
use shield_tilings::atlas::{
    configs_from_counts, exceptional_alphas, exceptional_alphas_with, solve_vertex_equation, AngleLabel, Atlas,
    VertexCounts,
};
use shield_tilings::generators::TriangleLattice;
use shield_tilings::root::{disk_radius_root, roots_in_unit_interval, POLY};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// pα + qβ + rπ/3 = 2π with β = 4π/3 − α, all in units of π.
fn closes(a: &BigRational, p: i64, qq: i64, r: i64) -> bool {
    let beta = q(4, 3) - a;
    a * q(p, 1) + beta * q(qq, 1) + q(r, 3) == q(2, 1)
}

#[test]
fn vertex_equation_matches_rational_triple_loop() {
    for t in 2..=36 {
        for s in 1..t {
            let Ok(alpha) = AlphaSpec::rational(s, t) else { continue };
            let a = q(s, t);
            let mut expect = BTreeSet::new();
            for p in 0..=5 {
                for qq in 0..=2 {
                    for r in 0..=6 {
                        if closes(&a, p, qq, r) {
                            expect.insert(VertexCounts::new(p as u32, qq as u32, r as u32));
                        }
                    }
                }
            }
            assert_eq!(solve_vertex_equation(&alpha), expect, "α = {s}π/{t}");
            for c in &expect {
                assert!(c.closes(&alpha));
            }
        }
    }
}

#[test]
fn exceptional_scan_matches_rational_solve() {
    // (p − q)α = 2 − 4q/3 − r/3 in units of π
    let mut expect: BTreeSet<(BigRational, (u32, u32, u32))> = BTreeSet::new();
    for p in 0..=5i64 {
        for qq in 0..=2i64 {
            for r in 0..=6i64 {
                if p == qq {
                    continue;
                }
                let a = (q(2, 1) - q(4 * qq, 3) - q(r, 3)) / q(p - qq, 1);
                if a > q(1, 3) && a < q(2, 3) {
                    expect.insert((a, (p as u32, qq as u32, r as u32)));
                }
            }
        }
    }
    let got: BTreeSet<(BigRational, (u32, u32, u32))> = exceptional_alphas_with(true)
        .iter()
        .flat_map(|e| e.witnesses.iter().map(move |w| (q(e.s, e.t), (w.p, w.q, w.r))))
        .collect();
    assert_eq!(got, expect);

    let values: Vec<(i64, i64)> = exceptional_alphas().iter().map(|e| (e.s, e.t)).collect();
    assert_eq!(values, [(2, 5), (5, 12), (4, 9), (5, 9)]);
}

fn all_words(c: VertexCounts) -> Vec<Vec<AngleLabel>> {
    let mut out = vec![vec![]];
    for _ in 0..c.p + c.q + c.r {
        out = out
            .into_iter()
            .flat_map(|w: Vec<AngleLabel>| {
                [AngleLabel::A, AngleLabel::B, AngleLabel::T].into_iter().map(move |l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    let n = |w: &[AngleLabel], l| w.iter().filter(|&&x| x == l).count() as u32;
    out.retain(|w| n(w, AngleLabel::A) == c.p && n(w, AngleLabel::B) == c.q && n(w, AngleLabel::T) == c.r);
    out
}

/// Brute-force dihedral orbit representatives.
fn cyclic_classes(c: VertexCounts) -> usize {
    let mut classes = BTreeSet::new();
    for w in all_words(c) {
        let mut orbit = Vec::new();
        for k in 0..w.len() {
            let mut r = w.clone();
            r.rotate_left(k);
            orbit.push(r.clone());
            r.reverse();
            orbit.push(r);
        }
        classes.insert(orbit.into_iter().min().unwrap());
    }
    classes.len()
}

#[test]
fn canonical_words_match_orbit_count() {
    for (p, qq, r) in [(0, 0, 6), (1, 1, 2), (4, 0, 0), (2, 0, 3), (0, 2, 1), (3, 0, 2), (4, 0, 1), (3, 0, 1), (5, 0, 0)] {
        let c = VertexCounts::new(p, qq, r);
        assert_eq!(configs_from_counts(c).len(), cyclic_classes(c), "{c}");
    }
    assert_eq!(configs_from_counts(VertexCounts::new(2, 0, 3)).len(), 2);
    assert_eq!(Atlas::new(AlphaSpec::right()).configs().len(), 7);
}

fn poly_exact(x: &BigRational) -> BigRational {
    POLY.iter().fold(BigRational::zero(), |acc, &c| acc * x + q(c as i64, 1))
}

#[test]
fn root_count_by_exact_sign_scan() {
    let mut changes = Vec::new();
    let mut prev = poly_exact(&q(0, 1));
    for i in 1..=1000 {
        let x = q(i, 1000);
        let v = poly_exact(&x);
        if v.is_zero() || v.is_negative() != prev.is_negative() {
            changes.push(i);
        }
        prev = v;
    }
    let roots = roots_in_unit_interval();
    assert_eq!(roots.len(), changes.len());
    for (r, i) in roots.iter().zip(&changes) {
        assert!(r.value > (*i - 1) as f64 / 1000.0 && r.value <= *i as f64 / 1000.0);
    }
    let r = disk_radius_root();
    assert!(r.value > 0.5 && r.value < 0.6);
    assert!(r.residual < 1e-10);
}

#[test]
fn triangle_lattice_period_census() {
    let alpha = AlphaSpec::degrees(99.34).unwrap();
    for k in 1..=4u32 {
        let (shields, triangles) = TriangleLattice::new(k).period_census(alpha);
        let k = k as usize;
        assert_eq!((shields, triangles), (k * (k + 1), 2 * (k * k + k + 1)), "order {k}");
    }
}
