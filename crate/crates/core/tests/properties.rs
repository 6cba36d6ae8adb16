mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use shield_tilings::angle::{AlphaSpec, Direction, ExactPoint};
use shield_tilings::classify::classify;
use shield_tilings::format::{read_patch, write_patch};
use shield_tilings::patch::{Patch, Placement};
use shield_tilings::render::{render_svg, RenderStyle};

use common::{fixtures, isometry, transformed};

fn generic_fixtures() -> &'static [(String, Patch)] {
    static F: OnceLock<Vec<(String, Patch)>> = OnceLock::new();
    F.get_or_init(|| fixtures(AlphaSpec::generic()))
}

fn numeric_fixtures() -> &'static [(String, Patch)] {
    static F: OnceLock<Vec<(String, Patch)>> = OnceLock::new();
    F.get_or_init(|| {
        let mut out = fixtures(AlphaSpec::degrees(99.34).unwrap());
        out.extend(fixtures(AlphaSpec::degrees(110.0).unwrap()));
        out
    })
}

fn ball_keys(p: &Patch, n: f64) -> Vec<(ExactPoint, String)> {
    let mut out: Vec<(ExactPoint, String)> = (0..p.vertices().len())
        .filter_map(|v| {
            let b = p.extract_ball(v, n).ok()?;
            Some((p.vertex(v).pos.exact.clone()?, b.key().to_string()))
        })
        .collect();
    out.sort();
    out
}

fn alpha_deg() -> impl Strategy<Value = f64> {
    (61.0f64..119.0).prop_filter("exceptional", |d| AlphaSpec::degrees(*d).is_ok())
}

fn steps() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((0i64..6, -3i64..=3), 0..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shield_walk_closes(deg in alpha_deg(), a in 0i64..6, b in -4i64..=4) {
        let al = deg.to_radians();
        let pl = Placement::shield(ExactPoint::origin(), Direction::new(a, b));
        let cs = pl.corners(al);
        let last = cs.last().unwrap();
        let (x, y) = last.pos.xy;
        let (dx, dy) = last.start.unit(al);
        prop_assert!((x + dx).abs() < 1e-9 && (y + dy).abs() < 1e-9);
        prop_assert_eq!(last.pos.exact.as_ref().unwrap().step(last.start), ExactPoint::origin());
    }

    #[test]
    fn numeric_reduction_is_sound(deg in alpha_deg(), walk in steps()) {
        let al = deg.to_radians();
        let p = common::walk(&walk);
        let (mut x, mut y) = (0.0, 0.0);
        for &(a, b) in &walk {
            let (dx, dy) = Direction::new(a, b).unit(al);
            x += dx;
            y += dy;
        }
        let (px, py) = p.to_xy(al);
        prop_assert!((px - x).abs() < 1e-9 && (py - y).abs() < 1e-9);
    }

    #[test]
    fn ball_keys_survive_isometries(
        i in 0usize..8,
        reflect: bool,
        rot in (0i64..6, -3i64..=3),
        shift in steps(),
    ) {
        let (name, p) = &generic_fixtures()[i % generic_fixtures().len()];
        let iso = isometry(reflect, rot, &shift);
        let q = transformed(p, &iso);
        prop_assert!(q.validate().is_valid(), "{}", name);
        for (at, key) in ball_keys(p, 1.0) {
            let v = q.find_exact(&iso.apply(&at)).unwrap();
            let image = q.extract_ball(v, 1.0).unwrap();
            prop_assert_eq!(image.key(), key.as_str(), "{}", name);
        }
    }

    #[test]
    fn classification_survives_isometries(i in 0usize..8, reflect: bool, rot in 0i64..6, shift in steps()) {
        let (name, p) = &generic_fixtures()[i % generic_fixtures().len()];
        let q = transformed(p, &isometry(reflect, (rot, 0), &shift));
        prop_assert_eq!(classify(&q), classify(p), "{}", name);
    }

    #[test]
    fn pop_leaves_no_residue(i in 0usize..8, cut in 0.0f64..1.0) {
        let (_, p) = &generic_fixtures()[i % generic_fixtures().len()];
        let pls: Vec<Placement> = p.placements().cloned().collect();
        let k = (cut * pls.len() as f64) as usize;
        let mut a = Patch::new(*p.alpha());
        for pl in &pls[..k] {
            a.add_tile(pl.clone()).unwrap();
        }
        let before = (a.fingerprint(), a.vertices().len(), a.edges().count());
        for pl in &pls[k..] {
            a.add_tile(pl.clone()).unwrap();
        }
        for _ in k..pls.len() {
            a.pop_tile().unwrap();
        }
        prop_assert_eq!((a.fingerprint(), a.vertices().len(), a.edges().count()), before);
    }

    #[test]
    fn validation_ignores_insertion_order(
        i in 0usize..8,
        order in any::<u64>(),
        corrupt: bool,
    ) {
        let (_, p) = &generic_fixtures()[i % generic_fixtures().len()];
        let mut pls: Vec<Placement> = p.placements().cloned().collect();
        if corrupt {
            let twin = pls[pls.len() / 2].clone();
            pls.push(twin);
        }
        let mut base = Patch::new(*p.alpha());
        for pl in &pls {
            base.insert_unchecked(pl.clone());
        }
        let mut shuffled = pls.clone();
        let mut s = order;
        for j in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(j, (s >> 33) as usize % (j + 1));
        }
        let mut q = Patch::new(*p.alpha());
        for pl in shuffled {
            q.insert_unchecked(pl);
        }
        prop_assert_eq!(q.validate().is_valid(), base.validate().is_valid());
        prop_assert_eq!(base.validate().is_valid(), !corrupt);
        prop_assert_eq!(q.fingerprint(), base.fingerprint());
    }

    #[test]
    fn shield1_round_trip(i in 0usize..16) {
        let all: Vec<&(String, Patch)> = generic_fixtures().iter().chain(numeric_fixtures()).collect();
        let (name, p) = all[i % all.len()];
        let q = read_patch(&write_patch(p)).unwrap();
        prop_assert!(q.validate().is_valid(), "{}", name);
        prop_assert_eq!(q.fingerprint(), p.fingerprint(), "{}", name);
        let keys = |p: &Patch| -> Vec<String> {
            let mut k: Vec<String> = (0..p.vertices().len())
                .filter_map(|v| p.extract_ball(v, 1.0).ok().map(|b| b.key().to_string()))
                .collect();
            k.sort();
            k
        };
        prop_assert_eq!(keys(&q), keys(p), "{}", name);
    }

    #[test]
    fn svg_is_deterministic(i in 0usize..16, scale in 5.0f64..80.0) {
        let all: Vec<&(String, Patch)> = generic_fixtures().iter().chain(numeric_fixtures()).collect();
        let (_, p) = all[i % all.len()];
        let style = RenderStyle { scale, vertex_markers: true, ..RenderStyle::default() };
        let svg = render_svg(p, &style);
        prop_assert_eq!(svg.matches("<polygon").count(), p.tiles().len());
        prop_assert_eq!(&svg, &render_svg(&p.clone(), &style));
        let rebuilt = read_patch(&write_patch(p)).unwrap();
        prop_assert_eq!(svg.matches("<polygon").count(), render_svg(&rebuilt, &style).matches("<polygon").count());
    }
}
