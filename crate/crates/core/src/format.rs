//! The SHIELD/1 text format.
//!
//! ```text
//! shield-patch 1
//! alpha rational 1 2
//! # comment
//! tile S exact 0:1,0;1:0,-1 0 0
//! tile T num 0.5 0.866025403784 2 0
//! ```
//!
//! Anchors are written exactly whenever every tile of the patch has an exact
//! anchor, and as decimals with 12 significant digits otherwise.

use std::fmt::Write as _;

use crate::angle::{AlphaKind, AlphaSpec, Direction, ExactPoint};
use crate::error::FormatError;
use crate::patch::{Anchor, Patch, Placement, TileKind};

pub const HEADER: &str = "shield-patch 1";

/// Parse a patch. Tiles are inserted without validity checks so that
/// [`Patch::validate`] can report on broken input.
pub fn read_patch(text: &str) -> Result<Patch, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l)) if l.split_whitespace().eq(HEADER.split_whitespace()) => {}
        _ => return Err(FormatError::MissingHeader),
    }
    let (line, alpha_line) = lines.next().ok_or(FormatError::MissingAlpha)?;
    let alpha = parse_alpha(line, alpha_line)?;
    let mut patch = Patch::new(alpha);
    for (line, l) in lines {
        patch.insert_unchecked(parse_tile(line, l)?);
    }
    Ok(patch)
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn parse_alpha(line: usize, l: &str) -> Result<AlphaSpec, FormatError> {
    let f: Vec<&str> = l.split_whitespace().collect();
    let int = |s: &str| s.parse::<i64>().map_err(|_| syntax(line, format!("bad integer `{s}`")));
    let alpha = match f.as_slice() {
        ["alpha", "generic"] => Ok(AlphaSpec::generic()),
        ["alpha", "rational", s, t] => AlphaSpec::rational(int(s)?, int(t)?),
        ["alpha", "degrees", d] => {
            AlphaSpec::degrees(d.parse().map_err(|_| syntax(line, format!("bad decimal `{d}`")))?)
        }
        ["alpha", ..] => return Err(syntax(line, "expected `alpha generic|rational <s> <t>|degrees <deg>`")),
        _ => return Err(FormatError::MissingAlpha),
    };
    alpha.map_err(|source| FormatError::Alpha { line, source })
}

fn parse_tile(line: usize, l: &str) -> Result<Placement, FormatError> {
    let f: Vec<&str> = l.split_whitespace().collect();
    let int = |s: &str| s.parse::<i64>().map_err(|_| syntax(line, format!("bad integer `{s}`")));
    let real = |s: &str| s.parse::<f64>().map_err(|_| syntax(line, format!("bad decimal `{s}`")));
    if f.first() != Some(&"tile") {
        return Err(syntax(line, format!("expected `tile`, found `{}`", f[0])));
    }
    let kind = match f.get(1) {
        Some(&"T") => TileKind::Triangle,
        Some(&"S") => TileKind::Shield,
        _ => return Err(syntax(line, "tile kind must be T or S")),
    };
    let (anchor, rest) = match f.get(2) {
        Some(&"exact") if f.len() == 6 => {
            let p: ExactPoint = f[3].parse().map_err(|_| syntax(line, format!("bad exact point `{}`", f[3])))?;
            (Anchor::Exact(p), &f[4..])
        }
        Some(&"num") if f.len() == 7 => (Anchor::Numeric(real(f[3])?, real(f[4])?), &f[5..]),
        _ => return Err(syntax(line, "expected `exact <point> <a> <b>` or `num <x> <y> <a> <b>`")),
    };
    let heading = Direction::new(int(rest[0])?, int(rest[1])?);
    Ok(Placement { kind, anchor, heading })
}

/// Format with 12 significant digits, plain decimal notation.
fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let prec = (11 - mag).max(0) as usize;
    let s = format!("{x:.prec$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub fn write_patch(patch: &Patch) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    match patch.alpha().kind() {
        AlphaKind::Generic => writeln!(out, "alpha generic"),
        AlphaKind::Rational { s, t } => writeln!(out, "alpha rational {s} {t}"),
        AlphaKind::Degrees(d) => writeln!(out, "alpha degrees {d}"),
    }
    .unwrap();
    let exact = patch.is_exact();
    let al = patch.eval_radians();
    for pl in patch.placements() {
        let h = pl.heading;
        let anchor = match (&pl.anchor, exact) {
            (Anchor::Exact(p), true) => format!("exact {p}"),
            (Anchor::Exact(p), false) => {
                let (x, y) = p.to_xy(al);
                format!("num {} {}", sig12(x), sig12(y))
            }
            (Anchor::Numeric(x, y), _) => format!("num {} {}", sig12(*x), sig12(*y)),
        };
        writeln!(out, "tile {} {anchor} {} {}", pl.kind.letter(), h.a(), h.b()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(0.5), "0.5");
        assert_eq!(sig12(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(sig12(12.345678901234567), "12.3456789012");
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn round_trip_exact() {
        let mut p = Patch::new(AlphaSpec::generic());
        p.add_tile(Placement::shield(ExactPoint::origin(), Direction::new(1, 2))).unwrap();
        let text = write_patch(&p);
        assert!(text.contains("tile S exact"));
        let q = read_patch(&text).unwrap();
        assert_eq!(q.fingerprint(), p.fingerprint());
    }

    #[test]
    fn numeric_anchors_and_comments() {
        let text = "# a lone triangle\nshield-patch 1\nalpha degrees 101\n\n# anchor\ntile T num 0.25 -1 0 0\n";
        let p = read_patch(text).unwrap();
        assert_eq!(p.tiles().len(), 1);
        assert!(!p.is_exact());
        assert!(write_patch(&p).contains("tile T num 0.25 -1 0 0"));
    }

    #[test]
    fn errors() {
        assert!(matches!(read_patch("alpha generic"), Err(FormatError::MissingHeader)));
        assert!(matches!(read_patch("shield-patch 1\n"), Err(FormatError::MissingAlpha)));
        assert!(matches!(
            read_patch("shield-patch 1\nalpha rational 1 3\n"),
            Err(FormatError::Alpha { line: 2, .. })
        ));
        assert!(matches!(
            read_patch("shield-patch 1\nalpha generic\ntile Q exact 0:0,0 0 0\n"),
            Err(FormatError::Syntax { line: 3, .. })
        ));
    }
}
