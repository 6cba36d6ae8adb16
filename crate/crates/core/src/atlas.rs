//! Vertex configurations: which corners of triangles and shields can close up
//! around a vertex, for a given α.

use std::collections::BTreeSet;
use std::fmt;

use crate::angle::{full_turn_check, AlphaSpec, Direction, SymbolicAngle};
use crate::enumerate::{self, SearchOptions};
use crate::patch::Patch;

/// A corner of a tile, by angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AngleLabel {
    /// Shield corner α.
    A,
    /// Shield corner β.
    B,
    /// Triangle corner π/3.
    T,
}

impl AngleLabel {
    pub const ALL: [AngleLabel; 3] = [AngleLabel::A, AngleLabel::B, AngleLabel::T];

    pub fn angle(self) -> SymbolicAngle {
        match self {
            AngleLabel::A => SymbolicAngle::ALPHA,
            AngleLabel::B => SymbolicAngle::BETA,
            AngleLabel::T => SymbolicAngle::THIRD,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            AngleLabel::A => 'A',
            AngleLabel::B => 'B',
            AngleLabel::T => 'T',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'A' => Some(AngleLabel::A),
            'B' => Some(AngleLabel::B),
            'T' => Some(AngleLabel::T),
            _ => None,
        }
    }
}

/// Number of α, β and π/3 corners at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexCounts {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl VertexCounts {
    pub const fn new(p: u32, q: u32, r: u32) -> Self {
        VertexCounts { p, q, r }
    }

    pub fn total_angle(&self) -> SymbolicAngle {
        SymbolicAngle::ALPHA * self.p as i64 + SymbolicAngle::BETA * self.q as i64 + SymbolicAngle::THIRD * self.r as i64
    }

    pub fn closes(&self, alpha: &AlphaSpec) -> bool {
        full_turn_check(&[self.total_angle()], alpha)
    }
}

impl fmt::Display for VertexCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

/// A cyclic word of corner labels, stored in canonical form: the
/// lexicographically least rotation of the word or of its mirror image.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexConfig {
    word: Vec<AngleLabel>,
}

/// Least rotation-or-reflection of a cyclic word.
pub fn canonical_word(word: &[AngleLabel]) -> Vec<AngleLabel> {
    let n = word.len();
    let mut best: Option<Vec<AngleLabel>> = None;
    let mut rev = word.to_vec();
    rev.reverse();
    for w in [word, rev.as_slice()] {
        for i in 0..n.max(1) {
            let cand: Vec<AngleLabel> = w.iter().cycle().skip(i).take(n).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

impl VertexConfig {
    pub fn new(word: &[AngleLabel]) -> Self {
        VertexConfig { word: canonical_word(word) }
    }

    pub fn hex() -> Self {
        Self::new(&[AngleLabel::T; 6])
    }

    pub fn bowtie() -> Self {
        use AngleLabel::*;
        Self::new(&[A, T, B, T])
    }

    pub fn fault() -> Self {
        use AngleLabel::*;
        Self::new(&[A, B, T, T])
    }

    pub fn word(&self) -> &[AngleLabel] {
        &self.word
    }

    pub fn counts(&self) -> VertexCounts {
        let c = |l| self.word.iter().filter(|&&x| x == l).count() as u32;
        VertexCounts::new(c(AngleLabel::A), c(AngleLabel::B), c(AngleLabel::T))
    }

    /// Conventional name of the three configurations that exist for every α.
    pub fn name(&self) -> Option<&'static str> {
        if *self == Self::hex() {
            Some("hex")
        } else if *self == Self::bowtie() {
            Some("bowtie")
        } else if *self == Self::fault() {
            Some("fault")
        } else {
            None
        }
    }
}

impl fmt::Display for VertexConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.word {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for VertexConfig {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let word: Option<Vec<_>> = s.trim().chars().map(AngleLabel::from_char).collect();
        word.map(|w| VertexConfig::new(&w)).ok_or_else(|| format!("bad vertex word `{s}`"))
    }
}

/// All (p, q, r) with pα + qβ + rπ/3 = 2π. The search box p ≤ 5, q ≤ 2,
/// r ≤ 6 follows from α > π/3 and β > 2π/3.
pub fn solve_vertex_equation(alpha: &AlphaSpec) -> BTreeSet<VertexCounts> {
    let mut out = BTreeSet::new();
    for p in 0..=5 {
        for q in 0..=2 {
            for r in 0..=6 {
                let c = VertexCounts::new(p, q, r);
                if c.closes(alpha) {
                    out.insert(c);
                }
            }
        }
    }
    out
}

fn multiset_words(counts: [u32; 3], prefix: &mut Vec<AngleLabel>, out: &mut BTreeSet<VertexConfig>) {
    if counts.iter().all(|&c| c == 0) {
        out.insert(VertexConfig::new(prefix));
        return;
    }
    for (i, label) in AngleLabel::ALL.into_iter().enumerate() {
        if counts[i] > 0 {
            let mut rest = counts;
            rest[i] -= 1;
            prefix.push(label);
            multiset_words(rest, prefix, out);
            prefix.pop();
        }
    }
}

/// Every distinct cyclic arrangement of the corner multiset.
pub fn configs_from_counts(c: VertexCounts) -> BTreeSet<VertexConfig> {
    let mut out = BTreeSet::new();
    multiset_words([c.p, c.q, c.r], &mut Vec::new(), &mut out);
    out
}

/// An α at which extra (p ≠ q) vertex configurations close, with the triple
/// that produces it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalAlpha {
    pub alpha: AlphaSpec,
    pub s: i64,
    pub t: i64,
    pub witnesses: Vec<VertexCounts>,
}

/// Scan all triples with p ≠ q and solve (p − q)α = 2π − (4q + r)π/3 for α.
/// π/2 is included only when `include_right` is set.
pub fn exceptional_alphas_with(include_right: bool) -> Vec<ExceptionalAlpha> {
    let mut found: Vec<ExceptionalAlpha> = Vec::new();
    for p in 0..=5i64 {
        for q in 0..=2i64 {
            for r in 0..=6i64 {
                if p == q {
                    continue;
                }
                // α/π = (6 − 4q − r) / (3(p − q))
                let Ok(alpha) = AlphaSpec::rational(6 - 4 * q - r, 3 * (p - q)) else {
                    continue;
                };
                if alpha.is_right_shield() && !include_right {
                    continue;
                }
                let crate::angle::AlphaKind::Rational { s, t } = alpha.kind() else { unreachable!() };
                let c = VertexCounts::new(p as u32, q as u32, r as u32);
                match found.iter_mut().find(|e| (e.s, e.t) == (s, t)) {
                    Some(e) => e.witnesses.push(c),
                    None => found.push(ExceptionalAlpha { alpha, s, t, witnesses: vec![c] }),
                }
            }
        }
    }
    found.sort_by(|x, y| (x.s * y.t).cmp(&(y.s * x.t)));
    for e in &mut found {
        e.witnesses.sort();
    }
    found
}

/// The exceptional α values other than π/2.
pub fn exceptional_alphas() -> Vec<ExceptionalAlpha> {
    exceptional_alphas_with(false)
}

/// The full vertex atlas of one α, with the cyclic words pre-expanded for
/// matching partial stars.
#[derive(Debug, Clone)]
pub struct Atlas {
    alpha: AlphaSpec,
    counts: BTreeSet<VertexCounts>,
    configs: BTreeSet<VertexConfig>,
    // every config word and its mirror, as counter-clockwise sequences
    oriented: Vec<Vec<AngleLabel>>,
}

impl Atlas {
    pub fn new(alpha: AlphaSpec) -> Self {
        let counts = solve_vertex_equation(&alpha);
        let configs: BTreeSet<VertexConfig> = counts.iter().flat_map(|c| configs_from_counts(*c)).collect();
        let mut oriented = Vec::new();
        for c in &configs {
            let w = c.word().to_vec();
            let mut r = w.clone();
            r.reverse();
            if canonical_rotation(&r) != canonical_rotation(&w) {
                oriented.push(r);
            }
            oriented.push(w);
        }
        Atlas { alpha, counts, configs, oriented }
    }

    pub fn alpha(&self) -> &AlphaSpec {
        &self.alpha
    }

    pub fn counts(&self) -> &BTreeSet<VertexCounts> {
        &self.counts
    }

    pub fn configs(&self) -> &BTreeSet<VertexConfig> {
        &self.configs
    }

    pub fn contains(&self, config: &VertexConfig) -> bool {
        self.configs.contains(config)
    }

    /// Can some non-negative combination of α, β and π/3 fill `gap` exactly?
    pub fn gap_feasible(&self, gap: SymbolicAngle) -> bool {
        if self.alpha.angle_is_zero(gap) {
            return true;
        }
        for p in 0..=5 {
            for q in 0..=2 {
                for r in 0..=6 {
                    if p + q + r == 0 {
                        continue;
                    }
                    if self.alpha.angles_equal(VertexCounts::new(p, q, r).total_angle(), gap) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Does the partial star (corner start directions with labels, in any
    /// order) sit inside some atlas word at the right angular positions?
    pub fn embeds(&self, corners: &[(Direction, AngleLabel)]) -> bool {
        let Some(&(d0, l0)) = corners.first() else {
            return true;
        };
        self.oriented.iter().any(|w| {
            let mut cum = Vec::with_capacity(w.len());
            let mut acc = SymbolicAngle::ZERO;
            for l in w {
                cum.push(acc);
                acc = acc + l.angle();
            }
            (0..w.len()).filter(|&j| w[j] == l0).any(|j| {
                let offset = d0.angle() - cum[j];
                corners[1..].iter().all(|&(d, l)| {
                    (0..w.len()).any(|k| w[k] == l && self.alpha.directions_equal(d, Direction::from(offset + cum[k])))
                })
            })
        })
    }
}

fn canonical_rotation(word: &[AngleLabel]) -> Vec<AngleLabel> {
    let n = word.len();
    (0..n.max(1)).map(|i| word.iter().cycle().skip(i).take(n).copied().collect::<Vec<_>>()).min().unwrap_or_default()
}

/// Outcome of trying to grow a patch around a single vertex configuration.
#[derive(Debug, Clone)]
pub enum Extendability {
    ExtendableWitness(Box<Patch>),
    ProvenImpossible,
    Unknown,
}

/// Default neighbourhood depth for [`is_config_extendable`].
pub const DEFAULT_DEPTH: usize = 3;

/// Place `config` around the origin and search exhaustively for a valid patch
/// in which every vertex up to `depth` edges away from it is complete.
pub fn is_config_extendable(config: &VertexConfig, alpha: &AlphaSpec, depth: usize) -> Extendability {
    is_config_extendable_with(config, alpha, depth, &SearchOptions::default())
}

pub fn is_config_extendable_with(
    config: &VertexConfig,
    alpha: &AlphaSpec,
    depth: usize,
    opts: &SearchOptions,
) -> Extendability {
    let Some(seed) = Patch::vertex_star(*alpha, config.word()) else {
        return Extendability::ProvenImpossible;
    };
    let center = seed.find_exact(&crate::angle::ExactPoint::origin()).expect("star is centred at the origin");
    match enumerate::extend_to_rings(&seed, center, depth.max(1), opts) {
        Ok(Some(p)) => Extendability::ExtendableWitness(Box::new(p)),
        Ok(None) => Extendability::ProvenImpossible,
        Err(_) => Extendability::Unknown,
    }
}
