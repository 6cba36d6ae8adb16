//! Finite edge-to-edge patches of triangles and shields.
//!
//! A [`Patch`] owns its tiles and keeps three indices up to date as tiles are
//! added or popped: vertices (with their cyclic corner stars), edges (with the
//! one or two incident tiles) and a coarse spatial grid used to find nearby
//! tiles for the overlap and edge-to-edge tests.
//!
//! Vertex identity follows the exactness of α. With a symbolic α and exact
//! anchors, two vertices are the same iff their [`ExactPoint`]s are equal;
//! otherwise coordinates are compared numerically.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::angle::{AlphaSpec, Direction, ExactPoint, SymbolicAngle, TOLERANCE};
use crate::atlas::{AngleLabel, Atlas, VertexConfig};
use crate::error::PatchError;
use crate::geom::{self, Xy};

/// Two numerically computed vertices closer than this are the same vertex.
pub const MERGE_TOLERANCE: f64 = 1e-8;

const VERTEX_CELL: f64 = 0.5;
const TILE_CELL: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileKind {
    Triangle,
    Shield,
}

impl TileKind {
    pub fn letter(self) -> char {
        match self {
            TileKind::Triangle => 'T',
            TileKind::Shield => 'S',
        }
    }

    /// Corner labels in counter-clockwise order from the anchor.
    pub fn labels(self) -> &'static [AngleLabel] {
        use AngleLabel::*;
        match self {
            TileKind::Triangle => &[T, T, T],
            TileKind::Shield => &[A, B, A, B, A, B],
        }
    }
}

/// Where a placement starts its boundary walk.
#[derive(Debug, Clone, PartialEq)]
pub enum Anchor {
    Exact(ExactPoint),
    Numeric(f64, f64),
}

/// A vertex position: exact when it was reached by unit steps from an exact
/// anchor, and always with a numeric evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Pos {
    pub exact: Option<ExactPoint>,
    pub xy: Xy,
}

impl Pos {
    fn from_anchor(anchor: &Anchor, alpha_rad: f64) -> Self {
        match anchor {
            Anchor::Exact(p) => Pos { xy: p.to_xy(alpha_rad), exact: Some(p.clone()) },
            Anchor::Numeric(x, y) => Pos { exact: None, xy: (*x, *y) },
        }
    }

    fn step(&self, d: Direction, alpha_rad: f64) -> Self {
        let (ux, uy) = d.unit(alpha_rad);
        match &self.exact {
            Some(p) => {
                let q = p.step(d);
                Pos { xy: q.to_xy(alpha_rad), exact: Some(q) }
            }
            None => Pos { exact: None, xy: (self.xy.0 + ux, self.xy.1 + uy) },
        }
    }

    fn to_anchor(&self) -> Anchor {
        match &self.exact {
            Some(p) => Anchor::Exact(p.clone()),
            None => Anchor::Numeric(self.xy.0, self.xy.1),
        }
    }
}

/// One corner of a placed tile.
#[derive(Debug, Clone)]
pub struct CornerSpec {
    pub pos: Pos,
    pub label: AngleLabel,
    /// Direction of the outgoing boundary edge; the tile occupies the sector
    /// from here counter-clockwise through the corner angle.
    pub start: Direction,
}

/// A tile in the plane: kind, anchor vertex (an α corner for shields) and the
/// direction of the first counter-clockwise boundary edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub kind: TileKind,
    pub anchor: Anchor,
    pub heading: Direction,
}

impl Placement {
    pub fn new(kind: TileKind, anchor: ExactPoint, heading: Direction) -> Self {
        Placement { kind, anchor: Anchor::Exact(anchor), heading }
    }

    pub fn triangle(anchor: ExactPoint, heading: Direction) -> Self {
        Self::new(TileKind::Triangle, anchor, heading)
    }

    pub fn shield(anchor: ExactPoint, heading: Direction) -> Self {
        Self::new(TileKind::Shield, anchor, heading)
    }

    /// The tile whose corner with `label` sits at `at` and whose sector there
    /// starts at direction `start`.
    pub fn with_corner(label: AngleLabel, at: &ExactPoint, start: Direction) -> Self {
        match label {
            AngleLabel::T => Self::triangle(at.clone(), start),
            AngleLabel::A => Self::shield(at.clone(), start),
            AngleLabel::B => {
                // the B corner is the second vertex of the walk
                let first = start.rotated(SymbolicAngle::BETA - SymbolicAngle::HALF);
                Self::shield(at.step(first.opposite()), first)
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.anchor, Anchor::Exact(_))
    }

    pub fn translated(&self, by: &ExactPoint) -> Placement {
        let anchor = match &self.anchor {
            Anchor::Exact(p) => Anchor::Exact(p + by),
            Anchor::Numeric(..) => panic!("only exact placements can be shifted by an exact vector"),
        };
        Placement { anchor, ..self.clone() }
    }

    /// Walk the boundary counter-clockwise.
    pub fn corners(&self, alpha_rad: f64) -> Vec<CornerSpec> {
        let labels = self.kind.labels();
        let mut out = Vec::with_capacity(labels.len());
        let mut pos = Pos::from_anchor(&self.anchor, alpha_rad);
        let mut d = self.heading;
        for i in 0..labels.len() {
            let next = labels[(i + 1) % labels.len()];
            let after = pos.step(d, alpha_rad);
            out.push(CornerSpec { pos, label: labels[i], start: d });
            pos = after;
            d = d.rotated(SymbolicAngle::HALF - next.angle());
        }
        out
    }

    /// Image under `p ↦ rotate(conj?(p)) + shift`, re-anchored so the walk
    /// stays counter-clockwise.
    pub fn transformed(&self, iso: &Isometry) -> Placement {
        let heading = if iso.reflect {
            let interior = self.kind.labels()[0].angle();
            self.heading.rotated(interior).conj().rotated(iso.rotation.angle())
        } else {
            self.heading.rotated(iso.rotation.angle())
        };
        let anchor = match &self.anchor {
            Anchor::Exact(p) => Anchor::Exact(iso.apply(p)),
            Anchor::Numeric(..) => panic!("isometries act on exact placements only"),
        };
        Placement { kind: self.kind, anchor, heading }
    }
}

/// A plane isometry acting exactly on [`ExactPoint`]s: optional reflection in
/// the real axis, then a rotation, then a translation.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    pub reflect: bool,
    pub rotation: Direction,
    pub shift: ExactPoint,
}

impl Isometry {
    pub fn apply(&self, p: &ExactPoint) -> ExactPoint {
        let p = if self.reflect { p.conj() } else { p.clone() };
        &p.rotated(self.rotation) + &self.shift
    }
}

#[derive(Debug, Clone)]
pub struct Tile {
    pub placement: Placement,
    pub verts: Vec<usize>,
    pub xy: Vec<Xy>,
    pub centroid: Xy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub tile: usize,
    pub label: AngleLabel,
    pub start: Direction,
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub pos: Pos,
    pub corners: Vec<Corner>,
}

/// The corners around one vertex in counter-clockwise order, and what is
/// left of the full turn.
#[derive(Debug, Clone)]
pub struct VertexStar {
    pub center: Pos,
    pub corners: Vec<Corner>,
    pub gap: SymbolicAngle,
}

impl VertexStar {
    pub fn word(&self) -> Vec<AngleLabel> {
        self.corners.iter().map(|c| c.label).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IssueKind {
    Overlap,
    EdgeMismatch,
    EdgeOverShared,
    AtlasViolation,
    OverfullVertex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Issue {
    pub kind: IssueKind,
    pub tiles: Vec<usize>,
    pub vertices: Vec<usize>,
    pub detail: String,
}

/// Every violated invariant of a patch; empty iff the patch is valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn has(&self, kind: IssueKind) -> bool {
        self.issues.iter().any(|i| i.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{:?}: {} (tiles {:?}, vertices {:?})", issue.kind, issue.detail, issue.tiles, issue.vertices)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Patch {
    alpha: AlphaSpec,
    eval_rad: f64,
    atlas: Arc<Atlas>,
    tiles: Vec<Tile>,
    vertices: Vec<Vertex>,
    exact_index: HashMap<ExactPoint, usize>,
    vertex_grid: HashMap<(i64, i64), Vec<usize>>,
    edges: HashMap<(usize, usize), Vec<usize>>,
    tile_grid: HashMap<(i64, i64), Vec<usize>>,
}

fn cell(xy: Xy, size: f64) -> (i64, i64) {
    ((xy.0 / size).floor() as i64, (xy.1 / size).floor() as i64)
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Patch {
    pub fn new(alpha: AlphaSpec) -> Self {
        Self::with_eval(alpha, alpha.eval_radians())
    }

    /// A patch whose numeric geometry is evaluated at `eval_rad` (only
    /// meaningful for symbolic α; numeric α always uses its own value).
    pub fn with_eval(alpha: AlphaSpec, eval_rad: f64) -> Self {
        let eval_rad = alpha.radians().unwrap_or(eval_rad);
        Patch {
            alpha,
            eval_rad,
            atlas: Arc::new(Atlas::new(alpha)),
            tiles: Vec::new(),
            vertices: Vec::new(),
            exact_index: HashMap::new(),
            vertex_grid: HashMap::new(),
            edges: HashMap::new(),
            tile_grid: HashMap::new(),
        }
    }

    /// Tiles of `word` placed counter-clockwise around the origin, the first
    /// sector starting at direction 0. `None` if they do not fit.
    pub fn vertex_star(alpha: AlphaSpec, word: &[AngleLabel]) -> Option<Patch> {
        let mut patch = Patch::new(alpha);
        let mut start = Direction::EAST;
        for &label in word {
            patch.add_tile(Placement::with_corner(label, &ExactPoint::origin(), start)).ok()?;
            start = start.rotated(label.angle());
        }
        Some(patch)
    }

    pub fn alpha(&self) -> &AlphaSpec {
        &self.alpha
    }

    pub fn eval_radians(&self) -> f64 {
        self.eval_rad
    }

    pub fn atlas(&self) -> &Atlas {
        &self.atlas
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn tile(&self, i: usize) -> &Tile {
        &self.tiles[i]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn placements(&self) -> impl Iterator<Item = &Placement> {
        self.tiles.iter().map(|t| &t.placement)
    }

    /// True when every tile carries an exact anchor.
    pub fn is_exact(&self) -> bool {
        self.tiles.iter().all(|t| t.placement.is_exact())
    }

    fn exact_identity(&self, pos: &Pos) -> bool {
        self.alpha.is_generic() && pos.exact.is_some()
    }

    fn vertices_near(&self, xy: Xy, radius: f64) -> impl Iterator<Item = usize> + '_ {
        let (c0, c1) = (cell((xy.0 - radius, xy.1 - radius), VERTEX_CELL), cell((xy.0 + radius, xy.1 + radius), VERTEX_CELL));
        (c0.0..=c1.0)
            .flat_map(move |i| (c0.1..=c1.1).map(move |j| (i, j)))
            .filter_map(|k| self.vertex_grid.get(&k))
            .flatten()
            .copied()
            .filter(move |&v| geom::dist(self.vertices[v].pos.xy, xy) <= radius)
    }

    fn tiles_near(&self, xy: Xy, radius: f64) -> Vec<usize> {
        let (c0, c1) = (cell((xy.0 - radius, xy.1 - radius), TILE_CELL), cell((xy.0 + radius, xy.1 + radius), TILE_CELL));
        let mut out = Vec::new();
        for i in c0.0..=c1.0 {
            for j in c0.1..=c1.1 {
                if let Some(ts) = self.tile_grid.get(&(i, j)) {
                    out.extend(ts.iter().copied().filter(|&t| geom::dist(self.tiles[t].centroid, xy) <= radius));
                }
            }
        }
        out
    }

    /// Index of the vertex at `pos`, if any.
    pub fn find_vertex(&self, pos: &Pos) -> Option<usize> {
        if self.exact_identity(pos) {
            if let Some(&v) = self.exact_index.get(pos.exact.as_ref().unwrap()) {
                return Some(v);
            }
            // vertices read from numeric anchors have no exact key
            return self.vertices_near(pos.xy, MERGE_TOLERANCE).find(|&v| self.vertices[v].pos.exact.is_none());
        }
        self.vertices_near(pos.xy, MERGE_TOLERANCE).next()
    }

    pub fn find_exact(&self, p: &ExactPoint) -> Option<usize> {
        self.find_vertex(&Pos { xy: p.to_xy(self.eval_rad), exact: Some(p.clone()) })
    }

    pub fn find_xy(&self, xy: Xy) -> Option<usize> {
        self.vertices_near(xy, MERGE_TOLERANCE).next()
    }

    pub fn star(&self, v: usize) -> VertexStar {
        let vert = &self.vertices[v];
        let mut corners = vert.corners.clone();
        corners.sort_by(|x, y| x.start.radians(self.eval_rad).total_cmp(&y.start.radians(self.eval_rad)));
        let used: SymbolicAngle = corners.iter().map(|c| c.label.angle()).sum();
        VertexStar { center: vert.pos.clone(), corners, gap: SymbolicAngle::FULL - used }
    }

    pub fn gap(&self, v: usize) -> SymbolicAngle {
        SymbolicAngle::FULL - self.vertices[v].corners.iter().map(|c| c.label.angle()).sum::<SymbolicAngle>()
    }

    /// A vertex is complete (interior) when its corners fill the full turn.
    pub fn is_complete(&self, v: usize) -> bool {
        self.alpha.angle_is_zero(self.gap(v))
    }

    pub fn config(&self, v: usize) -> Option<VertexConfig> {
        self.is_complete(v).then(|| VertexConfig::new(&self.star(v).word()))
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&v| self.is_complete(v))
    }

    pub fn edge_tiles(&self, a: usize, b: usize) -> &[usize] {
        self.edges.get(&edge_key(a, b)).map_or(&[], |v| v.as_slice())
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), &[usize])> {
        self.edges.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    /// Neighbouring vertices along edges.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.vertices[v]
            .corners
            .iter()
            .flat_map(|c| {
                let t = &self.tiles[c.tile];
                let i = t.verts.iter().position(|&x| x == v).unwrap();
                let n = t.verts.len();
                [t.verts[(i + 1) % n], t.verts[(i + n - 1) % n]]
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().filter(|(_, ts)| ts.len() == 1).map(|(k, _)| *k)
    }

    pub fn add_tile(&mut self, pl: Placement) -> Result<usize, PatchError> {
        let specs = pl.corners(self.eval_rad);
        self.check_tile(&specs)?;
        Ok(self.insert_specs(pl, specs))
    }

    /// Insert without any validity test (used by readers, so that
    /// [`Patch::validate`] can report what is wrong).
    pub fn insert_unchecked(&mut self, pl: Placement) -> usize {
        let specs = pl.corners(self.eval_rad);
        self.insert_specs(pl, specs)
    }

    fn check_tile(&self, specs: &[CornerSpec]) -> Result<(), PatchError> {
        let xy: Vec<Xy> = specs.iter().map(|c| c.pos.xy).collect();
        let centroid = geom::centroid(&xy);
        let ids: Vec<Option<usize>> = specs.iter().map(|c| self.find_vertex(&c.pos)).collect();

        for (c, id) in specs.iter().zip(&ids) {
            if id.is_none() {
                if let Some(v) = self.find_xy(c.pos.xy) {
                    return Err(PatchError::EdgeMismatch(format!(
                        "new vertex coincides numerically with vertex {v} but is a different point"
                    )));
                }
            }
        }
        let near = self.tiles_near(centroid, 2.0 * TILE_CELL);
        for &t in &near {
            if geom::interiors_overlap(&xy, &self.tiles[t].xy, TOLERANCE) {
                return Err(PatchError::Overlap { other: t });
            }
        }
        // no vertex may sit in the relative interior of an edge
        for &t in &near {
            let other = &self.tiles[t].xy;
            for (i, p) in xy.iter().enumerate() {
                if ids[i].is_some() {
                    continue;
                }
                for j in 0..other.len() {
                    if on_edge_interior(*p, other[j], other[(j + 1) % other.len()]) {
                        return Err(PatchError::EdgeMismatch(format!("new vertex lies inside an edge of tile {t}")));
                    }
                }
            }
        }
        for v in self.vertices_near(centroid, 2.0) {
            if ids.contains(&Some(v)) {
                continue;
            }
            let p = self.vertices[v].pos.xy;
            for j in 0..xy.len() {
                if on_edge_interior(p, xy[j], xy[(j + 1) % xy.len()]) {
                    return Err(PatchError::EdgeMismatch(format!("vertex {v} lies inside a new edge")));
                }
            }
        }
        for (c, id) in specs.iter().zip(&ids) {
            let Some(v) = *id else { continue };
            let mut labels: Vec<(Direction, AngleLabel)> =
                self.vertices[v].corners.iter().map(|k| (k.start, k.label)).collect();
            labels.push((c.start, c.label));
            self.check_star(v, &labels)?;
        }
        Ok(())
    }

    fn check_star(&self, v: usize, corners: &[(Direction, AngleLabel)]) -> Result<(), PatchError> {
        let gap = SymbolicAngle::FULL - corners.iter().map(|c| c.1.angle()).sum::<SymbolicAngle>();
        let mut sorted = corners.to_vec();
        sorted.sort_by(|x, y| x.0.radians(self.eval_rad).total_cmp(&y.0.radians(self.eval_rad)));
        let word = || sorted.iter().map(|c| c.1.as_char()).collect::<String>();
        if self.alpha.angle_is_zero(gap) {
            let labels: Vec<AngleLabel> = sorted.iter().map(|c| c.1).collect();
            if !self.atlas.contains(&VertexConfig::new(&labels)) {
                return Err(PatchError::AtlasViolation { vertex: v, word: word() });
            }
        } else {
            let g = gap.eval(self.eval_rad);
            if g.abs() < TOLERANCE || self.alpha.compare_angles(gap, SymbolicAngle::ZERO) == Ordering::Less {
                return Err(PatchError::AtlasViolation { vertex: v, word: word() });
            }
        }
        Ok(())
    }

    fn insert_specs(&mut self, pl: Placement, specs: Vec<CornerSpec>) -> usize {
        let tid = self.tiles.len();
        let mut verts = Vec::with_capacity(specs.len());
        let mut xy = Vec::with_capacity(specs.len());
        for c in specs {
            let v = match self.find_vertex(&c.pos) {
                Some(v) => v,
                None => {
                    let v = self.vertices.len();
                    if let (true, Some(e)) = (self.alpha.is_generic(), &c.pos.exact) {
                        self.exact_index.insert(e.clone(), v);
                    }
                    self.vertex_grid.entry(cell(c.pos.xy, VERTEX_CELL)).or_default().push(v);
                    self.vertices.push(Vertex { pos: c.pos.clone(), corners: Vec::new() });
                    v
                }
            };
            self.vertices[v].corners.push(Corner { tile: tid, label: c.label, start: c.start });
            verts.push(v);
            xy.push(c.pos.xy);
        }
        for i in 0..verts.len() {
            self.edges.entry(edge_key(verts[i], verts[(i + 1) % verts.len()])).or_default().push(tid);
        }
        let centroid = geom::centroid(&xy);
        self.tile_grid.entry(cell(centroid, TILE_CELL)).or_default().push(tid);
        self.tiles.push(Tile { placement: pl, verts, xy, centroid });
        tid
    }

    /// Remove the most recently added tile, undoing every index update.
    pub fn pop_tile(&mut self) -> Option<Placement> {
        let tile = self.tiles.pop()?;
        let tid = self.tiles.len();
        for i in 0..tile.verts.len() {
            let k = edge_key(tile.verts[i], tile.verts[(i + 1) % tile.verts.len()]);
            if let Some(ts) = self.edges.get_mut(&k) {
                ts.retain(|&t| t != tid);
                if ts.is_empty() {
                    self.edges.remove(&k);
                }
            }
        }
        for &v in &tile.verts {
            self.vertices[v].corners.retain(|c| c.tile != tid);
        }
        if let Some(ts) = self.tile_grid.get_mut(&cell(tile.centroid, TILE_CELL)) {
            ts.retain(|&t| t != tid);
        }
        while self.vertices.last().is_some_and(|v| v.corners.is_empty()) {
            let v = self.vertices.len() - 1;
            let vert = self.vertices.pop().unwrap();
            if let Some(e) = &vert.pos.exact {
                if self.exact_index.get(e) == Some(&v) {
                    self.exact_index.remove(e);
                }
            }
            if let Some(vs) = self.vertex_grid.get_mut(&cell(vert.pos.xy, VERTEX_CELL)) {
                vs.retain(|&x| x != v);
            }
        }
        Some(tile.placement)
    }

    /// A new patch with the same α holding only the tiles selected by `keep`.
    pub fn retain_tiles(&self, mut keep: impl FnMut(usize, &Tile) -> bool) -> Patch {
        let mut out = Patch::with_eval(self.alpha, self.eval_rad);
        for (i, t) in self.tiles.iter().enumerate() {
            if keep(i, t) {
                out.insert_unchecked(t.placement.clone());
            }
        }
        out
    }

    /// Full re-check of every invariant, independent of how the patch was
    /// built.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for (i, t) in self.tiles.iter().enumerate() {
            for j in self.tiles_near(t.centroid, 2.0 * TILE_CELL) {
                if j <= i {
                    continue;
                }
                if geom::interiors_overlap(&t.xy, &self.tiles[j].xy, TOLERANCE) {
                    issues.push(Issue {
                        kind: IssueKind::Overlap,
                        tiles: vec![i, j],
                        vertices: vec![],
                        detail: "tile interiors overlap".into(),
                    });
                }
            }
        }
        for (v, vert) in self.vertices.iter().enumerate() {
            for t in self.tiles_near(vert.pos.xy, 2.0 * TILE_CELL) {
                let tile = &self.tiles[t];
                if tile.verts.contains(&v) {
                    continue;
                }
                let n = tile.xy.len();
                if (0..n).any(|j| on_edge_interior(vert.pos.xy, tile.xy[j], tile.xy[(j + 1) % n])) {
                    issues.push(Issue {
                        kind: IssueKind::EdgeMismatch,
                        tiles: vec![t],
                        vertices: vec![v],
                        detail: "vertex lies inside an edge".into(),
                    });
                }
            }
            if let Some(w) = self.vertices_near(vert.pos.xy, MERGE_TOLERANCE).find(|&w| w != v) {
                if w > v {
                    issues.push(Issue {
                        kind: IssueKind::EdgeMismatch,
                        tiles: vec![],
                        vertices: vec![v, w],
                        detail: "distinct vertices at the same position".into(),
                    });
                }
            }
        }
        let mut over: Vec<_> = self.edges.iter().filter(|(_, ts)| ts.len() > 2).collect();
        over.sort();
        for (&(a, b), ts) in over {
            issues.push(Issue {
                kind: IssueKind::EdgeOverShared,
                tiles: ts.clone(),
                vertices: vec![a, b],
                detail: format!("edge shared by {} tiles", ts.len()),
            });
        }
        for v in 0..self.vertices.len() {
            let star = self.star(v);
            let word: String = star.word().iter().map(|l| l.as_char()).collect();
            if self.alpha.angle_is_zero(star.gap) {
                if !self.atlas.contains(&VertexConfig::new(&star.word())) {
                    issues.push(Issue {
                        kind: IssueKind::AtlasViolation,
                        tiles: star.corners.iter().map(|c| c.tile).collect(),
                        vertices: vec![v],
                        detail: format!("star {word} is not in the atlas"),
                    });
                }
            } else if star.gap.eval(self.eval_rad).abs() < TOLERANCE {
                issues.push(Issue {
                    kind: IssueKind::AtlasViolation,
                    tiles: star.corners.iter().map(|c| c.tile).collect(),
                    vertices: vec![v],
                    detail: format!("star {word} closes only at this particular α"),
                });
            } else if self.alpha.compare_angles(star.gap, SymbolicAngle::ZERO) == Ordering::Less {
                issues.push(Issue {
                    kind: IssueKind::OverfullVertex,
                    tiles: star.corners.iter().map(|c| c.tile).collect(),
                    vertices: vec![v],
                    detail: format!("corners {word} exceed a full turn"),
                });
            }
        }
        ValidationReport { issues }
    }

    /// Is the closed disk of radius `n` about vertex `center` inside the
    /// union of the tiles? Equivalent to: no boundary edge comes within `n`.
    pub fn covers_disk(&self, center: usize, n: f64) -> bool {
        let c = self.vertices[center].pos.xy;
        self.boundary_edges().all(|(a, b)| {
            let (d, _) = geom::point_segment(c, self.vertices[a].pos.xy, self.vertices[b].pos.xy);
            d > n + TOLERANCE
        })
    }

    pub fn extract_ball(&self, center: usize, n: f64) -> Result<PatternBall, PatchError> {
        if center >= self.vertices.len() {
            return Err(PatchError::NoSuchVertex(center));
        }
        if !self.covers_disk(center, n) {
            return Err(PatchError::IncompleteCoverage { center, radius: n });
        }
        let c = self.vertices[center].pos.xy;
        let tiles: Vec<usize> = self
            .tiles_near(c, n + 2.0 * TILE_CELL)
            .into_iter()
            .filter(|&t| geom::point_polygon(&self.tiles[t].xy, c) <= n + TOLERANCE)
            .collect();
        Ok(self.make_ball(center, n, tiles))
    }

    fn make_ball(&self, center: usize, n: f64, mut tiles: Vec<usize>) -> PatternBall {
        tiles.sort_unstable();
        let key = self.canonical_key_of(center, &tiles);
        PatternBall {
            center: self.vertices[center].pos.clone(),
            radius: n,
            tiles: tiles.iter().map(|&t| self.tiles[t].placement.clone()).collect(),
            alpha: self.alpha,
            eval_rad: self.eval_rad,
            key,
        }
    }

    /// Distinct edge directions at a vertex.
    fn edge_directions(&self, v: usize) -> Vec<Direction> {
        let mut dirs: Vec<Direction> = Vec::new();
        for c in &self.vertices[v].corners {
            for d in [c.start, c.start.rotated(c.label.angle())] {
                if !dirs.iter().any(|&e| self.alpha.directions_equal(e, d)) {
                    dirs.push(d);
                }
            }
        }
        dirs
    }

    fn canonical_key_of(&self, center: usize, tiles: &[usize]) -> String {
        let mut verts: Vec<usize> = tiles.iter().flat_map(|&t| self.tiles[t].verts.iter().copied()).collect();
        verts.sort_unstable();
        verts.dedup();
        let slot: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let exact = self.alpha.is_generic()
            && self.vertices[center].pos.exact.is_some()
            && verts.iter().all(|&v| self.vertices[v].pos.exact.is_some());
        let origin = &self.vertices[center].pos;
        let mut best: Option<String> = None;
        for d in self.edge_directions(center) {
            for reflect in [false, true] {
                let names: Vec<String> = verts
                    .iter()
                    .map(|&v| {
                        let pos = &self.vertices[v].pos;
                        if exact {
                            let rel = pos.exact.as_ref().unwrap() - origin.exact.as_ref().unwrap();
                            let r = rel.rotated(Direction::new(-d.a(), -d.b()));
                            if reflect { r.conj() } else { r }.to_string()
                        } else {
                            let th = -d.radians(self.eval_rad);
                            let (x, y) = (pos.xy.0 - origin.xy.0, pos.xy.1 - origin.xy.1);
                            let (s, c) = th.sin_cos();
                            let (rx, ry) = (x * c - y * s, x * s + y * c);
                            let ry = if reflect { -ry } else { ry };
                            format!("{},{}", (rx * 1e6).round() as i64, (ry * 1e6).round() as i64)
                        }
                    })
                    .collect();
                let mut parts: Vec<String> = tiles
                    .iter()
                    .map(|&t| {
                        let tile = &self.tiles[t];
                        let mut vs: Vec<&str> = tile.verts.iter().map(|v| names[slot[v]].as_str()).collect();
                        vs.sort_unstable();
                        format!("{}[{}]", tile.placement.kind.letter(), vs.join(" "))
                    })
                    .collect();
                parts.sort_unstable();
                let key = parts.join("|");
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        format!("{}#{}", if exact { "exact" } else { "num" }, best.unwrap_or_default())
    }

    /// Key of the whole patch about a numeric origin, minimized over the
    /// given frame rotations (and their mirror images when `mirror` is set).
    pub fn frame_key(&self, origin: Xy, rotations: &[f64], mirror: bool) -> String {
        let mut best: Option<String> = None;
        for &th in rotations {
            for reflect in [false, mirror] {
                let (s, c) = (-th).sin_cos();
                let mut parts: Vec<String> = self
                    .tiles
                    .iter()
                    .map(|t| {
                        let mut vs: Vec<String> = t
                            .xy
                            .iter()
                            .map(|&(x, y)| {
                                let (x, y) = (x - origin.0, y - origin.1);
                                let (rx, ry) = (x * c - y * s, x * s + y * c);
                                let ry = if reflect { -ry } else { ry };
                                format!("{},{}", (rx * 1e6).round() as i64, (ry * 1e6).round() as i64)
                            })
                            .collect();
                        vs.sort_unstable();
                        format!("{}[{}]", t.placement.kind.letter(), vs.join(" "))
                    })
                    .collect();
                parts.sort_unstable();
                let key = parts.join("|");
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// A structural fingerprint independent of insertion order: tile vertex
    /// sets, vertex positions and edges, all by coordinates.
    pub fn fingerprint(&self) -> (Vec<String>, Vec<String>, Vec<String>) {
        let name = |v: usize| {
            let p = &self.vertices[v].pos;
            match (&p.exact, self.alpha.is_generic()) {
                (Some(e), true) => e.to_string(),
                _ => format!("{},{}", (p.xy.0 * 1e6).round() as i64, (p.xy.1 * 1e6).round() as i64),
            }
        };
        let mut tiles: Vec<String> = self
            .tiles
            .iter()
            .map(|t| {
                let mut vs: Vec<String> = t.verts.iter().map(|&v| name(v)).collect();
                vs.sort();
                format!("{}{:?}", t.placement.kind.letter(), vs)
            })
            .collect();
        tiles.sort();
        let mut verts: Vec<String> = (0..self.vertices.len()).map(name).collect();
        verts.sort();
        let mut edges: Vec<String> = self
            .edges
            .iter()
            .map(|(&(a, b), ts)| {
                let (x, y) = (name(a), name(b));
                let (x, y) = if x <= y { (x, y) } else { (y, x) };
                format!("{x}-{y}:{}", ts.len())
            })
            .collect();
        edges.sort();
        (tiles, verts, edges)
    }

    /// Census of complete vertex configurations.
    pub fn configs(&self) -> BTreeSet<VertexConfig> {
        self.interior_vertices().filter_map(|v| self.config(v)).collect()
    }
}

fn on_edge_interior(p: Xy, a: Xy, b: Xy) -> bool {
    let (d, t) = geom::point_segment(p, a, b);
    d < MERGE_TOLERANCE && t > 1e-6 && t < 1.0 - 1e-6
}

/// The tiles of a patch meeting the closed disk of radius `radius` about a
/// vertex, with an isometry-invariant key.
#[derive(Debug, Clone)]
pub struct PatternBall {
    pub center: Pos,
    pub radius: f64,
    pub tiles: Vec<Placement>,
    pub alpha: AlphaSpec,
    eval_rad: f64,
    key: String,
}

impl PatternBall {
    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn to_patch(&self) -> Patch {
        let mut p = Patch::with_eval(self.alpha, self.eval_rad);
        for t in &self.tiles {
            p.insert_unchecked(t.clone());
        }
        p
    }

    pub fn center_anchor(&self) -> Anchor {
        self.center.to_anchor()
    }
}

/// Canonical key of a ball: equal for two balls iff a plane isometry fixing
/// the centre maps one onto the other.
pub fn canonical_key(ball: &PatternBall) -> String {
    ball.key.clone()
}
