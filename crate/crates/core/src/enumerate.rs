//! Exhaustive backtracking completion of patches.
//!
//! One depth-first engine serves every search in the crate. At each node it
//! picks the unfinished vertex closest to the target, finds the first free
//! sector there (the end of some corner that no other corner continues) and
//! branches on the three ways a tile can occupy that sector: a triangle
//! corner, a shield α corner or a shield β corner. Every completion has
//! exactly one of these at that spot, so the search is exhaustive.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use crate::angle::{AlphaSpec, Direction, ExactPoint, SymbolicAngle, TOLERANCE};
use crate::atlas::AngleLabel;
use crate::error::SearchError;
use crate::geom::{self, Xy};
use crate::patch::{PatternBall, Patch, Placement, TileKind};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Maximum number of search nodes, shared by nested searches.
    pub budget: u64,
    pub time_limit: Option<Duration>,
    /// Gap feasibility and partial-star embedding tests after each tile.
    pub pruning: bool,
    /// A ball of radius n only counts once it extends to radius n + lookahead.
    pub lookahead: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, time_limit: Some(Duration::from_secs(3600)), pruning: true, lookahead: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

/// A convex region to be tiled exactly, given by its corners in
/// counter-clockwise order. Outside each corner sits a wall that takes the
/// exterior angle, so corners are completed like ordinary vertices.
#[derive(Debug, Clone)]
pub struct Container {
    corners: Vec<ExactPoint>,
    xy: Vec<Xy>,
    walls: Vec<(Direction, SymbolicAngle)>,
}

impl Container {
    /// Walk unit edges in the given directions from the origin.
    pub fn from_directions(dirs: &[Direction], alpha: &AlphaSpec) -> Self {
        let al = alpha.eval_radians();
        let mut corners = vec![ExactPoint::origin()];
        for d in &dirs[..dirs.len() - 1] {
            let next = corners.last().unwrap().step(*d);
            corners.push(next);
        }
        let n = dirs.len();
        let walls = (0..n)
            .map(|i| {
                let incoming = dirs[(i + n - 1) % n];
                let back = incoming.opposite();
                let interior = alpha.ccw_between(dirs[i], back);
                (back, SymbolicAngle::FULL - interior)
            })
            .collect();
        let xy = corners.iter().map(|p| p.to_xy(al)).collect();
        Container { corners, xy, walls }
    }

    pub fn corners(&self) -> &[ExactPoint] {
        &self.corners
    }

    pub fn polygon(&self) -> &[Xy] {
        &self.xy
    }

    pub fn center(&self) -> Xy {
        geom::centroid(&self.xy)
    }

    fn holds(&self, tile: &[Xy]) -> bool {
        tile.iter().all(|&p| geom::contains(&self.xy, p, 1e-7))
    }
}

enum Goal<'c> {
    /// Cover the closed disk about a point.
    Disk { center: ExactPoint, xy: Xy, radius: f64 },
    /// Complete every vertex within `depth` edges of a vertex.
    Rings { center: ExactPoint, depth: usize },
    Fill(&'c Container),
}

/// An unfinished vertex: its position and the corners already around it
/// (walls included).
struct Open {
    at: ExactPoint,
    corners: Vec<(Direction, SymbolicAngle)>,
}

struct Engine<'a> {
    alpha: AlphaSpec,
    opts: &'a SearchOptions,
    nodes: &'a Cell<u64>,
    started: Instant,
}

fn budget_error(nodes: u64) -> SearchError {
    SearchError::BudgetExceeded { nodes, partial: Vec::new() }
}

impl<'a> Engine<'a> {
    fn new(alpha: AlphaSpec, opts: &'a SearchOptions, nodes: &'a Cell<u64>) -> Self {
        Engine { alpha, opts, nodes, started: Instant::now() }
    }

    fn tick(&self) -> Result<(), SearchError> {
        let n = self.nodes.get() + 1;
        self.nodes.set(n);
        let late = n.is_multiple_of(4096) && self.opts.time_limit.is_some_and(|t| self.started.elapsed() > t);
        if n > self.opts.budget || late {
            return Err(budget_error(n));
        }
        Ok(())
    }

    fn search(
        &self,
        patch: &mut Patch,
        goal: &Goal,
        leaf: &mut dyn FnMut(&mut Patch) -> Result<Flow, SearchError>,
    ) -> Result<Flow, SearchError> {
        self.tick()?;
        let Some(open) = self.frontier(patch, goal) else {
            return leaf(patch);
        };
        let start = self.free_start(&open.corners);
        for label in [AngleLabel::T, AngleLabel::A, AngleLabel::B] {
            let pl = Placement::with_corner(label, &open.at, start);
            if let Goal::Fill(c) = goal {
                let xy: Vec<Xy> = pl.corners(patch.eval_radians()).iter().map(|c| c.pos.xy).collect();
                if !c.holds(&xy) {
                    continue;
                }
            }
            let Ok(t) = patch.add_tile(pl) else { continue };
            let keep = !self.opts.pruning || self.locally_feasible(patch, t, goal);
            let flow = if keep { self.search(patch, goal, leaf) } else { Ok(Flow::Continue) };
            patch.pop_tile();
            if flow? == Flow::Stop {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    fn corners_at(&self, patch: &Patch, v: usize) -> Vec<(Direction, SymbolicAngle)> {
        patch.vertex(v).corners.iter().map(|c| (c.start, c.label.angle())).collect()
    }

    fn wall_at(&self, patch: &Patch, goal: &Goal, v: usize) -> Option<(Direction, SymbolicAngle)> {
        let Goal::Fill(c) = goal else { return None };
        let p = patch.vertex(v).pos.xy;
        c.xy.iter().position(|&q| geom::dist(p, q) < 1e-7).map(|i| c.walls[i])
    }

    fn open_at(&self, patch: &Patch, goal: &Goal, v: usize) -> Option<Open> {
        let mut corners = self.corners_at(patch, v);
        corners.extend(self.wall_at(patch, goal, v));
        let used: SymbolicAngle = corners.iter().map(|c| c.1).sum();
        if self.alpha.angle_is_zero(SymbolicAngle::FULL - used) {
            return None;
        }
        Some(Open { at: patch.vertex(v).pos.exact.clone().expect("search patches are exact"), corners })
    }

    fn frontier(&self, patch: &Patch, goal: &Goal) -> Option<Open> {
        match goal {
            Goal::Disk { center, xy, radius } => {
                let Some(cv) = patch.find_exact(center) else {
                    return Some(Open { at: center.clone(), corners: Vec::new() });
                };
                let _ = cv;
                let mut best: Option<(f64, usize)> = None;
                for (a, b) in patch.boundary_edges() {
                    let (pa, pb) = (patch.vertex(a).pos.xy, patch.vertex(b).pos.xy);
                    if geom::point_segment(*xy, pa, pb).0 > radius + TOLERANCE {
                        continue;
                    }
                    for v in [a, b] {
                        let d = geom::dist(*xy, patch.vertex(v).pos.xy);
                        if best.is_none_or(|(bd, bv)| self.closer(patch, (d, v), (bd, bv))) {
                            best = Some((d, v));
                        }
                    }
                }
                best.and_then(|(_, v)| self.open_at(patch, goal, v))
            }
            Goal::Rings { center, depth } => {
                let cv = patch.find_exact(center)?;
                let dist = graph_distances(patch, cv, *depth);
                let origin = patch.vertex(cv).pos.xy;
                let mut best: Option<(usize, f64, usize)> = None;
                for (v, &g) in dist.iter().enumerate() {
                    if g > *depth || patch.is_complete(v) {
                        continue;
                    }
                    let d = geom::dist(origin, patch.vertex(v).pos.xy);
                    let better = match best {
                        None => true,
                        Some((bg, bd, bv)) => g < bg || (g == bg && self.closer(patch, (d, v), (bd, bv))),
                    };
                    if better {
                        best = Some((g, d, v));
                    }
                }
                best.and_then(|(_, _, v)| self.open_at(patch, goal, v))
            }
            Goal::Fill(c) => {
                for (i, p) in c.corners.iter().enumerate() {
                    match patch.find_exact(p) {
                        None => return Some(Open { at: p.clone(), corners: vec![c.walls[i]] }),
                        Some(v) => {
                            if let Some(open) = self.open_at(patch, goal, v) {
                                return Some(open);
                            }
                        }
                    }
                }
                let mid = c.center();
                let mut best: Option<(f64, usize)> = None;
                for v in 0..patch.vertices().len() {
                    if self.wall_at(patch, goal, v).is_some() || patch.is_complete(v) {
                        continue;
                    }
                    let d = geom::dist(mid, patch.vertex(v).pos.xy);
                    if best.is_none_or(|(bd, bv)| self.closer(patch, (d, v), (bd, bv))) {
                        best = Some((d, v));
                    }
                }
                best.and_then(|(_, v)| self.open_at(patch, goal, v))
            }
        }
    }

    /// Deterministic order: distance, then exact position.
    fn closer(&self, patch: &Patch, x: (f64, usize), y: (f64, usize)) -> bool {
        if (x.0 - y.0).abs() > 1e-9 {
            return x.0 < y.0;
        }
        let (px, py) = (&patch.vertex(x.1).pos.exact, &patch.vertex(y.1).pos.exact);
        px.cmp(py) == Ordering::Less
    }

    /// The first direction at which a sector ends without another beginning.
    fn free_start(&self, corners: &[(Direction, SymbolicAngle)]) -> Direction {
        let al = self.alpha.eval_radians();
        let mut sorted = corners.to_vec();
        sorted.sort_by(|x, y| x.0.radians(al).total_cmp(&y.0.radians(al)));
        for (d, a) in &sorted {
            let end = d.rotated(*a);
            if !sorted.iter().any(|(e, _)| self.alpha.directions_equal(*e, end)) {
                return end;
            }
        }
        Direction::EAST
    }

    fn locally_feasible(&self, patch: &Patch, t: usize, goal: &Goal) -> bool {
        patch.tile(t).verts.iter().all(|&v| {
            if patch.is_complete(v) {
                return true;
            }
            let wall = self.wall_at(patch, goal, v);
            let mut used: SymbolicAngle = patch.vertex(v).corners.iter().map(|c| c.label.angle()).sum();
            if let Some(w) = wall {
                used = used + w.1;
            }
            let gap = SymbolicAngle::FULL - used;
            if !patch.atlas().gap_feasible(gap) {
                return false;
            }
            if wall.is_some() {
                return true;
            }
            let star: Vec<(Direction, AngleLabel)> = patch.vertex(v).corners.iter().map(|c| (c.start, c.label)).collect();
            patch.atlas().embeds(&star)
        })
    }
}

/// Breadth-first edge distances from `from`, capped at `limit + 1`.
fn graph_distances(patch: &Patch, from: usize, limit: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; patch.vertices().len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if dist[v] > limit {
            continue;
        }
        for w in patch.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All distinct radius-`n` balls, keyed canonically.
#[derive(Debug, Clone)]
pub struct BallSet {
    pub balls: BTreeMap<String, PatternBall>,
    /// Distinct balls that covered the disk but could not be extended by the
    /// lookahead margin.
    pub dead_ends: usize,
    pub nodes: u64,
}

impl BallSet {
    pub fn keys(&self) -> BTreeSet<String> {
        self.balls.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }
}

/// Every ball of radius `n` about `center` over all valid completions of
/// `seed` that cover the disk. An empty seed fixes the first tile at the
/// center to start in direction 0.
pub fn complete_ball(seed: &Patch, center: &ExactPoint, n: f64, opts: &SearchOptions) -> Result<BallSet, SearchError> {
    if !seed.is_empty() && seed.find_exact(center).is_none() {
        return Err(SearchError::BadCenter);
    }
    let alpha = *seed.alpha();
    let nodes = Cell::new(0);
    let engine = Engine::new(alpha, opts, &nodes);
    let xy = center.to_xy(seed.eval_radians());
    let goal = Goal::Disk { center: center.clone(), xy, radius: n };
    let wider = Goal::Disk { center: center.clone(), xy, radius: n + opts.lookahead };
    let mut balls = BTreeMap::new();
    let mut rejected = BTreeSet::new();
    let mut leaf = |p: &mut Patch| -> Result<Flow, SearchError> {
        let cv = p.find_exact(center).expect("center is covered");
        let ball = p.extract_ball(cv, n).expect("disk is covered at a leaf");
        let key = ball.key().to_string();
        if balls.contains_key(&key) || rejected.contains(&key) {
            return Ok(Flow::Continue);
        }
        let extends = opts.lookahead <= 0.0 || {
            let mut q = ball.to_patch();
            engine.search(&mut q, &wider, &mut |_| Ok(Flow::Stop))? == Flow::Stop
        };
        if extends {
            balls.insert(key, ball);
        } else {
            rejected.insert(key);
        }
        Ok(Flow::Continue)
    };
    let mut patch = seed.clone();
    let outcome = engine.search(&mut patch, &goal, &mut leaf);
    let dead_ends = rejected.len();
    match outcome {
        Ok(_) => Ok(BallSet { balls, dead_ends, nodes: nodes.get() }),
        Err(SearchError::BudgetExceeded { nodes, .. }) => {
            Err(SearchError::BudgetExceeded { nodes, partial: balls.into_keys().collect() })
        }
        Err(e) => Err(e),
    }
}

/// P_n: the number of distinct vertex-centred balls of radius `n`, up to
/// isometry.
#[derive(Debug, Clone)]
pub struct PatternCount {
    pub n: f64,
    pub alpha: AlphaSpec,
    pub count: usize,
    pub patterns: BTreeSet<String>,
    pub nodes: u64,
}

pub fn count_patterns(n: f64, alpha: AlphaSpec, opts: &SearchOptions) -> Result<PatternCount, SearchError> {
    let set = complete_ball(&Patch::new(alpha), &ExactPoint::origin(), n, opts)?;
    Ok(PatternCount { n, alpha, count: set.len(), patterns: set.keys(), nodes: set.nodes })
}

/// Some valid completion of `seed` in which every vertex within `depth`
/// edges of `center` is complete, or `None` if there is none.
pub fn extend_to_rings(seed: &Patch, center: usize, depth: usize, opts: &SearchOptions) -> Result<Option<Patch>, SearchError> {
    let alpha = *seed.alpha();
    let nodes = Cell::new(0);
    let engine = Engine::new(alpha, opts, &nodes);
    let at = seed.vertex(center).pos.exact.clone().expect("search patches are exact");
    let goal = Goal::Rings { center: at, depth };
    let mut found = None;
    let mut patch = seed.clone();
    engine.search(&mut patch, &goal, &mut |p| {
        found = Some(p.clone());
        Ok(Flow::Stop)
    })?;
    Ok(found)
}

/// Every exact tiling of a container, in a fixed frame (distinct tile sets).
pub fn fill_container(container: &Container, alpha: AlphaSpec, opts: &SearchOptions) -> Result<Vec<Patch>, SearchError> {
    let nodes = Cell::new(0);
    let engine = Engine::new(alpha, opts, &nodes);
    let goal = Goal::Fill(container);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut patch = Patch::new(alpha);
    engine.search(&mut patch, &goal, &mut |p| {
        if seen.insert(p.frame_key((0.0, 0.0), &[0.0], false)) {
            out.push(p.retain_tiles(|_, _| true));
        }
        Ok(Flow::Continue)
    })?;
    Ok(out)
}

/// The unit regular dodecagon with corner 0 at the origin and edge `i`
/// pointing at `i·30°`.
pub fn dodecagon() -> Container {
    let alpha = AlphaSpec::right();
    let step = SymbolicAngle::new(-1, 1);
    let dirs: Vec<Direction> = (0..12).map(|i| Direction::from(step * i)).collect();
    Container::from_directions(&dirs, &alpha)
}

/// A filling of the dodecagon by right shields and triangles.
#[derive(Debug, Clone)]
pub struct Filling {
    pub patch: Patch,
    /// Key in the dodecagon's own frame (distinct for distinct fillings).
    pub key: String,
    /// Key up to the isometries of the dodecagon.
    pub shape_key: String,
}

/// All fillings of the unit dodecagon at α = π/2, sorted by key. The
/// position in this list is the filling index used by the dodecagon
/// generator.
pub fn dodecagon_fillings() -> Vec<Filling> {
    let c = dodecagon();
    let patches = fill_container(&c, AlphaSpec::right(), &SearchOptions::default()).expect("dodecagon search is small");
    let center = c.center();
    let turns: Vec<f64> = (0..12).map(|i| i as f64 * PI / 6.0).collect();
    let mut out: Vec<Filling> = patches
        .into_iter()
        .map(|patch| Filling {
            key: patch.frame_key(center, &[0.0], false),
            shape_key: patch.frame_key(center, &turns, true),
            patch,
        })
        .collect();
    out.sort_by(|a, b| a.key.cmp(&b.key));
    out
}

/// Side of the triangular lattice of dodecagon centres (edge-sharing
/// neighbours).
pub fn dodecagon_spacing() -> f64 {
    2.0 + 3f64.sqrt()
}

/// D(n): dodecagons of the packing lying wholly inside the disk of radius
/// `n` about a dodecagon corner.
pub fn dodecagons_in_disk(n: f64) -> usize {
    let s = dodecagon_spacing();
    let c = dodecagon();
    let center = c.center();
    let rel: Vec<Xy> = c.polygon().iter().map(|p| (p.0 - center.0, p.1 - center.1)).collect();
    let origin = (-center.0, -center.1);
    let m = (n / s).ceil() as i64 + 2;
    let mut count = 0;
    for i in -2 * m..=2 * m {
        for j in -2 * m..=2 * m {
            let cx = i as f64 * s + j as f64 * s / 2.0;
            let cy = j as f64 * s * 3f64.sqrt() / 2.0;
            if rel.iter().all(|p| geom::dist((cx + p.0, cy + p.1), origin) <= n + TOLERANCE) {
                count += 1;
            }
        }
    }
    count
}

/// The lower bound log(3)·D(n)/n² on log(P_n)/n² for right shields.
pub fn entropy_bound(n: u32) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    3f64.ln() * dodecagons_in_disk(n) as f64 / (n * n)
}

/// Number of triangles and shields, for reports.
pub fn tile_census(patch: &Patch) -> (usize, usize) {
    let t = patch.tiles().iter().filter(|t| t.placement.kind == TileKind::Triangle).count();
    (t, patch.tiles().len() - t)
}
