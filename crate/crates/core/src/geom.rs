//! Floating point predicates on small convex polygons.

pub type Xy = (f64, f64);

fn sub(a: Xy, b: Xy) -> Xy {
    (a.0 - b.0, a.1 - b.1)
}

fn dot(a: Xy, b: Xy) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

fn cross(a: Xy, b: Xy) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

pub fn dist(a: Xy, b: Xy) -> f64 {
    let d = sub(a, b);
    dot(d, d).sqrt()
}

fn project(poly: &[Xy], axis: Xy) -> (f64, f64) {
    poly.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| {
        let t = dot(p, axis);
        (lo.min(t), hi.max(t))
    })
}

/// Do the interiors of two convex polygons intersect by more than `eps`?
/// Separating axis test over the edge normals of both polygons.
pub fn interiors_overlap(p: &[Xy], q: &[Xy], eps: f64) -> bool {
    for poly in [p, q] {
        for i in 0..poly.len() {
            let e = sub(poly[(i + 1) % poly.len()], poly[i]);
            let len = dot(e, e).sqrt();
            let axis = (-e.1 / len, e.0 / len);
            let (a0, a1) = project(p, axis);
            let (b0, b1) = project(q, axis);
            if a1 <= b0 + eps || b1 <= a0 + eps {
                return false;
            }
        }
    }
    true
}

/// Distance from a point to a closed segment, plus the segment parameter of
/// the closest point.
pub fn point_segment(p: Xy, a: Xy, b: Xy) -> (f64, f64) {
    let ab = sub(b, a);
    let t = (dot(sub(p, a), ab) / dot(ab, ab)).clamp(0.0, 1.0);
    let c = (a.0 + t * ab.0, a.1 + t * ab.1);
    (dist(p, c), t)
}

/// Is `p` inside (or on) the counter-clockwise convex polygon?
pub fn contains(poly: &[Xy], p: Xy, eps: f64) -> bool {
    (0..poly.len()).all(|i| {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let e = sub(b, a);
        cross(e, sub(p, a)) / dot(e, e).sqrt() >= -eps
    })
}

/// Distance from a point to a closed convex polygon (zero inside).
pub fn point_polygon(poly: &[Xy], p: Xy) -> f64 {
    if contains(poly, p, 0.0) {
        return 0.0;
    }
    (0..poly.len()).map(|i| point_segment(p, poly[i], poly[(i + 1) % poly.len()]).0).fold(f64::INFINITY, f64::min)
}

pub fn centroid(poly: &[Xy]) -> Xy {
    let n = poly.len() as f64;
    let (x, y) = poly.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    (x / n, y / n)
}

#[cfg(test)]
pub fn signed_area(poly: &[Xy]) -> f64 {
    0.5 * (0..poly.len()).map(|i| cross(poly[i], poly[(i + 1) % poly.len()])).sum::<f64>()
}
