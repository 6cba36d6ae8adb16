//! The disk radius r ≈ 0.54 of the triangulated disk packing associated with
//! shield tilings at α ≈ 99.34°.

/// Coefficients of P, highest degree first.
pub const POLY: [f64; 9] = [1.0, -8.0, -44.0, -232.0, -482.0, -24.0, 388.0, -120.0, 9.0];

/// The α value quoted alongside r, in degrees.
pub const PACKING_ALPHA_DEG: f64 = 99.34;

pub const RESIDUAL_BOUND: f64 = 1e-10;

pub fn eval(x: f64) -> f64 {
    POLY.iter().fold(0.0, |acc, c| acc * x + c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskRadius {
    pub value: f64,
    pub residual: f64,
}

/// Refine a bracketing interval until |P| drops below the bound or the
/// interval stops shrinking.
fn bisect(mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = eval(lo);
    debug_assert!(flo * eval(hi) <= 0.0);
    loop {
        let mid = 0.5 * (lo + hi);
        let fm = eval(mid);
        if fm.abs() < RESIDUAL_BOUND * 1e-2 || mid <= lo || mid >= hi {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
}

/// Every real root in (0, 1), isolated by sign changes on a grid of step
/// 10⁻³ and refined by bisection.
pub fn roots_in_unit_interval() -> Vec<DiskRadius> {
    let steps = 1000;
    let mut out = Vec::new();
    for i in 0..steps {
        let (a, b) = (i as f64 / steps as f64, (i + 1) as f64 / steps as f64);
        let (fa, fb) = (eval(a), eval(b));
        if fa == 0.0 && i > 0 {
            out.push(DiskRadius { value: a, residual: 0.0 });
        } else if fa * fb < 0.0 {
            let r = bisect(a, b);
            out.push(DiskRadius { value: r, residual: eval(r).abs() });
        }
    }
    out
}

/// The root in (0.5, 0.6).
pub fn disk_radius_root() -> DiskRadius {
    roots_in_unit_interval()
        .into_iter()
        .find(|r| r.value > 0.5 && r.value < 0.6)
        .expect("P changes sign in (0.5, 0.6)")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_values() {
        assert_eq!(eval(0.0), 9.0);
        assert_eq!(eval(1.0), -512.0);
    }

    #[test]
    fn packing_root() {
        let r = disk_radius_root();
        assert!((r.value - 0.545151).abs() < 1e-6, "{}", r.value);
        assert!(r.residual < RESIDUAL_BOUND);
    }
}
