//! Lower convex hulls of integer point sets.

use num_bigint::BigInt;

/// Indices of the vertices of the lower convex hull of `pts`, which must be
/// sorted by strictly increasing abscissa. Collinear points are dropped.
pub(crate) fn lower_hull(pts: &[(BigInt, BigInt)]) -> Vec<usize> {
    let mut h: Vec<usize> = Vec::new();
    for (idx, b) in pts.iter().enumerate() {
        while h.len() >= 2 {
            let o = &pts[h[h.len() - 2]];
            let a = &pts[h[h.len() - 1]];
            let cross = (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0);
            if cross <= BigInt::from(0) {
                h.pop();
            } else {
                break;
            }
        }
        h.push(idx);
    }
    h
}
