//! Newton polygons of Goss polynomials.
//!
//! Points are `(j, -log_q |c_j|)` and the polygon is their lower convex
//! hull. A segment of slope `s` and run `m` stands for `m` roots `x` with
//! `log_q |x| = s`; the leftmost abscissa is the order of vanishing at 0.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::goss::GossPoly;
use crate::hull::lower_hull;

/// Roots of one absolute value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub log_abs: BigRational,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Vertices by increasing abscissa.
    pub breaks: Vec<(BigRational, BigRational)>,
    /// Segments from right to left, i.e. by decreasing `log_abs`.
    pub segments: Vec<Segment>,
    pub vanishing_order: usize,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn newton_extract(g: &GossPoly) -> NewtonPolygon {
    let pts: Vec<(BigInt, BigInt)> = g
        .support()
        .into_iter()
        .map(|j| (BigInt::from(j), BigInt::from(-g.val(j).expect("nonzero"))))
        .collect();
    let hull = lower_hull(&pts);
    let verts: Vec<(BigInt, BigInt)> = hull.iter().map(|&h| pts[h].clone()).collect();
    let mut segments = Vec::new();
    for w in verts.windows(2).rev() {
        let run = &w[1].0 - &w[0].0;
        segments.push(Segment {
            log_abs: BigRational::new(&w[1].1 - &w[0].1, run.clone()),
            count: u64::try_from(run).expect("small run"),
        });
    }
    let vanishing_order = usize::try_from(&verts[0].0).expect("small abscissa");
    let breaks = verts
        .iter()
        .map(|(x, y)| (BigRational::from_integer(x.clone()), BigRational::from_integer(y.clone())))
        .collect();
    NewtonPolygon { breaks, segments, vanishing_order }
}

/// Vertices reached from `(k, 0)` by runs of `count` roots of size `log_abs`,
/// taken by decreasing `log_abs`.
pub fn breaks_from_segments(k: u64, segs: &[Segment]) -> Vec<(BigRational, BigRational)> {
    let mut x = int(k as i64);
    let mut y = int(0);
    let mut pts = vec![(x.clone(), y.clone())];
    for s in segs {
        let c = int(s.count as i64);
        x -= &c;
        y -= &s.log_abs * &c;
        pts.push((x.clone(), y.clone()));
    }
    pts.reverse();
    let mut out: Vec<(BigRational, BigRational)> = Vec::new();
    for pt in pts {
        while out.len() >= 2 {
            let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
            if (&b.1 - &a.1) / (&b.0 - &a.0) == (&pt.1 - &b.1) / (&pt.0 - &b.0) {
                out.pop();
            } else {
                break;
            }
        }
        out.push(pt);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::goss::goss_recursion;
    use crate::algebra::lattice::{lattice_exp, Lattice};
    use crate::algebra::Fq;
    use crate::digits::Config;

    fn pts(v: &[(i64, i64)]) -> Vec<(BigRational, BigRational)> {
        v.iter().map(|&(x, y)| (int(x), int(y))).collect()
    }

    #[test]
    fn monomial_polygon() {
        let fq = Fq::new(Config::from_q(4).unwrap()).unwrap();
        let e = lattice_exp(&Lattice::standard(2), &fq).unwrap();
        let np = newton_extract(&goss_recursion(3, &e, &fq).unwrap());
        assert_eq!(np.vanishing_order, 3);
        assert!(np.segments.is_empty());
        assert_eq!(np.breaks, pts(&[(3, 0)]));
    }

    #[test]
    fn example_69() {
        let fq = Fq::new(Config::from_q(4).unwrap()).unwrap();
        let e = lattice_exp(&Lattice::standard(2), &fq).unwrap();
        let np = newton_extract(&goss_recursion(69, &e, &fq).unwrap());
        assert_eq!(np.breaks, pts(&[(6, 48), (18, 0), (69, 0)]));
        assert_eq!(breaks_from_segments(69, &np.segments), np.breaks);
    }
}
