//! Planar point-set helpers: convex hull and diameter.

use crate::exec::Exec;

pub type Point = (f64, f64);

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn dist(a: Point, b: Point) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Convex hull in counter-clockwise order (monotone chain), collinear points
/// dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Largest pairwise distance, via rotating calipers over the convex hull.
pub fn diameter(points: &[Point]) -> f64 {
    let h = convex_hull(points);
    let m = h.len();
    match m {
        0 | 1 => return 0.0,
        2 => return dist(h[0], h[1]),
        _ => {}
    }
    let mut best = 0.0f64;
    let mut j = 1;
    for i in 0..m {
        let ni = (i + 1) % m;
        while cross(h[i], h[ni], h[(j + 1) % m]).abs() > cross(h[i], h[ni], h[j]).abs() {
            j = (j + 1) % m;
        }
        best = best.max(dist(h[i], h[j])).max(dist(h[ni], h[j]));
    }
    best
}

/// Largest pairwise distance by exhaustive `O(n²)` comparison.
pub fn diameter_pairwise(points: &[Point], exec: Exec) -> f64 {
    let n = points.len();
    exec.max_range(n, |i| {
        let a = points[i];
        points[i + 1..]
            .iter()
            .map(|&b| (a.0 - b.0) * (a.0 - b.0) + (a.1 - b.1) * (a.1 - b.1))
            .fold(0.0, f64::max)
    })
    .max(0.0)
    .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn square() {
        let pts = [
            (0.0, 0.0),
            (1.0, 0.0),
            (1.0, 1.0),
            (0.0, 1.0),
            (0.5, 0.5),
            (0.5, 0.0),
        ];
        assert_eq!(convex_hull(&pts).len(), 4);
        assert!((diameter(&pts) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_sets() {
        assert_eq!(diameter(&[]), 0.0);
        assert_eq!(diameter(&[(1.0, 1.0)]), 0.0);
        assert_eq!(diameter(&[(0.0, 0.0), (3.0, 4.0), (1.5, 2.0)]), 5.0);
        assert_eq!(
            diameter_pairwise(&[(0.0, 0.0), (3.0, 4.0)], Exec::Sequential),
            5.0
        );
    }

    #[test]
    fn dense_circle() {
        let pts: Vec<Point> = (0..10_000)
            .map(|i| {
                let a = i as f64 * std::f64::consts::TAU / 10_000.0;
                (3.0 * a.cos(), 3.0 * a.sin())
            })
            .collect();
        assert!((diameter(&pts) - 6.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn calipers_match_pairwise(pts in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 2..200)) {
            let a = diameter(&pts);
            let b = diameter_pairwise(&pts, Exec::Sequential);
            prop_assert!((a - b).abs() <= 1e-9 * b.max(1.0), "{} vs {}", a, b);
        }
    }
}
