//! Closed polylines of labeled points.
//!
//! A contour is the object advected by the Helmholtz-Kelvin probe: an
//! ordered, implicitly closed list of points, each carrying a stable label ξ
//! so that individual fluid elements can be followed through resampling.

use thiserror::Error;

use crate::geom;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ContourError {
    #[error("contour needs at least {MIN_POINTS} points, got {0}")]
    TooFewPoints(usize),
    #[error("contour contains non-finite coordinates")]
    NonFinite,
    #[error("invalid spacing bounds: require 0 < min_spacing and max_spacing >= 2*min_spacing, got [{min}, {max}]")]
    BadSpacing { min: f64, max: f64 },
}

pub const MIN_POINTS: usize = 16;

/// Closed polyline with per-point labels and resampling bounds.
///
/// The last point connects back to the first. Self-intersection does not
/// invalidate winding computations; [`Contour::has_self_intersection`] is a
/// diagnostic, not an enforced invariant.
#[derive(Debug, Clone)]
pub struct Contour<const N: usize> {
    points: Vec<[f64; N]>,
    labels: Vec<f64>,
    /// True for points present since construction, false for resampling
    /// insertions. Only inserted points may be coarsened away.
    original: Vec<bool>,
    min_spacing: f64,
    max_spacing: f64,
}

impl<const N: usize> Contour<N> {
    pub fn new(
        points: Vec<[f64; N]>,
        min_spacing: f64,
        max_spacing: f64,
    ) -> Result<Self, ContourError> {
        if points.len() < MIN_POINTS {
            return Err(ContourError::TooFewPoints(points.len()));
        }
        if points.iter().any(|p| !geom::is_finite(*p)) {
            return Err(ContourError::NonFinite);
        }
        if !(min_spacing > 0.0) || max_spacing < 2.0 * min_spacing {
            return Err(ContourError::BadSpacing {
                min: min_spacing,
                max: max_spacing,
            });
        }
        let n = points.len();
        Ok(Self {
            points,
            labels: (0..n).map(|i| i as f64 / n as f64).collect(),
            original: vec![true; n],
            min_spacing,
            max_spacing,
        })
    }

    pub fn points(&self) -> &[[f64; N]] {
        &self.points
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn min_spacing(&self) -> f64 {
        self.min_spacing
    }

    pub fn max_spacing(&self) -> f64 {
        self.max_spacing
    }

    /// Replace point positions after an advection step. Lengths must match.
    pub fn update_positions(&mut self, new_points: Vec<[f64; N]>) {
        assert_eq!(new_points.len(), self.points.len());
        self.points = new_points;
    }

    /// Reverse orientation (negates winding and circulation).
    pub fn reverse(&mut self) {
        self.points.reverse();
        self.labels.reverse();
        self.original.reverse();
    }

    pub fn total_length(&self) -> f64 {
        (0..self.len())
            .map(|i| geom::dist(self.points[i], self.points[(i + 1) % self.len()]))
            .sum()
    }

    pub fn max_gap(&self) -> f64 {
        (0..self.len())
            .map(|i| geom::dist(self.points[i], self.points[(i + 1) % self.len()]))
            .fold(0.0, f64::max)
    }

    /// Minimum distance from any contour point to any of the given nodes.
    /// Returns +∞ when the node list is empty (no node in window).
    pub fn min_distance_to(&self, nodes: &[[f64; N]]) -> f64 {
        let mut best = f64::INFINITY;
        for p in &self.points {
            for node in nodes {
                best = best.min(geom::dist(*p, *node));
            }
        }
        best
    }

    /// Label-preserving resampling: inserts cubic-interpolated points where
    /// adjacent spacing exceeds `max_spacing`, and removes *inserted* points
    /// whose neighbor gaps have both shrunk below `min_spacing`. Original
    /// labeled points are never removed. Returns the number of points added
    /// minus removed, capped so the contour never exceeds `max_points`.
    pub fn resample(&mut self, max_points: usize) -> isize {
        let before = self.len() as isize;

        // Coarsening pass: drop inserted points in over-dense stretches.
        let mut i = 0;
        while i < self.len() && self.len() > MIN_POINTS {
            let n = self.len();
            let prev = (i + n - 1) % n;
            let next = (i + 1) % n;
            let too_dense = geom::dist(self.points[prev], self.points[i]) < self.min_spacing
                && geom::dist(self.points[i], self.points[next]) < self.min_spacing;
            let merged_ok =
                geom::dist(self.points[prev], self.points[next]) <= self.max_spacing;
            if !self.original[i] && too_dense && merged_ok {
                self.points.remove(i);
                self.labels.remove(i);
                self.original.remove(i);
            } else {
                i += 1;
            }
        }

        // Insertion pass: bisect wide gaps with Catmull-Rom midpoints until
        // every gap fits, or the point budget is exhausted.
        loop {
            let mut inserted = false;
            let mut i = 0;
            while i < self.len() {
                if self.len() >= max_points {
                    return self.len() as isize - before;
                }
                let n = self.len();
                let j = (i + 1) % n;
                if geom::dist(self.points[i], self.points[j]) > self.max_spacing {
                    let mid = self.catmull_rom_midpoint(i);
                    let label = self.midpoint_label(i);
                    self.points.insert(i + 1, mid);
                    self.labels.insert(i + 1, label);
                    self.original.insert(i + 1, false);
                    inserted = true;
                    // Re-examine the first half of the split segment.
                } else {
                    i += 1;
                }
            }
            if !inserted {
                break;
            }
        }
        self.len() as isize - before
    }

    /// Uniform Catmull-Rom midpoint of the segment starting at index i,
    /// using the cyclic neighbors for the cubic fit.
    fn catmull_rom_midpoint(&self, i: usize) -> [f64; N] {
        let n = self.len();
        let p0 = self.points[(i + n - 1) % n];
        let p1 = self.points[i];
        let p2 = self.points[(i + 1) % n];
        let p3 = self.points[(i + 2) % n];
        let mut mid = [0.0; N];
        for d in 0..N {
            mid[d] = (-p0[d] + 9.0 * p1[d] + 9.0 * p2[d] - p3[d]) / 16.0;
        }
        mid
    }

    fn midpoint_label(&self, i: usize) -> f64 {
        let n = self.len();
        let a = self.labels[i];
        let b = self.labels[(i + 1) % n];
        if i + 1 == n {
            // Wrap segment: interpolate in the unrolled label space.
            (0.5 * (a + b + 1.0)).fract()
        } else {
            0.5 * (a + b)
        }
    }

    /// O(n²) segment-pair check; diagnostic only.
    pub fn has_self_intersection(&self) -> bool
    where
        [f64; N]: Copy,
    {
        if N != 2 {
            return false;
        }
        let n = self.len();
        let seg = |i: usize| (self.points[i], self.points[(i + 1) % n]);
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue; // adjacent through the wrap
                }
                let (a, b) = seg(i);
                let (c, d) = seg(j);
                if segments_cross([a[0], a[1]], [b[0], b[1]], [c[0], c[1]], [d[0], d[1]]) {
                    return true;
                }
            }
        }
        false
    }
}

fn segments_cross(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let orient = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| {
        (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    };
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    (o1 * o2 < 0.0) && (o3 * o4 < 0.0)
}

impl Contour<2> {
    /// Counterclockwise circle with `n` points and spacing bounds derived
    /// from the initial segment length.
    pub fn circle(center: [f64; 2], radius: f64, n: usize) -> Result<Self, ContourError> {
        let points = (0..n)
            .map(|i| {
                let angle = std::f64::consts::TAU * i as f64 / n as f64;
                [
                    center[0] + radius * angle.cos(),
                    center[1] + radius * angle.sin(),
                ]
            })
            .collect::<Vec<_>>();
        let spacing = std::f64::consts::TAU * radius / n as f64;
        Self::new(points, spacing / 16.0, 1.6 * spacing)
    }
}

impl Contour<3> {
    /// Circle of `n` points in the plane spanned by the orthonormal pair
    /// (u, v) around `center`.
    pub fn circle_in_plane(
        center: [f64; 3],
        radius: f64,
        u: [f64; 3],
        v: [f64; 3],
        n: usize,
    ) -> Result<Self, ContourError> {
        let points = (0..n)
            .map(|i| {
                let angle = std::f64::consts::TAU * i as f64 / n as f64;
                let (s, c) = angle.sin_cos();
                [
                    center[0] + radius * (c * u[0] + s * v[0]),
                    center[1] + radius * (c * u[1] + s * v[1]),
                    center[2] + radius * (c * u[2] + s * v[2]),
                ]
            })
            .collect::<Vec<_>>();
        let spacing = std::f64::consts::TAU * radius / n as f64;
        Self::new(points, spacing / 16.0, 1.6 * spacing)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_nonfinite_contours() {
        let few = vec![[0.0, 0.0]; 4];
        assert!(matches!(
            Contour::new(few, 0.01, 0.1),
            Err(ContourError::TooFewPoints(4))
        ));
        let mut pts = vec![[0.0, 0.0]; 20];
        pts[3] = [f64::NAN, 0.0];
        assert!(matches!(
            Contour::new(pts, 0.01, 0.1),
            Err(ContourError::NonFinite)
        ));
    }

    #[test]
    fn rejects_bad_spacing_bounds() {
        let c = Contour::circle([0.0, 0.0], 1.0, 32).unwrap();
        let pts = c.points().to_vec();
        assert!(matches!(
            Contour::new(pts, 0.1, 0.15),
            Err(ContourError::BadSpacing { .. })
        ));
    }

    #[test]
    fn circle_has_expected_geometry() {
        let c = Contour::circle([0.5, 0.0], 1.0, 64).unwrap();
        assert_eq!(c.len(), 64);
        for p in c.points() {
            let r = ((p[0] - 0.5).powi(2) + p[1].powi(2)).sqrt();
            assert!((r - 1.0).abs() < 1e-12);
        }
        let circumference = c.total_length();
        assert!((circumference - std::f64::consts::TAU).abs() < 0.01);
    }

    #[test]
    fn resampling_fills_wide_gaps_with_cubic_midpoints() {
        let mut c = Contour::circle([0.0, 0.0], 1.0, 32).unwrap();
        // Make one segment artificially wide by deleting intermediate points
        // via update: instead, shrink max_spacing to force insertion.
        let before = c.len();
        c = Contour::new(c.points().to_vec(), 1e-4, 0.12).unwrap();
        c.resample(1 << 16);
        assert!(c.len() > before);
        assert!(c.max_gap() <= 0.12 + 1e-12, "max gap {}", c.max_gap());
        // Inserted midpoints on a circle stay on the circle to high order.
        for p in c.points() {
            let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
            assert!((r - 1.0).abs() < 1e-4, "radius {r}");
        }
    }

    #[test]
    fn resampling_preserves_original_labels() {
        let mut c = Contour::circle([0.0, 0.0], 1.0, 32).unwrap();
        let original: Vec<f64> = c.labels().to_vec();
        c = Contour::new(c.points().to_vec(), 1e-4, 0.1).unwrap();
        let original_pts: Vec<[f64; 2]> = c.points().to_vec();
        c.resample(1 << 16);
        for (label, point) in original.iter().zip(original_pts.iter()) {
            let idx = c
                .labels()
                .iter()
                .position(|l| (l - label).abs() < 1e-15)
                .expect("original label lost in resampling");
            assert_eq!(c.points()[idx], *point);
        }
    }

    #[test]
    fn reverse_flips_order() {
        let mut c = Contour::circle([0.0, 0.0], 1.0, 16).unwrap();
        let first = c.points()[1];
        c.reverse();
        assert_eq!(c.points()[c.len() - 2], first);
    }

    #[test]
    fn self_intersection_detected() {
        // A figure-eight-ish polygon.
        let mut pts = Vec::new();
        for i in 0..20 {
            let s = i as f64 / 20.0 * std::f64::consts::TAU;
            pts.push([s.sin(), (2.0 * s).sin()]);
        }
        let c = Contour::new(pts, 1e-4, 10.0).unwrap();
        assert!(c.has_self_intersection());
        let circle = Contour::circle([0.0, 0.0], 1.0, 20).unwrap();
        assert!(!circle.has_self_intersection());
    }

    #[test]
    fn min_distance_to_nodes() {
        let c = Contour::circle([0.5, 0.0], 1.0, 64).unwrap();
        let d = c.min_distance_to(&[[0.0, 0.0]]);
        assert!((d - 0.5).abs() < 1e-3, "distance {d}");
        assert_eq!(c.min_distance_to(&[]), f64::INFINITY);
    }
}
