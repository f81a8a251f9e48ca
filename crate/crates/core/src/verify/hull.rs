//! Planar convex hulls (monotone chain) and polygon queries.

const ORIENT_SLACK: f64 = 1e-12;

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex polygon with counter-clockwise vertices. May be degenerate
/// (empty, a point or a segment).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConvexPolygon {
    pub vertices: Vec<[f64; 2]>,
}

impl ConvexPolygon {
    pub fn hull(points: &[[f64; 2]]) -> Self {
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        pts.dedup();
        if pts.len() < 3 {
            return Self { vertices: pts };
        }
        let mut lower: Vec<[f64; 2]> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], *p) <= ORIENT_SLACK {
                lower.pop();
            }
            lower.push(*p);
        }
        let mut upper: Vec<[f64; 2]> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], *p) <= ORIENT_SLACK {
                upper.pop();
            }
            upper.push(*p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self { vertices: lower }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        if v.len() < 3 {
            return 0.0;
        }
        0.5 * (0..v.len()).map(|i| {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            a[0] * b[1] - a[1] * b[0]
        }).sum::<f64>()
    }

    /// Closed-polygon membership with a small orientation slack.
    pub fn contains(&self, p: [f64; 2]) -> bool {
        match self.vertices.len() {
            0 => false,
            1 | 2 => self.boundary_distance(p) <= 1e-9,
            n => (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= -ORIENT_SLACK),
        }
    }

    /// Euclidean distance from `p` to the polygon boundary.
    pub fn boundary_distance(&self, p: [f64; 2]) -> f64 {
        let v = &self.vertices;
        match v.len() {
            0 => f64::INFINITY,
            1 => ((p[0] - v[0][0]).powi(2) + (p[1] - v[0][1]).powi(2)).sqrt(),
            n => (0..n).map(|i| segment_distance(p, v[i], v[(i + 1) % n])).fold(f64::INFINITY, f64::min),
        }
    }
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let s = if len2 == 0.0 { 0.0 } else { (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0) };
    let q = [a[0] + s * d[0] - p[0], a[1] + s * d[1] - p[1]];
    (q[0] * q[0] + q[1] * q[1]).sqrt()
}
