//! Double points of closed polygons in the plane.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error("a closed polygon needs at least three vertices")]
    TooFewVertices,
    #[error("polygon is not in general position: {0}")]
    DegeneratePosition(String),
}

fn cross<T: Scalar>(o: &(T, T), a: &(T, T), b: &(T, T)) -> T {
    (a.0.clone() - o.0.clone()) * (b.1.clone() - o.1.clone())
        - (a.1.clone() - o.1.clone()) * (b.0.clone() - o.0.clone())
}

fn on_segment<T: Scalar>(p: &(T, T), a: &(T, T), b: &(T, T)) -> bool {
    cross(a, b, p).is_zero()
        && p.0 >= std::cmp::min(a.0.clone(), b.0.clone())
        && p.0 <= std::cmp::max(a.0.clone(), b.0.clone())
        && p.1 >= std::cmp::min(a.1.clone(), b.1.clone())
        && p.1 <= std::cmp::max(a.1.clone(), b.1.clone())
}

/// A crossing point and the two edges meeting there.
pub type PolygonCrossing<T> = ((T, T), usize, usize);

/// Transverse self-intersection points of the closed polygon.
pub fn self_intersections<T: Scalar>(
    vertices: &[(T, T)],
) -> Result<Vec<PolygonCrossing<T>>, PlanarError> {
    let n = vertices.len();
    if n < 3 {
        return Err(PlanarError::TooFewVertices);
    }
    let edge = |i: usize| (&vertices[i], &vertices[(i + 1) % n]);
    for i in 0..n {
        let (a, b) = edge(i);
        if a == b {
            return Err(PlanarError::DegeneratePosition(format!(
                "edge {i} has zero length"
            )));
        }
    }
    let mut points = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = edge(i);
            let (c, d) = edge(j);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Consecutive edges share one vertex; they may only fold back.
                let (shared, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if cross(shared, p, q).is_zero()
                    && (on_segment(p, shared, q) || on_segment(q, shared, p))
                {
                    return Err(PlanarError::DegeneratePosition(format!(
                        "edges {i} and {j} overlap"
                    )));
                }
                continue;
            }
            let o1 = cross(a, b, c);
            let o2 = cross(a, b, d);
            let o3 = cross(c, d, a);
            let o4 = cross(c, d, b);
            if o1.is_zero() || o2.is_zero() || o3.is_zero() || o4.is_zero() {
                if on_segment(c, a, b)
                    || on_segment(d, a, b)
                    || on_segment(a, c, d)
                    || on_segment(b, c, d)
                {
                    return Err(PlanarError::DegeneratePosition(format!(
                        "edges {i} and {j} touch at a vertex"
                    )));
                }
                continue;
            }
            if o1.is_positive() != o2.is_positive() && o3.is_positive() != o4.is_positive() {
                let t = o3.clone() / (o3 - o4);
                let x = a.0.clone() + t.clone() * (b.0.clone() - a.0.clone());
                let y = a.1.clone() + t * (b.1.clone() - a.1.clone());
                points.push(((x, y), i, j));
            }
        }
    }
    let mut sorted: Vec<&(T, T)> = points.iter().map(|p| &p.0).collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(PlanarError::DegeneratePosition(
            "three or more edges pass through one point".into(),
        ));
    }
    Ok(points)
}

/// Parity of the number of double points of a closed polygon.
pub fn planar_curve_hopf<T: Scalar>(vertices: &[(T, T)]) -> Result<u8, PlanarError> {
    Ok((self_intersections(vertices)?.len() % 2) as u8)
}
