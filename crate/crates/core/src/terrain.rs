//! Orthogonal 1.5D terrains: construction, validation, vertex taxonomy and
//! mirroring.
//!
//! A terrain is an x-monotone chain whose edges alternate between horizontal
//! and vertical. Vertices are stored 0-based; user-facing documents render
//! them 1-based.

use std::fmt;

use crate::error::TerrainError;

/// Largest absolute coordinate accepted. Differences then fit in 21 bits and
/// every cross product in 43 bits, so `i64` arithmetic is exact.
pub const COORD_LIMIT: i64 = 1 << 20;

/// A terrain vertex on the integer grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// How `Terrain::build` treats collinear and repeated vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BuildMode {
    /// Reject anything that is not already a valid orthogonal terrain.
    #[default]
    Strict,
    /// Drop repeated points and merge collinear runs before validating.
    Normalize,
}

/// A validated orthogonal terrain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Terrain {
    vertices: Vec<Point>,
}

impl Terrain {
    /// Builds a terrain from an ordered list of coordinates.
    pub fn build<P: Into<Point> + Copy>(
        coords: &[P],
        mode: BuildMode,
    ) -> Result<Self, TerrainError> {
        let mut pts: Vec<Point> = coords.iter().map(|&p| p.into()).collect();
        if let Some(index) = pts
            .iter()
            .position(|p| p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT)
        {
            return Err(TerrainError::CoordinateOutOfRange { index });
        }
        if mode == BuildMode::Normalize {
            pts = normalize(pts);
        }
        validate(&pts)?;
        Ok(Terrain { vertices: pts })
    }

    /// Shorthand for strict construction from tuples.
    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self, TerrainError> {
        Self::build(coords, BuildMode::Strict)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false: a terrain has at least two vertices.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn coords(&self) -> Vec<(i64, i64)> {
        self.vertices.iter().map(|p| (p.x, p.y)).collect()
    }

    /// Per-vertex classes and the four ascending index lists.
    pub fn classify(&self) -> Classification {
        Classification::of(self)
    }

    /// Reflects the terrain through a vertical line and reverses the vertex
    /// order. The reflection axis keeps the x-range unchanged.
    ///
    /// Vertex `i` of `self` becomes vertex `n - 1 - i` of the result; see
    /// [`Mirror`].
    pub fn mirror(&self) -> Mirror {
        let n = self.len();
        let c = self.vertices[0].x + self.vertices[n - 1].x;
        let vertices = self
            .vertices
            .iter()
            .rev()
            .map(|p| Point::new(c - p.x, p.y))
            .collect();
        Mirror {
            terrain: Terrain { vertices },
            axis_sum: c,
        }
    }
}

/// A mirrored terrain together with the index bijection back to the source.
#[derive(Clone, Debug)]
pub struct Mirror {
    pub terrain: Terrain,
    /// Reflection constant: mirrored x is `axis_sum - x`.
    pub axis_sum: i64,
}

impl Mirror {
    /// Maps an index of the source terrain to the mirrored one (and back; the
    /// map is its own inverse).
    #[inline]
    pub fn map(&self, i: usize) -> usize {
        self.terrain.len() - 1 - i
    }
}

fn normalize(pts: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last() == Some(&p) {
            continue;
        }
        if out.len() >= 2 {
            let a = out[out.len() - 2];
            let b = out[out.len() - 1];
            let horizontal = a.y == b.y && b.y == p.y;
            let vertical = a.x == b.x && b.x == p.x;
            // Only merge when the middle vertex lies between its neighbours;
            // a fold-back is left for validation to reject.
            let between = if horizontal {
                (a.x <= b.x) == (b.x <= p.x)
            } else if vertical {
                (a.y <= b.y) == (b.y <= p.y)
            } else {
                false
            };
            if between {
                out.pop();
            }
        }
        out.push(p);
    }
    out
}

fn validate(pts: &[Point]) -> Result<(), TerrainError> {
    if pts.len() < 2 {
        return Err(TerrainError::TooFewVertices(pts.len()));
    }
    let mut prev_vertical: Option<bool> = None;
    for (i, w) in pts.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        if b.x < a.x {
            return Err(TerrainError::NotMonotone { index: i + 1 });
        }
        let vertical = match (a.x == b.x, a.y == b.y) {
            (true, true) => return Err(TerrainError::ZeroLengthEdge { index: i }),
            (false, false) => return Err(TerrainError::DiagonalEdge { index: i }),
            (true, false) => true,
            (false, true) => false,
        };
        if prev_vertical == Some(vertical) {
            // Two horizontal edges in a row may also fold back; either way the
            // shared vertex has no 90/270 degree angle.
            return Err(TerrainError::CollinearVertex { index: i });
        }
        prev_vertical = Some(vertical);
    }
    Ok(())
}

/// The four vertex classes of an orthogonal terrain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    LeftConvex,
    RightConvex,
    LeftReflex,
    RightReflex,
}

impl VertexClass {
    pub fn is_convex(self) -> bool {
        matches!(self, VertexClass::LeftConvex | VertexClass::RightConvex)
    }

    pub fn is_reflex(self) -> bool {
        !self.is_convex()
    }

    /// The class a vertex takes after mirroring.
    pub fn mirrored(self) -> Self {
        match self {
            VertexClass::LeftConvex => VertexClass::RightConvex,
            VertexClass::RightConvex => VertexClass::LeftConvex,
            VertexClass::LeftReflex => VertexClass::RightReflex,
            VertexClass::RightReflex => VertexClass::LeftReflex,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            VertexClass::LeftConvex => "LC",
            VertexClass::RightConvex => "RC",
            VertexClass::LeftReflex => "LR",
            VertexClass::RightReflex => "RR",
        }
    }
}

/// Per-vertex classes plus ascending index lists for each class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub classes: Vec<VertexClass>,
    pub left_convex: Vec<usize>,
    pub right_convex: Vec<usize>,
    pub left_reflex: Vec<usize>,
    pub right_reflex: Vec<usize>,
}

impl Classification {
    pub fn of(t: &Terrain) -> Self {
        let v = t.vertices();
        let n = v.len();
        let mut classes = Vec::with_capacity(n);
        for i in 0..n {
            classes.push(classify_one(v, i));
        }
        let pick = |c: VertexClass| -> Vec<usize> {
            classes
                .iter()
                .enumerate()
                .filter(|(_, &k)| k == c)
                .map(|(i, _)| i)
                .collect()
        };
        Classification {
            left_convex: pick(VertexClass::LeftConvex),
            right_convex: pick(VertexClass::RightConvex),
            left_reflex: pick(VertexClass::LeftReflex),
            right_reflex: pick(VertexClass::RightReflex),
            classes,
        }
    }

    #[inline]
    pub fn class(&self, i: usize) -> VertexClass {
        self.classes[i]
    }

    /// Ascending union of both reflex lists.
    pub fn reflex(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].is_reflex())
            .collect()
    }
}

// Right side: the outgoing edge is vertical; convex when it climbs.
// Left side: the incoming edge is vertical; convex when it descends into the vertex.
// Endpoints on a horizontal edge are convex (left end LC, right end RC).
fn classify_one(v: &[Point], i: usize) -> VertexClass {
    let n = v.len();
    let next_vertical = i + 1 < n && v[i + 1].x == v[i].x;
    if next_vertical {
        return if v[i + 1].y > v[i].y {
            VertexClass::RightConvex
        } else {
            VertexClass::RightReflex
        };
    }
    let prev_vertical = i > 0 && v[i - 1].x == v[i].x;
    if prev_vertical {
        return if v[i - 1].y > v[i].y {
            VertexClass::LeftConvex
        } else {
            VertexClass::LeftReflex
        };
    }
    if i == 0 {
        VertexClass::LeftConvex
    } else {
        VertexClass::RightConvex
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{FLAT, STAIRS, VALLEY};
    use VertexClass::*;

    #[test]
    fn valley_is_valid() {
        let t = Terrain::from_coords(VALLEY).unwrap();
        assert_eq!(t.len(), 6);
    }

    #[test]
    fn rejects_diagonal() {
        assert_eq!(
            Terrain::from_coords(&[(0, 0), (1, 1)]),
            Err(TerrainError::DiagonalEdge { index: 0 })
        );
    }

    #[test]
    fn collinear_strict_and_normalized() {
        let c = [(0, 0), (1, 0), (2, 0)];
        assert_eq!(
            Terrain::from_coords(&c),
            Err(TerrainError::CollinearVertex { index: 1 })
        );
        let t = Terrain::build(&c, BuildMode::Normalize).unwrap();
        assert_eq!(t.coords(), vec![(0, 0), (2, 0)]);
    }

    #[test]
    fn normalize_drops_repeats_and_vertical_runs() {
        let c = [(0, 0), (0, 0), (1, 0), (1, 1), (1, 3), (2, 3), (2, 3)];
        let t = Terrain::build(&c, BuildMode::Normalize).unwrap();
        assert_eq!(t.coords(), vec![(0, 0), (1, 0), (1, 3), (2, 3)]);
    }

    #[test]
    fn other_errors() {
        assert_eq!(
            Terrain::from_coords(&[(0, 0)]),
            Err(TerrainError::TooFewVertices(1))
        );
        assert_eq!(
            Terrain::from_coords(&[(2, 0), (1, 0)]),
            Err(TerrainError::NotMonotone { index: 1 })
        );
        assert_eq!(
            Terrain::from_coords(&[(0, 0), (COORD_LIMIT + 1, 0)]),
            Err(TerrainError::CoordinateOutOfRange { index: 1 })
        );
        assert_eq!(
            Terrain::from_coords(&[(0, 0), (0, 0)]),
            Err(TerrainError::ZeroLengthEdge { index: 0 })
        );
        // fold-back along a vertical line
        assert!(Terrain::from_coords(&[(0, 0), (0, 2), (0, 1)]).is_err());
    }

    #[test]
    fn fixture_classes() {
        let c = Terrain::from_coords(VALLEY).unwrap().classify();
        assert_eq!(
            c.classes,
            vec![
                LeftConvex,
                RightReflex,
                LeftConvex,
                RightConvex,
                LeftReflex,
                RightConvex
            ]
        );
        assert_eq!(c.right_convex, vec![3, 5]);
        assert_eq!(c.reflex(), vec![1, 4]);

        let c = Terrain::from_coords(STAIRS).unwrap().classify();
        assert_eq!(
            c.classes,
            vec![
                LeftConvex,
                RightConvex,
                LeftReflex,
                RightConvex,
                LeftReflex,
                RightConvex
            ]
        );

        let c = Terrain::from_coords(FLAT).unwrap().classify();
        assert_eq!(c.classes, vec![LeftConvex, RightConvex]);
    }

    #[test]
    fn vertical_endpoints() {
        // first edge drops, last edge climbs
        let t = Terrain::from_coords(&[(0, 3), (0, 0), (2, 0), (2, 1)]).unwrap();
        assert_eq!(
            t.classify().classes,
            vec![RightReflex, LeftConvex, RightConvex, LeftReflex]
        );
        // first edge climbs, last edge drops
        let t = Terrain::from_coords(&[(0, 0), (0, 3), (2, 3), (2, 1)]).unwrap();
        assert_eq!(
            t.classify().classes,
            vec![RightConvex, LeftReflex, RightReflex, LeftConvex]
        );
    }

    #[test]
    fn mirror_flat_and_valley() {
        let flat = Terrain::from_coords(FLAT).unwrap();
        let m = flat.mirror();
        assert_eq!(m.terrain, flat);
        assert_eq!(m.map(0), 1);

        let valley = Terrain::from_coords(VALLEY).unwrap();
        let m = valley.mirror();
        let orig = valley.classify();
        let mirrored = m.terrain.classify();
        for i in 0..valley.len() {
            assert_eq!(mirrored.class(m.map(i)), orig.class(i).mirrored());
        }
        assert_eq!(m.terrain.mirror().terrain, valley);
    }
}
