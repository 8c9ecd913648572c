//! Exact vertex-to-vertex visibility on orthogonal terrains.
//!
//! Two vertices see each other when the segment between them stays on or
//! above the chain. Grazing contact is allowed. Because a chain edge rises
//! above a straight segment only if one of its endpoints does, it is enough
//! to test the vertices lying between the two endpoints along the chain.

use std::fmt::Write as _;

use crate::error::VisibilityError;
use crate::terrain::{Classification, Point, Terrain};

/// Default vertex cap for the dense visibility matrix.
pub const ORACLE_CAP: usize = 512;

/// Sign of the cross product `(b - a) x (c - a)`: `1` when `c` lies strictly
/// left of the directed line `a -> b`, `-1` when strictly right, `0` when
/// collinear.
#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> i32 {
    let cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    cross.signum() as i32
}

fn check_index(t: &Terrain, i: usize) -> Result<(), VisibilityError> {
    if i < t.len() {
        Ok(())
    } else {
        Err(VisibilityError::IndexOutOfRange {
            index: i,
            len: t.len(),
        })
    }
}

/// Whether vertices `i` and `j` see each other. Costs `O(|i - j|)`.
pub fn sees(t: &Terrain, i: usize, j: usize) -> Result<bool, VisibilityError> {
    check_index(t, i)?;
    check_index(t, j)?;
    Ok(sees_unchecked(t, i, j))
}

pub(crate) fn sees_unchecked(t: &Terrain, i: usize, j: usize) -> bool {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    let (p, q) = (t.vertex(a), t.vertex(b));
    // Consecutive vertices, including both ends of a vertical edge, have no
    // vertex in between and fall through to `true`.
    (a + 1..b).all(|u| orient(p, q, t.vertex(u)) <= 0)
}

/// Calls `f` for every vertex in `[lo, hi]` seen from `g` (including `g`),
/// using one outward sweep in each direction. Cost `O(hi - lo)`.
pub fn for_each_visible(t: &Terrain, g: usize, lo: usize, hi: usize, mut f: impl FnMut(usize)) {
    let v = t.vertices();
    let gp = v[g];
    f(g);
    // leftward: `rec` is the vertex of highest elevation seen so far from g
    let mut rec: Option<Point> = None;
    for w in (lo..g).rev() {
        let wp = v[w];
        match rec {
            None => {
                f(w);
                rec = Some(wp);
            }
            Some(r) => {
                if orient(wp, gp, r) <= 0 {
                    f(w);
                }
                if orient(r, gp, wp) > 0 {
                    rec = Some(wp);
                }
            }
        }
    }
    let mut rec: Option<Point> = None;
    for w in g + 1..=hi.min(t.len() - 1) {
        let wp = v[w];
        match rec {
            None => {
                f(w);
                rec = Some(wp);
            }
            Some(r) => {
                if orient(gp, wp, r) <= 0 {
                    f(w);
                }
                if orient(gp, r, wp) > 0 {
                    rec = Some(wp);
                }
            }
        }
    }
}

/// Dense symmetric visibility table for oracle-scale terrains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisibilityMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl VisibilityMatrix {
    /// Builds the table with the default cap.
    pub fn new(t: &Terrain) -> Result<Self, VisibilityError> {
        Self::with_cap(t, ORACLE_CAP)
    }

    pub fn with_cap(t: &Terrain, cap: usize) -> Result<Self, VisibilityError> {
        let n = t.len();
        if n > cap {
            return Err(VisibilityError::OracleCapExceeded { len: n, cap });
        }
        let words = n.div_ceil(64);
        let mut m = VisibilityMatrix {
            n,
            words,
            bits: vec![0; n * words],
        };
        for i in 0..n {
            for_each_visible(t, i, i, n - 1, |j| {
                m.set(i, j);
                m.set(j, i);
            });
        }
        Ok(m)
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Row `i` as a packed bitset (bit `j` of word `j / 64`).
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Indices seen by `i`, ascending.
    pub fn visible(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j))
    }

    /// Rows of `0`/`1` characters, one line per vertex.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n + 1));
        for i in 0..self.n {
            for j in 0..self.n {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl std::fmt::Display for VisibilityMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Builds the full matrix for `t` with the default cap.
pub fn visibility_matrix(t: &Terrain) -> Result<VisibilityMatrix, VisibilityError> {
    VisibilityMatrix::new(t)
}

/// For every vertex `v`, the smallest index of a vertex that sees `v`
/// (`v` itself when nothing to its left does).
///
/// The leftmost seer of `v` is the leftmost vertex of maximum elevation as
/// seen from `v`, which is the tangent point from `v` to the upper hull of
/// the vertices before it. A monotone-chain hull built left to right finds
/// that tangent while inserting `v`, so each vertex is pushed and popped at
/// most once.
pub fn leftmost_seers(t: &Terrain) -> Vec<usize> {
    let v = t.vertices();
    let n = v.len();
    let mut out = vec![0; n];
    let mut hull: Vec<usize> = Vec::with_capacity(64);
    for i in 0..n {
        let p = v[i];
        if let Some(&top) = hull.last() {
            // only the other end of a vertical edge can share the abscissa
            if v[top].x == p.x {
                if v[top].y > p.y {
                    out[i] = top;
                    continue;
                }
                hull.pop();
            }
        }
        while hull.len() >= 2 {
            let (a, b) = (v[hull[hull.len() - 2]], v[hull[hull.len() - 1]]);
            if orient(a, b, p) >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        out[i] = match hull.last() {
            Some(&top) => top,
            None if i > 0 => i - 1,
            None => i,
        };
        hull.push(i);
    }
    out
}

/// For every vertex `v`, the largest index of a vertex that sees `v`.
pub fn rightmost_seers(t: &Terrain) -> Vec<usize> {
    let m = t.mirror();
    let left = leftmost_seers(&m.terrain);
    (0..t.len()).map(|i| m.map(left[m.map(i)])).collect()
}

/// Extreme seers of one vertex class: `L(v)` for right convex vertices or
/// `R(v)` for left convex ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeerMap {
    seer: Vec<Option<usize>>,
}

pub type LeftmostMap = SeerMap;
pub type RightmostMap = SeerMap;

impl SeerMap {
    fn restricted(all: Vec<usize>, keys: &[usize]) -> Self {
        let mut seer = vec![None; all.len()];
        for &k in keys {
            seer[k] = Some(all[k]);
        }
        SeerMap { seer }
    }

    #[inline]
    pub fn get(&self, v: usize) -> Option<usize> {
        self.seer.get(v).copied().flatten()
    }

    /// `(vertex, seer)` pairs in ascending vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.seer
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|s| (i, s)))
    }
}

/// `L(v)` for every right convex vertex, in linear time.
pub fn leftmost_visible_all(t: &Terrain, c: &Classification) -> LeftmostMap {
    SeerMap::restricted(leftmost_seers(t), &c.right_convex)
}

/// `R(v)` for every left convex vertex, computed on the mirrored terrain.
pub fn rightmost_visible_all(t: &Terrain, c: &Classification) -> RightmostMap {
    SeerMap::restricted(rightmost_seers(t), &c.left_convex)
}

/// Renders a seer map as `v->s` pairs with 1-based indices.
pub fn describe(map: &SeerMap) -> String {
    let mut s = String::new();
    for (v, g) in map.iter() {
        let _ = write!(s, "{}->{} ", v + 1, g + 1);
    }
    s.trim_end().to_owned()
}
