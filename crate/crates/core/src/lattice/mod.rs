//! Points of Z^n under the Manhattan metric, the anti-lexicographic order,
//! coordinate operators, and the vertex-set generators for grids and links.
//!
//! Coordinate indices in the public operator API are 1-based, so index sets
//! read in the usual one-based way (`{1, 2}` means the first two axes).

pub mod distance;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};

/// A point of Z^n.
///
/// `Ord` is the anti-lexicographic order: points are compared at the largest
/// index where they differ. Comparing points of different dimension orders
/// them by dimension first; use [`antilex_less`] for a checked comparison.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i32>);

impl LatticePoint {
    pub fn new(coords: Vec<i32>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid(
                "a lattice point needs at least one coordinate",
            ));
        }
        Ok(LatticePoint(coords))
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        LatticePoint(vec![0; n])
    }

    /// Unit vector along the 1-based axis `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "axis {i} out of range for n = {n}");
        let mut p = Self::zero(n);
        p.0[i - 1] = 1;
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    /// Coordinate at the 1-based axis `i`.
    pub fn get(&self, i: usize) -> i32 {
        self.0[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Distance to the origin.
    pub fn l1_norm(&self) -> u32 {
        self.0.iter().map(|c| c.unsigned_abs()).sum()
    }

    /// Manhattan distance without the dimension check. Callers guarantee
    /// equal dimensions (all points of one complex share it).
    pub fn dist(&self, other: &Self) -> u32 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.abs_diff(*b))
            .sum()
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Pads with zeros up to dimension `n`.
    pub fn padded(&self, n: usize) -> Self {
        assert!(n >= self.dim());
        let mut c = self.0.clone();
        c.resize(n, 0);
        LatticePoint(c)
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}

impl From<Vec<i32>> for LatticePoint {
    /// Panics on an empty vector; use [`LatticePoint::new`] for fallible input.
    fn from(coords: Vec<i32>) -> Self {
        LatticePoint::new(coords).expect("non-empty coordinates")
    }
}

impl<const N: usize> From<[i32; N]> for LatticePoint {
    fn from(coords: [i32; N]) -> Self {
        LatticePoint::from(coords.to_vec())
    }
}

impl Ord for LatticePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim().cmp(&other.dim()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for LatticePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Manhattan distance, rejecting points of different dimension.
pub fn l1_distance(x: &LatticePoint, y: &LatticePoint) -> Result<u32> {
    x.same_dim(y)?;
    Ok(x.dist(y))
}

/// True iff `x` precedes `y` in the anti-lexicographic order.
pub fn antilex_less(x: &LatticePoint, y: &LatticePoint) -> Result<bool> {
    x.same_dim(y)?;
    Ok(x < y)
}

fn check_axes(n: usize, axes: &[usize]) -> Result<()> {
    for &i in axes {
        if i == 0 || i > n {
            return Err(Error::invalid(format!("axis {i} outside 1..={n}")));
        }
    }
    Ok(())
}

/// Moves every nonzero coordinate indexed by `axes` one step toward zero.
pub fn lambda_op(x: &LatticePoint, axes: &[usize]) -> Result<LatticePoint> {
    check_axes(x.dim(), axes)?;
    let mut c = x.0.clone();
    for &i in axes {
        let v = &mut c[i - 1];
        *v -= v.signum();
    }
    Ok(LatticePoint(c))
}

/// A set of signed axes with pairwise-distinct absolute values, such as
/// `{+1, -3}`: `+j` means "step up along axis j", `-j` "step down".
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSet(Vec<i32>);

impl IndexSet {
    pub fn new(indices: Vec<i32>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for &i in &indices {
            let a = i.unsigned_abs() as usize;
            if i == 0 || a > n {
                return Err(Error::invalid(format!("signed axis {i} outside ±1..={n}")));
            }
            if seen[a] {
                return Err(Error::invalid(format!("axis {a} repeated in index set")));
            }
            seen[a] = true;
        }
        Ok(IndexSet(indices))
    }

    pub fn indices(&self) -> &[i32] {
        &self.0
    }
}

/// Applies a signed unit step along every axis of `idx`.
pub fn shift(x: &LatticePoint, idx: &IndexSet) -> Result<LatticePoint> {
    let mut c = x.0.clone();
    for &i in &idx.0 {
        let a = i.unsigned_abs() as usize;
        if a > c.len() {
            return Err(Error::invalid(format!(
                "signed axis {i} outside ±1..={}",
                c.len()
            )));
        }
        c[a - 1] += i.signum();
    }
    Ok(LatticePoint(c))
}

/// Adds `k` to the coordinate on the 1-based axis `i`.
pub fn shift_by(x: &LatticePoint, i: usize, k: i32) -> Result<LatticePoint> {
    check_axes(x.dim(), &[i])?;
    let mut c = x.0.clone();
    c[i - 1] += k;
    Ok(LatticePoint(c))
}

/// Largest box side accepted; keeps every coordinate arithmetic in range.
pub const MAX_SIDE: usize = 1 << 15;

/// The box {0..m}^n with Rips scale r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub m: usize,
    pub r: u32,
}

impl GridSpec {
    pub fn new(n: usize, m: usize, r: u32) -> Result<Self> {
        let spec = GridSpec { n, m, r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::invalid("grid needs n >= 1 and m >= 1"));
        }
        if self.m > MAX_SIDE || self.r as usize > 2 * MAX_SIDE {
            return Err(Error::invalid(format!(
                "box side and scale must stay below {MAX_SIDE}"
            )));
        }
        Ok(())
    }

    /// (m+1)^n, or `None` on overflow.
    pub fn card(&self) -> Option<usize> {
        (self.m + 1).checked_pow(u32::try_from(self.n).ok()?)
    }
}

/// A grid together with the number of anti-lex-least vertices removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaSpec {
    pub grid: GridSpec,
    pub alpha: usize,
}

impl GammaSpec {
    pub fn new(grid: GridSpec, alpha: usize) -> Result<Self> {
        grid.validate()?;
        let spec = GammaSpec { grid, alpha };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let card = self.grid.card().unwrap_or(usize::MAX);
        if self.alpha == 0 || self.alpha >= card {
            return Err(Error::invalid(format!(
                "alpha = {} outside 1..={}",
                self.alpha,
                card.saturating_sub(1)
            )));
        }
        Ok(())
    }
}

/// All points of {0..m}^n in anti-lex ascending order.
pub fn grid_vertices(spec: &GridSpec, caps: &Caps) -> Result<Vec<LatticePoint>> {
    spec.validate()?;
    let card = spec
        .card()
        .ok_or_else(|| Error::cap("vertex count", caps.max_vertices, usize::MAX))?;
    caps.check_vertices(card)?;
    let (n, m) = (spec.n, spec.m as i32);
    let mut out = Vec::with_capacity(card);
    let mut cur = vec![0i32; n];
    // Odometer with the first coordinate fastest yields anti-lex order.
    'outer: loop {
        out.push(LatticePoint(cur.clone()));
        for c in cur.iter_mut() {
            if *c < m {
                *c += 1;
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    Ok(out)
}

/// The truncated, shifted box and its shift vector: removes the first
/// `alpha` grid points, then translates so the new least point is the origin.
pub fn shifted_truncation(
    spec: &GammaSpec,
    caps: &Caps,
) -> Result<(LatticePoint, Vec<LatticePoint>)> {
    spec.validate()?;
    truncate_and_shift(&spec.grid, spec.alpha, caps)
}

fn truncate_and_shift(
    grid: &GridSpec,
    alpha: usize,
    caps: &Caps,
) -> Result<(LatticePoint, Vec<LatticePoint>)> {
    let pts = grid_vertices(grid, caps)?;
    let delta = pts
        .get(alpha)
        .cloned()
        .ok_or_else(|| Error::invalid(format!("alpha = {alpha} leaves no vertex")))?;
    let shifted = pts[alpha..].iter().map(|p| p.sub(&delta)).collect();
    Ok((delta, shifted))
}

/// Like [`gamma_vertices`] but also accepts `alpha = 0` (the link of the
/// least vertex in the full box) and returns the shift vector, which is the
/// least remaining grid vertex.
pub fn least_vertex_link(
    grid: &GridSpec,
    alpha: usize,
    caps: &Caps,
) -> Result<(LatticePoint, Vec<LatticePoint>)> {
    grid.validate()?;
    let (delta, shifted) = truncate_and_shift(grid, alpha, caps)?;
    let r = grid.r;
    // Translation preserves the order, so the output stays anti-lex sorted.
    let link = shifted
        .into_iter()
        .filter(|y| !y.is_zero() && y.l1_norm() <= r)
        .collect();
    Ok((delta, link))
}

/// Vertex set of the link of the origin in the Rips complex of the
/// truncated, shifted box: nonzero points within distance r of the origin.
pub fn gamma_vertices(spec: &GammaSpec, caps: &Caps) -> Result<Vec<LatticePoint>> {
    spec.validate()?;
    Ok(least_vertex_link(&spec.grid, spec.alpha, caps)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i32]) -> LatticePoint {
        LatticePoint::from(c.to_vec())
    }

    #[test]
    fn distance_examples() {
        assert_eq!(l1_distance(&p(&[0, 0, 0]), &p(&[1, 1, 0])).unwrap(), 2);
        assert_eq!(l1_distance(&p(&[2, 0]), &p(&[0, 3])).unwrap(), 5);
        assert_eq!(l1_distance(&p(&[4, -1]), &p(&[4, -1])).unwrap(), 0);
        assert!(matches!(
            l1_distance(&p(&[1]), &p(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn antilex_examples() {
        assert!(antilex_less(&p(&[1, 0]), &p(&[0, 1])).unwrap());
        assert!(!antilex_less(&p(&[3, 3]), &p(&[3, 3])).unwrap());
        assert!(!antilex_less(&p(&[0, 0, 1]), &p(&[0, 0, 0])).unwrap());
        assert!(antilex_less(&p(&[1]), &p(&[1, 1])).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_op(&p(&[3, -2, 0]), &[1, 2]).unwrap(), p(&[2, -1, 0]));
        assert_eq!(lambda_op(&p(&[3, -2, 0]), &[]).unwrap(), p(&[3, -2, 0]));
        assert_eq!(lambda_op(&p(&[0, 5]), &[1, 2]).unwrap(), p(&[0, 4]));
        assert!(lambda_op(&p(&[0, 5]), &[3]).is_err());
    }

    #[test]
    fn shift_examples() {
        let n2 = |v: Vec<i32>| IndexSet::new(v, 2).unwrap();
        assert_eq!(shift(&p(&[1, 1]), &n2(vec![2])).unwrap(), p(&[1, 2]));
        assert_eq!(shift(&p(&[1, 1]), &n2(vec![-1])).unwrap(), p(&[0, 1]));
        let s = IndexSet::new(vec![1, -3], 3).unwrap();
        assert_eq!(shift(&p(&[0, 0, 0]), &s).unwrap(), p(&[1, 0, -1]));
        assert!(IndexSet::new(vec![1, -1], 2).is_err());
        assert!(IndexSet::new(vec![0], 2).is_err());
    }

    #[test]
    fn shift_by_examples() {
        assert_eq!(shift_by(&p(&[1, 1]), 1, 2).unwrap(), p(&[3, 1]));
        assert_eq!(shift_by(&p(&[5, 6]), 2, 0).unwrap(), p(&[5, 6]));
        assert_eq!(shift_by(&p(&[0, 4, 0]), 2, -2).unwrap(), p(&[0, 2, 0]));
    }

    #[test]
    fn grid_examples() {
        let caps = Caps::default();
        let g = grid_vertices(&GridSpec::new(1, 2, 0).unwrap(), &caps).unwrap();
        assert_eq!(g, vec![p(&[0]), p(&[1]), p(&[2])]);
        let g = grid_vertices(&GridSpec::new(2, 1, 0).unwrap(), &caps).unwrap();
        assert_eq!(g, vec![p(&[0, 0]), p(&[1, 0]), p(&[0, 1]), p(&[1, 1])]);
        let g = grid_vertices(&GridSpec::new(3, 3, 0).unwrap(), &caps).unwrap();
        assert_eq!(g.len(), 64);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn grid_respects_cap() {
        let caps = Caps {
            max_vertices: 10,
            ..Caps::default()
        };
        let err = grid_vertices(&GridSpec::new(2, 3, 2).unwrap(), &caps).unwrap_err();
        assert!(err.is_cap());
    }

    #[test]
    fn gamma_examples() {
        let caps = Caps::default();
        let spec = GammaSpec::new(GridSpec::new(1, 3, 1).unwrap(), 1).unwrap();
        assert_eq!(gamma_vertices(&spec, &caps).unwrap(), vec![p(&[1])]);
        let spec = GammaSpec::new(GridSpec::new(2, 1, 2).unwrap(), 1).unwrap();
        assert_eq!(
            gamma_vertices(&spec, &caps).unwrap(),
            vec![p(&[-1, 1]), p(&[0, 1])]
        );
    }

    #[test]
    fn gamma_alpha_range() {
        let g = GridSpec::new(2, 1, 2).unwrap();
        assert!(GammaSpec::new(g, 0).is_err());
        assert!(GammaSpec::new(g, 4).is_err());
        let last = GammaSpec::new(g, 3).unwrap();
        assert!(gamma_vertices(&last, &Caps::default()).unwrap().is_empty());
    }

    #[test]
    fn display_round_trip() {
        assert_eq!(p(&[1, -2, 3]).to_string(), "(1,-2,3)");
        let json = serde_json::to_string(&p(&[1, -2])).unwrap();
        assert_eq!(json, "[1,-2]");
    }
}
