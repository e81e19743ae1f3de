//! Z/2 simplicial homology by boundary-matrix column reduction.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::complex::{FlagComplex, SimplexTable};
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::reduce::is_dominated;

/// Betti numbers over Z/2, indexed by dimension `0..=dmax`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub betti: Vec<usize>,
    pub reduced: bool,
    /// Simplex counts by dimension `0..=dmax+1`.
    pub simplex_counts: Vec<usize>,
}

impl BettiVector {
    /// Reduced convention: dimension 0 loses one for a nonempty complex.
    pub fn to_reduced(&self) -> BettiVector {
        let mut b = self.clone();
        if !self.reduced {
            if let Some(b0) = b.betti.first_mut() {
                *b0 = b0.saturating_sub(1);
            }
            b.reduced = true;
        }
        b
    }

    pub fn get(&self, d: usize) -> usize {
        self.betti.get(d).copied().unwrap_or(0)
    }

    /// Alternating sum of the Betti numbers.
    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.betti)
            + if self.reduced && !self.betti.is_empty() {
                1
            } else {
                0
            }
    }
}

fn alternating(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// Boundary matrix of dimension `d` over Z/2, stored by columns: column `j`
/// lists the row indices of the facets of the `j`-th `d`-simplex.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub dim: usize,
    pub rows: usize,
    pub columns: Vec<Vec<u32>>,
}

impl BoundaryMatrix {
    pub fn from_table(table: &SimplexTable, dim: usize) -> BoundaryMatrix {
        let size = dim + 1;
        let mut buf = Vec::with_capacity(size);
        let columns = (0..table.count(size))
            .map(|j| {
                let vs = table.get(size, j);
                let mut col: Vec<u32> = (0..size)
                    .map(|skip| {
                        buf.clear();
                        buf.extend(
                            vs.iter()
                                .enumerate()
                                .filter(|&(i, _)| i != skip)
                                .map(|(_, &v)| v),
                        );
                        table.find(&buf).expect("faces of a simplex are simplices") as u32
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        BoundaryMatrix {
            dim,
            rows: table.count(dim),
            columns,
        }
    }

    /// Rank by standard column reduction. Columns listed in `skip` are known
    /// to reduce to zero and are not touched.
    fn rank_skipping(&self, skip: &[bool]) -> (usize, Vec<bool>) {
        let mut pivot_of: HashMap<u32, usize> = HashMap::new();
        let mut reduced: Vec<Vec<u32>> = Vec::with_capacity(self.columns.len());
        let mut is_pivot_row = vec![false; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if skip.get(j).copied().unwrap_or(false) {
                reduced.push(Vec::new());
                continue;
            }
            let mut c = col.clone();
            while let Some(&low) = c.last() {
                match pivot_of.get(&low) {
                    Some(&k) => c = sym_diff(&c, &reduced[k]),
                    None => break,
                }
            }
            if let Some(&low) = c.last() {
                pivot_of.insert(low, j);
                is_pivot_row[low as usize] = true;
            }
            reduced.push(c);
        }
        (pivot_of.len(), is_pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rank_skipping(&[]).0
    }
}

fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Unreduced Z/2 Betti numbers in dimensions `0..=dmax`. Needs the simplices
/// up to dimension `dmax + 1`.
pub fn betti_z2(k: &FlagComplex, dmax: usize, caps: &Caps) -> Result<BettiVector> {
    let table = k.simplices_up_to(dmax as isize + 1, caps)?;
    Ok(betti_from_table(&table, dmax))
}

/// Betti numbers from an already enumerated table holding every simplex up
/// to dimension `dmax + 1`.
pub fn betti_from_table(table: &SimplexTable, dmax: usize) -> BettiVector {
    let f = |d: usize| table.count(d + 1);
    // rank ∂_d for d = 1..=dmax+1, reducing from the top so that rows that
    // are pivots of ∂_{d+1} can be skipped as columns of ∂_d (clearing).
    let mut ranks = vec![0usize; dmax + 3];
    let mut clear: Vec<bool> = Vec::new();
    for d in (1..=dmax + 1).rev() {
        let m = BoundaryMatrix::from_table(table, d);
        let (rank, pivots) = m.rank_skipping(&clear);
        ranks[d] = rank;
        clear = pivots;
    }
    let betti = (0..=dmax).map(|d| f(d) - ranks[d] - ranks[d + 1]).collect();
    BettiVector {
        betti,
        reduced: false,
        simplex_counts: (0..=dmax + 1).map(f).collect(),
    }
}

/// Result of comparing a complex's Betti numbers to a wedge of spheres.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeCheck {
    pub holds: bool,
    /// Reduced Betti number in the expected dimension.
    pub rank: usize,
    pub betti: BettiVector,
}

/// True iff the reduced homology is concentrated in `expected_dim`. All
/// dimensions are computed, so nothing above `expected_dim` is missed.
pub fn check_wedge_signature(
    k: &FlagComplex,
    expected_dim: usize,
    caps: &Caps,
) -> Result<WedgeCheck> {
    let table = k.all_simplices(caps)?;
    let top = table.max_size().saturating_sub(1).max(expected_dim);
    let betti = betti_from_table(&table, top);
    let red = betti.to_reduced();
    let rank = red.get(expected_dim);
    let holds = !k.is_empty()
        && red
            .betti
            .iter()
            .enumerate()
            .all(|(d, &b)| (d == expected_dim) == (b > 0));
    Ok(WedgeCheck { holds, rank, betti })
}

/// Compares Betti numbers before and after removing a dominated vertex.
pub fn betti_preserved_by_step(
    k: &FlagComplex,
    removed: &LatticePoint,
    dominator: &LatticePoint,
    dmax: usize,
    caps: &Caps,
) -> Result<bool> {
    if !is_dominated(k, removed, dominator)? {
        return Err(Error::invalid(format!(
            "{removed} is not dominated by {dominator}"
        )));
    }
    let before = betti_z2(k, dmax, caps)?;
    let after = betti_z2(&k.induced(|p| p != removed), dmax, caps)?;
    Ok(before.betti == after.betti)
}

pub const BETTI_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiDocument {
    pub schema_version: u32,
    pub complex_digest: String,
    pub dmax: usize,
    pub betti: Vec<usize>,
    pub reduced: bool,
    pub simplex_counts: Vec<usize>,
}

impl BettiDocument {
    pub fn new(k: &FlagComplex, dmax: usize, b: &BettiVector) -> Self {
        BettiDocument {
            schema_version: BETTI_SCHEMA_VERSION,
            complex_digest: k.digest(),
            dmax,
            betti: b.betti.clone(),
            reduced: b.reduced,
            simplex_counts: b.simplex_counts.clone(),
        }
    }
}
