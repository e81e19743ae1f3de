//! Slow, independent reference implementations used to check the library.
//! Nothing here calls into the library's enumeration or reduction code; the
//! only shared type is `LatticePoint`, used as a plain coordinate vector.

#![allow(dead_code)]

use vr_lattice::LatticePoint;

pub fn manhattan(a: &[i32], b: &[i32]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x - y).unsigned_abs()).sum()
}

/// Anti-lex comparison: the last differing coordinate decides.
pub fn antilex_cmp(a: &[i32], b: &[i32]) -> std::cmp::Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// All points of `{0..m}^n` by nested counting, then sorted anti-lex.
pub fn box_points(n: usize, m: i32) -> Vec<Vec<i32>> {
    let mut out: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=m).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out.sort_by(|a, b| antilex_cmp(a, b));
    out
}

/// Link vertices of the least remaining box point after deleting the first
/// `alpha` points, translated so that point becomes the origin.
pub fn gamma_points(n: usize, m: i32, alpha: usize, r: u32) -> Vec<Vec<i32>> {
    let pts = box_points(n, m);
    let rest = &pts[alpha..];
    let delta = rest[0].clone();
    let zero = vec![0; n];
    rest.iter()
        .map(|p| {
            p.iter()
                .zip(&delta)
                .map(|(a, b)| a - b)
                .collect::<Vec<i32>>()
        })
        .filter(|y| *y != zero && manhattan(y, &zero) <= r)
        .collect()
}

fn coords(points: &[LatticePoint]) -> Vec<Vec<i32>> {
    points.iter().map(|p| p.coords().to_vec()).collect()
}

/// Every clique (as a bitmask over `points`), found by testing each subset's
/// pairwise distances. Only for small point sets.
pub fn all_clique_masks(points: &[LatticePoint], r: u32) -> Vec<u32> {
    let c = coords(points);
    let nv = c.len();
    assert!(nv <= 20, "subset oracle limited to 20 points");
    let close = |i: usize, j: usize| manhattan(&c[i], &c[j]) <= r;
    (0u32..(1 << nv))
        .filter(|&mask| {
            let idx: Vec<usize> = (0..nv).filter(|&i| mask >> i & 1 == 1).collect();
            idx.iter()
                .enumerate()
                .all(|(a, &i)| idx[a + 1..].iter().all(|&j| close(i, j)))
        })
        .collect()
}

pub fn mask_to_vec(mask: u32) -> Vec<u32> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Maximal cliques: cliques with no other clique strictly containing them.
pub fn maximal_clique_masks(points: &[LatticePoint], r: u32) -> Vec<Vec<u32>> {
    let cliques = all_clique_masks(points, r);
    let set: std::collections::HashSet<u32> = cliques.iter().copied().collect();
    let nv = points.len();
    let mut out: Vec<Vec<u32>> = cliques
        .iter()
        .filter(|&&m| (0..nv).all(|v| m >> v & 1 == 1 || !set.contains(&(m | 1 << v))))
        .map(|&m| mask_to_vec(m))
        .collect();
    out.sort();
    out
}

/// Rank over GF(2) of a dense matrix given as rows of bits.
fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let width = rows.first().map_or(0, |r| r.len() * 64);
    let mut rank = 0;
    for col in 0..width {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] >> b & 1 == 1 {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}

/// Unreduced Z/2 Betti numbers in dimensions `0..=dmax` from subset-level
/// clique enumeration and dense Gaussian elimination.
pub fn dense_betti(points: &[LatticePoint], r: u32, dmax: usize) -> Vec<usize> {
    let cliques = all_clique_masks(points, r);
    let by_dim = |d: usize| -> Vec<u32> {
        let mut v: Vec<u32> = cliques
            .iter()
            .copied()
            .filter(|m| m.count_ones() as usize == d + 1)
            .collect();
        v.sort_unstable();
        v
    };
    let faces: Vec<Vec<u32>> = (0..=dmax + 1).map(by_dim).collect();
    // rank of the boundary map from dimension d to d - 1
    let rank = |d: usize| -> usize {
        if d == 0 || faces[d].is_empty() || faces[d - 1].is_empty() {
            return 0;
        }
        let lower = &faces[d - 1];
        let words = lower.len().div_ceil(64);
        let rows = faces[d]
            .iter()
            .map(|&s| {
                let mut row = vec![0u64; words];
                for v in mask_to_vec(s) {
                    let f = s & !(1 << v);
                    let j = lower.binary_search(&f).expect("face present");
                    row[j / 64] |= 1 << (j % 64);
                }
                row
            })
            .collect();
        gf2_rank(rows)
    };
    let ranks: Vec<usize> = (0..=dmax + 1).map(rank).collect();
    (0..=dmax)
        .map(|d| faces[d].len() - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0))
        .collect()
}

/// Face counts by dimension from the subset oracle.
pub fn face_counts(points: &[LatticePoint], r: u32) -> Vec<usize> {
    let mut counts = Vec::new();
    for m in all_clique_masks(points, r) {
        let k = m.count_ones() as usize;
        if k == 0 {
            continue;
        }
        if counts.len() < k {
            counts.resize(k, 0);
        }
        counts[k - 1] += 1;
    }
    counts
}

pub fn alternating_sum(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

pub fn lp(c: &[i32]) -> LatticePoint {
    LatticePoint::new(c.to_vec()).expect("nonempty coordinates")
}

/// The induced 6-cycle on the unit cube minus two antipodal corners.
pub fn hexagon_points() -> Vec<LatticePoint> {
    [
        [1, 0, 0],
        [1, 1, 0],
        [0, 1, 0],
        [0, 1, 1],
        [0, 0, 1],
        [1, 0, 1],
    ]
    .iter()
    .map(|c| lp(c))
    .collect()
}
