//! Discrete Morse matching on the face poset of a flag complex.
//!
//! Vertices are processed in anti-lex order. At vertex `v`, every simplex
//! `σ` still unmatched with `σ ∪ {v}` a simplex that is also unmatched gets
//! paired with it. The pairs created at one vertex are disjoint, so pairing
//! them one at a time gives the same result as pairing them all at once.
//! The empty simplex takes part and is matched with the least vertex.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::complex::{FlagComplex, Simplex, SimplexTable};
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;

const UNMATCHED: u32 = u32::MAX;

/// A partial matching on the face poset, with simplices addressed by a
/// global id (size class offset plus position within the class).
#[derive(Clone, Debug)]
pub struct MorseMatching {
    table: SimplexTable,
    offsets: Vec<usize>,
    partner: Vec<u32>,
    digest: String,
    points: Vec<LatticePoint>,
}

impl MorseMatching {
    fn empty_for(k: &FlagComplex, dmax: isize, caps: &Caps) -> Result<MorseMatching> {
        let table = k.simplices_up_to(dmax, caps)?;
        if !table.is_complete() {
            return Err(Error::invalid(format!(
                "dmax = {dmax} is below the clique dimension; the face poset would be truncated"
            )));
        }
        let mut offsets = Vec::with_capacity(table.counts().len() + 1);
        let mut acc = 0usize;
        for &c in table.counts() {
            offsets.push(acc);
            acc += c;
        }
        offsets.push(acc);
        if acc >= UNMATCHED as usize {
            return Err(Error::cap("face poset size", UNMATCHED as usize - 1, acc));
        }
        Ok(MorseMatching {
            table,
            offsets,
            partner: vec![UNMATCHED; acc],
            digest: k.digest(),
            points: k.vertices().to_vec(),
        })
    }

    /// Builds a matching from explicit pairs `(σ, τ)`, checking that each is
    /// a covering pair of the face poset and that no simplex is reused.
    pub fn from_pairs(
        k: &FlagComplex,
        dmax: isize,
        pairs: &[(Simplex, Simplex)],
        caps: &Caps,
    ) -> Result<MorseMatching> {
        let mut m = Self::empty_for(k, dmax, caps)?;
        for (s, t) in pairs {
            let covering = t.len() == s.len() + 1 && s.0.iter().all(|v| t.0.contains(v));
            if !covering {
                return Err(Error::invalid(format!(
                    "{s:?} -> {t:?} is not a covering pair"
                )));
            }
            let (Some(a), Some(b)) = (m.id_of(&s.0), m.id_of(&t.0)) else {
                return Err(Error::invalid(format!("{s:?} or {t:?} is not a simplex")));
            };
            if m.partner[a] != UNMATCHED || m.partner[b] != UNMATCHED {
                return Err(Error::invalid(format!("{s:?} or {t:?} is matched twice")));
            }
            m.pair(a, b);
        }
        Ok(m)
    }

    fn id_of(&self, vs: &[u32]) -> Option<usize> {
        if vs.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        self.table.find(vs).map(|i| self.offsets[vs.len()] + i)
    }

    fn size_of(&self, id: usize) -> usize {
        self.offsets.partition_point(|&o| o <= id) - 1
    }

    fn vertices_of(&self, id: usize) -> &[u32] {
        let size = self.size_of(id);
        self.table.get(size, id - self.offsets[size])
    }

    fn pair(&mut self, a: usize, b: usize) {
        self.partner[a] = b as u32;
        self.partner[b] = a as u32;
    }

    pub fn table(&self) -> &SimplexTable {
        &self.table
    }

    pub fn complex_digest(&self) -> &str {
        &self.digest
    }

    pub fn pair_count(&self) -> usize {
        self.partner.iter().filter(|&&p| p != UNMATCHED).count() / 2
    }

    pub fn is_empty_matched(&self) -> bool {
        self.partner[0] != UNMATCHED
    }

    /// All pairs `(σ, σ ∪ {v})`, lower simplex first, in id order.
    pub fn pairs(&self) -> Vec<(Simplex, Simplex)> {
        (0..self.partner.len())
            .filter(|&a| self.partner[a] != UNMATCHED && (self.partner[a] as usize) > a)
            .map(|a| {
                let b = self.partner[a] as usize;
                (
                    Simplex(self.vertices_of(a).to_vec()),
                    Simplex(self.vertices_of(b).to_vec()),
                )
            })
            .collect()
    }

    /// Facet ids of simplex `id` (none for the empty simplex).
    fn facets(&self, id: usize, buf: &mut Vec<u32>, out: &mut Vec<usize>) {
        out.clear();
        let vs = self.vertices_of(id);
        for skip in 0..vs.len() {
            buf.clear();
            buf.extend(
                vs.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v),
            );
            out.push(self.id_of(buf).expect("faces of a simplex are simplices"));
        }
    }

    /// True iff the modified Hasse digraph (matched edges pointing up, every
    /// other covering edge pointing down) has no directed cycle.
    pub fn verify_acyclic(&self) -> bool {
        let total = self.partner.len();
        // 0 = unvisited, 1 = on the stack, 2 = finished.
        let mut colour = vec![0u8; total];
        let mut buf = Vec::new();
        let mut facets = Vec::new();
        let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        let out_edges = |id: usize, buf: &mut Vec<u32>, facets: &mut Vec<usize>| -> Vec<usize> {
            self.facets(id, buf, facets);
            let p = self.partner[id];
            let mut out: Vec<usize> = facets.iter().copied().filter(|&f| f as u32 != p).collect();
            if p != UNMATCHED && (p as usize) > id && self.size_of(p as usize) > self.size_of(id) {
                out.push(p as usize);
            }
            out
        };
        for root in 0..total {
            if colour[root] != 0 {
                continue;
            }
            colour[root] = 1;
            stack.push((root, out_edges(root, &mut buf, &mut facets), 0));
            while let Some(top) = stack.last_mut() {
                let (node, ref edges, ref mut next) = *top;
                if *next < edges.len() {
                    let w = edges[*next];
                    *next += 1;
                    match colour[w] {
                        0 => {
                            colour[w] = 1;
                            let e = out_edges(w, &mut buf, &mut facets);
                            stack.push((w, e, 0));
                        }
                        1 => return false,
                        _ => {}
                    }
                } else {
                    colour[node] = 2;
                    stack.pop();
                }
            }
        }
        true
    }

    /// Critical-cell counts per dimension, optionally with the cells.
    pub fn critical_census(&self, witnesses: bool) -> CriticalCensus {
        let sizes = self.table.counts().len();
        let mut counts = vec![0usize; sizes.saturating_sub(1)];
        let mut cells: Vec<Vec<Vec<LatticePoint>>> = vec![Vec::new(); counts.len()];
        for size in 1..sizes {
            for i in 0..self.table.count(size) {
                let id = self.offsets[size] + i;
                if self.partner[id] == UNMATCHED {
                    counts[size - 1] += 1;
                    if witnesses {
                        cells[size - 1].push(
                            self.vertices_of(id)
                                .iter()
                                .map(|&v| self.points[v as usize].clone())
                                .collect(),
                        );
                    }
                }
            }
        }
        while counts.last() == Some(&0) {
            counts.pop();
        }
        cells.truncate(counts.len());
        CriticalCensus {
            counts,
            empty_critical: !self.is_empty_matched(),
            witnesses: witnesses.then_some(cells),
        }
    }

    /// Euler characteristic from the face counts (empty simplex excluded).
    pub fn euler_characteristic(&self) -> i64 {
        self.table
            .counts()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(size, &c)| if size % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Homotopy type read off from the critical cells.
    pub fn homotopy_report(&self) -> Result<HomotopyReport> {
        if !self.is_empty_matched() {
            return Err(Error::invalid("the empty simplex is critical"));
        }
        if !self.verify_acyclic() {
            return Err(Error::invalid("the matching is not acyclic"));
        }
        let census = self.critical_census(false);
        let occupied: Vec<usize> = (0..census.counts.len())
            .filter(|&d| census.counts[d] > 0)
            .collect();
        let shape = match occupied.as_slice() {
            [] => HomotopyShape::Contractible,
            [d] => HomotopyShape::WedgeOfSpheres {
                dim: *d,
                count: census.counts[*d],
            },
            _ => HomotopyShape::RawCensus,
        };
        let low = |d: usize| census.counts.get(d).copied().unwrap_or(0);
        Ok(HomotopyReport {
            shape,
            simply_connected_evidence: low(0) == 0 && low(1) == 0,
            census,
        })
    }

    pub fn to_document(&self, witnesses: bool) -> CensusDocument {
        let census = self.critical_census(witnesses);
        let acyclic = self.verify_acyclic();
        let shape = self.homotopy_report().ok().map(|h| h.shape);
        CensusDocument {
            schema_version: CENSUS_SCHEMA_VERSION,
            complex_digest: self.digest.clone(),
            counts: census.counts,
            empty_critical: census.empty_critical,
            acyclic,
            verdict: shape,
            witnesses: census.witnesses,
        }
    }
}

/// The anti-lex matching on the face poset of `k`. `dmax` must reach the
/// clique dimension of `k` so that the poset is complete.
pub fn build_matching_mu(k: &FlagComplex, dmax: isize, caps: &Caps) -> Result<MorseMatching> {
    let mut m = MorseMatching::empty_for(k, dmax, caps)?;
    let nv = k.len();
    // Per-vertex list of simplex ids containing that vertex.
    let mut cofaces: Vec<Vec<u32>> = vec![Vec::new(); nv];
    for size in 1..m.table.counts().len() {
        for i in 0..m.table.count(size) {
            let id = (m.offsets[size] + i) as u32;
            for &v in m.table.get(size, i) {
                cofaces[v as usize].push(id);
            }
        }
    }
    let mut buf: Vec<u32> = Vec::new();
    for (v, list) in cofaces.iter().enumerate() {
        for &t in list {
            let t = t as usize;
            if m.partner[t] != UNMATCHED {
                continue;
            }
            buf.clear();
            buf.extend(
                m.vertices_of(t)
                    .iter()
                    .copied()
                    .filter(|&w| w as usize != v),
            );
            let s = m.id_of(&buf).expect("faces of a simplex are simplices");
            if m.partner[s] == UNMATCHED {
                m.pair(s, t);
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalCensus {
    /// Critical cells by dimension, starting at 0; trailing zeros trimmed.
    pub counts: Vec<usize>,
    pub empty_critical: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<Vec<Vec<LatticePoint>>>>,
}

impl CriticalCensus {
    pub fn count(&self, dim: usize) -> usize {
        self.counts.get(dim).copied().unwrap_or(0)
    }

    /// Euler characteristic of the CW model: one cell per critical face plus
    /// the extra 0-cell.
    pub fn euler_characteristic(&self) -> i64 {
        let cells: i64 = self
            .counts
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum();
        cells + if self.empty_critical { 0 } else { 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum HomotopyShape {
    Contractible,
    WedgeOfSpheres {
        dim: usize,
        count: usize,
    },
    /// Critical cells in several dimensions; no homotopy claim.
    RawCensus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyReport {
    pub shape: HomotopyShape,
    /// No critical cells in dimensions 0 and 1.
    pub simply_connected_evidence: bool,
    pub census: CriticalCensus,
}

pub const CENSUS_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDocument {
    pub schema_version: u32,
    pub complex_digest: String,
    pub counts: Vec<usize>,
    pub empty_critical: bool,
    pub acyclic: bool,
    pub verdict: Option<HomotopyShape>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<Vec<Vec<LatticePoint>>>>,
}

/// Projection onto the first three coordinates.
pub fn project_retraction(v: &LatticePoint) -> Result<LatticePoint> {
    if v.dim() < 3 {
        return Err(Error::invalid("projection needs n >= 3"));
    }
    LatticePoint::new(v.coords()[..3].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, grid_complex};
    use crate::lattice::GridSpec;

    fn line(k: usize, r: u32) -> FlagComplex {
        let v = (0..k as i32).map(|i| LatticePoint::from([i])).collect();
        build_complex(v, r, &Caps::default()).unwrap()
    }

    #[test]
    fn single_edge() {
        let k = line(2, 1);
        let m = build_matching_mu(&k, 1, &Caps::default()).unwrap();
        assert_eq!(
            m.pairs(),
            vec![
                (Simplex::empty(), Simplex(vec![0])),
                (Simplex(vec![1]), Simplex(vec![0, 1]))
            ]
        );
        assert!(m.critical_census(false).counts.is_empty());
        assert!(m.verify_acyclic());
    }

    #[test]
    fn complete_complex_has_no_critical_cells() {
        let k = line(5, 10);
        let m = build_matching_mu(&k, 4, &Caps::default()).unwrap();
        let c = m.critical_census(true);
        assert!(c.counts.is_empty() && !c.empty_critical);
        assert_eq!(
            m.homotopy_report().unwrap().shape,
            HomotopyShape::Contractible
        );
    }

    #[test]
    fn dmax_below_clique_dimension_is_rejected() {
        let k = line(4, 10);
        assert!(build_matching_mu(&k, 2, &Caps::default()).is_err());
        assert!(build_matching_mu(&k, 3, &Caps::default()).is_ok());
    }

    #[test]
    fn cycle_in_square_boundary_is_detected() {
        // 4-cycle a-b-d-c-a at scale 1; pair every vertex with the next edge
        // around the cycle so the gradient path closes up.
        let pts: Vec<LatticePoint> = [[0, 0], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|c| LatticePoint::from(*c))
            .collect();
        let k = build_complex(pts, 1, &Caps::default()).unwrap();
        let s = |v: &[u32]| Simplex(v.to_vec());
        let pairs = vec![
            (s(&[0]), s(&[0, 1])),
            (s(&[1]), s(&[1, 3])),
            (s(&[3]), s(&[2, 3])),
            (s(&[2]), s(&[0, 2])),
        ];
        let m = MorseMatching::from_pairs(&k, 1, &pairs, &Caps::default()).unwrap();
        assert!(!m.verify_acyclic());
        let empty = MorseMatching::from_pairs(&k, 1, &[], &Caps::default()).unwrap();
        assert!(empty.verify_acyclic());
        assert!(empty.homotopy_report().is_err());
    }

    #[test]
    fn from_pairs_rejects_bad_structure() {
        let k = line(3, 1);
        let s = |v: &[u32]| Simplex(v.to_vec());
        let caps = Caps::default();
        assert!(MorseMatching::from_pairs(&k, 1, &[(s(&[0]), s(&[1, 2]))], &caps).is_err());
        assert!(MorseMatching::from_pairs(&k, 1, &[(s(&[0]), s(&[0, 2]))], &caps).is_err());
        let twice = [(s(&[1]), s(&[0, 1])), (s(&[1]), s(&[1, 2]))];
        assert!(MorseMatching::from_pairs(&k, 1, &twice, &caps).is_err());
    }

    #[test]
    fn raw_census_when_dimensions_mix() {
        // Two disjoint edges plus a lone vertex leave critical vertices only;
        // a hexagon plus a far triangle boundary mixes dimensions 0 and 1.
        let pts: Vec<LatticePoint> = [
            [1, 0, 0],
            [1, 1, 0],
            [0, 1, 0],
            [0, 1, 1],
            [0, 0, 1],
            [1, 0, 1],
            [9, 9, 9],
        ]
        .iter()
        .map(|c| LatticePoint::from(*c))
        .collect();
        let k = build_complex(pts, 1, &Caps::default()).unwrap();
        let m = build_matching_mu(&k, 2, &Caps::default()).unwrap();
        let h = m.homotopy_report().unwrap();
        assert_eq!(h.census.counts, vec![1, 1]);
        assert_eq!(h.shape, HomotopyShape::RawCensus);
        assert!(!h.simply_connected_evidence);
    }

    #[test]
    fn small_scale_two_census() {
        let caps = Caps::default();
        let k = grid_complex(&GridSpec::new(3, 3, 2).unwrap(), &caps).unwrap();
        let m = build_matching_mu(&k, 6, &caps).unwrap();
        assert!(m.verify_acyclic());
        let c = m.critical_census(false);
        assert_eq!(c.count(0) + c.count(1) + c.count(2), 0);
        assert!(c.count(3) >= 1);
        assert!(c.counts.len() <= 4);
        assert_eq!(c.euler_characteristic(), m.euler_characteristic());
        let again = build_matching_mu(&k, 6, &caps).unwrap();
        assert_eq!(again.pairs(), m.pairs());
    }

    #[test]
    fn retraction() {
        let p = LatticePoint::from([1, 2, 3, 4]);
        assert_eq!(
            project_retraction(&p).unwrap(),
            LatticePoint::from([1, 2, 3])
        );
        assert!(project_retraction(&LatticePoint::from([1, 2])).is_err());
        let q = LatticePoint::from([3, 0, 2]);
        assert_eq!(project_retraction(&q.padded(5)).unwrap(), q);
    }
}
