//! Flag complexes stored as their 1-skeleton.
//!
//! Simplices are never materialized globally: a vertex set is a simplex iff
//! it is a clique, so the adjacency bitsets describe everything. Enumeration
//! ([`SimplexTable`]) and maximal cliques are computed on demand.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::digest::complex_digest;
use crate::error::{Error, Result};
use crate::lattice::{shift, shift_by, GammaSpec, GridSpec, IndexSet, LatticePoint};

/// Where a complex came from; carried into reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Grid { m: usize },
    Gamma { m: usize, alpha: usize },
    Induced,
    External,
}

/// Finite vertex set of Z^n with adjacency at scale `r`.
#[derive(Clone, Debug)]
pub struct FlagComplex {
    n: usize,
    vertices: Vec<LatticePoint>,
    scale: u32,
    adjacency: Vec<FixedBitSet>,
    provenance: Provenance,
}

/// A simplex as strictly increasing vertex indices into its complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(pub Vec<u32>);

impl Simplex {
    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    /// Dimension; the empty simplex has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn build_complex(points: Vec<LatticePoint>, r: u32, caps: &Caps) -> Result<FlagComplex> {
    build_with_provenance(points, r, Provenance::External, caps)
}

fn build_with_provenance(
    mut points: Vec<LatticePoint>,
    r: u32,
    provenance: Provenance,
    caps: &Caps,
) -> Result<FlagComplex> {
    caps.check_vertices(points.len())?;
    let n = points.first().map_or(0, LatticePoint::dim);
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch {
            left: n,
            right: p.dim(),
        });
    }
    points.sort();
    if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::invalid(format!("duplicate point {}", w[0])));
    }
    let nv = points.len();
    let mut adjacency = vec![FixedBitSet::with_capacity(nv); nv];
    for i in 0..nv {
        for j in i + 1..nv {
            if points[i].dist(&points[j]) <= r {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
        }
    }
    Ok(FlagComplex {
        n,
        vertices: points,
        scale: r,
        adjacency,
        provenance,
    })
}

/// The Rips complex of the box {0..m}^n at the grid's scale.
pub fn grid_complex(spec: &GridSpec, caps: &Caps) -> Result<FlagComplex> {
    let pts = crate::lattice::grid_vertices(spec, caps)?;
    build_with_provenance(pts, spec.r, Provenance::Grid { m: spec.m }, caps)
}

/// The link complex of the origin in the truncated, shifted box.
pub fn gamma_complex(spec: &GammaSpec, caps: &Caps) -> Result<FlagComplex> {
    let pts = crate::lattice::gamma_vertices(spec, caps)?;
    let mut k = build_with_provenance(
        pts,
        spec.grid.r,
        Provenance::Gamma {
            m: spec.grid.m,
            alpha: spec.alpha,
        },
        caps,
    )?;
    k.n = spec.grid.n;
    Ok(k)
}

impl FlagComplex {
    /// The complex with no vertices (only the empty simplex).
    pub fn empty(n: usize, r: u32) -> FlagComplex {
        FlagComplex {
            n,
            vertices: Vec::new(),
            scale: r,
            adjacency: Vec::new(),
            provenance: Provenance::External,
        }
    }

    /// Ambient dimension (0 for a complex built from no points).
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &LatticePoint {
        &self.vertices[i]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Open neighbourhood bitset of vertex `i`.
    pub fn neighbors(&self, i: usize) -> &FixedBitSet {
        &self.adjacency[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency
            .iter()
            .map(|a| a.count_ones(..))
            .sum::<usize>()
            / 2
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        if p.dim() != self.n {
            return None;
        }
        self.vertices.binary_search(p).ok()
    }

    fn require(&self, p: &LatticePoint) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::UnknownVertex(p.to_string()))
    }

    pub fn digest(&self) -> String {
        complex_digest(self.n, self.scale, &self.vertices)
    }

    /// Re-derives every adjacency bit from the metric.
    pub fn check_adjacency(&self) -> bool {
        let nv = self.len();
        (0..nv).all(|i| {
            !self.adjacency[i].contains(i)
                && (0..nv).filter(|&j| j != i).all(|j| {
                    let want = self.vertices[i].dist(&self.vertices[j]) <= self.scale;
                    self.adjacency[i].contains(j) == want && self.adjacency[j].contains(i) == want
                })
        }) && self.vertices.windows(2).all(|w| w[0] < w[1])
    }

    pub fn closed_neighborhood(&self, v: &LatticePoint) -> Result<Vec<LatticePoint>> {
        let i = self.require(v)?;
        let mut out: Vec<LatticePoint> = self.adjacency[i]
            .ones()
            .map(|j| self.vertices[j].clone())
            .collect();
        out.push(v.clone());
        out.sort();
        Ok(out)
    }

    /// The link of a vertex: in a flag complex, the induced complex on its
    /// open neighbourhood.
    pub fn link(&self, v: &LatticePoint) -> Result<FlagComplex> {
        let i = self.require(v)?;
        let keep: Vec<usize> = self.adjacency[i].ones().collect();
        Ok(self.induced_indices(&keep))
    }

    pub fn induced<F: Fn(&LatticePoint) -> bool>(&self, keep: F) -> FlagComplex {
        let idx: Vec<usize> = (0..self.len())
            .filter(|&i| keep(&self.vertices[i]))
            .collect();
        self.induced_indices(&idx)
    }

    /// Restriction to the given vertex indices (must be strictly increasing).
    pub fn induced_indices(&self, keep: &[usize]) -> FlagComplex {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let k = keep.len();
        let mut adjacency = vec![FixedBitSet::with_capacity(k); k];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                if self.adjacency[i].contains(j) {
                    adjacency[a].insert(b);
                    adjacency[b].insert(a);
                }
            }
        }
        FlagComplex {
            n: self.n,
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            scale: self.scale,
            adjacency,
            provenance: Provenance::Induced,
        }
    }

    /// Every clique with at most `dmax + 1` vertices, the empty one included.
    pub fn simplices_up_to(&self, dmax: isize, caps: &Caps) -> Result<SimplexTable> {
        if dmax < -1 {
            return Err(Error::invalid("dmax must be at least -1"));
        }
        SimplexTable::build(self, Some((dmax + 1) as usize), caps)
    }

    /// Every clique, the empty one included.
    pub fn all_simplices(&self, caps: &Caps) -> Result<SimplexTable> {
        SimplexTable::build(self, None, caps)
    }

    /// All maximal cliques, each sorted, in lexicographic order.
    pub fn maximal_simplices(&self, caps: &Caps) -> Result<Vec<Simplex>> {
        let nv = self.len();
        let mut out = Vec::new();
        if nv == 0 {
            out.push(Simplex::empty());
            return Ok(out);
        }
        let mut p = FixedBitSet::with_capacity(nv);
        p.insert_range(..);
        let x = FixedBitSet::with_capacity(nv);
        let mut r = Vec::new();
        self.bron_kerbosch(&mut r, p, x, &mut out, caps)?;
        for s in &mut out {
            s.0.sort_unstable();
        }
        out.sort();
        Ok(out)
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<u32>,
        mut p: FixedBitSet,
        mut x: FixedBitSet,
        out: &mut Vec<Simplex>,
        caps: &Caps,
    ) -> Result<()> {
        if p.is_clear() {
            if x.is_clear() {
                if out.len() >= caps.max_maximal {
                    return Err(Error::cap(
                        "maximal simplices",
                        caps.max_maximal,
                        out.len() + 1,
                    ));
                }
                out.push(Simplex(r.clone()));
            }
            return Ok(());
        }
        // Tomita pivot: the vertex of P ∪ X with the most neighbours in P.
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| {
                (
                    p.intersection_count(&self.adjacency[u]),
                    std::cmp::Reverse(u),
                )
            })
            .expect("P is nonempty");
        let mut cand = p.clone();
        cand.difference_with(&self.adjacency[pivot]);
        for v in cand.ones() {
            let mut p2 = p.clone();
            p2.intersect_with(&self.adjacency[v]);
            let mut x2 = x.clone();
            x2.intersect_with(&self.adjacency[v]);
            r.push(v as u32);
            self.bron_kerbosch(r, p2, x2, out, caps)?;
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
        Ok(())
    }

    /// True iff `s` is a clique not contained in a larger one.
    pub fn is_maximal(&self, s: &Simplex) -> bool {
        if !self.is_clique(&s.0) {
            return false;
        }
        let mut common = FixedBitSet::with_capacity(self.len());
        common.insert_range(..);
        for &v in &s.0 {
            common.intersect_with(&self.adjacency[v as usize]);
        }
        common.is_clear()
    }

    pub fn is_clique(&self, vs: &[u32]) -> bool {
        vs.iter().enumerate().all(|(a, &u)| {
            (u as usize) < self.len()
                && vs[a + 1..]
                    .iter()
                    .all(|&w| self.adjacency[u as usize].contains(w as usize))
        })
    }

    pub fn simplex_points(&self, s: &Simplex) -> Vec<LatticePoint> {
        s.0.iter()
            .map(|&i| self.vertices[i as usize].clone())
            .collect()
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            schema_version: COMPLEX_SCHEMA_VERSION,
            n: self.n,
            scale: self.scale,
            vertices: self.vertices.clone(),
            provenance: self.provenance.clone(),
            edge_count: Some(self.edge_count()),
            digest: Some(self.digest()),
        }
    }

    /// Rebuilds a complex from its document, recomputing adjacency and
    /// cross-checking the stored edge count.
    pub fn from_document(doc: &ComplexDocument, caps: &Caps) -> Result<FlagComplex> {
        if doc.schema_version != COMPLEX_SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "complex schema version {} (expected {COMPLEX_SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        let mut k = build_with_provenance(
            doc.vertices.clone(),
            doc.scale,
            doc.provenance.clone(),
            caps,
        )?;
        if !k.is_empty() && k.n != doc.n {
            return Err(Error::DimensionMismatch {
                left: doc.n,
                right: k.n,
            });
        }
        k.n = doc.n;
        if let Some(e) = doc.edge_count {
            if e != k.edge_count() {
                return Err(Error::Schema(format!(
                    "stored edge count {e} disagrees with recomputed {}",
                    k.edge_count()
                )));
            }
        }
        Ok(k)
    }
}

pub const COMPLEX_SCHEMA_VERSION: u32 = 1;

/// Serialized form of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub schema_version: u32,
    pub n: usize,
    pub scale: u32,
    pub vertices: Vec<LatticePoint>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
}

/// All simplices of a complex up to some size, grouped by size.
///
/// `levels[k]` stores the k-vertex simplices (dimension k-1) as a flat array
/// of k indices each, in lexicographic order. `levels[0]` holds the empty
/// simplex once.
#[derive(Clone, Debug)]
pub struct SimplexTable {
    levels: Vec<Vec<u32>>,
    counts: Vec<usize>,
    complete: bool,
}

impl SimplexTable {
    fn build(k: &FlagComplex, max_size: Option<usize>, caps: &Caps) -> Result<SimplexTable> {
        let nv = k.len();
        let mut levels: Vec<Vec<u32>> = vec![Vec::new()];
        let mut counts = vec![1usize];
        let mut total = 1usize;
        let mut size = 0usize;
        let mut scratch = FixedBitSet::with_capacity(nv);
        loop {
            let at_limit = max_size.is_some_and(|m| size >= m);
            let cur = &levels[size];
            let mut next: Vec<u32> = Vec::new();
            let mut next_count = 0usize;
            for s in 0..counts[size] {
                let simplex = &cur[s * size..(s + 1) * size];
                let start = simplex.last().map_or(0, |&l| l as usize + 1);
                if start >= nv {
                    continue;
                }
                scratch.clear();
                scratch.insert_range(start..);
                for &v in simplex {
                    scratch.intersect_with(&k.adjacency[v as usize]);
                }
                if at_limit {
                    if !scratch.is_clear() {
                        return Ok(SimplexTable {
                            levels,
                            counts,
                            complete: false,
                        });
                    }
                    continue;
                }
                for w in scratch.ones() {
                    next.extend_from_slice(simplex);
                    next.push(w as u32);
                    next_count += 1;
                }
                if next_count > caps.max_simplices_per_dim {
                    return Err(Error::cap(
                        format!("simplices of dimension {size} (enumeration stopped early)"),
                        caps.max_simplices_per_dim,
                        next_count,
                    ));
                }
            }
            if at_limit || next_count == 0 {
                break;
            }
            total += next_count;
            if total > caps.max_poset {
                return Err(Error::cap("face poset size", caps.max_poset, total));
            }
            levels.push(next);
            counts.push(next_count);
            size += 1;
        }
        Ok(SimplexTable {
            levels,
            counts,
            complete: true,
        })
    }

    /// Largest simplex size stored (dimension + 1).
    pub fn max_size(&self) -> usize {
        self.counts.len() - 1
    }

    /// Number of stored simplices with `size` vertices.
    pub fn count(&self, size: usize) -> usize {
        self.counts.get(size).copied().unwrap_or(0)
    }

    /// Counts by size, starting with the empty simplex.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// True when no clique larger than the stored ones exists.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn get(&self, size: usize, idx: usize) -> &[u32] {
        &self.levels[size][idx * size..(idx + 1) * size]
    }

    /// Position of a sorted vertex list within its size class.
    pub fn find(&self, vs: &[u32]) -> Option<usize> {
        let size = vs.len();
        if size >= self.counts.len() {
            return None;
        }
        if size == 0 {
            return Some(0);
        }
        let level = &self.levels[size];
        let (mut lo, mut hi) = (0usize, self.counts[size]);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match level[mid * size..(mid + 1) * size].cmp(vs) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Iterates in (dimension, lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.counts.len()).flat_map(move |size| {
            (0..self.counts[size]).map(move |i| Simplex(self.get(size, i).to_vec()))
        })
    }
}

/// Shape of a maximal simplex of a scale-2 box complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaximalKind {
    /// N[x] ∩ V
    ClosedNeighborhood,
    /// {x, x^i, x^j, x^{i,j}} ∩ V
    Square,
    /// {x, x^{i,j}, x^{j,k}, x^{i,k}} ∩ V
    TriangleSquare,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalSimplexClass {
    pub kind: MaximalKind,
    /// Base point, which may lie outside the box.
    pub base: Option<LatticePoint>,
    /// Signed axes (empty for closed neighbourhoods).
    pub indices: Vec<i32>,
}

impl MaximalSimplexClass {
    /// Regenerates the vertex set the witness describes, intersected with
    /// the complex's vertices.
    pub fn regenerate(&self, k: &FlagComplex) -> Option<Vec<u32>> {
        let x = self.base.as_ref()?;
        let pts = witness_points(x, self.kind, &self.indices)?;
        Some(intersect_with_vertices(k, &pts))
    }
}

fn witness_points(x: &LatticePoint, kind: MaximalKind, idx: &[i32]) -> Option<Vec<LatticePoint>> {
    let n = x.dim();
    let sh = |v: &[i32]| shift(x, &IndexSet::new(v.to_vec(), n).ok()?).ok();
    match (kind, idx) {
        (MaximalKind::ClosedNeighborhood, []) => {
            let mut pts = vec![x.clone()];
            for i in 1..=n {
                pts.push(shift_by(x, i, 1).ok()?);
                pts.push(shift_by(x, i, -1).ok()?);
            }
            Some(pts)
        }
        (MaximalKind::Square, &[i, j]) => Some(vec![x.clone(), sh(&[i])?, sh(&[j])?, sh(&[i, j])?]),
        (MaximalKind::TriangleSquare, &[i, j, k]) => {
            Some(vec![x.clone(), sh(&[i, j])?, sh(&[j, k])?, sh(&[i, k])?])
        }
        _ => None,
    }
}

fn intersect_with_vertices(k: &FlagComplex, pts: &[LatticePoint]) -> Vec<u32> {
    let mut out: Vec<u32> = pts
        .iter()
        .filter_map(|p| k.index_of(p))
        .map(|i| i as u32)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Classifies a maximal simplex of a scale-2 box complex by exhaustive
/// witness search over base points within distance 2 of its first vertex.
pub fn classify_maximal_r2(k: &FlagComplex, tau: &Simplex) -> Result<MaximalSimplexClass> {
    if k.scale() != 2 {
        return Err(Error::invalid("classification is defined at scale 2"));
    }
    let n = k.ambient_dim();
    if n < 2 {
        return Err(Error::invalid("classification needs n >= 2"));
    }
    if tau.is_empty() || !k.is_maximal(tau) {
        return Err(Error::invalid("simplex is not maximal"));
    }
    let anchor = k.vertex(tau.0[0] as usize);
    let bases = ball(anchor, 2);
    let signed: Vec<i32> = (1..=n as i32).flat_map(|i| [i, -i]).collect();

    let matches = |x: &LatticePoint, kind: MaximalKind, idx: &[i32]| {
        witness_points(x, kind, idx).is_some_and(|pts| intersect_with_vertices(k, &pts) == tau.0)
    };
    let found = |x: &LatticePoint, kind, idx: Vec<i32>| MaximalSimplexClass {
        kind,
        base: Some(x.clone()),
        indices: idx,
    };

    for x in &bases {
        if matches(x, MaximalKind::ClosedNeighborhood, &[]) {
            return Ok(found(x, MaximalKind::ClosedNeighborhood, vec![]));
        }
    }
    for x in &bases {
        for &i in &signed {
            for &j in &signed {
                if i.abs() < j.abs() && matches(x, MaximalKind::Square, &[i, j]) {
                    return Ok(found(x, MaximalKind::Square, vec![i, j]));
                }
            }
        }
    }
    for x in &bases {
        for &i in &signed {
            for &j in &signed {
                for &l in &signed {
                    let distinct = i.abs() < j.abs() && j.abs() < l.abs();
                    if distinct && matches(x, MaximalKind::TriangleSquare, &[i, j, l]) {
                        return Ok(found(x, MaximalKind::TriangleSquare, vec![i, j, l]));
                    }
                }
            }
        }
    }
    Ok(MaximalSimplexClass {
        kind: MaximalKind::Unclassified,
        base: None,
        indices: vec![],
    })
}

/// All points of Z^n within L1 distance `radius` of `c`, anti-lex sorted.
fn ball(c: &LatticePoint, radius: u32) -> Vec<LatticePoint> {
    fn rec(c: &[i32], k: usize, left: u32, cur: &mut Vec<i32>, out: &mut Vec<LatticePoint>) {
        if k == c.len() {
            out.push(LatticePoint::from(cur.clone()));
            return;
        }
        let l = left as i32;
        for d in -l..=l {
            cur.push(c[k] + d);
            rec(c, k + 1, left - d.unsigned_abs(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(c.coords(), 0, radius, &mut Vec::new(), &mut out);
    out.sort();
    out
}
