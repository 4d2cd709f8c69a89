//! Finite directed graphs as square 0/1 adjacency matrices.
//!
//! A graph on `n` vertices generates the topological Markov chain of all
//! bi-infinite vertex sequences that follow its edges. Graph morphisms are
//! vertex surjections that carry edges to edges; they induce 0-memory
//! sliding block codes between the generated chains.
//!
//! Vertices are 0-based in this API. File formats and CLI output use 1-based
//! indices (see [`crate::formats`]).

mod search;

pub use search::{find_right_inverse, graph_isomorphic, ISOMORPHISM_SIZE_LIMIT};

use std::fmt;

use crate::error::{Error, Result};

/// Square 0/1 matrix; `get(i, j)` is true iff there is an edge `i -> j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<bool>,
}

impl AdjacencyMatrix {
    /// Builds a matrix from `f(i, j)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("a graph needs at least one vertex".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Ok(Self { n, entries })
    }

    /// Builds a matrix from rows of 0/1 entries.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("a graph needs at least one vertex".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => entries.push(false),
                    1 => entries.push(true),
                    _ => {
                        return Err(Error::InvalidMatrix(format!(
                            "entry ({}, {}) is {}, expected 0 or 1",
                            i + 1,
                            j + 1,
                            v
                        )))
                    }
                }
            }
        }
        Ok(Self { n, entries })
    }

    /// Builds a matrix from a list of 0-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidMatrix(format!(
                    "edge ({i}, {j}) out of range for {n} vertices"
                )));
            }
            m.entries[i * n + j] = true;
        }
        Ok(m)
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| false)
    }

    /// Complete graph with loops; generates the full `n`-shift.
    pub fn ones(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| i == j)
    }

    /// Single directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| (i + 1) % n == j)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.n + j]
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j))
    }

    pub fn predecessors(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.get(i, j))
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.successors(i).count()
    }

    pub fn in_degree(&self, j: usize) -> usize {
        self.predecessors(j).count()
    }

    pub fn edge_count(&self) -> usize {
        self.entries.iter().filter(|&&e| e).count()
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    /// Subgraph induced on `vertices` (in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.n) {
            return Err(Error::InvalidMatrix(format!("vertex {v} out of range")));
        }
        Self::from_fn(vertices.len(), |a, b| self.get(vertices[a], vertices[b]))
    }

    /// True iff every vertex has in-degree and out-degree at least one.
    pub fn is_essential(&self) -> bool {
        (0..self.n).all(|v| self.out_degree(v) > 0 && self.in_degree(v) > 0)
    }
}

impl fmt::Debug for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdjacencyMatrix{:?}", self.rows())
    }
}

impl fmt::Display for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<&str> = (0..self.n).map(|j| if self.get(i, j) { "1" } else { "0" }).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A map from `{0, .., n-1}` into `{0, .., m-1}`, not necessarily onto.
///
/// Sections (right inverses) of graph morphisms are plain vertex maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMap {
    codomain_size: usize,
    image: Vec<usize>,
}

impl VertexMap {
    pub fn new(image: Vec<usize>, codomain_size: usize) -> Result<Self> {
        if let Some(&v) = image.iter().find(|&&v| v >= codomain_size) {
            return Err(Error::InvalidVertexMap(format!(
                "value {} outside 1..={}",
                v + 1,
                codomain_size
            )));
        }
        Ok(Self { codomain_size, image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            codomain_size: n,
            image: (0..n).collect(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.image.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v + 1).collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain_size];
        for &v in &self.image {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// Formats as `(1↦2, 2↦3)` with 1-based indices.
impl fmt::Display for VertexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .image
            .iter()
            .enumerate()
            .map(|(i, &v)| format!("{}↦{}", i + 1, v + 1))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A vertex map that hits every codomain vertex: a candidate graph morphism,
/// equivalently the local rule of a 0-memory block code.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSurjection(VertexMap);

impl VertexSurjection {
    /// `image[i]` is the 0-based target of vertex `i`.
    pub fn new(image: Vec<usize>, codomain_size: usize) -> Result<Self> {
        let map = VertexMap::new(image, codomain_size)?;
        Self::try_from(map)
    }

    pub fn from_one_based(image: &[usize], codomain_size: usize) -> Result<Self> {
        if image.contains(&0) {
            return Err(Error::InvalidVertexMap("values are 1-based".into()));
        }
        Self::new(image.iter().map(|&v| v - 1).collect(), codomain_size)
    }

    pub fn identity(n: usize) -> Self {
        Self(VertexMap::identity(n))
    }

    pub fn as_map(&self) -> &VertexMap {
        &self.0
    }

    pub fn into_map(self) -> VertexMap {
        self.0
    }

    pub fn domain_size(&self) -> usize {
        self.0.domain_size()
    }

    pub fn codomain_size(&self) -> usize {
        self.0.codomain_size()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0.apply(i)
    }

    pub fn image(&self) -> &[usize] {
        self.0.image()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.one_based()
    }

    /// Preimages of each codomain vertex, each sorted ascending.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.codomain_size()];
        for (i, &v) in self.image().iter().enumerate() {
            fibers[v].push(i);
        }
        fibers
    }

    /// `outer ∘ self`; coarsens the partition into fibers.
    pub fn then(&self, outer: &VertexSurjection) -> Result<VertexSurjection> {
        if outer.domain_size() != self.codomain_size() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose a map onto {} vertices with a map from {}",
                self.codomain_size(),
                outer.domain_size()
            )));
        }
        Self::new(
            self.image().iter().map(|&v| outer.apply(v)).collect(),
            outer.codomain_size(),
        )
    }

    /// Pairwise product `(i, k) ↦ (f(i), g(k))`, with pairs ordered row-major
    /// to match [`kronecker_product`].
    pub fn product(f: &VertexSurjection, g: &VertexSurjection) -> VertexSurjection {
        let mg = g.codomain_size();
        let image = f
            .image()
            .iter()
            .flat_map(|&a| g.image().iter().map(move |&b| a * mg + b))
            .collect();
        VertexSurjection(VertexMap {
            codomain_size: f.codomain_size() * mg,
            image,
        })
    }
}

impl TryFrom<VertexMap> for VertexSurjection {
    type Error = Error;

    fn try_from(map: VertexMap) -> Result<Self> {
        if !map.is_surjective() {
            return Err(Error::InvalidVertexMap(format!(
                "map onto {} vertices is not surjective",
                map.codomain_size()
            )));
        }
        Ok(Self(map))
    }
}

impl fmt::Display for VertexSurjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Checks `a[i][j] = 1 ⇒ b[map(i)][map(j)] = 1` without requiring surjectivity.
pub fn preserves_edges(a: &AdjacencyMatrix, b: &AdjacencyMatrix, map: &VertexMap) -> Result<bool> {
    if map.domain_size() != a.n() || map.codomain_size() != b.n() {
        return Err(Error::DimensionMismatch(format!(
            "map {} -> {} does not fit graphs of size {} and {}",
            map.domain_size(),
            map.codomain_size(),
            a.n(),
            b.n()
        )));
    }
    Ok((0..a.n()).all(|i| a.successors(i).all(|j| b.get(map.apply(i), map.apply(j)))))
}

/// True iff `f` is a graph morphism `a -> b`.
pub fn is_graph_morphism(a: &AdjacencyMatrix, b: &AdjacencyMatrix, f: &VertexSurjection) -> Result<bool> {
    preserves_edges(a, b, f.as_map())
}

/// The graph on the fibers of `f`: an edge `k -> l` iff some edge of `a` runs
/// from `f⁻¹(k)` to `f⁻¹(l)`.
pub fn quotient_graph(a: &AdjacencyMatrix, f: &VertexSurjection) -> Result<AdjacencyMatrix> {
    if f.domain_size() != a.n() {
        return Err(Error::DimensionMismatch(format!(
            "vertex map has domain {}, graph has {} vertices",
            f.domain_size(),
            a.n()
        )));
    }
    let m = f.codomain_size();
    let mut entries = vec![false; m * m];
    for i in 0..a.n() {
        for j in a.successors(i) {
            entries[f.apply(i) * m + f.apply(j)] = true;
        }
    }
    AdjacencyMatrix::from_fn(m, |k, l| entries[k * m + l])
}

/// The part of a graph that carries bi-infinite paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialSubgraph {
    /// Induced subgraph on `kept`; `None` when nothing survives.
    pub matrix: Option<AdjacencyMatrix>,
    /// Surviving original vertices, ascending.
    pub kept: Vec<usize>,
}

impl EssentialSubgraph {
    pub fn is_empty(&self) -> bool {
        self.kept.is_empty()
    }

    pub fn require(&self) -> Result<&AdjacencyMatrix> {
        self.matrix.as_ref().ok_or(Error::EmptySubshift)
    }
}

/// Maximal subgraph in which every vertex has in- and out-degree at least one.
pub fn essential_subgraph(a: &AdjacencyMatrix) -> EssentialSubgraph {
    let n = a.n();
    let mut alive = vec![true; n];
    let mut out_deg: Vec<usize> = (0..n).map(|i| a.out_degree(i)).collect();
    let mut in_deg: Vec<usize> = (0..n).map(|j| a.in_degree(j)).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| out_deg[v] == 0 || in_deg[v] == 0).collect();
    for &v in &queue {
        alive[v] = false;
    }
    while let Some(v) = queue.pop() {
        for w in a.successors(v) {
            if alive[w] {
                in_deg[w] -= 1;
                if in_deg[w] == 0 {
                    alive[w] = false;
                    queue.push(w);
                }
            }
        }
        for u in a.predecessors(v) {
            if alive[u] {
                out_deg[u] -= 1;
                if out_deg[u] == 0 {
                    alive[u] = false;
                    queue.push(u);
                }
            }
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let matrix = if kept.is_empty() {
        None
    } else {
        // kept indices are in range by construction
        Some(a.induced(&kept).expect("kept vertices are in range"))
    };
    EssentialSubgraph { matrix, kept }
}

/// Kronecker product; vertex `(i, k)` has index `i * b.n() + k`.
pub fn kronecker_product(a: &AdjacencyMatrix, b: &AdjacencyMatrix) -> AdjacencyMatrix {
    let nb = b.n();
    AdjacencyMatrix::from_fn(a.n() * nb, |r, c| a.get(r / nb, c / nb) && b.get(r % nb, c % nb))
        .expect("product of nonempty graphs is nonempty")
}
