//! Perron spectral radius and topological entropy of topological Markov chains.
//!
//! The entropy of the chain generated by a graph is the natural logarithm of
//! the spectral radius of its (essential) adjacency matrix. The radius of a
//! nonnegative matrix is the maximum over its strongly connected components.
//! On each nontrivial component we run power iteration on `M + I`: the shift
//! makes the component primitive, so the iteration converges even for pure
//! cycles, and the Collatz–Wielandt bounds
//! `min_i (Mx)_i / x_i <= ρ <= max_i (Mx)_i / x_i` give a rigorous residual.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{essential_subgraph, AdjacencyMatrix};

/// Numerical and resource knobs shared by the entropy routines.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// Absolute bound on the Collatz–Wielandt gap at convergence.
    pub tolerance: f64,
    /// Power-iteration cap per strongly connected component.
    pub max_iterations: usize,
    /// Largest number of words any enumeration may produce.
    pub enumeration_cap: u64,
    /// Largest number of subset states in a determinization.
    pub state_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            max_iterations: 1_000_000,
            enumeration_cap: 10_000_000,
            state_cap: 1 << 20,
        }
    }
}

/// Which route produced an entropy value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// `ln` of the spectral radius of the chain's own graph.
    Spectral,
    /// Entropy of the quotient graph, certified by a right-inverse morphism.
    Section,
    /// Entropy of the determinized image presentation.
    Sofic,
    /// Growth rate of exact image-word counts.
    Bruteforce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Spectral => "spectral",
            Method::Section => "section",
            Method::Sofic => "sofic",
            Method::Bruteforce => "bruteforce",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An entropy value in nats, with provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub value: f64,
    pub method: Method,
    /// Convergence residual, or the disagreement between two routes when a
    /// cross-check was run.
    pub residual: f64,
    pub iterations: usize,
}

/// Square matrix with nonnegative entries.
pub trait NonnegativeMatrix {
    fn dim(&self) -> usize;
    fn entry(&self, i: usize, j: usize) -> f64;
}

impl NonnegativeMatrix for AdjacencyMatrix {
    fn dim(&self) -> usize {
        self.n()
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        if self.get(i, j) {
            1.0
        } else {
            0.0
        }
    }
}

/// Square matrix of nonnegative integers, e.g. a power of an adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountMatrix {
    n: usize,
    entries: Vec<u64>,
}

impl CountMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Self { n, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    /// Matrix product; fails on `u64` overflow.
    pub fn mul(&self, other: &CountMatrix) -> Result<CountMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        let n = self.n;
        let overflow = || Error::InvalidMatrix("integer overflow in matrix product".into());
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let p = a.checked_mul(other.get(k, j)).ok_or_else(overflow)?;
                    entries[i * n + j] = entries[i * n + j].checked_add(p).ok_or_else(overflow)?;
                }
            }
        }
        Ok(CountMatrix { n, entries })
    }

    /// `self^exp` by repeated squaring.
    pub fn pow(&self, mut exp: u32) -> Result<CountMatrix> {
        let mut base = self.clone();
        let mut acc = CountMatrix::identity(self.n);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

impl From<&AdjacencyMatrix> for CountMatrix {
    fn from(a: &AdjacencyMatrix) -> Self {
        let n = a.n();
        let entries = (0..n * n).map(|k| a.get(k / n, k % n) as u64).collect();
        Self { n, entries }
    }
}

impl NonnegativeMatrix for CountMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        self.get(i, j) as f64
    }
}

/// Strongly connected components of the support graph of `m`, as vertex
/// lists. Iterative Tarjan; components come out in reverse topological order.
pub fn strongly_connected_components<M: NonnegativeMatrix + ?Sized>(m: &M) -> Vec<Vec<usize>> {
    let n = m.dim();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| m.entry(i, j) > 0.0).collect())
        .collect();
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next = 0;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        // (vertex, position in its successor list)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
    }
    components
}

/// Spectral radius with its certified residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusEstimate {
    pub radius: f64,
    /// Width of the final Collatz–Wielandt bracket (0 for trivial components).
    pub residual: f64,
    pub iterations: usize,
}

/// Perron spectral radius of a nonnegative matrix.
///
/// Fails with [`Error::NonConvergence`] if some component's bracket is still
/// wider than `cfg.tolerance` after `cfg.max_iterations` steps.
pub fn spectral_radius<M: NonnegativeMatrix + ?Sized>(m: &M, cfg: &Config) -> Result<RadiusEstimate> {
    let mut best = RadiusEstimate {
        radius: 0.0,
        residual: 0.0,
        iterations: 0,
    };
    let mut worst_residual: f64 = 0.0;
    let mut total_iterations = 0;
    for comp in strongly_connected_components(m) {
        if comp.len() == 1 && m.entry(comp[0], comp[0]) == 0.0 {
            // trivial component: contributes nothing to the spectrum's radius
            continue;
        }
        let est = component_radius(m, &comp, cfg)?;
        total_iterations += est.iterations;
        worst_residual = worst_residual.max(est.residual);
        if est.radius > best.radius {
            best = est;
        }
    }
    Ok(RadiusEstimate {
        radius: best.radius,
        residual: worst_residual,
        iterations: total_iterations,
    })
}

fn component_radius<M: NonnegativeMatrix + ?Sized>(m: &M, comp: &[usize], cfg: &Config) -> Result<RadiusEstimate> {
    let k = comp.len();
    // sparse rows of (M + I) restricted to the component
    let rows: Vec<Vec<(usize, f64)>> = comp
        .iter()
        .enumerate()
        .map(|(a, &i)| {
            comp.iter()
                .enumerate()
                .filter_map(|(b, &j)| {
                    let w = m.entry(i, j) + if a == b { 1.0 } else { 0.0 };
                    (w > 0.0).then_some((b, w))
                })
                .collect()
        })
        .collect();

    let mut x = vec![1.0f64; k];
    let mut y = vec![0.0f64; k];
    let mut gap = f64::INFINITY;
    for iteration in 1..=cfg.max_iterations {
        for (a, row) in rows.iter().enumerate() {
            y[a] = row.iter().map(|&(b, w)| w * x[b]).sum();
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for a in 0..k {
            let r = y[a] / x[a];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        gap = hi - lo;
        if gap <= cfg.tolerance {
            return Ok(RadiusEstimate {
                radius: (lo + hi) / 2.0 - 1.0,
                residual: gap,
                iterations: iteration,
            });
        }
        let scale = y.iter().cloned().fold(0.0, f64::max);
        for a in 0..k {
            x[a] = y[a] / scale;
        }
    }
    Err(Error::NonConvergence {
        residual: gap,
        iterations: cfg.max_iterations,
    })
}

/// Topological entropy of the chain generated by `a`, in nats.
///
/// The graph is first trimmed to its essential part; an empty result means the
/// chain has no points and fails with [`Error::EmptySubshift`].
pub fn entropy(a: &AdjacencyMatrix, cfg: &Config) -> Result<EntropyReport> {
    let essential = essential_subgraph(a);
    let trimmed = essential.require()?;
    let est = spectral_radius(trimmed, cfg)?;
    Ok(EntropyReport {
        value: est.radius.ln().max(0.0),
        method: Method::Spectral,
        residual: est.residual,
        iterations: est.iterations,
    })
}
