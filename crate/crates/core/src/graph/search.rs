//! Exhaustive searches over vertex maps: sections of graph morphisms and
//! graph isomorphism. Both are exponential in the worst case and meant for
//! small graphs.

use super::{is_graph_morphism, AdjacencyMatrix, VertexMap, VertexSurjection};
use crate::error::{Error, Result};

/// Largest graph accepted by [`graph_isomorphic`].
pub const ISOMORPHISM_SIZE_LIMIT: usize = 10;

/// Searches for a right inverse of the morphism `f: a -> b`.
///
/// A right inverse is a vertex map `g: b -> a` with `f(g(k)) = k` that carries
/// edges of `b` to edges of `a`. Its existence makes the induced block code
/// `S_a -> S_b` onto. Returns the lexicographically least such `g`, or `None`
/// when the search space is exhausted.
///
/// Fails with [`Error::NotAMorphism`] if `f` is not a graph morphism.
pub fn find_right_inverse(a: &AdjacencyMatrix, b: &AdjacencyMatrix, f: &VertexSurjection) -> Result<Option<VertexMap>> {
    if !is_graph_morphism(a, b, f)? {
        return Err(Error::NotAMorphism);
    }
    let m = b.n();
    // candidates for g(k): the fiber over k, minus vertices that cannot carry a
    // loop demanded by b
    let domains: Vec<Vec<usize>> = f
        .fibers()
        .into_iter()
        .enumerate()
        .map(|(k, fiber)| fiber.into_iter().filter(|&v| !b.get(k, k) || a.get(v, v)).collect())
        .collect();
    let mut assignment = vec![usize::MAX; m];
    let search = SectionSearch { a, b };
    if search.extend(0, &domains, &mut assignment) {
        Ok(Some(VertexMap::new(assignment, a.n())?))
    } else {
        Ok(None)
    }
}

struct SectionSearch<'g> {
    a: &'g AdjacencyMatrix,
    b: &'g AdjacencyMatrix,
}

impl SectionSearch<'_> {
    /// Assigns `g(k), g(k+1), ..` in order, smallest candidate first, pruning
    /// the domains of unassigned targets after each choice.
    fn extend(&self, k: usize, domains: &[Vec<usize>], assignment: &mut [usize]) -> bool {
        let m = domains.len();
        if k == m {
            return true;
        }
        for &v in &domains[k] {
            let mut pruned = domains.to_vec();
            pruned[k] = vec![v];
            let mut dead = false;
            for (l, domain) in pruned.iter_mut().enumerate().skip(k + 1) {
                let (fwd, back) = (self.b.get(k, l), self.b.get(l, k));
                if fwd || back {
                    domain.retain(|&u| (!fwd || self.a.get(v, u)) && (!back || self.a.get(u, v)));
                    if domain.is_empty() {
                        dead = true;
                        break;
                    }
                }
            }
            if dead {
                continue;
            }
            assignment[k] = v;
            if self.extend(k + 1, &pruned, assignment) {
                return true;
            }
        }
        false
    }
}

/// True iff some vertex permutation carries `a` onto `b`.
///
/// Exhaustive backtracking with degree-signature pruning; graphs larger than
/// [`ISOMORPHISM_SIZE_LIMIT`] are refused.
pub fn graph_isomorphic(a: &AdjacencyMatrix, b: &AdjacencyMatrix) -> Result<bool> {
    let n = a.n().max(b.n());
    if n > ISOMORPHISM_SIZE_LIMIT {
        return Err(Error::SizeLimitExceeded {
            size: n,
            limit: ISOMORPHISM_SIZE_LIMIT,
        });
    }
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let signature = |g: &AdjacencyMatrix, v: usize| (g.out_degree(v), g.in_degree(v), g.get(v, v));
    let sig_a: Vec<_> = (0..n).map(|v| signature(a, v)).collect();
    let sig_b: Vec<_> = (0..n).map(|v| signature(b, v)).collect();
    let (mut sorted_a, mut sorted_b) = (sig_a.clone(), sig_b.clone());
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return Ok(false);
    }

    fn place(
        i: usize,
        a: &AdjacencyMatrix,
        b: &AdjacencyMatrix,
        sig_a: &[(usize, usize, bool)],
        sig_b: &[(usize, usize, bool)],
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let n = a.n();
        if i == n {
            return true;
        }
        for t in 0..n {
            if used[t] || sig_a[i] != sig_b[t] {
                continue;
            }
            let consistent = perm
                .iter()
                .enumerate()
                .all(|(j, &s)| a.get(i, j) == b.get(t, s) && a.get(j, i) == b.get(s, t));
            if !consistent {
                continue;
            }
            used[t] = true;
            perm.push(t);
            if place(i + 1, a, b, sig_a, sig_b, perm, used) {
                return true;
            }
            perm.pop();
            used[t] = false;
        }
        false
    }

    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    Ok(place(0, a, b, &sig_a, &sig_b, &mut perm, &mut used))
}
