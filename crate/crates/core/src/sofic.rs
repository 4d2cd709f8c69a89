//! Quotient entropy of a topological Markov chain under a 0-memory code.
//!
//! The image of a chain under a vertex labeling is a sofic shift, in general
//! not itself a Markov chain (the even shift is the classic example). We
//! present it by a labeled graph, determinize by subset construction and take
//! the entropy of the deterministic presentation. When the labeling admits a
//! right-inverse graph morphism, the image is exactly the chain of the
//! quotient graph and the cheaper section route applies.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{
    essential_subgraph, find_right_inverse, quotient_graph, AdjacencyMatrix, VertexMap, VertexSurjection,
};
use crate::spectral::{entropy, spectral_radius, Config, EntropyReport, Method};
use crate::symbolic::quotient_entropy_bruteforce;

/// Largest graph for which `Auto` computes both the section and the sofic
/// route and records their disagreement.
pub const AUTO_CROSS_CHECK_LIMIT: usize = 8;

/// A graph whose vertices carry output symbols. Edge `i -> j` reads the label
/// of its target `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    base: AdjacencyMatrix,
    labels: VertexSurjection,
}

impl LabeledGraph {
    pub fn new(base: AdjacencyMatrix, labels: VertexSurjection) -> Result<Self> {
        if labels.domain_size() != base.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} vertices",
                labels.domain_size(),
                base.n()
            )));
        }
        Ok(Self { base, labels })
    }

    pub fn base(&self) -> &AdjacencyMatrix {
        &self.base
    }

    pub fn labels(&self) -> &VertexSurjection {
        &self.labels
    }
}

/// Right-resolving presentation produced by [`determinize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterministicPresentation {
    /// Each state is a nonempty set of base vertices, sorted ascending.
    states: Vec<Vec<usize>>,
    /// `transitions[state][symbol]`.
    transitions: Vec<Vec<Option<usize>>>,
    adjacency: AdjacencyMatrix,
}

impl DeterministicPresentation {
    pub fn states(&self) -> &[Vec<usize>] {
        &self.states
    }

    pub fn alphabet_size(&self) -> usize {
        self.transitions.first().map_or(0, Vec::len)
    }

    pub fn successor(&self, state: usize, symbol: usize) -> Option<usize> {
        self.transitions[state][symbol]
    }

    /// All `(state, symbol, target)` triples.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.transitions
            .iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().enumerate().filter_map(move |(a, t)| t.map(|t| (s, a, t))))
    }

    /// State graph: an edge wherever some symbol leads from one state to the
    /// other.
    pub fn adjacency(&self) -> &AdjacencyMatrix {
        &self.adjacency
    }
}

/// Subset construction for the bi-infinite image language of `g`.
///
/// Starts from the set of all (essential) vertices, follows
/// `S --a--> { j : i ∈ S, i -> j, label(j) = a }` for nonempty targets, then
/// trims the state graph to its essential part.
pub fn determinize(g: &LabeledGraph, cfg: &Config) -> Result<DeterministicPresentation> {
    let essential = essential_subgraph(&g.base);
    let m = essential.require()?;
    let kept = &essential.kept;
    let symbols = g.labels.codomain_size();
    let label: Vec<usize> = kept.iter().map(|&v| g.labels.apply(v)).collect();
    let succ: Vec<Vec<usize>> = (0..m.n()).map(|i| m.successors(i).collect()).collect();

    // states hold local (essential) indices until the end
    let mut states: Vec<Vec<usize>> = vec![(0..m.n()).collect()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(states[0].clone(), 0)]);
    let mut transitions: Vec<Vec<Option<usize>>> = Vec::new();
    let mut cursor = 0;
    while cursor < states.len() {
        let mut targets: Vec<Vec<usize>> = vec![Vec::new(); symbols];
        let mut reached = vec![false; m.n()];
        for &i in &states[cursor] {
            for &j in &succ[i] {
                if !reached[j] {
                    reached[j] = true;
                    targets[label[j]].push(j);
                }
            }
        }
        let mut row = vec![None; symbols];
        for (a, mut target) in targets.into_iter().enumerate() {
            if target.is_empty() {
                continue;
            }
            target.sort_unstable();
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    if states.len() >= cfg.state_cap {
                        return Err(Error::StateCapExceeded { cap: cfg.state_cap });
                    }
                    let id = states.len();
                    index.insert(target.clone(), id);
                    states.push(target);
                    id
                }
            };
            row[a] = Some(id);
        }
        transitions.push(row);
        cursor += 1;
    }

    let full = AdjacencyMatrix::from_fn(states.len(), |s, t| transitions[s].contains(&Some(t)))?;
    let trimmed = essential_subgraph(&full);
    let adjacency = trimmed.require()?.clone();
    let mut renumber = vec![None; states.len()];
    for (new, &old) in trimmed.kept.iter().enumerate() {
        renumber[old] = Some(new);
    }
    let states_out = trimmed
        .kept
        .iter()
        .map(|&s| states[s].iter().map(|&v| kept[v]).collect())
        .collect();
    let transitions_out = trimmed
        .kept
        .iter()
        .map(|&s| transitions[s].iter().map(|t| t.and_then(|t| renumber[t])).collect())
        .collect();
    Ok(DeterministicPresentation {
        states: states_out,
        transitions: transitions_out,
        adjacency,
    })
}

/// Entropy of the image of `S_a` under the 0-memory code `f`.
pub fn sofic_entropy(a: &AdjacencyMatrix, f: &VertexSurjection, cfg: &Config) -> Result<EntropyReport> {
    let presentation = determinize(&LabeledGraph::new(a.clone(), f.clone())?, cfg)?;
    let est = spectral_radius(presentation.adjacency(), cfg)?;
    Ok(EntropyReport {
        value: est.radius.ln().max(0.0),
        method: Method::Sofic,
        residual: est.residual,
        iterations: est.iterations,
    })
}

/// How [`quotient_entropy`] computes its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientMethod {
    /// Section route when a right inverse exists, sofic route otherwise.
    Auto,
    /// Section route only; fails with [`Error::SectionAbsent`] without one.
    Section,
    Sofic,
    /// Growth of exact image-word counts up to length `n_max`.
    Bruteforce {
        n_max: usize,
    },
}

/// Outcome of the right-inverse search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionStatus {
    Found(VertexMap),
    Absent,
    NotSearched,
}

impl SectionStatus {
    pub fn found(&self) -> Option<&VertexMap> {
        match self {
            SectionStatus::Found(g) => Some(g),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuotientReport {
    pub entropy: EntropyReport,
    /// The quotient graph of `a` by `f`.
    pub quotient: AdjacencyMatrix,
    pub section: SectionStatus,
}

/// Quotient entropy of the chain `S_a` observed through `f`.
pub fn quotient_entropy(
    a: &AdjacencyMatrix,
    f: &VertexSurjection,
    method: QuotientMethod,
    cfg: &Config,
) -> Result<QuotientReport> {
    let quotient = quotient_graph(a, f)?;
    let search = || -> Result<SectionStatus> {
        Ok(match find_right_inverse(a, &quotient, f)? {
            Some(g) => SectionStatus::Found(g),
            None => SectionStatus::Absent,
        })
    };
    let section_route = |section: &SectionStatus| -> Result<EntropyReport> {
        match section {
            SectionStatus::Found(_) => Ok(EntropyReport {
                method: Method::Section,
                ..entropy(&quotient, cfg)?
            }),
            _ => Err(Error::SectionAbsent),
        }
    };

    let (entropy, section) = match method {
        QuotientMethod::Section => {
            let section = search()?;
            (section_route(&section)?, section)
        }
        QuotientMethod::Sofic => (sofic_entropy(a, f, cfg)?, SectionStatus::NotSearched),
        QuotientMethod::Bruteforce { n_max } => (
            quotient_entropy_bruteforce(a, f, n_max, cfg)?,
            SectionStatus::NotSearched,
        ),
        QuotientMethod::Auto => {
            let section = search()?;
            let report = match section {
                SectionStatus::Found(_) => {
                    let mut report = section_route(&section)?;
                    if a.n() <= AUTO_CROSS_CHECK_LIMIT {
                        let sofic = sofic_entropy(a, f, cfg)?;
                        report.residual = (report.value - sofic.value).abs();
                    }
                    report
                }
                _ => sofic_entropy(a, f, cfg)?,
            };
            (report, section)
        }
    };
    Ok(QuotientReport {
        entropy,
        quotient,
        section,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{graph_isomorphic, preserves_edges};

    fn even_shift() -> AdjacencyMatrix {
        AdjacencyMatrix::from_edges(3, &[(0, 1), (0, 2), (1, 0), (2, 1), (2, 2)]).unwrap()
    }

    fn collapse() -> VertexSurjection {
        VertexSurjection::from_one_based(&[1, 1, 2], 2).unwrap()
    }

    fn phi() -> f64 {
        (1.0 + 5f64.sqrt()) / 2.0
    }

    fn assert_deterministic_and_essential(p: &DeterministicPresentation) {
        let mut seen = std::collections::HashSet::new();
        for (s, a, t) in p.transitions() {
            assert!(seen.insert((s, a)), "two transitions from state {s} on {a}");
            assert!(p.adjacency().get(s, t));
        }
        assert!(p.states().iter().all(|s| !s.is_empty()));
        assert!(p.adjacency().is_essential());
    }

    #[test]
    fn identity_labels_reproduce_the_graph() {
        let a = AdjacencyMatrix::from_rows(&[[1, 1, 0], [0, 0, 1], [1, 1, 0]]).unwrap();
        let g = LabeledGraph::new(a.clone(), VertexSurjection::identity(3)).unwrap();
        let p = determinize(&g, &Config::default()).unwrap();
        assert_deterministic_and_essential(&p);
        assert!(graph_isomorphic(p.adjacency(), &a).unwrap());
    }

    #[test]
    fn complete_graph_collapse() {
        let g = LabeledGraph::new(
            AdjacencyMatrix::ones(4).unwrap(),
            VertexSurjection::from_one_based(&[1, 2, 2, 1], 2).unwrap(),
        )
        .unwrap();
        let cfg = Config::default();
        let p = determinize(&g, &cfg).unwrap();
        assert_deterministic_and_essential(&p);
        assert_eq!(p.states(), &[vec![0, 3], vec![1, 2]]);
        assert!((spectral_radius(p.adjacency(), &cfg).unwrap().radius - 2.0).abs() < 1e-10);
    }

    #[test]
    fn even_shift_presentation() {
        let cfg = Config::default();
        let p = determinize(&LabeledGraph::new(even_shift(), collapse()).unwrap(), &cfg).unwrap();
        assert_deterministic_and_essential(&p);
        // {0₂,0₁}, {1}, {0₁}, {0₂}; the full start set has no predecessor
        assert_eq!(p.states().len(), 4);
        let r = spectral_radius(p.adjacency(), &cfg).unwrap().radius;
        assert!((r - phi()).abs() < 1e-10);
    }

    #[test]
    fn sofic_entropy_examples() {
        let cfg = Config::default();
        let k4 = AdjacencyMatrix::ones(4).unwrap();
        let f = VertexSurjection::from_one_based(&[1, 2, 2, 1], 2).unwrap();
        assert!((sofic_entropy(&k4, &f, &cfg).unwrap().value - 2f64.ln()).abs() < 1e-10);

        let golden = AdjacencyMatrix::from_rows(&[[1, 1], [1, 0]]).unwrap();
        let id = VertexSurjection::identity(2);
        let s = sofic_entropy(&golden, &id, &cfg).unwrap();
        assert!((s.value - entropy(&golden, &cfg).unwrap().value).abs() < 1e-10);
        assert_eq!(s.method, Method::Sofic);

        let e = sofic_entropy(&even_shift(), &collapse(), &cfg).unwrap();
        assert!((e.value - 0.481_211_825_1).abs() < 1e-9);
    }

    #[test]
    fn empty_chain_is_an_error() {
        let path = AdjacencyMatrix::from_rows(&[[0, 1], [0, 0]]).unwrap();
        let g = LabeledGraph::new(path, VertexSurjection::identity(2)).unwrap();
        assert_eq!(determinize(&g, &Config::default()), Err(Error::EmptySubshift));
    }

    #[test]
    fn state_cap_is_enforced() {
        let cfg = Config {
            state_cap: 2,
            ..Config::default()
        };
        let g = LabeledGraph::new(even_shift(), collapse()).unwrap();
        assert_eq!(determinize(&g, &cfg), Err(Error::StateCapExceeded { cap: 2 }));
    }

    #[test]
    fn labels_must_fit() {
        assert!(LabeledGraph::new(even_shift(), VertexSurjection::identity(2)).is_err());
    }

    #[test]
    fn auto_uses_section_when_available() {
        let cfg = Config::default();
        let k4 = AdjacencyMatrix::ones(4).unwrap();
        let f = VertexSurjection::from_one_based(&[1, 2, 2, 1], 2).unwrap();
        let r = quotient_entropy(&k4, &f, QuotientMethod::Auto, &cfg).unwrap();
        assert_eq!(r.entropy.method, Method::Section);
        assert!((r.entropy.value - 2f64.ln()).abs() < 1e-10);
        assert!(r.entropy.residual < 1e-9);
        let g = r.section.found().unwrap();
        assert_eq!(g.one_based(), vec![1, 2]);
        assert!(preserves_edges(&r.quotient, &k4, g).unwrap());
    }

    #[test]
    fn standard_horseshoe_quotient() {
        let a = AdjacencyMatrix::from_rows(&[[1, 1, 0, 0], [1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 0, 0]]).unwrap();
        let f = VertexSurjection::from_one_based(&[1, 1, 2, 2], 2).unwrap();
        let r = quotient_entropy(&a, &f, QuotientMethod::Auto, &Config::default()).unwrap();
        assert_eq!(r.entropy.method, Method::Section);
        assert!((r.entropy.value - 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn even_shift_routes() {
        let cfg = Config::default();
        assert_eq!(
            quotient_entropy(&even_shift(), &collapse(), QuotientMethod::Section, &cfg),
            Err(Error::SectionAbsent)
        );
        let auto = quotient_entropy(&even_shift(), &collapse(), QuotientMethod::Auto, &cfg).unwrap();
        assert_eq!(auto.entropy.method, Method::Sofic);
        assert_eq!(auto.section, SectionStatus::Absent);
        assert!((auto.entropy.value - phi().ln()).abs() < 1e-9);
        let brute = quotient_entropy(
            &even_shift(),
            &collapse(),
            QuotientMethod::Bruteforce { n_max: 22 },
            &cfg,
        )
        .unwrap();
        assert_eq!(brute.entropy.method, Method::Bruteforce);
        assert_eq!(brute.section, SectionStatus::NotSearched);
        assert!((brute.entropy.value - phi().ln()).abs() < 0.02);
    }

    #[test]
    fn trimmed_source_vertices_do_not_matter() {
        // vertex 0 only feeds into the 2-cycle {1, 2}
        let a = AdjacencyMatrix::from_edges(3, &[(0, 1), (1, 2), (2, 1)]).unwrap();
        let f = VertexSurjection::from_one_based(&[1, 1, 2], 2).unwrap();
        let s = sofic_entropy(&a, &f, &Config::default()).unwrap();
        assert!(s.value.abs() < 1e-10);
    }
}
