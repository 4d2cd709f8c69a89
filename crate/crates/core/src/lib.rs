//! Topological entropy and quotient-topological entropy of topological Markov
//! chains and of piecewise affine interval maps with Markov partitions.
//!
//! Three independent routes compute the entropy of a chain observed through a
//! vertex labeling:
//!
//! * **section**: if the labeling is a graph morphism with a right inverse,
//!   the quotient entropy is the entropy of the quotient graph;
//! * **sofic**: determinize the labeled graph and take the entropy of the
//!   deterministic presentation (works without a section);
//! * **bruteforce**: growth rate of exact counts of distinct image words.
//!
//! ```
//! use qentropy::{quotient_entropy, AdjacencyMatrix, Config, QuotientMethod, VertexSurjection};
//!
//! let k4 = AdjacencyMatrix::ones(4)?;
//! let f = VertexSurjection::from_one_based(&[1, 2, 2, 1], 2)?;
//! let report = quotient_entropy(&k4, &f, QuotientMethod::Auto, &Config::default())?;
//! assert!((report.entropy.value - 2f64.ln()).abs() < 1e-9);
//! # Ok::<(), qentropy::Error>(())
//! ```

pub mod error;
pub mod formats;
pub mod graph;
pub mod interval;
pub mod sofic;
pub mod spectral;
pub mod symbolic;

pub use error::{Error, Result};
pub use graph::{
    essential_subgraph, find_right_inverse, graph_isomorphic, is_graph_morphism, kronecker_product, preserves_edges,
    quotient_graph, AdjacencyMatrix, EssentialSubgraph, VertexMap, VertexSurjection,
};
pub use interval::{
    circle_map_graph, compatible_selection, markov_graph, quotient_entropy_interval, validate_good_quotient,
    validate_horseshoe, CompatibleSelection, PiecewiseAffineSpec, Role,
};
pub use sofic::{
    determinize, quotient_entropy, sofic_entropy, DeterministicPresentation, LabeledGraph, QuotientMethod,
    QuotientReport, SectionStatus,
};
pub use spectral::{entropy, spectral_radius, Config, CountMatrix, EntropyReport, Method, RadiusEstimate};
pub use symbolic::{
    apply_block_code, count_words, enumerate_image_words, enumerate_words, growth_rate, image_word_count,
    image_word_counts, quotient_entropy_bruteforce, word_counts, GrowthEstimate, SlidingBlockCode, Word,
};
