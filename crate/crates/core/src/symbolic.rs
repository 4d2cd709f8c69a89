//! Finite words of topological Markov chains.
//!
//! Word counts are exact (`BigUint`); their exponential growth rate is the
//! entropy, which makes this module an oracle for the spectral and sofic
//! routes. All routines work on the essential subgraph, where every finite
//! admissible word extends to a bi-infinite path, so finite words stand in
//! for the two-sided shift faithfully.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{essential_subgraph, AdjacencyMatrix, EssentialSubgraph, VertexSurjection};
use crate::spectral::{Config, EntropyReport, Method};

/// A finite sequence of 0-based symbols.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn from_one_based(symbols: &[usize]) -> Self {
        Word(symbols.iter().map(|&s| s - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    /// True iff consecutive symbols follow edges of `a`.
    pub fn is_admissible(&self, a: &AdjacencyMatrix) -> bool {
        self.0.iter().all(|&s| s < a.n()) && self.0.windows(2).all(|p| a.get(p[0], p[1]))
    }
}

/// 1-based symbols separated by spaces.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| (s + 1).to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Sliding block code with memory `m`: output symbol `t` is the local rule
/// applied to the input window `t-m ..= t+m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlidingBlockCode {
    memory: usize,
    input_alphabet: usize,
    output_alphabet: usize,
    /// Indexed by the window read as a base-`input_alphabet` number, leftmost
    /// symbol most significant.
    table: Vec<usize>,
}

impl SlidingBlockCode {
    pub fn new(memory: usize, input_alphabet: usize, output_alphabet: usize, table: Vec<usize>) -> Result<Self> {
        if input_alphabet == 0 || output_alphabet == 0 {
            return Err(Error::InvalidBlockCode("alphabets must be nonempty".into()));
        }
        let expected = u32::try_from(2 * memory + 1)
            .ok()
            .and_then(|w| input_alphabet.checked_pow(w))
            .ok_or_else(|| Error::InvalidBlockCode("window table too large".into()))?;
        if table.len() != expected {
            return Err(Error::InvalidBlockCode(format!(
                "table has {} entries, expected {}",
                table.len(),
                expected
            )));
        }
        if let Some(&s) = table.iter().find(|&&s| s >= output_alphabet) {
            return Err(Error::SymbolOutOfRange {
                symbol: s,
                alphabet: output_alphabet,
            });
        }
        Ok(Self {
            memory,
            input_alphabet,
            output_alphabet,
            table,
        })
    }

    /// Tabulates `rule` over every window of length `2 * memory + 1`.
    pub fn from_fn(
        memory: usize,
        input_alphabet: usize,
        output_alphabet: usize,
        rule: impl Fn(&[usize]) -> usize,
    ) -> Result<Self> {
        let width = 2 * memory + 1;
        let size = u32::try_from(width)
            .ok()
            .and_then(|w| input_alphabet.checked_pow(w))
            .ok_or_else(|| Error::InvalidBlockCode("window table too large".into()))?;
        let mut window = vec![0usize; width];
        let table = (0..size)
            .map(|mut code| {
                for slot in window.iter_mut().rev() {
                    *slot = code % input_alphabet;
                    code /= input_alphabet;
                }
                rule(&window)
            })
            .collect();
        Self::new(memory, input_alphabet, output_alphabet, table)
    }

    /// The 0-memory code whose local rule is `f`.
    pub fn zero_memory(f: &VertexSurjection) -> Self {
        Self {
            memory: 0,
            input_alphabet: f.domain_size(),
            output_alphabet: f.codomain_size(),
            table: f.image().to_vec(),
        }
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn window(&self) -> usize {
        2 * self.memory + 1
    }

    pub fn input_alphabet(&self) -> usize {
        self.input_alphabet
    }

    pub fn output_alphabet(&self) -> usize {
        self.output_alphabet
    }
}

/// Applies `code` to every full window of `w`; the output is `2m` shorter.
pub fn apply_block_code(code: &SlidingBlockCode, w: &Word) -> Result<Word> {
    let width = code.window();
    if w.len() < width {
        return Err(Error::WordTooShort {
            len: w.len(),
            window: width,
        });
    }
    if let Some(&s) = w.0.iter().find(|&&s| s >= code.input_alphabet) {
        return Err(Error::SymbolOutOfRange {
            symbol: s,
            alphabet: code.input_alphabet,
        });
    }
    let out =
        w.0.windows(width)
            .map(|win| {
                let idx = win.iter().fold(0, |acc, &s| acc * code.input_alphabet + s);
                code.table[idx]
            })
            .collect();
    Ok(Word(out))
}

fn check_length(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidLength { min, got: n });
    }
    Ok(())
}

/// Exact counts of admissible words of lengths `1..=n_max` in the essential
/// subgraph of `a`: entry `t - 1` is the sum of all entries of `Aᵗ⁻¹`.
pub fn word_counts(a: &AdjacencyMatrix, n_max: usize) -> Result<Vec<BigUint>> {
    check_length(n_max, 1)?;
    let essential = essential_subgraph(a);
    let m = essential.require()?;
    let k = m.n();
    // paths[v] = number of words of the current length ending at v
    let mut paths = vec![BigUint::from(1u32); k];
    let mut counts = Vec::with_capacity(n_max);
    counts.push(BigUint::from(k));
    for _ in 1..n_max {
        let mut next = vec![BigUint::zero(); k];
        for (i, p) in paths.iter().enumerate() {
            for j in m.successors(i) {
                next[j] += p;
            }
        }
        paths = next;
        counts.push(paths.iter().sum());
    }
    Ok(counts)
}

/// Number of admissible words of length `n` in the essential subgraph.
pub fn count_words(a: &AdjacencyMatrix, n: usize) -> Result<BigUint> {
    Ok(word_counts(a, n)?.pop().expect("n >= 1"))
}

fn check_enumeration_cap(a: &AdjacencyMatrix, n: usize, cfg: &Config) -> Result<()> {
    let total = count_words(a, n)?;
    if total > BigUint::from(cfg.enumeration_cap) {
        return Err(Error::CapExceeded {
            what: "word",
            count: total.to_string(),
            cap: cfg.enumeration_cap,
        });
    }
    Ok(())
}

/// Depth-first walk over admissible words of length `n`, in lexicographic
/// order of the original vertex labels.
fn for_each_word(essential: &EssentialSubgraph, n: usize, mut visit: impl FnMut(&[usize])) {
    let Some(m) = essential.matrix.as_ref() else {
        return;
    };
    let kept = &essential.kept;
    let succ: Vec<Vec<usize>> = (0..m.n()).map(|i| m.successors(i).collect()).collect();
    let mut word: Vec<usize> = Vec::with_capacity(n);
    // stack of (depth, local vertex)
    let mut stack: Vec<(usize, usize)> = (0..m.n()).rev().map(|v| (0, v)).collect();
    while let Some((depth, v)) = stack.pop() {
        word.truncate(depth);
        word.push(kept[v]);
        if depth + 1 == n {
            visit(&word);
        } else {
            stack.extend(succ[v].iter().rev().map(|&w| (depth + 1, w)));
        }
    }
}

/// All admissible words of length `n` of the essential subgraph, sorted.
pub fn enumerate_words(a: &AdjacencyMatrix, n: usize, cfg: &Config) -> Result<Vec<Word>> {
    check_length(n, 1)?;
    check_enumeration_cap(a, n, cfg)?;
    let essential = essential_subgraph(a);
    let mut words = Vec::new();
    for_each_word(&essential, n, |w| words.push(Word(w.to_vec())));
    Ok(words)
}

fn check_map(a: &AdjacencyMatrix, f: &VertexSurjection) -> Result<()> {
    if f.domain_size() != a.n() {
        return Err(Error::DimensionMismatch(format!(
            "vertex map has domain {}, graph has {} vertices",
            f.domain_size(),
            a.n()
        )));
    }
    Ok(())
}

/// The distinct images under the 0-memory code `f` of all admissible words of
/// length `n`, by literal enumeration and deduplication.
///
/// Bounded by `cfg.enumeration_cap` on the number of source words.
pub fn enumerate_image_words(
    a: &AdjacencyMatrix,
    f: &VertexSurjection,
    n: usize,
    cfg: &Config,
) -> Result<BTreeSet<Word>> {
    check_map(a, f)?;
    check_length(n, 1)?;
    check_enumeration_cap(a, n, cfg)?;
    let essential = essential_subgraph(a);
    let mut images = BTreeSet::new();
    for_each_word(&essential, n, |w| {
        images.insert(Word(w.iter().map(|&v| f.apply(v)).collect()));
    });
    Ok(images)
}

/// Exact numbers of distinct image words of lengths `1..=n_max`.
///
/// Image words are counted without listing source words: every image prefix
/// is tracked together with the set of vertices at which some source word with
/// that image can end. Prefixes that share this set have identical futures, so
/// they are merged and counted with multiplicity. Each image word has exactly
/// one such track, hence the totals are exact. The number of distinct vertex
/// sets is bounded by `cfg.state_cap`.
pub fn image_word_counts(
    a: &AdjacencyMatrix,
    f: &VertexSurjection,
    n_max: usize,
    cfg: &Config,
) -> Result<Vec<BigUint>> {
    check_map(a, f)?;
    check_length(n_max, 1)?;
    let essential = essential_subgraph(a);
    let m = essential.require()?;
    let label: Vec<usize> = essential.kept.iter().map(|&v| f.apply(v)).collect();
    let symbols = f.codomain_size();

    // length-1 image words: one per symbol, ending anywhere that symbol sits
    let mut frontier: HashMap<Vec<usize>, BigUint> = HashMap::new();
    for s in 0..symbols {
        let set: Vec<usize> = (0..m.n()).filter(|&v| label[v] == s).collect();
        if !set.is_empty() {
            frontier.insert(set, BigUint::from(1u32));
        }
    }

    let mut counts = Vec::with_capacity(n_max);
    counts.push(frontier.values().sum());
    for _ in 1..n_max {
        let mut next: HashMap<Vec<usize>, BigUint> = HashMap::new();
        for (set, count) in &frontier {
            let mut by_symbol: Vec<Vec<usize>> = vec![Vec::new(); symbols];
            let mut reached = vec![false; m.n()];
            for &i in set {
                for j in m.successors(i) {
                    if !reached[j] {
                        reached[j] = true;
                        by_symbol[label[j]].push(j);
                    }
                }
            }
            for mut target in by_symbol.into_iter().filter(|t| !t.is_empty()) {
                target.sort_unstable();
                *next.entry(target).or_default() += count;
            }
        }
        if next.len() > cfg.state_cap {
            return Err(Error::StateCapExceeded { cap: cfg.state_cap });
        }
        frontier = next;
        counts.push(frontier.values().sum());
    }
    Ok(counts)
}

/// Number of distinct images under `f` of admissible words of length `n`.
pub fn image_word_count(a: &AdjacencyMatrix, f: &VertexSurjection, n: usize, cfg: &Config) -> Result<BigUint> {
    Ok(image_word_counts(a, f, n, cfg)?.pop().expect("n >= 1"))
}

/// Natural log of an arbitrarily large positive integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("finite below 2^1000").ln()
    } else {
        let shift = bits - 64;
        let top = (x >> shift).to_f64().expect("64-bit value");
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Growth-rate estimate of a positive sequence indexed by length `1, 2, ..`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEstimate {
    /// `ln(x_N / x_{N-1})` at the largest available `N`.
    pub rate: f64,
    /// `(1/t) ln x_t` for every `t`.
    pub per_length: Vec<f64>,
}

/// Successive-ratio estimate of the exponential growth rate.
pub fn growth_rate(counts: &[BigUint]) -> Result<GrowthEstimate> {
    if counts.len() < 2 {
        return Err(Error::InvalidLength {
            min: 2,
            got: counts.len(),
        });
    }
    if let Some(pos) = counts.iter().position(|c| c.is_zero()) {
        return Err(Error::ZeroCount { length: pos + 1 });
    }
    let logs: Vec<f64> = counts.iter().map(ln_biguint).collect();
    let n = logs.len();
    Ok(GrowthEstimate {
        rate: logs[n - 1] - logs[n - 2],
        per_length: logs.iter().enumerate().map(|(t, l)| l / (t + 1) as f64).collect(),
    })
}

/// Quotient entropy estimated from exact image-word counts up to `n_max`.
///
/// The residual is the change of the successive-ratio estimate between
/// `n_max - 1` and `n_max`.
pub fn quotient_entropy_bruteforce(
    a: &AdjacencyMatrix,
    f: &VertexSurjection,
    n_max: usize,
    cfg: &Config,
) -> Result<EntropyReport> {
    check_length(n_max, 3)?;
    let counts = image_word_counts(a, f, n_max, cfg)?;
    let last = growth_rate(&counts)?.rate;
    let previous = growth_rate(&counts[..n_max - 1])?.rate;
    Ok(EntropyReport {
        value: last,
        method: Method::Bruteforce,
        residual: (last - previous).abs(),
        iterations: n_max,
    })
}
