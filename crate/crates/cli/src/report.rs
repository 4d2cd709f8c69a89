//! Text and JSON rendering of results. Everything here writes to stdout.

use qentropy::{AdjacencyMatrix, CompatibleSelection, EntropyReport, GrowthEstimate, QuotientReport, VertexMap, Word};
use serde::Serialize;

#[derive(Debug, Clone, Copy)]
pub enum Scale {
    Nats,
    Bits,
}

impl Scale {
    fn apply(self, x: f64) -> f64 {
        match self {
            Scale::Nats => x,
            Scale::Bits => x / std::f64::consts::LN_2,
        }
    }

    fn unit(self) -> &'static str {
        match self {
            Scale::Nats => "nats",
            Scale::Bits => "bits",
        }
    }
}

pub struct Output {
    pub json: bool,
    pub scale: Scale,
}

#[derive(Serialize)]
struct EntropyJson<'a> {
    entropy: f64,
    method: &'a str,
    residual: f64,
    n: usize,
}

#[derive(Serialize)]
struct QuotientJson<'a> {
    entropy: f64,
    method: &'a str,
    residual: f64,
    n: usize,
    section_found: bool,
    /// One-based images of the section, when found.
    section: Option<Vec<usize>>,
    quotient: Vec<Vec<u8>>,
}

#[derive(Serialize)]
struct SelectionJson {
    c: Vec<usize>,
    g: Vec<usize>,
    matrix: Vec<Vec<u8>>,
    entropy: f64,
    method: &'static str,
    residual: f64,
}

#[derive(Serialize)]
struct HorseshoeJson {
    markov: Vec<Vec<u8>>,
    entropy: f64,
    residual: f64,
    n: usize,
    quotient: Option<SelectionJson>,
}

#[derive(Serialize)]
struct WordsJson<'a> {
    n: usize,
    /// Decimal string: counts outgrow every JSON number type.
    count: &'a str,
    counts: &'a [String],
    rate: Option<f64>,
    per_length: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct MatrixJson {
    n: usize,
    matrix: Vec<Vec<u8>>,
}

fn emit(value: &impl Serialize) {
    println!("{}", serde_json::to_string(value).expect("reports serialize"));
}

fn print_matrix(a: &AdjacencyMatrix) {
    for line in a.to_string().lines() {
        println!("  {line}");
    }
}

impl Output {
    fn scaled(&self, x: f64) -> f64 {
        self.scale.apply(x)
    }

    pub fn entropy(&self, r: &EntropyReport, n: usize) {
        if self.json {
            emit(&EntropyJson {
                entropy: self.scaled(r.value),
                method: r.method.as_str(),
                residual: self.scaled(r.residual),
                n,
            });
            return;
        }
        println!("entropy   {:.10} {}", self.scaled(r.value), self.scale.unit());
        println!("method    {}", r.method);
        println!("residual  {:.3e}", self.scaled(r.residual));
        println!("vertices  {n}");
    }

    pub fn quotient(&self, r: &QuotientReport, n: usize) {
        let section = r.section.found();
        if self.json {
            emit(&QuotientJson {
                entropy: self.scaled(r.entropy.value),
                method: r.entropy.method.as_str(),
                residual: self.scaled(r.entropy.residual),
                n,
                section_found: section.is_some(),
                section: section.map(VertexMap::one_based),
                quotient: r.quotient.rows(),
            });
            return;
        }
        self.entropy(&r.entropy, n);
        match section {
            Some(g) => println!("section   {g}"),
            None if r.section == qentropy::SectionStatus::Absent => println!("section   none"),
            None => println!("section   not searched"),
        }
        println!("quotient graph:");
        print_matrix(&r.quotient);
    }

    pub fn horseshoe(
        &self,
        markov: &AdjacencyMatrix,
        h: &EntropyReport,
        reduction: Option<&(CompatibleSelection, EntropyReport)>,
    ) {
        if self.json {
            emit(&HorseshoeJson {
                markov: markov.rows(),
                entropy: self.scaled(h.value),
                residual: self.scaled(h.residual),
                n: markov.n(),
                quotient: reduction.map(|(sel, r)| SelectionJson {
                    c: sel.c.one_based(),
                    g: sel.g.one_based(),
                    matrix: sel.b.rows(),
                    entropy: self.scaled(r.value),
                    method: r.method.as_str(),
                    residual: self.scaled(r.residual),
                }),
            });
            return;
        }
        println!("markov graph:");
        print_matrix(markov);
        println!("entropy   {:.10} {}", self.scaled(h.value), self.scale.unit());
        if let Some((sel, r)) = reduction {
            let c: Vec<String> = sel.c.one_based().iter().map(usize::to_string).collect();
            println!("selection c = ({})", c.join(", "));
            println!("section   g = {}", sel.g);
            println!("quotient graph:");
            print_matrix(&sel.b);
            println!("quotient entropy {:.10} {}", self.scaled(r.value), self.scale.unit());
            println!("section/sofic residual {:.3e}", self.scaled(r.residual));
        }
    }

    pub fn boolean(&self, key: &str, value: bool) {
        if self.json {
            emit(&serde_json::json!({ key: value }));
        } else {
            println!("{value}");
        }
    }

    pub fn section(&self, g: &VertexMap) {
        if self.json {
            emit(&serde_json::json!({ "section": g.one_based() }));
        } else {
            println!("{g}");
        }
    }

    pub fn words(&self, counts: &[String], growth: Option<&GrowthEstimate>) {
        let count = counts.last().map(String::as_str).unwrap_or("0");
        if self.json {
            emit(&WordsJson {
                n: counts.len(),
                count,
                counts,
                rate: growth.map(|g| self.scaled(g.rate)),
                per_length: growth.map(|g| g.per_length.iter().map(|&x| self.scaled(x)).collect()),
            });
            return;
        }
        println!("{count}");
        if let Some(g) = growth {
            println!("{:>4}  {:>14}  {:>14}  count", "t", "ln(x_t/x_t-1)", "(1/t) ln x_t");
            let mut previous: Option<f64> = None;
            for (t, (c, &avg)) in counts.iter().zip(&g.per_length).enumerate() {
                let log = avg * (t + 1) as f64;
                let ratio = previous.map_or("-".to_string(), |p| format!("{:.10}", self.scaled(log - p)));
                println!("{:>4}  {:>14}  {:>14.10}  {c}", t + 1, ratio, self.scaled(avg));
                previous = Some(log);
            }
            println!("growth rate {:.10} {}", self.scaled(g.rate), self.scale.unit());
        }
    }

    pub fn word_list(&self, words: &[Word]) {
        if self.json {
            let words: Vec<Vec<usize>> = words
                .iter()
                .map(|w| w.symbols().iter().map(|s| s + 1).collect())
                .collect();
            emit(&serde_json::json!({ "words": words }));
        } else {
            for w in words {
                println!("{w}");
            }
        }
    }

    pub fn matrix(&self, a: &AdjacencyMatrix, adj: &str) {
        if self.json {
            emit(&MatrixJson {
                n: a.n(),
                matrix: a.rows(),
            });
        } else {
            print!("{adj}");
        }
    }
}
