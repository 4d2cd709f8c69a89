//! Horseshoe maps of the unit interval and their good quotients.
//!
//! Maps are piecewise affine on the uniform grid `{0, 1/n, .., 1}` and are
//! stored by their values at the grid points, scaled by `n`. All overlap and
//! containment tests are exact integer comparisons; floating point only
//! enters in the spectral step.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{preserves_edges, quotient_graph, AdjacencyMatrix, VertexMap, VertexSurjection};
use crate::sofic::{sofic_entropy, AUTO_CROSS_CHECK_LIMIT};
use crate::spectral::{entropy, Config, EntropyReport, Method};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// The map generating the dynamics.
    Dynamics,
    /// An observation map.
    Quotient,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Dynamics => "dynamics",
            Role::Quotient => "quotient",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dynamics" => Ok(Role::Dynamics),
            "quotient" => Ok(Role::Quotient),
            other => Err(Error::InvalidSpec(format!(
                "unknown role {other:?}, expected \"dynamics\" or \"quotient\""
            ))),
        }
    }
}

/// A continuous map of `[0, 1]`, affine on each `[(i-1)/n, i/n]`, given by
/// `n · f(k/n)` for `k = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseAffineSpec {
    role: Role,
    values: Vec<i64>,
}

impl PiecewiseAffineSpec {
    /// Only the shape is checked here (`n >= 2`, `n + 1` values); the
    /// role-specific conditions are checked by [`validate_horseshoe`] and
    /// [`validate_good_quotient`].
    pub fn new(role: Role, values: Vec<i64>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::InvalidSpec(format!(
                "need at least 3 grid values (n >= 2), got {}",
                values.len()
            )));
        }
        Ok(Self { role, values })
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// Number of pieces.
    pub fn grid(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Grid-scaled endpoint values of piece `i` (0-based).
    fn piece(&self, i: usize) -> (i64, i64) {
        (self.values[i], self.values[i + 1])
    }

    fn expect_role(&self, role: Role) -> Result<()> {
        if self.role != role {
            return Err(Error::WrongRole {
                expected: role.as_str(),
            });
        }
        Ok(())
    }

    /// Grid points map to grid points.
    fn check_grid(&self) -> Result<()> {
        let n = self.grid();
        match self.values.iter().position(|&v| v < 0 || v > n as i64) {
            Some(index) => Err(Error::GridNotInvariant {
                index,
                value: self.values[index],
                n,
            }),
            None => Ok(()),
        }
    }
}

/// Markov graph of a horseshoe: `F[i][j] = 1` iff `f(U_i)` meets `U_j`, with
/// `U_i = ((i-1)/n, i/n)`.
///
/// Checks grid invariance and that no piece is constant.
pub fn markov_graph(spec: &PiecewiseAffineSpec) -> Result<AdjacencyMatrix> {
    spec.expect_role(Role::Dynamics)?;
    spec.check_grid()?;
    let n = spec.grid();
    if let Some(piece) = (0..n).find(|&i| spec.values[i] == spec.values[i + 1]) {
        return Err(Error::ConstantPiece { piece: piece + 1 });
    }
    AdjacencyMatrix::from_fn(n, |i, j| {
        let (a, b) = spec.piece(i);
        let (lo, hi) = (a.min(b), a.max(b));
        // open intervals (lo, hi) and (j, j + 1) overlap; touching is not enough
        lo.max(j as i64) < hi.min(j as i64 + 1)
    })
}

/// Fails with [`Error::SinkInMarkovGraph`] if some vertex has no out-edge.
pub fn check_no_sinks(f: &AdjacencyMatrix) -> Result<()> {
    match (0..f.n()).find(|&v| f.out_degree(v) == 0) {
        Some(v) => Err(Error::SinkInMarkovGraph { vertex: v + 1 }),
        None => Ok(()),
    }
}

/// Checks the three horseshoe conditions and returns the Markov graph.
///
/// The sink condition is checked on the raw Markov graph, before any trimming.
pub fn validate_horseshoe(spec: &PiecewiseAffineSpec) -> Result<AdjacencyMatrix> {
    let f = markov_graph(spec)?;
    check_no_sinks(&f)?;
    Ok(f)
}

/// Markov graph of `x ↦ nx mod 1` on the partition into `n` equal arcs: the
/// complete graph with loops.
pub fn circle_map_graph(n: usize) -> Result<AdjacencyMatrix> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("circle map needs n >= 2, got {n}")));
    }
    AdjacencyMatrix::ones(n)
}

/// Checks that `q` is a good quotient for the grid of `dynamics`: grid points
/// to grid points, monotone, and onto (`q(0) = 0`, `q(1) = 1`).
pub fn validate_good_quotient(dynamics: &PiecewiseAffineSpec, q: &PiecewiseAffineSpec) -> Result<()> {
    dynamics.expect_role(Role::Dynamics)?;
    q.expect_role(Role::Quotient)?;
    if dynamics.grid() != q.grid() {
        return Err(Error::GridMismatch {
            dynamics: dynamics.grid(),
            quotient: q.grid(),
        });
    }
    q.check_grid()?;
    if let Some(piece) = (0..q.grid()).find(|&i| q.values[i] > q.values[i + 1]) {
        return Err(Error::NotMonotone { piece: piece + 1 });
    }
    let n = q.grid();
    let (first, last) = (q.values[0], q.values[n]);
    if first != 0 || last != n as i64 {
        return Err(Error::NotSurjective {
            first: first as usize,
            last: last as usize,
            n,
        });
    }
    Ok(())
}

/// Coarse partition induced by a good quotient, with its section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleSelection {
    /// Number of coarse cells.
    pub m: usize,
    /// Fine cell ↦ coarse cell.
    pub c: VertexSurjection,
    /// Coarse cell ↦ its witness fine cell; a right inverse of `c`.
    pub g: VertexMap,
    /// Quotient Markov graph.
    pub b: AdjacencyMatrix,
    /// Markov graph of the dynamics.
    pub markov: AdjacencyMatrix,
}

/// Builds the coarse partition from the open images `q(U_i)`.
///
/// Each piece on which `q` rises has an open image `V_j`; these are the coarse
/// cells, numbered left to right, and `C_j = q⁻¹(V_j)` is exactly that piece,
/// which serves as the witness `g(j)`. A piece on which `q` is flat maps to a
/// grid point `y` and is assigned to the first `j` with `y` in the closure of
/// `V_j`.
pub fn compatible_selection(dynamics: &PiecewiseAffineSpec, q: &PiecewiseAffineSpec) -> Result<CompatibleSelection> {
    let markov = validate_horseshoe(dynamics)?;
    validate_good_quotient(dynamics, q)?;
    let n = q.grid();
    let rising: Vec<usize> = (0..n).filter(|&i| q.values[i] < q.values[i + 1]).collect();
    let m = rising.len();

    let image = (0..n)
        .map(|i| match rising.binary_search(&i) {
            Ok(j) => Ok(j),
            Err(_) => {
                let y = q.values[i];
                rising
                    .iter()
                    .position(|&r| {
                        let (lo, hi) = q.piece(r);
                        lo <= y && y <= hi
                    })
                    .ok_or_else(|| Error::NoCompatibleSelection(format!("flat piece {} lies in no coarse cell", i + 1)))
            }
        })
        .collect::<Result<Vec<usize>>>()?;
    let c = VertexSurjection::new(image, m)?;
    let g = VertexMap::new(rising, n)?;
    let b = quotient_graph(&markov, &c)?;
    if !preserves_edges(&b, &markov, &g)? {
        return Err(Error::NoCompatibleSelection(format!(
            "witness cells {g} do not form a right-inverse graph morphism"
        )));
    }
    Ok(CompatibleSelection { m, c, g, b, markov })
}

/// Quotient entropy of a horseshoe observed through a good quotient, via the
/// compatible selection's quotient graph.
///
/// For Markov graphs of at most 8 vertices the sofic route is computed too and
/// the residual is the disagreement between the two.
pub fn quotient_entropy_interval(
    dynamics: &PiecewiseAffineSpec,
    q: &PiecewiseAffineSpec,
    cfg: &Config,
) -> Result<EntropyReport> {
    let selection = compatible_selection(dynamics, q)?;
    let mut report = EntropyReport {
        method: Method::Section,
        ..entropy(&selection.b, cfg)?
    };
    if selection.markov.n() <= AUTO_CROSS_CHECK_LIMIT {
        let sofic = sofic_entropy(&selection.markov, &selection.c, cfg)?;
        report.residual = (report.value - sofic.value).abs();
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dynamics(values: &[i64]) -> PiecewiseAffineSpec {
        PiecewiseAffineSpec::new(Role::Dynamics, values.to_vec()).unwrap()
    }

    fn quotient(values: &[i64]) -> PiecewiseAffineSpec {
        PiecewiseAffineSpec::new(Role::Quotient, values.to_vec()).unwrap()
    }

    fn standard_f() -> PiecewiseAffineSpec {
        dynamics(&[2, 0, 4, 0, 2])
    }

    fn standard_q() -> PiecewiseAffineSpec {
        quotient(&[0, 0, 2, 4, 4])
    }

    fn standard_matrix() -> AdjacencyMatrix {
        AdjacencyMatrix::from_rows(&[[1, 1, 0, 0], [1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 0, 0]]).unwrap()
    }

    #[test]
    fn spec_shape() {
        assert!(PiecewiseAffineSpec::new(Role::Dynamics, vec![0, 1]).is_err());
        assert_eq!(standard_f().grid(), 4);
        assert_eq!("quotient".parse::<Role>().unwrap(), Role::Quotient);
        assert!("other".parse::<Role>().is_err());
    }

    #[test]
    fn standard_markov_graph() {
        assert_eq!(validate_horseshoe(&standard_f()).unwrap(), standard_matrix());
        assert_eq!(markov_graph(&standard_f()).unwrap(), standard_matrix());
    }

    #[test]
    fn tent_map() {
        assert_eq!(
            validate_horseshoe(&dynamics(&[0, 2, 0])).unwrap(),
            AdjacencyMatrix::ones(2).unwrap()
        );
    }

    #[test]
    fn identity_map_is_accepted() {
        assert_eq!(
            validate_horseshoe(&dynamics(&[0, 1, 2])).unwrap(),
            AdjacencyMatrix::identity(2).unwrap()
        );
    }

    #[test]
    fn full_range_pieces() {
        assert_eq!(
            markov_graph(&dynamics(&[0, 3, 0, 3])).unwrap(),
            AdjacencyMatrix::ones(3).unwrap()
        );
    }

    #[test]
    fn touching_endpoints_do_not_overlap() {
        // piece 1 maps onto (0, 1/2) exactly; it must not reach cell 2
        let f = markov_graph(&dynamics(&[0, 1, 2])).unwrap();
        assert!(!f.get(0, 1));
    }

    #[test]
    fn horseshoe_violations() {
        assert_eq!(
            validate_horseshoe(&dynamics(&[0, 3, 1])),
            Err(Error::GridNotInvariant {
                index: 1,
                value: 3,
                n: 2
            })
        );
        assert_eq!(
            validate_horseshoe(&dynamics(&[0, -1, 1])),
            Err(Error::GridNotInvariant {
                index: 1,
                value: -1,
                n: 2
            })
        );
        assert_eq!(
            validate_horseshoe(&dynamics(&[0, 2, 2, 0])),
            Err(Error::ConstantPiece { piece: 2 })
        );
        assert!(matches!(
            validate_horseshoe(&quotient(&[0, 1, 2])),
            Err(Error::WrongRole { .. })
        ));
        let sink = AdjacencyMatrix::from_rows(&[[1, 1], [0, 0]]).unwrap();
        assert_eq!(check_no_sinks(&sink), Err(Error::SinkInMarkovGraph { vertex: 2 }));
    }

    #[test]
    fn circle_maps() {
        for n in 2..=12 {
            assert_eq!(circle_map_graph(n).unwrap(), AdjacencyMatrix::ones(n).unwrap());
        }
        assert!(circle_map_graph(1).is_err());
    }

    #[test]
    fn good_quotients() {
        assert_eq!(validate_good_quotient(&standard_f(), &standard_q()), Ok(()));
        assert_eq!(
            validate_good_quotient(&standard_f(), &quotient(&[0, 1, 2, 3, 4])),
            Ok(())
        );
        assert_eq!(
            validate_good_quotient(&standard_f(), &quotient(&[0, 2, 1, 3, 4])),
            Err(Error::NotMonotone { piece: 2 })
        );
        assert_eq!(
            validate_good_quotient(&standard_f(), &quotient(&[0, 1, 2])),
            Err(Error::GridMismatch {
                dynamics: 4,
                quotient: 2
            })
        );
        assert!(matches!(
            validate_good_quotient(&standard_f(), &quotient(&[0, 1, 2, 3, 5])),
            Err(Error::GridNotInvariant { .. })
        ));
        assert!(matches!(
            validate_good_quotient(&standard_f(), &quotient(&[0, 1, 2, 3, 3])),
            Err(Error::NotSurjective { .. })
        ));
        assert!(matches!(
            validate_good_quotient(&standard_q(), &standard_q()),
            Err(Error::WrongRole { .. })
        ));
    }

    #[test]
    fn standard_selection() {
        let sel = compatible_selection(&standard_f(), &standard_q()).unwrap();
        assert_eq!(sel.m, 2);
        assert_eq!(sel.c.one_based(), vec![1, 1, 2, 2]);
        assert_eq!(sel.g.one_based(), vec![2, 3]);
        assert_eq!(sel.b, AdjacencyMatrix::ones(2).unwrap());
    }

    #[test]
    fn identity_quotient_selection() {
        let sel = compatible_selection(&standard_f(), &quotient(&[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(sel.m, 4);
        assert_eq!(sel.c, VertexSurjection::identity(4));
        assert_eq!(sel.g, VertexMap::identity(4));
        assert_eq!(sel.b, standard_matrix());
    }

    #[test]
    fn tent_with_identity_quotient() {
        let cfg = Config::default();
        let tent = dynamics(&[0, 2, 0]);
        let q = quotient(&[0, 1, 2]);
        let sel = compatible_selection(&tent, &q).unwrap();
        assert_eq!(sel.c, VertexSurjection::identity(2));
        assert_eq!(sel.b, AdjacencyMatrix::ones(2).unwrap());
        let r = quotient_entropy_interval(&tent, &q, &cfg).unwrap();
        assert!((r.value - 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn standard_quotient_entropy() {
        let cfg = Config::default();
        let r = quotient_entropy_interval(&standard_f(), &standard_q(), &cfg).unwrap();
        assert_eq!(r.method, Method::Section);
        assert!((r.value - 2f64.ln()).abs() < 1e-10);
        assert!(r.residual < 1e-9);
        let full = quotient_entropy_interval(&standard_f(), &quotient(&[0, 1, 2, 3, 4]), &cfg).unwrap();
        assert!((full.value - 3f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn witness_that_is_not_a_section() {
        // q flattens piece 1 onto piece 2's cell; the dynamics send piece 1
        // everywhere but piece 2 only to piece 3, so the rising-piece witness
        // g = (2, 3) cannot carry the loop at coarse cell 1.
        let f = dynamics(&[0, 3, 2, 3]);
        let q = quotient(&[0, 0, 1, 3]);
        assert!(matches!(
            compatible_selection(&f, &q),
            Err(Error::NoCompatibleSelection(_))
        ));
    }

    /// Horizontal projection x ↦ sin(2πx) of the three arcs of E₃: the arc
    /// images are [-1, 0), (-√3/2, √3/2) and (0, 1] (closures taken), and a
    /// compatible partition needs images that are pairwise equal or disjoint.
    #[test]
    fn horizontal_projection_of_e3_admits_no_selection() {
        let s = 3f64.sqrt() / 2.0;
        let images = [(0.0, 1.0), (-s, s), (-1.0, 0.0)];
        let overlap = |a: (f64, f64), b: (f64, f64)| a.0.max(b.0) < a.1.min(b.1);
        let conflicting = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| images[i] != images[j] && overlap(images[i], images[j]))
            .count();
        assert_eq!(conflicting, 2);
    }
}
