//! Closed-form spectral upper bounds on the independence number and its
//! quantum relaxations: the inertia bound for arbitrary valid weight
//! matrices, the Hoffman ratio bound (regular graphs), the Golubev Laplacian
//! bound, the adjacency-rank bound on clique-type parameters, and the
//! complement-inertia inequality.
//!
//! Inapplicability (Hoffman on an irregular graph, rank of an empty graph) is
//! a reported value, not an error, so bound chains stay total.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{
    adjacency_matrix, eigenvalues_hermitian, inertia, inertia_with_scale, laplacian,
    HermitianMatrix,
};

/// A named bound outcome. `value` is absent exactly when the bound does not
/// apply; `integer_cap` is floor(value + 1e-9) for bounds on integral
/// quantities.
#[derive(Clone, Debug, Serialize)]
pub struct BoundValue {
    pub name: String,
    pub value: Option<f64>,
    pub integer_cap: Option<u64>,
    pub applicable: bool,
    pub reason: Option<String>,
}

impl BoundValue {
    pub fn applicable(name: &str, value: f64) -> Self {
        BoundValue {
            name: name.to_string(),
            value: Some(value),
            integer_cap: Some((value + 1e-9).floor().max(0.0) as u64),
            applicable: true,
            reason: None,
        }
    }

    pub fn inapplicable(name: &str, reason: &str) -> Self {
        BoundValue {
            name: name.to_string(),
            value: None,
            integer_cap: None,
            applicable: false,
            reason: Some(reason.to_string()),
        }
    }
}

/// The inertia bound n0 + min(n+, n-) of a weight matrix.
pub fn inertia_bound(w: &HermitianMatrix) -> Result<usize> {
    Ok(inertia(w)?.isotropy_bound())
}

/// Same, with an explicit zero-threshold scale.
pub fn inertia_bound_with_scale(w: &HermitianMatrix, scale: f64) -> Result<usize> {
    Ok(inertia_with_scale(w, scale)?.isotropy_bound())
}

/// Support-pattern violation of a candidate weight matrix: a nonzero entry on
/// the diagonal or a non-edge.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightViolation {
    pub u: usize,
    pub v: usize,
    pub magnitude: f64,
}

impl std::fmt::Display for WeightViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.u == self.v {
            write!(f, "nonzero diagonal at {} (|w| = {:.3e})", self.u, self.magnitude)
        } else {
            write!(
                f,
                "nonzero entry on non-edge ({},{}) (|w| = {:.3e})",
                self.u, self.v, self.magnitude
            )
        }
    }
}

pub const SUPPORT_TOL: f64 = 1e-12;

/// Check that w vanishes on the diagonal and on non-edges (within 1e-12).
/// Hermiticity is already guaranteed by the type. An empty list means valid.
pub fn validate_weight_matrix(g: &Graph, w: &HermitianMatrix) -> Result<Vec<WeightViolation>> {
    if w.dim() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "weight matrix dim {} does not match graph order {}",
            w.dim(),
            g.n()
        )));
    }
    let mut violations = Vec::new();
    for u in 0..g.n() {
        for v in u..g.n() {
            if u != v && g.has_edge(u, v) {
                continue;
            }
            let mag = w.entry(u, v).norm();
            if mag > SUPPORT_TOL {
                violations.push(WeightViolation { u, v, magnitude: mag });
            }
        }
    }
    Ok(violations)
}

/// Hoffman ratio bound n|lambda_min| / (degree + |lambda_min|) for regular
/// graphs with at least one edge.
pub fn hoffman_bound(g: &Graph) -> Result<BoundValue> {
    let Some(degree) = g.regular_degree() else {
        return Ok(BoundValue::inapplicable("hoffman", "graph is not regular"));
    };
    if degree == 0 {
        return Ok(BoundValue::inapplicable("hoffman", "graph has no edges"));
    }
    let evs = eigenvalues_hermitian(&adjacency_matrix(g))?;
    let lambda_min = evs[0].abs();
    let value = g.n() as f64 * lambda_min / (degree as f64 + lambda_min);
    Ok(BoundValue::applicable("hoffman", value))
}

/// Golubev bound n(mu - delta)/mu, mu the Laplacian spectral radius, delta
/// the minimum degree.
pub fn golubev_bound(g: &Graph) -> Result<BoundValue> {
    if g.m() == 0 {
        return Ok(BoundValue::inapplicable(
            "golubev",
            "graph has no edges (Laplacian spectral radius 0)",
        ));
    }
    let evs = eigenvalues_hermitian(&laplacian(g))?;
    let mu = evs[evs.len() - 1];
    let delta = g.min_degree() as f64;
    let value = g.n() as f64 * (mu - delta) / mu;
    Ok(BoundValue::applicable("golubev", value))
}

/// Adjacency-rank bound: clique-type parameters of a non-empty graph are at
/// most rank(A) = n+ + n-.
pub fn rank_bound_clique(g: &Graph) -> Result<BoundValue> {
    if g.m() == 0 {
        return Ok(BoundValue::inapplicable("rank", "graph has no edges"));
    }
    let rank = inertia(&adjacency_matrix(g))?.rank();
    Ok(BoundValue::applicable("rank", rank as f64))
}

/// The inequality n - 1 <= n-(A) + n-(complement A).
pub fn complement_inertia_check(g: &Graph) -> Result<bool> {
    let a = inertia(&adjacency_matrix(g))?;
    let b = inertia(&adjacency_matrix(&g.complement()))?;
    Ok(g.n() - 1 <= a.n_minus + b.n_minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        make_complete, make_cycle, make_empty, make_folded_cube, make_kneser, make_paley,
        make_path,
    };
    use crate::linalg::tensor_with_identity;

    #[test]
    fn inertia_bounds_on_named_graphs() {
        let clebsch = adjacency_matrix(&make_folded_cube(5).unwrap());
        assert_eq!(inertia_bound(&clebsch).unwrap(), 5);
        let petersen = adjacency_matrix(&make_kneser(5, 2).unwrap());
        assert_eq!(inertia_bound(&petersen).unwrap(), 4);
        let zero = HermitianMatrix::zeros(7).unwrap();
        assert_eq!(inertia_bound(&zero).unwrap(), 7);
    }

    #[test]
    fn weight_matrix_validation() {
        let c5 = make_cycle(5).unwrap();
        let a5 = adjacency_matrix(&c5);
        assert!(validate_weight_matrix(&c5, &a5).unwrap().is_empty());

        let diag = HermitianMatrix::from_fn(5, |i, j| {
            if i == j {
                num_complex::Complex64::new(1.0, 0.0)
            } else {
                a5.entry(i, j)
            }
        })
        .unwrap();
        let v = validate_weight_matrix(&c5, &diag).unwrap();
        assert_eq!(v.len(), 5);
        assert_eq!((v[0].u, v[0].v), (0, 0));

        // adjacency of C4 padded to dim 5: the edge (0,3) of C4 is a chord
        // of C5, so its support leaks onto a non-edge
        let c4pad = HermitianMatrix::from_fn(5, |i, j| {
            let edge = matches!(
                (i.min(j), i.max(j)),
                (0, 1) | (1, 2) | (2, 3) | (0, 3)
            );
            num_complex::Complex64::new(if edge { 1.0 } else { 0.0 }, 0.0)
        })
        .unwrap();
        let v = validate_weight_matrix(&c5, &c4pad).unwrap();
        assert!(v.iter().any(|w| (w.u, w.v) == (0, 3)));

        let a4 = adjacency_matrix(&make_cycle(4).unwrap());
        assert!(validate_weight_matrix(&c5, &a4).is_err());
    }

    #[test]
    fn hoffman_values() {
        let b = hoffman_bound(&make_folded_cube(5).unwrap()).unwrap();
        assert!((b.value.unwrap() - 6.0).abs() < 1e-9);
        assert_eq!(b.integer_cap, Some(6));

        let b = hoffman_bound(&make_kneser(5, 2).unwrap()).unwrap();
        assert!((b.value.unwrap() - 4.0).abs() < 1e-9);

        let b = hoffman_bound(&make_complete(2).unwrap()).unwrap();
        assert!((b.value.unwrap() - 1.0).abs() < 1e-12);

        let b = hoffman_bound(&make_path(3).unwrap()).unwrap();
        assert!(!b.applicable && b.value.is_none());
        assert!(b.reason.as_deref().unwrap().contains("regular"));

        assert!(!hoffman_bound(&make_empty(4).unwrap()).unwrap().applicable);
    }

    #[test]
    fn golubev_values() {
        let b = golubev_bound(&make_kneser(5, 2).unwrap()).unwrap();
        assert!((b.value.unwrap() - 4.0).abs() < 1e-9);
        let b = golubev_bound(&make_folded_cube(5).unwrap()).unwrap();
        assert!((b.value.unwrap() - 6.0).abs() < 1e-9);
        let b = golubev_bound(&make_complete(2).unwrap()).unwrap();
        assert!((b.value.unwrap() - 1.0).abs() < 1e-12);
        assert!(!golubev_bound(&make_empty(3).unwrap()).unwrap().applicable);
    }

    #[test]
    fn hoffman_equals_golubev_on_regular_graphs() {
        for g in [
            make_cycle(7).unwrap(),
            make_kneser(5, 2).unwrap(),
            make_folded_cube(5).unwrap(),
            make_paley(13).unwrap(),
            make_complete(6).unwrap(),
        ] {
            let h = hoffman_bound(&g).unwrap().value.unwrap();
            let gb = golubev_bound(&g).unwrap().value.unwrap();
            assert!((h - gb).abs() < 1e-9, "{:?}: {h} vs {gb}", g.label());
        }
    }

    #[test]
    fn rank_bound_values() {
        let b = rank_bound_clique(&make_complete(5).unwrap()).unwrap();
        assert_eq!(b.integer_cap, Some(5));
        let b = rank_bound_clique(&make_cycle(4).unwrap()).unwrap();
        assert_eq!(b.integer_cap, Some(2));
        assert!(!rank_bound_clique(&make_empty(4).unwrap()).unwrap().applicable);
    }

    #[test]
    fn complement_inertia_small() {
        assert!(complement_inertia_check(&make_kneser(5, 2).unwrap()).unwrap());
        assert!(complement_inertia_check(&make_complete(2).unwrap()).unwrap());
        assert!(complement_inertia_check(&make_empty(6).unwrap()).unwrap());
    }

    #[test]
    fn integer_cap_rounds_near_integers_up() {
        // 5.9999999997 is within 1e-9 of 6 and must cap at 6, not 5.
        let b = BoundValue::applicable("x", 6.0 - 3e-10);
        assert_eq!(b.integer_cap, Some(6));
        let b = BoundValue::applicable("x", 5.9);
        assert_eq!(b.integer_cap, Some(5));
    }

    #[test]
    fn weighted_inertia_bound_scales_with_tensor() {
        let a = adjacency_matrix(&make_cycle(5).unwrap());
        let t = tensor_with_identity(&a, 3).unwrap();
        assert_eq!(inertia_bound(&t).unwrap(), 3 * inertia_bound(&a).unwrap());
    }
}
