//! Lovász theta via eigenvalue optimization of the dual form:
//! minimize lambda_max(B) over symmetric B with B[u][v] = 1 on the diagonal
//! and on non-edges, free on edges. Every iterate is dual feasible, so every
//! reported value is an upper bound on theta(G) up to eigensolver error.
//!
//! Projected subgradient descent with step 1/sqrt(k); the top eigenvector
//! comes from warm-started power iteration on B + cI. Tail averages over
//! doubling windows are scored as extra candidates, which damps the
//! oscillation subgradient methods suffer near non-smooth optima.

use serde::Serialize;

use crate::bounds::{hoffman_bound, BoundValue};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{eigenvalues_hermitian, HermitianMatrix};

pub const DEFAULT_THETA_MAX_ITERS: usize = 20000;
pub const DEFAULT_THETA_TOL: f64 = 1e-4;

pub const MAX_THETA_ORDER: usize = 32;
const PATIENCE: usize = 200;
const POWER_TOL: f64 = 1e-10;
// Warm starts carry the vector across outer iterations, so each call only
// needs a short refinement burst even when the top eigenvalues cluster.
const POWER_MAX_ITERS: usize = 300;

/// Outcome of the theta optimization. `value` is the exact largest
/// eigenvalue of `certificate_matrix` (recomputed densely at the end);
/// `residual` is the improvement recorded the last time the best value
/// decreased.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaResult {
    pub value: f64,
    pub iterations: usize,
    pub residual: f64,
    pub certificate_matrix: HermitianMatrix,
}

/// Upper estimate of theta(G). Stops at `max_iters` or once the best value
/// has improved by less than `tol` over 200 consecutive iterations; `tol = 0`
/// disables the early stop and always runs the full budget, which is worth a
/// few extra digits when the early descent bottoms out on a value the slowly
/// maturing tail average needs more than the patience window to beat. The
/// empty graph returns exactly n.
pub fn lovasz_theta(g: &Graph, max_iters: usize, tol: f64) -> Result<ThetaResult> {
    let n = g.n();
    if n > MAX_THETA_ORDER {
        return Err(Error::SizeLimit(format!(
            "theta supports n <= {MAX_THETA_ORDER}, got {n}"
        )));
    }
    let edges = g.edges();
    if edges.is_empty() {
        // B is forced to all-ones; lambda_max = n with uniform eigenvector.
        let cert = HermitianMatrix::from_real(n, &vec![1.0; n * n])?;
        return Ok(ThetaResult {
            value: n as f64,
            iterations: 0,
            residual: 0.0,
            certificate_matrix: cert,
        });
    }

    // Fixed entries 1, free (edge) entries start at 0.
    let mut b = vec![1.0f64; n * n];
    let mut fixed = vec![true; n * n];
    for &(u, v) in &edges {
        b[u * n + v] = 0.0;
        b[v * n + u] = 0.0;
        fixed[u * n + v] = false;
        fixed[v * n + u] = false;
    }

    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut x_avg = x.clone();
    // Two overlapping tail-average buckets on a doubling schedule: the old
    // bucket always spans at least the most recent half of the run, so the
    // averaged candidate never loses maturity when a window rolls over.
    let mut avg_old = vec![0.0f64; n * n];
    let mut count_old = 0usize;
    let mut avg_new = vec![0.0f64; n * n];
    let mut count_new = 0usize;
    let mut next_boundary = 2usize;

    let mut best_val = f64::INFINITY;
    let mut best_b = b.clone();
    let mut residual = 0.0f64;
    let mut anchor_val = f64::INFINITY;
    let mut stall = 0usize;
    let mut iterations = 0usize;

    // The power estimate is a Rayleigh quotient, hence a lower bound on
    // lambda_max; use it only to screen candidates and confirm apparent
    // improvements with the dense solver so best_val stays exact.
    let confirm = |mat: &[f64]| -> Result<f64> {
        let m = HermitianMatrix::from_real(n, mat)?;
        let evs = eigenvalues_hermitian(&m)?;
        Ok(evs[evs.len() - 1])
    };

    for k in 1..=max_iters {
        iterations = k;
        let lam = power_top(n, &b, &mut x);

        let mut improved_by = 0.0f64;
        let consider = |estimate: f64,
                            mat: &[f64],
                            best_val: &mut f64,
                            best_b: &mut Vec<f64>,
                            improved_by: &mut f64|
         -> Result<()> {
            if estimate < *best_val {
                let exact = confirm(mat)?;
                if exact < *best_val {
                    if best_val.is_finite() {
                        *improved_by = (*best_val - exact).max(*improved_by);
                    }
                    *best_val = exact;
                    best_b.copy_from_slice(mat);
                }
            }
            Ok(())
        };
        consider(lam, &b, &mut best_val, &mut best_b, &mut improved_by)?;

        // Subgradient step restricted to edge positions.
        let step = 1.0 / (k as f64).sqrt();
        for &(u, v) in &edges {
            let grad = x[u] * x[v];
            b[u * n + v] -= step * grad;
            b[v * n + u] -= step * grad;
        }

        for ((ao, an), &bi) in avg_old.iter_mut().zip(avg_new.iter_mut()).zip(b.iter()) {
            *ao += bi;
            *an += bi;
        }
        count_old += 1;
        count_new += 1;
        if k == next_boundary {
            avg_old.copy_from_slice(&avg_new);
            count_old = count_new;
            avg_new.fill(0.0);
            count_new = 0;
            next_boundary *= 2;
        }
        if count_old >= 2 {
            // Re-pin the fixed entries: k * round(1/k) drifts off 1 by an ulp
            // for most k, and the certificate must be exactly feasible.
            let scale = 1.0 / count_old as f64;
            let mean: Vec<f64> = avg_old
                .iter()
                .zip(&fixed)
                .map(|(a, &fx)| if fx { 1.0 } else { a * scale })
                .collect();
            let lam_avg = power_top(n, &mean, &mut x_avg);
            consider(lam_avg, &mean, &mut best_val, &mut best_b, &mut improved_by)?;
        }

        if improved_by > 0.0 {
            residual = improved_by;
        }
        // Patience measures cumulative progress: the anchor resets whenever
        // the best value has dropped by at least tol since the last reset, so
        // slow-but-steady subgradient tails are not cut off.
        if anchor_val - best_val >= tol {
            anchor_val = best_val;
            stall = 0;
        } else {
            stall += 1;
            if stall >= PATIENCE {
                break;
            }
        }
    }

    // Infinity can only survive if max_iters = 0; fall back to the start.
    if !best_val.is_finite() {
        best_b = b;
    }
    let cert = HermitianMatrix::from_real(n, &best_b)?;
    let evs = eigenvalues_hermitian(&cert)?;
    Ok(ThetaResult {
        value: evs[evs.len() - 1],
        iterations,
        residual,
        certificate_matrix: cert,
    })
}

/// Largest eigenvalue of symmetric b, warm-starting from (and updating) x.
/// Power iteration on b + cI with c = 1 + max absolute row sum, which makes
/// the shifted matrix positive definite with lambda_max(b) + c on top.
/// A fixed jitter is mixed into the start: a warm vector can sit exactly in
/// a lower eigenspace (symmetric graphs produce that), and without overlap
/// power iteration would stabilize on the wrong eigenvalue.
fn power_top(n: usize, b: &[f64], x: &mut [f64]) -> f64 {
    let mut c = 0.0f64;
    for i in 0..n {
        let row: f64 = (0..n).map(|j| b[i * n + j].abs()).sum();
        c = c.max(row);
    }
    c += 1.0;

    normalize(x);
    for (i, v) in x.iter_mut().enumerate() {
        *v += 2e-3 * jitter(i);
    }
    normalize(x);

    let mut y = vec![0.0f64; n];
    let mut lambda_prev = f64::INFINITY;
    let mut lambda = 0.0f64;
    for it in 0..POWER_MAX_ITERS {
        for i in 0..n {
            let mut s = c * x[i];
            let row = &b[i * n..(i + 1) * n];
            for (j, &bij) in row.iter().enumerate() {
                s += bij * x[j];
            }
            y[i] = s;
        }
        lambda = dot(x, &y); // Rayleigh quotient of the shifted matrix
        x.copy_from_slice(&y);
        normalize(x);
        if it >= 3 && (lambda - lambda_prev).abs() < POWER_TOL {
            break;
        }
        lambda_prev = lambda;
    }
    lambda - c
}

// Deterministic full-support pattern in (-0.5, 0.5); splitmix-style hash.
fn jitter(i: usize) -> f64 {
    let mut z = (i as u64).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    z as f64 / u64::MAX as f64 - 0.5
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(x: &mut [f64]) {
    let norm = dot(x, x).sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    } else {
        let n = x.len();
        x.fill(1.0 / (n as f64).sqrt());
    }
}

/// For regular graphs the Hoffman value bounds theta as well; used to
/// sandwich the subgradient estimate.
pub fn theta_regular_cap(g: &Graph) -> Result<BoundValue> {
    let h = hoffman_bound(g)?;
    if h.applicable {
        Ok(BoundValue::applicable("theta_regular_cap", h.value.unwrap()))
    } else {
        Ok(BoundValue::inapplicable(
            "theta_regular_cap",
            h.reason.as_deref().unwrap_or("graph is not regular"),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_empty, make_folded_cube, make_kneser, make_path};

    #[test]
    fn empty_graph_is_exact() {
        let r = lovasz_theta(&make_empty(5).unwrap(), 1000, 1e-6).unwrap();
        assert_eq!(r.value, 5.0);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn complete_graph_theta_is_one() {
        let r = lovasz_theta(&make_complete(5).unwrap(), 2000, 1e-6).unwrap();
        assert!((r.value - 1.0).abs() < 5e-3, "value {}", r.value);
    }

    #[test]
    fn c5_theta_is_sqrt5() {
        let r = lovasz_theta(&make_cycle(5).unwrap(), 20000, 1e-6).unwrap();
        assert!((r.value - 5f64.sqrt()).abs() < 5e-3, "value {}", r.value);
    }

    #[test]
    fn c4_theta_is_two() {
        let r = lovasz_theta(&make_cycle(4).unwrap(), 20000, 1e-6).unwrap();
        assert!(r.value <= 2.0 + 5e-3, "value {}", r.value);
        assert!(r.value >= 2.0 - 1e-6);
    }

    #[test]
    fn certificate_is_feasible_and_consistent() {
        let g = make_cycle(5).unwrap();
        let r = lovasz_theta(&g, 3000, 1e-6).unwrap();
        let cert = &r.certificate_matrix;
        for u in 0..5 {
            for v in 0..5 {
                if u == v || !g.has_edge(u, v) {
                    assert_eq!(cert.entry(u, v).re, 1.0);
                    assert_eq!(cert.entry(u, v).im, 0.0);
                }
            }
        }
        let evs = eigenvalues_hermitian(cert).unwrap();
        assert!((evs[evs.len() - 1] - r.value).abs() < 1e-8);
    }

    #[test]
    fn more_iterations_never_worse() {
        let g = make_cycle(5).unwrap();
        let coarse = lovasz_theta(&g, 200, 1e-9).unwrap();
        let fine = lovasz_theta(&g, 5000, 1e-9).unwrap();
        assert!(fine.value <= coarse.value + 1e-9);
    }

    #[test]
    fn regular_caps() {
        let cap = theta_regular_cap(&make_folded_cube(5).unwrap()).unwrap();
        assert!((cap.value.unwrap() - 6.0).abs() < 1e-9);
        let cap = theta_regular_cap(&make_kneser(5, 2).unwrap()).unwrap();
        assert!((cap.value.unwrap() - 4.0).abs() < 1e-9);
        let cap = theta_regular_cap(&make_cycle(4).unwrap()).unwrap();
        assert!((cap.value.unwrap() - 2.0).abs() < 1e-9);
        assert!(!theta_regular_cap(&make_path(3).unwrap()).unwrap().applicable);
    }

    #[test]
    fn oversize_rejected() {
        let g = crate::graph::make_cycle(33).unwrap();
        assert!(matches!(lovasz_theta(&g, 10, 1e-4), Err(Error::SizeLimit(_))));
    }
}
