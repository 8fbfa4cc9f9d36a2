//! Search for weight matrices that tighten the inertia bound.
//!
//! The annealer perturbs one edge weight at a time (real or complex mode),
//! scoring states lexicographically by (inertia bound, margin), where margin
//! is the smallest |eigenvalue| among those classified nonzero: driving the
//! margin down walks an eigenvalue toward a sign change, which is the only
//! way the integer bound can move. Bipartite graphs skip the search — a
//! maximum matching carries weights that are always tight.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::validate_weight_matrix;
use crate::error::{Error, Result};
use crate::exact::maximum_matching_bipartite;
use crate::graph::{Bipartition, Graph};
use crate::linalg::{
    classify_eigenvalues, eigenvalues_hermitian, HermitianMatrix, DEFAULT_ZERO_SCALE,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    Real,
    Hermitian,
}

impl std::fmt::Display for WeightMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WeightMode::Real => "real",
            WeightMode::Hermitian => "hermitian",
        })
    }
}

impl std::str::FromStr for WeightMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(WeightMode::Real),
            "hermitian" => Ok(WeightMode::Hermitian),
            other => Err(Error::InvalidParameters(format!(
                "unknown weight mode {other:?} (expected real or hermitian)"
            ))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightSearchResult {
    pub best_matrix: HermitianMatrix,
    pub best_bound: usize,
    pub target: usize,
    pub reached_target: bool,
    pub evaluations: usize,
    pub seed: u64,
    pub mode: WeightMode,
}

/// One line of the search trace: the accepted state after each evaluation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TraceEvent {
    pub step: usize,
    pub bound: usize,
    pub margin: f64,
    pub temperature: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub target: usize,
    pub mode: WeightMode,
    pub budget: usize,
    pub seed: u64,
    pub zero_scale: f64,
}

const WEIGHT_CLAMP: f64 = 10.0;
const COOLING: f64 = 0.995;
const SIGMA_START: f64 = 0.5;

/// Anneal edge weights toward inertia bound = target, starting from the
/// unweighted adjacency matrix. Deterministic for a fixed seed.
pub fn search_weights(
    g: &Graph,
    target: usize,
    mode: WeightMode,
    budget: usize,
    seed: u64,
) -> Result<WeightSearchResult> {
    search_weights_traced(
        g,
        SearchOptions {
            target,
            mode,
            budget,
            seed,
            zero_scale: DEFAULT_ZERO_SCALE,
        },
        |_| {},
    )
}

pub fn search_weights_traced(
    g: &Graph,
    opts: SearchOptions,
    mut trace: impl FnMut(&TraceEvent),
) -> Result<WeightSearchResult> {
    if opts.budget == 0 {
        return Err(Error::InvalidParameters("search budget must be >= 1".into()));
    }
    let edges = g.edges();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let evaluate = |weights: &[Complex64]| -> Result<(HermitianMatrix, usize, f64)> {
        let w = build_weight_matrix(g.n(), &edges, weights);
        debug_assert!(validate_weight_matrix(g, &w)?.is_empty());
        let evs = eigenvalues_hermitian(&w)?;
        let inertia = classify_eigenvalues(&evs, opts.zero_scale);
        let margin = evs
            .iter()
            .map(|x| x.abs())
            .filter(|&a| a > inertia.tol)
            .fold(f64::INFINITY, f64::min);
        let margin = if margin.is_finite() { margin } else { 0.0 };
        Ok((w, inertia.isotropy_bound(), margin))
    };
    // Integer bound first, margin as the continuous tie-breaker in [0, 1).
    let energy = |bound: usize, margin: f64| 2.0 * bound as f64 + margin / (1.0 + margin);

    let mut current: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); edges.len()];
    let (mut best_w, mut bound, mut margin) = evaluate(&current)?;
    let mut evaluations = 1usize;
    let (mut best_bound, mut best_margin) = (bound, margin);
    let mut temperature = 1.0f64;
    trace(&TraceEvent {
        step: 0,
        bound,
        margin,
        temperature,
    });

    let mut sigma = SIGMA_START;
    let mut accepted_in_window = 0usize;
    let mut window = 0usize;

    while bound > opts.target && evaluations < opts.budget && !edges.is_empty() {
        temperature *= COOLING;
        let mut candidate = current.clone();
        let e = rng.gen_range(0..edges.len());
        perturb(&mut candidate[e], opts.mode, sigma, &mut rng);

        let (w, cand_bound, cand_margin) = evaluate(&candidate)?;
        evaluations += 1;

        let delta = energy(cand_bound, cand_margin) - energy(bound, margin);
        let accept = delta <= 0.0 || rng.gen::<f64>() < (-delta / temperature).exp();
        if accept {
            current = candidate;
            bound = cand_bound;
            margin = cand_margin;
            accepted_in_window += 1;
        }
        if (cand_bound, cand_margin) < (best_bound, best_margin) {
            best_bound = cand_bound;
            best_margin = cand_margin;
            best_w = w;
        }
        trace(&TraceEvent {
            step: evaluations - 1,
            bound,
            margin,
            temperature,
        });

        window += 1;
        if window == 100 {
            let rate = accepted_in_window as f64 / 100.0;
            if rate > 0.4 {
                sigma = (sigma * 1.4).min(2.0);
            } else if rate < 0.15 {
                sigma = (sigma * 0.7).max(0.02);
            }
            window = 0;
            accepted_in_window = 0;
        }
    }

    Ok(WeightSearchResult {
        best_matrix: best_w,
        best_bound,
        target: opts.target,
        reached_target: best_bound <= opts.target,
        evaluations,
        seed: opts.seed,
        mode: opts.mode,
    })
}

fn perturb(w: &mut Complex64, mode: WeightMode, sigma: f64, rng: &mut ChaCha8Rng) {
    match mode {
        WeightMode::Real => {
            let v = (w.re + sigma * gaussian(rng)).clamp(-WEIGHT_CLAMP, WEIGHT_CLAMP);
            *w = Complex64::new(v, 0.0);
        }
        WeightMode::Hermitian => {
            let (r, theta) = w.to_polar();
            let r = (r + sigma * gaussian(rng)).clamp(0.0, WEIGHT_CLAMP);
            let theta = theta + sigma * gaussian(rng);
            *w = Complex64::from_polar(r, theta);
        }
    }
}

// Box-Muller; avoids pulling in a distributions crate for one sampler.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn build_weight_matrix(n: usize, edges: &[(usize, usize)], weights: &[Complex64]) -> HermitianMatrix {
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for (&(u, v), &w) in edges.iter().zip(weights) {
        data[u * n + v] = w;
        data[v * n + u] = w.conj();
    }
    HermitianMatrix::from_parts_unchecked(n, data)
}

/// Pick the best restart: lowest bound, then lowest seed.
pub fn merge_results(results: Vec<WeightSearchResult>) -> Option<WeightSearchResult> {
    results
        .into_iter()
        .min_by_key(|r| (r.best_bound, r.seed))
}

/// Weight matrix supported on a maximum matching with unit weights. Its
/// spectrum is +-1 per matched edge and 0 elsewhere, so the inertia bound is
/// n - mu, which equals alpha for bipartite graphs.
pub fn bipartite_tight_weights(g: &Graph) -> Result<HermitianMatrix> {
    let coloring = match g.bipartition() {
        Bipartition::Bipartite { coloring } => coloring,
        Bipartition::OddCycle(cycle) => {
            return Err(Error::InvalidInput(format!(
                "graph is not bipartite (odd cycle through {cycle:?})"
            )))
        }
    };
    let matching = maximum_matching_bipartite(g, &coloring)?;
    let n = g.n();
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for (u, v) in matching {
        data[u * n + v] = Complex64::new(1.0, 0.0);
        data[v * n + u] = Complex64::new(1.0, 0.0);
    }
    Ok(HermitianMatrix::from_parts_unchecked(n, data))
}
