//! Shared helpers for the integration suites: seeded random graphs, random
//! valid weight matrices, and an exhaustive independence oracle kept
//! deliberately separate from the library's branch-and-bound.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use specbound::graph::Graph;
use specbound::linalg::HermitianMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with a seeded generator.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n).expect("n >= 1");
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v).expect("valid edge");
            }
        }
    }
    g
}

/// Random bipartite graph: vertices split by parity of index hash, edges only
/// across the split.
pub fn random_bipartite_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n).expect("n >= 1");
    let split = rng.gen_range(1..n.max(2));
    for u in 0..split {
        for v in split..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v).expect("valid edge");
            }
        }
    }
    g
}

/// Exhaustive maximum independent set size; subset enumeration, n <= 20.
pub fn brute_alpha(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20, "oracle is exponential; keep n small");
    let mut adj = vec![0u32; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize <= best {
            continue;
        }
        let mut ok = true;
        let mut rest = mask;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[u] & mask != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            best = mask.count_ones() as usize;
        }
    }
    best
}

/// Random weight matrix supported exactly on the edges: real symmetric, or
/// fully Hermitian when `hermitian` is set.
pub fn random_weight_matrix(rng: &mut ChaCha8Rng, g: &Graph, hermitian: bool) -> HermitianMatrix {
    let n = g.n();
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for (u, v) in g.edges() {
        let re = rng.gen_range(-2.0..2.0);
        let im = if hermitian { rng.gen_range(-2.0..2.0) } else { 0.0 };
        data[u * n + v] = Complex64::new(re, im);
        data[v * n + u] = Complex64::new(re, -im);
    }
    HermitianMatrix::new(n, data).expect("Hermitian by construction")
}
