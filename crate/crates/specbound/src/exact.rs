//! Exact combinatorial ground truth: maximum independent set by
//! branch-and-bound, clique number via the complement, and bipartite maximum
//! matching. Everything here is deterministic — branching always picks the
//! highest-degree residual vertex with lowest-index tie-breaking — so
//! witnesses are reproducible.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A maximum independent set: its size and the vertices, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentSetWitness {
    pub size: usize,
    pub vertices: Vec<usize>,
}

/// Exact alpha(g) with a witness. Branch-and-bound over bitsets, bounded by
/// current size + residual count; residual subgraphs of maximum degree <= 2
/// are unions of paths and cycles and get solved in closed form.
pub fn independence_number(g: &Graph) -> Result<IndependentSetWitness> {
    let rows = g.bit_rows()?; // enforces n <= 64
    let n = g.n();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = Search {
        rows: &rows,
        best_mask: 0,
        best_size: 0,
    };
    search.recurse(0, 0, all);
    let vertices: Vec<usize> = (0..n).filter(|&v| search.best_mask >> v & 1 == 1).collect();
    debug_assert_eq!(vertices.len(), search.best_size as usize);
    debug_assert!(vertices
        .iter()
        .all(|&u| vertices.iter().all(|&v| u == v || !g.has_edge(u, v))));
    Ok(IndependentSetWitness {
        size: search.best_size as usize,
        vertices,
    })
}

struct Search<'a> {
    rows: &'a [u64],
    best_mask: u64,
    best_size: u32,
}

impl Search<'_> {
    fn recurse(&mut self, cur_mask: u64, cur_size: u32, cand: u64) {
        let residual = cand.count_ones();
        if cur_size + residual <= self.best_size {
            return;
        }
        if cand == 0 {
            self.best_size = cur_size;
            self.best_mask = cur_mask;
            return;
        }

        // Highest residual degree, lowest index on ties.
        let mut pick = usize::MAX;
        let mut pick_deg = 0u32;
        let mut seen_any = false;
        let mut it = cand;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            let d = (self.rows[v] & cand).count_ones();
            if !seen_any || d > pick_deg {
                pick = v;
                pick_deg = d;
                seen_any = true;
            }
        }

        if pick_deg <= 2 {
            let chosen = paths_and_cycles(self.rows, cand);
            let size = cur_size + chosen.count_ones();
            if size > self.best_size {
                self.best_size = size;
                self.best_mask = cur_mask | chosen;
            }
            return;
        }

        let bit = 1u64 << pick;
        // Include first so a good incumbent forms early.
        self.recurse(
            cur_mask | bit,
            cur_size + 1,
            cand & !bit & !self.rows[pick],
        );
        self.recurse(cur_mask, cur_size, cand & !bit);
    }
}

// Maximum independent set of a residual graph of maximum degree <= 2:
// walk each path from an endpoint (or cycle from its lowest vertex) and take
// alternate vertices.
fn paths_and_cycles(rows: &[u64], cand: u64) -> u64 {
    let mut chosen = 0u64;
    let mut left = cand;
    while left != 0 {
        // Prefer an endpoint (residual degree <= 1) so paths start at an end.
        let mut start = None;
        let mut it = left;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            if (rows[v] & left).count_ones() <= 1 {
                start = Some(v);
                break;
            }
        }
        let (v0, is_cycle) = match start {
            Some(v) => (v, false),
            None => (left.trailing_zeros() as usize, true),
        };
        let mut comp = vec![v0];
        left &= !(1u64 << v0);
        let mut cur = v0;
        loop {
            let next = rows[cur] & left;
            if next == 0 {
                break;
            }
            let nx = next.trailing_zeros() as usize;
            comp.push(nx);
            left &= !(1u64 << nx);
            cur = nx;
        }
        let take = if is_cycle {
            comp.len() / 2
        } else {
            comp.len().div_ceil(2)
        };
        for i in 0..take {
            chosen |= 1u64 << comp[2 * i];
        }
    }
    chosen
}

/// omega(g) = alpha of the complement.
pub fn clique_number(g: &Graph) -> Result<usize> {
    Ok(independence_number(&g.complement())?.size)
}

/// Maximum matching of a bipartite graph via augmenting paths (Kuhn).
/// `coloring[v]` is 0 or 1; every edge must cross the parts. Returns matched
/// edges as (side-0 vertex, side-1 vertex), sorted.
pub fn maximum_matching_bipartite(g: &Graph, coloring: &[u8]) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    if coloring.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "coloring length {} does not match order {n}",
            coloring.len()
        )));
    }
    if coloring.iter().any(|&c| c > 1) {
        return Err(Error::InvalidInput("coloring values must be 0 or 1".into()));
    }
    for (u, v) in g.edges() {
        if coloring[u] == coloring[v] {
            return Err(Error::InvalidInput(format!(
                "edge ({u},{v}) does not cross the given bipartition"
            )));
        }
    }

    let mut matched_to: Vec<Option<usize>> = vec![None; n]; // indexed by side-1 vertex
    let mut visited = vec![false; n];
    fn augment(
        g: &Graph,
        u: usize,
        visited: &mut [bool],
        matched_to: &mut [Option<usize>],
    ) -> bool {
        for v in g.neighbors(u) {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            let free = matched_to[v].is_none();
            if free || augment(g, matched_to[v].unwrap(), visited, matched_to) {
                matched_to[v] = Some(u);
                return true;
            }
        }
        false
    }
    for u in 0..n {
        if coloring[u] == 0 {
            visited.fill(false);
            augment(g, u, &mut visited, &mut matched_to);
        }
    }

    let mut edges: Vec<(usize, usize)> = (0..n)
        .filter_map(|v| matched_to[v].map(|u| (u, v)))
        .collect();
    edges.sort_unstable();
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        make_complete, make_cycle, make_empty, make_folded_cube, make_kneser, make_path,
        Bipartition,
    };
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    // Independent test oracle: exhaustive subset scan, n <= 20 or so.
    fn brute_alpha(g: &Graph) -> usize {
        let rows = g.bit_rows().unwrap();
        let n = g.n();
        let mut best = 0;
        for mask in 0u64..1 << n {
            if mask.count_ones() as usize <= best {
                continue;
            }
            let ok = (0..n)
                .all(|v| mask >> v & 1 == 0 || rows[v] & mask == 0);
            if ok {
                best = mask.count_ones() as usize;
            }
        }
        best
    }

    fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn known_independence_numbers() {
        assert_eq!(independence_number(&make_cycle(5).unwrap()).unwrap().size, 2);
        assert_eq!(
            independence_number(&make_kneser(5, 2).unwrap()).unwrap().size,
            4
        );
        assert_eq!(
            independence_number(&make_folded_cube(5).unwrap()).unwrap().size,
            5
        );
        assert_eq!(independence_number(&make_empty(5).unwrap()).unwrap().size, 5);
        assert_eq!(independence_number(&make_complete(7).unwrap()).unwrap().size, 1);
    }

    #[test]
    fn witness_is_independent_and_sorted() {
        let g = make_kneser(5, 2).unwrap();
        let w = independence_number(&g).unwrap();
        assert_eq!(w.vertices.len(), w.size);
        let mut sorted = w.vertices.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, w.vertices);
        for (i, &u) in w.vertices.iter().enumerate() {
            for &v in &w.vertices[i + 1..] {
                assert!(!g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn matches_exhaustive_oracle() {
        let mut rng = StdRng::seed_from_u64(3);
        for trial in 0..200 {
            let n = rng.gen_range(1..=12);
            let p = rng.gen_range(0.05..0.95);
            let g = random_graph(&mut rng, n, p);
            assert_eq!(
                independence_number(&g).unwrap().size,
                brute_alpha(&g),
                "mismatch on trial {trial}"
            );
        }
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&make_folded_cube(5).unwrap()).unwrap(), 2);
        assert_eq!(clique_number(&make_complete(7).unwrap()).unwrap(), 7);
        assert_eq!(clique_number(&make_cycle(5).unwrap()).unwrap(), 2);
    }

    #[test]
    fn oversize_rejected() {
        let g = Graph::new(65).unwrap();
        assert!(matches!(
            independence_number(&g),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn matchings() {
        let c6 = make_cycle(6).unwrap();
        let coloring = match c6.bipartition() {
            Bipartition::Bipartite { coloring } => coloring,
            _ => unreachable!(),
        };
        assert_eq!(maximum_matching_bipartite(&c6, &coloring).unwrap().len(), 3);

        let p4 = make_path(4).unwrap();
        let coloring = match p4.bipartition() {
            Bipartition::Bipartite { coloring } => coloring,
            _ => unreachable!(),
        };
        let m = maximum_matching_bipartite(&p4, &coloring).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(independence_number(&p4).unwrap().size, 4 - m.len());

        let e5 = make_empty(5).unwrap();
        assert_eq!(
            maximum_matching_bipartite(&e5, &[0, 0, 0, 1, 1]).unwrap().len(),
            0
        );
    }

    #[test]
    fn matching_rejects_bad_colorings() {
        let c5 = make_cycle(5).unwrap();
        assert!(maximum_matching_bipartite(&c5, &[0, 1, 0, 1, 0]).is_err());
        let c6 = make_cycle(6).unwrap();
        assert!(maximum_matching_bipartite(&c6, &[0, 1]).is_err());
        assert!(maximum_matching_bipartite(&c6, &[0, 1, 2, 0, 1, 2]).is_err());
    }

    #[test]
    fn koenig_on_random_bipartite_graphs() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..50 {
            let n = rng.gen_range(2..=14);
            let coloring: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
            let mut g = Graph::new(n).unwrap();
            for u in 0..n {
                for v in (u + 1)..n {
                    if coloring[u] != coloring[v] && rng.gen_bool(0.4) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let mu = maximum_matching_bipartite(&g, &coloring).unwrap().len();
            assert_eq!(brute_alpha(&g), n - mu);
        }
    }
}
