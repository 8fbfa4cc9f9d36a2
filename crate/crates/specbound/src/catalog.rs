//! Named-graph catalog.
//!
//! `lookup` resolves named ids, parameterized families (`c<n>`, `p<n>`,
//! `k<n>`, `empty<n>`, `paley<q>`, `kneser_<n>_<k>`, `foldedcube<d>`), and a
//! `complement:<id>` prefix. `list` enumerates the named entries the test
//! sweeps iterate over; all of them stay small enough for the exact oracle.

use crate::error::{Error, Result};
use crate::graph::{
    cartesian_product, line_graph, make_complete, make_cycle, make_empty, make_folded_cube,
    make_kneser, make_paley, make_path, Graph,
};

pub struct CatalogEntry {
    pub id: &'static str,
    pub description: &'static str,
}

/// The named entries, in listing order.
pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry { id: "c4", description: "cycle on 4 vertices" },
    CatalogEntry { id: "c5", description: "cycle on 5 vertices" },
    CatalogEntry { id: "c6", description: "cycle on 6 vertices" },
    CatalogEntry { id: "c7", description: "cycle on 7 vertices" },
    CatalogEntry { id: "p3", description: "path on 3 vertices" },
    CatalogEntry { id: "p4", description: "path on 4 vertices" },
    CatalogEntry { id: "k5", description: "complete graph on 5 vertices" },
    CatalogEntry { id: "k7", description: "complete graph on 7 vertices" },
    CatalogEntry { id: "empty5", description: "edgeless graph on 5 vertices" },
    CatalogEntry { id: "petersen", description: "Petersen graph = Kneser(5,2)" },
    CatalogEntry { id: "clebsch", description: "Clebsch graph = folded 5-cube" },
    CatalogEntry {
        id: "clebsch_complement",
        description: "complement of the Clebsch graph",
    },
    CatalogEntry { id: "paley13", description: "Paley graph on 13 vertices" },
    CatalogEntry { id: "paley17", description: "Paley graph on 17 vertices" },
    CatalogEntry {
        id: "kneser_6_2",
        description: "Kneser graph K(6,2), 15 vertices",
    },
    CatalogEntry {
        id: "folded7cube_complement",
        description: "complement of the folded 7-cube, 64 vertices",
    },
    CatalogEntry {
        id: "k3xk3_line",
        description: "line graph of K3 x K3 (rook's graph), 18 vertices",
    },
];

pub fn list() -> &'static [CatalogEntry] {
    ENTRIES
}

/// Resolve a graph id. Ids are case-insensitive.
pub fn lookup(id: &str) -> Result<Graph> {
    let key = id.trim().to_ascii_lowercase();
    if let Some(rest) = key.strip_prefix("complement:") {
        return Ok(lookup(rest)?.complement().with_label(key.clone()));
    }
    let named = match key.as_str() {
        "petersen" => Some(make_kneser(5, 2)?),
        "clebsch" => Some(make_folded_cube(5)?),
        "clebsch_complement" => Some(make_folded_cube(5)?.complement()),
        "folded7cube_complement" => Some(make_folded_cube(7)?.complement()),
        "k3xk3" | "rook3" => Some(cartesian_product(
            &make_complete(3)?,
            &make_complete(3)?,
        )?),
        "k3xk3_line" => Some(line_graph(&cartesian_product(
            &make_complete(3)?,
            &make_complete(3)?,
        )?)?),
        _ => None,
    };
    if let Some(g) = named {
        return Ok(g.with_label(key.clone()));
    }

    if let Some(g) = parameterized(&key)? {
        return Ok(g.with_label(key.clone()));
    }
    Err(Error::InvalidInput(format!("unknown graph id {id:?}")))
}

fn parameterized(key: &str) -> Result<Option<Graph>> {
    fn num(s: &str) -> Option<usize> {
        (!s.is_empty()).then(|| s.parse().ok()).flatten()
    }
    if let Some(rest) = key.strip_prefix("kneser_") {
        if let Some((a, b)) = rest.split_once('_') {
            if let (Some(n), Some(k)) = (num(a), num(b)) {
                return make_kneser(n, k).map(Some);
            }
        }
        return Err(Error::InvalidInput(format!(
            "malformed Kneser id {key:?}; expected kneser_<n>_<k>"
        )));
    }
    if let Some(d) = key.strip_prefix("foldedcube").and_then(num) {
        return make_folded_cube(d).map(Some);
    }
    if let Some(q) = key.strip_prefix("paley").and_then(num) {
        return make_paley(q).map(Some);
    }
    if let Some(n) = key.strip_prefix("empty").and_then(num) {
        return make_empty(n).map(Some);
    }
    if let Some(n) = key.strip_prefix('c').and_then(num) {
        return make_cycle(n).map(Some);
    }
    if let Some(n) = key.strip_prefix('p').and_then(num) {
        return make_path(n).map(Some);
    }
    if let Some(n) = key.strip_prefix('k').and_then(num) {
        return make_complete(n).map(Some);
    }
    Ok(None)
}

/// Named catalog graphs as (id, graph) pairs.
pub fn all() -> Vec<(&'static str, Graph)> {
    ENTRIES
        .iter()
        .map(|e| (e.id, lookup(e.id).expect("catalog entries resolve")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_lookups() {
        assert_eq!(lookup("petersen").unwrap(), make_kneser(5, 2).unwrap());
        assert_eq!(lookup("Clebsch").unwrap().n(), 16);
        let f7c = lookup("folded7cube_complement").unwrap();
        assert_eq!((f7c.n(), f7c.regular_degree()), (64, Some(56)));
        assert_eq!(lookup("k3xk3_line").unwrap().regular_degree(), Some(6));
        assert!(lookup("nosuchgraph").is_err());
    }

    #[test]
    fn parameterized_lookups() {
        assert_eq!(lookup("c17").unwrap(), make_cycle(17).unwrap());
        assert_eq!(lookup("empty5").unwrap().m(), 0);
        assert_eq!(lookup("kneser_6_2").unwrap().n(), 15);
        assert_eq!(lookup("paley13").unwrap().regular_degree(), Some(6));
        assert_eq!(lookup("foldedcube5").unwrap(), lookup("clebsch").unwrap());
        assert!(lookup("c2").is_err());
        assert!(lookup("paley7").is_err());
        assert!(lookup("kneser_5").is_err());
        assert!(lookup("cx").is_err());
    }

    #[test]
    fn complement_prefix() {
        let co = lookup("complement:c5").unwrap();
        assert_eq!(co, make_cycle(5).unwrap().complement());
        assert_eq!(
            lookup("complement:complement:petersen").unwrap(),
            lookup("petersen").unwrap()
        );
    }

    #[test]
    fn all_entries_resolve_and_shake_hands() {
        let entries = all();
        assert_eq!(entries.len(), ENTRIES.len());
        for (id, g) in entries {
            let sum: usize = g.degrees().iter().sum();
            assert_eq!(sum, 2 * g.m(), "handshake failed for {id}");
            assert!(g.n() <= 64, "{id} too large for the exact oracle");
        }
    }

    #[test]
    fn labels_follow_ids() {
        assert_eq!(lookup("petersen").unwrap().label(), Some("petersen"));
        assert_eq!(lookup("C5").unwrap().label(), Some("c5"));
    }
}
