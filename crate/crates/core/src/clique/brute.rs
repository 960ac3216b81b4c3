use super::ReducedGraph;
use crate::error::{GbnnError, Result};

pub const DEFAULT_BRUTE_FORCE_CAP: u128 = 1_000_000;

/// Every one-node-per-cluster tuple whose nodes are pairwise adjacent, in
/// lexicographic order of cluster positions. Fails when the number of tuples
/// exceeds `cap`.
pub fn brute_force_partite(g: &ReducedGraph, cap: u128) -> Result<Vec<Vec<usize>>> {
    let tuples = g.tuple_count();
    if tuples > cap {
        return Err(GbnnError::BruteForceCapExceeded { tuples, cap });
    }
    let clusters = g.clusters();
    let mut out = Vec::new();
    if clusters.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    let mut idx = vec![0usize; clusters.len()];
    loop {
        let tuple: Vec<usize> = idx.iter().zip(clusters).map(|(&i, c)| c[i]).collect();
        let ok = tuple
            .iter()
            .enumerate()
            .all(|(i, &a)| tuple[i + 1..].iter().all(|&b| g.adjacent(a, b)));
        if ok {
            out.push(tuple);
        }
        // Odometer increment, last cluster fastest.
        let mut k = clusters.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < clusters[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_cluster_and_cap() {
        let g = ReducedGraph::from_partite(&[2, 0, 1], []);
        assert!(brute_force_partite(&g, DEFAULT_BRUTE_FORCE_CAP)
            .unwrap()
            .is_empty());
        let g = ReducedGraph::from_partite(&[10, 10, 10], []);
        assert!(matches!(
            brute_force_partite(&g, 999),
            Err(GbnnError::BruteForceCapExceeded {
                tuples: 1000,
                cap: 999
            })
        ));
        let g = ReducedGraph::from_partite(&[], []);
        assert_eq!(
            brute_force_partite(&g, 1).unwrap(),
            vec![Vec::<usize>::new()]
        );
    }

    #[test]
    fn triangle_plus_dangling_edge() {
        let g = ReducedGraph::from_partite(&[2, 1, 1], [(0, 2), (0, 3), (2, 3), (1, 2)]);
        assert_eq!(brute_force_partite(&g, 100).unwrap(), vec![vec![0, 2, 3]]);
    }
}
