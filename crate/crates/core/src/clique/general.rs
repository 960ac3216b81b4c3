use web_time::Instant;

use super::{CliqueSearchStats, Graph};
use crate::bits;

struct Cp<'a> {
    g: &'a Graph,
    q: Vec<usize>,
    best: Vec<usize>,
    calls: u64,
}

impl Cp<'_> {
    fn clique(&mut self, mut u: Vec<u64>) {
        self.calls += 1;
        let size = bits::count(&u);
        if size == 0 && self.q.len() > self.best.len() {
            self.best = self.q.clone();
            return;
        }
        let mut size = size;
        while size > 0 {
            if size + self.q.len() < self.best.len() {
                return;
            }
            let v = bits::ones(&u).next().expect("nonempty set");
            bits::clear(&mut u, v);
            size -= 1;
            self.q.push(v);
            let sub: Vec<u64> = u.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            self.clique(sub);
            self.q.pop();
        }
    }
}

/// Maximum clique of an arbitrary graph by plain branch and bound: branch on
/// the lowest-numbered remaining node, bound by `|U| + |Q| < |Q_max|`.
/// The returned nodes are ascending.
pub fn find_max_clique_cp(g: &Graph) -> (Vec<usize>, CliqueSearchStats) {
    let t0 = Instant::now();
    let mut all = vec![0u64; bits::words_for(g.node_count())];
    for v in 0..g.node_count() {
        bits::set(&mut all, v);
    }
    let mut cp = Cp {
        g,
        q: Vec::new(),
        best: Vec::new(),
        calls: 0,
    };
    cp.clique(all);
    let mut best = cp.best;
    best.sort_unstable();
    let stats = CliqueSearchStats {
        recursive_calls: cp.calls,
        wall_time: t0.elapsed(),
    };
    (best, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::maximal_vs_maximum;

    #[test]
    fn finds_the_four_clique_not_the_maximal_triangle() {
        let (q, stats) = find_max_clique_cp(&maximal_vs_maximum());
        assert_eq!(q, vec![1, 2, 3, 4]);
        assert!(stats.recursive_calls > 1);
    }

    #[test]
    fn trivial_graphs() {
        assert_eq!(find_max_clique_cp(&Graph::new(4)).0.len(), 1);
        let mut k5 = Graph::new(5);
        for a in 0..5 {
            for b in a + 1..5 {
                k5.add_edge(a, b);
            }
        }
        assert_eq!(find_max_clique_cp(&k5).0, vec![0, 1, 2, 3, 4]);
        let (empty, stats) = find_max_clique_cp(&Graph::new(0));
        assert!(empty.is_empty());
        assert_eq!(stats.recursive_calls, 1);
    }
}
