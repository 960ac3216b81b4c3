//! Cluster-by-cluster clique search on partite graphs.
//!
//! The search state at depth `level` is one candidate set per remaining
//! cluster. The first set is branched on: its candidates are tried in
//! degree order, each choice intersects every deeper set with the chosen
//! node's neighbourhood, and the deeper sets are then reordered by size. A
//! call returns immediately when some deeper set is empty.

use web_time::Instant;

use super::{CliqueSearchStats, ReducedGraph};
use crate::bits;
use crate::dynamics::ActivationState;
use crate::network::{Message, Network, Neuron, Probe, Symbol};

/// Direction of one of the two orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Ascending,
    Descending,
    /// Keep the current order (node index order for candidates).
    Unsorted,
}

/// Ordering of candidate nodes within the branched cluster and of the
/// remaining clusters after each branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SortOrder {
    pub candidates: Order,
    pub clusters: Order,
}

impl SortOrder {
    /// Fewest connections and smallest clusters first: a wide, shallow tree.
    pub const FLAT: Self = Self {
        candidates: Order::Ascending,
        clusters: Order::Ascending,
    };
    /// Both orderings reversed.
    pub const DEEP: Self = Self {
        candidates: Order::Descending,
        clusters: Order::Descending,
    };
    pub const CANDIDATES_ONLY: Self = Self {
        candidates: Order::Ascending,
        clusters: Order::Unsorted,
    };
    pub const CLUSTERS_ONLY: Self = Self {
        candidates: Order::Unsorted,
        clusters: Order::Ascending,
    };
}

impl Default for SortOrder {
    fn default() -> Self {
        Self::FLAT
    }
}

/// Adjacency rows and degrees the search runs against.
trait SearchSpace {
    fn words(&self) -> usize;
    fn row(&self, v: usize) -> &[u64];
    fn degree(&self, v: usize) -> u32;
}

impl SearchSpace for ReducedGraph {
    fn words(&self) -> usize {
        ReducedGraph::words(self)
    }

    fn row(&self, v: usize) -> &[u64] {
        ReducedGraph::row(self, v)
    }

    fn degree(&self, v: usize) -> u32 {
        ReducedGraph::degree(self, v)
    }
}

/// The converged network in its original numbering: node ids are bit
/// positions of the network layout and degrees are counted against the
/// active set on demand.
struct FullSpace<'a> {
    net: &'a Network,
    active: &'a [u64],
}

impl SearchSpace for FullSpace<'_> {
    fn words(&self) -> usize {
        self.active.len()
    }

    fn row(&self, v: usize) -> &[u64] {
        self.net.row(self.net.layout().neuron_at_bit(v))
    }

    fn degree(&self, v: usize) -> u32 {
        bits::and_count(self.row(v), self.active) as u32
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    First,
    All,
}

/// Per-depth scratch space, reused by every call at that depth.
#[derive(Default)]
struct Level {
    /// Candidate sets of the undecided clusters, `words()` words each.
    sets: Vec<u64>,
    tmp: Vec<u64>,
    keys: Vec<(usize, usize)>,
    candidates: Vec<(u32, usize)>,
}

thread_local! {
    /// Level buffers kept between searches on the same thread.
    static SCRATCH: std::cell::Cell<Vec<Level>> = const { std::cell::Cell::new(Vec::new()) };
}

struct Search<'a, S> {
    space: &'a S,
    order: SortOrder,
    mode: Mode,
    calls: u64,
    chosen: Vec<usize>,
    found: bool,
    cliques: Vec<Vec<usize>>,
    levels: Vec<Level>,
}

impl<'a, S: SearchSpace> Search<'a, S> {
    fn new(space: &'a S, order: SortOrder, mode: Mode) -> Self {
        Self {
            space,
            order,
            mode,
            calls: 0,
            chosen: Vec::new(),
            found: false,
            cliques: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// Reorders the sets of `lv` by their sizes.
    fn sort_sets(&self, lv: &mut Level) {
        let w = self.space.words();
        let reverse = match self.order.clusters {
            Order::Unsorted => return,
            Order::Ascending => false,
            Order::Descending => true,
        };
        if w == 0 {
            return;
        }
        lv.keys.clear();
        lv.keys.extend(
            lv.sets
                .chunks(w)
                .map(bits::count)
                .enumerate()
                .map(|(i, k)| (k, i)),
        );
        // Stable on the original position, so equal sizes keep their order.
        if reverse {
            lv.keys.sort_by_key(|&(k, i)| (std::cmp::Reverse(k), i));
        } else {
            lv.keys.sort_unstable();
        }
        lv.tmp.clear();
        for &(_, i) in &lv.keys {
            lv.tmp.extend_from_slice(&lv.sets[i * w..(i + 1) * w]);
        }
        std::mem::swap(&mut lv.sets, &mut lv.tmp);
    }

    fn sort_candidates(&self, lv: &mut Level) {
        let w = self.space.words();
        lv.candidates.clear();
        let space = self.space;
        match self.order.candidates {
            Order::Unsorted => lv
                .candidates
                .extend(bits::ones(&lv.sets[..w]).map(|v| (0, v))),
            Order::Ascending => {
                lv.candidates
                    .extend(bits::ones(&lv.sets[..w]).map(|v| (space.degree(v), v)));
                lv.candidates.sort_unstable();
            }
            Order::Descending => {
                lv.candidates
                    .extend(bits::ones(&lv.sets[..w]).map(|v| (space.degree(v), v)));
                lv.candidates
                    .sort_unstable_by_key(|&(d, v)| (std::cmp::Reverse(d), v));
            }
        }
    }

    /// Explores the clusters held in `levels[depth]`, the first one branched on.
    fn clique(&mut self, depth: usize) {
        self.calls += 1;
        let w = self.space.words();
        let mut lv = std::mem::take(&mut self.levels[depth]);
        if lv.sets.is_empty() || w == 0 {
            self.found = true;
            self.cliques.push(self.chosen.clone());
            self.levels[depth] = lv;
            return;
        }
        self.sort_candidates(&mut lv);
        for i in 0..lv.candidates.len() {
            if lv.sets[w..].chunks(w).any(bits::is_empty) {
                break;
            }
            let v = lv.candidates[i].1;
            self.chosen.push(v);
            let mut next = std::mem::take(&mut self.levels[depth + 1]);
            next.sets.clear();
            let row = self.space.row(v);
            for set in lv.sets[w..].chunks(w) {
                next.sets.extend(set.iter().zip(row).map(|(a, b)| a & b));
            }
            self.sort_sets(&mut next);
            self.levels[depth + 1] = next;
            self.clique(depth + 1);
            if self.found && self.mode == Mode::First {
                break;
            }
            self.chosen.pop();
        }
        self.levels[depth] = lv;
    }

    fn start(mut self, sets: Vec<u64>, levels: usize) -> (Vec<Vec<usize>>, CliqueSearchStats) {
        let t0 = Instant::now();
        if levels == 0 {
            self.calls += 1;
            self.cliques.push(Vec::new());
        } else {
            self.levels = SCRATCH.with(|s| s.take());
            if self.levels.len() < levels + 1 {
                self.levels.resize_with(levels + 1, Level::default);
            }
            let mut root = std::mem::take(&mut self.levels[0]);
            root.sets.clear();
            root.sets.extend_from_slice(&sets);
            self.sort_sets(&mut root);
            self.levels[0] = root;
            self.clique(0);
            let levels = std::mem::take(&mut self.levels);
            SCRATCH.with(|s| s.replace(levels));
        }
        let stats = CliqueSearchStats {
            recursive_calls: self.calls,
            wall_time: t0.elapsed(),
        };
        (self.cliques, stats)
    }
}

fn initial_sets(g: &ReducedGraph) -> Vec<u64> {
    let w = g.words();
    let mut sets = vec![0u64; g.cluster_count() * w];
    for (i, nodes) in g.clusters().iter().enumerate() {
        for &v in nodes {
            bits::set(&mut sets[i * w..(i + 1) * w], v);
        }
    }
    sets
}

/// The first clique with one node per cluster, as ascending node ids.
/// `Some(vec![])` when the graph has no clusters.
pub fn find_clique_partite(
    g: &ReducedGraph,
    order: SortOrder,
) -> (Option<Vec<usize>>, CliqueSearchStats) {
    let (mut found, stats) =
        Search::new(g, order, Mode::First).start(initial_sets(g), g.cluster_count());
    let first = found.pop().map(|mut c| {
        c.sort_unstable();
        c
    });
    (first, stats)
}

/// Every clique with one node per cluster, each as ascending node ids, in
/// discovery order.
pub fn find_all_cliques_partite(
    g: &ReducedGraph,
    order: SortOrder,
) -> (Vec<Vec<usize>>, CliqueSearchStats) {
    let (mut all, stats) =
        Search::new(g, order, Mode::All).start(initial_sets(g), g.cluster_count());
    for c in &mut all {
        c.sort_unstable();
    }
    (all, stats)
}

/// Nodes that belong to at least one full clique, ascending.
///
/// Runs one early-exit search per node not yet covered, with that node's
/// cluster restricted to it; each hit covers a whole clique at once.
pub fn clique_union_partite(g: &ReducedGraph) -> Vec<usize> {
    let k = g.cluster_count();
    if k == 0 {
        return Vec::new();
    }
    let w = g.words();
    let mut sets = initial_sets(g);
    let mut covered = vec![false; g.node_count()];
    for (ci, nodes) in g.clusters().iter().enumerate() {
        for &v in nodes {
            if covered[v] {
                continue;
            }
            let mut pinned = sets.clone();
            let slot = &mut pinned[ci * w..(ci + 1) * w];
            slot.fill(0);
            bits::set(slot, v);
            let (found, _) = Search::new(g, SortOrder::FLAT, Mode::First).start(pinned, k);
            match found.into_iter().next() {
                Some(clique) => clique.into_iter().for_each(|u| covered[u] = true),
                // In no clique: drop it so later searches skip it.
                None => bits::clear(&mut sets[ci * w..(ci + 1) * w], v),
            }
        }
    }
    (0..g.node_count()).filter(|&v| covered[v]).collect()
}

/// The same search on the converged network without reduction: every cluster
/// is a level (known and single-active ones included), candidate sets live in
/// the full network numbering, and degrees are recounted against the active
/// set whenever candidates are sorted. Returns the decoded message.
pub fn find_clique_unreduced(
    net: &Network,
    state: &ActivationState,
    probe: &Probe,
    order: SortOrder,
) -> (Option<Message>, CliqueSearchStats) {
    let layout = net.layout();
    let w = layout.row_words();
    let mut active = state.words().to_vec();
    for (c, e) in probe.entries().iter().enumerate() {
        if let Symbol::Known(s) = *e {
            active[layout.block(c)].fill(0);
            bits::set(&mut active, layout.bit(Neuron::new(c, s)));
        }
    }
    let mut sets = vec![0u64; layout.clusters * w];
    for c in 0..layout.clusters {
        let r = layout.block(c);
        sets[c * w..(c + 1) * w][r.clone()].copy_from_slice(&active[r]);
    }
    let space = FullSpace {
        net,
        active: &active,
    };
    let (mut found, stats) = Search::new(&space, order, Mode::First).start(sets, layout.clusters);
    let message = found.pop().map(|bits_chosen| {
        let mut symbols = vec![0; layout.clusters];
        for b in bits_chosen {
            let n = layout.neuron_at_bit(b);
            symbols[n.cluster] = n.symbol;
        }
        Message::from_symbols_unchecked(symbols)
    });
    (message, stats)
}
