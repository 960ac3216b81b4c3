use super::Graph;
use crate::bits;
use crate::dynamics::ActivationState;
use crate::error::{GbnnError, Result};
use crate::network::{Network, Neuron, Probe, Symbol};

/// The part of a converged state that still needs a decision.
///
/// Known clusters and erased clusters with a single active neuron are moved to
/// `fixed`; the remaining erased clusters keep only their active neurons,
/// renumbered `0..node_count()` cluster by cluster.
#[derive(Debug, Clone)]
pub struct ReducedGraph {
    fixed: Vec<Neuron>,
    clusters: Vec<Vec<usize>>,
    nodes: Vec<Neuron>,
    words: usize,
    adjacency: Vec<u64>,
    degrees: Vec<u32>,
}

impl ReducedGraph {
    /// Builds an arbitrary partite graph: cluster `i` gets `sizes[i]` nodes,
    /// numbered consecutively. Edges inside a cluster are rejected.
    pub fn from_partite(sizes: &[usize], edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let nodes: Vec<Neuron> = sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &k)| (0..k).map(move |s| Neuron::new(c, s)))
            .collect();
        let mut clusters = Vec::with_capacity(sizes.len());
        let mut next = 0;
        for &k in sizes {
            clusters.push((next..next + k).collect());
            next += k;
        }
        let mut g = Self::with_nodes(Vec::new(), clusters, nodes);
        for (a, b) in edges {
            assert_ne!(
                g.nodes[a].cluster, g.nodes[b].cluster,
                "edge ({a}, {b}) inside one cluster"
            );
            g.link(a, b);
        }
        g.finish();
        g
    }

    fn with_nodes(fixed: Vec<Neuron>, clusters: Vec<Vec<usize>>, nodes: Vec<Neuron>) -> Self {
        let words = bits::words_for(nodes.len());
        Self {
            fixed,
            clusters,
            adjacency: vec![0; nodes.len() * words],
            degrees: vec![0; nodes.len()],
            nodes,
            words,
        }
    }

    fn link(&mut self, a: usize, b: usize) {
        let w = self.words;
        bits::set(&mut self.adjacency[a * w..(a + 1) * w], b);
        bits::set(&mut self.adjacency[b * w..(b + 1) * w], a);
    }

    fn finish(&mut self) {
        self.degrees = (0..self.nodes.len())
            .map(|v| bits::count(self.row(v)) as u32)
            .collect();
    }

    /// Neurons whose cluster is already decided, ordered by cluster.
    pub fn fixed(&self) -> &[Neuron] {
        &self.fixed
    }

    /// Number of undecided clusters.
    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }

    /// Node ids of each undecided cluster.
    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn neuron(&self, node: usize) -> Neuron {
        self.nodes[node]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        bits::get(self.row(a), b)
    }

    /// Degree inside the reduced graph.
    pub fn degree(&self, node: usize) -> u32 {
        self.degrees[node]
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub(crate) fn row(&self, node: usize) -> &[u64] {
        &self.adjacency[node * self.words..(node + 1) * self.words]
    }

    /// Number of tuples with one node per cluster.
    pub fn tuple_count(&self) -> u128 {
        self.clusters.iter().map(|c| c.len() as u128).product()
    }

    /// The retained nodes as a general graph. With `include_fixed`, the fixed
    /// neurons are appended as nodes `node_count()..`, adjacent to each other
    /// and to every retained node.
    pub fn to_graph(&self, include_fixed: bool) -> Graph {
        let extra = if include_fixed { self.fixed.len() } else { 0 };
        let r = self.nodes.len();
        let mut g = Graph::new(r + extra);
        for a in 0..r {
            for b in bits::ones(self.row(a)).filter(|&b| b > a) {
                g.add_edge(a, b);
            }
        }
        for i in 0..extra {
            for v in 0..r {
                g.add_edge(r + i, v);
            }
            for j in i + 1..extra {
                g.add_edge(r + i, r + j);
            }
        }
        g
    }

    pub fn to_dimacs(&self) -> String {
        self.to_graph(false).to_dimacs(&self.clusters)
    }
}

/// Drops decided clusters and inactive neurons from a sum-of-max fixed point.
///
/// Retained neurons that are not adjacent to every fixed neuron are also
/// dropped; on a genuine fixed point there are none.
pub fn reduce_graph(net: &Network, state: &ActivationState, probe: &Probe) -> Result<ReducedGraph> {
    let config = net.config();
    let mut fixed = Vec::new();
    let mut open = Vec::new();
    for c in 0..config.clusters() {
        match probe.get(c) {
            Symbol::Known(s) => fixed.push(Neuron::new(c, s)),
            Symbol::Erased => {
                let mut active = state.active_in(c);
                match (active.next(), active.next()) {
                    (None, _) => return Err(GbnnError::EmptyErasedCluster(c)),
                    (Some(s), None) => fixed.push(Neuron::new(c, s)),
                    _ => open.push(c),
                }
            }
        }
    }

    // Retained neurons: active in an open cluster and adjacent to every fixed neuron.
    let layout = net.layout();
    let mut mask = vec![0u64; layout.row_words()];
    for &c in &open {
        let block = layout.block(c);
        mask[block.clone()].copy_from_slice(&state.words()[block]);
    }
    for &f in &fixed {
        for (m, r) in mask.iter_mut().zip(net.row(f)) {
            *m &= r;
        }
    }

    // Node ids follow bit order.
    let nodes: Vec<Neuron> = bits::ones(&mask).map(|b| layout.neuron_at_bit(b)).collect();
    // A node's id is the rank of its bit in `mask`.
    let mut rank = Vec::with_capacity(mask.len());
    let mut total = 0;
    for &m in &mask {
        rank.push(total);
        total += m.count_ones() as usize;
    }
    let mut clusters = Vec::with_capacity(open.len());
    let mut next = 0;
    for &c in &open {
        let k = bits::count(&mask[layout.block(c)]);
        clusters.push((next..next + k).collect());
        next += k;
    }

    let mut g = ReducedGraph::with_nodes(fixed, clusters, nodes);
    let w = g.words;
    for (a, bit_a) in bits::ones(&mask).enumerate() {
        let row = net.row(layout.neuron_at_bit(bit_a));
        let out = &mut g.adjacency[a * w..(a + 1) * w];
        for (i, (&r, &m)) in row.iter().zip(&mask).enumerate() {
            let mut x = r & m;
            while x != 0 {
                let below = m & ((1u64 << x.trailing_zeros()) - 1);
                bits::set(out, rank[i] + below.count_ones() as usize);
                x &= x - 1;
            }
        }
    }
    g.finish();
    Ok(g)
}
