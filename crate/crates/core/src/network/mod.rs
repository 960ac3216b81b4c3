//! Network topology, messages and probes, and the storing rule.
//!
//! A network has `C` clusters of `L` neurons. Neuron `(c, l)` has the public
//! flat index `c * L + l`. Internally every cluster occupies a whole number of
//! 64-bit words so that per-cluster slices of a row or of an activation vector
//! are contiguous word ranges.

mod codec;
mod text;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits;
use crate::error::{GbnnError, Result};

pub use codec::{deserialize, serialize, FORMAT_VERSION, MAGIC};
pub use text::{
    format_message, format_probe, parse_message, parse_messages, parse_probe, parse_probes,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkConfig {
    clusters: usize,
    neurons: usize,
    gamma: f64,
}

impl NetworkConfig {
    /// Configuration with the reinforcement factor set to 1.
    pub fn new(clusters: usize, neurons: usize) -> Result<Self> {
        Self::with_gamma(clusters, neurons, 1.0)
    }

    pub fn with_gamma(clusters: usize, neurons: usize, gamma: f64) -> Result<Self> {
        if clusters < 2 || neurons < 1 {
            return Err(GbnnError::InvalidConfig { clusters, neurons });
        }
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(GbnnError::InvalidGamma(gamma));
        }
        clusters
            .checked_mul(neurons)
            .ok_or(GbnnError::DimensionOverflow {
                clusters: clusters as u64,
                neurons: neurons as u64,
            })?;
        Ok(Self {
            clusters,
            neurons,
            gamma,
        })
    }

    pub fn clusters(&self) -> usize {
        self.clusters
    }

    pub fn neurons_per_cluster(&self) -> usize {
        self.neurons
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Total neuron count `n = C * L`.
    pub fn neuron_count(&self) -> usize {
        self.clusters * self.neurons
    }

    pub(crate) fn layout(&self) -> Layout {
        Layout::new(self.clusters, self.neurons)
    }
}

/// Word geometry shared by weight rows and activation vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Layout {
    pub clusters: usize,
    pub neurons: usize,
    pub cluster_words: usize,
}

impl Layout {
    pub fn new(clusters: usize, neurons: usize) -> Self {
        Self {
            clusters,
            neurons,
            cluster_words: bits::words_for(neurons),
        }
    }

    #[inline]
    pub fn row_words(&self) -> usize {
        self.clusters * self.cluster_words
    }

    #[inline]
    pub fn bit(&self, n: Neuron) -> usize {
        n.cluster * self.cluster_words * 64 + n.symbol
    }

    #[inline]
    pub fn neuron_at_bit(&self, bit: usize) -> Neuron {
        let stride = self.cluster_words * 64;
        Neuron::new(bit / stride, bit % stride)
    }

    #[inline]
    pub fn block(&self, cluster: usize) -> std::ops::Range<usize> {
        cluster * self.cluster_words..(cluster + 1) * self.cluster_words
    }
}

/// One neuron, addressed by cluster and symbol (position within the cluster).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Neuron {
    pub cluster: usize,
    pub symbol: usize,
}

impl Neuron {
    pub const fn new(cluster: usize, symbol: usize) -> Self {
        Self { cluster, symbol }
    }

    pub fn flat_index(&self, config: &NetworkConfig) -> usize {
        self.cluster * config.neurons + self.symbol
    }

    pub fn from_flat_index(index: usize, config: &NetworkConfig) -> Self {
        Self::new(index / config.neurons, index % config.neurons)
    }
}

impl fmt::Display for Neuron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.cluster, self.symbol)
    }
}

/// A stored pattern: one symbol per cluster.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Message(Vec<usize>);

impl Message {
    pub fn new(symbols: Vec<usize>, config: &NetworkConfig) -> Result<Self> {
        if symbols.len() != config.clusters {
            return Err(GbnnError::LengthMismatch {
                expected: config.clusters,
                found: symbols.len(),
            });
        }
        if let Some((cluster, &symbol)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= config.neurons)
        {
            return Err(GbnnError::SymbolOutOfRange {
                cluster,
                symbol,
                neurons: config.neurons,
            });
        }
        Ok(Self(symbols))
    }

    pub(crate) fn from_symbols_unchecked(symbols: Vec<usize>) -> Self {
        Self(symbols)
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn neurons(&self) -> impl Iterator<Item = Neuron> + '_ {
        self.0.iter().enumerate().map(|(c, &s)| Neuron::new(c, s))
    }
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_message(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Known(usize),
    Erased,
}

impl Symbol {
    pub fn known(&self) -> Option<usize> {
        match *self {
            Symbol::Known(s) => Some(s),
            Symbol::Erased => None,
        }
    }

    pub fn is_erased(&self) -> bool {
        matches!(self, Symbol::Erased)
    }
}

/// A partially erased message presented for retrieval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Probe(Vec<Symbol>);

impl Probe {
    pub fn new(entries: Vec<Symbol>, config: &NetworkConfig) -> Result<Self> {
        if entries.len() != config.clusters {
            return Err(GbnnError::LengthMismatch {
                expected: config.clusters,
                found: entries.len(),
            });
        }
        for (cluster, e) in entries.iter().enumerate() {
            if let Symbol::Known(symbol) = *e {
                if symbol >= config.neurons {
                    return Err(GbnnError::SymbolOutOfRange {
                        cluster,
                        symbol,
                        neurons: config.neurons,
                    });
                }
            }
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, cluster: usize) -> Symbol {
        self.0[cluster]
    }

    pub fn erased_clusters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_erased())
            .map(|(c, _)| c)
    }

    pub fn known_neurons(&self) -> impl Iterator<Item = Neuron> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(c, e)| e.known().map(|s| Neuron::new(c, s)))
    }

    pub fn erased_count(&self) -> usize {
        self.erased_clusters().count()
    }

    /// True when every known entry agrees with `message`.
    pub fn matches(&self, message: &Message) -> bool {
        self.0
            .iter()
            .zip(message.symbols())
            .all(|(e, &s)| e.known().is_none_or(|k| k == s))
    }
}

impl fmt::Display for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_probe(self))
    }
}

/// The stored memory: a symmetric binary weight matrix over all `n` neurons.
///
/// Intra-cluster entries (including the diagonal) are always zero.
#[derive(Clone, PartialEq)]
pub struct Network {
    config: NetworkConfig,
    layout: Layout,
    rows: Vec<u64>,
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Network")
            .field("config", &self.config)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Network {
    /// An empty network: no edges.
    pub fn new(config: NetworkConfig) -> Self {
        let layout = config.layout();
        let rows = vec![0; config.neuron_count() * layout.row_words()];
        Self {
            config,
            layout,
            rows,
        }
    }

    pub fn config(&self) -> &NetworkConfig {
        &self.config
    }

    pub(crate) fn layout(&self) -> Layout {
        self.layout
    }

    /// Adds the clique of `message`: every pair of its neurons becomes connected.
    pub fn store(&mut self, message: &Message) -> Result<()> {
        self.check_message(message)?;
        let symbols = message.symbols();
        for (a, &sa) in symbols.iter().enumerate() {
            for (b, &sb) in symbols.iter().enumerate().skip(a + 1) {
                self.connect(Neuron::new(a, sa), Neuron::new(b, sb));
            }
        }
        Ok(())
    }

    pub fn store_all<'a>(&mut self, messages: impl IntoIterator<Item = &'a Message>) -> Result<()> {
        for m in messages {
            self.store(m)?;
        }
        Ok(())
    }

    fn check_message(&self, message: &Message) -> Result<()> {
        if message.len() != self.config.clusters {
            return Err(GbnnError::LengthMismatch {
                expected: self.config.clusters,
                found: message.len(),
            });
        }
        if let Some((cluster, &symbol)) = message
            .symbols()
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= self.config.neurons)
        {
            return Err(GbnnError::SymbolOutOfRange {
                cluster,
                symbol,
                neurons: self.config.neurons,
            });
        }
        Ok(())
    }

    /// Sets `w[a][b] = w[b][a] = 1`. Both neurons must lie in distinct clusters.
    pub(crate) fn connect(&mut self, a: Neuron, b: Neuron) {
        debug_assert_ne!(a.cluster, b.cluster);
        let (ra, rb) = (self.row_start(a), self.row_start(b));
        let (ba, bb) = (self.layout.bit(a), self.layout.bit(b));
        bits::set(&mut self.rows[ra..ra + self.layout.row_words()], bb);
        bits::set(&mut self.rows[rb..rb + self.layout.row_words()], ba);
    }

    #[inline]
    fn row_start(&self, n: Neuron) -> usize {
        (n.cluster * self.config.neurons + n.symbol) * self.layout.row_words()
    }

    /// Packed neighbourhood of `n` in the internal word layout.
    #[inline]
    pub(crate) fn row(&self, n: Neuron) -> &[u64] {
        let s = self.row_start(n);
        &self.rows[s..s + self.layout.row_words()]
    }

    pub fn is_connected(&self, a: Neuron, b: Neuron) -> bool {
        bits::get(self.row(a), self.layout.bit(b))
    }

    /// Matrix entry by flat indices.
    pub fn weight(&self, a: usize, b: usize) -> bool {
        self.is_connected(
            Neuron::from_flat_index(a, &self.config),
            Neuron::from_flat_index(b, &self.config),
        )
    }

    /// Number of neighbours of `n` in the whole network.
    pub fn degree(&self, n: Neuron) -> usize {
        bits::count(self.row(n))
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        bits::count(&self.rows) / 2
    }

    /// Number of nonzero matrix entries (twice the edge count).
    pub fn nonzero_entries(&self) -> usize {
        bits::count(&self.rows)
    }

    /// Fraction of possible inter-cluster edges present.
    pub fn density(&self) -> f64 {
        let c = self.config.clusters as f64;
        let l = self.config.neurons as f64;
        let possible = c * (c - 1.0) / 2.0 * l * l;
        self.edge_count() as f64 / possible
    }

    pub fn neurons(&self) -> impl Iterator<Item = Neuron> {
        let (c, l) = (self.config.clusters, self.config.neurons);
        (0..c).flat_map(move |cl| (0..l).map(move |s| Neuron::new(cl, s)))
    }

    /// Neighbours of `n`, in flat-index order.
    pub fn neighbors(&self, n: Neuron) -> impl Iterator<Item = Neuron> + '_ {
        let layout = self.layout;
        bits::ones(self.row(n)).map(move |b| layout.neuron_at_bit(b))
    }

    /// True when the given neurons (one per distinct cluster) are pairwise connected.
    pub fn is_clique(&self, neurons: &[Neuron]) -> Result<bool> {
        let mut seen = vec![false; self.config.clusters];
        for n in neurons {
            if n.cluster >= self.config.clusters {
                return Err(GbnnError::ClusterOutOfRange {
                    cluster: n.cluster,
                    clusters: self.config.clusters,
                });
            }
            if n.symbol >= self.config.neurons {
                return Err(GbnnError::SymbolOutOfRange {
                    cluster: n.cluster,
                    symbol: n.symbol,
                    neurons: self.config.neurons,
                });
            }
            if std::mem::replace(&mut seen[n.cluster], true) {
                return Err(GbnnError::DuplicateCluster(n.cluster));
            }
        }
        Ok(neurons
            .iter()
            .enumerate()
            .all(|(i, &a)| neurons[i + 1..].iter().all(|&b| self.is_connected(a, b))))
    }

    /// Convenience: whether the full clique of `message` is present.
    pub fn contains(&self, message: &Message) -> bool {
        let neurons: Vec<_> = message.neurons().collect();
        self.is_clique(&neurons).unwrap_or(false)
    }
}

/// `count` messages with symbols drawn independently and uniformly, reproducible from `seed`.
pub fn generate_messages(config: &NetworkConfig, count: usize, seed: u64) -> Vec<Message> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            Message::from_symbols_unchecked(
                (0..config.clusters)
                    .map(|_| rng.gen_range(0..config.neurons))
                    .collect(),
            )
        })
        .collect()
}

/// Turns the listed clusters of `message` into erasures.
pub fn erase(message: &Message, clusters: &[usize]) -> Result<Probe> {
    let c = message.len();
    let mut entries: Vec<Symbol> = message
        .symbols()
        .iter()
        .map(|&s| Symbol::Known(s))
        .collect();
    for &cl in clusters {
        if cl >= c {
            return Err(GbnnError::ClusterOutOfRange {
                cluster: cl,
                clusters: c,
            });
        }
        entries[cl] = Symbol::Erased;
    }
    Ok(Probe(entries))
}
