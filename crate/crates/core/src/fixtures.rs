//! Small hand-wired networks that exhibit the characteristic behaviours of
//! the two activation rules and of the escape heuristics. Used by the tests
//! and by the browser demo.

use crate::clique::Graph;
use crate::dynamics::ActivationState;
use crate::network::{Network, NetworkConfig, Neuron, Probe, Symbol};

/// Two candidates in cluster 2 with two signals each: `l1` gets both from
/// cluster 0 (`a`, `b`), `l2` gets one from cluster 0 (`a`) and one from
/// cluster 1 (`c`).
#[derive(Debug, Clone, Copy)]
pub struct SignalTrap {
    pub a: Neuron,
    pub b: Neuron,
    pub c: Neuron,
    pub l1: Neuron,
    pub l2: Neuron,
}

pub fn sum_of_sum_trap() -> (Network, SignalTrap) {
    let config = NetworkConfig::new(3, 4).unwrap();
    let mut net = Network::new(config);
    let f = SignalTrap {
        a: Neuron::new(0, 0),
        b: Neuron::new(0, 1),
        c: Neuron::new(1, 0),
        l1: Neuron::new(2, 0),
        l2: Neuron::new(2, 1),
    };
    net.connect(f.l1, f.a);
    net.connect(f.l1, f.b);
    net.connect(f.l2, f.a);
    net.connect(f.l2, f.c);
    (net, f)
}

/// Three erased clusters with two active neurons each; every one of the six
/// has support from both other clusters but only `x0 x1 x2` is a triangle.
/// `l1 = x0` has three individual signals inside the six, `l2 = y0` has two.
///
/// With `support`, two extra known clusters (3 and 4) are wired to all six
/// neurons and to each other, as the rest of a larger network would be.
#[derive(Debug, Clone)]
pub struct BogusTriangle {
    pub x: [Neuron; 3],
    pub y: [Neuron; 3],
    pub l1: Neuron,
    pub l2: Neuron,
    pub known: Vec<Neuron>,
}

impl BogusTriangle {
    pub fn state(&self, config: &NetworkConfig) -> ActivationState {
        ActivationState::from_neurons(
            config,
            self.x.iter().chain(&self.y).chain(&self.known).copied(),
        )
    }

    pub fn probe(&self, config: &NetworkConfig) -> Probe {
        let mut entries = vec![Symbol::Erased; config.clusters()];
        for n in &self.known {
            entries[n.cluster] = Symbol::Known(n.symbol);
        }
        Probe::new(entries, config).unwrap()
    }

    /// The neurons of the only full clique.
    pub fn triangle_with_support(&self, support: bool) -> Vec<Neuron> {
        let mut v = self.x.to_vec();
        if support {
            v.extend(&self.known);
        }
        v
    }
}

pub fn bogus_triangle(support: bool) -> (Network, BogusTriangle) {
    let clusters = if support { 5 } else { 3 };
    let config = NetworkConfig::new(clusters, 4).unwrap();
    let mut net = Network::new(config);
    let x = [Neuron::new(0, 0), Neuron::new(1, 0), Neuron::new(2, 0)];
    let y = [Neuron::new(0, 1), Neuron::new(1, 1), Neuron::new(2, 1)];
    net.connect(x[0], x[1]);
    net.connect(x[0], x[2]);
    net.connect(x[1], x[2]);
    net.connect(y[0], y[1]);
    net.connect(y[1], y[2]);
    net.connect(y[2], x[0]);
    net.connect(y[0], x[2]);
    let known = if support {
        vec![Neuron::new(3, 0), Neuron::new(4, 0)]
    } else {
        Vec::new()
    };
    for &k in &known {
        for &n in x.iter().chain(&y) {
            net.connect(k, n);
        }
    }
    if support {
        net.connect(known[0], known[1]);
    }
    let f = BogusTriangle {
        x,
        y,
        l1: x[0],
        l2: y[0],
        known,
    };
    (net, f)
}

/// A fixed point where eliminating the fewest-signal neuron of the
/// fewest-active cluster removes `l1`, a member of the only triangle
/// `l1 x1 x2`, because the decoy `l2` collects more individual signals.
#[derive(Debug, Clone)]
pub struct DecoyCluster {
    pub l1: Neuron,
    pub l2: Neuron,
    pub triangle: [Neuron; 3],
    pub active: Vec<Neuron>,
}

impl DecoyCluster {
    pub fn state(&self, config: &NetworkConfig) -> ActivationState {
        ActivationState::from_neurons(config, self.active.iter().copied())
    }

    pub fn probe(&self, config: &NetworkConfig) -> Probe {
        Probe::new(vec![Symbol::Erased; 3], config).unwrap()
    }
}

pub fn decoy_cluster() -> (Network, DecoyCluster) {
    let config = NetworkConfig::new(3, 4).unwrap();
    let mut net = Network::new(config);
    let n = Neuron::new;
    let (x0, y0) = (n(0, 0), n(0, 1));
    let (x1, y1, z1) = (n(1, 0), n(1, 1), n(1, 2));
    let (x2, y2, z2) = (n(2, 0), n(2, 1), n(2, 2));
    for (a, b) in [
        (x0, x1),
        (x0, x2),
        (x1, x2),
        (y0, y1),
        (y0, z1),
        (y0, y2),
        (y0, z2),
        (y1, x2),
        (z1, x2),
        (y2, x1),
        (z2, x1),
    ] {
        net.connect(a, b);
    }
    let f = DecoyCluster {
        l1: x0,
        l2: y0,
        triangle: [x0, x1, x2],
        active: vec![x0, y0, x1, y1, z1, x2, y2, z2],
    };
    (net, f)
}

/// Five nodes with maximal cliques {0,1,4} and {1,2,3,4}; the latter is maximum.
pub fn maximal_vs_maximum() -> Graph {
    Graph::from_edges(
        5,
        [
            (0, 1),
            (0, 4),
            (1, 4),
            (1, 2),
            (1, 3),
            (2, 3),
            (2, 4),
            (3, 4),
        ],
    )
}
