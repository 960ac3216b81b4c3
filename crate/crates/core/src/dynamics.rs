//! Retrieval dynamics: the sum-of-sum and sum-of-max activation rules,
//! iteration to a fixed point, and bogus-fixed-point detection.
//!
//! Known clusters of the probe are clamped to their probe neuron under both
//! rules. Erased clusters start all-inactive under sum-of-sum and all-active
//! under sum-of-max.

use std::collections::HashMap;
use std::fmt;

use crate::bits;
use crate::clique::{clique_union_partite, reduce_graph};
use crate::network::{Layout, Message, Network, NetworkConfig, Neuron, Probe, Symbol};

pub const DEFAULT_MAX_ITERS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    SumOfSum,
    SumOfMax,
}

/// Binary activation vector over all neurons plus the iteration that produced it.
///
/// Equality compares the activation pattern only.
#[derive(Clone)]
pub struct ActivationState {
    layout: Layout,
    bits: Vec<u64>,
    iteration: usize,
}

impl PartialEq for ActivationState {
    fn eq(&self, other: &Self) -> bool {
        self.layout == other.layout && self.bits == other.bits
    }
}

impl Eq for ActivationState {}

impl fmt::Debug for ActivationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ActivationState(t={})", self.iteration)?;
        f.write_str(&self.to_text_rows())
    }
}

impl ActivationState {
    pub fn empty(config: &NetworkConfig) -> Self {
        let layout = config.layout();
        Self {
            layout,
            bits: vec![0; layout.row_words()],
            iteration: 0,
        }
    }

    pub fn from_neurons(config: &NetworkConfig, neurons: impl IntoIterator<Item = Neuron>) -> Self {
        let mut s = Self::empty(config);
        for n in neurons {
            s.set_active(n, true);
        }
        s
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn clusters(&self) -> usize {
        self.layout.clusters
    }

    pub fn neurons_per_cluster(&self) -> usize {
        self.layout.neurons
    }

    pub fn is_active(&self, n: Neuron) -> bool {
        bits::get(&self.bits, self.layout.bit(n))
    }

    pub fn set_active(&mut self, n: Neuron, active: bool) {
        let b = self.layout.bit(n);
        if active {
            bits::set(&mut self.bits, b);
        } else {
            bits::clear(&mut self.bits, b);
        }
    }

    pub fn active_count(&self) -> usize {
        bits::count(&self.bits)
    }

    pub fn cluster_active_count(&self, cluster: usize) -> usize {
        bits::count(self.block(cluster))
    }

    /// Active symbols of `cluster`, ascending.
    pub fn active_in(&self, cluster: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.block(cluster))
    }

    pub fn active_neurons(&self) -> impl Iterator<Item = Neuron> + '_ {
        let layout = self.layout;
        bits::ones(&self.bits).map(move |b| layout.neuron_at_bit(b))
    }

    /// Whether some cluster has no active neuron.
    pub fn has_empty_cluster(&self) -> bool {
        (0..self.layout.clusters).any(|c| bits::is_empty(self.block(c)))
    }

    /// Pointwise `self <= other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// The decoded message when every cluster has exactly one active neuron.
    pub fn single_active_message(&self) -> Option<Message> {
        (0..self.layout.clusters)
            .map(|c| {
                let mut it = self.active_in(c);
                match (it.next(), it.next()) {
                    (Some(s), None) => Some(s),
                    _ => None,
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(Message::from_symbols_unchecked)
    }

    /// Activation in flat-index order (`c * L + l`).
    pub fn to_flat(&self) -> Vec<bool> {
        (0..self.layout.clusters)
            .flat_map(|c| (0..self.layout.neurons).map(move |l| Neuron::new(c, l)))
            .map(|n| self.is_active(n))
            .collect()
    }

    /// One line of `0`/`1` characters per cluster.
    pub fn to_text_rows(&self) -> String {
        let mut out = String::with_capacity(self.layout.clusters * (self.layout.neurons + 1));
        for c in 0..self.layout.clusters {
            for l in 0..self.layout.neurons {
                out.push(if self.is_active(Neuron::new(c, l)) {
                    '1'
                } else {
                    '0'
                });
            }
            out.push('\n');
        }
        out
    }

    #[inline]
    pub(crate) fn words(&self) -> &[u64] {
        &self.bits
    }

    #[inline]
    pub(crate) fn block(&self, cluster: usize) -> &[u64] {
        &self.bits[self.layout.block(cluster)]
    }

    fn clear_cluster(&mut self, cluster: usize) {
        let r = self.layout.block(cluster);
        self.bits[r].fill(0);
    }

    fn fill_cluster(&mut self, cluster: usize) {
        for l in 0..self.layout.neurons {
            self.set_active(Neuron::new(cluster, l), true);
        }
    }

    fn clamp(&mut self, probe: &Probe) {
        for (c, e) in probe.entries().iter().enumerate() {
            if let Symbol::Known(s) = *e {
                self.clear_cluster(c);
                self.set_active(Neuron::new(c, s), true);
            }
        }
    }

    fn next(&self) -> Self {
        Self {
            layout: self.layout,
            bits: vec![0; self.bits.len()],
            iteration: self.iteration + 1,
        }
    }
}

/// Initial activation for `rule`: probe neurons on, erased clusters empty
/// (sum-of-sum) or full (sum-of-max).
pub fn init_state(config: &NetworkConfig, probe: &Probe, rule: Rule) -> ActivationState {
    let mut s = ActivationState::empty(config);
    for (c, e) in probe.entries().iter().enumerate() {
        match (*e, rule) {
            (Symbol::Known(l), _) => s.set_active(Neuron::new(c, l), true),
            (Symbol::Erased, Rule::SumOfMax) => s.fill_cluster(c),
            (Symbol::Erased, Rule::SumOfSum) => {}
        }
    }
    s
}

/// Per-neuron signal counts for one iteration, in flat-index order.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalField(pub Vec<f64>);

impl SignalField {
    pub fn get(&self, n: Neuron, config: &NetworkConfig) -> f64 {
        self.0[n.flat_index(config)]
    }

    /// Largest signal within `cluster`.
    pub fn cluster_max(&self, cluster: usize, config: &NetworkConfig) -> f64 {
        let l = config.neurons_per_cluster();
        self.0[cluster * l..(cluster + 1) * l]
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Number of foreign clusters holding at least one active neighbour of `n`.
fn cluster_support(net: &Network, state: &ActivationState, n: Neuron) -> usize {
    let layout = net.layout();
    let row = net.row(n);
    (0..layout.clusters)
        .filter(|&c| c != n.cluster)
        .filter(|&c| {
            let r = layout.block(c);
            bits::intersects(&row[r.clone()], &state.bits[r])
        })
        .count()
}

/// Whether every foreign cluster holds an active neighbour of `n`.
fn fully_supported(net: &Network, state: &ActivationState, n: Neuron) -> bool {
    let layout = net.layout();
    let row = net.row(n);
    (0..layout.clusters).filter(|&c| c != n.cluster).all(|c| {
        let r = layout.block(c);
        bits::intersects(&row[r.clone()], &state.bits[r])
    })
}

/// Full signal field under `rule` (the `s` of the activation equations).
pub fn signal_field(net: &Network, state: &ActivationState, rule: Rule) -> SignalField {
    let gamma = net.config().gamma();
    SignalField(
        net.neurons()
            .map(|n| {
                let own = if state.is_active(n) { gamma } else { 0.0 };
                let incoming = match rule {
                    Rule::SumOfSum => individual_signal_count(net, state, n),
                    Rule::SumOfMax => cluster_support(net, state, n),
                };
                own + incoming as f64
            })
            .collect(),
    )
}

/// Active neighbours of `neuron`, each counted once.
pub fn individual_signal_count(net: &Network, state: &ActivationState, neuron: Neuron) -> usize {
    bits::and_count(net.row(neuron), &state.bits)
}

/// One sum-of-sum iteration: every edge from an active neuron is a signal and
/// each erased cluster keeps the neurons reaching its maximum.
pub fn sos_step(net: &Network, state: &ActivationState, probe: &Probe) -> ActivationState {
    let config = net.config();
    let gamma = config.gamma();
    let mut next = state.next();
    let mut scores = vec![0.0f64; config.neurons_per_cluster()];
    for c in 0..config.clusters() {
        if let Symbol::Known(s) = probe.get(c) {
            next.set_active(Neuron::new(c, s), true);
            continue;
        }
        for (l, score) in scores.iter_mut().enumerate() {
            let n = Neuron::new(c, l);
            let own = if state.is_active(n) { gamma } else { 0.0 };
            *score = own + individual_signal_count(net, state, n) as f64;
        }
        let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for (l, &score) in scores.iter().enumerate() {
            if score == max {
                next.set_active(Neuron::new(c, l), true);
            }
        }
    }
    next
}

/// One sum-of-max iteration: a neuron stays (or becomes) active iff its score
/// reaches `gamma + C - 1`, each foreign cluster contributing at most one signal.
pub fn som_step(net: &Network, state: &ActivationState, probe: &Probe) -> ActivationState {
    let config = net.config();
    // s = gamma * v + support reaches gamma + C - 1 exactly when support is
    // full and either v = 1 or gamma = 0; no floating-point comparison needed.
    let inactive_can_fire = config.gamma() == 0.0;
    let mut next = state.next();
    for c in 0..config.clusters() {
        if let Symbol::Known(s) = probe.get(c) {
            next.set_active(Neuron::new(c, s), true);
            continue;
        }
        if inactive_can_fire {
            for l in 0..config.neurons_per_cluster() {
                let n = Neuron::new(c, l);
                if fully_supported(net, state, n) {
                    next.set_active(n, true);
                }
            }
        } else {
            for l in state.active_in(c) {
                let n = Neuron::new(c, l);
                if fully_supported(net, state, n) {
                    next.set_active(n, true);
                }
            }
        }
    }
    next
}

pub fn step(net: &Network, state: &ActivationState, probe: &Probe, rule: Rule) -> ActivationState {
    match rule {
        Rule::SumOfSum => sos_step(net, state, probe),
        Rule::SumOfMax => som_step(net, state, probe),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    /// `v(t+1) = v(t)` after this many steps.
    Converged {
        iterations: usize,
    },
    /// A state seen earlier recurred after `period >= 2` steps.
    Oscillating {
        period: usize,
    },
    MaxItersReached,
    /// Some cluster lost every active neuron.
    AllDeactivated,
}

#[derive(Debug, Clone)]
pub struct Run {
    pub state: ActivationState,
    pub status: RunStatus,
}

/// Iterates `rule` from its initial state for `probe`.
pub fn run(net: &Network, probe: &Probe, rule: Rule, max_iters: usize) -> Run {
    let init = init_state(net.config(), probe, rule);
    run_from(net, probe, rule, init, max_iters)
}

/// Iterates `rule` from an arbitrary starting state (clamped to `probe`).
pub fn run_from(
    net: &Network,
    probe: &Probe,
    rule: Rule,
    mut state: ActivationState,
    max_iters: usize,
) -> Run {
    state.clamp(probe);
    let start = state.iteration;
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    seen.insert(state.bits.clone(), start);
    for _ in 0..max_iters.max(1) {
        let next = step(net, &state, probe, rule);
        if next.has_empty_cluster() {
            return Run {
                state: next,
                status: RunStatus::AllDeactivated,
            };
        }
        if next.bits == state.bits {
            return Run {
                status: RunStatus::Converged {
                    iterations: next.iteration - start,
                },
                state: next,
            };
        }
        if let Some(&t0) = seen.get(&next.bits) {
            return Run {
                status: RunStatus::Oscillating {
                    period: next.iteration - t0,
                },
                state: next,
            };
        }
        seen.insert(next.bits.clone(), next.iteration);
        state = next;
    }
    Run {
        state,
        status: RunStatus::MaxItersReached,
    }
}

#[derive(Debug, Clone)]
pub struct BogusCheck {
    pub is_bogus: bool,
    /// Union of every size-`C` clique inside the converged active set.
    pub clique_union: ActivationState,
}

/// Compares a sum-of-max fixed point with the union of the full cliques it contains.
pub fn detect_bogus(net: &Network, state: &ActivationState, probe: &Probe) -> BogusCheck {
    let mut union = ActivationState::empty(net.config());
    union.iteration = state.iteration;
    if let Ok(reduced) = reduce_graph(net, state, probe) {
        let fixed: Vec<Neuron> = reduced.fixed().to_vec();
        if net.is_clique(&fixed).unwrap_or(false) {
            let members = clique_union_partite(&reduced);
            if reduced.cluster_count() == 0 || !members.is_empty() {
                for n in fixed {
                    union.set_active(n, true);
                }
                for node in members {
                    union.set_active(reduced.neuron(node), true);
                }
            }
        }
    }
    BogusCheck {
        is_bogus: union != *state,
        clique_union: union,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bogus_triangle, sum_of_sum_trap};
    use crate::network::{erase, generate_messages};

    fn cfg(c: usize, l: usize) -> NetworkConfig {
        NetworkConfig::new(c, l).unwrap()
    }

    #[test]
    fn init_for_both_rules() {
        let config = cfg(4, 16);
        let m = Message::new(vec![9, 4, 3, 10], &config).unwrap();
        let p = erase(&m, &[1, 2]).unwrap();
        assert_eq!(init_state(&config, &p, Rule::SumOfMax).active_count(), 34);
        let sos = init_state(&config, &p, Rule::SumOfSum);
        assert_eq!(sos.active_count(), 2);
        assert!(sos.is_active(Neuron::new(0, 9)) && sos.is_active(Neuron::new(3, 10)));

        let full = erase(&m, &[]).unwrap();
        for rule in [Rule::SumOfSum, Rule::SumOfMax] {
            let s = init_state(&config, &full, rule);
            assert_eq!(s.active_count(), 4);
            assert_eq!(s.single_active_message(), Some(m.clone()));
        }
    }

    #[test]
    fn sos_isolated_neuron_keeps_itself() {
        let config = cfg(2, 4);
        let net = Network::new(config);
        let probe = Probe::new(vec![Symbol::Erased, Symbol::Erased], &config).unwrap();
        let state = ActivationState::from_neurons(&config, [Neuron::new(0, 2), Neuron::new(1, 0)]);
        let next = sos_step(&net, &state, &probe);
        assert_eq!(next.active_in(0).collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn same_cluster_signals_fool_sum_of_sum_only() {
        let (net, f) = sum_of_sum_trap();
        let config = *net.config();
        let probe = Probe::new(vec![Symbol::Erased; 3], &config).unwrap();

        // Sum-of-sum: cluster 2 starts silent, both candidates receive two signals.
        let state = ActivationState::from_neurons(&config, [f.a, f.b, f.c]);
        let next = sos_step(&net, &state, &probe);
        assert!(next.is_active(f.l1) && next.is_active(f.l2));
        assert_eq!(next.cluster_active_count(2), 2);

        // Sum-of-max: cluster 2 starts full; only l2 has support from two clusters.
        let mut state = ActivationState::from_neurons(&config, [f.a, f.b, f.c]);
        for l in 0..config.neurons_per_cluster() {
            state.set_active(Neuron::new(2, l), true);
        }
        let next = som_step(&net, &state, &probe);
        assert!(next.is_active(f.l2));
        assert!(!next.is_active(f.l1));
    }

    #[test]
    fn sos_two_cluster_hand_computed() {
        // Stored {(0,0),(1,1)}, probe (0, ?): neuron (1,0) gets 1 signal, (1,1) gets 0.
        let config = cfg(2, 2);
        let mut net = Network::new(config);
        net.store(&Message::new(vec![0, 0], &config).unwrap())
            .unwrap();
        net.store(&Message::new(vec![1, 1], &config).unwrap())
            .unwrap();
        let probe = Probe::new(vec![Symbol::Known(0), Symbol::Erased], &config).unwrap();
        let s0 = init_state(&config, &probe, Rule::SumOfSum);
        let field = signal_field(&net, &s0, Rule::SumOfSum);
        assert_eq!(field.get(Neuron::new(1, 0), &config), 1.0);
        assert_eq!(field.get(Neuron::new(1, 1), &config), 0.0);
        let s1 = sos_step(&net, &s0, &probe);
        assert_eq!(s1.active_in(1).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn som_full_clique_meets_threshold() {
        let config = cfg(5, 8);
        let mut net = Network::new(config);
        let m = Message::new(vec![1, 2, 3, 4, 5], &config).unwrap();
        net.store(&m).unwrap();
        let state = ActivationState::from_neurons(&config, m.neurons());
        let field = signal_field(&net, &state, Rule::SumOfMax);
        for n in m.neurons() {
            assert_eq!(field.get(n, &config), 1.0 + 4.0);
        }
        let probe = erase(&m, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(som_step(&net, &state, &probe), state);
    }

    #[test]
    fn som_drops_neuron_missing_a_cluster() {
        let config = cfg(3, 4);
        let mut net = Network::new(config);
        net.store(&Message::new(vec![0, 0, 0], &config).unwrap())
            .unwrap();
        // (0,1) only connects to cluster 1.
        net.connect(Neuron::new(0, 1), Neuron::new(1, 0));
        let probe = Probe::new(vec![Symbol::Erased; 3], &config).unwrap();
        let state = ActivationState::from_neurons(
            &config,
            [
                Neuron::new(0, 0),
                Neuron::new(0, 1),
                Neuron::new(1, 0),
                Neuron::new(2, 0),
            ],
        );
        let next = som_step(&net, &state, &probe);
        assert!(!next.is_active(Neuron::new(0, 1)));
        assert!(next.is_active(Neuron::new(0, 0)));
    }

    #[test]
    fn gamma_zero_lets_supported_neurons_fire() {
        let config = NetworkConfig::with_gamma(3, 2, 0.0).unwrap();
        let mut net = Network::new(config);
        let m = Message::new(vec![1, 1, 1], &config).unwrap();
        net.store(&m).unwrap();
        let probe = Probe::new(
            vec![Symbol::Known(1), Symbol::Known(1), Symbol::Erased],
            &config,
        )
        .unwrap();
        let state = ActivationState::from_neurons(&config, [Neuron::new(0, 1), Neuron::new(1, 1)]);
        let next = som_step(&net, &state, &probe);
        assert!(next.is_active(Neuron::new(2, 1)));
        assert!(!next.is_active(Neuron::new(2, 0)));
    }

    #[test]
    fn full_probe_is_a_fixed_point_of_both_rules() {
        let config = cfg(6, 32);
        let mut net = Network::new(config);
        let msgs = generate_messages(&config, 60, 11);
        net.store_all(&msgs).unwrap();
        for m in &msgs[..10] {
            let probe = erase(m, &[]).unwrap();
            for rule in [Rule::SumOfSum, Rule::SumOfMax] {
                let r = run(&net, &probe, rule, DEFAULT_MAX_ITERS);
                match r.status {
                    RunStatus::Converged { iterations } => assert!(iterations <= 2),
                    other => panic!("{rule:?}: {other:?}"),
                }
                assert_eq!(r.state.single_active_message().as_ref(), Some(m));
            }
        }
    }

    #[test]
    fn all_erased_on_saturated_network_keeps_everything() {
        // Every inter-cluster edge present: the all-active state is a fixed point.
        let config = cfg(3, 3);
        let mut net = Network::new(config);
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    net.store(&Message::new(vec![a, b, c], &config).unwrap())
                        .unwrap();
                }
            }
        }
        let probe = Probe::new(vec![Symbol::Erased; 3], &config).unwrap();
        let r = run(&net, &probe, Rule::SumOfMax, DEFAULT_MAX_ITERS);
        assert_eq!(r.status, RunStatus::Converged { iterations: 1 });
        assert_eq!(r.state.active_count(), 9);
    }

    #[test]
    fn sos_oscillation_is_reported() {
        // Two clusters, each neuron wired to the "other" symbol: the
        // single-active state flips between (0,1) and (1,0) without gamma.
        let config = NetworkConfig::with_gamma(2, 2, 0.0).unwrap();
        let mut net = Network::new(config);
        net.connect(Neuron::new(0, 0), Neuron::new(1, 1));
        net.connect(Neuron::new(0, 1), Neuron::new(1, 0));
        let probe = Probe::new(vec![Symbol::Erased, Symbol::Erased], &config).unwrap();
        let start = ActivationState::from_neurons(&config, [Neuron::new(0, 0), Neuron::new(1, 0)]);
        let r = run_from(&net, &probe, Rule::SumOfSum, start, 50);
        assert_eq!(r.status, RunStatus::Oscillating { period: 2 });
    }

    #[test]
    fn max_iters_cap_is_reported() {
        let config = NetworkConfig::with_gamma(2, 2, 0.0).unwrap();
        let mut net = Network::new(config);
        net.connect(Neuron::new(0, 0), Neuron::new(1, 1));
        net.connect(Neuron::new(0, 1), Neuron::new(1, 0));
        let probe = Probe::new(vec![Symbol::Erased, Symbol::Erased], &config).unwrap();
        let start = ActivationState::from_neurons(&config, [Neuron::new(0, 0), Neuron::new(1, 0)]);
        let r = run_from(&net, &probe, Rule::SumOfSum, start, 1);
        assert_eq!(r.status, RunStatus::MaxItersReached);
    }

    #[test]
    fn all_deactivated_is_detected_early() {
        let config = cfg(3, 2);
        let mut net = Network::new(config);
        net.store(&Message::new(vec![0, 0, 0], &config).unwrap())
            .unwrap();
        // Probe neuron (0,1) has no edges: nothing in cluster 1 or 2 can keep support.
        let probe = Probe::new(
            vec![Symbol::Known(1), Symbol::Erased, Symbol::Erased],
            &config,
        )
        .unwrap();
        let r = run(&net, &probe, Rule::SumOfMax, DEFAULT_MAX_ITERS);
        assert_eq!(r.status, RunStatus::AllDeactivated);
        assert!(r.state.has_empty_cluster());
    }

    #[test]
    fn individual_signals_in_bogus_triangle() {
        let (net, f) = bogus_triangle(false);
        let state = f.state(net.config());
        assert_eq!(individual_signal_count(&net, &state, f.l1), 3);
        assert_eq!(individual_signal_count(&net, &state, f.l2), 2);
        let empty = Network::new(*net.config());
        assert_eq!(individual_signal_count(&empty, &state, f.l1), 0);
    }

    #[test]
    fn bogus_triangle_is_a_fixed_point_and_bogus() {
        for support in [false, true] {
            let (net, f) = bogus_triangle(support);
            let config = *net.config();
            let state = f.state(&config);
            let probe = f.probe(&config);
            assert_eq!(som_step(&net, &state, &probe), state);
            let check = detect_bogus(&net, &state, &probe);
            assert!(check.is_bogus);
            let expected = ActivationState::from_neurons(&config, f.triangle_with_support(support));
            assert_eq!(check.clique_union, expected);
            assert!(check.clique_union.is_subset_of(&state));
        }
    }

    #[test]
    fn clean_fixed_point_is_not_bogus() {
        let config = cfg(4, 16);
        let mut net = Network::new(config);
        let m = Message::new(vec![9, 4, 3, 10], &config).unwrap();
        net.store(&m).unwrap();
        let probe = erase(&m, &[1, 2]).unwrap();
        let r = run(&net, &probe, Rule::SumOfMax, DEFAULT_MAX_ITERS);
        let check = detect_bogus(&net, &r.state, &probe);
        assert!(!check.is_bogus);
        assert_eq!(check.clique_union, r.state);
    }

    #[test]
    fn state_without_full_clique_has_empty_union() {
        let config = cfg(3, 2);
        let mut net = Network::new(config);
        net.connect(Neuron::new(0, 0), Neuron::new(1, 0));
        net.connect(Neuron::new(1, 0), Neuron::new(2, 0));
        let probe = Probe::new(vec![Symbol::Erased; 3], &config).unwrap();
        let state = ActivationState::from_neurons(
            &config,
            [Neuron::new(0, 0), Neuron::new(1, 0), Neuron::new(2, 0)],
        );
        let check = detect_bogus(&net, &state, &probe);
        assert!(check.is_bogus);
        assert_eq!(check.clique_union.active_count(), 0);
    }

    #[test]
    fn neuron_in_active_clique_has_enough_signals() {
        let config = cfg(6, 16);
        let mut net = Network::new(config);
        let msgs = generate_messages(&config, 30, 5);
        net.store_all(&msgs).unwrap();
        let state = ActivationState::from_neurons(&config, msgs[0].neurons());
        for n in msgs[0].neurons() {
            assert!(individual_signal_count(&net, &state, n) >= 5);
        }
    }

    #[test]
    fn text_rows_one_line_per_cluster() {
        let config = cfg(2, 3);
        let s = ActivationState::from_neurons(&config, [Neuron::new(0, 1), Neuron::new(1, 2)]);
        assert_eq!(s.to_text_rows(), "010\n001\n");
        assert_eq!(s.to_flat(), vec![false, true, false, false, false, true]);
    }
}
