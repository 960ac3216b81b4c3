//! Tie-breaking heuristics for ambiguous sum-of-max fixed points and the
//! retrieval loop that alternates them with further iterations.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use web_time::Instant;

use crate::dynamics::{individual_signal_count, run, run_from, ActivationState, Rule, RunStatus};
use crate::error::{GbnnError, Result};
use crate::network::{Message, Network, Neuron, Probe, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeuristicKind {
    /// Most-active cluster, keep its most-signalled neuron.
    Mm,
    /// Fewest-active cluster, keep its most-signalled neuron.
    Mf,
    /// Most-active cluster, drop its least-signalled neuron.
    Fm,
    /// Fewest-active cluster, drop its least-signalled neuron.
    Ff,
    /// Drop the candidate with the fewest edges in the network.
    Fe,
    /// Drop the candidate with the fewest active neighbours.
    Fs,
    /// Pick one active neuron per erased cluster uniformly at random.
    Random,
}

impl HeuristicKind {
    pub const ALL: [HeuristicKind; 7] = [
        Self::Random,
        Self::Mm,
        Self::Mf,
        Self::Fm,
        Self::Ff,
        Self::Fe,
        Self::Fs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Mm => "mm",
            Self::Mf => "mf",
            Self::Fm => "fm",
            Self::Ff => "ff",
            Self::Fe => "fe",
            Self::Fs => "fs",
            Self::Random => "random",
        }
    }
}

impl fmt::Display for HeuristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HeuristicKind {
    type Err = GbnnError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GbnnError::UnknownMethod(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterSelect {
    MostActive,
    FewestActive,
}

/// Erased clusters with at least two active neurons.
fn eligible_clusters<'a>(
    state: &'a ActivationState,
    probe: &'a Probe,
) -> impl Iterator<Item = (usize, usize)> + 'a {
    probe
        .erased_clusters()
        .map(|c| (c, state.cluster_active_count(c)))
        .filter(|&(_, k)| k >= 2)
}

/// The erased cluster (with two or more active neurons) holding the most or
/// fewest active neurons; ties go to the lowest index.
pub fn select_cluster(
    state: &ActivationState,
    probe: &Probe,
    mode: ClusterSelect,
) -> Result<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (c, k) in eligible_clusters(state, probe) {
        let better = match (best, mode) {
            (None, _) => true,
            (Some((_, b)), ClusterSelect::MostActive) => k > b,
            (Some((_, b)), ClusterSelect::FewestActive) => k < b,
        };
        if better {
            best = Some((c, k));
        }
    }
    best.map(|(c, _)| c).ok_or(GbnnError::NoEligibleCluster)
}

/// First minimum (or maximum) of `key` over `items`.
fn pick<T: Copy>(items: impl Iterator<Item = T>, key: impl Fn(T) -> usize, max: bool) -> Option<T> {
    let mut best: Option<(T, usize)> = None;
    for it in items {
        let k = key(it);
        let better = match best {
            None => true,
            Some((_, b)) if max => k > b,
            Some((_, b)) => k < b,
        };
        if better {
            best = Some((it, k));
        }
    }
    best.map(|(t, _)| t)
}

/// One heuristic step on a fixed point. `Random` is not a step heuristic.
pub fn apply_heuristic(
    net: &Network,
    state: &ActivationState,
    probe: &Probe,
    kind: HeuristicKind,
) -> Result<ActivationState> {
    let mut next = state.clone();
    let signals = |n: Neuron| individual_signal_count(net, state, n);
    match kind {
        HeuristicKind::Mm | HeuristicKind::Mf | HeuristicKind::Fm | HeuristicKind::Ff => {
            let mode = match kind {
                HeuristicKind::Mm | HeuristicKind::Fm => ClusterSelect::MostActive,
                _ => ClusterSelect::FewestActive,
            };
            let c = select_cluster(state, probe, mode)?;
            let candidates = state.active_in(c).map(|s| Neuron::new(c, s));
            if matches!(kind, HeuristicKind::Mm | HeuristicKind::Mf) {
                let keep = pick(candidates, signals, true).expect("eligible cluster is nonempty");
                for s in state.active_in(c).filter(|&s| s != keep.symbol) {
                    next.set_active(Neuron::new(c, s), false);
                }
            } else {
                let drop = pick(candidates, signals, false).expect("eligible cluster is nonempty");
                next.set_active(drop, false);
            }
        }
        HeuristicKind::Fe | HeuristicKind::Fs => {
            // Clusters are visited in index order and neurons in symbol order,
            // so the first minimum is the lowest flat index.
            let candidates: Vec<Neuron> = eligible_clusters(state, probe)
                .flat_map(|(c, _)| state.active_in(c).map(move |s| Neuron::new(c, s)))
                .collect();
            let drop = if kind == HeuristicKind::Fe {
                pick(candidates.into_iter(), |n| net.degree(n), false)
            } else {
                pick(candidates.into_iter(), signals, false)
            }
            .ok_or(GbnnError::NoEligibleCluster)?;
            next.set_active(drop, false);
        }
        HeuristicKind::Random => return Err(GbnnError::NotAnEscapeHeuristic),
    }
    Ok(next)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    /// The decoded message is not a clique of the network.
    NotAClique(Message),
    /// Some cluster lost every active neuron with nothing to rewind to.
    AllDeactivated,
    /// Ambiguity remains but no heuristic step applies.
    Stuck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Success(Message),
    Failure(FailureReason),
}

impl Outcome {
    /// The decoded message, clique or not.
    pub fn message(&self) -> Option<&Message> {
        match self {
            Outcome::Success(m) | Outcome::Failure(FailureReason::NotAClique(m)) => Some(m),
            Outcome::Failure(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RetrievalResult {
    pub outcome: Outcome,
    /// Sum-of-max iterations over every run, including the first.
    pub iterations: usize,
    pub heuristic_applications: usize,
    /// The loop hit an empty cluster and fell back to random selection.
    pub rewound: bool,
    /// Time spent after the first convergence.
    pub post_time: Duration,
}

fn iterations_of(status: RunStatus, cap: usize) -> usize {
    match status {
        RunStatus::Converged { iterations } => iterations,
        RunStatus::MaxItersReached => cap,
        RunStatus::Oscillating { .. } | RunStatus::AllDeactivated => 0,
    }
}

/// One uniformly chosen active neuron per erased cluster; known clusters
/// keep the probe's symbol.
pub fn random_selection(
    state: &ActivationState,
    probe: &Probe,
    rng: &mut impl Rng,
) -> Option<Message> {
    let symbols = (0..state.clusters())
        .map(|c| match probe.get(c) {
            Symbol::Known(s) => Some(s),
            Symbol::Erased => {
                let active: Vec<usize> = state.active_in(c).collect();
                (!active.is_empty()).then(|| active[rng.gen_range(0..active.len())])
            }
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Message::from_symbols_unchecked(symbols))
}

fn judge(net: &Network, message: Message) -> Outcome {
    let neurons: Vec<Neuron> = message.neurons().collect();
    if net.is_clique(&neurons).unwrap_or(false) {
        Outcome::Success(message)
    } else {
        Outcome::Failure(FailureReason::NotAClique(message))
    }
}

/// Sum-of-max retrieval followed by `kind` until the state is unambiguous.
pub fn retrieve(
    net: &Network,
    probe: &Probe,
    kind: HeuristicKind,
    seed: u64,
    max_iters: usize,
) -> RetrievalResult {
    let first = run(net, probe, Rule::SumOfMax, max_iters);
    let iterations = iterations_of(first.status, max_iters);
    if first.status == RunStatus::AllDeactivated {
        return RetrievalResult {
            outcome: Outcome::Failure(FailureReason::AllDeactivated),
            iterations,
            heuristic_applications: 0,
            rewound: false,
            post_time: Duration::ZERO,
        };
    }
    let mut result = post_process(net, probe, first.state, kind, seed, max_iters);
    result.iterations += iterations;
    result
}

/// The heuristic loop starting from a converged sum-of-max state. Only the
/// iterations run here are counted.
pub fn post_process(
    net: &Network,
    probe: &Probe,
    converged: ActivationState,
    kind: HeuristicKind,
    seed: u64,
    max_iters: usize,
) -> RetrievalResult {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut iterations = 0;
    let mut applications = 0;
    let mut rewound = false;
    let mut state = converged;

    let outcome = if kind == HeuristicKind::Random {
        match random_selection(&state, probe, &mut rng) {
            Some(m) => judge(net, m),
            None => Outcome::Failure(FailureReason::AllDeactivated),
        }
    } else {
        loop {
            if let Some(m) = state.single_active_message() {
                break judge(net, m);
            }
            let recorded = state.clone();
            let Ok(next) = apply_heuristic(net, &state, probe, kind) else {
                break Outcome::Failure(FailureReason::Stuck);
            };
            applications += 1;
            let r = run_from(net, probe, Rule::SumOfMax, next, max_iters);
            iterations += iterations_of(r.status, max_iters);
            if r.status == RunStatus::AllDeactivated {
                rewound = true;
                break match random_selection(&recorded, probe, &mut rng) {
                    Some(m) => judge(net, m),
                    None => Outcome::Failure(FailureReason::AllDeactivated),
                };
            }
            state = r.state;
        }
    };

    RetrievalResult {
        outcome,
        iterations,
        heuristic_applications: applications,
        rewound,
        post_time: t0.elapsed(),
    }
}
