//! Seeded retrieval experiments and their CSV reports.

mod report;
mod sweep;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use web_time::Instant;

use crate::clique::{
    find_clique_partite, find_clique_unreduced, find_max_clique_cp, reduce_graph, SortOrder,
};
use crate::dynamics::{detect_bogus, run, ActivationState, Rule, RunStatus, DEFAULT_MAX_ITERS};
use crate::error::{GbnnError, Result};
use crate::heuristics::{post_process, HeuristicKind};
use crate::network::{erase, generate_messages, Message, Network, NetworkConfig, Neuron, Probe};

pub use report::{emit_report, read_report, MethodReport, ReportFormat};
pub use sweep::{bogus_sweep, emit_sweep, BogusPoint};

/// A decoding method applied to a converged sum-of-max state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Heuristic(HeuristicKind),
    /// General-graph branch and bound on the reduced graph plus fixed neurons.
    Cp,
    /// Partite search on the reduced graph.
    Partite(SortOrder),
    /// Partite search on the whole converged network, no reduction.
    PartiteUnreduced(SortOrder),
}

impl Method {
    pub const PARTITE: Method = Method::Partite(SortOrder::FLAT);

    /// Every method the `bench` subcommand accepts by default.
    pub fn standard() -> Vec<Method> {
        HeuristicKind::ALL
            .into_iter()
            .map(Method::Heuristic)
            .chain([Method::Cp, Method::PARTITE])
            .collect()
    }
}

fn order_suffix(order: SortOrder) -> Option<&'static str> {
    match order {
        SortOrder::FLAT => Some(""),
        SortOrder::DEEP => Some("-deep"),
        SortOrder::CANDIDATES_ONLY => Some("-candidates-only"),
        SortOrder::CLUSTERS_ONLY => Some("-clusters-only"),
        _ => None,
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (base, order) = match self {
            Method::Heuristic(k) => return f.write_str(k.name()),
            Method::Cp => return f.write_str("cp"),
            Method::Partite(o) => ("partite", o),
            Method::PartiteUnreduced(o) => ("partite-unreduced", o),
        };
        match order_suffix(*order) {
            Some(s) => write!(f, "{base}{s}"),
            None => write!(f, "{base}-{:?}-{:?}", order.candidates, order.clusters),
        }
    }
}

impl FromStr for Method {
    type Err = GbnnError;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(k) = s.parse::<HeuristicKind>() {
            return Ok(Method::Heuristic(k));
        }
        if s == "cp" {
            return Ok(Method::Cp);
        }
        let orders = [
            SortOrder::FLAT,
            SortOrder::DEEP,
            SortOrder::CANDIDATES_ONLY,
            SortOrder::CLUSTERS_ONLY,
        ];
        for o in orders {
            for m in [Method::Partite(o), Method::PartiteUnreduced(o)] {
                if m.to_string() == s {
                    return Ok(m);
                }
            }
        }
        Err(GbnnError::UnknownMethod(s.to_string()))
    }
}

/// What one method made of one probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub message: Option<Message>,
    pub post_time: Duration,
    pub recursive_calls: Option<u64>,
}

fn assemble(config: &NetworkConfig, neurons: impl IntoIterator<Item = Neuron>) -> Message {
    let mut symbols = vec![0; config.clusters()];
    for n in neurons {
        symbols[n.cluster] = n.symbol;
    }
    Message::new(symbols, config).expect("neurons come from the network")
}

/// Applies `method` to a converged state. `seed` drives random choices.
pub fn decode(
    net: &Network,
    probe: &Probe,
    converged: &ActivationState,
    method: Method,
    seed: u64,
    max_iters: usize,
) -> Decoded {
    let t0 = Instant::now();
    let (message, calls) = match method {
        Method::Heuristic(kind) => {
            let r = post_process(net, probe, converged.clone(), kind, seed, max_iters);
            return Decoded {
                message: r.outcome.message().cloned(),
                post_time: r.post_time,
                recursive_calls: None,
            };
        }
        Method::Cp => match reduce_graph(net, converged, probe) {
            Ok(g) => {
                let (q, stats) = find_max_clique_cp(&g.to_graph(true));
                let r = g.node_count();
                let msg = (q.len() == net.config().clusters()).then(|| {
                    assemble(
                        net.config(),
                        q.iter()
                            .map(|&v| if v < r { g.neuron(v) } else { g.fixed()[v - r] }),
                    )
                });
                (msg, Some(stats.recursive_calls))
            }
            Err(_) => (None, None),
        },
        Method::Partite(order) => match reduce_graph(net, converged, probe) {
            Ok(g) => {
                let (found, stats) = find_clique_partite(&g, order);
                let msg = found.map(|nodes| {
                    assemble(
                        net.config(),
                        g.fixed()
                            .iter()
                            .copied()
                            .chain(nodes.iter().map(|&v| g.neuron(v))),
                    )
                });
                (msg, Some(stats.recursive_calls))
            }
            Err(_) => (None, None),
        },
        Method::PartiteUnreduced(order) => {
            let (msg, stats) = find_clique_unreduced(net, converged, probe, order);
            (msg, Some(stats.recursive_calls))
        }
    };
    Decoded {
        message,
        post_time: t0.elapsed(),
        recursive_calls: calls,
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub config: NetworkConfig,
    pub stored: usize,
    pub erased: usize,
    pub probes: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    /// Erase a random set of clusters per probe instead of the last ones.
    pub random_placement: bool,
    pub max_iters: usize,
    pub threads: usize,
    /// Classify every converged state as bogus or not.
    pub detect_bogus: bool,
}

impl Scenario {
    pub fn new(
        name: impl Into<String>,
        config: NetworkConfig,
        stored: usize,
        erased: usize,
        probes: usize,
        seed: u64,
    ) -> Self {
        Self {
            name: name.into(),
            config,
            stored,
            erased,
            probes,
            seed,
            methods: Method::standard(),
            random_placement: false,
            max_iters: DEFAULT_MAX_ITERS,
            threads: 1,
            detect_bogus: true,
        }
    }

    pub fn with_methods(mut self, methods: Vec<Method>) -> Self {
        self.methods = methods;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.erased >= self.config.clusters() {
            return Err(GbnnError::InfeasibleScenario {
                erased: self.erased,
                clusters: self.config.clusters(),
            });
        }
        if self.stored == 0 && self.probes > 0 {
            return Err(GbnnError::InfeasibleScenario {
                erased: self.erased,
                clusters: self.config.clusters(),
            });
        }
        Ok(())
    }
}

/// A probe with its source message and the seed for its random choices.
#[derive(Debug, Clone)]
pub struct ProbeCase {
    pub source: Message,
    pub probe: Probe,
    pub seed: u64,
}

/// Messages are drawn from stream 0 of the seed; probes from stream 1.
pub(crate) fn probe_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

pub(crate) fn draw_probes(
    messages: &[Message],
    config: &NetworkConfig,
    erased: usize,
    count: usize,
    random_placement: bool,
    rng: &mut ChaCha8Rng,
) -> Vec<ProbeCase> {
    let c = config.clusters();
    let tail: Vec<usize> = (c - erased..c).collect();
    (0..count)
        .map(|_| {
            let source = messages[rng.gen_range(0..messages.len())].clone();
            let clusters = if random_placement {
                let mut v = index::sample(rng, c, erased).into_vec();
                v.sort_unstable();
                v
            } else {
                tail.clone()
            };
            let probe = erase(&source, &clusters).expect("clusters are in range");
            ProbeCase {
                source,
                probe,
                seed: rng.gen(),
            }
        })
        .collect()
}

/// The stored network and the probes of a scenario.
pub fn prepare(scenario: &Scenario) -> Result<(Network, Vec<ProbeCase>)> {
    scenario.validate()?;
    let messages = generate_messages(&scenario.config, scenario.stored, scenario.seed);
    let mut net = Network::new(scenario.config);
    net.store_all(&messages)?;
    let cases = draw_probes(
        &messages,
        &scenario.config,
        scenario.erased,
        scenario.probes,
        scenario.random_placement,
        &mut probe_rng(scenario.seed),
    );
    Ok((net, cases))
}

/// Everything measured on one probe.
#[derive(Debug, Clone)]
pub struct ProbeRecord {
    pub convergence_time: Duration,
    pub status: RunStatus,
    pub bogus: Option<bool>,
    /// One entry per method, in scenario order.
    pub decoded: Vec<Decoded>,
    pub success: Vec<bool>,
}

fn evaluate_probe(net: &Network, case: &ProbeCase, scenario: &Scenario) -> ProbeRecord {
    let t0 = Instant::now();
    let r = run(net, &case.probe, Rule::SumOfMax, scenario.max_iters);
    let convergence_time = t0.elapsed();
    let dead = r.status == RunStatus::AllDeactivated;
    let bogus =
        (scenario.detect_bogus && !dead).then(|| detect_bogus(net, &r.state, &case.probe).is_bogus);
    let decoded: Vec<Decoded> = scenario
        .methods
        .iter()
        .map(|&m| {
            if dead {
                Decoded {
                    message: None,
                    post_time: Duration::ZERO,
                    recursive_calls: None,
                }
            } else {
                decode(net, &case.probe, &r.state, m, case.seed, scenario.max_iters)
            }
        })
        .collect();
    let success = decoded
        .iter()
        .map(|d| d.message.as_ref() == Some(&case.source))
        .collect();
    ProbeRecord {
        convergence_time,
        status: r.status,
        bogus,
        decoded,
        success,
    }
}

/// Runs every method on every probe; records come back in probe order
/// whatever the thread count.
pub fn evaluate(net: &Network, cases: &[ProbeCase], scenario: &Scenario) -> Vec<ProbeRecord> {
    let threads = scenario.threads.clamp(1, cases.len().max(1));
    if threads == 1 {
        return cases
            .iter()
            .map(|c| evaluate_probe(net, c, scenario))
            .collect();
    }
    let chunk = cases.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|c| evaluate_probe(net, c, scenario))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("probe worker panicked"))
            .collect()
    })
}

fn median(mut v: Vec<u64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_unstable();
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[m] as f64
    } else {
        (v[m - 1] as f64 + v[m] as f64) / 2.0
    })
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Aggregates probe records into one report row per method.
pub fn summarize(scenario: &Scenario, records: &[ProbeRecord]) -> Vec<MethodReport> {
    let n = records.len();
    let mean = |total: f64| if n == 0 { 0.0 } else { total / n as f64 };
    let convergence = mean(records.iter().map(|r| ms(r.convergence_time)).sum());
    let bogus_rate = if scenario.detect_bogus {
        let classified: Vec<bool> = records.iter().filter_map(|r| r.bogus).collect();
        Some(if classified.is_empty() {
            0.0
        } else {
            classified.iter().filter(|&&b| b).count() as f64 / classified.len() as f64
        })
    } else {
        None
    };
    scenario
        .methods
        .iter()
        .enumerate()
        .map(|(i, m)| MethodReport {
            scenario: scenario.name.clone(),
            method: m.to_string(),
            stored: scenario.stored,
            erased: scenario.erased,
            probes: n,
            seed: scenario.seed,
            retrieval_rate: mean(records.iter().filter(|r| r.success[i]).count() as f64),
            mean_convergence_ms: convergence,
            mean_post_ms: mean(records.iter().map(|r| ms(r.decoded[i].post_time)).sum()),
            bogus_rate,
            median_recursive_calls: median(
                records
                    .iter()
                    .filter_map(|r| r.decoded[i].recursive_calls)
                    .collect(),
            ),
        })
        .collect()
}

pub fn run_scenario(scenario: &Scenario) -> Result<Vec<MethodReport>> {
    let (net, cases) = prepare(scenario)?;
    let records = evaluate(&net, &cases, scenario);
    Ok(summarize(scenario, &records))
}

/// Partite search with both sorts on, both reversed, and each sort alone, on
/// the same probes.
pub fn ablation_sorting(scenario: &Scenario) -> Result<Vec<MethodReport>> {
    let s = Scenario {
        methods: [
            SortOrder::FLAT,
            SortOrder::DEEP,
            SortOrder::CANDIDATES_ONLY,
            SortOrder::CLUSTERS_ONLY,
        ]
        .into_iter()
        .map(Method::Partite)
        .collect(),
        ..scenario.clone()
    };
    run_scenario(&s)
}

/// Result of comparing the partite search with and without reduction.
#[derive(Debug, Clone)]
pub struct ReductionAblation {
    pub reports: Vec<MethodReport>,
    /// Probes on which both variants decoded the same message (or neither did).
    pub agreements: usize,
    pub probes: usize,
    pub reduced_time: Duration,
    pub unreduced_time: Duration,
}

impl ReductionAblation {
    pub fn speedup(&self) -> f64 {
        self.unreduced_time.as_secs_f64() / self.reduced_time.as_secs_f64().max(1e-12)
    }
}

pub fn ablation_reduction(scenario: &Scenario) -> Result<ReductionAblation> {
    let s = Scenario {
        methods: vec![
            Method::Partite(SortOrder::FLAT),
            Method::PartiteUnreduced(SortOrder::FLAT),
        ],
        ..scenario.clone()
    };
    let (net, cases) = prepare(&s)?;
    let records = evaluate(&net, &cases, &s);
    let agreements = records
        .iter()
        .filter(|r| r.decoded[0].message == r.decoded[1].message)
        .count();
    let total = |i: usize| records.iter().map(|r| r.decoded[i].post_time).sum();
    Ok(ReductionAblation {
        reports: summarize(&s, &records),
        agreements,
        probes: records.len(),
        reduced_time: total(0),
        unreduced_time: total(1),
    })
}
