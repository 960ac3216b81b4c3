//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails. Lines marked `info` are extra measurements and do
//! not affect the exit status.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use gbnn::bench::{
    ablation_reduction, ablation_sorting, bogus_sweep, emit_report, emit_sweep, run_scenario,
    Method, MethodReport, ReportFormat, Scenario,
};
use gbnn::clique::{
    brute_force_partite, find_all_cliques_partite, find_max_clique_cp, ReducedGraph, SortOrder,
};
use gbnn::dynamics::{init_state, run, som_step, Rule, RunStatus};
use gbnn::heuristics::HeuristicKind;
use gbnn::network::{erase, generate_messages};
use gbnn::{Network, NetworkConfig};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Verdict;

struct Verdict {
    pass: bool,
    detail: String,
}

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn rate(reports: &[MethodReport], method: &str) -> f64 {
    reports
        .iter()
        .find(|r| r.method == method)
        .unwrap_or_else(|| panic!("no report for {method}"))
        .retrieval_rate
}

fn report<'a>(reports: &'a [MethodReport], method: &str) -> &'a MethodReport {
    reports.iter().find(|r| r.method == method).unwrap()
}

/// Largest clique with at most one node per cluster, by trying every choice of
/// "one node or none" in each cluster.
fn max_partite_clique(g: &ReducedGraph) -> usize {
    let clusters = g.clusters();
    let mut best = 0;
    let mut pick: Vec<Option<usize>> = vec![None; clusters.len()];
    fn walk(
        g: &ReducedGraph,
        clusters: &[Vec<usize>],
        i: usize,
        pick: &mut Vec<Option<usize>>,
        best: &mut usize,
    ) {
        if i == clusters.len() {
            let chosen: Vec<usize> = pick.iter().flatten().copied().collect();
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(k, &a)| chosen[k + 1..].iter().all(|&b| g.adjacent(a, b)));
            if ok {
                *best = (*best).max(chosen.len());
            }
            return;
        }
        pick[i] = None;
        walk(g, clusters, i + 1, pick, best);
        for &v in &clusters[i] {
            pick[i] = Some(v);
            walk(g, clusters, i + 1, pick, best);
        }
        pick[i] = None;
    }
    walk(g, clusters, 0, &mut pick, &mut best);
    best
}

fn criterion_1() -> Verdict {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c11);
    let mut graphs = 0;
    let mut mismatches = 0;
    for &p in &[0.3, 0.5, 0.8] {
        for _ in 0..200 {
            let k = rng.gen_range(1..=5);
            let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=6)).collect();
            let cluster_of: Vec<usize> = sizes
                .iter()
                .enumerate()
                .flat_map(|(c, &s)| vec![c; s])
                .collect();
            let n = cluster_of.len();
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if cluster_of[a] != cluster_of[b] && rng.gen_bool(p) {
                        edges.push((a, b));
                    }
                }
            }
            let g = ReducedGraph::from_partite(&sizes, edges);
            let oracle: BTreeSet<Vec<usize>> = brute_force_partite(&g, 1_000_000)
                .unwrap()
                .into_iter()
                .collect();
            let (found, _) = find_all_cliques_partite(&g, SortOrder::FLAT);
            let found_set: BTreeSet<Vec<usize>> = found.iter().cloned().collect();
            let (cp, _) = find_max_clique_cp(&g.to_graph(false));
            if found_set != oracle
                || found.len() != oracle.len()
                || cp.len() != max_partite_clique(&g)
            {
                mismatches += 1;
            }
            graphs += 1;
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    Verdict {
        pass: mismatches == 0 && secs < 60.0,
        detail: format!("{graphs} graphs, {mismatches} mismatches, {secs:.2} s"),
    }
}

fn criterion_2() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c22);
    let mut violations = 0;
    let mut instances = 0;
    while instances < 1200 {
        let c = rng.gen_range(2..=8);
        let l = rng.gen_range(2..=24);
        let gamma = if rng.gen_bool(0.5) { 1.0 } else { 0.0 };
        let config = NetworkConfig::with_gamma(c, l, gamma).unwrap();
        let stored = rng.gen_range(1..=c * l * 4);
        let messages = generate_messages(&config, stored, rng.gen());
        let mut net = Network::new(config);
        net.store_all(&messages).unwrap();
        for _ in 0..4 {
            let source = &messages[rng.gen_range(0..messages.len())];
            let e = rng.gen_range(0..c);
            let mut erased = index::sample(&mut rng, c, e).into_vec();
            erased.sort_unstable();
            let probe = erase(source, &erased).unwrap();
            let n = config.neuron_count();

            let mut state = init_state(&config, &probe, Rule::SumOfMax);
            let mut steps = 0;
            let mut ok = false;
            while steps < n {
                let next = som_step(&net, &state, &probe);
                steps += 1;
                if !next.is_subset_of(&state) {
                    break;
                }
                if next.to_flat() == state.to_flat() {
                    ok = true;
                    break;
                }
                state = next;
            }
            let r = run(&net, &probe, Rule::SumOfMax, n);
            let converged =
                matches!(r.status, RunStatus::Converged { iterations } if iterations <= n);
            if !ok || !converged || r.state.to_flat() != state.to_flat() {
                violations += 1;
            }
            instances += 1;
        }
    }
    Verdict {
        pass: violations == 0,
        detail: format!("{instances} instances, {violations} violations"),
    }
}

fn criterion_3() -> Verdict {
    let config = NetworkConfig::new(8, 32).unwrap();
    let mut s = Scenario::new("recall", config, 500, 0, 500, 3);
    s.threads = threads();
    let reports = run_scenario(&s).unwrap();
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| r.retrieval_rate != 1.0)
        .map(|r| format!("{}={}", r.method, r.retrieval_rate))
        .collect();
    Verdict {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} methods at 1.0", reports.len())
        } else {
            bad.join(" ")
        },
    }
}

fn small_config() -> NetworkConfig {
    NetworkConfig::new(8, 128).unwrap()
}

fn criterion_4() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for seed in [1, 2, 3] {
        let mut s = Scenario::new("small", small_config(), 5000, 6, 5000, seed).with_methods(vec![
            Method::Heuristic(HeuristicKind::Random),
            Method::PARTITE,
        ]);
        s.threads = threads();
        let reports = run_scenario(&s).unwrap();
        let random = rate(&reports, "random");
        let partite = rate(&reports, "partite");
        pass &= (random - 0.20).abs() <= 0.05
            && (partite - 0.80).abs() <= 0.07
            && partite >= 3.0 * random;
        parts.push(format!(
            "seed {seed}: random {random:.4} partite {partite:.4}"
        ));
    }
    Verdict {
        pass,
        detail: parts.join("; "),
    }
}

fn criterion_5() -> Verdict {
    let config = NetworkConfig::new(8, 64).unwrap();
    let mut methods: Vec<Method> = HeuristicKind::ALL
        .into_iter()
        .map(Method::Heuristic)
        .collect();
    methods.push(Method::PARTITE);
    let names: Vec<String> = methods.iter().map(|m| m.to_string()).collect();
    let mut sums = vec![0.0; methods.len()];
    let seeds = [1, 2, 3, 4, 5];
    for seed in seeds {
        let mut s =
            Scenario::new("desk", config, 2500, 6, 2000, seed).with_methods(methods.clone());
        s.threads = threads();
        let reports = run_scenario(&s).unwrap();
        for (sum, name) in sums.iter_mut().zip(&names) {
            *sum += rate(&reports, name);
        }
    }
    let mean =
        |name: &str| sums[names.iter().position(|n| n == name).unwrap()] / seeds.len() as f64;
    let tol = 0.02;
    let mut broken = Vec::new();
    let heuristics = ["mm", "mf", "fm", "ff", "fe", "fs"];
    for h in heuristics {
        if mean(h) < mean("random") - tol {
            broken.push(format!("{h} < random"));
        }
        if mean("partite") < mean(h) - tol {
            broken.push(format!("partite < {h}"));
        }
    }
    if mean("mf") < mean("mm") - tol {
        broken.push("mf < mm".to_string());
    }
    let rates: Vec<String> = names
        .iter()
        .map(|n| format!("{n} {:.4}", mean(n)))
        .collect();
    Verdict {
        pass: broken.is_empty(),
        detail: format!(
            "{}{}",
            rates.join(" "),
            if broken.is_empty() {
                String::new()
            } else {
                format!("; violated: {}", broken.join(", "))
            }
        ),
    }
}

fn curve(points: &[gbnn::bench::BogusPoint], erased: usize) -> Vec<f64> {
    points
        .iter()
        .filter(|p| p.erased == erased)
        .map(|p| p.probability)
        .collect()
}

fn fmt_curve(v: &[f64]) -> String {
    v.iter()
        .map(|p| format!("{p:.3}"))
        .collect::<Vec<_>>()
        .join("/")
}

fn criterion_6() -> Verdict {
    let stored = [500, 1000, 2000, 4000];
    let points = bogus_sweep(&small_config(), &[1, 2, 5, 6], &stored, 1000, 1, threads()).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for e in [1, 2] {
        let c = curve(&points, e);
        pass &= c.windows(2).all(|w| w[1] >= w[0] - 0.02);
        parts.push(format!("e={e} {}", fmt_curve(&c)));
    }
    for e in [5, 6] {
        let c = curve(&points, e);
        let (peak_at, peak) = c
            .iter()
            .copied()
            .enumerate()
            .fold(
                (0, f64::MIN),
                |best, (i, p)| if p > best.1 { (i, p) } else { best },
            );
        let rises = peak_at > 0 && peak > c[0];
        let falls = *c.last().unwrap() <= peak - 0.1;
        pass &= rises && falls;
        parts.push(format!("e={e} {}", fmt_curve(&c)));
    }
    Verdict {
        pass,
        detail: parts.join("; "),
    }
}

fn info_6() -> String {
    let stored = [4000, 8000, 16000, 32000, 64000];
    let points = bogus_sweep(&small_config(), &[6], &stored, 300, 1, threads()).unwrap();
    format!(
        "6 erased over {stored:?}: {}",
        fmt_curve(&curve(&points, 6))
    )
}

fn criterion_7() -> Verdict {
    let s = Scenario::new("small", small_config(), 5000, 6, 5000, 1);
    let a = ablation_reduction(&s).unwrap();
    let speedup = a.speedup();
    Verdict {
        pass: speedup >= 5.0 && a.agreements == a.probes,
        detail: format!(
            "speedup {speedup:.2}x ({:.1} ms vs {:.1} ms), identical outcomes {}/{}",
            a.reduced_time.as_secs_f64() * 1e3,
            a.unreduced_time.as_secs_f64() * 1e3,
            a.agreements,
            a.probes
        ),
    }
}

fn sorting_summary(reports: &[MethodReport]) -> String {
    reports
        .iter()
        .map(|r| {
            format!(
                "{} rate {:.4} calls {:.1} post {:.3} ms",
                r.method,
                r.retrieval_rate,
                r.median_recursive_calls.unwrap_or(f64::NAN),
                r.mean_post_ms
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn criterion_8() -> Verdict {
    let config = NetworkConfig::new(16, 128).unwrap();
    let mut s = Scenario::new("sort", config, 20000, 12, 2000, 1);
    s.threads = 1;
    let reports = ablation_sorting(&s).unwrap();
    let flat = report(&reports, "partite");
    let deep = report(&reports, "partite-deep");
    let no_cluster_sort = report(&reports, "partite-candidates-only");
    let no_degree_sort = report(&reports, "partite-clusters-only");
    let calls = |r: &MethodReport| r.median_recursive_calls.unwrap_or(f64::INFINITY);
    let pass = calls(flat) * 5.0 <= calls(deep)
        && flat.retrieval_rate >= deep.retrieval_rate + 0.05
        && no_cluster_sort.retrieval_rate <= flat.retrieval_rate - 0.03
        && (no_degree_sort.retrieval_rate - flat.retrieval_rate).abs() <= 0.01
        && no_degree_sort.mean_post_ms > flat.mean_post_ms;
    Verdict {
        pass,
        detail: sorting_summary(&reports),
    }
}

fn info_8() -> String {
    let config = NetworkConfig::new(16, 256).unwrap();
    let mut s = Scenario::new("sort", config, 50000, 12, 200, 1);
    s.threads = 1;
    let reports = ablation_sorting(&s).unwrap();
    format!("C=16 L=256 50000 stored: {}", sorting_summary(&reports))
}

/// CSV with the timing columns blanked.
fn untimed_csv(reports: &[MethodReport]) -> String {
    let untimed: Vec<MethodReport> = reports
        .iter()
        .cloned()
        .map(|mut r| {
            r.mean_convergence_ms = 0.0;
            r.mean_post_ms = 0.0;
            r
        })
        .collect();
    let mut buf = Vec::new();
    emit_report(&untimed, ReportFormat::Csv, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

fn criterion_9() -> Verdict {
    let config = NetworkConfig::new(8, 64).unwrap();
    let mut s = Scenario::new("det", config, 1500, 5, 300, 42);
    s.threads = threads();
    let mut same = Vec::new();

    let bench = || untimed_csv(&run_scenario(&s).unwrap());
    same.push(("bench", bench() == bench()));
    let sort = || untimed_csv(&ablation_sorting(&s).unwrap());
    same.push(("ablate-sort", sort() == sort()));
    let reduce = || untimed_csv(&ablation_reduction(&s).unwrap().reports);
    same.push(("ablate-reduce", reduce() == reduce()));
    let sweep = || {
        let mut buf = Vec::new();
        emit_sweep(
            &bogus_sweep(&config, &[2, 5], &[500, 1500], 200, 42, threads()).unwrap(),
            &mut buf,
        )
        .unwrap();
        buf
    };
    same.push(("bogus-sweep", sweep() == sweep()));

    let differing: Vec<&str> = same.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    Verdict {
        pass: differing.is_empty(),
        detail: if differing.is_empty() {
            "bench, ablate-sort, ablate-reduce, bogus-sweep byte-identical".to_string()
        } else {
            format!("differs: {}", differing.join(", "))
        },
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("oracle equivalence", criterion_1),
        ("sum-of-max convergence", criterion_2),
        ("perfect recall without erasure", criterion_3),
        ("small-scenario headline", criterion_4),
        ("heuristic ordering", criterion_5),
        ("bogus-probability shape", criterion_6),
        ("reduction ablation", criterion_7),
        ("sorting ablation", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let v = check();
        failed += usize::from(!v.pass);
        println!(
            "criterion {} {}: {} [{:.1} s] {}",
            i + 1,
            name,
            if v.pass { "PASS" } else { "FAIL" },
            t0.elapsed().as_secs_f64(),
            v.detail
        );
        match i + 1 {
            6 => println!("  info: {}", info_6()),
            8 => println!("  info: {}", info_8()),
            _ => {}
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
