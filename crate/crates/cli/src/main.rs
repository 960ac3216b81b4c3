use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use gbnn::bench::{
    ablation_reduction, ablation_sorting, bogus_sweep, decode, emit_report, emit_sweep,
    run_scenario, Method, ReportFormat, Scenario,
};
use gbnn::dynamics::{run, Rule, RunStatus};
use gbnn::network::{
    deserialize, format_message, generate_messages, parse_messages, parse_probe, serialize,
};
use gbnn::{Network, NetworkConfig};

#[derive(Parser, Debug)]
#[command(name = "gbnn", version, about = "Clustered binary associative memory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a network from a message file (or generated messages) and serialize it
    Store(StoreArgs),
    /// Decode one probe against a stored network
    Retrieve(RetrieveArgs),
    /// Run a retrieval scenario and report per-method rates and timings
    Bench(BenchArgs),
    /// Probability of a bogus sum-of-max fixed point over erased and stored counts
    BogusSweep(SweepArgs),
    /// Partite search with each combination of the two sorts
    AblateSort(BenchArgs),
    /// Partite search with and without graph reduction
    AblateReduce(BenchArgs),
}

#[derive(Args, Debug)]
struct NetworkFlags {
    #[arg(long, default_value_t = 8)]
    clusters: usize,
    #[arg(long, default_value_t = 128)]
    neurons: usize,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
}

impl NetworkFlags {
    fn config(&self) -> Result<NetworkConfig> {
        Ok(NetworkConfig::with_gamma(
            self.clusters,
            self.neurons,
            self.gamma,
        )?)
    }
}

#[derive(Args, Debug)]
struct StoreArgs {
    #[command(flatten)]
    network: NetworkFlags,
    /// One message per line, comma separated symbols. Without it, `--stored`
    /// random messages are generated from `--seed`.
    #[arg(long)]
    messages: Option<PathBuf>,
    #[arg(long, default_value_t = 5000)]
    stored: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the binary network
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct RetrieveArgs {
    /// Network written by `store`
    #[arg(long)]
    network: PathBuf,
    /// Symbols with `?` for erased clusters, e.g. `9,?,?,10`
    #[arg(long)]
    probe: String,
    #[arg(long, default_value = "partite")]
    method: Method,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    max_iters: usize,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    network: NetworkFlags,
    #[arg(long, default_value_t = 5000)]
    stored: usize,
    #[arg(long, default_value_t = 6)]
    erased: usize,
    #[arg(long, default_value_t = 1000)]
    probes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Repeatable. Defaults to every heuristic, cp and partite.
    #[arg(long = "method")]
    methods: Vec<Method>,
    #[arg(long, default_value_t = 100)]
    max_iters: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Erase a random set of clusters per probe instead of the last ones
    #[arg(long)]
    random_placement: bool,
    /// Skip the bogus fixed point check (leaves `bogus_rate` empty)
    #[arg(long)]
    no_bogus: bool,
    #[arg(long, default_value = "bench")]
    name: String,
    /// CSV destination; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or text
    #[arg(long, default_value = "csv")]
    format: ReportFormat,
}

impl BenchArgs {
    fn scenario(&self) -> Result<Scenario> {
        let mut s = Scenario::new(
            &self.name,
            self.network.config()?,
            self.stored,
            self.erased,
            self.probes,
            self.seed,
        );
        if !self.methods.is_empty() {
            s.methods = self.methods.clone();
        }
        s.max_iters = self.max_iters;
        s.threads = self.threads;
        s.random_placement = self.random_placement;
        s.detect_bogus = !self.no_bogus;
        Ok(s)
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    network: NetworkFlags,
    /// Comma separated erased cluster counts
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6")]
    erased: Vec<usize>,
    /// Comma separated stored message counts
    #[arg(long, value_delimiter = ',', default_value = "500,1000,2000,4000")]
    stored: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    probes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn store(args: &StoreArgs) -> Result<()> {
    let config = args.network.config()?;
    let messages = match &args.messages {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            parse_messages(&text, &config).with_context(|| format!("in {}", path.display()))?
        }
        None => generate_messages(&config, args.stored, args.seed),
    };
    let mut net = Network::new(config);
    net.store_all(&messages)?;
    fs::write(&args.out, serialize(&net))
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    eprintln!(
        "stored {} messages, {} edges, density {:.4}",
        messages.len(),
        net.edge_count(),
        net.density()
    );
    Ok(())
}

fn retrieve(args: &RetrieveArgs) -> Result<()> {
    let bytes = fs::read(&args.network)
        .with_context(|| format!("cannot read {}", args.network.display()))?;
    let net = deserialize(&bytes)?;
    let probe = parse_probe(&args.probe, net.config())?;
    let r = run(&net, &probe, Rule::SumOfMax, args.max_iters);
    if r.status == RunStatus::AllDeactivated {
        bail!("sum-of-max deactivated a whole cluster");
    }
    let decoded = decode(
        &net,
        &probe,
        &r.state,
        args.method,
        args.seed,
        args.max_iters,
    );
    match decoded.message {
        Some(m) => {
            println!("{}", format_message(&m));
            Ok(())
        }
        None => bail!("{} found no message", args.method),
    }
}

fn bench(args: &BenchArgs) -> Result<()> {
    let reports = run_scenario(&args.scenario()?)?;
    emit_report(&reports, args.format, output(&args.out)?)?;
    Ok(())
}

fn ablate_sort(args: &BenchArgs) -> Result<()> {
    let reports = ablation_sorting(&args.scenario()?)?;
    emit_report(&reports, args.format, output(&args.out)?)?;
    Ok(())
}

fn ablate_reduce(args: &BenchArgs) -> Result<()> {
    let a = ablation_reduction(&args.scenario()?)?;
    emit_report(&a.reports, args.format, output(&args.out)?)?;
    eprintln!(
        "reduced {:.3} ms, unreduced {:.3} ms, speedup {:.2}x, identical outcomes {}/{}",
        a.reduced_time.as_secs_f64() * 1e3,
        a.unreduced_time.as_secs_f64() * 1e3,
        a.speedup(),
        a.agreements,
        a.probes
    );
    Ok(())
}

fn sweep(args: &SweepArgs) -> Result<()> {
    let points = bogus_sweep(
        &args.network.config()?,
        &args.erased,
        &args.stored,
        args.probes,
        args.seed,
        args.threads,
    )?;
    emit_sweep(&points, output(&args.out)?)?;
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Store(a) => store(a),
        Command::Retrieve(a) => retrieve(a),
        Command::Bench(a) => bench(a),
        Command::BogusSweep(a) => sweep(a),
        Command::AblateSort(a) => ablate_sort(a),
        Command::AblateReduce(a) => ablate_reduce(a),
    }
}
