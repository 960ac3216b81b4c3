use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{draw_probes, evaluate, probe_rng, Scenario};
use crate::error::Result;
use crate::network::{generate_messages, Network, NetworkConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BogusPoint {
    pub erased: usize,
    pub stored: usize,
    pub probes: usize,
    pub seed: u64,
    pub probability: f64,
}

/// Fraction of probes whose sum-of-max fixed point is bogus, for every
/// (erased, stored) pair. Smaller stored counts use a prefix of the same
/// message sequence, and every pair draws its probes from the same stream.
pub fn bogus_sweep(
    config: &NetworkConfig,
    erased: &[usize],
    stored: &[usize],
    probes: usize,
    seed: u64,
    threads: usize,
) -> Result<Vec<BogusPoint>> {
    let most = stored.iter().copied().max().unwrap_or(0);
    let messages = generate_messages(config, most, seed);
    let mut points = Vec::new();
    for &e in erased {
        for &m in stored {
            let mut scenario =
                Scenario::new("bogus-sweep", *config, m, e, probes, seed).with_methods(Vec::new());
            scenario.threads = threads;
            scenario.validate()?;
            let mut net = Network::new(*config);
            net.store_all(&messages[..m])?;
            let cases = draw_probes(
                &messages[..m],
                config,
                e,
                probes,
                false,
                &mut probe_rng(seed),
            );
            let records = evaluate(&net, &cases, &scenario);
            let bogus = records.iter().filter(|r| r.bogus == Some(true)).count();
            points.push(BogusPoint {
                erased: e,
                stored: m,
                probes,
                seed,
                probability: if probes == 0 {
                    0.0
                } else {
                    bogus as f64 / probes as f64
                },
            });
        }
    }
    Ok(points)
}

pub fn emit_sweep(points: &[BogusPoint], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if points.is_empty() {
        w.write_record(["erased", "stored", "probes", "seed", "probability"])?;
    }
    for p in points {
        w.serialize(p)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_message_is_never_bogus() {
        let config = NetworkConfig::new(8, 32).unwrap();
        let pts = bogus_sweep(&config, &[1, 4, 7], &[1], 20, 3, 1).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| p.probability == 0.0));
    }

    #[test]
    fn sweep_is_deterministic() {
        let config = NetworkConfig::new(6, 16).unwrap();
        let a = bogus_sweep(&config, &[3, 4], &[50, 150], 30, 11, 1).unwrap();
        let b = bogus_sweep(&config, &[3, 4], &[50, 150], 30, 11, 2).unwrap();
        assert_eq!(a, b);
        let mut buf = Vec::new();
        emit_sweep(&a, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 5);
    }
}
