//! Binary network file.
//!
//! ```text
//! "GBNN"            4 bytes magic
//! version           u8 (= 1)
//! clusters          u32 little-endian
//! neurons/cluster   u32 little-endian
//! gamma             f64 little-endian
//! payload           strict upper triangle (i < j) of the n x n matrix over
//!                   flat indices, row-major, bit k stored at byte k / 8,
//!                   bit position k % 8 (LSB first), zero padded
//! ```

use super::{Network, NetworkConfig, Neuron};
use crate::error::{GbnnError, Result};

pub const MAGIC: &[u8; 4] = b"GBNN";
pub const FORMAT_VERSION: u8 = 1;
const HEADER_LEN: usize = 4 + 1 + 4 + 4 + 8;

fn payload_len(n: u64) -> Option<u64> {
    let pairs = n.checked_mul(n.saturating_sub(1))? / 2;
    Some(pairs.div_ceil(8))
}

pub fn serialize(network: &Network) -> Vec<u8> {
    let config = network.config();
    let n = config.neuron_count();
    let body = payload_len(n as u64).expect("in-memory network fits") as usize;
    let mut out = Vec::with_capacity(HEADER_LEN + body);
    out.extend_from_slice(MAGIC);
    out.push(FORMAT_VERSION);
    out.extend_from_slice(&(config.clusters() as u32).to_le_bytes());
    out.extend_from_slice(&(config.neurons_per_cluster() as u32).to_le_bytes());
    out.extend_from_slice(&config.gamma().to_le_bytes());

    let mut payload = vec![0u8; body];
    let mut k = 0usize;
    for i in 0..n {
        let a = Neuron::from_flat_index(i, config);
        for j in i + 1..n {
            if network.is_connected(a, Neuron::from_flat_index(j, config)) {
                payload[k / 8] |= 1 << (k % 8);
            }
            k += 1;
        }
    }
    out.extend_from_slice(&payload);
    out
}

pub fn deserialize(bytes: &[u8]) -> Result<Network> {
    if bytes.len() < 4 || &bytes[..4] != MAGIC {
        return Err(GbnnError::BadMagic);
    }
    if bytes.len() < HEADER_LEN {
        return Err(GbnnError::Truncated {
            expected: HEADER_LEN,
            found: bytes.len(),
        });
    }
    if bytes[4] != FORMAT_VERSION {
        return Err(GbnnError::UnsupportedVersion(bytes[4]));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let clusters = u32_at(5) as u64;
    let neurons = u32_at(9) as u64;
    let gamma = f64::from_le_bytes(bytes[13..21].try_into().unwrap());

    let overflow = GbnnError::DimensionOverflow { clusters, neurons };
    let n = clusters.checked_mul(neurons).ok_or(overflow)?;
    let body = payload_len(n)
        .and_then(|b| b.checked_add(HEADER_LEN as u64))
        .and_then(|t| usize::try_from(t).ok())
        .ok_or(GbnnError::DimensionOverflow { clusters, neurons })?;
    if bytes.len() < body {
        return Err(GbnnError::Truncated {
            expected: body,
            found: bytes.len(),
        });
    }
    if bytes.len() > body {
        return Err(GbnnError::CorruptPayload(format!(
            "{} trailing bytes",
            bytes.len() - body
        )));
    }

    let config = NetworkConfig::with_gamma(clusters as usize, neurons as usize, gamma)?;
    let mut network = Network::new(config);
    let payload = &bytes[HEADER_LEN..];
    let n = n as usize;
    let mut k = 0usize;
    for i in 0..n {
        let a = Neuron::from_flat_index(i, &config);
        for j in i + 1..n {
            if payload[k / 8] >> (k % 8) & 1 == 1 {
                let b = Neuron::from_flat_index(j, &config);
                if a.cluster == b.cluster {
                    return Err(GbnnError::CorruptPayload(format!(
                        "intra-cluster edge between {a} and {b}"
                    )));
                }
                network.connect(a, b);
            }
            k += 1;
        }
    }
    Ok(network)
}
