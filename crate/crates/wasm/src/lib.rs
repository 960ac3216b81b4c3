//! Browser bindings for the demo page in `www/`.
//!
//! The page stores random messages, erases clusters of one of them, steps
//! sum-of-max to its fixed point and decodes the result with a chosen method.

use gbnn::bench::{decode, Method};
use gbnn::dynamics::{detect_bogus, init_state, som_step, ActivationState, Rule};
use gbnn::network::{erase, format_message, format_probe, generate_messages};
use gbnn::{Message, Network, NetworkConfig, Probe};
use wasm_bindgen::prelude::*;

fn text(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn js(e: String) -> JsError {
    JsError::new(&e)
}

#[wasm_bindgen]
pub struct Demo {
    net: Network,
    messages: Vec<Message>,
    source: Option<Message>,
    probe: Option<Probe>,
    state: Option<ActivationState>,
    converged: bool,
}

#[wasm_bindgen]
impl Demo {
    /// Stores `stored` random messages generated from `seed`.
    #[wasm_bindgen(constructor)]
    pub fn new(clusters: usize, neurons: usize, stored: usize, seed: u64) -> Result<Demo, JsError> {
        Self::build(clusters, neurons, stored, seed).map_err(js)
    }

    fn build(clusters: usize, neurons: usize, stored: usize, seed: u64) -> Result<Demo, String> {
        let config = NetworkConfig::new(clusters, neurons).map_err(text)?;
        let messages = generate_messages(&config, stored.max(1), seed);
        let mut net = Network::new(config);
        net.store_all(&messages).map_err(text)?;
        Ok(Demo {
            net,
            messages,
            source: None,
            probe: None,
            state: None,
            converged: false,
        })
    }

    pub fn clusters(&self) -> usize {
        self.net.config().clusters()
    }

    pub fn neurons(&self) -> usize {
        self.net.config().neurons_per_cluster()
    }

    pub fn density(&self) -> f64 {
        self.net.density()
    }

    pub fn stored(&self) -> usize {
        self.messages.len()
    }

    /// Erases the last `erased` clusters of stored message `index` and resets
    /// the state to the sum-of-max starting point. Returns the probe as text.
    pub fn probe(&mut self, index: usize, erased: usize) -> Result<String, JsError> {
        self.make_probe(index, erased).map_err(js)
    }

    fn make_probe(&mut self, index: usize, erased: usize) -> Result<String, String> {
        let c = self.clusters();
        if erased >= c {
            return Err("at least one cluster must stay known".into());
        }
        let source = self.messages[index % self.messages.len()].clone();
        let clusters: Vec<usize> = (c - erased..c).collect();
        let probe = erase(&source, &clusters).map_err(text)?;
        self.state = Some(init_state(self.net.config(), &probe, Rule::SumOfMax));
        let shown = format_probe(&probe);
        self.source = Some(source);
        self.probe = Some(probe);
        self.converged = false;
        Ok(shown)
    }

    pub fn source(&self) -> Option<String> {
        self.source.as_ref().map(format_message)
    }

    /// One sum-of-max step. Returns false once the state stops changing.
    pub fn step(&mut self) -> bool {
        let (Some(state), Some(probe)) = (&self.state, &self.probe) else {
            return false;
        };
        let next = som_step(&self.net, state, probe);
        let changed = next.to_flat() != state.to_flat();
        self.converged = !changed || next.has_empty_cluster();
        self.state = Some(next);
        changed && !self.converged
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    pub fn iteration(&self) -> usize {
        self.state.as_ref().map_or(0, |s| s.iteration())
    }

    /// Activation per neuron in `cluster * L + neuron` order: 0 inactive,
    /// 1 active, 2 active and part of some stored clique in the state.
    pub fn activity(&self) -> Vec<u8> {
        let Some(state) = &self.state else {
            return vec![0; self.net.config().neuron_count()];
        };
        let in_clique = match (&self.probe, self.converged) {
            (Some(p), true) => Some(detect_bogus(&self.net, state, p).clique_union.to_flat()),
            _ => None,
        };
        state
            .to_flat()
            .into_iter()
            .enumerate()
            .map(|(i, a)| match (a, &in_clique) {
                (false, _) => 0,
                (true, Some(u)) if u[i] => 2,
                (true, _) => 1,
            })
            .collect()
    }

    /// Pairs of flat indices of connected active neurons, at most `limit` pairs.
    pub fn active_edges(&self, limit: usize) -> Vec<u32> {
        let Some(state) = &self.state else {
            return Vec::new();
        };
        let active: Vec<_> = state.active_neurons().collect();
        let config = self.net.config();
        let mut out = Vec::new();
        'outer: for (i, &a) in active.iter().enumerate() {
            for &b in &active[i + 1..] {
                if self.net.is_connected(a, b) {
                    if out.len() / 2 >= limit {
                        break 'outer;
                    }
                    out.push(a.flat_index(config) as u32);
                    out.push(b.flat_index(config) as u32);
                }
            }
        }
        out
    }

    /// True when the converged state holds neurons outside every stored clique.
    pub fn bogus(&self) -> bool {
        match (&self.state, &self.probe) {
            (Some(s), Some(p)) if self.converged => detect_bogus(&self.net, s, p).is_bogus,
            _ => false,
        }
    }

    /// Runs to the fixed point if needed, then decodes with `method` (for
    /// example `partite`, `mf` or `random`). Returns the message, or an empty
    /// string when the method gives up.
    pub fn decode(&mut self, method: &str, seed: u64) -> Result<String, JsError> {
        self.decode_with(method, seed).map_err(js)
    }

    fn decode_with(&mut self, method: &str, seed: u64) -> Result<String, String> {
        let method: Method = method.parse().map_err(text)?;
        let mut guard = 0;
        while self.step() && guard < 1000 {
            guard += 1;
        }
        let (Some(state), Some(probe)) = (&self.state, &self.probe) else {
            return Err("make a probe first".into());
        };
        if state.has_empty_cluster() {
            return Ok(String::new());
        }
        let d = decode(&self.net, probe, state, method, seed, 100);
        Ok(d.message.as_ref().map(format_message).unwrap_or_default())
    }
}
