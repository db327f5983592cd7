//! Flat key=value experiment configuration.
//!
//! Precedence: built-in defaults < config file < command-line flags.
//! The canonical rendering (sorted keys) is hashed into every verify report
//! so a report pins the exact configuration that produced it.

use std::path::Path;

use sha2::{Digest, Sha256};

use ordseq_core::autoencoder::DEFAULT_THETA;
use ordseq_core::stdp::Kernel;

use crate::errors::CliError;

#[derive(Debug, Clone)]
pub struct Config {
    pub seed: u64,
    pub k: usize,
    pub theta: f64,
    pub kernel: Kernel,
    pub trials: usize,
    pub episodes: usize,
    /// Noise grid for `stdp sweep`.
    pub epsilons: Vec<f64>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 42,
            k: 256,
            theta: DEFAULT_THETA,
            kernel: Kernel::Constant,
            trials: 6,
            episodes: 10,
            epsilons: vec![0.0, 0.01, 0.05, 0.1, 0.5, 1.0],
        }
    }
}

impl Config {
    /// Load the optional config file, then apply the global --seed override.
    pub fn resolve(path: Option<&Path>, seed_flag: Option<u64>) -> Result<Self, CliError> {
        let mut config = Config::default();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("config {}: {e}", path.display())))?;
            config.apply_file(&text)?;
        }
        if let Some(seed) = seed_flag {
            config.seed = seed;
        }
        Ok(config)
    }

    fn apply_file(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Parse(format!("config line {}: expected key=value", lineno + 1)))?;
            let key = key.trim();
            let value = value.trim();
            let bad = |what: &str| {
                CliError::Parse(format!("config line {}: bad {what} value {value:?}", lineno + 1))
            };
            match key {
                "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
                "k" => self.k = value.parse().map_err(|_| bad("k"))?,
                "theta" => self.theta = value.parse().map_err(|_| bad("theta"))?,
                "kernel" => self.kernel = parse_kernel(value).ok_or_else(|| bad("kernel"))?,
                "trials" => self.trials = value.parse().map_err(|_| bad("trials"))?,
                "episodes" => self.episodes = value.parse().map_err(|_| bad("episodes"))?,
                "epsilons" => {
                    self.epsilons = value
                        .split(',')
                        .map(|p| p.trim().parse().map_err(|_| bad("epsilons")))
                        .collect::<Result<_, _>>()?
                }
                other => {
                    return Err(CliError::Parse(format!(
                        "config line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(())
    }

    /// Sorted key=value rendering; the basis of the config hash.
    pub fn canonical(&self) -> String {
        let epsilons: Vec<String> = self.epsilons.iter().map(f64::to_string).collect();
        format!(
            "episodes={}\nepsilons={}\nk={}\nkernel={}\nseed={}\ntheta={}\ntrials={}\n",
            self.episodes,
            epsilons.join(","),
            self.k,
            self.kernel,
            self.seed,
            self.theta,
            self.trials
        )
    }

    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        hex[..16].to_string()
    }
}

pub fn parse_kernel(s: &str) -> Option<Kernel> {
    match s {
        "const" | "constant" => Some(Kernel::Constant),
        "invdist" | "inverse-distance" => Some(Kernel::InverseDistance),
        _ => None,
    }
}
