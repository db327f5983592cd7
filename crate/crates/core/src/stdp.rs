//! Ordinal STDP: an associative network storing one rank code.
//!
//! Units reinforce their pairwise links by relative rank, not by spike
//! timing: the weight from unit `i` to unit `j` is positive when `j` is
//! ranked after `i` and negative otherwise, giving an antisymmetric matrix
//! with zero diagonal.
//!
//! Recall reads out the total input each cued unit receives from the other
//! cued units and sorts ascending. With the constant kernel that score is
//! `(#earlier-ranked cued units) − (#later-ranked cued units)`, which is
//! strictly increasing in stored rank within *any* cue subset, so the stored
//! relative order survives deleting units. The inverse-distance kernel keeps
//! this monotonicity for the full cue but not for every subset (cueing
//! stored ranks {1, 2, 7} scores rank 7 between ranks 1 and 2), so deletion
//! robustness is a constant-kernel property.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rank::RankCode;

/// How the magnitude of a pairwise weight depends on rank distance `d ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kernel {
    /// `κ(d) = 1`.
    Constant,
    /// `κ(d) = 1/d`.
    InverseDistance,
}

impl Kernel {
    fn magnitude(self, distance: u32) -> f64 {
        match self {
            Kernel::Constant => 1.0,
            Kernel::InverseDistance => 1.0 / f64::from(distance),
        }
    }
}

impl std::fmt::Display for Kernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kernel::Constant => write!(f, "constant"),
            Kernel::InverseDistance => write!(f, "inverse-distance"),
        }
    }
}

/// Antisymmetric unit-to-unit weights for one stored rank code.
///
/// `w[i][j] = sign(rank_j − rank_i) · κ(|rank_j − rank_i|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightMatrix {
    kernel: Kernel,
    units: Vec<String>,
    /// Row-major N×N.
    weights: Vec<f64>,
}

/// Outcome of a recall: cued units sorted by readout score, ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecallResult {
    /// Unit labels in recovered order.
    pub order: Vec<String>,
    /// Readout score per unit, aligned with `order`.
    pub scores: Vec<f64>,
}

impl WeightMatrix {
    /// Store `rank` with default unit labels `u1..uN`.
    pub fn store(rank: &RankCode, kernel: Kernel) -> Self {
        let units = (1..=rank.len()).map(|i| format!("u{i}")).collect();
        Self::store_with_units(rank, units, kernel).expect("generated labels are valid")
    }

    /// Store `rank` with caller-supplied unit labels (one per position,
    /// unique).
    pub fn store_with_units(
        rank: &RankCode,
        units: Vec<String>,
        kernel: Kernel,
    ) -> Result<Self, Error> {
        let n = rank.len();
        if units.len() != n {
            return Err(Error::LengthMismatch { left: units.len(), right: n });
        }
        let mut seen = std::collections::HashSet::new();
        for u in &units {
            if !seen.insert(u) {
                return Err(Error::DuplicateUnit(u.clone()));
            }
        }
        let ranks = rank.ranks();
        let mut weights = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let diff = i64::from(ranks[j]) - i64::from(ranks[i]);
                let magnitude = kernel.magnitude(diff.unsigned_abs() as u32);
                weights[i * n + j] = diff.signum() as f64 * magnitude;
            }
        }
        Ok(WeightMatrix { kernel, units, weights })
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn weight(&self, from: usize, to: usize) -> f64 {
        self.weights[from * self.len() + to]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Recall the stored order restricted to `active` unit labels.
    ///
    /// Each active unit's score is the summed input it receives from the
    /// other active units; the recovered order sorts scores ascending (tie
    /// break: matrix position, which puts zero-coupled inserted units in a
    /// stable place).
    pub fn recall<S: AsRef<str>>(&self, active: &[S]) -> Result<RecallResult, Error> {
        if active.is_empty() {
            return Err(Error::EmptyCue);
        }
        let mut indices = Vec::with_capacity(active.len());
        for label in active {
            let label = label.as_ref();
            let idx = self
                .units
                .iter()
                .position(|u| u == label)
                .ok_or_else(|| Error::UnknownUnit(label.to_string()))?;
            if !indices.contains(&idx) {
                indices.push(idx);
            }
        }
        indices.sort_unstable();
        let mut scored: Vec<(usize, f64)> = indices
            .iter()
            .map(|&i| {
                let input = indices.iter().map(|&j| self.weight(j, i)).sum();
                (i, input)
            })
            .collect();
        scored.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        Ok(RecallResult {
            order: scored.iter().map(|&(i, _)| self.units[i].clone()).collect(),
            scores: scored.iter().map(|&(_, s)| s).collect(),
        })
    }

    /// Recall with every unit cued.
    pub fn recall_all(&self) -> RecallResult {
        self.recall(&self.units).expect("nonempty unit set")
    }

    /// Smallest gap between adjacent full-recall scores. Zero for N = 1.
    pub fn score_margin(&self) -> f64 {
        let scores = self.recall_all().scores;
        if scores.len() < 2 {
            return 0.0;
        }
        scores.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    /// Noise level guaranteed not to change full recall: each score moves by
    /// less than `(N−1)·ε`, so any `ε` below `margin / (2(N−1))` keeps all
    /// score gaps open.
    pub fn noise_tolerance(&self) -> f64 {
        let n = self.len();
        if n < 2 {
            return 0.0;
        }
        self.score_margin() / (2.0 * (n - 1) as f64)
    }

    /// Extend the matrix with units that are coupled to nothing (all-zero
    /// rows and columns). Models inserting unknown units into the sequence:
    /// recalled at score 0, they slot between the stored negative- and
    /// positive-scored units by the position tie rule while the stored
    /// units keep their relative order.
    pub fn with_inserted_units(&self, labels: Vec<String>) -> Result<Self, Error> {
        let mut units = self.units.clone();
        for label in labels {
            if units.contains(&label) {
                return Err(Error::DuplicateUnit(label));
            }
            units.push(label);
        }
        let old_n = self.len();
        let n = units.len();
        let mut weights = vec![0.0; n * n];
        for i in 0..old_n {
            weights[i * n..i * n + old_n].copy_from_slice(&self.weights[i * old_n..(i + 1) * old_n]);
        }
        Ok(WeightMatrix { kernel: self.kernel, units, weights })
    }

    /// Add independent uniform noise in `[-epsilon, epsilon]` to each
    /// upper-triangle entry, mirrored to preserve antisymmetry.
    /// Deterministic in `seed`.
    pub fn perturb(&self, epsilon: f64, seed: u64) -> Self {
        use rand::distr::{Distribution, Uniform};
        use rand::SeedableRng;

        let epsilon = epsilon.max(0.0);
        let mut out = self.clone();
        if epsilon == 0.0 {
            return out;
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let dist = Uniform::new_inclusive(-epsilon, epsilon).expect("valid noise range");
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                let noise = dist.sample(&mut rng);
                out.weights[i * n + j] += noise;
                out.weights[j * n + i] = -out.weights[i * n + j];
            }
        }
        out
    }

    /// Antisymmetry with zero diagonal; holds after `store` and `perturb`.
    pub fn is_antisymmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.weight(i, j) == -self.weight(j, i)))
    }
}
