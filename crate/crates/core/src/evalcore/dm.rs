use std::fmt;

use serde::{Deserialize, Serialize};

use crate::funclib::{UtilityFn, WeightingFn};

/// One rank-dependent agent: a utility over payoffs and a weighting over
/// cumulative probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionMaker {
    pub utility: UtilityFn,
    pub weighting: WeightingFn,
    #[serde(default)]
    pub label: String,
}

impl DecisionMaker {
    pub fn new(utility: UtilityFn, weighting: WeightingFn) -> Self {
        let label = format!("U={utility}, h={weighting}");
        Self {
            utility,
            weighting,
            label,
        }
    }

    /// Expected-utility agent (identity weighting).
    pub fn eu(utility: UtilityFn) -> Self {
        Self::new(utility, WeightingFn::identity())
    }

    /// Dual-theory agent (linear utility).
    pub fn dt(weighting: WeightingFn) -> Self {
        Self::new(UtilityFn::linear(), weighting)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

impl fmt::Display for DecisionMaker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.label.is_empty() {
            write!(f, "U={}, h={}", self.utility, self.weighting)
        } else {
            f.write_str(&self.label)
        }
    }
}
