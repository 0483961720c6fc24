use serde::{Deserialize, Serialize};

use crate::method::{OrderOutcome, PrimeGraphReport, SolutionStore};

/// Machine-readable record of a full run, also used as the artifact read
/// back by `solve --artifact` and `graph`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub group: String,
    pub options: RunOptions,
    /// candidate orders, every proper divisor before its multiples
    pub processing_order: Vec<u64>,
    pub orders: Vec<OrderOutcome>,
    /// orders with no admissible partial augmentations
    pub killed_orders: Vec<u64>,
    pub prime_graph: Option<PrimeGraphReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<OrderTiming>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    pub chars: Option<String>,
    pub prune_power: bool,
    pub max_abs: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderTiming {
    pub order: u64,
    pub millis: f64,
}

impl RunReport {
    pub fn store(&self) -> SolutionStore {
        let mut s = SolutionStore::new();
        for o in &self.orders {
            s.insert(o.order, o.solutions.clone());
        }
        s
    }
}
