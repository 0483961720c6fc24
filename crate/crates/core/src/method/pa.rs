use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Partial augmentations of a unit of order `order` on its support classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PAVector {
    pub order: u64,
    pub classes: Vec<String>,
    pub values: Vec<i64>,
}

impl PAVector {
    pub fn new(order: u64, classes: Vec<String>, values: Vec<i64>) -> Self {
        assert_eq!(classes.len(), values.len(), "one value per support class");
        PAVector { order, classes, values }
    }

    /// The vector of a group element in class `class`.
    pub fn concentrated(order: u64, classes: Vec<String>, class: &str) -> Option<Self> {
        let values = classes.iter().map(|c| (c == class) as i64).collect::<Vec<_>>();
        values.contains(&1).then(|| PAVector { order, classes, values })
    }

    pub fn get(&self, class: &str) -> i64 {
        self.classes.iter().position(|c| c == class).map_or(0, |i| self.values[i])
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }

    /// Exactly one non-zero partial augmentation.
    pub fn is_trivial(&self) -> bool {
        self.values.iter().filter(|&&v| v != 0).count() == 1
    }

    /// The class carrying the whole augmentation of a trivial vector.
    pub fn trivial_class(&self) -> Option<&str> {
        if !self.is_trivial() {
            return None;
        }
        let i = self.values.iter().position(|&v| v != 0)?;
        Some(&self.classes[i])
    }
}

/// Partial augmentations chosen for every proper power `u^d`, keyed by the
/// order `k/d` of that power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerScenario {
    pub order: u64,
    pub assignment: BTreeMap<u64, PAVector>,
}

impl PowerScenario {
    pub fn empty(order: u64) -> Self {
        PowerScenario { order, assignment: BTreeMap::new() }
    }
}

/// Admissible partial-augmentation vectors found so far, per order.
///
/// Each set is kept sorted lexicographically by its values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionStore {
    pub orders: BTreeMap<u64, Vec<PAVector>>,
}

impl SolutionStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, order: u64, mut vectors: Vec<PAVector>) {
        vectors.sort_by(|a, b| a.values.cmp(&b.values));
        vectors.dedup();
        self.orders.insert(order, vectors);
    }

    pub fn get(&self, order: u64) -> Option<&[PAVector]> {
        self.orders.get(&order).map(Vec::as_slice)
    }

    pub fn contains(&self, order: u64) -> bool {
        self.orders.contains_key(&order)
    }

    pub fn trivial_count(&self, order: u64) -> usize {
        self.get(order).map_or(0, |v| v.iter().filter(|p| p.is_trivial()).count())
    }
}
