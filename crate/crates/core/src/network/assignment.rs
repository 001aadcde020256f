use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;

use super::Network;
use crate::error::QueryError;

/// A total configuration: `values[i]` is the category of variable `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<usize>);

impl Assignment {
    pub fn new(values: Vec<usize>) -> Self {
        Assignment(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: usize) -> Option<usize> {
        self.0.get(var).copied()
    }

    pub fn into_values(self) -> Vec<usize> {
        self.0
    }

    /// `x ~ e`: agrees with the evidence on every observed variable.
    pub fn is_consistent_with(&self, e: &Evidence) -> bool {
        e.iter().all(|(var, value)| self.get(var) == Some(value))
    }

    pub(crate) fn check_against(&self, network: &Network) -> Result<(), QueryError> {
        if self.0.len() != network.num_vars() {
            return Err(QueryError::PartialAssignment {
                expected: network.num_vars(),
                found: self.0.len(),
            });
        }
        for (var, (&value, &cardinality)) in self.0.iter().zip(network.cardinalities()).enumerate() {
            if value >= cardinality {
                return Err(QueryError::ValueOutOfRange { var, value, cardinality });
            }
        }
        Ok(())
    }
}

impl From<Vec<usize>> for Assignment {
    fn from(values: Vec<usize>) -> Self {
        Assignment(values)
    }
}

/// A partial configuration; variables not present are free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Evidence(BTreeMap<usize, usize>);

/// Returned when a variable is observed twice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("variable {var} observed more than once")]
pub struct DuplicateObservation {
    pub var: usize,
}

impl Evidence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I>(pairs: I) -> Result<Self, DuplicateObservation>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut e = Evidence::new();
        for (var, value) in pairs {
            e.insert(var, value)?;
        }
        Ok(e)
    }

    pub fn insert(&mut self, var: usize, value: usize) -> Result<(), DuplicateObservation> {
        match self.0.entry(var) {
            btree_map::Entry::Occupied(_) => Err(DuplicateObservation { var }),
            btree_map::Entry::Vacant(slot) => {
                slot.insert(value);
                Ok(())
            }
        }
    }

    pub fn get(&self, var: usize) -> Option<usize> {
        self.0.get(&var).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Observed `(variable, value)` pairs in ascending variable order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    /// Dense per-variable view, checked against the network's domains.
    pub(crate) fn to_dense(&self, network: &Network) -> Result<Vec<Option<usize>>, QueryError> {
        let mut dense = alloc::vec![None; network.num_vars()];
        for (var, value) in self.iter() {
            let cardinality = network
                .cardinality(var)
                .ok_or(QueryError::UnknownVariable { var })?;
            if value >= cardinality {
                return Err(QueryError::ValueOutOfRange { var, value, cardinality });
            }
            dense[var] = Some(value);
        }
        Ok(dense)
    }
}

impl FromIterator<(usize, usize)> for Evidence {
    /// Later observations of the same variable overwrite earlier ones; use
    /// [`Evidence::from_pairs`] to reject duplicates instead.
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        Evidence(iter.into_iter().collect())
    }
}
