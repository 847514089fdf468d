use num_rational::Ratio;
use serde_json::{json, Value};

use super::OracleError;
use crate::algebra::{Field, FieldElem};

/// Exact value counts of a random variable on a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    field: Field,
    counts: Vec<u64>,
    total: u64,
}

impl Distribution {
    pub fn new(field: &Field) -> Result<Self, OracleError> {
        let q = field.size();
        if q > super::DEFAULT_BUDGET {
            return Err(OracleError::BudgetExceeded {
                needed: q,
                budget: super::DEFAULT_BUDGET,
            });
        }
        Ok(Distribution {
            field: field.clone(),
            counts: vec![0; q as usize],
            total: 0,
        })
    }

    pub fn from_counts(field: &Field, counts: Vec<u64>) -> Result<Self, OracleError> {
        if counts.len() as u128 != field.size() {
            return Err(OracleError::InvalidInput("count vector length differs from |F|".into()));
        }
        let total = counts.iter().sum();
        Ok(Distribution {
            field: field.clone(),
            counts,
            total,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn add(&mut self, a: &FieldElem) {
        self.add_index(self.field.index_of(a) as usize, 1);
    }

    pub fn add_index(&mut self, idx: usize, times: u64) {
        self.counts[idx] += times;
        self.total += times;
    }

    pub fn merge(&mut self, other: &Distribution) {
        assert_eq!(self.counts.len(), other.counts.len());
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
    }

    pub fn probability(&self, a: &FieldElem) -> Ratio<u128> {
        Ratio::new(
            self.counts[self.field.index_of(a) as usize] as u128,
            self.total as u128,
        )
    }
}

/// `½ Σ_a |P(a) − Q(a)|`, exact.
pub fn tv_distance(a: &Distribution, b: &Distribution) -> Result<Ratio<u128>, OracleError> {
    if a.counts.len() != b.counts.len() || a.total == 0 || b.total == 0 {
        return Err(OracleError::InvalidInput(
            "distributions must share a field and be nonempty".into(),
        ));
    }
    let (na, nb) = (a.total as u128, b.total as u128);
    let num: u128 = a
        .counts
        .iter()
        .zip(&b.counts)
        .map(|(&x, &y)| (x as u128 * nb).abs_diff(y as u128 * na))
        .sum();
    Ok(Ratio::new(num, 2 * na * nb))
}

/// Distance from the uniform distribution on the field.
pub fn tv_to_uniform(a: &Distribution) -> Result<Ratio<u128>, OracleError> {
    if a.total == 0 {
        return Err(OracleError::InvalidInput("empty distribution".into()));
    }
    let q = a.counts.len() as u128;
    let n = a.total as u128;
    let num: u128 = a.counts.iter().map(|&c| (c as u128 * q).abs_diff(n)).sum();
    Ok(Ratio::new(num, 2 * n * q))
}

/// `{"num": .., "den": .., "approx": ..}` rendering of an exact rational.
pub fn ratio_json(r: &Ratio<u128>) -> Value {
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
        "approx": *r.numer() as f64 / *r.denom() as f64,
    })
}
