//! Budgets for exhaustive searches and the three-way outcome they produce.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

pub const DEFAULT_BUDGET: u64 = 200_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "EQCAT_BUDGET";

/// Upper bound on the number of candidates an enumeration may examine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget(pub u64);

impl Budget {
    pub fn from_env() -> Budget {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .map(Budget)
            .unwrap_or(Budget(DEFAULT_BUDGET))
    }

    pub fn exceeded(&self, what: impl Into<String>) -> Error {
        Error::BudgetExceeded {
            budget: self.0,
            what: what.into(),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

/// Outcome of a bounded search. `NoneFound` is only reported when the absence is certified.
#[derive(Clone, Debug, PartialEq)]
pub enum Search<T> {
    Found(T),
    NoneFound(String),
    BudgetExceeded { tried: u64 },
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn is_none_found(&self) -> bool {
        matches!(self, Search::NoneFound(_))
    }
}

/// Everything an enumeration accepted, and whether it covered the whole search space.
#[derive(Clone, Debug, PartialEq)]
pub struct Enumeration<T> {
    pub found: Vec<T>,
    pub complete: bool,
    pub tried: u64,
}

impl<T> Enumeration<T> {
    pub fn map<U>(self, f: impl FnMut(T) -> U) -> Enumeration<U> {
        Enumeration {
            found: self.found.into_iter().map(f).collect(),
            complete: self.complete,
            tried: self.tried,
        }
    }
}

/// Runs `accept` on coefficient vectors of length `d`.
///
/// Over F_p every vector is visited when `p^d` fits in the budget. Over Q only vectors with
/// entries in {-1, 0, 1} are visited, and the enumeration is complete only when `d = 0`.
pub fn enumerate_coefficients<T>(
    field: Field,
    d: usize,
    budget: Budget,
    mut accept: impl FnMut(&[Scalar]) -> Result<Option<T>>,
) -> Result<Enumeration<T>> {
    let (base, values): (u64, Vec<Scalar>) = match field {
        Field::Prime(p) => (p, (0..p).map(|v| field.from_i64(v as i64)).collect()),
        Field::Rational => (3, vec![field.zero(), field.one(), field.from_i64(-1)]),
    };
    let mut out = Enumeration {
        found: Vec::new(),
        complete: false,
        tried: 0,
    };
    let mut counter = vec![0u64; d];
    loop {
        if out.tried >= budget.0 {
            return Ok(out);
        }
        out.tried += 1;
        let c: Vec<Scalar> = counter.iter().map(|&v| values[v as usize].clone()).collect();
        if let Some(t) = accept(&c)? {
            out.found.push(t);
        }
        let mut k = 0;
        loop {
            if k == d {
                out.complete = field != Field::Rational || d == 0;
                return Ok(out);
            }
            counter[k] += 1;
            if counter[k] < base {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
    }
}
