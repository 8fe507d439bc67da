//! Independent verifiers: a brute-force dimension counter and seeded
//! property suites whose failures are recorded as re-runnable problems.

mod brute;
mod fixtures;
mod suites;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cli::ProblemDescription;
use crate::error::Result;

pub use brute::brute_hilbert;
pub use fixtures::{fixture_corpus, random_monomial_fixtures, render_monomial, MonomialFixture};
pub use suites::{
    additivity_suite, associativity_monomial, associativity_suite, check_additivity, check_hypersurface,
    check_property, hypersurface_cases, hypersurface_suite, oracle_equivalence, property_suite, Equivalence,
    HypersurfaceCase, Property,
};

/// Result of one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    /// The instance does not meet the property's hypotheses.
    Skip(String),
    Fail(String),
}

/// A failing instance in the CLI input format plus its extra parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub problem: ProblemDescription,
    pub parameters: BTreeMap<String, String>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub instances: usize,
    pub skipped: usize,
    pub failures: Vec<FailureRecord>,
    pub millis: Vec<u64>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} instances, {} skipped, {} failures",
            self.property,
            self.instances,
            self.skipped,
            self.failures.len()
        )
    }
}

pub type Params = BTreeMap<String, String>;

/// Runs `check` on every instance in parallel and collects a report.
pub fn run_instances<C>(property: &str, items: Vec<(ProblemDescription, Params)>, check: C) -> PropertyReport
where
    C: Fn(&ProblemDescription, &Params) -> Result<Check> + Sync,
{
    let results: Vec<(Check, u64)> = items
        .par_iter()
        .map(|(p, params)| {
            let start = Instant::now();
            let c = check(p, params).unwrap_or_else(|e| Check::Fail(e.to_string()));
            (c, start.elapsed().as_millis() as u64)
        })
        .collect();
    let mut report =
        PropertyReport { property: property.into(), instances: 0, skipped: 0, failures: Vec::new(), millis: Vec::new() };
    for ((p, params), (c, ms)) in items.into_iter().zip(results) {
        report.millis.push(ms);
        match c {
            Check::Pass => report.instances += 1,
            Check::Skip(_) => report.skipped += 1,
            Check::Fail(message) => {
                report.instances += 1;
                report.failures.push(FailureRecord { problem: p, parameters: params, message });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests;
