//! Counterexample search across small structures.

use crate::algebra::GammaSemigroup;
use crate::antihom::enumerate_maps;
use crate::error::{Error, Result};
use crate::fixtures::catalog;

use super::{param_tuples, Check, Instance, InstanceOutcome, SubsetScope, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub source: String,
    pub target: String,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub check: Check,
    /// First failing instance in search order.
    pub counterexample: Option<Counterexample>,
    /// Structure pairs with matching gamma lists.
    pub pairs: u64,
    /// Maps of the required class that were examined.
    pub maps: u64,
    /// Maps skipped because their quotient is not well-defined.
    pub ill_defined: u64,
    pub instances: u64,
    /// Instances meeting the hypothesis.
    pub satisfied: u64,
    /// Every pair had its full map space enumerated.
    pub exhaustive: bool,
}

/// Searches catalog structures of order at most `max_order`.
pub fn search_counterexample(check: Check, max_order: usize, map_budget: u64, seed: u64) -> Result<SearchReport> {
    let pool: Vec<(String, GammaSemigroup)> =
        catalog().into_iter().filter(|(_, s)| s.order() <= max_order).collect();
    search_counterexample_in(check, &pool, map_budget, seed)
}

/// Searches every ordered pair `(M₁, M₂)` of `pool` sharing a gamma list,
/// every map of the required class (sampled past `map_budget`), and every
/// tuple of non-empty parameters. Stops at the first failure.
pub fn search_counterexample_in(
    check: Check,
    pool: &[(String, GammaSemigroup)],
    map_budget: u64,
    seed: u64,
) -> Result<SearchReport> {
    if map_budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let mut report = SearchReport {
        check,
        counterexample: None,
        pairs: 0,
        maps: 0,
        ill_defined: 0,
        instances: 0,
        satisfied: 0,
        exhaustive: true,
    };
    let slots = check.id.statement().slots();
    for (n1, s1) in pool {
        for (n2, s2) in pool {
            if s1.gammas() != s2.gammas() {
                continue;
            }
            report.pairs += 1;
            let stream = enumerate_maps(s1, s2, check.class.level(), map_budget, seed)?;
            report.exhaustive &= stream.is_exhaustive();
            let tuples = param_tuples(s2.order(), slots, SubsetScope::All);
            for t in stream {
                report.maps += 1;
                let mut inst = Instance::new(s1, s2, &t)?;
                for params in &tuples {
                    report.instances += 1;
                    match inst.evaluate(check, params) {
                        InstanceOutcome::HypothesisUnmet => {}
                        InstanceOutcome::Holds => report.satisfied += 1,
                        InstanceOutcome::NotApplicable(_) => {
                            report.ill_defined += 1;
                            break;
                        }
                        InstanceOutcome::Fails(violation) => {
                            report.satisfied += 1;
                            report.counterexample = Some(Counterexample {
                                source: n1.clone(),
                                target: n2.clone(),
                                witness: Witness {
                                    map: t.clone(),
                                    params: params.clone(),
                                    violation,
                                },
                            });
                            return Ok(report);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
