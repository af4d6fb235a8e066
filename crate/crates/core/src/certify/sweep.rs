//! Milnor fiber sweeps: one vanishing run per eigenvalue order that survives
//! the order filter, with outside results kept as labelled assumptions.

use std::collections::BTreeMap;

use super::{certify_vanishing, Citation, CertifyOptions, Criterion, Status, SystemInput, VanishingReport};
use crate::arrangement::{Arrangement, IntersectionLattice};
use crate::error::Result;
use crate::localsys::milnor_order_filter;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderOutcome {
    Certified(Criterion),
    ExternallyExcluded(String),
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct OrderResult {
    pub order: u32,
    pub outcome: OrderOutcome,
    /// Order whose run is shared, when the partition repeats an earlier one.
    pub same_partition_as: Option<u32>,
    pub report: VanishingReport,
    pub citation: Option<Citation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aggregate {
    /// Every surviving order is certified or excluded.
    Identity,
    Undetermined(Vec<(u32, Option<Citation>)>),
}

impl Aggregate {
    pub fn verdict(&self) -> &'static str {
        match self {
            Aggregate::Identity => "monodromy identity on H¹",
            Aggregate::Undetermined(_) => "undetermined",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MilnorReport {
    pub arrangement: String,
    pub orders: Vec<OrderResult>,
    pub aggregate: Aggregate,
    pub external_assumptions: BTreeMap<u32, String>,
}

/// Eigenspace dimensions for order-3 eigenvalues on Ceva(m) arrangements,
/// which the vanishing criteria cannot reach.
pub fn ceva_citations(m: u32) -> BTreeMap<u32, Citation> {
    let dimension = if m.is_multiple_of(3) { 2 } else { 1 };
    BTreeMap::from([(
        3,
        Citation {
            dimension,
            source: format!("known dimension of the order-3 Milnor fiber eigenspace of Ceva({m})"),
        },
    )])
}

pub fn milnor_sweep(
    arrangement: &Arrangement,
    lattice: &IntersectionLattice,
    options: &CertifyOptions,
) -> Result<MilnorReport> {
    let mut seen: BTreeMap<Vec<usize>, (u32, VanishingReport)> = BTreeMap::new();
    let mut orders = Vec::new();
    for k in milnor_order_filter(lattice) {
        let system = SystemInput::milnor(lattice, k)?;
        let (report, shared) = match seen.get(&system.partition.t_eq1) {
            Some((k0, r)) => {
                let mut r = r.clone();
                r.system = system.description.clone();
                (r, Some(*k0))
            }
            None => {
                let r = certify_vanishing(arrangement, lattice, &system, options);
                seen.insert(system.partition.t_eq1.clone(), (k, r.clone()));
                (r, None)
            }
        };
        let outcome = match (report.status, report.criterion, options.external_assumptions.get(&k)) {
            (Status::VanishingCertified, Some(c), _) => OrderOutcome::Certified(c),
            (_, _, Some(src)) => OrderOutcome::ExternallyExcluded(src.clone()),
            _ => OrderOutcome::Undetermined,
        };
        orders.push(OrderResult {
            order: k,
            outcome,
            same_partition_as: shared,
            report,
            citation: options.citations.get(&k).cloned(),
        });
    }
    let open: Vec<(u32, Option<Citation>)> = orders
        .iter()
        .filter(|o| o.outcome == OrderOutcome::Undetermined)
        .map(|o| (o.order, o.citation.clone()))
        .collect();
    Ok(MilnorReport {
        arrangement: arrangement.label().to_string(),
        orders,
        aggregate: if open.is_empty() {
            Aggregate::Identity
        } else {
            Aggregate::Undetermined(open)
        },
        external_assumptions: options.external_assumptions.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{gen_ceva, intersection_lattice};

    #[test]
    fn ceva_five_leaves_order_three_open() {
        let a = gen_ceva(5).unwrap();
        let l = intersection_lattice(&a);
        let options = CertifyOptions {
            citations: ceva_citations(5),
            ..Default::default()
        };
        let r = milnor_sweep(&a, &l, &options).unwrap();
        let got: Vec<(u32, OrderOutcome)> = r.orders.iter().map(|o| (o.order, o.outcome.clone())).collect();
        assert_eq!(
            got,
            vec![
                (3, OrderOutcome::Undetermined),
                (5, OrderOutcome::Certified(Criterion::SingleBadPoint))
            ]
        );
        let Aggregate::Undetermined(open) = &r.aggregate else { panic!() };
        assert_eq!(open[0].1.as_ref().unwrap().dimension, 1);
    }

    #[test]
    fn assumptions_close_the_sweep() {
        let a = gen_ceva(4).unwrap();
        let l = intersection_lattice(&a);
        let options = CertifyOptions {
            external_assumptions: BTreeMap::from([(3, "outside result".to_string())]),
            ..Default::default()
        };
        let r = milnor_sweep(&a, &l, &options).unwrap();
        assert_eq!(r.aggregate, Aggregate::Identity);
        assert!(r
            .orders
            .iter()
            .any(|o| o.outcome == OrderOutcome::ExternallyExcluded("outside result".into())));
    }
}
