//! Runs both sides of the reduction on one NAE instance and compares them:
//! brute-force NAE satisfiability against the partition search on the
//! reduction graph.

use std::fmt;

use thiserror::Error;

use crate::nae::{is_satisfied_by, solve_brute_force, NaeError, NaeInstance};
use crate::reduction::{build_reduction, ReductionError};
use crate::solver::{decide_partition, verify_witness, Budget, Decision, PartitionWitness};
use crate::witness::{
    build_witness_from_assignment, check_clause_gadget_properties, check_variable_monochrome,
    extract_assignment_from_witness,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error(transparent)]
    Nae(#[from] NaeError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionVerdict {
    Yes,
    No,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    Disagree,
    Inconclusive,
}

/// Checks run on a witness: accepted by the verifier, both structural
/// reports all-true.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessChecks {
    pub accepted: bool,
    pub gadget_properties: bool,
    pub variable_monochrome: bool,
}

impl WitnessChecks {
    pub fn ok(&self) -> bool {
        self.accepted && self.gadget_properties && self.variable_monochrome
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossValidation {
    pub solver_witness: WitnessChecks,
    /// The coloring read off the solver's witness satisfies the instance.
    pub extracted_satisfies: bool,
    pub built_witness: WitnessChecks,
    /// Reading the built witness back returns the NAE model.
    pub round_trip: bool,
}

impl CrossValidation {
    pub fn ok(&self) -> bool {
        self.solver_witness.ok() && self.extracted_satisfies && self.built_witness.ok() && self.round_trip
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub clauses: usize,
    pub nae_satisfiable: bool,
    pub partition: PartitionVerdict,
    pub nodes: u64,
    pub agreement: Agreement,
    /// Present when both sides said yes.
    pub cross_validation: Option<CrossValidation>,
}

impl EquivalenceReport {
    /// Agreement (or an honest budget stop) with every cross-check passing.
    pub fn consistent(&self) -> bool {
        self.agreement != Agreement::Disagree && self.cross_validation.as_ref().is_none_or(CrossValidation::ok)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nae = if self.nae_satisfiable { "SAT" } else { "UNSAT" };
        writeln!(f, "nae: {nae}")?;
        let part = match self.partition {
            PartitionVerdict::Yes => "Yes",
            PartitionVerdict::No => "No",
            PartitionVerdict::BudgetExhausted => "budget exhausted",
        };
        writeln!(f, "partition: {part} ({} nodes)", self.nodes)?;
        if let Some(cv) = &self.cross_validation {
            writeln!(
                f,
                "cross-validation: solver witness {}, extracted coloring {}, built witness {}, round trip {}",
                yes_no(cv.solver_witness.ok()),
                yes_no(cv.extracted_satisfies),
                yes_no(cv.built_witness.ok()),
                yes_no(cv.round_trip)
            )?;
        }
        match self.agreement {
            Agreement::Agree => writeln!(f, "agree: {nae}/{part}"),
            Agreement::Disagree => writeln!(f, "DISAGREE: nae {nae}, partition {part}"),
            Agreement::Inconclusive => writeln!(f, "inconclusive (budget)"),
        }
    }
}

fn witness_checks(art: &crate::reduction::ReductionArtifact, w: &PartitionWitness) -> WitnessChecks {
    let accepted = matches!(verify_witness(art.graph(), art.b(), art.r(), w), Ok(v) if v.is_accept());
    WitnessChecks {
        accepted,
        gadget_properties: check_clause_gadget_properties(art, w).all_true(),
        variable_monochrome: check_variable_monochrome(art, w).all_true(),
    }
}

/// Decides the instance both ways and cross-validates when both say yes.
/// The partition search never sees the NAE answer.
pub fn equivalence_test(inst: &NaeInstance, budget: Budget) -> Result<EquivalenceReport, HarnessError> {
    let art = build_reduction(inst)?;
    let model = solve_brute_force(inst)?;
    let search = decide_partition(art.graph(), art.b(), art.r(), budget).expect("reduction targets fit the graph");

    let partition = match &search.decision {
        Decision::Yes(_) => PartitionVerdict::Yes,
        Decision::No => PartitionVerdict::No,
        Decision::BudgetExhausted => PartitionVerdict::BudgetExhausted,
    };
    let agreement = match (model.is_some(), partition) {
        (_, PartitionVerdict::BudgetExhausted) => Agreement::Inconclusive,
        (true, PartitionVerdict::Yes) | (false, PartitionVerdict::No) => Agreement::Agree,
        _ => Agreement::Disagree,
    };
    let cross_validation = match (&model, &search.decision) {
        (Some(a), Decision::Yes(found)) => {
            let extracted = extract_assignment_from_witness(&art, found).ok();
            let extracted_satisfies = extracted
                .as_ref()
                .is_some_and(|x| is_satisfied_by(inst, x).unwrap_or(false));
            let (built_witness, round_trip) = match build_witness_from_assignment(&art, a) {
                Ok(built) => {
                    let back = extract_assignment_from_witness(&art, &built).ok();
                    let round_trip = back.is_some_and(|b| {
                        (1..=inst.variable_count())
                            .filter(|&x| !inst.occurrences(x).is_empty())
                            .all(|x| b.get(x) == a.get(x))
                    });
                    (witness_checks(&art, &built), round_trip)
                }
                Err(_) => (
                    WitnessChecks {
                        accepted: false,
                        gadget_properties: false,
                        variable_monochrome: false,
                    },
                    false,
                ),
            };
            Some(CrossValidation {
                solver_witness: witness_checks(&art, found),
                extracted_satisfies,
                built_witness,
                round_trip,
            })
        }
        _ => None,
    };
    Ok(EquivalenceReport {
        clauses: inst.clause_count(),
        nae_satisfiable: model.is_some(),
        partition,
        nodes: search.nodes,
        agreement,
        cross_validation,
    })
}
