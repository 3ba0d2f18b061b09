//! End-to-end classification: from a defining graph to the exact degree of
//! the Dehn function of its Bestvina-Brady group, with witnesses.
//!
//! The group is finitely presented exactly when the flag complex is simply
//! connected. Given that, the degree is the largest of:
//! 1 always; 2 if the graph is not a tree; 3 if some maximal reducible
//! subgraph is essential; 4 if some maximal reducible subgraph has a
//! non-simply-connected flag complex.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus;
use crate::graph::SimplicialGraph;
use crate::homology::{simply_connected_status, ScStatus};
use crate::reducible::{
    essential_maximal_reducible, non_simply_connected_maximal_reducible, MaximalReducibleSet,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub d1_status: ScStatus,
    pub is_tree: bool,
    /// Witness for "some maximal reducible subgraph is essential".
    pub essential_witness: Option<MaximalReducibleSet>,
    /// Witness for "some maximal reducible subgraph has non-simply-connected
    /// flag complex".
    pub non_simply_connected_witness: Option<MaximalReducibleSet>,
    /// Degree of the polynomial Dehn function, in {1,2,3,4}.
    pub exponent: u8,
    /// A degree >= 3 obstructs any CAT(0) structure on the group.
    pub cat0_obstructed: bool,
    /// Without an essential maximal reducible subgraph, the asymptotic
    /// cones of the group are simply connected.
    pub cones_simply_connected: bool,
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("flag complex is not simply connected: the group is not finitely presented")]
    NotFinitelyPresented { status: ScStatus },
    #[error("simple connectivity of the flag complex could not be verified within budget")]
    D1Unverified { partial: Box<ClassificationReport> },
}

/// Classify the Dehn function of the Bestvina-Brady group of `g`.
pub fn dehn_exponent(g: &SimplicialGraph, pi1_budget: usize) -> Result<ClassificationReport, ClassifyError> {
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    let d1_status = simply_connected_status(g, pi1_budget);
    if d1_status.is_refuted() {
        return Err(ClassifyError::NotFinitelyPresented { status: d1_status });
    }

    let is_tree = g.is_tree();
    let essential_witness = essential_maximal_reducible(g);
    let non_simply_connected_witness = non_simply_connected_maximal_reducible(g);
    let has_d3 = essential_witness.is_some();
    let has_d4 = non_simply_connected_witness.is_some();
    let exponent = if has_d4 {
        4
    } else if has_d3 {
        3
    } else if !is_tree {
        2
    } else {
        1
    };
    let report = ClassificationReport {
        d1_status: d1_status.clone(),
        is_tree,
        essential_witness,
        non_simply_connected_witness,
        exponent,
        cat0_obstructed: has_d3,
        cones_simply_connected: !has_d3,
    };
    if !d1_status.is_verified() {
        return Err(ClassifyError::D1Unverified {
            partial: Box::new(report),
        });
    }
    Ok(report)
}

/// Build the suspension of a path with `len` edges and classify it.
/// The result is 3 for paths of length at least 3, and 2 otherwise.
pub fn classify_suspension_of_path(len: usize) -> u8 {
    let g = corpus::suspension_of_path(len);
    dehn_exponent(&g, crate::homology::DEFAULT_PI1_BUDGET)
        .expect("suspensions of paths have simply connected flag complexes")
        .exponent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::DEFAULT_PI1_BUDGET;

    #[test]
    fn corpus_classification() {
        let report = dehn_exponent(&corpus::p4(), DEFAULT_PI1_BUDGET).unwrap();
        assert_eq!(report.exponent, 1);
        assert!(report.is_tree);

        assert_eq!(dehn_exponent(&corpus::gamma1(), DEFAULT_PI1_BUDGET).unwrap().exponent, 3);
        assert_eq!(dehn_exponent(&corpus::gamma2(), DEFAULT_PI1_BUDGET).unwrap().exponent, 4);
        assert_eq!(dehn_exponent(&corpus::gamma3(), DEFAULT_PI1_BUDGET).unwrap().exponent, 2);
        assert_eq!(dehn_exponent(&corpus::k3(), DEFAULT_PI1_BUDGET).unwrap().exponent, 2);
        assert_eq!(dehn_exponent(&corpus::oct(), DEFAULT_PI1_BUDGET).unwrap().exponent, 2);
    }

    #[test]
    fn c4_is_not_finitely_presented() {
        match dehn_exponent(&corpus::c4(), DEFAULT_PI1_BUDGET) {
            Err(ClassifyError::NotFinitelyPresented { status }) => assert!(status.is_refuted()),
            other => panic!("expected NotFinitelyPresented, got {other:?}"),
        }
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = SimplicialGraph::new(&["a", "b"], &[]).unwrap();
        assert!(matches!(
            dehn_exponent(&g, DEFAULT_PI1_BUDGET),
            Err(ClassifyError::Disconnected)
        ));
    }

    #[test]
    fn suspension_family() {
        assert_eq!(classify_suspension_of_path(1), 2);
        assert_eq!(classify_suspension_of_path(2), 2);
        assert_eq!(classify_suspension_of_path(3), 3);
        assert_eq!(classify_suspension_of_path(5), 3);
    }

    #[test]
    fn corollary_flags() {
        let r1 = dehn_exponent(&corpus::gamma1(), DEFAULT_PI1_BUDGET).unwrap();
        assert!(r1.cat0_obstructed);
        assert!(!r1.cones_simply_connected);
        let r3 = dehn_exponent(&corpus::gamma3(), DEFAULT_PI1_BUDGET).unwrap();
        assert!(!r3.cat0_obstructed);
        assert!(r3.cones_simply_connected);
    }
}
