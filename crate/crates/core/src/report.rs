//! Serializable report documents with deterministic field and key order.
//!
//! Reports are rendered from the in-memory results into plain structs of
//! strings and sorted maps, so `serde_json::to_string_pretty` output is
//! byte-identical across runs and worker counts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::fincat::FinCategory;
use crate::homotopy::HomotopyPartition;
use crate::hstruct::{AxiomReport, HomotopicalStructure, AXIOM_IV_SCOPE};

#[derive(Debug, Clone, Serialize)]
pub struct UnaryAxiomDoc {
    pub pass: bool,
    pub witnesses: BTreeMap<String, String>,
    pub counterexamples: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PastingWitnessDoc {
    pub s: String,
    pub t: String,
    pub h: String,
    pub h_star: String,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PastingCounterexampleDoc {
    pub s: String,
    pub t: String,
    pub h: String,
    pub h_star: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PastingAxiomDoc {
    pub pass: bool,
    pub witnesses: Vec<PastingWitnessDoc>,
    pub counterexamples: Vec<PastingCounterexampleDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftAxiomDoc {
    pub pass: bool,
    pub witnesses: BTreeMap<String, String>,
    pub counterexamples: Vec<String>,
}

/// Full axiom report as written to disk.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReportDoc {
    pub pass: bool,
    pub base: Vec<String>,
    pub scope_note: String,
    pub axiom_i: UnaryAxiomDoc,
    pub axiom_ii: UnaryAxiomDoc,
    pub axiom_iii: PastingAxiomDoc,
    pub axiom_iv: LiftAxiomDoc,
}

impl AxiomReportDoc {
    pub fn build(cat: &FinCategory, hs: &HomotopicalStructure, report: &AxiomReport) -> Self {
        let obj = |x| cat.object_name(x).to_string();
        let mor = |m| cat.morphism_name(m).to_string();
        AxiomReportDoc {
            pass: report.pass(),
            base: hs.base().iter().map(|&s| obj(s)).collect(),
            scope_note: AXIOM_IV_SCOPE.to_string(),
            axiom_i: UnaryAxiomDoc {
                pass: report.axiom_i.pass(),
                witnesses: report.axiom_i.witnesses.iter().map(|(&s, &p)| (obj(s), mor(p))).collect(),
                counterexamples: report.axiom_i.counterexamples.iter().map(|&s| obj(s)).collect(),
            },
            axiom_ii: UnaryAxiomDoc {
                pass: report.axiom_ii.pass(),
                witnesses: report.axiom_ii.witnesses.iter().map(|(&s, &k)| (obj(s), mor(k))).collect(),
                counterexamples: report.axiom_ii.counterexamples.iter().map(|&s| obj(s)).collect(),
            },
            axiom_iii: PastingAxiomDoc {
                pass: report.axiom_iii.pass(),
                witnesses: report
                    .axiom_iii
                    .entries
                    .iter()
                    .map(|e| PastingWitnessDoc {
                        s: obj(e.s),
                        t: obj(e.t),
                        h: mor(e.h),
                        h_star: mor(e.h_star),
                        witness: mor(e.witness),
                    })
                    .collect(),
                counterexamples: report
                    .axiom_iii
                    .counterexamples
                    .iter()
                    .map(|&(s, t, h, h_star)| PastingCounterexampleDoc {
                        s: obj(s),
                        t: obj(t),
                        h: mor(h),
                        h_star: mor(h_star),
                    })
                    .collect(),
            },
            axiom_iv: LiftAxiomDoc {
                pass: report.axiom_iv.pass(),
                witnesses: report.axiom_iv.witnesses.iter().map(|(&u, &w)| (mor(u), mor(w))).collect(),
                counterexamples: report.axiom_iv.counterexamples.iter().map(|&u| mor(u)).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessEdgeDoc {
    pub phi: String,
    pub psi: String,
    pub h: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RawRelationDoc {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
}

/// One hom-set partition as written to disk.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionDoc {
    pub src: String,
    pub dst: String,
    pub classes: Vec<Vec<String>>,
    pub witness_edges: Vec<WitnessEdgeDoc>,
    pub raw_relation: RawRelationDoc,
}

impl PartitionDoc {
    pub fn build(cat: &FinCategory, partition: &HomotopyPartition) -> Self {
        PartitionDoc {
            src: cat.object_name(partition.src).to_string(),
            dst: cat.object_name(partition.dst).to_string(),
            classes: partition
                .classes
                .iter()
                .map(|c| c.iter().map(|&m| cat.morphism_name(m).to_string()).collect())
                .collect(),
            witness_edges: partition
                .witness_edges
                .iter()
                .map(|w| WitnessEdgeDoc {
                    phi: cat.morphism_name(w.phi).to_string(),
                    psi: cat.morphism_name(w.psi).to_string(),
                    h: cat.morphism_name(w.h).to_string(),
                })
                .collect(),
            raw_relation: RawRelationDoc {
                reflexive: partition.raw_laws.reflexive,
                symmetric: partition.raw_laws.symmetric,
                transitive: partition.raw_laws.transitive,
            },
        }
    }
}

pub fn to_json_pretty<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("report serializes")
}
