//! Machine-readable reports: stable JSON shapes for verdicts, structure
//! summaries, algorithm traces and steady-state witnesses. Rationals
//! serialize as `p/q` strings.

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::classify::{MssVerdict, Witness};
use crate::defone::DefOneOutcome;
use crate::dynamics::{CountCertainty, SteadyStateSet};
use crate::model::Network;
use crate::parser::{render_network, NetworkDocument};
use crate::rational_string;
use crate::structure::{deficiency_report, linkage_structure, regularity_report};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema_version: String,
    /// Canonical DSL text; reparsing yields the analyzed network.
    pub network_echo: String,
    pub structure: StructureSummary,
    pub verdict: VerdictReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steady_states: Option<SteadyStateReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StructureSummary {
    pub species: Vec<String>,
    pub complexes: Vec<String>,
    pub linkage_classes: Vec<Vec<String>>,
    pub terminal_strong_classes: Vec<Vec<String>>,
    pub deficiency: DeficiencySummary,
    pub regularity: RegularitySummary,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DeficiencySummary {
    pub complexes: usize,
    pub linkage_classes: usize,
    pub stoich_dimension: usize,
    pub delta: i64,
    pub per_linkage: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RegularitySummary {
    pub positively_dependent: bool,
    pub one_terminal_per_linkage: bool,
    pub cut_pair_disconnects: bool,
    pub regular: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerdictReport {
    /// "MSS" | "NoMSS" | "Inconclusive"
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    pub checklist: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atom: Option<AtomReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AtomReport {
    pub reaction: String,
    pub species: Vec<String>,
    pub form: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EmbeddingReport {
    pub kept_species: Vec<String>,
    pub kept_reactions: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TraceReport {
    pub step1_g: Vec<GEntry>,
    pub passes: Vec<PassReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GEntry {
    pub complex: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PassReport {
    pub reversed_sign: bool,
    pub step2_cut_relations: Vec<String>,
    pub step3_partitions: Vec<PartitionReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PartitionReport {
    pub upper: Vec<String>,
    pub middle: Vec<String>,
    pub lower: Vec<String>,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SteadyStateReport {
    /// "Exact" | "NumericIsolated"
    pub certainty: String,
    pub rates: Vec<RateEntry>,
    pub states: Vec<StateReport>,
    pub nondegenerate_count: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RateEntry {
    pub reaction: String,
    pub rate: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StateReport {
    pub coords: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<String>>,
    pub degenerate: bool,
    pub residual: f64,
}

fn rationals(v: &[BigRational]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

pub fn structure_summary(n: &Network) -> StructureSummary {
    let links = linkage_structure(n);
    let rep = deficiency_report(n);
    let reg = regularity_report(n);
    let names = |class: &[usize]| -> Vec<String> {
        class
            .iter()
            .map(|&c| n.complex_string(&n.complexes()[c]))
            .collect()
    };
    StructureSummary {
        species: n.species().to_vec(),
        complexes: n
            .complexes()
            .iter()
            .map(|c| n.complex_string(c))
            .collect(),
        linkage_classes: links.linkage_classes.iter().map(|c| names(c)).collect(),
        terminal_strong_classes: links.terminal_classes().map(|c| names(c)).collect(),
        deficiency: DeficiencySummary {
            complexes: rep.n,
            linkage_classes: rep.l,
            stoich_dimension: rep.d,
            delta: rep.delta,
            per_linkage: rep.per_linkage,
        },
        regularity: RegularitySummary {
            positively_dependent: reg.positively_dependent,
            one_terminal_per_linkage: reg.one_terminal_per_linkage,
            cut_pair_disconnects: reg.cut_pair_disconnects,
            regular: reg.regular,
        },
    }
}

pub fn verdict_report(n: &Network, verdict: &MssVerdict) -> VerdictReport {
    let mut out = VerdictReport {
        outcome: verdict.outcome.to_string(),
        provenance: verdict.provenance.map(|p| p.to_string()),
        checklist: verdict.checklist.clone(),
        atom: None,
        embedding: None,
        mu: None,
    };
    match &verdict.witness {
        Witness::Atom(w) => {
            out.atom = Some(AtomReport {
                reaction: n.reaction_string(&w.reaction),
                species: w
                    .species_subset
                    .iter()
                    .map(|&i| n.species()[i].clone())
                    .collect(),
                form: w.form.to_string(),
            });
        }
        Witness::Embedded(w) => {
            out.embedding = Some(EmbeddingReport {
                kept_species: w
                    .keep_species
                    .iter()
                    .map(|&i| n.species()[i].clone())
                    .collect(),
                kept_reactions: w
                    .keep_reactions
                    .iter()
                    .map(|r| n.reaction_string(r))
                    .collect(),
            });
        }
        Witness::Mu(mu) => out.mu = Some(rationals(mu)),
        Witness::None => {}
    }
    out
}

pub fn trace_report(n: &Network, out: &DefOneOutcome) -> TraceReport {
    let links = crate::structure::linkage_structure(n);
    let name = |c: usize| n.complex_string(&n.complexes()[c]);
    let step1_g = out.passes[0]
        .g
        .0
        .iter()
        .enumerate()
        .map(|(c, v)| GEntry {
            complex: name(c),
            value: v.to_string(),
        })
        .collect();
    let passes = out
        .passes
        .iter()
        .map(|pass| PassReport {
            reversed_sign: pass.reversed_sign,
            step2_cut_relations: crate::defone::cut_pair_relations(n, &links, &pass.g)
                .iter()
                .map(|r| {
                    let op = match r.sign {
                        1 => ">",
                        -1 => "<",
                        _ => "=",
                    };
                    format!("({} - {}) . mu {} 0", name(r.p), name(r.q), op)
                })
                .collect(),
            step3_partitions: pass
                .traces
                .iter()
                .map(|t| PartitionReport {
                    upper: t.partition.upper.iter().map(|&c| name(c)).collect(),
                    middle: t.partition.middle.iter().map(|&c| name(c)).collect(),
                    lower: t.partition.lower.iter().map(|&c| name(c)).collect(),
                    feasible: t.feasible,
                    mu: t.mu.as_ref().map(|m| rationals(m)),
                })
                .collect(),
        })
        .collect();
    TraceReport { step1_g, passes }
}

pub fn steady_state_report(
    n: &Network,
    rates: &[(crate::model::Reaction, BigRational)],
    set: &SteadyStateSet,
) -> SteadyStateReport {
    SteadyStateReport {
        certainty: match set.certainty {
            CountCertainty::Exact => "Exact".to_string(),
            CountCertainty::NumericIsolated => "NumericIsolated".to_string(),
        },
        rates: rates
            .iter()
            .map(|(r, k)| RateEntry {
                reaction: n.reaction_string(r),
                rate: rational_string(k),
            })
            .collect(),
        states: set
            .states
            .iter()
            .map(|s| StateReport {
                coords: s.coords.clone(),
                exact: s.exact.as_ref().map(|e| rationals(e)),
                degenerate: s.degenerate,
                residual: s.residual,
            })
            .collect(),
        nondegenerate_count: set.nondegenerate_count(),
    }
}

/// Assembles the full report for a parsed document and its verdict.
pub fn build_report(
    doc: &NetworkDocument,
    verdict: &MssVerdict,
    trace: Option<TraceReport>,
    steady_states: Option<SteadyStateReport>,
) -> Report {
    Report {
        schema_version: SCHEMA_VERSION.to_string(),
        network_echo: render_network(doc),
        structure: structure_summary(&doc.network),
        verdict: verdict_report(&doc.network, verdict),
        trace,
        steady_states,
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}
