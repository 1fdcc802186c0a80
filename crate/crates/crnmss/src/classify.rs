//! Theorem-level verdicts: deficiency theorems, the one-reaction
//! multistationarity criterion, atom detection, embedded-network search,
//! and the combined classification pipeline.

use std::fmt;

use num::BigRational;
use thiserror::Error;

use crate::defone::{self, DefOneError};
use crate::model::{Complex, Network, Reaction};
use crate::structure::{deficiency_report, linkage_structure};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("network is not fully open")]
    NotFullyOpen,
    #[error("network does not have exactly one non-flow reaction: {0}")]
    NotOneReaction(String),
    #[error("restriction leaves no reactions")]
    EmptyResult,
    #[error("atom network has no non-flow reactions")]
    AtomNotOpen,
    #[error("containment search budget of {0} node(s) exceeded")]
    BudgetExceeded(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Mss,
    NoMss,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Mss => write!(f, "MSS"),
            Outcome::NoMss => write!(f, "NoMSS"),
            Outcome::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    DefZeroThm,
    DefOneThm,
    OneReactionCriterion,
    DefOneAlgorithm,
    EmbeddedAtom,
    UserAtom,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::DefZeroThm => "DefZeroThm",
            Provenance::DefOneThm => "DefOneThm",
            Provenance::OneReactionCriterion => "OneReactionCriterion",
            Provenance::DefOneAlgorithm => "DefOneAlgorithm",
            Provenance::EmbeddedAtom => "EmbeddedAtom",
            Provenance::UserAtom => "UserAtom",
        };
        write!(f, "{s}")
    }
}

/// One of the two one-reaction atom families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomForm {
    /// `a1 X -> a2 X` with `a2 > a1 > 1`.
    SingleSpecies { a1: u32, a2: u32 },
    /// `X + Y -> b1 X + b2 Y` with `b1 > 1`, `b2 > 1`.
    TwoSpecies { b1: u32, b2: u32 },
}

impl AtomForm {
    /// The atom as a fully open network over its own species.
    pub fn network(&self) -> Network {
        match *self {
            AtomForm::SingleSpecies { a1, a2 } => {
                Network::one_reaction_fully_open(&[a1], &[a2], false).unwrap()
            }
            AtomForm::TwoSpecies { b1, b2 } => {
                Network::one_reaction_fully_open(&[1, 1], &[b1, b2], false).unwrap()
            }
        }
    }
}

impl fmt::Display for AtomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AtomForm::SingleSpecies { a1, a2 } => write!(f, "{a1}X -> {a2}X"),
            AtomForm::TwoSpecies { b1, b2 } => write!(f, "X + Y -> {b1}X + {b2}Y"),
        }
    }
}

/// A one-reaction atom located inside a host reaction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomWitness {
    pub reaction: Reaction,
    /// Host species indices retained by the embedding.
    pub species_subset: Vec<usize>,
    pub form: AtomForm,
}

/// A user-atom embedding: which reactions and species of the host survive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbedWitness {
    pub keep_species: Vec<usize>,
    pub keep_reactions: Vec<Reaction>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Atom(AtomWitness),
    Mu(Vec<BigRational>),
    Embedded(EmbedWitness),
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MssVerdict {
    pub outcome: Outcome,
    pub provenance: Option<Provenance>,
    pub witness: Witness,
    /// Human-readable record of the hypotheses checked on the way.
    pub checklist: Vec<String>,
    /// True when a containment search was cut short by the node budget.
    pub budget_exhausted: bool,
}

impl MssVerdict {
    fn inconclusive(checklist: Vec<String>) -> Self {
        MssVerdict {
            outcome: Outcome::Inconclusive,
            provenance: None,
            witness: Witness::None,
            checklist,
            budget_exhausted: false,
        }
    }
}

/// Deficiency Zero / Deficiency One Theorem screening. `NoMSS` when the
/// hypotheses of either theorem hold; otherwise `Inconclusive`.
pub fn deficiency_theorems_verdict(n: &Network) -> MssVerdict {
    let rep = deficiency_report(n);
    let links = linkage_structure(n);
    let mut checklist = vec![format!(
        "n={}, l={}, d={}, delta={}, per-linkage deltas {:?}",
        rep.n, rep.l, rep.d, rep.delta, rep.per_linkage
    )];

    let each_class_terminal = links
        .linkage_classes
        .iter()
        .all(|lc| links.is_terminal_class(lc));
    if rep.delta == 0 && each_class_terminal {
        checklist.push("deficiency zero and every linkage class terminal".into());
        return MssVerdict {
            outcome: Outcome::NoMss,
            provenance: Some(Provenance::DefZeroThm),
            witness: Witness::None,
            checklist,
            budget_exhausted: false,
        };
    }

    let one_terminal_each = links.linkage_classes.iter().all(|lc| {
        links
            .terminal_classes()
            .filter(|t| lc.contains(&t[0]))
            .count()
            == 1
    });
    let small_deltas = rep.per_linkage.iter().all(|&d| d <= 1);
    let sum_matches = rep.per_linkage_sum() == rep.delta;
    if one_terminal_each && small_deltas && sum_matches {
        checklist.push(
            "one terminal class per linkage class, per-linkage deficiencies <= 1 summing to delta"
                .into(),
        );
        return MssVerdict {
            outcome: Outcome::NoMss,
            provenance: Some(Provenance::DefOneThm),
            witness: Witness::None,
            checklist,
            budget_exhausted: false,
        };
    }
    checklist.push("deficiency theorem hypotheses not met".into());
    MssVerdict::inconclusive(checklist)
}

/// The forward non-flow reaction and reversibility of a one-reaction
/// fully open network.
pub fn one_reaction_shape(n: &Network) -> Result<(Reaction, bool), ClassifyError> {
    if !n.is_fully_open() {
        return Err(ClassifyError::NotFullyOpen);
    }
    let non_flow = n.non_flow_reactions();
    match non_flow.len() {
        1 => Ok((non_flow[0].clone(), false)),
        2 if *non_flow[1] == non_flow[0].reverse() => Ok((non_flow[0].clone(), true)),
        k => Err(ClassifyError::NotOneReaction(format!(
            "{k} non-flow reactions"
        ))),
    }
}

/// Exact multistationarity criterion for one-reaction fully open
/// networks: MSS iff `sum_{i: b_i > a_i} a_i > 1`, or additionally for a
/// reversible reaction `sum_{i: a_i > b_i} b_i > 1`.
pub fn one_reaction_mss(n: &Network) -> Result<MssVerdict, ClassifyError> {
    let (fwd, reversible) = one_reaction_shape(n)?;
    let a = fwd.reactant.coeffs();
    let b = fwd.product.coeffs();
    let fwd_sum: u64 = a
        .iter()
        .zip(b)
        .filter(|(ai, bi)| bi > ai)
        .map(|(&ai, _)| ai as u64)
        .sum();
    let rev_sum: u64 = a
        .iter()
        .zip(b)
        .filter(|(ai, bi)| ai > bi)
        .map(|(_, &bi)| bi as u64)
        .sum();
    let mss = fwd_sum > 1 || (reversible && rev_sum > 1);
    let mut checklist = vec![format!(
        "sum_(b_i > a_i) a_i = {fwd_sum}; sum_(a_i > b_i) b_i = {rev_sum}; reversible = {reversible}"
    )];
    if mss {
        let witness = find_one_reaction_atoms(n)
            .into_iter()
            .next()
            .map(Witness::Atom)
            .expect("multistationary one-reaction network must contain an atom");
        Ok(MssVerdict {
            outcome: Outcome::Mss,
            provenance: Some(Provenance::OneReactionCriterion),
            witness,
            checklist,
            budget_exhausted: false,
        })
    } else {
        checklist.push("criterion sums do not exceed 1".into());
        Ok(MssVerdict {
            outcome: Outcome::NoMss,
            provenance: Some(Provenance::OneReactionCriterion),
            witness: Witness::None,
            checklist,
            budget_exhausted: false,
        })
    }
}

/// Species appearing in both complexes of `r` with a strictly larger
/// product coefficient.
pub fn autocatalytic_species(r: &Reaction) -> Vec<usize> {
    r.reactant
        .coeffs()
        .iter()
        .zip(r.product.coeffs())
        .enumerate()
        .filter(|(_, (&a, &b))| a >= 1 && b > a)
        .map(|(i, _)| i)
        .collect()
}

/// The embedded network obtained by keeping only `keep_species` and
/// `keep_reactions`: removed species are deleted from every complex (a
/// complex losing all its species becomes 0), trivial reactions are
/// dropped, duplicates are merged, and species no longer appearing are
/// dropped from the species list.
pub fn embed_restrict(
    n: &Network,
    keep_species: &[usize],
    keep_reactions: &[Reaction],
) -> Result<Network, ClassifyError> {
    let project = |c: &Complex| Complex(keep_species.iter().map(|&i| c.coeffs()[i]).collect());
    let mut reactions = Vec::new();
    for r in keep_reactions {
        let pr = Reaction::new(project(&r.reactant), project(&r.product));
        if pr.reactant != pr.product {
            reactions.push(pr);
        }
    }
    if reactions.is_empty() {
        return Err(ClassifyError::EmptyResult);
    }
    // drop species that vanished from every surviving complex
    let used: Vec<usize> = (0..keep_species.len())
        .filter(|&j| {
            reactions
                .iter()
                .any(|r| r.reactant.coeffs()[j] > 0 || r.product.coeffs()[j] > 0)
        })
        .collect();
    let reactions: Vec<Reaction> = reactions
        .into_iter()
        .map(|r| {
            Reaction::new(
                Complex(used.iter().map(|&j| r.reactant.coeffs()[j]).collect()),
                Complex(used.iter().map(|&j| r.product.coeffs()[j]).collect()),
            )
        })
        .filter(|r| r.reactant != r.product)
        .collect();
    if reactions.is_empty() {
        return Err(ClassifyError::EmptyResult);
    }
    let species: Vec<String> = used
        .iter()
        .map(|&j| n.species()[keep_species[j]].clone())
        .collect();
    Network::new(species, reactions).map_err(|_| ClassifyError::EmptyResult)
}

/// Scans every non-flow reaction of a fully open network for the two
/// one-reaction atom families, in deterministic (reaction, species) order.
pub fn find_one_reaction_atoms(n: &Network) -> Vec<AtomWitness> {
    let mut out = Vec::new();
    for r in n.non_flow_reactions() {
        let a = r.reactant.coeffs();
        let b = r.product.coeffs();
        for j in 0..a.len() {
            if b[j] > a[j] && a[j] > 1 {
                out.push(AtomWitness {
                    reaction: r.clone(),
                    species_subset: vec![j],
                    form: AtomForm::SingleSpecies {
                        a1: a[j],
                        a2: b[j],
                    },
                });
            }
        }
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[i] == 1 && a[j] == 1 && b[i] > 1 && b[j] > 1 {
                    out.push(AtomWitness {
                        reaction: r.clone(),
                        species_subset: vec![i, j],
                        form: AtomForm::TwoSpecies {
                            b1: b[i],
                            b2: b[j],
                        },
                    });
                }
            }
        }
    }
    out
}

/// Per-species isomorphism signature: the multiset of coefficient pairs
/// this species takes across all reactions (invariant under renaming).
fn species_signatures(n: &Network) -> Vec<Vec<(u32, u32)>> {
    (0..n.species_count())
        .map(|i| {
            let mut sig: Vec<(u32, u32)> = n
                .reactions()
                .iter()
                .map(|r| (r.reactant.coeffs()[i], r.product.coeffs()[i]))
                .collect();
            sig.sort();
            sig
        })
        .collect()
}

/// True when the two networks differ only by a renaming of species.
pub fn networks_isomorphic(a: &Network, b: &Network) -> bool {
    if a.species_count() != b.species_count() || a.reactions().len() != b.reactions().len() {
        return false;
    }
    let s = a.species_count();
    let sig_a = species_signatures(a);
    let sig_b = species_signatures(b);
    // backtracking assignment of a-species to b-species
    fn assign(
        i: usize,
        s: usize,
        used: &mut Vec<bool>,
        perm: &mut Vec<usize>,
        sig_a: &[Vec<(u32, u32)>],
        sig_b: &[Vec<(u32, u32)>],
        a: &Network,
        b: &Network,
    ) -> bool {
        if i == s {
            let mapped: Vec<Reaction> = a
                .reactions()
                .iter()
                .map(|r| {
                    let map = |c: &Complex| {
                        let mut v = vec![0u32; s];
                        for (j, &coef) in c.coeffs().iter().enumerate() {
                            v[perm[j]] = coef;
                        }
                        Complex(v)
                    };
                    Reaction::new(map(&r.reactant), map(&r.product))
                })
                .collect();
            let mut mapped = mapped;
            mapped.sort();
            return mapped == b.reactions();
        }
        for j in 0..s {
            if !used[j] && sig_a[i] == sig_b[j] {
                used[j] = true;
                perm[i] = j;
                if assign(i + 1, s, used, perm, sig_a, sig_b, a, b) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    let mut used = vec![false; s];
    let mut perm = vec![0usize; s];
    assign(0, s, &mut used, &mut perm, &sig_a, &sig_b, a, b)
}

/// Containment-search budget: number of (reaction subset, species subset)
/// pairs examined. Overridable through the `CRNMSS_BUDGET` variable.
pub fn default_budget() -> usize {
    std::env::var("CRNMSS_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1_000_000)
}

fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (0..1u64 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    subsets
}

/// Searches for an embedded copy of `atom` (given without its flow
/// reactions) inside the fully open network `g`. Reaction subsets are
/// scanned in ascending size, then species-removal subsets in ascending
/// size; the first match in that order is returned.
pub fn contains_embedded(
    g: &Network,
    atom: &Network,
    budget: usize,
) -> Result<Option<EmbedWitness>, ClassifyError> {
    let atom_core: Vec<Reaction> = atom.non_flow_reactions().into_iter().cloned().collect();
    if atom_core.is_empty() {
        return Err(ClassifyError::AtomNotOpen);
    }
    let atom_net = Network::new(
        atom.species().to_vec(),
        atom_core.clone(),
    )
    .map_err(|_| ClassifyError::AtomNotOpen)?;
    // the atom, reduced to the species its core actually uses
    let atom_keep: Vec<usize> = (0..atom_net.species_count()).collect();
    let atom_net = embed_restrict(&atom_net, &atom_keep, &atom_core)
        .map_err(|_| ClassifyError::AtomNotOpen)?;

    let host_non_flow: Vec<Reaction> = g.non_flow_reactions().into_iter().cloned().collect();
    let s = g.species_count();
    if host_non_flow.len() > 20 || s > 20 {
        return Err(ClassifyError::BudgetExceeded(budget));
    }
    let reaction_subsets = subsets_by_size(host_non_flow.len());
    let removal_subsets = subsets_by_size(s);
    let mut examined = 0usize;
    for rs in &reaction_subsets {
        if rs.len() < atom_net.reactions().len() {
            continue;
        }
        let kept: Vec<Reaction> = rs.iter().map(|&i| host_non_flow[i].clone()).collect();
        for removal in &removal_subsets {
            examined += 1;
            if examined > budget {
                return Err(ClassifyError::BudgetExceeded(budget));
            }
            let keep_species: Vec<usize> =
                (0..s).filter(|i| !removal.contains(i)).collect();
            let image = match embed_restrict(g, &keep_species, &kept) {
                Ok(net) => net,
                Err(_) => continue,
            };
            // strictness: the image must be exactly the atom core (no
            // surviving reaction may have degenerated into a flow)
            if image.reactions().iter().any(|r| r.is_flow()) {
                continue;
            }
            if networks_isomorphic(&image, &atom_net) {
                return Ok(Some(EmbedWitness {
                    keep_species,
                    keep_reactions: kept,
                }));
            }
        }
    }
    Ok(None)
}

/// The combined pipeline: one-reaction criterion, deficiency theorems,
/// one-reaction atom scan, user atoms, Deficiency One Algorithm.
pub fn classify(n: &Network, user_atoms: &[Network], budget: usize) -> MssVerdict {
    // 1. one-reaction fully open networks are decided exactly
    if let Ok(verdict) = one_reaction_mss(n) {
        return verdict;
    }

    let mut checklist = Vec::new();
    let mut budget_hit = false;

    // 2. deficiency theorems
    let def = deficiency_theorems_verdict(n);
    checklist.extend(def.checklist.iter().cloned());
    if def.outcome == Outcome::NoMss {
        return MssVerdict { checklist, ..def };
    }

    if n.is_fully_open() {
        // 3. one-reaction atoms inside any non-flow reaction
        if let Some(atom) = find_one_reaction_atoms(n).into_iter().next() {
            checklist.push(format!("embedded one-reaction atom {}", atom.form));
            return MssVerdict {
                outcome: Outcome::Mss,
                provenance: Some(Provenance::EmbeddedAtom),
                witness: Witness::Atom(atom),
                checklist,
                budget_exhausted: false,
            };
        }
        checklist.push("no embedded one-reaction atom".into());

        // 4. user-supplied atom catalog
        for atom in user_atoms {
            match contains_embedded(n, atom, budget) {
                Ok(Some(witness)) => {
                    checklist.push("user atom embedded".into());
                    return MssVerdict {
                        outcome: Outcome::Mss,
                        provenance: Some(Provenance::UserAtom),
                        witness: Witness::Embedded(witness),
                        checklist,
                        budget_exhausted: false,
                    };
                }
                Ok(None) => checklist.push("user atom not embedded".into()),
                Err(e) => {
                    checklist.push(format!("user atom search aborted: {e}"));
                    if matches!(e, ClassifyError::BudgetExceeded(_)) {
                        budget_hit = true;
                    }
                }
            }
        }
    }

    // 5. the Deficiency One Algorithm, when its hypotheses hold
    let mut verdict = match defone::run_algorithm(n) {
        Ok(out) => {
            if out.admits_mss {
                checklist.push("deficiency one algorithm found a sign-compatible mu".into());
                MssVerdict {
                    outcome: Outcome::Mss,
                    provenance: Some(Provenance::DefOneAlgorithm),
                    witness: Witness::Mu(out.mu.unwrap()),
                    checklist,
                    budget_exhausted: false,
                }
            } else {
                checklist.push("deficiency one algorithm: every system infeasible".into());
                MssVerdict {
                    outcome: Outcome::NoMss,
                    provenance: Some(Provenance::DefOneAlgorithm),
                    witness: Witness::None,
                    checklist,
                    budget_exhausted: false,
                }
            }
        }
        Err(DefOneError::HypothesesFailed(msg)) => {
            checklist.push(format!("deficiency one algorithm not applicable: {msg}"));
            MssVerdict::inconclusive(checklist)
        }
        Err(e) => {
            checklist.push(format!("deficiency one algorithm aborted: {e}"));
            MssVerdict::inconclusive(checklist)
        }
    };
    verdict.budget_exhausted = budget_hit;
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u32]) -> Complex {
        Complex(v.to_vec())
    }

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    fn m_network(a: &[u32], b: &[u32]) -> Network {
        let fwd = Reaction::new(c(a), c(b));
        Network::new(names(&["A", "B"]), vec![fwd.clone(), fwd.reverse()])
            .unwrap()
            .fully_open_closure()
    }

    fn n_network(reactions: &[(&[u32], &[u32])]) -> Network {
        let rs = reactions
            .iter()
            .map(|(a, b)| Reaction::new(c(a), c(b)))
            .collect();
        Network::new(names(&["A", "B", "C", "D", "E"]), rs)
            .unwrap()
            .fully_open_closure()
    }

    // N1: A+B -> A+C, 2B -> A+D, A+2E -> 3E (fully open)
    fn n1() -> Network {
        n_network(&[
            (&[1, 1, 0, 0, 0], &[1, 0, 1, 0, 0]),
            (&[0, 2, 0, 0, 0], &[1, 0, 0, 1, 0]),
            (&[1, 0, 0, 0, 2], &[0, 0, 0, 0, 3]),
        ])
    }

    // N2: same but third reaction A+E -> 2E
    fn n2() -> Network {
        n_network(&[
            (&[1, 1, 0, 0, 0], &[1, 0, 1, 0, 0]),
            (&[0, 2, 0, 0, 0], &[1, 0, 0, 1, 0]),
            (&[1, 0, 0, 0, 1], &[0, 0, 0, 0, 2]),
        ])
    }

    // N3: first reaction reversed relative to N2
    fn n3() -> Network {
        n_network(&[
            (&[1, 0, 1, 0, 0], &[1, 1, 0, 0, 0]),
            (&[0, 2, 0, 0, 0], &[1, 0, 0, 1, 0]),
            (&[1, 0, 0, 0, 1], &[0, 0, 0, 0, 2]),
        ])
    }

    // the two-reaction atom {A -> A+B, 2B -> A}
    fn user_atom() -> Network {
        Network::new(
            names(&["A", "B"]),
            vec![
                Reaction::new(c(&[1, 0]), c(&[1, 1])),
                Reaction::new(c(&[0, 2]), c(&[1, 0])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn schlosser_family_verdicts() {
        let v1 = one_reaction_mss(&m_network(&[1, 1], &[2, 0])).unwrap();
        assert_eq!(v1.outcome, Outcome::NoMss);
        let v2 = one_reaction_mss(&m_network(&[2, 1], &[3, 0])).unwrap();
        assert_eq!(v2.outcome, Outcome::Mss);
        match &v2.witness {
            Witness::Atom(w) => {
                assert_eq!(w.form, AtomForm::SingleSpecies { a1: 2, a2: 3 });
                assert_eq!(w.species_subset, vec![0]);
            }
            w => panic!("unexpected witness {w:?}"),
        }
        let v3 = one_reaction_mss(&m_network(&[1, 2], &[3, 0])).unwrap();
        assert_eq!(v3.outcome, Outcome::NoMss);
    }

    #[test]
    fn one_reaction_shape_errors() {
        let not_open = Network::new(
            names(&["A", "B"]),
            vec![Reaction::new(c(&[1, 1]), c(&[2, 0]))],
        )
        .unwrap();
        assert_eq!(
            one_reaction_mss(&not_open).unwrap_err(),
            ClassifyError::NotFullyOpen
        );
        assert!(matches!(
            one_reaction_mss(&n1()).unwrap_err(),
            ClassifyError::NotOneReaction(_)
        ));
    }

    #[test]
    fn autocatalysis() {
        // A + B -> 2A + C
        let r = Reaction::new(c(&[1, 1, 0]), c(&[2, 0, 1]));
        assert_eq!(autocatalytic_species(&r), vec![0]);
        // A -> B
        let r = Reaction::new(c(&[1, 0, 0]), c(&[0, 1, 0]));
        assert!(autocatalytic_species(&r).is_empty());
        // 2A + B -> 3A
        let r = Reaction::new(c(&[2, 1, 0]), c(&[3, 0, 0]));
        assert_eq!(autocatalytic_species(&r), vec![0]);
        // 0 -> A is not autocatalytic in A
        let r = Reaction::new(c(&[0, 0, 0]), c(&[2, 0, 0]));
        assert!(autocatalytic_species(&r).is_empty());
    }

    #[test]
    fn embed_restrict_examples() {
        // A+C <-> B+C, A+D <-> 2E; removing {A, B} leaves D <-> 2E
        let r1 = Reaction::new(c(&[1, 0, 1, 0, 0]), c(&[0, 1, 1, 0, 0]));
        let r2 = Reaction::new(c(&[1, 0, 0, 1, 0]), c(&[0, 0, 0, 0, 2]));
        let n = Network::new(
            names(&["A", "B", "C", "D", "E"]),
            vec![r1.clone(), r1.reverse(), r2.clone(), r2.reverse()],
        )
        .unwrap();
        let keep: Vec<usize> = vec![2, 3, 4]; // C, D, E
        let out = embed_restrict(&n, &keep, &n.reactions().to_vec()).unwrap();
        assert_eq!(out.species(), &["D".to_string(), "E".to_string()]);
        assert_eq!(out.reactions().len(), 2);
        let d_to_2e = Reaction::new(c(&[1, 0]), c(&[0, 2]));
        assert!(out.has_reaction(&d_to_2e));
        assert!(out.is_reversible(&d_to_2e));

        // {A+B -> 2A} keeping only B: B -> 0
        let host = Network::new(
            names(&["A", "B"]),
            vec![Reaction::new(c(&[1, 1]), c(&[2, 0]))],
        )
        .unwrap();
        let out = embed_restrict(&host, &[1], host.reactions()).unwrap();
        assert_eq!(out.reactions().len(), 1);
        assert!(out.reactions()[0].product.is_zero());

        // keeping everything is the identity
        let out = embed_restrict(&host, &[0, 1], host.reactions()).unwrap();
        assert_eq!(out, host);
    }

    #[test]
    fn atom_scan_on_example_networks() {
        let atoms = find_one_reaction_atoms(&n1());
        assert_eq!(atoms.len(), 1);
        assert_eq!(atoms[0].form, AtomForm::SingleSpecies { a1: 2, a2: 3 });
        assert_eq!(atoms[0].species_subset, vec![4]); // species E
        assert!(find_one_reaction_atoms(&n2()).is_empty());
        assert!(find_one_reaction_atoms(&n3()).is_empty());
    }

    #[test]
    fn two_species_atom_scan() {
        // X + Y -> 2X + 3Y
        let n = Network::one_reaction_fully_open(&[1, 1], &[2, 3], false).unwrap();
        let atoms = find_one_reaction_atoms(&n);
        assert_eq!(atoms.len(), 1);
        assert_eq!(atoms[0].form, AtomForm::TwoSpecies { b1: 2, b2: 3 });
    }

    #[test]
    fn containment_finds_n3_witness() {
        let w = contains_embedded(&n3(), &user_atom(), default_budget())
            .unwrap()
            .expect("witness expected");
        // first witness: drop reaction A+E -> 2E, drop species C and D
        assert_eq!(w.keep_species, vec![0, 1, 4]);
        assert_eq!(w.keep_reactions.len(), 2);
        let dropped = Reaction::new(c(&[1, 0, 0, 0, 1]), c(&[0, 0, 0, 0, 2]));
        assert!(!w.keep_reactions.contains(&dropped));
    }

    #[test]
    fn containment_negative_on_n2() {
        assert!(contains_embedded(&n2(), &user_atom(), default_budget())
            .unwrap()
            .is_none());
    }

    #[test]
    fn containment_identity() {
        // any network's own non-flow core embeds trivially
        let g = n1();
        let core = Network::new(
            g.species().to_vec(),
            g.non_flow_reactions().into_iter().cloned().collect(),
        )
        .unwrap();
        assert!(contains_embedded(&g, &core, default_budget())
            .unwrap()
            .is_some());
    }

    #[test]
    fn containment_budget() {
        let err = contains_embedded(&n3(), &user_atom(), 3).unwrap_err();
        assert_eq!(err, ClassifyError::BudgetExceeded(3));
    }

    #[test]
    fn classify_pipeline() {
        let v = classify(&n1(), &[], default_budget());
        assert_eq!(v.outcome, Outcome::Mss);
        assert_eq!(v.provenance, Some(Provenance::EmbeddedAtom));

        let v = classify(&n2(), &[], default_budget());
        assert_eq!(v.outcome, Outcome::Inconclusive);

        let v = classify(&n3(), &[user_atom()], default_budget());
        assert_eq!(v.outcome, Outcome::Mss);
        assert_eq!(v.provenance, Some(Provenance::UserAtom));

        let v = classify(&n3(), &[], default_budget());
        assert_eq!(v.outcome, Outcome::Inconclusive);

        let v = classify(&m_network(&[2, 1], &[3, 0]), &[], default_budget());
        assert_eq!(v.outcome, Outcome::Mss);
        assert_eq!(v.provenance, Some(Provenance::OneReactionCriterion));
    }

    #[test]
    fn deficiency_screen_unimolecular_cases() {
        // both unimolecular: 0 <-> X1, 0 <-> X2, X1 -> X2: delta zero
        let n = Network::one_reaction_fully_open(&[1, 0], &[0, 1], false).unwrap();
        let v = deficiency_theorems_verdict(&n);
        assert_eq!(v.outcome, Outcome::NoMss);
        assert_eq!(v.provenance, Some(Provenance::DefZeroThm));

        // y_a unimolecular, y_b bimolecular, irreversible: def-one theorem
        let n = Network::one_reaction_fully_open(&[1, 0], &[0, 2], false).unwrap();
        let v = deficiency_theorems_verdict(&n);
        assert_eq!(v.outcome, Outcome::NoMss);
        assert_eq!(v.provenance, Some(Provenance::DefOneThm));

        // M2 is inconclusive for the deficiency theorems
        let v = deficiency_theorems_verdict(&m_network(&[2, 1], &[3, 0]));
        assert_eq!(v.outcome, Outcome::Inconclusive);
    }

    #[test]
    fn isomorphism_up_to_renaming() {
        let a = user_atom();
        // same atom with species swapped: B -> B+A, 2A -> B
        let b = Network::new(
            names(&["A", "B"]),
            vec![
                Reaction::new(c(&[0, 1]), c(&[1, 1])),
                Reaction::new(c(&[2, 0]), c(&[0, 1])),
            ],
        )
        .unwrap();
        assert!(networks_isomorphic(&a, &b));
        let other = Network::new(
            names(&["A", "B"]),
            vec![
                Reaction::new(c(&[1, 0]), c(&[1, 1])),
                Reaction::new(c(&[0, 2]), c(&[2, 0])),
            ],
        )
        .unwrap();
        assert!(!networks_isomorphic(&a, &other));
    }
}
