//! Exhaustive cross-validation over the one-reaction fully open family:
//! every decision path must agree on every case.

use crate::classify::{autocatalytic_species, find_one_reaction_atoms, one_reaction_mss, Outcome};
use crate::defone::{self, DefOneError};
use crate::model::Network;
use crate::structure::{deficiency_report, linkage_structure};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// One member of the enumerated family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepCase {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub reversible: bool,
}

/// Aggregate result of a sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub cases: usize,
    pub mss_cases: usize,
    pub algorithm_runs: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.cases += other.cases;
        self.mss_cases += other.mss_cases;
        self.algorithm_runs += other.algorithm_runs;
        self.failures.extend(other.failures);
        self
    }
}

/// All (a, b, reversible) triples with 1..=s_max species, coefficients
/// bounded by coeff_max, and a != b.
pub fn enumerate_cases(s_max: usize, coeff_max: u32) -> Vec<SweepCase> {
    let mut cases = Vec::new();
    for s in 1..=s_max {
        let total = (coeff_max as u64 + 1).pow(s as u32);
        let decode = |mut code: u64| -> Vec<u32> {
            let mut v = Vec::with_capacity(s);
            for _ in 0..s {
                v.push((code % (coeff_max as u64 + 1)) as u32);
                code /= coeff_max as u64 + 1;
            }
            v
        };
        for ca in 0..total {
            for cb in 0..total {
                if ca == cb {
                    continue;
                }
                let a = decode(ca);
                let b = decode(cb);
                // skip pairs whose single reaction is itself a flow
                let (ma, mb) = (molecularity(&a), molecularity(&b));
                if (ma == 0 && mb == 1) || (ma == 1 && mb == 0) {
                    continue;
                }
                for reversible in [false, true] {
                    cases.push(SweepCase {
                        a: a.clone(),
                        b: b.clone(),
                        reversible,
                    });
                }
            }
        }
    }
    cases
}

fn molecularity(v: &[u32]) -> u32 {
    v.iter().sum()
}

fn autocat_sum(a: &[u32], b: &[u32]) -> u64 {
    let r = crate::model::Reaction::new(
        crate::model::Complex(a.to_vec()),
        crate::model::Complex(b.to_vec()),
    );
    autocatalytic_species(&r)
        .into_iter()
        .map(|i| a[i] as u64)
        .sum()
}

/// Runs every cross-check on one case; returns the MSS verdict or a
/// description of the first inconsistency.
pub fn check_case(case: &SweepCase) -> Result<(bool, bool), String> {
    let label = format!(
        "a={:?} b={:?} rev={}",
        case.a, case.b, case.reversible
    );
    let net = Network::one_reaction_fully_open(&case.a, &case.b, case.reversible)
        .map_err(|e| format!("{label}: build failed: {e}"))?;

    let verdict = one_reaction_mss(&net).map_err(|e| format!("{label}: criterion: {e}"))?;
    let mss = match verdict.outcome {
        Outcome::Mss => true,
        Outcome::NoMss => false,
        Outcome::Inconclusive => return Err(format!("{label}: criterion inconclusive")),
    };

    // atoms are present exactly on the MSS cases
    let atoms = find_one_reaction_atoms(&net);
    if atoms.is_empty() == mss {
        return Err(format!(
            "{label}: criterion {mss} but atom count {}",
            atoms.len()
        ));
    }

    // autocatalysis restatement of the criterion
    let auto_mss = autocat_sum(&case.a, &case.b) >= 2
        || (case.reversible && autocat_sum(&case.b, &case.a) >= 2);
    if auto_mss != mss {
        return Err(format!("{label}: autocatalysis restatement disagrees"));
    }

    // reversible verdict = OR of the two irreversible halves
    if case.reversible {
        let fwd = Network::one_reaction_fully_open(&case.a, &case.b, false)
            .map_err(|e| format!("{label}: fwd half: {e}"))?;
        let rev = Network::one_reaction_fully_open(&case.b, &case.a, false)
            .map_err(|e| format!("{label}: rev half: {e}"))?;
        let fwd_mss = one_reaction_mss(&fwd)
            .map_err(|e| format!("{label}: fwd half: {e}"))?
            .outcome
            == Outcome::Mss;
        let rev_mss = one_reaction_mss(&rev)
            .map_err(|e| format!("{label}: rev half: {e}"))?
            .outcome
            == Outcome::Mss;
        if (fwd_mss || rev_mss) != mss {
            return Err(format!("{label}: reversible verdict is not the OR of halves"));
        }
    }

    check_deficiency_bookkeeping(&net, case, &label)?;

    // the algorithm, where its hypotheses hold
    let ran = match defone::run_algorithm(&net) {
        Ok(out) => {
            if out.admits_mss != mss {
                return Err(format!(
                    "{label}: algorithm says {} but criterion says {mss}",
                    out.admits_mss
                ));
            }
            true
        }
        Err(DefOneError::HypothesesFailed(_)) => {
            // hypotheses fail only in the unimolecular/zero cases, which
            // the deficiency theorems settle as NoMSS
            if mss {
                return Err(format!("{label}: hypotheses failed on an MSS case"));
            }
            false
        }
        Err(e) => return Err(format!("{label}: algorithm error: {e}")),
    };
    Ok((mss, ran))
}

/// Exact deficiency expectations for the one-reaction family: with both
/// non-flow complexes at-least-bimolecular, δ = 1 with two linkage
/// classes of deficiency 0 each; with exactly one unimolecular-or-zero
/// complex, δ = 1 and a single linkage class; with both, δ = 0.
fn check_deficiency_bookkeeping(
    net: &Network,
    case: &SweepCase,
    label: &str,
) -> Result<(), String> {
    let rep = deficiency_report(net);
    let links = linkage_structure(net);
    let s = case.a.len();
    let small = |v: &[u32]| molecularity(v) <= 1;
    let (exp_n, exp_l, exp_delta) = match (small(&case.a), small(&case.b)) {
        (false, false) => (s + 3, 2, 1),
        (true, true) => (s + 1, 1, 0),
        _ => (s + 2, 1, 1),
    };
    if rep.n != exp_n || rep.l != exp_l || rep.delta as usize != exp_delta {
        return Err(format!(
            "{label}: expected n={exp_n} l={exp_l} delta={exp_delta}, got n={} l={} delta={}",
            rep.n, rep.l, rep.delta
        ));
    }
    if links.linkage_classes.len() != exp_l {
        return Err(format!("{label}: linkage structure count mismatch"));
    }
    if exp_l == 2 && rep.per_linkage.iter().any(|&d| d != 0) {
        return Err(format!(
            "{label}: per-linkage deficiencies {:?}, expected all zero",
            rep.per_linkage
        ));
    }
    Ok(())
}

fn summarize(results: Vec<Result<(bool, bool), String>>) -> SweepReport {
    let mut report = SweepReport::default();
    for r in results {
        report.cases += 1;
        match r {
            Ok((mss, ran)) => {
                if mss {
                    report.mss_cases += 1;
                }
                if ran {
                    report.algorithm_runs += 1;
                }
            }
            Err(msg) => report.failures.push(msg),
        }
    }
    report
}

/// Checks every enumerated case; `parallel` selects the rayon path when
/// the `parallel` feature is enabled and is ignored otherwise.
pub fn run_sweep(s_max: usize, coeff_max: u32, parallel: bool) -> SweepReport {
    let cases = enumerate_cases(s_max, coeff_max);
    #[cfg(feature = "parallel")]
    if parallel {
        return cases
            .par_chunks(256)
            .map(|chunk| summarize(chunk.iter().map(check_case).collect()))
            .reduce(SweepReport::default, SweepReport::merge);
    }
    let _ = parallel;
    let report = summarize(cases.iter().map(check_case).collect());
    SweepReport::default().merge(report)
}
