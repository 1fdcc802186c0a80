//! The Deficiency One Algorithm: given a regular deficiency-one network
//! with two or more linkage classes each of deficiency zero, decide
//! whether it admits multiple positive steady states.

use num::{BigInt, BigRational, Signed, Zero};
use thiserror::Error;

use crate::feasibility::{feasible_point, Cmp, Constraint};
use crate::linalg::{self, from_i64, primitive_integer_vector, Matrix};
use crate::model::Network;
use crate::structure::{
    self, components_after_cut, deficiency_report, linkage_structure, regularity_report,
    stoich_subspace, terminal_adjacent_pairs, LinkageStructure,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DefOneError {
    #[error("algorithm hypotheses not satisfied: {0}")]
    HypothesesFailed(String),
    #[error("analysis budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no orientation of the complex weights satisfies the terminal-class condition")]
    NoOrientation,
}

/// Step 1 output: one integer weight per complex, primitive, oriented so
/// every terminal strong class has nonnegative weight sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVector(pub Vec<BigInt>);

/// Step 2 output for one adjacent pair in a terminal strong class:
/// `(y_p - y_q) . mu  <sign>  0` where `sign` is -1, 0 or +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutRelation {
    pub p: usize,
    pub q: usize,
    pub terminal_class: usize,
    pub sign: i8,
}

/// One U/M/L partition of the reactant complexes (complex indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub upper: Vec<usize>,
    pub middle: Vec<usize>,
    pub lower: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PartitionTrace {
    pub partition: Partition,
    pub feasible: bool,
    pub mu: Option<Vec<BigRational>>,
}

/// One full pass of Steps 2-8 with a fixed orientation of `g`.
#[derive(Clone, Debug)]
pub struct AlgorithmPass {
    pub g: GVector,
    pub reversed_sign: bool,
    pub traces: Vec<PartitionTrace>,
}

#[derive(Clone, Debug)]
pub struct DefOneOutcome {
    pub admits_mss: bool,
    pub mu: Option<Vec<BigRational>>,
    pub passes: Vec<AlgorithmPass>,
}

/// Input checks: regular, total deficiency one, at least two linkage
/// classes, each linkage class of deficiency zero.
pub fn check_hypotheses(n: &Network) -> Result<(), DefOneError> {
    let mut reasons = Vec::new();
    let rep = deficiency_report(n);
    if rep.delta != 1 {
        reasons.push(format!("deficiency is {}, not 1", rep.delta));
    }
    if rep.l < 2 {
        reasons.push(format!("{} linkage class(es), need at least 2", rep.l));
    }
    if rep.per_linkage.iter().any(|&d| d != 0) {
        reasons.push(format!(
            "linkage class deficiencies {:?} are not all zero",
            rep.per_linkage
        ));
    }
    let reg = regularity_report(n);
    if !reg.positively_dependent {
        reasons.push("reaction vectors are not positively dependent".into());
    }
    if !reg.one_terminal_per_linkage {
        reasons.push("some linkage class lacks a unique terminal strong class".into());
    }
    if !reg.cut_pair_disconnects {
        reasons.push("removing an adjacent terminal pair fails to disconnect".into());
    }
    if reasons.is_empty() {
        Ok(())
    } else {
        Err(DefOneError::HypothesesFailed(reasons.join("; ")))
    }
}

/// Step 1: the (essentially unique) nonzero weights with
/// `sum g_i y_i = 0` and zero sum over every linkage class, oriented so
/// terminal-class sums are nonnegative.
pub fn compute_g(n: &Network, links: &LinkageStructure) -> Result<GVector, DefOneError> {
    let nc = n.complexes().len();
    let s = n.species_count();
    let mut rows: Matrix = Vec::new();
    for i in 0..s {
        rows.push(
            n.complexes()
                .iter()
                .map(|c| from_i64(c.coeffs()[i] as i64))
                .collect(),
        );
    }
    for class in &links.linkage_classes {
        rows.push(
            (0..nc)
                .map(|c| from_i64(if class.contains(&c) { 1 } else { 0 }))
                .collect(),
        );
    }
    let kernel = linalg::nullspace(rows, nc);
    if kernel.len() != 1 {
        return Err(DefOneError::HypothesesFailed(format!(
            "weight kernel has dimension {}, expected 1",
            kernel.len()
        )));
    }
    let mut g = primitive_integer_vector(&kernel[0]);

    let terminal_sum = |g: &[BigInt], class: &[usize]| -> BigInt {
        class.iter().map(|&c| g[c].clone()).sum()
    };
    let sums: Vec<BigInt> = links
        .terminal_classes()
        .map(|t| terminal_sum(&g, t))
        .collect();
    let any_pos = sums.iter().any(|v| v.is_positive());
    let any_neg = sums.iter().any(|v| v.is_negative());
    if any_pos && any_neg {
        return Err(DefOneError::NoOrientation);
    }
    if any_neg {
        for v in g.iter_mut() {
            *v = -v.clone();
        }
    } else if !any_pos {
        // all terminal sums zero: fix the sign by the first nonzero entry
        if g.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
            for v in g.iter_mut() {
                *v = -v.clone();
            }
        }
    }
    Ok(GVector(g))
}

/// Step 2: one relation per adjacent pair in each multi-complex terminal
/// strong class. The sign is that of the `g`-sum over the cut component
/// containing `p`.
pub fn cut_pair_relations(
    n: &Network,
    links: &LinkageStructure,
    g: &GVector,
) -> Vec<CutRelation> {
    let mut relations = Vec::new();
    for (ti, p, q) in terminal_adjacent_pairs(n, links) {
        let comps = components_after_cut(n, p, q);
        let comp_p = comps
            .iter()
            .find(|c| c.contains(&p))
            .expect("p is a vertex");
        debug_assert!(!comp_p.contains(&q), "cut pair fails to disconnect");
        let sum: BigInt = comp_p.iter().map(|&c| g.0[c].clone()).sum();
        let sign = match sum.cmp(&BigInt::zero()) {
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Less => -1,
        };
        relations.push(CutRelation {
            p,
            q,
            terminal_class: ti,
            sign,
        });
    }
    relations
}

/// Step 3: every U/M/L partition of the reactant complexes that respects
/// the terminal strong classes, up to the U/L interchange symmetry.
/// Non-terminal reactant complexes always land in M; each terminal class
/// holding a reactant complex is assigned as a block.
pub fn enumerate_partitions(
    n: &Network,
    links: &LinkageStructure,
) -> Result<Vec<Partition>, DefOneError> {
    let reactants = n.reactant_complex_indices();
    let in_terminal = |c: usize| links.terminal_classes().any(|t| t.contains(&c));
    let fixed_middle: Vec<usize> = reactants
        .iter()
        .copied()
        .filter(|&c| !in_terminal(c))
        .collect();
    let mut blocks: Vec<Vec<usize>> = links
        .terminal_classes()
        .filter(|t| t.iter().any(|c| reactants.contains(c)))
        .map(|t| t.iter().copied().filter(|c| reactants.contains(c)).collect())
        .collect();
    blocks.sort_by_key(|b| b[0]);
    if blocks.len() > 12 {
        return Err(DefOneError::BudgetExceeded(format!(
            "{} assignable terminal classes (limit 12)",
            blocks.len()
        )));
    }
    // If every terminal strong class has two or more complexes, only
    // partitions with both U and L nonempty can succeed.
    let require_u_and_l = links.terminal_classes().all(|t| t.len() >= 2);

    // assignment entry: 0 = L, 1 = M, 2 = U; U/L swap maps v to 2-v
    let k = blocks.len();
    let mut partitions = Vec::new();
    for code in 0..3usize.pow(k as u32) {
        let mut assign = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            assign.push(c % 3);
            c /= 3;
        }
        let swapped: Vec<usize> = assign.iter().map(|v| 2 - v).collect();
        if swapped < assign {
            continue;
        }
        if require_u_and_l && (!assign.contains(&0) || !assign.contains(&2)) {
            continue;
        }
        let mut p = Partition {
            upper: Vec::new(),
            middle: fixed_middle.clone(),
            lower: Vec::new(),
        };
        for (b, &a) in blocks.iter().zip(&assign) {
            match a {
                0 => p.lower.extend(b.iter().copied()),
                1 => p.middle.extend(b.iter().copied()),
                _ => p.upper.extend(b.iter().copied()),
            }
        }
        p.upper.sort();
        p.middle.sort();
        p.lower.sort();
        partitions.push(p);
    }
    Ok(partitions)
}

fn complex_diff_coeffs(n: &Network, i: usize, j: usize) -> Vec<BigRational> {
    let yi = n.complexes()[i].coeffs();
    let yj = n.complexes()[j].coeffs();
    yi.iter()
        .zip(yj)
        .map(|(&a, &b)| from_i64(a as i64 - b as i64))
        .collect()
}

/// Steps 4-7: the inequality system over `mu` for one partition.
pub fn build_inequality_system(
    n: &Network,
    links: &LinkageStructure,
    relations: &[CutRelation],
    partition: &Partition,
) -> Vec<Constraint> {
    let mut cons = Vec::new();
    // Step 4: all complexes in M are mu-equal.
    for (a, &i) in partition.middle.iter().enumerate() {
        for &j in &partition.middle[a + 1..] {
            cons.push(Constraint::homogeneous(
                complex_diff_coeffs(n, i, j),
                Cmp::Eq,
            ));
        }
    }
    // Step 5: U > M, M > L, U > L.
    let gt = |cons: &mut Vec<Constraint>, hi: &[usize], lo: &[usize]| {
        for &i in hi {
            for &j in lo {
                cons.push(Constraint::homogeneous(
                    complex_diff_coeffs(n, i, j),
                    Cmp::Gt,
                ));
            }
        }
    };
    gt(&mut cons, &partition.upper, &partition.middle);
    gt(&mut cons, &partition.middle, &partition.lower);
    gt(&mut cons, &partition.upper, &partition.lower);
    // Step 6: cut-pair relations for terminal classes in U (as written)
    // and in L (reversed).
    for rel in relations {
        let class = &links.strong_classes[rel.terminal_class];
        let rep = class[0];
        let orient: i8 = if partition.upper.contains(&rep) {
            1
        } else if partition.lower.contains(&rep) {
            -1
        } else {
            continue;
        };
        let coeffs = complex_diff_coeffs(n, rel.p, rel.q);
        match rel.sign * orient {
            0 => cons.push(Constraint::homogeneous(coeffs, Cmp::Eq)),
            1 => cons.push(Constraint::homogeneous(coeffs, Cmp::Gt)),
            _ => cons.push(Constraint::homogeneous(
                coeffs.into_iter().map(|c| -c).collect(),
                Cmp::Gt,
            )),
        }
    }
    cons
}

/// Step 8: a nonzero solution of the (homogeneous) system that is sign
/// compatible with the stoichiometric subspace, if one exists. Nonzeroness
/// is forced by pinning one coordinate to `>= 1` in either sign, which is
/// exhaustive because the system is invariant under positive scaling.
pub fn solve_system(n: &Network, system: &[Constraint]) -> Option<Vec<BigRational>> {
    let s = n.species_count();
    let subspace = stoich_subspace(n);
    for k in 0..s {
        for dir in [1i64, -1] {
            let mut cons = system.to_vec();
            let mut coeffs = vec![BigRational::zero(); s];
            coeffs[k] = from_i64(dir);
            cons.push(Constraint::new(coeffs, from_i64(-1), Cmp::Ge));
            if let Some(mu) = feasible_point(&cons, s) {
                if structure::sign_compatible(&mu, &subspace).unwrap_or(false) {
                    debug_assert!(system.iter().all(|c| c.satisfied_by(&mu)));
                    return Some(mu);
                }
            }
        }
    }
    None
}

/// Runs the full algorithm. For a reversible network (every reaction has
/// its reverse) the partitions are examined twice, once per orientation
/// of the weights.
pub fn run_algorithm(n: &Network) -> Result<DefOneOutcome, DefOneError> {
    check_hypotheses(n)?;
    let links = linkage_structure(n);
    let g = compute_g(n, &links)?;
    let reversible_network = n.reactions().iter().all(|r| n.is_reversible(r));
    let mut orientations = vec![(g.clone(), false)];
    if reversible_network {
        let neg = GVector(g.0.iter().map(|v| -v.clone()).collect());
        orientations.push((neg, true));
    }

    let partitions = enumerate_partitions(n, &links)?;
    let mut passes = Vec::new();
    for (g, reversed_sign) in orientations {
        let relations = cut_pair_relations(n, &links, &g);
        let mut traces = Vec::new();
        for partition in &partitions {
            let system = build_inequality_system(n, &links, &relations, partition);
            let mu = solve_system(n, &system);
            let feasible = mu.is_some();
            traces.push(PartitionTrace {
                partition: partition.clone(),
                feasible,
                mu: mu.clone(),
            });
            if let Some(mu) = mu {
                passes.push(AlgorithmPass {
                    g,
                    reversed_sign,
                    traces,
                });
                return Ok(DefOneOutcome {
                    admits_mss: true,
                    mu: Some(mu),
                    passes,
                });
            }
        }
        passes.push(AlgorithmPass {
            g,
            reversed_sign,
            traces,
        });
    }
    Ok(DefOneOutcome {
        admits_mss: false,
        mu: None,
        passes,
    })
}

/// Direct solver for the one-reaction system
/// `sum a_i mu_i > max_j mu_j > 0`, `sign(mu_i) = sign(b_i - a_i)`:
/// returns a rational solution iff `sum_{i: b_i > a_i} a_i > 1`, using the
/// explicit construction `mu_i = 1 / 0 / -eps` with
/// `eps = 1 / (2 (sum_{i: b_i < a_i} a_i + 1))`.
pub fn one_reaction_inequality(a: &[u32], b: &[u32]) -> Option<Vec<BigRational>> {
    assert_eq!(a.len(), b.len());
    let gain: u64 = a
        .iter()
        .zip(b)
        .filter(|(ai, bi)| bi > ai)
        .map(|(&ai, _)| ai as u64)
        .sum();
    if gain <= 1 {
        return None;
    }
    let drop: u64 = a
        .iter()
        .zip(b)
        .filter(|(ai, bi)| bi < ai)
        .map(|(&ai, _)| ai as u64)
        .sum();
    let eps = BigRational::new(1.into(), (2 * (drop + 1)).into());
    let mu: Vec<BigRational> = a
        .iter()
        .zip(b)
        .map(|(ai, bi)| match bi.cmp(ai) {
            std::cmp::Ordering::Greater => from_i64(1),
            std::cmp::Ordering::Equal => BigRational::zero(),
            std::cmp::Ordering::Less => -eps.clone(),
        })
        .collect();
    debug_assert!(one_reaction_system_satisfied(a, b, &mu));
    Some(mu)
}

/// Exact substitution check of the one-reaction inequality system.
pub fn one_reaction_system_satisfied(a: &[u32], b: &[u32], mu: &[BigRational]) -> bool {
    let total: BigRational = a
        .iter()
        .zip(mu)
        .map(|(&ai, m)| from_i64(ai as i64) * m)
        .sum();
    let max = mu.iter().max().cloned().unwrap_or_else(BigRational::zero);
    if !(total > max && max > BigRational::zero()) {
        return false;
    }
    a.iter().zip(b).zip(mu).all(|((ai, bi), m)| match bi.cmp(ai) {
        std::cmp::Ordering::Greater => m.is_positive(),
        std::cmp::Ordering::Equal => m.is_zero(),
        std::cmp::Ordering::Less => m.is_negative(),
    })
}
