//! Graph and linear-algebra structure of a network: linkage classes,
//! strong and terminal strong linkage classes, stoichiometric subspace,
//! deficiency and regularity.

use num::{BigRational, Zero};
use petgraph::graph::DiGraph;
use thiserror::Error;

use crate::feasibility::{feasible_point, Cmp, Constraint};
use crate::linalg::{self, dot, from_i64, vec_from_i64, Matrix};
use crate::model::Network;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("vector of length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Linkage classes and (terminal) strong linkage classes, as sorted lists
/// of complex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkageStructure {
    pub linkage_classes: Vec<Vec<usize>>,
    pub strong_classes: Vec<Vec<usize>>,
    /// Indices into `strong_classes` with no outgoing reaction.
    pub terminal: Vec<usize>,
}

impl LinkageStructure {
    pub fn linkage_class_of(&self, complex: usize) -> usize {
        self.linkage_classes
            .iter()
            .position(|c| c.contains(&complex))
            .expect("complex not in any linkage class")
    }

    pub fn terminal_classes(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.terminal.iter().map(|&i| &self.strong_classes[i])
    }

    pub fn is_terminal_class(&self, class: &[usize]) -> bool {
        self.terminal_classes().any(|t| t.as_slice() == class)
    }
}

/// Directed edges between complex indices.
fn complex_edges(n: &Network) -> Vec<(usize, usize)> {
    n.reactions()
        .iter()
        .map(|r| (n.complex_index(&r.reactant), n.complex_index(&r.product)))
        .collect()
}

fn undirected_components(nvertices: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); nvertices];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; nvertices];
    let mut classes = Vec::new();
    for start in 0..nvertices {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut class = Vec::new();
        seen[start] = true;
        while let Some(v) = stack.pop() {
            class.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        class.sort();
        classes.push(class);
    }
    classes.sort();
    classes
}

pub fn linkage_structure(n: &Network) -> LinkageStructure {
    let nc = n.complexes().len();
    let edges = complex_edges(n);
    let linkage_classes = undirected_components(nc, &edges);

    let mut graph = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..nc).map(|_| graph.add_node(())).collect();
    for &(a, b) in &edges {
        graph.add_edge(nodes[a], nodes[b], ());
    }
    let mut strong_classes: Vec<Vec<usize>> = petgraph::algo::tarjan_scc(&graph)
        .into_iter()
        .map(|scc| {
            let mut c: Vec<usize> = scc.into_iter().map(|ix| ix.index()).collect();
            c.sort();
            c
        })
        .collect();
    strong_classes.sort();

    let class_of = |v: usize| strong_classes.iter().position(|c| c.contains(&v)).unwrap();
    let mut terminal = Vec::new();
    for (i, class) in strong_classes.iter().enumerate() {
        let leaves = edges
            .iter()
            .any(|&(a, b)| class.contains(&a) && class_of(b) != i);
        if !leaves {
            terminal.push(i);
        }
    }
    LinkageStructure {
        linkage_classes,
        strong_classes,
        terminal,
    }
}

/// Basis of the span of the reaction vectors, over exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    pub basis: Matrix,
    pub dimension: usize,
}

pub fn stoich_subspace(n: &Network) -> SubspaceBasis {
    let rows: Matrix = n
        .reactions()
        .iter()
        .map(|r| vec_from_i64(&r.vector()))
        .collect();
    let basis = linalg::row_space_basis(rows);
    let dimension = basis.len();
    SubspaceBasis { basis, dimension }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficiencyReport {
    pub n: usize,
    pub l: usize,
    pub d: usize,
    pub delta: i64,
    pub per_linkage: Vec<i64>,
}

impl DeficiencyReport {
    pub fn per_linkage_sum(&self) -> i64 {
        self.per_linkage.iter().sum()
    }
}

pub fn deficiency_report(n: &Network) -> DeficiencyReport {
    let links = linkage_structure(n);
    let nc = n.complexes().len();
    let d = stoich_subspace(n).dimension;
    let l = links.linkage_classes.len();
    let delta = nc as i64 - l as i64 - d as i64;
    let per_linkage = links
        .linkage_classes
        .iter()
        .map(|class| {
            let rows: Matrix = n
                .reactions()
                .iter()
                .filter(|r| class.contains(&n.complex_index(&r.reactant)))
                .map(|r| vec_from_i64(&r.vector()))
                .collect();
            let dj = linalg::rank(rows);
            class.len() as i64 - 1 - dj as i64
        })
        .collect();
    DeficiencyReport {
        n: nc,
        l,
        d,
        delta,
        per_linkage,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub positively_dependent: bool,
    /// Weights `alpha >= 1` with `sum alpha_r v_r = 0`, when they exist.
    pub dependence_witness: Option<Vec<BigRational>>,
    pub one_terminal_per_linkage: bool,
    pub cut_pair_disconnects: bool,
    pub regular: bool,
}

/// Connected components of the complex graph after deleting the reaction
/// arrows between one adjacent pair. Vertices are kept: a complex whose
/// last arrows were removed counts as its own component.
pub fn components_after_cut(n: &Network, p: usize, q: usize) -> Vec<Vec<usize>> {
    let edges: Vec<(usize, usize)> = complex_edges(n)
        .into_iter()
        .filter(|&(a, b)| !((a == p && b == q) || (a == q && b == p)))
        .collect();
    undirected_components(n.complexes().len(), &edges)
}

/// Adjacent pairs (p < q) inside each terminal strong class of size >= 2,
/// tagged with the strong-class index they belong to.
pub fn terminal_adjacent_pairs(n: &Network, links: &LinkageStructure) -> Vec<(usize, usize, usize)> {
    let edges = complex_edges(n);
    let mut pairs = Vec::new();
    for &ti in &links.terminal {
        let class = &links.strong_classes[ti];
        if class.len() < 2 {
            continue;
        }
        for (i, &p) in class.iter().enumerate() {
            for &q in &class[i + 1..] {
                let adjacent = edges
                    .iter()
                    .any(|&(a, b)| (a == p && b == q) || (a == q && b == p));
                if adjacent {
                    pairs.push((ti, p, q));
                }
            }
        }
    }
    pairs
}

pub fn regularity_report(n: &Network) -> RegularityReport {
    let links = linkage_structure(n);
    let s = n.species_count();
    let r = n.reactions().len();

    // Condition 1: sum alpha_r v_r = 0 with alpha_r > 0, decided through
    // the scale-invariant reformulation alpha_r >= 1.
    let mut constraints = Vec::new();
    for i in 0..s {
        let coeffs: Vec<BigRational> = n
            .reactions()
            .iter()
            .map(|rx| from_i64(rx.vector()[i]))
            .collect();
        constraints.push(Constraint::homogeneous(coeffs, Cmp::Eq));
    }
    for k in 0..r {
        let mut coeffs = vec![BigRational::zero(); r];
        coeffs[k] = from_i64(1);
        constraints.push(Constraint::new(coeffs, from_i64(-1), Cmp::Ge));
    }
    let dependence_witness = feasible_point(&constraints, r);
    if let Some(w) = &dependence_witness {
        // re-verify by substitution
        for i in 0..s {
            let col: Vec<BigRational> = n
                .reactions()
                .iter()
                .map(|rx| from_i64(rx.vector()[i]))
                .collect();
            assert!(dot(&col, w).is_zero(), "dependence witness fails exactly");
        }
        assert!(w.iter().all(|a| *a >= from_i64(1)));
    }
    let positively_dependent = dependence_witness.is_some();

    let one_terminal_per_linkage = links.linkage_classes.len()
        == links.terminal.len()
        && links
            .linkage_classes
            .iter()
            .all(|lc| links.terminal_classes().filter(|t| lc.contains(&t[0])).count() == 1);

    let l = links.linkage_classes.len();
    let cut_pair_disconnects = terminal_adjacent_pairs(n, &links)
        .iter()
        .all(|&(_, p, q)| components_after_cut(n, p, q).len() > l);

    let regular = positively_dependent && one_terminal_per_linkage && cut_pair_disconnects;
    RegularityReport {
        positively_dependent,
        dependence_witness,
        one_terminal_per_linkage,
        cut_pair_disconnects,
        regular,
    }
}

/// True iff some vector of the subspace matches the sign pattern of `mu`
/// componentwise. Decided by exact feasibility in basis coordinates with
/// unit thresholds (the subspace is closed under scaling).
pub fn sign_compatible(mu: &[BigRational], basis: &SubspaceBasis) -> Result<bool, StructureError> {
    let s = basis.basis.first().map(|b| b.len()).unwrap_or(mu.len());
    if mu.len() != s {
        return Err(StructureError::DimensionMismatch {
            expected: s,
            found: mu.len(),
        });
    }
    if basis.dimension == s {
        return Ok(true);
    }
    let k = basis.basis.len();
    let mut constraints = Vec::new();
    for i in 0..s {
        let coeffs: Vec<BigRational> = basis.basis.iter().map(|b| b[i].clone()).collect();
        if mu[i].is_zero() {
            constraints.push(Constraint::homogeneous(coeffs, Cmp::Eq));
        } else {
            // component >= 1 (or <= -1), via the sign-flipped coefficients
            let coeffs = if mu[i] < BigRational::zero() {
                coeffs.into_iter().map(|c| -c).collect()
            } else {
                coeffs
            };
            constraints.push(Constraint::new(coeffs, from_i64(-1), Cmp::Ge));
        }
    }
    Ok(feasible_point(&constraints, k).is_some())
}
