//! Domain types for species, complexes, reactions and networks.
//!
//! A [`Network`] owns a fixed species ordering; every coefficient vector in
//! the crate is indexed by that ordering. Reactions are stored directed; a
//! reversible reaction is simply a pair of directed reactions.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("duplicate species `{0}`")]
    DuplicateSpecies(String),
    #[error("trivial reaction {0} (reactant equals product)")]
    TrivialReaction(String),
    #[error("species `{0}` does not appear in any complex")]
    OrphanSpecies(String),
    #[error("network has no reactions")]
    EmptyNetwork,
    #[error("coefficient vector of length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
}

/// A complex: nonnegative stoichiometric coefficients, one per species.
/// The all-zero vector is the complex `0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Complex(pub Vec<u32>);

impl Complex {
    pub fn zero(len: usize) -> Self {
        Complex(vec![0; len])
    }

    pub fn unit(len: usize, species: usize) -> Self {
        let mut v = vec![0; len];
        v[species] = 1;
        Complex(v)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Sum of stoichiometric coefficients.
    pub fn molecularity(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_unimolecular(&self) -> bool {
        self.molecularity() == 1
    }

    /// Species indices with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex{:?}", self.0)
    }
}

/// A directed reaction `reactant -> product` with `reactant != product`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Reaction {
    pub reactant: Complex,
    pub product: Complex,
}

impl Reaction {
    pub fn new(reactant: Complex, product: Complex) -> Self {
        Reaction { reactant, product }
    }

    pub fn reverse(&self) -> Reaction {
        Reaction {
            reactant: self.product.clone(),
            product: self.reactant.clone(),
        }
    }

    /// Reaction vector: product minus reactant, componentwise.
    pub fn vector(&self) -> Vec<i64> {
        self.product
            .0
            .iter()
            .zip(&self.reactant.0)
            .map(|(&p, &r)| p as i64 - r as i64)
            .collect()
    }

    /// An inflow `0 -> X` or outflow `X -> 0` of a single species.
    pub fn is_flow(&self) -> bool {
        (self.reactant.is_zero() && self.product.is_unimolecular())
            || (self.product.is_zero() && self.reactant.is_unimolecular())
    }
}

/// A validated chemical reaction network.
///
/// Reactions are kept sorted by (reactant, product) and complexes sorted
/// lexicographically, so serialized output is byte-stable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Network {
    species: Vec<String>,
    reactions: Vec<Reaction>,
    complexes: Vec<Complex>,
}

impl Network {
    pub fn new(species: Vec<String>, reactions: Vec<Reaction>) -> Result<Self, ModelError> {
        let mut seen = BTreeSet::new();
        for name in &species {
            if !seen.insert(name.clone()) {
                return Err(ModelError::DuplicateSpecies(name.clone()));
            }
        }
        if reactions.is_empty() {
            return Err(ModelError::EmptyNetwork);
        }
        for r in &reactions {
            for c in [&r.reactant, &r.product] {
                if c.0.len() != species.len() {
                    return Err(ModelError::LengthMismatch {
                        expected: species.len(),
                        found: c.0.len(),
                    });
                }
            }
            if r.reactant == r.product {
                return Err(ModelError::TrivialReaction(format!("{:?}", r.reactant.0)));
            }
        }
        let mut reactions = reactions;
        reactions.sort();
        reactions.dedup();
        let mut complexes: Vec<Complex> = reactions
            .iter()
            .flat_map(|r| [r.reactant.clone(), r.product.clone()])
            .collect();
        complexes.sort();
        complexes.dedup();
        for (i, name) in species.iter().enumerate() {
            if complexes.iter().all(|c| c.0[i] == 0) {
                return Err(ModelError::OrphanSpecies(name.clone()));
            }
        }
        Ok(Network {
            species,
            reactions,
            complexes,
        })
    }

    /// Fully open network whose only non-flow reaction is
    /// `sum a_i X_i -> sum b_i X_i` (plus the reverse when `reversible`),
    /// with species named `X1..Xs`.
    pub fn one_reaction_fully_open(
        a: &[u32],
        b: &[u32],
        reversible: bool,
    ) -> Result<Network, ModelError> {
        if a.len() != b.len() {
            return Err(ModelError::LengthMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        let fwd = Reaction::new(Complex(a.to_vec()), Complex(b.to_vec()));
        let mut rs = vec![fwd.clone()];
        if reversible {
            rs.push(fwd.reverse());
        }
        for i in 0..a.len() {
            let mut unit = vec![0u32; a.len()];
            unit[i] = 1;
            let inflow = Reaction::new(Complex::zero(a.len()), Complex(unit));
            rs.push(inflow.reverse());
            rs.push(inflow);
        }
        let species = (0..a.len()).map(|i| format!("X{}", i + 1)).collect();
        Network::new(species, rs)
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn species_count(&self) -> usize {
        self.species.len()
    }

    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s == name)
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn complexes(&self) -> &[Complex] {
        &self.complexes
    }

    pub fn complex_index(&self, c: &Complex) -> usize {
        self.complexes
            .binary_search(c)
            .expect("complex not in network")
    }

    pub fn has_reaction(&self, r: &Reaction) -> bool {
        self.reactions.binary_search(r).is_ok()
    }

    /// Both directions present.
    pub fn is_reversible(&self, r: &Reaction) -> bool {
        self.has_reaction(&r.reverse())
    }

    pub fn non_flow_reactions(&self) -> Vec<&Reaction> {
        self.reactions.iter().filter(|r| !r.is_flow()).collect()
    }

    pub fn is_fully_open(&self) -> bool {
        let s = self.species_count();
        (0..s).all(|i| {
            let x = Complex::unit(s, i);
            self.has_reaction(&Reaction::new(Complex::zero(s), x.clone()))
                && self.has_reaction(&Reaction::new(x, Complex::zero(s)))
        })
    }

    /// Adds `0 <-> X_i` for every species. Idempotent.
    pub fn fully_open_closure(&self) -> Network {
        let s = self.species_count();
        let mut reactions = self.reactions.clone();
        for i in 0..s {
            let x = Complex::unit(s, i);
            reactions.push(Reaction::new(Complex::zero(s), x.clone()));
            reactions.push(Reaction::new(x, Complex::zero(s)));
        }
        Network::new(self.species.clone(), reactions).expect("closure of a valid network is valid")
    }

    /// Complex indices that appear as a reactant of some reaction.
    pub fn reactant_complex_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .reactions
            .iter()
            .map(|r| self.complex_index(&r.reactant))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn complex_string(&self, c: &Complex) -> String {
        if c.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &coeff) in c.0.iter().enumerate() {
            match coeff {
                0 => {}
                1 => parts.push(self.species[i].clone()),
                k => parts.push(format!("{} {}", k, self.species[i])),
            }
        }
        parts.join(" + ")
    }

    pub fn reaction_string(&self, r: &Reaction) -> String {
        format!(
            "{} -> {}",
            self.complex_string(&r.reactant),
            self.complex_string(&r.product)
        )
    }
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

    #[test]
    fn minimal_network() {
        // A + B -> 2A
        let n = Network::new(
            names(&["A", "B"]),
            vec![Reaction::new(c(&[1, 1]), c(&[2, 0]))],
        )
        .unwrap();
        assert_eq!(n.complexes().len(), 2);
        assert_eq!(n.reactions().len(), 1);
    }

    #[test]
    fn trivial_reaction_rejected() {
        let err = Network::new(names(&["A"]), vec![Reaction::new(c(&[1]), c(&[1]))]).unwrap_err();
        assert!(matches!(err, ModelError::TrivialReaction(_)));
    }

    #[test]
    fn orphan_species_rejected() {
        let err = Network::new(
            names(&["A", "B", "C"]),
            vec![Reaction::new(c(&[1, 1, 0]), c(&[2, 0, 0]))],
        )
        .unwrap_err();
        assert_eq!(err, ModelError::OrphanSpecies("C".to_string()));
    }

    #[test]
    fn example_network_with_reversible_pairs() {
        // A+C <-> B+C, A+D <-> 2E over {A,B,C,D,E}
        let r1 = Reaction::new(c(&[1, 0, 1, 0, 0]), c(&[0, 1, 1, 0, 0]));
        let r2 = Reaction::new(c(&[1, 0, 0, 1, 0]), c(&[0, 0, 0, 0, 2]));
        let n = Network::new(
            names(&["A", "B", "C", "D", "E"]),
            vec![r1.clone(), r1.reverse(), r2.clone(), r2.reverse()],
        )
        .unwrap();
        assert_eq!(n.complexes().len(), 4);
        assert_eq!(n.reactions().len(), 4);
        assert!(n.is_reversible(&r1));
    }

    #[test]
    fn reaction_vectors() {
        // A+B -> 2A
        assert_eq!(Reaction::new(c(&[1, 1]), c(&[2, 0])).vector(), vec![1, -1]);
        // 2A+B -> 3A
        assert_eq!(Reaction::new(c(&[2, 1]), c(&[3, 0])).vector(), vec![1, -1]);
        // inflow 0 -> A gives the canonical basis vector
        assert_eq!(Reaction::new(c(&[0, 0]), c(&[1, 0])).vector(), vec![1, 0]);
    }

    #[test]
    fn reverse_negates_vector() {
        let r = Reaction::new(c(&[2, 1]), c(&[0, 3]));
        let v = r.vector();
        let w = r.reverse().vector();
        assert!(v.iter().zip(&w).all(|(a, b)| *a == -*b));
    }

    #[test]
    fn closure_adds_flows_and_is_idempotent() {
        let n = Network::new(
            names(&["A", "B"]),
            vec![Reaction::new(c(&[1, 1]), c(&[2, 0]))],
        )
        .unwrap();
        let open = n.fully_open_closure();
        assert_eq!(open.reactions().len(), 5);
        assert!(open.is_fully_open());
        assert_eq!(open.fully_open_closure(), open);
        // every input reaction survives
        for r in n.reactions() {
            assert!(open.has_reaction(r));
        }
    }

    #[test]
    fn fully_open_m2() {
        // 2A+B <-> 3A, fully open: 6 reactions, 5 complexes
        let fwd = Reaction::new(c(&[2, 1]), c(&[3, 0]));
        let n = Network::new(names(&["A", "B"]), vec![fwd.clone(), fwd.reverse()])
            .unwrap()
            .fully_open_closure();
        assert_eq!(n.reactions().len(), 6);
        assert_eq!(n.complexes().len(), 5);
    }

    #[test]
    fn rebuild_is_identity() {
        let fwd = Reaction::new(c(&[2, 1]), c(&[3, 0]));
        let n = Network::new(names(&["A", "B"]), vec![fwd.clone(), fwd.reverse()])
            .unwrap()
            .fully_open_closure();
        let rebuilt = Network::new(n.species().to_vec(), n.reactions().to_vec()).unwrap();
        assert_eq!(rebuilt, n);
    }

    #[test]
    fn flow_detection() {
        assert!(Reaction::new(c(&[0, 0]), c(&[0, 1])).is_flow());
        assert!(Reaction::new(c(&[1, 0]), c(&[0, 0])).is_flow());
        assert!(!Reaction::new(c(&[2, 0]), c(&[0, 0])).is_flow());
        assert!(!Reaction::new(c(&[1, 0]), c(&[0, 1])).is_flow());
    }
}
