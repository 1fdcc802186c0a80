//! Acceptance suite: each test checks one gate criterion and prints a
//! single pass line (a failed assertion is the fail line).

use std::path::Path;

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crnmss::classify::{
    classify, default_budget, find_one_reaction_atoms, one_reaction_mss, AtomForm, Outcome,
    Provenance, Witness,
};
use crnmss::defone::{one_reaction_inequality, one_reaction_system_satisfied};
use crnmss::dynamics::{
    atom1_analysis, atom2_analysis, atom2_witness_params, one_reaction_rate_assignment,
    one_reaction_steady_states, Atom2Params, Regime,
};
use crnmss::model::Network;
use crnmss::parser::{documents_equivalent, parse_network, render_network, NetworkDocument};
use crnmss::report::build_report;
use crnmss::sweep::{enumerate_cases, run_sweep};
use crnmss::structure::deficiency_report;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn corpus_path(name: &str) -> String {
    format!("{}/../../networks/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn load(name: &str) -> NetworkDocument {
    let path = corpus_path(name);
    let text = std::fs::read_to_string(Path::new(&path)).expect("corpus file");
    parse_network(&text).expect("corpus parses")
}

fn pass(n: u32, what: &str) {
    println!("[PASS] criterion {n}: {what}");
}

#[test]
fn criterion_1_small_reversible_family() {
    let start = std::time::Instant::now();
    let m1 = load("m1.crn");
    let m2 = load("m2.crn");
    let m3 = load("m3.crn");
    let v1 = classify(&m1.network, &[], default_budget());
    assert_eq!(v1.outcome, Outcome::NoMss);
    let v2 = classify(&m2.network, &[], default_budget());
    assert_eq!(v2.outcome, Outcome::Mss);
    match &v2.witness {
        Witness::Atom(a) => assert_eq!(a.form, AtomForm::SingleSpecies { a1: 2, a2: 3 }),
        w => panic!("expected atom witness, got {w:?}"),
    }
    let v3 = classify(&m3.network, &[], default_budget());
    assert_eq!(v3.outcome, Outcome::NoMss);
    assert!(start.elapsed().as_secs_f64() < 1.0, "criterion 1 exceeded 1 s");
    pass(1, "NoMSS / MSS with atom 2X -> 3X / NoMSS on the reversible family");
}

#[test]
fn criterion_2_five_species_examples() {
    let start = std::time::Instant::now();
    let n1 = load("n1.crn");
    let n2 = load("n2.crn");
    let n3 = load("n3.crn");
    let atom = load("atoms/ab.crn").network;

    let v1 = classify(&n1.network, &[], default_budget());
    assert_eq!(v1.outcome, Outcome::Mss);
    assert_eq!(v1.provenance, Some(Provenance::EmbeddedAtom));
    match &v1.witness {
        Witness::Atom(a) => {
            assert_eq!(a.form, AtomForm::SingleSpecies { a1: 2, a2: 3 });
            let e = n1.network.species_index("E").unwrap();
            assert_eq!(a.species_subset, vec![e]);
        }
        w => panic!("expected atom witness, got {w:?}"),
    }

    let v3 = classify(&n3.network, std::slice::from_ref(&atom), default_budget());
    assert_eq!(v3.outcome, Outcome::Mss);
    assert_eq!(v3.provenance, Some(Provenance::UserAtom));
    match &v3.witness {
        Witness::Embedded(w) => {
            let name = |i: usize| n3.network.species()[i].as_str();
            let kept: Vec<&str> = w.keep_species.iter().map(|&i| name(i)).collect();
            assert_eq!(kept, ["A", "B", "E"]); // C and D dropped
            let dropped = n3
                .network
                .non_flow_reactions()
                .into_iter()
                .find(|r| !w.keep_reactions.contains(r))
                .expect("one reaction dropped");
            assert_eq!(n3.network.reaction_string(dropped), "A + E -> 2 E");
        }
        w => panic!("expected embedding witness, got {w:?}"),
    }

    let v2 = classify(&n2.network, &[], default_budget());
    assert_eq!(v2.outcome, Outcome::Inconclusive);
    assert!(find_one_reaction_atoms(&n2.network).is_empty());
    assert!(start.elapsed().as_secs_f64() < 5.0, "criterion 2 exceeded 5 s");
    pass(2, "embedded atom on N1, user-atom containment on N3, honest Inconclusive on N2");
}

#[test]
fn criterion_3_single_species_atom_numerics() {
    let k_x = rat(4);
    let l_x = rat(15);
    let a = atom1_analysis(5, 8, &k_x, &l_x, &rat(50)).unwrap();
    assert_eq!(a.k_star, rat(81));
    assert_eq!(a.regime, Regime::Two);
    assert_eq!(a.states.states.len(), 2);
    let mut roots: Vec<f64> = a.states.states.iter().map(|s| s.coords[0]).collect();
    roots.sort_by(f64::total_cmp);
    assert!((roots[0] - 0.285702).abs() < 1e-6, "root {}", roots[0]);
    assert!((roots[1] - 0.448851).abs() < 1e-6, "root {}", roots[1]);

    let b = atom1_analysis(5, 8, &k_x, &l_x, &rat(81)).unwrap();
    assert_eq!(b.regime, Regime::OneDegenerate);
    assert_eq!(b.states.states.len(), 1);
    let exact = b.states.states[0].exact.as_ref().expect("exact root");
    assert_eq!(exact[0], ratio(1, 3));
    assert!(b.states.states[0].degenerate);

    let c = atom1_analysis(5, 8, &k_x, &l_x, &rat(100)).unwrap();
    assert_eq!(c.regime, Regime::Zero);
    assert!(c.states.states.is_empty());
    pass(3, "5X -> 8X atom: k* = 81, two/one-degenerate/zero root regimes");
}

#[test]
fn criterion_4_two_species_atom_numerics() {
    // b1 = b2 = 2 with kY = kX and lY = 2 lX k, evaluated at k = 1/4
    let k = ratio(1, 4);
    let params = |k_x: i64, l_x: i64| Atom2Params {
        k_x: rat(k_x),
        k_y: rat(k_x),
        l_x: rat(l_x),
        l_y: rat(2 * l_x) * &k,
        k: k.clone(),
    };

    let zero = atom2_analysis(2, 2, &params(1, 1)).unwrap();
    assert_eq!(zero.regime, Regime::Zero);

    let one = atom2_analysis(2, 2, &params(2, 2)).unwrap();
    assert_eq!(one.regime, Regime::OneDegenerate);
    let exact = one.states.states[0].exact.as_ref().expect("exact state");
    assert_eq!(exact[0], rat(2));
    assert_eq!(exact[1], rat(16) * &k);

    let two = atom2_analysis(2, 2, &params(1, 2)).unwrap();
    assert_eq!(two.regime, Regime::Two);
    let mut states: Vec<(f64, f64)> = two
        .states
        .states
        .iter()
        .map(|s| (s.coords[0], s.coords[1]))
        .collect();
    states.sort_by(|a, b| a.0.total_cmp(&b.0));
    let r2 = 2.0_f64.sqrt();
    let kf = 0.25;
    assert!((states[0].0 - (2.0 - r2)).abs() < 1e-9);
    assert!((states[1].0 - (2.0 + r2)).abs() < 1e-9);
    assert!((states[0].1 - 8.0 * kf * (2.0 - r2)).abs() < 1e-9);
    assert!((states[1].1 - 8.0 * kf * (2.0 + r2)).abs() < 1e-9);
    assert!(two.states.states.iter().all(|s| !s.degenerate));
    pass(4, "X + Y -> 2X + 2Y family: zero/one-degenerate/two steady-state cases");
}

#[test]
fn criterion_5_exhaustive_oracle_equivalence() {
    let start = std::time::Instant::now();
    let rep = run_sweep(3, 4, true);
    assert!(rep.ok(), "sweep failures: {:?}", &rep.failures[..rep.failures.len().min(5)]);
    assert_eq!(rep.cases, 32216);
    assert!(rep.algorithm_runs > 0 && rep.mss_cases > 0);
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 120.0, "sweep took {secs:.1} s, budget 120 s");
    pass(5, "criterion, algorithm and atom detection agree on all 32216 cases");
}

#[test]
fn criterion_6_deficiency_bookkeeping() {
    for case in enumerate_cases(3, 4) {
        let net = Network::one_reaction_fully_open(&case.a, &case.b, case.reversible).unwrap();
        let rep = deficiency_report(&net);
        let s = case.a.len();
        let mol = |v: &[u32]| v.iter().sum::<u32>();
        let both_big = mol(&case.a) >= 2 && mol(&case.b) >= 2;
        if both_big {
            assert_eq!(rep.delta, 1, "case {case:?}");
            assert_eq!(rep.l, 2, "case {case:?}");
            assert_eq!(rep.per_linkage, vec![0, 0], "case {case:?}");
        } else if mol(&case.a) <= 1 && mol(&case.b) <= 1 {
            assert_eq!((rep.delta, rep.l, rep.n), (0, 1, s + 1), "case {case:?}");
        } else {
            assert_eq!((rep.delta, rep.l, rep.n), (1, 1, s + 2), "case {case:?}");
        }
    }
    pass(6, "exact deficiency and linkage counts across the one-reaction family");
}

#[test]
fn criterion_7_inequality_lemma() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut returned = 0u32;
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=5);
        let a: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=6)).collect();
        let b: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=6)).collect();
        let sum: u32 = a
            .iter()
            .zip(&b)
            .filter(|(ai, bi)| bi > ai)
            .map(|(&ai, _)| ai)
            .sum();
        match one_reaction_inequality(&a, &b) {
            Some(mu) => {
                assert!(sum > 1, "a={a:?} b={b:?}");
                assert!(
                    one_reaction_system_satisfied(&a, &b, &mu),
                    "a={a:?} b={b:?} mu={mu:?}"
                );
                returned += 1;
            }
            None => assert!(sum <= 1, "a={a:?} b={b:?}"),
        }
    }
    assert!(returned > 0);
    pass(7, "closed-form mu solves the strict system exactly on 10000 random draws");
}

#[test]
fn criterion_8_dynamics_statics_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cases = enumerate_cases(3, 4);

    // existence direction: the first 200 MSS cases, witnessed at atom level
    let mut seen = 0;
    for case in &cases {
        if seen == 200 {
            break;
        }
        let net = Network::one_reaction_fully_open(&case.a, &case.b, case.reversible).unwrap();
        let verdict = one_reaction_mss(&net).unwrap();
        if verdict.outcome != Outcome::Mss {
            continue;
        }
        seen += 1;
        let atom = match &verdict.witness {
            Witness::Atom(a) => a.clone(),
            w => panic!("expected atom witness, got {w:?}"),
        };
        let states = match atom.form {
            AtomForm::SingleSpecies { a1, a2 } => {
                let probe = atom1_analysis(a1, a2, &rat(1), &rat(1), &rat(1)).unwrap();
                let k = probe.k_star / rat(2);
                atom1_analysis(a1, a2, &rat(1), &rat(1), &k).unwrap().states
            }
            AtomForm::TwoSpecies { b1, b2 } => {
                let params = atom2_witness_params(b1, b2, &rat(1)).unwrap();
                atom2_analysis(b1, b2, &params).unwrap().states
            }
        };
        assert_eq!(states.nondegenerate_count(), 2, "case {case:?}");
        assert!(states.states.iter().all(|s| s.residual < 1e-9));
    }
    assert_eq!(seen, 200);

    // regression direction: NoMSS networks never show two states
    let mut seen = 0;
    for case in &cases {
        if seen == 200 {
            break;
        }
        let net = Network::one_reaction_fully_open(&case.a, &case.b, case.reversible).unwrap();
        if one_reaction_mss(&net).unwrap().outcome != Outcome::NoMss {
            continue;
        }
        seen += 1;
        for _ in 0..50 {
            let mut draw = || ratio(rng.gen_range(1..=64), rng.gen_range(1..=64));
            let s = net.species_count();
            let inflow: Vec<BigRational> = (0..s).map(|_| draw()).collect();
            let outflow: Vec<BigRational> = (0..s).map(|_| draw()).collect();
            let k_fwd = draw();
            let k_rev = case.reversible.then(draw);
            let rates =
                one_reaction_rate_assignment(&net, &inflow, &outflow, &k_fwd, k_rev.as_ref());
            let set = one_reaction_steady_states(&net, &rates).unwrap();
            assert!(
                set.states.len() < 2,
                "NoMSS case {case:?} produced {} states",
                set.states.len()
            );
        }
    }
    assert_eq!(seen, 200);
    pass(8, "200 MSS witnesses give two nondegenerate states; 10000 NoMSS scans give at most one");
}

#[test]
fn criterion_9_round_trip_and_determinism() {
    for name in ["m1.crn", "m2.crn", "m3.crn", "n1.crn", "n2.crn", "n3.crn", "atoms/ab.crn"] {
        let doc = load(name);
        let rendered = render_network(&doc);
        let doc2 = parse_network(&rendered).expect("rendered text parses");
        assert!(documents_equivalent(&doc, &doc2), "round trip on {name}");
        assert_eq!(render_network(&doc2), rendered, "canonical form stable on {name}");
    }
    // identical JSON reports across independent runs
    for name in ["m2.crn", "n1.crn", "n3.crn"] {
        let json: Vec<String> = (0..2)
            .map(|_| {
                let doc = load(name);
                let atom = load("atoms/ab.crn").network;
                let verdict = classify(&doc.network, std::slice::from_ref(&atom), default_budget());
                build_report(&doc, &verdict, None, None).to_json()
            })
            .collect();
        assert_eq!(json[0], json[1], "report bytes differ on {name}");
    }
    pass(9, "parse/render round trip and byte-identical reports");
}
