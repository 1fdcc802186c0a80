//! Command-line surface: parse a network file, run the classification
//! pipeline or an individual analysis, and emit human-readable or JSON
//! reports.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crnmss::classify::{
    classify, default_budget, find_one_reaction_atoms, one_reaction_mss, AtomForm, Outcome,
    Witness,
};
use crnmss::defone;
use crnmss::dynamics::{
    atom1_analysis, atom2_analysis, atom2_witness_params, SteadyStateSet,
};
use crnmss::model::{Network, Reaction};
use crnmss::parser::{parse_network, NetworkDocument};
use crnmss::rational_string;
use crnmss::report::{
    build_report, steady_state_report, trace_report, AtomReport, Report, SteadyStateReport,
};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "crnmss", about = "Multistationarity analysis of mass-action reaction networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full classification pipeline on a network file
    Analyze(AnalyzeArgs),
    /// Run the Deficiency One Algorithm
    Defone(DefoneArgs),
    /// Produce a numeric two-steady-state witness for an MSS network
    Witness(WitnessArgs),
    /// Print the mass-action differential equations
    Odes(PathArg),
    /// List the one-reaction atoms embedded in a fully open network
    Atoms(AtomsArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    path: PathBuf,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
    /// Directory of *.crn atom files to test for embedded containment
    #[arg(long, value_name = "DIR")]
    atoms_dir: Option<PathBuf>,
    /// Include the Deficiency One Algorithm trace when it runs
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct DefoneArgs {
    path: PathBuf,
    #[arg(long)]
    json: bool,
    /// Dump the g-vector, cut relations and every partition's system
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct WitnessArgs {
    path: PathBuf,
    #[arg(long)]
    json: bool,
    /// Seed for randomized rate selection (default: deterministic k = k*/2)
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct PathArg {
    path: PathBuf,
}

#[derive(Args)]
struct AtomsArgs {
    path: PathBuf,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Defone(args) => cmd_defone(&args),
        Command::Witness(args) => cmd_witness(&args),
        Command::Odes(args) => cmd_odes(&args.path),
        Command::Atoms(args) => cmd_atoms(&args),
    };
    ExitCode::from(code)
}

fn load(path: &Path) -> Result<NetworkDocument, u8> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_INPUT
    })?;
    parse_network(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_INPUT
    })
}

fn load_atoms(dir: &Path) -> Result<Vec<Network>, u8> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| {
            eprintln!("error: cannot read {}: {e}", dir.display());
            EXIT_INPUT
        })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "crn"))
        .collect();
    paths.sort();
    let mut atoms = Vec::new();
    for p in paths {
        atoms.push(load(&p)?.network);
    }
    Ok(atoms)
}

fn emit(report: &Report, json: bool) {
    if json {
        print!("{}", report.to_json());
    } else {
        print_human(report);
    }
}

fn print_human(report: &Report) {
    println!("verdict: {}", report.verdict.outcome);
    if let Some(p) = &report.verdict.provenance {
        println!("provenance: {p}");
    }
    if let Some(atom) = &report.verdict.atom {
        println!(
            "atom: {} on species {} in reaction {}",
            atom.form,
            atom.species.join(", "),
            atom.reaction
        );
    }
    if let Some(embedding) = &report.verdict.embedding {
        println!(
            "embedding: keep species {}; keep reactions: {}",
            embedding.kept_species.join(", "),
            embedding.kept_reactions.join("; ")
        );
    }
    if let Some(mu) = &report.verdict.mu {
        println!("mu: ({})", mu.join(", "));
    }
    let d = &report.structure.deficiency;
    println!(
        "structure: n={} l={} d={} delta={} per-linkage {:?}",
        d.complexes, d.linkage_classes, d.stoich_dimension, d.delta, d.per_linkage
    );
    for line in &report.verdict.checklist {
        println!("  - {line}");
    }
    if let Some(t) = &report.trace {
        println!("step 1 (g-vector):");
        for e in &t.step1_g {
            println!("  g[{}] = {}", e.complex, e.value);
        }
        for pass in &t.passes {
            println!(
                "pass with {}g:",
                if pass.reversed_sign { "-" } else { "" }
            );
            println!("  step 2 (cut-pair relations):");
            for r in &pass.step2_cut_relations {
                println!("    {r}");
            }
            println!("  steps 3-8 (partitions and systems):");
            for p in &pass.step3_partitions {
                let fmt = |v: &[String]| v.join(", ");
                print!(
                    "    U = {{{}}}  M = {{{}}}  L = {{{}}}  feasible = {}",
                    fmt(&p.upper),
                    fmt(&p.middle),
                    fmt(&p.lower),
                    p.feasible
                );
                match &p.mu {
                    Some(mu) => println!("  mu = ({})", mu.join(", ")),
                    None => println!(),
                }
            }
        }
    }
    if let Some(ss) = &report.steady_states {
        println!("rates:");
        for r in &ss.rates {
            println!("  {}  k = {}", r.reaction, r.rate);
        }
        println!("steady states ({}):", ss.certainty);
        for s in &ss.states {
            let exact = s
                .exact
                .as_ref()
                .map(|e| format!("  exact = ({})", e.join(", ")))
                .unwrap_or_default();
            println!(
                "  ({})  residual = {:.3e}  degenerate = {}{}",
                s.coords
                    .iter()
                    .map(|c| format!("{c:.12}"))
                    .collect::<Vec<_>>()
                    .join(", "),
                s.residual,
                s.degenerate,
                exact
            );
        }
        println!("nondegenerate states: {}", ss.nondegenerate_count);
    }
}

fn cmd_analyze(args: &AnalyzeArgs) -> u8 {
    let doc = match load(&args.path) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let atoms = match &args.atoms_dir {
        Some(dir) => match load_atoms(dir) {
            Ok(a) => a,
            Err(code) => return code,
        },
        None => Vec::new(),
    };
    let verdict = classify(&doc.network, &atoms, default_budget());
    let trace = if args.trace {
        defone::run_algorithm(&doc.network)
            .ok()
            .map(|out| trace_report(&doc.network, &out))
    } else {
        None
    };
    let report = build_report(&doc, &verdict, trace, None);
    emit(&report, args.json);
    if verdict.budget_exhausted {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}

fn cmd_defone(args: &DefoneArgs) -> u8 {
    let doc = match load(&args.path) {
        Ok(d) => d,
        Err(code) => return code,
    };
    match defone::run_algorithm(&doc.network) {
        Ok(out) => {
            let verdict = crnmss::classify::MssVerdict {
                outcome: if out.admits_mss {
                    Outcome::Mss
                } else {
                    Outcome::NoMss
                },
                provenance: Some(crnmss::classify::Provenance::DefOneAlgorithm),
                witness: out
                    .mu
                    .clone()
                    .map(Witness::Mu)
                    .unwrap_or(Witness::None),
                checklist: vec!["deficiency one algorithm hypotheses hold".into()],
                budget_exhausted: false,
            };
            let trace = args.trace.then(|| trace_report(&doc.network, &out));
            emit(&build_report(&doc, &verdict, trace, None), args.json);
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn big(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Chooses k in (0, k*): the midpoint by default, or a seeded draw.
fn choose_k(k_star: &BigRational, seed: Option<u64>) -> BigRational {
    match seed {
        None => k_star / big(2),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let denom = 1u64 << 20;
            let num = rng.gen_range(1..denom);
            k_star * big(num) / big(denom)
        }
    }
}

fn witness_states(
    form: &AtomForm,
    seed: Option<u64>,
) -> (Vec<(Reaction, BigRational)>, SteadyStateSet, Vec<String>) {
    let atom = form.network();
    let mut notes = Vec::new();
    match *form {
        AtomForm::SingleSpecies { a1, a2 } => {
            let (k_x, l_x) = (big(1), big(1));
            let analysis = atom1_analysis(a1, a2, &k_x, &l_x, &big(1)).expect("atom exponents");
            let k_star = analysis.k_star.clone();
            let k = choose_k(&k_star, seed);
            notes.push(format!("k* = {}", rational_string(&k_star)));
            notes.push(format!("k = {}", rational_string(&k)));
            let analysis = atom1_analysis(a1, a2, &k_x, &l_x, &k).expect("atom exponents");
            let rates = atom_rates(&atom, &[k], &[k_x], &[l_x]);
            (rates, analysis.states, notes)
        }
        AtomForm::TwoSpecies { b1, b2 } => {
            let k_x = match seed {
                None => big(1),
                Some(s) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(s);
                    big(rng.gen_range(1..=8))
                }
            };
            let params = atom2_witness_params(b1, b2, &k_x).expect("atom exponents");
            let analysis = atom2_analysis(b1, b2, &params).expect("atom exponents");
            notes.push(format!("H = {}", rational_string(&analysis.h)));
            let rates = atom_rates(
                &atom,
                &[params.k.clone()],
                &[params.k_x.clone(), params.k_y.clone()],
                &[params.l_x.clone(), params.l_y.clone()],
            );
            (rates, analysis.states, notes)
        }
    }
}

/// Rate list for a one-reaction fully open atom network: the non-flow
/// rate(s), then per-species inflow/outflow rates.
fn atom_rates(
    atom: &Network,
    non_flow: &[BigRational],
    inflow: &[BigRational],
    outflow: &[BigRational],
) -> Vec<(Reaction, BigRational)> {
    let mut rates = Vec::new();
    for (r, k) in atom.non_flow_reactions().iter().zip(non_flow) {
        rates.push(((*r).clone(), k.clone()));
    }
    for (i, r) in atom
        .reactions()
        .iter()
        .filter(|r| r.is_flow() && r.reactant.is_zero())
        .enumerate()
    {
        rates.push((r.clone(), inflow[i].clone()));
    }
    for (i, r) in atom
        .reactions()
        .iter()
        .filter(|r| r.is_flow() && !r.reactant.is_zero())
        .enumerate()
    {
        rates.push((r.clone(), outflow[i].clone()));
    }
    rates
}

fn cmd_witness(args: &WitnessArgs) -> u8 {
    let doc = match load(&args.path) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let verdict = match one_reaction_mss(&doc.network) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    if verdict.outcome != Outcome::Mss {
        eprintln!("error: network verdict is NoMSS; nothing to witness");
        return EXIT_INPUT;
    }
    let atom = match &verdict.witness {
        Witness::Atom(a) => a.clone(),
        _ => unreachable!("MSS one-reaction verdict always carries an atom"),
    };
    let (rates, states, notes) = witness_states(&atom.form, args.seed);
    let atom_net = atom.form.network();
    let ss: SteadyStateReport = steady_state_report(&atom_net, &rates, &states);
    let mut verdict = verdict;
    verdict.checklist.extend(notes);
    let report = build_report(&doc, &verdict, None, Some(ss));
    emit(&report, args.json);
    EXIT_OK
}

/// Rate label for a reaction: an explicit hint, `<species>_in` /
/// `<species>_out` for flows, or `k<i>` for the i-th non-flow reaction.
fn rate_label(doc: &NetworkDocument, r: &Reaction, non_flow_index: usize) -> String {
    if let Some(k) = doc.rate_hints.get(r) {
        return rational_string(k);
    }
    let n = &doc.network;
    if r.is_flow() {
        let (c, suffix) = if r.reactant.is_zero() {
            (&r.product, "in")
        } else {
            (&r.reactant, "out")
        };
        let i = c.support()[0];
        format!("{}_{}", n.species()[i], suffix)
    } else {
        format!("k{}", non_flow_index + 1)
    }
}

fn monomial_string(n: &Network, c: &crnmss::Complex) -> String {
    let mut parts = Vec::new();
    for (i, &e) in c.coeffs().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(n.species()[i].clone()),
            k => parts.push(format!("{}^{}", n.species()[i], k)),
        }
    }
    parts.join("*")
}

fn cmd_odes(path: &Path) -> u8 {
    let doc = match load(path) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let n = &doc.network;
    let non_flow: Vec<&Reaction> = n.non_flow_reactions();
    for (i, sp) in n.species().iter().enumerate() {
        let mut terms = Vec::new();
        for r in n.reactions() {
            let net = r.product.coeffs()[i] as i64 - r.reactant.coeffs()[i] as i64;
            if net == 0 {
                continue;
            }
            let idx = non_flow.iter().position(|q| *q == r).unwrap_or(0);
            let label = rate_label(&doc, r, idx);
            let mono = monomial_string(n, &r.reactant);
            let mut factors = vec![label];
            if !mono.is_empty() {
                factors.push(mono);
            }
            if net.abs() != 1 {
                factors.insert(0, net.abs().to_string());
            }
            let term = factors.join("*");
            terms.push(if net > 0 {
                format!("+ {term}")
            } else {
                format!("- {term}")
            });
        }
        let rhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" ").trim_start_matches("+ ").to_string()
        };
        println!("d{sp}/dt = {rhs}");
    }
    EXIT_OK
}

fn cmd_atoms(args: &AtomsArgs) -> u8 {
    let doc = match load(&args.path) {
        Ok(d) => d,
        Err(code) => return code,
    };
    if !doc.network.is_fully_open() {
        eprintln!("error: network is not fully open");
        return EXIT_INPUT;
    }
    let atoms = find_one_reaction_atoms(&doc.network);
    if args.json {
        let reports: Vec<AtomReport> = atoms
            .iter()
            .map(|a| AtomReport {
                reaction: doc.network.reaction_string(&a.reaction),
                species: a
                    .species_subset
                    .iter()
                    .map(|&i| doc.network.species()[i].clone())
                    .collect(),
                form: a.form.to_string(),
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&reports).expect("atom serialization")
        );
    } else if atoms.is_empty() {
        println!("no one-reaction atoms found");
    } else {
        for a in atoms {
            println!(
                "atom: {} on species {} in reaction {}",
                a.form,
                a.species_subset
                    .iter()
                    .map(|&i| doc.network.species()[i].clone())
                    .collect::<Vec<_>>()
                    .join(", "),
                doc.network.reaction_string(&a.reaction)
            );
        }
    }
    EXIT_OK
}
