//! Mass-action dynamics: symbolic right-hand sides and jacobians, exact
//! analysis of the two one-reaction atom families, and a numeric
//! steady-state oracle for one-reaction fully open networks.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num::{BigRational, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::from_i64;
use crate::model::{Complex, Network, Reaction};
use crate::poly::{MultiPoly, UniPoly};

/// Residual bound for accepting a numeric steady state.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Bisection width for root refinement.
pub const ROOT_TOL: f64 = 1e-12;
/// A jacobian is flagged singular when `sigma_min < SINGULAR_TOL * sigma_max`.
pub const SINGULAR_TOL: f64 = 1e-8;
/// Bracketing grid size for the scalar reduction.
const GRID: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("no rate assigned to reaction `{0}`")]
    MissingRate(String),
    #[error("nonpositive rate for reaction `{0}`")]
    NonpositiveRate(String),
    #[error("invalid stoichiometric exponents: {0}")]
    BadExponents(String),
    #[error("network is not a one-reaction fully open network: {0}")]
    NotOneReaction(String),
}

/// Positive rate constant per reaction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RateAssignment {
    pub rates: BTreeMap<Reaction, BigRational>,
}

impl RateAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, r: Reaction, rate: BigRational) {
        self.rates.insert(r, rate);
    }

    pub fn get(&self, r: &Reaction) -> Option<&BigRational> {
        self.rates.get(r)
    }

    /// Same positive rate for every reaction of the network.
    pub fn uniform(n: &Network, rate: BigRational) -> Self {
        let mut out = Self::new();
        for r in n.reactions() {
            out.insert(r.clone(), rate.clone());
        }
        out
    }
}

/// The mass-action ODE system `x' = rhs(x)` with exact coefficients.
#[derive(Clone, Debug)]
pub struct MassActionSystem {
    pub network: Network,
    pub rates: RateAssignment,
    pub rhs: Vec<MultiPoly>,
}

pub fn mass_action_system(
    n: &Network,
    rates: &RateAssignment,
) -> Result<MassActionSystem, DynamicsError> {
    let s = n.species_count();
    let mut rhs = vec![MultiPoly::zero(s); s];
    for r in n.reactions() {
        let rate = rates
            .get(r)
            .ok_or_else(|| DynamicsError::MissingRate(n.reaction_string(r)))?;
        if !rate.is_positive() {
            return Err(DynamicsError::NonpositiveRate(n.reaction_string(r)));
        }
        let exps = r.reactant.coeffs().to_vec();
        for (i, d) in r.vector().iter().enumerate() {
            if *d != 0 {
                rhs[i].add_term(exps.clone(), rate * from_i64(*d));
            }
        }
    }
    Ok(MassActionSystem {
        network: n.clone(),
        rates: rates.clone(),
        rhs,
    })
}

impl MassActionSystem {
    /// Formal partial derivatives, `jacobian[i][j] = d rhs_i / d x_j`.
    pub fn jacobian(&self) -> Vec<Vec<MultiPoly>> {
        let s = self.network.species_count();
        self.rhs
            .iter()
            .map(|f| (0..s).map(|j| f.partial(j)).collect())
            .collect()
    }

    pub fn rhs_norm_at(&self, x: &[f64]) -> f64 {
        self.rhs
            .iter()
            .map(|f| f.eval_f64(x).abs())
            .fold(0.0, f64::max)
    }

    /// True when the jacobian at `x` is numerically singular.
    pub fn jacobian_singular_at(&self, x: &[f64]) -> bool {
        let s = self.network.species_count();
        let jac = self.jacobian();
        let m = DMatrix::from_fn(s, s, |i, j| jac[i][j].eval_f64(x));
        let svd = m.svd(false, false);
        let max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let min = svd.singular_values.iter().cloned().fold(f64::MAX, f64::min);
        max == 0.0 || min < SINGULAR_TOL * max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Two,
    OneDegenerate,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountCertainty {
    Exact,
    NumericIsolated,
}

#[derive(Clone, Debug)]
pub struct SteadyState {
    pub coords: Vec<f64>,
    /// Exact coordinates when they are rational.
    pub exact: Option<Vec<BigRational>>,
    pub degenerate: bool,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct SteadyStateSet {
    pub states: Vec<SteadyState>,
    pub certainty: CountCertainty,
}

impl SteadyStateSet {
    pub fn nondegenerate_count(&self) -> usize {
        self.states.iter().filter(|s| !s.degenerate).count()
    }
}

fn rat_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

fn ratf(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact `n`-th root of a nonnegative rational, when it is rational.
fn exact_nth_root(x: &BigRational, n: u32) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let num_root = num::integer::Roots::nth_root(x.numer(), n);
    let den_root = num::integer::Roots::nth_root(x.denom(), n);
    let candidate = BigRational::new(num_root, den_root);
    if rat_pow(&candidate, n) == *x {
        Some(candidate)
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct Atom1Analysis {
    pub k_star: BigRational,
    pub regime: Regime,
    pub states: SteadyStateSet,
    /// `f(x) = kX - lX x + k(a2-a1) x^{a1}`, the scalar rhs.
    pub f: UniPoly,
}

/// Exact analysis of the single-species atom `a1 X -> a2 X` with flows:
/// `k_star = (1/(a2-a1)) (lX/a1)^{a1} ((a1-1)/kX)^{a1-1}` splits the rate
/// space into two / one degenerate / zero positive steady states.
pub fn atom1_analysis(
    a1: u32,
    a2: u32,
    k_x: &BigRational,
    l_x: &BigRational,
    k: &BigRational,
) -> Result<Atom1Analysis, DynamicsError> {
    if !(a2 > a1 && a1 > 1) {
        return Err(DynamicsError::BadExponents(format!(
            "need a2 > a1 > 1, got a1={a1}, a2={a2}"
        )));
    }
    for (name, v) in [("kX", k_x), ("lX", l_x), ("k", k)] {
        if !v.is_positive() {
            return Err(DynamicsError::NonpositiveRate(name.to_string()));
        }
    }
    let gap = from_i64((a2 - a1) as i64);
    let k_star = rat_pow(&(l_x / from_i64(a1 as i64)), a1)
        * rat_pow(&(from_i64((a1 - 1) as i64) / k_x), a1 - 1)
        / &gap;

    let mut coeffs = vec![BigRational::zero(); a1 as usize + 1];
    coeffs[0] = k_x.clone();
    coeffs[1] = -l_x.clone();
    coeffs[a1 as usize] = k * &gap;
    let f = UniPoly::new(coeffs);

    let regime = match k.cmp(&k_star) {
        std::cmp::Ordering::Less => Regime::Two,
        std::cmp::Ordering::Equal => Regime::OneDegenerate,
        std::cmp::Ordering::Greater => Regime::Zero,
    };
    // cross-validate the regime against the exact positive-root count
    let positive_roots = f.sturm_count(&BigRational::zero(), None);
    let expected = match regime {
        Regime::Two => 2,
        Regime::OneDegenerate => 1,
        Regime::Zero => 0,
    };
    assert_eq!(
        positive_roots, expected,
        "regime does not match the Sturm count"
    );

    let states = match regime {
        Regime::Zero => SteadyStateSet {
            states: Vec::new(),
            certainty: CountCertainty::Exact,
        },
        Regime::OneDegenerate => {
            // minimum of f: x* = (lX / (k a1 (a2-a1)))^{1/(a1-1)}
            let radicand = l_x / (k * from_i64(a1 as i64) * &gap);
            let exact = exact_nth_root(&radicand, a1 - 1);
            let coords = match &exact {
                Some(r) => ratf(r),
                None => ratf(&radicand).powf(1.0 / (a1 as f64 - 1.0)),
            };
            SteadyStateSet {
                states: vec![SteadyState {
                    coords: vec![coords],
                    exact: exact.map(|r| vec![r]),
                    degenerate: true,
                    residual: f.eval_f64(coords).abs(),
                }],
                certainty: CountCertainty::Exact,
            }
        }
        Regime::Two => {
            let bound = f.cauchy_bound();
            let ivs = f.isolate_roots(&BigRational::zero(), &bound);
            let states = ivs
                .into_iter()
                .map(|(lo, hi)| {
                    let x = f.refine_root(lo, hi, ROOT_TOL);
                    SteadyState {
                        coords: vec![x],
                        exact: None,
                        degenerate: false,
                        residual: f.eval_f64(x).abs(),
                    }
                })
                .collect();
            SteadyStateSet {
                states,
                certainty: CountCertainty::Exact,
            }
        }
    };
    Ok(Atom1Analysis {
        k_star,
        regime,
        states,
        f,
    })
}

#[derive(Clone, Debug)]
pub struct Atom2Analysis {
    pub h: BigRational,
    pub regime: Regime,
    pub states: SteadyStateSet,
    /// The reduced quadratic `g(x) = C - B x + A x^2`.
    pub g: UniPoly,
}

/// Parameters for the two-species atom `X + Y -> b1 X + b2 Y` with flows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom2Params {
    pub k_x: BigRational,
    pub k_y: BigRational,
    pub l_x: BigRational,
    pub l_y: BigRational,
    pub k: BigRational,
}

/// Exact analysis of the two-species atom: the discriminant ratio
/// `H = (lY / (4 k (b2-1) lX kX)) (lX + (k/lY)(kX(b2-1) - kY(b1-1)))^2`
/// decides two / one degenerate / zero positive steady states (the
/// quadratic term of the reduced equation carries `b2-1`: substituting
/// `y(x)` into `kX - lX x + k(b1-1)xy = 0` multiplies the slope
/// `(b2-1) lX / ((b1-1) lY)` of `y(x)` by `k(b1-1)x`). Positive roots
/// additionally require the linear coefficient `B` to be positive.
pub fn atom2_analysis(
    b1: u32,
    b2: u32,
    p: &Atom2Params,
) -> Result<Atom2Analysis, DynamicsError> {
    if b1 <= 1 || b2 <= 1 {
        return Err(DynamicsError::BadExponents(format!(
            "need b1 > 1 and b2 > 1, got b1={b1}, b2={b2}"
        )));
    }
    for (name, v) in [
        ("kX", &p.k_x),
        ("kY", &p.k_y),
        ("lX", &p.l_x),
        ("lY", &p.l_y),
        ("k", &p.k),
    ] {
        if !v.is_positive() {
            return Err(DynamicsError::NonpositiveRate(name.to_string()));
        }
    }
    let c1 = from_i64((b1 - 1) as i64);
    let c2 = from_i64((b2 - 1) as i64);
    // g(x) = C - B x + A x^2
    let b_coef = &p.l_x + &p.k / &p.l_y * (&p.k_x * &c2 - &p.k_y * &c1);
    let a_coef = &p.k * &c2 * &p.l_x / &p.l_y;
    let c_coef = p.k_x.clone();
    let h = &p.l_y / (from_i64(4) * &p.k * &c2 * &p.l_x * &p.k_x) * &b_coef * &b_coef;
    let g = UniPoly::new(vec![c_coef.clone(), -b_coef.clone(), a_coef.clone()]);

    let regime = if !b_coef.is_positive() {
        // A > 0 and C > 0, so g has no positive root unless B > 0
        Regime::Zero
    } else {
        match h.cmp(&BigRational::one()) {
            std::cmp::Ordering::Greater => Regime::Two,
            std::cmp::Ordering::Equal => Regime::OneDegenerate,
            std::cmp::Ordering::Less => Regime::Zero,
        }
    };
    // y on the steady-state line: y(x) = kY/lY - (1/lY)((b2-1)/(b1-1))(kX - lX x)
    let y_of_exact = |x: &BigRational| -> BigRational {
        &p.k_y / &p.l_y - (&p.k_x - &p.l_x * x) * &c2 / (&c1 * &p.l_y)
    };
    let y_of_f64 = |x: f64| -> f64 {
        ratf(&p.k_y) / ratf(&p.l_y)
            - (ratf(&p.k_x) - ratf(&p.l_x) * x) * ratf(&c2) / (ratf(&c1) * ratf(&p.l_y))
    };
    let residual_at = |x: f64, y: f64| -> f64 {
        let f1 = ratf(&p.k_x) - ratf(&p.l_x) * x + ratf(&p.k) * ratf(&c1) * x * y;
        let f2 = ratf(&p.k_y) - ratf(&p.l_y) * y + ratf(&p.k) * ratf(&c2) * x * y;
        f1.abs().max(f2.abs())
    };

    let states = match regime {
        Regime::Zero => Vec::new(),
        Regime::OneDegenerate => {
            let x = &b_coef / (from_i64(2) * &a_coef);
            let y = y_of_exact(&x);
            let (xf, yf) = (ratf(&x), ratf(&y));
            vec![SteadyState {
                coords: vec![xf, yf],
                exact: Some(vec![x, y]),
                degenerate: true,
                residual: residual_at(xf, yf),
            }]
        }
        Regime::Two => {
            let disc = &b_coef * &b_coef - from_i64(4) * &a_coef * &c_coef;
            let two_a = from_i64(2) * &a_coef;
            match exact_nth_root(&disc, 2) {
                Some(sq) => [-BigRational::one(), BigRational::one()]
                    .iter()
                    .map(|sign| {
                        let x = (&b_coef + sign * &sq) / &two_a;
                        let y = y_of_exact(&x);
                        let (xf, yf) = (ratf(&x), ratf(&y));
                        SteadyState {
                            coords: vec![xf, yf],
                            exact: Some(vec![x, y]),
                            degenerate: false,
                            residual: residual_at(xf, yf),
                        }
                    })
                    .collect(),
                None => {
                    let sq = ratf(&disc).sqrt();
                    [-1.0f64, 1.0]
                        .iter()
                        .map(|sign| {
                            let x = (ratf(&b_coef) + sign * sq) / ratf(&two_a);
                            let y = y_of_f64(x);
                            SteadyState {
                                coords: vec![x, y],
                                exact: None,
                                degenerate: false,
                                residual: residual_at(x, y),
                            }
                        })
                        .collect()
                }
            }
        }
    };
    Ok(Atom2Analysis {
        h,
        regime,
        states: SteadyStateSet {
            states,
            certainty: CountCertainty::Exact,
        },
        g,
    })
}

/// The deterministic witness recipe: `kY = kX (b2-1)/(b1-1)` makes the
/// linear coefficient collapse to `B = lX`; with `lX = kX+1` and
/// `lY = 2(b2-1) lX` (so the implied `k = lY / (2(b2-1) lX)` is 1), the
/// ratio is `H = (kX+1)^2 / (2 kX) > 1`.
pub fn atom2_witness_params(
    b1: u32,
    b2: u32,
    k_x: &BigRational,
) -> Result<Atom2Params, DynamicsError> {
    if b1 <= 1 || b2 <= 1 {
        return Err(DynamicsError::BadExponents(format!(
            "need b1 > 1 and b2 > 1, got b1={b1}, b2={b2}"
        )));
    }
    if !k_x.is_positive() {
        return Err(DynamicsError::NonpositiveRate("kX".to_string()));
    }
    let c1 = from_i64((b1 - 1) as i64);
    let c2 = from_i64((b2 - 1) as i64);
    let l_x = k_x + BigRational::one();
    let l_y = from_i64(2) * &c2 * &l_x;
    Ok(Atom2Params {
        k_x: k_x.clone(),
        k_y: k_x * &c2 / &c1,
        l_x,
        l_y,
        k: BigRational::one(),
    })
}

/// The flow and non-flow rates of a one-reaction fully open network.
struct OneReactionRates {
    inflow: Vec<BigRational>,
    outflow: Vec<BigRational>,
    a: Vec<u32>,
    b: Vec<u32>,
    k_fwd: BigRational,
    k_rev: Option<BigRational>,
}

fn one_reaction_rates(
    n: &Network,
    rates: &RateAssignment,
) -> Result<OneReactionRates, DynamicsError> {
    if !n.is_fully_open() {
        return Err(DynamicsError::NotOneReaction(
            "network is not fully open".into(),
        ));
    }
    let s = n.species_count();
    let non_flow = n.non_flow_reactions();
    let (a, b, k_fwd, k_rev) = match non_flow.len() {
        0 => (
            vec![0; s],
            vec![0; s],
            BigRational::zero(),
            Some(BigRational::zero()),
        ),
        1 => {
            let r = non_flow[0];
            let rate = rates
                .get(r)
                .ok_or_else(|| DynamicsError::MissingRate(n.reaction_string(r)))?;
            (
                r.reactant.coeffs().to_vec(),
                r.product.coeffs().to_vec(),
                rate.clone(),
                None,
            )
        }
        2 if *non_flow[1] == non_flow[0].reverse() => {
            let r = non_flow[0];
            let fwd = rates
                .get(r)
                .ok_or_else(|| DynamicsError::MissingRate(n.reaction_string(r)))?;
            let rev = rates
                .get(non_flow[1])
                .ok_or_else(|| DynamicsError::MissingRate(n.reaction_string(non_flow[1])))?;
            (
                r.reactant.coeffs().to_vec(),
                r.product.coeffs().to_vec(),
                fwd.clone(),
                Some(rev.clone()),
            )
        }
        k => {
            return Err(DynamicsError::NotOneReaction(format!(
                "{k} non-flow reactions"
            )))
        }
    };
    let mut inflow = Vec::with_capacity(s);
    let mut outflow = Vec::with_capacity(s);
    for i in 0..s {
        let fin = Reaction::new(Complex::zero(s), Complex::unit(s, i));
        let fout = fin.reverse();
        let ki = rates
            .get(&fin)
            .ok_or_else(|| DynamicsError::MissingRate(n.reaction_string(&fin)))?;
        let li = rates
            .get(&fout)
            .ok_or_else(|| DynamicsError::MissingRate(n.reaction_string(&fout)))?;
        if !ki.is_positive() || !li.is_positive() {
            return Err(DynamicsError::NonpositiveRate(n.species()[i].clone()));
        }
        inflow.push(ki.clone());
        outflow.push(li.clone());
    }
    Ok(OneReactionRates {
        inflow,
        outflow,
        a,
        b,
        k_fwd,
        k_rev,
    })
}

/// Steady states of a one-reaction fully open network via the scalar
/// reduction: with `t` the net non-flow flux, each `x_i(t) =
/// (k_i + (b_i - a_i) t) / l_i` and `t` must solve
/// `h(t) = k_a prod x_i(t)^{a_i} - k_b prod x_i(t)^{b_i} - t = 0`
/// on the interval keeping every `x_i(t) > 0`. Roots are bracketed on a
/// dense grid and bisected; each state is verified against the full rhs
/// and its jacobian conditioning sets the degeneracy flag.
pub fn one_reaction_steady_states(
    n: &Network,
    rates: &RateAssignment,
) -> Result<SteadyStateSet, DynamicsError> {
    let or = one_reaction_rates(n, rates)?;
    let s = n.species_count();

    // Pure-flow network: the unique steady state is x_i = k_i / l_i.
    if or.a.iter().all(|&v| v == 0) && or.b.iter().all(|&v| v == 0) {
        let exact: Vec<BigRational> = or
            .inflow
            .iter()
            .zip(&or.outflow)
            .map(|(k, l)| k / l)
            .collect();
        let coords: Vec<f64> = exact.iter().map(ratf).collect();
        let sys = mass_action_system(n, rates)?;
        let residual = sys.rhs_norm_at(&coords);
        let degenerate = sys.jacobian_singular_at(&coords);
        return Ok(SteadyStateSet {
            states: vec![SteadyState {
                coords,
                exact: Some(exact),
                degenerate,
                residual,
            }],
            certainty: CountCertainty::Exact,
        });
    }

    // x_i(t) as exact linear polynomials in t
    let x_of_t: Vec<UniPoly> = (0..s)
        .map(|i| {
            UniPoly::new(vec![
                &or.inflow[i] / &or.outflow[i],
                from_i64(or.b[i] as i64 - or.a[i] as i64) / &or.outflow[i],
            ])
        })
        .collect();
    // h(t) = k_fwd prod x^a - k_rev prod x^b - t, an exact polynomial
    let prod_pow = |exps: &[u32]| -> UniPoly {
        let mut acc = UniPoly::new(vec![BigRational::one()]);
        for (xi, &e) in x_of_t.iter().zip(exps) {
            for _ in 0..e {
                acc = acc.mul(xi);
            }
        }
        acc
    };
    let mut h = prod_pow(&or.a).scale(&or.k_fwd);
    if let Some(k_rev) = &or.k_rev {
        h = h.add(&prod_pow(&or.b).scale(&-k_rev.clone()));
    }
    h = h.add(&UniPoly::new(vec![BigRational::zero(), -BigRational::one()]));
    if h.is_zero() {
        return Err(DynamicsError::NotOneReaction(
            "degenerate scalar reduction".into(),
        ));
    }

    // positivity interval for t, clipped to the Cauchy root bound of h
    let bound = h.cauchy_bound();
    let mut t_lo = -ratf(&bound);
    let mut t_hi = ratf(&bound);
    for i in 0..s {
        let d = or.b[i] as i64 - or.a[i] as i64;
        let lim = -ratf(&or.inflow[i]) / d as f64;
        match d.cmp(&0) {
            std::cmp::Ordering::Greater => t_lo = t_lo.max(lim),
            std::cmp::Ordering::Less => t_hi = t_hi.min(lim),
            std::cmp::Ordering::Equal => {}
        }
    }
    let mut roots: Vec<f64> = Vec::new();
    if t_lo < t_hi {
        let margin = (t_hi - t_lo) * 1e-9;
        let (lo, hi) = (t_lo + margin, t_hi - margin);
        let step = (hi - lo) / GRID as f64;
        let mut prev_t = lo;
        let mut prev_v = h.eval_f64(prev_t);
        for i in 1..=GRID {
            let t = lo + step * i as f64;
            let v = h.eval_f64(t);
            if prev_v == 0.0 {
                roots.push(prev_t);
            } else if prev_v * v < 0.0 {
                // bisect to ROOT_TOL
                let (mut a, mut b, mut fa) = (prev_t, t, prev_v);
                while b - a > ROOT_TOL {
                    let m = 0.5 * (a + b);
                    let fm = h.eval_f64(m);
                    if fm == 0.0 {
                        a = m;
                        b = m;
                    } else if fa * fm < 0.0 {
                        b = m;
                    } else {
                        a = m;
                        fa = fm;
                    }
                }
                roots.push(0.5 * (a + b));
            }
            prev_t = t;
            prev_v = v;
        }
        if prev_v == 0.0 {
            roots.push(prev_t);
        }
    }

    let sys = mass_action_system(n, rates)?;
    let mut states = Vec::new();
    for t in roots {
        let coords: Vec<f64> = x_of_t.iter().map(|p| p.eval_f64(t)).collect();
        if coords.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            continue;
        }
        let residual = sys.rhs_norm_at(&coords);
        if residual > RESIDUAL_TOL {
            continue;
        }
        let degenerate = sys.jacobian_singular_at(&coords);
        states.push(SteadyState {
            coords,
            exact: None,
            degenerate,
            residual,
        });
    }
    Ok(SteadyStateSet {
        states,
        certainty: CountCertainty::NumericIsolated,
    })
}

/// Convenience: builds the rate assignment of a one-reaction fully open
/// network from per-species flow rates and the non-flow rate(s).
pub fn one_reaction_rate_assignment(
    n: &Network,
    inflow: &[BigRational],
    outflow: &[BigRational],
    k_fwd: &BigRational,
    k_rev: Option<&BigRational>,
) -> RateAssignment {
    let s = n.species_count();
    let mut rates = RateAssignment::new();
    for i in 0..s {
        let fin = Reaction::new(Complex::zero(s), Complex::unit(s, i));
        rates.insert(fin.reverse(), outflow[i].clone());
        rates.insert(fin, inflow[i].clone());
    }
    let non_flow = n.non_flow_reactions();
    if let Some(r) = non_flow.first() {
        rates.insert((*r).clone(), k_fwd.clone());
        if let (Some(k_rev), Some(rev)) = (k_rev, non_flow.get(1)) {
            rates.insert((*rev).clone(), k_rev.clone());
        }
    }
    rates
}
