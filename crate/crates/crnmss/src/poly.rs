//! Polynomials with exact rational coefficients: sparse multivariate
//! (mass-action right-hand sides) and dense univariate with Sturm-chain
//! root counting and isolation.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::linalg::from_i64;

/// Sparse multivariate polynomial, exponent vector -> coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Vec<u32>, BigRational>,
    nvars: usize,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
            nvars,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: BigRational) {
        assert_eq!(exps.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key: Vec<Vec<u32>> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_zero())
                .map(|(e, _)| e.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coeff: BigRational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(exps, coeff);
        p
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * factor);
        }
        out
    }

    /// Partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * from_i64(e[var] as i64));
        }
        out
    }

    pub fn eval_rat(&self, x: &[BigRational]) -> BigRational {
        assert_eq!(x.len(), self.nvars);
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (xi, &ei) in x.iter().zip(e) {
                for _ in 0..ei {
                    term *= xi;
                }
            }
            total += term;
        }
        total
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let m: f64 = x
                    .iter()
                    .zip(e)
                    .map(|(xi, &ei)| xi.powi(ei as i32))
                    .product();
                c.to_f64().unwrap_or(f64::NAN) * m
            })
            .sum()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = crate::rational_string(c);
                for (i, &ei) in e.iter().enumerate() {
                    match ei {
                        0 => {}
                        1 => s.push_str(&format!(" x{}", i + 1)),
                        k => s.push_str(&format!(" x{}^{}", i + 1, k)),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Dense univariate polynomial; `coeffs[i]` multiplies `x^i`. The zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * from_i64(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::new(out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, factor: &BigRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Euclidean remainder of `self` by `other` (`other` nonzero).
    pub fn rem(&self, other: &UniPoly) -> UniPoly {
        assert!(!other.is_zero());
        let mut r = self.coeffs.clone();
        let d = other.coeffs.len() - 1;
        let lead = other.coeffs.last().unwrap();
        while r.len() > d {
            let factor = r.last().unwrap() / lead;
            let shift = r.len() - 1 - d;
            for (j, b) in other.coeffs.iter().enumerate() {
                let delta = &factor * b;
                r[shift + j] -= delta;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.coeffs.last().cloned() {
            a = a.scale(&(BigRational::one() / lead));
        }
        a
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn square_free_part(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) || g.is_zero() {
            return self.clone();
        }
        self.div_exact(&g)
    }

    /// Exact division (panics on nonzero remainder).
    pub fn div_exact(&self, other: &UniPoly) -> UniPoly {
        assert!(!other.is_zero());
        let mut r = self.coeffs.clone();
        let d = other.coeffs.len() - 1;
        let lead = other.coeffs.last().unwrap();
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d)];
        while r.len() > d {
            let factor = r.last().unwrap() / lead;
            let shift = r.len() - 1 - d;
            q[shift] = factor.clone();
            for (j, b) in other.coeffs.iter().enumerate() {
                let delta = &factor * b;
                r[shift + j] -= delta;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        assert!(r.is_empty(), "inexact polynomial division");
        UniPoly::new(q)
    }

    /// Sturm chain of the polynomial.
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            chain.push(r);
        }
        chain.pop();
        chain
    }

    /// All coefficients' magnitudes are below `1 + max |c_i| / |lead|`:
    /// every real root lies in `(-bound, bound)`.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = match self.coeffs.last() {
            Some(c) => c.abs(),
            None => return BigRational::one(),
        };
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        BigRational::one() + max / lead
    }

    /// Number of distinct real roots in `(lo, hi]`; `hi = None` means
    /// `+infinity`. Requires a square-free polynomial for multiple-root
    /// inputs to count each root once (the Sturm chain handles that
    /// automatically since the chain terminates at the gcd).
    pub fn sturm_count(&self, lo: &BigRational, hi: Option<&BigRational>) -> usize {
        if self.is_zero() {
            return 0;
        }
        let chain = self.sturm_chain();
        let sign_changes_at = |x: &BigRational| -> usize {
            let signs: Vec<i8> = chain
                .iter()
                .map(|p| {
                    let v = p.eval(x);
                    if v.is_positive() {
                        1
                    } else if v.is_negative() {
                        -1
                    } else {
                        0
                    }
                })
                .collect();
            count_changes(&signs)
        };
        let sign_changes_at_inf = || -> usize {
            let signs: Vec<i8> = chain
                .iter()
                .map(|p| match p.coeffs.last() {
                    Some(c) if c.is_positive() => 1,
                    Some(_) => -1,
                    None => 0,
                })
                .collect();
            count_changes(&signs)
        };
        let at_lo = sign_changes_at(lo);
        let at_hi = match hi {
            Some(h) => sign_changes_at(h),
            None => sign_changes_at_inf(),
        };
        at_lo.saturating_sub(at_hi)
    }

    /// Disjoint rational intervals `(lo, hi]`, each containing exactly one
    /// real root of the square-free part in `(lower, upper]`.
    pub fn isolate_roots(&self, lower: &BigRational, upper: &BigRational) -> Vec<(BigRational, BigRational)> {
        let p = self.square_free_part();
        let mut out = Vec::new();
        let mut stack = vec![(lower.clone(), upper.clone())];
        while let Some((lo, hi)) = stack.pop() {
            let count = p.sturm_count(&lo, Some(&hi));
            match count {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / from_i64(2);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Bisects an isolating interval down to width `<= tol` (f64 scale).
    pub fn refine_root(&self, mut lo: BigRational, mut hi: BigRational, tol: f64) -> f64 {
        let p = self.square_free_part();
        // invariant from isolation: exactly one root in (lo, hi]
        if p.eval(&hi).is_zero() {
            return ratf(&hi);
        }
        // sign(lo) and sign(hi) differ or sign(lo) is zero
        while ratf(&hi) - ratf(&lo) > tol {
            let mid = (&lo + &hi) / from_i64(2);
            let v = p.eval(&mid);
            if v.is_zero() {
                return ratf(&mid);
            }
            if p.sturm_count(&lo, Some(&mid)) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (ratf(&lo) + ratf(&hi)) / 2.0
    }
}

fn ratf(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn count_changes(signs: &[i8]) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn multipoly_partial_and_eval() {
        // p = 3 x^2 y - 2 y
        let mut p = MultiPoly::zero(2);
        p.add_term(vec![2, 1], from_i64(3));
        p.add_term(vec![0, 1], from_i64(-2));
        let px = p.partial(0); // 6 x y
        assert_eq!(px.eval_rat(&[from_i64(2), from_i64(5)]), from_i64(60));
        let py = p.partial(1); // 3 x^2 - 2
        assert_eq!(py.eval_rat(&[from_i64(2), from_i64(7)]), from_i64(10));
        assert_eq!(p.eval_rat(&[from_i64(1), from_i64(1)]), from_i64(1));
        assert!((p.eval_f64(&[1.0, 1.0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn multipoly_cancellation() {
        let mut p = MultiPoly::zero(1);
        p.add_term(vec![3], from_i64(5));
        p.add_term(vec![3], from_i64(-5));
        assert!(p.is_zero());
    }

    #[test]
    fn unipoly_rem_and_gcd() {
        // (x-1)(x-2) and (x-1)(x-3) share x-1
        let a = UniPoly::from_i64_coeffs(&[2, -3, 1]);
        let b = UniPoly::from_i64_coeffs(&[3, -4, 1]);
        let g = a.gcd(&b);
        assert_eq!(g, UniPoly::from_i64_coeffs(&[-1, 1]));
    }

    #[test]
    fn square_free_part_strips_multiplicity() {
        // (x-1)^2 (x+2)
        let p = UniPoly::from_i64_coeffs(&[-1, 1])
            .mul(&UniPoly::from_i64_coeffs(&[-1, 1]))
            .mul(&UniPoly::from_i64_coeffs(&[2, 1]));
        let sf = p.square_free_part();
        assert_eq!(sf.degree(), Some(2));
        assert!(sf.eval(&from_i64(1)).is_zero());
        assert!(sf.eval(&from_i64(-2)).is_zero());
    }

    #[test]
    fn sturm_counts_on_intervals() {
        // x^2 - 2: one root in (0, 2], one in (-2, 0]... none at 0
        let p = UniPoly::from_i64_coeffs(&[-2, 0, 1]);
        assert_eq!(p.sturm_count(&from_i64(0), Some(&from_i64(2))), 1);
        assert_eq!(p.sturm_count(&from_i64(-2), Some(&from_i64(0))), 1);
        assert_eq!(p.sturm_count(&from_i64(0), None), 1);
        assert_eq!(p.sturm_count(&from_i64(2), None), 0);
        // (x-1)^2 has one distinct root
        let q = UniPoly::from_i64_coeffs(&[1, -2, 1]);
        assert_eq!(q.sturm_count(&from_i64(0), Some(&from_i64(2))), 1);
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let p = UniPoly::from_i64_coeffs(&[-6, 11, -6, 1]); // roots 1, 2, 3
        let b = p.cauchy_bound();
        assert!(b > from_i64(3));
        assert_eq!(p.sturm_count(&(-b.clone()), Some(&b)), 3);
    }

    #[test]
    fn isolate_and_refine() {
        // roots at sqrt(2) and -sqrt(2)
        let p = UniPoly::from_i64_coeffs(&[-2, 0, 1]);
        let ivs = p.isolate_roots(&from_i64(-10), &from_i64(10));
        assert_eq!(ivs.len(), 2);
        let root = p.refine_root(ivs[1].0.clone(), ivs[1].1.clone(), 1e-12);
        assert!((root - std::f64::consts::SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn rational_coefficients_roundtrip() {
        // 2(x - 1/2)(x - 1/3) = 2x^2 - 5/3 x + 1/3
        let p = UniPoly::new(vec![r(1, 3), r(-5, 3), from_i64(2)]);
        assert!(p.eval(&r(1, 2)).is_zero());
        assert!(p.eval(&r(1, 3)).is_zero());
        assert_eq!(p.sturm_count(&from_i64(0), Some(&from_i64(1))), 2);
    }
}
