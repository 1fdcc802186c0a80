//! Exact feasibility of mixed strict/non-strict rational linear systems.
//!
//! Fourier-Motzkin elimination with strictness tracked through every
//! combination step. Equality constraints are eliminated by substitution
//! before projecting. On success a rational solution point is recovered by
//! back-substitution.

use num::{BigRational, Signed, Zero};

use crate::linalg::{dot, from_i64};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Cmp {
    /// `coeffs . x + constant = 0`
    Eq,
    /// `coeffs . x + constant >= 0`
    Ge,
    /// `coeffs . x + constant > 0`
    Gt,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub constant: BigRational,
    pub cmp: Cmp,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, constant: BigRational, cmp: Cmp) -> Self {
        Constraint {
            coeffs,
            constant,
            cmp,
        }
    }

    pub fn homogeneous(coeffs: Vec<BigRational>, cmp: Cmp) -> Self {
        Constraint::new(coeffs, BigRational::zero(), cmp)
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        let v = dot(&self.coeffs, x) + &self.constant;
        match self.cmp {
            Cmp::Eq => v.is_zero(),
            Cmp::Ge => !v.is_negative(),
            Cmp::Gt => v.is_positive(),
        }
    }
}

/// Returns a rational point satisfying every constraint, or `None` if the
/// system is infeasible.
pub fn feasible_point(constraints: &[Constraint], nvars: usize) -> Option<Vec<BigRational>> {
    for c in constraints {
        assert_eq!(c.coeffs.len(), nvars, "constraint dimension mismatch");
    }
    solve(constraints.to_vec(), nvars)
}

/// Variables `0..remaining` are still free; coefficients above `remaining`
/// are zero by construction.
fn solve(cons: Vec<Constraint>, remaining: usize) -> Option<Vec<BigRational>> {
    if remaining == 0 {
        for c in &cons {
            let ok = match c.cmp {
                Cmp::Eq => c.constant.is_zero(),
                Cmp::Ge => !c.constant.is_negative(),
                Cmp::Gt => c.constant.is_positive(),
            };
            if !ok {
                return None;
            }
        }
        return Some(Vec::new());
    }
    let k = remaining - 1;

    // Prefer eliminating through an equality pivot.
    if let Some(pos) = cons
        .iter()
        .position(|c| c.cmp == Cmp::Eq && !c.coeffs[k].is_zero())
    {
        let pivot = cons[pos].clone();
        let rest: Vec<Constraint> = cons
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pos)
            .map(|(_, c)| substitute(c, &pivot, k))
            .collect();
        let mut sol = solve(rest, k)?;
        let mut val = pivot.constant.clone();
        for (j, s) in sol.iter().enumerate() {
            val += &pivot.coeffs[j] * s;
        }
        sol.push(-val / &pivot.coeffs[k]);
        return Some(sol);
    }

    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    let mut rest = Vec::new();
    for c in cons {
        if c.coeffs[k].is_zero() {
            rest.push(c);
        } else if c.coeffs[k].is_positive() {
            lowers.push(c);
        } else {
            uppers.push(c);
        }
    }
    for lo in &lowers {
        for hi in &uppers {
            rest.push(combine(lo, hi, k));
        }
    }
    let sol = solve(rest, k)?;
    let value = pick_value(&lowers, &uppers, &sol, k);
    let mut sol = sol;
    sol.push(value);
    Some(sol)
}

/// Eliminates `x_k` from `c` using the equality `pivot`.
fn substitute(c: &Constraint, pivot: &Constraint, k: usize) -> Constraint {
    if c.coeffs[k].is_zero() {
        return c.clone();
    }
    let factor = &c.coeffs[k] / &pivot.coeffs[k];
    let coeffs: Vec<BigRational> = c
        .coeffs
        .iter()
        .zip(&pivot.coeffs)
        .map(|(a, p)| a - &factor * p)
        .collect();
    let constant = &c.constant - &factor * &pivot.constant;
    Constraint::new(coeffs, constant, c.cmp)
}

/// Positive-coefficient `lo` and negative-coefficient `hi` combine into a
/// constraint free of `x_k`; strict if either parent is strict.
fn combine(lo: &Constraint, hi: &Constraint, k: usize) -> Constraint {
    let a = lo.coeffs[k].clone();
    let b = -hi.coeffs[k].clone();
    let coeffs: Vec<BigRational> = lo
        .coeffs
        .iter()
        .zip(&hi.coeffs)
        .map(|(l, h)| &b * l + &a * h)
        .collect();
    let constant = &b * &lo.constant + &a * &hi.constant;
    let cmp = if lo.cmp == Cmp::Gt || hi.cmp == Cmp::Gt {
        Cmp::Gt
    } else {
        Cmp::Ge
    };
    Constraint::new(coeffs, constant, cmp)
}

fn pick_value(
    lowers: &[Constraint],
    uppers: &[Constraint],
    sol: &[BigRational],
    k: usize,
) -> BigRational {
    let bound = |c: &Constraint| -> (BigRational, bool) {
        // c.coeffs[k] * x_k + rest (cmp) 0
        let mut rest = c.constant.clone();
        for (j, s) in sol.iter().enumerate() {
            rest += &c.coeffs[j] * s;
        }
        (-rest / &c.coeffs[k], c.cmp == Cmp::Gt)
    };
    let lower = lowers
        .iter()
        .map(bound)
        .max_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let upper = uppers
        .iter()
        .map(bound)
        .min_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    match (lower, upper) {
        (None, None) => BigRational::zero(),
        (Some((lo, _)), None) => lo + from_i64(1),
        (None, Some((hi, _))) => hi - from_i64(1),
        (Some((lo, lo_strict)), Some((hi, hi_strict))) => {
            if lo < hi {
                (&lo + &hi) / from_i64(2)
            } else {
                debug_assert!(lo == hi && !lo_strict && !hi_strict);
                lo
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from_i64;

    fn c(coeffs: &[i64], constant: i64, cmp: Cmp) -> Constraint {
        Constraint::new(vec_from_i64(coeffs), from_i64(constant), cmp)
    }

    #[test]
    fn contradictory_strict_pair() {
        // x > 0 and x < 0
        let cons = vec![c(&[1], 0, Cmp::Gt), c(&[-1], 0, Cmp::Gt)];
        assert!(feasible_point(&cons, 1).is_none());
    }

    #[test]
    fn strict_open_interval() {
        // 0 < x < 1
        let cons = vec![c(&[1], 0, Cmp::Gt), c(&[-1], 1, Cmp::Gt)];
        let p = feasible_point(&cons, 1).unwrap();
        assert!(cons.iter().all(|c| c.satisfied_by(&p)));
    }

    #[test]
    fn strict_versus_closed_at_same_point() {
        // x >= 1 and x < 1 is infeasible; x >= 1 and x <= 1 pins x = 1
        assert!(feasible_point(&[c(&[1], -1, Cmp::Ge), c(&[-1], 1, Cmp::Gt)], 1).is_none());
        let p = feasible_point(&[c(&[1], -1, Cmp::Ge), c(&[-1], 1, Cmp::Ge)], 1).unwrap();
        assert_eq!(p[0], from_i64(1));
    }

    #[test]
    fn equalities_substituted() {
        // x + y = 3, x - y > 0, y >= 1
        let cons = vec![
            c(&[1, 1], -3, Cmp::Eq),
            c(&[1, -1], 0, Cmp::Gt),
            c(&[0, 1], -1, Cmp::Ge),
        ];
        let p = feasible_point(&cons, 2).unwrap();
        assert!(cons.iter().all(|c| c.satisfied_by(&p)));
    }

    #[test]
    fn homogeneous_strict_system() {
        // x > 0, y > 0, x + y < 1 has rational solutions
        let cons = vec![
            c(&[1, 0], 0, Cmp::Gt),
            c(&[0, 1], 0, Cmp::Gt),
            c(&[-1, -1], 1, Cmp::Gt),
        ];
        let p = feasible_point(&cons, 2).unwrap();
        assert!(cons.iter().all(|c| c.satisfied_by(&p)));
    }

    #[test]
    fn three_variable_chain() {
        // x > y > z > 0 and x + z = 2
        let cons = vec![
            c(&[1, -1, 0], 0, Cmp::Gt),
            c(&[0, 1, -1], 0, Cmp::Gt),
            c(&[0, 0, 1], 0, Cmp::Gt),
            c(&[1, 0, 1], -2, Cmp::Eq),
        ];
        let p = feasible_point(&cons, 3).unwrap();
        assert!(cons.iter().all(|c| c.satisfied_by(&p)));
    }
}
