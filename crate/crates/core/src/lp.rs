//! Exact two-phase simplex with Bland's rule.
//!
//! Variables are free; inequalities are `a·x <= b`, equalities `a·x = b`.

use crate::rat::{dot, int, zeros, QVec, Rat};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: QVec, value: Rat },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<QVec>,
    rhs: QVec,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rat::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost·z` over the current feasible basis. Returns false if unbounded.
    fn run(&mut self, cost: &[Rat], allowed: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        rc -= &cost[b] * &self.rows[i][j];
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn value_of(&self, j: usize) -> Rat {
        self.basis.iter().position(|&b| b == j).map_or_else(Rat::zero, |i| self.rhs[i].clone())
    }
}

/// Maximize `obj·x` subject to `ineq` (`a·x <= b`) and `eq` (`a·x = b`), `x` free in `R^n`.
pub fn maximize(n: usize, obj: &[Rat], ineq: &[(QVec, Rat)], eq: &[(QVec, Rat)]) -> LpOutcome {
    let m_in = ineq.len();
    let m = m_in + eq.len();
    let nstruct = 2 * n + m_in;
    let ncols = nstruct + m;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (k, (a, b)) in ineq.iter().chain(eq.iter()).enumerate() {
        let mut row = zeros(ncols);
        for j in 0..n {
            row[j] = a[j].clone();
            row[n + j] = -a[j].clone();
        }
        if k < m_in {
            row[2 * n + k] = Rat::one();
        }
        let mut b = b.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            b = -b;
        }
        row[nstruct + k] = Rat::one();
        rows.push(row);
        rhs.push(b);
    }
    let mut t = Tableau { rows, rhs, basis: (nstruct..ncols).collect() };
    let mut phase1 = zeros(ncols);
    for c in phase1.iter_mut().skip(nstruct) {
        *c = int(-1);
    }
    t.run(&phase1, ncols);
    let infeas: Rat = t.basis.iter().zip(&t.rhs).filter(|(&b, _)| b >= nstruct).map(|(_, v)| v.clone()).sum();
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= nstruct {
            if let Some(c) = (0..nstruct).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, c);
            } else {
                t.rows.remove(r);
                t.rhs.remove(r);
                t.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }
    for row in t.rows.iter_mut() {
        row.truncate(nstruct);
    }
    let mut cost = zeros(nstruct);
    for j in 0..n {
        cost[j] = obj[j].clone();
        cost[n + j] = -obj[j].clone();
    }
    if !t.run(&cost, nstruct) {
        return LpOutcome::Unbounded;
    }
    let x: QVec = (0..n).map(|j| t.value_of(j) - t.value_of(n + j)).collect();
    let value = dot(obj, &x);
    LpOutcome::Optimal { x, value }
}

pub fn feasible_point(n: usize, ineq: &[(QVec, Rat)], eq: &[(QVec, Rat)]) -> Option<QVec> {
    match maximize(n, &zeros(n), ineq, eq) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// A point with `a·x < b` on `strict`, `a·x <= b` on `weak`, `a·x = b` on `eq`, if one exists.
pub fn strictly_feasible(n: usize, strict: &[(QVec, Rat)], weak: &[(QVec, Rat)], eq: &[(QVec, Rat)]) -> Option<QVec> {
    if strict.is_empty() {
        return feasible_point(n, weak, eq);
    }
    // variables (x, t): a·x + t <= b on strict rows, t <= 1, maximise t
    let lift = |a: &QVec, t: Rat| {
        let mut v = a.clone();
        v.push(t);
        v
    };
    let mut ineq: Vec<(QVec, Rat)> = strict.iter().map(|(a, b)| (lift(a, Rat::one()), b.clone())).collect();
    ineq.extend(weak.iter().map(|(a, b)| (lift(a, Rat::zero()), b.clone())));
    let mut top = zeros(n + 1);
    top[n] = Rat::one();
    ineq.push((top.clone(), Rat::one()));
    let eqs: Vec<(QVec, Rat)> = eq.iter().map(|(a, b)| (lift(a, Rat::zero()), b.clone())).collect();
    match maximize(n + 1, &top, &ineq, &eqs) {
        LpOutcome::Optimal { mut x, value } if value.is_positive() => {
            x.truncate(n);
            Some(x)
        }
        _ => None,
    }
}

/// Does the open cone `{x : a·x < 0 (strict), a·x <= 0 (weak), a·x = 0 (eq)}` contain a point?
pub fn open_cone_point(n: usize, strict: &[QVec], weak: &[QVec], eq: &[QVec]) -> Option<QVec> {
    let z = Rat::zero();
    let s: Vec<(QVec, Rat)> = strict.iter().map(|a| (a.clone(), z.clone())).collect();
    let w: Vec<(QVec, Rat)> = weak.iter().map(|a| (a.clone(), z.clone())).collect();
    let e: Vec<(QVec, Rat)> = eq.iter().map(|a| (a.clone(), z.clone())).collect();
    strictly_feasible(n, &s, &w, &e)
}
