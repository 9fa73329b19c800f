//! Linear systems of parallelogram vertices and their exact solution families.

use crate::hypercomb::{five_ten, five_ten_labels, six_eleven, six_eleven_labels, Hypergraph4, SigmaPair, VertexMatching};
use crate::hypercomb::{SIX_ELEVEN_S, SIX_ELEVEN_SP};
use dualcell_core::linalg::{nullspace, rref, transpose};
use dualcell_core::rat::{add, dot, fmt_rat, is_zero, scale, sub, unit, zeros, QVec, Rat};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Dimension of the gauge: two parallelograms pinned to complementary coordinate planes.
pub const GAUGE_DIM: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("matching does not fit the hypergraph")]
    InvalidMatching,
    #[error("gauge vertex {0} is not on pinned hyperedge {1}")]
    GaugeVertex(usize, usize),
    #[error("gauge pins vertex {0} twice with different values")]
    GaugeConflict(usize),
}

/// Unknown points `x_l`, one equation `x_a + x_b = x_c + x_d` per hyperedge (its two
/// diagonals share a midpoint), and a gauge fixing some points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    pub labels: Vec<String>,
    pub equations: Vec<[usize; 4]>,
    #[serde(serialize_with = "super::json::ser_gauge")]
    pub gauge: BTreeMap<usize, QVec>,
    pub dim: usize,
    /// Pair of labels whose parity relation is reported first when present.
    pub distinguished: Option<(usize, usize)>,
}

impl LinearSystem {
    /// The system of a diagonal matching. `origin` goes to 0; for the `k`-th pinned hyperedge
    /// the diagonal partner of `origin` goes to `e_{2k} + e_{2k+1}` and the other two vertices,
    /// in index order, to `e_{2k}` and `e_{2k+1}`.
    pub fn from_matching(
        h: &Hypergraph4,
        labels: Vec<String>,
        m: &VertexMatching,
        origin: usize,
        pinned: [usize; 2],
    ) -> Result<LinearSystem, SystemError> {
        if !m.is_valid_for(h) || labels.len() != h.num_vertices() {
            return Err(SystemError::InvalidMatching);
        }
        let equations = m.pairs.iter().map(|[p, q]| [p[0], p[1], q[0], q[1]]).collect();
        let mut gauge: BTreeMap<usize, QVec> = BTreeMap::new();
        let mut pin = |v: usize, x: QVec| -> Result<(), SystemError> {
            match gauge.get(&v) {
                Some(y) if *y != x => Err(SystemError::GaugeConflict(v)),
                _ => {
                    gauge.insert(v, x);
                    Ok(())
                }
            }
        };
        pin(origin, zeros(GAUGE_DIM))?;
        for (k, &e) in pinned.iter().enumerate() {
            let (with, other) = m.split(e, origin).ok_or(SystemError::GaugeVertex(origin, e))?;
            let partner = if with[0] == origin { with[1] } else { with[0] };
            let (a, b) = (unit(GAUGE_DIM, 2 * k), unit(GAUGE_DIM, 2 * k + 1));
            pin(partner, add(&a, &b))?;
            pin(other[0], a)?;
            pin(other[1], b)?;
        }
        Ok(LinearSystem { labels, equations, gauge, dim: GAUGE_DIM, distinguished: None })
    }

    /// 5-10 system: `v12` at the origin, `Π_1` and `Π_2` pinned.
    pub fn five_ten(m: &VertexMatching) -> Result<LinearSystem, SystemError> {
        LinearSystem::from_matching(&five_ten(), five_ten_labels(), m, 0, [0, 1])
    }

    /// 6-11 system: `s` at the origin, `S_1` and `S_2` pinned.
    pub fn six_eleven(p: &SigmaPair) -> Result<LinearSystem, SystemError> {
        let mut ls = LinearSystem::from_matching(&six_eleven(), six_eleven_labels(), &p.to_matching(), SIX_ELEVEN_S, [0, 1])?;
        ls.distinguished = Some((SIX_ELEVEN_S, SIX_ELEVEN_SP));
        Ok(ls)
    }

    pub fn unknowns(&self) -> Vec<usize> {
        (0..self.labels.len()).filter(|l| !self.gauge.contains_key(l)).collect()
    }

    /// Scalar coefficient matrix over the unknowns and the vector right-hand sides.
    pub fn matrix(&self) -> (Vec<QVec>, Vec<QVec>) {
        let unk = self.unknowns();
        let col: BTreeMap<usize, usize> = unk.iter().enumerate().map(|(c, &l)| (l, c)).collect();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for eq in &self.equations {
            let mut row = zeros(unk.len());
            let mut rhs = zeros(self.dim);
            for (t, &l) in eq.iter().enumerate() {
                let sg = if t < 2 { Rat::one() } else { -Rat::one() };
                match self.gauge.get(&l) {
                    Some(x) => rhs = sub(&rhs, &scale(x, &sg)),
                    None => row[col[&l]] += sg,
                }
            }
            a.push(row);
            b.push(rhs);
        }
        (a, b)
    }

    /// Residual `x_a + x_b - x_c - x_d` of equation `i` at the given points.
    pub fn residual(&self, i: usize, pts: &[QVec]) -> QVec {
        let [a, b, c, d] = self.equations[i];
        sub(&add(&pts[a], &pts[b]), &add(&pts[c], &pts[d]))
    }

    /// Row reduction of the scalar system with all `dim` right-hand sides at once. Free unknowns
    /// become vector parameters `a^1, a^2, ...` in column order.
    pub fn solve(&self) -> Solved {
        let unk = self.unknowns();
        let n = unk.len();
        let (a, b) = self.matrix();
        let aug: Vec<QVec> = a.iter().zip(&b).map(|(r, s)| r.iter().chain(s).cloned().collect()).collect();
        let (r, piv) = rref(&aug, n + self.dim);
        if piv.iter().any(|&p| p >= n) {
            return Solved::NoSolution(self.inconsistency(&a, &b));
        }
        let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
        let nl = self.labels.len();
        let mut points = vec![zeros(self.dim); nl];
        let mut params = vec![vec![Rat::zero(); nl]; free.len()];
        for (l, x) in &self.gauge {
            points[*l] = x.clone();
        }
        for (k, &f) in free.iter().enumerate() {
            params[k][unk[f]] = Rat::one();
        }
        for (row, &p) in r.iter().zip(&piv) {
            let l = unk[p];
            points[l] = row[n..].to_vec();
            for (k, &f) in free.iter().enumerate() {
                params[k][l] = -row[f].clone();
            }
        }
        Solved::Family(SolutionFamily { labels: self.labels.clone(), points, params, dim: self.dim })
    }

    /// Multipliers `y` of the equations with `yA = 0` and `yB != 0`.
    fn inconsistency(&self, a: &[QVec], b: &[QVec]) -> Vec<Rat> {
        let n = a.first().map_or(0, Vec::len);
        let left = nullspace(&transpose(a, n), a.len());
        let bt = transpose(b, self.dim);
        left.into_iter().find(|y| bt.iter().any(|col| !dot(y, col).is_zero())).expect("inconsistent system has a certificate")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solved {
    /// Combination of the equations whose left side vanishes and right side does not.
    NoSolution(Vec<Rat>),
    Family(SolutionFamily),
}

/// `x_l = points[l] + Σ_k params[k][l] · a^k` for free vectors `a^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionFamily {
    pub labels: Vec<String>,
    #[serde(serialize_with = "super::json::ser_qvecs")]
    pub points: Vec<QVec>,
    #[serde(serialize_with = "super::json::ser_qvecs")]
    pub params: Vec<Vec<Rat>>,
    pub dim: usize,
}

impl SolutionFamily {
    pub fn has_params(&self) -> bool {
        !self.params.is_empty()
    }

    /// Particular solution as a matrix: rows are coordinates, columns are labels.
    pub fn matrix(&self) -> Vec<QVec> {
        transpose(&self.points, self.dim)
    }

    /// The labeled points at a choice of parameters.
    pub fn at(&self, a: &[QVec]) -> Vec<QVec> {
        (0..self.labels.len())
            .map(|l| {
                let mut x = self.points[l].clone();
                for (k, ak) in a.iter().enumerate() {
                    if !self.params[k][l].is_zero() {
                        x = add(&x, &scale(ak, &self.params[k][l]));
                    }
                }
                x
            })
            .collect()
    }

    /// Labels `a` and `b` agree for every choice of parameters.
    pub fn identical(&self, a: usize, b: usize) -> bool {
        self.points[a] == self.points[b] && self.params.iter().all(|p| p[a] == p[b])
    }

    /// Substitutes the family into every equation: the particular part and each parameter
    /// direction must satisfy it, and gauge points carry no parameter.
    pub fn satisfies(&self, ls: &LinearSystem) -> bool {
        let particular = (0..ls.equations.len()).all(|i| is_zero(&ls.residual(i, &self.points)));
        let homogeneous = self.params.iter().all(|p| {
            ls.equations.iter().all(|&[a, b, c, d]| (p[a].clone() + &p[b] - &p[c] - &p[d]).is_zero())
        });
        let pinned = ls.gauge.iter().all(|(l, x)| self.points[*l] == *x && self.params.iter().all(|p| p[*l].is_zero()));
        particular && homogeneous && pinned
    }

    /// Entry `(coordinate, label)` written with parameters, e.g. `a1-1`. With one vector
    /// parameter `a`, `a{i}` is its `i`-th coordinate; otherwise `a{k}_{i}` is that of `a^k`.
    pub fn entry(&self, coord: usize, label: usize) -> String {
        let mut terms: Vec<String> = Vec::new();
        for (k, p) in self.params.iter().enumerate() {
            let c = &p[label];
            if c.is_zero() {
                continue;
            }
            let name = if self.params.len() == 1 { format!("a{}", coord + 1) } else { format!("a{}_{}", k + 1, coord + 1) };
            let term = if c.is_one() {
                name
            } else if *c == -Rat::one() {
                format!("-{name}")
            } else {
                format!("{}*{name}", fmt_rat(c))
            };
            terms.push(term);
        }
        let x = &self.points[label][coord];
        if terms.is_empty() {
            return fmt_rat(x);
        }
        let mut s = terms.join("+").replace("+-", "-");
        if !x.is_zero() {
            let v = fmt_rat(x);
            if v.starts_with('-') {
                s.push_str(&v);
            } else {
                s.push('+');
                s.push_str(&v);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercomb::{reference_schemes, scheme_to_matching};

    #[test]
    fn first_scheme_has_no_solution() {
        let ls = LinearSystem::five_ten(&scheme_to_matching(&reference_schemes()[0])).unwrap();
        assert_eq!(ls.gauge.len(), 7);
        let Solved::NoSolution(y) = ls.solve() else { panic!("expected no solution") };
        let (a, b) = ls.matrix();
        let n = a[0].len();
        assert!((0..n).all(|c| dot(&y, &a.iter().map(|r| r[c].clone()).collect::<Vec<_>>()).is_zero()));
        assert!(transpose(&b, 4).iter().any(|col| !dot(&y, col).is_zero()));
    }
}
