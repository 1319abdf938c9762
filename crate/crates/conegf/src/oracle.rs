//! Brute-force enumeration of the lattice points of a constraint system.
//!
//! This is the ground truth every identity is verified against, so the
//! machinery stays deliberately plain: nested interval scanning over the
//! coordinates in order, with lower bounds propagated from the constraints,
//! upper bounds from the coordinate-sum cap, and a full exact membership
//! check at every leaf. Interval narrowing only ever prunes values that
//! violate some constraint, so no point can be missed.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactmath::BigInt;
use crate::families::{LinearConstraintSystem, Relation};
use crate::genfun::{ExponentVector, MultiPolynomial, TruncatedSeries};
use crate::Result;

/// The lattice points of a constraint system with coordinate sum at most
/// `bound`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    pub vars: usize,
    pub bound: i64,
    pub points: Vec<Vec<i64>>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of points with the given coordinate sum.
    pub fn count_at_degree(&self, degree: i64) -> usize {
        self.points
            .iter()
            .filter(|p| p.iter().sum::<i64>() == degree)
            .count()
    }
}

/// One `coeffs . x >= rhs` row; every relation normalizes to these.
struct GeRow {
    coeffs: Vec<i64>,
    rhs: i64,
    /// largest index with a nonzero coefficient
    max_support: usize,
}

fn normalize(cs: &LinearConstraintSystem) -> Vec<GeRow> {
    let mut rows = Vec::new();
    let mut push = |coeffs: Vec<i64>, rhs: i64| {
        if let Some(max_support) = coeffs.iter().rposition(|&c| c != 0) {
            rows.push(GeRow {
                coeffs,
                rhs,
                max_support,
            });
        }
    };
    for c in &cs.constraints {
        let neg: Vec<i64> = c.coeffs.iter().map(|&a| -a).collect();
        match c.relation {
            Relation::Ge => push(c.coeffs.clone(), c.rhs),
            Relation::Gt => push(c.coeffs.clone(), c.rhs + 1),
            Relation::Le => push(neg, -c.rhs),
            Relation::Lt => push(neg, -c.rhs + 1),
            Relation::Eq => {
                push(c.coeffs.clone(), c.rhs);
                push(neg, -c.rhs);
            }
        }
    }
    rows
}

fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    if a >= 0 {
        (a + b - 1) / b
    } else {
        a / b
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    if a >= 0 {
        a / b
    } else {
        -((-a + b - 1) / b)
    }
}

/// Fixpoint lower bounds for each variable, derived from rows whose other
/// variables are either nonpositively weighted or already bounded below.
fn lower_bounds(vars: usize, rows: &[GeRow]) -> Result<Vec<i64>> {
    let mut lo: Vec<Option<i64>> = vec![None; vars];
    // chains resolve one variable per pass; cap generously
    for _ in 0..=vars + 2 {
        let mut changed = false;
        for row in rows {
            for i in 0..vars {
                let a_i = row.coeffs[i];
                if a_i <= 0 {
                    continue;
                }
                // x_i >= (rhs - max of the rest) / a_i; the rest has a finite
                // maximum only when positive coefficients are absent and
                // negative ones sit on variables already bounded below
                let mut rest_max = 0i64;
                let mut finite = true;
                for (j, &a_j) in row.coeffs.iter().enumerate() {
                    if j == i || a_j == 0 {
                        continue;
                    }
                    if a_j > 0 {
                        finite = false;
                        break;
                    }
                    match lo[j] {
                        Some(l) => rest_max += a_j * l,
                        None => {
                            finite = false;
                            break;
                        }
                    }
                }
                if !finite {
                    continue;
                }
                let candidate = div_ceil(row.rhs - rest_max, a_i);
                if lo[i].is_none_or(|cur| candidate > cur) {
                    lo[i] = Some(candidate);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    lo.into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or(Error::UnboundedBelow(i)))
        .collect()
}

/// Enumerates exactly the integer points with coordinate sum at most `bound`
/// satisfying every constraint, in lexicographic order.
pub fn enumerate(cs: &LinearConstraintSystem, bound: i64) -> Result<PointSet> {
    let vars = cs.vars;
    let rows = normalize(cs);
    let lo = lower_bounds(vars, &rows)?;

    // suffix sums of the lower bounds drive the budget prune
    let mut lo_suffix = vec![0i64; vars + 1];
    for i in (0..vars).rev() {
        lo_suffix[i] = lo_suffix[i + 1] + lo[i];
    }

    // rows become active once their last supported variable is assigned
    let mut rows_at: Vec<Vec<&GeRow>> = vec![Vec::new(); vars];
    for row in &rows {
        rows_at[row.max_support].push(row);
    }

    struct Search<'a> {
        bound: i64,
        lo: &'a [i64],
        lo_suffix: &'a [i64],
        rows_at: &'a [Vec<&'a GeRow>],
        cs: &'a LinearConstraintSystem,
        current: Vec<i64>,
        points: Vec<Vec<i64>>,
    }

    impl Search<'_> {
        fn descend(&mut self, depth: usize, used: i64) {
            if depth == self.current.len() {
                if self.cs.satisfied_by(&self.current) {
                    self.points.push(self.current.clone());
                }
                return;
            }
            let mut value_lo = self.lo[depth];
            let mut value_hi = self.bound - used - self.lo_suffix[depth + 1];
            for row in &self.rows_at[depth] {
                let a = row.coeffs[depth];
                let partial: i64 = row.coeffs[..depth]
                    .iter()
                    .zip(self.current[..depth].iter())
                    .map(|(c, x)| c * x)
                    .sum();
                let rem = row.rhs - partial;
                if a > 0 {
                    value_lo = value_lo.max(div_ceil(rem, a));
                } else {
                    // a < 0: a*x >= rem  <=>  (-a)*x <= -rem
                    value_hi = value_hi.min(div_floor(-rem, -a));
                }
            }
            for v in value_lo..=value_hi {
                self.current[depth] = v;
                self.descend(depth + 1, used + v);
            }
            self.current[depth] = 0;
        }
    }

    let mut search = Search {
        bound,
        lo: &lo,
        lo_suffix: &lo_suffix,
        rows_at: &rows_at,
        cs,
        current: vec![0i64; vars],
        points: Vec::new(),
    };
    if vars == 0 {
        if bound >= 0 && cs.satisfied_by(&[]) {
            search.points.push(Vec::new());
        }
    } else {
        search.descend(0, 0);
    }

    Ok(PointSet {
        vars,
        bound,
        points: search.points,
    })
}

/// Multivariate generating series of a point set: coefficient 1 per point.
pub fn to_series(p: &PointSet) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(p.vars, p.bound);
    for point in &p.points {
        s.add_coefficient(ExponentVector::new(point.clone()), BigInt::one());
    }
    s
}

/// Coordinate-sum histogram of a point set as a univariate series.
pub fn to_q_series(p: &PointSet) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(1, p.bound);
    for point in &p.points {
        let total: i64 = point.iter().sum();
        s.add_coefficient(ExponentVector::new(vec![total]), BigInt::one());
    }
    s
}

/// The point set as an exact polynomial, for identities verified in cleared
/// polynomial form.
pub fn to_polynomial(p: &PointSet) -> MultiPolynomial {
    let mut poly = MultiPolynomial::zero(p.vars);
    for point in &p.points {
        poly.add_term(ExponentVector::new(point.clone()), BigInt::one());
    }
    poly
}

/// Number of connected simple graphs on `v` labeled vertices, via the
/// standard complement recurrence
/// `C_v = 2^C(v,2) - sum_{s=1}^{v-1} C_s * C(v-1, s-1) * 2^C(v-s, 2)`.
pub fn connected_graph_count(v: u32) -> BigInt {
    assert!(v >= 1, "vertex count must be positive");
    let choose2 = |m: u32| -> usize { (m as usize) * (m as usize - 1) / 2 };
    let mut counts: Vec<BigInt> = vec![BigInt::zero(); (v + 1) as usize];
    for m in 1..=v {
        let mut total = BigInt::one() << choose2(m);
        for s in 1..m {
            let ways = crate::exactmath::binomial((m - 1) as i64, (s - 1) as i64)
                .expect("binomial of nonnegative arguments");
            total -= counts[s as usize].clone() * ways * (BigInt::one() << choose2(m - s));
        }
        counts[m as usize] = total;
    }
    counts[v as usize].clone()
}
