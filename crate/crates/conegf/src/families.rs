//! Constructors for the partition and composition families studied here:
//! higher-order difference partitions, n-gon partitions, positive
//! compositions dominated by the sum of the other parts (Hermite's problem),
//! Cayley compositions, and hypersimplex slices.
//!
//! Each family is produced both as geometry (generator cones, polytopes) and
//! as a plain inhomogeneous constraint system for the brute-force oracle.
//! Inhomogeneous systems are never forced into the cone type.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cone::{GeneratorCone, HalfspaceCone};
use crate::error::Error;
use crate::exactmath::binomial;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

/// One linear constraint `coeffs . x  <relation>  rhs` over integer vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<i64>,
    pub relation: Relation,
    pub rhs: i64,
}

impl Constraint {
    pub fn new(coeffs: Vec<i64>, relation: Relation, rhs: i64) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn satisfied_by(&self, x: &[i64]) -> bool {
        debug_assert_eq!(x.len(), self.coeffs.len());
        let v: i64 = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.relation {
            Relation::Ge => v >= self.rhs,
            Relation::Gt => v > self.rhs,
            Relation::Eq => v == self.rhs,
            Relation::Le => v <= self.rhs,
            Relation::Lt => v < self.rhs,
        }
    }
}

/// A list of integer linear constraints with consistent arity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraintSystem {
    pub vars: usize,
    pub constraints: Vec<Constraint>,
}

impl LinearConstraintSystem {
    pub fn new(vars: usize) -> Self {
        LinearConstraintSystem {
            vars,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<i64>, relation: Relation, rhs: i64) {
        assert_eq!(coeffs.len(), self.vars, "constraint arity mismatch");
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
    }

    pub fn satisfied_by(&self, x: &[i64]) -> bool {
        self.constraints.iter().all(|c| c.satisfied_by(x))
    }
}

impl From<&HalfspaceCone> for LinearConstraintSystem {
    fn from(h: &HalfspaceCone) -> Self {
        let mut cs = LinearConstraintSystem::new(h.dim());
        for (row, &strict) in h.rows.iter().zip(&h.strict) {
            let rel = if strict { Relation::Gt } else { Relation::Ge };
            cs.push(row.clone(), rel, 0);
        }
        cs
    }
}

/// Parameterized family selector, parseable from CLI strings such as
/// `higherdiff:r=2,n=4` or `hyperslice:n=4,k=2,t=8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    HigherDiff { r: i64, n: i64 },
    NGon { n: i64 },
    Hermite { n: i64 },
    Cayley { j: i64 },
    #[serde(rename = "hyperslice")]
    HypersimplexSlice { n: i64, k: i64, t: i64 },
}

impl FamilySpec {
    /// Ambient variable count of the family.
    pub fn vars(&self) -> usize {
        match *self {
            FamilySpec::HigherDiff { n, .. } => n as usize,
            FamilySpec::NGon { n } => n as usize,
            FamilySpec::Hermite { n } => n as usize,
            FamilySpec::Cayley { j } => (j - 1) as usize,
            FamilySpec::HypersimplexSlice { n, .. } => n as usize,
        }
    }

    /// The family's defining constraint system, fed to the oracle.
    pub fn constraints(&self) -> Result<LinearConstraintSystem> {
        match *self {
            FamilySpec::HigherDiff { r, n } => higherdiff_constraints_all_t(r, n),
            FamilySpec::NGon { n } => ngon_constraints(n),
            FamilySpec::Hermite { n } => hermite_constraints(n),
            FamilySpec::Cayley { j } => Ok(cayley_polytope(j)?.constraints),
            FamilySpec::HypersimplexSlice { n, k, t } => hypersimplex_slice_constraints(n, k, t),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::HigherDiff { r, n } => write!(f, "higherdiff:r={r},n={n}"),
            FamilySpec::NGon { n } => write!(f, "ngon:n={n}"),
            FamilySpec::Hermite { n } => write!(f, "hermite:n={n}"),
            FamilySpec::Cayley { j } => write!(f, "cayley:j={j}"),
            FamilySpec::HypersimplexSlice { n, k, t } => {
                write!(f, "hyperslice:n={n},k={k},t={t}")
            }
        }
    }
}

/// Parses `key=value` lists like `r=2,n=4` into a map.
pub fn parse_params(s: &str) -> Result<BTreeMap<String, i64>> {
    let mut out = BTreeMap::new();
    if s.trim().is_empty() {
        return Ok(out);
    }
    for piece in s.split(',') {
        let (key, value) = piece
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {piece:?}")))?;
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer in {piece:?}")))?;
        out.insert(key.trim().to_string(), value);
    }
    Ok(out)
}

fn take(params: &BTreeMap<String, i64>, key: &str) -> Result<i64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::Parse(format!("missing parameter {key:?}")))
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = parse_params(rest)?;
        let spec = match name.trim() {
            "higherdiff" => FamilySpec::HigherDiff {
                r: take(&params, "r")?,
                n: take(&params, "n")?,
            },
            "ngon" => FamilySpec::NGon {
                n: take(&params, "n")?,
            },
            "hermite" => FamilySpec::Hermite {
                n: take(&params, "n")?,
            },
            "cayley" => FamilySpec::Cayley {
                j: take(&params, "j")?,
            },
            "hyperslice" => FamilySpec::HypersimplexSlice {
                n: take(&params, "n")?,
                k: take(&params, "k")?,
                t: take(&params, "t")?,
            },
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl FamilySpec {
    /// Parameter ranges. The upper caps are practical guards: they keep
    /// vertex counts, bit shifts, and constraint coefficients well inside
    /// i64/memory territory, far above anything enumerable anyway.
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            FamilySpec::HigherDiff { r, n } => (1..=64).contains(&r) && (1..=512).contains(&n),
            FamilySpec::NGon { n } => (3..=512).contains(&n),
            FamilySpec::Hermite { n } => (2..=512).contains(&n),
            FamilySpec::Cayley { j } => (2..=16).contains(&j),
            FamilySpec::HypersimplexSlice { n, k, t } => {
                (1..=512).contains(&n) && (2..=1_000_000).contains(&k) && (0..=1_000_000).contains(&t)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::bad_params(format!("{self} out of range")))
        }
    }
}

// --- higher-order difference partitions ------------------------------------

/// The simplicial cone whose lattice points are the partitions with at most
/// `n` parts satisfying the order-`r` difference conditions. Column `j` of
/// the generator matrix reads, top to bottom,
/// `C(r+j-2, r-1), C(r+j-3, r-1), ..., r, 1, 0, ..., 0`; all rays closed.
pub fn higherdiff_cone(r: i64, n: i64) -> Result<GeneratorCone> {
    FamilySpec::HigherDiff { r, n }.validate()?;
    let n_us = n as usize;
    let mut rays = Vec::with_capacity(n_us);
    for j in 1..=n {
        let mut col = vec![0i64; n_us];
        for i in 1..=j {
            let b = binomial(r + j - i - 1, r - 1)?;
            col[(i - 1) as usize] = i64::try_from(&b)
                .map_err(|_| Error::bad_params("generator entry overflows i64"))?;
        }
        rays.push(col);
    }
    Ok(GeneratorCone::new(rays, vec![false; n_us]))
}

/// All difference conditions for `1 <= t <= r`, `1 <= k <= n`, with indices
/// beyond `n` dropped as zero. The `t = r` rows alone cut out the same cone;
/// keeping every row lets the oracle work straight from the definition.
pub fn higherdiff_constraints_all_t(r: i64, n: i64) -> Result<LinearConstraintSystem> {
    FamilySpec::HigherDiff { r, n }.validate()?;
    let n_us = n as usize;
    let mut cs = LinearConstraintSystem::new(n_us);
    for t in 1..=r {
        for k in 1..=n {
            let mut coeffs = vec![0i64; n_us];
            for j in 0..=t {
                let idx = k + j;
                if idx > n {
                    continue;
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let b = binomial(t, j)?;
                coeffs[(idx - 1) as usize] += sign
                    * i64::try_from(&b)
                        .map_err(|_| Error::bad_params("coefficient overflows i64"))?;
            }
            cs.push(coeffs, Relation::Ge, 0);
        }
    }
    Ok(cs)
}

// --- n-gon partitions -------------------------------------------------------

/// The two unimodular cones whose difference carries the n-gon partitions:
/// the weakly-increasing positive chain, and the same chain with the last
/// coordinate at least the sum of the others. First ray open in each.
pub fn ngon_cones(n: i64) -> Result<(GeneratorCone, GeneratorCone)> {
    FamilySpec::NGon { n }.validate()?;
    let n_us = n as usize;
    let mut k1_rays = Vec::with_capacity(n_us);
    let mut k2_rays = Vec::with_capacity(n_us);
    for j in 1..=n_us {
        let mut col = vec![0i64; n_us];
        for entry in col.iter_mut().take(n_us).skip(j - 1) {
            *entry = 1;
        }
        k1_rays.push(col.clone());
        if j < n_us {
            col[n_us - 1] = n - j as i64;
        }
        k2_rays.push(col);
    }
    let mut open = vec![false; n_us];
    open[0] = true;
    Ok((
        GeneratorCone::new(k1_rays, open.clone()),
        GeneratorCone::new(k2_rays, open),
    ))
}

/// Defining system of the n-gon partitions:
/// `1 <= x_1 <= ... <= x_n` and `x_1 + ... + x_{n-1} > x_n`.
pub fn ngon_constraints(n: i64) -> Result<LinearConstraintSystem> {
    let mut cs = ngon_k1_constraints(n)?;
    let n_us = n as usize;
    let mut row = vec![1i64; n_us];
    row[n_us - 1] = -1;
    cs.push(row, Relation::Gt, 0);
    Ok(cs)
}

/// `0 < x_1 <= x_2 <= ... <= x_n`.
pub fn ngon_k1_constraints(n: i64) -> Result<LinearConstraintSystem> {
    FamilySpec::NGon { n }.validate()?;
    let n_us = n as usize;
    let mut cs = LinearConstraintSystem::new(n_us);
    let mut first = vec![0i64; n_us];
    first[0] = 1;
    cs.push(first, Relation::Gt, 0);
    for i in 0..n_us - 1 {
        let mut row = vec![0i64; n_us];
        row[i] = -1;
        row[i + 1] = 1;
        cs.push(row, Relation::Ge, 0);
    }
    Ok(cs)
}

/// The chain with the degenerate-polygon cap `x_1 + ... + x_{n-1} <= x_n`.
pub fn ngon_k2_constraints(n: i64) -> Result<LinearConstraintSystem> {
    let mut cs = ngon_k1_constraints(n)?;
    let n_us = n as usize;
    let mut row = vec![1i64; n_us];
    row[n_us - 1] = -1;
    cs.push(row, Relation::Le, 0);
    Ok(cs)
}

// --- Hermite compositions ----------------------------------------------------

/// The open orthant and the `n` pairwise-disjoint dominant-part cones whose
/// removal leaves the Hermite set. Cone `k` is spanned by `e_k` and the sums
/// `e_j + e_k` for `j != k`, every ray open.
pub fn hermite_cones(n: i64) -> Result<(GeneratorCone, Vec<GeneratorCone>)> {
    FamilySpec::Hermite { n }.validate()?;
    let n_us = n as usize;
    let orthant_rays: Vec<Vec<i64>> = (0..n_us)
        .map(|i| {
            let mut v = vec![0i64; n_us];
            v[i] = 1;
            v
        })
        .collect();
    let orthant = GeneratorCone::new(orthant_rays, vec![true; n_us]);

    let mut dominant = Vec::with_capacity(n_us);
    for k in 0..n_us {
        let mut rays = Vec::with_capacity(n_us);
        let mut ek = vec![0i64; n_us];
        ek[k] = 1;
        rays.push(ek);
        for j in 0..n_us {
            if j == k {
                continue;
            }
            let mut v = vec![0i64; n_us];
            v[j] = 1;
            v[k] += 1;
            rays.push(v);
        }
        dominant.push(GeneratorCone::new(rays, vec![true; n_us]));
    }
    Ok((orthant, dominant))
}

/// Defining system: positive parts, each part at most the sum of the others.
pub fn hermite_constraints(n: i64) -> Result<LinearConstraintSystem> {
    FamilySpec::Hermite { n }.validate()?;
    let n_us = n as usize;
    let mut cs = hermite_orthant_constraints(n)?;
    for j in 0..n_us {
        let mut row = vec![1i64; n_us];
        row[j] = -1;
        cs.push(row, Relation::Ge, 0);
    }
    Ok(cs)
}

/// The open orthant `x_j > 0` as a constraint system.
pub fn hermite_orthant_constraints(n: i64) -> Result<LinearConstraintSystem> {
    FamilySpec::Hermite { n }.validate()?;
    let n_us = n as usize;
    let mut cs = LinearConstraintSystem::new(n_us);
    for j in 0..n_us {
        let mut row = vec![0i64; n_us];
        row[j] = 1;
        cs.push(row, Relation::Gt, 0);
    }
    Ok(cs)
}

/// Positive points whose part `k` strictly dominates the sum of the others,
/// consistent with the generators `e_k` and `e_j + e_k`.
pub fn hermite_ck_constraints(n: i64, k: usize) -> Result<LinearConstraintSystem> {
    let mut cs = hermite_orthant_constraints(n)?;
    let n_us = n as usize;
    if k >= n_us {
        return Err(Error::bad_params("cone index out of range"));
    }
    let mut row: Vec<i64> = vec![-1; n_us];
    row[k] = 1;
    cs.push(row, Relation::Gt, 0);
    Ok(cs)
}

// --- Cayley compositions -----------------------------------------------------

/// The Cayley polytope in dimension `j - 1`: `1 <= x_1 <= 2` and
/// `1 <= x_i <= 2 x_{i-1}`. Combinatorially a cube; its `2^(j-1)` vertices
/// come from independently choosing each coordinate low or high.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyPolytope {
    pub j: i64,
    pub constraints: LinearConstraintSystem,
    pub vertices: Vec<Vec<i64>>,
}

impl CayleyPolytope {
    pub fn dim(&self) -> usize {
        (self.j - 1) as usize
    }
}

pub fn cayley_polytope(j: i64) -> Result<CayleyPolytope> {
    FamilySpec::Cayley { j }.validate()?;
    let dim = (j - 1) as usize;

    // rows come in (lower, upper) pairs per coordinate
    let mut cs = LinearConstraintSystem::new(dim);
    for i in 0..dim {
        let mut lower = vec![0i64; dim];
        lower[i] = 1;
        cs.push(lower, Relation::Ge, 1);
        if i == 0 {
            let mut upper = vec![0i64; dim];
            upper[0] = 1;
            cs.push(upper, Relation::Le, 2);
        } else {
            let mut upper = vec![0i64; dim];
            upper[i - 1] = 2;
            upper[i] = -1;
            cs.push(upper, Relation::Ge, 0);
        }
    }

    let mut vertices = Vec::with_capacity(1 << dim);
    for mask in 0u32..(1 << dim) {
        let mut v = vec![0i64; dim];
        for i in 0..dim {
            let high = mask & (1 << i) != 0;
            v[i] = match (i, high) {
                (_, false) => 1,
                (0, true) => 2,
                (_, true) => 2 * v[i - 1],
            };
        }
        vertices.push(v);
    }

    Ok(CayleyPolytope {
        j,
        constraints: cs,
        vertices,
    })
}

// --- hypersimplex slices -------------------------------------------------------

/// Compositions of `t` with `n` parts bounded by `t/k`, integerized as
/// `0 <= k*x_j <= t` together with the slice equality `sum x = t`.
pub fn hypersimplex_slice_constraints(n: i64, k: i64, t: i64) -> Result<LinearConstraintSystem> {
    FamilySpec::HypersimplexSlice { n, k, t }.validate()?;
    let n_us = n as usize;
    let mut cs = LinearConstraintSystem::new(n_us);
    cs.push(vec![1; n_us], Relation::Eq, t);
    for j in 0..n_us {
        let mut low = vec![0i64; n_us];
        low[j] = 1;
        cs.push(low, Relation::Ge, 0);
        let mut high = vec![0i64; n_us];
        high[j] = k;
        cs.push(high, Relation::Le, t);
    }
    Ok(cs)
}

/// The same slice in its original guise for `k = 2`: each part at most the
/// sum of the others, with nonnegative parts summing to `t`.
pub fn hypersimplex_halfsum_constraints(n: i64, t: i64) -> Result<LinearConstraintSystem> {
    FamilySpec::HypersimplexSlice { n, k: 2, t }.validate()?;
    let n_us = n as usize;
    let mut cs = LinearConstraintSystem::new(n_us);
    cs.push(vec![1; n_us], Relation::Eq, t);
    for j in 0..n_us {
        let mut low = vec![0i64; n_us];
        low[j] = 1;
        cs.push(low, Relation::Ge, 0);
        let mut row = vec![1i64; n_us];
        row[j] = -1;
        cs.push(row, Relation::Ge, 0);
    }
    Ok(cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::v_to_h;

    /// All nonnegative vectors with coordinate sum at most `bound`.
    fn box_scan(vars: usize, bound: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut current = vec![0i64; vars];
        fn rec(current: &mut Vec<i64>, depth: usize, left: i64, out: &mut Vec<Vec<i64>>) {
            if depth == current.len() {
                out.push(current.clone());
                return;
            }
            for v in 0..=left {
                current[depth] = v;
                rec(current, depth + 1, left - v, out);
            }
        }
        rec(&mut current, 0, bound, &mut out);
        out
    }

    #[test]
    fn higherdiff_cone_small_cases() {
        let g = higherdiff_cone(2, 3).unwrap();
        assert_eq!(g.rays, vec![vec![1, 0, 0], vec![2, 1, 0], vec![3, 2, 1]]);
        assert!(g.open.iter().all(|o| !o));

        // r = 1 collapses to the all-ones triangle: ordinary partitions
        let g1 = higherdiff_cone(1, 4).unwrap();
        assert_eq!(
            g1.rays,
            vec![
                vec![1, 0, 0, 0],
                vec![1, 1, 0, 0],
                vec![1, 1, 1, 0],
                vec![1, 1, 1, 1]
            ]
        );

        // r = 3, n = 4: top row of the generator matrix is 1, 3, 6, 10
        let g3 = higherdiff_cone(3, 4).unwrap();
        let top: Vec<i64> = g3.rays.iter().map(|c| c[0]).collect();
        assert_eq!(top, vec![1, 3, 6, 10]);
    }

    #[test]
    fn higherdiff_all_t_instantiation() {
        let cs = higherdiff_constraints_all_t(1, 2).unwrap();
        assert_eq!(cs.constraints.len(), 2);
        assert_eq!(cs.constraints[0].coeffs, vec![1, -1]);
        assert_eq!(cs.constraints[1].coeffs, vec![0, 1]);

        let cs2 = higherdiff_constraints_all_t(2, 2).unwrap();
        assert!(cs2
            .constraints
            .iter()
            .any(|c| c.coeffs == vec![1, -2] && c.relation == Relation::Ge));
    }

    #[test]
    fn higherdiff_t_equals_r_implies_lower_t() {
        for (r, n) in [(2i64, 3i64), (2, 4), (3, 4)] {
            let h = v_to_h(&higherdiff_cone(r, n).unwrap()).unwrap();
            let all_t = higherdiff_constraints_all_t(r, n).unwrap();
            for x in box_scan(n as usize, 12) {
                if h.contains(&x) {
                    assert!(
                        all_t.satisfied_by(&x),
                        "{x:?} in the t=r cone violates a lower-order condition"
                    );
                }
            }
        }
    }

    #[test]
    fn ngon_generator_matrices() {
        let (k1, k2) = ngon_cones(4).unwrap();
        assert_eq!(k1.rays[0], vec![1, 1, 1, 1]);
        assert_eq!(k1.rays[3], vec![0, 0, 0, 1]);
        // bottom row of the second matrix reads n-1, n-2, ..., 1, 1
        let bottom: Vec<i64> = k2.rays.iter().map(|c| c[3]).collect();
        assert_eq!(bottom, vec![3, 2, 1, 1]);
        assert_eq!(k1.open, vec![true, false, false, false]);
        assert_eq!(k2.open, vec![true, false, false, false]);
    }

    #[test]
    fn ngon_k2_subset_of_k1() {
        let n = 4;
        let (k1, k2) = ngon_cones(n).unwrap();
        // sample conic combinations of K_2 rays; they must land in K_1
        let mut rng = crate::rng::SplitMix64::new(5);
        for _ in 0..100 {
            let mut x = vec![0i64; n as usize];
            for (ridx, ray) in k2.rays.iter().enumerate() {
                let lo = if k2.open[ridx] { 1 } else { 0 };
                let c = rng.range(lo, 3) as i64;
                for (xi, ri) in x.iter_mut().zip(ray) {
                    *xi += c * ri;
                }
            }
            assert!(k1.contains(&x).unwrap(), "{x:?} escaped the chain cone");
        }
    }

    #[test]
    fn ngon_difference_is_the_polygon_set() {
        let n = 3i64;
        let (k1, k2) = ngon_cones(n).unwrap();
        let tau = ngon_constraints(n).unwrap();
        for x in box_scan(n as usize, 8) {
            let in_diff = k1.contains(&x).unwrap() && !k2.contains(&x).unwrap();
            assert_eq!(
                in_diff,
                tau.satisfied_by(&x),
                "difference and definition disagree at {x:?}"
            );
        }
    }

    #[test]
    fn hermite_cone_rays() {
        let (orthant, cones) = hermite_cones(3).unwrap();
        assert_eq!(orthant.rays.len(), 3);
        assert!(orthant.open.iter().all(|&o| o));
        assert_eq!(
            cones[0].rays,
            vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]]
        );
        assert!(cones[0].open.iter().all(|&o| o));
    }

    #[test]
    fn hermite_dominant_cones_are_disjoint() {
        let n = 4i64;
        let systems: Vec<_> = (0..n as usize)
            .map(|k| hermite_ck_constraints(n, k).unwrap())
            .collect();
        for x in box_scan(n as usize, 8) {
            let hits = systems.iter().filter(|cs| cs.satisfied_by(&x)).count();
            assert!(hits <= 1, "{x:?} lies in two dominant-part cones");
        }
    }

    #[test]
    fn hermite_difference_matches_definition() {
        let n = 3i64;
        let orthant = hermite_orthant_constraints(n).unwrap();
        let systems: Vec<_> = (0..n as usize)
            .map(|k| hermite_ck_constraints(n, k).unwrap())
            .collect();
        let hermite = hermite_constraints(n).unwrap();
        for x in box_scan(n as usize, 8) {
            let in_diff =
                orthant.satisfied_by(&x) && systems.iter().all(|cs| !cs.satisfied_by(&x));
            assert_eq!(in_diff, hermite.satisfied_by(&x), "disagreement at {x:?}");
        }
    }

    #[test]
    fn cayley_vertices_small() {
        let p2 = cayley_polytope(2).unwrap();
        assert_eq!(p2.vertices, vec![vec![1], vec![2]]);

        let p3 = cayley_polytope(3).unwrap();
        let mut vs = p3.vertices.clone();
        vs.sort();
        assert_eq!(vs, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 4]]);

        let p4 = cayley_polytope(4).unwrap();
        assert_eq!(p4.vertices.len(), 8);
        assert!(p4.vertices.contains(&vec![2, 4, 8]));
    }

    #[test]
    fn cayley_vertices_are_simple_lattice_points() {
        for j in 2..=6i64 {
            let p = cayley_polytope(j).unwrap();
            let dim = p.dim();
            assert_eq!(p.vertices.len(), 1 << dim);
            for v in &p.vertices {
                assert!(p.constraints.satisfied_by(v), "vertex {v:?} outside");
                // each vertex is pinned by exactly dim tight constraints
                let tight: Vec<&Constraint> = p
                    .constraints
                    .constraints
                    .iter()
                    .filter(|c| {
                        let val: i64 = c.coeffs.iter().zip(v).map(|(a, b)| a * b).sum();
                        val == c.rhs
                    })
                    .collect();
                assert_eq!(tight.len(), dim, "vertex {v:?} is not simple");
            }
            // vertices are pairwise distinct
            let mut sorted = p.vertices.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), 1 << dim);
        }
    }

    #[test]
    fn hyperslice_direct_counts() {
        let cs = hypersimplex_slice_constraints(3, 2, 4).unwrap();
        let points: Vec<_> = box_scan(3, 4)
            .into_iter()
            .filter(|x| cs.satisfied_by(x))
            .collect();
        assert_eq!(points.len(), 6);
        // permutations of (2,2,0) and (2,1,1)
        assert!(points.contains(&vec![2, 2, 0]));
        assert!(points.contains(&vec![2, 1, 1]));
        assert!(!points.contains(&vec![3, 1, 0]));

        let cs0 = hypersimplex_slice_constraints(3, 2, 0).unwrap();
        let zeros: Vec<_> = box_scan(3, 0)
            .into_iter()
            .filter(|x| cs0.satisfied_by(x))
            .collect();
        assert_eq!(zeros, vec![vec![0, 0, 0]]);
    }

    #[test]
    fn hyperslice_halfsum_equivalence_at_k2() {
        let n = 4i64;
        for t in 0..=10i64 {
            let slice = hypersimplex_slice_constraints(n, 2, t).unwrap();
            let halfsum = hypersimplex_halfsum_constraints(n, t).unwrap();
            for x in box_scan(n as usize, t) {
                assert_eq!(
                    slice.satisfied_by(&x),
                    halfsum.satisfied_by(&x),
                    "the two descriptions split at {x:?} (t={t})"
                );
            }
        }
    }

    #[test]
    fn family_spec_parsing() {
        let spec: FamilySpec = "higherdiff:r=2,n=4".parse().unwrap();
        assert_eq!(spec, FamilySpec::HigherDiff { r: 2, n: 4 });
        assert_eq!(spec.to_string(), "higherdiff:r=2,n=4");

        let spec: FamilySpec = "hyperslice:n=4,k=2,t=8".parse().unwrap();
        assert_eq!(spec, FamilySpec::HypersimplexSlice { n: 4, k: 2, t: 8 });

        assert!("ngon:n=2".parse::<FamilySpec>().is_err());
        assert!("unknown:x=1".parse::<FamilySpec>().is_err());
        assert!("cayley:j=notanumber".parse::<FamilySpec>().is_err());
        // practical caps keep shifts and allocations sane
        assert!("cayley:j=17".parse::<FamilySpec>().is_err());
        assert!("hyperslice:n=3,k=2000000,t=1".parse::<FamilySpec>().is_err());
        assert!("cayley:j=16".parse::<FamilySpec>().is_ok());
    }

    #[test]
    fn constraint_system_round_trip() {
        let cs = hermite_constraints(3).unwrap();
        let json = serde_json::to_string(&cs).unwrap();
        let back: LinearConstraintSystem = serde_json::from_str(&json).unwrap();
        assert_eq!(cs, back);
    }
}
