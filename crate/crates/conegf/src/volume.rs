//! Exact volumes of Cayley polytopes and the connected-graph comparison.
//!
//! The constraint structure is triangular (`x_i` is bounded by `x_{i-1}`
//! alone), so the volume is an iterated univariate integral with polynomial
//! integrands: `vol = int_1^2 dx_1 int_1^{2 x_1} dx_2 ... int_1^{2 x_{j-2}}
//! dx_{j-1}`. A second, independent route splits the combinatorial cube into
//! `(j-1)!` vertex-chain simplices and sums exact simplex volumes; the two
//! routes must agree.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactmath::{mat_det, BigInt, BigRat, RatMatrix};
use crate::families::{cayley_polytope, FamilySpec};
use crate::oracle::connected_graph_count;
use crate::Result;

/// Dense univariate polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRat>,
}

impl UniPoly {
    pub fn constant(c: BigRat) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn one() -> Self {
        UniPoly::constant(BigRat::one())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn evaluate(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> UniPoly {
        let mut coeffs = vec![BigRat::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / BigRat::from_integer(BigInt::from(k as i64 + 1)));
        }
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// The polynomial `p(2t)` as a polynomial in `t`.
    pub fn stretch_argument_by_two(&self) -> UniPoly {
        let two = BigRat::from_integer(BigInt::from(2));
        let mut scale = BigRat::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &scale);
            scale *= &two;
        }
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// Subtraction, for forming `A(2t) - A(1)`.
    pub fn sub_constant(&self, c: &BigRat) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(-c.clone());
        } else {
            coeffs[0] -= c.clone();
        }
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }
}

/// Euclidean volume of the Cayley polytope by iterated exact integration.
pub fn cayley_volume(j: i64) -> Result<BigRat> {
    FamilySpec::Cayley { j }.validate()?;
    let one = BigRat::one();
    // innermost integrand is the constant 1 in x_{j-1}
    let mut current = UniPoly::one();
    // peel the inner j-2 integrals, each over [1, 2 x_prev]
    for _ in 0..(j - 2) {
        let anti = current.antiderivative();
        let at_one = anti.evaluate(&one);
        current = anti.stretch_argument_by_two().sub_constant(&at_one);
    }
    // outer integral over x_1 in [1, 2]
    let anti = current.antiderivative();
    Ok(anti.evaluate(&BigRat::from_integer(BigInt::from(2))) - anti.evaluate(&one))
}

/// Normalized volume `(j-1)! vol`; an integer for lattice polytopes, checked.
pub fn normalized_volume(j: i64) -> Result<BigInt> {
    let vol = cayley_volume(j)?;
    let mut factorial = BigInt::one();
    for i in 1..j {
        factorial *= BigInt::from(i);
    }
    let normalized = vol * BigRat::from_integer(factorial);
    if !normalized.denom().is_one() {
        return Err(Error::NonIntegerNormalizedVolume);
    }
    Ok(normalized.numer().clone())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(items, k - 1, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(&mut items, n, &mut out);
    out
}

/// Independent route: walk the cube vertices low-to-high one coordinate at a
/// time in every order; each chain spans a simplex, and the absolute
/// determinants of the edge matrices sum to the normalized volume. Visits
/// `(j-1)!` chains, so it is capped at `j <= 10`.
pub fn normalized_volume_by_simplices(j: i64) -> Result<BigInt> {
    FamilySpec::Cayley { j }.validate()?;
    if j > 10 {
        return Err(Error::bad_params(
            "simplex route enumerates (j-1)! chains; use j <= 10",
        ));
    }
    let p = cayley_polytope(j)?;
    let dim = p.dim();
    if dim == 0 {
        return Ok(BigInt::one());
    }
    let mut total = BigRat::zero();
    for perm in permutations(dim) {
        let mut mask = 0u32;
        let base = &p.vertices[0];
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(dim);
        for &bit in &perm {
            mask |= 1 << bit;
            let v = &p.vertices[mask as usize];
            rows.push(v.iter().zip(base).map(|(a, b)| a - b).collect());
        }
        total += mat_det(&RatMatrix::from_int_rows(&rows))?.abs();
    }
    if !total.denom().is_one() {
        return Err(Error::NonIntegerNormalizedVolume);
    }
    Ok(total.numer().clone())
}

/// One row of the conjecture report: the exact volumes next to the connected
/// labeled graph counts at both candidate offsets. The tool reports both; it
/// does not adjudicate which indexing was intended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub j: i64,
    /// Euclidean volume as an exact fraction string.
    pub volume: String,
    /// Normalized volume (j-1)! vol, decimal string.
    pub normalized_volume: String,
    /// Connected labeled graphs on j-1 vertices.
    pub graphs_on_j_minus_1: String,
    /// Connected labeled graphs on j vertices.
    pub graphs_on_j: String,
    pub matches_j_minus_1: bool,
    pub matches_j: bool,
}

pub fn conjecture_report(j_max: i64) -> Result<Vec<ConjectureRow>> {
    if j_max < 2 {
        return Err(Error::bad_params("report needs j_max >= 2"));
    }
    let mut rows = Vec::new();
    for j in 2..=j_max {
        let volume = cayley_volume(j)?;
        let normalized = normalized_volume(j)?;
        // cross-check the factorial simplex route while it stays cheap
        if j <= 8 {
            let simplex_route = normalized_volume_by_simplices(j)?;
            if simplex_route != normalized {
                return Err(Error::bad_params(format!(
                    "volume routes disagree at j={j}: integration {normalized}, simplices {simplex_route}"
                )));
            }
        }
        let prev = connected_graph_count((j - 1) as u32);
        let at_j = connected_graph_count(j as u32);
        rows.push(ConjectureRow {
            j,
            volume: volume.to_string(),
            normalized_volume: normalized.to_string(),
            matches_j_minus_1: normalized == prev,
            matches_j: normalized == at_j,
            graphs_on_j_minus_1: prev.to_string(),
            graphs_on_j: at_j.to_string(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn small_volumes_exact() {
        assert_eq!(cayley_volume(2).unwrap(), rat(1));
        assert_eq!(cayley_volume(3).unwrap(), rat(2));
        assert_eq!(
            cayley_volume(4).unwrap(),
            BigRat::new(BigInt::from(19), BigInt::from(3))
        );
    }

    #[test]
    fn normalized_volumes_small() {
        assert_eq!(normalized_volume(2).unwrap(), BigInt::from(1));
        assert_eq!(normalized_volume(3).unwrap(), BigInt::from(4));
        assert_eq!(normalized_volume(4).unwrap(), BigInt::from(38));
    }

    #[test]
    fn normalized_volume_is_integral_up_to_j9() {
        for j in 2..=9i64 {
            normalized_volume(j).unwrap();
        }
    }

    #[test]
    fn volume_monotone_and_box_bounded() {
        let mut prev = BigRat::zero();
        for j in 2..=9i64 {
            let vol = cayley_volume(j).unwrap();
            assert!(vol > prev, "volume not increasing at j={j}");
            // the polytope sits inside the box prod [1, 2^i]
            let exponent = (j - 1) * (j - 2) / 2;
            let bound = BigRat::from_integer(BigInt::one() << exponent as usize);
            assert!(vol <= bound, "volume exceeds the box bound at j={j}");
            prev = vol;
        }
    }

    #[test]
    fn simplex_route_agrees_with_integration() {
        for j in 2..=7i64 {
            assert_eq!(
                normalized_volume_by_simplices(j).unwrap(),
                normalized_volume(j).unwrap(),
                "routes disagree at j={j}"
            );
        }
    }

    #[test]
    fn conjecture_rows_match_at_the_shifted_offset() {
        let rows = conjecture_report(7).unwrap();
        assert_eq!(rows.len(), 6);

        // j = 2: volume 1 matches the single graph at both offsets
        assert_eq!(rows[0].normalized_volume, "1");
        assert!(rows[0].matches_j_minus_1);
        assert!(rows[0].matches_j);

        // j = 3: Vol 4 vs 1 graph on 2 vertices and 4 graphs on 3
        assert_eq!(rows[1].normalized_volume, "4");
        assert!(!rows[1].matches_j_minus_1);
        assert!(rows[1].matches_j);

        // j = 4: Vol 38 = graphs on 4 vertices
        assert_eq!(rows[2].normalized_volume, "38");
        assert!(rows[2].matches_j);

        // the shifted offset keeps matching through j = 7
        for row in &rows {
            assert!(row.matches_j, "no match at j={}", row.j);
        }
        assert_eq!(rows[3].normalized_volume, "728");
        assert_eq!(rows[4].normalized_volume, "26704");
        assert_eq!(rows[5].normalized_volume, "1866256");
    }

    #[test]
    fn conjecture_report_rejects_bad_range() {
        assert!(conjecture_report(1).is_err());
    }

    #[test]
    fn simplex_route_is_capped() {
        assert!(normalized_volume_by_simplices(11).is_err());
        // the report still runs past the cap on the integration route alone
        let rows = conjecture_report(12).unwrap();
        assert_eq!(rows.len(), 11);
        assert!(rows.iter().all(|r| r.matches_j));
    }
}
