//! Pointed rational simplicial cones in halfspace and generator form.
//!
//! Only simplicial (square-matrix) cones are represented. Non-simplicial
//! regions are always handled as explicit differences or unions of simplicial
//! cones by the callers, mirroring how the closed forms are assembled.
//! Openness is tracked per constraint / per ray because half-open cones mix
//! closed and open generators in a single cone.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactmath::{mat_det, mat_inverse, primitive_from_rationals, BigRat, RatMatrix};
use crate::genfun::{ExponentVector, MultiPolynomial, RationalGF};
use crate::Result;

/// The region `{ x : A x >= 0 }` with flagged rows strict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfspaceCone {
    /// Integer constraint rows.
    pub rows: Vec<Vec<i64>>,
    /// Row i is a strict inequality when `strict[i]`.
    pub strict: Vec<bool>,
}

impl HalfspaceCone {
    pub fn new(rows: Vec<Vec<i64>>, strict: Vec<bool>) -> Self {
        assert_eq!(rows.len(), strict.len(), "one flag per constraint row");
        HalfspaceCone { rows, strict }
    }

    pub fn dim(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    /// Exact membership test with strictness.
    pub fn contains(&self, x: &[i64]) -> bool {
        self.rows.iter().zip(&self.strict).all(|(row, &strict)| {
            let v: i64 = row.iter().zip(x).map(|(a, b)| a * b).sum();
            if strict {
                v > 0
            } else {
                v >= 0
            }
        })
    }
}

/// The cone `apex + { B y : y >= 0 }` with per-ray openness: an open ray
/// demands a strictly positive coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCone {
    /// Ray generators (the columns of the generator matrix).
    pub rays: Vec<Vec<i64>>,
    /// Ray i is open when `open[i]`.
    pub open: Vec<bool>,
    /// Apex shift; zero for cones at the origin, the vertex for tangent cones.
    pub apex: Vec<i64>,
}

impl GeneratorCone {
    pub fn new(rays: Vec<Vec<i64>>, open: Vec<bool>) -> Self {
        let dim = rays.first().map_or(0, |r| r.len());
        GeneratorCone::with_apex(rays, open, vec![0; dim])
    }

    pub fn with_apex(rays: Vec<Vec<i64>>, open: Vec<bool>, apex: Vec<i64>) -> Self {
        assert_eq!(rays.len(), open.len(), "one flag per ray");
        for ray in &rays {
            assert_eq!(ray.len(), apex.len(), "ray arity mismatch");
        }
        GeneratorCone { rays, open, apex }
    }

    pub fn dim(&self) -> usize {
        self.apex.len()
    }

    pub fn ray_matrix(&self) -> RatMatrix {
        RatMatrix::from_int_columns(&self.rays)
    }

    /// Exact membership: solves `B y = x - apex` and checks the sign and
    /// strictness of every coefficient.
    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        let shifted: Vec<i64> = x
            .iter()
            .zip(&self.apex)
            .map(|(a, b)| a - b)
            .collect();
        let inv = mat_inverse(&self.ray_matrix())?;
        let y = inv.apply(&shifted);
        Ok(y.iter().zip(&self.open).all(|(c, &open)| {
            if open {
                c.is_positive()
            } else {
                !c.is_negative()
            }
        }))
    }
}

/// Generator form from halfspace form: the ray matrix is the inverse of the
/// constraint matrix, columns cleared to primitive integer vectors, and ray i
/// is open exactly when constraint i is strict.
pub fn h_to_v(h: &HalfspaceCone) -> Result<GeneratorCone> {
    let a = RatMatrix::from_int_rows(&h.rows);
    let b = mat_inverse(&a)?;
    let n = b.cols();
    let mut rays = Vec::with_capacity(n);
    for j in 0..n {
        let col = b.column(j);
        // positive rescaling keeps the coefficient interpretation intact
        let ray = primitive_from_rationals(&col).expect("inverse column cannot be zero");
        rays.push(ray);
    }
    Ok(GeneratorCone::new(rays, h.strict.clone()))
}

/// Halfspace form from generator form; inverse of [`h_to_v`] up to positive
/// primitive rescaling of rows.
pub fn v_to_h(g: &GeneratorCone) -> Result<HalfspaceCone> {
    let b = g.ray_matrix();
    let a = mat_inverse(&b)?;
    let mut rows = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let row = primitive_from_rationals(a.row(i)).expect("inverse row cannot be zero");
        rows.push(row);
    }
    Ok(HalfspaceCone::new(rows, g.open.clone()))
}

/// True iff the primitive generators form a lattice basis (|det| = 1).
pub fn is_unimodular(g: &GeneratorCone) -> Result<bool> {
    let m = g.ray_matrix();
    let det = mat_det(&m)?;
    Ok(det.abs() == BigRat::new(1.into(), 1.into()))
}

/// The integer-point generating function of a unimodular half-open cone:
/// the product of `z^v` over open rays (times `z^apex`) over the product of
/// `(1 - z^v)` across all rays.
pub fn cone_gf(g: &GeneratorCone) -> Result<RationalGF> {
    if !is_unimodular(g)? {
        return Err(Error::NotUnimodular);
    }
    let dim = g.dim();
    let mut numerator_exp = ExponentVector::new(g.apex.clone());
    let mut denominator = Vec::with_capacity(g.rays.len());
    for (ray, &open) in g.rays.iter().zip(&g.open) {
        let ev = ExponentVector::new(ray.clone());
        if open {
            numerator_exp = numerator_exp.add(&ev);
        }
        denominator.push(ev);
    }
    let numerator = MultiPolynomial::monomial(numerator_exp, 1.into());
    debug_assert_eq!(numerator.vars(), dim);
    Ok(RationalGF::single(numerator, denominator))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use num_traits::One;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    /// x1 > 0, x2 >= x1, x3 >= x2, x4 >= x3.
    fn k1_halfspaces() -> HalfspaceCone {
        HalfspaceCone::new(
            vec![
                vec![1, 0, 0, 0],
                vec![-1, 1, 0, 0],
                vec![0, -1, 1, 0],
                vec![0, 0, -1, 1],
            ],
            vec![true, false, false, false],
        )
    }

    /// Same chain plus x1 + x2 + x3 <= x4.
    fn k2_halfspaces() -> HalfspaceCone {
        HalfspaceCone::new(
            vec![
                vec![1, 0, 0, 0],
                vec![-1, 1, 0, 0],
                vec![0, -1, 1, 0],
                vec![-1, -1, -1, 1],
            ],
            vec![true, false, false, false],
        )
    }

    #[test]
    fn h_to_v_chain_cone() {
        let g = h_to_v(&k1_halfspaces()).unwrap();
        assert_eq!(
            g.rays,
            vec![
                vec![1, 1, 1, 1],
                vec![0, 1, 1, 1],
                vec![0, 0, 1, 1],
                vec![0, 0, 0, 1],
            ]
        );
        assert_eq!(g.open, vec![true, false, false, false]);
    }

    #[test]
    fn h_to_v_capped_chain_cone() {
        let g = h_to_v(&k2_halfspaces()).unwrap();
        // generator matrix rows: all-ones triangle over the (3,2,1,1) row
        assert_eq!(
            g.rays,
            vec![
                vec![1, 1, 1, 3],
                vec![0, 1, 1, 2],
                vec![0, 0, 1, 1],
                vec![0, 0, 0, 1],
            ]
        );
        assert_eq!(g.open, vec![true, false, false, false]);
    }

    #[test]
    fn h_to_v_orthant() {
        let h = HalfspaceCone::new(
            vec![vec![1, 0], vec![0, 1]],
            vec![true, true],
        );
        let g = h_to_v(&h).unwrap();
        assert_eq!(g.rays, vec![vec![1, 0], vec![0, 1]]);
        assert!(g.open.iter().all(|&o| o));
    }

    #[test]
    fn v_to_h_second_difference_rows() {
        // The r=2, n=3 generator matrix converts back to rows encoding
        // x_k - 2 x_{k+1} + x_{k+2} >= 0 (indices past n dropped).
        let g = GeneratorCone::new(
            vec![vec![1, 0, 0], vec![2, 1, 0], vec![3, 2, 1]],
            vec![false; 3],
        );
        let h = v_to_h(&g).unwrap();
        assert_eq!(
            h.rows,
            vec![vec![1, -2, 1], vec![0, 1, -2], vec![0, 0, 1]]
        );
        assert_eq!(h.strict, vec![false; 3]);
    }

    #[test]
    fn conversion_round_trip() {
        let g = h_to_v(&k2_halfspaces()).unwrap();
        let h = v_to_h(&g).unwrap();
        let g2 = h_to_v(&h).unwrap();
        assert_eq!(g, g2);

        let h0 = k1_halfspaces();
        let h1 = v_to_h(&h_to_v(&h0).unwrap()).unwrap();
        assert_eq!(h0, h1);
    }

    #[test]
    fn unimodularity() {
        assert!(is_unimodular(&h_to_v(&k1_halfspaces()).unwrap()).unwrap());
        assert!(is_unimodular(&h_to_v(&k2_halfspaces()).unwrap()).unwrap());
        let skew = GeneratorCone::new(vec![vec![1, 0], vec![1, 2]], vec![false, false]);
        assert!(!is_unimodular(&skew).unwrap());
    }

    #[test]
    fn gf_of_open_orthant() {
        let g = GeneratorCone::new(
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![true, true, true],
        );
        let gf = cone_gf(&g).unwrap();
        assert_eq!(gf.term_count(), 1);
        let term = &gf.terms()[0];
        assert_eq!(term.numerator().coefficient(&ev(&[1, 1, 1])), 1.into());
        assert_eq!(term.numerator().term_count(), 1);
        assert_eq!(
            term.denominator(),
            &[ev(&[0, 0, 1]), ev(&[0, 1, 0]), ev(&[1, 0, 0])]
        );
    }

    #[test]
    fn gf_of_dominant_part_cone() {
        // rays e_2 and e_j + e_2 for j != 2, n = 4, all open
        let g = GeneratorCone::new(
            vec![
                vec![0, 1, 0, 0],
                vec![1, 1, 0, 0],
                vec![0, 1, 1, 0],
                vec![0, 1, 0, 1],
            ],
            vec![true; 4],
        );
        let gf = cone_gf(&g).unwrap();
        let term = &gf.terms()[0];
        assert_eq!(term.numerator().coefficient(&ev(&[1, 4, 1, 1])), 1.into());
        assert_eq!(
            term.denominator(),
            &[
                ev(&[0, 1, 0, 0]),
                ev(&[0, 1, 0, 1]),
                ev(&[0, 1, 1, 0]),
                ev(&[1, 1, 0, 0])
            ]
        );
    }

    #[test]
    fn gf_all_closed_has_unit_numerator() {
        let g = GeneratorCone::new(vec![vec![1, 0], vec![1, 1]], vec![false, false]);
        let gf = cone_gf(&g).unwrap();
        let term = &gf.terms()[0];
        assert_eq!(term.numerator().coefficient(&ev(&[0, 0])), 1.into());
        assert!(term.numerator().term_count() == 1);
    }

    #[test]
    fn gf_rejects_non_unimodular() {
        let skew = GeneratorCone::new(vec![vec![1, 0], vec![1, 2]], vec![false, false]);
        assert_eq!(cone_gf(&skew), Err(Error::NotUnimodular));
    }

    #[test]
    fn membership_agrees_between_forms() {
        let cones = vec![k1_halfspaces(), k2_halfspaces()];
        let mut rng = SplitMix64::new(42);
        for h in cones {
            let g = h_to_v(&h).unwrap();
            for _ in 0..200 {
                let x: Vec<i64> = (0..h.dim())
                    .map(|_| rng.range(0, 8) as i64 - 2)
                    .collect();
                assert_eq!(
                    h.contains(&x),
                    g.contains(&x).unwrap(),
                    "forms disagree at {x:?}"
                );
            }
        }
    }

    #[test]
    fn expansion_counts_lattice_points_directly() {
        // brute force over the box agrees with the expanded series for the
        // K_1 chain cone at n = 3
        let h = HalfspaceCone::new(
            vec![vec![1, 0, 0], vec![-1, 1, 0], vec![0, -1, 1]],
            vec![true, false, false],
        );
        let g = h_to_v(&h).unwrap();
        let series = cone_gf(&g).unwrap().expand(8).unwrap();
        for a in 0..=8i64 {
            for b in 0..=8i64 {
                for c in 0..=8i64 {
                    if a + b + c > 8 {
                        continue;
                    }
                    let expected = i64::from(h.contains(&[a, b, c]));
                    assert_eq!(
                        series.coefficient(&ev(&[a, b, c])),
                        expected.into(),
                        "mismatch at ({a},{b},{c})"
                    );
                }
            }
        }
    }

    #[test]
    fn tangent_cone_with_apex_shift() {
        let g = GeneratorCone::with_apex(
            vec![vec![-1, -2], vec![0, -1]],
            vec![false, false],
            vec![2, 4],
        );
        let gf = cone_gf(&g).unwrap();
        let term = &gf.terms()[0];
        assert_eq!(term.numerator().coefficient(&ev(&[2, 4])), 1.into());
        // the shifted cone contains its apex
        assert!(g.contains(&[2, 4]).unwrap());
        assert!(g.contains(&[1, 2]).unwrap());
        assert!(!g.contains(&[3, 4]).unwrap());
    }

    #[test]
    fn cone_json_round_trip() {
        let g = h_to_v(&k2_halfspaces()).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        let back: GeneratorCone = serde_json::from_str(&json).unwrap();
        assert_eq!(g, back);

        let h = k1_halfspaces();
        let json = serde_json::to_string(&h).unwrap();
        let back: HalfspaceCone = serde_json::from_str(&json).unwrap();
        assert_eq!(h, back);
    }

    #[test]
    fn series_of_difference_counts_once() {
        // sigma_{K_1} - sigma_{K_2} over 3 variables has 0/1 coefficients
        let k1 = h_to_v(&HalfspaceCone::new(
            vec![vec![1, 0, 0], vec![-1, 1, 0], vec![0, -1, 1]],
            vec![true, false, false],
        ))
        .unwrap();
        let k2 = h_to_v(&HalfspaceCone::new(
            vec![vec![1, 0, 0], vec![-1, 1, 0], vec![-1, -1, 1]],
            vec![true, false, false],
        ))
        .unwrap();
        let diff = cone_gf(&k1)
            .unwrap()
            .gf_sub(&cone_gf(&k2).unwrap())
            .unwrap();
        let series = diff.expand(10).unwrap();
        for (_, c) in series.iter() {
            assert!(c.is_one(), "difference series must be 0/1");
        }
    }

    #[test]
    fn unimodular_cone_series_is_zero_one() {
        for h in [k1_halfspaces(), k2_halfspaces()] {
            let g = h_to_v(&h).unwrap();
            let series = cone_gf(&g).unwrap().expand(12).unwrap();
            for (_, c) in series.iter() {
                assert!(c.is_one(), "unimodular cone coefficients are 0 or 1");
            }
        }
    }
}
