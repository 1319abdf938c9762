//! Vertex tangent cones of Cayley polytopes and the rational-function
//! identity summing them to the lattice-point polynomial.
//!
//! Tangent cones are built from the tight constraints at each vertex, then
//! cross-checked against vertex adjacency in the tests. The sum over
//! vertices is verified by exact evaluation at seeded random rational points
//! rather than by symbolic normalization: a common denominator across
//! `2^(j-1)` terms blows up, and exact rational evaluation is cheap.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cone::{cone_gf, is_unimodular, GeneratorCone};
use crate::error::Error;
use crate::exactmath::{mat_inverse, primitive_from_rationals, RatMatrix};
use crate::families::{CayleyPolytope, Relation};
use crate::genfun::{MonomialMap, RationalGF};
use crate::identities::{Method, VerificationReport, Witness};
use crate::oracle::{self, enumerate};
use crate::rng::SplitMix64;
use crate::Result;

/// The cone of directions into the polytope at a vertex, shifted to the
/// vertex, with the indices of the tight constraint rows as provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexTangentCone {
    pub vertex: Vec<i64>,
    pub cone: GeneratorCone,
    pub tight_rows: Vec<usize>,
}

/// Tight constraints at the vertex written as `a . x >= b`; edge directions
/// are the columns of the inverse of the tight matrix, oriented inward and
/// made primitive. All rays closed.
pub fn tangent_cone(p: &CayleyPolytope, v: &[i64]) -> Result<VertexTangentCone> {
    if !p.vertices.iter().any(|w| w == v) {
        return Err(Error::NotAVertex);
    }
    let dim = p.dim();
    let mut tight_rows = Vec::new();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (idx, c) in p.constraints.constraints.iter().enumerate() {
        let value: i64 = c.coeffs.iter().zip(v).map(|(a, x)| a * x).sum();
        if value != c.rhs {
            continue;
        }
        tight_rows.push(idx);
        // normalize to >= orientation so inverse columns point inward
        match c.relation {
            Relation::Ge | Relation::Gt => rows.push(c.coeffs.clone()),
            Relation::Le | Relation::Lt => rows.push(c.coeffs.iter().map(|a| -a).collect()),
            Relation::Eq => rows.push(c.coeffs.clone()),
        }
    }
    if rows.len() != dim {
        return Err(Error::NotAVertex);
    }
    let tight = RatMatrix::from_int_rows(&rows);
    let inverse = mat_inverse(&tight)?;
    let mut rays = Vec::with_capacity(dim);
    for col in 0..dim {
        rays.push(primitive_from_rationals(&inverse.column(col))?);
    }
    Ok(VertexTangentCone {
        vertex: v.to_vec(),
        cone: GeneratorCone::with_apex(rays, vec![false; dim], v.to_vec()),
        tight_rows,
    })
}

/// The Brion sum: one simple term `z^v / prod(1 - z^edge)` per vertex.
pub fn brion_sum(p: &CayleyPolytope) -> Result<RationalGF> {
    let mut total = RationalGF::zero(p.dim());
    for v in &p.vertices {
        let tc = tangent_cone(p, v)?;
        if !is_unimodular(&tc.cone)? {
            return Err(Error::NotUnimodularTangentCone);
        }
        total = total.gf_add(&cone_gf(&tc.cone)?)?;
    }
    Ok(total)
}

/// The lattice-point polynomial of the polytope, straight from the oracle.
pub fn oracle_polynomial(p: &CayleyPolytope) -> Result<RationalGF> {
    let points = enumerate(&p.constraints, 1 << p.j)?;
    let poly = oracle::to_polynomial(&points);
    Ok(RationalGF::single(poly, Vec::new()))
}

fn j_params(j: i64) -> BTreeMap<String, i64> {
    let mut params = BTreeMap::new();
    params.insert("j".to_string(), j);
    params
}

/// Evaluates the Brion sum and the oracle polynomial at seeded random
/// rational vectors, rejecting pole points; passes iff all values agree
/// exactly.
pub fn brion_verify(p: &CayleyPolytope, points: usize, seed: u64) -> Result<VerificationReport> {
    let sum = brion_sum(p)?;
    let poly = oracle_polynomial(p)?;
    let witness = crate::identities::gf_equal_at_random_points(&sum, &poly, points, seed)?;
    let mut report = VerificationReport::named("brion", j_params(p.j), Method::RandomPoints, witness);
    report.points = Some(points);
    report.seed = Some(seed);
    Ok(report)
}

/// True when specializing every variable but the last to 1 hits a pole in
/// some vertex term: a tangent-cone denominator with no last-variable
/// dependence maps to `1 - 1`.
pub fn last_variable_specialization_obstructed(p: &CayleyPolytope) -> Result<bool> {
    let sum = brion_sum(p)?;
    match sum.specialize(&MonomialMap::last_to_q(p.dim())) {
        Ok(_) => Ok(false),
        Err(Error::PoleCreated) => Ok(true),
        Err(e) => Err(e),
    }
}

/// Checks that the all-variables-to-q specialization of the Brion sum equals
/// the coordinate-sum polynomial of the lattice points. The specialized sum
/// has Laurent denominators, so the comparison is exact evaluation at seeded
/// random rational values of q; if specialization itself degenerates, the
/// multivariate sum is evaluated on the diagonal instead.
pub fn brion_q_specialization_verify(
    p: &CayleyPolytope,
    points: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let dim = p.dim();
    let sum = brion_sum(p)?;
    let lattice = enumerate(&p.constraints, 1 << p.j)?;
    let q_poly = oracle::to_q_series(&lattice);

    let specialized = match sum.specialize(&MonomialMap::all_to_q(dim)) {
        Ok(gf) => Some(gf),
        Err(Error::PoleCreated) => None,
        Err(e) => return Err(e),
    };

    let mut rng = SplitMix64::new(seed);
    let mut witness = None;
    let mut checked = 0;
    let mut draws = 0;
    while checked < points {
        draws += 1;
        if draws > 100 * points + 100 {
            return Err(Error::bad_params(
                "could not find enough pole-free evaluation points",
            ));
        }
        let q = rng.rational();
        let lhs = match &specialized {
            Some(gf) => gf.evaluate(std::slice::from_ref(&q)),
            None => sum.evaluate(&vec![q.clone(); dim]),
        };
        let lhs = match lhs {
            Ok(v) => v,
            Err(Error::PoleAtPoint) => continue,
            Err(e) => return Err(e),
        };
        let rhs = q_poly.evaluate(std::slice::from_ref(&q))?;
        if lhs != rhs {
            witness = Some(Witness::Point {
                point: vec![q.to_string()],
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
            break;
        }
        checked += 1;
    }

    let mut report = VerificationReport::named(
        "brion-q-specialization",
        j_params(p.j),
        Method::RandomPoints,
        witness,
    );
    report.points = Some(points);
    report.seed = Some(seed);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::families::cayley_polytope;
    use num_traits::One;

    #[test]
    fn tangent_cone_at_the_high_corner() {
        let p = cayley_polytope(3).unwrap();
        let tc = tangent_cone(&p, &[2, 4]).unwrap();
        assert_eq!(tc.cone.rays, vec![vec![-1, -2], vec![0, -1]]);
        assert_eq!(tc.cone.apex, vec![2, 4]);
    }

    #[test]
    fn tangent_cone_at_the_low_corner() {
        let p = cayley_polytope(3).unwrap();
        let tc = tangent_cone(&p, &[1, 1]).unwrap();
        let mut rays = tc.cone.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn tangent_cone_of_the_segment() {
        let p = cayley_polytope(2).unwrap();
        let tc = tangent_cone(&p, &[2]).unwrap();
        assert_eq!(tc.cone.rays, vec![vec![-1]]);
        let tc = tangent_cone(&p, &[1]).unwrap();
        assert_eq!(tc.cone.rays, vec![vec![1]]);
    }

    #[test]
    fn non_vertex_is_rejected() {
        let p = cayley_polytope(3).unwrap();
        assert_eq!(tangent_cone(&p, &[1, 3]), Err(Error::NotAVertex));
    }

    #[test]
    fn tight_matrices_are_unimodular_up_to_j7() {
        for j in 2..=7i64 {
            let p = cayley_polytope(j).unwrap();
            for v in &p.vertices {
                let tc = tangent_cone(&p, v).unwrap();
                assert!(
                    is_unimodular(&tc.cone).unwrap(),
                    "tangent cone at {v:?} not unimodular (j={j})"
                );
                assert_eq!(tc.tight_rows.len(), p.dim());
            }
        }
    }

    #[test]
    fn rays_match_edge_directions_to_neighbors() {
        // combinatorial-cube neighbors differ in one choice bit
        for j in 3..=5i64 {
            let p = cayley_polytope(j).unwrap();
            let dim = p.dim();
            for (mask, v) in p.vertices.iter().enumerate() {
                let tc = tangent_cone(&p, v).unwrap();
                let mut rays = tc.cone.rays.clone();
                rays.sort();
                let mut edges: Vec<Vec<i64>> = (0..dim)
                    .map(|bit| {
                        let neighbor = &p.vertices[mask ^ (1 << bit)];
                        let diff: Vec<i64> =
                            neighbor.iter().zip(v).map(|(a, b)| a - b).collect();
                        crate::exactmath::primitive(&diff).unwrap()
                    })
                    .collect();
                edges.sort();
                assert_eq!(rays, edges, "vertex {v:?} of C_{j}");
            }
        }
    }

    #[test]
    fn brion_sum_term_counts() {
        for (j, expected) in [(2i64, 2usize), (3, 4), (4, 8)] {
            let p = cayley_polytope(j).unwrap();
            assert_eq!(brion_sum(&p).unwrap().term_count(), expected);
        }
    }

    #[test]
    fn segment_sum_evaluates_like_the_polynomial() {
        let p = cayley_polytope(2).unwrap();
        let sum = brion_sum(&p).unwrap();
        // z + z^2 at z = 3
        assert_eq!(sum.evaluate(&[rat(3)]).unwrap(), rat(12));
        let poly = oracle_polynomial(&p).unwrap();
        assert_eq!(poly.evaluate(&[rat(3)]).unwrap(), rat(12));
    }

    #[test]
    fn brion_verify_small_polytopes() {
        for j in [3i64, 5] {
            let p = cayley_polytope(j).unwrap();
            let report = brion_verify(&p, 20, 0).unwrap();
            assert!(report.passed(), "j={j}: {report:?}");
        }
    }

    #[test]
    fn last_variable_specialization_hits_poles_from_j3() {
        assert!(!last_variable_specialization_obstructed(&cayley_polytope(2).unwrap()).unwrap());
        for j in 3..=5i64 {
            assert!(
                last_variable_specialization_obstructed(&cayley_polytope(j).unwrap()).unwrap(),
                "expected a pole obstruction at j={j}"
            );
        }
    }

    #[test]
    fn q_specialization_of_the_sum_is_possible_and_correct() {
        for j in 2..=5i64 {
            let p = cayley_polytope(j).unwrap();
            // the diagonal specialization itself must succeed
            let sum = brion_sum(&p).unwrap();
            assert!(
                sum.specialize(&MonomialMap::all_to_q(p.dim())).is_ok(),
                "diagonal specialization degenerated at j={j}"
            );
            let report = brion_q_specialization_verify(&p, 20, 0).unwrap();
            assert!(report.passed(), "j={j}: {report:?}");
        }
    }

    #[test]
    fn vertex_monomials_appear_in_the_sum() {
        let p = cayley_polytope(3).unwrap();
        let sum = brion_sum(&p).unwrap();
        for (term, v) in sum.terms().iter().zip(&p.vertices) {
            let exp = crate::genfun::ExponentVector::new(v.clone());
            assert!(term.numerator().coefficient(&exp).is_one());
        }
    }
}
