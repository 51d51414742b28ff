//! Gradings of presented rings by free abelian groups, and the finest
//! grading for which all generators are homogeneous.

use crate::lattice::integer_kernel_basis;
use crate::poly::{Mono, Poly};
use crate::quotient::PresentedRing;
use crate::rational::Int;
use num::Zero;
use serde_json::{json, Value};

/// A ℤ^rank-grading given by a weight vector per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    pub rank: usize,
    /// `weights[v]` is the degree vector of variable `v`.
    pub weights: Vec<Vec<Int>>,
}

impl Grading {
    /// The rank-0 grading putting everything in degree zero.
    pub fn trivial(nvars: usize) -> Grading {
        Grading {
            rank: 0,
            weights: vec![vec![]; nvars],
        }
    }

    pub fn degree_of_mono(&self, m: &Mono) -> Vec<Int> {
        let mut deg = vec![Int::zero(); self.rank];
        for (v, &e) in m.0.iter().enumerate() {
            if e > 0 {
                for (d, w) in deg.iter_mut().zip(&self.weights[v]) {
                    *d += w * Int::from(e);
                }
            }
        }
        deg
    }

    /// The common degree of all terms, when the polynomial is homogeneous.
    pub fn degree_of(&self, p: &Poly) -> Option<Vec<Int>> {
        let mut iter = p.terms.keys();
        let first = self.degree_of_mono(iter.next()?);
        for m in iter {
            if self.degree_of_mono(m) != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn is_homogeneous(&self, p: &Poly) -> bool {
        p.is_zero() || self.degree_of(p).is_some()
    }

    /// Compose with an integer projection ℤ^rank → ℤ^s given by an
    /// `s x rank` matrix.
    pub fn coarsen(&self, projection: &[Vec<Int>]) -> Grading {
        let s = projection.len();
        debug_assert!(projection.iter().all(|row| row.len() == self.rank));
        let weights = self
            .weights
            .iter()
            .map(|w| {
                projection
                    .iter()
                    .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        Grading { rank: s, weights }
    }

    pub fn to_json(&self, ring: &PresentedRing) -> Value {
        let mut weights = serde_json::Map::new();
        for (v, w) in self.weights.iter().enumerate() {
            weights.insert(
                ring.space().name(v).to_string(),
                json!(w.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            );
        }
        json!({ "rank": self.rank, "weights": weights })
    }
}

/// The finest grading making every relation homogeneous: the weight
/// lattice is the integer kernel of the matrix that equates the degrees of
/// consecutive terms within each relation.  The Hermite-normalized kernel
/// basis makes the result deterministic.
pub fn fine_grading(ring: &PresentedRing) -> Grading {
    let n = ring.space().len();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for g in ring.relations() {
        let monos: Vec<&Mono> = g.terms.keys().collect();
        for pair in monos.windows(2) {
            let row: Vec<Int> = (0..n)
                .map(|v| Int::from(pair[0].0[v]) - Int::from(pair[1].0[v]))
                .collect();
            rows.push(row);
        }
    }
    let basis = integer_kernel_basis(&rows, n);
    let rank = basis.len();
    let weights = (0..n)
        .map(|v| basis.iter().map(|b| b[v].clone()).collect())
        .collect();
    Grading { rank, weights }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::space::VariableSpace;

    fn ring(names: &[&str], rels: &[&str]) -> PresentedRing {
        let space = VariableSpace::plain(names.iter().map(|s| s.to_string()).collect());
        let rels = rels.iter().map(|t| parse_poly(&space, t).unwrap()).collect();
        PresentedRing::new(space, rels).unwrap()
    }

    #[test]
    fn fine_grading_of_fermat_like_surface() {
        let r = ring(&["x", "y", "z"], &["x^2 + y^3 + z^5"]);
        let g = fine_grading(&r);
        assert_eq!(g.rank, 1);
        assert_eq!(
            g.weights,
            vec![vec![Int::from(15)], vec![Int::from(10)], vec![Int::from(6)]]
        );
        assert!(g.is_homogeneous(&r.relations()[0]));
    }

    #[test]
    fn fine_grading_of_sphere() {
        let r = ring(&["x", "y", "z"], &["x^2 + y^2 + z^2"]);
        let g = fine_grading(&r);
        assert_eq!(g.rank, 1);
        assert_eq!(
            g.weights,
            vec![vec![Int::from(1)], vec![Int::from(1)], vec![Int::from(1)]]
        );
    }

    #[test]
    fn fine_grading_rank_is_nvars_minus_two() {
        let r = ring(&["x", "y", "z", "w"], &["x^2 + y^3 + z*w^2"]);
        let g = fine_grading(&r);
        assert_eq!(g.rank, 2);
        assert!(g.is_homogeneous(&r.relations()[0]));
    }

    #[test]
    fn coarsen_projects_and_keeps_homogeneity() {
        let r = ring(&["x", "y", "z", "w"], &["x^2 + y^3 + z*w^2"]);
        let g = fine_grading(&r);
        let proj = vec![vec![Int::from(1), Int::from(0)]];
        let c = g.coarsen(&proj);
        assert_eq!(c.rank, 1);
        assert!(c.is_homogeneous(&r.relations()[0]));
        let zero = g.coarsen(&[]);
        assert_eq!(zero.rank, 0);
        assert_eq!(
            zero.degree_of(&parse_poly(r.space(), "x + y^7").unwrap()),
            Some(vec![])
        );
    }

    #[test]
    fn inhomogeneous_detection() {
        let r = ring(&["x", "y", "z"], &["x^2 + y^3 + z^5"]);
        let g = fine_grading(&r);
        assert!(!g.is_homogeneous(&parse_poly(r.space(), "x + y").unwrap()));
        assert!(g.is_homogeneous(&parse_poly(r.space(), "x^2 + y^3").unwrap()));
    }
}
