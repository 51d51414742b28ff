//! Independent brute-force search for homogeneous LNDs of bounded degree,
//! used to cross-check the classifier and the witness catalog on small
//! instances.  Negative results mean "no LND up to the bound", never
//! "rigid".

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::grading::{fine_grading, Grading};
use crate::lattice::rational_kernel_basis;
use crate::lnd::{verify_lnd, LndCertificate, LndVerdict, RingRef};
use crate::poly::{monomials_up_to, Mono, Poly};
use crate::rational::{Int, Rat};
use num::Zero;
use std::collections::BTreeMap;

pub const DEFAULT_SEARCH_BOUND: u32 = 8;

#[derive(Debug, Clone)]
pub struct SearchSpace {
    pub ring: RingRef,
    pub grading: Grading,
    /// Target degree of the derivation in the grading.
    pub degree: Vec<Int>,
    /// Total-degree cap on image monomials.
    pub image_degree_bound: u32,
}

/// All admissible derivations of the given homogeneous degree, as an exact
/// kernel basis of the linear system "the derivation preserves the ideal",
/// each element re-verified by `extend_and_check`.
pub fn solve_homogeneous_derivations(s: &SearchSpace) -> Result<Vec<Derivation>> {
    let space = s.ring.space().clone();
    let nvars = space.len();
    // Unknowns: per generator, coefficients of candidate image monomials
    // of grading degree deg(x_v) + s.degree.
    let candidates = monomials_up_to(nvars, s.image_degree_bound);
    let mut unknowns: Vec<(usize, Mono)> = Vec::new();
    for v in 0..nvars {
        let want: Vec<Int> = s
            .grading
            .degree_of_mono(&Mono::var(nvars, v, 1))
            .iter()
            .zip(&s.degree)
            .map(|(a, b)| a + b)
            .collect();
        for m in &candidates {
            if s.grading.degree_of_mono(m) == want {
                unknowns.push((v, m.clone()));
            }
        }
    }
    if unknowns.is_empty() {
        return Err(Error::Precondition(
            "empty search space: no monomials of the required degree".into(),
        ));
    }
    // Equations: for each relation g, NF(∂g/∂x_v · m) must cancel; NF is
    // linear, so stack its coefficients per unknown.
    let mut row_index: BTreeMap<(usize, Mono), usize> = BTreeMap::new();
    let mut columns: Vec<BTreeMap<usize, Rat>> = Vec::with_capacity(unknowns.len());
    for (v, m) in &unknowns {
        let mut column = BTreeMap::new();
        for (gi, g) in s.ring.relations().iter().enumerate() {
            let contrib = &g.partial_derivative(*v)
                * &Poly::monomial(&space, m.clone(), Rat::from_integer(1.into()));
            let nf = s.ring.normal_form(&contrib);
            for (mono, c) in &nf.terms {
                let next = row_index.len();
                let row = *row_index.entry((gi, mono.clone())).or_insert(next);
                column.insert(row, c.clone());
            }
        }
        columns.push(column);
    }
    let nrows = row_index.len();
    let mut matrix = vec![vec![Rat::zero(); unknowns.len()]; nrows];
    for (ci, column) in columns.iter().enumerate() {
        for (&row, c) in column {
            matrix[row][ci] = c.clone();
        }
    }
    let kernel = rational_kernel_basis(&matrix, unknowns.len());
    let mut out = Vec::new();
    for vec in kernel {
        let mut images = vec![Poly::zero(&space); nvars];
        for ((v, m), c) in unknowns.iter().zip(&vec) {
            if !c.is_zero() {
                images[*v] =
                    &images[*v] + &Poly::monomial(&space, m.clone(), c.clone());
            }
        }
        out.push(Derivation::extend_and_check(s.ring.clone(), images)?);
    }
    Ok(out)
}

/// Cheap nilpotency pre-probe for combination candidates: walk the chains
/// with a short step cap and a term budget, declaring failure as soon as an
/// intermediate polynomial grows past the budget.  Honest bounded-degree
/// LNDs have short, small chains; runaway growth means the candidate is
/// (almost surely) not nilpotent and is skipped without paying for the full
/// verifier on an exploding chain.
fn probe_nilpotent(d: &Derivation, step_cap: u32, term_budget: usize) -> bool {
    let space = d.ring.space();
    for v in 0..space.len() {
        let mut p = Poly::monomial(space, Mono::var(space.len(), v, 1), Rat::from_integer(1.into()));
        let mut closed = false;
        for _ in 0..step_cap {
            p = d.ring.normal_form(&d.apply_ambient(&p));
            if p.is_zero() {
                closed = true;
                break;
            }
            if p.terms.len() > term_budget {
                return false;
            }
        }
        if !closed {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct SearchHit {
    pub degree: Vec<Int>,
    pub derivation: Derivation,
    pub certificate: LndCertificate,
}

/// Enumerate all homogeneous degrees realizable with image total degree up
/// to the bound (ordered by the least realizing image degree, then by the
/// degree vector), solve each cell, and keep the locally nilpotent
/// solutions.  Deterministic; cells are independent pure solves.
pub fn search_lnd(ring: &RingRef, image_degree_bound: u32, cap: u32) -> Result<Vec<SearchHit>> {
    let grading = fine_grading(ring);
    let space = ring.space().clone();
    let nvars = space.len();
    let candidates = monomials_up_to(nvars, image_degree_bound);
    // candidate degree vectors: deg(m) − deg(x_v), keyed by the least
    // total degree of a realizing monomial
    let mut cells: BTreeMap<Vec<Int>, u32> = BTreeMap::new();
    for v in 0..nvars {
        let wv = grading.degree_of_mono(&Mono::var(nvars, v, 1));
        for m in &candidates {
            let d: Vec<Int> = grading
                .degree_of_mono(m)
                .iter()
                .zip(&wv)
                .map(|(a, b)| a - b)
                .collect();
            let e = cells.entry(d).or_insert(u32::MAX);
            *e = (*e).min(m.degree() as u32);
        }
    }
    let mut order: Vec<(u32, Vec<Int>)> =
        cells.into_iter().map(|(d, t)| (t, d)).collect();
    order.sort();
    let mut hits = Vec::new();
    for (_, degree) in order {
        let cell = SearchSpace {
            ring: ring.clone(),
            grading: grading.clone(),
            degree,
            image_degree_bound,
        };
        let solutions = match solve_homogeneous_derivations(&cell) {
            Ok(sols) => sols,
            Err(Error::Precondition(_)) => continue,
            Err(e) => return Err(e),
        };
        let mut cell_hit = false;
        for d in &solutions {
            if d.is_zero() {
                continue;
            }
            if let LndVerdict::Lnd(certificate) = verify_lnd(d, cap) {
                hits.push(SearchHit {
                    degree: cell.degree.clone(),
                    derivation: d.clone(),
                    certificate,
                });
                cell_hit = true;
            }
        }
        // A multi-dimensional solution space can mix locally nilpotent and
        // semisimple derivations so that no single basis vector is
        // nilpotent; probe small integer combinations of the basis (the
        // span is closed under admissibility, and scaling preserves local
        // nilpotency).  Enumerate by support — every pair, then every
        // triple, of basis vectors with primitive coefficients up to ±2
        // and a positive leading coefficient — with a cheap budgeted
        // nilpotency pre-probe filtering before the full verifier.
        let dim = solutions.len();
        if !cell_hit && (2..=6).contains(&dim) {
            'supports: for support_size in 2..=3usize.min(dim) {
                let mut supports: Vec<Vec<usize>> = vec![vec![]];
                for _ in 0..support_size {
                    supports = supports
                        .into_iter()
                        .flat_map(|t| {
                            let start = t.last().map_or(0, |&l| l + 1);
                            (start..dim).map(move |i| {
                                let mut t = t.clone();
                                t.push(i);
                                t
                            })
                        })
                        .collect();
                }
                for support in supports {
                    // pairs get a wide coefficient range (ratios come from
                    // products of exponents); triples stay small
                    let range: Vec<i64> = if support_size == 2 {
                        (-12..=12).filter(|&c| c != 0).collect()
                    } else {
                        vec![-2, -1, 1, 2]
                    };
                    let mut coeff_sets: Vec<Vec<i64>> = vec![vec![]];
                    for _ in 0..support_size {
                        coeff_sets = coeff_sets
                            .into_iter()
                            .flat_map(|t| {
                                range.iter().map(move |&c| {
                                    let mut t = t.clone();
                                    t.push(c);
                                    t
                                })
                            })
                            .collect();
                    }
                    for coeffs in coeff_sets {
                        if coeffs[0] < 0 {
                            continue;
                        }
                        // skip scalar multiples of already-tried combinations
                        let g = coeffs.iter().fold(0i64, |g, &c| num::integer::gcd(g, c));
                        if g > 1 {
                            continue;
                        }
                        let mut combined: Option<Derivation> = None;
                        for (&i, &c) in support.iter().zip(&coeffs) {
                            let scaled = solutions[i].scale(&Rat::from_integer(c.into()));
                            combined = Some(match combined {
                                None => scaled,
                                Some(acc) => acc.add(&scaled),
                            });
                        }
                        let d = combined.unwrap();
                        if d.is_zero() {
                            continue;
                        }
                        if !probe_nilpotent(&d, cap.min(6), 12) {
                            continue;
                        }
                        if let LndVerdict::Lnd(certificate) = verify_lnd(&d, cap) {
                            hits.push(SearchHit {
                                degree: cell.degree.clone(),
                                derivation: d,
                                certificate,
                            });
                            break 'supports;
                        }
                    }
                }
            }
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::TrinomialHypersurface;
    use std::sync::Arc;

    fn ring_of(groups: [Vec<u32>; 3], slack: usize) -> RingRef {
        Arc::new(
            TrinomialHypersurface::unit_coeffs(groups, slack)
                .unwrap()
                .ring()
                .unwrap(),
        )
    }

    #[test]
    fn finds_witness_on_simple_nonrigid() {
        // x + y^2 + z^2: case-1 witness has image degrees ≤ 1
        let ring = ring_of([vec![1], vec![2], vec![2]], 0);
        let hits = search_lnd(&ring, 2, 16).unwrap();
        assert!(!hits.is_empty());
        for h in &hits {
            assert!(!h.derivation.is_zero());
        }
    }

    #[test]
    fn rigid_instance_gives_empty_search() {
        // x^2 + y^3 + z^7 is rigid; bound 6 keeps the search fast
        let ring = ring_of([vec![2], vec![3], vec![7]], 0);
        let hits = search_lnd(&ring, 6, 16).unwrap();
        assert!(hits.is_empty(), "rigid ring must yield no LND up to the bound");
    }

    #[test]
    fn degree_zero_solutions_are_not_nilpotent() {
        // degree 0 contains the semisimple grading derivations; none are
        // locally nilpotent
        let ring = ring_of([vec![2], vec![3], vec![7]], 0);
        let grading = fine_grading(&ring);
        let cell = SearchSpace {
            ring: ring.clone(),
            grading: grading.clone(),
            degree: vec![Int::from(0); grading.rank],
            image_degree_bound: 3,
        };
        let sols = solve_homogeneous_derivations(&cell).unwrap();
        assert!(!sols.is_empty(), "grading derivations exist in degree 0");
        for d in sols {
            if d.is_zero() {
                continue;
            }
            assert!(
                !matches!(verify_lnd(&d, 16), LndVerdict::Lnd(_)),
                "no nonzero degree-0 solution may be locally nilpotent"
            );
        }
    }

    #[test]
    fn slack_ring_yields_translation() {
        let ring = ring_of([vec![2], vec![3], vec![7]], 1);
        let hits = search_lnd(&ring, 2, 16).unwrap();
        let s = ring.space().clone();
        assert!(hits.iter().any(|h| {
            let img = &h.derivation.images[s.slack_var(1)];
            !img.is_zero()
                && (0..s.len())
                    .filter(|&v| v != s.slack_var(1))
                    .all(|v| h.derivation.images[v].is_zero())
        }));
    }

    #[test]
    fn empty_search_space_is_an_error() {
        let ring = ring_of([vec![2], vec![3], vec![7]], 0);
        let grading = fine_grading(&ring);
        // an unreachable degree vector
        let cell = SearchSpace {
            ring,
            grading: grading.clone(),
            degree: vec![Int::from(1000); grading.rank],
            image_degree_bound: 2,
        };
        assert!(solve_homogeneous_derivations(&cell).is_err());
    }

    #[test]
    fn solution_space_contains_catalog_witness() {
        // x + y^2 + z^2: the case-1 witness δ(x) = 2z, δ(z) = −1 is
        // homogeneous; its degree cell must contain it
        let h = TrinomialHypersurface::unit_coeffs([vec![1], vec![2], vec![2]], 0).unwrap();
        let ring = Arc::new(h.ring().unwrap());
        let w = crate::lnd::witness_case1(&h, 0, 1, 16).unwrap();
        let grading = fine_grading(&ring);
        let nvars = ring.space().len();
        // degree of the witness: deg(image) − deg(var) at any nonzero image
        let v = (0..nvars)
            .find(|&v| !w.derivation.images[v].is_zero())
            .unwrap();
        let img_deg = grading.degree_of(&w.derivation.images[v]).unwrap();
        let var_deg = grading.degree_of_mono(&Mono::var(nvars, v, 1));
        let degree: Vec<Int> = img_deg
            .iter()
            .zip(&var_deg)
            .map(|(a, b)| a - b)
            .collect();
        let cell = SearchSpace {
            ring: ring.clone(),
            grading,
            degree,
            image_degree_bound: 2,
        };
        let sols = solve_homogeneous_derivations(&cell).unwrap();
        // the witness must be a rational combination of the basis; with a
        // one-dimensional check: some solution matches it up to scale
        let matches_witness = sols.iter().any(|d| {
            (0..nvars).all(|u| {
                // cross-scale comparison via the first nonzero pair
                let a = &d.images[u];
                let b = &w.derivation.images[u];
                a.is_zero() == b.is_zero()
            })
        });
        assert!(matches_witness);
    }
}
