//! Finitely presented rings `Q[x_1..x_n] / (g_1..g_s)` with normal forms
//! computed against a Groebner basis of the relation ideal.
//!
//! The basis is completed once at construction time (Buchberger's
//! algorithm under the graded lexicographic order), and every basis
//! element carries an explicit representation as a polynomial combination
//! of the original relations.  Division with remainder therefore yields,
//! besides the normal form, exact cofactors `h_i` with
//! `f = sum h_i * g_i + nf(f)` over the *original* generators.

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly};
use crate::rational::Rat;
use crate::space::SpaceRef;
use num::{One, Zero};

/// A Groebner basis element together with its expression in terms of the
/// presentation's original relations.
#[derive(Debug, Clone)]
struct BasisElement {
    poly: Poly,
    /// `poly = sum representation[i] * relations[i]`.
    representation: Vec<Poly>,
}

/// The outcome of an ideal membership test.
#[derive(Debug, Clone)]
pub enum Membership {
    /// `f = sum cofactors[i] * g_i` exactly.
    Yes { cofactors: Vec<Poly> },
    /// The normal form is a nonzero certificate of non-membership.
    No { normal_form: Poly },
}

#[derive(Debug, Clone)]
pub struct PresentedRing {
    space: SpaceRef,
    relations: Vec<Poly>,
    basis: Vec<BasisElement>,
}

impl PresentedRing {
    /// Present `Q[space] / (relations)`.  Zero relations are dropped; a
    /// constant nonzero relation presents the zero ring and is rejected.
    pub fn new(space: SpaceRef, relations: Vec<Poly>) -> Result<Self> {
        for r in &relations {
            if r.space != space {
                return Err(Error::SpaceMismatch);
            }
            if !r.is_zero() && r.is_constant() {
                return Err(Error::InvalidDescriptor(
                    "relation ideal contains a nonzero constant".into(),
                ));
            }
        }
        let kept: Vec<Poly> = relations.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut ring = PresentedRing {
            space,
            basis: Vec::new(),
            relations: kept,
        };
        ring.complete_basis()?;
        Ok(ring)
    }

    /// The free polynomial ring, with no relations.
    pub fn free(space: SpaceRef) -> Self {
        PresentedRing {
            space,
            relations: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// Division with remainder by the completed basis.  Returns the normal
    /// form and cofactors over the original relations.
    fn divide(&self, f: &Poly) -> (Poly, Vec<Poly>) {
        let mut cof = vec![Poly::zero(&self.space); self.relations.len()];
        let mut rem = Poly::zero(&self.space);
        let mut work = f.clone();
        'outer: while let Some((lm, lc)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
            for b in &self.basis {
                let (bm, bc) = b.poly.leading().expect("basis elements are nonzero");
                if bm.divides(&lm) {
                    let q = lm.div(bm);
                    let coeff = &lc / bc;
                    work = &work - &b.poly.mul_mono(&q, &coeff);
                    for (acc, rep) in cof.iter_mut().zip(&b.representation) {
                        *acc = &*acc + &rep.mul_mono(&q, &coeff);
                    }
                    continue 'outer;
                }
            }
            // Leading term is irreducible: move it to the remainder.
            rem = &rem + &Poly::monomial(&self.space, lm.clone(), lc.clone());
            work = &work - &Poly::monomial(&self.space, lm, lc);
        }
        (rem, cof)
    }

    /// Canonical representative of `f` modulo the relation ideal.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.divide(f).0
    }

    /// Decide membership of `f` in the relation ideal.  Membership comes
    /// with cofactors that recompose `f` exactly; non-membership with the
    /// nonzero normal form.
    pub fn ideal_member(&self, f: &Poly) -> Membership {
        let (nf, cofactors) = self.divide(f);
        if nf.is_zero() {
            debug_assert!({
                let mut check = Poly::zero(&self.space);
                for (h, g) in cofactors.iter().zip(&self.relations) {
                    check = &check + &(h * g);
                }
                check == *f
            });
            Membership::Yes { cofactors }
        } else {
            Membership::No { normal_form: nf }
        }
    }

    /// Two ideals are equal iff each generator of one reduces to zero
    /// modulo the other.
    pub fn same_ideal(&self, other: &PresentedRing) -> bool {
        self.relations
            .iter()
            .all(|g| other.normal_form(g).is_zero())
            && other
                .relations
                .iter()
                .all(|g| self.normal_form(g).is_zero())
    }

    fn complete_basis(&mut self) -> Result<()> {
        let n = self.relations.len();
        for (i, g) in self.relations.iter().enumerate() {
            let mut rep = vec![Poly::zero(&self.space); n];
            rep[i] = Poly::one(&self.space);
            self.basis.push(BasisElement {
                poly: g.clone(),
                representation: rep,
            });
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..self.basis.len() {
            for j in 0..i {
                pairs.push((j, i));
            }
        }
        while let Some((i, j)) = pairs.pop() {
            let (fi, fj) = (&self.basis[i], &self.basis[j]);
            let (mi, ci) = fi.poly.leading().expect("nonzero");
            let (mj, cj) = fj.poly.leading().expect("nonzero");
            // Buchberger's first criterion: coprime leading monomials.
            if mi.lcm(mj) == mi.mul(mj) {
                continue;
            }
            let l = mi.lcm(mj);
            let qi = l.div(mi);
            let qj = l.div(mj);
            let inv_ci = Rat::one() / ci;
            let inv_cj = Rat::one() / cj;
            let spoly = &fi.poly.mul_mono(&qi, &inv_ci) - &fj.poly.mul_mono(&qj, &inv_cj);
            let mut srep: Vec<Poly> = Vec::with_capacity(n);
            for k in 0..n {
                srep.push(
                    &fi.representation[k].mul_mono(&qi, &inv_ci)
                        - &fj.representation[k].mul_mono(&qj, &inv_cj),
                );
            }
            let (nf, cof) = self.divide(&spoly);
            if nf.is_zero() {
                continue;
            }
            if nf.is_constant() {
                return Err(Error::InvalidDescriptor(
                    "relation ideal contains a nonzero constant".into(),
                ));
            }
            // nf = spoly - sum cof_k * g_k, so its representation over the
            // original relations is srep - cof componentwise.
            let mut rep = srep;
            for (k, h) in cof.iter().enumerate() {
                rep[k] = &rep[k] - h;
            }
            let lc = nf.leading().map(|(_, c)| c.clone()).expect("nonzero");
            let inv = Rat::one() / &lc;
            let new_idx = self.basis.len();
            self.basis.push(BasisElement {
                poly: nf.scale(&inv),
                representation: rep.iter().map(|p| p.scale(&inv)).collect(),
            });
            for k in 0..new_idx {
                pairs.push((k, new_idx));
            }
        }
        self.interreduce();
        Ok(())
    }

    /// Reduce to the unique reduced Groebner basis (monic, no leading
    /// monomial divides another, tails fully reduced), keeping
    /// representations in sync.
    fn interreduce(&mut self) {
        // Drop elements whose leading monomial is divisible by another's.
        let mut keep: Vec<bool> = vec![true; self.basis.len()];
        for a in 0..self.basis.len() {
            if !keep[a] {
                continue;
            }
            for b in 0..self.basis.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let (ma, _) = self.basis[a].poly.leading().expect("nonzero");
                let (mb, _) = self.basis[b].poly.leading().expect("nonzero");
                if mb.divides(ma) && (ma != mb || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let survivors: Vec<BasisElement> = self
            .basis
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(b, _)| b.clone())
            .collect();
        self.basis = survivors;
        // Fully reduce each tail against the others.
        for idx in 0..self.basis.len() {
            let me = self.basis[idx].clone();
            let others: Vec<&BasisElement> = self
                .basis
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != idx)
                .map(|(_, b)| b)
                .collect();
            let mut rem = Poly::zero(&self.space);
            let mut rep = me.representation.clone();
            let mut work = me.poly.clone();
            'outer: while let Some((lm, lc)) = work.leading().map(|(m, c)| (m.clone(), c.clone()))
            {
                for b in &others {
                    let (bm, bc) = b.poly.leading().expect("nonzero");
                    if bm.divides(&lm) {
                        let q = lm.div(bm);
                        let coeff = &lc / bc;
                        work = &work - &b.poly.mul_mono(&q, &coeff);
                        for (acc, r) in rep.iter_mut().zip(&b.representation) {
                            *acc = &*acc - &r.mul_mono(&q, &coeff);
                        }
                        continue 'outer;
                    }
                }
                rem = &rem + &Poly::monomial(&self.space, lm.clone(), lc.clone());
                work = &work - &Poly::monomial(&self.space, lm, lc);
            }
            let lc = rem.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::one);
            let inv = Rat::one() / &lc;
            self.basis[idx] = BasisElement {
                poly: rem.scale(&inv),
                representation: rep.iter().map(|p| p.scale(&inv)).collect(),
            };
        }
        // Canonical order: ascending leading monomial.
        self.basis
            .sort_by(|a, b| a.poly.leading().unwrap().0.cmp(b.poly.leading().unwrap().0));
    }

    /// The monic reduced Groebner basis of the relation ideal.
    pub fn groebner_basis(&self) -> Vec<Poly> {
        self.basis.iter().map(|b| b.poly.clone()).collect()
    }

    /// Bounded-degree membership certificate, independent of the Groebner
    /// machinery: search cofactors `h_i` with `f = sum h_i g_i` and
    /// `deg h_i <= deg f - min_i deg g_i + degree_slack` by an exact
    /// linear solve over the cofactor coefficient space.
    pub fn ideal_member_bounded(&self, f: &Poly, degree_slack: u32) -> BoundedMembership {
        use crate::lattice::solve_rational;
        use crate::poly::monomials_up_to;
        if self.relations.is_empty() {
            return if f.is_zero() {
                BoundedMembership::Yes { cofactors: vec![] }
            } else {
                BoundedMembership::NoWithinBound
            };
        }
        let min_g = self
            .relations
            .iter()
            .map(|g| g.total_degree())
            .min()
            .unwrap_or(0);
        let bound = f.total_degree().saturating_sub(min_g) as u32 + degree_slack;
        let monos = monomials_up_to(self.space.len(), bound);
        // Unknowns: one coefficient per (relation, cofactor monomial).
        // Each unknown contributes the polynomial mono * g_i; equate the
        // coefficients of the sum with those of f per ambient monomial.
        let mut columns: Vec<Poly> = Vec::new();
        let mut labels: Vec<(usize, Mono)> = Vec::new();
        for (i, g) in self.relations.iter().enumerate() {
            for m in &monos {
                columns.push(g.mul_mono(m, &Rat::one()));
                labels.push((i, m.clone()));
            }
        }
        let mut row_monos: std::collections::BTreeSet<Mono> = f.terms.keys().cloned().collect();
        for c in &columns {
            row_monos.extend(c.terms.keys().cloned());
        }
        let row_monos: Vec<Mono> = row_monos.into_iter().collect();
        let matrix: Vec<Vec<Rat>> = row_monos
            .iter()
            .map(|m| {
                columns
                    .iter()
                    .map(|c| c.terms.get(m).cloned().unwrap_or_else(Rat::zero))
                    .collect()
            })
            .collect();
        let rhs: Vec<Rat> = row_monos
            .iter()
            .map(|m| f.terms.get(m).cloned().unwrap_or_else(Rat::zero))
            .collect();
        match solve_rational(&matrix, &rhs) {
            None => BoundedMembership::NoWithinBound,
            Some(x) => {
                let mut cofactors = vec![Poly::zero(&self.space); self.relations.len()];
                for ((i, m), coeff) in labels.into_iter().zip(x) {
                    if !coeff.is_zero() {
                        cofactors[i] =
                            &cofactors[i] + &Poly::monomial(&self.space, m, coeff);
                    }
                }
                debug_assert!({
                    let mut check = Poly::zero(&self.space);
                    for (h, g) in cofactors.iter().zip(&self.relations) {
                        check = &check + &(h * g);
                    }
                    check == *f
                });
                BoundedMembership::Yes { cofactors }
            }
        }
    }
}

/// Result of the bounded linear-solve membership search.
#[derive(Debug, Clone)]
pub enum BoundedMembership {
    Yes { cofactors: Vec<Poly> },
    NoWithinBound,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::space::VariableSpace;

    fn hypersurface_ring(text: &str, names: &[&str]) -> (PresentedRing, SpaceRef) {
        let space = VariableSpace::plain(names.iter().map(|s| s.to_string()).collect());
        let g = parse_poly(&space, text).unwrap();
        (PresentedRing::new(space.clone(), vec![g]).unwrap(), space)
    }

    #[test]
    fn principal_ideal_normal_forms() {
        let (ring, s) = hypersurface_ring("x^2 + y^2 + z^3", &["x", "y", "z"]);
        // under the graded order the leading monomial is z^3
        let nf = ring.normal_form(&parse_poly(&s, "z^3").unwrap());
        assert_eq!(nf, parse_poly(&s, "-x^2 - y^2").unwrap());
        assert_eq!(
            ring.normal_form(&parse_poly(&s, "x^2").unwrap()),
            parse_poly(&s, "x^2").unwrap()
        );
        // the relation itself reduces to zero with cofactor 1
        match ring.ideal_member(&parse_poly(&s, "x^2 + y^2 + z^3").unwrap()) {
            Membership::Yes { cofactors } => {
                assert_eq!(cofactors[0], Poly::one(&s));
            }
            Membership::No { .. } => panic!("relation must lie in its own ideal"),
        }
    }

    #[test]
    fn cofactors_recompose_exactly() {
        let space = VariableSpace::plain(vec!["x".into(), "y".into(), "z".into()]);
        let g1 = parse_poly(&space, "x^2 - y").unwrap();
        let g2 = parse_poly(&space, "x*y - z").unwrap();
        let ring = PresentedRing::new(space.clone(), vec![g1.clone(), g2.clone()]).unwrap();
        let f = parse_poly(&space, "x^3*y - x*y*z + x*z - y^2*z").unwrap();
        // f = (x*y + z)*(x^2 - y) + (y^2 - ... ) -- just trust the division
        let f_in = &f * &parse_poly(&space, "1").unwrap();
        match ring.ideal_member(&(&(&f_in * &g1) + &(&parse_poly(&space, "y - 3").unwrap() * &g2)))
        {
            Membership::Yes { cofactors } => {
                let mut back = Poly::zero(&space);
                for (h, g) in cofactors.iter().zip(ring.relations()) {
                    back = &back + &(h * g);
                }
                assert_eq!(back, &(&f_in * &g1) + &(&parse_poly(&space, "y - 3").unwrap() * &g2));
            }
            Membership::No { .. } => panic!("constructed combination must be a member"),
        }
    }

    #[test]
    fn non_member_has_nonzero_normal_form() {
        let (ring, s) = hypersurface_ring("x^2 + y^2 + z^2", &["x", "y", "z"]);
        match ring.ideal_member(&parse_poly(&s, "x + y").unwrap()) {
            Membership::No { normal_form } => {
                assert_eq!(normal_form, parse_poly(&s, "x + y").unwrap());
            }
            Membership::Yes { .. } => panic!("x + y is not in (x^2+y^2+z^2)"),
        }
    }

    #[test]
    fn buchberger_produces_new_elements() {
        // Classic example: (x^2 - y, x*y - z) needs completion; y^2 - x*z
        // (or an equivalent) appears in the reduced basis.
        let space = VariableSpace::plain(vec!["x".into(), "y".into(), "z".into()]);
        let ring = PresentedRing::new(
            space.clone(),
            vec![
                parse_poly(&space, "x^2 - y").unwrap(),
                parse_poly(&space, "x*y - z").unwrap(),
            ],
        )
        .unwrap();
        let member = parse_poly(&space, "y^3 - z^2").unwrap();
        assert!(matches!(ring.ideal_member(&member), Membership::Yes { .. }));
        match ring.ideal_member(&member) {
            Membership::Yes { cofactors } => {
                let mut back = Poly::zero(&space);
                for (h, g) in cofactors.iter().zip(ring.relations()) {
                    back = &back + &(h * g);
                }
                assert_eq!(back, member);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn normal_form_is_linear() {
        let (ring, s) = hypersurface_ring("x^3 + y^2 + z^5", &["x", "y", "z"]);
        let a = parse_poly(&s, "x^4 + y*z").unwrap();
        let b = parse_poly(&s, "x^3*y - z^6").unwrap();
        let lhs = ring.normal_form(&(&a.scale(&crate::rational::ratio(2, 3)) + &b));
        let rhs = &ring.normal_form(&a).scale(&crate::rational::ratio(2, 3)) + &ring.normal_form(&b);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bounded_solver_agrees_with_division() {
        let space = VariableSpace::plain(vec!["x".into(), "y".into(), "z".into()]);
        let g1 = parse_poly(&space, "x^2 - y").unwrap();
        let g2 = parse_poly(&space, "x*y - z").unwrap();
        let ring = PresentedRing::new(space.clone(), vec![g1.clone(), g2.clone()]).unwrap();
        let member = &(&parse_poly(&space, "x + 1").unwrap() * &g1)
            + &(&parse_poly(&space, "y").unwrap() * &g2);
        match ring.ideal_member_bounded(&member, 2) {
            BoundedMembership::Yes { cofactors } => {
                let mut back = Poly::zero(&space);
                for (h, g) in cofactors.iter().zip(ring.relations()) {
                    back = &back + &(h * g);
                }
                assert_eq!(back, member);
            }
            BoundedMembership::NoWithinBound => panic!("member not found within bound"),
        }
        assert!(matches!(ring.ideal_member(&member), Membership::Yes { .. }));
        // 1 is not a member and the bounded search must agree
        let one = Poly::one(&space);
        assert!(matches!(
            ring.ideal_member_bounded(&one, 0),
            BoundedMembership::NoWithinBound
        ));
        assert!(matches!(ring.ideal_member(&one), Membership::No { .. }));
    }

    #[test]
    fn inconsistent_presentation_rejected() {
        let space = VariableSpace::plain(vec!["x".into()]);
        let err = PresentedRing::new(
            space.clone(),
            vec![
                parse_poly(&space, "x").unwrap(),
                parse_poly(&space, "x - 1").unwrap(),
            ],
        );
        assert!(err.is_err());
    }
}
