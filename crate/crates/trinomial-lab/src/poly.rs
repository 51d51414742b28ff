//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are stored under the graded lexicographic order on exponent
//! vectors (total degree first, then lexicographically with the earliest
//! variable most significant).  No zero coefficients are ever stored, so
//! two polynomials over the same space are equal iff their term maps are.

use crate::error::{Error, Result};
use crate::rational::{format_rat, parse_rat, Rat};
use crate::space::SpaceRef;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn unit(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = exp;
        Mono(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise quotient; caller must ensure divisibility.
    pub fn div(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub space: SpaceRef,
    pub terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(space: &SpaceRef) -> Self {
        Poly {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &SpaceRef, c: Rat) -> Self {
        let mut p = Poly::zero(space);
        if !c.is_zero() {
            p.terms.insert(Mono::unit(space.len()), c);
        }
        p
    }

    pub fn one(space: &SpaceRef) -> Self {
        Poly::constant(space, Rat::one())
    }

    pub fn var(space: &SpaceRef, idx: usize) -> Self {
        Poly::monomial(space, Mono::var(space.len(), idx, 1), Rat::one())
    }

    pub fn monomial(space: &SpaceRef, m: Mono, c: Rat) -> Self {
        let mut p = Poly::zero(space);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_unit)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    /// Leading term under the storage order.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.space);
        }
        Poly {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.space);
        }
        Poly {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.space);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn partial_derivative(&self, v: usize) -> Poly {
        assert!(v < self.space.len(), "invalid variable index {v}");
        let mut out = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[v] = e - 1;
            out.insert_term(m2, c * Rat::from_integer(e.into()));
        }
        out
    }

    /// Substitute an image for every variable; all images must live in one
    /// common target space.
    pub fn substitute_full(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.space.len());
        let target = &images
            .first()
            .map(|p| p.space.clone())
            .unwrap_or_else(|| self.space.clone());
        assert!(
            images.iter().all(|p| p.space == *target),
            "substitution images over mixed spaces"
        );
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &images[v].pow(e);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Substitute images for a subset of the variables, identity elsewhere.
    pub fn substitute(&self, assignment: &BTreeMap<usize, Poly>) -> Poly {
        let images: Vec<Poly> = (0..self.space.len())
            .map(|v| {
                assignment
                    .get(&v)
                    .cloned()
                    .unwrap_or_else(|| Poly::var(&self.space, v))
            })
            .collect();
        self.substitute_full(&images)
    }

    /// Full evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.space.len());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-express over another space, sending variable `v` to
    /// `var_map[v]` of the target.  `var_map` must be injective.
    pub fn map_vars(&self, target: &SpaceRef, var_map: &[usize]) -> Poly {
        assert_eq!(var_map.len(), self.space.len());
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (v, &exp) in m.0.iter().enumerate() {
                if exp > 0 {
                    e[var_map[v]] += exp;
                }
            }
            out.insert_term(Mono(e), c.clone());
        }
        out
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let n = self.space.len();
        let mut seen = vec![false; n];
        for m in self.terms.keys() {
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    seen[v] = true;
                }
            }
        }
        (0..n).filter(|&v| seen[v]).collect()
    }

    /// Exact `k`-th root up to a rational constant: returns `(c, g)` with
    /// `self = c * g^k` and `g` monic, when such a factorization exists.
    pub fn kth_root_up_to_constant(&self, k: u32) -> Option<(Rat, Poly)> {
        assert!(k >= 1);
        if self.is_zero() {
            return Some((Rat::one(), self.clone()));
        }
        let (lm, lc) = self.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        if k == 1 {
            return Some((lc.clone(), self.scale(&(Rat::one() / &lc))));
        }
        if lm.0.iter().any(|&e| e % k != 0) {
            return None;
        }
        let monic = self.scale(&(Rat::one() / &lc));
        let root_lm = Mono(lm.0.iter().map(|&e| e / k).collect());
        let mut g = Poly::monomial(&self.space, root_lm.clone(), Rat::one());
        // Subtract-and-peel: the next term of the root is LT(f - g^k)
        // divided by k * LM(g)^(k-1).
        let denom_m = Mono(root_lm.0.iter().map(|&e| e * (k - 1)).collect());
        let kq = Rat::from_integer(k.into());
        let mut last = root_lm;
        for _ in 0..=monic.num_terms() * (k as usize) + 4 {
            let r = &monic - &g.pow(k);
            let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) else {
                return Some((lc, g));
            };
            if !denom_m.divides(&rm) {
                return None;
            }
            let nm = rm.div(&denom_m);
            if nm >= last {
                return None;
            }
            last = nm.clone();
            g.insert_term(nm, rc / &kq);
        }
        None
    }
}

macro_rules! binop {
    ($trait:ident, $fn:ident, $apply:expr) => {
        impl $trait for &Poly {
            type Output = Poly;
            fn $fn(self, other: &Poly) -> Poly {
                assert_eq!(self.space, other.space, "mismatched variable spaces");
                #[allow(clippy::redundant_closure_call)]
                ($apply)(self, other)
            }
        }
    };
}

binop!(Add, add, |a: &Poly, b: &Poly| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.insert_term(m.clone(), c.clone());
    }
    out
});

binop!(Sub, sub, |a: &Poly, b: &Poly| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.insert_term(m.clone(), -c.clone());
    }
    out
});

binop!(Mul, mul, |a: &Poly, b: &Poly| {
    let mut out = Poly::zero(&a.space);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            out.insert_term(ma.mul(mb), ca * cb);
        }
    }
    out
});

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_unit() {
                factors.push(format_rat(&abs));
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.space.name(v).to_string()),
                    _ => factors.push(format!("{}^{}", self.space.name(v), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// All monomials of total degree at most `bound` in ascending storage
/// order.
pub fn monomials_up_to(nvars: usize, bound: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(out: &mut Vec<Mono>, current: &mut Vec<u32>, pos: usize, left: u32) {
        if pos == current.len() {
            out.push(Mono(current.clone()));
            return;
        }
        for e in 0..=left {
            current[pos] = e;
            rec(out, current, pos + 1, left - e);
        }
        current[pos] = 0;
    }
    rec(&mut out, &mut current, 0, bound);
    out.sort();
    out
}

/// Parse the canonical text form produced by [`Poly`]'s `Display`.
pub fn parse_poly(space: &SpaceRef, input: &str) -> Result<Poly> {
    let mut out = Poly::zero(space);
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if s == "0" {
        return Ok(out);
    }
    // Split into signed terms at top level (no parentheses in the format).
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut sign = false;
    let mut started = false;
    for ch in s.chars() {
        match ch {
            '+' | '-' if started && cur.trim().ends_with(|c: char| c != '*' && c != '^' && c != '/') && !cur.trim().is_empty() => {
                terms.push((sign, std::mem::take(&mut cur)));
                sign = ch == '-';
            }
            '-' if !started => {
                sign = true;
                started = true;
            }
            '+' if !started => {
                started = true;
            }
            _ => {
                if !ch.is_whitespace() {
                    started = true;
                }
                cur.push(ch);
            }
        }
    }
    terms.push((sign, cur));
    for (neg, t) in terms {
        let t = t.trim();
        if t.is_empty() {
            return Err(Error::Parse(format!("empty term in `{input}`")));
        }
        let mut coeff = Rat::one();
        let mut mono = Mono::unit(space.len());
        for factor in t.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (
                    b.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            if base
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_digit() || c == '-')
            {
                let c = parse_rat(base)?;
                for _ in 0..exp {
                    coeff *= &c;
                }
            } else {
                let v = space.index_of(base)?;
                mono.0[v] += exp;
            }
        }
        if neg {
            coeff = -coeff;
        }
        out.insert_term(mono, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use crate::space::VariableSpace;

    fn xyz() -> SpaceRef {
        VariableSpace::plain(vec!["x".into(), "y".into(), "z".into()])
    }

    #[test]
    fn difference_of_squares() {
        let s = xyz();
        let x = Poly::var(&s, 0);
        let y = Poly::var(&s, 1);
        let prod = &(&x + &y) * &(&x - &y);
        assert_eq!(prod, &(&x * &x) - &(&y * &y));
    }

    #[test]
    fn mul_identity_and_monomials() {
        let s = xyz();
        let p = parse_poly(&s, "2*x^2*y - 3/4*z + 1").unwrap();
        assert_eq!(&p * &Poly::one(&s), p);
        let a = parse_poly(&s, "x^2").unwrap();
        let b = parse_poly(&s, "y*z").unwrap();
        assert_eq!(&a * &b, parse_poly(&s, "x^2*y*z").unwrap());
    }

    #[test]
    fn power_rule_and_absent_variable() {
        let s = xyz();
        let p = parse_poly(&s, "z^5").unwrap();
        assert_eq!(p.partial_derivative(2), parse_poly(&s, "5*z^4").unwrap());
        let q = parse_poly(&s, "x^2 + y^3").unwrap();
        assert!(q.partial_derivative(2).is_zero());
        let r = parse_poly(&s, "x*y^3").unwrap();
        assert_eq!(r.partial_derivative(0), parse_poly(&s, "y^3").unwrap());
    }

    #[test]
    fn pythagorean_evaluation() {
        let s = xyz();
        let p = parse_poly(&s, "x^2 + y^2").unwrap();
        assert_eq!(
            p.evaluate(&[ratio(3, 5), ratio(4, 5), rat(0)]),
            rat(1)
        );
    }

    #[test]
    fn shift_substitution_expands() {
        // x -> x + 2*z^2 inside x^2 + y
        let s = xyz();
        let p = parse_poly(&s, "x^2 + y").unwrap();
        let mut assignment = BTreeMap::new();
        assignment.insert(0usize, parse_poly(&s, "x + 2*z^2").unwrap());
        let q = p.substitute(&assignment);
        assert_eq!(q, parse_poly(&s, "x^2 + 4*x*z^2 + 4*z^4 + y").unwrap());
    }

    #[test]
    fn display_parse_round_trip() {
        let s = xyz();
        for text in ["x^2 - y^3 + 1/2", "-x*y*z", "0", "3", "x - 1"] {
            let p = parse_poly(&s, text).unwrap();
            assert_eq!(parse_poly(&s, &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn grlex_leading_term() {
        let s = xyz();
        let p = parse_poly(&s, "x*y + z^3 + x^2").unwrap();
        // degree 3 beats degree 2; among degree-3 terms none here competes
        assert_eq!(p.leading().unwrap().0, &Mono(vec![0, 0, 3]));
        let q = parse_poly(&s, "x*y + z^2").unwrap();
        // equal degree: earlier variable wins
        assert_eq!(q.leading().unwrap().0, &Mono(vec![1, 1, 0]));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = Poly> {
            // sparse polynomials in 3 variables, small exponents/coefficients
            proptest::collection::vec(
                ((0u32..3, 0u32..3, 0u32..3), -5i64..6),
                0..6,
            )
            .prop_map(|terms| {
                let s = xyz();
                let mut p = Poly::zero(&s);
                for ((a, b, c), coeff) in terms {
                    p.insert_term(Mono(vec![a, b, c]), rat(coeff));
                }
                p
            })
        }

        proptest! {
            #[test]
            fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
                prop_assert_eq!(&p * &q, &q * &p);
                prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
                prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
                prop_assert_eq!(&p + &q, &q + &p);
                prop_assert_eq!(&(&p - &q) + &q, p);
            }

            #[test]
            fn leibniz_rule(p in arb_poly(), q in arb_poly(), v in 0usize..3) {
                let lhs = (&p * &q).partial_derivative(v);
                let rhs = &(&p.partial_derivative(v) * &q) + &(&p * &q.partial_derivative(v));
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn point_substitution_composes(p in arb_poly(), a in -4i64..5, b in -4i64..5) {
                // substituting a point then evaluating equals direct evaluation
                let s = p.space.clone();
                let mut sigma = BTreeMap::new();
                sigma.insert(0usize, Poly::constant(&s, rat(a)));
                sigma.insert(1usize, Poly::constant(&s, rat(b)));
                let partial = p.substitute(&sigma);
                let point = [rat(a), rat(b), rat(2)];
                prop_assert_eq!(partial.evaluate(&point), p.evaluate(&point));
            }

            #[test]
            fn display_parse_round_trips(p in arb_poly()) {
                let text = p.to_string();
                prop_assert_eq!(parse_poly(&p.space, &text).unwrap(), p);
            }
        }
    }

    #[test]
    fn kth_root_detection() {
        let s = xyz();
        let g = parse_poly(&s, "x^2 + 3*y").unwrap();
        let f = g.pow(3).scale(&ratio(-5, 7));
        let (c, root) = f.kth_root_up_to_constant(3).unwrap();
        assert_eq!(c, ratio(-5, 7));
        assert_eq!(root, g);
        let not_pow = parse_poly(&s, "x^2 + y").unwrap();
        assert!(not_pow.kth_root_up_to_constant(2).is_none());
    }
}
