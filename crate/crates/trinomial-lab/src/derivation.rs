//! Derivations of presented rings: Leibniz extension from generator
//! images, admissibility checking, homogeneous decomposition, the degree
//! function attached to a locally nilpotent derivation, and exponentials.

use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::poly::Poly;
use crate::quotient::{Membership, PresentedRing};
use crate::rational::{Int, Rat};
use num::One;
use serde_json::{json, Value};
use std::sync::Arc;

pub type RingRef = Arc<PresentedRing>;

/// A derivation of `ring`, determined by the images of the generators via
/// the Leibniz rule.  Construction verifies that the relation ideal is
/// preserved, so every value of this type is a derivation of the quotient.
#[derive(Debug, Clone)]
pub struct Derivation {
    pub ring: RingRef,
    pub images: Vec<Poly>,
}

impl Derivation {
    /// Extend generator images to a derivation and verify admissibility:
    /// `∂(g)` must lie in the relation ideal for every relation `g`.
    pub fn extend_and_check(ring: RingRef, images: Vec<Poly>) -> Result<Derivation> {
        if images.len() != ring.space().len() {
            return Err(Error::InvalidVariable(format!(
                "expected {} images, got {}",
                ring.space().len(),
                images.len()
            )));
        }
        for p in &images {
            if p.space != *ring.space() {
                return Err(Error::SpaceMismatch);
            }
        }
        let d = Derivation { ring, images };
        for g in d.ring.relations() {
            let dg = d.apply_ambient(g);
            if let Membership::No { .. } = d.ring.ideal_member(&dg) {
                return Err(Error::NotAdmissible {
                    relation: g.to_string(),
                    image: dg.to_string(),
                });
            }
        }
        Ok(d)
    }

    /// Construct without the admissibility check (used internally where
    /// admissibility is known by construction and re-checked by callers).
    pub fn unchecked(ring: RingRef, images: Vec<Poly>) -> Derivation {
        Derivation { ring, images }
    }

    /// `∂(p)` in the ambient polynomial ring (no reduction).
    pub fn apply_ambient(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(self.ring.space());
        for (v, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let dp = p.partial_derivative(v);
            if !dp.is_zero() {
                out = &out + &(&dp * img);
            }
        }
        out
    }

    /// `∂(p)` as a normal form in the quotient ring.
    pub fn apply(&self, p: &Poly) -> Poly {
        self.ring.normal_form(&self.apply_ambient(p))
    }

    pub fn is_zero(&self) -> bool {
        self.images
            .iter()
            .all(|img| self.ring.normal_form(img).is_zero())
    }

    pub fn scale(&self, c: &Rat) -> Derivation {
        Derivation {
            ring: self.ring.clone(),
            images: self.images.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        debug_assert!(Arc::ptr_eq(&self.ring, &other.ring) || self.ring.space() == other.ring.space());
        Derivation {
            ring: self.ring.clone(),
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Degree function of a locally nilpotent derivation: the least `l`
    /// such that `∂^{l+1}(p) ≡ 0` in the ring.  The caller is responsible
    /// for only using this on verified LNDs; the cap guards against
    /// non-nilpotent misuse.
    pub fn nu_degree(&self, p: &Poly, cap: u32) -> Result<u32> {
        let mut q = self.ring.normal_form(p);
        if q.is_zero() {
            return Ok(0);
        }
        let mut l = 0u32;
        loop {
            q = self.apply(&q);
            if q.is_zero() {
                return Ok(l);
            }
            l += 1;
            if l > cap {
                return Err(Error::CapExhausted {
                    cap,
                    generator: p.to_string(),
                });
            }
        }
    }

    /// The automorphism `exp(t∂)` of the quotient, as generator images.
    /// Terminates only for locally nilpotent `∂` (cap-guarded).
    pub fn exp_automorphism(&self, t: &Rat, cap: u32) -> Result<Vec<Poly>> {
        let space = self.ring.space();
        let mut out = Vec::with_capacity(space.len());
        for v in 0..space.len() {
            let mut sum = Poly::zero(space);
            let mut term = self.ring.normal_form(&Poly::var(space, v));
            let mut factorial = Rat::one();
            let mut tk = Rat::one();
            let mut k = 0u32;
            while !term.is_zero() {
                sum = &sum + &term.scale(&(&tk / &factorial));
                k += 1;
                if k > cap {
                    return Err(Error::CapExhausted {
                        cap,
                        generator: space.name(v).to_string(),
                    });
                }
                term = self.apply(&term);
                factorial *= Rat::from_integer(k.into());
                tk *= t;
            }
            out.push(sum);
        }
        Ok(out)
    }

    /// Apply generator images (e.g. from [`Self::exp_automorphism`]) to a
    /// polynomial, reducing the result.
    pub fn substitute_endomorphism(ring: &PresentedRing, images: &[Poly], p: &Poly) -> Poly {
        ring.normal_form(&p.substitute_full(images))
    }

    pub fn to_json(&self) -> Value {
        let mut images = serde_json::Map::new();
        for (v, img) in self.images.iter().enumerate() {
            if !img.is_zero() {
                images.insert(self.ring.space().name(v).to_string(), json!(img.to_string()));
            }
        }
        json!({ "images": images })
    }
}

/// A graded component of a derivation.
#[derive(Debug, Clone)]
pub struct HomogeneousPart {
    pub degree: Vec<Int>,
    pub derivation: Derivation,
    /// True for the lexicographically least and greatest degrees; when the
    /// whole derivation is locally nilpotent, so are the extreme parts.
    pub extreme: bool,
}

/// Split `∂` into homogeneous components with respect to `grading`: the
/// term `c·m` of `∂(x_v)` belongs to the component of degree
/// `deg(m) − deg(x_v)`.  Components recompose to `∂` exactly.
pub fn homogeneous_parts(d: &Derivation, grading: &Grading) -> Vec<HomogeneousPart> {
    use std::collections::BTreeMap;
    let space = d.ring.space();
    let mut buckets: BTreeMap<Vec<Int>, Vec<Poly>> = BTreeMap::new();
    for (v, img) in d.images.iter().enumerate() {
        let var_deg = grading.degree_of_mono(&crate::poly::Mono::var(space.len(), v, 1));
        for (m, c) in &img.terms {
            let deg: Vec<Int> = grading
                .degree_of_mono(m)
                .into_iter()
                .zip(&var_deg)
                .map(|(a, b)| a - b)
                .collect();
            let images = buckets
                .entry(deg)
                .or_insert_with(|| vec![Poly::zero(space); space.len()]);
            images[v] = &images[v] + &Poly::monomial(space, m.clone(), c.clone());
        }
    }
    let count = buckets.len();
    buckets
        .into_iter()
        .enumerate()
        .map(|(i, (degree, images))| HomogeneousPart {
            degree,
            derivation: Derivation {
                ring: d.ring.clone(),
                images,
            },
            extreme: i == 0 || i + 1 == count,
        })
        .collect()
}
