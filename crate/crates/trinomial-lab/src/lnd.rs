//! Locally nilpotent derivations: verification with certificates, the
//! constructive witness catalog for trinomial hypersurfaces and
//! varieties, suspension lifting and graded descent, and explicit orbit
//! navigation between rational points.

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::poly::{Mono, Poly};
use crate::quotient::PresentedRing;
use crate::rational::{format_rat, rat_nth_root, Rat};
use crate::space::SpaceRef;
use crate::variety::{SuspensionSpec, TrinomialHypersurface};
use num::{One, Signed, Zero};
use serde_json::{json, Value};
use std::sync::Arc;

pub type RingRef = Arc<PresentedRing>;

pub const DEFAULT_NILPOTENCY_CAP: u32 = 64;

/// Proof of local nilpotency: for every generator, the chain of iterated
/// normal-form images ending in zero.
#[derive(Debug, Clone)]
pub struct LndCertificate {
    /// `chains[v]` = `[∂(x_v), ∂²(x_v), …, 0]` as normal forms.
    pub chains: Vec<Vec<Poly>>,
    /// Maximum chain length over all generators.
    pub bound: u32,
}

impl LndCertificate {
    /// Degree `ν(x_v)` read off the certificate: chain length minus one.
    pub fn nu_of_generator(&self, v: usize) -> u32 {
        self.chains[v].len() as u32 - 1
    }
}

#[derive(Debug, Clone)]
pub enum LndVerdict {
    Lnd(LndCertificate),
    /// Some generator's chain did not close within the cap.
    UnknownWithinCap { generator: String },
}

/// Iterate the derivation on every generator, reducing at each step, until
/// the chain closes or the cap is exhausted.
pub fn verify_lnd(d: &Derivation, cap: u32) -> LndVerdict {
    let space = d.ring.space();
    let mut chains = Vec::with_capacity(space.len());
    let mut bound = 0u32;
    for v in 0..space.len() {
        let mut chain = Vec::new();
        let mut q = d.ring.normal_form(&d.images[v]);
        loop {
            let closed = q.is_zero();
            chain.push(q.clone());
            if closed {
                break;
            }
            if chain.len() as u32 > cap {
                return LndVerdict::UnknownWithinCap {
                    generator: space.name(v).to_string(),
                };
            }
            q = d.apply(&q);
        }
        bound = bound.max(chain.len() as u32);
        chains.push(chain);
    }
    LndVerdict::Lnd(LndCertificate { chains, bound })
}

/// A certified LND together with the clause of the theory it instantiates.
#[derive(Debug, Clone)]
pub struct Witness {
    pub tag: &'static str,
    pub derivation: Derivation,
    pub certificate: LndCertificate,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        let space = self.derivation.ring.space();
        let mut chain_lengths = serde_json::Map::new();
        for v in 0..space.len() {
            chain_lengths.insert(
                space.name(v).to_string(),
                json!(self.certificate.chains[v].len()),
            );
        }
        let mut j = self.derivation.to_json();
        let obj = j.as_object_mut().expect("derivation json is an object");
        obj.insert("tag".into(), json!(self.tag));
        obj.insert("chain_lengths".into(), json!(chain_lengths));
        Value::Object(std::mem::take(obj))
    }
}

pub(crate) fn certify_tagged(tag: &'static str, d: Derivation, cap: u32) -> Result<Witness> {
    certify(tag, d, cap)
}

fn certify(tag: &'static str, d: Derivation, cap: u32) -> Result<Witness> {
    if d.is_zero() {
        return Err(Error::Precondition(format!(
            "witness {tag} degenerated to the zero derivation"
        )));
    }
    match verify_lnd(&d, cap) {
        LndVerdict::Lnd(certificate) => Ok(Witness {
            tag,
            derivation: d,
            certificate,
        }),
        LndVerdict::UnknownWithinCap { generator } => Err(Error::CapExhausted {
            cap,
            generator,
        }),
    }
}

/// The exact variable scaling (requiring an irrational or imaginary root)
/// that would bring a hypersurface's coefficients into the sign pattern a
/// square-root witness needs.  Returned instead of a witness when the
/// construction does not go through over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingData {
    /// Variable to rescale, as (group, position).
    pub variable: (usize, usize),
    /// The square of the required scalar, a non-square rational.
    pub factor_squared: Rat,
}

impl ScalingData {
    pub fn to_json(&self, space: &SpaceRef) -> Value {
        json!({
            "needs_scaling": {
                "variable": space.name(space.var(self.variable.0, self.variable.1)),
                "factor_squared": format_rat(&self.factor_squared),
            }
        })
    }
}

#[derive(Debug, Clone)]
pub enum SqrtWitness {
    Witness(Witness),
    NeedsScaling(ScalingData),
}

fn ring_of(h: &TrinomialHypersurface) -> Result<RingRef> {
    Ok(Arc::new(h.ring()?))
}

/// `∂(T_g^{l_g})/∂T_{g,pos}` in the ambient ring.
fn group_partial(h: &TrinomialHypersurface, space: &SpaceRef, g: usize, pos: usize) -> Poly {
    h.group_monomial(space, g)
        .partial_derivative(space.var(g, pos))
}

/// The square-root monomial of an all-even group: exponents halved.
fn sqrt_monomial(h: &TrinomialHypersurface, space: &SpaceRef, g: usize) -> Poly {
    let mut e = vec![0u32; space.len()];
    for (j, &l) in h.groups[g].iter().enumerate() {
        e[space.var(g, j + 1)] = l / 2;
    }
    Poly::monomial(space, Mono(e), Rat::one())
}

/// `sqrt(T_g^{l_g}) / T_{g,pos}`, defined when `l_{g,pos} = 2`.
fn sqrt_over(h: &TrinomialHypersurface, space: &SpaceRef, g: usize, pos: usize) -> Poly {
    let mut e = vec![0u32; space.len()];
    for (j, &l) in h.groups[g].iter().enumerate() {
        e[space.var(g, j + 1)] = if j + 1 == pos { 0 } else { l / 2 };
    }
    Poly::monomial(space, Mono(e), Rat::one())
}

/// Clause rt-1 witness: an exponent-1 variable `T_{i,a}` pairs with
/// the first variable of a partner group `j` via
/// `δ(T_{i,a}) = c_j·∂T_j/∂T_{j1}`, `δ(T_{j1}) = −c_i·∂T_i/∂T_{i,a}`.
pub fn witness_case1(
    h: &TrinomialHypersurface,
    i: usize,
    a: usize,
    cap: u32,
) -> Result<Witness> {
    if i > 2 || a == 0 || a > h.groups[i].len() {
        return Err(Error::InvalidVariable(format!("no variable ({i},{a})")));
    }
    if h.groups[i][a - 1] != 1 {
        return Err(Error::Precondition(format!(
            "variable ({i},{a}) has exponent {}, clause 1 needs 1",
            h.groups[i][a - 1]
        )));
    }
    // partner group: any other nonempty group; fixed choice for determinism
    let j = if i == 2 { 1 } else { 2 };
    let ring = ring_of(h)?;
    let space = ring.space().clone();
    let mut images = vec![Poly::zero(&space); space.len()];
    images[space.var(i, a)] = group_partial(h, &space, j, 1).scale(&h.coeffs[j]);
    images[space.var(j, 1)] = -&group_partial(h, &space, i, a).scale(&h.coeffs[i]);
    let d = Derivation::extend_and_check(ring, images)?;
    certify("rt-case1", d, cap)
}

/// Square-root witness shared by the clause-2 and slice-transitivity
/// constructions.  Groups `gi`, `gj` are all-even with exponent 2 at
/// positions `a`, `b`; `gk` is the remaining group with distinguished
/// position `c`.  With coefficients `A, B, C` the images are
///
///   δ(T_{gi,a}) = u·(∂T_k/∂T_{k,c})·sqrt(T_j)/T_{j,b}
///   δ(T_{gj,b}) = v·(∂T_k/∂T_{k,c})·sqrt(T_i)/T_{i,a}
///   δ(T_{gk,c}) = w·(sqrt(T_i)/T_{i,a})(sqrt(T_j)/T_{j,b})(p·sqrt(T_i) + q·sqrt(T_j))
///
/// subject to `2Au + Cwp = 0`, `2Bv + Cwq = 0`, `pu + qv = 0`, which is
/// solvable over ℚ exactly when `−A/B` is a rational square `s²`; then
/// `p = s, q = sign, w = 2, u = −Cp/A, v = −Cq/B` recovers the classical
/// ±1-coefficient formulas with `sqrt(T_0) ± sqrt(T_1)` in the last image.
fn sqrt_witness(
    h: &TrinomialHypersurface,
    tag: &'static str,
    gi: usize,
    a: usize,
    gj: usize,
    b: usize,
    c: usize,
    sign: i32,
    cap: u32,
) -> Result<SqrtWitness> {
    for (g, pos) in [(gi, a), (gj, b)] {
        if h.groups[g].is_empty() {
            return Err(Error::Precondition(format!("group {g} is empty")));
        }
        if h.groups[g].iter().any(|&l| l % 2 != 0) {
            return Err(Error::Precondition(format!(
                "group {g} has an odd exponent"
            )));
        }
        if h.groups[g][pos - 1] != 2 {
            return Err(Error::Precondition(format!(
                "variable ({g},{pos}) has exponent {}, need 2",
                h.groups[g][pos - 1]
            )));
        }
    }
    if h.groups[0].is_empty() {
        return Err(Error::Precondition(
            "the square-root witness needs all three groups nonempty".into(),
        ));
    }
    let gk = 3 - gi - gj;
    if c == 0 || c > h.groups[gk].len() {
        return Err(Error::InvalidVariable(format!("no variable ({gk},{c})")));
    }
    let a_c = &h.coeffs[gi];
    let b_c = &h.coeffs[gj];
    let c_c = &h.coeffs[gk];
    let ratio = -(a_c / b_c);
    let Some(s) = rat_nth_root(&ratio, 2) else {
        return Ok(SqrtWitness::NeedsScaling(ScalingData {
            variable: (gj, b),
            factor_squared: ratio,
        }));
    };
    let p = s;
    let q = if sign >= 0 { Rat::one() } else { -Rat::one() };
    let u = -(c_c * &p) / a_c;
    let v = -(c_c * &q) / b_c;
    let ring = ring_of(h)?;
    let space = ring.space().clone();
    let dk = group_partial(h, &space, gk, c);
    let sq_i = sqrt_monomial(h, &space, gi);
    let sq_j = sqrt_monomial(h, &space, gj);
    let sq_i_over = sqrt_over(h, &space, gi, a);
    let sq_j_over = sqrt_over(h, &space, gj, b);
    let mut images = vec![Poly::zero(&space); space.len()];
    images[space.var(gi, a)] = (&dk * &sq_j_over).scale(&u);
    images[space.var(gj, b)] = (&dk * &sq_i_over).scale(&v);
    images[space.var(gk, c)] = (&(&sq_i_over * &sq_j_over)
        * &(&sq_i.scale(&p) + &sq_j.scale(&q)))
        .scale(&Rat::from_integer(2.into()));
    let d = Derivation::extend_and_check(ring, images)?;
    Ok(SqrtWitness::Witness(certify(tag, d, cap)?))
}

/// Clause rt-2 witness: two all-even groups `i`, `j` with exponent 2
/// at positions `a`, `b` on a hypersurface without free term.
pub fn witness_case2(
    h: &TrinomialHypersurface,
    i: usize,
    a: usize,
    j: usize,
    b: usize,
    cap: u32,
) -> Result<SqrtWitness> {
    if i == j || i > 2 || j > 2 {
        return Err(Error::InvalidVariable(format!("bad group pair ({i},{j})")));
    }
    sqrt_witness(h, "rt-case2", i, a, j, b, 1, -1, cap)
}

/// Slice-transitivity witness `γ_{ij}` on hypersurfaces whose group-2
/// monomial starts with an exponent-1 variable:
/// `γ(T_{2,1}) = −c_i·∂T_i/∂T_{i,j}`, `γ(T_{i,j}) = c_2·∂T_2/∂T_{2,1}`.
pub fn witness_gamma(
    h: &TrinomialHypersurface,
    i: usize,
    j: usize,
    cap: u32,
) -> Result<Witness> {
    if i > 1 {
        return Err(Error::Precondition("γ needs i ∈ {0, 1}".into()));
    }
    if j == 0 || j > h.groups[i].len() {
        return Err(Error::InvalidVariable(format!("no variable ({i},{j})")));
    }
    if h.groups[2].first() != Some(&1) {
        return Err(Error::Precondition(
            "γ needs the group-2 monomial to start with an exponent-1 variable".into(),
        ));
    }
    let ring = ring_of(h)?;
    let space = ring.space().clone();
    let mut images = vec![Poly::zero(&space); space.len()];
    images[space.var(2, 1)] = -&group_partial(h, &space, i, j).scale(&h.coeffs[i]);
    images[space.var(i, j)] = group_partial(h, &space, 2, 1).scale(&h.coeffs[2]);
    let d = Derivation::extend_and_check(ring, images)?;
    certify("nenul-gamma", d, cap)
}

/// The pair of slice witnesses `δ_{i±}` on hypersurfaces of the shape
/// `c_0·(all-even, 2 first) + c_1·(all-even, 2 first) + c_2·T_2^{l_2}`:
/// the square-root witness with the third-group position `i` and the
/// `±sqrt(T_0)` sign choice.
pub fn witness_delta_pm(
    h: &TrinomialHypersurface,
    i: usize,
    plus: bool,
    cap: u32,
) -> Result<SqrtWitness> {
    let tag = if plus { "dve-delta+" } else { "dve-delta-" };
    sqrt_witness(h, tag, 0, 1, 1, 1, i, if plus { 1 } else { -1 }, cap)
}

/// Lift an LND through a suspension with first weight 1 per the formulas
/// `δ(y_1) = ∂(f)·1`, `δ(y_j) = 0 (j ≥ 2)`,
/// `δ(g) = ∂(g)·y_2^{k_2}···y_m^{k_m}` for base generators `g`.
pub fn lift_suspension(
    base_lnd: &Derivation,
    spec: &SuspensionSpec,
    cap: u32,
) -> Result<Witness> {
    if spec.weights.first() != Some(&1) {
        return Err(Error::Precondition(
            "the lift needs a suspension whose first weight is 1".into(),
        ));
    }
    if !Arc::ptr_eq(&base_lnd.ring.space().clone(), &spec.base.space().clone())
        && base_lnd.ring.space() != spec.base.space()
    {
        return Err(Error::SpaceMismatch);
    }
    let susp = crate::variety::suspend(spec)?;
    if !susp.irreducibility.is_irreducible() {
        return Err(Error::Reducible(
            "refusing to lift onto a possibly reducible suspension".into(),
        ));
    }
    let ring = Arc::new(susp.ring);
    let ext = ring.space().clone();
    let nbase = spec.base.space().len();
    let id_map: Vec<usize> = (0..nbase).collect();
    // The tail monomial y_2^{k_2}···y_m^{k_m} in the extended space.
    let mut tail = Mono::unit(ext.len());
    for (j, &k) in spec.weights.iter().enumerate().skip(1) {
        tail.0[susp.new_vars[j]] = k;
    }
    let tail = Poly::monomial(&ext, tail, Rat::one());
    let mut images = vec![Poly::zero(&ext); ext.len()];
    for v in 0..nbase {
        images[v] = &base_lnd.images[v].map_vars(&ext, &id_map) * &tail;
    }
    images[susp.new_vars[0]] = base_lnd.apply_ambient(&spec.f).map_vars(&ext, &id_map);
    let d = Derivation::extend_and_check(ring, images)?;
    certify("prodol-lift", d, cap)
}

/// The descent of a torus-homogeneous LND on a suspension over an affine
/// space to the degree-zero subring `𝕂[X][z]/(z^d − f)`, `d = gcd(k_i)`.
///
/// The suspension torus grades `𝕂[Y]` by the `y`-exponent vector modulo
/// `ℤ·(k/d)`; a homogeneous `∂` of degree `β` maps the degree-zero part
/// into `y^{s(β)}·𝕂[Y]_0` with `s(β)` the least nonnegative representative
/// of `β`, and `δ(F) = ∂(F)/y^{s(β)}` is an LND of `𝕂[Y]_0`.
pub fn descend_nod(
    d: &Derivation,
    spec: &SuspensionSpec,
    susp_ring: &RingRef,
    new_vars: &[usize],
    cap: u32,
) -> Result<Witness> {
    if !spec.base.is_free() {
        return Err(Error::Precondition(
            "descent is implemented for suspensions over affine space".into(),
        ));
    }
    if d.ring.space() != susp_ring.space() {
        return Err(Error::SpaceMismatch);
    }
    let m = spec.weights.len();
    let nbase = spec.base.space().len();
    let ext = susp_ring.space();
    let dgcd = crate::lattice::gcd_tuple(
        &spec.weights.iter().map(|&k| k as u64).collect::<Vec<_>>(),
    ) as u32;
    let kd: Vec<u32> = spec.weights.iter().map(|&k| k / dgcd).collect();
    // Degree of a monomial: its y-exponent vector, read modulo ℤ·(k/d).
    let y_exps = |mo: &Mono| -> Vec<i64> {
        (0..m).map(|j| mo.0[new_vars[j]] as i64).collect()
    };
    let class_rep = |e: &[i64]| -> Option<Vec<i64>> {
        // normalize e modulo t·(k/d): subtract the largest multiple leaving
        // all entries nonnegative; the class is the fully reduced vector
        let t = (0..m)
            .map(|j| e[j].div_euclid(kd[j] as i64))
            .min()
            .unwrap_or(0);
        Some((0..m).map(|j| e[j] - t * kd[j] as i64).collect())
    };
    // Homogeneity: all nonzero images must put each generator's class up by
    // one common β.
    let mut beta: Option<Vec<i64>> = None;
    for v in 0..ext.len() {
        let img = &d.images[v];
        if img.is_zero() {
            continue;
        }
        let gen_e = y_exps(&Mono::var(ext.len(), v, 1));
        for mo in img.terms.keys() {
            let diff: Vec<i64> = y_exps(mo)
                .iter()
                .zip(&gen_e)
                .map(|(a, b)| a - b)
                .collect();
            let rep = class_rep(&diff).unwrap();
            match &beta {
                None => beta = Some(rep),
                Some(b0) if *b0 == rep => {}
                Some(_) => {
                    return Err(Error::Precondition(
                        "derivation is not homogeneous for the suspension torus".into(),
                    ))
                }
            }
        }
    }
    let beta = beta.unwrap_or_else(|| vec![0; m]);
    // s(β): least componentwise-nonnegative representative of the class.
    let t_min = (0..m)
        .map(|j| (-beta[j]).div_euclid(kd[j] as i64) + i64::from((-beta[j]).rem_euclid(kd[j] as i64) != 0))
        .max()
        .unwrap_or(0)
        .max(0);
    let s_beta: Vec<i64> = (0..m).map(|j| beta[j] + t_min * kd[j] as i64).collect();
    debug_assert!(s_beta.iter().all(|&x| x >= 0));

    // Target ring 𝕂[x_1..x_p][z]/(z^d − f).
    let mut names: Vec<String> = (0..nbase).map(|v| ext.name(v).to_string()).collect();
    names.push("z".into());
    let zspace = crate::space::VariableSpace::plain(names);
    let zvar = nbase;
    let id_map: Vec<usize> = (0..nbase).collect();
    let rel = &Poly::monomial(&zspace, Mono::var(zspace.len(), zvar, dgcd), Rat::one())
        - &spec.f.map_vars(&zspace, &id_map);
    let zring = Arc::new(PresentedRing::new(zspace.clone(), vec![rel])?);

    // Rewrite an element of y^{s(β)}·𝕂[Y]_0 into 𝕂[X][z]: divide by
    // y^{s(β)}, then each remaining y-part must be (z-power)·(k/d) exactly.
    let rewrite = |p: &Poly| -> Result<Poly> {
        let mut out = Poly::zero(&zspace);
        for (mo, coeff) in &p.terms {
            let mut e = vec![0u32; zspace.len()];
            for (v, &exp) in mo.0.iter().take(nbase).enumerate() {
                e[v] = exp;
            }
            let ye = y_exps(mo);
            let mut zpow: Option<i64> = None;
            for j in 0..m {
                let rest = ye[j] - s_beta[j];
                if rest < 0 || rest % kd[j] as i64 != 0 {
                    return Err(Error::Precondition(format!(
                        "image term {} does not lie in y^s(β)·K[Y]_0",
                        Poly::monomial(ext, mo.clone(), coeff.clone())
                    )));
                }
                let t = rest / kd[j] as i64;
                match zpow {
                    None => zpow = Some(t),
                    Some(t0) if t0 == t => {}
                    Some(_) => {
                        return Err(Error::Precondition(format!(
                            "image term {} does not lie in y^s(β)·K[Y]_0",
                            Poly::monomial(ext, mo.clone(), coeff.clone())
                        )))
                    }
                }
            }
            e[zvar] = zpow.unwrap_or(0) as u32;
            out = &out + &Poly::monomial(&zspace, Mono(e), coeff.clone());
        }
        Ok(out)
    };

    // Images of the target generators: the base variables and z = h.
    let mut h_mono = Mono::unit(ext.len());
    for j in 0..m {
        h_mono.0[new_vars[j]] = kd[j];
    }
    let h_poly = Poly::monomial(ext, h_mono, Rat::one());
    let mut images = Vec::with_capacity(zspace.len());
    for v in 0..nbase {
        images.push(rewrite(&d.ring.normal_form(&d.images[v]))?);
    }
    images.push(rewrite(&d.apply(&h_poly))?);
    let delta = Derivation::extend_and_check(zring, images)?;
    certify("nod-descent", delta, cap)
}

/// One step of an orbit path: a catalog witness exponentiated for an exact
/// rational time.
#[derive(Debug, Clone)]
pub struct OrbitStep {
    pub label: String,
    pub witness: Witness,
    pub time: Rat,
}

#[derive(Debug, Clone)]
pub struct OrbitPath {
    pub steps: Vec<OrbitStep>,
    pub source: Vec<Rat>,
    pub target: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub enum OrbitOutcome {
    Path(OrbitPath),
    /// The input is outside the shapes the explicit algorithms cover.
    NotCovered { reason: String },
}

fn point_on(h: &TrinomialHypersurface, p: &[Rat]) -> Result<()> {
    let f = h.defining_polynomial();
    if p.len() != f.space.len() {
        return Err(Error::Precondition("point has the wrong dimension".into()));
    }
    if !f.evaluate(p).is_zero() {
        return Err(Error::Precondition(format!(
            "point ({}) does not satisfy the defining equation",
            p.iter().map(format_rat).collect::<Vec<_>>().join(", ")
        )));
    }
    Ok(())
}

fn apply_exp_at(
    d: &Derivation,
    t: &Rat,
    point: &[Rat],
    cap: u32,
) -> Result<Vec<Rat>> {
    let phi = d.exp_automorphism(t, cap)?;
    Ok(phi.iter().map(|img| img.evaluate(point)).collect())
}

/// Solve `target_fn(exp(s·∂)(point)) = value` for rational `s`: the left
/// side is a polynomial in `s` with exact coefficients, attacked with the
/// rational root theorem.
fn solve_step_time(
    d: &Derivation,
    target_fn: &Poly,
    point: &[Rat],
    value: &Rat,
    cap: u32,
) -> Result<Option<Rat>> {
    // coefficients of s^k: ∂^k(target)/k! evaluated at the point
    let mut coeffs: Vec<Rat> = Vec::new();
    let mut term = d.ring.normal_form(target_fn);
    let mut factorial = Rat::one();
    let mut k = 0u32;
    while !term.is_zero() {
        coeffs.push(term.evaluate(point) / &factorial);
        k += 1;
        if k > cap {
            return Err(Error::CapExhausted {
                cap,
                generator: target_fn.to_string(),
            });
        }
        term = d.apply(&term);
        factorial *= Rat::from_integer(k.into());
    }
    if coeffs.is_empty() {
        coeffs.push(Rat::zero());
    }
    coeffs[0] -= value;
    Ok(rational_root(&coeffs))
}

/// A rational root of `sum coeffs[k]·s^k`, if one exists.
fn rational_root(coeffs: &[Rat]) -> Option<Rat> {
    let deg = coeffs.iter().rposition(|c| !c.is_zero())?;
    if deg == 0 {
        return None; // nonzero constant: no root
    }
    if coeffs[0].is_zero() {
        return Some(Rat::zero());
    }
    if deg == 1 {
        return Some(-(&coeffs[0] / &coeffs[1]));
    }
    // clear denominators to an integer polynomial
    let mut lcm = crate::rational::Int::from(1);
    for c in coeffs.iter().take(deg + 1) {
        let den = c.denom().clone();
        let g = num::Integer::gcd(&lcm, &den);
        lcm = lcm / g * den;
    }
    let ints: Vec<crate::rational::Int> = coeffs
        .iter()
        .take(deg + 1)
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let divisors = |n: &crate::rational::Int| -> Vec<crate::rational::Int> {
        let n = n.abs();
        let mut out = Vec::new();
        let mut k = crate::rational::Int::from(1);
        while &k * &k <= n {
            if num::Integer::is_multiple_of(&n, &k) {
                out.push(k.clone());
                out.push(&n / &k);
            }
            k += 1;
        }
        out
    };
    let horner = |x: &Rat| -> Rat {
        let mut acc = Rat::zero();
        for c in ints.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    };
    for p in divisors(&ints[0]) {
        for q in divisors(&ints[deg]) {
            for sgn in [1i64, -1] {
                let cand = Rat::new(&p * crate::rational::Int::from(sgn), q.clone());
                if horner(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Navigate from `P` to `Q` on a hypersurface using the explicit
/// slice-transitivity algorithms; shapes outside them give "not-covered".
pub fn orbit_path(
    h: &TrinomialHypersurface,
    p: &[Rat],
    q: &[Rat],
    cap: u32,
) -> Result<OrbitOutcome> {
    point_on(h, p)?;
    point_on(h, q)?;
    if p == q {
        return Ok(OrbitOutcome::Path(OrbitPath {
            steps: vec![],
            source: p.to_vec(),
            target: q.to_vec(),
        }));
    }
    if h.slack > 0 {
        return Ok(OrbitOutcome::NotCovered {
            reason: "slack variables are outside the slice algorithms".into(),
        });
    }
    if h.groups[2].first() == Some(&1) && !h.groups[2].is_empty() {
        return orbit_path_nenul(h, p, q, cap);
    }
    if is_dve_shape(h) {
        return orbit_path_dve(h, p, q, cap);
    }
    Ok(OrbitOutcome::NotCovered {
        reason: "hypersurface matches neither slice-transitivity shape".into(),
    })
}

fn is_dve_shape(h: &TrinomialHypersurface) -> bool {
    !h.groups[0].is_empty()
        && h.groups[0][0] == 2
        && h.groups[1][0] == 2
        && h.groups[0].iter().all(|&l| l % 2 == 0)
        && h.groups[1].iter().all(|&l| l % 2 == 0)
        && rat_nth_root(&-(&h.coeffs[0] / &h.coeffs[1]), 2).is_some()
}

/// Transitivity on slices `T_{2,2..} = const ≠ 0` for hypersurfaces whose
/// group-2 monomial starts with an exponent-1 variable: for each variable
/// of groups 0 and 1, one γ-step with exactly computed time.
fn orbit_path_nenul(
    h: &TrinomialHypersurface,
    p: &[Rat],
    q: &[Rat],
    cap: u32,
) -> Result<OrbitOutcome> {
    let space = h.space();
    // hypotheses: the fixed tail coordinates agree and are nonzero
    for jj in 2..=h.groups[2].len() {
        let idx = space.var(2, jj);
        if p[idx] != q[idx] {
            return Ok(OrbitOutcome::NotCovered {
                reason: format!("{} differs between the points (fixed by the slice)", space.name(idx)),
            });
        }
        if p[idx].is_zero() {
            return Ok(OrbitOutcome::NotCovered {
                reason: format!("{} vanishes (the slice needs it nonzero)", space.name(idx)),
            });
        }
    }
    // tail monomial value T_22^{l_22}···(P)
    let mut tail_val = Rat::one();
    for jj in 2..=h.groups[2].len() {
        let idx = space.var(2, jj);
        for _ in 0..h.groups[2][jj - 1] {
            tail_val *= &p[idx];
        }
    }
    let mut current = p.to_vec();
    let mut steps = Vec::new();
    for i in 0..=1usize {
        for j in 1..=h.groups[i].len() {
            let idx = space.var(i, j);
            if current[idx] == q[idx] {
                continue;
            }
            let w = witness_gamma(h, i, j, cap)?;
            // exp(s·γ)(T_ij) = T_ij + s·c_2·tail, linear in s
            let c2_tail = &h.coeffs[2] * &tail_val;
            let s = (&q[idx] - &current[idx]) / &c2_tail;
            current = apply_exp_at(&w.derivation, &s, &current, cap)?;
            debug_assert_eq!(current[idx], q[idx]);
            steps.push(OrbitStep {
                label: format!("gamma({},{})", i, j),
                witness: w,
                time: s,
            });
        }
    }
    if current == q {
        Ok(OrbitOutcome::Path(OrbitPath {
            steps,
            source: p.to_vec(),
            target: q.to_vec(),
        }))
    } else {
        Ok(OrbitOutcome::NotCovered {
            reason: "γ-steps did not close (T_21 mismatch off the slice)".into(),
        })
    }
}

/// Transitivity on slices of the two-even-group shape: δ_{i±}-steps set
/// the group-2 coordinates, a repair γ-step handles one vanishing
/// coordinate, and two final δ_{1±}-steps close the remaining pair.
fn orbit_path_dve(
    h: &TrinomialHypersurface,
    p: &[Rat],
    q: &[Rat],
    cap: u32,
) -> Result<OrbitOutcome> {
    let space = h.space();
    // fixed coordinates: groups 0,1 positions ≥ 2 must agree and be nonzero
    for g in 0..=1usize {
        for jj in 2..=h.groups[g].len() {
            let idx = space.var(g, jj);
            if p[idx] != q[idx] {
                return Ok(OrbitOutcome::NotCovered {
                    reason: format!("{} differs between the points (fixed by the slice)", space.name(idx)),
                });
            }
            if p[idx].is_zero() {
                return Ok(OrbitOutcome::NotCovered {
                    reason: format!("{} vanishes (the slice needs it nonzero)", space.name(idx)),
                });
            }
        }
    }
    if q.iter().any(Rat::is_zero) {
        return Ok(OrbitOutcome::NotCovered {
            reason: "the algorithm fixes a target with all coordinates nonzero".into(),
        });
    }
    let mut current = p.to_vec();
    let mut steps = Vec::new();
    // Stage 1: set T_2i coordinates one at a time.
    for i in 1..=h.groups[2].len() {
        let idx = space.var(2, i);
        if current[idx] == q[idx] {
            continue;
        }
        let mut moved = false;
        for plus in [true, false] {
            let SqrtWitness::Witness(w) = witness_delta_pm(h, i, plus, cap)? else {
                return Ok(OrbitOutcome::NotCovered {
                    reason: "coefficient pattern not realizable over the rationals".into(),
                });
            };
            let target = Poly::var(&space, idx);
            if let Some(s) =
                solve_step_time(&w.derivation, &target, &current, &q[idx], cap)?
            {
                if !s.is_zero() || current[idx] == q[idx] {
                    let next = apply_exp_at(&w.derivation, &s, &current, cap)?;
                    if next[idx] == q[idx] {
                        current = next;
                        steps.push(OrbitStep {
                            label: format!("delta{}({})", if plus { "+" } else { "-" }, i),
                            witness: w,
                            time: s,
                        });
                        moved = true;
                        break;
                    }
                }
            }
        }
        if moved {
            continue;
        }
        // Repair step: both δ_{i±}(T_2i) vanish at the current point, so
        // T_01 = T_11 = 0 there; a unique vanishing exponent-1 group-2
        // coordinate T_2k allows the γ-repair making T_11 nonzero.
        let zero_ks: Vec<usize> = (1..=h.groups[2].len())
            .filter(|&k| current[space.var(2, k)].is_zero())
            .collect();
        let repaired = match zero_ks.as_slice() {
            [k] if h.groups[2][*k - 1] == 1 => {
                let w = repair_gamma(h, *k, cap)?;
                let t11 = space.var(1, 1);
                let mut fixed = None;
                for s_int in 1..=4i64 {
                    let s = Rat::from_integer(s_int.into());
                    let next = apply_exp_at(&w.derivation, &s, &current, cap)?;
                    if !next[t11].is_zero() {
                        fixed = Some((s, next));
                        break;
                    }
                }
                match fixed {
                    Some((s, next)) => {
                        current = next;
                        steps.push(OrbitStep {
                            label: format!("repair-gamma({k})"),
                            witness: w,
                            time: s,
                        });
                        true
                    }
                    None => false,
                }
            }
            _ => false,
        };
        if !repaired {
            return Ok(OrbitOutcome::NotCovered {
                reason: format!(
                    "cannot move {} (slice hypotheses fail at the current point)",
                    space.name(idx)
                ),
            });
        }
        // retry this coordinate after repair
        let mut retried = false;
        for plus in [true, false] {
            let SqrtWitness::Witness(w) = witness_delta_pm(h, i, plus, cap)? else {
                unreachable!("realizability already checked");
            };
            let target = Poly::var(&space, idx);
            if let Some(s) =
                solve_step_time(&w.derivation, &target, &current, &q[idx], cap)?
            {
                let next = apply_exp_at(&w.derivation, &s, &current, cap)?;
                if next[idx] == q[idx] {
                    current = next;
                    steps.push(OrbitStep {
                        label: format!("delta{}({})", if plus { "+" } else { "-" }, i),
                        witness: w,
                        time: s,
                    });
                    retried = true;
                    break;
                }
            }
        }
        if !retried {
            return Ok(OrbitOutcome::NotCovered {
                reason: format!("repair did not unlock {}", space.name(idx)),
            });
        }
    }
    // Stage 2: match α = p·sqrt(T_0) + ... — concretely, use δ_{1+} to set
    // the α-combination, then δ_{1-} to set T_01 (equivalently T_11 via the
    // relation); finally everything coincides.
    let s_ratio = rat_nth_root(&-(&h.coeffs[0] / &h.coeffs[1]), 2).expect("dve shape");
    let alpha = {
        let sq0 = sqrt_monomial(h, &space, 0);
        let sq1 = sqrt_monomial(h, &space, 1);
        &sq0.scale(&s_ratio) - &sq1
    };
    for (plus, target_poly, label) in [
        (true, alpha.clone(), "alpha"),
        (false, Poly::var(&space, space.var(0, 1)), "T_01"),
    ] {
        let value = target_poly.evaluate(q);
        if target_poly.evaluate(&current) == value {
            continue;
        }
        let SqrtWitness::Witness(w) = witness_delta_pm(h, 1, plus, cap)? else {
            unreachable!("realizability already checked");
        };
        let Some(s) = solve_step_time(&w.derivation, &target_poly, &current, &value, cap)?
        else {
            return Ok(OrbitOutcome::NotCovered {
                reason: format!("no rational step time for the {label}-step"),
            });
        };
        current = apply_exp_at(&w.derivation, &s, &current, cap)?;
        steps.push(OrbitStep {
            label: format!("delta{}(1) [{label}]", if plus { "+" } else { "-" }),
            witness: w,
            time: s,
        });
    }
    if current == q {
        Ok(OrbitOutcome::Path(OrbitPath {
            steps,
            source: p.to_vec(),
            target: q.to_vec(),
        }))
    } else {
        Ok(OrbitOutcome::NotCovered {
            reason: "final matching steps did not land on the target".into(),
        })
    }
}

/// The zero-coordinate repair derivation:
/// `γ(T_{2,k}) = c_1·∂T_1/∂T_{1,1}`, `γ(T_{1,1}) = −c_2·∂T_2/∂T_{2,k}`.
fn repair_gamma(h: &TrinomialHypersurface, k: usize, cap: u32) -> Result<Witness> {
    if h.groups[2].get(k - 1) != Some(&1) {
        return Err(Error::Precondition(
            "the repair step needs an exponent-1 group-2 variable".into(),
        ));
    }
    let ring = ring_of(h)?;
    let space = ring.space().clone();
    let mut images = vec![Poly::zero(&space); space.len()];
    images[space.var(2, k)] = group_partial(h, &space, 1, 1).scale(&h.coeffs[1]);
    images[space.var(1, 1)] = -&group_partial(h, &space, 2, k).scale(&h.coeffs[2]);
    let d = Derivation::extend_and_check(ring, images)?;
    certify("nenul-gamma", d, cap)
}

impl OrbitPath {
    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.iter().map(format_rat).collect::<Vec<_>>(),
            "target": self.target.iter().map(format_rat).collect::<Vec<_>>(),
            "steps": self.steps.iter().map(|s| json!({
                "label": s.label,
                "tag": s.witness.tag,
                "time": format_rat(&s.time),
            })).collect::<Vec<_>>(),
        })
    }

    /// Re-run the whole path, checking every intermediate point satisfies
    /// the relation and the endpoint is the target.
    pub fn replay(&self, h: &TrinomialHypersurface, cap: u32) -> Result<bool> {
        let f = h.defining_polynomial();
        let mut current = self.source.clone();
        for step in &self.steps {
            current = apply_exp_at(&step.witness.derivation, &step.time, &current, cap)?;
            if !f.evaluate(&current).is_zero() {
                return Ok(false);
            }
        }
        Ok(current == self.target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::{rat, ratio};
    use crate::space::VariableSpace;
    use crate::variety::suspend;

    fn hyp(groups: [Vec<u32>; 3], coeffs: [i64; 3]) -> TrinomialHypersurface {
        TrinomialHypersurface::new(
            groups,
            [rat(coeffs[0]), rat(coeffs[1]), rat(coeffs[2])],
            0,
        )
        .unwrap()
    }

    #[test]
    fn verify_zero_derivation() {
        let h = hyp([vec![2], vec![3], vec![5]], [1, 1, 1]);
        let ring = Arc::new(h.ring().unwrap());
        let d = Derivation::unchecked(
            ring.clone(),
            vec![Poly::zero(ring.space()); ring.space().len()],
        );
        match verify_lnd(&d, 8) {
            LndVerdict::Lnd(cert) => {
                assert!(cert.chains.iter().all(|c| c.len() == 1));
                assert_eq!(cert.bound, 1);
            }
            _ => panic!("zero derivation is nilpotent"),
        }
    }

    #[test]
    fn euler_derivation_hits_cap() {
        let space = VariableSpace::plain(vec!["x".into()]);
        let ring = Arc::new(PresentedRing::free(space.clone()));
        let d = Derivation::unchecked(ring, vec![parse_poly(&space, "x").unwrap()]);
        assert!(matches!(
            verify_lnd(&d, 8),
            LndVerdict::UnknownWithinCap { .. }
        ));
    }

    #[test]
    fn case1_witness_examples() {
        // t^2 x^3 + y + z^5: δ(y) = 5z^4, δ(z) = -1
        let h = hyp([vec![2, 3], vec![1], vec![5]], [1, 1, 1]);
        let w = witness_case1(&h, 1, 1, 64).unwrap();
        let s = h.space();
        assert_eq!(
            w.derivation.images[s.var(1, 1)],
            parse_poly(&s, "5*T_21^4").unwrap()
        );
        assert_eq!(
            w.derivation.images[s.var(2, 1)],
            parse_poly(&s, "-1").unwrap()
        );
        // certificate bound for y is 6 = l_21 + 1
        assert_eq!(w.certificate.chains[s.var(1, 1)].len(), 6);

        // x + y + z: δ(x) = 1, δ(z) = -1
        let lin = hyp([vec![1], vec![1], vec![1]], [1, 1, 1]);
        let w = witness_case1(&lin, 0, 1, 64).unwrap();
        let s = lin.space();
        assert_eq!(w.derivation.images[s.var(0, 1)], Poly::one(&s));
        assert_eq!(
            w.derivation.images[s.var(2, 1)],
            parse_poly(&s, "-1").unwrap()
        );

        // 1 + x y^2 + z^3 with exponent-1 variable x: δ(x) = 3z^2, δ(z) = -y^2
        let free = TrinomialHypersurface::unit_coeffs([vec![], vec![1, 2], vec![3]], 0).unwrap();
        let w = witness_case1(&free, 1, 1, 64).unwrap();
        let s = free.space();
        assert_eq!(
            w.derivation.images[s.var(1, 1)],
            parse_poly(&s, "3*T_21^2").unwrap()
        );
        assert_eq!(
            w.derivation.images[s.var(2, 1)],
            parse_poly(&s, "-T_12^2").unwrap()
        );
    }

    #[test]
    fn case2_witness_on_sign_pattern() {
        // x^2 - y^2 - z^3: δ(x) = 3z^2, δ(y) = 3z^2, δ(z) = 2(x - y)
        let h = hyp([vec![2], vec![2], vec![3]], [1, -1, -1]);
        let SqrtWitness::Witness(w) = witness_case2(&h, 0, 1, 1, 1, 64).unwrap() else {
            panic!("pattern (1,-1,-1) is realizable");
        };
        let s = h.space();
        assert_eq!(
            w.derivation.images[s.var(0, 1)],
            parse_poly(&s, "3*T_21^2").unwrap()
        );
        assert_eq!(
            w.derivation.images[s.var(1, 1)],
            parse_poly(&s, "3*T_21^2").unwrap()
        );
        assert_eq!(
            w.derivation.images[s.var(2, 1)],
            parse_poly(&s, "2*T_01 - 2*T_11").unwrap()
        );
        // δ²(T_21) = 0
        assert_eq!(w.certificate.chains[s.var(2, 1)].len(), 2);
    }

    #[test]
    fn case2_witness_with_spectator_variables() {
        // t^4 x^2 - y^2 - z^3: δ(t·role)… concretely the exponent-2 slot is
        // x = T_02; δ(x) = 3z^2·(y/y)=3z^2·1? no: sqrt(T_0)=t^2 x, over x = t^2
        let h = hyp([vec![4, 2], vec![2], vec![3]], [1, -1, -1]);
        let SqrtWitness::Witness(w) = witness_case2(&h, 0, 2, 1, 1, 64).unwrap() else {
            panic!("realizable");
        };
        let s = h.space();
        // δ(T_02) = 3 T_21^2 · sqrt(T_1)/T_11 = 3 z^2
        assert_eq!(
            w.derivation.images[s.var(0, 2)],
            parse_poly(&s, "3*T_21^2").unwrap()
        );
        // δ(T_11) = 3 z^2 · sqrt(T_0)/T_02 = 3 z^2 t^2
        assert_eq!(
            w.derivation.images[s.var(1, 1)],
            parse_poly(&s, "3*T_01^2*T_21^2").unwrap()
        );
        // δ(T_21) = 2·t^2·(t^2 x − y)
        assert_eq!(
            w.derivation.images[s.var(2, 1)],
            parse_poly(&s, "2*T_01^4*T_02 - 2*T_01^2*T_11").unwrap()
        );
    }

    #[test]
    fn case2_sign_obstruction_reported() {
        // x^2 + y^2 + z^3: -c_0/c_1 = -1 is not a rational square
        let h = hyp([vec![2], vec![2], vec![3]], [1, 1, 1]);
        match witness_case2(&h, 0, 1, 1, 1, 64).unwrap() {
            SqrtWitness::NeedsScaling(sc) => {
                assert_eq!(sc.factor_squared, rat(-1));
                assert_eq!(sc.variable, (1, 1));
            }
            SqrtWitness::Witness(_) => panic!("(+,+,+) must report scaling"),
        }
        // odd exponent rejected outright
        let odd = hyp([vec![3], vec![2], vec![3]], [1, -1, -1]);
        assert!(witness_case2(&odd, 0, 1, 1, 1, 64).is_err());
    }

    #[test]
    fn gamma_witness_and_exponential() {
        // x^2 + y^3 + z w^2, (i,j) = (0,1): γ(x) = w^2, γ(z) = -2x
        let h = hyp([vec![2], vec![3], vec![1, 2]], [1, 1, 1]);
        let w = witness_gamma(&h, 0, 1, 64).unwrap();
        let s = h.space();
        assert_eq!(
            w.derivation.images[s.var(0, 1)],
            parse_poly(&s, "T_22^2").unwrap()
        );
        assert_eq!(
            w.derivation.images[s.var(2, 1)],
            parse_poly(&s, "-2*T_01").unwrap()
        );
        // exp(s·γ): x ↦ x + s w^2 — at s symbolic we test s = 5
        let phi = w.derivation.exp_automorphism(&rat(5), 64).unwrap();
        assert_eq!(phi[s.var(0, 1)], parse_poly(&s, "T_01 + 5*T_22^2").unwrap());
        // kernel variable w stays fixed
        assert_eq!(phi[s.var(2, 2)], parse_poly(&s, "T_22").unwrap());
    }

    #[test]
    fn delta_pm_witnesses_and_identities() {
        // x^2 - y^2 - z w^3, i = 1: δ_{1-}(x) = w^3, δ_{1-}(y) = w^3,
        // δ_{1-}(z) = 2(x - y)
        let h = hyp([vec![2], vec![2], vec![1, 3]], [1, -1, -1]);
        let SqrtWitness::Witness(minus) = witness_delta_pm(&h, 1, false, 64).unwrap() else {
            panic!("realizable");
        };
        let s = h.space();
        assert_eq!(
            minus.derivation.images[s.var(0, 1)],
            parse_poly(&s, "T_22^3").unwrap()
        );
        assert_eq!(
            minus.derivation.images[s.var(1, 1)],
            parse_poly(&s, "T_22^3").unwrap()
        );
        assert_eq!(
            minus.derivation.images[s.var(2, 1)],
            parse_poly(&s, "2*T_01 - 2*T_11").unwrap()
        );
        let SqrtWitness::Witness(plus) = witness_delta_pm(&h, 1, true, 64).unwrap() else {
            panic!("realizable");
        };
        // α = sqrt(T_0) - sqrt(T_1), β = sqrt(T_0) + sqrt(T_1):
        // δ_+(β) = 0 = δ_-(α) and δ_+(α) = δ_-(β)
        let alpha = parse_poly(&s, "T_01 - T_11").unwrap();
        let beta = parse_poly(&s, "T_01 + T_11").unwrap();
        assert!(plus.derivation.apply(&beta).is_zero());
        assert!(minus.derivation.apply(&alpha).is_zero());
        assert_eq!(
            plus.derivation.apply(&alpha),
            minus.derivation.apply(&beta)
        );
        // δ² (T_21) = 0 for both
        assert_eq!(plus.certificate.chains[s.var(2, 1)].len(), 2);
        assert_eq!(minus.certificate.chains[s.var(2, 1)].len(), 2);
        // variables outside {(0,1),(1,1),(2,i)} are killed
        assert!(plus.derivation.images[s.var(2, 2)].is_zero());
    }

    #[test]
    fn lift_through_weight_one_suspension() {
        // X = K^1 with ∂ = d/dx, f = x^2, weights (1):
        // relation y - x^2, δ(y) = 2x, δ(x) = 1
        let base_space = VariableSpace::plain(vec!["x".into()]);
        let base = PresentedRing::free(base_space.clone());
        let d = Derivation::unchecked(
            Arc::new(base.clone()),
            vec![Poly::one(&base_space)],
        );
        let spec = SuspensionSpec {
            base,
            f: parse_poly(&base_space, "x^2").unwrap(),
            weights: vec![1],
        };
        let w = lift_suspension(&d, &spec, 64).unwrap();
        let s = w.derivation.ring.space().clone();
        assert_eq!(w.derivation.images[0], parse_poly(&s, "1").unwrap());
        assert_eq!(w.derivation.images[1], parse_poly(&s, "2*x").unwrap());
        // wrong first weight is rejected
        let bad = SuspensionSpec {
            base: PresentedRing::free(base_space.clone()),
            f: parse_poly(&base_space, "x^2").unwrap(),
            weights: vec![2, 1],
        };
        assert!(lift_suspension(&d, &bad, 64).is_err());
    }

    #[test]
    fn lift_kills_kernel_and_relation() {
        // base K^2, ∂ = ∂/∂x (kernel contains y); suspension weights (1,3)
        let base_space = VariableSpace::plain(vec!["x".into(), "u".into()]);
        let base = PresentedRing::free(base_space.clone());
        let d = Derivation::unchecked(
            Arc::new(base.clone()),
            vec![
                Poly::one(&base_space),
                Poly::zero(&base_space),
            ],
        );
        let spec = SuspensionSpec {
            base,
            f: parse_poly(&base_space, "x^3 + u").unwrap(),
            weights: vec![1, 3],
        };
        let w = lift_suspension(&d, &spec, 64).unwrap();
        let ring = &w.derivation.ring;
        let s = ring.space().clone();
        // kernel generator u of the base goes to 0... here ∂(u)=0 so δ(u)=0
        assert!(w.derivation.images[1].is_zero());
        // the relation itself dies
        for g in ring.relations() {
            assert!(ring
                .normal_form(&w.derivation.apply_ambient(g))
                .is_zero());
        }
        // δ(y_1) = ∂(f) = 3x^2, δ(x) = y_2^3
        assert_eq!(w.derivation.images[2], parse_poly(&s, "3*x^2").unwrap());
        assert_eq!(w.derivation.images[0], parse_poly(&s, "y_2^3").unwrap());
    }

    #[test]
    fn descent_through_coprime_weights() {
        // Susp(K^1, x, 2, 3): ring K[x, y_1, y_2]/(y_1^2 y_2^3 − x), gcd = 1,
        // degree-zero subring K[x][z]/(z − x).  The torus-homogeneous LND
        // ∂(y_1) = y_2^3, ∂(y_2) = 0, ∂(x) = 2 y_1 y_2^6 has β-class (1,6)
        // = s(β), and descends to δ(x) = δ(z) = 2: a translation.
        let base_space = VariableSpace::plain(vec!["x".into()]);
        let base = PresentedRing::free(base_space.clone());
        let spec = SuspensionSpec {
            base: base.clone(),
            f: parse_poly(&base_space, "x").unwrap(),
            weights: vec![2, 3],
        };
        let susp = suspend(&spec).unwrap();
        let ring = Arc::new(susp.ring);
        let s = ring.space().clone();
        let d = Derivation::extend_and_check(
            ring.clone(),
            vec![
                parse_poly(&s, "2*y_1*y_2^6").unwrap(),
                parse_poly(&s, "y_2^3").unwrap(),
                Poly::zero(&s),
            ],
        )
        .unwrap();
        let w = descend_nod(&d, &spec, &ring, &susp.new_vars, 64).unwrap();
        let zs = w.derivation.ring.space().clone();
        assert_eq!(w.derivation.images[0], parse_poly(&zs, "2").unwrap());
        assert_eq!(w.derivation.images[1], parse_poly(&zs, "2").unwrap());
    }

    #[test]
    fn orbit_path_nenul_example() {
        // X = x^2 + y^2 + z w: P = (1,0,1,-1) → Q = (0,1,1,-1)
        let h = hyp([vec![2], vec![2], vec![1, 1]], [1, 1, 1]);
        let p = [rat(1), rat(0), rat(1), rat(-1)];
        let q = [rat(0), rat(1), rat(1), rat(-1)];
        match orbit_path(&h, &p, &q, 64).unwrap() {
            OrbitOutcome::Path(path) => {
                assert!(!path.steps.is_empty());
                assert!(path.replay(&h, 64).unwrap());
            }
            OrbitOutcome::NotCovered { reason } => panic!("should be covered: {reason}"),
        }
        // identity path
        match orbit_path(&h, &p, &p, 64).unwrap() {
            OrbitOutcome::Path(path) => assert!(path.steps.is_empty()),
            _ => panic!("P = Q is the empty path"),
        }
        // off-variety points rejected
        assert!(orbit_path(&h, &[rat(1), rat(1), rat(1), rat(1)], &q, 64).is_err());
    }

    #[test]
    fn orbit_path_forbidden_zero_coordinate() {
        // same X; target with w = 0 breaks the fixed-coordinate hypothesis
        let h = hyp([vec![2], vec![2], vec![1, 1]], [1, 1, 1]);
        let q = [rat(2), rat(0), rat(-4), rat(1)];
        assert!(parse_poly(&h.space(), "T_01^2 + T_11^2 + T_21*T_22")
            .unwrap()
            .evaluate(&q)
            .is_zero());
        match orbit_path(&h, &[rat(1), rat(0), rat(1), rat(-1)], &q, 64).unwrap() {
            OrbitOutcome::NotCovered { .. } => {}
            OrbitOutcome::Path(_) => panic!("differing fixed coordinate must not be covered"),
        }
    }

    #[test]
    fn orbit_path_dve_example() {
        // x^2 - y^2 - z w^3 (dve shape): move z while w stays fixed
        let h = hyp([vec![2], vec![2], vec![1, 3]], [1, -1, -1]);
        let s = h.space();
        let f = h.defining_polynomial();
        let p = [rat(3), rat(1), rat(8), rat(1)];
        let q = [rat(5), ratio(-1, 1), rat(24), rat(1)];
        assert!(f.evaluate(&p).is_zero() && f.evaluate(&q).is_zero());
        let _ = s;
        match orbit_path(&h, &p, &q, 64).unwrap() {
            OrbitOutcome::Path(path) => {
                assert!(path.replay(&h, 64).unwrap());
            }
            OrbitOutcome::NotCovered { reason } => panic!("expected a path: {reason}"),
        }
    }

    #[test]
    fn rational_root_finder() {
        // (s - 3)(2s + 1) = 2s^2 - 5s - 3
        let coeffs = vec![rat(-3), rat(-5), rat(2)];
        let root = rational_root(&coeffs).unwrap();
        assert!(root == rat(3) || root == ratio(-1, 2));
        // s^2 - 2 has no rational root
        assert!(rational_root(&[rat(-2), rat(0), rat(1)]).is_none());
        // linear
        assert_eq!(rational_root(&[rat(6), rat(-2)]).unwrap(), rat(3));
    }
}
