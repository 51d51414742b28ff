//! Decision procedures: the rigidity criterion for trinomial
//! hypersurfaces, the rigidity criterion for trinomial varieties, the
//! flexible types H1–H5, the intermediate Types A and B with their proven
//! Makar-Limanov invariants, and factoriality reporting.

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::lnd::{
    certify_tagged, lift_suspension, witness_case1, witness_case2, SqrtWitness, Witness,
};
use crate::poly::Poly;
use crate::quotient::PresentedRing;
use crate::rational::Rat;
use crate::variety::{
    Factoriality, FactorialityVerdict, SuspensionSpec, TrinomialHypersurface, TrinomialVariety,
    VarietyKind,
};
use num::One;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rigidity {
    Rigid,
    Nonrigid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flexibility {
    /// Matched flexible types, as a set of tags "H1".."H5".
    Flexible(BTreeSet<&'static str>),
    /// Intermediate Type A with `k` exponent-1 variables in the
    /// distinguished group.
    IntermediateA { k: usize, proven: bool },
    /// Intermediate Type B with `k_0`, `k_1` exponent-2 variables in the
    /// two all-even groups.
    IntermediateB { k0: usize, k1: usize, proven: bool },
    /// Nonrigid, parameters outside the proven cases.
    Open,
    /// The variety is an affine space (a graph over the other variables).
    AffineSpace,
    /// Outside the scope of the variety criterion (non-factorial Type 2).
    NotApplicable,
    /// No flexibility claim is made (slack variables, varieties, defects).
    Unclassified,
}

impl Flexibility {
    fn proven(&self) -> bool {
        match self {
            Flexibility::Flexible(_) | Flexibility::AffineSpace => true,
            Flexibility::IntermediateA { proven, .. }
            | Flexibility::IntermediateB { proven, .. } => *proven,
            _ => false,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Flexibility::Flexible(tags) => json!(tags.iter().collect::<Vec<_>>()),
            Flexibility::IntermediateA { .. } => json!("intermediate-A"),
            Flexibility::IntermediateB { .. } => json!("intermediate-B"),
            Flexibility::Open => json!("open"),
            Flexibility::AffineSpace => json!("affine-space"),
            Flexibility::NotApplicable => json!("not-applicable"),
            Flexibility::Unclassified => json!("unclassified"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MlVerdict {
    FullRing,
    GroundField,
    /// Exactly the polynomial ring on the listed variables.
    Generators(Vec<String>),
    /// Known to contain the polynomial ring on the listed variables.
    Contains(Vec<String>),
    Unknown,
}

impl MlVerdict {
    fn to_json(&self) -> Value {
        match self {
            MlVerdict::FullRing => json!("full-ring"),
            MlVerdict::GroundField => json!("ground-field"),
            MlVerdict::Generators(g) => json!({ "generators": g }),
            MlVerdict::Contains(g) => json!({ "contains": g }),
            MlVerdict::Unknown => json!("unknown"),
        }
    }
}

fn factoriality_json(f: &Factoriality) -> Value {
    let verdict = match f.verdict {
        FactorialityVerdict::Factorial => "factorial",
        FactorialityVerdict::NotFactorial => "not-factorial",
        FactorialityVerdict::Inapplicable => "criterion-inapplicable",
    };
    json!({ "verdict": verdict, "reason": f.reason })
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub rigidity: Rigidity,
    /// "rt-1", "rt-2", "ridfac-1", "ridfac-2", "ridfac-3", or "none".
    pub clause: String,
    pub flexibility: Flexibility,
    pub factorial: Factoriality,
    pub ml: MlVerdict,
    pub witnesses: Vec<Value>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "rigidity": match self.rigidity {
                Rigidity::Rigid => "rigid",
                Rigidity::Nonrigid => "nonrigid",
            },
            "clause": self.clause,
            "flexibility": self.flexibility.to_json(),
            "proven": self.flexibility.proven(),
            "factorial": factoriality_json(&self.factorial),
            "ml": self.ml.to_json(),
            "witnesses": self.witnesses,
            "notes": self.notes,
        })
    }
}

/// Result of flexible-type matching: the full set of matching tags with a
/// witnessing group permutation for each (groups listed in role order).
#[derive(Debug, Clone, Default)]
pub struct FlexMatch {
    pub tags: BTreeSet<&'static str>,
    pub permutations: Vec<(&'static str, [usize; 3])>,
}

fn all_even_with_two(g: &[u32]) -> bool {
    !g.is_empty() && g.iter().all(|&l| l % 2 == 0) && g.contains(&2)
}

fn has_one(g: &[u32]) -> bool {
    g.contains(&1)
}

/// Match the flexible types H1–H5 up to group permutation.  Tags overlap;
/// the whole set is reported.
pub fn match_flexible_type(h: &TrinomialHypersurface) -> FlexMatch {
    let g = &h.groups;
    let mut out = FlexMatch::default();
    let mut add = |tag: &'static str, perm: [usize; 3]| {
        if out.tags.insert(tag) {
            out.permutations.push((tag, perm));
        }
    };
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for p in perms {
        let (a, b, c) = (&g[p[0]], &g[p[1]], &g[p[2]]);
        // H1: some group has all exponents 1.
        if !a.is_empty() && a.iter().all(|&l| l == 1) {
            add("H1", p);
        }
        // H2: two groups all exponents exactly 2; all three nonempty.
        if !a.is_empty()
            && !b.is_empty()
            && !c.is_empty()
            && b.iter().all(|&l| l == 2)
            && c.iter().all(|&l| l == 2)
        {
            add("H2", p);
        }
        // H3: two groups each containing an exponent-1 variable.
        if has_one(b) && has_one(c) {
            add("H3", p);
        }
        // H4: one group with an exponent-1 variable plus two all-even
        // groups containing a 2; all three nonempty.
        if has_one(a) && all_even_with_two(b) && all_even_with_two(c) {
            add("H4", p);
        }
        // H5: three all-even groups each containing a 2.
        if all_even_with_two(a) && all_even_with_two(b) && all_even_with_two(c) {
            add("H5", p);
        }
    }
    out
}

/// Evaluate the hypersurface rigidity clauses on the exponent data alone.
/// Returns ("rt-1", (i, a)) for an exponent-1 variable, or
/// ("rt-2", pairs) for two all-even groups containing a 2 on a
/// free-term-free hypersurface, or None.
fn rt_clause(h: &TrinomialHypersurface) -> Option<(&'static str, Vec<(usize, usize)>)> {
    for i in 0..3 {
        for (a, &l) in h.groups[i].iter().enumerate() {
            if l == 1 {
                return Some(("rt-1", vec![(i, a + 1)]));
            }
        }
    }
    if h.groups[0].is_empty() {
        return None;
    }
    let even: Vec<usize> = (0..3).filter(|&i| all_even_with_two(&h.groups[i])).collect();
    if even.len() >= 2 {
        let pos2 = |i: usize| h.groups[i].iter().position(|&l| l == 2).unwrap() + 1;
        return Some((
            "rt-2",
            even.iter().map(|&i| (i, pos2(i))).collect(),
        ));
    }
    None
}

/// The `∂/∂S_1` witness on a descriptor with slack variables.
fn slack_witness(ring: &Arc<PresentedRing>, cap: u32) -> Result<Witness> {
    let space = ring.space().clone();
    let mut images = vec![Poly::zero(&space); space.len()];
    images[space.slack_var(1)] = Poly::one(&space);
    let d = Derivation::extend_and_check(ring.clone(), images)?;
    certify_tagged("slack-dS1", d, cap)
}

/// Build the clause witness for a nonrigid hypersurface: a case-1 witness
/// for an exponent-1 variable, or a case-2 square-root witness, the latter
/// falling back to scaling data plus a witness on the sign-normalized
/// model when the coefficient pattern is not realizable over ℚ.
fn hypersurface_witnesses(
    h: &TrinomialHypersurface,
    clause: &str,
    sites: &[(usize, usize)],
    cap: u32,
) -> Result<Vec<Value>> {
    match clause {
        "rt-1" => {
            let (i, a) = sites[0];
            Ok(vec![witness_case1(h, i, a, cap)?.to_json()])
        }
        "rt-2" => {
            // try all ordered pairs of qualifying groups; first rational
            // realization wins
            let mut first_scaling = None;
            for &(i, a) in sites {
                for &(j, b) in sites {
                    if i == j {
                        continue;
                    }
                    match witness_case2(h, i, a, j, b, cap)? {
                        SqrtWitness::Witness(w) => return Ok(vec![w.to_json()]),
                        SqrtWitness::NeedsScaling(sc) => {
                            if first_scaling.is_none() {
                                first_scaling = Some(((i, a, j, b), sc));
                            }
                        }
                    }
                }
            }
            let ((i, a, j, b), sc) = first_scaling.expect("rt-2 has at least one pair");
            // witness on the sign-normalized model: flip the second
            // group's coefficient so that -c_i/c_j = 1
            let mut scaled = h.clone();
            scaled.coeffs[j] = -h.coeffs[i].clone();
            let SqrtWitness::Witness(w) = witness_case2(&scaled, i, a, j, b, cap)? else {
                return Err(Error::SignPattern(format!(
                    "sign-normalized model still not realizable for pair ({i},{j})"
                )));
            };
            let space = h.space();
            Ok(vec![json!({
                "needs_scaling": sc.to_json(&space)["needs_scaling"],
                "scaled_model": scaled.to_json(),
                "witness_on_scaled_model": w.to_json(),
            })])
        }
        _ => Ok(vec![]),
    }
}

/// Intermediate-type sorting of a nonrigid, non-flexible hypersurface.
/// Returns the flexibility verdict together with the ML report.
fn sort_intermediate(h: &TrinomialHypersurface) -> Option<(Flexibility, MlVerdict)> {
    let space = h.space();
    let group_vars_except = |g: usize, skip: usize| -> Vec<String> {
        (1..=h.groups[g].len())
            .filter(|&p| p != skip)
            .map(|p| space.name(space.var(g, p)).to_string())
            .collect()
    };
    let with_ones: Vec<usize> = (0..3).filter(|&i| has_one(&h.groups[i])).collect();
    match with_ones.as_slice() {
        [g] => {
            // Type A: the distinguished group holds all exponent-1
            // variables; k of them, with at least one other variable.
            let k = h.groups[*g].iter().filter(|&&l| l == 1).count();
            if h.groups[*g].len() == k {
                return None; // all-ones group is H1, handled earlier
            }
            let proven = k == 1;
            let ml = if proven {
                let skip = h.groups[*g].iter().position(|&l| l == 1).unwrap() + 1;
                MlVerdict::Generators(group_vars_except(*g, skip))
            } else {
                MlVerdict::Unknown
            };
            Some((Flexibility::IntermediateA { k, proven }, ml))
        }
        [] => {
            // Type B: exactly two all-even groups containing a 2.
            let even: Vec<usize> =
                (0..3).filter(|&i| all_even_with_two(&h.groups[i])).collect();
            if even.len() != 2 || h.groups[0].is_empty() {
                return None;
            }
            let count2 = |g: usize| h.groups[g].iter().filter(|&&l| l == 2).count();
            let mut best: Option<(Flexibility, MlVerdict)> = None;
            for (g0, g1) in [(even[0], even[1]), (even[1], even[0])] {
                let (k0, k1) = (count2(g0), count2(g1));
                let n1 = h.groups[g1].len();
                let skip0 = h.groups[g0].iter().position(|&l| l == 2).unwrap() + 1;
                let skip1 = h.groups[g1].iter().position(|&l| l == 2).unwrap() + 1;
                let candidate = if k0 == 1 && k1 == n1 {
                    (
                        Flexibility::IntermediateB { k0, k1, proven: true },
                        MlVerdict::Generators(group_vars_except(g0, skip0)),
                    )
                } else if k0 == 1 && k1 == 1 {
                    let mut gens = group_vars_except(g0, skip0);
                    gens.extend(group_vars_except(g1, skip1));
                    (
                        Flexibility::IntermediateB { k0, k1, proven: true },
                        MlVerdict::Generators(gens),
                    )
                } else if k0 == 1 {
                    (
                        Flexibility::IntermediateB { k0, k1, proven: false },
                        MlVerdict::Contains(group_vars_except(g0, skip0)),
                    )
                } else {
                    (
                        Flexibility::IntermediateB { k0, k1, proven: false },
                        MlVerdict::Unknown,
                    )
                };
                let is_proven = candidate.0.proven();
                match &best {
                    None => best = Some(candidate),
                    Some(b) if !b.0.proven() && is_proven => best = Some(candidate),
                    _ => {}
                }
            }
            best
        }
        _ => None, // two groups with exponent-1 variables is H3
    }
}

pub fn classify_hypersurface(h: &TrinomialHypersurface) -> Result<ClassificationReport> {
    classify_hypersurface_capped(h, crate::lnd::DEFAULT_NILPOTENCY_CAP)
}

pub fn classify_hypersurface_capped(
    h: &TrinomialHypersurface,
    cap: u32,
) -> Result<ClassificationReport> {
    let factorial = h.is_factorial();
    // Slack variables: trivially nonrigid, flexibility not claimed.
    if h.slack > 0 {
        let ring = Arc::new(h.ring()?);
        let w = slack_witness(&ring, cap)?;
        return Ok(ClassificationReport {
            rigidity: Rigidity::Nonrigid,
            clause: "none".into(),
            flexibility: Flexibility::Unclassified,
            factorial,
            ml: MlVerdict::Unknown,
            witnesses: vec![w.to_json()],
            notes: vec!["nonrigid, flexibility not classified (slack variable)".into()],
        });
    }
    let clause = rt_clause(h);
    let (clause_tag, witnesses) = match &clause {
        Some((tag, sites)) => (tag.to_string(), hypersurface_witnesses(h, tag, sites, cap)?),
        None => ("none".to_string(), vec![]),
    };
    // Step 0: a size-1 exponent-1 group makes the hypersurface a graph.
    if h.groups.iter().any(|g| g.len() == 1 && g[0] == 1) {
        return Ok(ClassificationReport {
            rigidity: Rigidity::Nonrigid,
            clause: clause_tag,
            flexibility: Flexibility::AffineSpace,
            factorial,
            ml: MlVerdict::GroundField,
            witnesses,
            notes: vec![],
        });
    }
    // Step 1: flexible types.
    let flex = match_flexible_type(h);
    if !flex.tags.is_empty() {
        return Ok(ClassificationReport {
            rigidity: Rigidity::Nonrigid,
            clause: clause_tag,
            flexibility: Flexibility::Flexible(flex.tags),
            factorial,
            ml: MlVerdict::GroundField,
            witnesses,
            notes: vec![],
        });
    }
    // Step 2: the rigidity criterion.
    if clause.is_none() {
        return Ok(ClassificationReport {
            rigidity: Rigidity::Rigid,
            clause: clause_tag,
            flexibility: Flexibility::Unclassified,
            factorial,
            ml: MlVerdict::FullRing,
            witnesses: vec![],
            notes: vec![],
        });
    }
    // Step 3: intermediate types.
    match sort_intermediate(h) {
        Some((flexibility, ml)) => {
            let notes = if flexibility.proven() {
                vec![]
            } else {
                vec!["flexibility open: parameters outside the proven cases".into()]
            };
            Ok(ClassificationReport {
                rigidity: Rigidity::Nonrigid,
                clause: clause_tag,
                flexibility,
                factorial,
                ml,
                witnesses,
                notes,
            })
        }
        None => Ok(ClassificationReport {
            rigidity: Rigidity::Nonrigid,
            clause: clause_tag,
            flexibility: Flexibility::Unclassified,
            factorial,
            ml: MlVerdict::Unknown,
            witnesses,
            notes: vec![
                "DEFECT: nonrigid input matched neither a flexible type nor Type A/B"
                    .into(),
            ],
        }),
    }
}

/// The ML-invariant verdict on its own (classification rerun internally).
pub fn ml_invariant(h: &TrinomialHypersurface) -> Result<MlVerdict> {
    Ok(classify_hypersurface(h)?.ml)
}

/// Exponent-1 presence per group of a variety, in absolute group labels.
fn variety_groups_without_one(v: &TrinomialVariety) -> Vec<usize> {
    let q = v.first_group();
    (0..v.l.len())
        .filter(|&i| !has_one(&v.l[i]))
        .map(|i| i + q)
        .collect()
}

/// Re-encode an r = 2 variety as the trinomial hypersurface its single
/// relation defines.
pub fn r2_hypersurface(v: &TrinomialVariety) -> Result<TrinomialHypersurface> {
    if v.r() != 2 {
        return Err(Error::Precondition("re-encoding needs r = 2".into()));
    }
    match &v.kind {
        VarietyKind::Type1 { a } => {
            // T_1^{l_1} - T_2^{l_2} - (a_2 - a_1) = 0: free term group 0
            let c = &a[1] - &a[0];
            TrinomialHypersurface::new(
                [vec![], v.l[0].clone(), v.l[1].clone()],
                [-c, Rat::one(), -Rat::one()],
                v.slack,
            )
        }
        VarietyKind::Type2 { a } => {
            let minor = |p: usize, q: usize| &a[0][p] * &a[1][q] - &a[0][q] * &a[1][p];
            TrinomialHypersurface::new(
                [v.l[0].clone(), v.l[1].clone(), v.l[2].clone()],
                [minor(1, 2), -minor(0, 2), minor(0, 1)],
                v.slack,
            )
        }
    }
}

/// Build the nonrigidity witness for a variety satisfying the
/// exponent-1 clause: permute groups so the exception group(s) come
/// first, start from a case-1 witness on the two- (or three-) group base
/// hypersurface, and lift through the chain of weight-1 suspensions back
/// to the full ring, finally re-checking against the original relations.
fn variety_lift_witness(v: &TrinomialVariety, cap: u32) -> Result<Witness> {
    let q = v.first_group();
    let r_groups = v.l.len();
    let exceptions: Vec<usize> = (0..r_groups).filter(|&i| !has_one(&v.l[i])).collect();
    let head = match &v.kind {
        VarietyKind::Type1 { .. } => 1,
        VarietyKind::Type2 { .. } => 2,
    };
    if exceptions.len() > head {
        return Err(Error::Precondition(
            "too many groups without exponent-1 variables".into(),
        ));
    }
    // permutation sigma over 0-based group slots: exceptions first
    let mut sigma: Vec<usize> = exceptions.clone();
    for i in 0..r_groups {
        if !exceptions.contains(&i) {
            sigma.push(i);
        }
    }
    // every group from position `head` on must have an exponent-1 variable
    for &g in sigma.iter().skip(head) {
        debug_assert!(has_one(&v.l[g]));
    }
    let orig_space = v.space();
    let orig_ring = Arc::new(v.ring()?);

    // Base hypersurface over the first `head + 1` permuted groups.
    let (base_h, base_groups): (TrinomialHypersurface, Vec<usize>) = match &v.kind {
        VarietyKind::Type1 { a } => {
            let (g1, g2) = (sigma[0], sigma[1]);
            let c = &a[g2] - &a[g1];
            (
                TrinomialHypersurface::new(
                    [vec![], v.l[g1].clone(), v.l[g2].clone()],
                    [-c, Rat::one(), -Rat::one()],
                    0,
                )?,
                vec![g1, g2],
            )
        }
        VarietyKind::Type2 { a } => {
            let (g0, g1, g2) = (sigma[0], sigma[1], sigma[2]);
            let minor = |p: usize, qq: usize| &a[0][p] * &a[1][qq] - &a[0][qq] * &a[1][p];
            (
                TrinomialHypersurface::new(
                    [v.l[g0].clone(), v.l[g1].clone(), v.l[g2].clone()],
                    [minor(g1, g2), -minor(g0, g2), minor(g0, g1)],
                    0,
                )?,
                vec![g0, g1, g2],
            )
        }
    };
    // orig_map[ext index] = index in the original variety space
    let mut orig_map: Vec<usize> = Vec::new();
    for &g in &base_groups {
        for p in 1..=v.l[g].len() {
            orig_map.push(orig_space.var(g + q, p));
        }
    }
    // The case-1 witness at an exponent-1 variable of the last base group.
    let last_base = *base_groups.last().unwrap();
    let a_pos = v.l[last_base].iter().position(|&l| l == 1).unwrap() + 1;
    let base_witness = witness_case1(&base_h, 2, a_pos, cap)?;
    let mut current = base_witness.derivation;
    let mut current_ring = current.ring.clone();

    // Lift through the remaining groups, exponent-1 variable first.
    for step in (head + 1)..r_groups {
        let g_new = sigma[step];
        let g_prev = sigma[step - 1];
        let space = current_ring.space().clone();
        // monomial of the previous group in the current accumulated space:
        // its variables are the last block appended (or the base layout)
        let prev_mono = {
            let mut e = vec![0u32; space.len()];
            for (p, &l) in v.l[g_prev].iter().enumerate() {
                let orig_idx = orig_space.var(g_prev + q, p + 1);
                let ext_idx = orig_map
                    .iter()
                    .position(|&o| o == orig_idx)
                    .expect("previous group already embedded");
                e[ext_idx] = l;
            }
            Poly::monomial(&space, crate::poly::Mono(e), Rat::one())
        };
        let f = match &v.kind {
            VarietyKind::Type1 { a } => {
                // T_new^{l} = T_prev^{l} - (a_new - a_prev)
                &prev_mono - &Poly::constant(&space, &a[g_new] - &a[g_prev])
            }
            VarietyKind::Type2 { a } => {
                // M(prev2,prev)·... solve the determinant relation for the
                // new group: M(p2,new)·T_p2 - M(p1... with triple
                // (g_p2, g_p1, g_new): T_new^{l} =
                // (-M(g_p1,g_new)·T_p2 + M(g_p2,g_new)·T_p1) / M(g_p2,g_p1)
                let g_p2 = sigma[step - 2];
                let minor =
                    |p: usize, qq: usize| &a[0][p] * &a[1][qq] - &a[0][qq] * &a[1][p];
                let p2_mono = {
                    let mut e = vec![0u32; space.len()];
                    for (p, &l) in v.l[g_p2].iter().enumerate() {
                        let orig_idx = orig_space.var(g_p2 + q, p + 1);
                        let ext_idx = orig_map
                            .iter()
                            .position(|&o| o == orig_idx)
                            .expect("embedded");
                        e[ext_idx] = l;
                    }
                    Poly::monomial(&space, crate::poly::Mono(e), Rat::one())
                };
                let denom = minor(g_p2, g_p1_of(&sigma, step));
                let c2 = -&minor(g_p1_of(&sigma, step), g_new) / &denom;
                let c1 = minor(g_p2, g_new) / &denom;
                &p2_mono.scale(&c2) + &prev_mono.scale(&c1)
            }
        };
        // weights: the new group's exponents with an exponent-1 first
        let ones_pos = v.l[g_new].iter().position(|&l| l == 1).unwrap();
        let mut order: Vec<usize> = (0..v.l[g_new].len()).collect();
        order.swap(0, ones_pos);
        let weights: Vec<u32> = order.iter().map(|&p| v.l[g_new][p]).collect();
        let spec = SuspensionSpec {
            base: (*current_ring).clone(),
            f,
            weights,
        };
        let lifted = lift_suspension(&current, &spec, cap)?;
        for &p in &order {
            orig_map.push(orig_space.var(g_new + q, p + 1));
        }
        current = lifted.derivation;
        current_ring = current.ring.clone();
    }

    // Map back to the original space and re-check against the original
    // relations (the permuted chain generates the same ideal).
    let mut images = vec![Poly::zero(&orig_space); orig_space.len()];
    for (ext_idx, &oi) in orig_map.iter().enumerate() {
        images[oi] = current.images[ext_idx].map_vars(&orig_space, &orig_map);
    }
    let d = Derivation::extend_and_check(orig_ring, images)?;
    certify_tagged("prodol-lift", d, cap)
}

fn g_p1_of(sigma: &[usize], step: usize) -> usize {
    sigma[step - 1]
}

pub fn classify_variety(v: &TrinomialVariety) -> Result<ClassificationReport> {
    classify_variety_capped(v, crate::lnd::DEFAULT_NILPOTENCY_CAP)
}

pub fn classify_variety_capped(
    v: &TrinomialVariety,
    cap: u32,
) -> Result<ClassificationReport> {
    let factorial = v.is_factorial();
    // r = 2: the variety is a trinomial hypersurface; delegate.
    if v.r() == 2 {
        let h = r2_hypersurface(v)?;
        let mut report = classify_hypersurface_capped(&h, cap)?;
        report
            .notes
            .push("r = 2: delegated to the hypersurface re-encoding".into());
        report.factorial = factorial;
        return Ok(report);
    }
    let is_type2 = matches!(v.kind, VarietyKind::Type2 { .. });
    // Type 2 outside the factorial case is outside the criterion.
    if is_type2 && !factorial.is_factorial() {
        return Ok(ClassificationReport {
            rigidity: Rigidity::Rigid,
            clause: "none".into(),
            flexibility: Flexibility::NotApplicable,
            factorial,
            ml: MlVerdict::Unknown,
            witnesses: vec![],
            notes: vec![format!(
                "not-applicable — outside the rigidity criterion (d_i = {:?})",
                v.group_gcds()
            )],
        });
    }
    let mut notes = Vec::new();
    if !is_type2 && !factorial.is_factorial() {
        notes.push(
            "Type 1 criterion applied as stated; factoriality report attached".into(),
        );
    }
    // Clause 1: slack variables.
    if v.slack > 0 {
        let ring = Arc::new(v.ring()?);
        let w = slack_witness(&ring, cap)?;
        return Ok(ClassificationReport {
            rigidity: Rigidity::Nonrigid,
            clause: "ridfac-1".into(),
            flexibility: Flexibility::Unclassified,
            factorial,
            ml: MlVerdict::Unknown,
            witnesses: vec![w.to_json()],
            notes,
        });
    }
    // Clauses 2 (Type 1) and 3 (Type 2): count groups lacking exponent 1.
    let missing = variety_groups_without_one(v);
    let (clause, allowed) = if is_type2 {
        ("ridfac-3", 2)
    } else {
        ("ridfac-2", 1)
    };
    if missing.len() <= allowed {
        let w = variety_lift_witness(v, cap)?;
        return Ok(ClassificationReport {
            rigidity: Rigidity::Nonrigid,
            clause: clause.into(),
            flexibility: Flexibility::Unclassified,
            factorial,
            ml: MlVerdict::Unknown,
            witnesses: vec![w.to_json()],
            notes,
        });
    }
    Ok(ClassificationReport {
        rigidity: Rigidity::Rigid,
        clause: "none".into(),
        flexibility: Flexibility::Unclassified,
        factorial,
        ml: MlVerdict::FullRing,
        witnesses: vec![],
        notes,
    })
}

/// Classify either kind of descriptor.
pub fn classify_descriptor(d: &crate::variety::Descriptor) -> Result<ClassificationReport> {
    match d {
        crate::variety::Descriptor::Hypersurface(h) => classify_hypersurface(h),
        crate::variety::Descriptor::Variety(v) => classify_variety(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn hyp(groups: [Vec<u32>; 3]) -> TrinomialHypersurface {
        TrinomialHypersurface::unit_coeffs(groups, 0).unwrap()
    }

    #[test]
    fn rigid_example() {
        // t^2 x^3 + y^5 + z^7
        let r = classify_hypersurface(&hyp([vec![2, 3], vec![5], vec![7]])).unwrap();
        assert_eq!(r.rigidity, Rigidity::Rigid);
        assert_eq!(r.clause, "none");
        assert_eq!(r.ml, MlVerdict::FullRing);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn flexible_h2_example() {
        // t^2 x^2 + y^2 + z^5
        let r = classify_hypersurface(&hyp([vec![2, 2], vec![2], vec![5]])).unwrap();
        assert_eq!(r.rigidity, Rigidity::Nonrigid);
        assert_eq!(r.clause, "rt-2");
        match &r.flexibility {
            Flexibility::Flexible(tags) => assert!(tags.contains("H2")),
            other => panic!("expected flexible, got {other:?}"),
        }
        assert_eq!(r.ml, MlVerdict::GroundField);
    }

    #[test]
    fn rigid_not_factorial_example() {
        // x^6 y^3 + z^6 u^3 + v^6 w^3
        let r = classify_hypersurface(&hyp([vec![6, 3], vec![6, 3], vec![6, 3]])).unwrap();
        assert_eq!(r.rigidity, Rigidity::Rigid);
        assert!(!r.factorial.is_factorial());
    }

    #[test]
    fn type_b_proven_example() {
        // t^4 x^2 + y^2 + z^5 → Type B, k_0 = 1, k_1 = n_1 = 1, ML = K[t]
        let r = classify_hypersurface(&hyp([vec![4, 2], vec![2], vec![5]])).unwrap();
        assert_eq!(r.rigidity, Rigidity::Nonrigid);
        assert_eq!(r.clause, "rt-2");
        assert_eq!(
            r.flexibility,
            Flexibility::IntermediateB { k0: 1, k1: 1, proven: true }
        );
        assert_eq!(r.ml, MlVerdict::Generators(vec!["T_01".into()]));
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn type_a_proven_example() {
        // 1 + x y^2 + z^3 → Type A, k = 1, ML = K[y]
        let h = TrinomialHypersurface::unit_coeffs([vec![], vec![1, 2], vec![3]], 0).unwrap();
        let r = classify_hypersurface(&h).unwrap();
        assert_eq!(r.rigidity, Rigidity::Nonrigid);
        assert_eq!(r.clause, "rt-1");
        assert_eq!(r.flexibility, Flexibility::IntermediateA { k: 1, proven: true });
        assert_eq!(r.ml, MlVerdict::Generators(vec!["T_12".into()]));
    }

    #[test]
    fn affine_space_step() {
        // t^2 x^3 + y + z^5: group of size 1, exponent 1
        let r = classify_hypersurface(&hyp([vec![2, 3], vec![1], vec![5]])).unwrap();
        assert_eq!(r.flexibility, Flexibility::AffineSpace);
        assert_eq!(r.ml, MlVerdict::GroundField);
        assert_eq!(r.clause, "rt-1");
    }

    #[test]
    fn h_type_matching_table() {
        // x^2 + y^2 + z^2: H2 and H5
        let m = match_flexible_type(&hyp([vec![2], vec![2], vec![2]]));
        assert!(m.tags.contains("H2") && m.tags.contains("H5"));
        // 1 + T11 T12 + T21^3: H1
        let h =
            TrinomialHypersurface::unit_coeffs([vec![], vec![1, 1], vec![3]], 0).unwrap();
        assert!(match_flexible_type(&h).tags.contains("H1"));
        // 1 + T11^2 + T21^2: not H2 (empty group)
        let h =
            TrinomialHypersurface::unit_coeffs([vec![], vec![2], vec![2]], 0).unwrap();
        assert!(!match_flexible_type(&h).tags.contains("H2"));
        // ...and in fact rigid
        let r = classify_hypersurface(&h).unwrap();
        assert_eq!(r.rigidity, Rigidity::Rigid);
    }

    #[test]
    fn sign_obstructed_witness_reports_scaling() {
        // x^2 + y^2 + z^3: flexible H-types don't match (odd z³ … check),
        // clause rt-2 holds but needs scaling
        let r = classify_hypersurface(&hyp([vec![2], vec![2], vec![3]])).unwrap();
        assert_eq!(r.rigidity, Rigidity::Nonrigid);
        assert_eq!(r.clause, "rt-2");
        let w = &r.witnesses[0];
        assert!(w.get("needs_scaling").is_some());
        assert!(w.get("witness_on_scaled_model").is_some());
    }

    #[test]
    fn slack_hypersurface_nonrigid() {
        let h = TrinomialHypersurface::unit_coeffs([vec![2], vec![3], vec![7]], 1).unwrap();
        let r = classify_hypersurface(&h).unwrap();
        assert_eq!(r.rigidity, Rigidity::Nonrigid);
        assert_eq!(r.flexibility, Flexibility::Unclassified);
        assert_eq!(r.witnesses[0]["tag"], "slack-dS1");
    }

    #[test]
    fn variety_rigid_example() {
        // Type 1, r = 3, monomials (T11^2, T21 T22, T31^2), a = (1,2,3):
        // two groups lack exponent-1 variables → rigid
        let v = TrinomialVariety::new(
            VarietyKind::Type1 { a: vec![rat(1), rat(2), rat(3)] },
            vec![vec![2], vec![1, 1], vec![2]],
            0,
        )
        .unwrap();
        let r = classify_variety(&v).unwrap();
        assert_eq!(r.rigidity, Rigidity::Rigid);
        assert_eq!(r.ml, MlVerdict::FullRing);
    }

    #[test]
    fn variety_nonrigid_with_lift_witness() {
        // Type 1, r = 3, monomials (T11^2 T12, T21 T22^3, T31^5):
        // only groups 1 and 3 lack exponent-1?  group1 = (2,1): has 1;
        // instance: (T11² T12, T21 T22³, T31⁵) → groups (2,1),(1,3),(5)
        let v = TrinomialVariety::new(
            VarietyKind::Type1 { a: vec![rat(0), rat(1), rat(3)] },
            vec![vec![2, 1], vec![1, 3], vec![5]],
            0,
        )
        .unwrap();
        let r = classify_variety(&v).unwrap();
        assert_eq!(r.rigidity, Rigidity::Nonrigid);
        assert_eq!(r.clause, "ridfac-2");
        assert_eq!(r.witnesses[0]["tag"], "prodol-lift");
    }

    #[test]
    fn variety_slack_nonrigid() {
        let v = TrinomialVariety::new(
            VarietyKind::Type1 { a: vec![rat(1), rat(2), rat(3)] },
            vec![vec![2], vec![1, 1], vec![2]],
            1,
        )
        .unwrap();
        let r = classify_variety(&v).unwrap();
        assert_eq!(r.rigidity, Rigidity::Nonrigid);
        assert_eq!(r.clause, "ridfac-1");
        assert_eq!(r.witnesses[0]["tag"], "slack-dS1");
    }

    #[test]
    fn type2_nonfactorial_gate() {
        // Type 2 with non-coprime d_i: columns pairwise independent
        let v = TrinomialVariety::new(
            VarietyKind::Type2 {
                a: [
                    vec![rat(1), rat(0), rat(1), rat(1)],
                    vec![rat(0), rat(1), rat(1), rat(2)],
                ],
            },
            vec![vec![2], vec![2], vec![2], vec![3]],
            0,
        )
        .unwrap();
        let r = classify_variety(&v).unwrap();
        assert_eq!(r.flexibility, Flexibility::NotApplicable);
        assert!(r.notes[0].contains("not-applicable"));
    }

    #[test]
    fn type2_factorial_nonrigid_lift() {
        // Type 2, r = 3: exponents chosen with pairwise coprime gcds and
        // groups 2, 3 holding exponent-1 variables (≤ 2 exceptions)
        let v = TrinomialVariety::new(
            VarietyKind::Type2 {
                a: [
                    vec![rat(1), rat(0), rat(1), rat(1)],
                    vec![rat(0), rat(1), rat(1), rat(2)],
                ],
            },
            vec![vec![2], vec![3], vec![1, 2], vec![1, 5]],
            0,
        )
        .unwrap();
        assert!(v.is_factorial().is_factorial());
        let r = classify_variety(&v).unwrap();
        assert_eq!(r.rigidity, Rigidity::Nonrigid);
        assert_eq!(r.clause, "ridfac-3");
        assert_eq!(r.witnesses[0]["tag"], "prodol-lift");
    }

    #[test]
    fn r2_delegation_matches_hypersurface() {
        // Type 1, r = 2: T_1^2 - T_2^3 - 1 → hypersurface with free term
        let v = TrinomialVariety::new(
            VarietyKind::Type1 { a: vec![rat(0), rat(1)] },
            vec![vec![2], vec![3]],
            0,
        )
        .unwrap();
        let rv = classify_variety(&v).unwrap();
        let h = r2_hypersurface(&v).unwrap();
        let rh = classify_hypersurface(&h).unwrap();
        assert_eq!(rv.rigidity, rh.rigidity);
        assert_eq!(rv.clause, rh.clause);
        assert!(rv.notes.iter().any(|n| n.contains("delegated")));
    }

    #[test]
    fn report_json_shape() {
        let r = classify_hypersurface(&hyp([vec![2, 3], vec![5], vec![7]])).unwrap();
        let j = r.to_json();
        assert_eq!(j["rigidity"], "rigid");
        assert_eq!(j["clause"], "none");
        assert_eq!(j["ml"], "full-ring");
        assert_eq!(j["proven"], false);
        assert!(j["witnesses"].as_array().unwrap().is_empty());
    }
}
