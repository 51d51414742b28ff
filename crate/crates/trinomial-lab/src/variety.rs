//! Descriptors for trinomial hypersurfaces and trinomial varieties:
//! validation, defining equations, canonicalization, factoriality, fiber
//! varieties and m-suspensions.

use crate::error::{Error, Result};
use crate::lattice::gcd_tuple;
use crate::poly::{Mono, Poly};
use crate::quotient::PresentedRing;
use crate::rational::{format_rat, parse_rat, Rat};
use crate::space::{SpaceRef, VariableSpace};
use num::{Integer, One, Zero};
use serde_json::{json, Value};

/// Hypersurface `c_0 T_0^{l_0} + c_1 T_1^{l_1} + c_2 T_2^{l_2} = 0` in
/// `K^{n_0+n_1+n_2} x K^m`.  Group 0 may be empty, in which case the first
/// summand is the free term `c_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrinomialHypersurface {
    pub groups: [Vec<u32>; 3],
    pub coeffs: [Rat; 3],
    pub slack: usize,
}

impl TrinomialHypersurface {
    pub fn new(groups: [Vec<u32>; 3], coeffs: [Rat; 3], slack: usize) -> Result<Self> {
        if groups[1].is_empty() || groups[2].is_empty() {
            return Err(Error::InvalidDescriptor(
                "groups 1 and 2 must be nonempty".into(),
            ));
        }
        if groups.iter().flatten().any(|&l| l == 0) {
            return Err(Error::InvalidDescriptor("all exponents must be >= 1".into()));
        }
        if coeffs.iter().any(Rat::is_zero) {
            return Err(Error::InvalidDescriptor("coefficients must be nonzero".into()));
        }
        Ok(TrinomialHypersurface { groups, coeffs, slack })
    }

    /// Convenience constructor with unit coefficients.
    pub fn unit_coeffs(groups: [Vec<u32>; 3], slack: usize) -> Result<Self> {
        Ok(TrinomialHypersurface::new(
            groups,
            [Rat::one(), Rat::one(), Rat::one()],
            slack,
        )?)
    }

    pub fn space(&self) -> SpaceRef {
        VariableSpace::grouped(
            self.groups.iter().map(Vec::len).collect(),
            0,
            self.slack,
        )
    }

    pub fn n(&self, i: usize) -> usize {
        self.groups[i].len()
    }

    /// The monomial `T_i^{l_i}` (or the constant 1 for an empty group).
    pub fn group_monomial(&self, space: &SpaceRef, i: usize) -> Poly {
        let mut e = vec![0u32; space.len()];
        for (j, &l) in self.groups[i].iter().enumerate() {
            e[space.var(i, j + 1)] = l;
        }
        Poly::monomial(space, Mono(e), Rat::one())
    }

    pub fn defining_polynomial(&self) -> Poly {
        let space = self.space();
        let mut f = Poly::zero(&space);
        for i in 0..3 {
            f = &f + &self.group_monomial(&space, i).scale(&self.coeffs[i]);
        }
        f
    }

    pub fn defining_polynomials(&self) -> Vec<Poly> {
        vec![self.defining_polynomial()]
    }

    pub fn ring(&self) -> Result<PresentedRing> {
        PresentedRing::new(self.space(), self.defining_polynomials())
    }

    /// Per-group exponent gcds `d_i`; an empty group reports 0.
    pub fn group_gcds(&self) -> [u64; 3] {
        [
            gcd_tuple(&self.groups[0].iter().map(|&l| l as u64).collect::<Vec<_>>()),
            gcd_tuple(&self.groups[1].iter().map(|&l| l as u64).collect::<Vec<_>>()),
            gcd_tuple(&self.groups[2].iter().map(|&l| l as u64).collect::<Vec<_>>()),
        ]
    }

    pub fn is_factorial(&self) -> Factoriality {
        let d = self.group_gcds();
        if self.groups[0].is_empty() {
            if d[1] == 1 && d[2] == 1 {
                Factoriality::factorial("no free-term group; gcd of each nontrivial group is 1")
            } else {
                Factoriality::not_factorial(format!(
                    "no free-term group; group gcds ({}, {}) are not both 1",
                    d[1], d[2]
                ))
            }
        } else if d[0].gcd(&d[1]) == 1 && d[0].gcd(&d[2]) == 1 && d[1].gcd(&d[2]) == 1 {
            Factoriality::factorial(format!(
                "group gcds ({}, {}, {}) are pairwise coprime",
                d[0], d[1], d[2]
            ))
        } else {
            Factoriality::not_factorial(format!(
                "group gcds ({}, {}, {}) are not pairwise coprime",
                d[0], d[1], d[2]
            ))
        }
    }

    /// Sort exponents within groups descending and order groups under a
    /// fixed total order, keeping the possibly-empty group in slot 0.
    /// Returns the canonical descriptor and the variable relabeling.
    pub fn canonical_form(&self) -> (TrinomialHypersurface, CanonicalMap) {
        // Sort each group's positions by descending exponent (stable).
        let mut sorted_groups: Vec<(Vec<u32>, Vec<usize>)> = Vec::with_capacity(3);
        for g in &self.groups {
            let mut idx: Vec<usize> = (0..g.len()).collect();
            idx.sort_by(|&a, &b| g[b].cmp(&g[a]).then(a.cmp(&b)));
            let exps: Vec<u32> = idx.iter().map(|&j| g[j]).collect();
            sorted_groups.push((exps, idx));
        }
        // Order the groups: slot 0 keeps group 0 when it is empty (the free
        // term has no symmetric partner); all other groups compare by
        // (size, sorted exponents, coefficient).
        let mut order: Vec<usize> = (0..3).collect();
        let key = |i: usize| {
            (
                sorted_groups[i].0.len(),
                sorted_groups[i].0.clone(),
                self.coeffs[i].clone(),
            )
        };
        if self.groups[0].is_empty() {
            order[1..].sort_by(|&a, &b| key(a).cmp(&key(b)));
        } else {
            order.sort_by(|&a, &b| key(a).cmp(&key(b)));
        }
        let canonical = TrinomialHypersurface {
            groups: [
                sorted_groups[order[0]].0.clone(),
                sorted_groups[order[1]].0.clone(),
                sorted_groups[order[2]].0.clone(),
            ],
            coeffs: [
                self.coeffs[order[0]].clone(),
                self.coeffs[order[1]].clone(),
                self.coeffs[order[2]].clone(),
            ],
            slack: self.slack,
        };
        // Build the original-variable -> canonical-variable map.
        let orig_space = self.space();
        let canon_space = canonical.space();
        let mut var_map = vec![0usize; orig_space.len()];
        let mut group_map = [0usize; 3];
        for (canon_g, &orig_g) in order.iter().enumerate() {
            group_map[orig_g] = canon_g;
            for (canon_j, &orig_j) in sorted_groups[orig_g].1.iter().enumerate() {
                var_map[orig_space.var(orig_g, orig_j + 1)] =
                    canon_space.var(canon_g, canon_j + 1);
            }
        }
        for k in 1..=self.slack {
            var_map[orig_space.slack_var(k)] = canon_space.slack_var(k);
        }
        (canonical, CanonicalMap { group_map, var_map })
    }

    /// Delete variable `(group, pos)` and divide its monomial by
    /// `T_{ij}^{l_ij}`; the group coefficient becomes a transcendental
    /// unit, recorded symbolically in the returned descriptor.
    pub fn fiber_variety(&self, group: usize, pos: usize) -> Result<FiberHypersurface> {
        if group > 2 || pos >= self.groups[group].len() {
            return Err(Error::InvalidVariable(format!(
                "no variable at group {group}, position {pos}"
            )));
        }
        let mut groups = self.groups.clone();
        groups[group].remove(pos);
        let mut coeffs = self.coeffs.clone();
        let mut unit_group = group;
        // An emptied group must sit in slot 0 (free-term position); if
        // another group already holds slot 0 empty this cannot happen since
        // only one group may be empty in a valid descriptor.
        if groups[group].is_empty() && group != 0 {
            if groups[0].is_empty() {
                return Err(Error::Precondition(
                    "deleting the variable would leave two free terms".into(),
                ));
            }
            groups.swap(0, group);
            coeffs.swap(0, group);
            unit_group = 0;
        }
        let surface = TrinomialHypersurface::new(groups, coeffs, self.slack)?;
        Ok(FiberHypersurface {
            surface,
            unit_group,
            deleted: (group, pos),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "hypersurface",
            "groups": [self.groups[0], self.groups[1], self.groups[2]],
            "coeffs": self.coeffs.iter().map(format_rat).collect::<Vec<_>>(),
            "slack": self.slack,
        })
    }
}

/// Variable relabeling produced by canonicalization: original group `i`
/// lands in canonical slot `group_map[i]`, original variable `v` becomes
/// canonical variable `var_map[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalMap {
    pub group_map: [usize; 3],
    pub var_map: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorialityVerdict {
    Factorial,
    NotFactorial,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factoriality {
    pub verdict: FactorialityVerdict,
    pub reason: String,
}

impl Factoriality {
    fn factorial(reason: impl Into<String>) -> Self {
        Factoriality {
            verdict: FactorialityVerdict::Factorial,
            reason: reason.into(),
        }
    }
    fn not_factorial(reason: impl Into<String>) -> Self {
        Factoriality {
            verdict: FactorialityVerdict::NotFactorial,
            reason: reason.into(),
        }
    }
    fn inapplicable(reason: impl Into<String>) -> Self {
        Factoriality {
            verdict: FactorialityVerdict::Inapplicable,
            reason: reason.into(),
        }
    }
    pub fn is_factorial(&self) -> bool {
        self.verdict == FactorialityVerdict::Factorial
    }
}

/// Fiber of a hypersurface over the deleted coordinate: the same trinomial
/// with one variable removed and its group's coefficient replaced by a
/// transcendental unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberHypersurface {
    pub surface: TrinomialHypersurface,
    /// Group whose coefficient must be read as a unit times the stored value.
    pub unit_group: usize,
    pub deleted: (usize, usize),
}

/// Trinomial variety input data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyKind {
    /// Groups `1..r`; `a` holds `r` pairwise distinct constants.
    Type1 { a: Vec<Rat> },
    /// Groups `0..r`; `a` is a 2 x (r+1) matrix with pairwise linearly
    /// independent columns.
    Type2 { a: [Vec<Rat>; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrinomialVariety {
    pub kind: VarietyKind,
    pub l: Vec<Vec<u32>>,
    pub slack: usize,
}

impl TrinomialVariety {
    pub fn new(kind: VarietyKind, l: Vec<Vec<u32>>, slack: usize) -> Result<Self> {
        if l.iter().any(Vec::is_empty) || l.iter().flatten().any(|&e| e == 0) {
            return Err(Error::InvalidDescriptor(
                "every group must be nonempty with exponents >= 1".into(),
            ));
        }
        match &kind {
            VarietyKind::Type1 { a } => {
                if a.len() != l.len() {
                    return Err(Error::InvalidDescriptor(format!(
                        "Type 1 needs one constant per group: {} constants, {} groups",
                        a.len(),
                        l.len()
                    )));
                }
                if a.len() < 2 {
                    return Err(Error::InvalidDescriptor("Type 1 needs r >= 2 groups".into()));
                }
                for i in 0..a.len() {
                    for j in 0..i {
                        if a[i] == a[j] {
                            return Err(Error::InvalidDescriptor(
                                "Type 1 constants must be pairwise distinct".into(),
                            ));
                        }
                    }
                }
            }
            VarietyKind::Type2 { a } => {
                let cols = l.len();
                if cols < 3 {
                    return Err(Error::InvalidDescriptor(
                        "Type 2 needs r >= 2, i.e. at least 3 groups".into(),
                    ));
                }
                if a[0].len() != cols || a[1].len() != cols {
                    return Err(Error::InvalidDescriptor(format!(
                        "Type 2 matrix must be 2 x {} to match the groups",
                        cols
                    )));
                }
                for i in 0..cols {
                    for j in 0..i {
                        let det = &a[0][i] * &a[1][j] - &a[0][j] * &a[1][i];
                        if det.is_zero() {
                            return Err(Error::InvalidDescriptor(format!(
                                "columns {j} and {i} of the matrix are linearly dependent"
                            )));
                        }
                    }
                }
            }
        }
        Ok(TrinomialVariety { kind, l, slack })
    }

    /// Index of the first group: 1 for Type 1, 0 for Type 2.
    pub fn first_group(&self) -> usize {
        match self.kind {
            VarietyKind::Type1 { .. } => 1,
            VarietyKind::Type2 { .. } => 0,
        }
    }

    /// The parameter r: Type 1 has groups `1..r`, Type 2 groups `0..r`.
    pub fn r(&self) -> usize {
        match self.kind {
            VarietyKind::Type1 { .. } => self.l.len(),
            VarietyKind::Type2 { .. } => self.l.len() - 1,
        }
    }

    pub fn space(&self) -> SpaceRef {
        VariableSpace::grouped(
            self.l.iter().map(Vec::len).collect(),
            self.first_group(),
            self.slack,
        )
    }

    /// The monomial `T_i^{l_i}`, with `i` an absolute group label.
    pub fn group_monomial(&self, space: &SpaceRef, i: usize) -> Poly {
        let q = self.first_group();
        let mut e = vec![0u32; space.len()];
        for (j, &l) in self.l[i - q].iter().enumerate() {
            e[space.var(i, j + 1)] = l;
        }
        Poly::monomial(space, Mono(e), Rat::one())
    }

    pub fn defining_polynomials(&self) -> Vec<Poly> {
        let space = self.space();
        match &self.kind {
            VarietyKind::Type1 { a } => {
                // g_i = T_i^{l_i} - T_{i+1}^{l_{i+1}} - (a_{i+1} - a_i),
                // groups labeled 1..r, so i runs over 1..r-1.
                (1..self.l.len())
                    .map(|i| {
                        let head = self.group_monomial(&space, i);
                        let tail = self.group_monomial(&space, i + 1);
                        let c = &a[i] - &a[i - 1];
                        &(&head - &tail) - &Poly::constant(&space, c)
                    })
                    .collect()
            }
            VarietyKind::Type2 { a } => {
                // g_i = det of the 3x3 matrix with first row
                // (T_i, T_{i+1}, T_{i+2}) and the matching matrix columns,
                // expanded along the first row; i runs over 0..r-2.
                (0..self.l.len() - 2)
                    .map(|i| {
                        let minor = |p: usize, q: usize| &a[0][p] * &a[1][q] - &a[0][q] * &a[1][p];
                        let t0 = self.group_monomial(&space, i).scale(&minor(i + 1, i + 2));
                        let t1 = self.group_monomial(&space, i + 1).scale(&minor(i, i + 2));
                        let t2 = self.group_monomial(&space, i + 2).scale(&minor(i, i + 1));
                        &(&t0 - &t1) + &t2
                    })
                    .collect()
            }
        }
    }

    pub fn ring(&self) -> Result<PresentedRing> {
        PresentedRing::new(self.space(), self.defining_polynomials())
    }

    pub fn group_gcds(&self) -> Vec<u64> {
        self.l
            .iter()
            .map(|g| gcd_tuple(&g.iter().map(|&l| l as u64).collect::<Vec<_>>()))
            .collect()
    }

    pub fn is_factorial(&self) -> Factoriality {
        if self.r() < 2 {
            return Factoriality::inapplicable("criterion inapplicable: needs r >= 2");
        }
        if self
            .l
            .iter()
            .any(|g| g.iter().any(|&l| g.len() as u64 * l as u64 <= 1))
        {
            return Factoriality::inapplicable(
                "criterion inapplicable: some group has n_i * l_ij <= 1",
            );
        }
        let d = self.group_gcds();
        match self.kind {
            VarietyKind::Type1 { .. } => {
                if d.iter().all(|&g| g == 1) {
                    Factoriality::factorial("all group gcds equal 1")
                } else {
                    Factoriality::not_factorial(format!("group gcds {:?} are not all 1", d))
                }
            }
            VarietyKind::Type2 { .. } => {
                let coprime = (0..d.len())
                    .all(|i| (0..i).all(|j| d[i].gcd(&d[j]) == 1));
                if coprime {
                    Factoriality::factorial(format!("group gcds {:?} are pairwise coprime", d))
                } else {
                    Factoriality::not_factorial(format!(
                        "group gcds {:?} are not pairwise coprime",
                        d
                    ))
                }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let (ty, a) = match &self.kind {
            VarietyKind::Type1 { a } => (
                1,
                json!(a.iter().map(format_rat).collect::<Vec<_>>()),
            ),
            VarietyKind::Type2 { a } => (
                2,
                json!([
                    a[0].iter().map(format_rat).collect::<Vec<_>>(),
                    a[1].iter().map(format_rat).collect::<Vec<_>>(),
                ]),
            ),
        };
        json!({
            "kind": "variety",
            "type": ty,
            "A": a,
            "l": self.l,
            "slack": self.slack,
        })
    }
}

/// Either flavor of descriptor, as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Descriptor {
    Hypersurface(TrinomialHypersurface),
    Variety(TrinomialVariety),
}

impl Descriptor {
    pub fn to_json(&self) -> Value {
        match self {
            Descriptor::Hypersurface(h) => h.to_json(),
            Descriptor::Variety(v) => v.to_json(),
        }
    }

    pub fn from_json(value: &Value) -> Result<Descriptor> {
        let kind = value
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidDescriptor("missing \"kind\"".into()))?;
        let slack = value
            .get("slack")
            .and_then(Value::as_u64)
            .unwrap_or(0) as usize;
        let exps = |v: &Value, what: &str| -> Result<Vec<u32>> {
            v.as_array()
                .ok_or_else(|| Error::InvalidDescriptor(format!("{what} must be an array")))?
                .iter()
                .map(|e| {
                    e.as_u64()
                        .and_then(|x| u32::try_from(x).ok())
                        .ok_or_else(|| {
                            Error::InvalidDescriptor(format!("{what} entries must be integers"))
                        })
                })
                .collect()
        };
        match kind {
            "hypersurface" => {
                let groups_v = value
                    .get("groups")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::InvalidDescriptor("missing \"groups\"".into()))?;
                if groups_v.len() != 3 {
                    return Err(Error::InvalidDescriptor(
                        "hypersurface needs exactly 3 groups".into(),
                    ));
                }
                let groups = [
                    exps(&groups_v[0], "group 0")?,
                    exps(&groups_v[1], "group 1")?,
                    exps(&groups_v[2], "group 2")?,
                ];
                let coeffs = match value.get("coeffs") {
                    None => [Rat::one(), Rat::one(), Rat::one()],
                    Some(c) => {
                        let arr = c.as_array().filter(|a| a.len() == 3).ok_or_else(|| {
                            Error::InvalidDescriptor("\"coeffs\" must list 3 rationals".into())
                        })?;
                        let mut out = [Rat::one(), Rat::one(), Rat::one()];
                        for (slot, v) in out.iter_mut().zip(arr) {
                            let s = v.as_str().ok_or_else(|| {
                                Error::InvalidDescriptor(
                                    "coefficients must be \"num/den\" strings".into(),
                                )
                            })?;
                            *slot = parse_rat(s)?;
                        }
                        out
                    }
                };
                Ok(Descriptor::Hypersurface(TrinomialHypersurface::new(
                    groups, coeffs, slack,
                )?))
            }
            "variety" => {
                let ty = value
                    .get("type")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::InvalidDescriptor("missing \"type\"".into()))?;
                let l: Vec<Vec<u32>> = value
                    .get("l")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::InvalidDescriptor("missing \"l\"".into()))?
                    .iter()
                    .map(|g| exps(g, "l"))
                    .collect::<Result<_>>()?;
                let a_val = value
                    .get("A")
                    .ok_or_else(|| Error::InvalidDescriptor("missing \"A\"".into()))?;
                let rats = |v: &Value| -> Result<Vec<Rat>> {
                    v.as_array()
                        .ok_or_else(|| Error::InvalidDescriptor("\"A\" must be an array".into()))?
                        .iter()
                        .map(|e| {
                            e.as_str()
                                .ok_or_else(|| {
                                    Error::InvalidDescriptor(
                                        "matrix entries must be \"num/den\" strings".into(),
                                    )
                                })
                                .and_then(parse_rat)
                        })
                        .collect()
                };
                let kind = match ty {
                    1 => VarietyKind::Type1 { a: rats(a_val)? },
                    2 => {
                        let rows = a_val.as_array().filter(|r| r.len() == 2).ok_or_else(|| {
                            Error::InvalidDescriptor("Type 2 \"A\" must have 2 rows".into())
                        })?;
                        VarietyKind::Type2 {
                            a: [rats(&rows[0])?, rats(&rows[1])?],
                        }
                    }
                    other => {
                        return Err(Error::InvalidDescriptor(format!(
                            "unknown variety type {other}"
                        )))
                    }
                };
                Ok(Descriptor::Variety(TrinomialVariety::new(kind, l, slack)?))
            }
            other => Err(Error::InvalidDescriptor(format!("unknown kind \"{other}\""))),
        }
    }

    pub fn defining_polynomials(&self) -> Vec<Poly> {
        match self {
            Descriptor::Hypersurface(h) => h.defining_polynomials(),
            Descriptor::Variety(v) => v.defining_polynomials(),
        }
    }

    pub fn space(&self) -> SpaceRef {
        match self {
            Descriptor::Hypersurface(h) => h.space(),
            Descriptor::Variety(v) => v.space(),
        }
    }

    pub fn ring(&self) -> Result<PresentedRing> {
        match self {
            Descriptor::Hypersurface(h) => h.ring(),
            Descriptor::Variety(v) => v.ring(),
        }
    }

    pub fn is_factorial(&self) -> Factoriality {
        match self {
            Descriptor::Hypersurface(h) => h.is_factorial(),
            Descriptor::Variety(v) => v.is_factorial(),
        }
    }
}

/// An m-suspension `V(y_1^{k_1}...y_m^{k_m} - f)` over a base.
#[derive(Debug, Clone)]
pub struct SuspensionSpec {
    /// Relations presenting the base's coordinate ring (empty for affine space).
    pub base: PresentedRing,
    pub f: Poly,
    pub weights: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible { reason: String },
    PossiblyReducible { reason: String },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

#[derive(Debug, Clone)]
pub struct Suspension {
    pub ring: PresentedRing,
    /// Indices of the new suspension variables in the extended space.
    pub new_vars: Vec<usize>,
    pub irreducibility: Irreducibility,
    /// Trinomial re-expression, when the base and `f` have that shape.
    pub reexpressed: Option<TrinomialHypersurface>,
}

/// Build the suspension ring `K[base][y_1..y_m] / (base relations,
/// y_1^{k_1}...y_m^{k_m} - f)` with an irreducibility report.
pub fn suspend(spec: &SuspensionSpec) -> Result<Suspension> {
    if spec.weights.is_empty() {
        return Err(Error::Precondition("a suspension needs m >= 1 weights".into()));
    }
    if spec.weights.iter().any(|&k| k == 0) {
        return Err(Error::Precondition("suspension weights must be positive".into()));
    }
    if spec.f.is_constant() {
        return Err(Error::Precondition("the suspension function must be nonconstant".into()));
    }
    if spec.f.space != *spec.base.space() {
        return Err(Error::SpaceMismatch);
    }
    let base_space = spec.base.space();
    let m = spec.weights.len();
    let mut names: Vec<String> = (0..base_space.len())
        .map(|v| base_space.name(v).to_string())
        .collect();
    for j in 1..=m {
        names.push(format!("y_{j}"));
    }
    let ext = VariableSpace::plain(names);
    let id_map: Vec<usize> = (0..base_space.len()).collect();
    let new_vars: Vec<usize> = (base_space.len()..ext.len()).collect();
    let mut weight_mono = Mono::unit(ext.len());
    for (j, &k) in spec.weights.iter().enumerate() {
        weight_mono.0[new_vars[j]] = k;
    }
    let mut relations: Vec<Poly> = spec
        .base
        .relations()
        .iter()
        .map(|g| g.map_vars(&ext, &id_map))
        .collect();
    let susp_rel = &Poly::monomial(&ext, weight_mono, Rat::one()) - &spec.f.map_vars(&ext, &id_map);
    relations.push(susp_rel);
    let ring = PresentedRing::new(ext.clone(), relations)?;

    let irreducibility = suspension_irreducibility(spec);
    let reexpressed = if spec.base.is_free() && irreducibility.is_irreducible() {
        reexpress_as_hypersurface(spec, &new_vars, &ext)
    } else {
        None
    };
    Ok(Suspension {
        ring,
        new_vars,
        irreducibility,
        reexpressed,
    })
}

/// Conservative irreducibility test for `y_1^{k_1}...y_m^{k_m} - f` over
/// an irreducible base: certainly irreducible when gcd(k_i) = 1, or when f
/// is not a constant times a p-th power for any prime p dividing the gcd
/// (a p-th root up to constant also witnesses every c*g^{2p} shape, so the
/// classical extra clause for 4 | d is covered by p = 2).
fn suspension_irreducibility(spec: &SuspensionSpec) -> Irreducibility {
    let d = gcd_tuple(&spec.weights.iter().map(|&k| k as u64).collect::<Vec<_>>());
    if d == 1 {
        return Irreducibility::Irreducible {
            reason: "gcd of the weights is 1".into(),
        };
    }
    if !spec.base.is_free() {
        return Irreducibility::PossiblyReducible {
            reason: format!(
                "gcd of the weights is {d} and the base is not an affine space; \
                 power detection runs on the ambient ring only"
            ),
        };
    }
    let mut p = 2u64;
    let mut rest = d;
    while rest > 1 {
        if rest % p == 0 {
            if spec.f.kth_root_up_to_constant(p as u32).is_some() {
                return Irreducibility::PossiblyReducible {
                    reason: format!("the function is a constant times a {p}-th power and {p} divides the weight gcd {d}"),
                };
            }
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    Irreducibility::Irreducible {
        reason: format!("the function is not a constant times a p-th power for any prime p dividing the weight gcd {d}"),
    }
}

/// When the base is an affine space and `-f` splits into at most two
/// disjoint monomials, the suspension is itself a trinomial hypersurface:
/// the suspension variables form one group and each monomial of `-f`
/// another; base variables not occurring in `f` become slack.
fn reexpress_as_hypersurface(
    spec: &SuspensionSpec,
    new_vars: &[usize],
    _ext: &SpaceRef,
) -> Option<TrinomialHypersurface> {
    let f = &spec.f;
    if f.num_terms() > 2 {
        return None;
    }
    let mut monos: Vec<(Vec<u32>, Rat)> = f
        .terms
        .iter()
        .map(|(mo, c)| (mo.0.clone(), -c.clone()))
        .collect();
    // Disjoint supports, each base variable in at most one monomial.
    let nbase = spec.base.space().len();
    let mut owner: Vec<Option<usize>> = vec![None; nbase];
    for (k, (e, _)) in monos.iter().enumerate() {
        for (v, &exp) in e.iter().enumerate() {
            if exp > 0 {
                if owner[v].is_some() {
                    return None;
                }
                owner[v] = Some(k);
            }
        }
    }
    // The relation y^k - f = y^k + sum(-f terms); normalize to three
    // groups.  A constant term of -f becomes the free term.
    monos.sort_by(|x, y| x.0.cmp(&y.0)); // constant (all-zero) first
    let susp_exps: Vec<u32> = spec.weights.clone();
    if monos.len() != 2 {
        // A binomial y^k - c*M is not a trinomial hypersurface.
        return None;
    }
    let (e0, c0) = (&monos[0].0, monos[0].1.clone());
    let (e1, c1) = (&monos[1].0, monos[1].1.clone());
    let g1: Vec<u32> = e1.iter().copied().filter(|&x| x > 0).collect();
    let (groups, coeffs) = if e0.iter().all(|&x| x == 0) {
        // free term + monomial + suspension monomial
        ([vec![], g1, susp_exps], [c0, c1, Rat::one()])
    } else {
        let g0: Vec<u32> = e0.iter().copied().filter(|&x| x > 0).collect();
        ([g0, g1, susp_exps], [c0, c1, Rat::one()])
    };
    let _ = new_vars;
    let slack = owner.iter().filter(|o| o.is_none()).count();
    TrinomialHypersurface::new(groups, coeffs, slack).ok()
}
