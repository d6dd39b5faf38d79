//! Residue integrands for push-forwards along classical homogeneous spaces.
//!
//! Every family is treated as a quotient of `Hom(C^{d_k}, W)` (plus the
//! intermediate flag data) by `U(d_1) x ... x U(d_k)`. Poles are written as
//! `z - w` for the torus weights `w` of `W`, and the overall sign is
//! `(-1)^r` for `r` residue variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{is_symmetric, Polynomial, Rational, SymmetryAction, VarId};
use crate::residue::{
    residue_at_infinity, simplify_simple_poles, LinearFactor, RationalExpr, ResidueError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("invalid space: {0}")]
    InvalidSpec(String),
    #[error("class is not symmetric under the Weyl group (fails on block {block})")]
    NotWeylSymmetric { block: u16 },
    #[error("class involves {0}, which is not a variable of this space")]
    ForeignVariable(VarId),
    #[error("negative multiplicity for index pair ({0},{1})")]
    NegativeMultiplicity(u16, u16),
    #[error("residue variable {0} survived the residue")]
    ResidualVariable(VarId),
    #[error(transparent)]
    Residue(#[from] ResidueError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Gr,
    LG,
    OGeven,
    OGodd,
    FlagA,
    FlagC,
    /// Isotropic flags for a symmetric form on `C^{2n}`.
    FlagSym2n,
    /// Isotropic flags for a symmetric form on `C^{2n+1}`.
    FlagSym2n1,
}

/// The ambient representation `W` and its form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// `C^n`, no form.
    A,
    /// Symplectic `C^{2n}`.
    C,
    /// Symmetric `C^{2n}`.
    D,
    /// Symmetric `C^{2n+1}`.
    B,
}

impl Family {
    pub fn ambient(self) -> Ambient {
        match self {
            Family::Gr | Family::FlagA => Ambient::A,
            Family::LG | Family::FlagC => Ambient::C,
            Family::OGeven | Family::FlagSym2n => Ambient::D,
            Family::OGodd | Family::FlagSym2n1 => Ambient::B,
        }
    }

    pub fn is_flag(self) -> bool {
        matches!(
            self,
            Family::FlagA | Family::FlagC | Family::FlagSym2n | Family::FlagSym2n1
        )
    }
}

/// A homogeneous space: family, dimension vector `d` and ambient size `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    family: Family,
    d: Vec<u16>,
    n: u16,
}

impl SpaceSpec {
    pub fn gr(k: u16, n: u16) -> Result<Self, SpaceError> {
        if k < 1 || k > n {
            return Err(SpaceError::InvalidSpec(format!("Gr({k},{n}) needs 1 <= k <= n")));
        }
        Ok(SpaceSpec { family: Family::Gr, d: vec![k], n })
    }

    pub fn lg(n: u16) -> Result<Self, SpaceError> {
        Self::maximal(Family::LG, n)
    }

    pub fn og_even(n: u16) -> Result<Self, SpaceError> {
        Self::maximal(Family::OGeven, n)
    }

    pub fn og_odd(n: u16) -> Result<Self, SpaceError> {
        Self::maximal(Family::OGodd, n)
    }

    fn maximal(family: Family, n: u16) -> Result<Self, SpaceError> {
        if n < 1 {
            return Err(SpaceError::InvalidSpec("n must be positive".into()));
        }
        Ok(SpaceSpec { family, d: vec![n], n })
    }

    pub fn flag(family: Family, d: Vec<u16>, n: u16) -> Result<Self, SpaceError> {
        if !family.is_flag() {
            return Err(SpaceError::InvalidSpec(format!("{family:?} is not a flag family")));
        }
        if d.is_empty() || d[0] < 1 || d.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SpaceError::InvalidSpec(format!(
                "dimension vector {d:?} must be positive and strictly increasing"
            )));
        }
        if *d.last().unwrap() > n {
            return Err(SpaceError::InvalidSpec(format!("d_k exceeds n = {n}")));
        }
        Ok(SpaceSpec { family, d, n })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn d(&self) -> &[u16] {
        &self.d
    }

    pub fn n(&self) -> u16 {
        self.n
    }

    /// Number of flag steps `k`.
    pub fn steps(&self) -> u16 {
        self.d.len() as u16
    }

    /// `d_k`.
    pub fn top(&self) -> u16 {
        *self.d.last().unwrap()
    }

    pub fn block_vars(&self, group: u16) -> Vec<VarId> {
        let size = self.d[group as usize - 1];
        (1..=size).map(|i| VarId::z(group, i)).collect()
    }

    pub fn last_block(&self) -> Vec<VarId> {
        self.block_vars(self.steps())
    }

    pub fn params(&self) -> Vec<VarId> {
        (1..=self.n).map(VarId::t).collect()
    }

    /// Torus weights of `W` as polynomials in `t`.
    pub fn ambient_weights(&self) -> Vec<Polynomial> {
        let t: Vec<Polynomial> = self.params().into_iter().map(Polynomial::var).collect();
        let mut out: Vec<Polynomial> = t.clone();
        if self.family.ambient() != Ambient::A {
            out.extend(t.iter().map(|x| -x));
        }
        if self.family.ambient() == Ambient::B {
            out.push(Polynomial::zero());
        }
        out
    }

    /// The generators of the Weyl group of `U(d_1) x ... x U(d_k)`.
    pub fn symmetry_actions(&self) -> Vec<SymmetryAction> {
        (1..=self.steps())
            .map(|g| SymmetryAction::Permute(self.block_vars(g)))
            .collect()
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds = || {
            self.d
                .iter()
                .map(u16::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self.family {
            Family::Gr => write!(f, "gr:{},{}", self.d[0], self.n),
            Family::LG => write!(f, "lg:{}", self.n),
            Family::OGeven => write!(f, "og:{},{}", self.n, 2 * self.n),
            Family::OGodd => write!(f, "og:{},{}", self.n, 2 * self.n + 1),
            Family::FlagA => write!(f, "flA:{};{}", ds(), self.n),
            Family::FlagC => write!(f, "flC:{};{}", ds(), self.n),
            Family::FlagSym2n => write!(f, "flB:{};{}", ds(), self.n),
            Family::FlagSym2n1 => write!(f, "flD:{};{}", ds(), self.n),
        }
    }
}

/// Multiset of ordered index pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexMultiset {
    entries: BTreeMap<(u16, u16), u32>,
}

impl IndexMultiset {
    pub fn insert(&mut self, pair: (u16, u16), mult: u32) {
        assert!(pair.0 != pair.1, "diagonal pair");
        if mult > 0 {
            *self.entries.entry(pair).or_default() += mult;
        }
    }

    pub fn multiplicity(&self, pair: (u16, u16)) -> u32 {
        self.entries.get(&pair).copied().unwrap_or(0)
    }

    /// Total size counted with multiplicity.
    pub fn cardinality(&self) -> u32 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u16, u16), u32)> + '_ {
        self.entries.iter().map(|(p, m)| (*p, *m))
    }

    pub fn union(&mut self, other: &IndexMultiset) {
        for (p, m) in other.iter() {
            self.insert(p, m);
        }
    }

    pub fn difference(&self, other: &IndexMultiset) -> Result<IndexMultiset, SpaceError> {
        let mut out = self.clone();
        for (p, m) in other.iter() {
            let have = out.multiplicity(p);
            if have < m {
                return Err(SpaceError::NegativeMultiplicity(p.0, p.1));
            }
            if have == m {
                out.entries.remove(&p);
            } else {
                out.entries.insert(p, have - m);
            }
        }
        Ok(out)
    }
}

/// Off-diagonal pairs `(i, j)` with `i <= rows`, `j <= cols`.
fn rectangle(rows: u16, cols: u16) -> IndexMultiset {
    let mut out = IndexMultiset::default();
    for i in 1..=rows {
        for j in 1..=cols {
            if i != j {
                out.insert((i, j), 1);
            }
        }
    }
    out
}

/// The multiset `I_Fl = A - B` indexing the surviving numerator factors.
pub fn index_set_ifl(d: &[u16]) -> Result<IndexMultiset, SpaceError> {
    let mut a = IndexMultiset::default();
    for &dm in d {
        a.union(&rectangle(dm, dm));
    }
    let mut b = IndexMultiset::default();
    for w in d.windows(2) {
        b.union(&rectangle(w[1], w[0]));
    }
    a.difference(&b)
}

pub fn weyl_order(spec: &SpaceSpec) -> u64 {
    spec.d
        .iter()
        .map(|&m| (1..=m as u64).product::<u64>())
        .product()
}

fn pair_product(vars: &[VarId], diagonal: bool) -> (Polynomial, u32) {
    let mut acc = Polynomial::one();
    let mut count = 0;
    for i in 0..vars.len() {
        let start = if diagonal { i } else { i + 1 };
        for j in start..vars.len() {
            acc = &acc * &(&Polynomial::var(vars[i]) + &Polynomial::var(vars[j]));
            count += 1;
        }
    }
    (acc, count)
}

/// The class cutting the isotropic locus out of `Hom(C^{d_k}, W)`, in the
/// last z-block, together with its number of linear factors.
fn lift_with_count(spec: &SpaceSpec) -> (Polynomial, u32) {
    let z = spec.last_block();
    match spec.family.ambient() {
        Ambient::A => (Polynomial::one(), 0),
        Ambient::C => pair_product(&z, false),
        Ambient::D | Ambient::B => pair_product(&z, true),
    }
}

pub fn fundamental_class_lift(spec: &SpaceSpec) -> Polynomial {
    lift_with_count(spec).0
}

/// Number of ways to embed each step of the flag into the next one,
/// `prod_{m<k} d_{m+1}! / (d_{m+1} - d_m)!`.
///
/// Collapsing every z-block onto the last one keeps only the residue at
/// `z_{m,j} = z_{m+1,j}`; the residues at the other embeddings
/// `z_{m,j} = z_{m+1,s(j)}` give the same contribution after the final
/// residue, so the collapsed integrand is weighted by this count.
pub fn collapse_multiplicity(spec: &SpaceSpec) -> u64 {
    spec.d
        .windows(2)
        .map(|w| ((w[1] - w[0]) as u64 + 1..=w[1] as u64).product::<u64>())
        .product()
}

/// `|B| = sum_{m<k} d_m (d_{m+1} - 1)`: the pairs cancelled between
/// consecutive steps when the z-blocks are collapsed. Each cancelled pole
/// `z_{m,j} - z_{m+1,i}` becomes `u_j - u_i`, opposite to the numerator's
/// `u_i - u_j`.
fn cancelled_pairs(d: &[u16]) -> u32 {
    d.windows(2)
        .map(|w| w[0] as u32 * (w[1] as u32 - 1))
        .sum()
}

/// A residue integrand together with the data needed to evaluate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrandPlan {
    /// Includes `sign * multiplicity / weyl_order` in its prefactor.
    pub expr: RationalExpr,
    pub residue_order: Vec<VarId>,
    pub weyl_order: u64,
    pub sign: i8,
    /// [`collapse_multiplicity`] for collapsed plans, 1 otherwise.
    pub multiplicity: u64,
    pub space: SpaceSpec,
    /// Linear factors in `z` the numerator carries besides the class.
    pub numerator_linear_factors: u32,
}

impl IntegrandPlan {
    /// Complex dimension read off the integrand.
    pub fn dimension(&self) -> i64 {
        self.expr.pole_count() as i64
            - self.numerator_linear_factors as i64
            - self.residue_order.len() as i64
    }

    pub fn evaluate(&self) -> Result<Polynomial, SpaceError> {
        let r = residue_at_infinity(&self.expr, &self.residue_order)?;
        if let Some(v) = r.vars().iter().find(|v| v.is_residue()) {
            return Err(SpaceError::ResidualVariable(*v));
        }
        Ok(r)
    }
}

/// Rejects classes with foreign variables or without the Weyl symmetry.
pub fn check_class(spec: &SpaceSpec, alpha: &Polynomial) -> Result<(), SpaceError> {
    for &v in alpha.vars() {
        let ok = match v {
            VarId::Z { group, slot } => {
                group >= 1 && group <= spec.steps() && slot <= spec.d[group as usize - 1]
            }
            VarId::T(i) => i <= spec.n,
            _ => false,
        };
        if !ok {
            return Err(SpaceError::ForeignVariable(v));
        }
    }
    for (g, action) in spec.symmetry_actions().iter().enumerate() {
        if !is_symmetric(alpha, action) {
            return Err(SpaceError::NotWeylSymmetric { block: g as u16 + 1 });
        }
    }
    Ok(())
}

/// Moves every z-block onto the last one: `z_{m,j} -> z_{k,j}`.
fn collapse_blocks(spec: &SpaceSpec, alpha: &Polynomial) -> Polynomial {
    let k = spec.steps();
    let mut bind = BTreeMap::new();
    for m in 1..k {
        for j in 1..=spec.d[m as usize - 1] {
            bind.insert(VarId::z(m, j), Polynomial::var(VarId::z(k, j)));
        }
    }
    alpha.substitute(&bind)
}

fn sign_of(r: usize) -> i8 {
    if r % 2 == 0 {
        1
    } else {
        -1
    }
}

fn prefactor(sign: i8, weyl: u64) -> Rational {
    Rational::new(BigInt::from(sign), BigInt::from(weyl))
}

/// Whether the weight-zero poles of odd orthogonal families are cancelled
/// against the lift before evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanForm {
    Cancelled,
    Uncancelled,
}

pub fn build_plan(spec: &SpaceSpec, alpha: &Polynomial) -> Result<IntegrandPlan, SpaceError> {
    build_plan_form(spec, alpha, PlanForm::Cancelled)
}

pub fn build_plan_form(
    spec: &SpaceSpec,
    alpha: &Polynomial,
    form: PlanForm,
) -> Result<IntegrandPlan, SpaceError> {
    check_class(spec, alpha)?;
    let k = spec.steps();
    let z = spec.last_block();
    let zp = |i: u16| Polynomial::var(VarId::z(k, i));

    let mut numerator = collapse_blocks(spec, alpha);
    let mut linear = 0u32;
    for ((i, j), m) in index_set_ifl(&spec.d)?.iter() {
        numerator = &numerator * &(&zp(i) - &zp(j)).pow(m);
        linear += m;
    }
    let (lift, lift_count) = lift_with_count(spec);
    numerator = &numerator * &lift;
    linear += lift_count;

    let cancel_zero = spec.family.ambient() == Ambient::B && form == PlanForm::Cancelled;
    if cancel_zero {
        // prod z_i from the lift cancels the weight-zero poles.
        let zprod = Polynomial::product(z.iter().map(|v| Polynomial::var(*v)).collect::<Vec<_>>().iter());
        numerator = numerator
            .exact_div(&zprod)
            .expect("lift contains every z_i");
        linear -= z.len() as u32;
    }

    let mut denominator = Vec::new();
    for &v in &z {
        for w in spec.ambient_weights() {
            if cancel_zero && w.is_zero() {
                continue;
            }
            let f = &Polynomial::var(v) - &w;
            denominator.push((LinearFactor::from_polynomial(&f)?, 1));
        }
    }

    let weyl = weyl_order(spec);
    let sign = sign_of(z.len() + cancelled_pairs(&spec.d) as usize);
    let multiplicity = collapse_multiplicity(spec);
    let expr = RationalExpr::new(numerator, denominator)
        .with_prefactor(prefactor(sign, weyl) * Rational::from_integer(BigInt::from(multiplicity)));
    Ok(IntegrandPlan {
        expr,
        residue_order: z,
        weyl_order: weyl,
        sign,
        multiplicity,
        space: spec.clone(),
        numerator_linear_factors: linear,
    })
}

/// `z_{m,j} = u_j - sum_{l=m}^{k-1} v_{l,j}`; `z_{k,j} = u_j`.
pub fn uv_substitution(spec: &SpaceSpec) -> BTreeMap<VarId, Polynomial> {
    let k = spec.steps();
    let mut out = BTreeMap::new();
    for m in 1..=k {
        for j in 1..=spec.d[m as usize - 1] {
            let mut p = Polynomial::var(VarId::u(j));
            for l in m..k {
                p = &p - &Polynomial::var(VarId::v(l, j));
            }
            out.insert(VarId::z(m, j), p);
        }
    }
    out
}

/// Inverse of [`uv_substitution`]: `u_j = z_{k,j}`, `v_{m,j} = z_{m+1,j} - z_{m,j}`.
pub fn zu_substitution(spec: &SpaceSpec) -> BTreeMap<VarId, Polynomial> {
    let k = spec.steps();
    let mut out = BTreeMap::new();
    for j in 1..=spec.top() {
        out.insert(VarId::u(j), Polynomial::var(VarId::z(k, j)));
    }
    for m in 1..k {
        for j in 1..=spec.d[m as usize - 1] {
            out.insert(
                VarId::v(m, j),
                &Polynomial::var(VarId::z(m + 1, j)) - &Polynomial::var(VarId::z(m, j)),
            );
        }
    }
    out
}

/// The v-block of the type-A change of variables, level by level.
pub fn v_block(spec: &SpaceSpec) -> Vec<VarId> {
    let mut out = Vec::new();
    for m in 1..spec.steps() {
        for j in 1..=spec.d[m as usize - 1] {
            out.push(VarId::v(m, j));
        }
    }
    out
}

pub fn u_block(spec: &SpaceSpec) -> Vec<VarId> {
    (1..=spec.top()).map(VarId::u).collect()
}

/// Type-A flag integrand over all z-variables. The first step is
/// eliminated first.
pub fn build_plan_flag_a_z(
    spec: &SpaceSpec,
    alpha: &Polynomial,
) -> Result<IntegrandPlan, SpaceError> {
    if spec.family != Family::FlagA {
        return Err(SpaceError::InvalidSpec(format!(
            "{spec} is not a type-A flag variety"
        )));
    }
    check_class(spec, alpha)?;
    let k = spec.steps();
    let zv = |m: u16, i: u16| Polynomial::var(VarId::z(m, i));

    let mut numerator = alpha.clone();
    let mut linear = 0u32;
    for m in 1..=k {
        let dm = spec.d[m as usize - 1];
        for i in 1..=dm {
            for j in 1..=dm {
                if i != j {
                    numerator = &numerator * &(&zv(m, i) - &zv(m, j));
                    linear += 1;
                }
            }
        }
    }
    let mut denominator = Vec::new();
    for m in 1..k {
        for i in 1..=spec.d[m as usize] {
            for j in 1..=spec.d[m as usize - 1] {
                denominator.push((LinearFactor::from_polynomial(&(&zv(m, j) - &zv(m + 1, i)))?, 1));
            }
        }
    }
    for l in 1..=spec.top() {
        for w in spec.ambient_weights() {
            denominator.push((LinearFactor::from_polynomial(&(&zv(k, l) - &w))?, 1));
        }
    }
    let order: Vec<VarId> = (1..=k).flat_map(|m| spec.block_vars(m)).collect();
    let weyl = weyl_order(spec);
    let sign = sign_of(order.len());
    let expr = RationalExpr::new(numerator, denominator).with_prefactor(prefactor(sign, weyl));
    Ok(IntegrandPlan {
        expr,
        residue_order: order,
        weyl_order: weyl,
        sign,
        multiplicity: 1,
        space: spec.clone(),
        numerator_linear_factors: linear,
    })
}

/// Type-A flag integrand over all z-variables, rewritten in `(u, v)`.
pub fn build_plan_unsimplified_flag_a(
    spec: &SpaceSpec,
    alpha: &Polynomial,
) -> Result<IntegrandPlan, SpaceError> {
    let plan = build_plan_flag_a_z(spec, alpha)?;
    let sub = uv_substitution(spec);
    let numerator = plan.expr.numerator.substitute(&sub);
    let denominator = plan
        .expr
        .denominator
        .iter()
        .map(|(f, m)| Ok((LinearFactor::from_polynomial(&f.to_polynomial().substitute(&sub))?, *m)))
        .collect::<Result<Vec<_>, ResidueError>>()?;
    let mut order = v_block(spec);
    // z_{m,j} = u_j - v_{m,j} - ... reverses the orientation once per v.
    let flips = order.len();
    order.extend(u_block(spec));
    let sign = plan.sign * sign_of(flips);
    let prefactor = if flips % 2 == 1 {
        -plan.expr.prefactor
    } else {
        plan.expr.prefactor
    };
    Ok(IntegrandPlan {
        expr: RationalExpr {
            numerator,
            denominator,
            prefactor,
        },
        residue_order: order,
        sign,
        ..plan
    })
}

/// Evaluates the unsimplified type-A plan over the full `(v, u)` order.
pub fn pushforward_unsimplified(
    spec: &SpaceSpec,
    alpha: &Polynomial,
) -> Result<Polynomial, SpaceError> {
    build_plan_unsimplified_flag_a(spec, alpha)?.evaluate()
}

/// Evaluates the unsimplified type-A plan by taking the v-residues at the
/// simple poles `v = 0`, weighting by [`collapse_multiplicity`], and then
/// taking the u-residues at infinity.
pub fn pushforward_via_simple_poles(
    spec: &SpaceSpec,
    alpha: &Polynomial,
) -> Result<Polynomial, SpaceError> {
    let plan = build_plan_unsimplified_flag_a(spec, alpha)?;
    let reduced = simplify_simple_poles(&plan.expr, &v_block(spec))?
        .cancel_factors()
        .with_prefactor(Rational::from_integer(BigInt::from(collapse_multiplicity(spec))));
    let r = residue_at_infinity(&reduced, &u_block(spec))?;
    if let Some(v) = r.vars().iter().find(|v| v.is_residue()) {
        return Err(SpaceError::ResidualVariable(*v));
    }
    Ok(r)
}

/// `int_X alpha` as a polynomial in `t`.
pub fn pushforward(spec: &SpaceSpec, alpha: &Polynomial) -> Result<Polynomial, SpaceError> {
    build_plan(spec, alpha)?.evaluate()
}

/// Complex dimension of the space.
pub fn dimension(spec: &SpaceSpec) -> i64 {
    build_plan(spec, &Polynomial::one())
        .expect("the unit class is always admissible")
        .dimension()
}
