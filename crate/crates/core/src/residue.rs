//! Iterated residues at infinity of rational functions with linear poles.
//!
//! For one variable `y`, `Res_{y=∞} f` is minus the coefficient of `y^{-1}`
//! in the expansion of `f` at `y = ∞`. Each pole factor `c*y + r` is expanded
//! as `(c*y)^{-1} * sum_K (-r/c)^K y^{-K}`, truncated at the order the
//! numerator degree makes relevant, so the computation is finite and exact.
//!
//! An order `[x_1, ..., x_n]` is the elimination order: `x_1` is integrated
//! out first (the innermost residue), treating the remaining variables as
//! constants, so it dominates at infinity (`|x_1| >> ... >> |x_n|`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{PolyError, Polynomial, Rational, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("factor {factor} involves {var}, which is not in the residue order")]
    NotNormalCrossing { factor: String, var: VarId },
    #[error("numerator involves residue variable {0} that is not in the residue order")]
    UnorderedVariable(VarId),
    #[error("residue variable {0} appears twice in the order")]
    RepeatedVariable(VarId),
    #[error("leftover parameter factors do not divide the result")]
    NotPolynomial,
    #[error("{0} is not a simple pole at zero")]
    NotSimplePole(VarId),
    #[error("invalid linear factor: {0}")]
    InvalidFactor(String),
}

/// `sum c_v * v + constant`, with `v` residue variables, `c_v` rational and
/// `constant` a polynomial in parameters only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor {
    linear: BTreeMap<VarId, Rational>,
    constant: Polynomial,
}

impl LinearFactor {
    pub fn new(
        linear: BTreeMap<VarId, Rational>,
        constant: Polynomial,
    ) -> Result<Self, ResidueError> {
        let linear: BTreeMap<_, _> = linear.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if let Some(v) = linear.keys().find(|v| !v.is_residue()) {
            return Err(ResidueError::InvalidFactor(format!("{v} is a parameter")));
        }
        if constant.has_residue_vars() {
            return Err(ResidueError::InvalidFactor(format!(
                "constant part {constant} involves residue variables"
            )));
        }
        if linear.is_empty() && constant.is_zero() {
            return Err(ResidueError::InvalidFactor("zero factor".into()));
        }
        Ok(LinearFactor { linear, constant })
    }

    /// Reads a polynomial of the form `sum c_v v + (parameter polynomial)`.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self, ResidueError> {
        let mut linear = BTreeMap::new();
        let mut constant = Polynomial::zero();
        for (powers, c) in p.terms() {
            match powers
                .iter()
                .filter(|(v, _)| v.is_residue())
                .collect::<Vec<_>>()[..]
            {
                [] => constant = &constant + &Polynomial::monomial(c.clone(), &powers),
                [&(v, 1)] if powers.len() == 1 => {
                    linear.insert(v, c.clone());
                }
                _ => {
                    return Err(ResidueError::InvalidFactor(format!(
                        "{p} is not linear with constant coefficients in residue variables"
                    )))
                }
            }
        }
        Self::new(linear, constant)
    }

    /// `t - z` style factor from a single residue variable.
    pub fn param_minus(param: Polynomial, var: VarId) -> Self {
        let mut lin = BTreeMap::new();
        lin.insert(var, -Rational::one());
        Self::new(lin, param).expect("valid factor")
    }

    pub fn linear_part(&self) -> &BTreeMap<VarId, Rational> {
        &self.linear
    }

    pub fn constant_part(&self) -> &Polynomial {
        &self.constant
    }

    pub fn coefficient(&self, v: VarId) -> Option<&Rational> {
        self.linear.get(&v)
    }

    pub fn residue_vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.linear.keys().copied()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = self.constant.clone();
        for (v, c) in &self.linear {
            p = &p + &Polynomial::var(*v).scale(c);
        }
        p
    }

    /// Drops the given variables (sets them to zero). `None` if the factor
    /// becomes identically zero.
    fn without(&self, vars: &BTreeSet<VarId>) -> Option<LinearFactor> {
        let linear: BTreeMap<_, _> = self
            .linear
            .iter()
            .filter(|(v, _)| !vars.contains(v))
            .map(|(v, c)| (*v, c.clone()))
            .collect();
        LinearFactor::new(linear, self.constant.clone()).ok()
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_polynomial())
    }
}

/// `prefactor * numerator / prod factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalExpr {
    pub numerator: Polynomial,
    pub denominator: Vec<(LinearFactor, u32)>,
    pub prefactor: Rational,
}

impl RationalExpr {
    pub fn new(numerator: Polynomial, denominator: Vec<(LinearFactor, u32)>) -> Self {
        RationalExpr {
            numerator,
            denominator,
            prefactor: Rational::one(),
        }
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self::new(p, Vec::new())
    }

    pub fn with_prefactor(mut self, c: Rational) -> Self {
        self.prefactor *= c;
        self
    }

    /// Residue variables occurring anywhere in the expression.
    pub fn residue_vars(&self) -> BTreeSet<VarId> {
        let mut out: BTreeSet<VarId> = self
            .numerator
            .vars()
            .iter()
            .copied()
            .filter(VarId::is_residue)
            .collect();
        for (f, _) in &self.denominator {
            out.extend(f.residue_vars());
        }
        out
    }

    /// Number of denominator factors counted with multiplicity.
    pub fn pole_count(&self) -> u32 {
        self.denominator.iter().map(|(_, m)| m).sum()
    }

    /// True if every pole factor involves at most one residue variable.
    pub fn is_normal_crossing(&self) -> bool {
        self.denominator.iter().all(|(f, _)| f.linear.len() <= 1)
    }

    /// Divides numerator factors out of matching denominator factors where the
    /// division is exact.
    pub fn cancel_factors(&self) -> RationalExpr {
        let mut num = self.numerator.clone();
        let mut den = Vec::new();
        for (f, m) in &self.denominator {
            let fp = f.to_polynomial();
            let mut left = *m;
            while left > 0 {
                match num.exact_div(&fp) {
                    Ok(q) => {
                        num = q;
                        left -= 1;
                    }
                    Err(_) => break,
                }
            }
            if left > 0 {
                den.push((f.clone(), left));
            }
        }
        RationalExpr {
            numerator: num,
            denominator: den,
            prefactor: self.prefactor.clone(),
        }
    }
}

/// Residue at infinity in one variable. Returns the new numerator and the
/// factors that do not involve `y`.
fn residue_in(
    y: VarId,
    numerator: &Polynomial,
    factors: Vec<(LinearFactor, u32)>,
) -> (Polynomial, Vec<(LinearFactor, u32)>) {
    let (with_y, rest): (Vec<_>, Vec<_>) = factors
        .into_iter()
        .partition(|(f, _)| f.linear.contains_key(&y));
    let m: u32 = with_y.iter().map(|(_, k)| k).sum();
    let ncoeffs = numerator.coefficients_in(y);
    let kmax = ncoeffs.len() as i64 - m as i64; // deg_y N - m + 1
    if m == 0 || kmax < 0 {
        return (Polynomial::zero(), rest);
    }
    let kmax = kmax as usize;

    let mut scale = -Rational::one();
    let mut series = vec![Polynomial::zero(); kmax + 1];
    series[0] = Polynomial::one();
    for (f, mult) in &with_y {
        let c = f.linear[&y].clone();
        let mut r_lin = f.linear.clone();
        r_lin.remove(&y);
        let r = LinearFactor {
            linear: r_lin,
            constant: f.constant.clone(),
        }
        .to_polynomial();
        let q = r.scale(&(-c.recip()));
        for _ in 0..*mult {
            scale /= &c;
            if q.is_zero() {
                continue;
            }
            for k in 1..=kmax {
                let prev = &q * &series[k - 1];
                series[k] = &series[k] + &prev;
            }
        }
    }

    let mut acc = Polynomial::zero();
    for (e, ne) in ncoeffs.iter().enumerate() {
        if ne.is_zero() || e + 1 < m as usize {
            continue;
        }
        let k = e + 1 - m as usize;
        acc = &acc + &(ne * &series[k]);
    }
    (acc.scale(&scale), rest)
}

/// Iterated residue at infinity, eliminating variables in `order`.
pub fn residue_at_infinity(
    expr: &RationalExpr,
    order: &[VarId],
) -> Result<Polynomial, ResidueError> {
    let ordered: BTreeSet<VarId> = order.iter().copied().collect();
    if ordered.len() != order.len() {
        let mut seen = BTreeSet::new();
        let dup = order.iter().find(|v| !seen.insert(**v)).unwrap();
        return Err(ResidueError::RepeatedVariable(*dup));
    }
    for (f, _) in &expr.denominator {
        if let Some(v) = f.residue_vars().find(|v| !ordered.contains(v)) {
            return Err(ResidueError::NotNormalCrossing {
                factor: f.to_string(),
                var: v,
            });
        }
    }
    if let Some(v) = expr
        .numerator
        .vars()
        .iter()
        .find(|v| v.is_residue() && !ordered.contains(v))
    {
        return Err(ResidueError::UnorderedVariable(*v));
    }

    let mut num = expr.numerator.clone();
    let mut factors = expr.denominator.clone();
    for &y in order {
        if num.is_zero() {
            return Ok(Polynomial::zero());
        }
        let (n, rest) = residue_in(y, &num, factors);
        num = n;
        factors = rest;
    }
    for (f, m) in &factors {
        let fp = f.to_polynomial();
        for _ in 0..*m {
            num = num.exact_div(&fp).map_err(|e| match e {
                PolyError::NotDivisible | PolyError::DivisionByZero => ResidueError::NotPolynomial,
            })?;
        }
    }
    Ok(num.scale(&expr.prefactor))
}

/// Takes residues at the simple poles `v = 0` for each listed variable:
/// removes the standalone factors, sets the variables to zero, and flips the
/// sign once per variable.
pub fn simplify_simple_poles(
    expr: &RationalExpr,
    vars: &[VarId],
) -> Result<RationalExpr, ResidueError> {
    if vars.is_empty() {
        return Ok(expr.clone());
    }
    let set: BTreeSet<VarId> = vars.iter().copied().collect();
    let mut prefactor = expr.prefactor.clone();
    let mut found: BTreeSet<VarId> = BTreeSet::new();
    let mut den = Vec::new();
    for (f, m) in &expr.denominator {
        let standalone = f.constant.is_zero() && f.linear.len() == 1;
        let v = *f.linear.keys().next().unwrap_or(&VarId::T(1));
        if standalone && set.contains(&v) {
            if *m != 1 || !found.insert(v) {
                return Err(ResidueError::NotSimplePole(v));
            }
            prefactor /= &f.linear[&v];
            continue;
        }
        match f.without(&set) {
            Some(g) => den.push((g, *m)),
            None => {
                let v = f.linear.keys().find(|v| set.contains(v)).copied();
                return Err(ResidueError::NotSimplePole(v.unwrap_or(vars[0])));
            }
        }
    }
    if let Some(v) = vars.iter().find(|v| !found.contains(v)) {
        return Err(ResidueError::NotSimplePole(*v));
    }
    let zero: BTreeMap<VarId, Polynomial> =
        set.iter().map(|v| (*v, Polynomial::zero())).collect();
    if vars.len() % 2 == 1 {
        prefactor = -prefactor;
    }
    Ok(RationalExpr {
        numerator: expr.numerator.substitute(&zero),
        denominator: den,
        prefactor,
    })
}

/// True iff every order gives the same residue.
pub fn check_order_independence(
    expr: &RationalExpr,
    orders: &[Vec<VarId>],
) -> Result<bool, ResidueError> {
    let mut first: Option<Polynomial> = None;
    for o in orders {
        let r = residue_at_infinity(expr, o)?;
        match &first {
            None => first = Some(r),
            Some(f) if *f != r => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}
