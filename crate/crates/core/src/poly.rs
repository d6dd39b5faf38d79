//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] stores its own variable table (sorted, containing exactly
//! the variables that occur) and a list of terms kept in descending
//! graded-lexicographic order. Two polynomials are equal iff their term lists
//! are equal, which the canonical form makes a plain slice comparison.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact coefficient field.
pub type Rational = BigRational;

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as an exact rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A named variable.
///
/// `Z`, `U` and `V` are residue variables (characters of the auxiliary torus
/// and the flag change of variables); `T` are the torus parameters the
/// final answer is expressed in. The derived order is the variable-table order
/// used for the graded-lexicographic term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    Z { group: u16, slot: u16 },
    U(u16),
    V { level: u16, slot: u16 },
    T(u16),
}

/// The block a variable belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarBlock {
    Z(u16),
    U,
    V(u16),
    T,
}

impl VarId {
    pub fn z(group: u16, slot: u16) -> Self {
        assert!(group >= 1 && slot >= 1, "variable indices start at 1");
        VarId::Z { group, slot }
    }

    pub fn t(slot: u16) -> Self {
        assert!(slot >= 1, "variable indices start at 1");
        VarId::T(slot)
    }

    pub fn u(slot: u16) -> Self {
        assert!(slot >= 1, "variable indices start at 1");
        VarId::U(slot)
    }

    pub fn v(level: u16, slot: u16) -> Self {
        assert!(level >= 1 && slot >= 1, "variable indices start at 1");
        VarId::V { level, slot }
    }

    pub fn block(&self) -> VarBlock {
        match *self {
            VarId::Z { group, .. } => VarBlock::Z(group),
            VarId::U(_) => VarBlock::U,
            VarId::V { level, .. } => VarBlock::V(level),
            VarId::T(_) => VarBlock::T,
        }
    }

    /// Residue variables are integrated out; parameters survive.
    pub fn is_residue(&self) -> bool {
        !matches!(self, VarId::T(_))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarId::Z { group, slot } => write!(f, "z[{group},{slot}]"),
            VarId::U(i) => write!(f, "u[{i}]"),
            VarId::V { level, slot } => write!(f, "v[{level},{slot}]"),
            VarId::T(i) => write!(f, "t[{i}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
}

type Exps = Box<[u32]>;

/// Sparse polynomial in named variables with exact rational coefficients.
#[derive(Clone)]
pub struct Polynomial {
    vars: Arc<[VarId]>,
    terms: Vec<(Exps, Rational)>,
    block_degrees: OnceLock<BTreeMap<VarBlock, u32>>,
}

/// Graded lexicographic comparison of two exponent vectors over one table.
fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn merge_tables(a: &Arc<[VarId]>, b: &Arc<[VarId]>) -> Arc<[VarId]> {
    if Arc::ptr_eq(a, b) || a[..] == b[..] {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out.into()
}

impl Polynomial {
    fn from_parts(vars: Arc<[VarId]>, terms: Vec<(Exps, Rational)>) -> Self {
        Polynomial {
            vars,
            terms,
            block_degrees: OnceLock::new(),
        }
    }

    /// Builds the canonical form from an unordered term collection.
    fn from_map(vars: Arc<[VarId]>, map: HashMap<Exps, Rational>) -> Self {
        let terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::from_unsorted(vars, terms)
    }

    fn from_unsorted(vars: Arc<[VarId]>, mut terms: Vec<(Exps, Rational)>) -> Self {
        terms.sort_unstable_by(|a, b| grlex(&b.0, &a.0));
        Self::from_parts(vars, terms).trimmed()
    }

    /// Drops variables that no longer occur.
    fn trimmed(self) -> Self {
        let n = self.vars.len();
        let mut used = vec![false; n];
        for (e, _) in &self.terms {
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    used[k] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return self;
        }
        let keep: Vec<usize> = (0..n).filter(|&k| used[k]).collect();
        let vars: Arc<[VarId]> = keep.iter().map(|&k| self.vars[k]).collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(e, c)| (keep.iter().map(|&k| e[k]).collect::<Exps>(), c))
            .collect();
        Self::from_parts(vars, terms)
    }

    pub fn zero() -> Self {
        Self::from_parts(Arc::from(Vec::new()), Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_parts(Arc::from(Vec::new()), vec![(Box::from([]), c)])
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(v: VarId) -> Self {
        Self::from_parts(Arc::from(vec![v]), vec![(Box::from([1u32]), Rational::one())])
    }

    /// `c * prod v^e` from a sparse list of powers.
    pub fn monomial(c: Rational, powers: &[(VarId, u32)]) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for &(v, e) in powers {
            *map.entry(v).or_default() += e;
        }
        let vars: Arc<[VarId]> = map.keys().copied().collect();
        let exps: Exps = map.values().copied().collect();
        Self::from_unsorted(vars, if c.is_zero() { vec![] } else { vec![(exps, c)] })
    }

    /// Linear form `constant + sum coeff * var`.
    pub fn linear(terms: &[(VarId, Rational)], constant: Rational) -> Self {
        let mut p = Self::constant(constant);
        for (v, c) in terms {
            p = &p + &(&Self::var(*v) * c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.vars.is_empty() && self.terms[0].1.is_one()
    }

    /// The value if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.vars.is_empty() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Variables that occur, in table order.
    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending graded-lex) order as sparse power lists.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<(VarId, u32)>, &Rational)> + '_ {
        self.terms.iter().map(move |(e, c)| {
            let powers = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(k, &x)| (self.vars[k], x))
                .collect();
            (powers, c)
        })
    }

    /// Leading coefficient in the graded-lex order.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(e, _)| e.iter().sum())
    }

    /// Degree of the lowest-degree term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.last().map(|(e, _)| e.iter().sum())
    }

    /// `Some(d)` when every term has total degree `d`; the zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match (self.total_degree(), self.min_degree()) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        match self.vars.binary_search(&v) {
            Ok(k) => self.terms.iter().map(|(e, _)| e[k]).max().unwrap_or(0),
            Err(_) => 0,
        }
    }

    /// Total degree restricted to the variables of one block.
    pub fn block_degree(&self, block: VarBlock) -> u32 {
        let cache = self.block_degrees.get_or_init(|| {
            let mut out: BTreeMap<VarBlock, u32> = BTreeMap::new();
            for (e, _) in &self.terms {
                let mut per: BTreeMap<VarBlock, u32> = BTreeMap::new();
                for (k, &x) in e.iter().enumerate() {
                    *per.entry(self.vars[k].block()).or_default() += x;
                }
                for (b, d) in per {
                    let slot = out.entry(b).or_default();
                    *slot = (*slot).max(d);
                }
            }
            out
        });
        cache.get(&block).copied().unwrap_or(0)
    }

    /// True if any residue variable (z, u, v) occurs.
    pub fn has_residue_vars(&self) -> bool {
        self.vars.iter().any(VarId::is_residue)
    }

    fn remapped(&self, table: &Arc<[VarId]>) -> Vec<(Exps, Rational)> {
        if Arc::ptr_eq(&self.vars, table) || self.vars[..] == table[..] {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| table.binary_search(v).expect("table is a superset"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0u32; table.len()];
                for (k, &x) in e.iter().enumerate() {
                    out[pos[k]] = x;
                }
                (out.into_boxed_slice(), c.clone())
            })
            .collect()
    }

    fn add_impl(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let table = merge_tables(&self.vars, &other.vars);
        let a = self.remapped(&table);
        let b = other.remapped(&table);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut ia = a.into_iter().peekable();
        let mut ib = b.into_iter().peekable();
        loop {
            let ord = match (ia.peek(), ib.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => grlex(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(ia.next().unwrap()),
                Ordering::Less => {
                    let (e, c) = ib.next().unwrap();
                    out.push((e, if negate_other { -c } else { c }));
                }
                Ordering::Equal => {
                    let (e, c1) = ia.next().unwrap();
                    let (_, c2) = ib.next().unwrap();
                    let c = if negate_other { c1 - c2 } else { c1 + c2 };
                    if !c.is_zero() {
                        out.push((e, c));
                    }
                }
            }
        }
        Self::from_parts(table, out).trimmed()
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let table = merge_tables(&self.vars, &other.vars);
        let a = self.remapped(&table);
        let b = other.remapped(&table);
        let mut map: HashMap<Exps, Rational> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                match map.get_mut(&e) {
                    Some(slot) => *slot += c,
                    None => {
                        map.insert(e, c);
                    }
                }
            }
        }
        Self::from_map(table, map)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        Self::from_parts(self.vars.clone(), terms)
    }

    pub fn pow(&self, mut n: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Polynomial>>(factors: I) -> Polynomial {
        factors.into_iter().fold(Polynomial::one(), |acc, f| &acc * f)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`:
    /// entry `e` is the coefficient of `v^e` (free of `v`).
    pub fn coefficients_in(&self, v: VarId) -> Vec<Polynomial> {
        let Ok(k) = self.vars.binary_search(&v) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(v) as usize;
        let rest: Arc<[VarId]> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &w)| w)
            .collect();
        let mut buckets: Vec<Vec<(Exps, Rational)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let reduced: Exps = e
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &x)| x)
                .collect();
            buckets[e[k] as usize].push((reduced, c.clone()));
        }
        buckets
            .into_iter()
            .map(|terms| Self::from_unsorted(rest.clone(), terms))
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients(v: VarId, coeffs: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero();
        let x = Polynomial::var(v);
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    /// Simultaneous substitution. Unbound variables are left untouched.
    pub fn substitute(&self, bindings: &BTreeMap<VarId, Polynomial>) -> Polynomial {
        let bound: Vec<usize> = (0..self.vars.len())
            .filter(|&k| bindings.contains_key(&self.vars[k]))
            .collect();
        if bound.is_empty() {
            return self.clone();
        }
        let free: Vec<usize> = (0..self.vars.len())
            .filter(|k| !bound.contains(k))
            .collect();
        let free_table: Arc<[VarId]> = free.iter().map(|&k| self.vars[k]).collect();

        // Group terms by their exponents on the bound variables so each power
        // product is formed once.
        let mut groups: BTreeMap<Vec<u32>, Vec<(Exps, Rational)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Vec<u32> = bound.iter().map(|&k| e[k]).collect();
            let rest: Exps = free.iter().map(|&k| e[k]).collect();
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        let mut powers: Vec<Vec<Polynomial>> = bound
            .iter()
            .map(|&k| vec![Polynomial::one(), bindings[&self.vars[k]].clone()])
            .collect();
        let mut acc = Polynomial::zero();
        for (key, rest_terms) in groups {
            let mut factor = Polynomial::one();
            for (slot, &e) in key.iter().enumerate() {
                let table = &mut powers[slot];
                while table.len() <= e as usize {
                    let next = &table[table.len() - 1] * &table[1];
                    table.push(next);
                }
                factor = &factor * &table[e as usize];
            }
            let rest = Self::from_unsorted(free_table.clone(), rest_terms);
            acc = &acc + &(&factor * &rest);
        }
        acc
    }

    pub fn substitute_var(&self, v: VarId, value: &Polynomial) -> Polynomial {
        let mut b = BTreeMap::new();
        b.insert(v, value.clone());
        self.substitute(&b)
    }

    /// Exact quotient `self / divisor`, failing if a remainder would be left.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        if let Some(c) = divisor.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        if divisor.terms.len() == 1 {
            return self.div_monomial(divisor);
        }
        // Recursive univariate division in the variable whose leading
        // coefficient in the divisor is simplest.
        let x = divisor
            .vars
            .iter()
            .copied()
            .min_by_key(|&v| {
                let cs = divisor.coefficients_in(v);
                let lc = cs.last().unwrap();
                (lc.num_terms(), cs.len())
            })
            .unwrap();
        let dcoeffs = divisor.coefficients_in(x);
        let m = dcoeffs.len() - 1;
        let lc = &dcoeffs[m];
        let mut rem = self.coefficients_in(x);
        if rem.len() < m + 1 {
            return Err(PolyError::NotDivisible);
        }
        let qlen = rem.len() - m;
        let mut quot = vec![Polynomial::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + m];
            if top.is_zero() {
                continue;
            }
            let q = top.exact_div(lc)?;
            for (j, dc) in dcoeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] = &rem[i + j] - &(&q * dc);
                }
            }
            quot[i] = q;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return Err(PolyError::NotDivisible);
        }
        Ok(Polynomial::from_coefficients(x, &quot))
    }

    fn div_monomial(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        let table = merge_tables(&self.vars, &divisor.vars);
        let (de, dc) = &divisor.remapped(&table)[0];
        let inv = dc.recip();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in self.remapped(&table) {
            let mut out = Vec::with_capacity(e.len());
            for (x, y) in e.iter().zip(de.iter()) {
                if x < y {
                    return Err(PolyError::NotDivisible);
                }
                out.push(x - y);
            }
            terms.push((out.into_boxed_slice(), c * &inv));
        }
        Ok(Self::from_unsorted(table, terms))
    }

    /// Evaluates every variable at a rational value; all variables must be bound.
    pub fn evaluate(&self, point: &BTreeMap<VarId, Rational>) -> Option<Rational> {
        let vals: Vec<&Rational> = self.vars.iter().map(|v| point.get(v)).collect::<Option<_>>()?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (k, &x) in e.iter().enumerate() {
                for _ in 0..x {
                    term *= vals[k];
                }
            }
            acc += term;
        }
        Some(acc)
    }

    /// Swaps two variables.
    pub fn swap_vars(&self, a: VarId, b: VarId) -> Polynomial {
        let mut bind = BTreeMap::new();
        bind.insert(a, Polynomial::var(b));
        bind.insert(b, Polynomial::var(a));
        self.substitute(&bind)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.vars[..] == other.vars[..] && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Canonical textual form: terms in descending graded-lex order, coefficients
/// as `p/q`, explicit `*` and `^`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let monomial_empty = e.iter().all(|&x| x == 0);
            if !abs.is_one() || monomial_empty {
                factors.push(if abs.is_integer() {
                    abs.numer().to_string()
                } else {
                    format!("{}/{}", abs.numer(), abs.denom())
                });
            }
            for (k, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(self.vars[k].to_string()),
                    _ => factors.push(format!("{}^{}", self.vars[k], x)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                let f: fn(&Polynomial, &Polynomial) -> Polynomial = $body;
                f(self, rhs)
            }
        }
        impl std::ops::$trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                std::ops::$trait::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl std::ops::Mul<&Rational> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Rational) -> Polynomial {
        self.scale(rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<VarId> for Polynomial {
    fn from(v: VarId) -> Self {
        Polynomial::var(v)
    }
}

/// `prod_{i<j} (x_i - x_j)`; the empty product is 1.
pub fn vandermonde(vars: &[VarId]) -> Polynomial {
    let mut acc = Polynomial::one();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            acc = &acc * &(&Polynomial::var(vars[i]) - &Polynomial::var(vars[j]));
        }
    }
    acc
}

/// A Weyl-group action on an ordered list of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetryAction {
    /// Symmetric group permuting the variables.
    Permute(Vec<VarId>),
    /// Hyperoctahedral group: permutations together with sign changes.
    SignedPermute(Vec<VarId>),
}

/// True iff `p` is fixed by every generator of `action`.
pub fn is_symmetric(p: &Polynomial, action: &SymmetryAction) -> bool {
    let (vars, signed) = match action {
        SymmetryAction::Permute(v) => (v, false),
        SymmetryAction::SignedPermute(v) => (v, true),
    };
    for w in vars.windows(2) {
        if p.swap_vars(w[0], w[1]) != *p {
            return false;
        }
    }
    if signed {
        for &v in vars {
            if p.substitute_var(v, &-Polynomial::var(v)) != *p {
                return false;
            }
        }
    }
    true
}
