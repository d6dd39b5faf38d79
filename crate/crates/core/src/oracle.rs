//! Fixed-point localization.
//!
//! Torus fixed points are coordinate flags. A flag is described by slots
//! `j = 1..d_k`, each carrying a weight `±t_{a_j}` of `W`; slots
//! `d_{m-1} < j <= d_m` span the `m`-th step. The tangent weights at a point
//! are read off the roots of the ambient group: a root is tangent when its
//! root vector moves some weight of `W` strictly down the flag.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::{Polynomial, Rational, VarId};
use crate::spaces::{check_class, Ambient, SpaceError, SpaceSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("fixed-point sum is not a polynomial")]
    NotPolynomial,
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A torus fixed point: where each z goes, and the tangent weights there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub assignment: BTreeMap<VarId, Polynomial>,
    pub tangent_weights: Vec<Polynomial>,
}

type Weight = Vec<i32>;

fn unit(n: usize, i: usize, c: i32) -> Weight {
    let mut w = vec![0; n];
    w[i] = c;
    w
}

fn ambient_weights(spec: &SpaceSpec) -> Vec<Weight> {
    let n = spec.n() as usize;
    let mut out: Vec<Weight> = (0..n).map(|i| unit(n, i, 1)).collect();
    if spec.family().ambient() != Ambient::A {
        out.extend((0..n).map(|i| unit(n, i, -1)));
    }
    if spec.family().ambient() == Ambient::B {
        out.push(vec![0; n]);
    }
    out
}

fn roots(spec: &SpaceSpec) -> Vec<Weight> {
    let n = spec.n() as usize;
    let ambient = spec.family().ambient();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut w = vec![0; n];
            w[i] = 1;
            w[j] = -1;
            out.push(w);
            if ambient != Ambient::A && i < j {
                for s in [1, -1] {
                    let mut w = vec![0; n];
                    w[i] = s;
                    w[j] = s;
                    out.push(w);
                }
            }
        }
        match ambient {
            Ambient::C => {
                out.push(unit(n, i, 2));
                out.push(unit(n, i, -2));
            }
            Ambient::B => {
                out.push(unit(n, i, 1));
                out.push(unit(n, i, -1));
            }
            _ => {}
        }
    }
    out
}

fn to_poly(w: &[i32]) -> Polynomial {
    let mut p = Polynomial::zero();
    for (i, &c) in w.iter().enumerate() {
        if c != 0 {
            p = &p + &Polynomial::var(VarId::t(i as u16 + 1)).scale(&crate::poly::int(c as i64));
        }
    }
    p
}

/// Slot data of every fixed point: `(index, sign)` per slot.
fn slot_patterns(spec: &SpaceSpec) -> Vec<Vec<(usize, i32)>> {
    let n = spec.n() as usize;
    let d: Vec<usize> = spec.d().iter().map(|&x| x as usize).collect();
    let signed = spec.family().ambient() != Ambient::A;

    // Ordered choices of disjoint subsets, increasing within each step.
    let mut chains: Vec<Vec<usize>> = vec![Vec::new()];
    let mut prev = 0;
    for &dm in &d {
        let size = dm - prev;
        let mut next = Vec::new();
        for chain in &chains {
            let free: Vec<usize> = (0..n).filter(|i| !chain.contains(i)).collect();
            for subset in combinations(&free, size) {
                let mut c = chain.clone();
                c.extend(subset);
                next.push(c);
            }
        }
        chains = next;
        prev = dm;
    }

    let top = *d.last().unwrap();
    let mut out = Vec::new();
    for chain in chains {
        if signed {
            for mask in 0..(1u32 << top) {
                out.push(
                    chain
                        .iter()
                        .enumerate()
                        .map(|(j, &a)| (a, if mask >> j & 1 == 1 { -1 } else { 1 }))
                        .collect(),
                );
            }
        } else {
            out.push(chain.iter().map(|&a| (a, 1)).collect());
        }
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rest in combinations(&items[1..], k - 1) {
        let mut c = vec![items[0]];
        c.extend(rest);
        out.push(c);
    }
    out.extend(combinations(&items[1..], k));
    out
}

fn fixed_point(spec: &SpaceSpec, slots: &[(usize, i32)], roots: &[Weight]) -> FixedPoint {
    let n = spec.n() as usize;
    let d = spec.d();
    let k = d.len() as u32;
    let isotropic = spec.family().ambient() != Ambient::A;

    let mut level: HashMap<Weight, u32> = ambient_weights(spec)
        .into_iter()
        .map(|w| (w, k + 1))
        .collect();
    let mut step = 1u32;
    for (j, &(a, s)) in slots.iter().enumerate() {
        while j >= d[step as usize - 1] as usize {
            step += 1;
        }
        level.insert(unit(n, a, s), step);
        if isotropic {
            level.insert(unit(n, a, -s), 2 * k + 2 - step);
        }
    }

    let mut tangent = Vec::new();
    for x in roots {
        let raises = level.iter().any(|(a, &la)| {
            let b: Weight = a.iter().zip(x).map(|(p, q)| p + q).collect();
            matches!(level.get(&b), Some(&lb) if lb > la)
        });
        if raises {
            tangent.push(-to_poly(x));
        }
    }

    let mut assignment = BTreeMap::new();
    for (g, &dm) in d.iter().enumerate() {
        for j in 0..dm as usize {
            let (a, s) = slots[j];
            assignment.insert(VarId::z(g as u16 + 1, j as u16 + 1), to_poly(&unit(n, a, s)));
        }
    }
    FixedPoint {
        assignment,
        tangent_weights: tangent,
    }
}

/// Every torus fixed point of the space. For even orthogonal Grassmannians
/// both connected components are included.
pub fn fixed_points(spec: &SpaceSpec) -> Vec<FixedPoint> {
    let roots = roots(spec);
    slot_patterns(spec)
        .iter()
        .map(|s| fixed_point(spec, s, &roots))
        .collect()
}

pub fn point_count(spec: &SpaceSpec) -> usize {
    slot_patterns(spec).len()
}

/// Linear form scaled so its first nonzero coefficient is positive, with the
/// sign that was removed.
fn normalize(w: &Polynomial) -> (Polynomial, bool) {
    match w.terms().next() {
        Some((_, c)) if c < &Rational::zero() => (-w, true),
        _ => (w.clone(), false),
    }
}

/// `sum_p alpha|_p / e_p`, summed over the least common multiple of the
/// tangent Euler classes.
pub fn abbv_pushforward(spec: &SpaceSpec, alpha: &Polynomial) -> Result<Polynomial, OracleError> {
    check_class(spec, alpha)?;
    let points = fixed_points(spec);

    let mut keyed: Vec<(BTreeMap<String, u32>, bool)> = Vec::with_capacity(points.len());
    let mut forms: BTreeMap<String, Polynomial> = BTreeMap::new();
    let mut lcm: BTreeMap<String, u32> = BTreeMap::new();
    for p in &points {
        let mut mult: BTreeMap<String, u32> = BTreeMap::new();
        let mut negative = false;
        for w in &p.tangent_weights {
            let (f, flipped) = normalize(w);
            negative ^= flipped;
            let key = f.to_string();
            *mult.entry(key.clone()).or_default() += 1;
            forms.entry(key).or_insert(f);
        }
        for (key, &m) in &mult {
            let slot = lcm.entry(key.clone()).or_default();
            *slot = (*slot).max(m);
        }
        keyed.push((mult, negative));
    }

    let contributions: Vec<Polynomial> = points
        .par_iter()
        .zip(keyed.par_iter())
        .map(|(p, (mult, negative))| {
            let mut c = alpha.substitute(&p.assignment);
            for (key, &m) in &lcm {
                let missing = m - mult.get(key).copied().unwrap_or(0);
                if missing > 0 && !c.is_zero() {
                    c = &c * &forms[key].pow(missing);
                }
            }
            if *negative {
                -c
            } else {
                c
            }
        })
        .collect();

    let mut sum = Polynomial::zero();
    for c in &contributions {
        sum = &sum + c;
    }
    for (key, &m) in &lcm {
        for _ in 0..m {
            if sum.is_zero() {
                return Ok(sum);
            }
            sum = sum
                .exact_div(&forms[key])
                .map_err(|_| OracleError::NotPolynomial)?;
        }
    }
    Ok(sum)
}

/// `alpha(p) / e_p` summed at a numeric point of `t`, for spot checks.
pub fn abbv_at(spec: &SpaceSpec, alpha: &Polynomial, t: &[i64]) -> Option<Rational> {
    let point: BTreeMap<VarId, Rational> = t
        .iter()
        .enumerate()
        .map(|(i, &x)| (VarId::t(i as u16 + 1), Rational::from_integer(BigInt::from(x))))
        .collect();
    let mut acc = Rational::zero();
    for p in fixed_points(spec) {
        let num = alpha.substitute(&p.assignment).evaluate(&point)?;
        let mut den = Rational::one();
        for w in &p.tangent_weights {
            den *= w.evaluate(&point)?;
        }
        if den.is_zero() {
            return None;
        }
        acc += num / den;
    }
    Some(acc)
}
