//! Partitions and Schur polynomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::{vandermonde, Polynomial, VarId};

/// A weakly decreasing sequence of non-negative integers; trailing zeros are
/// dropped so that equal partitions compare equal regardless of padding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, String> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(format!("{parts:?} is not weakly decreasing"));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Parts padded with zeros to length `n` (which must be at least `len`).
    pub fn padded(&self, n: usize) -> Vec<u32> {
        assert!(n >= self.0.len(), "partition longer than {n}");
        let mut p = self.0.clone();
        p.resize(n, 0);
        p
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `size` with at most `max_parts` parts, in reverse
/// lexicographic order.
pub fn partitions(size: u32, max_parts: usize) -> Vec<Partition> {
    fn go(rem: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            cur.push(p);
            go(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, max_parts, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm; each step is a single transposition so parity flips.
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut even = true;
    let mut out = vec![(a.clone(), even)];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            even = !even;
            out.push((a.clone(), even));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `det(x_j^{e_i})` expanded over permutations.
pub fn alternant(exponents: &[u32], vars: &[VarId]) -> Polynomial {
    assert_eq!(exponents.len(), vars.len());
    let mut acc = Polynomial::zero();
    for (perm, even) in permutations(vars.len()) {
        let powers: Vec<(VarId, u32)> = exponents
            .iter()
            .enumerate()
            .map(|(i, &e)| (vars[perm[i]], e))
            .collect();
        let sign = if even { 1 } else { -1 };
        acc = &acc + &Polynomial::monomial(crate::poly::int(sign), &powers);
    }
    acc
}

/// Schur polynomial by the bialternant formula.
pub fn schur_poly(lambda: &Partition, vars: &[VarId]) -> Polynomial {
    let n = vars.len();
    let exps: Vec<u32> = lambda
        .padded(n)
        .iter()
        .enumerate()
        .map(|(i, &l)| l + (n - 1 - i) as u32)
        .collect();
    let num = alternant(&exps, vars);
    let s = num
        .exact_div(&vandermonde(vars))
        .expect("alternants are divisible by the Vandermonde");
    debug_assert!(crate::poly::is_symmetric(
        &s,
        &crate::poly::SymmetryAction::Permute(vars.to_vec())
    ));
    s
}

/// `s_lambda(p_1, ..., p_n)` for arbitrary polynomial arguments.
pub fn schur_at(lambda: &Partition, args: &[Polynomial]) -> Polynomial {
    let dummies: Vec<VarId> = (1..=args.len() as u16).map(VarId::u).collect();
    let s = schur_poly(lambda, &dummies);
    let bind: BTreeMap<VarId, Polynomial> =
        dummies.iter().copied().zip(args.iter().cloned()).collect();
    s.substitute(&bind)
}

/// The `mu` with `lambda = 2 mu + rho`, `rho = (n, ..., 1)`, if it exists.
pub fn decompose_two_mu_plus_rho(lambda: &Partition, n: usize) -> Option<Partition> {
    if lambda.len() > n {
        return None;
    }
    let mut mu = Vec::with_capacity(n);
    for (i, &l) in lambda.padded(n).iter().enumerate() {
        let rho = (n - i) as u32;
        if l < rho || (l - rho) % 2 == 1 {
            return None;
        }
        mu.push((l - rho) / 2);
    }
    Partition::new(mu).ok()
}

/// `2 mu + rho` padded to `n` parts.
pub fn two_mu_plus_rho(mu: &Partition, n: usize) -> Partition {
    let parts = mu
        .padded(n)
        .iter()
        .enumerate()
        .map(|(i, &m)| 2 * m + (n - i) as u32)
        .collect();
    Partition::new(parts).expect("2mu+rho is a partition")
}

/// Complete homogeneous symmetric polynomial `h_m`; `h_0 = 1`, `h_{-1} = 0`.
pub fn complete_homogeneous(m: i64, vars: &[VarId]) -> Polynomial {
    if m < 0 {
        return Polynomial::zero();
    }
    fn go(m: u32, vars: &[VarId], cur: &mut Vec<(VarId, u32)>, acc: &mut Polynomial) {
        if vars.is_empty() {
            if m == 0 {
                *acc = &*acc + &Polynomial::monomial(crate::poly::int(1), cur);
            }
            return;
        }
        for e in 0..=m {
            cur.push((vars[0], e));
            go(m - e, &vars[1..], cur, acc);
            cur.pop();
        }
    }
    let mut acc = Polynomial::zero();
    go(m as u32, vars, &mut Vec::new(), &mut acc);
    acc
}

/// Elementary symmetric polynomial `e_m`.
pub fn elementary(m: usize, vars: &[VarId]) -> Polynomial {
    fn go(m: usize, vars: &[VarId], cur: &mut Vec<(VarId, u32)>, acc: &mut Polynomial) {
        if m == 0 {
            *acc = &*acc + &Polynomial::monomial(crate::poly::int(1), cur);
            return;
        }
        if vars.len() < m {
            return;
        }
        cur.push((vars[0], 1));
        go(m - 1, &vars[1..], cur, acc);
        cur.pop();
        go(m, &vars[1..], cur, acc);
    }
    let mut acc = Polynomial::zero();
    go(m, vars, &mut Vec::new(), &mut acc);
    acc
}
