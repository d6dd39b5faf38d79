#![allow(dead_code)]

use gysin::poly::{Polynomial, VarId};
use gysin::schur::elementary;
use gysin::spaces::{Family, SpaceSpec};
use rand::Rng;

/// A random homogeneous Weyl-symmetric class of the given degree: a sum of
/// products of elementary symmetric polynomials in the z-blocks and t's.
pub fn random_class<R: Rng>(spec: &SpaceSpec, degree: u32, rng: &mut R) -> Polynomial {
    random_class_with(spec, degree, 0.75, rng)
}

/// Like [`random_class`] but without explicit `t` factors.
pub fn random_z_class<R: Rng>(spec: &SpaceSpec, degree: u32, rng: &mut R) -> Polynomial {
    random_class_with(spec, degree, 1.0, rng)
}

fn random_class_with<R: Rng>(spec: &SpaceSpec, degree: u32, z_bias: f64, rng: &mut R) -> Polynomial {
    let mut acc = Polynomial::zero();
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let mut term = Polynomial::integer(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let mut left = degree;
        while left > 0 {
            if rng.gen_bool(z_bias) {
                let g = rng.gen_range(1..=spec.steps());
                let vars = spec.block_vars(g);
                let i = rng.gen_range(1..=vars.len().min(left as usize));
                term = &term * &elementary(i, &vars);
                left -= i as u32;
            } else {
                let j = rng.gen_range(1..=spec.n());
                term = &term * &Polynomial::var(VarId::t(j));
                left -= 1;
            }
        }
        acc = &acc + &term;
    }
    if acc.is_zero() {
        return elementary(1, &spec.last_block()).pow(degree);
    }
    acc
}

pub fn all_test_spaces() -> Vec<SpaceSpec> {
    let mut out = Vec::new();
    for n in 1..=6u16 {
        for k in 1..=3u16.min(n) {
            out.push(SpaceSpec::gr(k, n).unwrap());
        }
    }
    for n in 1..=3 {
        out.push(SpaceSpec::lg(n).unwrap());
        out.push(SpaceSpec::og_even(n).unwrap());
        out.push(SpaceSpec::og_odd(n).unwrap());
    }
    out.extend(flag_a_spaces());
    for f in [Family::FlagC, Family::FlagSym2n, Family::FlagSym2n1] {
        out.push(SpaceSpec::flag(f, vec![1, 2], 2).unwrap());
    }
    out
}

/// Type-A flags with at least two steps, `d_k <= 3`, `n <= 4`.
pub fn flag_a_spaces() -> Vec<SpaceSpec> {
    let mut out = Vec::new();
    for n in 2..=4u16 {
        for mask in 1u32..(1 << 3) {
            let d: Vec<u16> = (1..=3u16).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            if d.len() >= 2 && *d.last().unwrap() <= n {
                out.push(SpaceSpec::flag(Family::FlagA, d, n).unwrap());
            }
        }
    }
    out
}
