//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use gysin::oracle::abbv_pushforward;
use gysin::poly::vandermonde;
use gysin::residue::{check_order_independence, LinearFactor, RationalExpr};
use gysin::schur::{partitions, schur_at, schur_poly, two_mu_plus_rho};
use gysin::spaces::{
    build_plan, dimension, index_set_ifl, pushforward, pushforward_unsimplified,
    pushforward_via_simple_poles, Family, SpaceSpec,
};
use gysin::{rat, Polynomial, VarId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn squares(n: u16) -> Vec<Polynomial> {
    (1..=n).map(|i| Polynomial::var(VarId::t(i)).pow(2)).collect()
}

fn lagrangian_reproduction() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for n in 1..=3u16 {
        let spec = SpaceSpec::lg(n).map_err(|e| e.to_string())?;
        let z = spec.last_block();
        for size in 0..=4 {
            for mu in partitions(size, n as usize) {
                let lambda = two_mu_plus_rho(&mu, n as usize);
                let got = pushforward(&spec, &schur_poly(&lambda, &z)).map_err(|e| e.to_string())?;
                let want = schur_at(&mu, &squares(n));
                if got != want {
                    return Err(format!("LG({n}) mu={mu}: got {got}, expected {want}"));
                }
                cases += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        return Err(format!("{cases} cases took {secs:.1}s"));
    }
    Ok(format!("{cases} cases in {secs:.2}s"))
}

fn lagrangian_vanishing() -> Outcome {
    let mut cases = 0;
    for n in 1..=3u16 {
        let spec = SpaceSpec::lg(n).map_err(|e| e.to_string())?;
        let z = spec.last_block();
        let bound = dimension(&spec) as u32 + 4;
        for size in 0..=bound {
            for lambda in partitions(size, n as usize) {
                let padded = lambda.padded(n as usize);
                let hit = padded
                    .iter()
                    .enumerate()
                    .any(|(i, &l)| (l as usize + n as usize - (i + 1)) % 2 == 0);
                if !hit {
                    continue;
                }
                let got = pushforward(&spec, &schur_poly(&lambda, &z)).map_err(|e| e.to_string())?;
                if !got.is_zero() {
                    return Err(format!("LG({n}) lambda={lambda}: got {got}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} partitions vanish"))
}

fn master_equivalence() -> Outcome {
    let mut r = rng(3);
    let spaces = common::all_test_spaces();
    let mut cases = 0;
    for spec in &spaces {
        let dim = dimension(spec) as u32;
        for i in 0..50 {
            let deg = r.gen_range(dim.saturating_sub(2)..=dim + 4);
            let alpha = if i % 2 == 0 {
                common::random_z_class(spec, deg, &mut r)
            } else {
                common::random_class(spec, deg, &mut r)
            };
            let a = pushforward(spec, &alpha).map_err(|e| format!("{spec}: {e}"))?;
            let b = abbv_pushforward(spec, &alpha).map_err(|e| format!("{spec}: {e}"))?;
            if a != b {
                return Err(format!("{spec} alpha={alpha}: residue {a}, oracle {b}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{} spaces, {cases} classes", spaces.len()))
}

fn type_a_pipelines() -> Outcome {
    let mut r = rng(4);
    let mut spaces = common::flag_a_spaces();
    for n in 2..=4u16 {
        for k in 1..=3u16.min(n) {
            spaces.push(SpaceSpec::flag(Family::FlagA, vec![k], n).map_err(|e| e.to_string())?);
        }
    }
    let mut cases = 0;
    for spec in &spaces {
        let dim = dimension(spec) as u32;
        for _ in 0..6 {
            let deg = r.gen_range(dim.saturating_sub(1)..=dim + 2);
            let alpha = common::random_class(spec, deg, &mut r);
            let simplified = pushforward(spec, &alpha).map_err(|e| format!("{spec}: {e}"))?;
            let full = pushforward_unsimplified(spec, &alpha).map_err(|e| format!("{spec}: {e}"))?;
            let lemma = pushforward_via_simple_poles(spec, &alpha).map_err(|e| format!("{spec}: {e}"))?;
            if full != simplified || lemma != simplified {
                return Err(format!(
                    "{spec} alpha={alpha}: simplified {simplified}, unsimplified {full}, via simple poles {lemma}"
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("{} flags, {cases} classes", spaces.len()))
}

fn index_set_identity() -> Outcome {
    let mut checked = 0;
    for mask in 1u32..(1 << 6) {
        let d: Vec<u16> = (1..=6u16).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let set = index_set_ifl(&d).map_err(|e| e.to_string())?;
        let a: i64 = d.iter().map(|&x| x as i64 * (x as i64 - 1)).sum();
        let b: i64 = d.windows(2).map(|w| w[0] as i64 * (w[1] as i64 - 1)).sum();
        if set.cardinality() as i64 != a - b {
            return Err(format!("d={d:?}: |I|={}, expected {}", set.cardinality(), a - b));
        }
        checked += 1;
    }
    for k in 1..=6u16 {
        let set = index_set_ifl(&[k]).map_err(|e| e.to_string())?;
        let pairs: Vec<(u16, u16)> = set.iter().map(|(p, _)| p).collect();
        let expected: Vec<(u16, u16)> = (1..=k)
            .flat_map(|i| (1..=k).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        if pairs != expected || set.iter().any(|(_, m)| m != 1) {
            return Err(format!("I((k)) for k={k} is {pairs:?}"));
        }
        // The Grassmannian numerator is the squared Vandermonde up to sign.
        let gr = SpaceSpec::gr(k, k + 1).map_err(|e| e.to_string())?;
        let z = gr.last_block();
        let plan = build_plan(&gr, &Polynomial::one()).map_err(|e| e.to_string())?;
        let v = vandermonde(&z);
        let sq = &v * &v;
        let sign = if (k as u32 * (k as u32 - 1) / 2) % 2 == 0 { 1 } else { -1 };
        if plan.expr.numerator != sq.scale(&rat(sign, 1)) {
            return Err(format!("Gr({k},{}) numerator mismatch", k + 1));
        }
    }
    Ok(format!("{checked} dimension vectors, k=1..6 one-step sets"))
}

fn random_normal_crossing<R: Rng>(r: &mut R) -> (RationalExpr, Vec<VarId>) {
    let nvars = r.gen_range(3..=4u16);
    let vars: Vec<VarId> = (1..=nvars).map(|i| VarId::z(1, i)).collect();
    let params: Vec<VarId> = (1..=3).map(VarId::t).collect();
    let mut den = Vec::new();
    for &v in &vars {
        for _ in 0..r.gen_range(1..=3) {
            let mut constant = Polynomial::zero();
            for &t in &params {
                let c = r.gen_range(-2i64..=2);
                constant = &constant + &Polynomial::var(t).scale(&rat(c, 1));
            }
            let c = r.gen_range(1i64..=3) * if r.gen_bool(0.5) { 1 } else { -1 };
            let f = &Polynomial::var(v).scale(&rat(c, 1)) + &constant;
            den.push((LinearFactor::from_polynomial(&f).unwrap(), r.gen_range(1..=2)));
        }
    }
    let mut num = Polynomial::zero();
    for _ in 0..r.gen_range(1..=4) {
        let mut powers: Vec<(VarId, u32)> = vars.iter().map(|&v| (v, r.gen_range(0..=5))).collect();
        powers.push((params[r.gen_range(0..3)], r.gen_range(0..=2)));
        num = &num + &Polynomial::monomial(rat(r.gen_range(-5..=5), r.gen_range(1..=3)), &powers);
    }
    (RationalExpr::new(num, den), vars)
}

fn order_independence() -> Outcome {
    let mut r = rng(6);
    let mut nonzero = 0;
    for case in 0..100 {
        let (expr, vars) = random_normal_crossing(&mut r);
        if !expr.is_normal_crossing() {
            return Err(format!("case {case} is not normal crossing"));
        }
        let mut orders = vec![vars.clone()];
        while orders.len() < 3 {
            let mut o = vars.clone();
            o.shuffle(&mut r);
            if !orders.contains(&o) {
                orders.push(o);
            }
        }
        match check_order_independence(&expr, &orders) {
            Ok(true) => {}
            Ok(false) => return Err(format!("case {case} depends on the order")),
            Err(e) => return Err(format!("case {case}: {e}")),
        }
        if !gysin::residue::residue_at_infinity(&expr, &vars).map_err(|e| e.to_string())?.is_zero() {
            nonzero += 1;
        }
    }
    Ok(format!("100 integrands x 3 orders, {nonzero} with nonzero residue"))
}

fn grading() -> Outcome {
    let mut r = rng(7);
    let spaces: Vec<SpaceSpec> = common::all_test_spaces()
        .into_iter()
        .filter(|s| dimension(s) <= 6)
        .collect();
    let mut negative = 0;
    for case in 0..1000 {
        let spec = &spaces[case % spaces.len()];
        let dim = dimension(spec);
        let deg = r.gen_range(0..=dim as u32 + 3);
        let alpha = common::random_class(spec, deg, &mut r);
        let out = pushforward(spec, &alpha).map_err(|e| format!("{spec}: {e}"))?;
        let expected = deg as i64 - dim;
        if expected < 0 {
            negative += 1;
            if !out.is_zero() {
                return Err(format!("{spec} alpha={alpha}: expected 0, got {out}"));
            }
        } else if !out.is_zero() && out.homogeneous_degree() != Some(expected as u32) {
            return Err(format!("{spec} alpha={alpha}: {out} is not homogeneous of degree {expected}"));
        }
    }
    Ok(format!("1000 classes over {} spaces, {negative} below dimension", spaces.len()))
}

fn point_counts() -> Outcome {
    let og = pushforward(&SpaceSpec::og_even(1).unwrap(), &Polynomial::one()).map_err(|e| e.to_string())?;
    if og != Polynomial::integer(2) {
        return Err(format!("OGeven(1): {og}"));
    }
    for k in 1..=5u16 {
        let v = pushforward(&SpaceSpec::gr(k, k).unwrap(), &Polynomial::one()).map_err(|e| e.to_string())?;
        if !v.is_one() {
            return Err(format!("Gr({k},{k}): {v}"));
        }
    }
    Ok("OGeven(1) = 2, Gr(k,k) = 1 for k <= 5".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Lagrangian Schur images", lagrangian_reproduction),
        ("Lagrangian vanishing", lagrangian_vanishing),
        ("residue equals localization", master_equivalence),
        ("type-A pipelines agree", type_a_pipelines),
        ("index set cardinality", index_set_identity),
        ("residue order independence", order_independence),
        ("grading", grading),
        ("point counts", point_counts),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
