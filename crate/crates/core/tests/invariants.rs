mod common;

use std::collections::BTreeMap;

use gysin::oracle::{abbv_pushforward, fixed_points};
use gysin::poly::{is_symmetric, vandermonde, SymmetryAction};
use gysin::residue::{residue_at_infinity, LinearFactor, RationalExpr};
use gysin::schur::{alternant, decompose_two_mu_plus_rho, schur_poly, two_mu_plus_rho, Partition};
use gysin::spaces::{
    build_plan, build_plan_form, dimension, index_set_ifl, pushforward, uv_substitution,
    zu_substitution, Family, PlanForm, SpaceSpec,
};
use gysin::text::parse_polynomial;
use gysin::{rat, Polynomial, VarId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const POOL: [VarId; 4] = [
    VarId::Z { group: 1, slot: 1 },
    VarId::Z { group: 1, slot: 2 },
    VarId::T(1),
    VarId::T(2),
];

fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    let term = (-6i64..=6, 1i64..=3, proptest::collection::vec(0u32..=3, POOL.len()));
    proptest::collection::vec(term, 0..5).prop_map(|terms| {
        let mut acc = Polynomial::zero();
        for (n, d, exps) in terms {
            let powers: Vec<(VarId, u32)> = POOL.iter().copied().zip(exps).collect();
            acc = &acc + &Polynomial::monomial(rat(n, d), &powers);
        }
        acc
    })
}

fn partition_strategy(max_len: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in poly_strategy(), b in poly_strategy()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn display_round_trips(a in poly_strategy()) {
        prop_assert_eq!(parse_polynomial(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly_strategy(), b in poly_strategy(), s in poly_strategy()) {
        let mut bind = BTreeMap::new();
        bind.insert(POOL[0], s);
        prop_assert_eq!((&a * &b).substitute(&bind), &a.substitute(&bind) * &b.substitute(&bind));
        prop_assert_eq!((&a + &b).substitute(&bind), &a.substitute(&bind) + &b.substitute(&bind));
    }

    #[test]
    fn uv_change_of_variables_round_trips(a in poly_strategy()) {
        let spec = SpaceSpec::flag(Family::FlagA, vec![1, 2], 3).unwrap();
        // Spread the pool's z-variables over both steps of the flag.
        let mut to_flag = BTreeMap::new();
        to_flag.insert(POOL[1], Polynomial::var(VarId::z(2, 2)));
        let a = a.substitute(&to_flag);
        let lifted = a.substitute(&uv_substitution(&spec));
        let no_z = lifted.vars().iter().all(|v| !matches!(v.block(), gysin::VarBlock::Z(_)));
        prop_assert!(no_z);
        prop_assert_eq!(lifted.substitute(&zu_substitution(&spec)), a);
    }

    #[test]
    fn residue_is_linear(a in poly_strategy(), b in poly_strategy(), k in -4i64..=4) {
        let den = vec![
            (LinearFactor::from_polynomial(&parse_polynomial("z[1]-t[1]").unwrap()).unwrap(), 2),
            (LinearFactor::from_polynomial(&parse_polynomial("z[2]+t[2]").unwrap()).unwrap(), 1),
            (LinearFactor::from_polynomial(&parse_polynomial("z[2]-t[1]").unwrap()).unwrap(), 1),
        ];
        let order = [POOL[0], POOL[1]];
        let r = |n: Polynomial| residue_at_infinity(&RationalExpr::new(n, den.clone()), &order).unwrap();
        let combo = &a + &b.scale(&rat(k, 1));
        prop_assert_eq!(r(combo), &r(a) + &r(b).scale(&rat(k, 1)));
    }

    #[test]
    fn schur_is_symmetric_and_bialternant(lambda in partition_strategy(3, 4)) {
        let x: Vec<VarId> = (1..=3).map(VarId::t).collect();
        let s = schur_poly(&lambda, &x);
        prop_assert!(is_symmetric(&s, &SymmetryAction::Permute(x.clone())));
        let exps: Vec<u32> = lambda.padded(3).iter().enumerate().map(|(i, l)| l + 2 - i as u32).collect();
        prop_assert_eq!(&s * &vandermonde(&x), alternant(&exps, &x));
        prop_assert_eq!(s.homogeneous_degree(), Some(lambda.size()));
    }

    #[test]
    fn two_mu_plus_rho_round_trips(mu in partition_strategy(3, 4)) {
        let lambda = two_mu_plus_rho(&mu, 3);
        prop_assert_eq!(decompose_two_mu_plus_rho(&lambda, 3), Some(mu));
    }

    #[test]
    fn index_set_cardinality(mask in 1u32..64) {
        let d: Vec<u16> = (1..=6u16).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let a: i64 = d.iter().map(|&x| x as i64 * (x as i64 - 1)).sum();
        let b: i64 = d.windows(2).map(|w| w[0] as i64 * (w[1] as i64 - 1)).sum();
        prop_assert_eq!(index_set_ifl(&d).unwrap().cardinality() as i64, a - b);
    }
}

fn test_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn tangent_weight_count_is_dimension() {
    for spec in common::all_test_spaces() {
        let dim = dimension(&spec) as usize;
        for f in fixed_points(&spec) {
            assert_eq!(f.tangent_weights.len(), dim, "{spec}");
        }
    }
}

#[test]
fn unit_class_vanishes_in_positive_dimension() {
    for spec in common::all_test_spaces() {
        let one = Polynomial::one();
        let r = abbv_pushforward(&spec, &one).unwrap();
        if dimension(&spec) > 0 {
            assert!(r.is_zero(), "{spec}");
        } else {
            assert!(r.as_constant().is_some(), "{spec}");
        }
    }
}

#[test]
fn outputs_are_weyl_invariant_in_t() {
    let mut rng = test_rng(7);
    for spec in common::all_test_spaces() {
        let action = match spec.family().ambient() {
            gysin::spaces::Ambient::A => SymmetryAction::Permute(spec.params()),
            _ => SymmetryAction::SignedPermute(spec.params()),
        };
        for _ in 0..3 {
            let deg = dimension(&spec) as u32 + rng.gen_range(0..3);
            let alpha = common::random_z_class(&spec, deg, &mut rng);
            let r = abbv_pushforward(&spec, &alpha).unwrap();
            assert!(is_symmetric(&r, &action), "{spec}: {alpha} -> {r}");
        }
    }
}

#[test]
fn grassmannian_is_a_one_step_flag() {
    let mut rng = test_rng(11);
    for n in 2..=5u16 {
        for k in 1..=3u16.min(n) {
            let gr = SpaceSpec::gr(k, n).unwrap();
            let fl = SpaceSpec::flag(Family::FlagA, vec![k], n).unwrap();
            let alpha = common::random_class(&gr, dimension(&gr) as u32 + 1, &mut rng);
            let a = build_plan(&gr, &alpha).unwrap();
            let b = build_plan(&fl, &alpha).unwrap();
            assert_eq!(a.expr, b.expr, "{gr}");
            assert_eq!(a.residue_order, b.residue_order);
        }
    }
}

#[test]
fn odd_orthogonal_forms_agree() {
    let mut rng = test_rng(13);
    let specs = [
        SpaceSpec::og_odd(1).unwrap(),
        SpaceSpec::og_odd(2).unwrap(),
        SpaceSpec::og_odd(3).unwrap(),
        SpaceSpec::flag(Family::FlagSym2n1, vec![1, 2], 2).unwrap(),
        SpaceSpec::flag(Family::FlagSym2n1, vec![1], 2).unwrap(),
    ];
    for spec in &specs {
        for _ in 0..5 {
            let deg = dimension(spec) as u32 + rng.gen_range(0..3);
            let alpha = common::random_class(spec, deg, &mut rng);
            let a = build_plan_form(spec, &alpha, PlanForm::Cancelled).unwrap().evaluate().unwrap();
            let b = build_plan_form(spec, &alpha, PlanForm::Uncancelled).unwrap().evaluate().unwrap();
            assert_eq!(a, b, "{spec}: {alpha}");
        }
    }
}

#[test]
fn frozen_values() {
    // Pinned outputs guarding the sign conventions of every family.
    let cases = [
        (SpaceSpec::gr(2, 4).unwrap(), "(z[1]*z[2])^3", "t[1]*t[2] + t[1]*t[3] + t[1]*t[4] + t[2]*t[3] + t[2]*t[4] + t[3]*t[4]"),
        (SpaceSpec::gr(2, 4).unwrap(), "(z[1]+z[2])^5", "5*t[1] + 5*t[2] + 5*t[3] + 5*t[4]"),
        (SpaceSpec::lg(2).unwrap(), "z[1]^4*z[2] + z[1]*z[2]^4", "t[1]^2 + t[2]^2"),
        (SpaceSpec::og_even(2).unwrap(), "(z[1]+z[2])^3", "4*t[1]^2 + 4*t[2]^2"),
        (SpaceSpec::og_odd(2).unwrap(), "(z[1]+z[2])^5", "16*t[1]^2 + 16*t[2]^2"),
        (SpaceSpec::flag(Family::FlagA, vec![1, 2], 3).unwrap(), "z[1,1]*(z[2,1]+z[2,2])^3", "2*t[1] + 2*t[2] + 2*t[3]"),
        (SpaceSpec::flag(Family::FlagC, vec![1, 2], 2).unwrap(), "z[1,1]^2*(z[2,1]+z[2,2])^4", "4*t[1]^2 + 4*t[2]^2"),
        (SpaceSpec::flag(Family::FlagSym2n, vec![1, 2], 2).unwrap(), "z[1,1]*(z[2,1]+z[2,2])^3", "4*t[1]^2 + 4*t[2]^2"),
        (SpaceSpec::flag(Family::FlagSym2n1, vec![1, 2], 2).unwrap(), "z[1,1]^2*(z[2,1]+z[2,2])^4", "16*t[1]^2 + 16*t[2]^2"),
    ];
    for (spec, alpha, want) in cases {
        let a = parse_polynomial(alpha).unwrap();
        let want = parse_polynomial(want).unwrap();
        assert_eq!(abbv_pushforward(&spec, &a).unwrap(), want, "oracle {spec}");
        assert_eq!(pushforward(&spec, &a).unwrap(), want, "residue {spec}");
    }
}

