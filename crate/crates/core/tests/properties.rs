use std::sync::Arc;

use eqcat::action::{check_action, Action};
use eqcat::cli::{emit, Format, Outcome, Report};
use eqcat::dg::graded::GradedSwap;
use eqcat::equivar::{check_equivariant, equivariant_structures, structure};
use eqcat::instances;
use eqcat::karoubi::KaroubiCat;
use eqcat::lincat::category::Category;
use eqcat::lincat::envelope::{combination, Envelope, Mor, Obj};
use eqcat::lincat::presentation::Presentation;
use eqcat::matrix::Matrix;
use eqcat::{Budget, Field, Scalar};
use proptest::prelude::*;

fn fp(p: u64, v: u64) -> Scalar {
    Field::Prime(p).from_i64(v as i64)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig::with_cases(cases)
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 101]), a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
        let (a, b, c) = (fp(p, a), fp(p, b), fp(p, c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Field::Prime(p).zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rationals_print_and_parse_back(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = Field::Rational.parse(&format!("{n}/{d}")).unwrap();
        prop_assert_eq!(Field::Rational.parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn rank_plus_nullity_is_width(rows in prop::collection::vec(prop::collection::vec(0i64..5, 4), 1..5)) {
        let f = Field::Prime(5);
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = Matrix::from_i64(f, &refs);
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.len(), m.cols());
        for v in &null {
            prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_is_two_sided(entries in prop::collection::vec(-3i64..4, 9)) {
        let f = Field::Rational;
        let m = Matrix::from_i64(f, &[&entries[0..3], &entries[3..6], &entries[6..9]]);
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv), Matrix::identity(f, 3));
                prop_assert_eq!(inv.mul(&m), Matrix::identity(f, 3));
            }
            None => prop_assert!(m.rank() < 3),
        }
    }
}

fn random_mor(env: &Envelope, src: &[usize], tgt: &[usize], coeffs: &[i64]) -> Mor {
    let basis = env.basis(src, tgt);
    let f = env.field();
    let cs: Vec<Scalar> = (0..basis.len()).map(|i| f.from_i64(coeffs[i % coeffs.len()])).collect();
    if basis.is_empty() {
        return env.zero(src, tgt);
    }
    combination(&cs, &basis)
}

fn sum_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..2, 0..4)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn envelope_composition_is_associative_and_unital(
        x in sum_strategy(), y in sum_strategy(), z in sum_strategy(), w in sum_strategy(),
        c in prop::collection::vec(-4i64..5, 1..8),
    ) {
        let env = Envelope::new(Arc::new(Presentation::a2_quiver(Field::Rational)));
        let f = random_mor(&env, &x, &y, &c);
        let g = random_mor(&env, &y, &z, &c[1..].iter().chain(&c).copied().collect::<Vec<_>>());
        let h = random_mor(&env, &z, &w, &c.iter().rev().copied().collect::<Vec<_>>());
        prop_assert_eq!(env.compose(&env.compose(&h, &g), &f), env.compose(&h, &env.compose(&g, &f)));
        prop_assert_eq!(env.compose(&env.identity(&y), &f), f.clone());
        prop_assert_eq!(env.compose(&f, &env.identity(&x)), f);
    }

    /// A conjugated diagonal idempotent on `k^n` has `End(k^n, p)` of dimension `rank²`.
    #[test]
    fn retract_endomorphisms_have_rank_squared_dimension(
        n in 1usize..4, rank in 0usize..4, a in prop::collection::vec(0i64..5, 9),
    ) {
        let rank = rank.min(n);
        let f = Field::Prime(5);
        let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| a[(i * n + j) % 9]).collect()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] += 1;
        }
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let u = Matrix::from_i64(f, &refs);
        let Some(ui) = u.inverse() else { return Ok(()) };
        let mut e = Matrix::zeros(f, n, n);
        for i in 0..rank {
            e = e.add(&Matrix::from_columns(f, n, &(0..n).map(|j| {
                let mut col = vec![f.zero(); n];
                if j == i {
                    col[i] = f.one();
                }
                col
            }).collect::<Vec<_>>()));
        }
        let p = u.mul(&e).mul(&ui);
        let xs = vec![0; n];
        let pm = Mor {
            field: f,
            src: xs.clone(),
            tgt: xs.clone(),
            coords: (0..n).flat_map(|j| p.row(j).to_vec()).collect(),
        };
        let c: Arc<dyn Category> = Arc::new(Envelope::new(Arc::new(Presentation::ground_field(f))));
        prop_assert_eq!(c.compose(&pm, &pm), pm.clone());
        let kar = KaroubiCat::new(c);
        let r = kar.retract(&Obj::base(&xs), &pm).unwrap();
        prop_assert_eq!(kar.hom_dim(&r, &r).unwrap(), rank * rank);
    }

    #[test]
    fn twisted_differential_squares_to_zero_and_obeys_leibniz(
        seed in 0u64..1000, which in (0usize..6, 0usize..6, 0usize..6), c in prop::collection::vec(-2i64..3, 1..6),
    ) {
        let gs = GradedSwap::new(Field::Prime(5)).unwrap();
        let pre = gs.pretr();
        let complexes: Vec<_> = gs.sample(6, 6, seed).unwrap().iter().map(|x| gs.build(x).unwrap()).collect();
        let (r, s, t) = (&complexes[which.0], &complexes[which.1], &complexes[which.2]);
        let vec_of = |a: &eqcat::dg::twisted::TwistedComplex, b: &eqcat::dg::twisted::TwistedComplex, shift: usize| -> Vec<Scalar> {
            let n = pre.zero(a, b).len();
            (0..n).map(|i| Field::Prime(5).from_i64(c[(i + shift) % c.len()])).collect()
        };
        let f = vec_of(r, s, 0);
        prop_assert!(pre.differential(r, s, &pre.differential(r, s, &f)).iter().all(|x| x.is_zero()));
        // Leibniz on a homogeneous g.
        let degrees = pre.degrees(s, t);
        let g_all = vec_of(s, t, 1);
        let Some(&k) = degrees.first() else { return Ok(()) };
        let g: Vec<Scalar> = g_all.iter().zip(&degrees).map(|(v, d)| if *d == k { v.clone() } else { Field::Prime(5).zero() }).collect();
        let lhs = pre.differential(r, t, &pre.compose(r, s, t, &g, &f));
        let a = pre.compose(r, s, t, &pre.differential(s, t, &g), &f);
        let b = pre.compose(r, s, t, &g, &pre.differential(r, s, &f));
        let sign = if k.rem_euclid(2) == 0 { Field::Prime(5).one() } else { -Field::Prime(5).one() };
        let rhs: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| x + &(&sign * y)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cones_of_closed_maps_are_twisted_complexes(seed in 0u64..1000, i in 0usize..4, j in 0usize..4, c in prop::collection::vec(0i64..5, 1..4)) {
        let gs = GradedSwap::new(Field::Prime(5)).unwrap();
        let pre = gs.pretr();
        let complexes: Vec<_> = gs.sample(4, 6, seed).unwrap().iter().map(|x| gs.build(x).unwrap()).collect();
        let (s, t) = (&complexes[i], &complexes[j]);
        let basis = pre.cycles0(s, t);
        let mut f = pre.zero(s, t);
        for (k, z) in basis.iter().enumerate() {
            let a = Field::Prime(5).from_i64(c[k % c.len()]);
            for (o, v) in f.iter_mut().zip(z) {
                *o = &*o + &(&a * v);
            }
        }
        prop_assert!(pre.is_closed_degree_zero(s, t, &f));
        let cone = pre.cone(s, t, &f).unwrap();
        prop_assert!(pre.validate(&cone).is_ok());
        prop_assert!(pre.validate(&pre.shift(&cone, 1)).is_ok());
    }

    #[test]
    fn enumerated_equivariant_structures_pass_their_checks(p in prop::sample::select(vec![3u64, 5, 7])) {
        let inst = instances::swap_z2(Field::Prime(p)).unwrap();
        for x in &inst.objects {
            let e = equivariant_structures(&*inst.action, x, Budget::default()).unwrap();
            prop_assert!(e.complete);
            for s in &e.found {
                let (f, thetas) = structure(s).unwrap();
                prop_assert!(check_equivariant(&*inst.action, f, thetas).unwrap().passes());
            }
        }
    }

    #[test]
    fn cyclic_permutation_actions_are_coherent(p in prop::sample::select(vec![7u64, 13, 19])) {
        let inst = instances::cyclic_z3(Field::Prime(p)).unwrap();
        let action: Arc<dyn Action> = inst.action.clone();
        prop_assert!(check_action(&action, &inst.objects).unwrap().passes());
    }

    #[test]
    fn json_reports_round_trip(seed in any::<u64>(), budget in 1u64..1_000_000, v in 0usize..3, n in -50i64..50) {
        let verdict = [Outcome::Affirmative, Outcome::Negative, Outcome::BudgetExceeded][v];
        let report = Report {
            job: "validate".into(),
            instance: "x".into(),
            field: "F_5".into(),
            seed,
            budget,
            verdict,
            certificates: serde_json::json!({ "value": n, "coords": [format!("{n}/7")] }),
        };
        let back: Report = serde_json::from_str(&emit(&report, Format::Json)).unwrap();
        prop_assert_eq!(back, report);
    }
}
