//! One line per acceptance criterion; exits nonzero if any fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use eqcat::cli::{self, emit, job_name, Command, Format, Job};
use eqcat::descent::{comodule_descent, equivariant_representatives, idempotent_rank};
use eqcat::dg::graded::{Construction, GradedSwap};
use eqcat::equivar::Equivariantization;
use eqcat::instances::{self, Instance};
use eqcat::karoubi::{
    idempotent_completeness, restricts_to_action, restricts_to_comonad, restricts_to_monad, Completeness,
    KaroubiAction, KaroubiCat, KaroubiComonad, KaroubiMonad,
};
use eqcat::lincat::category::{find_iso, Category};
use eqcat::lincat::envelope::{Envelope, Obj};
use eqcat::lincat::equivalence::{EssentialImage, Verdict};
use eqcat::lincat::functor::Functor;
use eqcat::lincat::presentation::Presentation;
use eqcat::matrix::Matrix;
use eqcat::monadic::comodule_structures;
use eqcat::reversion::Reversion;
use eqcat::{Budget, Field, Scalar, Search};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|err| format!("{err:?}"))
}

const F5: Field = Field::Prime(5);
const F7: Field = Field::Prime(7);

/// All `n × n` matrices over `F_p`, as row-major entry lists.
fn all_matrices(p: u64, n: usize) -> Vec<Vec<i64>> {
    let cells = n * n;
    (0..(p as usize).pow(cells as u32))
        .map(|mut k| {
            (0..cells)
                .map(|_| {
                    let d = (k % p as usize) as i64;
                    k /= p as usize;
                    d
                })
                .collect()
        })
        .collect()
}

fn square(p: u64, n: usize, a: &[i64]) -> Vec<i64> {
    (0..n * n)
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            (0..n).map(|k| a[i * n + k] * a[k * n + j]).sum::<i64>().rem_euclid(p as i64)
        })
        .collect()
}

/// Number of `A` in `M_n(F_p)` with `A² = A` (idempotents) or `A² = 1` (involutions).
fn count_matrices(p: u64, n: usize, idempotent: bool) -> usize {
    let id: Vec<i64> = (0..n * n).map(|ij| i64::from(ij / n == ij % n)).collect();
    all_matrices(p, n)
        .iter()
        .filter(|a| square(p, n, a) == if idempotent { a.to_vec() } else { id.clone() })
        .count()
}

fn adjunction_identities() -> Outcome {
    let list = [
        e(instances::trivial_group(F5))?,
        e(instances::trivial_z2(F5))?,
        e(instances::swap_z2(F5))?,
        e(instances::cyclic_z3(F7))?,
    ];
    let mut checked = 0;
    for inst in &list {
        let eq = e(Equivariantization::new(inst.action.clone()))?;
        let eq_objs = e(equivariant_representatives(&eq, &inst.objects, Budget::default(), 1))?;
        for r in [
            e(eq.forget_induce().check(&eq_objs, &inst.objects))?,
            e(eq.induce_forget().check(&inst.objects, &eq_objs))?,
            e(eq.check_unit_counit_identities(&inst.objects, &eq_objs))?,
        ] {
            ensure(r.passes(), || format!("{}: {:?}", inst.name, r.failures))?;
            checked += r.checked;
        }
    }
    Ok(format!("{} instances, {checked} equations", list.len()))
}

fn comodule_comparison() -> Outcome {
    let inst = e(instances::trivial_z2(F5))?;
    let eq = e(Equivariantization::new(inst.action.clone()))?;
    let comonad = eq.forget_induce().comonad();
    let mut comodules = Vec::new();
    for (n, c) in inst.objects.iter().enumerate() {
        let found = e(comodule_structures(&*comonad, c, Budget::default()))?;
        ensure(found.complete, || "coaction enumeration incomplete".into())?;
        // Coactions on k^n are the involutions of k^n.
        let expected = count_matrices(5, n, false);
        ensure(found.found.len() == expected, || format!("k^{n}: {} coactions, expected {expected}", found.found.len()))?;
        comodules.extend(found.found);
    }
    let sources = e(equivariant_representatives(&eq, &inst.objects, Budget::default(), 1))?;
    let cmp = &eq.comparisons()[0];
    let cert = e(eqcat::lincat::equivalence::check_equivalence(
        &*cmp.functor,
        &*cmp.source,
        &*cmp.target,
        &sources,
        &comodules,
        Budget::default(),
        1,
    ))?;
    ensure(cert.pairs_checked == sources.len() * sources.len(), || "not every pair checked".into())?;
    ensure(cert.fully_faithful(), || format!("rank mismatch {:?} {:?}", cert.not_faithful, cert.not_full))?;
    ensure(cert.essential.iter().all(EssentialImage::is_hit), || "a comodule is missed".into())?;
    ensure(cert.verdict() == Verdict::Equivalence, || "not certified".into())?;
    Ok(format!("{} comodules hit, {} Hom pairs matched", comodules.len(), cert.pairs_checked))
}

fn even_dimensional_descent() -> Outcome {
    let inst = e(instances::even_dimensional(F5))?;
    let r = e(comodule_descent(&inst, Budget::default(), 1))?;
    ensure(r.comparison.verdict() == Verdict::NotEquivalence, || "comparison not refuted".into())?;
    let (w, _) = r.witness.clone().ok_or("no witness")?;
    let Obj::Comodule(eqobj, _) = &w else { return Err("witness is not a comodule".into()) };
    let Obj::Equivariant(_, thetas) = &**eqobj else { return Err("witness has no equivariant data".into()) };
    // θ_g is an involution of k²; its fixed space has rank(1 + θ_g).
    let t = &thetas[1].coords;
    let m = Matrix::from_rows(F5, vec![vec![t[0].clone(), t[1].clone()], vec![t[2].clone(), t[3].clone()]]);
    let fixed = m.add(&Matrix::identity(F5, 2)).rank();
    ensure(fixed % 2 == 1, || format!("witness fixed space has even rank {fixed}"))?;
    ensure(r.repaired.verdict() == Verdict::Equivalence, || "repair not certified".into())?;
    let Some(Obj::Retract(x, p)) = &r.repair_source else { return Err("no retract hits the witness".into()) };
    let kar = KaroubiCat::new(inst.action.category().clone());
    let rank = e(idempotent_rank(&kar, x, p))?;
    ensure(rank == Some(1), || format!("repair retract has rank {rank:?}"))?;
    Ok(format!("witness with rank-{fixed} fixed space, hit by a rank-1 retract after completion"))
}

fn reversion_for(inst: &Instance) -> Result<Reversion, String> {
    e(Reversion::new(inst.action.clone(), inst.objects.clone(), Budget::default(), 3))
}

fn beta_checks() -> Outcome {
    let inst = e(instances::trivial_z2(F5))?;
    let r = reversion_for(&inst)?;
    let eq_objs = e(equivariant_representatives(&r.eq, &inst.objects, Budget::default(), 1))?;
    let checks = e(r.check_isomorphisms(&eq_objs))?;
    ensure(checks.beta.passes(), || format!("{:?}", checks.beta.failures))?;
    ensure(checks.regular.passes(), || format!("{:?}", checks.regular.failures))?;
    Ok(format!("{} equations on {} equivariant objects", checks.beta.checked, eq_objs.len()))
}

fn reversion_equivalence() -> Outcome {
    let mut lines = Vec::new();
    for inst in [e(instances::trivial_z2(F5))?, e(instances::cyclic_z3(F7))?] {
        let r = reversion_for(&inst)?;
        let sources = inst.objects.iter().map(|c| e(r.lift(c))).collect::<Result<Vec<_>, _>>()?;
        let cert = e(r.certify(&sources, Budget::default(), 5))?;
        ensure(cert.verdict() == Verdict::Equivalence, || format!("{}: {}", inst.name, cert.summary()))?;
        let base = &r.eq.base;
        for (c, s) in inst.objects.iter().zip(&sources) {
            let back = e(r.functor.map_obj(s))?;
            let Search::Found(iso) = e(find_iso(&**base, &back, c, Budget::default(), 0))? else {
                return Err(format!("{}: round trip of {c:?} not isomorphic", inst.name));
            };
            ensure(
                base.compose(&iso.backward, &iso.forward) == base.identity(&back)
                    && base.compose(&iso.forward, &iso.backward) == base.identity(c),
                || "round-trip witness is not an isomorphism".into(),
            )?;
        }
        lines.push(format!("{} ({} objects)", inst.name, sources.len()));
    }
    Ok(lines.join(", "))
}

fn gamma_matches_characters() -> Outcome {
    let mut lines = Vec::new();
    for (inst, p) in [(e(instances::trivial_z2(F5))?, 5u64), (e(instances::cyclic_z3(F7))?, 7)] {
        let r = reversion_for(&inst)?;
        let n = inst.action.group().order();
        let field = Field::Prime(p);
        let omega = (1..p as i64)
            .map(|w| field.from_i64(w))
            .find(|w| w.pow(n as u64).is_one() && (1..n as u64).all(|k| !w.pow(k).is_one()))
            .ok_or("no primitive root of unity")?;
        let mut oracle: Vec<Vec<Scalar>> = (0..n as u64).map(|j| (0..n as u64).map(|g| omega.pow(j * g)).collect()).collect();
        let mut got = r.dual.characters.clone();
        oracle.sort_by_key(|c| format!("{c:?}"));
        got.sort_by_key(|c| format!("{c:?}"));
        ensure(got == oracle, || format!("characters {:?} differ from {oracle:?}", r.dual.characters))?;
        let inv_n = field.from_i64(n as i64).inv().ok_or("|G| not invertible")?;
        for g in 0..n {
            for chi in 0..n {
                let expected = &r.dual.characters[chi][g].inv().ok_or("zero character value")? * &inv_n;
                ensure(r.gamma[g][chi] == expected, || format!("γ[{g}][{chi}] = {} ≠ {expected}", r.gamma[g][chi]))?;
            }
        }
        lines.push(format!("{} ({n}×{n})", inst.name));
    }
    Ok(lines.join(", "))
}

fn shift_closure() -> Outcome {
    let gs = e(GradedSwap::new(F5))?;
    let r = e(gs.shift_closure(Budget::default(), 1))?;
    ensure(r.structures_on_m == [0, 0], || format!("structures on M: {:?}", r.structures_on_m))?;
    // Structures on V_0 are the square roots of 1 in End(V_0) = k.
    let roots = (0..5).filter(|x| (x * x) % 5 == 1).count();
    ensure(r.structures_on_v0 == roots, || format!("{} structures on V0, expected {roots}", r.structures_on_v0))?;
    // φ_g M_1 = M_2. Over a discrete base a closed invertible degree-0 map matches entries
    // one to one, and the entries of M_1 and M_2 differ, so θ_g cannot exist.
    let sorted = |i: usize| {
        let mut v = gs.m(i).entries;
        v.sort();
        v
    };
    ensure(sorted(1) != sorted(2), || "M1 and M2 have the same entries".into())?;
    ensure(gs.cohomology(&gs.m(1)) == gs.cohomology(&gs.v(0)), || "M1 is not quasi-isomorphic to V0".into())?;
    ensure(r.affirmative(), || format!("{} listed objects isomorphic to (V0, 1)", r.isomorphic_to_v0))?;
    Ok(format!("{} listed equivariant objects searched, none isomorphic to (V0, 1)", r.searched))
}

/// `dim_x(N^i)` read off the entries: `(x, n)` sits in degree `-n`.
fn entry_dims(gs: &GradedSwap, c: &Construction) -> Result<std::collections::BTreeMap<i64, [i64; 3]>, String> {
    let t = e(gs.build(c))?;
    let mut out = std::collections::BTreeMap::new();
    for &(x, n) in &t.entries {
        out.entry(-n).or_insert([0i64; 3])[x] += 1;
    }
    Ok(out)
}

fn graded_parity() -> Outcome {
    let gs = e(GradedSwap::new(F5))?;
    let samples = e(gs.sample(120, 12, 3))?;
    let mut invariant = 0;
    for c in &samples {
        let dims = entry_dims(&gs, c)?;
        let get = |i: i64| dims.get(&i).copied().unwrap_or([0; 3]);
        let (lo, hi) = (dims.keys().next().copied().unwrap_or(0), dims.keys().last().copied().unwrap_or(0));
        for i in lo - 1..=hi + 1 {
            ensure(get(i)[1] + get(i)[2] == get(i)[0] + get(i + 1)[0], || format!("relation fails in degree {i} for {c:?}"))?;
        }
        // Euler characteristic of Hom(V_0, N) computed on cochains.
        let euler: i64 = dims.iter().map(|(i, d)| if i % 2 == 0 { d[0] } else { -d[0] }).sum();
        let report = e(gs.parity(c))?;
        ensure(report.euler0 == euler, || format!("cohomological Euler characteristic {} ≠ {euler}", report.euler0))?;
        if matches!(c, Construction::Induced(_)) {
            invariant += 1;
            ensure(euler % 2 == 0, || format!("invariant sample with odd Euler characteristic: {c:?}"))?;
        }
    }
    let summary = e(gs.sample_report(&samples))?;
    ensure(summary.passes() && summary.equivariant == invariant, || format!("{summary:?}"))?;
    // V_0 has Euler characteristic 1, so no invariant sample is quasi-isomorphic to it.
    let v0 = gs.v(0);
    let v0_euler: i64 = v0.entries.iter().filter(|(x, _)| *x == 0).map(|(_, n)| if n % 2 == 0 { 1 } else { -1 }).sum();
    ensure(v0_euler == 1, || "V0 Euler characteristic".into())?;
    let cmp = e(gs.comparison(true, Budget::default(), 1))?;
    ensure(cmp.split_unit.passes(), || format!("{:?}", cmp.split_unit.failures))?;
    ensure(cmp.simple_hit(true, 0) && cmp.simple_hit(true, 1), || "a simple is missed with V0 listed".into())?;
    Ok(format!(
        "{} samples, {invariant} invariant with even Euler characteristic; both simples hit with V0 listed",
        samples.len()
    ))
}

fn karoubi_suite() -> Outcome {
    let c: Arc<dyn Category> = Arc::new(Envelope::new(Arc::new(Presentation::ground_field(F5))));
    let lines = vec![Obj::base(&[]), Obj::base(&[0]), Obj::base(&[0, 0])];
    let expected: usize = (0..3).map(|n| count_matrices(5, n, true)).sum();
    match e(idempotent_completeness(&c, &lines, Budget::default(), 1))? {
        Completeness::Complete { idempotents } => {
            ensure(idempotents == expected, || format!("{idempotents} idempotents, expected {expected}"))?
        }
        other => return Err(format!("matrix category reported {other:?}")),
    }
    let even = e(instances::even_dimensional(F5))?;
    let kar = KaroubiCat::new(even.action.category().clone());
    match e(idempotent_completeness(even.action.category(), &even.objects, Budget::default(), 1))? {
        Completeness::NotSplit { object, idempotent, .. } => {
            let rank = e(idempotent_rank(&kar, &even.objects[object], &idempotent))?;
            ensure(rank.is_some_and(|r| r % 2 == 1), || format!("witness has rank {rank:?}"))?;
        }
        other => return Err(format!("even-dimensional category reported {other:?}")),
    }
    let mut checked = 0;
    for inst in [e(instances::trivial_z2(F5))?, e(instances::swap_z2(F5))?] {
        let eq = e(Equivariantization::new(inst.action.clone()))?;
        let monad = eq.induce_forget().monad();
        let comonad = eq.forget_induce().comonad();
        for r in [
            e(restricts_to_action(&*inst.action, &KaroubiAction::new(inst.action.clone()), &inst.objects))?,
            e(restricts_to_monad(&*monad, &KaroubiMonad::new(monad.clone()), &inst.objects))?,
            e(restricts_to_comonad(&*comonad, &KaroubiComonad::new(comonad.clone()), &inst.objects))?,
        ] {
            ensure(r.passes(), || format!("{}: {:?}", inst.name, r.failures))?;
            checked += r.checked;
        }
    }
    Ok(format!("{expected} idempotents split, odd-rank witness on the even subcategory, {checked} restriction equations"))
}

fn determinism() -> Outcome {
    let fixture = |n: &str| std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(n);
    let runs: &[(&str, Command, Option<&str>)] = &[
        ("trivial_z2.json", Command::Validate, None),
        ("trivial_z2.json", Command::Envelope, None),
        ("trivial_z2.json", Command::Equivariantize, None),
        ("trivial_z2.json", Command::Adjunction, None),
        ("trivial_z2.json", Command::Comparison, None),
        ("trivial_z2.json", Command::Karoubi, Some("extend")),
        ("trivial_z2.json", Command::Reversion, None),
        ("cyclic_z3_f7.json", Command::Reversion, None),
        ("even_dimensional.json", Command::Comparison, Some("descent")),
        ("even_dimensional.json", Command::Karoubi, None),
        ("graded_swap.json", Command::Dg, Some("shift-closure")),
        ("graded_swap.json", Command::Dg, Some("parity")),
        ("graded_swap.json", Command::Dg, Some("homotopy-comparison")),
    ];
    for (file, command, job) in runs {
        let input = e(cli::load(&fixture(file)))?;
        let job = Job {
            command: *command,
            job: e(job_name(*command, *job))?,
            budget: Budget::default(),
            seed: 11,
        };
        let a = emit(&e(cli::run(Some(&input), &job))?, Format::Json);
        let b = emit(&e(cli::run(Some(&e(cli::load(&fixture(file)))?), &job))?, Format::Json);
        ensure(a == b, || format!("{file} {}: reports differ", job.job))?;
    }
    Ok(format!("{} jobs byte-identical across reruns", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("adjunction identities", adjunction_identities),
        ("comodule comparison is an equivalence", comodule_comparison),
        ("even-dimensional descent fails and is repaired", even_dimensional_descent),
        ("beta is a comonad isomorphism", beta_checks),
        ("reversion is an equivalence", reversion_equivalence),
        ("gamma matches character orthogonality", gamma_matches_characters),
        ("shifted cone objects carry no structure", shift_closure),
        ("graded dimension relation and parity", graded_parity),
        ("idempotent completion", karoubi_suite),
        ("deterministic reports", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let slow = took > Duration::from_secs(60);
        match (&result, slow) {
            (Ok(detail), false) => println!("PASS {:>2} {name}: {detail} ({:.1}s)", i + 1, took.as_secs_f64()),
            (Ok(_), true) => println!("FAIL {:>2} {name}: exceeded 60s ({:.1}s)", i + 1, took.as_secs_f64()),
            (Err(why), _) => println!("FAIL {:>2} {name}: {why} ({:.1}s)", i + 1, took.as_secs_f64()),
        }
        if result.is_err() || slow {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
