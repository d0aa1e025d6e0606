//! One runner per subcommand. Each returns a report whose certificates hold the exact data
//! behind its verdict.

use serde_json::{json, Value};

use super::document::{Input, Loaded};
use super::report::{Outcome, Report};
use crate::action::check_action;
use crate::descent::{comodule_descent, equivariant_representatives};
use crate::dg::graded::{missed, GradedSwap};
use crate::dg::presentation::DgPresentation;
use crate::equivar::{check_equivariant, equivariant_structures, structure, Equivariantization};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::instances::{self, Instance};
use crate::karoubi::{
    idempotent_completeness, restricts_to_action, restricts_to_comonad, restricts_to_monad, Completeness,
    KaroubiAction, KaroubiComonad, KaroubiMonad,
};
use crate::lincat::category::materialize;
use crate::lincat::equivalence::{EquivalenceCertificate, Verdict};
use crate::monadic::comodule_structures;
use crate::reversion::Reversion;
use crate::search::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Envelope,
    Equivariantize,
    Adjunction,
    Comparison,
    Karoubi,
    Reversion,
    Dg,
    Examples,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Envelope => "envelope",
            Command::Equivariantize => "equivariantize",
            Command::Adjunction => "adjunction",
            Command::Comparison => "comparison",
            Command::Karoubi => "karoubi",
            Command::Reversion => "reversion",
            Command::Dg => "dg",
            Command::Examples => "examples",
        }
    }

    /// Accepted `--job` values; the first is the default.
    pub fn jobs(self) -> &'static [&'static str] {
        match self {
            Command::Comparison => &["comodules", "descent"],
            Command::Karoubi => &["completeness", "extend"],
            Command::Dg => &["shift-closure", "parity", "homotopy-comparison", "check"],
            Command::Examples => &["descent-repair", "shift-closure", "graded-parity", "homotopy-comparison", "all"],
            _ => &["default"],
        }
    }
}

pub struct Job<'a> {
    pub command: Command,
    pub job: &'a str,
    pub budget: Budget,
    pub seed: u64,
}

impl Job<'_> {
    fn label(&self) -> String {
        match self.command.jobs() {
            [_] => self.command.name().to_string(),
            _ => format!("{} {}", self.command.name(), self.job),
        }
    }
}

/// Resolves the job name, failing with an input error when it is not offered by the command.
pub fn job_name(command: Command, job: Option<&str>) -> Result<&'static str> {
    let jobs = command.jobs();
    match job {
        None => Ok(jobs[0]),
        Some(j) => jobs.iter().copied().find(|k| *k == j).ok_or_else(|| {
            Error::Input(format!("{} has no job {j:?}; choose one of {}", command.name(), jobs.join(", ")))
        }),
    }
}

/// Runs a job. Malformed input is returned as an error; every other failure becomes a report.
pub fn run(input: Option<&Input>, job: &Job) -> Result<Report> {
    let (name, field) = match input {
        Some(i) => (i.name(), i.field),
        None => ("examples".to_string(), Field::Prime(5)),
    };
    let result = match (job.command, input.map(|i| &i.loaded)) {
        (Command::Examples, _) => examples(job),
        (_, None) => Err(Error::Input(format!("{} needs --input", job.command.name()))),
        (Command::Validate, Some(l)) => validate(l),
        (Command::Dg, Some(Loaded::Graded(gs))) => graded(gs, job.job, job),
        (Command::Dg, Some(Loaded::Dg { presentation, .. })) if job.job == "check" => dg_check(presentation),
        (Command::Dg, Some(_)) => Err(Error::Input(format!(
            "dg {} needs the graded-swap instance or a dg category with --job check",
            job.job
        ))),
        (c, Some(Loaded::Linear(inst))) => linear(c, inst, job),
        (c, Some(_)) => Err(Error::Input(format!("{} needs a linear instance", c.name()))),
    };
    match result {
        Ok((verdict, certificates)) => Ok(Report {
            job: job.label(),
            instance: name,
            field: field.to_string(),
            seed: job.seed,
            budget: job.budget.0,
            verdict,
            certificates,
        }),
        Err(e @ Error::Input(_)) => Err(e),
        Err(e) => Ok(Report::from_error(&job.label(), &name, &field.to_string(), job.seed, job.budget.0, &e)),
    }
}

type Outcome2 = Result<(Outcome, Value)>;

fn linear(command: Command, inst: &Instance, job: &Job) -> Outcome2 {
    match command {
        Command::Envelope => envelope(inst),
        Command::Equivariantize => equivariantize(inst, job),
        Command::Adjunction => adjunction(inst, job),
        Command::Comparison if job.job == "descent" => descent(inst, job),
        Command::Comparison => comodules(inst, job),
        Command::Karoubi if job.job == "extend" => extend(inst),
        Command::Karoubi => completeness(inst, job),
        Command::Reversion => reversion(inst, job),
        _ => unreachable!("dispatched in run"),
    }
}

fn cert_value(c: &EquivalenceCertificate) -> Value {
    c.summary()
}

fn is_equivalence(c: &EquivalenceCertificate) -> Outcome {
    match c.verdict() {
        Verdict::Equivalence => Outcome::Affirmative,
        Verdict::NotEquivalence => Outcome::Negative,
        Verdict::Undetermined => Outcome::BudgetExceeded,
    }
}

fn validate(loaded: &Loaded) -> Outcome2 {
    match loaded {
        Loaded::Linear(inst) => {
            let pres = inst.action.category().envelope().presentation().clone();
            let report = pres.validate()?;
            let action = check_action(&inst.action, &inst.objects)?;
            let ok = report.passes() && action.passes();
            Ok((Outcome::from_bool(ok), json!({ "object_names": pres.object_names(), "presentation": report, "action": action })))
        }
        Loaded::Graded(gs) => graded_check(gs),
        Loaded::Dg { presentation, .. } => dg_check(presentation),
    }
}

fn graded_check(gs: &GradedSwap) -> Outcome2 {
    let base = gs.pretr().base();
    let (outcome, mut v) = dg_check(base)?;
    let action = gs.ep.action.check(base)?;
    v["action"] = json!(action);
    Ok((outcome.and(Outcome::from_bool(action.passes())), v))
}

fn dg_check(dg: &DgPresentation) -> Outcome2 {
    let linear = dg.linear.validate()?;
    let report = dg.check()?;
    Ok((
        Outcome::from_bool(linear.passes() && report.passes()),
        json!({ "presentation": linear, "dg": report }),
    ))
}

fn envelope(inst: &Instance) -> Outcome2 {
    let c = inst.action.category();
    let names: Vec<String> = (0..inst.objects.len()).map(|i| format!("O{i}")).collect();
    let m = materialize(&**c, &inst.objects, &names)?;
    let report = m.presentation.validate()?;
    let mut dims = Vec::new();
    for x in &inst.objects {
        let mut row = Vec::new();
        for y in &inst.objects {
            row.push(c.hom_dim(x, y)?);
        }
        dims.push(row);
    }
    Ok((
        Outcome::from_bool(report.passes()),
        json!({ "objects": inst.objects, "hom_dims": dims, "materialized": report }),
    ))
}

fn equivariantize(inst: &Instance, job: &Job) -> Outcome2 {
    let action = check_action(&inst.action, &inst.objects)?;
    let mut outcome = Outcome::from_bool(action.passes());
    let mut per_object = Vec::new();
    for x in &inst.objects {
        let e = equivariant_structures(&*inst.action, x, job.budget)?;
        if !e.complete {
            outcome = outcome.and(Outcome::BudgetExceeded);
        }
        let mut checked = 0;
        for s in &e.found {
            let (f, thetas) = structure(s)?;
            let r = check_equivariant(&*inst.action, f, thetas)?;
            checked += r.checked;
            outcome = outcome.and(Outcome::from_bool(r.passes()));
        }
        per_object.push(json!({
            "object": x,
            "complete": e.complete,
            "tried": e.tried,
            "count": e.found.len(),
            "checks": checked,
            "structures": e.found,
        }));
    }
    Ok((outcome, json!({ "action": action, "objects": per_object })))
}

fn adjunction(inst: &Instance, job: &Job) -> Outcome2 {
    let eq = Equivariantization::new(inst.action.clone())?;
    let eq_objs = equivariant_representatives(&eq, &inst.objects, job.budget, job.seed)?;
    let fi = eq.forget_induce().check(&eq_objs, &inst.objects)?;
    let inf = eq.induce_forget().check(&inst.objects, &eq_objs)?;
    let ids = eq.check_unit_counit_identities(&inst.objects, &eq_objs)?;
    let ok = fi.passes() && inf.passes() && ids.passes();
    Ok((
        Outcome::from_bool(ok),
        json!({
            "equivariant_objects": eq_objs,
            "forget_induce": fi,
            "induce_forget": inf,
            "unit_counit": ids,
        }),
    ))
}

fn comodules(inst: &Instance, job: &Job) -> Outcome2 {
    let eq = Equivariantization::new(inst.action.clone())?;
    let sources = equivariant_representatives(&eq, &inst.objects, job.budget, job.seed)?;
    let comonad = eq.forget_induce().comonad();
    let mut targets = Vec::new();
    let mut tried = 0;
    for c in &inst.objects {
        let e = comodule_structures(&*comonad, c, job.budget)?;
        if !e.complete {
            return Err(job.budget.exceeded("comodule structures"));
        }
        tried += e.tried;
        targets.extend(e.found);
    }
    let cmp = &eq.comparisons()[0];
    let cert = crate::lincat::equivalence::check_equivalence(
        &*cmp.functor,
        &*cmp.source,
        &*cmp.target,
        &sources,
        &targets,
        job.budget,
        job.seed,
    )?;
    Ok((
        is_equivalence(&cert),
        json!({
            "functor": cmp.name,
            "sources": sources,
            "comodules": targets,
            "coactions_tried": tried,
            "certificate": cert_value(&cert),
        }),
    ))
}

fn descent(inst: &Instance, job: &Job) -> Outcome2 {
    let r = comodule_descent(inst, job.budget, job.seed)?;
    Ok((
        is_equivalence(&r.repaired),
        json!({
            "equivariant_objects": r.equivariant_objects,
            "comodules": r.comodules,
            "before": cert_value(&r.comparison),
            "witness": r.witness.as_ref().map(|(m, why)| json!({ "comodule": m, "reason": why })),
            "repaired_sources": r.repaired_sources,
            "after": cert_value(&r.repaired),
            "repair_source": r.repair_source,
        }),
    ))
}

fn completeness_value(c: &Completeness) -> (Outcome, Value) {
    match c {
        Completeness::Complete { idempotents } => {
            (Outcome::Affirmative, json!({ "complete": true, "idempotents_split": idempotents }))
        }
        Completeness::NotSplit { object, idempotent, reason } => (
            Outcome::Negative,
            json!({ "complete": false, "object": object, "idempotent": idempotent, "reason": reason }),
        ),
        Completeness::Unknown { reason } => (Outcome::BudgetExceeded, json!({ "complete": null, "reason": reason })),
    }
}

fn completeness(inst: &Instance, job: &Job) -> Outcome2 {
    let c = idempotent_completeness(inst.action.category(), &inst.objects, job.budget, job.seed)?;
    let (outcome, mut v) = completeness_value(&c);
    v["objects"] = json!(inst.objects);
    Ok((outcome, v))
}

fn extend(inst: &Instance) -> Outcome2 {
    let eq = Equivariantization::new(inst.action.clone())?;
    let action = restricts_to_action(&*inst.action, &KaroubiAction::new(inst.action.clone()), &inst.objects)?;
    let monad = eq.induce_forget().monad();
    let m = restricts_to_monad(&*monad, &KaroubiMonad::new(monad.clone()), &inst.objects)?;
    let comonad = eq.forget_induce().comonad();
    let c = restricts_to_comonad(&*comonad, &KaroubiComonad::new(comonad.clone()), &inst.objects)?;
    let ok = action.passes() && m.passes() && c.passes();
    Ok((Outcome::from_bool(ok), json!({ "action": action, "monad": m, "comonad": c })))
}

fn reversion(inst: &Instance, job: &Job) -> Outcome2 {
    let r = Reversion::new(inst.action.clone(), inst.objects.clone(), job.budget, job.seed)?;
    let eq_objs = equivariant_representatives(&r.eq, &inst.objects, job.budget, job.seed)?;
    let checks = r.check_isomorphisms(&eq_objs)?;
    let sources = inst.objects.iter().map(|c| r.lift(c)).collect::<Result<Vec<_>>>()?;
    let cert = r.certify(&sources, job.budget, job.seed)?;
    let outcome = Outcome::from_bool(checks.passes()).and(is_equivalence(&cert));
    Ok((
        outcome,
        json!({
            "characters": r.dual.characters,
            "gamma": r.gamma,
            "regular": checks.regular,
            "beta": checks.beta,
            "gamma_tilde": checks.gamma,
            "sources": sources,
            "certificate": cert_value(&cert),
        }),
    ))
}

fn graded(gs: &GradedSwap, which: &str, job: &Job) -> Outcome2 {
    match which {
        "shift-closure" => {
            let r = gs.shift_closure(job.budget, job.seed)?;
            Ok((Outcome::from_bool(r.affirmative()), json!(r)))
        }
        "parity" => {
            let samples = gs.sample(120, 12, job.seed)?;
            let r = gs.sample_report(&samples)?;
            Ok((Outcome::from_bool(r.passes()), json!({ "report": r, "samples": samples })))
        }
        "homotopy-comparison" => {
            let mut out = serde_json::Map::new();
            let mut outcome = Outcome::Affirmative;
            for (key, with_v0) in [("with_v0", true), ("without_v0", false)] {
                let r = gs.comparison(with_v0, job.budget, job.seed)?;
                let hits = [r.simple_hit(true, 0), r.simple_hit(true, 1)];
                outcome = outcome.and(Outcome::from_bool(r.split_unit.passes() && hits.iter().all(|h| *h)));
                out.insert(
                    key.into(),
                    json!({
                        "split_unit": r.split_unit,
                        "simples": r.simples,
                        "simples_hit_after_splitting": hits,
                        "simples_hit_before_splitting": [r.simple_hit(false, 0), r.simple_hit(false, 1)],
                        "missed_before_splitting": missed(&r.uncompleted),
                        "completed": cert_value(&r.completed),
                        "uncompleted": cert_value(&r.uncompleted),
                    }),
                );
            }
            Ok((outcome, Value::Object(out)))
        }
        "check" => graded_check(gs),
        other => Err(Error::Input(format!("unknown dg job {other:?}"))),
    }
}

fn examples(job: &Job) -> Outcome2 {
    let field = Field::Prime(5);
    let run_one = |which: &str| -> Outcome2 {
        match which {
            "descent-repair" => {
                let inst = instances::even_dimensional(field)?;
                let (outcome, v) = descent(&inst, job)?;
                let r = &v["witness"];
                Ok((outcome.and(Outcome::from_bool(!r.is_null())), v))
            }
            "shift-closure" => graded(&GradedSwap::new(field)?, "shift-closure", job),
            "graded-parity" => graded(&GradedSwap::new(field)?, "parity", job),
            "homotopy-comparison" => graded(&GradedSwap::new(field)?, "homotopy-comparison", job),
            other => Err(Error::Input(format!("unknown example {other:?}"))),
        }
    };
    if job.job != "all" {
        return run_one(job.job);
    }
    let mut out = serde_json::Map::new();
    let mut outcome = Outcome::Affirmative;
    for which in &Command::Examples.jobs()[..4] {
        let (o, v) = run_one(which)?;
        outcome = outcome.and(o);
        out.insert((*which).into(), json!({ "verdict": o, "certificates": v }));
    }
    Ok((outcome, Value::Object(out)))
}

