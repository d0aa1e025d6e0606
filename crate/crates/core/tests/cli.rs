use std::path::{Path, PathBuf};
use std::process::Command as Process;

use eqcat::cli::{self, emit, job_name, Command, Format, Input, Job, Loaded, Outcome, Report};
use eqcat::equivar::{equivariant_structures, structure};
use eqcat::lincat::envelope::Obj;
use eqcat::{Budget, Error, Field};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn load(name: &str) -> Input {
    cli::load(&fixture(name)).unwrap()
}

fn run(input: &Input, command: Command, job: Option<&str>) -> Report {
    let job = Job {
        command,
        job: job_name(command, job).unwrap(),
        budget: Budget::default(),
        seed: input.seed.unwrap_or(0),
    };
    cli::run(Some(input), &job).unwrap()
}

#[test]
fn trivial_z2_fixture_parses() {
    let input = load("trivial_z2.json");
    assert_eq!(input.field, Field::Prime(5));
    let Loaded::Linear(inst) = &input.loaded else { panic!("expected a linear instance") };
    assert_eq!(inst.action.group().order(), 2);
    assert_eq!(inst.objects, vec![Obj::base(&[]), Obj::base(&[0]), Obj::base(&[0, 0])]);
}

#[test]
fn graded_swap_fixture_parses_and_validates() {
    let input = load("graded_swap.json");
    assert!(matches!(input.loaded, Loaded::Graded(_)));
    let r = run(&input, Command::Validate, None);
    assert_eq!(r.verdict, Outcome::Affirmative, "{}", emit(&r, Format::Text));
    assert_eq!(r.certificates["action"]["failures"], serde_json::json!([]));
}

#[test]
fn non_prime_characteristic_is_located() {
    let Err(Error::Input(msg)) = cli::load(&fixture("not_prime.json")) else { panic!("expected an input error") };
    assert!(msg.contains("line 4"), "{msg}");
    assert!(msg.contains("4 is not prime"), "{msg}");
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let Err(Error::Input(msg)) = cli::parse("{\n  \"field\": \"Q\",\n  \"instance\": swap\n}") else {
        panic!("expected an input error")
    };
    assert!(msg.starts_with("line 3, column"), "{msg}");
}

#[test]
fn unknown_names_are_rejected_with_lines() {
    let doc = r#"{
  "field": "Q",
  "category": {
    "objects": ["a"],
    "homs": [{ "from": "a", "to": "b", "basis": ["x"] }],
    "identities": { "a": {} }
  }
}"#;
    let Err(Error::Input(msg)) = cli::parse(doc) else { panic!("expected an input error") };
    assert!(msg.contains("line 5") && msg.contains("\"b\""), "{msg}");
    let Err(Error::Input(msg)) = cli::parse(r#"{ "field": "Q", "instance": "nope" }"#) else { panic!() };
    assert!(msg.contains("unknown instance"), "{msg}");
}

#[test]
fn broken_category_names_the_failing_triple() {
    let r = run(&load("broken_associativity.json"), Command::Validate, None);
    assert_eq!(r.verdict, Outcome::Negative);
    let violations = r.certificates["presentation"]["violations"].as_array().unwrap();
    let assoc = violations.iter().find_map(|v| v.get("Associativity")).expect("an associativity violation");
    assert_eq!(assoc["objects"], serde_json::json!([0, 1, 1, 1]));
    assert_eq!(r.certificates["object_names"], serde_json::json!(["a", "b"]));
}

#[test]
fn reversion_on_trivial_z2_is_affirmative() {
    let r = run(&load("trivial_z2.json"), Command::Reversion, None);
    assert_eq!(r.verdict, Outcome::Affirmative, "{}", emit(&r, Format::Text));
    assert_eq!(r.certificates["certificate"]["verdict"], "equivalence");
    assert_eq!(r.certificates["gamma"], serde_json::json!([["3", "3"], ["3", "2"]]));
}

#[test]
fn shift_closure_job_is_affirmative_with_no_structures_on_m() {
    let r = run(&load("graded_swap.json"), Command::Dg, Some("shift-closure"));
    assert_eq!(r.verdict, Outcome::Affirmative);
    assert_eq!(r.certificates["structures_on_m"], serde_json::json!([0, 0]));
    assert_eq!(r.certificates["structures_on_v0"], 2);
}

#[test]
fn text_report_leads_with_the_verdict() {
    let r = run(&load("trivial_z2.json"), Command::Adjunction, None);
    assert!(emit(&r, Format::Text).starts_with("verdict: affirmative\n"));
    assert!("yaml".parse::<Format>().is_err());
}

#[test]
fn json_report_round_trips() {
    let r = run(&load("trivial_z2.json"), Command::Karoubi, None);
    let back: Report = serde_json::from_str(&emit(&r, Format::Json)).unwrap();
    assert_eq!(back, r);
}

/// The structures printed by `equivariantize` are the exact in-memory coordinates.
#[test]
fn printed_witnesses_match_the_computation() {
    let input = load("trivial_z2.json");
    let r = run(&input, Command::Equivariantize, None);
    let Loaded::Linear(inst) = &input.loaded else { unreachable!() };
    let found = equivariant_structures(&*inst.action, &Obj::base(&[0]), Budget::default()).unwrap().found;
    let printed = &r.certificates["objects"][1]["structures"];
    assert_eq!(printed.as_array().unwrap().len(), found.len());
    for (p, s) in printed.as_array().unwrap().iter().zip(&found) {
        assert_eq!(p, &serde_json::to_value(s).unwrap());
        let (_, thetas) = structure(s).unwrap();
        let coords: Vec<String> = thetas[1].coords.iter().map(|c| c.to_string()).collect();
        assert_eq!(p["Equivariant"][1][1]["coords"], serde_json::json!(coords));
    }
}

#[test]
fn unknown_jobs_are_input_errors() {
    assert!(matches!(job_name(Command::Dg, Some("nope")), Err(Error::Input(_))));
    assert_eq!(job_name(Command::Comparison, None).unwrap(), "comodules");
}

#[test]
fn binary_exit_statuses() {
    let bin = env!("CARGO_BIN_EXE_eqcat");
    let status = |args: &[&str]| Process::new(bin).args(args).output().unwrap().status.code();
    let f = |n: &str| fixture(n).to_string_lossy().into_owned();
    assert_eq!(status(&["validate", "--input", &f("trivial_z2.json")]), Some(0));
    assert_eq!(status(&["validate", "--input", &f("broken_associativity.json")]), Some(1));
    assert_eq!(status(&["equivariantize", "--input", &f("trivial_z2.json"), "--budget", "3"]), Some(2));
    assert_eq!(status(&["validate", "--input", &f("not_prime.json")]), Some(3));
    assert_eq!(status(&["validate", "--input", &f("trivial_z2.json"), "--format", "xml"]), Some(3));
    let json = |args: &[&str]| Process::new(bin).args(args).output().unwrap().stdout;
    let args = ["comparison", "--input", &f("trivial_z2.json"), "--format", "json", "--seed", "9"];
    assert_eq!(json(&args), json(&args));
}
