use eqcat::cli::{emit, job_name, parse, run, Command, Format, Job};
use eqcat::Budget;

const DOC: &str = r#"{
  "name": "two lines swapped",
  "field": { "prime": 3 },
  "category": {
    "objects": ["L1", "L2"],
    "homs": [
      { "from": "L1", "to": "L1", "basis": ["e1"] },
      { "from": "L2", "to": "L2", "basis": ["e2"] }
    ],
    "identities": { "L1": { "e1": "1" }, "L2": { "e2": "1" } },
    "products": [
      { "g": ["L1", "L1", "e1"], "f": ["L1", "L1", "e1"], "result": { "e1": "1" } },
      { "g": ["L2", "L2", "e2"], "f": ["L2", "L2", "e2"], "result": { "e2": "1" } }
    ]
  },
  "group": { "cyclic": 2 },
  "action": { "permutation": [["L1", "L2"], ["L2", "L1"]] },
  "objects": [[], ["L1"], ["L2"], ["L1", "L2"]]
}"#;

fn main() -> eqcat::Result<()> {
    let input = parse(DOC)?;
    for command in [Command::Validate, Command::Adjunction, Command::Reversion] {
        let job = Job {
            command,
            job: job_name(command, None)?,
            budget: Budget::default(),
            seed: 0,
        };
        let report = run(Some(&input), &job)?;
        print!("{}", emit(&report, Format::Text).lines().take(3).collect::<Vec<_>>().join("\n"));
        println!("\n");
    }
    Ok(())
}
