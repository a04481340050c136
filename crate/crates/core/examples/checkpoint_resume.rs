//! Write a run directory from a TOML config, then resume it with a larger
//! generation budget. The resumed log continues exactly where the
//! checkpoint left off.

use ising_synth::harness::{read_checkpoint, read_log, resume_experiment, run_experiment, ExperimentConfig};

fn main() -> ising_synth::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let text = format!(
        r#"
target = "CNOT"
algo = "qeqea"
len = 5
pop = 4
max_generations = 400
checkpoint_every = 100
seed = 11
out = "{}"
"#,
        dir.path().display()
    );
    let cfg = ExperimentConfig::from_toml_str(&text)?;
    let first = run_experiment(&cfg)?;
    println!(
        "first leg: {} generations, best {:.4} ({})",
        first.generations,
        first.final_fitness,
        first.stop_reason.as_str()
    );

    let cp = read_checkpoint(dir.path())?;
    println!("checkpoint holds generation {}", cp.state.generation());

    let resumed = resume_experiment(dir.path(), Some(1_500))?;
    let log = read_log(&dir.path().join("generations.jsonl"))?;
    println!(
        "resumed: {} generations, best {:.4} ({}), {} log lines",
        resumed.generations,
        resumed.final_fitness,
        resumed.stop_reason.as_str(),
        log.len()
    );
    for f in ["config.toml", "generations.jsonl", "checkpoint.json", "report.json", "summary.txt"] {
        println!("  {f}");
    }
    print!("{}", std::fs::read_to_string(dir.path().join("summary.txt")).expect("summary"));
    Ok(())
}
