//! Acceptance criteria, one line per criterion.
//!
//! Runs with `harness = false` so every line is printed whether it passes or
//! not. Hard criteria that fail make the process exit non-zero; the soft
//! comparison (AC3) is reported but never fails the run.
//!
//! `cargo test --release -p ising-synth --test acceptance`

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ising_synth::encoding::{
    estimate_axis, mutate_qutrit, su3_operator, QutritState, Su3Params,
};
use ising_synth::engine::{init_population, run_qeqea_named, PopulationConfig};
use ising_synth::fitness::{fitness_value, target_matrix};
use ising_synth::ga::{run_ga_named, GaConfig};
use ising_synth::gates::{
    enumerate_templates, expand_rotation, interaction_gate, pauli_z, rotation_gate, Axis,
};
use ising_synth::harness::reference_cnot_circuit;
use ising_synth::render::render_circuit;
use ising_synth::report::RunReport;
use ising_synth::{Complex, ComplexMatrix, GateSet};

const SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

type Criterion = (&'static str, &'static str, fn() -> Outcome);

enum Status {
    Pass,
    Fail,
    SoftPass,
    SoftFail,
}

struct Outcome {
    status: Status,
    detail: String,
}

fn hard(ok: bool, detail: String) -> Outcome {
    Outcome {
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn soft(ok: bool, detail: String) -> Outcome {
    Outcome {
        status: if ok { Status::SoftPass } else { Status::SoftFail },
        detail,
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn qeqea(target: &str, wires: usize, len: usize, pop: usize, gens: u64, seed: u64) -> RunReport {
    let t = target_matrix(target, wires).unwrap();
    let mut cfg = PopulationConfig::new(wires, len, pop);
    cfg.max_generations = gens;
    run_qeqea_named(&cfg, &t.matrix, &t.name, seed).unwrap()
}

fn ga(target: &str, wires: usize, len: usize, gens: u64, seed: u64) -> RunReport {
    let t = target_matrix(target, wires).unwrap();
    let mut cfg = GaConfig::new(wires, len);
    cfg.max_generations = gens;
    run_ga_named(&cfg, &t.matrix, &t.name, seed).unwrap()
}

fn reached(r: &RunReport) -> bool {
    r.final_fitness >= 0.999
}

fn ac1() -> Outcome {
    // every population size in the allowed range, five seeds each
    let results: Vec<(usize, Vec<f64>)> = (1..=10usize)
        .into_par_iter()
        .map(|pop| {
            let f = SEEDS.iter().map(|&s| qeqea("CNOT", 2, 3, pop, 50_000, s).final_fitness).collect();
            (pop, f)
        })
        .collect();
    let best_pop = results
        .iter()
        .max_by_key(|(_, f)| f.iter().filter(|&&x| x >= 0.999).count())
        .unwrap();
    let hits = best_pop.1.iter().filter(|&&x| x >= 0.999).count();
    let top = results.iter().flat_map(|(_, f)| f.iter().copied()).fold(0.0, f64::max);
    let supplementary: usize = SEEDS.iter().filter(|&&s| reached(&qeqea("CNOT", 2, 5, 10, 50_000, s))).count();
    hard(
        hits >= 4,
        format!(
            "len=3: best pop reaches 0.999 in {hits}/5 seeds, highest fitness {top:.4} over pop 1..=10 \
             (informational, len=5 pop=10: {supplementary}/5)"
        ),
    )
}

fn ac2() -> Outcome {
    let runs: Vec<RunReport> = SEEDS.par_iter().map(|&s| ga("CNOT", 2, 3, 10_000, s)).collect();
    let hits = runs.iter().filter(|r| reached(r)).count();
    let top = runs.iter().map(|r| r.final_fitness).fold(0.0, f64::max);
    let len5: Vec<RunReport> = SEEDS.par_iter().map(|&s| ga("CNOT", 2, 5, 10_000, s)).collect();
    let len5_hits = len5.iter().filter(|r| reached(r)).count();
    let len5_gens = median(len5.iter().map(|r| r.generations as f64).collect());
    hard(
        hits == 5,
        format!(
            "len=3: {hits}/5 seeds reach 0.999, highest fitness {top:.4} \
             (informational, len=5: {len5_hits}/5, median {len5_gens} generations)"
        ),
    )
}

fn ac3() -> Outcome {
    let pairs: Vec<(f64, f64)> = SEEDS
        .par_iter()
        .map(|&s| {
            (
                ga("Toffoli", 3, 16, 20_000, s).final_fitness,
                qeqea("Toffoli", 3, 16, 10, 20_000, s).final_fitness,
            )
        })
        .collect();
    let g = median(pairs.iter().map(|p| p.0).collect());
    let q = median(pairs.iter().map(|p| p.1).collect());
    soft(g >= q, format!("median best fitness GA {g:.4} vs QEQEA {q:.4} after 20000 generations"))
}

fn ac4() -> Outcome {
    let best: Vec<f64> = SEEDS
        .par_iter()
        .map(|&s| qeqea("Toffoli", 3, 16, 10, 50_000, s).final_fitness)
        .collect();
    let hits = best.iter().filter(|&&f| f >= 0.55).count();
    let shown: Vec<String> = best.iter().map(|f| format!("{f:.4}")).collect();
    hard(hits >= 3, format!("{hits}/5 seeds reach 0.55 (best per seed: {})", shown.join(", ")))
}

fn random_circuit_unitary(wires: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let set = GateSet::new(wires).unwrap();
    let templates = enumerate_templates(wires).unwrap();
    let mut mats = Vec::new();
    for _ in 0..12 {
        let w = rng.random_range(1..=wires);
        let axis = Axis::ALL[rng.random_range(0..3)];
        mats.push(expand_rotation(axis, rng.random_range(0.0..2.0 * PI), w, wires).unwrap());
        let t = &templates[rng.random_range(0..templates.len())];
        mats.push(interaction_gate(t, rng.random_range(0.0..2.0 * PI)));
    }
    set.compose(&mats)
}

fn ac5() -> Outcome {
    let mut worst_self = 0.0f64;
    for (name, wires) in [("CNOT", 2), ("Toffoli", 3), ("Peres", 3), ("CCCNOT", 4)] {
        let t = target_matrix(name, wires).unwrap().matrix;
        worst_self = worst_self.max((fitness_value(&t, &t).unwrap() - 1.0).abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_phase = 0.0f64;
    for _ in 0..100 {
        let u = random_circuit_unitary(3, &mut rng);
        let v = random_circuit_unitary(3, &mut rng);
        let phase = Complex::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
        let phased = u.scale(phase);
        worst_phase = worst_phase
            .max((fitness_value(&phased, &u).unwrap() - 1.0).abs())
            .max((fitness_value(&phased, &v).unwrap() - fitness_value(&u, &v).unwrap()).abs());
    }
    let x = rotation_gate(Axis::X, PI).scale(Complex::new(0.0, 1.0));
    let fx = fitness_value(&x, &ComplexMatrix::identity(2)).unwrap();
    hard(
        worst_self <= 1e-12 && worst_phase <= 1e-12 && fx == 0.0,
        format!("self {worst_self:.1e}, phase {worst_phase:.1e}, fitness(X, I2) = {fx}"),
    )
}

fn ac6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for wires in 2..=4 {
        for t in enumerate_templates(wires).unwrap() {
            let (i, j) = (t.pair().first(), t.pair().second());
            for _ in 0..20 {
                let theta = rng.random_range(0.0..2.0 * PI);
                let mut zz = ComplexMatrix::identity(1);
                for w in 1..=wires {
                    let f = if w == i || w == j { pauli_z() } else { ComplexMatrix::identity(2) };
                    zz = zz.kron(&f);
                }
                let diag: Vec<Complex> = (0..zz.dim())
                    .map(|k| (Complex::new(0.0, -theta / 2.0) * zz[(k, k)]).exp())
                    .collect();
                worst = worst.max(interaction_gate(&t, theta).max_abs_diff(&ComplexMatrix::diagonal(&diag)));
                cases += 1;
            }
        }
    }
    hard(worst < 1e-10, format!("{cases} cases, max deviation {worst:.1e}"))
}

fn ac7() -> Outcome {
    let s = QutritState::new(
        Complex::new(-0.43, -0.16),
        Complex::new(0.85, 0.08),
        Complex::new(0.03, -0.24),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 100_000;
    let ys = (0..n).filter(|_| estimate_axis(&s, 1, &mut rng) == Axis::Y).count();
    let freq = ys as f64 / n as f64;
    hard((freq - 0.729).abs() <= 0.01, format!("Y frequency {freq:.4} over {n} draws"))
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_op = 0.0f64;
    for _ in 0..1000 {
        worst_op = worst_op.max(su3_operator(&Su3Params::random(&mut rng)).unitarity_deviation());
    }
    let mut s = QutritState::random(&mut rng);
    let mut worst_norm = 0.0f64;
    for _ in 0..10_000 {
        s = mutate_qutrit(&s, rng.random_range(0.0..1.0), &mut rng);
        worst_norm = worst_norm.max((s.norm_sqr().sqrt() - 1.0).abs());
    }
    hard(
        worst_op < 1e-10 && worst_norm <= 1e-9,
        format!("max U†U deviation {worst_op:.1e}, max norm drift {worst_norm:.1e}"),
    )
}

fn ac9() -> Outcome {
    let cfg = PopulationConfig::new(3, 4, 2);
    let pop = init_population(&cfg, 0).unwrap();
    let sizes_ok = pop.qubits.len() == 48 && pop.qutrits.len() == 24;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut exact = true;
    let mut slots = 0;
    for _ in 0..50 {
        let l = PopulationConfig::new(rng.random_range(2..=5), rng.random_range(1..=12), rng.random_range(1..=10)).layout();
        for flat in 0..l.qubit_count() {
            let r = l.decode(flat);
            exact &= l.flat_index(r.slot_kind, r.individual, r.position) == flat && r.flat_index == flat;
            slots += 1;
        }
    }
    hard(
        sizes_ok && exact,
        format!("{} qubits, {} qutrits; {slots} slots round-tripped", pop.qubits.len(), pop.qutrits.len()),
    )
}

fn ac10() -> Outcome {
    let t = target_matrix("Toffoli", 3).unwrap();
    let mut cfg = PopulationConfig::new(3, 6, 4);
    cfg.max_generations = 10_000;
    cfg.target_fitness = 1.0;
    let trace = |parallel: bool| {
        let mut c = cfg.clone();
        c.parallel = parallel;
        run_qeqea_named(&c, &t.matrix, &t.name, 10).unwrap().best_fitness_trace()
    };
    let (s1, s2, p1, p2) = (trace(false), trace(false), trace(true), trace(true));
    let mut g = GaConfig::new(3, 6);
    g.max_generations = 10_000;
    g.target_fitness = 1.0;
    let ga_trace = |parallel: bool| {
        let mut c = g.clone();
        c.parallel = parallel;
        run_ga_named(&c, &t.matrix, &t.name, 10).unwrap().best_fitness_trace()
    };
    let (gs, gp) = (ga_trace(false), ga_trace(true));
    let ok = s1.len() == 10_000 && s1 == s2 && p1 == p2 && s1 == p1 && gs == gp && gs.len() == 10_000;
    hard(ok, format!("QEQEA and GA traces of {} generations identical across runs and modes", s1.len()))
}

fn ac11() -> Outcome {
    let text = render_circuit(&reference_cnot_circuit());
    hard(text == "R1y(θ=1.570796)J12(θ=4.712389)R1x(θ=4.712389)", format!("`{text}`"))
}

fn ac12() -> Outcome {
    let monotone = |r: &RunReport| r.best_fitness_trace().windows(2).all(|w| w[1] >= w[0]);
    let runs = [
        ("CCCNOT qeqea", qeqea("CCCNOT", 4, 16, 10, 10_000, 1)),
        ("Peres qeqea", qeqea("Peres", 3, 16, 10, 10_000, 1)),
        ("Peres ga", ga("Peres", 3, 16, 10_000, 1)),
        ("CCCNOT ga", ga("CCCNOT", 4, 16, 1_000, 1)),
    ];
    let ok = runs.iter().all(|(_, r)| monotone(r) && r.generations <= 10_000);
    let shown: Vec<String> = runs
        .iter()
        .map(|(n, r)| format!("{n} {:.4}@{}", r.final_fitness, r.generations))
        .collect();
    hard(ok, format!("monotone traces; {}", shown.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("AC1", "CNOT synthesis, QEQEA", ac1),
        ("AC2", "CNOT synthesis, GA", ac2),
        ("AC3", "GA outperforms QEQEA on Toffoli", ac3),
        ("AC4", "Toffoli desk-scale floor", ac4),
        ("AC5", "fitness oracle properties", ac5),
        ("AC6", "interaction-template equivalence", ac6),
        ("AC7", "Born-rule statistics", ac7),
        ("AC8", "SU(3) sweep", ac8),
        ("AC9", "layout arithmetic", ac9),
        ("AC10", "determinism", ac10),
        ("AC11", "rendering", ac11),
        ("AC12", "large-target smoke runs", ac12),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| a.starts_with("AC")).collect();
    let mut failed = Vec::new();
    for (id, title, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == id) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        let label = match out.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed.push(id);
                "FAIL"
            }
            Status::SoftPass => "SOFT-PASS",
            Status::SoftFail => "SOFT-FAIL",
        };
        println!(
            "{id:<5} {label:<9} {title}: {} [{:.1}s]",
            out.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed.is_empty() {
        println!("acceptance: all hard criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
