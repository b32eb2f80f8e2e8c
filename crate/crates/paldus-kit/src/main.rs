use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use paldus_kit::applications::{
    csf_prep_trials, dfs_roundtrip, prepare_uniform_csf, project_spin, uga_matrix_elements,
    uniform_csf_state,
};
use paldus_kit::circuit::{
    apply_circuit, paldus_circuit, run_isometry_check, Circuit, Gate, GateKind, StateVector,
};
use paldus_kit::combinatorics::{
    dimension_identities, enumerate_step_vectors, step_vector_labels, total_step_vectors,
    StepVector, UgaLabel,
};
use paldus_kit::dense::CMatrix;
use paldus_kit::gtstates::build_gt_state;
use paldus_kit::operators::U2Params;
use paldus_kit::resources::{
    givens_rotation_cost, incrementer_cost, multi_index_crossover, phase_gradient_t_cost,
    q_for_epsilon, total_paldus_cost, Strategy, ALL_STRATEGIES,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const SCHEMA: &str = "paldus-kit/1";

const EXIT_VALIDATION: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "paldus-kit", version, about = "Spin-adapted basis toolkit: enumeration, state construction, circuit simulation, and cost estimates")]
struct Cli {
    /// Optional key=value config file; explicit flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for all randomized subcommands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List valid step vectors, optionally restricted to one (N, 2S) sector.
    Enumerate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "two-s")]
        two_s: Option<usize>,
    },
    /// Sector dimension table for d orbitals.
    Dims {
        #[arg(long)]
        d: usize,
    },
    /// Check the dimension and symmetric-function identities.
    VerifyIdentities {
        #[arg(long, default_value_t = 8)]
        d_max: usize,
        /// Random evaluation points per numeric identity.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Print the occupation-basis amplitudes of one basis state.
    GtState {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "two-s")]
        two_s: usize,
        #[arg(long = "two-m")]
        two_m: i64,
        #[arg(long)]
        step: String,
    },
    /// Emit the transform circuit as JSON.
    BuildCircuit {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "include-n", default_value_t = true, action = ArgAction::Set)]
        include_n: bool,
        #[arg(long = "decouple-s", default_value_t = false, action = ArgAction::Set)]
        decouple_s: bool,
    },
    /// Run a circuit file on a state file.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify that every basis state maps to its encoded label.
    CheckIsometry {
        #[arg(long)]
        d: usize,
    },
    /// Project a 2d-qubit state onto a total-spin sector.
    SpinProject {
        #[arg(long)]
        d: usize,
        #[arg(long = "two-s")]
        two_s: usize,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Uniform superposition preparation: acceptance statistics and overlap.
    CsfPrep {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 10000)]
        trials: usize,
    },
    /// Round-trip a random payload through the protected encoding.
    DfsDemo {
        #[arg(long)]
        d: usize,
    },
    /// Ladder-operator matrix elements in the spin-adapted basis.
    UgaElements {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Fault-tolerant cost comparison across lookup strategies.
    Resources {
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 1e-5)]
        epsilon: f64,
        #[arg(long, default_value_t = 4)]
        k: u64,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        strategy: Option<Strategy>,
        #[arg(long, default_value_t = false)]
        sweep: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn validation(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_VALIDATION, message: msg.into() }
}

fn verification(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_VERIFICATION, message: msg.into() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests are successes; anything else is a
            // usage error.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    let config = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    let format = cli.format.unwrap_or_else(|| {
        match config.get("format").map(String::as_str) {
            Some("json") => Format::Json,
            _ => Format::Text,
        }
    });
    let seed = cli
        .seed
        .or_else(|| config.get("seed").and_then(|s| s.parse().ok()))
        .unwrap_or(0);
    match run(cli.command, format, seed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<HashMap<String, String>, String> {
    let mut map = HashMap::new();
    let Some(path) = path else { return Ok(map) };
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(format!("bad config line: {line}"));
        };
        map.insert(k.trim().to_string(), v.trim().trim_matches('"').to_string());
    }
    Ok(map)
}

fn run(command: Command, format: Format, seed: u64) -> Result<(), Failure> {
    match command {
        Command::Enumerate { d, n, two_s } => {
            let filter = match (n, two_s) {
                (Some(n), Some(s)) => Some((n, s)),
                (None, None) => None,
                _ => return Err(validation("--n and --two-s must be given together")),
            };
            let vectors = enumerate_step_vectors(d, filter);
            if format == Format::Json {
                let rows: Vec<Value> = vectors
                    .iter()
                    .map(|v| {
                        let (n, s) = step_vector_labels(v);
                        json!({"step": v.to_string(), "n": n, "twoS": s})
                    })
                    .collect();
                emit(json!({"schema": SCHEMA, "d": d, "count": vectors.len(), "stepVectors": rows}));
            } else {
                for v in &vectors {
                    let (n, s) = step_vector_labels(v);
                    println!("{v}  N={n} 2S={s}");
                }
                println!("total: {}", vectors.len());
            }
            Ok(())
        }
        Command::Dims { d } => {
            let report = dimension_identities(d)
                .map_err(|e| verification(format!("dimension identity failed: {e}")))?;
            if format == Format::Json {
                let rows: Vec<Value> = report
                    .sectors
                    .iter()
                    .map(|&(n, two_s, dim)| {
                        json!({"n": n, "twoS": two_s, "dim": dim, "mult": two_s + 1})
                    })
                    .collect();
                emit(json!({
                    "schema": SCHEMA, "d": report.d, "sectors": rows,
                    "totalStepVectors": report.total_step_vectors,
                    "weightedTotal": report.weighted_total,
                }));
            } else {
                println!("N\t2S\tdim\tmult");
                for &(n, two_s, dim) in &report.sectors {
                    println!("{n}\t{two_s}\t{dim}\t{}", two_s + 1);
                }
                println!("total step vectors: {}", report.total_step_vectors);
                println!("weighted total (4^d): {}", report.weighted_total);
            }
            Ok(())
        }
        Command::VerifyIdentities { d_max, trials } => verify_identities(d_max, trials, format, seed),
        Command::GtState { d, n, two_s, two_m, step } => {
            let step = StepVector::parse(&step).map_err(|e| validation(e.to_string()))?;
            if step.d() != d {
                return Err(validation(format!("step vector has {} orbitals, expected {d}", step.d())));
            }
            let label = UgaLabel::new(step, two_m).map_err(|e| validation(e.to_string()))?;
            if label.n_particles != n || label.two_s != two_s {
                return Err(validation(format!(
                    "step vector implies N={} 2S={}, not N={n} 2S={two_s}",
                    label.n_particles, label.two_s
                )));
            }
            let state = build_gt_state(&label).map_err(|e| validation(e.to_string()))?;
            let mut rows: Vec<(u64, f64)> = state.amplitudes.into_iter().collect();
            rows.sort_by_key(|&(b, _)| b);
            if format == Format::Json {
                let amps: Vec<Value> = rows
                    .iter()
                    .map(|&(b, a)| {
                        json!({"bits": format!("{:0w$b}", b, w = 2 * d), "re": a, "im": 0.0})
                    })
                    .collect();
                emit(json!({"schema": SCHEMA, "d": d, "amplitudes": amps}));
            } else {
                for (b, a) in rows {
                    println!("{:0w$b}  {a:.12}  0.000000000000", b, w = 2 * d);
                }
            }
            Ok(())
        }
        Command::BuildCircuit { d, out, include_n, decouple_s } => {
            let circuit = paldus_circuit(d, include_n, decouple_s);
            let v = circuit_to_json(&circuit);
            match out {
                Some(path) => std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap())
                    .map_err(|e| validation(format!("{}: {e}", path.display())))?,
                None => emit(v),
            }
            Ok(())
        }
        Command::Simulate { circuit, input, out } => {
            let text = std::fs::read_to_string(&circuit)
                .map_err(|e| validation(format!("{}: {e}", circuit.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| validation(e.to_string()))?;
            let circuit = circuit_from_json(&v).map_err(validation)?;
            let mut state = read_state_file(&input)?;
            if state.width != circuit.width {
                return Err(validation(format!(
                    "state width {} does not match circuit width {}",
                    state.width, circuit.width
                )));
            }
            apply_circuit(&circuit, &mut state).map_err(|e| validation(e.to_string()))?;
            match out {
                Some(path) => write_state_file(&path, &state)?,
                None => print_state(&state, format),
            }
            Ok(())
        }
        Command::CheckIsometry { d } => {
            let report = run_isometry_check(d).map_err(|e| verification(e.to_string()))?;
            if format == Format::Json {
                emit(json!({"schema": SCHEMA, "report": report}));
            } else {
                println!(
                    "d={}: all {} labels pass (worst overlap deviation {:.3e})",
                    report.d, report.labels, report.worst_deviation
                );
            }
            Ok(())
        }
        Command::SpinProject { d, two_s, input } => {
            let state = read_state_file(&input)?;
            if state.width != 2 * d {
                return Err(validation(format!(
                    "state width {} does not match 2d = {}",
                    state.width,
                    2 * d
                )));
            }
            let (prob, post) =
                project_spin(&state.amps, d, two_s).map_err(|e| validation(e.to_string()))?;
            if format == Format::Json {
                let amps = amplitudes_json(&post, 2 * d);
                emit(json!({"schema": SCHEMA, "twoS": two_s, "probability": prob, "post": amps}));
            } else {
                println!("probability: {prob:.12}");
                for (idx, a) in post.iter().enumerate() {
                    if a.norm() > 1e-12 {
                        println!("{:0w$b}  {:.12}  {:.12}", idx, a.re, a.im, w = 2 * d);
                    }
                }
            }
            Ok(())
        }
        Command::CsfPrep { d, trials } => {
            let accepted = csf_prep_trials(d, trials, seed);
            let result = prepare_uniform_csf(d, seed.wrapping_add(1));
            let target = uniform_csf_state(d);
            let overlap = result.state.inner(&target).norm();
            let p = result.success_probability;
            let expected = total_step_vectors(d)
                .to_string()
                .parse::<f64>()
                .unwrap()
                / 4f64.powi(d as i32);
            let rate = accepted as f64 / trials as f64;
            let sigma = (p * (1.0 - p) / trials as f64).sqrt();
            let within = (rate - p).abs() <= 3.0 * sigma;
            if format == Format::Json {
                emit(json!({
                    "schema": SCHEMA, "d": d, "seed": seed, "trials": trials,
                    "accepted": accepted, "acceptanceRate": rate,
                    "exactProbability": p, "formulaProbability": expected,
                    "within3Sigma": within, "overlap": overlap,
                    "attempts": result.attempts,
                }));
            } else {
                println!("seed: {seed}");
                println!("exact acceptance probability: {p:.12} (formula {expected:.12})");
                println!("empirical rate: {rate:.4} over {trials} trials (within 3 sigma: {within})");
                println!("prepared-state overlap with analytic superposition: {overlap:.12}");
            }
            if !within || overlap < 1.0 - 1e-9 {
                return Err(verification("preparation statistics or overlap out of bounds"));
            }
            Ok(())
        }
        Command::DfsDemo { d } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Pick the largest (N, 2S) sector so the payload is interesting.
            let sectors: Vec<(usize, usize, usize)> = {
                let all = enumerate_step_vectors(d, None);
                let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
                for v in &all {
                    *counts.entry(step_vector_labels(v)).or_insert(0) += 1;
                }
                counts.into_iter().map(|((n, s), c)| (n, s, c)).collect()
            };
            let &(n, two_s, dim) = sectors.iter().max_by_key(|&&(_, _, c)| c).unwrap();
            let payload: Vec<Complex64> = (0..dim)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let noise = U2Params {
                alpha_x: rng.gen_range(-3.0..3.0),
                alpha_y: rng.gen_range(-3.0..3.0),
                alpha_z: rng.gen_range(-3.0..3.0),
                alpha_n: rng.gen_range(-3.0..3.0),
            };
            let with_noise = dfs_roundtrip(d, n, two_s, &payload, noise)
                .map_err(|e| validation(e.to_string()))?;
            let reference = dfs_roundtrip(d, n, two_s, &payload, U2Params { alpha_n: 0.0, ..noise })
                .map_err(|e| validation(e.to_string()))?;
            let phase = reference.output.inner(&with_noise.output);
            let expected_phase = Complex64::from_polar(1.0, n as f64 * noise.alpha_n / 2.0);
            let phase_dev = (phase - expected_phase).norm();
            if format == Format::Json {
                emit(json!({
                    "schema": SCHEMA, "d": d, "seed": seed,
                    "sector": {"n": n, "twoS": two_s, "dim": dim},
                    "noise": {"alphaX": noise.alpha_x, "alphaY": noise.alpha_y,
                               "alphaZ": noise.alpha_z, "alphaN": noise.alpha_n},
                    "fidelity": with_noise.fidelity,
                    "sectorPhaseDeviation": phase_dev,
                }));
            } else {
                println!("seed: {seed}");
                println!("sector: N={n} 2S={two_s} (dim {dim})");
                println!("round-trip fidelity: {:.12}", with_noise.fidelity);
                println!("sector phase deviation from e^(i N aN / 2): {phase_dev:.3e}");
            }
            if with_noise.fidelity < 1.0 - 1e-9 || phase_dev > 1e-8 {
                return Err(verification("round-trip fidelity or phase out of tolerance"));
            }
            Ok(())
        }
        Command::UgaElements { d, i, j } => {
            if d > 3 || i == 0 || j == 0 || i > d || j > d {
                return Err(validation("need 1 <= i, j <= d <= 3"));
            }
            let result = uga_matrix_elements(d, i, j);
            if format == Format::Json {
                let mut entries = Vec::new();
                for r in 0..result.labels.len() {
                    for c in 0..result.labels.len() {
                        let v = result.matrix[(r, c)];
                        if v.norm() > 1e-12 {
                            entries.push(json!({
                                "bra": label_string(&result.labels[r]),
                                "ket": label_string(&result.labels[c]),
                                "re": v.re, "im": v.im,
                            }));
                        }
                    }
                }
                emit(json!({
                    "schema": SCHEMA, "d": d, "i": i, "j": j,
                    "entries": entries,
                    "maxSelectionViolation": result.max_selection_violation,
                    "maxLocalityViolation": result.max_locality_violation,
                }));
            } else {
                for r in 0..result.labels.len() {
                    for c in 0..result.labels.len() {
                        let v = result.matrix[(r, c)];
                        if v.norm() > 1e-12 {
                            println!(
                                "<{}|E_{i}{j}|{}> = {:.12}",
                                label_string(&result.labels[r]),
                                label_string(&result.labels[c]),
                                v.re
                            );
                        }
                    }
                }
                println!("max selection-rule violation: {:.3e}", result.max_selection_violation);
                println!("max locality violation: {:.3e}", result.max_locality_violation);
            }
            if result.max_selection_violation > 1e-10 || result.max_locality_violation > 1e-10 {
                return Err(verification("matrix-element structure out of tolerance"));
            }
            Ok(())
        }
        Command::Resources { d, epsilon, k, q, strategy, sweep } => {
            let q = q.unwrap_or_else(|| q_for_epsilon(epsilon));
            let strategies: Vec<Strategy> = match strategy {
                Some(s) => vec![s],
                None => ALL_STRATEGIES.to_vec(),
            };
            let d_values: Vec<u64> = if sweep { (1..=d).collect() } else { vec![d] };
            let mut rows = Vec::new();
            for &dv in &d_values {
                for &s in &strategies {
                    let givens = givens_rotation_cost(dv, q, k, s)
                        .map_err(|e| validation(e.to_string()))?;
                    let total =
                        total_paldus_cost(dv, q, k, s).map_err(|e| validation(e.to_string()))?;
                    rows.push((dv, s, givens, total));
                }
            }
            let inc = incrementer_cost(d);
            let crossover = multi_index_crossover(q, k, 256);
            if format == Format::Json {
                let table: Vec<Value> = rows
                    .iter()
                    .map(|(dv, s, g, t)| {
                        json!({
                            "d": dv, "strategy": s.to_string(),
                            "givens": g, "total": t,
                        })
                    })
                    .collect();
                emit(json!({
                    "schema": SCHEMA, "q": q, "k": k, "epsilon": epsilon,
                    "incrementerToffoliPerStage": inc.total_toffoli,
                    "phaseGradientTGates": phase_gradient_t_cost(q, epsilon),
                    "multiIndexCrossoverD": crossover,
                    "rows": table,
                }));
            } else {
                println!("q={q} k={k} epsilon={epsilon}");
                println!("d\tstrategy\tgivens_toffoli\ttotal_toffoli\ttotal_t\tclean\tdirty");
                for (dv, s, g, t) in &rows {
                    println!(
                        "{dv}\t{s}\t{}\t{}\t{}\t{}\t{}",
                        g.toffoli, t.toffoli, t.t_gates, t.clean_qubits, t.dirty_qubits
                    );
                }
                println!("incrementer toffoli per stage at d={d}: {}", inc.total_toffoli);
                println!(
                    "phase-gradient one-off T cost: {}",
                    phase_gradient_t_cost(q, epsilon)
                );
                match crossover {
                    Some(c) => println!("multi-index beats unary from d={c}"),
                    None => println!("no multi-index/unary crossover found up to d=256"),
                }
            }
            Ok(())
        }
    }
}

fn verify_identities(d_max: usize, trials: usize, format: Format, seed: u64) -> Result<(), Failure> {
    use paldus_kit::symfunc::{
        branching_interleave, check_dual_cauchy, dual_pieri_expand, elementary, schur_ssyt,
        Partition,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results: Vec<(String, bool, String)> = Vec::new();

    let mut dims_ok = true;
    let mut dims_detail = format!("d = 1..={d_max}");
    for d in 1..=d_max {
        if let Err(e) = dimension_identities(d) {
            dims_ok = false;
            dims_detail = format!("failed at d={d}: {e}");
            break;
        }
    }
    results.push(("dimension sums".into(), dims_ok, dims_detail));

    let mut random_point = |n: usize| -> Vec<f64> {
        loop {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.8)).collect();
            if (0..n).all(|i| ((i + 1)..n).all(|j| (x[i] - x[j]).abs() > 1e-3)) {
                return x;
            }
        }
    };

    for &(m, n) in &[(2usize, 2usize), (3, 2), (4, 2)] {
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let x = random_point(m);
            let y = random_point(n);
            let product: f64 =
                x.iter().flat_map(|&a| y.iter().map(move |&b| 1.0 + a * b)).product();
            worst = worst.max(check_dual_cauchy(&x, &y) / product.abs());
        }
        results.push((
            format!("dual Cauchy ({m},{n})"),
            worst <= 1e-8,
            format!("worst relative residual {worst:.3e} over {trials} points"),
        ));
    }

    let shapes = [
        Partition::empty(),
        Partition::new(vec![1]),
        Partition::new(vec![2, 1]),
        Partition::new(vec![2, 2]),
    ];
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let x = random_point(4);
        for shape in &shapes {
            for k in 1..=3usize {
                let lhs = schur_ssyt(shape, &x) * elementary(k, &x);
                let rhs: f64 =
                    dual_pieri_expand(shape, k).iter().map(|mu| schur_ssyt(mu, &x)).sum();
                worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
            }
        }
    }
    results.push((
        "dual Pieri".into(),
        worst <= 1e-8,
        format!("worst relative residual {worst:.3e} over {trials} points"),
    ));

    let mut worst = 0.0f64;
    for _ in 0..trials {
        let x = random_point(3);
        let mut extended = x.clone();
        extended.push(1.0);
        for shape in &shapes {
            let lhs = schur_ssyt(shape, &extended);
            let rhs: f64 =
                branching_interleave(shape).iter().map(|mu| schur_ssyt(mu, &x)).sum();
            worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
        }
    }
    results.push((
        "branching restriction".into(),
        worst <= 1e-8,
        format!("worst relative residual {worst:.3e} over {trials} points"),
    ));

    let all_ok = results.iter().all(|(_, ok, _)| *ok);
    if format == Format::Json {
        let rows: Vec<Value> = results
            .iter()
            .map(|(name, ok, detail)| json!({"identity": name, "ok": ok, "detail": detail}))
            .collect();
        emit(json!({
            "schema": SCHEMA, "seed": seed, "dMax": d_max, "trials": trials,
            "identities": rows, "ok": all_ok,
        }));
    } else {
        println!("seed: {seed}");
        for (name, ok, detail) in &results {
            println!("{} {name}: {detail}", if *ok { "PASS" } else { "FAIL" });
        }
    }
    if all_ok {
        Ok(())
    } else {
        Err(verification("one or more identities failed"))
    }
}

fn label_string(l: &UgaLabel) -> String {
    format!("N={} 2S={} 2M={} {}", l.n_particles, l.two_s, l.two_m, l.step)
}

fn emit(v: Value) {
    println!("{}", serde_json::to_string_pretty(&v).unwrap());
}

fn amplitudes_json(amps: &[Complex64], width: usize) -> Vec<Value> {
    amps.iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 1e-12)
        .map(|(idx, a)| json!({"bits": format!("{:0w$b}", idx, w = width), "re": a.re, "im": a.im}))
        .collect()
}

fn circuit_to_json(c: &Circuit) -> Value {
    let layout = json!({"comment": "qubit 0 is the most significant bit"});
    let gates: Vec<Value> = c
        .gates
        .iter()
        .map(|g| {
            let (kind, params) = match &g.kind {
                GateKind::ControlledIncrement => ("ControlledIncrement", Value::Null),
                GateKind::ControlledDecrement => ("ControlledDecrement", Value::Null),
                GateKind::ControlledGivens { two_s, two_m, inverse } => (
                    "ControlledGivens",
                    json!({"twoS": two_s, "twoM": two_m, "inverse": inverse}),
                ),
                GateKind::Hadamard => ("Hadamard", Value::Null),
                GateKind::Cnot => ("CNOT", Value::Null),
                GateKind::GenericUnitary(m) => (
                    "GenericUnitary",
                    json!({
                        "dim": m.rows,
                        "re": m.data.iter().map(|x| x.re).collect::<Vec<_>>(),
                        "im": m.data.iter().map(|x| x.im).collect::<Vec<_>>(),
                    }),
                ),
            };
            json!({
                "kind": kind,
                "targets": g.targets,
                "controls": g.controls.iter().map(|&(q, _)| q).collect::<Vec<_>>(),
                "controlValues": g.controls.iter().map(|&(_, v)| v).collect::<Vec<_>>(),
                "params": params,
            })
        })
        .collect();
    json!({"schema": SCHEMA, "width": c.width, "layout": layout, "gates": gates})
}

fn circuit_from_json(v: &Value) -> Result<Circuit, String> {
    let width = v["width"].as_u64().ok_or("missing width")? as usize;
    let mut gates = Vec::new();
    for g in v["gates"].as_array().ok_or("missing gates")? {
        let targets: Vec<usize> = g["targets"]
            .as_array()
            .ok_or("missing targets")?
            .iter()
            .map(|t| t.as_u64().unwrap() as usize)
            .collect();
        let cq: Vec<usize> = g["controls"]
            .as_array()
            .map(|a| a.iter().map(|t| t.as_u64().unwrap() as usize).collect())
            .unwrap_or_default();
        let cv: Vec<bool> = g["controlValues"]
            .as_array()
            .map(|a| a.iter().map(|t| t.as_bool().unwrap()).collect())
            .unwrap_or_default();
        if cq.len() != cv.len() {
            return Err("controls and controlValues differ in length".into());
        }
        let controls: Vec<(usize, bool)> = cq.into_iter().zip(cv).collect();
        let kind = match g["kind"].as_str().ok_or("missing kind")? {
            "ControlledIncrement" => GateKind::ControlledIncrement,
            "ControlledDecrement" => GateKind::ControlledDecrement,
            "ControlledGivens" => GateKind::ControlledGivens {
                two_s: g["params"]["twoS"].as_u64().ok_or("missing twoS")? as usize,
                two_m: g["params"]["twoM"].as_i64().ok_or("missing twoM")?,
                inverse: g["params"]["inverse"].as_bool().unwrap_or(false),
            },
            "Hadamard" => GateKind::Hadamard,
            "CNOT" => GateKind::Cnot,
            "GenericUnitary" => {
                let dim = g["params"]["dim"].as_u64().ok_or("missing dim")? as usize;
                let re = g["params"]["re"].as_array().ok_or("missing re")?;
                let im = g["params"]["im"].as_array().ok_or("missing im")?;
                let mut m = CMatrix::zeros(dim, dim);
                for idx in 0..dim * dim {
                    m.data[idx] = Complex64::new(
                        re[idx].as_f64().unwrap_or(0.0),
                        im[idx].as_f64().unwrap_or(0.0),
                    );
                }
                GateKind::GenericUnitary(m)
            }
            other => return Err(format!("unknown gate kind: {other}")),
        };
        gates.push(Gate { kind, targets, controls });
    }
    Ok(Circuit { width, gates })
}

fn read_state_file(path: &Path) -> Result<StateVector, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| validation(format!("{}: {e}", path.display())))?;
    let mut width = None;
    let mut entries: Vec<(usize, Complex64)> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            for token in rest.split_whitespace() {
                if let Some(w) = token.strip_prefix("width=") {
                    width = Some(w.parse::<usize>().map_err(|e| validation(e.to_string()))?);
                }
            }
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(validation(format!("bad state line: {line}")));
        }
        let bits = parts[0];
        if let Some(w) = width {
            if bits.len() != w {
                return Err(validation(format!("bitstring {bits} does not match width {w}")));
            }
        } else {
            width = Some(bits.len());
        }
        let idx = usize::from_str_radix(bits, 2).map_err(|e| validation(e.to_string()))?;
        let re: f64 = parts[1].parse().map_err(|_| validation("bad amplitude"))?;
        let im: f64 = parts[2].parse().map_err(|_| validation("bad amplitude"))?;
        entries.push((idx, Complex64::new(re, im)));
    }
    let width = width.ok_or_else(|| validation("empty state file"))?;
    let mut state = StateVector {
        width,
        amps: vec![Complex64::new(0.0, 0.0); 1 << width],
    };
    for (idx, a) in entries {
        state.amps[idx] = a;
    }
    Ok(state)
}

fn write_state_file(path: &Path, state: &StateVector) -> Result<(), Failure> {
    let mut out = format!("# paldus-kit state width={}\n", state.width);
    for (idx, a) in state.amps.iter().enumerate() {
        if a.norm() > 1e-14 {
            out.push_str(&format!(
                "{:0w$b} {:.15e} {:.15e}\n",
                idx,
                a.re,
                a.im,
                w = state.width
            ));
        }
    }
    std::fs::write(path, out).map_err(|e| validation(format!("{}: {e}", path.display())))
}

fn print_state(state: &StateVector, format: Format) {
    if format == Format::Json {
        emit(json!({
            "schema": SCHEMA,
            "width": state.width,
            "amplitudes": amplitudes_json(&state.amps, state.width),
        }));
    } else {
        println!("# paldus-kit state width={}", state.width);
        for (idx, a) in state.amps.iter().enumerate() {
            if a.norm() > 1e-14 {
                println!("{:0w$b} {:.12} {:.12}", idx, a.re, a.im, w = state.width);
            }
        }
    }
}
