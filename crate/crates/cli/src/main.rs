use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bosonq::encodings::{encode, qubit_count, EncodingLayout, MappingKind, OperatorSpec};
use bosonq::models::{build_generic, ingest_tensors, ModelSpec, SpecDocument};
use bosonq::oracle::{run_small_suite, verify_sum, VERIFY_TOLERANCE};
use bosonq::resources::{
    analytic_counts, bhm_count_ratios, bhm_ratio_formulas, break_even_d, gate_counts,
    krdm_cnot_ratio, peephole_cnot_count, resource_report, Family,
};
use bosonq::sweep::{reproduction_report, run_sweep, write_csv, SweepConfig};
use bosonq::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Parser)]
#[command(
    name = "bosonq",
    version,
    about = "Compile bosonic operators to Pauli sums and count Trotter-step gates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Pauli decomposition of an operator in canonical order.
    Map(MapArgs),
    /// Print gate counts and BWCP groups of an encoded operator as JSON.
    Count(CountArgs),
    /// Check encodings against the exact Fock-space matrix (JSON lines).
    Verify(VerifyArgs),
    /// Run a resource sweep and write CSV.
    Sweep(SweepArgs),
    /// Print closed-form counts, ratios and break-even truncations.
    Formulas(FormulasArgs),
}

#[derive(Args)]
struct SpecInput {
    /// Operator or model document (JSON file, `-` for stdin).
    #[arg(long, value_name = "PATH")]
    spec: Option<PathBuf>,
    /// Operator or model document given inline.
    #[arg(long, value_name = "JSON", conflicts_with = "spec")]
    spec_json: Option<String>,
    /// Generic one- and two-body tensor file.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["spec", "spec_json"])]
    tensors: Option<PathBuf>,
}

#[derive(Args)]
struct Sizes {
    /// Particle number N.
    #[arg(short = 'N', long = "particles")]
    n: Option<usize>,
    /// Mode count M. Defaults to the document's value for models.
    #[arg(short = 'M', long = "modes")]
    m: Option<usize>,
    /// Local dimension of the second-quantized mappings (default N + 1).
    #[arg(short = 'd', long = "local-dim")]
    d: Option<usize>,
}

#[derive(Args)]
struct MapArgs {
    #[command(flatten)]
    input: SpecInput,
    /// U1Q, B1Q, U2Q or B2Q.
    #[arg(long)]
    mapping: MappingKind,
    #[command(flatten)]
    sizes: Sizes,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    input: SpecInput,
    /// U1Q, B1Q, U2Q or B2Q.
    #[arg(long)]
    mapping: MappingKind,
    #[command(flatten)]
    sizes: Sizes,
    /// Skip the BWCP grouping.
    #[arg(long)]
    no_bwcp: bool,
    /// Also report the CNOT count after adjacent-gate cancellation.
    #[arg(long)]
    peephole: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every operator family on every mapping with N <= 3, M <= 4, d <= 4.
    #[arg(long, conflicts_with_all = ["spec", "spec_json", "tensors"])]
    all_small: bool,
    #[command(flatten)]
    input: SpecInput,
    /// Mapping to check. All four when omitted.
    #[arg(long)]
    mapping: Option<MappingKind>,
    #[command(flatten)]
    sizes: Sizes,
    #[arg(long, default_value_t = VERIFY_TOLERANCE)]
    tolerance: f64,
    /// Perturb one coefficient before checking (negative control).
    #[arg(long, hide = true)]
    corrupt_coefficient: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConfigFormat {
    Toml,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep configuration (JSON or TOML).
    #[arg(required_unless_present = "print_config")]
    config: Option<PathBuf>,
    /// CSV destination, overriding the config. `-` writes to stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Print the effective configuration with every default filled in, then exit.
    #[arg(long)]
    print_config: bool,
    #[arg(long, value_enum, default_value = "toml")]
    format: ConfigFormat,
    /// Do not print the ratio summary.
    #[arg(short, long)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Table {
    Qubits,
    Krdm,
    Bhm,
    BreakEven,
    All,
}

#[derive(Args)]
struct FormulasArgs {
    #[arg(long, value_enum, default_value = "all")]
    table: Table,
    /// Particle numbers (default 3,7,16; 10,100 for break-even).
    #[arg(short = 'N', long = "particles", value_delimiter = ',')]
    n: Vec<usize>,
    /// Mode counts (default 8,32,128).
    #[arg(short = 'M', long = "modes", value_delimiter = ',')]
    m: Vec<usize>,
    /// Body orders (default 1,2,3).
    #[arg(short = 'k', long = "order", value_delimiter = ',')]
    k: Vec<usize>,
}

fn read_source(path: &PathBuf) -> Result<String> {
    let io_err = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

/// The operator plus whatever sizes its document fixes.
fn load_spec(input: &SpecInput) -> Result<(OperatorSpec, Option<usize>, Option<usize>)> {
    if let Some(path) = &input.tensors {
        let t = ingest_tensors(path)?;
        return Ok((build_generic(&t), None, Some(t.n_modes())));
    }
    let text = match (&input.spec, &input.spec_json) {
        (Some(p), _) => read_source(p)?,
        (None, Some(s)) => s.clone(),
        (None, None) => {
            return Err(Error::InvalidParams(
                "one of --spec, --spec-json or --tensors is required".into(),
            ))
        }
    };
    let doc = SpecDocument::from_json(&text)?;
    if let SpecDocument::Model(ModelSpec::Tensors { path }) = &doc {
        let t = ingest_tensors(path)?;
        return Ok((build_generic(&t), None, Some(t.n_modes())));
    }
    let (n, m) = match &doc {
        SpecDocument::Model(model) => (model.n_particles(), model.n_modes()),
        SpecDocument::Operator(_) => (None, None),
    };
    Ok((doc.build()?, n, m))
}

fn pick(flag: Option<usize>, doc: Option<usize>, name: &str) -> Result<usize> {
    match (flag, doc) {
        (Some(a), Some(b)) if a != b => Err(Error::InvalidParams(format!(
            "{name}={a} disagrees with the document's {name}={b}"
        ))),
        (Some(v), _) | (None, Some(v)) => Ok(v),
        (None, None) => Err(Error::InvalidParams(format!("{name} is required"))),
    }
}

struct Loaded {
    spec: OperatorSpec,
    n: usize,
    m: usize,
    d: Option<usize>,
}

fn load(input: &SpecInput, sizes: &Sizes) -> Result<Loaded> {
    let (spec, dn, dm) = load_spec(input)?;
    let n = pick(sizes.n, dn, "N")?;
    let m = pick(sizes.m, dm, "M")?;
    spec.validate(m)?;
    Ok(Loaded {
        spec,
        n,
        m,
        d: sizes.d,
    })
}

fn encoded(l: &Loaded, kind: MappingKind) -> Result<(EncodingLayout, bosonq::pauli::PauliSum)> {
    let d = (!kind.is_first_quantized()).then(|| l.d.unwrap_or(l.n + 1));
    let layout = EncodingLayout::new(kind, l.n, l.m, d)?;
    let sum = encode(&l.spec, &layout)?;
    Ok((layout, sum))
}

fn cmd_map(a: &MapArgs) -> Result<bool> {
    let l = load(&a.input, &a.sizes)?;
    let (_, sum) = encoded(&l, a.mapping)?;
    print!("{sum}");
    Ok(true)
}

fn cmd_count(a: &CountArgs) -> Result<bool> {
    let l = load(&a.input, &a.sizes)?;
    let (_, sum) = encoded(&l, a.mapping)?;
    let report = if a.no_bwcp {
        gate_counts(&sum)
    } else {
        resource_report(&sum)
    };
    let mut v = serde_json::to_value(&report).expect("report serializes");
    v["mapping"] = a.mapping.name().into();
    v["operator"] = l.spec.to_string().into();
    if a.peephole {
        v["n_cnot_peephole"] = peephole_cnot_count(&sum).into();
    }
    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    Ok(true)
}

fn corrupt(sum: &mut bosonq::pauli::PauliSum) {
    let first = sum.sorted_terms().first().map(|(p, _)| (*p).clone());
    if let Some(p) = first {
        sum.add_term(Complex64::new(1e-3, 0.0), p);
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<bool> {
    let mut stdout = io::stdout().lock();
    let mut all_pass = true;
    if a.all_small {
        let (mut n_pass, mut n_fail) = (0usize, 0usize);
        for (case, r) in run_small_suite(a.tolerance) {
            let line = match r {
                Ok(rep) => {
                    all_pass &= rep.passed;
                    if rep.passed {
                        n_pass += 1
                    } else {
                        n_fail += 1
                    }
                    rep.to_json_line()
                }
                Err(e) => {
                    all_pass = false;
                    n_fail += 1;
                    serde_json::json!({
                        "mapping": case.layout.kind().name(),
                        "n_particles": case.layout.n_particles(),
                        "n_modes": case.layout.n_modes(),
                        "operator": case.spec.to_string(),
                        "error": e.to_string(),
                        "passed": false,
                    })
                    .to_string()
                }
            };
            let _ = writeln!(stdout, "{line}");
        }
        eprintln!("{n_pass} passed, {n_fail} failed");
        return Ok(all_pass);
    }
    let l = load(&a.input, &a.sizes)?;
    let kinds = match a.mapping {
        Some(k) => vec![k],
        None => MappingKind::ALL.to_vec(),
    };
    for kind in kinds {
        let (layout, mut sum) = encoded(&l, kind)?;
        if a.corrupt_coefficient {
            corrupt(&mut sum);
        }
        let rep = verify_sum(&sum, &l.spec, &layout, a.tolerance)?;
        all_pass &= rep.passed;
        let _ = writeln!(stdout, "{}", rep.to_json_line());
    }
    Ok(all_pass)
}

fn cmd_sweep(a: &SweepArgs) -> Result<bool> {
    let cfg = match &a.config {
        Some(p) => SweepConfig::load(p)?,
        None => SweepConfig::default(),
    };
    if a.print_config {
        match a.format {
            ConfigFormat::Toml => {
                if cfg.d.is_none() {
                    println!("# d is absent: U2Q and B2Q use d = N + 1");
                }
                print!("{}", cfg.to_toml())
            }
            ConfigFormat::Json => println!("{}", cfg.to_json()),
        }
        return Ok(true);
    }
    let rows = run_sweep(&cfg)?;
    let dest = a
        .output
        .clone()
        .or_else(|| cfg.output.as_ref().map(PathBuf::from));
    match dest {
        Some(p) if p.as_os_str() != "-" => {
            let file = std::fs::File::create(&p).map_err(|source| Error::Io {
                path: p.display().to_string(),
                source,
            })?;
            write_csv(&cfg, &rows, io::BufWriter::new(file))?;
            if !a.quiet {
                eprintln!("wrote {} rows to {}", rows.len(), p.display());
            }
        }
        _ => write_csv(&cfg, &rows, io::stdout().lock())?,
    }
    let failed = rows.iter().filter(|r| r.status != "ok").count();
    if failed > 0 {
        eprintln!("{failed} grid points failed, see the status column");
    }
    if !a.quiet {
        eprint!("{}", reproduction_report(&rows));
    }
    Ok(true)
}

fn or_default(v: &[usize], default: &[usize]) -> Vec<usize> {
    if v.is_empty() {
        default.to_vec()
    } else {
        v.to_vec()
    }
}

fn count_cell(v: Option<u64>, exact: bool) -> String {
    match v {
        Some(x) if exact => x.to_string(),
        Some(x) => format!("<={x}"),
        None => "-".into(),
    }
}

fn formulas_text(a: &FormulasArgs) -> Result<String> {
    let ns = or_default(&a.n, &[3, 7, 16]);
    let ms = or_default(&a.m, &[8, 32, 128]);
    let ks = or_default(&a.k, &[1, 2, 3]);
    let want = |t| a.table == t || a.table == Table::All;
    let mut s = String::new();
    if want(Table::Qubits) {
        let _ = writeln!(
            s,
            "# qubits (d = N + 1)\n{:>5} {:>5} {:>8} {:>8} {:>8} {:>8}",
            "N", "M", "U1Q", "B1Q", "U2Q", "B2Q"
        );
        for &n in &ns {
            for &m in &ms {
                let q: Vec<usize> = MappingKind::ALL
                    .iter()
                    .map(|&k| qubit_count(k, n, m))
                    .collect();
                let _ = writeln!(
                    s,
                    "{n:>5} {m:>5} {:>8} {:>8} {:>8} {:>8}",
                    q[0], q[1], q[2], q[3]
                );
            }
        }
        s.push('\n');
    }
    if want(Table::Krdm) {
        let _ = writeln!(
            s,
            "# k-RDM off-diagonal term, Rz / CNOT (d = N + 1, <= marks upper bounds)\n{:>3} {:>5} {:>5} {:>26} {:>26} {:>26} {:>26} {:>12}",
            "k", "N", "M", "U1Q", "B1Q", "U2Q", "B2Q", "CNOT U2Q/U1Q"
        );
        for &k in &ks {
            for &n in &ns {
                for &m in &ms {
                    let _ = write!(s, "{k:>3} {n:>5} {m:>5}");
                    for kind in MappingKind::ALL {
                        let c = analytic_counts(Family::KrdmOdt, kind, n, m, k, None)?;
                        let cell = format!(
                            "{} / {}",
                            count_cell(c.n_rz, c.exact),
                            count_cell(c.n_cnot, c.exact)
                        );
                        let _ = write!(s, " {cell:>26}");
                    }
                    let _ = writeln!(s, " {:>12.4e}", krdm_cnot_ratio(n, k));
                }
            }
        }
        s.push('\n');
    }
    if want(Table::Bhm) {
        let _ = writeln!(
            s,
            "# periodic Bose-Hubbard chain (d = N + 1)\n{:>5} {:>5} {:>10} {:>10} {:>10} {:>10} {:>9} {:>9}",
            "N", "M", "U1Q Rz", "U1Q CNOT", "U2Q Rz", "U2Q CNOT", "Rz ratio", "CX ratio"
        );
        for &n in &ns {
            for &m in ms.iter().filter(|&&m| m > 2) {
                let u1 = analytic_counts(Family::BhmPbc, MappingKind::U1Q, n, m, 0, None)?;
                let u2 = analytic_counts(Family::BhmPbc, MappingKind::U2Q, n, m, 0, None)?;
                let (rz, cx) = bhm_count_ratios(n, m);
                let _ = writeln!(
                    s,
                    "{n:>5} {m:>5} {:>10} {:>10} {:>10} {:>10} {rz:>9.3} {cx:>9.3}",
                    u1.n_rz.unwrap(),
                    u1.n_cnot.unwrap(),
                    u2.n_rz.unwrap(),
                    u2.n_cnot.unwrap()
                );
            }
        }
        let _ = writeln!(
            s,
            "\n# reference U2Q/U1Q ratio formulas\n{:>5} {:>9} {:>9}",
            "N", "Rz", "CNOT"
        );
        for &n in &ns {
            let (rz, cx) = bhm_ratio_formulas(n);
            let _ = writeln!(s, "{n:>5} {rz:>9.3} {cx:>9.3}");
        }
        s.push('\n');
    }
    if want(Table::BreakEven) {
        let bn = or_default(&a.n, &[10, 100]);
        let _ = writeln!(
            s,
            "# break-even truncation d (U2Q CNOT = U1Q CNOT)\n{:>5} {:>3} {:>8}",
            "N", "k", "d"
        );
        for &n in &bn {
            for &k in &ks {
                let _ = writeln!(s, "{n:>5} {k:>3} {:>8.3}", break_even_d(n, k)?);
            }
        }
    }
    Ok(s)
}

fn cmd_formulas(a: &FormulasArgs) -> Result<bool> {
    print!("{}", formulas_text(a)?);
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Map(a) => cmd_map(a),
        Command::Count(a) => cmd_count(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Formulas(a) => cmd_formulas(a),
    };
    let _ = io::stdout().flush();
    match out {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
