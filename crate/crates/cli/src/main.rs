use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use plovlab::dynamics::{self, abelian, AbelianSurrogate, ModelSpec};
use plovlab::incidence::{self, DistinguishedPartition};
use plovlab::matrix::ExactMatrix;
use plovlab::partitions::{self, Partition};
use plovlab::rational;

mod golden;

#[derive(Parser, Debug)]
#[command(
    name = "plovlab",
    version,
    about = "Restricted-partition incidence matrices and polynomial volume growth"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Leave the wall-clock duration out of the report
    #[arg(long, global = true)]
    deterministic: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    MatrixExamples,
    Table1,
    Table2,
    Kernel,
    Fullrank,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recompute a matrix, table or theorem instance and compare it with the
    /// reference values
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        n: Option<i64>,
        /// Largest d for table2 (default 7)
        #[arg(long)]
        dmax: Option<u32>,
        /// Allow the long-running sizes (table2 with d = 8, 9; kernel with d > 6)
        #[arg(long)]
        extended: bool,
    },
    /// Export A_{k,d,n}, optionally truncated at κ(t)
    Matrix {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: i64,
        /// t0,t1,…,tr
        #[arg(long)]
        truncate: Option<String>,
    },
    /// Run the dynamics pipeline on one model
    Plov {
        /// Jordan block sizes of a unipotent A, e.g. 3,1
        #[arg(long, conflicts_with = "model")]
        abelian_blocks: Option<String>,
        /// Model JSON, inline or as a file path
        #[arg(long)]
        model: Option<String>,
    },
    /// Run the pipeline on seeded random surrogates of dimension d
    Scan {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only eigenvalue-1 Jordan blocks
        #[arg(long)]
        unipotent_only: bool,
    },
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<plovlab::Error> for Failure {
    fn from(e: plovlab::Error) -> Self {
        Failure::Mismatch(e.to_string())
    }
}

type CmdResult = Result<Outcome, Failure>;

struct Outcome {
    command: String,
    parameters: Value,
    results: Value,
    pass: bool,
    csv: Option<String>,
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a str,
    parameters: &'a Value,
    results: &'a Value,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    duration_ms: Option<u128>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let outcome = match run(&cli.command, cli.format) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `plovlab --help` for usage");
            return ExitCode::from(2);
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("failure: {msg}");
            return ExitCode::from(1);
        }
    };
    let text = match cli.format {
        Format::Json => {
            let report = RunReport {
                command: &outcome.command,
                parameters: &outcome.parameters,
                results: &outcome.results,
                pass: outcome.pass,
                duration_ms: (!cli.deterministic).then(|| start.elapsed().as_millis()),
            };
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        Format::Csv => match outcome.csv {
            Some(csv) => csv,
            None => {
                eprintln!(
                    "error: `{}` has no CSV output, use --format json",
                    outcome.command
                );
                return ExitCode::from(2);
            }
        },
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("PLOVLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("PLOVLAB_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(cmd: &Command, format: Format) -> CmdResult {
    match cmd {
        Command::Reproduce {
            target,
            k,
            d,
            n,
            dmax,
            extended,
        } => match target {
            Target::MatrixExamples => matrix_examples(),
            Target::Table1 => table1(),
            Target::Table2 => table2(*d, *dmax, *extended),
            Target::Kernel => kernel(*d, *extended),
            Target::Fullrank => fullrank(*k, *d, *n),
        },
        Command::Matrix { k, d, n, truncate } => matrix(*k, *d, *n, truncate.as_deref(), format),
        Command::Plov {
            abelian_blocks,
            model,
        } => plov(abelian_blocks.as_deref(), model.as_deref()),
        Command::Scan {
            d,
            count,
            seed,
            unipotent_only,
        } => scan(*d, *count, *seed, !unipotent_only),
    }
}

fn labels(ps: &[Partition]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn golden_matrix<const C: usize>(rows: &[[i64; C]]) -> ExactMatrix {
    ExactMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn matrix_json(m: &ExactMatrix) -> Value {
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| {
            let mut cells = vec![Value::from("0"); m.ncols()];
            for (j, v) in m.row(i) {
                cells[*j] = Value::from(rational::to_string(v));
            }
            Value::Array(cells)
        })
        .collect();
    Value::Array(rows)
}

fn matrix_examples() -> CmdResult {
    let cases = [
        (6, golden_matrix(&golden::A_5_3_6)),
        (7, golden_matrix(&golden::A_5_3_7)),
    ];
    let mut results = Vec::new();
    let mut csv = String::new();
    let mut pass = true;
    for (n, expected) in cases {
        let a = incidence::build_incidence(5, 3, n);
        let ok = a.data == expected;
        pass &= ok;
        results.push(json!({
            "k": 5, "d": 3, "n": n,
            "rows": labels(a.rows.members()),
            "cols": labels(a.cols.members()),
            "matrix": matrix_json(&a.data),
            "match": ok,
        }));
        if !csv.is_empty() {
            csv.push('\n');
        }
        csv.push_str(&a.to_csv());
    }
    Ok(Outcome {
        command: "reproduce matrix-examples".into(),
        parameters: json!({}),
        results: json!(results),
        pass,
        csv: Some(csv),
    })
}

fn table1() -> CmdResult {
    let bf = incidence::block_form(6, 4, 12)?;
    let full = &bf.full;
    let (rows, cols) = (full.data.nrows(), full.data.ncols());
    let row_labels = labels(full.rows.members());
    let col_labels = labels(full.cols.members());
    let idx = |a: usize, b: usize| (a..b).collect::<Vec<_>>();
    let dashed_536 = full.data.submatrix(&idx(0, 5), &idx(1, 7));
    let dashed_537 = full.data.submatrix(&idx(5, 11), &idx(7, 13));
    let top_right = full.data.submatrix(&idx(0, 5), &idx(7, 18));

    let checks = json!({
        "shape": (rows, cols) == (16, 18),
        "row_labels": row_labels == golden::TABLE1_ROWS,
        "col_labels": col_labels == golden::TABLE1_COLS,
        "split": bf.split == (5, 7),
        "zero_block": bf.top_right_zero && (top_right.nrows(), top_right.ncols()) == (5, 11),
        "top_left_is_A_6_3_6": bf.top_left.data == incidence::build_incidence(6, 3, 6).data,
        "bottom_right_is_A_5_4_12": bf.bottom_right.data == incidence::build_incidence(5, 4, 12).data,
        "dashed_A_5_3_6": dashed_536 == golden_matrix(&golden::A_5_3_6),
        "dashed_A_5_3_7": dashed_537 == golden_matrix(&golden::A_5_3_7),
        "reassembled": bf.reassemble()? == full.data,
    });
    let pass = checks
        .as_object()
        .unwrap()
        .values()
        .all(|v| v == &json!(true));
    Ok(Outcome {
        command: "reproduce table1".into(),
        parameters: json!({"k": 6, "d": 4, "n": 12}),
        results: json!({
            "rows": row_labels,
            "cols": col_labels,
            "matrix": matrix_json(&full.data),
            "checks": checks,
        }),
        pass,
        csv: Some(full.to_csv()),
    })
}

fn table2(d: Option<u32>, dmax: Option<u32>, extended: bool) -> CmdResult {
    let (lo, hi) = match (d, dmax) {
        (Some(d), _) => (d, d),
        (None, Some(m)) => (4, m),
        (None, None) => (4, 7),
    };
    if lo < 4 || hi > 9 || lo > hi {
        return Err(Failure::Usage(format!(
            "table2 covers 4 <= d <= 9, got {lo}..={hi}"
        )));
    }
    if hi > 7 && !extended {
        return Err(Failure::Usage(
            "table2 with d = 8 or 9 is long-running; pass --extended".into(),
        ));
    }
    let jobs: Vec<(u32, i64, usize)> = golden::TABLE2
        .iter()
        .filter(|(d, _)| (lo..=hi).contains(d))
        .flat_map(|&(d, row)| (0..6).map(move |e| (d, e as i64, row[e])))
        .collect();
    let cells = jobs
        .par_iter()
        .map(|&(d, e, expected)| incidence::table2_cell(d, e).map(|c| (c, expected)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = String::from("d,e,n,rows,cols,nullity,expected,match\n");
    let mut results = Vec::new();
    let mut pass = true;
    for (c, expected) in &cells {
        let ok = c.nullity == *expected;
        pass &= ok;
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            c.d, c.e, c.n, c.rows, c.cols, c.nullity, expected, ok
        ));
        results.push(json!({
            "d": c.d, "e": c.e, "n": c.n, "kappa": c.kappa.to_string(),
            "rows": c.rows, "cols": c.cols,
            "nullity": c.nullity, "expected": expected, "match": ok,
        }));
    }
    Ok(Outcome {
        command: "reproduce table2".into(),
        parameters: json!({"dmin": lo, "dmax": hi, "extended": extended}),
        results: json!(results),
        pass,
        csv: Some(csv),
    })
}

fn kernel(d: Option<u32>, extended: bool) -> CmdResult {
    let range = match d {
        Some(d) => d..=d,
        None => 2..=6,
    };
    let (lo, hi) = (*range.start(), *range.end());
    if lo < 2 || hi > 8 {
        return Err(Failure::Usage(format!(
            "kernel covers 2 <= d <= 8, got d = {hi}"
        )));
    }
    if hi > 6 && !extended {
        return Err(Failure::Usage(
            "kernel with d > 6 is long-running; pass --extended".into(),
        ));
    }
    let reports = range
        .map(incidence::kernel_report)
        .collect::<Result<Vec<_>, _>>()?;
    let pass = reports.iter().all(|r| r.pass);
    Ok(Outcome {
        command: "reproduce kernel".into(),
        parameters: json!({"dmin": lo, "dmax": hi}),
        results: serde_json::to_value(&reports).expect("serializable"),
        pass,
        csv: None,
    })
}

fn fullrank(k: Option<u32>, d: Option<u32>, n: Option<i64>) -> CmdResult {
    let ks: Vec<u32> = k.map_or((1..=6).collect(), |k| vec![k]);
    let ds: Vec<u32> = d.map_or((2..=5).collect(), |d| vec![d]);
    if ks.contains(&0) || ds.contains(&0) {
        return Err(Failure::Usage("k and d must be positive".into()));
    }
    let mut jobs = Vec::new();
    for &k in &ks {
        for &d in &ds {
            let max = i64::from(k) * i64::from(d);
            match n {
                Some(n) if !(1..=max).contains(&n) => {
                    return Err(Failure::Usage(format!(
                        "need 1 <= n <= dk = {max}, got n = {n}"
                    )))
                }
                Some(n) => jobs.push((k, d, n)),
                None => jobs.extend((1..=max).map(|n| (k, d, n))),
            }
        }
    }
    let reports: Vec<_> = jobs
        .par_iter()
        .map(|&(k, d, n)| incidence::full_rank_report(k, d, n))
        .collect();
    let pass = reports.iter().all(|r| r.pass);
    let mut csv = String::from("k,d,n,rows,cols,rank,expected,pass\n");
    for r in &reports {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.k, r.d, r.n, r.rows, r.cols, r.rank, r.expected, r.pass
        ));
    }
    Ok(Outcome {
        command: "reproduce fullrank".into(),
        parameters: json!({"k": ks, "d": ds, "n": n}),
        results: json!({
            "instances": reports.len(),
            "passed": reports.iter().filter(|r| r.pass).count(),
            "reports": reports,
        }),
        pass,
        csv: Some(csv),
    })
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<T>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Usage(format!("cannot parse {what} {s:?}")))
}

fn matrix(k: u32, d: u32, n: i64, truncate: Option<&str>, format: Format) -> CmdResult {
    if d == 0 {
        return Err(Failure::Usage("d must be positive".into()));
    }
    let a = incidence::build_incidence(k, d, n);
    let (data, cols, kappa) = match truncate {
        None => (a.data.clone(), a.cols.members().to_vec(), None),
        Some(t) => {
            let t: Vec<u32> = parse_list(t, "--truncate")?;
            let dp = DistinguishedPartition::new(t).map_err(|e| Failure::Usage(e.to_string()))?;
            if dp.d() != d || 2 * dp.r > k {
                return Err(Failure::Usage(format!(
                    "kappa(t) = {} needs d = {d} parts, each at most k = {k}",
                    dp.kappa
                )));
            }
            let tr = incidence::truncate_columns(&a, &dp.kappa)?;
            (tr.data, tr.columns, Some(dp.kappa.to_string()))
        }
    };
    let (results, csv) = match format {
        Format::Csv => (Value::Null, Some(incidence::csv_export(k, d, n, &data))),
        Format::Json => (
            json!({
                "rows": labels(a.rows.members()),
                "cols": labels(&cols),
                "matrix": matrix_json(&data),
            }),
            None,
        ),
    };
    Ok(Outcome {
        command: "matrix".into(),
        parameters: json!({"k": k, "d": d, "n": n, "kappa": kappa}),
        results,
        pass: true,
        csv,
    })
}

fn load_model(spec: &str) -> Result<AbelianSurrogate, Failure> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec)
            .map_err(|e| Failure::Usage(format!("cannot read model file {spec}: {e}")))?
    };
    let parsed: ModelSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("invalid model JSON: {e}")))?;
    parsed.build().map_err(|e| Failure::Usage(e.to_string()))
}

fn plov(blocks: Option<&str>, model: Option<&str>) -> CmdResult {
    let surrogate = match (blocks, model) {
        (Some(b), None) => {
            let sizes: Vec<usize> = parse_list(b, "--abelian-blocks")?;
            if sizes.is_empty() || sizes.contains(&0) {
                return Err(Failure::Usage("block sizes must be positive".into()));
            }
            AbelianSurrogate::from_jordan(&sizes).map_err(|e| Failure::Usage(e.to_string()))?
        }
        (None, Some(m)) => load_model(m)?,
        _ => {
            return Err(Failure::Usage(
                "give exactly one of --abelian-blocks or --model".into(),
            ))
        }
    };
    let report = dynamics::model_report(&surrogate)?;
    Ok(Outcome {
        command: "plov".into(),
        parameters: json!({ "g": surrogate.g(), "A": surrogate.a_i64() }),
        results: json!({
            "report": report,
            "delta": report.delta.to_string(),
            "vanishing": report.vanishing,
            "warnings": report.warnings,
        }),
        pass: report.pass(),
        csv: None,
    })
}

fn scan(d: usize, count: usize, seed: u64, signs: bool) -> CmdResult {
    if !(1..=6).contains(&d) || count == 0 {
        return Err(Failure::Usage(format!(
            "scan needs 1 <= d <= 6 and count >= 1, got d = {d}, count = {count}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let models = (0..count)
        .map(|_| abelian::random_surrogate(d, signs, &mut rng))
        .collect::<Result<Vec<_>, _>>()?;
    let reports = models
        .par_iter()
        .map(|(m, _)| dynamics::model_report(m))
        .collect::<Result<Vec<_>, _>>()?;

    let mut entries = Vec::new();
    let mut plov_values = BTreeSet::new();
    let (mut passed, mut lb_true) = (0, 0);
    for ((m, spec), r) in models.iter().zip(&reports) {
        let law = r.plov == spec.jordan.iter().map(|n| n * n).sum::<usize>();
        let ok = r.pass() && law;
        passed += usize::from(ok);
        lb_true += usize::from(r.checks.conjecture_lb);
        plov_values.insert(r.plov);
        entries.push(json!({
            "A": m.a_i64(),
            "signs": spec.signs,
            "report": r,
            "vanishing": r.vanishing,
            "abelian_law": law,
            "pass": ok,
        }));
    }
    let (lo, hi) = dynamics::gap_interval(d.max(2));
    Ok(Outcome {
        command: "scan".into(),
        parameters: json!({"d": d, "count": count, "seed": seed, "signs": signs}),
        results: json!({
            "summary": {
                "count": count,
                "passed": passed,
                "plov_values": plov_values,
                "gap_interval": [lo, hi],
                "conjecture_lb_holds": lb_true,
                "jordan_types": partitions::count(d as u32, d as u32, d as i64),
            },
            "models": entries,
        }),
        pass: passed == count,
        csv: None,
    })
}
