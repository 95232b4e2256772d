//! Command-line front end. [`run`] parses arguments, writes data to
//! `out` and diagnostics to `err`, and returns the process exit code:
//! 0 on success, 2 on invalid input, 3 on an internal invariant
//! violation.

mod render;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use dslice_core::cobordism::i_sets;
use dslice_core::dinv::{
    d_lens, d_lens_sum_matrix, d_table_y, d_table_z, kp_of, lens_table, ni_wu, w_vector, z_difference_pattern,
    LENS_CONVENTION,
};
use dslice_core::knot::KnotSpec;
use dslice_core::linking::build_rank6_example;
use dslice_core::obstruct::{full_report, grs_report, lens_sum_function, z_function, LensLabel};
use dslice_core::tables::CorrectionMatrix;
use dslice_core::Error;
use serde_json::{json, Value};

use render::*;

const WHITEHEAD_NOTE: &str =
    "whitehead-double is computed from the T(2,3) staircase; the two complexes differ by an acyclic summand";

/// Largest subgroup count for which the GRS ledger is listed.
const LEDGER_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "dslice", version, about = "Correction terms and double-sliceness obstructions")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    /// Index tables by centered residues instead of 0..n-1.
    #[arg(long, global = true)]
    pub centered: bool,
    /// Replace every matrix by the least of its four reflections.
    #[arg(long, global = true)]
    pub canonical: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Correction terms of L(p,1).
    Lens {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        i: Option<i64>,
    },
    /// Correction terms of L(p,1) # L(p,-1).
    LensSum {
        #[arg(long)]
        p: u64,
    },
    /// V-sequence of a knot.
    Vseq {
        #[arg(long)]
        knot: KnotSpec,
        /// Use the homology engine even when a closed form exists.
        #[arg(long)]
        oracle: bool,
        /// Print the knot complex in its text format instead.
        #[arg(long)]
        dump_complex: bool,
    },
    /// Correction terms of integer surgery on a knot.
    Surgery {
        #[arg(long)]
        knot: KnotSpec,
        #[arg(long)]
        coeff: u64,
        #[arg(long)]
        oracle: bool,
    },
    /// Tables for S³_{n²+n}(J#J#T(n,n+1)).
    YTable {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Tables for the double branched cover at (p, k).
    ZTable {
        #[arg(long)]
        p: u64,
        /// Defaults to ceil((p+6)/12).
        #[arg(long)]
        k: Option<u64>,
    },
    /// Every obstruction for the knot at (p, k).
    Obstruct {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Subgroup-sum minimization with the list of subgroup sums.
    Grs {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: Option<u64>,
        /// Orthogonal sum of this many copies.
        #[arg(long, default_value_t = 1)]
        copies: usize,
        /// Use L(p,1) # L(p,-1) instead of the double branched cover.
        #[arg(long)]
        lens_sum: bool,
    },
    /// Linking-triple demonstrations.
    Linking {
        #[arg(long, value_enum)]
        demo: Demo,
        #[arg(long, default_value_t = 3)]
        prime: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    Rank6,
}

/// One result in all three renderings.
pub struct Output {
    pub json: Value,
    pub csv: String,
    pub pretty: String,
}

impl Output {
    fn report(json: Value) -> Output {
        Output { csv: flatten_csv(&json), pretty: outline(&json), json }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialize") + "\n",
            Format::Csv => self.csv.clone(),
            Format::Pretty => self.pretty.clone(),
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidInput(_) => 2,
                Error::InvariantViolation(_) => 3,
            }
        }
    }
}

/// Rendered output of a parsed command line.
pub fn execute(cli: &Cli) -> dslice_core::Result<String> {
    if let Command::Vseq { knot, dump_complex: true, .. } = &cli.command {
        return Ok(knot.complex()?.to_string());
    }
    Ok(compute(cli)?.render(cli.format))
}

fn compute(cli: &Cli) -> dslice_core::Result<Output> {
    let c = cli.centered;
    let fix = |m: CorrectionMatrix| if cli.canonical { m.canonical() } else { m };
    let out = match &cli.command {
        Command::Lens { p, i: Some(i) } => {
            if *p == 0 {
                return Err(Error::InvalidInput("p must be at least 1".into()));
            }
            let value = d_lens(*p, *i);
            Output {
                json: json!({ "command": "lens", "p": p, "i": i, "value": value, "convention": LENS_CONVENTION }),
                csv: format!("{value}\n"),
                pretty: format!("d(L({p},1), {i}) = {value}\n"),
            }
        }
        Command::Lens { p, i: None } => {
            let t = lens_table(*p)?;
            let (_, vals) = table_values(&t, c);
            let mut json = table_json(&t, c);
            extend(&mut json, json!({ "command": "lens", "p": p, "convention": LENS_CONVENTION }));
            Output { json, csv: join(&vals) + "\n", pretty: format!("d(L({p},1), i)\n{}", table_pretty("d", &t, c)) }
        }
        Command::LensSum { p } => {
            let m = fix(d_lens_sum_matrix(*p)?);
            Output {
                json: json!({
                    "command": "lens-sum", "p": p, "convention": LENS_CONVENTION,
                    "matrix": matrix_json(&m, c),
                    "zero_count": m.zero_count(),
                }),
                csv: matrix_csv(&m, c),
                pretty: format!("d(L({p},1) # L({p},-1)) at (i, j) = d_i - d_j\n{}", matrix_pretty(&m, c)),
            }
        }
        Command::Vseq { knot, oracle, .. } => {
            let closed = knot.closed_form();
            let (method, v) = match (&closed, oracle) {
                (Some(v), false) => ("closed-form", v.clone()),
                _ => ("homology", knot.complex()?.v_sequence()?),
            };
            let mut json = json!({
                "command": "vseq",
                "knot": knot.to_string(),
                "genus": knot.genus(),
                "method": method,
                "values": v.values(),
            });
            if *oracle {
                if let Some(cf) = &closed {
                    extend(&mut json, json!({ "closed_form_agrees": cf == &v }));
                }
            }
            notes(&mut json, knot);
            let csv = v.values().iter().map(u64::to_string).collect::<Vec<_>>().join(", ") + "\n";
            Output { pretty: outline(&json), csv, json }
        }
        Command::Surgery { knot, coeff, oracle } => {
            let (method, v) = match (knot.closed_form(), oracle) {
                (Some(v), false) => ("closed-form", v),
                _ => ("homology", knot.complex()?.v_sequence()?),
            };
            let t = ni_wu(*coeff, &v)?;
            let (_, vals) = table_values(&t, c);
            let mut json = table_json(&t, c);
            extend(
                &mut json,
                json!({
                    "command": "surgery", "knot": knot.to_string(), "coeff": coeff,
                    "method": method, "vseq": v.values(), "convention": LENS_CONVENTION,
                }),
            );
            notes(&mut json, knot);
            let pretty =
                format!("d(S³_{coeff}({knot}), i), V = {:?} ({method})\n{}", v.values(), table_pretty("d", &t, c));
            Output { json, csv: join(&vals) + "\n", pretty }
        }
        Command::YTable { n, k } => {
            let y = d_table_y(*n, *k)?;
            let (d, diff) = (fix(y.d), fix(y.difference));
            let mut json = json!({
                "command": "y-table", "n": n, "k": k, "convention": LENS_CONVENTION,
                "d": matrix_json(&d, c),
                "difference": matrix_json(&diff, c),
                "parity_holds": diff.all_even(),
            });
            let mut extra = String::new();
            // the row bounds only make sense for the uncanonicalized matrix
            if let (Ok(w), false) = (w_vector(*n, *k), cli.canonical) {
                let sets = i_sets(&diff, &w)?;
                let min = sets.values().map(Vec::len).min().unwrap_or(0);
                extra = format!("w at centered i = {w:?}\nsmallest |I_i| = {min}\n");
                let sets: serde_json::Map<String, Value> =
                    sets.into_iter().map(|(i, js)| (i.to_string(), json!(js))).collect();
                extend(&mut json, json!({ "w": w, "i_sets": sets, "min_i_set": min }));
            }
            Output {
                json,
                csv: format!("{}\n{}", matrix_csv(&d, c), matrix_csv(&diff, c)),
                pretty: format!(
                    "d(Y) at (i, j)\n{}\nd(L({n},1)) - d(L({},1)) - d(Y)\n{}{extra}",
                    matrix_pretty(&d, c),
                    n + 1,
                    matrix_pretty(&diff, c)
                ),
            }
        }
        Command::ZTable { p, k } => {
            let k = k.unwrap_or_else(|| kp_of(*p));
            let z = d_table_z(*p, k)?;
            let pattern_agrees = z_difference_pattern(*p, k)? == z.difference;
            let zeros = z.d.zero_count();
            let (d, diff) = (fix(z.d), fix(z.difference));
            Output {
                json: json!({
                    "command": "z-table", "p": p, "k": k, "convention": LENS_CONVENTION,
                    "d": matrix_json(&d, c),
                    "difference": matrix_json(&diff, c),
                    "zero_count": zeros,
                    "pattern_agrees": pattern_agrees,
                }),
                csv: format!("{}\n{}", matrix_csv(&d, c), matrix_csv(&diff, c)),
                pretty: format!(
                    "d(Z) at (i, j), p = {p}, k = {k}\n{}\nd(L({p},1) # L({p},-1)) - d(Z)\n{}zeros: {zeros}\n",
                    matrix_pretty(&d, c),
                    matrix_pretty(&diff, c)
                ),
            }
        }
        Command::Obstruct { p, k } => {
            let mut json = serde_json::to_value(full_report(*p, *k)?).expect("report serializes");
            extend(&mut json, json!({ "command": "obstruct", "convention": LENS_CONVENTION }));
            Output::report(json)
        }
        Command::Grs { p, k, copies, lens_sum } => {
            if *copies == 0 {
                return Err(Error::InvalidInput("copies must be at least 1".into()));
            }
            let base = if *lens_sum {
                lens_sum_function(*p)?
            } else {
                let k = k.unwrap_or_else(|| kp_of(*p));
                z_function(*p, k)?
            };
            let df = base.power(*copies);
            let report = grs_report(&df, *p, LEDGER_LIMIT)?;
            let mut json = serde_json::to_value(&report).expect("report serializes");
            extend(
                &mut json,
                json!({
                    "command": "grs", "copies": copies,
                    "source": if *lens_sum { "lens-sum" } else { "z-table" },
                    "k": if *lens_sum { None } else { Some(k.unwrap_or_else(|| kp_of(*p))) },
                }),
            );
            let mut pretty = format!(
                "GRS value at p = {p}: {} (r_p = {}; {} zero, {} positive, {} negative subgroup sums)\n",
                report.value, report.r_p, report.zero_sums, report.positive_sums, report.negative_sums
            );
            let mut csv = String::new();
            for row in report.ledger.iter().flatten() {
                let g = &row.generator.0;
                let label = match g.as_slice() {
                    [u, v] => format!(" {}", LensLabel::of(*p, *u, *v)),
                    _ => String::new(),
                };
                pretty.push_str(&format!("  <{g:?}>{label}: {}\n", row.sum));
                let coords = g.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
                csv.push_str(&format!("{coords}, {}\n", row.sum));
            }
            Output { json, csv, pretty }
        }
        Command::Linking { demo: Demo::Rank6, prime } => {
            let report = build_rank6_example(*prime)?.verify()?;
            let all_pass = report.all_pass();
            let mut json = serde_json::to_value(&report).expect("report serializes");
            extend(&mut json, json!({ "command": "linking", "demo": "rank6", "all_pass": all_pass }));
            Output::report(json)
        }
    };
    Ok(out)
}

fn extend(target: &mut Value, more: Value) {
    if let (Value::Object(t), Value::Object(m)) = (target, more) {
        t.extend(m);
    }
}

fn notes(json: &mut Value, knot: &KnotSpec) {
    if knot.has_whitehead_double() {
        extend(json, json!({ "notes": [WHITEHEAD_NOTE] }));
    }
}
