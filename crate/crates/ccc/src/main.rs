//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed expectation, 2 invalid input,
//! 3 instance over budget.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use ccc::bounds;
use ccc::codefile::{parse_field_spec, CodeFile};
use ccc::composition::Composition;
use ccc::construction::{build_code, ConstructionParams};
use ccc::field::Field;
use ccc::verify;

#[derive(Parser)]
#[command(
    name = "ccc",
    version,
    about = "Construct, bound, and verify constant-composition codes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code as the largest fiber of the unit-quotient map
    Construct {
        /// Field characteristic (a prime)
        #[arg(long)]
        p: u64,
        /// Extension degree; the field has p^k elements
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Alphabet size
        #[arg(long)]
        q: usize,
        /// Truncation order of the polynomial ring (1 <= d0 <= r-2)
        #[arg(long)]
        d0: u32,
        /// Symbol multiplicities, e.g. 3,3,2 (must sum to p^k)
        #[arg(long)]
        composition: String,
        /// Output code file
        #[arg(long)]
        out: PathBuf,
        /// Field modulus coefficients, constant first, e.g. 1,1,0,1
        #[arg(long)]
        modulus: Option<String>,
        /// Worker threads for the enumeration passes
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Evaluate size bounds for the given parameters
    Bounds {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        /// Minimum distance the bounds should refer to
        #[arg(long)]
        d: usize,
        #[arg(long)]
        composition: String,
        /// Field spec p^k; include the construction bound (needs --d0)
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        d0: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Read a code file, validate it, and measure its exact minimum distance
    Verify {
        /// Code file to check
        #[arg(long)]
        code: PathBuf,
        /// Fail (exit 1) if the exact distance is below this
        #[arg(long)]
        expect_d: Option<usize>,
    },
    /// Exact maximum code size on a small instance, by exhaustive search
    Oracle {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        composition: String,
        /// Largest word space the search will accept
        #[arg(long, default_value_t = verify::DEFAULT_ORACLE_CAP)]
        cap: usize,
        /// Write a witness code file here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Construct {
            p,
            k,
            q,
            d0,
            composition,
            out,
            modulus,
            threads,
        } => cmd_construct(p, k, q, d0, &composition, &out, modulus.as_deref(), threads),
        Cmd::Bounds {
            q,
            n,
            d,
            composition,
            field,
            d0,
            format,
        } => cmd_bounds(q, n, d, &composition, field.as_deref(), d0, format),
        Cmd::Verify { code, expect_d } => cmd_verify(&code, expect_d),
        Cmd::Oracle {
            q,
            d,
            composition,
            cap,
            out,
        } => cmd_oracle(q, d, &composition, cap, out.as_deref()),
    };
    ExitCode::from(code)
}

fn fail(code: u8, message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    code
}

fn parse_weights(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("composition `{text}` must be comma-separated integers"))
}

fn parse_composition(text: &str, q: usize) -> Result<Composition, String> {
    let weights = parse_weights(text)?;
    if weights.len() != q {
        return Err(format!(
            "composition must list exactly q = {q} weights (got {})",
            weights.len()
        ));
    }
    Composition::new(weights).map_err(|e| e.to_string())
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    p: u64,
    k: u32,
    q: usize,
    d0: u32,
    composition: &str,
    out: &std::path::Path,
    modulus: Option<&str>,
    threads: usize,
) -> u8 {
    let comp = match parse_composition(composition, q) {
        Ok(c) => c,
        Err(e) => return fail(2, e),
    };
    let field = match modulus {
        Some(text) => {
            let coeffs = match parse_weights(text) {
                Ok(c) => c.into_iter().map(|c| c as u64).collect(),
                Err(e) => return fail(2, e),
            };
            Field::with_modulus(p, k, coeffs)
        }
        None => Field::new(p, k),
    };
    let field = match field {
        Ok(f) => f,
        Err(e) => return fail(2, e),
    };
    let params = match ConstructionParams::new(field, d0, comp) {
        Ok(p) => p,
        Err(e) => return fail(2, e),
    };
    let code = match build_code(&params, threads) {
        Ok(c) => c,
        Err(e) => return fail(2, e),
    };

    let file = CodeFile {
        q,
        n: params.r() as usize,
        comp: params.comp().clone(),
        field: Some((p, k)),
        d0: Some(d0),
        guaranteed_d: Some(code.guaranteed_d),
        words: code.words.clone(),
    };
    if let Err(e) = file.write_to(out) {
        return fail(2, e);
    }

    println!("r={}", params.r());
    println!("q={q}");
    println!("d0={d0}");
    println!("composition={composition}");
    println!("M={}", code.size());
    println!("pigeonhole_bound={}", code.pigeonhole_bound());
    match code.guaranteed_d {
        Some(d) => println!("guaranteed_d={d}"),
        None => println!("guaranteed_d=none"),
    }
    println!("coset={}", code.coset);
    println!("out={}", out.display());
    0
}

fn cmd_bounds(
    q: usize,
    n: usize,
    d: usize,
    composition: &str,
    field: Option<&str>,
    d0: Option<u32>,
    format: Format,
) -> u8 {
    let comp = match parse_composition(composition, q) {
        Ok(c) => c,
        Err(e) => return fail(2, e),
    };
    if comp.n() != n {
        return fail(2, format!("composition sums to {}, but n = {n}", comp.n()));
    }
    let construction = match (field, d0) {
        (Some(spec), Some(d0)) => match parse_field_spec(spec) {
            Some((p, k)) => Some((p, k, d0)),
            None => return fail(2, format!("field `{spec}` must look like p^k")),
        },
        (None, None) => None,
        _ => return fail(2, "--field and --d0 must be given together"),
    };
    let report = match bounds::report(&comp, d, construction) {
        Ok(r) => r,
        Err(e) => return fail(2, e),
    };
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Structured => {
            println!("{}", serde_json::to_string_pretty(&report_json(&report)).unwrap())
        }
    }
    0
}

fn report_json(report: &bounds::BoundReport) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = report
        .entries
        .iter()
        .map(|e| {
            serde_json::json!({
                "name": e.name,
                "kind": e.kind.as_str(),
                "applicable": e.applicable,
                "note": e.note,
                "exact": e.exact.as_ref().map(|r| serde_json::json!({
                    "num": r.num.to_string(),
                    "den": r.den.to_string(),
                })),
                "value": e.value.as_ref().map(|v| v.to_string()),
            })
        })
        .collect();
    serde_json::json!({
        "params": {
            "q": report.comp.q(),
            "n": report.comp.n(),
            "d": report.d,
            "composition": report.comp.weights(),
            "field": report.construction.map(|(p, k, _)| format!("{p}^{k}")),
            "d0": report.construction.map(|(_, _, d0)| d0),
        },
        "bounds": entries,
        "best_lower": report.best_lower.as_ref().map(BigUint::to_string),
        "best_upper": report.best_upper.as_ref().map(BigUint::to_string),
    })
}

fn cmd_verify(path: &std::path::Path, expect_d: Option<usize>) -> u8 {
    let file = match CodeFile::read_from(path) {
        Ok(f) => f,
        Err(e) => return fail(2, e),
    };
    let checked = match verify::verified(file.words, &file.comp) {
        Ok(v) => v,
        Err(e) => return fail(2, e),
    };

    println!("file={}", path.display());
    println!("q={}", file.q);
    println!("n={}", file.n);
    let weights: Vec<String> = file.comp.weights().iter().map(|w| w.to_string()).collect();
    println!("composition={}", weights.join(","));
    println!("size={}", checked.size);
    match checked.min_distance {
        Some(d) => println!("min_distance={d}"),
        None => println!("min_distance=undefined"),
    }

    if let Some(expected) = expect_d {
        // A code with fewer than two words meets any distance expectation.
        let ok = checked.min_distance.map_or(true, |d| d >= expected);
        println!(
            "expect_d={expected} status={}",
            if ok { "pass" } else { "fail" }
        );
        if !ok {
            return 1;
        }
    }
    0
}

fn cmd_oracle(
    q: usize,
    d: usize,
    composition: &str,
    cap: usize,
    out: Option<&std::path::Path>,
) -> u8 {
    let comp = match parse_composition(composition, q) {
        Ok(c) => c,
        Err(e) => return fail(2, e),
    };
    if d < 1 {
        return fail(2, "distance must be at least 1");
    }
    let (size, witness) = match verify::exact_max_code(&comp, d, cap) {
        Ok(r) => r,
        Err(e @ verify::VerifyError::InstanceTooLarge { .. }) => return fail(3, e),
        Err(e) => return fail(2, e),
    };

    println!("vertices={}", comp.multinomial());
    println!("d={d}");
    println!("max_size={size}");
    if let Some(path) = out {
        let file = CodeFile {
            q,
            n: comp.n(),
            comp: comp.clone(),
            field: None,
            d0: None,
            guaranteed_d: None,
            words: witness,
        };
        if let Err(e) = file.write_to(path) {
            return fail(2, e);
        }
        println!("out={}", path.display());
    }
    0
}
