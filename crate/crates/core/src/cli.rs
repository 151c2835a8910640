//! Command-line front end. Exit codes: 0 success, 1 usage or input error,
//! 2 a verification grid recorded a failure.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::alexander::{alexander_skein, alexander_with_trace};
use crate::classify::{classify, KnotInput};
use crate::error::{Error, Result};
use crate::grid::{run_grid, Cell, GridReport, GridSpec, Suite};
use crate::obstruction::{
    gabai_not_fibered, monic_check, os_form_check, pm1_coefficients, Claim2Grid,
};
use crate::oracle::alexander_fox;
use crate::pretzel::{FamilyTag, PretzelLink};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "montesinos",
    version,
    about = "Alexander polynomials and surgery obstructions for pretzel knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Alexander polynomial by skein resolution.
    Alexander {
        #[arg(allow_hyphen_values = true)]
        params: String,
        /// Shift to lowest degree zero with positive constant term.
        #[arg(long)]
        normalize: bool,
        /// Print the resolving tree.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare the skein engine with the Fox-calculus oracle.
    OracleCompare {
        /// `a,b,c;d,e,f` or `grid:<max regions>:<max |a_i|>`
        #[arg(allow_hyphen_values = true)]
        spec: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Coefficient and fiberedness obstructions.
    Obstruct {
        #[arg(allow_hyphen_values = true)]
        params: String,
        #[arg(long)]
        json: bool,
    },
    /// Cyclic and finite surgery classification.
    Classify {
        /// Pretzel parameters or Montesinos tangles `b1/a1;b2/a2;...`
        #[arg(allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification grid.
    VerifyClaims {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        pmax: Option<i64>,
        #[arg(long)]
        qmax: Option<i64>,
        #[arg(long)]
        nmax: Option<i64>,
        #[arg(long)]
        mmax: Option<i64>,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check the rank-formula inequalities on a grid.
    VerifyClaim2 {
        /// e.g. `nu=-3..5,alpha=-30..30,beta=2..5,y=-10..0`
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Parse `name=lo..hi` assignments over the defaults.
pub fn parse_claim2_grid(s: &str) -> Result<Claim2Grid> {
    let mut grid = Claim2Grid::default();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, range) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected name=lo..hi, got `{part}`")))?;
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| Error::Parse(format!("expected lo..hi, got `{range}`")))?;
        let int = |v: &str| {
            v.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("`{v}` is not an integer")))
        };
        let bounds = (int(lo)?, int(hi)?);
        if bounds.0 > bounds.1 {
            return Err(Error::Parse(format!("empty range `{part}`")));
        }
        match name.trim() {
            "nu" => grid.nu = bounds,
            "alpha" => grid.alpha = bounds,
            "beta" => grid.beta = bounds,
            "y" | "Y" => grid.y = bounds,
            other => return Err(Error::Parse(format!("unknown grid variable `{other}`"))),
        }
    }
    Ok(grid)
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn emit_grid(out: &mut dyn Write, report: &GridReport, as_json: bool) -> std::io::Result<i32> {
    if as_json {
        out.write_all(report.to_json_lines().as_bytes())?;
    } else {
        for Cell {
            params,
            expected,
            observed,
            pass,
            ..
        } in &report.cells
        {
            let mark = if *pass { "ok" } else { "FAIL" };
            writeln!(
                out,
                "{mark:4} {params:?} expected {expected} observed {observed}"
            )?;
        }
        writeln!(
            out,
            "{}: {} passed, {} failed",
            report.suite, report.passed, report.failed
        )?;
    }
    Ok(if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

fn oracle_links(spec: &str) -> Result<Vec<PretzelLink>> {
    if let Some(rest) = spec.strip_prefix("grid:") {
        let (r, a) = rest.split_once(':').ok_or_else(|| {
            Error::Parse(format!("expected grid:<regions>:<amplitude>, got `{spec}`"))
        })?;
        let mut g = GridSpec::new(Suite::Oracle);
        g.regions = (
            1,
            r.parse()
                .map_err(|_| Error::Parse(format!("bad region count `{r}`")))?,
        );
        g.amplitude = a
            .parse()
            .map_err(|_| Error::Parse(format!("bad amplitude `{a}`")))?;
        g.validate()?;
        return Ok(g.oracle_links());
    }
    spec.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

fn oracle_compare(
    out: &mut dyn Write,
    spec: &str,
    as_json: bool,
    threads: usize,
) -> Result<std::io::Result<i32>> {
    use rayon::prelude::*;
    let links = oracle_links(spec)?;
    for l in &links {
        l.require_knot()?;
    }
    let mut cells: Vec<Cell> = with_threads(threads, || {
        links
            .par_iter()
            .map(|l| {
                let skein = alexander_skein(l)
                    .and_then(|p| p.normalize())
                    .map(|p| p.to_string());
                let fox = alexander_fox(l).map(|p| p.to_string());
                let expected = skein.unwrap_or_else(|e| format!("error: {e}"));
                let observed = fox.unwrap_or_else(|e| format!("error: {e}"));
                let pass = expected == observed;
                Cell {
                    suite: Suite::Oracle,
                    params: l.params().to_vec(),
                    expected,
                    observed,
                    pass,
                }
            })
            .collect()
    })?;
    cells.sort_by(|a, b| a.params.cmp(&b.params));
    let passed = cells.iter().filter(|c| c.pass).count();
    let failed = cells.len() - passed;
    let report = GridReport {
        suite: Suite::Oracle,
        cells,
        passed,
        failed,
    };
    Ok(emit_grid(out, &report, as_json))
}

fn alexander_cmd(
    out: &mut dyn Write,
    params: &str,
    normalize: bool,
    trace: bool,
    as_json: bool,
) -> Result<std::io::Result<i32>> {
    let link: PretzelLink = params.parse()?;
    let (poly, tree) = if trace {
        let (p, t) = alexander_with_trace(&link)?;
        (p, Some(t))
    } else {
        (alexander_skein(&link)?, None)
    };
    let shown = if normalize { poly.normalize()? } else { poly };
    Ok((|| {
        if as_json {
            let doc = json!({
                "link": link,
                "normalized": normalize,
                "polynomial": shown,
                "trace": tree,
            });
            writeln!(out, "{doc}")?;
        } else {
            writeln!(out, "{shown}")?;
            if let Some(t) = &tree {
                for step in &t.steps {
                    writeln!(out, "resolve {:?} at region {}", step.link, step.region)?;
                    for c in &step.children {
                        writeln!(out, "  ({}) * {:?}", c.multiplier, c.link)?;
                    }
                }
                for leaf in &t.leaves {
                    writeln!(
                        out,
                        "leaf {:?}: ({}) * ({})",
                        leaf.link.params(),
                        leaf.multiplier,
                        leaf.value
                    )?;
                }
            }
        }
        Ok(EXIT_OK)
    })())
}

fn obstruct_cmd(out: &mut dyn Write, params: &str, as_json: bool) -> Result<std::io::Result<i32>> {
    let link: PretzelLink = params.parse()?;
    let poly = alexander_skein(&link)?.normalize()?;
    let os_form = os_form_check(&poly)?;
    let pm1 = pm1_coefficients(&poly);
    let monic = monic_check(&poly)?;
    let family = link.family_membership()?;
    let fibered = match family {
        FamilyTag::Minus1Minus1TwoM { m, p, q } => Some(gabai_not_fibered(m, p, q)?),
        _ => None,
    };
    Ok((|| {
        if as_json {
            let doc = json!({
                "link": link,
                "polynomial": poly,
                "pm1": pm1,
                "os_form": os_form,
                "monic": monic,
                "family": family,
                "fiberedness": fibered,
            });
            writeln!(out, "{doc}")?;
        } else {
            writeln!(out, "polynomial: {poly}")?;
            writeln!(out, "pm1: {pm1}")?;
            match &os_form {
                Some(d) => writeln!(
                    out,
                    "os-form: yes, k={}, exponents {:?}",
                    d.k(),
                    d.exponents()
                )?,
                None => writeln!(out, "os-form: no")?,
            }
            writeln!(out, "monic: {monic}")?;
            writeln!(out, "family: {family}")?;
            match &fibered {
                Some(t) => writeln!(out, "fiberedness: {:?} via {:?}", t.verdict, t.case_path)?,
                None => writeln!(out, "fiberedness: not determined")?,
            }
        }
        Ok(EXIT_OK)
    })())
}

fn classify_cmd(out: &mut dyn Write, input: &str, as_json: bool) -> Result<std::io::Result<i32>> {
    let input: KnotInput = input.parse()?;
    let report = classify(&input)?;
    Ok((|| {
        if as_json {
            writeln!(
                out,
                "{}",
                serde_json::to_string(&report).expect("report serializes")
            )?;
        } else {
            writeln!(out, "{}: {}", report.input, report.verdict_string())?;
            for s in &report.stages {
                writeln!(
                    out,
                    "  {:?}: {:?} [{}]",
                    s.stage,
                    s.verdict,
                    s.citation.reference()
                )?;
            }
        }
        Ok(EXIT_OK)
    })())
}

fn dispatch(out: &mut dyn Write, command: Command) -> Result<std::io::Result<i32>> {
    match command {
        Command::Alexander {
            params,
            normalize,
            trace,
            json,
        } => alexander_cmd(out, &params, normalize, trace, json),
        Command::OracleCompare {
            spec,
            json,
            threads,
        } => oracle_compare(out, &spec, json, threads),
        Command::Obstruct { params, json } => obstruct_cmd(out, &params, json),
        Command::Classify { input, json } => classify_cmd(out, &input, json),
        Command::VerifyClaims {
            suite,
            pmax,
            qmax,
            nmax,
            mmax,
            threads,
            json,
        } => {
            let suite: Suite = suite.parse()?;
            let mut spec = GridSpec::new(suite);
            if let Some(v) = pmax {
                spec.p.1 = v;
            }
            if let Some(v) = qmax {
                spec.q.1 = v;
            }
            if let Some(v) = pmax.filter(|_| qmax.is_none()) {
                spec.q.1 = v;
            }
            if let Some(v) = nmax {
                spec.n.1 = v;
            }
            if let Some(v) = mmax {
                spec.m.1 = v;
            }
            let report = with_threads(threads, || run_grid(&spec))??;
            Ok(emit_grid(out, &report, json))
        }
        Command::VerifyClaim2 {
            grid,
            threads,
            json,
        } => {
            let mut spec = GridSpec::new(Suite::Claim2);
            if let Some(g) = grid {
                spec.claim2 = parse_claim2_grid(&g)?;
            }
            let report = with_threads(threads, || run_grid(&spec))??;
            Ok(emit_grid(out, &report, json))
        }
    }
}

/// Run the tool on `argv` (program name first), writing results to `out`
/// and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(out, cli.command) {
        Ok(Ok(code)) => code,
        Ok(Err(io)) => {
            let _ = writeln!(err, "error: {io}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("montesinos").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn alexander_normalized() {
        let (code, out, _) = run_capture(&["alexander", "-1,-2,3,3", "--normalize"]);
        assert_eq!(code, 0);
        let poly: crate::LaurentPoly = out.trim().parse().unwrap();
        assert_eq!(poly.coefficient(1), (-4).into());
    }

    #[test]
    fn alexander_trace_json() {
        let (code, out, _) = run_capture(&["alexander", "-2,3,7", "--trace", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let trace: crate::alexander::SkeinTrace =
            serde_json::from_value(v["trace"].clone()).unwrap();
        let poly: crate::LaurentPoly = serde_json::from_value(v["polynomial"].clone()).unwrap();
        assert_eq!(trace.recombine(), poly);
    }

    #[test]
    fn classify_json() {
        let (code, out, _) = run_capture(&["classify", "-2,3,9", "--json"]);
        assert_eq!(code, 0);
        let r: crate::classify::ClassificationReport = serde_json::from_str(&out).unwrap();
        assert_eq!(
            r.final_verdict,
            vec![crate::classify::FinalVerdict::FiniteSlopes(vec![22, 23])]
        );
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["alexander", "1,x"]).0, 1);
        assert_eq!(run_capture(&["alexander", "2,2"]).0, 1);
        assert_eq!(run_capture(&["frobnicate"]).0, 1);
        assert_eq!(run_capture(&["verify-claims", "--suite", "claim9"]).0, 1);
        assert_eq!(run_capture(&["classify", "-2,3,7", "--bogus"]).0, 1);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn grids() {
        let (code, out, _) = run_capture(&[
            "verify-claims",
            "--suite",
            "claim5",
            "--pmax",
            "9",
            "--json",
        ]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 7);
        for l in &lines[..6] {
            let cell: Cell = serde_json::from_str(l).unwrap();
            assert_eq!(cell.observed, "-2");
        }
        let (code, _, _) = run_capture(&[
            "verify-claim2",
            "--grid",
            "nu=-1..2,alpha=-9..9,beta=2..3,y=-3..0",
        ]);
        assert_eq!(code, 0);
        assert_eq!(run_capture(&["verify-claim2", "--grid", "nu=3..1"]).0, 1);
    }

    #[test]
    fn oracle_compare_list() {
        let (code, out, _) = run_capture(&["oracle-compare", "-2,3,7;-1,4,3,3", "--threads", "2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("2 passed, 0 failed"));
    }

    #[test]
    fn claim2_grid_syntax() {
        let g = parse_claim2_grid("nu=-3..5, alpha=-30..30,beta=2..5,y=-10..0").unwrap();
        assert_eq!(g, Claim2Grid::default());
        assert!(parse_claim2_grid("gamma=1..2").is_err());
        assert!(parse_claim2_grid("nu=1").is_err());
    }
}
