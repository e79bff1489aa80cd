mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use equidist::kirillov::{mock_supercuspidal, whittaker_supercuspidal, write_whittaker_csv};
use equidist::modular_curve::{check_cusps, check_lambda, cusp_table, lambda_table, write_cusp_csv, write_lambda_csv, RootGrid};
use equidist::newform::*;
use equidist::padic::enumerate_chars;
use equidist::verify::{self, CheckRecord, RsGrid, TripleGrid};
use equidist::whittaker::{DuConvention, PrincipalSeriesRamified, PsEngine};
use equidist::{Error, Result};
use serde_json::json;

use report::{Builder, RunReport};

#[derive(Parser)]
#[command(name = "equidist", version, about = "Exact certification of local GL2 harmonic analysis and modular-curve data")]
struct Cli {
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Emit the table as CSV (whittaker, cusps, lambda).
    #[arg(long, global = true)]
    csv: bool,
    /// Write the JSON report (or CSV with --csv) to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Omit wall-clock metadata so identical runs give identical bytes.
    #[arg(long, global = true)]
    no_meta: bool,
    /// List passing records in the text summary too.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact suites for the character-integral lemmas and W(i) structure.
    Verify {
        #[command(subcommand)]
        suite: VerifyCmd,
    },
    /// W(i) table of a principal series or mock supercuspidal newform.
    Whittaker(WhittakerArgs),
    /// Triple-product and Rankin-Selberg bound grids.
    Bounds {
        #[command(subcommand)]
        which: BoundsCmd,
    },
    /// Cusps of Gamma0(N) with widths relative to Gamma(q).
    Cusps {
        /// Level N
        #[arg(long = "N")]
        n: u64,
        /// Width modulus q (default N)
        #[arg(long)]
        q: Option<u64>,
    },
    /// Eisenstein coefficients lambda(n) on Re s = 1/2.
    Lambda {
        /// Largest n
        #[arg(long, default_value_t = 1000)]
        nmax: u64,
        /// Numeric t values for w = it
        #[arg(long, value_delimiter = ',', default_value = "0,1,2.5")]
        t: Vec<f64>,
        /// Exact grid points M:j, p^w = zeta_M^(j p).
        #[arg(long, value_delimiter = ',', default_value = "8:1,12:5,30:7")]
        exact: Vec<String>,
        /// Tolerance of the numeric comparisons
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Coefficient checks on an LMFDB newform.
    Newform(NewformArgs),
}

#[derive(Args, Clone)]
struct PrimeList {
    /// Primes
    #[arg(long = "p", value_delimiter = ',', default_value = "3,5")]
    p: Vec<u64>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Gauss integrals: vanishing iff j = k, exact modulus.
    Gauss {
        /// Primes
        #[arg(long = "p", value_delimiter = ',', default_value = "3,5,7")]
        p: Vec<u64>,
        /// Largest character level k
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
    /// Shifted character integrals: vanishing pattern and special values.
    Trichotomy {
        #[command(flatten)]
        primes: PrimeList,
        /// Largest level i of mu
        #[arg(long, default_value_t = 3)]
        imax: u32,
    },
    /// W(i) supports, component levels and norms.
    Structure(GridArgs),
    /// Matrix-coefficient supports, values and per-level norms.
    Support(GridArgs),
    /// Iwasawa cell weights.
    Iwasawa {
        #[arg(long, default_value_t = 13)]
        pmax: u64,
        #[arg(long, default_value_t = 6)]
        cmax: u32,
    },
    /// Normalization of the unit integral.
    Orthogonality {
        #[command(flatten)]
        primes: PrimeList,
        /// Largest level k
        #[arg(long, default_value_t = 2)]
        kmax: u32,
    },
    /// Every suite above at its default grid.
    All,
}

#[derive(Args, Clone)]
struct GridArgs {
    #[command(flatten)]
    primes: PrimeList,
    /// Principal-series levels k (conductor 2k).
    #[arg(long = "k", value_delimiter = ',', default_value = "1,2")]
    k: Vec<u32>,
    /// Supercuspidal conductors.
    #[arg(long = "c", value_delimiter = ',', default_value = "2,3,4")]
    c: Vec<u32>,
    /// Mock supercuspidal seeds per conductor
    #[arg(long, default_value_t = 20)]
    seeds: u64,
}

#[derive(Args)]
struct WhittakerArgs {
    /// Principal series with trivial central character
    #[arg(long, conflicts_with = "sc", required_unless_present = "sc")]
    ps: bool,
    /// Mock supercuspidal
    #[arg(long)]
    sc: bool,
    /// Prime
    #[arg(long = "p")]
    p: u64,
    /// Level of mu1 (principal series, conductor 2k).
    #[arg(long = "k", required_if_eq("ps", "true"))]
    k: Option<u32>,
    /// Conductor (supercuspidal).
    #[arg(long = "c", required_if_eq("sc", "true"))]
    c: Option<u32>,
    /// Shell index i
    #[arg(long = "i")]
    i: u32,
    /// Mock supercuspidal seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Character exponent of mu1 on (Z/p^k)^*; default: first of exact level k.
    #[arg(long = "t")]
    t: Option<u64>,
    /// mu1(p) = zeta_d^e.
    #[arg(long = "d", default_value_t = 1)]
    d: u64,
    #[arg(long = "e", default_value_t = 0)]
    e: i64,
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Local triple-product integrals against 4 p^-c (times old-form factors).
    Triple(TripleArgs),
    /// Local Rankin-Selberg integrals against (p-1)/(p+1) p^(-c/2).
    Rs(RsArgs),
    /// Both grids.
    All {
        /// Supercuspidal seed pairs in the triple grid
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        /// Supercuspidal seeds in the Rankin-Selberg grid
        #[arg(long, default_value_t = 3)]
        rs_seeds: u64,
    },
}

#[derive(Args)]
struct TripleArgs {
    #[command(flatten)]
    primes: PrimeList,
    /// Conductors c
    #[arg(long = "c", value_delimiter = ',', default_value = "2,4")]
    c: Vec<u32>,
    /// Only Steinberg first slots.
    #[arg(long, conflicts_with = "ramified")]
    steinberg: bool,
    /// Only level-c1 principal-series first slots.
    #[arg(long)]
    ramified: bool,
    /// Supercuspidal seed pairs
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    /// Shells added around the support window; the value is recomputed at twice this margin
    #[arg(long, default_value_t = equidist::local_integrals::DEFAULT_MARGIN)]
    margin: i64,
}

#[derive(Args)]
struct RsArgs {
    #[command(flatten)]
    primes: PrimeList,
    /// Conductors c (even)
    #[arg(long = "c", value_delimiter = ',', default_value = "4,6")]
    c: Vec<u32>,
    /// Conductor exponents e_p of pi_1
    #[arg(long = "ep", value_delimiter = ',', default_value = "1,2")]
    ep: Vec<u32>,
    /// Only this shell index
    #[arg(long = "i")]
    i: Option<u32>,
    /// Supercuspidal seeds
    #[arg(long, default_value_t = 3)]
    seeds: u64,
    /// Imaginary part of s on the unitary line (only enters the phase).
    #[arg(long = "t", default_value_t = 1.3)]
    t: f64,
}

#[derive(Args)]
struct NewformArgs {
    label: String,
    /// Deligne bound on a_p
    #[arg(long)]
    deligne: bool,
    /// Hecke recursion and multiplicativity
    #[arg(long)]
    hecke: bool,
    /// Decay of f(x + iy) as y grows
    #[arg(long)]
    growth: bool,
    /// Shifted convolution sums
    #[arg(long)]
    shifted: bool,
    /// Shifted-convolution length.
    #[arg(long, default_value_t = 1000)]
    x: usize,
    /// Largest shift l.
    #[arg(long, default_value_t = 10)]
    lmax: usize,
    /// epsilon in the envelope log(ex)^(2-epsilon)
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Never touch the network (cache and fixtures only).
    #[arg(long)]
    offline: bool,
    /// Directory of fixture responses.
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

/// A report plus an optional CSV rendering of its table.
struct Output {
    report: RunReport,
    csv: Option<Vec<u8>>,
    /// Text rendering of the table for the human summary.
    text: Option<String>,
}

fn rec(case: String, pass: bool, detail: String) -> CheckRecord {
    CheckRecord {
        case,
        pass,
        detail,
        skipped: false,
        data: None,
    }
}

fn run_verify(cmd: &VerifyCmd, b: &mut Builder) -> Result<()> {
    match cmd {
        VerifyCmd::Gauss { p, kmax } => {
            b.suite(verify::gauss_suite(p, *kmax)?);
        }
        VerifyCmd::Trichotomy { primes, imax } => {
            b.suite(verify::trichotomy_suite(&primes.p, *imax)?);
        }
        VerifyCmd::Structure(g) => {
            b.suite(verify::structure_suite(&g.primes.p, &g.k, &g.c, g.seeds)?);
        }
        VerifyCmd::Support(g) => {
            b.suite(verify::support_suite(&g.primes.p, &g.k, &g.c, g.seeds)?);
        }
        VerifyCmd::Iwasawa { pmax, cmax } => {
            b.suite(verify::iwasawa_suite(*pmax, *cmax)?);
        }
        VerifyCmd::Orthogonality { primes, kmax } => {
            b.suite(verify::orthogonality_suite(&primes.p, *kmax)?);
        }
        VerifyCmd::All => {
            b.suite(verify::gauss_suite(&[3, 5, 7], 3)?);
            b.suite(verify::trichotomy_suite(&[3, 5], 3)?);
            b.suite(verify::orthogonality_suite(&[3, 5, 7], 2)?);
            b.suite(verify::structure_suite(&[3, 5], &[1, 2], &[2, 3, 4], 20)?);
            b.suite(verify::support_suite(&[3, 5], &[1, 2], &[2, 3, 4], 20)?);
            b.suite(verify::iwasawa_suite(13, 6)?);
        }
    }
    Ok(())
}

fn whittaker_text(t: &equidist::kirillov::WhittakerTable) -> String {
    let mut out = format!("W({}) for {}  [{}]\n", t.i, t.rep, t.normalization);
    for (n, row) in &t.entries {
        for (tt, a) in row {
            let z = a.to_complex();
            out.push_str(&format!(
                "  n={:<3} nu={:<5} level {}  {}  ~ {:.6}{:+.6}i\n",
                n,
                tt,
                t.char_of(*tt).level(),
                a,
                z.re,
                z.im
            ));
        }
    }
    out
}

fn run_whittaker(a: &WhittakerArgs, b: &mut Builder, want_csv: bool) -> Result<(Option<Vec<u8>>, String)> {
    let (table, structure) = if a.ps {
        let k = a.k.ok_or_else(|| Error::InvalidArgument("--ps needs --k".into()))?;
        let t = match a.t {
            Some(t) => t,
            None => enumerate_chars(a.p, k, k)
                .first()
                .map(|c| c.t)
                .ok_or_else(|| Error::InvalidArgument(format!("no characters of level {} mod {}^{}", k, a.p, k)))?,
        };
        let rep = PrincipalSeriesRamified::trivial_central(a.p, k, t, a.d, a.e)?;
        if a.i > rep.c() {
            return Err(Error::InvalidArgument(format!("i = {} > c = {}", a.i, rep.c())));
        }
        let eng = PsEngine::new(&rep, DuConvention::Additive)?;
        let (lo, hi) = eng.natural_window(a.i);
        (eng.table(a.i, lo, hi)?, verify::structure_ps(&rep)?)
    } else {
        let c = a.c.ok_or_else(|| Error::InvalidArgument("--sc needs --c".into()))?;
        if a.i > c {
            return Err(Error::InvalidArgument(format!("i = {} > c = {}", a.i, c)));
        }
        let data = mock_supercuspidal(a.p, c, a.seed)?;
        (whittaker_supercuspidal(&data, a.i)?, verify::structure_sc(&data)?)
    };
    let r = structure.into_iter().nth(a.i as usize).expect("one record per i");
    b.section("whittaker-structure", "W(i) structure proposition", vec![r]);
    b.data(table.to_json());
    let text = whittaker_text(&table);
    if want_csv {
        let mut buf = Vec::new();
        write_whittaker_csv(&table, &mut buf)?;
        return Ok((Some(buf), text));
    }
    Ok((None, text))
}

fn run_bounds(cmd: &BoundsCmd, b: &mut Builder) -> Result<()> {
    match cmd {
        BoundsCmd::Triple(a) => {
            let g = TripleGrid {
                primes: a.primes.p.clone(),
                levels: a.c.clone(),
                seeds: a.seeds,
                steinberg: !a.ramified,
                ramified_first: !a.steinberg,
                margin: a.margin,
            };
            b.suite(verify::triple_suite(&g)?.0);
        }
        BoundsCmd::Rs(a) => {
            let g = RsGrid {
                primes: a.primes.p.clone(),
                levels: a.c.clone(),
                e_ps: a.ep.clone(),
                seeds: a.seeds,
                t: a.t,
                i: a.i,
            };
            b.suite(verify::rs_suite(&g)?.0);
        }
        BoundsCmd::All { seeds, rs_seeds } => {
            b.suite(verify::triple_suite(&TripleGrid {
                seeds: *seeds,
                ..TripleGrid::default()
            })?
            .0);
            b.suite(verify::rs_suite(&RsGrid {
                seeds: *rs_seeds,
                ..RsGrid::default()
            })?
            .0);
        }
    }
    Ok(())
}

fn run_cusps(n: u64, q: Option<u64>, b: &mut Builder, want_csv: bool) -> Result<Option<Vec<u8>>> {
    let q = q.unwrap_or(n);
    let rows = cusp_table(n, q)?;
    let chk = check_cusps(n, &[q])?;
    b.section(
        "cusps",
        "cusps of Gamma0(N) and their widths",
        vec![rec(
            format!("N={} q={}", n, q),
            chk.pass,
            format!(
                "{} cusps (formula {}), width sum {} = index {}, sigma ok {}, widths match orbits {}",
                chk.cusps, chk.count_formula, chk.width_sum, chk.index, chk.sigma_ok, chk.widths_match_orbits
            ),
        )],
    );
    b.data(json!({"level": n, "q": q, "rows": serde_json::to_value(&rows).map_err(|e| Error::Io(e.to_string()))?}));
    if want_csv {
        let mut buf = Vec::new();
        write_cusp_csv(&rows, &mut buf)?;
        return Ok(Some(buf));
    }
    Ok(None)
}

fn parse_grid(s: &str) -> Result<RootGrid> {
    let bad = || Error::InvalidArgument(format!("exact grid point {:?} is not M:j", s));
    let (m, j) = s.split_once(':').ok_or_else(bad)?;
    let m: u64 = m.trim().parse().map_err(|_| bad())?;
    let j: u64 = j.trim().parse().map_err(|_| bad())?;
    if m == 0 {
        return Err(bad());
    }
    Ok(RootGrid { m, j })
}

fn run_lambda(nmax: u64, ts: &[f64], exact: &[String], tol: f64, b: &mut Builder, want_csv: bool) -> Result<Option<Vec<u8>>> {
    if nmax == 0 {
        return Err(Error::InvalidArgument("--nmax must be positive".into()));
    }
    let grid = exact
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| parse_grid(s))
        .collect::<Result<Vec<_>>>()?;
    let chk = check_lambda(nmax, &grid, ts, tol)?;
    let mut records = vec![
        rec(
            "divisor sum = geometric formula (exact grid)".into(),
            chk.exact_agree,
            format!("{} grid points, n <= {}", grid.len(), nmax),
        ),
        rec(
            "|lambda(n)| <= tau(n) (exact grid)".into(),
            chk.exact_tau_bound,
            format!("{} grid points", grid.len()),
        ),
        rec(
            "|lambda(n)| <= tau(n) and formula agreement (t-grid)".into(),
            chk.max_numeric_diff <= tol && chk.max_ratio_to_tau <= 1.0 + tol,
            format!("max diff {:.3e}, max |lambda|/tau {:.12}", chk.max_numeric_diff, chk.max_ratio_to_tau),
        ),
        rec("Hecke multiplicativity".into(), chk.multiplicative, String::new()),
    ];
    for f in chk.failures.iter().take(20) {
        records.push(rec("failure".into(), false, f.clone()));
    }
    b.section("lambda", "Eisenstein divisor-sum coefficients", records);
    if want_csv {
        let mut buf = Vec::new();
        write_lambda_csv(&lambda_table(nmax, ts), &mut buf)?;
        return Ok(Some(buf));
    }
    Ok(None)
}

fn run_newform(a: &NewformArgs, b: &mut Builder) -> Result<()> {
    let mut client = NewformClient::from_env();
    client.offline = a.offline;
    if let Some(d) = &a.fixtures {
        client.fixture_dir = d.clone();
    }
    let (r, source) = client.fetch(&a.label)?;
    let all = !(a.deligne || a.hecke || a.growth || a.shifted);
    let mut records = Vec::new();
    if all || a.deligne {
        let d = deligne_check(&r);
        records.push(rec(
            "Deligne bound |lambda(p)| <= 2".into(),
            d.pass,
            format!("{} primes, max {:.12} at p = {}", d.primes_checked, d.max_abs_lambda_p, d.argmax),
        ));
    }
    if all || a.hecke {
        let h = hecke_check(&r);
        records.push(rec(
            "Hecke recursion and multiplicativity".into(),
            h.pass,
            format!(
                "{} recursions (max err {:.2e}), {} coprime pairs (max err {:.2e}), lambda(1) = {}",
                h.recursions, h.max_recursion_err, h.coprime_pairs, h.max_multiplicative_err, h.lambda_one
            ),
        ));
    }
    if all || a.growth {
        let g = growth_check(&r, &default_growth_samples())?;
        records.push(rec(
            "cusp-form growth |f| e^(2 pi y) bounded".into(),
            g.pass,
            format!("max ratio {:.6}, drift {:.2e}", g.max_ratio, g.drift),
        ));
    }
    if all || a.shifted {
        for l in 0..=a.lmax {
            let s = shifted_convolution(&r, l, a.x, a.epsilon)?;
            records.push(rec(
                format!("shifted convolution l={} x={}", l, a.x),
                s.sum.is_finite() && s.envelope.is_finite(),
                format!("sum {:.6}, envelope {:.6}, ratio {:.6}", s.sum, s.envelope, s.ratio),
            ));
        }
    }
    b.section("newform", "newform coefficient estimates", records);
    b.data(json!({
        "label": r.label,
        "level": r.level,
        "weight": r.weight,
        "is_cm": r.is_cm,
        "n_max": r.n_max(),
        "source": format!("{:?}", source),
    }));
    Ok(())
}

fn run(cli: &Cli) -> Result<Output> {
    let (name, seed) = match &cli.cmd {
        Cmd::Verify { suite } => (
            format!(
                "verify {}",
                match suite {
                    VerifyCmd::Gauss { .. } => "gauss",
                    VerifyCmd::Trichotomy { .. } => "trichotomy",
                    VerifyCmd::Structure(_) => "structure",
                    VerifyCmd::Support(_) => "support",
                    VerifyCmd::Iwasawa { .. } => "iwasawa",
                    VerifyCmd::Orthogonality { .. } => "orthogonality",
                    VerifyCmd::All => "all",
                }
            ),
            None,
        ),
        Cmd::Whittaker(a) => ("whittaker".to_string(), a.sc.then_some(a.seed)),
        Cmd::Bounds { which } => (
            format!(
                "bounds {}",
                match which {
                    BoundsCmd::Triple(_) => "triple",
                    BoundsCmd::Rs(_) => "rs",
                    BoundsCmd::All { .. } => "all",
                }
            ),
            None,
        ),
        Cmd::Cusps { .. } => ("cusps".into(), None),
        Cmd::Lambda { .. } => ("lambda".into(), None),
        Cmd::Newform(_) => ("newform".into(), None),
    };
    let mut b = Builder::new(name, seed);
    let mut text = None;
    let csv = match &cli.cmd {
        Cmd::Verify { suite } => {
            run_verify(suite, &mut b)?;
            None
        }
        Cmd::Whittaker(a) => {
            let (csv, t) = run_whittaker(a, &mut b, cli.csv)?;
            text = Some(t);
            csv
        }
        Cmd::Bounds { which } => {
            run_bounds(which, &mut b)?;
            None
        }
        Cmd::Cusps { n, q } => run_cusps(*n, *q, &mut b, cli.csv)?,
        Cmd::Lambda { nmax, t, exact, tol } => run_lambda(*nmax, t, exact, *tol, &mut b, cli.csv)?,
        Cmd::Newform(a) => {
            run_newform(a, &mut b)?;
            None
        }
    };
    if cli.csv && csv.is_none() {
        return Err(Error::InvalidArgument("--csv applies to whittaker, cusps and lambda".into()));
    }
    Ok(Output {
        report: b.finish(!cli.no_meta),
        csv,
        text,
    })
}

fn emit(cli: &Cli, out: &Output) -> std::io::Result<()> {
    let json = serde_json::to_string_pretty(&out.report).expect("report serializes") + "\n";
    let human = format!("{}{}", out.text.as_deref().unwrap_or(""), out.report.human(cli.verbose));
    let mut stdout = std::io::stdout().lock();
    match (&cli.out, &out.csv) {
        (Some(path), Some(csv)) => {
            std::fs::write(path, csv)?;
            write!(stdout, "{}", if cli.json { json } else { human })?;
        }
        (Some(path), None) => {
            std::fs::write(path, &json)?;
            if cli.json {
                write!(stdout, "{}", json)?;
            } else {
                write!(stdout, "{}", human)?;
            }
        }
        (None, Some(csv)) => {
            stdout.write_all(csv)?;
            eprint!("{}", out.report.human(false));
        }
        (None, None) => {
            if cli.json {
                write!(stdout, "{}", json)?;
            } else {
                write!(stdout, "{}", human)?;
            }
        }
    }
    stdout.flush()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &out) {
        eprintln!("error: {}", e);
        return ExitCode::from(2);
    }
    if out.report.all_skipped() {
        eprintln!("error: no requested grid point satisfies the hypotheses");
        return ExitCode::from(2);
    }
    if out.report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
