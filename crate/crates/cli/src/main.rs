use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use curvesyz::conjectures::{self, ConjectureReport};
use curvesyz::families::{self, NamedCurve};
use curvesyz::incidence::{delete_line, make_pair};
use curvesyz::jacobian::{analyze, JacobianTable};
use curvesyz::linalg::Scalar;
use curvesyz::oracle::{addition_report, deletion_report, AdditionDeletionReport};
use curvesyz::parse::{parse_homogeneous, parse_line};
use curvesyz::poly::HomogeneousPoly;
use curvesyz::syzygy::{Certificate, Classification, SyzygyProfile};
use curvesyz::{Error, VERSION};

#[derive(Parser)]
#[command(name = "curvesyz", version, about = "Jacobian syzygies and freeness of plane curves")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Initial syzygy scan bound (default 2d-3, doubled as needed).
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Last degree of the Jacobian tables (default 3d(d-2)+1).
    #[arg(long, global = true)]
    kmax: Option<u32>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exponents, classification and Jacobian tables of a curve.
    Analyze { poly: String },
    /// Add a line to a free curve.
    AddLine { poly: String, line: String },
    /// Delete a line from a free curve.
    DeleteLine { poly: String, line: String },
    /// Run a family or the example gallery: cm, rkc, cusp, gallery.
    Scan {
        family: String,
        /// First parameter (m for cm, d for rkc, k for cusp).
        #[arg(long)]
        from: Option<u32>,
        /// Last parameter, inclusive.
        #[arg(long)]
        to: Option<u32>,
        /// Coefficients a,b,c for rkc.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1i64, 0, 0])]
        abc: Vec<i64>,
    },
    /// Check the local inequalities on the corpus and random branch pairs.
    Conjectures {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Irreducible branch pairs.
        #[arg(long, default_value_t = 500)]
        count: usize,
        /// Exploratory reducible pairs.
        #[arg(long, default_value_t = 100)]
        reducible: usize,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 2,
            Error::NotHomogeneous { .. } => 3,
            Error::NotReduced => 4,
            Error::LineIsComponent => 5,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

type Out = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Analyze { poly } => {
            let f = curve(poly)?;
            let doc = analysis_doc(cli, &f)?;
            render_analysis(cli.format, &doc)
        }
        Cmd::AddLine { poly, line } => {
            let f = curve(poly)?;
            let ell = parse_line(line)?;
            let pair = make_pair(&f, &ell)?;
            match addition_report(&pair, cli.bound) {
                Ok(rep) => render_line(cli.format, &line_doc(&rep)),
                Err(Error::NotFree) => {
                    eprintln!("notice: the curve is not free; analyzing the union instead");
                    render_analysis(cli.format, &analysis_doc(cli, &pair.f_union)?)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::DeleteLine { poly, line } => {
            let f = curve(poly)?;
            let ell = parse_line(line)?;
            let pair = delete_line(&f, &ell)?;
            match deletion_report(&pair, cli.bound) {
                Ok(rep) => render_line(cli.format, &line_doc(&rep)),
                Err(Error::NotFree) => {
                    eprintln!("notice: the curve is not free; analyzing the curve with the line removed");
                    render_analysis(cli.format, &analysis_doc(cli, &pair.f)?)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Scan { family, from, to, abc } => scan(cli, family, *from, *to, abc),
        Cmd::Conjectures { seed, count, reducible } => {
            let rep = conjectures::scan(*seed, *count, *reducible)?;
            render_conjectures(cli.format, &rep)
        }
    }
}

fn curve(text: &str) -> Result<HomogeneousPoly, Failure> {
    let f = parse_homogeneous(text)?;
    if f.degree() < 3 {
        return Err(Failure { code: 1, msg: format!("curve degree must be at least 3, got {}", f.degree()) });
    }
    Ok(f)
}

#[derive(Serialize)]
struct Tables {
    t: u32,
    symmetry_center: u32,
    k_max: u32,
    m: Vec<u64>,
    n: Vec<u64>,
    d0: Vec<u64>,
}

#[derive(Serialize)]
struct AnalysisDoc {
    engine: &'static str,
    input: String,
    degree: u32,
    exponents: Vec<u32>,
    classification: &'static str,
    level: Option<u32>,
    mdr: u32,
    tau: u64,
    nu: u64,
    sigma: Option<u32>,
    certificate: Certificate,
    tables: Tables,
    timing_ms: Option<u128>,
}

fn analysis_doc(cli: &Cli, f: &HomogeneousPoly) -> Result<AnalysisDoc, Failure> {
    let start = Instant::now();
    let (p, t) = analyze(f, cli.bound, cli.kmax)?;
    let d0 = (0..=t.k_max as i64).map_while(|k| p.d0_dim(k)).collect();
    Ok(AnalysisDoc {
        engine: VERSION,
        input: f.to_string(),
        degree: f.degree(),
        exponents: p.generator_degrees.clone(),
        classification: p.classification.label(),
        level: p.classification.level(),
        mdr: p.mdr(),
        tau: t.tau_total,
        nu: t.nu,
        sigma: t.sigma,
        certificate: p.certificate.clone(),
        tables: Tables {
            t: t.t,
            symmetry_center: t.symmetry_center,
            k_max: t.k_max,
            m: t.dims_m.clone(),
            n: t.dims_n.clone(),
            d0,
        },
        timing_ms: cli.timing.then(|| start.elapsed().as_millis()),
    })
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn json<T: Serialize>(v: &T) -> Out {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure { code: 1, msg: e.to_string() })?;
    s.push('\n');
    Ok(s)
}

const ANALYSIS_HEADER: &str = "degree,exponents,classification,level,mdr,tau,nu,sigma";

fn render_analysis(format: Format, d: &AnalysisDoc) -> Out {
    match format {
        Format::Json => json(d),
        Format::Csv => Ok(format!(
            "{ANALYSIS_HEADER}\n{},{},{},{},{},{},{},{}\n",
            d.degree,
            join(&d.exponents),
            d.classification,
            opt(d.level),
            d.mdr,
            d.tau,
            d.nu,
            opt(d.sigma)
        )),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "curve           {}", d.input);
            let _ = writeln!(s, "degree          {}", d.degree);
            let _ = writeln!(s, "exponents       {}", join(&d.exponents));
            let _ = writeln!(s, "classification  {}", d.classification);
            let _ = writeln!(s, "mdr             {}", d.mdr);
            let _ = writeln!(s, "tau             {}", d.tau);
            let _ = writeln!(s, "nu              {}", d.nu);
            let _ = writeln!(s, "sigma           {}", opt(d.sigma));
            let _ = writeln!(s, "{:>4} {:>8} {:>8} {:>8}", "k", "dim M", "n", "dim D0");
            for k in 0..d.tables.m.len() {
                let d0 = d.tables.d0.get(k).map_or(String::new(), |v| v.to_string());
                let _ = writeln!(s, "{k:>4} {:>8} {:>8} {:>8}", d.tables.m[k], d.tables.n[k], d0);
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct ProfileDoc {
    curve: String,
    degree: u32,
    exponents: Vec<u32>,
    classification: &'static str,
    level: Option<u32>,
    tau: u64,
}

#[derive(Serialize)]
struct LineDoc {
    engine: &'static str,
    direction: &'static str,
    line: String,
    r: u32,
    epsilon: i64,
    case: u8,
    predicted_case: u8,
    expected_exponents: Vec<u32>,
    r_formula_holds: bool,
    freeness_criterion_holds: bool,
    identities_checked: usize,
    identities_failed: usize,
    c: ProfileDoc,
    c_prime: ProfileDoc,
}

fn profile_doc(f: &HomogeneousPoly, c: &Classification, exps: &[u32], tau: u64) -> ProfileDoc {
    ProfileDoc {
        curve: f.to_string(),
        degree: f.degree(),
        exponents: exps.to_vec(),
        classification: c.label(),
        level: c.level(),
        tau,
    }
}

fn line_doc(rep: &AdditionDeletionReport) -> LineDoc {
    let p = &rep.pair;
    LineDoc {
        engine: VERSION,
        direction: match rep.direction {
            curvesyz::oracle::Direction::Addition => "addition",
            curvesyz::oracle::Direction::Deletion => "deletion",
        },
        line: p.ell.to_string(),
        r: p.r,
        epsilon: p.epsilon,
        case: rep.observed_case,
        predicted_case: rep.predicted_case,
        expected_exponents: rep.expected_exponents.clone(),
        r_formula_holds: rep.r_formula_holds,
        freeness_criterion_holds: rep.freeness_criterion_holds,
        identities_checked: rep.identity_checks.len(),
        identities_failed: rep.identity_checks.iter().filter(|c| !c.holds).count(),
        c: profile_doc(&p.f, &rep.profile_c.classification, &rep.profile_c.exponents, p.tau),
        c_prime: profile_doc(&p.f_union, &rep.profile_c_prime.classification, &rep.profile_c_prime.exponents, p.tau_union),
    }
}

const LINE_HEADER: &str = "direction,r,epsilon,case,predicted_case,c_exponents,c_classification,c_prime_exponents,c_prime_classification,identities_failed";

fn render_line(format: Format, d: &LineDoc) -> Out {
    match format {
        Format::Json => json(d),
        Format::Csv => Ok(format!(
            "{LINE_HEADER}\n{},{},{},{},{},{},{},{},{},{}\n",
            d.direction,
            d.r,
            d.epsilon,
            d.case,
            d.predicted_case,
            join(&d.c.exponents),
            d.c.classification,
            join(&d.c_prime.exponents),
            d.c_prime.classification,
            d.identities_failed
        )),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "direction       {}", d.direction);
            let _ = writeln!(s, "C               {}  [{}] {}", d.c.curve, join(&d.c.exponents), d.c.classification);
            let _ = writeln!(s, "C'              {}  [{}] {}", d.c_prime.curve, join(&d.c_prime.exponents), d.c_prime.classification);
            let _ = writeln!(s, "line            {}", d.line);
            let _ = writeln!(s, "r, epsilon      {}, {}", d.r, d.epsilon);
            let _ = writeln!(s, "case            {} (predicted {})", d.case, d.predicted_case);
            let _ = writeln!(s, "identities      {} checked, {} failed", d.identities_checked, d.identities_failed);
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct ScanRow {
    id: String,
    degree: u32,
    exponents: Vec<u32>,
    classification: String,
    tau: Option<u64>,
    nu: Option<u64>,
    sigma: Option<u32>,
    expected_exponents: Option<Vec<u32>>,
    expected_classification: Option<&'static str>,
    certificate: Option<Certificate>,
    pass: bool,
    error: Option<String>,
}

fn scan_row(cli: &Cli, c: &NamedCurve) -> ScanRow {
    let mut row = ScanRow {
        id: c.id.clone(),
        degree: c.f.degree(),
        exponents: Vec::new(),
        classification: String::new(),
        tau: None,
        nu: None,
        sigma: None,
        expected_exponents: c.expected.exponents.clone(),
        expected_classification: c.expected.classification,
        certificate: None,
        pass: false,
        error: None,
    };
    match analyze(&c.f, cli.bound, cli.kmax) {
        Ok((p, t)) => {
            fill(&mut row, &p, &t);
            row.pass = c.expected.exponents.as_ref().is_none_or(|e| *e == p.generator_degrees)
                && c.expected.classification.is_none_or(|l| l == p.classification.label())
                && c.expected.tau.is_none_or(|tau| tau == t.tau_total);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

fn fill(row: &mut ScanRow, p: &SyzygyProfile, t: &JacobianTable) {
    row.exponents = p.generator_degrees.clone();
    row.classification = p.classification.label().into();
    row.tau = Some(t.tau_total);
    row.nu = Some(t.nu);
    row.sigma = t.sigma;
    row.certificate = Some(p.certificate.clone());
}

fn scan(cli: &Cli, family: &str, from: Option<u32>, to: Option<u32>, abc: &[i64]) -> Out {
    let range = |lo: u32, hi: u32| from.unwrap_or(lo)..=to.unwrap_or(hi);
    let int = |v: i64| Scalar::from_integer(v.into());
    let curves: Vec<NamedCurve> = match family {
        "cm" => range(3, 6).map(|m| families::conic_line_family(m, None)).collect::<Result<_, _>>()?,
        "rkc" if abc.len() != 3 => {
            return Err(Failure { code: 1, msg: "--abc takes three integers a,b,c".into() });
        }
        "rkc" => range(5, 7)
            .map(|d| families::free_rkc_family(d, &int(abc[0]), &int(abc[1]), &int(abc[2])))
            .collect::<Result<_, _>>()?,
        "cusp" => range(2, 4).map(families::cuspidal_family).collect::<Result<_, _>>()?,
        "gallery" => families::example_gallery(),
        other => return Err(Failure { code: 6, msg: format!("unknown family `{other}` (cm, rkc, cusp, gallery)") }),
    };
    let rows: Vec<ScanRow> = curves.par_iter().map(|c| scan_row(cli, c)).collect();
    match cli.format {
        Format::Json => json(&ScanDoc { engine: VERSION, family, rows: &rows }),
        Format::Csv | Format::Table => {
            let sep = if cli.format == Format::Csv { "," } else { "\t" };
            let mut s = ["id", "degree", "exponents", "classification", "tau", "nu", "sigma", "expected", "pass"].join(sep);
            s.push('\n');
            for r in &rows {
                let expected = format!(
                    "{} {}",
                    r.expected_classification.unwrap_or(""),
                    r.expected_exponents.as_deref().map(join).unwrap_or_default()
                );
                let fields = [
                    r.id.clone(),
                    r.degree.to_string(),
                    join(&r.exponents),
                    r.error.clone().unwrap_or_else(|| r.classification.clone()),
                    opt(r.tau),
                    opt(r.nu),
                    opt(r.sigma),
                    expected.trim().to_string(),
                    if r.pass { "pass" } else { "fail" }.to_string(),
                ];
                s.push_str(&fields.join(sep));
                s.push('\n');
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct ConjDoc<'a> {
    engine: &'static str,
    #[serde(flatten)]
    report: &'a ConjectureReport,
}

#[derive(Serialize)]
struct ScanDoc<'a> {
    engine: &'static str,
    family: &'a str,
    rows: &'a [ScanRow],
}

fn render_conjectures(format: Format, r: &ConjectureReport) -> Out {
    match format {
        Format::Json => json(&ConjDoc { engine: VERSION, report: r }),
        Format::Csv | Format::Table => {
            let sep = if format == Format::Csv { "," } else { "\t" };
            let mut s = ["group", "checked", "conj1_violations", "conj2_violations", "skipped"].join(sep);
            s.push('\n');
            for (g, c) in [("corpus", &r.corpus), ("irreducible", &r.irreducible), ("reducible", &r.reducible)] {
                let f = [g.to_string(), c.checked.to_string(), c.conj1_violations.to_string(), c.conj2_violations.to_string(), c.skipped.to_string()];
                s.push_str(&f.join(sep));
                s.push('\n');
            }
            Ok(s)
        }
    }
}
