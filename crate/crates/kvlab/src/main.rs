use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kvlab::io::{load_semigroup, resolve_mu, resolve_tau, CharacterFile, MorphismFile, Selector};
use kvlab::report::format_function;
use kvlab::{corpus, run_verification_sweep, Error, Z0Choice};
use kvlab_core::families::enumerate_classified;
use kvlab_core::morphism::all_involutive_morphisms;
use kvlab_core::oracle::solve_all;
use kvlab_core::{admissible_mus, enumerate_characters, Family, OracleResult, Semigroup, Setting, DEFAULT_TOL};
use serde_json::json;

#[derive(Parser)]
#[command(name = "kvlab", version, about = "Kannappan and Van Vleck equations on finite semigroups")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Md, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a table is a semigroup
    Validate(SemigroupArg),
    /// Identity, center and element profiles
    Analyze(SemigroupArg),
    /// Involutive automorphisms and anti-automorphisms, by index
    Involutions(SemigroupArg),
    /// Multiplicative functions, or the admissible mu for a given tau
    Characters {
        #[command(flatten)]
        semigroup: SemigroupArg,
        /// List the admissible mu for this tau instead
        #[arg(long)]
        tau: Option<Selector>,
    },
    /// Closed-form solutions
    Solve(InstanceArgs),
    /// Solutions found by linearization at every base point
    Oracle(InstanceArgs),
    /// Compare closed forms with the oracle and check the identity suites
    Verify(InstanceArgs),
    /// Bundled semigroups
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
}

#[derive(Args)]
struct SemigroupArg {
    /// File path or corpus:NAME
    #[arg(long)]
    semigroup: String,
}

#[derive(Args)]
struct InstanceArgs {
    #[command(flatten)]
    semigroup: SemigroupArg,
    #[arg(long, value_parser = parse_family)]
    equation: Family,
    /// Index into the involutions listing, or a morphism file
    #[arg(long, default_value = "0")]
    tau: Selector,
    /// Index into the admissible mu for tau, or a character file
    #[arg(long, default_value = "0")]
    mu: Selector,
    /// Central element or "all" (the default for equations with z0)
    #[arg(long)]
    z0: Option<Z0Choice>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

/// Exit statuses: success, finding, input error.
const OK: u8 = 0;
const FINDING: u8 = 1;
const INPUT_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn emit(format: Format, value: serde_json::Value, md: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
        Format::Md => print!("{md}"),
    }
}

fn run(cli: &Cli) -> kvlab::Result<u8> {
    let format = cli.format;
    match &cli.command {
        Command::Validate(a) => {
            let s = load_semigroup(&a.semigroup)?;
            emit(
                format,
                json!({ "name": s.name(), "order": s.order(), "valid": true }),
                format!("{}: valid semigroup of order {}\n", s.name(), s.order()),
            );
            Ok(OK)
        }
        Command::Analyze(a) => {
            let s = load_semigroup(&a.semigroup)?;
            analyze(format, &s);
            Ok(OK)
        }
        Command::Involutions(a) => {
            let s = load_semigroup(&a.semigroup)?;
            let all = all_involutive_morphisms(&s)?;
            let rows: Vec<MorphismFile> = all.iter().map(MorphismFile::from).collect();
            let mut md = String::from("| index | kind | map | admissible mu |\n|---|---|---|---|\n");
            for (i, t) in all.iter().enumerate() {
                md += &format!("| {i} | {} | {:?} | {} |\n", t.kind, t.map, admissible_mus(&s, t).len());
            }
            emit(format, json!(rows), md);
            Ok(OK)
        }
        Command::Characters { semigroup, tau } => {
            let s = load_semigroup(&semigroup.semigroup)?;
            let chars = match tau {
                Some(sel) => admissible_mus(&s, &resolve_tau(&s, sel)?.0),
                None => enumerate_characters(&s),
            };
            let files: Vec<CharacterFile> = chars.iter().map(CharacterFile::from).collect();
            let mut md = String::from("| index | values |\n|---|---|\n");
            for (i, c) in chars.iter().enumerate() {
                let f = kvlab_core::ComplexFunction::new(c.to_complex())?;
                md += &format!("| {i} | {} |\n", format_function(&f));
            }
            emit(format, json!(files), md);
            Ok(OK)
        }
        Command::Solve(a) => solve(format, a),
        Command::Oracle(a) => oracle(format, a),
        Command::Verify(a) => verify(format, a),
        Command::Corpus { action: CorpusAction::List } => {
            let entries = corpus::all();
            let rows: Vec<_> = entries
                .iter()
                .map(|e| json!({ "name": e.name, "order": e.semigroup.order(), "notes": e.notes }))
                .collect();
            let mut md = String::from("| name | order | abelian | monoid | center |\n|---|---|---|---|---|\n");
            for e in &entries {
                md += &format!(
                    "| {} | {} | {} | {} | {} |\n",
                    e.name,
                    e.semigroup.order(),
                    e.notes.abelian,
                    e.notes.monoid,
                    e.notes.center_size
                );
            }
            emit(format, json!(rows), md);
            Ok(OK)
        }
    }
}

fn analyze(format: Format, s: &Semigroup) {
    let center = s.center();
    let profiles = s.profiles();
    let value = json!({
        "name": s.name(),
        "order": s.order(),
        "abelian": s.is_abelian(),
        "identity": s.find_identity(),
        "center": center.elements,
        "period_lcm": s.period_lcm(),
        "profiles": profiles.iter().map(|p| json!({"element": p.element, "index": p.index_k, "period": p.period_r})).collect::<Vec<_>>(),
    });
    let mut md = format!(
        "## {}\n\norder {}, abelian {}, identity {}, center {:?}, period lcm {}\n\n| x | index | period |\n|---|---|---|\n",
        s.name(),
        s.order(),
        s.is_abelian(),
        s.find_identity().map_or("none".to_string(), |e| e.to_string()),
        center.elements,
        s.period_lcm(),
    );
    for p in &profiles {
        md += &format!("| {} | {} | {} |\n", p.element, p.index_k, p.period_r);
    }
    emit(format, value, md);
}

struct Resolved {
    st: Setting,
    tau_index: Option<usize>,
    mu_index: Option<usize>,
}

fn resolve(a: &InstanceArgs) -> kvlab::Result<Resolved> {
    let s = load_semigroup(&a.semigroup.semigroup)?;
    let (tau, tau_index) = resolve_tau(&s, &a.tau)?;
    let (mu, mu_index) = resolve_mu(&s, &tau, &a.mu)?;
    Ok(Resolved { st: Setting::new(s, tau, mu)?, tau_index, mu_index })
}

/// The `z0` values to run, `None` standing for "no z0".
fn z0_points(st: &Setting, family: Family, choice: Option<Z0Choice>) -> kvlab::Result<Vec<Option<usize>>> {
    if !family.spec().uses_z0 {
        return match choice {
            None => Ok(vec![None]),
            Some(_) => Err(kvlab_core::Error::UnexpectedZ0.into()),
        };
    }
    match choice.unwrap_or(Z0Choice::All) {
        Z0Choice::Element(z) => Ok(vec![Some(z)]),
        Z0Choice::All => {
            let center = st.semigroup().center();
            if center.is_empty() {
                return Err(Error::EmptyCenter(st.semigroup().name().to_string()));
            }
            Ok(center.elements.into_iter().map(Some).collect())
        }
    }
}

fn solve(format: Format, a: &InstanceArgs) -> kvlab::Result<u8> {
    let r = resolve(a)?;
    let mut values = Vec::new();
    let mut md = String::new();
    let mut code = OK;
    for z0 in z0_points(&r.st, a.equation, a.z0)? {
        let z0 = z0.expect("shifted family");
        md += &format!("## {} on {}, z0 = {z0}\n\n", a.equation, r.st.semigroup().name());
        match enumerate_classified(&r.st, a.equation, z0, a.tol) {
            Ok(sols) => {
                md += "| # | f | source |\n|---|---|---|\n";
                for (k, c) in sols.iter().enumerate() {
                    md += &format!("| {k} | {} | {:?} |\n", format_function(&c.f), c.provenance);
                }
                md += "\n";
                values.push(json!({ "z0": z0, "solutions": sols }));
            }
            Err(e @ kvlab_core::Error::ResidualCheckFailed { .. }) => {
                md += &format!("constructor failure: {e}\n\n");
                values.push(json!({ "z0": z0, "error": e.to_string() }));
                code = FINDING;
            }
            Err(e) => return Err(e.into()),
        }
    }
    emit(format, json!(values), md);
    Ok(code)
}

fn oracle_markdown(r: &OracleResult, name: &str) -> String {
    let z0 = r.z0.map_or("-".to_string(), |z| z.to_string());
    let mut md = format!("## oracle: {} on {name}, z0 = {z0}\n\ncompleteness: {}\n\n", r.family, r.completeness);
    md += "| # | f |\n|---|---|\n";
    for (k, f) in r.solutions.iter().enumerate() {
        md += &format!("| {k} | {} |\n", format_function(f));
    }
    md += "\n| w | eigenvalue | dim | search | found |\n|---|---|---|---|---|\n";
    for d in &r.diagnostics {
        md += &format!(
            "| {} | {:.6}{:+.6}i | {} | {:?} | {} |\n",
            d.w, d.value.re, d.value.im, d.dim, d.search, d.found
        );
    }
    md + "\n"
}

fn oracle(format: Format, a: &InstanceArgs) -> kvlab::Result<u8> {
    let r = resolve(a)?;
    let mut results = Vec::new();
    let mut md = String::new();
    for z0 in z0_points(&r.st, a.equation, a.z0)? {
        let res = solve_all(&r.st.equation(a.equation, z0)?, a.tol)?;
        md += &oracle_markdown(&res, r.st.semigroup().name());
        results.push(res);
    }
    emit(format, json!(results), md);
    Ok(OK)
}

fn verify(format: Format, a: &InstanceArgs) -> kvlab::Result<u8> {
    let r = resolve(a)?;
    let choice = a.z0.unwrap_or(Z0Choice::All);
    let reports = run_verification_sweep(&r.st, r.tau_index, r.mu_index, a.equation, choice, a.tol)?;
    let md: String = reports.iter().map(|rep| rep.to_markdown() + "\n").collect();
    emit(format, json!(reports), md);
    Ok(if reports.iter().any(|rep| rep.is_finding()) { FINDING } else { OK })
}
