use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use loopstar::checks::{self, CheckResult};
use loopstar::coeff::{ClosedForm, CoeffTable, CrossingType, GroupKind, GroupSpec, Series, DEFAULT_ORDER};
use loopstar::diagram::{parse_diagram, Diagram, FormalSum, Monomial};
use loopstar::goldman::{bracket_poly, BracketForm, Sl2Form};
use loopstar::holonomy::HolonomyAssignment;
use loopstar::star::{self, Stacked};

#[derive(Parser, Debug)]
#[command(
    name = "loopstar",
    version,
    about = "Poisson bracket and star product of Wilson loops on curve diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
struct Opts {
    #[arg(long, global = true, default_value = "su2", value_parser = parse_group)]
    group: GroupKind,
    /// Matrix size for gln and un.
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    /// Truncation order in h.
    #[arg(long, global = true, env = "LOOPSTAR_ORDER", default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Print floating-point values at this coupling instead of series.
    #[arg(long, global = true)]
    eval_beta: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bracket of the curves on the top level with all other curves.
    Bracket {
        file: PathBuf,
        #[arg(long, value_enum)]
        form: Option<FormArg>,
    },
    /// Star product: curves on the top level times all other curves.
    Star {
        file: PathBuf,
        #[arg(long)]
        assignment: Option<PathBuf>,
    },
    /// Expectation of the whole stacked diagram.
    Expect {
        file: PathBuf,
        #[arg(long)]
        assignment: Option<PathBuf>,
    },
    /// Property checks.
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
    /// Crossing coefficient table.
    Coeffs {
        #[arg(long = "type", value_enum, default_value_t = TypeArg::Over)]
        ty: TypeArg,
    },
    /// Write a random holonomy assignment for a diagram as JSON.
    Sample { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Associativity: the three highest levels of a diagram, or random triples.
    Assoc { file: Option<PathBuf> },
    /// First-order limit of the star product: a diagram, or random ones.
    Poisson { file: Option<PathBuf> },
    /// Every property suite.
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormArg {
    Alt,
    Reversal,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TypeArg {
    Over,
    Under,
}

fn parse_group(s: &str) -> Result<GroupKind, String> {
    s.parse()
        .map_err(|_| format!("unknown group `{s}` (su2, sl2r, sl2c, gln, un)"))
}

/// Failures that exit with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn group(opts: &Opts) -> anyhow::Result<GroupSpec> {
    let n = if opts.group.is_rank_two() { 2 } else { opts.n };
    if opts.group.is_rank_two() && opts.n != 2 {
        bail!(Usage(format!("--n {} does not apply to {}", opts.n, opts.group.name())));
    }
    GroupSpec::new(opts.group, n).map_err(|e| Usage(e.to_string()).into())
}

fn load(path: &Path) -> anyhow::Result<Diagram> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let d = parse_diagram(&text).with_context(|| path.display().to_string())?;
    d.validate()
        .map_err(loopstar::Error::Invalid)
        .with_context(|| path.display().to_string())?;
    Ok(d)
}

/// Top level, then everything below it as one factor.
fn split_levels(d: &Diagram, order: usize) -> anyhow::Result<(FormalSum, FormalSum)> {
    let levels = d.levels();
    if levels.len() < 2 {
        bail!("need curves on at least two levels, found {}", levels.len());
    }
    let top = FormalSum::term(d.monomial_at_level(levels[0]), Series::one(order));
    let rest = Monomial::new(
        levels[1..]
            .iter()
            .flat_map(|&l| d.monomial_at_level(l).loops().to_vec())
            .collect(),
    );
    Ok((top, FormalSum::term(rest, Series::one(order))))
}

fn print_series(d: &Diagram, s: &FormalSum, format: Format) {
    match format {
        Format::Json => println!("{}", s.to_json_string(d)),
        Format::Text => print!("{}", s.render(d, |c| c.to_string())),
    }
}

fn print_numeric(d: &Diagram, s: &FormalSum<f64>, format: Format) -> anyhow::Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&s.to_json(d))?),
        Format::Text => print!("{}", s.render(d, |c| format!("{c:.12}"))),
    }
    Ok(())
}

fn print_value(path: &Path, d: &Diagram, s: &FormalSum<f64>, beta: f64, g: &GroupSpec) -> anyhow::Result<()> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let a = HolonomyAssignment::from_json(d, &text)?;
    if a.group() != g {
        bail!("assignment is for {}, not {}", a.group().label(), g.label());
    }
    let v = a.eval_formal(s, beta)?;
    println!("value: {:.12} {:+.12}i", v.re, v.im);
    Ok(())
}

fn report(results: &[CheckResult]) -> bool {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for r in results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("{status}  {:<width$}  {}", r.name, r.detail);
    }
    results.iter().all(|r| r.passed)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let opts = &cli.opts;
    let k = opts.order;
    match cli.command {
        Command::Coeffs { ty } => {
            let g = group(opts)?;
            let ty = match ty {
                TypeArg::Over => CrossingType::Over,
                TypeArg::Under => CrossingType::Under,
            };
            let table = CoeffTable::new(&g, ty, k)?;
            let closed = opts.eval_beta.map(|b| ClosedForm::new(g, ty).eval(b));
            match opts.format {
                Format::Json => {
                    let mut v = serde_json::to_value(&table)?;
                    if let (Some(beta), Some((cv, cs))) = (opts.eval_beta, closed) {
                        v["eval_beta"] = beta.into();
                        v["closed_form"] = serde_json::json!({"virtual": cv, "smooth": cs});
                    }
                    println!("{}", serde_json::to_string_pretty(&v)?);
                }
                Format::Text => {
                    let c = table.coeffs()?;
                    println!("group    {}", table.group);
                    println!("type     {}", ty.name());
                    println!("virtual  {}", c.c_virtual);
                    println!("smooth   {}", c.c_smooth);
                    if let (Some(beta), Some((cv, cs))) = (opts.eval_beta, closed) {
                        println!("at beta = {beta}: virtual {cv:.15}, smooth {cs:.15}");
                    }
                }
            }
        }
        Command::Bracket { file, form } => {
            let g = group(opts)?;
            let d = load(&file)?;
            let (f, h) = split_levels(&d, k)?;
            let form = match form {
                None => BracketForm::default_for(&g),
                Some(_) if !g.kind.is_rank_two() => {
                    bail!(Usage("--form applies to su2, sl2r and sl2c only".into()))
                }
                Some(FormArg::Alt) => BracketForm::Sl2(Sl2Form::Alt),
                Some(FormArg::Reversal) => BracketForm::Sl2(Sl2Form::Reversal),
            };
            let b = bracket_poly(&d, &f, &h, form)?;
            match opts.eval_beta {
                Some(beta) => print_numeric(&d, &star::to_numeric(&b, beta), opts.format)?,
                None => print_series(&d, &b, opts.format),
            }
        }
        Command::Star { file, assignment } => {
            let g = group(opts)?;
            let d = load(&file)?;
            let (f, h) = split_levels(&d, k)?;
            match opts.eval_beta {
                Some(beta) => {
                    let s = star::star_numeric(&d, &star::to_numeric(&f, beta), &star::to_numeric(&h, beta), &g, beta)?;
                    print_numeric(&d, &s, opts.format)?;
                    if let Some(p) = assignment {
                        print_value(&p, &d, &s, beta, &g)?;
                    }
                }
                None => {
                    if assignment.is_some() {
                        bail!(Usage("--assignment needs --eval-beta".into()));
                    }
                    print_series(&d, &star::star(&d, &f, &h, &g, k)?, opts.format);
                }
            }
        }
        Command::Expect { file, assignment } => {
            let g = group(opts)?;
            let d = load(&file)?;
            let st = Stacked::from_diagram(&d);
            match opts.eval_beta {
                Some(beta) => {
                    let s = star::expect_numeric(&d, &st, &g, beta)?;
                    print_numeric(&d, &s, opts.format)?;
                    if let Some(p) = assignment {
                        print_value(&p, &d, &s, beta, &g)?;
                    }
                }
                None => {
                    if assignment.is_some() {
                        bail!(Usage("--assignment needs --eval-beta".into()));
                    }
                    print_series(&d, &star::expect(&d, &st, &g, k)?, opts.format);
                }
            }
        }
        Command::Sample { file } => {
            let g = group(opts)?;
            let d = load(&file)?;
            let a = HolonomyAssignment::random(&d, g, &mut checks::rng(opts.seed));
            println!("{}", a.to_json(&d));
        }
        Command::Check { which } => return check(which, opts),
    }
    Ok(true)
}

fn check(which: CheckCommand, opts: &Opts) -> anyhow::Result<bool> {
    let seed = opts.seed;
    match which {
        CheckCommand::All => Ok(report(&checks::run_all(seed))),
        CheckCommand::Poisson { file: None } => Ok(report(&[checks::poisson(seed)])),
        CheckCommand::Assoc { file: None } => Ok(report(&[checks::assoc(seed)])),
        CheckCommand::Poisson { file: Some(p) } => {
            let g = group(opts)?;
            let d = load(&p)?;
            let (f, h) = split_levels(&d, 1)?;
            let res = star::poisson_limit_check(&d, &f, &h, &g)?;
            let ok = res.is_zero();
            if !ok {
                print_series(&d, &res, opts.format);
            }
            println!("{}  poisson  {}", if ok { "PASS" } else { "FAIL" }, g.label());
            Ok(ok)
        }
        CheckCommand::Assoc { file: Some(p) } => {
            let g = group(opts)?;
            let d = load(&p)?;
            let levels = d.levels();
            if levels.len() < 3 {
                bail!("need curves on at least three levels, found {}", levels.len());
            }
            let k = opts.order;
            let layer = |l: i64| FormalSum::term(d.monomial_at_level(l), Series::one(k));
            let rest = Monomial::new(
                levels[2..]
                    .iter()
                    .flat_map(|&l| d.monomial_at_level(l).loops().to_vec())
                    .collect(),
            );
            let (u, v, w) = (
                layer(levels[0]),
                layer(levels[1]),
                FormalSum::term(rest, Series::one(k)),
            );
            let a = HolonomyAssignment::random(&d, g, &mut checks::rng(seed));
            let betas = match opts.eval_beta {
                Some(b) => vec![b],
                None => checks::ASSOC_BETAS.to_vec(),
            };
            let rep = star::assoc_check(&d, &u, &v, &w, &g, k, &betas, &a)?;
            let ok = rep.is_exact() && rep.numeric_max() < 1e-9;
            if !rep.symbolic.is_zero() {
                print_series(&d, &rep.symbolic, opts.format);
            }
            let status = if ok { "PASS" } else { "FAIL" };
            println!(
                "{status}  assoc  {}  symbolic {}  three-level {}  numeric {:.2e}",
                g.label(),
                if rep.symbolic.is_zero() { "zero" } else { "nonzero" },
                if rep.three_level.is_zero() { "zero" } else { "nonzero" },
                rep.numeric_max()
            );
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
