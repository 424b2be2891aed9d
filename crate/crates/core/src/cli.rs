//! Command-line front end: argument parsing, input loading and output
//! rendering. The binary only forwards to [`main_with_args`].

use crate::moments::{averaged_module_moment_check, invariant_moment_check, moments_of, AtomicMeasure, AveragedCaps, MeasureJson, MomentReport};
use crate::orbitspace::{
    elementary_symmetric_description, invariant_generators, minor_sos_certificates, orbit_image_description,
    principal_minors_in_generators, procesi_schwarz_matrix, Ambient, InvariantGenerators, ModuleFlavor, QuadraticModuleDesc,
};
use crate::poly::{Poly, VarNames};
use crate::scenario::{list_scenarios, registry, run_scenario, RunContext, RunReport};
use crate::schema::{emit_schema, schema, SCHEMA_NAMES};
use crate::sosgram::{equivariant_sos_decompose, sos_certificate, PsdOptions, SosCertificate};
use crate::symmetry::{is_invariant, reynolds, GroupAction, GroupJson};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

#[derive(Debug, Parser)]
#[command(name = "equisos", version, about = "Exact invariant sums of squares, orbit spaces and moment checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Seed for every randomized stage.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock budget for numeric searches.
    #[arg(long, global = true)]
    pub budget_ms: Option<u64>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reynolds average of a polynomial.
    Reynolds {
        #[arg(long)]
        group: PathBuf,
        /// Polynomial file (JSON or text) or inline text.
        #[arg(long)]
        poly: String,
    },
    /// Invariant generators up to degree |G|.
    Invariants {
        #[arg(long)]
        group: PathBuf,
    },
    /// Procesi-Schwarz matrix, principal minors with certificates and the orbit-space description.
    Orbitspace {
        #[arg(long)]
        group: PathBuf,
        /// Invariant generators to use instead of computing them.
        #[arg(long)]
        gens: Option<PathBuf>,
    },
    /// Elementary symmetric functions of the orbits of each inequality.
    InvariantSet {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        ineqs: PathBuf,
    },
    /// Exact sum-of-squares certificate.
    Sos {
        #[arg(long)]
        poly: String,
        /// Half-degree of the basis; defaults to ceil(deg f / 2).
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        group: Option<PathBuf>,
        /// Block-diagonalize by isotypic components and label every square.
        #[arg(long, requires = "group")]
        equivariant: bool,
    },
    Moments {
        #[command(subcommand)]
        action: MomentsCommand,
    },
    Scenario {
        #[command(subcommand)]
        action: ScenarioCommand,
    },
    /// JSON schemas of the file formats.
    Schema {
        /// One of: certificate, group, measure, module, moment_report, poly, poly_list, run_report.
        name: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MomentsCommand {
    /// Hankel and localizing checks of an invariant measure against a module.
    Check {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        degree: u32,
        /// Invariant generators (only for modules in the generator ring).
        #[arg(long)]
        gens: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScenarioCommand {
    /// Run one scenario, or all of them with --all.
    Run {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
    },
    List,
}

/// What a subcommand produced.
struct Output {
    json: Value,
    text: String,
    pass: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, pass: true }
    }
}

/// Parses `args` (including the program name), runs, and returns the exit
/// code: 0 when everything passed, 1 on failed checks, 2 on errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

pub fn run(cli: &Cli) -> Result<bool> {
    let g = &cli.global;
    let out = dispatch(&cli.command, g)?;
    let rendered = match g.format {
        Format::Json => serde_json::to_string_pretty(&out.json)? + "\n",
        Format::Text => out.text,
    };
    match &g.out {
        Some(p) => std::fs::write(p, rendered).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{rendered}"),
    }
    Ok(out.pass)
}

fn deadline(g: &GlobalOpts) -> Option<Instant> {
    g.budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms))
}

fn psd_options(g: &GlobalOpts) -> PsdOptions {
    PsdOptions { seed: g.seed, deadline: deadline(g), ..Default::default() }
}

fn dispatch(cmd: &Command, g: &GlobalOpts) -> Result<Output> {
    match cmd {
        Command::Reynolds { group, poly } => cmd_reynolds(&load_group(group)?, poly),
        Command::Invariants { group } => cmd_invariants(&load_group(group)?),
        Command::Orbitspace { group, gens } => cmd_orbitspace(&load_group(group)?, gens.as_deref()),
        Command::InvariantSet { group, ineqs } => cmd_invariant_set(&load_group(group)?, ineqs),
        Command::Sos { poly, degree, group, equivariant } => {
            let group = group.as_deref().map(load_group).transpose()?;
            cmd_sos(poly, *degree, group.as_ref(), *equivariant, g)
        }
        Command::Moments { action: MomentsCommand::Check { group, measure, module, degree, gens } } => {
            cmd_moments(&load_group(group)?, measure, module, *degree, gens.as_deref())
        }
        Command::Scenario { action: ScenarioCommand::List } => Ok(cmd_list()),
        Command::Scenario { action: ScenarioCommand::Run { name, all, timing } } => {
            let ctx = RunContext { seed: g.seed, deadline: deadline(g), timing: *timing };
            let names: Vec<String> = match (name, all) {
                (_, true) => list_scenarios().into_iter().map(String::from).collect(),
                (Some(n), false) => vec![n.clone()],
                (None, false) => bail!("give a scenario name or --all"),
            };
            let mut reports = Vec::new();
            for n in &names {
                let mut r = run_scenario(n, &ctx)?;
                if let Some(p) = &g.out {
                    r.artifacts.push(p.display().to_string());
                }
                reports.push(r);
            }
            Ok(scenario_output(reports, *all))
        }
        Command::Schema { name } => match name {
            None => Ok(Output::ok(emit_schema(), serde_json::to_string_pretty(&emit_schema())? + "\n")),
            Some(n) => {
                let v = schema(n).ok_or_else(|| anyhow!("unknown schema {n:?}; available: {}", SCHEMA_NAMES.join(", ")))?;
                let text = serde_json::to_string_pretty(&v)? + "\n";
                Ok(Output::ok(v, text))
            }
        },
    }
}

fn scenario_output(reports: Vec<RunReport>, many: bool) -> Output {
    let pass = reports.iter().all(|r| r.pass);
    let text: String = reports.iter().map(RunReport::to_text).collect();
    let json = if many {
        json!({"pass": pass, "reports": reports})
    } else {
        serde_json::to_value(&reports[0]).expect("report serializes")
    };
    Output { json, text, pass }
}

fn cmd_list() -> Output {
    let items: Vec<Value> = registry().iter().map(|s| json!({"name": s.name, "summary": s.summary})).collect();
    let text = registry().iter().map(|s| format!("{:<24}{}\n", s.name, s.summary)).collect();
    Output::ok(Value::Array(items), text)
}

fn show(p: &Poly) -> String {
    p.display(&VarNames::x(p.nvars())).to_string()
}

fn show_u(p: &Poly) -> String {
    p.display(&VarNames::u(p.nvars())).to_string()
}

fn cmd_reynolds(group: &GroupAction, poly: &str) -> Result<Output> {
    let f = load_poly(poly, Some(group.nvars()))?;
    let r = reynolds(&f, group)?;
    let inv = is_invariant(&f, group)?;
    let json = json!({"poly": f, "reynolds": r, "reynolds_text": show(&r), "input_invariant": inv});
    Ok(Output::ok(json, format!("{}\n", show(&r))))
}

fn gens_json(gens: &InvariantGenerators) -> Value {
    json!({
        "generators": gens.gens,
        "text": gens.gens.iter().map(show).collect::<Vec<_>>(),
        "degrees": gens.degrees,
        "minimal": gens.minimal,
    })
}

fn cmd_invariants(group: &GroupAction) -> Result<Output> {
    let gens = invariant_generators(group)?;
    let text = gens.gens.iter().zip(&gens.degrees).enumerate().map(|(i, (p, d))| format!("u{} = {}  (degree {d})\n", i + 1, show(p))).collect();
    Ok(Output::ok(gens_json(&gens), text))
}

fn cmd_orbitspace(group: &GroupAction, gens: Option<&Path>) -> Result<Output> {
    let gens = match gens {
        Some(p) => InvariantGenerators::from_polys(load_poly_list(p, VarNames::x(group.nvars()))?, group)?,
        None => invariant_generators(group)?,
    };
    let ps = procesi_schwarz_matrix(&gens, group)?;
    let desc = orbit_image_description(&ps)?;
    let minors_u = principal_minors_in_generators(&ps).unwrap_or_default();
    let certs = minor_sos_certificates(&ps);
    let minors: Vec<Value> = certs
        .iter()
        .map(|(idx, c)| {
            let in_u = minors_u.iter().find(|(i, _)| i == idx).map(|(_, p)| show_u(p));
            json!({"indices": idx, "minor": c.target, "minor_text": show(&c.target), "in_generators": in_u, "certificate": c.to_json()})
        })
        .collect();
    let m_text = ps.m_in_generators.as_ref().map(|m| m.iter().map(|r| r.iter().map(show_u).collect::<Vec<_>>()).collect::<Vec<_>>());
    let ineq_text: Vec<String> = desc.inequalities.iter().map(show_u).collect();
    let json = json!({
        "generators": gens_json(&gens),
        "m": ps.m,
        "m_in_generators": ps.m_in_generators,
        "m_text": m_text,
        "minors": minors,
        "description": {"ambient": desc.ambient, "inequalities": desc.inequalities, "text": ineq_text},
    });
    let mut text = String::new();
    for (i, p) in gens.gens.iter().enumerate() {
        text.push_str(&format!("u{} = {}\n", i + 1, show(p)));
    }
    if let Some(m) = &m_text {
        text.push_str(&format!("M = {m:?}\n"));
    }
    text.push_str(&format!("image: {{ {} >= 0 }}\n", ineq_text.join(", ")));
    Ok(Output::ok(json, text))
}

fn cmd_invariant_set(group: &GroupAction, ineqs: &Path) -> Result<Output> {
    let fs = load_poly_list(ineqs, VarNames::x(group.nvars()))?;
    let es = elementary_symmetric_description(&fs, group)?;
    let text_rows: Vec<Vec<String>> = es.s.iter().map(|r| r.iter().map(show).collect()).collect();
    let text = text_rows.iter().enumerate().map(|(i, r)| format!("f{}: {}\n", i + 1, r.join(", "))).collect();
    Ok(Output::ok(json!({"s": es.s, "text": text_rows}), text))
}

fn cmd_sos(poly: &str, degree: Option<u32>, group: Option<&GroupAction>, equivariant: bool, g: &GlobalOpts) -> Result<Output> {
    let f = load_poly(poly, group.map(GroupAction::nvars))?;
    let d = match degree {
        Some(d) => d,
        None => (f.degree().ok_or_else(|| anyhow!("zero polynomial has no degree"))?.max(0) as u32).div_ceil(2),
    };
    let opts = psd_options(g);
    let cert: SosCertificate = match (group, equivariant) {
        (Some(gr), true) => equivariant_sos_decompose(&f, gr, d, &opts)?,
        _ => sos_certificate(&f, d, &opts)?,
    };
    let mut text = String::new();
    for (k, (c, q)) in cert.squares.iter().enumerate() {
        let label = cert.annotations.as_ref().map(|a| format!("  [{}]", a[k].type_label)).unwrap_or_default();
        text.push_str(&format!("{} * ({})^2{label}\n", crate::rational::format_rational(c), show(q)));
    }
    text.push_str(&format!("residual_zero: {}\n", cert.residual_zero() && cert.verify()));
    let pass = cert.verify() && cert.residual_zero();
    Ok(Output { json: serde_json::to_value(cert.to_json())?, text, pass })
}

fn cmd_moments(group: &GroupAction, measure: &Path, module: &Path, d: u32, gens: Option<&Path>) -> Result<Output> {
    let mj: MeasureJson = read_json(measure)?;
    let mu = AtomicMeasure::try_from(&mj)?;
    let n = group.nvars();
    let mj: ModuleJson = read_json(module)?;
    let report: MomentReport = match mj.ambient {
        Ambient::W => {
            let gens = match gens {
                Some(p) => InvariantGenerators::from_polys(load_poly_list(p, VarNames::x(n))?, group)?,
                None => invariant_generators(group)?,
            };
            let module_n = module_from(mj, &VarNames::u(gens.len()), gens.len())?;
            let gdeg = gens.degrees.iter().copied().max().unwrap_or(1);
            let ndeg = module_n.generators.iter().filter_map(Poly::degree).max().unwrap_or(0).max(0) as u32;
            let l = moments_of(&mu, n, (2 * d + ndeg + 1) * gdeg)?;
            invariant_moment_check(&l, group, &gens, &module_n, d)?
        }
        Ambient::V => {
            let module_m = module_from(mj, &VarNames::x(n), n)?;
            let pdeg: u32 = module_m.generators.iter().filter_map(Poly::degree).map(|e| e.max(0) as u32).sum();
            let caps = AveragedCaps { module_degree: d, localizing_degree: d };
            let l = moments_of(&mu, n, 4 * d + pdeg)?;
            averaged_module_moment_check(&l, group, &module_m, caps)?
        }
    };
    let mut text = String::new();
    for c in &report.checks {
        let pivot = c.min_pivot.as_deref().unwrap_or("-");
        text.push_str(&format!(
            "{} {} [{}] size {} min pivot {} min eigenvalue {:.6}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.label,
            c.generator,
            c.size,
            pivot,
            c.min_eigenvalue
        ));
    }
    for s in &report.skipped {
        text.push_str(&format!("skipped {s}\n"));
    }
    text.push_str(if report.pass { "PASS\n" } else { "FAIL\n" });
    Ok(Output { json: serde_json::to_value(&report)?, text, pass: report.pass })
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&s).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_group(path: &Path) -> Result<GroupAction> {
    let gj: GroupJson = read_json(path)?;
    Ok(gj.build()?)
}

/// Largest `k` such that `x{k}` occurs in `s`.
fn max_x_index(s: &str) -> usize {
    let b = s.as_bytes();
    let mut best = 0;
    for (i, &c) in b.iter().enumerate() {
        if c == b'x' && (i == 0 || !b[i - 1].is_ascii_alphanumeric()) {
            let digits: String = s[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            if let Ok(k) = digits.parse::<usize>() {
                best = best.max(k);
            }
        }
    }
    best
}

fn parse_text(s: &str, nvars: Option<usize>) -> Result<Poly> {
    let n = nvars.unwrap_or_else(|| max_x_index(s).max(1));
    Poly::parse(s, &VarNames::x(n)).map_err(|e| anyhow!("{e}")).with_context(|| format!("parsing polynomial {s:?}"))
}

/// A polynomial from a file (JSON object, JSON string or text) or inline text.
pub fn load_poly(arg: &str, nvars: Option<usize>) -> Result<Poly> {
    let p = Path::new(arg);
    let f = if p.is_file() {
        let s = std::fs::read_to_string(p).with_context(|| format!("reading {arg}"))?;
        match serde_json::from_str::<PolyOrText>(&s) {
            Ok(v) => v.into_poly(&|t| parse_text(t, nvars))?,
            Err(_) => parse_text(s.trim(), nvars)?,
        }
    } else {
        parse_text(arg, nvars)?
    };
    if let Some(n) = nvars {
        if f.nvars() != n {
            bail!("polynomial has {} variables, the group acts on {n}", f.nvars());
        }
    }
    Ok(f)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolyOrText {
    Poly(Poly),
    Text(String),
}

impl PolyOrText {
    fn into_poly(self, text: &dyn Fn(&str) -> Result<Poly>) -> Result<Poly> {
        match self {
            PolyOrText::Poly(p) => Ok(p),
            PolyOrText::Text(s) => text(&s),
        }
    }
}

fn parse_with(names: &VarNames) -> impl Fn(&str) -> Result<Poly> + '_ {
    move |s| Poly::parse(s, names).map_err(|e| anyhow!("{e}")).with_context(|| format!("parsing polynomial {s:?}"))
}

pub fn load_poly_list(path: &Path, names: VarNames) -> Result<Vec<Poly>> {
    let items: Vec<PolyOrText> = read_json(path)?;
    let parse = parse_with(&names);
    items.into_iter().map(|i| i.into_poly(&parse)).collect()
}

#[derive(Deserialize)]
struct ModuleJson {
    generators: Vec<PolyOrText>,
    #[serde(default = "default_flavor")]
    flavor: ModuleFlavor,
    #[serde(default = "default_ambient")]
    ambient: Ambient,
}

fn default_flavor() -> ModuleFlavor {
    ModuleFlavor::QuadraticModule
}

fn default_ambient() -> Ambient {
    Ambient::W
}

fn module_from(mj: ModuleJson, names: &VarNames, nvars: usize) -> Result<QuadraticModuleDesc> {
    let parse = parse_with(names);
    let mut gens = Vec::with_capacity(mj.generators.len());
    for g in mj.generators {
        let p = g.into_poly(&parse)?;
        if p.nvars() != nvars {
            bail!("module generator has {} variables, expected {nvars}", p.nvars());
        }
        gens.push(p);
    }
    Ok(QuadraticModuleDesc::new(gens, mj.flavor, mj.ambient))
}
