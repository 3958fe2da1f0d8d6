//! Command-line front end. Every verb reads and writes plain files;
//! reports are canonical JSON under --json so outputs are byte-stable.
//!
//! Exit codes: 0 when the checked property holds (or the verb only
//! transforms data), 1 when a property fails (the witness goes to
//! standard output), 2 for unusable input or bad usage.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latdual_core::genlat::{boolean, chain, o_family, o_hat_family, random_lattice, rocket_family};
use latdual_core::io::{
    canonical_json, digraph_from_json, digraph_to_dot, dual_digraph_to_json,
    failure_classification_to_value, lattice_from_json, lattice_to_dot, lattice_to_json,
    sd_report_to_value, tirs_report_to_value,
};
use latdual_core::semidist::{
    jsd_bruteforce, jsd_dual, jsd_forbidden, msd_bruteforce, msd_dual, msd_forbidden,
    sd_bruteforce, sd_dual, sd_forbidden,
};
use latdual_core::tirs::Digraph;
use latdual_core::{
    check_first_roundtrip, check_second_roundtrip, check_tirs, classify_jsd_failure, dual_digraph,
    find_sublattice_embedding, fixture, is_distributive, mpm_lattice, Error, Lattice, Mdfip,
    SdReport, SdWitness,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "latdual", version, about = "Finite lattice duality workbench")]
struct Cli {
    /// Thread count for parallel scans (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a lattice file and report its structure.
    Validate(ValidateArgs),
    /// Compute the dual digraph of a lattice.
    Dualize(DualizeArgs),
    /// Check the TiRS axioms on a digraph.
    CheckTirs(CheckTirsArgs),
    /// Decide join- and meet-semidistributivity.
    CheckSd(CheckSdArgs),
    /// Run both reconstruction round trips from a lattice.
    Roundtrip(RoundtripArgs),
    /// Search for forbidden sublattices.
    Forbidden(ForbiddenArgs),
    /// Classify a shared-ideal pair of dual vertices.
    Classify(ClassifyArgs),
    /// Build the stable-pair lattice of a digraph.
    Concept(ConceptArgs),
    /// Generate a lattice file.
    Gen(GenArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Lattice JSON file.
    input: PathBuf,
    /// Emit the report as canonical JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Also write the Hasse diagram as DOT to this path.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct DualizeArgs {
    /// Lattice JSON file.
    input: PathBuf,
    /// Write the digraph JSON here instead of standard output.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Also write the digraph as DOT to this path.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Include the reflexive loops in JSON and DOT output.
    #[arg(long)]
    emit_loops: bool,
    /// Draw mutual edge pairs as one double-headed DOT edge.
    #[arg(long, value_name = "BOOL", default_value_t = true, action = clap::ArgAction::Set)]
    collapse_mutual: bool,
}

#[derive(Args)]
struct CheckTirsArgs {
    /// Digraph JSON file.
    input: PathBuf,
    /// Emit the report as canonical JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodChoice {
    Quasi,
    Dual,
    Forbidden,
    All,
}

#[derive(Args)]
struct CheckSdArgs {
    /// Lattice JSON file.
    input: PathBuf,
    /// Decision method, or all three side by side.
    #[arg(long, value_enum, default_value_t = MethodChoice::All)]
    method: MethodChoice,
    /// Emit the reports as canonical JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RoundtripArgs {
    /// Lattice JSON file.
    input: PathBuf,
    /// Emit the reports as canonical JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ForbiddenArgs {
    /// Lattice JSON file.
    input: PathBuf,
    /// Search only this pattern (a fixture name such as M3 or L4).
    #[arg(long, value_name = "NAME")]
    pattern: Option<String>,
    /// Emit the result as canonical JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Lattice JSON file.
    input: PathBuf,
    /// Two dual vertices, each given as an id or a vertex label.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], required = true)]
    pair: Vec<String>,
}

#[derive(Args)]
struct ConceptArgs {
    /// Digraph JSON file.
    input: PathBuf,
    /// Write the lattice JSON here instead of standard output.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyChoice {
    O,
    Ohat,
    Rocket,
}

#[derive(Args)]
#[command(group(
    clap::ArgGroup::new("source")
        .required(true)
        .multiple(false)
        .args(["fixture", "family", "random", "chain", "boolean"]),
))]
struct GenArgs {
    /// A drawn fixture by name (M3, L1..L5, N5, B2, B3).
    #[arg(long, value_name = "NAME")]
    fixture: Option<String>,
    /// A generated family; requires --k.
    #[arg(long, value_enum)]
    family: Option<FamilyChoice>,
    /// A seeded random lattice; requires --seed, --m and --k.
    #[arg(long)]
    random: bool,
    /// A chain with this many elements.
    #[arg(long, value_name = "N")]
    chain: Option<usize>,
    /// A Boolean lattice with this many atoms.
    #[arg(long, value_name = "N")]
    boolean: Option<usize>,
    /// Family size or random growth steps.
    #[arg(long, value_name = "K")]
    k: Option<usize>,
    /// Random seed.
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Random height bound.
    #[arg(long, value_name = "M")]
    m: Option<usize>,
    /// Write the lattice JSON here instead of standard output.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`latdual ... | head`) instead of
    // panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Validate(a) => run_validate(a),
        Command::Dualize(a) => run_dualize(a),
        Command::CheckTirs(a) => run_check_tirs(a),
        Command::CheckSd(a) => run_check_sd(a),
        Command::Roundtrip(a) => run_roundtrip(a),
        Command::Forbidden(a) => run_forbidden(a),
        Command::Classify(a) => run_classify(a),
        Command::Concept(a) => run_concept(a),
        Command::Gen(a) => run_gen(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_lattice(path: &PathBuf) -> Result<Lattice, String> {
    lattice_from_json(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_digraph(path: &PathBuf) -> Result<(String, Digraph), String> {
    digraph_from_json(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_dot(text: &str, path: &PathBuf) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run_validate(a: ValidateArgs) -> Result<u8, String> {
    let text = read_file(&a.input)?;
    let l = match lattice_from_json(&text) {
        Ok(l) => l,
        Err(e @ (Error::NotAPoset { .. } | Error::NotALattice { .. } | Error::NoBounds { .. })) => {
            println!("{e}");
            return Ok(1);
        }
        Err(e) => return Err(format!("{}: {e}", a.input.display())),
    };
    if let Some(path) = &a.dot {
        write_dot(&lattice_to_dot(&l), path)?;
    }
    let ji = l.join_irreducibles().len();
    let mi = l.meet_irreducibles().len();
    let distributive = is_distributive(&l);
    if a.json {
        let v = json!({
            "bottom": l.label(l.bottom()),
            "distributive": distributive,
            "elements": l.n(),
            "join_irreducible": ji,
            "meet_irreducible": mi,
            "name": l.name(),
            "top": l.label(l.top()),
        });
        print!("{}", canonical_json(&v));
    } else {
        println!("name: {}", l.name());
        println!("elements: {}", l.n());
        println!("bounds: {} / {}", l.label(l.bottom()), l.label(l.top()));
        println!("join-irreducible: {ji}, meet-irreducible: {mi}");
        println!("distributive: {}", if distributive { "yes" } else { "no" });
    }
    Ok(0)
}

fn run_dualize(a: DualizeArgs) -> Result<u8, String> {
    let l = read_lattice(&a.input)?;
    let d = dual_digraph(&l);
    let name = format!("dual({})", l.name());
    emit(&dual_digraph_to_json(&name, &d, a.emit_loops), &a.output)?;
    if let Some(path) = &a.dot {
        write_dot(
            &digraph_to_dot(&d.digraph, &name, a.emit_loops, a.collapse_mutual),
            path,
        )?;
    }
    Ok(0)
}

fn run_check_tirs(a: CheckTirsArgs) -> Result<u8, String> {
    let (name, g) = read_digraph(&a.input)?;
    let report = check_tirs(&g);
    if a.json {
        print!("{}", canonical_json(&tirs_report_to_value(&report)));
    } else {
        let yes = |b: bool| if b { "yes" } else { "no" };
        println!("name: {name}");
        println!("reflexive: {}", yes(report.reflexive()));
        println!("S: {}", yes(report.s_holds()));
        println!("R: {}", yes(report.r_holds()));
        println!("Ti: {}", yes(report.ti_holds()));
        println!("TiRS: {}", yes(report.is_tirs()));
        if !report.is_tirs() {
            let v = tirs_report_to_value(&report);
            println!("witness: {}", v["witness"]);
        }
    }
    Ok(if report.is_tirs() { 0 } else { 1 })
}

fn method_reports(l: &Lattice, method: MethodChoice) -> Vec<SdReport> {
    match method {
        MethodChoice::Quasi => vec![jsd_bruteforce(l), msd_bruteforce(l), sd_bruteforce(l)],
        MethodChoice::Dual => vec![jsd_dual(l), msd_dual(l), sd_dual(l)],
        MethodChoice::Forbidden => vec![jsd_forbidden(l), msd_forbidden(l), sd_forbidden(l)],
        MethodChoice::All => {
            let mut v = method_reports(l, MethodChoice::Quasi);
            v.extend(method_reports(l, MethodChoice::Dual));
            v.extend(method_reports(l, MethodChoice::Forbidden));
            v
        }
    }
}

fn witness_line(l: &Lattice, w: &SdWitness) -> String {
    match w {
        SdWitness::Triple { a, b, c } => {
            format!("a={}, b={}, c={}", l.label(*a), l.label(*b), l.label(*c))
        }
        SdWitness::MdfipPair { x, y } => {
            format!("dual vertices {} and {}", x.label(l), y.label(l))
        }
        SdWitness::Embedding { pattern, map } => {
            let (base, host_is_dual) = match pattern.strip_suffix("^op") {
                Some(b) => (b, true),
                None => (pattern.as_str(), false),
            };
            let labels: Vec<&str> = map.iter().map(|&x| l.label(x)).collect();
            if host_is_dual {
                format!("{base} in the order dual at [{}]", labels.join(", "))
            } else {
                format!("{base} at [{}]", labels.join(", "))
            }
        }
    }
}

fn run_check_sd(a: CheckSdArgs) -> Result<u8, String> {
    let l = read_lattice(&a.input)?;
    let reports = method_reports(&l, a.method);
    let mut agree = true;
    for prop in ["JSD", "MSD", "SD"] {
        let verdicts: Vec<bool> = reports
            .iter()
            .filter(|r| r.property.as_str() == prop)
            .map(|r| r.verdict)
            .collect();
        if verdicts.windows(2).any(|w| w[0] != w[1]) {
            agree = false;
        }
    }
    let all_hold = reports.iter().all(|r| r.verdict);
    if a.json {
        let v = json!({
            "agree": agree,
            "lattice": l.name(),
            "reports": reports.iter().map(sd_report_to_value).collect::<Vec<_>>(),
        });
        print!("{}", canonical_json(&v));
    } else {
        println!("lattice: {}", l.name());
        let methods: Vec<&str> = match a.method {
            MethodChoice::All => vec!["quasi-equation", "dual-digraph", "forbidden-sublattice"],
            m => vec![method_reports(&l, m)[0].method.as_str()],
        };
        let mut header = format!("{:<10}", "property");
        for m in &methods {
            header.push_str(&format!("{m:<22}"));
        }
        println!("{}", header.trim_end());
        for prop in ["JSD", "MSD", "SD"] {
            let mut row = format!("{prop:<10}");
            for m in &methods {
                let r = reports
                    .iter()
                    .find(|r| r.property.as_str() == prop && r.method.as_str() == *m)
                    .unwrap();
                row.push_str(&format!(
                    "{:<22}",
                    if r.verdict { "holds" } else { "fails" }
                ));
            }
            println!("{}", row.trim_end());
        }
        println!("methods agree: {}", if agree { "yes" } else { "no" });
        for r in &reports {
            if let Some(w) = &r.witness {
                println!(
                    "{} witness ({}): {}",
                    r.property.as_str(),
                    r.method.as_str(),
                    witness_line(&l, w)
                );
            }
        }
    }
    Ok(if all_hold && agree { 0 } else { 1 })
}

fn run_roundtrip(a: RoundtripArgs) -> Result<u8, String> {
    let l = read_lattice(&a.input)?;
    let first = match check_first_roundtrip(&l) {
        Ok(f) => f,
        Err(e @ Error::RoundTripFailure { .. }) => {
            println!("{e}");
            return Ok(1);
        }
        Err(e) => return Err(e.to_string()),
    };
    let second = match check_second_roundtrip(&first.dual.digraph) {
        Ok(s) => s,
        Err(e @ Error::RoundTripFailure { .. }) => {
            println!("{e}");
            return Ok(1);
        }
        Err(e) => return Err(e.to_string()),
    };
    if a.json {
        let v = json!({
            "first": {
                "element_to_mpm": first.element_to_mpm,
                "mpm_size": first.mpm.pairs.len(),
                "passed": true,
            },
            "lattice": l.name(),
            "second": {
                "passed": true,
                "vertex_to_mdfip": second.vertex_to_mdfip,
                "vertices": first.dual.digraph.n(),
            },
        });
        print!("{}", canonical_json(&v));
    } else {
        println!("lattice: {}", l.name());
        println!(
            "first round trip: {} elements onto {} stable pairs of the dual; order preserved and reflected",
            l.n(),
            first.mpm.pairs.len()
        );
        println!(
            "second round trip: {} dual vertices onto {} maximal pairs of the stable-pair lattice; edges preserved and reflected",
            first.dual.digraph.n(),
            second.redual.pairs.len()
        );
    }
    Ok(0)
}

fn run_forbidden(a: ForbiddenArgs) -> Result<u8, String> {
    let l = read_lattice(&a.input)?;
    if let Some(name) = &a.pattern {
        let pattern = fixture(name).map_err(|e| e.to_string())?;
        let found = find_sublattice_embedding(&l, &pattern);
        if a.json {
            let v = json!({
                "lattice": l.name(),
                "map": found,
                "pattern": name,
            });
            print!("{}", canonical_json(&v));
        } else {
            match &found {
                Some(map) => {
                    let labels: Vec<&str> = map.iter().map(|&x| l.label(x)).collect();
                    println!("{name} at [{}]", labels.join(", "));
                }
                None => println!("{name}: none"),
            }
        }
        return Ok(if found.is_some() { 1 } else { 0 });
    }
    let jsd = jsd_forbidden(&l);
    let msd = msd_forbidden(&l);
    if a.json {
        let v = json!({
            "jsd": sd_report_to_value(&jsd),
            "lattice": l.name(),
            "msd": sd_report_to_value(&msd),
        });
        print!("{}", canonical_json(&v));
    } else {
        println!("lattice: {}", l.name());
        for r in [&jsd, &msd] {
            match &r.witness {
                Some(w) => println!("{}: {}", r.property.as_str(), witness_line(&l, w)),
                None => println!("{}: none", r.property.as_str()),
            }
        }
    }
    Ok(if jsd.verdict && msd.verdict { 0 } else { 1 })
}

fn resolve_vertex(l: &Lattice, pairs: &[Mdfip], key: &str) -> Result<Mdfip, String> {
    if let Ok(id) = key.parse::<usize>() {
        return pairs
            .get(id)
            .copied()
            .ok_or_else(|| format!("no dual vertex with id {id}"));
    }
    pairs
        .iter()
        .find(|p| p.label(l) == key)
        .copied()
        .ok_or_else(|| format!("no dual vertex labelled {key:?}"))
}

fn run_classify(a: ClassifyArgs) -> Result<u8, String> {
    let l = read_lattice(&a.input)?;
    let d = dual_digraph(&l);
    let x = resolve_vertex(&l, &d.pairs, &a.pair[0])?;
    let y = resolve_vertex(&l, &d.pairs, &a.pair[1])?;
    match classify_jsd_failure(&l, &x, &y) {
        Ok(cls) => {
            print!(
                "{}",
                canonical_json(&failure_classification_to_value(&l, &cls))
            );
            Ok(0)
        }
        Err(e @ Error::ClassifierMismatch { .. }) => {
            println!("{e}");
            Ok(1)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn run_concept(a: ConceptArgs) -> Result<u8, String> {
    let (name, g) = read_digraph(&a.input)?;
    let mpm = mpm_lattice(&g).map_err(|e| e.to_string())?;
    let renamed = Lattice::build_from_covers(
        format!("concept({name})"),
        mpm.lattice.labels().to_vec(),
        mpm.lattice.covers(),
    )
    .map_err(|e| e.to_string())?;
    emit(&lattice_to_json(&renamed), &a.output)?;
    Ok(0)
}

fn run_gen(a: GenArgs) -> Result<u8, String> {
    let need_k = || a.k.ok_or_else(|| "this generator requires --k".to_string());
    let l = if let Some(name) = &a.fixture {
        fixture(name).map_err(|e| e.to_string())?
    } else if let Some(family) = a.family {
        let k = need_k()?;
        match family {
            FamilyChoice::O => o_family(k),
            FamilyChoice::Ohat => o_hat_family(k),
            FamilyChoice::Rocket => rocket_family(k),
        }
        .map_err(|e| e.to_string())?
    } else if a.random {
        let seed = a
            .seed
            .ok_or_else(|| "--random requires --seed".to_string())?;
        let m = a.m.ok_or_else(|| "--random requires --m".to_string())?;
        random_lattice(seed, m, need_k()?).map_err(|e| e.to_string())?
    } else if let Some(n) = a.chain {
        chain(n).map_err(|e| e.to_string())?
    } else {
        let n = a.boolean.expect("clap group guarantees one selector");
        boolean(n).map_err(|e| e.to_string())?
    };
    emit(&lattice_to_json(&l), &a.output)?;
    Ok(0)
}
