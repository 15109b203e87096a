//! `gaschutz`: verdicts, complement searches, witnesses and catalog runs.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gaschutz_core::automorphisms::{aut_group, rose_with};
use gaschutz_core::catalog::{self, CatalogEntry};
use gaschutz_core::complements::find_complement;
use gaschutz_core::engine::{explain, verdict};
use gaschutz_core::perm::{
    center, derived_subgroup, nilpotent_residual, normal_subgroups, o_p_residual, sylow,
};
use gaschutz_core::witness::{
    baer_action, baer_bundle, blow_up, build_znthm, verify_znthm, WitnessBundle,
};
use gaschutz_core::{FiniteGroup, GroupError};

const NAME_HELP: &str = "\
Group names: Cn, Dn (order n), Qn (dicyclic, order n), Sn, An, SL23, GL23,
products AxB, central products A*B, powers A^k, wreath products AwrCq,
Cp^2:X with X in C2, C3, C4, Cp, D8, Q8, metacyclic Cn:Cm(r), and
parentheses, e.g. (C3^2:Q8)xC2. Other names are looked up in the catalog.";

#[derive(Parser)]
#[command(name = "gaschutz", version, about = "Decide when locally split normal subgroups split globally", after_help = NAME_HELP)]
struct Cli {
    /// Catalog used for names that are not built in (default: the bundled catalog).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verdict for a named group, or for every entry of a catalog file.
    Verdict { target: String },
    /// Search for a complement of a normal subgroup.
    Complement {
        #[arg(long)]
        group: String,
        /// center, derived, residual, sylowP, O^P, or normalI (I-th normal subgroup by order).
        #[arg(long)]
        normal: String,
    },
    /// Classify every entry of a catalog.
    Classify {
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Build and verify counterexample embeddings.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Automorphism and inner automorphism group orders.
    Aut { name: String },
    /// Whether Z(N) = 1 and Inn(N) has a complement in Aut(N).
    Rose { name: String },
    /// Write the generated bundled catalog.
    GenerateCatalog {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum WitnessKind {
    /// The embedding built from N ≀ C_q for N with Z(N) ∩ N′ ≠ 1.
    Znthm(ZnthmArgs),
    /// The order-48 group SL(2,3) ∗ C₄ with N = Q₈.
    Baer {
        /// Also blow it up by C₅² through GL(2,5).
        #[arg(long)]
        blow_up: bool,
    },
}

#[derive(Args)]
struct ZnthmArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    q: u64,
    /// Run the nonexistence search.
    #[arg(long)]
    verify: bool,
    /// With --verify, also run the unreduced search.
    #[arg(long)]
    full: bool,
}

enum Failure {
    Usage(anyhow::Error),
    Engine(anyhow::Error),
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure::Engine(e.into())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Engine(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn entries(cli: &Cli) -> Result<Vec<CatalogEntry>, Failure> {
    match &cli.catalog {
        Some(path) => catalog::load_catalog(path).map_err(|e| Failure::Usage(e.into())),
        None => Ok(catalog::bundled_catalog()),
    }
}

fn resolve(cli: &Cli, name: &str) -> Result<FiniteGroup, Failure> {
    let entries = entries(cli)?;
    catalog::resolve(name, &entries).map_err(|e| match e {
        GroupError::Parse(_) => Failure::Usage(anyhow!("unknown group {name:?}: {e}")),
        other => Failure::Engine(other.into()),
    })
}

fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    );
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verdict { target } => cmd_verdict(cli, target),
        Command::Complement { group, normal } => cmd_complement(cli, group, normal),
        Command::Classify { max_order } => cmd_classify(cli, *max_order),
        Command::Witness { kind } => match kind {
            WitnessKind::Znthm(args) => cmd_znthm(cli, args),
            WitnessKind::Baer { blow_up } => cmd_baer(cli, *blow_up),
        },
        Command::Aut { name } => cmd_aut(cli, name),
        Command::Rose { name } => cmd_rose(cli, name),
        Command::GenerateCatalog { out } => {
            let entries = catalog::generate_bundled();
            catalog::save_catalog(out, &entries)?;
            println!("wrote {} entries to {}", entries.len(), out.display());
            Ok(())
        }
    }
}

fn verdict_json(name: &str, g: &FiniteGroup) -> Value {
    let v = verdict(g);
    json!({
        "name": name,
        "order": g.order(),
        "verdict": v.status,
        "rule": v.rule,
        "evidence": v.evidence,
        "witness": v.witness,
        "notes": v.notes,
    })
}

fn cmd_verdict(cli: &Cli, target: &str) -> Outcome {
    let path = Path::new(target);
    let groups: Vec<(String, FiniteGroup)> = if path.is_file() {
        let entries = catalog::load_catalog(path).map_err(|e| Failure::Usage(e.into()))?;
        entries
            .iter()
            .map(|e| Ok((e.name.clone(), e.group()?)))
            .collect::<Result<_, GroupError>>()?
    } else {
        vec![(target.to_string(), resolve(cli, target)?)]
    };
    if cli.json {
        let all: Vec<Value> = groups.iter().map(|(n, g)| verdict_json(n, g)).collect();
        match <[Value; 1]>::try_from(all) {
            Ok([one]) => print_json(&one),
            Err(all) => print_json(&Value::Array(all)),
        }
    } else {
        for (name, g) in &groups {
            print!("{name} (order {}): {}", g.order(), explain(&verdict(g)));
        }
    }
    Ok(())
}

fn normal_subgroup(g: &FiniteGroup, spec: &str) -> Result<FiniteGroup, Failure> {
    let usage = |msg: String| Failure::Usage(anyhow!(msg));
    let number = |s: &str| {
        s.parse::<u64>()
            .map_err(|_| usage(format!("bad number in {spec:?}")))
    };
    let n = match spec {
        "center" => center(g),
        "derived" => derived_subgroup(g),
        "residual" => nilpotent_residual(g),
        s if s.starts_with("sylow") => {
            let p = number(&s[5..])?;
            let p_sub = sylow(g, p)?;
            if !p_sub.is_normal_in(g)? {
                return Err(usage(format!("the Sylow {p}-subgroup is not normal")));
            }
            p_sub
        }
        s if s.starts_with("O^") => o_p_residual(g, number(&s[2..])?)?,
        s if s.starts_with("normal") => {
            let i = number(&s[6..])? as usize;
            let all = normal_subgroups(g);
            all.get(i)
                .cloned()
                .ok_or_else(|| usage(format!("only {} normal subgroups", all.len())))?
        }
        _ => return Err(usage(format!("unknown normal subgroup {spec:?}"))),
    };
    Ok(n)
}

fn cmd_complement(cli: &Cli, group: &str, normal: &str) -> Outcome {
    let g = resolve(cli, group)?;
    let n = normal_subgroup(&g, normal)?;
    let r = find_complement(&g, &n)?;
    if cli.json {
        print_json(&json!({
            "group": group,
            "order": g.order(),
            "normal": normal,
            "normal_order": n.order(),
            "exists": r.exists,
            "complement": r.complement.as_ref().map(generators),
            "search_space": r.search_space,
            "total_tuples": r.total_tuples,
            "generators": r.generators,
            "method": r.method,
        }));
    } else {
        println!("|G| = {}, |N| = {}", g.order(), n.order());
        match &r.complement {
            Some(k) => println!(
                "complement of order {} found after {} of {} tuples",
                k.order(),
                r.search_space,
                r.total_tuples
            ),
            None => println!(
                "no complement: all {} tuples searched ({})",
                r.total_tuples, r.method
            ),
        }
    }
    Ok(())
}

fn generators(g: &FiniteGroup) -> Vec<Vec<usize>> {
    g.generators().iter().map(|p| p.to_vec()).collect()
}

fn cmd_classify(cli: &Cli, max_order: Option<usize>) -> Outcome {
    let entries = entries(cli)?;
    let report = catalog::classify(&entries, max_order)?;
    if cli.json {
        print_json(&serde_json::to_value(&report).context("serializing report")?);
        return Ok(());
    }
    for g in &report.groups {
        let rule = g.rule.as_deref().unwrap_or("-");
        let flag = if g.contradiction {
            "  CONTRADICTION"
        } else {
            ""
        };
        println!(
            "{:<24} {:>5}  {:<9} {rule}{flag}",
            g.name,
            g.order,
            g.verdict.to_string()
        );
    }
    let s = &report.summary;
    println!(
        "total {}: HOLDS {}, FAILS {}, UNDECIDED {}, contradictions {}",
        s.total, s.holds, s.fails, s.undecided, s.contradictions
    );
    Ok(())
}

fn print_bundle(cli: &Cli, b: &WitnessBundle) -> Outcome {
    if cli.json {
        print_json(&serde_json::to_value(b.record()).context("serializing bundle")?);
        return Ok(());
    }
    let [g, h, n] = b.orders();
    println!(
        "{}: |G| = {g}, |H| = {h}, |N| = {n}, |G:H| = {}",
        b.construction, b.q
    );
    println!("z = {}", b.z);
    let in_g = match &b.nonexistence {
        Some(r) if !r.exists => {
            format!("no (all {} tuples searched, {})", r.total_tuples, r.method)
        }
        Some(_) => "yes".into(),
        None => "not searched".into(),
    };
    println!("complement in H: yes; in G: {in_g}");
    if let Some(r) = &b.full_search {
        println!(
            "unreduced search agrees: {} tuples, none split",
            r.total_tuples
        );
    }
    Ok(())
}

fn cmd_znthm(cli: &Cli, args: &ZnthmArgs) -> Outcome {
    let n = resolve(cli, &args.group)?;
    let mut b = build_znthm(&n, args.q)?;
    if args.verify {
        b = verify_znthm(b, args.full)?;
    }
    print_bundle(cli, &b)
}

fn cmd_baer(cli: &Cli, blow: bool) -> Outcome {
    let b = baer_bundle()?;
    if !blow {
        return print_bundle(cli, &b);
    }
    let l = catalog::parse_name("C5^2")?;
    let big = blow_up(&l, &b, &baer_action(&b)?)?;
    print_bundle(cli, &big)
}

fn cmd_aut(cli: &Cli, name: &str) -> Outcome {
    let g = resolve(cli, name)?;
    let aut = aut_group(&g)?;
    if cli.json {
        print_json(&json!({
            "name": name,
            "order": g.order(),
            "aut_order": aut.order(),
            "inn_order": aut.inn.order(),
            "out_order": aut.out_order,
            "complete": center(&g).is_trivial() && aut.out_order == 1,
        }));
    } else {
        println!(
            "|N| = {}, |Aut(N)| = {}, |Inn(N)| = {}, |Out(N)| = {}",
            g.order(),
            aut.order(),
            aut.inn.order(),
            aut.out_order
        );
    }
    Ok(())
}

fn cmd_rose(cli: &Cli, name: &str) -> Outcome {
    let g = resolve(cli, name)?;
    let (rose, complete) = if center(&g).is_trivial() {
        let aut = aut_group(&g)?;
        (rose_with(&aut)?, aut.out_order == 1)
    } else {
        (false, false)
    };
    if cli.json {
        print_json(&json!({ "name": name, "rose": rose, "complete": complete }));
    } else {
        println!(
            "{name}: Rose's criterion {}{}",
            if rose { "holds" } else { "fails" },
            if complete { " (complete group)" } else { "" }
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use gaschutz_core::catalog::REPORT_SCHEMA;

    #[test]
    fn schema_is_json() {
        let _: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    }
}
