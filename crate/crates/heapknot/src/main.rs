//! `heapknot`: heap colorings, TSD cohomology, ribbon cocycle invariants and
//! fundamental heaps of framed braid closures.
//!
//! Exit codes: 0 on success, 1 when a computation fails (or a reproduction
//! check is red), 2 on usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use heapknot::cocycle_spec::{self, Family};
use heapknot::reproduce::{self, Config};
use heapknot::{parallel, render};
use heapknot_core::algebra::{make_group, FiniteGroup};
use heapknot_core::coloring::{classify, ComponentColor};
use heapknot_core::fundamental_heap::{
    abelianization, alpha_form, check_homomorphism, presentation, pretzel_presentation, tietze_simplify, Presentation,
    TargetGroup,
};
use heapknot_core::link_model::FramedLink;
use heapknot_core::tsd_complex::{Cocomplex2, Coefficients, ComplexVariant};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "heapknot", version, about = "Heap colorings, TSD cohomology and cocycle invariants of framed links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit human-readable text.
    #[arg(long, global = true)]
    text: bool,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Enumeration threads (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Args)]
struct LinkArgs {
    /// Number of braid strands (default: 1 + the largest generator index).
    #[arg(long)]
    strands: Option<usize>,
    /// Braid word as signed generator indices, e.g. "1 -2 1".
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    braid: String,
    /// Kinks per component, in component order (default: all zero).
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    framings: Vec<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a group: order, element names and multiplication table.
    Group {
        /// Group spec: Z<n>, D<n>, or products such as Z2xZ2.
        #[arg(long)]
        group: String,
    },
    /// Second cohomology of one complex variant.
    Cohomology {
        #[arg(long)]
        group: String,
        /// Z or Z<m>.
        #[arg(long, default_value = "Z")]
        coeff: String,
        /// full, dh, ndh, loc:G=…, rel:G=…, loc2:G=…,F=… or rel2:G=…,F=….
        #[arg(long, default_value = "full")]
        variant: String,
        /// Include representative cocycles.
        #[arg(long)]
        basis: bool,
    },
    /// Value table of a cocycle family member.
    Cocycles {
        /// deg, ring:a,b,c, phi:i, phisum:a1,…, psi:i.
        #[arg(long)]
        family: String,
        #[arg(long)]
        group: String,
        /// Override the family's coefficients (Z or Z<m>).
        #[arg(long)]
        coeff: Option<String>,
    },
    /// Count colorings of a framed braid closure.
    Color {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        link: LinkArgs,
        /// Also list every coloring.
        #[arg(long)]
        list: bool,
    },
    /// The cocycle invariant of a framed braid closure.
    Invariant {
        #[arg(long)]
        group: String,
        /// Override the cocycle's coefficients (Z or Z<m>).
        #[arg(long)]
        coeff: Option<String>,
        /// Cocycle family spec, as for `cocycles --family`.
        #[arg(long)]
        cocycle: String,
        #[command(flatten)]
        link: LinkArgs,
    },
    /// Presentation of the fundamental heap.
    Fundheap {
        #[command(flatten)]
        link: LinkArgs,
        /// Use the pretzel link P(a,b,c,…) with these even twist counts instead of a braid.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        pretzel: Option<Vec<i64>>,
        /// Apply Tietze eliminations to the non-free factor.
        #[arg(long)]
        simplify: bool,
        /// Report the abelianization of the non-free factor.
        #[arg(long)]
        abelianize: bool,
        /// Check a homomorphism: "GROUP | a1=e; …" or "t1,t2 | law, … | a1=w; …".
        #[arg(long)]
        map_to: Option<String>,
    },
    /// Run the reproduction suite and print a pass/fail table.
    Reproduce {
        /// Run only this criterion (1–8).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        criterion: Option<u8>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn compute(message: impl ToString) -> Failure {
    Failure { code: 1, message: message.to_string() }
}

fn parse_group(spec: &str) -> Result<FiniteGroup, Failure> {
    make_group(spec).map_err(usage)
}

fn parse_coeff(text: &str) -> Result<Coefficients, Failure> {
    let t = text.trim();
    if t == "Z" {
        return Ok(Coefficients::Integers);
    }
    let m = t
        .strip_prefix('Z')
        .and_then(|d| d.parse::<u64>().ok())
        .ok_or_else(|| usage(format!("invalid coefficients `{text}` (expected Z or Z<m>)")))?;
    Coefficients::modular(m).map_err(usage)
}

fn parse_link(args: &LinkArgs) -> Result<FramedLink, Failure> {
    let letters: Vec<i64> = args
        .braid
        .split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| usage(format!("invalid braid letter `{t}`"))))
        .collect::<Result<_, _>>()?;
    let strands = match args.strands {
        Some(s) => s,
        None => letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1),
    };
    let braid = heapknot_core::link_model::BraidWord::new(strands, &letters).map_err(usage)?;
    let framings = if args.framings.is_empty() {
        vec![0; reproduce::cycle_count(&braid.strand_ends())]
    } else {
        args.framings.clone()
    };
    FramedLink::new(braid, &framings).map_err(usage)
}

fn link_json(link: &FramedLink) -> Value {
    json!({
        "strands": link.braid().strands(),
        "braid": link.braid().as_ints(),
        "framings": link.framings(),
        "components": link.components(),
    })
}

fn group_json(g: &FiniteGroup) -> Value {
    json!({
        "group": g.spec(),
        "order": g.order(),
        "elements": g.names(),
        "table": g.mul_table().iter().map(|row| row.iter().map(|&e| g.name(e)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn presentation_json(p: &Presentation, simplify: bool, abelianize: bool) -> Value {
    let mut v = render::presentation(p);
    if simplify {
        v["simplified"] = render::presentation(&tietze_simplify(p, p.generators.len() + p.relators.len()));
    }
    if abelianize {
        v["abelianization"] = render::abelian(&abelianization(p));
    }
    v
}

fn run(cli: &Cli, budget: u128) -> Result<(Value, bool), Failure> {
    let workers = cli.output.workers.unwrap_or_else(parallel::default_workers).max(1);
    let value = match &cli.command {
        Command::Group { group } => group_json(&parse_group(group)?),
        Command::Cohomology { group, coeff, variant, basis } => {
            let g = parse_group(group)?;
            let coeff = parse_coeff(coeff)?;
            let variant = ComplexVariant::parse(variant, &g).map_err(usage)?;
            let result = Cocomplex2::new(&g, coeff, &variant).and_then(|c| c.cohomology()).map_err(compute)?;
            let mut v = json!({
                "group": g.spec(),
                "coefficients": coeff.to_string(),
                "variant": variant.tag(),
                "rank": result.group.free_rank,
                "torsion": result.group.torsion.iter().map(render::int).collect::<Vec<_>>(),
                "text": result.group.to_string(),
                "cocycles": render::abelian(&result.cocycles),
                "coboundary_rank": result.coboundary_rank,
            });
            if *basis {
                v["basis"] = Value::Array(
                    result
                        .representatives
                        .iter()
                        .map(|(c, order)| json!({ "order": render::int(order), "values": render::cochain(&g, c) }))
                        .collect(),
                );
            }
            v
        }
        Command::Cocycles { family, group, coeff } => {
            let g = parse_group(group)?;
            let family: Family = family.parse().map_err(usage)?;
            let coeff = coeff.as_deref().map(parse_coeff).transpose()?;
            let named = cocycle_spec::build(&family, &g, coeff).map_err(usage)?;
            let verified = named.verify(&g).is_ok();
            json!({
                "group": g.spec(),
                "label": named.label,
                "variant": named.variant.tag(),
                "coefficients": named.cochain.coefficients().to_string(),
                "verified": verified,
                "values": render::cochain(&g, &named.cochain),
            })
        }
        Command::Color { group, link, list } => {
            let g = parse_group(group)?;
            let link = parse_link(link)?;
            let colorings = parallel::colorings(&link, &g, budget, workers).map_err(compute)?;
            let flags: Vec<Vec<ComponentColor>> = colorings.iter().map(|c| classify(&link, c)).collect();
            let bicolored: Vec<usize> = (0..link.component_count())
                .map(|i| flags.iter().filter(|f| f[i] == ComponentColor::Bicolored).count())
                .collect();
            let mono = flags.iter().filter(|f| f.iter().all(|c| *c == ComponentColor::Monochromatic)).count();
            let mut v = json!({
                "group": g.spec(),
                "link": link_json(&link),
                "count": colorings.len(),
                "bicolored": bicolored,
                "monochromatic": mono,
            });
            if *list {
                v["colorings"] = Value::Array(colorings.iter().map(|c| render::coloring(&g, &link, c)).collect());
            }
            v
        }
        Command::Invariant { group, coeff, cocycle, link } => {
            let g = parse_group(group)?;
            let family: Family = cocycle.parse().map_err(usage)?;
            let coeff = coeff.as_deref().map(parse_coeff).transpose()?;
            let named = cocycle_spec::build(&family, &g, coeff).map_err(usage)?;
            let link = parse_link(link)?;
            let value = parallel::invariant(&link, &g, &named.cochain, budget, workers).map_err(compute)?;
            json!({
                "group": g.spec(),
                "cocycle": named.label,
                "link": link_json(&link),
                "invariant": render::invariant(&value),
            })
        }
        Command::Fundheap { link, pretzel, simplify, abelianize, map_to } => {
            let (raw, link_value) = match pretzel {
                Some(twists) => (pretzel_presentation(twists).map_err(usage)?, json!({ "pretzel": twists })),
                None => {
                    let l = parse_link(link)?;
                    (presentation(&l), link_json(&l))
                }
            };
            let af = alpha_form(&raw).map_err(compute)?;
            let mut v = json!({
                "link": link_value,
                "presentation": render::presentation(&raw),
                "free_generators": af.free_generators,
                "hat": presentation_json(&af.hat, *simplify, *abelianize),
            });
            let mut ok = true;
            if let Some(target) = map_to {
                let t = TargetGroup::parse(target, &af.hat).map_err(usage)?;
                let report = check_homomorphism(&af.hat, &t).map_err(compute)?;
                ok = report.holds;
                v["homomorphism"] = json!({
                    "holds": report.holds,
                    "surjective": report.surjective,
                    "trace": report.trace.iter().map(|(r, i)| json!({ "relator": r, "image": i })).collect::<Vec<_>>(),
                });
            }
            return Ok((v, ok));
        }
        Command::Reproduce { criterion } => {
            let cfg = Config { workers, budget };
            let checks = match criterion {
                Some(n) => reproduce::criterion(*n, &cfg),
                None => reproduce::all(&cfg),
            };
            let failed = checks.iter().filter(|c| !c.pass).count();
            let v = json!({
                "passed": checks.len() - failed,
                "failed": failed,
                "checks": checks.iter().map(|c| json!({
                    "criterion": c.criterion,
                    "id": c.id,
                    "pass": c.pass,
                    "expected": c.expected,
                    "actual": c.actual,
                })).collect::<Vec<_>>(),
                "table": checks.iter().map(|c| c.line()).collect::<Vec<_>>(),
            });
            return Ok((v, failed == 0));
        }
    };
    Ok((value, true))
}

fn text_output(cli: &Cli, value: &Value) -> String {
    if let Command::Reproduce { .. } = cli.command {
        let mut out: String = value["table"]
            .as_array()
            .map(|rows| rows.iter().filter_map(Value::as_str).map(|l| format!("{l}\n")).collect())
            .unwrap_or_default();
        out.push_str(&format!("passed {}, failed {}\n", value["passed"], value["failed"]));
        return out;
    }
    render::text(value)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let budget = match parallel::state_budget() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let (value, ok) = match run(&cli, budget) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let body = if cli.output.text {
        text_output(&cli, &value)
    } else {
        format!("{}\n", serde_json::to_string_pretty(&value).expect("JSON values serialize"))
    };
    let written = match &cli.output.output {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
