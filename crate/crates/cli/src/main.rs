//! Command-line interface for monoids defined by permutation relations of
//! abelian type.
//!
//! The instance comes either from a JSON file (`--instance`) or from inline
//! flags (`-n`, `-l`, repeated `-g`). Results print as readable text by
//! default and as a JSON report with `--json`.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use permrel_core::algebra::{
    is_nilpotent, radical_basis, torsion_group_algebra, AlgebraElement, FieldSpec, Scalar,
};
use permrel_core::embedding::{injectivity_check, relation_check};
use permrel_core::fractions::{all_torsion_tuples, centrality_check, letter_element};
use permrel_core::rewriting::{Budget, Side};
use permrel_core::{generate_closure, MonoidInstance, Permutation, Word};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "permrel",
    version,
    about = "Computations in monoids defined by permutation relations of abelian type"
)]
struct Cli {
    #[command(flatten)]
    instance: InstanceArgs,

    /// Cap on equivalence-class size and on enumeration work.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,

    /// Coefficient field for algebra commands: "q" or a prime ("3", "p=3").
    #[arg(long, global = true, default_value = "q")]
    field: String,

    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    /// JSON file holding {"n": …, "l": …, "generators": [[…], …]}.
    #[arg(long, global = true, value_name = "FILE")]
    instance: Option<PathBuf>,

    /// Number of generators (degree of the permutation group).
    #[arg(short = 'n', long = "degree", global = true, value_name = "N")]
    degree: Option<usize>,

    /// Length of the defining relations.
    #[arg(short = 'l', long = "relation-length", global = true, value_name = "L")]
    relation_length: Option<usize>,

    /// Group generator, as images "2,3,1" or cycles "(1 2 3)"; repeatable.
    #[arg(short = 'g', long = "gen", global = true, value_name = "PERM")]
    gen: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the defining group and report whether the monoid is
    /// cancellative.
    Classify,
    /// Decide whether two words are equal in the monoid.
    Eq { word1: String, word2: String },
    /// Print the least word equal to the given one, and its class size.
    Canon { word: String },
    /// Count distinct elements of one length.
    Count { length: usize },
    /// Count elements of each length up to a bound and classify growth.
    Growth { max_length: usize },
    /// Search for a cancellation counterexample among short words.
    Cancel { max_total_length: usize },
    /// Describe the group of fractions (transitive abelian groups only).
    GroupInfo,
    /// Check the universal-group action: defining relations and injectivity.
    EmbedCheck {
        /// Longest monoid words compared for injectivity.
        max_length: usize,
        /// Relation instances to try before sampling kicks in.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Dimension of the radical of the torsion group algebra.
    Radical,
    /// Bounded nilpotency test for an element like "3*[1 2] - [2 1]".
    Nilpotent { element: String, max_power: u32 },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Eq { .. } => "eq",
            Command::Canon { .. } => "canon",
            Command::Count { .. } => "count",
            Command::Growth { .. } => "growth",
            Command::Cancel { .. } => "cancel",
            Command::GroupInfo => "group-info",
            Command::EmbedCheck { .. } => "embed-check",
            Command::Radical => "radical",
            Command::Nilpotent { .. } => "nilpotent",
        }
    }
}

#[derive(Deserialize)]
struct InstanceFile {
    n: usize,
    l: usize,
    generators: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    instance: InstanceSummary,
    result: Value,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct InstanceSummary {
    n: usize,
    l: usize,
    group_order: usize,
    generators: Vec<Vec<usize>>,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let inst = build_instance(&cli.instance, cli.budget)?;
    let field = parse_field(&cli.field)?;

    let started = Instant::now();
    let (result, human) = run(&cli.command, &inst, field)?;
    let elapsed_ms = started.elapsed().as_millis();

    if cli.json {
        let report = Report {
            command: cli.command.name(),
            instance: InstanceSummary {
                n: inst.n(),
                l: inst.l(),
                group_order: inst.group().elements().len(),
                generators: inst
                    .group()
                    .generators()
                    .iter()
                    .map(|g| g.images().to_vec())
                    .collect(),
            },
            result,
            elapsed_ms,
        };
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{human}");
    }
    Ok(())
}

fn build_instance(args: &InstanceArgs, budget: Option<u64>) -> Result<MonoidInstance> {
    let (degree, l, generators) = if let Some(path) = &args.instance {
        if args.degree.is_some() || args.relation_length.is_some() || !args.gen.is_empty() {
            bail!("--instance conflicts with -n / -l / -g");
        }
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let file: InstanceFile = serde_json::from_str(&text)
            .with_context(|| format!("parsing {}", path.display()))?;
        let gens = file
            .generators
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>, _>>()?;
        (file.n, file.l, gens)
    } else {
        let degree = args
            .degree
            .ok_or_else(|| anyhow!("give -n/--degree or --instance FILE"))?;
        let l = args
            .relation_length
            .ok_or_else(|| anyhow!("give -l/--relation-length or --instance FILE"))?;
        let gens = args
            .gen
            .iter()
            .map(|s| parse_generator(s, degree))
            .collect::<Result<Vec<_>>>()?;
        (degree, l, gens)
    };

    let group = generate_closure(&generators, degree)?;
    let mut inst = MonoidInstance::new(group, l)?;
    if let Some(cap) = budget {
        inst = inst.with_budget(Budget {
            class_cap: cap,
            enum_cap: cap,
        });
    }
    Ok(inst)
}

/// Accepts "2,3,1", "[2 3 1]", or cycle notation "(1 2 3)(4 5)".
fn parse_generator(text: &str, degree: usize) -> Result<Permutation> {
    let trimmed = text.trim();
    if trimmed.starts_with('(') {
        let mut cycles = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                bail!("unexpected characters after cycles in {text:?}");
            };
            let Some(close) = stripped.find(')') else {
                bail!("unclosed cycle in {text:?}");
            };
            cycles.push(parse_numbers(&stripped[..close])?);
            rest = stripped[close + 1..].trim_start();
        }
        Ok(Permutation::from_cycles(degree, &cycles)?)
    } else {
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .unwrap_or(trimmed);
        let images = parse_numbers(inner)?;
        if images.len() != degree {
            bail!(
                "generator {text:?} lists {} images but the degree is {degree}",
                images.len()
            );
        }
        Ok(Permutation::from_images(images)?)
    }
}

fn parse_numbers(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad number {t:?}")))
        .collect()
}

fn parse_word(text: &str) -> Result<Word> {
    Ok(Word::new(parse_numbers(text)?))
}

fn parse_field(text: &str) -> Result<FieldSpec> {
    let trimmed = text.trim();
    if trimmed.eq_ignore_ascii_case("q") || trimmed.eq_ignore_ascii_case("rational") {
        return Ok(FieldSpec::Rational);
    }
    let digits = trimmed.strip_prefix("p=").unwrap_or(trimmed);
    let p = digits
        .parse::<u64>()
        .with_context(|| format!("field must be \"q\" or a prime, got {text:?}"))?;
    Ok(FieldSpec::prime(p)?)
}

/// Parses sums like "3*[1 2] + 1/2*[2 2] - [1] + 2".
fn parse_element(inst: &MonoidInstance, field: FieldSpec, text: &str) -> Result<AlgebraElement> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut terms: Vec<(Word, Scalar)> = Vec::new();

    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let read_number = |i: &mut usize| -> Result<i64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        if start == *i {
            bail!("expected a number at offset {start} in {text:?}");
        }
        chars[start..*i]
            .iter()
            .collect::<String>()
            .parse::<i64>()
            .with_context(|| format!("number too large at offset {start} in {text:?}"))
    };

    loop {
        skip_ws(&mut i);
        if i == chars.len() {
            break;
        }
        let mut sign = 1i64;
        match chars[i] {
            '+' => i += 1,
            '-' => {
                sign = -1;
                i += 1;
            }
            _ if terms.is_empty() => {}
            other => bail!("expected '+' or '-' before {other:?} in {text:?}"),
        }
        skip_ws(&mut i);

        let mut numerator = 1i64;
        let mut denominator = 1i64;
        let mut saw_coefficient = false;
        if i < chars.len() && chars[i].is_ascii_digit() {
            numerator = read_number(&mut i)?;
            saw_coefficient = true;
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                skip_ws(&mut i);
                denominator = read_number(&mut i)?;
            }
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                skip_ws(&mut i);
            }
        }

        let word = if i < chars.len() && chars[i] == '[' {
            let start = i + 1;
            let Some(offset) = chars[start..].iter().position(|&c| c == ']') else {
                bail!("unclosed '[' in {text:?}");
            };
            i = start + offset + 1;
            parse_word(&chars[start..start + offset].iter().collect::<String>())?
        } else if saw_coefficient {
            // A bare scalar stands for a multiple of the empty word.
            Word::empty()
        } else {
            bail!("expected a coefficient or '[' at offset {i} in {text:?}");
        };

        terms.push((word, Scalar::from_ratio(field, sign * numerator, denominator)?));
    }

    Ok(AlgebraElement::from_terms(inst, field, terms)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(command: &Command, inst: &MonoidInstance, field: FieldSpec) -> Result<(Value, String)> {
    match command {
        Command::Classify => {
            let c = inst.classification();
            let cancellative = c.is_semiregular && c.is_abelian;
            let result = json!({
                "classification": c,
                "cancellative": cancellative,
            });
            let orbits = c
                .orbits
                .iter()
                .map(|o| {
                    let points: Vec<String> = o.iter().map(usize::to_string).collect();
                    format!("{{{}}}", points.join(" "))
                })
                .collect::<Vec<_>>()
                .join(" ");
            let human = format!(
                "n = {}, l = {}, group order {}\n\
                 abelian: {}  semiregular: {}  transitive: {}  regular: {}\n\
                 orbits: {}\n\
                 cancellative: {}",
                inst.n(),
                inst.l(),
                inst.group().elements().len(),
                yes_no(c.is_abelian),
                yes_no(c.is_semiregular),
                yes_no(c.is_transitive),
                yes_no(c.is_regular),
                orbits,
                yes_no(cancellative)
            );
            Ok((result, human))
        }
        Command::Eq { word1, word2 } => {
            let u = parse_word(word1)?;
            let v = parse_word(word2)?;
            let equal = inst.words_equal(&u, &v)?;
            Ok((
                json!({ "word1": u, "word2": v, "equal": equal }),
                format!("equal: {}", yes_no(equal)),
            ))
        }
        Command::Canon { word } => {
            let w = parse_word(word)?;
            let class = inst.equivalence_class(&w)?;
            Ok((
                json!({
                    "word": w,
                    "canonical": class.canonical(),
                    "class_size": class.len(),
                }),
                format!("canonical: {}\nclass size: {}", class.canonical(), class.len()),
            ))
        }
        Command::Count { length } => {
            let count = inst.count_elements_of_length(*length)?;
            Ok((
                json!({ "length": length, "count": count }),
                format!("elements of length {length}: {count}"),
            ))
        }
        Command::Growth { max_length } => {
            let report = inst.growth_classify(*max_length)?;
            let mut lines: Vec<String> = report
                .counts
                .iter()
                .map(|(m, count)| format!("length {m}: {count}"))
                .collect();
            lines.push(format!("growth: {:?}", report.classification).to_lowercase());
            Ok((json!(report), lines.join("\n")))
        }
        Command::Cancel { max_total_length } => {
            let witness = inst.cancellativity_witness(*max_total_length)?;
            let human = match &witness {
                None => format!("no cancellation counterexample up to total length {max_total_length}"),
                Some(w) => {
                    let (eq_side, factor) = match w.side {
                        Side::Left => ("a·b = a·c", "left"),
                        Side::Right => ("b·a = c·a", "right"),
                    };
                    format!(
                        "counterexample ({factor} factor a): a = {}, b = {}, c = {} with {eq_side} but b ≠ c",
                        w.a, w.b, w.c
                    )
                }
            };
            Ok((
                json!({ "max_total_length": max_total_length, "witness": witness }),
                human,
            ))
        }
        Command::GroupInfo => {
            let tuples = all_torsion_tuples(inst)?;
            let centrality = centrality_check(inst)?;
            let mut letters = Vec::new();
            let mut letter_lines = Vec::new();
            for j in 1..=inst.n() {
                let g = letter_element(inst, j)?;
                let cycles: Vec<String> = g
                    .torsion
                    .components()
                    .iter()
                    .map(Permutation::to_string)
                    .collect();
                letter_lines.push(format!("  x_{j} -> x_1^{} · ({})", g.power, cycles.join(", ")));
                letters.push(json!({ "letter": j, "power": g.power, "torsion": cycles }));
            }
            let result = json!({
                "group_order": inst.group().elements().len(),
                "torsion_subgroup_order": tuples.len(),
                "central_element_power": inst.l(),
                "central": centrality.central,
                "central_subgroup_index": centrality.index,
                "letter_normal_forms": letters,
            });
            let human = format!(
                "torsion subgroup order: {}\n\
                 x_1^{} is central: {} (index of its subgroup: {})\n\
                 letter normal forms:\n{}",
                tuples.len(),
                inst.l(),
                yes_no(centrality.central),
                centrality.index,
                letter_lines.join("\n")
            );
            Ok((result, human))
        }
        Command::EmbedCheck {
            max_length,
            samples,
        } => {
            let relations = relation_check(inst, *samples)?;
            let injectivity = injectivity_check(inst, *max_length)?;
            let result = json!({
                "relations": relations,
                "injectivity": injectivity,
            });
            let human = format!(
                "relations hold: {} ({} tuple{} checked{}, {} probes)\n\
                 injective up to length {}: {} ({} words compared)",
                yes_no(relations.holds),
                relations.tuples_checked,
                if relations.tuples_checked == 1 { "" } else { "s" },
                if relations.exhaustive { ", exhaustive" } else { ", sampled" },
                relations.probes,
                injectivity.max_length,
                yes_no(injectivity.injective),
                injectivity.words_checked
            );
            Ok((result, human))
        }
        Command::Radical => {
            let algebra = torsion_group_algebra(inst, field)?;
            let radical = radical_basis(&algebra)?;
            Ok((
                json!({
                    "field": field.to_string(),
                    "algebra_dimension": algebra.dim(),
                    "radical_dimension": radical.dimension,
                }),
                format!(
                    "field {field}: algebra dimension {}, radical dimension {}",
                    algebra.dim(),
                    radical.dimension
                ),
            ))
        }
        Command::Nilpotent { element, max_power } => {
            let a = parse_element(inst, field, element)?;
            let report = is_nilpotent(inst, &a, *max_power)?;
            let human = match report.nilpotent_at {
                Some(k) => format!("nilpotent over {field}: power {k} vanishes"),
                None => format!("not nilpotent over {field} up to power {}", report.checked_up_to),
            };
            let result = json!({
                "field": field.to_string(),
                "term_count": a.terms().len(),
                "report": report,
            });
            Ok((result, human))
        }
    }
}
