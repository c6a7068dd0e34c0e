//! `autosgp` — transducers acting on rooted trees, from the command line.
//!
//! Automata live in `.aut` files. Elements on the command line are quoted
//! state-token sequences with the leftmost factor applied last (`"b a"` maps
//! `w` to `b(a(w))`); words are quoted letter-token sequences with `-` for
//! the empty word. Results print one per line; `--json` emits a single
//! structured object instead. Exit code 0 on success, 1 on domain errors,
//! 2 on usage errors.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use autosgp::constructions::{
    complete_partial, direct_product, fpcm_automaton, inverse_automaton, normal_ideal_extension,
    pcp_automaton, prefix_code_decoder, Gallery,
};
use autosgp::deciders::{
    agreement_words, boundary_fixed_census, difference_witness, find_period, fixed_words,
    injective, is_idempotent, is_identity_element, is_identity_function, separate, BoundaryCensus,
};
use autosgp::explorer::{check_presentation, enumerate_ball, growth, Completeness};
use autosgp::words::CommutationRelation;
use autosgp::{section_automaton, Alphabet, Element, PartialTransducer, Transducer, Word};

const CONVENTIONS: &str = "\
Conventions:
  Elements are quoted state-token sequences with the LEFTMOST factor applied
  last: \"b a\" maps w to b(a(w)). Words are quoted letter-token sequences;
  the single token '-' is the empty word. Results print one per line;
  --json emits a single object instead. Exit codes: 0 ok, 1 domain error,
  2 usage error.";

#[derive(Parser)]
#[command(
    name = "autosgp",
    version,
    about = "Finite-state transducers, tree actions and their semigroups",
    long_about = None,
    after_help = CONVENTIONS
)]
struct Cli {
    /// Emit one JSON object instead of plain text lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an automaton file, reporting every problem found.
    Validate { file: PathBuf },
    /// Print the class flags of an automaton.
    Classify { file: PathBuf },
    /// Apply an element to a word.
    Act {
        file: PathBuf,
        element: String,
        word: String,
    },
    /// Section of an element at a word.
    Section {
        file: PathBuf,
        element: String,
        word: String,
    },
    /// Wreath decomposition of an element: per-letter image and section.
    Wreath { file: PathBuf, element: String },
    /// Materialize the section automaton of an element.
    Secaut {
        file: PathBuf,
        element: String,
        /// Write the automaton to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Word problem: do two elements act identically on every word?
    Equal {
        file: PathBuf,
        left: String,
        right: String,
    },
    /// Is the element the identity function on the tree?
    Identityfn { file: PathBuf, element: String },
    /// Is the element a semigroup identity for the state generators?
    Identityel { file: PathBuf, element: String },
    /// Is the element idempotent?
    Idempotent { file: PathBuf, element: String },
    /// Does a state induce an injective function? (expanding automata)
    Injective { file: PathBuf, state: String },
    /// Least (m, n) with m < n <= bound and s^m = s^n.
    Period {
        file: PathBuf,
        element: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Separate two distinct elements through a finite transformation
    /// semigroup (expanding automata).
    Separate {
        file: PathBuf,
        left: String,
        right: String,
    },
    /// Fixed words of an element up to a length bound.
    Fixed {
        file: PathBuf,
        element: String,
        #[arg(long = "max-len")]
        max_len: usize,
        /// Restrict the search to these letters (space-separated tokens).
        #[arg(long)]
        restrict: Option<String>,
    },
    /// Words on which two elements agree, up to a length bound.
    Agree {
        file: PathBuf,
        left: String,
        right: String,
        #[arg(long = "max-len")]
        max_len: usize,
    },
    /// Census of a state's fixed boundary points (synchronous automata).
    Census { file: PathBuf, state: String },
    /// Inverse automaton of an invertible automaton.
    Inverse {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Complete a partial invertible automaton to an invertible one.
    Complete {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Normal ideal extension of the first automaton by the second
    /// (disjoint alphabets; the second absorbs the first).
    Extend {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Direct product automaton (disjoint alphabets).
    Product {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Automaton generating a free partially commutative monoid.
    Fpcm {
        /// Number of generators.
        #[arg(long)]
        n: usize,
        /// Commuting pair "i,j" (1-based); repeatable.
        #[arg(long = "commute")]
        commute: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Post-correspondence automaton for tile lists V and W.
    Pcp {
        /// Base alphabet, space-separated tokens.
        #[arg(long)]
        alphabet: String,
        /// Tile list V: words separated by '|', letters by spaces.
        #[arg(long)]
        v: String,
        /// Tile list W, same format.
        #[arg(long)]
        w: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Prefix-code decoder automaton.
    Decoder {
        /// Base alphabet, space-separated tokens.
        #[arg(long)]
        alphabet: String,
        /// Code words separated by '|', letters by spaces.
        #[arg(long)]
        code: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit a named automaton: example21, smn (--m --n), bicyclic,
    /// thue_morse, adding_machine, lamplighter, identity (--alphabet).
    Gallery {
        name: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate the ball of generator words up to a radius.
    Ball {
        file: PathBuf,
        #[arg(short = 'L', long)]
        radius: usize,
        /// Use only these states as generators (space-separated tokens).
        #[arg(long)]
        generators: Option<String>,
    },
    /// Check a finite presentation: relations "lhs = rhs" separated by '|'.
    Present {
        file: PathBuf,
        #[arg(long)]
        relations: String,
        #[arg(short = 'L', long)]
        radius: usize,
        #[arg(long)]
        generators: Option<String>,
    },
    /// Class counts per generator word length.
    Growth {
        file: PathBuf,
        #[arg(short = 'L', long)]
        radius: usize,
        #[arg(long)]
        generators: Option<String>,
    },
    /// DOT rendering of an automaton.
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

/// Plain lines plus the equivalent JSON object.
struct Report {
    plain: Vec<String>,
    json: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let result = if cli.json {
                writeln!(out, "{}", report.json)
            } else {
                report
                    .plain
                    .iter()
                    .try_for_each(|line| writeln!(out, "{line}"))
            };
            match result {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
                Ok(()) => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn load(path: &Path) -> Result<Arc<Transducer>, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let t = Transducer::parse(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    Ok(Arc::new(t))
}

fn element(aut: &Arc<Transducer>, text: &str) -> Result<Element, CliError> {
    Ok(Element::parse(aut, text)?)
}

fn word(aut: &Arc<Transducer>, text: &str) -> Result<Word, CliError> {
    Ok(Word::parse(aut.alphabet(), text)?)
}

fn state_id(aut: &Transducer, token: &str) -> Result<usize, CliError> {
    aut.state_id(token)
        .ok_or_else(|| CliError(format!("unknown state `{token}`")))
}

fn parse_state_list(aut: &Transducer, text: &str) -> Result<Vec<usize>, CliError> {
    text.split_whitespace()
        .map(|tok| state_id(aut, tok))
        .collect()
}

fn parse_alphabet(text: &str) -> Result<Arc<Alphabet>, CliError> {
    Ok(Alphabet::new(text.split_whitespace().map(String::from))?)
}

fn parse_word_list(alphabet: &Arc<Alphabet>, text: &str) -> Result<Vec<Word>, CliError> {
    text.split('|')
        .map(|part| Ok(Word::parse(alphabet, part)?))
        .collect()
}

fn bool_report(value: bool) -> Report {
    Report {
        plain: vec![value.to_string()],
        json: json!({ "result": value }),
    }
}

/// Serialize an automaton to `-o FILE` or stdout. `header` lines are
/// prepended as comments.
fn automaton_report(
    t: &Transducer,
    header: &[String],
    output: Option<&Path>,
    extra: Value,
) -> Result<Report, CliError> {
    let mut text = String::new();
    for line in header {
        text.push_str(&format!("# {line}\n"));
    }
    text.push_str(&t.serialize());
    let mut json = json!({ "automaton": text });
    if let Value::Object(map) = &mut json {
        if let Value::Object(extra) = extra {
            map.extend(extra);
        }
    }
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            Ok(Report {
                plain: vec![format!("wrote {}", path.display())],
                json,
            })
        }
        None => Ok(Report {
            plain: text.lines().map(String::from).collect(),
            json,
        }),
    }
}

fn text_report(text: String, output: Option<&Path>, key: &str) -> Result<Report, CliError> {
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            Ok(Report {
                plain: vec![format!("wrote {}", path.display())],
                json: json!({ key: text }),
            })
        }
        None => Ok(Report {
            plain: text.lines().map(String::from).collect(),
            json: json!({ key: text }),
        }),
    }
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Validate { file } => {
            let _ = load(&file)?;
            Ok(Report {
                plain: vec!["ok".into()],
                json: json!({ "ok": true }),
            })
        }
        Command::Classify { file } => {
            let t = load(&file)?;
            let c = t.classify();
            Ok(Report {
                plain: vec![c.to_string()],
                json: json!({
                    "asynchronous": c.asynchronous,
                    "expanding": c.expanding,
                    "synchronous": c.synchronous,
                    "invertible": c.invertible,
                }),
            })
        }
        Command::Act {
            file,
            element: el,
            word: w,
        } => {
            let t = load(&file)?;
            let image = element(&t, &el)?.act(&word(&t, &w)?)?;
            Ok(Report {
                plain: vec![image.render()],
                json: json!({ "result": image.render() }),
            })
        }
        Command::Section {
            file,
            element: el,
            word: w,
        } => {
            let t = load(&file)?;
            let sec = element(&t, &el)?.section(&word(&t, &w)?)?;
            Ok(Report {
                plain: vec![sec.render()],
                json: json!({ "result": sec.render() }),
            })
        }
        Command::Wreath { file, element: el } => {
            let t = load(&file)?;
            let wf = element(&t, &el)?.wreath();
            let mut plain = Vec::new();
            let mut entries = Vec::new();
            for (i, letter) in t.alphabet().letters().iter().enumerate() {
                plain.push(format!(
                    "{letter} | {} | {}",
                    wf.tau(i).render(),
                    wf.section(i).render()
                ));
                entries.push(json!({
                    "letter": letter,
                    "tau": wf.tau(i).render(),
                    "section": wf.section(i).render(),
                }));
            }
            Ok(Report {
                plain,
                json: json!({ "wreath": entries }),
            })
        }
        Command::Secaut {
            file,
            element: el,
            output,
        } => {
            let t = load(&file)?;
            let sa = section_automaton(&element(&t, &el)?);
            let state = sa.transducer.state_name(sa.element_state).to_string();
            automaton_report(
                &sa.transducer,
                &[format!("element `{el}` is state {state}")],
                output.as_deref(),
                json!({ "element_state": state }),
            )
        }
        Command::Equal { file, left, right } => {
            let t = load(&file)?;
            let l = element(&t, &left)?;
            let r = element(&t, &right)?;
            match difference_witness(&l, &r)? {
                None => Ok(bool_report(true)),
                Some(w) => Ok(Report {
                    plain: vec!["false".into()],
                    json: json!({ "result": false, "witness": w.render() }),
                }),
            }
        }
        Command::Identityfn { file, element: el } => {
            let t = load(&file)?;
            Ok(bool_report(is_identity_function(&element(&t, &el)?)?))
        }
        Command::Identityel { file, element: el } => {
            let t = load(&file)?;
            Ok(bool_report(is_identity_element(&element(&t, &el)?)?))
        }
        Command::Idempotent { file, element: el } => {
            let t = load(&file)?;
            Ok(bool_report(is_idempotent(&element(&t, &el)?)?))
        }
        Command::Injective { file, state } => {
            let t = load(&file)?;
            let q = state_id(&t, &state)?;
            Ok(bool_report(injective(&t, q)?))
        }
        Command::Period {
            file,
            element: el,
            bound,
        } => {
            let t = load(&file)?;
            match find_period(&element(&t, &el)?, bound)? {
                Some((m, n)) => Ok(Report {
                    plain: vec![format!("{m} {n}")],
                    json: json!({ "period": [m, n] }),
                }),
                None => Ok(Report {
                    plain: vec!["none".into()],
                    json: json!({ "period": null }),
                }),
            }
        }
        Command::Separate { file, left, right } => {
            let t = load(&file)?;
            let a = element(&t, &left)?;
            let b = element(&t, &right)?;
            let witness = separate(&a, &b)?;
            let sink = witness.sink();
            let entry = |i: usize| {
                if i == sink {
                    "$".to_string()
                } else {
                    witness.domain()[i].render()
                }
            };
            let diff = witness
                .first_difference()
                .expect("separated tables differ somewhere");
            let plain = vec![
                format!("level {}", witness.level),
                format!("depth {}", witness.depth),
                format!("differs_at {}", witness.domain()[diff].render()),
                format!("a: {}", entry(witness.table_a[diff])),
                format!("b: {}", entry(witness.table_b[diff])),
            ];
            let table = |t: &[usize]| -> Vec<String> { t.iter().map(|&i| entry(i)).collect() };
            let json = json!({
                "level": witness.level,
                "depth": witness.depth,
                "differs_at": witness.domain()[diff].render(),
                "a": entry(witness.table_a[diff]),
                "b": entry(witness.table_b[diff]),
                "domain": witness.domain().iter().map(Word::render).collect::<Vec<_>>(),
                "table_a": table(&witness.table_a),
                "table_b": table(&witness.table_b),
            });
            Ok(Report { plain, json })
        }
        Command::Fixed {
            file,
            element: el,
            max_len,
            restrict,
        } => {
            let t = load(&file)?;
            let restrict = restrict
                .map(|text| -> Result<Vec<usize>, CliError> {
                    text.split_whitespace()
                        .map(|tok| {
                            t.alphabet()
                                .index_of(tok)
                                .ok_or_else(|| CliError(format!("unknown letter `{tok}`")))
                        })
                        .collect()
                })
                .transpose()?;
            let found = fixed_words(&element(&t, &el)?, max_len, restrict.as_deref())?;
            let rendered: Vec<String> = found.iter().map(Word::render).collect();
            Ok(Report {
                json: json!({ "words": rendered }),
                plain: rendered,
            })
        }
        Command::Agree {
            file,
            left,
            right,
            max_len,
        } => {
            let t = load(&file)?;
            let found = agreement_words(&element(&t, &left)?, &element(&t, &right)?, max_len)?;
            let rendered: Vec<String> = found.iter().map(Word::render).collect();
            Ok(Report {
                json: json!({ "words": rendered }),
                plain: rendered,
            })
        }
        Command::Census { file, state } => {
            let t = load(&file)?;
            let q = state_id(&t, &state)?;
            match boundary_fixed_census(&t, q)? {
                BoundaryCensus::Zero => Ok(Report {
                    plain: vec!["zero".into()],
                    json: json!({ "kind": "zero", "points": [] }),
                }),
                BoundaryCensus::Infinite => Ok(Report {
                    plain: vec!["infinite".into()],
                    json: json!({ "kind": "infinite", "points": [] }),
                }),
                BoundaryCensus::Finite(points) => {
                    let mut plain = vec![format!("finite {}", points.len())];
                    let mut entries = Vec::new();
                    for p in &points {
                        plain.push(format!("{} | {}", p.prefix.render(), p.cycle.render()));
                        entries.push(json!({
                            "prefix": p.prefix.render(),
                            "cycle": p.cycle.render(),
                        }));
                    }
                    Ok(Report {
                        plain,
                        json: json!({ "kind": "finite", "points": entries }),
                    })
                }
            }
        }
        Command::Inverse { file, output } => {
            let t = load(&file)?;
            let inv = inverse_automaton(&t)?;
            automaton_report(&inv, &[], output.as_deref(), json!({}))
        }
        Command::Complete { file, output } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| CliError(format!("{}: {e}", file.display())))?;
            let partial = PartialTransducer::parse(&text)?;
            let completed = complete_partial(&partial)?;
            automaton_report(&completed, &[], output.as_deref(), json!({}))
        }
        Command::Extend {
            first,
            second,
            output,
        } => {
            let a = load(&first)?;
            let b = load(&second)?;
            let ext = normal_ideal_extension(&a, &b)?;
            automaton_report(&ext, &[], output.as_deref(), json!({}))
        }
        Command::Product {
            first,
            second,
            output,
        } => {
            let a = load(&first)?;
            let b = load(&second)?;
            let prod = direct_product(&a, &b)?;
            automaton_report(&prod, &[], output.as_deref(), json!({}))
        }
        Command::Fpcm { n, commute, output } => {
            let mut pairs = Vec::new();
            for spec in &commute {
                let parts: Vec<&str> = spec.split(',').collect();
                let bad = || CliError(format!("bad --commute `{spec}`; expected i,j"));
                if parts.len() != 2 {
                    return Err(bad());
                }
                let i: usize = parts[0].trim().parse().map_err(|_| bad())?;
                let j: usize = parts[1].trim().parse().map_err(|_| bad())?;
                if i == 0 || j == 0 {
                    return Err(CliError(format!("--commute `{spec}` is 1-based")));
                }
                pairs.push((i - 1, j - 1));
            }
            let rel = CommutationRelation::new(n, pairs)?;
            let t = fpcm_automaton(&rel)?;
            automaton_report(&t, &[], output.as_deref(), json!({}))
        }
        Command::Pcp {
            alphabet,
            v,
            w,
            output,
        } => {
            let x = parse_alphabet(&alphabet)?;
            let v = parse_word_list(&x, &v)?;
            let w = parse_word_list(&x, &w)?;
            let t = pcp_automaton(&x, &v, &w)?;
            automaton_report(&t, &[], output.as_deref(), json!({}))
        }
        Command::Decoder {
            alphabet,
            code,
            output,
        } => {
            let x = parse_alphabet(&alphabet)?;
            let code = parse_word_list(&x, &code)?;
            let decoder = prefix_code_decoder(&x, &code)?;
            let state = decoder
                .transducer
                .state_name(decoder.decoder_state)
                .to_string();
            automaton_report(
                &decoder.transducer,
                &[format!("decoder state is {state}")],
                output.as_deref(),
                json!({ "decoder_state": state }),
            )
        }
        Command::Gallery {
            name,
            m,
            n,
            alphabet,
            output,
        } => {
            let entry = match name.as_str() {
                "example21" => Gallery::Example21,
                "smn" => {
                    let m = m.ok_or_else(|| CliError("smn needs --m".into()))?;
                    let n = n.ok_or_else(|| CliError("smn needs --n".into()))?;
                    Gallery::Smn(m, n)
                }
                "bicyclic" => Gallery::Bicyclic,
                "thue_morse" => Gallery::ThueMorse,
                "adding_machine" => Gallery::AddingMachine,
                "lamplighter" => Gallery::Lamplighter,
                "identity" => {
                    let letters =
                        alphabet.ok_or_else(|| CliError("identity needs --alphabet".into()))?;
                    Gallery::Identity(letters.split_whitespace().map(String::from).collect())
                }
                other => return Err(CliError(format!("unknown gallery automaton `{other}`"))),
            };
            let t = entry.build()?;
            automaton_report(&t, &[], output.as_deref(), json!({}))
        }
        Command::Ball {
            file,
            radius,
            generators,
        } => {
            let t = load(&file)?;
            let gens = generators.map(|g| parse_state_list(&t, &g)).transpose()?;
            let report = enumerate_ball(&t, radius, gens.as_deref())?;
            let mut plain = vec![
                format!("elements {}", report.normal_forms.len()),
                format!(
                    "per-length {}",
                    report
                        .count_per_length
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
            ];
            for nf in &report.normal_forms {
                plain.push(format!("nf: {}", nf.render()));
            }
            for (lhs, rhs) in &report.relations {
                plain.push(format!("rel: {} = {}", lhs.render(), rhs.render()));
            }
            let json = json!({
                "elements": report.normal_forms.len(),
                "per_length": report.count_per_length,
                "normal_forms": report.normal_forms.iter().map(Element::render).collect::<Vec<_>>(),
                "relations": report
                    .relations
                    .iter()
                    .map(|(l, r)| json!([l.render(), r.render()]))
                    .collect::<Vec<_>>(),
            });
            Ok(Report { plain, json })
        }
        Command::Present {
            file,
            relations,
            radius,
            generators,
        } => {
            let t = load(&file)?;
            let gens = generators.map(|g| parse_state_list(&t, &g)).transpose()?;
            let mut parsed = Vec::new();
            for part in relations.split('|') {
                let sides: Vec<&str> = part.split('=').collect();
                if sides.len() != 2 {
                    return Err(CliError(format!(
                        "bad relation `{part}`; expected lhs = rhs"
                    )));
                }
                parsed.push((element(&t, sides[0])?, element(&t, sides[1])?));
            }
            let report = check_presentation(&t, &parsed, radius, gens.as_deref())?;
            let mut plain = Vec::new();
            let mut rel_json = Vec::new();
            for ((lhs, rhs), holds) in parsed.iter().zip(&report.relations_hold) {
                plain.push(format!(
                    "{} = {}: {}",
                    lhs.render(),
                    rhs.render(),
                    if *holds { "holds" } else { "fails" }
                ));
                rel_json.push(json!({
                    "lhs": lhs.render(),
                    "rhs": rhs.render(),
                    "holds": holds,
                }));
            }
            let (status, unresolved) = match &report.completeness {
                Completeness::Complete => ("complete", Vec::new()),
                Completeness::Incomplete(pairs) => ("incomplete", pairs.clone()),
                Completeness::Inconclusive(pairs) => ("inconclusive", pairs.clone()),
                Completeness::Skipped => ("skipped", Vec::new()),
            };
            if unresolved.is_empty() {
                plain.push(format!("completeness: {status}"));
            } else {
                plain.push(format!(
                    "completeness: {status} ({} unresolved)",
                    unresolved.len()
                ));
            }
            let json = json!({
                "relations": rel_json,
                "completeness": status,
                "unresolved": unresolved
                    .iter()
                    .map(|(l, r)| json!([l.render(), r.render()]))
                    .collect::<Vec<_>>(),
            });
            Ok(Report { plain, json })
        }
        Command::Growth {
            file,
            radius,
            generators,
        } => {
            let t = load(&file)?;
            let gens = generators.map(|g| parse_state_list(&t, &g)).transpose()?;
            let counts = growth(&t, radius, gens.as_deref())?;
            Ok(Report {
                plain: vec![counts
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")],
                json: json!({ "growth": counts }),
            })
        }
        Command::Dot { file, output } => {
            let t = load(&file)?;
            text_report(t.to_dot(), output.as_deref(), "dot")
        }
    }
}
