//! The transducer data model: validation, classification, the `.aut` text
//! format and DOT export.
//!
//! A [`Transducer`] is a quadruple `(Q, Σ, t, o)`: finite state set, finite
//! alphabet, total transition function `t: Q × Σ → Q` and total output
//! function `o: Q × Σ → Σ*`. The output class determines the automaton
//! class: asynchronous (any outputs), expanding (nonempty outputs),
//! synchronous (single-letter outputs), invertible (synchronous with each
//! state's output row a permutation of the alphabet).
//!
//! # The `.aut` format
//!
//! ```text
//! # Example file; comment lines start with '#', blank lines are ignored.
//! alphabet 0 1
//! state a
//! state b
//! edge a 0 a 1 1
//! edge a 1 a 1
//! edge b 0 a 1 1 1
//! edge b 1 a 1 1
//! ```
//!
//! * `alphabet <tok> ...` comes first (exactly once); token order fixes the
//!   letter order.
//! * `state <tok>` declares one state per line, in order.
//! * `edge <state> <letter> <next-state> <out...>` gives the transition and
//!   output for one `(state, letter)` pair; `<out...>` is one or more letter
//!   tokens, or the single token `-` for the empty output.
//! * A complete automaton has exactly one edge line per `(state, letter)`
//!   pair; [`RawAutomaton::validate_partial`] drops the completeness
//!   requirement.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::words::{Alphabet, Word};

/// Class flags of a transducer. The implications
/// invertible ⇒ synchronous ⇒ expanding ⇒ asynchronous always hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AutomatonClass {
    /// Always true: every transducer here is at least asynchronous.
    pub asynchronous: bool,
    /// All outputs nonempty.
    pub expanding: bool,
    /// All outputs of length exactly one.
    pub synchronous: bool,
    /// Synchronous and every state's output row is a permutation of Σ.
    pub invertible: bool,
}

impl fmt::Display for AutomatonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = vec!["asynchronous"];
        if self.expanding {
            names.push("expanding");
        }
        if self.synchronous {
            names.push("synchronous");
        }
        if self.invertible {
            names.push("invertible");
        }
        f.write_str(&names.join(" "))
    }
}

/// One problem found while validating raw automaton tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    /// The alphabet failed to build (empty, duplicate or bad token).
    BadAlphabet(String),
    /// No states were declared.
    NoStates,
    /// A state token is declared twice.
    DuplicateState(String),
    /// A state token is empty or contains whitespace.
    InvalidState(String),
    /// An edge names an undeclared state.
    UnknownState(String),
    /// An edge names a letter outside the alphabet.
    UnknownLetter(String),
    /// Two edges are given for the same `(state, letter)` pair.
    DuplicateEdge(String, String),
    /// No edge is given for a `(state, letter)` pair.
    MissingEdge(String, String),
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::BadAlphabet(msg) => write!(f, "bad alphabet: {msg}"),
            ValidationIssue::NoStates => write!(f, "no states declared"),
            ValidationIssue::DuplicateState(s) => write!(f, "duplicate state `{s}`"),
            ValidationIssue::InvalidState(s) => write!(f, "invalid state token `{s}`"),
            ValidationIssue::UnknownState(s) => write!(f, "unknown state `{s}`"),
            ValidationIssue::UnknownLetter(l) => write!(f, "unknown letter `{l}`"),
            ValidationIssue::DuplicateEdge(q, l) => {
                write!(f, "duplicate edge for ({q}, {l})")
            }
            ValidationIssue::MissingEdge(q, l) => write!(f, "missing edge for ({q}, {l})"),
        }
    }
}

/// Validation failure carrying every issue found.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationReport {
    /// All problems, in table order.
    pub issues: Vec<ValidationIssue>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.issues.iter().map(|i| i.to_string()).collect();
        f.write_str(&lines.join("; "))
    }
}

/// Errors from reading the `.aut` text format.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutError {
    /// Syntax error at a line.
    #[error("line {line}: {message}")]
    Syntax {
        /// 1-based line number.
        line: usize,
        /// What went wrong.
        message: String,
    },
    /// The file has no alphabet line.
    #[error("no alphabet")]
    NoAlphabet,
    /// The tables parsed but failed validation.
    #[error("invalid automaton: {0}")]
    Invalid(#[from] ValidationReport),
}

/// One raw edge line: everything still textual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEdge {
    /// Source state token.
    pub from: String,
    /// Input letter token.
    pub letter: String,
    /// Target state token.
    pub to: String,
    /// Output letter tokens (empty for ε).
    pub output: Vec<String>,
}

/// Raw automaton tables prior to validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawAutomaton {
    /// Alphabet tokens in order.
    pub alphabet: Vec<String>,
    /// State tokens in order.
    pub states: Vec<String>,
    /// Edge entries in input order.
    pub edges: Vec<RawEdge>,
}

impl RawAutomaton {
    /// Checks totality and alphabet closure, producing a [`Transducer`] or a
    /// report listing every missing or invalid entry.
    pub fn validate(&self) -> Result<Transducer, ValidationReport> {
        let (partial, mut issues) = self.check_tables();
        if let Some(p) = &partial {
            for q in 0..p.states.len() {
                for l in 0..p.alphabet.len() {
                    if p.trans[q * p.alphabet.len() + l].is_none() {
                        issues.push(ValidationIssue::MissingEdge(
                            p.states[q].clone(),
                            p.alphabet.letter(l).to_string(),
                        ));
                    }
                }
            }
        }
        if !issues.is_empty() {
            return Err(ValidationReport { issues });
        }
        let p = partial.expect("no issues implies tables were built");
        Ok(Transducer {
            states: p.states,
            state_index: p.state_index,
            alphabet: p.alphabet,
            trans: p.trans.into_iter().map(|t| t.unwrap()).collect(),
            out: p.out.into_iter().map(|o| o.unwrap()).collect(),
        })
    }

    /// As [`RawAutomaton::validate`] but permits missing `(state, letter)`
    /// entries, yielding a [`PartialTransducer`].
    pub fn validate_partial(&self) -> Result<PartialTransducer, ValidationReport> {
        let (partial, issues) = self.check_tables();
        if !issues.is_empty() {
            return Err(ValidationReport { issues });
        }
        Ok(partial.expect("no issues implies tables were built"))
    }

    fn check_tables(&self) -> (Option<PartialTransducer>, Vec<ValidationIssue>) {
        let mut issues = Vec::new();
        let alphabet = match Alphabet::new(self.alphabet.clone()) {
            Ok(a) => a,
            Err(e) => {
                issues.push(ValidationIssue::BadAlphabet(e.to_string()));
                return (None, issues);
            }
        };
        if self.states.is_empty() {
            issues.push(ValidationIssue::NoStates);
            return (None, issues);
        }
        let mut state_index: HashMap<String, usize> = HashMap::new();
        for (i, s) in self.states.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                issues.push(ValidationIssue::InvalidState(s.clone()));
            } else if state_index.insert(s.clone(), i).is_some() {
                issues.push(ValidationIssue::DuplicateState(s.clone()));
            }
        }
        if !issues.is_empty() {
            return (None, issues);
        }
        let n = alphabet.len();
        let mut trans: Vec<Option<usize>> = vec![None; self.states.len() * n];
        let mut out: Vec<Option<Vec<usize>>> = vec![None; self.states.len() * n];
        for edge in &self.edges {
            let mut ok = true;
            let from = state_index.get(&edge.from).copied();
            if from.is_none() {
                issues.push(ValidationIssue::UnknownState(edge.from.clone()));
                ok = false;
            }
            let to = state_index.get(&edge.to).copied();
            if to.is_none() {
                issues.push(ValidationIssue::UnknownState(edge.to.clone()));
                ok = false;
            }
            let letter = alphabet.index_of(&edge.letter);
            if letter.is_none() {
                issues.push(ValidationIssue::UnknownLetter(edge.letter.clone()));
                ok = false;
            }
            let mut word = Vec::with_capacity(edge.output.len());
            for tok in &edge.output {
                match alphabet.index_of(tok) {
                    Some(i) => word.push(i),
                    None => {
                        issues.push(ValidationIssue::UnknownLetter(tok.clone()));
                        ok = false;
                    }
                }
            }
            if !ok {
                continue;
            }
            let idx = from.unwrap() * n + letter.unwrap();
            if trans[idx].is_some() {
                issues.push(ValidationIssue::DuplicateEdge(
                    edge.from.clone(),
                    edge.letter.clone(),
                ));
                continue;
            }
            trans[idx] = Some(to.unwrap());
            out[idx] = Some(word);
        }
        if !issues.is_empty() {
            return (None, issues);
        }
        (
            Some(PartialTransducer {
                states: self.states.clone(),
                state_index,
                alphabet,
                trans,
                out,
            }),
            issues,
        )
    }
}

/// A complete transducer `(Q, Σ, t, o)`. Immutable after validation; state
/// and letter names are arbitrary tokens backed by dense integer ids.
#[derive(Debug, Clone)]
pub struct Transducer {
    states: Vec<String>,
    state_index: HashMap<String, usize>,
    alphabet: Arc<Alphabet>,
    trans: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl PartialEq for Transducer {
    fn eq(&self, other: &Self) -> bool {
        self.states == other.states
            && *self.alphabet == *other.alphabet
            && self.trans == other.trans
            && self.out == other.out
    }
}

impl Eq for Transducer {}

impl Transducer {
    /// Builds a transducer from dense tables. `trans` and `out` are indexed
    /// by `state * alphabet.len() + letter`.
    pub fn from_tables(
        states: Vec<String>,
        alphabet: Arc<Alphabet>,
        trans: Vec<usize>,
        out: Vec<Vec<usize>>,
    ) -> Result<Transducer, ValidationReport> {
        let mut raw = RawAutomaton {
            alphabet: alphabet.letters().to_vec(),
            states: states.clone(),
            edges: Vec::new(),
        };
        let n = alphabet.len();
        assert_eq!(trans.len(), states.len() * n, "transition table size");
        assert_eq!(out.len(), states.len() * n, "output table size");
        for q in 0..states.len() {
            for l in 0..n {
                let to = trans[q * n + l];
                raw.edges.push(RawEdge {
                    from: states[q].clone(),
                    letter: alphabet.letter(l).to_string(),
                    to: states.get(to).cloned().unwrap_or_default(),
                    output: out[q * n + l]
                        .iter()
                        .map(|&i| {
                            if i < n {
                                alphabet.letter(i).to_string()
                            } else {
                                String::new()
                            }
                        })
                        .collect(),
                });
            }
        }
        raw.validate()
    }

    /// Parses the `.aut` text format.
    pub fn parse(text: &str) -> Result<Transducer, AutError> {
        let raw = parse_raw(text)?;
        raw.validate().map_err(AutError::Invalid)
    }

    /// Serializes to canonical `.aut` text: alphabet line, state lines in
    /// order, then edge lines in state-major, letter-minor order.
    pub fn serialize(&self) -> String {
        let mut lines = Vec::new();
        lines.push(format!("alphabet {}", self.alphabet.letters().join(" ")));
        for s in &self.states {
            lines.push(format!("state {s}"));
        }
        let n = self.alphabet.len();
        for q in 0..self.states.len() {
            for l in 0..n {
                let idx = q * n + l;
                let out = if self.out[idx].is_empty() {
                    "-".to_string()
                } else {
                    self.out[idx]
                        .iter()
                        .map(|&i| self.alphabet.letter(i))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                lines.push(format!(
                    "edge {} {} {} {}",
                    self.states[q],
                    self.alphabet.letter(l),
                    self.states[self.trans[idx]],
                    out
                ));
            }
        }
        lines.join("\n") + "\n"
    }

    /// Renders the transducer as a DOT digraph, one node per state and one
    /// edge per `(state, letter)` pair labeled `σ|w` (ε shown as `ε`).
    pub fn to_dot(&self) -> String {
        let single = self
            .alphabet
            .letters()
            .iter()
            .all(|l| l.chars().count() == 1);
        let mut s = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        for q in &self.states {
            s.push_str(&format!("  \"{q}\";\n"));
        }
        let n = self.alphabet.len();
        for q in 0..self.states.len() {
            for l in 0..n {
                let idx = q * n + l;
                let out = if self.out[idx].is_empty() {
                    "ε".to_string()
                } else {
                    let toks: Vec<&str> = self.out[idx]
                        .iter()
                        .map(|&i| self.alphabet.letter(i))
                        .collect();
                    toks.join(if single { "" } else { " " })
                };
                s.push_str(&format!(
                    "  \"{}\" -> \"{}\" [label=\"{}|{}\"];\n",
                    self.states[q],
                    self.states[self.trans[idx]],
                    self.alphabet.letter(l),
                    out
                ));
            }
        }
        s.push_str("}\n");
        s
    }

    /// Class flags of this transducer.
    pub fn classify(&self) -> AutomatonClass {
        let expanding = self.out.iter().all(|w| !w.is_empty());
        let synchronous = self.out.iter().all(|w| w.len() == 1);
        let n = self.alphabet.len();
        let invertible = synchronous
            && (0..self.states.len()).all(|q| {
                let mut seen = vec![false; n];
                for l in 0..n {
                    seen[self.out[q * n + l][0]] = true;
                }
                seen.into_iter().all(|b| b)
            });
        AutomatonClass {
            asynchronous: true,
            expanding,
            synchronous,
            invertible,
        }
    }

    /// Number of states.
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// State tokens in order.
    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    /// Name of state `q`.
    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    /// Id of the state with the given token.
    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.state_index.get(name).copied()
    }

    /// The alphabet.
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Transition target `t(q, letter)`.
    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.trans[q * self.alphabet.len() + letter]
    }

    /// Output letters `o(q, letter)`.
    pub fn output(&self, q: usize, letter: usize) -> &[usize] {
        &self.out[q * self.alphabet.len() + letter]
    }

    /// Output `o(q, letter)` as a [`Word`].
    pub fn output_word(&self, q: usize, letter: usize) -> Word {
        Word::from_indices(self.alphabet.clone(), self.output(q, letter).to_vec())
            .expect("outputs are alphabet-closed")
    }

    /// Runs state `q` on a raw letter sequence, returning the concatenated
    /// outputs and the terminal state (the section of `q` at the input).
    pub(crate) fn run(&self, q: usize, input: &[usize]) -> (Vec<usize>, usize) {
        let mut cur = q;
        let mut out = Vec::with_capacity(input.len());
        for &l in input {
            out.extend_from_slice(self.output(cur, l));
            cur = self.step(cur, l);
        }
        (out, cur)
    }
}

/// A transducer whose transition and output tables may be partial, with
/// `domain(t) = domain(o)`.
#[derive(Debug, Clone)]
pub struct PartialTransducer {
    states: Vec<String>,
    #[allow(dead_code)]
    state_index: HashMap<String, usize>,
    alphabet: Arc<Alphabet>,
    trans: Vec<Option<usize>>,
    out: Vec<Option<Vec<usize>>>,
}

impl PartialTransducer {
    /// Parses `.aut` text without requiring table completeness.
    pub fn parse(text: &str) -> Result<PartialTransducer, AutError> {
        let raw = parse_raw(text)?;
        raw.validate_partial().map_err(AutError::Invalid)
    }

    /// Number of states.
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// State tokens in order.
    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    /// The alphabet.
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Transition entry, if defined.
    pub fn step(&self, q: usize, letter: usize) -> Option<usize> {
        self.trans[q * self.alphabet.len() + letter]
    }

    /// Output entry, if defined.
    pub fn output(&self, q: usize, letter: usize) -> Option<&[usize]> {
        self.out[q * self.alphabet.len() + letter].as_deref()
    }
}

fn parse_raw(text: &str) -> Result<RawAutomaton, AutError> {
    let mut raw = RawAutomaton::default();
    let mut saw_alphabet = false;
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let keyword = toks.next().expect("nonempty line has a first token");
        let rest: Vec<&str> = toks.collect();
        match keyword {
            "alphabet" => {
                if saw_alphabet {
                    return Err(AutError::Syntax {
                        line: lineno,
                        message: "alphabet declared twice".into(),
                    });
                }
                if rest.is_empty() {
                    return Err(AutError::Syntax {
                        line: lineno,
                        message: "alphabet line has no letters".into(),
                    });
                }
                raw.alphabet = rest.into_iter().map(String::from).collect();
                saw_alphabet = true;
            }
            "state" => {
                if !saw_alphabet {
                    return Err(AutError::NoAlphabet);
                }
                if rest.len() != 1 {
                    return Err(AutError::Syntax {
                        line: lineno,
                        message: "state line takes exactly one token".into(),
                    });
                }
                raw.states.push(rest[0].to_string());
            }
            "edge" => {
                if !saw_alphabet {
                    return Err(AutError::NoAlphabet);
                }
                if rest.len() < 4 {
                    return Err(AutError::Syntax {
                        line: lineno,
                        message: "edge line needs state, letter, next state and output".into(),
                    });
                }
                let output = if rest[3..] == ["-"] {
                    Vec::new()
                } else {
                    rest[3..].iter().map(|s| s.to_string()).collect()
                };
                raw.edges.push(RawEdge {
                    from: rest[0].to_string(),
                    letter: rest[1].to_string(),
                    to: rest[2].to_string(),
                    output,
                });
            }
            other => {
                return Err(AutError::Syntax {
                    line: lineno,
                    message: format!("unknown keyword `{other}`"),
                });
            }
        }
    }
    if !saw_alphabet {
        return Err(AutError::NoAlphabet);
    }
    Ok(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::Gallery;

    const EX21: &str = "\
alphabet 0 1
state a
state b
edge a 0 a 1 1
edge a 1 a 1
edge b 0 a 1 1 1
edge b 1 a 1 1
";

    #[test]
    fn parse_example_file() {
        let t = Transducer::parse(EX21).unwrap();
        assert_eq!(t.state_count(), 2);
        assert_eq!(t.alphabet().len(), 2);
        assert_eq!(t.output(0, 0), &[1, 1]);
        assert_eq!(t.output(1, 0), &[1, 1, 1]);
        assert_eq!(t.step(1, 1), 0);
    }

    #[test]
    fn parse_empty_file_is_no_alphabet() {
        assert_eq!(Transducer::parse(""), Err(AutError::NoAlphabet));
        assert_eq!(
            Transducer::parse("# only a comment\n"),
            Err(AutError::NoAlphabet)
        );
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = Transducer::parse("alphabet 0\nstate a\nedge a 0\n").unwrap_err();
        match err {
            AutError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn validate_reports_missing_and_unknown_entries() {
        let raw = parse_raw("alphabet 0 1\nstate a\nedge a 0 a 1\n").unwrap();
        let err = raw.validate().unwrap_err();
        assert!(err
            .issues
            .contains(&ValidationIssue::MissingEdge("a".into(), "1".into())));

        let raw = parse_raw("alphabet 0\nstate a\nedge a 0 a 2\n").unwrap();
        let err = raw.validate().unwrap_err();
        assert!(err
            .issues
            .contains(&ValidationIssue::UnknownLetter("2".into())));

        let raw = parse_raw("alphabet 0\nstate a\nedge a 0 a 0\nedge a 0 a 0\n").unwrap();
        let err = raw.validate().unwrap_err();
        assert!(err
            .issues
            .contains(&ValidationIssue::DuplicateEdge("a".into(), "0".into())));
    }

    #[test]
    fn serialize_round_trip_is_identity() {
        let t = Transducer::parse(EX21).unwrap();
        let text = t.serialize();
        assert_eq!(text, EX21);
        assert_eq!(Transducer::parse(&text).unwrap(), t);
    }

    #[test]
    fn epsilon_output_round_trips() {
        let src = "alphabet 0\nstate a\nstate e\nedge a 0 e -\nedge e 0 e 0\n";
        let t = Transducer::parse(src).unwrap();
        assert!(t.output(0, 0).is_empty());
        assert_eq!(t.serialize(), src);
    }

    #[test]
    fn classify_gallery_examples() {
        let tm = Gallery::ThueMorse.build().unwrap();
        let c = tm.classify();
        assert!(c.asynchronous && c.expanding && !c.synchronous && !c.invertible);

        let bi = Gallery::Bicyclic.build().unwrap();
        let c = bi.classify();
        assert!(c.asynchronous && !c.expanding && !c.synchronous && !c.invertible);

        let adding = Gallery::AddingMachine.build().unwrap();
        let c = adding.classify();
        assert!(c.asynchronous && c.expanding && c.synchronous && c.invertible);

        // implication chain
        for t in [tm, bi, adding] {
            let c = t.classify();
            assert!(c.asynchronous);
            assert!(!c.invertible || c.synchronous);
            assert!(!c.synchronous || c.expanding);
        }
    }

    #[test]
    fn dot_export_counts() {
        let t = Transducer::parse(EX21).unwrap();
        let dot = t.to_dot();
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.contains("\"a\";"));
        assert!(dot.contains("\"b\";"));
        assert!(dot.contains("0|11"));

        let bi = Gallery::Bicyclic.build().unwrap();
        let dot = bi.to_dot();
        let node_lines = dot
            .lines()
            .filter(|l| l.ends_with("\";") && !l.contains("->"))
            .count();
        assert_eq!(node_lines, 4);
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.contains("0|ε"));

        let id = Gallery::Identity(vec!["0".into()]).build().unwrap();
        let dot = id.to_dot();
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("0|0"));
    }

    #[test]
    fn partial_parse_allows_missing_edges() {
        let p = PartialTransducer::parse("alphabet 0 1\nstate a\nedge a 0 a 1\n").unwrap();
        assert_eq!(p.step(0, 0), Some(0));
        assert_eq!(p.output(0, 0), Some(&[1usize][..]));
        assert_eq!(p.step(0, 1), None);
    }
}
