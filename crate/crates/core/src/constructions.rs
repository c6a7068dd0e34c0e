//! Automaton-building recipes: inverses, completions, extensions, products,
//! trace-monoid and Post-correspondence automata, and a gallery of named
//! machines.
//!
//! Fresh state and letter names are produced by deterministic suffixing
//! (priming a colliding token until it is free), so serialized outputs are
//! reproducible byte for byte.

use std::collections::HashSet;
use std::sync::Arc;

use thiserror::Error;

use crate::automaton::{PartialTransducer, Transducer};
use crate::words::{Alphabet, CommutationRelation, Word};

/// Errors from the construction recipes.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    /// The input automaton is not invertible.
    #[error("automaton is not invertible")]
    NotInvertible,
    /// The input is not a partial invertible automaton.
    #[error("not a partial invertible automaton: {0}")]
    NotPartialInvertible(String),
    /// The two automata share a letter token.
    #[error("alphabets overlap at `{0}`")]
    AlphabetOverlap(String),
    /// The two automata must have identical alphabets.
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    /// A word list is empty.
    #[error("word list is empty")]
    EmptyList,
    /// Tile and code words must be nonempty to stay expanding.
    #[error("word {0} is empty")]
    EmptyWord(usize),
    /// The two word lists have different lengths.
    #[error("word lists have different lengths")]
    LengthMismatch,
    /// A word is not over the stated alphabet.
    #[error("word is not over the given alphabet")]
    ForeignWord,
    /// The given set is not a prefix code.
    #[error("not a prefix code: `{0}` is a prefix of `{1}`")]
    NotPrefixCode(String, String),
    /// Bad gallery or construction parameters.
    #[error("{0}")]
    BadParams(String),
}

fn fresh(base: &str, used: &HashSet<String>) -> String {
    let mut name = base.to_string();
    while used.contains(&name) {
        name.push('\'');
    }
    name
}

/// Copies a transducer with suffixes appended to every state and letter
/// token. Empty suffixes leave that side unchanged.
pub fn relabeled(t: &Transducer, state_suffix: &str, letter_suffix: &str) -> Transducer {
    let states: Vec<String> = t
        .state_names()
        .iter()
        .map(|s| format!("{s}{state_suffix}"))
        .collect();
    let letters: Vec<String> = t
        .alphabet()
        .letters()
        .iter()
        .map(|l| format!("{l}{letter_suffix}"))
        .collect();
    let alphabet = Alphabet::new(letters).expect("suffixing preserves distinctness");
    let n = alphabet.len();
    let mut trans = Vec::with_capacity(states.len() * n);
    let mut out = Vec::with_capacity(states.len() * n);
    for q in 0..states.len() {
        for l in 0..n {
            trans.push(t.step(q, l));
            out.push(t.output(q, l).to_vec());
        }
    }
    Transducer::from_tables(states, alphabet, trans, out).expect("relabeling preserves validity")
}

/// Disjoint union of two transducers over the *same* alphabet. Colliding
/// state names from `b` are primed.
pub fn union(a: &Transducer, b: &Transducer) -> Result<Transducer, ConstructError> {
    if a.alphabet().as_ref() != b.alphabet().as_ref() {
        return Err(ConstructError::AlphabetMismatch);
    }
    let mut states: Vec<String> = a.state_names().to_vec();
    let mut used: HashSet<String> = states.iter().cloned().collect();
    for s in b.state_names() {
        let name = fresh(s, &used);
        used.insert(name.clone());
        states.push(name);
    }
    let n = a.alphabet().len();
    let offset = a.state_count();
    let mut trans = Vec::new();
    let mut out = Vec::new();
    for q in 0..a.state_count() {
        for l in 0..n {
            trans.push(a.step(q, l));
            out.push(a.output(q, l).to_vec());
        }
    }
    for q in 0..b.state_count() {
        for l in 0..n {
            trans.push(b.step(q, l) + offset);
            out.push(b.output(q, l).to_vec());
        }
    }
    Ok(
        Transducer::from_tables(states, a.alphabet().clone(), trans, out)
            .expect("union of valid tables is valid"),
    )
}

/// The inverse automaton of an invertible transducer: each edge `q -σ|τ-> p`
/// becomes `q⁻¹ -τ|σ-> p⁻¹`. In the union of the two automata, `q · q⁻¹` and
/// `q⁻¹ · q` act as the identity.
pub fn inverse_automaton(t: &Transducer) -> Result<Transducer, ConstructError> {
    if !t.classify().invertible {
        return Err(ConstructError::NotInvertible);
    }
    let states: Vec<String> = t.state_names().iter().map(|s| format!("{s}^-1")).collect();
    let n = t.alphabet().len();
    let mut trans = vec![0usize; t.state_count() * n];
    let mut out = vec![Vec::new(); t.state_count() * n];
    for q in 0..t.state_count() {
        for sigma in 0..n {
            let tau = t.output(q, sigma)[0];
            trans[q * n + tau] = t.step(q, sigma);
            out[q * n + tau] = vec![sigma];
        }
    }
    Ok(
        Transducer::from_tables(states, t.alphabet().clone(), trans, out)
            .expect("inverting a permutation row yields a permutation row"),
    )
}

/// Completes a partial invertible automaton to an invertible one: every
/// state's partial permutation is extended to a full permutation and new
/// transitions are absorbed by a fresh identity sink.
pub fn complete_partial(p: &PartialTransducer) -> Result<Transducer, ConstructError> {
    let n = p.alphabet().len();
    for q in 0..p.state_count() {
        let mut seen = vec![false; n];
        for l in 0..n {
            if let Some(out) = p.output(q, l) {
                if out.len() != 1 {
                    return Err(ConstructError::NotPartialInvertible(format!(
                        "output of ({}, {}) is not a single letter",
                        p.state_names()[q],
                        p.alphabet().letter(l)
                    )));
                }
                if seen[out[0]] {
                    return Err(ConstructError::NotPartialInvertible(format!(
                        "state `{}` outputs `{}` twice",
                        p.state_names()[q],
                        p.alphabet().letter(out[0])
                    )));
                }
                seen[out[0]] = true;
            }
        }
    }

    let used: HashSet<String> = p.state_names().iter().cloned().collect();
    let sink_name = fresh("1", &used);
    let mut states = p.state_names().to_vec();
    states.push(sink_name);
    let sink = states.len() - 1;

    let mut trans = vec![0usize; states.len() * n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); states.len() * n];
    for q in 0..p.state_count() {
        let mut unused_outputs: Vec<usize> = {
            let mut taken = vec![false; n];
            for l in 0..n {
                if let Some(o) = p.output(q, l) {
                    taken[o[0]] = true;
                }
            }
            (0..n).filter(|&i| !taken[i]).collect()
        };
        unused_outputs.reverse(); // pop from the front in alphabet order
        for l in 0..n {
            match (p.step(q, l), p.output(q, l)) {
                (Some(to), Some(o)) => {
                    trans[q * n + l] = to;
                    out[q * n + l] = o.to_vec();
                }
                _ => {
                    trans[q * n + l] = sink;
                    out[q * n + l] = vec![unused_outputs.pop().expect("counts match")];
                }
            }
        }
    }
    for l in 0..n {
        trans[sink * n + l] = sink;
        out[sink * n + l] = vec![l];
    }
    let t = Transducer::from_tables(states, p.alphabet().clone(), trans, out)
        .expect("completion yields complete tables");
    debug_assert!(t.classify().invertible);
    Ok(t)
}

fn merged_alphabet(
    a: &Transducer,
    b: &Transducer,
) -> Result<(Arc<Alphabet>, usize), ConstructError> {
    for tok in b.alphabet().letters() {
        if a.alphabet().index_of(tok).is_some() {
            return Err(ConstructError::AlphabetOverlap(tok.clone()));
        }
    }
    let letters: Vec<String> = a
        .alphabet()
        .letters()
        .iter()
        .chain(b.alphabet().letters())
        .cloned()
        .collect();
    let offset = a.alphabet().len();
    Ok((
        Alphabet::new(letters).expect("disjoint tokens stay distinct"),
        offset,
    ))
}

fn merged_states(a: &Transducer, b: &Transducer) -> Vec<String> {
    let mut states: Vec<String> = a.state_names().to_vec();
    let mut used: HashSet<String> = states.iter().cloned().collect();
    for s in b.state_names() {
        let name = fresh(s, &used);
        used.insert(name.clone());
        states.push(name);
    }
    states
}

/// The normal ideal extension automaton over the disjoint union of the two
/// alphabets: `a`-states act natively on their letters and fix the other
/// side's letters; `b`-states act natively on theirs and *erase* the other
/// side's letters, making every `b`-element absorb every `a`-element.
/// The result is asynchronous.
pub fn normal_ideal_extension(
    a: &Transducer,
    b: &Transducer,
) -> Result<Transducer, ConstructError> {
    let (alphabet, letter_offset) = merged_alphabet(a, b)?;
    let states = merged_states(a, b);
    let n = alphabet.len();
    let state_offset = a.state_count();
    let mut trans = vec![0usize; states.len() * n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); states.len() * n];
    for q in 0..a.state_count() {
        for l in 0..n {
            if l < letter_offset {
                trans[q * n + l] = a.step(q, l);
                out[q * n + l] = a.output(q, l).to_vec();
            } else {
                trans[q * n + l] = q;
                out[q * n + l] = vec![l];
            }
        }
    }
    for q in 0..b.state_count() {
        let row = (state_offset + q) * n;
        for l in 0..n {
            if l < letter_offset {
                trans[row + l] = state_offset + q;
                out[row + l] = Vec::new(); // b-states erase a-letters
            } else {
                trans[row + l] = state_offset + b.step(q, l - letter_offset);
                out[row + l] = b
                    .output(q, l - letter_offset)
                    .iter()
                    .map(|&i| i + letter_offset)
                    .collect();
            }
        }
    }
    Ok(Transducer::from_tables(states, alphabet, trans, out)
        .expect("extension tables are complete"))
}

/// The direct product automaton over the disjoint union of the two
/// alphabets: each side acts natively on its own letters and fixes the other
/// side's letters in place, so the two generator sets commute elementwise.
pub fn direct_product(a: &Transducer, b: &Transducer) -> Result<Transducer, ConstructError> {
    let (alphabet, letter_offset) = merged_alphabet(a, b)?;
    let states = merged_states(a, b);
    let n = alphabet.len();
    let state_offset = a.state_count();
    let mut trans = vec![0usize; states.len() * n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); states.len() * n];
    for q in 0..a.state_count() {
        for l in 0..n {
            if l < letter_offset {
                trans[q * n + l] = a.step(q, l);
                out[q * n + l] = a.output(q, l).to_vec();
            } else {
                trans[q * n + l] = q;
                out[q * n + l] = vec![l];
            }
        }
    }
    for q in 0..b.state_count() {
        let row = (state_offset + q) * n;
        for l in 0..n {
            if l < letter_offset {
                trans[row + l] = state_offset + q;
                out[row + l] = vec![l];
            } else {
                trans[row + l] = state_offset + b.step(q, l - letter_offset);
                out[row + l] = b
                    .output(q, l - letter_offset)
                    .iter()
                    .map(|&i| i + letter_offset)
                    .collect();
            }
        }
    }
    Ok(Transducer::from_tables(states, alphabet, trans, out).expect("product tables are complete"))
}

/// Synchronous automaton whose states `y1 … yn` generate the free partially
/// commutative monoid with the given commuting pairs.
///
/// Per generator there is an adding-machine block on letters `{a_i, b_i}`;
/// per non-commuting pair `i < j` a lamplighter block on `{c_ij, d_ij}`;
/// everywhere else states act as the identity. The extra state `1` is an
/// identity sink.
pub fn fpcm_automaton(rel: &CommutationRelation) -> Result<Transducer, ConstructError> {
    let n = rel.generators();
    if n == 0 {
        return Err(ConstructError::BadParams(
            "need at least one generator".into(),
        ));
    }
    let pair_name = |prefix: &str, i: usize, j: usize| {
        if n <= 9 {
            format!("{prefix}{}{}", i + 1, j + 1)
        } else {
            format!("{prefix}{}_{}", i + 1, j + 1)
        }
    };
    let noncommuting: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !rel.commutes(i, j))
        .collect();

    let mut letters: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    letters.extend((1..=n).map(|i| format!("b{i}")));
    for &(i, j) in &noncommuting {
        letters.push(pair_name("c", i, j));
    }
    for &(i, j) in &noncommuting {
        letters.push(pair_name("d", i, j));
    }
    let alphabet = Alphabet::new(letters).expect("generated tokens are distinct");
    let total = alphabet.len();
    let c_base = 2 * n;
    let d_base = 2 * n + noncommuting.len();

    let mut states: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    states.push("1".to_string());
    let sink = n;

    // identity behavior by default
    let mut trans: Vec<usize> = vec![sink; states.len() * total];
    let mut out: Vec<Vec<usize>> = (0..states.len())
        .flat_map(|_| (0..total).map(|l| vec![l]))
        .collect();

    for i in 0..n {
        let row = i * total;
        // adding machine block on {a_i, b_i}
        out[row + i] = vec![n + i]; // a_i -> b_i, to sink
        trans[row + n + i] = i; // b_i -> a_i, stay
        out[row + n + i] = vec![i];
    }
    for (k, &(i, j)) in noncommuting.iter().enumerate() {
        let c = c_base + k;
        let d = d_base + k;
        // lamplighter block: y_i swaps the letters, y_j preserves them;
        // both states swap on c and stay on d
        trans[i * total + c] = j;
        out[i * total + c] = vec![d];
        trans[i * total + d] = i;
        out[i * total + d] = vec![c];
        trans[j * total + c] = i;
        out[j * total + c] = vec![c];
        trans[j * total + d] = j;
        out[j * total + d] = vec![d];
    }

    let t =
        Transducer::from_tables(states, alphabet, trans, out).expect("fpcm tables are complete");
    debug_assert!(t.classify().synchronous);
    Ok(t)
}

/// The common alphabet of the Post-correspondence constructions over a base
/// alphabet `X` with `n` tiles: `X`, then index letters `1 … n`, then the
/// marker letters `z1, z2`. Returns the alphabet together with the ids of
/// the index letters and of the two markers.
pub fn pcp_alphabet(x: &Arc<Alphabet>, n: usize) -> (Arc<Alphabet>, Vec<usize>, usize, usize) {
    let mut letters: Vec<String> = x.letters().to_vec();
    let mut used: HashSet<String> = letters.iter().cloned().collect();
    let mut index_ids = Vec::with_capacity(n);
    for i in 1..=n {
        let name = fresh(&i.to_string(), &used);
        used.insert(name.clone());
        index_ids.push(letters.len());
        letters.push(name);
    }
    let z1 = letters.len();
    let name = fresh("z1", &used);
    used.insert(name.clone());
    letters.push(name);
    let z2 = letters.len();
    letters.push(fresh("z2", &used));
    (
        Alphabet::new(letters).expect("freshened tokens are distinct"),
        index_ids,
        z1,
        z2,
    )
}

fn check_tiles(x: &Arc<Alphabet>, tiles: &[Word]) -> Result<(), ConstructError> {
    if tiles.is_empty() {
        return Err(ConstructError::EmptyList);
    }
    for (i, w) in tiles.iter().enumerate() {
        if w.alphabet().as_ref() != x.as_ref() {
            return Err(ConstructError::ForeignWord);
        }
        if w.is_empty() {
            return Err(ConstructError::EmptyWord(i + 1));
        }
    }
    Ok(())
}

/// The two-state expanding automaton encoding a Post Correspondence instance
/// `(V, W)` over `X`: both states are self-looping; state `a` outputs `v_i`
/// on index letter `i` and the marker `z1` elsewhere, state `b` outputs
/// `w_i` and the marker `z2`. Words on which `a` and `b` agree use index
/// letters only and spell bounded solutions of the instance.
pub fn pcp_automaton(
    x: &Arc<Alphabet>,
    v: &[Word],
    w: &[Word],
) -> Result<Transducer, ConstructError> {
    if v.len() != w.len() {
        return Err(ConstructError::LengthMismatch);
    }
    check_tiles(x, v)?;
    check_tiles(x, w)?;
    let n_tiles = v.len();
    let (alphabet, index_ids, z1, z2) = pcp_alphabet(x, n_tiles);
    let total = alphabet.len();
    let states = vec!["a".to_string(), "b".to_string()];
    let mut trans = vec![0usize; 2 * total];
    for l in 0..total {
        trans[total + l] = 1;
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); 2 * total];
    for l in 0..total {
        out[l] = vec![z1];
        out[total + l] = vec![z2];
    }
    for (i, &letter) in index_ids.iter().enumerate() {
        out[letter] = v[i].letters().to_vec();
        out[total + letter] = w[i].letters().to_vec();
    }
    Ok(Transducer::from_tables(states, alphabet, trans, out).expect("pcp tables are complete"))
}

/// The decoder automaton for a prefix code, with its distinguished state.
#[derive(Debug, Clone)]
pub struct PrefixCodeDecoder {
    /// The asynchronous decoder automaton.
    pub transducer: Transducer,
    /// Id of the decoding state `c'`.
    pub decoder_state: usize,
}

/// Builds the asynchronous decoder for a prefix code `C = {c_1, …, c_m}`
/// over `X`: a trie of the code words rooted at `c'` (common prefixes
/// folded), interior edges output nothing, the final edge of branch `i`
/// outputs the index letter `i` and loops back to `c'`. Undefined entries
/// route to an identity sink with output `z1`, so decoding a word outside
/// the code's image is detectable by the marker.
pub fn prefix_code_decoder(
    x: &Arc<Alphabet>,
    code: &[Word],
) -> Result<PrefixCodeDecoder, ConstructError> {
    check_tiles(x, code)?;
    for (i, u) in code.iter().enumerate() {
        for (j, w) in code.iter().enumerate() {
            if i != j && u.is_prefix_of(w).unwrap_or(false) {
                return Err(ConstructError::NotPrefixCode(u.render(), w.render()));
            }
        }
    }

    let m = code.len();
    let (alphabet, index_ids, z1, _) = pcp_alphabet(x, m);
    let total = alphabet.len();

    // trie over the code words; node 0 is the root c'
    type TrieRow = Vec<Option<(usize, Vec<usize>)>>;
    let mut names = vec!["c'".to_string()];
    let mut next: Vec<TrieRow> = vec![vec![None; total]];
    let root = 0usize;
    for (i, word) in code.iter().enumerate() {
        let mut cur = root;
        let letters = word.letters();
        for (pos, &letter) in letters.iter().enumerate() {
            let last = pos + 1 == letters.len();
            if last {
                assert!(
                    next[cur][letter].is_none(),
                    "prefix code rules out edge conflicts"
                );
                next[cur][letter] = Some((root, vec![index_ids[i]]));
            } else {
                match &next[cur][letter] {
                    Some((to, out)) => {
                        assert!(out.is_empty(), "prefix code rules out edge conflicts");
                        cur = *to;
                    }
                    None => {
                        names.push(format!("n{}", names.len()));
                        next.push(vec![None; total]);
                        let node = next.len() - 1;
                        next[cur][letter] = Some((node, Vec::new()));
                        cur = node;
                    }
                }
            }
        }
    }

    // identity sink absorbing everything undefined, with marker output
    let used: HashSet<String> = names.iter().cloned().collect();
    names.push(fresh("i", &used));
    let sink = names.len() - 1;
    let mut trans = vec![sink; names.len() * total];
    let mut out: Vec<Vec<usize>> = vec![vec![z1]; names.len() * total];
    for (q, row) in next.iter().enumerate() {
        for (letter, entry) in row.iter().enumerate() {
            if let Some((to, word)) = entry {
                trans[q * total + letter] = *to;
                out[q * total + letter] = word.clone();
            }
        }
    }
    for l in 0..total {
        trans[sink * total + l] = sink;
        out[sink * total + l] = vec![l];
    }
    Ok(PrefixCodeDecoder {
        transducer: Transducer::from_tables(names, alphabet, trans, out)
            .expect("decoder tables are complete"),
        decoder_state: root,
    })
}

/// The named automata used throughout the test suites and the CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gallery {
    /// Two states over `{0,1}`; `a` is a semigroup identity that is not the
    /// identity function.
    Example21,
    /// Two states realizing the presentation `b^m = b^n`, `ab = b`
    /// (requires `1 < m < n`).
    Smn(usize, usize),
    /// Four states over `{0}` whose submonoid generated by `a, c` is the
    /// bicyclic monoid; state `b` erases its input.
    Bicyclic,
    /// One expanding state implementing the substitutions `0→01`, `1→10`.
    ThueMorse,
    /// The binary odometer `q` with identity sink `e`.
    AddingMachine,
    /// The two-state lamplighter automaton over `{0,1}`.
    Lamplighter,
    /// The one-state identity automaton over the given letters.
    Identity(Vec<String>),
}

impl Gallery {
    /// Builds the automaton.
    pub fn build(&self) -> Result<Transducer, ConstructError> {
        let from =
            |states: Vec<&str>, letters: Vec<&str>, trans: Vec<usize>, out: Vec<Vec<usize>>| {
                let alphabet = Alphabet::new(letters).expect("fixed alphabets are valid");
                Transducer::from_tables(
                    states.into_iter().map(String::from).collect(),
                    alphabet,
                    trans,
                    out,
                )
                .expect("gallery tables are complete")
            };
        match self {
            Gallery::Example21 => Ok(from(
                vec!["a", "b"],
                vec!["0", "1"],
                vec![0, 0, 0, 0],
                vec![vec![1, 1], vec![1], vec![1, 1, 1], vec![1, 1]],
            )),
            Gallery::Smn(m, n) => {
                let (m, n) = (*m, *n);
                if !(1 < m && m < n) {
                    return Err(ConstructError::BadParams(format!(
                        "smn requires 1 < m < n, got ({m}, {n})"
                    )));
                }
                let letters: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
                let alphabet = Alphabet::new(letters).expect("generated tokens are distinct");
                let mut trans = Vec::new();
                let mut out = Vec::new();
                // state a doubles the first letter and fixes the rest
                for i in 0..n {
                    trans.push(0);
                    out.push(if i == 0 { vec![0, 0] } else { vec![i] });
                }
                // state b shifts letters, wrapping the last onto s_{m+1}
                for i in 0..n {
                    trans.push(1);
                    out.push(vec![if i + 1 < n { i + 1 } else { m }]);
                }
                Ok(
                    Transducer::from_tables(vec!["a".into(), "b".into()], alphabet, trans, out)
                        .expect("smn tables are complete"),
                )
            }
            Gallery::Bicyclic => Ok(from(
                vec!["a", "b", "c", "e"],
                vec!["0"],
                vec![1, 3, 3, 3],
                vec![vec![0], vec![], vec![0, 0], vec![0]],
            )),
            Gallery::ThueMorse => Ok(from(
                vec!["a"],
                vec!["0", "1"],
                vec![0, 0],
                vec![vec![0, 1], vec![1, 0]],
            )),
            Gallery::AddingMachine => Ok(from(
                vec!["q", "e"],
                vec!["0", "1"],
                vec![1, 0, 1, 1],
                vec![vec![1], vec![0], vec![0], vec![1]],
            )),
            Gallery::Lamplighter => Ok(from(
                vec!["a", "b"],
                vec!["0", "1"],
                vec![1, 0, 0, 1],
                vec![vec![1], vec![0], vec![0], vec![1]],
            )),
            Gallery::Identity(letters) => {
                let alphabet = Alphabet::new(letters.clone())
                    .map_err(|e| ConstructError::BadParams(e.to_string()))?;
                let n = alphabet.len();
                Ok(Transducer::from_tables(
                    vec!["i".into()],
                    alphabet,
                    vec![0; n],
                    (0..n).map(|l| vec![l]).collect(),
                )
                .expect("identity tables are complete"))
            }
        }
    }
}
