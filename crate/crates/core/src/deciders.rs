//! Decision procedures and bounded searches on tree actions: the word
//! problem, injectivity, periodicity, residual separation, fixed points and
//! boundary fixed-point censuses.
//!
//! The word problem runs a breadth-first search over pairs of section tuples,
//! comparing the induced letter maps at every visited pair. Sections of an
//! `m`-factor element are again `m`-factor tuples, so the pair space is
//! finite and the search terminates. Letters are explored in alphabet order,
//! which makes the first reported difference witness the shortlex-least word
//! on which the two elements disagree.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::action::{act_and_section, Element};
use crate::automaton::Transducer;
use crate::words::{Alphabet, Word};

/// Errors from the deciders.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeciderError {
    /// The two elements belong to different automata.
    #[error("automaton mismatch")]
    AutomatonMismatch,
    /// The operation is only sound for expanding automata.
    #[error("automaton is not expanding")]
    NotExpanding,
    /// The operation is only defined for synchronous automata.
    #[error("automaton is not synchronous")]
    NotSynchronous,
    /// No separation witness exists for equal elements.
    #[error("elements are equal; no separating witness exists")]
    ElementsEqual,
    /// A state id is out of range.
    #[error("state id {0} out of range")]
    StateOutOfRange(usize),
    /// A letter id is out of range.
    #[error("letter index {0} out of range")]
    LetterOutOfRange(usize),
}

fn check_pair(s: &Element, t: &Element) -> Result<(), DeciderError> {
    if !s.same_automaton(t) {
        return Err(DeciderError::AutomatonMismatch);
    }
    Ok(())
}

/// The shortlex-least word on which the two elements act differently, or
/// `None` when they denote the same function on the whole tree.
pub fn difference_witness(s: &Element, t: &Element) -> Result<Option<Word>, DeciderError> {
    check_pair(s, t)?;
    let aut = s.automaton();
    let n = aut.alphabet().len();
    let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    let mut queue: VecDeque<(Vec<usize>, Vec<usize>, Vec<usize>)> = VecDeque::new();
    seen.insert((s.factors().to_vec(), t.factors().to_vec()));
    queue.push_back((s.factors().to_vec(), t.factors().to_vec(), Vec::new()));
    while let Some((fs, ft, path)) = queue.pop_front() {
        for letter in 0..n {
            let (out_s, sec_s) = act_and_section(aut, &fs, &[letter]);
            let (out_t, sec_t) = act_and_section(aut, &ft, &[letter]);
            let mut word = path.clone();
            word.push(letter);
            if out_s != out_t {
                return Ok(Some(Word::from_indices_unchecked(
                    aut.alphabet().clone(),
                    word,
                )));
            }
            if seen.insert((sec_s.clone(), sec_t.clone())) {
                queue.push_back((sec_s, sec_t, word));
            }
        }
    }
    Ok(None)
}

/// Uniform word problem: true iff the two elements act identically on every
/// word. Works for asynchronous automata as well; termination rests on the
/// bounded factor length of sections.
pub fn equal(s: &Element, t: &Element) -> Result<bool, DeciderError> {
    Ok(difference_witness(s, t)?.is_none())
}

/// True iff the element is the identity *function* on the tree.
pub fn is_identity_function(s: &Element) -> Result<bool, DeciderError> {
    let aut = s.automaton();
    let n = aut.alphabet().len();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    seen.insert(s.factors().to_vec());
    queue.push_back(s.factors().to_vec());
    while let Some(fs) = queue.pop_front() {
        for letter in 0..n {
            let (out, sec) = act_and_section(aut, &fs, &[letter]);
            if out != [letter] {
                return Ok(false);
            }
            if seen.insert(sec.clone()) {
                queue.push_back(sec);
            }
        }
    }
    Ok(true)
}

/// True iff the element is a semigroup identity: `s·q = q = q·s` for every
/// generator state `q`. A semigroup identity need not be the identity
/// function on the tree.
pub fn is_identity_element(s: &Element) -> Result<bool, DeciderError> {
    let aut = s.automaton();
    for q in 0..aut.state_count() {
        let g = Element::state(aut.clone(), q).expect("state ids are in range");
        let sg = s.compose(&g).expect("same automaton");
        let gs = g.compose(s).expect("same automaton");
        if !equal(&sg, &g)? || !equal(&gs, &g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `s·s = s`.
pub fn is_idempotent(s: &Element) -> Result<bool, DeciderError> {
    let ss = s.compose(s).expect("same automaton");
    equal(s, &ss)
}

/// A nondeterministic acceptor built from a transducer's outputs. Interior
/// states subdivide each transducer edge into single-letter steps; the
/// final states are the original transducer states, so accepted paths
/// correspond exactly to complete input paths.
#[derive(Debug, Clone)]
pub struct PathNfa {
    /// Total number of states; original states keep their transducer ids.
    pub state_count: usize,
    /// The output alphabet labeling the edges.
    pub alphabet: Arc<Alphabet>,
    /// Edge relation `(from, letter, to)`.
    pub edges: Vec<(usize, usize, usize)>,
    /// The start state.
    pub start: usize,
    /// Acceptance flags, true exactly on original states.
    pub finals: Vec<bool>,
}

/// Builds the path acceptor of an expanding transducer from state `q`:
/// each edge `q1 -σ|v1…vk-> q2` becomes a path labeled `v1…vk` through
/// fresh interior states.
pub fn build_path_nfa(t: &Transducer, q: usize) -> Result<PathNfa, DeciderError> {
    if q >= t.state_count() {
        return Err(DeciderError::StateOutOfRange(q));
    }
    if !t.classify().expanding {
        return Err(DeciderError::NotExpanding);
    }
    let n = t.alphabet().len();
    let originals = t.state_count();
    let mut state_count = originals;
    let mut edges = Vec::new();
    for q1 in 0..originals {
        for letter in 0..n {
            let output = t.output(q1, letter);
            let target = t.step(q1, letter);
            let mut cur = q1;
            for (i, &v) in output.iter().enumerate() {
                let next = if i + 1 == output.len() {
                    target
                } else {
                    state_count += 1;
                    state_count - 1
                };
                edges.push((cur, v, next));
                cur = next;
            }
        }
    }
    let mut finals = vec![false; state_count];
    for f in finals.iter_mut().take(originals) {
        *f = true;
    }
    Ok(PathNfa {
        state_count,
        alphabet: t.alphabet().clone(),
        edges,
        start: q,
        finals,
    })
}

/// Decides whether distinct accepting paths always carry distinct label
/// words, by the subset construction restricted to reachable subsets.
///
/// The path map fails to be injective exactly when some reachable subset
/// has, on one letter, two distinct member states with edges into final
/// states, or a single member state with two distinct same-letter edges
/// into final states.
pub fn nfa_path_injective(m: &PathNfa) -> bool {
    let n = m.alphabet.len();
    // adjacency indexed by letter, then source state
    let mut adj: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); m.state_count]; n];
    for &(from, letter, to) in &m.edges {
        adj[letter][from].push(to);
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    let start = vec![m.start];
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(subset) = queue.pop_front() {
        for letter_edges in &adj {
            let mut next: Vec<usize> = Vec::new();
            let mut states_hitting_finals = 0usize;
            for &r in &subset {
                let mut final_edges = 0usize;
                for &to in &letter_edges[r] {
                    if m.finals[to] {
                        final_edges += 1;
                    }
                    next.push(to);
                }
                if final_edges > 0 {
                    states_hitting_finals += 1;
                }
                if final_edges >= 2 || states_hitting_finals >= 2 {
                    return false;
                }
            }
            next.sort_unstable();
            next.dedup();
            if !next.is_empty() && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    true
}

/// Decides whether state `q` induces an injective function on the tree.
pub fn injective(t: &Transducer, q: usize) -> Result<bool, DeciderError> {
    Ok(nfa_path_injective(&build_path_nfa(t, q)?))
}

/// Least `(m, n)` with `m < n ≤ bound` and `s^m = s^n`, if any.
pub fn find_period(s: &Element, bound: usize) -> Result<Option<(usize, usize)>, DeciderError> {
    let powers: Vec<Element> = (1..=bound).map(|k| s.pow(k)).collect();
    for m in 1..bound {
        for n in m + 1..=bound {
            if equal(&powers[m - 1], &powers[n - 1])? {
                return Ok(Some((m, n)));
            }
        }
    }
    Ok(None)
}

/// A finite separating quotient for two distinct elements of an expanding
/// automaton semigroup: both act as transformations of the words of length
/// at most [`depth`](SeparationWitness::depth) plus a sink `$`, and the two
/// transformation tables differ.
#[derive(Debug, Clone)]
pub struct SeparationWitness {
    automaton: Arc<Transducer>,
    /// Least tree level on which the two elements act differently.
    pub level: usize,
    /// Truncation depth: the longest image of a level-`level` word.
    pub depth: usize,
    domain: Vec<Word>,
    index: HashMap<Vec<usize>, usize>,
    /// Table of the first element; entry `i` is the image of `domain[i]`,
    /// with `domain.len()` standing for the sink `$`.
    pub table_a: Vec<usize>,
    /// Table of the second element, same encoding.
    pub table_b: Vec<usize>,
}

impl SeparationWitness {
    /// The words of the truncated tree, in shortlex order (the sink `$` is
    /// the extra point at index `domain().len()`).
    pub fn domain(&self) -> &[Word] {
        &self.domain
    }

    /// Index encoding the sink `$`.
    pub fn sink(&self) -> usize {
        self.domain.len()
    }

    /// The transformation induced by an arbitrary element on this witness's
    /// truncated tree: images stay if they fit, everything else (and the
    /// sink) goes to `$`.
    pub fn transformation_table(&self, s: &Element) -> Result<Vec<usize>, DeciderError> {
        if *s.automaton().as_ref() != *self.automaton.as_ref() {
            return Err(DeciderError::AutomatonMismatch);
        }
        let mut table = Vec::with_capacity(self.domain.len());
        for w in &self.domain {
            let image = s
                .act(w)
                .expect("domain words are over the automaton alphabet");
            table.push(
                self.index
                    .get(image.letters())
                    .copied()
                    .unwrap_or(self.domain.len()),
            );
        }
        Ok(table)
    }

    /// First domain index where the two stored tables differ.
    pub fn first_difference(&self) -> Option<usize> {
        (0..self.domain.len()).find(|&i| self.table_a[i] != self.table_b[i])
    }
}

/// Separates two distinct elements of an expanding automaton through a
/// finite transformation semigroup: finds the least level `n` where their
/// actions differ, truncates the tree at the longest level-`n` image, and
/// tabulates both actions with out-of-range images sent to a sink `$`.
pub fn separate(a: &Element, b: &Element) -> Result<SeparationWitness, DeciderError> {
    check_pair(a, b)?;
    let aut = a.automaton();
    if !aut.classify().expanding {
        return Err(DeciderError::NotExpanding);
    }
    let witness = difference_witness(a, b)?.ok_or(DeciderError::ElementsEqual)?;
    let level = witness.len();
    let n_letters = aut.alphabet().len();

    let mut depth = 0usize;
    let mut level_words = vec![Vec::new()];
    for _ in 0..level {
        level_words = extend_each(&level_words, &(0..n_letters).collect::<Vec<_>>());
    }
    for ls in &level_words {
        let (ia, _) = act_and_section(aut, a.factors(), ls);
        let (ib, _) = act_and_section(aut, b.factors(), ls);
        depth = depth.max(ia.len()).max(ib.len());
    }

    let mut domain = Vec::new();
    let mut index = HashMap::new();
    let mut layer = vec![Vec::new()];
    for len in 0..=depth {
        if len > 0 {
            layer = extend_each(&layer, &(0..n_letters).collect::<Vec<_>>());
        }
        for ls in &layer {
            index.insert(ls.clone(), domain.len());
            domain.push(Word::from_indices_unchecked(
                aut.alphabet().clone(),
                ls.clone(),
            ));
        }
    }

    let mut witness = SeparationWitness {
        automaton: aut.clone(),
        level,
        depth,
        domain,
        index,
        table_a: Vec::new(),
        table_b: Vec::new(),
    };
    witness.table_a = witness.transformation_table(a)?;
    witness.table_b = witness.transformation_table(b)?;
    debug_assert_ne!(witness.table_a, witness.table_b);
    Ok(witness)
}

fn extend_each(words: &[Vec<usize>], letters: &[usize]) -> Vec<Vec<usize>> {
    words
        .iter()
        .flat_map(|w| {
            letters.iter().map(move |&l| {
                let mut next = w.clone();
                next.push(l);
                next
            })
        })
        .collect()
}

fn checked_letters(
    alphabet: &Alphabet,
    restrict: Option<&[usize]>,
) -> Result<Vec<usize>, DeciderError> {
    match restrict {
        None => Ok((0..alphabet.len()).collect()),
        Some(subset) => {
            let mut letters: Vec<usize> = subset.to_vec();
            if let Some(&bad) = letters.iter().find(|&&l| l >= alphabet.len()) {
                return Err(DeciderError::LetterOutOfRange(bad));
            }
            letters.sort_unstable();
            letters.dedup();
            Ok(letters)
        }
    }
}

/// All nonempty fixed words of `s` up to the given length, optionally over a
/// restricted letter set, in shortlex order. Bounded search only: the
/// unbounded question is undecidable for asynchronous automata.
pub fn fixed_words(
    s: &Element,
    max_len: usize,
    restrict: Option<&[usize]>,
) -> Result<Vec<Word>, DeciderError> {
    let aut = s.automaton();
    let letters = checked_letters(aut.alphabet(), restrict)?;
    let mut found = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 1..=max_len {
        layer = extend_each(&layer, &letters);
        for ls in &layer {
            let (image, _) = act_and_section(aut, s.factors(), ls);
            if image == *ls {
                found.push(Word::from_indices_unchecked(
                    aut.alphabet().clone(),
                    ls.clone(),
                ));
            }
        }
    }
    Ok(found)
}

/// All nonempty words up to the given length on which the two elements
/// agree; bounded search for the undecidable agreement problem.
pub fn agreement_words(
    s: &Element,
    t: &Element,
    max_len: usize,
) -> Result<Vec<Word>, DeciderError> {
    check_pair(s, t)?;
    let aut = s.automaton();
    let letters: Vec<usize> = (0..aut.alphabet().len()).collect();
    let mut found = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 1..=max_len {
        layer = extend_each(&layer, &letters);
        for ls in &layer {
            let (im_s, _) = act_and_section(aut, s.factors(), ls);
            let (im_t, _) = act_and_section(aut, t.factors(), ls);
            if im_s == im_t {
                found.push(Word::from_indices_unchecked(
                    aut.alphabet().clone(),
                    ls.clone(),
                ));
            }
        }
    }
    Ok(found)
}

/// An eventually periodic boundary point `prefix · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryPoint {
    /// The finite prefix (possibly empty).
    pub prefix: Word,
    /// The repeated cycle (nonempty, primitive, rolled left as far as
    /// possible into the prefix).
    pub cycle: Word,
}

/// Census of the fixed boundary points of a synchronous state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryCensus {
    /// No fixed boundary point.
    Zero,
    /// Finitely many, all eventually periodic, listed without duplicates.
    Finite(Vec<BoundaryPoint>),
    /// Infinitely many.
    Infinite,
}

/// Counts the fixed points of state `q` on the boundary of the tree.
///
/// For a synchronous automaton the fixed boundary points of `q` are exactly
/// the labels of infinite inactive paths (edges labeled `σ|σ`) from `q`.
/// There are infinitely many iff the inactive subgraph reachable from `q`
/// contains, at or after a cycle, a state with two inactive continuations;
/// otherwise the finitely many paths are eventually periodic and are
/// enumerated as (prefix, cycle) pairs.
pub fn boundary_fixed_census(t: &Transducer, q: usize) -> Result<BoundaryCensus, DeciderError> {
    if q >= t.state_count() {
        return Err(DeciderError::StateOutOfRange(q));
    }
    if !t.classify().synchronous {
        return Err(DeciderError::NotSynchronous);
    }
    let n = t.alphabet().len();
    let states = t.state_count();
    // inactive adjacency: edges whose output equals their input
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); states];
    for (v, edges) in adj.iter_mut().enumerate() {
        for letter in 0..n {
            if t.output(v, letter) == [letter] {
                edges.push((letter, t.step(v, letter)));
            }
        }
    }

    // states lying on an inactive cycle
    let mut on_cycle = vec![false; states];
    for v in 0..states {
        let mut reach = vec![false; states];
        let mut stack: Vec<usize> = adj[v].iter().map(|&(_, w)| w).collect();
        while let Some(u) = stack.pop() {
            if u == v {
                on_cycle[v] = true;
                break;
            }
            if !reach[u] {
                reach[u] = true;
                stack.extend(adj[u].iter().map(|&(_, w)| w));
            }
        }
    }

    // live states: those that reach a cycle through inactive edges
    let mut live = on_cycle.clone();
    loop {
        let mut changed = false;
        for v in 0..states {
            if !live[v] && adj[v].iter().any(|&(_, w)| live[w]) {
                live[v] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if !live[q] {
        return Ok(BoundaryCensus::Zero);
    }

    // restrict to live targets; every live state keeps at least one edge
    let live_adj: Vec<Vec<(usize, usize)>> = (0..states)
        .map(|v| adj[v].iter().copied().filter(|&(_, w)| live[w]).collect())
        .collect();
    let reach_from = |starts: &[usize]| -> Vec<bool> {
        let mut seen = vec![false; states];
        let mut stack = starts.to_vec();
        for &s in starts {
            seen[s] = true;
        }
        while let Some(u) = stack.pop() {
            for &(_, w) in &live_adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    };
    let reachable = reach_from(&[q]);
    let cycle_starts: Vec<usize> = (0..states)
        .filter(|&v| reachable[v] && on_cycle[v])
        .collect();
    let after_cycle = reach_from(&cycle_starts);
    if (0..states).any(|v| after_cycle[v] && live_adj[v].len() >= 2) {
        return Ok(BoundaryCensus::Infinite);
    }

    // finitely many paths: branch through the acyclic region, then follow
    // the unique continuation into its cycle
    let mut points = HashSet::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(q, Vec::new())];
    while let Some((v, path)) = stack.pop() {
        if after_cycle[v] {
            let (mu, lambda) = deterministic_tail(v, &live_adj);
            let mut prefix = path.clone();
            prefix.extend(mu);
            points.insert(normalize_point(t.alphabet(), prefix, lambda));
        } else {
            for &(letter, w) in &live_adj[v] {
                let mut next = path.clone();
                next.push(letter);
                stack.push((w, next));
            }
        }
    }
    let mut points: Vec<BoundaryPoint> = points.into_iter().collect();
    points.sort_by(|a, b| {
        crate::words::shortlex(a.prefix.letters(), b.prefix.letters())
            .then_with(|| crate::words::shortlex(a.cycle.letters(), b.cycle.letters()))
    });
    Ok(BoundaryCensus::Finite(points))
}

/// Follows the unique live continuation from `v` until a state repeats,
/// splitting the letters into the pre-cycle part and the cycle.
fn deterministic_tail(v: usize, live_adj: &[Vec<(usize, usize)>]) -> (Vec<usize>, Vec<usize>) {
    let mut order = vec![v];
    let mut letters = Vec::new();
    let mut cur = v;
    loop {
        let (letter, next) = live_adj[cur][0];
        letters.push(letter);
        if let Some(pos) = order.iter().position(|&u| u == next) {
            return (letters[..pos].to_vec(), letters[pos..].to_vec());
        }
        order.push(next);
        cur = next;
    }
}

/// Canonicalizes an eventually periodic word: the cycle is replaced by its
/// primitive root and rolled into the prefix as far as possible.
fn normalize_point(
    alphabet: &Arc<Alphabet>,
    mut prefix: Vec<usize>,
    mut cycle: Vec<usize>,
) -> BoundaryPoint {
    for d in 1..=cycle.len() {
        if cycle.len().is_multiple_of(d) && cycle.chunks(d).all(|c| c == &cycle[..d]) {
            cycle.truncate(d);
            break;
        }
    }
    while let Some(&last) = prefix.last() {
        if last == *cycle.last().expect("cycles are nonempty") {
            prefix.pop();
            cycle.rotate_right(1);
        } else {
            break;
        }
    }
    BoundaryPoint {
        prefix: Word::from_indices_unchecked(alphabet.clone(), prefix),
        cycle: Word::from_indices_unchecked(alphabet.clone(), cycle),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{union, Gallery};

    fn arc(g: Gallery) -> Arc<Transducer> {
        Arc::new(g.build().unwrap())
    }

    fn elt(t: &Arc<Transducer>, text: &str) -> Element {
        Element::parse(t, text).unwrap()
    }

    #[test]
    fn equal_examples() {
        let ex = arc(Gallery::Example21);
        assert!(equal(&elt(&ex, "a"), &elt(&ex, "a a")).unwrap());
        assert!(equal(&elt(&ex, "a b"), &elt(&ex, "b a")).unwrap());
        assert!(equal(&elt(&ex, "a b"), &elt(&ex, "b")).unwrap());

        let tm = arc(Gallery::ThueMorse);
        assert!(!equal(&elt(&tm, "a"), &elt(&tm, "a a")).unwrap());

        let smn = arc(Gallery::Smn(2, 3));
        assert!(equal(&elt(&smn, "b b"), &elt(&smn, "b b b")).unwrap());
        assert!(!equal(&elt(&smn, "b"), &elt(&smn, "b b")).unwrap());
    }

    #[test]
    fn equal_rejects_mixed_automata() {
        let ex = arc(Gallery::Example21);
        let tm = arc(Gallery::ThueMorse);
        assert_eq!(
            equal(&elt(&ex, "a"), &elt(&tm, "a")),
            Err(DeciderError::AutomatonMismatch)
        );
    }

    #[test]
    fn difference_witness_is_shortlex_least() {
        let tm = arc(Gallery::ThueMorse);
        let w = difference_witness(&elt(&tm, "a"), &elt(&tm, "a a"))
            .unwrap()
            .unwrap();
        assert_eq!(w.render(), "0");

        let bi = arc(Gallery::Bicyclic);
        let w = difference_witness(&elt(&bi, "c a"), &elt(&bi, "e"))
            .unwrap()
            .unwrap();
        assert_eq!(w.render(), "0");
    }

    #[test]
    fn identity_function_examples() {
        let id = arc(Gallery::Identity(vec!["0".into(), "1".into()]));
        assert!(is_identity_function(&elt(&id, "i")).unwrap());

        let ex = arc(Gallery::Example21);
        assert!(!is_identity_function(&elt(&ex, "a")).unwrap());

        let adding = Gallery::AddingMachine.build().unwrap();
        let inv = crate::constructions::inverse_automaton(&adding).unwrap();
        let both = Arc::new(union(&adding, &inv).unwrap());
        assert!(is_identity_function(&elt(&both, "q q^-1")).unwrap());
    }

    #[test]
    fn identity_element_examples() {
        let ex = arc(Gallery::Example21);
        assert!(is_identity_element(&elt(&ex, "a")).unwrap());
        // a is a semigroup identity without being the identity function
        assert!(!is_identity_function(&elt(&ex, "a")).unwrap());

        let tm = arc(Gallery::ThueMorse);
        assert!(!is_identity_element(&elt(&tm, "a")).unwrap());

        let bi = arc(Gallery::Bicyclic);
        assert!(is_identity_element(&elt(&bi, "e")).unwrap());
    }

    #[test]
    fn idempotent_examples() {
        let ex = arc(Gallery::Example21);
        assert!(is_idempotent(&elt(&ex, "a")).unwrap());
        let tm = arc(Gallery::ThueMorse);
        assert!(!is_idempotent(&elt(&tm, "a")).unwrap());
        let id = arc(Gallery::Identity(vec!["0".into()]));
        assert!(is_idempotent(&elt(&id, "i")).unwrap());
    }

    #[test]
    fn path_nfa_shapes() {
        let tm = Gallery::ThueMorse.build().unwrap();
        let m = build_path_nfa(&tm, 0).unwrap();
        assert_eq!(m.state_count, 3); // one original, two interior
        assert_eq!(m.edges.len(), 4);
        assert_eq!(m.finals.iter().filter(|&&f| f).count(), 1);

        let adding = Gallery::AddingMachine.build().unwrap();
        let m = build_path_nfa(&adding, 0).unwrap();
        assert_eq!(m.state_count, 2); // synchronous: no interior states

        let ex = Gallery::Example21.build().unwrap();
        let m = build_path_nfa(&ex, ex.state_id("b").unwrap()).unwrap();
        // b's 0-edge outputs three letters: a path of length 3
        assert!(m.edges.iter().any(|&(from, _, _)| from >= 2));

        let bi = Gallery::Bicyclic.build().unwrap();
        assert_eq!(
            build_path_nfa(&bi, 0).unwrap_err(),
            DeciderError::NotExpanding
        );
    }

    #[test]
    fn injectivity_examples() {
        let tm = Gallery::ThueMorse.build().unwrap();
        assert!(injective(&tm, 0).unwrap());

        let ex = Gallery::Example21.build().unwrap();
        assert!(!injective(&ex, 0).unwrap()); // a(01) = a(10) = 111

        let id = Gallery::Identity(vec!["0".into(), "1".into()])
            .build()
            .unwrap();
        assert!(injective(&id, 0).unwrap());
    }

    #[test]
    fn injectivity_of_uniquely_decodable_code() {
        // o(q,0) = 01, o(q,1) = 0: a suffix code, so q is injective even
        // though outputs share first letters
        let t = Transducer::parse("alphabet 0 1\nstate q\nedge q 0 q 0 1\nedge q 1 q 0\n").unwrap();
        assert!(injective(&t, 0).unwrap());

        // o(q,0) = 01, o(q,1) = 1, o(q,2) = 011: ambiguous (0·1·1 vs 2)
        let t = Transducer::parse(
            "alphabet 0 1 2\nstate q\nedge q 0 q 0 1\nedge q 1 q 1\nedge q 2 q 0 1 1\n",
        )
        .unwrap();
        assert!(!injective(&t, 0).unwrap());
    }

    #[test]
    fn find_period_examples() {
        let ex = arc(Gallery::Example21);
        assert_eq!(find_period(&elt(&ex, "a"), 4).unwrap(), Some((1, 2)));

        let smn = arc(Gallery::Smn(2, 3));
        assert_eq!(find_period(&elt(&smn, "b"), 5).unwrap(), Some((2, 3)));

        let tm = arc(Gallery::ThueMorse);
        assert_eq!(find_period(&elt(&tm, "a"), 6).unwrap(), None);
    }

    #[test]
    fn separate_examples() {
        let ex = arc(Gallery::Example21);
        let w = separate(&elt(&ex, "a"), &elt(&ex, "b")).unwrap();
        assert_eq!(w.level, 1);
        assert_eq!(w.depth, 3);
        let diff = w.first_difference().unwrap();
        assert_eq!(w.domain()[diff].render(), "0");
        // a(0) = 11 stays in range, b(0) = 111 stays in range, but they differ
        assert_ne!(w.table_a, w.table_b);

        let tm = arc(Gallery::ThueMorse);
        let w = separate(&elt(&tm, "a"), &elt(&tm, "a a")).unwrap();
        assert_eq!(w.level, 1);
        assert_eq!(w.depth, 4);

        assert_eq!(
            separate(&elt(&tm, "a"), &elt(&tm, "a")).unwrap_err(),
            DeciderError::ElementsEqual
        );
    }

    #[test]
    fn fixed_words_examples() {
        let ex = arc(Gallery::Example21);
        let fixed = fixed_words(&elt(&ex, "a"), 3, None).unwrap();
        let rendered: Vec<String> = fixed.iter().map(Word::render).collect();
        assert_eq!(rendered, vec!["1", "1 1", "1 1 1"]);

        let tm = arc(Gallery::ThueMorse);
        assert!(fixed_words(&elt(&tm, "a"), 8, None).unwrap().is_empty());
    }

    #[test]
    fn agreement_examples() {
        let x = Alphabet::new(["a", "b"]).unwrap();
        let v = [
            Word::parse(&x, "a b").unwrap(),
            Word::parse(&x, "b").unwrap(),
        ];
        let w = [
            Word::parse(&x, "a").unwrap(),
            Word::parse(&x, "b b").unwrap(),
        ];
        let t = Arc::new(crate::constructions::pcp_automaton(&x, &v, &w).unwrap());
        let found = agreement_words(&elt(&t, "a"), &elt(&t, "b"), 2).unwrap();
        let rendered: Vec<String> = found.iter().map(Word::render).collect();
        assert_eq!(rendered, vec!["1 2"]);
        // agreement words use index letters only
        let index_ids: Vec<usize> = ["1", "2"]
            .iter()
            .map(|tok| t.alphabet().index_of(tok).unwrap())
            .collect();
        for word in &found {
            assert!(word.letters().iter().all(|l| index_ids.contains(l)));
        }

        // V = (ab), W = (ba): first output letters differ on index words
        let v = [Word::parse(&x, "a b").unwrap()];
        let w = [Word::parse(&x, "b a").unwrap()];
        let t = Arc::new(crate::constructions::pcp_automaton(&x, &v, &w).unwrap());
        assert!(agreement_words(&elt(&t, "a"), &elt(&t, "b"), 4)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn census_examples() {
        let id = Gallery::Identity(vec!["0".into(), "1".into()])
            .build()
            .unwrap();
        assert_eq!(
            boundary_fixed_census(&id, 0).unwrap(),
            BoundaryCensus::Infinite
        );

        let adding = Gallery::AddingMachine.build().unwrap();
        let q = adding.state_id("q").unwrap();
        assert_eq!(
            boundary_fixed_census(&adding, q).unwrap(),
            BoundaryCensus::Zero
        );
        // cross-check: no fixed prefix of length <= 10
        let elq = Element::state(Arc::new(adding.clone()), q).unwrap();
        assert!(fixed_words(&elq, 10, None).unwrap().is_empty());

        // exactly one inactive loop reachable: a single boundary fixed point
        let t = Transducer::parse(
            "alphabet 0 1\nstate p\nstate r\nedge p 0 r 0\nedge p 1 p 0\nedge r 0 r 0\nedge r 1 r 0\n",
        )
        .unwrap();
        match boundary_fixed_census(&t, 0).unwrap() {
            BoundaryCensus::Finite(points) => {
                assert_eq!(points.len(), 1);
                assert_eq!(points[0].prefix.render(), "-");
                assert_eq!(points[0].cycle.render(), "0");
            }
            other => panic!("expected one fixed point, got {other:?}"),
        }

        let tm = Gallery::ThueMorse.build().unwrap();
        assert_eq!(
            boundary_fixed_census(&tm, 0),
            Err(DeciderError::NotSynchronous)
        );
    }

    #[test]
    fn census_counts_match_fixed_prefix_counts() {
        // the lamplighter keeper state b fixes 1^ω only
        let lamp = Gallery::Lamplighter.build().unwrap();
        let b = lamp.state_id("b").unwrap();
        match boundary_fixed_census(&lamp, b).unwrap() {
            BoundaryCensus::Finite(points) => {
                assert_eq!(points.len(), 1);
                assert_eq!(points[0].prefix.render(), "-");
                assert_eq!(points[0].cycle.render(), "1");
            }
            other => panic!("unexpected census {other:?}"),
        }
        let a = lamp.state_id("a").unwrap();
        assert_eq!(
            boundary_fixed_census(&lamp, a).unwrap(),
            BoundaryCensus::Zero
        );
    }
}
