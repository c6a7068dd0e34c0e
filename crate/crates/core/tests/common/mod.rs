//! Shared helpers for the integration suites: seeded random automaton
//! families and evaluation oracles independent of the decider machinery.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use autosgp::words::Alphabet;
use autosgp::{Element, Transducer, Word};

/// Builds a random automaton with up to 3 states and 3 letters; output
/// lengths are drawn from `out_lens`.
fn random_automaton(rng: &mut ChaCha8Rng, out_lens: &[usize]) -> Arc<Transducer> {
    let n_states = rng.gen_range(1..=3);
    let n_letters = rng.gen_range(1..=3);
    let states: Vec<String> = (0..n_states).map(|i| format!("q{i}")).collect();
    let letters: Vec<String> = (0..n_letters).map(|i| i.to_string()).collect();
    let alphabet = Alphabet::new(letters).unwrap();
    let mut trans = Vec::new();
    let mut out = Vec::new();
    for _ in 0..n_states * n_letters {
        trans.push(rng.gen_range(0..n_states));
        let len = out_lens[rng.gen_range(0..out_lens.len())];
        out.push((0..len).map(|_| rng.gen_range(0..n_letters)).collect());
    }
    Arc::new(Transducer::from_tables(states, alphabet, trans, out).unwrap())
}

/// Random expanding automaton: nonempty outputs of length 1 or 2.
pub fn random_expanding(rng: &mut ChaCha8Rng) -> Arc<Transducer> {
    random_automaton(rng, &[1, 2])
}

/// Random synchronous automaton: single-letter outputs.
pub fn random_synchronous(rng: &mut ChaCha8Rng) -> Arc<Transducer> {
    random_automaton(rng, &[1])
}

/// Direct evaluation of a factor tuple on raw letters, by walking the
/// transducer tables right to left. Returns the image and the section tuple.
pub fn eval(aut: &Transducer, factors: &[usize], input: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut word = input.to_vec();
    let mut sections = vec![0usize; factors.len()];
    for (i, &q) in factors.iter().enumerate().rev() {
        let mut cur = q;
        let mut out = Vec::with_capacity(word.len());
        for &l in &word {
            out.extend_from_slice(aut.output(cur, l));
            cur = aut.step(cur, l);
        }
        sections[i] = cur;
        word = out;
    }
    (word, sections)
}

/// The stream of per-node images over the tree up to `depth`, in
/// breadth-first order. Two elements act identically on all words of length
/// at most `depth` iff their streams are equal.
pub fn tau_stream(aut: &Transducer, factors: &[usize], depth: usize) -> Vec<Vec<usize>> {
    let n = aut.alphabet().len();
    let mut stream = Vec::new();
    let mut frontier = vec![factors.to_vec()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * n);
        for sec in &frontier {
            for letter in 0..n {
                let (out, child) = eval(aut, sec, &[letter]);
                stream.push(out);
                next.push(child);
            }
        }
        frontier = next;
    }
    stream
}

/// All raw words over `n_letters` letters of length `1..=max_len`, in
/// shortlex order.
pub fn all_inputs(n_letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 1..=max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..n_letters).map(move |l| {
                    let mut next = w.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// All factor tuples of length `1..=max_len` over the automaton's states.
pub fn all_elements(aut: &Arc<Transducer>, max_len: usize) -> Vec<Element> {
    all_inputs(aut.state_count(), max_len)
        .into_iter()
        .map(|f| Element::new(aut.clone(), f).unwrap())
        .collect()
}

/// Brute-force injectivity of state `q`: evaluates every input of length at
/// most `max_len` and reports whether two distinct inputs share an image.
pub fn injective_by_collision_search(aut: &Transducer, q: usize, max_len: usize) -> bool {
    let n = aut.alphabet().len();
    let mut images: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    images.insert(Vec::new(), Vec::new());
    // frontier of (input, accumulated output, current state)
    let mut frontier = vec![(Vec::new(), Vec::new(), q)];
    for _ in 1..=max_len {
        let mut next = Vec::with_capacity(frontier.len() * n);
        for (input, output, state) in &frontier {
            for letter in 0..n {
                let mut input = input.clone();
                input.push(letter);
                let mut output = output.clone();
                output.extend_from_slice(aut.output(*state, letter));
                if let Some(other) = images.insert(output.clone(), input.clone()) {
                    if other != input {
                        return false;
                    }
                }
                next.push((input, output, aut.step(*state, letter)));
            }
        }
        frontier = next;
    }
    true
}

/// Parses an element over an automaton.
pub fn elt(aut: &Arc<Transducer>, text: &str) -> Element {
    Element::parse(aut, text).unwrap()
}

/// Parses a word over an automaton's alphabet.
pub fn word(aut: &Arc<Transducer>, text: &str) -> Word {
    Word::parse(aut.alphabet(), text).unwrap()
}

/// Prime factors of `n` (with multiplicity removed).
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut factors = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            factors.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}
