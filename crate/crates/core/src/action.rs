//! Elements acting on the rooted tree: evaluation, sections and wreath forms.
//!
//! An [`Element`] is a nonempty word over the states of a transducer and
//! denotes the composite function where the *rightmost* factor acts first:
//! the element `b a` maps `w` to `b(a(w))`. This keeps written words
//! readable left to right.
//!
//! Every element `f` satisfies the section law `f(wv) = f(w) f_w(v)`; the
//! section `f_w` of a state at a word is the endpoint of the path labeled by
//! that word, and sections of a product are computed factorwise, so a section
//! of an `m`-factor element is again an `m`-factor element.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::automaton::Transducer;
use crate::words::Word;

/// Errors from element construction and evaluation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActionError {
    /// An element needs at least one factor.
    #[error("element has no factors")]
    EmptyElement,
    /// A token does not name a state.
    #[error("unknown state `{0}`")]
    UnknownState(String),
    /// A state id is out of range.
    #[error("state id {0} out of range")]
    StateOutOfRange(usize),
    /// The word lives over a different alphabet than the automaton.
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    /// The two elements belong to different automata.
    #[error("automaton mismatch")]
    AutomatonMismatch,
    /// The operation is only sound for expanding automata.
    #[error("automaton is not expanding")]
    NotExpanding,
}

/// A nonempty word over state ids of a shared transducer; the rightmost
/// factor acts first.
#[derive(Debug, Clone)]
pub struct Element {
    automaton: Arc<Transducer>,
    factors: Vec<usize>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.same_automaton(other) && self.factors == other.factors
    }
}

impl Eq for Element {}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Element {
    /// Builds an element from factor state ids (leftmost factor first).
    pub fn new(automaton: Arc<Transducer>, factors: Vec<usize>) -> Result<Element, ActionError> {
        if factors.is_empty() {
            return Err(ActionError::EmptyElement);
        }
        if let Some(&bad) = factors.iter().find(|&&q| q >= automaton.state_count()) {
            return Err(ActionError::StateOutOfRange(bad));
        }
        Ok(Element { automaton, factors })
    }

    /// The single-state element `q`.
    pub fn state(automaton: Arc<Transducer>, q: usize) -> Result<Element, ActionError> {
        Element::new(automaton, vec![q])
    }

    /// Parses a whitespace-separated sequence of state tokens, leftmost
    /// factor applied last.
    pub fn parse(automaton: &Arc<Transducer>, text: &str) -> Result<Element, ActionError> {
        let mut factors = Vec::new();
        for tok in text.split_whitespace() {
            let q = automaton
                .state_id(tok)
                .ok_or_else(|| ActionError::UnknownState(tok.to_string()))?;
            factors.push(q);
        }
        Element::new(automaton.clone(), factors)
    }

    /// The automaton the element acts through.
    pub fn automaton(&self) -> &Arc<Transducer> {
        &self.automaton
    }

    /// Factor state ids, leftmost first.
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Renders factors as space-joined state tokens.
    pub fn render(&self) -> String {
        self.factors
            .iter()
            .map(|&q| self.automaton.state_name(q))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// True when both elements act through the same automaton.
    pub fn same_automaton(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.automaton, &other.automaton) || *self.automaton == *other.automaton
    }

    /// The product `self · other`, with `other` acting first.
    pub fn compose(&self, other: &Element) -> Result<Element, ActionError> {
        if !self.same_automaton(other) {
            return Err(ActionError::AutomatonMismatch);
        }
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Ok(Element {
            automaton: self.automaton.clone(),
            factors,
        })
    }

    /// The `k`-th power, `k ≥ 1`.
    pub fn pow(&self, k: usize) -> Element {
        assert!(k >= 1, "powers start at 1");
        Element {
            automaton: self.automaton.clone(),
            factors: self.factors.repeat(k),
        }
    }

    fn check_word(&self, w: &Word) -> Result<(), ActionError> {
        if *w.alphabet().as_ref() != *self.automaton.alphabet().as_ref() {
            return Err(ActionError::AlphabetMismatch);
        }
        Ok(())
    }

    /// Image of `w` under the element. The root is always fixed.
    pub fn act(&self, w: &Word) -> Result<Word, ActionError> {
        self.check_word(w)?;
        let (out, _) = act_and_section(&self.automaton, &self.factors, w.letters());
        Ok(Word::from_indices_unchecked(
            self.automaton.alphabet().clone(),
            out,
        ))
    }

    /// The section of the element at `w`: the element `s_w` with
    /// `s(wv) = s(w) s_w(v)` for all `v`. Always has the same factor count.
    pub fn section(&self, w: &Word) -> Result<Element, ActionError> {
        self.check_word(w)?;
        let (_, sec) = act_and_section(&self.automaton, &self.factors, w.letters());
        Ok(Element {
            automaton: self.automaton.clone(),
            factors: sec,
        })
    }

    /// The wreath decomposition: per-letter images and sections.
    pub fn wreath(&self) -> WreathForm {
        let n = self.automaton.alphabet().len();
        let mut tau = Vec::with_capacity(n);
        let mut sections = Vec::with_capacity(n);
        for letter in 0..n {
            let (out, sec) = act_and_section(&self.automaton, &self.factors, &[letter]);
            tau.push(Word::from_indices_unchecked(
                self.automaton.alphabet().clone(),
                out,
            ));
            sections.push(Element {
                automaton: self.automaton.clone(),
                factors: sec,
            });
        }
        WreathForm {
            element: self.clone(),
            tau,
            sections,
        }
    }

    /// Evaluates on a prefix of a boundary point. For expanding automata the
    /// result is a prefix of the image of every extension, so the outputs
    /// converge to the image of the infinite word.
    pub fn act_stream(&self, prefix: &Word) -> Result<Word, ActionError> {
        if !self.automaton.classify().expanding {
            return Err(ActionError::NotExpanding);
        }
        self.act(prefix)
    }
}

/// Runs a factor tuple over an input, returning output letters and the
/// section tuple. Factors are processed right to left, each consuming the
/// previous factor's output.
pub(crate) fn act_and_section(
    automaton: &Transducer,
    factors: &[usize],
    input: &[usize],
) -> (Vec<usize>, Vec<usize>) {
    let mut word = input.to_vec();
    let mut sections = vec![0; factors.len()];
    for (i, &q) in factors.iter().enumerate().rev() {
        let (out, end) = automaton.run(q, &word);
        sections[i] = end;
        word = out;
    }
    (word, sections)
}

/// The wreath form `f = (f_σ1, …, f_σn) τ_f` of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathForm {
    element: Element,
    tau: Vec<Word>,
    sections: Vec<Element>,
}

impl WreathForm {
    /// The element this form decomposes.
    pub fn element(&self) -> &Element {
        &self.element
    }

    /// The induced letter map `τ` at a letter.
    pub fn tau(&self, letter: usize) -> &Word {
        &self.tau[letter]
    }

    /// The section at a letter.
    pub fn section(&self, letter: usize) -> &Element {
        &self.sections[letter]
    }

    /// All `τ` images in letter order.
    pub fn tau_table(&self) -> &[Word] {
        &self.tau
    }

    /// All sections in letter order.
    pub fn section_table(&self) -> &[Element] {
        &self.sections
    }

    /// Section of the decomposed element at a whole word, via the tables.
    /// At the empty word this is the element itself.
    fn section_at(&self, w: &Word) -> Result<Element, ActionError> {
        match w.letters().split_first() {
            None => Ok(self.element.clone()),
            Some((&first, rest)) => {
                let rest = Word::from_indices_unchecked(w.alphabet().clone(), rest.to_vec());
                self.sections[first].section(&rest)
            }
        }
    }
}

/// Composes two wreath forms by the composition formula: with
/// `g = (g_1, …, g_n)[v_1, …, v_n]`, the product `f ∘ g` has
/// `τ(σ_i) = f(v_i)` and section `f_{v_i} · g_i` at `σ_i`.
pub fn compose_wreath(f: &WreathForm, g: &WreathForm) -> Result<WreathForm, ActionError> {
    if !f.element.same_automaton(&g.element) {
        return Err(ActionError::AutomatonMismatch);
    }
    let n = f.element.automaton.alphabet().len();
    let mut tau = Vec::with_capacity(n);
    let mut sections = Vec::with_capacity(n);
    for letter in 0..n {
        let v = g.tau(letter);
        tau.push(f.element.act(v)?);
        let f_at_v = f.section_at(v)?;
        sections.push(f_at_v.compose(g.section(letter))?);
    }
    Ok(WreathForm {
        element: f.element.compose(&g.element)?,
        tau,
        sections,
    })
}

/// A transducer materializing the sections of one element, together with the
/// state representing the element itself.
#[derive(Debug, Clone)]
pub struct SectionAutomaton {
    /// The closed automaton; states are the distinct section tuples.
    pub transducer: Arc<Transducer>,
    /// Id of the state representing the original element.
    pub element_state: usize,
}

/// Builds the automaton whose states are the distinct sections of `s`,
/// closed under taking sections, with `s` itself as a state.
///
/// States are literal factor tuples; two tuples are merged only when
/// identical, so the state count is bounded by the number of words over `Q`
/// of the element's factor length.
pub fn section_automaton(s: &Element) -> SectionAutomaton {
    let base = s.automaton();
    let n = base.alphabet().len();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    ids.insert(s.factors().to_vec(), 0);
    tuples.push(s.factors().to_vec());
    queue.push_back(0usize);
    let mut trans_rows: Vec<Vec<usize>> = Vec::new();
    let mut out_rows: Vec<Vec<Vec<usize>>> = Vec::new();
    while let Some(id) = queue.pop_front() {
        let tuple = tuples[id].clone();
        let mut trow = Vec::with_capacity(n);
        let mut orow = Vec::with_capacity(n);
        for letter in 0..n {
            let (out, sec) = act_and_section(base, &tuple, &[letter]);
            let next = *ids.entry(sec.clone()).or_insert_with(|| {
                tuples.push(sec);
                queue.push_back(tuples.len() - 1);
                tuples.len() - 1
            });
            trow.push(next);
            orow.push(out);
        }
        trans_rows.push(trow);
        out_rows.push(orow);
    }

    let mut names: Vec<String> = Vec::with_capacity(tuples.len());
    for tuple in &tuples {
        let mut name = tuple
            .iter()
            .map(|&q| base.state_name(q))
            .collect::<Vec<_>>()
            .join(".");
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name);
    }
    let trans = trans_rows.into_iter().flatten().collect();
    let out = out_rows.into_iter().flatten().collect();
    let transducer = Transducer::from_tables(names, base.alphabet().clone(), trans, out)
        .expect("section closure yields complete tables");
    SectionAutomaton {
        transducer: Arc::new(transducer),
        element_state: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::Gallery;
    use crate::words::Alphabet;

    fn thue_morse() -> Arc<Transducer> {
        Arc::new(Gallery::ThueMorse.build().unwrap())
    }

    fn example21() -> Arc<Transducer> {
        Arc::new(Gallery::Example21.build().unwrap())
    }

    fn word(t: &Arc<Transducer>, text: &str) -> Word {
        Word::parse(t.alphabet(), text).unwrap()
    }

    #[test]
    fn act_examples() {
        let tm = thue_morse();
        let a = Element::parse(&tm, "a").unwrap();
        assert_eq!(a.act(&word(&tm, "0")).unwrap(), word(&tm, "0 1"));
        assert_eq!(
            a.act(&Word::empty(tm.alphabet().clone())).unwrap(),
            Word::empty(tm.alphabet().clone())
        );

        // a(w) = 1^(2·w0 + w1) with w0 zeros and w1 ones
        let ex = example21();
        let a = Element::parse(&ex, "a").unwrap();
        assert_eq!(a.act(&word(&ex, "0 1 0")).unwrap(), word(&ex, "1 1 1 1 1"));
    }

    #[test]
    fn act_rejects_alphabet_mismatch() {
        let tm = thue_morse();
        let a = Element::parse(&tm, "a").unwrap();
        let other = Alphabet::new(["x"]).unwrap();
        let w = Word::parse(&other, "x").unwrap();
        assert_eq!(a.act(&w), Err(ActionError::AlphabetMismatch));
    }

    #[test]
    fn section_examples() {
        let tm = thue_morse();
        let a = Element::parse(&tm, "a").unwrap();
        let s0 = a.section(&word(&tm, "0")).unwrap();
        assert_eq!(s0, a);
        let aa = Element::parse(&tm, "a a").unwrap();
        assert_eq!(aa.section(&Word::empty(tm.alphabet().clone())).unwrap(), aa);

        // verify the section law for aa at "0" against direct evaluation
        let sec = aa.section(&word(&tm, "0")).unwrap();
        assert_eq!(sec, aa);
        for v in ["-", "0", "1", "0 1", "1 0 1", "0 0 1 1 0"] {
            let v = word(&tm, v);
            let lhs = aa.act(&word(&tm, "0").concat(&v).unwrap()).unwrap();
            let rhs = aa
                .act(&word(&tm, "0"))
                .unwrap()
                .concat(&sec.act(&v).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn wreath_examples() {
        let tm = thue_morse();
        let a = Element::parse(&tm, "a").unwrap();
        let wf = a.wreath();
        assert_eq!(wf.tau(0), &word(&tm, "0 1"));
        assert_eq!(wf.tau(1), &word(&tm, "1 0"));
        assert_eq!(wf.section(0), &a);
        assert_eq!(wf.section(1), &a);

        // oracle for a·a: direct evaluation a(a(0)) plus the section law
        let aa = Element::parse(&tm, "a a").unwrap();
        let wf = aa.wreath();
        assert_eq!(wf.tau(0), &a.act(&a.act(&word(&tm, "0")).unwrap()).unwrap());
        assert_eq!(wf.tau(0), &word(&tm, "0 1 1 0"));
        assert_eq!(wf.section(0), &aa);
    }

    #[test]
    fn compose_wreath_matches_product_wreath() {
        let tm = thue_morse();
        let a = Element::parse(&tm, "a").unwrap();
        let composed = compose_wreath(&a.wreath(), &a.wreath()).unwrap();
        let direct = Element::parse(&tm, "a a").unwrap().wreath();
        assert_eq!(composed, direct);

        let ex = example21();
        let b = Element::parse(&ex, "b").unwrap();
        let ab = Element::parse(&ex, "a b").unwrap();
        let composed =
            compose_wreath(&Element::parse(&ex, "a").unwrap().wreath(), &b.wreath()).unwrap();
        assert_eq!(composed, ab.wreath());
    }

    #[test]
    fn compose_wreath_with_identity_form() {
        let id = Arc::new(
            Gallery::Identity(vec!["0".into(), "1".into()])
                .build()
                .unwrap(),
        );
        let i = Element::parse(&id, "i").unwrap();
        let wf = i.wreath();
        for letter in 0..2 {
            assert_eq!(wf.tau(letter).letters(), &[letter]);
            assert_eq!(wf.section(letter), &i);
        }
        let both = compose_wreath(&wf, &wf).unwrap();
        assert_eq!(both.tau(0).letters(), &[0]);
        assert_eq!(both.section(0).factors(), &[0, 0]);
    }

    #[test]
    fn section_automaton_examples() {
        // sections of a single state are states: a yields the original automaton
        let tm = thue_morse();
        let a = Element::parse(&tm, "a").unwrap();
        let sa = section_automaton(&a);
        assert_eq!(sa.transducer.state_count(), 1);
        assert_eq!(*sa.transducer, *tm);

        // both sections of aa equal aa
        let aa = Element::parse(&tm, "a a").unwrap();
        let sa = section_automaton(&aa);
        assert_eq!(sa.transducer.state_count(), 1);
        assert_eq!(sa.transducer.state_name(0), "a.a");

        // closure for b·a in the two-state automaton; check act agreement
        // with the original on all short words
        let ex = example21();
        let ba = Element::parse(&ex, "b a").unwrap();
        let sa = section_automaton(&ba);
        assert!(sa.transducer.state_count() <= 1 + 2 + 4);
        let image = Element::state(sa.transducer.clone(), sa.element_state).unwrap();
        let mut stack = vec![Vec::new()];
        while let Some(ls) = stack.pop() {
            let w_orig = Word::from_indices(ex.alphabet().clone(), ls.clone()).unwrap();
            let w_new = Word::from_indices(sa.transducer.alphabet().clone(), ls.clone()).unwrap();
            assert_eq!(
                ba.act(&w_orig).unwrap().letters(),
                image.act(&w_new).unwrap().letters()
            );
            if ls.len() < 6 {
                for l in 0..2 {
                    let mut next = ls.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
        }
    }

    #[test]
    fn section_factor_length_bound() {
        let ex = example21();
        let ba = Element::parse(&ex, "b a").unwrap();
        let sa = section_automaton(&ba);
        for name in sa.transducer.state_names() {
            assert!(name.split('.').count() <= ba.factors().len());
        }
    }

    #[test]
    fn act_stream_examples() {
        let tm = thue_morse();
        let a = Element::parse(&tm, "a").unwrap();
        // substitution 0 -> 01, 1 -> 10 applied letter by letter
        assert_eq!(
            a.act_stream(&word(&tm, "0 1 1 0")).unwrap(),
            word(&tm, "0 1 1 0 1 0 0 1")
        );
        assert_eq!(
            a.act_stream(&Word::empty(tm.alphabet().clone())).unwrap(),
            Word::empty(tm.alphabet().clone())
        );

        let bi = Arc::new(Gallery::Bicyclic.build().unwrap());
        let b = Element::parse(&bi, "b").unwrap();
        assert_eq!(
            b.act_stream(&Word::empty(bi.alphabet().clone())),
            Err(ActionError::NotExpanding)
        );
    }

    #[test]
    fn element_parse_errors() {
        let tm = thue_morse();
        assert_eq!(Element::parse(&tm, ""), Err(ActionError::EmptyElement));
        assert_eq!(
            Element::parse(&tm, "a q"),
            Err(ActionError::UnknownState("q".into()))
        );
    }
}
