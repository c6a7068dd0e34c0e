//! Semigroup-level exploration built on the word-problem decider: ball
//! enumeration, relation discovery, presentation checking and growth counts.

use std::collections::HashMap;
use std::sync::Arc;

use crate::action::Element;
use crate::automaton::Transducer;
use crate::deciders::{equal, DeciderError};

/// The ball of radius `L` in chosen generators, partitioned into equality
/// classes by the word-problem decider.
#[derive(Debug, Clone)]
pub struct BallReport {
    /// The enumeration radius.
    pub radius: usize,
    /// Shortlex-least representative of each equality class, in discovery
    /// order (which is shortlex order).
    pub normal_forms: Vec<Element>,
    /// Number of classes whose representative has length `k`, at index
    /// `k - 1`; sums to the number of normal forms.
    pub count_per_length: Vec<usize>,
    /// Every non-trivial equality discovered, as (word, representative).
    pub relations: Vec<(Element, Element)>,
}

struct BallClasses {
    words: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    rep_of_class: Vec<usize>, // index into `words`
}

fn generator_list(
    aut: &Arc<Transducer>,
    generators: Option<&[usize]>,
) -> Result<Vec<usize>, DeciderError> {
    match generators {
        None => Ok((0..aut.state_count()).collect()),
        Some(gens) => {
            let mut gens: Vec<usize> = gens.to_vec();
            if let Some(&bad) = gens.iter().find(|&&q| q >= aut.state_count()) {
                return Err(DeciderError::StateOutOfRange(bad));
            }
            gens.sort_unstable();
            gens.dedup();
            Ok(gens)
        }
    }
}

/// All generator words of length `1..=radius` in shortlex order.
fn words_up_to(gens: &[usize], radius: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 1..=radius {
        layer = layer
            .iter()
            .flat_map(|w| {
                gens.iter().map(move |&q| {
                    let mut next = w.clone();
                    next.push(q);
                    next
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

fn ball_classes(
    aut: &Arc<Transducer>,
    radius: usize,
    gens: &[usize],
) -> Result<BallClasses, DeciderError> {
    let words = words_up_to(gens, radius);
    let mut class_of = Vec::with_capacity(words.len());
    let mut rep_of_class: Vec<usize> = Vec::new();
    let mut rep_elements: Vec<Element> = Vec::new();
    for (i, word) in words.iter().enumerate() {
        let element = Element::new(aut.clone(), word.clone()).expect("generator ids are valid");
        let mut found = None;
        for (c, rep) in rep_elements.iter().enumerate() {
            if equal(&element, rep)? {
                found = Some(c);
                break;
            }
        }
        match found {
            Some(c) => class_of.push(c),
            None => {
                class_of.push(rep_of_class.len());
                rep_of_class.push(i);
                rep_elements.push(element);
            }
        }
    }
    Ok(BallClasses {
        words,
        class_of,
        rep_of_class,
    })
}

/// Enumerates all generator words of length at most `radius`, partitions
/// them into equality classes via the word-problem decider, and records one
/// relation per word that joins an earlier class. `generators` defaults to
/// all states; pass a subset to ignore auxiliary states such as identity
/// sinks.
pub fn enumerate_ball(
    aut: &Arc<Transducer>,
    radius: usize,
    generators: Option<&[usize]>,
) -> Result<BallReport, DeciderError> {
    let gens = generator_list(aut, generators)?;
    let classes = ball_classes(aut, radius, &gens)?;
    let normal_forms: Vec<Element> = classes
        .rep_of_class
        .iter()
        .map(|&i| Element::new(aut.clone(), classes.words[i].clone()).expect("valid ids"))
        .collect();
    let mut count_per_length = vec![0usize; radius];
    for nf in &normal_forms {
        count_per_length[nf.factors().len() - 1] += 1;
    }
    let mut relations = Vec::new();
    for (i, word) in classes.words.iter().enumerate() {
        let rep_index = classes.rep_of_class[classes.class_of[i]];
        if rep_index != i {
            relations.push((
                Element::new(aut.clone(), word.clone()).expect("valid ids"),
                Element::new(aut.clone(), classes.words[rep_index].clone()).expect("valid ids"),
            ));
        }
    }
    Ok(BallReport {
        radius,
        normal_forms,
        count_per_length,
        relations,
    })
}

/// Class counts per word length from [`enumerate_ball`].
pub fn growth(
    aut: &Arc<Transducer>,
    radius: usize,
    generators: Option<&[usize]>,
) -> Result<Vec<usize>, DeciderError> {
    Ok(enumerate_ball(aut, radius, generators)?.count_per_length)
}

/// Outcome of the completeness half of a presentation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completeness {
    /// Every equality between generator words of length at most the radius
    /// is joinable by the given relations.
    Complete,
    /// Some equalities are not joinable; the relation set is
    /// length-preserving, so these are genuine gaps.
    Incomplete(Vec<(Element, Element)>),
    /// Some equalities are not joinable, but the relation set changes word
    /// lengths, so the bounded closure is not conclusive.
    Inconclusive(Vec<(Element, Element)>),
    /// Not evaluated because some given relation failed to hold.
    Skipped,
}

/// Result of checking a finite presentation against the semigroup.
#[derive(Debug, Clone)]
pub struct PresentationReport {
    /// Whether each given relation holds, in input order.
    pub relations_hold: Vec<bool>,
    /// Completeness of the relation set up to the radius.
    pub completeness: Completeness,
}

impl PresentationReport {
    /// True iff every given relation holds.
    pub fn all_hold(&self) -> bool {
        self.relations_hold.iter().all(|&b| b)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let root = self.find(self.0[i]);
            self.0[i] = root;
        }
        self.0[i]
    }
    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.0[ri] = rj;
        }
    }
}

/// Verifies each relation via the word-problem decider, then checks that the
/// relations generate every equality among generator words of length at most
/// `radius`. Joinability is decided by brute-force rewriting closure bounded
/// by `max(radius, longest relation side)`; this is exact for
/// length-preserving relation sets and reported as inconclusive otherwise.
pub fn check_presentation(
    aut: &Arc<Transducer>,
    relations: &[(Element, Element)],
    radius: usize,
    generators: Option<&[usize]>,
) -> Result<PresentationReport, DeciderError> {
    let gens = generator_list(aut, generators)?;
    let mut relations_hold = Vec::with_capacity(relations.len());
    for (lhs, rhs) in relations {
        relations_hold.push(equal(lhs, rhs)?);
    }
    if relations_hold.iter().any(|&b| !b) {
        return Ok(PresentationReport {
            relations_hold,
            completeness: Completeness::Skipped,
        });
    }

    let longest_side = relations
        .iter()
        .map(|(l, r)| l.factors().len().max(r.factors().len()))
        .max()
        .unwrap_or(0);
    let bound = radius.max(longest_side);
    let closure_words = words_up_to(&gens, bound);
    let index: HashMap<Vec<usize>, usize> = closure_words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let mut uf = UnionFind::new(closure_words.len());
    let sides: Vec<(&[usize], &[usize])> = relations
        .iter()
        .flat_map(|(l, r)| [(l.factors(), r.factors()), (r.factors(), l.factors())])
        .collect();
    for (i, word) in closure_words.iter().enumerate() {
        for &(from, to) in &sides {
            if from.len() > word.len() || word.len() - from.len() + to.len() > bound {
                continue;
            }
            for pos in 0..=word.len() - from.len() {
                if &word[pos..pos + from.len()] == from {
                    let mut rewritten = Vec::with_capacity(word.len() - from.len() + to.len());
                    rewritten.extend_from_slice(&word[..pos]);
                    rewritten.extend_from_slice(to);
                    rewritten.extend_from_slice(&word[pos + from.len()..]);
                    if let Some(&j) = index.get(&rewritten) {
                        uf.union(i, j);
                    }
                }
            }
        }
    }

    let classes = ball_classes(aut, radius, &gens)?;
    let mut unresolved = Vec::new();
    for (i, word) in classes.words.iter().enumerate() {
        let rep_index = classes.rep_of_class[classes.class_of[i]];
        if rep_index == i {
            continue;
        }
        let wi = index[word];
        let wr = index[&classes.words[rep_index]];
        if uf.find(wi) != uf.find(wr) {
            unresolved.push((
                Element::new(aut.clone(), word.clone()).expect("valid ids"),
                Element::new(aut.clone(), classes.words[rep_index].clone()).expect("valid ids"),
            ));
        }
    }
    let completeness = if unresolved.is_empty() {
        Completeness::Complete
    } else if relations
        .iter()
        .all(|(l, r)| l.factors().len() == r.factors().len())
    {
        Completeness::Incomplete(unresolved)
    } else {
        Completeness::Inconclusive(unresolved)
    };
    Ok(PresentationReport {
        relations_hold,
        completeness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fpcm_automaton, Gallery};
    use crate::words::CommutationRelation;

    fn arc(g: Gallery) -> Arc<Transducer> {
        Arc::new(g.build().unwrap())
    }

    fn elt(t: &Arc<Transducer>, text: &str) -> Element {
        Element::parse(t, text).unwrap()
    }

    #[test]
    fn thue_morse_ball_is_free_of_rank_one() {
        let tm = arc(Gallery::ThueMorse);
        let report = enumerate_ball(&tm, 4, None).unwrap();
        assert_eq!(report.normal_forms.len(), 4);
        assert_eq!(report.count_per_length, vec![1, 1, 1, 1]);
        assert!(report.relations.is_empty());
    }

    #[test]
    fn example21_ball() {
        let ex = arc(Gallery::Example21);
        let report = enumerate_ball(&ex, 3, None).unwrap();
        let names: Vec<String> = report.normal_forms.iter().map(Element::render).collect();
        assert_eq!(names, vec!["a", "b", "b b", "b b b"]);
        assert_eq!(report.count_per_length, vec![2, 1, 1]);
        // every non-representative word contributes one relation
        assert_eq!(report.relations.len(), 2 + 4 + 8 - 4);
        // representatives are pairwise distinct under the decider
        for (i, u) in report.normal_forms.iter().enumerate() {
            for v in &report.normal_forms[i + 1..] {
                assert!(!equal(u, v).unwrap());
            }
        }
    }

    #[test]
    fn ball_counts_match_evaluation_table_partition() {
        // oracle: partition the ball of smn(2,3) by evaluation on all words
        // of length <= 8
        let smn = arc(Gallery::Smn(2, 3));
        let report = enumerate_ball(&smn, 3, None).unwrap();
        let words = words_up_to(&[0, 1], 3);
        let mut tables: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut inputs: Vec<Vec<usize>> = vec![Vec::new()];
        let mut all_inputs = Vec::new();
        for _ in 1..=8 {
            inputs = inputs
                .iter()
                .flat_map(|w| {
                    (0..3).map(move |l| {
                        let mut next = w.clone();
                        next.push(l);
                        next
                    })
                })
                .collect();
            all_inputs.extend(inputs.iter().cloned());
        }
        for word in &words {
            let el = Element::new(smn.clone(), word.clone()).unwrap();
            let table: Vec<Vec<usize>> = all_inputs
                .iter()
                .map(|input| crate::action::act_and_section(&smn, el.factors(), input).0)
                .collect();
            tables.push(table);
        }
        let mut distinct = Vec::new();
        for t in &tables {
            if !distinct.contains(t) {
                distinct.push(t.clone());
            }
        }
        assert_eq!(distinct.len(), report.normal_forms.len());
    }

    #[test]
    fn presentation_example21() {
        let ex = arc(Gallery::Example21);
        let relations = vec![
            (elt(&ex, "a a"), elt(&ex, "a")),
            (elt(&ex, "a b"), elt(&ex, "b")),
            (elt(&ex, "b a"), elt(&ex, "b")),
        ];
        let report = check_presentation(&ex, &relations, 4, None).unwrap();
        assert!(report.all_hold());
        assert_eq!(report.completeness, Completeness::Complete);
    }

    #[test]
    fn presentation_smn() {
        let smn = arc(Gallery::Smn(2, 3));
        let relations = vec![
            (elt(&smn, "b b"), elt(&smn, "b b b")),
            (elt(&smn, "a b"), elt(&smn, "b")),
        ];
        let report = check_presentation(&smn, &relations, 4, None).unwrap();
        assert!(report.all_hold());
        assert_eq!(report.completeness, Completeness::Complete);
    }

    #[test]
    fn presentation_flags_failures_and_gaps() {
        let tm = arc(Gallery::ThueMorse);
        // a false relation is reported and completeness skipped
        let relations = vec![(elt(&tm, "a a"), elt(&tm, "a"))];
        let report = check_presentation(&tm, &relations, 3, None).unwrap();
        assert_eq!(report.relations_hold, vec![false]);
        assert_eq!(report.completeness, Completeness::Skipped);

        // an empty relation set cannot join a2 = a in Example 2.1
        let ex = arc(Gallery::Example21);
        let report = check_presentation(&ex, &[], 2, None).unwrap();
        match report.completeness {
            Completeness::Incomplete(pairs) => assert!(!pairs.is_empty()),
            other => panic!("expected incomplete, got {other:?}"),
        }
    }

    #[test]
    fn fpcm_presentation_is_complete() {
        let rel = CommutationRelation::new(3, [(0, 1), (0, 2)]).unwrap();
        let t = Arc::new(fpcm_automaton(&rel).unwrap());
        let gens: Vec<usize> = (0..3).collect();
        let relations = vec![
            (elt(&t, "y1 y2"), elt(&t, "y2 y1")),
            (elt(&t, "y1 y3"), elt(&t, "y3 y1")),
        ];
        let report = check_presentation(&t, &relations, 4, Some(&gens)).unwrap();
        assert!(report.all_hold());
        assert_eq!(report.completeness, Completeness::Complete);
    }

    #[test]
    fn growth_examples() {
        let tm = arc(Gallery::ThueMorse);
        assert_eq!(growth(&tm, 5, None).unwrap(), vec![1, 1, 1, 1, 1]);

        // N x N: one trace per multiset, k+1 traces of length k
        let rel = CommutationRelation::new(2, [(0, 1)]).unwrap();
        let t = Arc::new(fpcm_automaton(&rel).unwrap());
        assert_eq!(growth(&t, 4, Some(&[0, 1])).unwrap(), vec![2, 3, 4, 5]);

        // free of rank 2
        let rel = CommutationRelation::new(2, []).unwrap();
        let t = Arc::new(fpcm_automaton(&rel).unwrap());
        assert_eq!(growth(&t, 4, Some(&[0, 1])).unwrap(), vec![2, 4, 8, 16]);
    }
}
