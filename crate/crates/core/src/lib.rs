//! Finite-state transducers acting on regular rooted trees.
//!
//! This crate models transducers whose states induce functions on the free
//! monoid over a finite alphabet: asynchronous machines emit arbitrary
//! (possibly empty) output words, expanding machines emit nonempty words,
//! synchronous machines emit single letters, and invertible machines are
//! synchronous with permutation output rows. Products of states generate a
//! semigroup acting on the rooted tree whose vertices are the finite words.
//!
//! The pieces:
//!
//! * [`words`] — alphabets, words, shortlex order, trace-monoid normal forms.
//! * [`automaton`] — the transducer model, validation, the `.aut` text
//!   format and DOT export.
//! * [`action`] — evaluating elements on tree vertices, sections, wreath
//!   forms and section automata.
//! * [`deciders`] — the word problem, injectivity, periodicity, residual
//!   separation, bounded fixed-point and agreement searches, boundary
//!   censuses.
//! * [`constructions`] — inverse automata, partial completions, normal ideal
//!   extensions, direct products, trace-monoid and Post-correspondence
//!   automata, and a gallery of named machines.
//! * [`explorer`] — ball enumeration, relation discovery, presentation
//!   checking and growth counts.
//!
//! Everything is immutable after construction and safe to share across
//! threads; the deciders are pure functions.
//!
//! ```
//! use autosgp::{Element, Gallery, Word};
//! use std::sync::Arc;
//!
//! let tm = Arc::new(Gallery::ThueMorse.build().unwrap());
//! let a = Element::parse(&tm, "a").unwrap();
//! let w = Word::parse(tm.alphabet(), "0").unwrap();
//! assert_eq!(a.act(&w).unwrap().render(), "0 1");
//! assert!(!autosgp::deciders::equal(&a, &a.pow(2)).unwrap());
//! ```

pub mod action;
pub mod automaton;
pub mod constructions;
pub mod deciders;
pub mod explorer;
pub mod words;

pub use action::{
    compose_wreath, section_automaton, ActionError, Element, SectionAutomaton, WreathForm,
};
pub use automaton::{AutError, AutomatonClass, PartialTransducer, RawAutomaton, Transducer};
pub use constructions::{ConstructError, Gallery, PrefixCodeDecoder};
pub use deciders::{BoundaryCensus, DeciderError, PathNfa, SeparationWitness};
pub use explorer::{BallReport, Completeness, PresentationReport};
pub use words::{Alphabet, CommutationRelation, Word, WordError};
