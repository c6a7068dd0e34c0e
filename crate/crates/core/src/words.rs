//! Alphabets, finite words, orderings and trace-monoid normal forms.
//!
//! Letters are arbitrary whitespace-free tokens, not single characters, so
//! alphabets like `{c12, d12}` are representable. A [`Word`] stores letter
//! indices into its [`Alphabet`]; the empty word doubles as the root of the
//! rooted tree whose vertices are all finite words. In text form a word is a
//! whitespace-separated token sequence and the empty word is the single token
//! `-`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Errors raised by word and alphabet operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    /// The alphabet has no letters.
    #[error("alphabet is empty")]
    EmptyAlphabet,
    /// A letter token appears twice in an alphabet.
    #[error("duplicate letter `{0}` in alphabet")]
    DuplicateLetter(String),
    /// A letter token is empty or contains whitespace.
    #[error("invalid letter token `{0}`")]
    InvalidLetter(String),
    /// A token does not name a letter of the alphabet.
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    /// A letter index is out of range for the alphabet.
    #[error("letter index {0} out of range")]
    IndexOutOfRange(usize),
    /// The two operands live over different alphabets.
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    /// A commutation pair is reflexive or out of range.
    #[error("invalid commutation pair ({0}, {1})")]
    InvalidPair(usize, usize),
}

/// An ordered finite set of distinct letter tokens.
///
/// The position of a letter fixes a total order used by [`Word::shortlex_cmp`]
/// and everything built on it.
#[derive(Debug, Clone)]
pub struct Alphabet {
    letters: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    /// Builds an alphabet from letter tokens in order.
    pub fn new<I, S>(letters: I) -> Result<Arc<Alphabet>, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let mut index = HashMap::new();
        for (i, tok) in letters.iter().enumerate() {
            if tok.is_empty() || tok.chars().any(char::is_whitespace) {
                return Err(WordError::InvalidLetter(tok.clone()));
            }
            if index.insert(tok.clone(), i).is_some() {
                return Err(WordError::DuplicateLetter(tok.clone()));
            }
        }
        Ok(Arc::new(Alphabet { letters, index }))
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false: alphabets are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The token at position `i`.
    pub fn letter(&self, i: usize) -> &str {
        &self.letters[i]
    }

    /// All tokens in order.
    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    /// Position of a token, if present.
    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }
}

/// A finite sequence of letters of one alphabet; vertices of the rooted tree.
#[derive(Debug, Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<usize>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.same_alphabet(other) && self.letters == other.letters
    }
}

impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl Word {
    /// The empty word (tree root) over an alphabet.
    pub fn empty(alphabet: Arc<Alphabet>) -> Word {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    /// Builds a word from letter indices, checking ranges.
    pub fn from_indices(alphabet: Arc<Alphabet>, letters: Vec<usize>) -> Result<Word, WordError> {
        if let Some(&bad) = letters.iter().find(|&&i| i >= alphabet.len()) {
            return Err(WordError::IndexOutOfRange(bad));
        }
        Ok(Word { alphabet, letters })
    }

    /// Builds a word from indices known to be in range.
    pub(crate) fn from_indices_unchecked(alphabet: Arc<Alphabet>, letters: Vec<usize>) -> Word {
        debug_assert!(letters.iter().all(|&i| i < alphabet.len()));
        Word { alphabet, letters }
    }

    /// Parses a whitespace-separated token sequence; the single token `-`
    /// denotes the empty word.
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Word, WordError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == ["-"] {
            return Ok(Word::empty(alphabet.clone()));
        }
        let mut letters = Vec::with_capacity(tokens.len());
        for tok in tokens {
            let i = alphabet
                .index_of(tok)
                .ok_or_else(|| WordError::UnknownLetter(tok.to_string()))?;
            letters.push(i);
        }
        Ok(Word {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    /// The underlying alphabet.
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Letter indices of the word.
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Length of the word.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True for the empty word.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn same_alphabet(&self, other: &Word) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet
    }

    /// Juxtaposition `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if !self.same_alphabet(other) {
            return Err(WordError::AlphabetMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            letters,
        })
    }

    /// True iff `other = self · v` for some word `v`.
    pub fn is_prefix_of(&self, other: &Word) -> Result<bool, WordError> {
        if !self.same_alphabet(other) {
            return Err(WordError::AlphabetMismatch);
        }
        Ok(other.letters.len() >= self.letters.len()
            && other.letters[..self.letters.len()] == self.letters[..])
    }

    /// Subsequence retaining only the letters whose index is in `keep`.
    pub fn project(&self, keep: &[usize]) -> Result<Word, WordError> {
        if let Some(&bad) = keep.iter().find(|&&i| i >= self.alphabet.len()) {
            return Err(WordError::IndexOutOfRange(bad));
        }
        let letters = self
            .letters
            .iter()
            .copied()
            .filter(|i| keep.contains(i))
            .collect();
        Ok(Word {
            alphabet: self.alphabet.clone(),
            letters,
        })
    }

    /// Shortlex order: shorter first, ties broken by dictionary order on
    /// letter positions.
    pub fn shortlex_cmp(&self, other: &Word) -> Result<Ordering, WordError> {
        if !self.same_alphabet(other) {
            return Err(WordError::AlphabetMismatch);
        }
        Ok(shortlex(&self.letters, &other.letters))
    }

    /// Renders the word as space-joined tokens, `-` when empty.
    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "-".to_string();
        }
        self.letters
            .iter()
            .map(|&i| self.alphabet.letter(i))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Shortlex comparison of raw index sequences.
pub(crate) fn shortlex(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A symmetric irreflexive relation naming the commuting generator pairs of a
/// free partially commutative monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationRelation {
    generators: usize,
    // canonical (min, max) pairs
    pairs: Vec<(usize, usize)>,
}

impl CommutationRelation {
    /// Builds a relation over `generators` generators from (0-based) pairs.
    /// Pairs may be given in either order; reflexive pairs are rejected.
    pub fn new<I>(generators: usize, pairs: I) -> Result<CommutationRelation, WordError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut canon = Vec::new();
        for (i, j) in pairs {
            if i == j || i >= generators || j >= generators {
                return Err(WordError::InvalidPair(i, j));
            }
            let p = (i.min(j), i.max(j));
            if !canon.contains(&p) {
                canon.push(p);
            }
        }
        canon.sort_unstable();
        Ok(CommutationRelation {
            generators,
            pairs: canon,
        })
    }

    /// Number of generators the relation is over.
    pub fn generators(&self) -> usize {
        self.generators
    }

    /// The canonical `(min, max)` commuting pairs.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// True iff generators `i` and `j` commute.
    pub fn commutes(&self, i: usize, j: usize) -> bool {
        i != j && self.pairs.binary_search(&(i.min(j), i.max(j))).is_ok()
    }
}

/// The shortlex-least word equal to `w` in the free partially commutative
/// monoid with commuting pairs `rel`.
///
/// Greedy extraction: repeatedly emit the smallest remaining letter that
/// commutes with everything to its left. All words of a commutation class
/// have equal length, so the lexicographic minimum is the shortlex minimum.
pub fn trace_normal_form(w: &Word, rel: &CommutationRelation) -> Word {
    assert_eq!(
        rel.generators(),
        w.alphabet().len(),
        "relation is over a different generator count than the word's alphabet"
    );
    let mut rest: Vec<usize> = w.letters().to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<(usize, usize)> = None; // (letter, position)
        for (pos, &letter) in rest.iter().enumerate() {
            let movable = rest[..pos].iter().all(|&l| rel.commutes(l, letter));
            if movable && best.is_none_or(|(b, _)| letter < b) {
                best = Some((letter, pos));
            }
        }
        let (letter, pos) = best.expect("position 0 is always movable");
        out.push(letter);
        rest.remove(pos);
    }
    Word::from_indices_unchecked(w.alphabet().clone(), out)
}

/// True iff `w` is its own trace normal form: for every factorization
/// `w = y b u a z` with `a < b` commuting, some letter of `u` fails to
/// commute with `a`.
pub fn is_trace_normal(w: &Word, rel: &CommutationRelation) -> bool {
    assert_eq!(
        rel.generators(),
        w.alphabet().len(),
        "relation is over a different generator count than the word's alphabet"
    );
    let ls = w.letters();
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            let (b, a) = (ls[i], ls[j]);
            if a < b && rel.commutes(a, b) && ls[i + 1..j].iter().all(|&u| rel.commutes(u, a)) {
                return false;
            }
        }
    }
    true
}
