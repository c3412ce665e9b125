//! Symbols, words and their rotations.
//!
//! A [`Word`] is a plain sequence of [`Symbol`] indices; the [`Alphabet`] it
//! was built from supplies names for rendering and the total order used for
//! canonical rotations. Comparing two words with `Ord` is lexicographic in
//! that declaration order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a symbol in its alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symbol(pub u32);

/// An ordered set of named generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Symbol>,
}

/// Characters that would make a symbol name ambiguous in the text formats.
const RESERVED: &[char] = &['^', '#', ':', ';', '(', ')', '"', '|'];

fn valid_symbol_name(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && name != "->"
        && name != "~>"
        && !name.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c))
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            let name = name.into();
            if !valid_symbol_name(&name) {
                return Err(Error::InvalidSymbolName(name));
            }
            if alphabet.index.contains_key(&name) {
                return Err(Error::DuplicateSymbol(name));
            }
            let sym = Symbol(alphabet.names.len() as u32);
            alphabet.index.insert(name.clone(), sym);
            alphabet.names.push(name);
        }
        Ok(alphabet)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len() as u32).map(Symbol)
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.names[sym.0 as usize]
    }

    /// True when every symbol of `word` belongs to this alphabet.
    pub fn contains_word(&self, word: &Word) -> bool {
        word.iter().all(|s| (s.0 as usize) < self.names.len())
    }

    /// Parses whitespace-separated symbol names. `1` denotes the empty word
    /// and `s^k` repeats a symbol `k` times.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for (column, token) in tokens_with_columns(text) {
            self.push_token(token, column, &mut out)?;
        }
        Ok(Word(out))
    }

    fn push_token(&self, token: &str, column: usize, out: &mut Vec<Symbol>) -> Result<()> {
        if token == "1" {
            return Ok(());
        }
        let (name, count) = match token.split_once('^') {
            Some((name, exp)) => {
                let exp = exp.trim_start_matches('(').trim_end_matches(')');
                let count = exp.parse::<usize>().map_err(|_| Error::MalformedPower {
                    token: token.to_string(),
                    column,
                })?;
                (name, count)
            }
            None => (token, 1),
        };
        let sym = self.symbol(name).ok_or_else(|| Error::UnknownSymbol {
            name: name.to_string(),
            column,
        })?;
        out.extend(std::iter::repeat_n(sym, count));
        Ok(())
    }

    /// Renders a word as space-separated symbol names, `1` when empty.
    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Renders a word compactly, collapsing runs into `s^k`.
    pub fn render_compact(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < word.len() {
            let mut j = i + 1;
            while j < word.len() && word[j] == word[i] {
                j += 1;
            }
            let name = self.name(word[i]);
            if j - i > 1 {
                parts.push(format!("{}^{}", name, j - i));
            } else {
                parts.push(name.to_string());
            }
            i = j;
        }
        parts.join(" ")
    }

    /// A display adapter for `word`.
    pub fn show<'a>(&'a self, word: &'a Word) -> Shown<'a> {
        Shown {
            alphabet: self,
            word,
        }
    }

    /// Enumerates every word of exactly `length` symbols in lexicographic order.
    pub fn words_of_length(&self, length: usize) -> WordsOfLength {
        WordsOfLength {
            base: self.names.len() as u32,
            current: if self.names.is_empty() && length > 0 {
                None
            } else {
                Some(vec![Symbol(0); length])
            },
        }
    }
}

pub struct Shown<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(self.word))
    }
}

/// Odometer over `Σ^length`.
pub struct WordsOfLength {
    base: u32,
    current: Option<Vec<Symbol>>,
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.current.as_mut()?;
        let out = Word(current.clone());
        let mut carry = true;
        for sym in current.iter_mut().rev() {
            if sym.0 + 1 < self.base {
                sym.0 += 1;
                carry = false;
                break;
            }
            sym.0 = 0;
        }
        if carry {
            self.current = None;
        }
        Some(out)
    }
}

pub(crate) fn tokens_with_columns(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = text;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed
            .find(char::is_whitespace)
            .unwrap_or(trimmed.len());
        let column = text[..offset].chars().count() + 1;
        let token = &trimmed[..end];
        rest = &trimmed[end..];
        offset += end;
        Some((column, token))
    })
}

/// A finite sequence of symbols; the empty word stands for the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<Symbol>);

impl std::ops::Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_indices(indices: &[u32]) -> Self {
        Word(indices.iter().map(|&i| Symbol(i)).collect())
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(self);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// Number of distinct rotation amounts, `max(1, |w|)`.
    pub fn rotation_count(&self) -> usize {
        self.len().max(1)
    }

    /// Moves the first `amount` symbols to the end.
    pub fn rotate(&self, amount: usize) -> Result<Word> {
        if amount >= self.rotation_count() {
            return Err(Error::RotationOutOfRange {
                amount,
                len: self.len(),
            });
        }
        Ok(self.rotated(amount))
    }

    /// Rotation by `amount` modulo the length.
    pub(crate) fn rotated(&self, amount: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let amount = amount % self.len();
        let mut v = Vec::with_capacity(self.len());
        v.extend_from_slice(&self[amount..]);
        v.extend_from_slice(&self[..amount]);
        Word(v)
    }

    /// All distinct rotations, in order of first appearance.
    pub fn cyclic_conjugates(&self) -> Vec<Word> {
        let mut seen = Vec::new();
        for i in 0..self.rotation_count() {
            let r = self.rotated(i);
            if !seen.contains(&r) {
                seen.push(r);
            }
        }
        seen
    }

    /// Smallest `i` with `self.rotate(i) == target`, if any.
    pub fn rotation_to(&self, target: &Word) -> Option<usize> {
        if self.len() != target.len() {
            return None;
        }
        (0..self.rotation_count()).find(|&i| self.rotated(i) == *target)
    }

    /// Conjugators `(x, y)` for rotating by `amount`: with `x = w[..i]` and
    /// `y = w[i..]` we have `w = xy` and the rotation is `yx`. Rotating by a
    /// multiple of the length gives `(1, 1)`.
    pub fn rotation_conjugators(&self, amount: usize) -> (Word, Word) {
        if self.is_empty() || amount.is_multiple_of(self.len()) {
            return (Word::empty(), Word::empty());
        }
        let i = amount % self.len();
        (self.slice(0..i), self.slice(i..self.len()))
    }

    /// Lexicographically least rotation under the alphabet order.
    pub fn canonical_rotation(&self) -> Word {
        self.rotated(least_rotation(self))
    }

    pub fn is_cyclic_conjugate_of(&self, other: &Word) -> bool {
        self.len() == other.len() && self.canonical_rotation() == other.canonical_rotation()
    }

    /// `{x₁, x₁x₂, …, w}`.
    pub fn prefixes(&self) -> Result<Vec<Word>> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok((1..=self.len()).map(|k| self.slice(0..k)).collect())
    }

    /// `{x_k, x_{k-1}x_k, …, w}`.
    pub fn suffixes(&self) -> Result<Vec<Word>> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let n = self.len();
        Ok((1..=n).map(|k| self.slice(n - k..n)).collect())
    }

    /// Positions where `pattern` occurs as a factor.
    pub fn occurrences<'a>(&'a self, pattern: &'a [Symbol]) -> impl Iterator<Item = usize> + 'a {
        let n = self.len();
        let m = pattern.len();
        (0..=n.saturating_sub(m)).filter(move |&i| m > 0 && i + m <= n && &self[i..i + m] == pattern)
    }

    pub fn find(&self, pattern: &[Symbol]) -> Option<usize> {
        self.occurrences(pattern).next()
    }

    pub fn contains_factor(&self, pattern: &[Symbol]) -> bool {
        self.find(pattern).is_some()
    }

    /// Replaces `self[pos..pos+len]` by `with`.
    pub fn splice(&self, pos: usize, len: usize, with: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.len() - len + with.len());
        v.extend_from_slice(&self[..pos]);
        v.extend_from_slice(with);
        v.extend_from_slice(&self[pos + len..]);
        Word(v)
    }
}

/// Shortlex order: shorter words first, then lexicographic.
pub fn shortlex_cmp(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Booth's least-rotation algorithm; returns the starting index.
fn least_rotation(w: &[Symbol]) -> usize {
    let n = w.len();
    if n < 2 {
        return 0;
    }
    let at = |i: usize| w[i % n];
    let mut failure: Vec<isize> = vec![-1; 2 * n];
    let mut k: usize = 0;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = failure[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = failure[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            failure[j - k] = -1;
        } else {
            failure[j - k] = i + 1;
        }
    }
    k % n
}
