//! Generator alphabets with materialized formal inverses, and words over them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a letter in its alphabet. Letter order is index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered letter set closed under a formal-inverse involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorAlphabet {
    names: Vec<String>,
    inverse: Vec<Letter>,
    generators: Vec<Letter>,
}

impl GeneratorAlphabet {
    /// Builds an alphabet from generator names. Each generator `x` is followed by its
    /// formal inverse, named `x'` unless `inverse_names` overrides it.
    pub fn new(generators: &[&str], inverse_names: &BTreeMap<String, String>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidSpec("alphabet has no generators".into()));
        }
        let mut names = Vec::with_capacity(2 * generators.len());
        let mut inverse = Vec::with_capacity(2 * generators.len());
        let mut gens = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            let inv = inverse_names
                .get(*g)
                .cloned()
                .unwrap_or_else(|| format!("{g}'"));
            names.push(g.to_string());
            names.push(inv);
            inverse.push(Letter((2 * i + 1) as u16));
            inverse.push(Letter((2 * i) as u16));
            gens.push(Letter((2 * i) as u16));
        }
        if let Some(extra) = inverse_names
            .keys()
            .find(|k| !generators.contains(&k.as_str()))
        {
            return Err(Error::InvalidSpec(format!(
                "inverse given for unknown generator {extra:?}"
            )));
        }
        let alphabet = GeneratorAlphabet {
            names,
            inverse,
            generators: gens,
        };
        alphabet.validate()?;
        Ok(alphabet)
    }

    /// Generators named by single characters, with default `x'` inverses.
    pub fn from_chars(generators: &str) -> Result<Self> {
        let owned: Vec<String> = generators.chars().map(String::from).collect();
        let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
        Self::new(&refs, &BTreeMap::new())
    }

    fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for name in &self.names {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidSpec(format!("bad letter name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidSpec(format!(
                    "duplicate letter name {name:?}"
                )));
            }
        }
        if self.names.len() > u16::MAX as usize {
            return Err(Error::InvalidSpec("alphabet too large".into()));
        }
        for (i, inv) in self.inverse.iter().enumerate() {
            if self.inverse[inv.index()].index() != i {
                return Err(Error::InvalidSpec(
                    "inverse pairing is not an involution".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(|i| Letter(i as u16))
    }

    /// The generators proper, without their formal inverses.
    pub fn generators(&self) -> &[Letter] {
        &self.generators
    }

    pub fn inverse(&self, x: Letter) -> Letter {
        self.inverse[x.index()]
    }

    pub fn name(&self, x: Letter) -> &str {
        &self.names[x.index()]
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Letter(i as u16))
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn contains(&self, x: Letter) -> bool {
        x.index() < self.names.len()
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|x| !self.contains(**x)) {
            Some(x) => Err(Error::UnknownLetter(format!("#{}", x.0))),
            None => Ok(()),
        }
    }

    /// Parses juxtaposed letter names, longest name first; whitespace is ignored.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        let mut letters = Vec::new();
        while !rest.is_empty() {
            let best = self
                .names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len());
            match best {
                Some((i, n)) => {
                    letters.push(Letter(i as u16));
                    rest = &rest[n.len()..];
                }
                None => {
                    let bad: String = rest.chars().take(1).collect();
                    return Err(Error::UnknownLetter(bad));
                }
            }
        }
        Ok(Word(letters))
    }

    pub fn format(&self, w: &Word) -> String {
        w.letters().iter().map(|x| self.name(*x)).collect()
    }

    /// Formal inverse word: reversed, each letter replaced by its inverse.
    pub fn inverse_word(&self, w: &Word) -> Word {
        Word(w.letters().iter().rev().map(|x| self.inverse(*x)).collect())
    }

    /// All words of length exactly `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> WordsOfLength {
        WordsOfLength {
            alphabet_len: self.len() as u16,
            next: Some(vec![Letter(0); n]),
        }
    }
}

/// Odometer over all words of a fixed length.
pub struct WordsOfLength {
    alphabet_len: u16,
    next: Option<Vec<Letter>>,
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        let mut done = true;
        while pos > 0 {
            pos -= 1;
            if succ[pos].0 + 1 < self.alphabet_len {
                succ[pos].0 += 1;
                for x in &mut succ[pos + 1..] {
                    *x = Letter(0);
                }
                done = false;
                break;
            }
        }
        if !done {
            self.next = Some(succ);
        }
        Some(Word(current))
    }
}

/// A finite word; as a path it has one edge per letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Length first, then lexicographic by letter index.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.0.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn materializes_inverses() {
        let al = GeneratorAlphabet::from_chars("ab").unwrap();
        assert_eq!(al.len(), 4);
        assert_eq!(al.name(Letter(1)), "a'");
        for x in al.letters() {
            assert_eq!(al.inverse(al.inverse(x)), x);
            assert_ne!(al.inverse(x), x);
        }
    }

    #[test]
    fn custom_inverse_names() {
        let mut inv = BTreeMap::new();
        inv.insert("a".to_string(), "A".to_string());
        let al = GeneratorAlphabet::new(&["a", "b"], &inv).unwrap();
        let w = al.parse_word("aAb b'").unwrap();
        assert_eq!(al.format(&w), "aAbb'");
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut inv = BTreeMap::new();
        inv.insert("a".to_string(), "b".to_string());
        assert!(GeneratorAlphabet::new(&["a", "b"], &inv).is_err());
        assert!(GeneratorAlphabet::new(&["a", "a"], &BTreeMap::new()).is_err());
    }

    #[test]
    fn parse_prefers_longest_name() {
        let al = GeneratorAlphabet::from_chars("ab").unwrap();
        let w = al.parse_word("aba'").unwrap();
        assert_eq!(w.letters(), &[Letter(0), Letter(2), Letter(1)]);
        assert!(matches!(al.parse_word("abc"), Err(Error::UnknownLetter(c)) if c == "c"));
        assert!(al.parse_word("").unwrap().is_empty());
    }

    #[test]
    fn inverse_word_reverses() {
        let al = GeneratorAlphabet::from_chars("ab").unwrap();
        let w = al.parse_word("ab").unwrap();
        assert_eq!(al.format(&al.inverse_word(&w)), "b'a'");
    }

    #[test]
    fn word_odometer_counts() {
        let al = GeneratorAlphabet::from_chars("ab").unwrap();
        assert_eq!(al.words_of_length(0).count(), 1);
        let words: Vec<Word> = al.words_of_length(2).collect();
        assert_eq!(words.len(), 16);
        assert!(words.windows(2).all(|p| p[0] < p[1]));
    }
}
