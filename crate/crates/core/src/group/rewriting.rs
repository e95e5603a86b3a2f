//! Length-reducing string rewriting with a critical-pair confluence check.
//!
//! No completion is attempted: a rule list that is not locally confluent is
//! rejected when the system is built.

use crate::alphabet::{GeneratorAlphabet, Letter, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewritingSystem {
    rules: Vec<Rule>,
}

impl RewritingSystem {
    /// Builds the system from `rules`, prepending the free cancellations `x x' -> ε`.
    /// Every rule must decrease shortlex order and all critical pairs must resolve.
    pub fn new(alphabet: &GeneratorAlphabet, rules: Vec<(Word, Word)>) -> Result<Self> {
        let mut all: Vec<Rule> = alphabet
            .letters()
            .map(|x| Rule {
                lhs: vec![x, alphabet.inverse(x)],
                rhs: Vec::new(),
            })
            .collect();
        for (lhs, rhs) in rules {
            alphabet.check_word(&lhs)?;
            alphabet.check_word(&rhs)?;
            if rhs.shortlex_cmp(&lhs) != std::cmp::Ordering::Less {
                return Err(Error::InvalidSpec(format!(
                    "rule {} -> {} does not decrease shortlex order",
                    alphabet.format(&lhs),
                    alphabet.format(&rhs)
                )));
            }
            let rule = Rule {
                lhs: lhs.0,
                rhs: rhs.0,
            };
            if !all.contains(&rule) {
                all.push(rule);
            }
        }
        let system = RewritingSystem { rules: all };
        system.check_local_confluence(alphabet)?;
        Ok(system)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn normalize(&self, word: &[Letter]) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(word.len());
        self.push_all(&mut out, word);
        out
    }

    /// Appends letters to an irreducible prefix, keeping it irreducible.
    pub fn push_all(&self, out: &mut Vec<Letter>, word: &[Letter]) {
        let mut pending: Vec<Letter> = word.iter().rev().copied().collect();
        while let Some(x) = pending.pop() {
            out.push(x);
            // out[..len-1] is irreducible, so any redex is a suffix.
            if let Some(rule) = self.rules.iter().find(|r| out.ends_with(&r.lhs)) {
                out.truncate(out.len() - rule.lhs.len());
                pending.extend(rule.rhs.iter().rev());
            }
        }
    }

    fn check_local_confluence(&self, alphabet: &GeneratorAlphabet) -> Result<()> {
        for (left, right, overlap) in self.critical_pairs() {
            let a = self.normalize(&left);
            let b = self.normalize(&right);
            if a != b {
                return Err(Error::NonConfluent {
                    overlap: alphabet.format(&Word(overlap)),
                    left: alphabet.format(&Word(a)),
                    right: alphabet.format(&Word(b)),
                });
            }
        }
        Ok(())
    }

    /// One-step descendants of every overlap and inclusion between rule pairs.
    fn critical_pairs(&self) -> Vec<(Vec<Letter>, Vec<Letter>, Vec<Letter>)> {
        let mut pairs = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (l1, l2) = (&r1.lhs, &r2.lhs);
                // suffix of l1 == prefix of l2
                for o in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - o..] == l2[..o] {
                        let overlap: Vec<Letter> = l1.iter().chain(&l2[o..]).copied().collect();
                        let left: Vec<Letter> = r1.rhs.iter().chain(&l2[o..]).copied().collect();
                        let right: Vec<Letter> =
                            l1[..l1.len() - o].iter().chain(&r2.rhs).copied().collect();
                        pairs.push((left, right, overlap));
                    }
                }
                // l2 a factor of l1
                if i != j && l2.len() <= l1.len() {
                    for p in 0..=l1.len() - l2.len() {
                        if l1[p..p + l2.len()] == l2[..] {
                            let right: Vec<Letter> = l1[..p]
                                .iter()
                                .chain(&r2.rhs)
                                .chain(&l1[p + l2.len()..])
                                .copied()
                                .collect();
                            pairs.push((r1.rhs.clone(), right, l1.clone()));
                        }
                    }
                }
            }
        }
        pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules(al: &GeneratorAlphabet, rs: &[(&str, &str)]) -> Vec<(Word, Word)> {
        rs.iter()
            .map(|(l, r)| (al.parse_word(l).unwrap(), al.parse_word(r).unwrap()))
            .collect()
    }

    fn z2_rules(al: &GeneratorAlphabet) -> Vec<(Word, Word)> {
        rules(
            al,
            &[
                ("ba", "ab"),
                ("b'a", "ab'"),
                ("ba'", "a'b"),
                ("b'a'", "a'b'"),
            ],
        )
    }

    #[test]
    fn commuting_system_is_confluent() {
        let al = GeneratorAlphabet::from_chars("ab").unwrap();
        let rs = RewritingSystem::new(&al, z2_rules(&al)).unwrap();
        let w = al.parse_word("b a b' a a'").unwrap();
        assert_eq!(al.format(&Word(rs.normalize(w.letters()))), "a");
        let w = al.parse_word("b'ba'b").unwrap();
        assert_eq!(al.format(&Word(rs.normalize(w.letters()))), "a'b");
    }

    #[test]
    fn missing_rules_are_not_confluent() {
        let al = GeneratorAlphabet::from_chars("ab").unwrap();
        let err = RewritingSystem::new(&al, rules(&al, &[("ba", "ab")])).unwrap_err();
        assert!(matches!(err, Error::NonConfluent { .. }), "{err:?}");
    }

    #[test]
    fn rules_must_decrease() {
        let al = GeneratorAlphabet::from_chars("ab").unwrap();
        let err = RewritingSystem::new(&al, rules(&al, &[("ab", "ba")])).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
        let err = RewritingSystem::new(&al, rules(&al, &[("a", "bb")])).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
    }

    #[test]
    fn cyclic_group_of_order_three() {
        // a^3 = 1 with a' = a^2
        let al = GeneratorAlphabet::from_chars("a").unwrap();
        let rs = RewritingSystem::new(&al, rules(&al, &[("aa", "a'"), ("a'a'", "a")])).unwrap();
        let w = al.parse_word("aaaa").unwrap();
        assert_eq!(al.format(&Word(rs.normalize(w.letters()))), "a");
    }
}
