//! Exact group arithmetic behind interchangeable backends.
//!
//! Every backend produces a canonical [`GroupElement`]: two elements are equal in the
//! group iff their keys compare equal, so elements can key hash maps directly.

mod matrix;
mod rewriting;
mod spec_file;

use std::sync::Arc;

pub use matrix::{format_rational, parse_rational, RatMatrix};
pub use rewriting::{RewritingSystem, Rule};
pub use spec_file::{BackendFile, GroupSpecFile};

use crate::alphabet::{GeneratorAlphabet, Letter, Word};
use crate::error::{Error, Result};

/// Canonical form of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    /// Freely reduced word.
    Free(Vec<Letter>),
    /// Coordinate vector.
    Abelian(Vec<i64>),
    Matrix(Arc<RatMatrix>),
    /// Image list `i -> p[i]`.
    Perm(Vec<u32>),
    /// Normal form under a confluent rewriting system.
    Rewrite(Vec<Letter>),
}

#[derive(Debug, Clone)]
pub enum Backend {
    Free,
    FreeAbelian {
        rank: usize,
    },
    /// One image per letter, inverses included.
    Matrix {
        images: Vec<Arc<RatMatrix>>,
    },
    Permutation {
        degree: usize,
        images: Vec<Vec<u32>>,
    },
    Rewriting(RewritingSystem),
}

#[derive(Debug, Clone)]
pub struct GroupSpec {
    alphabet: GeneratorAlphabet,
    backend: Backend,
}

impl GroupSpec {
    /// Free group on the given single-character generators.
    pub fn free(generators: &str) -> Result<Self> {
        Ok(GroupSpec {
            alphabet: GeneratorAlphabet::from_chars(generators)?,
            backend: Backend::Free,
        })
    }

    /// Free abelian group; the i-th generator maps to the i-th unit vector.
    pub fn free_abelian(generators: &str) -> Result<Self> {
        let alphabet = GeneratorAlphabet::from_chars(generators)?;
        let rank = alphabet.generators().len();
        Ok(GroupSpec {
            alphabet,
            backend: Backend::FreeAbelian { rank },
        })
    }

    /// Matrix backend from images of the generators; inverse images are computed
    /// unless given explicitly in `inverse_images`.
    pub fn matrix(
        alphabet: GeneratorAlphabet,
        generator_images: Vec<RatMatrix>,
        inverse_images: Vec<Option<RatMatrix>>,
    ) -> Result<Self> {
        let gens = alphabet.generators().to_vec();
        if generator_images.len() != gens.len() || inverse_images.len() != gens.len() {
            return Err(Error::InvalidSpec(
                "matrix backend needs one image per generator".into(),
            ));
        }
        let dim = generator_images[0].dim();
        let mut images: Vec<Option<Arc<RatMatrix>>> = vec![None; alphabet.len()];
        for ((g, m), given_inv) in gens.iter().zip(generator_images).zip(inverse_images) {
            if m.dim() != dim {
                return Err(Error::InvalidSpec("matrices differ in dimension".into()));
            }
            let inv = match given_inv {
                Some(inv) => {
                    if !m.mul(&inv).is_identity() {
                        return Err(Error::InvalidSpec(format!(
                            "image of {} is not inverse to image of {}",
                            alphabet.name(alphabet.inverse(*g)),
                            alphabet.name(*g)
                        )));
                    }
                    inv
                }
                None => m.inverse().ok_or_else(|| {
                    Error::InvalidSpec(format!("image of {} is singular", alphabet.name(*g)))
                })?,
            };
            images[g.index()] = Some(Arc::new(m));
            images[alphabet.inverse(*g).index()] = Some(Arc::new(inv));
        }
        Ok(GroupSpec {
            alphabet,
            backend: Backend::Matrix {
                images: images.into_iter().map(Option::unwrap).collect(),
            },
        })
    }

    /// Permutation backend; inverse images are computed from generator images.
    pub fn permutation(
        alphabet: GeneratorAlphabet,
        generator_images: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let gens = alphabet.generators().to_vec();
        if generator_images.len() != gens.len() {
            return Err(Error::InvalidSpec(
                "permutation backend needs one image per generator".into(),
            ));
        }
        let degree = generator_images[0].len();
        let mut images = vec![Vec::new(); alphabet.len()];
        for (g, p) in gens.iter().zip(generator_images) {
            if p.len() != degree {
                return Err(Error::InvalidSpec("permutations differ in degree".into()));
            }
            let mut inv = vec![u32::MAX; degree];
            for (i, &j) in p.iter().enumerate() {
                if j as usize >= degree || inv[j as usize] != u32::MAX {
                    return Err(Error::InvalidSpec(format!(
                        "image of {} is not a permutation",
                        alphabet.name(*g)
                    )));
                }
                inv[j as usize] = i as u32;
            }
            images[g.index()] = p;
            images[alphabet.inverse(*g).index()] = inv;
        }
        Ok(GroupSpec {
            alphabet,
            backend: Backend::Permutation { degree, images },
        })
    }

    pub fn rewriting(alphabet: GeneratorAlphabet, rules: Vec<(Word, Word)>) -> Result<Self> {
        let system = RewritingSystem::new(&alphabet, rules)?;
        Ok(GroupSpec {
            alphabet,
            backend: Backend::Rewriting(system),
        })
    }

    /// Loads a JSON group spec document.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GroupSpecFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        file.build()
    }

    pub fn alphabet(&self) -> &GeneratorAlphabet {
        &self.alphabet
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.alphabet.format(w)
    }

    pub fn identity(&self) -> GroupElement {
        match &self.backend {
            Backend::Free => GroupElement::Free(Vec::new()),
            Backend::FreeAbelian { rank } => GroupElement::Abelian(vec![0; *rank]),
            Backend::Matrix { images } => {
                GroupElement::Matrix(Arc::new(RatMatrix::identity(images[0].dim())))
            }
            Backend::Permutation { degree, .. } => {
                GroupElement::Perm((0..*degree as u32).collect())
            }
            Backend::Rewriting(_) => GroupElement::Rewrite(Vec::new()),
        }
    }

    fn check_letter(&self, x: Letter) -> Result<()> {
        if self.alphabet.contains(x) {
            Ok(())
        } else {
            Err(Error::UnknownLetter(format!("#{}", x.0)))
        }
    }

    /// `g·x` in canonical form.
    pub fn multiply(&self, g: &GroupElement, x: Letter) -> Result<GroupElement> {
        self.check_letter(x)?;
        Ok(self.multiply_unchecked(g, x))
    }

    pub(crate) fn multiply_unchecked(&self, g: &GroupElement, x: Letter) -> GroupElement {
        match (&self.backend, g) {
            (Backend::Free, GroupElement::Free(w)) => {
                let mut w = w.clone();
                if w.last() == Some(&self.alphabet.inverse(x)) {
                    w.pop();
                } else {
                    w.push(x);
                }
                GroupElement::Free(w)
            }
            (Backend::FreeAbelian { .. }, GroupElement::Abelian(v)) => {
                let mut v = v.clone();
                let coord = x.index() / 2;
                v[coord] += if x.index() % 2 == 0 { 1 } else { -1 };
                GroupElement::Abelian(v)
            }
            (Backend::Matrix { images }, GroupElement::Matrix(m)) => {
                GroupElement::Matrix(Arc::new(m.mul(&images[x.index()])))
            }
            (Backend::Permutation { images, .. }, GroupElement::Perm(p)) => {
                let img = &images[x.index()];
                GroupElement::Perm(p.iter().map(|&i| img[i as usize]).collect())
            }
            (Backend::Rewriting(rs), GroupElement::Rewrite(w)) => {
                let mut w = w.clone();
                rs.push_all(&mut w, &[x]);
                GroupElement::Rewrite(w)
            }
            _ => panic!("group element does not belong to this backend"),
        }
    }

    /// Canonical element represented by `w`; the empty word gives the identity.
    pub fn eval_word(&self, w: &Word) -> Result<GroupElement> {
        self.alphabet.check_word(w)?;
        Ok(self.apply_word(&self.identity(), w))
    }

    /// `g·w`, letters already validated.
    pub(crate) fn apply_word(&self, g: &GroupElement, w: &Word) -> GroupElement {
        match (&self.backend, g) {
            (Backend::Rewriting(rs), GroupElement::Rewrite(v)) => {
                let mut v = v.clone();
                rs.push_all(&mut v, w.letters());
                GroupElement::Rewrite(v)
            }
            _ => w
                .letters()
                .iter()
                .fold(g.clone(), |acc, &x| self.multiply_unchecked(&acc, x)),
        }
    }

    /// `g·h`.
    pub fn product(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        match (&self.backend, g, h) {
            (Backend::Free, GroupElement::Free(_), GroupElement::Free(b)) => {
                self.apply_word(g, &Word(b.clone()))
            }
            (Backend::FreeAbelian { .. }, GroupElement::Abelian(a), GroupElement::Abelian(b)) => {
                GroupElement::Abelian(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Backend::Matrix { .. }, GroupElement::Matrix(a), GroupElement::Matrix(b)) => {
                GroupElement::Matrix(Arc::new(a.mul(b)))
            }
            (Backend::Permutation { .. }, GroupElement::Perm(a), GroupElement::Perm(b)) => {
                GroupElement::Perm(a.iter().map(|&i| b[i as usize]).collect())
            }
            (Backend::Rewriting(_), GroupElement::Rewrite(_), GroupElement::Rewrite(b)) => {
                self.apply_word(g, &Word(b.clone()))
            }
            _ => panic!("group elements do not belong to this backend"),
        }
    }

    pub fn invert(&self, g: &GroupElement) -> GroupElement {
        match (&self.backend, g) {
            (Backend::Free, GroupElement::Free(w)) => {
                GroupElement::Free(w.iter().rev().map(|&x| self.alphabet.inverse(x)).collect())
            }
            (Backend::FreeAbelian { .. }, GroupElement::Abelian(v)) => {
                GroupElement::Abelian(v.iter().map(|x| -x).collect())
            }
            (Backend::Matrix { .. }, GroupElement::Matrix(m)) => GroupElement::Matrix(Arc::new(
                m.inverse().expect("group elements are invertible"),
            )),
            (Backend::Permutation { .. }, GroupElement::Perm(p)) => {
                let mut inv = vec![0; p.len()];
                for (i, &j) in p.iter().enumerate() {
                    inv[j as usize] = i as u32;
                }
                GroupElement::Perm(inv)
            }
            (Backend::Rewriting(_), GroupElement::Rewrite(w)) => {
                let inv = self.alphabet.inverse_word(&Word(w.clone()));
                self.apply_word(&self.identity(), &inv)
            }
            _ => panic!("group element does not belong to this backend"),
        }
    }

    /// `g⁻¹h`, the element whose length is `d(g, h)`.
    pub fn difference(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.product(&self.invert(g), h)
    }

    /// Short human-readable rendering of an element.
    pub fn describe(&self, g: &GroupElement) -> String {
        match g {
            GroupElement::Free(w) | GroupElement::Rewrite(w) => {
                let s = self.alphabet.format(&Word(w.clone()));
                if s.is_empty() {
                    "1".into()
                } else {
                    s
                }
            }
            GroupElement::Abelian(v) => format!("{v:?}"),
            GroupElement::Matrix(m) => format!("{:?}", m.to_strings()),
            GroupElement::Perm(p) => format!("{p:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs12() -> GroupSpec {
        let al = GeneratorAlphabet::from_chars("at").unwrap();
        let q = |s: &str| parse_rational(s).unwrap();
        GroupSpec::matrix(
            al,
            vec![
                RatMatrix::affine(q("1"), q("1")),
                RatMatrix::affine(q("2"), q("0")),
            ],
            vec![None, None],
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        let f = GroupSpec::free("ab").unwrap();
        let w = f.parse_word("aa'").unwrap();
        assert_eq!(f.eval_word(&w).unwrap(), f.identity());

        let z2 = GroupSpec::free_abelian("ab").unwrap();
        let w = z2.parse_word("aab").unwrap();
        assert_eq!(z2.eval_word(&w).unwrap(), GroupElement::Abelian(vec![2, 1]));

        let bs = bs12();
        let lhs = bs.eval_word(&bs.parse_word("tat'").unwrap()).unwrap();
        let rhs = bs.eval_word(&bs.parse_word("aa").unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let two = parse_rational("2").unwrap();
        let expected = RatMatrix::affine(parse_rational("1").unwrap(), two);
        assert_eq!(lhs, GroupElement::Matrix(Arc::new(expected)));
    }

    #[test]
    fn multiply_examples() {
        let f = GroupSpec::free("ab").unwrap();
        let a = f.alphabet().letter("a").unwrap();
        assert_eq!(
            f.multiply(&f.identity(), a).unwrap(),
            f.eval_word(&f.parse_word("a").unwrap()).unwrap()
        );
        let z2 = GroupSpec::free_abelian("ab").unwrap();
        let b = z2.alphabet().letter("b").unwrap();
        assert_eq!(
            z2.multiply(&GroupElement::Abelian(vec![1, 0]), b).unwrap(),
            GroupElement::Abelian(vec![1, 1])
        );
        let s2 = GroupSpec::permutation(
            GeneratorAlphabet::from_chars("s").unwrap(),
            vec![vec![1, 0]],
        )
        .unwrap();
        let s = s2.alphabet().letter("s").unwrap();
        assert_eq!(
            s2.multiply(&GroupElement::Perm(vec![1, 0]), s).unwrap(),
            s2.identity()
        );
        assert!(matches!(
            f.multiply(&f.identity(), Letter(9)),
            Err(Error::UnknownLetter(_))
        ));
    }

    #[test]
    fn invert_examples() {
        let f = GroupSpec::free("ab").unwrap();
        assert_eq!(f.invert(&f.identity()), f.identity());
        let ab = f.eval_word(&f.parse_word("ab").unwrap()).unwrap();
        assert_eq!(f.describe(&f.invert(&ab)), "b'a'");
        let z2 = GroupSpec::free_abelian("ab").unwrap();
        assert_eq!(
            z2.invert(&GroupElement::Abelian(vec![2, -1])),
            GroupElement::Abelian(vec![-2, 1])
        );
    }

    #[test]
    fn bad_images_rejected() {
        let al = GeneratorAlphabet::from_chars("s").unwrap();
        assert!(GroupSpec::permutation(al.clone(), vec![vec![0, 0]]).is_err());
        let q = |s: &str| parse_rational(s).unwrap();
        let singular = RatMatrix::affine(q("0"), q("1"));
        assert!(GroupSpec::matrix(al.clone(), vec![singular], vec![None]).is_err());
        let m = RatMatrix::affine(q("2"), q("0"));
        let wrong = Some(RatMatrix::affine(q("2"), q("0")));
        assert!(GroupSpec::matrix(al, vec![m], vec![wrong]).is_err());
    }
}
