use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{parse_rational, GroupSpec, RatMatrix};
use crate::alphabet::GeneratorAlphabet;
use crate::error::{Error, Result};

/// On-disk group spec document.
///
/// ```json
/// {
///   "alphabet": { "letters": ["a", "t"], "inverses": { "a": "A" } },
///   "backend": { "kind": "matrix", "matrices": { "a": [["1", "1"], ["0", "1"]],
///                                               "t": [["2", "0"], ["0", "1"]] } }
/// }
/// ```
///
/// `alphabet` may also be a bare list of generator names. Inverse letters default to
/// the generator name with a `'` suffix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub alphabet: AlphabetFile,
    pub backend: BackendFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphabetFile {
    Letters(Vec<String>),
    Full {
        letters: Vec<String>,
        #[serde(default)]
        inverses: BTreeMap<String, String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BackendFile {
    Free,
    FreeAbelian {
        rank: usize,
    },
    /// Rational entries as `"p/q"` strings, keyed by letter name. Inverse letters are
    /// optional and checked when present.
    Matrix {
        matrices: BTreeMap<String, Vec<Vec<String>>>,
    },
    /// 0-based image lists keyed by generator name.
    Permutation {
        permutations: BTreeMap<String, Vec<u32>>,
    },
    /// `[lhs, rhs]` word pairs in CLI word syntax.
    Rewriting {
        rules: Vec<[String; 2]>,
    },
}

impl GroupSpecFile {
    pub fn build(&self) -> Result<GroupSpec> {
        let alphabet = match &self.alphabet {
            AlphabetFile::Letters(letters) => {
                let refs: Vec<&str> = letters.iter().map(String::as_str).collect();
                GeneratorAlphabet::new(&refs, &BTreeMap::new())?
            }
            AlphabetFile::Full { letters, inverses } => {
                let refs: Vec<&str> = letters.iter().map(String::as_str).collect();
                GeneratorAlphabet::new(&refs, inverses)?
            }
        };
        match &self.backend {
            BackendFile::Free => Ok(GroupSpec {
                alphabet,
                backend: super::Backend::Free,
            }),
            BackendFile::FreeAbelian { rank } => {
                if *rank != alphabet.generators().len() {
                    return Err(Error::InvalidSpec(format!(
                        "rank {rank} does not match {} generators",
                        alphabet.generators().len()
                    )));
                }
                Ok(GroupSpec {
                    alphabet,
                    backend: super::Backend::FreeAbelian { rank: *rank },
                })
            }
            BackendFile::Matrix { matrices } => {
                for name in matrices.keys() {
                    alphabet.letter(name)?;
                }
                let parse = |rows: &Vec<Vec<String>>| -> Result<RatMatrix> {
                    let rows = rows
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|s| parse_rational(s))
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    RatMatrix::from_rows(rows)
                };
                let mut gens = Vec::new();
                let mut invs = Vec::new();
                for &g in alphabet.generators() {
                    let name = alphabet.name(g);
                    let m = matrices.get(name).ok_or_else(|| {
                        Error::InvalidSpec(format!("no matrix for generator {name:?}"))
                    })?;
                    gens.push(parse(m)?);
                    let inv_name = alphabet.name(alphabet.inverse(g));
                    invs.push(matrices.get(inv_name).map(parse).transpose()?);
                }
                GroupSpec::matrix(alphabet, gens, invs)
            }
            BackendFile::Permutation { permutations } => {
                let mut images = Vec::new();
                for name in permutations.keys() {
                    let x = alphabet.letter(name)?;
                    if !alphabet.generators().contains(&x) {
                        return Err(Error::InvalidSpec(format!(
                            "permutation given for inverse letter {name:?}"
                        )));
                    }
                }
                for &g in alphabet.generators() {
                    let name = alphabet.name(g);
                    images.push(permutations.get(name).cloned().ok_or_else(|| {
                        Error::InvalidSpec(format!("no permutation for generator {name:?}"))
                    })?);
                }
                GroupSpec::permutation(alphabet, images)
            }
            BackendFile::Rewriting { rules } => {
                let rules = rules
                    .iter()
                    .map(|[l, r]| Ok((alphabet.parse_word(l)?, alphabet.parse_word(r)?)))
                    .collect::<Result<Vec<_>>>()?;
                GroupSpec::rewriting(alphabet, rules)
            }
        }
    }
}
