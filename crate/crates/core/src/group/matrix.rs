//! Exact-rational square matrices. Affine maps `x -> a*x + b` are the 2x2 matrices
//! `[[a, b], [0, 1]]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Parses `"p/q"` or `"p"` with an optional leading sign on `p` and `q > 0`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (text, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = match den {
        None => BigInt::one(),
        Some(q) => {
            if q.is_empty() || !q.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            q.parse().map_err(|_| bad())?
        }
    };
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    dim: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigRational::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigRational::one();
        }
        RatMatrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidSpec(
                "matrix must be square and nonempty".into(),
            ));
        }
        Ok(RatMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// The affine map `x -> scale*x + shift` as a 2x2 matrix.
    pub fn affine(scale: BigRational, shift: BigRational) -> Self {
        RatMatrix {
            dim: 2,
            entries: vec![scale, shift, BigRational::zero(), BigRational::one()],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.dim + col]
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc += a * other.get(k, j);
                }
                entries.push(acc);
            }
        }
        RatMatrix { dim: n, entries }
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut inv = RatMatrix::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] /= &p;
                inv[col * n + j] /= &p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let da = &factor * &a[col * n + j];
                    let di = &factor * &inv[col * n + j];
                    a[r * n + j] -= da;
                    inv[r * n + j] -= di;
                }
            }
        }
        Some(RatMatrix {
            dim: n,
            entries: inv,
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == RatMatrix::identity(self.dim)
    }

    /// Largest absolute numerator or denominator, for diagnostics.
    pub fn height(&self) -> BigInt {
        self.entries
            .iter()
            .flat_map(|r| [r.numer().abs(), r.denom().abs()])
            .max()
            .unwrap_or_default()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| format_rational(self.get(i, j)))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn rational_grammar() {
        assert_eq!(q("3/6"), q("1/2"));
        assert_eq!(q("-2/4"), q("-1/2"));
        assert_eq!(q("+7"), q("7"));
        assert_eq!(format_rational(&q("-6/4")), "-3/2");
        for bad in [
            "", "1/0", "1/-2", "1.5", "a", "1/", "/2", "--1", " 1", "1/+2", "+",
        ] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn inverse_of_affine() {
        let t = RatMatrix::affine(q("2"), q("0"));
        let a = RatMatrix::affine(q("1"), q("1"));
        let tinv = t.inverse().unwrap();
        assert_eq!(tinv, RatMatrix::affine(q("1/2"), q("0")));
        // t a t^-1 = a^2: x -> 2((x/2) + 1) = x + 2
        assert_eq!(t.mul(&a).mul(&tinv), a.mul(&a));
        assert!(
            RatMatrix::from_rows(vec![vec![q("1"), q("2")], vec![q("2"), q("4")]])
                .unwrap()
                .inverse()
                .is_none()
        );
    }
}
