//! Integer Laurent polynomials `Z[t_1^±1, …, t_q^±1]`, the group ring of
//! the deck group, and their image in `Λ_Z`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::degree::{Cutoff, DegreeForm, LatticePoint};
use crate::error::{Error, Result};
use crate::series::{CoeffDomain, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    q: usize,
    terms: BTreeMap<LatticePoint, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(q: usize) -> Self {
        LaurentPolynomial {
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(q: usize, terms: impl IntoIterator<Item = (LatticePoint, BigInt)>) -> Result<Self> {
        let mut map: BTreeMap<LatticePoint, BigInt> = BTreeMap::new();
        for (n, c) in terms {
            if n.dim() != q {
                return Err(Error::DimensionMismatch {
                    expected: q,
                    found: n.dim(),
                });
            }
            *map.entry(n).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LaurentPolynomial { q, terms: map })
    }

    /// Reads an exact integral series back as a polynomial.
    pub fn from_series(s: &Series) -> Result<Self> {
        if !s.is_exact() {
            return Err(Error::InvalidData(format!(
                "`{s}` is truncated, not a Laurent polynomial"
            )));
        }
        let mut terms = Vec::new();
        for (n, c) in s.terms() {
            if !c.denom().is_one() {
                return Err(Error::NonIntegral(c.to_string()));
            }
            terms.push((n.clone(), c.to_integer()));
        }
        LaurentPolynomial::from_terms(s.form().q(), terms)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Units of the group ring are exactly `±t^n`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        LaurentPolynomial::from_terms(
            self.q,
            self.terms.iter().chain(&other.terms).map(|(n, c)| (n.clone(), c.clone())),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (n, a) in &self.terms {
            for (m, b) in &other.terms {
                out.push((n + m, a * b));
            }
        }
        LaurentPolynomial::from_terms(self.q, out)
    }

    /// The image in `Λ_Z`: the same terms, exact.
    pub fn to_series(&self, form: &Arc<DegreeForm>) -> Result<Series> {
        if form.q() != self.q {
            return Err(Error::DimensionMismatch {
                expected: form.q(),
                found: self.q,
            });
        }
        Series::from_terms(
            form,
            CoeffDomain::Integers,
            self.terms
                .iter()
                .map(|(n, c)| (n.clone(), BigRational::from_integer(c.clone()))),
            Cutoff::Infinite,
        )
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Terms in lexicographic exponent order; no degree form is involved.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (n, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if n.is_zero() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            if self.q == 1 {
                match n.coords()[0] {
                    1 => f.write_str("t")?,
                    k => write!(f, "t^{k}")?,
                }
            } else {
                write!(f, "t^{n}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(1, terms.iter().map(|&(e, c)| (LatticePoint::from(vec![e]), c.into())))
            .unwrap()
    }

    #[test]
    fn units_are_signed_monomials() {
        assert!(poly(&[(3, -1)]).is_unit());
        assert!(!poly(&[(0, 1), (1, -1)]).is_unit());
        assert!(!poly(&[(0, 2)]).is_unit());
        assert!(!LaurentPolynomial::zero(1).is_unit());
    }

    #[test]
    fn becomes_a_unit_in_the_novikov_ring() {
        let f = Arc::new(DegreeForm::cyclic());
        let p = poly(&[(0, 1), (1, -1)]);
        let s = p.to_series(&f).unwrap();
        assert!(s.is_exact() && s.is_unit().unwrap());
        assert_eq!(LaurentPolynomial::from_series(&s).unwrap(), p);
    }

    #[test]
    fn ring_operations() {
        let p = poly(&[(0, 1), (1, -1)]);
        let q = poly(&[(0, 1), (1, 1)]);
        assert_eq!(p.mul(&q).unwrap(), poly(&[(0, 1), (2, -1)]));
        assert_eq!(p.add(&q).unwrap(), poly(&[(0, 2)]));
        assert_eq!(p.to_string(), "1 - t");
    }
}
