//! Degrees of lattice monomials.
//!
//! A period form `χ: Z^q → R` is stored exactly: each period is a rational
//! vector over a formal basis `1, b_1, …, b_r` of reals that are trusted to be
//! linearly independent over `Q`. Equality of degrees is therefore exact
//! (componentwise), and the sign of a nonzero degree is decided by evaluating
//! it on the user-supplied rational enclosures of the `b_k`, walking through
//! successively tighter refinements. When every refinement still straddles
//! zero the comparison fails with [`Error::OrderingUndecidable`] instead of
//! guessing.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;

/// A closed rational interval `[lo, hi]` enclosing one basis real.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        Enclosure { lo, hi }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    name: String,
    refinements: Vec<Enclosure>,
}

impl BasisElement {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn refinements(&self) -> &[Enclosure] {
        &self.refinements
    }

    fn at_level(&self, level: usize) -> &Enclosure {
        &self.refinements[level.min(self.refinements.len() - 1)]
    }
}

/// The basis `b_0 = 1, b_1, …, b_r` that degree coordinates refer to.
///
/// `b_0` is implicit; only the irrational elements are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalRealBasis {
    elements: Vec<BasisElement>,
}

impl FormalRealBasis {
    /// The basis consisting of the rational unit alone.
    pub fn rational() -> Self {
        FormalRealBasis::default()
    }

    /// Number of degree coordinates, `r + 1`.
    pub fn dim(&self) -> usize {
        self.elements.len() + 1
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    /// Coordinate index of a symbol (`1` for the first declared element).
    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| e.name == symbol)
            .map(|i| i + 1)
    }

    /// Declares a new positive basis real with its refinement list, coarsest
    /// first.
    pub fn push(&mut self, name: &str, refinements: Vec<Enclosure>) -> Result<usize> {
        let valid_name = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid_name || name == "t" || name == "deg" || name == "O" {
            return Err(Error::InvalidBasis(format!("`{name}` is not a usable symbol")));
        }
        if self.index_of(name).is_some() {
            return Err(Error::InvalidBasis(format!("symbol `{name}` declared twice")));
        }
        if refinements.is_empty() {
            return Err(Error::InvalidBasis(format!("`{name}` has no enclosure")));
        }
        for (i, e) in refinements.iter().enumerate() {
            if !e.lo.is_positive() || e.lo > e.hi {
                return Err(Error::InvalidBasis(format!(
                    "enclosure {i} of `{name}` must satisfy 0 < lo <= hi"
                )));
            }
            if i > 0 {
                let prev = &refinements[i - 1];
                if e.lo < prev.lo || e.hi > prev.hi {
                    return Err(Error::InvalidBasis(format!(
                        "enclosure {i} of `{name}` is not nested in enclosure {}",
                        i - 1
                    )));
                }
            }
        }
        self.elements.push(BasisElement {
            name: name.to_string(),
            refinements,
        });
        Ok(self.elements.len())
    }

    /// Declares `sqrt(n)` with decimal enclosures of 6, 12, 24 and 48 digits.
    pub fn push_sqrt(&mut self, name: &str, n: u64) -> Result<usize> {
        let root = n.sqrt();
        if root * root == n {
            return Err(Error::InvalidBasis(format!(
                "sqrt({n}) is rational and cannot be a basis element"
            )));
        }
        let refinements = [6u32, 12, 24, 48]
            .iter()
            .map(|&digits| {
                let scale = BigInt::from(10u32).pow(digits);
                let floor = (BigInt::from(n) * &scale * &scale).sqrt();
                Enclosure::new(
                    BigRational::new(floor.clone(), scale.clone()),
                    BigRational::new(floor + 1, scale),
                )
            })
            .collect();
        self.push(name, refinements)
    }

    fn depth(&self) -> usize {
        self.elements
            .iter()
            .map(|e| e.refinements.len())
            .max()
            .unwrap_or(1)
    }

    /// Sign of a degree value, certified by interval evaluation.
    pub fn sign(&self, value: &DegreeValue) -> Result<Ordering> {
        self.check_dim(value)?;
        let c = &value.0;
        if c[1..].iter().all(Zero::is_zero) {
            return Ok(c[0].cmp(&BigRational::zero()));
        }
        for level in 0..self.depth() {
            let mut lo = c[0].clone();
            let mut hi = c[0].clone();
            for (k, e) in self.elements.iter().enumerate() {
                let coeff = &c[k + 1];
                if coeff.is_zero() {
                    continue;
                }
                let enc = e.at_level(level);
                if coeff.is_positive() {
                    lo += coeff * &enc.lo;
                    hi += coeff * &enc.hi;
                } else {
                    lo += coeff * &enc.hi;
                    hi += coeff * &enc.lo;
                }
            }
            if lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if hi.is_negative() {
                return Ok(Ordering::Less);
            }
        }
        Err(Error::OrderingUndecidable {
            value: self.render(value),
        })
    }

    pub fn compare(&self, a: &DegreeValue, b: &DegreeValue) -> Result<Ordering> {
        if a == b {
            return Ok(Ordering::Equal);
        }
        self.sign(&(a - b))
    }

    fn check_dim(&self, value: &DegreeValue) -> Result<()> {
        if value.0.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: value.0.len(),
            });
        }
        Ok(())
    }

    /// Renders a degree as a linear combination of the basis symbols, e.g.
    /// `3/2 - 2*xi`.
    pub fn render(&self, value: &DegreeValue) -> String {
        let mut out = String::new();
        for (k, c) in value.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if k == 0 {
                out.push_str(&abs.to_string());
            } else {
                let name = self
                    .elements
                    .get(k - 1)
                    .map(|e| e.name.as_str())
                    .unwrap_or("?");
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(name);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// A real number represented exactly by rational coordinates over a
/// [`FormalRealBasis`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeValue(Vec<BigRational>);

impl DegreeValue {
    pub fn new(coords: Vec<BigRational>) -> Self {
        DegreeValue(coords)
    }

    pub fn zero(dim: usize) -> Self {
        DegreeValue(vec![BigRational::zero(); dim])
    }

    /// The rational number `value`, embedded along `b_0`.
    pub fn rational(value: BigRational, dim: usize) -> Self {
        let mut d = Self::zero(dim);
        d.0[0] = value;
        d
    }

    pub fn integer(value: i64, dim: usize) -> Self {
        Self::rational(BigRational::from_integer(value.into()), dim)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &BigRational) -> DegreeValue {
        DegreeValue(self.0.iter().map(|c| c * factor).collect())
    }
}

impl Add for &DegreeValue {
    type Output = DegreeValue;

    fn add(self, rhs: &DegreeValue) -> DegreeValue {
        DegreeValue(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DegreeValue {
    type Output = DegreeValue;

    fn sub(self, rhs: &DegreeValue) -> DegreeValue {
        DegreeValue(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DegreeValue {
    type Output = DegreeValue;

    fn neg(self) -> DegreeValue {
        DegreeValue(self.0.iter().map(|c| -c).collect())
    }
}

/// An exponent vector `n ∈ Z^q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn zero(q: usize) -> Self {
        LatticePoint(vec![0; q])
    }

    /// The `k`-th unit vector.
    pub fn unit(q: usize, k: usize) -> Self {
        let mut v = vec![0; q];
        v[k] = 1;
        LatticePoint(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;

    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;

    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;

    fn neg(self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Upper end of a certified degree window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cutoff {
    Finite(DegreeValue),
    Infinite,
}

impl Cutoff {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Cutoff::Infinite)
    }

    pub fn finite(&self) -> Option<&DegreeValue> {
        match self {
            Cutoff::Finite(d) => Some(d),
            Cutoff::Infinite => None,
        }
    }

    /// Translates the cutoff by a degree; `+∞` stays `+∞`.
    pub fn shift(&self, by: &DegreeValue) -> Cutoff {
        match self {
            Cutoff::Finite(d) => Cutoff::Finite(d + by),
            Cutoff::Infinite => Cutoff::Infinite,
        }
    }
}

/// The period homomorphism `χ: Z^q → R`, validated positive and injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeForm {
    basis: FormalRealBasis,
    periods: Vec<DegreeValue>,
}

impl DegreeForm {
    pub fn new(basis: FormalRealBasis, periods: Vec<DegreeValue>) -> Result<Self> {
        for (i, p) in periods.iter().enumerate() {
            basis.check_dim(p)?;
            if basis.sign(p)? != Ordering::Greater {
                return Err(Error::InvalidForm(format!(
                    "period {} = {} is not strictly positive",
                    i + 1,
                    basis.render(p)
                )));
            }
        }
        let rows: Vec<Vec<BigRational>> = periods.iter().map(|p| p.0.clone()).collect();
        if linalg::rank(&rows) != periods.len() {
            return Err(Error::InvalidForm(
                "periods are linearly dependent over Q, so the form is not injective".into(),
            ));
        }
        Ok(DegreeForm { basis, periods })
    }

    /// `q = 0`: the Novikov ring collapses to `Z` (compact Morse theory).
    pub fn trivial() -> Self {
        DegreeForm {
            basis: FormalRealBasis::rational(),
            periods: Vec::new(),
        }
    }

    /// `q = 1`, `χ = (1)`.
    pub fn cyclic() -> Self {
        DegreeForm {
            basis: FormalRealBasis::rational(),
            periods: vec![DegreeValue::integer(1, 1)],
        }
    }

    /// `q = 2`, `χ = (1, sqrt(n))` with the irrational period named `name`.
    pub fn with_sqrt(name: &str, n: u64) -> Result<Self> {
        let mut basis = FormalRealBasis::rational();
        let k = basis.push_sqrt(name, n)?;
        let mut xi = DegreeValue::zero(basis.dim());
        xi.0[k] = BigRational::one();
        let one = DegreeValue::integer(1, basis.dim());
        DegreeForm::new(basis, vec![one, xi])
    }

    pub fn q(&self) -> usize {
        self.periods.len()
    }

    pub fn basis(&self) -> &FormalRealBasis {
        &self.basis
    }

    pub fn periods(&self) -> &[DegreeValue] {
        &self.periods
    }

    /// Number of degree coordinates.
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn zero_degree(&self) -> DegreeValue {
        DegreeValue::zero(self.dim())
    }

    pub fn integer_degree(&self, value: i64) -> DegreeValue {
        DegreeValue::integer(value, self.dim())
    }

    pub fn check_point(&self, n: &LatticePoint) -> Result<()> {
        if n.dim() != self.q() {
            return Err(Error::DimensionMismatch {
                expected: self.q(),
                found: n.dim(),
            });
        }
        Ok(())
    }

    /// `χ(n) = Σ n_i · period_i`, exactly.
    pub fn degree_of(&self, n: &LatticePoint) -> Result<DegreeValue> {
        self.check_point(n)?;
        Ok(self.degree_unchecked(n))
    }

    pub(crate) fn degree_unchecked(&self, n: &LatticePoint) -> DegreeValue {
        let mut acc = vec![BigRational::zero(); self.dim()];
        for (&ni, p) in n.0.iter().zip(&self.periods) {
            if ni == 0 {
                continue;
            }
            let ni = BigRational::from_integer(ni.into());
            for (a, c) in acc.iter_mut().zip(&p.0) {
                *a += &ni * c;
            }
        }
        DegreeValue(acc)
    }

    pub fn compare(&self, a: &DegreeValue, b: &DegreeValue) -> Result<Ordering> {
        self.basis.compare(a, b)
    }

    pub fn sign(&self, a: &DegreeValue) -> Result<Ordering> {
        self.basis.sign(a)
    }

    /// Whether `d` lies strictly below the cutoff.
    pub fn below(&self, d: &DegreeValue, cutoff: &Cutoff) -> Result<bool> {
        match cutoff {
            Cutoff::Infinite => Ok(true),
            Cutoff::Finite(c) => Ok(self.compare(d, c)? == Ordering::Less),
        }
    }

    pub fn min_cutoff(&self, a: &Cutoff, b: &Cutoff) -> Result<Cutoff> {
        Ok(match (a, b) {
            (Cutoff::Infinite, x) | (x, Cutoff::Infinite) => x.clone(),
            (Cutoff::Finite(x), Cutoff::Finite(y)) => {
                if self.compare(x, y)? == Ordering::Greater {
                    b.clone()
                } else {
                    a.clone()
                }
            }
        })
    }

    /// `a <= b` for cutoffs, with `+∞` the top element.
    pub fn cutoff_le(&self, a: &Cutoff, b: &Cutoff) -> Result<bool> {
        Ok(match (a, b) {
            (_, Cutoff::Infinite) => true,
            (Cutoff::Infinite, Cutoff::Finite(_)) => false,
            (Cutoff::Finite(x), Cutoff::Finite(y)) => self.compare(x, y)? != Ordering::Greater,
        })
    }

    pub fn render(&self, value: &DegreeValue) -> String {
        self.basis.render(value)
    }

    /// Sorts values by degree; fails if any comparison is undecidable.
    pub fn sort_by_degree<T>(
        &self,
        items: &mut [T],
        degree: impl Fn(&T) -> &DegreeValue,
    ) -> Result<()> {
        let mut failure = None;
        items.sort_by(|a, b| match self.compare(degree(a), degree(b)) {
            Ok(o) => o,
            Err(e) => {
                failure.get_or_insert(e);
                Ordering::Equal
            }
        });
        failure.map_or(Ok(()), Err)
    }
}

/// How the support continues below its smallest stored point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    /// The stored points are everything below the cutoff.
    Complete,
    /// The set keeps descending in degree below the stored points.
    Unbounded,
}

/// A lattice support known through a cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    pub points: BTreeSet<LatticePoint>,
    pub cutoff: Cutoff,
    pub tail: Tail,
}

impl SupportSet {
    pub fn new(points: impl IntoIterator<Item = LatticePoint>, cutoff: Cutoff) -> Self {
        SupportSet {
            points: points.into_iter().collect(),
            cutoff,
            tail: Tail::Complete,
        }
    }

    pub fn descending(points: impl IntoIterator<Item = LatticePoint>, cutoff: Cutoff) -> Self {
        SupportSet {
            tail: Tail::Unbounded,
            ..Self::new(points, cutoff)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportClass {
    pub slab_compact: bool,
    pub forward: bool,
    pub compact_forward: bool,
    /// Degree window `[lower, cutoff)` the flags are certified for; `None`
    /// as lower end means unbounded below (or an empty set).
    pub window: (Option<DegreeValue>, Cutoff),
}

/// Classifies a windowed support as slab compact / forward / c/f.
pub fn classify_support(set: &SupportSet, form: &DegreeForm) -> Result<SupportClass> {
    let mut lowest: Option<DegreeValue> = None;
    for p in &set.points {
        let d = form.degree_of(p)?;
        if !form.below(&d, &set.cutoff)? {
            return Err(Error::InvalidData(format!(
                "support point {p} is not below the cutoff"
            )));
        }
        let replace = match &lowest {
            None => true,
            Some(l) => form.compare(&d, l)? == Ordering::Less,
        };
        if replace {
            lowest = Some(d);
        }
    }
    let forward = set.tail == Tail::Complete || set.points.is_empty();
    Ok(SupportClass {
        slab_compact: true,
        forward,
        compact_forward: forward,
        window: (lowest, set.cutoff.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sqrt2_form() -> DegreeForm {
        DegreeForm::with_sqrt("xi", 2).unwrap()
    }

    /// `χ = (1, ξ)` with the single coarse enclosure `[1.414213, 1.414214]`.
    fn coarse_form() -> DegreeForm {
        let mut basis = FormalRealBasis::rational();
        basis
            .push(
                "xi",
                vec![Enclosure::new(q(1414213, 1000000), q(1414214, 1000000))],
            )
            .unwrap();
        let xi = DegreeValue::new(vec![q(0, 1), q(1, 1)]);
        DegreeForm::new(basis, vec![DegreeValue::integer(1, 2), xi]).unwrap()
    }

    #[test]
    fn degree_of_single_rational_period() {
        let f = DegreeForm::cyclic();
        assert_eq!(f.degree_of(&vec![3].into()).unwrap(), DegreeValue::integer(3, 1));
        assert_eq!(f.degree_of(&vec![0].into()).unwrap(), DegreeValue::integer(0, 1));
    }

    #[test]
    fn degree_of_irrational_form_is_linear() {
        let f = coarse_form();
        let d = f.degree_of(&vec![1, 1].into()).unwrap();
        assert_eq!(d.coords(), &[q(1, 1), q(1, 1)]);
        assert_eq!(f.render(&d), "1 + xi");
    }

    #[test]
    fn degree_of_dimension_mismatch() {
        let f = DegreeForm::cyclic();
        assert_eq!(
            f.degree_of(&vec![1, 2].into()),
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn compare_examples() {
        let f = coarse_form();
        let one_plus_xi = f.degree_of(&vec![1, 1].into()).unwrap();
        let two = f.integer_degree(2);
        assert_eq!(f.compare(&one_plus_xi, &two).unwrap(), Ordering::Greater);
        let half = DegreeValue::rational(q(5, 2), 2);
        assert_eq!(f.compare(&half, &half.clone()).unwrap(), Ordering::Equal);
        let xi = f.degree_of(&vec![0, 1].into()).unwrap();
        assert_eq!(f.compare(&f.zero_degree(), &xi).unwrap(), Ordering::Less);
    }

    #[test]
    fn compare_refuses_when_enclosures_straddle() {
        let f = coarse_form();
        // 1414213.5/1000000 - xi lies inside every declared enclosure.
        let d = DegreeValue::new(vec![q(14142135, 10000000), q(-1, 1)]);
        assert!(matches!(
            f.sign(&d),
            Err(Error::OrderingUndecidable { .. })
        ));
        // The sqrt builder refines far enough to settle it: sqrt(2) = 1.41421356...
        assert_eq!(sqrt2_form().sign(&d).unwrap(), Ordering::Less);
    }

    #[test]
    fn form_validation() {
        let mut basis = FormalRealBasis::rational();
        basis.push_sqrt("xi", 2).unwrap();
        let one = DegreeValue::integer(1, 2);
        let two = DegreeValue::integer(2, 2);
        assert!(matches!(
            DegreeForm::new(basis.clone(), vec![one.clone(), two]),
            Err(Error::InvalidForm(_))
        ));
        assert!(matches!(
            DegreeForm::new(basis.clone(), vec![DegreeValue::integer(-1, 2)]),
            Err(Error::InvalidForm(_))
        ));
        assert!(DegreeForm::new(basis, vec![one]).is_ok());
        let mut b = FormalRealBasis::rational();
        assert!(b.push_sqrt("r", 4).is_err());
        assert!(b.push("t", vec![Enclosure::new(q(1, 1), q(2, 1))]).is_err());
        assert!(b
            .push(
                "x",
                vec![
                    Enclosure::new(q(1, 1), q(2, 1)),
                    Enclosure::new(q(1, 2), q(3, 2))
                ]
            )
            .is_err());
    }

    #[test]
    fn classify_examples() {
        let f = DegreeForm::cyclic();
        let finite = SupportSet::new(
            [vec![0], vec![1], vec![2]].map(LatticePoint::from),
            Cutoff::Infinite,
        );
        let c = classify_support(&finite, &f).unwrap();
        assert!(c.slab_compact && c.forward && c.compact_forward);
        assert_eq!(c.window, (Some(f.integer_degree(0)), Cutoff::Infinite));

        let descending = SupportSet::descending(
            (0..6).map(|k| LatticePoint::from(vec![-k])),
            Cutoff::Finite(f.integer_degree(1)),
        );
        let c = classify_support(&descending, &f).unwrap();
        assert!(!c.forward && !c.compact_forward);

        let empty = SupportSet::new([], Cutoff::Infinite);
        let c = classify_support(&empty, &f).unwrap();
        assert!(c.slab_compact && c.forward && c.compact_forward);
    }

    #[test]
    fn render_degrees() {
        let f = sqrt2_form();
        let d = DegreeValue::new(vec![q(3, 2), q(-2, 1)]);
        assert_eq!(f.render(&d), "3/2 - 2*xi");
        assert_eq!(f.render(&f.zero_degree()), "0");
        assert_eq!(f.render(&DegreeValue::new(vec![q(0, 1), q(-1, 1)])), "-xi");
    }
}
