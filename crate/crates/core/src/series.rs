//! Truncated elements of the Novikov ring `Λ_Z` and field `Λ_Q`.
//!
//! A [`Series`] stores finitely many nonzero terms together with a cutoff
//! degree: every monomial of degree below the cutoff is represented exactly
//! and nothing is asserted at or above it. An infinite cutoff makes the
//! series exact, i.e. a Laurent polynomial viewed inside `Λ`.
//!
//! A series with no terms and a finite cutoff is *zero up to precision*. It is
//! a different state from the exact zero, and operations that need a
//! valuation refuse it with [`Error::ZeroAmbiguity`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::degree::{Cutoff, DegreeForm, DegreeValue, LatticePoint};
use crate::error::{Error, Result};

/// Coefficient ring of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffDomain {
    Integers,
    Rationals,
}

impl CoeffDomain {
    pub fn join(self, other: CoeffDomain) -> CoeffDomain {
        self.max(other)
    }
}

#[derive(Clone, Debug)]
pub struct Series {
    form: Arc<DegreeForm>,
    domain: CoeffDomain,
    terms: BTreeMap<LatticePoint, BigRational>,
    cutoff: Cutoff,
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.form, &other.form) || self.form == other.form)
            && self.domain == other.domain
            && self.terms == other.terms
            && self.cutoff == other.cutoff
    }
}

/// The minimal-degree term of a nonzero series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingData {
    pub exponent: LatticePoint,
    pub coefficient: BigRational,
    pub valuation: DegreeValue,
}

pub(crate) fn is_integral(c: &BigRational) -> bool {
    c.denom().is_one()
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

impl Series {
    pub fn zero(form: &Arc<DegreeForm>, domain: CoeffDomain) -> Series {
        Series {
            form: form.clone(),
            domain,
            terms: BTreeMap::new(),
            cutoff: Cutoff::Infinite,
        }
    }

    /// `O(deg cutoff)`: nothing known, nothing stored.
    pub fn unknown(form: &Arc<DegreeForm>, domain: CoeffDomain, cutoff: DegreeValue) -> Series {
        Series {
            cutoff: Cutoff::Finite(cutoff),
            ..Series::zero(form, domain)
        }
    }

    pub fn one(form: &Arc<DegreeForm>, domain: CoeffDomain) -> Series {
        Series::constant(form, domain, BigRational::one())
    }

    pub fn constant(form: &Arc<DegreeForm>, domain: CoeffDomain, c: BigRational) -> Series {
        Series::monomial(form, domain, LatticePoint::zero(form.q()), c)
    }

    pub fn integer(form: &Arc<DegreeForm>, c: i64) -> Series {
        Series::constant(form, CoeffDomain::Integers, rat(c.into()))
    }

    /// `c·t^n`, exact. Panics on a dimension mismatch or a non-integral
    /// coefficient over `Z`; use [`Series::from_terms`] for checked input.
    pub fn monomial(
        form: &Arc<DegreeForm>,
        domain: CoeffDomain,
        exponent: LatticePoint,
        c: BigRational,
    ) -> Series {
        Series::from_terms(form, domain, [(exponent, c)], Cutoff::Infinite)
            .expect("invalid monomial")
    }

    /// Builds a series from raw terms: duplicates are summed, zeros dropped,
    /// and terms at or above the cutoff discarded.
    pub fn from_terms(
        form: &Arc<DegreeForm>,
        domain: CoeffDomain,
        terms: impl IntoIterator<Item = (LatticePoint, BigRational)>,
        cutoff: Cutoff,
    ) -> Result<Series> {
        if let Cutoff::Finite(c) = &cutoff {
            if c.coords().len() != form.dim() {
                return Err(Error::DimensionMismatch {
                    expected: form.dim(),
                    found: c.coords().len(),
                });
            }
        }
        let mut map: BTreeMap<LatticePoint, BigRational> = BTreeMap::new();
        for (n, c) in terms {
            form.check_point(&n)?;
            if domain == CoeffDomain::Integers && !is_integral(&c) {
                return Err(Error::NonIntegral(c.to_string()));
            }
            *map.entry(n).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if !cutoff.is_infinite() {
            let mut keep = BTreeMap::new();
            for (n, c) in map {
                if form.below(&form.degree_unchecked(&n), &cutoff)? {
                    keep.insert(n, c);
                }
            }
            map = keep;
        }
        Ok(Series {
            form: form.clone(),
            domain,
            terms: map,
            cutoff,
        })
    }

    pub fn form(&self) -> &Arc<DegreeForm> {
        &self.form
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, BigRational> {
        &self.terms
    }

    pub fn cutoff(&self) -> &Cutoff {
        &self.cutoff
    }

    pub fn is_exact(&self) -> bool {
        self.cutoff.is_infinite()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    pub fn is_zero_up_to_precision(&self) -> bool {
        self.terms.is_empty() && !self.is_exact()
    }

    /// True for the exact constant `1`.
    pub fn is_exact_one(&self) -> bool {
        self.is_exact()
            && self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(n, c)| n.is_zero() && c.is_one())
    }

    /// Coefficient of `t^n`; fails if `n` is not below the cutoff.
    pub fn coefficient(&self, n: &LatticePoint) -> Result<BigRational> {
        let d = self.form.degree_of(n)?;
        if !self.form.below(&d, &self.cutoff)? {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient of t^{n} lies at or above the cutoff {}",
                self.render_cutoff()
            )));
        }
        Ok(self.terms.get(n).cloned().unwrap_or_else(BigRational::zero))
    }

    fn render_cutoff(&self) -> String {
        match &self.cutoff {
            Cutoff::Finite(c) => self.form.render(c),
            Cutoff::Infinite => "+inf".into(),
        }
    }

    fn check_same_form(&self, other: &Series) -> Result<()> {
        if Arc::ptr_eq(&self.form, &other.form) || self.form == other.form {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// Reinterprets the coefficients in a larger (or equal) domain; moving to
    /// `Z` checks integrality.
    pub fn with_domain(&self, domain: CoeffDomain) -> Result<Series> {
        if domain == CoeffDomain::Integers {
            if let Some(c) = self.terms.values().find(|c| !is_integral(c)) {
                return Err(Error::NonIntegral(c.to_string()));
            }
        }
        Ok(Series {
            domain,
            ..self.clone()
        })
    }

    /// Lowers the cutoff to `min(self.cutoff, cutoff)`, dropping terms.
    pub fn truncate(&self, cutoff: &Cutoff) -> Result<Series> {
        let cutoff = self.form.min_cutoff(&self.cutoff, cutoff)?;
        if cutoff == self.cutoff {
            return Ok(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (n, c) in &self.terms {
            if self.form.below(&self.form.degree_unchecked(n), &cutoff)? {
                terms.insert(n.clone(), c.clone());
            }
        }
        Ok(Series {
            terms,
            cutoff,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> Series {
        Series {
            terms: self.terms.iter().map(|(n, c)| (n.clone(), -c)).collect(),
            ..self.clone()
        }
    }

    /// Multiplies by the exact monomial `t^by`.
    pub fn shift(&self, by: &LatticePoint) -> Series {
        let d = self.form.degree_unchecked(by);
        Series {
            terms: self.terms.iter().map(|(n, c)| (n + by, c.clone())).collect(),
            cutoff: self.cutoff.shift(&d),
            ..self.clone()
        }
    }

    /// Multiplies by a scalar. Over `Z` the scalar must be an integer.
    pub fn scale(&self, factor: &BigRational) -> Result<Series> {
        if self.domain == CoeffDomain::Integers && !is_integral(factor) {
            return Err(Error::NonIntegral(factor.to_string()));
        }
        if factor.is_zero() {
            return Ok(Series {
                terms: BTreeMap::new(),
                ..self.clone()
            });
        }
        Ok(Series {
            terms: self.terms.iter().map(|(n, c)| (n.clone(), c * factor)).collect(),
            ..self.clone()
        })
    }

    /// Termwise sum; the cutoff is the smaller of the two.
    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_same_form(other)?;
        let mut out = self.with_domain(self.domain.join(other.domain))?;
        out.axpy(&BigRational::one(), None, other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_same_form(other)?;
        let mut out = self.with_domain(self.domain.join(other.domain))?;
        out.axpy(&-BigRational::one(), None, other)?;
        Ok(out)
    }

    /// `self += coeff · t^shift · other`, in place.
    fn axpy(
        &mut self,
        coeff: &BigRational,
        shift: Option<&LatticePoint>,
        other: &Series,
    ) -> Result<()> {
        let form = self.form.clone();
        let other_cutoff = match shift {
            Some(s) => other.cutoff.shift(&form.degree_unchecked(s)),
            None => other.cutoff.clone(),
        };
        let cutoff = form.min_cutoff(&self.cutoff, &other_cutoff)?;
        if cutoff != self.cutoff {
            let mut kept = BTreeMap::new();
            for (n, c) in std::mem::take(&mut self.terms) {
                if form.below(&form.degree_unchecked(&n), &cutoff)? {
                    kept.insert(n, c);
                }
            }
            self.terms = kept;
        }
        let check = cutoff != other_cutoff;
        for (n, c) in &other.terms {
            let n = match shift {
                Some(s) => n + s,
                None => n.clone(),
            };
            if check && !form.below(&form.degree_unchecked(&n), &cutoff)? {
                continue;
            }
            let delta = coeff * c;
            match self.terms.entry(n) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    if !delta.is_zero() {
                        e.insert(delta);
                    }
                }
            }
        }
        self.cutoff = cutoff;
        if self.domain == CoeffDomain::Integers && !is_integral(coeff) {
            self.domain = CoeffDomain::Rationals;
        }
        Ok(())
    }

    /// Terms with their degrees, sorted by increasing degree.
    pub(crate) fn sorted_terms(&self) -> Result<Vec<(LatticePoint, BigRational, DegreeValue)>> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(n, c)| (n.clone(), c.clone(), self.form.degree_unchecked(n)))
            .collect();
        self.form.sort_by_degree(&mut v, |t| &t.2)?;
        Ok(v)
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.mul_within(other, &Cutoff::Infinite)
    }

    /// Cauchy product, additionally truncated at `limit`.
    pub fn mul_within(&self, other: &Series, limit: &Cutoff) -> Result<Series> {
        self.check_same_form(other)?;
        let form = self.form.clone();
        let domain = self.domain.join(other.domain);
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Series::zero(&form, domain));
        }
        for s in [self, other] {
            if s.is_zero_up_to_precision() {
                return Err(Error::ZeroAmbiguity {
                    cutoff: s.render_cutoff(),
                });
            }
        }
        let a = self.sorted_terms()?;
        let b = other.sorted_terms()?;
        let (val_a, val_b) = (&a[0].2, &b[0].2);
        let natural = form.min_cutoff(&self.cutoff.shift(val_b), &other.cutoff.shift(val_a))?;
        let cutoff = form.min_cutoff(&natural, limit)?;
        let mut acc: BTreeMap<LatticePoint, BigRational> = BTreeMap::new();
        let bounded = !cutoff.is_infinite();
        for (na, ca, da) in &a {
            if bounded && !form.below(&(da + val_b), &cutoff)? {
                break;
            }
            for (nb, cb, db) in &b {
                if bounded && !form.below(&(da + db), &cutoff)? {
                    break;
                }
                *acc.entry(na + nb).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Series {
            form,
            domain,
            terms: acc,
            cutoff,
        })
    }

    /// Cauchy product that accepts factors which are zero up to precision:
    /// such a factor has valuation at least its cutoff, which bounds the
    /// product's cutoff. Used for matrix products, where windowed entries
    /// routinely have no visible terms.
    pub fn mul_bounded(&self, other: &Series) -> Result<Series> {
        self.check_same_form(other)?;
        let domain = self.domain.join(other.domain);
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Series::zero(&self.form, domain));
        }
        let floor = |s: &Series| -> Result<DegreeValue> {
            match (s.terms.is_empty(), &s.cutoff) {
                (true, Cutoff::Finite(c)) => Ok(c.clone()),
                _ => s.valuation(),
            }
        };
        if self.terms.is_empty() || other.terms.is_empty() {
            let cutoff = &floor(self)? + &floor(other)?;
            return Ok(Series::unknown(&self.form, domain, cutoff));
        }
        self.mul(other)
    }

    /// Sorted degrees of the stored monomials (strictly increasing, since the
    /// form is injective).
    pub fn degs(&self) -> Result<Vec<DegreeValue>> {
        Ok(self.sorted_terms()?.into_iter().map(|t| t.2).collect())
    }

    pub fn leading(&self) -> Result<LeadingData> {
        if self.terms.is_empty() {
            return Err(if self.is_exact() {
                Error::ExactZero
            } else {
                Error::ZeroAmbiguity {
                    cutoff: self.render_cutoff(),
                }
            });
        }
        let mut best: Option<(&LatticePoint, &BigRational, DegreeValue)> = None;
        for (n, c) in &self.terms {
            let d = self.form.degree_unchecked(n);
            let better = match &best {
                None => true,
                Some((_, _, bd)) => self.form.compare(&d, bd)? == Ordering::Less,
            };
            if better {
                best = Some((n, c, d));
            }
        }
        let (n, c, d) = best.expect("nonempty");
        Ok(LeadingData {
            exponent: n.clone(),
            coefficient: c.clone(),
            valuation: d,
        })
    }

    pub fn valuation(&self) -> Result<DegreeValue> {
        Ok(self.leading()?.valuation)
    }

    /// A series is a unit iff its leading coefficient is a unit of the
    /// coefficient ring. The exact zero is not a unit.
    pub fn is_unit(&self) -> Result<bool> {
        if self.is_exact_zero() {
            return Ok(false);
        }
        let lead = self.leading()?;
        Ok(match self.domain {
            CoeffDomain::Integers => lead.coefficient.abs().is_one(),
            CoeffDomain::Rationals => true,
        })
    }

    /// Inverse through degree `precision`: `self · result = 1` on every
    /// degree below `precision`.
    ///
    /// Writes `self = a₀ t^A (1 − β)` with `deg β > 0` and sums the geometric
    /// series `1 + β + β² + …` until the powers leave the window.
    pub fn invert(&self, precision: &DegreeValue) -> Result<Series> {
        if self.is_exact_zero() {
            return Err(Error::NotAUnit {
                leading: "0".into(),
            });
        }
        let lead = self.leading()?;
        if !self.is_unit()? {
            return Err(Error::NotAUnit {
                leading: lead.coefficient.to_string(),
            });
        }
        let form = self.form.clone();
        let inv_a0 = lead.coefficient.recip();
        let back = -&lead.exponent;
        if self.is_exact() && self.terms.len() == 1 {
            return Ok(Series::monomial(&form, self.domain, back, inv_a0));
        }
        let relative = match &self.cutoff {
            Cutoff::Finite(c) => Cutoff::Finite(c - &lead.valuation),
            Cutoff::Infinite => Cutoff::Infinite,
        };
        let window = Cutoff::Finite(precision.clone());
        if !form.cutoff_le(&window, &relative)? {
            return Err(Error::PrecisionExhausted(format!(
                "inverse through degree {} needs the operand through relative degree {}, \
                 but it is known only through {}",
                form.render(precision),
                form.render(precision),
                self.render_cutoff()
            )));
        }
        // 1 - β = α / (a₀ t^A)
        let normalized = self.shift(&back).scale(&inv_a0).or_else(|_| {
            self.with_domain(CoeffDomain::Rationals)
                .and_then(|s| s.shift(&back).scale(&inv_a0))
        })?;
        let one = Series::one(&form, self.domain);
        let beta = one.sub(&normalized)?;
        let mut sum = one.truncate(&window)?;
        if !beta.terms.is_empty() {
            let mut power = one.clone();
            loop {
                power = power.mul_within(&beta, &window)?;
                if power.terms.is_empty() {
                    break;
                }
                sum = sum.add(&power)?;
            }
        }
        let sum = sum.truncate(&window)?;
        Ok(sum.scale(&inv_a0)?.shift(&back))
    }

    /// Leading-term division: builds `β = Σ β_k` with `β·divisor = self`
    /// through degree `precision`, where `β_k` is the leading term of the
    /// current remainder `γ_k` divided by the leading coefficient of the
    /// divisor, and `γ_{k+1} = γ_k − β_k·divisor`.
    ///
    /// Over `Z` every step's leading coefficient must be a multiple of the
    /// divisor's; otherwise [`Error::NotDivisible`] names the failing step.
    /// The quotient is exact when the remainder vanishes exactly.
    pub fn divide(&self, divisor: &Series, precision: &DegreeValue) -> Result<Series> {
        self.check_same_form(divisor)?;
        let form = self.form.clone();
        let domain = self.domain.join(divisor.domain);
        let lead = divisor.leading()?;
        let a = &lead.coefficient;
        let window = Cutoff::Finite(precision.clone());
        let mut quotient: BTreeMap<LatticePoint, BigRational> = BTreeMap::new();
        let mut remainder = self.with_domain(domain)?;
        let mut step = 0usize;
        let done = |quotient: BTreeMap<LatticePoint, BigRational>, exact: bool| {
            let cutoff = if exact {
                Cutoff::Infinite
            } else {
                Cutoff::Finite(precision - &lead.valuation)
            };
            Series {
                form: form.clone(),
                domain,
                terms: quotient,
                cutoff,
            }
        };
        loop {
            if remainder.is_exact_zero() {
                return Ok(done(quotient, true));
            }
            if remainder.terms.is_empty() {
                if form.cutoff_le(&window, &remainder.cutoff)? {
                    return Ok(done(quotient, false));
                }
                return Err(Error::PrecisionExhausted(format!(
                    "division remainder is known only through degree {}, below the requested {}",
                    remainder.render_cutoff(),
                    form.render(precision)
                )));
            }
            let head = remainder.leading()?;
            if !form.below(&head.valuation, &window)? {
                return Ok(done(quotient, false));
            }
            let b = &head.coefficient / a;
            if domain == CoeffDomain::Integers && !is_integral(&b) {
                return Err(Error::NotDivisible {
                    step,
                    coefficient: head.coefficient.to_string(),
                    exponent: head.exponent,
                    divisor: a.to_string(),
                });
            }
            let shift = &head.exponent - &lead.exponent;
            remainder.axpy(&-&b, Some(&shift), divisor)?;
            quotient.insert(shift, b);
            step += 1;
        }
    }

    /// One Euclidean step: integer-divides the leading coefficients,
    /// `l(γ) = b·l(α) + ρ` with `|ρ| < |l(α)|`, and returns the aligned
    /// quotient term `b·t^B` together with `γ − b·t^B·α`.
    ///
    /// The remainder either vanishes, has a smaller leading coefficient, or
    /// has the same norm at a strictly higher degree.
    pub fn euclid_step(&self, divisor: &Series) -> Result<(Series, Series)> {
        self.check_same_form(divisor)?;
        let domain = self.domain.join(divisor.domain);
        let lg = self.leading()?;
        let la = divisor.leading()?;
        let b = match domain {
            CoeffDomain::Integers => {
                rat(lg.coefficient.to_integer() / la.coefficient.to_integer())
            }
            CoeffDomain::Rationals => &lg.coefficient / &la.coefficient,
        };
        if b.is_zero() {
            return Ok((Series::zero(&self.form, domain), self.with_domain(domain)?));
        }
        let shift = &lg.exponent - &la.exponent;
        let quotient = Series::monomial(&self.form, domain, shift.clone(), b.clone());
        let mut remainder = self.with_domain(domain)?;
        remainder.axpy(&-b, Some(&shift), divisor)?;
        Ok((quotient, remainder))
    }

    /// Euclidean division with remainder: `self = q·divisor + r`, where the
    /// remainder either has valuation at least `precision` (or is zero
    /// through it) or has a leading coefficient of smaller absolute value
    /// than the divisor's. Both outputs are exact when the inputs are.
    pub fn reduce(&self, divisor: &Series, precision: &DegreeValue) -> Result<(Series, Series)> {
        self.check_same_form(divisor)?;
        let form = self.form.clone();
        let domain = self.domain.join(divisor.domain);
        let lead = divisor.leading()?;
        let window = Cutoff::Finite(precision.clone());
        let mut quotient: BTreeMap<LatticePoint, BigRational> = BTreeMap::new();
        let mut remainder = self.with_domain(domain)?;
        loop {
            if remainder.terms.is_empty() {
                break;
            }
            let head = remainder.leading()?;
            if !form.below(&head.valuation, &window)? {
                break;
            }
            let b = match domain {
                CoeffDomain::Integers => rat(
                    head.coefficient.to_integer() / lead.coefficient.to_integer(),
                ),
                CoeffDomain::Rationals => &head.coefficient / &lead.coefficient,
            };
            if b.is_zero() {
                break;
            }
            let shift = &head.exponent - &lead.exponent;
            remainder.axpy(&-&b, Some(&shift), divisor)?;
            *quotient.entry(shift).or_insert_with(BigRational::zero) += b;
            if !is_integral(&(&head.coefficient / &lead.coefficient)) {
                break;
            }
        }
        quotient.retain(|_, c| !c.is_zero());
        let quotient = Series {
            form,
            domain,
            terms: quotient,
            cutoff: Cutoff::Infinite,
        };
        Ok((quotient, remainder))
    }

    /// Greatest common divisor through degree `precision`, unit-normalized.
    pub fn gcd(&self, other: &Series, precision: &DegreeValue) -> Result<Series> {
        self.check_same_form(other)?;
        let form = self.form.clone();
        let domain = self.domain.join(other.domain);
        if self.is_exact_zero() && other.is_exact_zero() {
            return Err(Error::ExactZero);
        }
        let window = Cutoff::Finite(precision.clone());
        // Returns `None` for something that vanishes through the window.
        let settle = |s: Series| -> Result<Option<Series>> {
            if s.is_exact_zero() {
                return Ok(None);
            }
            if s.terms.is_empty() {
                if form.cutoff_le(&window, &s.cutoff)? {
                    return Ok(None);
                }
                return Err(Error::PrecisionExhausted(format!(
                    "gcd operand is zero only through degree {}",
                    s.render_cutoff()
                )));
            }
            if !form.below(&s.valuation()?, &window)? {
                return Ok(None);
            }
            Ok(Some(s))
        };
        let mut x = settle(self.with_domain(domain)?)?;
        let mut y = settle(other.with_domain(domain)?)?;
        loop {
            let (big, small) = match (x.take(), y.take()) {
                (None, None) => {
                    return Err(Error::PrecisionExhausted(
                        "both gcd operands vanish through the requested degree".into(),
                    ))
                }
                (Some(s), None) | (None, Some(s)) => return s.normalized(),
                (Some(a), Some(b)) => {
                    let na = a.leading()?.coefficient.abs();
                    let nb = b.leading()?.coefficient.abs();
                    if nb > na {
                        (b, a)
                    } else {
                        (a, b)
                    }
                }
            };
            if small.is_unit()? {
                return Ok(Series::one(&form, domain));
            }
            let norm = small.leading()?.coefficient.abs();
            let mut rest = Some(big);
            while let Some(r) = rest.take() {
                if r.leading()?.coefficient.abs() < norm {
                    rest = Some(r);
                    break;
                }
                let (_, next) = r.euclid_step(&small)?;
                rest = settle(next)?;
            }
            x = Some(small);
            y = rest;
        }
    }

    /// Unit-normalized associate: leading exponent 0 and positive leading
    /// coefficient. Over `Z`, a series whose coefficients are all multiples
    /// of its leading coefficient `a` is `|a|` times a unit and normalizes to
    /// the constant `|a|`; over `Q` every nonzero series normalizes to 1.
    pub fn normalized(&self) -> Result<Series> {
        let lead = self.leading()?;
        if let Some(c) = self.unit_content(&lead) {
            return Ok(Series::constant(&self.form, self.domain, c));
        }
        let sign = if lead.coefficient.is_negative() {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        self.shift(&-&lead.exponent).scale(&sign)
    }

    /// `Some(|a|)` when `self = |a| · unit`.
    fn unit_content(&self, lead: &LeadingData) -> Option<BigRational> {
        match self.domain {
            CoeffDomain::Rationals => Some(BigRational::one()),
            CoeffDomain::Integers => {
                let a = lead.coefficient.to_integer().abs();
                self.terms
                    .values()
                    .all(|c| c.to_integer().is_multiple_of(&a))
                    .then(|| rat(a))
            }
        }
    }

    /// Normalizes and returns `(normal, u)` with `u` a unit and
    /// `u·self = normal` through relative degree `precision`.
    pub fn normalize_with_unit(&self, precision: &DegreeValue) -> Result<(Series, Series)> {
        let lead = self.leading()?;
        if let Some(c) = self.unit_content(&lead) {
            // self = c·w with w a unit.
            let w = self
                .with_domain(CoeffDomain::Rationals)?
                .scale(&c.recip())?
                .with_domain(self.domain)?;
            let u = w.invert(precision)?;
            return Ok((Series::constant(&self.form, self.domain, c), u));
        }
        let sign = if lead.coefficient.is_negative() {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        let u = Series::monomial(&self.form, self.domain, -&lead.exponent, sign);
        Ok((self.mul(&u)?, u))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match crate::syntax::render(self) {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "<series with undecidable term order>"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::DegreeForm;

    fn cyclic() -> Arc<DegreeForm> {
        Arc::new(DegreeForm::cyclic())
    }

    fn poly(form: &Arc<DegreeForm>, terms: &[(i64, i64)], cutoff: Option<i64>) -> Series {
        Series::from_terms(
            form,
            CoeffDomain::Integers,
            terms
                .iter()
                .map(|&(e, c)| (LatticePoint::from(vec![e]), rat(c.into()))),
            cutoff.map_or(Cutoff::Infinite, |c| Cutoff::Finite(form.integer_degree(c))),
        )
        .unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn add_examples() {
        let f = cyclic();
        let s = poly(&f, &[(0, 1), (1, -1)], None)
            .add(&poly(&f, &[(1, 1)], None))
            .unwrap();
        assert_eq!(s, poly(&f, &[(0, 1)], None));

        let a = poly(&f, &[(0, 1), (1, 1)], Some(3));
        let b = poly(&f, &[(2, 1)], Some(2));
        assert!(b.is_zero_up_to_precision());
        assert_eq!(a.add(&b).unwrap(), poly(&f, &[(0, 1), (1, 1)], Some(2)));

        let zero = Series::zero(&f, CoeffDomain::Integers);
        assert_eq!(a.add(&zero).unwrap(), a);
    }

    #[test]
    fn mul_examples() {
        let f = cyclic();
        let p = poly(&f, &[(0, 1), (1, -1)], None)
            .mul(&poly(&f, &[(0, 1), (1, 1)], None))
            .unwrap();
        assert_eq!(p, poly(&f, &[(0, 1), (2, -1)], None));

        let geo = poly(&f, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)], Some(5));
        let p = geo.mul(&poly(&f, &[(0, 1), (1, -1)], None)).unwrap();
        assert_eq!(p, poly(&f, &[(0, 1)], Some(5)));

        let one = Series::one(&f, CoeffDomain::Integers);
        assert_eq!(geo.mul(&one).unwrap(), geo);
    }

    #[test]
    fn mul_refuses_zero_up_to_precision() {
        let f = cyclic();
        let unknown = Series::unknown(&f, CoeffDomain::Integers, f.integer_degree(3));
        assert!(matches!(
            unknown.mul(&Series::one(&f, CoeffDomain::Integers)),
            Err(Error::ZeroAmbiguity { .. })
        ));
        let zero = Series::zero(&f, CoeffDomain::Integers);
        assert!(unknown.mul(&zero).unwrap().is_exact_zero());
    }

    #[test]
    fn degs_and_leading() {
        let f = cyclic();
        let a = poly(&f, &[(-1, 2), (0, 3), (1, 1)], None);
        assert_eq!(
            a.degs().unwrap(),
            vec![f.integer_degree(-1), f.integer_degree(0), f.integer_degree(1)]
        );
        let lead = a.leading().unwrap();
        assert_eq!(lead.exponent, LatticePoint::from(vec![-1]));
        assert_eq!(lead.coefficient, q(2, 1));
        assert!(Series::zero(&f, CoeffDomain::Integers).degs().unwrap().is_empty());
        assert_eq!(
            Series::zero(&f, CoeffDomain::Integers).leading(),
            Err(Error::ExactZero)
        );
        let one_minus_t = poly(&f, &[(0, 1), (1, -1)], None);
        assert_eq!(one_minus_t.leading().unwrap().exponent, LatticePoint::zero(1));
    }

    #[test]
    fn leading_under_irrational_form() {
        let f = Arc::new(DegreeForm::with_sqrt("xi", 2).unwrap());
        let a = Series::from_terms(
            &f,
            CoeffDomain::Integers,
            [
                (LatticePoint::from(vec![2, 0]), q(5, 1)),
                (LatticePoint::from(vec![0, 3]), q(-1, 1)),
            ],
            Cutoff::Infinite,
        )
        .unwrap();
        assert_eq!(a.leading().unwrap().exponent, LatticePoint::from(vec![2, 0]));
        let m = Series::monomial(&f, CoeffDomain::Integers, vec![1, 1].into(), q(1, 1));
        assert_eq!(
            m.degs().unwrap(),
            vec![f.degree_of(&vec![1, 1].into()).unwrap()]
        );
    }

    #[test]
    fn unit_examples() {
        let f = cyclic();
        assert!(poly(&f, &[(0, 1), (1, -1)], None).is_unit().unwrap());
        let two_plus_t = poly(&f, &[(0, 2), (1, 1)], None);
        assert!(!two_plus_t.is_unit().unwrap());
        assert!(two_plus_t
            .with_domain(CoeffDomain::Rationals)
            .unwrap()
            .is_unit()
            .unwrap());
        assert!(poly(&f, &[(-5, 1)], None).is_unit().unwrap());
        assert!(!Series::zero(&f, CoeffDomain::Integers).is_unit().unwrap());
    }

    #[test]
    fn invert_examples() {
        let f = cyclic();
        let inv = poly(&f, &[(0, 1), (1, -1)], None)
            .invert(&f.integer_degree(5))
            .unwrap();
        assert_eq!(inv, poly(&f, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)], Some(5)));

        let two_plus_t = poly(&f, &[(0, 2), (1, 1)], None)
            .with_domain(CoeffDomain::Rationals)
            .unwrap();
        let inv = two_plus_t.invert(&f.integer_degree(3)).unwrap();
        let expected = Series::from_terms(
            &f,
            CoeffDomain::Rationals,
            [
                (LatticePoint::from(vec![0]), q(1, 2)),
                (LatticePoint::from(vec![1]), q(-1, 4)),
                (LatticePoint::from(vec![2]), q(1, 8)),
            ],
            Cutoff::Finite(f.integer_degree(3)),
        )
        .unwrap();
        assert_eq!(inv, expected);

        let mono = poly(&f, &[(4, 1)], None).invert(&f.integer_degree(2)).unwrap();
        assert_eq!(mono, poly(&f, &[(-4, 1)], None));
    }

    #[test]
    fn invert_errors() {
        let f = cyclic();
        assert!(matches!(
            poly(&f, &[(0, 2), (1, 1)], None).invert(&f.integer_degree(3)),
            Err(Error::NotAUnit { .. })
        ));
        let short = poly(&f, &[(0, 1), (1, -1)], Some(2));
        assert!(matches!(
            short.invert(&f.integer_degree(5)),
            Err(Error::PrecisionExhausted(_))
        ));
        // Negative valuation shifts the inverse's window up.
        let shifted = poly(&f, &[(-3, 1), (-2, -1)], Some(2));
        let inv = shifted.invert(&f.integer_degree(5)).unwrap();
        assert_eq!(inv, poly(&f, &[(3, 1), (4, 1), (5, 1), (6, 1), (7, 1)], Some(8)));
    }

    #[test]
    fn divide_examples() {
        let f = cyclic();
        let m = f.integer_degree(10);
        let q1 = poly(&f, &[(0, 1), (2, -1)], None)
            .divide(&poly(&f, &[(0, 1), (1, -1)], None), &m)
            .unwrap();
        assert_eq!(q1, poly(&f, &[(0, 1), (1, 1)], None));

        let q2 = poly(&f, &[(0, 1)], None)
            .divide(&poly(&f, &[(0, 1), (1, -1)], None), &f.integer_degree(4))
            .unwrap();
        assert_eq!(q2, poly(&f, &[(0, 1), (1, 1), (2, 1), (3, 1)], Some(4)));

        let err = poly(&f, &[(0, 3), (1, 1)], None)
            .divide(&poly(&f, &[(0, 2)], None), &m)
            .unwrap_err();
        assert!(matches!(err, Error::NotDivisible { step: 0, .. }));
    }

    #[test]
    fn divide_reports_exhausted_precision() {
        let f = cyclic();
        let gamma = poly(&f, &[(0, 1)], Some(3));
        let err = gamma
            .divide(&poly(&f, &[(0, 1), (1, -1)], None), &f.integer_degree(6))
            .unwrap_err();
        assert!(matches!(err, Error::PrecisionExhausted(_)));
    }

    #[test]
    fn euclid_step_examples() {
        let f = cyclic();
        let (qt, r) = poly(&f, &[(0, 3), (1, 1)], None)
            .euclid_step(&poly(&f, &[(0, 2)], None))
            .unwrap();
        assert_eq!(qt, poly(&f, &[(0, 1)], None));
        assert_eq!(r, poly(&f, &[(0, 1), (1, 1)], None));

        let (qt, r) = poly(&f, &[(0, 4)], None)
            .euclid_step(&poly(&f, &[(0, 2)], None))
            .unwrap();
        assert_eq!(qt, poly(&f, &[(0, 2)], None));
        assert!(r.is_exact_zero());

        let (qt, r) = poly(&f, &[(1, 1)], None)
            .euclid_step(&poly(&f, &[(0, 1), (1, -1)], None))
            .unwrap();
        assert_eq!(qt, poly(&f, &[(1, 1)], None));
        assert_eq!(r, poly(&f, &[(2, 1)], None));
    }

    #[test]
    fn gcd_examples() {
        let f = cyclic();
        let m = f.integer_degree(12);
        let g = poly(&f, &[(0, 2), (1, -2)], None)
            .gcd(&poly(&f, &[(0, 4)], None), &m)
            .unwrap();
        assert_eq!(g, poly(&f, &[(0, 2)], None));

        let g = poly(&f, &[(0, 1), (1, -1)], None)
            .gcd(&poly(&f, &[(0, 6), (3, 1)], None), &m)
            .unwrap();
        assert!(g.is_exact_one());

        let beta = poly(&f, &[(-2, -2), (0, 1)], None);
        let g = Series::zero(&f, CoeffDomain::Integers).gcd(&beta, &m).unwrap();
        assert_eq!(g, poly(&f, &[(0, 2), (2, -1)], None));
    }

    #[test]
    fn normalize_with_unit_recovers_constant() {
        let f = cyclic();
        let m = f.integer_degree(6);
        let s = poly(&f, &[(1, -2), (2, 2)], None);
        let (normal, u) = s.normalize_with_unit(&m).unwrap();
        assert_eq!(normal, poly(&f, &[(0, 2)], None));
        let back = u.mul(&s).unwrap();
        assert_eq!(back.truncate(&Cutoff::Finite(m)).unwrap().terms(), normal.terms());
    }

    #[test]
    fn coefficient_readout() {
        let f = cyclic();
        let s = poly(&f, &[(0, 1), (1, 2)], Some(3));
        assert_eq!(s.coefficient(&vec![1].into()).unwrap(), q(2, 1));
        assert_eq!(s.coefficient(&vec![2].into()).unwrap(), q(0, 1));
        assert!(matches!(
            s.coefficient(&vec![3].into()),
            Err(Error::PrecisionExhausted(_))
        ));
    }
}
