//! The `Λ`-pairing between the unstable and stable complexes.
//!
//! A stable chain `S = Σ λ_x S_{x_0}` lives in the complex with differential
//! `d`; an unstable chain `U = Σ μ_x U_{x_0}` lives in the complex of
//! unstable manifolds, in degree `n − #x`, with boundary `∂`. The pairing is
//! `U •_Λ S = Σ λ_x μ_x`, and `∂` is the plain transpose of `d` in the lift
//! bases, so that `⟨∂U, S⟩ = ⟨U, dS⟩`.
//!
//! The dimension `n` of a [`FreeComplex`] is its number of degrees minus one.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::degree::{DegreeValue, LatticePoint};
use crate::error::{Error, Result};
use crate::homology::{smith_normal_form, zeroness, FreeComplex, Matrix, SnfResult, Zeroness};
use crate::series::{CoeffDomain, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainKind {
    Stable,
    Unstable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaChain {
    pub kind: ChainKind,
    /// Coefficient of each critical point's chosen lift.
    pub coefficients: BTreeMap<String, Series>,
}

/// `dV = λ·target`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionCertificate {
    pub lambda: Series,
    pub chain: LambdaChain,
}

fn dimension(c: &FreeComplex) -> usize {
    c.len().saturating_sub(1)
}

fn index_in(c: &FreeComplex, id: &str) -> Result<(usize, usize)> {
    for (k, g) in c.generators().iter().enumerate() {
        if let Some(i) = g.iter().position(|x| x == id) {
            return Ok((k, i));
        }
    }
    Err(Error::UnknownPoint(id.to_string()))
}

impl LambdaChain {
    pub fn new(kind: ChainKind) -> Self {
        LambdaChain {
            kind,
            coefficients: BTreeMap::new(),
        }
    }

    /// The generator `S_{x_0}` or `U_{x_0}`.
    pub fn basis(kind: ChainKind, c: &FreeComplex, id: &str) -> Self {
        LambdaChain::new(kind).with(id, Series::one(c.form(), CoeffDomain::Integers))
    }

    pub fn with(mut self, id: &str, coefficient: Series) -> Self {
        self.coefficients.insert(id.to_string(), coefficient);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.values().all(Series::is_exact_zero)
    }

    /// Chain degree: `#x` for stable chains, `n − #x` for unstable ones.
    /// `None` for the empty chain.
    pub fn degree(&self, c: &FreeComplex) -> Result<Option<usize>> {
        let n = dimension(c);
        let mut found = None;
        for id in self.coefficients.keys() {
            let (k, _) = index_in(c, id)?;
            let d = match self.kind {
                ChainKind::Stable => k,
                ChainKind::Unstable => n - k,
            };
            match found {
                None => found = Some(d),
                Some(e) if e != d => {
                    return Err(Error::InvalidData(format!(
                        "chain mixes degrees {e} and {d}"
                    )))
                }
                _ => {}
            }
        }
        Ok(found)
    }

    /// Index `#x` shared by the chain's points.
    fn level(&self, c: &FreeComplex) -> Result<Option<usize>> {
        Ok(self.degree(c)?.map(|d| match self.kind {
            ChainKind::Stable => d,
            ChainKind::Unstable => dimension(c) - d,
        }))
    }

    fn coordinates(&self, c: &FreeComplex, level: usize) -> Vec<Series> {
        c.generators()[level]
            .iter()
            .map(|id| {
                self.coefficients
                    .get(id)
                    .cloned()
                    .unwrap_or_else(|| Series::zero(c.form(), CoeffDomain::Integers))
            })
            .collect()
    }

    fn from_coordinates(kind: ChainKind, c: &FreeComplex, level: usize, coords: Vec<Series>) -> Self {
        let coefficients = c.generators()[level]
            .iter()
            .cloned()
            .zip(coords)
            .filter(|(_, s)| !s.is_exact_zero())
            .collect();
        LambdaChain { kind, coefficients }
    }

    /// Re-expresses the chain after replacing the lift `x_0` by `t^m x_0`:
    /// stable coordinates pick up `t^{-m}`, unstable ones `t^m`.
    pub fn relift(&self, id: &str, m: &LatticePoint) -> LambdaChain {
        let shift = match self.kind {
            ChainKind::Stable => -m,
            ChainKind::Unstable => m.clone(),
        };
        let mut out = self.clone();
        if let Some(s) = out.coefficients.get_mut(id) {
            *s = s.shift(&shift);
        }
        out
    }

    pub fn scale(&self, by: &Series) -> Result<LambdaChain> {
        let coefficients = self
            .coefficients
            .iter()
            .map(|(id, s)| Ok((id.clone(), by.mul_bounded(s)?)))
            .collect::<Result<_>>()?;
        Ok(LambdaChain {
            kind: self.kind,
            coefficients,
        })
    }
}

/// `U •_Λ S = Σ_x λ_x μ_x`.
pub fn lambda_pairing(c: &FreeComplex, u: &LambdaChain, s: &LambdaChain) -> Result<Series> {
    if u.kind != ChainKind::Unstable || s.kind != ChainKind::Stable {
        return Err(Error::InvalidData(
            "the pairing takes an unstable chain and a stable chain".into(),
        ));
    }
    let n = dimension(c);
    if let (Some(du), Some(ds)) = (u.degree(c)?, s.degree(c)?) {
        if du + ds != n {
            return Err(Error::DegreeMismatch {
                unstable: du,
                stable: ds,
                expected: n,
            });
        }
    }
    let domain = u
        .coefficients
        .values()
        .chain(s.coefficients.values())
        .fold(CoeffDomain::Integers, |d, x| d.join(x.domain()));
    let mut acc = Series::zero(c.form(), domain);
    for (id, mu) in &u.coefficients {
        if let Some(lambda) = s.coefficients.get(id) {
            acc = acc.add(&lambda.mul_bounded(mu)?)?;
        }
    }
    Ok(acc)
}

/// Coefficient of `t^i` in a pairing value: the intersection number
/// `(t^{-i}U)•S`.
pub fn coefficient_of(value: &Series, i: &LatticePoint) -> Result<BigInt> {
    let c = value.coefficient(i)?;
    if !c.denom().is_one() {
        return Err(Error::NonIntegral(c.to_string()));
    }
    Ok(c.to_integer())
}

/// Boundary maps of the unstable complex, indexed by the degree they start
/// from: entry `j` maps degree `j` to `j + 1` and is the transpose of
/// `d^{n-1-j}`.
pub fn adjoint_boundary(c: &FreeComplex) -> Vec<Matrix> {
    let n = dimension(c);
    (0..c.boundaries().len())
        .map(|j| c.boundaries()[n - 1 - j].transpose())
        .collect()
}

/// The current differential on unstable chains, `d = (−1)^{j+1} ∂` in
/// degree `j`.
pub fn u_differential(c: &FreeComplex) -> Result<Vec<Matrix>> {
    adjoint_boundary(c)
        .into_iter()
        .enumerate()
        .map(|(j, m)| {
            if j % 2 == 1 {
                return Ok(m);
            }
            let minus = Series::integer(c.form(), -1);
            let mut out = m.clone();
            for i in 0..m.rows() {
                out.scale_row(i, &minus)?;
            }
            Ok(out)
        })
        .collect()
}

fn apply(m: &Matrix, v: &[Series]) -> Result<Vec<Series>> {
    let col = Matrix::from_rows(
        m.form(),
        m.domain(),
        1,
        v.iter().map(|s| vec![s.clone()]).collect(),
    )?;
    let out = m.mul(&col)?;
    Ok((0..out.rows()).map(|i| out.get(i, 0).clone()).collect())
}

/// Whether `s` vanishes through degree `precision`.
/// Degrees of headroom for the Smith forms behind cycles and certificates.
const ROOM: i64 = 16;

/// Smith form computed past `precision`, so that chains read off `U` and `V`
/// are still known through `precision`. Inputs that cannot support the extra
/// room fall back to `precision` itself.
fn snf_with_room(m: &Matrix, precision: &DegreeValue) -> Result<SnfResult> {
    let room = precision + &m.form().integer_degree(ROOM);
    match smith_normal_form(m, &room) {
        Err(Error::PrecisionExhausted(_) | Error::AmbiguousZero { .. }) => smith_normal_form(m, precision),
        other => other,
    }
}

/// Whether `s` has no terms below `precision`.
fn vanishes(s: &Series, precision: &DegreeValue) -> Result<bool> {
    match zeroness(&s.truncate(&crate::degree::Cutoff::Finite(precision.clone()))?, precision)? {
        Zeroness::Zero => Ok(true),
        Zeroness::NonZero => Ok(false),
        Zeroness::Ambiguous => Err(Error::PrecisionExhausted(format!(
            "{s} is not known through degree {}",
            s.form().render(precision)
        ))),
    }
}

/// The map leaving the chains at `level`, or `None` at the end of the
/// complex.
fn outgoing(c: &FreeComplex, kind: ChainKind, level: usize) -> Option<Matrix> {
    match kind {
        ChainKind::Stable => c.boundary(level).cloned(),
        ChainKind::Unstable => level.checked_sub(1).and_then(|k| c.boundary(k)).map(Matrix::transpose),
    }
}

/// The map whose image is the boundaries at `level`; a zero-width matrix
/// when nothing maps there.
fn incoming(c: &FreeComplex, kind: ChainKind, level: usize) -> Matrix {
    let m = match kind {
        ChainKind::Stable => level.checked_sub(1).and_then(|k| c.boundary(k)).cloned(),
        ChainKind::Unstable => c.boundary(level).map(Matrix::transpose),
    };
    m.unwrap_or_else(|| Matrix::zeros(c.form(), CoeffDomain::Integers, c.rank(level), 0))
}

fn source_level(kind: ChainKind, level: usize) -> usize {
    match kind {
        ChainKind::Stable => level - 1,
        ChainKind::Unstable => level + 1,
    }
}

pub fn is_cycle(c: &FreeComplex, chain: &LambdaChain, precision: &DegreeValue) -> Result<bool> {
    let Some(level) = chain.level(c)? else {
        return Ok(true);
    };
    let Some(m) = outgoing(c, chain.kind, level) else {
        return Ok(true);
    };
    for e in apply(&m, &chain.coordinates(c, level))? {
        if !vanishes(&e, precision)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn lcm(a: &Series, b: &Series, precision: &DegreeValue) -> Result<Series> {
    let g = a.gcd(b, precision)?;
    a.mul(b)?.divide(&g, precision)?.normalized()
}

/// Finds `λ ≠ 0` and a chain `V` with `dV = λ·target` (or `∂V = λ·target`
/// for unstable chains). `λ` is the normalized least common multiple of the
/// annihilators `d_i / gcd(d_i, z_i)` read off the Smith normal form of the
/// incoming map. Fails with [`Error::NoSolution`] when the class is not
/// torsion.
pub fn solve_in_complex(
    c: &FreeComplex,
    target: &LambdaChain,
    precision: &DegreeValue,
) -> Result<TorsionCertificate> {
    let inner = precision + &c.form().integer_degree(ROOM);
    match solve_within(c, target, precision, &inner) {
        Err(Error::PrecisionExhausted(_) | Error::AmbiguousZero { .. }) => {
            solve_within(c, target, precision, precision)
        }
        other => other,
    }
}

/// `solve_in_complex` with the Smith form and the divisions carried out
/// through `inner`; the result is checked through `precision`.
fn solve_within(
    c: &FreeComplex,
    target: &LambdaChain,
    precision: &DegreeValue,
    inner: &DegreeValue,
) -> Result<TorsionCertificate> {
    let form = c.form();
    let one = Series::one(form, CoeffDomain::Integers);
    let Some(level) = target.level(c)? else {
        return Ok(TorsionCertificate {
            lambda: one,
            chain: LambdaChain::new(target.kind),
        });
    };
    if !is_cycle(c, target, precision)? {
        return Err(Error::InvalidData("target is not a cycle".into()));
    }
    let a = incoming(c, target.kind, level);
    let snf = smith_normal_form(&a, inner)?;
    let z = apply(&snf.u, &target.coordinates(c, level))?;
    let r = snf.rank();
    for (i, zi) in z.iter().enumerate().skip(r) {
        if !vanishes(zi, precision)? {
            return Err(Error::NoSolution(format!(
                "component {i} of the target survives in the cokernel, so the class is not torsion"
            )));
        }
    }
    let mut lambda = one.clone();
    for (d, zi) in snf.diagonal.iter().zip(&z) {
        if vanishes(zi, precision)? {
            continue;
        }
        let g = d.gcd(zi, inner)?;
        let annihilator = d.divide(&g, inner)?;
        lambda = lcm(&lambda, &annihilator, inner)?;
    }
    if lambda.is_unit()? {
        lambda = one.clone();
    }
    let mut w = Vec::with_capacity(a.cols());
    for i in 0..a.cols() {
        w.push(match (snf.diagonal.get(i), z.get(i)) {
            (Some(d), Some(zi)) if !vanishes(zi, precision)? => {
                lambda.mul_bounded(zi)?.divide(d, inner)?
            }
            _ => Series::zero(form, CoeffDomain::Integers),
        });
    }
    let v = apply(&snf.v, &w)?;
    let check = apply(&a, &v)?;
    for (lhs, zi) in check.iter().zip(target.coordinates(c, level)) {
        if !vanishes(&lhs.sub(&lambda.mul_bounded(&zi)?)?, precision)? {
            return Err(Error::PrecisionExhausted(
                "the solution does not reproduce the target through the precision".into(),
            ));
        }
    }
    Ok(TorsionCertificate {
        lambda,
        chain: LambdaChain::from_coordinates(target.kind, c, source_level(target.kind, level), v),
    })
}

/// Replaces every coefficient by its representative in `[0, 1)`.
pub fn reduce_mod_one(s: &Series) -> Result<Series> {
    let terms = s.terms().iter().map(|(n, c)| {
        let frac = c - BigRational::from_integer(c.floor().to_integer());
        (n.clone(), frac)
    });
    Series::from_terms(s.form(), CoeffDomain::Rationals, terms, s.cutoff().clone())
}

/// `ℓ = (1/λ) V •_Λ S mod Λ_Z` from a certificate `∂V = λu`.
pub fn linking_number_from(
    c: &FreeComplex,
    lambda: &Series,
    v: &LambdaChain,
    s: &LambdaChain,
    precision: &DegreeValue,
) -> Result<Series> {
    let value = lambda_pairing(c, v, s)?;
    if value.is_exact_zero() {
        return Ok(Series::zero(c.form(), CoeffDomain::Rationals));
    }
    let inverse = lambda.with_domain(CoeffDomain::Rationals)?.invert(precision)?;
    let quotient = value.with_domain(CoeffDomain::Rationals)?.mul_bounded(&inverse)?;
    reduce_mod_one(&quotient)
}

/// Linking number of a torsion unstable class `u` with a torsion stable
/// class `s`, as a series with coefficients in `[0, 1)`.
pub fn linking_number(
    c: &FreeComplex,
    u: &LambdaChain,
    s: &LambdaChain,
    precision: &DegreeValue,
) -> Result<Series> {
    fn not_torsion(what: &'static str) -> impl Fn(Error) -> Error {
        move |e| match e {
            Error::NoSolution(msg) => Error::NotTorsion(format!("{what}: {msg}")),
            other => other,
        }
    }
    let cert = solve_in_complex(c, u, precision).map_err(not_torsion("unstable class"))?;
    solve_in_complex(c, s, precision).map_err(not_torsion("stable class"))?;
    linking_number_from(c, &cert.lambda, &cert.chain, s, precision)
}

/// A basis of the cycles of the given kind among chains at index `level`.
pub fn cycle_basis(
    c: &FreeComplex,
    kind: ChainKind,
    level: usize,
    precision: &DegreeValue,
) -> Result<Vec<LambdaChain>> {
    let n = c.rank(level);
    let Some(m) = outgoing(c, kind, level) else {
        return Ok((0..n)
            .map(|i| LambdaChain::basis(kind, c, &c.generators()[level][i]))
            .collect());
    };
    let snf = snf_with_room(&m, precision)?;
    Ok((snf.rank()..n)
        .map(|j| {
            let col = (0..n).map(|i| snf.v.get(i, j).clone()).collect();
            LambdaChain::from_coordinates(kind, c, level, col)
        })
        .collect())
}

/// Whether a cycle pairs to zero with every cycle of the complementary
/// complex in the complementary degree.
pub fn pairs_trivially(c: &FreeComplex, class: &LambdaChain, precision: &DegreeValue) -> Result<bool> {
    let Some(level) = class.level(c)? else {
        return Ok(true);
    };
    let other = match class.kind {
        ChainKind::Stable => ChainKind::Unstable,
        ChainKind::Unstable => ChainKind::Stable,
    };
    for w in cycle_basis(c, other, level, precision)? {
        let value = match class.kind {
            ChainKind::Stable => lambda_pairing(c, &w, class)?,
            ChainKind::Unstable => lambda_pairing(c, class, &w)?,
        };
        if !vanishes(&value, precision)? {
            return Ok(false);
        }
    }
    Ok(true)
}
