//! Smith normal form over the Euclidean ring `Λ_Z`.
//!
//! Pivots are chosen by the Euclidean norm `|l(α)|`, then by valuation, then
//! by position. Unit pivots clear their row and column by cross-multiplication
//! (`row_i ← p·row_i − a·row_t`), which keeps exact entries exact. Non-unit
//! pivots are reduced with [`Series::reduce`]; a remainder whose valuation
//! reaches the internal window is dropped. Every result is checked before it
//! is returned: `U·M·V = D` through the requested precision, `det U` and
//! `det V` are units, and each diagonal entry divides the next.
//!
//! When a check fails for lack of precision the computation is repeated with a
//! wider internal window.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Signed;

use super::matrix::{zeroness, Matrix, Zeroness};
use crate::degree::{Cutoff, DegreeValue};
use crate::error::{Error, Result};
use crate::series::Series;

/// Extra internal precision tried in turn, in units of rational degree.
const MARGINS: [i64; 4] = [0, 8, 32, 128];

/// Largest size for which determinants are expanded in full.
const DETERMINANT_LIMIT: usize = 10;

#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: Matrix,
    pub v: Matrix,
    pub d: Matrix,
    /// Nonzero diagonal entries `d_1 | d_2 | …`, unit-normalized.
    pub diagonal: Vec<Series>,
    pub precision: DegreeValue,
    /// `det U` and `det V`, when the matrices were small enough to expand.
    pub determinants: Option<(Series, Series)>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries that are not units.
    pub fn torsion(&self) -> Result<Vec<Series>> {
        let mut out = Vec::new();
        for d in &self.diagonal {
            if !d.is_unit()? {
                out.push(d.clone());
            }
        }
        Ok(out)
    }
}

pub fn smith_normal_form(m: &Matrix, precision: &DegreeValue) -> Result<SnfResult> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let s = m.get(i, j);
            if zeroness(s, precision)? == Zeroness::Ambiguous {
                return Err(Error::AmbiguousZero {
                    row: i,
                    col: j,
                    cutoff: s.cutoff().finite().map(|c| m.form().render(c)).unwrap_or_default(),
                });
            }
        }
    }
    let base = window_base(m, precision)?;
    let mut last = None;
    for margin in MARGINS {
        let window = &base + &m.form().integer_degree(margin);
        match attempt(m, precision, &window) {
            Err(e @ Error::PrecisionExhausted(_)) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Start of the internal window: the precision, raised so that no minor of
/// the input is cut off by valuation alone.
fn window_base(m: &Matrix, precision: &DegreeValue) -> Result<DegreeValue> {
    let form = m.form();
    let mut top = form.zero_degree();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let s = m.get(i, j);
            if !s.terms().is_empty() {
                let v = s.valuation()?;
                if form.compare(&v, &top)? == Ordering::Greater {
                    top = v;
                }
            }
        }
    }
    let n = m.rows().min(m.cols()) as i64;
    let bound = &top.scale(&BigRational::from_integer(n.into())) + &form.integer_degree(1);
    Ok(match form.compare(&bound, precision)? {
        Ordering::Greater => bound,
        _ => precision.clone(),
    })
}

fn exhausted(what: &str) -> Error {
    Error::PrecisionExhausted(format!("Smith normal form: {what}"))
}

/// Whether an entry vanishes through `window` (or through `precision`, for
/// entries with no visible terms).
fn negligible(s: &Series, precision: &DegreeValue, window: &DegreeValue) -> Result<bool> {
    match zeroness(s, precision)? {
        Zeroness::Zero => Ok(true),
        Zeroness::Ambiguous => Err(exhausted("an entry lost its precision")),
        Zeroness::NonZero => {
            let v = s.valuation()?;
            Ok(s.form().compare(&v, window)? != Ordering::Less)
        }
    }
}

fn attempt(m: &Matrix, precision: &DegreeValue, window: &DegreeValue) -> Result<SnfResult> {
    let form = m.form().clone();
    let domain = m.domain();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = Matrix::identity(&form, domain, rows);
    let mut v = Matrix::identity(&form, domain, cols);
    let one = Series::one(&form, domain);
    let zero = Series::zero(&form, domain);
    let mut rank = 0;

    'diagonal: for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = choose_pivot(&a, t, precision, window)? else {
                break 'diagonal;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let p = a.get(t, t).clone();

            if p.is_unit()? {
                for i in t + 1..rows {
                    let x = a.get(i, t).clone();
                    if !negligible(&x, precision, window)? {
                        let y = x.neg();
                        a.combine_rows(i, &p, t, &y)?;
                        u.combine_rows(i, &p, t, &y)?;
                    }
                    a.set(i, t, zero.clone());
                }
                for j in t + 1..cols {
                    let x = a.get(t, j).clone();
                    if !negligible(&x, precision, window)? {
                        let y = x.neg();
                        a.combine_cols(j, &p, t, &y)?;
                        v.combine_cols(j, &p, t, &y)?;
                    }
                    a.set(t, j, zero.clone());
                }
                rank += 1;
                continue 'diagonal;
            }

            let mut again = false;
            for i in t + 1..rows {
                let x = a.get(i, t).clone();
                if !negligible(&x, precision, window)? {
                    let (q, _) = x.reduce(&p, window)?;
                    if !q.is_exact_zero() {
                        let y = q.neg();
                        a.combine_rows(i, &one, t, &y)?;
                        u.combine_rows(i, &one, t, &y)?;
                    }
                    if !negligible(a.get(i, t), precision, window)? {
                        again = true;
                        continue;
                    }
                }
                a.set(i, t, zero.clone());
            }
            for j in t + 1..cols {
                let x = a.get(t, j).clone();
                if !negligible(&x, precision, window)? {
                    let (q, _) = x.reduce(&p, window)?;
                    if !q.is_exact_zero() {
                        let y = q.neg();
                        a.combine_cols(j, &one, t, &y)?;
                        v.combine_cols(j, &one, t, &y)?;
                    }
                    if !negligible(a.get(t, j), precision, window)? {
                        again = true;
                        continue;
                    }
                }
                a.set(t, j, zero.clone());
            }
            if again {
                continue;
            }
            // The pivot must divide the rest of the block; otherwise fold the
            // offending row into the pivot row and reduce again.
            let mut fold = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    let x = a.get(i, j);
                    if negligible(x, precision, window)? {
                        continue;
                    }
                    let (_, r) = x.reduce(&p, window)?;
                    if !negligible(&r, precision, window)? {
                        fold = Some(i);
                        break 'scan;
                    }
                }
            }
            match fold {
                Some(i) => {
                    a.combine_rows(t, &one, i, &one)?;
                    u.combine_rows(t, &one, i, &one)?;
                }
                None => {
                    rank += 1;
                    continue 'diagonal;
                }
            }
        }
    }

    let mut diagonal = Vec::with_capacity(rank);
    for t in 0..rank {
        let d = a.get(t, t).clone();
        let room = inversion_window(&d, window)?;
        let (normal, unit) = if d.is_unit()? {
            (one.clone(), d.invert(&room)?)
        } else {
            d.normalize_with_unit(&room)?
        };
        u.scale_row(t, &unit)?;
        a.set(t, t, normal.clone());
        diagonal.push(normal);
    }
    for i in 0..rows {
        for j in 0..cols {
            if i != j || i >= rank {
                a.set(i, j, zero.clone());
            }
        }
    }

    let result = SnfResult {
        determinants: None,
        u,
        v,
        d: a,
        diagonal,
        precision: precision.clone(),
    };
    certify(m, result)
}


/// Inversion precision for normalizing `d`: the internal window, capped by
/// what an inexact `d` can support.
fn inversion_window(d: &Series, window: &DegreeValue) -> Result<DegreeValue> {
    match d.cutoff() {
        Cutoff::Infinite => Ok(window.clone()),
        Cutoff::Finite(c) => {
            let avail = c - &d.valuation()?;
            Ok(match d.form().compare(&avail, window)? {
                Ordering::Less => avail,
                _ => window.clone(),
            })
        }
    }
}

fn choose_pivot(
    a: &Matrix,
    t: usize,
    precision: &DegreeValue,
    window: &DegreeValue,
) -> Result<Option<(usize, usize)>> {
    let form = a.form();
    let mut best: Option<(BigRational, DegreeValue, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let s = a.get(i, j);
            if negligible(s, precision, window)? {
                continue;
            }
            let lead = s.leading()?;
            let norm = lead.coefficient.abs();
            let better = match &best {
                None => true,
                Some((bn, bv, _, _)) => match norm.cmp(bn) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => form.compare(&lead.valuation, bv)? == Ordering::Less,
                },
            };
            if better {
                best = Some((norm, lead.valuation, i, j));
            }
        }
    }
    Ok(best.map(|(_, _, i, j)| (i, j)))
}

fn certify(m: &Matrix, mut r: SnfResult) -> Result<SnfResult> {
    let precision = r.precision.clone();
    let product = r.u.mul(m)?.mul(&r.v)?;
    let diff = product.sub(&r.d)?;
    for i in 0..diff.rows() {
        for j in 0..diff.cols() {
            let e = diff.get(i, j);
            match zeroness(e, &precision)? {
                Zeroness::Zero => {}
                Zeroness::Ambiguous => return Err(exhausted("U·M·V is not known through the precision")),
                Zeroness::NonZero => {
                    let v = e.valuation()?;
                    if m.form().compare(&v, &precision)? == Ordering::Less {
                        return Err(exhausted(&format!("U·M·V differs from D at ({i}, {j})")));
                    }
                }
            }
        }
    }
    if r.u.rows() <= DETERMINANT_LIMIT && r.v.rows() <= DETERMINANT_LIMIT {
        let du = r.u.determinant()?;
        let dv = r.v.determinant()?;
        for (name, d) in [("U", &du), ("V", &dv)] {
            if d.is_zero_up_to_precision() || !d.is_unit()? {
                return Err(exhausted(&format!("det {name} = {d} is not a unit")));
            }
        }
        r.determinants = Some((du, dv));
    }
    for w in r.diagonal.windows(2) {
        w[1].divide(&w[0], &precision).map_err(|e| match e {
            Error::NotDivisible { .. } => exhausted(&format!("{} does not divide {}", w[0], w[1])),
            other => other,
        })?;
    }
    Ok(r)
}
