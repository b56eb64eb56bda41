//! Free `Λ`-complexes and their cohomology.
//!
//! Grading is cohomological: `∂^k` maps degree `k` to degree `k + 1`, and is
//! stored as an `N_{k+1} × N_k` matrix whose rows are the targets.

use std::sync::Arc;

use crate::degree::{Cutoff, DegreeForm, DegreeValue};
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::series::{CoeffDomain, Series};

mod matrix;
mod rank;
mod snf;

pub use matrix::Matrix;
pub(crate) use matrix::{zeroness, Zeroness};
pub use rank::rank_over_field;
pub use snf::{smith_normal_form, SnfResult};

#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
    form: Arc<DegreeForm>,
    generators: Vec<Vec<String>>,
    boundaries: Vec<Matrix>,
}

impl FreeComplex {
    /// `generators[k]` labels the basis in degree `k`; `boundaries[k]` is
    /// `∂^k`. Missing trailing boundaries are zero.
    pub fn new(
        form: &Arc<DegreeForm>,
        generators: Vec<Vec<String>>,
        mut boundaries: Vec<Matrix>,
    ) -> Result<FreeComplex> {
        let top = generators.len().saturating_sub(1);
        if boundaries.len() > top {
            return Err(Error::ShapeMismatch(format!(
                "{} boundary maps given for {} degrees",
                boundaries.len(),
                generators.len()
            )));
        }
        for k in boundaries.len()..top {
            boundaries.push(Matrix::zeros(
                form,
                CoeffDomain::Integers,
                generators[k + 1].len(),
                generators[k].len(),
            ));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.form() != form {
                return Err(Error::AmbientMismatch);
            }
            let want = (generators[k + 1].len(), generators[k].len());
            if (b.rows(), b.cols()) != want {
                return Err(Error::ShapeMismatch(format!(
                    "boundary in degree {k} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(FreeComplex {
            form: form.clone(),
            generators,
            boundaries,
        })
    }

    pub fn form(&self) -> &Arc<DegreeForm> {
        &self.form
    }

    pub fn generators(&self) -> &[Vec<String>] {
        &self.generators
    }

    /// Number of degrees `0..=n`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.generators.get(k).map_or(0, Vec::len)
    }

    /// `∂^k`, if degree `k + 1` exists.
    pub fn boundary(&self, k: usize) -> Option<&Matrix> {
        self.boundaries.get(k)
    }

    pub fn boundaries(&self) -> &[Matrix] {
        &self.boundaries
    }
}

/// An entry of `∂^{k+1}∂^k` that is visibly nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub degree: usize,
    pub row: usize,
    pub col: usize,
    /// Lowest nonvanishing term, rendered.
    pub term: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::NotAComplex {
                degree: v.degree,
                row: v.row,
                col: v.col,
                term: v.term,
            }),
        }
    }
}

/// Checks `∂^{k+1}∂^k = 0` through degree `precision`.
pub fn verify_complex(c: &FreeComplex, precision: &DegreeValue) -> Result<VerificationReport> {
    let form = &c.form;
    let window = Cutoff::Finite(precision.clone());
    let mut violations = Vec::new();
    for k in 0..c.boundaries.len().saturating_sub(1) {
        let composite = c.boundaries[k + 1].mul(&c.boundaries[k])?;
        for i in 0..composite.rows() {
            for j in 0..composite.cols() {
                let e = composite.get(i, j);
                if e.is_exact_zero() {
                    continue;
                }
                if let Some((n, coeff, d)) = e.sorted_terms()?.into_iter().next() {
                    if e.is_exact() || form.below(&d, &window)? {
                        let term = Series::monomial(form, e.domain(), n, coeff);
                        violations.push(Violation {
                            degree: k,
                            row: i,
                            col: j,
                            term: term.to_string(),
                        });
                        continue;
                    }
                }
                if !form.cutoff_le(&window, e.cutoff())? {
                    return Err(Error::PrecisionExhausted(format!(
                        "entry ({i}, {j}) of the composite starting in degree {k} is known \
                         only through {e}"
                    )));
                }
            }
        }
    }
    Ok(VerificationReport { violations })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeHomology {
    pub degree: usize,
    pub generators: usize,
    pub betti: usize,
    /// Non-unit invariant factors, unit-normalized.
    pub torsion: Vec<Series>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomologySummary {
    pub degrees: Vec<DegreeHomology>,
    /// Rank of `∂^k` for each boundary map.
    pub boundary_ranks: Vec<usize>,
}

impl HomologySummary {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(|d| d.betti == 0 && d.torsion.is_empty())
    }
}

/// Novikov numbers: ranks and torsion of the cohomology, via Smith normal
/// forms of the boundary maps. The complex is verified first.
pub fn homology(c: &FreeComplex, precision: &DegreeValue) -> Result<HomologySummary> {
    verify_complex(c, precision)?.into_result()?;
    let mut ranks = Vec::with_capacity(c.boundaries.len());
    let mut torsion_in: Vec<Vec<Series>> = vec![Vec::new(); c.len()];
    for (k, b) in c.boundaries.iter().enumerate() {
        let snf = smith_normal_form(b, precision)?;
        ranks.push(snf.rank());
        torsion_in[k + 1] = snf.torsion()?;
    }
    let degrees = (0..c.len())
        .map(|k| {
            let n = c.rank(k);
            let out = ranks.get(k).copied().unwrap_or(0);
            let inc = if k == 0 { 0 } else { ranks[k - 1] };
            DegreeHomology {
                degree: k,
                generators: n,
                betti: n - out - inc,
                torsion: std::mem::take(&mut torsion_in[k]),
            }
        })
        .collect();
    Ok(HomologySummary {
        degrees,
        boundary_ranks: ranks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub degree: usize,
    pub generators: usize,
    pub betti: usize,
    pub torsion_here: usize,
    pub torsion_above: usize,
    /// `N_k − (b_k + q_k + q_{k+1})`.
    pub slack: i64,
}

impl Inequality {
    pub fn holds(&self) -> bool {
        self.slack >= 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityReport {
    pub inequalities: Vec<Inequality>,
    /// `Σ (−1)^k N_k`.
    pub euler_generators: i64,
    /// `Σ (−1)^k b_k`.
    pub euler_betti: i64,
}

impl InequalityReport {
    pub fn holds(&self) -> bool {
        self.inequalities.iter().all(Inequality::holds) && self.euler_generators == self.euler_betti
    }
}

/// Morse-type inequalities `N_k ≥ b_k + q_k + q_{k+1}`, where `q_k` counts
/// torsion divisors in degree `k`, and the Euler identity.
pub fn check_inequalities(h: &HomologySummary) -> InequalityReport {
    let q = |k: usize| h.degrees.get(k).map_or(0, |d| d.torsion.len());
    let inequalities = h
        .degrees
        .iter()
        .map(|d| Inequality {
            degree: d.degree,
            generators: d.generators,
            betti: d.betti,
            torsion_here: q(d.degree),
            torsion_above: q(d.degree + 1),
            slack: d.generators as i64 - (d.betti + q(d.degree) + q(d.degree + 1)) as i64,
        })
        .collect();
    let alt = |f: &dyn Fn(&DegreeHomology) -> usize| {
        h.degrees
            .iter()
            .map(|d| if d.degree % 2 == 0 { f(d) as i64 } else { -(f(d) as i64) })
            .sum()
    };
    InequalityReport {
        inequalities,
        euler_generators: alt(&|d| d.generators),
        euler_betti: alt(&|d| d.betti),
    }
}

/// A complex over the group ring `Z[t^±1]`: the cellular cochains of the
/// covering before completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentComplex {
    pub q: usize,
    pub generators: Vec<Vec<String>>,
    /// `boundaries[k][i][j]`: coefficient of generator `i` of degree `k + 1`
    /// in the boundary of generator `j` of degree `k`.
    pub boundaries: Vec<Vec<Vec<LaurentPolynomial>>>,
}

/// Tensors a group-ring complex with `Λ_Z`: the same matrices, read as exact
/// series.
pub fn extend_scalars(c: &LaurentComplex, form: &Arc<DegreeForm>) -> Result<FreeComplex> {
    if form.q() != c.q {
        return Err(Error::DimensionMismatch {
            expected: form.q(),
            found: c.q,
        });
    }
    let mut boundaries = Vec::with_capacity(c.boundaries.len());
    for (k, rows) in c.boundaries.iter().enumerate() {
        let cols = c.generators.get(k).map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|p| p.to_series(form)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        boundaries.push(Matrix::from_rows(form, CoeffDomain::Integers, cols, rows)?);
    }
    FreeComplex::new(form, c.generators.clone(), boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::LatticePoint;
    use crate::syntax::parse_series;

    fn labels(counts: &[usize]) -> Vec<Vec<String>> {
        counts
            .iter()
            .enumerate()
            .map(|(k, &n)| (0..n).map(|i| format!("g{k}_{i}")).collect())
            .collect()
    }

    fn complex(form: &Arc<DegreeForm>, counts: &[usize], maps: &[&[&[&str]]]) -> FreeComplex {
        let boundaries = maps
            .iter()
            .enumerate()
            .map(|(k, rows)| {
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|s| parse_series(s, form, CoeffDomain::Integers).unwrap()).collect())
                    .collect();
                Matrix::from_rows(form, CoeffDomain::Integers, counts[k], rows).unwrap()
            })
            .collect();
        FreeComplex::new(form, labels(counts), boundaries).unwrap()
    }

    fn w(f: &DegreeForm) -> DegreeValue {
        f.integer_degree(10)
    }

    #[test]
    fn verify_examples() {
        let f = Arc::new(DegreeForm::cyclic());
        let c = complex(&f, &[1, 1], &[&[&["1 - t"]]]);
        assert!(verify_complex(&c, &w(&f)).unwrap().passed());

        let bad = complex(&f, &[1, 1, 1], &[&[&["1"]], &[&["1"]]]);
        let report = verify_complex(&bad, &w(&f)).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].term, "1");
        assert!(matches!(homology(&bad, &w(&f)), Err(Error::NotAComplex { .. })));

        let z = Arc::new(DegreeForm::trivial());
        let sphere = FreeComplex::new(&z, labels(&[1, 0, 1]), vec![]).unwrap();
        assert!(verify_complex(&sphere, &z.integer_degree(1)).unwrap().passed());
    }

    #[test]
    fn homology_examples() {
        let f = Arc::new(DegreeForm::cyclic());
        let circle = complex(&f, &[1, 1], &[&[&["1 - t"]]]);
        let h = homology(&circle, &w(&f)).unwrap();
        assert_eq!(h.betti(), [0, 0]);
        assert!(h.is_zero());

        let z = Arc::new(DegreeForm::trivial());
        let sphere = FreeComplex::new(&z, labels(&[1, 0, 1]), vec![]).unwrap();
        let h = homology(&sphere, &z.integer_degree(1)).unwrap();
        assert_eq!(h.betti(), [1, 0, 1]);

        let torsion = complex(&f, &[1, 1], &[&[&["2"]]]);
        let h = homology(&torsion, &w(&f)).unwrap();
        assert_eq!(h.betti(), [0, 0]);
        assert_eq!(h.degrees[1].torsion.len(), 1);
        assert_eq!(h.degrees[1].torsion[0].to_string(), "2");
    }

    #[test]
    fn inequality_examples() {
        let f = Arc::new(DegreeForm::cyclic());
        let circle = check_inequalities(&homology(&complex(&f, &[1, 1], &[&[&["1 - t"]]]), &w(&f)).unwrap());
        assert!(circle.holds());
        assert!(circle.inequalities.iter().all(|i| i.slack == 1));
        assert_eq!((circle.euler_generators, circle.euler_betti), (0, 0));

        let z = Arc::new(DegreeForm::trivial());
        let sphere = FreeComplex::new(&z, labels(&[1, 0, 1]), vec![]).unwrap();
        let r = check_inequalities(&homology(&sphere, &z.integer_degree(1)).unwrap());
        assert!(r.holds());
        assert_eq!((r.euler_generators, r.euler_betti), (2, 2));
        assert_eq!(r.inequalities[0].slack, 0);

        let t = check_inequalities(&homology(&complex(&f, &[1, 1], &[&[&["2"]]]), &w(&f)).unwrap());
        assert!(t.holds());
        assert_eq!(t.inequalities[0].torsion_above, 1);
        assert_eq!(t.inequalities[1].torsion_here, 1);
        assert!(t.inequalities.iter().all(|i| i.slack == 0));
    }

    #[test]
    fn extension_from_group_ring() {
        let f = Arc::new(DegreeForm::cyclic());
        let p = |terms: &[(i64, i64)]| {
            LaurentPolynomial::from_terms(1, terms.iter().map(|&(e, c)| (LatticePoint::from(vec![e]), c.into())))
                .unwrap()
        };
        let one_minus_t = p(&[(0, 1), (1, -1)]);
        assert!(!one_minus_t.is_unit());
        let lc = LaurentComplex {
            q: 1,
            generators: labels(&[1, 1]),
            boundaries: vec![vec![vec![one_minus_t]]],
        };
        let c = extend_scalars(&lc, &f).unwrap();
        assert!(homology(&c, &w(&f)).unwrap().is_zero());

        let lc = LaurentComplex {
            q: 1,
            generators: labels(&[1, 1]),
            boundaries: vec![vec![vec![p(&[(0, 2), (1, 1)])]]],
        };
        let h = homology(&extend_scalars(&lc, &f).unwrap(), &w(&f)).unwrap();
        assert_eq!(h.degrees[1].torsion[0].to_string(), "2 + t");

        let empty = LaurentComplex {
            q: 1,
            generators: vec![],
            boundaries: vec![],
        };
        assert!(extend_scalars(&empty, &f).unwrap().is_empty());
    }
}
