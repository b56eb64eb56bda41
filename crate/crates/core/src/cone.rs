//! Lattice cones `C(e)` and conical-support certificates.
//!
//! A cone is generated by lattice vectors of strictly positive degree. A
//! series is certified conical when its stored support lies in a translate
//! `shift + C(e)`; positivity of `χ` on the generators then keeps the support
//! forward under small perturbations of `χ`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::degree::{DegreeForm, LatticePoint};
use crate::error::{Error, Result};
use crate::linalg::solve_independent;
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSpec {
    generators: Vec<LatticePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicalCertificate {
    pub cone: ConeSpec,
    /// Every stored exponent lies in `shift + C(e)`.
    pub shift: LatticePoint,
}

fn to_rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl ConeSpec {
    /// Validates dimensions and `χ(e_k) > 0` for every generator.
    pub fn new(form: &DegreeForm, generators: Vec<LatticePoint>) -> Result<ConeSpec> {
        if generators.is_empty() {
            return Err(Error::InvalidCone("a cone needs at least one generator".into()));
        }
        for e in &generators {
            form.check_point(e)?;
            let d = form.degree_of(e)?;
            if form.sign(&d)? != std::cmp::Ordering::Greater {
                return Err(Error::InvalidCone(format!(
                    "generator {e} has degree {}, which is not positive",
                    form.render(&d)
                )));
            }
        }
        Ok(ConeSpec { generators })
    }

    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    fn columns(&self, which: &[usize]) -> Vec<Vec<BigRational>> {
        which
            .iter()
            .map(|&k| self.generators[k].coords().iter().map(|&c| to_rat(c)).collect())
            .collect()
    }

    /// Decides `n ∈ C(e)` exactly: some nonnegative combination hits `n`
    /// iff a basic one does, so it suffices to try every linearly
    /// independent subset of generators.
    pub fn contains(&self, n: &LatticePoint) -> Result<bool> {
        self.feasible(n, false)
    }

    /// Whether `n = Σ x_k e_k` with every `0 <= x_k <= 1`.
    pub fn parallelepiped_contains(&self, n: &LatticePoint) -> Result<bool> {
        self.feasible(n, true)
    }

    fn feasible(&self, n: &LatticePoint, capped: bool) -> Result<bool> {
        if n.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: n.dim(),
            });
        }
        let m = self.generators.len();
        let states: usize = if capped { 3 } else { 2 };
        let total = states.pow(m as u32);
        // Each variable is at a bound (0, or 1 when capped) or basic.
        for code in 0..total {
            let mut c = code;
            let mut basic = Vec::new();
            let mut rhs: Vec<BigRational> = n.coords().iter().map(|&v| to_rat(v)).collect();
            for k in 0..m {
                match c % states {
                    0 => {}
                    1 => basic.push(k),
                    _ => {
                        for (r, &g) in rhs.iter_mut().zip(self.generators[k].coords()) {
                            *r -= to_rat(g);
                        }
                    }
                }
                c /= states;
            }
            if basic.is_empty() {
                if rhs.iter().all(Zero::is_zero) {
                    return Ok(true);
                }
                continue;
            }
            let Some(x) = solve_independent(&self.columns(&basic), &rhs) else {
                continue;
            };
            let ok = x
                .iter()
                .all(|v| !v.is_negative() && (!capped || *v <= BigRational::one()));
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `C¹_Z(e)`: lattice points of the closed parallelepiped
    /// `{Σ x_k e_k : 0 <= x_k <= 1}`, found by scanning its bounding box.
    pub fn fundamental_lattice_points(&self) -> Result<BTreeSet<LatticePoint>> {
        let q = self.dim();
        let mut lo = vec![0i64; q];
        let mut hi = vec![0i64; q];
        for e in &self.generators {
            for (i, &c) in e.coords().iter().enumerate() {
                if c < 0 {
                    lo[i] += c;
                } else {
                    hi[i] += c;
                }
            }
        }
        let mut out = BTreeSet::new();
        let mut cur = lo.clone();
        loop {
            let p = LatticePoint::new(cur.clone());
            if self.parallelepiped_contains(&p)? {
                out.insert(p);
            }
            let mut i = 0;
            loop {
                if i == q {
                    return Ok(out);
                }
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
                i += 1;
            }
        }
    }

    /// Checks `spt(α) ⊆ shift + C(e)`; returns the first exponent outside.
    pub fn first_outside(&self, alpha: &Series, shift: &LatticePoint) -> Result<Option<LatticePoint>> {
        for n in alpha.terms().keys() {
            if !self.contains(&(n - shift))? {
                return Ok(Some(n.clone()));
            }
        }
        Ok(None)
    }

    /// Certifies the stored support of `α` as conical. Shifts are tried in
    /// order: the componentwise minimum of the support, then each support
    /// point.
    pub fn certify(&self, alpha: &Series) -> Result<ConicalCertificate> {
        let form: &Arc<DegreeForm> = alpha.form();
        if form.q() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: form.q(),
                found: self.dim(),
            });
        }
        let support: Vec<&LatticePoint> = alpha.terms().keys().collect();
        let Some(first) = support.first() else {
            return Ok(ConicalCertificate {
                cone: self.clone(),
                shift: LatticePoint::zero(self.dim()),
            });
        };
        let meet = support.iter().fold((*first).clone(), |acc, p| acc.meet(p));
        let mut candidates = vec![meet];
        candidates.extend(support.iter().map(|p| (*p).clone()));
        let mut report = None;
        for shift in candidates {
            match self.first_outside(alpha, &shift)? {
                None => {
                    return Ok(ConicalCertificate {
                        cone: self.clone(),
                        shift,
                    })
                }
                Some(w) => {
                    report.get_or_insert((w, shift));
                }
            }
        }
        let (witness, shift) = report.expect("at least one candidate");
        Err(Error::NotConical { witness, shift })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::Cutoff;
    use crate::series::CoeffDomain;

    fn p(v: &[i64]) -> LatticePoint {
        LatticePoint::new(v.to_vec())
    }

    fn plane() -> Arc<DegreeForm> {
        Arc::new(DegreeForm::with_sqrt("xi", 2).unwrap())
    }

    fn cone(form: &DegreeForm, gens: &[&[i64]]) -> ConeSpec {
        ConeSpec::new(form, gens.iter().map(|g| p(g)).collect()).unwrap()
    }

    fn support(form: &Arc<DegreeForm>, pts: &[&[i64]]) -> Series {
        Series::from_terms(
            form,
            CoeffDomain::Integers,
            pts.iter().map(|v| (p(v), to_rat(1))),
            Cutoff::Infinite,
        )
        .unwrap()
    }

    #[test]
    fn membership_examples() {
        let f = plane();
        let orthant = cone(&f, &[&[1, 0], &[0, 1]]);
        assert!(orthant.contains(&p(&[2, 3])).unwrap());
        let skew = cone(&f, &[&[1, 0], &[1, 2]]);
        assert!(!skew.contains(&p(&[0, 1])).unwrap());
        assert!(skew.contains(&p(&[0, 0])).unwrap());
        assert!(skew.contains(&p(&[3, 2])).unwrap());
    }

    #[test]
    fn fundamental_points_examples() {
        let f = plane();
        let square = cone(&f, &[&[1, 0], &[0, 1]]).fundamental_lattice_points().unwrap();
        let expected: BTreeSet<_> = [p(&[0, 0]), p(&[1, 0]), p(&[0, 1]), p(&[1, 1])].into();
        assert_eq!(square, expected);

        let line = ConeSpec::new(&DegreeForm::cyclic(), vec![p(&[1])])
            .unwrap()
            .fundamental_lattice_points()
            .unwrap();
        assert_eq!(line, [p(&[0]), p(&[1])].into());

        // Parallelogram with corners 0, (1,0), (1,2), (2,2): besides the
        // corners it contains (1,1).
        let skew = cone(&f, &[&[1, 0], &[1, 2]]).fundamental_lattice_points().unwrap();
        let expected: BTreeSet<_> =
            [p(&[0, 0]), p(&[1, 0]), p(&[1, 1]), p(&[1, 2]), p(&[2, 2])].into();
        assert_eq!(skew, expected);
    }

    #[test]
    fn rejects_nonpositive_generators() {
        let f = plane();
        assert!(matches!(
            ConeSpec::new(&f, vec![p(&[1, -1])]),
            Err(Error::InvalidCone(_))
        ));
        assert!(ConeSpec::new(&f, vec![p(&[-1, 1])]).is_ok());
    }

    #[test]
    fn certify_examples() {
        let c = Arc::new(DegreeForm::cyclic());
        let e = ConeSpec::new(&c, vec![p(&[1])]).unwrap();
        assert_eq!(e.certify(&support(&c, &[&[0], &[1]])).unwrap().shift, p(&[0]));
        assert_eq!(e.certify(&support(&c, &[&[-2], &[0]])).unwrap().shift, p(&[-2]));

        let f = plane();
        let skew = cone(&f, &[&[1, 0], &[1, 2]]);
        let err = skew.certify(&support(&f, &[&[1, 0], &[0, 1]])).unwrap_err();
        assert_eq!(
            err,
            Error::NotConical {
                witness: p(&[0, 1]),
                shift: p(&[0, 0])
            }
        );
    }
}
