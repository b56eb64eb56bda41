use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use novikov_core::cone::ConeSpec;
use novikov_core::homology::{
    homology, rank_over_field, smith_normal_form, FreeComplex, Matrix,
};
use novikov_core::morse::{
    adjoint_boundary, assemble_novikov_complex, examples, lambda_pairing, ChainKind, LambdaChain,
};
use novikov_core::{CoeffDomain, Cutoff, DegreeForm, DegreeValue, LatticePoint, Series};

fn plane() -> Arc<DegreeForm> {
    Arc::new(DegreeForm::with_sqrt("xi", 2).unwrap())
}

fn line() -> Arc<DegreeForm> {
    Arc::new(DegreeForm::cyclic())
}

fn p(v: &[i64]) -> LatticePoint {
    LatticePoint::new(v.to_vec())
}

fn poly(form: &Arc<DegreeForm>, coeffs: &[i64]) -> Series {
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| (p(&[k as i64]), BigRational::from_integer(BigInt::from(c))));
    Series::from_terms(form, CoeffDomain::Integers, terms, Cutoff::Infinite).unwrap()
}

fn vanishes_through(s: &Series, w: &DegreeValue) -> bool {
    let f = s.form();
    let window = Cutoff::Finite(w.clone());
    s.terms()
        .keys()
        .all(|n| !f.below(&f.degree_of(n).unwrap(), &window).unwrap())
        && (s.is_exact() || f.cutoff_le(&window, s.cutoff()).unwrap())
}

fn matrix(form: &Arc<DegreeForm>, n: usize, entries: &[Vec<i64>]) -> Matrix {
    let rows = entries
        .chunks(n)
        .map(|row| row.iter().map(|c| poly(form, c)).collect())
        .collect();
    Matrix::from_rows(form, CoeffDomain::Integers, n, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degree_is_additive_and_injective(a in prop::collection::vec(-50i64..50, 2), b in prop::collection::vec(-50i64..50, 2)) {
        let f = plane();
        let (a, b) = (p(&a), p(&b));
        let sum = f.degree_of(&(&a + &b)).unwrap();
        prop_assert_eq!(sum, &f.degree_of(&a).unwrap() + &f.degree_of(&b).unwrap());
        let cmp = f.compare(&f.degree_of(&a).unwrap(), &f.degree_of(&b).unwrap()).unwrap();
        prop_assert_eq!(cmp == Ordering::Equal, a == b);
    }

    #[test]
    fn cone_contains_nonnegative_combinations(
        g in prop::collection::vec(prop::collection::vec(-2i64..=3, 2), 1..=3),
        x in prop::collection::vec(0i64..4, 3),
    ) {
        let f = plane();
        let gens: Vec<LatticePoint> = g.iter().map(|v| p(v)).collect();
        let Ok(cone) = ConeSpec::new(&f, gens.clone()) else {
            return Ok(());
        };
        let mut n = LatticePoint::zero(2);
        for (e, k) in gens.iter().zip(&x) {
            for _ in 0..*k {
                n = &n + e;
            }
        }
        prop_assert!(cone.contains(&n).unwrap());
        // Points of negative degree are never in a cone of positive generators.
        let below = -&n;
        if !n.is_zero() {
            let d = f.degree_of(&below).unwrap();
            prop_assert_eq!(f.sign(&d).unwrap(), Ordering::Less);
            prop_assert!(!cone.contains(&(&below - &gens[0])).unwrap());
        }
        for q in cone.fundamental_lattice_points().unwrap() {
            prop_assert!(cone.contains(&q).unwrap());
        }
    }

    #[test]
    fn snf_certificate_and_rank(entries in prop::collection::vec(prop::collection::vec(-3i64..=3, 0..=2), 4)) {
        let f = line();
        let m = matrix(&f, 2, &entries);
        let w = f.integer_degree(12);
        let snf = smith_normal_form(&m, &w).unwrap();
        let umv = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
        let diff = umv.sub(&snf.d).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!(vanishes_through(diff.get(i, j), &w));
            }
        }
        prop_assert_eq!(snf.rank(), rank_over_field(&m, &w).unwrap());
        for pair in snf.diagonal.windows(2) {
            prop_assert!(pair[1].divide(&pair[0], &w).is_ok());
        }
    }

    #[test]
    fn homology_is_invariant_under_unimodular_change_of_basis(seed in prop::collection::vec(0i64..=3, 2), shear in -2i64..=2, deck in 0i64..=2) {
        // A 2x2 boundary diag(d1, d2) conjugated by an elementary matrix.
        let f = line();
        let d = matrix(&f, 2, &[vec![seed[0]], vec![], vec![], vec![seed[1]]]);
        let e = {
            let mut e = Matrix::identity(&f, CoeffDomain::Integers, 2);
            let mut c = vec![0; deck as usize];
            c.push(shear);
            e.set(0, 1, poly(&f, &c));
            e
        };
        let mixed = e.mul(&d).unwrap().mul(&e.transpose()).unwrap();
        let gens = vec![vec!["a".to_string(), "b".into()], vec!["c".into(), "d".into()]];
        let w = f.integer_degree(10);
        let plain = homology(&FreeComplex::new(&f, gens.clone(), vec![d]).unwrap(), &w).unwrap();
        let conj = homology(&FreeComplex::new(&f, gens, vec![mixed]).unwrap(), &w).unwrap();
        prop_assert_eq!(plain.betti(), conj.betti());
        let torsion = |h: &novikov_core::homology::HomologySummary| {
            h.degrees.iter().map(|d| d.torsion.iter().map(|s| s.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
        };
        prop_assert_eq!(torsion(&plain), torsion(&conj));
    }

    #[test]
    fn pairing_is_independent_of_lifts(
        which in 0usize..4,
        shift in prop::collection::vec(-4i64..=4, 2),
        exps in prop::collection::vec(-3i64..=3, 4),
        coeffs in prop::collection::vec((-3i64..=3).prop_filter("nonzero", |c| *c != 0), 2),
    ) {
        let data = examples::all().into_iter().nth(which).unwrap().1;
        let cx = assemble_novikov_complex(&data).unwrap().complex;
        let f = cx.form().clone();
        let q = f.q();
        let m = LatticePoint::new(shift[..q].to_vec());
        let mono = |e: &[i64], c: i64| {
            Series::monomial(&f, CoeffDomain::Integers, LatticePoint::new(e[..q].to_vec()), BigRational::from_integer(c.into()))
        };
        for gens in cx.generators() {
            for x in gens {
                let s = LambdaChain::new(ChainKind::Stable).with(x, mono(&exps[..2], coeffs[0]));
                let u = LambdaChain::new(ChainKind::Unstable).with(x, mono(&exps[2..], coeffs[1]));
                let before = lambda_pairing(&cx, &u, &s).unwrap();
                let after = lambda_pairing(&cx, &u.relift(x, &m), &s.relift(x, &m)).unwrap();
                prop_assert_eq!(before, after);
            }
        }
    }
}

#[test]
fn adjointness_on_bundled_basis_chains() {
    for (name, data) in examples::all() {
        let cx = assemble_novikov_complex(&data).unwrap().complex;
        let n = cx.len() - 1;
        let adj = adjoint_boundary(&cx);
        for (k, d) in cx.boundaries().iter().enumerate() {
            // ∂ on U-degree n-k-1 pairs against d on S-degree k.
            let partial = &adj[n - k - 1];
            for (j, y) in cx.generators()[k + 1].iter().enumerate() {
                for (i, x) in cx.generators()[k].iter().enumerate() {
                    let s = LambdaChain::basis(ChainKind::Stable, &cx, x);
                    let u = LambdaChain::basis(ChainKind::Unstable, &cx, y);
                    let mut ds = LambdaChain::new(ChainKind::Stable);
                    for (r, z) in cx.generators()[k + 1].iter().enumerate() {
                        ds = ds.with(z, d.get(r, i).clone());
                    }
                    let mut du = LambdaChain::new(ChainKind::Unstable);
                    for (r, z) in cx.generators()[k].iter().enumerate() {
                        du = du.with(z, partial.get(r, j).clone());
                    }
                    let lhs = lambda_pairing(&cx, &du, &s).unwrap();
                    let rhs = lambda_pairing(&cx, &u, &ds).unwrap();
                    assert_eq!(lhs, rhs, "{name}: {y} against {x}");
                }
            }
        }
    }
}
