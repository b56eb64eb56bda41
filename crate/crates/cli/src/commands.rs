//! Job dispatch.

use std::cmp::Ordering;
use std::sync::Arc;

use novikov_core::homology::{
    check_inequalities, extend_scalars, homology, smith_normal_form, verify_complex, FreeComplex,
    LaurentComplex, Matrix,
};
use novikov_core::laurent::LaurentPolynomial;
use novikov_core::morse::{
    assemble_novikov_complex, lambda_pairing, linking_number, solve_in_complex,
};
use novikov_core::syntax::{parse_degree, parse_expression, EvalContext};
use novikov_core::{CoeffDomain, Cutoff, DegreeForm, DegreeValue, Error};

use crate::corpus;
use crate::input::{
    load, schema_of, ChainsFile, ComplexFile, MorseFile, RingFile, CHAINS_SCHEMA, COMPLEX_SCHEMA,
    MORSE_SCHEMA, RING_SCHEMA,
};
use crate::report::{
    ComplexInfo, ConeReport, DegreeRow, ExamplesReport, ExtendReport, HomologyReport, LaurentRow,
    LinkingRow, MembershipRow, PairingReport, Report, RingReport, SnfReport, SnfRow, ViolationRow,
};
use crate::{CliError, Command, JobSpec};

const DEFAULT_PRECISION: i64 = 10;

/// Runs a job. The flag is false when a complex failed `δ² = 0`.
pub fn execute(job: &JobSpec) -> Result<(Report, bool), CliError> {
    let domain = job.coeffs.domain();
    match &job.command {
        Command::Ring { input, expr } => ring(job, input.as_deref(), expr.as_deref()).map(|r| (r, true)),
        Command::Homology { input } => {
            let loaded = load_complex(input, domain)?;
            let p = precision(job, &loaded)?;
            let (report, ok) = homology_report(&loaded, &p)?;
            Ok((Report::Homology(report), ok))
        }
        Command::Pairing {
            input,
            chains,
            linking,
        } => pairing(job, input, chains, *linking).map(|r| (r, true)),
        Command::Cone { input } => cone(job, input).map(|r| (r, true)),
        Command::Snf { input } => snf(job, input).map(|r| (r, true)),
        Command::Extend { input } => extend(job, input),
        Command::Examples { name } => examples(name.as_deref()).map(|r| (r, true)),
    }
}

/// A complex read from a Morse file or a complex file.
pub struct Loaded {
    pub name: String,
    pub complex: FreeComplex,
    pub window: Cutoff,
}

pub fn load_complex(arg: &str, domain: CoeffDomain) -> Result<Loaded, CliError> {
    let (origin, text) = corpus::read(arg)?;
    let schema = schema_of(&origin, &text)?;
    let (name, complex, window) = match schema.as_str() {
        MORSE_SCHEMA => {
            let file: MorseFile = load(&origin, &text, MORSE_SCHEMA)?;
            let data = file.to_data(&origin)?;
            let assembled = assemble_novikov_complex(&data).map_err(|e| CliError::at(&origin, "", e))?;
            (file.name, assembled.complex, data.window)
        }
        COMPLEX_SCHEMA => {
            let file: ComplexFile = load(&origin, &text, COMPLEX_SCHEMA)?;
            let complex = file.to_complex(&origin, CoeffDomain::Integers)?;
            (file.name, complex, Cutoff::Infinite)
        }
        other => {
            return Err(CliError::field(
                &origin,
                "schema",
                format!("expected `{MORSE_SCHEMA}` or `{COMPLEX_SCHEMA}`, found `{other}`"),
            ))
        }
    };
    let complex = if domain == CoeffDomain::Rationals {
        let form = complex.form().clone();
        let boundaries = complex
            .boundaries()
            .iter()
            .map(|b| b.with_domain(domain))
            .collect::<Result<Vec<Matrix>, Error>>()?;
        FreeComplex::new(&form, complex.generators().to_vec(), boundaries)?
    } else {
        complex
    };
    Ok(Loaded {
        name: name.unwrap_or(origin),
        complex,
        window,
    })
}

fn parse_precision(job: &JobSpec, form: &DegreeForm) -> Result<Option<DegreeValue>, CliError> {
    let Some(text) = &job.precision else {
        return Ok(None);
    };
    let p = parse_degree(text, form.basis()).map_err(|e| CliError::at("--precision", "", e))?;
    if form.sign(&p)? != Ordering::Greater {
        return Err(CliError::Usage(format!(
            "--precision must be a positive degree, got {}",
            form.render(&p)
        )));
    }
    Ok(Some(p))
}

/// The explicit precision, else the completeness window, else 10.
fn precision(job: &JobSpec, loaded: &Loaded) -> Result<DegreeValue, CliError> {
    let form = loaded.complex.form();
    match (parse_precision(job, form)?, &loaded.window) {
        (Some(p), Cutoff::Finite(w)) if form.compare(&p, w)? == Ordering::Greater => Err(CliError::Usage(format!(
            "--precision {} exceeds the completeness window {} of the flow data",
            form.render(&p),
            form.render(w)
        ))),
        (Some(p), _) => Ok(p),
        (None, Cutoff::Finite(w)) => Ok(w.clone()),
        (None, Cutoff::Infinite) => Ok(form.integer_degree(DEFAULT_PRECISION)),
    }
}

fn info(loaded: &Loaded, precision: &DegreeValue) -> ComplexInfo {
    let form = loaded.complex.form();
    ComplexInfo {
        name: loaded.name.clone(),
        q: form.q(),
        periods: form.periods().iter().map(|p| form.render(p)).collect(),
        dimension: loaded.complex.len().saturating_sub(1),
        window: loaded.window.finite().map(|w| form.render(w)),
        precision: form.render(precision),
    }
}

pub fn homology_report(loaded: &Loaded, precision: &DegreeValue) -> Result<(HomologyReport, bool), CliError> {
    let c = &loaded.complex;
    let verification = verify_complex(c, precision)?;
    let mut report = HomologyReport {
        complex: info(loaded, precision),
        complex_verified: verification.passed(),
        violations: verification
            .violations
            .iter()
            .map(|v| ViolationRow {
                degree: v.degree,
                row: v.row,
                col: v.col,
                term: v.term.clone(),
            })
            .collect(),
        degrees: Vec::new(),
        euler_generators: 0,
        euler_betti: 0,
        inequalities_hold: false,
    };
    if !verification.passed() {
        return Ok((report, false));
    }
    let h = homology(c, precision)?;
    let ineq = check_inequalities(&h);
    report.degrees = h
        .degrees
        .iter()
        .zip(&ineq.inequalities)
        .map(|(d, i)| {
            Ok(DegreeRow {
                degree: d.degree,
                generators: d.generators,
                betti: d.betti,
                torsion: d.torsion.iter().map(|s| s.to_string()).collect(),
                torsion_here: i.torsion_here,
                torsion_above: i.torsion_above,
                slack: i.slack,
            })
        })
        .collect::<Result<_, CliError>>()?;
    report.euler_generators = ineq.euler_generators;
    report.euler_betti = ineq.euler_betti;
    report.inequalities_hold = ineq.holds();
    Ok((report, true))
}

fn ring(job: &JobSpec, input: Option<&str>, expr: Option<&str>) -> Result<Report, CliError> {
    let (origin, file) = match input {
        Some(arg) => {
            let (origin, text) = corpus::read(arg)?;
            let file: RingFile = load(&origin, &text, RING_SCHEMA)?;
            (origin, Some(file))
        }
        None => ("--expr".to_string(), None),
    };
    let form = match &file {
        Some(f) => f.form(&origin)?,
        None => Arc::new(DegreeForm::cyclic()),
    };
    let (text, origin, field) = match (expr, file.as_ref().and_then(|f| f.expr.clone())) {
        (Some(e), _) => (e.to_string(), "--expr".to_string(), ""),
        (None, Some(e)) => (e, origin, "expr"),
        (None, None) => return Err(CliError::Usage("no expression: pass --expr or a file with `expr`".into())),
    };
    let precision = parse_precision(job, &form)?.unwrap_or_else(|| form.integer_degree(DEFAULT_PRECISION));
    let ctx = EvalContext {
        domain: job.coeffs.domain(),
        precision: Some(precision),
    };
    let value = parse_expression(&text, &form, &ctx).map_err(|e| CliError::at(&origin, field, e))?;
    Ok(Report::Ring(RingReport {
        expression: text,
        value: value.to_string(),
        exact: value.is_exact(),
        cutoff: value.cutoff().finite().map(|c| form.render(c)),
    }))
}

fn pairing(job: &JobSpec, input: &str, chains: &str, linking: bool) -> Result<Report, CliError> {
    let domain = job.coeffs.domain();
    let loaded = load_complex(input, domain)?;
    let p = precision(job, &loaded)?;
    let c = &loaded.complex;
    let (origin, text) = corpus::read(chains)?;
    let file: ChainsFile = load(&origin, &text, CHAINS_SCHEMA)?;
    let (u, s) = file.to_chains(&origin, c.form(), domain)?;
    let complex = info(&loaded, &p);
    if !linking {
        let value = lambda_pairing(c, &u, &s)?;
        return Ok(Report::Pairing(PairingReport {
            complex,
            pairing: Some(value.to_string()),
            linking: None,
        }));
    }
    let value = linking_number(c, &u, &s, &p)?;
    let cert = solve_in_complex(c, &u, &p)?;
    Ok(Report::Pairing(PairingReport {
        complex,
        pairing: None,
        linking: Some(LinkingRow {
            lambda: cert.lambda.to_string(),
            certificate: cert
                .chain
                .coefficients
                .iter()
                .map(|(id, s)| (id.clone(), s.to_string()))
                .collect(),
            value: value.to_string(),
        }),
    }))
}

fn cone(job: &JobSpec, input: &str) -> Result<Report, CliError> {
    let (origin, text) = corpus::read(input)?;
    let file: RingFile = load(&origin, &text, RING_SCHEMA)?;
    let form = file.form(&origin)?;
    let Some((cone, points)) = file.cone(&origin, &form)? else {
        return Err(CliError::field(&origin, "cone", "missing [cone] table"));
    };
    let membership = points
        .iter()
        .map(|p| {
            Ok(MembershipRow {
                point: p.to_string(),
                contained: cone.contains(p)?,
            })
        })
        .collect::<Result<_, CliError>>()?;
    let (series, certificate) = match &file.expr {
        None => (None, None),
        Some(e) => {
            let precision =
                parse_precision(job, &form)?.unwrap_or_else(|| form.integer_degree(DEFAULT_PRECISION));
            let ctx = EvalContext {
                domain: job.coeffs.domain(),
                precision: Some(precision),
            };
            let s = parse_expression(e, &form, &ctx).map_err(|err| CliError::at(&origin, "expr", err))?;
            let cert = match cone.certify(&s) {
                Ok(c) => Ok(c.shift.to_string()),
                Err(err @ Error::NotConical { .. }) => Err(err.to_string()),
                Err(err) => return Err(err.into()),
            };
            (Some(s.to_string()), Some(cert))
        }
    };
    Ok(Report::Cone(ConeReport {
        generators: cone.generators().iter().map(|g| g.to_string()).collect(),
        fundamental_points: cone
            .fundamental_lattice_points()?
            .iter()
            .map(|p| p.to_string())
            .collect(),
        membership,
        series,
        certificate,
    }))
}

fn snf(job: &JobSpec, input: &str) -> Result<Report, CliError> {
    let loaded = load_complex(input, job.coeffs.domain())?;
    let p = precision(job, &loaded)?;
    let mut maps = Vec::new();
    for (k, b) in loaded.complex.boundaries().iter().enumerate() {
        let r = smith_normal_form(b, &p)?;
        maps.push(SnfRow {
            degree: k,
            rows: b.rows(),
            cols: b.cols(),
            diagonal: r.diagonal.iter().map(|s| s.to_string()).collect(),
            rank: r.rank(),
            torsion: r.torsion()?.iter().map(|s| s.to_string()).collect(),
            determinants: r
                .determinants
                .as_ref()
                .map(|(u, v)| (u.to_string(), v.to_string())),
        });
    }
    Ok(Report::Snf(SnfReport {
        complex: info(&loaded, &p),
        maps,
    }))
}

/// Reads the boundary maps as matrices over the group ring.
pub fn laurent_complex(c: &FreeComplex) -> Result<LaurentComplex, CliError> {
    let mut boundaries = Vec::new();
    for (k, b) in c.boundaries().iter().enumerate() {
        let mut rows = Vec::new();
        for i in 0..b.rows() {
            let mut row = Vec::new();
            for j in 0..b.cols() {
                let p = LaurentPolynomial::from_series(b.get(i, j)).map_err(|e| {
                    CliError::Usage(format!(
                        "entry ({i}, {j}) of the boundary in degree {k} is not a Laurent polynomial: {e}"
                    ))
                })?;
                row.push(p);
            }
            rows.push(row);
        }
        boundaries.push(rows);
    }
    Ok(LaurentComplex {
        q: c.form().q(),
        generators: c.generators().to_vec(),
        boundaries,
    })
}

fn extend(job: &JobSpec, input: &str) -> Result<(Report, bool), CliError> {
    let loaded = load_complex(input, CoeffDomain::Integers)?;
    let lc = laurent_complex(&loaded.complex)?;
    let laurent = lc
        .boundaries
        .iter()
        .enumerate()
        .map(|(k, rows)| LaurentRow {
            degree: k,
            entries: rows.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect(),
            non_units: rows
                .iter()
                .flatten()
                .filter(|p| !p.is_zero() && !p.is_unit())
                .count(),
        })
        .collect();
    let extended = extend_scalars(&lc, loaded.complex.form())?;
    let domain = job.coeffs.domain();
    let complex = if domain == CoeffDomain::Rationals {
        let boundaries = extended
            .boundaries()
            .iter()
            .map(|b| b.with_domain(domain))
            .collect::<Result<Vec<Matrix>, Error>>()?;
        FreeComplex::new(extended.form(), extended.generators().to_vec(), boundaries)?
    } else {
        extended
    };
    let loaded = Loaded {
        name: loaded.name,
        complex,
        window: loaded.window,
    };
    let p = precision(job, &loaded)?;
    let (homology, ok) = homology_report(&loaded, &p)?;
    Ok((Report::Extend(ExtendReport { laurent, homology }), ok))
}

fn examples(name: Option<&str>) -> Result<Report, CliError> {
    let names = corpus::BUNDLED.iter().map(|(n, _)| n.to_string()).collect();
    let text = match name {
        None => None,
        Some(n) => Some(corpus::read(&format!("{}{n}", corpus::PREFIX))?.1),
    };
    Ok(Report::Examples(ExamplesReport { names, text }))
}
