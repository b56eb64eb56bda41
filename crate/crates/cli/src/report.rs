//! Job results and their two renderings.

use std::fmt::Write;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "report", rename_all = "snake_case")]
pub enum Report {
    Ring(RingReport),
    Homology(HomologyReport),
    Pairing(PairingReport),
    Cone(ConeReport),
    Snf(SnfReport),
    Extend(ExtendReport),
    Examples(ExamplesReport),
}

#[derive(Clone, Debug, Serialize)]
pub struct RingReport {
    pub expression: String,
    pub value: String,
    pub exact: bool,
    /// The `O(deg ·)` bound, when the value is truncated.
    pub cutoff: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexInfo {
    pub name: String,
    pub q: usize,
    pub periods: Vec<String>,
    pub dimension: usize,
    /// Completeness window of the flow data, if any.
    pub window: Option<String>,
    pub precision: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolationRow {
    pub degree: usize,
    pub row: usize,
    pub col: usize,
    pub term: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub generators: usize,
    pub betti: usize,
    pub torsion: Vec<String>,
    pub torsion_here: usize,
    pub torsion_above: usize,
    pub slack: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub complex: ComplexInfo,
    pub complex_verified: bool,
    pub violations: Vec<ViolationRow>,
    /// Empty when verification failed.
    pub degrees: Vec<DegreeRow>,
    pub euler_generators: i64,
    pub euler_betti: i64,
    pub inequalities_hold: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub complex: ComplexInfo,
    /// `U •_Λ S`, absent in linking mode.
    pub pairing: Option<String>,
    pub linking: Option<LinkingRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkingRow {
    /// `λ` with `∂V = λu`.
    pub lambda: String,
    /// `V`, as `point: coefficient` pairs.
    pub certificate: Vec<(String, String)>,
    /// Representative with coefficients in `[0, 1)`.
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipRow {
    pub point: String,
    pub contained: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeReport {
    pub generators: Vec<String>,
    pub fundamental_points: Vec<String>,
    pub membership: Vec<MembershipRow>,
    pub series: Option<String>,
    /// Shift `s` with `spt ⊆ s + C(e)`, or the reason there is none.
    pub certificate: Option<Result<String, String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SnfRow {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub diagonal: Vec<String>,
    pub rank: usize,
    pub torsion: Vec<String>,
    /// `det U` and `det V`, when expanded.
    pub determinants: Option<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SnfReport {
    pub complex: ComplexInfo,
    pub maps: Vec<SnfRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LaurentRow {
    pub degree: usize,
    pub entries: Vec<Vec<String>>,
    /// Nonzero entries that are not units of the group ring.
    pub non_units: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtendReport {
    pub laurent: Vec<LaurentRow>,
    pub homology: HomologyReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExamplesReport {
    pub names: Vec<String>,
    /// The file text, when one example was requested.
    pub text: Option<String>,
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "-".into()
    } else {
        items.join(", ")
    }
}

fn header(out: &mut String, c: &ComplexInfo) {
    let _ = writeln!(out, "complex     {}", c.name);
    let _ = writeln!(
        out,
        "form        q = {}, periods ({})",
        c.q,
        c.periods.join(", ")
    );
    let _ = writeln!(out, "dimension   {}", c.dimension);
    if let Some(w) = &c.window {
        let _ = writeln!(out, "window      {w}");
    }
    let _ = writeln!(out, "precision   {}", c.precision);
}

impl HomologyReport {
    fn write_table(&self, out: &mut String) {
        header(out, &self.complex);
        if !self.complex_verified {
            let _ = writeln!(out, "delta^2     FAILED, the flow data is inconsistent");
            for v in &self.violations {
                let _ = writeln!(
                    out,
                    "  composite from degree {}, entry ({}, {}): {}",
                    v.degree, v.row, v.col, v.term
                );
            }
            return;
        }
        let _ = writeln!(out, "delta^2     0, verified");
        out.push('\n');
        let torsion: Vec<String> = self.degrees.iter().map(|d| list(&d.torsion)).collect();
        let width = torsion.iter().map(|t| t.len()).max().unwrap_or(1).max(7);
        let _ = writeln!(
            out,
            "{:>3}  {:>4}  {:>4}  {:<width$}  {:>4}  {:>6}  {:>5}",
            "k", "N_k", "b_k", "torsion", "q_k", "q_k+1", "slack"
        );
        for (d, t) in self.degrees.iter().zip(&torsion) {
            let _ = writeln!(
                out,
                "{:>3}  {:>4}  {:>4}  {:<width$}  {:>4}  {:>6}  {:>5}",
                d.degree, d.generators, d.betti, t, d.torsion_here, d.torsion_above, d.slack
            );
        }
        out.push('\n');
        let _ = writeln!(
            out,
            "euler       sum (-1)^k N_k = {}, sum (-1)^k b_k = {}",
            self.euler_generators, self.euler_betti
        );
        let _ = writeln!(
            out,
            "inequalities {}",
            if self.inequalities_hold { "hold" } else { "VIOLATED" }
        );
    }
}

impl Report {
    pub fn table(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Ring(r) => {
                let _ = writeln!(out, "{}", r.value);
            }
            Report::Homology(h) => h.write_table(&mut out),
            Report::Pairing(p) => {
                header(&mut out, &p.complex);
                if let Some(v) = &p.pairing {
                    let _ = writeln!(out, "pairing     {v}");
                }
                if let Some(l) = &p.linking {
                    let _ = writeln!(out, "lambda      {}", l.lambda);
                    let cert: Vec<String> = l
                        .certificate
                        .iter()
                        .map(|(id, c)| format!("{id}: {c}"))
                        .collect();
                    let _ = writeln!(out, "certificate {}", list(&cert));
                    let _ = writeln!(out, "linking     {} mod Λ", l.value);
                }
            }
            Report::Cone(c) => {
                let _ = writeln!(out, "generators  {}", c.generators.join(" "));
                let _ = writeln!(out, "C1_Z(e)     {}", c.fundamental_points.join(" "));
                for m in &c.membership {
                    let _ = writeln!(
                        out,
                        "member      {} {}",
                        m.point,
                        if m.contained { "yes" } else { "no" }
                    );
                }
                if let Some(s) = &c.series {
                    let _ = writeln!(out, "series      {s}");
                }
                match &c.certificate {
                    Some(Ok(shift)) => {
                        let _ = writeln!(out, "conical     yes, support in {shift} + C(e)");
                    }
                    Some(Err(why)) => {
                        let _ = writeln!(out, "conical     no, {why}");
                    }
                    None => {}
                }
            }
            Report::Snf(s) => {
                header(&mut out, &s.complex);
                for m in &s.maps {
                    out.push('\n');
                    let _ = writeln!(
                        out,
                        "map {} -> {} ({}x{})",
                        m.degree,
                        m.degree + 1,
                        m.rows,
                        m.cols
                    );
                    let _ = writeln!(out, "  diagonal  {}", list(&m.diagonal));
                    let _ = writeln!(out, "  rank      {}", m.rank);
                    let _ = writeln!(out, "  torsion   {}", list(&m.torsion));
                    if let Some((u, v)) = &m.determinants {
                        let _ = writeln!(out, "  det U     {u}");
                        let _ = writeln!(out, "  det V     {v}");
                    }
                }
            }
            Report::Extend(e) => {
                for l in &e.laurent {
                    let rows: Vec<String> = l.entries.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                    let _ = writeln!(
                        out,
                        "laurent {} -> {}  {}  non-units: {}",
                        l.degree,
                        l.degree + 1,
                        if rows.is_empty() { "[]".into() } else { rows.join(" ") },
                        l.non_units
                    );
                }
                out.push('\n');
                e.homology.write_table(&mut out);
            }
            Report::Examples(x) => match &x.text {
                Some(t) => out.push_str(t),
                None => {
                    for n in &x.names {
                        let _ = writeln!(out, "{n}");
                    }
                }
            },
        }
        out
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
