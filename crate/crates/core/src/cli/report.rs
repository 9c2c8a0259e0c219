//! The report document shared by the JSON and table renderers.

use std::fmt::Write as _;

use serde::Serialize;

use crate::series::{format_rational, Monomial, MultiPoly, QMatrix, Rational, SeriesMatrix, TruncatedSeries, Vars};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesJson {
    /// `null` for the zero series.
    pub valuation: Option<i64>,
    pub coefficients: Vec<String>,
    pub precision: i64,
}

impl From<&TruncatedSeries> for SeriesJson {
    fn from(s: &TruncatedSeries) -> Self {
        SeriesJson {
            valuation: s.valuation(),
            coefficients: s.dense_coeffs().iter().map(format_rational).collect(),
            precision: s.precision(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectionJson {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<SeriesJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Precisions {
    pub prec_s: i64,
    pub prec_x: u32,
    pub prec_t: i64,
    /// Degree bound actually used by the reduction loop.
    pub working_degree: u32,
}

/// Output document. Absent fields are omitted from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub mu: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_matrix: Option<Vec<Vec<SeriesJson>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<ConnectionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotations: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a0: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotent_a0: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    pub precisions: Precisions,
}

pub fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn qmatrix(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| rationals(m.row(i))).collect()
}

pub fn series_matrix(m: &SeriesMatrix) -> Vec<Vec<SeriesJson>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| SeriesJson::from(m.get(i, j))).collect()).collect()
}

pub fn monomial_label(vars: &Vars, m: &Monomial) -> String {
    MultiPoly::term(vars.clone(), m.clone(), Rational::from_integer(1.into())).to_string()
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned two-column rendering of the same content.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![("mu".into(), self.mu.to_string())];
        let list = |v: &[String]| format!("[{}]", v.join(", "));
        if let Some(b) = &self.basis {
            rows.push(("basis".into(), list(b)));
        }
        if let Some(w) = &self.weights {
            rows.push(("weights".into(), list(w)));
        }
        if let Some(t) = &self.t_matrix {
            push_matrix(&mut rows, "t_matrix", t.iter().map(|r| r.iter().map(|s| series_text(s, 's')).collect()).collect());
        }
        if let Some(c) = &self.connection {
            rows.push(("connection.labels".into(), list(&c.labels)));
            push_matrix(&mut rows, "connection", c.matrix.iter().map(|r| r.iter().map(|s| series_text(s, 't')).collect()).collect());
        }
        if let Some(e) = &self.exponents {
            rows.push(("exponents".into(), list(e)));
        }
        if let Some(r) = &self.residues {
            rows.push(("residues".into(), list(r)));
        }
        if let Some(r) = &self.rotations {
            rows.push(("rotations".into(), list(r)));
        }
        if let Some(a) = &self.a0 {
            push_matrix(&mut rows, "a0", a.clone());
        }
        if let Some(a) = &self.a1 {
            push_matrix(&mut rows, "a1", a.clone());
        }
        if let Some(n) = self.nilpotent_a0 {
            rows.push(("nilpotent_a0".into(), n.to_string()));
        }
        if let Some(v) = &self.verdict {
            rows.push(("verdict".into(), v.clone()));
        }
        let p = &self.precisions;
        rows.push((
            "precisions".into(),
            format!("prec_s={} prec_x={} prec_t={} working_degree={}", p.prec_s, p.prec_x, p.prec_t, p.working_degree),
        ));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        out
    }
}

fn push_matrix(rows: &mut Vec<(String, String)>, name: &str, cells: Vec<Vec<String>>) {
    let ncols = cells.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..ncols).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
    for (i, r) in cells.iter().enumerate() {
        let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        rows.push((format!("{name}[{i}]"), line.join("  ")));
    }
}

/// Human-readable series from its serialized form.
pub fn series_text(s: &SeriesJson, var: char) -> String {
    let mut terms = Vec::new();
    if let Some(v) = s.valuation {
        for (i, c) in s.coefficients.iter().enumerate() {
            if c == "0" {
                continue;
            }
            let k = v + i as i64;
            let power = match k {
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            terms.push(match (k, c.as_str()) {
                (0, _) => c.clone(),
                (_, "1") => power,
                (_, "-1") => format!("-{power}"),
                _ => format!("{c}*{power}"),
            });
        }
    }
    terms.push(format!("O({var}^{})", s.precision));
    terms.join(" + ")
}
