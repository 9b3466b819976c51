//! Assembly and rendering of the per-run output document. One document type
//! serves every command; sections are filled in by whichever command ran.
//! Rendering is deterministic: identical inputs produce identical bytes in
//! both the text and the structured form.

use std::fmt::Write as _;

use serde::Serialize;

use crate::branching::BranchingSeries;
use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Rational};
use crate::pipeline::Prepared;
use crate::polyrat::{Exp3, RatFun, Var};
use crate::tensorrep::{mckay_dot, TensorMatrices};
use crate::verify::VerifyReport;

#[derive(Serialize, Debug, Clone)]
pub struct GroupSection {
    pub order: u64,
    pub classes: usize,
    pub class_sizes: Vec<u64>,
    pub representative_orders: Vec<u32>,
    pub exponent: u64,
    pub natural_character: Vec<String>,
    /// "enumerated" when built from generators, "table" when loaded.
    pub provenance: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct TableSection {
    pub degrees: Vec<u64>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize, Debug, Clone)]
pub struct TensorSection {
    pub natural: Vec<Vec<i64>>,
    pub exterior: Vec<Vec<i64>>,
    pub dual: Vec<Vec<i64>>,
    pub natural_eigenvalues: Vec<String>,
    pub exterior_eigenvalues: Vec<String>,
    pub dual_eigenvalues: Vec<String>,
    pub quiver_dot: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct TermEntry {
    pub t: u32,
    pub u: u32,
    pub w: u32,
    pub coeff: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct FactorEntry {
    pub factor: String,
    pub multiplicity: u32,
}

#[derive(Serialize, Debug, Clone)]
pub struct CoordinateSection {
    pub index: usize,
    pub degree: u64,
    pub numerator: String,
    pub numerator_terms: Vec<TermEntry>,
    pub denominator_factors: Vec<FactorEntry>,
}

#[derive(Serialize, Debug, Clone)]
pub struct SeriesSection {
    pub coordinates: Vec<CoordinateSection>,
}

#[derive(Serialize, Debug, Clone)]
pub struct SpecializationSection {
    pub assignments: String,
    pub coordinates: Vec<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct MolienSection {
    pub function: String,
    pub series_prefix: Vec<String>,
    pub matches_specialization: Option<bool>,
}

#[derive(Serialize, Debug, Clone)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct VerifySection {
    pub degree: u32,
    pub checks: Vec<CheckEntry>,
    pub all_passed: bool,
}

#[derive(Serialize, Debug, Clone)]
pub struct RunDocument {
    pub tool: String,
    pub command: String,
    pub source: String,
    pub group: GroupSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character_table: Option<TableSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor: Option<TensorSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesSection>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub specializations: Vec<SpecializationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub molien: Option<MolienSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerifySection>,
}

impl RunDocument {
    pub fn new(command: &str, p: &Prepared) -> RunDocument {
        RunDocument {
            tool: format!("branchlaw {}", env!("CARGO_PKG_VERSION")),
            command: command.to_string(),
            source: p.label.clone(),
            group: group_section(p),
            character_table: None,
            tensor: None,
            series: None,
            specializations: Vec::new(),
            molien: None,
            verification: None,
        }
    }
}

pub fn group_section(p: &Prepared) -> GroupSection {
    let c = &p.table.class;
    GroupSection {
        order: c.order,
        classes: c.num_classes(),
        class_sizes: c.class_sizes.clone(),
        representative_orders: c.rep_orders.clone(),
        exponent: c.exponent,
        natural_character: c.natural.iter().map(|v| v.to_string()).collect(),
        provenance: if p.group.is_some() {
            "enumerated".into()
        } else {
            "table".into()
        },
    }
}

pub fn table_section(t: &CharacterTable) -> TableSection {
    TableSection {
        degrees: t.degrees.clone(),
        rows: t
            .values
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect(),
    }
}

pub fn tensor_section(m: &TensorMatrices, degrees: &[u64]) -> TensorSection {
    let strs = |v: &[Cyclotomic]| v.iter().map(|x| x.to_string()).collect();
    TensorSection {
        natural: m.natural.clone(),
        exterior: m.exterior.clone(),
        dual: m.dual.clone(),
        natural_eigenvalues: strs(&m.nat_eigs),
        exterior_eigenvalues: strs(&m.ext_eigs),
        dual_eigenvalues: strs(&m.dual_eigs),
        quiver_dot: mckay_dot(m, degrees),
    }
}

pub fn series_section(s: &BranchingSeries) -> SeriesSection {
    let coordinates = s
        .coords
        .iter()
        .enumerate()
        .map(|(index, f)| CoordinateSection {
            index,
            degree: s.degrees[index],
            numerator: f.num.to_string(),
            numerator_terms: f
                .num
                .terms()
                .map(|(e, c)| TermEntry {
                    t: e.t,
                    u: e.u,
                    w: e.w,
                    coeff: c.to_string(),
                })
                .collect(),
            denominator_factors: f
                .den
                .factors()
                .iter()
                .map(|(factor, multiplicity)| FactorEntry {
                    factor: factor.to_string(),
                    multiplicity: *multiplicity,
                })
                .collect(),
        })
        .collect();
    SeriesSection { coordinates }
}

/// Parse a `--specialize` argument: comma-separated `var=rational`
/// assignments, e.g. `u=0,w=0` or `t=1/2`.
pub fn parse_assignments(text: &str) -> Result<Vec<(Var, Rational)>> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        let Some((name, value)) = piece.split_once('=') else {
            return Err(Error::Parse(format!(
                "specialization '{piece}' is not of the form var=value"
            )));
        };
        let var = match name.trim() {
            "t" => Var::T,
            "u" => Var::U,
            "w" => Var::W,
            other => {
                return Err(Error::Parse(format!(
                    "unknown variable '{other}' (expected t, u, or w)"
                )))
            }
        };
        let value = crate::exactnum::parse::parse_scalar(value.trim())?
            .as_rational()
            .ok_or_else(|| {
                Error::Parse(format!("specialization value in '{piece}' must be rational"))
            })?;
        if out.iter().any(|(v, _)| *v == var) {
            return Err(Error::Parse(format!("variable {var} assigned twice")));
        }
        out.push((var, value));
    }
    if out.is_empty() {
        return Err(Error::Parse("empty specialization".into()));
    }
    Ok(out)
}

pub fn specialization_section(
    s: &BranchingSeries,
    assignments: &[(Var, Rational)],
) -> Result<SpecializationSection> {
    let mut label = String::new();
    for (i, (v, x)) in assignments.iter().enumerate() {
        if i > 0 {
            label.push_str(", ");
        }
        write!(label, "{v}={x}").expect("string write");
    }
    let mut coordinates = Vec::new();
    for f in &s.coords {
        let mut g = f.clone();
        for (v, x) in assignments {
            g = g.specialize(*v, x)?;
        }
        coordinates.push(g.to_string());
    }
    Ok(SpecializationSection {
        assignments: label,
        coordinates,
    })
}

pub fn molien_section(f: &RatFun, matches_specialization: Option<bool>) -> MolienSection {
    let coeffs = f.series_coeffs(8);
    let series_prefix = (0..=8u32)
        .map(|n| {
            coeffs
                .get(&Exp3::new(n, 0, 0))
                .cloned()
                .unwrap_or_else(Cyclotomic::zero)
                .to_string()
        })
        .collect();
    MolienSection {
        function: f.to_string(),
        series_prefix,
        matches_specialization,
    }
}

pub fn verify_section(r: &VerifyReport) -> VerifySection {
    VerifySection {
        degree: r.degree,
        checks: r
            .checks
            .iter()
            .map(|c| CheckEntry {
                name: c.name.to_string(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
        all_passed: r.all_passed(),
    }
}

fn ints<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_text(doc: &RunDocument) -> String {
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "{}", doc.tool).unwrap();
    writeln!(w, "command: {}", doc.command).unwrap();
    writeln!(w, "source: {}", doc.source).unwrap();

    writeln!(w, "\n[group]").unwrap();
    writeln!(w, "order: {}", doc.group.order).unwrap();
    writeln!(w, "classes: {}", doc.group.classes).unwrap();
    writeln!(w, "class sizes: {}", ints(&doc.group.class_sizes)).unwrap();
    writeln!(
        w,
        "representative orders: {}",
        ints(&doc.group.representative_orders)
    )
    .unwrap();
    writeln!(w, "exponent: {}", doc.group.exponent).unwrap();
    writeln!(
        w,
        "natural character: {}",
        ints(&doc.group.natural_character)
    )
    .unwrap();
    writeln!(w, "provenance: {}", doc.group.provenance).unwrap();

    if let Some(t) = &doc.character_table {
        writeln!(w, "\n[character table]").unwrap();
        writeln!(w, "degrees: {}", ints(&t.degrees)).unwrap();
        for (i, row) in t.rows.iter().enumerate() {
            writeln!(w, "chi{i}: {}", ints(row)).unwrap();
        }
    }

    if let Some(m) = &doc.tensor {
        writeln!(w, "\n[tensor matrices]").unwrap();
        for (name, mat) in [
            ("natural", &m.natural),
            ("exterior", &m.exterior),
            ("dual", &m.dual),
        ] {
            writeln!(w, "{name}:").unwrap();
            for row in mat {
                writeln!(w, "  {}", ints(row)).unwrap();
            }
        }
        writeln!(w, "natural eigenvalues: {}", ints(&m.natural_eigenvalues)).unwrap();
        writeln!(
            w,
            "exterior eigenvalues: {}",
            ints(&m.exterior_eigenvalues)
        )
        .unwrap();
        writeln!(w, "dual eigenvalues: {}", ints(&m.dual_eigenvalues)).unwrap();
    }

    if let Some(series) = &doc.series {
        writeln!(w, "\n[series]").unwrap();
        for c in &series.coordinates {
            writeln!(w, "coordinate {} (degree {}):", c.index, c.degree).unwrap();
            writeln!(w, "  numerator: {}", c.numerator).unwrap();
            let den = c
                .denominator_factors
                .iter()
                .map(|f| {
                    if f.multiplicity == 1 {
                        f.factor.clone()
                    } else {
                        format!("{}^{}", f.factor, f.multiplicity)
                    }
                })
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(
                w,
                "  denominator: {}",
                if den.is_empty() { "1" } else { &den }
            )
            .unwrap();
        }
    }

    for sp in &doc.specializations {
        writeln!(w, "\n[specialization {}]", sp.assignments).unwrap();
        for (i, c) in sp.coordinates.iter().enumerate() {
            writeln!(w, "coordinate {i}: {c}").unwrap();
        }
    }

    if let Some(m) = &doc.molien {
        writeln!(w, "\n[molien]").unwrap();
        writeln!(w, "function: {}", m.function).unwrap();
        writeln!(w, "series: {}", ints(&m.series_prefix)).unwrap();
        if let Some(v) = m.matches_specialization {
            writeln!(
                w,
                "matches series specialization: {}",
                if v { "yes" } else { "NO" }
            )
            .unwrap();
        }
    }

    if let Some(v) = &doc.verification {
        writeln!(w, "\n[verification to degree {}]", v.degree).unwrap();
        for c in &v.checks {
            writeln!(
                w,
                "{}: {} ({})",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.detail
            )
            .unwrap();
        }
        writeln!(
            w,
            "result: {}",
            if v.all_passed {
                "all checks passed"
            } else {
                "CHECKS FAILED"
            }
        )
        .unwrap();
    }

    s
}

pub fn render_json(doc: &RunDocument) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)
        .map_err(|e| Error::Internal(format!("document serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}
