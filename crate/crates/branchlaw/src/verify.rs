//! The all-in-one check suite: every structural and series-level invariant
//! the library can test, bundled into a report with one line per check.

use crate::branching::{
    compute_series, extract_multiplicities, molien_series, numerator_column, poincare_series,
    BranchingSeries,
};
use crate::chartab::{validate_against_class, validate_table};
use crate::error::Result;
use crate::exactnum::Rational;
use crate::oracle::{cg_table, dimension_check, key_relation_check, schur_table};
use crate::pipeline::Prepared;
use crate::polyrat::Var;
use crate::tensorrep::build_tensor_matrices;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub degree: u32,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub degree: u32,
    pub oracles: bool,
    pub key_relation: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            degree: 5,
            oracles: true,
            key_relation: true,
        }
    }
}

fn record(checks: &mut Vec<CheckResult>, name: &'static str, outcome: Result<String>) {
    match outcome {
        Ok(detail) => checks.push(CheckResult {
            name,
            passed: true,
            detail,
        }),
        Err(e) => checks.push(CheckResult {
            name,
            passed: false,
            detail: e.to_string(),
        }),
    }
}

/// Run every enabled check against an already prepared input. The computed
/// series is returned alongside the report when construction succeeded, so
/// callers can reuse it for output without recomputing.
pub fn run_checks(p: &Prepared, opts: &VerifyOptions) -> (VerifyReport, Option<BranchingSeries>) {
    let n = opts.degree;
    let mut checks = Vec::new();

    record(
        &mut checks,
        "character-table",
        validate_table(&p.table).map(|()| {
            format!(
                "orthogonality relations and degree identities hold for all {} characters",
                p.table.num_classes()
            )
        }),
    );

    if let Some(g) = &p.group {
        record(
            &mut checks,
            "class-consistency",
            validate_against_class(&p.table, &g.class_data()).map(|()| {
                format!(
                    "table class data matches the enumerated group of order {}",
                    g.order()
                )
            }),
        );
    }

    record(
        &mut checks,
        "tensor-structure",
        build_tensor_matrices(&p.table).map(|_| {
            "transpose pairing, symmetry, commutation, and eigenvector identities hold".into()
        }),
    );

    let series = match compute_series(&p.table, &p.matrices) {
        Ok(s) => {
            checks.push(CheckResult {
                name: "series-construction",
                passed: true,
                detail: "all coordinates are rational functions with the required constant terms"
                    .into(),
            });
            Some(s)
        }
        Err(e) => {
            checks.push(CheckResult {
                name: "series-construction",
                passed: false,
                detail: e.to_string(),
            });
            None
        }
    };

    let extraction = series
        .as_ref()
        .map(|s| extract_multiplicities(s, n))
        .transpose()
        .unwrap_or_else(|e| {
            checks.push(CheckResult {
                name: "multiplicity-integrality",
                passed: false,
                detail: e.to_string(),
            });
            None
        });
    if let Some(ext) = &extraction {
        checks.push(CheckResult {
            name: "multiplicity-integrality",
            passed: true,
            detail: format!(
                "all {} series coefficients up to total degree {n} are nonnegative integers",
                ext.data.len() * p.table.num_classes()
            ),
        });

        record(
            &mut checks,
            "dimension-conservation",
            dimension_check(&p.table.degrees, ext).map(|()| {
                format!("weighted multiplicities match the Weyl dimension at every level up to {n}")
            }),
        );
    }

    if opts.oracles {
        let outcome = (|| -> Result<String> {
            let from_cg = cg_table(&p.matrices, n)?;
            let from_schur = schur_table(&p.table, n)?;
            if let Some(k) = from_cg.first_mismatch(&from_schur) {
                return Err(crate::error::Error::Verify(format!(
                    "recurrence and character oracles disagree at {k:?}"
                )));
            }
            if let Some(ext) = &extraction {
                if let Some(k) = ext.first_mismatch(&from_cg) {
                    return Err(crate::error::Error::Verify(format!(
                        "series extraction disagrees with the oracles at {k:?}"
                    )));
                }
            }
            Ok(format!(
                "recurrence, character, and series methods agree on {} weight triples",
                from_cg.data.len()
            ))
        })();
        record(&mut checks, "oracle-agreement", outcome);
    }

    if opts.key_relation {
        let outcome = (|| -> Result<String> {
            let col = numerator_column(&p.matrices);
            let mult = cg_table(&p.matrices, n)?;
            key_relation_check(&p.matrices, &col, &mult, n)?;
            Ok(format!(
                "the operator product maps the series to its polynomial seed on every monomial up to degree {n}"
            ))
        })();
        record(&mut checks, "key-relation", outcome);
    }

    if let Some(s) = &series {
        let outcome = (|| -> Result<String> {
            let zero = Rational::from_integer(0.into());
            let along_t = poincare_series(s)?;
            let along_w = s.coords[0]
                .specialize(Var::U, &zero)?
                .specialize(Var::T, &zero)?
                .rename_var(Var::W, Var::T);
            if !along_t.equal(&along_w) {
                return Err(crate::error::Error::Verify(
                    "trivial coordinate differs between the defining and dual limits".into(),
                ));
            }
            let mol = molien_series(&p.table)?;
            if !mol.equal(&along_t) {
                return Err(crate::error::Error::Verify(
                    "invariant-counting series disagrees with the series specialization".into(),
                ));
            }
            Ok("both one-variable limits and the invariant count give the same function".into())
        })();
        record(&mut checks, "specialization-symmetry", outcome);
    }

    (VerifyReport { degree: n, checks }, series)
}
