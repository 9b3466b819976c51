//! Multiplicity matrices for tensoring the irreducibles with the defining
//! 4-dimensional representation, its exterior square, and its dual.
//!
//! Entry (i, j) of each matrix counts how often irreducible i appears in the
//! product of the corresponding representation with irreducible j. The three
//! matrices commute, the dual matrix is the transpose of the natural one, and
//! every character-table column is a simultaneous eigenvector; all of this is
//! verified exactly on every build.

use std::fmt::Write as _;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::exactnum::{rat, Cyclotomic, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorMatrices {
    /// Tensoring with the defining representation.
    pub natural: Vec<Vec<i64>>,
    /// Tensoring with its exterior square.
    pub exterior: Vec<Vec<i64>>,
    /// Tensoring with its dual.
    pub dual: Vec<Vec<i64>>,
    /// Eigenvalue of `natural` on table column j: conj of the trace at j.
    pub nat_eigs: Vec<Cyclotomic>,
    /// Eigenvalue of `exterior` on table column j.
    pub ext_eigs: Vec<Cyclotomic>,
    /// Eigenvalue of `dual` on table column j: the trace at j.
    pub dual_eigs: Vec<Cyclotomic>,
}

/// Exterior-square character values: half of (trace squared minus the trace
/// at the squared class).
pub fn exterior_character(t: &CharacterTable) -> Vec<Cyclotomic> {
    let chi = &t.class.natural;
    let half = rat(1, 2);
    (0..t.num_classes())
        .map(|k| {
            chi[k]
                .mul(&chi[k])
                .sub(&chi[t.class.power2[k]])
                .scale(&half)
                .descend()
        })
        .collect()
}

/// One multiplicity matrix: entry (i, j) is the inner product of character i
/// with weight * character j. Every entry must be a nonnegative integer.
fn mult_matrix(t: &CharacterTable, weight: &[Cyclotomic], what: &str) -> Result<Vec<Vec<i64>>> {
    let l = t.num_classes();
    let sizes = &t.class.class_sizes;
    let order_inv = Rational::new(1.into(), t.class.order.into());
    let mut out = Vec::with_capacity(l);
    for i in 0..l {
        let conj_i: Vec<Cyclotomic> = (0..l).map(|k| t.values[i][k].conjugate()).collect();
        let mut row = Vec::with_capacity(l);
        for j in 0..l {
            let mut acc = Cyclotomic::zero();
            for k in 0..l {
                let term = conj_i[k]
                    .mul(&weight[k])
                    .mul(&t.values[j][k])
                    .scale(&Rational::from_integer(sizes[k].into()));
                acc = acc.add(&term);
            }
            let acc = acc.scale(&order_inv);
            let m = acc.as_rational().and_then(|r| {
                if r.is_integer() && r >= Rational::from_integer(0.into()) {
                    r.to_integer().try_into().ok()
                } else {
                    None
                }
            });
            let Some(m) = m else {
                return Err(Error::Integrality(format!(
                    "{what} multiplicity ({i}, {j}) = {} is not a nonnegative integer",
                    acc.descend()
                )));
            };
            row.push(m);
        }
        out.push(row);
    }
    Ok(out)
}

fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = m.len();
    (0..l).map(|i| (0..l).map(|j| m[j][i]).collect()).collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = a.len();
    (0..l)
        .map(|i| {
            (0..l)
                .map(|j| (0..l).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Verify the structural facts the three matrices must satisfy.
pub fn structural_checks(m: &TensorMatrices, t: &CharacterTable) -> Result<()> {
    let l = t.num_classes();
    let mut problems = Vec::new();

    if m.dual != transpose(&m.natural) {
        problems.push("dual matrix is not the transpose of the natural matrix".to_string());
    }
    if m.exterior != transpose(&m.exterior) {
        problems.push("exterior matrix is not symmetric".to_string());
    }
    let pairs = [
        ("natural", &m.natural, "exterior", &m.exterior),
        ("natural", &m.natural, "dual", &m.dual),
        ("exterior", &m.exterior, "dual", &m.dual),
    ];
    for (an, a, bn, b) in pairs {
        if mat_mul(a, b) != mat_mul(b, a) {
            problems.push(format!("{an} and {bn} matrices do not commute"));
        }
    }

    // Table column j is an eigenvector of each matrix with its listed
    // eigenvalue.
    let checks = [
        ("natural", &m.natural, &m.nat_eigs),
        ("exterior", &m.exterior, &m.ext_eigs),
        ("dual", &m.dual, &m.dual_eigs),
    ];
    for (name, mat, eigs) in checks {
        'outer: for j in 0..l {
            for i in 0..l {
                let mut acc = Cyclotomic::zero();
                for s in 0..l {
                    acc = acc.add(&t.values[s][j].scale(&Rational::from_integer(mat[i][s].into())));
                }
                let want = eigs[j].mul(&t.values[i][j]);
                if acc != want {
                    problems.push(format!(
                        "table column {j} is not an eigenvector of the {name} matrix"
                    ));
                    continue 'outer;
                }
            }
        }
    }

    // Dimension bookkeeping: tensoring with a d-dimensional representation
    // multiplies dimensions by d.
    for (name, mat, d) in [
        ("natural", &m.natural, 4i64),
        ("exterior", &m.exterior, 6),
        ("dual", &m.dual, 4),
    ] {
        for j in 0..l {
            let total: i64 = (0..l)
                .map(|i| mat[i][j] * t.degrees[i] as i64)
                .sum();
            if total != d * t.degrees[j] as i64 {
                problems.push(format!(
                    "{name} column {j} weights to dimension {total}, expected {}",
                    d * t.degrees[j] as i64
                ));
            }
        }
    }

    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Integrality(problems.join("; ")))
    }
}

/// Build all three multiplicity matrices from a validated table and verify
/// the structural facts.
pub fn build_tensor_matrices(t: &CharacterTable) -> Result<TensorMatrices> {
    let l = t.num_classes();
    let chi = &t.class.natural;
    let ext_char = exterior_character(t);
    let dual_char: Vec<Cyclotomic> = chi.iter().map(|c| c.conjugate()).collect();

    let natural = mult_matrix(t, chi, "natural")?;
    let exterior = mult_matrix(t, &ext_char, "exterior")?;
    let dual = mult_matrix(t, &dual_char, "dual")?;

    let m = TensorMatrices {
        natural,
        exterior,
        dual,
        nat_eigs: (0..l).map(|j| chi[j].conjugate().descend()).collect(),
        ext_eigs: ext_char,
        dual_eigs: chi.clone(),
    };
    structural_checks(&m, t)?;
    Ok(m)
}

/// Directed multigraph of the natural matrix in DOT format: multiplicity
/// (i, j) becomes that many edges j -> i; vertex labels carry the degrees.
pub fn mckay_dot(m: &TensorMatrices, degrees: &[u64]) -> String {
    let l = m.natural.len();
    let mut out = String::from("digraph mckay {\n");
    for (v, d) in degrees.iter().enumerate() {
        let _ = writeln!(out, "  {v} [label=\"{v} (dim {d})\"];");
    }
    for j in 0..l {
        for i in 0..l {
            for _ in 0..m.natural[i][j] {
                let _ = writeln!(out, "  {j} -> {i};");
            }
        }
    }
    out.push_str("}\n");
    out
}
