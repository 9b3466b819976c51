//! The closed-form multiplicity series.
//!
//! For each irreducible of the group, the generating function of its
//! multiplicities in the restrictions of all SL(4) irreducibles is a rational
//! function in three variables. The numerator data is a polynomial matrix
//! built from the tensor multiplicity matrices; the denominator is a product,
//! over conjugacy classes, of characteristic polynomials of the class
//! representative acting on the defining space (variable t), its dual (w),
//! and its exterior square (u). Diagonalizing over the character basis turns
//! the matrix inverse into one scalar division per class, which is what
//! `compute_series` evaluates exactly.

use std::collections::BTreeMap;

use crate::chartab::{inverse_table, CharacterTable};
use crate::error::{Error, Result};
use crate::exactnum::{rat, Cyclotomic, Rational};
use crate::matgroup::ClassData;
use crate::oracle::{weights_up_to, MultiplicityTable, OracleMethod};
use crate::polyrat::{DenFactor, Exp3, FactoredDen, MultiPoly, RatFun, UniPoly, Var};
use crate::tensorrep::TensorMatrices;

/// The polynomial matrix whose first column seeds the series computation.
/// Entries have degree at most 2 in t, 4 in u, and 2 in w.
pub fn numerator_matrix(m: &TensorMatrices) -> Vec<Vec<MultiPoly>> {
    let l = m.natural.len();
    let one = MultiPoly::one();
    let mono = |t: u32, u: u32, w: u32, c: i64| {
        MultiPoly::monomial(Exp3::new(t, u, w), Cyclotomic::integer(c))
    };

    // scalar coefficient of the identity:
    // (1 - u^2) ((1 + u t^2)(1 + u w^2) - t w (1 + u^2))
    let a = one.sub(&mono(0, 2, 0, 1));
    let b = one
        .add(&mono(2, 1, 0, 1))
        .mul(&one.add(&mono(0, 1, 2, 1)))
        .sub(&mono(1, 0, 1, 1).mul(&one.add(&mono(0, 2, 0, 1))));
    let scalar = a.mul(&b);

    // matrix coefficients
    let c_ext = mono(1, 1, 1, 1).mul(&a);
    let c_nat = mono(1, 2, 0, 1)
        .mul(&one.add(&mono(0, 1, 2, 1)))
        .sub(&mono(0, 1, 1, 1).mul(&one.add(&mono(2, 1, 0, 1))));
    let c_dual = mono(0, 2, 1, 1)
        .mul(&one.add(&mono(2, 1, 0, 1)))
        .sub(&mono(1, 1, 0, 1).mul(&one.add(&mono(0, 1, 2, 1))));

    let mut out = vec![vec![MultiPoly::zero(); l]; l];
    for i in 0..l {
        for j in 0..l {
            let mut entry = MultiPoly::zero();
            if i == j {
                entry = entry.add(&scalar);
            }
            if m.exterior[i][j] != 0 {
                entry = entry.add(&c_ext.scale(&Cyclotomic::integer(m.exterior[i][j])));
            }
            if m.natural[i][j] != 0 {
                entry = entry.add(&c_nat.scale(&Cyclotomic::integer(m.natural[i][j])));
            }
            if m.dual[i][j] != 0 {
                entry = entry.add(&c_dual.scale(&Cyclotomic::integer(m.dual[i][j])));
            }
            debug_assert!(
                entry.degree_in(Var::T) <= 2
                    && entry.degree_in(Var::U) <= 4
                    && entry.degree_in(Var::W) <= 2
            );
            out[i][j] = entry;
        }
    }
    out
}

/// First column of the numerator matrix.
pub fn numerator_column(m: &TensorMatrices) -> Vec<MultiPoly> {
    numerator_matrix(m).into_iter().map(|mut row| row.swap_remove(0)).collect()
}

/// Split a polynomial with constant coefficient 1 into linear factors
/// (1 - root x) whose roots are `ord`-th roots of unity, by deterministic
/// repeated deflation. Returns None if a non-trivial remainder survives.
fn split_over_roots(poly: &UniPoly, ord: u32) -> Option<Vec<(Cyclotomic, u32)>> {
    let mut remaining = poly.clone();
    let mut factors = Vec::new();
    for k in 0..ord {
        let root = Cyclotomic::zeta_pow(ord as u64, k as i64).ok()?;
        let mut mult = 0u32;
        while let Some(q) = remaining.deflate_linear(&root) {
            remaining = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((root, mult));
        }
        if remaining.degree() == 0 {
            break;
        }
    }
    if remaining.degree() == 0 && remaining.coeffs[0].is_one() {
        Some(factors)
    } else {
        None
    }
}

/// Exterior-square character value of one class from the stored class data.
fn exterior_value(class: &ClassData, j: usize) -> Cyclotomic {
    let chi = &class.natural;
    chi[j]
        .mul(&chi[j])
        .sub(&chi[class.power2[j]])
        .scale(&rat(1, 2))
        .descend()
}

/// Denominator contributed by one conjugacy class: the characteristic
/// polynomials of the representative inverse acting on the defining space
/// (variable t), of the representative itself (w), and of its exterior
/// square (u), each split into linear factors over the roots of unity of the
/// representative's order. The two quartics must split; the degree-6 factor
/// is kept whole in the exceptional case where splitting fails.
pub fn class_denominator(class: &ClassData, j: usize) -> Result<FactoredDen> {
    let d3 = class.natural[j].clone();
    let d1 = d3.conjugate();
    let d2 = exterior_value(class, j);
    let ord = class.rep_orders[j];
    let one = Cyclotomic::one();

    let t_quartic = UniPoly::new(
        Var::T,
        vec![one.clone(), d1.neg(), d2.clone(), d3.neg(), one.clone()],
    );
    let w_quartic = UniPoly::new(
        Var::W,
        vec![one.clone(), d3.neg(), d2.clone(), d1.neg(), one.clone()],
    );
    // det(1 - u M) for the 6-dimensional exterior-square action, expressed in
    // the three scalars:
    // (1+u^2)(1-u^2)^2 - u (1-u^2)^2 d2 + u^2 (d1 - u d3)(d3 - u d1)
    let d13 = d1.mul(&d3);
    let u_sextic = UniPoly::new(
        Var::U,
        vec![
            one.clone(),
            d2.neg(),
            d13.sub(&one),
            d2.add(&d2).sub(&d1.mul(&d1)).sub(&d3.mul(&d3)),
            d13.sub(&one),
            d2.neg(),
            one.clone(),
        ],
    );

    let mut den = FactoredDen::one();
    for (poly, what) in [(&t_quartic, "defining"), (&w_quartic, "dual")] {
        let Some(factors) = split_over_roots(poly, ord) else {
            return Err(Error::Split(format!(
                "{what} characteristic polynomial of class {j} does not split over the order-{ord} roots of unity"
            )));
        };
        for (root, mult) in factors {
            den.push(DenFactor::linear(poly.var, &root), mult);
        }
    }
    match split_over_roots(&u_sextic, ord) {
        Some(factors) => {
            for (root, mult) in factors {
                den.push(DenFactor::linear(Var::U, &root), mult);
            }
        }
        None => den.push(DenFactor::new(u_sextic)?, 1),
    }
    Ok(den)
}

/// The multiplicity generating series of every irreducible, as exact rational
/// functions of t (defining direction), u (exterior square direction), and w
/// (dual direction).
#[derive(Debug, Clone)]
pub struct BranchingSeries {
    pub source: String,
    pub degrees: Vec<u64>,
    pub coords: Vec<RatFun>,
}

pub fn compute_series(t: &CharacterTable, m: &TensorMatrices) -> Result<BranchingSeries> {
    let l = t.num_classes();
    let y = numerator_column(m);
    let t_inv = inverse_table(t);

    // coordinates in the eigenbasis: z_j = sum_k Tinv[j][k] y_k
    let z: Vec<MultiPoly> = (0..l)
        .map(|j| {
            let mut acc = MultiPoly::zero();
            for (k, yk) in y.iter().enumerate() {
                if !t_inv[j][k].is_zero() {
                    acc = acc.add(&yk.scale(&t_inv[j][k]));
                }
            }
            acc
        })
        .collect();

    let dens: Vec<FactoredDen> = (0..l)
        .map(|j| class_denominator(&t.class, j))
        .collect::<Result<_>>()?;
    let mut common = FactoredDen::one();
    for d in &dens {
        common = common.lcm(d);
    }

    // back to multiplicity coordinates over the common denominator
    let mut nums: Vec<MultiPoly> = vec![MultiPoly::zero(); l];
    for j in 0..l {
        if z[j].is_zero() {
            continue;
        }
        let complement = common.quotient(&dens[j]).expand();
        let prod = z[j].mul(&complement);
        for i in 0..l {
            let coeff = &t.values[i][j];
            if !coeff.is_zero() {
                nums[i] = nums[i].add(&prod.scale(coeff));
            }
        }
    }

    // the sum over classes must already be rational, before any cancellation
    for (i, num) in nums.iter().enumerate() {
        if num.rational_coeffs().is_none() {
            return Err(Error::Rationality(format!(
                "coordinate {i} has an irrational numerator coefficient before cancellation"
            )));
        }
    }

    let coords: Vec<RatFun> = nums
        .into_iter()
        .map(|n| RatFun::new(n, common.clone()).cancel())
        .collect();

    for (i, c) in coords.iter().enumerate() {
        if c.num.rational_coeffs().is_none() {
            return Err(Error::Rationality(format!(
                "coordinate {i} lost rationality during cancellation"
            )));
        }
        let c0 = c
            .series_coeffs(0)
            .get(&Exp3::ZERO)
            .cloned()
            .unwrap_or_else(Cyclotomic::zero);
        let want = if i == 0 {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        };
        if c0 != want {
            return Err(Error::Internal(format!(
                "coordinate {i} has constant term {}, expected {}",
                c0.descend(),
                want
            )));
        }
    }

    Ok(BranchingSeries {
        source: t.class.source.clone(),
        degrees: t.degrees.clone(),
        coords,
    })
}

/// Trivial-coordinate series with the exterior-square and dual directions
/// switched off.
pub fn poincare_series(s: &BranchingSeries) -> Result<RatFun> {
    let zero = Rational::from_integer(0.into());
    s.coords[0]
        .specialize(Var::U, &zero)?
        .specialize(Var::W, &zero)
}

/// Invariant-counting series of the defining action, computed from the
/// character table alone: average of 1/det(1 - t g) over the group.
pub fn molien_series(t: &CharacterTable) -> Result<RatFun> {
    let class = &t.class;
    let l = class.num_classes();
    let mut acc = RatFun::zero();
    let one = Cyclotomic::one();
    for j in 0..l {
        let d3 = class.natural[j].clone();
        let d1 = d3.conjugate();
        let d2 = exterior_value(class, j);
        let quartic = UniPoly::new(
            Var::T,
            vec![one.clone(), d3.neg(), d2, d1.neg(), one.clone()],
        );
        let Some(factors) = split_over_roots(&quartic, class.rep_orders[j]) else {
            return Err(Error::Split(format!(
                "characteristic polynomial of class {j} does not split"
            )));
        };
        let mut den = FactoredDen::one();
        for (root, mult) in factors {
            den.push(DenFactor::linear(Var::T, &root), mult);
        }
        let weight = Cyclotomic::from_rational(Rational::new(
            class.class_sizes[j].into(),
            class.order.into(),
        ));
        acc = acc.add(&RatFun::new(MultiPoly::constant(weight), den));
    }
    if acc.num.rational_coeffs().is_none() {
        return Err(Error::Rationality(
            "invariant series has irrational coefficients".into(),
        ));
    }
    Ok(acc)
}

/// Multiplicity table read off the computed series; every coefficient must
/// be a nonnegative integer.
pub fn extract_multiplicities(s: &BranchingSeries, n: u32) -> Result<MultiplicityTable> {
    let l = s.coords.len();
    let mut data: BTreeMap<(u32, u32, u32), Vec<i64>> = weights_up_to(n)
        .into_iter()
        .map(|k| (k, vec![0i64; l]))
        .collect();
    for (i, c) in s.coords.iter().enumerate() {
        for (e, v) in c.series_coeffs(n) {
            let m = v.as_rational().and_then(|r| {
                if r.is_integer() && r >= Rational::from_integer(0.into()) {
                    r.to_integer().try_into().ok()
                } else {
                    None
                }
            });
            let Some(m) = m else {
                return Err(Error::Rationality(format!(
                    "series coefficient of coordinate {i} at t^{} u^{} w^{} is {}, not a nonnegative integer",
                    e.t,
                    e.u,
                    e.w,
                    v.descend()
                )));
            };
            data.get_mut(&(e.t, e.u, e.w)).expect("within level cap")[i] = m;
        }
    }
    Ok(MultiplicityTable {
        method: OracleMethod::SeriesExtraction,
        max_level: n,
        data,
    })
}
