//! Independent oracles for the multiplicity series.
//!
//! Two brute-force paths compute, for each highest weight (p, q, r), the
//! multiplicities of the group's irreducibles in the restriction of the
//! corresponding SL(4) representation:
//!
//! * `cg_table` walks the lattice of highest weights with the tensor
//!   decomposition recurrences, never touching characters;
//! * `schur_table` evaluates each restricted character directly through the
//!   determinant formula in complete homogeneous symmetric functions and
//!   decomposes it by orthogonality.
//!
//! They share no code with the rational-function pipeline, so three-way
//! agreement is strong evidence of correctness. `key_relation_check` verifies
//! the defining operator identity the closed form is derived from, directly
//! on truncated series.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Rational};
use crate::matgroup::Mat4;
use crate::polyrat::{Exp3, MultiPoly};
use crate::tensorrep::{exterior_character, TensorMatrices};

/// Dimension of the SL(4) irreducible with highest weight (p, q, r) in
/// fundamental-weight coordinates.
pub fn weyl_dim(p: u32, q: u32, r: u32) -> u64 {
    let (p, q, r) = (p as u64, q as u64, r as u64);
    (p + 1)
        * (q + 1)
        * (r + 1)
        * (p + q + 2)
        * (q + r + 2)
        * (p + q + r + 3)
        / 12
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    CgRecurrence,
    SchurCharacter,
    SeriesExtraction,
}

/// Multiplicity vectors indexed by highest weight, for all total levels
/// p + q + r up to `max_level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub method: OracleMethod,
    pub max_level: u32,
    pub data: BTreeMap<(u32, u32, u32), Vec<i64>>,
}

impl MultiplicityTable {
    pub fn get(&self, p: u32, q: u32, r: u32) -> Option<&Vec<i64>> {
        self.data.get(&(p, q, r))
    }

    /// First weight where the two tables disagree (or only one is defined).
    pub fn first_mismatch(&self, other: &Self) -> Option<(u32, u32, u32)> {
        let keys: std::collections::BTreeSet<_> =
            self.data.keys().chain(other.data.keys()).copied().collect();
        keys.into_iter()
            .find(|k| self.data.get(k) != other.data.get(k))
    }
}

/// All weights with p + q + r <= n, in lexicographic order.
pub fn weights_up_to(n: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for p in 0..=n {
        for q in 0..=(n - p) {
            for r in 0..=(n - p - q) {
                out.push((p, q, r));
            }
        }
    }
    out.sort_unstable();
    out
}

fn mat_apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    (0..m.len())
        .map(|i| (0..v.len()).map(|j| m[i][j] * v[j]).sum())
        .collect()
}

fn vec_sub(a: &mut [i64], b: Option<&Vec<i64>>) {
    if let Some(b) = b {
        for (x, y) in a.iter_mut().zip(b) {
            *x -= y;
        }
    }
}

/// Multiplicities by the tensor decomposition recurrences, walking levels
/// upward from the trivial weight. Any negative entry is a hard error: these
/// are multiplicities of representations.
pub fn cg_table(m: &TensorMatrices, n: u32) -> Result<MultiplicityTable> {
    let l = m.natural.len();
    let mut data: BTreeMap<(u32, u32, u32), Vec<i64>> = BTreeMap::new();
    let mut e0 = vec![0i64; l];
    e0[0] = 1;
    data.insert((0, 0, 0), e0);

    let at = |data: &BTreeMap<(u32, u32, u32), Vec<i64>>,
              p: i64,
              q: i64,
              r: i64|
     -> Option<Vec<i64>> {
        if p < 0 || q < 0 || r < 0 {
            return None;
        }
        Some(
            data.get(&(p as u32, q as u32, r as u32))
                .expect("recurrence touched an unfilled weight")
                .clone(),
        )
    };

    let check = |v: &[i64], p: u32, q: u32, r: u32| -> Result<()> {
        if v.iter().any(|&x| x < 0) {
            return Err(Error::Oracle(format!(
                "recurrence produced a negative multiplicity at weight ({p}, {q}, {r})"
            )));
        }
        Ok(())
    };

    for level in 1..=n {
        // raising p: the new value at (p, q, r) with p >= 1 comes from
        // tensoring (p-1, q, r) with the defining representation
        for p in 1..=level {
            let (pp, rest) = (p, level - p);
            for q in 0..=rest {
                let r = rest - q;
                let (p0, q0, r0) = (pp as i64 - 1, q as i64, r as i64);
                let mut v = mat_apply(&m.natural, &at(&data, p0, q0, r0).unwrap());
                vec_sub(&mut v, at(&data, p0, q0, r0 - 1).as_ref());
                vec_sub(&mut v, at(&data, p0 - 1, q0 + 1, r0).as_ref());
                vec_sub(&mut v, at(&data, p0, q0 - 1, r0 + 1).as_ref());
                check(&v, pp, q, r)?;
                data.insert((pp, q, r), v);
            }
        }
        // raising r on the p = 0 wall, from the dual representation
        for r in 1..=level {
            let q = level - r;
            let (q0, r0) = (q as i64, r as i64 - 1);
            let mut v = mat_apply(&m.dual, &at(&data, 0, q0, r0).unwrap());
            vec_sub(&mut v, at(&data, 0, q0 + 1, r0 - 1).as_ref());
            vec_sub(&mut v, at(&data, 1, q0 - 1, r0).as_ref());
            check(&v, 0, q, r)?;
            data.insert((0, q, r), v);
        }
        // raising q on the axis, from the exterior square; this needs the
        // level-`level` value at (1, level-2, 1) already filled above
        {
            let q = level;
            let q0 = q as i64 - 1;
            let mut v = mat_apply(&m.exterior, &at(&data, 0, q0, 0).unwrap());
            vec_sub(&mut v, at(&data, 0, q0 - 1, 0).as_ref());
            vec_sub(&mut v, at(&data, 1, q0 - 1, 1).as_ref());
            check(&v, 0, q, 0)?;
            data.insert((0, q, 0), v);
        }
    }

    Ok(MultiplicityTable {
        method: OracleMethod::CgRecurrence,
        max_level: n,
        data,
    })
}

/// Complete homogeneous symmetric function values h_0..h_max of each class
/// representative's eigenvalues, from the 4-term recurrence driven by the
/// characteristic polynomial (unit determinant).
fn homogeneous_values(t: &CharacterTable, max: usize) -> Vec<Vec<Cyclotomic>> {
    let l = t.num_classes();
    let chi = &t.class.natural;
    let ext = exterior_character(t);
    let dual: Vec<Cyclotomic> = chi.iter().map(|c| c.conjugate()).collect();
    let mut h: Vec<Vec<Cyclotomic>> = Vec::with_capacity(max + 1);
    h.push(vec![Cyclotomic::one(); l]);
    for n in 1..=max {
        let mut row = Vec::with_capacity(l);
        for k in 0..l {
            let mut acc = chi[k].mul(&h[n - 1][k]);
            if n >= 2 {
                acc = acc.sub(&ext[k].mul(&h[n - 2][k]));
            }
            if n >= 3 {
                acc = acc.add(&dual[k].mul(&h[n - 3][k]));
            }
            if n >= 4 {
                acc = acc.sub(&h[n - 4][k]);
            }
            row.push(acc);
        }
        h.push(row);
    }
    h
}

/// Restricted character of the SL(4) irreducible with highest weight
/// (p, q, r): a 4x4 determinant in the h-values, evaluated per class.
fn schur_character(
    h: &[Vec<Cyclotomic>],
    l: usize,
    p: u32,
    q: u32,
    r: u32,
) -> Vec<Cyclotomic> {
    let lambda = [
        (p + q + r) as i64,
        (q + r) as i64,
        r as i64,
        0,
    ];
    (0..l)
        .map(|k| {
            let mut entries = Vec::with_capacity(16);
            for a in 0..4i64 {
                for b in 0..4i64 {
                    let idx = lambda[a as usize] - (a + 1) + (b + 1);
                    let val = if idx < 0 {
                        Cyclotomic::zero()
                    } else {
                        h[idx as usize][k].clone()
                    };
                    entries.push(val);
                }
            }
            Mat4::from_entries(entries).unwrap().det()
        })
        .collect()
}

/// Decompose a class function into irreducible multiplicities; every
/// coefficient must be a nonnegative integer.
fn decompose(t: &CharacterTable, f: &[Cyclotomic], what: &str) -> Result<Vec<i64>> {
    let l = t.num_classes();
    let order_inv = Rational::new(1.into(), t.class.order.into());
    let mut out = Vec::with_capacity(l);
    for s in 0..l {
        let mut acc = Cyclotomic::zero();
        for k in 0..l {
            let term = f[k]
                .mul(&t.values[s][k].conjugate())
                .scale(&Rational::from_integer(t.class.class_sizes[k].into()));
            acc = acc.add(&term);
        }
        let acc = acc.scale(&order_inv);
        let m = acc.as_rational().and_then(|x| {
            if x.is_integer() && x >= Rational::from_integer(0.into()) {
                x.to_integer().try_into().ok()
            } else {
                None
            }
        });
        let Some(m) = m else {
            return Err(Error::Oracle(format!(
                "{what}: multiplicity of irreducible {s} is {}, not a nonnegative integer",
                acc.descend()
            )));
        };
        out.push(m);
    }
    Ok(out)
}

/// Multiplicities by direct character computation, one weight at a time.
pub fn schur_table(t: &CharacterTable, n: u32) -> Result<MultiplicityTable> {
    let l = t.num_classes();
    let h = homogeneous_values(t, n as usize + 3);
    let weights = weights_up_to(n);
    let rows: Vec<Result<((u32, u32, u32), Vec<i64>)>> = weights
        .par_iter()
        .map(|&(p, q, r)| {
            let chi = schur_character(&h, l, p, q, r);
            let m = decompose(t, &chi, &format!("character at weight ({p}, {q}, {r})"))?;
            Ok(((p, q, r), m))
        })
        .collect();
    let mut data = BTreeMap::new();
    for row in rows {
        let (k, v) = row?;
        data.insert(k, v);
    }
    Ok(MultiplicityTable {
        method: OracleMethod::SchurCharacter,
        max_level: n,
        data,
    })
}

/// Weighted dimension conservation: for every stored weight, the multiplicity
/// vector weighted by the irreducible degrees recovers the full dimension.
pub fn dimension_check(degrees: &[u64], mult: &MultiplicityTable) -> Result<()> {
    for (&(p, q, r), v) in &mult.data {
        let total: i64 = v
            .iter()
            .zip(degrees)
            .map(|(m, d)| m * *d as i64)
            .sum();
        let want = weyl_dim(p, q, r) as i64;
        if total != want {
            return Err(Error::Oracle(format!(
                "weight ({p}, {q}, {r}): multiplicities weight to dimension {total}, expected {want}"
            )));
        }
    }
    Ok(())
}

/// Polynomial with vector coefficients, used for the operator identity.
pub type VecPoly = BTreeMap<Exp3, Vec<i64>>;

fn scaled_identity(l: usize, c: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; l]; l];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c;
    }
    m
}

fn mat_add(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

fn mat_scale(a: &[Vec<i64>], c: i64) -> Vec<Vec<i64>> {
    a.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
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

/// One matrix-coefficient polynomial operator: sum of monomial shifts times
/// constant integer matrices.
struct MatOperator {
    terms: Vec<(Exp3, Vec<Vec<i64>>)>,
}

impl MatOperator {
    /// Apply to a vector polynomial, dropping monomials above `cap` total
    /// degree.
    fn apply(&self, f: &VecPoly, cap: u32) -> VecPoly {
        let mut out = VecPoly::new();
        for (shift, mat) in &self.terms {
            for (e, v) in f {
                let ne = Exp3::new(e.t + shift.t, e.u + shift.u, e.w + shift.w);
                if ne.total() > cap {
                    continue;
                }
                let mv = mat_apply(mat, v);
                match out.entry(ne) {
                    std::collections::btree_map::Entry::Vacant(slot) => {
                        slot.insert(mv);
                    }
                    std::collections::btree_map::Entry::Occupied(mut slot) => {
                        for (x, y) in slot.get_mut().iter_mut().zip(&mv) {
                            *x += y;
                        }
                    }
                }
            }
        }
        out.retain(|_, v| v.iter().any(|&x| x != 0));
        out
    }
}

/// The three annihilating operators whose product maps the multiplicity
/// series to a polynomial vector.
fn operators(m: &TensorMatrices) -> [MatOperator; 3] {
    let l = m.natural.len();
    let id = |c: i64| scaled_identity(l, c);
    let e = |t: u32, u: u32, w: u32| Exp3::new(t, u, w);

    // 1 - t A1 + t^2 A2 - t^3 A3 + t^4
    let op_t = MatOperator {
        terms: vec![
            (e(0, 0, 0), id(1)),
            (e(1, 0, 0), mat_scale(&m.natural, -1)),
            (e(2, 0, 0), m.exterior.clone()),
            (e(3, 0, 0), mat_scale(&m.dual, -1)),
            (e(4, 0, 0), id(1)),
        ],
    };
    // 1 - w A3 + w^2 A2 - w^3 A1 + w^4
    let op_w = MatOperator {
        terms: vec![
            (e(0, 0, 0), id(1)),
            (e(0, 0, 1), mat_scale(&m.dual, -1)),
            (e(0, 0, 2), m.exterior.clone()),
            (e(0, 0, 3), mat_scale(&m.natural, -1)),
            (e(0, 0, 4), id(1)),
        ],
    };
    // (1+u^2)(1-u^2)^2 - u (1-u^2)^2 A2 + u^2 (A1 - u A3)(A3 - u A1)
    // expanded by u-degree, using that A1 and A3 commute:
    //   u^0: I
    //   u^1: -A2
    //   u^2: -I + A1 A3
    //   u^3: 2 A2 - A1^2 - A3^2
    //   u^4: -I + A1 A3
    //   u^5: -A2
    //   u^6: I
    let a13 = mat_mul(&m.natural, &m.dual);
    let a11 = mat_mul(&m.natural, &m.natural);
    let a33 = mat_mul(&m.dual, &m.dual);
    let deg2 = mat_add(&id(-1), &a13);
    let deg3 = mat_add(&mat_scale(&m.exterior, 2), &mat_scale(&mat_add(&a11, &a33), -1));
    let op_u = MatOperator {
        terms: vec![
            (e(0, 0, 0), id(1)),
            (e(0, 1, 0), mat_scale(&m.exterior, -1)),
            (e(0, 2, 0), deg2.clone()),
            (e(0, 3, 0), deg3),
            (e(0, 4, 0), deg2),
            (e(0, 5, 0), mat_scale(&m.exterior, -1)),
            (e(0, 6, 0), id(1)),
        ],
    };
    [op_t, op_u, op_w]
}

/// Verify that applying the three operators to the multiplicity series gives
/// exactly the given polynomial vector, on every monomial of total degree at
/// most n. `mult` must cover all levels up to n; `j_col` is the expected
/// polynomial image (integer coefficients).
pub fn key_relation_check(
    m: &TensorMatrices,
    j_col: &[MultiPoly],
    mult: &MultiplicityTable,
    n: u32,
) -> Result<()> {
    if mult.max_level < n {
        return Err(Error::KeyRelation(format!(
            "multiplicity table covers levels up to {}, need {n}",
            mult.max_level
        )));
    }
    let l = m.natural.len();

    let mut series = VecPoly::new();
    for (&(p, q, r), v) in &mult.data {
        if p + q + r <= n {
            series.insert(Exp3::new(p, q, r), v.clone());
        }
    }

    let [op_t, op_u, op_w] = operators(m);
    let image = op_t.apply(&op_u.apply(&op_w.apply(&series, n), n), n);

    let mut expected = VecPoly::new();
    for (i, poly) in j_col.iter().enumerate() {
        for (e, c) in poly.terms() {
            if e.total() > n {
                continue;
            }
            let c = c
                .as_rational()
                .filter(|r| r.is_integer())
                .and_then(|r| r.to_integer().try_into().ok())
                .ok_or_else(|| {
                    Error::KeyRelation(format!(
                        "expected polynomial has a non-integer coefficient at {e:?}"
                    ))
                })?;
            expected
                .entry(*e)
                .or_insert_with(|| vec![0i64; l])[i] = c;
        }
    }
    expected.retain(|_, v| v.iter().any(|&x| x != 0));

    let keys: std::collections::BTreeSet<Exp3> =
        image.keys().chain(expected.keys()).copied().collect();
    let zero = vec![0i64; l];
    for e in keys {
        let got = image.get(&e).unwrap_or(&zero);
        let want = expected.get(&e).unwrap_or(&zero);
        if got != want {
            return Err(Error::KeyRelation(format!(
                "operator identity fails at monomial t^{} u^{} w^{}: image {:?}, expected {:?}",
                e.t, e.u, e.w, got, want
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::dixon_table;
    use crate::matgroup::builtin;
    use crate::tensorrep::build_tensor_matrices;

    #[test]
    fn weyl_dim_small_values() {
        assert_eq!(weyl_dim(0, 0, 0), 1);
        assert_eq!(weyl_dim(1, 0, 0), 4);
        assert_eq!(weyl_dim(0, 1, 0), 6);
        assert_eq!(weyl_dim(0, 0, 1), 4);
        assert_eq!(weyl_dim(2, 0, 0), 10);
        assert_eq!(weyl_dim(1, 0, 1), 15);
        assert_eq!(weyl_dim(1, 1, 1), 64);
        assert_eq!(weyl_dim(0, 2, 0), 20);
    }

    #[test]
    fn dimension_recurrences() {
        let d = |p: i64, q: i64, r: i64| -> u64 {
            if p < 0 || q < 0 || r < 0 {
                0
            } else {
                weyl_dim(p as u32, q as u32, r as u32)
            }
        };
        for p in 0..=6i64 {
            for q in 0..=6i64 {
                for r in 0..=6i64 {
                    assert_eq!(
                        4 * d(p, q, r),
                        d(p + 1, q, r) + d(p, q, r - 1) + d(p - 1, q + 1, r) + d(p, q - 1, r + 1),
                        "defining tensor at ({p},{q},{r})"
                    );
                }
            }
        }
        for q in 0..=6i64 {
            for r in 0..=6i64 {
                assert_eq!(
                    4 * d(0, q, r),
                    d(0, q, r + 1) + d(0, q + 1, r - 1) + d(1, q - 1, r),
                    "dual tensor at (0,{q},{r})"
                );
            }
            assert_eq!(
                6 * d(0, q, 0),
                d(0, q + 1, 0) + d(0, q - 1, 0) + d(1, q - 1, 1),
                "exterior tensor at (0,{q},0)"
            );
        }
    }

    #[test]
    fn trivial_group_recurrence_gives_dimensions() {
        let t = dixon_table(&builtin("trivial").unwrap()).unwrap();
        let m = build_tensor_matrices(&t).unwrap();
        let table = cg_table(&m, 6).unwrap();
        for (&(p, q, r), v) in &table.data {
            assert_eq!(v.len(), 1);
            assert_eq!(v[0] as u64, weyl_dim(p, q, r), "at ({p},{q},{r})");
        }
    }

    #[test]
    fn schur_low_weights_match_defining_characters() {
        let t = dixon_table(&builtin("typeII").unwrap()).unwrap();
        let l = t.num_classes();
        let h = homogeneous_values(&t, 8);
        let chi100 = schur_character(&h, l, 1, 0, 0);
        for k in 0..l {
            assert_eq!(chi100[k].descend(), t.class.natural[k]);
        }
        let chi001 = schur_character(&h, l, 0, 0, 1);
        for k in 0..l {
            assert_eq!(chi001[k].descend(), t.class.natural[k].conjugate().descend());
        }
        let chi010 = schur_character(&h, l, 0, 1, 0);
        let ext = exterior_character(&t);
        for k in 0..l {
            assert_eq!(chi010[k].descend(), ext[k]);
        }
    }

    #[test]
    fn oracles_agree_and_conserve_dimension() {
        for name in ["trivial", "cyclic4", "typeII"] {
            let t = dixon_table(&builtin(name).unwrap()).unwrap();
            let m = build_tensor_matrices(&t).unwrap();
            let a = cg_table(&m, 4).unwrap();
            let b = schur_table(&t, 4).unwrap();
            assert_eq!(a.first_mismatch(&b), None, "oracles disagree for {name}");
            dimension_check(&t.degrees, &a).unwrap();
        }
    }

    #[test]
    fn recurrence_rejects_inconsistent_matrices() {
        let t = dixon_table(&builtin("trivial").unwrap()).unwrap();
        let mut m = build_tensor_matrices(&t).unwrap();
        // an undersized defining matrix starves the higher levels
        m.natural = vec![vec![1]];
        m.dual = vec![vec![1]];
        let err = cg_table(&m, 3).unwrap_err();
        assert!(matches!(err, Error::Oracle(_)), "{err}");
    }

    #[test]
    fn weights_enumeration() {
        let w = weights_up_to(2);
        assert_eq!(w.len(), 10);
        assert!(w.contains(&(0, 0, 0)) && w.contains(&(2, 0, 0)) && w.contains(&(0, 1, 1)));
        assert!(w.windows(2).all(|p| p[0] < p[1]));
    }
}
