//! Exact irreducible character tables of finite matrix groups.
//!
//! The table is computed modulo a suitable prime: the class multiplication
//! constants give a commuting family of integer matrices whose common
//! eigenvectors, reduced mod p, are in bijection with the irreducible
//! characters. Splitting their common eigenspaces over F_p and then undoing
//! the reduction through discrete logarithms recovers the exact character
//! values as sums of roots of unity. Everything downstream of the mod-p
//! stage is verified exactly (orthogonality, degree sums), so the table is
//! correct, not just probably correct.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactnum::{factorize, lcm_u64, parse::parse_scalar, Cyclotomic, Rational};
use crate::matgroup::{ClassData, GroupData};

/// Irreducible character table in canonical order: rows are characters (the
/// trivial character first, the rest ascending by degree then value key),
/// columns are conjugacy classes in canonical class order.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub class: ClassData,
    /// Character degrees, one per row.
    pub degrees: Vec<u64>,
    /// values[s][k] = value of character s at class k, descended.
    pub values: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class.num_classes()
    }

    pub fn value(&self, s: usize, k: usize) -> &Cyclotomic {
        &self.values[s][k]
    }
}

impl PartialEq for CharacterTable {
    fn eq(&self, other: &Self) -> bool {
        self.class == other.class && self.degrees == other.degrees && self.values == other.values
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    a %= p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

const PRIME_BOUND: u64 = 10_000_000;

/// Smallest prime p = 1 mod exponent with p > 2*floor(sqrt(order)) and
/// p not dividing order.
pub fn dixon_prime(exponent: u64, order: u64) -> Result<u64> {
    let sqrt_floor = (order as f64).sqrt() as u64;
    let sqrt_floor = if (sqrt_floor + 1) * (sqrt_floor + 1) <= order {
        sqrt_floor + 1
    } else {
        sqrt_floor
    };
    let low = 2 * sqrt_floor;
    let mut p = exponent + 1;
    while p <= PRIME_BOUND {
        if p > low && order % p != 0 && is_prime(p) {
            return Ok(p);
        }
        p += exponent;
    }
    Err(Error::Table(format!(
        "no usable prime p = 1 mod {exponent} with p > {low} below {PRIME_BOUND}"
    )))
}

fn primitive_root(p: u64) -> u64 {
    let factors = factorize(p - 1);
    'next: for g in 2..p {
        for (q, _) in &factors {
            if pow_mod(g, (p - 1) / q, p) == 1 {
                continue 'next;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

/// Kernel basis of a square matrix over F_p (vectors as rows).
fn kernel_mod_p(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = mat.len();
    let mut a: Vec<Vec<u64>> = mat.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let mut pivot = None;
        for row in rank..n {
            if a[row][col] != 0 {
                pivot = Some(row);
                break;
            }
        }
        let Some(pr) = pivot else { continue };
        a.swap(rank, pr);
        let inv = inv_mod(a[rank][col], p);
        for x in &mut a[rank] {
            *x = *x * inv % p;
        }
        for row in 0..n {
            if row != rank && a[row][col] != 0 {
                let f = a[row][col];
                for c in 0..n {
                    let sub = f * a[rank][c] % p;
                    a[row][c] = (a[row][c] + p - sub) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
        if rank == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (p - a[r][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

/// Solve U x = b over F_p where U is l x d with full column rank and the
/// system is consistent; vectors are columns. Returns x of length d.
fn solve_columns_mod_p(u_cols: &[Vec<u64>], b: &[u64], p: u64) -> Result<Vec<u64>> {
    let l = b.len();
    let d = u_cols.len();
    let mut aug: Vec<Vec<u64>> = (0..l)
        .map(|r| {
            let mut row: Vec<u64> = u_cols.iter().map(|c| c[r]).collect();
            row.push(b[r]);
            row
        })
        .collect();
    let mut rank = 0usize;
    let mut pivot_col_of_row = Vec::new();
    for col in 0..d {
        let mut pivot = None;
        for row in rank..l {
            if aug[row][col] != 0 {
                pivot = Some(row);
                break;
            }
        }
        let Some(pr) = pivot else { continue };
        aug.swap(rank, pr);
        let inv = inv_mod(aug[rank][col], p);
        for x in &mut aug[rank] {
            *x = *x * inv % p;
        }
        for row in 0..l {
            if row != rank && aug[row][col] != 0 {
                let f = aug[row][col];
                for c in 0..=d {
                    let sub = f * aug[rank][c] % p;
                    aug[row][c] = (aug[row][c] + p - sub) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
    }
    if rank < d {
        return Err(Error::Internal("subspace basis is rank deficient".into()));
    }
    for row in rank..l {
        if aug[row][d] != 0 {
            return Err(Error::Internal(
                "class matrix does not preserve the subspace".into(),
            ));
        }
    }
    let mut x = vec![0u64; d];
    for (r, &pc) in pivot_col_of_row.iter().enumerate() {
        x[pc] = aug[r][d];
    }
    Ok(x)
}

/// Common eigenvector columns (normalized to first entry 1) of the class
/// multiplication matrices over F_p.
fn common_eigenvectors(constants: &[Vec<Vec<u64>>], l: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    // Start from the full space, basis = standard columns.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..l)
        .map(|i| {
            let mut v = vec![0u64; l];
            v[i] = 1;
            v
        })
        .collect()];
    for mats in constants.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        // M[j][k] = n_ijk acts on column vectors v by (Mv)_j = sum_k M[j][k] v_k.
        let apply = |v: &[u64]| -> Vec<u64> {
            (0..l)
                .map(|j| {
                    let mut acc = 0u64;
                    for k in 0..l {
                        acc = (acc + mats[j][k] % p * v[k]) % p;
                    }
                    acc
                })
                .collect()
        };
        let mut next = Vec::new();
        for basis in spaces {
            let d = basis.len();
            if d == 1 {
                next.push(basis);
                continue;
            }
            // Restriction R: M u_m = sum_r R[r][m] u_r.
            let images: Vec<Vec<u64>> = basis.iter().map(|u| apply(u)).collect();
            let mut r_cols = Vec::with_capacity(d);
            for img in &images {
                r_cols.push(solve_columns_mod_p(&basis, img, p)?);
            }
            // r_mat[r][m] = coefficient of u_r in M u_m.
            let r_mat: Vec<Vec<u64>> = (0..d).map(|r| (0..d).map(|m| r_cols[m][r]).collect()).collect();
            let mut found = 0usize;
            for lambda in 0..p {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|r| {
                        (0..d)
                            .map(|m| {
                                if r == m {
                                    (r_mat[r][m] + p - lambda) % p
                                } else {
                                    r_mat[r][m]
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ker = kernel_mod_p(&shifted, p);
                if ker.is_empty() {
                    continue;
                }
                // Lift kernel coordinates back to length-l vectors.
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|coords| {
                        (0..l)
                            .map(|row| {
                                let mut acc = 0u64;
                                for (m, u) in basis.iter().enumerate() {
                                    acc = (acc + coords[m] * u[row]) % p;
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect();
                found += sub.len();
                next.push(sub);
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(Error::Internal(
                    "restricted class matrix failed to diagonalize over F_p".into(),
                ));
            }
        }
        spaces = next;
    }
    let mut vectors = Vec::with_capacity(l);
    for basis in spaces {
        if basis.len() != 1 {
            return Err(Error::Internal(
                "class matrices failed to separate the characters".into(),
            ));
        }
        let v = &basis[0];
        if v[0] == 0 {
            return Err(Error::Internal(
                "common eigenvector vanishes at the identity class".into(),
            ));
        }
        let inv = inv_mod(v[0], p);
        vectors.push(v.iter().map(|&x| x * inv % p).collect());
    }
    Ok(vectors)
}

/// Compute the exact character table of a closed group.
pub fn dixon_table(group: &GroupData) -> Result<CharacterTable> {
    let class = group.class_data();
    let l = class.num_classes();
    let order = class.order;
    let e = class.exponent;
    let p = dixon_prime(e, order)?;
    let constants = group.class_constants();

    let vectors = common_eigenvectors(constants, l, p)?;

    let sizes_mod: Vec<u64> = class.class_sizes.iter().map(|&s| s % p).collect();
    let inv_class: Vec<usize> = (0..l).map(|k| group.inverse_class(k)).collect();

    // Degrees: d^2 = |G| / sum_k v_k v_{inv k} / |C_k| (all mod p), with the
    // true degree pinned by d < p/2.
    let mut rows = Vec::with_capacity(l);
    for v in &vectors {
        let mut s = 0u64;
        for k in 0..l {
            s = (s + v[k] * v[inv_class[k]] % p * inv_mod(sizes_mod[k], p)) % p;
        }
        if s == 0 {
            return Err(Error::Internal("degenerate norm sum in degree extraction".into()));
        }
        let dd = order % p * inv_mod(s, p) % p;
        let mut degree = None;
        for d in 1..=(p / 2) {
            if d * d % p == dd {
                degree = Some(d);
                break;
            }
        }
        let Some(degree) = degree else {
            return Err(Error::Internal("degree has no square root below p/2".into()));
        };
        // Character values mod p.
        let theta: Vec<u64> = (0..l)
            .map(|k| degree % p * v[k] % p * inv_mod(sizes_mod[k], p) % p)
            .collect();
        rows.push((degree, theta));
    }

    let total: u64 = rows.iter().map(|(d, _)| d * d).sum();
    if total != order {
        return Err(Error::Integrality(format!(
            "degree squares sum to {total}, expected the group order {order}"
        )));
    }

    // Undo the mod-p reduction: each value is a multiplicity combination of
    // e-th roots of unity, recovered by discrete Fourier inversion over F_p.
    let r = primitive_root(p);
    let z = pow_mod(r, (p - 1) / e, p);
    let z_pows: Vec<u64> = (0..e).map(|k| pow_mod(z, k, p)).collect();
    let e_inv = inv_mod(e % p, p);
    let power_classes: Vec<Vec<usize>> = (0..l)
        .map(|i| (0..e).map(|n| group.power_class(i, n)).collect())
        .collect();

    let mut char_rows: Vec<(u64, Vec<Cyclotomic>)> = Vec::with_capacity(l);
    for (degree, theta) in rows {
        let mut values = Vec::with_capacity(l);
        for i in 0..l {
            let mut value = Cyclotomic::zero();
            let mut mult_sum = 0u64;
            for t in 0..e {
                let mut acc = 0u64;
                for n in 0..e {
                    let zexp = (e - (t * n) % e) % e;
                    acc = (acc + theta[power_classes[i][n as usize]] * z_pows[zexp as usize]) % p;
                }
                let m_t = acc * e_inv % p;
                if m_t > 0 {
                    mult_sum += m_t;
                    value = value
                        .add(&Cyclotomic::zeta_pow(e, t as i64)?
                            .scale(&Rational::from_integer(m_t.into())));
                }
            }
            if mult_sum != degree {
                return Err(Error::Integrality(format!(
                    "eigenvalue multiplicities at class {i} sum to {mult_sum}, expected the degree {degree}"
                )));
            }
            values.push(value.descend());
        }
        char_rows.push((degree, values));
    }

    // Canonical row order: trivial character first, the rest ascending by
    // (degree, value key).
    let mut trivial_idx = None;
    for (s, (d, values)) in char_rows.iter().enumerate() {
        if *d == 1 && values.iter().all(|v| v.is_one()) {
            trivial_idx = Some(s);
            break;
        }
    }
    let Some(trivial_idx) = trivial_idx else {
        return Err(Error::Internal("trivial character missing from the table".into()));
    };
    let trivial = char_rows.remove(trivial_idx);
    char_rows.sort_by(|a, b| {
        let key = |row: &(u64, Vec<Cyclotomic>)| {
            let mut k: Vec<Rational> = Vec::new();
            for v in &row.1 {
                k.extend(v.canonical_key(e));
            }
            (row.0, k)
        };
        key(a).cmp(&key(b))
    });
    char_rows.insert(0, trivial);

    let table = CharacterTable {
        class,
        degrees: char_rows.iter().map(|(d, _)| *d).collect(),
        values: char_rows.into_iter().map(|(_, v)| v).collect(),
    };
    validate_table(&table)?;
    Ok(table)
}

/// Exact inverse of the table seen as the matrix T[s][k] = value(s, k):
/// entry (j, k) is |C_j| conj(value(k, g_j)) / |G|.
pub fn inverse_table(t: &CharacterTable) -> Vec<Vec<Cyclotomic>> {
    let l = t.num_classes();
    let order_inv = Rational::new(1.into(), t.class.order.into());
    (0..l)
        .map(|j| {
            let size = Rational::from_integer(t.class.class_sizes[j].into());
            (0..l)
                .map(|k| {
                    t.values[k][j]
                        .conjugate()
                        .scale(&(size.clone() * order_inv.clone()))
                })
                .collect()
        })
        .collect()
}

fn inner_product(
    t: &CharacterTable,
    a: &[Cyclotomic],
    b: &[Cyclotomic],
) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for k in 0..t.num_classes() {
        let term = a[k]
            .mul(&b[k].conjugate())
            .scale(&Rational::from_integer(t.class.class_sizes[k].into()));
        acc = acc.add(&term);
    }
    acc.scale(&Rational::new(1.into(), t.class.order.into()))
}

/// Check every table invariant; the error message lists all failures.
pub fn validate_table(t: &CharacterTable) -> Result<()> {
    let l = t.class.num_classes();
    let mut problems = Vec::new();

    if t.degrees.len() != l || t.values.len() != l {
        return Err(Error::Table(format!(
            "table must be square with {l} rows, got {} degrees / {} rows",
            t.degrees.len(),
            t.values.len()
        )));
    }
    for (s, row) in t.values.iter().enumerate() {
        if row.len() != l {
            return Err(Error::Table(format!(
                "character row {s} has {} values, expected {l}",
                row.len()
            )));
        }
    }
    if t.class.class_sizes.len() != l
        || t.class.rep_orders.len() != l
        || t.class.natural.len() != l
        || t.class.power2.len() != l
    {
        return Err(Error::Table("class data lengths disagree".into()));
    }

    if t.class.class_sizes[0] != 1 {
        problems.push("identity class size is not 1".to_string());
    }
    if t.class.rep_orders[0] != 1 {
        problems.push("identity representative order is not 1".to_string());
    }
    let size_sum: u64 = t.class.class_sizes.iter().sum();
    if size_sum != t.class.order {
        problems.push(format!(
            "class sizes sum to {size_sum}, expected the group order {}",
            t.class.order
        ));
    }
    let e = t
        .class
        .rep_orders
        .iter()
        .fold(1u64, |acc, &o| lcm_u64(acc, o as u64));
    if e != t.class.exponent {
        problems.push(format!(
            "exponent {} is not the lcm {e} of the representative orders",
            t.class.exponent
        ));
    }
    for (k, &p2) in t.class.power2.iter().enumerate() {
        if p2 >= l {
            problems.push(format!("power2[{k}] = {p2} is out of range"));
        }
    }

    // Row 0 is the trivial character.
    if !(t.degrees[0] == 1 && t.values[0].iter().all(|v| v.is_one())) {
        problems.push("row 0 is not the trivial character".to_string());
    }

    // First column equals the degrees.
    for s in 0..l {
        match t.values[s][0].as_rational() {
            Some(r) if r == Rational::from_integer(t.degrees[s].into()) => {}
            _ => problems.push(format!(
                "value({s}, identity) = {} does not equal the degree {}",
                t.values[s][0], t.degrees[s]
            )),
        }
    }

    let dd: u64 = t.degrees.iter().map(|d| d * d).sum();
    if dd != t.class.order {
        problems.push(format!(
            "degree squares sum to {dd}, expected {}",
            t.class.order
        ));
    }

    // Row orthogonality.
    for s in 0..l {
        for r in s..l {
            let ip = inner_product(t, &t.values[s], &t.values[r]);
            let want = if s == r {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            };
            if ip != want {
                problems.push(format!(
                    "row orthogonality fails for rows {s}, {r}: inner product {}",
                    ip.descend()
                ));
            }
        }
    }

    // Column orthogonality.
    for j in 0..l {
        for k in j..l {
            let mut acc = Cyclotomic::zero();
            for s in 0..l {
                acc = acc.add(&t.values[s][j].mul(&t.values[s][k].conjugate()));
            }
            let want = if j == k {
                Cyclotomic::from_rational(Rational::new(
                    t.class.order.into(),
                    t.class.class_sizes[j].into(),
                ))
            } else {
                Cyclotomic::zero()
            };
            if acc != want {
                problems.push(format!(
                    "column orthogonality fails for classes {j}, {k}"
                ));
            }
        }
    }

    // The 4-dimensional class function decomposes with multiplicities in N.
    let mut dim_sum = Rational::from_integer(0.into());
    for s in 0..l {
        let m = inner_product(t, &t.class.natural, &t.values[s]);
        match m.as_rational() {
            Some(r) if r.is_integer() && r >= Rational::from_integer(0.into()) => {
                dim_sum += r * Rational::from_integer(t.degrees[s].into());
            }
            _ => problems.push(format!(
                "embedding character has non-natural multiplicity {} at row {s}",
                m.descend()
            )),
        }
    }
    if dim_sum != Rational::from_integer(4.into()) {
        problems.push(format!(
            "embedding character multiplicities weight to dimension {dim_sum}, expected 4"
        ));
    }

    // Values live in the exponent cyclotomic field.
    for (s, row) in t.values.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            if t.class.exponent % v.order() != 0 {
                problems.push(format!(
                    "value({s}, {k}) has cyclotomic order {} outside the exponent field",
                    v.order()
                ));
            }
        }
    }

    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Table(problems.join("; ")))
    }
}

/// Render in the table text format:
/// line 1 class count, line 2 class sizes, line 3 representative orders,
/// line 4 `power2:` map, line 5 `natural:` embedding character, then one
/// row of scalar literals per character.
pub fn save_table(t: &CharacterTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", t.num_classes());
    let _ = writeln!(
        out,
        "{}",
        t.class
            .class_sizes
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    let _ = writeln!(
        out,
        "{}",
        t.class
            .rep_orders
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    let _ = writeln!(
        out,
        "power2: {}",
        t.class
            .power2
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    let _ = writeln!(
        out,
        "natural: {}",
        t.class
            .natural
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    for row in &t.values {
        let _ = writeln!(
            out,
            "{}",
            row.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    out
}

/// Parse and fully validate a table file. `source` labels the data origin.
pub fn load_table(text: &str, source: &str) -> Result<CharacterTable> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let mut next_line = |what: &str| -> Result<&str> {
        lines
            .next()
            .ok_or_else(|| Error::Parse(format!("table file ends before {what}")))
    };

    let l: usize = next_line("the class count")?
        .parse()
        .map_err(|_| Error::Parse("class count must be a positive integer".into()))?;
    if l == 0 {
        return Err(Error::Parse("class count must be positive".into()));
    }

    let parse_ints = |line: &str, what: &str| -> Result<Vec<u64>> {
        line.split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad {what} entry '{tok}'")))
            })
            .collect()
    };

    let class_sizes = parse_ints(next_line("the class sizes")?, "class size")?;
    let rep_orders_u64 = parse_ints(next_line("the representative orders")?, "order")?;

    let power2_line = next_line("the power2 line")?;
    let power2_body = power2_line
        .strip_prefix("power2:")
        .ok_or_else(|| Error::Parse("expected a 'power2:' line after the orders".into()))?;
    let power2: Vec<usize> = parse_ints(power2_body, "power2 index")?
        .into_iter()
        .map(|x| x as usize)
        .collect();

    let natural_line = next_line("the natural line")?;
    let natural_body = natural_line
        .strip_prefix("natural:")
        .ok_or_else(|| Error::Parse("expected a 'natural:' line after power2".into()))?;
    let natural: Vec<Cyclotomic> = natural_body
        .split_whitespace()
        .map(parse_scalar)
        .collect::<Result<_>>()?;

    let mut values = Vec::with_capacity(l);
    for s in 0..l {
        let row_line = next_line(&format!("character row {s}"))?;
        let row: Vec<Cyclotomic> = row_line
            .split_whitespace()
            .map(parse_scalar)
            .collect::<Result<_>>()?;
        values.push(row.into_iter().map(|v| v.descend()).collect::<Vec<_>>());
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after the character rows".into()));
    }

    if class_sizes.len() != l
        || rep_orders_u64.len() != l
        || power2.len() != l
        || natural.len() != l
    {
        return Err(Error::Parse(format!(
            "all header lines must have {l} entries"
        )));
    }

    let rep_orders: Vec<u32> = rep_orders_u64.iter().map(|&o| o as u32).collect();
    let exponent = rep_orders
        .iter()
        .fold(1u64, |acc, &o| lcm_u64(acc, o as u64));
    let order: u64 = class_sizes.iter().sum();

    let mut degrees = Vec::with_capacity(l);
    for (s, row) in values.iter().enumerate() {
        if row.is_empty() {
            return Err(Error::Parse(format!("character row {s} is empty")));
        }
        let d = row[0].as_rational().and_then(|r| {
            if r.is_integer() && r > Rational::from_integer(0.into()) {
                r.to_integer().try_into().ok()
            } else {
                None
            }
        });
        let Some(d) = d else {
            return Err(Error::Parse(format!(
                "character row {s} does not start with a positive integer degree"
            )));
        };
        degrees.push(d);
    }

    let table = CharacterTable {
        class: ClassData {
            source: source.to_string(),
            order,
            class_sizes,
            rep_orders,
            exponent,
            natural: natural.into_iter().map(|v| v.descend()).collect(),
            power2,
        },
        degrees,
        values,
    };
    validate_table(&table)?;
    Ok(table)
}

/// Cross-check a loaded table against independently computed class data.
pub fn validate_against_class(t: &CharacterTable, class: &ClassData) -> Result<()> {
    let mut problems = Vec::new();
    if t.class.order != class.order {
        problems.push(format!(
            "order {} vs {}",
            t.class.order, class.order
        ));
    }
    if t.class.class_sizes != class.class_sizes {
        problems.push("class sizes differ".into());
    }
    if t.class.rep_orders != class.rep_orders {
        problems.push("representative orders differ".into());
    }
    if t.class.natural != class.natural {
        problems.push("embedding characters differ".into());
    }
    if t.class.power2 != class.power2 {
        problems.push("power2 maps differ".into());
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Table(format!(
            "table disagrees with the group: {}",
            problems.join("; ")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::builtin;

    #[test]
    fn prime_selection() {
        assert_eq!(dixon_prime(1, 1).unwrap(), 3);
        assert_eq!(dixon_prime(4, 4).unwrap(), 5);
        assert_eq!(dixon_prime(30, 60).unwrap(), 31);
    }

    #[test]
    fn trivial_table() {
        let g = builtin("trivial").unwrap();
        let t = dixon_table(&g).unwrap();
        assert_eq!(t.degrees, vec![1]);
        assert!(t.values[0][0].is_one());
    }

    #[test]
    fn cyclic4_table() {
        let g = builtin("cyclic4").unwrap();
        let t = dixon_table(&g).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1]);
        // class order is (e, g^2, g, g^3); the four rows are k -> i^(a k)
        // for a = 0..3, in some canonical row order with trivial first.
        let i_ = Cyclotomic::zeta(4).unwrap();
        let mut expect: Vec<Vec<Cyclotomic>> = (0..4u32)
            .map(|a| {
                [0u32, 2, 1, 3]
                    .iter()
                    .map(|&k| i_.pow(a * k).descend())
                    .collect()
            })
            .collect();
        for row in &t.values {
            let pos = expect.iter().position(|e| e == row);
            assert!(pos.is_some(), "unexpected row in the table");
            expect.remove(pos.unwrap());
        }
        assert!(expect.is_empty());
    }

    #[test]
    fn type_ii_table() {
        let g = builtin("typeII").unwrap();
        let t = dixon_table(&g).unwrap();
        assert_eq!(t.degrees, vec![1, 3, 3, 4, 5]);
        // the embedding character is the degree-4 row
        assert_eq!(t.values[3], t.class.natural);
        // the degree-3 rows carry the two golden values at the order-5
        // classes, swapped between the rows
        let phi = parse_scalar("-(E(5)^2+E(5)^3)").unwrap().descend();
        let phi_bar = parse_scalar("-(E(5)+E(5)^4)").unwrap().descend();
        let at3: Vec<&Cyclotomic> = vec![&t.values[1][3], &t.values[2][3]];
        assert!(at3.contains(&&phi) && at3.contains(&&phi_bar));
        assert_eq!(t.values[1][3], t.values[2][4]);
        assert_eq!(t.values[1][4], t.values[2][3]);
        // degree-5 row: (5, 1, -1, 0, 0)
        let five: Vec<i64> = vec![5, 1, -1, 0, 0];
        for (k, want) in five.iter().enumerate() {
            assert_eq!(
                t.values[4][k].as_rational(),
                Some(crate::exactnum::rat_int(*want))
            );
        }
    }

    #[test]
    fn inverse_table_is_exact() {
        for name in ["cyclic4", "typeII"] {
            let g = builtin(name).unwrap();
            let t = dixon_table(&g).unwrap();
            let l = t.num_classes();
            let tinv = inverse_table(&t);
            for i in 0..l {
                for k in 0..l {
                    let mut acc = Cyclotomic::zero();
                    for j in 0..l {
                        acc = acc.add(&t.values[i][j].mul(&tinv[j][k]));
                    }
                    let want = if i == k {
                        Cyclotomic::one()
                    } else {
                        Cyclotomic::zero()
                    };
                    assert_eq!(acc, want, "{name} ({i},{k})");
                }
            }
        }
    }

    #[test]
    fn save_load_roundtrip() {
        let g = builtin("typeII").unwrap();
        let t = dixon_table(&g).unwrap();
        let text = save_table(&t);
        let t2 = load_table(&text, &t.class.source).unwrap();
        assert_eq!(t, t2);
        assert_eq!(save_table(&t2), text);
        validate_against_class(&t2, &g.class_data()).unwrap();
    }

    #[test]
    fn perturbed_table_is_rejected() {
        let g = builtin("typeII").unwrap();
        let t = dixon_table(&g).unwrap();
        let text = save_table(&t);
        // flip one integer entry in the last row
        let perturbed = text.replace("5 1 -1 0 0", "5 1 -1 0 1");
        assert_ne!(text, perturbed);
        let err = load_table(&perturbed, "t").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("orthogonality"), "diagnostic was: {msg}");
    }

    #[test]
    fn load_rejects_malformed_files() {
        assert!(load_table("", "t").is_err());
        assert!(load_table("1\n1\n1\nnatural: 4\n1", "t").is_err()); // missing power2
        assert!(load_table("0\n\n\npower2:\nnatural:\n", "t").is_err());
        let g = builtin("cyclic4").unwrap();
        let t = dixon_table(&g).unwrap();
        let text = save_table(&t);
        let truncated: String = text.lines().take(6).collect::<Vec<_>>().join("\n");
        assert!(load_table(&truncated, "t").is_err());
        let trailing = format!("{text}\n1 1 1 1\n");
        assert!(load_table(&trailing, "t").is_err());
    }

    #[test]
    fn validation_is_exact_on_builtin_tables() {
        for name in ["trivial", "cyclic4", "typeII"] {
            let g = builtin(name).unwrap();
            let t = dixon_table(&g).unwrap();
            validate_table(&t).unwrap();
            validate_against_class(&t, &g.class_data()).unwrap();
        }
    }
}
