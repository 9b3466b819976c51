//! Exact scalars: arbitrary-precision rationals and cyclotomic field elements.
//!
//! Every scalar in the pipeline (matrix entries, character values, series
//! coefficients) lives in some cyclotomic field Q(zeta_m). An element is
//! stored as its coefficient vector on the power basis
//! zeta^0 .. zeta^{phi(m)-1}, reduced modulo the m-th cyclotomic polynomial;
//! that vector is a canonical form, so two equal values at the same order
//! have identical coefficients. Arithmetic between different orders lifts
//! both operands to the lcm order first. There is no automatic descent to a
//! smaller field; [`Cyclotomic::descend`] performs it on demand (display,
//! file output).

pub mod parse;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always in lowest terms with positive denominator;
/// the backing type maintains that invariant on every operation.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Rational n/d. Panics if d = 0.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factorize(0)");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product::<u64>()
        .max(1)
}

/// Divisors of n in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Coefficients of the m-th cyclotomic polynomial, ascending degree,
/// length phi(m)+1, monic. Cached per order.
fn cyclotomic_poly(m: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(p) = guard.get(&m) {
        return p.clone();
    }
    // Fill every divisor bottom-up: Phi_d = (x^d - 1) / prod_{e|d, e<d} Phi_e.
    for d in divisors(m) {
        if guard.contains_key(&d) {
            continue;
        }
        let mut poly = vec![BigInt::zero(); d as usize + 1];
        poly[0] = -BigInt::one();
        poly[d as usize] = BigInt::one();
        for e in divisors(d) {
            if e < d {
                poly = int_poly_div_exact(&poly, guard[&e].as_slice());
            }
        }
        debug_assert_eq!(poly.len() as u64, euler_phi(d) + 1);
        guard.insert(d, Arc::new(poly));
    }
    guard[&m].clone()
}

/// Exact division of integer polynomials with monic divisor.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quo = vec![BigInt::zero(); nd - dd + 1];
    for qd in (0..=nd - dd).rev() {
        let c = rem[qd + dd].clone();
        if c.is_zero() {
            continue;
        }
        quo[qd] = c.clone();
        for (k, dk) in den.iter().enumerate() {
            let delta = &c * dk;
            rem[qd + k] -= delta;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quo
}

/// Element of Q(zeta_m) in canonical power-basis form. `coeffs` always has
/// length exactly phi(order).
#[derive(Clone)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>,
}

/// Reduce a raw coefficient vector (any length) modulo Phi_order, leaving
/// exactly phi(order) entries.
fn reduce_in_place(coeffs: &mut Vec<Rational>, order: u64) {
    let phi = euler_phi(order) as usize;
    if coeffs.len() > phi {
        let modulus = cyclotomic_poly(order);
        while coeffs.len() > phi {
            let lead = coeffs.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let base = coeffs.len() - phi;
            for (k, mk) in modulus.iter().take(phi).enumerate() {
                if !mk.is_zero() {
                    let delta = &lead * Rational::from(mk.clone());
                    coeffs[base + k] -= delta;
                }
            }
        }
    }
    coeffs.resize(phi, Rational::zero());
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// Primitive m-th root of unity.
    pub fn zeta(m: u64) -> Result<Self> {
        Self::zeta_pow(m, 1)
    }

    /// zeta_m^k (k may be negative).
    pub fn zeta_pow(m: u64, k: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Arithmetic("root-of-unity order must be >= 1".into()));
        }
        let k = k.rem_euclid(m as i64) as usize;
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        reduce_in_place(&mut coeffs, m);
        Ok(Cyclotomic { order: m, coeffs })
    }

    /// Square root of a positive squarefree integer, expressed through
    /// quadratic Gauss sums: sqrt(2) = zeta_8 - zeta_8^3, and for odd prime p
    /// the sum g = sum_a zeta_p^{a^2} equals sqrt(p) when p = 1 mod 4 and
    /// i*sqrt(p) when p = 3 mod 4 (corrected by -zeta_4).
    pub fn sqrt_integer(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Arithmetic("Sqrt argument must be positive".into()));
        }
        let fac = factorize(n);
        if fac.iter().any(|&(_, e)| e > 1) {
            return Err(Error::Arithmetic(format!(
                "Sqrt argument must be squarefree, got {n}"
            )));
        }
        let mut out = Cyclotomic::one();
        for (p, _) in fac {
            let root = if p == 2 {
                let a = Self::zeta_pow(8, 1)?;
                let b = Self::zeta_pow(8, 3)?;
                a.sub(&b)
            } else {
                let mut g = Cyclotomic::zero();
                for a in 0..p {
                    let sq = ((a as u128 * a as u128) % p as u128) as i64;
                    g = g.add(&Self::zeta_pow(p, sq)?);
                }
                if p % 4 == 1 {
                    g
                } else {
                    // g = i*sqrt(p); multiply by -i.
                    g.mul(&Self::zeta_pow(4, 1)?.neg())
                }
            };
            out = out.mul(&root);
        }
        Ok(out)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Reinterpret at a larger order M (order | M): zeta_m = zeta_M^{M/m}.
    pub fn lift_to(&self, target: u64) -> Self {
        assert_eq!(target % self.order, 0, "lift target must be a multiple");
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * step] = c.clone();
            }
        }
        reduce_in_place(&mut coeffs, target);
        Cyclotomic {
            order: target,
            coeffs,
        }
    }

    fn lift_pair(&self, rhs: &Self) -> (Self, Self, u64) {
        let m = lcm_u64(self.order, rhs.order);
        (self.lift_to(m), rhs.lift_to(m), m)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (mut a, b, _) = self.lift_pair(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let (mut a, b, _) = self.lift_pair(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // Fast paths keep most pipeline coefficients at order 1.
        if self.is_rational() {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, b, m) = self.lift_pair(rhs);
        let mut coeffs = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    coeffs[i + j] += x * y;
                }
            }
        }
        reduce_in_place(&mut coeffs, m);
        Cyclotomic { order: m, coeffs }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against the cyclotomic modulus.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let modulus: Vec<Rational> = cyclotomic_poly(self.order)
            .iter()
            .map(|c| Rational::from(c.clone()))
            .collect();
        let (g, s) = poly_ext_gcd(&self.coeffs, &modulus);
        if g.len() != 1 || g[0].is_zero() {
            return Err(Error::Internal(
                "cyclotomic element not invertible against its modulus".into(),
            ));
        }
        let inv_g = g[0].recip();
        let mut coeffs: Vec<Rational> = s.iter().map(|c| c * &inv_g).collect();
        reduce_in_place(&mut coeffs, self.order);
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Galois automorphism zeta -> zeta^k, for k coprime to the order.
    pub fn galois(&self, k: u64) -> Self {
        let m = self.order;
        assert_eq!(num_integer::gcd(k % m, m), 1, "galois exponent not coprime");
        let k = (k % m) as usize;
        let mut coeffs = vec![Rational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[(i * k) % m as usize] += c;
            }
        }
        reduce_in_place(&mut coeffs, m);
        Cyclotomic { order: m, coeffs }
    }

    /// Complex conjugation (zeta -> zeta^{-1}).
    pub fn conjugate(&self) -> Self {
        if self.order <= 2 {
            self.clone()
        } else {
            self.galois(self.order - 1)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Coefficient vector after lifting to a common order; used as a total,
    /// deterministic sort/hash key when a whole set is lifted to one order.
    pub fn canonical_key(&self, target: u64) -> Vec<Rational> {
        self.lift_to(target).coeffs
    }

    /// The same value at the smallest cyclotomic order that contains it.
    /// Scans divisors of the current order ascending and solves the exact
    /// change-of-basis system for each candidate subfield.
    pub fn descend(&self) -> Self {
        if self.is_rational() {
            return Cyclotomic {
                order: 1,
                coeffs: vec![self.coeffs[0].clone()],
            };
        }
        let m = self.order;
        for d in divisors(m) {
            if d == m {
                break;
            }
            let phi_d = euler_phi(d) as usize;
            let mut basis = Vec::with_capacity(phi_d);
            for j in 0..phi_d {
                let b = Cyclotomic::zeta_pow(d, j as i64).unwrap().lift_to(m);
                basis.push(b.coeffs);
            }
            if let Some(x) = solve_exact_columns(&basis, &self.coeffs) {
                return Cyclotomic {
                    order: d,
                    coeffs: x,
                };
            }
        }
        self.clone()
    }

    /// Floating-point image (real, imaginary); for sanity cross-checks only,
    /// never on the exact path.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = std::f64::consts::TAU * i as f64 / self.order as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = self.lift_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.order, self)
    }
}

/// Canonical literal form, parseable by `parse::parse_scalar`:
/// rational coefficients on ascending powers of E(order), no whitespace.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if i == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "E({})", self.order)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// Extended gcd of dense rational polynomials: returns (g, s) with
/// s*a = g (mod b) and g the last nonzero remainder (not normalized).
fn poly_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let trim = |mut v: Vec<Rational>| {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        v
    };
    let mut r0 = trim(b.to_vec());
    let mut r1 = trim(a.to_vec());
    let mut s0 = vec![Rational::zero()];
    let mut s1 = vec![Rational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, rem) = poly_divmod(&r0, &r1);
        let s_next = trim(poly_sub(&s0, &poly_mul(&q, &s1)));
        r0 = r1;
        r1 = trim(rem);
        s0 = s1;
        s1 = s_next;
    }
    (r0, s0)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(!lead.is_zero());
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (vec![Rational::zero()], rem);
    }
    let mut quo = vec![Rational::zero(); rem.len() - dd];
    for qd in (0..quo.len()).rev() {
        let c = &rem[qd + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        quo[qd] = c.clone();
        for (k, dk) in den.iter().enumerate() {
            let delta = &c * dk;
            rem[qd + k] -= delta;
        }
    }
    rem.truncate(dd.max(1));
    (quo, rem)
}

/// Solve sum_j x_j * cols[j] = rhs exactly; None when inconsistent.
fn solve_exact_columns(cols: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = rhs.len();
    let ncols = cols.len();
    let mut aug: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; ncols];
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(rank, p);
        let inv = aug[rank][col].recip();
        for v in aug[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != rank && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=ncols {
                    let delta = &f * &aug[rank][c];
                    aug[r][c] -= delta;
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }
    // Inconsistent when a zero row has nonzero rhs.
    for r in rank..rows {
        if !aug[r][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); ncols];
    for col in 0..ncols {
        if pivot_of_col[col] != usize::MAX {
            x[col] = aug[pivot_of_col[col]][ncols].clone();
        }
    }
    // Free columns are set to zero; verify the candidate exactly.
    for (r, want) in rhs.iter().enumerate() {
        let mut acc = Rational::zero();
        for (j, xj) in x.iter().enumerate() {
            if !xj.is_zero() {
                acc += xj * &cols[j][r];
            }
        }
        if &acc != want {
            return None;
        }
    }
    Some(x)
}
