//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! An element is stored as its coefficient vector in the power basis
//! 1, ζ, …, ζ^{φ(N)-1}, i.e. reduced modulo the N-th cyclotomic polynomial.
//! Operands of different orders are embedded into Q(ζ_lcm) first.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type Q = BigRational;

pub fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses "a", "-a" or "a/b".
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut res = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            res -= res / p;
        }
        p += 1;
    }
    if m > 1 {
        res -= res / m;
    }
    res
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // both monic, low degree first
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = r[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                r[i + j] -= c * d;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    thread_local! {
        static PHI: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
    }
    if let Some(p) = PHI.with(|c| c.borrow().get(&n).cloned()) {
        return (*p).clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    PHI.with(|c| c.borrow_mut().insert(n, Rc::new(num.clone())));
    num
}

struct Ctx {
    order: u32,
    phi: usize,
    /// red[k] = ζ^k in the power basis, for 0 <= k < 2·order.
    red: Vec<Vec<i64>>,
}

impl Ctx {
    fn build(order: u32) -> Ctx {
        let phi = euler_phi(order) as usize;
        let poly = cyclotomic_polynomial(order);
        let mut red: Vec<Vec<i64>> = Vec::with_capacity(2 * order as usize);
        for k in 0..(2 * order as usize).max(phi + 1) {
            if k < phi {
                let mut v = vec![0i64; phi];
                v[k] = 1;
                red.push(v);
            } else {
                // ζ^k = ζ · ζ^{k-1}
                let prev = &red[k - 1];
                let mut v = vec![0i64; phi];
                for i in 0..phi - 1 {
                    v[i + 1] = prev[i];
                }
                let top = prev[phi - 1];
                if top != 0 {
                    for i in 0..phi {
                        v[i] -= top * poly[i];
                    }
                }
                red.push(v);
            }
        }
        Ctx { order, phi, red }
    }

    fn get(order: u32) -> Rc<Ctx> {
        thread_local! {
            static CTX: RefCell<HashMap<u32, Rc<Ctx>>> = RefCell::new(HashMap::new());
        }
        CTX.with(|c| {
            c.borrow_mut()
                .entry(order)
                .or_insert_with(|| Rc::new(Ctx::build(order)))
                .clone()
        })
    }

    fn power(&self, k: usize) -> &[i64] {
        &self.red[k % self.order as usize]
    }
}

/// An element of Q(ζ_N) in canonical reduced form.
#[derive(Clone, Debug)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<Q>,
}

impl CycNum {
    /// Builds Σ c_k ζ_N^k from an arbitrary-length coefficient list.
    pub fn from_coeffs(order: u32, coeffs: &[Q]) -> Result<CycNum> {
        if order == 0 {
            return invalid("cyclotomic order must be positive");
        }
        let ctx = Ctx::get(order);
        let mut out = vec![Q::zero(); ctx.phi];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &r) in ctx.power(k).iter().enumerate() {
                if r != 0 {
                    out[i] += c * Q::from_integer(BigInt::from(r));
                }
            }
        }
        Ok(CycNum { order, coeffs: out })
    }

    pub fn zero() -> CycNum {
        CycNum { order: 1, coeffs: vec![Q::zero()] }
    }

    pub fn one() -> CycNum {
        CycNum { order: 1, coeffs: vec![Q::one()] }
    }

    pub fn from_rational(q: Q) -> CycNum {
        CycNum { order: 1, coeffs: vec![q] }
    }

    pub fn from_int(n: i64) -> CycNum {
        CycNum::from_rational(int(n))
    }

    /// ζ_N^k.
    pub fn root_of_unity(order: u32, k: i64) -> Result<CycNum> {
        if order == 0 {
            return invalid("root_of_unity: N must be positive");
        }
        let ctx = Ctx::get(order);
        let k = k.rem_euclid(order as i64) as usize;
        Ok(CycNum {
            order,
            coeffs: ctx.power(k).iter().map(|&r| int(r)).collect(),
        })
    }

    /// e^{πi·t} for rational t.
    pub fn exp_pi_i(t: &Q) -> CycNum {
        // e^{πi n/d} = ζ_{2d}^n
        let n = t.numer();
        let d = t.denom();
        let order = (d * BigInt::from(2)).to_u32().expect("denominator too large");
        let k = n.mod_floor(&BigInt::from(order)).to_i64().unwrap();
        CycNum::root_of_unity(order, k).unwrap()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embeds into Q(ζ_m); requires order | m.
    pub fn lift(&self, m: u32) -> CycNum {
        if m == self.order {
            return self.clone();
        }
        assert!(m % self.order == 0, "lift: {} does not divide {}", self.order, m);
        if let Some(q) = self.as_rational() {
            let ctx = Ctx::get(m);
            let mut coeffs = vec![Q::zero(); ctx.phi];
            coeffs[0] = q;
            return CycNum { order: m, coeffs };
        }
        let step = (m / self.order) as usize;
        let ctx = Ctx::get(m);
        let mut out = vec![Q::zero(); ctx.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &r) in ctx.power(k * step).iter().enumerate() {
                if r != 0 {
                    out[i] += c * int(r);
                }
            }
        }
        CycNum { order: m, coeffs: out }
    }

    fn common(a: &CycNum, b: &CycNum) -> u32 {
        if a.order == b.order {
            a.order
        } else {
            a.order.lcm(&b.order)
        }
    }

    fn add_ref(&self, other: &CycNum) -> CycNum {
        if self.order == other.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return CycNum { order: self.order, coeffs };
        }
        if let Some(q) = other.as_rational() {
            let mut r = self.clone();
            r.coeffs[0] += q;
            return r;
        }
        if let Some(q) = self.as_rational() {
            let mut r = other.clone();
            r.coeffs[0] += q;
            return r;
        }
        let m = CycNum::common(self, other);
        self.lift(m).add_ref(&other.lift(m))
    }

    fn mul_ref(&self, other: &CycNum) -> CycNum {
        if let Some(q) = other.as_rational() {
            if q.is_zero() {
                return CycNum::zero();
            }
            return CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| c * &q).collect() };
        }
        if let Some(q) = self.as_rational() {
            if q.is_zero() {
                return CycNum::zero();
            }
            return CycNum { order: other.order, coeffs: other.coeffs.iter().map(|c| c * &q).collect() };
        }
        if self.order != other.order {
            let m = CycNum::common(self, other);
            return self.lift(m).mul_ref(&other.lift(m));
        }
        let ctx = Ctx::get(self.order);
        let phi = ctx.phi;
        let mut prod = vec![Q::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Q> = prod[..phi].to_vec();
        for k in phi..prod.len() {
            if prod[k].is_zero() {
                continue;
            }
            for (i, &r) in ctx.red[k].iter().enumerate() {
                if r != 0 {
                    out[i] += &prod[k] * int(r);
                }
            }
        }
        CycNum { order: self.order, coeffs: out }
    }

    /// Multiplicative inverse; zero is an error.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(CycNum::from_rational(q.recip()));
        }
        // Solve (multiplication by self) · x = 1 over Q.
        let ctx = Ctx::get(self.order);
        let phi = ctx.phi;
        let mut m: Vec<Vec<Q>> = vec![vec![Q::zero(); phi + 1]; phi];
        for j in 0..phi {
            let mut e = vec![Q::zero(); phi];
            e[j] = Q::one();
            let col = self.mul_ref(&CycNum { order: self.order, coeffs: e });
            for i in 0..phi {
                m[i][j] = col.coeffs[i].clone();
            }
        }
        m[0][phi] = Q::one();
        for c in 0..phi {
            let p = (c..phi).find(|&r| !m[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
            m.swap(c, p);
            let piv = m[c][c].clone();
            for x in m[c].iter_mut() {
                *x /= &piv;
            }
            for r in 0..phi {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=phi {
                        let t = &m[c][k] * &f;
                        m[r][k] -= t;
                    }
                }
            }
        }
        Ok(CycNum { order: self.order, coeffs: m.into_iter().map(|row| row[phi].clone()).collect() })
    }

    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Floating-point evaluation at ζ_N = exp(2πi/N).
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.order as f64;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// If this is a root of unity ζ_n^k (n minimal, 0 <= k < n), returns (n, k).
    pub fn as_root_of_unity(&self) -> Option<(u32, u32)> {
        let m = self.order.lcm(&2);
        let lifted = self.lift(m);
        for k in 0..m {
            let z = CycNum::root_of_unity(m, k as i64).unwrap();
            if z == lifted {
                let g = (k as u32).gcd(&m);
                return Some((m / g, k / g));
            }
        }
        None
    }

    /// Short label for roots of unity: "1", "zeta8", "zeta8^3".
    pub fn root_label(&self) -> Option<String> {
        self.as_root_of_unity().map(|(n, k)| match (n, k) {
            (1, _) => "1".to_string(),
            (n, 1) => format!("zeta{n}"),
            (n, k) => format!("zeta{n}^{k}"),
        })
    }

    /// Text form "a0 + a1*z + a2*z^2" with z = ζ_N.
    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = fmt_rational(c);
            parts.push(match k {
                0 => cs,
                1 => format!("{cs}*z"),
                _ => format!("{cs}*z^{k}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self) -> CycJson {
        CycJson {
            order: self.order,
            coeffs: self.coeffs.iter().map(fmt_rational).collect(),
        }
    }

    pub fn from_json(j: &CycJson) -> Result<CycNum> {
        let coeffs = j.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        CycNum::from_coeffs(j.order, &coeffs)
    }
}

/// Serialized form {order, coeffs} with exact rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycJson {
    pub order: u32,
    pub coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CycJson::deserialize(d)?;
        CycNum::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &CycNum) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let m = CycNum::common(self, other);
        self.lift(m).coeffs == other.lift(m).coeffs
    }
}

impl Eq for CycNum {}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> CycNum {
        CycNum::from_int(n)
    }
}

impl From<Q> for CycNum {
    fn from(q: Q) -> CycNum {
        CycNum::from_rational(q)
    }
}

impl Add<&CycNum> for &CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        self.add_ref(o)
    }
}
impl Add for CycNum {
    type Output = CycNum;
    fn add(self, o: CycNum) -> CycNum {
        self.add_ref(&o)
    }
}
impl Sub<&CycNum> for &CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        self.add_ref(&-o)
    }
}
impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, o: CycNum) -> CycNum {
        self.add_ref(&-o)
    }
}
impl Mul<&CycNum> for &CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        self.mul_ref(o)
    }
}
impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, o: CycNum) -> CycNum {
        self.mul_ref(&o)
    }
}
impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}
impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}
impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, o: &CycNum) {
        if self.order == o.order {
            for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
                if !b.is_zero() {
                    *a += b;
                }
            }
        } else {
            *self = self.add_ref(o);
        }
    }
}
impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, o: &CycNum) {
        if self.order == o.order {
            for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
                if !b.is_zero() {
                    *a -= b;
                }
            }
        } else {
            *self = self.add_ref(&-o);
        }
    }
}
impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, o: &CycNum) {
        *self = self.mul_ref(o);
    }
}

/// [n]_q = 1 + q + … + q^{n-1}.
pub fn q_int(n: u32, q: &CycNum) -> CycNum {
    let mut acc = CycNum::zero();
    let mut pw = CycNum::one();
    for _ in 0..n {
        acc += &pw;
        pw = &pw * q;
    }
    acc
}

/// [n]_q! = [1]_q ⋯ [n]_q.
pub fn q_factorial(n: u32, q: &CycNum) -> CycNum {
    (1..=n).fold(CycNum::one(), |acc, k| &acc * &q_int(k, q))
}

/// Gauss binomial via [n,k] = [n-1,k-1] + q^k [n-1,k]; never divides.
pub fn gauss_binomial(n: u32, k: u32, q: &CycNum) -> Result<CycNum> {
    if k > n {
        return invalid(format!("gauss_binomial: k = {k} exceeds n = {n}"));
    }
    Ok(gauss_row(n, q).swap_remove(k as usize))
}

/// The full row [n,0]_q … [n,n]_q.
pub fn gauss_row(n: u32, q: &CycNum) -> Vec<CycNum> {
    let qpow: Vec<CycNum> = {
        let mut v = vec![CycNum::one()];
        for i in 1..=n {
            let next = &v[i as usize - 1] * q;
            v.push(next);
        }
        v
    };
    let mut row = vec![CycNum::one()];
    for m in 1..=n as usize {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let left = if k >= 1 { row[k - 1].clone() } else { CycNum::zero() };
            let right = if k < m { &qpow[k] * &row[k] } else { CycNum::zero() };
            next.push(left + right);
        }
        row = next;
    }
    row
}

/// (q^t - q^{-t})/(q - q^{-1}) for q = e^{πi/p} and rational t.
pub fn sym_q_at(p: u32, t: &Q) -> Result<CycNum> {
    let base = rat(1, p as i64);
    let qt = CycNum::exp_pi_i(&(t * &base));
    let qmt = CycNum::exp_pi_i(&(-(t * &base)));
    let q = CycNum::exp_pi_i(&base);
    let qi = CycNum::exp_pi_i(&-base);
    let den = &q - &qi;
    Ok(&(&qt - &qmt) * &den.inv()?)
}
