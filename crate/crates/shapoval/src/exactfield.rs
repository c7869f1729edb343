//! Exact arithmetic in Q(zeta_N), in the rational-function field Q(zeta_N)(z),
//! and in the unit group c * zeta^e * z^a that carries bicharacter values.
//!
//! All representations are canonical: cyclotomic elements are reduced modulo
//! the N-th cyclotomic polynomial, rational functions are gcd-reduced with a
//! monic denominator, and units keep a strictly positive rational part (signs
//! are absorbed into zeta^(N/2), which is why N is forced even).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Result, ShapError};

pub fn totient(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

// Polynomials over Q as coefficient vectors, lowest degree first, no
// trailing zeros. Only used to build and invert modulo Phi_N.

fn rtrim(v: &mut Vec<BigRational>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn rmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    rtrim(&mut out);
    out
}

fn rsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, cb) in b.iter().enumerate() {
        out[i] -= cb;
    }
    rtrim(&mut out);
    out
}

fn rdivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem = a.to_vec();
    rtrim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = &rem[dr] / lead;
        quo[dr - db] = c.clone();
        for j in 0..=db {
            let t = &c * &b[j];
            rem[dr - db + j] -= t;
        }
        // the leading term cancels exactly, so rtrim strictly shortens rem
        rtrim(&mut rem);
    }
    rtrim(&mut quo);
    (quo, rem)
}

/// Cyclotomic polynomial Phi_n over Q.
fn cyclotomic_polynomial(n: u64) -> Vec<BigRational> {
    // (x^n - 1) divided by Phi_d for every proper divisor d of n
    let mut memo: HashMap<u64, Vec<BigRational>> = HashMap::new();
    memo.insert(1, vec![-rat(1), rat(1)]);
    for m in 2..=n {
        if n % m != 0 {
            continue;
        }
        let mut num = vec![BigRational::zero(); m as usize + 1];
        num[0] = -rat(1);
        num[m as usize] = rat(1);
        let mut acc = num;
        for d in 1..m {
            if m % d == 0 {
                let phi_d = memo[&d].clone();
                let (q, r) = rdivrem(&acc, &phi_d);
                assert!(r.is_empty(), "cyclotomic division must be exact");
                acc = q;
            }
        }
        memo.insert(m, acc);
    }
    memo.remove(&n).expect("n divides n")
}

struct CycTable {
    deg: usize,
    phi: Vec<BigRational>,
}

static TABLES: Lazy<Mutex<HashMap<u64, Arc<CycTable>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn table(n: u64) -> Arc<CycTable> {
    let mut guard = TABLES.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| {
            let phi = cyclotomic_polynomial(n);
            Arc::new(CycTable { deg: phi.len() - 1, phi })
        })
        .clone()
}

/// Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1),
/// reduced modulo Phi_N. Equality of coefficient vectors is equality in the
/// field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cyclotomic {
    pub order: u64,
    pub coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Self {
        let deg = table(order).deg;
        Cyclotomic { order, coeffs: vec![BigRational::zero(); deg] }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u64, r: BigRational) -> Self {
        let mut c = Self::zero(order);
        c.coeffs[0] = r;
        c
    }

    pub fn from_int(order: u64, i: i64) -> Self {
        Self::from_rational(order, rat(i))
    }

    /// zeta_N^e, reduced.
    pub fn zeta(order: u64, e: i64) -> Self {
        let e = e.rem_euclid(order as i64) as usize;
        let tab = table(order);
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        Self::reduce_raw(order, &tab, raw)
    }

    fn reduce_raw(order: u64, tab: &CycTable, mut raw: Vec<BigRational>) -> Self {
        // long division by the monic Phi_N
        while raw.len() > tab.deg {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = raw.len() - tab.deg;
            for j in 0..tab.deg {
                let t = &top * &tab.phi[j];
                raw[base + j] -= t;
            }
        }
        raw.resize(tab.deg, BigRational::zero());
        Cyclotomic { order, coeffs: raw }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in Q(zeta_M) for N | M via zeta_N = zeta_M^(M/N).
    pub fn promote(&self, m: u64) -> Self {
        if m == self.order {
            return self.clone();
        }
        assert!(m % self.order == 0, "promotion target must be a multiple of the order");
        let step = (m / self.order) as usize;
        let tab = table(m);
        let mut raw = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[k * step] = c.clone();
            }
        }
        Self::reduce_raw(m, &tab, raw)
    }

    fn aligned(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = num_integer::lcm(a.order, b.order);
        (a.promote(m), b.promote(m))
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Self::aligned(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Self::aligned(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Cyclotomic {
        let mut a = self.clone();
        for x in a.coeffs.iter_mut() {
            *x = -x.clone();
        }
        a
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Self::aligned(self, other);
        let tab = table(a.order);
        let raw = rmul(&a.coeffs, &b.coeffs);
        Self::reduce_raw(a.order, &tab, raw)
    }

    pub fn scale(&self, r: &BigRational) -> Cyclotomic {
        let mut a = self.clone();
        for x in a.coeffs.iter_mut() {
            *x *= r;
        }
        a
    }

    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(ShapError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, r.recip()));
        }
        // extended Euclid against Phi_N; the gcd is a nonzero constant
        // because Phi_N is irreducible over Q
        let tab = table(self.order);
        let mut r0 = tab.phi.clone();
        let mut r1 = self.coeffs.clone();
        rtrim(&mut r1);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = rdivrem(&r0, &r1);
            let s = rsub(&s0, &rmul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is the gcd (a constant), s0 * self = r0 mod Phi
        assert!(r0.len() == 1, "cyclotomic gcd must be a unit");
        let g = r0[0].clone();
        let mut inv = s0;
        for c in inv.iter_mut() {
            *c /= &g;
        }
        Ok(Self::reduce_raw(self.order, &tab, inv))
    }

    pub fn div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if k == 1 {
                    write!(f, "zeta")?;
                } else {
                    write!(f, "zeta^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

/// Polynomial in z over Q(zeta_N); coeffs[i] multiplies z^i, no trailing
/// zeros, empty vector is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycPoly {
    pub order: u64,
    pub coeffs: Vec<Cyclotomic>,
}

impl CycPoly {
    pub fn zero(order: u64) -> Self {
        CycPoly { order, coeffs: Vec::new() }
    }

    pub fn one(order: u64) -> Self {
        CycPoly { order, coeffs: vec![Cyclotomic::one(order)] }
    }

    pub fn from_cyc(c: Cyclotomic) -> Self {
        let order = c.order;
        let mut p = CycPoly { order, coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn monomial(c: Cyclotomic, k: usize) -> Self {
        let order = c.order;
        if c.is_zero() {
            return Self::zero(order);
        }
        let mut coeffs = vec![Cyclotomic::zero(order); k + 1];
        coeffs[k] = c;
        CycPoly { order, coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Cyclotomic> {
        self.coeffs.last()
    }

    pub fn promote(&self, m: u64) -> Self {
        if m == self.order {
            return self.clone();
        }
        CycPoly { order: m, coeffs: self.coeffs.iter().map(|c| c.promote(m)).collect() }
    }

    fn aligned(a: &CycPoly, b: &CycPoly) -> (CycPoly, CycPoly) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = num_integer::lcm(a.order, b.order);
        (a.promote(m), b.promote(m))
    }

    pub fn add(&self, other: &CycPoly) -> CycPoly {
        let (mut a, b) = Self::aligned(self, other);
        if a.coeffs.len() < b.coeffs.len() {
            a.coeffs.resize(b.coeffs.len(), Cyclotomic::zero(a.order));
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            a.coeffs[i] = a.coeffs[i].add(c);
        }
        a.trim();
        a
    }

    pub fn sub(&self, other: &CycPoly) -> CycPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycPoly {
        CycPoly { order: self.order, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &CycPoly) -> CycPoly {
        let (a, b) = Self::aligned(self, other);
        if a.is_zero() || b.is_zero() {
            return Self::zero(a.order);
        }
        let mut out = vec![Cyclotomic::zero(a.order); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&ca.mul(cb));
            }
        }
        let mut p = CycPoly { order: a.order, coeffs: out };
        p.trim();
        p
    }

    pub fn mul_cyc(&self, c: &Cyclotomic) -> CycPoly {
        let mut p = CycPoly {
            order: num_integer::lcm(self.order, c.order),
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        };
        p.trim();
        p
    }

    /// Multiply by z^k.
    pub fn shift_z(&self, k: usize) -> CycPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Cyclotomic::zero(self.order); k];
        coeffs.extend(self.coeffs.iter().cloned());
        CycPoly { order: self.order, coeffs }
    }

    pub fn divrem(&self, other: &CycPoly) -> Result<(CycPoly, CycPoly)> {
        if other.is_zero() {
            return Err(ShapError::DivisionByZero);
        }
        let (mut rem, b) = Self::aligned(self, other);
        let db = b.degree().unwrap();
        let lead_inv = b.leading().unwrap().inv()?;
        if rem.degree().map_or(true, |d| d < db) {
            return Ok((Self::zero(rem.order), rem));
        }
        let mut quo = vec![Cyclotomic::zero(rem.order); rem.coeffs.len() - db];
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let c = rem.coeffs[dr].mul(&lead_inv);
            quo[dr - db] = c.clone();
            for j in 0..=db {
                let t = c.mul(&b.coeffs[j]);
                rem.coeffs[dr - db + j] = rem.coeffs[dr - db + j].sub(&t);
            }
            rem.trim();
        }
        let mut q = CycPoly { order: rem.order, coeffs: quo };
        q.trim();
        Ok((q, rem))
    }

    pub fn gcd(&self, other: &CycPoly) -> CycPoly {
        let (mut a, mut b) = Self::aligned(self, other);
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        if a.is_zero() {
            return a;
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> CycPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                if l.is_rational() && l.as_rational().unwrap().is_one() {
                    self.clone()
                } else {
                    self.mul_cyc(&l.inv().expect("leading coefficient is nonzero"))
                }
            }
        }
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let simple = c.is_rational();
            if k == 0 {
                if simple {
                    write!(f, "{}", c)?;
                } else {
                    write!(f, "({})", c)?;
                }
            } else {
                let is_one = simple && c.as_rational().unwrap().is_one();
                if !is_one {
                    if simple {
                        write!(f, "{}*", c)?;
                    } else {
                        write!(f, "({})*", c)?;
                    }
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

/// Element of Q(zeta_N)(z) as a reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    pub num: CycPoly,
    pub den: CycPoly,
}

pub type FieldElem = RationalFunction;

impl RationalFunction {
    pub fn new(num: CycPoly, den: CycPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(ShapError::DivisionByZero);
        }
        let (num, den) = CycPoly::aligned(&num, &den);
        if num.is_zero() {
            return Ok(RationalFunction { num: CycPoly::zero(den.order), den: CycPoly::one(den.order) });
        }
        let g = num.gcd(&den);
        let (num, r1) = num.divrem(&g).expect("gcd nonzero");
        debug_assert!(r1.is_zero());
        let (den, r2) = den.divrem(&g).expect("gcd nonzero");
        debug_assert!(r2.is_zero());
        let lead_inv = den.leading().unwrap().inv()?;
        Ok(RationalFunction { num: num.mul_cyc(&lead_inv), den: den.mul_cyc(&lead_inv) })
    }

    pub fn zero(order: u64) -> Self {
        RationalFunction { num: CycPoly::zero(order), den: CycPoly::one(order) }
    }

    pub fn one(order: u64) -> Self {
        RationalFunction { num: CycPoly::one(order), den: CycPoly::one(order) }
    }

    pub fn from_cyc(c: Cyclotomic) -> Self {
        let order = c.order;
        RationalFunction { num: CycPoly::from_cyc(c), den: CycPoly::one(order) }
    }

    pub fn from_rational(order: u64, r: BigRational) -> Self {
        Self::from_cyc(Cyclotomic::from_rational(order, r))
    }

    pub fn from_int(order: u64, i: i64) -> Self {
        Self::from_rational(order, rat(i))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn order(&self) -> u64 {
        self.num.order
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("denominators are nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("denominators are nonzero")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(ShapError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(self.order()));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(base.order());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_is_one = self.den.degree() == Some(0)
            && self.den.leading().map_or(false, |c| c.is_rational() && c.as_rational().unwrap().is_one());
        if den_is_one {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// The unit c * zeta_N^e * z^a with c a positive rational. Closed under
/// multiplication and inversion; embeds into RationalFunction.
#[derive(Clone, Eq, Debug)]
pub struct UnitValue {
    pub order: u64,
    pub rat: BigRational,
    pub zeta_exp: u64,
    pub z_exp: i64,
}

impl UnitValue {
    /// Normalizing constructor. Odd orders are doubled (rescaling the zeta
    /// exponent) so that -1 = zeta^(N/2) is always available; a negative
    /// rational part moves its sign there.
    pub fn new(order: u64, rat: BigRational, zeta_exp: i64, z_exp: i64) -> Result<Self> {
        if rat.is_zero() {
            return Err(ShapError::BadInput("unit with zero rational part".into()));
        }
        let (order, zeta_exp) = if order % 2 == 1 { (order * 2, zeta_exp * 2) } else { (order, zeta_exp) };
        let mut zeta_exp = zeta_exp.rem_euclid(order as i64) as u64;
        let rat = if rat.is_negative() {
            zeta_exp = (zeta_exp + order / 2) % order;
            -rat
        } else {
            rat
        };
        Ok(UnitValue { order, rat, zeta_exp, z_exp })
    }

    pub fn one(order: u64) -> Self {
        Self::new(order, BigRational::one(), 0, 0).unwrap()
    }

    pub fn from_int(order: u64, i: i64) -> Result<Self> {
        Self::new(order, rat(i), 0, 0)
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.zeta_exp == 0 && self.z_exp == 0
    }

    pub fn promote(&self, m: u64) -> Self {
        if m == self.order {
            return self.clone();
        }
        assert!(m % self.order == 0 && m % 2 == 0);
        UnitValue {
            order: m,
            rat: self.rat.clone(),
            zeta_exp: self.zeta_exp * (m / self.order),
            z_exp: self.z_exp,
        }
    }

    fn aligned(a: &UnitValue, b: &UnitValue) -> (UnitValue, UnitValue) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = num_integer::lcm(a.order, b.order);
        (a.promote(m), b.promote(m))
    }

    pub fn mul(&self, other: &UnitValue) -> UnitValue {
        let (a, b) = Self::aligned(self, other);
        UnitValue {
            order: a.order,
            rat: &a.rat * &b.rat,
            zeta_exp: (a.zeta_exp + b.zeta_exp) % a.order,
            z_exp: a.z_exp + b.z_exp,
        }
    }

    pub fn inv(&self) -> UnitValue {
        UnitValue {
            order: self.order,
            rat: self.rat.recip(),
            zeta_exp: (self.order - self.zeta_exp) % self.order,
            z_exp: -self.z_exp,
        }
    }

    pub fn pow(&self, e: i64) -> UnitValue {
        if e == 0 {
            return Self::one(self.order);
        }
        let rat = rational_pow(&self.rat, e);
        let ze = (self.zeta_exp as i64 * e).rem_euclid(self.order as i64) as u64;
        UnitValue { order: self.order, rat, zeta_exp: ze, z_exp: self.z_exp * e }
    }

    /// Multiplicative order, None when infinite. Finite exactly when the
    /// rational part is 1 and there is no z power.
    pub fn unit_order(&self) -> Option<u64> {
        if self.rat.is_one() && self.z_exp == 0 {
            Some(self.order / num_integer::gcd(self.order, self.zeta_exp))
        } else {
            None
        }
    }

    pub fn to_field(&self) -> RationalFunction {
        let c = Cyclotomic::zeta(self.order, self.zeta_exp as i64).scale(&self.rat);
        let num_shift = self.z_exp.max(0) as usize;
        let den_shift = (-self.z_exp).max(0) as usize;
        let num = CycPoly::monomial(c, num_shift);
        let den = CycPoly::monomial(Cyclotomic::one(self.order), den_shift);
        RationalFunction::new(num, den).expect("unit denominators are monomials")
    }
}

impl PartialEq for UnitValue {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.rat == b.rat && a.zeta_exp == b.zeta_exp && a.z_exp == b.z_exp
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.rat.is_one() {
            parts.push(format!("{}", self.rat));
        }
        if self.zeta_exp != 0 {
            if self.zeta_exp == 1 {
                parts.push("zeta".to_string());
            } else {
                parts.push(format!("zeta^{}", self.zeta_exp));
            }
        }
        if self.z_exp != 0 {
            if self.z_exp == 1 {
                parts.push("z".to_string());
            } else {
                parts.push(format!("z^{}", self.z_exp));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

pub fn rational_pow(r: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let base = if e < 0 { r.recip() } else { r.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithKind {
    Add,
    Mul,
    Inv,
    Neg,
}

/// Dispatching entry point over the field operations. Inv and Neg are unary
/// and ignore the second argument.
pub fn field_arith(x: &RationalFunction, y: &RationalFunction, kind: ArithKind) -> Result<RationalFunction> {
    match kind {
        ArithKind::Add => Ok(x.add(y)),
        ArithKind::Mul => Ok(x.mul(y)),
        ArithKind::Inv => x.inv(),
        ArithKind::Neg => Ok(x.neg()),
    }
}

/// (n)_q = 1 + q + ... + q^(n-1) as a field element.
pub fn qnum(n: u64, q: &UnitValue) -> RationalFunction {
    let mut acc = RationalFunction::zero(q.order);
    for j in 0..n {
        acc = acc.add(&q.pow(j as i64).to_field());
    }
    acc
}

/// (n)!_q = (1)_q (2)_q ... (n)_q, with (0)!_q = 1.
pub fn qfact(n: u64, q: &UnitValue) -> RationalFunction {
    let mut acc = RationalFunction::one(q.order);
    for j in 1..=n {
        acc = acc.mul(&qnum(j, q));
    }
    acc
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QKind {
    Num,
    Fact,
}

pub fn qnum_qfact(n: u64, q: &UnitValue, kind: QKind) -> RationalFunction {
    match kind {
        QKind::Num => qnum(n, q),
        QKind::Fact => qfact(n, q),
    }
}

/// Gaussian binomial [m choose k]_q by the q-Pascal recursion
/// [m k] = [m-1 k-1] + q^k [m-1 k]. Polynomial in q, so root-of-unity
/// evaluation never divides by a vanishing q-factorial.
pub fn gauss_binomial(m: u64, k: u64, q: &UnitValue) -> RationalFunction {
    if k > m {
        return RationalFunction::zero(q.order);
    }
    let mut row = vec![RationalFunction::one(q.order)];
    for i in 1..=m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(RationalFunction::one(q.order));
        for j in 1..i as usize {
            let shifted = q.pow(j as i64).to_field().mul(&row[j]);
            next.push(row[j - 1].add(&shifted));
        }
        next.push(RationalFunction::one(q.order));
        row = next;
    }
    row[k as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(order: u64) -> RationalFunction {
        UnitValue::new(order, BigRational::one(), 0, 1).unwrap().to_field()
    }

    #[test]
    fn poly_identity_add() {
        // (z - 1) + 1 = z
        let n = 2;
        let zm1 = z(n).sub(&RationalFunction::one(n));
        assert_eq!(zm1.add(&RationalFunction::one(n)), z(n));
    }

    #[test]
    fn zeta4_squares_to_minus_one() {
        let i = UnitValue::new(4, BigRational::one(), 1, 0).unwrap();
        let sq = i.mul(&i);
        assert_eq!(sq, UnitValue::from_int(4, -1).unwrap());
        // and through the field embedding
        let m1 = Cyclotomic::from_int(4, -1);
        assert_eq!(sq.to_field(), RationalFunction::from_cyc(m1));
    }

    #[test]
    fn inv_has_monic_denominator() {
        let n = 2;
        let onez = RationalFunction::one(n).add(&z(n));
        let inv = onez.inv().unwrap();
        assert_eq!(inv.num, CycPoly::one(n));
        assert_eq!(inv.den, onez.num);
        assert!(inv.den.leading().unwrap().as_rational().unwrap().is_one());
    }

    #[test]
    fn unit_orders() {
        let zeta6sq = UnitValue::new(6, BigRational::one(), 2, 0).unwrap();
        assert_eq!(zeta6sq.unit_order(), Some(3));
        let zz = UnitValue::new(2, BigRational::one(), 0, 1).unwrap();
        assert_eq!(zz.unit_order(), None);
        assert_eq!(UnitValue::one(2).unit_order(), Some(1));
    }

    #[test]
    fn odd_order_is_doubled() {
        let zeta3 = UnitValue::new(3, BigRational::one(), 1, 0).unwrap();
        assert_eq!(zeta3.order, 6);
        assert_eq!(zeta3.zeta_exp, 2);
        assert_eq!(zeta3.unit_order(), Some(3));
    }

    #[test]
    fn qnum_vanishes_at_a_root_of_unity() {
        let zeta3 = UnitValue::new(3, BigRational::one(), 1, 0).unwrap();
        assert!(qnum(3, &zeta3).is_zero());
        assert!(!qnum(2, &zeta3).is_zero());
        assert!(!qnum(1, &zeta3).is_zero());
    }

    #[test]
    fn qfact_base_cases() {
        let qz = UnitValue::new(2, BigRational::one(), 0, 1).unwrap();
        assert!(qnum_qfact(0, &qz, QKind::Fact).is_one());
        // (2)!_z = 1 + z
        let expect = RationalFunction::one(2).add(&z(2));
        assert_eq!(qnum_qfact(2, &qz, QKind::Fact), expect);
    }

    #[test]
    fn gauss_binomial_matches_factorial_ratio_generically() {
        let qz = UnitValue::new(2, BigRational::one(), 0, 1).unwrap();
        for m in 0..=5u64 {
            for k in 0..=m {
                let lhs = gauss_binomial(m, k, &qz);
                let rhs = qfact(m, &qz)
                    .div(&qfact(k, &qz).mul(&qfact(m - k, &qz)))
                    .unwrap();
                assert_eq!(lhs, rhs, "m={} k={}", m, k);
            }
        }
    }

    #[test]
    fn gauss_binomial_at_root_of_unity_is_finite() {
        let zeta4 = UnitValue::new(4, BigRational::one(), 1, 0).unwrap();
        // (4)!_q = 0 at q = zeta_4, yet [4 4]_q = 1 and [4 2]_q evaluates
        let b44 = gauss_binomial(4, 4, &zeta4);
        assert!(b44.is_one());
        let b42 = gauss_binomial(4, 2, &zeta4);
        // [4 2]_q = (1+q^2)(1+q+q^2) evaluated at q = i: (1-1)(...) = 0
        assert!(b42.is_zero());
    }

    #[test]
    fn cyclotomic_inverse_roundtrip() {
        let a = Cyclotomic::zeta(12, 5).add(&Cyclotomic::from_int(12, 2));
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv), Cyclotomic::one(12));
    }

    #[test]
    fn promotion_is_an_embedding() {
        let m1_at_2 = Cyclotomic::from_int(2, -1);
        let m1_at_6 = Cyclotomic::from_int(6, -1);
        assert_eq!(m1_at_2.promote(6), m1_at_6);
        // zeta_3 promoted to order 6 equals zeta_6^2
        let z3 = Cyclotomic::zeta(3, 1);
        assert_eq!(z3.promote(6), Cyclotomic::zeta(6, 2));
    }
}
