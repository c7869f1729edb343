//! The commutative Laurent ring U0 = k[K_i^{+-1}, L_i^{+-1}], weight
//! characters on it, normalization of determinants up to a scalar, and the
//! two central quotient specializations.

use std::collections::BTreeMap;
use std::fmt;

use crate::bicharacter::Weight;
use crate::error::{Result, ShapError};
use crate::exactfield::FieldElem;
use crate::intmat::reduce_mod_lattice;

/// K_beta L_gamma. The derived ordering (kexp lexicographically, then lexp)
/// is the normalization order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct U0Monomial {
    pub kexp: Weight,
    pub lexp: Weight,
}

impl U0Monomial {
    pub fn one(rank: usize) -> Self {
        U0Monomial { kexp: Weight::zero(rank), lexp: Weight::zero(rank) }
    }

    pub fn k(beta: Weight) -> Self {
        let rank = beta.rank();
        U0Monomial { kexp: beta, lexp: Weight::zero(rank) }
    }

    pub fn l(gamma: Weight) -> Self {
        let rank = gamma.rank();
        U0Monomial { kexp: Weight::zero(rank), lexp: gamma }
    }

    pub fn mul(&self, other: &U0Monomial) -> U0Monomial {
        U0Monomial { kexp: self.kexp.add(&other.kexp), lexp: self.lexp.add(&other.lexp) }
    }

    pub fn is_one(&self) -> bool {
        self.kexp.is_zero() && self.lexp.is_zero()
    }
}

impl fmt::Display for U0Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut part = |f: &mut fmt::Formatter<'_>, sym: &str, w: &Weight| -> fmt::Result {
            for (i, &e) in w.coords.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}{}", sym, i + 1)?;
                if e != 1 {
                    write!(f, "^{}", e)?;
                }
            }
            Ok(())
        };
        part(f, "K", &self.kexp)?;
        part(f, "L", &self.lexp)
    }
}

/// Element of U0 in canonical form: a term map with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct U0Poly {
    pub terms: BTreeMap<U0Monomial, FieldElem>,
}

impl U0Poly {
    pub fn zero() -> Self {
        U0Poly { terms: BTreeMap::new() }
    }

    pub fn one(rank: usize, order: u64) -> Self {
        Self::from_term(U0Monomial::one(rank), FieldElem::one(order))
    }

    pub fn from_term(m: U0Monomial, c: FieldElem) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: U0Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn add(&self, other: &U0Poly) -> U0Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> U0Poly {
        U0Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &U0Poly) -> U0Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElem) -> U0Poly {
        if c.is_zero() {
            return Self::zero();
        }
        U0Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect() }
    }

    /// Multiply by the single term c * m.
    pub fn term_mul(&self, m: &U0Monomial, c: &FieldElem) -> U0Poly {
        if c.is_zero() {
            return Self::zero();
        }
        U0Poly { terms: self.terms.iter().map(|(mm, x)| (mm.mul(m), x.mul(c))).collect() }
    }

    pub fn mul(&self, other: &U0Poly) -> U0Poly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (mm, cc) in &other.terms {
                out.add_term(m.mul(mm), c.mul(cc));
            }
        }
        out
    }

    pub fn leading(&self) -> Option<(&U0Monomial, &FieldElem)> {
        self.terms.iter().next_back()
    }

    /// Divide by the coefficient of the lexicographically greatest monomial,
    /// making the result a canonical representative modulo k^x.
    pub fn normalize_unit(&self) -> Result<U0Poly> {
        let (_, lead) = self.leading().ok_or(ShapError::NormalizeZero)?;
        let inv = lead.inv()?;
        Ok(self.scale(&inv))
    }

    /// Exact division in the Laurent ring; None when the division has a
    /// remainder. Each round peels off the lex-greatest remaining quotient
    /// term. Termination: Newton polytopes add under multiplication, so an
    /// exact quotient's exponents lie in the box min(self) - max(divisor);
    /// a candidate below that box proves inexactness.
    pub fn div_exact(&self, divisor: &U0Poly) -> Option<U0Poly> {
        let (dm, dc) = divisor.leading()?;
        let dm = dm.clone();
        let dc_inv = dc.inv().ok()?;
        if self.is_zero() {
            return Some(U0Poly::zero());
        }
        let rank = dm.kexp.rank();
        let mut lower = vec![i64::MAX; 2 * rank];
        for m in self.terms.keys() {
            for i in 0..rank {
                lower[i] = lower[i].min(m.kexp.coords[i]);
                lower[rank + i] = lower[rank + i].min(m.lexp.coords[i]);
            }
        }
        let mut dmax = vec![i64::MIN; 2 * rank];
        for m in divisor.terms.keys() {
            for i in 0..rank {
                dmax[i] = dmax[i].max(m.kexp.coords[i]);
                dmax[rank + i] = dmax[rank + i].max(m.lexp.coords[i]);
            }
        }
        for i in 0..2 * rank {
            lower[i] -= dmax[i];
        }
        let mut rem = self.clone();
        let mut quo = U0Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = U0Monomial {
                kexp: rm.kexp.sub(&dm.kexp),
                lexp: rm.lexp.sub(&dm.lexp),
            };
            let below = (0..rank).any(|i| qm.kexp.coords[i] < lower[i])
                || (0..rank).any(|i| qm.lexp.coords[i] < lower[rank + i]);
            if below {
                return None;
            }
            let qc = rc.mul(&dc_inv);
            quo.add_term(qm.clone(), qc.clone());
            rem = rem.sub(&divisor.term_mul(&qm, &qc));
        }
        Some(quo)
    }
}

impl fmt::Display for U0Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // leading monomial first
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let simple_one = c.is_one();
            if m.is_one() {
                write!(f, "({})", c)?;
            } else if simple_one {
                write!(f, "{}", m)?;
            } else {
                write!(f, "({})*{}", c, m)?;
            }
        }
        Ok(())
    }
}

/// A character Lambda on U0, given by its nonzero values on the K_i and L_i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightCharacter {
    pub kvals: Vec<FieldElem>,
    pub lvals: Vec<FieldElem>,
}

impl WeightCharacter {
    pub fn new(kvals: Vec<FieldElem>, lvals: Vec<FieldElem>) -> Result<Self> {
        if kvals.len() != lvals.len() {
            return Err(ShapError::BadInput("character value lists differ in length".into()));
        }
        if kvals.iter().chain(lvals.iter()).any(|v| v.is_zero()) {
            return Err(ShapError::BadInput("character values must be nonzero".into()));
        }
        Ok(WeightCharacter { kvals, lvals })
    }

    pub fn rank(&self) -> usize {
        self.kvals.len()
    }

    pub fn order(&self) -> u64 {
        self.kvals
            .iter()
            .chain(self.lvals.iter())
            .fold(2, |acc, v| num_integer::lcm(acc, v.order()))
    }

    /// Lambda(K_beta) = prod Lambda(K_i)^{beta_i}.
    pub fn eval_k(&self, beta: &Weight) -> FieldElem {
        let mut acc = FieldElem::one(self.order());
        for (i, &e) in beta.coords.iter().enumerate() {
            if e != 0 {
                acc = acc.mul(&self.kvals[i].powi(e).expect("character values are nonzero"));
            }
        }
        acc
    }

    pub fn eval_l(&self, gamma: &Weight) -> FieldElem {
        let mut acc = FieldElem::one(self.order());
        for (i, &e) in gamma.coords.iter().enumerate() {
            if e != 0 {
                acc = acc.mul(&self.lvals[i].powi(e).expect("character values are nonzero"));
            }
        }
        acc
    }

    pub fn eval_monomial(&self, m: &U0Monomial) -> FieldElem {
        self.eval_k(&m.kexp).mul(&self.eval_l(&m.lexp))
    }
}

/// Lambda applied termwise: the unique algebra map U0 -> k extending Lambda.
pub fn char_eval(lambda: &WeightCharacter, p: &U0Poly) -> FieldElem {
    let mut acc = FieldElem::zero(lambda.order());
    for (m, c) in &p.terms {
        acc = acc.add(&c.mul(&lambda.eval_monomial(m)));
    }
    acc
}

/// Central quotient rules: send every L_i to K_i^{-1}, and for the small
/// quotient also reduce K-exponents modulo a lattice (stored as an HNF
/// basis, e.g. spanned by b(beta) * beta over the positive roots).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QuotientRules {
    KlOne,
    Small { lattice: Vec<Vec<i64>> },
}

pub fn quotient_specialize(p: &U0Poly, rules: &QuotientRules) -> U0Poly {
    let mut out = U0Poly::zero();
    for (m, c) in &p.terms {
        let mut kexp = m.kexp.sub(&m.lexp);
        if let QuotientRules::Small { lattice } = rules {
            kexp = Weight::from_coords(reduce_mod_lattice(&kexp.coords, lattice));
        }
        let nm = U0Monomial { kexp, lexp: Weight::zero(m.lexp.rank()) };
        out.add_term(nm, c.clone());
    }
    out
}
