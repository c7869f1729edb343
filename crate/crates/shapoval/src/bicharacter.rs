//! Bicharacters on Z^I: evaluation, pullback along GL(Z^I), Cartan rows,
//! the reflections r_p, the bound function b, and the character rho.

use crate::error::{Result, ShapError};
use crate::exactfield::UnitValue;
use crate::intmat::IntMat;
use std::fmt;

/// Element of Z^I in the basis of simple roots.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight { coords: vec![0; rank] }
    }

    /// The simple root alpha_i (0-based index).
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coords[i] = 1;
        w
    }

    pub fn from_coords(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Weight {
        Weight { coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight { coords: self.coords.iter().map(|a| a * k).collect() }
    }

    /// |alpha| = sum of coordinates.
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&a| a == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.coords.iter().all(|&a| a >= 0)
    }

    /// Member of N0^I minus the origin.
    pub fn is_positive(&self) -> bool {
        self.is_nonneg() && !self.is_zero()
    }

    /// Componentwise comparison.
    pub fn leq(&self, other: &Weight) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// Bicharacter chi on Z^I determined by the matrix q_ij = chi(alpha_i, alpha_j).
/// All entries are normalized to one common even cyclotomic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bicharacter {
    pub rank: usize,
    pub order: u64,
    pub q: Vec<Vec<UnitValue>>,
}

impl Bicharacter {
    pub fn new(q: Vec<Vec<UnitValue>>) -> Result<Self> {
        let rank = q.len();
        if rank == 0 || q.iter().any(|row| row.len() != rank) {
            return Err(ShapError::BadInput("bicharacter matrix must be square and nonempty".into()));
        }
        let mut order = 2;
        for row in &q {
            for u in row {
                order = num_integer::lcm(order, u.order);
            }
        }
        let q = q
            .into_iter()
            .map(|row| row.into_iter().map(|u| u.promote(order)).collect())
            .collect();
        Ok(Bicharacter { rank, order, q })
    }

    /// chi^op(a, b) = chi(b, a).
    pub fn op(&self) -> Bicharacter {
        let mut q = self.q.clone();
        for i in 0..self.rank {
            for j in 0..self.rank {
                q[i][j] = self.q[j][i].clone();
            }
        }
        Bicharacter { rank: self.rank, order: self.order, q }
    }

    /// Entrywise inverse, chi^{-1}(a, b) = chi(a, b)^{-1}.
    pub fn inverse(&self) -> Bicharacter {
        let q = self.q.iter().map(|row| row.iter().map(|u| u.inv()).collect()).collect();
        Bicharacter { rank: self.rank, order: self.order, q }
    }
}

/// chi(a, b) = prod_{i,j} q_ij^{a_i b_j}.
pub fn eval(chi: &Bicharacter, a: &Weight, b: &Weight) -> UnitValue {
    let mut acc = UnitValue::one(chi.order);
    for i in 0..chi.rank {
        if a.coords[i] == 0 {
            continue;
        }
        for j in 0..chi.rank {
            let e = a.coords[i] * b.coords[j];
            if e != 0 {
                acc = acc.mul(&chi.q[i][j].pow(e));
            }
        }
    }
    acc
}

/// (w* chi)(a, b) = chi(w^{-1} a, w^{-1} b) for unimodular w.
pub fn pullback(chi: &Bicharacter, w: &IntMat) -> Result<Bicharacter> {
    if w.n != chi.rank {
        return Err(ShapError::BadInput("pullback matrix size mismatch".into()));
    }
    let winv = w.inverse_unimodular()?;
    let cols: Vec<Weight> = (0..chi.rank)
        .map(|i| Weight::from_coords(winv.apply(&Weight::unit(chi.rank, i).coords)))
        .collect();
    let q = (0..chi.rank)
        .map(|i| (0..chi.rank).map(|j| eval(chi, &cols[i], &cols[j])).collect())
        .collect();
    Bicharacter::new(q)
}

/// b(alpha): the order of chi(alpha, alpha) when it is a root of unity
/// different from 1, otherwise None (infinity; covers chi(alpha,alpha) = 1).
pub fn bound(chi: &Bicharacter, alpha: &Weight) -> Option<u64> {
    match eval(chi, alpha, alpha).unit_order() {
        Some(1) => None,
        Some(d) => Some(d),
        None => None,
    }
}

/// Row p of the Cartan matrix of chi. defined=false encodes that chi is not
/// p-finite; no exception, so classification can name the failing index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanRow {
    pub p: usize,
    pub entries: Vec<i64>,
    pub defined: bool,
}

/// c_pj = -min{m >= 0 | (m+1)_{q_pp} (q_pp^m q_pj q_jp - 1) = 0}, c_pp = 2.
///
/// The minimization loop caps at max(64, ord q_pp). When q_pp is a root of
/// unity of order d >= 2 the loop provably stops by m = d-1; with the cap
/// exhausted the row is reported undefined.
pub fn cartan_row(chi: &Bicharacter, p: usize) -> CartanRow {
    let qpp = &chi.q[p][p];
    let d = qpp.unit_order();
    let cap = d.map_or(64, |d| 64.max(d));
    let mut entries = vec![0i64; chi.rank];
    entries[p] = 2;
    for j in 0..chi.rank {
        if j == p {
            continue;
        }
        let prod = chi.q[p][j].mul(&chi.q[j][p]);
        let mut found = None;
        for m in 0..=cap {
            let qnum_vanishes = match d {
                Some(dd) if dd >= 2 => (m + 1) % dd == 0,
                _ => false,
            };
            if qnum_vanishes || qpp.pow(m as i64).mul(&prod).is_one() {
                found = Some(m as i64);
                break;
            }
        }
        match found {
            Some(m) => entries[j] = -m,
            None => return CartanRow { p, entries: Vec::new(), defined: false },
        }
    }
    CartanRow { p, entries, defined: true }
}

pub fn is_p_finite(chi: &Bicharacter, p: usize) -> bool {
    cartan_row(chi, p).defined
}

/// The reflection matrix sigma_p of chi: identity except row p, where
/// sigma_p(alpha_j) has been written columnwise; as a matrix acting on
/// coordinate vectors, S[p][j] = -c_pj for j != p and S[p][p] = -1.
pub fn sigma(chi: &Bicharacter, p: usize) -> Result<IntMat> {
    let row = cartan_row(chi, p);
    if !row.defined {
        return Err(ShapError::ReflectionUndefined { index: p });
    }
    let mut s = IntMat::identity(chi.rank);
    for j in 0..chi.rank {
        if j == p {
            s.set(p, p, -1);
        } else {
            s.set(p, j, -row.entries[j]);
        }
    }
    Ok(s)
}

/// r_p(chi) = sigma_p^* chi. Requires chi p-finite.
pub fn reflect(chi: &Bicharacter, p: usize) -> Result<Bicharacter> {
    let s = sigma(chi, p)?;
    // sigma_p is an involution, so the pullback inverts it for free
    pullback(chi, &s)
}

/// rho(alpha) = prod_i q_ii^{a_i}, the diagonal character.
pub fn rho(chi: &Bicharacter, alpha: &Weight) -> UnitValue {
    let mut acc = UnitValue::one(chi.order);
    for i in 0..chi.rank {
        if alpha.coords[i] != 0 {
            acc = acc.mul(&chi.q[i][i].pow(alpha.coords[i]));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    fn unit(order: u64, zeta: i64, z: i64) -> UnitValue {
        UnitValue::new(order, BigRational::one(), zeta, z).unwrap()
    }

    /// Cartan-type A2 with chi(alpha_i, alpha_j) = q^{d_i c_ij}, q = z, d = 1.
    pub fn a2_generic() -> Bicharacter {
        let q = vec![
            vec![unit(2, 0, 2), unit(2, 0, -1)],
            vec![unit(2, 0, -1), unit(2, 0, 2)],
        ];
        Bicharacter::new(q).unwrap()
    }

    fn super_rank2() -> Bicharacter {
        let q = vec![
            vec![unit(2, 0, 2), unit(2, 0, -1)],
            vec![unit(2, 0, -1), unit(2, 1, 0)],
        ];
        Bicharacter::new(q).unwrap()
    }

    #[test]
    fn eval_basics() {
        let chi = a2_generic();
        let zero = Weight::zero(2);
        let b = Weight::from_coords(vec![3, -2]);
        assert!(eval(&chi, &zero, &b).is_one());
        assert!(eval(&chi, &b, &zero).is_one());
        let a1 = Weight::unit(2, 0);
        let a2 = Weight::unit(2, 1);
        assert_eq!(eval(&chi, &a1, &a2), chi.q[0][1]);
        // chi(a1+a2, a1+a2) = q11 q12 q21 q22 = z^2
        let s = a1.add(&a2);
        assert_eq!(eval(&chi, &s, &s), unit(2, 0, 2));
    }

    #[test]
    fn eval_is_biadditive() {
        let chi = super_rank2();
        let a = Weight::from_coords(vec![1, 2]);
        let b = Weight::from_coords(vec![-1, 1]);
        let c = Weight::from_coords(vec![2, -3]);
        let lhs = eval(&chi, &a.add(&b), &c);
        let rhs = eval(&chi, &a, &c).mul(&eval(&chi, &b, &c));
        assert_eq!(lhs, rhs);
        let lhs2 = eval(&chi, &c, &a.add(&b));
        let rhs2 = eval(&chi, &c, &a).mul(&eval(&chi, &c, &b));
        assert_eq!(lhs2, rhs2);
    }

    #[test]
    fn pullback_identity_and_sign() {
        let chi = a2_generic();
        let id = IntMat::identity(2);
        assert_eq!(pullback(&chi, &id).unwrap(), chi);

        let q1 = vec![vec![unit(4, 1, 0)]];
        let chi1 = Bicharacter::new(q1).unwrap();
        let minus = IntMat { n: 1, entries: vec![-1] };
        assert_eq!(pullback(&chi1, &minus).unwrap(), chi1);
    }

    #[test]
    fn pullback_by_simple_reflection() {
        let chi = a2_generic();
        let s1 = sigma(&chi, 0).unwrap();
        let pulled = pullback(&chi, &s1).unwrap();
        // entry (2,2) becomes chi(a1+a2, a1+a2) = z^2 = q22 here
        assert_eq!(pulled.q[1][1], unit(2, 0, 2));
    }

    #[test]
    fn bounds() {
        let chi1 = Bicharacter::new(vec![vec![unit(4, 1, 0)]]).unwrap();
        let a = Weight::unit(1, 0);
        assert_eq!(bound(&chi1, &a), Some(4));

        let chi_one = Bicharacter::new(vec![vec![unit(2, 0, 0)]]).unwrap();
        assert_eq!(bound(&chi_one, &a), None);

        let chi_z2 = Bicharacter::new(vec![vec![unit(2, 0, 2)]]).unwrap();
        assert_eq!(bound(&chi_z2, &a), None);
    }

    #[test]
    fn cartan_row_examples() {
        // q_pp = zeta_3, q_pj q_jp = 1: m = 0 works
        let z3 = unit(3, 1, 0);
        let chi = Bicharacter::new(vec![
            vec![z3.clone(), unit(3, 1, 0)],
            vec![unit(3, -1, 0), z3.clone()],
        ])
        .unwrap();
        let row = cartan_row(&chi, 0);
        assert!(row.defined);
        assert_eq!(row.entries, vec![2, 0]);

        // q_pp = zeta_3, q_pj q_jp = zeta_3^2: m = 1 gives zeta_3 * zeta_3^2 = 1
        let chi2 = Bicharacter::new(vec![
            vec![z3.clone(), unit(3, 2, 0)],
            vec![unit(3, 0, 0), z3.clone()],
        ])
        .unwrap();
        let row2 = cartan_row(&chi2, 0);
        assert!(row2.defined);
        assert_eq!(row2.entries, vec![2, -1]);

        // Cartan-type input reproduces its Cartan matrix
        let chi3 = a2_generic();
        assert_eq!(cartan_row(&chi3, 0).entries, vec![2, -1]);
        assert_eq!(cartan_row(&chi3, 1).entries, vec![-1, 2]);
    }

    #[test]
    fn non_p_finite_is_a_value() {
        // q_pp = 1 and q_pj q_jp != 1: no m can work
        let chi = Bicharacter::new(vec![
            vec![unit(2, 0, 0), unit(2, 0, 1)],
            vec![unit(2, 0, 0), unit(2, 0, 2)],
        ])
        .unwrap();
        let row = cartan_row(&chi, 0);
        assert!(!row.defined);
        assert!(row.entries.is_empty());
        assert!(sigma(&chi, 0).is_err());
    }

    #[test]
    fn reflect_rank1_and_cartan_type() {
        let chi1 = Bicharacter::new(vec![vec![unit(4, 1, 0)]]).unwrap();
        assert_eq!(reflect(&chi1, 0).unwrap(), chi1);

        let chi = a2_generic();
        assert_eq!(reflect(&chi, 0).unwrap(), chi);
        assert_eq!(reflect(&chi, 1).unwrap(), chi);
    }

    #[test]
    fn reflect_super_example() {
        let chi = super_rank2();
        let r2 = reflect(&chi, 1).unwrap();
        // c_21 = -1, so r_2(chi)(a1,a1) = q11 (q12 q21) q22 = z^2 z^{-2} (-1) = -1
        assert_eq!(r2.q[0][0], unit(2, 1, 0));
        // closed forms for the p-row: r_2(chi)(a2,a2) = q22,
        // r_2(chi)(a2,a1) = q21^{-1} q22^{c_21}
        assert_eq!(r2.q[1][1], chi.q[1][1]);
        assert_eq!(r2.q[1][0], chi.q[1][0].inv().mul(&chi.q[1][1].pow(-1)));
        assert_eq!(r2.q[0][1], chi.q[0][1].inv().mul(&chi.q[1][1].pow(-1)));
    }

    #[test]
    fn reflect_is_an_involution() {
        let chi = super_rank2();
        for p in 0..2 {
            let r = reflect(&chi, p).unwrap();
            let rr = reflect(&r, p).unwrap();
            assert_eq!(rr, chi, "r_{}^2 != id", p);
        }
    }

    #[test]
    fn rho_values() {
        let chi = a2_generic();
        let a1 = Weight::unit(2, 0);
        assert_eq!(rho(&chi, &a1), chi.q[0][0]);
        assert!(rho(&chi, &Weight::zero(2)).is_one());
        let s = Weight::from_coords(vec![1, 1]);
        assert_eq!(rho(&chi, &s), unit(2, 0, 4));
    }
}
