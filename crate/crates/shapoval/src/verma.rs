//! Weight characters on Verma modules: the shift characters for the toral
//! action, the reflection action on characters, irreducibility detection
//! through the determinant factors, construction of characters sitting on
//! exactly one determinant hyperplane, and radical coranks measured against
//! the straightening oracle.

use std::collections::HashSet;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::bicharacter::{bound, eval, reflect, rho, sigma, Bicharacter, Weight};
use crate::error::{Result, ShapError};
use crate::exactfield::{FieldElem, UnitValue};
use crate::nicholsoracle::{field_rank, DegreeBasis, Oracle};
use crate::par::map_indexed;
use crate::u0ring::{char_eval, WeightCharacter};
use crate::weylgroupoid::{Klass, RootSystemRecord};

/// Outcome of the irreducibility criterion: either every determinant factor
/// is nonzero at Lambda, or the first vanishing factor is named.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Irreducibility {
    Irreducible,
    FailsAt { beta: Weight, t: u64 },
}

/// One degree slice of a Verma module with highest weight Lambda: the
/// chosen basis, the specialized Gram matrix, and the corank (= dimension
/// of the radical of the specialized form at that degree).
#[derive(Clone, Debug)]
pub struct VermaDegreeData {
    pub lambda: WeightCharacter,
    pub degree: Weight,
    pub basis: Arc<DegreeBasis>,
    pub gram_lambda: Vec<Vec<FieldElem>>,
    pub corank: usize,
}

/// The shift character kappa_alpha with kappa(K_beta L_gamma) =
/// chi(beta, alpha) chi(alpha, gamma)^{-1}; alpha -> kappa_alpha is a group
/// homomorphism into the character group.
pub fn zich_shift(chi: &Bicharacter, alpha: &Weight) -> WeightCharacter {
    let rank = chi.rank;
    let kvals = (0..rank)
        .map(|i| eval(chi, &Weight::unit(rank, i), alpha).to_field())
        .collect();
    let lvals = (0..rank)
        .map(|i| eval(chi, alpha, &Weight::unit(rank, i)).inv().to_field())
        .collect();
    WeightCharacter::new(kvals, lvals).expect("unit values are nonzero")
}

/// The reflection action on characters at index p: the new character reads
/// the old one through sigma_p and twists by powers of the reflected
/// bicharacter, with exponent b - 1 where b is the height bound at p.
pub fn vt_reflect(chi: &Bicharacter, p: usize, lambda: &WeightCharacter) -> Result<WeightCharacter> {
    let rank = chi.rank;
    let alpha_p = Weight::unit(rank, p);
    let b = bound(chi, &alpha_p).ok_or(ShapError::InfiniteBound { index: p })? as i64;
    let s = sigma(chi, p)?;
    let rp = reflect(chi, p)?;
    let mut kvals = Vec::with_capacity(rank);
    let mut lvals = Vec::with_capacity(rank);
    for i in 0..rank {
        let alpha_i = Weight::unit(rank, i);
        let si = Weight::from_coords(s.apply(&alpha_i.coords));
        let ktwist = eval(&rp, &alpha_i, &alpha_p).pow(b - 1).to_field();
        let ltwist = eval(&rp, &alpha_p, &alpha_i).pow(-(b - 1)).to_field();
        kvals.push(lambda.eval_k(&si).mul(&ktwist));
        lvals.push(lambda.eval_l(&si).mul(&ltwist));
    }
    WeightCharacter::new(kvals, lvals)
}

/// All t in [lo, hi) with base^t = target, where hi = None means no upper
/// bound. Complete: for an unbounded range the base is either 1 (constant)
/// or of infinite order, and in the latter case candidates are pinned down
/// exactly by the z-exponent or by monotone growth of the rational part.
fn power_hits(base: &UnitValue, target: &FieldElem, lo: u64, hi: Option<u64>) -> Vec<u64> {
    if let Some(hi) = hi {
        return (lo..hi)
            .filter(|&t| base.pow(t as i64).to_field() == *target)
            .collect();
    }
    if base.is_one() {
        // constant power: either every exponent hits or none does; report a
        // single witness so callers see the degeneracy
        return if target.is_one() { vec![lo.max(1)] } else { Vec::new() };
    }
    if base.z_exp != 0 {
        // the z-exponent of base^t is t * base.z_exp, so at most one t fits
        let (Some(dn), Some(dd)) = (target.num.degree(), target.den.degree()) else {
            return Vec::new();
        };
        let d = dn as i64 - dd as i64;
        if d % base.z_exp != 0 {
            return Vec::new();
        }
        let t = d / base.z_exp;
        if t >= lo as i64 && t >= 0 && base.pow(t).to_field() == *target {
            return vec![t as u64];
        }
        return Vec::new();
    }
    // infinite order with no z part forces base.rat != 1; base^t is the
    // constant rat^t zeta^{kt}, so strip each possible root of unity off the
    // target and search the strictly monotone rational part
    if target.num.degree() != Some(0) || target.den.degree() != Some(0) {
        return Vec::new();
    }
    let c = match target.num.leading().and_then(|n| {
        target.den.leading().map(|d| n.mul(&d.inv().expect("denominator is nonzero")))
    }) {
        Some(c) => c,
        None => return Vec::new(),
    };
    let order = base.order;
    let mut out = Vec::new();
    for r in 0..order {
        let peeled = c.mul(&crate::exactfield::Cyclotomic::zeta(order, -(r as i64)));
        if !peeled.is_rational() {
            continue;
        }
        let Some(ratio) = peeled.as_rational() else { continue };
        if !ratio.is_positive() {
            continue;
        }
        let up = base.rat > BigRational::one();
        let mut acc = crate::exactfield::rational_pow(&base.rat, lo as i64);
        let mut t = lo;
        loop {
            if acc == ratio {
                if (base.zeta_exp as i64 * t as i64 - r as i64).rem_euclid(order as i64) == 0
                    && base.pow(t as i64).to_field() == *target
                {
                    out.push(t);
                }
                break;
            }
            if (up && acc > ratio) || (!up && acc < ratio) {
                break;
            }
            acc *= &base.rat;
            t += 1;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Evaluate every determinant factor rho(beta) Lambda(K_beta L_beta^{-1}) -
/// chi(beta, beta)^t at Lambda; irreducible iff none vanishes. Stated for
/// bicharacters whose root system is finite with all bounds finite.
pub fn verma_irreducible(
    chi: &Bicharacter,
    roots: &RootSystemRecord,
    lambda: &WeightCharacter,
) -> Result<Irreducibility> {
    if roots.klass != Klass::X4 && roots.klass != Klass::X5 {
        return Err(ShapError::NotX4);
    }
    for beta in &roots.positive_roots {
        let b = roots.bounds[beta].ok_or(ShapError::NotX4)?;
        let ratio = rho(chi, beta)
            .to_field()
            .mul(&lambda.eval_k(beta))
            .mul(&lambda.eval_l(beta).inv().expect("character values are nonzero"));
        let q_beta = eval(chi, beta, beta);
        for t in 1..b {
            if ratio == q_beta.pow(t as i64).to_field() {
                return Ok(Irreducibility::FailsAt { beta: beta.clone(), t });
            }
        }
    }
    Ok(Irreducibility::Irreducible)
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// y with y . v = gcd(v) >= 0 (gcd of the empty or zero vector is 0).
fn bezout_vector(v: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut ys: Vec<i64> = Vec::with_capacity(v.len());
    for &x in v {
        let (g2, a, b) = egcd(g, x);
        for y in &mut ys {
            *y *= a;
        }
        ys.push(b);
        g = g2;
    }
    (g, ys)
}

fn nth_root_exact(r: &BigRational, d: u64) -> Option<BigRational> {
    let num = r.numer().nth_root(d as u32);
    let den = r.denom().nth_root(d as u32);
    let cand = BigRational::new(num, den);
    let mut acc = BigRational::one();
    for _ in 0..d {
        acc *= &cand;
    }
    if acc == *r {
        Some(cand)
    } else {
        None
    }
}

/// A character sitting on exactly one determinant hyperplane: Lambda with
/// Lambda(L_i) = 1 and Lambda(K_i) = c_i z^{g_i} such that the (beta, t)
/// factor vanishes and, verified before returning, no other factor does.
/// Exponents g are drawn from a deterministic sequence of solutions of
/// g . beta = (required z-exponent), retrying on genericity failures.
pub fn lambda_on_hyperplane(
    chi: &Bicharacter,
    roots: &RootSystemRecord,
    beta: &Weight,
    t: u64,
) -> Result<WeightCharacter> {
    let rank = chi.rank;
    if !roots.positive_roots.contains(beta) {
        return Err(ShapError::NotARoot(format!("{}", beta)));
    }
    let b_beta = roots.bounds[beta];
    if t < 1 || b_beta.is_some_and(|b| t >= b) {
        return Err(ShapError::BadInput(format!(
            "t = {} is outside the factor range at {}",
            t, beta
        )));
    }
    for gamma in &roots.positive_roots {
        if gamma == beta {
            continue;
        }
        let parallel = (0..rank).all(|i| {
            (0..rank).all(|j| beta.coords[i] * gamma.coords[j] == beta.coords[j] * gamma.coords[i])
        });
        if parallel {
            return Err(ShapError::ParallelRoots);
        }
    }

    // rho(beta) Lambda(K_beta) = chi(beta,beta)^t fixes Lambda(K_beta)
    let target = eval(chi, beta, beta).pow(t as i64).mul(&rho(chi, beta).inv());
    let (g0_div, y) = bezout_vector(&beta.coords);
    if g0_div == 0 {
        return Err(ShapError::ConstructionFailed("root has no nonzero coordinate".into()));
    }
    if target.z_exp % g0_div != 0 {
        return Err(ShapError::ConstructionFailed(
            "z-exponent is not divisible by the coordinate gcd".into(),
        ));
    }
    // unit (z-free) part of the target, distributed over the generators
    // through the Bezout vector; a coordinate gcd > 1 needs an exact root
    let unit_part = UnitValue::new(target.order, target.rat.clone(), target.zeta_exp as i64, 0)
        .expect("unit part of a unit is a unit");
    let unit_root = if g0_div == 1 {
        unit_part.clone()
    } else {
        let rat_root = nth_root_exact(&unit_part.rat, g0_div as u64).ok_or_else(|| {
            ShapError::ConstructionFailed("target has no exact gcd-th root".into())
        })?;
        let cand = UnitValue::new(
            unit_part.order * g0_div as u64,
            rat_root,
            unit_part.zeta_exp as i64,
            0,
        )
        .expect("constructed unit is valid");
        let mut acc = cand.clone();
        for _ in 1..g0_div {
            acc = acc.mul(&cand);
        }
        if !(acc == unit_part) {
            return Err(ShapError::ConstructionFailed("root extraction failed".into()));
        }
        cand
    };
    let cvals: Vec<UnitValue> = y.iter().map(|&yi| unit_root.pow(yi)).collect();

    let g_base: Vec<i64> = y.iter().map(|&yi| yi * (target.z_exp / g0_div)).collect();
    let kernel: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| if i == j { 1 } else { 0 } - beta.coords[i] * y[j])
                .collect()
        })
        .collect();

    let mut tried: HashSet<Vec<i64>> = HashSet::new();
    let mut attempts = 0usize;
    for radius in 0..=6i64 {
        let mut coeffs = vec![-radius; rank];
        loop {
            let g: Vec<i64> = (0..rank)
                .map(|j| g_base[j] + (0..rank).map(|i| coeffs[i] * kernel[i][j]).sum::<i64>())
                .collect();
            if tried.insert(g.clone()) {
                attempts += 1;
                if attempts > 64 {
                    return Err(ShapError::ConstructionFailed(
                        "no generic exponent vector found within the retry budget".into(),
                    ));
                }
                if let Some(lambda) = try_hyperplane_candidate(chi, roots, beta, t, &cvals, &g) {
                    return Ok(lambda);
                }
            }
            // advance the coefficient vector through the box lexicographically
            let mut k = rank;
            while k > 0 {
                k -= 1;
                if coeffs[k] < radius {
                    coeffs[k] += 1;
                    for c in coeffs.iter_mut().skip(k + 1) {
                        *c = -radius;
                    }
                    break;
                }
                if k == 0 {
                    coeffs.clear();
                }
            }
            if coeffs.is_empty() || rank == 0 {
                break;
            }
        }
    }
    Err(ShapError::ConstructionFailed(
        "no generic exponent vector found within the retry budget".into(),
    ))
}

fn try_hyperplane_candidate(
    chi: &Bicharacter,
    roots: &RootSystemRecord,
    beta: &Weight,
    t: u64,
    cvals: &[UnitValue],
    g: &[i64],
) -> Option<WeightCharacter> {
    let rank = chi.rank;
    let order = chi.order;
    let kvals: Vec<FieldElem> = (0..rank)
        .map(|i| {
            cvals[i]
                .to_field()
                .mul(&UnitValue::new(order, BigRational::one(), 0, g[i]).unwrap().to_field())
        })
        .collect();
    let lvals = vec![FieldElem::one(order); rank];
    let lambda = WeightCharacter::new(kvals, lvals).ok()?;
    // exactly the (beta, t) factor may vanish
    for gamma in &roots.positive_roots {
        let ratio = rho(chi, gamma).to_field().mul(&lambda.eval_k(gamma));
        let hits = power_hits(&eval(chi, gamma, gamma), &ratio, 1, roots.bounds[gamma]);
        if gamma == beta {
            if hits != vec![t] {
                return None;
            }
        } else if !hits.is_empty() {
            return None;
        }
    }
    Some(lambda)
}

/// Corank of the specialized Shapovalov form at one degree: apply Lambda to
/// every Gram entry on the chosen basis and count the rank drop.
pub fn radical_dim(oracle: &Oracle, lambda: &WeightCharacter, alpha: &Weight) -> VermaDegreeData {
    let basis = oracle.nichols_basis(alpha);
    let gram_lambda: Vec<Vec<FieldElem>> = map_indexed(basis.rank, oracle.parallel(), |i| {
        (0..basis.rank)
            .map(|j| {
                let sh = oracle.shap_form_entry(&basis.words[i], &basis.words[j]);
                char_eval(lambda, &sh)
            })
            .collect()
    });
    let corank = basis.rank - field_rank(&gram_lambda);
    VermaDegreeData {
        lambda: lambda.clone(),
        degree: alpha.clone(),
        basis,
        gram_lambda,
        corank,
    }
}

/// The scalar by which the raising generator at p sends F_p^m v to
/// F_p^{m-1} v, computed by straightening and checked against the closed
/// form (m)_q Lambda(L_p) (q^{t-m} - 1), where t is recovered from
/// Lambda(K_p L_p^{-1}) = q^{t-1}.
pub fn hw_coeff_check(
    oracle: &Oracle,
    lambda: &WeightCharacter,
    p: usize,
    m: u64,
) -> Result<FieldElem> {
    let chi = &oracle.chi;
    let rank = chi.rank;
    let alpha_p = Weight::unit(rank, p);
    let q = eval(chi, &alpha_p, &alpha_p);
    if q.is_one() {
        return Err(ShapError::RegimeViolation("q = 1 at the chosen index".into()));
    }
    let ratio = lambda
        .eval_k(&alpha_p)
        .mul(&lambda.eval_l(&alpha_p).inv().expect("character values are nonzero"));
    let cap = bound(chi, &alpha_p).unwrap_or(64);
    let t = (1..=cap)
        .find(|&t| ratio == q.pow(t as i64 - 1).to_field())
        .ok_or_else(|| {
            ShapError::RegimeViolation(
                "Lambda(K_p L_p^-1) is not q^(t-1) for any admissible t".into(),
            )
        })?;
    if m == 0 {
        return Ok(FieldElem::zero(chi.order));
    }
    let terms = oracle.straighten(
        &crate::nicholsoracle::FreeWord::e(vec![p]),
        &crate::nicholsoracle::FreeWord::f(vec![p; m as usize]),
    );
    let mut scalar = FieldElem::zero(chi.order);
    for term in &terms {
        if term.eword.letters.is_empty() {
            assert_eq!(term.fword.letters.len() as u64, m - 1);
            scalar = scalar.add(&char_eval(lambda, &term.mid));
        }
    }
    let closed = crate::exactfield::qnum(m, &q)
        .mul(&lambda.eval_l(&alpha_p))
        .mul(&q.pow(t as i64 - m as i64).to_field().sub(&FieldElem::one(chi.order)));
    assert_eq!(scalar, closed, "straightening disagrees with the closed form");
    Ok(scalar)
}
