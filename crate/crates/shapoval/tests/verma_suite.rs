//! Verma radicals against the determinant's predictions, and the twisted
//! reflection operators on highest weights.

mod common;

use common::*;
use shapoval::{
    char_eval, eval, lambda_on_hyperplane, nonneg_weights_up_to, partition, radical_dim,
    reflect, rho, shapdet_formula, sigma, verma_irreducible, vt_reflect, Bicharacter, FieldElem,
    Irreducibility, Oracle, RootSystemRecord, Weight, WeightCharacter,
};

/// Lambda(K_i) = z^(g_i), Lambda(L_i) = 1: the z-exponent of every factor
/// ratio is positive, so no determinant factor can vanish.
fn generic_lambda(order: u64, g: &[i64]) -> WeightCharacter {
    let kvals = g.iter().map(|&e| unit(order, 0, e).to_field()).collect();
    let lvals = g.iter().map(|_| FieldElem::one(order)).collect();
    WeightCharacter::new(kvals, lvals).unwrap()
}

/// A small palette of unit-valued characters to quantify over.
fn lambda_grid(chi: &Bicharacter) -> Vec<WeightCharacter> {
    let order = chi.order;
    let rank = chi.rank;
    let mut out = Vec::new();
    for (ke, le, kz) in [(1i64, 0i64, 0i64), (2, 3, 1), (0, 1, -1)] {
        let kvals = (0..rank)
            .map(|i| unit(order, ke + i as i64, kz).to_field())
            .collect();
        let lvals = (0..rank).map(|i| unit(order, le * (i as i64 + 1), 0).to_field()).collect();
        out.push(WeightCharacter::new(kvals, lvals).unwrap());
    }
    out
}

fn examples_12() -> Vec<(Bicharacter, RootSystemRecord)> {
    [rank1_zeta4(), a2_zeta3()]
        .into_iter()
        .map(|chi| {
            let rec = roots_of(&chi);
            (chi, rec)
        })
        .collect()
}

#[test]
fn generic_weights_give_irreducible_vermas() {
    for (chi, rec) in examples_12() {
        let lam = generic_lambda(chi.order, &vec![1; chi.rank]);
        assert_eq!(
            verma_irreducible(&chi, &rec, &lam).unwrap(),
            Irreducibility::Irreducible
        );
        let oracle = Oracle::new(chi.clone());
        for alpha in nonneg_weights_up_to(chi.rank, 4) {
            let data = radical_dim(&oracle, &lam, &alpha);
            assert_eq!(data.corank, 0, "radical at {} under a generic weight", alpha);
        }
    }
}

#[test]
fn hyperplane_weights_match_the_predicted_coranks() {
    for (chi, rec) in examples_12() {
        let oracle = Oracle::new(chi.clone());
        for beta in &rec.positive_roots {
            let b = rec.bounds[beta].expect("examples 1-2 have finite bounds");
            for t in 1..b {
                let lam = lambda_on_hyperplane(&chi, &rec, beta, t).unwrap();
                assert!(matches!(
                    verma_irreducible(&chi, &rec, &lam).unwrap(),
                    Irreducibility::FailsAt { .. }
                ));
                for alpha in nonneg_weights_up_to(chi.rank, 4) {
                    let data = radical_dim(&oracle, &lam, &alpha);
                    let predicted = partition(&rec, &alpha, beta, t).unwrap();
                    assert_eq!(
                        data.corank as u64, predicted,
                        "corank at {} on the ({}, {}) hyperplane",
                        alpha, beta, t
                    );
                }
            }
        }
    }
}

#[test]
fn vt_reflections_are_involutive() {
    for chi in [rank1_zeta4(), rank1_zeta3(), a2_zeta3()] {
        for lam in lambda_grid(&chi) {
            for p in 0..chi.rank {
                let rp = reflect(&chi, p).unwrap();
                let once = vt_reflect(&chi, p, &lam).unwrap();
                let back = vt_reflect(&rp, p, &once).unwrap();
                assert_eq!(back, lam, "p = {}", p);
            }
        }
    }
}

/// (VT_j VT_k)^m = id where m is the number of positive roots in the
/// (j, k) cone; the bicharacter is reflected alongside the character.
#[test]
fn vt_satisfies_the_coxeter_braid_relation() {
    let chi = a2_zeta3();
    let m = 3usize;
    for lam in lambda_grid(&chi) {
        for (j, k) in [(0usize, 1usize), (1, 0)] {
            let mut cur = lam.clone();
            let mut chi_cur = chi.clone();
            for step in 0..2 * m {
                let p = if step % 2 == 0 { k } else { j };
                cur = vt_reflect(&chi_cur, p, &cur).unwrap();
                chi_cur = reflect(&chi_cur, p).unwrap();
            }
            assert_eq!(chi_cur, chi);
            assert_eq!(cur, lam, "pair ({}, {})", j, k);
        }
    }
}

/// rho'(sigma_p a) VT(Lambda)(K L^-1 at sigma_p a) = rho(a) Lambda(K_a L_a^-1).
#[test]
fn shifted_product_is_vt_invariant() {
    for chi in [rank1_zeta4(), a2_zeta3()] {
        for lam in lambda_grid(&chi) {
            for p in 0..chi.rank {
                let rp = reflect(&chi, p).unwrap();
                let s = sigma(&chi, p).unwrap();
                let vt = vt_reflect(&chi, p, &lam).unwrap();
                for alpha in signed_grid(chi.rank) {
                    let image = Weight::from_coords(s.apply(&alpha.coords));
                    let lhs = rp_shifted(&rp, &vt, &image);
                    let rhs = rp_shifted(&chi, &lam, &alpha);
                    assert_eq!(lhs, rhs, "p = {}, alpha = {}", p, alpha);
                }
            }
        }
    }
}

fn rp_shifted(chi: &Bicharacter, lam: &WeightCharacter, alpha: &Weight) -> FieldElem {
    rho(chi, alpha)
        .to_field()
        .mul(&lam.eval_k(alpha))
        .mul(&lam.eval_l(alpha).inv().unwrap())
}

/// The Verma radical is nonzero exactly where the determinant evaluates
/// to zero under the highest weight.
#[test]
fn vanishing_factors_detect_radicals() {
    let chi = a2_zeta3();
    let rec = roots_of(&chi);
    let oracle = Oracle::new(chi.clone());
    let mut lambdas = vec![generic_lambda(chi.order, &[1, 1])];
    lambdas.push(lambda_on_hyperplane(&chi, &rec, &w(&[1, 0]), 2).unwrap());
    lambdas.push(lambda_on_hyperplane(&chi, &rec, &w(&[1, 1]), 1).unwrap());
    for lam in &lambdas {
        for alpha in nonneg_weights_up_to(chi.rank, 3) {
            let det = shapdet_formula(&chi, &rec, &alpha)
                .unwrap()
                .expand(chi.rank, chi.order);
            let vanishes = char_eval(lam, &det).is_zero();
            let corank = radical_dim(&oracle, lam, &alpha).corank;
            assert_eq!(vanishes, corank > 0, "alpha = {}", alpha);
        }
    }
}

/// The hyperplane construction must respect the factor-range bounds and
/// reject non-roots.
#[test]
fn hyperplane_construction_rejects_bad_requests() {
    let chi = a2_zeta3();
    let rec = roots_of(&chi);
    assert!(lambda_on_hyperplane(&chi, &rec, &w(&[2, 1]), 1).is_err());
    assert!(lambda_on_hyperplane(&chi, &rec, &w(&[1, 0]), 3).is_err());
    assert!(lambda_on_hyperplane(&chi, &rec, &w(&[1, 0]), 0).is_err());
}

/// A hyperplane weight for one factor leaves every other factor nonzero,
/// including other t values at the same root.
#[test]
fn hyperplane_weights_are_sharp() {
    let chi = a2_zeta3();
    let rec = roots_of(&chi);
    for beta in &rec.positive_roots {
        let b = rec.bounds[beta].unwrap();
        for t in 1..b {
            let lam = lambda_on_hyperplane(&chi, &rec, beta, t).unwrap();
            for gamma in &rec.positive_roots {
                let bg = rec.bounds[gamma].unwrap();
                let ratio = rho(&chi, gamma)
                    .to_field()
                    .mul(&lam.eval_k(gamma))
                    .mul(&lam.eval_l(gamma).inv().unwrap());
                for s in 1..bg {
                    let hit = ratio == eval(&chi, gamma, gamma).pow(s as i64).to_field();
                    let wanted = gamma == beta && s == t;
                    assert_eq!(hit, wanted, "factor ({}, {}) from ({}, {})", gamma, s, beta, t);
                }
            }
        }
    }
}
