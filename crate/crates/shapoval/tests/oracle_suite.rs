//! The straightening oracle against everything that predicts its output:
//! form symmetry, the rank-1 q-binomial expansion, the independent
//! skew-derivation evaluator, PBW dimensions, and the determinant formula.

mod common;

use common::*;
use shapoval::{
    gauss_binomial, nonneg_weights_up_to, pbw_dim, qfact, shapdet_formula, Bicharacter,
    FieldElem, FreeWord, Oracle, U0Monomial, U0Poly, UnitValue, Weight,
};

fn f_words(rank: usize, alpha: &Weight) -> Vec<FreeWord> {
    shapoval::words_of_degree(rank, alpha)
        .into_iter()
        .map(FreeWord::f)
        .collect()
}

#[test]
fn sh_is_symmetric_and_homogeneous() {
    for chi in [rank1_zeta4(), a2_zeta3(), a2_generic()] {
        let rank = chi.rank;
        let oracle = Oracle::new(chi);
        for alpha in nonneg_weights_up_to(rank, 4) {
            let words = f_words(rank, &alpha);
            for (i, u) in words.iter().enumerate() {
                for v in &words[i..] {
                    let s = oracle.shap_form_entry(u, v);
                    assert_eq!(s, oracle.shap_form_entry(v, u), "Sh not symmetric at {}", alpha);
                    for (m, _) in &s.terms {
                        assert_eq!(m.kexp.add(&m.lexp), alpha, "off-degree monomial at {}", alpha);
                    }
                }
            }
        }
        // mixed degrees pair to zero
        let u = FreeWord::f(vec![0]);
        let v = FreeWord::f(vec![0, 0]);
        assert!(oracle.shap_form_entry(&u, &v).is_zero());
    }
}

/// mid coefficient of the i-contraction in E^m F^n:
/// [m i]_q [n i]_q (i)!_q prod_{j=1..i} (q^(i+j-m-n) K - L).
fn contraction_mid(q: &UnitValue, i: usize, m: usize, n: usize) -> U0Poly {
    let order = q.order;
    let scalar = gauss_binomial(m as u64, i as u64, q)
        .mul(&gauss_binomial(n as u64, i as u64, q))
        .mul(&qfact(i as u64, q));
    let mut poly = U0Poly::one(1, order);
    for j in 1..=i {
        let mut lin = U0Poly::zero();
        let e = (i + j) as i64 - (m + n) as i64;
        lin.add_term(U0Monomial::k(w(&[1])), q.pow(e).to_field());
        lin.add_term(U0Monomial::l(w(&[1])), FieldElem::one(order).neg());
        poly = poly.mul(&lin);
    }
    poly.scale(&scalar)
}

#[test]
fn power_words_expand_by_gaussian_binomials() {
    for q in [unit(4, 1, 0), unit(6, 1, 0)] {
        let chi = Bicharacter::new(vec![vec![q.clone()]]).unwrap();
        let oracle = Oracle::new(chi);
        for m in 0..=4usize {
            for n in 0..=4usize {
                let terms =
                    oracle.straighten(&FreeWord::e(vec![0; m]), &FreeWord::f(vec![0; n]));
                let mut surviving = 0;
                for i in 0..=m.min(n) {
                    let expected = contraction_mid(&q, i, m, n);
                    let found = terms.iter().find(|t| t.fword.letters.len() == n - i);
                    match found {
                        Some(t) => {
                            assert_eq!(t.eword.letters.len(), m - i);
                            assert_eq!(t.mid, expected, "i = {} in E^{} F^{}", i, m, n);
                            surviving += 1;
                        }
                        None => {
                            assert!(expected.is_zero(), "missing i = {} in E^{} F^{}", i, m, n)
                        }
                    }
                }
                assert_eq!(terms.len(), surviving);
            }
        }
    }
}

#[test]
fn skew_derivations_agree_with_straightening() {
    for chi in [a2_zeta3(), a2_generic()] {
        let rank = chi.rank;
        let oracle = Oracle::new(chi);
        for alpha in nonneg_weights_up_to(rank, 4) {
            let words = f_words(rank, &alpha);
            for u in &words {
                for v in &words {
                    assert_eq!(
                        oracle.shap_form_entry(u, v),
                        oracle.hc_skew(u, v),
                        "oracles disagree at {}",
                        alpha
                    );
                }
            }
        }
    }
}

#[test]
fn gram_ranks_equal_pbw_dimensions() {
    for (chi, height) in [(a2_zeta3(), 5), (a2_generic(), 5), (super_rank2(), 4)] {
        let rec = roots_of(&chi);
        let rank = chi.rank;
        let oracle = Oracle::new(chi);
        for alpha in nonneg_weights_up_to(rank, height) {
            let basis = oracle.nichols_basis(&alpha);
            assert_eq!(
                basis.rank as u64,
                pbw_dim(&rec, &alpha),
                "rank mismatch at {}",
                alpha
            );
        }
    }
}

/// dim of the full Nichols algebra at zeta_3 A2 is the product of the
/// bounds: 3 * 3 * 3. Degrees beyond (4, 4) are empty, so the box sum is
/// the whole dimension.
#[test]
fn total_nichols_dimension_is_the_bound_product() {
    let chi = a2_zeta3();
    let oracle = Oracle::new(chi);
    let mut total = 0usize;
    for a in 0..=4i64 {
        for b in 0..=4i64 {
            total += oracle.nichols_basis(&w(&[a, b])).rank;
        }
    }
    assert_eq!(total, 27);
}

#[test]
fn brute_determinants_match_the_formula() {
    let cases: Vec<(Bicharacter, i64)> = vec![
        (rank1_zeta4(), 4),
        (rank1_zeta3(), 4),
        (a2_zeta3(), 3),
        (a2_generic(), 3),
        (super_rank2(), 2),
    ];
    for (chi, height) in cases {
        let rec = roots_of(&chi);
        let rank = chi.rank;
        let order = chi.order;
        let oracle = Oracle::new(chi.clone());
        for alpha in nonneg_weights_up_to(rank, height) {
            let brute = oracle.det_brute(&alpha);
            let formula = shapdet_formula(&chi, &rec, &alpha).unwrap().expand(rank, order);
            assert_eq!(
                brute.normalize_unit().unwrap(),
                formula.normalize_unit().unwrap(),
                "determinant mismatch at {}",
                alpha
            );
        }
    }
}
