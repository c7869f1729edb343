//! Exact computation of Weyl groupoids, root systems of bicharacters, and
//! the closed-form factorization of Shapovalov determinants for the
//! associated Drinfeld doubles, with a brute-force straightening oracle to
//! verify the formula degree by degree.

pub mod bicharacter;
pub mod error;
pub mod exactfield;
pub mod intmat;
pub mod nicholsoracle;
pub mod par;
pub mod shapformula;
pub mod u0ring;
pub mod verma;
pub mod weylgroupoid;

pub use bicharacter::{
    bound, cartan_row, eval, is_p_finite, pullback, reflect, rho, sigma, Bicharacter, CartanRow,
    Weight,
};
pub use error::{Result, ShapError};
pub use exactfield::{
    field_arith, gauss_binomial, qfact, qnum, qnum_qfact, ArithKind, CycPoly, Cyclotomic,
    FieldElem, QKind, RationalFunction, UnitValue,
};
pub use intmat::IntMat;
pub use nicholsoracle::{
    field_rank, harish_chandra, words_of_degree, DegreeBasis, FreeWord, Oracle, Species,
    StraightTerm,
};
pub use shapformula::{
    cartan_bicharacter, nonneg_weights_up_to, partition, pbw_dim, sdot_series, sdot_weight,
    shapdet_formula, submodule_char, tmax, uqg_shapdet, verma_character, Factorization,
    FormalCharSeries, LinearFactor,
};
pub use u0ring::{char_eval, quotient_specialize, QuotientRules, U0Monomial, U0Poly, WeightCharacter};
pub use verma::{
    hw_coeff_check, lambda_on_hyperplane, radical_dim, verma_irreducible, vt_reflect, zich_shift,
    Irreducibility, VermaDegreeData,
};
pub use weylgroupoid::{
    beta_sequence, check_axioms, classify, longest_word, orbit, positive_roots, reduce_word,
    root_string_count, Caps, CartanScheme, GroupoidWord, Klass, RootSystemRecord,
};
