mod common;

#[test]
fn sq_zero_unstability_and_squaring() {
    common::sq_identity_and_unstability().unwrap();
}

#[test]
fn cartan_formula_exhaustive() {
    common::cartan().unwrap();
}

#[test]
fn recursive_and_total_square_agree() {
    common::recursive_matches_total_square().unwrap();
}

#[test]
fn binom_mod2_matches_exact_binomials() {
    common::binomials_match_big_integers().unwrap();
}
