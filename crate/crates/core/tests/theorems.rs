mod common;

fn run(check: common::Check) {
    match check {
        Ok(summary) => println!("{summary}"),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn screens_only_reject_non_sums() {
    run(common::screen_soundness());
}

#[test]
fn decisions_match_full_factoring() {
    run(common::decide_matches_oracle());
}

#[test]
fn even_bases() {
    run(common::theorem_even());
}

#[test]
fn four_times_three_mod_four() {
    run(common::theorem_four_x());
}

#[test]
fn one_mod_eight_closes_under_divisors() {
    run(common::theorem_one_mod_eight());
}

#[test]
fn five_mod_eight_is_six_mod_eight() {
    run(common::theorem_five_mod_eight());
}

#[test]
fn three_mod_four_conditions() {
    run(common::theorem_three_mod_four());
}

#[test]
fn three_mod_four_square_clause() {
    run(common::theorem_three_mod_four_square_clause());
}

#[test]
fn gcd_of_consecutive_layers_divides_p() {
    run(common::general_gcd());
}

#[test]
fn m_is_minimal() {
    run(common::m_minimality());
}

#[test]
fn px2_bases_transfer() {
    run(common::px2_equivalence());
}

#[test]
fn polynomial_family() {
    run(common::poly_family_suite());
}

#[test]
fn valuation_lifting_is_exact() {
    run(common::valuation_lifting(200, 11));
}
