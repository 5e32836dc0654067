use hgring::{CountMode, CountPoly, DivError, HGPoly, TateLaurent};
use symrep::Partition;

fn p(s: &str) -> HGPoly {
    s.parse().unwrap_or_else(|e| panic!("parse {s:?}: {e}"))
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

// Borel-Moore homology of the three classifying-group constants used
// throughout the pipelines.
fn bm_pgl3() -> HGPoly {
    p("t^16·L^-8 + t^13·L^-6 + t^11·L^-5 + t^8·L^-3")
}

fn bm_gl3() -> HGPoly {
    p("t^18·L^-9 + t^17·L^-8 + t^15·L^-7 + t^14·L^-6 + t^13·L^-6 + t^12·L^-5 + t^10·L^-4 + t^9·L^-3")
}

fn coh_gl3() -> HGPoly {
    p("1 + t·L + t^3·L^2 + t^4·L^3 + t^5·L^3 + t^6·L^4 + t^8·L^5 + t^9·L^6")
}

#[test]
fn binomial_square() {
    let b = p("1 + t·L");
    let sq = b.mul(&b).unwrap();
    assert_eq!(sq, p("1 + 2·t·L + t^2·L^2"));
}

#[test]
fn coh_gl3_is_product_of_three_binomials() {
    let prod = p("(1 + t·L)·(1 + t^3·L^2)·(1 + t^5·L^3)");
    assert_eq!(prod, coh_gl3());
}

#[test]
fn bm_gl3_splits_off_central_torus() {
    let torus = p("t^2·L^-1 + t");
    assert_eq!(bm_pgl3().mul(&torus).unwrap(), bm_gl3());
}

#[test]
fn shifted_binomial_times_bm_gl3() {
    // t^5·(1+2tL)·(BM of GL3): spot coefficients of the expansion.
    let total = p("t^5·(1 + 2·t·L)").mul(&bm_gl3()).unwrap();
    let dim: i64 = total
        .iter_plain_terms()
        .unwrap()
        .map(|(_, _, c)| c)
        .sum();
    assert_eq!(dim, 24);
    assert_eq!(total.coeff_at(24, -8), 2);
    assert_eq!(total.coeff_at(23, -9), 1);
    assert_eq!(total.coeff_at(23, -7), 2);
    assert_eq!(total.coeff_at(15, -4), 1);
    assert_eq!(total.coeff_at(15, -2), 2);
    assert_eq!(total.coeff_at(14, -3), 1);
    assert_eq!(total.coeff_at(14, -2), 0);
}

#[test]
fn trivial_representation_is_a_unit() {
    let a = p("s[2] + s[1,1]");
    let unit = p("s[2]");
    assert_eq!(a.mul(&unit).unwrap(), a);
    // Tensoring with the sign representation conjugates the labels.
    let sign = p("s[1,1]");
    assert_eq!(a.mul(&sign).unwrap(), p("s[1,1] + s[2]"));
}

#[test]
fn twist_basics() {
    assert_eq!(p("1").tate_twist(-1), p("L"));
    assert_eq!(p("t^4·L^-2").tate_twist(2), p("t^4·L^-4"));
    let q = p("3·t^2·L^-1 + t^5·L");
    assert_eq!(q.tate_twist(2).tate_twist(3), q.tate_twist(5));
    assert_eq!(q.tate_twist(0), q);
}

#[test]
fn twist_commutes_with_shift_and_mul() {
    let a = p("1 + t^2·L^-1");
    let b = p("t^3 + 2·t^4·L^-2");
    assert_eq!(a.tate_twist(2).shift(3), a.shift(3).tate_twist(2));
    assert_eq!(
        a.mul(&b).unwrap().tate_twist(1),
        a.tate_twist(1).mul(&b).unwrap()
    );
}

#[test]
fn bundle_total_space_reproduces_first_table_column() {
    // Column of the two-points-on-the-line stratum: base classes
    // s[2]·t^2·L^-1 + s[1,1]·t through a rank-9 bundle.
    let base = p("s[2]·t^2·L^-1 + s[1,1]·t");
    let total = base.shift(18).tate_twist(9);
    assert_eq!(total, p("s[2]·t^20·L^-10 + s[1,1]·t^19·L^-9"));
}

#[test]
fn division_recovers_quotient() {
    let q = p("1 + t·L + t^5·L^5 + 2·t^6·L^6");
    let prod = q.mul(&coh_gl3()).unwrap();
    assert_eq!(prod.div_exact(&coh_gl3()).unwrap(), q);
}

#[test]
fn division_by_self_is_one() {
    let g = coh_gl3();
    assert_eq!(g.div_exact(&g).unwrap(), p("1"));
}

#[test]
fn indivisible_reports_failing_degree() {
    let err = p("1 + t·L").div_exact(&p("1 + t^2·L")).unwrap_err();
    match err {
        DivError::Indivisible(report) => assert_eq!(report.degree, 1),
        other => panic!("expected indivisibility report, got {other:?}"),
    }
}

#[test]
fn division_failure_names_lowest_bad_degree_in_remainder() {
    // (1 + t^9·L^6) against coh(GL3): degree 0 matches, everything
    // above fails; the report points at the first impossible degree.
    let err = p("1 + t^9·L^6").div_exact(&coh_gl3()).unwrap_err();
    match err {
        DivError::Indivisible(report) => assert!(report.degree <= 9),
        other => panic!("expected indivisibility report, got {other:?}"),
    }
}

#[test]
fn zero_divisor_rejected() {
    assert!(matches!(
        p("1").div_exact(&p("0")),
        Err(DivError::ZeroDivisor)
    ));
}

#[test]
fn point_counts_of_pair_space_of_plane() {
    // Unordered pairs in the projective plane, untwisted and twisted.
    let untwisted = p("(1 + t^2·L^-1 + t^4·L^-2)·t^4·L^-2");
    let mut expect = CountPoly::zero();
    expect.add_term(4, 1);
    expect.add_term(3, 1);
    expect.add_term(2, 1);
    assert_eq!(untwisted.e_count(CountMode::Bm), expect);

    let twisted = p("(1 + t^2·L^-1 + t^4·L^-2)·t^2·L^-1");
    let mut expect_tw = CountPoly::zero();
    expect_tw.add_term(3, 1);
    expect_tw.add_term(2, 1);
    expect_tw.add_term(1, 1);
    assert_eq!(twisted.e_count(CountMode::Bm), expect_tw);
}

#[test]
fn point_count_of_four_line_complement() {
    let u = p("s[4]·t^4·L^-2 + s[3,1]·t^3·L^-1 + s[2,1,1]·t^2");
    let counts = u.e_count(CountMode::Bm);
    let mut expect = CountPoly::zero();
    expect.add_term(2, 1);
    expect.add_term(1, -3);
    expect.add_term(0, 3);
    assert_eq!(counts, expect);
    assert_eq!(counts.eval(2), 1);
    assert_eq!(counts.eval(5), 13);
}

#[test]
fn smooth_count_of_cube_of_binomial() {
    let fibre = p("(1 + t·L)^3");
    let counts = fibre.e_count(CountMode::CohSmooth(11));
    let mut expect = CountPoly::zero();
    expect.add_term(11, 1);
    expect.add_term(10, -3);
    expect.add_term(9, 3);
    expect.add_term(8, -1);
    assert_eq!(counts, expect);
    assert_eq!(counts.eval(2), 256);
}

#[test]
fn group_order_counts() {
    assert_eq!(bm_pgl3().e_count(CountMode::Bm).eval(2), 168);
    assert_eq!(bm_gl3().e_count(CountMode::Bm).eval(2), 168);
    assert_eq!(bm_pgl3().e_count(CountMode::Bm).eval(3), 5616);
}

#[test]
fn isotypic_extraction() {
    let nonrigid = p(concat!(
        "(3·s[2] + s[1,1])·t^20·L^-10 + (3·s[2] + 3·s[1,1])·t^19·L^-9",
        " + (s[2] + 3·s[1,1])·t^18·L^-8 + s[1,1]·t^17·L^-7"
    ));
    let inv = nonrigid.invariant_part().unwrap();
    assert_eq!(inv.coeff_at(20, -10), 3);
    assert_eq!(inv.coeff_at(17, -7), 0);
    let sgn = nonrigid.sign_part().unwrap();
    assert_eq!(sgn.coeff_at(20, -10), 1);
    assert_eq!(sgn.coeff_at(17, -7), 1);
    assert_eq!(
        nonrigid.isotypic_part(&part("[2]")).unwrap(),
        inv
    );
}

#[test]
fn sign_part_of_pair_representation_vanishes() {
    let six_points = p("s[4] + s[3,1] + s[2,2]");
    assert!(six_points.sign_part().unwrap().is_zero());
}

#[test]
fn forget_collapses_dimensions() {
    assert_eq!(p("s[2] + s[1,1]").forget_equivariant(), p("2"));
    let u = p("s[4]·t^4·L^-2 + s[3,1]·t^3·L^-1 + s[2,1,1]·t^2");
    assert_eq!(
        u.forget_equivariant(),
        p("t^4·L^-2 + 3·t^3·L^-1 + 3·t^2")
    );
}

#[test]
fn isotypic_on_plain_polynomial_errors() {
    assert!(p("1 + t·L").invariant_part().is_err());
}

#[test]
fn mixed_group_sizes_rejected() {
    let a = p("s[2]");
    let b = p("s[3]");
    assert!(a.mul(&b).is_err());
    assert!(a.add(&b).is_err());
    assert!(a.add(&p("1")).is_err());
}

#[test]
fn plain_scales_equivariant() {
    let a = p("s[2]·t^2·L^-1 + s[1,1]·t");
    let scale = p("t^4·L^-2");
    let scaled = a.mul(&scale).unwrap();
    assert_eq!(scaled, p("s[2]·t^6·L^-3 + s[1,1]·t^5·L^-2"));
    // Scaling commutes.
    assert_eq!(scale.mul(&a).unwrap(), scaled);
}

#[test]
fn addition_cancels_to_empty() {
    let a = p("t^3·L^-1 + 2·t");
    let zero = a.add(&a.neg()).unwrap();
    assert!(zero.is_zero());
    assert_eq!(zero, HGPoly::zero());
}

#[test]
fn tate_laurent_division() {
    let a = TateLaurent::monomial(-3, 6);
    let b = TateLaurent::monomial(-1, 2);
    assert_eq!(a.try_div(&b), Some(TateLaurent::monomial(-2, 3)));
    let c = TateLaurent::monomial(-1, 4);
    assert_eq!(TateLaurent::monomial(0, 2).try_div(&c), None);
}

#[test]
fn promote_and_forget_are_adjoint_on_dimensions() {
    let a = p("1 + 2·t^2·L^-1");
    let e = a.promote(2).unwrap();
    assert_eq!(e, p("s[2] + 2·s[2]·t^2·L^-1"));
    assert_eq!(e.forget_equivariant(), a);
}
