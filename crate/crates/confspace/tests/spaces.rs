use confspace::{
    bm, bm_affine, bm_constants, bm_gl3, bm_grassmannian, bm_pgl3, bm_proj, coh_flag_p2, coh_gl3,
    ActionGenerator, BmError, FactTable, LocalSystem, QuotientChar, SpaceExpr,
};
use hgring::{CountMode, HGPoly};

fn p(s: &str) -> HGPoly {
    s.parse().unwrap_or_else(|e| panic!("parse {s:?}: {e}"))
}

fn facts() -> FactTable {
    bm_constants()
}

fn ev(expr: &SpaceExpr, sys: LocalSystem) -> HGPoly {
    bm(expr, sys, &facts())
        .unwrap_or_else(|e| panic!("bm({expr}): {e}"))
        .value
}

fn conf(k: u32, base: SpaceExpr) -> SpaceExpr {
    SpaceExpr::Conf(k, Box::new(base))
}

fn fibration(base: SpaceExpr, fibre: SpaceExpr, asserted: bool) -> SpaceExpr {
    SpaceExpr::Fibration {
        base: Box::new(base),
        fibre: Box::new(fibre),
        assert_multiplicative: asserted,
    }
}

fn quotient(cover: SpaceExpr, wholly_invariant: bool, gens: &[(QuotientChar, &[&[u32]])]) -> SpaceExpr {
    SpaceExpr::Quotient {
        cover: Box::new(cover),
        action: confspace::GroupAction {
            wholly_invariant,
            generators: gens
                .iter()
                .map(|(ch, cycles)| ActionGenerator {
                    character: *ch,
                    cycles: cycles.iter().map(|c| c.to_vec()).collect(),
                })
                .collect(),
        },
    }
}

fn complement(ambient: SpaceExpr, closed: SpaceExpr) -> SpaceExpr {
    SpaceExpr::Complement {
        ambient: Box::new(ambient),
        closed: Box::new(closed),
    }
}

#[test]
fn affine_and_projective_values() {
    assert_eq!(ev(&SpaceExpr::Affine(2), LocalSystem::Constant), p("t^4·L^-2"));
    assert_eq!(ev(&SpaceExpr::Affine(0), LocalSystem::Constant), p("1"));
    assert_eq!(ev(&SpaceExpr::Proj(1), LocalSystem::Constant), p("1 + t^2·L^-1"));
    assert_eq!(
        ev(&SpaceExpr::Proj(2), LocalSystem::Constant),
        p("1 + t^2·L^-1 + t^4·L^-2")
    );
    assert_eq!(bm_proj(0), p("1"));
    assert_eq!(bm_affine(3), p("t^6·L^-3"));
}

#[test]
fn grassmannian_schubert_values() {
    assert_eq!(bm_grassmannian(0, 2), bm_proj(2));
    assert_eq!(bm_grassmannian(1, 1), p("1"));
    assert_eq!(bm_grassmannian(1, 2), p("1 + t^2·L^-1 + t^4·L^-2"));
    assert_eq!(
        bm_grassmannian(1, 3),
        p("1 + t^2·L^-1 + 2·t^4·L^-2 + t^6·L^-3 + t^8·L^-4")
    );
    assert_eq!(bm_grassmannian(2, 2), p("1"));
    assert!(bm_grassmannian(3, 2).is_zero());
}

#[test]
fn grassmannian_duality() {
    for n in 1..=6u32 {
        for m in 0..n {
            assert_eq!(bm_grassmannian(m, n), bm_grassmannian(n - m - 1, n), "G({m},P^{n})");
        }
    }
}

#[test]
fn linear_group_constants() {
    assert_eq!(bm_pgl3().e_count(CountMode::Bm).eval(2), 168);
    assert_eq!(bm_pgl3().e_count(CountMode::Bm).eval(3), 5616);
    assert_eq!(bm_gl3(), bm_pgl3().mul(&p("t^2·L^-1 + t")).unwrap());
    assert_eq!(bm_gl3().e_count(CountMode::Bm).eval(2), 168);
    assert_eq!(bm_gl3().e_count(CountMode::Bm).eval(3), 11232);
    assert_eq!(coh_gl3(), p("(1 + t·L)·(1 + t^3·L^2)·(1 + t^5·L^3)"));
    assert_eq!(coh_gl3().coeff_at(0, 0), 1);
    assert_eq!(
        coh_flag_p2(),
        p("(1 + t^2·L)·(1 + t^2·L + t^4·L^2)")
    );
    assert_eq!(ev(&SpaceExpr::Pgl3, LocalSystem::Constant), bm_pgl3());
    assert_eq!(ev(&SpaceExpr::Gl3, LocalSystem::Constant), bm_gl3());
}

#[test]
fn pairs_on_a_line() {
    let b2p1 = conf(2, SpaceExpr::Proj(1));
    assert_eq!(ev(&b2p1, LocalSystem::Constant), p("t^4·L^-2"));
    assert_eq!(ev(&b2p1, LocalSystem::Twisted), p("t^2·L^-1"));
}

#[test]
fn pairs_in_the_plane() {
    let b2p2 = conf(2, SpaceExpr::Proj(2));
    assert_eq!(
        ev(&b2p2, LocalSystem::Constant),
        p("t^4·L^-2 + t^6·L^-3 + t^8·L^-4")
    );
    assert_eq!(
        ev(&b2p2, LocalSystem::Twisted),
        p("(1 + t^2·L^-1 + t^4·L^-2)·t^2·L^-1")
    );
}

#[test]
fn twisted_affine_configurations_vanish() {
    assert!(ev(&conf(2, SpaceExpr::Affine(2)), LocalSystem::Twisted).is_zero());
    assert!(ev(&conf(3, SpaceExpr::Affine(1)), LocalSystem::Twisted).is_zero());
}

#[test]
fn overcrowded_projective_configurations_vanish() {
    assert!(ev(&conf(3, SpaceExpr::Proj(1)), LocalSystem::Twisted).is_zero());
    assert!(ev(&conf(4, SpaceExpr::Proj(2)), LocalSystem::Twisted).is_zero());
}

#[test]
fn triples_in_the_plane_twisted() {
    assert_eq!(
        ev(&conf(3, SpaceExpr::Proj(2)), LocalSystem::Twisted),
        p("t^6·L^-3")
    );
}

#[test]
fn pair_counts_match_point_counts() {
    // Unordered distinct pairs of rational points plus conjugate quadratic
    // pairs; the signed count weights the quadratic orbit by -1.
    for q in [2i64, 3, 4, 5] {
        let n1 = q + 1;
        let n2 = q * q + 1;
        let stable = (n1 * n1 - n1) / 2 + (n2 - n1) / 2;
        let signed = (n1 * n1 - n1) / 2 - (n2 - n1) / 2;
        let b2p1 = conf(2, SpaceExpr::Proj(1));
        assert_eq!(
            ev(&b2p1, LocalSystem::Constant).e_count(CountMode::Bm).eval(q as u64),
            stable
        );
        assert_eq!(
            ev(&b2p1, LocalSystem::Twisted).e_count(CountMode::Bm).eval(q as u64),
            signed
        );
    }
}

#[test]
fn single_point_configuration_forgets_the_system() {
    let c1 = conf(1, SpaceExpr::Proj(2));
    assert_eq!(ev(&c1, LocalSystem::Constant), bm_proj(2));
    assert_eq!(ev(&c1, LocalSystem::Twisted), bm_proj(2));
}

#[test]
fn named_fact_lookup() {
    let mut t = facts();
    t.insert("curve-classes".into(), p("s[4] + s[2,1,1]·t"));
    let e = SpaceExpr::Named("curve-classes".into());
    assert_eq!(bm(&e, LocalSystem::Constant, &t).unwrap().value, p("s[4] + s[2,1,1]·t"));
    let missing = SpaceExpr::Named("no-such-fact".into());
    match bm(&missing, LocalSystem::Constant, &t) {
        Err(BmError::UnknownFact(id)) => assert_eq!(id, "no-such-fact"),
        other => panic!("expected unknown fact error, got {other:?}"),
    }
}

#[test]
fn irreducible_expressions_ask_for_a_fact() {
    let cases = [
        conf(2, SpaceExpr::Pgl3),
        conf(3, SpaceExpr::Proj(2)),
        conf(0, SpaceExpr::Proj(1)),
    ];
    for e in &cases {
        match bm(e, LocalSystem::Constant, &facts()) {
            Err(BmError::Unreducible { node }) => {
                assert!(node.contains("conf"), "node string {node:?}");
            }
            other => panic!("expected unreducible error for {e}, got {other:?}"),
        }
    }
    match bm(&conf(2, SpaceExpr::Gl3), LocalSystem::Twisted, &facts()) {
        Err(BmError::Unreducible { .. }) => {}
        other => panic!("expected unreducible error, got {other:?}"),
    }
}

#[test]
fn fibrations_require_the_multiplicativity_flag() {
    let unasserted = fibration(SpaceExpr::Pgl3, conf(2, SpaceExpr::Proj(1)), false);
    match bm(&unasserted, LocalSystem::Constant, &facts()) {
        Err(BmError::FibrationUnasserted { .. }) => {}
        other => panic!("expected fibration error, got {other:?}"),
    }
    let asserted = fibration(SpaceExpr::Pgl3, conf(2, SpaceExpr::Proj(1)), true);
    assert_eq!(
        ev(&asserted, LocalSystem::Constant),
        bm_pgl3().mul(&p("t^4·L^-2")).unwrap()
    );
}

#[test]
fn twisted_system_routes_to_configuration_factors() {
    // The sign system lives on the configuration factor only; the group
    // factor is evaluated in the constant system.
    let e = fibration(SpaceExpr::Pgl3, conf(2, SpaceExpr::Proj(1)), true);
    assert_eq!(
        ev(&e, LocalSystem::Twisted),
        bm_pgl3().mul(&p("t^2·L^-1")).unwrap()
    );
    // Both factors carry configurations: the sign system distributes to
    // both, and each vanishes over an affine base.
    let both = fibration(conf(2, SpaceExpr::Affine(2)), conf(2, SpaceExpr::Affine(1)), true);
    assert!(ev(&both, LocalSystem::Twisted).is_zero());
}

#[test]
fn sign_system_degenerates_off_configuration_spaces() {
    let out = bm(&SpaceExpr::Proj(2), LocalSystem::Twisted, &facts()).unwrap();
    assert_eq!(out.value, bm_proj(2));
    assert!(
        out.notes.iter().any(|n| n.contains("constant system")),
        "notes: {:?}",
        out.notes
    );
}

#[test]
fn quotient_by_even_symmetries_keeps_the_cover() {
    let e = quotient(
        SpaceExpr::Pgl3,
        true,
        &[(QuotientChar::Sign, &[&[1, 2], &[3, 4]])],
    );
    assert_eq!(ev(&e, LocalSystem::Constant), bm_pgl3());
}

#[test]
fn quotient_by_an_odd_symmetry_vanishes() {
    let e = quotient(SpaceExpr::Pgl3, true, &[(QuotientChar::Sign, &[&[1, 2]])]);
    let out = bm(&e, LocalSystem::Constant, &facts()).unwrap();
    assert!(out.value.is_zero());
    assert!(
        out.notes.iter().any(|n| n.contains("vanishes")),
        "notes: {:?}",
        out.notes
    );
}

#[test]
fn quotient_with_trivial_character_keeps_the_cover() {
    let e = quotient(SpaceExpr::Pgl3, true, &[(QuotientChar::Trivial, &[&[1, 2]])]);
    assert_eq!(ev(&e, LocalSystem::Constant), bm_pgl3());
    let trivial_group = quotient(SpaceExpr::Pgl3, true, &[]);
    assert_eq!(ev(&trivial_group, LocalSystem::Constant), bm_pgl3());
}

#[test]
fn quotient_without_action_data_errors() {
    let e = quotient(SpaceExpr::Pgl3, false, &[(QuotientChar::Sign, &[&[1, 2], &[3, 4]])]);
    match bm(&e, LocalSystem::Constant, &facts()) {
        Err(BmError::MissingActionData { .. }) => {}
        other => panic!("expected missing action data, got {other:?}"),
    }
}

#[test]
fn complement_of_a_point_in_a_line() {
    let e = complement(SpaceExpr::Proj(1), SpaceExpr::Proj(0));
    assert_eq!(ev(&e, LocalSystem::Constant), p("t^2·L^-1"));
    let o = SpaceExpr::OpenSubset {
        ambient: Box::new(SpaceExpr::Proj(1)),
        closed: Box::new(SpaceExpr::Proj(0)),
    };
    assert_eq!(ev(&o, LocalSystem::Constant), p("t^2·L^-1"));
}

#[test]
fn complement_with_vanishing_closed_part_is_the_ambient() {
    let mut t = facts();
    t.insert("empty-locus".into(), HGPoly::zero());
    let e = complement(SpaceExpr::Proj(2), SpaceExpr::Named("empty-locus".into()));
    let out = bm(&e, LocalSystem::Constant, &t).unwrap();
    assert_eq!(out.value, bm_proj(2));
    assert!(out.notes.iter().any(|n| n.contains("ambient")), "notes: {:?}", out.notes);
}

#[test]
fn underdetermined_complement_is_reported() {
    // Removing a point and a disjoint line from the plane: the boundary
    // rank on the line class is not forced by degree-zero vanishing alone.
    let mut t = facts();
    t.insert("point-and-line".into(), p("2 + t^2·L^-1"));
    let e = complement(SpaceExpr::Proj(2), SpaceExpr::Named("point-and-line".into()));
    match bm(&e, LocalSystem::Constant, &t) {
        Err(BmError::ComplementNotForced { solutions, .. }) => assert_eq!(solutions, 2),
        other => panic!("expected unforced complement, got {other:?}"),
    }
}

#[test]
fn disjoint_unions_add() {
    let e = SpaceExpr::DisjointUnion(vec![SpaceExpr::Affine(2), SpaceExpr::Affine(1)]);
    assert_eq!(ev(&e, LocalSystem::Constant), p("t^4·L^-2 + t^2·L^-1"));
}

#[test]
fn expression_display_is_sexpr() {
    let e = quotient(
        fibration(SpaceExpr::Pgl3, conf(2, SpaceExpr::Proj(1)), true),
        true,
        &[(QuotientChar::Sign, &[&[1, 2], &[3, 4]])],
    );
    assert_eq!(
        e.to_string(),
        "(quotient (fibration pgl3 (conf 2 (proj 1)) assert-mult) wholly-invariant (char sign (12)(34)))"
    );
    let c = complement(SpaceExpr::Proj(1), SpaceExpr::Named("cusp-locus".into()));
    assert_eq!(c.to_string(), "(complement (proj 1) (fact cusp-locus))");
    let u = SpaceExpr::DisjointUnion(vec![SpaceExpr::Affine(2), SpaceExpr::Grassmannian(1, 2)]);
    assert_eq!(u.to_string(), "(disjoint-union (affine 2) (grassmannian 1 2))");
}

#[test]
fn constant_table_contents() {
    let t = bm_constants();
    assert_eq!(t["bm-pgl3"], bm_pgl3());
    assert_eq!(t["bm-gl3"], bm_gl3());
    assert_eq!(t["coh-gl3"], coh_gl3());
    assert_eq!(t["coh-flag-p2"], coh_flag_p2());
    assert_eq!(t["bm-proj1"], bm_proj(1));
    assert_eq!(t["bm-proj2"], bm_proj(2));
}
