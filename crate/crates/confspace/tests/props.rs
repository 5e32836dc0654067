use confspace::{
    bm, bm_constants, finite_quotient, les_solve, open_cone, simplicial_bundle, vb_total,
    ActionGenerator, GroupAction, LocalSystem, QuotientChar, SolveFor, SpaceExpr,
};
use hgring::{CountMode, HGPoly};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn build(terms: Vec<(i64, i64, i64)>) -> HGPoly {
    let mut out = HGPoly::zero();
    for (a, e, c) in terms {
        out = out.add(&HGPoly::plain_term(a, e, c)).unwrap();
    }
    out
}

fn effective_poly(max_deg: i64) -> impl Strategy<Value = HGPoly> {
    prop::collection::vec((0..=max_deg, -3i64..=0, 0i64..=3), 0..6).prop_map(build)
}

fn positive_degree_poly() -> impl Strategy<Value = HGPoly> {
    prop::collection::vec((1i64..=6, -3i64..=0, 0i64..=3), 0..6).prop_map(build)
}

// Split a plain polynomial into (twist -> degree -> multiplicity) blocks.
fn blocks(p: &HGPoly) -> BTreeMap<i64, BTreeMap<i64, i64>> {
    let mut out: BTreeMap<i64, BTreeMap<i64, i64>> = BTreeMap::new();
    if p.is_zero() {
        return out;
    }
    for (a, e, c) in p.iter_plain_terms().unwrap() {
        *out.entry(e).or_default().entry(a).or_default() += c;
    }
    out
}

fn trivial_action() -> GroupAction {
    GroupAction {
        wholly_invariant: true,
        generators: vec![ActionGenerator {
            character: QuotientChar::Trivial,
            cycles: vec![vec![1, 2]],
        }],
    }
}

proptest! {
    // Build a total from explicit boundary ranks, then recover it.
    #[test]
    fn exactness_solver_finds_the_constructed_total(
        closed in effective_poly(6),
        open in effective_poly(6),
        dials in prop::collection::vec(0u8..8, 0..24),
    ) {
        let cb = blocks(&closed);
        let ob = blocks(&open);
        let mut total = HGPoly::zero();
        let mut dial = dials.into_iter().cycle();
        let twists: std::collections::BTreeSet<i64> =
            cb.keys().chain(ob.keys()).copied().collect();
        for e in twists {
            let empty = BTreeMap::new();
            let c = cb.get(&e).unwrap_or(&empty);
            let o = ob.get(&e).unwrap_or(&empty);
            let degrees: std::collections::BTreeSet<i64> =
                c.keys().chain(o.keys()).copied().collect();
            let mut ranks: BTreeMap<i64, i64> = BTreeMap::new();
            for &k in &degrees {
                let bound = (*o.get(&k).unwrap_or(&0)).min(*c.get(&(k - 1)).unwrap_or(&0));
                if bound > 0 {
                    let r = i64::from(dial.next().unwrap_or(0)) % (bound + 1);
                    ranks.insert(k, r);
                }
            }
            for &k in &degrees {
                let t = c.get(&k).unwrap_or(&0) + o.get(&k).unwrap_or(&0)
                    - ranks.get(&k).unwrap_or(&0)
                    - ranks.get(&(k + 1)).unwrap_or(&0);
                prop_assert!(t >= 0);
                total = total.add(&HGPoly::plain_term(k, e, t)).unwrap();
            }
        }
        let sols = les_solve(&closed, &open, SolveFor::Total, &[]).unwrap();
        prop_assert!(
            sols.iter().any(|s| s.solved == total),
            "constructed total not found among {} solutions",
            sols.len()
        );
    }

    // Exactness preserves the alternating point count of any solution.
    #[test]
    fn exactness_preserves_euler_counts(
        closed in effective_poly(5),
        open in effective_poly(5),
    ) {
        let sols = les_solve(&closed, &open, SolveFor::Total, &[]).unwrap();
        for q in [2u64, 3] {
            let want = closed.e_count(CountMode::Bm).eval(q)
                + open.e_count(CountMode::Bm).eval(q);
            for s in &sols {
                prop_assert_eq!(s.solved.e_count(CountMode::Bm).eval(q), want);
            }
        }
    }

    #[test]
    fn bundle_operations_commute(
        p in effective_poly(6),
        r in 0u32..4,
        m in 1u32..5,
        tw in -2i64..=2,
    ) {
        let a = vb_total(&simplicial_bundle(&p, m), r);
        let b = simplicial_bundle(&vb_total(&p, r), m);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(vb_total(&p, r).tate_twist(tw), vb_total(&p.tate_twist(tw), r));
        prop_assert_eq!(
            simplicial_bundle(&p, m).tate_twist(tw),
            simplicial_bundle(&p.tate_twist(tw), m)
        );
    }

    // Coning a base whose classes all sit in positive degree, plus the
    // unit, is exactly a degree shift: the vertex kills the unit.
    #[test]
    fn cone_undoes_the_unit(p in positive_degree_poly()) {
        let base = p.add(&HGPoly::one()).unwrap();
        let out = open_cone(&base).unwrap();
        prop_assert!(!out.vertex_warning);
        prop_assert_eq!(out.value, p.shift(1));
    }

    #[test]
    fn trivial_quotients_are_idempotent(p in effective_poly(6)) {
        let once = finite_quotient(&p, &trivial_action()).unwrap().value;
        let twice = finite_quotient(&once, &trivial_action()).unwrap().value;
        prop_assert_eq!(&once, &p);
        prop_assert_eq!(&twice, &once);
    }
}

#[test]
fn pair_space_counts_match_closed_formulas() {
    let facts = bm_constants();
    for n in 1u32..=3 {
        let expr = SpaceExpr::Conf(2, Box::new(SpaceExpr::Proj(n)));
        for q in [2i64, 3, 4, 5] {
            let n1: i64 = (0..=n).map(|i| q.pow(i)).sum();
            let n2: i64 = (0..=n).map(|i| (q * q).pow(i)).sum();
            let stable = (n1 * n1 - n1) / 2 + (n2 - n1) / 2;
            let signed = (n1 * n1 - n1) / 2 - (n2 - n1) / 2;
            let plain = bm(&expr, LocalSystem::Constant, &facts).unwrap().value;
            let twisted = bm(&expr, LocalSystem::Twisted, &facts).unwrap().value;
            assert_eq!(plain.e_count(CountMode::Bm).eval(q as u64), stable, "B(2,P^{n}) at q={q}");
            assert_eq!(twisted.e_count(CountMode::Bm).eval(q as u64), signed, "signed B(2,P^{n}) at q={q}");
        }
    }
}
