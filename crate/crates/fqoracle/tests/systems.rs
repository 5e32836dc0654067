use fqoracle::{field, quartic_monomials, solve_system, LinearSystemSpec, Quartic};

#[test]
fn monomial_order_is_pinned() {
    let expected: [[u8; 3]; 15] = [
        [4, 0, 0],
        [3, 1, 0],
        [3, 0, 1],
        [2, 2, 0],
        [2, 1, 1],
        [2, 0, 2],
        [1, 3, 0],
        [1, 2, 1],
        [1, 1, 2],
        [1, 0, 3],
        [0, 4, 0],
        [0, 3, 1],
        [0, 2, 2],
        [0, 1, 3],
        [0, 0, 4],
    ];
    assert_eq!(quartic_monomials(), &expected);
}

#[test]
fn partials_respect_the_characteristic() {
    let f2 = field(2, 1);
    let f3 = field(3, 1);
    // x0^4: the derivative 4 x0^3 dies mod 2 and becomes x0^3 mod 3.
    let mut c = [0u32; 15];
    c[0] = 1;
    let f = Quartic::from_ints(f2, c);
    let [d0, d1, d2] = f.partials(f2);
    assert!(d0.coeffs.iter().all(|&x| f2.is_zero(x)));
    assert!(d1.coeffs.iter().all(|&x| f2.is_zero(x)));
    assert!(d2.coeffs.iter().all(|&x| f2.is_zero(x)));
    let f = Quartic::from_ints(f3, c);
    let [d0, _, _] = f.partials(f3);
    let nonzero: Vec<usize> = (0..10).filter(|&i| !f3.is_zero(d0.coeffs[i])).collect();
    assert_eq!(nonzero, vec![0]); // x0^3 is the first cubic monomial
    assert_eq!(d0.coeffs[0], f3.one());
}

#[test]
fn substitution_permutes_variables() {
    let f3 = field(3, 1);
    let mut c = [0u32; 15];
    c[1] = f3.from_int(2); // 2 x0^3 x1
    let f = Quartic::from_ints(f3, c);
    let one = f3.one();
    // Swap x0 and x1.
    let swap = [[0, one, 0], [one, 0, 0], [0, 0, one]];
    let g = f.substitute(f3, &swap);
    // Expect 2 x1^3 x0, which sits at exponent (1,3,0).
    let idx = quartic_monomials()
        .iter()
        .position(|e| *e == [1, 3, 0])
        .unwrap();
    for (i, &coeff) in g.c.iter().enumerate() {
        if i == idx {
            assert_eq!(coeff, f3.from_int(2));
        } else {
            assert!(f3.is_zero(coeff));
        }
    }
}

#[test]
fn full_system_has_all_fifteen_dimensions() {
    for q in [2u32, 3, 4, 5] {
        let (p, k) = fqoracle::parse_prime_power(q as u64).unwrap();
        let fq = field(p, k);
        let basis = solve_system(&LinearSystemSpec::Full, fq).unwrap();
        assert_eq!(basis.len(), 15);
    }
}

#[test]
fn tangency_systems_have_dimension_eleven() {
    for q in [2u32, 3, 4, 5] {
        let (p, k) = fqoracle::parse_prime_power(q as u64).unwrap();
        let fq = field(p, k);
        let flex = solve_system(&LinearSystemSpec::canonical_flex(fq), fq).unwrap();
        assert_eq!(flex.len(), 11, "flex over F_{q}");
        let proper = solve_system(&LinearSystemSpec::canonical_proper(fq), fq).unwrap();
        assert_eq!(proper.len(), 11, "proper over F_{q}");
    }
}

// Restriction to the line x2 = 0 reads off the coefficients of
// x0^(4-i) x1^i, which sit at slots 0, 1, 3, 6, 10.
fn line_coeffs(f: &Quartic) -> [u32; 5] {
    [f.c[0], f.c[1], f.c[3], f.c[6], f.c[10]]
}

#[test]
fn flex_members_meet_the_line_only_at_the_marked_point() {
    let f2 = field(2, 1);
    let basis = solve_system(&LinearSystemSpec::canonical_flex(f2), f2).unwrap();
    // The restriction must be a multiple of l_p^4 = x1^4: every mixed
    // coefficient vanishes.
    for f in &basis {
        let r = line_coeffs(f);
        assert!(f2.is_zero(r[0]));
        assert!(f2.is_zero(r[1]));
        assert!(f2.is_zero(r[2]));
        assert!(f2.is_zero(r[3]));
    }
    // The restriction map is onto the multiples: some member hits x1^4.
    assert!(basis.iter().any(|f| !f2.is_zero(line_coeffs(f)[4])));
}

#[test]
fn proper_members_touch_the_line_doubly_at_both_points() {
    for q in [2u32, 3, 5] {
        let (p, k) = fqoracle::parse_prime_power(q as u64).unwrap();
        let fq = field(p, k);
        let basis = solve_system(&LinearSystemSpec::canonical_proper(fq), fq).unwrap();
        // The restriction must be a multiple of x0^2 x1^2.
        for f in &basis {
            let r = line_coeffs(f);
            assert!(fq.is_zero(r[0]));
            assert!(fq.is_zero(r[1]));
            assert!(fq.is_zero(r[3]));
            assert!(fq.is_zero(r[4]));
        }
        assert!(basis.iter().any(|f| !fq.is_zero(line_coeffs(f)[2])));
    }
}

#[test]
fn flex_restriction_checked_pointwise_in_an_extension() {
    // Independent check of the tangency condition: embed a basis solved
    // over F_2 into F_16 and verify that f(s, 1, 0) is constant in s,
    // which forces the restriction to be a multiple of x1^4.
    let f2 = field(2, 1);
    let f16 = field(2, 4);
    let table = f2.embed_table(f16);
    let basis = solve_system(&LinearSystemSpec::canonical_flex(f2), f2).unwrap();
    for f in &basis {
        let mut lifted = [0u32; 15];
        for (slot, &c) in lifted.iter_mut().zip(f.c.iter()) {
            *slot = table[c as usize];
        }
        let g = Quartic { c: lifted };
        let baseline = g.as_form().eval(f16, [f16.zero(), f16.one(), f16.zero()]);
        for s in f16.elements() {
            assert_eq!(g.as_form().eval(f16, [s, f16.one(), f16.zero()]), baseline);
        }
    }
}

#[test]
fn degenerate_configurations_are_rejected() {
    let f2 = field(2, 1);
    let one = f2.one();
    // Coincident marked points.
    let bad = LinearSystemSpec::ProperBitangent {
        p: [one, 0, 0],
        q: [one, 0, 0],
        t: [0, 0, one],
    };
    assert!(solve_system(&bad, f2).is_err());
    // Marked point off the line.
    let off = LinearSystemSpec::FlexBitangent {
        p: [0, 0, one],
        t: [0, 0, one],
    };
    assert!(solve_system(&off, f2).is_err());
    // Zero line covector.
    let zero_line = LinearSystemSpec::FlexBitangent {
        p: [one, 0, 0],
        t: [0, 0, 0],
    };
    assert!(solve_system(&zero_line, f2).is_err());
    // Zero marked point.
    let zero_point = LinearSystemSpec::FlexBitangent {
        p: [0, 0, 0],
        t: [0, 0, one],
    };
    assert!(solve_system(&zero_point, f2).is_err());
    // Projectively equal marked points over a bigger field.
    let f4 = field(2, 2);
    let g = f4.from_packed(2); // a generator
    let prop = LinearSystemSpec::ProperBitangent {
        p: [f4.one(), g, 0],
        q: [g, f4.mul(g, g), 0],
        t: [0, 0, f4.one()],
    };
    assert!(solve_system(&prop, f4).is_err());
}

#[test]
fn oblique_configuration_matches_the_canonical_dimension() {
    // A bitangent line in general position: t = {x0 + x1 + x2 = 0} with
    // p = (1:1:0) and q = (0:1:1) on it.
    let f3 = field(3, 1);
    let one = f3.one();
    let spec = LinearSystemSpec::ProperBitangent {
        p: [one, f3.neg(one), 0],
        q: [0, one, f3.neg(one)],
        t: [one, one, one],
    };
    let basis = solve_system(&spec, f3).unwrap();
    assert_eq!(basis.len(), 11);
    // Every member vanishes doubly at p and q: both points lie on every
    // curve of the system.
    for f in &basis {
        assert!(f3.is_zero(f.as_form().eval(f3, [one, f3.neg(one), 0])));
        assert!(f3.is_zero(f.as_form().eval(f3, [0, one, f3.neg(one)])));
    }
}
