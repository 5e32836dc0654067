//! Character values checked against an independent combinatorial oracle.
//!
//! The oracle never touches the Murnaghan–Nakayama code path: it computes
//! Young-subgroup permutation characters by counting cycle distributions and
//! expands irreducible characters through the Jacobi–Trudi determinant
//!     chi^lambda = sum_{sigma} sgn(sigma) * h_{(lambda_i - i + sigma(i))},
//! where h_nu is the permutation character of S_n on S_nu-cosets.
//! Dimensions are cross-checked by explicit standard-Young-tableau counting.

use symrep::{
    character, character_table, induce, isotypic_mult, kronecker, outer, pairs_permutation_rep,
    partitions, specht_dim, Partition, SpechtVector,
};

/// Number of ways to distribute the cycles of a permutation of type `mu`
/// into ordered blocks of sizes `nu` (cycles of equal length distinguishable).
/// This is the value at class `mu` of the permutation character on S_nu-cosets.
fn young_perm_char(nu: &[i64], mu: &[u8]) -> i64 {
    // multiplicity per cycle length
    let mut mult = std::collections::BTreeMap::<u8, i64>::new();
    for &l in mu {
        *mult.entry(l).or_insert(0) += 1;
    }
    let lengths: Vec<u8> = mult.keys().copied().collect();
    let counts: Vec<i64> = mult.values().copied().collect();

    fn binom(n: i64, k: i64) -> i64 {
        if k < 0 || k > n {
            return 0;
        }
        let mut r: i64 = 1;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    // fill blocks one at a time
    fn go(blocks: &[i64], lengths: &[u8], counts: &mut Vec<i64>) -> i64 {
        let Some((&b0, rest)) = blocks.split_first() else {
            return if counts.iter().all(|&c| c == 0) { 1 } else { 0 };
        };
        // choose how many cycles of each length go into the first block
        fn choose(
            idx: usize,
            remaining: i64,
            blocks_rest: &[i64],
            lengths: &[u8],
            counts: &mut Vec<i64>,
        ) -> i64 {
            if remaining == 0 {
                return go(blocks_rest, lengths, counts);
            }
            if idx == lengths.len() {
                return 0;
            }
            let l = lengths[idx] as i64;
            let avail = counts[idx];
            let mut total = 0;
            let max_take = (remaining / l).min(avail);
            for take in 0..=max_take {
                counts[idx] -= take;
                total += binom(avail, take)
                    * choose(idx + 1, remaining - take * l, blocks_rest, lengths, counts);
                counts[idx] += take;
            }
            total
        }
        choose(0, b0, rest, lengths, &mut counts.to_vec())
    }

    let mut c = counts;
    go(nu, &lengths, &mut c)
}

/// chi^lambda(mu) via the Jacobi–Trudi expansion over permutation characters.
fn jacobi_trudi_char(lambda: &[u8], mu: &[u8]) -> i64 {
    let k = lambda.len();
    if k == 0 {
        return 1;
    }
    // iterate over all permutations of 0..k with sign
    let mut perm: Vec<usize> = (0..k).collect();
    let mut total = 0i64;
    loop {
        let mut sign = 1i64;
        for i in 0..k {
            for j in (i + 1)..k {
                if perm[i] > perm[j] {
                    sign = -sign;
                }
            }
        }
        // nu_i = lambda_i - i + perm(i)  (0-indexed equivalent)
        let mut nu = Vec::with_capacity(k);
        let mut ok = true;
        for i in 0..k {
            let v = lambda[i] as i64 - i as i64 + perm[i] as i64;
            if v < 0 {
                ok = false;
                break;
            }
            if v > 0 {
                nu.push(v);
            }
        }
        if ok {
            total += sign * young_perm_char(&nu, mu);
        }
        // next permutation (lexicographic)
        let mut i = k as i64 - 2;
        while i >= 0 && perm[i as usize] >= perm[i as usize + 1] {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        let i = i as usize;
        let mut j = k - 1;
        while perm[j] <= perm[i] {
            j -= 1;
        }
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    total
}

/// Count standard Young tableaux of shape `lambda` by brute-force filling.
fn syt_count(lambda: &[u8]) -> u64 {
    let rows = lambda.len();
    if rows == 0 {
        return 1;
    }
    fn go(filled: &mut Vec<u8>, lambda: &[u8], next: u8, n: u8) -> u64 {
        if next > n {
            return 1;
        }
        let mut total = 0;
        for r in 0..lambda.len() {
            // next entry goes at the end of row r if the row is not full and
            // the row above is strictly longer so columns stay increasing
            if filled[r] < lambda[r] && (r == 0 || filled[r - 1] > filled[r]) {
                filled[r] += 1;
                total += go(filled, lambda, next + 1, n);
                filled[r] -= 1;
            }
        }
        total
    }
    let n: u8 = lambda.iter().sum();
    go(&mut vec![0; rows], lambda, 1, n)
}

fn p(parts: &[u8]) -> Partition {
    Partition::new(parts).expect("valid partition")
}

#[test]
fn murnaghan_nakayama_matches_jacobi_trudi_oracle_up_to_n6() {
    for n in 0..=6usize {
        for lambda in partitions(n) {
            for mu in partitions(n) {
                let fast = character(&lambda, &mu);
                let slow = jacobi_trudi_char(lambda.parts(), mu.parts());
                assert_eq!(
                    fast, slow,
                    "character mismatch at lambda={lambda}, mu={mu}"
                );
            }
        }
    }
}

#[test]
fn murnaghan_nakayama_matches_jacobi_trudi_oracle_spot_n8() {
    for (lambda, mu) in [
        (p(&[4, 3, 1]), p(&[3, 3, 2])),
        (p(&[5, 2, 1]), p(&[2, 2, 2, 1, 1])),
        (p(&[3, 3, 2]), p(&[8])),
        (p(&[2, 2, 2, 2]), p(&[4, 4])),
        (p(&[6, 1, 1]), p(&[3, 2, 2, 1])),
    ] {
        assert_eq!(
            character(&lambda, &mu),
            jacobi_trudi_char(lambda.parts(), mu.parts()),
            "character mismatch at lambda={lambda}, mu={mu}"
        );
    }
}

#[test]
fn dims_match_tableau_enumeration() {
    for n in 0..=6usize {
        for lambda in partitions(n) {
            assert_eq!(
                specht_dim(&lambda),
                syt_count(lambda.parts()),
                "dimension mismatch at {lambda}"
            );
        }
    }
    assert_eq!(specht_dim(&p(&[4])), 1);
    assert_eq!(specht_dim(&p(&[1, 1])), 1);
    assert_eq!(specht_dim(&p(&[3, 1])), 3);
}

#[test]
fn dim_squares_sum_to_group_order() {
    let mut fact = 1u64;
    for n in 1..=6u64 {
        fact *= n;
        let total: u64 = partitions(n as usize)
            .iter()
            .map(|l| specht_dim(l) * specht_dim(l))
            .sum();
        assert_eq!(total, fact, "sum of dim^2 != {n}! for S{n}");
    }
}

#[test]
fn character_table_row_orthogonality() {
    for n in 1..=6usize {
        let tab = character_table(n);
        let irreps = partitions(n);
        for (i, li) in irreps.iter().enumerate() {
            for (j, lj) in irreps.iter().enumerate() {
                let mut dot: i64 = 0;
                for (k, mu) in partitions(n).iter().enumerate() {
                    dot += tab.class_sizes()[k] as i64 * character(li, mu) * character(lj, mu);
                }
                let expected = if i == j { tab.group_order() as i64 } else { 0 };
                assert_eq!(dot, expected, "orthogonality fails at {li}, {lj}");
            }
        }
    }
}

#[test]
fn trivial_and_sign_characters() {
    for n in 1..=8usize {
        for mu in partitions(n) {
            assert_eq!(character(&Partition::trivial(n), &mu), 1);
        }
    }
    // sign of a transposition in S4
    assert_eq!(character(&p(&[1, 1, 1, 1]), &p(&[2, 1, 1])), -1);
    // border-strip value checked above against the oracle; pin it explicitly
    assert_eq!(character(&p(&[2, 2]), &p(&[3, 1])), -1);
}

#[test]
fn kronecker_units_and_sign_twist() {
    for n in 2..=6usize {
        for lambda in partitions(n) {
            let v = SpechtVector::irreducible(&lambda);
            let triv = SpechtVector::trivial(n);
            let sign = SpechtVector::sign(n);
            assert_eq!(
                kronecker(&v, &triv).unwrap(),
                v,
                "trivial is not a kronecker unit at {lambda}"
            );
            let twisted = kronecker(&v, &sign).unwrap();
            assert_eq!(
                twisted,
                SpechtVector::irreducible(&lambda.conjugate()),
                "sign twist should conjugate {lambda}"
            );
        }
    }
}

#[test]
fn kronecker_square_of_standard_plus_trivial_s4() {
    // (3,1) x (3,1) decomposed via character inner products
    let v = SpechtVector::irreducible(&p(&[3, 1]));
    let sq = kronecker(&v, &v).unwrap();
    let mut expected = SpechtVector::zero(4);
    for l in [
        p(&[4]),
        p(&[3, 1]),
        p(&[2, 2]),
        p(&[2, 1, 1]),
    ] {
        expected.add_assign_irrep(&l, 1);
    }
    assert_eq!(sq, expected, "(3,1) tensor square in S4");
}

#[test]
fn induction_examples() {
    // Ind_{S3}^{S4}(trivial) = [4] + [3,1]
    let got = induce(&SpechtVector::trivial(3), 4).unwrap();
    let mut expected = SpechtVector::zero(4);
    expected.add_assign_irrep(&p(&[4]), 1);
    expected.add_assign_irrep(&p(&[3, 1]), 1);
    assert_eq!(got, expected);

    // Ind_{S3}^{S4}([2,1]) = [3,1] + [2,2] + [2,1,1]
    let got = induce(&SpechtVector::irreducible(&p(&[2, 1])), 4).unwrap();
    let mut expected = SpechtVector::zero(4);
    expected.add_assign_irrep(&p(&[3, 1]), 1);
    expected.add_assign_irrep(&p(&[2, 2]), 1);
    expected.add_assign_irrep(&p(&[2, 1, 1]), 1);
    assert_eq!(got, expected);

    // Ind_{S1}^{S2}(trivial) = regular representation of S2
    let got = induce(&SpechtVector::trivial(1), 2).unwrap();
    let mut expected = SpechtVector::zero(2);
    expected.add_assign_irrep(&p(&[2]), 1);
    expected.add_assign_irrep(&p(&[1, 1]), 1);
    assert_eq!(got, expected);

    // tower identity Ind(trivial of S_{n-1}) = [n] + [n-1,1]
    for n in 2..=6usize {
        let got = induce(&SpechtVector::trivial(n - 1), n).unwrap();
        let mut expected = SpechtVector::zero(n);
        expected.add_assign_irrep(&Partition::trivial(n), 1);
        expected.add_assign_irrep(&p(&[(n - 1) as u8, 1]), 1);
        assert_eq!(got, expected, "induced trivial from S{}", n - 1);
    }
}

#[test]
fn outer_product_agrees_with_pieri_on_one_box() {
    // outer(lambda, [1]) adds one box in all valid ways
    let lam = p(&[2, 1]);
    let got = outer(
        &SpechtVector::irreducible(&lam),
        &SpechtVector::trivial(1),
    );
    let mut expected = SpechtVector::zero(4);
    expected.add_assign_irrep(&p(&[3, 1]), 1);
    expected.add_assign_irrep(&p(&[2, 2]), 1);
    expected.add_assign_irrep(&p(&[2, 1, 1]), 1);
    assert_eq!(got, expected);
}

#[test]
fn pairs_permutation_representations() {
    // n=2: a single pair, trivial action
    assert_eq!(pairs_permutation_rep(2), SpechtVector::trivial(2));

    // n=3: character (3,1,0) = [3] + [2,1]
    let mut expected = SpechtVector::zero(3);
    expected.add_assign_irrep(&p(&[3]), 1);
    expected.add_assign_irrep(&p(&[2, 1]), 1);
    assert_eq!(pairs_permutation_rep(3), expected);

    // n=4: fixed-point character (6,2,2,0,0) = [4] + [3,1] + [2,2]
    let mut expected = SpechtVector::zero(4);
    expected.add_assign_irrep(&p(&[4]), 1);
    expected.add_assign_irrep(&p(&[3, 1]), 1);
    expected.add_assign_irrep(&p(&[2, 2]), 1);
    assert_eq!(pairs_permutation_rep(4), expected);
}

#[test]
fn isotypic_multiplicities() {
    let mut r = SpechtVector::zero(4);
    r.add_assign_irrep(&p(&[4]), 1);
    r.add_assign_irrep(&p(&[3, 1]), 1);
    r.add_assign_irrep(&p(&[2, 2]), 1);
    assert_eq!(isotypic_mult(&r, &p(&[1, 1, 1, 1])), 0);

    let reg = SpechtVector::regular(4);
    assert_eq!(isotypic_mult(&reg, &p(&[4])), 1);
    assert_eq!(isotypic_mult(&reg, &p(&[3, 1])), 3);

    let ind = induce(&SpechtVector::trivial(1), 3).unwrap();
    assert_eq!(isotypic_mult(&ind, &p(&[2, 1])), 2);
}

#[test]
fn partition_text_round_trip() {
    for n in 0..=8usize {
        for lambda in partitions(n) {
            let text = lambda.to_string();
            let back: Partition = text.parse().expect("parse back");
            assert_eq!(back, lambda, "round trip through {text}");
        }
    }
    assert_eq!(p(&[3, 1]).to_string(), "[3,1]");
    assert_eq!(Partition::trivial(0).to_string(), "[]");
    assert!("[1,3]".parse::<Partition>().is_err(), "increasing parts rejected");
    assert!("[0]".parse::<Partition>().is_err(), "zero part rejected");
}
