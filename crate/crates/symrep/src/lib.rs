//! Exact representation ring of the symmetric groups S_n, n <= 8.
//!
//! Characters come from the Murnaghan–Nakayama rule; full tables are built
//! once per group size and cached, so repeated lookups are table reads.
//! Virtual representations are integer linear combinations of partitions
//! ("Specht vectors") with negative coefficients allowed: long-exact-sequence
//! bookkeeping downstream needs formal differences.
//!
//! Textual forms: a partition prints as "[3,1]"; a Specht vector prints as a
//! signed sum like "[4]+2·[3,1]-[2,2]".

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

/// Largest group size for which character tables are built.
pub const MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymrepError {
    GroupSizeMismatch { left: usize, right: usize },
    InvalidPartition(String),
    GroupTooLarge(usize),
}

impl fmt::Display for SymrepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymrepError::GroupSizeMismatch { left, right } => {
                write!(f, "group size mismatch: S{left} versus S{right}")
            }
            SymrepError::InvalidPartition(s) => write!(f, "invalid partition: {s}"),
            SymrepError::GroupTooLarge(n) => {
                write!(f, "group size {n} exceeds the supported cap {MAX_N}")
            }
        }
    }
}

impl std::error::Error for SymrepError {}

/// A partition of n: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u8>,
}

impl Partition {
    pub fn new(parts: &[u8]) -> Result<Partition, SymrepError> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(SymrepError::InvalidPartition(format!(
                    "parts not weakly decreasing: {parts:?}"
                )));
            }
        }
        if parts.contains(&0) {
            return Err(SymrepError::InvalidPartition(format!(
                "zero part in {parts:?}"
            )));
        }
        Ok(Partition {
            parts: parts.to_vec(),
        })
    }

    /// The one-row partition [n]; the empty partition for n = 0.
    pub fn trivial(n: usize) -> Partition {
        if n == 0 {
            Partition { parts: vec![] }
        } else {
            Partition {
                parts: vec![n as u8],
            }
        }
    }

    /// The one-column partition [1^n].
    pub fn sign(n: usize) -> Partition {
        Partition {
            parts: vec![1; n],
        }
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    /// Transposed Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0) as usize;
        let mut out = Vec::with_capacity(cols);
        for c in 1..=cols {
            out.push(self.parts.iter().filter(|&&p| p as usize >= c).count() as u8);
        }
        Partition { parts: out }
    }
}

// Canonical order: by n, then descending-lexicographic on parts, so that for
// fixed n the trivial partition [n] sorts first and [1^n] last.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = SymrepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| SymrepError::InvalidPartition(format!("missing brackets in {s:?}")))?;
        let mut parts = Vec::new();
        if !inner.trim().is_empty() {
            for piece in inner.split(',') {
                let v: u8 = piece
                    .trim()
                    .parse()
                    .map_err(|_| SymrepError::InvalidPartition(format!("bad part in {s:?}")))?;
                parts.push(v);
            }
        }
        Partition::new(&parts)
    }
}

/// All partitions of n in canonical order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max_part: usize, prefix: &mut Vec<u8>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            prefix.push(p as u8);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n.max(1), &mut Vec::new(), &mut out);
    if n == 0 {
        return vec![Partition { parts: vec![] }];
    }
    out
}

/// Number of standard Young tableaux of shape lambda (hook length formula).
pub fn specht_dim(lambda: &Partition) -> u64 {
    let n = lambda.n();
    if n == 0 {
        return 1;
    }
    let conj = lambda.conjugate();
    let mut numer: u128 = 1;
    for k in 1..=n as u128 {
        numer *= k;
    }
    let mut denom: u128 = 1;
    for (i, &row) in lambda.parts.iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - 1 - j;
            let leg = conj.parts[j] as usize - 1 - i;
            denom *= (arm + leg + 1) as u128;
        }
    }
    debug_assert_eq!(numer % denom, 0, "hook product must divide n!");
    (numer / denom) as u64
}

fn z_factor(mu: &Partition) -> u64 {
    let mut mult = BTreeMap::<u8, u64>::new();
    for &l in mu.parts() {
        *mult.entry(l).or_insert(0) += 1;
    }
    let mut z = 1u64;
    for (l, m) in mult {
        for _ in 0..m {
            z *= l as u64;
        }
        for k in 1..=m {
            z *= k;
        }
    }
    z
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

// Murnaghan–Nakayama via beta-numbers: strip a border strip of size mu[0]
// for each feasible beta-number move, with sign (-1)^(strip height - 1).
fn mn_recurse(lambda: &[u8], mu: &[u8]) -> i64 {
    let Some((&l0, mu_rest)) = mu.split_first() else {
        return 1;
    };
    let l = l0 as i64;
    let k = lambda.len();
    if k == 0 {
        return 0;
    }
    let beta: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (k - 1 - i) as i64)
        .collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let b2 = b - l;
        if b2 < 0 || beta.contains(&b2) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b2 && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[i] = b2;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let kk = nb.len();
        let mut parts: Vec<u8> = nb
            .iter()
            .enumerate()
            .map(|(j, &x)| (x - (kk - 1 - j) as i64) as u8)
            .collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        total += sign * mn_recurse(&parts, mu_rest);
    }
    total
}

/// Character table of S_n: rows are irreducibles, columns conjugacy classes,
/// both in canonical partition order.
pub struct CharacterTable {
    n: usize,
    irreps: Vec<Partition>,
    classes: Vec<Partition>,
    values: Vec<Vec<i64>>,
    class_sizes: Vec<u64>,
}

impl CharacterTable {
    fn build(n: usize) -> CharacterTable {
        let irreps = partitions(n);
        let classes = partitions(n);
        let values = irreps
            .iter()
            .map(|l| {
                classes
                    .iter()
                    .map(|m| mn_recurse(l.parts(), m.parts()))
                    .collect()
            })
            .collect();
        let class_sizes = classes
            .iter()
            .map(|m| factorial(n) / z_factor(m))
            .collect();
        CharacterTable {
            n,
            irreps,
            classes,
            values,
            class_sizes,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn irreps(&self) -> &[Partition] {
        &self.irreps
    }

    pub fn classes(&self) -> &[Partition] {
        &self.classes
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn group_order(&self) -> u64 {
        factorial(self.n)
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> i64 {
        let i = self
            .irreps
            .binary_search(lambda)
            .expect("partition of the table's n");
        let j = self
            .classes
            .binary_search(mu)
            .expect("partition of the table's n");
        self.values[i][j]
    }

    /// Decompose an integer class function into irreducible multiplicities.
    /// Returns None when the length is wrong or an inner product is not an
    /// exact multiple of the group order (i.e. the input is not a virtual
    /// character).
    pub fn decompose(&self, class_fn: &[i64]) -> Option<SpechtVector> {
        if class_fn.len() != self.classes.len() {
            return None;
        }
        let order = self.group_order() as i64;
        let mut out = SpechtVector::zero(self.n);
        for (i, lambda) in self.irreps.iter().enumerate() {
            let mut dot: i64 = 0;
            for (j, &size) in self.class_sizes.iter().enumerate() {
                dot += size as i64 * self.values[i][j] * class_fn[j];
            }
            if dot % order != 0 {
                return None;
            }
            out.add_assign_irrep(lambda, dot / order);
        }
        Some(out)
    }
}

/// The cached character table of S_n (n <= 8).
pub fn character_table(n: usize) -> &'static CharacterTable {
    static TABLES: [OnceLock<CharacterTable>; MAX_N + 1] =
        [const { OnceLock::new() }; MAX_N + 1];
    assert!(n <= MAX_N, "group size {n} exceeds the supported cap {MAX_N}");
    TABLES[n].get_or_init(|| CharacterTable::build(n))
}

/// chi_lambda(mu). Panics when lambda and mu are partitions of different n.
pub fn character(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(
        lambda.n(),
        mu.n(),
        "character requires partitions of the same n"
    );
    character_table(lambda.n()).value(lambda, mu)
}

/// Integer linear combination of irreducibles of one S_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpechtVector {
    n: usize,
    coeffs: BTreeMap<Partition, i64>,
}

impl SpechtVector {
    pub fn zero(n: usize) -> SpechtVector {
        SpechtVector {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn irreducible(lambda: &Partition) -> SpechtVector {
        let mut v = SpechtVector::zero(lambda.n());
        v.add_assign_irrep(lambda, 1);
        v
    }

    pub fn trivial(n: usize) -> SpechtVector {
        SpechtVector::irreducible(&Partition::trivial(n))
    }

    pub fn sign(n: usize) -> SpechtVector {
        SpechtVector::irreducible(&Partition::sign(n))
    }

    /// The regular representation: every irreducible with multiplicity dim.
    pub fn regular(n: usize) -> SpechtVector {
        let mut v = SpechtVector::zero(n);
        for lambda in partitions(n) {
            v.add_assign_irrep(&lambda, specht_dim(&lambda) as i64);
        }
        v
    }

    pub fn group_size(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> i64 {
        self.coeffs.get(lambda).copied().unwrap_or(0)
    }

    pub fn add_assign_irrep(&mut self, lambda: &Partition, c: i64) {
        assert_eq!(lambda.n(), self.n, "partition of the wrong n");
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(lambda.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(lambda);
        }
    }

    pub fn add(&self, other: &SpechtVector) -> Result<SpechtVector, SymrepError> {
        if self.n != other.n {
            return Err(SymrepError::GroupSizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_assign_irrep(l, *c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> SpechtVector {
        let mut out = SpechtVector::zero(self.n);
        for (l, c) in &self.coeffs {
            out.add_assign_irrep(l, -c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> SpechtVector {
        let mut out = SpechtVector::zero(self.n);
        for (l, c) in &self.coeffs {
            out.add_assign_irrep(l, c * k);
        }
        out
    }

    /// Virtual dimension.
    pub fn dim(&self) -> i64 {
        self.coeffs
            .iter()
            .map(|(l, c)| c * specht_dim(l) as i64)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.coeffs.iter().map(|(l, &c)| (l, c))
    }

    /// Character values on all classes, in canonical class order.
    pub fn character_values(&self) -> Vec<i64> {
        let tab = character_table(self.n);
        tab.classes()
            .iter()
            .map(|mu| {
                self.coeffs
                    .iter()
                    .map(|(l, c)| c * tab.value(l, mu))
                    .sum()
            })
            .collect()
    }

    /// True when every coefficient is nonnegative.
    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }
}

impl fmt::Display for SpechtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in &self.coeffs {
            let sign = if *c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let a = c.abs();
            if a == 1 {
                write!(f, "{sign}{l}")?;
            } else {
                write!(f, "{sign}{a}·{l}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Internal tensor product, decomposed via character inner products.
pub fn kronecker(a: &SpechtVector, b: &SpechtVector) -> Result<SpechtVector, SymrepError> {
    if a.n != b.n {
        return Err(SymrepError::GroupSizeMismatch {
            left: a.n,
            right: b.n,
        });
    }
    let tab = character_table(a.n);
    let ca = a.character_values();
    let cb = b.character_values();
    let prod: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x * y).collect();
    Ok(tab
        .decompose(&prod)
        .expect("product of virtual characters decomposes integrally"))
}

/// Induction product: Ind_{S_a x S_b}^{S_{a+b}} (A boxtimes B).
pub fn outer(a: &SpechtVector, b: &SpechtVector) -> SpechtVector {
    let n = a.n + b.n;
    assert!(n <= MAX_N, "group size {n} exceeds the supported cap {MAX_N}");
    if a.n == 0 {
        return b.clone();
    }
    if b.n == 0 {
        return a.clone();
    }
    let tab = character_table(n);
    let ca = a.character_values();
    let cb = b.character_values();
    let classes_a = partitions(a.n);
    let classes_b = partitions(b.n);

    let mut values = Vec::with_capacity(tab.classes().len());
    for mu in tab.classes() {
        // distinct sub-multisets mu1 of mu with |mu1| = a.n
        let mut mult = BTreeMap::<u8, u32>::new();
        for &l in mu.parts() {
            *mult.entry(l).or_insert(0) += 1;
        }
        let lengths: Vec<u8> = mult.keys().copied().collect();
        let counts: Vec<u32> = mult.values().copied().collect();
        let z_mu = z_factor(mu) as i64;

        let mut total = 0i64;
        // choose taken[i] cycles of each length for mu1
        let mut taken = vec![0u32; lengths.len()];
        loop {
            let sum: usize = taken
                .iter()
                .zip(&lengths)
                .map(|(&t, &l)| t as usize * l as usize)
                .sum();
            if sum == a.n {
                let mut p1: Vec<u8> = Vec::new();
                let mut p2: Vec<u8> = Vec::new();
                for (i, &l) in lengths.iter().enumerate() {
                    for _ in 0..taken[i] {
                        p1.push(l);
                    }
                    for _ in 0..(counts[i] - taken[i]) {
                        p2.push(l);
                    }
                }
                p1.sort_unstable_by(|x, y| y.cmp(x));
                p2.sort_unstable_by(|x, y| y.cmp(x));
                let mu1 = Partition::new(&p1).expect("sorted parts");
                let mu2 = Partition::new(&p2).expect("sorted parts");
                let i1 = classes_a.binary_search(&mu1).expect("class of S_a");
                let i2 = classes_b.binary_search(&mu2).expect("class of S_b");
                let z1 = z_factor(&mu1) as i64;
                let z2 = z_factor(&mu2) as i64;
                debug_assert_eq!(z_mu % (z1 * z2), 0);
                total += z_mu / (z1 * z2) * ca[i1] * cb[i2];
            }
            // next multi-index
            let mut i = 0;
            loop {
                if i == taken.len() {
                    break;
                }
                if taken[i] < counts[i] {
                    taken[i] += 1;
                    break;
                }
                taken[i] = 0;
                i += 1;
            }
            if i == taken.len() {
                break;
            }
        }
        values.push(total);
    }
    tab.decompose(&values)
        .expect("induction character decomposes integrally")
}

/// Frobenius induction along the standard embedding S_m <= S_n.
pub fn induce(r: &SpechtVector, n: usize) -> Result<SpechtVector, SymrepError> {
    if r.n > n {
        return Err(SymrepError::GroupSizeMismatch {
            left: r.n,
            right: n,
        });
    }
    if n > MAX_N {
        return Err(SymrepError::GroupTooLarge(n));
    }
    if r.n == n {
        return Ok(r.clone());
    }
    Ok(outer(r, &SpechtVector::regular(n - r.n)))
}

/// Permutation representation of S_n on 2-element subsets of {1..n}.
pub fn pairs_permutation_rep(n: usize) -> SpechtVector {
    assert!((2..=MAX_N).contains(&n), "need 2 <= n <= {MAX_N}");
    let tab = character_table(n);
    let values: Vec<i64> = tab
        .classes()
        .iter()
        .map(|mu| {
            let fixed = mu.parts().iter().filter(|&&l| l == 1).count() as i64;
            let two_cycles = mu.parts().iter().filter(|&&l| l == 2).count() as i64;
            fixed * (fixed - 1) / 2 + two_cycles
        })
        .collect();
    tab.decompose(&values)
        .expect("permutation character decomposes integrally")
}

/// Multiplicity of lambda in r (zero when absent).
pub fn isotypic_mult(r: &SpechtVector, lambda: &Partition) -> i64 {
    assert_eq!(r.n, lambda.n(), "isotypic extraction needs matching n");
    r.coeff(lambda)
}
