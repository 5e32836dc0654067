//! Reference singularity test used to validate the degree bound of the
//! point-search scan. It decides whether a quartic over a prime field has
//! a singular point of degree up to a caller-chosen bound (the validation
//! suite uses 12) by elimination instead of enumeration: the common zeros
//! of f and its partials are projected to one coordinate through a
//! resultant, the projection is factored, and each root field is checked
//! for matching zeros of the remaining coordinate. Nothing here touches
//! the table-backed field arithmetic of the scan, so agreement between
//! the two is a genuine cross-check.
//!
//! Degree accounting keeps the factorization elementary: the eliminant is
//! a resultant of two dehomogenized forms of total degrees at most 4 and
//! 3, so its degree is at most 12 (each permutation term of the Sylvester
//! determinant has degree at most db*m + da*(n - db) with m = 4, n = 3,
//! da <= 4, db <= 3). Trial division by all irreducibles of degree up to
//! 6 therefore leaves either a constant or a single irreducible factor,
//! since two leftover factors of degree at least 7 would need total
//! degree at least 14.

use crate::field::Fq;
use crate::poly::{monomials, quartic_monomials, Quartic};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Decides whether the curve f = 0 has a singular point of degree at most
/// `dmax` over the base field. For a quartic any singular point has
/// degree at most 6, so `dmax >= 6` decides singularity over the
/// algebraic closure; larger bounds exercise the machinery further.
pub fn slow_is_singular(f: &Quartic, base: &Fq, dmax: u32) -> bool {
    assert!(
        base.k == 1 && (base.p == 2 || base.p == 3),
        "the reference test runs over F_2 and F_3 only"
    );
    assert!(!f.is_zero(), "the zero polynomial has no curve attached");
    assert!((1..=12).contains(&dmax));
    let p = base.p as u8;
    let mut fv = [0u8; 15];
    for (slot, &code) in fv.iter_mut().zip(f.c.iter()) {
        *slot = base.to_packed(code) as u8;
    }
    let pv = partial_vectors(&fv, p);
    if line_case(&fv, &pv, p, dmax) {
        return true;
    }
    chart_case(&fv, &pv, p, dmax)
}

/// Partial derivatives of the quartic as 10-coefficient cubic vectors,
/// computed directly in integer arithmetic mod p.
fn partial_vectors(fv: &[u8; 15], p: u8) -> [[u8; 10]; 3] {
    let mono4 = quartic_monomials();
    let mono3 = monomials(3);
    let index3 = |e: [u8; 3]| mono3.iter().position(|m| *m == e).unwrap();
    let mut out = [[0u8; 10]; 3];
    for (i, &e) in mono4.iter().enumerate() {
        if fv[i] == 0 {
            continue;
        }
        for var in 0..3 {
            if e[var] == 0 {
                continue;
            }
            let scale = e[var] % p;
            if scale == 0 {
                continue;
            }
            let mut drop = e;
            drop[var] -= 1;
            let j = index3(drop);
            out[var][j] = (out[var][j] + fv[i] * scale) % p;
        }
    }
    out
}

// ---------------------------------------------------------------------
// Univariate polynomials over F_p, coefficients ascending, zero = empty.
// ---------------------------------------------------------------------

type Uni = Vec<u8>;

fn uni_norm(mut a: Uni) -> Uni {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn uni_deg(a: &Uni) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

fn uni_add(a: &Uni, b: &Uni, p: u8) -> Uni {
    let mut out = vec![0u8; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    uni_norm(out)
}

fn uni_sub(a: &Uni, b: &Uni, p: u8) -> Uni {
    let mut out = vec![0u8; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    uni_norm(out)
}

fn uni_mul(a: &Uni, b: &Uni, p: u8) -> Uni {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ca * cb) % p;
        }
    }
    uni_norm(out)
}

fn uni_scale(a: &Uni, s: u8, p: u8) -> Uni {
    if s == 0 {
        return Vec::new();
    }
    uni_norm(a.iter().map(|&c| (c * s) % p).collect())
}

fn inv_mod(a: u8, p: u8) -> u8 {
    for x in 1..p {
        if (a * x) % p == 1 {
            return x;
        }
    }
    panic!("no inverse of {a} mod {p}");
}

fn uni_rem(a: &Uni, b: &Uni, p: u8) -> Uni {
    let mut r = a.clone();
    let db = uni_deg(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    while let Some(dr) = uni_deg(&r) {
        if dr < db {
            break;
        }
        let factor = (r[dr] * lead_inv) % p;
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (factor * bc) % p;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
        r = uni_norm(r);
    }
    r
}

fn uni_divides(b: &Uni, a: &Uni, p: u8) -> bool {
    uni_rem(a, b, p).is_empty()
}

fn uni_quot(a: &Uni, b: &Uni, p: u8) -> Uni {
    let db = uni_deg(b).expect("division by zero polynomial");
    let da = match uni_deg(a) {
        None => return Vec::new(),
        Some(d) => d,
    };
    if da < db {
        return Vec::new();
    }
    let lead_inv = inv_mod(b[db], p);
    let mut r = a.clone();
    let mut q = vec![0u8; da - db + 1];
    while let Some(dr) = uni_deg(&r) {
        if dr < db {
            break;
        }
        let factor = (r[dr] * lead_inv) % p;
        let shift = dr - db;
        q[shift] = factor;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (factor * bc) % p;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
        r = uni_norm(r);
    }
    uni_norm(q)
}

fn uni_monic(a: &Uni, p: u8) -> Uni {
    match uni_deg(a) {
        None => Vec::new(),
        Some(d) => uni_scale(a, inv_mod(a[d], p), p),
    }
}

fn uni_gcd(a: &Uni, b: &Uni, p: u8) -> Uni {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = uni_rem(&x, &y, p);
        x = y;
        y = r;
    }
    uni_monic(&x, p)
}

// ---------------------------------------------------------------------
// Irreducible polynomials over F_p by sieve.
// ---------------------------------------------------------------------

/// Monic irreducibles of each degree 1..=6, cached per characteristic.
/// Index 0 is an empty placeholder so that `lists[d]` is degree d.
fn small_irreducibles(p: u8) -> &'static Vec<Vec<Uni>> {
    type Lists = &'static Vec<Vec<Uni>>;
    static CACHE: OnceLock<Mutex<HashMap<u8, Lists>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    if let Some(v) = map.get(&p) {
        return v;
    }
    let mut by_degree: Vec<Vec<Uni>> = vec![Vec::new()];
    for d in 1..=6usize {
        let mut level = Vec::new();
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = vec![0u8; d + 1];
            cand[d] = 1;
            let mut rest = idx;
            for slot in cand.iter_mut().take(d) {
                *slot = (rest % p as u64) as u8;
                rest /= p as u64;
            }
            let mut reducible = false;
            'outer: for lower in by_degree.iter().skip(1).take(d / 2) {
                for irr in lower {
                    if uni_divides(irr, &cand, p) {
                        reducible = true;
                        break 'outer;
                    }
                }
            }
            if !reducible {
                level.push(cand);
            }
        }
        by_degree.push(level);
    }
    let leaked: &'static Vec<Vec<Uni>> = Box::leak(Box::new(by_degree));
    map.insert(p, leaked);
    leaked
}

/// The first monic irreducible of the given degree (at most 12); used to
/// present the degree-d extension in the sweep fallback. A composite of
/// degree at most 12 has a factor of degree at most 6, so trial division
/// by the sieved lists is a complete irreducibility test here.
fn first_irreducible(p: u8, d: usize) -> Uni {
    assert!((1..=12).contains(&d));
    let lists = small_irreducibles(p);
    if d <= 6 {
        return lists[d][0].clone();
    }
    let count = (p as u64).pow(d as u32);
    for idx in 0..count {
        let mut cand = vec![0u8; d + 1];
        cand[d] = 1;
        let mut rest = idx;
        for slot in cand.iter_mut().take(d) {
            *slot = (rest % p as u64) as u8;
            rest /= p as u64;
        }
        let mut reducible = false;
        'outer: for lower in lists.iter().skip(1) {
            for irr in lower {
                if uni_divides(irr, &cand, p) {
                    reducible = true;
                    break 'outer;
                }
            }
        }
        if !reducible {
            return cand;
        }
    }
    panic!("no irreducible of degree {d} over F_{p}");
}

/// Factors a nonzero polynomial of degree at most 12 into monic
/// irreducibles, each listed once.
fn distinct_irreducible_factors(r: &Uni, p: u8) -> Vec<Uni> {
    let deg = uni_deg(r).expect("factoring the zero polynomial");
    assert!(deg <= 12, "eliminant degree {deg} exceeds the resultant bound");
    let mut rest = uni_monic(r, p);
    let mut out: Vec<Uni> = Vec::new();
    if rest.first() == Some(&0) {
        out.push(vec![0, 1]);
        while rest.first() == Some(&0) {
            rest.remove(0);
        }
    }
    let lists = small_irreducibles(p);
    for level in lists.iter().skip(1) {
        for irr in level {
            if uni_deg(&rest) < uni_deg(irr) {
                break;
            }
            if uni_divides(irr, &rest, p) {
                out.push(irr.clone());
                while uni_divides(irr, &rest, p) {
                    rest = uni_quot(&rest, irr, p);
                }
            }
        }
    }
    if let Some(d) = uni_deg(&rest) {
        if d > 0 {
            // All factors of degree up to 6 are divided out and at most
            // degree 12 remains, so the remainder cannot split further.
            out.push(uni_monic(&rest, p));
        }
    }
    out
}

// ---------------------------------------------------------------------
// The root field F_p[y]/(h) and z-polynomials over it.
// ---------------------------------------------------------------------

/// Field presented as F_p[y] modulo a monic irreducible h; elements are
/// reduced polynomials in y.
struct RootField {
    p: u8,
    h: Uni,
}

type Elem = Uni;

impl RootField {
    fn degree(&self) -> usize {
        uni_deg(&self.h).unwrap()
    }

    fn reduce(&self, a: &Uni) -> Elem {
        if uni_deg(a) < uni_deg(&self.h) {
            a.clone()
        } else {
            uni_rem(a, &self.h, self.p)
        }
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        uni_add(a, b, self.p)
    }

    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        uni_sub(a, b, self.p)
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&uni_mul(a, b, self.p))
    }

    fn inv(&self, a: &Elem) -> Elem {
        assert!(!a.is_empty(), "inverse of zero in the root field");
        let p = self.p;
        let mut r0 = a.clone();
        let mut r1 = self.h.clone();
        let mut s0: Uni = vec![1];
        let mut s1: Uni = Vec::new();
        while !r1.is_empty() {
            let q = uni_quot(&r0, &r1, p);
            let r2 = uni_sub(&r0, &uni_mul(&q, &r1, p), p);
            let s2 = uni_sub(&s0, &uni_mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r2;
            s0 = s1;
            s1 = s2;
        }
        let d = uni_deg(&r0).expect("gcd of an element and the modulus vanished");
        assert!(d == 0, "element shares a factor with the modulus");
        let scale = inv_mod(r0[0], p);
        self.reduce(&uni_scale(&s0, scale, p))
    }
}

/// Polynomials in z with coefficients in a root field, ascending.
type ZPoly = Vec<Elem>;

fn z_norm(mut a: ZPoly) -> ZPoly {
    while a.last().map(|c| c.is_empty()) == Some(true) {
        a.pop();
    }
    a
}

fn z_deg(a: &ZPoly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

fn z_monic(a: &ZPoly, k: &RootField) -> ZPoly {
    match z_deg(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = k.inv(&a[d]);
            a.iter().map(|c| k.mul(c, &inv)).collect()
        }
    }
}

fn z_rem(a: &ZPoly, b: &ZPoly, k: &RootField) -> ZPoly {
    let db = z_deg(b).expect("z-division by zero");
    let lead_inv = k.inv(&b[db]);
    let mut r = a.clone();
    loop {
        let dr = match z_deg(&r) {
            None => break,
            Some(d) => d,
        };
        if dr < db {
            break;
        }
        let factor = k.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let sub = k.mul(&factor, bc);
            r[i + shift] = k.sub(&r[i + shift], &sub);
        }
        r = z_norm(r);
    }
    r
}

fn z_gcd(a: &ZPoly, b: &ZPoly, k: &RootField) -> ZPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = z_rem(&x, &y, k);
        x = y;
        y = r;
    }
    z_monic(&x, k)
}

fn z_mulmod(a: &ZPoly, b: &ZPoly, m: &ZPoly, k: &RootField) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod: ZPoly = vec![Vec::new(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_empty() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_empty() {
                continue;
            }
            let term = k.mul(ca, cb);
            prod[i + j] = k.add(&prod[i + j], &term);
        }
    }
    z_rem(&z_norm(prod), m, k)
}

/// z^n mod m over the root field, by square and multiply.
fn z_powmod(n: u64, m: &ZPoly, k: &RootField) -> ZPoly {
    let one: ZPoly = vec![vec![1]];
    let z: ZPoly = vec![Vec::new(), vec![1]];
    let mut acc = z_rem(&one, m, k);
    let mut sq = z_rem(&z, m, k);
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = z_mulmod(&acc, &sq, m, k);
        }
        e >>= 1;
        if e > 0 {
            sq = z_mulmod(&sq, &sq, m, k);
        }
    }
    acc
}

/// True if the monic nonconstant u has a root in the degree-j extension
/// of the root field, tested as gcd(u, z^(|K|^j) - z) being nonconstant.
fn has_root_within(u: &ZPoly, j: u32, k: &RootField) -> bool {
    let e = k.degree() as u32;
    let n = (k.p as u64).pow(e * j);
    let mut diff = z_powmod(n, u, k);
    if diff.len() < 2 {
        diff.resize(2, Vec::new());
    }
    let one: Elem = vec![1];
    diff[1] = k.sub(&diff[1], &one);
    let diff = z_norm(diff);
    if diff.is_empty() {
        // u divides z^(|K|^j) - z, so all its roots lie in the extension.
        return true;
    }
    let g = z_gcd(u, &diff, k);
    z_deg(&g).map(|d| d > 0) == Some(true)
}

// ---------------------------------------------------------------------
// Restrictions of the quartic data to the chart x0 = 1 and the line
// x0 = 0.
// ---------------------------------------------------------------------

/// Bivariate polynomial in (y, z): the coefficient of z^j is a univariate
/// polynomial in y.
type BiPoly = Vec<Uni>;

fn bi_norm(mut a: BiPoly) -> BiPoly {
    while a.last().map(|c| c.is_empty()) == Some(true) {
        a.pop();
    }
    a
}

fn bi_z_deg(a: &BiPoly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

/// Dehomogenization at x0 = 1 of a degree-d form given by its coefficient
/// vector in the order of `monomials(d)`, with (x1, x2) = (y, z).
fn chart_bipoly(coeffs: &[u8], d: u8, p: u8) -> BiPoly {
    let mono = monomials(d);
    let mut out: BiPoly = vec![Vec::new(); (d + 1) as usize];
    for (slot, e) in mono.iter().enumerate() {
        let c = coeffs[slot] % p;
        if c == 0 {
            continue;
        }
        let j = e[2] as usize;
        let i = e[1] as usize;
        if out[j].len() < i + 1 {
            out[j].resize(i + 1, 0);
        }
        out[j][i] = c;
    }
    for slot in out.iter_mut() {
        let taken = std::mem::take(slot);
        *slot = uni_norm(taken);
    }
    bi_norm(out)
}

/// Restriction of a degree-d form to the line x0 = 0, as the univariate
/// polynomial in s obtained from (x1, x2) = (s, 1), together with its
/// value at the remaining point (x1, x2) = (1, 0).
fn line_restriction(coeffs: &[u8], d: u8, p: u8) -> (Uni, u8) {
    let mono = monomials(d);
    let mut out = vec![0u8; (d + 1) as usize];
    let mut at_infinity = 0u8;
    for (slot, e) in mono.iter().enumerate() {
        if e[0] != 0 {
            continue;
        }
        let c = coeffs[slot] % p;
        out[e[1] as usize] = c;
        if e[1] == d {
            at_infinity = c;
        }
    }
    (uni_norm(out), at_infinity)
}

/// Sylvester resultant with respect to z of two z-positive bivariate
/// polynomials: a polynomial in y that vanishes at the y-coordinate of
/// every common zero (the specialized matrix kills the vector of powers
/// of the common root, whatever degree drops occur).
fn resultant_z(a: &BiPoly, b: &BiPoly, p: u8) -> Uni {
    let da = bi_z_deg(a).unwrap();
    let db = bi_z_deg(b).unwrap();
    let n = da + db;
    let mut m: Vec<Vec<Uni>> = vec![vec![Vec::new(); n]; n];
    for r in 0..db {
        for (i, c) in a.iter().enumerate() {
            m[r][r + da - i] = c.clone();
        }
    }
    for r in 0..da {
        for (i, c) in b.iter().enumerate() {
            m[db + r][r + db - i] = c.clone();
        }
    }
    determinant(&m, p)
}

/// Determinant of a small matrix of univariate polynomials, expanding
/// row by row over column subsets.
fn determinant(m: &[Vec<Uni>], p: u8) -> Uni {
    let n = m.len();
    assert!(n <= 16);
    let full: u32 = (1 << n) - 1;
    // dp[mask] holds the determinant of the submatrix on the first
    // popcount(mask) rows and the columns in mask.
    let mut dp: Vec<Option<Uni>> = vec![None; (full + 1) as usize];
    dp[0] = Some(vec![1]);
    for mask in 1..=full {
        let row = (mask.count_ones() - 1) as usize;
        let mut acc: Uni = Vec::new();
        let mut sign_flip = row % 2 == 1;
        let mut rest = mask;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let sub = dp[(mask ^ (1 << c)) as usize]
                .as_ref()
                .expect("submasks are filled before their supersets");
            if !m[row][c].is_empty() && !sub.is_empty() {
                let term = uni_mul(&m[row][c], sub, p);
                acc = if sign_flip {
                    uni_sub(&acc, &term, p)
                } else {
                    uni_add(&acc, &term, p)
                };
            }
            sign_flip = !sign_flip;
        }
        dp[mask as usize] = Some(acc);
    }
    dp[full as usize].clone().unwrap()
}

// ---------------------------------------------------------------------
// The decision procedure.
// ---------------------------------------------------------------------

/// Singular points on the line x0 = 0.
fn line_case(fv: &[u8; 15], pv: &[[u8; 10]; 3], p: u8, dmax: u32) -> bool {
    let mut restrictions: Vec<(Uni, u8)> = vec![line_restriction(fv, 4, p)];
    for v in pv {
        restrictions.push(line_restriction(v, 3, p));
    }
    let nonzero: Vec<&(Uni, u8)> = restrictions.iter().filter(|r| !r.0.is_empty()).collect();
    if nonzero.is_empty() {
        // The quartic and its partials vanish identically on the line,
        // so every rational point of the line is singular.
        return true;
    }
    // The point (0:1:0): every restriction must lose its top coefficient.
    if nonzero.iter().all(|r| r.1 == 0) {
        return true;
    }
    // Points (0:s:1): common roots of the restrictions.
    let mut g = nonzero[0].0.clone();
    for r in nonzero.iter().skip(1) {
        g = uni_gcd(&g, &r.0, p);
        if uni_deg(&g) == Some(0) {
            return false;
        }
    }
    distinct_irreducible_factors(&g, p)
        .iter()
        .any(|h| uni_deg(h).unwrap() as u32 <= dmax)
}

/// Singular points on the chart x0 = 1.
fn chart_case(fv: &[u8; 15], pv: &[[u8; 10]; 3], p: u8, dmax: u32) -> bool {
    let mut bps: Vec<BiPoly> = vec![chart_bipoly(fv, 4, p)];
    for v in pv {
        bps.push(chart_bipoly(v, 3, p));
    }
    let nonzero: Vec<&BiPoly> = bps.iter().filter(|b| !b.is_empty()).collect();
    assert!(
        !nonzero.is_empty(),
        "a nonzero quartic cannot vanish identically on the chart"
    );
    let y_only: Vec<&Uni> = nonzero
        .iter()
        .filter(|b| bi_z_deg(b) == Some(0))
        .map(|b| &b[0])
        .collect();
    let mut z_pos: Vec<&BiPoly> = nonzero
        .iter()
        .filter(|b| bi_z_deg(b).map(|d| d > 0) == Some(true))
        .copied()
        .collect();
    // Smaller z-degrees first: their Sylvester matrices are smaller.
    z_pos.sort_by_key(|b| bi_z_deg(b));

    let eliminant: Option<Uni> = if !y_only.is_empty() {
        // Any common zero must in particular kill every z-free equation,
        // so their gcd already confines the y-coordinate.
        let mut g = y_only[0].clone();
        for u in y_only.iter().skip(1) {
            g = uni_gcd(&g, u, p);
        }
        if uni_deg(&g) == Some(0) {
            return false;
        }
        Some(g)
    } else if z_pos.len() >= 2 {
        let mut found = None;
        'pairs: for i in 0..z_pos.len() {
            for j in (i + 1)..z_pos.len() {
                let r = resultant_z(z_pos[i], z_pos[j], p);
                if !r.is_empty() {
                    found = Some(r);
                    break 'pairs;
                }
            }
        }
        found
    } else {
        None
    };

    match eliminant {
        Some(r) => {
            if uni_deg(&r) == Some(0) {
                // A nonzero constant resultant: that pair has no common
                // zeros at all, hence neither does the full system.
                return false;
            }
            for h in distinct_irreducible_factors(&r, p) {
                let e = uni_deg(&h).unwrap() as u32;
                if e > dmax {
                    continue;
                }
                if root_field_has_common_zero(&bps, &h, p, dmax) {
                    return true;
                }
            }
            false
        }
        // No usable eliminant: at most one equation constrains z and
        // every projection collapsed. Fall back to sweeping y.
        None => sweep_fallback(&bps, p, dmax),
    }
}

/// Tests for common z-roots over F_p[y]/(h), where y maps to a root of
/// the irreducible eliminant factor h.
fn root_field_has_common_zero(bps: &[BiPoly], h: &Uni, p: u8, dmax: u32) -> bool {
    let k = RootField { p, h: h.clone() };
    let e = k.degree() as u32;
    let mut zps: Vec<ZPoly> = Vec::new();
    for b in bps {
        let zp = z_norm(b.iter().map(|c| k.reduce(c)).collect());
        if !zp.is_empty() {
            zps.push(zp);
        }
    }
    // The degree of the point is deg(h) times the relative degree of its
    // z-coordinate, so only relative degrees up to dmax / deg(h) fit.
    common_zero_over(&zps, &k, dmax / e)
}

/// Common-root test for z-polynomials over a root field. An empty family
/// leaves z free (zero works), a constant in the family or in the gcd
/// rules every z out, and otherwise the gcd is probed for irreducible
/// factors of each relative degree up to the bound.
fn common_zero_over(zps: &[ZPoly], k: &RootField, max_rel_degree: u32) -> bool {
    if zps.is_empty() {
        return true;
    }
    if max_rel_degree == 0 {
        return false;
    }
    let mut g = zps[0].clone();
    for zp in zps.iter().skip(1) {
        g = z_gcd(&g, zp, k);
        if z_deg(&g) == Some(0) {
            return false;
        }
    }
    match z_deg(&g) {
        None => true,
        Some(0) => false,
        Some(_) => {
            let u = z_monic(&g, k);
            (1..=max_rel_degree).any(|j| has_root_within(&u, j, k))
        }
    }
}

/// Complete fallback when no eliminant is available: sweep the y-line of
/// each extension of degree up to dmax and solve for z there. Only
/// degenerate systems land here (all pairwise resultants zero, or a
/// single surviving equation), so the cost stays acceptable.
fn sweep_fallback(bps: &[BiPoly], p: u8, dmax: u32) -> bool {
    for d in 1..=dmax as usize {
        let h = first_irreducible(p, d);
        let k = RootField { p, h };
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut eta = vec![0u8; d];
            let mut rest = idx;
            for slot in eta.iter_mut() {
                *slot = (rest % p as u64) as u8;
                rest /= p as u64;
            }
            let eta = uni_norm(eta);
            let mut zps: Vec<ZPoly> = Vec::new();
            for b in bps {
                if b.is_empty() {
                    continue;
                }
                let zp = z_norm(b.iter().map(|c| horner_elem(c, &eta, &k)).collect());
                if !zp.is_empty() {
                    zps.push(zp);
                }
            }
            // A point whose coordinates both lie in this extension has
            // degree dividing d, so z is restricted to relative degree
            // one; points mixing degrees are caught at the sweep level
            // equal to the degree of the compositum.
            if common_zero_over(&zps, &k, 1) {
                return true;
            }
        }
    }
    false
}

/// Evaluates a scalar-coefficient polynomial at a root-field element.
fn horner_elem(c: &Uni, at: &Elem, k: &RootField) -> Elem {
    let mut acc: Elem = Vec::new();
    for &coef in c.iter().rev() {
        acc = k.mul(&acc, at);
        if coef != 0 {
            let scalar: Elem = vec![coef];
            acc = k.add(&acc, &scalar);
        }
    }
    acc
}
