//! Table-backed finite fields F_{p^k} for p^k up to 2^20.
//!
//! Elements are encoded as `u32` codes: `0` is the zero element and the
//! code `1 + i` stands for `g^i`, where `g` is the residue class of `x`
//! modulo a primitive polynomial (so `g` generates the multiplicative
//! group). Multiplication is exponent arithmetic, addition goes through a
//! Zech logarithm table, and subfield embeddings are computed by locating
//! a root of the subfield's defining polynomial in the bigger field.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// One finite field F_{p^k}, fully tabulated.
pub struct Fq {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    /// exp[i] = packed representation of g^i, for i in 0..q-1.
    exp: Vec<u32>,
    /// log[packed] = i with g^i = packed, for packed != 0.
    log: Vec<u32>,
    /// zech[i] = log(1 + g^i), or u32::MAX when 1 + g^i = 0.
    zech: Vec<u32>,
    /// Monic defining polynomial of g over F_p, coefficients ascending,
    /// length k + 1.
    modulus: Vec<u32>,
}

const ZECH_NONE: u32 = u32::MAX;

impl Fq {
    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn is_zero(&self, a: u32) -> bool {
        a == 0
    }

    /// The element written in base-p digits: digit i of `packed` is the
    /// coefficient of g^i. For prime fields this is the integer residue.
    pub fn from_packed(&self, packed: u32) -> u32 {
        if packed == 0 {
            0
        } else {
            1 + self.log[packed as usize]
        }
    }

    /// Inverse of `from_packed`.
    pub fn to_packed(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.exp[(a - 1) as usize]
        }
    }

    /// The image of a small nonnegative integer under Z -> F_q.
    pub fn from_int(&self, n: u32) -> u32 {
        self.from_packed(n % self.p)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let m = self.q - 1;
        let i = a - 1;
        let j = b - 1;
        let d = (j + m - i) % m;
        let z = self.zech[d as usize];
        if z == ZECH_NONE {
            0
        } else {
            1 + (i + z) % m
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 || self.p == 2 {
            return a;
        }
        let m = self.q - 1;
        1 + (a - 1 + m / 2) % m
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let m = self.q - 1;
        1 + (a - 1 + b - 1) % m
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let m = self.q - 1;
        1 + (m - (a - 1)) % m
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            assert!(e > 0, "0^0 is not defined here");
            return 0;
        }
        let m = (self.q - 1) as u64;
        1 + ((((a - 1) as u64) * (e % m)) % m) as u32
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// All q elements in a fixed order (zero first, then powers of g).
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Embedding table into a field F_{p^(k*d)}: entry at code `a` is the
    /// code of the image of `a` in `target`. The map is the ring
    /// homomorphism sending g to a root of the defining polynomial of g,
    /// so it preserves addition and multiplication.
    pub fn embed_table(&self, target: &Fq) -> Vec<u32> {
        assert_eq!(self.p, target.p, "embedding requires equal characteristic");
        assert!(
            target.k.is_multiple_of(self.k),
            "F_{{{}^{}}} is not a subfield of F_{{{}^{}}}",
            self.p,
            self.k,
            target.p,
            target.k
        );
        if self.q == target.q {
            return (0..self.q).collect();
        }
        let m = (target.q as u64 - 1) / (self.q as u64 - 1);
        let gamma = target.pow(2, m); // image code of g_target^m; code 2 = g
        let mut alpha = 0;
        let ord = (self.q - 1) as u64;
        for j in 1..self.q as u64 {
            if gcd(j, ord) != 1 {
                continue;
            }
            let cand = target.pow(gamma, j);
            if self.eval_modulus_in(target, cand) == 0 {
                alpha = cand;
                break;
            }
        }
        assert!(alpha != 0, "no root of the defining polynomial found");
        let mut table = vec![0u32; self.q as usize];
        for i in 0..(self.q - 1) as u64 {
            table[self.from_packed(self.exp[i as usize]) as usize] =
                target.pow(alpha, i);
        }
        table
    }

    fn eval_modulus_in(&self, target: &Fq, at: u32) -> u32 {
        let mut acc = target.zero();
        for &c in self.modulus.iter().rev() {
            acc = target.mul(acc, at);
            acc = target.add(acc, target.from_int(c));
        }
        acc
    }

    /// Spot-check of the field axioms on a deterministic sample, used by
    /// the test suite. Panics on any violation.
    pub fn self_check(&self) {
        let probe: Vec<u32> = if self.q <= 32 {
            self.elements().collect()
        } else {
            (0..32).map(|i| (i * 2654435761u64 % self.q as u64) as u32).collect()
        };
        for &a in &probe {
            assert_eq!(self.add(a, 0), a);
            assert_eq!(self.mul(a, 1), a);
            assert_eq!(self.add(a, self.neg(a)), 0);
            if a != 0 {
                assert_eq!(self.mul(a, self.inv(a)), 1);
            }
            for &b in &probe {
                assert_eq!(self.add(a, b), self.add(b, a));
                assert_eq!(self.mul(a, b), self.mul(b, a));
                for &c in &probe {
                    assert_eq!(self.add(self.add(a, b), c), self.add(a, self.add(b, c)));
                    assert_eq!(self.mul(self.mul(a, b), c), self.mul(a, self.mul(b, c)));
                    assert_eq!(
                        self.mul(a, self.add(b, c)),
                        self.add(self.mul(a, b), self.mul(a, c))
                    );
                }
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Returns the cached field F_{p^k}, building its tables on first use.
pub fn field(p: u32, k: u32) -> &'static Fq {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), &'static Fq>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    if let Some(f) = map.get(&(p, k)) {
        return f;
    }
    let built: &'static Fq = Box::leak(Box::new(build_field(p, k)));
    map.insert((p, k), built);
    built
}

/// Splits q into (p, k) with p prime and p^k = q, if q is a prime power.
pub fn parse_prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q as u32, 1));
    }
    let mut rest = q;
    let mut k = 0;
    while rest > 1 {
        if !rest.is_multiple_of(p) {
            return None;
        }
        rest /= p;
        k += 1;
    }
    Some((p as u32, k))
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn build_field(p: u32, k: u32) -> Fq {
    assert!(is_prime(p), "characteristic {p} is not prime");
    assert!(k >= 1, "extension degree must be positive");
    let q64 = (p as u64).pow(k);
    assert!(
        q64 <= MAX_FIELD_SIZE,
        "field size {}^{} exceeds the 2^20 table limit",
        p,
        k
    );
    let q = q64 as u32;

    // Search for a monic polynomial x^k + ... whose residue class of x has
    // multiplicative order exactly q - 1. That order is only attainable
    // when the quotient is a field, so the search also proves
    // irreducibility.
    let modulus: Vec<u32>;
    let exp: Vec<u32>;
    let mut lower = vec![0u32; k as usize];
    'candidates: loop {
        // Advance the candidate lower-coefficient vector (base-p odometer).
        let mut i = 0;
        loop {
            if i >= lower.len() {
                panic!("no primitive polynomial of degree {k} over F_{p} found");
            }
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
        }
        if lower[0] == 0 {
            // x would be a zero divisor.
            continue;
        }
        let mut cand = lower.clone();
        cand.push(1);
        // Walk the powers of x modulo the candidate.
        let mut pow_digits = vec![0u32; k as usize];
        if k == 1 {
            // Degree one: x = -lower[0]; require it to generate F_p^*.
            let g = (p - lower[0]) % p;
            if g == 0 {
                continue;
            }
            let mut seen = 1u64;
            let mut v = g;
            let mut trace = vec![1u32];
            while v != 1 {
                trace.push(v);
                v = (v * g) % p;
                seen += 1;
                if seen > (q - 1) as u64 {
                    break;
                }
            }
            if seen == (q - 1) as u64 {
                exp = trace;
                modulus = cand;
                break 'candidates;
            }
            continue;
        }
        pow_digits[1] = 1; // the element x
        let mut trace: Vec<u32> = vec![1]; // packed g^0
        let mut cur = pow_digits.clone();
        let order_target = (q - 1) as usize;
        for _step in 1..=order_target {
            let packed = pack(&cur, p);
            if packed == 1 {
                break;
            }
            trace.push(packed);
            cur = mul_by_x_mod(&cur, &cand, p);
        }
        if trace.len() == order_target {
            exp = trace;
            modulus = cand;
            break 'candidates;
        }
    }

    let mut log = vec![0u32; q as usize];
    for (i, &packed) in exp.iter().enumerate() {
        log[packed as usize] = i as u32;
    }
    let mut zech = vec![ZECH_NONE; (q - 1) as usize];
    for (i, &packed) in exp.iter().enumerate() {
        let plus_one = add_one_packed(packed, p);
        if plus_one != 0 {
            zech[i] = log[plus_one as usize];
        }
    }
    Fq {
        p,
        k,
        q,
        exp,
        log,
        zech,
        modulus,
    }
}

fn pack(digits: &[u32], p: u32) -> u32 {
    let mut v = 0u64;
    for &d in digits.iter().rev() {
        v = v * p as u64 + d as u64;
    }
    v as u32
}

fn mul_by_x_mod(digits: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = digits.len();
    let carry = digits[k - 1];
    let mut out = vec![0u32; k];
    out[1..k].copy_from_slice(&digits[..k - 1]);
    if carry != 0 {
        for i in 0..k {
            // subtract carry * modulus[i]
            let m = (carry * modulus[i]) % p;
            out[i] = (out[i] + p - m) % p;
        }
    }
    out
}

fn add_one_packed(packed: u32, p: u32) -> u32 {
    let low = packed % p;
    packed - low + (low + 1) % p
}
