//! Dense ternary forms over a tabulated finite field, specialized to the
//! small degrees the oracle needs (quartics and their cubic partials).
//!
//! A degree-d form is stored as one coefficient per monomial. Monomials of
//! each degree are ordered lexicographically by descending exponent vector
//! (e0, e1, e2); for quartics that fixes the 15 slots as
//! x0^4, x0^3 x1, x0^3 x2, x0^2 x1^2, x0^2 x1 x2, x0^2 x2^2, x0 x1^3,
//! x0 x1^2 x2, x0 x1 x2^2, x0 x2^3, x1^4, x1^3 x2, x1^2 x2^2, x1 x2^3, x2^4.

use crate::field::Fq;

/// Exponent vectors of degree-d monomials, lex order by descending
/// (e0, e1, e2).
pub fn monomials(d: u8) -> Vec<[u8; 3]> {
    let mut out = Vec::new();
    for e0 in (0..=d).rev() {
        for e1 in (0..=(d - e0)).rev() {
            out.push([e0, e1, d - e0 - e1]);
        }
    }
    out
}

/// The 15 degree-4 exponent vectors in storage order.
pub fn quartic_monomials() -> &'static [[u8; 3]; 15] {
    static TABLE: std::sync::OnceLock<[[u8; 3]; 15]> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| {
        let v = monomials(4);
        let mut arr = [[0u8; 3]; 15];
        arr.copy_from_slice(&v);
        arr
    })
}

/// A homogeneous ternary form with coefficients in one field, stored as
/// element codes in the monomial order of `monomials(deg)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub deg: u8,
    pub coeffs: Vec<u32>,
}

/// A quartic: the degree-4 case of `Form`, as a fixed-size coefficient
/// vector. This is the element of the 15-dimensional space the counting
/// routines enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Quartic {
    pub c: [u32; 15],
}

impl Quartic {
    pub fn zero() -> Self {
        Quartic { c: [0; 15] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn as_form(&self) -> Form {
        Form {
            deg: 4,
            coeffs: self.c.to_vec(),
        }
    }

    /// Builds a quartic from integer coefficients (reduced mod p), listed
    /// in the documented monomial order.
    pub fn from_ints(fq: &Fq, ints: [u32; 15]) -> Self {
        let mut c = [0u32; 15];
        for (slot, &n) in c.iter_mut().zip(ints.iter()) {
            *slot = fq.from_int(n);
        }
        Quartic { c }
    }

    /// The three partial derivatives, as cubic forms.
    pub fn partials(&self, fq: &Fq) -> [Form; 3] {
        let mono4 = quartic_monomials();
        let mono3 = monomials(3);
        let index3 = |e: [u8; 3]| -> usize {
            mono3
                .iter()
                .position(|m| *m == e)
                .expect("cubic monomial index")
        };
        let mut out = [
            Form {
                deg: 3,
                coeffs: vec![0; 10],
            },
            Form {
                deg: 3,
                coeffs: vec![0; 10],
            },
            Form {
                deg: 3,
                coeffs: vec![0; 10],
            },
        ];
        for (i, &e) in mono4.iter().enumerate() {
            if self.c[i] == 0 {
                continue;
            }
            for var in 0..3 {
                if e[var] == 0 {
                    continue;
                }
                let scale = fq.from_int(e[var] as u32);
                if scale == 0 {
                    continue;
                }
                let mut drop = e;
                drop[var] -= 1;
                let j = index3(drop);
                let term = fq.mul(self.c[i], scale);
                out[var].coeffs[j] = fq.add(out[var].coeffs[j], term);
            }
        }
        out
    }

    /// Precomposition with the linear substitution x_i -> sum_j a[i][j] x_j.
    pub fn substitute(&self, fq: &Fq, a: &[[u32; 3]; 3]) -> Quartic {
        let mono4 = quartic_monomials();
        // Images of the variables as degree-1 forms.
        let lines: Vec<Form> = (0..3)
            .map(|i| Form {
                deg: 1,
                coeffs: a[i].to_vec(),
            })
            .collect();
        let mut acc = Form {
            deg: 4,
            coeffs: vec![0; 15],
        };
        for (i, &e) in mono4.iter().enumerate() {
            if self.c[i] == 0 {
                continue;
            }
            let mut term = Form {
                deg: 0,
                coeffs: vec![fq.one()],
            };
            for (var, line) in lines.iter().enumerate() {
                for _ in 0..e[var] {
                    term = mul_forms(fq, &term, line);
                }
            }
            debug_assert_eq!(term.deg, 4);
            for (slot, &tc) in acc.coeffs.iter_mut().zip(term.coeffs.iter()) {
                *slot = fq.add(*slot, fq.mul(self.c[i], tc));
            }
        }
        let mut c = [0u32; 15];
        c.copy_from_slice(&acc.coeffs);
        Quartic { c }
    }
}

impl Form {
    pub fn eval(&self, fq: &Fq, pt: [u32; 3]) -> u32 {
        let mono = monomials(self.deg);
        let mut acc = 0u32;
        for (i, e) in mono.iter().enumerate() {
            if self.coeffs[i] == 0 {
                continue;
            }
            let mut term = self.coeffs[i];
            for (var, &p) in pt.iter().enumerate() {
                for _ in 0..e[var] {
                    term = fq.mul(term, p);
                }
                if term == 0 {
                    break;
                }
            }
            acc = fq.add(acc, term);
        }
        acc
    }
}

pub fn mul_forms(fq: &Fq, a: &Form, b: &Form) -> Form {
    let deg = a.deg + b.deg;
    let ma = monomials(a.deg);
    let mb = monomials(b.deg);
    let mc = monomials(deg);
    let index = |e: [u8; 3]| -> usize {
        mc.iter().position(|m| *m == e).expect("monomial index")
    };
    let mut coeffs = vec![0u32; mc.len()];
    for (i, ea) in ma.iter().enumerate() {
        if a.coeffs[i] == 0 {
            continue;
        }
        for (j, eb) in mb.iter().enumerate() {
            if b.coeffs[j] == 0 {
                continue;
            }
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            let k = index(e);
            coeffs[k] = fq.add(coeffs[k], fq.mul(a.coeffs[i], b.coeffs[j]));
        }
    }
    Form { deg, coeffs }
}
