//! Linear systems of quartics cut out by tangency conditions along a
//! fixed line, and a small Gaussian-elimination solver that produces a
//! basis of each system.

use crate::field::Fq;
use crate::poly::{quartic_monomials, Quartic};

/// A subspace of the 15-dimensional space of quartics.
///
/// Points are homogeneous coordinate triples and lines are coefficient
/// vectors of linear forms, both with entries given as field codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSystemSpec {
    /// The whole space.
    Full,
    /// Quartics whose restriction to `t` is a multiple of l_p^2 l_q^2:
    /// the line meets the curve doubly at both marked points.
    ProperBitangent {
        p: [u32; 3],
        q: [u32; 3],
        t: [u32; 3],
    },
    /// Quartics whose restriction to `t` is a multiple of l_p^4: the line
    /// meets the curve with full contact at the marked point.
    FlexBitangent { p: [u32; 3], t: [u32; 3] },
}

impl LinearSystemSpec {
    /// The standard proper configuration: p = (1:0:0), q = (0:1:0),
    /// t = {x2 = 0}.
    pub fn canonical_proper(fq: &Fq) -> Self {
        let one = fq.one();
        LinearSystemSpec::ProperBitangent {
            p: [one, 0, 0],
            q: [0, one, 0],
            t: [0, 0, one],
        }
    }

    /// The standard flex configuration: p = (1:0:0), t = {x2 = 0}.
    pub fn canonical_flex(fq: &Fq) -> Self {
        let one = fq.one();
        LinearSystemSpec::FlexBitangent {
            p: [one, 0, 0],
            t: [0, 0, one],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemError {
    DegenerateInput(String),
}

impl std::fmt::Display for SystemError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SystemError::DegenerateInput(why) => write!(f, "degenerate input: {why}"),
        }
    }
}

impl std::error::Error for SystemError {}

/// Solves the linear system and returns a basis of the solution subspace.
pub fn solve_system(spec: &LinearSystemSpec, fq: &Fq) -> Result<Vec<Quartic>, SystemError> {
    let conditions = condition_rows(spec, fq)?;
    let kernel = kernel_basis(fq, &conditions, 15);
    let expected = 15 - conditions.len();
    if kernel.len() != expected {
        return Err(SystemError::DegenerateInput(format!(
            "conditions are not independent: expected dimension {expected}, got {}",
            kernel.len()
        )));
    }
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut c = [0u32; 15];
            c.copy_from_slice(&v);
            Quartic { c }
        })
        .collect())
}

/// The rows of the condition matrix over the 15 quartic coefficients.
fn condition_rows(spec: &LinearSystemSpec, fq: &Fq) -> Result<Vec<Vec<u32>>, SystemError> {
    match spec {
        LinearSystemSpec::Full => Ok(Vec::new()),
        LinearSystemSpec::ProperBitangent { p, q, t } => {
            let (a, b) = span_of_line(fq, *t)?;
            let sp = coords_on_line(fq, *t, a, b, *p, "p")?;
            let sq = coords_on_line(fq, *t, a, b, *q, "q")?;
            if proportional(fq, &[sp.0, sp.1], &[sq.0, sq.1]) {
                return Err(SystemError::DegenerateInput(
                    "the two tangency points coincide".into(),
                ));
            }
            let lp = [sp.1, fq.neg(sp.0)];
            let lq = [sq.1, fq.neg(sq.0)];
            let target = mul_binary(fq, &mul_binary(fq, &lp, &lp), &mul_binary(fq, &lq, &lq));
            Ok(proportionality_rows(fq, a, b, &target))
        }
        LinearSystemSpec::FlexBitangent { p, t } => {
            let (a, b) = span_of_line(fq, *t)?;
            let sp = coords_on_line(fq, *t, a, b, *p, "p")?;
            let lp = [sp.1, fq.neg(sp.0)];
            let sq_form = mul_binary(fq, &lp, &lp);
            let target = mul_binary(fq, &sq_form, &sq_form);
            Ok(proportionality_rows(fq, a, b, &target))
        }
    }
}

/// Two projectively distinct points spanning the line {t = 0}.
fn span_of_line(fq: &Fq, t: [u32; 3]) -> Result<([u32; 3], [u32; 3]), SystemError> {
    if t == [0, 0, 0] {
        return Err(SystemError::DegenerateInput("the line is zero".into()));
    }
    let mut found: Vec<[u32; 3]> = Vec::new();
    for pt in projective_plane_points(fq) {
        let v = fq.add(
            fq.add(fq.mul(t[0], pt[0]), fq.mul(t[1], pt[1])),
            fq.mul(t[2], pt[2]),
        );
        if v == 0 {
            found.push(pt);
            if found.len() == 2 {
                return Ok((found[0], found[1]));
            }
        }
    }
    Err(SystemError::DegenerateInput(
        "could not span the line".into(),
    ))
}

/// Canonical representatives of the points of P^2(F_q).
pub fn projective_plane_points(fq: &Fq) -> Vec<[u32; 3]> {
    let one = fq.one();
    let mut pts = Vec::with_capacity((fq.q * fq.q + fq.q + 1) as usize);
    for a in fq.elements() {
        for b in fq.elements() {
            pts.push([one, a, b]);
        }
    }
    for c in fq.elements() {
        pts.push([0, one, c]);
    }
    pts.push([0, 0, one]);
    pts
}

/// Writes `pt` as s*a + u*b, checking that it lies on the line spanned by
/// a and b.
fn coords_on_line(
    fq: &Fq,
    t: [u32; 3],
    a: [u32; 3],
    b: [u32; 3],
    pt: [u32; 3],
    label: &str,
) -> Result<(u32, u32), SystemError> {
    if pt == [0, 0, 0] {
        return Err(SystemError::DegenerateInput(format!(
            "point {label} is the zero vector"
        )));
    }
    let on_line = fq.add(
        fq.add(fq.mul(t[0], pt[0]), fq.mul(t[1], pt[1])),
        fq.mul(t[2], pt[2]),
    );
    if on_line != 0 {
        return Err(SystemError::DegenerateInput(format!(
            "point {label} does not lie on the line"
        )));
    }
    // Find a 2x2 minor of [a b] with nonzero determinant and solve by
    // Cramer's rule.
    for i in 0..3 {
        for j in (i + 1)..3 {
            let det = fq.sub(fq.mul(a[i], b[j]), fq.mul(a[j], b[i]));
            if det == 0 {
                continue;
            }
            let s = fq.div(fq.sub(fq.mul(pt[i], b[j]), fq.mul(pt[j], b[i])), det);
            let u = fq.div(fq.sub(fq.mul(a[i], pt[j]), fq.mul(a[j], pt[i])), det);
            // Consistency on the remaining coordinate.
            for m in 0..3 {
                let lhs = fq.add(fq.mul(s, a[m]), fq.mul(u, b[m]));
                if lhs != pt[m] {
                    return Err(SystemError::DegenerateInput(format!(
                        "point {label} does not lie on the line"
                    )));
                }
            }
            return Ok((s, u));
        }
    }
    Err(SystemError::DegenerateInput(
        "line span is degenerate".into(),
    ))
}

fn proportional(fq: &Fq, v: &[u32], w: &[u32]) -> bool {
    for i in 0..v.len() {
        for j in 0..w.len() {
            if fq.sub(fq.mul(v[i], w[j]), fq.mul(v[j], w[i])) != 0 {
                return false;
            }
        }
    }
    true
}

/// Product of binary forms given by ascending powers of u (index j is the
/// coefficient of s^(deg-j) u^j).
fn mul_binary(fq: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] = fq.add(out[i + j], fq.mul(ca, cb));
        }
    }
    out
}

/// Rows expressing "the restriction of f to the line spanned by (a, b) is
/// proportional to `target`" as linear conditions on the 15 coefficients.
fn proportionality_rows(fq: &Fq, a: [u32; 3], b: [u32; 3], target: &[u32]) -> Vec<Vec<u32>> {
    // restriction[j][i]: coefficient of s^(4-j) u^j in the restriction of
    // the i-th basis monomial.
    let mono = quartic_monomials();
    let mut restriction = vec![vec![0u32; 15]; 5];
    for (i, &e) in mono.iter().enumerate() {
        // Expand prod_m (s a_m + u b_m)^(e_m) as a binary quartic.
        let mut form = vec![fq.one()];
        for m in 0..3 {
            let line = [a[m], b[m]];
            for _ in 0..e[m] {
                form = mul_binary(fq, &form, &line);
            }
        }
        debug_assert_eq!(form.len(), 5);
        for (j, &cj) in form.iter().enumerate() {
            restriction[j][i] = cj;
        }
    }
    let pivot = target
        .iter()
        .position(|&c| c != 0)
        .expect("target form is nonzero");
    let mut rows = Vec::new();
    for j in 0..5 {
        if j == pivot {
            continue;
        }
        // target[pivot] * r_j - target[j] * r_pivot = 0
        let mut row = vec![0u32; 15];
        for i in 0..15 {
            let lhs = fq.mul(target[pivot], restriction[j][i]);
            let rhs = fq.mul(target[j], restriction[pivot][i]);
            row[i] = fq.sub(lhs, rhs);
        }
        rows.push(row);
    }
    rows
}

/// Basis of the kernel of the given rows, acting on `n` coordinates.
fn kernel_basis(fq: &Fq, rows: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    let mut mat: Vec<Vec<u32>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let mut sel = None;
        for (r, row) in mat.iter().enumerate().skip(rank) {
            if row[col] != 0 {
                sel = Some(r);
                break;
            }
        }
        let Some(r) = sel else { continue };
        mat.swap(rank, r);
        let inv = fq.inv(mat[rank][col]);
        for slot in mat[rank].iter_mut() {
            *slot = fq.mul(*slot, inv);
        }
        let pivot_row = mat[rank].clone();
        for (r2, row) in mat.iter_mut().enumerate() {
            if r2 != rank && row[col] != 0 {
                let factor = row[col];
                for (slot, &pc) in row.iter_mut().zip(pivot_row.iter()) {
                    let sub = fq.mul(factor, pc);
                    *slot = fq.sub(*slot, sub);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut basis = Vec::new();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    for &fcol in &free {
        let mut v = vec![0u32; n];
        v[fcol] = fq.one();
        for (r, &pcol) in pivots.iter().enumerate() {
            v[pcol] = fq.neg(mat[r][fcol]);
        }
        basis.push(v);
    }
    basis
}
