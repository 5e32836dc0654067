//! Singularity detection for plane quartics by direct point search.
//!
//! A quartic curve is singular over the algebraic closure if and only if
//! it has a singular point of degree at most 6: a reduced quartic has at
//! most 6 geometric singular points, so each Galois orbit has size at
//! most 6, while a non-reduced quartic carries a multiple component of
//! degree at most 2, which always contains a closed point of degree at
//! most 2. The scan therefore sweeps P^2(F_{q^d}) for d = 1..=6 and looks
//! for common zeros of f and all three partial derivatives. The value of
//! f is tested explicitly because in characteristic 2 the Euler relation
//! degenerates (4 = 0) and the partials alone do not determine membership
//! in the curve.

use crate::field::{field, Fq, MAX_FIELD_SIZE};
use crate::poly::{monomials, quartic_monomials, Quartic};

/// Precomputed data for scanning the extensions of one base field.
pub struct ScanCtx {
    base: &'static Fq,
    levels: Vec<ScanLevel>,
}

struct ScanLevel {
    fd: &'static Fq,
    embed: Vec<u32>,
}

/// Index plans: for each z-degree j, the list of (coefficient slot,
/// y-power) pairs describing the y-polynomial multiplying z^j after
/// setting x0 = 1, plus the same data for the x0 = 0 line.
struct ChartPlan {
    /// chart[j] lists (slot, i) with monomial x0^(d-i-j) x1^i x2^j.
    chart: Vec<Vec<(usize, usize)>>,
    /// line[j] is the slot of x1^(d-j) x2^j.
    line: Vec<usize>,
}

fn chart_plan(d: u8) -> ChartPlan {
    let mono = monomials(d);
    let mut chart = vec![Vec::new(); (d + 1) as usize];
    let mut line = vec![usize::MAX; (d + 1) as usize];
    for (slot, e) in mono.iter().enumerate() {
        let j = e[2] as usize;
        if e[0] == 0 {
            line[j] = slot;
        }
        chart[j].push((slot, e[1] as usize));
    }
    ChartPlan { chart, line }
}

impl ScanCtx {
    /// Builds the scan context for a base field, preparing the extension
    /// fields F_{q^d} for d = 1..=max_degree and the embeddings into them.
    pub fn new(base: &'static Fq, max_degree: u32) -> ScanCtx {
        let mut levels = Vec::new();
        for d in 1..=max_degree {
            let size = (base.q as u128).pow(d);
            assert!(
                size <= MAX_FIELD_SIZE as u128,
                "extension F_{{{}^{}}} exceeds the table limit; the base field is too large \
                 for a point search",
                base.q,
                d
            );
            let fd = field(base.p, base.k * d);
            let embed = base.embed_table(fd);
            levels.push(ScanLevel { fd, embed });
        }
        ScanCtx { base, levels }
    }

    pub fn base(&self) -> &'static Fq {
        self.base
    }
}

/// True if the projective curve f = 0 has a singular point over the
/// algebraic closure. Requires f != 0.
pub fn is_singular(f: &Quartic, base: &'static Fq) -> bool {
    let ctx = ScanCtx::new(base, 6);
    is_singular_with(&ctx, f)
}

/// Scan variant that reuses a prepared context (used by the counting
/// loops, which test many quartics over the same base field).
pub fn is_singular_with(ctx: &ScanCtx, f: &Quartic) -> bool {
    assert!(!f.is_zero(), "the zero polynomial has no curve attached");
    let base = ctx.base;
    let partials = f.partials(base);
    let p0 = &partials[0].coeffs;
    let p1 = &partials[1].coeffs;
    let p2 = &partials[2].coeffs;
    for level in &ctx.levels {
        if scan_level(level, &f.c, p0, p1, p2) {
            return true;
        }
    }
    false
}

fn plan4() -> &'static ChartPlan {
    static PLAN: std::sync::OnceLock<ChartPlan> = std::sync::OnceLock::new();
    PLAN.get_or_init(|| chart_plan(4))
}

fn plan3() -> &'static ChartPlan {
    static PLAN: std::sync::OnceLock<ChartPlan> = std::sync::OnceLock::new();
    PLAN.get_or_init(|| chart_plan(3))
}

fn scan_level(level: &ScanLevel, fc: &[u32; 15], p0: &[u32], p1: &[u32], p2: &[u32]) -> bool {
    let fd = level.fd;
    let emb = &level.embed;
    let fe: Vec<u32> = fc.iter().map(|&c| emb[c as usize]).collect();
    let pe: [Vec<u32>; 3] = [
        p0.iter().map(|&c| emb[c as usize]).collect(),
        p1.iter().map(|&c| emb[c as usize]).collect(),
        p2.iter().map(|&c| emb[c as usize]).collect(),
    ];
    let q4 = plan4();
    let q3 = plan3();

    // Points with x0 = 0: the binary forms f(0, x1, x2) and partials.
    let fl: Vec<u32> = q4.line.iter().map(|&s| fe[s]).collect();
    let pl: Vec<Vec<u32>> = pe
        .iter()
        .map(|p| q3.line.iter().map(|&s| p[s]).collect())
        .collect();
    // (0:0:1): substitute x1 = 0, x2 = 1, keeping only the top z-power.
    if fl[4] == 0 && pl[0][3] == 0 && pl[1][3] == 0 && pl[2][3] == 0 {
        return true;
    }
    // (0:1:z) for z in F_{q^d}.
    for z in fd.elements() {
        if horner(fd, &fl, z) != 0 {
            continue;
        }
        if horner(fd, &pl[0], z) == 0
            && horner(fd, &pl[1], z) == 0
            && horner(fd, &pl[2], z) == 0
        {
            return true;
        }
    }

    // Chart points (1:y:z).
    let mut zf = [0u32; 5];
    let mut z0 = [0u32; 4];
    let mut z1 = [0u32; 4];
    let mut z2 = [0u32; 4];
    for y in fd.elements() {
        for (j, slot) in zf.iter_mut().enumerate() {
            *slot = eval_chart_coeff(fd, &fe, &q4.chart[j], y);
        }
        for (j, slot) in z0.iter_mut().enumerate() {
            *slot = eval_chart_coeff(fd, &pe[0], &q3.chart[j], y);
        }
        for (j, slot) in z1.iter_mut().enumerate() {
            *slot = eval_chart_coeff(fd, &pe[1], &q3.chart[j], y);
        }
        for (j, slot) in z2.iter_mut().enumerate() {
            *slot = eval_chart_coeff(fd, &pe[2], &q3.chart[j], y);
        }
        for z in fd.elements() {
            if horner(fd, &zf, z) != 0 {
                continue;
            }
            if horner(fd, &z0, z) == 0 && horner(fd, &z1, z) == 0 && horner(fd, &z2, z) == 0 {
                return true;
            }
        }
    }
    false
}

/// Coefficient of z^j on the chart x0 = 1: a polynomial in y evaluated by
/// direct accumulation over the plan entries.
fn eval_chart_coeff(fd: &Fq, coeffs: &[u32], plan: &[(usize, usize)], y: u32) -> u32 {
    // plan entries are ordered by descending x0-power, i.e. ascending
    // y-power; accumulate with running powers of y.
    let mut acc = 0u32;
    let mut ypow = fd.one();
    let mut cur = 0usize;
    for &(slot, i) in plan {
        while cur < i {
            ypow = fd.mul(ypow, y);
            cur += 1;
        }
        if coeffs[slot] != 0 {
            acc = fd.add(acc, fd.mul(coeffs[slot], ypow));
        }
    }
    acc
}

fn horner(fd: &Fq, coeffs: &[u32], x: u32) -> u32 {
    let mut acc = 0u32;
    for &c in coeffs.iter().rev() {
        acc = fd.mul(acc, x);
        acc = fd.add(acc, c);
    }
    acc
}

/// Number of points of P^2(F_{q^d}) summed over d = 1..=6, used by the
/// budget estimate for counting runs.
pub fn scan_points_budget(q: u64) -> u64 {
    let total: u128 = (1..=6u32)
        .map(|d| {
            let qd = (q as u128).pow(d);
            qd * qd + qd + 1
        })
        .sum();
    total.min(u64::MAX as u128) as u64
}

/// Sanity check used in tests: verifies that the quartic vanishes at a
/// claimed point together with its partials.
pub fn is_singular_at(f: &Quartic, base: &'static Fq, d: u32, pt: [u32; 3]) -> bool {
    let fd = field(base.p, base.k * d);
    let emb = base.embed_table(fd);
    let fe: Vec<u32> = f.c.iter().map(|&c| emb[c as usize]).collect();
    let partials = f.partials(base);
    let mono4 = quartic_monomials();
    let eval4 = |coeffs: &[u32]| -> u32 {
        let mut acc = 0;
        for (i, e) in mono4.iter().enumerate() {
            if coeffs[i] == 0 {
                continue;
            }
            let mut term = coeffs[i];
            for (var, &pv) in pt.iter().enumerate() {
                for _ in 0..e[var] {
                    term = fd.mul(term, pv);
                }
            }
            acc = fd.add(acc, term);
        }
        acc
    };
    if eval4(&fe) != 0 {
        return false;
    }
    let mono3 = monomials(3);
    for pform in &partials {
        let pc: Vec<u32> = pform.coeffs.iter().map(|&c| emb[c as usize]).collect();
        let mut acc = 0;
        for (i, e) in mono3.iter().enumerate() {
            if pc[i] == 0 {
                continue;
            }
            let mut term = pc[i];
            for (var, &pv) in pt.iter().enumerate() {
                for _ in 0..e[var] {
                    term = fd.mul(term, pv);
                }
            }
            acc = fd.add(acc, term);
        }
        if acc != 0 {
            return false;
        }
    }
    true
}
