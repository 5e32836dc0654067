//! Exhaustive counts over small finite fields: nonsingular members of a
//! linear system of quartics, and point configurations with their
//! Frobenius-stable pair counts.

use crate::field::{field, Fq};
use crate::poly::Quartic;
use crate::singular::{is_singular_with, ScanCtx};
use crate::system::{solve_system, LinearSystemSpec, SystemError};
use rayon::prelude::*;
use std::fmt;

#[derive(Debug)]
pub enum CountError {
    /// The requested enumeration is too large for exact counting.
    Budget(String),
    /// The linear system could not be solved.
    System(SystemError),
    /// The requested configuration count is not implemented.
    Unsupported(String),
}

impl fmt::Display for CountError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountError::Budget(msg) => write!(f, "budget exceeded: {msg}"),
            CountError::System(e) => write!(f, "{e}"),
            CountError::Unsupported(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CountError {}

impl From<SystemError> for CountError {
    fn from(e: SystemError) -> Self {
        CountError::System(e)
    }
}

/// Counts the nonsingular quartics in the given linear system over the
/// base field of the scan context, the zero polynomial excluded.
///
/// Members are enumerated up to scalar (first nonzero coordinate in the
/// solved basis normalized to one) and the result is multiplied back by
/// q - 1, which is valid because the singular locus of a curve does not
/// move under rescaling the equation. The work is split across `jobs`
/// threads; the result is an exact integer sum, so it does not depend on
/// the split.
pub fn count_nonsingular(
    spec: &LinearSystemSpec,
    fq: &'static Fq,
    jobs: usize,
) -> Result<u64, CountError> {
    let basis = solve_system(spec, fq)?;
    let dim = basis.len() as u32;
    let q = fq.q as u64;
    check_budget(q, dim, jobs)?;
    let ctx = ScanCtx::new(fq, 6);
    let normalized: u64 = (0..dim).map(|i| q.pow(dim - 1 - i)).sum();
    let jobs = jobs.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let smooth = pool.install(|| {
        (0..normalized)
            .into_par_iter()
            .map(|idx| {
                let f = member(&basis, fq, dim, idx);
                if is_singular_with(&ctx, &f) {
                    0u64
                } else {
                    1u64
                }
            })
            .sum::<u64>()
    });
    Ok(smooth * (q - 1))
}

/// The idx-th member of the system under the first-nonzero-is-one
/// normalization: leading basis index i contributes a block of
/// q^(dim - 1 - i) members whose remaining coordinates run in base q.
fn member(basis: &[Quartic], fq: &Fq, dim: u32, mut idx: u64) -> Quartic {
    let q = fq.q as u64;
    let mut lead = 0u32;
    loop {
        let block = q.pow(dim - 1 - lead);
        if idx < block {
            break;
        }
        idx -= block;
        lead += 1;
    }
    let mut f = Quartic::zero();
    add_scaled(&mut f, &basis[lead as usize], fq.one(), fq);
    for pos in (lead + 1..dim).rev() {
        let digit = (idx % q) as u32;
        idx /= q;
        if digit != 0 {
            // Digits 1..q address exactly the nonzero field elements.
            add_scaled(&mut f, &basis[pos as usize], digit, fq);
        }
    }
    f
}

fn add_scaled(acc: &mut Quartic, b: &Quartic, scalar: u32, fq: &Fq) {
    for (slot, &coeff) in acc.c.iter_mut().zip(b.c.iter()) {
        *slot = fq.add(*slot, fq.mul(scalar, coeff));
    }
}

fn check_budget(q: u64, dim: u32, jobs: usize) -> Result<(), CountError> {
    if q == 2 {
        return Ok(());
    }
    if q == 3 {
        if dim > 11 {
            return Err(CountError::Budget(format!(
                "a {dim}-dimensional system over F_3 means about 10^{} \
                 singularity scans of roughly 600000 points each",
                (dim as f64 * 3f64.log10()) as u32
            )));
        }
        if jobs < 4 {
            return Err(CountError::Budget(
                "an 11-dimensional system over F_3 takes a few minutes of \
                 parallel scanning; rerun with --jobs 4 or more"
                    .into(),
            ));
        }
        return Ok(());
    }
    Err(CountError::Budget(format!(
        "exhaustive quartic counting is limited to q = 2 and q = 3; \
         over F_{q} the system has about {q}^{dim} members"
    )))
}

/// Configuration spaces whose points can be enumerated directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigSpace {
    /// Projective space of the given dimension.
    Proj(u32),
    /// The plane minus the four lines x0, x1, x2, x0 + x1 + x2, which are
    /// in general position over every field.
    FourLinesComplement,
}

/// Counts k-point configurations of the space which are stable under the
/// Frobenius of F_q as a set. For k = 1 this is the number of rational
/// points. For k = 2 the points live in F_{q^2} and a stable pair either
/// consists of two rational points or is a conjugate pair exchanged by
/// Frobenius; with `signed` the exchanged pairs count with weight -1,
/// matching local systems that are twisted by the swap.
pub fn count_configurations(
    space: ConfigSpace,
    k: u32,
    q: u64,
    signed: bool,
) -> Result<i64, CountError> {
    let (p, e) = crate::field::parse_prime_power(q).ok_or_else(|| {
        CountError::Unsupported(format!("{q} is not a prime power in range"))
    })?;
    match k {
        1 => {
            let fq = field(p, e);
            Ok(enumerate_points(space, fq).len() as i64)
        }
        2 => {
            if q * q > crate::field::MAX_FIELD_SIZE {
                return Err(CountError::Budget(format!(
                    "pair counting needs tables for F_{{{q}^2}}"
                )));
            }
            let fq2 = field(p, 2 * e);
            let points = enumerate_points(space, fq2);
            let mut fixed = 0i64;
            for pt in &points {
                let image: Vec<u32> = pt.iter().map(|&c| fq2.pow(c, q)).collect();
                // Canonical representatives start with a one, which
                // Frobenius fixes, so images need no renormalization.
                if image == *pt {
                    fixed += 1;
                }
            }
            let total = points.len() as i64;
            let conjugate_orbits = (total - fixed) / 2;
            let rational_pairs = fixed * (fixed - 1) / 2;
            Ok(if signed {
                rational_pairs - conjugate_orbits
            } else {
                rational_pairs + conjugate_orbits
            })
        }
        _ => Err(CountError::Unsupported(format!(
            "configurations of {k} points are not implemented (only 1 and 2)"
        ))),
    }
}

/// Canonical representatives (first nonzero coordinate one) of the
/// rational points of the space.
fn enumerate_points(space: ConfigSpace, fq: &Fq) -> Vec<Vec<u32>> {
    match space {
        ConfigSpace::Proj(n) => proj_points(fq, n as usize),
        ConfigSpace::FourLinesComplement => proj_points(fq, 2)
            .into_iter()
            .filter(|pt| {
                let sum = fq.add(fq.add(pt[0], pt[1]), pt[2]);
                pt.iter().all(|&c| !fq.is_zero(c)) && !fq.is_zero(sum)
            })
            .collect(),
    }
}

fn proj_points(fq: &Fq, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..=n {
        let free = n - lead;
        let mut digits = vec![0u32; free];
        loop {
            let mut pt = vec![fq.zero(); lead];
            pt.push(fq.one());
            pt.extend(digits.iter().copied());
            out.push(pt);
            let mut carry = true;
            for d in digits.iter_mut() {
                *d += 1;
                if *d < fq.q {
                    carry = false;
                    break;
                }
                *d = 0;
            }
            if carry || free == 0 {
                break;
            }
        }
    }
    out
}
