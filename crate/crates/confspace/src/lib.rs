// Borel-Moore homology bookkeeping for configuration spaces: closed-form
// values for the basic spaces, the geometric constructors that build
// strata out of them (vector bundles, open simplex bundles, finite
// quotients, open cones), and an enumerating solver for the long exact
// sequences that glue strata together.
//
// Polynomials follow the conventions of the hgring crate: a smooth
// connected d-dimensional variety tops out at t^(2d) L^(-d), and twisting
// by Q(m) divides by L^m.

mod eval;
mod les;

pub use eval::{
    bm, ActionGenerator, BmError, Evaluation, FactTable, GroupAction, LocalSystem, QuotientChar,
    SpaceExpr,
};
pub use les::{les_solve, ConnectingRank, LesConstraint, LesError, LesSolution, SolveFor};

use hgring::{HGError, HGPoly};

fn plain(terms: &[(i64, i64, i64)]) -> HGPoly {
    let mut out = HGPoly::zero();
    for &(degree, twist, c) in terms {
        out = out
            .add(&HGPoly::plain_term(degree, twist, c))
            .expect("plain terms always add");
    }
    out
}

/// Borel-Moore polynomial of affine n-space.
pub fn bm_affine(n: u32) -> HGPoly {
    HGPoly::plain_term(2 * i64::from(n), -i64::from(n), 1)
}

/// Borel-Moore polynomial of projective n-space.
pub fn bm_proj(n: u32) -> HGPoly {
    plain(&(0..=i64::from(n)).map(|i| (2 * i, -i, 1)).collect::<Vec<_>>())
}

// Coefficients of the Gaussian binomial [a choose b] in one variable,
// through the Pascal recurrence [a b] = [a-1 b-1] + x^b [a-1 b].
fn gaussian(a: u32, b: u32) -> Vec<i64> {
    if b > a {
        return Vec::new();
    }
    let (a, b) = (a as usize, b as usize);
    // prev[j] holds the coefficients of [s choose j]; empty means zero.
    let mut prev: Vec<Vec<i64>> = vec![Vec::new(); b + 1];
    prev[0] = vec![1];
    for s in 1..=a {
        let mut next: Vec<Vec<i64>> = vec![Vec::new(); b + 1];
        next[0] = vec![1];
        for j in 1..=b.min(s) {
            let left = &prev[j - 1];
            let up = &prev[j];
            let mut row = vec![0i64; left.len().max(up.len() + j)];
            for (i, &c) in left.iter().enumerate() {
                row[i] += c;
            }
            for (i, &c) in up.iter().enumerate() {
                row[i + j] += c;
            }
            while row.last() == Some(&0) {
                row.pop();
            }
            next[j] = row;
        }
        prev = next;
    }
    prev[b].clone()
}

/// Borel-Moore polynomial of the space of projective m-planes in P^n,
/// zero when no such plane exists.
pub fn bm_grassmannian(m: u32, n: u32) -> HGPoly {
    if m > n {
        return HGPoly::zero();
    }
    plain(
        &gaussian(n + 1, m + 1)
            .into_iter()
            .enumerate()
            .map(|(c, mult)| (2 * c as i64, -(c as i64), mult))
            .collect::<Vec<_>>(),
    )
}

/// Borel-Moore polynomial of PGL(3, C).
pub fn bm_pgl3() -> HGPoly {
    plain(&[(16, -8, 1), (13, -6, 1), (11, -5, 1), (8, -3, 1)])
}

/// Borel-Moore polynomial of GL(3, C): the projective group times its
/// central torus.
pub fn bm_gl3() -> HGPoly {
    bm_pgl3()
        .mul(&plain(&[(2, -1, 1), (1, 0, 1)]))
        .expect("plain product")
}

/// Cohomology polynomial of GL(3, C), an exterior algebra on classes in
/// degrees 1, 3, 5.
pub fn coh_gl3() -> HGPoly {
    let factors = [
        plain(&[(0, 0, 1), (1, 1, 1)]),
        plain(&[(0, 0, 1), (3, 2, 1)]),
        plain(&[(0, 0, 1), (5, 3, 1)]),
    ];
    factors
        .iter()
        .fold(HGPoly::one(), |acc, f| acc.mul(f).expect("plain product"))
}

/// Cohomology polynomial of the projectivised tangent bundle of the
/// plane (the full flag variety of C^3).
pub fn coh_flag_p2() -> HGPoly {
    plain(&[(0, 0, 1), (2, 1, 1)])
        .mul(&plain(&[(0, 0, 1), (2, 1, 1), (4, 2, 1)]))
        .expect("plain product")
}

/// The named constants every scenario starts from.
pub fn bm_constants() -> FactTable {
    let mut table = FactTable::new();
    table.insert("bm-pgl3".into(), bm_pgl3());
    table.insert("bm-gl3".into(), bm_gl3());
    table.insert("coh-gl3".into(), coh_gl3());
    table.insert("coh-flag-p2".into(), coh_flag_p2());
    table.insert("bm-proj1".into(), bm_proj(1));
    table.insert("bm-proj2".into(), bm_proj(2));
    table
}

/// Total space of a rank-r complex vector bundle: shift by 2r and twist
/// by Q(r).
pub fn vb_total(p: &HGPoly, r: u32) -> HGPoly {
    p.shift(2 * i64::from(r)).tate_twist(i64::from(r))
}

/// Total space of a bundle of open (m-1)-simplices over a base whose
/// Borel-Moore polynomial is already computed in the local system dictated
/// by the orientation character of the simplex.
pub fn simplicial_bundle(base: &HGPoly, m: u32) -> HGPoly {
    assert!(m >= 1, "simplex bundles need at least one point");
    base.shift(i64::from(m) - 1)
}

#[derive(Debug, Clone)]
pub struct ConeResult {
    pub value: HGPoly,
    /// Set when the base had no degree-zero classes, so the vertex class
    /// survives at degree zero.
    pub vertex_warning: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeError {
    EquivariantBase,
    NegativeVertexMultiplicity,
}

impl std::fmt::Display for ConeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConeError::EquivariantBase => write!(f, "open cones take plain bases"),
            ConeError::NegativeVertexMultiplicity => {
                write!(f, "cone base has degree-zero classes but no unit to cancel the vertex")
            }
        }
    }
}

impl std::error::Error for ConeError {}

/// Borel-Moore polynomial of the open cone over a base: degrees shift up
/// by one and the boundary of the vertex kills one unit class. A base
/// without degree-zero classes leaves the vertex class alive, which is
/// flagged rather than silently accepted.
pub fn open_cone(base: &HGPoly) -> Result<ConeResult, ConeError> {
    if base.group().is_some() {
        return Err(ConeError::EquivariantBase);
    }
    let shifted = base.shift(1);
    if base.degree_slice(0).is_zero() {
        let value = shifted.add(&HGPoly::one()).expect("plain sum");
        return Ok(ConeResult { value, vertex_warning: true });
    }
    if base.coeff_at(0, 0) < 1 {
        return Err(ConeError::NegativeVertexMultiplicity);
    }
    let value = shifted
        .sub(&HGPoly::plain_term(1, 0, 1))
        .expect("plain difference");
    Ok(ConeResult { value, vertex_warning: false })
}

/// Quotient by a finite group acting trivially on the cover's whole
/// Borel-Moore homology: the classes that descend are those on which every
/// generator acts by +1, so either everything survives or nothing does.
pub fn finite_quotient(cover_bm: &HGPoly, action: &GroupAction) -> Result<Evaluation, BmError> {
    if !action.wholly_invariant {
        return Err(BmError::MissingActionData { node: "finite-quotient".into() });
    }
    if action.generators.iter().any(|g| g.epsilon() == -1) {
        return Ok(Evaluation {
            value: HGPoly::zero(),
            notes: vec![
                "finite-quotient: a generator acts by -1 on a wholly invariant cover; the isotypic part vanishes"
                    .into(),
            ],
        });
    }
    Ok(Evaluation { value: cover_bm.clone(), notes: Vec::new() })
}

/// Isotypic part of an equivariant cover under a one-dimensional
/// character: the invariant part for the trivial character, the
/// alternating part for the sign character.
pub fn finite_quotient_isotypic(cover_bm: &HGPoly, ch: QuotientChar) -> Result<HGPoly, HGError> {
    match ch {
        QuotientChar::Trivial => cover_bm.invariant_part(),
        QuotientChar::Sign => cover_bm.sign_part(),
    }
}

/// What the configurations of a stratum consist of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigMarker {
    /// Configurations of m distinct points.
    Points(u32),
    /// Configurations containing a whole curve.
    Curve,
    /// The configuration is the whole plane.
    Plane,
}

/// One stratum row: the configuration space, the simplex data and the
/// rank of the vector bundle sitting on top of it.
#[derive(Debug, Clone, PartialEq)]
pub struct Stratum {
    pub id: String,
    pub space: SpaceExpr,
    pub marker: ConfigMarker,
    pub local_system: LocalSystem,
    pub orientation_twisted: bool,
    pub bundle_rank: u32,
    pub column: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StratumError {
    ZeroPoints { id: String },
    SystemMismatch { id: String },
}

impl std::fmt::Display for StratumError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StratumError::ZeroPoints { id } => {
                write!(f, "stratum {id}: point configurations need at least one point")
            }
            StratumError::SystemMismatch { id } => {
                write!(
                    f,
                    "stratum {id}: the local system must be twisted exactly when the simplex orientation is"
                )
            }
        }
    }
}

impl std::error::Error for StratumError {}

impl Stratum {
    pub fn validate(&self) -> Result<(), StratumError> {
        if self.marker == ConfigMarker::Points(0) {
            return Err(StratumError::ZeroPoints { id: self.id.clone() });
        }
        let twisted = self.local_system == LocalSystem::Twisted;
        if twisted != self.orientation_twisted {
            return Err(StratumError::SystemMismatch { id: self.id.clone() });
        }
        Ok(())
    }
}

/// Borel-Moore polynomial of the simplex bundle over a stratum's
/// configuration space. Curve configurations contribute nothing (their
/// simplices are infinite-dimensional and the classical vanishing result
/// applies); the full-plane configuration is handled by the open-cone
/// step instead.
pub fn stratum_phi(s: &Stratum, facts: &FactTable) -> Result<Evaluation, BmError> {
    match s.marker {
        ConfigMarker::Curve => Ok(Evaluation {
            value: HGPoly::zero(),
            notes: vec![format!(
                "stratum {}: configurations contain a rational curve; the contribution vanishes",
                s.id
            )],
        }),
        ConfigMarker::Plane => Ok(Evaluation {
            value: HGPoly::zero(),
            notes: vec![format!(
                "stratum {}: the full-plane configuration is handled by the open-cone step; no direct contribution",
                s.id
            )],
        }),
        ConfigMarker::Points(m) => {
            let base = bm(&s.space, s.local_system, facts)?;
            Ok(Evaluation {
                value: simplicial_bundle(&base.value, m),
                notes: base.notes,
            })
        }
    }
}

/// Borel-Moore polynomial of the vector bundle over the simplex bundle of
/// a stratum: the actual contribution of the stratum to the discriminant
/// resolution.
pub fn stratum_f(s: &Stratum, facts: &FactTable) -> Result<Evaluation, BmError> {
    let phi = stratum_phi(s, facts)?;
    Ok(Evaluation {
        value: vb_total(&phi.value, s.bundle_rank),
        notes: phi.notes,
    })
}
