//! Duality transforms between Borel-Moore classes and cohomology
//! classes, plus the fibration pages and the closed-open gluing sequence
//! built on top of them.

use std::fmt;

use confspace::{les_solve, ConnectingRank, LesConstraint, LesError, SolveFor};
use hgring::{HGError, HGPoly};
use symrep::Partition;

use crate::{map_terms, GridError, Orientation, SpectralGrid};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualError {
    /// The mirror degree 2m - k - 1 fell below zero: the chosen ambient
    /// dimension cannot host the class t^k.
    NegativeDegree { degree: i64 },
}

impl fmt::Display for DualError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualError::NegativeDegree { degree } => {
                write!(f, "duality produced a class in negative degree {degree}")
            }
        }
    }
}

impl std::error::Error for DualError {}

/// Alexander duality inside an ambient of complex dimension m: the
/// Borel-Moore class t^k L^e of the closed part becomes the reduced
/// cohomology class t^(2m-k-1) L^(m+e) of the complement.
pub fn alexander_dual(bm: &HGPoly, m: i64) -> Result<HGPoly, DualError> {
    for (degree, _, _) in bm.iter_terms() {
        let mirrored = 2 * m - degree - 1;
        if mirrored < 0 {
            return Err(DualError::NegativeDegree { degree: mirrored });
        }
    }
    Ok(map_terms(bm, |degree, twist| (2 * m - degree - 1, m + twist)))
}

/// Reattach the unit class in degree zero that reduced cohomology drops.
/// Equivariant polynomials receive the trivial representation.
pub fn add_unit(p: &HGPoly) -> HGPoly {
    let unit = match p.group() {
        Some(n) => HGPoly::equivariant_term(0, 0, &Partition::trivial(n), 1),
        None => HGPoly::one(),
    };
    p.add(&unit).expect("the unit matches the group")
}

/// Which way Poincare duality on a smooth d-fold is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualDirection {
    /// Cohomology t^i L^w to Borel-Moore t^(2d-i) L^(w-d).
    CohToBm,
    /// Borel-Moore t^k L^e to cohomology t^(2d-k) L^(e+d).
    BmToCoh,
}

/// Poincare duality on a smooth connected d-fold. The two directions are
/// mutually inverse.
pub fn poincare_dual(p: &HGPoly, d: i64, direction: DualDirection) -> HGPoly {
    match direction {
        DualDirection::CohToBm => map_terms(p, |i, w| (2 * d - i, w - d)),
        DualDirection::BmToCoh => map_terms(p, |k, e| (2 * d - k, e + d)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LerayError {
    EquivariantBase,
    /// A fibre with group data needs the isotypic builder.
    EquivariantFibre,
    /// The isotypic builder needs a fibre with group data.
    PlainFibre,
    NegativeDegree { degree: i64 },
    Coefficient(HGError),
    Grid(GridError),
}

impl fmt::Display for LerayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LerayError::EquivariantBase => write!(f, "the base polynomial carries group data"),
            LerayError::EquivariantFibre => write!(
                f,
                "the fibre carries group data; split it into isotypic parts"
            ),
            LerayError::PlainFibre => write!(
                f,
                "the isotypic page needs a fibre with group data"
            ),
            LerayError::NegativeDegree { degree } => {
                write!(f, "cohomology in negative degree {degree}")
            }
            LerayError::Coefficient(e) => write!(f, "{e}"),
            LerayError::Grid(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LerayError {}

/// Second page of the fibration spectral sequence with constant
/// coefficients: cell (p, q) is base degree p tensor fibre degree q.
pub fn leray_e2(base_coh: &HGPoly, fibre_coh: &HGPoly) -> Result<SpectralGrid, LerayError> {
    let mut grid = SpectralGrid::new(Orientation::Cohomological, 2);
    accumulate_products(&mut grid, base_coh, fibre_coh)?;
    Ok(grid)
}

/// Second page of the fibration spectral sequence when the fibre carries
/// a finite symmetry: the invariant part of the fibre pairs with the
/// constant-coefficient base classes, the alternating part with the
/// classes in the sign local system.
pub fn leray_e2_isotypic(
    base_constant: &HGPoly,
    base_sign: &HGPoly,
    fibre_coh: &HGPoly,
) -> Result<SpectralGrid, LerayError> {
    if fibre_coh.group().is_none() && !fibre_coh.is_zero() {
        return Err(LerayError::PlainFibre);
    }
    let invariant = fibre_coh.invariant_part().map_err(LerayError::Coefficient)?;
    let alternating = fibre_coh.sign_part().map_err(LerayError::Coefficient)?;
    let mut grid = SpectralGrid::new(Orientation::Cohomological, 2);
    accumulate_products(&mut grid, base_constant, &invariant)?;
    accumulate_products(&mut grid, base_sign, &alternating)?;
    Ok(grid)
}

fn accumulate_products(
    grid: &mut SpectralGrid,
    base: &HGPoly,
    fibre: &HGPoly,
) -> Result<(), LerayError> {
    let base_terms: Vec<(i64, i64, i64)> = base
        .iter_plain_terms()
        .map_err(|_| LerayError::EquivariantBase)?
        .collect();
    let fibre_terms: Vec<(i64, i64, i64)> = fibre
        .iter_plain_terms()
        .map_err(|_| LerayError::EquivariantFibre)?
        .collect();
    for &(p, _, _) in &base_terms {
        if p < 0 {
            return Err(LerayError::NegativeDegree { degree: p });
        }
    }
    for &(q, _, _) in &fibre_terms {
        if q < 0 {
            return Err(LerayError::NegativeDegree { degree: q });
        }
    }
    for &(p, wb, cb) in &base_terms {
        for &(q, wf, cf) in &fibre_terms {
            let class = HGPoly::plain_term(p + q, wb + wf, cb * cf);
            grid.add_to_cell(p, q, &class).map_err(LerayError::Grid)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GysinError {
    /// Only exact and maximal degree-dimension constraints make sense on
    /// the glued cohomology.
    UnsupportedConstraint,
    Les(LesError),
}

impl fmt::Display for GysinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GysinError::UnsupportedConstraint => write!(
                f,
                "gluing only accepts exact-dimension and max-dimension constraints"
            ),
            GysinError::Les(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GysinError {}

/// One consistent gluing of the total cohomology, with the connecting
/// ranks reported at the open-side degree they leave from.
#[derive(Debug, Clone)]
pub struct GysinSolution {
    pub total: HGPoly,
    pub ranks: Vec<ConnectingRank>,
}

/// Glue the cohomology of a space from a smooth closed subspace of the
/// given codimension and its open complement:
///
///   ... -> H^(k-2c)(Z)(-c) -> H^k(X) -> H^k(U) -> H^(k-2c+1)(Z)(-c) -> ...
///
/// Every consistent assignment of connecting ranks is returned;
/// constraints cut the list down.
pub fn gysin_glue(
    closed_coh: &HGPoly,
    open_coh: &HGPoly,
    codim: u32,
    constraints: &[LesConstraint],
) -> Result<Vec<GysinSolution>, GysinError> {
    let mut translated = Vec::new();
    for constraint in constraints {
        match constraint {
            LesConstraint::ExactDim { degree, dim } => {
                translated.push(LesConstraint::ExactDim {
                    degree: -degree,
                    dim: *dim,
                });
            }
            LesConstraint::MaxDim { degree, max } => {
                translated.push(LesConstraint::MaxDim {
                    degree: -degree,
                    max: *max,
                });
            }
            _ => return Err(GysinError::UnsupportedConstraint),
        }
    }
    let c = i64::from(codim);
    let shifted_closed = closed_coh.shift(2 * c).tate_twist(-c);
    let reflect = |p: &HGPoly| map_terms(p, |degree, twist| (-degree, twist));
    let solutions = les_solve(
        &reflect(&shifted_closed),
        &reflect(open_coh),
        SolveFor::Total,
        &translated,
    )
    .map_err(GysinError::Les)?;
    Ok(solutions
        .into_iter()
        .map(|solution| {
            let mut ranks: Vec<ConnectingRank> = solution
                .ranks
                .into_iter()
                .map(|r| ConnectingRank {
                    degree: -r.degree,
                    ..r
                })
                .collect();
            ranks.sort_by(|a, b| (a.degree, a.twist, &a.lambda).cmp(&(b.degree, b.twist, &b.lambda)));
            GysinSolution {
                total: reflect(&solution.solved),
                ranks,
            }
        })
        .collect())
}
