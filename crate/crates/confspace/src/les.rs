// Long-exact-sequence bookkeeping at the level of Hodge-graded Borel-Moore
// polynomials. The sequence relating a closed subspace Z, its ambient
// space X and the open complement U reads
//
//   ... -> BM_k(Z) -> BM_k(X) -> BM_k(U) -> BM_{k-1}(Z) -> ...
//
// Boundary maps preserve the Tate twist and the symmetry type, so the
// sequence splits into independent blocks indexed by (twist, irreducible).
// Within a block the only unknowns are the boundary ranks r_k of
// BM_k(U) -> BM_{k-1}(Z); the solver enumerates every consistent choice.

use std::collections::{BTreeMap, BTreeSet};

use hgring::{Coeff, HGPoly};
use symrep::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveFor {
    /// Closed and open parts are known; solve for the ambient total.
    Total,
    /// Closed part and total are known; solve for the open part.
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LesConstraint {
    /// The solved polynomial has exactly this dimension in one degree.
    ExactDim { degree: i64, dim: i64 },
    /// The solved polynomial has at most this dimension in one degree.
    MaxDim { degree: i64, max: i64 },
    /// Every solved class t^k L^e satisfies k + e <= max_level. On a
    /// space of dimension d every Borel-Moore class obeys this with
    /// max_level = d, which is what usually cuts the spurious branches.
    WeightBound { max_level: i64 },
    /// Classes of the closed part in this degree inject into the total,
    /// i.e. no boundary comes in from the degree above. With trivial_only
    /// the requirement applies only to plain blocks and to the trivial
    /// isotypic blocks (fundamental classes of compact pieces), leaving
    /// the other symmetry types free.
    ClosedInjects { degree: i64, trivial_only: bool },
}

/// One nonzero boundary rank: the map BM_degree(open) -> BM_{degree-1}(closed)
/// restricted to the (twist, lambda) block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectingRank {
    pub degree: i64,
    pub twist: i64,
    pub lambda: Option<Partition>,
    pub rank: i64,
}

#[derive(Debug, Clone)]
pub struct LesSolution {
    pub solved: HGPoly,
    pub ranks: Vec<ConnectingRank>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LesError {
    NoConsistentAssignment { first_violated_degree: i64 },
    GroupMismatch,
    NegativeInput,
    TooManyBranches,
}

impl std::fmt::Display for LesError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LesError::NoConsistentAssignment { first_violated_degree } => {
                write!(f, "no consistent boundary ranks: first violated degree {first_violated_degree}")
            }
            LesError::GroupMismatch => write!(f, "closed and open parts live over different symmetric groups"),
            LesError::NegativeInput => write!(f, "virtual (negative) multiplicities are not allowed in exact sequences"),
            LesError::TooManyBranches => write!(f, "too many boundary-rank assignments to enumerate"),
        }
    }
}

impl std::error::Error for LesError {}

const BRANCH_CAP: u128 = 200_000;

type BlockKey = (i64, Option<Partition>);
type Block = BTreeMap<i64, i64>;

fn decompose(p: &HGPoly) -> Result<BTreeMap<BlockKey, Block>, LesError> {
    let mut out: BTreeMap<BlockKey, Block> = BTreeMap::new();
    for (degree, twist, coeff) in p.iter_terms() {
        match coeff {
            Coeff::Int(c) => {
                if *c < 0 {
                    return Err(LesError::NegativeInput);
                }
                if *c > 0 {
                    *out.entry((twist, None)).or_default().entry(degree).or_default() += c;
                }
            }
            Coeff::Rep(v) => {
                for (lambda, c) in v.iter() {
                    if c < 0 {
                        return Err(LesError::NegativeInput);
                    }
                    if c > 0 {
                        *out.entry((twist, Some(lambda.clone())))
                            .or_default()
                            .entry(degree)
                            .or_default() += c;
                    }
                }
            }
        }
    }
    Ok(out)
}

struct BlockCand {
    solved: Vec<(i64, i64)>,
    ranks: Vec<(i64, i64)>,
}

fn injection_applies(lambda: &Option<Partition>, trivial_only: bool) -> bool {
    if !trivial_only {
        return true;
    }
    match lambda {
        None => true,
        Some(l) => *l == Partition::trivial(l.n()),
    }
}

// Evaluate one boundary-rank assignment inside a block. Returns the solved
// degrees on success, or the smallest degree at which exactness or a
// per-block constraint fails.
fn evaluate_assignment(
    key: &BlockKey,
    c: &Block,
    known: &Block,
    ranks: &BTreeMap<i64, i64>,
    solve_for: SolveFor,
    constraints: &[LesConstraint],
) -> Result<BlockCand, i64> {
    let (twist, lambda) = key;
    let mut degrees: BTreeSet<i64> = c.keys().chain(known.keys()).copied().collect();
    for &d in ranks.keys() {
        degrees.insert(d);
        degrees.insert(d - 1);
    }
    let r = |d: i64| *ranks.get(&d).unwrap_or(&0);
    let mut violated: Option<i64> = None;
    let note = |d: i64, violated: &mut Option<i64>| {
        *violated = Some(violated.map_or(d, |v| v.min(d)));
    };
    let mut solved = Vec::new();
    for &d in &degrees {
        let cd = *c.get(&d).unwrap_or(&0);
        let kd = *known.get(&d).unwrap_or(&0);
        let s = match solve_for {
            SolveFor::Total => cd + kd - r(d) - r(d + 1),
            SolveFor::Open => kd - cd + r(d) + r(d + 1),
        };
        if s < 0 {
            note(d, &mut violated);
            break;
        }
        if solve_for == SolveFor::Open && r(d) > s {
            note(d, &mut violated);
            break;
        }
        if s > 0 {
            for constraint in constraints {
                if let LesConstraint::WeightBound { max_level } = constraint {
                    if d + twist > *max_level {
                        note(d, &mut violated);
                    }
                }
            }
            if violated.is_some() {
                break;
            }
            solved.push((d, s));
        }
    }
    if violated.is_none() {
        for constraint in constraints {
            if let LesConstraint::ClosedInjects { degree, trivial_only } = constraint {
                if injection_applies(lambda, *trivial_only) && r(degree + 1) > 0 {
                    note(*degree, &mut violated);
                }
            }
        }
    }
    match violated {
        Some(d) => Err(d),
        None => Ok(BlockCand {
            solved,
            ranks: ranks.iter().filter(|(_, &v)| v > 0).map(|(&d, &v)| (d, v)).collect(),
        }),
    }
}

fn solve_block(
    key: &BlockKey,
    c: &Block,
    known: &Block,
    solve_for: SolveFor,
    constraints: &[LesConstraint],
    violation: &mut Option<i64>,
) -> Result<Vec<BlockCand>, LesError> {
    // A boundary rank r_d is bounded by the closed classes in degree d-1,
    // and when the open part is known also by the open classes in degree d.
    let mut positions: Vec<(i64, i64)> = Vec::new();
    for (&cd, &cm) in c {
        let d = cd + 1;
        let upper = match solve_for {
            SolveFor::Total => cm.min(*known.get(&d).unwrap_or(&0)),
            SolveFor::Open => cm,
        };
        if upper > 0 {
            positions.push((d, upper));
        }
    }
    let mut branches: u128 = 1;
    for &(_, upper) in &positions {
        branches *= upper as u128 + 1;
        if branches > BRANCH_CAP {
            return Err(LesError::TooManyBranches);
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0i64; positions.len()];
    loop {
        let ranks: BTreeMap<i64, i64> = positions
            .iter()
            .zip(&idx)
            .filter(|(_, &i)| i > 0)
            .map(|(&(d, _), &i)| (d, i))
            .collect();
        match evaluate_assignment(key, c, known, &ranks, solve_for, constraints) {
            Ok(cand) => out.push(cand),
            Err(d) => *violation = Some(violation.map_or(d, |v| v.min(d))),
        }
        let mut carried = true;
        for (slot, &(_, upper)) in idx.iter_mut().zip(&positions) {
            if *slot < upper {
                *slot += 1;
                carried = false;
                break;
            }
            *slot = 0;
        }
        if carried {
            break;
        }
    }
    Ok(out)
}

/// Enumerate the totals (or open parts) consistent with the long exact
/// sequence and the given constraints. `closed` is always the closed part;
/// `known` is the open part when solving for the total and the total when
/// solving for the open part. Solutions are deduplicated by polynomial and
/// returned in a deterministic order together with their boundary ranks.
pub fn les_solve(
    closed: &HGPoly,
    known: &HGPoly,
    solve_for: SolveFor,
    constraints: &[LesConstraint],
) -> Result<Vec<LesSolution>, LesError> {
    if !closed.is_zero() && !known.is_zero() && closed.group() != known.group() {
        return Err(LesError::GroupMismatch);
    }
    let cb = decompose(closed)?;
    let kb = decompose(known)?;
    let keys: BTreeSet<BlockKey> = cb.keys().chain(kb.keys()).cloned().collect();
    let mut violation: Option<i64> = None;
    let empty = Block::new();
    let mut per_block: Vec<(BlockKey, Vec<BlockCand>)> = Vec::new();
    for key in keys {
        let c = cb.get(&key).unwrap_or(&empty);
        let k = kb.get(&key).unwrap_or(&empty);
        let cands = solve_block(&key, c, k, solve_for, constraints, &mut violation)?;
        if cands.is_empty() {
            return Err(LesError::NoConsistentAssignment {
                first_violated_degree: violation.unwrap_or(0),
            });
        }
        per_block.push((key, cands));
    }

    let mut combinations: u128 = 1;
    for (_, cands) in &per_block {
        combinations *= cands.len() as u128;
        if combinations > BRANCH_CAP {
            return Err(LesError::TooManyBranches);
        }
    }

    let mut solutions: BTreeMap<String, LesSolution> = BTreeMap::new();
    let mut idx = vec![0usize; per_block.len()];
    loop {
        let mut solved = HGPoly::zero();
        let mut ranks = Vec::new();
        for ((key, cands), &i) in per_block.iter().zip(&idx) {
            let (twist, lambda) = key;
            let cand = &cands[i];
            for &(d, m) in &cand.solved {
                let term = match lambda {
                    None => HGPoly::plain_term(d, *twist, m),
                    Some(l) => HGPoly::equivariant_term(d, *twist, l, m),
                };
                solved = solved.add(&term).expect("blocks share one group");
            }
            for &(d, rank) in &cand.ranks {
                ranks.push(ConnectingRank { degree: d, twist: *twist, lambda: lambda.clone(), rank });
            }
        }
        let mut ok = true;
        for constraint in constraints {
            match constraint {
                LesConstraint::ExactDim { degree, dim } => {
                    let d: i64 = solved.degree_slice(*degree).iter().map(|(_, c)| c).sum();
                    if d != *dim {
                        violation = Some(violation.map_or(*degree, |v| v.min(*degree)));
                        ok = false;
                    }
                }
                LesConstraint::MaxDim { degree, max } => {
                    let d: i64 = solved.degree_slice(*degree).iter().map(|(_, c)| c).sum();
                    if d > *max {
                        violation = Some(violation.map_or(*degree, |v| v.min(*degree)));
                        ok = false;
                    }
                }
                _ => {}
            }
        }
        if ok {
            ranks.sort_by(|a, b| (a.degree, a.twist, &a.lambda).cmp(&(b.degree, b.twist, &b.lambda)));
            solutions.entry(solved.to_string()).or_insert(LesSolution { solved, ranks });
        }
        let mut carried = true;
        for (slot, (_, cands)) in idx.iter_mut().zip(&per_block) {
            if *slot + 1 < cands.len() {
                *slot += 1;
                carried = false;
                break;
            }
            *slot = 0;
        }
        if carried {
            break;
        }
    }

    if solutions.is_empty() {
        return Err(LesError::NoConsistentAssignment {
            first_violated_degree: violation.unwrap_or(0),
        });
    }
    Ok(solutions.into_values().collect())
}
