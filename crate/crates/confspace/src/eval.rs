// Evaluation of space expressions to Borel-Moore polynomials. The grammar
// mirrors the textual form used in scenario files:
//
//   (conf 2 (proj 1))                       unordered configurations
//   (fibration pgl3 (conf 2 (proj 1)) assert-mult)
//   (quotient <cover> wholly-invariant (char sign (12)(34)))
//   (complement <ambient> <closed>)
//
// Twisted evaluation refers to the rank-one local system that changes sign
// under odd permutations of the configuration points. On expressions
// without configuration (or scenario-supplied) content the system is
// trivial and evaluation falls back to the constant system.

use std::collections::BTreeMap;
use std::fmt;

use hgring::{HGError, HGPoly};

use crate::les::{les_solve, LesConstraint, LesError, SolveFor};
use crate::{bm_affine, bm_gl3, bm_grassmannian, bm_pgl3, bm_proj};

/// Named Borel-Moore facts available to the evaluator.
pub type FactTable = BTreeMap<String, HGPoly>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalSystem {
    Constant,
    Twisted,
}

/// How a quotient generator scales homology classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientChar {
    Trivial,
    Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionGenerator {
    pub character: QuotientChar,
    pub cycles: Vec<Vec<u32>>,
}

impl ActionGenerator {
    /// The scalar by which the generator acts: +1 for the trivial
    /// character, the permutation parity for the sign character.
    pub fn epsilon(&self) -> i64 {
        match self.character {
            QuotientChar::Trivial => 1,
            QuotientChar::Sign => {
                let transpositions: usize =
                    self.cycles.iter().map(|c| c.len().saturating_sub(1)).sum();
                if transpositions.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

/// Action data for a finite quotient: the generators together with the
/// assertion that the group acts trivially on the cover's whole
/// Borel-Moore homology. Without that assertion no isotypic part can be
/// extracted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupAction {
    pub wholly_invariant: bool,
    pub generators: Vec<ActionGenerator>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceExpr {
    Affine(u32),
    Proj(u32),
    /// Unordered configurations of k points on the base.
    Conf(u32, Box<SpaceExpr>),
    /// Projective m-planes in P^n.
    Grassmannian(u32, u32),
    Pgl3,
    Gl3,
    /// A scenario-supplied fact, looked up by name.
    Named(String),
    Product(Vec<SpaceExpr>),
    Fibration {
        base: Box<SpaceExpr>,
        fibre: Box<SpaceExpr>,
        /// Fibrations multiply only when the scenario asserts trivial
        /// monodromy; the engine never multiplies silently.
        assert_multiplicative: bool,
    },
    Quotient {
        cover: Box<SpaceExpr>,
        action: GroupAction,
    },
    /// The open complement of a closed subspace, solved through the long
    /// exact sequence.
    Complement {
        ambient: Box<SpaceExpr>,
        closed: Box<SpaceExpr>,
    },
    /// Synonym of Complement for tables that name the open part directly.
    OpenSubset {
        ambient: Box<SpaceExpr>,
        closed: Box<SpaceExpr>,
    },
    DisjointUnion(Vec<SpaceExpr>),
}

fn write_cycles(f: &mut fmt::Formatter<'_>, cycles: &[Vec<u32>]) -> fmt::Result {
    for cycle in cycles {
        write!(f, "(")?;
        let compact = cycle.iter().all(|&x| x <= 9);
        for (i, x) in cycle.iter().enumerate() {
            if i > 0 && !compact {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Affine(n) => write!(f, "(affine {n})"),
            SpaceExpr::Proj(n) => write!(f, "(proj {n})"),
            SpaceExpr::Conf(k, base) => write!(f, "(conf {k} {base})"),
            SpaceExpr::Grassmannian(m, n) => write!(f, "(grassmannian {m} {n})"),
            SpaceExpr::Pgl3 => write!(f, "pgl3"),
            SpaceExpr::Gl3 => write!(f, "gl3"),
            SpaceExpr::Named(id) => write!(f, "(fact {id})"),
            SpaceExpr::Product(factors) => {
                write!(f, "(product")?;
                for factor in factors {
                    write!(f, " {factor}")?;
                }
                write!(f, ")")
            }
            SpaceExpr::Fibration { base, fibre, assert_multiplicative } => {
                write!(f, "(fibration {base} {fibre}")?;
                if *assert_multiplicative {
                    write!(f, " assert-mult")?;
                }
                write!(f, ")")
            }
            SpaceExpr::Quotient { cover, action } => {
                write!(f, "(quotient {cover}")?;
                if action.wholly_invariant {
                    write!(f, " wholly-invariant")?;
                }
                for g in &action.generators {
                    let kind = match g.character {
                        QuotientChar::Trivial => "trivial",
                        QuotientChar::Sign => "sign",
                    };
                    write!(f, " (char {kind} ")?;
                    write_cycles(f, &g.cycles)?;
                    write!(f, ")")?;
                }
                write!(f, ")")
            }
            SpaceExpr::Complement { ambient, closed } => {
                write!(f, "(complement {ambient} {closed})")
            }
            SpaceExpr::OpenSubset { ambient, closed } => {
                write!(f, "(open-subset {ambient} {closed})")
            }
            SpaceExpr::DisjointUnion(parts) => {
                write!(f, "(disjoint-union")?;
                for part in parts {
                    write!(f, " {part}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// An evaluated polynomial together with the rule firings worth logging.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub value: HGPoly,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BmError {
    UnknownFact(String),
    Unreducible { node: String },
    FibrationUnasserted { node: String },
    MissingActionData { node: String },
    ComplementNotForced { node: String, solutions: usize },
    Les { node: String, source: LesError },
    Ring(HGError),
}

impl fmt::Display for BmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BmError::UnknownFact(id) => write!(f, "unknown fact {id}"),
            BmError::Unreducible { node } => {
                write!(f, "cannot reduce {node}: needs a scenario-supplied fact")
            }
            BmError::FibrationUnasserted { node } => {
                write!(f, "fibration without a multiplicativity assertion: {node}")
            }
            BmError::MissingActionData { node } => {
                write!(f, "quotient without action data on the cover's homology: {node}")
            }
            BmError::ComplementNotForced { node, solutions } => {
                write!(f, "complement not forced by exactness ({solutions} candidates): {node}")
            }
            BmError::Les { node, source } => write!(f, "exact sequence failed at {node}: {source}"),
            BmError::Ring(e) => write!(f, "ring error: {e}"),
        }
    }
}

impl std::error::Error for BmError {}

impl From<HGError> for BmError {
    fn from(e: HGError) -> Self {
        BmError::Ring(e)
    }
}

// Whether a subtree can carry the sign local system: configuration nodes
// do, scenario facts and quotients may, everything else is simply
// connected for our purposes.
fn carries_sign_data(expr: &SpaceExpr) -> bool {
    match expr {
        SpaceExpr::Conf(..) | SpaceExpr::Named(_) | SpaceExpr::Quotient { .. } => true,
        SpaceExpr::Affine(_)
        | SpaceExpr::Proj(_)
        | SpaceExpr::Grassmannian(..)
        | SpaceExpr::Pgl3
        | SpaceExpr::Gl3 => false,
        SpaceExpr::Product(factors) | SpaceExpr::DisjointUnion(factors) => {
            factors.iter().any(carries_sign_data)
        }
        SpaceExpr::Fibration { base, fibre, .. } => {
            carries_sign_data(base) || carries_sign_data(fibre)
        }
        SpaceExpr::Complement { ambient, closed } | SpaceExpr::OpenSubset { ambient, closed } => {
            carries_sign_data(ambient) || carries_sign_data(closed)
        }
    }
}

/// Evaluate the Borel-Moore polynomial of a space expression in the given
/// local system, using `facts` for named constants.
pub fn bm(expr: &SpaceExpr, sys: LocalSystem, facts: &FactTable) -> Result<Evaluation, BmError> {
    let mut notes = Vec::new();
    let value = bm_inner(expr, sys, facts, &mut notes)?;
    Ok(Evaluation { value, notes })
}

// The symmetric square of a projective space, minus the diagonal: all
// classes are algebraic cells, so the symmetric square is spanned by the
// unordered products of cell classes.
fn pair_space_plain(n: u32) -> Result<HGPoly, BmError> {
    let mut sym = HGPoly::zero();
    for i in 0..=i64::from(n) {
        for j in i..=i64::from(n) {
            sym = sym.add(&HGPoly::plain_term(2 * (i + j), -(i + j), 1))?;
        }
    }
    Ok(sym.sub(&bm_proj(n))?)
}

fn route(sys: LocalSystem, child: &SpaceExpr) -> LocalSystem {
    if sys == LocalSystem::Twisted && carries_sign_data(child) {
        LocalSystem::Twisted
    } else {
        LocalSystem::Constant
    }
}

fn bm_inner(
    expr: &SpaceExpr,
    sys: LocalSystem,
    facts: &FactTable,
    notes: &mut Vec<String>,
) -> Result<HGPoly, BmError> {
    if let SpaceExpr::Named(id) = expr {
        return facts.get(id).cloned().ok_or_else(|| BmError::UnknownFact(id.clone()));
    }
    let sys = if sys == LocalSystem::Twisted && !carries_sign_data(expr) {
        notes.push(format!(
            "{expr}: the sign-twisted system carries no data here; evaluated in the constant system"
        ));
        LocalSystem::Constant
    } else {
        sys
    };
    match expr {
        SpaceExpr::Named(_) => unreachable!("handled above"),
        SpaceExpr::Affine(n) => Ok(bm_affine(*n)),
        SpaceExpr::Proj(n) => Ok(bm_proj(*n)),
        SpaceExpr::Grassmannian(m, n) => Ok(bm_grassmannian(*m, *n)),
        SpaceExpr::Pgl3 => Ok(bm_pgl3()),
        SpaceExpr::Gl3 => Ok(bm_gl3()),
        SpaceExpr::Conf(k, base) => {
            let k = *k;
            if k == 0 {
                return Err(BmError::Unreducible { node: expr.to_string() });
            }
            if k == 1 {
                return bm_inner(base, LocalSystem::Constant, facts, notes);
            }
            match (sys, base.as_ref()) {
                (LocalSystem::Twisted, SpaceExpr::Affine(_)) => Ok(HGPoly::zero()),
                (LocalSystem::Twisted, SpaceExpr::Proj(n)) => {
                    if k >= n + 2 {
                        return Ok(HGPoly::zero());
                    }
                    let shift = i64::from(k) * i64::from(k - 1);
                    Ok(bm_grassmannian(k - 1, *n).shift(shift).tate_twist(shift / 2))
                }
                (LocalSystem::Constant, SpaceExpr::Proj(n)) if k == 2 => pair_space_plain(*n),
                _ => Err(BmError::Unreducible { node: expr.to_string() }),
            }
        }
        SpaceExpr::Product(factors) => product_value(expr, factors.iter(), sys, facts, notes),
        SpaceExpr::Fibration { base, fibre, assert_multiplicative } => {
            if !assert_multiplicative {
                return Err(BmError::FibrationUnasserted { node: expr.to_string() });
            }
            product_value(
                expr,
                [base.as_ref(), fibre.as_ref()].into_iter(),
                sys,
                facts,
                notes,
            )
        }
        SpaceExpr::Quotient { cover, action } => {
            if !action.wholly_invariant {
                return Err(BmError::MissingActionData { node: expr.to_string() });
            }
            if action.generators.iter().any(|g| g.epsilon() == -1) {
                notes.push(format!(
                    "{expr}: a generator acts by -1 on a wholly invariant cover; the isotypic part vanishes"
                ));
                Ok(HGPoly::zero())
            } else {
                bm_inner(cover, LocalSystem::Constant, facts, notes)
            }
        }
        SpaceExpr::Complement { ambient, closed } | SpaceExpr::OpenSubset { ambient, closed } => {
            let node = expr.to_string();
            let z = bm_inner(closed, route(sys, closed), facts, notes)?;
            let a = bm_inner(ambient, route(sys, ambient), facts, notes)?;
            if z.is_zero() {
                notes.push(format!(
                    "{node}: closed part has trivial Borel-Moore homology; the open part equals the ambient"
                ));
                return Ok(a);
            }
            let sols = les_solve(
                &z,
                &a,
                SolveFor::Open,
                &[LesConstraint::ExactDim { degree: 0, dim: 0 }],
            )
            .map_err(|source| BmError::Les { node: node.clone(), source })?;
            if sols.len() == 1 {
                Ok(sols.into_iter().next().expect("length checked").solved)
            } else {
                Err(BmError::ComplementNotForced { node, solutions: sols.len() })
            }
        }
        SpaceExpr::DisjointUnion(parts) => {
            let mut out = HGPoly::zero();
            for part in parts {
                let v = bm_inner(part, sys, facts, notes)?;
                out = out.add(&v)?;
            }
            Ok(out)
        }
    }
}

fn product_value<'a>(
    expr: &SpaceExpr,
    factors: impl Iterator<Item = &'a SpaceExpr>,
    sys: LocalSystem,
    facts: &FactTable,
    notes: &mut Vec<String>,
) -> Result<HGPoly, BmError> {
    let factors: Vec<&SpaceExpr> = factors.collect();
    if sys == LocalSystem::Twisted {
        let carriers = factors.iter().filter(|f| carries_sign_data(f)).count();
        if carriers > 1 {
            notes.push(format!(
                "{expr}: sign-twisted system distributed over {carriers} configuration-carrying factors"
            ));
        }
    }
    let mut out = HGPoly::one();
    for factor in factors {
        let v = bm_inner(factor, route(sys, factor), facts, notes)?;
        out = out.mul(&v)?;
    }
    Ok(out)
}
