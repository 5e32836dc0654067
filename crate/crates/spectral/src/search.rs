//! Differentials as rank assignments. Every page-r arrow splits into
//! blocks indexed by (twist, symmetry type); an arrow with no common
//! block is forced to vanish. The searches enumerate the consistent
//! rank choices exhaustively, so uniqueness claims are certificates
//! rather than heuristics.

use std::collections::BTreeMap;
use std::fmt;

use hgring::{Coeff, DivError, HGError, HGPoly};
use symrep::Partition;

use crate::{Orientation, SpectralGrid};

const SEARCH_CAP: u64 = 500_000;

type SlotKey = (i64, Option<Partition>);
type Slots = BTreeMap<SlotKey, i64>;
type Cells = BTreeMap<(i64, i64), Slots>;

/// A possible page-r differential between two nonzero cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialArrow {
    pub page: i64,
    pub source: (i64, i64),
    pub target: (i64, i64),
    /// No (twist, symmetry) block is shared, so the arrow vanishes.
    pub forced_zero: bool,
}

/// Every potential arrow from the current page on, and whether they all
/// vanish for structural reasons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurityReport {
    pub arrows: Vec<PotentialArrow>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PurityError {
    /// The twist comparison certifies vanishing for the homological
    /// pages only.
    CohomologicalOrientation,
}

impl fmt::Display for PurityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PurityError::CohomologicalOrientation => {
                write!(f, "the purity check applies to homological pages")
            }
        }
    }
}

impl std::error::Error for PurityError {}

fn poly_slots(p: &HGPoly) -> Slots {
    let mut out = Slots::new();
    for (_, twist, coeff) in p.iter_terms() {
        match coeff {
            Coeff::Int(c) => {
                *out.entry((twist, None)).or_default() += c;
            }
            Coeff::Rep(rep) => {
                for (lambda, mult) in rep.iter() {
                    *out.entry((twist, Some(lambda.clone()))).or_default() += mult;
                }
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn shares_block(a: &HGPoly, b: &HGPoly) -> bool {
    let sa = poly_slots(a);
    let sb = poly_slots(b);
    sa.keys().any(|k| sb.contains_key(k))
}

fn potential_arrows(grid: &SpectralGrid) -> Vec<PotentialArrow> {
    let mut out = Vec::new();
    let Some((cmin, cmax)) = grid.col_range() else {
        return out;
    };
    let span = cmax - cmin;
    for page in grid.page..=span {
        for (source, poly) in grid.iter_cells() {
            let target = grid.orientation.arrow_target(source, page);
            if let Some(target_poly) = grid.cell(target.0, target.1) {
                out.push(PotentialArrow {
                    page,
                    source,
                    target,
                    forced_zero: !shares_block(poly, target_poly),
                });
            }
        }
    }
    out
}

/// Compare the (twist, symmetry) blocks across every arrow the page
/// geometry still allows. When no arrow has a common block the sequence
/// degenerates here.
pub fn purity_check(grid: &SpectralGrid) -> Result<PurityReport, PurityError> {
    if grid.orientation == Orientation::Cohomological {
        return Err(PurityError::CohomologicalOrientation);
    }
    let arrows = potential_arrows(grid);
    let degenerate = arrows.iter().all(|a| a.forced_zero);
    Ok(PurityReport { arrows, degenerate })
}

#[derive(Debug, Clone, PartialEq)]
pub enum AssembleError {
    /// A later differential could still be nonzero.
    NonDegenerate {
        page: i64,
        source: (i64, i64),
        target: (i64, i64),
    },
    Incompatible(HGError),
}

impl fmt::Display for AssembleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssembleError::NonDegenerate { page, source, target } => write!(
                f,
                "page {page} could still map ({}, {}) onto ({}, {})",
                source.0, source.1, target.0, target.1
            ),
            AssembleError::Incompatible(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AssembleError {}

/// Sum a degenerate page into the polynomial it converges to. Errors if
/// any remaining arrow could still act.
pub fn assemble_abutment(grid: &SpectralGrid) -> Result<HGPoly, AssembleError> {
    if let Some(live) = potential_arrows(grid).into_iter().find(|a| !a.forced_zero) {
        return Err(AssembleError::NonDegenerate {
            page: live.page,
            source: live.source,
            target: live.target,
        });
    }
    grid.total().map_err(AssembleError::Incompatible)
}

/// One chosen rank: a page-r differential restricted to a single
/// (twist, symmetry) block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankBlock {
    pub page: i64,
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub twist: i64,
    pub lambda: Option<Partition>,
    pub rank: i64,
}

/// One complete run of the sequence: the nonzero ranks chosen on the
/// way, the degenerate page they leave behind and its sum.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOutcome {
    pub blocks: Vec<RankBlock>,
    pub final_grid: SpectralGrid,
    pub abutment: HGPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchError {
    /// Cells mix plain and equivariant coefficients.
    MixedSymmetry,
    NegativeMultiplicity { cell: (i64, i64) },
    CapExceeded,
    /// An arrow past the allowed pages could still act.
    UnresolvedArrows {
        page: i64,
        source: (i64, i64),
        target: (i64, i64),
    },
    EquivariantAbutment,
    Div(DivError),
    NoSolution { examined: usize },
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::MixedSymmetry => {
                write!(f, "cells mix plain and equivariant coefficients")
            }
            SearchError::NegativeMultiplicity { cell } => write!(
                f,
                "cell ({}, {}) has a virtual multiplicity; ranks need effective cells",
                cell.0, cell.1
            ),
            SearchError::CapExceeded => write!(f, "too many rank assignments to enumerate"),
            SearchError::UnresolvedArrows { page, source, target } => write!(
                f,
                "page {page} still allows ({}, {}) -> ({}, {}) beyond the searched pages",
                source.0, source.1, target.0, target.1
            ),
            SearchError::EquivariantAbutment => {
                write!(f, "divisibility filters need a plain abutment")
            }
            SearchError::Div(e) => write!(f, "{e}"),
            SearchError::NoSolution { examined } => write!(
                f,
                "none of the {examined} rank assignments passed the filters"
            ),
        }
    }
}

impl std::error::Error for SearchError {}

struct BlockSite {
    source: (i64, i64),
    target: (i64, i64),
    key: SlotKey,
}

fn decompose_grid(grid: &SpectralGrid) -> Result<(Cells, Option<usize>), SearchError> {
    let mut cells = Cells::new();
    let mut group: Option<Option<usize>> = None;
    for (pos, poly) in grid.iter_cells() {
        match group {
            None => group = Some(poly.group()),
            Some(g) if g == poly.group() => {}
            Some(_) => return Err(SearchError::MixedSymmetry),
        }
        let slots = poly_slots(poly);
        if slots.values().any(|&c| c < 0) {
            return Err(SearchError::NegativeMultiplicity { cell: pos });
        }
        cells.insert(pos, slots);
    }
    Ok((cells, group.flatten()))
}

fn span_of(cells: &Cells) -> Option<i64> {
    let min = cells.keys().map(|&(c, _)| c).min()?;
    let max = cells.keys().map(|&(c, _)| c).max()?;
    Some(max - min)
}

fn slot_poly(degree: i64, key: &SlotKey, mult: i64) -> HGPoly {
    match &key.1 {
        None => HGPoly::plain_term(degree, key.0, mult),
        Some(lambda) => HGPoly::equivariant_term(degree, key.0, lambda, mult),
    }
}

type LiveArrow = (i64, (i64, i64), (i64, i64));

fn first_live(cells: &Cells, orientation: Orientation, from: i64, span: i64) -> Option<LiveArrow> {
    for page in from..=span {
        for (&source, slots) in cells {
            let target = orientation.arrow_target(source, page);
            if let Some(target_slots) = cells.get(&target) {
                if slots.keys().any(|k| target_slots.contains_key(k)) {
                    return Some((page, source, target));
                }
            }
        }
    }
    None
}

struct Searcher {
    orientation: Orientation,
    max_page: i64,
    budget: u64,
    outcomes: Vec<RankOutcome>,
}

impl Searcher {
    fn emit(&mut self, cells: &Cells, abutment: &HGPoly, page: i64, chain: &[RankBlock]) {
        let mut grid = SpectralGrid::new(self.orientation, page);
        for (&(col, row), slots) in cells {
            let mut cell = HGPoly::zero();
            for (key, &mult) in slots {
                let term = slot_poly(col + row, key, mult);
                cell = cell.add(&term).expect("one symmetry group per grid");
            }
            grid.set_cell(col, row, cell).expect("slices keep their degree");
        }
        self.outcomes.push(RankOutcome {
            blocks: chain.to_vec(),
            final_grid: grid,
            abutment: abutment.clone(),
        });
    }

    fn run(
        &mut self,
        cells: &Cells,
        abutment: &HGPoly,
        page: i64,
        chain: &mut Vec<RankBlock>,
    ) -> Result<(), SearchError> {
        let Some(span) = span_of(cells) else {
            self.emit(cells, abutment, page, chain);
            return Ok(());
        };
        if page > span {
            self.emit(cells, abutment, page, chain);
            return Ok(());
        }
        if page > self.max_page {
            if let Some((p, source, target)) = first_live(cells, self.orientation, page, span) {
                return Err(SearchError::UnresolvedArrows { page: p, source, target });
            }
            self.emit(cells, abutment, page, chain);
            return Ok(());
        }
        let mut blocks = Vec::new();
        for (&source, slots) in cells {
            let target = self.orientation.arrow_target(source, page);
            if let Some(target_slots) = cells.get(&target) {
                for key in slots.keys() {
                    if target_slots.contains_key(key) {
                        blocks.push(BlockSite {
                            source,
                            target,
                            key: key.clone(),
                        });
                    }
                }
            }
        }
        if blocks.is_empty() {
            return self.run(cells, abutment, page + 1, chain);
        }
        let mut usage: BTreeMap<((i64, i64), SlotKey), i64> = BTreeMap::new();
        let mut picked = vec![0i64; blocks.len()];
        self.dfs(cells, abutment, page, &blocks, 0, &mut usage, &mut picked, chain)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &mut self,
        cells: &Cells,
        abutment: &HGPoly,
        page: i64,
        blocks: &[BlockSite],
        idx: usize,
        usage: &mut BTreeMap<((i64, i64), SlotKey), i64>,
        picked: &mut Vec<i64>,
        chain: &mut Vec<RankBlock>,
    ) -> Result<(), SearchError> {
        if idx == blocks.len() {
            self.budget += 1;
            if self.budget > SEARCH_CAP {
                return Err(SearchError::CapExceeded);
            }
            let mut next = cells.clone();
            let mut removal = HGPoly::zero();
            let mut added = 0usize;
            for (block, &rank) in blocks.iter().zip(picked.iter()) {
                if rank == 0 {
                    continue;
                }
                for pos in [block.source, block.target] {
                    let slots = next.get_mut(&pos).expect("block cells exist");
                    let slot = slots.get_mut(&block.key).expect("block slots exist");
                    *slot -= rank;
                    if *slot == 0 {
                        slots.remove(&block.key);
                    }
                    if slots.is_empty() {
                        next.remove(&pos);
                    }
                    let killed = slot_poly(pos.0 + pos.1, &block.key, rank);
                    removal = removal.add(&killed).expect("one symmetry group per grid");
                }
                chain.push(RankBlock {
                    page,
                    source: block.source,
                    target: block.target,
                    twist: block.key.0,
                    lambda: block.key.1.clone(),
                    rank,
                });
                added += 1;
            }
            let next_abutment = if added == 0 {
                abutment.clone()
            } else {
                abutment.sub(&removal).expect("one symmetry group per grid")
            };
            let result = self.run(&next, &next_abutment, page + 1, chain);
            chain.truncate(chain.len() - added);
            return result;
        }
        let block = &blocks[idx];
        let source_used = usage.get(&(block.source, block.key.clone())).copied().unwrap_or(0);
        let target_used = usage.get(&(block.target, block.key.clone())).copied().unwrap_or(0);
        let source_mult = cells[&block.source][&block.key];
        let target_mult = cells[&block.target][&block.key];
        let max_rank = (source_mult - source_used).min(target_mult - target_used);
        for rank in 0..=max_rank {
            usage.insert((block.source, block.key.clone()), source_used + rank);
            usage.insert((block.target, block.key.clone()), target_used + rank);
            picked[idx] = rank;
            self.dfs(cells, abutment, page, blocks, idx + 1, usage, picked, chain)?;
        }
        picked[idx] = 0;
        usage.insert((block.source, block.key.clone()), source_used);
        usage.insert((block.target, block.key.clone()), target_used);
        Ok(())
    }
}

/// Every way the differentials can act, page by page, starting from the
/// grid's current page. Each outcome ends on a page where no arrow can
/// act any more; arrows that could still act past `max_page` are an
/// error rather than a silent assumption.
pub fn enumerate_assignments(
    grid: &SpectralGrid,
    max_page: i64,
) -> Result<Vec<RankOutcome>, SearchError> {
    let (cells, _) = decompose_grid(grid)?;
    let mut abutment = HGPoly::zero();
    for (&(col, row), slots) in &cells {
        for (key, &mult) in slots {
            let term = slot_poly(col + row, key, mult);
            abutment = abutment.add(&term).expect("one symmetry group per grid");
        }
    }
    let mut searcher = Searcher {
        orientation: grid.orientation,
        max_page,
        budget: 0,
        outcomes: Vec::new(),
    };
    let mut chain = Vec::new();
    searcher.run(&cells, &abutment, grid.page, &mut chain)?;
    Ok(searcher.outcomes)
}

/// Filters applied on top of the raw enumeration.
#[derive(Debug, Clone, Default)]
pub struct RankSearchConfig {
    /// Highest page whose differentials are enumerated.
    pub max_page: i64,
    /// Keep only abutments that are exactly divisible by this polynomial
    /// with a nonnegative quotient.
    pub divisor: Option<HGPoly>,
    /// Keep only abutments whose classes t^k L^e all satisfy
    /// k + e <= bound, the constraint every Borel-Moore class of a
    /// space of that dimension obeys.
    pub weight_bound: Option<i64>,
}

/// An outcome that passed the filters, with the quotient when a divisor
/// was requested.
#[derive(Debug, Clone, PartialEq)]
pub struct RankSolution {
    pub blocks: Vec<RankBlock>,
    pub final_grid: SpectralGrid,
    pub abutment: HGPoly,
    pub quotient: Option<HGPoly>,
}

/// Enumerate all rank assignments and keep the ones whose abutment
/// passes the configured filters. An empty result is an error: the
/// caller always expects at least one consistent sequence.
pub fn rank_search(
    grid: &SpectralGrid,
    config: &RankSearchConfig,
) -> Result<Vec<RankSolution>, SearchError> {
    let outcomes = enumerate_assignments(grid, config.max_page)?;
    let examined = outcomes.len();
    let mut solutions = Vec::new();
    for outcome in outcomes {
        if let Some(bound) = config.weight_bound {
            let ok = outcome
                .abutment
                .iter_terms()
                .all(|(degree, twist, _)| degree + twist <= bound);
            if !ok {
                continue;
            }
        }
        let quotient = match &config.divisor {
            Some(divisor) => {
                if outcome.abutment.group().is_some() {
                    return Err(SearchError::EquivariantAbutment);
                }
                match outcome.abutment.div_exact(divisor) {
                    Ok(q) => {
                        let nonneg = q
                            .iter_plain_terms()
                            .expect("plain quotient")
                            .all(|(_, _, c)| c >= 0);
                        if !nonneg {
                            continue;
                        }
                        Some(q)
                    }
                    Err(DivError::Indivisible(_)) => continue,
                    Err(e) => return Err(SearchError::Div(e)),
                }
            }
            None => None,
        };
        solutions.push(RankSolution {
            blocks: outcome.blocks,
            final_grid: outcome.final_grid,
            abutment: outcome.abutment,
            quotient,
        });
    }
    if solutions.is_empty() {
        return Err(SearchError::NoSolution { examined });
    }
    Ok(solutions)
}
