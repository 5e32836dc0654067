//! Spectral-sequence bookkeeping over Hodge-graded polynomials. A grid
//! holds the classes of one page, indexed by (column, row) with the class
//! degree pinned to column + row. Differentials only ever connect blocks
//! with the same Tate twist and the same symmetry type, which is what the
//! purity reports, the rank searches and the abutment assembly exploit.

mod build;
mod dual;
mod search;

pub use build::{build_e1, BuildE1Error, ColumnMode, E1Report, Which};
pub use dual::{
    add_unit, alexander_dual, gysin_glue, leray_e2, leray_e2_isotypic, poincare_dual,
    DualDirection, DualError, GysinError, GysinSolution, LerayError,
};
pub use search::{
    assemble_abutment, enumerate_assignments, purity_check, rank_search, AssembleError,
    PotentialArrow, PurityError, PurityReport, RankBlock, RankOutcome, RankSearchConfig,
    RankSolution, SearchError,
};

use std::collections::BTreeMap;
use std::fmt;

use hgring::{Coeff, HGError, HGPoly};

/// Direction convention of the differentials. Homological pages move a
/// class from (u, v) to (u - r, v + r - 1); cohomological pages move it
/// from (p, q) to (p + r, q - r + 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Homological,
    Cohomological,
}

impl Orientation {
    /// Where a page-r differential leaving `cell` lands.
    pub fn arrow_target(self, cell: (i64, i64), r: i64) -> (i64, i64) {
        let (col, row) = cell;
        match self {
            Orientation::Homological => (col - r, row + r - 1),
            Orientation::Cohomological => (col + r, row - r + 1),
        }
    }

    fn labels(self) -> (&'static str, &'static str) {
        match self {
            Orientation::Homological => ("u", "v"),
            Orientation::Cohomological => ("p", "q"),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Homological => write!(f, "homological"),
            Orientation::Cohomological => write!(f, "cohomological"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GridError {
    /// A class was placed at (col, row) but its degree is not col + row.
    DegreeMismatch { col: i64, row: i64, degree: i64 },
    DuplicateColumn { column: i64 },
    Coefficient(HGError),
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::DegreeMismatch { col, row, degree } => write!(
                f,
                "cell ({col}, {row}) only holds classes of degree {}, got degree {degree}",
                col + row
            ),
            GridError::DuplicateColumn { column } => {
                write!(f, "column {column} was provided twice")
            }
            GridError::Coefficient(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GridError {}

/// One page of a spectral sequence: finitely many nonzero cells, each a
/// polynomial concentrated in degree column + row.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGrid {
    pub orientation: Orientation,
    pub page: i64,
    cells: BTreeMap<(i64, i64), HGPoly>,
}

impl SpectralGrid {
    pub fn new(orientation: Orientation, page: i64) -> SpectralGrid {
        SpectralGrid {
            orientation,
            page,
            cells: BTreeMap::new(),
        }
    }

    /// Put a polynomial into one cell, replacing what was there. Zero
    /// clears the cell.
    pub fn set_cell(&mut self, col: i64, row: i64, value: HGPoly) -> Result<(), GridError> {
        check_degrees(col, row, &value)?;
        if value.is_zero() {
            self.cells.remove(&(col, row));
        } else {
            self.cells.insert((col, row), value);
        }
        Ok(())
    }

    /// Add classes into one cell on top of what was there.
    pub fn add_to_cell(&mut self, col: i64, row: i64, value: &HGPoly) -> Result<(), GridError> {
        check_degrees(col, row, value)?;
        let current = self.cells.remove(&(col, row)).unwrap_or_else(HGPoly::zero);
        let sum = current.add(value).map_err(GridError::Coefficient)?;
        if !sum.is_zero() {
            self.cells.insert((col, row), sum);
        }
        Ok(())
    }

    pub fn cell(&self, col: i64, row: i64) -> Option<&HGPoly> {
        self.cells.get(&(col, row))
    }

    pub fn iter_cells(&self) -> impl Iterator<Item = ((i64, i64), &HGPoly)> + '_ {
        self.cells.iter().map(|(&pos, poly)| (pos, poly))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn col_range(&self) -> Option<(i64, i64)> {
        let min = self.cells.keys().map(|&(c, _)| c).min()?;
        let max = self.cells.keys().map(|&(c, _)| c).max()?;
        Some((min, max))
    }

    pub fn row_range(&self) -> Option<(i64, i64)> {
        let min = self.cells.keys().map(|&(_, r)| r).min()?;
        let max = self.cells.keys().map(|&(_, r)| r).max()?;
        Some((min, max))
    }

    /// Sum of all cells. Cells carry their true degrees, so this is the
    /// polynomial the page presents before any further differentials.
    pub fn total(&self) -> Result<HGPoly, HGError> {
        let mut out = HGPoly::zero();
        for poly in self.cells.values() {
            out = out.add(poly)?;
        }
        Ok(out)
    }

    /// Cell-by-cell comparison. Cells missing on one side compare against
    /// zero.
    pub fn diff(&self, expected: &SpectralGrid) -> Vec<CellDiff> {
        let mut positions: Vec<(i64, i64)> = self.cells.keys().copied().collect();
        for pos in expected.cells.keys() {
            if !self.cells.contains_key(pos) {
                positions.push(*pos);
            }
        }
        positions.sort();
        let mut out = Vec::new();
        for pos in positions {
            let found = self.cells.get(&pos).cloned().unwrap_or_else(HGPoly::zero);
            let want = expected
                .cells
                .get(&pos)
                .cloned()
                .unwrap_or_else(HGPoly::zero);
            if found != want {
                out.push(CellDiff {
                    col: pos.0,
                    row: pos.1,
                    expected: want,
                    found,
                });
            }
        }
        out
    }

    /// Rows descending, columns ascending, one compact entry per cell.
    pub fn render_text(&self) -> String {
        let mut out = format!("page {} ({})\n", self.page, self.orientation);
        let (Some((cmin, cmax)), Some((rmin, rmax))) = (self.col_range(), self.row_range())
        else {
            out.push_str("(empty)\n");
            return out;
        };
        let (col_label, row_label) = self.orientation.labels();
        let cols: Vec<i64> = (cmin..=cmax).collect();
        let mut header: Vec<String> = vec![String::new()];
        header.extend(cols.iter().map(|c| format!("{col_label}={c}")));
        let mut lines: Vec<Vec<String>> = vec![header];
        for row in (rmin..=rmax).rev() {
            let mut line = vec![format!("{row_label}={row}")];
            for &col in &cols {
                line.push(match self.cells.get(&(col, row)) {
                    Some(poly) => compact_cell(poly),
                    None => "0".to_string(),
                });
            }
            lines.push(line);
        }
        let mut widths = vec![0usize; cols.len() + 1];
        for line in &lines {
            for (i, entry) in line.iter().enumerate() {
                widths[i] = widths[i].max(entry.chars().count());
            }
        }
        for line in &lines {
            let mut rendered = String::new();
            for (i, entry) in line.iter().enumerate() {
                if i > 0 {
                    rendered.push_str("  ");
                }
                rendered.push_str(entry);
                let pad = widths[i] - entry.chars().count();
                rendered.push_str(&" ".repeat(pad));
            }
            out.push_str(rendered.trim_end());
            out.push('\n');
        }
        out
    }

    /// The same data as a single JSON object with a flat cell array.
    pub fn render_json(&self) -> String {
        let mut out = format!(
            "{{\"orientation\":\"{}\",\"page\":{},\"cells\":[",
            self.orientation, self.page
        );
        for (i, (&(col, row), poly)) in self.cells.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!(
                "{{\"col\":{col},\"row\":{row},\"value\":\"{poly}\"}}"
            ));
        }
        out.push_str("]}");
        out
    }

    /// Read a grid back from its line format: optional `orientation` and
    /// `page` lines, then one `cell COL ROW: POLY` line per nonzero cell.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<SpectralGrid, GridParseError> {
        let mut grid = SpectralGrid::new(Orientation::Homological, 1);
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let n = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| GridParseError { line: n, msg };
            if let Some(rest) = line.strip_prefix("orientation ") {
                grid.orientation = match rest.trim() {
                    "homological" => Orientation::Homological,
                    "cohomological" => Orientation::Cohomological,
                    other => return Err(err(format!("unknown orientation {other:?}"))),
                };
            } else if let Some(rest) = line.strip_prefix("page ") {
                grid.page = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad page number {rest:?}")))?;
            } else if let Some(rest) = line.strip_prefix("cell ") {
                let (head, poly_text) = rest
                    .split_once(':')
                    .ok_or_else(|| err("cell line needs `cell COL ROW: POLY`".into()))?;
                let mut coords = head.split_whitespace();
                let col: i64 = coords
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("bad cell column".into()))?;
                let row: i64 = coords
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("bad cell row".into()))?;
                if coords.next().is_some() {
                    return Err(err("cell line has extra coordinates".into()));
                }
                let poly: HGPoly = poly_text
                    .trim()
                    .parse()
                    .map_err(|e| err(format!("bad polynomial: {e}")))?;
                if grid.cells.contains_key(&(col, row)) {
                    return Err(err(format!("cell ({col}, {row}) given twice")));
                }
                grid.set_cell(col, row, poly).map_err(|e| err(e.to_string()))?;
            } else {
                return Err(err(format!("unrecognised line {line:?}")));
            }
        }
        Ok(grid)
    }
}

/// One mismatching cell from a grid comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CellDiff {
    pub col: i64,
    pub row: i64,
    pub expected: HGPoly,
    pub found: HGPoly,
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cell ({}, {}): expected {}, found {}",
            self.col, self.row, self.expected, self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for GridParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for GridParseError {}

/// Build a page by slicing whole column polynomials into cells: the
/// degree-a part of column c lands in cell (c, a - c).
pub fn grid_from_columns(
    columns: &[(i64, HGPoly)],
    orientation: Orientation,
    page: i64,
) -> Result<SpectralGrid, GridError> {
    let mut grid = SpectralGrid::new(orientation, page);
    let mut seen = std::collections::BTreeSet::new();
    for (col, poly) in columns {
        if !seen.insert(*col) {
            return Err(GridError::DuplicateColumn { column: *col });
        }
        for (degree, part) in degree_parts(poly) {
            grid.set_cell(*col, degree - *col, part)?;
        }
    }
    Ok(grid)
}

fn check_degrees(col: i64, row: i64, value: &HGPoly) -> Result<(), GridError> {
    for (degree, _, _) in value.iter_terms() {
        if degree != col + row {
            return Err(GridError::DegreeMismatch { col, row, degree });
        }
    }
    Ok(())
}

/// One polynomial per degree appearing in `p`, preserving coefficients.
pub(crate) fn degree_parts(p: &HGPoly) -> BTreeMap<i64, HGPoly> {
    let mut out: BTreeMap<i64, HGPoly> = BTreeMap::new();
    for (degree, twist, coeff) in p.iter_terms() {
        let slot = out.entry(degree).or_insert_with(HGPoly::zero);
        *slot = slot
            .add(&term_poly(degree, twist, coeff))
            .expect("terms of one polynomial share a group");
    }
    out
}

/// A single (degree, twist) slot as its own polynomial.
pub(crate) fn term_poly(degree: i64, twist: i64, coeff: &Coeff) -> HGPoly {
    match coeff {
        Coeff::Int(c) => HGPoly::plain_term(degree, twist, *c),
        Coeff::Rep(rep) => {
            let mut out = HGPoly::zero();
            for (lambda, mult) in rep.iter() {
                out = out
                    .add(&HGPoly::equivariant_term(degree, twist, lambda, mult))
                    .expect("irreducibles of one representation share a group");
            }
            out
        }
    }
}

/// Apply a (degree, twist) relabeling to every class.
pub(crate) fn map_terms(p: &HGPoly, f: impl Fn(i64, i64) -> (i64, i64)) -> HGPoly {
    let mut out = HGPoly::zero();
    for (degree, twist, coeff) in p.iter_terms() {
        let (nd, nt) = f(degree, twist);
        out = out
            .add(&term_poly(nd, nt, coeff))
            .expect("relabeling keeps the group");
    }
    out
}

/// Compact class-list notation for one cell: `Q(m)^k` for plain classes,
/// `s[..](m)^k` for isotypic ones, where m is minus the L-exponent.
fn compact_cell(poly: &HGPoly) -> String {
    let mut pieces: Vec<(i64, String)> = Vec::new();
    for (_, twist, coeff) in poly.iter_terms() {
        match coeff {
            Coeff::Int(c) => pieces.push((*c, compact_piece("Q", twist, *c))),
            Coeff::Rep(rep) => {
                for (lambda, mult) in rep.iter() {
                    pieces.push((mult, compact_piece(&format!("s{lambda}"), twist, mult)));
                }
            }
        }
    }
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (mult, text)) in pieces.iter().enumerate() {
        if i == 0 {
            if *mult < 0 {
                out.push('-');
            }
        } else if *mult < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(text);
    }
    out
}

fn compact_piece(base: &str, twist: i64, mult: i64) -> String {
    let mut out = base.to_string();
    let m = -twist;
    if m != 0 {
        out.push_str(&format!("({m})"));
    }
    let mag = mult.abs();
    if mag != 1 {
        out.push_str(&format!("^{mag}"));
    }
    out
}
