//! First pages of the resolution spectral sequence: one column per
//! stratum (or per merged configuration type), filled with the
//! Borel-Moore classes of the simplex bundle or of the full bundle on
//! top of it.

use std::collections::BTreeMap;
use std::fmt;

use confspace::{stratum_f, stratum_phi, BmError, FactTable, Stratum, StratumError};
use hgring::{DivError, HGError, HGPoly};

use crate::{grid_from_columns, GridError, Orientation, SpectralGrid};

/// Which bundle over the configuration spaces the page records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    /// The simplex bundle alone.
    Phi,
    /// The vector bundle over the simplex bundle.
    F,
}

/// How strata map to columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnMode {
    /// Each stratum sits in the column it declares; column 0 means the
    /// stratum is expected to contribute nothing.
    Fine,
    /// Strata are merged by the numeric prefix of their id and the
    /// nonzero groups are numbered from 1 in increasing prefix order.
    Grouped,
}

/// A built page together with the bookkeeping worth surfacing.
#[derive(Debug, Clone)]
pub struct E1Report {
    pub grid: SpectralGrid,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BuildE1Error {
    Shape(StratumError),
    Stratum { id: String, error: BmError },
    ColumnCollision { column: i64, first: String, second: String },
    UnplacedClasses { id: String },
    UngroupableId { id: String },
    GroupSum { prefix: u32, error: HGError },
    ColumnDivision { column: i64, error: DivError },
    Grid(GridError),
}

impl fmt::Display for BuildE1Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildE1Error::Shape(e) => write!(f, "{e}"),
            BuildE1Error::Stratum { id, error } => write!(f, "stratum {id}: {error}"),
            BuildE1Error::ColumnCollision { column, first, second } => write!(
                f,
                "strata {first} and {second} both claim column {column}"
            ),
            BuildE1Error::UnplacedClasses { id } => write!(
                f,
                "stratum {id} declares no column but contributes classes"
            ),
            BuildE1Error::UngroupableId { id } => write!(
                f,
                "stratum id {id:?} has no numeric prefix to merge by"
            ),
            BuildE1Error::GroupSum { prefix, error } => {
                write!(f, "merging type {prefix}: {error}")
            }
            BuildE1Error::ColumnDivision { column, error } => {
                write!(f, "column {column}: {error}")
            }
            BuildE1Error::Grid(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BuildE1Error {}

fn numeric_prefix(id: &str) -> Option<u32> {
    let digits: String = id.chars().take_while(|c| c.is_ascii_digit()).collect();
    if digits.is_empty() {
        return None;
    }
    digits.parse().ok()
}

/// Evaluate every stratum and lay the results out as the first page of
/// the spectral sequence. Strata with no classes leave their column
/// empty and are logged; an optional divisor factors a common tensor
/// factor out of every column before slicing.
pub fn build_e1(
    strata: &[Stratum],
    which: Which,
    mode: ColumnMode,
    facts: &FactTable,
    column_divisor: Option<&HGPoly>,
) -> Result<E1Report, BuildE1Error> {
    let mut notes = Vec::new();
    let mut evaluated: Vec<(&Stratum, HGPoly)> = Vec::new();
    for stratum in strata {
        stratum.validate().map_err(BuildE1Error::Shape)?;
        let eval = match which {
            Which::Phi => stratum_phi(stratum, facts),
            Which::F => stratum_f(stratum, facts),
        }
        .map_err(|error| BuildE1Error::Stratum {
            id: stratum.id.clone(),
            error,
        })?;
        for note in eval.notes {
            if note.starts_with("stratum ") {
                notes.push(note);
            } else {
                notes.push(format!("stratum {}: {note}", stratum.id));
            }
        }
        evaluated.push((stratum, eval.value));
    }

    let mut columns: BTreeMap<i64, (String, HGPoly)> = BTreeMap::new();
    match mode {
        ColumnMode::Fine => {
            for (stratum, value) in evaluated {
                let column = i64::from(stratum.column);
                if value.is_zero() {
                    if column > 0 {
                        notes.push(format!(
                            "stratum {}: no classes, column {column} stays empty",
                            stratum.id
                        ));
                    } else {
                        notes.push(format!("stratum {}: no classes", stratum.id));
                    }
                    continue;
                }
                if column == 0 {
                    return Err(BuildE1Error::UnplacedClasses {
                        id: stratum.id.clone(),
                    });
                }
                if let Some((first, _)) = columns.get(&column) {
                    return Err(BuildE1Error::ColumnCollision {
                        column,
                        first: first.clone(),
                        second: stratum.id.clone(),
                    });
                }
                columns.insert(column, (stratum.id.clone(), value));
            }
        }
        ColumnMode::Grouped => {
            let mut groups: BTreeMap<u32, (Vec<String>, HGPoly)> = BTreeMap::new();
            for (stratum, value) in evaluated {
                let prefix = numeric_prefix(&stratum.id).ok_or_else(|| {
                    BuildE1Error::UngroupableId {
                        id: stratum.id.clone(),
                    }
                })?;
                let slot = groups
                    .entry(prefix)
                    .or_insert_with(|| (Vec::new(), HGPoly::zero()));
                slot.0.push(stratum.id.clone());
                slot.1 = slot
                    .1
                    .add(&value)
                    .map_err(|error| BuildE1Error::GroupSum { prefix, error })?;
            }
            let mut next = 1i64;
            for (prefix, (ids, sum)) in groups {
                if sum.is_zero() {
                    notes.push(format!(
                        "type {prefix} ({}) contributes nothing",
                        ids.join(", ")
                    ));
                    continue;
                }
                notes.push(format!("column {next} collects type {prefix} ({})", ids.join(", ")));
                columns.insert(next, (format!("type {prefix}"), sum));
                next += 1;
            }
        }
    }

    let mut sliced: Vec<(i64, HGPoly)> = Vec::new();
    for (column, (_, value)) in columns {
        let value = match column_divisor {
            Some(divisor) => value
                .div_exact(divisor)
                .map_err(|error| BuildE1Error::ColumnDivision { column, error })?,
            None => value,
        };
        sliced.push((column, value));
    }
    let grid = grid_from_columns(&sliced, Orientation::Homological, 1)
        .map_err(BuildE1Error::Grid)?;
    Ok(E1Report { grid, notes })
}
