//! Per-column statistics used by range-normalized metrics and encoders.

use super::table::{Cell, ColumnType, Table, TableError};

/// Observed statistics for one column.
///
/// `degenerate` is set when the column cannot serve as a range normalizer:
/// all cells missing, or a numeric range of zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnStats {
    pub name: String,
    pub column_type: ColumnType,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub range: Option<f64>,
    /// Categorical values in first-appearance order.
    pub categories: Vec<String>,
    pub missing_count: usize,
    pub degenerate: bool,
}

pub fn column_stats(table: &Table, column: &str) -> Result<ColumnStats, TableError> {
    let idx = table
        .schema()
        .column_index(column)
        .ok_or_else(|| TableError::UnknownColumn {
            name: column.to_string(),
        })?;
    let ty = table.schema().columns()[idx].column_type;

    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut categories: Vec<String> = Vec::new();
    let mut missing = 0usize;
    let mut present = 0usize;

    for cell in table.column_cells(idx) {
        match cell {
            Cell::Missing => missing += 1,
            Cell::Int(_) | Cell::Float(_) => {
                let v = cell.as_f64().expect("numeric cell");
                min = min.min(v);
                max = max.max(v);
                present += 1;
            }
            Cell::Text(s) => {
                if !categories.iter().any(|c| c == s) {
                    categories.push(s.clone());
                }
                present += 1;
            }
        }
    }

    let (min, max, range) = if ty.is_numeric() && present > 0 {
        (Some(min), Some(max), Some(max - min))
    } else {
        (None, None, None)
    };
    let degenerate = present == 0 || (ty.is_numeric() && range == Some(0.0));

    Ok(ColumnStats {
        name: column.to_string(),
        column_type: ty,
        min,
        max,
        range,
        categories,
        missing_count: missing,
        degenerate,
    })
}

/// Stats for every column in schema order.
pub fn all_column_stats(table: &Table) -> Vec<ColumnStats> {
    table
        .schema()
        .columns()
        .iter()
        .map(|c| column_stats(table, &c.name).expect("column exists"))
        .collect()
}
