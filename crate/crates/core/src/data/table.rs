//! Typed tabular data model.
//!
//! A [`Table`] is an immutable, schema-validated grid of cells. Columns are
//! continuous, integer, or categorical; integers are stored exactly so text
//! round trips never lose them, and missing cells are first-class.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnType {
    Continuous,
    Integer,
    Categorical,
}

impl ColumnType {
    pub fn is_numeric(self) -> bool {
        matches!(self, ColumnType::Continuous | ColumnType::Integer)
    }
}

impl std::fmt::Display for ColumnType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColumnType::Continuous => write!(f, "continuous"),
            ColumnType::Integer => write!(f, "integer"),
            ColumnType::Categorical => write!(f, "categorical"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Classification,
    Regression,
    #[default]
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnDef {
    pub name: String,
    #[serde(rename = "type")]
    pub column_type: ColumnType,
}

/// Ordered column definitions plus optional prediction target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schema {
    columns: Vec<ColumnDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<String>,
    #[serde(default)]
    task: Task,
}

impl Schema {
    pub fn new(columns: Vec<ColumnDef>) -> Result<Self, TableError> {
        Self::with_target(columns, None, Task::None)
    }

    pub fn with_target(
        columns: Vec<ColumnDef>,
        target: Option<String>,
        task: Task,
    ) -> Result<Self, TableError> {
        if columns.is_empty() {
            return Err(TableError::EmptySchema);
        }
        for (i, c) in columns.iter().enumerate() {
            if c.name.is_empty() {
                return Err(TableError::EmptyColumnName { index: i });
            }
            if columns[..i].iter().any(|p| p.name == c.name) {
                return Err(TableError::DuplicateColumn {
                    name: c.name.clone(),
                });
            }
        }
        if let Some(t) = &target {
            if !columns.iter().any(|c| &c.name == t) {
                return Err(TableError::UnknownColumn { name: t.clone() });
            }
        }
        Ok(Self {
            columns,
            target,
            task,
        })
    }

    pub fn columns(&self) -> &[ColumnDef] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn target(&self) -> Option<&str> {
        self.target.as_deref()
    }

    pub fn task(&self) -> Task {
        self.task
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn column_type(&self, name: &str) -> Option<ColumnType> {
        self.column_index(name).map(|i| self.columns[i].column_type)
    }

    /// Re-validates a deserialized schema (serde bypasses the constructor).
    pub fn validate(&self) -> Result<(), TableError> {
        Self::with_target(self.columns.clone(), self.target.clone(), self.task).map(|_| ())
    }
}

/// One table cell. Integer cells keep exact i64 values; continuous cells
/// normalize -0.0 to 0.0 so value hashing is consistent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Missing,
}

impl Cell {
    pub fn float(v: f64) -> Self {
        debug_assert!(v.is_finite(), "table cells must be finite");
        Cell::Float(if v == 0.0 { 0.0 } else { v })
    }

    pub fn is_missing(&self) -> bool {
        matches!(self, Cell::Missing)
    }

    /// Numeric view shared by metrics; integers widen to f64.
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Float(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Cell::Text(s) => Some(s),
            _ => None,
        }
    }

    /// Hashable identity used for grouping rows by value.
    pub fn key(&self) -> CellKey<'_> {
        match self {
            Cell::Int(v) => CellKey::Int(*v),
            Cell::Float(v) => CellKey::Bits(v.to_bits()),
            Cell::Text(s) => CellKey::Text(s),
            Cell::Missing => CellKey::Missing,
        }
    }

    fn matches(&self, ty: ColumnType) -> bool {
        match (self, ty) {
            (Cell::Missing, _) => true,
            (Cell::Int(_), ColumnType::Integer) => true,
            (Cell::Float(_), ColumnType::Continuous) => true,
            (Cell::Text(_), ColumnType::Categorical) => true,
            _ => false,
        }
    }
}

/// Borrowed, hash/ord-friendly projection of a cell value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellKey<'a> {
    Int(i64),
    Bits(u64),
    Text(&'a str),
    Missing,
}

pub type Row = Vec<Cell>;

/// Immutable table; construction validates every row against the schema.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    schema: Schema,
    rows: Vec<Row>,
}

impl Table {
    pub fn new(schema: Schema, rows: Vec<Row>) -> Result<Self, TableError> {
        for (r, row) in rows.iter().enumerate() {
            if row.len() != schema.len() {
                return Err(TableError::RowArity {
                    row: r,
                    got: row.len(),
                    want: schema.len(),
                });
            }
            for (c, cell) in row.iter().enumerate() {
                let ty = schema.columns()[c].column_type;
                if !cell.matches(ty) {
                    return Err(TableError::CellType {
                        row: r,
                        column: schema.columns()[c].name.clone(),
                        expected: ty,
                    });
                }
            }
        }
        Ok(Self { schema, rows })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.schema.len()
    }

    pub fn cell(&self, row: usize, col: usize) -> &Cell {
        &self.rows[row][col]
    }

    pub fn column_cells(&self, col: usize) -> impl Iterator<Item = &Cell> {
        self.rows.iter().map(move |r| &r[col])
    }

    /// New table with the same schema and the given subset of row indices.
    pub fn select_rows(&self, indices: &[usize]) -> Table {
        Table {
            schema: self.schema.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("schema has no columns")]
    EmptySchema,
    #[error("column {index} has an empty name")]
    EmptyColumnName { index: usize },
    #[error("duplicate column name `{name}`")]
    DuplicateColumn { name: String },
    #[error("unknown column `{name}`")]
    UnknownColumn { name: String },
    #[error("row {row} has {got} cells, schema has {want} columns")]
    RowArity { row: usize, got: usize, want: usize },
    #[error("row {row}, column `{column}`: cell does not match {expected} type")]
    CellType {
        row: usize,
        column: String,
        expected: ColumnType,
    },
}
