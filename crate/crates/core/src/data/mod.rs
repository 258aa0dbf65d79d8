//! Tabular data model: typed tables, CSV I/O, splitting, column statistics.

pub mod io;
pub mod split;
pub mod stats;
pub mod table;

pub use io::{csv_to_string, load_csv, load_schema_json, schema_to_json, write_csv, CsvError};
pub use split::{split, SplitError};
pub use stats::{all_column_stats, column_stats, ColumnStats};
pub use table::{Cell, CellKey, ColumnDef, ColumnType, Row, Schema, Table, TableError, Task};
