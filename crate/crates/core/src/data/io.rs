//! CSV ingestion and emission.
//!
//! One fixed dialect: comma separated, double-quote quoting, UTF-8, header
//! row, no embedded newlines. Empty fields are missing values. When no
//! schema is supplied, column types are inferred: Integer if every
//! non-missing cell parses as an i64, Continuous if every one parses as a
//! finite real, Categorical otherwise.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use super::table::{Cell, ColumnDef, ColumnType, Schema, Table, TableError};
use crate::codec::numfmt;

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("csv parse error: {0}")]
    Parse(#[from] csv::Error),
    #[error("line {line}: expected {want} fields, found {got}")]
    Ragged { line: u64, want: usize, got: usize },
    #[error("file has no header row")]
    MissingHeader,
    #[error("header has {got} columns but schema has {want}")]
    HeaderArity { got: usize, want: usize },
    #[error("header column {index} is `{got}` but schema says `{want}`")]
    HeaderName {
        index: usize,
        got: String,
        want: String,
    },
    #[error("line {line}, column `{column}`: `{value}` does not parse as {expected}")]
    TypeConflict {
        line: u64,
        column: String,
        value: String,
        expected: ColumnType,
    },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("schema json: {0}")]
    SchemaJson(#[from] serde_json::Error),
}

fn parse_int(field: &str) -> Option<i64> {
    field.parse::<i64>().ok()
}

fn parse_real(field: &str) -> Option<f64> {
    field.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Loads a CSV file. With a schema, cells are parsed strictly against the
/// declared types; without one, types are inferred from the data.
pub fn load_csv(path: &Path, schema: Option<Schema>) -> Result<Table, CsvError> {
    let file = File::open(path).map_err(|source| CsvError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(BufReader::new(file));

    let header: Vec<String> = reader
        .headers()
        .map_err(CsvError::Parse)?
        .iter()
        .map(|s| s.to_string())
        .collect();
    if header.is_empty() {
        return Err(CsvError::MissingHeader);
    }

    let mut records: Vec<Vec<String>> = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        // line 1 is the header, data starts on line 2
        let line = i as u64 + 2;
        if rec.len() != header.len() {
            return Err(CsvError::Ragged {
                line,
                want: header.len(),
                got: rec.len(),
            });
        }
        records.push(rec.iter().map(|s| s.to_string()).collect());
    }

    let schema = match schema {
        Some(s) => {
            if s.len() != header.len() {
                return Err(CsvError::HeaderArity {
                    got: header.len(),
                    want: s.len(),
                });
            }
            for (i, col) in s.columns().iter().enumerate() {
                if col.name != header[i] {
                    return Err(CsvError::HeaderName {
                        index: i,
                        got: header[i].clone(),
                        want: col.name.clone(),
                    });
                }
            }
            s
        }
        None => infer_schema(&header, &records)?,
    };

    let mut rows = Vec::with_capacity(records.len());
    for (i, rec) in records.iter().enumerate() {
        let line = i as u64 + 2;
        let mut row = Vec::with_capacity(schema.len());
        for (c, field) in rec.iter().enumerate() {
            let col = &schema.columns()[c];
            row.push(parse_cell(field, col, line)?);
        }
        rows.push(row);
    }
    Ok(Table::new(schema, rows)?)
}

fn parse_cell(field: &str, col: &ColumnDef, line: u64) -> Result<Cell, CsvError> {
    if field.is_empty() {
        return Ok(Cell::Missing);
    }
    match col.column_type {
        ColumnType::Integer => parse_int(field).map(Cell::Int).ok_or_else(|| {
            CsvError::TypeConflict {
                line,
                column: col.name.clone(),
                value: field.to_string(),
                expected: ColumnType::Integer,
            }
        }),
        ColumnType::Continuous => parse_real(field).map(Cell::float).ok_or_else(|| {
            CsvError::TypeConflict {
                line,
                column: col.name.clone(),
                value: field.to_string(),
                expected: ColumnType::Continuous,
            }
        }),
        ColumnType::Categorical => Ok(Cell::Text(field.to_string())),
    }
}

fn infer_schema(header: &[String], records: &[Vec<String>]) -> Result<Schema, CsvError> {
    let mut columns = Vec::with_capacity(header.len());
    for (c, name) in header.iter().enumerate() {
        let mut all_int = true;
        let mut all_real = true;
        for rec in records {
            let field = rec[c].as_str();
            if field.is_empty() {
                continue;
            }
            if all_int && parse_int(field).is_none() {
                all_int = false;
            }
            if all_real && parse_real(field).is_none() {
                all_real = false;
            }
            if !all_int && !all_real {
                break;
            }
        }
        let column_type = if all_int {
            ColumnType::Integer
        } else if all_real {
            ColumnType::Continuous
        } else {
            ColumnType::Categorical
        };
        columns.push(ColumnDef {
            name: name.clone(),
            column_type,
        });
    }
    Ok(Schema::new(columns)?)
}

/// Writes a table in the fixed dialect. Continuous cells use Rust's
/// shortest round-trip float formatting so write-then-read is lossless.
pub fn write_csv(table: &Table, path: &Path) -> Result<(), CsvError> {
    let file = File::create(path).map_err(|source| CsvError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    write_csv_to(table, &mut w)
}

pub fn csv_to_string(table: &Table) -> Result<String, CsvError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write_csv_to(table, &mut w)?;
    let bytes = w.into_inner().expect("vec writer never fails to flush");
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn write_csv_to<W: Write>(table: &Table, w: &mut csv::Writer<W>) -> Result<(), CsvError> {
    let names: Vec<&str> = table.schema().columns().iter().map(|c| c.name.as_str()).collect();
    w.write_record(&names)?;
    for row in table.rows() {
        let fields: Vec<String> = row.iter().map(cell_to_field).collect();
        w.write_record(&fields)?;
    }
    w.flush().map_err(|source| CsvError::Io {
        path: "<writer>".into(),
        source,
    })?;
    Ok(())
}

fn cell_to_field(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) => numfmt::format_roundtrip(*v),
        Cell::Text(s) => s.clone(),
        Cell::Missing => String::new(),
    }
}

/// Reads a schema from its JSON form: {"columns":[{"name","type"}],"target","task"}.
pub fn load_schema_json(path: &Path) -> Result<Schema, CsvError> {
    let file = File::open(path).map_err(|source| CsvError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let schema: Schema = serde_json::from_reader(BufReader::new(file))?;
    schema.validate()?;
    Ok(schema)
}

pub fn schema_to_json(schema: &Schema) -> String {
    serde_json::to_string_pretty(schema).expect("schema serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn infers_integer_and_categorical() {
        let f = write_temp("a,b\n1,x\n2,y\n");
        let t = load_csv(f.path(), None).unwrap();
        assert_eq!(t.schema().columns()[0].column_type, ColumnType::Integer);
        assert_eq!(t.schema().columns()[1].column_type, ColumnType::Categorical);
        assert_eq!(t.cell(0, 0), &Cell::Int(1));
        assert_eq!(t.cell(1, 1), &Cell::Text("y".into()));
    }

    #[test]
    fn real_value_promotes_to_continuous() {
        let f = write_temp("a,b\n1,x\n1.5,x\n");
        let t = load_csv(f.path(), None).unwrap();
        assert_eq!(t.schema().columns()[0].column_type, ColumnType::Continuous);
        assert_eq!(t.cell(0, 0), &Cell::float(1.0));
    }

    #[test]
    fn ragged_row_errors_with_line_number() {
        let f = write_temp("a,b\n1,x\n1,x,z\n");
        let err = load_csv(f.path(), None).unwrap_err();
        match err {
            CsvError::Ragged { line, want, got } => {
                assert_eq!((line, want, got), (3, 2, 3));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn type_conflict_names_the_column() {
        let f = write_temp("a\nx\n");
        let schema = Schema::new(vec![ColumnDef {
            name: "a".into(),
            column_type: ColumnType::Integer,
        }])
        .unwrap();
        let err = load_csv(f.path(), Some(schema)).unwrap_err();
        match err {
            CsvError::TypeConflict { column, line, .. } => {
                assert_eq!(column, "a");
                assert_eq!(line, 2);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn empty_fields_are_missing() {
        let f = write_temp("a,b\n,x\n2,\n");
        let t = load_csv(f.path(), None).unwrap();
        assert!(t.cell(0, 0).is_missing());
        assert!(t.cell(1, 1).is_missing());
        // column a still inferred Integer from its one non-missing cell
        assert_eq!(t.schema().columns()[0].column_type, ColumnType::Integer);
    }

    #[test]
    fn nan_and_inf_strings_stay_categorical() {
        let f = write_temp("a\n1.5\nNaN\n");
        let t = load_csv(f.path(), None).unwrap();
        assert_eq!(t.schema().columns()[0].column_type, ColumnType::Categorical);
    }

    #[test]
    fn write_read_round_trip_exact() {
        let f = write_temp("a,b,c\n1,0.1,x\n-2,1e-7,\"q,uo\"\n3,,z\n");
        let t = load_csv(f.path(), None).unwrap();
        let out = tempfile::NamedTempFile::new().unwrap();
        write_csv(&t, out.path()).unwrap();
        let back = load_csv(out.path(), Some(t.schema().clone())).unwrap();
        assert_eq!(t, back);
    }
}
