//! Stripped partitions: the workhorse of level-wise dependency discovery.
//!
//! A stripped partition groups row indices by equal cell tuples over a
//! column set and drops singleton classes. Its error measure
//! e = sum(|class| - 1) counts the rows that must be removed to make the
//! column set a key; X -> A holds exactly when e(X) = e(X + A).

use std::collections::HashMap;

use thiserror::Error;

use crate::data::table::{Table, TableError};

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("partitions cover different row counts: {0} vs {1}")]
    RowCountMismatch(usize, usize),
}

/// Equivalence classes of size >= 2, canonically ordered: rows ascending
/// within a class, classes ordered by their smallest row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrippedPartition {
    classes: Vec<Vec<usize>>,
    row_count: usize,
}

impl StrippedPartition {
    fn from_classes(mut classes: Vec<Vec<usize>>, row_count: usize) -> Self {
        classes.retain(|c| c.len() >= 2);
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.sort_unstable_by_key(|c| c[0]);
        Self { classes, row_count }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn row_count(&self) -> usize {
        self.row_count
    }

    /// e(pi) = sum over classes of (|c| - 1).
    pub fn error(&self) -> usize {
        self.classes.iter().map(|c| c.len() - 1).sum()
    }

    /// A column set is a (super)key iff no two rows agree on it.
    pub fn is_key(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Groups rows by their values over `columns`. The empty column set yields a
/// single class holding every row (stripped away only for 1-row tables).
pub fn compute_partition(table: &Table, columns: &[String]) -> Result<StrippedPartition, PartitionError> {
    let n = table.n_rows();
    let mut idxs = Vec::with_capacity(columns.len());
    for c in columns {
        let i = table
            .schema()
            .column_index(c)
            .ok_or_else(|| TableError::UnknownColumn { name: c.clone() })?;
        idxs.push(i);
    }
    if idxs.is_empty() {
        let all: Vec<usize> = (0..n).collect();
        return Ok(StrippedPartition::from_classes(vec![all], n));
    }
    let mut groups: HashMap<Vec<crate::data::CellKey<'_>>, Vec<usize>> = HashMap::new();
    for r in 0..n {
        let key: Vec<_> = idxs.iter().map(|&c| table.cell(r, c).key()).collect();
        groups.entry(key).or_default().push(r);
    }
    Ok(StrippedPartition::from_classes(
        groups.into_values().collect(),
        n,
    ))
}

/// Partition product: pi_{X u Y} from pi_X and pi_Y by the probe-table
/// intersection. Equals `compute_partition` over the united column sets.
pub fn refine(p: &StrippedPartition, q: &StrippedPartition) -> Result<StrippedPartition, PartitionError> {
    if p.row_count != q.row_count {
        return Err(PartitionError::RowCountMismatch(p.row_count, q.row_count));
    }
    let n = p.row_count;
    // probe[r] = which class of p row r falls into (singletons get none)
    let mut probe: Vec<Option<usize>> = vec![None; n];
    for (ci, class) in p.classes.iter().enumerate() {
        for &r in class {
            probe[r] = Some(ci);
        }
    }
    let mut classes = Vec::new();
    let mut buckets: HashMap<usize, Vec<usize>> = HashMap::new();
    for class in &q.classes {
        buckets.clear();
        for &r in class {
            if let Some(ci) = probe[r] {
                buckets.entry(ci).or_default().push(r);
            }
        }
        for (_, rows) in buckets.drain() {
            if rows.len() >= 2 {
                classes.push(rows);
            }
        }
    }
    Ok(StrippedPartition::from_classes(classes, n))
}

/// X -> A test with an error tolerance. The relative error is
/// (e(pi_X) - e(pi_{X+A})) / row_count; zero means the FD holds exactly.
pub fn fd_holds_approx(
    table: &Table,
    lhs: &[String],
    rhs: &str,
    threshold: f64,
) -> Result<bool, PartitionError> {
    assert!(
        !lhs.iter().any(|c| c == rhs),
        "rhs must not appear in lhs"
    );
    let p_lhs = compute_partition(table, lhs)?;
    let mut united: Vec<String> = lhs.to_vec();
    united.push(rhs.to_string());
    let p_all = compute_partition(table, &united)?;
    let n = table.n_rows().max(1);
    let err = (p_lhs.error() as f64 - p_all.error() as f64) / n as f64;
    Ok(err <= threshold)
}

/// Exact X -> A test: every lhs-equivalence class is constant on rhs.
pub fn fd_holds(table: &Table, lhs: &[String], rhs: &str) -> Result<bool, PartitionError> {
    fd_holds_approx(table, lhs, rhs, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::table::{Cell, ColumnDef, ColumnType, Schema};

    pub(crate) fn text_table(cols: &[&str], rows: &[&[&str]]) -> Table {
        let schema = Schema::new(
            cols.iter()
                .map(|n| ColumnDef {
                    name: n.to_string(),
                    column_type: ColumnType::Categorical,
                })
                .collect(),
        )
        .unwrap();
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|v| Cell::Text(v.to_string())).collect())
            .collect();
        Table::new(schema, rows).unwrap()
    }

    #[test]
    fn groups_and_strips_singletons() {
        let t = text_table(&["A"], &[&["a"], &["a"], &["b"]]);
        let p = compute_partition(&t, &["A".into()]).unwrap();
        assert_eq!(p.classes(), &[vec![0, 1]]);
        assert_eq!(p.error(), 1);
    }

    #[test]
    fn two_column_grouping() {
        let t = text_table(
            &["A", "B"],
            &[&["a", "x"], &["a", "y"], &["a", "x"]],
        );
        let p = compute_partition(&t, &["A".into(), "B".into()]).unwrap();
        assert_eq!(p.classes(), &[vec![0, 2]]);
        assert_eq!(p.error(), 1);
    }

    #[test]
    fn all_distinct_is_key() {
        let t = text_table(&["A"], &[&["a"], &["b"], &["c"]]);
        let p = compute_partition(&t, &["A".into()]).unwrap();
        assert!(p.is_key());
        assert_eq!(p.error(), 0);
    }

    #[test]
    fn empty_column_set_is_one_class() {
        let t = text_table(&["A"], &[&["a"], &["b"], &["c"]]);
        let p = compute_partition(&t, &[]).unwrap();
        assert_eq!(p.classes(), &[vec![0, 1, 2]]);
        assert_eq!(p.error(), 2);
    }

    #[test]
    fn refine_is_idempotent() {
        let t = text_table(&["A"], &[&["a"], &["a"], &["b"], &["b"], &["b"]]);
        let p = compute_partition(&t, &["A".into()]).unwrap();
        assert_eq!(refine(&p, &p).unwrap(), p);
    }

    #[test]
    fn refine_with_all_rows_partition_is_identity() {
        let t = text_table(&["A", "B"], &[&["a", "x"], &["a", "y"], &["b", "x"]]);
        let p = compute_partition(&t, &["A".into()]).unwrap();
        let top = compute_partition(&t, &[]).unwrap();
        assert_eq!(refine(&p, &top).unwrap(), p);
        assert_eq!(refine(&top, &p).unwrap(), p);
    }

    #[test]
    fn refine_matches_direct_recomputation() {
        use crate::rng::SeededRng;
        let mut rng = SeededRng::from_seed(20);
        let values = ["p", "q", "r"];
        let rows: Vec<Vec<&str>> = (0..20)
            .map(|_| vec![values[rng.below(3)], values[rng.below(3)]])
            .collect();
        let row_refs: Vec<&[&str]> = rows.iter().map(|r| r.as_slice()).collect();
        let t = text_table(&["A", "B"], &row_refs);
        let pa = compute_partition(&t, &["A".into()]).unwrap();
        let pb = compute_partition(&t, &["B".into()]).unwrap();
        let direct = compute_partition(&t, &["A".into(), "B".into()]).unwrap();
        assert_eq!(refine(&pa, &pb).unwrap(), direct);
        assert_eq!(refine(&pb, &pa).unwrap(), direct);
    }

    #[test]
    fn fd_holds_basic() {
        let t = text_table(&["A", "B"], &[&["a", "1"], &["a", "1"], &["b", "2"]]);
        assert!(fd_holds(&t, &["A".into()], "B").unwrap());
        let t2 = text_table(&["A", "B"], &[&["a", "1"], &["a", "2"]]);
        assert!(!fd_holds(&t2, &["A".into()], "B").unwrap());
    }

    #[test]
    fn empty_lhs_holds_iff_constant() {
        let constant = text_table(&["A"], &[&["k"], &["k"]]);
        assert!(fd_holds(&constant, &[], "A").unwrap());
        let varied = text_table(&["A"], &[&["k"], &["m"]]);
        assert!(!fd_holds(&varied, &[], "A").unwrap());
    }
}
