//! Seeded train/test splitting.

use thiserror::Error;

use super::table::Table;
use crate::rng::SeededRng;

#[derive(Debug, Error)]
pub enum SplitError {
    #[error("train fraction {0} is outside (0, 1)")]
    FractionOutOfRange(f64),
    #[error("cannot split an empty table")]
    EmptyTable,
}

/// Shuffles row indices with the seed, then takes the first
/// floor(fraction * n) rows as the train partition.
pub fn split(table: &Table, train_fraction: f64, seed: u64) -> Result<(Table, Table), SplitError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(SplitError::FractionOutOfRange(train_fraction));
    }
    let n = table.n_rows();
    if n == 0 {
        return Err(SplitError::EmptyTable);
    }
    let mut indices: Vec<usize> = (0..n).collect();
    SeededRng::from_seed(seed).shuffle(&mut indices);
    let n_train = (train_fraction * n as f64).floor() as usize;
    let train = table.select_rows(&indices[..n_train]);
    let test = table.select_rows(&indices[n_train..]);
    Ok((train, test))
}
