use super::Matroid;
use crate::bitset::{ElementSet, MAX_BITS};
use crate::error::{Error, Result};

/// Rank over GF(2) of a list of bit-vectors.
///
/// Keeps one basis vector per leading bit; each incoming vector is reduced by
/// the basis vectors whose leading bit it contains.
pub fn gf2_rank(vectors: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if basis[lead] == 0 {
                basis[lead] = v;
                rank += 1;
                break;
            }
            v ^= basis[lead];
        }
    }
    rank
}

/// Vector matroid over GF(2). Column `i` is element `i`; bit `j` of a column
/// is the entry in row `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2 {
    rows: usize,
    columns: Vec<u64>,
}

impl Gf2 {
    pub fn new(rows: usize, columns: Vec<u64>) -> Result<Self> {
        if rows > 64 {
            return Err(Error::invalid(format!("{rows} rows exceed the supported 64")));
        }
        if columns.len() > MAX_BITS {
            return Err(Error::invalid(format!(
                "{} columns exceed the supported 64",
                columns.len()
            )));
        }
        let limit = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
        if let Some(c) = columns.iter().find(|&&c| c & !limit != 0) {
            return Err(Error::invalid(format!("column {c:#b} has bits beyond row {rows}")));
        }
        Ok(Gf2 { rows, columns })
    }

    /// Columns written as bit strings, most significant character = row 0.
    pub fn from_bitstrings<S: AsRef<str>>(rows: usize, columns: &[S]) -> Result<Self> {
        let cols = columns
            .iter()
            .map(|s| parse_bitstring(s.as_ref(), rows))
            .collect::<Result<Vec<_>>>()?;
        Gf2::new(rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    /// Column `i` as a bit string with row 0 first.
    pub fn column_string(&self, i: usize) -> String {
        (0..self.rows)
            .map(|row| if self.columns[i] >> row & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

pub(crate) fn parse_bitstring(s: &str, rows: usize) -> Result<u64> {
    if s.len() != rows {
        return Err(Error::invalid(format!(
            "bit string {s:?} has length {} but there are {rows} rows",
            s.len()
        )));
    }
    s.chars().enumerate().try_fold(0u64, |acc, (row, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << row),
        other => Err(Error::invalid(format!("unexpected character {other:?} in bit string"))),
    })
}

impl Matroid for Gf2 {
    fn len(&self) -> usize {
        self.columns.len()
    }

    fn rank_unchecked(&self, set: ElementSet) -> usize {
        gf2_rank(set.iter().map(|i| self.columns[i]))
    }

    fn describe(&self) -> String {
        format!("gf2(rows={}, columns={})", self.rows, self.columns.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Row reduction on explicit 0/1 matrices, written independently of the
    /// leading-bit basis used by `gf2_rank`.
    fn dense_rank(rows: usize, cols: &[u64]) -> usize {
        let mut m: Vec<Vec<u8>> = (0..rows)
            .map(|r| cols.iter().map(|c| (c >> r & 1) as u8).collect())
            .collect();
        let mut rank = 0;
        for col in 0..cols.len() {
            if let Some(p) = (rank..rows).find(|&r| m[r][col] == 1) {
                m.swap(rank, p);
                for r in 0..rows {
                    if r != rank && m[r][col] == 1 {
                        let pivot = m[rank].clone();
                        for (x, y) in m[r].iter_mut().zip(pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn bitstring_row_order() {
        let m = Gf2::from_bitstrings(3, &["100", "011"]).unwrap();
        assert_eq!(m.columns(), &[0b001, 0b110]);
        assert_eq!(m.column_string(1), "011");
        assert!(Gf2::from_bitstrings(2, &["101"]).is_err());
    }

    #[test]
    fn three_columns_rank_two() {
        let m = Gf2::from_bitstrings(2, &["10", "01", "11"]).unwrap();
        assert_eq!(m.full_rank(), dense_rank(2, m.columns()));
        assert_eq!(m.full_rank(), 2);
    }

    proptest! {
        #[test]
        fn elimination_matches_dense_reduction(cols in proptest::collection::vec(0u64..64, 0..8)) {
            prop_assert_eq!(gf2_rank(cols.iter().copied()), dense_rank(6, &cols));
        }
    }
}
