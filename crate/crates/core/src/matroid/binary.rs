use crate::subset::Subset;

/// A 0/1 matrix over GF(2); each column is packed into a `u64` (bit i = row i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    pub rows: usize,
    pub columns: Vec<u64>,
}

impl Gf2Matrix {
    pub fn from_rows(rows: &[Vec<u8>]) -> Option<Gf2Matrix> {
        let width = rows.first().map_or(0, |r| r.len());
        if rows.len() > 64 || rows.iter().any(|r| r.len() != width) {
            return None;
        }
        let mut columns = vec![0u64; width];
        for (i, row) in rows.iter().enumerate() {
            for (j, &bit) in row.iter().enumerate() {
                match bit {
                    0 => {}
                    1 => columns[j] |= 1 << i,
                    _ => return None,
                }
            }
        }
        Some(Gf2Matrix {
            rows: rows.len(),
            columns,
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| {
                self.columns
                    .iter()
                    .map(|c| (c >> i & 1) as u8)
                    .collect()
            })
            .collect()
    }

    /// Rank of the selected columns by elimination against a pivot table.
    pub fn column_rank(&self, x: Subset) -> usize {
        let mut pivots = [0u64; 64];
        let mut rank = 0;
        for e in x.iter() {
            let mut v = self.columns[e];
            while v != 0 {
                let top = 63 - v.leading_zeros() as usize;
                if pivots[top] == 0 {
                    pivots[top] = v;
                    rank += 1;
                    break;
                }
                v ^= pivots[top];
            }
        }
        rank
    }
}
