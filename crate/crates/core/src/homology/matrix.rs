use std::fmt;

/// Sparse integer matrix stored by columns; each column is sorted by row.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.add(i, j, x);
            }
        }
        m
    }

    /// Builds a matrix from column lists; duplicate rows in a column are summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.into_iter().enumerate() {
            for (i, x) in col {
                m.add(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    /// Adds `x` to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, x: i64) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let col = &mut self.columns[j];
        match col.binary_search_by_key(&i, |&(r, _)| r) {
            Ok(pos) => {
                col[pos].1 += x;
                if col[pos].1 == 0 {
                    col.remove(pos);
                }
            }
            Err(pos) if x != 0 => col.insert(pos, (i, x)),
            Err(_) => {}
        }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        let col = &self.columns[j];
        col.binary_search_by_key(&i, |&(r, _)| r)
            .map_or(0, |pos| col[pos].1)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                out[i][j] = x;
            }
        }
        out
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for (j, col) in rhs.columns.iter().enumerate() {
            for &(k, y) in col {
                for &(i, x) in &self.columns[k] {
                    out.add(i, j, x * y);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                out.add(j, i, x);
            }
        }
        out
    }

    /// Keeps the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (new, &old) in rows.iter().enumerate() {
            row_pos[old] = new;
        }
        let columns = cols
            .iter()
            .map(|&j| {
                self.columns[j]
                    .iter()
                    .filter(|&&(i, _)| row_pos[i] != usize::MAX)
                    .map(|&(i, x)| (row_pos[i], x))
                    .collect()
            })
            .collect();
        IntMatrix::from_columns(rows.len(), columns)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{}) ", self.rows, self.cols)?;
        f.debug_list().entries(self.to_dense()).finish()
    }
}
