use num_complex::Complex64;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend(r);
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn set_row(&mut self, i: usize, values: &[Complex64]) {
        self.data[i * self.n..(i + 1) * self.n].copy_from_slice(values);
    }

    /// Euclidean norm of each row.
    pub fn row_norms(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
            .collect()
    }

    /// Product of the row norms, Hadamard's bound on `|det|`.
    pub fn hadamard_bound(&self) -> f64 {
        self.row_norms().iter().product()
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i * n + col].norm().total_cmp(&a[j * n + col].norm()))
                .unwrap();
            let p = a[pivot * n + col];
            if p == Complex64::new(0.0, 0.0) {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            det *= p;
            for i in col + 1..n {
                let factor = a[i * n + col] / p;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in col + 1..n {
                    let v = a[col * n + k];
                    a[i * n + k] -= factor * v;
                }
            }
        }
        det
    }
}
