//! Small dense complex matrices.
//!
//! Everything in scope lives on at most a dozen qubits, so a flat row-major
//! `Vec<Complex64>` with straightforward O(n^3) kernels is plenty. The
//! Hermitian eigensolver is a cyclic Jacobi sweep; it only ever sees
//! matrices of dimension <= 64 (Choi matrices and density-matrix checks).

use num_complex::Complex64;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= *b;
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> CMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= factor;
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvectors as columns,
/// sorted by descending eigenvalue.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut v = CMatrix::identity(n);

    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.norm() < 1e-300 {
                    continue;
                }
                // Unitary 2x2 rotation diagonalizing the (p,q) block:
                // first strip the phase of a_pq, then a real Jacobi rotation.
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let abs = apq.norm();
                let phase = apq / Complex64::new(abs, 0.0);
                let theta = 0.5 * (2.0 * abs).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                let cp = Complex64::new(c, 0.0);
                let sp = phase * Complex64::new(s, 0.0);
                // Columns rotate: col_p' = c*col_p + s*phase*col_q,
                // col_q' = -s*conj(phase)*col_p ... applied as A <- U^H A U.
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * cp + aiq * sp.conj();
                    a[(i, q)] = -aip * sp + aiq * cp;
                }
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * cp + aqj * sp;
                    a[(q, j)] = -apj * sp.conj() + aqj * cp;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * cp + viq * sp.conj();
                    v[(i, q)] = -vip * sp + viq * cp;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let evals: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| evals[j].partial_cmp(&evals[i]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&i| evals[i]).collect();
    let mut sorted_vecs = CMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            sorted_vecs[(i, new_col)] = v[(i, old_col)];
        }
    }
    (sorted_vals, sorted_vecs)
}

/// Fock-space ladder operators acting on a state vector over occupation
/// bitstrings (mode 0 is the least significant bit). The fermionic sign is
/// (-1)^(number of occupied modes below the target), matching the
/// Jordan-Wigner ordering convention.
pub fn apply_ladder(state: &[Complex64], mode: usize, dagger: bool) -> Vec<Complex64> {
    let dim = state.len();
    let mut out = vec![ZERO; dim];
    let bit = 1u64 << mode;
    let below = bit - 1;
    for (idx, &amp) in state.iter().enumerate() {
        if amp == ZERO {
            continue;
        }
        let occ = idx as u64;
        let occupied = occ & bit != 0;
        if dagger == occupied {
            continue;
        }
        let sign = if (occ & below).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        let target = (occ ^ bit) as usize;
        out[target] += amp * Complex64::new(sign, 0.0);
    }
    out
}

/// Dense matrix of a product of ladder operators on `n_modes` modes,
/// built column by column from `apply_ladder`.
pub fn ladder_product_matrix(
    n_modes: usize,
    factors: &[(usize, bool)],
    coeff: Complex64,
) -> CMatrix {
    let dim = 1usize << n_modes;
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut v = vec![ZERO; dim];
        v[col] = ONE;
        // factors are written left-to-right as an operator product, so the
        // rightmost factor acts first.
        for &(mode, dagger) in factors.iter().rev() {
            v = apply_ladder(&v, mode, dagger);
        }
        for row in 0..dim {
            if v[row] != ZERO {
                m[(row, col)] = coeff * v[row];
            }
        }
    }
    m
}
