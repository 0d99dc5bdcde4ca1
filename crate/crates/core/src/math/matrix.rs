use matrixmultiply::dgemm;

/// Dense row-major matrix of 64-bit floats.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Build from a row-major buffer. Panics if the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn fill(&mut self, v: f64) {
        self.data.fill(v);
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Cache-blocked transpose into a new matrix.
    pub fn transposed(&self) -> Matrix {
        const BLK: usize = 32;
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i0 in (0..self.rows).step_by(BLK) {
            let i1 = (i0 + BLK).min(self.rows);
            for j0 in (0..self.cols).step_by(BLK) {
                let j1 = (j0 + BLK).min(self.cols);
                for i in i0..i1 {
                    for j in j0..j1 {
                        out.data[j * self.rows + i] = self.data[i * self.cols + j];
                    }
                }
            }
        }
        out
    }

    /// Add `bias` to every row. `bias.len()` must equal `cols`.
    pub fn add_row_broadcast(&mut self, bias: &[f64]) {
        assert_eq!(bias.len(), self.cols);
        for r in 0..self.rows {
            for (x, b) in self.row_mut(r).iter_mut().zip(bias) {
                *x += b;
            }
        }
    }

    /// Accumulate the sum over rows into `out` (length `cols`).
    pub fn add_col_sums_into(&self, out: &mut [f64]) {
        assert_eq!(out.len(), self.cols);
        for r in 0..self.rows {
            for (o, x) in out.iter_mut().zip(self.row(r)) {
                *o += x;
            }
        }
    }
}

/// y += alpha * x
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

#[derive(Clone, Copy)]
struct SendPtr(*const f64);
unsafe impl Send for SendPtr {}
unsafe impl Sync for SendPtr {}

/// (rows of op, cols of op, row stride, col stride) for an operand.
fn op_layout(m: &Matrix, trans: bool) -> (usize, usize, isize, isize) {
    if trans {
        (m.cols, m.rows, 1, m.cols as isize)
    } else {
        (m.rows, m.cols, m.cols as isize, 1)
    }
}

/// C = alpha * op(A) * op(B) + beta * C, with C row-major.
///
/// `workers > 1` splits the output rows across scoped threads; every output
/// element is computed by the same kernel sequence regardless of the split,
/// so results are reproducible for a fixed worker count.
pub fn gemm(
    alpha: f64,
    a: &Matrix,
    trans_a: bool,
    b: &Matrix,
    trans_b: bool,
    beta: f64,
    c: &mut Matrix,
    workers: usize,
) {
    let (m, ka, rsa, csa) = op_layout(a, trans_a);
    let (kb, n, rsb, csb) = op_layout(b, trans_b);
    assert_eq!(ka, kb, "gemm inner dimension mismatch");
    assert_eq!(c.rows, m, "gemm output row mismatch");
    assert_eq!(c.cols, n, "gemm output col mismatch");
    if m == 0 || n == 0 {
        return;
    }
    let k = ka;

    let nw = workers.max(1);
    // Splitting tiny products costs more than it saves.
    if nw == 1 || m < 2 * GEMM_SPLIT_MIN_ROWS {
        unsafe {
            dgemm(
                m,
                k,
                n,
                alpha,
                a.data.as_ptr(),
                rsa,
                csa,
                b.data.as_ptr(),
                rsb,
                csb,
                beta,
                c.data.as_mut_ptr(),
                n as isize,
                1,
            );
        }
        return;
    }

    let chunk_rows = m.div_ceil(nw).max(GEMM_SPLIT_MIN_ROWS);
    let a_ptr = SendPtr(a.data.as_ptr());
    let b_ptr = SendPtr(b.data.as_ptr());
    std::thread::scope(|s| {
        for (ci, c_chunk) in c.data.chunks_mut(chunk_rows * n).enumerate() {
            let r0 = ci * chunk_rows;
            let mr = c_chunk.len() / n;
            s.spawn(move || {
                let a_ptr = a_ptr;
                let b_ptr = b_ptr;
                unsafe {
                    dgemm(
                        mr,
                        k,
                        n,
                        alpha,
                        a_ptr.0.offset(r0 as isize * rsa),
                        rsa,
                        csa,
                        b_ptr.0,
                        rsb,
                        csb,
                        beta,
                        c_chunk.as_mut_ptr(),
                        n as isize,
                        1,
                    );
                }
            });
        }
    });
}

const GEMM_SPLIT_MIN_ROWS: usize = 64;

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn naive_gemm(
        alpha: f64,
        a: &Matrix,
        ta: bool,
        b: &Matrix,
        tb: bool,
        beta: f64,
        c: &Matrix,
    ) -> Matrix {
        let (m, k, _, _) = op_layout(a, ta);
        let (_, n, _, _) = op_layout(b, tb);
        let mut out = c.clone();
        for i in 0..m {
            for j in 0..n {
                let mut acc = 0.0;
                for l in 0..k {
                    let av = if ta { a.get(l, i) } else { a.get(i, l) };
                    let bv = if tb { b.get(j, l) } else { b.get(l, j) };
                    acc += av * bv;
                }
                out.set(i, j, alpha * acc + beta * c.get(i, j));
            }
        }
        out
    }

    fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let data = (0..rows * cols).map(|_| rng.random_range(-1.0..1.0)).collect();
        Matrix::from_vec(rows, cols, data)
    }

    #[test]
    fn gemm_matches_naive_all_transpose_combos() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(m, k, n) in &[(3usize, 4usize, 5usize), (7, 2, 9), (1, 1, 1)] {
            for &ta in &[false, true] {
                for &tb in &[false, true] {
                    let a = if ta {
                        random_matrix(k, m, &mut rng)
                    } else {
                        random_matrix(m, k, &mut rng)
                    };
                    let b = if tb {
                        random_matrix(n, k, &mut rng)
                    } else {
                        random_matrix(k, n, &mut rng)
                    };
                    let c0 = random_matrix(m, n, &mut rng);
                    let expect = naive_gemm(0.5, &a, ta, &b, tb, 0.25, &c0);
                    let mut c = c0.clone();
                    gemm(0.5, &a, ta, &b, tb, 0.25, &mut c, 1);
                    for i in 0..m {
                        for j in 0..n {
                            assert!(
                                (c.get(i, j) - expect.get(i, j)).abs() < 1e-12,
                                "mismatch at ({i},{j}) ta={ta} tb={tb}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gemm_row_split_matches_single_worker() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_matrix(301, 17, &mut rng);
        let b = random_matrix(17, 23, &mut rng);
        let mut c1 = Matrix::zeros(301, 23);
        let mut c3 = Matrix::zeros(301, 23);
        gemm(1.0, &a, false, &b, false, 0.0, &mut c1, 1);
        gemm(1.0, &a, false, &b, false, 0.0, &mut c3, 3);
        assert_eq!(c1.data(), c3.data());
    }

    #[test]
    fn transpose_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(37, 65, &mut rng);
        let t = a.transposed();
        assert_eq!(t.rows(), 65);
        assert_eq!(t.cols(), 37);
        assert_eq!(t.transposed(), a);
        assert_eq!(t.get(5, 7), a.get(7, 5));
    }

    #[test]
    fn broadcast_and_col_sums() {
        let mut m = Matrix::from_vec(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        m.add_row_broadcast(&[10.0, 20.0, 30.0]);
        assert_eq!(m.row(1), &[14.0, 25.0, 36.0]);
        let mut sums = vec![0.0; 3];
        m.add_col_sums_into(&mut sums);
        assert_eq!(sums, vec![25.0, 47.0, 69.0]);
    }
}
