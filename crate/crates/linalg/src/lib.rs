//! Column-major dense matrices backed by the system BLAS/LAPACK.
//!
//! Only the routines the SDP solver and the diagonalization helpers need are
//! wrapped; everything stays `f64` (or `Complex64` for the Hermitian eigen
//! path). All matrices are column-major to match the Fortran calling
//! convention, so no transposition happens at the FFI boundary.

use num_complex::Complex64;

mod ffi {
    use num_complex::Complex64;

    extern "C" {
        pub fn dgemm_(
            transa: *const u8,
            transb: *const u8,
            m: *const i32,
            n: *const i32,
            k: *const i32,
            alpha: *const f64,
            a: *const f64,
            lda: *const i32,
            b: *const f64,
            ldb: *const i32,
            beta: *const f64,
            c: *mut f64,
            ldc: *const i32,
        );
        pub fn dsyrk_(
            uplo: *const u8,
            trans: *const u8,
            n: *const i32,
            k: *const i32,
            alpha: *const f64,
            a: *const f64,
            lda: *const i32,
            beta: *const f64,
            c: *mut f64,
            ldc: *const i32,
        );
        pub fn dtrsm_(
            side: *const u8,
            uplo: *const u8,
            transa: *const u8,
            diag: *const u8,
            m: *const i32,
            n: *const i32,
            alpha: *const f64,
            a: *const f64,
            lda: *const i32,
            b: *mut f64,
            ldb: *const i32,
        );
        pub fn dpotrf_(uplo: *const u8, n: *const i32, a: *mut f64, lda: *const i32, info: *mut i32);
        pub fn dpotrs_(
            uplo: *const u8,
            n: *const i32,
            nrhs: *const i32,
            a: *const f64,
            lda: *const i32,
            b: *mut f64,
            ldb: *const i32,
            info: *mut i32,
        );
        pub fn dsyev_(
            jobz: *const u8,
            uplo: *const u8,
            n: *const i32,
            a: *mut f64,
            lda: *const i32,
            w: *mut f64,
            work: *mut f64,
            lwork: *const i32,
            info: *mut i32,
        );
        pub fn dgesdd_(
            jobz: *const u8,
            m: *const i32,
            n: *const i32,
            a: *mut f64,
            lda: *const i32,
            s: *mut f64,
            u: *mut f64,
            ldu: *const i32,
            vt: *mut f64,
            ldvt: *const i32,
            work: *mut f64,
            lwork: *const i32,
            iwork: *mut i32,
            info: *mut i32,
        );
        pub fn dgetrf_(
            m: *const i32,
            n: *const i32,
            a: *mut f64,
            lda: *const i32,
            ipiv: *mut i32,
            info: *mut i32,
        );
        pub fn dgetrs_(
            trans: *const u8,
            n: *const i32,
            nrhs: *const i32,
            a: *const f64,
            lda: *const i32,
            ipiv: *const i32,
            b: *mut f64,
            ldb: *const i32,
            info: *mut i32,
        );
        pub fn zheev_(
            jobz: *const u8,
            uplo: *const u8,
            n: *const i32,
            a: *mut Complex64,
            lda: *const i32,
            w: *mut f64,
            work: *mut Complex64,
            lwork: *const i32,
            rwork: *mut f64,
            info: *mut i32,
        );
        pub fn zgemm_(
            transa: *const u8,
            transb: *const u8,
            m: *const i32,
            n: *const i32,
            k: *const i32,
            alpha: *const Complex64,
            a: *const Complex64,
            lda: *const i32,
            b: *const Complex64,
            ldb: *const i32,
            beta: *const Complex64,
            c: *mut Complex64,
            ldc: *const i32,
        );
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinalgError {
    /// Leading minor of this order is not positive definite.
    NotPositiveDefinite(usize),
    /// An iterative LAPACK routine failed to converge.
    NoConvergence,
    /// Exactly singular pivot in an LU factorization.
    Singular(usize),
}

impl std::fmt::Display for LinalgError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LinalgError::NotPositiveDefinite(k) => {
                write!(f, "matrix not positive definite (minor {k})")
            }
            LinalgError::NoConvergence => write!(f, "eigen/SVD iteration did not converge"),
            LinalgError::Singular(k) => write!(f, "singular factor (pivot {k})"),
        }
    }
}

impl std::error::Error for LinalgError {}

/// Dense column-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn eye(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m[(i, j)] = f(i, j);
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

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Column slice, useful for BLAS-free inner loops.
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for i in 0..self.rows {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&mut self, s: f64) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn add_scaled(&mut self, s: f64, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    /// Frobenius inner product `<self, other>`.
    pub fn dot(&self, other: &Mat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn norm_fro(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Replaces the matrix by `(M + M^T)/2`; square matrices only.
    pub fn symmetrize(&mut self) {
        assert_eq!(self.rows, self.cols);
        for j in 0..self.cols {
            for i in 0..j {
                let v = 0.5 * (self[(i, j)] + self[(j, i)]);
                self[(i, j)] = v;
                self[(j, i)] = v;
            }
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    fn dim_i32(&self) -> (i32, i32) {
        (self.rows as i32, self.cols as i32)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

/// `c = alpha * op(a) * op(b) + beta * c`.
pub fn gemm(alpha: f64, a: &Mat, ta: bool, b: &Mat, tb: bool, beta: f64, c: &mut Mat) {
    let (am, ak) = if ta { (a.cols, a.rows) } else { (a.rows, a.cols) };
    let (bk, bn) = if tb { (b.cols, b.rows) } else { (b.rows, b.cols) };
    assert_eq!(ak, bk, "inner dimensions");
    assert_eq!((c.rows, c.cols), (am, bn), "output dimensions");
    if am == 0 || bn == 0 {
        return;
    }
    if ak == 0 {
        c.scale(beta);
        return;
    }
    let (m, n, k) = (am as i32, bn as i32, ak as i32);
    let (lda, _) = a.dim_i32();
    let (ldb, _) = b.dim_i32();
    let (ldc, _) = c.dim_i32();
    unsafe {
        ffi::dgemm_(
            if ta { b"T" } else { b"N" }.as_ptr(),
            if tb { b"T" } else { b"N" }.as_ptr(),
            &m,
            &n,
            &k,
            &alpha,
            a.data.as_ptr(),
            &lda,
            b.data.as_ptr(),
            &ldb,
            &beta,
            c.data.as_mut_ptr(),
            &ldc,
        );
    }
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let mut c = Mat::zeros(a.rows, b.cols);
    gemm(1.0, a, false, b, false, 0.0, &mut c);
    c
}

/// Rank-k update on the *full* symmetric matrix: `c = alpha * op(a) op(a)^T + beta * c`,
/// computed in the lower triangle and mirrored.
pub fn syrk(alpha: f64, a: &Mat, trans: bool, beta: f64, c: &mut Mat) {
    let (n, k) = if trans { (a.cols, a.rows) } else { (a.rows, a.cols) };
    assert_eq!((c.rows, c.cols), (n, n));
    if n == 0 {
        return;
    }
    let (ni, ki) = (n as i32, k as i32);
    let (lda, _) = a.dim_i32();
    let (ldc, _) = c.dim_i32();
    unsafe {
        ffi::dsyrk_(
            b"L".as_ptr(),
            if trans { b"T" } else { b"N" }.as_ptr(),
            &ni,
            &ki,
            &alpha,
            a.data.as_ptr(),
            &lda,
            &beta,
            c.data.as_mut_ptr(),
            &ldc,
        );
    }
    for j in 0..n {
        for i in 0..j {
            c[(i, j)] = c[(j, i)];
        }
    }
}

/// In-place lower Cholesky factor; the strict upper triangle is zeroed.
pub fn cholesky(a: &mut Mat) -> Result<(), LinalgError> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows as i32;
    let mut info = 0;
    unsafe { ffi::dpotrf_(b"L".as_ptr(), &n, a.data.as_mut_ptr(), &n, &mut info) };
    if info > 0 {
        return Err(LinalgError::NotPositiveDefinite(info as usize));
    }
    for j in 1..a.cols {
        for i in 0..j {
            a[(i, j)] = 0.0;
        }
    }
    Ok(())
}

/// Solves `A x = b` given the lower Cholesky factor of `A`; `b` holds columns of rhs.
pub fn cholesky_solve(l: &Mat, b: &mut Mat) {
    assert_eq!(l.rows, l.cols);
    assert_eq!(l.rows, b.rows);
    let n = l.rows as i32;
    let nrhs = b.cols as i32;
    let ldb = b.rows as i32;
    let mut info = 0;
    unsafe {
        ffi::dpotrs_(b"L".as_ptr(), &n, &nrhs, l.data.as_ptr(), &n, b.data.as_mut_ptr(), &ldb, &mut info)
    };
    debug_assert_eq!(info, 0);
}

/// Solves `op(L) X = alpha B` in place for lower-triangular `l`.
pub fn solve_triangular(l: &Mat, trans: bool, alpha: f64, b: &mut Mat) {
    assert_eq!(l.rows, l.cols);
    assert_eq!(l.rows, b.rows);
    let m = b.rows as i32;
    let n = b.cols as i32;
    let lda = l.rows as i32;
    let ldb = b.rows as i32;
    unsafe {
        ffi::dtrsm_(
            b"L".as_ptr(),
            b"L".as_ptr(),
            if trans { b"T" } else { b"N" }.as_ptr(),
            b"N".as_ptr(),
            &m,
            &n,
            &alpha,
            l.data.as_ptr(),
            &lda,
            b.data.as_mut_ptr(),
            &ldb,
        );
    }
}

/// Eigendecomposition of a symmetric matrix: ascending eigenvalues and the
/// orthonormal eigenvectors as columns.
pub fn eigh(a: &Mat) -> Result<(Vec<f64>, Mat), LinalgError> {
    let (w, v) = eigh_impl(a, true)?;
    Ok((w, v.expect("vectors requested")))
}

pub fn eigvalsh(a: &Mat) -> Result<Vec<f64>, LinalgError> {
    Ok(eigh_impl(a, false)?.0)
}

fn eigh_impl(a: &Mat, vectors: bool) -> Result<(Vec<f64>, Option<Mat>), LinalgError> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut work_a = a.clone();
    let mut w = vec![0.0; n];
    if n == 0 {
        return Ok((w, if vectors { Some(work_a) } else { None }));
    }
    let ni = n as i32;
    let jobz = if vectors { b"V" } else { b"N" };
    let mut info = 0;
    let lwork = (34 * n.max(1)) as i32;
    let mut work = vec![0.0; lwork as usize];
    unsafe {
        ffi::dsyev_(
            jobz.as_ptr(),
            b"L".as_ptr(),
            &ni,
            work_a.data.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            &mut info,
        );
    }
    if info != 0 {
        return Err(LinalgError::NoConvergence);
    }
    Ok((w, if vectors { Some(work_a) } else { None }))
}

/// Thin SVD `a = U diag(s) V^T` with `U: m x min(m,n)`, `Vt: min(m,n) x n`.
pub fn svd(a: &Mat) -> Result<(Mat, Vec<f64>, Mat), LinalgError> {
    let (m, n) = (a.rows, a.cols);
    let k = m.min(n);
    let mut work_a = a.clone();
    let mut s = vec![0.0; k];
    let mut u = Mat::zeros(m, k);
    let mut vt = Mat::zeros(k, n);
    if k == 0 {
        return Ok((u, s, vt));
    }
    let (mi, ni, ki) = (m as i32, n as i32, k as i32);
    let mut info = 0;
    let mut iwork = vec![0i32; 8 * k];
    // workspace query
    let mut wk = [0.0f64];
    let query = -1i32;
    unsafe {
        ffi::dgesdd_(
            b"S".as_ptr(),
            &mi,
            &ni,
            work_a.data.as_mut_ptr(),
            &mi,
            s.as_mut_ptr(),
            u.data.as_mut_ptr(),
            &mi,
            vt.data.as_mut_ptr(),
            &ki,
            wk.as_mut_ptr(),
            &query,
            iwork.as_mut_ptr(),
            &mut info,
        );
    }
    let lwork = wk[0] as i32;
    let mut work = vec![0.0; lwork.max(1) as usize];
    unsafe {
        ffi::dgesdd_(
            b"S".as_ptr(),
            &mi,
            &ni,
            work_a.data.as_mut_ptr(),
            &mi,
            s.as_mut_ptr(),
            u.data.as_mut_ptr(),
            &mi,
            vt.data.as_mut_ptr(),
            &ki,
            work.as_mut_ptr(),
            &lwork,
            iwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(LinalgError::NoConvergence);
    }
    Ok((u, s, vt))
}

/// Singular values only.
pub fn singular_values(a: &Mat) -> Result<Vec<f64>, LinalgError> {
    // dgesdd with jobz = N writes no singular vectors.
    let (m, n) = (a.rows, a.cols);
    let k = m.min(n);
    if k == 0 {
        return Ok(vec![]);
    }
    let mut work_a = a.clone();
    let mut s = vec![0.0; k];
    let (mi, ni) = (m as i32, n as i32);
    let mut info = 0;
    let mut iwork = vec![0i32; 8 * k];
    let mut wk = [0.0f64];
    let query = -1i32;
    let one = 1i32;
    unsafe {
        ffi::dgesdd_(
            b"N".as_ptr(),
            &mi,
            &ni,
            work_a.data.as_mut_ptr(),
            &mi,
            s.as_mut_ptr(),
            std::ptr::null_mut(),
            &one,
            std::ptr::null_mut(),
            &one,
            wk.as_mut_ptr(),
            &query,
            iwork.as_mut_ptr(),
            &mut info,
        );
    }
    let lwork = wk[0] as i32;
    let mut work = vec![0.0; lwork.max(1) as usize];
    unsafe {
        ffi::dgesdd_(
            b"N".as_ptr(),
            &mi,
            &ni,
            work_a.data.as_mut_ptr(),
            &mi,
            s.as_mut_ptr(),
            std::ptr::null_mut(),
            &one,
            std::ptr::null_mut(),
            &one,
            work.as_mut_ptr(),
            &lwork,
            iwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(LinalgError::NoConvergence);
    }
    Ok(s)
}

/// LU factorization with partial pivoting, for repeated general solves.
pub struct LuFactor {
    lu: Mat,
    ipiv: Vec<i32>,
}

impl LuFactor {
    pub fn new(a: &Mat) -> Result<Self, LinalgError> {
        assert_eq!(a.rows, a.cols);
        let mut lu = a.clone();
        let n = a.rows as i32;
        let mut ipiv = vec![0i32; a.rows];
        let mut info = 0;
        unsafe { ffi::dgetrf_(&n, &n, lu.data.as_mut_ptr(), &n, ipiv.as_mut_ptr(), &mut info) };
        if info > 0 {
            return Err(LinalgError::Singular(info as usize));
        }
        Ok(LuFactor { lu, ipiv })
    }

    /// Solves `op(A) X = B` in place.
    pub fn solve(&self, trans: bool, b: &mut Mat) {
        assert_eq!(self.lu.rows, b.rows);
        let n = self.lu.rows as i32;
        let nrhs = b.cols as i32;
        let ldb = b.rows as i32;
        let mut info = 0;
        unsafe {
            ffi::dgetrs_(
                if trans { b"T" } else { b"N" }.as_ptr(),
                &n,
                &nrhs,
                self.lu.data.as_ptr(),
                &n,
                self.ipiv.as_ptr(),
                b.data.as_mut_ptr(),
                &ldb,
                &mut info,
            );
        }
        debug_assert_eq!(info, 0);
    }
}

/// Dense column-major complex matrix, used by the explicit-representation oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn eye(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scale(&mut self, s: Complex64) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn add_scaled(&mut self, s: Complex64, other: &CMat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn adjoint(&self) -> CMat {
        let mut t = CMat::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for i in 0..self.rows {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for j1 in 0..self.cols {
            for i1 in 0..self.rows {
                let a = self[(i1, j1)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j2 in 0..other.cols {
                    for i2 in 0..other.rows {
                        out[(i1 * other.rows + i2, j1 * other.cols + j2)] = a * other[(i2, j2)];
                    }
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

pub fn zmatmul(a: &CMat, b: &CMat) -> CMat {
    assert_eq!(a.cols, b.rows);
    let mut c = CMat::zeros(a.rows, b.cols);
    if a.rows == 0 || b.cols == 0 || a.cols == 0 {
        return c;
    }
    let (m, n, k) = (a.rows as i32, b.cols as i32, a.cols as i32);
    let alpha = Complex64::new(1.0, 0.0);
    let beta = Complex64::new(0.0, 0.0);
    unsafe {
        ffi::zgemm_(
            b"N".as_ptr(),
            b"N".as_ptr(),
            &m,
            &n,
            &k,
            &alpha,
            a.data.as_ptr(),
            &m,
            b.data.as_ptr(),
            &k,
            &beta,
            c.data.as_mut_ptr(),
            &m,
        );
    }
    c
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// eigenvectors as columns.
pub fn zeigh(a: &CMat) -> Result<(Vec<f64>, CMat), LinalgError> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut work_a = a.clone();
    let mut w = vec![0.0; n];
    if n == 0 {
        return Ok((w, work_a));
    }
    let ni = n as i32;
    let lwork = (33 * n) as i32;
    let mut work = vec![Complex64::new(0.0, 0.0); lwork as usize];
    let mut rwork = vec![0.0; 3 * n];
    let mut info = 0;
    unsafe {
        ffi::zheev_(
            b"V".as_ptr(),
            b"L".as_ptr(),
            &ni,
            work_a.data.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(LinalgError::NoConvergence);
    }
    Ok((w, work_a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_matmul(a: &Mat, b: &Mat) -> Mat {
        let mut c = Mat::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut s = 0.0;
                for k in 0..a.cols() {
                    s += a[(i, k)] * b[(k, j)];
                }
                c[(i, j)] = s;
            }
        }
        c
    }

    #[test]
    fn gemm_matches_naive() {
        let a = Mat::from_fn(4, 3, |i, j| (i as f64) - 2.0 * (j as f64) + 0.5);
        let b = Mat::from_fn(3, 5, |i, j| (i * j) as f64 - 1.0);
        let c = matmul(&a, &b);
        let d = naive_matmul(&a, &b);
        for (x, y) in c.data().iter().zip(d.data()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn cholesky_roundtrip() {
        let g = Mat::from_fn(5, 5, |i, j| 1.0 / (1.0 + (i + j) as f64));
        let mut s = Mat::eye(5);
        gemm(1.0, &g, false, &g, true, 2.0, &mut s);
        let mut l = s.clone();
        cholesky(&mut l).unwrap();
        let mut ll = Mat::zeros(5, 5);
        gemm(1.0, &l, false, &l, true, 0.0, &mut ll);
        for i in 0..5 {
            for j in 0..5 {
                assert!((ll[(i, j)] - s[(i, j)]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn eigh_diagonalizes() {
        let mut s = Mat::from_fn(6, 6, |i, j| ((i * 7 + j * 3) % 5) as f64);
        s.symmetrize();
        let (w, v) = eigh(&s).unwrap();
        for k in 0..6 {
            // s v_k = w_k v_k
            for i in 0..6 {
                let mut sv = 0.0;
                for j in 0..6 {
                    sv += s[(i, j)] * v[(j, k)];
                }
                assert!((sv - w[k] * v[(i, k)]).abs() < 1e-9);
            }
        }
        assert!(w.windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn zeigh_pauli_y() {
        let mut y = CMat::zeros(2, 2);
        y[(0, 1)] = Complex64::new(0.0, -1.0);
        y[(1, 0)] = Complex64::new(0.0, 1.0);
        let (w, _) = zeigh(&y).unwrap();
        assert!((w[0] + 1.0).abs() < 1e-12 && (w[1] - 1.0).abs() < 1e-12);
    }
}
