//! Thin bindings to the system LAPACK for the small dense complex problems
//! the solvers need: linear solve, general eigenvalues, Hermitian
//! eigenvalues, and singular values with kernel extraction.
//!
//! Matrices cross the FFI boundary in column-major order; the wrappers accept
//! row-major `ndarray` views and transpose at the boundary. Problem sizes
//! here are tiny (4×4 and 16×16), so the copies are irrelevant.

use ndarray::{Array1, Array2, ArrayView2};
use crate::C64;

#[allow(clippy::too_many_arguments)]
mod ffi {
    use std::os::raw::c_char;
    pub type Zc = [f64; 2];

    #[link(name = "lapack")]
    extern "C" {
        pub fn zgesv_(
            n: *const i32,
            nrhs: *const i32,
            a: *mut Zc,
            lda: *const i32,
            ipiv: *mut i32,
            b: *mut Zc,
            ldb: *const i32,
            info: *mut i32,
        );
        pub fn zgeev_(
            jobvl: *const c_char,
            jobvr: *const c_char,
            n: *const i32,
            a: *mut Zc,
            lda: *const i32,
            w: *mut Zc,
            vl: *mut Zc,
            ldvl: *const i32,
            vr: *mut Zc,
            ldvr: *const i32,
            work: *mut Zc,
            lwork: *const i32,
            rwork: *mut f64,
            info: *mut i32,
        );
        pub fn zheev_(
            jobz: *const c_char,
            uplo: *const c_char,
            n: *const i32,
            a: *mut Zc,
            lda: *const i32,
            w: *mut f64,
            work: *mut Zc,
            lwork: *const i32,
            rwork: *mut f64,
            info: *mut i32,
        );
        pub fn zgesvd_(
            jobu: *const c_char,
            jobvt: *const c_char,
            m: *const i32,
            n: *const i32,
            a: *mut Zc,
            lda: *const i32,
            s: *mut f64,
            u: *mut Zc,
            ldu: *const i32,
            vt: *mut Zc,
            ldvt: *const i32,
            work: *mut Zc,
            lwork: *const i32,
            rwork: *mut f64,
            info: *mut i32,
        );
    }
}

/// LAPACK failure (nonzero `info`).
#[derive(Debug, Clone, thiserror::Error)]
#[error("LAPACK {routine} failed with info = {info}")]
pub struct LapackError {
    pub routine: &'static str,
    pub info: i32,
}

fn to_col_major(a: ArrayView2<C64>) -> Vec<[f64; 2]> {
    let (rows, cols) = a.dim();
    let mut out = vec![[0.0f64; 2]; rows * cols];
    for j in 0..cols {
        for i in 0..rows {
            let z = a[(i, j)];
            out[j * rows + i] = [z.re, z.im];
        }
    }
    out
}

fn c(z: [f64; 2]) -> C64 {
    C64::new(z[0], z[1])
}

/// Solve `A x = b` for square complex `A` by LU with partial pivoting.
pub fn solve(a: ArrayView2<C64>, b: &[C64]) -> Result<Vec<C64>, LapackError> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n);
    assert_eq!(b.len(), n);
    let mut a_cm = to_col_major(a);
    let mut b_cm: Vec<[f64; 2]> = b.iter().map(|z| [z.re, z.im]).collect();
    let mut ipiv = vec![0i32; n];
    let (n_i, one, mut info) = (n as i32, 1i32, 0i32);
    unsafe {
        ffi::zgesv_(
            &n_i,
            &one,
            a_cm.as_mut_ptr(),
            &n_i,
            ipiv.as_mut_ptr(),
            b_cm.as_mut_ptr(),
            &n_i,
            &mut info,
        );
    }
    if info != 0 {
        return Err(LapackError { routine: "zgesv", info });
    }
    Ok(b_cm.into_iter().map(c).collect())
}

/// Eigenvalues of a general complex square matrix.
pub fn eigvals(a: ArrayView2<C64>) -> Result<Vec<C64>, LapackError> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n);
    let mut a_cm = to_col_major(a);
    let mut w = vec![[0.0f64; 2]; n];
    let mut rwork = vec![0.0f64; 2 * n];
    let lwork = (4 * n.max(1)) as i32;
    let mut work = vec![[0.0f64; 2]; lwork as usize];
    let n_i = n as i32;
    let one = 1i32;
    let mut info = 0i32;
    let jobn = b'N' as std::os::raw::c_char;
    unsafe {
        ffi::zgeev_(
            &jobn,
            &jobn,
            &n_i,
            a_cm.as_mut_ptr(),
            &n_i,
            w.as_mut_ptr(),
            std::ptr::null_mut(),
            &one,
            std::ptr::null_mut(),
            &one,
            work.as_mut_ptr(),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(LapackError { routine: "zgeev", info });
    }
    Ok(w.into_iter().map(c).collect())
}

/// Eigenvalues of a Hermitian complex matrix, ascending.
pub fn eigvals_hermitian(a: ArrayView2<C64>) -> Result<Vec<f64>, LapackError> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n);
    let mut a_cm = to_col_major(a);
    let mut w = vec![0.0f64; n];
    let lwork = (4 * n.max(1)) as i32;
    let mut work = vec![[0.0f64; 2]; lwork as usize];
    let mut rwork = vec![0.0f64; 3 * n.max(1)];
    let n_i = n as i32;
    let mut info = 0i32;
    let jobz = b'N' as std::os::raw::c_char;
    let uplo = b'L' as std::os::raw::c_char;
    unsafe {
        ffi::zheev_(
            &jobz,
            &uplo,
            &n_i,
            a_cm.as_mut_ptr(),
            &n_i,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(LapackError { routine: "zheev", info });
    }
    Ok(w)
}

/// Full SVD. Returns singular values (descending) and `V^H` rows, so the
/// right singular vector of the smallest singular value is the conjugate of
/// the last row of `vt`.
pub struct Svd {
    pub singular_values: Array1<f64>,
    pub vt: Array2<C64>,
}

pub fn svd(a: ArrayView2<C64>) -> Result<Svd, LapackError> {
    let (m, n) = a.dim();
    let mut a_cm = to_col_major(a);
    let k = m.min(n);
    let mut s = vec![0.0f64; k];
    let mut vt = vec![[0.0f64; 2]; n * n];
    let lwork = (5 * (m + n).max(1)) as i32;
    let mut work = vec![[0.0f64; 2]; lwork as usize];
    let mut rwork = vec![0.0f64; 5 * k.max(1)];
    let (m_i, n_i) = (m as i32, n as i32);
    let one = 1i32;
    let mut info = 0i32;
    let jobu = b'N' as std::os::raw::c_char;
    let jobvt = b'A' as std::os::raw::c_char;
    unsafe {
        ffi::zgesvd_(
            &jobu,
            &jobvt,
            &m_i,
            &n_i,
            a_cm.as_mut_ptr(),
            &m_i,
            s.as_mut_ptr(),
            std::ptr::null_mut(),
            &one,
            vt.as_mut_ptr(),
            &n_i,
            work.as_mut_ptr(),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(LapackError { routine: "zgesvd", info });
    }
    let vt_rm = Array2::from_shape_fn((n, n), |(i, j)| c(vt[j * n + i]));
    Ok(Svd {
        singular_values: Array1::from(s),
        vt: vt_rm,
    })
}
