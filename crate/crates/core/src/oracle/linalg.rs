//! Small dense complex matrices and a Hermitian eigensolver (cyclic Jacobi).

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let dim = columns.len();
        let mut m = Self::zeros(dim);
        for (c, col) in columns.iter().enumerate() {
            if col.len() != dim {
                return Err(Error::Shape("non-square column set".into()));
            }
            for (r, &v) in col.iter().enumerate() {
                m[(r, c)] = v;
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[r * n..(r + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|r| {
                self.data[r * self.dim..(r + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.matmul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.matmul(&base);
            }
        }
        result
    }

    /// Largest elementwise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest off-diagonal modulus.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut m: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r != c {
                    m = m.max(self[(r, c)].norm());
                }
            }
        }
        m
    }

    /// Elementwise deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.dim))
    }

    /// Spectral norm, `sqrt(λ_max(A†A))`.
    pub fn operator_norm(&self) -> Result<f64> {
        let gram = self.adjoint().matmul(self);
        let eig = hermitian_eigen(&gram)?;
        Ok(eig
            .values
            .iter()
            .cloned()
            .fold(0.0, f64::max)
            .max(0.0)
            .sqrt())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

/// Eigenvalues (ascending) and matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i)
    }
}

/// Cyclic complex Jacobi eigensolver for a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a_pq`, then applies
/// the real symmetric Jacobi rotation that zeroes it.
pub fn hermitian_eigen(matrix: &CMatrix) -> Result<HermitianEigen> {
    let n = matrix.dim();
    let herm_err = matrix.max_abs_diff(&matrix.adjoint());
    let scale = matrix.max_abs().max(1.0);
    if herm_err > 1e-9 * scale {
        return Err(Error::Numerical(format!(
            "matrix is not Hermitian (deviation {herm_err:e})"
        )));
    }
    let mut a = matrix.clone();
    let mut v = CMatrix::identity(n);
    let off_norm = |a: &CMatrix| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s += a[(r, c)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let frob = matrix.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let target = f64::EPSILON * frob.max(f64::MIN_POSITIVE);

    let mut converged = n < 2;
    for _sweep in 0..100 {
        if off_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase = apq / r; // e^{iφ}
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Unitary G acting on (p, q): columns
                //   g_p = ( c, -s e^{-iφ} ),  g_q = ( s e^{iφ}, c )
                let gpp = Complex64::new(c, 0.0);
                let gqp = -phase.conj() * s;
                let gpq = phase * s;
                let gqq = Complex64::new(c, 0.0);
                // A ← A G
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                }
                // A ← G† A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                // V ← V G
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
            }
        }
    }
    if !converged && off_norm(&a) > 1e-12 * frob.max(1.0) {
        return Err(Error::Numerical(
            "Jacobi eigensolver did not converge".into(),
        ));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// Eigen-decomposition of a unitary matrix: eigenphases in `(-π, π]` and
/// unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct UnitaryEigen {
    pub phases: Vec<f64>,
    pub vectors: CMatrix,
}

impl UnitaryEigen {
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i)
    }
}

/// Diagonalise a unitary matrix with the Hermitian solver.
///
/// `U` is normal, so `(U + U†)/2 + c (U - U†)/2i` shares its eigenvectors;
/// an irrational `c` separates eigenvalues that differ only in the sign of
/// their sine. The eigenphase is then read off the Rayleigh quotient.
pub fn unitary_eigen(u: &CMatrix) -> Result<UnitaryEigen> {
    let n = u.dim();
    let ud = u.adjoint();
    let c = std::f64::consts::FRAC_1_SQRT_2 * 0.937;
    let herm_cos = u.add(&ud).scale(Complex64::new(0.5, 0.0));
    let herm_sin = u.sub(&ud).scale(Complex64::new(0.0, -0.5 * c));
    let mut mix = herm_cos.add(&herm_sin);
    // Symmetrise rounding noise before the Hermitian check.
    mix = mix.add(&mix.adjoint()).scale(Complex64::new(0.5, 0.0));
    let eig = hermitian_eigen(&mix)?;
    let mut phases = Vec::with_capacity(n);
    for i in 0..n {
        let v = eig.vector(i);
        let uv = u.matvec(&v);
        let lambda: Complex64 = v.iter().zip(&uv).map(|(a, b)| a.conj() * b).sum();
        let resid = uv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - lambda * b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if resid > 1e-7 {
            return Err(Error::Numerical(format!(
                "unitary eigenvector residual {resid:e} too large"
            )));
        }
        phases.push(lambda.arg());
    }
    Ok(UnitaryEigen {
        phases,
        vectors: eig.vectors,
    })
}

/// `exp(-i H τ)` for Hermitian `H`.
pub fn expm_hermitian(h: &CMatrix, tau: f64) -> Result<CMatrix> {
    let eig = hermitian_eigen(h)?;
    let n = h.dim();
    let mut out = CMatrix::zeros(n);
    for (i, &lambda) in eig.values.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -lambda * tau);
        for r in 0..n {
            let vr = eig.vectors[(r, i)] * phase;
            for c in 0..n {
                out[(r, c)] += vr * eig.vectors[(c, i)].conj();
            }
        }
    }
    Ok(out)
}

/// Wrap an angle into `(-π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    use std::f64::consts::PI;
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// Symmetric (Hausdorff) distance between two sets of angles on the circle.
pub fn eigenphase_distance(a: &[f64], b: &[f64]) -> f64 {
    let nearest = |x: f64, set: &[f64]| {
        set.iter()
            .map(|&y| wrap_angle(x - y).abs())
            .fold(f64::INFINITY, f64::min)
    };
    let ab = a.iter().map(|&x| nearest(x, b)).fold(0.0, f64::max);
    let ba = b.iter().map(|&x| nearest(x, a)).fold(0.0, f64::max);
    ab.max(ba)
}
