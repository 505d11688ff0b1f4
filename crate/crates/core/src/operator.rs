//! Dense complex operators on finite-dimensional Hilbert spaces, density
//! operators, and the spectral primitives built on them.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::{cr, ComplexScalar, Float, C};
use crate::tol;

/// State vector on a finite-dimensional Hilbert space.
pub type Ket<F> = DVector<C<F>>;

/// Dense complex operator. All values are immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<F: Float> {
    mat: DMatrix<C<F>>,
}

impl<F: Float> Operator<F> {
    /// Wraps a square matrix.
    pub fn new(mat: DMatrix<C<F>>) -> Result<Self> {
        if !mat.is_square() || mat.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: mat.nrows().max(1),
                got: mat.ncols(),
            });
        }
        Ok(Self { mat })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: DMatrix::zeros(dim, dim),
        }
    }

    /// Diagonal operator from real entries.
    pub fn from_real_diagonal(diag: &[F]) -> Self {
        let n = diag.len();
        let mut mat = DMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            mat[(i, i)] = cr(d);
        }
        Self { mat }
    }

    /// Rank-one projector `|v><v| / <v|v>`.
    pub fn projector(v: &Ket<F>) -> Self {
        let n2 = v.dotc(v).re;
        let mat = v * v.adjoint() / cr(n2);
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C<F>> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C<F>> {
        self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> C<F> {
        self.mat[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.adjoint(),
        }
    }

    pub fn trace(&self) -> C<F> {
        self.mat.trace()
    }

    pub fn scale(&self, s: C<F>) -> Self {
        Self {
            mat: self.mat.clone() * s,
        }
    }

    pub fn scale_re(&self, s: F) -> Self {
        self.scale(cr(s))
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> F {
        let mut m = F::zero();
        for (a, b) in self.mat.iter().zip(other.mat.iter()) {
            m = m.max((a - b).magnitude());
        }
        m
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> F {
        self.mat
            .iter()
            .fold(F::zero(), |m, a| m.max(a.magnitude()))
    }

    /// `max |a_ij - conj(a_ji)|`.
    pub fn hermiticity_residual(&self) -> F {
        let mut r = F::zero();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                r = r.max((self.mat[(i, j)] - self.mat[(j, i)].conj()).magnitude());
            }
        }
        r
    }

    pub fn is_hermitian(&self, tolerance: F) -> bool {
        self.hermiticity_residual() <= tolerance
    }

    /// `max |(U U^dag - 1)_ij|`.
    pub fn unitarity_residual(&self) -> F {
        let prod = &self.mat * self.mat.adjoint();
        let id = DMatrix::<C<F>>::identity(self.dim(), self.dim());
        let mut r = F::zero();
        for (a, b) in prod.iter().zip(id.iter()) {
            r = r.max((a - b).magnitude());
        }
        r
    }

    pub fn is_unitary(&self, tolerance: F) -> bool {
        self.unitarity_residual() <= tolerance
    }

    /// `A |v>`.
    pub fn apply(&self, v: &Ket<F>) -> Ket<F> {
        &self.mat * v
    }

    /// `<v| A |v>` for a normalized `|v>`.
    pub fn expectation_ket(&self, v: &Ket<F>) -> C<F> {
        (v.adjoint() * &self.mat * v)[(0, 0)]
    }

    /// `Tr[A rho]`.
    pub fn expectation(&self, rho: &DensityOperator<F>) -> C<F> {
        (&self.mat * rho.matrix()).trace()
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }
}

impl<F: Float> std::ops::Add for &Operator<F> {
    type Output = Operator<F>;
    fn add(self, rhs: &Operator<F>) -> Operator<F> {
        Operator {
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl<F: Float> std::ops::Sub for &Operator<F> {
    type Output = Operator<F>;
    fn sub(self, rhs: &Operator<F>) -> Operator<F> {
        Operator {
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl<F: Float> std::ops::Mul for &Operator<F> {
    type Output = Operator<F>;
    fn mul(self, rhs: &Operator<F>) -> Operator<F> {
        Operator {
            mat: &self.mat * &rhs.mat,
        }
    }
}

/// Density operator: Hermitian, unit trace, positive semidefinite within
/// tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<F: Float> {
    op: Operator<F>,
}

impl<F: Float> DensityOperator<F> {
    pub fn new(op: Operator<F>) -> Result<Self> {
        let herm = op.hermiticity_residual();
        if herm > F::of(tol::HERMITIAN) {
            return Err(Error::InvalidDensity(format!(
                "hermiticity residual {:.3e}",
                herm.as_f64()
            )));
        }
        let tr = op.trace();
        let tr_err = (tr - cr(F::one())).magnitude();
        if tr_err > F::of(tol::TRACE) {
            return Err(Error::InvalidDensity(format!(
                "trace differs from 1 by {:.3e}",
                tr_err.as_f64()
            )));
        }
        let eig = op.mat.clone().symmetric_eigen();
        let min = eig.eigenvalues.iter().fold(F::zero(), |m, &l| m.min(l));
        if min < -F::of(tol::PSD) {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {:.3e}",
                min.as_f64()
            )));
        }
        Ok(Self { op })
    }

    /// Pure state `|v><v|` (normalizes `v`).
    pub fn pure(v: &Ket<F>) -> Self {
        Self {
            op: Operator::projector(v),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            op: Operator::identity(dim).scale_re(F::one() / F::of(dim as f64)),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &Operator<F> {
        &self.op
    }

    pub fn matrix(&self) -> &DMatrix<C<F>> {
        self.op.matrix()
    }

    /// Unitary image `U rho U^dag`.
    pub fn conjugate(&self, u: &Operator<F>) -> Result<Self> {
        self.op.check_same_dim(u)?;
        let mat = u.matrix() * self.matrix() * u.matrix().adjoint();
        // unitary conjugation preserves the defining properties, so skip
        // revalidation and only repair roundoff on the trace
        let tr = mat.trace().re;
        Ok(Self {
            op: Operator { mat: mat / cr(tr) },
        })
    }
}

/// Symmetrized product `(ab + ba) / 2`; Hermitian whenever `a` and `b` are.
pub fn anticommutator<F: Float>(a: &Operator<F>, b: &Operator<F>) -> Result<Operator<F>> {
    a.check_same_dim(b)?;
    let m = (a.matrix() * b.matrix() + b.matrix() * a.matrix()) * cr(F::of(0.5));
    Ok(Operator { mat: m })
}

/// `Tr[[a, b] rho]`; purely imaginary for Hermitian `a`, `b`.
pub fn commutator_expectation<F: Float>(
    a: &Operator<F>,
    b: &Operator<F>,
    rho: &DensityOperator<F>,
) -> Result<C<F>> {
    a.check_same_dim(b)?;
    a.check_same_dim(rho.operator())?;
    let comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    Ok((comm * rho.matrix()).trace())
}

/// One eigenvalue cluster of a Hermitian operator: eigenvalues closer than
/// the relative degeneracy tolerance merge into a single projector.
#[derive(Debug, Clone)]
pub struct EigenCluster<F: Float> {
    pub eigenvalue: F,
    pub projector: Operator<F>,
    pub multiplicity: usize,
}

/// Spectral decomposition of a Hermitian operator, eigenvalues ascending.
///
/// Degenerate eigenvalues (gap below `tol::DEGENERACY_REL` times the spectral
/// range) are merged into a single cluster whose projector has rank equal to
/// the multiplicity.
pub fn hermitian_eigensystem<F: Float>(a: &Operator<F>) -> Result<Vec<EigenCluster<F>>> {
    let residual = a.hermiticity_residual();
    if residual > F::of(tol::HERMITIAN) {
        return Err(Error::NotHermitian {
            residual: residual.as_f64(),
        });
    }
    let eig = a.matrix().clone().symmetric_eigen();
    let n = a.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .expect("Hermitian eigenvalues are finite")
    });

    let lo = eig.eigenvalues[order[0]];
    let hi = eig.eigenvalues[order[n - 1]];
    let gap_tol = F::of(tol::DEGENERACY_REL) * (hi - lo);

    let mut clusters = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n
            && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] <= gap_tol
        {
            end += 1;
        }
        let members = &order[start..end];
        let mut proj = DMatrix::<C<F>>::zeros(n, n);
        let mut mean = F::zero();
        for &idx in members {
            let v = eig.eigenvectors.column(idx);
            proj += v * v.adjoint();
            mean += eig.eigenvalues[idx];
        }
        mean /= F::of(members.len() as f64);
        clusters.push(EigenCluster {
            eigenvalue: mean,
            projector: Operator { mat: proj },
            multiplicity: members.len(),
        });
        start = end;
    }
    Ok(clusters)
}

/// Kronecker product; the first factor is subsystem 1 (row-major ordering).
pub fn tensor_product<F: Float>(a: &Operator<F>, b: &Operator<F>) -> Operator<F> {
    Operator {
        mat: a.matrix().kronecker(b.matrix()),
    }
}

/// Kronecker product of state vectors, same ordering convention.
pub fn tensor_ket<F: Float>(a: &Ket<F>, b: &Ket<F>) -> Ket<F> {
    a.kronecker(b)
}

/// `-sum lambda ln lambda` over eigenvalues above the PSD tolerance, in nats.
pub fn von_neumann_entropy<F: Float>(rho: &DensityOperator<F>) -> F {
    let eig = rho.matrix().clone().symmetric_eigen();
    let floor = F::of(tol::PSD);
    let mut s = F::zero();
    for &l in eig.eigenvalues.iter() {
        if l > floor {
            s -= l * l.ln();
        }
    }
    s.max(F::zero())
}

/// Pauli matrices and common qubit states.
pub mod qubit {
    use super::*;

    pub fn sigma_x<F: Float>() -> Operator<F> {
        let o = F::one();
        let z = F::zero();
        Operator {
            mat: DMatrix::from_row_slice(2, 2, &[cr(z), cr(o), cr(o), cr(z)]),
        }
    }

    pub fn sigma_y<F: Float>() -> Operator<F> {
        let o = F::one();
        let z = F::zero();
        Operator {
            mat: DMatrix::from_row_slice(
                2,
                2,
                &[cr(z), C::new(z, -o), C::new(z, o), cr(z)],
            ),
        }
    }

    pub fn sigma_z<F: Float>() -> Operator<F> {
        let o = F::one();
        let z = F::zero();
        Operator {
            mat: DMatrix::from_row_slice(2, 2, &[cr(o), cr(z), cr(z), cr(-o)]),
        }
    }

    pub fn ket0<F: Float>() -> Ket<F> {
        DVector::from_vec(vec![cr(F::one()), cr(F::zero())])
    }

    pub fn ket1<F: Float>() -> Ket<F> {
        DVector::from_vec(vec![cr(F::zero()), cr(F::one())])
    }

    /// `(|0> + |1>) / sqrt(2)`.
    pub fn ket_plus<F: Float>() -> Ket<F> {
        let r = F::one() / F::of(2.0).sqrt();
        DVector::from_vec(vec![cr(r), cr(r)])
    }

    /// `(|0> - |1>) / sqrt(2)`.
    pub fn ket_minus<F: Float>() -> Ket<F> {
        let r = F::one() / F::of(2.0).sqrt();
        DVector::from_vec(vec![cr(r), cr(-r)])
    }

    /// Eigenvector of `sigma_y` with eigenvalue `sign` (+1 or -1).
    pub fn ket_y<F: Float>(sign: i8) -> Ket<F> {
        let r = F::one() / F::of(2.0).sqrt();
        let s = F::of(sign as f64);
        DVector::from_vec(vec![cr(r), C::new(F::zero(), s * r)])
    }

    /// `cos(theta)|0> + sin(theta)|1>`.
    pub fn ket_theta<F: Float>(theta: F) -> Ket<F> {
        DVector::from_vec(vec![cr(theta.cos()), cr(theta.sin())])
    }
}
