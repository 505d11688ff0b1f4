//! Time evolution: split-operator grid propagation, the factorized
//! free-fall propagator, Heisenberg-picture conjugation, and the
//! time-averaging map.

use crate::error::{Error, Result};
use crate::grid::{fft_forward, fft_inverse, GridSpec, WaveFunction1D};
use crate::operator::{DensityOperator, Operator};
use crate::scalar::{cr, phase, Float, C};
use crate::tol;

/// Ordered pair of instants labelling a two-time observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTimeWindow<F: Float> {
    t1: F,
    t2: F,
}

impl<F: Float> TwoTimeWindow<F> {
    pub fn new(t1: F, t2: F) -> Result<Self> {
        if t2 < t1 {
            return Err(Error::InvalidParameter {
                name: "t2",
                reason: "window requires t2 >= t1".into(),
            });
        }
        Ok(Self { t1, t2 })
    }

    pub fn t1(&self) -> F {
        self.t1
    }

    pub fn t2(&self) -> F {
        self.t2
    }

    /// `t2 - t1`.
    pub fn dt(&self) -> F {
        self.t2 - self.t1
    }

    pub fn is_degenerate(&self) -> bool {
        self.dt() == F::zero()
    }
}

/// Time-mixture state `(1/dt) int phi_t^*(rho0) dt` with its discretization
/// record.
#[derive(Debug, Clone)]
pub struct TimeMixtureState<F: Float> {
    pub rho: DensityOperator<F>,
    pub window: TwoTimeWindow<F>,
    pub n_slices: usize,
}

/// Symmetric (Strang) split-operator propagation of `psi` under
/// `H = P^2/2m + V(X)` for time `t` in `n_steps` steps.
///
/// Each step applies `exp(-i V dt/2 hbar) exp(-i P^2 dt/2 m hbar)
/// exp(-i V dt/2 hbar)` with the kinetic factor in the DFT momentum basis;
/// the global error is `O(dt^2)`. Norm drift beyond
/// [`tol::MAX_NORM_DRIFT`] or boundary amplitude beyond [`tol::EDGE`]
/// aborts the run.
pub fn split_operator_evolve<F: Float>(
    psi: &WaveFunction1D<F>,
    potential: impl Fn(F) -> F,
    mass: F,
    t: F,
    n_steps: usize,
    hbar: F,
) -> Result<WaveFunction1D<F>> {
    if n_steps == 0 {
        return Err(Error::InvalidParameter {
            name: "n_steps",
            reason: "must be positive".into(),
        });
    }
    if mass <= F::zero() {
        return Err(Error::InvalidParameter {
            name: "mass",
            reason: "must be positive".into(),
        });
    }
    let grid = *psi.grid();
    let n = grid.n_points();
    let dt = t / F::of(n_steps as f64);
    let half = F::of(0.5);

    let half_v: Vec<C<F>> = (0..n)
        .map(|j| phase(-potential(grid.x(j)) * dt * half / hbar))
        .collect();
    let kinetic: Vec<C<F>> = (0..n)
        .map(|j| {
            let p = grid.momentum(j, hbar);
            phase(-p * p * dt / (F::of(2.0) * mass * hbar))
        })
        .collect();

    let mut state = psi.clone();
    let edge_tol = F::of(tol::EDGE);
    let drift_tol = F::of(tol::MAX_NORM_DRIFT);
    for _ in 0..n_steps {
        {
            let buf = state.amplitudes_mut();
            for (a, ph) in buf.iter_mut().zip(half_v.iter()) {
                *a *= ph;
            }
            fft_forward(buf);
            for (a, ph) in buf.iter_mut().zip(kinetic.iter()) {
                *a *= ph;
            }
            fft_inverse(buf);
            for (a, ph) in buf.iter_mut().zip(half_v.iter()) {
                *a *= ph;
            }
        }
        let drift = (state.norm() - F::one()).abs();
        if drift > drift_tol {
            return Err(Error::NormDrift {
                drift: drift.as_f64(),
            });
        }
        let edge = state.edge_amplitude();
        if edge > edge_tol {
            return Err(Error::EdgeLeak {
                amplitude: edge.as_f64(),
            });
        }
    }
    Ok(state)
}

/// Applies the factorized uniform-field propagator
/// `e^{-i Theta_t} e^{-i m g t X / hbar} e^{-i P^2 t / 2 m hbar}
/// e^{i g t^2 P / 2 hbar}` with `Theta_t = m g^2 t^3 / 6 hbar`
/// to a grid state.
pub fn gravity_propagator_apply<F: Float>(
    psi: &WaveFunction1D<F>,
    t: F,
    mass: F,
    g: F,
    hbar: F,
) -> WaveFunction1D<F> {
    let grid = *psi.grid();
    let two = F::of(2.0);
    let theta = mass * g * g * t * t * t / (F::of(6.0) * hbar);
    let global = phase(-theta);

    let mut buf = psi.amplitudes().to_vec();
    fft_forward(&mut buf);
    for (j, a) in buf.iter_mut().enumerate() {
        let p = grid.momentum(j, hbar);
        let ph = -p * p * t / (two * mass * hbar) + g * t * t * p / (two * hbar);
        *a *= phase(ph);
    }
    fft_inverse(&mut buf);
    for (j, a) in buf.iter_mut().enumerate() {
        let ph = -mass * g * t * grid.x(j) / hbar;
        *a *= phase(ph) * global;
    }
    WaveFunction1D::from_parts_unchecked(grid, buf)
}

/// Dense grid matrix of the factorized uniform-field propagator; unitary
/// within [`tol::UNITARY`].
pub fn gravity_propagator_factorized<F: Float>(
    t: F,
    mass: F,
    g: F,
    grid: &GridSpec<F>,
    hbar: F,
) -> Operator<F> {
    let n = grid.n_points();
    let mut mat = nalgebra::DMatrix::<C<F>>::zeros(n, n);
    let two = F::of(2.0);
    let theta = mass * g * g * t * t * t / (F::of(6.0) * hbar);
    let global = phase(-theta);
    let mut col = vec![C::new(F::zero(), F::zero()); n];
    for j in 0..n {
        col.iter_mut().for_each(|a| *a = C::new(F::zero(), F::zero()));
        col[j] = cr(F::one());
        fft_forward(&mut col);
        for (k, a) in col.iter_mut().enumerate() {
            let p = grid.momentum(k, hbar);
            let ph = -p * p * t / (two * mass * hbar) + g * t * t * p / (two * hbar);
            *a *= phase(ph);
        }
        fft_inverse(&mut col);
        for (i, a) in col.iter().enumerate() {
            let ph = -mass * g * t * grid.x(i) / hbar;
            mat[(i, j)] = a * phase(ph) * global;
        }
    }
    Operator::new(mat).expect("square by construction")
}

/// Heisenberg image `u^dag o u` of `o` under the unitary `u`.
pub fn heisenberg_evolve<F: Float>(o: &Operator<F>, u: &Operator<F>) -> Result<Operator<F>> {
    if o.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: o.dim(),
            got: u.dim(),
        });
    }
    let residual = u.unitarity_residual();
    if residual > F::of(tol::UNITARY) {
        return Err(Error::NotUnitary {
            residual: residual.as_f64(),
        });
    }
    Operator::new(u.matrix().adjoint() * o.matrix() * u.matrix())
}

/// Precomputed spectral data of a time-independent Hamiltonian, from which
/// the unitary family `U_t = exp(-i H t / hbar)` is generated.
#[derive(Debug, Clone)]
pub struct HamiltonianEvolution<F: Float> {
    eigenvalues: Vec<F>,
    eigenvectors: nalgebra::DMatrix<C<F>>,
    hbar: F,
}

impl<F: Float> HamiltonianEvolution<F> {
    pub fn new(h: &Operator<F>, hbar: F) -> Result<Self> {
        let residual = h.hermiticity_residual();
        if residual > F::of(tol::HERMITIAN) {
            return Err(Error::NotHermitian {
                residual: residual.as_f64(),
            });
        }
        let eig = h.matrix().clone().symmetric_eigen();
        Ok(Self {
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            eigenvectors: eig.eigenvectors,
            hbar,
        })
    }

    /// `U_t = V diag(e^{-i lambda t / hbar}) V^dag`.
    pub fn unitary(&self, t: F) -> Operator<F> {
        let n = self.eigenvalues.len();
        let mut phases = nalgebra::DMatrix::<C<F>>::zeros(n, n);
        for (i, &l) in self.eigenvalues.iter().enumerate() {
            phases[(i, i)] = phase(-l * t / self.hbar);
        }
        let mat = &self.eigenvectors * phases * self.eigenvectors.adjoint();
        Operator::new(mat).expect("square by construction")
    }
}

/// Builds `exp(-i H t / hbar)` for a Hermitian `h`.
pub fn hamiltonian_propagator<F: Float>(h: &Operator<F>, t: F, hbar: F) -> Result<Operator<F>> {
    Ok(HamiltonianEvolution::new(h, hbar)?.unitary(t))
}

/// Trapezoid-rule realization of the time-averaging map acting on states:
/// `Phi^*(rho0) = (1/dt) int_{t1}^{t2} u(t) rho0 u(t)^dag dt` over
/// `n_slices` sub-intervals. The output trace is renormalized to 1.
///
/// A degenerate window is an error; evolve to the single time explicitly
/// instead.
pub fn time_average_map<F: Float>(
    rho0: &DensityOperator<F>,
    u_of_t: impl Fn(F) -> Operator<F>,
    window: &TwoTimeWindow<F>,
    n_slices: usize,
) -> Result<TimeMixtureState<F>> {
    if window.is_degenerate() {
        return Err(Error::DegenerateWindow);
    }
    if n_slices < 2 {
        return Err(Error::InvalidParameter {
            name: "n_slices",
            reason: "trapezoid rule needs n_slices >= 2".into(),
        });
    }
    let n = rho0.dim();
    let dt = window.dt() / F::of(n_slices as f64);
    let mut acc = nalgebra::DMatrix::<C<F>>::zeros(n, n);
    for i in 0..=n_slices {
        let t = window.t1() + F::of(i as f64) * dt;
        let u = u_of_t(t);
        let term = u.matrix() * rho0.matrix() * u.matrix().adjoint();
        let w = if i == 0 || i == n_slices {
            F::of(0.5)
        } else {
            F::one()
        };
        acc += term * cr(w / F::of(n_slices as f64));
    }
    let tr = acc.trace().re;
    acc /= cr(tr);
    // enforce exact Hermiticity against accumulated roundoff
    let herm = (acc.clone() + acc.adjoint()) * cr(F::of(0.5));
    let rho = DensityOperator::new(Operator::new(herm)?)?;
    Ok(TimeMixtureState {
        rho,
        window: *window,
        n_slices,
    })
}

/// Heisenberg-side time average `Phi(o) = (1/dt) int u(t)^dag o u(t) dt`
/// by the same trapezoid rule as [`time_average_map`].
///
/// For the power observable this is the average power over the window, and
/// `Phi(o) * dt` recovers the work operator.
pub fn time_average_observable<F: Float>(
    o: &Operator<F>,
    u_of_t: impl Fn(F) -> Operator<F>,
    window: &TwoTimeWindow<F>,
    n_slices: usize,
) -> Result<Operator<F>> {
    if window.is_degenerate() {
        return Err(Error::DegenerateWindow);
    }
    if n_slices < 2 {
        return Err(Error::InvalidParameter {
            name: "n_slices",
            reason: "trapezoid rule needs n_slices >= 2".into(),
        });
    }
    let n = o.dim();
    let dt = window.dt() / F::of(n_slices as f64);
    let mut acc = nalgebra::DMatrix::<C<F>>::zeros(n, n);
    for i in 0..=n_slices {
        let t = window.t1() + F::of(i as f64) * dt;
        let u = u_of_t(t);
        let term = u.matrix().adjoint() * o.matrix() * u.matrix();
        let w = if i == 0 || i == n_slices {
            F::of(0.5)
        } else {
            F::one()
        };
        acc += term * cr(w / F::of(n_slices as f64));
    }
    Operator::new(acc)
}

/// Default number of trapezoid sub-intervals for [`time_average_map`].
pub const DEFAULT_TIME_SLICES: usize = 256;
