//! Uniform 1-D position grids, wavefunctions on them, and Gaussian packet
//! preparations.
//!
//! Momentum follows the standard DFT layout: bin `j` carries wavenumber
//! `2 pi j / (n dx)` for `j < n/2` and `2 pi (j - n) / (n dx)` otherwise,
//! and `p = hbar k`.

use std::sync::Arc;

use nalgebra::DMatrix;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{cr, polar, ComplexScalar, Float, C};
use crate::tol;

/// Uniform position grid with a power-of-two number of points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<F: Float> {
    n_points: usize,
    x_min: F,
    x_max: F,
}

impl<F: Float> GridSpec<F> {
    pub fn new(n_points: usize, x_min: F, x_max: F) -> Result<Self> {
        if n_points < 2 || !n_points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n_points must be a power of two >= 2, got {n_points}"
            )));
        }
        if x_max <= x_min {
            return Err(Error::InvalidGrid("x_max must exceed x_min".into()));
        }
        Ok(Self {
            n_points,
            x_min,
            x_max,
        })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn x_min(&self) -> F {
        self.x_min
    }

    pub fn x_max(&self) -> F {
        self.x_max
    }

    pub fn dx(&self) -> F {
        (self.x_max - self.x_min) / F::of(self.n_points as f64)
    }

    pub fn x(&self, j: usize) -> F {
        self.x_min + F::of(j as f64) * self.dx()
    }

    /// DFT wavenumber of bin `j`.
    pub fn wavenumber(&self, j: usize) -> F {
        let n = self.n_points;
        let idx = if j < n / 2 {
            F::of(j as f64)
        } else {
            F::of(j as f64 - n as f64)
        };
        F::two_pi() * idx / (F::of(n as f64) * self.dx())
    }

    /// Momentum of bin `j`, `p = hbar k`.
    pub fn momentum(&self, j: usize, hbar: F) -> F {
        hbar * self.wavenumber(j)
    }

    /// Momentum-bin spacing `2 pi hbar / (n dx)`.
    pub fn dp(&self, hbar: F) -> F {
        F::two_pi() * hbar / (F::of(self.n_points as f64) * self.dx())
    }
}

/// Analytic Gaussian pure-state parameters: center `x0`, mean momentum `p0`,
/// position width `sigma_x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket<F: Float> {
    pub x0: F,
    pub p0: F,
    pub sigma_x: F,
}

impl<F: Float> GaussianPacket<F> {
    pub fn new(x0: F, p0: F, sigma_x: F) -> Result<Self> {
        if sigma_x <= F::zero() {
            return Err(Error::InvalidParameter {
                name: "sigma_x",
                reason: "must be positive".into(),
            });
        }
        Ok(Self { x0, p0, sigma_x })
    }

    /// Momentum width `hbar / (2 sigma_x)`.
    pub fn sigma_p(&self, hbar: F) -> F {
        hbar / (F::of(2.0) * self.sigma_x)
    }

    /// Free-spreading position width
    /// `sigma_x sqrt(1 + (hbar t / 2 m sigma_x^2)^2)`.
    pub fn sigma_x_at(&self, t: F, mass: F, hbar: F) -> F {
        let r = hbar * t / (F::of(2.0) * mass * self.sigma_x * self.sigma_x);
        self.sigma_x * (F::one() + r * r).sqrt()
    }
}

/// Complex amplitudes sampled on a [`GridSpec`], kept at unit discrete norm.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction1D<F: Float> {
    grid: GridSpec<F>,
    amplitudes: Vec<C<F>>,
}

impl<F: Float> WaveFunction1D<F> {
    /// Wraps raw amplitudes, renormalizing to unit discrete norm.
    pub fn new(grid: GridSpec<F>, amplitudes: Vec<C<F>>) -> Result<Self> {
        if amplitudes.len() != grid.n_points() {
            return Err(Error::DimensionMismatch {
                expected: grid.n_points(),
                got: amplitudes.len(),
            });
        }
        let mut wf = Self { grid, amplitudes };
        let n = wf.norm();
        if n <= F::zero() {
            return Err(Error::InvalidParameter {
                name: "amplitudes",
                reason: "zero norm".into(),
            });
        }
        wf.rescale(F::one() / n);
        Ok(wf)
    }

    pub fn grid(&self) -> &GridSpec<F> {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[C<F>] {
        &self.amplitudes
    }

    fn rescale(&mut self, s: F) {
        for a in &mut self.amplitudes {
            *a *= cr(s);
        }
    }

    /// `sqrt(sum |psi|^2 dx)`.
    pub fn norm(&self) -> F {
        self.norm_sq().sqrt()
    }

    pub fn norm_sq(&self) -> F {
        let s = self
            .amplitudes
            .iter()
            .fold(F::zero(), |acc, a| acc + a.norm_sqr());
        s * self.grid.dx()
    }

    /// Largest amplitude magnitude on the two boundary points.
    pub fn edge_amplitude(&self) -> F {
        let n = self.amplitudes.len();
        self.amplitudes[0].magnitude().max(self.amplitudes[n - 1].magnitude())
    }

    /// `<x^k>`.
    pub fn position_moment(&self, k: u32) -> F {
        let dx = self.grid.dx();
        let mut s = F::zero();
        for (j, a) in self.amplitudes.iter().enumerate() {
            s += self.grid.x(j).powi(k as i32) * a.norm_sqr();
        }
        s * dx
    }

    pub fn position_mean(&self) -> F {
        self.position_moment(1)
    }

    /// `<V(x)>` for a pointwise potential.
    pub fn potential_expectation(&self, v: impl Fn(F) -> F) -> F {
        let dx = self.grid.dx();
        let mut s = F::zero();
        for (j, a) in self.amplitudes.iter().enumerate() {
            s += v(self.grid.x(j)) * a.norm_sqr();
        }
        s * dx
    }

    /// Momentum-bin probabilities `|psi~_j|^2`, normalized to sum 1.
    pub fn momentum_probabilities(&self) -> Vec<F> {
        let mut buf = self.amplitudes.clone();
        fft_forward(&mut buf);
        let total = buf.iter().fold(F::zero(), |acc, a| acc + a.norm_sqr());
        buf.iter().map(|a| a.norm_sqr() / total).collect()
    }

    /// `<p^k>` over the DFT momentum grid.
    pub fn momentum_moment(&self, k: u32, hbar: F) -> F {
        let probs = self.momentum_probabilities();
        let mut s = F::zero();
        for (j, w) in probs.iter().enumerate() {
            s += self.grid.momentum(j, hbar).powi(k as i32) * *w;
        }
        s
    }

    pub fn momentum_mean(&self, hbar: F) -> F {
        self.momentum_moment(1, hbar)
    }

    /// `<P^2 / 2m>`.
    pub fn kinetic_expectation(&self, mass: F, hbar: F) -> F {
        self.momentum_moment(2, hbar) / (F::of(2.0) * mass)
    }

    /// `<a|b> dx`.
    pub fn inner(&self, other: &Self) -> C<F> {
        let mut s = C::new(F::zero(), F::zero());
        for (a, b) in self.amplitudes.iter().zip(other.amplitudes.iter()) {
            s += a.conj() * b;
        }
        s * cr(self.grid.dx())
    }

    /// `|<a|b>|^2`.
    pub fn fidelity(&self, other: &Self) -> F {
        self.inner(other).norm_sqr()
    }

    /// Expectation `<psi| A |psi>` of a grid operator.
    pub fn operator_expectation(&self, a: &Operator<F>) -> Result<C<F>> {
        if a.dim() != self.grid.n_points() {
            return Err(Error::DimensionMismatch {
                expected: self.grid.n_points(),
                got: a.dim(),
            });
        }
        let v = self.to_ket();
        Ok(a.expectation_ket(&v))
    }

    /// Unit-norm state vector `psi_j sqrt(dx)`.
    pub fn to_ket(&self) -> nalgebra::DVector<C<F>> {
        let r = self.grid.dx().sqrt();
        nalgebra::DVector::from_iterator(
            self.amplitudes.len(),
            self.amplitudes.iter().map(|a| a * cr(r)),
        )
    }

    pub(crate) fn from_parts_unchecked(grid: GridSpec<F>, amplitudes: Vec<C<F>>) -> Self {
        Self { grid, amplitudes }
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut Vec<C<F>> {
        &mut self.amplitudes
    }
}

/// Samples the Gaussian pure state
/// `psi0(x) = (2 pi sigma_x^2)^(-1/4) exp[-(x - x0)^2 / 4 sigma_x^2 + i p0 x / hbar]`
/// on the grid and renormalizes to unit discrete norm.
pub fn gaussian_wavefunction<F: Float>(
    packet: &GaussianPacket<F>,
    grid: &GridSpec<F>,
    hbar: F,
) -> Result<WaveFunction1D<F>> {
    let four = F::of(4.0);
    if packet.sigma_x < four * grid.dx() {
        return Err(Error::InvalidParameter {
            name: "sigma_x",
            reason: format!(
                "packet width must satisfy sigma_x >= 4 dx = {:.3e}",
                (four * grid.dx()).as_f64()
            ),
        });
    }
    let norm = (F::two_pi() * packet.sigma_x * packet.sigma_x).powf(F::of(-0.25));
    let envelope = |x: F| {
        let d = x - packet.x0;
        norm * (-d * d / (four * packet.sigma_x * packet.sigma_x)).exp()
    };
    let edge = envelope(grid.x_min()).max(envelope(grid.x(grid.n_points() - 1)));
    if edge > F::of(tol::EDGE) {
        return Err(Error::EdgeLeak {
            amplitude: edge.as_f64(),
        });
    }
    let amplitudes = (0..grid.n_points())
        .map(|j| {
            let x = grid.x(j);
            let ph = packet.p0 * x / hbar;
            polar(envelope(x), ph)
        })
        .collect();
    WaveFunction1D::new(*grid, amplitudes)
}

/// Narrow-in-momentum Gaussian surrogate for the eigenstate `|p0>`:
/// a packet with `sigma_p = d_p`, centered on the grid.
pub fn momentum_surrogate<F: Float>(
    p0: F,
    d_p: F,
    grid: &GridSpec<F>,
    hbar: F,
) -> Result<WaveFunction1D<F>> {
    if d_p <= F::zero() {
        return Err(Error::InvalidParameter {
            name: "d_p",
            reason: "must be positive".into(),
        });
    }
    let center = (grid.x_min() + grid.x_max()) * F::of(0.5);
    let sigma_x = hbar / (F::of(2.0) * d_p);
    let packet = GaussianPacket::new(center, p0, sigma_x)?;
    gaussian_wavefunction(&packet, grid, hbar)
}

/// In-place unnormalized forward DFT.
pub(crate) fn fft_forward<F: Float>(buf: &mut [C<F>]) {
    plan::<F>(buf.len(), true).process(buf);
}

/// In-place inverse DFT including the `1/n` normalization.
pub(crate) fn fft_inverse<F: Float>(buf: &mut [C<F>]) {
    plan::<F>(buf.len(), false).process(buf);
    let s = cr(F::one() / F::of(buf.len() as f64));
    for a in buf {
        *a *= s;
    }
}

fn plan<F: Float>(n: usize, forward: bool) -> Arc<dyn Fft<F>> {
    let mut planner = FftPlanner::new();
    if forward {
        planner.plan_fft_forward(n)
    } else {
        planner.plan_fft_inverse(n)
    }
}

/// Position operator `diag(x_j)` on the grid.
pub fn position_operator<F: Float>(grid: &GridSpec<F>) -> Operator<F> {
    let xs: Vec<F> = (0..grid.n_points()).map(|j| grid.x(j)).collect();
    Operator::from_real_diagonal(&xs)
}

/// Dense momentum operator `F^-1 diag(hbar k) F` on the grid.
pub fn momentum_operator<F: Float>(grid: &GridSpec<F>, hbar: F) -> Operator<F> {
    momentum_function_operator(grid, |p| p, hbar)
}

/// Dense operator diagonal in the DFT momentum basis with symbol `f(p)`.
pub fn momentum_function_operator<F: Float>(
    grid: &GridSpec<F>,
    f: impl Fn(F) -> F,
    hbar: F,
) -> Operator<F> {
    let n = grid.n_points();
    let symbol: Vec<F> = (0..n).map(|j| f(grid.momentum(j, hbar))).collect();
    let mut mat = DMatrix::<C<F>>::zeros(n, n);
    let mut col = vec![C::new(F::zero(), F::zero()); n];
    for j in 0..n {
        col.iter_mut().for_each(|a| *a = C::new(F::zero(), F::zero()));
        col[j] = cr(F::one());
        fft_forward(&mut col);
        for (a, &s) in col.iter_mut().zip(symbol.iter()) {
            *a *= cr(s);
        }
        fft_inverse(&mut col);
        for i in 0..n {
            mat[(i, j)] = col[i];
        }
    }
    Operator::new(mat).expect("square by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> GridSpec<f64> {
        GridSpec::new(1 << 12, -20.0, 20.0).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::<f64>::new(3, -1.0, 1.0).is_err());
        assert!(GridSpec::<f64>::new(0, -1.0, 1.0).is_err());
        assert!(GridSpec::<f64>::new(4, 1.0, -1.0).is_err());
        let g = GridSpec::<f64>::new(8, -2.0, 2.0).unwrap();
        assert!((g.dx() - 0.5).abs() < 1e-15);
        // DFT frequency layout: second half negative
        assert!(g.wavenumber(1) > 0.0);
        assert!(g.wavenumber(7) < 0.0);
        assert!((g.wavenumber(4) + g.wavenumber(4).abs()).abs() < 1e-12);
    }

    #[test]
    fn symmetric_packet_moments() {
        let p = GaussianPacket::new(0.0, 0.0, 1.0).unwrap();
        let wf = gaussian_wavefunction(&p, &grid(), 1.0).unwrap();
        assert!(wf.position_mean().abs() < 1e-8);
        assert!((wf.position_moment(2) - 1.0).abs() < 1e-8);
        assert!((wf.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn moving_packet_momentum_mean() {
        // FFT-based momentum moment oracle
        let p = GaussianPacket::new(0.0, 5.0, 1.0).unwrap();
        let wf = gaussian_wavefunction(&p, &grid(), 1.0).unwrap();
        assert!((wf.momentum_mean(1.0) - 5.0).abs() < 1e-6);
    }

    #[test]
    fn momentum_spread_matches_hbar_over_2_sigma() {
        let p = GaussianPacket::new(0.0, 0.0, 1.0).unwrap();
        let wf = gaussian_wavefunction(&p, &grid(), 1.0).unwrap();
        let var = wf.momentum_moment(2, 1.0) - wf.momentum_mean(1.0).powi(2);
        assert!((var.sqrt() - 0.5).abs() < 1e-6);
        assert!((p.sigma_p(1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn leaking_packet_rejected() {
        let g = GridSpec::<f64>::new(64, -2.0, 2.0).unwrap();
        let p = GaussianPacket::new(0.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            gaussian_wavefunction(&p, &g, 1.0),
            Err(Error::EdgeLeak { .. })
        ));
    }

    #[test]
    fn under_resolved_packet_rejected() {
        let g = GridSpec::<f64>::new(16, -40.0, 40.0).unwrap();
        let p = GaussianPacket::new(0.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            gaussian_wavefunction(&p, &g, 1.0),
            Err(Error::InvalidParameter { name: "sigma_x", .. })
        ));
    }

    #[test]
    fn momentum_surrogate_is_narrow() {
        let g = GridSpec::<f64>::new(1024, -320.0, 320.0).unwrap();
        let wf = momentum_surrogate(2.0, 0.02, &g, 1.0).unwrap();
        assert!((wf.momentum_mean(1.0) - 2.0).abs() < 1e-9);
        let var = wf.momentum_moment(2, 1.0) - wf.momentum_mean(1.0).powi(2);
        assert!((var.sqrt() - 0.02).abs() < 2e-4);
    }

    #[test]
    fn momentum_operator_matches_fft_moment() {
        let g = GridSpec::<f64>::new(128, -16.0, 16.0).unwrap();
        let packet = GaussianPacket::new(0.0, 2.0, 1.0).unwrap();
        let wf = gaussian_wavefunction(&packet, &g, 1.0).unwrap();
        let p_op = momentum_operator(&g, 1.0);
        assert!(p_op.hermiticity_residual() < 1e-10);
        let via_op = wf.operator_expectation(&p_op).unwrap().re;
        let via_fft = wf.momentum_mean(1.0);
        assert!((via_op - via_fft).abs() < 1e-10);
    }

    #[test]
    fn fft_roundtrip_preserves_state() {
        let p = GaussianPacket::new(0.5, -1.0, 1.0).unwrap();
        let wf = gaussian_wavefunction(&p, &grid(), 1.0).unwrap();
        let mut buf = wf.amplitudes().to_vec();
        fft_forward(&mut buf);
        fft_inverse(&mut buf);
        let back = WaveFunction1D::from_parts_unchecked(*wf.grid(), buf);
        assert!((back.fidelity(&wf) - 1.0).abs() < 1e-12);
    }
}
