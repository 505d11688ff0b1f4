//! Two-point-measurement protocol simulators for the gravity model, the
//! free-particle displacement, and spin precession: analytic outcome
//! densities plus a seeded Monte-Carlo realization of the measure-evolve-
//! measure chain.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{hamiltonian_propagator, TwoTimeWindow};
use crate::error::{Error, Result};
use crate::grid::GaussianPacket;
use crate::models::{spin_sz, GravityModel, SpinModel};
use crate::operator::Ket;
use crate::scalar::Float;
use crate::tol;

/// Finite measurement resolutions; ideal limits are analytic-limit code
/// paths, never zero-width numerics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementResolution<F: Float> {
    d_x: F,
    d_p: F,
}

impl<F: Float> MeasurementResolution<F> {
    pub fn new(d_x: F, d_p: F) -> Result<Self> {
        if d_x <= F::zero() {
            return Err(Error::InvalidParameter {
                name: "d_x",
                reason: "resolution must be positive".into(),
            });
        }
        if d_p <= F::zero() {
            return Err(Error::InvalidParameter {
                name: "d_p",
                reason: "resolution must be positive".into(),
            });
        }
        Ok(Self { d_x, d_p })
    }

    pub fn d_x(&self) -> F {
        self.d_x
    }

    pub fn d_p(&self) -> F {
        self.d_p
    }

    /// Free-spread width of the post-measurement position state,
    /// `d_x(dt) = d_x sqrt(1 + (hbar dt / 2 m d_x^2)^2)`.
    pub fn d_x_at(&self, dt: F, mass: F, hbar: F) -> F {
        let r = hbar * dt / (F::of(2.0) * mass * self.d_x * self.d_x);
        self.d_x * (F::one() + r * r).sqrt()
    }
}

/// Normalized 1-D Gaussian probability density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianDensity<F: Float> {
    center: F,
    width: F,
}

impl<F: Float> GaussianDensity<F> {
    pub fn new(center: F, width: F) -> Result<Self> {
        if width <= F::zero() {
            return Err(Error::InvalidParameter {
                name: "width",
                reason: "Gaussian width must be positive".into(),
            });
        }
        Ok(Self { center, width })
    }

    pub fn center(&self) -> F {
        self.center
    }

    pub fn width(&self) -> F {
        self.width
    }

    pub fn pdf(&self, u: F) -> F {
        let z = (u - self.center) / self.width;
        (-z * z / F::of(2.0)).exp() / (self.width * F::two_pi().sqrt())
    }
}

/// Work-value density: a Gaussian, or the explicit point mass the
/// degenerate limits collapse to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WorkDensity<F: Float> {
    Gaussian(GaussianDensity<F>),
    PointMass { value: F },
}

impl<F: Float> WorkDensity<F> {
    pub fn gaussian(center: F, width: F) -> Result<Self> {
        Ok(Self::Gaussian(GaussianDensity::new(center, width)?))
    }

    /// Collapses zero width to a point mass.
    pub fn from_center_width(center: F, width: F) -> Self {
        if width > F::zero() {
            Self::Gaussian(GaussianDensity { center, width })
        } else {
            Self::PointMass { value: center }
        }
    }

    pub fn mean(&self) -> F {
        match self {
            Self::Gaussian(g) => g.center,
            Self::PointMass { value } => *value,
        }
    }

    pub fn width(&self) -> F {
        match self {
            Self::Gaussian(g) => g.width,
            Self::PointMass { .. } => F::zero(),
        }
    }
}

/// Which observable the two projective measurements address.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TpmProtocol {
    /// TPM_x: positions, energies `e = m g x`.
    Position,
    /// TPM_p: momenta, energies `e = p^2 / 2m`.
    Momentum,
}

/// Reproducible sample record: `n` draws fixed by `seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet<F: Float> {
    pub values: Vec<F>,
    pub seed: u64,
}

impl<F: Float> SampleSet<F> {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn mean(&self) -> F {
        let s = self.values.iter().fold(F::zero(), |a, &v| a + v);
        s / F::of(self.values.len().max(1) as f64)
    }

    pub fn std(&self) -> F {
        let m = self.mean();
        let s = self
            .values
            .iter()
            .fold(F::zero(), |a, &v| a + (v - m) * (v - m));
        (s / F::of(self.values.len().max(1) as f64)).sqrt()
    }
}

/// Density of the first measurement outcome at `t1`, Eq.-level closed form:
/// position `G(x0 + p0 t1/m - g t1^2/2, sigma_x(t1))`,
/// momentum `G(p0 - m g t1, hbar/2 sigma_x)`.
pub fn tpm_first_outcome_density<F: Float>(
    model: &GravityModel<F>,
    packet: &GaussianPacket<F>,
    t1: F,
    variable: TpmProtocol,
    hbar: F,
) -> GaussianDensity<F> {
    let half = F::of(0.5);
    match variable {
        TpmProtocol::Position => GaussianDensity {
            center: packet.x0 + packet.p0 * t1 / model.m - half * model.g * t1 * t1,
            width: packet.sigma_x_at(t1, model.m, hbar),
        },
        TpmProtocol::Momentum => GaussianDensity {
            center: packet.p0 - model.m * model.g * t1,
            width: packet.sigma_p(hbar),
        },
    }
}

/// Density of the second outcome given the first:
/// position `G(x_i - g dt^2/2, d_x(dt))`, momentum `G(p_i - m g dt, d_p)`.
pub fn tpm_conditional_density<F: Float>(
    model: &GravityModel<F>,
    outcome: F,
    window: &TwoTimeWindow<F>,
    res: &MeasurementResolution<F>,
    variable: TpmProtocol,
    hbar: F,
) -> GaussianDensity<F> {
    let dt = window.dt();
    let half = F::of(0.5);
    match variable {
        TpmProtocol::Position => GaussianDensity {
            center: outcome - half * model.g * dt * dt,
            width: res.d_x_at(dt, model.m, hbar),
        },
        TpmProtocol::Momentum => GaussianDensity {
            center: outcome - model.m * model.g * dt,
            width: res.d_p,
        },
    }
}

/// Closed-form TPM work distribution `G_w(f_g Dx^[r], sigma_w^[r])` with
///
/// - `Dx^[x] = -g dt^2/2`, `sigma_w^[x] = |f_g| d_x(dt)`;
/// - `Dx^[p] = p0 dt/m - g (t2^2 - t1^2)/2`, `sigma_w^[p] = sigma_p g dt`
///   (valid in the `d_p -> 0` regime, enforced through
///   [`tol::TPM_P_LIMIT_FACTOR`]).
pub fn tpm_work_distribution<F: Float>(
    model: &GravityModel<F>,
    packet: &GaussianPacket<F>,
    window: &TwoTimeWindow<F>,
    res: &MeasurementResolution<F>,
    protocol: TpmProtocol,
    hbar: F,
) -> Result<WorkDensity<F>> {
    let dt = window.dt();
    let half = F::of(0.5);
    let f_g = model.force();
    match protocol {
        TpmProtocol::Position => {
            let mean = f_g * (-half * model.g * dt * dt);
            let width = f_g.abs() * res.d_x_at(dt, model.m, hbar);
            Ok(WorkDensity::from_center_width(mean, width))
        }
        TpmProtocol::Momentum => {
            let sigma_p = packet.sigma_p(hbar);
            let max = F::of(tol::TPM_P_LIMIT_FACTOR) * sigma_p;
            if res.d_p > max {
                return Err(Error::ResolutionTooCoarse {
                    d_p: res.d_p.as_f64(),
                    max: max.as_f64(),
                });
            }
            let dx = packet.p0 * dt / model.m
                - half * model.g * (window.t2() * window.t2() - window.t1() * window.t1());
            let width = sigma_p * model.g.abs() * dt;
            Ok(WorkDensity::from_center_width(f_g * dx, width))
        }
    }
}

/// Power inferred from TPM statistics in the `tau -> 0` limit:
/// the position protocol loses all time dependence and yields 0, the
/// momentum protocol recovers `f_g (p0/m - g t)`.
pub fn tpm_power_limit<F: Float>(
    model: &GravityModel<F>,
    p0: F,
    t: F,
    protocol: TpmProtocol,
) -> F {
    match protocol {
        TpmProtocol::Position => F::zero(),
        TpmProtocol::Momentum => model.force() * (p0 / model.m - model.g * t),
    }
}

/// TPM displacement distribution of a free particle:
/// `G_delta(0, d_x(t))`; the first position measurement erases `p0`.
pub fn tpm_displacement_distribution<F: Float>(
    mass: F,
    t: F,
    res: &MeasurementResolution<F>,
    hbar: F,
) -> GaussianDensity<F> {
    GaussianDensity {
        center: F::zero(),
        width: res.d_x_at(t, mass, hbar),
    }
}

/// Full simulated two-measurement chain: sample the first outcome, collapse
/// to the resolution-width Gaussian, sample the second outcome from the
/// propagated conditional, and record `w = e_f - e_i` (`e = p^2/2m` for
/// TPM_p; for TPM_x the potential-energy bookkeeping gives
/// `w = m g (x_i - x_f)`).
///
/// Each trial draws from its own counter-indexed ChaCha substream via the
/// inverse normal CDF, so the output depends only on `(seed, n_trials)`.
pub fn tpm_monte_carlo<F: Float>(
    model: &GravityModel<F>,
    packet: &GaussianPacket<F>,
    window: &TwoTimeWindow<F>,
    res: &MeasurementResolution<F>,
    protocol: TpmProtocol,
    n_trials: usize,
    seed: u64,
    hbar: F,
) -> Result<SampleSet<F>> {
    if n_trials == 0 {
        return Err(Error::InvalidParameter {
            name: "n_trials",
            reason: "must be at least 1".into(),
        });
    }
    let first = tpm_first_outcome_density(model, packet, window.t1(), protocol, hbar);
    let values = (0..n_trials)
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let r_i = first.center + first.width * standard_normal_quantile(uniform_open(&mut rng));
            let cond = tpm_conditional_density(model, r_i, window, res, protocol, hbar);
            let r_f = cond.center + cond.width * standard_normal_quantile(uniform_open(&mut rng));
            match protocol {
                TpmProtocol::Position => model.m * model.g * (r_i - r_f),
                TpmProtocol::Momentum => (r_f * r_f - r_i * r_i) / (F::of(2.0) * model.m),
            }
        })
        .collect();
    Ok(SampleSet { values, seed })
}

/// Joint TPM distribution over the four `(eps, eps')` outcome pairs of the
/// spin-precession protocol: measure `S_y` at `t = 0`, evolve the collapsed
/// eigenstate to `t = pi/2 omega`, measure `S_y` again.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinJointDistribution<F: Float> {
    /// `probs[i][j]` for `eps = +1, -1` (i = 0, 1) and likewise `eps'`.
    pub probs: [[F; 2]; 2],
}

impl<F: Float> SpinJointDistribution<F> {
    pub fn prob(&self, eps: i8, eps_prime: i8) -> F {
        self.probs[index(eps)][index(eps_prime)]
    }

    pub fn sum(&self) -> F {
        self.probs.iter().flatten().fold(F::zero(), |a, &p| a + p)
    }

    /// Paper's TPM estimator of `delta S_y`: the mean of the outcome
    /// product `(eps' hbar/2)(eps hbar/2)`.
    pub fn tpm_mean(&self, hbar: F) -> F {
        let q = hbar * F::of(0.5);
        let mut s = F::zero();
        for (i, &eps) in [F::one(), -F::one()].iter().enumerate() {
            for (j, &epsp) in [F::one(), -F::one()].iter().enumerate() {
                s += (eps * q) * (epsp * q) * self.probs[i][j];
            }
        }
        s
    }
}

fn index(eps: i8) -> usize {
    if eps >= 0 {
        0
    } else {
        1
    }
}

/// Born-rule joint distribution `p(eps) p(eps'|eps)` of the spin TPM
/// protocol for a normalized qubit preparation.
pub fn tpm_spin_joint<F: Float>(
    model: &SpinModel<F>,
    prep: &Ket<F>,
    hbar: F,
) -> Result<SpinJointDistribution<F>> {
    if prep.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: prep.len(),
        });
    }
    let norm_err = (prep.dotc(prep).re - F::one()).abs();
    if norm_err > F::of(tol::NORM) {
        return Err(Error::InvalidParameter {
            name: "prep",
            reason: "state must be normalized".into(),
        });
    }
    let h = spin_sz(hbar).scale_re(model.omega);
    let u = hamiltonian_propagator(&h, model.quarter_period(), hbar)?;
    let eigenkets = [
        crate::operator::qubit::ket_y::<F>(1),
        crate::operator::qubit::ket_y::<F>(-1),
    ];
    let mut probs = [[F::zero(); 2]; 2];
    for (i, ket_i) in eigenkets.iter().enumerate() {
        let p_first = ket_i.dotc(prep).norm_sqr();
        let evolved = u.apply(ket_i);
        for (j, ket_j) in eigenkets.iter().enumerate() {
            let p_cond = ket_j.dotc(&evolved).norm_sqr();
            probs[i][j] = p_first * p_cond;
        }
    }
    Ok(SpinJointDistribution { probs })
}

/// Open-interval uniform draw: `(k + 0.5) / 2^53` from the top 53 bits,
/// bit-stable across platforms.
fn uniform_open<F: Float>(rng: &mut ChaCha8Rng) -> F {
    let k = (rng.next_u64() >> 11) as f64;
    F::of((k + 0.5) / 9007199254740992.0)
}

/// Inverse standard normal CDF (Wichura's AS 241, double-precision branch).
pub(crate) fn standard_normal_quantile<F: Float>(p: F) -> F {
    let half = F::of(0.5);
    let q = p - half;
    if q.abs() <= F::of(0.425) {
        let r = F::of(0.180625) - q * q;
        return q * horner(r, &A) / horner(r, &B);
    }
    let mut r = if q < F::zero() { p } else { F::one() - p };
    r = (-r.ln()).sqrt();
    let num = if r <= F::of(5.0) {
        let s = r - F::of(1.6);
        horner(s, &C_COEF) / horner(s, &D_COEF)
    } else {
        let s = r - F::of(5.0);
        horner(s, &E_COEF) / horner(s, &F_COEF)
    };
    if q < F::zero() {
        -num
    } else {
        num
    }
}

fn horner<F: Float>(x: F, coeffs: &[f64]) -> F {
    coeffs
        .iter()
        .rev()
        .fold(F::zero(), |acc, &c| acc * x + F::of(c))
}

const A: [f64; 8] = [
    3.3871328727963666080e0,
    1.3314166789178437745e2,
    1.9715909503065514427e3,
    1.3731693765509461125e4,
    4.5921953931549871457e4,
    6.7265770927008700853e4,
    3.3430575583588128105e4,
    2.5090809287301226727e3,
];
const B: [f64; 8] = [
    1.0,
    4.2313330701600911252e1,
    6.8718700749205790830e2,
    5.3941960214247511077e3,
    2.1213794301586595867e4,
    3.9307895800092710610e4,
    2.8729085735721942674e4,
    5.2264952788528545610e3,
];
const C_COEF: [f64; 8] = [
    1.42343711074968357734e0,
    4.63033784615654529590e0,
    5.76949722146069140550e0,
    3.64784832476320460504e0,
    1.27045825245236838258e0,
    2.41780725177450611770e-1,
    2.27238449892691845833e-2,
    7.74545014278341407640e-4,
];
const D_COEF: [f64; 8] = [
    1.0,
    2.05319162663775882187e0,
    1.67638483018380384940e0,
    6.89767334985100004550e-1,
    1.48103976427480074590e-1,
    1.51986665636164571966e-2,
    5.47593808499534494600e-4,
    1.05075007164441684324e-9,
];
const E_COEF: [f64; 8] = [
    6.65790464350110377720e0,
    5.46378491116411436990e0,
    1.78482653991729133580e0,
    2.96560571828504891230e-1,
    2.65321895265761230930e-2,
    1.24266094738807843860e-3,
    2.71155556874348757815e-5,
    2.01033439929228813265e-7,
];
const F_COEF: [f64; 8] = [
    1.0,
    5.99832206555887937690e-1,
    1.36929880922735805310e-1,
    1.48753612908506148525e-2,
    7.86869131145613259100e-4,
    1.84631831751005468180e-6,
    1.42151175831644588870e-15,
    0.0,
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::qubit::{ket_plus, ket_y};

    fn gravity() -> GravityModel<f64> {
        GravityModel::new(1.0, 1.0).unwrap()
    }

    fn packet() -> GaussianPacket<f64> {
        GaussianPacket::new(0.0, 2.0, 1.0).unwrap()
    }

    #[test]
    fn quantile_matches_statrs() {
        use statrs::distribution::{ContinuousCDF, Normal};
        let normal = Normal::new(0.0, 1.0).unwrap();
        for i in 1..200 {
            let p = i as f64 / 200.0;
            let ours: f64 = standard_normal_quantile(p);
            let reference = normal.inverse_cdf(p);
            assert!(
                (ours - reference).abs() < 1e-8,
                "p = {p}: {ours} vs {reference}"
            );
        }
        // tail behaviour
        for &p in &[1e-12, 1e-9, 1.0 - 1e-9] {
            let ours: f64 = standard_normal_quantile(p);
            let reference = normal.inverse_cdf(p);
            assert!((ours - reference).abs() < 1e-6);
        }
    }

    #[test]
    fn first_outcome_densities() {
        let g = gravity();
        let p = packet();
        let dx = tpm_first_outcome_density(&g, &p, 0.0, TpmProtocol::Position, 1.0);
        assert!((dx.center() - p.x0).abs() < 1e-15);
        assert!((dx.width() - p.sigma_x).abs() < 1e-15);

        let dp = tpm_first_outcome_density(&g, &p, 0.0, TpmProtocol::Momentum, 1.0);
        assert!((dp.center() - p.p0).abs() < 1e-15);
        assert!((dp.width() - 0.5).abs() < 1e-15);

        // scalar oracle: x-center at t1 = 2 for packet (0, 1, 1):
        // 0 + 1*2/1 - 1*4/2 = 0
        let p2 = GaussianPacket::new(0.0, 1.0, 1.0).unwrap();
        let d2 = tpm_first_outcome_density(&g, &p2, 2.0, TpmProtocol::Position, 1.0);
        assert!(d2.center().abs() < 1e-15);
    }

    #[test]
    fn conditional_densities() {
        let g = gravity();
        let res = MeasurementResolution::new(0.1, 0.01).unwrap();

        let w0 = TwoTimeWindow::new(1.0, 1.0).unwrap();
        let dp = tpm_conditional_density(&g, 0.7, &w0, &res, TpmProtocol::Momentum, 1.0);
        assert!((dp.center() - 0.7).abs() < 1e-15);
        assert!((dp.width() - 0.01).abs() < 1e-15);

        let w1 = TwoTimeWindow::new(0.0, 1.0).unwrap();
        let dx = tpm_conditional_density(&g, 0.0, &w1, &res, TpmProtocol::Position, 1.0);
        assert!((dx.center() + 0.5).abs() < 1e-15);

        // d_x -> 0 with dt fixed: spread ~ hbar dt / 2 m d_x diverges
        let sharp = MeasurementResolution::<f64>::new(1e-6, 0.01).unwrap();
        let w = sharp.d_x_at(1.0, 1.0, 1.0);
        assert!(w > 1e5);
        assert!((w - 0.5e6).abs() / 0.5e6 < 1e-6);
    }

    #[test]
    fn work_distribution_momentum_oracle() {
        // scalar oracle on the closed form, m = g = hbar = 1,
        // packet (0, 2, 1), window [0, 1]
        let g = gravity();
        let p = packet();
        let w = TwoTimeWindow::new(0.0, 1.0).unwrap();
        let res = MeasurementResolution::new(0.1, 1e-4).unwrap();
        let d = tpm_work_distribution(&g, &p, &w, &res, TpmProtocol::Momentum, 1.0).unwrap();
        assert!((d.mean() + 1.5).abs() < 1e-15);
        assert!((d.width() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn work_distribution_position_is_time_translation_invariant() {
        let g = gravity();
        let p = packet();
        let res = MeasurementResolution::new(0.1, 1e-4).unwrap();
        let w1 = TwoTimeWindow::new(0.0, 1.0).unwrap();
        let w2 = TwoTimeWindow::new(5.0, 6.0).unwrap();
        let d1 = tpm_work_distribution(&g, &p, &w1, &res, TpmProtocol::Position, 1.0).unwrap();
        let d2 = tpm_work_distribution(&g, &p, &w2, &res, TpmProtocol::Position, 1.0).unwrap();
        assert!((d1.mean() - d2.mean()).abs() < 1e-15);
        assert!((d1.width() - d2.width()).abs() < 1e-15);
        // and the mean ignores p0
        let still = GaussianPacket::new(0.0, -3.0, 1.0).unwrap();
        let d3 = tpm_work_distribution(&g, &still, &w1, &res, TpmProtocol::Position, 1.0).unwrap();
        assert!((d1.mean() - d3.mean()).abs() < 1e-15);
    }

    #[test]
    fn work_distribution_zero_field_degenerates() {
        let g0 = GravityModel::new(1.0, 0.0).unwrap();
        let p = packet();
        let w = TwoTimeWindow::new(0.0, 1.0).unwrap();
        let res = MeasurementResolution::new(0.1, 1e-4).unwrap();
        for proto in [TpmProtocol::Position, TpmProtocol::Momentum] {
            let d = tpm_work_distribution(&g0, &p, &w, &res, proto, 1.0).unwrap();
            assert!(matches!(d, WorkDensity::PointMass { .. }));
            assert!(d.mean().abs() < 1e-15);
            assert!(d.width().abs() < 1e-15);
        }
    }

    #[test]
    fn work_distribution_rejects_coarse_momentum_resolution() {
        let g = gravity();
        let p = packet(); // sigma_p = 0.5, limit 5e-4
        let w = TwoTimeWindow::new(0.0, 1.0).unwrap();
        let res = MeasurementResolution::new(0.1, 0.01).unwrap();
        assert!(matches!(
            tpm_work_distribution(&g, &p, &w, &res, TpmProtocol::Momentum, 1.0),
            Err(Error::ResolutionTooCoarse { .. })
        ));
    }

    #[test]
    fn power_limits() {
        let g = gravity();
        assert_eq!(tpm_power_limit(&g, 123.0, 45.0, TpmProtocol::Position), 0.0);
        let p = tpm_power_limit(&g, 0.0, 1.0, TpmProtocol::Momentum);
        assert!((p - 1.0).abs() < 1e-15);
        let g0 = GravityModel::new(1.0, 0.0).unwrap();
        assert_eq!(tpm_power_limit(&g0, 2.0, 1.0, TpmProtocol::Momentum), 0.0);
    }

    #[test]
    fn displacement_distribution_erases_momentum() {
        let res = MeasurementResolution::<f64>::new(0.05, 0.01).unwrap();
        let d = tpm_displacement_distribution(1.0, 0.0, &res, 1.0);
        assert!(d.center().abs() < 1e-15);
        assert!((d.width() - 0.05).abs() < 1e-15);
        // sharp-resolution limit blows up the spread
        let sharp = MeasurementResolution::new(1e-7, 0.01).unwrap();
        let w = tpm_displacement_distribution(1.0, 1.0, &sharp, 1.0).width();
        assert!(w > 1e6);
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let g = gravity();
        let p = packet();
        let w = TwoTimeWindow::new(0.0, 1.0).unwrap();
        let res = MeasurementResolution::new(0.1, 1e-4).unwrap();
        let a = tpm_monte_carlo(&g, &p, &w, &res, TpmProtocol::Position, 500, 7, 1.0).unwrap();
        let b = tpm_monte_carlo(&g, &p, &w, &res, TpmProtocol::Position, 500, 7, 1.0).unwrap();
        assert_eq!(a, b);
        let c = tpm_monte_carlo(&g, &p, &w, &res, TpmProtocol::Position, 500, 8, 1.0).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn monte_carlo_converges_to_analytic() {
        let g = gravity();
        let p = packet();
        let w = TwoTimeWindow::new(0.0, 1.0).unwrap();
        let res = MeasurementResolution::new(0.1, 1e-4).unwrap();
        let n = 100_000;
        for proto in [TpmProtocol::Position, TpmProtocol::Momentum] {
            let analytic = tpm_work_distribution(&g, &p, &w, &res, proto, 1.0).unwrap();
            let samples = tpm_monte_carlo(&g, &p, &w, &res, proto, n, 42, 1.0).unwrap();
            let tol_mean = 4.0 * analytic.width() / (n as f64).sqrt();
            assert!(
                (samples.mean() - analytic.mean()).abs() < tol_mean,
                "{proto:?}: {} vs {}",
                samples.mean(),
                analytic.mean()
            );
            assert!((samples.std() - analytic.width()).abs() / analytic.width() < 0.05);
        }
    }

    #[test]
    fn spin_joint_plus_state_is_uniform() {
        let model = SpinModel::new(2.0).unwrap();
        let joint = tpm_spin_joint(&model, &ket_plus::<f64>(), 1.0).unwrap();
        for eps in [1, -1] {
            for epsp in [1, -1] {
                assert!((joint.prob(eps, epsp) - 0.25).abs() < 1e-14);
            }
        }
        assert!((joint.sum() - 1.0).abs() < 1e-14);
        assert!(joint.tpm_mean(1.0).abs() < 1e-14);
    }

    #[test]
    fn spin_joint_y_eigenstate_prep() {
        // 2x2 Born-rule oracle: prep |y+> gives p(eps=+1) = 1 and
        // conditionals 1/2 each
        let model = SpinModel::new(2.0).unwrap();
        let joint = tpm_spin_joint(&model, &ket_y::<f64>(1), 1.0).unwrap();
        assert!((joint.prob(1, 1) - 0.5).abs() < 1e-14);
        assert!((joint.prob(1, -1) - 0.5).abs() < 1e-14);
        assert!(joint.prob(-1, 1).abs() < 1e-14);
        assert!(joint.prob(-1, -1).abs() < 1e-14);
    }

    #[test]
    fn spin_joint_rejects_unnormalized_prep() {
        let model = SpinModel::new(2.0).unwrap();
        let bad = ket_plus::<f64>() * crate::cr(2.0);
        assert!(tpm_spin_joint(&model, &bad, 1.0).is_err());
    }
}
