//! Observable-based work statistics, two-time pseudo-probabilities, the
//! work-energy uncertainty relation, steering of work, and
//! conservation-as-element-of-reality checks.

use crate::dynamics::{heisenberg_evolve, TwoTimeWindow};
use crate::error::{Error, Result};
use crate::grid::GaussianPacket;
use crate::models::{gravity_work_eigenvalue, GravityModel};
use crate::operator::{
    anticommutator, hermitian_eigensystem, DensityOperator, Ket, Operator,
};
use crate::scalar::{ComplexScalar, Float, C};
use crate::tol;
use crate::tpm::WorkDensity;

/// Work distribution attached to the window it was derived for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkDistribution<F: Float> {
    pub density: WorkDensity<F>,
    pub window: TwoTimeWindow<F>,
}

/// Pushes the momentum density `G(p0, hbar/2 sigma_x)` of a Gaussian
/// preparation through the eigenvalue map
/// `w = -g dt p + m g^2 (t2^2 - t1^2)/2`.
///
/// A degenerate window (or vanishing field) collapses the distribution to
/// an explicit point mass at 0.
pub fn work_distribution_observable<F: Float>(
    model: &GravityModel<F>,
    packet: &GaussianPacket<F>,
    window: &TwoTimeWindow<F>,
    hbar: F,
) -> WorkDistribution<F> {
    let slope = -model.g * window.dt();
    let center = gravity_work_eigenvalue(model, window, packet.p0);
    let width = slope.abs() * packet.sigma_p(hbar);
    WorkDistribution {
        density: WorkDensity::from_center_width(center, width),
        window: *window,
    }
}

/// Displacement statistics when displacement is treated as the observable
/// `P dt / m`: the momentum density `G(p0, sigma_p)` pushed through
/// `delta = p dt / m`.
pub fn displacement_distribution_observable<F: Float>(
    packet: &GaussianPacket<F>,
    mass: F,
    window: &TwoTimeWindow<F>,
    hbar: F,
) -> WorkDensity<F> {
    let dt = window.dt();
    WorkDensity::from_center_width(packet.p0 * dt / mass, packet.sigma_p(hbar) * dt / mass)
}

/// Raw moment `<w^k>` of a work distribution, `k = 1..=4` (Gaussian closed
/// forms).
pub fn work_moments<F: Float>(dist: &WorkDistribution<F>, k: u32) -> Result<F> {
    if k == 0 || k > 4 {
        return Err(Error::UnsupportedMoment(k));
    }
    match dist.density {
        WorkDensity::PointMass { value } => Ok(value.powi(k as i32)),
        WorkDensity::Gaussian(g) => {
            let mu = g.center();
            let s2 = g.width() * g.width();
            let three = F::of(3.0);
            Ok(match k {
                1 => mu,
                2 => mu * mu + s2,
                3 => mu * mu * mu + three * mu * s2,
                _ => {
                    mu * mu * mu * mu + F::of(6.0) * mu * mu * s2 + three * s2 * s2
                }
            })
        }
    }
}

/// The Hermitian, unit-trace, generally non-positive operator
/// `Gamma_a(t1) = {rho0, Lambda_a(t1)} / 2 p(a, t1)` together with its
/// weight `p(a, t1)`.
#[derive(Debug, Clone)]
pub struct PseudoState<F: Float> {
    pub op: Operator<F>,
    pub weight: F,
}

impl<F: Float> PseudoState<F> {
    pub fn min_eigenvalue(&self) -> F {
        let eig = self.op.matrix().clone().symmetric_eigen();
        eig.eigenvalues.iter().fold(F::zero(), |m, &l| m.min(l))
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.min_eigenvalue() >= -F::of(tol::PSD)
    }

    /// `<v| Gamma |v>`.
    pub fn expectation_ket(&self, v: &Ket<F>) -> C<F> {
        self.op.expectation_ket(v)
    }
}

/// Builds the pseudo-state of a first-measurement outcome: the projector is
/// carried to `t1` by `t1_unitary`, then symmetrized against `rho0` and
/// normalized by the outcome weight.
pub fn gamma_pseudo_state<F: Float>(
    rho0: &DensityOperator<F>,
    projector: &Operator<F>,
    t1_unitary: &Operator<F>,
) -> Result<PseudoState<F>> {
    let idem = (&(projector * projector) - projector).max_abs();
    if idem > F::of(tol::RECON) {
        return Err(Error::NotProjector {
            residual: idem.as_f64(),
        });
    }
    let lambda_t1 = heisenberg_evolve(projector, t1_unitary)?;
    let weight = lambda_t1.expectation(rho0).re;
    if weight <= F::of(tol::PSD) {
        return Err(Error::VanishingWeight {
            weight: weight.as_f64(),
        });
    }
    // anticommutator() already carries the 1/2
    let gamma = anticommutator(rho0.operator(), &lambda_t1)?.scale_re(F::one() / weight);
    Ok(PseudoState { op: gamma, weight })
}

/// Two-time mean `<C>(t2, t1) = Tr[ (1/2){A(t1), B(t2)} rho0 ]` with
/// `A(t1) = u1^dag a u1` and `B(t2) = u2^dag b u2`.
pub fn two_time_mean<F: Float>(
    a: &Operator<F>,
    b: &Operator<F>,
    u1: &Operator<F>,
    u2: &Operator<F>,
    rho0: &DensityOperator<F>,
) -> Result<F> {
    let a_t1 = heisenberg_evolve(a, u1)?;
    let b_t2 = heisenberg_evolve(b, u2)?;
    let c = anticommutator(&a_t1, &b_t2)?;
    Ok(c.expectation(rho0).re)
}

/// TPM-style prescription `sum_ab a b p(b, t2 | a, t1) p(a, t1)` with
/// `p(b|a) = Tr[Lambda_b(t2) Lambda_a(t1)]`; generally differs from
/// [`two_time_mean`].
pub fn two_time_tpm_mean<F: Float>(
    a: &Operator<F>,
    b: &Operator<F>,
    u1: &Operator<F>,
    u2: &Operator<F>,
    rho0: &DensityOperator<F>,
) -> Result<F> {
    let a_t1 = heisenberg_evolve(a, u1)?;
    let b_t2 = heisenberg_evolve(b, u2)?;
    let a_sys = hermitian_eigensystem(&a_t1)?;
    let b_sys = hermitian_eigensystem(&b_t2)?;
    let mut total = F::zero();
    for ca in &a_sys {
        let weight = ca.projector.expectation(rho0).re;
        for cb in &b_sys {
            let cond = (cb.projector.matrix() * ca.projector.matrix()).trace().re;
            total += ca.eigenvalue * cb.eigenvalue * cond * weight;
        }
    }
    Ok(total)
}

/// Outcome of the work-energy uncertainty relation
/// `sigma_W (sigma_H1 + sigma_H2) >= |<[H1, H2]>|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyCheck<F: Float> {
    pub lhs: F,
    pub rhs: F,
    pub satisfied: bool,
}

fn operator_sigma<F: Float>(o: &Operator<F>, rho: &DensityOperator<F>) -> F {
    let mean = o.expectation(rho).re;
    let second = (o * o).expectation(rho).re;
    (second - mean * mean).max(F::zero()).sqrt()
}

/// Evaluates the two-time uncertainty relation. The relation is derived
/// under `w = h2 - h1`, which is enforced as a precondition.
pub fn uncertainty_relation_check<F: Float>(
    w: &Operator<F>,
    h1: &Operator<F>,
    h2: &Operator<F>,
    rho0: &DensityOperator<F>,
) -> Result<UncertaintyCheck<F>> {
    let residual = w.max_abs_diff(&(h2 - h1));
    let scale = F::one().max(h1.max_abs()).max(h2.max_abs());
    if residual > F::of(tol::RECON) * scale {
        return Err(Error::NotEnergyDifference {
            residual: residual.as_f64(),
        });
    }
    let lhs = operator_sigma(w, rho0) * (operator_sigma(h1, rho0) + operator_sigma(h2, rho0));
    let rhs = crate::operator::commutator_expectation(h1, h2, rho0)?.magnitude();
    let satisfied = lhs >= rhs - F::of(tol::RECON);
    Ok(UncertaintyCheck {
        lhs,
        rhs,
        satisfied,
    })
}

/// Ancilla branch labels of the steering scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    A,
    ABar,
}

/// Alice-Bob preparation `|Psi> = alpha |a>|w_1> + beta |a_bar>|w_2>`:
/// orthogonal ancilla branches tagging two work eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringEnsemble<F: Float> {
    alpha: C<F>,
    beta: C<F>,
    branch_work_values: (F, F),
}

impl<F: Float> SteeringEnsemble<F> {
    pub fn new(alpha: C<F>, beta: C<F>, branch_work_values: (F, F)) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - F::one()).abs() > F::of(tol::NORM) {
            return Err(Error::InvalidParameter {
                name: "alpha/beta",
                reason: "|alpha|^2 + |beta|^2 must equal 1".into(),
            });
        }
        Ok(Self {
            alpha,
            beta,
            branch_work_values,
        })
    }

    pub fn branch_probabilities(&self) -> (F, F) {
        (self.alpha.norm_sqr(), self.beta.norm_sqr())
    }

    /// Mean and standard deviation of work over the branch mixture, i.e.
    /// before Alice measures.
    pub fn premeasurement_work_stats(&self) -> (F, F) {
        let (pa, pb) = self.branch_probabilities();
        let (wa, wb) = self.branch_work_values;
        let mean = pa * wa + pb * wb;
        let second = pa * wa * wa + pb * wb * wb;
        (mean, (second - mean * mean).max(F::zero()).sqrt())
    }
}

/// Alice's measurement collapses the pair to one branch: the work value in
/// Bob's laboratory materializes with the branch probability.
pub fn steering_collapse<F: Float>(
    ensemble: &SteeringEnsemble<F>,
    alice_outcome: Branch,
) -> (F, F) {
    let (pa, pb) = ensemble.branch_probabilities();
    match alice_outcome {
        Branch::A => (ensemble.branch_work_values.0, pa),
        Branch::ABar => (ensemble.branch_work_values.1, pb),
    }
}

/// For `u_t` generated by `h_total`, the Heisenberg difference
/// `Delta H = H(t2) - H(t1)` vanishes identically; returns
/// `(<Delta H>, sigma_{Delta H})`, both zero within tolerance for every
/// preparation.
pub fn conservation_element_of_reality<F: Float>(
    rho0: &DensityOperator<F>,
    h_total: &Operator<F>,
    u_t1: &Operator<F>,
    u_t2: &Operator<F>,
) -> Result<(F, F)> {
    let scale = F::one().max(h_total.max_abs());
    for u in [u_t1, u_t2] {
        let comm = (&(u * h_total) - &(h_total * u)).max_abs();
        if comm > F::of(tol::RECON) * scale {
            return Err(Error::NotGeneratedBy {
                residual: comm.as_f64(),
            });
        }
    }
    let h1 = heisenberg_evolve(h_total, u_t1)?;
    let h2 = heisenberg_evolve(h_total, u_t2)?;
    let delta = &h2 - &h1;
    let mean = delta.expectation(rho0).re;
    let sigma = operator_sigma(&delta, rho0);
    Ok((mean, sigma))
}

/// Residual of `rho` being an eigen-operator of `w`:
/// `max |(w rho - lambda rho)_ij|` with `lambda = Tr[w rho] / Tr[rho]`.
///
/// Used to probe whether time-averaged projector images remain work
/// eigenstates; nothing is asserted about when this vanishes.
pub fn eigenoperator_residual<F: Float>(w: &Operator<F>, rho: &Operator<F>) -> F {
    let tr = rho.trace().re;
    let lambda = (w * rho).trace().re / tr;
    (&(w * rho) - &rho.scale_re(lambda)).max_abs()
}
