//! Seeded generation of random operators and states for property suites
//! and the randomized CLI experiments. ChaCha-based, so every draw is
//! reproducible from the seed.

use nalgebra::{DMatrix, DVector};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::operator::{DensityOperator, Ket, Operator};
use crate::scalar::{cr, Float, C};

/// Deterministic sampler over the crate scalar.
pub struct SeededSampler<F: Float> {
    rng: ChaCha8Rng,
    _marker: std::marker::PhantomData<F>,
}

impl<F: Float> SeededSampler<F> {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            _marker: std::marker::PhantomData,
        }
    }

    /// Uniform draw on the open interval (0, 1).
    pub fn uniform(&mut self) -> F {
        let k = (self.rng.next_u64() >> 11) as f64;
        F::of((k + 0.5) / 9007199254740992.0)
    }

    /// Uniform draw on [lo, hi].
    pub fn uniform_in(&mut self, lo: F, hi: F) -> F {
        lo + (hi - lo) * self.uniform()
    }

    pub fn usize_in(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        let span = (hi_inclusive - lo + 1) as u64;
        lo + (self.rng.next_u64() % span) as usize
    }

    /// Standard normal draw through the inverse CDF.
    pub fn normal(&mut self) -> F {
        crate::tpm::standard_normal_quantile(self.uniform())
    }

    fn complex_normal(&mut self) -> C<F> {
        C::new(self.normal(), self.normal())
    }

    /// Random Hermitian matrix with O(1) entries.
    pub fn hermitian(&mut self, dim: usize) -> Operator<F> {
        let a = DMatrix::from_fn(dim, dim, |_, _| self.complex_normal());
        let h = (&a + a.adjoint()) * cr(F::of(0.5));
        Operator::new(h).expect("square by construction")
    }

    /// Haar-ish random unitary from the QR factor of a Ginibre matrix.
    pub fn unitary(&mut self, dim: usize) -> Operator<F> {
        let g = DMatrix::from_fn(dim, dim, |_, _| self.complex_normal());
        let q = g.qr().q();
        Operator::new(q).expect("square by construction")
    }

    /// Random full-rank density operator `G G^dag / Tr`.
    pub fn density(&mut self, dim: usize) -> DensityOperator<F> {
        let g = DMatrix::from_fn(dim, dim, |_, _| self.complex_normal());
        let rho = &g * g.adjoint();
        let tr = rho.trace().re;
        let rho = rho / cr(tr);
        // symmetrize against roundoff before validation
        let rho = (rho.clone() + rho.adjoint()) * cr(F::of(0.5));
        DensityOperator::new(Operator::new(rho).expect("square by construction"))
            .expect("Wishart normalization yields a valid state")
    }

    /// Random normalized pure state.
    pub fn pure_state(&mut self, dim: usize) -> Ket<F> {
        let v = DVector::from_fn(dim, |_, _| self.complex_normal());
        let n = v.dotc(&v).re.sqrt();
        v / cr(n)
    }
}
