//! Scalar abstraction: every numerical routine in this crate is generic over
//! a real floating-point type implementing [`Float`].

use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar for all numerics: `f32` or `f64`.
///
/// Combines the field operations and elementary functions of
/// [`nalgebra::RealField`] with the FFT requirements of [`rustfft::FftNum`].
pub trait Float: nalgebra::RealField + rustfft::FftNum + ToPrimitive + Copy {
    /// Lossy conversion from an `f64` literal.
    fn of(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("finite f64 converts to any Float")
    }

    /// Widening conversion for reporting and serialization.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("real scalar converts to f64")
    }

    /// Complex unit `i`.
    fn i() -> Complex<Self> {
        Complex::new(Self::zero(), Self::one())
    }
}

impl Float for f32 {}
impl Float for f64 {}

/// Complex number over the crate scalar.
pub type C<F> = Complex<F>;

/// Real part promoted to a complex value.
pub fn cr<F: Float>(re: F) -> C<F> {
    Complex::new(re, F::zero())
}

/// Complex value from real and imaginary parts.
pub fn c<F: Float>(re: F, im: F) -> C<F> {
    Complex::new(re, im)
}

/// `r e^{i theta}`.
pub fn polar<F: Float>(r: F, theta: F) -> C<F> {
    Complex::new(r * theta.cos(), r * theta.sin())
}

/// Unit phase `e^{i theta}`.
pub fn phase<F: Float>(theta: F) -> C<F> {
    polar(F::one(), theta)
}

/// Modulus access for complex values over a generic scalar
/// (`num_complex::Complex::norm` is only defined for the concrete float
/// types).
pub trait ComplexScalar<F> {
    fn magnitude(&self) -> F;
}

impl<F: Float> ComplexScalar<F> for C<F> {
    fn magnitude(&self) -> F {
        self.norm_sqr().sqrt()
    }
}
