//! Scalar abstractions shared by every operator in the crate.
//!
//! [`Real`] is the floating-point field the nodes live in (`f32` or `f64`).
//! [`Scalar`] is any matrix entry: a real or a `Complex<Real>`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::Neg;

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign, NumCast};

/// Entry type of a dense matrix.
pub trait Scalar:
    Copy + PartialEq + Debug + Send + Sync + NumAssign + Neg<Output = Self> + Sum + 'static
{
    type Real: Real;

    fn from_real(r: Self::Real) -> Self;
    fn re(self) -> Self::Real;
    fn im(self) -> Self::Real;
    fn conj(self) -> Self;
    /// Absolute value (modulus for complex entries).
    fn modulus(self) -> Self::Real;
    fn finite(self) -> bool;
}

/// Real floating-point field.
pub trait Real:
    Scalar<Real = Self> + Float + FloatConst + NumAssign + Display + LowerExp + Default
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("f64 literal representable")
    }

    fn from_usize(n: usize) -> Self {
        <Self as NumCast>::from(n).expect("integer representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite float")
    }
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Scalar for $t {
            type Real = $t;

            #[inline]
            fn from_real(r: $t) -> Self {
                r
            }
            #[inline]
            fn re(self) -> $t {
                self
            }
            #[inline]
            fn im(self) -> $t {
                0.0
            }
            #[inline]
            fn conj(self) -> Self {
                self
            }
            #[inline]
            fn modulus(self) -> $t {
                self.abs()
            }
            #[inline]
            fn finite(self) -> bool {
                <$t>::is_finite(self)
            }
        }

        impl Real for $t {}
    };
}

impl_real!(f32);
impl_real!(f64);

impl<T: Real> Scalar for Complex<T> {
    type Real = T;

    #[inline]
    fn from_real(r: T) -> Self {
        Complex::new(r, T::zero())
    }
    #[inline]
    fn re(self) -> T {
        self.re
    }
    #[inline]
    fn im(self) -> T {
        self.im
    }
    #[inline]
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    #[inline]
    fn modulus(self) -> T {
        self.norm()
    }
    #[inline]
    fn finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// `i`, the imaginary unit.
pub fn imag_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}
