//! Scalar abstraction shared by every numeric module.
//!
//! All values live in `Complex<R>` where `R` is a real floating-point type.
//! Tolerances are written as `f64` literals and converted with [`Real::lit`].

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point type backing the complex scalars (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Magnitude below which a leading polynomial coefficient counts as zero.
    fn coeff_floor() -> Self;

    /// Converts an `f64` literal (tolerance, sample point, ...) into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    #[inline]
    fn coeff_floor() -> Self {
        1e-14
    }
}

impl Real for f32 {
    #[inline]
    fn coeff_floor() -> Self {
        1e-6
    }
}

/// Complex scalar over `R`.
pub type Cx<R> = Complex<R>;

#[inline]
pub fn cx<R: Real>(re: f64, im: f64) -> Cx<R> {
    Complex::new(R::lit(re), R::lit(im))
}

#[inline]
pub fn re<R: Real>(x: f64) -> Cx<R> {
    Complex::new(R::lit(x), R::zero())
}

#[inline]
pub fn from_usize<R: Real>(k: usize) -> Cx<R> {
    Complex::new(R::from_usize(k).expect("small integer"), R::zero())
}

/// Total order on complex numbers by (Re, Im), NaN last.
pub fn cmp_re_im<R: Real>(a: &Cx<R>, b: &Cx<R>) -> std::cmp::Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
}

/// Binomial coefficient as a real number.
pub fn binomial<R: Real>(n: usize, k: usize) -> R {
    if k > n {
        return R::zero();
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    R::lit(acc.round())
}

/// Euclidean norm of a complex vector.
pub fn norm2<R: Real>(v: &[Cx<R>]) -> R {
    v.iter().map(|c| c.norm_sqr()).sum::<R>().sqrt()
}

/// Max-modulus norm of a complex vector.
pub fn norm_inf<R: Real>(v: &[Cx<R>]) -> R {
    v.iter().map(|c| c.norm()).fold(R::zero(), R::max)
}
