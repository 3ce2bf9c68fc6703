//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// A real number the scoring, selection and statistics code can run on.
///
/// Implemented for `f32` and `f64`. Special functions that have no generic
/// implementation (the Student-t tail) are evaluated in `f64` and converted back.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + serde::Serialize
    + serde::de::DeserializeOwned
    + 'static
{
    /// Converts an `f64` literal, panicking only if the target type cannot hold
    /// a finite value (never the case for `f32`/`f64`).
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("scalar conversion from f64")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("scalar conversion from usize")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Sum that skips the usual left-fold bias on long ledgers by pairing terms.
pub fn sum<F: Scalar>(values: &[F]) -> F {
    match values.len() {
        0 => F::zero(),
        1 => values[0],
        n => {
            let (a, b) = values.split_at(n / 2);
            sum(a) + sum(b)
        }
    }
}

pub fn mean<F: Scalar>(values: &[F]) -> F {
    sum(values) / F::from_usize_lossy(values.len())
}

/// Sample variance (denominator n - 1). Returns zero for fewer than two values.
pub fn sample_variance<F: Scalar>(values: &[F]) -> F {
    if values.len() < 2 {
        return F::zero();
    }
    let m = mean(values);
    let sq: Vec<F> = values.iter().map(|&v| (v - m) * (v - m)).collect();
    sum(&sq) / F::from_usize_lossy(values.len() - 1)
}

pub fn sample_sd<F: Scalar>(values: &[F]) -> F {
    sample_variance(values).sqrt()
}
