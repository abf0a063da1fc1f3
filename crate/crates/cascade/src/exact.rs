//! Exact rational verification for the order-one solution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::CascadeError;

/// The tent `max{0, 1 - |x|}`, exactly.
pub fn tent(x: &BigRational) -> BigRational {
    let one = BigRational::one();
    let a = x.abs();
    if a >= one {
        BigRational::zero()
    } else {
        one - a
    }
}

/// A continuous piecewise-linear function with exact rational breakpoints,
/// identically zero outside its breakpoint span (so the first and last
/// values must be zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    breakpoints: Vec<BigRational>,
    values: Vec<BigRational>,
}

impl PiecewiseLinear {
    pub fn new(
        breakpoints: Vec<BigRational>,
        values: Vec<BigRational>,
    ) -> Result<PiecewiseLinear, CascadeError> {
        if breakpoints.len() != values.len() {
            return Err(CascadeError::BadPiecewise(
                "breakpoint and value counts differ".to_string(),
            ));
        }
        if breakpoints.len() < 2 {
            return Err(CascadeError::BadPiecewise(
                "need at least two breakpoints".to_string(),
            ));
        }
        if !breakpoints.windows(2).all(|w| w[0] < w[1]) {
            return Err(CascadeError::BadPiecewise(
                "breakpoints must strictly increase".to_string(),
            ));
        }
        let ends_zero = values.first().unwrap().is_zero() && values.last().unwrap().is_zero();
        if !ends_zero {
            return Err(CascadeError::BadPiecewise(
                "end values must be zero for continuity with the outside".to_string(),
            ));
        }
        Ok(PiecewiseLinear {
            breakpoints,
            values,
        })
    }

    /// The unit tent as a piecewise-linear function.
    pub fn tent_unit() -> PiecewiseLinear {
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        PiecewiseLinear::new(vec![r(-1), r(0), r(1)], vec![r(0), r(1), r(0)])
            .expect("tent data is well formed")
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Exact evaluation: zero outside the span, linear interpolation inside.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let first = self.breakpoints.first().unwrap();
        let last = self.breakpoints.last().unwrap();
        if x <= first || x >= last {
            return BigRational::zero();
        }
        // Last index with breakpoint <= x.
        let i = match self.breakpoints.binary_search(x) {
            Ok(i) => return self.values[i].clone(),
            Err(ins) => ins - 1,
        };
        let (x0, x1) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
        let (y0, y1) = (&self.values[i], &self.values[i + 1]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

/// Verify `tent(x/2) = (1/2)[tent(x-1) + tent(x+1) + 2 tent(x)]` exactly at
/// every given point; this is the dilation equation at `q = 1/2`.
pub fn exact_check_n1(points: &[BigRational]) -> bool {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let half = &one / &two;
    points.iter().all(|x| {
        let lhs = tent(&(x / &two));
        let rhs = &half * (tent(&(x - &one)) + tent(&(x + &one)) + &two * tent(x));
        lhs == rhs
    })
}
