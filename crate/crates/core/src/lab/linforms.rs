//! Minimum of `Σ|ℓ_i(x)| + |Σ ℓ_i(x)|` over nonzero integer vectors.

use num::{Signed, Zero};

use crate::body::special::polar_zonotope;
use crate::error::{Error, Result};
use crate::exact::rational::{max_abs, vscale, Rational};
use crate::exact::RatMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormsMinimum {
    pub value: Rational,
    pub argmin: Vec<i64>,
    /// The sublevel set at `value` lies inside the searched box, so no
    /// vector outside it does better.
    pub certified: bool,
}

/// `Σ|y_i| + |Σ y_i|` at `y = A x`.
pub fn forms_value(a: &RatMatrix, x: &[i64]) -> Rational {
    let xr: Vec<Rational> = x.iter().map(|&v| Rational::from_integer(v.into())).collect();
    let y = a.mul_vec(&xr);
    let s: Rational = y.iter().sum();
    y.iter().map(|v| v.abs()).sum::<Rational>() + s.abs()
}

/// Ties go to the shortest vector in the 1-norm, then to the
/// lexicographically largest, so `e_1` beats `e_2` and `-e_1`.
fn better(x: &[i64], y: &[i64]) -> bool {
    let nx: i64 = x.iter().map(|v| v.abs()).sum();
    let ny: i64 = y.iter().map(|v| v.abs()).sum();
    nx < ny || (nx == ny && x > y)
}

/// Exhaustive minimum over `0 < ||x||_∞ <= radius`.
pub fn linear_forms_minimum(a: &RatMatrix, radius: i64) -> Result<FormsMinimum> {
    if !a.is_square() {
        return Err(Error::Dimension("forms matrix must be square".into()));
    }
    if radius < 1 {
        return Err(Error::InvalidArgument("search radius must be at least 1".into()));
    }
    let n = a.rows();
    let side = 2 * radius as u128 + 1;
    if n == 0 || side.checked_pow(n as u32).map_or(true, |c| c > 50_000_000) {
        return Err(Error::Budget(format!("box of radius {radius} in dimension {n} is too large")));
    }
    let inv = a.inverse()?;
    let mut best: Option<(Rational, Vec<i64>)> = None;
    let mut x = vec![-radius; n];
    loop {
        if x.iter().any(|v| *v != 0) {
            let f = forms_value(a, &x);
            let replace = match &best {
                None => true,
                Some((b, bx)) => f < *b || (f == *b && better(&x, bx)),
            };
            if replace {
                best = Some((f, x.clone()));
            }
        }
        let mut j = 0;
        while j < n && x[j] == radius {
            x[j] = -radius;
            j += 1;
        }
        if j == n {
            break;
        }
        x[j] += 1;
    }
    let (value, argmin) = best.expect("box has nonzero points");
    // {f <= value} = value * A^{-1} Z*, with Z* the polar zonotope
    let reach = polar_zonotope(n)?
        .vertices()
        .iter()
        .map(|v| max_abs(&inv.mul_vec(&vscale(v, &value))))
        .max()
        .unwrap_or_else(Rational::zero);
    let certified = reach <= Rational::from_integer(radius.into()) && value.is_positive();
    Ok(FormsMinimum { value, argmin, certified })
}
