//! Lambert W and the variable-count lower bound it yields.
//!
//! Inverting the length formula `L ≈ d·n·ln n` (with `d = 15/ln 2`) for `n`
//! runs through the Lambert W function: `n ln n = L/d` gives
//! `ln n = W(L/d)`. With the standard expansion `W(x) = ln x − ln ln x +
//! o(1)`, dropping the `o(1)` and the `ln ln` growth conservatively yields
//! the closed-form lower bound `n ≥ L / (2d·ln L)` — crude, but one-sided,
//! which is what a lower bound must be.

use num_traits::Float;
use thiserror::Error;

/// `d = 15/ln 2 ≈ 21.6404`: the slope of the logarithmic-cost instance
/// length measured in `n ln n` units.
pub const ENCODING_SLOPE_D: f64 = 15.0 / std::f64::consts::LN_2;

#[derive(Debug, Error, PartialEq)]
pub enum LambertError {
    #[error("lambert_w is implemented on the branch x >= e, got {0}")]
    Domain(f64),
    #[error("n_lower_bound needs encoded_bits > d (i.e. >= 22), got {0}")]
    BelowSlope(u64),
}

/// Halley iteration for `w·e^w = x`, seeded with `ln x − ln ln x`.
/// Assumes `x ≥ e` so the seed is well-defined and the branch is principal.
fn lambert_w_kernel<T: Float>(x: T) -> T {
    let mut w = x.ln() - x.ln().ln();
    let tol = T::epsilon() * T::from(4).unwrap();
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        if f.abs() <= tol * x {
            break;
        }
        let wp1 = w + T::one();
        let denom = ew * wp1 - (w + T::from(2).unwrap()) * f / (wp1 + wp1);
        let next = w - f / denom;
        if next == w {
            break;
        }
        w = next;
    }
    w
}

/// Principal-branch Lambert W for `x ≥ e`, good to machine precision
/// (residual `|W·e^W − x| / x` comfortably under 1e-12 across `[e, 1e30]`).
pub fn lambert_w(x: f64) -> Result<f64, LambertError> {
    if x.is_nan() || x < std::f64::consts::E {
        return Err(LambertError::Domain(x));
    }
    Ok(lambert_w_kernel(x))
}

/// Lower bound on the variable count of any instance whose logarithmic-cost
/// encoding spends `encoded_bits` bits: `⌈L / (2d·ln L)⌉`.
///
/// Defined for `L ≥ 22` (the derivation divides by `ln L − ln d`, which must
/// be positive, and `d ≈ 21.64`).
pub fn n_lower_bound(encoded_bits: u64) -> Result<u64, LambertError> {
    if encoded_bits < 22 {
        return Err(LambertError::BelowSlope(encoded_bits));
    }
    let l = encoded_bits as f64;
    let bound = l / (2.0 * ENCODING_SLOPE_D * l.ln());
    Ok(bound.ceil() as u64)
}
