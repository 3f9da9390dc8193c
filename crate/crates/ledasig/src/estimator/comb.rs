//! Binomials and sums in the log domain.

use crate::error::{Error, Result};

/// `log2 C(n, k)`. Exact below `n = 65`, log-gamma above.
pub fn log2_binom(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::Domain(format!("C({n}, {k}) with k > n")));
    }
    Ok(lb(n as i64, k as i64))
}

/// `log2 C(n, k)`, or `-inf` when the coefficient vanishes.
pub(crate) fn lb(n: i64, k: i64) -> f64 {
    if n < 0 || k < 0 || k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    if n <= 64 {
        let mut c: u128 = 1;
        for i in 0..k as u128 {
            c = c * (n as u128 - i) / (i + 1);
        }
        return (c as f64).log2();
    }
    ln_binom(n as f64, k as f64) / std::f64::consts::LN_2
}

/// `ln C(n, k)` through log-gamma, for real arguments.
pub(crate) fn ln_binom(n: f64, k: f64) -> f64 {
    libm::lgamma(n + 1.0) - libm::lgamma(k + 1.0) - libm::lgamma(n - k + 1.0)
}

/// `log2 sum 2^x`. Empty or all `-inf` input gives `-inf`.
pub fn log2_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|&x| (x - m).exp2()).sum::<f64>().log2()
}

/// `ln sum e^x`, same conventions.
pub(crate) fn ln_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|&x| (x - m).exp()).sum::<f64>().ln()
}

/// `ln(e^a + e^b)`.
pub(crate) fn ln_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

pub(crate) fn log2_or_neg_inf(x: f64) -> f64 {
    if x > 0.0 {
        x.log2()
    } else {
        f64::NEG_INFINITY
    }
}
