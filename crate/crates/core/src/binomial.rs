//! Exact binomial coefficients.

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("C({n}, {k}) does not fit in 64 bits")]
pub struct ArithmeticOverflow {
    pub n: u64,
    pub k: u64,
}

/// `C(n, k)` computed exactly, `0` when `k > n`.
///
/// The running product `C(n-k+i, i)` is accumulated in 128 bits; each step
/// divides exactly, so intermediate values never exceed `C(n, k) * n`.
pub fn binomial(n: u64, k: u64) -> Result<u64, ArithmeticOverflow> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        let factor = u128::from(n - k + i);
        acc = acc.checked_mul(factor).ok_or(ArithmeticOverflow { n, k })? / u128::from(i);
        if acc > u128::from(u64::MAX) {
            return Err(ArithmeticOverflow { n, k });
        }
    }
    Ok(acc as u64)
}
