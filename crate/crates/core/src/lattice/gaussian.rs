use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Exact nonnegative integer produced by the counting formulas.
pub type GaussianInt = BigUint;

/// (p)_k = (p - 1)(p^2 - 1) ... (p^k - 1); (p)_0 = 1.
pub fn q_pochhammer(p: u64, k: usize) -> BigUint {
    let p = BigUint::from(p);
    let mut acc = BigUint::one();
    let mut pow = BigUint::one();
    for _ in 0..k {
        pow *= &p;
        acc *= &pow - 1u32;
    }
    acc
}

/// Number of `l`-dimensional subspaces of F_p^n, (p)_n / ((p)_l (p)_{n-l}).
/// Returns 0 when `l > n`.
pub fn gaussian_binomial(n: usize, l: usize, p: u64) -> GaussianInt {
    if l > n {
        return BigUint::zero();
    }
    let num = q_pochhammer(p, n);
    let den = q_pochhammer(p, l) * q_pochhammer(p, n - l);
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// Ordinary binomial coefficient; 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
