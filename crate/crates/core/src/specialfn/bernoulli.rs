use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Number of even Bernoulli numbers kept in the table (B_2 .. B_60).
pub const TABLE_PAIRS: usize = 30;

/// Exact Bernoulli numbers `B_0 ..= B_n` (convention `B_1 = +1/2`) by the
/// Akiyama-Tanigawa algorithm.
pub fn bernoulli_exact(n: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::from(1), BigInt::from(m as u64 + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * BigRational::from_integer(BigInt::from(j as u64));
        }
        out.push(a[0].clone());
    }
    out
}

/// `B_{2k}` as doubles for `k = 1..=TABLE_PAIRS`, computed once from the
/// exact rationals. Index 0 holds `B_2`.
pub fn even_bernoulli() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let exact = bernoulli_exact(2 * TABLE_PAIRS);
        (1..=TABLE_PAIRS)
            .map(|k| {
                let b = &exact[2 * k];
                debug_assert!(!b.is_zero());
                b.to_f64().expect("Bernoulli number in double range")
            })
            .collect()
    })
}
