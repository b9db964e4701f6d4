//! Exact rational scalars and the combinatorial numbers built on them.
//!
//! Bernoulli numbers follow the `x/(e^x - 1)` convention, so `B_1 = -1/2`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a positive
/// denominator. `Display` renders `p/q`, or just `p` for integers.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n!/(k!(n-k)!)`, or zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_integer(acc)
}

/// `n!/(parts_1! ... parts_r! (n - sum parts)!)`.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<Rational> {
    let sum: u64 = parts.iter().sum();
    if sum > n {
        return Err(Error::MultinomialOverflow { n, sum });
    }
    let mut denom = factorial(n - sum);
    for &p in parts {
        denom *= factorial(p);
    }
    Ok(Rational::new(factorial(n), denom))
}

/// Nearest `f64`, for display only.
pub fn approx_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Memoized Bernoulli numbers.
///
/// Internally keeps the Taylor coefficients `b_m = B_m / m!` of `x/(e^x - 1)`,
/// obtained by inverting `(e^x - 1)/x = sum x^j/(j+1)!` term by term.
#[derive(Debug, Clone)]
pub struct BernoulliCache {
    taylor: Vec<Rational>,
    values: Vec<Rational>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            taylor: vec![Rational::one()],
            values: vec![Rational::one()],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn grow_to(&mut self, m: usize) {
        // a_j = 1/(j+1)! are the coefficients of (e^x - 1)/x
        let inv_fact: Vec<Rational> = (0..=m + 1)
            .map(|j| Rational::new(BigInt::one(), factorial(j as u64 + 1)))
            .collect();
        while self.taylor.len() <= m {
            let n = self.taylor.len();
            let mut acc = Rational::zero();
            for (a, t) in inv_fact[1..=n].iter().zip(self.taylor.iter().rev()) {
                acc += a * t;
            }
            let b = -acc;
            self.values
                .push(&b * Rational::from_integer(factorial(n as u64)));
            self.taylor.push(b);
        }
    }

    pub fn get(&mut self, m: usize) -> Rational {
        if m >= self.values.len() {
            self.grow_to(m);
        }
        self.values[m].clone()
    }
}

static GLOBAL_BERNOULLI: OnceLock<Mutex<BernoulliCache>> = OnceLock::new();

/// `B_m` from a process-wide cache.
pub fn bernoulli(m: usize) -> Rational {
    let cache = GLOBAL_BERNOULLI.get_or_init(|| Mutex::new(BernoulliCache::new()));
    let mut guard = cache
        .lock()
        .unwrap_or_else(|poisoned| poisoned.into_inner());
    guard.get(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: divide x by (e^x - 1) as truncated series, coefficient by
    /// coefficient, with the quotient solved from the top down.
    fn bernoulli_by_long_division(order: usize) -> Vec<Rational> {
        // denominator e^x - 1 = x + x^2/2 + ... ; numerator x
        let den: Vec<Rational> = (0..=order + 1)
            .map(|j| {
                if j == 0 {
                    Rational::zero()
                } else {
                    Rational::new(BigInt::one(), factorial(j as u64))
                }
            })
            .collect();
        let mut num = vec![Rational::zero(); order + 2];
        num[1] = Rational::one();
        let mut q = vec![Rational::zero(); order + 1];
        // q_m is fixed by the coefficient of x^(m+1)
        for m in 0..=order {
            let mut s = num[m + 1].clone();
            for i in 0..m {
                s -= &q[i] * &den[m + 1 - i];
            }
            q[m] = s / &den[1];
        }
        q.iter()
            .enumerate()
            .map(|(m, c)| c * Rational::from_integer(factorial(m as u64)))
            .collect()
    }

    #[test]
    fn first_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn matches_long_division_oracle() {
        let oracle = bernoulli_by_long_division(30);
        for (m, b) in oracle.iter().enumerate() {
            assert_eq!(&bernoulli(m), b, "B_{m}");
        }
    }

    #[test]
    fn defining_recursion_holds() {
        for m in 1..=40u64 {
            let s: Rational = (0..=m)
                .map(|j| binomial(m + 1, j) * bernoulli(j as usize))
                .sum();
            assert!(s.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn odd_values_vanish() {
        for m in 1..=20 {
            assert!(bernoulli(2 * m + 1).is_zero());
        }
    }

    #[test]
    fn private_cache_agrees_with_global() {
        let mut cache = BernoulliCache::new();
        assert_eq!(cache.get(10), bernoulli(10));
        assert_eq!(cache.get(3), int(0));
        assert_eq!(cache.len(), 11);
    }

    #[test]
    fn concurrent_readers() {
        let handles: Vec<_> = (0..8)
            .map(|t| std::thread::spawn(move || bernoulli(20 + t)))
            .collect();
        let got: Vec<Rational> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        let oracle = bernoulli_by_long_division(27);
        for (t, b) in got.iter().enumerate() {
            assert_eq!(b, &oracle[20 + t]);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(30, 15), int(155117520));
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(3, &[1, 1]).unwrap(), int(6));
        assert_eq!(multinomial(2, &[]).unwrap(), int(1));
        // 4!/(2! 1! 1!)
        assert_eq!(multinomial(4, &[2, 1]).unwrap(), int(12));
        assert_eq!(
            multinomial(2, &[2, 1]),
            Err(Error::MultinomialOverflow { n: 2, sum: 3 })
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(rat(-2, 4).to_string(), "-1/2");
        assert_eq!(int(3).to_string(), "3");
        assert_eq!(rat(6, -9).to_string(), "-2/3");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn add_then_sub_is_identity(an in -1000i64..1000, ad in 1i64..1000,
                                        bn in -1000i64..1000, bd in 1i64..1000) {
                let a = rat(an, ad);
                let b = rat(bn, bd);
                prop_assert_eq!((&a + &b) - &b, a);
            }

            #[test]
            fn stored_reduced(n in -10_000i64..10_000, d in 1i64..10_000) {
                let r = rat(n, d);
                let g = num_integer::Integer::gcd(r.numer(), r.denom());
                prop_assert!(r.denom() > &BigInt::zero());
                prop_assert!(g.is_one() || r.numer().is_zero());
            }
        }
    }
}
