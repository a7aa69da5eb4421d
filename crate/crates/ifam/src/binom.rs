use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::Error;

/// Exact C(n, k). Negative `n` is rejected; `k < 0` or `k > n` gives 0.
pub fn binomial(n: i64, k: i64) -> Result<BigUint, Error> {
    if n < 0 {
        return Err(Error::Domain(format!("binomial with negative n = {n}")));
    }
    if k < 0 || k > n {
        return Ok(BigUint::zero());
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// `binomial` for formula code whose arguments are already range-checked.
pub fn c(n: i64, k: i64) -> BigUint {
    binomial(n, k).expect("binomial argument checked by caller")
}

/// Same as [`c`] but signed, handy inside alternating sums.
pub fn ci(n: i64, k: i64) -> BigInt {
    BigInt::from(c(n, k))
}

const PASCAL_N: usize = 129;

fn pascal() -> &'static Vec<[u128; PASCAL_N]> {
    static TABLE: OnceLock<Vec<[u128; PASCAL_N]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![[0u128; PASCAL_N]; PASCAL_N];
        for n in 0..PASCAL_N {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            }
        }
        t
    })
}

/// Small binomials for ranking; every C(n, k) with n <= 128 fits in u128.
pub fn binom_u128(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    pascal()[n as usize][k as usize]
}

/// Generalized binomial x(x-1)...(x-m+1)/m! for rational x.
pub fn real_binomial(x: &BigRational, m: i64) -> BigRational {
    if m < 0 {
        return BigRational::zero();
    }
    let mut acc = BigRational::one();
    for i in 0..m {
        acc *= x - BigRational::from_integer(BigInt::from(i));
        acc /= BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CascadeForm {
    pub r: u32,
    /// (a_j, j) with j running down from r.
    pub terms: Vec<(u64, u32)>,
}

impl CascadeForm {
    pub fn value(&self) -> BigUint {
        self.terms.iter().map(|&(a, j)| c(a as i64, j as i64)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Greedy r-cascade: largest a_r with C(a_r, r) <= m, then recurse on r-1.
pub fn cascade(m: &BigUint, r: u32) -> Result<CascadeForm, Error> {
    if r == 0 {
        return Err(Error::Domain("cascade needs r >= 1".into()));
    }
    let mut rest = m.clone();
    let mut terms = Vec::new();
    let mut j = r;
    while !rest.is_zero() && j >= 1 {
        let a = largest_top(&rest, j);
        rest -= c(a as i64, j as i64);
        terms.push((a, j));
        j -= 1;
    }
    debug_assert!(rest.is_zero());
    Ok(CascadeForm { r, terms })
}

// C(a, j) in u128, None on overflow
fn binom_checked(a: u64, j: u32) -> Option<u128> {
    if j as u64 > a {
        return Some(0);
    }
    let j = (j as u64).min(a - j as u64);
    let mut acc: u128 = 1;
    for i in 0..j {
        // acc * (a - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((a - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

// largest a with C(a, j) <= m, for m >= 1
fn largest_top(m: &BigUint, j: u32) -> u64 {
    let small = m.to_u128();
    let fits = |a: u64| match (small, binom_checked(a, j)) {
        (Some(m), Some(v)) => v <= m,
        _ => c(a as i64, j as i64) <= *m,
    };
    let mut lo = j as u64;
    let mut hi = lo + 1;
    while fits(hi) {
        lo = hi;
        hi = hi.saturating_mul(2);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

pub fn to_u128(x: &BigUint) -> Option<u128> {
    x.to_u128()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2).unwrap(), BigUint::from(10u32));
        assert_eq!(binomial(0, 0).unwrap(), BigUint::one());
        assert_eq!(binomial(4, 7).unwrap(), BigUint::zero());
        assert_eq!(binomial(4, -1).unwrap(), BigUint::zero());
        assert!(binomial(-3, 1).is_err());
    }

    #[test]
    fn big_value_is_exact() {
        // C(100, 50) from its decimal expansion
        let want: BigUint = "100891344545564193334812497256".parse().unwrap();
        assert_eq!(binomial(100, 50).unwrap(), want);
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=64i64 {
            for k in 1..n {
                assert_eq!(c(n, k), c(n - 1, k) + c(n - 1, k - 1));
            }
        }
    }

    #[test]
    fn u128_table_matches_bigint() {
        for n in [0u32, 1, 17, 64, 127, 128] {
            for k in 0..=n {
                assert_eq!(BigUint::from(binom_u128(n, k)), c(n as i64, k as i64));
            }
        }
    }

    #[test]
    fn cascade_examples() {
        let f = cascade(&BigUint::from(10u32), 3).unwrap();
        assert_eq!(f.terms, vec![(5, 3)]);
        assert!(cascade(&BigUint::zero(), 4).unwrap().is_empty());
        let f = cascade(&BigUint::from(5u32), 3).unwrap();
        assert_eq!(f.terms, vec![(4, 3), (2, 2)]);
    }

    #[test]
    fn cascade_round_trip_dense() {
        for r in 1..=12u32 {
            for m in (0..=1_000_000u32).step_by(997).chain(0..300) {
                let f = cascade(&BigUint::from(m), r).unwrap();
                assert_eq!(f.value(), BigUint::from(m));
                for w in f.terms.windows(2) {
                    assert!(w[0].0 > w[1].0 && w[0].1 == w[1].1 + 1);
                }
                if let Some(&(a, j)) = f.terms.last() {
                    assert!(a >= j as u64 && j >= 1);
                }
            }
        }
    }

    #[test]
    fn real_binomial_matches_integer() {
        for n in 0..12i64 {
            for m in 0..=n {
                let x = BigRational::from_integer(BigInt::from(n));
                assert_eq!(real_binomial(&x, m), BigRational::from_integer(ci(n, m)));
            }
        }
    }
}
