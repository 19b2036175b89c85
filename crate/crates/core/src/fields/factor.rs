//! Prime factorization of nonzero rationals.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Q;

/// Trial division stops here; larger cofactors are accepted only when they
/// are known to be prime.
const TRIAL_LIMIT: u64 = 2_000_000;

/// `unit * prod p^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeFactorization {
    /// `1` or `-1`.
    pub unit: i8,
    pub factors: BTreeMap<BigInt, i32>,
}

impl MultiplicativeFactorization {
    pub fn recompose(&self) -> Q {
        let mut acc = Q::from_integer(BigInt::from(self.unit));
        for (p, e) in &self.factors {
            let pe = Q::from_integer(num_traits::pow(p.clone(), e.unsigned_abs() as usize));
            acc = if *e > 0 { acc * pe } else { acc / pe };
        }
        acc
    }
}

fn factor_u64(mut n: u64, sign: i32, out: &mut BTreeMap<BigInt, i32>) -> Result<()> {
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if p > TRIAL_LIMIT {
            return Err(Error::Domain(format!("cofactor {n} too large to factor")));
        }
        while n.is_multiple_of(p) {
            *out.entry(BigInt::from(p)).or_default() += sign;
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        *out.entry(BigInt::from(n)).or_default() += sign;
    }
    Ok(())
}

fn factor_int(n: &BigInt, sign: i32, out: &mut BTreeMap<BigInt, i32>) -> Result<()> {
    let mut n = n.magnitude().clone();
    if let Some(small) = n.to_u64() {
        return factor_u64(small, sign, out);
    }
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = num_bigint::BigUint::from(p);
        while (&n % &bp).is_zero() {
            *out.entry(BigInt::from(p)).or_default() += sign;
            n /= &bp;
        }
        if let Some(small) = n.to_u64() {
            return factor_u64(small, sign, out);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Err(Error::Domain(format!("cofactor {n} too large to factor")))
}

/// Factors a nonzero rational into a sign and prime powers.
pub fn factor_rational(q: &Q) -> Result<MultiplicativeFactorization> {
    if q.is_zero() {
        return Err(Error::Domain("cannot factor zero".into()));
    }
    let mut factors = BTreeMap::new();
    factor_int(q.numer(), 1, &mut factors)?;
    factor_int(q.denom(), -1, &mut factors)?;
    factors.retain(|_, e| *e != 0);
    let unit = if (q.numer().sign() == Sign::Minus) == (q.denom().sign() == Sign::Minus) {
        1
    } else {
        -1
    };
    Ok(MultiplicativeFactorization { unit, factors })
}

/// Greatest common divisor of two integers (nonnegative).
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let g = a.gcd(b);
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        let f = factor_rational(&Q::new((-12).into(), 35.into())).unwrap();
        assert_eq!(f.unit, -1);
        let want: BTreeMap<BigInt, i32> =
            [(2, 2), (3, 1), (5, -1), (7, -1)].into_iter().map(|(p, e)| (BigInt::from(p), e)).collect();
        assert_eq!(f.factors, want);
        assert!(factor_rational(&Q::zero()).is_err());
    }

    #[test]
    fn large_prime_power() {
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_003u64) * BigInt::from(1u64 << 40);
        let f = factor_rational(&Q::from_integer(n.clone())).unwrap();
        assert_eq!(f.recompose(), Q::from_integer(n));
    }

    proptest! {
        #[test]
        fn factor_then_recompose(n in -100_000i64..100_000, d in 1i64..100_000) {
            prop_assume!(n != 0);
            let q = Q::new(n.into(), d.into());
            prop_assert_eq!(factor_rational(&q).unwrap().recompose(), q);
        }
    }
}
