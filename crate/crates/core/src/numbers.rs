//! Small integer helpers: primes, exact rational square roots, binomials.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebra::Rational;

pub fn first_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = 2u64;
    while out.len() < count {
        if out.iter().take_while(|&&p| p * p <= n).all(|&p| n % p != 0) {
            out.push(n);
        }
        n += 1;
    }
    out
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Non-negative r with r² = q, if q is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    Some(Rational::new(int_sqrt(q.numer())?, int_sqrt(q.denom())?))
}

pub fn is_rational_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

/// C(m, r), zero when m < 0 or r ∉ [0, m].
pub fn binomial(m: i64, r: i64) -> BigInt {
    if m < 0 || r < 0 || r > m {
        return BigInt::from(0);
    }
    let r = r.min(m - r);
    (0..r).fold(BigInt::from(1), |acc, i| acc * BigInt::from(m - i) / BigInt::from(i + 1))
}
