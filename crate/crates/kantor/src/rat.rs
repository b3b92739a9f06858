//! Exact rational scalars. Everything in this crate runs over `Rat`;
//! there is no floating point anywhere, so "an identity holds" always
//! means the residual is literally zero.

use num::bigint::BigInt;
pub use num::BigRational as Rat;
use num::{One, Zero};

/// Integer as an exact rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rzero() -> Rat {
    Rat::zero()
}

pub fn rone() -> Rat {
    Rat::one()
}

/// `(-1)^exp` applied to `v`, with `exp` taken mod 2.
pub fn koszul(exp: u8, v: Rat) -> Rat {
    if exp & 1 == 1 {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_normalized() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(-2, -4), ratio(1, 2));
        assert_eq!(ratio(3, -6), ratio(-1, 2));
        assert!(ratio(0, 5).is_zero());
    }

    #[test]
    fn koszul_sign() {
        assert_eq!(koszul(0, rat(3)), rat(3));
        assert_eq!(koszul(1, rat(3)), rat(-3));
        assert_eq!(koszul(2, rat(3)), rat(3));
    }
}
