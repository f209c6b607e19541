use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational; always stored in lowest terms with positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "p/q" or a bare integer "p".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = |e: &dyn std::fmt::Display| Error::InvalidInput(format!("bad rational {s:?}: {e}"));
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|e| bad(&e))?;
            let den: BigInt = den.trim().parse().map_err(|e| bad(&e))?;
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = s.trim().parse().map_err(|e| bad(&e))?;
            Ok(BigRational::from_integer(num))
        }
    }
}

/// Canonical "p/q" text form, always with an explicit denominator.
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn is_nonneg(r: &Rat) -> bool {
    !r.is_negative()
}

pub fn one() -> Rat {
    BigRational::one()
}

pub fn zero() -> Rat {
    BigRational::zero()
}
