//! JSON encodings for big numbers: integers that fit in `i64` become JSON
//! numbers, everything else a decimal string; rationals are always strings
//! of the form `"n"` or `"n/d"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum BigIntRepr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for BigIntRepr {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => Self::Small(x),
            None => Self::Big(v.to_string()),
        }
    }
}

impl TryFrom<BigIntRepr> for BigInt {
    type Error = String;
    fn try_from(r: BigIntRepr) -> Result<Self, String> {
        match r {
            BigIntRepr::Small(x) => Ok(x.into()),
            BigIntRepr::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
pub(crate) struct RatRepr(String);

impl From<&BigRational> for RatRepr {
    fn from(v: &BigRational) -> Self {
        Self(v.to_string())
    }
}

impl TryFrom<RatRepr> for BigRational {
    type Error = String;
    fn try_from(r: RatRepr) -> Result<Self, String> {
        parse_rational(&r.0)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("bad rational {s:?}");
    match s.split_once('/') {
        None => s.trim().parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}
