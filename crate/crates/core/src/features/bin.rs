use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::corpus::UserProfile;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Nominal bin produced by the `floor(log10 n)` binning.
///
/// `Zero` stands for `n = 0`, where the logarithm is undefined, and `Undef`
/// for a ratio whose denominator is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bin {
    Int(i32),
    Zero,
    Undef,
}

impl fmt::Display for Bin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bin::Int(d) => write!(f, "{d}"),
            Bin::Zero => f.write_str("zero"),
            Bin::Undef => f.write_str("undef"),
        }
    }
}

impl FromStr for Bin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(Bin::Zero),
            "undef" => Ok(Bin::Undef),
            _ => s
                .parse()
                .map(Bin::Int)
                .map_err(|_| Error::InvalidArgument(format!("not a bin: `{s}`"))),
        }
    }
}

impl Serialize for Bin {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bin {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `10^exp <= n`, evaluated without rounding error while `10^|exp|` is
/// exactly representable in `F` (up to 1e22 for `f64`).
fn pow10_le<F: Scalar>(exp: i32, n: F) -> bool {
    let ten = F::lit(10.0);
    if exp >= 0 {
        ten.powi(exp) <= n
    } else {
        let scale = ten.powi(-exp);
        let prod = n * scale;
        let err = n.mul_add(scale, -prod);
        prod > F::one() || (prod == F::one() && err >= F::zero())
    }
}

/// Greatest integer not exceeding `log10 n`; `n = 0` maps to [`Bin::Zero`].
pub fn log_bin<F: Scalar>(n: F) -> Result<Bin> {
    if !n.is_finite() || n < F::zero() {
        return Err(Error::InvalidBinInput(n.to_f64_lossy()));
    }
    if n == F::zero() {
        return Ok(Bin::Zero);
    }
    let mut d = n.log10().floor().to_i32().unwrap_or(0);
    while !pow10_le(d, n) {
        d -= 1;
    }
    while pow10_le(d + 1, n) {
        d += 1;
    }
    Ok(Bin::Int(d))
}

/// Exact integer path of [`log_bin`] for counts.
pub fn log_bin_count(n: u64) -> Bin {
    match n {
        0 => Bin::Zero,
        _ => Bin::Int(n.ilog10() as i32),
    }
}

/// Exact `floor(log10(num / den))` for positive integers.
pub fn log_bin_ratio(num: u64, den: u64) -> Bin {
    match (num, den) {
        (0, _) => Bin::Zero,
        (_, 0) => Bin::Undef,
        _ if num >= den => Bin::Int((num / den).ilog10() as i32),
        _ => {
            let (num, den) = (num as u128, den as u128);
            let mut k = 1;
            let mut scaled = num * 10;
            while scaled < den {
                scaled *= 10;
                k += 1;
            }
            Bin::Int(-k)
        }
    }
}

/// Binned followers/following ratio. No followers gives [`Bin::Zero`]; no
/// followings (with some followers) gives [`Bin::Undef`].
pub fn follower_ratio(profile: &UserProfile) -> Bin {
    log_bin_ratio(profile.followers, profile.following)
}
