//! Exact arithmetic primitives.
//!
//! Probabilities entering the system are decimal literals, so they are kept
//! as exact fractions from the start. Everything the exact estimators and
//! the brute-force oracle report is a [`Ratio`]; floating point only appears
//! in Monte Carlo estimates.

use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;

/// Arbitrary-precision rational, the number type of all exact results.
pub type Ratio = num_rational::BigRational;

/// Builds a `Ratio` from a machine-sized fraction.
pub fn ratio(num: i64, den: i64) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Lossy conversion for rendering exact values.
pub fn ratio_to_f64(r: &Ratio) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// An exact probability in `[0, 1]`, stored as a reduced fraction.
///
/// `Prob` is the edge-weight type of [`crate::graph::Graph`]. Keeping the
/// fraction exact lets live-edge enumeration produce exact outcome
/// probabilities; `as_f64` feeds the Monte Carlo sampler.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prob {
    num: u64,
    den: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbError {
    /// Numerator exceeds denominator or denominator is zero.
    OutOfRange { num: u64, den: u64 },
    /// Text is not a plain decimal in `[0, 1]`.
    BadDecimal(String),
}

impl fmt::Display for ProbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbError::OutOfRange { num, den } => {
                write!(f, "probability {num}/{den} is not in [0, 1]")
            }
            ProbError::BadDecimal(s) => write!(f, "`{s}` is not a decimal probability in [0, 1]"),
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Prob {
    pub const ZERO: Prob = Prob { num: 0, den: 1 };
    pub const ONE: Prob = Prob { num: 1, den: 1 };

    /// Exact probability `num/den`; rejects values outside `[0, 1]`.
    pub fn new(num: u64, den: u64) -> Result<Prob, ProbError> {
        if den == 0 || num > den {
            return Err(ProbError::OutOfRange { num, den });
        }
        let g = gcd(num, den);
        Ok(Prob {
            num: num / g,
            den: den / g,
        })
    }

    /// Parses a decimal literal such as `1`, `0.35`, or `.5` exactly.
    ///
    /// Scientific notation is rejected: graph files carry plain decimals.
    pub fn from_decimal_str(s: &str) -> Result<Prob, ProbError> {
        let bad = || ProbError::BadDecimal(String::from(s));
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        // 19 fractional digits still fits the u64 denominator 10^19.
        if frac_part.len() > 19 {
            return Err(bad());
        }
        let int_val: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let den = 10u64
            .checked_pow(frac_part.len() as u32)
            .ok_or_else(bad)?;
        let frac_val: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| bad())?
        };
        let num = int_val
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(bad)?;
        Prob::new(num, den).map_err(|_| bad())
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// True when the edge is random rather than fixed on or off.
    pub fn is_stochastic(&self) -> bool {
        !self.is_zero() && !self.is_one()
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_ratio(&self) -> Ratio {
        Ratio::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    /// `1 - p`, exactly.
    pub fn complement(&self) -> Prob {
        Prob {
            num: self.den - self.num,
            den: self.den,
        }
    }

    /// Renders the exact decimal expansion when one exists (denominator of
    /// the reduced fraction has only factors 2 and 5), falling back to the
    /// shortest-roundtrip float otherwise.
    pub fn to_decimal_string(&self) -> String {
        use fmt::Write;
        let mut den = self.den;
        let mut twos = 0u32;
        let mut fives = 0u32;
        while den % 2 == 0 {
            den /= 2;
            twos += 1;
        }
        while den % 5 == 0 {
            den /= 5;
            fives += 1;
        }
        if den != 1 {
            let mut s = String::new();
            let _ = write!(s, "{}", self.as_f64());
            return s;
        }
        let digits = twos.max(fives);
        // num / den = scaled / 10^digits
        let scale_up = 2u128.pow(digits - twos) * 5u128.pow(digits - fives);
        let scaled = self.num as u128 * scale_up;
        let pow10 = 10u128.pow(digits);
        let int_part = scaled / pow10;
        let frac_part = scaled % pow10;
        let mut s = String::new();
        if digits == 0 {
            let _ = write!(s, "{int_part}");
        } else {
            let _ = write!(s, "{int_part}.{frac_part:0width$}", width = digits as usize);
        }
        s
    }
}

impl fmt::Debug for Prob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

impl fmt::Display for Prob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(Prob::from_decimal_str("0.5").unwrap(), Prob::new(1, 2).unwrap());
        assert_eq!(Prob::from_decimal_str("1").unwrap(), Prob::ONE);
        assert_eq!(Prob::from_decimal_str("1.0").unwrap(), Prob::ONE);
        assert_eq!(Prob::from_decimal_str("0").unwrap(), Prob::ZERO);
        assert_eq!(Prob::from_decimal_str(".25").unwrap(), Prob::new(1, 4).unwrap());
        assert_eq!(
            Prob::from_decimal_str("0.35").unwrap(),
            Prob::new(7, 20).unwrap()
        );
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(Prob::from_decimal_str("1.5").is_err());
        assert!(Prob::from_decimal_str("2").is_err());
        assert!(Prob::new(3, 2).is_err());
        assert!(Prob::new(1, 0).is_err());
    }

    #[test]
    fn garbage_rejected() {
        for s in ["", ".", "0.5e-1", "-0.5", "a", "0..5", "0.5.1"] {
            assert!(Prob::from_decimal_str(s).is_err(), "{s:?} should fail");
        }
    }

    #[test]
    fn decimal_rendering_round_trips() {
        for s in ["0", "1", "0.5", "0.25", "0.35", "0.125", "0.1"] {
            let p = Prob::from_decimal_str(s).unwrap();
            let back = Prob::from_decimal_str(&p.to_decimal_string()).unwrap();
            assert_eq!(p, back);
        }
    }

    #[test]
    fn complement_is_exact() {
        let p = Prob::from_decimal_str("0.3").unwrap();
        assert_eq!(p.complement(), Prob::new(7, 10).unwrap());
        assert!(Prob::ONE.complement().is_zero());
    }
}
