//! Validated complex scalars and the `a+bi` literal syntax used by the CLI
//! and grid files.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// A complex number with finite components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct ComplexScalar(C64);

impl ComplexScalar {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self::try_from(C64::new(re, im))
    }

    pub fn real(re: f64) -> Result<Self> {
        Self::new(re, 0.0)
    }

    pub fn imag(im: f64) -> Result<Self> {
        Self::new(0.0, im)
    }

    pub fn value(self) -> C64 {
        self.0
    }
}

impl TryFrom<C64> for ComplexScalar {
    type Error = Error;

    fn try_from(z: C64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(Self(z))
        } else {
            Err(Error::NonFinite(format!("{z}")))
        }
    }
}

impl TryFrom<(f64, f64)> for ComplexScalar {
    type Error = Error;

    fn try_from((re, im): (f64, f64)) -> Result<Self> {
        Self::new(re, im)
    }
}

impl From<ComplexScalar> for (f64, f64) {
    fn from(z: ComplexScalar) -> Self {
        (z.0.re, z.0.im)
    }
}

impl From<ComplexScalar> for C64 {
    fn from(z: ComplexScalar) -> Self {
        z.0
    }
}

impl Deref for ComplexScalar {
    type Target = C64;

    fn deref(&self) -> &C64 {
        &self.0
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let C64 { re, im } = self.0;
        if im == 0.0 {
            write!(f, "{re}")
        } else if re == 0.0 {
            write!(f, "{im}i")
        } else if im < 0.0 {
            write!(f, "{re}{im}i")
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (also `i`, `-i`, `a+i`).
impl FromStr for ComplexScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse complex literal {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
            let re: f64 = t.parse().map_err(|_| bad())?;
            return Self::real(re).map_err(|_| bad());
        };
        // Split at the last sign that is not the leading sign and not part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let c = bytes[i];
            if (c == b'+' || c == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        let parse_im = |s: &str| -> Result<f64> {
            match s {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                _ => s.parse().map_err(|_| bad()),
            }
        };
        let (re, im) = match split {
            Some(i) => {
                let re: f64 = body[..i].parse().map_err(|_| bad())?;
                (re, parse_im(&body[i..])?)
            }
            None => (0.0, parse_im(body)?),
        };
        Self::new(re, im).map_err(|_| bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> C64 {
        s.parse::<ComplexScalar>().unwrap().value()
    }

    #[test]
    fn parses_literals() {
        assert_eq!(parse("-3"), C64::new(-3.0, 0.0));
        assert_eq!(parse("0.5i"), C64::new(0.0, 0.5));
        assert_eq!(parse("-1.5-0.7i"), C64::new(-1.5, -0.7));
        assert_eq!(parse("-1.5+0.7i"), C64::new(-1.5, 0.7));
        assert_eq!(parse("1e-3-2e+1i"), C64::new(1e-3, -20.0));
        assert_eq!(parse("-i"), C64::new(0.0, -1.0));
        assert_eq!(parse("2+i"), C64::new(2.0, 1.0));
    }

    #[test]
    fn rejects_garbage_and_non_finite() {
        for s in ["", "abc", "1+2", "nan", "inf", "1+nani", "--1"] {
            assert!(s.parse::<ComplexScalar>().is_err(), "{s}");
        }
        assert!(ComplexScalar::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn display_round_trips() {
        for z in [
            C64::new(-1.5, -0.7),
            C64::new(0.0, 0.25),
            C64::new(3.0, 0.0),
            C64::new(1.0, 2.0),
        ] {
            let s = ComplexScalar::try_from(z).unwrap().to_string();
            assert_eq!(parse(&s), z, "{s}");
        }
    }
}
