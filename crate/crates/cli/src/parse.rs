//! Command-line literals: complex points `a+bi` / `a-bi` and ranges `lo:hi`.

use std::str::FromStr;

use etafloor_core::{ComplexPoint, Real};

fn finite(text: &str) -> Result<Real, String> {
    let v = Real::from_str(text.trim()).map_err(|_| format!("not a number: {text:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: {text:?}"))
    }
}

/// `a+bi`, `a-bi`, `a`, `bi`, with optional `+`/`-` before `i` meaning `±1`.
pub fn complex(text: &str) -> Result<ComplexPoint, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return finite(&t).map(ComplexPoint::real);
    };
    // the last sign that is neither leading nor part of an exponent splits re/im
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (finite(&body[..k])?, imaginary(&body[k..])?),
        None => (0.0, imaginary(body)?),
    };
    Ok(ComplexPoint::new(re, im))
}

fn imaginary(text: &str) -> Result<Real, String> {
    match text {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => finite(text),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: Real,
    pub hi: Real,
}

/// `lo:hi`, or a single value `x` meaning `x:x`.
pub fn range(text: &str) -> Result<Range, String> {
    let (lo, hi) = match text.split_once(':') {
        Some((lo, hi)) => (finite(lo)?, finite(hi)?),
        None => {
            let v = finite(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {text:?}: lower end exceeds upper"));
    }
    Ok(Range { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(complex("1+0i").unwrap(), ComplexPoint::new(1.0, 0.0));
        assert_eq!(
            complex("0.5-14.134725i").unwrap(),
            ComplexPoint::new(0.5, -14.134725)
        );
        assert_eq!(complex("2").unwrap(), ComplexPoint::new(2.0, 0.0));
        assert_eq!(complex("3i").unwrap(), ComplexPoint::new(0.0, 3.0));
        assert_eq!(complex("1-i").unwrap(), ComplexPoint::new(1.0, -1.0));
        assert_eq!(
            complex(" 1e-3 + 2.5e+1i").unwrap(),
            ComplexPoint::new(1e-3, 25.0)
        );
        assert_eq!(
            complex("-1e-2-1e-2i").unwrap(),
            ComplexPoint::new(-0.01, -0.01)
        );
        for bad in ["", "i1", "1+2j", "nan", "1+infi", "1++2i"] {
            assert!(complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(range("0:200").unwrap(), Range { lo: 0.0, hi: 200.0 });
        assert_eq!(range("-5:-1").unwrap(), Range { lo: -5.0, hi: -1.0 });
        assert_eq!(range("0.5").unwrap(), Range { lo: 0.5, hi: 0.5 });
        assert!(range("3:1").is_err());
        assert!(range("a:b").is_err());
        assert!(range("1:2:3").is_err());
    }
}
