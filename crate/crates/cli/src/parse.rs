use markoff_core::{BigInt, Complex64, Scalar};

use crate::error::CliError;

fn input(what: &'static str, msg: impl Into<String>) -> CliError {
    CliError::Input { what, msg: msg.into() }
}

pub fn parse_int(what: &'static str, s: &str) -> Result<BigInt, CliError> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| input(what, format!("`{s}` is not an integer")))
}

/// Parses `re+imi`, `re-imi`, `re`, `imi`, `i` and `-i`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let t = s.trim();
    let bad = || input("complex literal", format!("`{s}` (expected e.g. 1.5+0.25i)"));
    let num = |v: &str| v.parse::<f64>().map_err(|_| bad());
    let value = match t.strip_suffix('i') {
        None => Complex64::new(num(t)?, 0.0),
        Some(body) => {
            // The split is the last sign that is not leading and not an exponent sign.
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
            let imag = |v: &str| match v {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                v => num(v),
            };
            match split {
                Some(i) => Complex64::new(num(&body[..i])?, imag(&body[i..])?),
                None => Complex64::new(0.0, imag(body)?),
            }
        }
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

pub fn parse_scalar(what: &'static str, s: &str, complex: bool) -> Result<Scalar, CliError> {
    if complex {
        let c = parse_complex(s)?;
        Ok(Scalar::approx(c.re, c.im)?)
    } else {
        Ok(Scalar::Exact(parse_int(what, s)?))
    }
}

pub fn parse_list(what: &'static str, s: &str, n: usize, complex: bool) -> Result<Vec<Scalar>, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(input(what, format!("expected {n} comma-separated values, got `{s}`")));
    }
    parts.iter().map(|p| parse_scalar(what, p, complex)).collect()
}

/// Inclusive integer range `a..b`; empty when `a > b`.
pub fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| input("k range", format!("`{s}` (expected a..b)")))?;
    let p = |v: &str| {
        v.trim()
            .parse::<i64>()
            .map_err(|_| input("k range", format!("`{v}` is not an integer")))
    };
    Ok((p(a)?, p(b)?))
}

pub fn format_complex(c: &Complex64) -> String {
    if c.im.is_sign_negative() {
        format!("{}-{}i", c.re, -c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}
