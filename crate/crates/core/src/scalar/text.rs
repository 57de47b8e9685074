use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Gaussian, Q};
use crate::error::{Error, Result};

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect()
}

/// Parse `"p"`, `"p/q"` with optional sign (the Unicode minus is accepted).
pub fn parse_rational(s: &str) -> Result<Q> {
    let t = normalize(s);
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

fn parse_imag_coeff(t: &str, orig: &str) -> Result<Q> {
    let body = t.strip_suffix('i').unwrap_or(t);
    let body = body.strip_suffix('*').unwrap_or(body);
    match body {
        "" | "+" => Ok(Q::one()),
        "-" => Ok(-Q::one()),
        b => parse_rational(b.strip_prefix('+').unwrap_or(b))
            .map_err(|_| Error::Parse(format!("malformed gaussian {orig:?}"))),
    }
}

/// Parse `"a"`, `"b*i"` or `"a+b*i"` where `a`, `b` are rationals.
pub fn parse_gaussian(s: &str) -> Result<Gaussian> {
    let t = normalize(s);
    if !t.ends_with('i') {
        return parse_rational(&t).map(|q| Gaussian::from_q(&q));
    }
    let split = t
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(k, _)| k)
        .last();
    match split {
        Some(k) => {
            let re = parse_rational(&t[..k])?;
            let im = parse_imag_coeff(&t[k..], s)?;
            Ok(Gaussian::new(re, im))
        }
        None => Ok(Gaussian::new(Q::zero(), parse_imag_coeff(&t, s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/5").unwrap(), Q::new(3.into(), 5.into()));
        assert_eq!(parse_rational("\u{2212}2").unwrap(), Q::from_integer((-2).into()));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), Q::new(2.into(), 3.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn gaussians() {
        let g = parse_gaussian("1/2-3/4*i").unwrap();
        assert_eq!(g.re, Q::new(1.into(), 2.into()));
        assert_eq!(g.im, Q::new((-3).into(), 4.into()));
        assert_eq!(parse_gaussian("-i").unwrap().im, -Q::one());
        assert_eq!(parse_gaussian("2+i").unwrap().im, Q::one());
        assert_eq!(parse_gaussian("-5/3*i").unwrap().re, Q::zero());
        assert!(parse_gaussian("1+2*j").is_err());
    }
}
