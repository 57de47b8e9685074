use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::Q;

/// Exact element `re + im*i` of the Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Q,
    pub im: Q,
}

impl Gaussian {
    pub fn new(re: Q, im: Q) -> Self {
        Gaussian { re, im }
    }

    pub fn from_q(q: &Q) -> Self {
        Gaussian::new(q.clone(), Q::zero())
    }

    /// `re^2 + im^2`
    pub fn abs_sq(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.abs_sq();
        if n.is_zero() {
            return None;
        }
        Some(Gaussian::new(&self.re / &n, -(&self.im / &n)))
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        if self.im.is_zero() && o.im.is_zero() {
            return Gaussian::new(self.re * o.re, Q::zero());
        }
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Gaussian::new(re, im)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}*i", self.re, -self.im.clone()),
            (false, false) => write!(f, "{}+{}*i", self.re, self.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::scalar::parse_gaussian;

    #[test]
    fn i_squared_is_minus_one() {
        let i = parse_gaussian("i").unwrap();
        assert_eq!(i.clone() * i, parse_gaussian("-1").unwrap());
    }

    #[test]
    fn reciprocal() {
        let z = parse_gaussian("3+4*i").unwrap();
        let w = z.recip().unwrap();
        assert_eq!(w.to_string(), "3/25-4/25*i");
        assert_eq!(z * w, parse_gaussian("1").unwrap());
        assert!(parse_gaussian("0").unwrap().recip().is_none());
    }
}
