//! Exact scalars: the rationals and the Gaussian rationals ℚ(i).

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;
pub type Gaussian = Complex<BigRational>;

/// An exact field of characteristic zero, finite-dimensional over ℚ and
/// closed under an involutive conjugation fixing ℚ.
///
/// The ℚ-coordinates exposed by [`Field::parts`] are taken with respect to
/// [`Field::basis`], whose first element is always `1`.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Eq
    + Hash
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Dimension over ℚ.
    const DEGREE: usize;
    /// Name used in serialized files.
    const NAME: &'static str;

    fn conj(&self) -> Self;
    fn from_rational(q: Rational) -> Self;
    fn parts(&self) -> Vec<Rational>;
    fn from_parts(parts: &[Rational]) -> Self;
    fn basis() -> Vec<Self>;

    fn is_rational(&self) -> bool {
        self.parts()[1..].iter().all(Zero::is_zero)
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn div_ref(&self, other: &Self) -> Self {
        self.clone() / other.clone()
    }
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Canonical string form: `a/b` for rationals, `a/b+c/d*i` for Gaussian
    /// rationals (integers drop the `/1`).
    fn format(&self) -> String;
    fn parse(s: &str) -> Option<Self>;
}

fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim().strip_prefix('+').unwrap_or(d.trim())).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

impl Field for Rational {
    const DEGREE: usize = 1;
    const NAME: &'static str = "rational";

    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn parts(&self) -> Vec<Rational> {
        vec![self.clone()]
    }
    fn from_parts(parts: &[Rational]) -> Self {
        parts[0].clone()
    }
    fn basis() -> Vec<Self> {
        vec![Self::one()]
    }
    fn is_rational(&self) -> bool {
        true
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn format(&self) -> String {
        format_rational(self)
    }
    fn parse(s: &str) -> Option<Self> {
        parse_rational(s)
    }
}

impl Field for Gaussian {
    const DEGREE: usize = 2;
    const NAME: &'static str = "gaussian";

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn from_rational(q: Rational) -> Self {
        Complex::new(q, Rational::zero())
    }
    fn parts(&self) -> Vec<Rational> {
        vec![self.re.clone(), self.im.clone()]
    }
    fn from_parts(parts: &[Rational]) -> Self {
        Complex::new(parts[0].clone(), parts[1].clone())
    }
    fn basis() -> Vec<Self> {
        vec![Self::one(), Complex::i()]
    }
    fn is_rational(&self) -> bool {
        self.im.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.im.is_zero() && other.im.is_zero() {
            return Complex::new(&self.re * &other.re, Rational::zero());
        }
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        if other.im.is_zero() {
            return Complex::new(&self.re / &other.re, &self.im / &other.re);
        }
        self / other
    }
    fn format(&self) -> String {
        if self.im.is_zero() {
            return format_rational(&self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!("{}{}{}*i", format_rational(&self.re), sign, format_rational(&self.im.abs()))
    }
    fn parse(s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(&s).map(Self::from_rational);
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // split before the last sign that is not the leading one
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re, im) = match split {
            Some(k) => (parse_rational(&body[..k])?, &body[k..]),
            None => (Rational::zero(), body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other)?,
        };
        Some(Complex::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_strings() {
        assert_eq!(q(-3, 6).format(), "-1/2");
        assert_eq!(q(4, 2).format(), "2");
        assert_eq!(Rational::parse("-1/2"), Some(q(-1, 2)));
        assert_eq!(Rational::parse("+6/4"), Some(q(3, 2)));
        assert_eq!(Rational::parse("1/0"), None);
        assert_eq!(Rational::parse("x"), None);
    }

    #[test]
    fn gaussian_strings() {
        let z = Complex::new(q(1, 2), q(-3, 4));
        assert_eq!(z.format(), "1/2-3/4*i");
        assert_eq!(Gaussian::parse("1/2-3/4*i"), Some(z.clone()));
        assert_eq!(Gaussian::parse("-1/2+1*i"), Some(Complex::new(q(-1, 2), q(1, 1))));
        assert_eq!(Gaussian::parse("i"), Some(Complex::i()));
        assert_eq!(Gaussian::parse("-i"), Some(-Complex::<Rational>::i()));
        assert_eq!(Gaussian::parse("3/5"), Some(Gaussian::from_rational(q(3, 5))));
        assert_eq!(Gaussian::parse("2/3*i"), Some(Complex::new(q(0, 1), q(2, 3))));
        for s in ["0", "5/7+2*i", "-1-1/3*i", "0+1*i"] {
            let z = Gaussian::parse(s).unwrap();
            assert_eq!(Gaussian::parse(&z.format()), Some(z));
        }
    }

    #[test]
    fn conjugation_is_an_involution_fixing_q() {
        let z = Complex::new(q(2, 3), q(5, 7));
        assert_eq!(z.conj().conj(), z);
        assert_ne!(z.conj(), z);
        let r = Gaussian::from_rational(q(9, 4));
        assert_eq!(r.conj(), r);
        assert_eq!((z.clone() * z.conj()).im, q(0, 1));
    }

    #[test]
    fn parts_round_trip() {
        let z = Complex::new(q(2, 3), q(-5, 7));
        assert_eq!(Gaussian::from_parts(&z.parts()), z);
        let recon = Gaussian::basis()
            .into_iter()
            .zip(z.parts())
            .fold(Gaussian::zero(), |acc, (b, c)| acc + b * Gaussian::from_rational(c));
        assert_eq!(recon, z);
    }
}
