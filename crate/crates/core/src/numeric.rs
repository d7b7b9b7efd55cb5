//! High-precision complex evaluation of sums of roots of unity.
//!
//! Values carry a radius bounding the accumulated rounding error. The bound
//! is heuristic (a generous multiple of the working ulp per term), not a
//! certified interval enclosure.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::Signed;

/// Decimal digits used when the caller does not ask for anything else.
pub const DEFAULT_DIGITS: u32 = 50;

const RM: RoundingMode = RoundingMode::ToEven;

/// Bits of working precision for `digits` decimal digits plus guard bits.
fn working_bits(digits: u32) -> usize {
    (digits as usize * 3322) / 1000 + 96
}

fn consts() -> Consts {
    Consts::new().expect("allocating the constants cache")
}

fn big_to_float(x: &BigInt, p: usize, cc: &mut Consts) -> BigFloat {
    BigFloat::parse(&x.to_string(), Radix::Dec, p, RM, cc)
}

/// A complex number with an error radius.
#[derive(Clone)]
pub struct ComplexInterval {
    re: BigFloat,
    im: BigFloat,
    radius: BigFloat,
    digits: u32,
}

impl ComplexInterval {
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Sign of the real part, or `None` when the interval straddles zero.
    pub fn real_sign(&self) -> Option<Ordering> {
        let p = working_bits(self.digits);
        let lo = self.re.sub(&self.radius, p, RM);
        let hi = self.re.add(&self.radius, p, RM);
        if lo.is_positive() && !lo.is_zero() {
            Some(Ordering::Greater)
        } else if hi.is_negative() && !hi.is_zero() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// The imaginary part is zero to within the radius.
    pub fn is_real(&self) -> bool {
        let p = working_bits(self.digits);
        let abs_im = if self.im.is_negative() { self.im.neg() } else { self.im.clone() };
        let excess = abs_im.sub(&self.radius, p, RM);
        excess.is_zero() || excess.is_negative()
    }

    /// Real, with the whole interval strictly to the right of zero.
    pub fn is_positive_real(&self) -> bool {
        self.is_real() && self.real_sign() == Some(Ordering::Greater)
    }

    pub fn re_string(&self) -> String {
        sci(&self.re, self.digits)
    }

    pub fn im_string(&self) -> String {
        sci(&self.im, self.digits)
    }

    pub fn radius_string(&self) -> String {
        sci(&self.radius, 3)
    }

    /// Real and imaginary parts rounded to `f64`.
    pub fn to_f64(&self) -> (f64, f64) {
        (parse_f64(&self.re_string()), parse_f64(&self.im_string()))
    }

    pub fn radius_f64(&self) -> f64 {
        parse_f64(&self.radius_string())
    }
}

impl fmt::Debug for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {} i) +/- {}", self.re_string(), self.im_string(), self.radius_string())
    }
}

fn parse_f64(s: &str) -> f64 {
    s.parse::<f64>().unwrap_or(f64::NAN)
}

/// Scientific notation with `digits` significant digits, e.g. `6.18e-1`.
fn sci(x: &BigFloat, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut cc = consts();
    let raw = match x.format(Radix::Dec, RM, &mut cc) {
        Ok(s) => s,
        Err(_) => return "NaN".to_string(),
    };
    let (mantissa, exponent) = match raw.split_once('e') {
        Some((m, e)) => (m.to_string(), e.to_string()),
        None => (raw.clone(), "+0".to_string()),
    };
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest.to_string()),
        None => ("", mantissa),
    };
    let digits_only: Vec<char> = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let keep = (digits.max(1) as usize).min(digits_only.len());
    let mut out = String::from(sign);
    out.push(digits_only[0]);
    if keep > 1 {
        out.push('.');
        out.extend(&digits_only[1..keep]);
    }
    out.push('e');
    out.push_str(&exponent);
    out
}

/// Evaluates `(1/den) * sum c * exp(2 pi i k / n)` over `(k, c)` terms.
pub(crate) fn evaluate_root_sum(terms: &[(u64, &BigInt)], den: &BigInt, n: u64, digits: u32) -> ComplexInterval {
    let p = working_bits(digits);
    let mut cc = consts();
    let pi = cc.pi(p, RM);
    let step = pi
        .mul(&BigFloat::from_u8(2, p), p, RM)
        .div(&BigFloat::from_u64(n, p), p, RM);
    let mut re = BigFloat::from_u8(0, p);
    let mut im = BigFloat::from_u8(0, p);
    let mut magnitude = BigFloat::from_u8(1, p);
    for &(k, c) in terms {
        let angle = step.mul(&BigFloat::from_u64(k, p), p, RM);
        let cf = big_to_float(c, p, &mut cc);
        re = re.add(&cf.mul(&angle.cos(p, RM, &mut cc), p, RM), p, RM);
        im = im.add(&cf.mul(&angle.sin(p, RM, &mut cc), p, RM), p, RM);
        magnitude = magnitude.add(&big_to_float(&c.abs(), p, &mut cc), p, RM);
    }
    let d = big_to_float(den, p, &mut cc);
    re = re.div(&d, p, RM);
    im = im.div(&d, p, RM);
    magnitude = magnitude.div(&d, p, RM);
    // Each term contributes a handful of roundings at 2^-p relative error.
    let ulp = BigFloat::from_u8(1, p).div(&BigFloat::from_u8(2, p).powi(p - 24, p, RM), p, RM);
    let count = BigFloat::from_u64(terms.len() as u64 + 1, p);
    let radius = magnitude.mul(&ulp, p, RM).mul(&count, p, RM);
    ComplexInterval { re, im, radius, digits }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{complex_embed, CyclotomicField};

    #[test]
    fn one_embeds_to_one() {
        let k = CyclotomicField::new(7).unwrap();
        for s in 1..7 {
            let v = complex_embed(&k.one(), s, DEFAULT_DIGITS).unwrap();
            assert!(v.is_positive_real());
            assert_eq!(v.to_f64(), (1.0, 0.0));
        }
    }

    #[test]
    fn zeta_four_is_i() {
        let k = CyclotomicField::new(4).unwrap();
        let v = complex_embed(&k.zeta(), 1, DEFAULT_DIGITS).unwrap();
        let (re, im) = v.to_f64();
        assert!(re.abs() < 1e-30);
        assert!((im - 1.0).abs() < 1e-15);
        assert!(v.radius_f64() < 1e-30);
        assert_eq!(v.real_sign(), None);
    }

    #[test]
    fn golden_ratio_conjugate() {
        let k = CyclotomicField::new(5).unwrap();
        let x = &k.zeta() + &k.zeta_power(-1);
        let v = complex_embed(&x, 1, DEFAULT_DIGITS).unwrap();
        // 2 cos(2 pi / 5) = (sqrt 5 - 1) / 2
        assert!(v.re_string().starts_with("6.180339887498948482045868343656381177203091798057"));
        assert!(v.is_positive_real());
        let w = complex_embed(&x, 2, DEFAULT_DIGITS).unwrap();
        assert_eq!(w.real_sign(), Some(Ordering::Less));
    }

    #[test]
    fn non_unit_exponent_is_rejected() {
        let k = CyclotomicField::new(6).unwrap();
        assert!(complex_embed(&k.zeta(), 2, 10).is_err());
    }
}
