//! Exact scalar fields: rationals with i128 backing and odd prime fields.
//!
//! All linear algebra in this crate runs over one of these two fields. The
//! rational type panics on overflow rather than silently wrapping; the data
//! handled here (Gram matrices with unit entries, incidence-style constraint
//! systems) keeps numerators and denominators tiny, so an overflow would
//! itself indicate a bug.

use std::fmt;

/// An exact field with enough structure for Gaussian elimination.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// A square root, when one exists in the field.
    fn sqrt(&self) -> Option<Self>;
    /// The image of the integer `v` in this field (used to inject small
    /// constants; the receiver only supplies the field, not a value).
    fn embed(&self, v: i64) -> Self;
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A rational number with reduced i128 numerator/denominator, denominator
/// positive.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i128,
    den: i128,
}

impl Rat {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd128(num, den);
        let (mut num, mut den) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if den < 0 {
            num = -num;
            den = -den;
        }
        Rat { num, den }
    }

    pub fn int(v: i128) -> Self {
        Rat { num: v, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Parses "p", "-p" or "p/q".
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num: i128 = a.trim().parse().ok()?;
            let den: i128 = b.trim().parse().ok()?;
            if den == 0 {
                return None;
            }
            Some(Rat::new(num, den))
        } else {
            let num: i128 = s.parse().ok()?;
            Some(Rat::int(num))
        }
    }

    fn checked(num: Option<i128>, den: Option<i128>) -> Rat {
        let num = num.expect("rational overflow");
        let den = den.expect("rational overflow");
        Rat::new(num, den)
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Field for Rat {
    fn zero(&self) -> Self {
        Rat::int(0)
    }
    fn one(&self) -> Self {
        Rat::int(1)
    }
    fn is_zero(&self) -> bool {
        self.num == 0
    }
    fn add(&self, other: &Self) -> Self {
        // reduce via the denominator gcd to keep intermediates small
        let g = gcd128(self.den, other.den);
        let l = self.den / g;
        let r = other.den / g;
        Rat::checked(
            self.num
                .checked_mul(r)
                .and_then(|a| other.num.checked_mul(l).and_then(|b| a.checked_add(b))),
            self.den.checked_mul(r),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let g1 = gcd128(self.num, other.den);
        let g2 = gcd128(other.num, self.den);
        Rat::checked(
            (self.num / g1).checked_mul(other.num / g2),
            (self.den / g2).checked_mul(other.den / g1),
        )
    }
    fn neg(&self) -> Self {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.num == 0 {
            None
        } else {
            Some(Rat::new(self.den, self.num))
        }
    }
    fn sqrt(&self) -> Option<Self> {
        if self.num < 0 {
            return None;
        }
        let isqrt = |v: i128| -> Option<i128> {
            let mut lo = 0i128;
            let mut hi = 1i128;
            while hi * hi < v {
                hi *= 2;
            }
            while lo < hi {
                let mid = (lo + hi) / 2;
                if mid * mid < v {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            if lo * lo == v {
                Some(lo)
            } else {
                None
            }
        };
        Some(Rat::new(isqrt(self.num)?, isqrt(self.den)?))
    }
    fn embed(&self, v: i64) -> Self {
        Rat::int(v as i128)
    }
}

/// An element of the prime field F_p, p an odd prime. Each element carries its
/// modulus; mixing moduli is a programming error.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        assert!(p >= 3 && p % 2 == 1, "modulus must be an odd prime");
        let m = v.rem_euclid(p as i64) as u64;
        Fp { v: m, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    fn zero(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Fp {
            v: (self.v + other.v) % self.p,
            p: self.p,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Fp {
            v: (self.v + self.p - other.v) % self.p,
            p: self.p,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Fp {
            v: (self.v as u128 * other.v as u128 % self.p as u128) as u64,
            p: self.p,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            v: (self.p - self.v) % self.p,
            p: self.p,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        // Fermat: v^(p-2) mod p
        let mut base = self.v as u128;
        let mut exp = self.p - 2;
        let m = self.p as u128;
        let mut acc: u128 = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Some(Fp {
            v: acc as u64,
            p: self.p,
        })
    }
    fn sqrt(&self) -> Option<Self> {
        // moduli here are tiny; scan
        (0..self.p)
            .map(|t| Fp { v: t, p: self.p })
            .find(|t| t.mul(t) == *self)
    }
    fn embed(&self, v: i64) -> Self {
        Fp::new(v, self.p)
    }
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_arithmetic() {
        let a = Rat::new(2, 4);
        assert_eq!(a, Rat::new(1, 2));
        let b = Rat::new(-1, 3);
        assert_eq!(a.add(&b), Rat::new(1, 6));
        assert_eq!(a.mul(&b), Rat::new(-1, 6));
        assert_eq!(b.inv().unwrap(), Rat::int(-3));
        assert_eq!(Rat::parse("-3/6"), Some(Rat::new(-1, 2)));
        assert_eq!(Rat::parse("5"), Some(Rat::int(5)));
        assert_eq!(Rat::parse("1/0"), None);
    }

    #[test]
    fn fp_arithmetic() {
        let a = Fp::new(7, 5);
        assert_eq!(a.value(), 2);
        assert_eq!(a.inv().unwrap().mul(&a).value(), 1);
        assert_eq!(Fp::new(-1, 5).value(), 4);
        for v in 1..5 {
            let x = Fp::new(v, 5);
            assert_eq!(x.mul(&x.inv().unwrap()).value(), 1);
        }
    }

    #[test]
    fn primality() {
        assert!(is_odd_prime(3));
        assert!(is_odd_prime(5));
        assert!(!is_odd_prime(2));
        assert!(!is_odd_prime(9));
        assert!(is_odd_prime(101));
    }
}
