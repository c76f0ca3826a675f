//! Arbitrary-precision binary floating point on top of `BigInt`.
//!
//! A value is `mantissa * 2^exp` with the mantissa normalized to the working
//! precision (at least 128 significand bits in all uses here). Rounding is
//! round-half-away-from-zero; every operation is deterministic, so Monte
//! Carlo aggregates and series solves are reproducible bit for bit.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::poly::Rat;

/// Default significand precision in bits.
pub const DEFAULT_PRECISION: u32 = 192;

#[derive(Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::normalized(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: BigInt, prec: u32) -> Self {
        Self::normalized(v, 0, prec)
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        if r.is_zero() {
            return Self::zero(prec);
        }
        let num = r.numer();
        let den = r.denom();
        // Shift so the quotient carries prec + guard significant bits.
        let shift = (prec as i64 + 16) + (den.bits() as i64) - (num.bits() as i64);
        let shift = shift.max(0) as u64;
        let scaled = num << shift;
        let (q, rem) = num_integer::Integer::div_rem(&scaled, den);
        // Round the division half away from zero.
        let q = round_quotient(q, rem, den);
        Self::normalized(q, -(shift as i64), prec)
    }

    fn normalized(mant: BigInt, exp: i64, prec: u32) -> Self {
        if mant.is_zero() {
            return Self::zero(prec);
        }
        let bits = mant.magnitude().bits();
        let target = prec as u64;
        if bits <= target {
            return BigFloat { mant, exp, prec };
        }
        let drop = bits - target;
        let (rounded, carried) = shift_right_rounded(&mant, drop);
        let mut out = BigFloat {
            mant: rounded,
            exp: exp + drop as i64,
            prec,
        };
        // Rounding can carry into an extra bit; renormalize once.
        if carried && out.mant.magnitude().bits() > target {
            let (m2, _) = shift_right_rounded(&out.mant, 1);
            out.mant = m2;
            out.exp += 1;
        }
        out
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Self::normalized(rhs.mant.clone(), rhs.exp, prec);
        }
        if rhs.is_zero() {
            return Self::normalized(self.mant.clone(), self.exp, prec);
        }
        let (hi, lo) = if self.exp >= rhs.exp {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let shift = (hi.exp - lo.exp) as u64;
        // Beyond the precision window the smaller operand only perturbs the
        // result below one ulp; skip the (potentially enormous) shift.
        if shift > prec as u64 + 64 {
            return Self::normalized(hi.mant.clone(), hi.exp, prec);
        }
        let sum = (&hi.mant << shift) + &lo.mant;
        Self::normalized(sum, lo.exp, prec)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        Self::normalized(&self.mant * &rhs.mant, self.exp + rhs.exp, prec)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        assert!(!rhs.is_zero(), "division by zero BigFloat");
        if self.is_zero() {
            return Self::zero(prec);
        }
        let shift =
            (prec as i64 + 16) + (rhs.mant.magnitude().bits() as i64) - (self.mant.magnitude().bits() as i64);
        let shift = shift.max(0) as u64;
        let scaled = &self.mant << shift;
        let (q, rem) = num_integer::Integer::div_rem(&scaled, &rhs.mant);
        let q = round_quotient(q, rem, &rhs.mant);
        Self::normalized(q, self.exp - rhs.exp - shift as i64, prec)
    }

    pub fn powi(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_i64(1, self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Square root; panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        self.root(2)
    }

    /// Cube root of a nonnegative value.
    pub fn cbrt(&self) -> Self {
        assert!(!self.is_negative(), "cbrt of negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        self.root(3)
    }

    fn root(&self, n: u32) -> Self {
        let prec = self.prec;
        // Scale so the shifted exponent is divisible by n and the mantissa
        // carries about n * (prec + guard) bits going into the integer root.
        let want_bits = (prec as u64 + 16) * n as u64;
        let cur_bits = self.mant.magnitude().bits();
        let mut shift = want_bits.saturating_sub(cur_bits);
        let n64 = n as i64;
        while (self.exp - shift as i64).rem_euclid(n64) != 0 {
            shift += 1;
        }
        let scaled = &self.mant << shift;
        let r = scaled.nth_root(n);
        Self::normalized(r, (self.exp - shift as i64) / n64, prec)
    }

    /// Exact rational value of this float.
    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << self.exp as u64)
        } else {
            Rat::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.magnitude().bits();
        if bits <= 53 {
            return self.mant.to_f64().unwrap_or(f64::NAN) * pow2(self.exp);
        }
        let drop = bits - 53;
        let (top, _) = shift_right_rounded(&self.mant, drop);
        top.to_f64().unwrap_or(f64::NAN) * pow2(self.exp + drop as i64)
    }

    pub fn cmp_value(&self, rhs: &Self) -> Ordering {
        let ls = sign_i8(&self.mant);
        let rs = sign_i8(&rhs.mant);
        if ls != rs {
            return ls.cmp(&rs);
        }
        if ls == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare magnitudes via aligned mantissas.
        let lmag = self.exp + self.mant.magnitude().bits() as i64;
        let rmag = rhs.exp + rhs.mant.magnitude().bits() as i64;
        let mag_order = if lmag != rmag {
            lmag.cmp(&rmag)
        } else {
            let shift = (self.exp - rhs.exp).unsigned_abs();
            if self.exp >= rhs.exp {
                (self.mant.magnitude() << shift).cmp(rhs.mant.magnitude())
            } else {
                self.mant
                    .magnitude()
                    .cmp(&(rhs.mant.magnitude() << shift))
            }
        };
        if ls > 0 {
            mag_order
        } else {
            mag_order.reverse()
        }
    }

    /// Decimal string with the given number of fractional digits, correctly
    /// rounded to within one unit in the last place.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = self.to_rat() * Rat::from_integer(scale.clone());
        let rounded = scaled.round().to_integer();
        let neg = rounded.is_negative();
        let mag = rounded.magnitude().to_string();
        let mag = if mag.len() <= digits as usize {
            format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag)
        } else {
            mag
        };
        let split = mag.len() - digits as usize;
        format!(
            "{}{}.{}",
            if neg { "-" } else { "" },
            &mag[..split],
            &mag[split..]
        )
    }
}

fn sign_i8(v: &BigInt) -> i8 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn pow2(e: i64) -> f64 {
    // Stepped to stay in range for intermediate exponents.
    let mut r = 1.0f64;
    let mut e = e;
    while e > 1000 {
        r *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        r *= 2f64.powi(-1000);
        e += 1000;
    }
    r * 2f64.powi(e as i32)
}

/// Arithmetic shift right with round-half-away-from-zero.
/// Returns (result, whether rounding incremented the magnitude).
fn shift_right_rounded(v: &BigInt, shift: u64) -> (BigInt, bool) {
    if shift == 0 {
        return (v.clone(), false);
    }
    let mag = v.magnitude();
    let kept = mag >> shift;
    let half = num_bigint::BigUint::one() << (shift - 1);
    let dropped = mag - (&kept << shift);
    let (kept, carried) = if dropped >= half {
        (kept + 1u32, true)
    } else {
        (kept, false)
    };
    let out = BigInt::from_biguint(v.sign(), kept);
    (out, carried)
}

fn round_quotient(q: BigInt, rem: BigInt, den: &BigInt) -> BigInt {
    // q, rem from truncating division: adjust to round-half-away-from-zero.
    if rem.is_zero() {
        return q;
    }
    let twice: BigInt = rem.abs() * 2;
    if twice >= den.abs() {
        if q.is_negative() || (q.is_zero() && rem.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    fn close(a: &BigFloat, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() <= tol
    }

    #[test]
    fn basic_arithmetic_matches_f64() {
        let p = DEFAULT_PRECISION;
        let a = BigFloat::from_rat(&rat(355, 113), p);
        let b = BigFloat::from_rat(&rat(-7, 3), p);
        assert!(close(&a.add(&b), 355.0 / 113.0 - 7.0 / 3.0, 1e-14));
        assert!(close(&a.mul(&b), 355.0 / 113.0 * (-7.0 / 3.0), 1e-14));
        assert!(close(&a.div(&b), (355.0 / 113.0) / (-7.0 / 3.0), 1e-14));
        assert!(close(&a.sub(&b), 355.0 / 113.0 + 7.0 / 3.0, 1e-14));
    }

    #[test]
    fn sqrt_squares_back() {
        let p = 256;
        let two = BigFloat::from_i64(2, p);
        let r = two.sqrt();
        let back = r.mul(&r).sub(&two).abs();
        assert!(back.cmp_value(&BigFloat::from_rat(&rat(1, i64::MAX), p)) == Ordering::Less);
    }

    #[test]
    fn cbrt_of_cube() {
        let p = 256;
        let x = BigFloat::from_i64(27, p);
        let r = x.cbrt();
        let three = BigFloat::from_i64(3, p);
        let err = r.sub(&three).abs().to_f64();
        assert!(err < 1e-60, "err = {err}");
    }

    #[test]
    fn third_times_three_is_one() {
        let p = DEFAULT_PRECISION;
        let third = BigFloat::from_i64(1, p).div(&BigFloat::from_i64(3, p));
        let one = third.mul(&BigFloat::from_i64(3, p));
        let err = one.sub(&BigFloat::from_i64(1, p)).abs();
        // Error stays within a couple of ulps of the working precision.
        assert!(err.to_f64() < 1e-55);
    }

    #[test]
    fn small_integers_are_exact() {
        let p = DEFAULT_PRECISION;
        let a = BigFloat::from_i64(1 << 40, p);
        let b = BigFloat::from_i64(12345, p);
        let s = a.add(&b);
        assert_eq!(s.to_rat(), rat_int((1i64 << 40) + 12345));
    }

    #[test]
    fn ordering_and_alignment() {
        let p = DEFAULT_PRECISION;
        let tiny = BigFloat::from_rat(&rat(1, 1_000_000_000), p);
        let one = BigFloat::from_i64(1, p);
        assert_eq!(tiny.cmp_value(&one), Ordering::Less);
        assert_eq!(one.add(&tiny).cmp_value(&one), Ordering::Greater);
        assert_eq!(one.neg().cmp_value(&tiny.neg()), Ordering::Less);
    }

    #[test]
    fn decimal_rendering() {
        let p = DEFAULT_PRECISION;
        let x = BigFloat::from_rat(&rat(2, 3), p);
        assert_eq!(x.to_decimal_string(6), "0.666667");
        let y = BigFloat::from_rat(&rat(-5, 4), p);
        assert_eq!(y.to_decimal_string(3), "-1.250");
    }
}
