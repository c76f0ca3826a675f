//! Exact univariate polynomial arithmetic over the rationals.
//!
//! Polynomials are stored as coefficient vectors in ascending degree with no
//! trailing zero coefficient; the zero polynomial is the empty vector. All
//! arithmetic is exact: coefficients are arbitrary-precision rationals kept
//! in lowest terms by the underlying representation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always reduced, denominator positive.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Sign of a rational as -1, 0, or 1.
pub fn rat_sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `c * t^deg`.
    pub fn monomial(c: Rat, deg: usize) -> Self {
        let mut v = vec![Rat::zero(); deg + 1];
        v[deg] = c;
        Polynomial::new(v)
    }

    /// The identity polynomial `t`.
    pub fn var() -> Self {
        Polynomial::monomial(Rat::one(), 1)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rat) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let v = &rem[shift + i] - c * &factor;
                rem[shift + i] = v;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            quot[shift] = factor;
        }
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Monic greatest common divisor (1 for coprime inputs, 0 only if both are 0).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.primitive_positive();
        let mut b = other.primitive_positive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_positive();
        }
        a.monic()
    }

    /// Divide by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some(l) => {
                let inv = Rat::one() / l;
                self.scale(&inv)
            }
        }
    }

    /// Rescale by a positive rational so that the coefficients are coprime
    /// integers. Preserves the sign of every coefficient.
    pub fn primitive_positive(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        Polynomial::new(
            ints.into_iter()
                .map(|v| Rat::from_integer(v / &content))
                .collect(),
        )
    }

    /// Integer coefficients of the primitive form (ascending).
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive_positive()
            .coeffs
            .iter()
            .map(|c| c.numer().clone())
            .collect()
    }

    /// The squarefree part `f / gcd(f, f')`, monic.
    pub fn squarefree_part(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return Ok(self.monic());
        }
        let (q, r) = self.div_rem(&g)?;
        debug_assert!(r.is_zero());
        Ok(q.monic())
    }

    /// All rational roots, found by the rational-root test on the primitive
    /// integer form. Intended for small coefficients (divisors are enumerated
    /// by trial division).
    pub fn rational_roots(&self) -> Vec<Rat> {
        let mut f = self.primitive_positive();
        if f.is_zero() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        while f.coeff(0).is_zero() && f.degree() > Some(0) {
            if !roots.contains(&Rat::zero()) {
                roots.push(Rat::zero());
            }
            f = Polynomial::new(f.coeffs[1..].to_vec());
        }
        if f.degree() == Some(0) {
            return roots;
        }
        let a0 = f.coeff(0).numer().abs();
        let ad = f.leading().unwrap().numer().abs();
        for p in divisors(&a0) {
            for q in divisors(&ad) {
                for sign in [1i64, -1] {
                    let cand = Rat::new(BigInt::from(sign) * &p, q.clone());
                    if f.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // Trial division; callers only use this on small constants.
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::new(v)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::new(v)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                let u = &v[i + j] + t;
                v[i + j] = u;
            }
        }
        Polynomial::new(v)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                if i == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

/// A rational function `num/den`, kept in lowest terms with monic denominator.
///
/// Used to verify the closed-form identities: every verification reduces to
/// checking that some rational-function expression is identically zero.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Polynomial,
    den: Polynomial,
}

impl RatFun {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let g = num.gcd(&den);
        let (n, rn) = num.div_rem(&g)?;
        let (d, rd) = den.div_rem(&g)?;
        debug_assert!(rn.is_zero() && rd.is_zero());
        let lead = d.leading().unwrap().clone();
        let inv = Rat::one() / lead;
        Ok(RatFun {
            num: n.scale(&inv),
            den: d.monic(),
        })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RatFun {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn var() -> Self {
        RatFun::from_poly(Polynomial::var())
    }

    pub fn constant(c: Rat) -> Self {
        RatFun::from_poly(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &RatFun) -> RatFun {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }

    pub fn sub(&self, rhs: &RatFun) -> RatFun {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        RatFun::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: u32) -> RatFun {
        RatFun {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Derivative by the quotient rule.
    pub fn derivative(&self) -> RatFun {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun::new(num, &self.den * &self.den).expect("nonzero denominator")
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_common_factor() {
        // gcd(t^2 - 1, t - 1) = t - 1
        let a = Polynomial::from_i64(&[-1, 0, 1]);
        let b = Polynomial::from_i64(&[-1, 1]);
        assert_eq!(a.gcd(&b), b.monic());
    }

    #[test]
    fn derivative_of_cube() {
        let t3 = Polynomial::from_i64(&[0, 0, 0, 1]);
        assert_eq!(t3.derivative(), Polynomial::from_i64(&[0, 0, 3]));
    }

    #[test]
    fn divmod_example() {
        // (t^2 + 1) / t = (t, 1)
        let a = Polynomial::from_i64(&[1, 0, 1]);
        let b = Polynomial::from_i64(&[0, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, Polynomial::from_i64(&[0, 1]));
        assert_eq!(r, Polynomial::from_i64(&[1]));
    }

    #[test]
    fn division_by_zero_polynomial_fails() {
        let a = Polynomial::from_i64(&[1, 1]);
        assert!(a.div_rem(&Polynomial::zero()).is_err());
    }

    #[test]
    fn eval_horner() {
        let f = Polynomial::from_i64(&[-1, -4, 4]); // 4t^2 - 4t - 1
        assert_eq!(f.eval(&rat_int(2)), rat_int(7));
        assert_eq!(f.eval(&rat(1, 2)), rat_int(-2));
    }

    #[test]
    fn rational_roots_of_deflated_cubic() {
        // (t - 2)(2t + 1)t = 2t^3 - 3t^2 - 2t
        let f = Polynomial::from_i64(&[0, -2, -3, 2]);
        let mut roots = f.rational_roots();
        roots.sort();
        assert_eq!(roots, vec![rat(-1, 2), rat_int(0), rat_int(2)]);
    }

    #[test]
    fn q_poly_has_no_rational_roots() {
        // 4t^3 - 4t^2 - 1 is irreducible over Q by the rational-root test
        let q = Polynomial::from_i64(&[-1, 0, -4, 4]);
        assert!(q.rational_roots().is_empty());
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        let lin = Polynomial::from_i64(&[-1, 1]);
        let f = &lin.pow(3) * &Polynomial::from_i64(&[2, 1]);
        let sq = f.squarefree_part().unwrap();
        let expected = (&lin * &Polynomial::from_i64(&[2, 1])).monic();
        assert_eq!(sq, expected);
    }

    #[test]
    fn ratfun_normalizes() {
        // (t^2 - 1)/(t - 1) == t + 1
        let f = RatFun::new(
            Polynomial::from_i64(&[-1, 0, 1]),
            Polynomial::from_i64(&[-1, 1]),
        )
        .unwrap();
        assert_eq!(f.num(), &Polynomial::from_i64(&[1, 1]));
        assert_eq!(f.den(), &Polynomial::one());
    }

    #[test]
    fn ratfun_derivative_quotient_rule() {
        // d/dt (1/t) = -1/t^2
        let f = RatFun::new(Polynomial::one(), Polynomial::var()).unwrap();
        let d = f.derivative();
        let expected = RatFun::new(
            Polynomial::from_i64(&[-1]),
            Polynomial::from_i64(&[0, 0, 1]),
        )
        .unwrap();
        assert_eq!(d, expected);
    }
}
