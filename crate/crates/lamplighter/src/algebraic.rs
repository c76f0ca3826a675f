//! Real algebraic numbers: Sturm sequences, root isolation and refinement,
//! and minimal polynomials of elements of quotient rings Q[t]/(M).
//!
//! An algebraic number is a squarefree defining polynomial together with an
//! isolating interval with rational endpoints containing exactly one real
//! root (certified by a Sturm count of 1, which the constructors enforce).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use crate::poly::{rat_sign, Polynomial, Rat};

/// Sturm chain of the squarefree part of a polynomial. Chain elements are
/// rescaled to primitive integer form by positive factors, which preserves
/// the sign pattern while keeping coefficient growth in check.
pub struct SturmChain {
    seq: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(f: &Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f0 = f.squarefree_part()?.primitive_positive();
        let mut seq = vec![f0.clone()];
        if f0.degree() > Some(0) {
            seq.push(f0.derivative().primitive_positive());
            loop {
                let n = seq.len();
                let (_, r) = seq[n - 2].div_rem(&seq[n - 1])?;
                if r.is_zero() {
                    break;
                }
                seq.push((-&r).primitive_positive());
            }
        }
        Ok(SturmChain { seq })
    }

    /// Number of sign variations of the chain at x (zeros skipped).
    fn variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.seq {
            let s = rat_sign(&p.eval(x));
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Exact count of distinct real roots in the open interval (lo, hi),
    /// assuming the squarefree part does not vanish at either endpoint.
    fn count_open(&self, lo: &Rat, hi: &Rat) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations(lo) - self.variations(hi)
    }

    pub fn squarefree(&self) -> &Polynomial {
        &self.seq[0]
    }
}

/// A positive rational strictly below the minimal distance between distinct
/// real roots of the (squarefree, primitive integer) polynomial. Mahler-type
/// bound computed conservatively from bit lengths.
fn root_separation_lower_bound(f: &Polynomial) -> Rat {
    let d = f.degree().unwrap_or(0).max(1) as u64;
    let norm_sq: BigInt = f
        .primitive_integer_coeffs()
        .iter()
        .map(|c| c * c)
        .sum::<BigInt>();
    // sep > sqrt(3) * d^{-(d+2)/2} * ||f||_2^{-(d-1)}; undercut via bit counts.
    let log2_d = 64 - (d.leading_zeros() as u64);
    let bits = ((d + 2) * log2_d).div_ceil(2) + (d - 1) * norm_sq.bits().div_ceil(2) + 2;
    Rat::new(BigInt::one(), BigInt::one() << bits.min(1 << 20))
}

/// Exact number of distinct real roots of `f` in the open interval (lo, hi).
///
/// Endpoints at which `f` vanishes are nudged inward by a rational smaller
/// than the minimal root gap, so the count refers to the open interval.
pub fn sturm_count(f: &Polynomial, lo: &Rat, hi: &Rat) -> Result<usize> {
    let chain = SturmChain::new(f)?;
    let sf = chain.squarefree().clone();
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    if lo >= hi {
        return Ok(0);
    }
    let gap = root_separation_lower_bound(&sf);
    let width_cap = (&hi - &lo) / Rat::from_integer(BigInt::from(4));
    let nudge = if gap < width_cap { gap } else { width_cap };
    if sf.eval(&lo).is_zero() {
        lo += &nudge;
    }
    if sf.eval(&hi).is_zero() {
        hi -= &nudge;
    }
    Ok(chain.count_open(&lo, &hi))
}

/// A real algebraic number: squarefree defining polynomial plus an isolating
/// interval (lo, hi) that contains exactly one of its real roots.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    defining: Polynomial,
    lo: Rat,
    hi: Rat,
}

impl AlgebraicNumber {
    /// Certify that (lo, hi) isolates exactly one root of `f` and build the
    /// algebraic number. The defining polynomial is replaced by the monic
    /// squarefree part.
    pub fn isolate_unique(f: &Polynomial, lo: &Rat, hi: &Rat) -> Result<Self> {
        let chain = SturmChain::new(f)?;
        let sf = chain.squarefree().clone();
        let count = sturm_count(&sf, lo, hi)?;
        if count != 1 {
            return Err(Error::InvalidParameter(format!(
                "interval ({}, {}) contains {} roots of {}, expected 1",
                lo, hi, count, f
            )));
        }
        let mut x = AlgebraicNumber {
            defining: sf,
            lo: lo.clone(),
            hi: hi.clone(),
        };
        x.ensure_sign_change();
        Ok(x)
    }

    /// Isolate all real roots of `f` inside (lo, hi), ascending.
    pub fn isolate_all(f: &Polynomial, lo: &Rat, hi: &Rat) -> Result<Vec<Self>> {
        let chain = SturmChain::new(f)?;
        let sf = chain.squarefree().clone();
        let gap = root_separation_lower_bound(&sf);
        let mut lo = lo.clone();
        let mut hi = hi.clone();
        if sf.eval(&lo).is_zero() {
            lo -= &gap;
        }
        if sf.eval(&hi).is_zero() {
            hi += &gap;
        }
        let mut out = Vec::new();
        let mut stack = vec![(lo, hi)];
        while let Some((a, b)) = stack.pop() {
            let n = chain.count_open(&a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 {
                let mut x = AlgebraicNumber {
                    defining: sf.clone(),
                    lo: a,
                    hi: b,
                };
                x.ensure_sign_change();
                out.push(x);
                continue;
            }
            let mut mid = (&a + &b) / Rat::from_integer(BigInt::from(2));
            if sf.eval(&mid).is_zero() {
                // Shift the split point off the root; the gap bound keeps
                // both halves' endpoints away from every other root.
                let shift = {
                    let quarter = (&b - &a) / Rat::from_integer(BigInt::from(8));
                    if gap < quarter { gap.clone() } else { quarter }
                };
                mid += shift;
            }
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        out.sort_by(|p, q| p.lo.cmp(&q.lo));
        Ok(out)
    }

    /// Represent an exact rational as an algebraic number.
    pub fn from_rat(r: &Rat) -> Self {
        let defining = Polynomial::new(vec![-r.clone(), Rat::one()]);
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        AlgebraicNumber {
            defining,
            lo: r - &half,
            hi: r + &half,
        }
    }

    pub fn defining(&self) -> &Polynomial {
        &self.defining
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// Shrink the isolating interval until its endpoints bracket the root
    /// with a sign change (already true except for freshly isolated
    /// intervals whose endpoint signs have not been inspected).
    fn ensure_sign_change(&mut self) {
        let slo = rat_sign(&self.defining.eval(&self.lo));
        let shi = rat_sign(&self.defining.eval(&self.hi));
        debug_assert!(slo != 0 && shi != 0, "endpoints must not be roots");
        debug_assert!(slo != shi, "squarefree with one root must change sign");
    }

    /// Bisect until `hi - lo < eps`. The interval always keeps exactly one
    /// root (the sign change is preserved at every step).
    pub fn refine(&self, eps: &Rat) -> Self {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        let slo = rat_sign(&self.defining.eval(&lo));
        let two = Rat::from_integer(BigInt::from(2));
        while &(&hi - &lo) >= &eps.clone() {
            let mid = (&lo + &hi) / &two;
            let smid = rat_sign(&self.defining.eval(&mid));
            if smid == 0 {
                // The root is exactly the rational midpoint; close in on it
                // symmetrically while keeping the endpoints off the root.
                let mut w = (&hi - &lo) / Rat::from_integer(BigInt::from(8));
                loop {
                    let a = &mid - &w;
                    let b = &mid + &w;
                    if &(&b - &a) < &eps.clone()
                        && !self.defining.eval(&a).is_zero()
                        && !self.defining.eval(&b).is_zero()
                    {
                        return AlgebraicNumber {
                            defining: self.defining.clone(),
                            lo: a,
                            hi: b,
                        };
                    }
                    w = w / &two;
                }
            } else if smid == slo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        AlgebraicNumber {
            defining: self.defining.clone(),
            lo,
            hi,
        }
    }

    /// Midpoint of the isolating interval refined to roughly `prec` bits.
    pub fn approx(&self, prec: u32) -> BigFloat {
        let eps = Rat::new(BigInt::one(), BigInt::one() << (prec as u64 + 8));
        let fine = self.refine(&eps);
        let mid = (&fine.lo + &fine.hi) / Rat::from_integer(BigInt::from(2));
        BigFloat::from_rat(&mid, prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.approx(64).to_f64()
    }
}

/// Extended Euclid in Q[t]: returns (g, s) with s*a = g (mod m), g = gcd(a, m).
fn half_extended_gcd(a: &Polynomial, m: &Polynomial) -> (Polynomial, Polynomial) {
    let mut r0 = m.clone();
    let mut r1 = a.clone();
    let mut s0 = Polynomial::zero();
    let mut s1 = Polynomial::one();
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
        let s = &s0 - &(&q * &s1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

/// Arithmetic in the quotient ring Q[t]/(modulus).
pub struct QuotientRing {
    modulus: Polynomial,
}

impl QuotientRing {
    pub fn new(modulus: &Polynomial) -> Result<Self> {
        if modulus.degree().unwrap_or(0) < 1 {
            return Err(Error::InvalidParameter(
                "quotient modulus must have degree >= 1".into(),
            ));
        }
        Ok(QuotientRing {
            modulus: modulus.monic(),
        })
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let (_, r) = p.div_rem(&self.modulus).expect("monic modulus");
        r
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&(a * b))
    }

    /// Inverse of `a` modulo the modulus. Fails when gcd(a, modulus) is not
    /// constant, which also detects a reducible modulus; the common factor is
    /// reported.
    pub fn inverse(&self, a: &Polynomial) -> Result<Polynomial> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(Error::NonInvertibleDenominator {
                factor: format!("{}", self.modulus),
            });
        }
        let (g, s) = half_extended_gcd(&a, &self.modulus);
        if g.degree() != Some(0) {
            return Err(Error::NonInvertibleDenominator {
                factor: format!("{}", g.monic()),
            });
        }
        let inv_lead = Rat::one() / g.leading().unwrap();
        Ok(self.reduce(&s.scale(&inv_lead)))
    }
}

/// Monic minimal polynomial of the residue class `num/den` in Q[t]/(modulus),
/// found by exact linear algebra on its powers in the power basis.
///
/// For an irreducible modulus this is the minimal polynomial of the algebraic
/// number num(r)/den(r) at any root r; for a merely squarefree modulus it is
/// still a squarefree polynomial vanishing on the element. Its degree divides
/// the modulus degree whenever the modulus is irreducible.
pub fn minimal_polynomial_in_extension(
    num: &Polynomial,
    den: &Polynomial,
    modulus: &Polynomial,
) -> Result<Polynomial> {
    let ring = QuotientRing::new(modulus)?;
    let d = ring.degree();
    let den_inv = ring.inverse(den)?;
    let elem = ring.mul(&ring.reduce(num), &den_inv);

    // Rows: 1, e, e^2, ..., each as coordinates in the power basis.
    let mut powers: Vec<Vec<Rat>> = Vec::with_capacity(d + 1);
    let mut acc = Polynomial::one();
    for _ in 0..=d {
        let mut row = vec![Rat::zero(); d];
        for (i, c) in acc.coeffs().iter().enumerate() {
            row[i] = c.clone();
        }
        powers.push(row);
        acc = ring.mul(&acc, &elem);
    }

    for r in 1..=d {
        // Solve sum_{i<r} c_i e^i = e^r if possible.
        if let Some(cs) = solve_linear(&powers[..r], &powers[r], d) {
            let mut coeffs = cs.iter().map(|c| -c).collect::<Vec<_>>();
            coeffs.push(Rat::one());
            return Ok(Polynomial::new(coeffs));
        }
    }
    unreachable!("e^d is always linearly dependent on lower powers");
}

/// Solve the overdetermined system sum_i x_i rows[i] = target exactly.
fn solve_linear(rows: &[Vec<Rat>], target: &[Rat], dim: usize) -> Option<Vec<Rat>> {
    let r = rows.len();
    // Columns of the matrix are the row vectors; unknowns multiply them.
    let mut m: Vec<Vec<Rat>> = (0..dim)
        .map(|j| {
            let mut row: Vec<Rat> = (0..r).map(|i| rows[i][j].clone()).collect();
            row.push(target[j].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..r {
        let Some(sel) = (pivot_row..dim).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, sel);
        let inv = Rat::one() / &m[pivot_row][col];
        for x in m[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..dim {
            if i != pivot_row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=r {
                    let delta = &f * &m[pivot_row][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
        if pivot_row == dim {
            break;
        }
    }
    // Inconsistent if any zero-row has nonzero rhs.
    for row in m.iter().skip(pivot_row) {
        if row[..r].iter().all(|x| x.is_zero()) && !row[r].is_zero() {
            return None;
        }
    }
    // Unique solution required: every unknown must have a pivot.
    if pivots.len() < r {
        return None;
    }
    let mut xs = vec![Rat::zero(); r];
    for (i, &col) in pivots.iter().enumerate() {
        xs[col] = m[i][r].clone();
    }
    Some(xs)
}

/// The rational with the smallest denominator in the closed interval
/// [lo, hi], by the Stern-Brocot / continued-fraction construction.
pub fn simplest_rational_in(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi);
    fn go(lo: &Rat, hi: &Rat) -> Rat {
        let fl = lo.floor();
        if &fl >= lo {
            // lo is an integer (floor == lo)
            return fl;
        }
        let next = &fl + Rat::one();
        if &next <= hi {
            return next;
        }
        // Recurse on the reciprocal of the fractional parts.
        let lo_frac = lo - &fl;
        let hi_frac = hi - &fl;
        let inner = go(&(Rat::one() / hi_frac), &(Rat::one() / lo_frac));
        fl + Rat::one() / inner
    }
    if lo.is_negative() && !hi.is_negative() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -go(&-hi.clone(), &-lo.clone());
    }
    go(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    #[test]
    fn sturm_counts_examples() {
        // sqrt(2) is the only root of t^2 - 2 in (1, 2)
        let f = Polynomial::from_i64(&[-2, 0, 1]);
        assert_eq!(sturm_count(&f, &rat_int(1), &rat_int(2)).unwrap(), 1);
        // the cubic 4t^3 - 4t^2 - 1 has exactly one root in (1, 3/2)
        let q = Polynomial::from_i64(&[-1, 0, -4, 4]);
        assert_eq!(sturm_count(&q, &rat_int(1), &rat(3, 2)).unwrap(), 1);
        // t^2 + 1 has no real roots
        let g = Polynomial::from_i64(&[1, 0, 1]);
        assert_eq!(sturm_count(&g, &rat_int(-10), &rat_int(10)).unwrap(), 0);
    }

    #[test]
    fn sturm_cubic_matches_sign_change_scan() {
        let q = Polynomial::from_i64(&[-1, 0, -4, 4]);
        // scan at step 1/64 over (1, 3/2)
        let mut changes = 0;
        let mut last = rat_sign(&q.eval(&rat_int(1)));
        for i in 1..=32 {
            let x = rat_int(1) + rat(i, 64);
            let s = rat_sign(&q.eval(&x));
            if s != 0 && s != last {
                changes += 1;
            }
            if s != 0 {
                last = s;
            }
        }
        assert_eq!(changes, 1);
        assert_eq!(sturm_count(&q, &rat_int(1), &rat(3, 2)).unwrap(), changes);
    }

    #[test]
    fn sturm_handles_endpoint_roots() {
        // roots at 1 and 2; count in the open interval (1, 2) must be 0,
        // count in (1, 3) must be 1.
        let f = &Polynomial::from_i64(&[-1, 1]) * &Polynomial::from_i64(&[-2, 1]);
        assert_eq!(sturm_count(&f, &rat_int(1), &rat_int(2)).unwrap(), 0);
        assert_eq!(sturm_count(&f, &rat_int(1), &rat_int(3)).unwrap(), 1);
        assert_eq!(sturm_count(&f, &rat_int(0), &rat_int(2)).unwrap(), 1);
    }

    #[test]
    fn sturm_counts_multiple_roots_once() {
        // (t - 1)^2 (t + 1): distinct roots are -1 and 1
        let f = &Polynomial::from_i64(&[-1, 1]).pow(2) * &Polynomial::from_i64(&[1, 1]);
        assert_eq!(sturm_count(&f, &rat_int(-2), &rat_int(2)).unwrap(), 2);
    }

    #[test]
    fn refine_sqrt2() {
        let f = Polynomial::from_i64(&[-2, 0, 1]);
        let x = AlgebraicNumber::isolate_unique(&f, &rat_int(1), &rat_int(2)).unwrap();
        let r = x.refine(&rat(1, 1000));
        assert!(*r.lo() > &rat(1414, 1000) - rat(1, 1000));
        assert!(*r.hi() < &rat(14143, 10000) + rat(1, 1000));
        assert!(r.width() < rat(1, 1000));
        // the refined interval still isolates
        assert_eq!(sturm_count(&f, r.lo(), r.hi()).unwrap(), 1);
    }

    #[test]
    fn refine_rational_root_hits_midpoint() {
        // t - 5/4 refined through the exact-midpoint branch
        let f = Polynomial::new(vec![rat(-5, 4), rat_int(1)]);
        let x = AlgebraicNumber::isolate_unique(&f, &rat_int(1), &rat(3, 2)).unwrap();
        let r = x.refine(&rat(1, 1_000_000_000));
        assert!(r.contains(&rat(5, 4)));
        assert!(r.width() < rat(1, 1_000_000_000));
    }

    #[test]
    fn isolate_all_roots_of_quintic() {
        // 3p^5 - 2p^4 - 2p^3 - 2p^2 - 2p + 1 has three real roots
        let f = Polynomial::from_i64(&[1, -2, -2, -2, -2, 3]);
        let roots = AlgebraicNumber::isolate_all(&f, &rat_int(-100), &rat_int(100)).unwrap();
        assert_eq!(roots.len(), 3);
        let in_unit: Vec<_> = roots
            .iter()
            .filter(|r| r.lo() > &rat_int(0) && r.hi() < &rat_int(1))
            .collect();
        // refinement separates the middle root into (0, 1)
        let refined: Vec<_> = roots.iter().map(|r| r.refine(&rat(1, 1 << 20))).collect();
        let in_unit_refined: Vec<_> = refined
            .iter()
            .filter(|r| r.lo() >= &rat_int(0) && r.hi() <= &rat_int(1))
            .collect();
        assert!(in_unit.len().max(in_unit_refined.len()) == 1);
    }

    #[test]
    fn minpoly_identity_element() {
        let m = Polynomial::from_i64(&[-2, 0, 1]);
        let p = minimal_polynomial_in_extension(&Polynomial::var(), &Polynomial::one(), &m).unwrap();
        assert_eq!(p, m.monic());
    }

    #[test]
    fn minpoly_of_square_is_linear() {
        // t^2 = 2 in Q[t]/(t^2 - 2): minimal polynomial is t - 2
        let m = Polynomial::from_i64(&[-2, 0, 1]);
        let e = Polynomial::from_i64(&[0, 0, 1]);
        let p = minimal_polynomial_in_extension(&e, &Polynomial::one(), &m).unwrap();
        assert_eq!(p, Polynomial::from_i64(&[-2, 1]));
    }

    #[test]
    fn noninvertible_denominator_reports_factor() {
        // modulus (t-1)(t-2) reducible; denominator t-1 shares a factor
        let m = &Polynomial::from_i64(&[-1, 1]) * &Polynomial::from_i64(&[-2, 1]);
        let err = minimal_polynomial_in_extension(
            &Polynomial::var(),
            &Polynomial::from_i64(&[-1, 1]),
            &m,
        )
        .unwrap_err();
        match err {
            Error::NonInvertibleDenominator { factor } => assert!(factor.contains("t")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn simplest_rational_examples() {
        assert_eq!(
            simplest_rational_in(&rat(31, 100), &rat(35, 100)),
            rat(1, 3)
        );
        assert_eq!(simplest_rational_in(&rat(-1, 3), &rat(1, 5)), rat_int(0));
        assert_eq!(simplest_rational_in(&rat(5, 2), &rat(7, 2)), rat_int(3));
        let x = simplest_rational_in(&rat(666, 1000), &rat(667, 1000));
        assert_eq!(x, rat(2, 3));
    }

    proptest::proptest! {
        #[test]
        fn sturm_matches_known_roots(roots in proptest::collection::vec((-6i64..6, 1i64..4), 1..5),
                                     lo in -8i64..0, span in 1i64..16) {
            // f = prod (d*t - n) with known rational roots n/d
            let mut f = Polynomial::one();
            for &(n, d) in &roots {
                f = &f * &Polynomial::new(vec![rat_int(-n), rat_int(d)]);
            }
            let lo = rat(2*lo + 1, 2);   // half-integers avoid endpoint roots
            let hi = &lo + rat_int(span);
            let mut distinct: Vec<Rat> = roots.iter().map(|&(n, d)| rat(n, d)).collect();
            distinct.sort();
            distinct.dedup();
            let expected = distinct.iter().filter(|r| *r > &lo && *r < &hi).count();
            proptest::prop_assert_eq!(sturm_count(&f, &lo, &hi).unwrap(), expected);
        }

        #[test]
        fn simplest_rational_is_inside(a in -50i64..50, b in 1i64..40, w in 1i64..30) {
            let lo = rat(a, b);
            let hi = &lo + rat(w, 7);
            let s = simplest_rational_in(&lo, &hi);
            proptest::prop_assert!(s >= lo && s <= hi);
        }
    }
}
