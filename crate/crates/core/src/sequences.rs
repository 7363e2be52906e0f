//! Classical Pell numbers, generalized Pell (p,i)-numbers and the rational
//! brackets around the silver ratio `1 + √2` used by the correction checks.

use alloc::vec::Vec;
use core::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number with a positive denominator in lowest terms.
pub type Rational = BigRational;

/// Parameters `(p, i)` of a generalized Pell sequence, `p >= 1`, `0 <= i <= p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequenceParams {
    p: u32,
    i: u32,
}

impl SequenceParams {
    pub fn new(p: u32, i: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::Domain("p must be at least 1"));
        }
        if i > p {
            return Err(Error::Domain("i must satisfy 0 <= i <= p"));
        }
        Ok(SequenceParams { p, i })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn i(&self) -> u32 {
        self.i
    }
}

/// Classical Pell numbers `P_0..=P_n` with `P_0 = 0`, `P_1 = 1`.
pub fn pell_table(n: u32) -> Vec<BigInt> {
    let mut terms = Vec::with_capacity(n as usize + 1);
    terms.push(BigInt::zero());
    if n >= 1 {
        terms.push(BigInt::one());
    }
    for k in 2..=n as usize {
        let next = &terms[k - 1] * 2u32 + &terms[k - 2];
        terms.push(next);
    }
    terms
}

/// The classical Pell number `P_n`.
pub fn pell(n: u32) -> BigInt {
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &cur * 2u32 + &prev;
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// Generalized Pell terms `P_p^{(i)}(1..=count)`; element `k` holds `P(k + 1)`.
pub fn gen_pell_table(params: SequenceParams, count: u32) -> Vec<BigInt> {
    let p = params.p as usize;
    let i = params.i as usize;
    let mut terms: Vec<BigInt> = Vec::with_capacity(count as usize);
    for idx in 1..=count as usize {
        let value = if idx <= i {
            BigInt::zero()
        } else if idx <= p + 1 {
            BigInt::one()
        } else {
            &terms[idx - 2] * 2u32 + &terms[idx - p - 2]
        };
        terms.push(value);
    }
    terms
}

/// `P_p^{(i)}(n)` for `n >= 1`.
pub fn gen_pell(params: SequenceParams, n: u32) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("generalized Pell index starts at 1"));
    }
    let mut table = gen_pell_table(params, n);
    Ok(table.pop().expect("table has n >= 1 terms"))
}

/// An element `a + b√2` of the ring `Z[√2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd2 {
    pub a: BigInt,
    pub b: BigInt,
}

impl Surd2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Surd2 { a: a.into(), b: b.into() }
    }

    pub fn one() -> Self {
        Surd2::new(1, 0)
    }

    /// The field norm `a² - 2b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.b * &self.b * 2u32
    }

    pub fn conjugate(&self) -> Self {
        Surd2 { a: self.a.clone(), b: -&self.b }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Surd2::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Exact quotient in `Z[√2]`, or `None` if it does not exist there.
    pub fn div_exact(&self, divisor: &Surd2) -> Option<Surd2> {
        let norm = divisor.norm();
        if norm.is_zero() {
            return None;
        }
        let scaled = self * &divisor.conjugate();
        let (qa, ra) = scaled.a.div_rem(&norm);
        let (qb, rb) = scaled.b.div_rem(&norm);
        (ra.is_zero() && rb.is_zero()).then_some(Surd2 { a: qa, b: qb })
    }
}

impl<'a> Mul<&'a Surd2> for &'a Surd2 {
    type Output = Surd2;

    fn mul(self, rhs: &'a Surd2) -> Surd2 {
        Surd2 { a: &self.a * &rhs.a + &self.b * &rhs.b * 2u32, b: &self.a * &rhs.b + &self.b * &rhs.a }
    }
}

impl<'a> Sub<&'a Surd2> for &'a Surd2 {
    type Output = Surd2;

    fn sub(self, rhs: &'a Surd2) -> Surd2 {
        Surd2 { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

/// `P_n` through the Binet formula `(γ^n - δ^n) / (γ - δ)` evaluated in `Z[√2]`.
pub fn binet_pell(n: u32) -> BigInt {
    let gamma = Surd2::new(1, 1);
    let delta = gamma.conjugate();
    let numerator = &gamma.pow(n) - &delta.pow(n);
    let denominator = &gamma - &delta;
    let quotient = numerator.div_exact(&denominator).expect("γ^n - δ^n is divisible by 2√2");
    debug_assert!(quotient.b.is_zero());
    quotient.a
}

/// The exact ratio `P_{n+1} / P_n`.
pub fn pell_ratio(n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain("pell_ratio needs n >= 1"));
    }
    let table = pell_table(n + 1);
    Ok(Rational::new(table[n as usize + 1].clone(), table[n as usize].clone()))
}

/// Open interval `(lo, hi)` around the silver ratio. `hi = None` means the
/// interval is unbounded above, which happens for `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioInterval {
    lo: Rational,
    hi: Option<Rational>,
}

impl RatioInterval {
    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> Option<&Rational> {
        self.hi.as_ref()
    }

    pub fn contains(&self, value: &Rational) -> bool {
        *value > self.lo && self.hi.as_ref().is_none_or(|hi| value < hi)
    }

    /// Strict membership of `num / den`, by cross-multiplication.
    pub fn contains_ratio(&self, num: &BigInt, den: &BigInt) -> Result<bool> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        // num/den > lo.n/lo.d  <=>  num * lo.d > lo.n * den   (both denominators positive)
        let above = &num * self.lo.denom() > self.lo.numer() * &den;
        let below = match &self.hi {
            Some(hi) => &num * hi.denom() < hi.numer() * &den,
            None => true,
        };
        Ok(above && below)
    }

    /// `hi - lo`, or `None` when unbounded.
    pub fn width(&self) -> Option<Rational> {
        self.hi.as_ref().map(|hi| hi - &self.lo)
    }
}

/// Interval bracketed by the consecutive ratios
/// `P_1^{(1)}(n+2) / P_1^{(1)}(n+1)` and `P_1^{(1)}(n+1) / P_1^{(1)}(n)`,
/// i.e. `P_{n+1}/P_n` and `P_n/P_{n-1}`, ordered so that `lo < hi`.
pub fn ratio_interval(n: u32) -> Result<RatioInterval> {
    if n == 0 {
        return Err(Error::Domain("ratio_interval needs n >= 1"));
    }
    let table = pell_table(n + 1);
    let n = n as usize;
    let upper_ratio = Rational::new(table[n + 1].clone(), table[n].clone());
    if table[n - 1].is_zero() {
        return Ok(RatioInterval { lo: upper_ratio, hi: None });
    }
    let lower_ratio = Rational::new(table[n].clone(), table[n - 1].clone());
    let (lo, hi) = if upper_ratio < lower_ratio { (upper_ratio, lower_ratio) } else { (lower_ratio, upper_ratio) };
    Ok(RatioInterval { lo, hi: Some(hi) })
}
