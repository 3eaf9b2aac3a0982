//! Exact Laurent polynomials in `q` with half-integer exponents.
//!
//! Exponents are stored doubled ([`HalfExp`]) so that `q^{n^2/2}` style
//! prefactors are representable without rational exponents. Coefficients are
//! arbitrary-precision integers and the term map never stores a zero.
//!
//! Products and exact divisions run on dense buffers laid out on the common
//! exponent lattice of the operands, with an `i128` fast path that falls back
//! to big integers on overflow.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exponent of `q` measured in halves: `q^{3/2}` has `twice() == 3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfExp(i64);

impl HalfExp {
    pub const ZERO: HalfExp = HalfExp(0);

    pub const fn from_twice(twice: i64) -> Self {
        HalfExp(twice)
    }

    /// The integer exponent `e`.
    pub const fn int(e: i64) -> Self {
        HalfExp(2 * e)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Largest integer not exceeding the exponent.
    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }
}

impl From<i64> for HalfExp {
    fn from(e: i64) -> Self {
        HalfExp::int(e)
    }
}

impl From<i32> for HalfExp {
    fn from(e: i32) -> Self {
        HalfExp::int(e as i64)
    }
}

impl Add for HalfExp {
    type Output = HalfExp;
    fn add(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 + rhs.0)
    }
}

impl Sub for HalfExp {
    type Output = HalfExp;
    fn sub(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 - rhs.0)
    }
}

impl Neg for HalfExp {
    type Output = HalfExp;
    fn neg(self) -> HalfExp {
        HalfExp(-self.0)
    }
}

impl Mul<i64> for HalfExp {
    type Output = HalfExp;
    fn mul(self, rhs: i64) -> HalfExp {
        HalfExp(self.0 * rhs)
    }
}

impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// First exponent (ascending) at which two polynomials or series differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: HalfExp,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Exact Laurent polynomial in `q` over the integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<HalfExp, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, HalfExp::ZERO)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, HalfExp::ZERO)
    }

    pub fn monomial(c: impl Into<BigInt>, e: HalfExp) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// `q^e` for an integer exponent.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, HalfExp::int(e))
    }

    /// `q^{twice/2}`.
    pub fn q_half_pow(twice: i64) -> Self {
        Self::monomial(1, HalfExp::from_twice(twice))
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (HalfExp, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `c[0] + c[1] q + c[2] q^2 + ...`
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (HalfExp::int(i as i64), c)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&HalfExp::ZERO).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (HalfExp, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: HalfExp) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<HalfExp> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<HalfExp> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.is_integer())
    }

    pub fn has_nonnegative_exponents(&self) -> bool {
        self.min_exp().is_none_or(|e| e.twice() >= 0)
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub(crate) fn add_term(&mut self, e: HalfExp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, e: HalfExp, c: &BigInt, negate: bool) {
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(if negate { -c } else { c.clone() });
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                if negate {
                    *o.get_mut() -= c;
                } else {
                    *o.get_mut() += c;
                }
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    /// Multiplies by the monomial `q^e`.
    pub fn shift(&self, e: HalfExp) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k + e, c.clone())).collect(),
        }
    }

    /// The base change `q -> q^k`.
    ///
    /// # Panics
    /// Panics if `k == 0`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitute_power requires a nonzero power");
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e * k, c.clone())).collect(),
        }
    }

    /// The base change `q -> q^{1/2}`; `None` when a half-integer exponent
    /// would have to become a quarter.
    pub fn halve_exponents(&self) -> Option<Self> {
        if !self.is_integer_exponents() {
            return None;
        }
        Some(LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (HalfExp(e.0 / 2), c.clone()))
                .collect(),
        })
    }

    /// Drops every term with exponent above `order`.
    pub fn truncated(&self, order: HalfExp) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .range(..=order)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Divides every coefficient by two, failing on odd coefficients.
    pub fn halve_coefficients(&self) -> Result<Self> {
        let two = BigInt::from(2);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (quot, rem) = c.div_rem(&two);
            if !rem.is_zero() {
                return Err(Error::OddCoefficient(e.to_string()));
            }
            terms.insert(*e, quot);
        }
        Ok(LaurentPoly { terms })
    }

    /// Lowest exponent where `self` and `other` differ, considering only
    /// exponents `<= up_to` when given.
    pub fn first_mismatch(&self, other: &Self, up_to: Option<HalfExp>) -> Option<Mismatch> {
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        let hit = loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break None,
                (Some((ea, ca)), None) => (**ea, (*ca).clone(), BigInt::zero()),
                (None, Some((eb, cb))) => (**eb, BigInt::zero(), (*cb).clone()),
                (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                    std::cmp::Ordering::Less => (**ea, (*ca).clone(), BigInt::zero()),
                    std::cmp::Ordering::Greater => (**eb, BigInt::zero(), (*cb).clone()),
                    std::cmp::Ordering::Equal => {
                        if ca != cb {
                            break Some((**ea, (*ca).clone(), (*cb).clone()));
                        }
                        a.next();
                        b.next();
                        continue;
                    }
                },
            };
            break Some(next);
        };
        let (exponent, lhs, rhs) = hit?;
        if up_to.is_some_and(|o| exponent > o) {
            return None;
        }
        Some(Mismatch { exponent, lhs, rhs })
    }

    /// Product restricted to exponents `<= cap`.
    pub fn mul_truncated(&self, other: &Self, cap: HalfExp) -> Self {
        mul_impl(self, other, Some(cap))
    }

    /// Exact quotient `self / divisor`; any nonzero remainder is an error.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        div_exact_impl(self, divisor)
    }

    /// Exact quotient by the binomial `1 - q^e`, `e > 0`.
    pub fn div_one_minus(&self, e: HalfExp) -> Result<Self> {
        assert!(e.is_positive());
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Peel from the top: p = quot * (1 - q^e) gives quot[t - e] = -p[t] + quot[t].
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let lo = self.min_exp().unwrap();
        while let Some((top, c)) = rem.terms.iter().next_back().map(|(k, v)| (*k, v.clone())) {
            if top - e < lo {
                return Err(Error::NonExactDivision);
            }
            // quotient term at top - e with coefficient -c
            rem.terms.remove(&top);
            rem.add_term(top - e, c.clone());
            quot.add_term(top - e, -c);
        }
        Ok(quot)
    }

    /// Multiplies by `1 + c q^e` in one pass, keeping exponents `<= cap`.
    pub fn mul_binomial(&self, c: &BigInt, e: HalfExp, cap: Option<HalfExp>) -> Self {
        let mut out = match cap {
            Some(cap) => self.truncated(cap),
            None => self.clone(),
        };
        for (k, x) in &self.terms {
            let target = *k + e;
            if cap.is_some_and(|cap| target > cap) {
                if e.twice() >= 0 {
                    break;
                }
                continue;
            }
            out.add_term(target, x * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms `c*q^(e)` in ascending exponent order, e.g. `1*q^(0) - 2*q^(3/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                write!(f, "{c}*q^({e})")?;
            } else if c.is_negative() {
                write!(f, " - {}*q^({e})", -c)?;
            } else {
                write!(f, " + {c}*q^({e})")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// dense kernels
// ---------------------------------------------------------------------------

/// gcd of the exponent gaps measured from the lowest term; 0 for a monomial.
fn lattice_step(p: &LaurentPoly) -> i64 {
    let Some(lo) = p.min_exp() else { return 0 };
    p.terms.keys().fold(0i64, |g, e| g.gcd(&(e.0 - lo.0)))
}

fn small_terms(p: &LaurentPoly, lo: i64, step: i64) -> Option<Vec<(usize, i64)>> {
    p.terms
        .iter()
        .map(|(e, c)| c.to_i64().map(|c| (((e.0 - lo) / step) as usize, c)))
        .collect()
}

fn from_dense_i128(start: i64, step: i64, acc: &[i128]) -> LaurentPoly {
    LaurentPoly {
        terms: acc
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (HalfExp(start + i as i64 * step), BigInt::from(*c)))
            .collect(),
    }
}

fn from_dense_big(start: i64, step: i64, acc: Vec<BigInt>) -> LaurentPoly {
    LaurentPoly {
        terms: acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (HalfExp(start + i as i64 * step), c))
            .collect(),
    }
}

fn mul_impl(a: &LaurentPoly, b: &LaurentPoly, cap: Option<HalfExp>) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    let (a, b) = if a.num_terms() <= b.num_terms() { (a, b) } else { (b, a) };
    let a_lo = a.min_exp().unwrap().0;
    let b_lo = b.min_exp().unwrap().0;
    let start = a_lo + b_lo;
    if cap.is_some_and(|c| c.0 < start) {
        return LaurentPoly::zero();
    }
    if a.num_terms() == 1 {
        let (e, c) = a.terms.iter().next().unwrap();
        let mut out = b.shift(*e).scale(c);
        if let Some(cap) = cap {
            out = out.truncated(cap);
        }
        return out;
    }
    let step = lattice_step(a).gcd(&lattice_step(b));
    let a_span = (a.max_exp().unwrap().0 - a_lo) / step;
    let b_span = (b.max_exp().unwrap().0 - b_lo) / step;
    let mut last = a_span + b_span;
    if let Some(cap) = cap {
        last = last.min((cap.0 - start).div_euclid(step));
    }
    let len = (last + 1) as usize;
    let work = a.num_terms() * b.num_terms();
    if len > 4 * work + 4096 {
        // very sparse operands: accumulate straight into the term map
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = *ea + *eb;
                if cap.is_some_and(|c| e > c) {
                    break;
                }
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }
    if let (Some(av), Some(bv)) = (small_terms(a, a_lo, step), small_terms(b, b_lo, step)) {
        if let Some(acc) = convolve_i128(&av, &bv, len) {
            return from_dense_i128(start, step, &acc);
        }
    }
    let mut acc = vec![BigInt::zero(); len];
    let bv: Vec<(usize, &BigInt)> = b
        .terms
        .iter()
        .map(|(e, c)| (((e.0 - b_lo) / step) as usize, c))
        .collect();
    for (ea, ca) in &a.terms {
        let ia = ((ea.0 - a_lo) / step) as usize;
        for (ib, cb) in &bv {
            let idx = ia + ib;
            if idx >= len {
                break;
            }
            acc[idx] += ca * *cb;
        }
    }
    from_dense_big(start, step, acc)
}

fn convolve_i128(a: &[(usize, i64)], b: &[(usize, i64)], len: usize) -> Option<Vec<i128>> {
    let mut acc = vec![0i128; len];
    for &(ia, ca) in a {
        let ca = ca as i128;
        for &(ib, cb) in b {
            let idx = ia + ib;
            if idx >= len {
                break;
            }
            acc[idx] = acc[idx].checked_add(ca * cb as i128)?;
        }
    }
    Some(acc)
}

fn div_exact_impl(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly> {
    if den.is_zero() {
        return Err(Error::NonExactDivision);
    }
    if num.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let n_lo = num.min_exp().unwrap().0;
    let n_hi = num.max_exp().unwrap().0;
    let d_lo = den.min_exp().unwrap().0;
    let d_hi = den.max_exp().unwrap().0;
    if n_hi - n_lo < d_hi - d_lo {
        return Err(Error::NonExactDivision);
    }
    let step = lattice_step(num).gcd(&lattice_step(den));
    let step = if step == 0 { 1 } else { step };
    let q_start = n_lo - d_lo;
    let n_len = ((n_hi - n_lo) / step + 1) as usize;
    let d_len = ((d_hi - d_lo) / step + 1) as usize;
    let q_len = n_len - d_len + 1;

    if let (Some(nv), Some(dv)) = (small_terms(num, n_lo, step), small_terms(den, d_lo, step)) {
        if let Some(res) = div_dense_i128(&nv, &dv, n_len, q_len) {
            return res.map(|q| from_dense_i128(q_start, step, &q));
        }
    }
    let mut rem = vec![BigInt::zero(); n_len];
    for (e, c) in &num.terms {
        rem[((e.0 - n_lo) / step) as usize] = c.clone();
    }
    let dv: Vec<(usize, &BigInt)> = den
        .terms
        .iter()
        .map(|(e, c)| (((e.0 - d_lo) / step) as usize, c))
        .collect();
    let d0 = dv[0].1;
    let mut quot = vec![BigInt::zero(); q_len];
    for i in 0..q_len {
        if rem[i].is_zero() {
            continue;
        }
        let (qi, r) = rem[i].div_rem(d0);
        if !r.is_zero() {
            return Err(Error::NonExactDivision);
        }
        for (k, dk) in &dv {
            rem[i + k] -= &qi * *dk;
        }
        quot[i] = qi;
    }
    if rem[q_len..].iter().any(|c| !c.is_zero()) {
        return Err(Error::NonExactDivision);
    }
    Ok(from_dense_big(q_start, step, quot))
}

/// `None` on overflow, `Some(Err)` on a nonzero remainder.
fn div_dense_i128(
    num: &[(usize, i64)],
    den: &[(usize, i64)],
    n_len: usize,
    q_len: usize,
) -> Option<Result<Vec<i128>>> {
    let mut rem = vec![0i128; n_len];
    for &(i, c) in num {
        rem[i] = c as i128;
    }
    let d0 = den[0].1 as i128;
    let mut quot = vec![0i128; q_len];
    for i in 0..q_len {
        if rem[i] == 0 {
            continue;
        }
        if rem[i] % d0 != 0 {
            return Some(Err(Error::NonExactDivision));
        }
        let qi = rem[i] / d0;
        for &(k, dk) in den {
            let prod = qi.checked_mul(dk as i128)?;
            rem[i + k] = rem[i + k].checked_sub(prod)?;
        }
        quot[i] = qi;
    }
    if rem[q_len..].iter().any(|c| *c != 0) {
        return Some(Err(Error::NonExactDivision));
    }
    Some(Ok(quot))
}

// ---------------------------------------------------------------------------
// operator impls
// ---------------------------------------------------------------------------

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term_ref(*e, c, false);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term_ref(*e, c, true);
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
        } else {
            *self += &rhs;
        }
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += rhs;
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        mul_impl(self, rhs, None)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        mul_impl(&self, &rhs, None)
    }
}

impl Mul<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        mul_impl(&self, rhs, None)
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| acc * p)
    }
}

/// Free-function spelling of `+`.
pub fn add(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a + b
}

/// Free-function spelling of `*`.
pub fn mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a * b
}

pub fn equal_poly(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    a == b
}
