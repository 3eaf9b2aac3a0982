//! Trinomial pairs and the two Bailey-type transforms acting on them.
//!
//! A pair is a finite table `F_{L,M}` together with weights `alpha_j` such that
//! `F_{L,M} = sum_j alpha_j T(L, M; m j, n j; q^base)` on every stored entry.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{HalfExp, LaurentPoly};
use crate::qprim::qbinom;
use crate::sums::sum_bilateral;
use crate::trinomials::{refined_s, refined_t};

use super::seed::seed_sum;

type Alpha = Arc<dyn Fn(i64) -> LaurentPoly + Send + Sync>;

#[derive(Clone)]
pub struct TrinomialPair {
    base: i64,
    m: i64,
    n: i64,
    alpha: Alpha,
    entries: BTreeMap<(i64, i64), LaurentPoly>,
}

impl fmt::Debug for TrinomialPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrinomialPair")
            .field("base", &self.base)
            .field("m", &self.m)
            .field("n", &self.n)
            .field("entries", &self.entries.len())
            .finish()
    }
}

impl TrinomialPair {
    /// Builds a pair and checks the expansion on every entry.
    pub fn new(
        base: i64,
        m: i64,
        n: i64,
        alpha: impl Fn(i64) -> LaurentPoly + Send + Sync + 'static,
        entries: BTreeMap<(i64, i64), LaurentPoly>,
    ) -> Result<Self> {
        Self::from_parts(base, m, n, Arc::new(alpha), entries)
    }

    fn from_parts(base: i64, m: i64, n: i64, alpha: Alpha, entries: BTreeMap<(i64, i64), LaurentPoly>) -> Result<Self> {
        if base < 1 || m < 0 || n < 0 {
            return Err(Error::InvalidParameter(format!("base {base}, multipliers ({m}, {n})")));
        }
        let pair = TrinomialPair { base, m, n, alpha, entries };
        for (&(l, mm), f) in &pair.entries {
            if *f != pair.expansion(l, mm) {
                return Err(Error::InvalidPair(l, mm));
            }
        }
        Ok(pair)
    }

    /// The seed identity as a pair in base 6 with `alpha_j = q^{3j^2+2j}`,
    /// stored on the box `L <= l_max`, `M <= m_max`.
    pub fn seed(l_max: i64, m_max: i64) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for l in 0..=l_max {
            for m in 0..=m_max {
                entries.insert((l, m), seed_sum(l, m, 0));
            }
        }
        Self::new(6, 1, 1, |j| LaurentPoly::q_pow(3 * j * j + 2 * j), entries)
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn multipliers(&self) -> (i64, i64) {
        (self.m, self.n)
    }

    pub fn alpha(&self, j: i64) -> LaurentPoly {
        (self.alpha)(j)
    }

    pub fn entry(&self, l: i64, m: i64) -> Option<&LaurentPoly> {
        self.entries.get(&(l, m))
    }

    pub fn window(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.entries.keys().copied()
    }

    /// `sum_j alpha_j T(L, M; m j, n j)`.
    pub fn expansion(&self, l: i64, mm: i64) -> LaurentPoly {
        sum_bilateral(l.max(mm), |j| {
            let t = refined_t(l, mm, self.m * j, self.n * j, self.base);
            if t.is_zero() {
                return t;
            }
            &self.alpha(j) * &t
        })
    }

    fn lookup(&self, l: i64, m: i64) -> Result<&LaurentPoly> {
        self.entry(l, m).ok_or(Error::WindowTooSmall(l, m))
    }

    fn half_square(&self, i: i64) -> HalfExp {
        HalfExp::from_twice(self.base * i * i)
    }

    /// `sum_i q^{i^2/2} [L+M-i, L] F_{L-i, i}`.
    pub fn transform_t_entry(&self, l: i64, mm: i64) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        for i in 0..=mm.min(l) {
            let f = self.lookup(l - i, i)?;
            acc += (&qbinom(l + mm - i, l, self.base) * f).shift(self.half_square(i));
        }
        Ok(acc)
    }

    /// Applies the T-to-T transform on the box `L <= l_max`, `M <= m_max`.
    /// The result has weights `q^{(n j)^2/2} alpha_j` and multipliers `(m + n, n)`
    /// and is re-validated.
    pub fn transform_t(&self, l_max: i64, m_max: i64) -> Result<TrinomialPair> {
        let mut entries = BTreeMap::new();
        for l in 0..=l_max {
            for mm in 0..=m_max {
                entries.insert((l, mm), self.transform_t_entry(l, mm)?);
            }
        }
        let (base, n, old) = (self.base, self.n, self.alpha.clone());
        let alpha: Alpha = Arc::new(move |j| old(j).shift(HalfExp::from_twice(base * n * n * j * j)));
        Self::from_parts(self.base, self.m + self.n, self.n, alpha, entries)
    }

    /// `sum_i q^{i^2/2} [L+M-i, L] F_{i, L-i}`.
    pub fn transform_s_entry(&self, l: i64, mm: i64) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        for i in 0..=mm.min(l) {
            let f = self.lookup(i, l - i)?;
            acc += (&qbinom(l + mm - i, l, self.base) * f).shift(self.half_square(i));
        }
        Ok(acc)
    }

    /// The right side of the T-to-S transform:
    /// `sum_j q^{(m j)^2/2} alpha_j S(L, M; (m + n) j, m j)`.
    pub fn s_expansion(&self, l: i64, mm: i64) -> LaurentPoly {
        sum_bilateral(l + mm, |j| {
            let s = refined_s(l, mm, (self.m + self.n) * j, self.m * j, self.base);
            if s.is_zero() {
                return s;
            }
            (&self.alpha(j) * &s).shift(HalfExp::from_twice(self.base * self.m * self.m * j * j))
        })
    }

    /// Replaces `q^2` by `q`: halves every exponent and the base.
    pub fn halve_base(&self) -> Result<TrinomialPair> {
        if self.base % 2 != 0 {
            return Err(Error::InvalidParameter(format!("base {} is odd", self.base)));
        }
        let mut entries = BTreeMap::new();
        for (&k, f) in &self.entries {
            let h = f
                .halve_exponents()
                .ok_or_else(|| Error::UnrepresentableExponent(format!("entry {k:?}")))?;
            entries.insert(k, h);
        }
        let old = self.alpha.clone();
        let alpha: Alpha = Arc::new(move |j| old(j).halve_exponents().expect("weights have integer exponents"));
        Self::from_parts(self.base / 2, self.m, self.n, alpha, entries)
    }
}
