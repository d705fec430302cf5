use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;

/// Exact integer polynomial in the formal shift variables.
///
/// Monomial slots are the indices produced by [`super::ShiftVar::index`] for
/// the dimension of the enclosing context. The zero polynomial is the empty
/// map and no zero coefficient is ever stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl CoeffPoly {
    pub fn zero() -> Self {
        CoeffPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = CoeffPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    /// The single variable in slot `index`.
    pub fn var(index: usize) -> Self {
        let mut p = CoeffPoly::zero();
        p.terms.insert(Monomial::var(index, 1), BigInt::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = CoeffPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no shift variable occurs.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value when [`Self::is_constant`] holds.
    pub fn as_integer(&self) -> Option<BigInt> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(BigInt::zero))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Largest variable slot used plus one.
    pub fn width(&self) -> usize {
        self.terms.keys().map(Monomial::width).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &BigInt) -> CoeffPoly {
        if k.is_zero() {
            return CoeffPoly::zero();
        }
        CoeffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// Substitutes integers for variables. Returns the slots that had no value
    /// when the assignment is incomplete.
    pub fn evaluate(&self, value: impl Fn(usize) -> Option<BigInt>) -> Result<BigInt, Vec<usize>> {
        let mut missing = Vec::new();
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (slot, e) in m.support() {
                match value(slot) {
                    Some(x) => t *= num_traits::pow(x, e as usize),
                    None => {
                        if !missing.contains(&slot) {
                            missing.push(slot);
                        }
                    }
                }
            }
            total += t;
        }
        if missing.is_empty() {
            Ok(total)
        } else {
            missing.sort_unstable();
            Err(missing)
        }
    }
}

/// A nonzero polynomial vanishes only on a zero-density subset of the
/// integer points, so "nonzero for almost every shift" is "not the zero
/// polynomial".
pub fn is_generically_nonzero(c: &CoeffPoly) -> bool {
    !c.is_zero()
}

impl<'a> Add<&'a CoeffPoly> for &'a CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, rhs: &'a CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a CoeffPoly> for &'a CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: &'a CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a CoeffPoly> for &'a CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: &'a CoeffPoly) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        CoeffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl fmt::Display for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|slot| format!("s{}", slot))
    }
}

impl CoeffPoly {
    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let factors: Vec<String> =
                m.support().map(|(s, e)| if e == 1 { name(s) } else { format!("{}^{}", name(s), e) }).collect();
            if factors.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
