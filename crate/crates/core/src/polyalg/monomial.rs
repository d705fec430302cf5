use std::cmp::Ordering;
use std::fmt;

/// Exponent vector with trailing zeros trimmed, so that monomials built
/// against contexts of different width still compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = exps.into_iter().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    /// `x_index^exp`
    pub fn var(index: usize, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let mut v = vec![0; index + 1];
        v[index] = exp;
        Monomial(v)
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    /// Nonzero exponents as `(index, exp)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e))
    }

    /// Number of stored slots; every index at or past this has exponent 0.
    pub fn width(&self) -> usize {
        self.0.len()
    }

    /// Exponents padded with zeros to `width` slots.
    pub fn padded(&self, width: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(width.max(v.len()), 0);
        v
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() { (&self.0, &other.0) } else { (&other.0, &self.0) };
        let mut v = long.clone();
        for (slot, e) in v.iter_mut().zip(short.iter()) {
            *slot += e;
        }
        Monomial(v)
    }
}

/// Graded lexicographic: total degree first, then exponents left to right.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
