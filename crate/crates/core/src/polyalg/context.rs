use std::fmt;
use std::str::FromStr;

use super::PolyError;

/// Which half of a shift pair a formal variable belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShiftKind {
    V,
    W,
}

/// One coordinate of a formal shift vector: `v_{pair}[coord]` or `w_{pair}[coord]`.
///
/// Pairs and coordinates are 0-based here; the text form (`v1_1`, `w2_3`, ...)
/// is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftVar {
    pub pair: u32,
    pub kind: ShiftKind,
    pub coord: u32,
}

impl ShiftVar {
    pub fn v(pair: u32, coord: u32) -> Self {
        ShiftVar { pair, kind: ShiftKind::V, coord }
    }

    pub fn w(pair: u32, coord: u32) -> Self {
        ShiftVar { pair, kind: ShiftKind::W, coord }
    }

    /// Slot of this variable in a coefficient monomial for dimension `d`.
    pub fn index(&self, d: usize) -> usize {
        let half = match self.kind {
            ShiftKind::V => 0,
            ShiftKind::W => d,
        };
        self.pair as usize * 2 * d + half + self.coord as usize
    }

    pub fn from_index(index: usize, d: usize) -> Self {
        let pair = index / (2 * d);
        let rest = index % (2 * d);
        let (kind, coord) = if rest < d { (ShiftKind::V, rest) } else { (ShiftKind::W, rest - d) };
        ShiftVar { pair: pair as u32, kind, coord: coord as u32 }
    }
}

impl fmt::Display for ShiftVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            ShiftKind::V => 'v',
            ShiftKind::W => 'w',
        };
        write!(f, "{}{}_{}", k, self.pair + 1, self.coord + 1)
    }
}

impl FromStr for ShiftVar {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PolyError::BadShiftName(s.to_string());
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('v') => ShiftKind::V,
            Some('w') => ShiftKind::W,
            _ => return Err(bad()),
        };
        let (pair, coord) = chars.as_str().split_once('_').ok_or_else(bad)?;
        let pair: u32 = pair.parse().map_err(|_| bad())?;
        let coord: u32 = coord.parse().map_err(|_| bad())?;
        if pair == 0 || coord == 0 {
            return Err(bad());
        }
        Ok(ShiftVar { pair: pair - 1, kind, coord: coord - 1 })
    }
}

/// Dimension of the averaging variable plus the number of formal shift
/// pairs allocated so far. Pairs are append-only along a reduction chain,
/// so a context with fewer pairs is a prefix of one with more.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShiftContext {
    d: usize,
    pairs: u32,
}

impl ShiftContext {
    pub fn new(d: usize) -> Self {
        assert!(d >= 1, "dimension must be positive");
        ShiftContext { d, pairs: 0 }
    }

    pub fn with_pairs(d: usize, pairs: u32) -> Self {
        assert!(d >= 1, "dimension must be positive");
        ShiftContext { d, pairs }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn pairs(&self) -> u32 {
        self.pairs
    }

    /// Allocates a fresh pair and returns its id along with the grown context.
    pub fn fresh_pair(&self) -> (u32, ShiftContext) {
        (self.pairs, ShiftContext { d: self.d, pairs: self.pairs + 1 })
    }

    pub fn contains(&self, var: &ShiftVar) -> bool {
        var.pair < self.pairs && (var.coord as usize) < self.d
    }

    /// Common context for an operation on two values, or an error when the
    /// dimensions disagree.
    pub fn join(&self, other: &ShiftContext) -> Result<ShiftContext, PolyError> {
        if self.d != other.d {
            return Err(PolyError::ContextMismatch { left: self.d, right: other.d });
        }
        Ok(ShiftContext { d: self.d, pairs: self.pairs.max(other.pairs) })
    }

    pub fn shift_vars(&self) -> impl Iterator<Item = ShiftVar> + '_ {
        (0..self.pairs).flat_map(move |p| {
            (0..self.d as u32).map(move |c| ShiftVar::v(p, c)).chain((0..self.d as u32).map(move |c| ShiftVar::w(p, c)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for d in 1..4 {
            for idx in 0..30 {
                assert_eq!(ShiftVar::from_index(idx, d).index(d), idx);
            }
        }
    }

    #[test]
    fn names() {
        let v = ShiftVar::w(1, 0);
        assert_eq!(v.to_string(), "w2_1");
        assert_eq!("w2_1".parse::<ShiftVar>().unwrap(), v);
        assert!("x1_1".parse::<ShiftVar>().is_err());
        assert!("v0_1".parse::<ShiftVar>().is_err());
    }

    #[test]
    fn join_rejects_dimension_mismatch() {
        let a = ShiftContext::new(1);
        let b = ShiftContext::with_pairs(1, 3);
        assert_eq!(a.join(&b).unwrap().pairs(), 3);
        assert!(a.join(&ShiftContext::new(2)).is_err());
    }
}
