use num_integer::Integer;

use super::ErgodicError;

/// `ℤ/N` with translations `T_j x = x + a_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSystem {
    n: u64,
    shifts: Vec<i64>,
}

impl CyclicSystem {
    /// Shifts are stored reduced into `0..N`.
    pub fn new(n: u64, shifts: &[i64]) -> Result<Self, ErgodicError> {
        if n < 2 {
            return Err(ErgodicError::BadModulus(n));
        }
        let shifts = shifts.iter().map(|&a| a.rem_euclid(n as i64)).collect();
        Ok(CyclicSystem { n, shifts })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn num_transformations(&self) -> usize {
        self.shifts.len()
    }

    /// Translation by `b` is ergodic exactly when `gcd(b, N) = 1`.
    pub fn is_ergodic_shift(&self, b: i64) -> bool {
        b.rem_euclid(self.n as i64).gcd(&(self.n as i64)) == 1
    }

    /// The shift of `T_1^{c_1} ... T_l^{c_l}`, reduced into `0..N`.
    pub fn composite(&self, c: &[i64]) -> i64 {
        let n = self.n as i128;
        let total: i128 = c.iter().zip(&self.shifts).map(|(&x, &a)| x as i128 * a as i128).sum();
        total.rem_euclid(n) as i64
    }

    pub fn require_ergodic(&self, b: i64) -> Result<(), ErgodicError> {
        if self.is_ergodic_shift(b) {
            Ok(())
        } else {
            Err(ErgodicError::NonErgodicShift { shift: b, n: self.n })
        }
    }
}

/// The torus `ℝ^m / ℤ^m` with rotations `T_j x = x + α_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusSystem {
    m: usize,
    alphas: Vec<Vec<f64>>,
}

impl TorusSystem {
    pub fn new(m: usize, alphas: Vec<Vec<f64>>) -> Result<Self, ErgodicError> {
        if m == 0 {
            return Err(ErgodicError::Unsupported("torus dimension must be positive".into()));
        }
        for a in &alphas {
            if a.len() != m {
                return Err(ErgodicError::Dimension { what: "rotation vector", expected: m, got: a.len() });
            }
        }
        Ok(TorusSystem { m, alphas })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn alphas(&self) -> &[Vec<f64>] {
        &self.alphas
    }

    pub fn num_transformations(&self) -> usize {
        self.alphas.len()
    }

    /// `k · α_j` reduced mod 1, for each transformation.
    pub fn frequencies(&self, k: &[i64]) -> Vec<f64> {
        self.alphas.iter().map(|a| a.iter().zip(k).map(|(x, &n)| x * n as f64).sum::<f64>().rem_euclid(1.0)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum System {
    Cyclic(CyclicSystem),
    Torus(TorusSystem),
}

impl System {
    pub fn num_transformations(&self) -> usize {
        match self {
            System::Cyclic(s) => s.num_transformations(),
            System::Torus(s) => s.num_transformations(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ergodicity_is_coprimality() {
        let s = CyclicSystem::new(12, &[5, 4]).unwrap();
        assert!(s.is_ergodic_shift(5));
        assert!(s.is_ergodic_shift(-1));
        assert!(!s.is_ergodic_shift(4));
        assert!(!s.is_ergodic_shift(0));
        assert_eq!(s.composite(&[1, 1]), 9);
        assert_eq!(s.composite(&[2, -1]), 6);
    }

    #[test]
    fn shifts_are_reduced() {
        let s = CyclicSystem::new(7, &[-1, 9]).unwrap();
        assert_eq!(s.shifts(), &[6, 2]);
        assert!(CyclicSystem::new(1, &[0]).is_err());
    }

    #[test]
    fn torus_checks_dimensions() {
        assert!(TorusSystem::new(2, vec![vec![0.5]]).is_err());
        let t = TorusSystem::new(1, vec![vec![0.25]]).unwrap();
        assert_eq!(t.frequencies(&[3]), vec![0.75]);
    }
}
