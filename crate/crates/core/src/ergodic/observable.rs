use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use super::ErgodicError;

/// A bounded function on the system: sampled values on `ℤ/N`, or a finite
/// Fourier series on a torus keyed by frequency vectors.
#[derive(Clone, Debug, PartialEq)]
pub enum Observable {
    Dense(Vec<Complex64>),
    Fourier(BTreeMap<Vec<i64>, Complex64>),
}

/// `e^{2πi t}`
pub(crate) fn e(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * t)
}

impl Observable {
    pub fn real(values: &[f64]) -> Self {
        Observable::Dense(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `x ↦ e(ξ x / N)` on `ℤ/N`.
    pub fn cyclic_character(n: usize, xi: i64) -> Self {
        let n_i = n as i64;
        Observable::Dense((0..n_i).map(|x| e((xi * x).rem_euclid(n_i) as f64 / n as f64)).collect())
    }

    /// `x ↦ e(k · x)` on the torus.
    pub fn torus_character(k: Vec<i64>) -> Self {
        Observable::Fourier(BTreeMap::from([(k, Complex64::new(1.0, 0.0))]))
    }

    pub fn constant_dense(n: usize, c: Complex64) -> Self {
        Observable::Dense(vec![c; n])
    }

    pub fn constant_fourier(m: usize, c: Complex64) -> Self {
        Observable::Fourier(BTreeMap::from([(vec![0; m], c)]))
    }

    pub fn as_dense(&self) -> Option<&[Complex64]> {
        match self {
            Observable::Dense(v) => Some(v),
            Observable::Fourier(_) => None,
        }
    }

    pub fn as_fourier(&self) -> Option<&BTreeMap<Vec<i64>, Complex64>> {
        match self {
            Observable::Dense(_) => None,
            Observable::Fourier(c) => Some(c),
        }
    }

    /// Exact for dense samples. For a Fourier series this is the sum of the
    /// coefficient moduli, an upper bound that is exact for one character.
    pub fn sup_norm(&self) -> f64 {
        match self {
            Observable::Dense(v) => v.iter().map(|z| z.norm()).fold(0.0, f64::max),
            Observable::Fourier(c) => c.values().map(|z| z.norm()).sum(),
        }
    }

    /// Whether `‖f‖_∞ ≤ 1` can be certified.
    pub fn is_bounded_by_one(&self) -> bool {
        self.sup_norm() <= 1.0 + 1e-12
    }

    /// `L²` norm for the normalized Haar measure.
    pub fn l2_norm(&self) -> f64 {
        match self {
            Observable::Dense(v) => (v.iter().map(|z| z.norm_sqr()).sum::<f64>() / v.len() as f64).sqrt(),
            Observable::Fourier(c) => c.values().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        }
    }

    pub fn mean(&self) -> Complex64 {
        match self {
            Observable::Dense(v) => v.iter().sum::<Complex64>() / v.len() as f64,
            Observable::Fourier(c) => {
                c.iter().find(|(k, _)| k.iter().all(|&x| x == 0)).map(|(_, z)| *z).unwrap_or_default()
            }
        }
    }

    pub fn try_sub(&self, other: &Observable) -> Result<Observable, ErgodicError> {
        match (self, other) {
            (Observable::Dense(a), Observable::Dense(b)) => {
                if a.len() != b.len() {
                    return Err(ErgodicError::Dimension { what: "observable length", expected: a.len(), got: b.len() });
                }
                Ok(Observable::Dense(a.iter().zip(b).map(|(x, y)| x - y).collect()))
            }
            (Observable::Fourier(a), Observable::Fourier(b)) => {
                let mut out = a.clone();
                for (k, z) in b {
                    *out.entry(k.clone()).or_default() -= z;
                }
                Ok(Observable::Fourier(out))
            }
            _ => Err(ErgodicError::Unsupported("cannot mix dense and Fourier observables".into())),
        }
    }
}
