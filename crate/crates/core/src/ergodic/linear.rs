use super::average::IntFamily;
use super::gowers::gowers_norm;
use super::{multi_average, CyclicSystem, ErgodicError, FolnerBoxes, Observable, System};
use crate::family::PolyFamily;
use crate::polyalg::Degree;

/// A composite translation `T_1^{c_1} ⋯ T_l^{c_l}` that the linear argument
/// needs to be ergodic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeShift {
    /// Coordinate of `u` the coefficients belong to.
    pub coord: usize,
    /// The row, or the pair of rows whose difference is taken.
    pub rows: (usize, Option<usize>),
    pub coeffs: Vec<i64>,
    pub shift: i64,
    pub ergodic: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearBoundReport {
    pub average_norm: f64,
    /// Seminorm order `r + 1`.
    pub order: u32,
    pub seminorms: Vec<f64>,
    pub min_seminorm: f64,
    /// Empirical constant `‖A_N‖ / min_i ‖f_i‖_{r+1}`.
    pub ratio: f64,
    pub composites: Vec<CompositeShift>,
    /// False when some required composite shift is not ergodic.
    pub conclusive: bool,
}

impl LinearBoundReport {
    /// The qualitative bound: a seminorm below `eps` forces the average
    /// below `delta`. `None` for inconclusive experiments.
    pub fn shadow_holds(&self, eps: f64, delta: f64) -> Option<bool> {
        if !self.conclusive {
            return None;
        }
        Some(self.min_seminorm >= eps || self.average_norm < delta)
    }
}

/// Linear coefficients of coordinate `k` in each column of row `i`.
fn coefficients(fam: &PolyFamily, i: usize, k: usize) -> Vec<i64> {
    fam.row(i)
        .iter()
        .map(|p| {
            p.integer_terms()
                .unwrap_or_default()
                .iter()
                .find(|(_, m)| m.iter().sum::<u32>() == 1 && m[k] == 1)
                .and_then(|(c, _)| i64::try_from(c).ok())
                .unwrap_or(0)
        })
        .collect()
}

/// Compares the average of a linear family over `Φ_N` with the smallest
/// seminorm `‖f_i‖_{r+1}` of its functions. The composite shifts of each row
/// and of each difference of rows are checked for ergodicity first.
pub fn linear_bound_check(
    sys: &CyclicSystem,
    fam: &PolyFamily,
    fs: &[Observable],
    boxes: &FolnerBoxes,
    n: usize,
) -> Result<LinearBoundReport, ErgodicError> {
    IntFamily::new(fam)?;
    if fam.degree() > Degree::Of(1) {
        return Err(ErgodicError::Unsupported(format!("family has degree {}, expected a linear family", fam.degree())));
    }
    if !fam.is_ed_set() {
        return Err(ErgodicError::Unsupported("family is not an ED-set".into()));
    }
    let mut composites = Vec::new();
    for k in 0..fam.context().dim() {
        let cs: Vec<Vec<i64>> = (0..fam.num_rows()).map(|i| coefficients(fam, i, k)).collect();
        let mut push = |rows, coeffs: Vec<i64>| {
            let shift = sys.composite(&coeffs);
            composites.push(CompositeShift { coord: k, rows, ergodic: sys.is_ergodic_shift(shift), coeffs, shift });
        };
        for (i, c) in cs.iter().enumerate() {
            if c.iter().any(|&x| x != 0) {
                push((i, None), c.clone());
            }
        }
        for i in 0..cs.len() {
            for i2 in i + 1..cs.len() {
                if cs[i] != cs[i2] {
                    push((i, Some(i2)), cs[i].iter().zip(&cs[i2]).map(|(a, b)| a - b).collect());
                }
            }
        }
    }
    let avg = multi_average(&System::Cyclic(sys.clone()), fam, fs, boxes, n)?;
    let order = fs.len() as u32 + 1;
    let seminorms = fs
        .iter()
        .map(|f| {
            let dense = f.as_dense().ok_or_else(|| ErgodicError::Unsupported("cyclic observables are dense".into()))?;
            gowers_norm(dense, 1, order)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let min_seminorm = seminorms.iter().copied().fold(f64::INFINITY, f64::min);
    let ratio = if min_seminorm > 0.0 { avg.norm / min_seminorm } else { f64::INFINITY };
    Ok(LinearBoundReport {
        average_norm: avg.norm,
        order,
        seminorms,
        min_seminorm,
        ratio,
        conclusive: composites.iter().all(|c| c.ergodic),
        composites,
    })
}
