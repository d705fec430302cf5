use num_complex::Complex64;

use super::average::chunked;
use super::{ErgodicError, FolnerBoxes};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VdcRow {
    pub index: usize,
    /// `‖(1/|Φ_N|) Σ_u g_u‖²`
    pub lhs: f64,
    /// `(1/|F|²) Σ_{v,w∈F} (1/|Φ_N|) Σ_u ⟨g_{u+v}, g_{u+w}⟩`
    pub rhs: f64,
}

/// Both sides of the van der Corput inequality at every index. The largest
/// index stands in for the limit superior.
#[derive(Clone, Debug, PartialEq)]
pub struct VdcReport {
    pub rows: Vec<VdcRow>,
}

impl VdcReport {
    pub fn last(&self) -> &VdcRow {
        self.rows.last().expect("at least one index")
    }

    /// `lhs ≤ rhs + tol` at the largest index.
    pub fn holds(&self, tol: f64) -> bool {
        let r = self.last();
        r.lhs <= r.rhs + tol
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

fn translate(u: &[i64], v: &[i64]) -> Vec<i64> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

/// Evaluates both sides for the family `u ↦ g(u) ∈ ℂ^M` and the finite set
/// `F`, along the given box indices.
pub fn vdc_check<G>(g: G, f_set: &[Vec<i64>], boxes: &FolnerBoxes, indices: &[usize]) -> Result<VdcReport, ErgodicError>
where
    G: Fn(&[i64]) -> Vec<Complex64> + Sync,
{
    if indices.is_empty() {
        return Err(ErgodicError::NoIndices);
    }
    if f_set.is_empty() {
        return Err(ErgodicError::Unsupported("the set F must be nonempty".into()));
    }
    for v in f_set {
        if v.len() != boxes.dim {
            return Err(ErgodicError::Dimension { what: "element of F", expected: boxes.dim, got: v.len() });
        }
    }
    let f2 = (f_set.len() * f_set.len()) as f64;
    let mut rows = Vec::with_capacity(indices.len());
    for &n in indices {
        let size = boxes.size(n) as f64;
        let (mean, pairs) = chunked(
            boxes,
            n,
            || (Vec::<Complex64>::new(), 0.0f64),
            |(mean, pairs), u| {
                let gu = g(u);
                if mean.is_empty() {
                    mean.resize(gu.len(), Complex64::default());
                }
                mean.iter_mut().zip(&gu).for_each(|(m, x)| *m += x);
                let shifted: Vec<Vec<Complex64>> = f_set.iter().map(|v| g(&translate(u, v))).collect();
                for a in &shifted {
                    for b in &shifted {
                        *pairs += inner(a, b).re;
                    }
                }
                Ok(())
            },
            |(m, p), (m2, p2)| {
                if m.is_empty() {
                    *m = m2;
                } else {
                    m.iter_mut().zip(&m2).for_each(|(x, y)| *x += y);
                }
                *p += p2;
            },
        )?;
        let lhs = mean.iter().map(|z| (z / size).norm_sqr()).sum();
        rows.push(VdcRow { index: n, lhs, rhs: pairs / (size * f2) });
    }
    Ok(VdcReport { rows })
}
