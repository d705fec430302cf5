use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::{FamilyError, PolyFamily};
use crate::polyalg::{Degree, UPoly};

/// Nonzero `p`, `q` are equivalent when they have the same degree and their
/// difference has lower degree, i.e. when their leading forms agree.
pub fn equivalent(p: &UPoly, q: &UPoly) -> Result<bool, FamilyError> {
    if p.is_zero() || q.is_zero() {
        return Err(FamilyError::ZeroPolynomial);
    }
    Ok(p.leading_form() == q.leading_form())
}

/// Partitions the nonzero polynomials into equivalence classes, returned as
/// index lists in order of first appearance. Zero polynomials belong to no
/// class.
pub fn equivalence_classes(polys: &[&UPoly]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<UPoly, usize> = HashMap::new();
    for (k, p) in polys.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let key = p.leading_form();
        match index.get(&key) {
            Some(&c) => classes[c].push(k),
            None => {
                index.insert(key, classes.len());
                classes.push(vec![k]);
            }
        }
    }
    classes
}

/// Number of equivalence classes of each degree `1..=cap` among `polys`.
pub fn column_weight(polys: &[&UPoly], cap: usize) -> Vec<usize> {
    let mut w = vec![0; cap];
    for class in equivalence_classes(polys) {
        if let Degree::Of(d) = polys[class[0]].u_degree() {
            if d >= 1 && (d as usize) <= cap {
                w[d as usize - 1] += 1;
            }
        }
    }
    w
}

/// Compares equal-length vectors by their highest differing index.
pub fn vector_cmp(a: &[usize], b: &[usize]) -> Result<Ordering, FamilyError> {
    if a.len() != b.len() {
        return Err(FamilyError::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).rev().map(|(x, y)| x.cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal))
}

/// `a < b` in the vector order: at the highest index where they differ,
/// `a` is smaller.
pub fn vector_less(a: &[usize], b: &[usize]) -> Result<bool, FamilyError> {
    Ok(vector_cmp(a, b)? == Ordering::Less)
}

/// `C(P) = (c_1, .., c_D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColumnDegree(pub Vec<usize>);

impl ColumnDegree {
    pub fn cmp_vec(&self, other: &ColumnDegree) -> Result<Ordering, FamilyError> {
        vector_cmp(&self.0, &other.0)
    }
}

impl fmt::Display for ColumnDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(super) fn column_degree(fam: &PolyFamily) -> ColumnDegree {
    let mut c = vec![0; fam.degree_cap()];
    for j in 0..fam.num_cols() {
        if let Degree::Of(d) = fam.column_max_degree(j) {
            if d >= 1 {
                c[d as usize - 1] += 1;
            }
        }
    }
    ColumnDegree(c)
}

/// `w(P)`: column `j` holds the class counts `(w_1j, .., w_Dj)` of family
/// column `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubweightMatrix {
    cap: usize,
    columns: Vec<Vec<usize>>,
}

impl SubweightMatrix {
    pub fn from_columns(cap: usize, columns: Vec<Vec<usize>>) -> Self {
        assert!(columns.iter().all(|c| c.len() == cap), "column length must equal D");
        SubweightMatrix { cap, columns }
    }

    /// Builds from the degree-major layout, `rows[i][j]` being the number of
    /// degree `i + 1` classes in column `j`.
    pub fn from_rows(rows: &[&[usize]]) -> Self {
        let cap = rows.len();
        let l = rows.first().map_or(0, |r| r.len());
        let columns = (0..l).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        SubweightMatrix { cap, columns }
    }

    pub fn degree_cap(&self) -> usize {
        self.cap
    }

    pub fn num_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    /// Degree-major rows, the layout used for display.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.cap).map(|i| self.columns.iter().map(|c| c[i]).collect()).collect()
    }
}

impl fmt::Display for SubweightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub(super) fn subweight(fam: &PolyFamily) -> SubweightMatrix {
    let columns = (0..fam.num_cols()).map(|j| column_weight(&fam.column(j), fam.degree_cap())).collect();
    SubweightMatrix { cap: fam.degree_cap(), columns }
}

/// `W(P) = [w(P^1), .., w(P^l)]`. Matrix `a` has `l - a` columns (0-based `a`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    cap: usize,
    mats: Vec<SubweightMatrix>,
}

/// Where two weights first differ: column `col` of subfamily `sub`, both
/// 0-based, and which side is smaller there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightWitness {
    pub col: usize,
    pub sub: usize,
    pub order: Ordering,
}

impl fmt::Display for WeightWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J={}, A={}", self.col + 1, self.sub + 1)
    }
}

impl Weight {
    pub fn new(cap: usize, mats: Vec<SubweightMatrix>) -> Self {
        Weight { cap, mats }
    }

    pub fn degree_cap(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn matrices(&self) -> &[SubweightMatrix] {
        &self.mats
    }

    /// Scans positions with the column index `J` major and the subfamily
    /// index `A` minor, returning the first position where the column
    /// weights differ.
    pub fn first_difference(&self, other: &Weight) -> Result<Option<WeightWitness>, FamilyError> {
        if self.len() != other.len() || self.cap != other.cap {
            return Err(FamilyError::ShapeMismatch(self.len(), self.cap, other.len(), other.cap));
        }
        let l = self.len();
        for col in 0..l {
            for sub in 0..l - col {
                let a = self.mats[sub].column(col);
                let b = other.mats[sub].column(col);
                let order = vector_cmp(a, b)?;
                if order.is_ne() {
                    return Ok(Some(WeightWitness { col, sub, order }));
                }
            }
        }
        Ok(None)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.mats.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Total comparison of two weights of the same shape.
pub fn weight_cmp(a: &Weight, b: &Weight) -> Result<Ordering, FamilyError> {
    Ok(a.first_difference(b)?.map_or(Ordering::Equal, |w| w.order))
}

/// `a < b` in the weight order.
pub fn weight_less(a: &Weight, b: &Weight) -> Result<bool, FamilyError> {
    Ok(weight_cmp(a, b)? == Ordering::Less)
}
