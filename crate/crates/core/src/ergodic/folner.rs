/// Shape of the `N`-th set of a Følner sequence in `ℤ^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FolnerShape {
    /// `[0, N)^d`
    Box,
    /// `[-N, N]^d`
    Symmetric,
    /// `t_N + [0, N)^d` with `t_N = N · rate`. Translates of boxes are still
    /// Følner, and the offset moves with the index.
    Shifted { rate: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolnerBoxes {
    pub shape: FolnerShape,
    pub dim: usize,
}

impl FolnerBoxes {
    pub fn new(shape: FolnerShape, dim: usize) -> Self {
        if let FolnerShape::Shifted { rate } = &shape {
            assert_eq!(rate.len(), dim, "offset rate length");
        }
        FolnerBoxes { shape, dim }
    }

    pub fn boxes(dim: usize) -> Self {
        FolnerBoxes::new(FolnerShape::Box, dim)
    }

    /// Per-coordinate half-open range of the `N`-th set.
    pub fn range(&self, n: usize, k: usize) -> (i64, i64) {
        let n = n as i64;
        match &self.shape {
            FolnerShape::Box => (0, n),
            FolnerShape::Symmetric => (-n, n + 1),
            FolnerShape::Shifted { rate } => (rate[k] * n, rate[k] * n + n),
        }
    }

    pub fn size(&self, n: usize) -> usize {
        (0..self.dim)
            .map(|k| {
                let (a, b) = self.range(n, k);
                (b - a) as usize
            })
            .product()
    }

    /// The `i`-th point in lexicographic order, last coordinate fastest.
    pub fn point(&self, n: usize, mut i: usize) -> Vec<i64> {
        let mut u = vec![0; self.dim];
        for k in (0..self.dim).rev() {
            let (a, b) = self.range(n, k);
            let len = (b - a) as usize;
            u[k] = a + (i % len) as i64;
            i /= len;
        }
        u
    }

    pub fn points(&self, n: usize) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.size(n)).map(move |i| self.point(n, i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_order() {
        let b = FolnerBoxes::boxes(2);
        assert_eq!(b.size(3), 9);
        let pts: Vec<_> = b.points(2).collect();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let s = FolnerBoxes::new(FolnerShape::Symmetric, 1);
        assert_eq!(s.size(2), 5);
        assert_eq!(s.points(1).collect::<Vec<_>>(), vec![vec![-1], vec![0], vec![1]]);
    }

    #[test]
    fn shifted_boxes_move() {
        let s = FolnerBoxes::new(FolnerShape::Shifted { rate: vec![2] }, 1);
        assert_eq!(s.points(3).collect::<Vec<_>>(), vec![vec![6], vec![7], vec![8]]);
    }

    #[test]
    fn folner_ratio_shrinks() {
        // |(Φ_N + g) Δ Φ_N| / |Φ_N| for g = (1, ..., 1)
        for shape in [FolnerShape::Box, FolnerShape::Symmetric, FolnerShape::Shifted { rate: vec![1, 3] }] {
            let b = FolnerBoxes::new(shape, 2);
            let ratio = |n: usize| {
                let set: std::collections::HashSet<Vec<i64>> = b.points(n).collect();
                let moved = b.points(n).filter(|u| !set.contains(&vec![u[0] + 1, u[1] + 1])).count();
                2.0 * moved as f64 / set.len() as f64
            };
            assert!(ratio(40) < ratio(10));
            assert!(ratio(40) < 0.11);
        }
    }
}
