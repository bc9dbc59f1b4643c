//! Subspaces of F^n in canonical form: every subspace is stored as the
//! reduced row echelon basis of its row space, so equality of subspaces is
//! equality of matrices.

use super::matrix::Matrix;
use super::scalar::Field;

#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    like: F,
    /// RREF basis, one row per dimension; zero rows are never stored.
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn new(ambient: usize, rows: Vec<Vec<F>>, like: &F) -> Self {
        for r in &rows {
            assert_eq!(r.len(), ambient, "vector length != ambient");
        }
        if rows.is_empty() {
            return Subspace {
                ambient,
                like: like.clone(),
                basis: Vec::new(),
            };
        }
        let mut m = Matrix::from_rows(rows, ambient);
        let pivots = m.rref();
        let basis = (0..pivots.len()).map(|r| m.row_vec(r)).collect();
        Subspace {
            ambient,
            like: like.clone(),
            basis,
        }
    }

    pub fn zero(ambient: usize, like: &F) -> Self {
        Subspace::new(ambient, Vec::new(), like)
    }

    pub fn full(ambient: usize, like: &F) -> Self {
        let id = Matrix::identity(ambient, like);
        Subspace::new(ambient, id.all_rows(), like)
    }

    /// Span of the given coordinate axes.
    pub fn from_coords(ambient: usize, coords: &[usize], like: &F) -> Self {
        let rows = coords
            .iter()
            .map(|&c| {
                let mut v = vec![like.zero(); ambient];
                v[c] = like.one();
                v
            })
            .collect();
        Subspace::new(ambient, rows, like)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn like(&self) -> &F {
        &self.like
    }

    pub fn basis_rows(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        if self.basis.is_empty() {
            Matrix::zero(0, self.ambient, &self.like)
        } else {
            Matrix::from_rows(self.basis.clone(), self.ambient)
        }
    }

    pub fn contains_vec(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // reduce v against the RREF basis
        let mut v = v.to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|e| !e.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let f = v[pivot].clone();
                for k in 0..self.ambient {
                    let sub = f.mul(&row[k]);
                    v[k] = v[k].sub(&sub);
                }
            }
        }
        v.iter().all(|e| e.is_zero())
    }

    pub fn contains(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|r| self.contains_vec(r))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::new(self.ambient, rows, &self.like)
    }

    /// Adds the span of extra vectors.
    pub fn extend(&self, vectors: &[Vec<F>]) -> Subspace<F> {
        let mut rows = self.basis.clone();
        rows.extend(vectors.iter().cloned());
        Subspace::new(self.ambient, rows, &self.like)
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient, &self.like);
        }
        // coefficient pairs (x, y) with x*B1 = y*B2 form the kernel of the
        // transpose of [B1; -B2]
        let b1 = self.basis_matrix();
        let mut neg_rows = Vec::new();
        for r in &other.basis {
            neg_rows.push(r.iter().map(|e| e.neg()).collect::<Vec<F>>());
        }
        let b2neg = Matrix::from_rows(neg_rows, self.ambient);
        let stacked = b1.stack(&b2neg);
        let coeffs = stacked.transpose().kernel();
        let mut rows = Vec::new();
        for r in 0..coeffs.rows() {
            let c = coeffs.row(r);
            let mut v = vec![self.like.zero(); self.ambient];
            for (i, row) in self.basis.iter().enumerate() {
                if c[i].is_zero() {
                    continue;
                }
                for k in 0..self.ambient {
                    v[k] = v[k].add(&c[i].mul(&row[k]));
                }
            }
            rows.push(v);
        }
        Subspace::new(self.ambient, rows, &self.like)
    }

    /// Orthogonal complement with respect to the bilinear form given by
    /// `gram`: all v with B G v^T = 0 for every basis row B.
    pub fn perp(&self, gram: &Matrix<F>) -> Subspace<F> {
        if self.dim() == 0 {
            return Subspace::full(self.ambient, &self.like);
        }
        let constraints = self.basis_matrix().mul(gram);
        Subspace::new(self.ambient, constraints.kernel().all_rows(), &self.like)
    }

    /// Image of this subspace under the linear map `m` (acting on column
    /// vectors).
    pub fn image(&self, m: &Matrix<F>) -> Subspace<F> {
        let rows = self.basis.iter().map(|r| m.mul_vec(r)).collect::<Vec<_>>();
        Subspace::new(m.rows(), rows, &self.like)
    }

    /// Preimage `{v : m v in self}` of this subspace under `m`.
    pub fn preimage(&self, m: &Matrix<F>) -> Subspace<F> {
        // functionals vanishing on self
        let functionals = if self.dim() == 0 {
            Matrix::identity(self.ambient, &self.like)
        } else {
            self.basis_matrix().kernel()
        };
        if functionals.rows() == 0 {
            return Subspace::full(m.cols(), &self.like);
        }
        let constraints = functionals.mul(m);
        Subspace::new(m.cols(), constraints.kernel().all_rows(), &self.like)
    }

    /// Vectors of `self` extending a basis of the contained subspace `inner`
    /// to one of `self`.
    pub fn complement_in(&self, inner: &Subspace<F>) -> Vec<Vec<F>> {
        assert!(self.contains(inner), "complement_in requires containment");
        let mut acc = inner.clone();
        let mut out = Vec::new();
        for row in &self.basis {
            if !acc.contains_vec(row) {
                out.push(row.clone());
                acc = acc.extend(std::slice::from_ref(row));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::Rat;

    fn v(entries: &[i128]) -> Vec<Rat> {
        entries.iter().map(|&e| Rat::int(e)).collect()
    }

    #[test]
    fn canonical_equality() {
        let one = Rat::int(1);
        let a = Subspace::new(3, vec![v(&[1, 1, 0]), v(&[0, 0, 1])], &one);
        let b = Subspace::new(3, vec![v(&[1, 1, 1]), v(&[2, 2, 1])], &one);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn sum_intersect_dims() {
        let one = Rat::int(1);
        let a = Subspace::new(4, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])], &one);
        let b = Subspace::new(4, vec![v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0])], &one);
        assert_eq!(a.sum(&b).dim(), 3);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains_vec(&v(&[0, 1, 0, 0])));
    }

    #[test]
    fn perp_with_standard_form() {
        let one = Rat::int(1);
        let gram = Matrix::identity(3, &one);
        let a = Subspace::new(3, vec![v(&[1, 0, 0])], &one);
        let p = a.perp(&gram);
        assert_eq!(p.dim(), 2);
        assert!(p.contains_vec(&v(&[0, 1, 0])));
        assert!(!p.contains_vec(&v(&[1, 0, 0])));
    }

    #[test]
    fn image_and_preimage() {
        let one = Rat::int(1);
        // shift operator e2 -> e1 -> 0 on F^2
        let m = Matrix::from_rows(vec![v(&[0, 1]), v(&[0, 0])], 2);
        let full = Subspace::full(2, &one);
        assert_eq!(full.image(&m).dim(), 1);
        let zero = Subspace::zero(2, &one);
        let pre = zero.preimage(&m);
        assert_eq!(pre.dim(), 1);
        assert!(pre.contains_vec(&v(&[1, 0])));
    }

    #[test]
    fn complement_extends_basis() {
        let one = Rat::int(1);
        let big = Subspace::full(3, &one);
        let small = Subspace::new(3, vec![v(&[1, 2, 3])], &one);
        let c = big.complement_in(&small);
        assert_eq!(c.len(), 2);
        assert_eq!(small.extend(&c).dim(), 3);
    }
}
