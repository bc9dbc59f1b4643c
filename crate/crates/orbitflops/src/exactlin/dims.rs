//! Exact dimension counts: bases of the classical matrix Lie algebras as
//! nullspaces of their defining linear conditions, and the dimensions of flag
//! stabilizers and element centralizers inside them. These are the oracles
//! backing the closed-form orbit dimensions and the cotangent-space identity
//! `dim O = 2 dim G/P`.

use super::flag::Flag;
use super::form::BilinearForm;
use super::matrix::Matrix;
use super::scalar::Field;
use crate::error::Result;

/// A basis of the relevant matrix Lie algebra: trace-zero matrices when no
/// form is given, otherwise the (skew-)adjoint matrices of the form.
pub fn algebra_basis<F: Field>(
    n: usize,
    form: Option<&BilinearForm<F>>,
    like: &F,
) -> Vec<Matrix<F>> {
    let mut constraints: Vec<Vec<F>> = Vec::new();
    match form {
        None => {
            // trace zero
            let mut row = vec![like.zero(); n * n];
            for i in 0..n {
                row[i * n + i] = like.one();
            }
            constraints.push(row);
        }
        Some(form) => {
            // X^T G + G X = 0, one constraint per matrix position
            let g = &form.gram;
            for r in 0..n {
                for c in 0..n {
                    let mut row = vec![like.zero(); n * n];
                    for k in 0..n {
                        // (X^T G)[r][c] = sum_k X[k][r] G[k][c]
                        row[k * n + r] = row[k * n + r].add(g.at(k, c));
                        // (G X)[r][c] = sum_k G[r][k] X[k][c]
                        row[k * n + c] = row[k * n + c].add(g.at(r, k));
                    }
                    constraints.push(row);
                }
            }
        }
    }
    let m = Matrix::from_rows(constraints, n * n);
    let kernel = m.kernel();
    (0..kernel.rows())
        .map(|r| {
            let v = kernel.row(r);
            let mut mat = Matrix::zero(n, n, like);
            for i in 0..n {
                for j in 0..n {
                    *mat.at_mut(i, j) = v[i * n + j].clone();
                }
            }
            mat
        })
        .collect()
}

/// Dimension of `{X in g : X F_i ⊆ F_i for all i}`.
pub fn stabilizer_dimension<F: Field>(basis: &[Matrix<F>], flag: &Flag<F>) -> Result<usize> {
    let like = basis[0].sample().zero();
    let mut rows: Vec<Vec<F>> = Vec::new();
    for sub in &flag.subspaces {
        if sub.dim() == sub.ambient() {
            continue;
        }
        let functionals = sub.basis_matrix().kernel();
        for v in sub.basis_rows() {
            // rows of the constraint system: f(B_a v) over the basis index a
            for fr in 0..functionals.rows() {
                let f = functionals.row(fr);
                let mut row = vec![like.clone(); basis.len()];
                for (a, b) in basis.iter().enumerate() {
                    let bv = b.mul_vec(v);
                    let mut acc = like.clone();
                    for i in 0..bv.len() {
                        acc = acc.add(&f[i].mul(&bv[i]));
                    }
                    row[a] = acc;
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok(basis.len());
    }
    let m = Matrix::from_rows(rows, basis.len());
    Ok(basis.len() - m.rank())
}

/// Dimension of `{X in g : [X, x] = 0}`.
pub fn centralizer_dimension<F: Field>(basis: &[Matrix<F>], x: &Matrix<F>) -> Result<usize> {
    let n = x.rows();
    let like = x.sample().zero();
    let mut rows: Vec<Vec<F>> = vec![vec![like.clone(); basis.len()]; n * n];
    for (a, b) in basis.iter().enumerate() {
        let comm = b.mul(x).sub(&x.mul(b));
        for i in 0..n {
            for j in 0..n {
                rows[i * n + j][a] = comm.at(i, j).clone();
            }
        }
    }
    let m = Matrix::from_rows(rows, basis.len());
    Ok(basis.len() - m.rank())
}

/// Convenience: stabilizer of a maximal-isotropic-free linear flag inside
/// the full trace-zero algebra (dim G/P for the special linear group is the
/// algebra dimension minus this).
pub fn flag_variety_dimension<F: Field>(basis: &[Matrix<F>], flag: &Flag<F>) -> Result<usize> {
    Ok(basis.len() - stabilizer_dimension(basis, flag)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::flag::construct_flag_a;
    use crate::exactlin::form::standard_form;
    use crate::exactlin::jordan::jordan_matrix;
    use crate::exactlin::scalar::Rat;
    use crate::partitions::{Parity, Partition};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn algebra_dimensions() {
        let one = Rat::int(1);
        assert_eq!(algebra_basis(3, None, &one).len(), 8);
        let jd = jordan_matrix(&p(&[2, 2, 1, 1]), &one).unwrap();
        let so6 = standard_form(&jd, Parity::Even).unwrap();
        assert_eq!(algebra_basis(6, Some(&so6), &one).len(), 15);
        let jd = jordan_matrix(&p(&[2, 2]), &one).unwrap();
        let sp4 = standard_form(&jd, Parity::Odd).unwrap();
        assert_eq!(algebra_basis(4, Some(&sp4), &one).len(), 10);
    }

    #[test]
    fn sl3_flag_and_centralizer() {
        let one = Rat::int(1);
        let jd = jordan_matrix(&p(&[2, 1]), &one).unwrap();
        let basis = algebra_basis(3, None, &one);
        let flag = construct_flag_a(&jd, &[1, 2]).unwrap();
        // dim G/P = 2 for type (1,2) in sl(3)
        assert_eq!(flag_variety_dimension(&basis, &flag).unwrap(), 2);
        // centralizer of a [2,1] nilpotent in sl(3) has dimension 4
        assert_eq!(centralizer_dimension(&basis, &jd.x).unwrap(), 4);
    }

    #[test]
    fn sp4_lagrangian() {
        let one = Rat::int(1);
        let jd = jordan_matrix(&p(&[2, 2]), &one).unwrap();
        let form = standard_form(&jd, Parity::Odd).unwrap();
        let basis = algebra_basis(4, Some(&form), &one);
        assert_eq!(centralizer_dimension(&basis, &jd.x).unwrap(), 4);
        // orbit dimension 10 - 4 = 6
    }
}
