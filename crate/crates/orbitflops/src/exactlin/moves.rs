//! Elementary flag moves: transposing two adjacent blocks, and exchanging the
//! middle subspace of an orthogonal flag for its unique alternative.
//!
//! The swap rebuilds the boundary subspace between two adjacent blocks from
//! the kernel (or image, depending on which block is smaller) of the operator
//! induced on the surrounding two-block quotient. In the isotropic case the
//! mirrored boundary follows by orthogonality. The middle flip replaces a
//! maximal isotropic step by the second isotropic line over the image of the
//! induced operator in its two-dimensional residue space.

use super::flag::{ensure_verified, Flag};
use super::form::BilinearForm;
use super::jordan::JordanData;
use super::matrix::Matrix;
use super::scalar::Field;
use super::subspace::Subspace;
use crate::error::{invalid, invariant, Result};
use crate::partitions::Parity;

/// The operator induced on the quotient `big/small`, expressed in the
/// coordinates of a complement basis, together with that basis.
fn induced_operator<F: Field>(
    x: &Matrix<F>,
    small: &Subspace<F>,
    big: &Subspace<F>,
) -> Result<(Matrix<F>, Vec<Vec<F>>)> {
    let like = small.like().clone();
    let comp = big.complement_in(small);
    let m = comp.len();
    if m == 0 {
        return Err(invariant("empty quotient".to_string()));
    }
    // rows of the solve basis: small's basis then the complement
    let mut rows = small.basis_rows().to_vec();
    rows.extend(comp.iter().cloned());
    let solver = Matrix::from_rows(rows, big.ambient());
    let mut op = Matrix::zero(m, m, &like);
    for (c, v) in comp.iter().enumerate() {
        let xv = x.mul_vec(v);
        let coeffs = solver
            .solve_row(&xv)
            .ok_or_else(|| invariant("operator does not stabilize the quotient".to_string()))?;
        for r in 0..m {
            *op.at_mut(r, c) = coeffs[small.dim() + r].clone();
        }
    }
    Ok((op, comp))
}

fn lift_rows<F: Field>(comp: &[Vec<F>], coeff_rows: &Matrix<F>) -> Vec<Vec<F>> {
    let ambient = comp[0].len();
    let like = comp[0][0].zero();
    (0..coeff_rows.rows())
        .map(|r| {
            let mut v = vec![like.clone(); ambient];
            for (i, cv) in comp.iter().enumerate() {
                let c = coeff_rows.at(r, i);
                if c.is_zero() {
                    continue;
                }
                for k in 0..ambient {
                    v[k] = v[k].add(&c.mul(&cv[k]));
                }
            }
            v
        })
        .collect()
}

/// Transposes the blocks at positions `j-1` and `j` (1-based) of the flag
/// type, rebuilding the boundary subspace. With a form present, `j` must lie
/// in the first half and the mirrored boundary is rebuilt by orthogonality.
pub fn flag_swap<F: Field>(
    jd: &JordanData<F>,
    form: Option<&BilinearForm<F>>,
    flag: &Flag<F>,
    j: usize,
) -> Result<Flag<F>> {
    let ty = flag.block_type();
    let s = ty.len();
    if j < 2 || j > s {
        return Err(invalid(format!("swap position {} out of range", j)));
    }
    if form.is_some() {
        let k = s / 2; // half length (s = 2k or 2k+1)
        if j > k {
            return Err(invalid(format!(
                "swap position {} must lie in the first half",
                j
            )));
        }
    }
    let (p_prev, p_cur) = (ty[j - 2], ty[j - 1]);
    if p_prev == p_cur {
        return Err(invalid("swap of equal blocks is undefined".to_string()));
    }
    let n = jd.dim();
    let like = jd.like().clone();
    let below = if j >= 3 {
        flag.subspaces[j - 3].clone()
    } else {
        Subspace::zero(n, &like)
    };
    let above = &flag.subspaces[j - 1];
    let (op, comp) = induced_operator(&jd.x, &below, above)?;
    let rank = op.rank();
    if rank != p_prev.min(p_cur) {
        return Err(invariant(format!(
            "induced operator has rank {}, expected {}",
            rank,
            p_prev.min(p_cur)
        )));
    }
    let coeff_rows = if p_prev < p_cur {
        op.kernel()
    } else {
        // row space of the transpose = column space
        let mut t = op.transpose();
        let pivots = t.rref();
        let rows: Vec<Vec<F>> = (0..pivots.len()).map(|r| t.row_vec(r)).collect();
        Matrix::from_rows(rows, op.rows())
    };
    let vectors = lift_rows(&comp, &coeff_rows);
    let boundary = below.extend(&vectors);
    if boundary.dim() != below.dim() + p_cur {
        return Err(invariant(
            "rebuilt boundary has wrong dimension".to_string(),
        ));
    }
    let mut subspaces = flag.subspaces.clone();
    subspaces[j - 2] = boundary.clone();
    if let Some(form) = form {
        let mirror = s + 1 - j; // 1-based index of the mirrored boundary
        subspaces[mirror - 1] = boundary.perp(&form.gram);
    }
    let new_flag = Flag { subspaces };
    ensure_verified(jd, form, &new_flag)?;
    Ok(new_flag)
}

/// Replaces the middle subspace of an orthogonal flag (no middle block, odd
/// middle half-block) by the other admissible choice. Involutive, and flips
/// the component of the maximal isotropic middle.
pub fn flag_flip_d<F: Field>(
    jd: &JordanData<F>,
    form: &BilinearForm<F>,
    flag: &Flag<F>,
) -> Result<Flag<F>> {
    if form.epsilon != Parity::Even {
        return Err(invalid("middle flip requires a symmetric form".to_string()));
    }
    let ty = flag.block_type();
    let s = ty.len();
    if !s.is_multiple_of(2) {
        return Err(invalid("middle flip requires no middle block".to_string()));
    }
    let k = s / 2;
    let p_k = ty[k - 1];
    if p_k.is_multiple_of(2) {
        return Err(invalid(
            "middle flip requires an odd middle half-block".to_string(),
        ));
    }
    let n = jd.dim();
    let like = jd.like().clone();
    let below = if k >= 2 {
        flag.subspaces[k - 2].clone()
    } else {
        Subspace::zero(n, &like)
    };
    // residue space W/below with W = below^perp
    let w = if below.dim() == 0 {
        Subspace::full(n, &like)
    } else {
        below.perp(&form.gram)
    };
    let (op, comp) = induced_operator(&jd.x, &below, &w)?;
    let m = comp.len();
    debug_assert_eq!(m, 2 * p_k);
    // induced symmetric form on the residue coordinates
    let mut res_gram = Matrix::zero(m, m, &like);
    for a in 0..m {
        let gb = form.gram.mul_vec(&comp[a]);
        for (b, cb) in comp.iter().enumerate() {
            let mut acc = like.zero();
            for i in 0..n {
                acc = acc.add(&cb[i].mul(&gb[i]));
            }
            *res_gram.at_mut(b, a) = acc;
        }
    }
    let kernel = Subspace::new(m, op.kernel().all_rows(), &like);
    let image = Subspace::new(
        m,
        {
            let mut t = op.transpose();
            let pivots = t.rref();
            (0..pivots.len()).map(|r| t.row_vec(r)).collect()
        },
        &like,
    );
    if !kernel.contains(&image) {
        return Err(invariant(
            "image not inside kernel in residue space".to_string(),
        ));
    }
    // current middle line over the image
    let mid_vectors: Vec<Vec<F>> = {
        let solver_rows: Vec<Vec<F>> = below
            .basis_rows()
            .iter()
            .cloned()
            .chain(comp.iter().cloned())
            .collect();
        let solver = Matrix::from_rows(solver_rows, n);
        flag.subspaces[k - 1]
            .basis_rows()
            .iter()
            .map(|v| {
                let coeffs = solver.solve_row(v).expect("middle lies under the residue");
                coeffs[below.dim()..].to_vec()
            })
            .collect()
    };
    let mid = Subspace::new(m, mid_vectors, &like);
    let l0 = mid
        .complement_in(&image)
        .into_iter()
        .next()
        .ok_or_else(|| invariant("middle does not extend the image".to_string()))?;
    let wv = kernel
        .complement_in(&mid)
        .into_iter()
        .find(|cand| {
            // need <w, l0> nonzero to solve for the second isotropic line
            let gl = res_gram.mul_vec(&l0);
            let mut acc = like.zero();
            for i in 0..m {
                acc = acc.add(&cand[i].mul(&gl[i]));
            }
            !acc.is_zero()
        })
        .ok_or_else(|| invariant("residue form degenerate on kernel/image".to_string()))?;
    let pair = |a: &[F], b: &[F]| {
        let gb = res_gram.mul_vec(b);
        let mut acc = like.zero();
        for i in 0..m {
            acc = acc.add(&a[i].mul(&gb[i]));
        }
        acc
    };
    // other isotropic line over the image: w + t*l0 with Q(w) + 2t<w,l0> = 0
    let t = pair(&wv, &wv)
        .mul(&like.embed(2).mul(&pair(&wv, &l0)).inv().unwrap())
        .neg();
    let other: Vec<F> = (0..m).map(|i| wv[i].add(&t.mul(&l0[i]))).collect();
    let new_mid_res = image.extend(std::slice::from_ref(&other));
    debug_assert_eq!(new_mid_res.dim(), p_k);
    if new_mid_res == mid {
        return Err(invariant("flip reproduced the same middle".to_string()));
    }
    // lift back to the ambient space
    let lifted = lift_rows(&comp, &new_mid_res.basis_matrix());
    let new_middle = below.extend(&lifted);
    if new_middle.dim() != flag.subspaces[k - 1].dim() {
        return Err(invariant("flipped middle has wrong dimension".to_string()));
    }
    let mut subspaces = flag.subspaces.clone();
    subspaces[k - 1] = new_middle;
    let new_flag = Flag { subspaces };
    ensure_verified(jd, Some(form), &new_flag)?;
    if new_flag == *flag {
        return Err(invariant("flip must produce a different flag".to_string()));
    }
    Ok(new_flag)
}
