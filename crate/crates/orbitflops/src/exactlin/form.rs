//! Bilinear forms compatible with a nilpotent in Jordan form.
//!
//! A nondegenerate symmetric or skew form making the Jordan operator
//! infinitesimally orthogonal/symplectic pairs the chains of the diagram: the
//! Gram matrix is supported exactly on `<e(i,j), e(d_j-i+1, beta(j))>` for an
//! involution `beta` of the chains that preserves chain lengths. A chain may
//! pair with itself only when its length differs in parity from the form.
//! This module enumerates the admissible involutions, builds a concrete Gram
//! matrix for one, and provides the component machinery for even orthogonal
//! spaces (hyperbolic bases, a reference maximal isotropic, intersection-parity
//! component signs, and a determinant -1 isometry).

use super::jordan::JordanData;
use super::matrix::Matrix;
use super::scalar::{Field, Rat};
use super::subspace::Subspace;
use crate::error::{invalid, invariant, Result};
use crate::partitions::{Parity, Partition};

#[derive(Clone, Debug)]
pub struct BilinearForm<F: Field> {
    pub epsilon: Parity,
    pub gram: Matrix<F>,
    /// Chain pairing (0-based): chain j pairs with chain beta[j].
    pub beta: Vec<usize>,
}

/// Component of the maximal isotropic Grassmannian of an even orthogonal
/// space, and the conjugacy-class label of a split parabolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Enumerates the chain involutions admissible for `(d, epsilon)`.
///
/// Constraints: `beta` preserves chain lengths; a chain of length congruent
/// to `epsilon` mod 2 must pair with a different chain (such lengths occur
/// with even multiplicity, so a full pairing exists); a chain of the opposite
/// parity pairs across the index parity (odd position with even position)
/// whenever the class size allows a perfect cross matching, with exactly one
/// self-paired chain left over in odd-multiplicity classes.
pub fn beta_candidates(d: &Partition, epsilon: Parity) -> Result<Vec<Vec<usize>>> {
    if !d.is_orbit_type(epsilon) {
        return Err(invalid(format!(
            "{} is not a nilpotent type for parity {:?}",
            d, epsilon
        )));
    }
    let k = d.len();
    // classes of equal parts are consecutive index ranges
    let mut classes: Vec<(usize, usize)> = Vec::new(); // [lo, hi)
    let mut i = 0;
    while i < k {
        let mut j = i;
        while j < k && d.parts()[j] == d.parts()[i] {
            j += 1;
        }
        classes.push((i, j));
        i = j;
    }

    // per-class involutions
    let mut per_class: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    for &(lo, hi) in &classes {
        let members: Vec<usize> = (lo..hi).collect();
        let value = d.parts()[lo];
        let mut options = Vec::new();
        if epsilon.matches(value) {
            // must pair up completely, no parity constraint on indices
            if !members.len().is_multiple_of(2) {
                return Err(invariant(format!(
                    "part {} of parity {:?} has odd multiplicity in {}",
                    value, epsilon, d
                )));
            }
            all_perfect_matchings(&members, &mut options);
        } else {
            // pair across index parity; odd classes keep one fixed point
            let evens: Vec<usize> = members.iter().copied().filter(|m| m % 2 == 0).collect();
            let odds: Vec<usize> = members.iter().copied().filter(|m| m % 2 == 1).collect();
            if members.len().is_multiple_of(2) {
                cross_matchings(&evens, &odds, None, &mut options);
            } else {
                let (larger, smaller) = if evens.len() > odds.len() {
                    (&evens, &odds)
                } else {
                    (&odds, &evens)
                };
                for &fixed in larger {
                    let rest: Vec<usize> = larger.iter().copied().filter(|&m| m != fixed).collect();
                    cross_matchings(&rest, smaller, Some(fixed), &mut options);
                }
            }
        }
        if options.is_empty() {
            return Err(invariant(format!(
                "no admissible pairing for part {} in {}",
                value, d
            )));
        }
        per_class.push(options);
    }

    // cartesian product of class choices
    let mut out: Vec<Vec<usize>> = vec![(0..k).collect()];
    for options in per_class {
        let mut next = Vec::new();
        for base in &out {
            for opt in &options {
                let mut beta = base.clone();
                for &(a, b) in opt {
                    beta[a] = b;
                    beta[b] = a;
                }
                next.push(beta);
            }
        }
        out = next;
    }
    Ok(out)
}

fn all_perfect_matchings(members: &[usize], out: &mut Vec<Vec<(usize, usize)>>) {
    fn rec(
        rest: &mut Vec<usize>,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        let a = rest.remove(0);
        for idx in 0..rest.len() {
            let b = rest.remove(idx);
            acc.push((a, b));
            rec(rest, acc, out);
            acc.pop();
            rest.insert(idx, b);
        }
        rest.insert(0, a);
    }
    rec(&mut members.to_vec(), &mut Vec::new(), out);
}

fn cross_matchings(
    left: &[usize],
    right: &[usize],
    _fixed: Option<usize>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    assert_eq!(left.len(), right.len());
    // all bijections left -> right
    fn rec(
        left: &[usize],
        remaining: &mut Vec<usize>,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if acc.len() == left.len() {
            out.push(acc.clone());
            return;
        }
        let a = left[acc.len()];
        for idx in 0..remaining.len() {
            let b = remaining.remove(idx);
            acc.push((a, b));
            rec(left, remaining, acc, out);
            acc.pop();
            remaining.insert(idx, b);
        }
    }
    if left.is_empty() {
        out.push(Vec::new());
        return;
    }
    rec(left, &mut right.to_vec(), &mut Vec::new(), out);
}

/// Builds the Gram matrix for a given admissible pairing. The antidiagonal
/// coefficients along each chain alternate in sign, which is forced by
/// compatibility with the shift operator; the leading coefficient of each
/// pair is normalized to 1.
pub fn build_form<F: Field>(
    jd: &JordanData<F>,
    epsilon: Parity,
    beta: &[usize],
) -> Result<BilinearForm<F>> {
    let n = jd.dim();
    let like = jd.like().clone();
    if beta.len() != jd.num_chains() {
        return Err(invalid("pairing length != number of chains"));
    }
    for j in 0..beta.len() {
        let bj = beta[j];
        if bj >= beta.len() || beta[bj] != j || jd.chain_len(bj) != jd.chain_len(j) {
            return Err(invalid("not a length-preserving involution"));
        }
        if bj == j && epsilon.matches(jd.chain_len(j)) {
            return Err(invalid(format!(
                "chain of length {} cannot pair with itself for parity {:?}",
                jd.chain_len(j),
                epsilon
            )));
        }
    }
    // Leading coefficients: cross-paired chains take 1. Self-paired chains
    // are signed so that any two whose trimmed residues meet at a branching
    // step admit a rational cross-pairing there: the residue signs must
    // differ, trimming flips the sign once per two boxes removed, and the
    // residue length parity (fixed by the form parity) shifts the balance.
    let mut lead: Vec<i64> = vec![1; beta.len()];
    let selfs: Vec<usize> = (0..beta.len()).filter(|&j| beta[j] == j).collect();
    for w in selfs.windows(2) {
        let (a, b) = (w[0], w[1]);
        let exponent = (jd.chain_len(a) + jd.chain_len(b)) / 2 + epsilon.as_u8() as usize;
        lead[b] = lead[a] * if exponent.is_multiple_of(2) { 1 } else { -1 };
    }
    let mut gram = Matrix::zero(n, n, &like);
    let sign_of = |v: i64| -> F { like.embed(v) };
    for j in 0..beta.len() {
        let jp = beta[j];
        if jp < j {
            continue;
        }
        let len = jd.chain_len(j);
        let top = if jp == j { lead[j] } else { 1 };
        for i in 1..=len {
            let c = if (i - 1) % 2 == 0 { top } else { -top };
            let row = jd.coord(i, j);
            let col = jd.coord(len - i + 1, jp);
            *gram.at_mut(row, col) = sign_of(c);
            if jp != j {
                // mirror entry fixed by the (skew-)symmetry of the form
                let mc = if epsilon == Parity::Even { c } else { -c };
                *gram.at_mut(col, row) = sign_of(mc);
            }
        }
    }
    let form = BilinearForm {
        epsilon,
        gram,
        beta: beta.to_vec(),
    };
    validate_form(jd, &form)?;
    Ok(form)
}

fn validate_form<F: Field>(jd: &JordanData<F>, form: &BilinearForm<F>) -> Result<()> {
    let n = jd.dim();
    let g = &form.gram;
    if g.rank() != n {
        return Err(invariant("degenerate Gram matrix".to_string()));
    }
    let sign = if form.epsilon == Parity::Even { 1 } else { -1 };
    for r in 0..n {
        for c in 0..n {
            let expect = g.at(c, r).mul(&jd.like().embed(sign));
            if *g.at(r, c) != expect {
                return Err(invariant("Gram matrix has wrong symmetry".to_string()));
            }
        }
    }
    // infinitesimal invariance: x^T G + G x = 0
    let lhs = jd.x.transpose().mul(g).add(&g.mul(&jd.x));
    if !lhs.is_zero() {
        return Err(invariant(
            "Jordan operator not in the algebra of the form".to_string(),
        ));
    }
    Ok(())
}

/// The canonical form for an orbit type: the first admissible pairing.
pub fn standard_form<F: Field>(jd: &JordanData<F>, epsilon: Parity) -> Result<BilinearForm<F>> {
    let candidates = beta_candidates(&jd.d, epsilon)?;
    let beta = candidates
        .first()
        .ok_or_else(|| invariant("no admissible pairing".to_string()))?;
    build_form(jd, epsilon, beta)
}

/// A hyperbolic basis over the rationals: pairs `(u_i, v_i)` of isotropic
/// vectors with `<u_i, v_j> = delta_ij`, orthogonal across pairs, spanning a
/// maximal split subspace. Fails when the form is not split over Q in even
/// dimension.
pub fn hyperbolic_basis(gram: &Matrix<Rat>) -> Result<Vec<(Vec<Rat>, Vec<Rat>)>> {
    let n = gram.rows();
    let one = Rat::int(1);
    let pairs_wanted = n / 2;
    let mut space = Subspace::full(n, &one);
    let mut pairs = Vec::new();
    let form = |a: &[Rat], b: &[Rat]| -> Rat {
        let gb = gram.mul_vec(b);
        let mut acc = Rat::int(0);
        for i in 0..n {
            acc = acc.add(&a[i].mul(&gb[i]));
        }
        acc
    };
    for _ in 0..pairs_wanted {
        let basis = space.basis_rows().to_vec();
        let u = find_isotropic(&basis, &form)
            .ok_or_else(|| invalid("form is not split over the rationals".to_string()))?;
        let w = basis
            .iter()
            .find(|b| !form(&u, b).is_zero())
            .cloned()
            .ok_or_else(|| invariant("degenerate restriction while splitting".to_string()))?;
        let uw = form(&u, &w);
        let ww = form(&w, &w);
        // v = w/<u,w> - <w,w>/(2<u,w>^2) u
        let a = uw.inv().unwrap();
        let b = ww.mul(&Rat::new(1, 2)).mul(&a).mul(&a).neg();
        let v: Vec<Rat> = (0..n).map(|i| a.mul(&w[i]).add(&b.mul(&u[i]))).collect();
        debug_assert!(form(&v, &v).is_zero());
        debug_assert_eq!(form(&u, &v), Rat::int(1));
        let plane = Subspace::new(n, vec![u.clone(), v.clone()], &one);
        space = space.intersect(&plane.perp(gram));
        pairs.push((u, v));
    }
    Ok(pairs)
}

fn find_isotropic(basis: &[Vec<Rat>], form: &dyn Fn(&[Rat], &[Rat]) -> Rat) -> Option<Vec<Rat>> {
    for b in basis {
        if form(b, b).is_zero() {
            return Some(b.clone());
        }
    }
    // look for u = b_i + t b_j with rational t
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let qi = form(&basis[i], &basis[i]);
            let qj = form(&basis[j], &basis[j]);
            let bij = form(&basis[i], &basis[j]).add(&form(&basis[j], &basis[i]));
            // qi + t*bij + t^2*qj = 0
            if qj.is_zero() {
                if !bij.is_zero() {
                    let t = qi.mul(&bij.inv().unwrap()).neg();
                    return Some(combine(&basis[i], &basis[j], &t));
                }
                continue;
            }
            let disc = bij.mul(&bij).sub(&Rat::int(4).mul(&qi).mul(&qj));
            if let Some(sq) = disc.sqrt() {
                let t = bij.neg().add(&sq).mul(&Rat::int(2).mul(&qj).inv().unwrap());
                return Some(combine(&basis[i], &basis[j], &t));
            }
        }
    }
    None
}

fn combine(a: &[Rat], b: &[Rat], t: &Rat) -> Vec<Rat> {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.add(&t.mul(y)))
        .collect()
}

/// The reference maximal isotropic subspace of an even orthogonal space: the
/// span of the first vectors of a deterministically computed hyperbolic
/// basis.
pub fn reference_isotropic(gram: &Matrix<Rat>) -> Result<Subspace<Rat>> {
    let n = gram.rows();
    if !n.is_multiple_of(2) {
        return Err(invalid(
            "reference isotropic needs even dimension".to_string(),
        ));
    }
    let pairs = hyperbolic_basis(gram)?;
    let rows: Vec<Vec<Rat>> = pairs.iter().map(|(u, _)| u.clone()).collect();
    let m0 = Subspace::new(n, rows, &Rat::int(1));
    if m0.dim() != n / 2 {
        return Err(invariant(
            "reference subspace has wrong dimension".to_string(),
        ));
    }
    Ok(m0)
}

/// Component sign of a maximal isotropic subspace relative to the reference
/// `m0`: plus when the intersection dimension has the same parity as n/2.
pub fn component_sign<F: Field>(
    form: &BilinearForm<F>,
    m0: &Subspace<F>,
    subspace: &Subspace<F>,
) -> Result<Sign> {
    let n = form.gram.rows();
    if form.epsilon != Parity::Even || !n.is_multiple_of(2) {
        return Err(invalid(
            "component signs exist only for even orthogonal spaces".to_string(),
        ));
    }
    let k = n / 2;
    if subspace.dim() != k || !subspace.perp(&form.gram).contains(subspace) {
        return Err(invalid("subspace is not maximal isotropic".to_string()));
    }
    let meet = subspace.intersect(m0).dim();
    Ok(if (k + meet).is_multiple_of(2) {
        Sign::Plus
    } else {
        Sign::Minus
    })
}

/// An isometry of determinant -1, used to hop between the two components of
/// the even orthogonal group. Swapping the two ends of a hyperbolic pair
/// supported on a cross-paired chain works whenever one exists; otherwise all
/// chains are self-paired and negating an anisotropic middle vector does it.
pub fn negative_isometry<F: Field>(
    jd: &JordanData<F>,
    form: &BilinearForm<F>,
) -> Result<Matrix<F>> {
    if form.epsilon != Parity::Even {
        return Err(invalid(
            "determinant -1 isometries are orthogonal-only here".to_string(),
        ));
    }
    let like = jd.like().clone();
    let n = jd.dim();
    let mut h = Matrix::identity(n, &like);
    if let Some(j) = (0..jd.num_chains()).find(|&j| form.beta[j] != j) {
        let jp = form.beta[j];
        let a = jd.coord(1, j);
        let b = jd.coord(jd.chain_len(j), jp);
        *h.at_mut(a, a) = like.zero();
        *h.at_mut(b, b) = like.zero();
        *h.at_mut(a, b) = like.one();
        *h.at_mut(b, a) = like.one();
    } else {
        // all chains self-paired; negate the anisotropic middle of the first
        let j = 0;
        let len = jd.chain_len(j);
        let mid = jd.coord(len.div_ceil(2), j);
        *h.at_mut(mid, mid) = like.one().neg();
    }
    // isometry check: h^T G h = G
    let check = h.transpose().mul(&form.gram).mul(&h);
    if check != form.gram {
        return Err(invariant("constructed map is not an isometry".to_string()));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::jordan::jordan_matrix;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn beta_for_2211_even() {
        let cands = beta_candidates(&p(&[2, 2, 1, 1]), Parity::Even).unwrap();
        // the 2-chains must pair, the 1-chains pair across index parity
        assert_eq!(cands, vec![vec![1, 0, 3, 2]]);
    }

    #[test]
    fn beta_for_22_odd() {
        let cands = beta_candidates(&p(&[2, 2]), Parity::Odd).unwrap();
        // identity is excluded: the two even chains pair across index parity
        assert_eq!(cands, vec![vec![1, 0]]);
    }

    #[test]
    fn beta_for_311_even() {
        let cands = beta_candidates(&p(&[3, 1, 1]), Parity::Even).unwrap();
        // the lone 3-chain is forced to pair with itself
        assert_eq!(cands, vec![vec![0, 2, 1]]);
    }

    #[test]
    fn forms_validate() {
        for (d, eps) in [
            (p(&[1, 1]), Parity::Even),
            (p(&[2, 2]), Parity::Odd),
            (p(&[2, 2, 1, 1]), Parity::Even),
            (p(&[3, 1, 1]), Parity::Even),
            (p(&[3, 3]), Parity::Even),
            (p(&[4, 4, 1, 1]), Parity::Even),
            (p(&[5, 1]), Parity::Even),
            (p(&[4, 2, 2]), Parity::Odd),
        ] {
            let jd = jordan_matrix(&d, &Rat::int(1)).unwrap();
            for beta in beta_candidates(&d, eps).unwrap() {
                let form = build_form(&jd, eps, &beta).unwrap();
                assert_eq!(form.gram.rank(), jd.dim(), "{} {:?}", d, eps);
            }
        }
    }

    #[test]
    fn manual_pairings_respect_parity_feasibility() {
        // two 1-chains with a symmetric form: both the identity and the swap
        // carry a form, though only the swap is a listed candidate
        let jd = jordan_matrix(&p(&[1, 1]), &Rat::int(1)).unwrap();
        assert!(build_form(&jd, Parity::Even, &[0, 1]).is_ok());
        assert!(build_form(&jd, Parity::Even, &[1, 0]).is_ok());
        // a chain whose length matches the form parity cannot pair with itself
        let jd = jordan_matrix(&p(&[2, 2]), &Rat::int(1)).unwrap();
        assert!(build_form(&jd, Parity::Even, &[0, 1]).is_err());
        assert!(build_form(&jd, Parity::Even, &[1, 0]).is_ok());
    }

    #[test]
    fn support_pattern() {
        let jd = jordan_matrix(&p(&[2, 2]), &Rat::int(1)).unwrap();
        let form = build_form(&jd, Parity::Odd, &[1, 0]).unwrap();
        // <e(i,1), e(3-i,2)> nonzero, nothing else within chain 1
        for i in 1..=2 {
            for pp in 1..=2 {
                let val = form.gram.at(jd.coord(i, 0), jd.coord(pp, 1));
                assert_eq!(!val.is_zero(), pp == 3 - i);
                assert!(form.gram.at(jd.coord(i, 0), jd.coord(pp, 0)).is_zero());
            }
        }
    }

    #[test]
    fn hyperbolic_split_and_signs() {
        let jd = jordan_matrix(&p(&[2, 2, 1, 1]), &Rat::int(1)).unwrap();
        let form = standard_form(&jd, Parity::Even).unwrap();
        let m0 = reference_isotropic(&form.gram).unwrap();
        assert_eq!(m0.dim(), 3);
        assert_eq!(component_sign(&form, &m0, &m0).unwrap(), Sign::Plus);
    }

    #[test]
    fn negative_isometry_has_det_minus_one_effect() {
        let jd = jordan_matrix(&p(&[2, 2]), &Rat::int(1)).unwrap();
        let form = standard_form(&jd, Parity::Even).unwrap();
        let h = negative_isometry(&jd, &form).unwrap();
        let m0 = reference_isotropic(&form.gram).unwrap();
        // h carries a maximal isotropic to the other component
        let moved = m0.image(&h);
        assert_eq!(component_sign(&form, &m0, &moved).unwrap(), Sign::Minus);
    }
}
