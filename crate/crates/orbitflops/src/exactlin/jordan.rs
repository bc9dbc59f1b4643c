//! Nilpotent matrices in Jordan form, with the basis indexed by boxes of the
//! Young diagram: `e(i,j)` is the i-th vector of the j-th chain, and the
//! operator shifts `e(i,j)` to `e(i-1,j)`, killing `e(1,j)`.

use super::matrix::Matrix;
use super::scalar::Field;
use crate::error::{invalid, Result};
use crate::partitions::Partition;

#[derive(Clone, Debug)]
pub struct JordanData<F: Field> {
    pub d: Partition,
    pub x: Matrix<F>,
    offsets: Vec<usize>,
    like: F,
}

impl<F: Field> JordanData<F> {
    pub fn dim(&self) -> usize {
        self.d.weight()
    }

    pub fn num_chains(&self) -> usize {
        self.d.len()
    }

    pub fn chain_len(&self, j: usize) -> usize {
        self.d.parts()[j]
    }

    pub fn like(&self) -> &F {
        &self.like
    }

    /// Coordinate index of the box `e(i, j)`: chain `j` (0-based), position
    /// `i` (1-based, 1 is the socle).
    pub fn coord(&self, i: usize, j: usize) -> usize {
        assert!(j < self.num_chains() && i >= 1 && i <= self.chain_len(j));
        self.offsets[j] + (i - 1)
    }
}

/// Builds the nilpotent Jordan matrix of the given type over the field of
/// `like`.
pub fn jordan_matrix<F: Field>(d: &Partition, like: &F) -> Result<JordanData<F>> {
    if d.is_empty() {
        return Err(invalid("Jordan type must be nonempty"));
    }
    let n = d.weight();
    let mut offsets = Vec::with_capacity(d.len());
    let mut acc = 0;
    for &part in d.parts() {
        offsets.push(acc);
        acc += part;
    }
    let mut x = Matrix::zero(n, n, like);
    for (j, &part) in d.parts().iter().enumerate() {
        for i in 2..=part {
            // column e(i,j), row e(i-1,j)
            *x.at_mut(offsets[j] + i - 2, offsets[j] + i - 1) = like.one();
        }
    }
    Ok(JordanData {
        d: d.clone(),
        x,
        offsets,
        like: like.clone(),
    })
}

/// Jordan type of an arbitrary nilpotent matrix, read off the ranks of its
/// powers: the number of chains of length at least m is
/// rank(x^{m-1}) - rank(x^m).
pub fn jordan_type_of_nilpotent<F: Field>(m: &Matrix<F>) -> Result<Partition> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut power = Matrix::identity(n, &m.sample());
    let mut ranks = vec![n];
    for _ in 0..n {
        power = power.mul(m);
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    if *ranks.last().unwrap() != 0 {
        return Err(invalid("matrix is not nilpotent"));
    }
    // dual parts: t_m = rank(x^{m-1}) - rank(x^m)
    let dual: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(Partition::new(dual)?.dual())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::Rat;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn shift_structure() {
        let jd = jordan_matrix(&p(&[2, 1]), &Rat::int(1)).unwrap();
        // single unit entry mapping e(2,1) -> e(1,1)
        assert_eq!(jd.x.rank(), 1);
        assert_eq!(*jd.x.at(jd.coord(1, 0), jd.coord(2, 0)), Rat::int(1));
    }

    #[test]
    fn zero_orbit() {
        let jd = jordan_matrix(&p(&[1, 1, 1]), &Rat::int(1)).unwrap();
        assert!(jd.x.is_zero());
    }

    #[test]
    fn power_ranks() {
        let jd = jordan_matrix(&p(&[3]), &Rat::int(1)).unwrap();
        assert_eq!(jd.x.rank(), 2);
        assert_eq!(jd.x.mul(&jd.x).rank(), 1);
        assert!(jd.x.mul(&jd.x).mul(&jd.x).is_zero());
    }

    #[test]
    fn rank_formula() {
        for d in crate::partitions::partitions_of(6) {
            let jd = jordan_matrix(&d, &Rat::int(1)).unwrap();
            let mut power = Matrix::identity(jd.dim(), &Rat::int(1));
            for m in 1..=6 {
                power = power.mul(&jd.x);
                let expect: usize = d.parts().iter().map(|&dj| dj.saturating_sub(m)).sum();
                assert_eq!(power.rank(), expect, "d = {} power {}", d, m);
            }
            assert_eq!(jordan_type_of_nilpotent(&jd.x).unwrap(), d);
        }
    }
}
