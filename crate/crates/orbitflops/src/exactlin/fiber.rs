//! Brute-force fiber counting over small prime fields: the number of flags of
//! a polarization's type satisfying the nilradical conditions for the orbit's
//! representative. This is the independent oracle for the degree formula.
//!
//! The enumeration walks the flag from the bottom, restricting each step to
//! the preimage of the previous one under the operator (intersected with its
//! orthogonal complement in the isotropic case) and filtering by isotropy,
//! so the candidate sets stay tiny. A middle-free orthogonal type whose
//! middle half-block is 1 is counted at the merged (coarse) flag: the fine
//! middle line is not stabilized data, and the operator must annihilate the
//! whole two-dimensional residue.

use super::matrix::Matrix;
use super::model::OrbitModel;
use super::scalar::{is_odd_prime, Field, Fp};
use super::subspace::Subspace;
use crate::error::{invalid, Result};
use crate::exactlin::form::Sign;
use crate::orbits::{FlagType, NilpotentOrbit, PolarizationDescriptor};
use crate::partitions::Parity;

/// Hard cap: the enumeration is exponential in the ambient dimension.
pub const MAX_FIBER_AMBIENT: usize = 7;

pub fn count_fiber_points(
    orbit: &NilpotentOrbit,
    desc: &PolarizationDescriptor,
    p: u64,
    jobs: usize,
) -> Result<u64> {
    if desc.orbit != *orbit {
        return Err(invalid(
            "descriptor does not belong to the orbit".to_string(),
        ));
    }
    if orbit.algebra.ambient > MAX_FIBER_AMBIENT {
        return Err(invalid(format!(
            "fiber counting refused for ambient dimension > {}",
            MAX_FIBER_AMBIENT
        )));
    }
    if !is_odd_prime(p) {
        return Err(invalid(format!("{} is not an odd prime", p)));
    }
    let model = OrbitModel::new(orbit)?.reduce_mod(p)?;
    let x = model.x()?;
    match &desc.flag_type {
        FlagType::Linear(blocks) => count_linear(&x, blocks, jobs),
        FlagType::Isotropic { half, middle } => {
            count_isotropic(&model, &x, half, *middle, desc.sign, jobs)
        }
    }
}

fn count_linear(x: &Matrix<Fp>, blocks: &[usize], jobs: usize) -> Result<u64> {
    let n = x.rows();
    let like = x.sample().one();
    let zero = Subspace::zero(n, &like);
    if blocks.len() == 1 {
        return Ok(if x.is_zero() { 1 } else { 0 });
    }
    let dims: Vec<usize> = blocks
        .iter()
        .scan(0, |acc, b| {
            *acc += b;
            Some(*acc)
        })
        .collect();
    let rec = RecLinear { x, dims: &dims };
    let first = rec.candidates(&zero, 0);
    Ok(run_chunks(first, jobs, |u| rec.count_from(u, 1)))
}

struct RecLinear<'a> {
    x: &'a Matrix<Fp>,
    dims: &'a [usize],
}

impl<'a> RecLinear<'a> {
    fn candidates(&self, prev: &Subspace<Fp>, level: usize) -> Vec<Subspace<Fp>> {
        let within = prev.preimage(self.x);
        extensions(prev, &within, self.dims[level])
    }

    fn count_from(&self, current: Subspace<Fp>, level: usize) -> u64 {
        if level + 1 == self.dims.len() {
            // last step: the full space must map into the top proper subspace
            let full = Subspace::full(current.ambient(), current.like());
            let image = full.image(self.x);
            return if current.contains(&image) { 1 } else { 0 };
        }
        self.candidates(&current, level)
            .into_iter()
            .map(|u| self.count_from(u, level + 1))
            .sum()
    }
}

fn count_isotropic(
    model: &OrbitModel<Fp>,
    x: &Matrix<Fp>,
    half: &[usize],
    middle: usize,
    sign: Option<Sign>,
    jobs: usize,
) -> Result<u64> {
    let form = model.form.as_ref().expect("isotropic type needs a form");
    let eps = form.epsilon;
    let n = x.rows();
    let like = x.sample().one();
    let k = half.len();
    if k == 0 {
        // trivial flag: the operator must vanish
        return Ok(if x.is_zero() { 1 } else { 0 });
    }
    if sign.is_some() && model.m0.is_none() {
        return Err(invalid(
            "component filtering needs the reference isotropic subspace".to_string(),
        ));
    }
    let coarse = eps == Parity::Even && middle == 0 && half[k - 1] == 1;
    let levels = if coarse { k - 1 } else { k };
    let dims: Vec<usize> = half
        .iter()
        .take(levels)
        .scan(0, |acc, b| {
            *acc += b;
            Some(*acc)
        })
        .collect();
    let rec = RecIso {
        model,
        x,
        gram: &form.gram,
        dims: &dims,
        coarse,
        middle,
        sign,
    };
    let zero = Subspace::zero(n, &like);
    if levels == 0 {
        // coarse with k = 1: the whole space is the residue
        return Ok(rec.terminal(&zero));
    }
    let first = rec.candidates(&zero, 0);
    Ok(run_chunks(first, jobs, |u| rec.count_from(u, 1)))
}

struct RecIso<'a> {
    model: &'a OrbitModel<Fp>,
    x: &'a Matrix<Fp>,
    gram: &'a Matrix<Fp>,
    dims: &'a [usize],
    coarse: bool,
    middle: usize,
    sign: Option<Sign>,
}

impl<'a> RecIso<'a> {
    fn candidates(&self, prev: &Subspace<Fp>, level: usize) -> Vec<Subspace<Fp>> {
        let mut within = prev.preimage(self.x);
        if prev.dim() > 0 {
            within = within.intersect(&prev.perp(self.gram));
        }
        extensions(prev, &within, self.dims[level])
            .into_iter()
            .filter(|u| is_isotropic(u, self.gram))
            .collect()
    }

    fn terminal(&self, top: &Subspace<Fp>) -> u64 {
        if self.coarse {
            // the operator must annihilate the whole residue space
            let residue = if top.dim() == 0 {
                Subspace::full(top.ambient(), top.like())
            } else {
                top.perp(self.gram)
            };
            let image = residue.image(self.x);
            return if top.contains(&image) { 1 } else { 0 };
        }
        if self.middle > 0 {
            let mid = top.perp(self.gram);
            let image = mid.image(self.x);
            return if top.contains(&image) { 1 } else { 0 };
        }
        match self.sign {
            None => 1,
            Some(s) => match self.model.sign_of_subspace(top) {
                Ok(actual) if actual == s => 1,
                Ok(_) => 0,
                Err(_) => 0,
            },
        }
    }

    fn count_from(&self, current: Subspace<Fp>, level: usize) -> u64 {
        if level == self.dims.len() {
            return self.terminal(&current);
        }
        self.candidates(&current, level)
            .into_iter()
            .map(|u| self.count_from(u, level + 1))
            .sum()
    }
}

fn is_isotropic(u: &Subspace<Fp>, gram: &Matrix<Fp>) -> bool {
    let rows = u.basis_rows();
    for a in rows {
        let ga = gram.mul_vec(a);
        for b in rows {
            let mut acc = ga[0].zero();
            for i in 0..ga.len() {
                acc = acc.add(&b[i].mul(&ga[i]));
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

/// All subspaces `U` with `prev ⊆ U ⊆ within` and the requested dimension.
fn extensions(prev: &Subspace<Fp>, within: &Subspace<Fp>, target_dim: usize) -> Vec<Subspace<Fp>> {
    let need = target_dim.saturating_sub(prev.dim());
    if target_dim < prev.dim() {
        return Vec::new();
    }
    if need == 0 {
        return vec![prev.clone()];
    }
    if !within.contains(prev) {
        return Vec::new();
    }
    let comp = within.complement_in(prev);
    let m = comp.len();
    if need > m {
        return Vec::new();
    }
    let p = prev.like().modulus();
    let mut out = Vec::new();
    for coeff_rows in rref_matrices(m, need, p) {
        let vectors: Vec<Vec<Fp>> = coeff_rows
            .iter()
            .map(|row| {
                let mut v = vec![prev.like().zero(); prev.ambient()];
                for (i, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for t in 0..v.len() {
                        v[t] = v[t].add(&c.mul(&comp[i][t]));
                    }
                }
                v
            })
            .collect();
        out.push(prev.extend(&vectors));
    }
    out
}

/// All k x m matrices in reduced row echelon form of full rank k over F_p:
/// canonical representatives of the k-dimensional subspaces of F_p^m.
fn rref_matrices(m: usize, k: usize, p: u64) -> Vec<Vec<Vec<Fp>>> {
    let like = Fp::new(1, p);
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    fn choose(
        next: usize,
        m: usize,
        k: usize,
        p: u64,
        like: &Fp,
        pivots: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<Fp>>>,
    ) {
        if pivots.len() == k {
            // free positions: (row i, col j) with j > pivots[i], j not a pivot
            let mut free = Vec::new();
            for (i, &pi) in pivots.iter().enumerate() {
                for j in (pi + 1)..m {
                    if !pivots.contains(&j) {
                        free.push((i, j));
                    }
                }
            }
            let total = (p as u128).pow(free.len() as u32);
            let mut counter = vec![0u64; free.len()];
            for _ in 0..total {
                let mut rows = vec![vec![like.zero(); m]; k];
                for (i, &pi) in pivots.iter().enumerate() {
                    rows[i][pi] = like.one();
                }
                for (idx, &(i, j)) in free.iter().enumerate() {
                    rows[i][j] = Fp::new(counter[idx] as i64, p);
                }
                out.push(rows);
                // increment the base-p counter
                for c in counter.iter_mut() {
                    *c += 1;
                    if *c < p {
                        break;
                    }
                    *c = 0;
                }
            }
            return;
        }
        for j in next..m {
            pivots.push(j);
            choose(j + 1, m, k, p, like, pivots, out);
            pivots.pop();
        }
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    choose(0, m, k, p, &like, &mut pivots, &mut out);
    out
}

/// Splits the first-level candidates across threads and sums deterministically.
fn run_chunks<T, FJob>(items: Vec<T>, jobs: usize, job: FJob) -> u64
where
    T: Send,
    FJob: Fn(T) -> u64 + Sync,
{
    if jobs <= 1 || items.len() <= 1 {
        return items.into_iter().map(job).sum();
    }
    let jobs = jobs.min(items.len());
    let mut chunks: Vec<Vec<T>> = Vec::with_capacity(jobs);
    for _ in 0..jobs {
        chunks.push(Vec::new());
    }
    for (i, item) in items.into_iter().enumerate() {
        chunks[i % jobs].push(item);
    }
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in chunks {
            let job = &job;
            handles.push(scope.spawn(move || chunk.into_iter().map(job).sum::<u64>()));
        }
        handles.into_iter().map(|h| h.join().unwrap()).sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::{enumerate_polarizations, AlgebraKind, NilpotentOrbit};
    use crate::partitions::Partition;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rref_counts_match_gaussian_binomials() {
        // [4 choose 2]_3 = 130
        assert_eq!(rref_matrices(4, 2, 3).len(), 130);
        // [3 choose 1]_5 = 31
        assert_eq!(rref_matrices(3, 1, 5).len(), 31);
        assert_eq!(rref_matrices(3, 3, 3).len(), 1);
        assert_eq!(rref_matrices(3, 0, 3).len(), 1);
    }

    #[test]
    fn sl3_regular_orbit_fiber() {
        let alg = AlgebraKind::parse("sl:3").unwrap();
        let orbit = NilpotentOrbit::new(alg, p(&[2, 1]), None).unwrap();
        for desc in enumerate_polarizations(&orbit).unwrap() {
            let c = count_fiber_points(&orbit, &desc, 3, 1).unwrap();
            assert_eq!(c, 1, "{}", desc);
        }
    }

    #[test]
    fn so5_degree_two_fiber() {
        let alg = AlgebraKind::parse("so:5").unwrap();
        let orbit = NilpotentOrbit::new(alg, p(&[3, 1, 1]), None).unwrap();
        for desc in enumerate_polarizations(&orbit).unwrap() {
            let expect = match desc.flag_type.full_blocks().as_slice() {
                [2, 1, 2] => 2,
                [1, 3, 1] => 1,
                _ => unreachable!(),
            };
            for field in [3u64, 5] {
                let c = count_fiber_points(&orbit, &desc, field, 1).unwrap();
                assert_eq!(c, expect, "{} over F_{}", desc, field);
            }
        }
    }

    #[test]
    fn refuses_large_ambient() {
        let alg = AlgebraKind::parse("sl:8").unwrap();
        let orbit = NilpotentOrbit::new(alg, p(&[8]), None).unwrap();
        let desc = enumerate_polarizations(&orbit).unwrap().remove(0);
        assert!(count_fiber_points(&orbit, &desc, 3, 1).is_err());
    }

    #[test]
    fn parallel_matches_serial() {
        let alg = AlgebraKind::parse("so:5").unwrap();
        let orbit = NilpotentOrbit::new(alg, p(&[3, 1, 1]), None).unwrap();
        let desc = enumerate_polarizations(&orbit)
            .unwrap()
            .into_iter()
            .find(|d| d.flag_type.full_blocks() == vec![2, 1, 2])
            .unwrap();
        let serial = count_fiber_points(&orbit, &desc, 5, 1).unwrap();
        let parallel = count_fiber_points(&orbit, &desc, 5, 4).unwrap();
        assert_eq!(serial, parallel);
    }
}
