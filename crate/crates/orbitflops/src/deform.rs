//! Sheet matrices for the special linear family: block upper-triangular
//! matrices with scalar diagonal blocks and trace zero. Their characteristic
//! polynomial depends only on the diagonal parameters, and at parameter zero
//! a generic sample is nilpotent with Jordan type governed by the block
//! sizes. This is the desk-scale model of deforming an orbit closure along
//! its resolutions.

use crate::error::{invalid, invariant, Result};
use crate::exactlin::jordan::jordan_type_of_nilpotent;
use crate::exactlin::matrix::Matrix;
use crate::exactlin::scalar::{Field, Rat};
use crate::partitions::{ord, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Debug, Clone)]
pub struct SheetMatrix {
    pub blocks: Vec<usize>,
    pub diag: Vec<Rat>,
    pub matrix: Matrix<Rat>,
}

impl SheetMatrix {
    pub fn dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "blocks": self.blocks,
            "diag": self.diag.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "matrix": matrix_strings(&self.matrix),
        })
    }
}

pub fn matrix_strings(m: &Matrix<Rat>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.at(r, c).to_string()).collect())
        .collect()
}

/// Where the strictly-upper off-block entries come from.
pub enum EntrySource<'a> {
    Seeded(u64),
    Explicit(&'a [Rat]),
}

fn off_block_positions(blocks: &[usize]) -> Vec<(usize, usize)> {
    let n: usize = blocks.iter().sum();
    let mut block_of = vec![0usize; n];
    let mut idx = 0;
    for (b, &size) in blocks.iter().enumerate() {
        for _ in 0..size {
            block_of[idx] = b;
            idx += 1;
        }
    }
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if block_of[c] > block_of[r] {
                out.push((r, c));
            }
        }
    }
    out
}

/// Builds a sheet matrix: scalar diagonal blocks `a_i I`, arbitrary entries
/// strictly above the block diagonal. The trace condition
/// `sum s_i a_i = 0` is required.
pub fn sample_sheet_matrix(
    blocks: &[usize],
    diag: &[Rat],
    entries: EntrySource<'_>,
) -> Result<SheetMatrix> {
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(invalid("blocks must be positive".to_string()));
    }
    if diag.len() != blocks.len() {
        return Err(invalid("one diagonal parameter per block".to_string()));
    }
    let mut trace = Rat::int(0);
    for (b, a) in blocks.iter().zip(diag) {
        trace = trace.add(&Rat::int(*b as i128).mul(a));
    }
    if !trace.is_zero() {
        return Err(invalid(
            "diagonal parameters violate the zero-trace condition".to_string(),
        ));
    }
    let n: usize = blocks.iter().sum();
    let like = Rat::int(1);
    let mut m = Matrix::zero(n, n, &like);
    let mut idx = 0;
    for (b, &size) in blocks.iter().enumerate() {
        for _ in 0..size {
            *m.at_mut(idx, idx) = diag[b];
            idx += 1;
        }
    }
    let positions = off_block_positions(blocks);
    match entries {
        EntrySource::Explicit(vals) => {
            if vals.len() != positions.len() {
                return Err(invalid(format!(
                    "expected {} off-block entries, got {}",
                    positions.len(),
                    vals.len()
                )));
            }
            for ((r, c), v) in positions.iter().zip(vals) {
                *m.at_mut(*r, *c) = *v;
            }
        }
        EntrySource::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for (r, c) in positions {
                let v: i64 = rng.gen_range(-9..=9);
                *m.at_mut(r, c) = Rat::int(v as i128);
            }
        }
    }
    Ok(SheetMatrix {
        blocks: blocks.to_vec(),
        diag: diag.to_vec(),
        matrix: m,
    })
}

/// Monic characteristic polynomial coefficients `c_1..c_n` of
/// `x^n + c_1 x^(n-1) + ... + c_n`, by the trace recurrence.
pub fn char_poly(m: &Matrix<Rat>) -> Vec<Rat> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let like = Rat::int(1);
    let mut coeffs = Vec::with_capacity(n);
    let mut work = Matrix::identity(n, &like);
    for k in 1..=n {
        work = m.mul(&work);
        let mut tr = Rat::int(0);
        for i in 0..n {
            tr = tr.add(work.at(i, i));
        }
        let ck = tr.mul(&Rat::new(-1, k as i128));
        coeffs.push(ck);
        for i in 0..n {
            *work.at_mut(i, i) = work.at(i, i).add(&ck);
        }
    }
    coeffs
}

/// The characteristic map: coefficients `phi_2..phi_n` of the characteristic
/// polynomial. The first coefficient vanishes by the trace condition.
pub fn characteristic_map(sheet: &SheetMatrix) -> Result<Vec<Rat>> {
    let coeffs = char_poly(&sheet.matrix);
    if !coeffs[0].is_zero() {
        return Err(invariant("sheet matrix has nonzero trace".to_string()));
    }
    Ok(coeffs[1..].to_vec())
}

/// Expands `prod_i (x - a_i)^{s_i}` and returns its coefficients below the
/// leading term; the independent route for checking the characteristic map.
pub fn product_coefficients(blocks: &[usize], diag: &[Rat]) -> Vec<Rat> {
    let mut poly = vec![Rat::int(1)];
    for (s, a) in blocks.iter().zip(diag) {
        for _ in 0..*s {
            // multiply by (x - a)
            let mut next = vec![Rat::int(0); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i] = next[i].add(c);
                next[i + 1] = next[i + 1].sub(&a.mul(c));
            }
            poly = next;
        }
    }
    poly[1..].to_vec()
}

/// Samples at parameter zero until the Jordan type matches the block
/// ordering, with a bounded number of retries. Degeneration is possible on
/// special entry values, so genericity is verified rather than assumed.
pub fn generic_nilpotent_sample(blocks: &[usize], seed: u64) -> Result<(SheetMatrix, Partition)> {
    let zeros = vec![Rat::int(0); blocks.len()];
    let expect = ord(blocks)?;
    for attempt in 0..32u64 {
        let sheet = sample_sheet_matrix(
            blocks,
            &zeros,
            EntrySource::Seeded(seed.wrapping_add(attempt)),
        )?;
        let jt = jordan_type_of_nilpotent(&sheet.matrix)?;
        if jt == expect {
            return Ok((sheet, jt));
        }
    }
    Err(invariant(format!(
        "no generic sample for blocks {:?} after bounded retries",
        blocks
    )))
}
