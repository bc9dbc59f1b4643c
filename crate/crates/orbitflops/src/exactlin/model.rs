//! Concrete matrix models of orbits: a Jordan representative, its compatible
//! form, the reference maximal isotropic for component bookkeeping, and the
//! determinant -1 twist distinguishing the two orbits of a very even type.
//!
//! The convention anchoring the component labels: the orbit labeled I is the
//! one whose flag at the canonical (ascending) arrangement has middle of
//! component plus relative to the reference isotropic subspace.

use super::flag::{construct_flag_a, construct_flag_iso_all, Flag};
use super::form::{
    build_form, component_sign, negative_isometry, reference_isotropic, standard_form,
    BilinearForm, Sign,
};
use super::jordan::{jordan_matrix, JordanData};
use super::matrix::Matrix;
use super::scalar::{Field, Fp, Rat};
use super::subspace::Subspace;
use crate::error::{invalid, invariant, Result};
use crate::orbits::{FlagType, NilpotentOrbit, VeryEvenLabel};
use crate::partitions::Parity;

#[derive(Clone, Debug)]
pub struct OrbitModel<F: Field> {
    pub orbit: NilpotentOrbit,
    pub jd: JordanData<F>,
    pub form: Option<BilinearForm<F>>,
    /// Applied to standard-model flags to represent the second very even
    /// orbit; its conjugate of the Jordan matrix is the representative.
    pub twist: Option<Matrix<F>>,
    pub m0: Option<Subspace<F>>,
}

impl OrbitModel<Rat> {
    pub fn new(orbit: &NilpotentOrbit) -> Result<Self> {
        let like = Rat::int(1);
        let jd = jordan_matrix(&orbit.jordan_type, &like)?;
        let form = match orbit.algebra.epsilon() {
            None => None,
            Some(eps) => Some(standard_form(&jd, eps)?),
        };
        let m0 = match &form {
            Some(f) if f.epsilon == Parity::Even && jd.dim() % 2 == 0 => {
                reference_isotropic(&f.gram).ok()
            }
            _ => None,
        };
        let mut model = OrbitModel {
            orbit: orbit.clone(),
            jd,
            form,
            twist: None,
            m0,
        };
        if let Some(label) = orbit.component {
            // halves of the dual type, ascending: the canonical arrangement
            let dual = orbit.jordan_type.dual();
            let parts = dual.parts();
            let mut half = Vec::new();
            let mut i = parts.len();
            while i >= 2 {
                if parts[i - 1] != parts[i - 2] {
                    return Err(invariant("very even dual does not pair up".to_string()));
                }
                half.push(parts[i - 1]);
                i -= 2;
            }
            if i != 0 {
                return Err(invariant("very even dual has odd length".to_string()));
            }
            let flags = model.flags_for_type(&FlagType::Isotropic { half, middle: 0 })?;
            if flags.len() != 1 {
                return Err(invariant(
                    "very even canonical arrangement should be choice-free".to_string(),
                ));
            }
            let s0 = model.middle_sign(&flags[0].1)?;
            let wants_plus = label == VeryEvenLabel::I;
            if (s0 == Sign::Plus) != wants_plus {
                let form = model.form.as_ref().unwrap();
                model.twist = Some(negative_isometry(&model.jd, form)?);
            }
        }
        Ok(model)
    }

    /// The same model with all data reduced modulo an odd prime. The
    /// reference isotropic is reduced from the rational one so component
    /// labels agree across fields.
    pub fn reduce_mod(&self, p: u64) -> Result<OrbitModel<Fp>> {
        let like = Fp::new(1, p);
        let jd = jordan_matrix(&self.orbit.jordan_type, &like)?;
        let form = match &self.form {
            Some(f) => Some(build_form(&jd, f.epsilon, &f.beta)?),
            None => None,
        };
        let twist = match &self.twist {
            Some(h) => Some(reduce_matrix(h, p)?),
            None => None,
        };
        let m0 = match &self.m0 {
            Some(s) => Some(reduce_subspace(s, p)?),
            None => None,
        };
        Ok(OrbitModel {
            orbit: self.orbit.clone(),
            jd,
            form,
            twist,
            m0,
        })
    }
}

impl<F: Field> OrbitModel<F> {
    /// The representative nilpotent of this orbit (twisted for the second
    /// very even component).
    pub fn x(&self) -> Result<Matrix<F>> {
        match &self.twist {
            None => Ok(self.jd.x.clone()),
            Some(h) => {
                let hinv = invert(h)?;
                Ok(h.mul(&self.jd.x).mul(&hinv))
            }
        }
    }

    /// Every flag of the given type for this orbit's representative, with
    /// the selecting choice bits.
    pub fn flags_for_type(&self, ft: &FlagType) -> Result<Vec<(Vec<bool>, Flag<F>)>> {
        let raw = match ft {
            FlagType::Linear(blocks) => {
                vec![(Vec::new(), construct_flag_a(&self.jd, blocks)?)]
            }
            FlagType::Isotropic { half, middle } => {
                let form = self
                    .form
                    .as_ref()
                    .ok_or_else(|| invalid("isotropic flag type without a form".to_string()))?;
                construct_flag_iso_all(&self.jd, form, half, *middle)?
            }
        };
        match &self.twist {
            None => Ok(raw),
            Some(h) => raw
                .into_iter()
                .map(|(bits, flag)| Ok((bits, map_flag(&flag, h))))
                .collect(),
        }
    }

    /// Component sign of a middle-free orthogonal flag's maximal isotropic
    /// middle subspace.
    pub fn middle_sign(&self, flag: &Flag<F>) -> Result<Sign> {
        let form = self
            .form
            .as_ref()
            .ok_or_else(|| invalid("component signs need a form".to_string()))?;
        let m0 = self
            .m0
            .as_ref()
            .ok_or_else(|| invariant("no reference isotropic available".to_string()))?;
        let s = flag.subspaces.len();
        if !s.is_multiple_of(2) {
            return Err(invalid(
                "component signs need a middle-free flag".to_string(),
            ));
        }
        component_sign(form, m0, &flag.subspaces[s / 2 - 1])
    }

    pub fn sign_of_subspace(&self, sub: &Subspace<F>) -> Result<Sign> {
        let form = self
            .form
            .as_ref()
            .ok_or_else(|| invalid("component signs need a form".to_string()))?;
        let m0 = self
            .m0
            .as_ref()
            .ok_or_else(|| invariant("no reference isotropic available".to_string()))?;
        component_sign(form, m0, sub)
    }
}

pub fn map_flag<F: Field>(flag: &Flag<F>, h: &Matrix<F>) -> Flag<F> {
    Flag {
        subspaces: flag.subspaces.iter().map(|s| s.image(h)).collect(),
    }
}

fn invert<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    let n = m.rows();
    let like = m.sample();
    let mut aug = Matrix::zero(n, 2 * n, &like);
    for r in 0..n {
        for c in 0..n {
            *aug.at_mut(r, c) = m.at(r, c).clone();
        }
        *aug.at_mut(r, n + r) = like.one();
    }
    let pivots = aug.rref();
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(invariant("matrix is singular".to_string()));
    }
    let mut inv = Matrix::zero(n, n, &like);
    for r in 0..n {
        for c in 0..n {
            *inv.at_mut(r, c) = aug.at(r, n + c).clone();
        }
    }
    Ok(inv)
}

fn reduce_rat(v: &Rat, p: u64) -> Result<Fp> {
    let den = Fp::new((v.denom() % p as i128) as i64, p);
    let num = Fp::new((v.numer() % p as i128) as i64, p);
    let dinv = den
        .inv()
        .ok_or_else(|| invalid(format!("denominator divisible by {}", p)))?;
    Ok(num.mul(&dinv))
}

pub fn reduce_matrix(m: &Matrix<Rat>, p: u64) -> Result<Matrix<Fp>> {
    let like = Fp::new(1, p);
    let mut out = Matrix::zero(m.rows(), m.cols(), &like);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            *out.at_mut(r, c) = reduce_rat(m.at(r, c), p)?;
        }
    }
    Ok(out)
}

pub fn reduce_subspace(s: &Subspace<Rat>, p: u64) -> Result<Subspace<Fp>> {
    let like = Fp::new(1, p);
    let rows: Result<Vec<Vec<Fp>>> = s
        .basis_rows()
        .iter()
        .map(|row| row.iter().map(|v| reduce_rat(v, p)).collect())
        .collect();
    let out = Subspace::new(s.ambient(), rows?, &like);
    if out.dim() != s.dim() {
        return Err(invariant(format!("subspace rank drops modulo {}", p)));
    }
    Ok(out)
}
