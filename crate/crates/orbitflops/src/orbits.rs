//! The orbit-level catalogue: classification of nilpotent orbits by Jordan
//! type, enumeration of polarizations (parabolic conjugacy classes realizing
//! each orbit as a nilradical image), Springer-map degrees, and orbit
//! dimensions.

use crate::error::{invalid, invariant, Result};
use crate::exactlin::form::Sign;
use crate::exactlin::model::OrbitModel;
use crate::partitions::{
    index_set, ord, partitions_of, spaltenstein_preimages, LeviType, Parity, Partition,
};
use serde_json::json;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Sl,
    So,
    Sp,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Sl => "sl",
            Family::So => "so",
            Family::Sp => "sp",
        }
    }
}

/// A classical simple Lie algebra, identified by its family and the dimension
/// of the standard representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraKind {
    pub family: Family,
    pub ambient: usize,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family.name(), self.ambient)
    }
}

impl AlgebraKind {
    pub fn new(family: Family, ambient: usize) -> Result<Self> {
        match family {
            Family::Sl => {
                if ambient < 2 {
                    return Err(invalid("sl needs ambient dimension >= 2"));
                }
            }
            Family::So => {
                if ambient < 3 {
                    return Err(invalid("so needs ambient dimension >= 3"));
                }
            }
            Family::Sp => {
                if ambient < 2 || !ambient.is_multiple_of(2) {
                    return Err(invalid("sp needs even ambient dimension >= 2"));
                }
            }
        }
        Ok(AlgebraKind { family, ambient })
    }

    /// Parses "sl:6", "so:10", "sp:4".
    pub fn parse(s: &str) -> Result<Self> {
        let (fam, dim) = s
            .split_once(':')
            .ok_or_else(|| invalid(format!("algebra spec '{}' is not family:dimension", s)))?;
        let family = match fam {
            "sl" => Family::Sl,
            "so" => Family::So,
            "sp" => Family::Sp,
            other => return Err(invalid(format!("unknown family '{}'", other))),
        };
        let ambient: usize = dim
            .parse()
            .map_err(|_| invalid(format!("bad dimension '{}'", dim)))?;
        AlgebraKind::new(family, ambient)
    }

    /// Form parity: even for orthogonal, odd for symplectic, none for sl.
    pub fn epsilon(&self) -> Option<Parity> {
        match self.family {
            Family::Sl => None,
            Family::So => Some(Parity::Even),
            Family::Sp => Some(Parity::Odd),
        }
    }

    pub fn dim_g(&self) -> usize {
        let n = self.ambient;
        match self.family {
            Family::Sl => n * n - 1,
            Family::So => n * (n - 1) / 2,
            Family::Sp => n * (n + 1) / 2,
        }
    }
}

/// Labels for the two orbits sharing a very even Jordan type in even
/// orthogonal algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VeryEvenLabel {
    I,
    II,
}

impl VeryEvenLabel {
    pub fn name(self) -> &'static str {
        match self {
            VeryEvenLabel::I => "I",
            VeryEvenLabel::II => "II",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NilpotentOrbit {
    pub algebra: AlgebraKind,
    pub jordan_type: Partition,
    pub component: Option<VeryEvenLabel>,
}

impl fmt::Display for NilpotentOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.algebra, self.jordan_type)?;
        if let Some(c) = self.component {
            write!(f, "^{}", c.name())?;
        }
        Ok(())
    }
}

impl NilpotentOrbit {
    pub fn new(
        algebra: AlgebraKind,
        jordan_type: Partition,
        component: Option<VeryEvenLabel>,
    ) -> Result<Self> {
        if !is_valid_orbit_partition(&jordan_type, algebra)? {
            return Err(invalid(format!(
                "{} is not a nilpotent Jordan type for {}",
                jordan_type, algebra
            )));
        }
        let needs_label = algebra.family == Family::So
            && algebra.ambient.is_multiple_of(2)
            && jordan_type.is_very_even();
        if needs_label != component.is_some() {
            return Err(invalid(
                "component label present iff the type is very even in even so",
            ));
        }
        Ok(NilpotentOrbit {
            algebra,
            jordan_type,
            component,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "algebra": self.algebra.family.name(),
            "dim": self.algebra.ambient,
            "partition": self.jordan_type.parts(),
            "component": self.component.map(|c| c.name()),
        })
    }
}

/// Whether `d` is the Jordan type of a nilpotent element of the algebra.
pub fn is_valid_orbit_partition(d: &Partition, algebra: AlgebraKind) -> Result<bool> {
    if d.weight() != algebra.ambient {
        return Err(invalid(format!(
            "partition weight {} does not match ambient dimension {}",
            d.weight(),
            algebra.ambient
        )));
    }
    Ok(match algebra.epsilon() {
        None => true,
        Some(eps) => d.is_orbit_type(eps),
    })
}

/// All nilpotent orbits of the algebra, very even types emitted twice.
pub fn classify_orbits(algebra: AlgebraKind) -> Vec<NilpotentOrbit> {
    let mut out = Vec::new();
    for d in partitions_of(algebra.ambient) {
        if !is_valid_orbit_partition(&d, algebra).unwrap() {
            continue;
        }
        if algebra.family == Family::So && algebra.ambient.is_multiple_of(2) && d.is_very_even() {
            for label in [VeryEvenLabel::I, VeryEvenLabel::II] {
                out.push(NilpotentOrbit {
                    algebra,
                    jordan_type: d.clone(),
                    component: Some(label),
                });
            }
        } else {
            out.push(NilpotentOrbit {
                algebra,
                jordan_type: d,
                component: None,
            });
        }
    }
    out
}

/// The stabilized flag type of a parabolic conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FlagType {
    /// (p_1, ..., p_s), any composition of the ambient dimension.
    Linear(Vec<usize>),
    /// (p_1, ..., p_k, q, p_k, ..., p_1), the middle omitted when zero.
    Isotropic { half: Vec<usize>, middle: usize },
}

impl FlagType {
    /// The full block sequence, middle included when nonzero.
    pub fn full_blocks(&self) -> Vec<usize> {
        match self {
            FlagType::Linear(blocks) => blocks.clone(),
            FlagType::Isotropic { half, middle } => {
                let mut v = half.clone();
                if *middle > 0 {
                    v.push(*middle);
                }
                v.extend(half.iter().rev());
                v
            }
        }
    }

    /// The Levi type: `ord` of the full block sequence, tagged with the
    /// middle block for isotropic types.
    pub fn levi_partition(&self) -> Result<Partition> {
        ord(&self.full_blocks())
    }

    pub fn levi_tagged(&self) -> Result<Option<LeviType>> {
        match self {
            FlagType::Linear(_) => Ok(None),
            FlagType::Isotropic { middle, .. } => {
                Ok(Some(LeviType::new(self.levi_partition()?, *middle)?))
            }
        }
    }
}

/// One polarization per parabolic conjugacy class: a flag type plus the
/// component sign when the class splits (orthogonal, no middle block, middle
/// half-block of size at least two).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolarizationDescriptor {
    pub orbit: NilpotentOrbit,
    pub flag_type: FlagType,
    pub sign: Option<Sign>,
}

impl fmt::Display for PolarizationDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.flag_type.full_blocks();
        write!(
            f,
            "({})",
            blocks
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )?;
        if let Some(s) = self.sign {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl PolarizationDescriptor {
    pub fn to_json(&self) -> serde_json::Value {
        let q = match &self.flag_type {
            FlagType::Linear(_) => None,
            FlagType::Isotropic { middle, .. } => Some(*middle),
        };
        json!({
            "flag": self.flag_type.full_blocks(),
            "q": q,
            "sign": self.sign.map(|s| s.symbol()),
        })
    }

    /// Middle half-block (the block adjacent to the middle), if isotropic
    /// with a nonempty half.
    pub fn last_half_block(&self) -> Option<usize> {
        match &self.flag_type {
            FlagType::Linear(_) => None,
            FlagType::Isotropic { half, .. } => half.last().copied(),
        }
    }
}

/// All distinct orderings of a multiset, lexicographically sorted.
pub fn multiset_permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(items.len());
    fn rec(pool: &mut Vec<usize>, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pool.is_empty() {
            out.push(current.clone());
            return;
        }
        let mut last: Option<usize> = None;
        for i in 0..pool.len() {
            if last == Some(pool[i]) {
                continue;
            }
            last = Some(pool[i]);
            let v = pool.remove(i);
            current.push(v);
            rec(pool, current, out);
            current.pop();
            pool.insert(i, v);
        }
    }
    rec(&mut sorted, &mut current, &mut out);
    out
}

/// Enumerates the polarizations of an orbit, one descriptor per parabolic
/// conjugacy class. For sl these are the orderings of the dual partition; for
/// the other families every palindromic arrangement of the dual of each Levi
/// type in the Spaltenstein preimage, split into two signed classes exactly
/// when the orthogonal middle-free split applies. Very even orbits take the
/// single sign their own representative realizes.
pub fn enumerate_polarizations(orbit: &NilpotentOrbit) -> Result<Vec<PolarizationDescriptor>> {
    let algebra = orbit.algebra;
    let mut out = Vec::new();
    match algebra.epsilon() {
        None => {
            let dual = orbit.jordan_type.dual();
            for blocks in multiset_permutations(dual.parts()) {
                out.push(PolarizationDescriptor {
                    orbit: orbit.clone(),
                    flag_type: FlagType::Linear(blocks),
                    sign: None,
                });
            }
        }
        Some(eps) => {
            let model = if orbit.component.is_some() {
                Some(OrbitModel::new(orbit)?)
            } else {
                None
            };
            for levi in spaltenstein_preimages(&orbit.jordan_type, eps)? {
                let dual = levi.pi.dual();
                let mut pool = dual.parts().to_vec();
                if levi.q > 0 {
                    let pos = pool
                        .iter()
                        .position(|&v| v == levi.q)
                        .ok_or_else(|| invariant("middle block missing from dual"))?;
                    pool.remove(pos);
                }
                let mut half_pool = Vec::new();
                let mut iter = pool.into_iter().peekable();
                while let Some(v) = iter.next() {
                    match iter.peek() {
                        Some(&w) if w == v => {
                            iter.next();
                            half_pool.push(v);
                        }
                        _ => return Err(invariant("dual blocks do not pair up")),
                    }
                }
                for half in multiset_permutations(&half_pool) {
                    let flag_type = FlagType::Isotropic {
                        half: half.clone(),
                        middle: levi.q,
                    };
                    let split = algebra.family == Family::So
                        && levi.q == 0
                        && half.last().is_some_and(|&pk| pk >= 2);
                    if !split {
                        out.push(PolarizationDescriptor {
                            orbit: orbit.clone(),
                            flag_type,
                            sign: None,
                        });
                    } else if let Some(model) = &model {
                        // a very even orbit realizes exactly one class per
                        // arrangement; read the sign off its own flag
                        let flags = model.flags_for_type(&flag_type)?;
                        if flags.len() != 1 {
                            return Err(invariant(
                                "very even arrangement should have a unique flag",
                            ));
                        }
                        let sign = model.middle_sign(&flags[0].1)?;
                        out.push(PolarizationDescriptor {
                            orbit: orbit.clone(),
                            flag_type,
                            sign: Some(sign),
                        });
                    } else {
                        for sign in [Sign::Plus, Sign::Minus] {
                            out.push(PolarizationDescriptor {
                                orbit: orbit.clone(),
                                flag_type: flag_type.clone(),
                                sign: Some(sign),
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.flag_type.full_blocks(), a.sign).cmp(&(b.flag_type.full_blocks(), b.sign))
    });
    Ok(out)
}

/// Degree of the generically finite map attached to a polarization.
pub fn springer_degree(desc: &PolarizationDescriptor) -> Result<usize> {
    let algebra = desc.orbit.algebra;
    match algebra.epsilon() {
        None => Ok(1),
        Some(eps) => {
            let levi = desc
                .flag_type
                .levi_tagged()?
                .ok_or_else(|| invariant("isotropic descriptor without tagged Levi type"))?;
            let i = index_set(&levi.pi, levi.n, eps);
            let dual_has_odd = levi.pi.dual().parts().iter().any(|&v| v % 2 == 1);
            if levi.q == 0 && eps == Parity::Even && dual_has_odd {
                if i.is_empty() {
                    return Err(invariant("degree formula needs a nonempty index set"));
                }
                Ok(1usize << (i.len() - 1))
            } else {
                Ok(1usize << i.len())
            }
        }
    }
}

/// The degree-one polarizations. All of them share a single Levi type.
pub fn resolution_set(orbit: &NilpotentOrbit) -> Result<Vec<PolarizationDescriptor>> {
    let all = enumerate_polarizations(orbit)?;
    let mut out = Vec::new();
    for desc in all {
        if springer_degree(&desc)? == 1 {
            out.push(desc);
        }
    }
    let mut levis: Vec<Partition> = out
        .iter()
        .map(|d| d.flag_type.levi_partition())
        .collect::<Result<_>>()?;
    levis.sort();
    levis.dedup();
    if levis.len() > 1 {
        return Err(invariant(format!(
            "degree-one polarizations of {} have distinct Levi types",
            orbit
        )));
    }
    Ok(out)
}

/// Complex dimension of the orbit, by the closed form in terms of the dual
/// partition (cross-checked against the centralizer nullspace in tests).
pub fn orbit_dimension(orbit: &NilpotentOrbit) -> usize {
    let n = orbit.algebra.ambient;
    let dual = orbit.jordan_type.dual();
    let sum_sq: usize = dual.parts().iter().map(|&v| v * v).sum();
    let odd = orbit
        .jordan_type
        .parts()
        .iter()
        .filter(|&&v| v % 2 == 1)
        .count();
    match orbit.algebra.family {
        Family::Sl => n * n - sum_sq,
        Family::So => n * (n - 1) / 2 - (sum_sq - odd) / 2,
        Family::Sp => n * (n + 1) / 2 - (sum_sq + odd) / 2,
    }
}

/// The canonical block arrangement targeted by flop decompositions: blocks in
/// non-decreasing order, except that odd blocks of a middle-free orthogonal
/// type sort after all even blocks so the middle half-block stays odd.
pub fn canonical_half_arrangement(
    half: &[usize],
    eps: Option<Parity>,
    middle: usize,
) -> Vec<usize> {
    let mut v = half.to_vec();
    if eps == Some(Parity::Even) && middle == 0 && v.iter().any(|&b| b % 2 == 1) {
        v.sort_by_key(|&b| (b % 2, b));
    } else {
        v.sort_unstable();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn alg(s: &str) -> AlgebraKind {
        AlgebraKind::parse(s).unwrap()
    }

    #[test]
    fn classify_sp4() {
        let orbits = classify_orbits(alg("sp:4"));
        let types: Vec<&Partition> = orbits.iter().map(|o| &o.jordan_type).collect();
        assert_eq!(
            types,
            vec![&p(&[4]), &p(&[2, 2]), &p(&[2, 1, 1]), &p(&[1, 1, 1, 1])]
        );
    }

    #[test]
    fn weight_mismatch_is_rejected() {
        assert!(is_valid_orbit_partition(&p(&[3, 1]), alg("sl:3")).is_err());
        assert!(NilpotentOrbit::new(alg("so:5"), p(&[3, 1]), None).is_err());
    }

    #[test]
    fn classify_sl3() {
        let orbits = classify_orbits(alg("sl:3"));
        assert_eq!(orbits.len(), 3);
    }

    #[test]
    fn very_even_orbits_doubled() {
        let orbits = classify_orbits(alg("so:8"));
        let very_even: Vec<_> = orbits
            .iter()
            .filter(|o| o.jordan_type == p(&[2, 2, 2, 2]))
            .collect();
        assert_eq!(very_even.len(), 2);
        assert_eq!(very_even[0].component, Some(VeryEvenLabel::I));
        assert_eq!(very_even[1].component, Some(VeryEvenLabel::II));
    }

    #[test]
    fn levi_types() {
        let ft = FlagType::Isotropic {
            half: vec![3, 2],
            middle: 0,
        };
        assert_eq!(ft.levi_partition().unwrap(), p(&[4, 4, 2]));
        let lt = ft.levi_tagged().unwrap().unwrap();
        assert_eq!(lt.q, 0);
        let ft = FlagType::Isotropic {
            half: vec![2],
            middle: 1,
        };
        assert_eq!(ft.levi_partition().unwrap(), p(&[3, 2]));
        let ft = FlagType::Isotropic {
            half: vec![1],
            middle: 3,
        };
        assert_eq!(ft.levi_partition().unwrap(), p(&[3, 1, 1]));
    }

    #[test]
    fn sl6_polarization_count() {
        let orbit = NilpotentOrbit::new(alg("sl:6"), p(&[3, 2, 1]), None).unwrap();
        let pols = enumerate_polarizations(&orbit).unwrap();
        assert_eq!(pols.len(), 6);
        for d in &pols {
            assert_eq!(springer_degree(d).unwrap(), 1);
        }
        assert_eq!(resolution_set(&orbit).unwrap().len(), 6);
    }

    #[test]
    fn so10_4411_polarizations() {
        let orbit = NilpotentOrbit::new(alg("so:10"), p(&[4, 4, 1, 1]), None).unwrap();
        let pols = enumerate_polarizations(&orbit).unwrap();
        let shown: Vec<String> = pols.iter().map(|d| d.to_string()).collect();
        assert_eq!(
            shown,
            vec!["(2,3,3,2)+", "(2,3,3,2)-", "(3,2,2,3)+", "(3,2,2,3)-"]
        );
        assert_eq!(resolution_set(&orbit).unwrap().len(), 4);
    }

    #[test]
    fn so10_3322_polarizations() {
        let orbit = NilpotentOrbit::new(alg("so:10"), p(&[3, 3, 2, 2]), None).unwrap();
        let pols = enumerate_polarizations(&orbit).unwrap();
        let shown: Vec<String> = pols.iter().map(|d| d.to_string()).collect();
        assert_eq!(shown, vec!["(1,4,4,1)+", "(1,4,4,1)-", "(4,1,1,4)"]);
        for d in &pols {
            assert_eq!(springer_degree(d).unwrap(), 1);
        }
    }

    #[test]
    fn so5_degrees() {
        let orbit = NilpotentOrbit::new(alg("so:5"), p(&[3, 1, 1]), None).unwrap();
        let pols = enumerate_polarizations(&orbit).unwrap();
        assert_eq!(pols.len(), 2);
        for d in &pols {
            let deg = springer_degree(d).unwrap();
            match d.flag_type.full_blocks().as_slice() {
                [2, 1, 2] => assert_eq!(deg, 2),
                [1, 3, 1] => assert_eq!(deg, 1),
                other => panic!("unexpected flag type {:?}", other),
            }
        }
        let res = resolution_set(&orbit).unwrap();
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].flag_type.full_blocks(), vec![1, 3, 1]);
    }

    #[test]
    fn sp4_resolution_set() {
        let orbit = NilpotentOrbit::new(alg("sp:4"), p(&[2, 2]), None).unwrap();
        let pols = enumerate_polarizations(&orbit).unwrap();
        // (2,2) with degree 1 and (1,2,1) with degree 2
        assert_eq!(pols.len(), 2);
        let res = resolution_set(&orbit).unwrap();
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].flag_type.full_blocks(), vec![2, 2]);

        let empty = NilpotentOrbit::new(alg("sp:4"), p(&[2, 1, 1]), None).unwrap();
        assert!(enumerate_polarizations(&empty).unwrap().is_empty());
    }

    #[test]
    fn orbit_dimensions() {
        let o = NilpotentOrbit::new(alg("sl:3"), p(&[2, 1]), None).unwrap();
        assert_eq!(orbit_dimension(&o), 4);
        let o = NilpotentOrbit::new(alg("sl:6"), p(&[3, 2, 1]), None).unwrap();
        assert_eq!(orbit_dimension(&o), 22);
        let o = NilpotentOrbit::new(alg("so:4"), p(&[1, 1, 1, 1]), None).unwrap();
        assert_eq!(orbit_dimension(&o), 0);
        let o = NilpotentOrbit::new(alg("sp:4"), p(&[2, 2]), None).unwrap();
        assert_eq!(orbit_dimension(&o), 6);
        let o = NilpotentOrbit::new(alg("so:5"), p(&[3, 1, 1]), None).unwrap();
        assert_eq!(orbit_dimension(&o), 6);
    }

    #[test]
    fn sign_rule_structure() {
        // signs appear exactly for orthogonal, middle-free, last half >= 2
        let mut specs = Vec::new();
        for n in 2..=10usize {
            specs.push(format!("sl:{}", n));
            if n >= 3 {
                specs.push(format!("so:{}", n));
            }
            if n % 2 == 0 {
                specs.push(format!("sp:{}", n));
            }
        }
        for spec in &specs {
            let algebra = alg(spec);
            for orbit in classify_orbits(algebra) {
                for d in enumerate_polarizations(&orbit).unwrap() {
                    let expect = algebra.family == Family::So
                        && matches!(
                            &d.flag_type,
                            FlagType::Isotropic { half, middle: 0 } if half.last().is_some_and(|&b| b >= 2)
                        );
                    assert_eq!(d.sign.is_some(), expect, "{} {}", orbit, d);
                }
            }
        }
    }

    #[test]
    fn canonical_arrangement_rules() {
        assert_eq!(
            canonical_half_arrangement(&[3, 2], Some(Parity::Even), 0),
            vec![2, 3]
        );
        assert_eq!(
            canonical_half_arrangement(&[1, 4], Some(Parity::Even), 0),
            vec![4, 1]
        );
        assert_eq!(
            canonical_half_arrangement(&[1, 4], Some(Parity::Even), 1),
            vec![1, 4]
        );
        assert_eq!(canonical_half_arrangement(&[3, 1], None, 0), vec![1, 3]);
    }
}
