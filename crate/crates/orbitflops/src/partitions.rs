//! Partition calculus.
//!
//! Partitions index everything in this crate: Jordan types of nilpotent
//! elements, Levi types of parabolic subgroups, and the strata of orbit
//! closures. This module is pure combinatorics: the `ord` construction and
//! duality, membership tests for the orbit partition sets `P_eps(n)` and the
//! tagged Levi sets `Pai(n,q)`, the Spaltenstein map with its preimage
//! enumeration, the boundary set `B(d)`, and dominance order.

use crate::error::{invalid, invariant, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Parity class of a bilinear form: `Even` (0) for symmetric, `Odd` (1) for
/// skew-symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_u8(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// Whether the integer `v` has this parity.
    pub fn matches(self, v: usize) -> bool {
        v % 2 == self.as_u8() as usize
    }
}

/// A partition: weakly decreasing positive integers, stored without trailing
/// zeros. Indexing past the last part reads as zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

impl Partition {
    /// Builds a partition from weakly decreasing positive parts. Trailing
    /// zeros are stripped; interior zeros or increases are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!("parts not weakly decreasing: {:?}", parts)));
        }
        if parts.contains(&0) {
            return Err(invalid("interior zero part".to_string()));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts in any order.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Weight (the integer being partitioned).
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// 1-based part access with implicit zero padding.
    pub fn part(&self, i: usize) -> usize {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    /// Multiplicity of the value `v` among the parts.
    pub fn multiplicity(&self, v: usize) -> usize {
        self.parts.iter().filter(|&&p| p == v).count()
    }

    /// The dual (conjugate) partition, i.e. `ord` of the parts themselves.
    pub fn dual(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        ord(&self.parts).expect("dual of a valid partition")
    }

    /// Membership in `P_eps(n)`: every part congruent to `eps` mod 2 occurs
    /// with even multiplicity. These are exactly the Jordan types of nilpotent
    /// elements of `so(n)` (eps even) or `sp(n)` (eps odd).
    pub fn is_orbit_type(&self, epsilon: Parity) -> bool {
        let mut i = 0;
        while i < self.parts.len() {
            let v = self.parts[i];
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == v {
                j += 1;
            }
            if epsilon.matches(v) && (j - i) % 2 != 0 {
                return false;
            }
            i = j;
        }
        true
    }

    /// All parts even, each with even multiplicity.
    pub fn is_very_even(&self) -> bool {
        self.parts.iter().all(|&p| p % 2 == 0) && self.is_orbit_type(Parity::Even)
    }
}

/// `ord(p_1, ..., p_s)`: the partition whose i-th part counts the entries
/// `p_j >= i`. Order-insensitive and weight-preserving.
pub fn ord(seq: &[usize]) -> Result<Partition> {
    if seq.is_empty() {
        return Err(invalid("ord of an empty sequence"));
    }
    if seq.contains(&0) {
        return Err(invalid("ord requires positive entries"));
    }
    let max = *seq.iter().max().unwrap();
    let parts: Vec<usize> = (1..=max)
        .map(|i| seq.iter().filter(|&&p| p >= i).count())
        .collect();
    Partition::new(parts)
}

/// A Levi type: a partition `pi` of `n` in `Pai(n,q)`, i.e. the first `q`
/// parts are odd and all later parts are even. `q` is the middle block of the
/// corresponding admissible flag types.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeviType {
    pub pi: Partition,
    pub n: usize,
    pub q: usize,
}

impl LeviType {
    pub fn new(pi: Partition, q: usize) -> Result<Self> {
        let n = pi.weight();
        if !in_pai(&pi, q) {
            return Err(invalid(format!("{} is not in Pai({},{})", pi, n, q)));
        }
        Ok(LeviType { pi, n, q })
    }
}

/// Membership in `Pai(n,q)`: `pi_i` odd for `i <= q`, even for `i > q`
/// (indices past the last part read as zero, hence even).
pub fn in_pai(pi: &Partition, q: usize) -> bool {
    if q > pi.len() {
        return false;
    }
    (1..=pi.len()).all(|i| (pi.part(i) % 2 == 1) == (i <= q))
}

/// The index set `I(pi)` relative to ambient dimension `n` and parity `eps`:
/// positions `j` with `j` of parity opposite to `n`, `pi_j` of parity `eps`,
/// and `pi_j >= pi_{j+1} + 2`.
pub fn index_set(pi: &Partition, n: usize, epsilon: Parity) -> BTreeSet<usize> {
    (1..=pi.len())
        .filter(|&j| j % 2 != n % 2)
        .filter(|&j| epsilon.matches(pi.part(j)))
        .filter(|&j| pi.part(j) >= pi.part(j + 1) + 2)
        .collect()
}

/// The index set of a tagged Levi type.
pub fn index_set_i(levi: &LeviType, epsilon: Parity) -> BTreeSet<usize> {
    index_set(&levi.pi, levi.n, epsilon)
}

/// The Spaltenstein map on raw parts: subtract 1 at each `j` in `I(pi)` and
/// add 1 at `j+1`. Total on `Pai(n,q)`; the result lands in `P_eps(n)`.
pub fn spaltenstein_raw(pi: &Partition, n: usize, epsilon: Parity) -> Result<Partition> {
    if epsilon == Parity::Odd && !n.is_multiple_of(2) {
        return Err(invalid(
            "skew forms need even ambient dimension".to_string(),
        ));
    }
    let idx = index_set(pi, n, epsilon);
    let len = pi.len() + 1;
    let mut parts: Vec<usize> = (1..=len).map(|j| pi.part(j)).collect();
    for &j in &idx {
        parts[j - 1] -= 1;
        parts[j] += 1;
    }
    let d = Partition::new(parts)
        .map_err(|_| invariant(format!("Spaltenstein image of {} not a partition", pi)))?;
    if d.weight() != n {
        return Err(invariant("Spaltenstein map changed the weight".to_string()));
    }
    if !d.is_orbit_type(epsilon) {
        return Err(invariant(format!(
            "Spaltenstein image {} not in P_{}({})",
            d,
            epsilon.as_u8(),
            n
        )));
    }
    Ok(d)
}

/// The Spaltenstein map `S: Pai(n,q) -> P_eps(n)`.
pub fn spaltenstein(levi: &LeviType, epsilon: Parity) -> Result<Partition> {
    if epsilon == Parity::Even && levi.q == 2 {
        return Err(invalid(
            "Pai(n,2) is excluded for symmetric forms".to_string(),
        ));
    }
    spaltenstein_raw(&levi.pi, levi.n, epsilon)
}

/// All partitions of `n`, in descending lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        let mut p = remaining.min(max);
        while p >= 1 {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
            p -= 1;
        }
    }
    if n == 0 {
        return vec![Partition::empty()];
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// Every tagged Levi type mapping to `d` under the Spaltenstein map, by
/// exhaustive search over partitions of the weight. At most one preimage per
/// `q` (asserted). The empty list is a legal result.
pub fn spaltenstein_preimages(d: &Partition, epsilon: Parity) -> Result<Vec<LeviType>> {
    if !d.is_orbit_type(epsilon) {
        return Err(invalid(format!(
            "{} is not in P_{}({})",
            d,
            epsilon.as_u8(),
            d.weight()
        )));
    }
    let n = d.weight();
    let all = partitions_of(n);
    let mut out = Vec::new();
    for q in 0..=n {
        if epsilon == Parity::Even && q == 2 {
            continue;
        }
        let mut found = 0usize;
        for pi in &all {
            if !in_pai(pi, q) {
                continue;
            }
            if spaltenstein_raw(pi, n, epsilon)? == *d {
                out.push(LeviType {
                    pi: pi.clone(),
                    n,
                    q,
                });
                found += 1;
            }
        }
        if found > 1 {
            return Err(invariant(format!(
                "Spaltenstein map not injective on Pai({},{})",
                n, q
            )));
        }
    }
    Ok(out)
}

/// The boundary set `B(d)`: positions `j` with `d_j > d_{j+1}` and `d_j` of
/// parity opposite to `eps`.
pub fn boundary_set(d: &Partition, epsilon: Parity) -> BTreeSet<usize> {
    (1..=d.len())
        .filter(|&j| d.part(j) > d.part(j + 1))
        .filter(|&j| !epsilon.matches(d.part(j)))
        .collect()
}

/// Dominance order: `d <= e` iff all partial sums of `d` are bounded by those
/// of `e`. Requires equal weights.
pub fn dominance_leq(d: &Partition, e: &Partition) -> Result<bool> {
    if d.weight() != e.weight() {
        return Err(invalid(format!(
            "dominance compares equal weights, got {} and {}",
            d.weight(),
            e.weight()
        )));
    }
    let m = d.len().max(e.len());
    let mut sd = 0usize;
    let mut se = 0usize;
    for i in 1..=m {
        sd += d.part(i);
        se += e.part(i);
        if sd > se {
            return Ok(false);
        }
    }
    Ok(true)
}
