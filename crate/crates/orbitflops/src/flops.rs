//! Flop-step algebra: the two elementary local models, decomposition of the
//! birational map between any two resolutions into elementary steps, the
//! graph of all resolutions joined by elementary flops, and per-resolution
//! contraction inventories.
//!
//! Every step is realized on explicit flags: an edge exists in the graph
//! because the corresponding flag move was actually performed and verified,
//! and component signs are read off the moved flags rather than inferred.

use crate::error::{invalid, invariant, Result};
use crate::exactlin::flag::Flag;
use crate::exactlin::form::Sign;
use crate::exactlin::model::OrbitModel;
use crate::exactlin::moves::{flag_flip_d, flag_swap};
use crate::exactlin::scalar::Rat;
use crate::orbits::{
    canonical_half_arrangement, resolution_set, FlagType, NilpotentOrbit, PolarizationDescriptor,
};
use crate::partitions::{Parity, Partition};
use serde_json::json;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

/// Where a move happens: between full-type positions `j-1` and `j` (1-based),
/// or at the middle of a middle-free isotropic type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SitePos {
    Adjacent(usize),
    Middle,
}

impl fmt::Display for SitePos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SitePos::Adjacent(j) => write!(f, "j={}", j),
            SitePos::Middle => write!(f, "middle"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlopKind {
    A { m: usize, r: usize },
    D { k: usize },
}

impl fmt::Display for FlopKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlopKind::A { m, r } => write!(f, "A[m={},r={}]", m, r),
            FlopKind::D { k } => write!(f, "D[k={}]", k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlopStep {
    pub position: SitePos,
    pub kind: FlopKind,
    pub local_orbit: Partition,
    /// Flag type of the shared contraction target, adjacent blocks merged.
    pub base_flag_type: Vec<usize>,
}

impl FlopStep {
    pub fn to_json(&self) -> serde_json::Value {
        let (kind, m, r, k) = match self.kind {
            FlopKind::A { m, r } => ("A", Some(m), Some(r), None),
            FlopKind::D { k } => ("D", None, None, Some(k)),
        };
        json!({
            "position": match self.position {
                SitePos::Adjacent(j) => json!(j),
                SitePos::Middle => json!("middle"),
            },
            "kind": kind,
            "m": m,
            "r": r,
            "k": k,
            "local_orbit": self.local_orbit.parts(),
            "base_flag_type": self.base_flag_type,
        })
    }
}

/// Local model of an adjacent-block flop: ambient `m = p_left + p_right`,
/// rank bound `r = min`, local orbit `[2^r, 1^(m-2r)]`. Equal blocks give a
/// divisorial contraction, not a flop.
pub fn local_model_a(p_left: usize, p_right: usize) -> Result<(FlopKind, Partition)> {
    if p_left == p_right {
        return Err(invalid(
            "equal adjacent blocks give a divisorial contraction".to_string(),
        ));
    }
    if p_left == 0 || p_right == 0 {
        return Err(invalid("blocks must be positive".to_string()));
    }
    let m = p_left + p_right;
    let r = p_left.min(p_right);
    let mut parts = vec![2usize; r];
    parts.extend(std::iter::repeat_n(1, m - 2 * r));
    Ok((FlopKind::A { m, r }, Partition::new(parts)?))
}

/// Local model of the middle flip: odd `k >= 3`, local orbit
/// `[2^(k-1), 1, 1]` in the orthogonal algebra of rank `2k`.
pub fn local_model_d(k: usize) -> Result<(FlopKind, Partition)> {
    if k.is_multiple_of(2) || k < 3 {
        return Err(invalid(format!(
            "middle flip needs an odd middle half-block >= 3, got {}",
            k
        )));
    }
    let mut parts = vec![2usize; k - 1];
    parts.extend([1, 1]);
    Ok((FlopKind::D { k }, Partition::new(parts)?))
}

fn merged_type(full: &[usize], position: SitePos, palindromic: bool) -> Vec<usize> {
    let s = full.len();
    match position {
        SitePos::Adjacent(j) => {
            let mut merged: Vec<usize> = Vec::with_capacity(s - 1);
            let mut skip = BTreeSet::new();
            skip.insert(j - 1); // 0-based index of the second block of the pair
            if palindromic {
                skip.insert(s - j + 1); // second block of the mirrored pair
            }
            for (i, &b) in full.iter().enumerate() {
                if skip.contains(&i) {
                    let last = merged.last_mut().unwrap();
                    *last += b;
                } else {
                    merged.push(b);
                }
            }
            merged
        }
        SitePos::Middle => {
            let k = s / 2;
            let mut merged: Vec<usize> = full[..k - 1].to_vec();
            merged.push(full[k - 1] + full[k]);
            merged.extend(full[k + 1..].iter().copied());
            merged
        }
    }
}

fn step_for_swap(full: &[usize], j: usize, palindromic: bool) -> Result<FlopStep> {
    let (kind, local_orbit) = local_model_a(full[j - 2], full[j - 1])?;
    Ok(FlopStep {
        position: SitePos::Adjacent(j),
        kind,
        local_orbit,
        base_flag_type: merged_type(full, SitePos::Adjacent(j), palindromic),
    })
}

fn step_for_flip(full: &[usize]) -> Result<FlopStep> {
    let k = full.len() / 2;
    let (kind, local_orbit) = local_model_d(full[k - 1])?;
    Ok(FlopStep {
        position: SitePos::Middle,
        kind,
        local_orbit,
        base_flag_type: merged_type(full, SitePos::Middle, true),
    })
}

#[derive(Debug, Clone)]
pub struct FlopDecomposition {
    pub from: PolarizationDescriptor,
    pub to: PolarizationDescriptor,
    pub steps: Vec<FlopStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionClass {
    SmallFlop,
    Divisorial,
    Isomorphism,
}

impl ContractionClass {
    pub fn name(self) -> &'static str {
        match self {
            ContractionClass::SmallFlop => "small-flop",
            ContractionClass::Divisorial => "divisorial",
            ContractionClass::Isomorphism => "isomorphism",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ContractionInfo {
    pub site: SitePos,
    pub class: ContractionClass,
    pub local_model: String,
}

/// Classifies the contraction at one site of a resolution: adjacent unequal
/// blocks contract a flop local model, equal blocks are divisorial, and the
/// middle of a middle-free type depends on the parity of the half-block.
pub fn classify_contraction(
    desc: &PolarizationDescriptor,
    site: SitePos,
) -> Result<ContractionInfo> {
    let full = desc.flag_type.full_blocks();
    let s = full.len();
    match site {
        SitePos::Adjacent(j) => {
            let limit = match &desc.flag_type {
                FlagType::Linear(_) => s,
                FlagType::Isotropic { half, .. } => half.len(),
            };
            if j < 2 || j > limit {
                return Err(invalid(format!("site {} out of range", j)));
            }
            let (pl, pr) = (full[j - 2], full[j - 1]);
            if pl != pr {
                let (kind, orbit) = local_model_a(pl, pr)?;
                Ok(ContractionInfo {
                    site,
                    class: ContractionClass::SmallFlop,
                    local_model: format!("{} over {}", kind, orbit),
                })
            } else {
                Ok(ContractionInfo {
                    site,
                    class: ContractionClass::Divisorial,
                    local_model: format!("equal blocks {}+{}", pl, pr),
                })
            }
        }
        SitePos::Middle => {
            let FlagType::Isotropic { half, middle } = &desc.flag_type else {
                return Err(invalid("middle site needs an isotropic type".to_string()));
            };
            if desc.orbit.algebra.epsilon() != Some(Parity::Even) {
                return Err(invalid(
                    "middle site classification requires a symmetric form".to_string(),
                ));
            }
            if *middle != 0 || half.is_empty() {
                return Err(invalid("middle site needs a middle-free type".to_string()));
            }
            let pk = *half.last().unwrap();
            if pk == 1 {
                Ok(ContractionInfo {
                    site,
                    class: ContractionClass::Isomorphism,
                    local_model: "middle line not stabilized".to_string(),
                })
            } else if pk % 2 == 1 {
                let (kind, orbit) = local_model_d(pk)?;
                Ok(ContractionInfo {
                    site,
                    class: ContractionClass::SmallFlop,
                    local_model: format!("{} over {}", kind, orbit),
                })
            } else {
                Ok(ContractionInfo {
                    site,
                    class: ContractionClass::Divisorial,
                    local_model: format!("even middle half-block {}", pk),
                })
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct FlopVertex {
    pub descriptor: PolarizationDescriptor,
    pub contractions: Vec<ContractionInfo>,
}

#[derive(Debug, Clone)]
pub struct FlopEdge {
    pub a: usize,
    pub b: usize,
    pub step: FlopStep,
}

#[derive(Debug, Clone)]
pub struct FlopGraph {
    pub orbit: NilpotentOrbit,
    pub vertices: Vec<FlopVertex>,
    pub edges: Vec<FlopEdge>,
}

struct MoveContext {
    model: OrbitModel<Rat>,
    palindromic: bool,
    epsilon: Option<Parity>,
    middle: usize,
}

impl MoveContext {
    fn new(orbit: &NilpotentOrbit) -> Result<Self> {
        let model = OrbitModel::new(orbit)?;
        let sample = resolution_set(orbit)?;
        let (palindromic, middle) = match sample.first().map(|d| &d.flag_type) {
            Some(FlagType::Isotropic { middle, .. }) => (true, *middle),
            _ => (false, 0),
        };
        Ok(MoveContext {
            model,
            palindromic,
            epsilon: orbit.algebra.epsilon(),
            middle,
        })
    }

    /// Descriptor identity of a standard-model flag.
    fn descriptor_of(&self, flag: &Flag<Rat>) -> Result<PolarizationDescriptor> {
        let full = flag.block_type();
        let flag_type = if self.palindromic {
            let k = full.len() / 2;
            FlagType::Isotropic {
                half: full[..k].to_vec(),
                middle: self.middle,
            }
        } else {
            FlagType::Linear(full.clone())
        };
        let signed = self.epsilon == Some(Parity::Even)
            && self.middle == 0
            && self.palindromic
            && full[full.len() / 2 - 1] >= 2;
        let sign = if signed {
            let raw = self.model.middle_sign(flag)?;
            Some(if self.model.twist.is_some() {
                raw.flip()
            } else {
                raw
            })
        } else {
            None
        };
        Ok(PolarizationDescriptor {
            orbit: self.model.orbit.clone(),
            flag_type,
            sign,
        })
    }

    fn standard_flags(&self, ft: &FlagType) -> Result<Vec<Flag<Rat>>> {
        // untwisted: all moves and signs are computed in the standard model
        let untwisted = OrbitModel {
            twist: None,
            ..self.model.clone()
        };
        Ok(untwisted
            .flags_for_type(ft)?
            .into_iter()
            .map(|(_, f)| f)
            .collect())
    }

    fn swap(&self, flag: &Flag<Rat>, j: usize) -> Result<Flag<Rat>> {
        flag_swap(&self.model.jd, self.model.form.as_ref(), flag, j)
    }

    fn flip(&self, flag: &Flag<Rat>) -> Result<Flag<Rat>> {
        let form = self
            .model
            .form
            .as_ref()
            .ok_or_else(|| invariant("flip needs a form".to_string()))?;
        flag_flip_d(&self.model.jd, form, flag)
    }

    fn swap_limit(&self, full_len: usize) -> usize {
        if self.palindromic {
            full_len / 2
        } else {
            full_len
        }
    }
}

/// Builds the graph of all degree-one polarizations joined by elementary
/// moves realized on explicit flags.
pub fn flop_graph(orbit: &NilpotentOrbit) -> Result<FlopGraph> {
    let res = resolution_set(orbit)?;
    if res.is_empty() {
        return Err(invalid(format!("{} has no resolutions", orbit)));
    }
    let ctx = MoveContext::new(orbit)?;
    let index: HashMap<(Vec<usize>, Option<Sign>), usize> = res
        .iter()
        .enumerate()
        .map(|(i, d)| ((d.flag_type.full_blocks(), d.sign), i))
        .collect();
    // representative flags per vertex
    let mut rep_flags: Vec<Vec<Flag<Rat>>> = vec![Vec::new(); res.len()];
    let mut seen_types = BTreeSet::new();
    for d in &res {
        let full = d.flag_type.full_blocks();
        if !seen_types.insert(full.clone()) {
            continue;
        }
        for flag in ctx.standard_flags(&d.flag_type)? {
            let target = ctx.descriptor_of(&flag)?;
            let key = (target.flag_type.full_blocks(), target.sign);
            let vi = *index.get(&key).ok_or_else(|| {
                invariant(format!("flag lands outside the resolution set: {}", target))
            })?;
            rep_flags[vi].push(flag);
        }
    }
    if let Some(empty) = rep_flags.iter().position(|f| f.is_empty()) {
        return Err(invariant(format!(
            "no representative flag for {}",
            res[empty]
        )));
    }

    let mut edges: Vec<FlopEdge> = Vec::new();
    let mut edge_keys: BTreeSet<(usize, usize, SitePos)> = BTreeSet::new();
    for (vi, d) in res.iter().enumerate() {
        let full = d.flag_type.full_blocks();
        for flag in &rep_flags[vi] {
            for j in 2..=ctx.swap_limit(full.len()) {
                if full[j - 2] == full[j - 1] {
                    continue;
                }
                let moved = ctx.swap(flag, j)?;
                let target = ctx.descriptor_of(&moved)?;
                let key = (target.flag_type.full_blocks(), target.sign);
                let wi = *index.get(&key).ok_or_else(|| {
                    invariant(format!(
                        "swap target outside the resolution set: {}",
                        target
                    ))
                })?;
                let step = step_for_swap(&full, j, ctx.palindromic)?;
                let ek = (vi.min(wi), vi.max(wi), step.position);
                if edge_keys.insert(ek) {
                    edges.push(FlopEdge {
                        a: ek.0,
                        b: ek.1,
                        step,
                    });
                }
            }
            // middle flip: orthogonal only, and only a flop for odd middle
            // half-block >= 3
            if ctx.palindromic && ctx.middle == 0 && ctx.epsilon == Some(Parity::Even) {
                let pk = full[full.len() / 2 - 1];
                if pk % 2 == 1 && pk >= 3 {
                    let moved = ctx.flip(flag)?;
                    let target = ctx.descriptor_of(&moved)?;
                    let key = (target.flag_type.full_blocks(), target.sign);
                    let wi = *index.get(&key).ok_or_else(|| {
                        invariant(format!(
                            "flip target outside the resolution set: {}",
                            target
                        ))
                    })?;
                    let step = step_for_flip(&full)?;
                    let ek = (vi.min(wi), vi.max(wi), SitePos::Middle);
                    if edge_keys.insert(ek) {
                        edges.push(FlopEdge {
                            a: ek.0,
                            b: ek.1,
                            step,
                        });
                    }
                }
            }
        }
    }
    edges.sort_by_key(|e| (e.a, e.b, e.step.position));

    // contraction inventory: one small contraction per incident edge, plus
    // the divisorial / isomorphism sites
    let mut vertices = Vec::with_capacity(res.len());
    for (vi, d) in res.iter().enumerate() {
        let full = d.flag_type.full_blocks();
        let mut contractions = Vec::new();
        for e in &edges {
            if e.a == vi || e.b == vi {
                contractions.push(ContractionInfo {
                    site: e.step.position,
                    class: ContractionClass::SmallFlop,
                    local_model: format!("{} over {}", e.step.kind, e.step.local_orbit),
                });
            }
        }
        for j in 2..=ctx.swap_limit(full.len()) {
            if full[j - 2] == full[j - 1] {
                contractions.push(classify_contraction(d, SitePos::Adjacent(j))?);
            }
        }
        if ctx.palindromic && ctx.middle == 0 && ctx.epsilon == Some(Parity::Even) {
            let pk = full[full.len() / 2 - 1];
            if pk == 1 || pk % 2 == 0 {
                contractions.push(classify_contraction(d, SitePos::Middle)?);
            }
        }
        vertices.push(FlopVertex {
            descriptor: d.clone(),
            contractions,
        });
    }

    let graph = FlopGraph {
        orbit: orbit.clone(),
        vertices,
        edges,
    };
    if !graph.is_connected() {
        return Err(invariant(format!(
            "flop graph of {} is disconnected",
            orbit
        )));
    }
    Ok(graph)
}

impl FlopGraph {
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                for (x, y) in [(e.a, e.b), (e.b, e.a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertex_label(&self, i: usize) -> String {
        self.vertices[i].descriptor.to_string()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph flops {\n");
        for i in 0..self.vertices.len() {
            out.push_str(&format!("  \"{}\";\n", self.vertex_label(i)));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                self.vertex_label(e.a),
                self.vertex_label(e.b),
                e.step.kind
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "orbit": self.orbit.to_json(),
            "vertices": self.vertices.iter().map(|v| json!({
                "descriptor": v.descriptor.to_json(),
                "contractions": v.contractions.iter().map(|c| json!({
                    "site": match c.site {
                        SitePos::Adjacent(j) => json!(j),
                        SitePos::Middle => json!("middle"),
                    },
                    "class": c.class.name(),
                    "local_model": c.local_model,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "a": e.a,
                "b": e.b,
                "step": e.step.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Decomposes the birational map between two resolutions into elementary
/// steps: sort both block sequences to the canonical arrangement by adjacent
/// swaps, then reconcile a component-sign mismatch with one middle flip.
/// Every step is performed on explicit flags and verified.
pub fn decompose(
    orbit: &NilpotentOrbit,
    from: &PolarizationDescriptor,
    to: &PolarizationDescriptor,
) -> Result<FlopDecomposition> {
    let res = resolution_set(orbit)?;
    for d in [from, to] {
        if !res.contains(d) {
            return Err(invalid(format!("{} is not a resolution of {}", d, orbit)));
        }
    }
    if from == to {
        return Ok(FlopDecomposition {
            from: from.clone(),
            to: to.clone(),
            steps: Vec::new(),
        });
    }
    let ctx = MoveContext::new(orbit)?;
    let (f_flag, f_steps) = sort_to_canonical(&ctx, from)?;
    let (t_flag, t_steps) = sort_to_canonical(&ctx, to)?;
    let f_desc = ctx.descriptor_of(&f_flag)?;
    let t_desc = ctx.descriptor_of(&t_flag)?;
    if f_desc.flag_type != t_desc.flag_type {
        return Err(invariant("canonical types disagree".to_string()));
    }
    let mut steps = f_steps;
    if f_desc.sign != t_desc.sign {
        let full = f_flag.block_type();
        let pk = full[full.len() / 2 - 1];
        if pk % 2 == 0 || pk < 3 {
            return Err(invariant(
                "sign mismatch at a middle without a flip".to_string(),
            ));
        }
        let flipped = ctx.flip(&f_flag)?;
        let flipped_desc = ctx.descriptor_of(&flipped)?;
        if flipped_desc != t_desc {
            return Err(invariant(
                "middle flip did not reconcile the signs".to_string(),
            ));
        }
        steps.push(step_for_flip(&full)?);
    }
    steps.extend(t_steps.into_iter().rev());
    Ok(FlopDecomposition {
        from: from.clone(),
        to: to.clone(),
        steps,
    })
}

/// Bubble-sorts a descriptor's blocks to the canonical arrangement on an
/// explicit flag, collecting one step per swap.
fn sort_to_canonical(
    ctx: &MoveContext,
    desc: &PolarizationDescriptor,
) -> Result<(Flag<Rat>, Vec<FlopStep>)> {
    // pick the representative flag realizing this descriptor
    let mut flag = None;
    for cand in ctx.standard_flags(&desc.flag_type)? {
        if ctx.descriptor_of(&cand)? == *desc {
            flag = Some(cand);
            break;
        }
    }
    let mut flag = flag.ok_or_else(|| invariant(format!("no representative flag for {}", desc)))?;
    let eps = ctx.epsilon;
    let (sortable_len, target, parity_key): (usize, Vec<usize>, bool) = match &desc.flag_type {
        FlagType::Linear(blocks) => (
            blocks.len(),
            canonical_half_arrangement(blocks, eps, 1),
            false,
        ),
        FlagType::Isotropic { half, middle } => {
            let parity_key =
                eps == Some(Parity::Even) && *middle == 0 && half.iter().any(|&b| b % 2 == 1);
            (
                half.len(),
                canonical_half_arrangement(half, eps, *middle),
                parity_key,
            )
        }
    };
    let key = |b: usize| -> (usize, usize) {
        if parity_key {
            (b % 2, b)
        } else {
            (0, b)
        }
    };
    let mut steps = Vec::new();
    loop {
        let full = flag.block_type();
        let current = &full[..sortable_len];
        if current == target.as_slice() {
            break;
        }
        let mut swapped = false;
        for j in 2..=sortable_len {
            let full_now = flag.block_type();
            if key(full_now[j - 2]) > key(full_now[j - 1]) {
                steps.push(step_for_swap(&full_now, j, ctx.palindromic)?);
                flag = ctx.swap(&flag, j)?;
                swapped = true;
            }
        }
        if !swapped {
            return Err(invariant("sorting made no progress".to_string()));
        }
    }
    Ok((flag, steps))
}

/// Counts of the movable-cone chamber structure for an orbit's resolutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberSummary {
    pub vertices: usize,
    pub edges: usize,
    pub chambers: usize,
    /// Block-count heuristic; pinned to the literature only for the three
    /// worked examples.
    pub picard_rank: usize,
}

pub fn chamber_summary(orbit: &NilpotentOrbit) -> Result<ChamberSummary> {
    let graph = flop_graph(orbit)?;
    let sample = &graph.vertices[0].descriptor;
    let picard_rank = match &sample.flag_type {
        FlagType::Linear(blocks) => blocks.len() - 1,
        FlagType::Isotropic { half, .. } => half.len(),
    };
    Ok(ChamberSummary {
        vertices: graph.vertices.len(),
        edges: graph.edges.len(),
        chambers: graph.vertices.len(),
        picard_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::AlgebraKind;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn orbit(spec: &str, parts: &[usize]) -> NilpotentOrbit {
        NilpotentOrbit::new(AlgebraKind::parse(spec).unwrap(), p(parts), None).unwrap()
    }

    #[test]
    fn local_models() {
        let (kind, orb) = local_model_a(3, 2).unwrap();
        assert_eq!(kind, FlopKind::A { m: 5, r: 2 });
        assert_eq!(orb, p(&[2, 2, 1]));
        let (kind, orb) = local_model_a(1, 4).unwrap();
        assert_eq!(kind, FlopKind::A { m: 5, r: 1 });
        assert_eq!(orb, p(&[2, 1, 1, 1]));
        assert!(local_model_a(2, 2).is_err());

        let (kind, orb) = local_model_d(3).unwrap();
        assert_eq!(kind, FlopKind::D { k: 3 });
        assert_eq!(orb, p(&[2, 2, 1, 1]));
        let (_, orb) = local_model_d(5).unwrap();
        assert_eq!(orb, p(&[2, 2, 2, 2, 1, 1]));
        assert!(local_model_d(1).is_err());
        assert!(local_model_d(4).is_err());
    }

    #[test]
    fn contraction_classification() {
        let o = orbit("so:10", &[4, 4, 1, 1]);
        let res = resolution_set(&o).unwrap();
        let d3223 = res
            .iter()
            .find(|d| d.flag_type.full_blocks() == vec![3, 2, 2, 3])
            .unwrap();
        let c = classify_contraction(d3223, SitePos::Middle).unwrap();
        assert_eq!(c.class, ContractionClass::Divisorial);
        let c = classify_contraction(d3223, SitePos::Adjacent(2)).unwrap();
        assert_eq!(c.class, ContractionClass::SmallFlop);

        let o = orbit("so:10", &[3, 3, 2, 2]);
        let res = resolution_set(&o).unwrap();
        let d1441 = res
            .iter()
            .find(|d| d.flag_type.full_blocks() == vec![1, 4, 4, 1])
            .unwrap();
        assert_eq!(
            classify_contraction(d1441, SitePos::Middle).unwrap().class,
            ContractionClass::Divisorial
        );
        let d4114 = res
            .iter()
            .find(|d| d.flag_type.full_blocks() == vec![4, 1, 1, 4])
            .unwrap();
        assert_eq!(
            classify_contraction(d4114, SitePos::Middle).unwrap().class,
            ContractionClass::Isomorphism
        );
        assert!(classify_contraction(d4114, SitePos::Adjacent(5)).is_err());
    }

    #[test]
    fn sl6_cycle() {
        let graph = flop_graph(&orbit("sl:6", &[3, 2, 1])).unwrap();
        assert_eq!(graph.vertices.len(), 6);
        assert_eq!(graph.edges.len(), 6);
        // every vertex has exactly two incident edges: a single cycle
        for v in 0..6 {
            let deg = graph.edges.iter().filter(|e| e.a == v || e.b == v).count();
            assert_eq!(deg, 2);
        }
        // the cycle alternates the two swap sites; the merged local models
        // come in pairs m = 5, 4, 3
        let mut ms: Vec<usize> = graph
            .edges
            .iter()
            .map(|e| match e.step.kind {
                FlopKind::A { m, .. } => m,
                _ => panic!("unexpected middle step"),
            })
            .collect();
        ms.sort_unstable();
        assert_eq!(ms, vec![3, 3, 4, 4, 5, 5]);
        // the (3,2,1) -- (2,3,1) edge carries the rank-two model in ambient 5
        let va = (0..6)
            .find(|&i| graph.vertex_label(i) == "(3,2,1)")
            .unwrap();
        let vb = (0..6)
            .find(|&i| graph.vertex_label(i) == "(2,3,1)")
            .unwrap();
        let edge = graph
            .edges
            .iter()
            .find(|e| (e.a, e.b) == (va.min(vb), va.max(vb)))
            .unwrap();
        assert_eq!(edge.step.kind, FlopKind::A { m: 5, r: 2 });
        assert_eq!(edge.step.local_orbit, p(&[2, 2, 1]));
        assert_eq!(edge.step.base_flag_type, vec![5, 1]);
    }

    #[test]
    fn so10_4411_path() {
        let graph = flop_graph(&orbit("so:10", &[4, 4, 1, 1])).unwrap();
        assert_eq!(graph.vertices.len(), 4);
        assert_eq!(graph.edges.len(), 3);
        let labels: Vec<String> = (0..4).map(|i| graph.vertex_label(i)).collect();
        assert_eq!(
            labels,
            vec!["(2,3,3,2)+", "(2,3,3,2)-", "(3,2,2,3)+", "(3,2,2,3)-"]
        );
        let d_edges: Vec<&FlopEdge> = graph
            .edges
            .iter()
            .filter(|e| matches!(e.step.kind, FlopKind::D { .. }))
            .collect();
        assert_eq!(d_edges.len(), 1);
        assert_eq!(d_edges[0].step.kind, FlopKind::D { k: 3 });
        assert_eq!(d_edges[0].step.local_orbit, p(&[2, 2, 1, 1]));
        assert_eq!(d_edges[0].step.base_flag_type, vec![2, 6, 2]);
        // the D edge joins the two signs of (2,3,3,2)
        assert_eq!((d_edges[0].a, d_edges[0].b), (0, 1));
    }

    #[test]
    fn so10_3322_path() {
        let graph = flop_graph(&orbit("so:10", &[3, 3, 2, 2])).unwrap();
        assert_eq!(graph.vertices.len(), 3);
        assert_eq!(graph.edges.len(), 2);
        for e in &graph.edges {
            assert_eq!(e.step.kind, FlopKind::A { m: 5, r: 1 });
            assert_eq!(e.step.local_orbit, p(&[2, 1, 1, 1]));
        }
        // (4,1,1,4) is the hub
        let hub = (0..3)
            .find(|&i| graph.vertex_label(i) == "(4,1,1,4)")
            .unwrap();
        let deg = graph
            .edges
            .iter()
            .filter(|e| e.a == hub || e.b == hub)
            .count();
        assert_eq!(deg, 2);
        let smalls = graph.vertices[hub]
            .contractions
            .iter()
            .filter(|c| c.class == ContractionClass::SmallFlop)
            .count();
        assert_eq!(smalls, 2);
    }

    #[test]
    fn decompose_sl6() {
        let o = orbit("sl:6", &[3, 2, 1]);
        let res = resolution_set(&o).unwrap();
        let from = res
            .iter()
            .find(|d| d.flag_type.full_blocks() == vec![3, 2, 1])
            .unwrap();
        let to = res
            .iter()
            .find(|d| d.flag_type.full_blocks() == vec![1, 2, 3])
            .unwrap();
        let dec = decompose(&o, from, to).unwrap();
        assert_eq!(dec.steps.len(), 3);
        assert!(dec
            .steps
            .iter()
            .all(|s| matches!(s.kind, FlopKind::A { .. })));
        let id = decompose(&o, from, from).unwrap();
        assert!(id.steps.is_empty());
    }

    #[test]
    fn decompose_so10_with_flip() {
        let o = orbit("so:10", &[4, 4, 1, 1]);
        let res = resolution_set(&o).unwrap();
        let find = |blocks: &[usize], sign: Sign| {
            res.iter()
                .find(|d| d.flag_type.full_blocks() == blocks && d.sign == Some(sign))
                .unwrap()
                .clone()
        };
        let from = find(&[3, 2, 2, 3], Sign::Plus);
        let to = find(&[2, 3, 3, 2], Sign::Minus);
        let dec = decompose(&o, &from, &to).unwrap();
        let kinds: Vec<&FlopKind> = dec.steps.iter().map(|s| &s.kind).collect();
        assert_eq!(kinds.len(), 2);
        assert!(matches!(kinds[0], FlopKind::A { m: 5, r: 2 }));
        assert!(matches!(kinds[1], FlopKind::D { k: 3 }));
    }

    #[test]
    fn decompose_so10_identified_middle() {
        // endpoints differing only by sign with middle half-block 1 meet at
        // the canonical vertex with no middle flip
        let o = orbit("so:10", &[3, 3, 2, 2]);
        let res = resolution_set(&o).unwrap();
        let from = res
            .iter()
            .find(|d| d.sign == Some(Sign::Plus))
            .unwrap()
            .clone();
        let to = res
            .iter()
            .find(|d| d.sign == Some(Sign::Minus))
            .unwrap()
            .clone();
        let dec = decompose(&o, &from, &to).unwrap();
        assert_eq!(dec.steps.len(), 2);
        assert!(dec
            .steps
            .iter()
            .all(|s| matches!(s.kind, FlopKind::A { m: 5, r: 1 })));
    }

    #[test]
    fn chamber_summaries() {
        let s = chamber_summary(&orbit("sl:6", &[3, 2, 1])).unwrap();
        assert_eq!(s.chambers, 6);
        assert_eq!(s.picard_rank, 2);
        let s = chamber_summary(&orbit("so:10", &[4, 4, 1, 1])).unwrap();
        assert_eq!(s.chambers, 4);
        assert_eq!(s.picard_rank, 2);
        let s = chamber_summary(&orbit("so:10", &[3, 3, 2, 2])).unwrap();
        assert_eq!(s.chambers, 3);
        assert_eq!(s.picard_rank, 2);
    }
}
