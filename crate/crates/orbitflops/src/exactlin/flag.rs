//! Explicit flag construction for polarizations.
//!
//! Both constructors run the same induction: peel off the outermost block,
//! span the new step by socle vectors of selected Jordan chains, and recurse
//! on the subquotient. In the isotropic case the selection must respect the
//! chain pairing of the bilinear form, and at certain steps (detected from
//! the index sets of the running Levi type) there are exactly two admissible
//! selections; a choice bit picks one. Every subspace produced here is a span
//! of Jordan basis vectors, so the whole tower stays exact over any field.

use super::form::BilinearForm;
use super::jordan::JordanData;
use super::scalar::Field;
use super::subspace::Subspace;
use crate::error::{invalid, invariant, Error, Result};
use crate::partitions::{index_set, ord, Parity, Partition};

#[derive(Clone, Debug, PartialEq)]
pub struct Flag<F: Field> {
    /// F_1 ⊂ ... ⊂ F_s = V, each in canonical form.
    pub subspaces: Vec<Subspace<F>>,
}

impl<F: Field> Flag<F> {
    /// Block dimensions (p_1, ..., p_s).
    pub fn block_type(&self) -> Vec<usize> {
        let mut prev = 0;
        self.subspaces
            .iter()
            .map(|s| {
                let b = s.dim() - prev;
                prev = s.dim();
                b
            })
            .collect()
    }

    /// Ordered list of basis matrices, entries as strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.subspaces
                .iter()
                .map(|s| {
                    serde_json::Value::Array(
                        s.basis_rows()
                            .iter()
                            .map(|row| {
                                serde_json::Value::Array(
                                    row.iter()
                                        .map(|e| serde_json::Value::String(e.to_string()))
                                        .collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// Outcome of `verify_flag`: an empty failure list means the flag checks out.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds a flag of the given type in the kernel filtration sense: the
/// operator maps each step into the previous one. Requires `ord(blocks)` to
/// equal the Jordan type.
pub fn construct_flag_a<F: Field>(jd: &JordanData<F>, blocks: &[usize]) -> Result<Flag<F>> {
    if ord(blocks)? != jd.d {
        return Err(invalid(format!(
            "ord{:?} does not match Jordan type {}",
            blocks, jd.d
        )));
    }
    let n = jd.dim();
    let like = jd.like().clone();
    // chains as (orig index, next socle position, top position)
    let mut chains: Vec<(usize, usize, usize)> = (0..jd.num_chains())
        .map(|j| (j, 1usize, jd.chain_len(j)))
        .collect();
    let mut coords: Vec<usize> = Vec::new();
    let mut subspaces = Vec::new();
    for (t, &p) in blocks.iter().enumerate() {
        if t + 1 == blocks.len() {
            break;
        }
        if chains.len() < p {
            return Err(invariant("ran out of chains".to_string()));
        }
        for &(j, lo, _) in chains.iter().take(p) {
            coords.push(jd.coord(lo, j));
        }
        for c in chains.iter_mut().take(p) {
            c.1 += 1;
        }
        chains.retain(|&(_, lo, hi)| lo <= hi);
        chains.sort_by_key(|&(_, lo, hi)| std::cmp::Reverse(hi + 1 - lo));
        subspaces.push(Subspace::from_coords(n, &coords, &like));
    }
    subspaces.push(Subspace::full(n, &like));
    Ok(Flag { subspaces })
}

/// A live Jordan chain of the running subquotient: explicit vectors of the
/// ambient space, socle first. The shift operator maps each vector to the
/// previous one modulo the accumulated flag step.
#[derive(Clone)]
struct Chain<F: Field> {
    key: usize,
    vectors: Vec<Vec<F>>,
}

impl<F: Field> Chain<F> {
    fn len(&self) -> usize {
        self.vectors.len()
    }
}

#[derive(Clone)]
struct IsoState<F: Field> {
    chains: Vec<Chain<F>>,
    /// Pairing involution on chain keys.
    partner: std::collections::HashMap<usize, usize>,
    next_key: usize,
    /// Spanning rows of the flag steps built so far.
    rows: Vec<Vec<F>>,
    bits: Vec<bool>,
}

/// Builds one admissible isotropic flag, consuming one choice bit per
/// branching step.
pub fn construct_flag_iso<F: Field>(
    jd: &JordanData<F>,
    form: &BilinearForm<F>,
    half: &[usize],
    middle: usize,
    choices: &[bool],
) -> Result<Flag<F>> {
    let all = construct_flag_iso_all(jd, form, half, middle)?;
    for (bits, flag) in all {
        if bits.len() != choices.len() {
            return Err(invalid(format!(
                "expected {} choice bits, got {}",
                bits.len(),
                choices.len()
            )));
        }
        if bits == choices {
            return Ok(flag);
        }
    }
    Err(invariant("choice vector not realized".to_string()))
}

/// Builds every admissible isotropic flag of the given type together with the
/// choice bits that select it.
pub fn construct_flag_iso_all<F: Field>(
    jd: &JordanData<F>,
    form: &BilinearForm<F>,
    half: &[usize],
    middle: usize,
) -> Result<Vec<(Vec<bool>, Flag<F>)>> {
    if form.epsilon == Parity::Even && middle == 2 {
        return Err(invalid(
            "middle block 2 is inadmissible for symmetric forms".to_string(),
        ));
    }
    let full_type = palindrome(half, middle);
    if full_type.is_empty() {
        return Err(invalid("empty flag type".to_string()));
    }
    // the type must actually polarize this Jordan type
    let pi = ord(&full_type)?;
    let image = crate::partitions::spaltenstein_raw(&pi, jd.dim(), form.epsilon)
        .map_err(|_| invalid(format!("{:?} is not an admissible type", full_type)))?;
    if image != jd.d {
        return Err(invalid(format!(
            "Levi type {} polarizes {}, not {}",
            pi, image, jd.d
        )));
    }

    let like = jd.like().clone();
    let n = jd.dim();
    let init = IsoState {
        chains: (0..jd.num_chains())
            .map(|j| Chain {
                key: j,
                vectors: (1..=jd.chain_len(j))
                    .map(|i| {
                        let mut v = vec![like.zero(); n];
                        v[jd.coord(i, j)] = like.one();
                        v
                    })
                    .collect(),
            })
            .collect(),
        partner: (0..jd.num_chains()).map(|j| (j, form.beta[j])).collect(),
        next_key: jd.num_chains(),
        rows: Vec::new(),
        bits: Vec::new(),
    };
    let mut states = vec![init];
    for t in 0..half.len() {
        let remaining = palindrome(&half[t..], middle);
        let inner = palindrome(&half[t + 1..], middle);
        let mut next = Vec::new();
        for st in states {
            next.extend(step_iso(form, st, half[t], &remaining, &inner)?);
        }
        states = next;
    }

    let mut out = Vec::new();
    for st in states {
        if st.chains.iter().any(|c| c.len() != 1) || st.chains.len() != middle {
            return Err(invariant("middle subquotient has wrong type".to_string()));
        }
        let k = half.len();
        let s = 2 * k + if middle > 0 { 1 } else { 0 };
        let mut subspaces: Vec<Subspace<F>> = Vec::new();
        // first half from the accumulated spanning rows
        let mut acc = 0;
        for &p in half {
            acc += p;
            subspaces.push(Subspace::new(n, st.rows[..acc].to_vec(), &like));
        }
        // the rest is forced: F_i = (F_{s-i})^perp, with F_0 the zero space
        while subspaces.len() < s {
            let i = subspaces.len() + 1;
            let mirror = s - i;
            let sub = if mirror == 0 {
                Subspace::full(n, &like)
            } else {
                subspaces[mirror - 1].perp(&form.gram)
            };
            subspaces.push(sub);
        }
        out.push((st.bits.clone(), Flag { subspaces }));
    }
    Ok(out)
}

/// The pairing value `<bottom of a, top of b>`.
fn pairing_coefficient<F: Field>(
    gram: &crate::exactlin::matrix::Matrix<F>,
    a: &Chain<F>,
    b: &Chain<F>,
) -> F {
    let ga = gram.mul_vec(b.vectors.last().unwrap());
    let bottom = &a.vectors[0];
    let mut acc = ga[0].zero();
    for i in 0..ga.len() {
        acc = acc.add(&bottom[i].mul(&ga[i]));
    }
    acc
}

fn palindrome(half: &[usize], middle: usize) -> Vec<usize> {
    let mut v: Vec<usize> = half.to_vec();
    if middle > 0 {
        v.push(middle);
    }
    v.extend(half.iter().rev());
    v
}

/// One induction level: selects the chains whose socles span the next step,
/// branches when two selections are admissible, and trims the chosen chains.
/// A branching step needs a cross-paired transposition straddling the cut;
/// when the class offers only self-paired chains, two of them are re-paired
/// by the basis change (u + t v, u - t v), possible exactly when -c_u/c_v is
/// a square of the field (the Gram leading signs are chosen to make it so).
fn step_iso<F: Field>(
    form: &BilinearForm<F>,
    mut st: IsoState<F>,
    p: usize,
    remaining: &[usize],
    inner: &[usize],
) -> Result<Vec<IsoState<F>>> {
    let eps = form.epsilon;
    let n_t: usize = st.chains.iter().map(|c| c.len()).sum();
    let pi = ord(remaining)?;
    let rho = if inner.is_empty() {
        Partition::empty()
    } else {
        ord(inner)?
    };
    // running consistency: the current chain lengths must be the orbit type
    // polarized by the remaining Levi type
    let lens = Partition::from_unsorted(st.chains.iter().map(|c| c.len()).collect())?;
    let expect = crate::partitions::spaltenstein_raw(&pi, n_t, eps)?;
    if lens != expect {
        return Err(invariant(format!(
            "subquotient type {} does not match {}",
            lens, expect
        )));
    }
    let i_pi = index_set(&pi, n_t, eps);
    let i_rho = index_set(&rho, n_t - 2 * p, eps);
    let mut union = i_rho.clone();
    union.insert(p);
    let case_a = !i_rho.contains(&p) && i_pi == union;
    if !case_a && i_pi != i_rho {
        return Err(invariant(
            "index sets inconsistent with either case".to_string(),
        ));
    }

    // class containing the cut, under the current length-sorted order
    let lens_sorted: Vec<usize> = st.chains.iter().map(|c| c.len()).collect();
    debug_assert!(lens_sorted.windows(2).all(|w| w[0] >= w[1]));
    let boundary_len = lens_sorted[p - 1];
    let clo = (0..st.chains.len())
        .find(|&i| lens_sorted[i] == boundary_len)
        .unwrap();
    let chi = (clo..st.chains.len())
        .take_while(|&i| lens_sorted[i] == boundary_len)
        .last()
        .unwrap()
        + 1;
    let a = p - clo;

    type Units = (Vec<usize>, Vec<(usize, usize)>);
    let class_units = |st: &IsoState<F>| -> Result<Units> {
        let in_class: Vec<usize> = st.chains[clo..chi].iter().map(|c| c.key).collect();
        let mut selfs = Vec::new();
        let mut pairs = Vec::new();
        for (pos, &key) in in_class.iter().enumerate() {
            let partner = st.partner[&key];
            if partner == key {
                selfs.push(key);
            } else if in_class[..pos].iter().all(|&o| o != partner) {
                if !in_class.contains(&partner) {
                    return Err(invariant(
                        "chain pairing does not preserve the length class".to_string(),
                    ));
                }
                pairs.push((key, partner));
            }
        }
        Ok((selfs, pairs))
    };
    let (selfs, pairs) = class_units(&st)?;

    let full: Vec<usize> = st.chains[..clo].iter().map(|c| c.key).collect();
    let mut branches: Vec<(Vec<usize>, Option<bool>)> = Vec::new();
    if case_a {
        let mut closed = closed_selection(&selfs, &pairs, a - 1)
            .ok_or_else(|| invariant(format!("no pairing-closed selection of {} chains", a - 1)))?;
        let mut special = pairs
            .iter()
            .find(|(x, y)| !closed.contains(x) && !closed.contains(y))
            .copied();
        if special.is_none() {
            // re-pair two free self-paired chains
            let free: Vec<usize> = selfs
                .iter()
                .copied()
                .filter(|k| !closed.contains(k))
                .collect();
            if free.len() < 2 {
                return Err(invariant(
                    "no transposition available for the branching step".to_string(),
                ));
            }
            let rewired = repair_selfs(form, &mut st, free[0], free[1])?;
            special = Some(rewired);
            // selections are by key, so `closed` stays valid
            let _ = &mut closed;
        }
        let special = special.unwrap();
        for &(bit, pick) in &[(false, special.0), (true, special.1)] {
            let mut t: Vec<usize> = full.clone();
            t.extend(closed.iter().copied());
            t.push(pick);
            branches.push((t, Some(bit)));
        }
    } else {
        let closed = closed_selection(&selfs, &pairs, a)
            .ok_or_else(|| invariant(format!("no pairing-closed selection of {} chains", a)))?;
        let mut t: Vec<usize> = full.clone();
        t.extend(closed.iter().copied());
        branches.push((t, None));
    }

    let mut out = Vec::new();
    for (t_keys, bit) in branches {
        debug_assert_eq!(t_keys.len(), p);
        let bottoms: std::collections::HashSet<usize> = t_keys.iter().copied().collect();
        let tops: std::collections::HashSet<usize> =
            t_keys.iter().map(|&k| st.partner[&k]).collect();
        // isotropy of the new step
        for chain in &st.chains {
            if chain.len() == 1
                && bottoms.contains(&chain.key)
                && bottoms.contains(&st.partner[&chain.key])
            {
                return Err(invariant("selected socles are not isotropic".to_string()));
            }
            if bottoms.contains(&chain.key) && tops.contains(&chain.key) && chain.len() < 2 {
                return Err(invariant("chain too short to trim twice".to_string()));
            }
        }
        let mut next = st.clone();
        if let Some(b) = bit {
            next.bits.push(b);
        }
        for chain in st.chains.iter() {
            if bottoms.contains(&chain.key) {
                next.rows.push(chain.vectors[0].clone());
            }
        }
        for chain in next.chains.iter_mut() {
            if tops.contains(&chain.key) {
                chain.vectors.pop();
            }
            if bottoms.contains(&chain.key) {
                chain.vectors.remove(0);
            }
        }
        next.chains.retain(|c| !c.vectors.is_empty());
        next.chains.sort_by_key(|c| std::cmp::Reverse(c.len()));
        out.push(next);
    }
    Ok(out)
}

/// Replaces two self-paired chains of equal length by the cross-paired pair
/// (u + t v, u - t v); returns the new keys.
fn repair_selfs<F: Field>(
    form: &BilinearForm<F>,
    st: &mut IsoState<F>,
    ku: usize,
    kv: usize,
) -> Result<(usize, usize)> {
    let iu = st.chains.iter().position(|c| c.key == ku).unwrap();
    let iv = st.chains.iter().position(|c| c.key == kv).unwrap();
    let cu = pairing_coefficient(&form.gram, &st.chains[iu], &st.chains[iu]);
    let cv = pairing_coefficient(&form.gram, &st.chains[iv], &st.chains[iv]);
    let val = cu
        .mul(
            &cv.inv()
                .ok_or_else(|| invariant("degenerate chain pairing".to_string()))?,
        )
        .neg();
    let t = val.sqrt().ok_or_else(|| {
        invariant(format!(
            "branching step needs a square root of {:?}; the flag is not rational over this field",
            val
        ))
    })?;
    let len = st.chains[iu].len();
    if st.chains[iv].len() != len {
        return Err(invariant(
            "re-paired chains must have equal length".to_string(),
        ));
    }
    let mut a_vecs = Vec::with_capacity(len);
    let mut b_vecs = Vec::with_capacity(len);
    for i in 0..len {
        let u = &st.chains[iu].vectors[i];
        let v = &st.chains[iv].vectors[i];
        let tv: Vec<F> = v.iter().map(|x| t.mul(x)).collect();
        a_vecs.push(u.iter().zip(&tv).map(|(x, y)| x.add(y)).collect());
        b_vecs.push(u.iter().zip(&tv).map(|(x, y)| x.sub(y)).collect());
    }
    let ka = st.next_key;
    let kb = st.next_key + 1;
    st.next_key += 2;
    st.chains[iu] = Chain {
        key: ka,
        vectors: a_vecs,
    };
    st.chains[iv] = Chain {
        key: kb,
        vectors: b_vecs,
    };
    st.partner.remove(&ku);
    st.partner.remove(&kv);
    st.partner.insert(ka, kb);
    st.partner.insert(kb, ka);
    Ok((ka, kb))
}

/// Picks `want` chains closed under the pairing: self-paired units first when
/// the count is odd, transpositions otherwise. Deterministic by index order.
fn closed_selection(selfs: &[usize], pairs: &[(usize, usize)], want: usize) -> Option<Vec<usize>> {
    let mut x = want % 2;
    while (want - x) / 2 > pairs.len() {
        x += 2;
    }
    if x > selfs.len() {
        return None;
    }
    let y = (want - x) / 2;
    let mut out: Vec<usize> = selfs[..x].to_vec();
    for &(a, b) in pairs.iter().take(y) {
        out.push(a);
        out.push(b);
    }
    Some(out)
}

/// Structural checks for a flag against a nilpotent (and optional form):
/// dimensions, containments, the shift condition, isotropy, admissibility.
pub fn verify_flag<F: Field>(
    jd: &JordanData<F>,
    form: Option<&BilinearForm<F>>,
    flag: &Flag<F>,
) -> VerifyReport {
    let mut failures = Vec::new();
    let n = jd.dim();
    let like = jd.like().clone();
    let s = flag.subspaces.len();
    if s == 0 {
        return VerifyReport {
            failures: vec!["empty flag".to_string()],
        };
    }
    if flag.subspaces[s - 1].dim() != n {
        failures.push("last subspace is not the full space".to_string());
    }
    let mut prev = Subspace::zero(n, &like);
    for (i, sub) in flag.subspaces.iter().enumerate() {
        if sub.dim() <= prev.dim() && i > 0 {
            failures.push(format!("no strict inclusion at i={}", i + 1));
        }
        if !sub.contains(&prev) {
            failures.push(format!("containment fails at i={}", i + 1));
        }
        let image = sub.image(&jd.x);
        if !prev.contains(&image) {
            failures.push(format!("containment at i={}", i + 1));
        }
        prev = sub.clone();
    }
    if let Some(form) = form {
        for i in 1..s {
            let perp = flag.subspaces[i - 1].perp(&form.gram);
            let mirror = &flag.subspaces[s - 1 - i];
            if perp != *mirror {
                failures.push(format!("isotropy fails at i={}", i));
            }
        }
        if form.epsilon == Parity::Even && s % 2 == 1 {
            let ty = flag.block_type();
            if ty[(s - 1) / 2] == 2 {
                failures.push("inadmissible q=2".to_string());
            }
        }
    }
    VerifyReport { failures }
}

pub fn ensure_verified<F: Field>(
    jd: &JordanData<F>,
    form: Option<&BilinearForm<F>>,
    flag: &Flag<F>,
) -> Result<()> {
    let report = verify_flag(jd, form, flag);
    if report.is_ok() {
        Ok(())
    } else {
        Err(Error::Invariant(format!(
            "flag verification failed: {}",
            report.failures.join("; ")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::form::standard_form;
    use crate::exactlin::jordan::jordan_matrix;
    use crate::exactlin::scalar::Rat;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn flag_a_first_step() {
        let jd = jordan_matrix(&p(&[2, 1]), &Rat::int(1)).unwrap();
        let flag = construct_flag_a(&jd, &[2, 1]).unwrap();
        assert_eq!(flag.block_type(), vec![2, 1]);
        // F_1 = span{e(1,1), e(1,2)}
        let f1 = &flag.subspaces[0];
        assert_eq!(f1.dim(), 2);
        assert!(f1.contains(&Subspace::from_coords(
            3,
            &[jd.coord(1, 0), jd.coord(1, 1)],
            &Rat::int(1)
        )));
        assert!(verify_flag(&jd, None, &flag).is_ok());
    }

    #[test]
    fn flag_a_other_order() {
        let jd = jordan_matrix(&p(&[2, 1]), &Rat::int(1)).unwrap();
        let flag = construct_flag_a(&jd, &[1, 2]).unwrap();
        assert_eq!(flag.block_type(), vec![1, 2]);
        let f1 = &flag.subspaces[0];
        assert!(f1.contains_vec(
            &Subspace::from_coords(3, &[jd.coord(1, 0)], &Rat::int(1)).basis_rows()[0]
        ));
        assert!(verify_flag(&jd, None, &flag).is_ok());
    }

    #[test]
    fn flag_a_trivial() {
        let jd = jordan_matrix(&p(&[1, 1, 1]), &Rat::int(1)).unwrap();
        let flag = construct_flag_a(&jd, &[3]).unwrap();
        assert_eq!(flag.subspaces.len(), 1);
        assert!(verify_flag(&jd, None, &flag).is_ok());
    }

    #[test]
    fn flag_a_rejects_wrong_type() {
        let jd = jordan_matrix(&p(&[2, 1]), &Rat::int(1)).unwrap();
        assert!(construct_flag_a(&jd, &[3]).is_err());
    }

    #[test]
    fn iso_branching_type_d() {
        // middle step with two admissible flags
        let jd = jordan_matrix(&p(&[2, 2, 1, 1]), &Rat::int(1)).unwrap();
        let form = standard_form(&jd, Parity::Even).unwrap();
        let all = construct_flag_iso_all(&jd, &form, &[3], 0).unwrap();
        assert_eq!(all.len(), 2);
        for (bits, flag) in &all {
            assert_eq!(bits.len(), 1);
            assert_eq!(flag.block_type(), vec![3, 3]);
            assert!(verify_flag(&jd, Some(&form), flag).is_ok(), "{:?}", bits);
        }
        assert_ne!(all[0].1, all[1].1);
    }

    #[test]
    fn iso_unique_case_b() {
        let jd = jordan_matrix(&p(&[3, 1, 1]), &Rat::int(1)).unwrap();
        let form = standard_form(&jd, Parity::Even).unwrap();
        let all = construct_flag_iso_all(&jd, &form, &[1], 3).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].1.block_type(), vec![1, 3, 1]);
        assert!(verify_flag(&jd, Some(&form), &all[0].1).is_ok());
    }

    #[test]
    fn iso_symplectic_lagrangian() {
        let jd = jordan_matrix(&p(&[2, 2]), &Rat::int(1)).unwrap();
        let form = standard_form(&jd, Parity::Odd).unwrap();
        let all = construct_flag_iso_all(&jd, &form, &[2], 0).unwrap();
        assert_eq!(all.len(), 1);
        let flag = &all[0].1;
        assert_eq!(flag.block_type(), vec![2, 2]);
        // F_1 = span of the two socles
        let expect = Subspace::from_coords(4, &[jd.coord(1, 0), jd.coord(1, 1)], &Rat::int(1));
        assert_eq!(flag.subspaces[0], expect);
        assert!(verify_flag(&jd, Some(&form), flag).is_ok());
    }

    #[test]
    fn iso_rejects_non_polarization() {
        let jd = jordan_matrix(&p(&[2, 2, 1, 1]), &Rat::int(1)).unwrap();
        let form = standard_form(&jd, Parity::Even).unwrap();
        assert!(construct_flag_iso_all(&jd, &form, &[1, 2], 0).is_err());
    }

    #[test]
    fn verify_reports_broken_containment() {
        let jd = jordan_matrix(&p(&[2, 1]), &Rat::int(1)).unwrap();
        // a flag whose first step is not annihilated into F_0
        let bad = Flag {
            subspaces: vec![
                Subspace::from_coords(3, &[jd.coord(2, 0)], &Rat::int(1)),
                Subspace::from_coords(3, &[jd.coord(2, 0), jd.coord(1, 0)], &Rat::int(1)),
                Subspace::full(3, &Rat::int(1)),
            ],
        };
        let report = verify_flag(&jd, None, &bad);
        assert!(
            report.failures.iter().any(|f| f == "containment at i=1"),
            "{:?}",
            report.failures
        );
    }

    #[test]
    fn verify_reports_inadmissible_middle() {
        // zero operator on a 4-dim orthogonal space; the isotropic flag
        // (1,2,1) is not admissible
        let jd = jordan_matrix(&p(&[1, 1, 1, 1]), &Rat::int(1)).unwrap();
        let form = standard_form(&jd, Parity::Even).unwrap();
        let one = Rat::int(1);
        let line = Subspace::from_coords(4, &[jd.coord(1, 0)], &one);
        // chain 0 pairs with chain 1, so this line is isotropic
        let flag = Flag {
            subspaces: vec![line.clone(), line.perp(&form.gram), Subspace::full(4, &one)],
        };
        let report = verify_flag(&jd, Some(&form), &flag);
        assert!(
            report.failures.iter().any(|f| f == "inadmissible q=2"),
            "{:?}",
            report.failures
        );
    }

    #[test]
    fn flag_json_is_a_list_of_string_matrices() {
        let jd = jordan_matrix(&p(&[2, 1]), &Rat::int(1)).unwrap();
        let flag = construct_flag_a(&jd, &[2, 1]).unwrap();
        let j = flag.to_json();
        let arr = j.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        assert_eq!(arr[0].as_array().unwrap().len(), 2);
        assert!(arr[0][0][0].is_string());
    }

    #[test]
    fn inadmissible_middle_two() {
        let jd = jordan_matrix(&p(&[2, 2, 1, 1]), &Rat::int(1)).unwrap();
        let form = standard_form(&jd, Parity::Even).unwrap();
        let err = construct_flag_iso_all(&jd, &form, &[2], 2).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }
}
