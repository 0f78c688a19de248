//! Partitions of a weight: multisets over `Ĉ = C × {0..N}` indexing PBW
//! monomials, their multiplicity arrays, and the total block order that
//! triangulates the modified Shapovalov form.

use crate::error::{Error, Result};
use crate::lie_core::RootVector;
use crate::truncation::{TruncatedAlgebra, TruncIndex};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// A finite multiset over `Ĉ`, stored sorted by the basis order
/// (t-degree ascending, then base enumeration, then slot).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    entries: Vec<TruncIndex>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Build a partition, sorting entries into the algebra's basis order.
    pub fn new(alg: &TruncatedAlgebra, entries: Vec<TruncIndex>) -> Result<Self> {
        let mut keyed: Vec<((u16, u64, u16), TruncIndex)> = entries
            .into_iter()
            .map(|e| Ok((alg.basis_key(&e)?, e)))
            .collect::<Result<_>>()?;
        keyed.sort();
        Ok(Self {
            entries: keyed.into_iter().map(|(_, e)| e).collect(),
        })
    }

    /// Wrap entries already in basis order.
    pub(crate) fn from_sorted(alg: &TruncatedAlgebra, entries: Vec<TruncIndex>) -> Self {
        let _ = alg;
        Self { entries }
    }

    pub fn entries(&self) -> &[TruncIndex] {
        &self.entries
    }

    /// Number of entries counted with repetition.
    pub fn length(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total weight: the sum of the roots of the entries.
    pub fn weight(&self) -> RootVector {
        self.entries
            .iter()
            .fold(RootVector::zero(), |acc, e| acc.add(&e.root))
    }

    /// Total t-degree of the entries.
    pub fn t_degree(&self) -> u32 {
        self.entries.iter().map(|e| e.degree as u32).sum()
    }

    /// The slice `λ^d` of entries with t-degree `d`.
    pub fn degree_slice(&self, d: u16) -> Partition {
        Partition {
            entries: self
                .entries
                .iter()
                .filter(|e| e.degree == d)
                .cloned()
                .collect(),
        }
    }

    /// The slice `λ^α` of entries with root `alpha`.
    pub fn root_slice(&self, alpha: &RootVector) -> Partition {
        Partition {
            entries: self
                .entries
                .iter()
                .filter(|e| &e.root == alpha)
                .cloned()
                .collect(),
        }
    }

    /// The slice `λ^{α,d}`.
    pub fn slice(&self, alpha: &RootVector, d: u16) -> Partition {
        Partition {
            entries: self
                .entries
                .iter()
                .filter(|e| e.degree == d && &e.root == alpha)
                .cloned()
                .collect(),
        }
    }

    /// The star involution applied entrywise (`d ↦ N - d`), re-sorted.
    pub fn star(&self, alg: &TruncatedAlgebra) -> Partition {
        let entries = self.entries.iter().map(|e| alg.star(e)).collect();
        Partition::new(alg, entries).expect("starred entries remain valid")
    }

    /// The multiplicity array `(α, d) ↦ |λ^{α,d}|`.
    pub fn l_array(&self) -> LArray {
        let mut counts = BTreeMap::new();
        for e in &self.entries {
            *counts.entry((e.root.clone(), e.degree)).or_insert(0u32) += 1;
        }
        LArray { counts }
    }

    /// Distinct `(α, d)` pairs occurring in the partition.
    pub fn support(&self) -> Vec<(RootVector, u16)> {
        let mut seen = Vec::new();
        for e in &self.entries {
            let key = (e.root.clone(), e.degree);
            if !seen.contains(&key) {
                seen.push(key);
            }
        }
        seen
    }
}

/// Multiplicity array `(positive root, t-degree) → count`, the block index of
/// the form decomposition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LArray {
    counts: BTreeMap<(RootVector, u16), u32>,
}

impl LArray {
    pub fn counts(&self) -> impl Iterator<Item = (&(RootVector, u16), &u32)> {
        self.counts.iter()
    }

    pub fn count(&self, alpha: &RootVector, d: u16) -> u32 {
        self.counts
            .get(&(alpha.clone(), d))
            .copied()
            .unwrap_or(0)
    }

    /// Total weight `Σ L_{α,d} · α`.
    pub fn weight(&self) -> RootVector {
        self.counts
            .iter()
            .fold(RootVector::zero(), |acc, ((alpha, _), &k)| {
                acc.add(&alpha.scaled(k as i64))
            })
    }

    /// Weight of the degree-`d` column.
    pub fn delta_at(&self, d: u16) -> RootVector {
        self.counts
            .iter()
            .filter(|((_, deg), _)| *deg == d)
            .fold(RootVector::zero(), |acc, ((alpha, _), &k)| {
                acc.add(&alpha.scaled(k as i64))
            })
    }

    /// Entry count of the degree-`d` column.
    pub fn length_at(&self, d: u16) -> u32 {
        self.counts
            .iter()
            .filter(|((_, deg), _)| *deg == d)
            .map(|(_, &k)| k)
            .sum()
    }
}

/// Compare two multiplicity arrays in the composite order
/// `θ_χ(L) = (Δ(L), |L|, L)`.
///
/// The degree profile lives in reversed-`Q+` slices compared
/// lexicographically, the length profile reverses its degree-0 coordinate,
/// and the final tiebreak is lexicographic over the degree-major enumeration
/// of `Δ+ × {0..N}`.
pub fn compare_blocks(alg: &TruncatedAlgebra, a: &LArray, b: &LArray) -> Ordering {
    let n = alg.n();
    // Δ(L) in (reversed Q+)^{N+1}, lexicographic.
    for d in 0..=n {
        let qa = a.delta_at(d);
        let qb = b.delta_at(d);
        match alg.base.q_linearization_cmp(&qa, &qb).reverse() {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    // |L| in reversed-N × N^N, lexicographic.
    for d in 0..=n {
        let la = a.length_at(d);
        let lb = b.length_at(d);
        let ord = if d == 0 {
            la.cmp(&lb).reverse()
        } else {
            la.cmp(&lb)
        };
        match ord {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    // L itself, lexicographic over the degree-major enumeration of the index set.
    let mut keys: Vec<(u16, u64, RootVector)> = Vec::new();
    for ((alpha, d), _) in a.counts().chain(b.counts()) {
        let pos = alg
            .base
            .root_position(alpha)
            .expect("arrays index positive roots");
        let key = (*d, pos, alpha.clone());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.sort();
    for (d, _, alpha) in keys {
        match a.count(&alpha, d).cmp(&b.count(&alpha, d)) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Validated comparison of two arrays of the same weight.
pub fn compare_blocks_checked(
    alg: &TruncatedAlgebra,
    a: &LArray,
    b: &LArray,
    chi: &RootVector,
) -> Result<Ordering> {
    if &a.weight() != chi || &b.weight() != chi {
        return Err(Error::FormArgument(format!(
            "arrays are not both of weight {}",
            alg.base.display_weight(chi)
        )));
    }
    Ok(compare_blocks(alg, a, b))
}

/// All partitions of weight `chi`, grouped into blocks sorted by the
/// θ order; partitions within a block are sorted lexicographically.
pub fn blocks_of(
    alg: &TruncatedAlgebra,
    chi: &RootVector,
) -> Result<Vec<(LArray, Vec<Partition>)>> {
    let roots = alg.base.positive_roots_below(chi)?;
    let mut current: Vec<TruncIndex> = Vec::new();
    let mut all: Vec<Partition> = Vec::new();
    enumerate_rec(alg, &roots, 0, chi.clone(), &mut current, &mut all)?;

    let mut groups: BTreeMap<LArray, Vec<Partition>> = BTreeMap::new();
    for p in all {
        groups.entry(p.l_array()).or_default().push(p);
    }
    let mut blocks: Vec<(LArray, Vec<Partition>)> = groups.into_iter().collect();
    blocks.sort_by(|(a, _), (b, _)| compare_blocks(alg, a, b));
    for (_, ps) in &mut blocks {
        ps.sort();
    }
    Ok(blocks)
}

fn enumerate_rec(
    alg: &TruncatedAlgebra,
    roots: &[RootVector],
    root_idx: usize,
    remaining: RootVector,
    current: &mut Vec<TruncIndex>,
    out: &mut Vec<Partition>,
) -> Result<()> {
    if root_idx == roots.len() {
        if remaining.is_zero() {
            out.push(Partition::new(alg, current.clone())?);
        }
        return Ok(());
    }
    let alpha = &roots[root_idx];
    // Options for one entry with this root: slot × t-degree.
    let dim = alg.base.root_space_dim(alpha) as u16;
    let n = alg.n();
    let options: Vec<(u16, u16)> = (0..dim)
        .flat_map(|s| (0..=n).map(move |d| (s, d)))
        .collect();
    choose(alg, roots, root_idx, alpha, &options, 0, remaining, current, out)
}

/// Pick the multiplicity of each `(slot, degree)` option in turn; every
/// multiset over the options is produced exactly once.
#[allow(clippy::too_many_arguments)]
fn choose(
    alg: &TruncatedAlgebra,
    roots: &[RootVector],
    root_idx: usize,
    alpha: &RootVector,
    options: &[(u16, u16)],
    opt_idx: usize,
    remaining: RootVector,
    current: &mut Vec<TruncIndex>,
    out: &mut Vec<Partition>,
) -> Result<()> {
    if opt_idx == options.len() {
        return enumerate_rec(alg, roots, root_idx + 1, remaining, current, out);
    }
    // Zero copies of this option.
    choose(
        alg,
        roots,
        root_idx,
        alpha,
        options,
        opt_idx + 1,
        remaining.clone(),
        current,
        out,
    )?;
    // One more copy at a time, while the leftover weight stays plausible.
    let (slot, degree) = options[opt_idx];
    let mut rem = remaining;
    let mut taken = 0usize;
    loop {
        let next = rem.sub(alpha);
        if !alg.base.in_positive_lattice(&next) {
            break;
        }
        current.push(TruncIndex::new(alpha.clone(), slot, degree));
        taken += 1;
        rem = next;
        choose(
            alg,
            roots,
            root_idx,
            alpha,
            options,
            opt_idx + 1,
            rem.clone(),
            current,
            out,
        )?;
    }
    for _ in 0..taken {
        current.pop();
    }
    Ok(())
}

/// Flat partition list of weight `chi` in block order.
pub fn enumerate_partitions(alg: &TruncatedAlgebra, chi: &RootVector) -> Result<Vec<Partition>> {
    Ok(blocks_of(alg, chi)?
        .into_iter()
        .flat_map(|(_, ps)| ps)
        .collect())
}

/// Count the partitions of `chi`, giving up once the count exceeds `cap`.
///
/// Sweeps use this to bound weight windows without materializing the huge
/// partition sets beyond the cap.
pub fn count_partitions_capped(
    alg: &TruncatedAlgebra,
    chi: &RootVector,
    cap: usize,
) -> Result<Option<usize>> {
    let roots = alg.base.positive_roots_below(chi)?;
    // Each root contributes a multiset of (slot, degree) options, so the count
    // factors through multiset-of-size-k counts and the recursion only ranges
    // over leftover weights, never over the options themselves.
    fn count_rec(
        alg: &TruncatedAlgebra,
        roots: &[RootVector],
        root_idx: usize,
        remaining: &RootVector,
    ) -> usize {
        if root_idx == roots.len() {
            return usize::from(remaining.is_zero());
        }
        let alpha = &roots[root_idx];
        let options = alg.base.root_space_dim(alpha) * (alg.n() as usize + 1);
        let mut total = 0usize;
        let mut rem = remaining.clone();
        let mut k = 0usize;
        loop {
            let sub = count_rec(alg, roots, root_idx + 1, &rem);
            if sub > 0 {
                total = total.saturating_add(multiset_count(options, k).saturating_mul(sub));
            }
            let next = rem.sub(alpha);
            if !alg.base.in_positive_lattice(&next) {
                break;
            }
            rem = next;
            k += 1;
        }
        total
    }
    let total = count_rec(alg, &roots, 0, chi);
    Ok(if total > cap { None } else { Some(total) })
}

/// Multisets of size `k` over `n` kinds: C(n + k - 1, k), saturating.
fn multiset_count(n: usize, k: usize) -> usize {
    if n == 0 {
        return usize::from(k == 0);
    }
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n + i) / (i + 1);
        if acc > 1 << 40 {
            return usize::MAX;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::AlgebraSpec;

    fn trunc(name: &str, n: u16) -> TruncatedAlgebra {
        TruncatedAlgebra::new(AlgebraSpec::builtin(name, None).unwrap(), n).unwrap()
    }

    fn ptn(alg: &TruncatedAlgebra, entries: &[(&str, u16)]) -> Partition {
        Partition::new(
            alg,
            entries
                .iter()
                .map(|(w, d)| TruncIndex::new(alg.base.parse_weight(w).unwrap(), 0, *d))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn weight_zero_has_only_the_empty_partition() {
        let a = trunc("virasoro", 2);
        let ps = enumerate_partitions(&a, &RootVector::zero()).unwrap();
        assert_eq!(ps, vec![Partition::empty()]);
    }

    #[test]
    fn sl3_n1_reproduces_the_six_partitions_in_order() {
        let a = trunc("sl3", 1);
        let chi = a.base.parse_weight("a1+a2").unwrap();
        let ps = enumerate_partitions(&a, &chi).unwrap();
        let want = vec![
            ptn(&a, &[("a1", 0), ("a2", 0)]),
            ptn(&a, &[("a1+a2", 0)]),
            ptn(&a, &[("a1", 0), ("a2", 1)]),
            ptn(&a, &[("a1", 1), ("a2", 0)]),
            ptn(&a, &[("a1+a2", 1)]),
            ptn(&a, &[("a1", 1), ("a2", 1)]),
        ];
        assert_eq!(ps, want);
    }

    #[test]
    fn virasoro_n1_reproduces_the_five_partitions_in_order() {
        let a = trunc("virasoro", 1);
        let chi = a.base.parse_weight("2d").unwrap();
        let ps = enumerate_partitions(&a, &chi).unwrap();
        let want = vec![
            ptn(&a, &[("d", 0), ("d", 0)]),
            ptn(&a, &[("2d", 0)]),
            ptn(&a, &[("d", 0), ("d", 1)]),
            ptn(&a, &[("2d", 1)]),
            ptn(&a, &[("d", 1), ("d", 1)]),
        ];
        assert_eq!(ps, want);
    }

    #[test]
    fn virasoro_n2_reproduces_the_nine_partitions_in_order() {
        let a = trunc("virasoro", 2);
        let chi = a.base.parse_weight("2d").unwrap();
        let ps = enumerate_partitions(&a, &chi).unwrap();
        let want = vec![
            ptn(&a, &[("d", 0), ("d", 0)]),
            ptn(&a, &[("2d", 0)]),
            ptn(&a, &[("d", 0), ("d", 1)]),
            ptn(&a, &[("d", 0), ("d", 2)]),
            ptn(&a, &[("2d", 1)]),
            ptn(&a, &[("d", 1), ("d", 1)]),
            ptn(&a, &[("d", 1), ("d", 2)]),
            ptn(&a, &[("2d", 2)]),
            ptn(&a, &[("d", 2), ("d", 2)]),
        ];
        assert_eq!(ps, want);
    }

    #[test]
    fn l_array_examples() {
        let a = trunc("virasoro", 1);
        assert!(Partition::empty().l_array().counts().next().is_none());

        let p = ptn(&a, &[("d", 1), ("d", 1)]);
        let l = p.l_array();
        assert_eq!(l.count(&a.base.parse_weight("d").unwrap(), 1), 2);

        let s = trunc("sl3", 1);
        let p = ptn(&s, &[("a1", 0), ("a2", 1)]);
        let l = p.l_array();
        assert_eq!(l.count(&s.base.parse_weight("a1").unwrap(), 0), 1);
        assert_eq!(l.count(&s.base.parse_weight("a2").unwrap(), 1), 1);
    }

    #[test]
    fn sl3_blocks_are_singletons() {
        let a = trunc("sl3", 1);
        let chi = a.base.parse_weight("a1+a2").unwrap();
        let blocks = blocks_of(&a, &chi).unwrap();
        assert_eq!(blocks.len(), 6);
        assert!(blocks.iter().all(|(_, ps)| ps.len() == 1));
    }

    #[test]
    fn weight_zero_gives_single_empty_block() {
        let a = trunc("sl2", 1);
        let blocks = blocks_of(&a, &RootVector::zero()).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].1, vec![Partition::empty()]);
    }

    #[test]
    fn partitions_sum_to_chi_and_blocks_partition_exactly() {
        for (name, n, w) in [("sl3", 2, "2a1+a2"), ("virasoro", 2, "3d"), ("heisenberg", 1, "4d")] {
            let a = trunc(name, n);
            let chi = a.base.parse_weight(w).unwrap();
            let flat = enumerate_partitions(&a, &chi).unwrap();
            for p in &flat {
                assert_eq!(p.weight(), chi);
            }
            let blocks = blocks_of(&a, &chi).unwrap();
            let total: usize = blocks.iter().map(|(_, ps)| ps.len()).sum();
            assert_eq!(total, flat.len());
            let mut seen = std::collections::HashSet::new();
            for (l, ps) in &blocks {
                for p in ps {
                    assert_eq!(&p.l_array(), l);
                    assert!(seen.insert(p.clone()), "duplicate partition");
                }
            }
        }
    }

    #[test]
    fn block_order_is_a_strict_total_order() {
        let a = trunc("virasoro", 2);
        let chi = a.base.parse_weight("3d").unwrap();
        let arrays: Vec<LArray> = enumerate_partitions(&a, &chi)
            .unwrap()
            .into_iter()
            .map(|p| p.l_array())
            .collect();
        for x in &arrays {
            assert_eq!(compare_blocks(&a, x, x), Ordering::Equal);
            for y in &arrays {
                let xy = compare_blocks(&a, x, y);
                assert_eq!(xy, compare_blocks(&a, y, x).reverse());
                if x != y {
                    assert_ne!(xy, Ordering::Equal, "theta must be injective");
                }
                for z in &arrays {
                    if xy == Ordering::Less && compare_blocks(&a, y, z) == Ordering::Less {
                        assert_eq!(compare_blocks(&a, x, z), Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn degree_zero_length_reverses() {
        // Two arrays with equal Δ-profile slots but different degree-0 lengths:
        // the larger degree-0 length compares smaller.
        let a = trunc("virasoro", 1);
        let chi = a.base.parse_weight("2d").unwrap();
        let big = ptn(&a, &[("d", 0), ("d", 0)]).l_array(); // |L| = (2, 0)
        let small = ptn(&a, &[("2d", 0)]).l_array(); // |L| = (1, 0)
        assert_eq!(
            compare_blocks_checked(&a, &big, &small, &chi).unwrap(),
            Ordering::Less
        );
        // Δ-profiles differing at degree 0: greater Q+ value compares smaller.
        let deg0_heavy = ptn(&a, &[("d", 0), ("d", 1)]).l_array(); // Δ = (d, d)
        assert_eq!(
            compare_blocks_checked(&a, &small, &deg0_heavy, &chi).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn star_commutes_with_degree_slices() {
        // (λ^d)* = (λ*)^{N-d}
        let a = trunc("virasoro", 2);
        let chi = a.base.parse_weight("3d").unwrap();
        for p in enumerate_partitions(&a, &chi).unwrap() {
            let starred = p.star(&a);
            for d in 0..=2u16 {
                let lhs = p.degree_slice(d).star(&a);
                let rhs = starred.degree_slice(2 - d);
                assert_eq!(lhs, rhs);
            }
            assert_eq!(starred.star(&a), p);
        }
    }
}
