//! Enumeration of the combinatorial families: pairings 𝒫₂(m), non-crossing
//! partitions NC(n), non-crossing pairings NC₂(2n), the annular families
//! S_NC(n,−n) and S_NC^δ(n,−n), and the NC₂^δ(2n,−2n) pairings, together
//! with the tripartite decomposition S_I ∪ S_II ∪ S_III and its bijections.
//!
//! All streams are deterministic; permutation streams are sorted by canonical
//! cycle form so fixtures are stable.
//!
//! The S_NC^δ(n,−n) enumerator is constructive: an element is determined by
//! its restriction to [n] — a circular half-structure with j closed blocks
//! (plain non-crossing blocks, mirrored to the negatives) and 2l ≥ 2 open
//! blocks (traces of the through cycles). The open blocks cut the open
//! support into 2l cyclic runs; run i is completed into a through cycle with
//! the negated reverse of run i+l. Mirror symmetry supplies the negative
//! half, so only structures on [n] are searched; the brute-force filter over
//! candidate permutations is kept in [`brute`] as a test oracle.

use std::collections::HashSet;

use thiserror::Error;

use crate::partition::{Pairing, SetPartition};
use crate::perm::{delta, gamma_tilde, PermError, SignedPermutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("size {0} exceeds the configured cap {1}")]
    CapExceeded(usize, usize),
    #[error("pairings need an even number of points, got {0}")]
    OddSize(usize),
    #[error("element is not in the required family: {0}")]
    NotInFamily(String),
    #[error("malformed tripartite data: {0}")]
    MalformedTData(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Enumeration caps. These are configuration, not constants; the defaults
/// keep every exhaustive check comfortably under a minute.
#[derive(Debug, Clone, Copy)]
pub struct EnumCaps {
    /// Largest m for streaming 𝒫₂(m).
    pub pairings: usize,
    /// Largest n for full enumeration of S_NC^δ(n,−n).
    pub snc_delta: usize,
    /// Largest n for full (filter-based) enumeration of S_NC(n,−n).
    pub snc_rev: usize,
    /// Largest n for materializing NC(n).
    pub nc: usize,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            pairings: 20,
            snc_delta: 9,
            snc_rev: 5,
            nc: 12,
        }
    }
}

// ---------------------------------------------------------------------------
// counting helpers
// ---------------------------------------------------------------------------

pub fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

pub fn catalan(n: u64) -> i128 {
    binomial(2 * n, n) / (n as i128 + 1)
}

/// (m − 1)!! — the number of pairings of m points (m even).
pub fn double_factorial(m: u64) -> i128 {
    let mut acc: i128 = 1;
    let mut k = m as i128 - 1;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// |S_NC^δ(n,−n)| = 4^{n−1} − ½ C(2n, n).
pub fn snc_delta_count(n: u64) -> i128 {
    if n == 0 {
        return 0;
    }
    let pow = 1i128 << (2 * (n - 1)); // 4^{n-1}
    pow - binomial(2 * n, n) / 2
}

// ---------------------------------------------------------------------------
// pairings of [m]
// ---------------------------------------------------------------------------

/// Lazy stream over all pairings of [m] in a fixed backtracking order:
/// the smallest unpaired point is always paired next, partners tried in
/// increasing order.
pub struct PairingIter {
    m: usize,
    partner: Vec<u32>,
    stack: Vec<(u32, u32)>,
    started: bool,
    done: bool,
}

const UNPAIRED: u32 = u32::MAX;

impl PairingIter {
    fn new(m: usize) -> Self {
        PairingIter {
            m,
            partner: vec![UNPAIRED; m],
            stack: Vec::with_capacity(m / 2),
            started: false,
            done: m % 2 != 0,
        }
    }

    fn smallest_unpaired(&self) -> Option<u32> {
        (0..self.m as u32).find(|&i| self.partner[i as usize] == UNPAIRED)
    }

    /// Pairs every remaining point greedily (smallest with smallest).
    fn complete(&mut self) {
        while let Some(a) = self.smallest_unpaired() {
            let b = (a + 1..self.m as u32)
                .find(|&j| self.partner[j as usize] == UNPAIRED)
                .expect("odd leftover in pairing completion");
            self.partner[a as usize] = b;
            self.partner[b as usize] = a;
            self.stack.push((a, b));
        }
    }

    fn snapshot(&self) -> Pairing {
        Pairing::from_partner_vec(self.partner.clone()).expect("internal pairing invalid")
    }
}

impl Iterator for PairingIter {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.m == 0 {
                self.done = true;
                // the empty pairing
                return Some(Pairing::from_partner_vec(Vec::new()).unwrap());
            }
            self.complete();
            return Some(self.snapshot());
        }
        // backtrack: advance the most recent choice that can still move
        while let Some((a, b)) = self.stack.pop() {
            self.partner[a as usize] = UNPAIRED;
            self.partner[b as usize] = UNPAIRED;
            let mut advanced = false;
            for nb in b + 1..self.m as u32 {
                if self.partner[nb as usize] == UNPAIRED {
                    self.partner[a as usize] = nb;
                    self.partner[nb as usize] = a;
                    self.stack.push((a, nb));
                    advanced = true;
                    break;
                }
            }
            if advanced {
                self.complete();
                return Some(self.snapshot());
            }
        }
        self.done = true;
        None
    }
}

/// All pairings of [m]; exactly (m−1)!! of them, deterministic order.
pub fn pairings(m: usize, caps: &EnumCaps) -> Result<PairingIter, EnumError> {
    if m % 2 != 0 {
        return Err(EnumError::OddSize(m));
    }
    if m > caps.pairings {
        return Err(EnumError::CapExceeded(m, caps.pairings));
    }
    Ok(PairingIter::new(m))
}

// ---------------------------------------------------------------------------
// non-crossing partitions and pairings of a path
// ---------------------------------------------------------------------------

fn cartesian_extend(acc: Vec<Vec<Vec<i32>>>, options: Vec<Vec<Vec<i32>>>) -> Vec<Vec<Vec<i32>>> {
    let mut out = Vec::with_capacity(acc.len() * options.len());
    for base in &acc {
        for opt in &options {
            let mut joined = base.clone();
            joined.extend(opt.iter().cloned());
            out.push(joined);
        }
    }
    out
}

/// All non-crossing partitions of a linearly ordered list of points,
/// returned as block lists (blocks keep path order).
pub fn nc_partitions_of_path(points: &[i32]) -> Vec<Vec<Vec<i32>>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // the block containing points[0] picks further members left to right;
    // the gaps between consecutive members are partitioned independently
    fn rec(
        points: &[i32],
        from: usize,
        block: &mut Vec<i32>,
        gap_parts: Vec<Vec<Vec<i32>>>,
        out: &mut Vec<Vec<Vec<i32>>>,
    ) {
        // option: close the block here, the tail is one last gap
        let tail = nc_partitions_of_path(&points[from..]);
        let closed = cartesian_extend(gap_parts.clone(), tail);
        for mut part in closed {
            part.insert(0, block.clone());
            out.push(part);
        }
        // option: extend the block with points[i], the skipped range is a gap
        for i in from..points.len() {
            let gap = nc_partitions_of_path(&points[from..i]);
            let with_gap = cartesian_extend(gap_parts.clone(), gap);
            block.push(points[i]);
            rec(points, i + 1, block, with_gap, out);
            block.pop();
        }
    }
    let mut block = vec![points[0]];
    rec(points, 1, &mut block, vec![Vec::new()], &mut out);
    out
}

/// All non-crossing pairings of a linearly ordered list of points.
pub fn nc_pairings_of_path(points: &[i32]) -> Vec<Vec<(i32, i32)>> {
    if points.len() % 2 != 0 {
        return Vec::new();
    }
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // points[0] pairs with an odd-offset partner; inside and outside recurse
    for j in (1..points.len()).step_by(2) {
        let inside = nc_pairings_of_path(&points[1..j]);
        let outside = nc_pairings_of_path(&points[j + 1..]);
        for ins in &inside {
            for outs in &outside {
                let mut pairs = vec![(points[0], points[j])];
                pairs.extend(ins.iter().copied());
                pairs.extend(outs.iter().copied());
                out.push(pairs);
            }
        }
    }
    out
}

/// NC(n) as set partitions of [n]; Catalan(n) of them. n = 0 yields the
/// single empty partition.
pub fn nc_partitions(n: usize, caps: &EnumCaps) -> Result<Vec<SetPartition>, EnumError> {
    if n > caps.nc {
        return Err(EnumError::CapExceeded(n, caps.nc));
    }
    let points: Vec<i32> = (1..=n as i32).collect();
    let ground = points.clone();
    Ok(nc_partitions_of_path(&points)
        .into_iter()
        .map(|blocks| SetPartition::from_blocks(ground.clone(), &blocks).unwrap())
        .collect())
}

/// A non-crossing partition of [n] as the permutation with each block
/// traversed in increasing (clockwise) order, embedded in [±n].
pub fn nc_as_permutation(p: &SetPartition) -> SignedPermutation {
    let n = p.ground().len() as u32;
    let mut cycles = p.blocks();
    for c in &mut cycles {
        c.sort_unstable();
    }
    SignedPermutation::from_cycles(n, &cycles).unwrap()
}

/// NC₂(2n): non-crossing pairings of [2n].
pub fn nc_pairings(m: usize, caps: &EnumCaps) -> Result<Vec<Pairing>, EnumError> {
    if m % 2 != 0 {
        return Err(EnumError::OddSize(m));
    }
    if m > caps.pairings {
        return Err(EnumError::CapExceeded(m, caps.pairings));
    }
    let points: Vec<i32> = (1..=m as i32).collect();
    Ok(nc_pairings_of_path(&points)
        .into_iter()
        .map(|pairs| {
            let pp: Vec<(u32, u32)> = pairs.iter().map(|&(a, b)| (a as u32, b as u32)).collect();
            Pairing::from_pairs(m, &pp).unwrap()
        })
        .collect())
}

// ---------------------------------------------------------------------------
// the δ-symmetric annular family S_NC^δ(n, −n)
// ---------------------------------------------------------------------------

/// Membership test: (i) pδ is a pairing, (ii) p connects the two cycles of
/// γ̃ = γδγ⁻¹δ, (iii) #(p) + #(p⁻¹ γ̃) = 2n.
pub fn is_snc_delta(p: &SignedPermutation) -> bool {
    let n = p.n();
    if n == 0 {
        return false;
    }
    let pd = p.compose(&delta(n)).unwrap();
    for k in (1..=n as i32).chain((1..=n as i32).map(|k| -k)) {
        let image = pd.apply(k);
        if image == k || pd.apply(image) != k {
            return false;
        }
    }
    is_snc_rev(p)
}

/// Membership in S_NC(n,−n): connects the two cycles of γ̃ and
/// #(p) + #(p⁻¹γ̃) = 2n.
pub fn is_snc_rev(p: &SignedPermutation) -> bool {
    let n = p.n();
    if !connects_both_signs(p) {
        return false;
    }
    let gt = gamma_tilde(n);
    let count = p.cycle_count() + p.inverse().compose(&gt).unwrap().cycle_count();
    count == 2 * n as usize
}

fn connects_both_signs(p: &SignedPermutation) -> bool {
    !through_cycles(p).is_empty()
}

/// Cycles of p meeting both [n] and [−n].
pub fn through_cycles(p: &SignedPermutation) -> Vec<Vec<i32>> {
    p.cycles()
        .into_iter()
        .filter(|c| c.iter().any(|&k| k > 0) && c.iter().any(|&k| k < 0))
        .collect()
}

fn mirror_cycle(c: &[i32]) -> Vec<i32> {
    c.iter().rev().map(|&k| -k).collect()
}

/// Full enumeration of S_NC^δ(n,−n) by half-structures on [n].
pub fn snc_delta(n: usize, caps: &EnumCaps) -> Result<Vec<SignedPermutation>, EnumError> {
    if n > caps.snc_delta {
        return Err(EnumError::CapExceeded(n, caps.snc_delta));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let nn = n as u32;
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let open: Vec<i32> = (1..=n as i32).filter(|&k| mask & (1 << (k - 1)) != 0).collect();
        let u = open.len();
        if u < 2 {
            continue;
        }
        // gaps between cyclically consecutive open points; closed blocks live
        // in a single gap, so each gap is partitioned independently
        let mut gap_options: Vec<Vec<Vec<Vec<i32>>>> = Vec::with_capacity(u);
        for idx in 0..u {
            let from = open[idx];
            let to = open[(idx + 1) % u];
            let mut gap: Vec<i32> = Vec::new();
            if idx + 1 < u {
                gap.extend(from + 1..to);
            } else {
                gap.extend(from + 1..=n as i32);
                gap.extend(1..to);
            }
            gap_options.push(nc_partitions_of_path(&gap));
        }
        for l in 1..=u / 2 {
            let block_count = 2 * l;
            // every size-2l subset of the u cyclic positions is a cut set
            for cuts in subsets_of_size(u, block_count) {
                let runs = runs_from_cuts(&open, &cuts);
                let mut through: Vec<Vec<i32>> = Vec::with_capacity(block_count);
                for i in 0..block_count {
                    let mut cycle = runs[i].clone();
                    cycle.extend(mirror_cycle(&runs[(i + l) % block_count]));
                    through.push(cycle);
                }
                // combine every choice of per-gap closed partitions
                let mut combos: Vec<Vec<Vec<i32>>> = vec![Vec::new()];
                for opts in &gap_options {
                    combos = cartesian_extend(combos, opts.clone());
                }
                for closed in combos {
                    let mut cycles = through.clone();
                    for block in &closed {
                        cycles.push(block.clone());
                        cycles.push(mirror_cycle(block));
                    }
                    out.push(SignedPermutation::from_cycles(nn, &cycles)?);
                }
            }
        }
    }
    out.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]), "duplicate element emitted");
    Ok(out)
}

fn subsets_of_size(u: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(u: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let need = k - current.len();
        for i in start..=u.saturating_sub(need) {
            current.push(i);
            rec(u, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(u, k, 0, &mut current, &mut out);
    out
}

/// Splits the cyclic sequence `open` into runs starting at each cut position.
fn runs_from_cuts(open: &[i32], cuts: &[usize]) -> Vec<Vec<i32>> {
    let u = open.len();
    let k = cuts.len();
    let mut runs = Vec::with_capacity(k);
    for i in 0..k {
        let start = cuts[i];
        let end = cuts[(i + 1) % k];
        let len = if i + 1 < k { end - start } else { u - start + end };
        let mut run = Vec::with_capacity(len);
        for step in 0..len {
            run.push(open[(start + step) % u]);
        }
        runs.push(run);
    }
    runs
}

/// Full enumeration of S_NC(n,−n) (no δ-symmetry) by filtering S_{±n}.
/// Exponential in n; guarded by a small cap.
pub fn snc_rev(n: usize, caps: &EnumCaps) -> Result<Vec<SignedPermutation>, EnumError> {
    if n > caps.snc_rev {
        return Err(EnumError::CapExceeded(n, caps.snc_rev));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let points: Vec<i32> = (1..=n as i32).chain((1..=n as i32).map(|k| -k)).collect();
    let mut out = Vec::new();
    permute_filter(&points, &mut |images| {
        let p = SignedPermutation::from_images(n as u32, images.to_vec()).unwrap();
        if is_snc_rev(&p) {
            out.push(p);
        }
    });
    out.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
    Ok(out)
}

fn permute_filter(values: &[i32], f: &mut impl FnMut(&[i32])) {
    let mut vals = values.to_vec();
    let m = vals.len();
    // Heap's algorithm
    let mut c = vec![0usize; m];
    f(&vals);
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                vals.swap(0, i);
            } else {
                vals.swap(c[i], i);
            }
            f(&vals);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// subleading pairings of [2n]
// ---------------------------------------------------------------------------

/// Constructive stream of every π ∈ 𝒫₂(2n) with
/// #(ω ∨ π) + #(ω ∨ γ⁻¹πγ) = n: choose the spoke support J (|J| = 4t, its
/// sorted points alternating in parity), pair J's i-th point with its
/// (i+2t)-th, and fill every cyclic gap of [2n]∖J with a non-crossing
/// pairing.
pub fn subleading_pairings(n: usize) -> Vec<Pairing> {
    let m = 2 * n;
    let mut out = Vec::new();
    for mask in 0u64..(1 << m) {
        let size = mask.count_ones() as usize;
        if size < 4 || size % 4 != 0 {
            continue;
        }
        out.extend(subleading_for_support(n, mask));
    }
    out
}

/// The subleading pairings with a given spoke support (bitmask over [2n]).
pub fn subleading_for_support(n: usize, mask: u64) -> Vec<Pairing> {
    let m = 2 * n;
    let spokes: Vec<u32> = (1..=m as u32).filter(|&k| mask & (1 << (k - 1)) != 0).collect();
    let size = spokes.len();
    if size < 4 || size % 4 != 0 {
        return Vec::new();
    }
    // parity must alternate along the sorted spoke points
    for w in spokes.windows(2) {
        if (w[1] - w[0]) % 2 == 0 {
            return Vec::new();
        }
    }
    let half = size / 2;
    let spoke_pairs: Vec<(u32, u32)> = (0..half).map(|i| (spokes[i], spokes[i + half])).collect();
    // cyclic gaps between consecutive spoke points
    let mut gap_lists: Vec<Vec<Vec<(i32, i32)>>> = Vec::with_capacity(size);
    for i in 0..size {
        let from = spokes[i];
        let to = spokes[(i + 1) % size];
        let mut gap: Vec<i32> = Vec::new();
        if i + 1 < size {
            gap.extend((from + 1..to).map(|k| k as i32));
        } else {
            gap.extend((from + 1..=m as u32).map(|k| k as i32));
            gap.extend((1..to).map(|k| k as i32));
        }
        gap_lists.push(nc_pairings_of_path(&gap));
    }
    let mut combos: Vec<Vec<(i32, i32)>> = vec![Vec::new()];
    for opts in &gap_lists {
        let mut next = Vec::with_capacity(combos.len() * opts.len());
        for base in &combos {
            for opt in opts {
                let mut joined = base.clone();
                joined.extend(opt.iter().copied());
                next.push(joined);
            }
        }
        combos = next;
    }
    combos
        .into_iter()
        .map(|gap_pairs| {
            let mut pairs: Vec<(u32, u32)> = spoke_pairs.clone();
            pairs.extend(gap_pairs.iter().map(|&(a, b)| (a as u32, b as u32)));
            Pairing::from_pairs(m, &pairs).unwrap()
        })
        .collect()
}

/// π ∈ 𝒫₂(2n) contributes to the subleading order iff
/// #(ω ∨ π) + #(ω ∨ γ⁻¹πγ) = n.
pub fn is_subleading(pi: &Pairing) -> bool {
    let m = pi.size();
    let n = m / 2;
    weight_pair(pi).0 + weight_pair(pi).1 == n && m == 2 * n
}

/// (#(ω ∨ π), #(ω ∨ γ⁻¹πγ)) for a pairing of [2n].
pub fn weight_pair(pi: &Pairing) -> (usize, usize) {
    let m = pi.size() as u32;
    let omega_pairs: Vec<(u32, u32)> = (1..=m / 2).map(|k| (2 * k - 1, 2 * k)).collect();
    let om = Pairing::from_pairs(m as usize, &omega_pairs).unwrap();
    let bar = pi.relabel(|k| if k == 1 { m } else { k - 1 }); // γ⁻¹ π γ
    (om.join_block_count(pi), om.join_block_count(&bar))
}

// ---------------------------------------------------------------------------
// tripartite decomposition
// ---------------------------------------------------------------------------

/// Which of the three disjoint classes an element of S_NC^δ(n,−n) falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriClass {
    I,
    II,
    III,
}

/// The split data for the three bijections.
///
/// - `I`: k = −π⁻¹(1) ∈ {2,…,n} and a non-crossing partition of [n−1];
/// - `II`: π⁻¹(1) = j with [1,j] missing the through cycles; data is
///   NC(j−1) × S_NC^δ(n−j, −(n−j));
/// - `III`: π⁻¹(1) = j with [1,j] meeting a through cycle; data is
///   S_NC^δ(j−1, −(j−1)) × NC(n−j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TData {
    I { k: u32, sigma: SetPartition },
    II { pi1: SetPartition, pi2: SignedPermutation },
    III { pi1: SignedPermutation, pi2: SetPartition },
}

/// Classifies an element of S_NC^δ(n,−n). Exactly one class applies.
pub fn classify_tripartite(p: &SignedPermutation) -> Result<TriClass, EnumError> {
    if !is_snc_delta(p) {
        return Err(EnumError::NotInFamily("classify needs an S_NC^δ element".into()));
    }
    let j = p.inverse().apply(1);
    if j < 0 {
        return Ok(TriClass::I);
    }
    let through = through_cycles(p);
    let meets = through
        .iter()
        .any(|c| c.iter().any(|&k| k >= 1 && k <= j));
    Ok(if meets { TriClass::III } else { TriClass::II })
}

fn remove_from_cycle(cycles: &mut Vec<Vec<i32>>, x: i32) {
    for c in cycles.iter_mut() {
        if let Some(pos) = c.iter().position(|&k| k == x) {
            c.remove(pos);
            if c.is_empty() {
                cycles.retain(|cc| !cc.is_empty());
            }
            return;
        }
    }
    panic!("{x} not found in any cycle");
}

/// Splits π into its class and T-data; `assemble_from_t` inverts it.
pub fn split_to_t(p: &SignedPermutation) -> Result<TData, EnumError> {
    let n = p.n() as i32;
    match classify_tripartite(p)? {
        TriClass::I => {
            let k = -p.inverse().apply(1);
            // cycles inside the cut-open cycle (1,…,k−1,−n,…,−k)
            let support: Vec<i32> = (1..k).chain((k..=n).map(|v| -v)).collect();
            let support_set: HashSet<i32> = support.iter().copied().collect();
            let mut cycles: Vec<Vec<i32>> = p
                .cycles()
                .into_iter()
                .filter(|c| support_set.contains(&c[0]))
                .collect();
            debug_assert!(cycles.iter().flatten().all(|k| support_set.contains(k)));
            remove_from_cycle(&mut cycles, -k);
            // relabel back to [n−1]: j ↦ j for j < k, −(n+k−j) ↦ j
            let blocks: Vec<Vec<i32>> = cycles
                .iter()
                .map(|c| c.iter().map(|&v| if v > 0 { v } else { n + k + v }).collect())
                .collect();
            let ground: Vec<i32> = (1..n).collect();
            let sigma = SetPartition::from_blocks(ground, &blocks)
                .map_err(|e| EnumError::NotInFamily(format!("T_I residue not a partition: {e}")))?;
            Ok(TData::I { k: k as u32, sigma })
        }
        TriClass::II => {
            let j = p.inverse().apply(1);
            let mut inner: Vec<Vec<i32>> = p
                .cycles()
                .into_iter()
                .filter(|c| c.iter().any(|&v| v >= 1 && v <= j))
                .collect();
            debug_assert!(inner.iter().flatten().all(|&v| v >= 1 && v <= j));
            if j > 1 {
                remove_from_cycle(&mut inner, j);
            } else {
                inner.clear(); // π fixes 1; the residue partition is empty
            }
            let ground: Vec<i32> = (1..j).collect();
            let pi1 = SetPartition::from_blocks(ground, &inner)
                .map_err(|e| EnumError::NotInFamily(format!("T_II residue not a partition: {e}")))?;
            let outer: Vec<Vec<i32>> = p
                .cycles()
                .into_iter()
                .filter(|c| c.iter().any(|&v| v.abs() > j))
                .map(|c| c.iter().map(|&v| if v > 0 { v - j } else { v + j }).collect())
                .collect();
            let pi2 = SignedPermutation::from_cycles((n - j) as u32, &outer)?;
            if !is_snc_delta(&pi2) {
                return Err(EnumError::NotInFamily("T_II residue not in S_NC^δ".into()));
            }
            Ok(TData::II { pi1, pi2 })
        }
        TriClass::III => {
            let j = p.inverse().apply(1);
            let mut inner: Vec<Vec<i32>> = p
                .cycles()
                .into_iter()
                .filter(|c| c.iter().any(|&v| v.abs() <= j))
                .collect();
            debug_assert!(inner.iter().flatten().all(|&v| v.abs() <= j));
            remove_from_cycle(&mut inner, j);
            remove_from_cycle(&mut inner, -j);
            let pi1 = SignedPermutation::from_cycles((j - 1) as u32, &inner)?;
            if !is_snc_delta(&pi1) {
                return Err(EnumError::NotInFamily("T_III residue not in S_NC^δ".into()));
            }
            let outer: Vec<Vec<i32>> = p
                .cycles()
                .into_iter()
                .filter(|c| c.iter().all(|&v| v > j))
                .map(|c| c.iter().map(|&v| v - j).collect())
                .collect();
            let ground: Vec<i32> = (1..=(n - j)).collect();
            let pi2 = SetPartition::from_blocks(ground, &outer)
                .map_err(|e| EnumError::NotInFamily(format!("T_III residue not a partition: {e}")))?;
            Ok(TData::III { pi1, pi2 })
        }
    }
}

/// Orders the blocks of a non-crossing partition along a given cyclic order
/// and returns them as cycles.
fn blocks_as_cycles_along(order: &[i32], blocks: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let pos: std::collections::HashMap<i32, usize> =
        order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    blocks
        .iter()
        .map(|b| {
            let mut bb = b.clone();
            bb.sort_by_key(|v| pos[v]);
            bb
        })
        .collect()
}

/// Rebuilds π from its T-data. `n` is the ambient size of the result.
pub fn assemble_from_t(data: &TData, n: u32) -> Result<SignedPermutation, EnumError> {
    let ni = n as i32;
    match data {
        TData::I { k, sigma } => {
            let k = *k as i32;
            if k < 2 || k > ni {
                return Err(EnumError::MalformedTData(format!("T_I needs 2 ≤ k ≤ n, got {k}")));
            }
            if sigma.ground().len() + 1 != n as usize {
                return Err(EnumError::MalformedTData("T_I partition must be on [n−1]".into()));
            }
            // relabel [n−1] onto {1,…,k−1} ∪ {−n,…,−(k+1)}
            let relabel = |j: i32| if j < k { j } else { -(ni + k - j) };
            let mut blocks: Vec<Vec<i32>> = sigma
                .blocks()
                .iter()
                .map(|b| b.iter().map(|&j| relabel(j)).collect())
                .collect();
            match blocks.iter_mut().find(|b| b.contains(&1)) {
                Some(b) => b.push(-k),
                None => blocks.push(vec![-k]),
            }
            let order: Vec<i32> = (1..k).chain((k..=ni).rev().map(|v| -v)).collect();
            let mut cycles = blocks_as_cycles_along(&order, &blocks);
            let mirrored: Vec<Vec<i32>> = cycles.iter().map(|c| mirror_cycle(c)).collect();
            cycles.extend(mirrored);
            let p = SignedPermutation::from_cycles(n, &cycles)?;
            if !is_snc_delta(&p) {
                return Err(EnumError::MalformedTData("T_I assembly left the family".into()));
            }
            Ok(p)
        }
        TData::II { pi1, pi2 } => {
            let j = pi1.ground().len() as i32 + 1;
            let inner_n = pi2.n() as i32;
            if j + inner_n != ni {
                return Err(EnumError::MalformedTData("T_II sizes do not add up".into()));
            }
            if j > ni - 2 {
                return Err(EnumError::MalformedTData(format!(
                    "T_II needs j ≤ n−2, got j = {j}"
                )));
            }
            let mut blocks = pi1.blocks();
            match blocks.iter_mut().find(|b| b.contains(&1)) {
                Some(b) => b.push(j),
                None => blocks.push(vec![j]),
            }
            let order: Vec<i32> = (1..=j).collect();
            let mut cycles = blocks_as_cycles_along(&order, &blocks);
            let mirrored: Vec<Vec<i32>> = cycles.iter().map(|c| mirror_cycle(c)).collect();
            cycles.extend(mirrored);
            for c in pi2.cycles() {
                cycles.push(c.iter().map(|&v| if v > 0 { v + j } else { v - j }).collect());
            }
            let p = SignedPermutation::from_cycles(n, &cycles)?;
            if !is_snc_delta(&p) {
                return Err(EnumError::MalformedTData("T_II assembly left the family".into()));
            }
            Ok(p)
        }
        TData::III { pi1, pi2 } => {
            let j = pi1.n() as i32 + 1;
            if j < 3 {
                return Err(EnumError::MalformedTData(format!("T_III needs j ≥ 3, got {j}")));
            }
            if j + pi2.ground().len() as i32 != ni {
                return Err(EnumError::MalformedTData("T_III sizes do not add up".into()));
            }
            let mut cycles = pi1.cycles();
            // insert j right before 1 and −j right after −1
            {
                let c = cycles.iter_mut().find(|c| c.contains(&1)).unwrap();
                let pos = c.iter().position(|&v| v == 1).unwrap();
                c.insert(pos, j);
            }
            {
                let c = cycles.iter_mut().find(|c| c.contains(&-1)).unwrap();
                let pos = c.iter().position(|&v| v == -1).unwrap();
                c.insert(pos + 1, -j);
            }
            let mut outer_blocks = pi2.blocks();
            for b in &mut outer_blocks {
                b.sort_unstable();
                for v in b.iter_mut() {
                    *v += j;
                }
            }
            for b in &outer_blocks {
                cycles.push(b.clone());
                cycles.push(mirror_cycle(b));
            }
            let p = SignedPermutation::from_cycles(n, &cycles)?;
            if !is_snc_delta(&p) {
                return Err(EnumError::MalformedTData("T_III assembly left the family".into()));
            }
            Ok(p)
        }
    }
}

// ---------------------------------------------------------------------------
// brute-force reference enumerations (test oracles and verification)
// ---------------------------------------------------------------------------

pub mod brute {
    //! Slow reference enumerations by exhaustive filtering. These are the
    //! independent oracles the fast constructions are tested against.

    use super::*;
    use crate::perm::epsilon;

    /// S_NC^δ(n,−n) by filtering σ = Pδ over all pairings P of [±n].
    pub fn snc_delta_filter(n: usize) -> Vec<SignedPermutation> {
        let nn = n as u32;
        let m = 2 * n;
        let d = delta(nn);
        let to_point = |i: u32| -> i32 {
            if (i as usize) < n {
                (i + 1) as i32
            } else {
                -((i as usize - n + 1) as i32)
            }
        };
        let mut out = Vec::new();
        for pairing in PairingIter::new(m) {
            // P as a permutation of [±n]
            let mut images = vec![0i32; m];
            for (a, b) in pairing.pairs() {
                let (pa, pb) = (to_point(a - 1), to_point(b - 1));
                images[slot_of(pa, nn)] = pb;
                images[slot_of(pb, nn)] = pa;
            }
            let pperm = SignedPermutation::from_images(nn, images).unwrap();
            let sigma = pperm.compose(&d).unwrap();
            if is_snc_delta(&sigma) {
                out.push(sigma);
            }
        }
        out.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        out.dedup();
        out
    }

    fn slot_of(k: i32, n: u32) -> usize {
        if k > 0 {
            (k - 1) as usize
        } else {
            (n as usize) + ((-k) as usize) - 1
        }
    }

    /// NC₂^δ(2n,−2n): δ-symmetric, diameter-free pairings ρ of [±2n] that
    /// connect the two circles and are annular non-crossing w.r.t. γ̃.
    pub fn nc2_delta_annular(n: usize) -> Vec<SignedPermutation> {
        let m = 2 * n as u32; // points are [±2n]
        let mut partner: Vec<i32> = vec![0; 4 * n + 1]; // index by point offset
        let mut out = Vec::new();
        let points: Vec<i32> = (1..=m as i32).chain((1..=m as i32).map(|k| -k)).collect();
        fn idx(k: i32, m: u32) -> usize {
            if k > 0 {
                (k - 1) as usize
            } else {
                (m as usize) + ((-k) as usize) - 1
            }
        }
        fn rec(
            points: &[i32],
            m: u32,
            partner: &mut Vec<i32>,
            out: &mut Vec<SignedPermutation>,
        ) {
            let free = points.iter().copied().find(|&k| partner[idx(k, m)] == 0);
            let a = match free {
                None => {
                    let images: Vec<i32> = points.iter().map(|&k| partner[idx(k, m)]).collect();
                    let rho = SignedPermutation::from_images(m, images).unwrap();
                    if super::is_nc2_delta_annular_perm(&rho) {
                        out.push(rho);
                    }
                    return;
                }
                Some(a) => a,
            };
            for &b in points {
                if b == a || b == -a || partner[idx(b, m)] != 0 {
                    continue;
                }
                // mirror pair is forced by δ-symmetry
                if partner[idx(-a, m)] != 0 || partner[idx(-b, m)] != 0 {
                    continue;
                }
                let self_mirrored = (a == -a) || (b == -a);
                debug_assert!(!self_mirrored);
                partner[idx(a, m)] = b;
                partner[idx(b, m)] = a;
                let mirror_needed = !(a == -b);
                if mirror_needed {
                    partner[idx(-a, m)] = -b;
                    partner[idx(-b, m)] = -a;
                }
                rec(points, m, partner, out);
                partner[idx(a, m)] = 0;
                partner[idx(b, m)] = 0;
                if mirror_needed {
                    partner[idx(-a, m)] = 0;
                    partner[idx(-b, m)] = 0;
                }
            }
        }
        rec(&points, m, &mut partner, &mut out);
        out.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        out.dedup();
        out
    }

    /// Subleading pairings of [2n] by filtering all of 𝒫₂(2n).
    pub fn subleading_filter(n: usize) -> Vec<Pairing> {
        PairingIter::new(2 * n).filter(is_subleading).collect()
    }

    /// The pairings π of [2n] with ε π δ π ε ∈ NC₂^δ(2n,−2n).
    pub fn annular_source_filter(n: usize) -> Vec<Pairing> {
        let m = 2 * n as u32;
        let e = epsilon(m);
        let d = delta(m);
        PairingIter::new(2 * n)
            .filter(|pi| {
                let pp = pi.as_signed_permutation();
                let rho = SignedPermutation::compose_chain(&[&e, &pp, &d, &pp, &e]).unwrap();
                is_nc2_delta_annular_perm(&rho)
            })
            .collect()
    }
}

/// Membership test for NC₂^δ(2n,−2n), for ρ given as a permutation of
/// [±2n]: ρ is a fixed-point-free involution, commutes with δ, has no pair
/// {k,−k}, connects the two circles, and #(ργ̃) = 2n.
pub fn is_nc2_delta_annular_perm(rho: &SignedPermutation) -> bool {
    let m = rho.n(); // ambient is [±m] with m = 2n
    if m % 2 != 0 {
        return false;
    }
    let n = m / 2;
    let points: Vec<i32> = (1..=m as i32).chain((1..=m as i32).map(|k| -k)).collect();
    for &k in &points {
        let image = rho.apply(k);
        if image == k || image == -k || rho.apply(image) != k {
            return false;
        }
    }
    let d = delta(m);
    if rho.compose(&d).unwrap() != d.compose(rho).unwrap() {
        return false;
    }
    if !connects_both_signs(rho) {
        return false;
    }
    let gt = gamma_tilde(m);
    rho.compose(&gt).unwrap().cycle_count() == 2 * n as usize
}
