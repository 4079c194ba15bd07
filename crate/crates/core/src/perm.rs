//! Permutations of the signed ground set [±n] = {±1, ±2, …, ±n}.
//!
//! The whole crate works with a fixed family of permutations on [±n]:
//!
//! - `gamma(n)`: the long cycle (1, 2, …, n), acting trivially on negatives,
//! - `delta(n)`: k ↦ −k,
//! - `epsilon(n)`: k ↦ k for |k| odd, k ↦ −k for |k| even,
//! - `omega(n)` (n even): (1,2)(3,4)⋯(n−1,n), trivial on negatives,
//! - `omega_tilde(n) = ω δ ω δ` and `gamma_tilde(n) = γ δ γ⁻¹ δ`.
//!
//! Composition is function composition: `compose(p, q)` maps k to p(q(k)),
//! i.e. q acts first. Every identity in this crate is stated under that
//! convention; see `docs/conventions.md`.
//!
//! Points are ordered 1 < 2 < … < n < −1 < −2 < … < −n. Cycles are kept in
//! canonical form: each cycle starts at its minimal point, cycles are sorted
//! by their leaders. This makes permutations hashable and comparable, so
//! enumeration streams can be deduplicated and emitted in a stable order.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors from permutation construction and arithmetic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("ambient size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("index {0} out of range for ambient n = {1}")]
    IndexOutOfRange(i32, u32),
    #[error("images do not form a bijection")]
    NotBijective,
    #[error("subset is not invariant: {0} maps outside")]
    NotInvariant(i32),
    #[error("point {0} is not in the ground set")]
    NotInGround(i32),
    #[error("cycle notation parse error: {0}")]
    Parse(String),
}

/// A nonzero signed index k with 1 ≤ |k| ≤ n for the ambient n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedIndex(i32);

impl SignedIndex {
    pub fn new(value: i32, n: u32) -> Result<Self, PermError> {
        if value == 0 || value.unsigned_abs() > n {
            return Err(PermError::IndexOutOfRange(value, n));
        }
        Ok(SignedIndex(value))
    }

    pub fn get(self) -> i32 {
        self.0
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Rank of a signed point under the order 1 < 2 < … < n < −1 < … < −n.
#[inline]
pub(crate) fn signed_rank(k: i32) -> (u8, u32) {
    if k > 0 {
        (0, k as u32)
    } else {
        (1, (-k) as u32)
    }
}

/// A permutation of [±n], stored as an image table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    n: u32,
    // slot k-1 holds the image of k; slot n + j - 1 holds the image of -j
    images: Vec<i32>,
}

#[inline]
fn slot(k: i32, n: u32) -> usize {
    debug_assert!(k != 0 && k.unsigned_abs() <= n);
    if k > 0 {
        (k - 1) as usize
    } else {
        (n as usize) + ((-k) as usize) - 1
    }
}

#[inline]
fn unslot(s: usize, n: u32) -> i32 {
    if s < n as usize {
        (s + 1) as i32
    } else {
        -((s - n as usize + 1) as i32)
    }
}

impl SignedPermutation {
    /// The identity on [±n].
    pub fn identity(n: u32) -> Self {
        let images = (0..2 * n as usize).map(|s| unslot(s, n)).collect();
        SignedPermutation { n, images }
    }

    /// Builds a permutation from a full image table indexed in slot order
    /// (images of 1, …, n, −1, …, −n).
    pub fn from_images(n: u32, images: Vec<i32>) -> Result<Self, PermError> {
        if images.len() != 2 * n as usize {
            return Err(PermError::SizeMismatch(images.len(), 2 * n as usize));
        }
        let mut seen = vec![false; 2 * n as usize];
        for &v in &images {
            if v == 0 || v.unsigned_abs() > n {
                return Err(PermError::IndexOutOfRange(v, n));
            }
            let s = slot(v, n);
            if seen[s] {
                return Err(PermError::NotBijective);
            }
            seen[s] = true;
        }
        Ok(SignedPermutation { n, images })
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(n: u32, cycles: &[Vec<i32>]) -> Result<Self, PermError> {
        let mut p = Self::identity(n);
        let mut touched = vec![false; 2 * n as usize];
        for cycle in cycles {
            for &k in cycle {
                if k == 0 || k.unsigned_abs() > n {
                    return Err(PermError::IndexOutOfRange(k, n));
                }
                let s = slot(k, n);
                if touched[s] {
                    return Err(PermError::NotBijective);
                }
                touched[s] = true;
            }
            for (i, &k) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                p.images[slot(k, n)] = next;
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Ambient size |[±n]| = 2n.
    pub fn ambient_size(&self) -> usize {
        2 * self.n as usize
    }

    #[inline]
    pub fn apply(&self, k: i32) -> i32 {
        self.images[slot(k, self.n)]
    }

    pub fn apply_index(&self, k: SignedIndex) -> Result<SignedIndex, PermError> {
        if k.get().unsigned_abs() > self.n {
            return Err(PermError::IndexOutOfRange(k.get(), self.n));
        }
        SignedIndex::new(self.apply(k.get()), self.n)
    }

    /// (p ∘ q)(k) = p(q(k)); q acts first.
    pub fn compose(&self, q: &SignedPermutation) -> Result<SignedPermutation, PermError> {
        if self.n != q.n {
            return Err(PermError::SizeMismatch(self.n as usize, q.n as usize));
        }
        let images = q.images.iter().map(|&v| self.apply(v)).collect();
        Ok(SignedPermutation { n: self.n, images })
    }

    /// Composes a chain right-to-left: `compose_chain(&[a, b, c])` is a ∘ b ∘ c.
    pub fn compose_chain(factors: &[&SignedPermutation]) -> Result<SignedPermutation, PermError> {
        let last = factors.last().expect("empty composition chain");
        let mut acc = (*last).clone();
        for p in factors[..factors.len() - 1].iter().rev() {
            acc = p.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = vec![0; self.ambient_size()];
        for s in 0..self.ambient_size() {
            let k = unslot(s, self.n);
            images[slot(self.images[s], self.n)] = k;
        }
        SignedPermutation { n: self.n, images }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.ambient_size()).all(|s| self.images[s] == unslot(s, self.n))
    }

    /// Canonical cycle decomposition: each cycle led by its minimal point
    /// under 1 < … < n < −1 < … < −n, cycles sorted by leader. Fixed points
    /// appear as singleton cycles.
    pub fn cycles(&self) -> Vec<Vec<i32>> {
        let m = self.ambient_size();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let start = unslot(s, self.n);
            let mut cycle = Vec::new();
            let mut k = start;
            loop {
                cycle.push(k);
                seen[slot(k, self.n)] = true;
                k = self.apply(k);
                if k == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let m = self.ambient_size();
        let mut seen = vec![false; m];
        let mut count = 0;
        for s in 0..m {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut k = unslot(s, self.n);
            while !seen[slot(k, self.n)] {
                seen[slot(k, self.n)] = true;
                k = self.apply(k);
            }
        }
        count
    }

    /// Key for the deterministic stream order: cycles ranked leader-first.
    pub fn canonical_key(&self) -> Vec<Vec<(u8, u32)>> {
        self.cycles()
            .into_iter()
            .map(|c| c.into_iter().map(signed_rank).collect())
            .collect()
    }

    /// Restriction to an invariant subset, kept on its native points.
    pub fn restrict(&self, subset: &[i32]) -> Result<GroundPermutation, PermError> {
        let mut ground: Vec<i32> = subset.to_vec();
        ground.sort_by_key(|&k| signed_rank(k));
        ground.dedup();
        for &k in &ground {
            if k == 0 || k.unsigned_abs() > self.n {
                return Err(PermError::IndexOutOfRange(k, self.n));
            }
        }
        let images: Vec<i32> = ground.iter().map(|&k| self.apply(k)).collect();
        for &v in &images {
            if ground.binary_search_by_key(&signed_rank(v), |&g| signed_rank(g)).is_err() {
                return Err(PermError::NotInvariant(v));
            }
        }
        GroundPermutation::new(ground, images)
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermutation[n={}] {}", self.n, self)
    }
}

impl fmt::Display for SignedPermutation {
    /// Cycle notation with all singletons listed, e.g. "(1,2,-5)(3,4)(6)(-6)…".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (i, k) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{k}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn parse_cycle_text(s: &str) -> Result<Vec<Vec<i32>>, PermError> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(PermError::Parse(format!("expected '(' at `{rest}`")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| PermError::Parse("missing ')'".into()))?;
        let body = &rest[1..close];
        let mut cycle = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(PermError::Parse("empty entry in cycle".into()));
            }
            let v: i32 = tok
                .parse()
                .map_err(|_| PermError::Parse(format!("bad integer `{tok}`")))?;
            cycle.push(v);
        }
        cycles.push(cycle);
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl SignedPermutation {
    /// Parses cycle notation with an explicit ambient n; unlisted points are fixed.
    pub fn parse_with_n(s: &str, n: u32) -> Result<Self, PermError> {
        let cycles = parse_cycle_text(s)?;
        Self::from_cycles(n, &cycles)
    }
}

impl FromStr for SignedPermutation {
    type Err = PermError;

    /// Parses the full round-trip form: every point of [±n] must be listed,
    /// with n inferred from the largest absolute value.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let cycles = parse_cycle_text(s)?;
        let n = cycles
            .iter()
            .flatten()
            .map(|k| k.unsigned_abs())
            .max()
            .ok_or_else(|| PermError::Parse("no cycles".into()))?;
        let total: usize = cycles.iter().map(Vec::len).sum();
        if total != 2 * n as usize {
            return Err(PermError::Parse(format!(
                "expected all {} points of [±{}] to be listed, got {}",
                2 * n,
                n,
                total
            )));
        }
        Self::from_cycles(n, &cycles)
    }
}

/// A permutation of an arbitrary finite set of signed points, used for
/// restrictions (e.g. to [n] or to the frame E ⊂ [±2n]).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroundPermutation {
    ground: Vec<i32>, // sorted by signed_rank
    images: Vec<i32>,
}

impl GroundPermutation {
    pub fn new(ground: Vec<i32>, images: Vec<i32>) -> Result<Self, PermError> {
        if ground.len() != images.len() {
            return Err(PermError::SizeMismatch(ground.len(), images.len()));
        }
        if let Some(&z) = ground.iter().chain(images.iter()).find(|&&k| k == 0) {
            return Err(PermError::NotInGround(z));
        }
        let mut sorted = ground.clone();
        sorted.sort_by_key(|&k| signed_rank(k));
        if sorted != ground {
            // resort images alongside
            let mut pairs: Vec<(i32, i32)> =
                ground.iter().copied().zip(images.iter().copied()).collect();
            pairs.sort_by_key(|&(g, _)| signed_rank(g));
            let ground: Vec<i32> = pairs.iter().map(|&(g, _)| g).collect();
            let images: Vec<i32> = pairs.iter().map(|&(_, v)| v).collect();
            return Self::new(ground, images);
        }
        let mut seen = vec![false; ground.len()];
        for &v in &images {
            let pos = ground
                .binary_search_by_key(&signed_rank(v), |&g| signed_rank(g))
                .map_err(|_| PermError::NotInGround(v))?;
            if seen[pos] {
                return Err(PermError::NotBijective);
            }
            seen[pos] = true;
        }
        Ok(GroundPermutation { ground, images })
    }

    pub fn identity_on(ground: Vec<i32>) -> Result<Self, PermError> {
        let mut g = ground;
        g.sort_by_key(|&k| signed_rank(k));
        g.dedup();
        let images = g.clone();
        Self::new(g, images)
    }

    pub fn from_cycles_on(ground: Vec<i32>, cycles: &[Vec<i32>]) -> Result<Self, PermError> {
        let mut p = Self::identity_on(ground)?;
        let mut touched = vec![false; p.ground.len()];
        for cycle in cycles {
            for &k in cycle {
                let pos = p.index_of(k)?;
                if touched[pos] {
                    return Err(PermError::NotBijective);
                }
                touched[pos] = true;
            }
            for (i, &k) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                let pos = p.index_of(k)?;
                p.images[pos] = next;
            }
        }
        Ok(p)
    }

    fn index_of(&self, k: i32) -> Result<usize, PermError> {
        self.ground
            .binary_search_by_key(&signed_rank(k), |&g| signed_rank(g))
            .map_err(|_| PermError::NotInGround(k))
    }

    pub fn ground(&self) -> &[i32] {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn apply(&self, k: i32) -> i32 {
        let pos = self.index_of(k).expect("point not in ground");
        self.images[pos]
    }

    pub fn compose(&self, q: &GroundPermutation) -> Result<GroundPermutation, PermError> {
        if self.ground != q.ground {
            return Err(PermError::SizeMismatch(self.ground.len(), q.ground.len()));
        }
        let images = q.images.iter().map(|&v| self.apply(v)).collect();
        GroundPermutation::new(self.ground.clone(), images)
    }

    pub fn inverse(&self) -> GroundPermutation {
        let mut images = vec![0; self.ground.len()];
        for (pos, &v) in self.images.iter().enumerate() {
            let vpos = self.index_of(v).unwrap();
            images[vpos] = self.ground[pos];
        }
        GroundPermutation {
            ground: self.ground.clone(),
            images,
        }
    }

    pub fn cycles(&self) -> Vec<Vec<i32>> {
        let m = self.ground.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start_pos in 0..m {
            if seen[start_pos] {
                continue;
            }
            let start = self.ground[start_pos];
            let mut cycle = Vec::new();
            let mut k = start;
            loop {
                cycle.push(k);
                seen[self.index_of(k).unwrap()] = true;
                k = self.apply(k);
                if k == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Relabels through a bijection of ground sets.
    pub fn relabel(&self, map: impl Fn(i32) -> i32) -> Result<GroundPermutation, PermError> {
        let ground: Vec<i32> = self.ground.iter().map(|&k| map(k)).collect();
        let images: Vec<i32> = self.images.iter().map(|&k| map(k)).collect();
        GroundPermutation::new(ground, images)
    }

    pub fn restrict(&self, subset: &[i32]) -> Result<GroundPermutation, PermError> {
        let mut sub: Vec<i32> = subset.to_vec();
        sub.sort_by_key(|&k| signed_rank(k));
        sub.dedup();
        let images: Vec<i32> = sub.iter().map(|&k| self.apply(k)).collect();
        for &v in &images {
            if sub.binary_search_by_key(&signed_rank(v), |&g| signed_rank(g)).is_err() {
                return Err(PermError::NotInvariant(v));
            }
        }
        GroundPermutation::new(sub, images)
    }
}

/// Result of the genus computation for a pair of permutations.
///
/// For a transitive pair, #(p) + #(p⁻¹s) + #(s) = m + 2(1 − g) defines a
/// nonnegative integer genus g. For a non-transitive pair only the flag is
/// meaningful and `genus` is `None`; callers that need transitivity must
/// check the flag rather than rely on a convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusDefect {
    pub transitive: bool,
    pub genus: Option<u32>,
}

impl GenusDefect {
    pub fn is_planar(&self) -> bool {
        self.transitive && self.genus == Some(0)
    }
}

fn genus_from_counts(cp: usize, cps: usize, cs: usize, m: usize, transitive: bool) -> GenusDefect {
    if !transitive {
        return GenusDefect {
            transitive: false,
            genus: None,
        };
    }
    let lhs = cp + cps + cs;
    let rhs = m + 2;
    assert!(
        rhs >= lhs && (rhs - lhs) % 2 == 0,
        "genus defect must be a nonnegative even integer for a transitive pair"
    );
    GenusDefect {
        transitive: true,
        genus: Some(((rhs - lhs) / 2) as u32),
    }
}

fn orbits_transitive(apply_p: &dyn Fn(usize) -> usize, apply_s: &dyn Fn(usize) -> usize, m: usize) -> bool {
    if m == 0 {
        return true;
    }
    // union-find over slots
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in 0..m {
        for y in [apply_p(x), apply_s(x)] {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx] = ry;
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..m).all(|x| find(&mut parent, x) == root)
}

/// Genus of the pair (p, s) on the full ambient [±n].
pub fn genus_defect(p: &SignedPermutation, s: &SignedPermutation) -> Result<GenusDefect, PermError> {
    if p.n != s.n {
        return Err(PermError::SizeMismatch(p.n as usize, s.n as usize));
    }
    let m = p.ambient_size();
    let n = p.n;
    let transitive = orbits_transitive(
        &|x| slot(p.images[x], n),
        &|x| slot(s.images[x], n),
        m,
    );
    let cps = p.inverse().compose(s)?.cycle_count();
    Ok(genus_from_counts(p.cycle_count(), cps, s.cycle_count(), m, transitive))
}

/// Genus of the pair (p, s) on a shared ground set.
pub fn genus_defect_on(p: &GroundPermutation, s: &GroundPermutation) -> Result<GenusDefect, PermError> {
    if p.ground != s.ground {
        return Err(PermError::SizeMismatch(p.ground.len(), s.ground.len()));
    }
    let m = p.ground.len();
    let transitive = orbits_transitive(
        &|x| p.index_of(p.images[x]).unwrap(),
        &|x| s.index_of(s.images[x]).unwrap(),
        m,
    );
    let cps = p.inverse().compose(s)?.cycle_count();
    Ok(genus_from_counts(p.cycle_count(), cps, s.cycle_count(), m, transitive))
}

/// Embeds a permutation of [n] into [±n], acting trivially on negatives.
/// The embedding is always explicit; nothing in the crate embeds implicitly.
pub fn embed_positive(images_of_1_to_n: &[i32], n: u32) -> Result<SignedPermutation, PermError> {
    if images_of_1_to_n.len() != n as usize {
        return Err(PermError::SizeMismatch(images_of_1_to_n.len(), n as usize));
    }
    let mut p = SignedPermutation::identity(n);
    for (i, &v) in images_of_1_to_n.iter().enumerate() {
        if v <= 0 || v as u32 > n {
            return Err(PermError::IndexOutOfRange(v, n));
        }
        p.images[i] = v;
    }
    // bijectivity on positives
    let mut seen = vec![false; n as usize];
    for &v in images_of_1_to_n {
        if seen[(v - 1) as usize] {
            return Err(PermError::NotBijective);
        }
        seen[(v - 1) as usize] = true;
    }
    Ok(p)
}

/// γ = (1, 2, …, n), trivial on negatives.
pub fn gamma(n: u32) -> SignedPermutation {
    let images: Vec<i32> = (1..=n as i32).map(|k| if k == n as i32 { 1 } else { k + 1 }).collect();
    embed_positive(&images, n).unwrap()
}

/// δ(k) = −k.
pub fn delta(n: u32) -> SignedPermutation {
    let mut p = SignedPermutation::identity(n);
    for s in 0..p.ambient_size() {
        p.images[s] = -unslot(s, n);
    }
    p
}

/// ε(k) = k for |k| odd, −k for |k| even. ε and δ commute.
pub fn epsilon(n: u32) -> SignedPermutation {
    let mut p = SignedPermutation::identity(n);
    for s in 0..p.ambient_size() {
        let k = unslot(s, n);
        p.images[s] = if k.unsigned_abs() % 2 == 1 { k } else { -k };
    }
    p
}

/// ω = (1,2)(3,4)⋯(n−1,n) for even n, trivial on negatives.
pub fn omega(n: u32) -> SignedPermutation {
    assert!(n % 2 == 0, "omega needs an even ambient");
    let images: Vec<i32> = (1..=n as i32)
        .map(|k| if k % 2 == 1 { k + 1 } else { k - 1 })
        .collect();
    embed_positive(&images, n).unwrap()
}

/// ω̃ = ω δ ω δ = (1,2)(−1,−2)(3,4)(−3,−4)⋯  (n even).
pub fn omega_tilde(n: u32) -> SignedPermutation {
    let o = omega(n);
    let d = delta(n);
    SignedPermutation::compose_chain(&[&o, &d, &o, &d]).unwrap()
}

/// γ̃ = γ δ γ⁻¹ δ = (1, 2, …, n)(−n, −(n−1), …, −1).
pub fn gamma_tilde(n: u32) -> SignedPermutation {
    let g = gamma(n);
    let d = delta(n);
    SignedPermutation::compose_chain(&[&g, &d, &g.inverse(), &d]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_is_an_involution() {
        for n in 1..=6 {
            let d = delta(n);
            assert!(d.compose(&d).unwrap().is_identity());
        }
    }

    #[test]
    fn gamma_delta_gamma_inv_delta_n3() {
        // hand expansion of γδγ⁻¹δ on [±3]: (1,2,3)(−3,−2,−1)
        let gt = gamma_tilde(3);
        let expected =
            SignedPermutation::from_cycles(3, &[vec![1, 2, 3], vec![-3, -2, -1]]).unwrap();
        assert_eq!(gt, expected);
    }

    #[test]
    fn epsilon_omega_delta_omega_epsilon_is_omega_tilde() {
        // ω̃ = ωδωδ = εωδωε on [±4]
        let n = 4;
        let (e, o, d) = (epsilon(n), omega(n), delta(n));
        let via_eps = SignedPermutation::compose_chain(&[&e, &o, &d, &o, &e]).unwrap();
        assert_eq!(via_eps, omega_tilde(n));
        let expected = SignedPermutation::from_cycles(
            n,
            &[vec![1, 2], vec![-1, -2], vec![3, 4], vec![-3, -4]],
        )
        .unwrap();
        assert_eq!(via_eps, expected);
    }

    #[test]
    fn epsilon_and_delta_commute() {
        for n in 1..=8 {
            let e = epsilon(n);
            let d = delta(n);
            assert_eq!(e.compose(&d).unwrap(), d.compose(&e).unwrap());
        }
    }

    #[test]
    fn mixed_product_identity_small_n() {
        // ε γ δ γ⁻¹ ε = γ ω γ⁻¹ δ ω δ on [±2n], n ≤ 6
        for n in 1..=6u32 {
            let m = 2 * n;
            let (e, g, d, o) = (epsilon(m), gamma(m), delta(m), omega(m));
            let lhs = SignedPermutation::compose_chain(&[&e, &g, &d, &g.inverse(), &e]).unwrap();
            let rhs =
                SignedPermutation::compose_chain(&[&g, &o, &g.inverse(), &d, &o, &d]).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cycle_count_identity_and_tilde() {
        assert_eq!(SignedPermutation::identity(3).cycle_count(), 6);
        for n in 1..=7 {
            assert_eq!(gamma_tilde(n).cycle_count(), 2);
        }
    }

    #[test]
    fn cycle_count_on_plain_ground() {
        // π = (1,2,10,7)(3,5,9)(4)(6,8) on 10 points has 4 cycles
        let ground: Vec<i32> = (1..=10).collect();
        let p = GroundPermutation::from_cycles_on(
            ground,
            &[vec![1, 2, 10, 7], vec![3, 5, 9], vec![4], vec![6, 8]],
        )
        .unwrap();
        assert_eq!(p.cycle_count(), 4);
    }

    #[test]
    fn genus_identity_vs_gamma_on_positives() {
        // on the ground [n]: #(id) + #(γ) + #(γ) = n + 2 gives g = 0
        for n in 2..=7u32 {
            let ground: Vec<i32> = (1..=n as i32).collect();
            let id = GroundPermutation::identity_on(ground.clone()).unwrap();
            let g = gamma(n).restrict(&ground).unwrap();
            let gd = genus_defect_on(&id, &g).unwrap();
            assert!(gd.transitive);
            assert_eq!(gd.genus, Some(0));
        }
    }

    #[test]
    fn genus_transposition_vs_gamma4() {
        // p = (1,3)(2)(4), s = (1,2,3,4): #(p)=3, #(p⁻¹s)=2, #(s)=1 ⇒ 6 = 4 + 2(1−g), g = 0
        let ground: Vec<i32> = (1..=4).collect();
        let p = GroundPermutation::from_cycles_on(ground.clone(), &[vec![1, 3]]).unwrap();
        let s = GroundPermutation::from_cycles_on(ground, &[vec![1, 2, 3, 4]]).unwrap();
        let ps = p.inverse().compose(&s).unwrap();
        assert_eq!(p.cycle_count(), 3);
        assert_eq!(ps.cycle_count(), 2);
        let gd = genus_defect_on(&p, &s).unwrap();
        assert_eq!(gd.genus, Some(0));
    }

    #[test]
    fn genus_crossing_pairing_vs_gamma4() {
        // p = (1,3)(2,4), s = γ₄: #(p)=2, #(p⁻¹s)=1, #(s)=1 ⇒ 4 = 4 + 2(1−g), g = 1
        let ground: Vec<i32> = (1..=4).collect();
        let p = GroundPermutation::from_cycles_on(ground.clone(), &[vec![1, 3], vec![2, 4]]).unwrap();
        let s = GroundPermutation::from_cycles_on(ground, &[vec![1, 2, 3, 4]]).unwrap();
        let gd = genus_defect_on(&p, &s).unwrap();
        assert_eq!(gd.genus, Some(1));
    }

    #[test]
    fn genus_non_transitive_reports_flag() {
        let id3 = SignedPermutation::identity(3);
        let g = gamma(3);
        // ⟨id, γ⟩ fixes every negative point of [±3]
        let gd = genus_defect(&id3, &g).unwrap();
        assert!(!gd.transitive);
        assert_eq!(gd.genus, None);
    }

    #[test]
    fn cycle_string_round_trip() {
        let text = "(1,2,-5)(3,4)(-1,5,-2)(-3,-4)(6)(-6)";
        let p: SignedPermutation = text.parse().unwrap();
        assert_eq!(p.n(), 6);
        let back: SignedPermutation = p.to_string().parse().unwrap();
        assert_eq!(p, back);
        assert_eq!(p.apply(1), 2);
        assert_eq!(p.apply(2), -5);
        assert_eq!(p.apply(-5), 1);
    }

    #[test]
    fn compose_rejects_mismatched_ambients() {
        let a = gamma(3);
        let b = gamma(4);
        assert!(matches!(a.compose(&b), Err(PermError::SizeMismatch(_, _))));
    }

    #[test]
    fn restrict_rejects_non_invariant_subset() {
        let g = gamma(4);
        assert!(matches!(
            g.restrict(&[1, 2]),
            Err(PermError::NotInvariant(_))
        ));
        let r = g.restrict(&[1, 2, 3, 4]).unwrap();
        assert_eq!(r.cycle_count(), 1);
    }
}
