//! Set partitions of finite signed ground sets, pairings, and the join lattice.
//!
//! A permutation is converted to a partition by taking its cycles as blocks.
//! Whenever a join p ∨ q mixes a permutation with a partition, the
//! permutation is converted first; see `docs/conventions.md`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::perm::{signed_rank, GroundPermutation, SignedPermutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("blocks do not partition the ground set")]
    NotAPartition,
    #[error("point {0} is not in the ground set")]
    NotInGround(i32),
    #[error("block of size {0} in a pairing (every block must have 2 elements)")]
    NotAPairing(usize),
}

/// A partition of a finite set of signed points.
///
/// Stored as a normalized block-id table over the canonically sorted ground:
/// block ids are assigned in order of first appearance, so equal partitions
/// compare equal structurally.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetPartition {
    ground: Vec<i32>,      // sorted by signed_rank
    block_id: Vec<usize>,  // normalized: first occurrences are 0, 1, 2, …
    block_count: usize,
}

fn normalize_ids(raw: &[usize]) -> (Vec<usize>, usize) {
    let mut remap: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::with_capacity(raw.len());
    for &r in raw {
        let next = remap.len();
        let id = *remap.entry(r).or_insert(next);
        out.push(id);
    }
    (out, remap.len())
}

impl SetPartition {
    /// Builds a partition from explicit blocks; they must cover the ground
    /// exactly once.
    pub fn from_blocks(ground: Vec<i32>, blocks: &[Vec<i32>]) -> Result<Self, PartitionError> {
        let mut g = ground;
        g.sort_by_key(|&k| signed_rank(k));
        g.dedup();
        let mut raw = vec![usize::MAX; g.len()];
        for (bi, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PartitionError::NotAPartition);
            }
            for &k in block {
                let pos = g
                    .binary_search_by_key(&signed_rank(k), |&x| signed_rank(x))
                    .map_err(|_| PartitionError::NotInGround(k))?;
                if raw[pos] != usize::MAX {
                    return Err(PartitionError::NotAPartition);
                }
                raw[pos] = bi;
            }
        }
        if raw.iter().any(|&r| r == usize::MAX) {
            return Err(PartitionError::NotAPartition);
        }
        let (block_id, block_count) = normalize_ids(&raw);
        Ok(SetPartition {
            ground: g,
            block_id,
            block_count,
        })
    }

    pub fn singletons(ground: Vec<i32>) -> Self {
        let mut g = ground;
        g.sort_by_key(|&k| signed_rank(k));
        g.dedup();
        let block_id: Vec<usize> = (0..g.len()).collect();
        let block_count = g.len();
        SetPartition {
            ground: g,
            block_id,
            block_count,
        }
    }

    /// The cycles of a permutation, as a partition of [±n].
    pub fn from_perm_cycles(p: &SignedPermutation) -> Self {
        let ground: Vec<i32> = {
            let n = p.n() as i32;
            (1..=n).chain((1..=n).map(|k| -k)).collect()
        };
        Self::from_blocks(ground, &p.cycles()).unwrap()
    }

    /// The cycles of a ground permutation, as a partition of its ground.
    pub fn from_ground_perm_cycles(p: &GroundPermutation) -> Self {
        Self::from_blocks(p.ground().to_vec(), &p.cycles()).unwrap()
    }

    pub fn ground(&self) -> &[i32] {
        &self.ground
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn blocks(&self) -> Vec<Vec<i32>> {
        let mut out = vec![Vec::new(); self.block_count];
        for (pos, &id) in self.block_id.iter().enumerate() {
            out[id].push(self.ground[pos]);
        }
        out
    }

    pub fn same_block(&self, a: i32, b: i32) -> bool {
        let pa = self
            .ground
            .binary_search_by_key(&signed_rank(a), |&x| signed_rank(x))
            .expect("point not in ground");
        let pb = self
            .ground
            .binary_search_by_key(&signed_rank(b), |&x| signed_rank(x))
            .expect("point not in ground");
        self.block_id[pa] == self.block_id[pb]
    }

    /// Least upper bound in the partition lattice.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition, PartitionError> {
        if self.ground != other.ground {
            return Err(PartitionError::GroundMismatch);
        }
        let m = self.ground.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for part in [self, other] {
            let mut first_of_block: HashMap<usize, usize> = HashMap::new();
            for (pos, &id) in part.block_id.iter().enumerate() {
                if let Some(&first) = first_of_block.get(&id) {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, pos));
                    if a != b {
                        parent[a] = b;
                    }
                } else {
                    first_of_block.insert(id, pos);
                }
            }
        }
        let raw: Vec<usize> = (0..m).map(|x| find(&mut parent, x)).collect();
        let (block_id, block_count) = normalize_ids(&raw);
        Ok(SetPartition {
            ground: self.ground.clone(),
            block_id,
            block_count,
        })
    }

    /// Refinement order: self ≤ other iff every block of self lies inside a
    /// block of other.
    pub fn is_refinement_of(&self, other: &SetPartition) -> Result<bool, PartitionError> {
        if self.ground != other.ground {
            return Err(PartitionError::GroundMismatch);
        }
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for pos in 0..self.ground.len() {
            let mine = self.block_id[pos];
            let theirs = other.block_id[pos];
            if let Some(&t) = seen.get(&mine) {
                if t != theirs {
                    return Ok(false);
                }
            } else {
                seen.insert(mine, theirs);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in self.blocks() {
            write!(f, "{{")?;
            for (i, k) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{k}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Kernel of a tuple: positions r ∼ s iff tuple[r] = tuple[s].
/// The ground set is 1, …, len (1-based positions).
pub fn kernel_of<T: Eq + std::hash::Hash>(tuple: &[T]) -> SetPartition {
    let ground: Vec<i32> = (1..=tuple.len() as i32).collect();
    let mut first_seen: HashMap<&T, usize> = HashMap::new();
    let mut raw = Vec::with_capacity(tuple.len());
    for v in tuple {
        let next = first_seen.len();
        raw.push(*first_seen.entry(v).or_insert(next));
    }
    let (block_id, block_count) = normalize_ids(&raw);
    SetPartition {
        ground,
        block_id,
        block_count,
    }
}

/// Extends a partition of [n] to [±n]: r ∼ s iff |r| ∼ |s|.
pub fn tilde_extend(p: &SetPartition) -> SetPartition {
    let n = p.ground().len() as i32;
    assert!(
        p.ground().iter().copied().eq(1..=n),
        "tilde_extend needs ground [n]"
    );
    let blocks: Vec<Vec<i32>> = p
        .blocks()
        .into_iter()
        .map(|b| {
            let mut bb: Vec<i32> = b.clone();
            bb.extend(b.iter().map(|&k| -k));
            bb
        })
        .collect();
    let ground: Vec<i32> = (1..=n).chain((1..=n).map(|k| -k)).collect();
    SetPartition::from_blocks(ground, &blocks).unwrap()
}

/// A pairing of the positive points [m]: a partition with all blocks of
/// size 2. `partner[i]` is the 0-based partner of point i+1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pairing {
    partner: Vec<u32>,
}

impl Pairing {
    pub fn from_partner_vec(partner: Vec<u32>) -> Result<Self, PartitionError> {
        let m = partner.len();
        if m % 2 != 0 {
            return Err(PartitionError::NotAPairing(m));
        }
        for i in 0..m {
            let j = partner[i] as usize;
            if j >= m || j == i || partner[j] as usize != i {
                return Err(PartitionError::NotAPairing(1));
            }
        }
        Ok(Pairing { partner })
    }

    pub fn from_pairs(m: usize, pairs: &[(u32, u32)]) -> Result<Self, PartitionError> {
        if pairs.len() * 2 != m {
            return Err(PartitionError::NotAPartition);
        }
        let mut partner = vec![u32::MAX; m];
        for &(a, b) in pairs {
            if a == b || a == 0 || b == 0 || a as usize > m || b as usize > m {
                return Err(PartitionError::NotAPartition);
            }
            if partner[(a - 1) as usize] != u32::MAX || partner[(b - 1) as usize] != u32::MAX {
                return Err(PartitionError::NotAPartition);
            }
            partner[(a - 1) as usize] = b - 1;
            partner[(b - 1) as usize] = a - 1;
        }
        Self::from_partner_vec(partner)
    }

    pub fn size(&self) -> usize {
        self.partner.len()
    }

    /// Partner of point k (1-based).
    pub fn partner(&self, k: u32) -> u32 {
        self.partner[(k - 1) as usize] + 1
    }

    /// The pairs (a, b) with a < b, sorted by a.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.partner.len() / 2);
        for i in 0..self.partner.len() {
            let j = self.partner[i] as usize;
            if i < j {
                out.push(((i + 1) as u32, (j + 1) as u32));
            }
        }
        out
    }

    pub fn as_set_partition(&self) -> SetPartition {
        let ground: Vec<i32> = (1..=self.partner.len() as i32).collect();
        let blocks: Vec<Vec<i32>> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| vec![a as i32, b as i32])
            .collect();
        SetPartition::from_blocks(ground, &blocks).unwrap()
    }

    /// The pairing as a fixed-point-free involution of [m] ⊂ [±m].
    pub fn as_signed_permutation(&self) -> SignedPermutation {
        let m = self.partner.len() as u32;
        let images: Vec<i32> = (0..m as usize).map(|i| (self.partner[i] + 1) as i32).collect();
        crate::perm::embed_positive(&images, m).unwrap()
    }

    /// Number of blocks of the join of two pairings of [m], via union-find.
    pub fn join_block_count(&self, other: &Pairing) -> usize {
        let m = self.partner.len();
        assert_eq!(m, other.partner.len(), "pairings on different point counts");
        let mut parent: Vec<u32> = (0..m as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for i in 0..m {
            for j in [self.partner[i], other.partner[i]] {
                let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j));
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
        let mut count = 0;
        for i in 0..m {
            if find(&mut parent, i as u32) == i as u32 {
                count += 1;
            }
        }
        count
    }

    /// Conjugate relabel p ↦ f(p) for a bijection f of [m].
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Pairing {
        let m = self.partner.len();
        let mut partner = vec![u32::MAX; m];
        for i in 0..m {
            let a = f((i + 1) as u32) - 1;
            let b = f(self.partner[i] + 1) - 1;
            partner[a as usize] = b;
        }
        Pairing::from_partner_vec(partner).unwrap()
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{gamma, omega};

    #[test]
    fn kernel_examples() {
        let k = kernel_of(&[5, 5, 7]);
        assert_eq!(k.blocks(), vec![vec![1, 2], vec![3]]);
        let constant = kernel_of(&[9, 9, 9, 9]);
        assert_eq!(constant.block_count(), 1);
        let alt = kernel_of(&[1, 2, 1, 2]);
        assert_eq!(alt.blocks(), vec![vec![1, 3], vec![2, 4]]);
    }

    #[test]
    fn tilde_extend_examples() {
        let ground: Vec<i32> = vec![1, 2];
        let p = SetPartition::from_blocks(ground.clone(), &[vec![1], vec![2]]).unwrap();
        let ext = tilde_extend(&p);
        assert!(ext.same_block(1, -1));
        assert!(ext.same_block(2, -2));
        assert!(!ext.same_block(1, 2));

        let q = SetPartition::from_blocks(ground, &[vec![1, 2]]).unwrap();
        assert_eq!(tilde_extend(&q).block_count(), 1);

        let r = SetPartition::from_blocks(vec![1, 2, 3], &[vec![1, 3], vec![2]]).unwrap();
        let ext = tilde_extend(&r);
        assert!(ext.same_block(1, -3));
        assert!(ext.same_block(2, -2));
        assert_eq!(ext.block_count(), 2);
    }

    #[test]
    fn join_is_idempotent() {
        let p = SetPartition::from_blocks(vec![1, 2, 3, 4], &[vec![1, 3], vec![2], vec![4]]).unwrap();
        assert_eq!(p.join(&p).unwrap(), p);
    }

    #[test]
    fn join_of_large_instance() {
        // π and ω on 22 points: #(ω ∨ π) = 5
        let pi = Pairing::from_pairs(
            22,
            &[
                (1, 13),
                (2, 3),
                (4, 5),
                (6, 14),
                (7, 15),
                (8, 16),
                (9, 12),
                (10, 11),
                (17, 20),
                (18, 19),
                (21, 22),
            ],
        )
        .unwrap();
        let omega_pairs: Vec<(u32, u32)> = (1..=11).map(|k| (2 * k - 1, 2 * k)).collect();
        let om = Pairing::from_pairs(22, &omega_pairs).unwrap();
        assert_eq!(om.join_block_count(&pi), 5);

        // ω̄ = γ⁻¹ωγ pairs (2k, 2k+1) cyclically: #(ω̄ ∨ π) = 6
        let om_bar_pairs: Vec<(u32, u32)> = (1..=11).map(|k| (2 * k, (2 * k) % 22 + 1)).collect();
        let om_bar = Pairing::from_pairs(22, &om_bar_pairs).unwrap();
        assert_eq!(om_bar.join_block_count(&pi), 6);
    }

    #[test]
    fn pairing_join_matches_product_cycle_count() {
        // 2·#(p ∨ q) = #(pq) for pairings on the same points
        let p = Pairing::from_pairs(6, &[(1, 4), (2, 3), (5, 6)]).unwrap();
        let q = Pairing::from_pairs(6, &[(1, 2), (3, 6), (4, 5)]).unwrap();
        let prod = p
            .as_signed_permutation()
            .compose(&q.as_signed_permutation())
            .unwrap();
        // product acts on [±6]; only the positive orbit matters here
        let pos: Vec<i32> = (1..=6).collect();
        let prod_pos = prod.restrict(&pos).unwrap();
        assert_eq!(2 * p.join_block_count(&q), prod_pos.cycle_count());
    }

    #[test]
    fn perm_to_partition_conversion() {
        let g = gamma(3);
        let p = SetPartition::from_perm_cycles(&g);
        assert_eq!(p.block_count(), 4); // {1,2,3} and three negative singletons
        let o = omega(4);
        let po = SetPartition::from_perm_cycles(&o);
        assert!(po.same_block(1, 2) && po.same_block(3, 4));
    }

    #[test]
    fn refinement_order() {
        let fine = SetPartition::singletons(vec![1, 2, 3]);
        let coarse = SetPartition::from_blocks(vec![1, 2, 3], &[vec![1, 2, 3]]).unwrap();
        assert!(fine.is_refinement_of(&coarse).unwrap());
        assert!(!coarse.is_refinement_of(&fine).unwrap());
    }
}
