//! Structure maps between pairings and permutations.
//!
//! Disc: NC₂(2n) ↔ NC(n) via σ_π = ωπ|_{E}, E = {2, 4, …, 2n}.
//!
//! Annulus: a pairing π of [2n] with ρ = επδπε ∈ NC₂^δ(2n,−2n) maps to
//! σ = ψ(ω̃ρ|_E)ψ⁻¹ ∈ S_NC^δ(n,−n), where E = {2,4,…,2n} ∪
//! {−1,−3,…,−(2n−1)} and ψ(2k) = k, ψ(−(2k−1)) = −k. The inverse runs
//! through ρ = σ_E⁻¹ ω̃ σ_E and π = δερε|_[2n]. All maps are computed on the
//! native ground sets with the ψ relabeling applied only at the boundary, so
//! the intermediate cycle-count identities can be checked directly.
//!
//! Non-member inputs are rejected eagerly with the failed condition named.

use thiserror::Error;

use crate::enumerate::{is_nc2_delta_annular_perm, is_snc_delta, nc_as_permutation};
use crate::partition::{tilde_extend, Pairing, SetPartition};
use crate::perm::{
    delta, epsilon, gamma, genus_defect_on, omega_tilde, GroundPermutation, PermError,
    SignedPermutation,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BijError {
    #[error("input rejected: {0}")]
    NotAMember(String),
    #[error("word length {0} does not match pairing on {1} points")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// The frame for the annular bijection: E, O ⊂ [±2n] and the relabeling
/// ψ: E → [±n].
#[derive(Debug, Clone)]
pub struct EvenOddFrame {
    pub n: u32,
}

impl EvenOddFrame {
    pub fn new(n: u32) -> Self {
        EvenOddFrame { n }
    }

    /// E = {2, 4, …, 2n} ∪ {−1, −3, …, −(2n−1)}.
    pub fn e_points(&self) -> Vec<i32> {
        let n = self.n as i32;
        (1..=n)
            .map(|k| 2 * k)
            .chain((1..=n).map(|k| -(2 * k - 1)))
            .collect()
    }

    /// O = {1, 3, …, 2n−1} ∪ {−2, −4, …, −2n}.
    pub fn o_points(&self) -> Vec<i32> {
        let n = self.n as i32;
        (1..=n)
            .map(|k| 2 * k - 1)
            .chain((1..=n).map(|k| -(2 * k)))
            .collect()
    }

    /// ψ(2k) = k, ψ(−(2k−1)) = −k.
    pub fn psi(&self, v: i32) -> i32 {
        debug_assert!(self.is_in_e(v), "ψ applied outside E: {v}");
        if v > 0 {
            v / 2
        } else {
            (v - 1) / 2
        }
    }

    /// ψ⁻¹(k) = 2k, ψ⁻¹(−k) = −(2k−1).
    pub fn psi_inv(&self, k: i32) -> i32 {
        if k > 0 {
            2 * k
        } else {
            2 * k + 1
        }
    }

    pub fn is_in_e(&self, v: i32) -> bool {
        let a = v.unsigned_abs();
        a >= 1 && a <= 2 * self.n && ((v > 0) == (v % 2 == 0))
    }

    /// γ_E = γ̃²|_E = (2, 4, …, 2n)(−(2n−1), …, −3, −1).
    pub fn gamma_e(&self) -> GroundPermutation {
        let n = self.n as i32;
        let pos: Vec<i32> = (1..=n).map(|k| 2 * k).collect();
        let mut neg: Vec<i32> = (1..=n).map(|k| -(2 * k - 1)).collect();
        neg.reverse(); // −(2n−1), …, −3, −1
        GroundPermutation::from_cycles_on(self.e_points(), &[pos, neg]).unwrap()
    }

    /// δ_E(2k) = −(2k−1), δ_E(−(2k−1)) = 2k.
    pub fn delta_e(&self) -> GroundPermutation {
        let n = self.n as i32;
        let cycles: Vec<Vec<i32>> = (1..=n).map(|k| vec![2 * k, -(2 * k - 1)]).collect();
        GroundPermutation::from_cycles_on(self.e_points(), &cycles).unwrap()
    }
}

// ---------------------------------------------------------------------------
// disc bijection NC₂(2n) ↔ NC(n)
// ---------------------------------------------------------------------------

/// Stack test: a pairing of [m] is non-crossing iff no two pairs interleave.
pub fn is_noncrossing_pairing(p: &Pairing) -> bool {
    let mut stack: Vec<u32> = Vec::new();
    for k in 1..=p.size() as u32 {
        let partner = p.partner(k);
        if partner > k {
            stack.push(k);
        } else if stack.pop() != Some(partner) {
            return false;
        }
    }
    stack.is_empty()
}

/// Membership in NC(n) for a partition of [n].
pub fn is_noncrossing_partition(p: &SetPartition) -> bool {
    let n = p.ground().len() as u32;
    if n == 0 {
        return true;
    }
    let ground: Vec<i32> = (1..=n as i32).collect();
    if p.ground() != ground.as_slice() {
        return false;
    }
    let perm = nc_as_permutation(p).restrict(&ground).unwrap();
    let g = gamma(n).restrict(&ground).unwrap();
    genus_defect_on(&perm, &g).unwrap().is_planar()
}

/// NC₂(2n) → NC(n): σ_π = ωπ restricted to E = {2, 4, …, 2n}, relabeled by
/// 2k ↦ k. Preserves #(ω ∨ π) = #(σ_π).
pub fn disc_pairing_to_nc(p: &Pairing) -> Result<SetPartition, BijError> {
    let m = p.size();
    if m % 2 != 0 {
        return Err(BijError::NotAMember("pairing has odd size".into()));
    }
    if !is_noncrossing_pairing(p) {
        return Err(BijError::NotAMember("pairing has a crossing".into()));
    }
    let n = (m / 2) as u32;
    let om = crate::perm::omega(m as u32);
    let pp = p.as_signed_permutation();
    let prod = om.compose(&pp)?;
    let evens: Vec<i32> = (1..=n as i32).map(|k| 2 * k).collect();
    let restricted = prod.restrict(&evens)?;
    let relabeled = restricted.relabel(|v| v / 2)?;
    Ok(SetPartition::from_ground_perm_cycles(&relabeled))
}

/// NC(n) → NC₂(2n): π_σ = σ_E⁻¹ ω σ_E with σ_E the partition's permutation
/// transported to the even points.
pub fn nc_to_disc_pairing(sigma: &SetPartition) -> Result<Pairing, BijError> {
    if !is_noncrossing_partition(sigma) {
        return Err(BijError::NotAMember("partition is crossing".into()));
    }
    let n = sigma.ground().len() as u32;
    let m = 2 * n;
    // σ as a permutation of the even points, trivial elsewhere
    let mut cycles: Vec<Vec<i32>> = nc_as_permutation(sigma)
        .cycles()
        .into_iter()
        .filter(|c| c[0] > 0)
        .map(|c| c.iter().map(|&v| 2 * v).collect())
        .collect();
    cycles.retain(|c| c.len() > 1);
    let sig_e = SignedPermutation::from_cycles(m, &cycles)?;
    let om = crate::perm::omega(m);
    let prod = SignedPermutation::compose_chain(&[&sig_e.inverse(), &om, &sig_e])?;
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(n as usize);
    for k in 1..=m as i32 {
        let v = prod.apply(k);
        debug_assert!(v > 0);
        if v > k {
            pairs.push((k as u32, v as u32));
        }
    }
    Ok(Pairing::from_pairs(m as usize, &pairs).unwrap())
}

// ---------------------------------------------------------------------------
// annular bijection
// ---------------------------------------------------------------------------

/// ρ = επδπε as a permutation of [±2n], for a pairing π of [2n].
pub fn rho_of_pairing(pi: &Pairing) -> SignedPermutation {
    let m = pi.size() as u32;
    let e = epsilon(m);
    let d = delta(m);
    let pp = pi.as_signed_permutation();
    SignedPermutation::compose_chain(&[&e, &pp, &d, &pp, &e]).unwrap()
}

/// Membership test for the annular source set:
/// ρ = επδπε ∈ NC₂^δ(2n,−2n).
pub fn is_annular_source(pi: &Pairing) -> bool {
    pi.size() % 2 == 0 && is_nc2_delta_annular_perm(&rho_of_pairing(pi))
}

/// π ∈ 𝒫₂(2n) with επδπε ∈ NC₂^δ(2n,−2n)  →  σ ∈ S_NC^δ(n, −n).
pub fn annular_pairing_to_snc(pi: &Pairing) -> Result<SignedPermutation, BijError> {
    let m = pi.size();
    if m % 2 != 0 {
        return Err(BijError::NotAMember("pairing has odd size".into()));
    }
    let n = (m / 2) as u32;
    let rho = rho_of_pairing(pi);
    if !is_nc2_delta_annular_perm(&rho) {
        return Err(BijError::NotAMember(
            "επδπε is not a non-crossing δ-symmetric annular pairing".into(),
        ));
    }
    let frame = EvenOddFrame::new(n);
    let sigma_e = omega_tilde(2 * n).compose(&rho)?.restrict(&frame.e_points())?;
    let relabeled = sigma_e.relabel(|v| frame.psi(v))?;
    let p = SignedPermutation::from_cycles(n, &relabeled.cycles())?;
    debug_assert!(is_snc_delta(&p));
    Ok(p)
}

/// σ ∈ S_NC^δ(n, −n)  →  the unique pairing π of [2n] with ρ = σ_E⁻¹ ω̃ σ_E
/// and π = δερε|_[2n].
pub fn snc_to_annular_pairing(sigma: &SignedPermutation) -> Result<Pairing, BijError> {
    if !is_snc_delta(sigma) {
        return Err(BijError::NotAMember("permutation is not in S_NC^δ(n,−n)".into()));
    }
    let n = sigma.n();
    let m = 2 * n;
    let frame = EvenOddFrame::new(n);
    // transport σ to E, extend trivially on O
    let cycles_e: Vec<Vec<i32>> = sigma
        .cycles()
        .into_iter()
        .map(|c| c.iter().map(|&v| frame.psi_inv(v)).collect())
        .collect();
    let sigma_e = SignedPermutation::from_cycles(m, &cycles_e)?;
    let rho = SignedPermutation::compose_chain(&[&sigma_e.inverse(), &omega_tilde(m), &sigma_e])?;
    let e = epsilon(m);
    let d = delta(m);
    let pi_perm = SignedPermutation::compose_chain(&[&d, &e, &rho, &e])?;
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(n as usize);
    for k in 1..=m as i32 {
        let v = pi_perm.apply(k);
        if v <= 0 {
            return Err(BijError::NotAMember("δερε does not preserve [2n]".into()));
        }
        if v > k {
            pairs.push((k as u32, v as u32));
        }
    }
    let pi = Pairing::from_pairs(m as usize, &pairs)
        .map_err(|_| BijError::NotAMember("δερε|_[2n] is not a pairing".into()))?;
    debug_assert!(is_annular_source(&pi));
    Ok(pi)
}

// ---------------------------------------------------------------------------
// kernel compatibility (multi-matrix words)
// ---------------------------------------------------------------------------

/// For a valid annular source π and a word l of length n, the two kernel
/// conditions agree: σ ≤ ker̃(l) ⇔ π ≤ ker(k), where k doubles l
/// (k_{2r−1} = k_{2r} = l_r). Returns the shared truth value.
pub fn kernel_compatible(pi: &Pairing, word: &[u32]) -> Result<bool, BijError> {
    let m = pi.size();
    if m != 2 * word.len() {
        return Err(BijError::LengthMismatch(word.len(), m));
    }
    let sigma = annular_pairing_to_snc(pi)?; // validates membership
    let letter_of_doubled = |point: u32| -> u32 { word[((point + 1) / 2 - 1) as usize] };
    let pi_side = pi
        .pairs()
        .iter()
        .all(|&(a, b)| letter_of_doubled(a) == letter_of_doubled(b));
    let sigma_side = sigma.cycles().iter().all(|c| {
        let first = word[(c[0].unsigned_abs() - 1) as usize];
        c.iter().all(|&v| word[(v.unsigned_abs() - 1) as usize] == first)
    });
    assert_eq!(
        pi_side, sigma_side,
        "kernel conditions must agree for a valid annular source"
    );
    Ok(pi_side)
}

/// σ ≤ ker̃(l) as a partition comparison, for any permutation of [±n].
pub fn sigma_below_tilde_kernel(sigma: &SignedPermutation, word: &[u32]) -> bool {
    let ker = crate::partition::kernel_of(word);
    let tk = tilde_extend(&ker);
    let sp = SetPartition::from_perm_cycles(sigma);
    sp.is_refinement_of(&tk).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{
        brute, nc_pairings, nc_partitions, snc_delta, snc_delta_count, EnumCaps,
    };
    use crate::perm::gamma_tilde;

    fn caps() -> EnumCaps {
        EnumCaps::default()
    }

    #[test]
    fn disc_bijection_n1() {
        let p = Pairing::from_pairs(2, &[(1, 2)]).unwrap();
        let sigma = disc_pairing_to_nc(&p).unwrap();
        assert_eq!(sigma.block_count(), 1);
        assert_eq!(sigma.ground(), &[1]);
        assert_eq!(nc_to_disc_pairing(&sigma).unwrap(), p);
    }

    #[test]
    fn disc_bijection_round_trip_and_weights() {
        for n in 1..=6usize {
            let all = nc_pairings(2 * n, &caps()).unwrap();
            let mut images = std::collections::HashSet::new();
            for p in &all {
                let sigma = disc_pairing_to_nc(p).unwrap();
                assert!(is_noncrossing_partition(&sigma));
                // block count preservation #(ω ∨ π) = #(σ_π)
                let omega_pairs: Vec<(u32, u32)> =
                    (1..=n as u32).map(|k| (2 * k - 1, 2 * k)).collect();
                let om = Pairing::from_pairs(2 * n, &omega_pairs).unwrap();
                assert_eq!(om.join_block_count(p), sigma.block_count());
                let back = nc_to_disc_pairing(&sigma).unwrap();
                assert_eq!(&back, p);
                images.insert(format!("{sigma}"));
            }
            assert_eq!(images.len(), all.len());
            // and the other direction over all of NC(n)
            for sigma in nc_partitions(n, &caps()).unwrap() {
                let p = nc_to_disc_pairing(&sigma).unwrap();
                assert_eq!(disc_pairing_to_nc(&p).unwrap(), sigma);
            }
        }
    }

    #[test]
    fn disc_rejects_crossing() {
        let crossing = Pairing::from_pairs(4, &[(1, 3), (2, 4)]).unwrap();
        assert!(matches!(
            disc_pairing_to_nc(&crossing),
            Err(BijError::NotAMember(_))
        ));
    }

    #[test]
    fn annular_round_trip_and_weight() {
        for n in 1..=5usize {
            let sources = brute::annular_source_filter(n);
            assert_eq!(sources.len() as i128, snc_delta_count(n as u64), "n = {n}");
            let omega_pairs: Vec<(u32, u32)> =
                (1..=n as u32).map(|k| (2 * k - 1, 2 * k)).collect();
            let om = Pairing::from_pairs(2 * n, &omega_pairs).unwrap();
            for pi in &sources {
                let sigma = annular_pairing_to_snc(pi).unwrap();
                assert!(is_snc_delta(&sigma));
                // weight preservation #(ω ∨ π) = #(σ)/2
                assert_eq!(2 * om.join_block_count(pi), sigma.cycle_count());
                let back = snc_to_annular_pairing(&sigma).unwrap();
                assert_eq!(&back, pi, "n = {n}");
            }
            // inverse direction covers all of S_NC^δ(n,−n)
            for sigma in snc_delta(n, &caps()).unwrap() {
                let pi = snc_to_annular_pairing(&sigma).unwrap();
                assert_eq!(annular_pairing_to_snc(&pi).unwrap(), sigma);
            }
        }
    }

    #[test]
    fn annular_rejects_sources_without_through_pair() {
        // all opposite-parity pairs ⇒ ρ never connects the circles
        let pi = Pairing::from_pairs(4, &[(1, 2), (3, 4)]).unwrap();
        assert!(!is_annular_source(&pi));
        assert!(matches!(
            annular_pairing_to_snc(&pi),
            Err(BijError::NotAMember(_))
        ));
    }

    #[test]
    fn some_annular_source_exists_for_n2() {
        let sources = brute::annular_source_filter(2);
        assert!(!sources.is_empty());
        for pi in &sources {
            assert!(pi
                .pairs()
                .iter()
                .any(|&(a, b)| a % 2 == b % 2), "need a same-parity pair");
        }
    }

    #[test]
    fn restriction_identities() {
        // #(ωπ) = #(ω̃ρ|_E) and #(ω̃ρ|_E) + #(ρω̃γ̃²|_E) = 2n
        for n in 1..=4usize {
            let m = 2 * n as u32;
            let frame = EvenOddFrame::new(n as u32);
            let om = crate::perm::omega(m);
            let omt = omega_tilde(m);
            let gt = gamma_tilde(m);
            let gt2 = gt.compose(&gt).unwrap();
            for pi in brute::annular_source_filter(n) {
                let rho = rho_of_pairing(&pi);
                let pp = pi.as_signed_permutation();
                let ompi_pos = om.compose(&pp).unwrap().restrict(&(1..=m as i32).collect::<Vec<_>>()).unwrap();
                let omt_rho_e = omt.compose(&rho).unwrap().restrict(&frame.e_points()).unwrap();
                assert_eq!(ompi_pos.cycle_count(), omt_rho_e.cycle_count());
                let second = SignedPermutation::compose_chain(&[&rho, &omt, &gt2])
                    .unwrap()
                    .restrict(&frame.e_points())
                    .unwrap();
                assert_eq!(
                    omt_rho_e.cycle_count() + second.cycle_count(),
                    2 * n,
                    "n = {n}"
                );
            }
        }
    }

    #[test]
    fn through_string_spoke_structure() {
        // through strings (r_i, −s_i) of ρ sorted by r satisfy: k = 2l even,
        // r_i = s_{l+i}, consecutive r's alternate parity, r_i ≡ s_i (mod 2)
        for n in 2..=4usize {
            for pi in brute::annular_source_filter(n) {
                let rho = rho_of_pairing(&pi);
                let mut through: Vec<(i32, i32)> = Vec::new();
                for k in 1..=(2 * n) as i32 {
                    let v = rho.apply(k);
                    if v < 0 {
                        through.push((k, -v));
                    }
                }
                through.sort_by_key(|&(r, _)| r);
                let k = through.len();
                assert!(k >= 2 && k % 2 == 0);
                let l = k / 2;
                assert!(l % 2 == 0, "l must be even");
                for i in 0..k {
                    let (r_i, s_i) = through[i];
                    assert_eq!(r_i % 2, s_i % 2, "same parity within a string");
                    let (_, s_li) = through[(i + l) % k];
                    assert_eq!(r_i, s_li, "spoke structure r_i = s_(l+i)");
                    let (r_next, _) = through[(i + 1) % k];
                    if i + 1 < k {
                        assert_ne!(r_i % 2, r_next % 2, "consecutive r's alternate parity");
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_compatibility_examples() {
        // constant word: always true
        for pi in brute::annular_source_filter(3) {
            assert!(kernel_compatible(&pi, &[7, 7, 7]).unwrap());
        }
        // word (1,2,1,2): equivalence asserted inside for every valid π
        let mut any_true = false;
        for pi in brute::annular_source_filter(4) {
            if kernel_compatible(&pi, &[1, 2, 1, 2]).unwrap() {
                any_true = true;
            }
        }
        assert!(any_true, "some source must respect the alternating word");
        // all-distinct word: through cycles need repeated letters, so never true
        for pi in brute::annular_source_filter(3) {
            assert!(!kernel_compatible(&pi, &[1, 2, 3]).unwrap());
        }
        // length mismatch is an error
        let pi = brute::annular_source_filter(2).pop().unwrap();
        assert!(matches!(
            kernel_compatible(&pi, &[1, 2, 3]),
            Err(BijError::LengthMismatch(3, 4))
        ));
    }

    #[test]
    fn counting_identity_nc2_delta() {
        // |NC₂^δ(2n,−2n)| = 4^{n−1} + |S_NC^δ(n,−n)|
        for n in 1..=4usize {
            let all = brute::nc2_delta_annular(n).len() as i128;
            assert_eq!(all, (1i128 << (2 * (n - 1))) + snc_delta_count(n as u64));
        }
    }
}
