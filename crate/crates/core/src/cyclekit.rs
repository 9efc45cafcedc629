//! Cycle-space arithmetic on a reduced instance.
//!
//! Index sets `I ⊆ [t]` are sorted slices of 0-based positions into `X`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linkage::ReducedInstance;
use crate::matroid::{set_relation, ElementSet};

/// Which of the fixed circuits is added to `D_I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    C1,
    C2,
    Both,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::C1, Side::C2, Side::Both];

    pub fn set(self, ri: &ReducedInstance) -> ElementSet {
        match self {
            Side::C1 => ri.c1().clone(),
            Side::C2 => ri.c2().clone(),
            Side::Both => ri.c1().union(ri.c2()),
        }
    }

    /// Whether `C_j` (j = 1 or 2) is part of this side.
    fn covers(self, j: usize) -> bool {
        matches!((self, j), (Side::Both, _) | (Side::C1, 1) | (Side::C2, 2))
    }
}

/// The offset `H`, one of the four cycles inside `C1 ∪ C2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Offset {
    Empty,
    C1,
    C2,
    Both,
}

impl Offset {
    pub const ALL: [Offset; 4] = [Offset::Empty, Offset::C1, Offset::C2, Offset::Both];

    pub fn set(self, ri: &ReducedInstance) -> ElementSet {
        match self {
            Offset::Empty => ri.n().empty_set(),
            Offset::C1 => ri.c1().clone(),
            Offset::C2 => ri.c2().clone(),
            Offset::Both => ri.c1().union(ri.c2()),
        }
    }

    pub fn from_set(ri: &ReducedInstance, h: &ElementSet) -> Option<Offset> {
        Offset::ALL.into_iter().find(|o| &o.set(ri) == h)
    }
}

fn check_indices(ri: &ReducedInstance, i: &[usize]) -> Result<()> {
    for &j in i {
        if j >= ri.t() {
            return Err(Error::IndexOutOfRange {
                index: j,
                ground_size: ri.t(),
            });
        }
    }
    Ok(())
}

/// `D_I`, the symmetric difference of the chosen `D_i`.
pub fn d_sum(ri: &ReducedInstance, i: &[usize]) -> Result<ElementSet> {
    check_indices(ri, i)?;
    let mut out = ri.n().empty_set();
    for &j in i {
        out = out.sym_diff(&ri.d()[j]);
    }
    Ok(out)
}

fn x_part(ri: &ReducedInstance, i: &[usize]) -> ElementSet {
    let mut out = ri.n().empty_set();
    for &j in i {
        out.insert(ri.x()[j]);
    }
    out
}

/// Whether `D_I Δ side` is a circuit of `N`.
pub fn circuit_sum_test(ri: &ReducedInstance, i: &[usize], side: Side) -> Result<bool> {
    if i.is_empty() {
        return Err(Error::InvalidArgument("index set must be nonempty".into()));
    }
    let z = d_sum(ri, i)?.sym_diff(&side.set(ri));
    Ok(ri.n().is_circuit(&z))
}

/// A split `D_I Δ side = G1 ⊔ G2` into disjoint cycles with
/// `G_i ∩ X = D_{S_i} ∩ X`, `D_{S1} Δ G1 = H` and `D_{S2} Δ G2 = H Δ side`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ITriple {
    pub side: Side,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub h: Offset,
    pub g1: ElementSet,
    pub g2: ElementSet,
}

impl ITriple {
    /// `S1 ∪ S2`, sorted.
    pub fn indices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.s1.iter().chain(&self.s2).copied().collect();
        all.sort_unstable();
        all
    }

    /// Checks every defining property against `ri`.
    pub fn verify(&self, ri: &ReducedInstance) -> Result<()> {
        let fail = |msg: String| Err(Error::InvariantViolation(msg));
        let n = ri.n();
        for s in [&self.s1, &self.s2] {
            check_indices(ri, s)?;
            if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) {
                return fail("both index sets must be nonempty and strictly ascending".into());
            }
        }
        if self.s1.iter().any(|j| self.s2.contains(j)) {
            return fail("S1 and S2 overlap".into());
        }
        if self.s2[0] < self.s1[0] {
            return fail("the least index must lie in S1".into());
        }
        let side = self.side.set(ri);
        let h = self.h.set(ri);
        let (d1, d2) = (d_sum(ri, &self.s1)?, d_sum(ri, &self.s2)?);
        if !n.is_cycle(&self.g1) || !n.is_cycle(&self.g2) || !self.g1.is_disjoint(&self.g2) {
            return fail("G1 and G2 must be disjoint cycles".into());
        }
        if self.g1.sym_diff(&self.g2) != d1.sym_diff(&d2).sym_diff(&side) {
            return fail("G1 Δ G2 differs from D_I Δ side".into());
        }
        let xs = ri.x_set();
        if self.g1.intersection(&xs) != x_part(ri, &self.s1)
            || self.g2.intersection(&xs) != x_part(ri, &self.s2)
        {
            return fail("G_i ∩ X must equal the x's of S_i".into());
        }
        if d1.sym_diff(&self.g1) != h || d2.sym_diff(&self.g2) != h.sym_diff(&side) {
            return fail("offsets do not match H".into());
        }
        for (j, cj) in [(1, ri.c1()), (2, ri.c2())] {
            let rel = set_relation(&d1.intersection(cj), &d2.intersection(cj), cj);
            let ok = if self.side.covers(j) {
                rel.nested_strict
            } else {
                rel.bowtie_or_parallel
            };
            if !ok {
                return fail(format!(
                    "C{j}-parts of D_S1 and D_S2 violate the partition relation"
                ));
            }
        }
        Ok(())
    }
}

/// Splits a non-circuit `D_I Δ side` into an [`ITriple`].
///
/// The cycle is decomposed by repeatedly removing its lexicographically least
/// circuit. `G1` is the component holding `x` of the least index in `I`, `G2`
/// the union of the others.
pub fn split_to_triple(ri: &ReducedInstance, i: &[usize], side: Side) -> Result<ITriple> {
    if circuit_sum_test(ri, i, side)? {
        return Err(Error::Precondition(format!(
            "D_I Δ {side:?} is a circuit and does not split"
        )));
    }
    let mut sorted = i.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != i.len() {
        return Err(Error::InvalidArgument("repeated index".into()));
    }
    let n = ri.n();
    let mut rest = d_sum(ri, &sorted)?.sym_diff(&side.set(ri));
    let anchor = ri.x()[sorted[0]];
    let mut g1 = None;
    let mut g2 = n.empty_set();
    while !rest.is_empty() {
        let c = n
            .least_circuit_in(&rest)
            .ok_or_else(|| Error::InvariantViolation("nonempty cycle without a circuit".into()))?;
        if c.is_disjoint(&ri.x_set()) {
            return Err(Error::InvariantViolation(
                "a circuit component misses X".into(),
            ));
        }
        rest = rest.difference(&c);
        if c.contains(anchor) {
            g1 = Some(c);
        } else {
            g2 = g2.union(&c);
        }
    }
    let g1 = g1.expect("anchor lies in the cycle");
    let xs = ri.x_set();
    let (s1, s2): (Vec<usize>, Vec<usize>) = sorted.iter().partition(|&&j| g1.contains(ri.x()[j]));
    debug_assert!(s2.iter().all(|&j| g2.contains(ri.x()[j])) && !g2.intersection(&xs).is_empty());
    let h_set = d_sum(ri, &s1)?.sym_diff(&g1);
    let h = Offset::from_set(ri, &h_set)
        .ok_or_else(|| Error::InvariantViolation("D_S1 Δ G1 is not inside C1 ∪ C2".into()))?;
    let triple = ITriple {
        side,
        s1,
        s2,
        h,
        g1,
        g2,
    };
    triple.verify(ri)?;
    Ok(triple)
}

/// Sign `τ`, block profile `σ` and prefix sums `ω` of a triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignProfile {
    pub tau: Vec<bool>,
    pub sigma: Vec<usize>,
    pub omega: Vec<usize>,
}

impl SignProfile {
    pub fn from_tau(tau: Vec<bool>) -> Self {
        let mut sigma: Vec<usize> = Vec::new();
        for (j, &b) in tau.iter().enumerate() {
            if j > 0 && tau[j - 1] == b {
                *sigma.last_mut().expect("nonempty") += 1;
            } else {
                sigma.push(1);
            }
        }
        let omega = std::iter::once(0)
            .chain(sigma.iter().scan(0, |acc, &s| {
                *acc += s;
                Some(*acc)
            }))
            .collect();
        Self { tau, sigma, omega }
    }

    pub fn k(&self) -> usize {
        self.tau.len()
    }

    pub fn blocks(&self) -> usize {
        self.sigma.len()
    }
}

pub fn sign_of(triple: &ITriple) -> SignProfile {
    SignProfile::from_tau(
        triple
            .indices()
            .iter()
            .map(|j| triple.s1.contains(j))
            .collect(),
    )
}

/// Builds `(R1, R2, H)` from blocks `Q_1 < … < Q_ℓ`, where `R1` collects the
/// odd-position blocks and `R2` the even ones, and verifies it as a triple
/// for side `C1`.
///
/// Each `|Q_i|` must be at least `sigma[i]` with the same parity.
pub fn extend_triple(
    ri: &ReducedInstance,
    sigma: &[usize],
    h: Offset,
    q_sets: &[Vec<usize>],
) -> Result<ITriple> {
    if sigma.len() < 2 || sigma.len() != q_sets.len() {
        return Err(Error::Precondition(format!(
            "need at least two blocks and one set per block (got {} blocks, {} sets)",
            sigma.len(),
            q_sets.len()
        )));
    }
    let mut prev_max: Option<usize> = None;
    for (pos, (q, &s)) in q_sets.iter().zip(sigma).enumerate() {
        check_indices(ri, q)?;
        if q.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!(
                "Q_{} is not strictly ascending",
                pos + 1
            )));
        }
        if q.len() < s || (q.len() - s) % 2 != 0 {
            return Err(Error::Precondition(format!(
                "|Q_{}| = {} does not extend block size {s} by an even amount",
                pos + 1,
                q.len()
            )));
        }
        if let (Some(pm), Some(&first)) = (prev_max, q.first()) {
            if first <= pm {
                return Err(Error::Precondition(format!(
                    "Q_{} does not lie entirely after Q_{}",
                    pos + 1,
                    pos
                )));
            }
        }
        prev_max = q.last().copied().or(prev_max);
    }
    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    for (pos, q) in q_sets.iter().enumerate() {
        if pos % 2 == 0 { &mut r1 } else { &mut r2 }.extend_from_slice(q);
    }
    let hs = h.set(ri);
    let g1 = d_sum(ri, &r1)?.sym_diff(&hs);
    let g2 = d_sum(ri, &r2)?.sym_diff(&hs).sym_diff(ri.c1());
    let triple = ITriple {
        side: Side::C1,
        s1: r1,
        s2: r2,
        h,
        g1,
        g2,
    };
    triple.verify(ri).map_err(|e| {
        Error::InvariantViolation(format!("extended blocks do not form a triple: {e}"))
    })?;
    Ok(triple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkage::build_reduced_instance;
    use crate::matroid::fixtures::{circular_ladder, prism};

    fn ladder_instance(m: usize) -> ReducedInstance {
        let g = circular_ladder(m);
        let c1 = g.set(&(0..m).collect::<Vec<_>>()).unwrap();
        let c2 = g.set(&(m..2 * m).collect::<Vec<_>>()).unwrap();
        build_reduced_instance(&g, &c1, &c2).unwrap()
    }

    fn prism_instance() -> ReducedInstance {
        let p = prism();
        build_reduced_instance(&p, &p.set(&[0, 1, 2]).unwrap(), &p.set(&[3, 4, 5]).unwrap())
            .unwrap()
    }

    #[test]
    fn d_sum_examples() {
        let ri = prism_instance();
        assert!(d_sum(&ri, &[]).unwrap().is_empty());
        assert_eq!(d_sum(&ri, &[0]).unwrap(), ri.d()[0]);
        let d12 = d_sum(&ri, &[0, 1]).unwrap();
        assert_eq!(d12.len(), 6);
        assert!(ri.n().is_cycle(&d12));
        assert!(d_sum(&ri, &[2]).is_err());
    }

    #[test]
    fn circuit_sum_examples() {
        let ri = prism_instance();
        for side in [Side::C1, Side::C2] {
            assert!(circuit_sum_test(&ri, &[0, 1], side).unwrap());
            let z = d_sum(&ri, &[0, 1]).unwrap().sym_diff(&side.set(&ri));
            assert_eq!(z.len(), 5);
        }
        // a single D_i plus C_j has only one element of X and cannot split
        assert!(circuit_sum_test(&ri, &[0], Side::C1).unwrap());
        assert!(split_to_triple(&ri, &[0], Side::C1).is_err());
    }

    #[test]
    fn ladder_splits_only_on_both_sides() {
        let ri = ladder_instance(4);
        let mut splits = Vec::new();
        for mask in 1u32..(1 << ri.t()) {
            let i: Vec<usize> = (0..ri.t()).filter(|j| mask >> j & 1 == 1).collect();
            for side in Side::ALL {
                if !circuit_sum_test(&ri, &i, side).unwrap() {
                    splits.push((i.clone(), side));
                }
            }
        }
        assert_eq!(
            splits,
            vec![(vec![0, 1], Side::Both), (vec![0, 1, 2], Side::Both)]
        );
        let tr = split_to_triple(&ri, &[0, 1], Side::Both).unwrap();
        assert_eq!((tr.s1.clone(), tr.s2.clone()), (vec![0], vec![1]));
        let z = d_sum(&ri, &[0, 1]).unwrap().sym_diff(&Side::Both.set(&ri));
        assert_eq!(tr.g1.sym_diff(&tr.g2), z);
        for cj in [ri.c1(), ri.c2()] {
            let (a, b) = (ri.d()[0].intersection(cj), ri.d()[1].intersection(cj));
            assert!(set_relation(&a, &b, cj).nested_strict);
        }
    }

    #[test]
    fn sign_examples() {
        let p = SignProfile::from_tau(vec![true, true, false, false]);
        assert_eq!(p.sigma, vec![2, 2]);
        let p = SignProfile::from_tau(vec![true, false, true, false]);
        assert_eq!(p.sigma, vec![1, 1, 1, 1]);
        let mut tau = vec![true; 4];
        tau.extend([false; 3]);
        tau.extend([true; 3]);
        let p = SignProfile::from_tau(tau);
        assert_eq!(p.sigma, vec![4, 3, 3]);
        assert_eq!(p.omega, vec![0, 4, 7, 10]);
    }

    #[test]
    fn extension_reproduces_split_triples() {
        let ri = ReducedInstance::staircase(5).unwrap();
        let t = ri.t();
        let mut checked = 0;
        for mask in 1u32..(1 << t) {
            let i: Vec<usize> = (0..t).filter(|j| mask >> j & 1 == 1).collect();
            if circuit_sum_test(&ri, &i, Side::C1).unwrap() {
                continue;
            }
            let tr = split_to_triple(&ri, &i, Side::C1).unwrap();
            let sign = sign_of(&tr);
            let idx = tr.indices();
            let q: Vec<Vec<usize>> = sign
                .omega
                .windows(2)
                .map(|w| idx[w[0]..w[1]].to_vec())
                .collect();
            let again = extend_triple(&ri, &sign.sigma, tr.h, &q).unwrap();
            assert_eq!((again.s1, again.s2), (tr.s1, tr.s2));
            checked += 1;
        }
        assert!(checked > 0);
    }

    #[test]
    fn extension_rejects_bad_blocks() {
        let ri = ladder_instance(5);
        let h = Offset::Empty;
        assert!(extend_triple(&ri, &[1, 1], h, &[vec![1], vec![0]]).is_err());
        assert!(extend_triple(&ri, &[1, 1], h, &[vec![0, 1], vec![2]]).is_err());
        assert!(extend_triple(&ri, &[2], h, &[vec![0, 1]]).is_err());
    }
}
