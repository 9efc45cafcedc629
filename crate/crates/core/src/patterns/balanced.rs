use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Block sizes `s` extended to `t` (same parities, `t_i ≥ s_i`) with
/// `μ_0 = μ_ℓ = 0` and `μ_{i−1} + μ_i = t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedSeq {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub mu: Vec<usize>,
}

impl BalancedSeq {
    pub fn blocks(&self) -> usize {
        self.t.len()
    }

    pub fn total(&self) -> usize {
        self.t.iter().sum()
    }

    /// Smallest `q` for which [`interleave_u_sets`] succeeds.
    pub fn footprint(&self) -> usize {
        let l = self.blocks();
        self.total() + 2 * self.mu[..l].iter().sum::<usize>()
    }

    pub fn check(&self) -> Result<()> {
        let l = self.t.len();
        let fail = |m: &str| Err(Error::InvariantViolation(m.into()));
        if self.s.len() != l || self.mu.len() != l + 1 {
            return fail("s, t and mu lengths disagree");
        }
        if self
            .s
            .iter()
            .zip(&self.t)
            .any(|(&s, &t)| s == 0 || t < s || (t - s) % 2 != 0)
        {
            return fail("each t_i must be at least s_i with the same parity");
        }
        if self.mu[0] != 0 || self.mu[l] != 0 {
            return fail("mu must start and end at zero");
        }
        if (1..=l).any(|i| self.mu[i - 1] + self.mu[i] != self.t[i - 1]) {
            return fail("mu_{i-1} + mu_i must equal t_i");
        }
        // mu_i is the alternating prefix sum, so B1 and B2 follow
        let mut alt: i64 = 0;
        for (i, &ti) in self.t.iter().enumerate() {
            alt = ti as i64 - alt;
            if alt < 0 || (i + 1 == l && alt != 0) {
                return fail("alternating sums are not balanced");
            }
        }
        Ok(())
    }
}

/// Raises block sizes in steps of two until the alternating sums balance.
///
/// Sweeps `i = 1, …, ℓ−1` keeping `μ_i = t_i − μ_{i−1} ≥ 0`, then raises
/// `t_{ℓ−1}` until `μ_{ℓ−1} ≥ s_ℓ` and sets `t_ℓ = μ_{ℓ−1}`.
pub fn balance_extend(s: &[usize]) -> Result<BalancedSeq> {
    let l = s.len();
    if l < 2 {
        return Err(Error::InvalidArgument("need at least two blocks".into()));
    }
    if s.contains(&0) {
        return Err(Error::InvalidArgument(
            "block sizes must be positive".into(),
        ));
    }
    if s.iter().sum::<usize>() % 2 != 0 {
        return Err(Error::InvalidArgument(
            "block sizes must have an even total".into(),
        ));
    }
    let mut t = s.to_vec();
    let mut mu = vec![0usize; l + 1];
    for i in 1..l {
        while t[i - 1] < mu[i - 1] {
            t[i - 1] += 2;
        }
        mu[i] = t[i - 1] - mu[i - 1];
    }
    while mu[l - 1] < s[l - 1] {
        t[l - 2] += 2;
        mu[l - 1] += 2;
    }
    t[l - 1] = mu[l - 1];
    let seq = BalancedSeq {
        s: s.to_vec(),
        t,
        mu,
    };
    seq.check()?;
    Ok(seq)
}

/// Four disjoint index sets built from consecutive pieces.
///
/// `pieces[i][j]` is `U_{i+1, j+1}`. `U_1` and `U_4` alternate through the
/// blocks `t_1, t_2, …`; `U_2` and `U_3` are cut into pieces of sizes `μ_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct USets {
    pub pieces: [Vec<Vec<usize>>; 4],
    /// Built for an odd number of blocks.
    pub odd_branch: bool,
}

impl USets {
    /// `U_{i+1}` as a sorted list.
    pub fn set(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.pieces[i].iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    /// Checks piece sizes, disjointness, the piece orderings, and that every
    /// pair `(U_i, U_j)`, `i < j`, alternates in runs of sizes `t_1, …, t_ℓ`
    /// starting inside `U_i`.
    pub fn verify(&self, seq: &BalancedSeq) -> Result<()> {
        let fail = |m: String| Err(Error::InvariantViolation(m));
        let l = seq.blocks();
        let p = &self.pieces;
        let sizes: [Vec<usize>; 4] = [
            (0..l).step_by(2).map(|i| seq.t[i]).collect(),
            seq.mu[1..].to_vec(),
            seq.mu[1..].to_vec(),
            (1..l).step_by(2).map(|i| seq.t[i]).collect(),
        ];
        for i in 0..4 {
            let got: Vec<usize> = p[i].iter().map(Vec::len).collect();
            if got != sizes[i] {
                return fail(format!(
                    "U_{} has piece sizes {got:?}, expected {:?}",
                    i + 1,
                    sizes[i]
                ));
            }
        }
        let all: Vec<usize> = (0..4).flat_map(|i| self.set(i)).collect();
        let mut dedup = all.clone();
        dedup.sort_unstable();
        dedup.dedup();
        if dedup.len() != all.len() {
            return fail("the four sets overlap".into());
        }
        let before = |a: &[usize], b: &[usize]| match (a.last(), b.first()) {
            (Some(x), Some(y)) => x < y,
            _ => true,
        };
        let chain_ok = |chain: &[&Vec<usize>]| {
            chain
                .iter()
                .enumerate()
                .all(|(i, a)| chain[i + 1..].iter().all(|b| before(a, b)))
        };
        let mut first_family: Vec<&Vec<usize>> = Vec::new();
        for m in 0..p[0].len() {
            first_family.push(&p[0][m]);
            if let Some(u4) = p[3].get(m) {
                first_family.push(u4);
            }
        }
        if !chain_ok(&first_family) {
            return fail("U_1 and U_4 pieces are out of order".into());
        }
        for j in 0..l {
            let m = j / 2;
            let chain: Vec<&Vec<usize>> = if j % 2 == 0 {
                // U_{1,m} < U_{2,j} < U_{3,j} < U_{4,m}
                [p[0].get(m), p[1].get(j), p[2].get(j), p[3].get(m)]
                    .into_iter()
                    .flatten()
                    .collect()
            } else {
                // U_{4,m} < U_{3,j} < U_{2,j} < U_{1,m+1}
                [p[3].get(m), p[2].get(j), p[1].get(j), p[0].get(m + 1)]
                    .into_iter()
                    .flatten()
                    .collect()
            };
            if !chain_ok(&chain) {
                return fail(format!("pieces around block {} are out of order", j + 1));
            }
        }
        for a in 0..4 {
            for b in a + 1..4 {
                let runs = runs(&self.set(a), &self.set(b));
                if runs != seq.t {
                    return fail(format!(
                        "U_{} and U_{} alternate in runs {runs:?}, expected {:?}",
                        a + 1,
                        b + 1,
                        seq.t
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Run lengths of membership along `a ∪ b` in increasing order, or an empty
/// list when the first run is not in `a`.
fn runs(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut tagged: Vec<(usize, bool)> = a
        .iter()
        .map(|&x| (x, true))
        .chain(b.iter().map(|&x| (x, false)))
        .collect();
    tagged.sort_unstable();
    if tagged.first().is_some_and(|&(_, in_a)| !in_a) {
        return Vec::new();
    }
    let mut out: Vec<usize> = Vec::new();
    for (i, &(_, side)) in tagged.iter().enumerate() {
        if i > 0 && tagged[i - 1].1 == side {
            *out.last_mut().expect("nonempty") += 1;
        } else {
            out.push(1);
        }
    }
    out
}

/// Allocates `U_1, …, U_4 ⊆ {0, …, q−1}` piece by piece, left to right.
///
/// For `m = 1, 2, …` the pieces are laid out as
/// `U_{1,m} U_{2,2m−1} U_{3,2m−1} U_{4,m} U_{3,2m} U_{2,2m}`; with an odd
/// number of blocks a final `U_{1,(ℓ+1)/2}` closes the layout.
pub fn interleave_u_sets(seq: &BalancedSeq, q: usize) -> Result<USets> {
    seq.check()?;
    let need = seq.footprint();
    if q < need {
        return Err(Error::InvalidArgument(format!(
            "interleaving needs {need} indices, only {q} available"
        )));
    }
    let l = seq.blocks();
    let mut next = 0usize;
    let mut take = |size: usize| {
        let v: Vec<usize> = (next..next + size).collect();
        next += size;
        v
    };
    let mut pieces: [Vec<Vec<usize>>; 4] = Default::default();
    let mut u23 = vec![[Vec::new(), Vec::new()]; l];
    for m in 0..l.div_ceil(2) {
        let odd = 2 * m;
        pieces[0].push(take(seq.t[odd]));
        if odd + 1 == l {
            break;
        }
        u23[odd][0] = take(seq.mu[odd + 1]);
        u23[odd][1] = take(seq.mu[odd + 1]);
        pieces[3].push(take(seq.t[odd + 1]));
        let even = odd + 1;
        u23[even][1] = take(seq.mu[even + 1]);
        u23[even][0] = take(seq.mu[even + 1]);
    }
    for [u2, u3] in u23 {
        pieces[1].push(u2);
        pieces[2].push(u3);
    }
    let out = USets {
        pieces,
        odd_branch: l % 2 == 1,
    };
    out.verify(seq)?;
    Ok(out)
}
