use log::{debug, warn};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::certificate::{Certificate, Scenario, Witness, WitnessPath};
use super::certify::ENUMERATION_LIMIT;
use super::ramsey::monochromatic_subset_where;
use crate::cyclekit::{
    circuit_sum_test, d_sum, extend_triple, sign_of, split_to_triple, Offset, Side,
};
use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::linkage::ReducedInstance;
use crate::matroid::ElementSet;
use crate::patterns::{
    balance_extend, find_unavoidable, interleave_u_sets, PatternHit, PatternKind,
};

/// Search budgets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessConfig {
    /// Largest `|I|` tried by the subset searches.
    pub max_subset_size: usize,
    /// Smallest pattern order accepted for `B1` and `B2`.
    pub pattern_order: usize,
    /// Rows of the profile matrices kept when `t` is larger.
    pub sample: usize,
    pub seed: u64,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self {
            max_subset_size: 6,
            pattern_order: 4,
            sample: 32,
            seed: 0,
        }
    }
}

impl WitnessConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_subset_size == 0 || self.pattern_order == 0 || self.sample == 0 {
            return Err(Error::InvalidArgument(
                "witness budgets must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Calls `f` on each `size`-subset of `0..n` in lexicographic order until it
/// returns `Some`.
fn first_subset<T>(n: usize, size: usize, mut f: impl FnMut(&[usize]) -> Option<T>) -> Option<T> {
    if size > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if let Some(v) = f(&idx) {
            return Some(v);
        }
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn circumference_if_small(ri: &ReducedInstance) -> Result<Option<usize>> {
    if ri.n().ground_size() <= ENUMERATION_LIMIT {
        Ok(Some(ri.n().circumference()?))
    } else {
        Ok(None)
    }
}

fn finish(cert: Certificate) -> Result<Option<Certificate>> {
    cert.verify()?;
    Ok(Some(cert))
}

/// A cycle `C = D_I` with `C Δ C1`, `C Δ C2` circuits and `|I| ≥ ⌈k/2⌉`.
///
/// `I` runs over sizes `max(1, ⌈k/2⌉), …, max_subset_size`, each size in
/// lexicographic order.
pub fn find_s1(ri: &ReducedInstance, k: usize, cfg: &WitnessConfig) -> Result<Option<Certificate>> {
    cfg.validate()?;
    let t = ri.t();
    let lo = k.div_ceil(2).max(1);
    for size in lo..=cfg.max_subset_size.min(t) {
        let hit = first_subset(t, size, |i| {
            let ok = circuit_sum_test(ri, i, Side::C1).ok()?
                && circuit_sum_test(ri, i, Side::C2).ok()?;
            ok.then(|| i.to_vec())
        });
        if let Some(i) = hit {
            let cycle = d_sum(ri, &i)?;
            return finish(Certificate::new(
                Scenario::S1,
                k,
                ri.c1().clone(),
                ri.c2().clone(),
                Witness::S1 { cycle },
                circumference_if_small(ri)?,
                ri.trace().clone(),
                WitnessPath::SubsetSearch,
                vec![format!("I = {:?} (0-based positions in X)", i)],
            ));
        }
    }
    Ok(None)
}

/// S2 witnesses: the pattern pipeline first, then exhaustive search.
pub fn find_s2(ri: &ReducedInstance, k: usize, cfg: &WitnessConfig) -> Result<Option<Certificate>> {
    if let Some(c) = find_s2_pipeline(ri, k, cfg)? {
        return Ok(Some(c));
    }
    find_s2_exhaustive(ri, k, cfg)
}

fn profile_matrix(ri: &ReducedInstance, rows: &[usize], cj: &ElementSet) -> GF2Matrix {
    let cols: Vec<usize> = cj.iter().collect();
    let mut a = GF2Matrix::zeros(rows.len(), cols.len());
    for (r, &i) in rows.iter().enumerate() {
        for (c, &e) in cols.iter().enumerate() {
            a.set(r, c, ri.d()[i].contains(e));
        }
    }
    a
}

/// Largest-order pattern in `a`, trying orders from `min(rows, cols)` down to
/// `floor`.
fn largest_pattern(a: &GF2Matrix, floor: usize) -> Result<Option<PatternHit>> {
    for l in (floor.max(1)..=a.rows().min(a.cols())).rev() {
        if let Some(hit) = find_unavoidable(a, l)? {
            return Ok(Some(hit));
        }
    }
    Ok(None)
}

/// Colour of a `k`-subset: its sign and offset when `D_I Δ C1` splits.
type TripleColor = Option<(Vec<bool>, Offset)>;

fn triple_color(ri: &ReducedInstance, i: &[usize]) -> TripleColor {
    match circuit_sum_test(ri, i, Side::C1) {
        Ok(false) => {
            let tr = split_to_triple(ri, i, Side::C1).ok()?;
            Some((sign_of(&tr).tau, tr.h))
        }
        _ => None,
    }
}

/// The constructive route: unavoidable patterns in the profile matrices, a
/// subset on which every `k`-subset has the same sign and offset, balanced
/// block sizes, and the four interleaved sets.
///
/// Returns `None` as soon as an intermediate object is absent; every step
/// taken is recorded in the certificate diagnostics.
pub fn find_s2_pipeline(
    ri: &ReducedInstance,
    k: usize,
    cfg: &WitnessConfig,
) -> Result<Option<Certificate>> {
    cfg.validate()?;
    let mut notes = Vec::new();
    let t = ri.t();
    // the construction needs an even subset size of at least two
    let k_eff = (k + k % 2).max(2);
    if t < k_eff {
        return Ok(None);
    }
    let rows: Vec<usize> = if t > cfg.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut r = sample(&mut rng, t, cfg.sample).into_vec();
        r.sort_unstable();
        notes.push(format!(
            "sampled {} of {t} rows with seed {}",
            cfg.sample, cfg.seed
        ));
        r
    } else {
        (0..t).collect()
    };

    let a1 = profile_matrix(ri, &rows, ri.c1());
    let Some(b1) = largest_pattern(&a1, cfg.pattern_order.min(rows.len()))? else {
        debug!("pipeline: no B1 pattern of order >= {}", cfg.pattern_order);
        return Ok(None);
    };
    let b1_rows: Vec<usize> = b1
        .rows_in_pattern_order()
        .iter()
        .map(|&r| rows[r])
        .collect();
    notes.push(format!("B1 = {:?} of order {}", b1.kind, b1.order));

    let a2 = profile_matrix(ri, &b1_rows, ri.c2());
    let Some(b2) = largest_pattern(&a2, cfg.pattern_order.min(b1_rows.len()))? else {
        debug!("pipeline: no B2 pattern inside the rows of B1");
        return Ok(None);
    };
    let mut q: Vec<usize> = b2
        .rows_in_pattern_order()
        .iter()
        .map(|&r| b1_rows[r])
        .collect();
    q.sort_unstable();
    notes.push(format!("B2 = {:?} of order {}", b2.kind, b2.order));

    if b1.kind != PatternKind::LowerTriangular {
        warn!(
            "pipeline: B1 is {:?}, expected the triangular pattern",
            b1.kind
        );
        notes.push(format!(
            "counterexample candidate: B1 = {:?}, not T",
            b1.kind
        ));
    }
    let mut work = ri.clone();
    match b2.kind {
        PatternKind::Identity => {}
        PatternKind::ComplementIdentity => {
            work = ri.with_d_shifted_by_c2(&q)?;
            notes.push("replaced D_i by D_i Δ C2 on the selected rows".into());
            let a2n = profile_matrix(
                &work,
                &b2.rows_in_pattern_order()
                    .iter()
                    .map(|&r| b1_rows[r])
                    .collect::<Vec<_>>(),
                work.c2(),
            );
            let again = find_unavoidable(&a2n, b2.order)?;
            if again.as_ref().map(|h| h.kind) != Some(PatternKind::Identity) {
                warn!("pipeline: B2 did not become the identity after replacement");
                notes.push("counterexample candidate: replaced B2 is not I".into());
            }
        }
        PatternKind::LowerTriangular => {
            warn!("pipeline: B2 is triangular, expected I or its complement");
            notes.push("counterexample candidate: B2 = T".into());
        }
    }

    // largest subset of q on which all k_eff-subsets split with one colour
    let color = |pos: &[usize]| -> TripleColor {
        let actual: Vec<usize> = pos.iter().map(|&p| q[p]).collect();
        triple_color(&work, &actual)
    };
    for size in (k_eff..=q.len()).rev() {
        let Some(sub) = monochromatic_subset_where(q.len(), k_eff, color, size, |c| c.is_some())
        else {
            continue;
        };
        let members: Vec<usize> = sub.iter().map(|&p| q[p]).collect();
        let (tau, h) = triple_color(&work, &members[..k_eff]).expect("admissible colour");
        let sigma = crate::cyclekit::SignProfile::from_tau(tau).sigma;
        let seq = balance_extend(&sigma)?;
        if seq.footprint() > members.len() {
            debug!(
                "pipeline: uniform subset of size {} is below the footprint {}",
                members.len(),
                seq.footprint()
            );
            continue;
        }
        let u = interleave_u_sets(&seq, members.len())?;
        let sets: Vec<Vec<usize>> = (0..4)
            .map(|i| u.set(i).iter().map(|&p| members[p]).collect())
            .collect();
        // every pair must be a triple with the common sign and offset
        let mut pairs_ok = true;
        for a in 0..4 {
            for b in a + 1..4 {
                let blocks = pair_blocks(&sets[a], &sets[b]);
                if let Err(e) = extend_triple(&work, &sigma, h, &blocks) {
                    warn!("pipeline: pair ({}, {}) is not a triple: {e}", a + 1, b + 1);
                    notes.push(format!(
                        "counterexample candidate: pair U{} U{} fails",
                        a + 1,
                        b + 1
                    ));
                    pairs_ok = false;
                }
            }
        }
        if !pairs_ok {
            continue;
        }
        let mut order: Vec<(ElementSet, Vec<usize>)> = sets
            .into_iter()
            .map(|s| {
                (
                    d_sum(&work, &s)
                        .expect("indices valid")
                        .intersection(work.c1()),
                    s,
                )
            })
            .collect();
        order.sort_by_key(|(d1, _)| d1.len());
        if order.windows(2).any(|w| !w[0].0.is_subset(&w[1].0)) {
            notes.push("C1-parts of the four sets are not a chain".into());
            continue;
        }
        let v1: Vec<usize> = [order[0].1.clone(), order[1].1.clone()].concat();
        let v2: Vec<usize> = [order[2].1.clone(), order[3].1.clone()].concat();
        let (c1p, c2p) = (d_sum(&work, &v1)?, d_sum(&work, &v2)?);
        notes.push(format!(
            "uniform subset of size {}, sign blocks {:?}, H = {:?}, t = {:?}{}",
            members.len(),
            sigma,
            h,
            seq.t,
            if u.odd_branch {
                ", odd-block layout"
            } else {
                ""
            }
        ));
        let cert = Certificate::new(
            Scenario::S2,
            k,
            ri.c1().clone(),
            ri.c2().clone(),
            Witness::S2 { c1p, c2p },
            circumference_if_small(ri)?,
            ri.trace().clone(),
            WitnessPath::Pipeline,
            notes.clone(),
        );
        match cert.verify() {
            Ok(()) => return Ok(Some(cert)),
            Err(e) => {
                warn!("pipeline: assembled witness fails verification: {e}");
                notes.push(format!("counterexample candidate: {e}"));
            }
        }
    }
    Ok(None)
}

/// Maximal runs of `a ∪ b` in increasing order, alternating between the sets.
fn pair_blocks(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    let mut tagged: Vec<(usize, bool)> = a
        .iter()
        .map(|&x| (x, true))
        .chain(b.iter().map(|&x| (x, false)))
        .collect();
    tagged.sort_unstable();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &(x, side)) in tagged.iter().enumerate() {
        if i > 0 && tagged[i - 1].1 == side {
            out.last_mut().expect("nonempty").push(x);
        } else {
            out.push(vec![x]);
        }
    }
    out
}

/// Exhaustive S2 search over cycles `D_I Δ H` with `|I| ≤ max_subset_size`.
///
/// Candidates are pairs of disjoint such cycles, tried with the first index
/// set in size-then-lexicographic order.
pub fn find_s2_exhaustive(
    ri: &ReducedInstance,
    k: usize,
    cfg: &WitnessConfig,
) -> Result<Option<Certificate>> {
    cfg.validate()?;
    let n = ri.n();
    let t = ri.t();
    let base = ri.c1().sym_diff(ri.c2());
    let cc = ri.c1().union(ri.c2());
    let mut good: Vec<ElementSet> = Vec::new();
    for size in 1..=cfg.max_subset_size.min(t) {
        first_subset(t, size, |i| {
            let d = d_sum(ri, i).expect("indices valid");
            for h in Offset::ALL {
                let c = d.sym_diff(&h.set(ri));
                if n.is_circuit(&base.sym_diff(&c)) {
                    good.push(c);
                }
            }
            None::<()>
        });
    }
    for (a, c1p) in good.iter().enumerate() {
        for c2p in &good[a + 1..] {
            if c1p.is_disjoint(c2p) && cc.sym_diff(&c1p.union(c2p)).len() >= k {
                return finish(Certificate::new(
                    Scenario::S2,
                    k,
                    ri.c1().clone(),
                    ri.c2().clone(),
                    Witness::S2 {
                        c1p: c1p.clone(),
                        c2p: c2p.clone(),
                    },
                    circumference_if_small(ri)?,
                    ri.trace().clone(),
                    WitnessPath::ExhaustiveFallback,
                    Vec::new(),
                ));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkage::build_reduced_instance;
    use crate::matroid::fixtures::{circular_ladder, prism};

    fn ladder(m: usize) -> ReducedInstance {
        let g = circular_ladder(m);
        let c1 = g.set(&(0..m).collect::<Vec<_>>()).unwrap();
        let c2 = g.set(&(m..2 * m).collect::<Vec<_>>()).unwrap();
        build_reduced_instance(&g, &c1, &c2).unwrap()
    }

    #[test]
    fn subsets_in_lex_order() {
        let mut seen = Vec::new();
        first_subset(4, 2, |s| {
            seen.push(s.to_vec());
            None::<()>
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn prism_s1() {
        let p = prism();
        let ri =
            build_reduced_instance(&p, &p.set(&[0, 1, 2]).unwrap(), &p.set(&[3, 4, 5]).unwrap())
                .unwrap();
        let cert = find_s1(&ri, 4, &WitnessConfig::default()).unwrap().unwrap();
        let Witness::S1 { cycle } = &cert.witness else {
            panic!()
        };
        assert_eq!(*cycle, d_sum(&ri, &[0, 1]).unwrap());
        assert_eq!(cert.circumference_n, Some(5));
        assert_eq!(cert.arithmetic.circuit_sizes, vec![5, 5]);
        // k = 0 takes the first single D_i
        let cert = find_s1(&ri, 0, &WitnessConfig::default()).unwrap().unwrap();
        let Witness::S1 { cycle } = &cert.witness else {
            panic!()
        };
        assert_eq!(*cycle, ri.d()[0]);
    }

    #[test]
    fn ladder_exhaustive_s2() {
        let ri = ladder(6);
        let cert = find_s2_exhaustive(&ri, 2, &WitnessConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(cert.path, WitnessPath::ExhaustiveFallback);
        cert.verify().unwrap();
    }

    #[test]
    fn staircase_pipeline_small() {
        let ri = ReducedInstance::staircase(4).unwrap();
        let cfg = WitnessConfig {
            pattern_order: 2,
            ..WitnessConfig::default()
        };
        let cert = find_s2_pipeline(&ri, 2, &cfg)
            .unwrap()
            .expect("pipeline succeeds");
        assert_eq!(cert.path, WitnessPath::Pipeline);
        assert!(cert
            .diagnostics
            .iter()
            .any(|d| d.contains("LowerTriangular")));
        cert.verify().unwrap();
    }

    #[test]
    fn staircase_pipeline_k4() {
        let ri = ReducedInstance::staircase(12).unwrap();
        let cfg = WitnessConfig {
            pattern_order: 2,
            ..WitnessConfig::default()
        };
        let cert = find_s2_pipeline(&ri, 4, &cfg)
            .unwrap()
            .expect("pipeline succeeds");
        let Witness::S2 { c1p, c2p } = &cert.witness else {
            panic!()
        };
        assert!(c1p.is_disjoint(c2p));
    }
}
