//! Linkage between disjoint element sets, the reductions that preserve it,
//! and assembly of the reduced instance for a pair of skew circuits.
//!
//! All linkage values are exact: `kappa` minimises the connectivity function
//! over every set between `X` and `E − Y`, so the number of free elements is
//! capped by a budget.

use crate::error::{Error, Result};
use crate::gf2::{GF2Matrix, GF2Vector};
use crate::matroid::{BinaryMatroid, ElementSet, MinorOp, MinorTrace};

pub const DEFAULT_KAPPA_BUDGET: usize = 30;

/// Exact linkage `min { λ(A) : X ⊆ A ⊆ E − Y }` with the default budget.
pub fn kappa(m: &BinaryMatroid, x: &ElementSet, y: &ElementSet) -> Result<usize> {
    kappa_with_budget(m, x, y, DEFAULT_KAPPA_BUDGET)
}

pub fn kappa_with_budget(
    m: &BinaryMatroid,
    x: &ElementSet,
    y: &ElementSet,
    budget: usize,
) -> Result<usize> {
    if !x.is_disjoint(y) {
        return Err(Error::InvalidArgument("linkage needs disjoint sets".into()));
    }
    let free: Vec<usize> = x.union(y).complement().iter().collect();
    if free.len() > budget.min(63) {
        return Err(Error::KappaBudgetExceeded {
            free: free.len(),
            budget,
        });
    }
    // λ(A) ≥ ⊓(X, Y) for every admissible A, so reaching it ends the search.
    let floor = m.local_pi(x, y);
    let total = m.rank();
    let mut best = usize::MAX;
    for mask in 0u64..(1u64 << free.len()) {
        let mut a = x.clone();
        for (bit, &e) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                a.insert(e);
            }
        }
        let lam = m.rank_of(&a) + m.rank_of(&a.complement()) - total;
        if lam < best {
            best = lam;
            if best == floor {
                break;
            }
        }
    }
    Ok(best)
}

/// Removes element `i` from a set, renumbering later elements down by one.
fn drop_index(s: &ElementSet, i: usize) -> ElementSet {
    let members: Vec<usize> = s
        .iter()
        .filter(|&e| e != i)
        .map(|e| if e > i { e - 1 } else { e })
        .collect();
    ElementSet::from_indices(s.ground_size() - 1, &members).expect("renumbered indices fit")
}

/// A minor under construction together with the images of `X` and `Y`.
struct Reducer {
    trace: MinorTrace,
    x: ElementSet,
    y: ElementSet,
    target: usize,
    budget: usize,
}

impl Reducer {
    fn new(m: &BinaryMatroid, x: &ElementSet, y: &ElementSet, budget: usize) -> Result<Self> {
        let target = kappa_with_budget(m, x, y, budget)?;
        Ok(Self {
            trace: MinorTrace::identity(m),
            x: x.clone(),
            y: y.clone(),
            target,
            budget,
        })
    }

    fn current(&self) -> &BinaryMatroid {
        self.trace.result()
    }

    fn index_of(&self, original: usize) -> usize {
        self.trace
            .current_index(original)
            .expect("reducers only touch surviving elements")
    }

    /// κ between the images of X and Y after applying `op` to `original`.
    fn kappa_after(&self, original: usize, op: MinorOp) -> Result<usize> {
        let i = self.index_of(original);
        let next = match op {
            MinorOp::Delete => self.current().delete_element(i),
            MinorOp::Contract => self.current().contract_element(i),
        };
        kappa_with_budget(
            &next,
            &drop_index(&self.x, i),
            &drop_index(&self.y, i),
            self.budget,
        )
    }

    fn apply(&mut self, original: usize, op: MinorOp) -> Result<MinorOp> {
        let i = self.index_of(original);
        let applied = self.trace.apply(original, op)?;
        self.x = drop_index(&self.x, i);
        self.y = drop_index(&self.y, i);
        Ok(applied)
    }

    /// Deletes `original` if that keeps κ, otherwise contracts it. One of the
    /// two always keeps κ; anything else is reported as a violation.
    fn remove_preserving_kappa(&mut self, original: usize) -> Result<MinorOp> {
        if self.kappa_after(original, MinorOp::Delete)? == self.target {
            return self.apply(original, MinorOp::Delete);
        }
        let after = self.kappa_after(original, MinorOp::Contract)?;
        if after != self.target {
            return Err(Error::InvariantViolation(format!(
                "neither deleting nor contracting element {original} keeps kappa = {} \
                 (contraction gives {after})",
                self.target
            )));
        }
        self.apply(original, MinorOp::Contract)
    }
}

fn check_disjoint(x: &ElementSet, y: &ElementSet) -> Result<()> {
    if x.is_disjoint(y) {
        Ok(())
    } else {
        Err(Error::InvalidArgument("X and Y must be disjoint".into()))
    }
}

/// Minor on exactly `X ∪ Y` with `⊓_N(X, Y) = κ_N(X, Y) = κ_M(X, Y)` and the
/// restrictions to `X` and to `Y` unchanged.
///
/// Every other element is processed in ascending order and deleted when that
/// keeps κ, contracted otherwise.
pub fn tutte_reduce(m: &BinaryMatroid, x: &ElementSet, y: &ElementSet) -> Result<MinorTrace> {
    tutte_reduce_with_budget(m, x, y, DEFAULT_KAPPA_BUDGET)
}

pub fn tutte_reduce_with_budget(
    m: &BinaryMatroid,
    x: &ElementSet,
    y: &ElementSet,
    budget: usize,
) -> Result<MinorTrace> {
    check_disjoint(x, y)?;
    let mut r = Reducer::new(m, x, y, budget)?;
    for e in x.union(y).complement().iter() {
        r.remove_preserving_kappa(e)?;
    }
    Ok(r.trace)
}

/// Minor containing `X ∪ Y`, spanned by it, with ⊓ and κ between `X` and `Y`
/// and both restrictions unchanged.
///
/// While some element lies outside `cl(X ∪ Y)`, the least such element is
/// deleted if that keeps κ and contracted otherwise.
pub fn spanning_reduce(m: &BinaryMatroid, x: &ElementSet, y: &ElementSet) -> Result<MinorTrace> {
    spanning_reduce_with_budget(m, x, y, DEFAULT_KAPPA_BUDGET)
}

pub fn spanning_reduce_with_budget(
    m: &BinaryMatroid,
    x: &ElementSet,
    y: &ElementSet,
    budget: usize,
) -> Result<MinorTrace> {
    check_disjoint(x, y)?;
    let mut r = Reducer::new(m, x, y, budget)?;
    loop {
        let cur = r.current();
        let span = cur.closure(&r.x.union(&r.y));
        let Some(i) = span.complement().first() else {
            break;
        };
        let original = r.trace.surviving()[i];
        r.remove_preserving_kappa(original)?;
    }
    Ok(r.trace)
}

/// The reduced instance for a pair of skew circuits: a minor `N` in which
/// `C1 ∪ C2` spans, the remaining elements `X = {x_1, …, x_t}` satisfy
/// `κ_N(C1, C2) = t`, and `D_i` is a fixed circuit through `x_i` inside
/// `C1 ∪ C2 ∪ {x_i}`.
///
/// All sets are indexed by the elements of `N`; `trace` maps them back to
/// the matroid the instance was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    trace: MinorTrace,
    c1: ElementSet,
    c2: ElementSet,
    x: Vec<usize>,
    d: Vec<ElementSet>,
}

impl ReducedInstance {
    pub fn n(&self) -> &BinaryMatroid {
        self.trace.result()
    }

    pub fn c1(&self) -> &ElementSet {
        &self.c1
    }

    pub fn c2(&self) -> &ElementSet {
        &self.c2
    }

    /// `x_1, …, x_t` as elements of `N`, ascending.
    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn x_set(&self) -> ElementSet {
        ElementSet::from_indices(self.n().ground_size(), &self.x).expect("x lies in N")
    }

    pub fn t(&self) -> usize {
        self.x.len()
    }

    pub fn d(&self) -> &[ElementSet] {
        &self.d
    }

    pub fn trace(&self) -> &MinorTrace {
        &self.trace
    }

    /// Builds an instance directly on `n` (identity trace) and checks every
    /// invariant.
    pub fn from_parts(
        n: &BinaryMatroid,
        c1: ElementSet,
        c2: ElementSet,
        x: Vec<usize>,
        d: Vec<ElementSet>,
    ) -> Result<Self> {
        let ri = Self {
            trace: MinorTrace::identity(n),
            c1,
            c2,
            x,
            d,
        };
        ri.check_invariants(DEFAULT_KAPPA_BUDGET)?;
        Ok(ri)
    }

    /// Synthetic instance whose circuits `D_i` meet `C1` and `C2` exactly in
    /// the supports of row `i` of `a1` and `a2`.
    ///
    /// Ground set order: `C1` (`a1.cols()` elements), then `C2`, then
    /// `x_1, …, x_t`. Fails when the rows do not give a valid instance, e.g.
    /// an empty or full row, or dependent rows.
    pub fn from_profiles(a1: &GF2Matrix, a2: &GF2Matrix) -> Result<Self> {
        let (n1, n2, t) = (a1.cols(), a2.cols(), a1.rows());
        if a2.rows() != t {
            return Err(Error::DimensionMismatch(format!(
                "profile matrices have {t} and {} rows",
                a2.rows()
            )));
        }
        if n1 < 2 || n2 < 2 {
            return Err(Error::InvalidArgument(
                "both circuits need at least two elements".into(),
            ));
        }
        let rank = (n1 - 1) + (n2 - 1);
        let mut cols: Vec<GF2Vector> = Vec::with_capacity(n1 + n2 + t);
        for (size, offset) in [(n1, 0), (n2, n1 - 1)] {
            for j in 0..size {
                cols.push(if j + 1 < size {
                    GF2Vector::from_indices(rank, [offset + j])
                } else {
                    GF2Vector::from_indices(rank, offset..offset + size - 1)
                });
            }
        }
        let ground = n1 + n2 + t;
        let mut d = Vec::with_capacity(t);
        for i in 0..t {
            let mut members: Vec<usize> = a1.row(i).ones().collect();
            members.extend(a2.row(i).ones().map(|j| n1 + j));
            let mut x_col = GF2Vector::zeros(rank);
            for &e in &members {
                x_col.xor_assign(&cols[e]);
            }
            cols.push(x_col);
            members.push(n1 + n2 + i);
            d.push(ElementSet::from_indices(ground, &members)?);
        }
        let n = BinaryMatroid::new(GF2Matrix::from_columns(rank, &cols)?);
        let c1 = ElementSet::from_indices(ground, &(0..n1).collect::<Vec<_>>())?;
        let c2 = ElementSet::from_indices(ground, &(n1..n1 + n2).collect::<Vec<_>>())?;
        let x = (n1 + n2..ground).collect();
        Self::from_parts(&n, c1, c2, x, d)
    }

    /// Profile instance with `D_i ∩ C1 = {e_1, …, e_i}` and `D_i ∩ C2 = {f_i}`,
    /// where `|C1| = |C2| = t + 1`.
    pub fn staircase(t: usize) -> Result<Self> {
        let mut a1 = GF2Matrix::zeros(t, t + 1);
        let mut a2 = GF2Matrix::zeros(t, t + 1);
        for i in 0..t {
            for j in 0..=i {
                a1.set(i, j, true);
            }
            a2.set(i, i, true);
        }
        Self::from_profiles(&a1, &a2)
    }

    /// Same instance with `D_i` replaced by `D_i Δ C2` for each listed `i`.
    pub fn with_d_shifted_by_c2(&self, indices: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        for &i in indices {
            let di = out.d.get(i).ok_or(Error::IndexOutOfRange {
                index: i,
                ground_size: self.t(),
            })?;
            out.d[i] = di.sym_diff(&self.c2);
        }
        out.check_d()?;
        Ok(out)
    }

    fn check_d(&self) -> Result<()> {
        let n = self.n();
        let cc = self.c1.union(&self.c2);
        if self.d.len() != self.x.len() {
            return Err(Error::InvariantViolation(format!(
                "{} circuits D_i for {} elements of X",
                self.d.len(),
                self.x.len()
            )));
        }
        for (i, (di, &xi)) in self.d.iter().zip(&self.x).enumerate() {
            let mut allowed = cc.clone();
            allowed.insert(xi);
            if !di.contains(xi) || !di.is_subset(&allowed) {
                return Err(Error::InvariantViolation(format!(
                    "D_{} must contain x_{} and otherwise lie in C1 ∪ C2",
                    i + 1,
                    i + 1
                )));
            }
            if !n.is_circuit(di) {
                return Err(Error::InvariantViolation(format!(
                    "D_{} is not a circuit",
                    i + 1
                )));
            }
            if di.is_disjoint(&self.c1) || di.is_disjoint(&self.c2) {
                return Err(Error::InvariantViolation(format!(
                    "D_{} misses one of the circuits",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Re-checks every structural property of the instance.
    pub fn check_invariants(&self, kappa_budget: usize) -> Result<()> {
        let n = self.n();
        let (c1, c2) = (&self.c1, &self.c2);
        let fail = |msg: &str| Err(Error::InvariantViolation(msg.into()));
        if !n.is_circuit(c1) || !n.is_circuit(c2) {
            return fail("C1 and C2 must be circuits of N");
        }
        if !c1.is_disjoint(c2) || n.local_pi(c1, c2) != 0 {
            return fail("C1 and C2 must be disjoint and skew");
        }
        let cc = c1.union(c2);
        if n.rank_of(&cc) != n.rank() {
            return fail("C1 ∪ C2 must span N");
        }
        let xs = self.x_set();
        if self.x.windows(2).any(|w| w[0] >= w[1]) || xs != cc.complement() {
            return fail("X must be exactly E(N) − (C1 ∪ C2), listed in ascending order");
        }
        for ci in [c1, c2] {
            // independence of X over C_i is hereditary, so the full set suffices
            if n.rank_of(&ci.union(&xs)) != n.rank_of(ci) + self.t() {
                return fail("C_i must be the only circuit of N inside C_i ∪ X");
            }
        }
        let k = kappa_with_budget(n, c1, c2, kappa_budget)?;
        if k != self.t() {
            return Err(Error::InvariantViolation(format!(
                "kappa_N(C1, C2) = {k} but |X| = {}",
                self.t()
            )));
        }
        self.check_d()
    }
}

/// Builds the reduced instance for disjoint skew circuits `c1`, `c2` of `m`.
///
/// Steps: reduce until `C1 ∪ C2` spans; delete `cl(C_i) − C_i`; run the
/// linking pass, keeping contracted elements as `X` and deleting the rest;
/// take `D_i` as the fundamental circuit of `x_i` with respect to the greedy
/// basis of `C1 ∪ C2` (ascending element order).
pub fn build_reduced_instance(
    m: &BinaryMatroid,
    c1: &ElementSet,
    c2: &ElementSet,
) -> Result<ReducedInstance> {
    build_reduced_instance_with_budget(m, c1, c2, DEFAULT_KAPPA_BUDGET)
}

pub fn build_reduced_instance_with_budget(
    m: &BinaryMatroid,
    c1: &ElementSet,
    c2: &ElementSet,
    budget: usize,
) -> Result<ReducedInstance> {
    if !c1.is_disjoint(c2) {
        return Err(Error::Precondition("C1 and C2 must be disjoint".into()));
    }
    if !m.is_circuit(c1) || !m.is_circuit(c2) {
        return Err(Error::Precondition("C1 and C2 must be circuits".into()));
    }
    if m.local_pi(c1, c2) != 0 {
        return Err(Error::Precondition("C1 and C2 must be skew".into()));
    }

    let spanning = spanning_reduce_with_budget(m, c1, c2, budget)?;
    let mut r = Reducer {
        x: spanning.to_result(c1)?,
        y: spanning.to_result(c2)?,
        target: kappa_with_budget(m, c1, c2, budget)?,
        trace: spanning,
        budget,
    };

    // Elements spanned by one circuit can be deleted without changing κ.
    let cur = r.current();
    let extra = cur
        .closure(&r.x)
        .union(&cur.closure(&r.y))
        .difference(&r.x.union(&r.y));
    let extra: Vec<usize> = extra.iter().map(|i| r.trace.surviving()[i]).collect();
    for e in extra {
        r.apply(e, MinorOp::Delete)?;
    }
    let after = kappa_with_budget(r.current(), &r.x, &r.y, budget)?;
    if after != r.target {
        return Err(Error::InvariantViolation(format!(
            "deleting cl(C_i) − C_i changed kappa from {} to {after}",
            r.target
        )));
    }

    // Linking pass on a scratch copy: contracted elements become X, the
    // deleted ones are removed from the real trace.
    let mut scratch = Reducer {
        trace: r.trace.clone(),
        x: r.x.clone(),
        y: r.y.clone(),
        target: r.target,
        budget,
    };
    let rest: Vec<usize> =
        r.x.union(&r.y)
            .complement()
            .iter()
            .map(|i| r.trace.surviving()[i])
            .collect();
    let mut kept = Vec::new();
    for e in rest {
        match scratch.remove_preserving_kappa(e)? {
            MinorOp::Contract => kept.push(e),
            MinorOp::Delete => {
                r.apply(e, MinorOp::Delete)?;
            }
        }
    }

    let trace = r.trace;
    let n = trace.result();
    let c1n = trace.to_result(c1)?;
    let c2n = trace.to_result(c2)?;
    let x: Vec<usize> = kept
        .iter()
        .map(|&e| trace.current_index(e).expect("kept elements survive"))
        .collect();

    let d = fundamental_circuits(n, &c1n.union(&c2n), &x)?;
    let ri = ReducedInstance {
        trace,
        c1: c1n,
        c2: c2n,
        x,
        d,
    };
    ri.check_invariants(budget)?;
    Ok(ri)
}

/// `D_i` = the unique circuit in `B + x_i`, where `B` is the greedy basis of
/// `span` taken in ascending element order.
fn fundamental_circuits(
    n: &BinaryMatroid,
    span: &ElementSet,
    x: &[usize],
) -> Result<Vec<ElementSet>> {
    let mut basis_elems = Vec::new();
    let mut xb = crate::gf2::XorBasis::new(n.rep().rows());
    for e in span.iter() {
        if xb.insert(n.column(e)) {
            basis_elems.push(e);
        }
    }
    let cols: Vec<GF2Vector> = basis_elems.iter().map(|&b| n.column(b).clone()).collect();
    let bmat = GF2Matrix::from_columns(n.rep().rows(), &cols)?;
    x.iter()
        .map(|&xi| {
            let coeffs = bmat.solve(n.column(xi))?.ok_or_else(|| {
                Error::InvariantViolation(format!("element {xi} is not spanned by C1 ∪ C2"))
            })?;
            let mut members: Vec<usize> = coeffs.ones().map(|j| basis_elems[j]).collect();
            members.push(xi);
            n.set(&members)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::fixtures::{prism, two_triangles};

    fn tri(m: &BinaryMatroid, v: &[usize]) -> ElementSet {
        m.set(v).unwrap()
    }

    #[test]
    fn kappa_examples() {
        let tt = two_triangles();
        assert_eq!(
            kappa(&tt, &tri(&tt, &[0, 1, 2]), &tri(&tt, &[3, 4, 5])),
            Ok(0)
        );
        let p = prism();
        let (t1, t2) = (tri(&p, &[0, 1, 2]), tri(&p, &[3, 4, 5]));
        assert_eq!(kappa(&p, &t1, &t2), Ok(2));
        assert_eq!(kappa(&p, &p.empty_set(), &t2), Ok(0));
        assert!(kappa(&p, &t1, &t1).is_err());
        assert_eq!(
            kappa_with_budget(&p, &t1, &t2, 2),
            Err(Error::KappaBudgetExceeded { free: 3, budget: 2 })
        );
    }

    #[test]
    fn tutte_reduce_examples() {
        let p = prism();
        let (t1, t2) = (tri(&p, &[0, 1, 2]), tri(&p, &[3, 4, 5]));
        let tr = tutte_reduce(&p, &t1, &t2).unwrap();
        let n = tr.result();
        assert_eq!(n.ground_size(), 6);
        let (x, y) = (tr.to_result(&t1).unwrap(), tr.to_result(&t2).unwrap());
        assert_eq!(n.local_pi(&x, &y), 2);
        assert_eq!(kappa(n, &x, &y), Ok(2));

        let tt = two_triangles();
        let tr = tutte_reduce(&tt, &tri(&tt, &[0, 1, 2]), &tri(&tt, &[3, 4, 5])).unwrap();
        assert!(tr.steps().is_empty());
        let n = tr.result();
        assert_eq!(n.local_pi(&tri(n, &[0, 1, 2]), &tri(n, &[3, 4, 5])), 0);
    }

    #[test]
    fn spanning_reduce_examples() {
        let p = prism();
        let (t1, t2) = (tri(&p, &[0, 1, 2]), tri(&p, &[3, 4, 5]));
        let tr = spanning_reduce(&p, &t1, &t2).unwrap();
        assert_eq!(tr.steps().len(), 1);
        assert_eq!(tr.steps()[0].op, MinorOp::Contract);
        assert_eq!(tr.result().rank(), 4);

        // triangle plus a coloop
        let m = BinaryMatroid::new(GF2Matrix::from_strs(&["1100", "0110", "0001"]).unwrap());
        let m = {
            // columns: 0:{r0}, 1:{r0,r1}, 2:{r1}, 3:{r2}; 0,1,2 form a triangle
            assert!(m.is_circuit(&tri(&m, &[0, 1, 2])));
            m
        };
        let tr = spanning_reduce(&m, &tri(&m, &[0, 1, 2]), &m.empty_set()).unwrap();
        assert_eq!(tr.steps().len(), 1);
        assert_eq!(tr.steps()[0].element, 3);
        assert_eq!(tr.result().ground_size(), 3);
    }

    #[test]
    fn prism_reduced_instance() {
        let p = prism();
        let ri = build_reduced_instance(&p, &tri(&p, &[0, 1, 2]), &tri(&p, &[3, 4, 5])).unwrap();
        assert_eq!(ri.t(), 2);
        assert_eq!(ri.n().ground_size(), 8);
        assert_eq!(ri.n().rank(), 4);
        // X is the two surviving matching edges (original 7 and 8)
        let orig: Vec<usize> = ri.x().iter().map(|&e| ri.trace().surviving()[e]).collect();
        assert_eq!(orig, vec![7, 8]);
        for di in ri.d() {
            assert_eq!(di.len(), 3);
        }
    }

    #[test]
    fn direct_sum_reduced_instance_is_trivial() {
        let tt = two_triangles();
        let ri = build_reduced_instance(&tt, &tri(&tt, &[0, 1, 2]), &tri(&tt, &[3, 4, 5])).unwrap();
        assert_eq!(ri.t(), 0);
        assert!(ri.d().is_empty());
    }

    #[test]
    fn rejects_non_skew_or_non_circuit_inputs() {
        let p = prism();
        // outer triangle and a 4-cycle through a matching edge share rank
        let four = tri(&p, &[2, 5, 7, 8]);
        assert!(p.is_circuit(&four));
        assert!(build_reduced_instance(&p, &tri(&p, &[0, 1, 6]), &tri(&p, &[3, 4, 5])).is_err());
        assert!(build_reduced_instance(&p, &tri(&p, &[0, 1, 3]), &four).is_err());
    }

    #[test]
    fn synthetic_instance_from_profiles() {
        let a1 = GF2Matrix::from_strs(&["100", "110"]).unwrap();
        let a2 = GF2Matrix::from_strs(&["100", "010"]).unwrap();
        let ri = ReducedInstance::from_profiles(&a1, &a2).unwrap();
        assert_eq!(ri.t(), 2);
        assert_eq!(ri.d()[1].to_vec(), vec![0, 1, 4, 7]);
        // a full row is not a proper subset of C1
        let bad = GF2Matrix::from_strs(&["111", "110"]).unwrap();
        assert!(ReducedInstance::from_profiles(&bad, &a2).is_err());
        // dependent rows violate kappa = |X|
        let dep = GF2Matrix::from_strs(&["100", "100"]).unwrap();
        assert!(ReducedInstance::from_profiles(&a1, &dep).is_err());
    }
}
