//! Binary matroids given by a GF(2) representation matrix.
//!
//! Elements are the columns of the representation. Every rank query is a
//! GF(2) rank computation over a subset of columns.

mod elements;
mod minor;

pub use elements::{set_relation, ElementSet, SetRelation};
pub use minor::{MinorOp, MinorStep, MinorTrace};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gf2::{rank_of_vectors, GF2Matrix, GF2Vector, XorBasis};

#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatroid {
    rep: GF2Matrix,
    columns: Vec<GF2Vector>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for BinaryMatroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BinaryMatroid")
            .field("ground_size", &self.ground_size())
            .field("rank", &self.rank())
            .field("rep", &self.rep)
            .finish()
    }
}

impl BinaryMatroid {
    pub fn new(rep: GF2Matrix) -> Self {
        let columns = rep.columns();
        Self {
            rep,
            columns,
            labels: None,
        }
    }

    pub fn with_labels(rep: GF2Matrix, labels: Vec<String>) -> Result<Self> {
        if labels.len() != rep.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} elements",
                labels.len(),
                rep.cols()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::InvalidArgument(format!("duplicate label '{dup}'")));
        }
        let mut m = Self::new(rep);
        m.labels = Some(labels);
        Ok(m)
    }

    /// Cycle matroid of a multigraph on vertices `0..vertices`, via its
    /// vertex-edge incidence matrix. A loop edge `(u, u)` gives a zero column.
    pub fn from_graph(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut rep = GF2Matrix::zeros(vertices, edges.len());
        for (j, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertices {
                    return Err(Error::InvalidArgument(format!(
                        "edge {} uses vertex {w} but the graph has {vertices} vertices",
                        j + 1
                    )));
                }
            }
            if u != v {
                rep.set(u, j, true);
                rep.set(v, j, true);
            }
        }
        Ok(Self::new(rep))
    }

    pub fn rep(&self) -> &GF2Matrix {
        &self.rep
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, e: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[e].as_str())
    }

    #[inline]
    pub fn ground_size(&self) -> usize {
        self.columns.len()
    }

    #[inline]
    pub fn column(&self, e: usize) -> &GF2Vector {
        &self.columns[e]
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.ground_size())
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.ground_size())
    }

    /// Element set from 0-based indices, validated against the ground set.
    pub fn set(&self, indices: &[usize]) -> Result<ElementSet> {
        ElementSet::from_indices(self.ground_size(), indices)
    }

    fn check(&self, a: &ElementSet) {
        assert_eq!(
            a.ground_size(),
            self.ground_size(),
            "element set does not belong to this matroid"
        );
    }

    pub fn rank(&self) -> usize {
        rank_of_vectors(self.rep.rows(), &self.columns)
    }

    /// GF(2) rank of the columns indexed by `a`.
    pub fn rank_of(&self, a: &ElementSet) -> usize {
        self.check(a);
        rank_of_vectors(self.rep.rows(), a.iter().map(|e| &self.columns[e]))
    }

    pub fn is_independent(&self, a: &ElementSet) -> bool {
        self.rank_of(a) == a.len()
    }

    /// Sum of the columns of `a`.
    pub fn column_sum(&self, a: &ElementSet) -> GF2Vector {
        self.check(a);
        let mut s = GF2Vector::zeros(self.rep.rows());
        for e in a.iter() {
            s.xor_assign(&self.columns[e]);
        }
        s
    }

    /// Elements whose addition to `a` does not raise the rank.
    pub fn closure(&self, a: &ElementSet) -> ElementSet {
        self.check(a);
        let mut basis = XorBasis::new(self.rep.rows());
        for e in a.iter() {
            basis.insert(&self.columns[e]);
        }
        let mut cl = a.clone();
        for e in 0..self.ground_size() {
            if basis.contains(&self.columns[e]) {
                cl.insert(e);
            }
        }
        cl
    }

    /// True iff the characteristic vector of `s` lies in the kernel of the
    /// representation, i.e. `s` is a disjoint union of circuits.
    pub fn is_cycle(&self, s: &ElementSet) -> bool {
        self.column_sum(s).is_zero()
    }

    pub fn is_circuit(&self, c: &ElementSet) -> bool {
        // A nonempty cycle is a circuit iff its rank is |C| − 1; a union of
        // two or more disjoint circuits has rank at most |C| − 2.
        !c.is_empty() && self.is_cycle(c) && self.rank_of(c) + 1 == c.len()
    }

    /// All circuits of size at most `max_size`, in lexicographic order.
    ///
    /// Depth-first search over independent sets grown in ascending element
    /// order: a set whose proper prefix is independent is a circuit exactly
    /// when its columns sum to zero. Cost is exponential in the ground size.
    pub fn circuits(&self, max_size: Option<usize>) -> Vec<ElementSet> {
        let max = max_size.unwrap_or(self.ground_size());
        let mut out = Vec::new();
        if max == 0 {
            return out;
        }
        let mut current = Vec::new();
        let basis = XorBasis::new(self.rep.rows());
        let sum = GF2Vector::zeros(self.rep.rows());
        self.circuit_dfs(0, &mut current, &basis, &sum, max, &mut out);
        out
    }

    fn circuit_dfs(
        &self,
        start: usize,
        current: &mut Vec<usize>,
        basis: &XorBasis,
        sum: &GF2Vector,
        max: usize,
        out: &mut Vec<ElementSet>,
    ) {
        for e in start..self.ground_size() {
            let col = &self.columns[e];
            if basis.contains(col) {
                let mut s = sum.clone();
                s.xor_assign(col);
                if s.is_zero() {
                    current.push(e);
                    out.push(
                        ElementSet::from_indices(self.ground_size(), current)
                            .expect("indices are in range"),
                    );
                    current.pop();
                }
            } else if current.len() + 1 < max {
                let mut next = basis.clone();
                next.insert(col);
                let mut s = sum.clone();
                s.xor_assign(col);
                current.push(e);
                self.circuit_dfs(e + 1, current, &next, &s, max, out);
                current.pop();
            }
        }
    }

    /// The lexicographically least circuit contained in `within`, if any.
    pub fn least_circuit_in(&self, within: &ElementSet) -> Option<ElementSet> {
        let pool: Vec<usize> = within.iter().collect();
        let mut current = Vec::new();
        let basis = XorBasis::new(self.rep.rows());
        let sum = GF2Vector::zeros(self.rep.rows());
        self.least_circuit_dfs(&pool, 0, &mut current, &basis, &sum)
    }

    fn least_circuit_dfs(
        &self,
        pool: &[usize],
        start: usize,
        current: &mut Vec<usize>,
        basis: &XorBasis,
        sum: &GF2Vector,
    ) -> Option<ElementSet> {
        for (pos, &e) in pool.iter().enumerate().skip(start) {
            let col = &self.columns[e];
            let mut s = sum.clone();
            s.xor_assign(col);
            if basis.contains(col) {
                if s.is_zero() {
                    current.push(e);
                    let found = ElementSet::from_indices(self.ground_size(), current)
                        .expect("indices are in range");
                    current.pop();
                    return Some(found);
                }
            } else {
                let mut next = basis.clone();
                next.insert(col);
                current.push(e);
                let found = self.least_circuit_dfs(pool, pos + 1, current, &next, &s);
                current.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    /// Size of a largest circuit.
    pub fn circumference(&self) -> Result<usize> {
        self.circuits(None)
            .iter()
            .map(ElementSet::len)
            .max()
            .ok_or(Error::CircumferenceUndefined)
    }

    /// Connectivity function `r(A) + r(E − A) − r(M)`.
    pub fn lambda(&self, a: &ElementSet) -> usize {
        self.rank_of(a) + self.rank_of(&a.complement()) - self.rank()
    }

    /// Local connectivity `r(X) + r(Y) − r(X ∪ Y)`.
    pub fn local_pi(&self, x: &ElementSet, y: &ElementSet) -> usize {
        self.rank_of(x) + self.rank_of(y) - self.rank_of(&x.union(y))
    }

    pub fn is_skew(&self, x: &ElementSet, y: &ElementSet) -> Result<bool> {
        if !x.is_disjoint(y) {
            return Err(Error::InvalidArgument(
                "skewness is only defined here for disjoint sets".into(),
            ));
        }
        Ok(self.local_pi(x, y) == 0)
    }

    /// Deletes `delete` and contracts `contract`. Contracted elements that
    /// have become loops are deleted instead and recorded as deletions.
    pub fn minor(&self, delete: &ElementSet, contract: &ElementSet) -> Result<MinorTrace> {
        self.check(delete);
        self.check(contract);
        if !delete.is_disjoint(contract) {
            return Err(Error::InvalidArgument(
                "delete and contract sets overlap".into(),
            ));
        }
        let mut trace = MinorTrace::identity(self);
        for e in contract.iter() {
            trace.contract(e)?;
        }
        for e in delete.iter() {
            trace.delete(e)?;
        }
        Ok(trace)
    }

    /// Matroid obtained by deleting one element.
    pub fn delete_element(&self, e: usize) -> BinaryMatroid {
        let keep: Vec<usize> = (0..self.ground_size()).filter(|&j| j != e).collect();
        self.restrict_to(&keep)
    }

    /// Matroid obtained by contracting one element (a loop is simply deleted).
    pub fn contract_element(&self, e: usize) -> BinaryMatroid {
        let col = &self.columns[e];
        let Some(p) = col.first_one() else {
            return self.delete_element(e);
        };
        let pivot = self.rep.row(p).clone();
        let mut rows = Vec::with_capacity(self.rep.rows() - 1);
        for (i, row) in self.rep.row_vectors().iter().enumerate() {
            if i == p {
                continue;
            }
            let mut r = row.clone();
            if r.get(e) {
                r.xor_assign(&pivot);
            }
            rows.push(r);
        }
        let reduced = GF2Matrix::from_rows(self.ground_size(), rows).expect("row lengths agree");
        let keep: Vec<usize> = (0..self.ground_size()).filter(|&j| j != e).collect();
        let rep = reduced.select_columns(&keep);
        BinaryMatroid {
            columns: rep.columns(),
            rep,
            labels: self.select_labels(&keep),
        }
    }

    /// Restriction to the listed elements, renumbered `0..keep.len()` in order.
    pub fn restrict_to(&self, keep: &[usize]) -> BinaryMatroid {
        let rep = self.rep.select_columns(keep);
        BinaryMatroid {
            columns: rep.columns(),
            rep,
            labels: self.select_labels(keep),
        }
    }

    fn select_labels(&self, keep: &[usize]) -> Option<Vec<String>> {
        self.labels
            .as_ref()
            .map(|l| keep.iter().map(|&j| l[j].clone()).collect())
    }

    /// Partition of the ground set into connected components, each sorted,
    /// ordered by least element.
    ///
    /// Uses the fundamental-circuit graph of a greedy basis: two elements lie
    /// in the same component iff they are joined in that bipartite graph.
    pub fn components(&self) -> Vec<ElementSet> {
        let n = self.ground_size();
        let mut basis_elems = Vec::new();
        let mut xb = XorBasis::new(self.rep.rows());
        for e in 0..n {
            if xb.insert(&self.columns[e]) {
                basis_elems.push(e);
            }
        }
        let bmat = GF2Matrix::from_columns(
            self.rep.rows(),
            &basis_elems
                .iter()
                .map(|&b| self.columns[b].clone())
                .collect::<Vec<_>>(),
        )
        .expect("column lengths agree");
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        let in_basis: HashSet<usize> = basis_elems.iter().copied().collect();
        for e in 0..n {
            if in_basis.contains(&e) {
                continue;
            }
            let coeffs = bmat
                .solve(&self.columns[e])
                .expect("dimensions agree")
                .expect("basis spans every column");
            for i in coeffs.ones() {
                let (a, b) = (find(&mut parent, e), find(&mut parent, basis_elems[i]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for e in 0..n {
            let r = find(&mut parent, e);
            groups.entry(r).or_default().push(e);
        }
        let mut comps: Vec<ElementSet> = groups
            .into_values()
            .map(|v| ElementSet::from_indices(n, &v).expect("in range"))
            .collect();
        comps.sort_by_key(|c| c.first());
        comps
    }

    /// Connected in the matroid sense; the empty matroid counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn s(m: &BinaryMatroid, v: &[usize]) -> ElementSet {
        m.set(v).unwrap()
    }

    #[test]
    fn rank_examples() {
        let m = k4();
        assert_eq!(m.rank_of(&s(&m, &[0, 1, 3])), 2);
        assert_eq!(m.rank_of(&m.empty_set()), 0);
        assert_eq!(m.rank_of(&m.ground()), 3);
    }

    #[test]
    fn closure_examples() {
        let m = k4();
        assert!(m.closure(&m.empty_set()).is_empty());
        let tri = s(&m, &[0, 1, 3]);
        assert_eq!(m.closure(&tri), tri);
        assert_eq!(m.closure(&s(&m, &[0, 1, 2])), m.ground());
    }

    #[test]
    fn circuit_and_cycle_examples() {
        let m = k4();
        assert!(m.is_circuit(&s(&m, &[0, 1, 3])));
        assert!(!m.is_circuit(&s(&m, &[0, 1])));
        assert!(!m.is_circuit(&s(&m, &[0, 1, 3, 2])));
        assert!(m.is_cycle(&m.empty_set()));
        // 12 23 34 14: a 4-cycle
        assert!(m.is_cycle(&s(&m, &[0, 3, 5, 2])));
        assert!(!m.is_cycle(&s(&m, &[4])));
    }

    #[test]
    fn circuit_enumeration_examples() {
        let c = k4().circuits(None);
        assert_eq!(c.len(), 7);
        assert_eq!(c.iter().filter(|x| x.len() == 3).count(), 4);
        assert_eq!(c.iter().filter(|x| x.len() == 4).count(), 3);
        assert!(c.windows(2).all(|w| w[0] < w[1]));

        let free = BinaryMatroid::new(GF2Matrix::identity(3));
        assert!(free.circuits(None).is_empty());
        assert_eq!(free.circumference(), Err(Error::CircumferenceUndefined));

        let tt = two_triangles();
        let c = tt.circuits(None);
        assert_eq!(c, vec![s(&tt, &[0, 1, 2]), s(&tt, &[3, 4, 5])]);
        assert_eq!(k4().circuits(Some(3)).len(), 4);
    }

    #[test]
    fn least_circuit_matches_enumeration() {
        let p = prism();
        for within in [
            p.ground(),
            s(&p, &[0, 2, 3, 5, 6, 8]),
            s(&p, &[1, 2, 4, 5, 7, 8, 6]),
        ] {
            let sub: Vec<usize> = within.iter().collect();
            let expected = p
                .restrict_to(&sub)
                .circuits(None)
                .into_iter()
                .map(|c| s(&p, &c.iter().map(|i| sub[i]).collect::<Vec<_>>()))
                .min();
            assert_eq!(p.least_circuit_in(&within), expected);
        }
        assert_eq!(p.least_circuit_in(&s(&p, &[0, 1, 6])), None);
    }

    #[test]
    fn circumference_examples() {
        assert_eq!(k4().circumference(), Ok(4));
        assert_eq!(two_triangles().circumference(), Ok(3));
        assert_eq!(prism().circumference(), Ok(6));
    }

    #[test]
    fn connectivity_examples() {
        let m = k4();
        assert_eq!(m.lambda(&m.empty_set()), 0);
        assert_eq!(m.lambda(&s(&m, &[0, 1, 3])), 2);
        let tt = two_triangles();
        assert_eq!(tt.lambda(&s(&tt, &[0, 1, 2])), 0);

        let p = prism();
        let (t1, t2) = (s(&p, &[0, 1, 2]), s(&p, &[3, 4, 5]));
        assert_eq!(p.local_pi(&p.empty_set(), &t2), 0);
        assert_eq!(p.local_pi(&t1, &t2), 0);
        assert_eq!(m.local_pi(&s(&m, &[0, 1, 3]), &s(&m, &[0, 2, 4])), 1);

        assert_eq!(p.is_skew(&t1, &t2), Ok(true));
        assert_eq!(m.is_skew(&s(&m, &[0, 1, 3]), &s(&m, &[2, 4, 5])), Ok(false));
        assert_eq!(m.is_skew(&m.empty_set(), &s(&m, &[2])), Ok(true));
        assert!(m.is_skew(&s(&m, &[0]), &s(&m, &[0, 1])).is_err());
    }

    #[test]
    fn components_of_direct_sum() {
        let tt = two_triangles();
        assert_eq!(tt.components().len(), 2);
        assert!(!tt.is_connected());
        assert!(k4().is_connected());
        assert!(prism().is_connected());
    }

    #[test]
    fn labels_must_be_unique() {
        let rep = GF2Matrix::identity(2);
        assert!(BinaryMatroid::with_labels(rep.clone(), vec!["a".into(), "a".into()]).is_err());
        let m = BinaryMatroid::with_labels(rep, vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(m.contract_element(0).label(0), Some("b"));
    }
}
