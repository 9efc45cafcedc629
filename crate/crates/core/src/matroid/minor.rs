use serde::{Deserialize, Serialize};

use super::{BinaryMatroid, ElementSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinorOp {
    Delete,
    Contract,
}

/// One delete or contract, naming the element by its index in the matroid the
/// trace started from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MinorStep {
    pub element: usize,
    pub op: MinorOp,
}

/// A sequence of single-element deletions and contractions together with the
/// resulting minor and the map from its elements back to the original ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorTrace {
    steps: Vec<MinorStep>,
    result: BinaryMatroid,
    /// `surviving[i]` is the original index of element `i` of `result`; ascending.
    surviving: Vec<usize>,
    original_ground: usize,
}

impl MinorTrace {
    pub fn identity(m: &BinaryMatroid) -> Self {
        Self {
            steps: Vec::new(),
            result: m.clone(),
            surviving: (0..m.ground_size()).collect(),
            original_ground: m.ground_size(),
        }
    }

    pub fn steps(&self) -> &[MinorStep] {
        &self.steps
    }

    pub fn result(&self) -> &BinaryMatroid {
        &self.result
    }

    pub fn into_result(self) -> BinaryMatroid {
        self.result
    }

    pub fn surviving(&self) -> &[usize] {
        &self.surviving
    }

    pub fn original_ground_size(&self) -> usize {
        self.original_ground
    }

    /// Index in `result` of an original element, if it survived.
    pub fn current_index(&self, original: usize) -> Option<usize> {
        self.surviving.binary_search(&original).ok()
    }

    fn locate(&self, original: usize) -> Result<usize> {
        self.current_index(original).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "element {original} is no longer present in the minor"
            ))
        })
    }

    /// Deletes an original element from the current minor.
    pub fn delete(&mut self, original: usize) -> Result<MinorOp> {
        let i = self.locate(original)?;
        self.result = self.result.delete_element(i);
        self.surviving.remove(i);
        self.steps.push(MinorStep {
            element: original,
            op: MinorOp::Delete,
        });
        Ok(MinorOp::Delete)
    }

    /// Contracts an original element; a loop is deleted instead and the step
    /// is recorded as a deletion. Returns the operation actually applied.
    pub fn contract(&mut self, original: usize) -> Result<MinorOp> {
        let i = self.locate(original)?;
        if self.result.column(i).is_zero() {
            return self.delete(original);
        }
        self.result = self.result.contract_element(i);
        self.surviving.remove(i);
        self.steps.push(MinorStep {
            element: original,
            op: MinorOp::Contract,
        });
        Ok(MinorOp::Contract)
    }

    pub fn apply(&mut self, original: usize, op: MinorOp) -> Result<MinorOp> {
        match op {
            MinorOp::Delete => self.delete(original),
            MinorOp::Contract => self.contract(original),
        }
    }

    /// Appends a trace that starts from this trace's result.
    pub fn then(mut self, next: &MinorTrace) -> Result<MinorTrace> {
        if next.original_ground != self.result.ground_size() {
            return Err(Error::DimensionMismatch(
                "trace does not start from this minor".into(),
            ));
        }
        // next's steps are numbered against our result's elements
        let base = self.surviving.clone();
        for step in &next.steps {
            let original = base[step.element];
            self.apply(original, step.op)?;
        }
        Ok(self)
    }

    /// Maps a set of original elements to the minor; every member must survive.
    pub fn to_result(&self, original: &ElementSet) -> Result<ElementSet> {
        let mut out = ElementSet::empty(self.result.ground_size());
        for e in original.iter() {
            out.insert(self.locate(e)?);
        }
        Ok(out)
    }

    /// Maps a set of minor elements back to original indices.
    pub fn to_original(&self, current: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.original_ground);
        for e in current.iter() {
            out.insert(self.surviving[e]);
        }
        out
    }

    /// Re-applies the recorded steps to `m` from scratch.
    pub fn replay(&self, m: &BinaryMatroid) -> Result<BinaryMatroid> {
        if m.ground_size() != self.original_ground {
            return Err(Error::DimensionMismatch(
                "trace was recorded on a matroid of a different size".into(),
            ));
        }
        let mut t = MinorTrace::identity(m);
        for s in &self.steps {
            let applied = t.apply(s.element, s.op)?;
            if applied != s.op {
                return Err(Error::InvariantViolation(format!(
                    "replaying contraction of element {} met a loop",
                    s.element
                )));
            }
        }
        Ok(t.result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::fixtures::prism;

    #[test]
    fn identity_minor() {
        let p = prism();
        let t = p.minor(&p.empty_set(), &p.empty_set()).unwrap();
        assert!(t.steps().is_empty());
        assert_eq!(t.result(), &p);
    }

    #[test]
    fn contract_matching_edge() {
        let p = prism();
        let t = p.minor(&p.empty_set(), &p.set(&[6]).unwrap()).unwrap();
        assert_eq!(t.result().ground_size(), 8);
        assert_eq!(t.result().rank(), 4);
        assert_eq!(t.surviving(), &[0, 1, 2, 3, 4, 5, 7, 8]);
    }

    #[test]
    fn contracting_a_triangle_turns_last_edge_into_deleted_loop() {
        let p = prism();
        let tri = p.set(&[0, 1, 2]).unwrap();
        let t = p.minor(&p.empty_set(), &tri).unwrap();
        assert_eq!(
            t.steps(),
            &[
                MinorStep {
                    element: 0,
                    op: MinorOp::Contract
                },
                MinorStep {
                    element: 1,
                    op: MinorOp::Contract
                },
                MinorStep {
                    element: 2,
                    op: MinorOp::Delete
                },
            ]
        );
        assert_eq!(t.result().rank(), p.rank() - p.rank_of(&tri));
        assert_eq!(t.replay(&p).unwrap(), *t.result());
    }

    #[test]
    fn overlapping_sets_rejected() {
        let p = prism();
        let a = p.set(&[0, 1]).unwrap();
        assert!(p.minor(&a, &p.set(&[1]).unwrap()).is_err());
    }

    #[test]
    fn composed_traces_map_back_to_original() {
        let p = prism();
        let first = p
            .minor(&p.set(&[8]).unwrap(), &p.set(&[6]).unwrap())
            .unwrap();
        let inner = first.result();
        // element 6 of the minor is original element 7
        let second = inner
            .minor(&inner.empty_set(), &inner.set(&[6]).unwrap())
            .unwrap();
        let composed = first.then(&second).unwrap();
        assert_eq!(composed.surviving(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(composed.steps().last().unwrap().element, 7);
        assert_eq!(composed.replay(&p).unwrap(), *second.result());
    }
}
