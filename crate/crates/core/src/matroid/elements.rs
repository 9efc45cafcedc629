use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::GF2Vector;

/// A subset of a ground set `{0, …, ground_size − 1}`.
///
/// Stored as a characteristic vector, which makes symmetric difference (cycle
/// addition) a word-parallel XOR. Iteration is always in ascending order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: GF2Vector,
}

impl ElementSet {
    pub fn empty(ground_size: usize) -> Self {
        Self {
            bits: GF2Vector::zeros(ground_size),
        }
    }

    pub fn full(ground_size: usize) -> Self {
        Self::empty(ground_size).complement()
    }

    pub fn from_indices(ground_size: usize, indices: &[usize]) -> Result<Self> {
        let mut s = Self::empty(ground_size);
        for &i in indices {
            if i >= ground_size {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    ground_size,
                });
            }
            s.bits.set(i, true);
        }
        Ok(s)
    }

    pub fn singleton(ground_size: usize, e: usize) -> Result<Self> {
        Self::from_indices(ground_size, &[e])
    }

    pub fn from_bits(bits: GF2Vector) -> Self {
        Self { bits }
    }

    /// The characteristic vector.
    pub fn bits(&self) -> &GF2Vector {
        &self.bits
    }

    #[inline]
    pub fn ground_size(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        e < self.ground_size() && self.bits.get(e)
    }

    pub fn insert(&mut self, e: usize) {
        self.bits.set(e, true);
    }

    pub fn remove(&mut self, e: usize) {
        self.bits.set(e, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.first_one()
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.check_same_ground(other);
        let mut b = self.bits.clone();
        b.or_assign(&other.bits);
        ElementSet { bits: b }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.check_same_ground(other);
        let mut b = self.bits.clone();
        b.and_assign(&other.bits);
        ElementSet { bits: b }
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.check_same_ground(other);
        let mut b = self.bits.clone();
        b.and_not_assign(&other.bits);
        ElementSet { bits: b }
    }

    /// Symmetric difference; for cycles of a binary matroid this is cycle addition.
    pub fn sym_diff(&self, other: &ElementSet) -> ElementSet {
        self.check_same_ground(other);
        let mut b = self.bits.clone();
        b.xor_assign(&other.bits);
        ElementSet { bits: b }
    }

    pub fn complement(&self) -> ElementSet {
        ElementSet {
            bits: self.bits.complement(),
        }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.check_same_ground(other);
        self.bits.is_subset_of(&other.bits)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.check_same_ground(other);
        !self.bits.intersects(&other.bits)
    }

    fn check_same_ground(&self, other: &ElementSet) {
        assert_eq!(
            self.ground_size(),
            other.ground_size(),
            "element sets over different ground sets"
        );
    }
}

impl Ord for ElementSet {
    /// Lexicographic order on the ascending member lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter()
            .cmp(other.iter())
            .then(self.ground_size().cmp(&other.ground_size()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The set relations used to describe how two circuit pieces sit inside a
/// common universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SetRelation {
    /// `X ∩ Y = ∅`.
    pub parallel: bool,
    /// `X ⊂ Y` or `Y ⊂ X`, strictly.
    pub nested_strict: bool,
    /// `X ⊆ Y` or `Y ⊆ X`.
    pub nested_or_equal: bool,
    /// `(U − X) ∩ (U − Y) = ∅`.
    pub bowtie: bool,
    /// `parallel || bowtie`.
    pub bowtie_or_parallel: bool,
}

/// Classifies `x` and `y` relative to `universe`. Both are expected to lie
/// inside `universe`.
pub fn set_relation(x: &ElementSet, y: &ElementSet, universe: &ElementSet) -> SetRelation {
    debug_assert!(x.is_subset(universe) && y.is_subset(universe));
    let parallel = x.is_disjoint(y);
    let x_in_y = x.is_subset(y);
    let y_in_x = y.is_subset(x);
    let nested_or_equal = x_in_y || y_in_x;
    let nested_strict = nested_or_equal && x != y;
    let bowtie = universe.difference(x).is_disjoint(&universe.difference(y));
    SetRelation {
        parallel,
        nested_strict,
        nested_or_equal,
        bowtie,
        bowtie_or_parallel: parallel || bowtie,
    }
}
