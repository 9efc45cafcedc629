use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;

/// `(2ℓ)^(2^ℓ)`, the row count that forces one of the three patterns.
pub fn beta(l: u32) -> Result<BigUint> {
    if l == 0 || l > 24 {
        return Err(Error::InvalidArgument(format!(
            "beta is evaluated for 1 <= l <= 24, got {l}"
        )));
    }
    Ok(BigUint::from(2 * l).pow(1u32 << l))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    Identity,
    ComplementIdentity,
    LowerTriangular,
}

impl PatternKind {
    pub const SEARCH_ORDER: [PatternKind; 3] = [
        PatternKind::Identity,
        PatternKind::ComplementIdentity,
        PatternKind::LowerTriangular,
    ];

    fn entry(self, i: usize, j: usize) -> bool {
        match self {
            PatternKind::Identity => i == j,
            PatternKind::ComplementIdentity => i != j,
            PatternKind::LowerTriangular => j <= i,
        }
    }
}

/// `I_ℓ`, its complement, or `T_ℓ` (1 at `(i, j)` iff `j ≤ i`).
pub fn pattern_matrix(kind: PatternKind, l: usize) -> GF2Matrix {
    let mut m = GF2Matrix::zeros(l, l);
    for i in 0..l {
        for j in 0..l {
            m.set(i, j, kind.entry(i, j));
        }
    }
    m
}

/// An occurrence of a pattern: `pattern[i][j] = a[row_indices[row_perm[i]]][col_indices[col_perm[j]]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternHit {
    pub kind: PatternKind,
    pub order: usize,
    pub row_indices: Vec<usize>,
    pub col_indices: Vec<usize>,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

impl PatternHit {
    /// Selected rows of `a`, listed in pattern order.
    pub fn rows_in_pattern_order(&self) -> Vec<usize> {
        self.row_perm.iter().map(|&p| self.row_indices[p]).collect()
    }

    pub fn cols_in_pattern_order(&self) -> Vec<usize> {
        self.col_perm.iter().map(|&p| self.col_indices[p]).collect()
    }

    /// Re-checks the hit entry by entry against `a`.
    pub fn verify(&self, a: &GF2Matrix) -> bool {
        let l = self.order;
        let is_perm = |p: &[usize]| {
            let mut s = p.to_vec();
            s.sort_unstable();
            s == (0..l).collect::<Vec<_>>()
        };
        let sorted = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if self.row_indices.len() != l
            || self.col_indices.len() != l
            || !is_perm(&self.row_perm)
            || !is_perm(&self.col_perm)
            || !sorted(&self.row_indices)
            || !sorted(&self.col_indices)
            || self.row_indices.last().is_some_and(|&r| r >= a.rows())
            || self.col_indices.last().is_some_and(|&c| c >= a.cols())
        {
            return false;
        }
        let (rows, cols) = (self.rows_in_pattern_order(), self.cols_in_pattern_order());
        (0..l).all(|i| (0..l).all(|j| a.get(rows[i], cols[j]) == self.kind.entry(i, j)))
    }
}

fn check_simple(a: &GF2Matrix) -> Result<()> {
    let mut order: Vec<usize> = (0..a.rows()).collect();
    order.sort_by(|&x, &y| a.row(x).cmp(a.row(y)).then(x.cmp(&y)));
    for w in order.windows(2) {
        if a.row(w[0]) == a.row(w[1]) {
            return Err(Error::NotSimple(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    Ok(())
}

/// Searches a simple matrix for `I_ℓ`, `I_ℓ^c`, then `T_ℓ` as a submatrix up
/// to row and column permutation.
///
/// Exact backtracking: pattern row `i` is matched to a pair (row, column)
/// consistent with every earlier pair. For the two symmetric patterns the
/// rows are taken in ascending order.
pub fn find_unavoidable(a: &GF2Matrix, l: usize) -> Result<Option<PatternHit>> {
    check_simple(a)?;
    if l == 0 {
        return Err(Error::InvalidArgument(
            "pattern order must be positive".into(),
        ));
    }
    for kind in PatternKind::SEARCH_ORDER {
        let mut rows = Vec::with_capacity(l);
        let mut cols = Vec::with_capacity(l);
        if search(a, kind, l, &mut rows, &mut cols) {
            return Ok(Some(package(kind, rows, cols)));
        }
    }
    Ok(None)
}

fn search(
    a: &GF2Matrix,
    kind: PatternKind,
    l: usize,
    rows: &mut Vec<usize>,
    cols: &mut Vec<usize>,
) -> bool {
    let i = rows.len();
    if i == l {
        return true;
    }
    let symmetric = kind != PatternKind::LowerTriangular;
    let start = if symmetric {
        rows.last().map_or(0, |&r| r + 1)
    } else {
        0
    };
    for r in start..a.rows() {
        if rows.contains(&r) {
            continue;
        }
        // row r must agree with the pattern on every column chosen so far
        if !cols
            .iter()
            .enumerate()
            .all(|(j, &c)| a.get(r, c) == kind.entry(i, j))
        {
            continue;
        }
        for c in 0..a.cols() {
            if cols.contains(&c) || a.get(r, c) != kind.entry(i, i) {
                continue;
            }
            if !rows
                .iter()
                .enumerate()
                .all(|(j, &rj)| a.get(rj, c) == kind.entry(j, i))
            {
                continue;
            }
            rows.push(r);
            cols.push(c);
            if search(a, kind, l, rows, cols) {
                return true;
            }
            rows.pop();
            cols.pop();
        }
    }
    false
}

fn package(kind: PatternKind, rows: Vec<usize>, cols: Vec<usize>) -> PatternHit {
    fn split(v: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
        let mut sorted = v.clone();
        sorted.sort_unstable();
        let perm = v
            .iter()
            .map(|x| sorted.binary_search(x).expect("present"))
            .collect();
        (sorted, perm)
    }
    let (row_indices, row_perm) = split(rows);
    let (col_indices, col_perm) = split(cols);
    PatternHit {
        kind,
        order: row_indices.len(),
        row_indices,
        col_indices,
        row_perm,
        col_perm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn beta_values() {
        assert_eq!(beta(1).unwrap(), BigUint::from(4u32));
        assert_eq!(beta(2).unwrap(), BigUint::from(256u32));
        assert_eq!(beta(3).unwrap(), BigUint::from(1_679_616u32));
        assert!(beta(0).is_err());
    }

    #[test]
    fn identity_found_in_identity() {
        let a = GF2Matrix::identity(3);
        let hit = find_unavoidable(&a, 2).unwrap().unwrap();
        assert_eq!(hit.kind, PatternKind::Identity);
        assert_eq!(
            (hit.row_indices.clone(), hit.col_indices.clone()),
            (vec![0, 1], vec![0, 1])
        );
        assert!(hit.verify(&a));
    }

    #[test]
    fn triangle_found_in_triangle() {
        let a = pattern_matrix(PatternKind::LowerTriangular, 3);
        let hit = find_unavoidable(&a, 2).unwrap().unwrap();
        assert_eq!(hit.kind, PatternKind::LowerTriangular);
        assert!(hit.verify(&a));
        // T_3 has no I_3 or I_3^c but is its own hit
        let hit = find_unavoidable(&a, 3).unwrap().unwrap();
        assert_eq!(hit.kind, PatternKind::LowerTriangular);
    }

    #[test]
    fn complement_identity_and_permutations() {
        // I_3^c with rows and columns shuffled, plus an all-zero row
        let a = GF2Matrix::from_strs(&["0000", "1101", "0111", "1110"]).unwrap();
        let hit = find_unavoidable(&a, 3).unwrap().unwrap();
        assert!(hit.verify(&a));
        assert_eq!(hit.kind, PatternKind::ComplementIdentity);
    }

    #[test]
    fn rejects_repeated_rows_and_reports_absence() {
        let a = GF2Matrix::from_strs(&["10", "01", "10"]).unwrap();
        assert_eq!(find_unavoidable(&a, 2), Err(Error::NotSimple(0, 2)));
        let a = GF2Matrix::from_strs(&["00", "10"]).unwrap();
        assert_eq!(find_unavoidable(&a, 2), Ok(None));
    }

    #[test]
    fn tall_random_matrices_always_hit() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let mut rows = std::collections::BTreeSet::new();
            while rows.len() < 256 {
                rows.insert(rng.gen_range(0u32..1 << 10));
            }
            let strs: Vec<String> = rows.iter().map(|r| format!("{r:010b}")).collect();
            let refs: Vec<&str> = strs.iter().map(String::as_str).collect();
            let a = GF2Matrix::from_strs(&refs).unwrap();
            let hit = find_unavoidable(&a, 2)
                .unwrap()
                .expect("forced at 256 rows");
            assert!(hit.verify(&a));
        }
    }
}
