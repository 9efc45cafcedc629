#![allow(dead_code, clippy::needless_range_loop)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use skewlink::cli::{generate_instance, GenSpec};
use skewlink::gf2::GF2Matrix;
use skewlink::linkage::ReducedInstance;
use skewlink::matroid::{BinaryMatroid, ElementSet};

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> GF2Matrix {
    let mut a = GF2Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            a.set(r, c, rng.gen_bool(0.5));
        }
    }
    a
}

pub fn random_matroid(rng: &mut ChaCha8Rng, max_rows: usize, max_cols: usize) -> BinaryMatroid {
    let rows = rng.gen_range(1..=max_rows);
    let cols = rng.gen_range(1..=max_cols);
    BinaryMatroid::new(random_matrix(rng, rows, cols))
}

/// Row rank by plain elimination on byte rows.
pub fn naive_rank(a: &GF2Matrix) -> usize {
    let mut m: Vec<Vec<u8>> = (0..a.rows())
        .map(|r| (0..a.cols()).map(|c| a.get(r, c) as u8).collect())
        .collect();
    let mut rank = 0;
    for c in 0..a.cols() {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] == 1 {
                for j in 0..a.cols() {
                    m[r][j] ^= m[rank][j];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Ordered pairs of disjoint skew circuits, first circuit lexicographically smaller.
pub fn skew_pairs(m: &BinaryMatroid) -> Vec<(ElementSet, ElementSet)> {
    let cs = m.circuits(None);
    let mut out = Vec::new();
    for (i, a) in cs.iter().enumerate() {
        for b in &cs[i + 1..] {
            if a.is_disjoint(b) && m.local_pi(a, b) == 0 {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

pub fn named(spec: GenSpec) -> (BinaryMatroid, ElementSet, ElementSet) {
    let f = generate_instance(spec).unwrap();
    let (c1, c2) = (
        f.named("C1").unwrap().clone(),
        f.named("C2").unwrap().clone(),
    );
    (f.matroid, c1, c2)
}

pub fn fano() -> BinaryMatroid {
    BinaryMatroid::new(GF2Matrix::from_strs(&["1010101", "0110011", "0001111"]).unwrap())
}

pub fn k4() -> BinaryMatroid {
    BinaryMatroid::from_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// `base` with `extra` random columns, all columns shuffled.
fn padded(rng: &mut ChaCha8Rng, base: &GF2Matrix, extra: usize) -> GF2Matrix {
    let n = base.cols() + extra;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut a = GF2Matrix::zeros(base.rows(), n);
    for i in 0..base.rows() {
        for j in 0..n {
            let v = if j < base.cols() {
                base.get(i, j)
            } else {
                rng.gen_bool(0.5)
            };
            a.set(i, perm[j], v);
        }
    }
    a
}

/// Profile instance with `A1 ⊇ T_t` and `A2 ⊇ I_t` or `I_t^c`, padded with
/// random columns; `None` when the rows do not give a valid instance.
pub fn random_profile_instance(rng: &mut ChaCha8Rng, t: usize) -> Option<ReducedInstance> {
    let mut tri = GF2Matrix::zeros(t, t);
    let mut id = GF2Matrix::zeros(t, t);
    let complement = rng.gen_bool(0.5);
    for i in 0..t {
        for j in 0..t {
            tri.set(i, j, j <= i);
            id.set(i, j, (i == j) != complement);
        }
    }
    let (e1, e2) = (rng.gen_range(1..3), rng.gen_range(1..3));
    let a1 = padded(rng, &tri, e1);
    let a2 = padded(rng, &id, e2);
    ReducedInstance::from_profiles(&a1, &a2).ok()
}
