use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::{BinaryMatroid, ElementSet, MinorTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scenario {
    S1,
    S2,
    DirectBound,
}

/// How the witness was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessPath {
    SubsetSearch,
    Pipeline,
    ExhaustiveFallback,
    Enumeration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `C` with `C Δ C1` and `C Δ C2` circuits.
    S1 {
        cycle: ElementSet,
    },
    /// Disjoint `C1′`, `C2′` with `C1 Δ C2 Δ C_i′` circuits.
    S2 {
        c1p: ElementSet,
        c2p: ElementSet,
    },
    None,
}

/// The sizes behind `2c ≥ |C1| + |C2| + k`.
///
/// `circuit_sizes` are circuits of `N`, so each is at most `c(N)`; their sum
/// equals `|C1| + |C2| + excess`, and `excess ≥ k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arithmetic {
    pub c1_len: usize,
    pub c2_len: usize,
    pub k: usize,
    pub circuit_sizes: Vec<usize>,
    pub excess: usize,
    /// `|C1| + |C2| + k`.
    pub required: usize,
    /// Twice the best known lower bound on `c(N)`.
    pub twice_c: usize,
}

impl Arithmetic {
    fn compute(
        c1: &ElementSet,
        c2: &ElementSet,
        k: usize,
        w: &Witness,
        c_n: Option<usize>,
    ) -> Self {
        let cc = c1.union(c2);
        let (circuit_sizes, excess) = match w {
            Witness::S1 { cycle } => (
                vec![cycle.sym_diff(c1).len(), cycle.sym_diff(c2).len()],
                2 * cycle.difference(&cc).len(),
            ),
            Witness::S2 { c1p, c2p } => {
                let base = c1.sym_diff(c2);
                (
                    vec![base.sym_diff(c1p).len(), base.sym_diff(c2p).len()],
                    cc.sym_diff(&c1p.union(c2p)).len(),
                )
            }
            Witness::None => (Vec::new(), 0),
        };
        let largest = circuit_sizes.iter().copied().max().unwrap_or(0);
        Self {
            c1_len: c1.len(),
            c2_len: c2.len(),
            k,
            excess,
            required: c1.len() + c2.len() + k,
            twice_c: 2 * c_n.unwrap_or(largest).max(largest),
            circuit_sizes,
        }
    }
}

/// Checkable evidence that `|C1| + |C2| ≤ 2c(N) − k` on the reduced minor `N`.
///
/// All sets are indexed by the elements of `N = trace.result()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub scenario: Scenario,
    pub k: usize,
    pub c1: ElementSet,
    pub c2: ElementSet,
    pub witness: Witness,
    /// `c(N)` by enumeration, when `N` is small enough.
    pub circumference_n: Option<usize>,
    /// `c(M)` by enumeration, when `M` is small enough.
    pub circumference_m: Option<usize>,
    pub arithmetic: Arithmetic,
    pub trace: MinorTrace,
    pub path: WitnessPath,
    /// Decomposition rule used for triples.
    pub convention: String,
    pub diagnostics: Vec<String>,
}

pub(crate) const CONVENTION: &str =
    "lexicographically least circuit extracted first; G1 holds x of the least index";

impl Certificate {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        scenario: Scenario,
        k: usize,
        c1: ElementSet,
        c2: ElementSet,
        witness: Witness,
        circumference_n: Option<usize>,
        trace: MinorTrace,
        path: WitnessPath,
        diagnostics: Vec<String>,
    ) -> Self {
        let arithmetic = Arithmetic::compute(&c1, &c2, k, &witness, circumference_n);
        Self {
            scenario,
            k,
            c1,
            c2,
            witness,
            circumference_n,
            circumference_m: None,
            arithmetic,
            trace,
            path,
            convention: CONVENTION.to_string(),
            diagnostics,
        }
    }

    pub fn n(&self) -> &BinaryMatroid {
        self.trace.result()
    }

    /// Re-derives every claim from rank computations and set sizes on `N`.
    pub fn verify(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvariantViolation(format!("certificate: {m}")));
        let n = self.n();
        let (c1, c2) = (&self.c1, &self.c2);
        if !n.is_circuit(c1) || !n.is_circuit(c2) || !c1.is_disjoint(c2) {
            return fail("C1 and C2 must be disjoint circuits of N".into());
        }
        if n.local_pi(c1, c2) != 0 {
            return fail("C1 and C2 are not skew".into());
        }
        let expected = match (&self.scenario, &self.witness) {
            (Scenario::S1, w @ Witness::S1 { cycle }) => {
                if !n.is_cycle(cycle) {
                    return fail("S1 witness is not a cycle".into());
                }
                if !n.is_circuit(&cycle.sym_diff(c1)) || !n.is_circuit(&cycle.sym_diff(c2)) {
                    return fail("C Δ C1 and C Δ C2 must be circuits".into());
                }
                if 2 * cycle.difference(&c1.union(c2)).len() < self.k {
                    return fail("|C − (C1 ∪ C2)| < k/2".into());
                }
                w
            }
            (Scenario::S2, w @ Witness::S2 { c1p, c2p }) => {
                if !n.is_cycle(c1p) || !n.is_cycle(c2p) || !c1p.is_disjoint(c2p) {
                    return fail("S2 witnesses must be disjoint cycles".into());
                }
                let base = c1.sym_diff(c2);
                if !n.is_circuit(&base.sym_diff(c1p)) || !n.is_circuit(&base.sym_diff(c2p)) {
                    return fail("C1 Δ C2 Δ C_i' must be circuits".into());
                }
                if c1.union(c2).sym_diff(&c1p.union(c2p)).len() < self.k {
                    return fail("|(C1 ∪ C2) Δ (C1' ∪ C2')| < k".into());
                }
                w
            }
            (Scenario::DirectBound, w @ Witness::None) => {
                if self.circumference_n.is_none() {
                    return fail("a direct bound needs c(N)".into());
                }
                w
            }
            _ => return fail("scenario and witness disagree".into()),
        };
        if let Some(c) = self.circumference_n {
            let actual = n.circumference()?;
            if actual != c {
                return fail(format!("recorded c(N) = {c}, enumeration gives {actual}"));
            }
        }
        let again = Arithmetic::compute(c1, c2, self.k, expected, self.circumference_n);
        if again != self.arithmetic {
            return fail("recorded arithmetic does not match the sets".into());
        }
        let a = &self.arithmetic;
        let sum: usize = a.circuit_sizes.iter().sum();
        if self.scenario != Scenario::DirectBound
            && (sum != a.c1_len + a.c2_len + a.excess || a.excess < self.k)
        {
            return fail("size identity or excess bound fails".into());
        }
        if a.circuit_sizes.iter().any(|&s| 2 * s > a.twice_c) || sum > a.twice_c {
            return fail("a witness circuit exceeds the recorded circumference".into());
        }
        if a.twice_c < a.required {
            return fail(format!(
                "2c = {} < |C1| + |C2| + k = {}",
                a.twice_c, a.required
            ));
        }
        if let (Some(cm), Some(cn)) = (self.circumference_m, self.circumference_n) {
            if cm < cn {
                return fail("c(M) < c(N) contradicts minor monotonicity".into());
            }
        }
        Ok(())
    }

    /// [`verify`](Self::verify), plus a check that replaying the trace on `m`
    /// reproduces `N`.
    pub fn verify_against(&self, m: &BinaryMatroid) -> Result<()> {
        if &self.trace.replay(m)? != self.n() {
            return Err(Error::InvariantViolation(
                "certificate trace does not reproduce its minor".into(),
            ));
        }
        if let Some(cm) = self.circumference_m {
            if m.circumference()? != cm {
                return Err(Error::InvariantViolation("recorded c(M) is wrong".into()));
            }
        }
        self.verify()
    }

    /// Sets of the certificate as original element indices of the matroid
    /// the trace starts from.
    pub fn to_original(&self, s: &ElementSet) -> ElementSet {
        self.trace.to_original(s)
    }
}
