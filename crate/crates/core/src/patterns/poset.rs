use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A strict partial order on `0..n`, as `less[a][b]` meaning `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictOrder {
    less: Vec<Vec<bool>>,
}

impl StrictOrder {
    /// Validates irreflexivity and transitivity (asymmetry follows).
    #[allow(clippy::needless_range_loop)]
    pub fn new(less: Vec<Vec<bool>>) -> Result<Self> {
        let n = less.len();
        if let Some(r) = less.iter().position(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row {r} of the relation has the wrong length"
            )));
        }
        for a in 0..n {
            if less[a][a] {
                return Err(Error::NotPartialOrder(format!("{a} < {a}")));
            }
            for b in 0..n {
                if !less[a][b] {
                    continue;
                }
                for c in 0..n {
                    if less[b][c] && !less[a][c] {
                        return Err(Error::NotPartialOrder(format!(
                            "{a} < {b} < {c} but not {a} < {c}"
                        )));
                    }
                }
            }
        }
        Ok(Self { less })
    }

    /// Builds the relation from a predicate and validates it.
    pub fn from_fn(n: usize, lt: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::new((0..n).map(|a| (0..n).map(|b| lt(a, b)).collect()).collect())
    }

    pub fn len(&self) -> usize {
        self.less.len()
    }

    pub fn is_empty(&self) -> bool {
        self.less.is_empty()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less[a][b] || self.less[b][a]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainKind {
    Chain,
    Antichain,
}

/// A chain or an antichain with at least `⌈√n⌉` items.
///
/// Heights come from a longest-path pass; a longest chain is returned when
/// it is long enough, otherwise the largest level of the height function,
/// which is an antichain of size at least `⌈n / h⌉`.
pub fn chain_or_antichain(order: &StrictOrder) -> (ChainKind, Vec<usize>) {
    let n = order.len();
    if n == 0 {
        return (ChainKind::Chain, Vec::new());
    }
    // process in an order compatible with `<`: fewer predecessors first
    let mut topo: Vec<usize> = (0..n).collect();
    topo.sort_by_key(|&v| (0..n).filter(|&u| order.lt(u, v)).count());
    let mut height = vec![1usize; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for (pos, &v) in topo.iter().enumerate() {
        for &u in &topo[..pos] {
            if order.lt(u, v) && height[u] + 1 > height[v] {
                height[v] = height[u] + 1;
                pred[v] = Some(u);
            }
        }
    }
    let need = (n as f64).sqrt().ceil() as usize;
    let top = (0..n)
        .max_by_key(|&v| (height[v], std::cmp::Reverse(v)))
        .expect("n > 0");
    let h = height[top];
    if h >= need {
        let mut chain = vec![top];
        while let Some(p) = pred[*chain.last().expect("nonempty")] {
            chain.push(p);
        }
        chain.reverse();
        return (ChainKind::Chain, chain);
    }
    let mut levels = vec![Vec::new(); h + 1];
    for v in 0..n {
        levels[height[v]].push(v);
    }
    let best = levels
        .into_iter()
        .max_by_key(|l| (l.len(), std::cmp::Reverse(l.first().copied())))
        .expect("at least one level");
    (ChainKind::Antichain, best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_order_gives_chain() {
        let o = StrictOrder::from_fn(9, |a, b| a < b).unwrap();
        assert_eq!(chain_or_antichain(&o), (ChainKind::Chain, (0..9).collect()));
    }

    #[test]
    fn empty_relation_gives_antichain() {
        let o = StrictOrder::from_fn(9, |_, _| false).unwrap();
        assert_eq!(
            chain_or_antichain(&o),
            (ChainKind::Antichain, (0..9).collect())
        );
    }

    #[test]
    fn divisibility_poset() {
        // 1..=30 under strict divisibility
        let o = StrictOrder::from_fn(30, |a, b| a != b && (b + 1) % (a + 1) == 0).unwrap();
        let (kind, items) = chain_or_antichain(&o);
        assert!(items.len() >= 6);
        for (i, &a) in items.iter().enumerate() {
            for &b in &items[i + 1..] {
                match kind {
                    ChainKind::Chain => assert!(o.lt(a, b)),
                    ChainKind::Antichain => assert!(!o.comparable(a, b)),
                }
            }
        }
    }

    #[test]
    fn rejects_non_orders() {
        assert!(StrictOrder::new(vec![vec![true]]).is_err());
        let cyc = vec![
            vec![false, true, false],
            vec![false, false, true],
            vec![false, false, false],
        ];
        assert!(matches!(
            StrictOrder::new(cyc),
            Err(Error::NotPartialOrder(_))
        ));
    }
}
