use std::cell::RefCell;
use std::collections::HashMap;

/// A `q`-subset of `0..n` all of whose `r`-subsets get the same colour.
///
/// Exhaustive backtracking in lexicographic order; the first subset found is
/// returned. Colours are requested at most once per `r`-subset.
pub fn monochromatic_subset<C, F>(n: usize, r: usize, colors: F, q: usize) -> Option<Vec<usize>>
where
    C: Clone + Eq,
    F: Fn(&[usize]) -> C,
{
    monochromatic_subset_where(n, r, colors, q, |_| true)
}

/// As [`monochromatic_subset`], restricted to colours accepted by `admissible`.
pub(crate) fn monochromatic_subset_where<C, F, A>(
    n: usize,
    r: usize,
    colors: F,
    q: usize,
    admissible: A,
) -> Option<Vec<usize>>
where
    C: Clone + Eq,
    F: Fn(&[usize]) -> C,
    A: Fn(&C) -> bool,
{
    if r == 0 || r > q || q > n {
        return None;
    }
    let cache: RefCell<HashMap<Vec<usize>, C>> = RefCell::new(HashMap::new());
    let color = |s: &[usize]| -> C {
        if let Some(c) = cache.borrow().get(s) {
            return c.clone();
        }
        let c = colors(s);
        cache.borrow_mut().insert(s.to_vec(), c.clone());
        c
    };
    let mut chosen = Vec::with_capacity(q);
    let mut reference = None;
    grow(n, r, q, &color, &admissible, &mut chosen, &mut reference).then_some(chosen)
}

fn grow<C: Clone + Eq>(
    n: usize,
    r: usize,
    q: usize,
    color: &dyn Fn(&[usize]) -> C,
    admissible: &dyn Fn(&C) -> bool,
    chosen: &mut Vec<usize>,
    reference: &mut Option<C>,
) -> bool {
    if chosen.len() == q {
        return true;
    }
    let start = chosen.last().map_or(0, |&v| v + 1);
    // leave room for the remaining picks
    for v in start..=n - (q - chosen.len()) {
        let had_reference = reference.is_some();
        if fits(r, color, admissible, chosen, v, reference) {
            chosen.push(v);
            if grow(n, r, q, color, admissible, chosen, reference) {
                return true;
            }
            chosen.pop();
        }
        if !had_reference {
            *reference = None;
        }
    }
    false
}

/// Checks every `r`-subset formed by `v` and `r − 1` chosen elements.
fn fits<C: Clone + Eq>(
    r: usize,
    color: &dyn Fn(&[usize]) -> C,
    admissible: &dyn Fn(&C) -> bool,
    chosen: &[usize],
    v: usize,
    reference: &mut Option<C>,
) -> bool {
    if chosen.len() + 1 < r {
        return true;
    }
    let mut idx: Vec<usize> = (0..r - 1).collect();
    loop {
        let mut s: Vec<usize> = idx.iter().map(|&i| chosen[i]).collect();
        s.push(v);
        let c = color(&s);
        match reference {
            Some(rc) if *rc != c => return false,
            Some(_) => {}
            None => {
                if !admissible(&c) {
                    return false;
                }
                *reference = Some(c);
            }
        }
        // next (r − 1)-combination of positions in `chosen`
        let m = chosen.len();
        let mut i = r - 1;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < m - (r - 1 - i) {
                idx[i] += 1;
                for j in i + 1..r - 1 {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
