//! Stable set or clique in an interval graph.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IntervalSplit {
    /// Indices of `a` pairwise disjoint intervals, left to right.
    Stable { members: Vec<usize> },
    /// Indices of `b` intervals that all contain `point`.
    Clique { members: Vec<usize>, point: usize },
    Insufficient { max_stable: usize, max_clique: usize },
}

/// Intervals are closed, `(left, right)` with `left <= right`. Tries the
/// stable side first (greedy by right end, which is optimal), then the
/// deepest point. With at least `a * b` intervals one of the two succeeds,
/// since interval graphs are perfect.
pub fn interval_split(family: &[(usize, usize)], a: usize, b: usize) -> IntervalSplit {
    assert!(family.iter().all(|&(l, r)| l <= r), "interval with left > right");
    let mut by_right: Vec<usize> = (0..family.len()).collect();
    by_right.sort_by_key(|&k| (family[k].1, family[k].0, k));
    let mut stable = Vec::new();
    let mut reach: Option<usize> = None;
    for k in by_right {
        if reach.is_none_or(|r| family[k].0 > r) {
            stable.push(k);
            reach = Some(family[k].1);
        }
    }
    if stable.len() >= a {
        stable.truncate(a);
        return IntervalSplit::Stable { members: stable };
    }
    // the deepest point is always some left end
    let mut best: Option<(usize, usize)> = None;
    for &(l, _) in family {
        let depth = family.iter().filter(|&&(x, y)| x <= l && l <= y).count();
        if best.is_none_or(|(d, p)| depth > d || (depth == d && l < p)) {
            best = Some((depth, l));
        }
    }
    let (depth, point) = best.unwrap_or((0, 0));
    if depth >= b {
        let members = (0..family.len()).filter(|&k| family[k].0 <= point && point <= family[k].1).take(b).collect();
        return IntervalSplit::Clique { members, point };
    }
    IntervalSplit::Insufficient { max_stable: stable.len(), max_clique: depth }
}
