//! Exact minimum-cost selection of local multiplicities.

use std::collections::HashMap;

use crate::bilinear::CostModel;

/// Search caps on place degree and multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanBounds {
    pub max_degree: usize,
    pub max_mult: usize,
}

impl PlanBounds {
    pub fn for_degree(n: usize) -> Self {
        PlanBounds { max_degree: (2 * n).max(1), max_mult: 4 }
    }
}

/// Minimum of `Σ cost(d_i, u_i)` subject to `Σ d_i u_i >= need` and at most
/// `avail(d)` items of degree `d`. Among optimal multisets, returns the one
/// whose ascending `(d, u)` sequence is lexicographically least.
pub fn optimal_multiset(
    need: usize,
    avail: &dyn Fn(usize) -> usize,
    cost: &dyn CostModel,
    bounds: PlanBounds,
) -> Option<(Vec<(usize, usize)>, usize)> {
    let mut items: Vec<(usize, usize, usize, usize)> = Vec::new();
    for d in 1..=bounds.max_degree {
        let av = avail(d).min(need);
        if av == 0 {
            continue;
        }
        for u in 1..=bounds.max_mult {
            if let Some(c) = cost.cost(d, u) {
                items.push((d, u, c, av));
            }
        }
    }
    let mut memo: HashMap<(usize, usize, usize), Option<usize>> = HashMap::new();
    fn best(
        rem: usize,
        idx: usize,
        used: usize,
        items: &[(usize, usize, usize, usize)],
        memo: &mut HashMap<(usize, usize, usize), Option<usize>>,
    ) -> Option<usize> {
        if rem == 0 {
            return Some(0);
        }
        if idx == items.len() {
            return None;
        }
        if let Some(v) = memo.get(&(rem, idx, used)) {
            return *v;
        }
        let (d, u, c, av) = items[idx];
        let next_used = if idx + 1 < items.len() && items[idx + 1].0 == d { used } else { 0 };
        let mut out = best(rem, idx + 1, next_used, items, memo);
        if used < av {
            if let Some(v) = best(rem.saturating_sub(d * u), idx, used + 1, items, memo) {
                out = Some(out.map_or(v + c, |o| o.min(v + c)));
            }
        }
        memo.insert((rem, idx, used), out);
        out
    }
    let total = best(need, 0, 0, &items, &mut memo)?;
    let mut chosen = Vec::new();
    let (mut rem, mut idx, mut used) = (need, 0, 0);
    let mut left = total;
    while rem > 0 {
        let (d, u, c, av) = items[idx];
        let take_ok = used < av
            && left.checked_sub(c).is_some_and(|r| {
                best(rem.saturating_sub(d * u), idx, used + 1, &items, &mut memo) == Some(r)
            });
        if take_ok {
            chosen.push((d, u));
            rem = rem.saturating_sub(d * u);
            used += 1;
            left -= c;
        } else {
            used = if idx + 1 < items.len() && items[idx + 1].0 == d { used } else { 0 };
            idx += 1;
        }
    }
    Some((chosen, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Table;
    impl CostModel for Table {
        fn cost(&self, d: usize, u: usize) -> Option<usize> {
            Some(match (d, u) {
                (1, 1) => 1,
                (1, 2) => 3,
                (1, 3) => 5,
                (2, 1) => 3,
                _ => (d * u) * (d * u),
            })
        }
    }

    #[test]
    fn f2_cubic_plan() {
        let avail = |d: usize| match d {
            1 => 3,
            2 => 1,
            3 => 1,
            _ => 3,
        };
        let (items, cost) = optimal_multiset(5, &avail, &Table, PlanBounds::for_degree(3)).unwrap();
        assert_eq!(cost, 6);
        assert_eq!(items, vec![(1, 1), (1, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn f2_quartic_genus_zero_cost_ten() {
        let avail = |d: usize| match d {
            1 => 3,
            2 => 1,
            3 => 2,
            4 => 2,
            _ => 6,
        };
        let (items, cost) = optimal_multiset(7, &avail, &Table, PlanBounds::for_degree(4)).unwrap();
        assert_eq!(cost, 10);
        assert_eq!(items.iter().map(|(d, u)| d * u).sum::<usize>(), 7);
    }

    #[test]
    fn infeasible_under_caps() {
        let avail = |_d: usize| 1;
        let b = PlanBounds { max_degree: 1, max_mult: 1 };
        assert!(optimal_multiset(3, &avail, &Table, b).is_none());
    }
}
