//! Exact brute-force counters: order-polynomial values and linear extensions.

use super::{Limits, Poset};
use crate::error::PosetError;

struct MapCounter<'a> {
    order: Vec<usize>,
    preds: Vec<Vec<usize>>,
    upper: Vec<usize>,
    strict: bool,
    values: &'a mut [usize],
}

impl MapCounter<'_> {
    fn run(&mut self, pos: usize) -> u128 {
        let e = self.order[pos];
        let floor = self.preds[e].iter().map(|&p| self.values[p]).max();
        let lo = match (floor, self.strict) {
            (None, _) => 1,
            (Some(v), true) => v + 1,
            (Some(v), false) => v,
        };
        let hi = self.upper[e];
        if lo > hi {
            return 0;
        }
        if pos + 1 == self.order.len() {
            return (hi - lo + 1) as u128;
        }
        let mut total = 0;
        for v in lo..=hi {
            self.values[e] = v;
            total += self.run(pos + 1);
        }
        total
    }
}

fn count_maps(poset: &Poset, m: usize, strict: bool) -> u128 {
    if m == 0 {
        return 0;
    }
    let n = poset.size();
    let heights = poset.heights_above();
    // Strict maps need room for the longest chain above each element.
    let upper: Vec<usize> = (0..n)
        .map(|e| {
            if strict {
                m.saturating_sub(heights[e])
            } else {
                m
            }
        })
        .collect();
    let mut values = vec![0; n];
    let mut counter = MapCounter {
        order: poset.linear_extension(),
        preds: (0..n).map(|b| poset.below(b)).collect(),
        upper,
        strict,
        values: &mut values,
    };
    counter.run(0)
}

/// Ω°(m): maps `f: X -> {1..m}` with `a < b ⇒ f(a) < f(b)`.
///
/// Backtracks along a linear extension, so every predecessor is assigned
/// before its successors and each branch is cut by the chain room above.
pub fn count_strict_maps(poset: &Poset, m: usize) -> u128 {
    count_maps(poset, m, true)
}

/// Ω(m): maps `f: X -> {1..m}` with `a < b ⇒ f(a) <= f(b)`.
pub fn count_nonstrict_maps(poset: &Poset, m: usize) -> u128 {
    count_maps(poset, m, false)
}

/// Number of linear extensions, by dynamic programming over down-sets.
pub fn count_linear_extensions(poset: &Poset, limits: &Limits) -> Result<u128, PosetError> {
    let n = poset.size();
    if n > limits.linext_size || n > 24 {
        return Err(PosetError::TooLarge {
            operation: "count_linear_extensions",
            size: n,
            limit: limits.linext_size.min(24),
        });
    }
    let below_mask: Vec<u32> = (0..n)
        .map(|b| poset.below(b).iter().fold(0u32, |acc, &a| acc | 1 << a))
        .collect();
    let full = (1usize << n) - 1;
    let mut ways = vec![0u128; full + 1];
    ways[0] = 1;
    for set in 0..full {
        let here = ways[set];
        if here == 0 {
            continue;
        }
        for (e, &below) in below_mask.iter().enumerate() {
            let bit = 1usize << e;
            if set & bit == 0 && (below as usize) & !set == 0 {
                ways[set | bit] += here;
            }
        }
    }
    Ok(ways[full])
}
