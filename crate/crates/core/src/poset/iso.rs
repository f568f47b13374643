//! Order isomorphism by colour refinement followed by backtracking within
//! colour classes.

use std::collections::BTreeMap;

use super::{Limits, Poset};
use crate::error::PosetError;

/// Refines colours on both posets jointly so colour ids are comparable.
fn joint_colours(x: &Poset, y: &Poset) -> (Vec<usize>, Vec<usize>) {
    let seed = |p: &Poset| -> Vec<Vec<usize>> {
        let levels = p.levels();
        let heights = p.heights_above();
        (0..p.size())
            .map(|e| {
                vec![
                    p.below(e).len(),
                    p.above_row(e).count_ones(..),
                    levels[e],
                    heights[e],
                ]
            })
            .collect()
    };
    let (mut cx, mut cy) = relabel(seed(x), seed(y));
    let (cov_x, cov_y) = (x.covers(), y.covers());
    loop {
        let signature = |p: &Poset, colours: &[usize], covers: &[(usize, usize)]| {
            let mut sig: Vec<Vec<usize>> = colours.iter().map(|&c| vec![c]).collect();
            let mut downs = vec![Vec::new(); p.size()];
            let mut ups = vec![Vec::new(); p.size()];
            for &(a, b) in covers {
                ups[a].push(colours[b]);
                downs[b].push(colours[a]);
            }
            for e in 0..p.size() {
                downs[e].sort_unstable();
                ups[e].sort_unstable();
                sig[e].push(usize::MAX);
                sig[e].extend(&downs[e]);
                sig[e].push(usize::MAX);
                sig[e].extend(&ups[e]);
            }
            sig
        };
        let (nx, ny) = relabel(signature(x, &cx, &cov_x), signature(y, &cy, &cov_y));
        let classes = |a: &[usize], b: &[usize]| a.iter().chain(b).max().map_or(0, |m| m + 1);
        let stable = classes(&nx, &ny) == classes(&cx, &cy);
        cx = nx;
        cy = ny;
        if stable {
            return (cx, cy);
        }
    }
}

fn relabel(x: Vec<Vec<usize>>, y: Vec<Vec<usize>>) -> (Vec<usize>, Vec<usize>) {
    let mut ids = BTreeMap::new();
    for key in x.iter().chain(y.iter()) {
        ids.entry(key.clone()).or_insert(0usize);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    (
        x.iter().map(|k| ids[k]).collect(),
        y.iter().map(|k| ids[k]).collect(),
    )
}

/// True iff an order isomorphism between `x` and `y` exists.
pub fn is_isomorphic(x: &Poset, y: &Poset, limits: &Limits) -> Result<bool, PosetError> {
    for p in [x, y] {
        if p.size() > limits.iso_size {
            return Err(PosetError::TooLarge {
                operation: "is_isomorphic",
                size: p.size(),
                limit: limits.iso_size,
            });
        }
    }
    if x.size() != y.size() || x.relations().len() != y.relations().len() {
        return Ok(false);
    }
    let (cx, cy) = joint_colours(x, y);
    let mut hist_x = cx.clone();
    let mut hist_y = cy.clone();
    hist_x.sort_unstable();
    hist_y.sort_unstable();
    if hist_x != hist_y {
        return Ok(false);
    }
    // Smallest colour classes first keeps the branching low.
    let mut class_size = BTreeMap::new();
    for &c in &cx {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (0..x.size()).collect();
    order.sort_by_key(|&e| (class_size[&cx[e]], cx[e], e));
    let mut image = vec![usize::MAX; x.size()];
    let mut used = vec![false; y.size()];
    Ok(extend(x, y, &cx, &cy, &order, 0, &mut image, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    x: &Poset,
    y: &Poset,
    cx: &[usize],
    cy: &[usize],
    order: &[usize],
    pos: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&a) = order.get(pos) else {
        return true;
    };
    for b in 0..y.size() {
        if used[b] || cy[b] != cx[a] {
            continue;
        }
        let consistent = order[..pos].iter().all(|&p| {
            let q = image[p];
            x.less(p, a) == y.less(q, b) && x.less(a, p) == y.less(b, q)
        });
        if !consistent {
            continue;
        }
        image[a] = b;
        used[b] = true;
        if extend(x, y, cx, cy, order, pos + 1, image, used) {
            return true;
        }
        used[b] = false;
        image[a] = usize::MAX;
    }
    false
}
