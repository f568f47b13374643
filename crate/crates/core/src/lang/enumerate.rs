//! Exhaustive generation of normal-form terms over one-point leaves.
//!
//! Grammar: `T -> F ("*" F)*`, `F -> c | D(T)`. Every normal-form term has
//! exactly one derivation, so the generated lists are duplicate-free.

use std::collections::HashMap;

use super::Term;

#[derive(Default)]
struct Generator {
    factors: HashMap<(usize, usize), Vec<Term>>,
    sequences: HashMap<(usize, usize), Vec<Vec<Term>>>,
}

impl Generator {
    /// Non-star terms with `units` leaves and `d` handle nodes.
    fn factors(&mut self, units: usize, d: usize) -> Vec<Term> {
        if let Some(hit) = self.factors.get(&(units, d)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if units == 1 && d == 0 {
            out.push(Term::point());
        }
        if d > 0 {
            for child in self.sequences(units, d - 1) {
                out.push(Term::d(Term::star(child)));
            }
        }
        self.factors.insert((units, d), out.clone());
        out
    }

    /// Nonempty factor lists with the given totals.
    fn sequences(&mut self, units: usize, d: usize) -> Vec<Vec<Term>> {
        if let Some(hit) = self.sequences.get(&(units, d)) {
            return hit.clone();
        }
        let mut out: Vec<Vec<Term>> = self
            .factors(units, d)
            .into_iter()
            .map(|f| vec![f])
            .collect();
        for head_units in 1..units {
            for head_d in 0..=d {
                let heads = self.factors(head_units, head_d);
                if heads.is_empty() {
                    continue;
                }
                let tails = self.sequences(units - head_units, d - head_d);
                for head in &heads {
                    for tail in &tails {
                        let mut seq = Vec::with_capacity(tail.len() + 1);
                        seq.push(head.clone());
                        seq.extend(tail.iter().cloned());
                        out.push(seq);
                    }
                }
            }
        }
        self.sequences.insert((units, d), out.clone());
        out
    }
}

/// All normal-form terms with `units` one-point leaves and `d_count` handle
/// nodes, sorted by printed form.
pub fn enumerate_terms(units: usize, d_count: usize) -> Vec<Term> {
    if units == 0 {
        return Vec::new();
    }
    let mut generator = Generator::default();
    let mut terms: Vec<(String, Term)> = generator
        .sequences(units, d_count)
        .into_iter()
        .map(|seq| {
            let term = Term::star(seq);
            (term.print(), term)
        })
        .collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    debug_assert!(terms.windows(2).all(|w| w[0].0 != w[1].0));
    terms.into_iter().map(|(_, t)| t).collect()
}

/// Number of terms `enumerate_terms(units, d_count)` returns, by the
/// grammar's counting recursion.
pub fn term_count(units: usize, d_count: usize) -> u128 {
    fn seq(u: usize, d: usize, memo: &mut HashMap<(usize, usize, bool), u128>) -> u128 {
        count(u, d, false, memo)
    }
    fn count(
        u: usize,
        d: usize,
        factor_only: bool,
        memo: &mut HashMap<(usize, usize, bool), u128>,
    ) -> u128 {
        if u == 0 {
            return 0;
        }
        if let Some(&hit) = memo.get(&(u, d, factor_only)) {
            return hit;
        }
        let factor = u128::from(u == 1 && d == 0) + if d > 0 { seq(u, d - 1, memo) } else { 0 };
        let total = if factor_only {
            factor
        } else {
            let mut longer = 0;
            for hu in 1..u {
                for hd in 0..=d {
                    longer += count(hu, hd, true, memo) * seq(u - hu, d - hd, memo);
                }
            }
            factor + longer
        };
        memo.insert((u, d, factor_only), total);
        total
    }
    seq(units, d_count, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Every binary tree over `*` and `D` with the given leaf and handle
    /// counts, flattened to normal form.
    fn binary_trees(units: usize, d: usize) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        if units == 1 && d == 0 {
            out.insert("c".to_string());
        }
        if d > 0 {
            for child in binary_trees(units, d - 1) {
                out.insert(format!("D({child})"));
            }
        }
        for lu in 1..units {
            for ld in 0..=d {
                for left in binary_trees(lu, ld) {
                    for right in binary_trees(units - lu, d - ld) {
                        out.insert(format!("({left})*({right})"));
                    }
                }
            }
        }
        out.into_iter()
            .map(|text| text.parse::<Term>().unwrap().print())
            .collect()
    }

    fn printed(units: usize, d: usize) -> Vec<String> {
        enumerate_terms(units, d).iter().map(Term::print).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(printed(1, 0), vec!["c"]);
        assert_eq!(printed(2, 1), vec!["D(c)*c", "D(c*c)", "c*D(c)"]);
        assert_eq!(printed(1, 2), vec!["D(D(c))"]);
        assert_eq!(printed(3, 0), vec!["c*c*c"]);
        assert!(enumerate_terms(0, 1).is_empty());
    }

    #[test]
    fn matches_normalized_binary_trees() {
        for units in 1..=5 {
            for d in 0..=2 {
                let expected: Vec<String> = binary_trees(units, d).into_iter().collect();
                assert_eq!(printed(units, d), expected, "units {units}, d {d}");
                assert_eq!(term_count(units, d), expected.len() as u128);
            }
        }
    }

    #[test]
    fn recorded_counts() {
        assert_eq!(term_count(4, 2), 50);
        assert_eq!(term_count(5, 2), 105);
        assert_eq!(term_count(6, 5), 19404);
        assert_eq!(term_count(8, 4), 32670);
        assert_eq!(enumerate_terms(4, 2).len(), 50);
    }

    #[test]
    fn enumerated_terms_are_normal_with_requested_counts() {
        for term in enumerate_terms(4, 2) {
            assert!(term.is_normal_form());
            assert_eq!((term.units(), term.d_count()), (4, 2));
        }
    }
}
