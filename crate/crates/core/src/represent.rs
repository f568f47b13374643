//! Deciding whether a chain-basis series is the order series of a Wixarika
//! poset, and listing every representing poset up to isomorphism.
//!
//! The support endpoints of a Wixarika series fix the leaf count and the
//! number of `D` nodes of any word producing it, so the search is finite:
//! every normal-form term with those counts is a candidate. Because the
//! series of a concatenation does not depend on the order of its factors,
//! candidates are first generated with star factors as sorted multisets;
//! only shapes whose series matches are expanded into all factor orders.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{SearchError, SeriesError};
use crate::lang::{enumerate_terms, Term};
use crate::poset::{is_isomorphic, Limits, Poset, PosetJson};
use crate::series::ChainSeries;

/// Quantities read off the support endpoints `i <= k` of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WixInvariants {
    /// Lowest supported index: points in a maximal chain.
    pub i: usize,
    /// Highest supported index: number of points.
    pub k: usize,
    /// `k - i`: handle count and first Betti number.
    pub d: usize,
    /// `i - 2d - 1`: star count of the word. Negative values rule the series out.
    pub m: i64,
    /// `m + 1`: one-point leaves of the word.
    pub leaf_units: i64,
}

/// Search budget and switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_units: usize,
    pub max_d: usize,
    /// Endpoint pruning and multiset-first enumeration. Disabling it runs the
    /// plain scan over every ordered term and must give the same report.
    pub prune: bool,
    /// Isomorphism bound used when grouping witnesses.
    pub iso_size: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_units: 8,
            max_d: 4,
            prune: true,
            iso_size: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub term: Term,
    pub poset: Poset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepReport {
    pub feasible: bool,
    pub reasons: Vec<String>,
    pub invariants: Option<WixInvariants>,
    /// One term per isomorphism class, sorted by printed form.
    pub witnesses: Vec<Witness>,
}

pub fn invariants_from_series(f: &ChainSeries) -> Result<WixInvariants, SeriesError> {
    let (i, _, k, _) = f.endpoints().ok_or(SeriesError::ZeroSeries)?;
    if let Some((index, _)) = f.iter().find(|(_, c)| c.is_negative()) {
        return Err(SeriesError::NegativeCoefficient { index });
    }
    let d = k - i;
    let m = i as i64 - 2 * d as i64 - 1;
    Ok(WixInvariants {
        i,
        k,
        d,
        m,
        leaf_units: m + 1,
    })
}

/// Necessary conditions on a series; failures are collected, not raised.
pub fn feasibility_check(f: &ChainSeries) -> RepReport {
    let mut reasons = Vec::new();
    if f.is_zero() {
        reasons.push("zero series".to_string());
    }
    for (u, c) in f.iter().filter(|(_, c)| c.is_negative()) {
        reasons.push(format!("coefficient {c} at z{u} is negative"));
    }
    if let Some((i, di, k, dk)) = f.endpoints() {
        if *di < BigInt::one() {
            reasons.push(format!("lowest coefficient d_{i} = {di} is below 1"));
        }
        if *dk < BigInt::one() {
            reasons.push(format!("highest coefficient d_{k} = {dk} is below 1"));
        }
        let alt = f.alternating_sum().expect("nonzero series");
        if !alt.is_one() {
            reasons.push(format!("alternating sum = {alt}, expected 1"));
        }
        let m = i as i64 - 2 * (k - i) as i64 - 1;
        if m < 0 {
            reasons.push(format!("star count i - 2d - 1 = {m} is negative"));
        }
    }
    let feasible = reasons.is_empty();
    RepReport {
        feasible,
        invariants: if feasible {
            invariants_from_series(f).ok()
        } else {
            None
        },
        reasons,
        witnesses: Vec::new(),
    }
}

/// Every Wixarika poset (up to isomorphism) whose order series is `f`,
/// within the configured budget.
pub fn represent(f: &ChainSeries, config: &SearchConfig) -> Result<RepReport, SearchError> {
    let mut report = feasibility_check(f);
    let Some(inv) = report.invariants.filter(|_| report.feasible) else {
        return Ok(report);
    };
    let units = inv.leaf_units as usize;
    if units > config.max_units || inv.d > config.max_d {
        return Err(SearchError::BudgetExceeded {
            units,
            d_count: inv.d,
            max_units: config.max_units,
            max_d: config.max_d,
        });
    }
    let mut terms = if config.prune {
        pruned_candidates(f, units, inv.d)
    } else {
        enumerate_terms(units, inv.d)
            .into_par_iter()
            .filter(|t| t.eval_series() == *f)
            .collect()
    };
    terms.sort_by_cached_key(Term::print);
    terms.dedup();
    report.witnesses = group_by_isomorphism(terms, config);
    Ok(report)
}

fn group_by_isomorphism(terms: Vec<Term>, config: &SearchConfig) -> Vec<Witness> {
    let limits = Limits {
        iso_size: config.iso_size,
        ..Limits::default()
    };
    let mut classes: Vec<Witness> = Vec::new();
    for term in terms {
        let poset = term.eval_poset();
        let seen = classes
            .iter()
            .any(|w| is_isomorphic(&w.poset, &poset, &limits).expect("witness within iso bound"));
        if !seen {
            classes.push(Witness { term, poset });
        }
    }
    classes
}

/// Normal-form term whose star factors are sorted, standing for every
/// reordering of those factors.
struct Shape {
    term: Term,
    /// `(i, d_i, k, d_k)` of the shape's series.
    ends: (usize, BigInt, usize, BigInt),
}

#[derive(Default)]
struct ShapeGenerator {
    factors: HashMap<(usize, usize), Vec<Rc<Shape>>>,
    shapes: HashMap<(usize, usize), Vec<Rc<Shape>>>,
}

impl ShapeGenerator {
    fn factors(&mut self, units: usize, d: usize) -> Vec<Rc<Shape>> {
        if let Some(hit) = self.factors.get(&(units, d)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if units == 1 && d == 0 {
            let one = BigInt::one();
            out.push(Rc::new(Shape {
                term: Term::point(),
                ends: (1, one.clone(), 1, one),
            }));
        }
        if d > 0 {
            for child in self.shapes(units, d - 1) {
                let (i, di, k, dk) = &child.ends;
                // D(z_n) = n z_(n+2) + (n+1) z_(n+3) moves both endpoints.
                out.push(Rc::new(Shape {
                    term: Term::d(child.term.clone()),
                    ends: (
                        i + 2,
                        di * BigInt::from(*i),
                        k + 3,
                        dk * BigInt::from(k + 1),
                    ),
                }));
            }
        }
        self.factors.insert((units, d), out.clone());
        out
    }

    fn shapes(&mut self, units: usize, d: usize) -> Vec<Rc<Shape>> {
        if let Some(hit) = self.shapes.get(&(units, d)) {
            return hit.clone();
        }
        let mut out = self.factors(units, d);
        // Pool of every factor that fits, in a fixed order; multisets are
        // drawn as non-decreasing index sequences.
        let mut pool = Vec::new();
        for u in 1..units {
            for dd in 0..=d {
                pool.extend(self.factors(u, dd).into_iter().map(|s| (u, dd, s)));
            }
        }
        let mut chosen = Vec::new();
        collect_multisets(&pool, 0, units, d, &mut chosen, &mut out);
        self.shapes.insert((units, d), out.clone());
        out
    }
}

type PoolEntry = (usize, usize, Rc<Shape>);

fn collect_multisets(
    pool: &[PoolEntry],
    start: usize,
    units: usize,
    d: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Rc<Shape>>,
) {
    if units == 0 && d == 0 {
        if chosen.len() >= 2 {
            let factors: Vec<&Rc<Shape>> = chosen.iter().map(|&j| &pool[j].2).collect();
            let mut ends = (0, BigInt::one(), 0, BigInt::one());
            for f in &factors {
                ends.0 += f.ends.0;
                ends.1 *= &f.ends.1;
                ends.2 += f.ends.2;
                ends.3 *= &f.ends.3;
            }
            out.push(Rc::new(Shape {
                term: Term::star(factors.iter().map(|f| f.term.clone())),
                ends,
            }));
        }
        return;
    }
    for j in start..pool.len() {
        let (u, dd, _) = &pool[j];
        if *u <= units && *dd <= d {
            chosen.push(j);
            collect_multisets(pool, j, units - u, d - dd, chosen, out);
            chosen.pop();
        }
    }
}

fn pruned_candidates(f: &ChainSeries, units: usize, d: usize) -> Vec<Term> {
    let (i, di, k, dk) = f.endpoints().expect("feasible series is nonzero");
    let target = (i, di.clone(), k, dk.clone());
    let survivors: Vec<Term> = ShapeGenerator::default()
        .shapes(units, d)
        .iter()
        .filter(|s| s.ends == target)
        .map(|s| s.term.clone())
        .collect();
    survivors
        .into_par_iter()
        .filter(|t| t.eval_series() == *f)
        .flat_map_iter(|t| orderings(&t))
        .collect()
}

/// Every term obtained by reordering star factors, at every depth.
fn orderings(term: &Term) -> Vec<Term> {
    match term {
        Term::Leaf(_) => vec![term.clone()],
        Term::D(child) => orderings(child).into_iter().map(Term::d).collect(),
        Term::Star(factors) => {
            let mut arrangement = factors.clone();
            arrangement.sort();
            let mut out = Vec::new();
            loop {
                let options: Vec<Vec<Term>> = arrangement.iter().map(orderings).collect();
                let mut product: Vec<Vec<Term>> = vec![Vec::new()];
                for choices in &options {
                    product = product
                        .into_iter()
                        .flat_map(|prefix| {
                            choices.iter().map(move |c| {
                                let mut next = prefix.clone();
                                next.push(c.clone());
                                next
                            })
                        })
                        .collect();
                }
                out.extend(product.into_iter().map(Term::Star));
                if !next_permutation(&mut arrangement) {
                    return out;
                }
            }
        }
    }
}

fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    let Some(pivot) = items.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let successor = items
        .iter()
        .rposition(|x| *x > items[pivot])
        .expect("pivot has a larger element to its right");
    items.swap(pivot, successor);
    items[pivot + 1..].reverse();
    true
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    term: String,
    poset: PosetJson,
}

/// JSON form: `{"feasible", "reasons", "invariants", "witnesses": [{"term", "poset"}]}`.
#[derive(Serialize, Deserialize)]
pub struct RepReportJson {
    feasible: bool,
    reasons: Vec<String>,
    invariants: Option<WixInvariants>,
    witnesses: Vec<WitnessJson>,
}

impl RepReport {
    pub fn to_json(&self) -> RepReportJson {
        RepReportJson {
            feasible: self.feasible,
            reasons: self.reasons.clone(),
            invariants: self.invariants,
            witnesses: self
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    term: w.term.print(),
                    poset: w.poset.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &RepReportJson) -> Result<Self, String> {
        let witnesses = json
            .witnesses
            .iter()
            .map(|w| {
                let term: Term = w.term.parse().map_err(|e| format!("{e}"))?;
                let poset = Poset::from_json(&w.poset).map_err(|e| e.to_string())?;
                Ok(Witness { term, poset })
            })
            .collect::<Result<_, String>>()?;
        Ok(Self {
            feasible: json.feasible,
            reasons: json.reasons.clone(),
            invariants: json.invariants,
            witnesses,
        })
    }

    pub fn has_witness(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

impl Serialize for RepReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}
