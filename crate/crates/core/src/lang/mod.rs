//! Operad words in `*` and `D` over chain leaves.
//!
//! Concrete syntax:
//!
//! ```text
//! expr   := factor ("*" factor)*
//! factor := "c" INT | "c" | "D" "(" expr ")" | "(" expr ")"
//! ```
//!
//! `c` is the one-point poset and `cN` abbreviates the `N`-chain. Terms are
//! kept in associativity normal form: a star node never has a star child.

mod enumerate;
mod parse;

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::poset::Poset;
use crate::series::ChainSeries;

pub use enumerate::{enumerate_terms, term_count};

/// Normal-form operad term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// The `n`-chain, `n >= 1`.
    Leaf(usize),
    /// Concatenation of at least two factors, none of them a `Star`.
    Star(Vec<Term>),
    /// Handle operation.
    D(Box<Term>),
}

/// Occurrence counts of a term's desugared binary word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TermStats {
    /// One-point leaves after expanding `cN` into `N` points.
    pub leaves: usize,
    pub d_count: usize,
    /// Binary `*` applications, always `leaves - 1`.
    pub star_count: usize,
}

impl Term {
    pub fn point() -> Self {
        Term::Leaf(1)
    }

    pub fn d(child: Term) -> Self {
        Term::D(Box::new(child))
    }

    /// Concatenation in normal form: nested stars are flattened and a
    /// single factor is returned unchanged.
    pub fn star(factors: impl IntoIterator<Item = Term>) -> Self {
        let mut flat = Vec::new();
        for factor in factors {
            match factor {
                Term::Star(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        assert!(!flat.is_empty(), "star of no factors");
        if flat.len() == 1 {
            flat.pop().expect("one factor")
        } else {
            Term::Star(flat)
        }
    }

    /// Canonical text; `parse(print(t)) == t`.
    pub fn print(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse::parse(text)
    }

    /// Replaces every `cN` leaf by a star of `N` one-point leaves.
    pub fn desugar(&self) -> Term {
        match self {
            Term::Leaf(1) => Term::Leaf(1),
            Term::Leaf(n) => Term::Star(vec![Term::Leaf(1); *n]),
            Term::Star(factors) => Term::star(factors.iter().map(Term::desugar)),
            Term::D(child) => Term::d(child.desugar()),
        }
    }

    pub fn eval_poset(&self) -> Poset {
        match self {
            Term::Leaf(n) => Poset::chain(*n).expect("leaves are nonempty"),
            Term::Star(factors) => {
                let mut iter = factors.iter();
                let first = iter.next().expect("star has factors").eval_poset();
                iter.fold(first, |acc, t| acc.concat(&t.eval_poset()))
            }
            Term::D(child) => child.eval_poset().d_handle(),
        }
    }

    pub fn eval_series(&self) -> ChainSeries {
        match self {
            Term::Leaf(n) => ChainSeries::zeta_chain(*n).expect("leaves are nonempty"),
            Term::Star(factors) => {
                let mut iter = factors.iter();
                let first = iter.next().expect("star has factors").eval_series();
                iter.fold(first, |acc, t| acc.star(&t.eval_series()))
            }
            Term::D(child) => child.eval_series().d_op(),
        }
    }

    pub fn stats(&self) -> TermStats {
        let leaves = self.units();
        TermStats {
            leaves,
            d_count: self.d_count(),
            star_count: leaves - 1,
        }
    }

    pub fn units(&self) -> usize {
        match self {
            Term::Leaf(n) => *n,
            Term::Star(factors) => factors.iter().map(Term::units).sum(),
            Term::D(child) => child.units(),
        }
    }

    pub fn d_count(&self) -> usize {
        match self {
            Term::Leaf(_) => 0,
            Term::Star(factors) => factors.iter().map(Term::d_count).sum(),
            Term::D(child) => 1 + child.d_count(),
        }
    }

    /// Number of points of the evaluated poset.
    pub fn poset_size(&self) -> usize {
        self.units() + 3 * self.d_count()
    }

    pub fn is_normal_form(&self) -> bool {
        match self {
            Term::Leaf(n) => *n >= 1,
            Term::Star(factors) => {
                factors.len() >= 2
                    && factors
                        .iter()
                        .all(|f| !matches!(f, Term::Star(_)) && f.is_normal_form())
            }
            Term::D(child) => child.is_normal_form(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf(1) => f.write_str("c"),
            Term::Leaf(n) => write!(f, "c{n}"),
            Term::Star(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{factor}")?;
                }
                Ok(())
            }
            Term::D(child) => write!(f, "D({child})"),
        }
    }
}

impl FromStr for Term {
    type Err = ParseError;
    fn from_str(text: &str) -> Result<Self, ParseError> {
        parse::parse(text)
    }
}
