//! Bigraded Betti numbers of Stanley–Reisner rings.
//!
//! The Koszul complex R*(K) has a basis u_A v_B indexed by disjoint pairs with
//! B a face, in bidegree (-|A|, 2(|A|+|B|)). It splits as a direct sum over
//! supports A ∪ B, which is how every routine here iterates. Tables use the
//! key (i, j) for β^{-i,2j}.

mod betti;
mod faces;
mod koszul;
mod recursion;
mod torsion;

pub use betti::{
    betti_via_cohomology, betti_via_hochster_euler, betti_via_morse, check_euler_consistency,
    COHOMOLOGY_ORACLE_CAP, EULER_ORACLE_CAP, MORSE_CAP,
};
pub use koszul::{
    cells_for_support, differential, morse_matching, morse_sets, verify_matching, MatchingReport,
    MorseMatchingRecord,
};
pub use recursion::{betti_recursion, betti_recursion_k, betti_recursion_x};
pub use torsion::{torsion_check, TorsionReport};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// The basis element u_A v_B.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KoszulCell {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl KoszulCell {
    pub fn new(a: VertexSet, b: VertexSet) -> Self {
        debug_assert!(a.is_disjoint(&b));
        KoszulCell { a, b }
    }

    /// (-|A|, 2(|A|+|B|))
    pub fn bidegree(&self) -> (i64, i64) {
        let (a, b) = (self.a.len() as i64, self.b.len() as i64);
        (-a, 2 * (a + b))
    }

    pub fn support(&self) -> VertexSet {
        self.a.union(&self.b)
    }
}

impl fmt::Debug for KoszulCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{:?}v{:?}", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Morse,
    Recursion,
    EulerOracle,
    CohomologyOracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Morse => "morse",
            Method::Recursion => "recursion",
            Method::EulerOracle => "euler-oracle",
            Method::CohomologyOracle => "cohomology-oracle",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "morse" => Ok(Method::Morse),
            "recursion" => Ok(Method::Recursion),
            "euler-oracle" | "euler" => Ok(Method::EulerOracle),
            "cohomology-oracle" | "cohomology" => Ok(Method::CohomologyOracle),
            other => Err(Error::Format(format!("unknown method {other:?}"))),
        }
    }
}

/// β^{-i,2j} keyed by (i, j); only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), BigUint>,
    method: Method,
}

#[derive(Serialize, Deserialize)]
struct BidegreeEntry {
    i: usize,
    j: usize,
    beta: String,
}

#[derive(Serialize, Deserialize)]
struct TableDocument {
    bidegrees: Vec<BidegreeEntry>,
    method: Method,
}

impl BettiTable {
    pub fn new(method: Method) -> Self {
        BettiTable {
            entries: BTreeMap::new(),
            method,
        }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn get(&self, i: usize, j: usize) -> BigUint {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, i: usize, j: usize, x: BigUint) {
        if x.is_zero() {
            return;
        }
        *self.entries.entry((i, j)).or_default() += x;
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigUint) {
        if x.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &BigUint)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries agree, whatever the method.
    pub fn same_values(&self, other: &BettiTable) -> bool {
        self.entries == other.entries
    }

    /// Entry at row l, column c of the layout whose (l, c) cell holds
    /// β^{l-c,2c}.
    pub fn layout_get(&self, l: usize, c: usize) -> BigUint {
        if c < l {
            return BigUint::zero();
        }
        self.get(c - l, c)
    }

    /// Nonzero entries as (l, c) -> value in the same layout.
    pub fn layout_entries(&self) -> BTreeMap<(usize, usize), BigUint> {
        self.entries
            .iter()
            .map(|(&(i, j), x)| ((j - i, j), x.clone()))
            .collect()
    }

    /// The largest entry and its key.
    pub fn max_entry(&self) -> Option<((usize, usize), &BigUint)> {
        self.entries
            .iter()
            .max_by(|a, b| a.1.cmp(b.1))
            .map(|(&k, v)| (k, v))
    }

    pub fn to_json(&self) -> String {
        let doc = TableDocument {
            bidegrees: self
                .entries
                .iter()
                .map(|(&(i, j), x)| BidegreeEntry {
                    i,
                    j,
                    beta: x.to_string(),
                })
                .collect(),
            method: self.method,
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TableDocument =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let mut t = BettiTable::new(doc.method);
        for e in doc.bidegrees {
            let x: BigUint = e
                .beta
                .parse()
                .map_err(|_| Error::Format(format!("bad integer {:?}", e.beta)))?;
            t.set(e.i, e.j, x);
        }
        Ok(t)
    }

    /// Rows l, columns c, cell (l, c) = β^{l-c,2c}; header row first.
    pub fn to_csv(&self) -> String {
        let lmax = self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0);
        let cmax = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut out = String::from("l");
        for c in 0..=cmax {
            out.push_str(&format!(",{c}"));
        }
        out.push('\n');
        for l in 0..=lmax {
            out.push_str(&l.to_string());
            for c in 0..=cmax {
                out.push_str(&format!(",{}", self.layout_get(l, c)));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lmax = self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0);
        let cmax = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let width = self
            .entries
            .values()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1)
            .max(cmax.to_string().len());
        write!(f, "{:>3} |", "l\\i")?;
        for c in 0..=cmax {
            write!(f, " {c:>width$}")?;
        }
        writeln!(f)?;
        for l in 0..=lmax {
            write!(f, "{l:>3} |")?;
            for c in 0..=cmax {
                let x = self.layout_get(l, c);
                if x.is_zero() {
                    write!(f, " {:>width$}", ".")?;
                } else {
                    write!(f, " {x:>width$}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_and_serialization() {
        let mut t = BettiTable::new(Method::Recursion);
        t.set(0, 0, 1u32.into());
        t.set(1, 3, 7u32.into());
        t.add(1, 3, 0u32.into());
        assert_eq!(t.layout_get(2, 3), BigUint::from(7u32));
        assert_eq!(t.layout_get(3, 2), BigUint::zero());
        let back = BettiTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(t.to_csv().starts_with("l,0,1,2,3\n0,1,0,0,0\n"));
        assert_eq!(t.max_entry().unwrap().0, (1, 3));
    }

    #[test]
    fn cell_bidegree() {
        let c = KoszulCell::new(VertexSet::singleton(0), [1, 2].into_iter().collect());
        assert_eq!(c.bidegree(), (-1, 6));
        assert_eq!(c.support().len(), 3);
    }
}
