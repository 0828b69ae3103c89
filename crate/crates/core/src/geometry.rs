//! Exact rational interval arithmetic.
//!
//! All coordinates are arbitrary-precision rationals, so equality of covered
//! areas and exposed parts is decidable; the dynamic program relies on that.
//! Intervals are half-open `[start, end)` and a [`DisjointUnion`] keeps its
//! components sorted and strictly separated (touching pieces are merged),
//! which makes the canonical form unique and usable as a dedup key.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::error::Error;
use crate::sweep;

/// Exact rational coordinate; always reduced, denominator positive.
pub type Rat = num_rational::BigRational;

/// Shorthand for a rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// A non-empty half-open interval `[start, end)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    start: Rat,
    end: Rat,
}

impl Interval {
    pub fn new(start: Rat, end: Rat) -> Result<Self, Error> {
        if start < end {
            Ok(Interval { start, end })
        } else {
            Err(Error::EmptyInterval)
        }
    }

    /// Integer-endpoint convenience constructor; panics on `start >= end`.
    pub fn of(start: i64, end: i64) -> Self {
        Interval::new(rat_int(start), rat_int(end)).expect("start < end")
    }

    pub fn start(&self) -> &Rat {
        &self.start
    }

    pub fn end(&self) -> &Rat {
        &self.end
    }

    pub fn length(&self) -> Rat {
        &self.end - &self.start
    }

    pub fn contains_point(&self, x: &Rat) -> bool {
        &self.start <= x && x < &self.end
    }

    /// Point-set containment `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.start <= self.start && self.end <= other.end
    }

    /// Proper subinterval: contained and not equal.
    pub fn is_proper_subset_of(&self, other: &Interval) -> bool {
        self.is_subset_of(other) && self != other
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

/// A canonical union of disjoint, non-touching intervals. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DisjointUnion {
    components: Vec<Interval>,
}

impl DisjointUnion {
    pub fn empty() -> Self {
        DisjointUnion { components: vec![] }
    }

    /// Builds the canonical form of an arbitrary collection of intervals,
    /// merging everything that overlaps or touches.
    pub fn from_intervals<I: IntoIterator<Item = Interval>>(intervals: I) -> Self {
        let raw: Vec<(Rat, Rat)> = intervals.into_iter().map(|i| (i.start, i.end)).collect();
        DisjointUnion::from_pairs(sweep::canonicalize(raw))
    }

    pub(crate) fn from_pairs(pairs: Vec<(Rat, Rat)>) -> Self {
        debug_assert!(sweep::is_canonical(&pairs));
        DisjointUnion {
            components: pairs
                .into_iter()
                .map(|(start, end)| Interval { start, end })
                .collect(),
        }
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// True iff the union consists of exactly one interval. The empty union
    /// has no interval components, so it is not a single interval.
    pub fn is_single_interval(&self) -> bool {
        self.components.len() == 1
    }

    /// Total length, i.e. the sum of component lengths; zero when empty.
    pub fn length(&self) -> Rat {
        self.components
            .iter()
            .fold(Rat::from_integer(BigInt::from(0)), |acc, c| {
                acc + c.length()
            })
    }

    pub fn contains_point(&self, x: &Rat) -> bool {
        self.components.iter().any(|c| c.contains_point(x))
    }

    fn as_pairs(&self) -> Vec<(Rat, Rat)> {
        self.components
            .iter()
            .map(|c| (c.start.clone(), c.end.clone()))
            .collect()
    }

    /// Canonical union of the two point sets.
    pub fn union(&self, other: &DisjointUnion) -> DisjointUnion {
        DisjointUnion::from_pairs(sweep::union(&self.as_pairs(), &other.as_pairs()))
    }

    /// Canonical set difference `self \ other`.
    pub fn subtract(&self, other: &DisjointUnion) -> DisjointUnion {
        DisjointUnion::from_pairs(sweep::subtract(&self.as_pairs(), &other.as_pairs()))
    }
}

impl From<Interval> for DisjointUnion {
    fn from(i: Interval) -> Self {
        DisjointUnion {
            components: vec![i],
        }
    }
}

impl fmt::Display for DisjointUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "∅");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
