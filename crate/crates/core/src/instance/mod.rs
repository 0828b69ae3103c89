//! Problem instances, orderings and structural classification.

mod cost;

use alloc::vec::Vec;
use core::fmt;

pub use cost::{three_slope_function, Cost, CostFunction, CostKind, FunctionClass};
pub(crate) use cost::CostEvaluator;

use crate::geometry::{DisjointUnion, Interval, Rat};

/// Which numeric backend an instance's costs live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostBackend {
    /// Every cost value is an exact rational.
    Exact,
    /// Some cost values are rounded to a fixed binary precision.
    Float,
}

/// An interval multiset, a cost function, and an optional decision threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    intervals: Vec<Interval>,
    cost: CostFunction,
    threshold: Option<Rat>,
}

impl Instance {
    pub fn new(intervals: Vec<Interval>, cost: CostFunction, threshold: Option<Rat>) -> Self {
        Instance {
            intervals,
            cost,
            threshold,
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn cost(&self) -> &CostFunction {
        &self.cost
    }

    pub fn threshold(&self) -> Option<&Rat> {
        self.threshold.as_ref()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// The backend this instance's costs live in. Powers of two stay exact
    /// exactly when all endpoints (hence all lengths) are integers.
    pub fn cost_backend(&self) -> CostBackend {
        let exact = self.cost.always_rational_valued()
            || (self.cost.rational_valued_on_integers() && self.all_endpoints_integer());
        if exact {
            CostBackend::Exact
        } else {
            CostBackend::Float
        }
    }

    fn all_endpoints_integer(&self) -> bool {
        self.intervals
            .iter()
            .all(|i| i.start().is_integer() && i.end().is_integer())
    }

    /// The covered area of the whole instance.
    pub fn covered_area(&self) -> DisjointUnion {
        DisjointUnion::from_intervals(self.intervals.iter().cloned())
    }

    /// Total cost of processing the intervals in the given order, together
    /// with the exposed part of each interval (indexed by ordering position).
    pub fn cost_of_ordering(&self, ordering: &Ordering) -> (Cost, Vec<DisjointUnion>) {
        assert!(
            ordering.is_valid_for(self.len()),
            "ordering must be a permutation of the instance's indices"
        );
        let mut evaluator = CostEvaluator::new(&self.cost);
        let mut covered = DisjointUnion::empty();
        let mut total = Cost::zero();
        let mut exposed = Vec::with_capacity(self.len());
        for &idx in ordering.as_slice() {
            let part = DisjointUnion::from(self.intervals[idx].clone()).subtract(&covered);
            let c = evaluator
                .eval(&part.length())
                .expect("cost function defined at exposed lengths");
            total = total.add(&c);
            covered = covered.union(&DisjointUnion::from(self.intervals[idx].clone()));
            exposed.push(part);
        }
        (total, exposed)
    }

    /// Structural facts used for dispatching and diagnostics.
    pub fn classify(&self) -> InstanceStats {
        let n = self.len();
        let ivs = &self.intervals;

        let mut sorted: Vec<&Interval> = ivs.iter().collect();
        sorted.sort_by(|a, b| (a.start(), a.end()).cmp(&(b.start(), b.end())));
        let is_agreeable = sorted.windows(2).all(|w| w[0].end() <= w[1].end());

        let mut is_laminar = true;
        let mut all_pairs_connected = true;
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (&ivs[i], &ivs[j]);
                let disjoint = a.end() <= b.start() || b.end() <= a.start();
                let nested = a.is_subset_of(b) || b.is_subset_of(a);
                if !disjoint && !nested {
                    is_laminar = false;
                }
                // Touching counts as connected: the union is still an interval.
                if a.end() < b.start() || b.end() < a.start() {
                    all_pairs_connected = false;
                }
            }
        }

        let max_subintervals = ivs
            .iter()
            .map(|a| ivs.iter().filter(|b| b.is_proper_subset_of(a)).count())
            .max()
            .unwrap_or(0);

        let component_count = self.covered_area().components().len();

        InstanceStats {
            is_agreeable,
            is_laminar,
            is_pairwise_connected: n > 0 && all_pairs_connected,
            max_subintervals,
            component_count,
        }
    }

    /// Splits the instance along the interval components of its covered
    /// area. Sub-instances can be solved independently; their optima sum to
    /// the optimum of the whole instance.
    pub fn split_components(&self) -> Vec<Instance> {
        self.component_index_sets()
            .into_iter()
            .map(|idxs| Instance {
                intervals: idxs.iter().map(|&i| self.intervals[i].clone()).collect(),
                cost: self.cost.clone(),
                threshold: None,
            })
            .collect()
    }

    /// Interval indices grouped by component of the covered area, components
    /// in left-to-right order.
    pub(crate) fn component_index_sets(&self) -> Vec<Vec<usize>> {
        let area = self.covered_area();
        let mut groups: Vec<Vec<usize>> = area.components().iter().map(|_| Vec::new()).collect();
        for (idx, iv) in self.intervals.iter().enumerate() {
            let pos = area
                .components()
                .iter()
                .position(|c| iv.is_subset_of(c))
                .expect("every interval lies in a component of the covered area");
            groups[pos].push(idx);
        }
        groups
    }
}

/// A processing order: a permutation of the instance's interval indices
/// (0-based internally; the CLI prints 1-based positions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    indices: Vec<usize>,
}

impl Ordering {
    pub fn new(indices: Vec<usize>) -> Self {
        Ordering { indices }
    }

    /// Checks that this is a bijection on `{0, .., n-1}`.
    pub fn is_valid_for(&self, n: usize) -> bool {
        if self.indices.len() != n {
            return false;
        }
        let mut seen = alloc::vec![false; n];
        for &i in &self.indices {
            if i >= n || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, idx) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", idx + 1)?;
        }
        write!(f, ")")
    }
}

/// Structural classification of an interval multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceStats {
    /// Sorting by start point (ties by end point) leaves end points
    /// non-decreasing.
    pub is_agreeable: bool,
    /// Every pair of intervals is disjoint or nested.
    pub is_laminar: bool,
    /// Every pair touches or intersects; equivalently every covered area is
    /// a single interval.
    pub is_pairwise_connected: bool,
    /// Largest number of proper subintervals any interval contains.
    pub max_subintervals: usize,
    /// Number of interval components of the covered area.
    pub component_count: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rat_int, Interval};

    fn ivs(list: &[(i64, i64)]) -> Vec<Interval> {
        list.iter().map(|&(a, b)| Interval::of(a, b)).collect()
    }

    fn pow2_instance(list: &[(i64, i64)]) -> Instance {
        Instance::new(ivs(list), CostFunction::pow2(FunctionClass::Arbitrary), None)
    }

    #[test]
    fn cost_of_ordering_nested_pair() {
        let inst = pow2_instance(&[(0, 3), (1, 2)]);
        let (total, exposed) = inst.cost_of_ordering(&Ordering::new(alloc::vec![0, 1]));
        assert_eq!(total.value(), &rat_int(9)); // 2^3 + 2^0
        assert_eq!(exposed[0], DisjointUnion::from(Interval::of(0, 3)));
        assert!(exposed[1].is_empty());

        let (total, exposed) = inst.cost_of_ordering(&Ordering::new(alloc::vec![1, 0]));
        assert_eq!(total.value(), &rat_int(6)); // 2^1 + 2^2
        assert_eq!(exposed[0], DisjointUnion::from(Interval::of(1, 2)));
        assert_eq!(
            exposed[1],
            DisjointUnion::from_intervals([Interval::of(0, 1), Interval::of(2, 3)])
        );
    }

    #[test]
    fn cost_of_empty_instance() {
        let inst = pow2_instance(&[]);
        let (total, exposed) = inst.cost_of_ordering(&Ordering::new(alloc::vec![]));
        assert_eq!(total.value(), &rat_int(0));
        assert!(exposed.is_empty());
    }

    #[test]
    fn classify_disjoint_pair() {
        let stats = pow2_instance(&[(0, 1), (2, 3)]).classify();
        assert!(stats.is_agreeable);
        assert!(stats.is_laminar);
        assert!(!stats.is_pairwise_connected);
        assert_eq!(stats.max_subintervals, 0);
        assert_eq!(stats.component_count, 2);
    }

    #[test]
    fn classify_nested_pair() {
        let stats = pow2_instance(&[(0, 3), (1, 2)]).classify();
        assert!(!stats.is_agreeable);
        assert!(stats.is_laminar);
        assert!(stats.is_pairwise_connected);
        assert_eq!(stats.max_subintervals, 1);
        assert_eq!(stats.component_count, 1);
    }

    #[test]
    fn classify_adversarial_family_shape() {
        // {[2,4), [4,8), [0,8)}: the big interval contains the other two.
        let stats = pow2_instance(&[(2, 4), (4, 8), (0, 8)]).classify();
        assert!(stats.is_laminar);
        assert_eq!(stats.max_subintervals, 2);
    }

    #[test]
    fn classify_is_permutation_invariant() {
        let a = pow2_instance(&[(0, 3), (1, 2), (5, 6)]).classify();
        let b = pow2_instance(&[(5, 6), (0, 3), (1, 2)]).classify();
        assert_eq!(a, b);
    }

    #[test]
    fn split_disjoint_pair() {
        let parts = pow2_instance(&[(0, 1), (2, 3)]).split_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].intervals(), ivs(&[(0, 1)]).as_slice());
        assert_eq!(parts[1].intervals(), ivs(&[(2, 3)]).as_slice());
    }

    #[test]
    fn split_overlapping_stays_whole() {
        let parts = pow2_instance(&[(0, 2), (1, 3)]).split_components();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].intervals().len(), 2);
    }

    #[test]
    fn split_mixed() {
        let parts = pow2_instance(&[(0, 2), (1, 3), (5, 6)]).split_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].intervals().len(), 2);
        assert_eq!(parts[1].intervals(), ivs(&[(5, 6)]).as_slice());
    }

    #[test]
    fn ordering_validation() {
        assert!(Ordering::new(alloc::vec![2, 0, 1]).is_valid_for(3));
        assert!(!Ordering::new(alloc::vec![0, 0, 1]).is_valid_for(3));
        assert!(!Ordering::new(alloc::vec![0, 1]).is_valid_for(3));
        assert!(!Ordering::new(alloc::vec![0, 3, 1]).is_valid_for(3));
    }

    #[test]
    fn backend_selection() {
        assert_eq!(pow2_instance(&[(0, 3)]).cost_backend(), CostBackend::Exact);
        // Non-integer endpoints may expose non-integer lengths to 2^x.
        let halves = Instance::new(
            alloc::vec![
                Interval::new(crate::geometry::rat(1, 2), crate::geometry::rat(3, 2)).unwrap()
            ],
            CostFunction::pow2(FunctionClass::Arbitrary),
            None,
        );
        assert_eq!(halves.cost_backend(), CostBackend::Float);
        let sqrt_inst = Instance::new(
            ivs(&[(0, 2)]),
            CostFunction::sqrt(FunctionClass::SubShifted),
            None,
        );
        assert_eq!(sqrt_inst.cost_backend(), CostBackend::Float);
        let linear = Instance::new(
            alloc::vec![
                Interval::new(crate::geometry::rat(1, 2), crate::geometry::rat(3, 2)).unwrap()
            ],
            CostFunction::linear(rat_int(1), rat_int(0), FunctionClass::SubShifted),
            None,
        );
        assert_eq!(linear.cost_backend(), CostBackend::Exact);
    }
}
