//! Instance generators: the adversarial power-of-two family, the PARTITION
//! reduction with its three-slope cost function, and seeded random families
//! for testing and benchmarking.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::geometry::{Interval, Rat};
use crate::instance::{three_slope_function, CostFunction, FunctionClass, Instance};

/// The adversarial family: `I_i = [2^i, 2^{i+1})` for `i = 1..n-1` plus
/// `I_n = [0, 2^n)`. Its exposed parts realize every even length up to
/// `2^n`, i.e. `2^{n-1}` distinct lengths. The cost function is the
/// caller's choice.
pub fn gen_lemma14(n: u32, cost: CostFunction) -> Result<Instance, Error> {
    if n < 2 {
        return Err(Error::InvalidGeneratorParams(format!(
            "the adversarial family needs n >= 2, got {n}"
        )));
    }
    let mut intervals = Vec::with_capacity(n as usize);
    for i in 1..n {
        let lo = BigInt::one() << i;
        let hi = BigInt::one() << (i + 1);
        intervals.push(
            Interval::new(Rat::from_integer(lo), Rat::from_integer(hi))
                .expect("powers of two are increasing"),
        );
    }
    intervals.push(
        Interval::new(
            Rat::from_integer(BigInt::zero()),
            Rat::from_integer(BigInt::one() << n),
        )
        .expect("2^n > 0"),
    );
    Ok(Instance::new(intervals, cost, None))
}

/// Parameters of the PARTITION reduction.
///
/// `items` are the positive integers to split in half; `eps`, `x0` and the
/// slopes `c1 < c2 < c3` shape the three-piece cost function. The slope-c2
/// piece covers `[0, x0 - eps]` and the slope-c1 piece `[x0 - eps, x0]`, so
/// `x0 - eps >= 2·eps` keeps the construction's constraints disjoint.
#[derive(Debug, Clone)]
pub struct PartitionReductionParams {
    pub items: Vec<u64>,
    pub eps: Rat,
    pub x0: Rat,
    pub slopes: (Rat, Rat, Rat),
}

impl PartitionReductionParams {
    fn validate(&self) -> Result<(), Error> {
        if self.items.is_empty() {
            return Err(Error::InvalidGeneratorParams(
                "items must be non-empty".into(),
            ));
        }
        if self.items.iter().any(|&x| x == 0) {
            return Err(Error::InvalidGeneratorParams(
                "items must be positive".into(),
            ));
        }
        if !self.eps.is_positive() {
            return Err(Error::InvalidGeneratorParams("eps must be positive".into()));
        }
        let two_eps = &self.eps + &self.eps;
        if self.x0 <= two_eps {
            return Err(Error::InvalidGeneratorParams("x0 must exceed 2·eps".into()));
        }
        if &self.x0 - &self.eps < two_eps {
            return Err(Error::InvalidGeneratorParams(
                "x0 - eps must be at least 2·eps so the slope pieces do not overlap".into(),
            ));
        }
        let (c1, c2, c3) = &self.slopes;
        if !(c1 < c2 && c2 < c3) {
            return Err(Error::InvalidGeneratorParams(
                "slopes must satisfy c1 < c2 < c3".into(),
            ));
        }
        Ok(())
    }
}

/// Builds the decision instance of the PARTITION reduction: item intervals
/// `I_k = [2·eps·S_{k-1}/S_n, 2·eps·S_k/S_n)` packed into `[0, 2·eps)`, the
/// enclosing interval `I_0 = [0, x0 + eps)` appended last, the three-slope
/// cost function, and threshold `W = f(eps) + f(x0)`. The instance is a
/// yes-instance iff the items admit a half-sum subset.
pub fn gen_partition_reduction(p: &PartitionReductionParams) -> Result<Instance, Error> {
    p.validate()?;
    let total: BigInt = p.items.iter().map(|&x| BigInt::from(x)).sum();
    let scale = (&p.eps + &p.eps) / Rat::from_integer(total);

    let mut intervals = Vec::with_capacity(p.items.len() + 1);
    let mut prefix = BigInt::zero();
    for &x in &p.items {
        let lo = &scale * Rat::from_integer(prefix.clone());
        prefix += BigInt::from(x);
        let hi = &scale * Rat::from_integer(prefix.clone());
        intervals.push(Interval::new(lo, hi).expect("items are positive"));
    }
    intervals.push(
        Interval::new(Rat::zero(), &p.x0 + &p.eps).expect("x0 + eps > 0"),
    );

    let (c1, c2, c3) = p.slopes.clone();
    let cost = three_slope_function(c1, c2, c3, &p.eps, &p.x0, FunctionClass::Arbitrary)?;
    let w = cost
        .eval(&p.eps)?
        .add(&cost.eval(&p.x0)?)
        .value()
        .clone();
    Ok(Instance::new(intervals, cost, Some(w)))
}

/// Random family shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomFamily {
    /// Unconstrained integer intervals.
    General,
    /// Sorting by start point also sorts the end points.
    Agreeable,
    /// Every pair disjoint or nested.
    Laminar,
    /// All intervals share a common point.
    Pairwise,
}

impl RandomFamily {
    pub const ALL: [RandomFamily; 4] = [
        RandomFamily::General,
        RandomFamily::Agreeable,
        RandomFamily::Laminar,
        RandomFamily::Pairwise,
    ];
}

/// Deterministically generates `n` integer intervals with coordinates in
/// `[0, coord_range]` under the given seed, honoring the family constraint.
pub fn gen_random(
    n: usize,
    coord_range: u64,
    seed: u64,
    family: RandomFamily,
    cost: CostFunction,
) -> Result<Instance, Error> {
    if n == 0 {
        return Err(Error::InvalidGeneratorParams(
            "random instances need n >= 1".into(),
        ));
    }
    if coord_range < 2 {
        return Err(Error::InvalidGeneratorParams(
            "coord_range must be at least 2".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = match family {
        RandomFamily::General => random_general(&mut rng, n, coord_range),
        RandomFamily::Agreeable => random_agreeable(&mut rng, n, coord_range),
        RandomFamily::Laminar => {
            let mut out = Vec::with_capacity(n);
            random_laminar(&mut rng, 0, coord_range, n, &mut out);
            out
        }
        RandomFamily::Pairwise => random_pairwise(&mut rng, n, coord_range),
    };
    let intervals = pairs
        .into_iter()
        .map(|(a, b)| {
            Interval::new(
                Rat::from_integer(BigInt::from(a)),
                Rat::from_integer(BigInt::from(b)),
            )
            .expect("generated intervals are non-empty")
        })
        .collect();
    Ok(Instance::new(intervals, cost, None))
}

fn random_interval(rng: &mut ChaCha8Rng, lo: u64, hi: u64) -> (u64, u64) {
    let a = rng.gen_range(lo..hi);
    let b = rng.gen_range(a + 1..=hi);
    (a, b)
}

fn random_general(rng: &mut ChaCha8Rng, n: usize, range: u64) -> Vec<(u64, u64)> {
    (0..n).map(|_| random_interval(rng, 0, range)).collect()
}

fn random_agreeable(rng: &mut ChaCha8Rng, n: usize, range: u64) -> Vec<(u64, u64)> {
    let mut pairs = random_general(rng, n, range);
    pairs.sort_unstable();
    // Push end points up to be non-decreasing; starts are already sorted.
    for i in 1..pairs.len() {
        if pairs[i].1 < pairs[i - 1].1 {
            pairs[i].1 = pairs[i - 1].1;
        }
    }
    pairs
}

fn random_laminar(rng: &mut ChaCha8Rng, lo: u64, hi: u64, n: usize, out: &mut Vec<(u64, u64)>) {
    if n == 0 {
        return;
    }
    if hi - lo < 1 {
        return;
    }
    let (a, b) = random_interval(rng, lo, hi);
    out.push((a, b));
    let mut left = n - 1;
    // Distribute the rest among the inside and the flanks; slots too narrow
    // to host an interval fall back to duplicates of the current one.
    let inside = rng.gen_range(0..=left);
    left -= inside;
    let before = rng.gen_range(0..=left);
    let after = left - before;

    let prev = out.len();
    random_laminar(rng, a, b, inside, out);
    for _ in 0..inside - (out.len() - prev) {
        out.push((a, b));
    }

    if before > 0 && a > lo {
        let prev = out.len();
        random_laminar(rng, lo, a, before, out);
        for _ in 0..before - (out.len() - prev) {
            out.push((a, b));
        }
    } else {
        for _ in 0..before {
            out.push((a, b));
        }
    }
    if after > 0 && hi > b {
        let prev = out.len();
        random_laminar(rng, b, hi, after, out);
        for _ in 0..after - (out.len() - prev) {
            out.push((a, b));
        }
    } else {
        for _ in 0..after {
            out.push((a, b));
        }
    }
}

fn random_pairwise(rng: &mut ChaCha8Rng, n: usize, range: u64) -> Vec<(u64, u64)> {
    // Everyone contains the pivot cell [m, m+1).
    let m = range / 2;
    (0..n)
        .map(|_| {
            let a = rng.gen_range(0..=m);
            let b = rng.gen_range(m + 1..=range);
            (a, b)
        })
        .collect()
}
