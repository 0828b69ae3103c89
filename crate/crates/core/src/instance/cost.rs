//! Cost functions, cost values and the class spot-checker.
//!
//! Cost values are exact rationals. Kinds that are rational-valued at
//! rational lengths (linear, polynomial, piecewise linear, table, powers of
//! two at integer lengths) stay exact; `sqrt` and fractional powers of two
//! are rounded once to 96 fractional bits and flagged as approximate. Sums
//! and comparisons are always exact on the stored rationals, so the dynamic
//! program sees a consistent total order with no tolerances.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering as CmpOrdering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::geometry::Rat;

/// Fractional bits kept when a cost value cannot be exact.
const FLOAT_PRECISION_BITS: u64 = 96;

/// A cost value: an exact rational, or a dyadic rational that rounds an
/// irrational result to [`FLOAT_PRECISION_BITS`] fractional bits.
#[derive(Debug, Clone)]
pub struct Cost {
    value: Rat,
    exact: bool,
}

impl Cost {
    pub fn exact(value: Rat) -> Self {
        Cost { value, exact: true }
    }

    pub fn zero() -> Self {
        Cost::exact(Rat::zero())
    }

    fn approx(value: Rat) -> Self {
        Cost {
            value,
            exact: false,
        }
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }

    /// False iff some contributing evaluation was rounded.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn add(&self, other: &Cost) -> Cost {
        Cost {
            value: &self.value + &other.value,
            exact: self.exact && other.exact,
        }
    }

    pub fn scaled(&self, k: usize) -> Cost {
        Cost {
            value: &self.value * Rat::from_integer(BigInt::from(k)),
            exact: self.exact,
        }
    }
}

impl PartialEq for Cost {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for Cost {}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<CmpOrdering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> CmpOrdering {
        self.value.cmp(&other.value)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_integer() {
            write!(f, "{}", self.value.numer())
        } else {
            write!(f, "{}/{}", self.value.numer(), self.value.denom())
        }
    }
}

/// Whether `f - f(0)` is declared subadditive or superadditive.
///
/// The declaration is supplied by the user, never inferred: finitely many
/// evaluations cannot pin down the class of a black-box function.
/// [`CostFunction::spot_check_class`] can hunt for counterexamples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionClass {
    Arbitrary,
    SubShifted,
    SuperShifted,
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionClass::Arbitrary => write!(f, "arbitrary"),
            FunctionClass::SubShifted => write!(f, "sub"),
            FunctionClass::SuperShifted => write!(f, "super"),
        }
    }
}

/// The shape of a cost function on `[0, ∞)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CostKind {
    /// `f(x) = 2^x`.
    Pow2,
    /// `f(x) = slope·x + intercept`.
    Linear { slope: Rat, intercept: Rat },
    /// `f(x) = Σ coeffs[i]·x^i`.
    Polynomial { coeffs: Vec<Rat> },
    /// Continuous piecewise linear: starts at `f(0) = f0`, runs with
    /// `slopes[i]` between `breakpoints[i-1]` and `breakpoints[i]`, and with
    /// the last slope beyond the last breakpoint.
    PiecewiseLinear {
        f0: Rat,
        slopes: Vec<Rat>,
        breakpoints: Vec<Rat>,
    },
    /// `f(x) = √x`.
    Sqrt,
    /// Defined only at the listed lengths.
    Table { entries: Vec<(Rat, Rat)> },
}

/// A cost function plus its user-declared class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostFunction {
    kind: CostKind,
    class: FunctionClass,
}

impl CostFunction {
    pub fn new(kind: CostKind, class: FunctionClass) -> Result<Self, Error> {
        match &kind {
            CostKind::PiecewiseLinear {
                slopes,
                breakpoints,
                ..
            } => {
                if slopes.len() != breakpoints.len() + 1 {
                    return Err(Error::InvalidCostFunction(String::from(
                        "piecewise_linear needs one more slope than breakpoints",
                    )));
                }
                if breakpoints.first().is_some_and(|b| !b.is_positive()) {
                    return Err(Error::InvalidCostFunction(String::from(
                        "piecewise_linear breakpoints must be positive",
                    )));
                }
                if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidCostFunction(String::from(
                        "piecewise_linear breakpoints must be strictly increasing",
                    )));
                }
            }
            CostKind::Table { entries } => {
                if entries.iter().any(|(x, _)| x.is_negative()) {
                    return Err(Error::InvalidCostFunction(String::from(
                        "table lengths must be nonnegative",
                    )));
                }
                let mut xs: Vec<&Rat> = entries.iter().map(|(x, _)| x).collect();
                xs.sort();
                if xs.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::InvalidCostFunction(String::from(
                        "table lengths must be distinct",
                    )));
                }
            }
            _ => {}
        }
        Ok(CostFunction { kind, class })
    }

    pub fn pow2(class: FunctionClass) -> Self {
        CostFunction {
            kind: CostKind::Pow2,
            class,
        }
    }

    pub fn linear(slope: Rat, intercept: Rat, class: FunctionClass) -> Self {
        CostFunction {
            kind: CostKind::Linear { slope, intercept },
            class,
        }
    }

    pub fn sqrt(class: FunctionClass) -> Self {
        CostFunction {
            kind: CostKind::Sqrt,
            class,
        }
    }

    pub fn kind(&self) -> &CostKind {
        &self.kind
    }

    pub fn class(&self) -> FunctionClass {
        self.class
    }

    /// True iff the kind yields exact rationals at every rational length
    /// (powers of two only do at integer lengths, square roots never).
    pub fn rational_valued_on_integers(&self) -> bool {
        !matches!(self.kind, CostKind::Sqrt)
    }

    pub fn always_rational_valued(&self) -> bool {
        !matches!(self.kind, CostKind::Sqrt | CostKind::Pow2)
    }

    /// Evaluates `f(x)` for a length `x >= 0`.
    pub fn eval(&self, x: &Rat) -> Result<Cost, Error> {
        assert!(!x.is_negative(), "cost functions are defined on x >= 0");
        match &self.kind {
            CostKind::Pow2 => Ok(pow2(x)),
            CostKind::Linear { slope, intercept } => Ok(Cost::exact(slope * x + intercept)),
            CostKind::Polynomial { coeffs } => {
                let mut acc = Rat::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * x + c;
                }
                Ok(Cost::exact(acc))
            }
            CostKind::PiecewiseLinear {
                f0,
                slopes,
                breakpoints,
            } => {
                let mut acc = f0.clone();
                let mut prev = Rat::zero();
                for (slope, bp) in slopes.iter().zip(breakpoints.iter()) {
                    if x <= bp {
                        return Ok(Cost::exact(acc + slope * (x - prev)));
                    }
                    acc += slope * (bp - &prev);
                    prev = bp.clone();
                }
                let last = slopes.last().expect("validated: at least one slope");
                Ok(Cost::exact(acc + last * (x - prev)))
            }
            CostKind::Sqrt => Ok(sqrt(x)),
            CostKind::Table { entries } => entries
                .iter()
                .find(|(len, _)| len == x)
                .map(|(_, y)| Cost::exact(y.clone()))
                .ok_or_else(|| Error::UndefinedLength(x.clone())),
        }
    }

    /// Samples random rational pairs `(x, y)` and returns every pair
    /// violating the declared inequality for `f - f(0)`. An empty result is
    /// evidence, not proof. Pairs where `f` is undefined are skipped.
    pub fn spot_check_class(&self, samples: usize, seed: u64) -> Result<Vec<(Rat, Rat)>, Error> {
        let relation = match self.class {
            FunctionClass::Arbitrary => {
                return Err(Error::InvalidParameter(
                    "spot_check_class requires a declared sub or super class",
                ))
            }
            other => other,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut violations = Vec::new();
        let f0 = match self.eval(&Rat::zero()) {
            Ok(c) => c,
            Err(_) => return Ok(violations),
        };
        for _ in 0..samples {
            let x = random_rat(&mut rng);
            let y = random_rat(&mut rng);
            let (Ok(fx), Ok(fy), Ok(fxy)) = (self.eval(&x), self.eval(&y), self.eval(&(&x + &y)))
            else {
                continue;
            };
            let lhs = fxy.add(&f0);
            let rhs = fx.add(&fy);
            let violated = match relation {
                FunctionClass::SubShifted => lhs > rhs,
                FunctionClass::SuperShifted => lhs < rhs,
                FunctionClass::Arbitrary => unreachable!(),
            };
            if violated {
                violations.push((x, y));
            }
        }
        Ok(violations)
    }
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let num: i64 = rng.gen_range(0..=32);
    let den: i64 = rng.gen_range(1..=4);
    Rat::new(BigInt::from(num), BigInt::from(den))
}

fn pow2(x: &Rat) -> Cost {
    if x.is_integer() {
        let exp = x
            .to_integer()
            .to_u64()
            .expect("2^x exponent does not fit in u64");
        return Cost::exact(Rat::from_integer(BigInt::one() << exp));
    }
    // 2^(w + r/q) with 0 < r < q: take the floor of the q-th root of
    // 2^(r + q·PREC), which is 2^(r/q) scaled by 2^PREC.
    let p = x.numer();
    let q = x.denom();
    let (w, r) = p.div_mod_floor(q);
    let whole = w.to_u64().expect("2^x exponent does not fit in u64");
    let qq = q.to_u32().expect("pow2 denominator does not fit in u32");
    let shifted = BigInt::one() << (r.to_u64().unwrap() + qq as u64 * FLOAT_PRECISION_BITS);
    let root = shifted.nth_root(qq);
    Cost::approx(Rat::new(
        root << whole,
        BigInt::one() << FLOAT_PRECISION_BITS,
    ))
}

fn sqrt(x: &Rat) -> Cost {
    // √(p/q) = √(p·q)/q, scaled by 2^PREC under the root.
    let scaled = (x.numer() * x.denom()) << (2 * FLOAT_PRECISION_BITS);
    Cost::approx(Rat::new(
        scaled.sqrt(),
        x.denom() << FLOAT_PRECISION_BITS,
    ))
}

/// Memoizing evaluator: solvers evaluate `f` once per distinct length.
pub(crate) struct CostEvaluator<'a> {
    f: &'a CostFunction,
    memo: BTreeMap<Rat, Cost>,
}

impl<'a> CostEvaluator<'a> {
    pub fn new(f: &'a CostFunction) -> Self {
        CostEvaluator {
            f,
            memo: BTreeMap::new(),
        }
    }

    pub fn eval(&mut self, x: &Rat) -> Result<Cost, Error> {
        if let Some(c) = self.memo.get(x) {
            return Ok(c.clone());
        }
        let c = self.f.eval(x)?;
        self.memo.insert(x.clone(), c.clone());
        Ok(c)
    }
}

/// The three-piece function of the hardness reduction: slope `c2` up to
/// `x0 - eps`, slope `c1` up to `x0`, slope `c3` afterwards, continuous with
/// `f(0) = 0`.
pub fn three_slope_function(
    c1: Rat,
    c2: Rat,
    c3: Rat,
    eps: &Rat,
    x0: &Rat,
    class: FunctionClass,
) -> Result<CostFunction, Error> {
    CostFunction::new(
        CostKind::PiecewiseLinear {
            f0: Rat::zero(),
            slopes: alloc::vec![c2, c1, c3],
            breakpoints: alloc::vec![x0 - eps, x0.clone()],
        },
        class,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rat, rat_int};

    #[test]
    fn pow2_integer_is_exact() {
        let f = CostFunction::pow2(FunctionClass::Arbitrary);
        let c = f.eval(&rat_int(3)).unwrap();
        assert_eq!(c.value(), &rat_int(8));
        assert!(c.is_exact());
    }

    #[test]
    fn pow2_fractional_is_rounded() {
        let f = CostFunction::pow2(FunctionClass::Arbitrary);
        let c = f.eval(&rat(1, 2)).unwrap();
        assert!(!c.is_exact());
        // √2 ≈ 1.41421356…, correct to far more than 9 digits.
        let lo = rat(141421356, 100000000);
        let hi = rat(141421357, 100000000);
        assert!(c.value() > &lo && c.value() < &hi);
    }

    #[test]
    fn linear_half() {
        let f = CostFunction::linear(rat_int(2), rat_int(0), FunctionClass::SubShifted);
        assert_eq!(f.eval(&rat(1, 2)).unwrap().value(), &rat_int(1));
    }

    #[test]
    fn piecewise_reduction_shape() {
        // Slopes 2, 1, 3 with breakpoints 3 and 4: f(4) = 2·3 + 1·1 = 7.
        let f = three_slope_function(
            rat_int(1),
            rat_int(2),
            rat_int(3),
            &rat_int(1),
            &rat_int(4),
            FunctionClass::Arbitrary,
        )
        .unwrap();
        assert_eq!(f.eval(&rat_int(4)).unwrap().value(), &rat_int(7));
        assert_eq!(f.eval(&rat_int(1)).unwrap().value(), &rat_int(2));
        assert_eq!(f.eval(&rat_int(0)).unwrap().value(), &rat_int(0));
        assert_eq!(f.eval(&rat_int(5)).unwrap().value(), &rat_int(10));
    }

    #[test]
    fn sqrt_rounding() {
        let f = CostFunction::sqrt(FunctionClass::SubShifted);
        let c = f.eval(&rat_int(4)).unwrap();
        assert!(!c.is_exact());
        assert_eq!(c.value(), &rat_int(2)); // exact value, still flagged float
        let c2 = f.eval(&rat_int(2)).unwrap();
        let lo = rat(141421356, 100000000);
        let hi = rat(141421357, 100000000);
        assert!(c2.value() > &lo && c2.value() < &hi);
    }

    #[test]
    fn table_undefined_length() {
        let f = CostFunction::new(
            CostKind::Table {
                entries: vec![(rat_int(1), rat_int(5))],
            },
            FunctionClass::Arbitrary,
        )
        .unwrap();
        assert_eq!(f.eval(&rat_int(1)).unwrap().value(), &rat_int(5));
        assert_eq!(
            f.eval(&rat_int(2)).unwrap_err(),
            Error::UndefinedLength(rat_int(2))
        );
    }

    #[test]
    fn piecewise_validation() {
        let bad = CostFunction::new(
            CostKind::PiecewiseLinear {
                f0: rat_int(0),
                slopes: vec![rat_int(1)],
                breakpoints: vec![rat_int(1)],
            },
            FunctionClass::Arbitrary,
        );
        assert!(bad.is_err());
        let bad = CostFunction::new(
            CostKind::PiecewiseLinear {
                f0: rat_int(0),
                slopes: vec![rat_int(1), rat_int(2), rat_int(3)],
                breakpoints: vec![rat_int(2), rat_int(2)],
            },
            FunctionClass::Arbitrary,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn spot_check_pow2_super_clean() {
        let f = CostFunction::pow2(FunctionClass::SuperShifted);
        assert!(f.spot_check_class(200, 7).unwrap().is_empty());
    }

    #[test]
    fn spot_check_linear_sub_clean() {
        let f = CostFunction::linear(rat_int(3), rat_int(2), FunctionClass::SubShifted);
        assert!(f.spot_check_class(200, 1).unwrap().is_empty());
    }

    #[test]
    fn spot_check_pow2_declared_sub_violates() {
        let f = CostFunction::pow2(FunctionClass::SubShifted);
        let violations = f.spot_check_class(100, 1).unwrap();
        assert!(!violations.is_empty());
    }

    #[test]
    fn spot_check_requires_declared_class() {
        let f = CostFunction::pow2(FunctionClass::Arbitrary);
        assert!(f.spot_check_class(10, 0).is_err());
    }
}
