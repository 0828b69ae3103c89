//! The verification harness: runs the brute force, the subset dynamic
//! program and the covered-interval dynamic program on the same instance
//! and checks that they agree, plus any restricted path the declared
//! function class makes eligible.
//!
//! Agreement is exact in the rational backend and within a relative 1e-9 in
//! the float backend (the solvers themselves never use tolerances).

use iord_core::exposed::{
    enumerate_full, enumerate_interval_parts, enumerate_pairwise, enumerate_super_parts,
};
use iord_core::generators::{gen_random, RandomFamily};
use iord_core::geometry::rat_int;
use iord_core::instance::{three_slope_function, Cost, CostBackend, CostFunction, CostKind};
use iord_core::solver::{brute_force, dp_solve, subset_dp};
use iord_core::{FunctionClass, Instance, Rat};

use crate::json::instance_to_json;
use crate::CliError;

/// A disagreement found by the harness.
#[derive(Debug)]
pub struct VerifyFailure {
    /// The failing instance, serialized for reproduction.
    pub instance_json: String,
    pub detail: String,
    /// True when the oracles agree among themselves and only a restricted
    /// path deviates: the declared function class is then suspect.
    pub class_suspect: bool,
}

fn totals_close(a: &Cost, b: &Cost, backend: CostBackend) -> bool {
    match backend {
        CostBackend::Exact => a.value() == b.value(),
        CostBackend::Float => {
            let diff = if a.value() >= b.value() {
                a.value() - b.value()
            } else {
                b.value() - a.value()
            };
            let mut scale = rat_int(1);
            for v in [a.value(), b.value()] {
                let mag = if v < &rat_int(0) { -v.clone() } else { v.clone() };
                if mag > scale {
                    scale = mag;
                }
            }
            diff <= scale * Rat::new(1.into(), 1_000_000_000.into())
        }
    }
}

/// Checks one instance; `Ok(None)` means all solvers agree.
pub fn verify_instance(inst: &Instance) -> Result<Option<VerifyFailure>, CliError> {
    let backend = inst.cost_backend();
    let brute = brute_force(inst)?;
    let subset = subset_dp(inst)?;
    let full = dp_solve(inst, &enumerate_full(inst))?;

    let fail = |detail: String, class_suspect: bool| {
        Some(VerifyFailure {
            instance_json: instance_to_json(inst),
            detail,
            class_suspect,
        })
    };

    if !totals_close(&brute.total, &subset.total, backend) {
        return Ok(fail(
            format!(
                "brute force {} disagrees with subset dp {}",
                brute.total, subset.total
            ),
            false,
        ));
    }
    if !totals_close(&brute.total, &full.total, backend) {
        return Ok(fail(
            format!(
                "brute force {} disagrees with dp(full) {}",
                brute.total, full.total
            ),
            false,
        ));
    }

    // Class-eligible restricted paths.
    let restricted: Option<(&str, Result<_, _>)> = match inst.cost().class() {
        FunctionClass::SubShifted => Some((
            "dp(intervals)",
            dp_solve(inst, &enumerate_interval_parts(inst)),
        )),
        FunctionClass::SuperShifted => Some((
            "dp(super)",
            dp_solve(inst, &enumerate_super_parts(inst)),
        )),
        FunctionClass::Arbitrary => None,
    };
    if let Some((name, result)) = restricted {
        match result {
            Ok(sol) => {
                if !totals_close(&brute.total, &sol.total, backend) {
                    return Ok(fail(
                        format!(
                            "{name} found {} but the optimum is {}; \
                             the declared function class is suspect",
                            sol.total, brute.total
                        ),
                        true,
                    ));
                }
            }
            Err(iord_core::Error::InfeasibleEnumeration) => {
                return Ok(fail(
                    format!("{name} is infeasible; the declared function class is suspect"),
                    true,
                ));
            }
            Err(e) => return Err(e.into()),
        }
    }

    // The pairwise path applies whenever the structure admits it.
    if inst.classify().is_pairwise_connected {
        let sol = dp_solve(inst, &enumerate_pairwise(inst)?)?;
        if !totals_close(&brute.total, &sol.total, backend) {
            return Ok(fail(
                format!(
                    "dp(pairwise) found {} but the optimum is {}",
                    sol.total, brute.total
                ),
                false,
            ));
        }
    }

    Ok(None)
}

/// The cost functions exercised by the randomized suite, with their true
/// class declarations.
pub fn standard_cost_functions() -> Vec<CostFunction> {
    vec![
        CostFunction::pow2(FunctionClass::SuperShifted),
        CostFunction::new(
            CostKind::Polynomial {
                coeffs: vec![rat_int(0), rat_int(0), rat_int(1)],
            },
            FunctionClass::SuperShifted,
        )
        .expect("x^2 is valid"),
        CostFunction::linear(rat_int(1), rat_int(0), FunctionClass::SubShifted),
        CostFunction::sqrt(FunctionClass::SubShifted),
        three_slope_function(
            rat_int(1),
            rat_int(2),
            rat_int(3),
            &rat_int(1),
            &rat_int(4),
            FunctionClass::Arbitrary,
        )
        .expect("reduction-shaped function is valid"),
    ]
}

/// Runs the suite over `count` seeded random instances with `n` intervals,
/// cycling families and cost functions. Returns the instances checked and
/// all failures.
pub fn verify_random(
    n: usize,
    count: usize,
    seed: u64,
) -> Result<(usize, Vec<VerifyFailure>), CliError> {
    let costs = standard_cost_functions();
    let mut failures = Vec::new();
    for i in 0..count {
        let family = RandomFamily::ALL[i % 4];
        let cost = costs[i % costs.len()].clone();
        let base = gen_random(n, 16, seed.wrapping_add(i as u64), family, cost)
            .map_err(|e| CliError::Input(e.to_string()))?;
        if let Some(f) = verify_instance(&base)? {
            failures.push(f);
        }
    }
    Ok((count, failures))
}
