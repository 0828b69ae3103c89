//! Acceptance suite: one test per release criterion. Each test prints a
//! `criterion N: PASS` line (run with `--nocapture` to see them) and pins
//! its tolerances and time budget in code.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use iord_cli::json::{instance_to_json, parse_instance};
use iord_cli::svg;
use iord_core::covered::build_covered_table;
use iord_core::exposed::{
    enumerate_alpha, enumerate_full, enumerate_full_with_prefix_sizes, enumerate_interval_parts,
    enumerate_oracle, enumerate_pairwise, enumerate_sbound, enumerate_super_parts,
};
use iord_core::generators::{
    gen_lemma14, gen_partition_reduction, gen_random, PartitionReductionParams, RandomFamily,
};
use iord_core::geometry::{rat_int, DisjointUnion, Interval};
use iord_core::instance::{
    three_slope_function, Cost, CostBackend, CostFunction, CostKind, FunctionClass, Ordering,
};
use iord_core::solver::{brute_force, decide, dp_solve, subset_dp};
use iord_core::{Instance, Rat};

fn pass(criterion: u32, what: &str, detail: String) {
    println!("criterion {criterion} ({what}): PASS — {detail}");
}

/// Relative 1e-9 agreement in the float backend, exact otherwise.
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

/// The five reference cost functions with their true class declarations.
fn five_costs() -> Vec<CostFunction> {
    vec![
        CostFunction::pow2(FunctionClass::SuperShifted),
        CostFunction::new(
            CostKind::Polynomial {
                coeffs: vec![rat_int(0), rat_int(0), rat_int(1)],
            },
            FunctionClass::SuperShifted,
        )
        .unwrap(),
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
        .unwrap(),
    ]
}

/// Seeded corpus: `count` instances, n cycling 1..=7, integer endpoints in
/// [0, 16], families cycling.
fn corpus(count: usize, seed0: u64) -> Vec<Instance> {
    (0..count)
        .map(|i| {
            let n = 1 + i % 7;
            let family = RandomFamily::ALL[(i / 7) % 4];
            gen_random(
                n,
                16,
                seed0 + i as u64,
                family,
                CostFunction::pow2(FunctionClass::Arbitrary),
            )
            .unwrap()
        })
        .collect()
}

fn with_cost(inst: &Instance, f: &CostFunction) -> Instance {
    Instance::new(inst.intervals().to_vec(), f.clone(), None)
}

#[test]
fn acceptance_01_oracle_equivalence() {
    let start = Instant::now();
    let instances = corpus(504, 100);
    let costs = five_costs();
    let mut checked = 0usize;
    for base in &instances {
        for f in &costs {
            let inst = with_cost(base, f);
            let backend = inst.cost_backend();
            let a = brute_force(&inst).unwrap().total;
            let b = subset_dp(&inst).unwrap().total;
            let c = dp_solve(&inst, &enumerate_full(&inst)).unwrap().total;
            assert!(
                totals_close(&a, &b, backend),
                "brute {a} vs subset {b} on {:?}",
                inst.intervals()
            );
            assert!(
                totals_close(&a, &c, backend),
                "brute {a} vs dp(full) {c} on {:?}",
                inst.intervals()
            );
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(
        1,
        "oracle equivalence",
        format!("{checked} instance/cost pairs agreed in {elapsed:.2?}"),
    );
}

#[test]
fn acceptance_02_exposed_part_ground_truth() {
    let start = Instant::now();
    let instances = corpus(504, 100);
    for inst in &instances {
        let (full, sizes) = enumerate_full_with_prefix_sizes(inst);
        let got: BTreeSet<DisjointUnion> = full.iter().collect();
        let want: BTreeSet<DisjointUnion> = enumerate_oracle(inst).unwrap().iter().collect();
        assert_eq!(got, want, "instance {:?}", inst.intervals());
        for (k0, &size) in sizes.iter().enumerate() {
            let k = (k0 + 1) as i64;
            let bound = 6 * (1i64 << k) - k * k - 4 * k - 6;
            assert!(
                size as i64 <= bound,
                "prefix size {size} exceeds bound {bound} at step {k}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(
        2,
        "exposed-part ground truth",
        format!(
            "full = oracle and prefix bound held on {} instances in {elapsed:.2?}",
            instances.len()
        ),
    );
}

#[test]
fn acceptance_03_subadditive_fast_path() {
    let start = Instant::now();
    let subs = vec![
        CostFunction::linear(rat_int(1), rat_int(0), FunctionClass::SubShifted),
        CostFunction::sqrt(FunctionClass::SubShifted),
        // min(x, 5)
        CostFunction::new(
            CostKind::PiecewiseLinear {
                f0: rat_int(0),
                slopes: vec![rat_int(1), rat_int(0)],
                breakpoints: vec![rat_int(5)],
            },
            FunctionClass::SubShifted,
        )
        .unwrap(),
    ];
    let instances = corpus(252, 300);
    let mut checked = 0usize;
    for base in &instances {
        let n = base.len();
        for f in &subs {
            let inst = with_cost(base, f);
            let backend = inst.cost_backend();
            let parts = enumerate_interval_parts(&inst);
            assert!(parts.len() <= (2 * n) * (2 * n), "part count {}", parts.len());
            let got = dp_solve(&inst, &parts).unwrap().total;
            let want = brute_force(&inst).unwrap().total;
            assert!(
                totals_close(&got, &want, backend),
                "dp(intervals) {got} vs brute {want} on {:?}",
                inst.intervals()
            );
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    pass(
        3,
        "subadditive fast path",
        format!("{checked} runs matched brute force in {elapsed:.2?}"),
    );
}

#[test]
fn acceptance_04_superadditive_fast_path() {
    let start = Instant::now();
    let supers = vec![
        CostFunction::pow2(FunctionClass::SuperShifted),
        CostFunction::new(
            CostKind::Polynomial {
                coeffs: vec![rat_int(0), rat_int(0), rat_int(1)],
            },
            FunctionClass::SuperShifted,
        )
        .unwrap(),
        CostFunction::linear(rat_int(1), rat_int(0), FunctionClass::SuperShifted),
    ];
    let instances = corpus(252, 300);
    let mut checked = 0usize;
    for base in &instances {
        let n = base.len();
        for f in &supers {
            let inst = with_cost(base, f);
            let parts = enumerate_super_parts(&inst);
            assert!(parts.len() <= (2 * n) * (2 * n), "part count {}", parts.len());
            let got = dp_solve(&inst, &parts).unwrap().total;
            let want = brute_force(&inst).unwrap().total;
            assert_eq!(
                got.value(),
                want.value(),
                "dp(super) vs brute on {:?}",
                inst.intervals()
            );
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    pass(
        4,
        "superadditive fast path",
        format!("{checked} runs matched brute force in {elapsed:.2?}"),
    );
}

#[test]
fn acceptance_05_pairwise_path() {
    let start = Instant::now();
    let f = three_slope_function(
        rat_int(1),
        rat_int(2),
        rat_int(3),
        &rat_int(1),
        &rat_int(4),
        FunctionClass::Arbitrary,
    )
    .unwrap();
    let mut checked = 0usize;
    for i in 0..105usize {
        let n = 1 + i % 7;
        let inst = with_cost(
            &gen_random(
                n,
                16,
                500 + i as u64,
                RandomFamily::Pairwise,
                CostFunction::pow2(FunctionClass::Arbitrary),
            )
            .unwrap(),
            &f,
        );
        let parts = enumerate_pairwise(&inst).unwrap();
        assert!(parts.len() <= 4 * n * n * n, "part count {}", parts.len());
        let got = dp_solve(&inst, &parts).unwrap().total;
        let want = brute_force(&inst).unwrap().total;
        assert_eq!(got.value(), want.value(), "on {:?}", inst.intervals());
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    pass(
        5,
        "pairwise-intersecting path",
        format!("{checked} pairwise instances matched brute force in {elapsed:.2?}"),
    );
}

#[test]
fn acceptance_06_parameterized_enumerators() {
    let start = Instant::now();
    let instances: Vec<Instance> = corpus(336, 700)
        .into_iter()
        .filter(|i| i.len() <= 6)
        .collect();
    for inst in &instances {
        let n = inst.len();
        let full: BTreeSet<DisjointUnion> = enumerate_full(inst).iter().collect();

        let alpha_n = enumerate_alpha(inst, n as u32).unwrap();
        assert!(alpha_n.iter().collect::<BTreeSet<_>>() == full, "alpha(n) != full");
        for alpha in 1..=n as u32 {
            let set = enumerate_alpha(inst, alpha).unwrap();
            let bound = (2 * n as u128).pow(2 * alpha);
            assert!(
                (set.len() as u128) <= bound,
                "alpha({alpha}) size {} exceeds {bound}",
                set.len()
            );
        }

        let sbound = enumerate_sbound(inst);
        assert!(sbound.iter().collect::<BTreeSet<_>>() == full, "sbound != full");
        let s = inst.classify().max_subintervals;
        let bound = (2 * n as u128).pow(2) * (1u128 << s);
        assert!(
            (sbound.len() as u128) <= bound,
            "sbound size {} exceeds {bound}",
            sbound.len()
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    pass(
        6,
        "parameterized enumerators",
        format!(
            "alpha/sbound equal the full set within bounds on {} instances in {elapsed:.2?}",
            instances.len()
        ),
    );
}

#[test]
fn acceptance_07_adversarial_family() {
    let start = Instant::now();
    for n in 2..=10u32 {
        let inst = gen_lemma14(n, CostFunction::pow2(FunctionClass::SuperShifted)).unwrap();
        let lengths: BTreeSet<Rat> = enumerate_full(&inst).iter().map(|p| p.length()).collect();
        // The paper guarantees at least 2^{n-1} distinct non-empty lengths;
        // the construction realizes exactly the even lengths 2..2^n.
        assert!(
            lengths.len() >= 1 << (n - 1),
            "n={n}: only {} distinct lengths",
            lengths.len()
        );
        assert_eq!(lengths.len(), 1 << (n - 1), "n={n}: not exactly 2^(n-1)");
        let two = rat_int(2);
        assert!(lengths.iter().all(|l| (l / &two).is_integer()));
    }

    // Avoidance: for every realizable exposed length, some ordering has no
    // exposed part of that length.
    for n in 2..=6u32 {
        let inst = gen_lemma14(n, CostFunction::pow2(FunctionClass::SuperShifted)).unwrap();
        let lengths: BTreeSet<Rat> = enumerate_full(&inst).iter().map(|p| p.length()).collect();
        let mut per_ordering: Vec<BTreeSet<Rat>> = Vec::new();
        permutations(inst.len(), &mut |perm| {
            let (_, exposed) = inst.cost_of_ordering(&Ordering::new(perm.to_vec()));
            per_ordering.push(
                exposed
                    .iter()
                    .filter(|e| !e.is_empty())
                    .map(|e| e.length())
                    .collect(),
            );
        });
        for len in &lengths {
            assert!(
                per_ordering.iter().any(|s| !s.contains(len)),
                "n={n}: every ordering realizes length {len}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(
        7,
        "adversarial family",
        format!("length counts and avoidance orderings verified in {elapsed:.2?}"),
    );
}

fn permutations(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == n {
            f(cur);
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, n, f);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(&mut Vec::new(), &mut vec![false; n], n, f);
}

#[test]
fn acceptance_08_partition_reduction() {
    let start = Instant::now();
    // All multisets of 2..=5 integers from {1, 2, 3, 4}.
    let mut multisets: Vec<Vec<u64>> = Vec::new();
    fn extend(prefix: &mut Vec<u64>, min: u64, left: usize, out: &mut Vec<Vec<u64>>) {
        if prefix.len() >= 2 {
            out.push(prefix.clone());
        }
        if left == 0 {
            return;
        }
        for v in min..=4 {
            prefix.push(v);
            extend(prefix, v, left - 1, out);
            prefix.pop();
        }
    }
    extend(&mut Vec::new(), 1, 5, &mut multisets);

    let mut yes = 0usize;
    for items in &multisets {
        let total: u64 = items.iter().sum();
        let has_partition = total % 2 == 0
            && (0u32..(1 << items.len())).any(|mask| {
                let sum: u64 = items
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .sum();
                2 * sum == total
            });
        let inst = gen_partition_reduction(&PartitionReductionParams {
            items: items.clone(),
            eps: rat_int(1),
            x0: rat_int(4),
            slopes: (rat_int(1), rat_int(2), rat_int(3)),
        })
        .unwrap();
        assert_eq!(inst.cost_backend(), CostBackend::Exact);
        // Decision both via the auto solver and via the interval brute force.
        let w = inst.threshold().unwrap().clone();
        let brute_yes = brute_force(&inst).unwrap().total.value() <= &w;
        let decide_yes = decide(&inst).unwrap();
        assert_eq!(brute_yes, decide_yes, "items {items:?}");
        assert_eq!(
            has_partition, decide_yes,
            "items {items:?}: partition {has_partition} vs reduction {decide_yes}"
        );
        if decide_yes {
            yes += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    pass(
        8,
        "hardness reduction",
        format!(
            "{} multisets checked ({yes} yes-instances) in {elapsed:.2?}",
            multisets.len()
        ),
    );
}

#[test]
fn acceptance_09_scaling_smoke() {
    // Full DP on adversarial-shaped instances with 16 intervals.
    let square = CostFunction::new(
        CostKind::Polynomial {
            coeffs: vec![rat_int(0), rat_int(0), rat_int(1)],
        },
        FunctionClass::SuperShifted,
    )
    .unwrap();
    let linear = CostFunction::linear(rat_int(1), rat_int(0), FunctionClass::SubShifted);

    let base = gen_lemma14(16, square.clone()).unwrap();
    let reversed = Instance::new(
        base.intervals().iter().rev().cloned().collect(),
        square.clone(),
        None,
    );
    let with_linear = Instance::new(base.intervals().to_vec(), linear.clone(), None);

    let start = Instant::now();
    for inst in [&base, &reversed, &with_linear] {
        let full = dp_solve(inst, &enumerate_full(inst)).unwrap();
        // Cross-check against the polynomial restricted path for the
        // declared class.
        let restricted = match inst.cost().class() {
            FunctionClass::SuperShifted => dp_solve(inst, &enumerate_super_parts(inst)).unwrap(),
            _ => dp_solve(inst, &enumerate_interval_parts(inst)).unwrap(),
        };
        assert_eq!(full.total.value(), restricted.total.value());
        if inst.cost().class() == FunctionClass::SubShifted {
            // With f(x) = x every ordering costs the covered length.
            assert_eq!(full.total.value(), &inst.covered_area().length());
        }
    }
    let full_elapsed = start.elapsed();
    assert!(
        full_elapsed < Duration::from_secs(120),
        "n=16 full DP took {full_elapsed:?}"
    );

    // Restricted paths on n = 200 random instances, under 10 s each.
    let mut sub_times = Vec::new();
    let mut super_times = Vec::new();
    for seed in [11u64, 12, 13] {
        let base = gen_random(200, 400, seed, RandomFamily::General, linear.clone()).unwrap();

        let t = Instant::now();
        let sol = dp_solve(&base, &enumerate_interval_parts(&base)).unwrap();
        let dt = t.elapsed();
        assert!(dt < Duration::from_secs(10), "sub path took {dt:?}");
        sub_times.push(dt);
        assert_eq!(sol.total.value(), &base.covered_area().length());

        let sup = Instance::new(base.intervals().to_vec(), square.clone(), None);
        let t = Instant::now();
        let sol = dp_solve(&sup, &enumerate_super_parts(&sup)).unwrap();
        let dt = t.elapsed();
        assert!(dt < Duration::from_secs(10), "super path took {dt:?}");
        super_times.push(dt);
        // Superadditive with f(0) = 0: the optimum is at least f applied to
        // the covered length of each component, and at most any ordering.
        let mut lower = Cost::zero();
        for comp in sup.covered_area().components() {
            lower = lower.add(&sup.cost().eval(&comp.length()).unwrap());
        }
        assert!(sol.total >= lower);
        let naive = Ordering::new((0..sup.len()).collect());
        let (upper, _) = sup.cost_of_ordering(&naive);
        assert!(sol.total <= upper);
    }
    pass(
        9,
        "scaling smoke",
        format!(
            "n=16 full DP in {full_elapsed:.2?}; n=200 sub paths {sub_times:.2?}, super paths {super_times:.2?}"
        ),
    );
}

#[test]
fn acceptance_10_cli_contract() {
    let bin = env!("CARGO_BIN_EXE_iord");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let tmp = |name: &str, content: &str| -> String {
        let p = std::env::temp_dir().join(format!("iord-acceptance-{name}"));
        std::fs::write(&p, content).unwrap();
        p.to_string_lossy().into_owned()
    };

    // JSON round-trip exactness on generated instances.
    for args in [
        vec!["generate", "lemma14", "--n", "6"],
        vec!["generate", "random", "--n", "7", "--seed", "5", "--family", "agreeable"],
        vec![
            "generate", "partition", "--items", "1", "1", "2", "--eps", "1", "--x0", "4",
            "--slopes", "1", "2", "3",
        ],
    ] {
        let out = run(&args);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        let inst = parse_instance(&text).unwrap();
        assert_eq!(instance_to_json(&inst), text, "round trip for {args:?}");
    }

    // Exit codes: 0 ok, 1 verification failure, 2 input error, 3 cap
    // exceeded, 4 infeasible enumeration.
    let nested = tmp(
        "nested.json",
        r#"{"intervals": [{"start": 0, "end": 3}, {"start": 1, "end": 2}],
            "cost": {"kind": "pow2", "params": {}, "class": "super"}, "W": 6}"#,
    );
    assert_eq!(run(&["solve", &nested]).status.code(), Some(0));

    let misdeclared = tmp(
        "misdeclared.json",
        r#"{"intervals": [{"start": 0, "end": 3}, {"start": 1, "end": 2}],
            "cost": {"kind": "pow2", "params": {}, "class": "sub"}}"#,
    );
    assert_eq!(run(&["verify", &misdeclared]).status.code(), Some(1));

    let garbage = tmp("garbage.json", "]");
    assert_eq!(run(&["solve", &garbage]).status.code(), Some(2));

    let nine: Vec<String> = (0..9)
        .map(|i| format!("{{\"start\": {}, \"end\": {}}}", 3 * i, 3 * i + 2))
        .collect();
    let big = tmp(
        "nine.json",
        &format!(
            "{{\"intervals\": [{}], \"cost\": {{\"kind\": \"pow2\", \"params\": {{}}, \"class\": \"arbitrary\"}}}}",
            nine.join(", ")
        ),
    );
    assert_eq!(
        run(&["solve", &big, "--algorithm", "brute"]).status.code(),
        Some(3)
    );

    let disconnected = tmp(
        "disconnected.json",
        r#"{"intervals": [{"start": 0, "end": 1}, {"start": 2, "end": 3}],
            "cost": {"kind": "pow2", "params": {}, "class": "arbitrary"}}"#,
    );
    assert_eq!(
        run(&["solve", &disconnected, "--algorithm", "pairwise"])
            .status
            .code(),
        Some(4)
    );

    // SVG fixtures: dashed segments equal the computed exposed parts.
    let fixtures: Vec<(&str, &str, Vec<usize>)> = vec![
        (
            "fix-nested",
            r#"{"intervals": [{"start": 0, "end": 3}, {"start": 1, "end": 2}],
                "cost": {"kind": "pow2", "params": {}, "class": "super"}}"#,
            vec![1, 0],
        ),
        (
            "fix-single",
            r#"{"intervals": [{"start": 2, "end": 7}],
                "cost": {"kind": "pow2", "params": {}, "class": "arbitrary"}}"#,
            vec![0],
        ),
        (
            "fix-disjoint",
            r#"{"intervals": [{"start": 0, "end": 1}, {"start": 2, "end": 3}],
                "cost": {"kind": "pow2", "params": {}, "class": "arbitrary"}}"#,
            vec![0, 1],
        ),
    ];
    for (name, text, order) in fixtures {
        let path = tmp(&format!("{name}.json"), text);
        let order_flag = order
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",");
        let out = run(&["plot", &path, "--ordering", &order_flag]);
        assert!(out.status.success());
        let rendered = String::from_utf8(out.stdout).unwrap();

        let inst = parse_instance(text).unwrap();
        let ordering = Ordering::new(order);
        let (_, exposed) = inst.cost_of_ordering(&ordering);
        let scale = svg::Scale::for_instance(&inst).unwrap();
        let mut expected: Vec<(String, String)> = Vec::new();
        for part in &exposed {
            for c in part.components() {
                expected.push((scale.x(c.start()), scale.x(c.end())));
            }
        }
        let mut got: Vec<(String, String)> = Vec::new();
        for line in rendered.lines() {
            if let Some(rest) = line.trim().strip_prefix("<line class=\"exposed\" ") {
                let attr = |key: &str| -> String {
                    let tag = format!("{key}=\"");
                    let from = rest.find(&tag).unwrap() + tag.len();
                    rest[from..].split('"').next().unwrap().to_string()
                };
                got.push((attr("x1"), attr("x2")));
            }
        }
        assert_eq!(got, expected, "dashed segments for {name}");
    }

    // Fully dashed renderings: single interval and disjoint intervals.
    let single = tmp(
        "fully-dashed.json",
        r#"{"intervals": [{"start": 2, "end": 7}],
            "cost": {"kind": "pow2", "params": {}, "class": "arbitrary"}}"#,
    );
    let out = run(&["plot", &single, "--ordering", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("class=\"covered\"").count(), 0);

    pass(
        10,
        "CLI contract",
        "round trips, exit codes 0-4 and SVG fixtures verified".to_string(),
    );
}
