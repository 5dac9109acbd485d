//! Acceptance suite. Every check is exact (zero tolerance); each numbered
//! test prints one PASS/FAIL line. Randomized cases draw from a ChaCha
//! stream seeded by the `BURNSIDE_SEED` environment variable (fixed
//! default), so runs are reproducible.

use burnside_core::criteria::{check_laffey, check_thm_2gens, CriterionStatus};
use burnside_core::graph::{build_graph, obstruction_verdict, scc};
use burnside_core::kippenhahn::{
    block_identities_hold, build_family, integer_grid, laffey_pair, pencil_identity_holds,
    verify_counterexample, verify_even_multiplicity, FamilyParams,
};
use burnside_core::matrix::Matrix;
use burnside_core::oracle::algebra_dimension;
use burnside_core::scalar::Scalar;
use burnside_core::word::{eval_word, Word, WordStep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

fn seed(offset: u64) -> u64 {
    let base = std::env::var("BURNSIDE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x4275_726e_7369_6465u64);
    base.wrapping_add(offset)
}

fn outcome(number: u32, label: &str, ok: bool) -> bool {
    println!(
        "criterion {number} ({label}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

fn component_sets(components: &[Vec<usize>]) -> BTreeSet<BTreeSet<usize>> {
    components
        .iter()
        .map(|c| c.iter().map(|&v| v + 1).collect())
        .collect()
}

/// The printed 6x6 pair from the worked component example.
fn example_pair() -> (Matrix, Matrix) {
    let a1 = Matrix::from_i64_rows(&[
        [1, 1, 0, 0, 1, 0],
        [0, 1, 0, 1, 0, 0],
        [0, 0, 1, 1, 1, 1],
        [1, 1, 0, 1, 1, 0],
        [1, 0, 0, 1, 0, 0],
        [1, 0, 1, 0, 1, 0],
    ]);
    let a2 = Matrix::diagonal_i64(&[1, 1, 1, 2, 2, 2]);
    (a1, a2)
}

fn example_pair_c() -> (Matrix, Matrix) {
    let c1 = Matrix::from_i64_rows(&[[0, 1, 0, 1], [1, 0, 2, 0], [0, 2, 0, 0], [1, 0, 0, 0]]);
    let c2 = Matrix::diagonal_i64(&[1, 1, 0, 0]);
    (c1, c2)
}

#[test]
fn criterion_1_component_regression() {
    let started = Instant::now();
    let (a1, a2) = example_pair();
    let decomposition = scc(&build_graph(&[a1, a2]).unwrap());
    let expected: BTreeSet<BTreeSet<usize>> =
        [BTreeSet::from([1, 2, 4, 5]), BTreeSet::from([3, 6])]
            .into_iter()
            .collect();
    let sets_ok = component_sets(&decomposition.components) == expected;
    // Topological order puts the source component {3, 6} first.
    let order_ok = decomposition.components == vec![vec![2, 5], vec![0, 1, 3, 4]];
    let elapsed = started.elapsed();
    let ok = outcome(
        1,
        "component regression",
        sets_ok && order_ok && elapsed < Duration::from_secs(1),
    );
    assert!(
        ok,
        "sets_ok={sets_ok} order_ok={order_ok} elapsed={elapsed:?}"
    );
}

#[test]
fn criterion_2_laffey_counterexample() {
    let started = Instant::now();
    let (h, k) = laffey_pair();
    let dimension = algebra_dimension(&[h.clone(), k.clone()], true).unwrap();
    let squares = verify_even_multiplicity(&h, &k, &integer_grid(-2, 2)).unwrap();
    let elapsed = started.elapsed();
    let ok = outcome(
        2,
        "laffey pair",
        dimension == 64 && squares && elapsed < Duration::from_secs(30),
    );
    assert!(
        ok,
        "dimension={dimension} squares={squares} elapsed={elapsed:?}"
    );
}

#[test]
fn criterion_3_family_verification() {
    let started = Instant::now();
    let grid = integer_grid(-2, 2);
    let cases = [
        (4usize, Scalar::from_int(1)),
        (4, Scalar::from_ratio(1, 2)),
        (5, Scalar::from_int(2)),
    ];
    let mut ok = true;
    for (n, b) in cases {
        let params = FamilyParams::new(n, b.clone()).unwrap();
        let pair = build_family(&params);
        let expected_k = Matrix::from_blocks(n, 2, |i, j| {
            if i == j {
                Matrix::identity(2).scale(&Scalar::from_int(-2 * (i as i64 + 1)))
            } else {
                Matrix::zeros(2, 2)
            }
        });
        let report = verify_counterexample(&params, &grid, 3).unwrap();
        let partition_ok = report
            .criteria
            .witnesses
            .as_ref()
            .and_then(|w| w.partition.as_ref())
            .is_some_and(|p| p.parts() == vec![1; n]);
        let case_ok = pair.k == expected_k
            && report.samples.len() == 25
            && report.all_even
            && report.criteria.status == CriterionStatus::Pass
            && partition_ok
            && report.oracle_dimension == (2 * n) * (2 * n)
            && report.pass;
        if !case_ok {
            println!(
                "  case n={n} b={b}: all_even={} status={:?} dim={}",
                report.all_even, report.criteria.status, report.oracle_dimension
            );
        }
        ok &= case_ok;
    }
    let elapsed = started.elapsed();
    ok &= elapsed < Duration::from_secs(120);
    let ok = outcome(3, "family verification", ok);
    assert!(ok, "elapsed={elapsed:?}");
}

#[test]
fn criterion_4_closed_forms() {
    let mut ok = true;
    for b in [
        Scalar::from_int(1),
        Scalar::from_int(2),
        Scalar::from_ratio(1, 2),
    ] {
        let params = FamilyParams::new(4, b.clone()).unwrap();
        let pair = build_family(&params);
        let one = Scalar::one();

        let h12 = pair.h.p_block(2, 0, 1).unwrap();
        let expected_h12 = Matrix::from_rows(&[
            [Scalar::from_int(-2), &b - &one],
            [-&(&one + &b), Scalar::from_int(-2)],
        ]);
        let det = &(h12.get(0, 0) * h12.get(1, 1)) - &(h12.get(0, 1) * h12.get(1, 0));
        ok &= h12 == expected_h12 && det == &Scalar::from_int(3) + &(&b * &b);

        // Single-step words evaluate to the blocks; their loop products
        // give the closed forms.
        let set = [pair.h.clone(), pair.k.clone()];
        let w13 = Word::new(
            2,
            vec![
                WordStep {
                    matrix: 0,
                    from: 0,
                    to: 2,
                },
                WordStep {
                    matrix: 0,
                    from: 2,
                    to: 0,
                },
            ],
        )
        .unwrap();
        let h13h31 = eval_word(&w13, &set).unwrap();
        ok &= h13h31 == Matrix::from_i64_rows(&[[5, -4], [-4, 5]]);

        let h14 = pair.h.p_block(2, 0, 3).unwrap();
        let h41 = pair.h.p_block(2, 3, 0).unwrap();
        let h14h41 = &h14 * &h41;
        let commutator = &(&h13h31 * &h14h41) - &(&h14h41 * &h13h31);
        let forty_eight_b = &Scalar::from_int(48) * &b;
        let expected = Matrix::from_rows(&[
            [Scalar::zero(), forty_eight_b.clone()],
            [-&forty_eight_b, Scalar::zero()],
        ]);
        ok &= commutator == expected;
    }
    assert!(outcome(4, "closed block forms", ok));
}

#[test]
fn criterion_5_known_example_pair() {
    let (c1, c2) = example_pair_c();
    let verdict = check_thm_2gens(&c1, &c2, 3).unwrap();
    let dimension = algebra_dimension(&[c1, c2], true).unwrap();
    let ok = outcome(
        5,
        "4x4 example pair",
        verdict.status == CriterionStatus::Pass && dimension == 16,
    );
    assert!(ok, "status={:?} dimension={dimension}", verdict.status);
}

#[test]
fn criterion_6_identity_suite() {
    let mut ok = true;
    for b in [
        Scalar::from_int(1),
        Scalar::from_int(2),
        Scalar::from_ratio(1, 2),
        Scalar::from_int(-3),
    ] {
        ok &= block_identities_hold(&b);
    }
    let grid = integer_grid(-2, 2);
    for n in [4usize, 5] {
        let params = FamilyParams::new(n, Scalar::from_int(1)).unwrap();
        let pair = build_family(&params);
        ok &= grid
            .iter()
            .all(|(x0, y0)| pencil_identity_holds(&pair, x0, y0));
        let params = FamilyParams::new(n, Scalar::from_int(-3)).unwrap();
        let pair = build_family(&params);
        ok &= grid
            .iter()
            .all(|(x0, y0)| pencil_identity_holds(&pair, x0, y0));
    }
    assert!(outcome(6, "block and pencil identities", ok));
}

#[test]
fn criterion_7_obstruction_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed(7));
    let mut ok = true;
    for _ in 0..100 {
        let n = rng.gen_range(2..=6usize);
        let split = rng.gen_range(1..n);
        // Two matrices sharing a zero lower-left block.
        let mut pair = Vec::new();
        for _ in 0..2 {
            let m = Matrix::from_fn(n, n, |r, c| {
                if r >= split && c < split {
                    Scalar::zero()
                } else {
                    Scalar::from_int(rng.gen_range(-2..=2))
                }
            });
            pair.push(m);
        }
        let verdict = obstruction_verdict(&pair).unwrap();
        let dimension = algebra_dimension(&pair, true).unwrap();
        if verdict.strongly_connected || dimension >= n * n {
            println!("  failing instance: n={n} split={split} dim={dimension}");
            ok = false;
        }
    }
    assert!(outcome(7, "obstruction soundness on 100 random pairs", ok));
}

fn distinct_values(rng: &mut ChaCha8Rng, count: usize, lo: i64, hi: i64) -> Vec<i64> {
    let mut values = BTreeSet::new();
    while values.len() < count {
        values.insert(rng.gen_range(lo..=hi));
    }
    let mut out: Vec<i64> = values.into_iter().collect();
    for i in (1..out.len()).rev() {
        out.swap(i, rng.gen_range(0..=i));
    }
    out
}

#[test]
fn criterion_8_criteria_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed(8));
    let mut ok = true;

    // 25 instances passing the two-generator checker.
    let mut passed = 0;
    let mut attempts = 0;
    while passed < 25 && attempts < 2000 {
        attempts += 1;
        let blocks = rng.gen_range(2..=4usize);
        let size = 2 * blocks;
        let values = distinct_values(&mut rng, blocks, -9, 9);
        let diag: Vec<i64> = values.iter().flat_map(|&v| [v, v]).collect();
        let k = Matrix::diagonal_i64(&diag);
        let h = {
            let raw = Matrix::from_fn(size, size, |_, _| Scalar::from_int(rng.gen_range(-3..=3)));
            Matrix::from_fn(size, size, |r, c| {
                if r <= c {
                    raw.get(r, c).clone()
                } else {
                    raw.get(c, r).clone()
                }
            })
        };
        let verdict = check_thm_2gens(&h, &k, 2).unwrap();
        if verdict.status == CriterionStatus::Pass {
            passed += 1;
            let dimension = algebra_dimension(&[h, k], true).unwrap();
            if dimension != size * size {
                println!("  unsound two-generator pass: size={size} dim={dimension}");
                ok = false;
            }
        }
    }
    ok &= passed == 25;

    // 25 instances passing the diagonal-companion checker.
    for _ in 0..25 {
        let n = rng.gen_range(2..=8usize);
        // A single cycle through a shuffled node order keeps the graph
        // strongly connected; extra random edges are harmless.
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let mut a = Matrix::zeros(n, n);
        for w in 0..n {
            a.set(order[w], order[(w + 1) % n], Scalar::one());
        }
        for _ in 0..rng.gen_range(0..=n) {
            let r = rng.gen_range(0..n);
            let c = rng.gen_range(0..n);
            a.set(r, c, Scalar::from_int(rng.gen_range(1..=2)));
        }
        let b = Matrix::diagonal_i64(&distinct_values(&mut rng, n, -20, 20));
        let verdict = check_laffey(std::slice::from_ref(&a), &b).unwrap();
        if verdict.status != CriterionStatus::Pass {
            println!("  diagonal-companion checker did not pass: n={n}");
            ok = false;
            continue;
        }
        let dimension = algebra_dimension(&[a, b], true).unwrap();
        if dimension != n * n {
            println!("  unsound diagonal-companion pass: n={n} dim={dimension}");
            ok = false;
        }
    }

    assert!(outcome(8, "criteria soundness on 50 random passes", ok));
}

#[test]
fn criterion_9_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed(9));
    let mut ok = true;
    for _ in 0..200 {
        let n = rng.gen_range(2..=3usize);
        let gens: Vec<Matrix> = (0..2)
            .map(|_| Matrix::from_fn(n, n, |_, _| Scalar::from_int(rng.gen_range(0..=1))))
            .collect();
        let closure = algebra_dimension(&gens, false).unwrap();

        // Independent route: stack every product of length <= n^2 and take
        // the rank by fraction-free elimination.
        let mut level: Vec<Matrix> = gens.clone();
        let mut rows: Vec<Vec<Scalar>> = level.iter().map(Matrix::flatten).collect();
        for _ in 1..n * n {
            let mut next = Vec::with_capacity(level.len() * gens.len());
            for m in &level {
                for g in &gens {
                    let product = m * g;
                    rows.push(product.flatten());
                    next.push(product);
                }
            }
            level = next;
        }
        let stacked = Matrix::from_rows(&rows);
        let rank = stacked.rank();
        if closure != rank {
            println!("  closure={closure} stacked-rank={rank} n={n}");
            ok = false;
        }
    }
    assert!(outcome(9, "oracle equivalence on 200 random sets", ok));
}
