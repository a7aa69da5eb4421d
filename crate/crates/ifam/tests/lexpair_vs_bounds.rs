use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use ifam::binom::c;
use ifam::oracle::{oracle_lexpair, LexPairQuery};
use ifam::resistance::{bound_ab, bound_ab_branches, bound_ft, bound_full1, bound_weighted, weight_c, BoundReport};

fn rat(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[test]
fn full1_equals_lexpair_up_to_12() {
    for k in 3..=5u32 {
        for n in 2 * k + 1..=12 {
            let top = c(n as i64 - 4, k as i64 - 3).to_u64().unwrap();
            for g in 1..=top {
                let o = oracle_lexpair(&LexPairQuery::diversity(n, k, g)).unwrap();
                let b = bound_full1(n, k, &BigUint::from(g)).unwrap();
                assert_eq!(o.objective, b.bound, "n={n} k={k} g={g}");
            }
        }
    }
}

#[test]
fn weighted_equals_lexpair_within_windows() {
    for k in 4..=5u32 {
        for n in 2 * k + 1..=14 {
            let top = c(n as i64 - 4, k as i64 - 3).to_u64().unwrap();
            for g in 0..=top {
                let b = bound_weighted(n, k, &BigUint::from(g)).unwrap();
                let mut q = LexPairQuery::diversity(n, k, g);
                q.weight = weight_c(n, k);
                q.max_b = Some(b.window[0].1.to_u64().unwrap());
                let o = oracle_lexpair(&q).unwrap();
                assert_eq!(o.objective, b.bound, "n={n} k={k} g={g}");
            }
        }
    }
}

// every (a, b) branch bounds the pairs whose |B| stays in its window
fn oracle_in_window(n: u32, a: u32, b: u32, m: u64, r: &BoundReport) -> BigRational {
    let hi = r.window.iter().find(|(lo, hi)| *lo <= BigUint::from(m) && BigUint::from(m) <= *hi).unwrap().1.clone();
    let mut q = LexPairQuery::on(n, a, b, m);
    q.max_b = Some(hi.to_u64().unwrap());
    oracle_lexpair(&q).unwrap().objective
}

#[test]
fn ab_branches_hold_and_steps_are_attained() {
    let mut steps = 0;
    for (a, b) in [(2u32, 2u32), (2, 3), (3, 3), (3, 4), (4, 4), (4, 5), (3, 2), (4, 3)] {
        for n in a + b + 1..=12 {
            let nb = c(n as i64, b as i64).to_u64().unwrap();
            for m in 1..=nb {
                let Ok(branches) = bound_ab_branches(n, a, b, &BigUint::from(m), &BigRational::one()) else {
                    continue;
                };
                for r in &branches {
                    let o = oracle_in_window(n, a, b, m, r);
                    let tag = &r.inputs["branch"];
                    assert!(o <= r.bound, "n={n} a={a} b={b} minB={m} {tag}: {o} > {}", r.bound);
                    if tag == "step" {
                        assert_eq!(o, r.bound, "n={n} a={a} b={b} minB={m}");
                        steps += 1;
                    }
                }
            }
        }
    }
    assert!(steps > 100);
}

#[test]
fn ab_example_at_12_3_4() {
    let r = bound_ab(12, 3, 4, &BigUint::one(), &BigRational::one()).unwrap();
    assert_eq!(oracle_in_window(12, 3, 4, 1, &r), r.bound);
}

#[test]
fn ab_never_weaker_than_ft() {
    // the comparison bound constrains its smaller-uniformity side, which is B here
    let mut checked = 0;
    for b in 2..=5u32 {
        for a in [b, b + 1] {
            for n in a + b + 1..=12 {
                for alpha in 1..=b {
                    let ft = bound_ft(n, b, a, &rat(alpha as u64)).unwrap();
                    let min_b = &ft.window[0].0;
                    if *min_b == BigUint::from(0u32) {
                        continue;
                    }
                    let r = bound_ab(n, a, b, min_b, &BigRational::one()).unwrap();
                    assert!(r.bound <= ft.bound, "n={n} a={a} b={b} alpha={alpha}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 50);
}
