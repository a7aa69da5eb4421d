// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Every comparison is exact (integers or rationals); no tolerances are needed.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ifam::binom::c;
use ifam::lex::{lex_size, shadow_lower_bound, ShadowForm};
use ifam::oracle::{
    equality_char_sets, oracle_diversity_table, oracle_lemmin, oracle_lexpair, oracle_maximal_intersecting,
    table_breakpoints, Constraint, LexPairQuery, OracleWitness,
};
use ifam::resistance::{
    bound_ab, bound_ft, bound_full1, bound_hk, bound_thm1, bound_weighted, enumerate_resistant, lemmin_f,
    neutral_sets, resistant_pairs, size_c3, weight_c,
};
use ifam::subset::{k_subsets, GroundSet, Subset};
use ifam::zoo::{build_c3, build_hu, build_ji, build_t2, build_t2prime, covering_number, d37_counts, is_isomorphic};
use ifam::SetFamily;

const SEED: u64 = 20_240_611;
const TRIALS: usize = 10_000;

type Outcome = Result<Vec<String>, Vec<String>>;

fn rat(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn big(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

fn cu(n: u32, k: u32) -> u64 {
    c(n as i64, k as i64).to_u64().unwrap()
}

fn top(n: u32, k: u32) -> u64 {
    cu(n - 4, k - 3)
}

fn diversity_range(ks: std::ops::RangeInclusive<u32>, n_max: u32) -> Vec<(u32, u32)> {
    ks.flat_map(|k| (2 * k + 1..=n_max).map(move |n| (n, k))).collect()
}

// collects mismatches; a criterion passes when none are found
struct Tally {
    checked: usize,
    bad: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, bad: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.bad.push(what());
        }
    }

    fn done(self, notes: Vec<String>) -> Outcome {
        let mut notes = notes;
        notes.insert(0, format!("{} checks", self.checked));
        if self.bad.is_empty() {
            Ok(notes)
        } else {
            let mut bad = self.bad;
            bad.extend(notes);
            Err(bad)
        }
    }
}

fn c1_full1_sweep() -> Outcome {
    let mut t = Tally::new();
    for (n, k) in diversity_range(3..=5, 14) {
        for g in 1..=top(n, k) {
            let o = oracle_lexpair(&LexPairQuery::diversity(n, k, g)).unwrap().objective;
            let b = bound_full1(n, k, &BigUint::from(g)).unwrap().bound;
            t.expect(o == b, || format!("n={n} k={k} gamma={g}: oracle {o} bound {b}"));
        }
    }
    t.done(vec![])
}

fn c2_breakpoints() -> Outcome {
    let mut t = Tally::new();
    for (n, k) in diversity_range(3..=5, 14) {
        let claimed: Vec<u64> = enumerate_resistant(n, k).unwrap().iter().map(|g| g.to_u64().unwrap()).collect();
        let found = table_breakpoints(&oracle_diversity_table(n, k).unwrap());
        t.expect(claimed == found, || format!("n={n} k={k}: resistant {claimed:?} table {found:?}"));
        let head: Vec<u64> = (1..=k as u64 - 3).collect();
        t.expect(claimed.len() >= k as usize - 2 && claimed[..k as usize - 3] == head[..], || {
            format!("n={n} k={k}: first resistant numbers {claimed:?}")
        });
        // n - k for k > 3; at k = 3 the only resistant number is 1
        let want = if k > 3 { n as u64 - k as u64 } else { 1 };
        t.expect(claimed.get(k as usize - 3) == Some(&want), || {
            format!("n={n} k={k}: gamma_(k-2) = {:?}, want {want}", claimed.get(k as usize - 3))
        });
    }
    t.done(vec![])
}

fn c3_equality_classes() -> Outcome {
    let mut t = Tally::new();
    for (n, k) in diversity_range(4..=5, 12) {
        for (l, (bp, mut found)) in equality_char_sets(n, k).unwrap().into_iter().enumerate() {
            let mut claimed = neutral_sets(n, k, l + 1).unwrap();
            claimed.sort();
            found.sort();
            t.expect(claimed == found, || format!("n={n} k={k} window ending {bp}: neutral {claimed:?} optimal {found:?}"));
        }
    }
    t.done(vec![])
}

fn c4_weighted() -> Outcome {
    let mut t = Tally::new();
    let mut window_ok = true;
    for (n, k) in diversity_range(4..=5, 12) {
        for g in 0..=top(n, k) {
            let b = bound_weighted(n, k, &BigUint::from(g)).unwrap();
            let mut q = LexPairQuery::diversity(n, k, g);
            q.weight = weight_c(n, k);
            let o = oracle_lexpair(&q).unwrap().objective;
            t.expect(o == b.bound, || format!("n={n} k={k} gamma={g}: oracle {o} bound {}", b.bound));
            q.max_b = Some(b.window[0].1.to_u64().unwrap());
            window_ok &= oracle_lexpair(&q).unwrap().objective == b.bound;
        }
    }
    let note = format!("with |B| kept inside the resistant window of gamma the bound is exact everywhere: {window_ok}");
    t.done(vec![note])
}

fn c5_full_enumeration() -> Outcome {
    let mut t = Tally::new();
    let mut notes = Vec::new();
    for n in 7..=9u32 {
        let o = oracle_maximal_intersecting(n, 3, &Constraint::None, None).unwrap().objective;
        t.expect(o == rat(cu(n - 1, 2)), || format!("EKR n={n}: oracle {o}, want {}", cu(n - 1, 2)));
    }
    let hm = oracle_maximal_intersecting(8, 3, &Constraint::DiversityAtLeast(1), None).unwrap().objective;
    t.expect(hm == rat(16), || format!("Hilton-Milner n=8: oracle {hm}, want 16"));
    for n in 8..=9u32 {
        let r = oracle_maximal_intersecting(n, 3, &Constraint::DiversityAtLeast(2), None).unwrap();
        let want = big(&bound_hk(n, 3));
        notes.push(format!("diversity>=2 n={n} k=3: oracle {} with {} witness classes", r.objective, r.witnesses.len()));
        t.expect(r.objective == want, || format!("diversity>=2 n={n} k=3: oracle {}, size bound {want}", r.objective));
    }
    t.done(notes)
}

fn on_ground(m: u32, f: &SetFamily) -> SetFamily {
    SetFamily::new(GroundSet::upto(m), f.k(), f.sets().to_vec()).unwrap()
}

fn family_of(w: &OracleWitness) -> &SetFamily {
    match w {
        OracleWitness::Family(f) => f,
        OracleWitness::LexPair { .. } => panic!("family oracle returned a lex pair"),
    }
}

fn c6_lemmin() -> Outcome {
    let mut t = Tally::new();
    for (m, s, k) in [(10u32, 4u32, 4u32), (9, 4, 4)] {
        let plain = oracle_lemmin(m, s, k, false).unwrap();
        let want = big(&(lemmin_f(m, s, k, 2).unwrap() + 2u32));
        t.expect(plain.objective == want, || format!("m={m} s={s} k={k}: optimum {}, want f(2)+2 = {want}", plain.objective));
        let t2p = on_ground(m, &build_t2prime(s).unwrap());
        t.expect(plain.witnesses.len() == 1 && is_isomorphic(family_of(&plain.witnesses[0]), &t2p).unwrap(), || {
            format!("m={m} s={s} k={k}: {} witness classes, want one isomorphic to T2'({s})", plain.witnesses.len())
        });
        let inter = oracle_lemmin(m, s, k, true).unwrap();
        let want = big(&(lemmin_f(m, s, k, 3).unwrap() + 3u32));
        t.expect(inter.objective == want, || {
            format!("m={m} s={s} k={k} intersecting: optimum {}, want f(3)+3 = {want}", inter.objective)
        });
        let t2 = on_ground(m, &build_t2(s).unwrap());
        let iso = inter.witnesses.iter().filter(|w| is_isomorphic(family_of(w), &t2).unwrap()).count();
        let unique = s < k || inter.witnesses.len() == 1;
        t.expect(iso == 1 && unique, || {
            format!("m={m} s={s} k={k} intersecting: {} witness classes, {iso} isomorphic to T2({s})", inter.witnesses.len())
        });
    }
    t.done(vec![])
}

fn c7_constructions() -> Outcome {
    let mut t = Tally::new();
    for (n, k) in diversity_range(3..=6, 14) {
        let formula = size_c3(n, k).unwrap();
        let counted = build_c3(n, k).unwrap().len();
        t.expect(formula == BigUint::from(counted), || format!("C3 n={n} k={k}: formula {formula} counted {counted}"));
        let hk = build_hu(n, k, k).unwrap().len() as u64;
        let want = cu(n - 1, k - 1) - cu(n - k - 1, k - 1) + 1;
        t.expect(hk == want, || format!("H_k n={n} k={k}: counted {hk} formula {want}"));
    }
    for (n, k) in diversity_range(4..=6, 14) {
        let sizes: Vec<u64> = (1..=k).map(|i| build_ji(n, k, i).unwrap().len() as u64).collect();
        for i in 1..k {
            let d = sizes[i as usize - 1] - sizes[i as usize];
            let want = if i == 1 { cu(n - k - 2, k - 2) - 1 } else { cu(n - k - i - 1, k - 2) };
            t.expect(d == want, || format!("J n={n} k={k} i={i}: difference {d} formula {want}"));
        }
    }
    t.done(vec![])
}

fn random_family(rng: &mut ChaCha8Rng) -> SetFamily {
    let n = rng.gen_range(4..=10u32);
    let k = rng.gen_range(1..n.min(5));
    let g = GroundSet::upto(n);
    let p = rng.gen_range(0.05..0.6);
    let sets: Vec<Subset> = k_subsets(g, k).filter(|_| rng.gen_bool(p)).collect();
    SetFamily::new(g, k, sets).unwrap()
}

fn c8_dominance() -> Outcome {
    let mut t = Tally::new();
    // full1 against the real-u curve wherever the curve's threshold allows gamma
    for (n, k) in diversity_range(3..=5, 14) {
        for twice_u in 6..=2 * k {
            let u = BigRational::new(BigInt::from(twice_u), BigInt::from(2));
            let curve = bound_thm1(n, k, &u).unwrap();
            for g in 1..=top(n, k) {
                if curve.covers(&BigUint::from(g)) {
                    let b = bound_full1(n, k, &BigUint::from(g)).unwrap().bound;
                    t.expect(b <= curve.bound, || format!("n={n} k={k} u={u} gamma={g}: full1 {b} > {}", curve.bound));
                }
            }
        }
    }
    // the comparison bound restricts its smaller-uniformity side, which is B here
    for b in 2..=5u32 {
        for a in [b, b + 1] {
            for n in a + b + 1..=12 {
                for alpha in 1..=b {
                    let ft = bound_ft(n, b, a, &rat(alpha as u64)).unwrap();
                    let min_b = &ft.window[0].0;
                    if min_b.is_zero() {
                        continue;
                    }
                    let r = bound_ab(n, a, b, min_b, &BigRational::one()).unwrap();
                    t.expect(r.bound <= ft.bound, || format!("n={n} a={a} b={b} alpha={alpha}: ab {} > ft {}", r.bound, ft.bound));
                }
            }
        }
    }
    for (n, k) in diversity_range(3..=6, 14) {
        let ground = GroundSet::new(2, n).unwrap();
        let sums: Vec<BigUint> = resistant_pairs(n, k)
            .unwrap()
            .iter()
            .map(|(g, p)| lex_size(ground, &p.s, k - 1).unwrap() + g)
            .collect();
        for w in sums.windows(2) {
            t.expect(w[0] > w[1], || format!("n={n} k={k}: consecutive resistant sums {} then {}", w[0], w[1]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..TRIALS {
        let f = random_family(&mut rng);
        let n = f.ground().hi;
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(i + 1..=n);
        let g = f.shift(i, j).unwrap();
        t.expect(g.len() == f.len(), || format!("shift ({i},{j}) changed the size of {}", f.to_json()));
        t.expect(!f.is_intersecting() || g.is_intersecting(), || format!("shift ({i},{j}) broke intersection of {}", f.to_json()));
        let (sf, sg) = (f.shadow().unwrap().len(), g.shadow().unwrap().len());
        t.expect(sg <= sf, || format!("shift ({i},{j}) grew the shadow of {}", f.to_json()));
        if !f.is_empty() {
            let kk = shadow_lower_bound(&BigUint::from(f.len()), f.k(), ShadowForm::Cascade).unwrap();
            t.expect(kk <= rat(sf as u64), || format!("shadow {sf} below the cascade bound {kk} for {}", f.to_json()));
        }
    }
    t.done(vec![format!("{TRIALS} random shift/shadow trials, seed {SEED}")])
}

fn c9_feasible_witnesses() -> Outcome {
    let mut t = Tally::new();
    let mut notes = Vec::new();
    for (n, k) in diversity_range(3..=5, 12) {
        let c3 = build_c3(n, k).unwrap();
        t.expect(c3.is_intersecting() && covering_number(&c3) == 3, || format!("C3 n={n} k={k}: tau != 3"));
    }
    for k in 3..=6u32 {
        for n in 8 * k..=8 * k + 24 {
            let (size, deg) = d37_counts(n, k);
            t.expect(deg.clone() * 2u32 < size, || format!("D37 n={n} k={k}: degree {deg} of {size}"));
        }
    }
    let start = Instant::now();
    let r = oracle_maximal_intersecting(9, 4, &Constraint::TauAtLeast(3), None).unwrap();
    let c3 = build_c3(9, 4).unwrap();
    let iso = r.witnesses.iter().filter(|w| is_isomorphic(family_of(w), &c3).unwrap()).count();
    notes.push(format!(
        "recorded c(9,4,3) = {} ({} witness classes, {iso} isomorphic to C3(9,4) of size {}, {:.0?})",
        r.objective,
        r.witnesses.len(),
        c3.len(),
        start.elapsed()
    ));
    for n in 7..=8u32 {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let r = oracle_maximal_intersecting(n, 3, &Constraint::DegreeAtMost(half), None).unwrap();
        notes.push(format!("recorded largest maximal family with degree <= |F|/2 at n={n} k=3: {} (exact: {})", r.objective, r.exact));
    }
    t.done(notes)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("diversity-bound equality sweep", c1_full1_sweep),
        ("resistant breakpoints", c2_breakpoints),
        ("equality classification", c3_equality_classes),
        ("weighted sweep", c4_weighted),
        ("full enumeration at k=3", c5_full_enumeration),
        ("minimal tau=2 lemma oracle", c6_lemmin),
        ("construction and formula duals", c7_constructions),
        ("dominance and consistency", c8_dominance),
        ("feasible witnesses and records", c9_feasible_witnesses),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (verdict, lines) = match run() {
            Ok(l) => ("PASS", l),
            Err(l) => {
                failed += 1;
                ("FAIL", l)
            }
        };
        println!("criterion {}: {verdict} {name} ({:.1?})", i + 1, start.elapsed());
        for l in lines.iter().take(12) {
            println!("    {l}");
        }
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
