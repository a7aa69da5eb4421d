//! Brute-force engines that check the bounds at desk scale. None of them
//! uses the resistant-pair machinery: lex-pair optima come from explicit
//! disjointness tests between prefixes, family optima from exhaustive search.

mod clique;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

pub use clique::{for_each_maximal_intersecting, oracle_maximal_intersecting, Constraint};

use crate::binom::c;
use crate::family::SetFamily;
use crate::json;
use crate::lex::prefix_char_set;
use crate::subset::{k_subsets, GroundSet, Subset};
use crate::zoo::canonical_form;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum OracleWitness {
    /// Lex prefixes of the given sizes with their characteristic sets.
    LexPair { ground: GroundSet, a: u32, b: u32, size_a: u64, size_b: u64, s: Subset, t: Subset },
    Family(SetFamily),
}

impl OracleWitness {
    pub fn to_json(&self) -> Value {
        match self {
            OracleWitness::LexPair { ground, a, b, size_a, size_b, s, t } => json!({
                "kind": "lex_pair",
                "ground": [ground.lo, ground.hi],
                "a": a, "b": b,
                "size_a": size_a, "size_b": size_b,
                "s": s.elems(), "t": t.elems(),
            }),
            OracleWitness::Family(f) => json!({
                "kind": "family",
                "family": serde_json::from_str::<Value>(&f.to_json()).expect("family json"),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub objective: BigRational,
    pub witnesses: Vec<OracleWitness>,
    pub search_space_size: BigUint,
    /// False when the search only looks at maximal families under a
    /// constraint that is not closed upwards.
    pub exact: bool,
    /// False when witnesses were too large to reduce up to isomorphism.
    pub deduplicated: bool,
    pub elapsed: Duration,
}

impl OracleResult {
    /// Canonical JSON; the elapsed time is left out so runs diff cleanly.
    pub fn to_json(&self) -> Value {
        json!({
            "objective": json::rat(&self.objective),
            "witnesses": self.witnesses.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
            "search_space_size": json::big(&self.search_space_size),
            "exact": self.exact,
            "deduplicated": self.deduplicated,
        })
    }
}

fn ratu(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// All a-sets and b-sets of a ground in lex order, and for each a-set the
/// index of the first b-set disjoint from it.
pub struct LexProfile {
    pub ground: GroundSet,
    pub a: u32,
    pub b: u32,
    pub a_sets: Vec<Subset>,
    pub b_sets: Vec<Subset>,
    // prefix minimum of the first-disjoint index
    reach: Vec<usize>,
}

impl LexProfile {
    pub fn new(ground: GroundSet, a: u32, b: u32) -> Result<Self> {
        if ground.hi > 16 || a > 6 || b > 6 || a == 0 || b == 0 {
            return Err(Error::Cap(format!("lex-pair oracle needs n <= 16 and 1 <= a, b <= 6, got {ground} a={a} b={b}")));
        }
        let a_sets: Vec<Subset> = k_subsets(ground, a).collect();
        let b_sets: Vec<Subset> = k_subsets(ground, b).collect();
        let mut reach = Vec::with_capacity(a_sets.len());
        let mut low = b_sets.len();
        for x in &a_sets {
            let first = b_sets.iter().position(|y| !x.intersects(y)).unwrap_or(b_sets.len());
            low = low.min(first);
            reach.push(low);
        }
        Ok(LexProfile { ground, a, b, a_sets, b_sets, reach })
    }

    /// Largest m_a with L(m_a, a), L(m_b, b) cross-intersecting.
    pub fn max_a(&self, m_b: usize) -> usize {
        self.reach.partition_point(|&r| r >= m_b)
    }

    pub fn witness(&self, m_a: usize, m_b: usize) -> Result<OracleWitness> {
        Ok(OracleWitness::LexPair {
            ground: self.ground,
            a: self.a,
            b: self.b,
            size_a: m_a as u64,
            size_b: m_b as u64,
            s: prefix_char_set(self.ground, self.a, m_a as u128)?,
            t: prefix_char_set(self.ground, self.b, m_b as u128)?,
        })
    }

    /// max over m_b in [lo, hi] of max_a(m_b) + weight * m_b, with the
    /// m_b values attaining it.
    pub fn optimum(&self, lo: usize, hi: usize, weight: &BigRational) -> Option<(BigRational, Vec<usize>)> {
        let hi = hi.min(self.b_sets.len());
        let mut best: Option<(BigRational, Vec<usize>)> = None;
        for m_b in lo..=hi {
            let v = ratu(self.max_a(m_b) as u64) + weight * ratu(m_b as u64);
            match &mut best {
                Some((bv, at)) if *bv == v => at.push(m_b),
                Some((bv, _)) if *bv > v => {}
                _ => best = Some((v, vec![m_b])),
            }
        }
        best
    }
}

#[derive(Clone, Debug)]
pub struct LexPairQuery {
    pub ground: GroundSet,
    pub a: u32,
    pub b: u32,
    pub min_b: u64,
    /// Upper limit on |B|; all b-sets when absent.
    pub max_b: Option<u64>,
    pub weight: BigRational,
}

impl LexPairQuery {
    /// Cross-intersecting pair on [n], weight 1, no upper limit.
    pub fn on(n: u32, a: u32, b: u32, min_b: u64) -> Self {
        LexPairQuery { ground: GroundSet::upto(n), a, b, min_b, max_b: None, weight: BigRational::one() }
    }

    /// The diversity setting: (k-1)- and k-sets of [2, n], with |B| capped
    /// at C(n-4, k-3).
    pub fn diversity(n: u32, k: u32, gamma: u64) -> Self {
        let top: u64 = c(n as i64 - 4, k as i64 - 3).try_into().expect("small cap");
        LexPairQuery {
            ground: GroundSet { lo: 2, hi: n },
            a: k - 1,
            b: k,
            min_b: gamma,
            max_b: Some(top),
            weight: BigRational::one(),
        }
    }
}

/// Maximum of |A| + weight |B| over cross-intersecting lex prefixes with
/// min_b <= |B| <= max_b.
pub fn oracle_lexpair(q: &LexPairQuery) -> Result<OracleResult> {
    let start = Instant::now();
    let prof = LexProfile::new(q.ground, q.a, q.b)?;
    let nb = prof.b_sets.len() as u64;
    let hi = q.max_b.unwrap_or(nb).min(nb);
    if q.min_b > hi {
        return Err(Error::Domain(format!("minB = {} exceeds the available {hi}", q.min_b)));
    }
    let (objective, at) = prof.optimum(q.min_b as usize, hi as usize, &q.weight).expect("nonempty range");
    let witnesses = at.iter().map(|&m_b| prof.witness(prof.max_a(m_b), m_b)).collect::<Result<Vec<_>>>()?;
    let space = BigUint::from(prof.a_sets.len() + 1) * BigUint::from(hi - q.min_b + 1);
    Ok(OracleResult { objective, witnesses, search_space_size: space, exact: true, deduplicated: true, elapsed: start.elapsed() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiversityRow {
    pub gamma: u64,
    pub value: u64,
}

/// For every gamma in [0, C(n-4, k-3)] the diversity-setting lex-pair optimum.
pub fn oracle_diversity_table(n: u32, k: u32) -> Result<Vec<DiversityRow>> {
    if !(n <= 14 && k <= 6 && k >= 3 && n > 2 * k) {
        return Err(Error::Cap(format!("diversity table needs 2k < n <= 14 and 3 <= k <= 6, got n={n} k={k}")));
    }
    if let Some(rows) = cache_read(n, k) {
        return Ok(rows);
    }
    let q = LexPairQuery::diversity(n, k, 0);
    let prof = LexProfile::new(q.ground, q.a, q.b)?;
    let top = q.max_b.unwrap() as usize;
    let mut rows = vec![DiversityRow { gamma: 0, value: 0 }; top + 1];
    let mut run = 0u64;
    for g in (0..=top).rev() {
        run = run.max((prof.max_a(g) + g) as u64);
        rows[g] = DiversityRow { gamma: g as u64, value: run };
    }
    cache_write(n, k, &rows);
    Ok(rows)
}

/// Gamma values after which the table strictly drops, plus the last one.
pub fn table_breakpoints(rows: &[DiversityRow]) -> Vec<u64> {
    let mut out = Vec::new();
    for i in 1..rows.len() {
        if i + 1 == rows.len() || rows[i + 1].value < rows[i].value {
            out.push(rows[i].gamma);
        }
    }
    out
}

/// For each window (previous breakpoint, breakpoint] of the diversity table,
/// the characteristic sets of the B-prefixes in the window that attain the
/// window's optimum, in lex order.
pub fn equality_char_sets(n: u32, k: u32) -> Result<Vec<(u64, Vec<Subset>)>> {
    let rows = oracle_diversity_table(n, k)?;
    let q = LexPairQuery::diversity(n, k, 0);
    let prof = LexProfile::new(q.ground, q.a, q.b)?;
    let mut prev = 0u64;
    let mut out = Vec::new();
    for bp in table_breakpoints(&rows) {
        let (_, at) = prof.optimum(prev as usize + 1, bp as usize, &BigRational::one()).expect("nonempty window");
        let sets = at.iter().map(|&m| prefix_char_set(q.ground, k, m as u128)).collect::<Result<Vec<_>>>()?;
        out.push((bp, sets));
        prev = bp;
    }
    Ok(out)
}

pub fn table_csv(rows: &[DiversityRow]) -> String {
    let mut s = String::from("gamma,value\n");
    for r in rows {
        s.push_str(&format!("{},{}\n", r.gamma, r.value));
    }
    s
}

fn cache_path(n: u32, k: u32) -> Option<PathBuf> {
    std::env::var_os("IFAM_CACHE_DIR").map(|d| PathBuf::from(d).join(format!("diversity-{n}-{k}.csv")))
}

fn cache_read(n: u32, k: u32) -> Option<Vec<DiversityRow>> {
    let text = std::fs::read_to_string(cache_path(n, k)?).ok()?;
    let rows: Option<Vec<DiversityRow>> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (g, v) = l.split_once(',')?;
            Some(DiversityRow { gamma: g.parse().ok()?, value: v.parse().ok()? })
        })
        .collect();
    let rows = rows?;
    let top: u64 = c(n as i64 - 4, k as i64 - 3).try_into().ok()?;
    (rows.len() as u64 == top + 1).then_some(rows)
}

fn cache_write(n: u32, k: u32, rows: &[DiversityRow]) {
    if let Some(p) = cache_path(n, k) {
        if let Some(dir) = p.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        let _ = std::fs::write(p, table_csv(rows));
    }
}

/// Every family H of s-subsets of [m] with tau(H) = 2 that is minimal for
/// it, up to relabeling. Minimality gives, for each member H_l, an element
/// lying in all other members but not in H_l; labeling these 1..z puts
/// H_l = ([z] \ {l}) u R_l with R_l inside [z+1, m]. The R_l must not share
/// an element, or tau would be 1.
pub fn minimal_tau2_families(m: u32, s: u32) -> Result<Vec<SetFamily>> {
    let ground = GroundSet::upto(m);
    let mut out = Vec::new();
    for z in 2..=s + 1 {
        let r = s + 1 - z;
        if z + r > m {
            continue;
        }
        let rs: Vec<Subset> =
            if r == 0 { vec![Subset::EMPTY] } else { k_subsets(GroundSet { lo: z + 1, hi: m }, r).collect() };
        let base = Subset::interval(1, z);
        // nondecreasing choices: the labels 1..z are interchangeable
        let mut pick = Vec::with_capacity(z as usize);
        multisets(rs.len(), z as usize, 0, &mut pick, &mut |idx| {
            let common = idx.iter().fold(ground.mask(), |acc, &i| acc.inter(rs[i]));
            if common.is_empty() {
                let sets = idx.iter().enumerate().map(|(l, &i)| base.without(l as u32 + 1).union(rs[i])).collect();
                out.push(SetFamily::new(ground, s, sets).expect("s-sets of [m]"));
            }
        });
    }
    Ok(out)
}

fn multisets(n: usize, len: usize, from: usize, pick: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if pick.len() == len {
        f(pick);
        return;
    }
    for i in from..n {
        pick.push(i);
        multisets(n, len, i, pick, f);
        pick.pop();
    }
}

/// Maximum of |F| + |H| over minimal tau = 2 families H of s-subsets of
/// [m] and the (k-1)-sets F meeting every member of H.
pub fn oracle_lemmin(m: u32, s: u32, k: u32, require_intersecting: bool) -> Result<OracleResult> {
    if !(m <= 12 && s <= 5 && (4..=6).contains(&k) && m >= k + s && s >= 2) {
        return Err(Error::Cap(format!("lemma oracle needs m <= 12, 2 <= s <= 5, 4 <= k <= 6, m >= k + s; got m={m} s={s} k={k}")));
    }
    let start = Instant::now();
    let ground = GroundSet::upto(m);
    let fsets: Vec<Subset> = k_subsets(ground, k - 1).collect();
    let hs = minimal_tau2_families(m, s)?;
    let mut best: Option<u64> = None;
    let mut wit: Vec<SetFamily> = Vec::new();
    for h in &hs {
        if require_intersecting && !h.is_intersecting() {
            continue;
        }
        let f = fsets.iter().filter(|x| h.sets().iter().all(|y| x.intersects(y))).count();
        let v = (f + h.len()) as u64;
        match best {
            Some(b) if b > v => {}
            Some(b) if b == v => wit.push(h.clone()),
            _ => {
                best = Some(v);
                wit = vec![h.clone()];
            }
        }
    }
    let witnesses = dedup_families(wit)?;
    Ok(OracleResult {
        objective: ratu(best.unwrap_or(0)),
        witnesses: witnesses.into_iter().map(OracleWitness::Family).collect(),
        search_space_size: BigUint::from(hs.len()),
        exact: true,
        deduplicated: true,
        elapsed: start.elapsed(),
    })
}

/// One representative per isomorphism class (the least by member lists),
/// ordered by canonical form.
pub fn dedup_families(fams: Vec<SetFamily>) -> Result<Vec<SetFamily>> {
    let mut keyed = Vec::with_capacity(fams.len());
    for f in fams {
        keyed.push((canonical_form(&f)?, f.to_lists(), f));
    }
    keyed.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
    keyed.dedup_by(|x, y| x.0 == y.0);
    Ok(keyed.into_iter().map(|x| x.2).collect())
}

pub(crate) fn zero_result(space: BigUint, start: Instant) -> OracleResult {
    OracleResult {
        objective: BigRational::zero(),
        witnesses: Vec::new(),
        search_space_size: space,
        exact: true,
        deduplicated: true,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lex::lex_family;
    use crate::resistance::{lemmin_f, size_c3};
    use crate::zoo::{build_t2, build_t2prime, is_isomorphic};

    #[test]
    fn profile_matches_family_check() {
        let g = GroundSet::upto(8);
        let prof = LexProfile::new(g, 2, 3).unwrap();
        for m_b in [0usize, 1, 5, 20, 40] {
            let m_a = prof.max_a(m_b);
            let a = &prof.a_sets[..m_a];
            let b = &prof.b_sets[..m_b];
            assert!(crate::family::cross_intersecting(a, b));
            if m_a < prof.a_sets.len() {
                assert!(!crate::family::cross_intersecting(&prof.a_sets[..m_a + 1], b));
            }
        }
    }

    #[test]
    fn star_at_min_b_zero() {
        for n in 7..=10 {
            let r = oracle_lexpair(&LexPairQuery::on(n, 3, 3, 0)).unwrap();
            // weight 1, a = b: the whole of one side against nothing loses to
            // the all-sets pair C(n,3) + 0 vs the star
            assert!(r.objective >= ratu(c(n as i64 - 1, 2).try_into().unwrap()));
        }
    }

    #[test]
    fn witness_char_sets_regenerate_prefixes() {
        let r = oracle_lexpair(&LexPairQuery::on(12, 3, 4, 1)).unwrap();
        for w in &r.witnesses {
            let OracleWitness::LexPair { ground, a, b, size_a, size_b, s, t } = w else { panic!() };
            assert_eq!(lex_family(*ground, s, *a).unwrap().len() as u64, *size_a);
            assert_eq!(lex_family(*ground, t, *b).unwrap().len() as u64, *size_b);
        }
    }

    #[test]
    fn diversity_table_star_row() {
        for (n, k) in [(9, 4), (11, 5)] {
            let rows = oracle_diversity_table(n, k).unwrap();
            assert_eq!(BigUint::from(rows[0].value), c(n as i64 - 1, k as i64 - 1));
            assert!(rows.windows(2).all(|w| w[0].value >= w[1].value));
        }
    }

    #[test]
    fn minimal_tau2_enumeration_small() {
        // every member of the list has tau 2 and is minimal
        for h in minimal_tau2_families(7, 3).unwrap() {
            assert!(crate::zoo::is_minimal_for_tau(&h, 2), "{:?}", h.to_lists());
        }
    }

    #[test]
    fn lemma_oracle_at_10_4_4() {
        let r = oracle_lemmin(10, 4, 4, false).unwrap();
        assert_eq!(r.objective, ratu((lemmin_f(10, 4, 4, 2).unwrap() + 2u32).try_into().unwrap()));
        assert_eq!(r.witnesses.len(), 1);
        let OracleWitness::Family(h) = &r.witnesses[0] else { panic!() };
        assert!(is_isomorphic(h, &build_t2prime(4).unwrap()).unwrap());
        let r = oracle_lemmin(10, 4, 4, true).unwrap();
        assert_eq!(r.objective, ratu((size_c3(11, 4).unwrap()).try_into().unwrap()));
        let OracleWitness::Family(h) = &r.witnesses[0] else { panic!() };
        assert!(is_isomorphic(h, &build_t2(4).unwrap()).unwrap());
    }
}
