//! Resistant numbers and pairs, neutral chains, and the closed-form bounds.
//!
//! Conventions: on the diversity side a pair (S, T) lives on [2, n]; S is
//! the (k-1)-uniform side and carries the marker 1, T is the k-uniform side
//! and |L(T, k)| is the diversity. In the general (a, b) version both sides
//! live on [n] with no marker.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::binom::{c, cascade, ci, real_binomial};
use crate::json;
use crate::lex::{lex_size, CharPair};
use crate::subset::{GroundSet, Subset};
use crate::{Error, Result};

fn rat(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

fn rati(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn check_nk(n: u32, k: u32) -> Result<()> {
    if !(n > 2 * k && k >= 3) {
        return Err(Error::Domain(format!("need n > 2k >= 6, got n={n} k={k}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResistantDescriptor {
    pub n: u32,
    pub k: u32,
    #[serde(serialize_with = "ser_big")]
    pub gamma: BigUint,
    /// b_1 < ... < b_s from the (n-k-1)-cascade of gamma.
    pub t_gamma: Vec<u32>,
    /// ([2, b_s) \ T_gamma) u {b_s}.
    pub s_gamma: Vec<u32>,
    pub resistant: bool,
}

fn ser_big<S: serde::Serializer>(x: &BigUint, ser: S) -> std::result::Result<S::Ok, S::Error> {
    json::big(x).serialize(ser)
}

impl ResistantDescriptor {
    /// The resistant pair this number corresponds to: S = {1} u T_gamma
    /// on the (k-1) side and T = S_gamma on the k side.
    pub fn pair(&self) -> Option<CharPair> {
        if self.t_gamma.is_empty() || self.n > crate::subset::MAX_LABEL {
            return None;
        }
        let s = Subset::from_elems(self.t_gamma.iter().copied()).with(1);
        let t = Subset::from_elems(self.s_gamma.iter().copied());
        Some(CharPair { s, t, a: self.k - 1, b: self.k })
    }
}

pub fn resistant_descriptor(n: u32, k: u32, gamma: &BigUint) -> Result<ResistantDescriptor> {
    check_nk(n, k)?;
    if *gamma >= c(n as i64 - 1, k as i64 - 1) {
        return Err(Error::Domain(format!("gamma = {gamma} must stay below C({},{})", n - 1, k - 1)));
    }
    let r = n - k - 1;
    let form = cascade(gamma, r)?;
    // C(n - b_i, n - k - i) = C(a_j, j) with j = r + 1 - i
    let t_gamma: Vec<u32> = form.terms.iter().map(|&(a, _)| n - a as u32).collect();
    let s_gamma: Vec<u32> = match t_gamma.last() {
        None => Vec::new(),
        Some(&bs) => (2..bs).filter(|x| !t_gamma.contains(x)).chain([bs]).collect(),
    };
    let top = c(n as i64 - 4, k as i64 - 3);
    let resistant = *gamma == top
        || (s_gamma.len() as u32 <= k
            && t_gamma.len() as u32 <= k - 1
            && t_gamma.iter().enumerate().all(|(i, &b)| b > 2 * (i as u32 + 1) + 2));
    Ok(ResistantDescriptor { n, k, gamma: gamma.clone(), t_gamma, s_gamma, resistant })
}

/// All resistant numbers in [1, C(n-4, k-3)], ascending, by cascades.
pub fn enumerate_resistant(n: u32, k: u32) -> Result<Vec<BigUint>> {
    check_nk(n, k)?;
    let top = c(n as i64 - 4, k as i64 - 3).to_u64().ok_or_else(|| Error::Cap("too many candidates".into()))?;
    let mut out = Vec::new();
    for g in 1..=top {
        let g = BigUint::from(g);
        if resistant_descriptor(n, k, &g)?.resistant {
            out.push(g);
        }
    }
    Ok(out)
}

/// Resistant pairs by their defining conditions, with |L(T,k)|, sorted.
pub fn resistant_pairs(n: u32, k: u32) -> Result<Vec<(BigUint, CharPair)>> {
    check_nk(n, k)?;
    if n > crate::subset::MAX_LABEL {
        return Err(Error::Cap(format!("pair enumeration needs n <= 128, got {n}")));
    }
    let ground = GroundSet::new(2, n)?;
    let mut pairs = vec![CharPair {
        s: Subset::from_elems([1, 4]),
        t: Subset::from_elems([2, 3, 4]),
        a: k - 1,
        b: k,
    }];
    // |S| + |T| = j + 1 <= 2k bounds j
    for j in 2..=(2 * k - 1).min(n) {
        let mid = Subset::interval(2, j - 1);
        let m = mid.len();
        for bits in 0u64..(1 << m) {
            let sp = Subset(pdep(bits, mid.0));
            let s = sp.with(1).with(j);
            let t = mid.minus(sp).with(j);
            if s.len() > k || t.len() > k {
                continue;
            }
            let ok = (4..=j.max(4)).all(|i| {
                let inside = s.count_upto(i);
                inside < i - inside
            });
            if ok {
                pairs.push(CharPair { s, t, a: k - 1, b: k });
            }
        }
    }
    let mut out = pairs
        .into_iter()
        .map(|p| Ok((lex_size(ground, &p.t, k)?, p)))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

// scatter the low bits of `bits` onto the set bits of `mask`
fn pdep(bits: u64, mask: u128) -> u128 {
    let mut out = 0u128;
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if bits >> i & 1 == 1 {
            out |= low;
        }
        m &= m - 1;
        i += 1;
    }
    out
}

/// The chain T_l, T_l u {2|T_l|}, ... up to size k.
pub fn neutral_chain(t: &Subset, k: u32) -> Vec<Subset> {
    let mut cur = *t;
    let mut out = vec![cur];
    while cur.len() < k {
        cur = cur.with(2 * cur.len());
        out.push(cur);
    }
    out
}

/// Neutral sets of the l-th resistant number (l >= 1).
pub fn neutral_sets(n: u32, k: u32, l: usize) -> Result<Vec<Subset>> {
    let rs = enumerate_resistant(n, k)?;
    if l == 0 || l > rs.len() {
        return Err(Error::Domain(format!("resistant index {l} out of 1..={}", rs.len())));
    }
    let d = resistant_descriptor(n, k, &rs[l - 1])?;
    let t = Subset::from_elems(d.s_gamma.iter().copied());
    Ok(neutral_chain(&t, k))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Lex pair (L(S,a), L(T,b)) on the given ground.
    LexPair {
        ground: [u32; 2],
        #[serde(serialize_with = "crate::lex::ser_subset")]
        s: Subset,
        #[serde(serialize_with = "crate::lex::ser_subset")]
        t: Subset,
        a: u32,
        b: u32,
    },
    /// A named construction from the family zoo.
    Family { name: String, params: BTreeMap<String, u32> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub theorem: &'static str,
    pub inputs: BTreeMap<&'static str, String>,
    pub bound: BigRational,
    pub strict: bool,
    /// Inclusive ranges of the constrained quantity (diversity or |B|)
    /// over which the bound is claimed.
    pub window: Vec<(BigUint, BigUint)>,
    pub witness: Option<Witness>,
}

impl BoundReport {
    pub fn new(theorem: &'static str, bound: BigRational) -> Self {
        BoundReport { theorem, inputs: BTreeMap::new(), bound, strict: false, window: Vec::new(), witness: None }
    }

    pub fn input(mut self, name: &'static str, v: impl ToString) -> Self {
        self.inputs.insert(name, v.to_string());
        self
    }

    pub fn covers(&self, x: &BigUint) -> bool {
        self.window.iter().any(|(lo, hi)| lo <= x && x <= hi)
    }

    /// The bound as an integer, when it is one.
    pub fn integer(&self) -> Option<BigUint> {
        if self.bound.is_integer() && !self.bound.is_negative() {
            self.bound.to_integer().to_biguint()
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Value {
        let inputs: serde_json::Map<String, Value> =
            self.inputs.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect();
        let window: Vec<Value> = self.window.iter().map(|(a, b)| json!([json::big(a), json::big(b)])).collect();
        json!({
            "theorem": self.theorem,
            "inputs": inputs,
            "bound": json::rat(&self.bound),
            "strict": self.strict,
            "window": window,
            "witness": self.witness,
        })
    }
}

fn diversity_pair_witness(n: u32, p: &CharPair) -> Witness {
    Witness::LexPair { ground: [2, n], s: p.s, t: p.t, a: p.a, b: p.b }
}

/// Resistant numbers with their descriptors, gamma_0 = 0 excluded.
fn resistant_table(n: u32, k: u32) -> Result<Vec<ResistantDescriptor>> {
    enumerate_resistant(n, k)?.iter().map(|g| resistant_descriptor(n, k, g)).collect()
}

/// Size of L(S_l, k-1) on [2, n] for the l-th resistant descriptor.
fn a_side(n: u32, k: u32, d: &ResistantDescriptor) -> Result<BigUint> {
    lex_size(GroundSet::new(2, n)?, &Subset::from_elems(d.t_gamma.iter().copied()), k - 1)
}

/// Window l with gamma_{l-1} < gamma <= gamma_l (l >= 1).
fn locate<'a>(table: &'a [ResistantDescriptor], gamma: &BigUint) -> (BigUint, &'a ResistantDescriptor) {
    let mut prev = BigUint::zero();
    for d in table {
        if *gamma <= d.gamma {
            return (prev, d);
        }
        prev = d.gamma.clone();
    }
    unreachable!("gamma below the last resistant number")
}

/// Largest |F| for intersecting F with diversity at least gamma, as a
/// step function of gamma with jumps at the resistant numbers.
pub fn bound_full1(n: u32, k: u32, gamma: &BigUint) -> Result<BoundReport> {
    check_nk(n, k)?;
    let top = c(n as i64 - 4, k as i64 - 3);
    if gamma.is_zero() {
        let mut r = BoundReport::new("full1", rat(&c(n as i64 - 1, k as i64 - 1)))
            .input("n", n)
            .input("k", k)
            .input("gamma", 0);
        r.window = vec![(BigUint::zero(), BigUint::zero())];
        r.witness = Some(Witness::Family { name: "star".into(), params: [("n".into(), n), ("k".into(), k)].into() });
        return Ok(r);
    }
    if *gamma > top {
        // beyond the step range: the u = 3 windows, else the u = 3 curve
        return match bound_corhm(n, k, 3, gamma) {
            Ok(r) => Ok(r),
            Err(_) => bound_thm1(n, k, &rati(3)),
        };
    }
    let table = resistant_table(n, k)?;
    let (prev, d) = locate(&table, gamma);
    let value = a_side(n, k, d)? + &d.gamma;
    let mut r = BoundReport::new("full1", rat(&value)).input("n", n).input("k", k).input("gamma", gamma);
    r.window = vec![(prev + 1u32, d.gamma.clone())];
    r.witness = d.pair().map(|p| diversity_pair_witness(n, &p));
    Ok(r)
}

/// The real-u curve C(n-1,k-1) + C(n-u-1,n-k-1) - C(n-u-1,k-1).
pub fn bound_thm1(n: u32, k: u32, u: &BigRational) -> Result<BoundReport> {
    if n <= 2 * k || *u < rati(3) || *u > rati(k as i64) {
        return Err(Error::Domain(format!("need n > 2k and 3 <= u <= k, got n={n} k={k} u={u}")));
    }
    let x = rati(n as i64 - 1) - u;
    let thr = real_binomial(&x, n as i64 - k as i64 - 1);
    let v = rat(&c(n as i64 - 1, k as i64 - 1)) + &thr - real_binomial(&x, k as i64 - 1);
    let mut r = BoundReport::new("thm1", v).input("n", n).input("k", k).input("u", u);
    // claimed for every diversity >= the threshold
    let lo = thr.ceil().to_integer().to_biguint().unwrap_or_default();
    r.window = vec![(lo, c(n as i64, k as i64))];
    if u.is_integer() {
        let uu = u.to_integer().to_u32().unwrap();
        r.witness = Some(Witness::Family {
            name: "Hu".into(),
            params: [("n".into(), n), ("k".into(), k), ("u".into(), uu)].into(),
        });
    }
    Ok(r)
}

/// The curve value minus C(n-k-2, k-2) - 1, just past an integer threshold.
pub fn bound_corhm(n: u32, k: u32, u: u32, gamma: &BigUint) -> Result<BoundReport> {
    let (ni, ki, ui) = (n as i64, k as i64, u as i64);
    let value = ci(ni - 1, ki - 1) + ci(ni - ui - 1, ni - ki - 1) - ci(ni - ui - 1, ki - 1) - ci(ni - ki - 2, ki - 2) + 1;
    let mut r = BoundReport::new("corhm", BigRational::from_integer(value))
        .input("n", n)
        .input("k", k)
        .input("u", u)
        .input("gamma", gamma);
    if u >= 4 {
        if !(n > 2 * k && k >= 4 && u <= k) {
            return Err(Error::Domain(format!("need n > 2k >= 8 and 4 <= u <= k, got n={n} k={k} u={u}")));
        }
        let thr = c(ni - ui - 1, ni - ki - 1);
        if *gamma <= thr {
            return Err(Error::Domain(format!("gamma must exceed C({},{}) = {thr}", ni - ui - 1, ni - ki - 1)));
        }
        r.window = vec![(thr + 1u32, c(ni, ki))];
        r = r.input("branch", "threshold");
        return Ok(r);
    }
    if u != 3 || n <= 2 * k || k < 3 {
        return Err(Error::Domain(format!("need u >= 3 and n > 2k >= 6, got n={n} k={k} u={u}")));
    }
    let drop = c(ni - ki - 2, ki - 2);
    let w1 = (c(ni - 4, ki - 3) + 1u32, (c(ni - 3, ki - 2) + 1u32) - &drop);
    let w2 = (c(ni - 3, ki - 2) + 1u32, (c(ni - 3, ki - 2) + c(ni - 4, ki - 2) + 1u32) - &drop);
    let branch = if w1.0 <= *gamma && *gamma <= w1.1 {
        r.window = vec![w1];
        "u3-first"
    } else if w2.0 <= *gamma && *gamma <= w2.1 {
        r.window = vec![w2];
        "u3-second"
    } else {
        return Err(Error::Domain(format!("gamma = {gamma} lies outside both u = 3 windows")));
    };
    Ok(r.input("branch", branch))
}

/// The size bound for diversity at least 2 and k >= 4.
pub fn bound_hk(n: u32, k: u32) -> BigUint {
    let (n, k) = (n as i64, k as i64);
    (c(n - 1, k - 1) + 2u32) - c(n - k - 1, k - 1) - c(n - k - 2, k - 2)
}

/// The weight (n-k-2)/(k-2).
pub fn weight_c(n: u32, k: u32) -> BigRational {
    BigRational::new(BigInt::from(n as i64 - k as i64 - 2), BigInt::from(k as i64 - 2))
}

/// Bound on Delta + C * gamma over the resistant window containing gamma.
pub fn bound_weighted(n: u32, k: u32, gamma: &BigUint) -> Result<BoundReport> {
    check_nk(n, k)?;
    let top = c(n as i64 - 4, k as i64 - 3);
    if *gamma > top {
        return Err(Error::Domain(format!("gamma = {gamma} exceeds C({},{}) = {top}", n - 4, k - 3)));
    }
    let w = weight_c(n, k);
    if gamma.is_zero() {
        let mut r = BoundReport::new("weighted", rat(&c(n as i64 - 1, k as i64 - 1)))
            .input("n", n)
            .input("k", k)
            .input("gamma", 0)
            .input("weight", &w);
        r.window = vec![(BigUint::zero(), BigUint::zero())];
        return Ok(r);
    }
    let table = resistant_table(n, k)?;
    let (prev, d) = locate(&table, gamma);
    let value = rat(&a_side(n, k, d)?) + &w * rat(&d.gamma);
    let mut r = BoundReport::new("weighted", value)
        .input("n", n)
        .input("k", k)
        .input("gamma", gamma)
        .input("weight", &w);
    r.window = vec![(prev + 1u32, d.gamma.clone())];
    r.witness = d.pair().map(|p| diversity_pair_witness(n, &p));
    Ok(r)
}

/// The two corollary forms of the weighted bound: any family with
/// gamma <= C(n-4,k-3), and the non-trivial ones.
pub fn bound_weighted_corollary(n: u32, k: u32) -> Result<(BoundReport, BoundReport)> {
    check_nk(n, k)?;
    let w = weight_c(n, k);
    let top = c(n as i64 - 4, k as i64 - 3);
    let mut all = BoundReport::new("weighted-all", rat(&c(n as i64 - 1, k as i64 - 1)))
        .input("n", n)
        .input("k", k)
        .input("weight", &w);
    all.window = vec![(BigUint::zero(), top.clone())];
    let nt = rat(&c(n as i64 - 1, k as i64 - 1)) - rat(&c(n as i64 - k as i64 - 1, k as i64 - 1)) + &w;
    let mut nontrivial = BoundReport::new("weighted-nontrivial", nt).input("n", n).input("k", k).input("weight", &w);
    nontrivial.window = vec![(BigUint::one(), top)];
    Ok((all, nontrivial))
}

/// (a, b)-resistant pairs on [n] with |L(T, b)|, sorted by that size.
pub fn ab_resistant_pairs(n: u32, a: u32, b: u32) -> Result<Vec<(BigUint, CharPair)>> {
    if a < 2 || b < 1 || n <= a + b || a > b + 1 {
        return Err(Error::Domain(format!("need 2 <= a <= b + 1 and n > a + b, got n={n} a={a} b={b}")));
    }
    if n > crate::subset::MAX_LABEL {
        return Err(Error::Cap(format!("pair enumeration needs n <= 128, got {n}")));
    }
    let t0 = b + 1 - a;
    let ground = GroundSet::upto(n);
    let base = CharPair { s: Subset::singleton(t0 + 1), t: Subset::interval(1, t0 + 1), a, b };
    let mut pairs = vec![base];
    for j in 1..=(a + b - 1).min(n) {
        let mid = Subset::interval(1, j - 1);
        for bits in 0u64..(1 << mid.len()) {
            let sp = Subset(pdep(bits, mid.0));
            let s = sp.with(j);
            let t = mid.minus(sp).with(j);
            if s.len() > a || t.len() > b {
                continue;
            }
            let ok = (t0 + 1..=j.max(t0 + 1)).all(|i| {
                let inside = s.count_upto(i) as i64;
                inside - (a as i64) < (i as i64 - inside) - b as i64
            });
            if ok && (s, t) != (base.s, base.t) {
                pairs.push(CharPair { s, t, a, b });
            }
        }
    }
    let mut out = pairs
        .into_iter()
        .map(|p| Ok((lex_size(ground, &p.t, b)?, p)))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// Every bound on |A| + weight |B| from the (a, b) theory whose window
/// contains `min_b`. Cross-intersecting A, B live on [n].
pub fn bound_ab_branches(n: u32, a: u32, b: u32, min_b: &BigUint, weight: &BigRational) -> Result<Vec<BoundReport>> {
    if a < 2 || n <= a + b || a > b + 1 {
        return Err(Error::Domain(format!("need 2 <= a <= b + 1 and n > a + b, got n={n} a={a} b={b}")));
    }
    let max_w = BigRational::new(BigInt::from(n - b - 1), BigInt::from(a - 1));
    if !weight.is_positive() || *weight > max_w {
        return Err(Error::Domain(format!("weight {weight} must lie in (0, {max_w}]")));
    }
    let (ni, ai, bi) = (n as i64, a as i64, b as i64);
    let t = (b + 1 - a) as i64;
    let unit = weight.is_one();
    let mut out = Vec::new();
    let tag = |r: BoundReport, branch: &str| {
        r.input("n", n).input("a", a).input("b", b).input("minB", min_b).input("weight", weight).input("branch", branch)
    };

    // resistant steps
    let pairs = ab_resistant_pairs(n, a, b)?;
    let mut prev = BigUint::zero();
    for (beta, p) in &pairs {
        if prev < *min_b && min_b <= beta {
            let v = rat(&lex_size(GroundSet::upto(n), &p.s, a)?) + weight * rat(beta);
            let mut r = tag(BoundReport::new("ab", v), "step");
            r.window = vec![(prev.clone() + 1u32, beta.clone())];
            r.witness = Some(Witness::LexPair { ground: [1, n], s: p.s, t: p.t, a, b });
            out.push(r);
        }
        prev = beta.clone();
    }

    if !unit {
        return Ok(out);
    }
    let cap = c(ni - t, ai - 1);
    let upper = c(ni - t, ai - 1) + c(ni - t - 1, ai - 1);
    let corr = c(ni - bi - 1, ai - 1);
    let f3 = |i: i64| {
        BigRational::from_integer(ci(ni, ai) - ci(ni - i, ai) + ci(ni - i, bi - i) - ci(ni - bi - 1, ai - 1) + 1)
    };
    // large |B|, i >= t + 2
    for i in (t + 2)..=bi {
        let lo = c(ni - i, bi - i) + 1u32;
        if lo <= *min_b && *min_b <= upper {
            let mut r = tag(BoundReport::new("ab", f3(i)), "large-b").input("i", i);
            r.window = vec![(lo, upper.clone())];
            out.push(r);
        }
    }
    // large |B|, i = t + 1, with its excluded middle interval
    {
        let i = t + 1;
        let lo = c(ni - i, bi - i) + 1u32;
        let hi = (upper.clone() + 1u32) - &corr;
        let gap_lo = num_traits::CheckedSub::checked_sub(&(cap.clone() + 2u32), &corr);
        let mut window = Vec::new();
        match gap_lo {
            Some(g) if g <= cap => {
                if lo < g {
                    window.push((lo.clone(), g - 1u32));
                }
                if cap < hi {
                    window.push((cap.clone() + 1u32, hi.clone()));
                }
            }
            _ => window.push((lo.clone(), hi.clone())),
        }
        window.retain(|(x, y)| x <= y);
        let mut r = tag(BoundReport::new("ab", f3(i)), "large-b-first").input("i", i);
        r.window = window;
        if r.covers(min_b) {
            out.push(r);
        }
    }
    // small |B|
    if *min_b <= cap {
        let mut r = tag(BoundReport::new("ab", rat(&c(ni, ai))), "small-b");
        r.window = vec![(BigUint::zero(), cap.clone())];
        out.push(r);
        for j in t..=bi {
            let lo = c(ni - j, bi - j);
            if lo <= *min_b {
                let v = ci(ni, ai) - ci(ni - j, ai) + ci(ni - j, bi - j);
                let mut r = tag(BoundReport::new("ab", BigRational::from_integer(v)), "small-b-j").input("j", j);
                r.window = vec![(lo, cap.clone())];
                out.push(r);
                break; // g(j) grows with j, the smallest admissible j is tightest
            }
        }
    }
    Ok(out)
}

/// The tightest (a, b) bound whose window contains `min_b`.
pub fn bound_ab(n: u32, a: u32, b: u32, min_b: &BigUint, weight: &BigRational) -> Result<BoundReport> {
    let branches = bound_ab_branches(n, a, b, min_b, weight)?;
    branches
        .into_iter()
        .min_by(|x, y| x.bound.cmp(&y.bound))
        .ok_or_else(|| Error::Domain(format!("no (a,b) bound claimed at |B| >= {min_b}")))
}

/// The comparison bound C(n,b) + C(n-alpha,n-a) - C(n-alpha,b), real alpha.
pub fn bound_ft(n: u32, a: u32, b: u32, alpha: &BigRational) -> Result<BoundReport> {
    if n <= a + b || a > b || *alpha < rati(1) || *alpha > rati(a as i64) {
        return Err(Error::Domain(format!("need n > a + b, a <= b, 1 <= alpha <= a; got n={n} a={a} b={b} alpha={alpha}")));
    }
    let x = rati(n as i64) - alpha;
    let lower = real_binomial(&x, n as i64 - a as i64);
    let v = rat(&c(n as i64, b as i64)) + &lower - real_binomial(&x, b as i64);
    let mut r = BoundReport::new("ft", v).input("n", n).input("a", a).input("b", b).input("alpha", alpha);
    let lo = lower.ceil().to_integer().to_biguint().unwrap_or_default();
    r.window = vec![(lo, c(n as i64 - 1, n as i64 - a as i64))];
    Ok(r)
}

/// The telescoping count f(z): line q subtracts C(m-s-1, k-2) while q < z
/// and C(m-s-2-(q-z), k-2) afterwards.
pub fn lemmin_f(m: u32, s: u32, k: u32, z: u32) -> Result<BigUint> {
    lemmin_check(m, s, k)?;
    if z < 2 || z > s + 1 {
        return Err(Error::Domain(format!("z = {z} outside [2, {}]", s + 1)));
    }
    let (m, s, k, z) = (m as i64, s as i64, k as i64, z as i64);
    let mut total = BigInt::zero();
    for q in 1..=s {
        let sub = if q < z { m - s - 1 } else { m - s - 2 - (q - z) };
        total += ci(m - q, k - 2) - ci(sub, k - 2);
    }
    Ok(total.to_biguint().expect("nonnegative count"))
}

/// f(z) from the plain sum C(m-q,k-2) - C(m-s-q,k-2) at z = 2.
pub fn lemmin_f2_direct(m: u32, s: u32, k: u32) -> Result<BigUint> {
    lemmin_check(m, s, k)?;
    let (m, s, k) = (m as i64, s as i64, k as i64);
    let t: BigInt = (1..=s).map(|q| ci(m - q, k - 2) - ci(m - s - q, k - 2)).sum();
    Ok(t.to_biguint().expect("nonnegative count"))
}

/// The modified count for three sets that pairwise meet in 2..s-2 points:
/// f(3) with the fourth line subtracting C(m-s-2, k-2).
pub fn lemmin_fprime3(m: u32, s: u32, k: u32) -> Result<BigUint> {
    lemmin_check(m, s, k)?;
    if s < 4 {
        return Err(Error::Domain("the modified count needs s >= 4".into()));
    }
    let (mi, si, ki) = (m as i64, s as i64, k as i64);
    let mut total = BigInt::zero();
    for q in 1..=si {
        let sub = match q {
            1 | 2 => mi - si - 1,
            3 | 4 => mi - si - 2,
            _ => mi - si - 2 - (q - 3),
        };
        total += ci(mi - q, ki - 2) - ci(sub, ki - 2);
    }
    Ok(total.to_biguint().expect("nonnegative count"))
}

fn lemmin_check(m: u32, s: u32, k: u32) -> Result<()> {
    if k < 3 || s < 2 || m < k + s || m < 2 * s {
        return Err(Error::Domain(format!("need k >= 3, s >= 2, m >= k + s, m >= 2s; got m={m} s={s} k={k}")));
    }
    Ok(())
}

/// |C_3(n, k)| = 3 + f(3) with m = n - 1 and s = k.
pub fn size_c3(n: u32, k: u32) -> Result<BigUint> {
    if n < 2 * k + 1 || k < 3 {
        return Err(Error::Domain(format!("need n >= 2k + 1 and k >= 3, got n={n} k={k}")));
    }
    Ok(lemmin_f(n - 1, k, k, 3)? + 3u32)
}
