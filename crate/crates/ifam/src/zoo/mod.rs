//! Named intersecting families and the metrics used to compare them.

pub(crate) mod canon;
mod cover;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use cover::{covering_number, fractional_covering, TAU_STAR_CAP};

use crate::binom::c;
use crate::family::SetFamily;
use crate::resistance::{BoundReport, Witness};
use crate::subset::{k_subsets, GroundSet, Subset};
use crate::{json as js, Error, Result};

fn domain<T>(msg: String) -> Result<T> {
    Err(Error::Domain(msg))
}

/// Sets containing [2, u+1], plus sets through 1 meeting [2, u+1].
pub fn build_hu(n: u32, k: u32, u: u32) -> Result<SetFamily> {
    if !(2 <= u && u <= k && n >= 2 * k) {
        return domain(format!("H_u needs 2 <= u <= k and n >= 2k, got n={n} k={k} u={u}"));
    }
    let core = Subset::interval(2, u + 1);
    SetFamily::filter_all(GroundSet::upto(n), k, |a| core.is_subset(a) || (a.contains(1) && a.intersects(&core)))
}

/// {I_1, I_i} plus the sets through 1 meeting both, with I_i = [i+1, k+i].
/// J_1 is the Hilton-Milner family.
pub fn build_ji(n: u32, k: u32, i: u32) -> Result<SetFamily> {
    if !(1 <= i && i <= k && n > 2 * k && k >= 2) {
        return domain(format!("J_i needs 1 <= i <= k < n/2, got n={n} k={k} i={i}"));
    }
    let i1 = Subset::interval(2, k + 1);
    let ii = Subset::interval(i + 1, k + i);
    SetFamily::filter_all(GroundSet::upto(n), k, |a| {
        *a == i1 || *a == ii || (a.contains(1) && a.intersects(&i1) && a.intersects(&ii))
    })
}

/// Maximal intersecting family whose sets avoiding 1 are [2,k] u {x},
/// x in [k+1, k+l]. E_0 is the star.
pub fn build_el(n: u32, k: u32, l: u32) -> Result<SetFamily> {
    if !(n > 2 * k && k >= 2 && l <= n - k) {
        return domain(format!("E_l needs n > 2k and l <= n - k, got n={n} k={k} l={l}"));
    }
    let base = Subset::interval(2, k);
    let m: Vec<Subset> = (k + 1..=k + l).map(|x| base.with(x)).collect();
    maximal_extension(&SetFamily::new(GroundSet::new(2, n)?, k, m)?, n, k)
}

fn t2_sets(k: u32, shift: u32) -> Vec<Subset> {
    let tail = Subset::interval(k + 1, 2 * k - 1);
    [Subset::interval(1, k), tail.with(1), tail.with(2)]
        .iter()
        .map(|s| Subset(s.0 << shift))
        .collect()
}

/// {[k], {1} u [k+1, 2k-1], {2} u [k+1, 2k-1]} on [2k-1].
pub fn build_t2(k: u32) -> Result<SetFamily> {
    if k < 2 {
        return domain(format!("T_2 needs k >= 2, got {k}"));
    }
    SetFamily::new(GroundSet::upto(2 * k - 1), k, t2_sets(k, 0))
}

/// {[s], [s+1, 2s]} on [2s].
pub fn build_t2prime(s: u32) -> Result<SetFamily> {
    if s < 1 {
        return domain("T_2' needs s >= 1".into());
    }
    SetFamily::new(GroundSet::upto(2 * s), s, vec![Subset::interval(1, s), Subset::interval(s + 1, 2 * s)])
}

/// All (k-1)-subsets of `ground` meeting every member of `h`.
fn transversal_sets(ground: GroundSet, r: u32, h: &[Subset]) -> Result<SetFamily> {
    SetFamily::filter_all(ground, r, |a| h.iter().all(|x| a.intersects(x)))
}

/// The largest family of (k-1)-subsets of [m] cross-intersecting T_2(s).
pub fn build_f2(m: u32, s: u32, k: u32) -> Result<SetFamily> {
    if !(s >= 2 && k >= 2 && m > 2 * s) {
        return domain(format!("F_2 needs s >= 2 and m > 2s, got m={m} s={s}"));
    }
    transversal_sets(GroundSet::upto(m), k - 1, &t2_sets(s, 0))
}

/// The largest family of (k-1)-subsets of [m] cross-intersecting T_2'(s).
pub fn build_f2prime(m: u32, s: u32, k: u32) -> Result<SetFamily> {
    if !(s >= 1 && k >= 2 && m > 2 * s) {
        return domain(format!("F_2' needs m > 2s, got m={m} s={s}"));
    }
    let t = build_t2prime(s)?;
    transversal_sets(GroundSet::upto(m), k - 1, t.sets())
}

/// The maximal intersecting family whose part avoiding 1 is T_2(k) on [2, n].
pub fn build_c3(n: u32, k: u32) -> Result<SetFamily> {
    if !(n > 2 * k && k >= 3) {
        return domain(format!("C_3 needs n > 2k >= 6, got n={n} k={k}"));
    }
    let m = SetFamily::new(GroundSet::new(2, n)?, k, t2_sets(k, 1))?;
    maximal_extension(&m, n, k)
}

pub const FANO_LINES: [[u32; 3]; 7] =
    [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];

pub fn build_fano() -> SetFamily {
    SetFamily::new(GroundSet::upto(7), 3, FANO_LINES.iter().map(|l| Subset::from_elems(*l)).collect())
        .expect("fano lines")
}

/// k-sets of [n] containing a Fano line.
pub fn build_d37(n: u32, k: u32) -> Result<SetFamily> {
    if !(n >= 7 && k >= 3 && k <= n) {
        return domain(format!("D_3/7 needs n >= 7 and 3 <= k <= n, got n={n} k={k}"));
    }
    let lines: Vec<Subset> = FANO_LINES.iter().map(|l| Subset::from_elems(*l)).collect();
    SetFamily::filter_all(GroundSet::upto(n), k, |a| lines.iter().any(|p| p.is_subset(a)))
}

/// (|D_3/7|, degree of element 1) by counting traces on [7]; any n.
pub fn d37_counts(n: u32, k: u32) -> (BigUint, BigUint) {
    let lines: Vec<u8> = FANO_LINES.iter().map(|l| l.iter().fold(0u8, |m, x| m | 1 << (x - 1))).collect();
    let (mut size, mut deg) = (BigUint::from(0u32), BigUint::from(0u32));
    for x in 0u8..128 {
        if lines.iter().any(|&p| p & x == p) {
            let w = c(n as i64 - 7, k as i64 - x.count_ones() as i64);
            if x & 1 == 1 {
                deg += &w;
            }
            size += w;
        }
    }
    (size, deg)
}

/// Add every k-set through 1 that meets all of `m` (a family on [2, n]).
pub fn maximal_extension(m: &SetFamily, n: u32, k: u32) -> Result<SetFamily> {
    let g = m.ground();
    if g.lo < 2 || g.hi > n || m.k() != k {
        return domain(format!("extension needs a {k}-uniform family on [2,{n}]"));
    }
    if !m.is_intersecting() {
        return domain("extension needs an intersecting family".into());
    }
    let ground = GroundSet::upto(n);
    ground.check_bitset()?;
    let mut sets: Vec<Subset> = m.sets().to_vec();
    sets.extend(
        k_subsets(GroundSet::new(2, n)?, k - 1)
            .map(|a| a.with(1))
            .filter(|a| m.sets().iter().all(|x| a.intersects(x))),
    );
    SetFamily::new(ground, k, sets)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyStats {
    pub size: usize,
    pub max_degree: usize,
    pub max_degree_element: u32,
    pub diversity: usize,
    pub covering_number: u32,
    /// None when the support exceeds the exact LP cap.
    pub fractional_covering: Option<BigRational>,
    pub is_intersecting: bool,
    pub is_trivial: bool,
}

impl FamilyStats {
    pub fn of(f: &SetFamily) -> FamilyStats {
        let (max_degree, max_degree_element) = f.max_degree();
        FamilyStats {
            size: f.len(),
            max_degree,
            max_degree_element,
            diversity: f.len() - max_degree,
            covering_number: covering_number(f),
            fractional_covering: fractional_covering(f).ok(),
            is_intersecting: f.is_intersecting(),
            is_trivial: f.is_trivial(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "size": self.size,
            "max_degree": self.max_degree,
            "max_degree_element": self.max_degree_element,
            "diversity": self.diversity,
            "covering_number": self.covering_number,
            "fractional_covering": self.fractional_covering.as_ref().map(js::rat),
            "is_intersecting": self.is_intersecting,
            "is_trivial": self.is_trivial,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonIntersection {
    /// |intersection of all members|
    pub t: u32,
    pub minimal: bool,
    /// For each member M_l, the smallest element lying in every other
    /// member but not in M_l; present only when minimal.
    pub witnesses: Vec<u32>,
}

/// Is dropping any member enough to grow the common intersection?
pub fn minimal_common_intersection(m: &SetFamily) -> CommonIntersection {
    let sets = m.sets();
    let all = m.common();
    let t = if sets.is_empty() { 0 } else { all.len() };
    let mut witnesses = Vec::new();
    for l in 0..sets.len() {
        let rest = sets
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != l)
            .fold(m.ground().mask(), |acc, (_, s)| acc.inter(*s));
        match rest.minus(sets[l]).min_elem() {
            Some(x) => witnesses.push(x),
            None => return CommonIntersection { t, minimal: false, witnesses: Vec::new() },
        }
    }
    CommonIntersection { t, minimal: !sets.is_empty(), witnesses }
}

/// tau(M) = t and every proper subfamily has a smaller covering number.
pub fn is_minimal_for_tau(m: &SetFamily, t: u32) -> bool {
    if covering_number(m) != t {
        return false;
    }
    (0..m.len()).all(|l| {
        let rest: Vec<Subset> = m.sets().iter().enumerate().filter(|&(j, _)| j != l).map(|(_, s)| *s).collect();
        let sub = SetFamily::new(m.ground(), m.k(), rest).expect("subfamily");
        covering_number(&sub) < t
    })
}

fn family_witness(name: &str, params: &[(&str, u32)]) -> Witness {
    Witness::Family { name: name.into(), params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>() }
}

/// The two size bounds for an intersecting family whose part avoiding 1
/// contains `m`, a family minimal w.r.t. common intersection with
/// |intersection| = t >= 3: |F'| for the extension F' of m, and |J_{k-t+1}|.
pub fn bound_class2(n: u32, k: u32, m: &SetFamily, t: u32) -> Result<(BoundReport, BoundReport, SetFamily)> {
    if !(n > 2 * k && k >= 4) {
        return domain(format!("need n > 2k >= 8, got n={n} k={k}"));
    }
    if t < 3 {
        return domain(format!("t = {t}: the class bound needs t >= 3"));
    }
    let info = minimal_common_intersection(m);
    if !info.minimal || info.t != t {
        return domain(format!("family is not minimal with common intersection {t}"));
    }
    if t > k {
        return domain(format!("t = {t} exceeds k = {k}"));
    }
    let ext = maximal_extension(m, n, k)?;
    let j = build_ji(n, k, k - t + 1)?;
    let mut r1 = BoundReport::new("class-extension", BigRational::from_integer(ext.len().into()));
    r1.inputs.insert("n", n.to_string());
    r1.inputs.insert("k", k.to_string());
    r1.inputs.insert("t", t.to_string());
    r1.witness = Some(family_witness("extension", &[("n", n), ("k", k), ("t", t)]));
    let mut r2 = BoundReport::new("class-j", BigRational::from_integer(j.len().into()));
    r2.inputs = r1.inputs.clone();
    r2.witness = Some(family_witness("Ji", &[("n", n), ("k", k), ("i", k - t + 1)]));
    Ok((r1, r2, ext))
}
