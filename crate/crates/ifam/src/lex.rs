//! Lex families given by characteristic sets, their sizes, strong
//! intersection, the compression step on pairs, and shadow bounds.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::binom::{c, cascade, real_binomial};
use crate::family::SetFamily;
use crate::subset::{k_subsets, lex_le, unrank, GroundSet, Subset};
use crate::{Error, Result};

/// A pair of characteristic sets. `s` is the a-uniform side and may hold
/// the marker element below the ground; `t` is the b-uniform side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CharPair {
    #[serde(serialize_with = "ser_subset")]
    pub s: Subset,
    #[serde(serialize_with = "ser_subset")]
    pub t: Subset,
    pub a: u32,
    pub b: u32,
}

pub(crate) fn ser_subset<S: serde::Serializer>(x: &Subset, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(x.iter())
}

/// The first m k-subsets of the ground set in lex order, built by unranking.
pub fn lex_initial(ground: GroundSet, m: &BigUint, k: u32) -> Result<SetFamily> {
    ground.check_bitset()?;
    let total = c(ground.size() as i64, k as i64);
    if *m > total {
        return Err(Error::Domain(format!("m = {m} exceeds C({},{k})", ground.size())));
    }
    let m = m.to_u128().expect("m below a u128 binomial");
    let sets = (0..m).map(|i| unrank(ground, k, i)).collect::<Result<Vec<_>>>()?;
    SetFamily::new(ground, k, sets)
}

fn check_char(ground: GroundSet, s: &Subset, a: u32) -> Result<Subset> {
    let mask = ground.mask();
    let t = s.inter(mask);
    if t == mask && t.len() > a {
        return Ok(t); // the empty-family sentinel
    }
    if t.len() > a {
        return Err(Error::Domain(format!("|{t:?}| exceeds uniformity {a}")));
    }
    Ok(t)
}

/// All a-subsets A of the ground with A <= S (containment-extended lex).
pub fn lex_family(ground: GroundSet, s: &Subset, a: u32) -> Result<SetFamily> {
    ground.check_bitset()?;
    let t = check_char(ground, s, a)?;
    if t == ground.mask() && t.len() > a {
        return Ok(SetFamily::empty(ground, a));
    }
    SetFamily::filter_all(ground, a, |x| lex_le(x, &t))
}

/// Closed-form size of `lex_family(ground, t, u)`. Only the labels of `t`
/// need to fit in a bitset; `ground.hi` may be arbitrary.
pub fn lex_size(ground: GroundSet, t: &Subset, u: u32) -> Result<BigUint> {
    let t = t.minus(Subset::interval(1, ground.lo.saturating_sub(1)));
    if ground.hi <= crate::subset::MAX_LABEL && t == ground.mask() && t.len() > u {
        return Ok(BigUint::zero());
    }
    if t.max_elem().is_some_and(|j| j > ground.hi) {
        return Err(Error::Domain(format!("{t:?} leaves the ground {ground}")));
    }
    if t.len() > u {
        return Err(Error::Domain(format!("|{t:?}| exceeds uniformity {u}")));
    }
    let hi = ground.hi as i64;
    let u = u as i64;
    let Some(j) = t.max_elem() else {
        return Ok(c(ground.size() as i64, u));
    };
    let mut total = BigUint::zero();
    let mut before = 0i64;
    for b in ground.lo..j {
        if t.contains(b) {
            before += 1;
        } else {
            // agree with t below b, take b, anything above
            total += c(hi - b as i64, u - before - 1);
        }
    }
    total += c(hi - j as i64, u - t.len() as i64);
    Ok(total)
}

/// The minimal characteristic set of the lex prefix of length m:
/// its last member with the trailing run ending at `hi` removed.
/// m = 0 gives the whole ground (the empty-family sentinel).
pub fn prefix_char_set(ground: GroundSet, k: u32, m: u128) -> Result<Subset> {
    if m == 0 {
        return Ok(ground.mask());
    }
    let mut last = unrank(ground, k, m - 1)?;
    let mut x = ground.hi;
    while last.contains(x) {
        last = last.without(x);
        x -= 1;
    }
    Ok(last)
}

/// Witness j with S n T n [lo, j] = {j} and [lo, j] inside S u T.
pub fn strong_intersect_from(lo: u32, s: &Subset, t: &Subset) -> Option<u32> {
    let j = s.inter(*t).minus(Subset::interval(1, lo.saturating_sub(1))).min_elem()?;
    Subset::interval(lo, j).is_subset(&s.union(*t)).then_some(j)
}

/// Strong intersection over [2, j], the setting where 1 marks the S side.
pub fn strong_intersect(s: &Subset, t: &Subset) -> Option<u32> {
    strong_intersect_from(2, s, t)
}

/// Whether (L(S,a), L(T,b)) on [2,n] is a maximal cross-intersecting pair:
/// S and T strongly intersect in their common largest element.
pub fn max_cross_pair(n: u32, s: &Subset, t: &Subset, a: u32, b: u32) -> Result<bool> {
    if a + b > n - 1 || s.without(1).len() > a || t.len() > b {
        return Err(Error::Domain(format!("size preconditions fail for {s:?},{t:?} a={a} b={b} n={n}")));
    }
    let Some(j) = strong_intersect(s, t) else {
        return Ok(false);
    };
    Ok(s.max_elem() == Some(j) && t.max_elem() == Some(j) && s.union(*t).without(1) == Subset::interval(2, j))
}

/// The partner S = {1} u ([2,j] \ T) u {j} of a set T with j = max T.
pub fn partner(t: &Subset) -> Subset {
    let j = t.max_elem().expect("nonempty T");
    Subset::interval(2, j).minus(*t).with(j).with(1)
}

/// Lowest i in [5, j] with |[i] n S| >= |[i] \ S|, the compression trigger.
pub fn compress_trigger(pair: &CharPair) -> Option<u32> {
    let j = pair.t.max_elem()?;
    (5..=j).find(|&i| {
        let inside = pair.s.count_upto(i);
        inside >= i - inside
    })
}

/// One compression step at index i: T' = [i] \ S and its partner S'.
pub fn compress_step(pair: &CharPair, i: u32) -> Result<CharPair> {
    let j = pair.t.max_elem().ok_or_else(|| Error::Domain("empty T".into()))?;
    let inside = pair.s.count_upto(i);
    if i < 5 || i > j || inside < i - inside {
        return Err(Error::Domain(format!("compression does not trigger at i = {i}")));
    }
    let t = Subset::interval(1, i).minus(pair.s);
    Ok(CharPair { s: partner(&t), t, a: pair.a, b: pair.b })
}

/// Compress with the smallest trigger until none fires.
pub fn compress_fully(pair: &CharPair) -> Vec<CharPair> {
    let mut chain = vec![*pair];
    while let Some(i) = compress_trigger(chain.last().unwrap()) {
        let next = compress_step(chain.last().unwrap(), i).expect("trigger checked");
        chain.push(next);
    }
    chain
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShadowForm {
    Cascade,
    Lovasz,
}

/// Lower bound on the shadow of any `size` k-sets.
pub fn shadow_lower_bound(size: &BigUint, k: u32, form: ShadowForm) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::Domain("shadow bound needs k >= 1".into()));
    }
    if size.is_zero() {
        return Ok(BigRational::zero());
    }
    let casc = cascade(size, k)?;
    match form {
        ShadowForm::Cascade => {
            let v: BigUint = casc.terms.iter().map(|&(a, j)| c(a as i64, j as i64 - 1)).sum();
            Ok(BigRational::from_integer(BigInt::from(v)))
        }
        ShadowForm::Lovasz => {
            // bisection for C(x,k) = size on [k, a_k + 1]; keep the low end
            let target = BigRational::from_integer(BigInt::from(size.clone()));
            let mut lo = BigRational::from_integer(BigInt::from(k));
            let mut hi = BigRational::from_integer(BigInt::from(casc.terms[0].0 + 1));
            let two = BigRational::from_integer(2.into());
            for _ in 0..200 {
                let mid = (&lo + &hi) / &two;
                if real_binomial(&mid, k as i64) <= target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(real_binomial(&lo, k as i64 - 1))
        }
    }
}

/// First m k-sets in colex order, the shadow-minimizing families.
pub fn colex_initial(ground: GroundSet, m: usize, k: u32) -> Result<SetFamily> {
    ground.check_bitset()?;
    let mut all: Vec<Subset> = k_subsets(ground, k).collect();
    if m > all.len() {
        return Err(Error::Domain(format!("m = {m} exceeds C({},{k})", ground.size())));
    }
    // colex: compare by the largest element of the symmetric difference
    all.sort_by(|x, y| {
        let d = x.0 ^ y.0;
        if d == 0 {
            std::cmp::Ordering::Equal
        } else if y.0 >> (127 - d.leading_zeros()) & 1 == 1 {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    all.truncate(m);
    SetFamily::new(ground, k, all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::lex_cmp;
    use num_traits::One;

    fn s(xs: &[u32]) -> Subset {
        Subset::from_elems(xs.iter().copied())
    }

    #[test]
    fn lex_family_worked_example() {
        // sets containing 2 and meeting {3,4}
        let g = GroundSet::new(2, 14).unwrap();
        let f = lex_family(g, &s(&[1, 2, 4]), 10).unwrap();
        let want = SetFamily::filter_all(g, 10, |x| x.contains(2) && (x.contains(3) || x.contains(4))).unwrap();
        assert_eq!(f, want);
    }

    #[test]
    fn sentinel_and_prefix() {
        let g = GroundSet::new(2, 9).unwrap();
        assert!(lex_family(g, &g.mask(), 3).unwrap().is_empty());
        assert_eq!(lex_size(g, &g.mask(), 3).unwrap(), BigUint::zero());
        let f = lex_family(g, &s(&[2, 3]), 3).unwrap();
        let brute: Vec<Subset> = k_subsets(g, 3).filter(|x| lex_cmp(x, &s(&[2, 3])).is_le()).collect();
        assert_eq!(f.sets(), &brute[..]);
        let p = lex_initial(g, &BigUint::from(f.len()), 3).unwrap();
        assert_eq!(p, f);
    }

    #[test]
    fn lex_initial_small() {
        let g = GroundSet::new(2, 9).unwrap();
        let f = lex_initial(g, &BigUint::from(7u32), 3).unwrap();
        assert_eq!(f.len(), 7);
        assert!(f.sets().iter().all(|x| x.contains(2)));
        assert_eq!(f.sets()[0], s(&[2, 3, 4]));
        assert!(lex_initial(g, &BigUint::zero(), 3).unwrap().is_empty());
        assert!(lex_initial(g, &BigUint::from(57u32), 3).is_err());
    }

    #[test]
    fn lex_size_matches_enumeration() {
        // every T inside [2,9] with |T| <= u <= 4
        let g = GroundSet::new(2, 9).unwrap();
        for bits in 0u32..256 {
            let t = Subset((bits as u128) << 1);
            for u in t.len().max(1)..=4 {
                let f = lex_family(g, &t, u).unwrap();
                assert_eq!(lex_size(g, &t, u).unwrap(), BigUint::from(f.len()), "T={t:?} u={u}");
            }
        }
    }

    #[test]
    fn lex_size_examples() {
        for n in 9..20u32 {
            let g = GroundSet::new(2, n).unwrap();
            for k in 3..=4 {
                assert_eq!(lex_size(g, &s(&[2, 3, 4]), k).unwrap(), c(n as i64 - 4, k as i64 - 3));
            }
        }
        // big ground, small T
        let g = GroundSet::new(2, 1000).unwrap();
        assert_eq!(lex_size(g, &s(&[2, 3, 4]), 10).unwrap(), c(996, 7));
    }

    #[test]
    fn prefix_char_sets_regenerate_prefixes() {
        let g = GroundSet::new(2, 10).unwrap();
        for m in 0..=crate::binom::binom_u128(9, 3) {
            let t = prefix_char_set(g, 3, m).unwrap();
            assert_eq!(lex_size(g, &t, 3).unwrap(), BigUint::from(m));
        }
    }

    #[test]
    fn strong_intersection_examples() {
        assert_eq!(strong_intersect(&s(&[1, 4]), &s(&[2, 3, 4])), Some(4));
        assert_eq!(strong_intersect(&s(&[1, 2]), &s(&[2])), Some(2));
        assert_eq!(strong_intersect(&s(&[1, 3]), &s(&[5, 6])), None);
    }

    #[test]
    fn maximal_pairs() {
        assert!(max_cross_pair(12, &s(&[1, 4]), &s(&[2, 3, 4]), 3, 4).unwrap());
        assert!(max_cross_pair(12, &s(&[1, 2]), &s(&[2]), 3, 4).unwrap());
        assert!(max_cross_pair(10, &s(&[1, 3]), &s(&[2, 3]), 3, 4).unwrap());
        assert!(!max_cross_pair(10, &s(&[1, 3, 5]), &s(&[2, 3]), 3, 4).unwrap());
    }

    #[test]
    fn compress_example() {
        let p = CharPair { s: s(&[1, 2, 5]), t: s(&[3, 4, 5]), a: 3, b: 4 };
        assert_eq!(compress_trigger(&p), Some(5));
        let q = compress_step(&p, 5).unwrap();
        assert_eq!(q.t, s(&[3, 4]));
        assert_eq!(q.s, s(&[1, 2, 4]));
        let r = CharPair { s: s(&[1, 4]), t: s(&[2, 3, 4]), a: 3, b: 4 };
        assert!(compress_step(&r, 5).is_err());
        assert!(compress_trigger(&r).is_none());
    }

    #[test]
    fn shadow_bounds() {
        for k in 1..6 {
            let one = shadow_lower_bound(&BigUint::one(), k, ShadowForm::Cascade).unwrap();
            assert_eq!(one, BigRational::from_integer(k.into()));
        }
        let v = shadow_lower_bound(&c(7, 3), 3, ShadowForm::Cascade).unwrap();
        assert_eq!(v, BigRational::from_integer(21.into()));
        let lov = shadow_lower_bound(&c(7, 3), 3, ShadowForm::Lovasz).unwrap();
        assert!(lov <= v && v - &lov < BigRational::new(1.into(), 1_000_000_000_000i64.into()));
        let x = BigUint::from(50u32);
        let lov = shadow_lower_bound(&x, 3, ShadowForm::Lovasz).unwrap();
        let cas = shadow_lower_bound(&x, 3, ShadowForm::Cascade).unwrap();
        assert!(lov <= cas);
    }

    #[test]
    fn colex_prefix_attains_cascade_bound() {
        let g = GroundSet::upto(9);
        for m in 1..=84usize {
            let f = colex_initial(g, m, 3).unwrap();
            let sh = f.shadow().unwrap().len();
            let b = shadow_lower_bound(&BigUint::from(m), 3, ShadowForm::Cascade).unwrap();
            assert_eq!(BigRational::from_integer(sh.into()), b, "m={m}");
        }
    }
}
