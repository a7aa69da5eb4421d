use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::binom::binom_u128;
use crate::Error;

/// Largest element label a bitset can hold.
pub const MAX_LABEL: u32 = 128;

/// The interval [lo, hi] of element labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    pub lo: u32,
    pub hi: u32,
}

impl GroundSet {
    pub fn new(lo: u32, hi: u32) -> Result<Self, Error> {
        if lo < 1 || lo > hi {
            return Err(Error::Domain(format!("bad ground set [{lo},{hi}]")));
        }
        Ok(GroundSet { lo, hi })
    }

    /// [1, n]
    pub fn upto(n: u32) -> Self {
        GroundSet { lo: 1, hi: n }
    }

    pub fn size(&self) -> u32 {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, x: u32) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }

    pub fn mask(&self) -> Subset {
        Subset::interval(self.lo, self.hi)
    }

    /// Bitset kernels need every label <= 128.
    pub fn check_bitset(&self) -> Result<(), Error> {
        if self.hi > MAX_LABEL {
            return Err(Error::Cap(format!("ground [{},{}] exceeds {MAX_LABEL} labels", self.lo, self.hi)));
        }
        Ok(())
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// A set of labels in 1..=128, bit `x-1` for label x.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Subset(pub u128);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_elems<I: IntoIterator<Item = u32>>(it: I) -> Self {
        let mut s = 0u128;
        for x in it {
            assert!((1..=MAX_LABEL).contains(&x), "label {x} out of range");
            s |= 1u128 << (x - 1);
        }
        Subset(s)
    }

    pub fn try_from_elems(xs: &[u32]) -> Result<Self, Error> {
        if let Some(&x) = xs.iter().find(|&&x| !(1..=MAX_LABEL).contains(&x)) {
            return Err(Error::Domain(format!("label {x} out of range")));
        }
        Ok(Self::from_elems(xs.iter().copied()))
    }

    /// [lo, hi]; empty when lo > hi.
    pub fn interval(lo: u32, hi: u32) -> Self {
        if lo > hi {
            return Subset(0);
        }
        Self::from_elems(lo..=hi)
    }

    pub fn singleton(x: u32) -> Self {
        Self::from_elems([x])
    }

    pub fn len(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, x: u32) -> bool {
        (1..=MAX_LABEL).contains(&x) && self.0 >> (x - 1) & 1 == 1
    }

    pub fn min_elem(&self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max_elem(&self) -> Option<u32> {
        (self.0 != 0).then(|| 128 - self.0.leading_zeros())
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn inter(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn minus(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn with(self, x: u32) -> Subset {
        self.union(Subset::singleton(x))
    }

    pub fn without(self, x: u32) -> Subset {
        self.minus(Subset::singleton(x))
    }

    pub fn intersects(&self, o: &Subset) -> bool {
        self.0 & o.0 != 0
    }

    pub fn is_subset(&self, o: &Subset) -> bool {
        self.0 & !o.0 == 0
    }

    /// Number of elements <= x.
    pub fn count_upto(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else if x >= MAX_LABEL {
            self.len()
        } else {
            (self.0 & ((1u128 << x) - 1)).count_ones()
        }
    }

    pub fn iter(&self) -> SubsetIter {
        SubsetIter(self.0)
    }

    pub fn elems(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

pub struct SubsetIter(u128);

impl Iterator for SubsetIter {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let t = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(t + 1)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Lex order: A precedes B iff the smallest element of A xor B lies in A.
/// On equal sizes this is the usual lex order; on unequal sizes it puts a
/// proper superset first.
pub fn lex_cmp(a: &Subset, b: &Subset) -> Ordering {
    let d = a.0 ^ b.0;
    if d == 0 {
        Ordering::Equal
    } else if a.0 >> d.trailing_zeros() & 1 == 1 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// A <= B in the lex order.
pub fn lex_le(a: &Subset, b: &Subset) -> bool {
    lex_cmp(a, b) != Ordering::Greater
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(self, other)
    }
}

/// All k-subsets of the ground set, in lex order.
pub fn k_subsets(ground: GroundSet, k: u32) -> KSubsets {
    let n = ground.size();
    let idx: Vec<u32> = (0..k).collect();
    KSubsets { ground, n, idx, done: k > n }
}

pub struct KSubsets {
    ground: GroundSet,
    n: u32,
    idx: Vec<u32>,
    done: bool,
}

impl Iterator for KSubsets {
    type Item = Subset;
    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let lo = self.ground.lo;
        let out = Subset::from_elems(self.idx.iter().map(|&i| lo + i));
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - (k - i) as u32 {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Position of the k-set `a` in the lex listing of k-subsets of `ground`.
pub fn rank(ground: GroundSet, k: u32, a: &Subset) -> Result<u128, Error> {
    if a.len() != k || !a.is_subset(&ground.mask()) {
        return Err(Error::Domain(format!("{a:?} is not a {k}-subset of {ground}")));
    }
    let n = ground.size();
    let mut r = 0u128;
    let mut prev = 0u32; // next free relative position
    for (i, x) in a.iter().enumerate() {
        let p = x - ground.lo;
        let left = k - i as u32 - 1;
        for q in prev..p {
            r += binom_u128(n - q - 1, left);
        }
        prev = p + 1;
    }
    Ok(r)
}

/// Inverse of [`rank`].
pub fn unrank(ground: GroundSet, k: u32, mut r: u128) -> Result<Subset, Error> {
    let n = ground.size();
    if k > n || r >= binom_u128(n, k) {
        return Err(Error::Domain(format!("rank {r} out of range for C({n},{k})")));
    }
    let mut out = Subset::EMPTY;
    let mut q = 0u32;
    for i in 0..k {
        let left = k - i - 1;
        loop {
            let block = binom_u128(n - q - 1, left);
            if r < block {
                break;
            }
            r -= block;
            q += 1;
        }
        out = out.with(ground.lo + q);
        q += 1;
    }
    Ok(out)
}
