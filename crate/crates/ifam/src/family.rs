use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::subset::{k_subsets, lex_cmp, GroundSet, Subset};
use crate::{Error, Result};

/// A k-uniform family on an interval ground set, kept in lex order
/// without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: GroundSet,
    k: u32,
    sets: Vec<Subset>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restrict {
    /// F(i): members containing i, with i removed.
    Contains,
    /// F(i-bar): members avoiding i.
    Avoids,
}

#[derive(Serialize, Deserialize)]
struct FamilyFile {
    ground: [u32; 2],
    k: u32,
    sets: Vec<Vec<u32>>,
}

impl SetFamily {
    pub fn new(ground: GroundSet, k: u32, mut sets: Vec<Subset>) -> Result<Self> {
        ground.check_bitset()?;
        let mask = ground.mask();
        for s in &sets {
            if s.len() != k || !s.is_subset(&mask) {
                return Err(Error::Domain(format!("{s:?} is not a {k}-subset of {ground}")));
            }
        }
        sets.sort_by(lex_cmp);
        sets.dedup();
        Ok(SetFamily { ground, k, sets })
    }

    pub fn empty(ground: GroundSet, k: u32) -> Self {
        SetFamily { ground, k, sets: Vec::new() }
    }

    pub fn from_lists(ground: GroundSet, k: u32, lists: &[Vec<u32>]) -> Result<Self> {
        let sets = lists.iter().map(|l| Subset::try_from_elems(l)).collect::<Result<Vec<_>>>()?;
        Self::new(ground, k, sets)
    }

    /// Every k-subset of the ground set that satisfies `keep`.
    pub fn filter_all(ground: GroundSet, k: u32, keep: impl Fn(&Subset) -> bool) -> Result<Self> {
        ground.check_bitset()?;
        let sets = k_subsets(ground, k).filter(|s| keep(s)).collect();
        Ok(SetFamily { ground, k, sets })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.sets.binary_search_by(|x| lex_cmp(x, s)).is_ok()
    }

    /// Union of all members.
    pub fn support(&self) -> Subset {
        self.sets.iter().fold(Subset::EMPTY, |a, s| a.union(*s))
    }

    /// Intersection of all members (empty for the empty family).
    pub fn common(&self) -> Subset {
        match self.sets.first() {
            None => Subset::EMPTY,
            Some(f) => self.sets.iter().fold(*f, |a, s| a.inter(*s)),
        }
    }

    pub fn degree(&self, x: u32) -> usize {
        self.sets.iter().filter(|s| s.contains(x)).count()
    }

    /// (max degree, smallest element attaining it).
    pub fn max_degree(&self) -> (usize, u32) {
        let mut best = (0, self.ground.lo);
        for x in self.ground.elements() {
            let d = self.degree(x);
            if d > best.0 {
                best = (d, x);
            }
        }
        best
    }

    pub fn diversity(&self) -> usize {
        self.len() - self.max_degree().0
    }

    pub fn is_intersecting(&self) -> bool {
        for (i, a) in self.sets.iter().enumerate() {
            for b in &self.sets[i + 1..] {
                if !a.intersects(b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_trivial(&self) -> bool {
        !self.is_empty() && !self.common().is_empty()
    }

    pub fn restrict(&self, i: u32, mode: Restrict) -> SetFamily {
        // keep the ground an interval; shrink it when i is an endpoint
        let ground = if i == self.ground.lo && self.ground.lo < self.ground.hi {
            GroundSet { lo: i + 1, hi: self.ground.hi }
        } else if i == self.ground.hi && self.ground.lo < self.ground.hi {
            GroundSet { lo: self.ground.lo, hi: i - 1 }
        } else {
            self.ground
        };
        match mode {
            Restrict::Contains => {
                let sets = self.sets.iter().filter(|s| s.contains(i)).map(|s| s.without(i)).collect();
                SetFamily { ground, k: self.k.saturating_sub(1), sets }
            }
            Restrict::Avoids => {
                let sets = self.sets.iter().filter(|s| !s.contains(i)).copied().collect();
                SetFamily { ground, k: self.k, sets }
            }
        }
    }

    /// The (i, j)-shift: replace j by i wherever the result is new.
    pub fn shift(&self, i: u32, j: u32) -> Result<SetFamily> {
        if i >= j || !self.ground.contains(i) || !self.ground.contains(j) {
            return Err(Error::Domain(format!("shift needs i < j inside the ground, got ({i},{j})")));
        }
        let present: HashSet<Subset> = self.sets.iter().copied().collect();
        let sets = self
            .sets
            .iter()
            .map(|&a| {
                if a.contains(j) && !a.contains(i) {
                    let b = a.without(j).with(i);
                    if !present.contains(&b) {
                        return b;
                    }
                }
                a
            })
            .collect();
        SetFamily::new(self.ground, self.k, sets)
    }

    /// All (k-1)-subsets of members.
    pub fn shadow(&self) -> Result<SetFamily> {
        if self.k == 0 {
            return Err(Error::Domain("shadow of a 0-uniform family".into()));
        }
        let mut out = HashSet::new();
        for s in &self.sets {
            for x in s.iter() {
                out.insert(s.without(x));
            }
        }
        SetFamily::new(self.ground, self.k - 1, out.into_iter().collect())
    }

    pub fn to_lists(&self) -> Vec<Vec<u32>> {
        self.sets.iter().map(|s| s.elems()).collect()
    }

    /// Canonical compact JSON: sets and elements ascending, no whitespace.
    pub fn to_json(&self) -> String {
        let f = FamilyFile { ground: [self.ground.lo, self.ground.hi], k: self.k, sets: self.to_lists() };
        serde_json::to_string(&f).expect("family serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: FamilyFile = serde_json::from_str(s)?;
        let ground = GroundSet::new(f.ground[0], f.ground[1])?;
        Self::from_lists(ground, f.k, &f.sets)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

pub fn cross_intersecting(a: &[Subset], b: &[Subset]) -> bool {
    a.iter().all(|x| b.iter().all(|y| x.intersects(y)))
}
