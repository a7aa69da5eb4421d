use std::collections::HashSet;

use crate::family::SetFamily;
use crate::subset::Subset;
use crate::{Error, Result};

/// Most active elements the canonicalizer accepts.
pub const CANON_CAP: usize = 12;
const LEAF_CAP: u64 = 5_000_000;

/// Relabeling-invariant form: members as bitsets over 1..=active, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub k: u32,
    pub active: u32,
    pub sets: Vec<u128>,
}

/// Least sorted member list over all labelings of the active elements that
/// give smaller labels to elements with larger (degree, codegree) profiles.
pub fn canonical_form(f: &SetFamily) -> Result<CanonicalForm> {
    let elems = f.support().elems();
    let m = elems.len();
    if m > CANON_CAP {
        return Err(Error::Unsupported(format!("canonical form needs at most {CANON_CAP} active elements, got {m}")));
    }
    let sets = f.sets();
    let profile = |x: u32| {
        let deg = sets.iter().filter(|s| s.contains(x)).count();
        let mut co: Vec<usize> = elems
            .iter()
            .filter(|&&y| y != x)
            .map(|&y| sets.iter().filter(|s| s.contains(x) && s.contains(y)).count())
            .collect();
        co.sort_unstable_by(|a, b| b.cmp(a));
        (deg, co)
    };
    let mut order: Vec<(_, u32)> = elems.iter().map(|&x| (profile(x), x)).collect();
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    // cell[p] = index of the profile class that label p+1 must come from
    let mut cell = vec![0usize; m];
    for p in 1..m {
        cell[p] = if order[p].0 == order[p - 1].0 { cell[p - 1] } else { cell[p - 1] + 1 };
    }
    let cell_of: Vec<(u32, usize)> = order.iter().enumerate().map(|(p, (_, x))| (*x, cell[p])).collect();

    let present: HashSet<u128> = sets.iter().map(|s| s.0).collect();
    let swap = |s: u128, x: u32, y: u32| {
        let (bx, by) = (1u128 << (x - 1), 1u128 << (y - 1));
        match (s & bx != 0, s & by != 0) {
            (true, false) => (s & !bx) | by,
            (false, true) => (s & !by) | bx,
            _ => s,
        }
    };
    let twin = |x: u32, y: u32| sets.iter().all(|s| present.contains(&swap(s.0, x, y)));

    let mut st = Search { sets, m, best: None, leaves: 0 };
    let mut label = vec![0u32; 129];
    let mut used = vec![false; m];
    st.go(0, &cell, &cell_of, &mut label, &mut used, &twin)?;
    Ok(CanonicalForm { k: f.k(), active: m as u32, sets: st.best.unwrap_or_default() })
}

struct Search<'a> {
    sets: &'a [Subset],
    m: usize,
    best: Option<Vec<u128>>,
    leaves: u64,
}

impl Search<'_> {
    fn go(
        &mut self,
        p: usize,
        cell: &[usize],
        cell_of: &[(u32, usize)],
        label: &mut [u32],
        used: &mut [bool],
        twin: &dyn Fn(u32, u32) -> bool,
    ) -> Result<()> {
        if p == self.m {
            self.leaves += 1;
            if self.leaves > LEAF_CAP {
                return Err(Error::Cap("canonical form search too large".into()));
            }
            let mut enc: Vec<u128> = self
                .sets
                .iter()
                .map(|s| s.iter().fold(0u128, |a, x| a | 1u128 << (label[x as usize] - 1)))
                .collect();
            enc.sort_unstable();
            if self.best.as_ref().map_or(true, |b| enc < *b) {
                self.best = Some(enc);
            }
            return Ok(());
        }
        let mut tried: Vec<u32> = Vec::new();
        for (i, &(x, c)) in cell_of.iter().enumerate() {
            if used[i] || c != cell[p] || tried.iter().any(|&y| twin(x, y)) {
                continue;
            }
            tried.push(x);
            used[i] = true;
            label[x as usize] = p as u32 + 1;
            self.go(p + 1, cell, cell_of, label, used, twin)?;
            used[i] = false;
        }
        Ok(())
    }
}

/// Same uniformity and same canonical form.
pub fn is_isomorphic(a: &SetFamily, b: &SetFamily) -> Result<bool> {
    if a.k() != b.k() || a.len() != b.len() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}
