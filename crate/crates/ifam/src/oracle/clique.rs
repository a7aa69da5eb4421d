// Maximal intersecting families as maximal cliques of the "intersects"
// graph on k-subsets, by pivoting Bron-Kerbosch over 256-bit rows.

use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;

use super::{dedup_families, zero_result, OracleResult, OracleWitness};
use crate::binom::c;
use crate::family::SetFamily;
use crate::json::parse_rational;
use crate::subset::{k_subsets, GroundSet, Subset};
use crate::zoo::canon::CANON_CAP;
use crate::{Error, Result};

const VERTEX_CAP: usize = 200;

#[derive(Clone, Copy, PartialEq, Eq, Default)]
struct Bits([u64; 4]);

impl Bits {
    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn set(&mut self, v: usize) {
        self.0[v >> 6] |= 1 << (v & 63);
    }
    fn clear(&mut self, v: usize) {
        self.0[v >> 6] &= !(1 << (v & 63));
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(std::array::from_fn(|i| self.0[i] & o.0[i]))
    }
    fn or(&self, o: &Bits) -> Bits {
        Bits(std::array::from_fn(|i| self.0[i] | o.0[i]))
    }
    fn and_not(&self, o: &Bits) -> Bits {
        Bits(std::array::from_fn(|i| self.0[i] & !o.0[i]))
    }
    fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).flat_map(move |i| {
            let mut w = self.0[i];
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    i * 64 + b
                })
            })
        })
    }
}

/// Restriction on the families searched.
#[derive(Clone, Debug, PartialEq)]
pub enum Constraint {
    None,
    DiversityAtLeast(u64),
    TauAtLeast(u32),
    /// max degree <= c |F|; not closed upwards, so only maximal families
    /// are examined and the result is flagged inexact.
    DegreeAtMost(BigRational),
}

impl Constraint {
    fn upward_closed(&self) -> bool {
        !matches!(self, Constraint::DegreeAtMost(_))
    }
}

impl FromStr for Constraint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace(' ', "");
        let bad = || Error::Domain(format!("unknown constraint '{s}' (none, diversity>=g, tau>=t, degree<=c)"));
        if s == "none" {
            return Ok(Constraint::None);
        }
        if let Some(v) = s.strip_prefix("diversity>=") {
            return Ok(Constraint::DiversityAtLeast(v.parse().map_err(|_| bad())?));
        }
        if let Some(v) = s.strip_prefix("tau>=") {
            return Ok(Constraint::TauAtLeast(v.parse().map_err(|_| bad())?));
        }
        if let Some(v) = s.strip_prefix("degree<=") {
            return Ok(Constraint::DegreeAtMost(parse_rational(v).ok_or_else(bad)?));
        }
        Err(bad())
    }
}

struct Graph {
    sets: Vec<Subset>,
    adj: Vec<Bits>,
    // cont[x] = vertices whose set holds x
    cont: Vec<Bits>,
    n: u32,
}

impl Graph {
    fn new(n: u32, k: u32) -> Result<Graph> {
        let size = c(n as i64, k as i64);
        if size > BigUint::from(VERTEX_CAP) || n > 128 {
            return Err(Error::Cap(format!("C({n},{k}) = {size} exceeds the {VERTEX_CAP}-vertex cap")));
        }
        let sets: Vec<Subset> = k_subsets(GroundSet::upto(n), k).collect();
        let mut adj = vec![Bits::default(); sets.len()];
        for (i, a) in sets.iter().enumerate() {
            for (j, b) in sets.iter().enumerate() {
                if i != j && a.intersects(b) {
                    adj[i].set(j);
                }
            }
        }
        let mut cont = vec![Bits::default(); n as usize + 1];
        for (v, s) in sets.iter().enumerate() {
            for x in s.iter() {
                cont[x as usize].set(v);
            }
        }
        Ok(Graph { sets, adj, cont, n })
    }

    fn all(&self) -> Bits {
        let mut b = Bits::default();
        for v in 0..self.sets.len() {
            b.set(v);
        }
        b
    }

    fn max_degree(&self, f: &Bits) -> usize {
        (1..=self.n as usize).map(|x| f.and(&self.cont[x]).count()).max().unwrap_or(0)
    }

    // is there a set of `depth` elements meeting every vertex in `left`?
    fn coverable(&self, left: Bits, depth: u32) -> bool {
        match left.first() {
            None => true,
            Some(v) => depth > 0 && self.sets[v].iter().any(|x| self.coverable(left.and_not(&self.cont[x as usize]), depth - 1)),
        }
    }

    fn holds(&self, cons: &Constraint, f: &Bits) -> bool {
        match cons {
            Constraint::None => true,
            Constraint::DiversityAtLeast(g) => (f.count() - self.max_degree(f)) as u64 >= *g,
            Constraint::TauAtLeast(t) => *t == 0 || !self.coverable(*f, t - 1),
            Constraint::DegreeAtMost(cap) => {
                let d = BigRational::from_integer(BigInt::from(self.max_degree(f)));
                d <= cap * BigRational::from_integer(BigInt::from(f.count()))
            }
        }
    }

    // greedy partition of p into pairwise-disjoint classes
    fn color_bound(&self, p: Bits) -> usize {
        let mut q = p;
        let mut colors = 0;
        while !q.is_empty() {
            colors += 1;
            let mut avail = q;
            while let Some(v) = avail.first() {
                q.clear(v);
                avail = avail.and_not(&self.adj[v]);
                avail.clear(v);
            }
        }
        colors
    }

    fn pivot(&self, p: &Bits, x: &Bits) -> usize {
        p.or(x).iter().max_by_key(|&u| (p.and(&self.adj[u]).count(), std::cmp::Reverse(u))).expect("nonempty")
    }

    fn search(&self, node: Node, cons: &Constraint, best: &AtomicUsize, out: &mut Vec<Bits>) {
        let Node { r, size, mut p, mut x } = node;
        if p.is_empty() {
            if x.is_empty() && self.holds(cons, &r) {
                let b = best.fetch_max(size, Ordering::SeqCst).max(size);
                if size >= b {
                    out.push(r);
                }
            }
            return;
        }
        if size + self.color_bound(p) < best.load(Ordering::SeqCst) {
            return;
        }
        if cons.upward_closed() && !self.holds(cons, &r.or(&p)) {
            return;
        }
        let u = self.pivot(&p, &x);
        for v in p.and_not(&self.adj[u]).iter().collect::<Vec<_>>() {
            let mut r2 = r;
            r2.set(v);
            self.search(Node { r: r2, size: size + 1, p: p.and(&self.adj[v]), x: x.and(&self.adj[v]) }, cons, best, out);
            p.clear(v);
            x.set(v);
        }
    }

    fn enumerate(&self, r: Bits, mut p: Bits, mut x: Bits, f: &mut dyn FnMut(&Bits)) {
        if p.is_empty() {
            if x.is_empty() {
                f(&r);
            }
            return;
        }
        let u = self.pivot(&p, &x);
        for v in p.and_not(&self.adj[u]).iter().collect::<Vec<_>>() {
            let mut r2 = r;
            r2.set(v);
            self.enumerate(r2, p.and(&self.adj[v]), x.and(&self.adj[v]), f);
            p.clear(v);
            x.set(v);
        }
    }

    // same vertices, adjacent when they share at least j points
    fn with_overlap(&self, j: u32) -> Graph {
        let mut adj = vec![Bits::default(); self.sets.len()];
        for (i, a) in self.sets.iter().enumerate() {
            for (l, b) in self.sets.iter().enumerate() {
                if i != l && a.inter(*b).len() >= j {
                    adj[i].set(l);
                }
            }
        }
        Graph { sets: self.sets.clone(), adj, cont: self.cont.clone(), n: self.n }
    }

    fn index(&self, s: &Subset) -> usize {
        self.sets.iter().position(|x| x == s).expect("k-set")
    }

    // the Bron-Kerbosch children of a node, in branching order
    fn children(&self, node: &Node) -> Vec<Node> {
        if node.p.is_empty() {
            return vec![*node];
        }
        let (mut p, mut x) = (node.p, node.x);
        let u = self.pivot(&p, &x);
        let mut out = Vec::new();
        for v in p.and_not(&self.adj[u]).iter().collect::<Vec<_>>() {
            let mut r = node.r;
            r.set(v);
            out.push(Node { r, size: node.size + 1, p: p.and(&self.adj[v]), x: x.and(&self.adj[v]) });
            p.clear(v);
            x.set(v);
        }
        out
    }

    fn family(&self, f: &Bits) -> SetFamily {
        SetFamily::new(GroundSet::upto(self.n), self.sets[0].len(), f.iter().map(|v| self.sets[v]).collect())
            .expect("k-sets of [n]")
    }
}

#[derive(Clone, Copy)]
struct Node {
    r: Bits,
    size: usize,
    p: Bits,
    x: Bits,
}

/// Largest maximal intersecting family of k-subsets of [n] satisfying the
/// constraint, with every extremal family up to isomorphism. `jobs` sets
/// the worker count; the result does not depend on it.
pub fn oracle_maximal_intersecting(n: u32, k: u32, cons: &Constraint, jobs: Option<usize>) -> Result<OracleResult> {
    let start = Instant::now();
    if k == 0 || n < k {
        return Err(Error::Domain(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    let g = Graph::new(n, k)?;
    let space = BigUint::from(2u32).pow(g.sets.len() as u32);
    let found = if cons.upward_closed() && k >= 2 {
        overlap_search(&g, k, cons, jobs)?
    } else {
        clique_search(&g, cons, jobs)?
    };
    let top = found.iter().map(|f| f.count()).max().unwrap_or(0);
    let mut winners: Vec<Bits> = found.into_iter().filter(|f| f.count() == top && top > 0).collect();
    winners.sort_by_key(|b| b.0);
    winners.dedup();
    if winners.is_empty() {
        return Ok(OracleResult { exact: cons.upward_closed(), ..zero_result(space, start) });
    }
    let fams: Vec<SetFamily> = winners.iter().map(|w| g.family(w)).collect();
    let small = fams.iter().all(|f| f.support().len() as usize <= CANON_CAP);
    let witnesses = if small {
        dedup_families(fams)?
    } else {
        let mut f = fams;
        f.sort_by_key(|x| x.to_lists());
        f
    };
    Ok(OracleResult {
        objective: BigRational::from_integer(BigInt::from(top)),
        witnesses: witnesses.into_iter().map(OracleWitness::Family).collect(),
        search_space_size: space,
        exact: cons.upward_closed(),
        deduplicated: small,
        elapsed: start.elapsed(),
    })
}

fn clique_search(g: &Graph, cons: &Constraint, jobs: Option<usize>) -> Result<Vec<Bits>> {
    let root = Node { r: Bits::default(), size: 0, p: g.all(), x: Bits::default() };
    let tasks: Vec<Node> = g.children(&root).iter().flat_map(|c| g.children(c)).collect();
    let best = AtomicUsize::new(1);
    let run = || {
        tasks
            .par_iter()
            .map(|t| {
                let mut out = Vec::new();
                g.search(*t, cons, &best, &mut out);
                out
            })
            .collect::<Vec<_>>()
    };
    let found = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Unsupported(e.to_string()))?
            .install(run),
        None => run(),
    };
    Ok(found.into_iter().flatten().collect())
}

/// Symmetry-reduced search for constraints closed upwards. A family with
/// two or more members has a pair A, B meeting in the least overlap j it
/// shows; up to relabeling A = [1, k] and B = [1, j] u [k+1, 2k-j], and every
/// pair of members meets in at least j points. So it suffices to take, for
/// each j, the maximal cliques through A and B of the "meet in >= j" graph.
/// Optimal families found this way are maximal intersecting, since any
/// extension would stay feasible.
fn overlap_search(g: &Graph, k: u32, cons: &Constraint, jobs: Option<usize>) -> Result<Vec<Bits>> {
    let mut out = Vec::new();
    let mut one = Bits::default();
    one.set(0);
    if g.holds(cons, &one) {
        out.push(one);
    }
    let best = AtomicUsize::new(out.len());
    let a = Subset::interval(1, k);
    let mut tasks = Vec::new();
    let mut graphs = Vec::new();
    for j in 1..k {
        if 2 * k - j > g.n {
            continue;
        }
        let b = Subset::interval(1, j).union(Subset::interval(k + 1, 2 * k - j));
        let h = g.with_overlap(j);
        let (va, vb) = (h.index(&a), h.index(&b));
        let mut r = Bits::default();
        r.set(va);
        r.set(vb);
        let root = Node { r, size: 2, p: h.adj[va].and(&h.adj[vb]), x: Bits::default() };
        graphs.push(h);
        let gi = graphs.len() - 1;
        let g2 = &graphs[gi];
        tasks.extend(g2.children(&root).iter().flat_map(|c| g2.children(c)).map(|t| (gi, t)));
    }
    let run = || {
        tasks
            .par_iter()
            .map(|(gi, t)| {
                let mut local = Vec::new();
                graphs[*gi].search(*t, cons, &best, &mut local);
                local
            })
            .collect::<Vec<_>>()
    };
    let found = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Unsupported(e.to_string()))?
            .install(run),
        None => run(),
    };
    out.extend(found.into_iter().flatten());
    Ok(out)
}

/// Calls `f` on every maximal intersecting family of k-subsets of [n].
/// Returns how many there were.
pub fn for_each_maximal_intersecting(n: u32, k: u32, mut f: impl FnMut(&SetFamily)) -> Result<u64> {
    let g = Graph::new(n, k)?;
    let mut count = 0u64;
    g.enumerate(Bits::default(), g.all(), Bits::default(), &mut |b| {
        count += 1;
        f(&g.family(b));
    });
    Ok(count)
}
