use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::family::SetFamily;
use crate::subset::Subset;
use crate::{Error, Result};

/// Largest support (number of active elements) for the exact LP.
pub const TAU_STAR_CAP: u32 = 12;

/// Minimum size of a set meeting every member; 0 for the empty family.
pub fn covering_number(f: &SetFamily) -> u32 {
    let sets = f.sets();
    // the support always hits; for intersecting families depth k suffices
    let cap = f.support().len();
    (0..=cap).find(|&d| hits(sets, Subset::EMPTY, d)).unwrap_or(cap)
}

fn hits(sets: &[Subset], chosen: Subset, depth: u32) -> bool {
    match sets.iter().find(|s| !s.intersects(&chosen)) {
        None => true,
        Some(s) => depth > 0 && s.iter().any(|x| hits(sets, chosen.with(x), depth - 1)),
    }
}

/// Minimum of sum w_x subject to sum_{x in F} w_x >= 1 for every member F,
/// w >= 0. Solved exactly through the dual packing LP
/// max sum y_F, sum_{F containing x} y_F <= 1, by simplex with Bland's rule.
pub fn fractional_covering(f: &SetFamily) -> Result<BigRational> {
    let support: Vec<u32> = f.support().elems();
    if support.len() as u32 > TAU_STAR_CAP {
        return Err(Error::Unsupported(format!(
            "fractional covering needs at most {TAU_STAR_CAP} active elements, got {}",
            support.len()
        )));
    }
    if f.is_empty() {
        return Ok(BigRational::zero());
    }
    let m = support.len();
    let cols = f.len();
    let width = cols + m;
    let one = BigRational::one();
    let mut tab: Vec<Vec<BigRational>> = support
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut row = vec![BigRational::zero(); width + 1];
            for (j, s) in f.sets().iter().enumerate() {
                if s.contains(x) {
                    row[j] = one.clone();
                }
            }
            row[cols + i] = one.clone();
            row[width] = one.clone();
            row
        })
        .collect();
    // reduced costs for a maximisation, stored negated
    let mut z: Vec<BigRational> = (0..=width).map(|j| if j < cols { -one.clone() } else { BigRational::zero() }).collect();
    let mut basis: Vec<usize> = (cols..width).collect();
    loop {
        let Some(enter) = (0..width).find(|&j| z[j].is_negative()) else {
            return Ok(z[width].clone());
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("packing LP is bounded");
        let piv = tab[r][enter].clone();
        for v in tab[r].iter_mut() {
            *v /= &piv;
        }
        let prow = tab[r].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let factor = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= &factor * p;
                }
            }
        }
        let factor = z[enter].clone();
        for (v, p) in z.iter_mut().zip(&prow) {
            *v -= &factor * p;
        }
        basis[r] = enter;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::{k_subsets, GroundSet};
    use crate::zoo::{build_fano, build_t2, build_t2prime};

    // Enumerate every basic solution of the covering LP directly: pick
    // |support| tight constraints among the member rows and w_x >= 0.
    fn tau_star_by_vertices(f: &SetFamily) -> BigRational {
        let support = f.support().elems();
        let m = support.len();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        let mut rhs = Vec::new();
        for s in f.sets() {
            rows.push(support.iter().map(|&x| if s.contains(x) { BigRational::one() } else { BigRational::zero() }).collect());
            rhs.push(BigRational::one());
        }
        for i in 0..m {
            rows.push((0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect());
            rhs.push(BigRational::zero());
        }
        let mut best: Option<BigRational> = None;
        let idx = GroundSet::upto(rows.len() as u32);
        for pick in k_subsets(idx, m as u32) {
            let chosen: Vec<usize> = pick.iter().map(|x| x as usize - 1).collect();
            let Some(w) = solve(chosen.iter().map(|&i| rows[i].clone()).collect(), chosen.iter().map(|&i| rhs[i].clone()).collect())
            else {
                continue;
            };
            let feasible = w.iter().all(|v| !v.is_negative())
                && rows.iter().zip(&rhs).all(|(r, b)| r.iter().zip(&w).map(|(a, x)| a * x).sum::<BigRational>() >= *b);
            if feasible {
                let val: BigRational = w.iter().sum();
                if best.as_ref().map_or(true, |b| val < *b) {
                    best = Some(val);
                }
            }
        }
        best.unwrap()
    }

    fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
        let n = a.len();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            b.swap(col, p);
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = &a[r][col] / &a[col][col];
                    let prow = a[col].clone();
                    for (v, q) in a[r].iter_mut().zip(&prow) {
                        *v -= &f * q;
                    }
                    let bc = b[col].clone();
                    b[r] -= &f * bc;
                }
            }
        }
        Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
    }

    #[test]
    fn tau_small_cases() {
        let star = SetFamily::filter_all(GroundSet::upto(6), 3, |s| s.contains(2)).unwrap();
        assert_eq!(covering_number(&star), 1);
        assert_eq!(covering_number(&SetFamily::empty(GroundSet::upto(4), 2)), 0);
        assert_eq!(covering_number(&build_fano()), 3);
        let all = SetFamily::filter_all(GroundSet::upto(6), 3, |_| true).unwrap();
        assert_eq!(covering_number(&all), 4);
    }

    #[test]
    fn tau_star_matches_vertex_enumeration() {
        let fams = vec![build_fano(), build_t2(3).unwrap(), build_t2(4).unwrap(), build_t2prime(3).unwrap()];
        for f in fams {
            assert_eq!(fractional_covering(&f).unwrap(), tau_star_by_vertices(&f));
        }
        assert_eq!(fractional_covering(&build_fano()).unwrap(), BigRational::new(7.into(), 3.into()));
        assert_eq!(fractional_covering(&build_t2prime(3).unwrap()).unwrap(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn tau_star_brackets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let all: Vec<Subset> = k_subsets(GroundSet::upto(6), 3).collect();
        for _ in 0..60 {
            let sets: Vec<Subset> = all.iter().copied().filter(|_| rng.gen_bool(0.25)).collect();
            let f = SetFamily::new(GroundSet::upto(6), 3, sets).unwrap();
            if f.is_empty() {
                continue;
            }
            let ts = fractional_covering(&f).unwrap();
            assert_eq!(ts, tau_star_by_vertices(&f));
            assert!(ts <= BigRational::from_integer(covering_number(&f).into()));
            let (d, _) = f.max_degree();
            assert!(BigRational::from_integer(d.into()) >= BigRational::from_integer(f.len().into()) / &ts);
        }
    }

    #[test]
    fn tau_star_cap() {
        let big = SetFamily::filter_all(GroundSet::upto(13), 2, |s| s.contains(1)).unwrap();
        assert!(matches!(fractional_covering(&big), Err(Error::Unsupported(_))));
    }
}
