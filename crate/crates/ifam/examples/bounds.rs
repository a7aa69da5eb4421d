// The diversity bounds side by side at n = 12, k = 4.
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use ifam::resistance::{bound_ab, bound_full1, bound_hk, bound_thm1, bound_weighted};

fn main() {
    let (n, k) = (12, 4);
    for g in 1..=8u32 {
        let g = BigUint::from(g);
        let f = bound_full1(n, k, &g).unwrap();
        let w = bound_weighted(n, k, &g).unwrap();
        println!("gamma={g}: full1 {} weighted {}", f.bound, w.bound);
    }
    let t = bound_thm1(n, k, &BigRational::new(7.into(), 2.into())).unwrap();
    println!("thm1 at u=7/2: {} for gamma >= {}", t.bound, t.window[0].0);
    println!("diversity >= 2 size bound: {}", bound_hk(n, k));
    let ab = bound_ab(12, 3, 4, &BigUint::one(), &BigRational::one()).unwrap();
    println!("(a,b)=(3,4) minB=1: {}", ab.to_json());
}
