// Isomorphism testing through the canonical form.
use ifam::zoo::{build_el, build_hu, build_ji, canonical_form, is_isomorphic};

fn main() {
    let (n, k) = (9, 4);
    let j2 = build_ji(n, k, 2).unwrap();
    let e2 = build_el(n, k, 2).unwrap();
    let hm = build_hu(n, k, k).unwrap();
    let j1 = build_ji(n, k, 1).unwrap();
    println!("J_2 ~ E_2: {}", is_isomorphic(&j2, &e2).unwrap());
    println!("J_1 ~ H_k: {}", is_isomorphic(&j1, &hm).unwrap());
    println!("J_2 ~ H_k: {}", is_isomorphic(&j2, &hm).unwrap());
    let cf = canonical_form(&j2).unwrap();
    println!("canonical J_2: {} members on {} active elements", cf.sets.len(), cf.active);
}
