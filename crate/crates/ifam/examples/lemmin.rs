// Minimal tau = 2 families of s-sets and their best cross-intersecting partners.
use ifam::oracle::{minimal_tau2_families, oracle_lemmin};
use ifam::resistance::lemmin_f;

fn main() {
    let (m, s, k) = (10, 4, 4);
    println!("{} minimal tau=2 families of {s}-sets on [{m}]", minimal_tau2_families(m, s).unwrap().len());
    for inter in [false, true] {
        let r = oracle_lemmin(m, s, k, inter).unwrap();
        println!("intersecting={inter}: optimum {}", r.objective);
        for w in &r.witnesses {
            println!("  {}", w.to_json());
        }
    }
    println!("f(2)+2 = {}, f(3)+3 = {}", lemmin_f(m, s, k, 2).unwrap() + 2u32, lemmin_f(m, s, k, 3).unwrap() + 3u32);
}
