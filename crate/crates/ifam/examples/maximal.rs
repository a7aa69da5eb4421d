// Largest intersecting families under a constraint, by exhaustive search.
use ifam::oracle::{oracle_maximal_intersecting, Constraint};

fn main() {
    for name in ["none", "diversity>=1", "diversity>=2", "tau>=3"] {
        let cons: Constraint = name.parse().unwrap();
        let r = oracle_maximal_intersecting(8, 3, &cons, None).unwrap();
        println!("n=8 k=3 {name:<13} {} ({} classes, {:?})", r.objective, r.witnesses.len(), r.elapsed);
    }
}
