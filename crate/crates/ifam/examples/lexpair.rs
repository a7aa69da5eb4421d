// Brute-force optimum of |A| + |B| over cross-intersecting lex prefixes.
use ifam::oracle::{oracle_lexpair, LexPairQuery};

fn main() {
    for g in [1, 2, 7, 8] {
        let r = oracle_lexpair(&LexPairQuery::diversity(12, 4, g)).unwrap();
        println!("n=12 k=4 |B|>={g}: {}", r.objective);
    }
    // without an upper limit on |B| the optimum is the trivial pair (nothing, all b-sets)
    let mut q = LexPairQuery::on(12, 3, 4, 1);
    q.max_b = Some(1);
    let r = oracle_lexpair(&q).unwrap();
    println!("{}", r.to_json());
}
