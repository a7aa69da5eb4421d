// Resistant numbers for (n, k) = (12, 5) and the descriptor of each one.
use ifam::resistance::{enumerate_resistant, resistant_descriptor};

fn main() {
    let (n, k) = (12, 5);
    for g in enumerate_resistant(n, k).unwrap() {
        let d = resistant_descriptor(n, k, &g).unwrap();
        println!("gamma={g:>3} T={:?} S={:?}", d.t_gamma, d.s_gamma);
    }
}
