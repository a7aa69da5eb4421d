// Covering number and exact fractional covering number.
use ifam::zoo::{build_c3, build_fano, build_t2, covering_number, fractional_covering};

fn main() {
    for (name, f) in [("Fano", build_fano()), ("T_2(3)", build_t2(3).unwrap()), ("C_3(7,3)", build_c3(7, 3).unwrap())] {
        println!("{name:<9} tau={} tau*={}", covering_number(&f), fractional_covering(&f).unwrap());
    }
}
