// Cascade (Macaulay) representation and the shadow bounds built on it.
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use ifam::binom::cascade;
use ifam::lex::{shadow_lower_bound, ShadowForm};

fn main() {
    let m = BigUint::from(100u32);
    let form = cascade(&m, 4).unwrap();
    println!("100 as a 4-cascade: {:?}", form.terms);
    for form in [ShadowForm::Cascade, ShadowForm::Lovasz] {
        let b = shadow_lower_bound(&m, 4, form).unwrap();
        println!("{form:?} shadow bound for 100 4-sets: {:.4}", b.to_f64().unwrap());
    }
}
