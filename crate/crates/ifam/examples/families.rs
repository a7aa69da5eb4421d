// Build the named families, print their metrics, and round-trip one through JSON.
use ifam::zoo::{build_c3, build_d37, build_el, build_hu, build_ji, build_t2, build_fano, FamilyStats};
use ifam::SetFamily;

fn main() {
    let fams: Vec<(&str, SetFamily)> = vec![
        ("H_4(10,4)", build_hu(10, 4, 4).unwrap()),
        ("J_2(10,4)", build_ji(10, 4, 2).unwrap()),
        ("E_3(10,4)", build_el(10, 4, 3).unwrap()),
        ("T_2(4)", build_t2(4).unwrap()),
        ("C_3(10,4)", build_c3(10, 4).unwrap()),
        ("D_3/7(9,4)", build_d37(9, 4).unwrap()),
        ("Fano", build_fano()),
    ];
    for (name, f) in &fams {
        println!("{name:<11} {}", FamilyStats::of(f).to_json());
    }
    let text = fams[4].1.to_json();
    assert_eq!(SetFamily::from_json(&text).unwrap(), fams[4].1);
    println!("C_3(10,4) JSON: {} bytes", text.len());
}
