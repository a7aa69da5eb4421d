// Shifting keeps an intersecting family intersecting and never grows the shadow.
use ifam::zoo::build_fano;

fn main() {
    let mut f = build_fano();
    for (i, j) in [(1, 7), (2, 6), (3, 5), (1, 4)] {
        let g = f.shift(i, j).unwrap();
        println!(
            "S_{i}{j}: size {} intersecting {} shadow {} -> {}",
            g.len(),
            g.is_intersecting(),
            f.shadow().unwrap().len(),
            g.shadow().unwrap().len()
        );
        f = g;
    }
    println!("{}", f.to_json());
}
