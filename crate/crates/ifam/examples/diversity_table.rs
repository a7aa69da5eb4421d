// The oracle table of the diversity bound and where it jumps.
use ifam::oracle::{oracle_diversity_table, table_breakpoints, table_csv};
use ifam::resistance::enumerate_resistant;

fn main() {
    let rows = oracle_diversity_table(11, 5).unwrap();
    print!("{}", table_csv(&rows));
    println!("breakpoints {:?}", table_breakpoints(&rows));
    println!("resistant   {:?}", enumerate_resistant(11, 5).unwrap());
}
