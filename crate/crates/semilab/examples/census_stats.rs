//! Prints the class counts and amiability statistics for every order the
//! census handles comfortably. Pass a maximum order (default 5).

use std::time::Instant;

use semilab::census::{self, enumerate_tables, DedupMode};

fn main() {
    let max_order: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("max order must be a number"))
        .unwrap_or(5);
    println!("{:>5} {:>10} {:>12} {:>8} {:>14}", "order", "iso", "iso+anti", "amiable", "not adequate");
    let started = Instant::now();
    let report = census::verify(max_order, false).expect("in-range order");
    assert!(report.passed(), "{:?}", report.failure);
    for s in &report.stats {
        let both = enumerate_tables(s.order, DedupMode::IsoAndAnti).unwrap().len();
        println!(
            "{:>5} {:>10} {:>12} {:>8} {:>14}",
            s.order, s.tables, both, s.amiable, s.amiable_not_adequate
        );
    }
    println!("verified in {:?}", started.elapsed());
}
