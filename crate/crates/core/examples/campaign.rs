//! Runs a seeded campaign over every property and prints the report.
//!
//! ```text
//! cargo run --release --example campaign -- [TRIALS] [MIX] [SEED]
//! ```
//!
//! `MIX` is `squares+dots`, `zigzags` or `mixed` (default `mixed`).

use specseq::bicomplex::{AtomMix, Recipe};
use specseq::harness::{run_campaign, Campaign, Property};

fn main() {
    let mut args = std::env::args().skip(1);
    let trials = args.next().map_or(200, |s| s.parse().expect("TRIALS must be a number"));
    let mix = args.next().map_or(AtomMix::Mixed, |s| AtomMix::parse(&s).expect("unknown MIX"));
    let seed = args.next().map_or(2024, |s| s.parse().expect("SEED must be a number"));

    let campaign = Campaign::new(seed, trials, Recipe::new(mix), Property::ALL.to_vec());
    let report = run_campaign(&campaign, None).expect("campaign without bundles cannot fail on I/O");
    print!("{}", report.to_text());
    println!("wall time {:.2}s", report.wall_time.as_secs_f64());
    std::process::exit(if report.failures() == 0 { 0 } else { 1 });
}
