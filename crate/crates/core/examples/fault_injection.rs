//! Checks that the property campaigns notice bugs: each documented kernel
//! mutation is switched on in turn, a short campaign runs, and the first
//! failure is shrunk to a minimal direct sum of atoms and saved.
//!
//! ```text
//! cargo run --release --example fault_injection -- [BUNDLE_DIR]
//! ```

use specseq::bicomplex::{AtomMix, Recipe};
use specseq::fault::Fault;
use specseq::harness::{run_campaign, Campaign, Property};

fn main() {
    let bundle_dir = std::env::args().nth(1).map(std::path::PathBuf::from);
    for fault in Fault::ALL {
        let mut campaign = Campaign::new(1, 60, Recipe::new(AtomMix::Mixed), Property::ALL.to_vec());
        campaign.fault = Some(fault);
        let report = run_campaign(&campaign, bundle_dir.as_deref()).expect("bundle directory is writable");
        let caught: Vec<String> =
            report.properties.iter().filter(|p| p.fail > 0).map(|p| p.property.to_string()).collect();
        println!("{fault}: caught by {}", if caught.is_empty() { "nothing".into() } else { caught.join(", ") });
        if let Some(first) = report.properties.iter().find_map(|p| p.first_failure.as_ref()) {
            println!("  shrunk to {} atom(s): {}", first.shrunk_atoms, first.message);
        }
    }
}
