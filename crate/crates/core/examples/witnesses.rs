//! Obstruction sets and their witnesses. The degeneration page can be
//! read off from which sets `ℰ^{p,q}_r` are nonempty; each nonempty set
//! comes with an explicit element that is re-checked from the raw
//! differentials, saved to a file and checked again after reloading.
//!
//! ```text
//! cargo run --example witnesses
//! ```

use specseq::bicomplex::{make_zigzag, StairStart, ZigzagShape};
use specseq::exactlin::Rationals;
use specseq::filtration::totalize;
use specseq::obstruction::{check_witness, eqdeg_verdict, ObstructionTable, Witness};

fn main() {
    let shape = ZigzagShape::Staircase { len: 4, start: StairStart::Source };
    let complex = make_zigzag(Rationals, shape, (0, 1))
        .direct_sum(&make_zigzag(Rationals, ZigzagShape::Horizontal, (0, 0)))
        .expect("same field");
    let ft = totalize(&complex).expect("valid");
    let table = ObstructionTable::compute(&ft).expect("obstructions");
    for w in table.entries.values().flatten() {
        print!("{}", w.render(&Rationals));
        let text = w.to_document(&Rationals);
        let reloaded = Witness::from_document(&Rationals, &text).expect("round trip");
        println!("  reloaded witness checks: {}", check_witness(&complex, &reloaded));
    }
    let verdict = eqdeg_verdict(&ft).expect("verdict");
    println!(
        "degeneration page from pages {}, from obstruction sets {}",
        verdict.by_pages, verdict.by_obstructions
    );
}
