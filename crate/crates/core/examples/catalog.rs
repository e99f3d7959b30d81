//! The five smallest double complexes and everything the engine says
//! about them: page dimensions, degeneration page, d'd''-lemma verdict and
//! nonempty obstruction sets.
//!
//! ```text
//! cargo run --example catalog
//! cargo run --example catalog -- --write crates/core/catalog
//! ```
//!
//! With `--write DIR` the complexes are also saved as complex files
//! (`dot.json`, `square.json`, ...), plus `flipped_square.json`, a square
//! with one sign changed so that `d'd'' + d''d' ≠ 0`.

use std::path::PathBuf;

use specseq::bicomplex::io::to_document;
use specseq::bicomplex::{make_dot, make_square, make_zigzag, DoubleComplex, ZigzagShape};
use specseq::exactlin::{Matrix, Rationals};
use specseq::filtration::totalize;
use specseq::obstruction::{dd_lemma_report, ObstructionTable};
use specseq::pages::SpectralSequence;

fn flipped_square() -> DoubleComplex<Rationals> {
    let one = || Matrix::from_i64(Rationals, 1, 1, &[1]);
    DoubleComplex::new(
        Rationals,
        [((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)],
        [((0, 0), one()), ((0, 1), one())],
        [((0, 0), one()), ((1, 0), one())],
    )
    .expect("nonnegative cells")
}

fn main() {
    let write_dir = {
        let args: Vec<String> = std::env::args().skip(1).collect();
        match args.as_slice() {
            [] => None,
            [flag, dir] if flag == "--write" => Some(PathBuf::from(dir)),
            _ => panic!("usage: catalog [--write DIR]"),
        }
    };
    let catalog = [
        ("dot", make_dot(Rationals, 0, 0)),
        ("square", make_square(Rationals, 0, 0)),
        ("hz", make_zigzag(Rationals, ZigzagShape::Horizontal, (0, 0))),
        ("vz", make_zigzag(Rationals, ZigzagShape::Vertical, (0, 0))),
        ("l3", make_zigzag(Rationals, ZigzagShape::L3, (0, 0))),
    ];
    for (name, c) in &catalog {
        let ft = totalize(c).expect("catalog complexes are valid");
        let ss = SpectralSequence::compute(&ft).expect("pages");
        let dd = dd_lemma_report(c);
        let table = ObstructionTable::compute(&ft).expect("obstructions");
        println!("{name}");
        for page in ss.pages().iter().take(3) {
            println!("  E_{}: {:?}", page.r(), page.dims());
        }
        println!("  E_inf: {:?}, H: {:?}", ss.infinity().dims, ss.infinity().cohomology);
        println!("  degeneration page: {}", ss.degeneration_page());
        let failing: Vec<_> = dd.failing_cells().collect();
        println!("  d'd''-lemma: {}", if dd.passes() { "pass".to_string() } else { format!("fail at {failing:?}") });
        println!("  nonempty obstruction sets (p,q,r): {:?}", table.nonempty_keys().collect::<Vec<_>>());
    }
    let flipped = flipped_square();
    println!("flipped_square\n  {}", flipped.validate());

    if let Some(dir) = write_dir {
        std::fs::create_dir_all(&dir).expect("create output directory");
        for (name, c) in catalog.iter().chain([("flipped_square", flipped)].iter()) {
            let path = dir.join(format!("{name}.json"));
            std::fs::write(&path, to_document(c)).expect("write complex file");
            println!("wrote {}", path.display());
        }
    }
}
