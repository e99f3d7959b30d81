//! Pages of a spectral sequence with their differentials, computed two
//! ways: directly as subquotients `Z_r / (Z_{r-1} + B_{r-1})`, and as the
//! cohomology of the previous page.
//!
//! ```text
//! cargo run --example spectral_pages                    # a four-step staircase
//! cargo run --example spectral_pages -- complex.json    # any complex file
//! ```

use specseq::bicomplex::io::parse_complex;
use specseq::bicomplex::{make_zigzag, DoubleComplex, StairStart, ZigzagShape};
use specseq::exactlin::{Field, Rationals};
use specseq::filtration::totalize;
use specseq::pages::{page_via_cohomology, SpectralSequence};
use specseq::with_complex;

fn report<F: Field>(c: &DoubleComplex<F>) {
    let report = c.validate();
    if !report.is_valid() {
        eprintln!("not a double complex: {report}");
        std::process::exit(3);
    }
    let ft = totalize(c).expect("validated");
    let ss = SpectralSequence::compute(&ft).expect("pages are well defined");
    println!("top degree {}, cutoff R = {}", ft.top_degree(), ft.cutoff());
    for page in ss.pages() {
        println!("E_{}: {:?}", page.r(), page.dims());
        for ((p, q), cell) in page.cells() {
            if !cell.differential().is_zero() {
                let (tp, tq) = cell.target();
                println!("  d_{} ({p},{q}) -> ({tp},{tq}) = {}", page.r(), cell.differential());
            }
        }
        if let Some(next) = ss.page(page.r() + 1) {
            let agree = next.dims() == page_via_cohomology(page);
            println!("  H(E_{}, d_{}) matches E_{}: {agree}", page.r(), page.r(), page.r() + 1);
        }
    }
    let inf = ss.infinity();
    println!("E_inf: {:?}", inf.dims);
    println!("H^k: {:?} (converges: {})", inf.cohomology, inf.converges());
    println!("degenerates at E_{}", ss.degeneration_page());
}

fn main() {
    match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).expect("readable complex file");
            let any = parse_complex(&text).unwrap_or_else(|e| {
                eprintln!("{path}: {e}");
                std::process::exit(2);
            });
            with_complex!(&any, c => report(c));
        }
        None => {
            let shape = ZigzagShape::Staircase { len: 4, start: StairStart::Source };
            report(&make_zigzag(Rationals, shape, (0, 1)));
        }
    }
}
