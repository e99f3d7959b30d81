//! Turning a bigraded module with maps of bidegree `(1,1)` and `(1,-1)`
//! into a double complex via `A^{p,q} = U^{p+q,p-q}`.
//!
//! ```text
//! cargo run --example regrade
//! ```

use specseq::bicomplex::{degrade, regrade_bidifferential, BigradedModule, RegradeMode};
use specseq::exactlin::{Matrix, Rationals};
use specseq::filtration::totalize;
use specseq::pages::degeneration_page;

fn main() {
    let one = || Matrix::from_i64(Rationals, 1, 1, &[1]);
    // U^{0,0} → U^{1,1} by δ₊ and U^{0,0} → U^{1,-1} by δ₋, closed up by
    // U^{1,1} → U^{2,0} ← U^{1,-1} with opposite signs.
    let mut u = BigradedModule::new(Rationals);
    for st in [(0, 0), (1, 1), (1, -1), (2, 0)] {
        u.dims.insert(st, 1);
    }
    u.plus.insert((0, 0), one());
    u.minus.insert((0, 0), one());
    u.minus.insert((1, 1), one());
    u.plus.insert((1, -1), Matrix::from_i64(Rationals, 1, 1, &[-1]));

    let c = regrade_bidifferential(&u, RegradeMode::Strict).expect("δ₊, δ₋ anticommute");
    println!("cells (p,q): {:?}", c.cells().collect::<Vec<_>>());
    let ft = totalize(&c).unwrap();
    println!("degenerates at E_{}", degeneration_page(&ft).unwrap());
    println!("round trip through U: {}", degrade(&c) == u);

    // A component of bidegree (-1,-1) is rejected unless explicitly ignored.
    u.extra.insert(((2, 0), (-1, -1)), one());
    println!("strict: {}", regrade_bidifferential(&u, RegradeMode::Strict).unwrap_err());
    println!("ignoring extras: {} cells", regrade_bidifferential(&u, RegradeMode::IgnoreExtra).unwrap().cells().count());
}
