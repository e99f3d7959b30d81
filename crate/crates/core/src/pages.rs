//! Pages of the spectral sequence of the column filtration.
//!
//! `E^{p,q}_r = Z^{p,q}_r / (Z^{p+1,q-1}_{r-1} + B^{p,q}_{r-1})`, with
//! `d_r: E^{p,q}_r → E^{p+r,q-r+1}_r` induced by the total differential.
//! Each cell keeps its canonical coset representatives, so `d_r` is an
//! honest matrix: column `j` holds the target coordinates of `d` applied to
//! representative `j`. Well-definedness is checked while building (the
//! denominator must map into the target denominator and the numerator into
//! the target numerator) rather than assumed.
//!
//! For the square `A^{0,0} → A^{1,0}, A^{0,1} → A^{1,1}` page 0 is the
//! whole complex with `d_0 = d''`, which pairs `A^{0,0}` with `A^{0,1}` and
//! `A^{1,0}` with `A^{1,1}`, so page 1 vanishes. For the horizontal zigzag
//! `A^{0,0} → A^{1,0}`, `d_0 = 0`, page 1 is the complex again with `d_1 = d'`
//! an isomorphism, and page 2 vanishes.

use std::collections::BTreeMap;

use crate::bicomplex::Bidegree;
use crate::exactlin::{Field, Matrix, QuotientMap, Subspace};
use crate::filtration::{FilteredTotal, PageIndex};
use crate::InternalError;

/// Nonzero dimensions by bidegree.
pub type DimTable = BTreeMap<Bidegree, usize>;

#[derive(Debug, Clone)]
pub struct PageCell<F: Field> {
    quotient: QuotientMap<F>,
    target: Bidegree,
    differential: Matrix<F>,
}

impl<F: Field> PageCell<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Vectors of `A^{p+q}` representing the basis of `E^{p,q}_r`.
    pub fn representatives(&self) -> &[Vec<F::Elem>] {
        self.quotient.representatives()
    }

    pub fn quotient(&self) -> &QuotientMap<F> {
        &self.quotient
    }

    /// Bidegree of the target of `d_r`.
    pub fn target(&self) -> Bidegree {
        self.target
    }

    /// Matrix of `d_r` out of this cell.
    pub fn differential(&self) -> &Matrix<F> {
        &self.differential
    }
}

/// `E_r` with its differential.
#[derive(Debug, Clone)]
pub struct Page<F: Field> {
    r: usize,
    cells: BTreeMap<Bidegree, PageCell<F>>,
}

/// Cells `(p,q)` with `p, q ≥ 0` and `p + q ≤ top`: outside these every
/// `E^{p,q}_r` is zero.
fn cell_range<F: Field>(ft: &FilteredTotal<F>) -> impl Iterator<Item = Bidegree> {
    let top = ft.top_degree();
    (0..=top).flat_map(move |k| (0..=k).map(move |p| (p, k - p)))
}

fn quotient_at<F: Field>(ft: &FilteredTotal<F>, p: i32, q: i32, r: i32) -> Result<QuotientMap<F>, InternalError> {
    let numerator = ft.z_space(p, q, r);
    let denominator = ft.z_space(p + 1, q - 1, r - 1).sum(&ft.b_space(p, q, r - 1));
    QuotientMap::new(&numerator, &denominator).map_err(|_| InternalError::IllDefinedQuotient { p, q, r: r.into() })
}

/// `E_r` of the spectral sequence of `ft`.
pub fn page<F: Field>(ft: &FilteredTotal<F>, r: usize) -> Result<Page<F>, InternalError> {
    let ri = r as i32;
    let field = ft.field().clone();
    let mut quotients = BTreeMap::new();
    for (p, q) in cell_range(ft) {
        quotients.insert((p, q), quotient_at(ft, p, q, ri)?);
    }
    let mut cells = BTreeMap::new();
    for (&(p, q), source) in &quotients {
        let target = (p + ri, q - ri + 1);
        let owned;
        let tq = match quotients.get(&target) {
            Some(t) => t,
            None => {
                owned = quotient_at(ft, target.0, target.1, ri)?;
                &owned
            }
        };
        let d = ft.differential(p + q);
        for v in source.denominator().basis() {
            if !tq.denominator().member(&d.apply(v)) {
                return Err(InternalError::DenominatorNotPreserved { p, q, r: ri.into() });
            }
        }
        let columns = source
            .representatives()
            .iter()
            .map(|v| tq.try_reduce(&d.apply(v)).ok_or(InternalError::DifferentialLeavesCycles { p, q, r: ri.into() }))
            .collect::<Result<Vec<_>, _>>()?;
        let differential = Matrix::from_columns(field.clone(), tq.dim(), &columns);
        cells.insert((p, q), PageCell { quotient: source.clone(), target, differential });
    }
    Ok(Page { r, cells })
}

impl<F: Field> Page<F> {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn cell(&self, p: i32, q: i32) -> Option<&PageCell<F>> {
        self.cells.get(&(p, q))
    }

    pub fn cells(&self) -> impl Iterator<Item = (Bidegree, &PageCell<F>)> {
        self.cells.iter().map(|(&k, v)| (k, v))
    }

    pub fn dim(&self, p: i32, q: i32) -> usize {
        self.cell(p, q).map_or(0, PageCell::dim)
    }

    pub fn dims(&self) -> DimTable {
        self.cells.iter().filter(|(_, c)| c.dim() > 0).map(|(&k, c)| (k, c.dim())).collect()
    }

    /// `d_r = 0` on every cell.
    pub fn differential_is_zero(&self) -> bool {
        self.cells.values().all(|c| c.differential.is_zero())
    }

    /// `d_r ∘ d_r = 0` through the stored bases.
    pub fn differential_squares_to_zero(&self) -> bool {
        self.cells.values().all(|c| match self.cells.get(&c.target) {
            Some(next) if next.differential.cols() == c.differential.rows() => {
                next.differential.mul(&c.differential).is_zero()
            }
            Some(_) => false,
            None => true,
        })
    }
}

/// Dimensions of `H(E_r, d_r)`: `dim E − rank(d_r out) − rank(d_r in)`.
/// An independent route to the dimensions of `E_{r+1}`.
pub fn page_via_cohomology<F: Field>(prev: &Page<F>) -> DimTable {
    let r = prev.r as i32;
    let mut out = DimTable::new();
    for (&(p, q), cell) in &prev.cells {
        let outgoing = cell.differential.rank();
        let incoming = prev.cell(p - r, q + r - 1).map_or(0, |c| c.differential.rank());
        let dim = cell.dim() as isize - outgoing as isize - incoming as isize;
        if dim != 0 {
            out.insert((p, q), dim.max(0) as usize);
        }
    }
    out
}

/// `E_∞` dimensions with the total cohomology they must add up to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinityPage {
    pub dims: DimTable,
    /// `dim H^k(A, d)` for `k = 0..=top`.
    pub cohomology: Vec<usize>,
}

impl InfinityPage {
    /// `Σ_{p+q=k} dim E^{p,q}_∞ = dim H^k` for every `k`.
    pub fn converges(&self) -> bool {
        self.cohomology.iter().enumerate().all(|(k, &h)| {
            let total: usize = self.dims.iter().filter(|((p, q), _)| (p + q) as usize == k).map(|(_, d)| d).sum();
            total == h
        })
    }
}

/// `E^{p,q}_∞ = (F^p ∩ ker d) / (F^{p+1} ∩ ker d + F^p ∩ Im d)`.
pub fn infinity_page<F: Field>(ft: &FilteredTotal<F>) -> Result<InfinityPage, InternalError> {
    let inf = PageIndex::Infinity;
    let mut dims = DimTable::new();
    for (p, q) in cell_range(ft) {
        let numerator: Subspace<F> = (*ft.z_space(p, q, inf)).clone();
        let denominator = ft.z_space(p + 1, q - 1, inf).sum(&ft.b_space(p, q, inf));
        let quotient =
            QuotientMap::new(&numerator, &denominator).map_err(|_| InternalError::IllDefinedQuotient { p, q, r: inf })?;
        if quotient.dim() > 0 {
            dims.insert((p, q), quotient.dim());
        }
    }
    let cohomology = (0..=ft.top_degree()).map(|k| ft.cohomology_dim(k)).collect();
    Ok(InfinityPage { dims, cohomology })
}

/// All pages `E_0, …, E_{R+1}` (`R` the cutoff) and `E_∞`.
#[derive(Debug, Clone)]
pub struct SpectralSequence<F: Field> {
    pages: Vec<Page<F>>,
    infinity: InfinityPage,
    cutoff: usize,
}

impl<F: Field> SpectralSequence<F> {
    pub fn compute(ft: &FilteredTotal<F>) -> Result<Self, InternalError> {
        Self::compute_through(ft, ft.cutoff() + 1)
    }

    /// Pages `0..=max_r`.
    pub fn compute_through(ft: &FilteredTotal<F>, max_r: usize) -> Result<Self, InternalError> {
        let pages = (0..=max_r).map(|r| page(ft, r)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { pages, infinity: infinity_page(ft)?, cutoff: ft.cutoff() })
    }

    pub fn pages(&self) -> &[Page<F>] {
        &self.pages
    }

    pub fn page(&self, r: usize) -> Option<&Page<F>> {
        self.pages.get(r)
    }

    pub fn infinity(&self) -> &InfinityPage {
        &self.infinity
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Smallest `r` with `d_s = 0` for every computed `s ≥ r`. With all
    /// pages through the cutoff computed this is the degeneration page.
    pub fn degeneration_page(&self) -> usize {
        self.pages
            .iter()
            .rposition(|page| !page.differential_is_zero())
            .map_or(0, |last| last + 1)
    }
}

/// Smallest `r` such that `d_s = 0` for all `s ≥ r`. The complex
/// degenerates at `E_0` only when every differential vanishes, which is
/// stronger than `d_0 = 0`.
pub fn degeneration_page<F: Field>(ft: &FilteredTotal<F>) -> Result<usize, InternalError> {
    Ok(SpectralSequence::compute_through(ft, ft.cutoff())?.degeneration_page())
}
