//! The total complex `A^k = ⊕_{p+q=k} A^{p,q}`, its descending column
//! filtration `F^pA^k = ⊕_{s≥p} A^{s,k-s}` and the approximate cycles and
//! boundaries
//!
//! ```text
//! Z^{p,q}_r = { ξ ∈ F^pA^{p+q} : dξ ∈ F^{p+r}A^{p+q+1} }
//! B^{p,q}_r = F^pA^{p+q} ∩ d(F^{p-r}A^{p+q-1})
//! ```
//!
//! with `F^pA^k = A^k` for `p ≤ 0` and `F^pA^k = 0` for `p > k`.
//!
//! Coordinates: `A^k` lists its blocks `A^{p,k-p}` by ascending `p`, each
//! block in the basis of the double complex. Every subspace produced here
//! lives in those coordinates.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::{Arc, Mutex};

use crate::bicomplex::{ComplexError, DoubleComplex};
use crate::exactlin::{Field, Matrix, Subspace};
use crate::fault::Fault;

/// Page index `r`, possibly `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PageIndex {
    Finite(i32),
    Infinity,
}

impl PageIndex {
    pub fn offset(self, delta: i32) -> PageIndex {
        match self {
            PageIndex::Finite(r) => PageIndex::Finite(r + delta),
            PageIndex::Infinity => PageIndex::Infinity,
        }
    }
}

impl From<i32> for PageIndex {
    fn from(r: i32) -> Self {
        PageIndex::Finite(r)
    }
}

impl fmt::Display for PageIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PageIndex::Finite(r) => write!(f, "{r}"),
            PageIndex::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum SpaceKind {
    Cycles,
    Boundaries,
}

#[derive(Debug, Clone)]
struct Degree {
    dim: usize,
    /// Offset of block `A^{p,k-p}` for `p = 0..=k`, plus a final entry
    /// equal to `dim`.
    offsets: Vec<usize>,
}

/// Totalization of a valid double complex with its filtration and a memo
/// table of `Z`/`B` spaces. Safe to share between threads.
pub struct FilteredTotal<F: Field> {
    complex: DoubleComplex<F>,
    degrees: Vec<Degree>,
    /// `d^k: A^k → A^{k+1}` for `k = 0..=top`.
    differentials: Vec<Matrix<F>>,
    cache: Mutex<HashMap<(SpaceKind, i32, i32, PageIndex), Arc<Subspace<F>>>>,
    fault: Option<Fault>,
}

impl<F: Field> fmt::Debug for FilteredTotal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FilteredTotal")
            .field("dims", &self.degrees.iter().map(|d| d.dim).collect::<Vec<_>>())
            .field("fault", &self.fault)
            .finish()
    }
}

/// `totalize(c)`; fails if `c` is not a valid double complex.
pub fn totalize<F: Field>(c: &DoubleComplex<F>) -> Result<FilteredTotal<F>, ComplexError> {
    FilteredTotal::new(c)
}

impl<F: Field> FilteredTotal<F> {
    pub fn new(c: &DoubleComplex<F>) -> Result<Self, ComplexError> {
        Self::build(c, None)
    }

    /// Testing hook: totalize with one deliberate kernel mutation enabled.
    #[doc(hidden)]
    pub fn with_fault(c: &DoubleComplex<F>, fault: Fault) -> Result<Self, ComplexError> {
        Self::build(c, Some(fault))
    }

    fn build(c: &DoubleComplex<F>, fault: Option<Fault>) -> Result<Self, ComplexError> {
        let report = c.validate();
        if !report.is_valid() {
            return Err(ComplexError::Invalid(report));
        }
        let top = c.top_degree().unwrap_or(-1);
        let degrees: Vec<Degree> = (0..=top)
            .map(|k| {
                let mut offsets = Vec::with_capacity(k as usize + 2);
                let mut acc = 0;
                for p in 0..=k {
                    offsets.push(acc);
                    acc += c.dim(p, k - p);
                }
                offsets.push(acc);
                Degree { dim: acc, offsets }
            })
            .collect();
        let field = c.field().clone();
        let mut ft = Self {
            complex: c.clone(),
            degrees,
            differentials: Vec::new(),
            cache: Mutex::new(HashMap::new()),
            fault,
        };
        ft.differentials = (0..=top)
            .map(|k| {
                let mut d = Matrix::zeros(field.clone(), ft.dim(k + 1), ft.dim(k));
                for p in 0..=k {
                    let q = k - p;
                    let Some(src) = ft.block(p, q) else { continue };
                    if let Some(dst) = ft.block(p + 1, q) {
                        let mut m = c.d1(p, q);
                        if fault == Some(Fault::TotalizeSign) && q == 0 {
                            m = m.neg();
                        }
                        d.set_block(dst.start, src.start, &m);
                    }
                    if let Some(dst) = ft.block(p, q + 1) {
                        d.set_block(dst.start, src.start, &c.d2(p, q));
                    }
                }
                d
            })
            .collect();
        Ok(ft)
    }

    pub fn complex(&self) -> &DoubleComplex<F> {
        &self.complex
    }

    pub fn field(&self) -> &F {
        self.complex.field()
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }

    /// Largest `k` with `A^k ≠ 0`, `-1` for the zero complex.
    pub fn top_degree(&self) -> i32 {
        self.degrees.len() as i32 - 1
    }

    /// Last page index that can carry a nonzero differential, `top + 1`.
    /// Filtration indices of `A^k` live in `[0, k]`, so `d_r` for larger
    /// `r` has a zero source or target.
    pub fn cutoff(&self) -> usize {
        (self.top_degree() + 1).max(0) as usize
    }

    pub fn dim(&self, k: i32) -> usize {
        usize::try_from(k).ok().and_then(|k| self.degrees.get(k)).map_or(0, |d| d.dim)
    }

    /// Coordinate range of the nonzero block `A^{p,q}` inside `A^{p+q}`.
    pub fn block(&self, p: i32, q: i32) -> Option<Range<usize>> {
        if p < 0 || q < 0 {
            return None;
        }
        let deg = self.degrees.get((p + q) as usize)?;
        let (start, end) = (deg.offsets[p as usize], deg.offsets[p as usize + 1]);
        (end > start).then_some(start..end)
    }

    /// `d^k: A^k → A^{k+1}`.
    pub fn differential(&self, k: i32) -> Cow<'_, Matrix<F>> {
        match usize::try_from(k).ok().and_then(|k| self.differentials.get(k)) {
            Some(d) => Cow::Borrowed(d),
            None => Cow::Owned(Matrix::zeros(self.field().clone(), self.dim(k + 1), self.dim(k))),
        }
    }

    /// `F^pA^k`.
    pub fn filtration(&self, p: i32, k: i32) -> Subspace<F> {
        let n = self.dim(k);
        let start = if n == 0 || p > k {
            n
        } else {
            self.degrees[k as usize].offsets[p.max(0) as usize]
        };
        Subspace::coordinate(self.field().clone(), n, start..n)
    }

    /// Embeds a vector of `A^{p,q}` into `A^{p+q}`.
    pub fn embed(&self, p: i32, q: i32, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![self.field().zero(); self.dim(p + q)];
        if let Some(range) = self.block(p, q) {
            assert_eq!(v.len(), range.len(), "block vector length");
            out[range].clone_from_slice(v);
        }
        out
    }

    /// The `A^{p,q}` component of a vector of `A^{p+q}`.
    pub fn project(&self, p: i32, q: i32, v: &[F::Elem]) -> Vec<F::Elem> {
        self.block(p, q).map_or_else(Vec::new, |r| v[r].to_vec())
    }

    /// Projection `A^{p+q} → A^{p,q}` as a matrix.
    pub fn projection(&self, p: i32, q: i32) -> Matrix<F> {
        let n = self.dim(p + q);
        let range = self.block(p, q).unwrap_or(0..0);
        let mut m = Matrix::zeros(self.field().clone(), range.len(), n);
        for (i, j) in range.enumerate() {
            m.set(i, j, self.field().one());
        }
        m
    }

    fn cached(&self, key: (SpaceKind, i32, i32, PageIndex), compute: impl FnOnce() -> Subspace<F>) -> Arc<Subspace<F>> {
        if let Some(s) = self.cache.lock().expect("cache lock").get(&key) {
            return Arc::clone(s);
        }
        let s = Arc::new(compute());
        Arc::clone(self.cache.lock().expect("cache lock").entry(key).or_insert(s))
    }

    /// `Z^{p,q}_r`; `Z^{p,q}_∞ = F^pA^{p+q} ∩ ker d`.
    pub fn z_space(&self, p: i32, q: i32, r: impl Into<PageIndex>) -> Arc<Subspace<F>> {
        let r = r.into();
        self.cached((SpaceKind::Cycles, p, q, r), || {
            let k = p + q;
            let fp = self.filtration(p, k);
            let target = match r {
                PageIndex::Finite(r) => {
                    let shift = if self.fault == Some(Fault::CycleOffByOne) { 1 } else { 0 };
                    self.filtration(p + r + shift, k + 1)
                }
                PageIndex::Infinity => Subspace::zero(self.field().clone(), self.dim(k + 1)),
            };
            fp.intersect(&Subspace::preimage(&self.differential(k), &target))
        })
    }

    /// `B^{p,q}_r`; `B^{p,q}_∞ = F^pA^{p+q} ∩ Im d`.
    pub fn b_space(&self, p: i32, q: i32, r: impl Into<PageIndex>) -> Arc<Subspace<F>> {
        let r = r.into();
        self.cached((SpaceKind::Boundaries, p, q, r), || {
            let k = p + q;
            let fp = self.filtration(p, k);
            let source = match r {
                PageIndex::Finite(r) => {
                    let shift = if self.fault == Some(Fault::BoundaryOffByOne) { 1 } else { 0 };
                    self.filtration(p - r + shift, k - 1)
                }
                PageIndex::Infinity => Subspace::full(self.field().clone(), self.dim(k - 1)),
            };
            fp.intersect(&self.differential(k - 1).image_of(&source))
        })
    }

    /// `dim H^k(A, d)`.
    pub fn cohomology_dim(&self, k: i32) -> usize {
        self.dim(k) - self.differential(k).rank() - self.differential(k - 1).rank()
    }

    /// Failed inclusions among the `Z`/`B` spaces at `(p,q,r)`, by name.
    /// Covers the chains `B_r ⊆ B_{r+1} ⊆ B_∞ ⊆ Z_∞ ⊆ Z_{r+1} ⊆ Z_r`,
    /// `Z^{p+1,q-1}_{r-1} ⊆ Z^{p,q}_r`, `B^{p+1,q-1}_{r+1} ⊆ Z^{p,q}_r`,
    /// `d(Z^{p-r,q+r-1}_r) = B^{p,q}_r`, and `Z_r = Z_∞` once `r ≥ q+2`.
    pub fn inclusion_violations(&self, p: i32, q: i32, r: i32) -> Vec<&'static str> {
        let inf = PageIndex::Infinity;
        let z = |p, q, r: PageIndex| self.z_space(p, q, r);
        let b = |p, q, r: PageIndex| self.b_space(p, q, r);
        let fr = PageIndex::Finite(r);
        let mut out = Vec::new();
        let mut check = |ok: bool, name| {
            if !ok {
                out.push(name);
            }
        };
        check(z(p, q, fr).contains(&z(p, q, fr.offset(1))), "Z_{r+1} ⊆ Z_r");
        check(z(p, q, fr.offset(1)).contains(&z(p, q, inf)), "Z_inf ⊆ Z_{r+1}");
        check(z(p, q, inf).contains(&b(p, q, inf)), "B_inf ⊆ Z_inf");
        check(b(p, q, inf).contains(&b(p, q, fr.offset(1))), "B_{r+1} ⊆ B_inf");
        check(b(p, q, fr.offset(1)).contains(&b(p, q, fr)), "B_r ⊆ B_{r+1}");
        check(z(p, q, fr).contains(&z(p + 1, q - 1, fr.offset(-1))), "Z^{p+1,q-1}_{r-1} ⊆ Z^{p,q}_r");
        check(z(p, q, fr).contains(&b(p + 1, q - 1, fr.offset(1))), "B^{p+1,q-1}_{r+1} ⊆ Z^{p,q}_r");
        let source = z(p - r, q + r - 1, fr);
        check(self.differential(p + q - 1).image_of(&source) == *b(p, q, fr), "d(Z^{p-r,q+r-1}_r) = B^{p,q}_r");
        if r >= q + 2 {
            check(z(p, q, fr) == z(p, q, inf), "Z_r = Z_inf for r ≥ q+2");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::{make_dot, make_square, make_zigzag, ZigzagShape};
    use crate::exactlin::Rationals;

    #[test]
    fn square_totalization() {
        let ft = totalize(&make_square(Rationals, 0, 0)).unwrap();
        assert_eq!((ft.dim(0), ft.dim(1), ft.dim(2)), (1, 2, 1));
        // A^1 = A^{0,1} ⊕ A^{1,0}; d^0 = (d''_{0,0}, d'_{0,0})ᵀ = (1,1)ᵀ and
        // d^1 = (d'_{0,1}, d''_{1,0}) = (-1, 1).
        assert_eq!(*ft.differential(0), Matrix::from_i64(Rationals, 2, 1, &[1, 1]));
        assert_eq!(*ft.differential(1), Matrix::from_i64(Rationals, 1, 2, &[-1, 1]));
        assert!(ft.differential(1).mul(&ft.differential(0)).is_zero());
    }

    #[test]
    fn dot_totalization() {
        let ft = totalize(&make_dot(Rationals, 0, 0)).unwrap();
        assert_eq!(ft.dim(0), 1);
        assert_eq!(ft.dim(1), 0);
        assert!(ft.differential(0).is_zero());
        assert_eq!(ft.b_space(0, 0, 0).dim(), 0);
        assert_eq!(ft.b_space(0, 0, PageIndex::Infinity).dim(), 0);
    }

    #[test]
    fn horizontal_zigzag_cycles() {
        let ft = totalize(&make_zigzag(Rationals, ZigzagShape::Horizontal, (0, 0))).unwrap();
        assert_eq!(*ft.differential(0), Matrix::from_i64(Rationals, 1, 1, &[1]));
        // dξ lands in A^{1,0} = F^1A^1, so every ξ is a 1-cycle.
        assert_eq!(ft.z_space(0, 0, 1).dim(), 1);
        // d' is injective: nothing survives to r = 2.
        assert_eq!(ft.z_space(0, 0, 2).dim(), 0);
        assert_eq!(ft.z_space(0, 0, PageIndex::Infinity).dim(), 0);
    }

    #[test]
    fn negative_page_index_convention() {
        let ft = totalize(&make_square(Rationals, 0, 0)).unwrap();
        for (p, q) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(*ft.z_space(p, q, -1), ft.filtration(p, p + q));
            let expected = ft.filtration(p, p + q).intersect(&ft.differential(p + q - 1).image_of(&ft.filtration(p + 1, p + q - 1)));
            assert_eq!(*ft.b_space(p, q, -1), expected);
        }
    }

    #[test]
    fn square_boundary_space() {
        // B^{1,1}_1 = F^1A^2 ∩ d(F^0A^1). d^1(a,b) = b - a is onto A^2 = F^1A^2.
        let ft = totalize(&make_square(Rationals, 0, 0)).unwrap();
        assert_eq!(ft.b_space(1, 1, 1).dim(), 1);
        assert_eq!(ft.b_space(1, 1, 0).dim(), 1, "d(F^1A^1) = d''(A^{{1,0}}) = A^{{1,1}}");
        assert_eq!(ft.b_space(0, 1, 0).dim(), 1, "d(A^0) = span(1,1)");
        assert_eq!(ft.b_space(0, 1, -1).dim(), 0, "F^1A^0 = 0");
    }

    #[test]
    fn filtration_is_descending_and_preserved() {
        let ft = totalize(&make_square(Rationals, 0, 0).direct_sum(&make_zigzag(Rationals, ZigzagShape::L3, (1, 0))).unwrap()).unwrap();
        for k in 0..=ft.top_degree() {
            assert!(ft.filtration(0, k).is_full());
            assert!(ft.filtration(k + 1, k).is_zero());
            for p in 0..=k + 1 {
                assert!(ft.filtration(p, k).contains(&ft.filtration(p + 1, k)));
                let image = ft.differential(k).image_of(&ft.filtration(p, k));
                assert!(ft.filtration(p, k + 1).contains(&image));
            }
        }
    }

    #[test]
    fn invalid_complex_is_rejected() {
        let f = Rationals;
        let one = Matrix::from_i64(f, 1, 1, &[1]);
        let c = DoubleComplex::new(f, [((0, 0), 1), ((1, 0), 1), ((2, 0), 1)], [((0, 0), one.clone()), ((1, 0), one)], [])
            .unwrap();
        assert!(matches!(totalize(&c), Err(ComplexError::Invalid(_))));
    }
}
