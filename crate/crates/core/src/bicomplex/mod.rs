//! Bounded double complexes of finite-dimensional vector spaces.
//!
//! A [`DoubleComplex`] stores the dimension of each nonzero `A^{p,q}` and the
//! matrices of the nonzero maps `d'_{p,q}: A^{p,q} → A^{p+1,q}` and
//! `d''_{p,q}: A^{p,q} → A^{p,q+1}`. Absent cells are zero, absent maps are
//! zero maps of the shape implied by the cell dimensions. Matrices act on
//! column vectors, so `d'_{p,q}` has `dim A^{p+1,q}` rows and
//! `dim A^{p,q}` columns.

mod generators;
pub mod io;
mod regrade;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::exactlin::{Field, Matrix};

pub use generators::{
    make_dot, make_square, make_zigzag, random_complex, random_iso, Atom, AtomMix, GeneratedComplex, Recipe,
    StairStart, ZigzagShape,
};
pub use regrade::{degrade, regrade_bidifferential, BigradedModule, RegradeError, RegradeMode};

/// Bidegree `(p, q)`.
pub type Bidegree = (i32, i32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("cell ({p},{q}) has a negative index")]
    NegativeIndex { p: i32, q: i32 },
    #[error("complexes live over different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("basis change at ({p},{q}) is not invertible")]
    NotInvertible { p: i32, q: i32 },
    #[error("basis change at ({p},{q}) has shape {found:?}, expected {expected}x{expected}")]
    IsoShape { p: i32, q: i32, expected: usize, found: (usize, usize) },
    #[error("complex fails validation: {0}")]
    Invalid(ValidationReport),
}

/// The horizontal (`d'`) or vertical (`d''`) differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Differential {
    Horizontal,
    Vertical,
}

impl Differential {
    pub fn name(self) -> &'static str {
        match self {
            Differential::Horizontal => "d1",
            Differential::Vertical => "d2",
        }
    }

    fn target(self, (p, q): Bidegree) -> Bidegree {
        match self {
            Differential::Horizontal => (p + 1, q),
            Differential::Vertical => (p, q + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleComplex<F: Field> {
    field: F,
    dims: BTreeMap<Bidegree, usize>,
    d1: BTreeMap<Bidegree, Matrix<F>>,
    d2: BTreeMap<Bidegree, Matrix<F>>,
}

impl<F: Field> DoubleComplex<F> {
    /// Assembles a complex. Zero cells and zero maps are dropped so that
    /// equal complexes have equal storage. Shapes and axioms are not
    /// checked here; see [`DoubleComplex::validate`].
    pub fn new(
        field: F,
        dims: impl IntoIterator<Item = (Bidegree, usize)>,
        d1: impl IntoIterator<Item = (Bidegree, Matrix<F>)>,
        d2: impl IntoIterator<Item = (Bidegree, Matrix<F>)>,
    ) -> Result<Self, ComplexError> {
        let mut cells = BTreeMap::new();
        for ((p, q), dim) in dims {
            if p < 0 || q < 0 {
                return Err(ComplexError::NegativeIndex { p, q });
            }
            if dim > 0 {
                cells.insert((p, q), dim);
            }
        }
        let keep = |maps: BTreeMap<Bidegree, Matrix<F>>| -> Result<_, ComplexError> {
            for &(p, q) in maps.keys() {
                if p < 0 || q < 0 {
                    return Err(ComplexError::NegativeIndex { p, q });
                }
            }
            Ok(maps.into_iter().filter(|(_, m)| !m.is_zero()).collect())
        };
        Ok(Self {
            d1: keep(d1.into_iter().collect())?,
            d2: keep(d2.into_iter().collect())?,
            field,
            dims: cells,
        })
    }

    pub fn zero(field: F) -> Self {
        Self { field, dims: BTreeMap::new(), d1: BTreeMap::new(), d2: BTreeMap::new() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self, p: i32, q: i32) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Nonzero cells in `(p, q)` order.
    pub fn cells(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.dims.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Stored (nonzero) maps of one differential.
    pub fn stored_maps(&self, which: Differential) -> &BTreeMap<Bidegree, Matrix<F>> {
        match which {
            Differential::Horizontal => &self.d1,
            Differential::Vertical => &self.d2,
        }
    }

    /// Matrix of `d'_{p,q}`, materialized as a zero map when absent.
    pub fn d1(&self, p: i32, q: i32) -> Matrix<F> {
        self.map(Differential::Horizontal, p, q)
    }

    /// Matrix of `d''_{p,q}`, materialized as a zero map when absent.
    pub fn d2(&self, p: i32, q: i32) -> Matrix<F> {
        self.map(Differential::Vertical, p, q)
    }

    pub fn map(&self, which: Differential, p: i32, q: i32) -> Matrix<F> {
        if let Some(m) = self.stored_maps(which).get(&(p, q)) {
            return m.clone();
        }
        let (tp, tq) = which.target((p, q));
        Matrix::zeros(self.field.clone(), self.dim(tp, tq), self.dim(p, q))
    }

    /// Largest total degree `p + q` with a nonzero cell.
    pub fn top_degree(&self) -> Option<i32> {
        self.dims.keys().map(|&(p, q)| p + q).max()
    }

    /// Smallest `(P, Q)` such that the support lies in `[0,P] x [0,Q]`.
    pub fn window(&self) -> (i32, i32) {
        self.dims.keys().fold((0, 0), |(mp, mq), &(p, q)| (mp.max(p), mq.max(q)))
    }

    pub fn total_dimension(&self) -> usize {
        self.dims.values().sum()
    }

    /// Lists every shape mismatch and every failing axiom
    /// `d'd' = 0`, `d''d'' = 0`, `d'd'' + d''d' = 0`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut bad_shape = BTreeSet::new();
        for which in [Differential::Horizontal, Differential::Vertical] {
            for (&(p, q), m) in self.stored_maps(which) {
                let (tp, tq) = which.target((p, q));
                let expected = (self.dim(tp, tq), self.dim(p, q));
                let found = (m.rows(), m.cols());
                if expected != found {
                    bad_shape.insert((which, (p, q)));
                    report.shape_issues.push(ShapeIssue { map: which, p, q, expected, found });
                }
            }
        }
        let shaped = |which, pq| !bad_shape.contains(&(which, pq));
        let mut sites = BTreeSet::new();
        for &k in self.d1.keys().chain(self.d2.keys()) {
            sites.insert(k);
        }
        use Differential::{Horizontal as H, Vertical as V};
        for (p, q) in sites {
            if shaped(H, (p, q)) && shaped(H, (p + 1, q)) {
                let prod = self.d1(p + 1, q).mul(&self.d1(p, q));
                report.push_axiom(Axiom::HorizontalSquare, p, q, &prod);
            }
            if shaped(V, (p, q)) && shaped(V, (p, q + 1)) {
                let prod = self.d2(p, q + 1).mul(&self.d2(p, q));
                report.push_axiom(Axiom::VerticalSquare, p, q, &prod);
            }
            let all = [(H, (p, q + 1)), (V, (p, q)), (V, (p + 1, q)), (H, (p, q))];
            if all.iter().all(|&(w, pq)| shaped(w, pq)) {
                let prod = self.d1(p, q + 1).mul(&self.d2(p, q)).add(&self.d2(p + 1, q).mul(&self.d1(p, q)));
                report.push_axiom(Axiom::Anticommute, p, q, &prod);
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// `Ok(self)` when valid, the report otherwise.
    pub fn validated(self) -> Result<Self, ComplexError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(ComplexError::Invalid(report))
        }
    }

    /// Cellwise direct sum; `self` occupies the leading coordinates.
    pub fn direct_sum(&self, other: &DoubleComplex<F>) -> Result<DoubleComplex<F>, ComplexError> {
        if self.field != other.field {
            return Err(ComplexError::FieldMismatch {
                left: self.field.spec().to_string(),
                right: other.field.spec().to_string(),
            });
        }
        let mut dims = self.dims.clone();
        for (&k, &v) in &other.dims {
            *dims.entry(k).or_insert(0) += v;
        }
        let block_diag = |which: Differential| {
            let keys: BTreeSet<Bidegree> =
                self.stored_maps(which).keys().chain(other.stored_maps(which).keys()).copied().collect();
            keys.into_iter()
                .map(|(p, q)| {
                    let a = self.map(which, p, q);
                    let b = other.map(which, p, q);
                    let mut m = Matrix::zeros(self.field.clone(), a.rows() + b.rows(), a.cols() + b.cols());
                    m.set_block(0, 0, &a);
                    m.set_block(a.rows(), a.cols(), &b);
                    ((p, q), m)
                })
                .collect::<Vec<_>>()
        };
        DoubleComplex::new(self.field.clone(), dims, block_diag(Differential::Horizontal), block_diag(Differential::Vertical))
    }

    /// Conjugates every differential by a cellwise isomorphism:
    /// `d'_new = g_{p+1,q} d' g_{p,q}^{-1}`, likewise for `d''`.
    pub fn change_basis(&self, iso: &BigradedIso<F>) -> Result<DoubleComplex<F>, ComplexError> {
        let mut inverses = BTreeMap::new();
        for (&(p, q), &dim) in &self.dims {
            let g = iso.get(&self.field, p, q, dim);
            if (g.rows(), g.cols()) != (dim, dim) {
                return Err(ComplexError::IsoShape { p, q, expected: dim, found: (g.rows(), g.cols()) });
            }
            let inv = g.inverse().ok_or(ComplexError::NotInvertible { p, q })?;
            inverses.insert((p, q), inv);
        }
        let conj = |which: Differential| {
            self.stored_maps(which)
                .iter()
                .map(|(&(p, q), m)| {
                    let (tp, tq) = which.target((p, q));
                    let g_target = iso.get(&self.field, tp, tq, self.dim(tp, tq));
                    ((p, q), g_target.mul(m).mul(&inverses[&(p, q)]))
                })
                .collect::<Vec<_>>()
        };
        DoubleComplex::new(self.field.clone(), self.dims.clone(), conj(Differential::Horizontal), conj(Differential::Vertical))
    }
}

/// A cellwise isomorphism `g_{p,q}: A^{p,q} → A^{p,q}`; cells without an
/// entry use the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedIso<F: Field> {
    maps: BTreeMap<Bidegree, Matrix<F>>,
}

impl<F: Field> Default for BigradedIso<F> {
    fn default() -> Self {
        Self { maps: BTreeMap::new() }
    }
}

impl<F: Field> BigradedIso<F> {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: i32, q: i32, g: Matrix<F>) {
        self.maps.insert((p, q), g);
    }

    pub fn maps(&self) -> &BTreeMap<Bidegree, Matrix<F>> {
        &self.maps
    }

    pub fn is_identity(&self) -> bool {
        self.maps.iter().all(|(_, g)| *g == Matrix::identity(g.field().clone(), g.rows()))
    }

    fn get(&self, field: &F, p: i32, q: i32, dim: usize) -> Matrix<F> {
        self.maps.get(&(p, q)).cloned().unwrap_or_else(|| Matrix::identity(field.clone(), dim))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `d'_{p+1,q} d'_{p,q} = 0`
    HorizontalSquare,
    /// `d''_{p,q+1} d''_{p,q} = 0`
    VerticalSquare,
    /// `d'_{p,q+1} d''_{p,q} + d''_{p+1,q} d'_{p,q} = 0`
    Anticommute,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::HorizontalSquare => "d1*d1",
            Axiom::VerticalSquare => "d2*d2",
            Axiom::Anticommute => "d1*d2+d2*d1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeIssue {
    pub map: Differential,
    pub p: i32,
    pub q: i32,
    /// `(rows, cols)` implied by the cell dimensions.
    pub expected: (usize, usize),
    pub found: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    /// Source cell of the offending composite.
    pub p: i32,
    pub q: i32,
    /// `(row, col)` positions of the nonzero entries of the composite.
    pub nonzero: Vec<(usize, usize)>,
}

/// Result of [`DoubleComplex::validate`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub shape_issues: Vec<ShapeIssue>,
    pub axiom_failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.shape_issues.is_empty() && self.axiom_failures.is_empty()
    }

    fn push_axiom<F: Field>(&mut self, axiom: Axiom, p: i32, q: i32, product: &Matrix<F>) {
        let nonzero = product.nonzero_positions();
        if !nonzero.is_empty() {
            self.axiom_failures.push(AxiomFailure { axiom, p, q, nonzero });
        }
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let mut first = true;
        for s in &self.shape_issues {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(
                f,
                "shape: {} at ({},{}) is {}x{}, expected {}x{}",
                s.map.name(),
                s.p,
                s.q,
                s.found.0,
                s.found.1,
                s.expected.0,
                s.expected.1
            )?;
        }
        for a in &self.axiom_failures {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "axiom: {} != 0 at ({},{}), nonzero entries {:?}", a.axiom.name(), a.p, a.q, a.nonzero)?;
        }
        Ok(())
    }
}
