use std::fmt;
use std::ops::Range;

use super::matrix::reduce_rows;
use super::{Field, LinAlgError, Matrix};

/// A subspace of `F^n`, stored by its reduced echelon basis.
///
/// Basis vectors are kept as rows in reduced row-echelon form: pivot
/// positions strictly increase, each pivot entry is 1 and every other basis
/// vector is zero at that position. Read as columns this is the reduced
/// column-echelon form. The form is unique, so two subspaces are equal as
/// sets exactly when they compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Self { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Self::coordinate(field, ambient, 0..ambient)
    }

    /// Span of the standard basis vectors `e_i`, `i` in `range`.
    pub fn coordinate(field: F, ambient: usize, range: Range<usize>) -> Self {
        assert!(range.end <= ambient, "coordinate range exceeds ambient dimension");
        let basis = range
            .clone()
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Self { field, ambient, basis, pivots: range.collect() }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span<I>(field: F, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<F::Elem>>,
    {
        let mut rows: Vec<Vec<F::Elem>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length must equal ambient dimension"))
            .filter(|v| v.iter().any(|x| !field.is_zero(x)))
            .collect();
        let pivots = reduce_rows(&field, &mut rows, ambient);
        rows.truncate(pivots.len());
        Self { field, ambient, basis: rows, pivots }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Canonical basis vectors.
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The canonical basis as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_columns(self.field.clone(), self.ambient, &self.basis)
    }

    /// Remainder of `x` after eliminating the pivot positions of this
    /// subspace. Zero exactly when `x` is a member.
    pub fn reduce(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(x.len(), self.ambient, "vector length must equal ambient dimension");
        let f = &self.field;
        let mut r = x.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if f.is_zero(&r[pc]) {
                continue;
            }
            let factor = f.neg(&r[pc]);
            for (j, b) in row.iter().enumerate().skip(pc) {
                if !f.is_zero(b) {
                    r[j] = f.mul_add(&r[j], &factor, b);
                }
            }
        }
        r
    }

    pub fn member(&self, x: &[F::Elem]) -> bool {
        self.reduce(x).iter().all(|v| self.field.is_zero(v))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace<F>) -> bool {
        self.check_ambient(other);
        other.dim() <= self.dim() && other.basis.iter().all(|v| self.member(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        self.check_ambient(other);
        if other.is_zero() || self.is_full() {
            return self.clone();
        }
        if self.is_zero() || other.is_full() {
            return other.clone();
        }
        Self::span(self.field.clone(), self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Intersection, from the kernel of the stacked system `U a + V b = 0`.
    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        self.check_ambient(other);
        if self.is_zero() || other.is_full() {
            return self.clone();
        }
        if other.is_zero() || self.is_full() {
            return other.clone();
        }
        let stacked = Matrix::from_columns(
            self.field.clone(),
            self.ambient,
            &self.basis.iter().chain(&other.basis).cloned().collect::<Vec<_>>(),
        );
        let k = self.dim();
        let u = self.basis_matrix();
        let solutions = stacked.kernel();
        Self::span(
            self.field.clone(),
            self.ambient,
            solutions.basis.iter().map(|sol| u.apply(&sol[..k])),
        )
    }

    /// `{x : m x ∈ w}`.
    pub fn preimage(m: &Matrix<F>, w: &Subspace<F>) -> Subspace<F> {
        assert_eq!(m.rows(), w.ambient, "target subspace must live in the codomain");
        let field = m.field().clone();
        if w.is_zero() {
            return m.kernel();
        }
        if w.is_full() {
            return Self::full(field, m.cols());
        }
        let n = m.cols();
        let system = Matrix::hstack(field.clone(), m.rows(), &[m, &w.basis_matrix()]);
        let solutions = system.kernel();
        Self::span(field, n, solutions.basis.iter().map(|sol| sol[..n].to_vec()))
    }

    /// Image under the linear map `m`.
    pub fn image_under(&self, m: &Matrix<F>) -> Subspace<F> {
        m.image_of(self)
    }

    fn check_ambient(&self, other: &Subspace<F>) {
        assert_eq!(self.ambient, other.ambient, "subspaces must share an ambient space");
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {{", self.dim(), self.ambient)?;
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " (")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.field.format(x))?;
            }
            write!(f, ")")?;
        }
        write!(f, " }}")
    }
}

/// The quotient `g / h` with canonical coset representatives.
///
/// Representatives are the reduced echelon basis of the part of `g` that
/// vanishes on the pivot positions of `h`, so they are canonical too.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap<F: Field> {
    numerator: Subspace<F>,
    denominator: Subspace<F>,
    complement: Subspace<F>,
}

impl<F: Field> QuotientMap<F> {
    pub fn new(g: &Subspace<F>, h: &Subspace<F>) -> Result<Self, LinAlgError> {
        if g.ambient != h.ambient {
            return Err(LinAlgError::DimensionMismatch { expected: g.ambient, found: h.ambient });
        }
        if !g.contains(h) {
            return Err(LinAlgError::NotContained);
        }
        let complement = Subspace::span(g.field.clone(), g.ambient, g.basis.iter().map(|v| h.reduce(v)));
        Ok(Self { numerator: g.clone(), denominator: h.clone(), complement })
    }

    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    pub fn numerator(&self) -> &Subspace<F> {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace<F> {
        &self.denominator
    }

    /// One representative per quotient basis element.
    pub fn representatives(&self) -> &[Vec<F::Elem>] {
        self.complement.basis()
    }

    /// Coordinates of the class of `x` in `g / h`. Only meaningful for
    /// `x ∈ g`; see [`QuotientMap::try_reduce`].
    pub fn reduce(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.denominator.reduce(x);
        self.complement.pivots.iter().map(|&pc| r[pc].clone()).collect()
    }

    /// Like [`QuotientMap::reduce`] but returns `None` when `x ∉ g`.
    pub fn try_reduce(&self, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.numerator.field;
        let r = self.denominator.reduce(x);
        let coords: Vec<F::Elem> = self.complement.pivots.iter().map(|&pc| r[pc].clone()).collect();
        let mut rest = r;
        for (c, rep) in coords.iter().zip(self.complement.basis()) {
            let factor = f.neg(c);
            for (x, b) in rest.iter_mut().zip(rep) {
                *x = f.mul_add(x, &factor, b);
            }
        }
        rest.iter().all(|v| f.is_zero(v)).then_some(coords)
    }
}

/// Injectivity and surjectivity of the natural map `g/h → g2/h2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NaturalMap {
    pub injective: bool,
    pub surjective: bool,
}

impl NaturalMap {
    pub fn is_iso(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Decides the natural map `g/h → g2/h2` induced by inclusion, for
/// `h ⊆ g ⊆ g2` and `h ⊆ h2 ⊆ g2`: injective iff `g ∩ h2 = h`, surjective
/// iff `g2 = g + h2`.
pub fn natural_map<F: Field>(
    g: &Subspace<F>,
    h: &Subspace<F>,
    g2: &Subspace<F>,
    h2: &Subspace<F>,
) -> Result<NaturalMap, LinAlgError> {
    if !(g.contains(h) && h2.contains(h) && g2.contains(g) && g2.contains(h2)) {
        return Err(LinAlgError::NotContained);
    }
    Ok(NaturalMap {
        injective: g.intersect(h2) == *h,
        surjective: g.sum(h2) == *g2,
    })
}

/// A vector of `s` lying in neither `w1` nor `w2`, if one exists.
///
/// Over any field a vector space is never the union of two proper
/// subspaces, so such a vector exists iff `s ⊄ w1` and `s ⊄ w2`. It is one
/// of `x1`, `x2`, `x1 + x2` where `x1 ∈ s \ w1` and `x2 ∈ s \ w2`.
pub fn avoid_two_subspaces<F: Field>(
    s: &Subspace<F>,
    w1: &Subspace<F>,
    w2: &Subspace<F>,
) -> Option<Vec<F::Elem>> {
    let x1 = s.basis.iter().find(|v| !w1.member(v))?;
    let x2 = s.basis.iter().find(|v| !w2.member(v))?;
    if !w2.member(x1) {
        return Some(x1.clone());
    }
    if !w1.member(x2) {
        return Some(x2.clone());
    }
    // x1 ∈ w2 and x2 ∈ w1: x1 + x2 in w1 would force x1 ∈ w1, in w2 would
    // force x2 ∈ w2.
    let f = &s.field;
    Some(x1.iter().zip(x2).map(|(a, b)| f.add(a, b)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};

    fn q(v: &[i64]) -> Vec<num_rational::BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn quotient_of_plane_by_line() {
        let g = Subspace::full(Rationals, 2);
        let h = Subspace::span(Rationals, 2, [q(&[1, 0])]);
        let qm = QuotientMap::new(&g, &h).unwrap();
        assert_eq!(qm.dim(), 1);
        assert_eq!(qm.reduce(&q(&[5, 0])), q(&[0]));
        assert_eq!(qm.reduce(&q(&[5, 3])), q(&[3]));
    }

    #[test]
    fn quotient_by_itself_is_zero() {
        let g = Subspace::span(Rationals, 3, [q(&[1, 2, 3]), q(&[0, 1, 1])]);
        let qm = QuotientMap::new(&g, &g).unwrap();
        assert_eq!(qm.dim(), 0);
        assert!(qm.reduce(&q(&[1, 3, 4])).is_empty());
        assert!(qm.representatives().is_empty());
    }

    #[test]
    fn quotient_detects_nonzero_class() {
        // g = span{(1,1,0),(0,0,1)}, h = span{(1,1,0)}: the class of (0,0,1)
        // is nonzero because rank [h | (0,0,1)] = 2 > rank h = 1.
        let g = Subspace::span(Rationals, 3, [q(&[1, 1, 0]), q(&[0, 0, 1])]);
        let h = Subspace::span(Rationals, 3, [q(&[1, 1, 0])]);
        let m = Matrix::from_columns(Rationals, 3, &[q(&[1, 1, 0]), q(&[0, 0, 1])]);
        assert_eq!(m.rank(), 2);
        let qm = QuotientMap::new(&g, &h).unwrap();
        assert_eq!(qm.dim(), 1);
        assert_ne!(qm.reduce(&q(&[0, 0, 1])), q(&[0]));
        assert_eq!(qm.try_reduce(&q(&[1, 0, 0])), None, "(1,0,0) is not in g");
    }

    #[test]
    fn quotient_rejects_non_subspace() {
        let g = Subspace::span(Rationals, 2, [q(&[1, 0])]);
        let h = Subspace::span(Rationals, 2, [q(&[0, 1])]);
        assert_eq!(QuotientMap::new(&g, &h), Err(LinAlgError::NotContained));
    }

    #[test]
    fn intersect_two_planes_in_space() {
        let u = Subspace::span(Rationals, 3, [q(&[1, 0, 0]), q(&[0, 1, 0])]);
        let v = Subspace::span(Rationals, 3, [q(&[0, 1, 0]), q(&[0, 0, 1])]);
        assert_eq!(u.intersect(&v), Subspace::span(Rationals, 3, [q(&[0, 7, 0])]));
        assert_eq!(u.sum(&v), Subspace::full(Rationals, 3));
    }

    #[test]
    fn preimage_conventions() {
        let m = Matrix::from_i64(Rationals, 2, 3, &[1, 1, 0, 0, 0, 1]);
        assert_eq!(Subspace::preimage(&m, &Subspace::zero(Rationals, 2)), m.kernel());
        assert_eq!(Subspace::preimage(&m, &Subspace::full(Rationals, 2)), Subspace::full(Rationals, 3));
        let line = Subspace::span(Rationals, 2, [q(&[1, 0])]);
        let pre = Subspace::preimage(&m, &line);
        assert_eq!(pre, Subspace::span(Rationals, 3, [q(&[1, 0, 0]), q(&[0, 1, 0])]));
    }

    #[test]
    fn natural_map_examples() {
        let f = Rationals;
        let full = Subspace::full(f, 2);
        let x = Subspace::span(f, 2, [q(&[1, 0])]);
        let zero = Subspace::zero(f, 2);
        // x/0 → F^2/x is the zero map from a line to a line.
        let m = natural_map(&x, &zero, &full, &x).unwrap();
        assert_eq!(m, NaturalMap { injective: false, surjective: false });
        // F^2/x → F^2/x is the identity.
        assert!(natural_map(&full, &x, &full, &x).unwrap().is_iso());
        assert!(natural_map(&zero, &x, &full, &x).is_err());
    }

    #[test]
    fn avoidance_over_f2_needs_the_sum() {
        // Over F2, s = F2^2, w1 = span(e2), w2 = span(e1): the only vector
        // outside both is e1 + e2.
        let f = PrimeField::new(2).unwrap();
        let s = Subspace::full(f, 2);
        let w1 = Subspace::span(f, 2, [vec![0, 1]]);
        let w2 = Subspace::span(f, 2, [vec![1, 0]]);
        assert_eq!(avoid_two_subspaces(&s, &w1, &w2), Some(vec![1, 1]));
        assert_eq!(avoid_two_subspaces(&s, &s, &w2), None);
    }
}
