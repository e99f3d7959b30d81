//! Regrading a bigraded module with maps of bidegree `(1,1)` and `(1,-1)`
//! into a double complex via `A^{p,q} = U^{p+q, p-q}`.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Bidegree, ComplexError, DoubleComplex, ValidationReport};
use crate::exactlin::{Field, Matrix};

/// Spaces `U^{s,t}` with `δ₊: U^{s,t} → U^{s+1,t+1}` and
/// `δ₋: U^{s,t} → U^{s+1,t-1}`. Further components of a full differential
/// (bidegrees `(-1,1)` and `(-1,-1)`) can be recorded in `extra`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedModule<F: Field> {
    pub field: F,
    pub dims: BTreeMap<Bidegree, usize>,
    pub plus: BTreeMap<Bidegree, Matrix<F>>,
    pub minus: BTreeMap<Bidegree, Matrix<F>>,
    /// Keyed by source `(s,t)` and the bidegree of the component.
    pub extra: BTreeMap<(Bidegree, Bidegree), Matrix<F>>,
}

impl<F: Field> BigradedModule<F> {
    pub fn new(field: F) -> Self {
        Self {
            field,
            dims: BTreeMap::new(),
            plus: BTreeMap::new(),
            minus: BTreeMap::new(),
            extra: BTreeMap::new(),
        }
    }
}

/// What to do with nonzero components beyond `δ₊` and `δ₋`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RegradeMode {
    #[default]
    Strict,
    IgnoreExtra,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegradeError {
    #[error("U^({s},{t}) has odd s + t and no integral (p,q)")]
    Parity { s: i32, t: i32 },
    #[error("U^({s},{t}) regrades to negative (p,q)")]
    Negative { s: i32, t: i32 },
    #[error("differential has a nonzero component of bidegree {bidegree:?} at U^({s},{t})")]
    ExtraComponent { s: i32, t: i32, bidegree: Bidegree },
    #[error("regraded maps do not form a double complex: {0}")]
    NotBidifferential(ValidationReport),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn to_pq(s: i32, t: i32) -> Result<Bidegree, RegradeError> {
    if (s + t).rem_euclid(2) != 0 {
        return Err(RegradeError::Parity { s, t });
    }
    let (p, q) = ((s + t) / 2, (s - t) / 2);
    if p < 0 || q < 0 {
        return Err(RegradeError::Negative { s, t });
    }
    Ok((p, q))
}

/// `A^{p,q} = U^{p+q,p-q}`, `d' = δ₊`, `d'' = δ₋`.
pub fn regrade_bidifferential<F: Field>(
    u: &BigradedModule<F>,
    mode: RegradeMode,
) -> Result<DoubleComplex<F>, RegradeError> {
    let mut dims = Vec::new();
    for (&(s, t), &dim) in &u.dims {
        if dim > 0 {
            dims.push((to_pq(s, t)?, dim));
        }
    }
    if mode == RegradeMode::Strict {
        if let Some((&((s, t), bidegree), _)) = u.extra.iter().find(|(_, m)| !m.is_zero()) {
            return Err(RegradeError::ExtraComponent { s, t, bidegree });
        }
    }
    let maps = |src: &BTreeMap<Bidegree, Matrix<F>>| -> Result<Vec<_>, RegradeError> {
        src.iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(&(s, t), m)| Ok((to_pq(s, t)?, m.clone())))
            .collect()
    };
    let c = DoubleComplex::new(u.field.clone(), dims, maps(&u.plus)?, maps(&u.minus)?)?;
    let report = c.validate();
    if !report.is_valid() {
        return Err(RegradeError::NotBidifferential(report));
    }
    Ok(c)
}

/// Inverse index map: `U^{s,t} = A^{(s+t)/2, (s-t)/2}`.
pub fn degrade<F: Field>(c: &DoubleComplex<F>) -> BigradedModule<F> {
    let st = |(p, q): Bidegree| (p + q, p - q);
    let mut u = BigradedModule::new(c.field().clone());
    u.dims = c.cells().map(|(pq, d)| (st(pq), d)).collect();
    u.plus = c.stored_maps(super::Differential::Horizontal).iter().map(|(&k, m)| (st(k), m.clone())).collect();
    u.minus = c.stored_maps(super::Differential::Vertical).iter().map(|(&k, m)| (st(k), m.clone())).collect();
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::{make_dot, make_square, make_zigzag, ZigzagShape};
    use crate::exactlin::Rationals;

    fn one() -> Matrix<Rationals> {
        Matrix::from_i64(Rationals, 1, 1, &[1])
    }

    #[test]
    fn single_cell_is_a_dot() {
        let mut u = BigradedModule::new(Rationals);
        u.dims.insert((0, 0), 1);
        assert_eq!(regrade_bidifferential(&u, RegradeMode::Strict).unwrap(), make_dot(Rationals, 0, 0));
    }

    #[test]
    fn plus_iso_becomes_horizontal_zigzag() {
        // (s,t) = (1,1) gives p = (1+1)/2 = 1, q = (1-1)/2 = 0.
        let mut u = BigradedModule::new(Rationals);
        u.dims.insert((0, 0), 1);
        u.dims.insert((1, 1), 1);
        u.plus.insert((0, 0), one());
        let c = regrade_bidifferential(&u, RegradeMode::Strict).unwrap();
        assert_eq!(c, make_zigzag(Rationals, ZigzagShape::Horizontal, (0, 0)));
    }

    #[test]
    fn minus_iso_becomes_vertical_zigzag() {
        // (s,t) = (1,-1) gives p = 0, q = 1.
        let mut u = BigradedModule::new(Rationals);
        u.dims.insert((0, 0), 1);
        u.dims.insert((1, -1), 1);
        u.minus.insert((0, 0), one());
        let c = regrade_bidifferential(&u, RegradeMode::Strict).unwrap();
        assert_eq!(c, make_zigzag(Rationals, ZigzagShape::Vertical, (0, 0)));
    }

    #[test]
    fn parity_and_sign_errors() {
        let mut u = BigradedModule::new(Rationals);
        u.dims.insert((1, 0), 1);
        assert_eq!(regrade_bidifferential(&u, RegradeMode::Strict), Err(RegradeError::Parity { s: 1, t: 0 }));
        let mut u = BigradedModule::new(Rationals);
        u.dims.insert((-1, 1), 1);
        assert_eq!(regrade_bidifferential(&u, RegradeMode::Strict), Err(RegradeError::Negative { s: -1, t: 1 }));
    }

    #[test]
    fn extra_components_rejected_only_in_strict_mode() {
        let mut u = BigradedModule::new(Rationals);
        u.dims.insert((0, 0), 1);
        u.dims.insert((1, 1), 1);
        u.extra.insert(((1, 1), (-1, -1)), one());
        assert!(matches!(
            regrade_bidifferential(&u, RegradeMode::Strict),
            Err(RegradeError::ExtraComponent { s: 1, t: 1, .. })
        ));
        let c = regrade_bidifferential(&u, RegradeMode::IgnoreExtra).unwrap();
        assert_eq!(c.dim(1, 0), 1);
    }

    #[test]
    fn non_anticommuting_maps_are_rejected() {
        let mut u = degrade(&make_square(Rationals, 0, 0));
        // Flip d'_{0,1}, which sits at U^{1,-1}.
        u.plus.insert((1, -1), one());
        assert!(matches!(regrade_bidifferential(&u, RegradeMode::Strict), Err(RegradeError::NotBidifferential(_))));
    }

    #[test]
    fn degrade_then_regrade_round_trips() {
        let sq = make_square(Rationals, 1, 2);
        let u = degrade(&sq);
        assert_eq!(regrade_bidifferential(&u, RegradeMode::Strict).unwrap(), sq);
        assert_eq!(degrade(&regrade_bidifferential(&u, RegradeMode::Strict).unwrap()), u);
    }
}
