//! Building blocks and seeded random complexes.
//!
//! Random complexes are direct sums of small atoms (dots, squares and
//! zigzags) placed inside a window, conjugated by a random cellwise basis
//! change. Squares and dots satisfy the d'd''-lemma; zigzags of length at
//! least two violate it. Nothing downstream relies on that: campaign
//! properties check the lemma on each instance.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Bidegree, BigradedIso, ComplexError, DoubleComplex};
use crate::exactlin::{Field, Matrix};

/// First cell of a staircase: a source of outgoing maps, or a target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StairStart {
    Source,
    Target,
}

/// Zigzag shapes. Every cell is one-dimensional and every map is `[1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZigzagShape {
    /// `A^{p,q} → A^{p+1,q}` by `d'`.
    Horizontal,
    /// `A^{p,q} → A^{p,q+1}` by `d''`.
    Vertical,
    /// `A^{p,q+1} → A^{p+1,q+1} ← A^{p+1,q}` (`d'` then `d''`).
    L3,
    /// `len` cells walking down and to the right from the anchor:
    /// sources step right to their `d'` target, targets step down to the
    /// source hitting them by `d''`.
    Staircase { len: usize, start: StairStart },
}

impl ZigzagShape {
    /// Cells relative to the anchor, plus the maps as
    /// `(is_horizontal, source index, target index)`.
    fn layout(self) -> (Vec<Bidegree>, Vec<(bool, usize, usize)>) {
        match self {
            ZigzagShape::Horizontal => (vec![(0, 0), (1, 0)], vec![(true, 0, 1)]),
            ZigzagShape::Vertical => (vec![(0, 0), (0, 1)], vec![(false, 0, 1)]),
            ZigzagShape::L3 => (vec![(0, 1), (1, 1), (1, 0)], vec![(true, 0, 1), (false, 2, 1)]),
            ZigzagShape::Staircase { len, start } => {
                let mut cells = vec![(0, 0)];
                let mut maps = Vec::new();
                let mut is_source = start == StairStart::Source;
                for i in 1..len {
                    let (p, q) = cells[i - 1];
                    if is_source {
                        cells.push((p + 1, q));
                        maps.push((true, i - 1, i));
                    } else {
                        cells.push((p, q - 1));
                        maps.push((false, i, i - 1));
                    }
                    is_source = !is_source;
                }
                (cells, maps)
            }
        }
    }
}

/// One direct summand of a generated complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atom {
    Dot(Bidegree),
    /// Unit square with lower-left corner at the anchor.
    Square(Bidegree),
    Zigzag(ZigzagShape, Bidegree),
}

impl Atom {
    fn relative_cells(&self) -> Vec<Bidegree> {
        match self {
            Atom::Dot(_) => vec![(0, 0)],
            Atom::Square(_) => vec![(0, 0), (1, 0), (0, 1), (1, 1)],
            Atom::Zigzag(shape, _) => shape.layout().0,
        }
    }

    fn anchor(&self) -> Bidegree {
        match *self {
            Atom::Dot(a) | Atom::Square(a) | Atom::Zigzag(_, a) => a,
        }
    }

    fn with_anchor(&self, anchor: Bidegree) -> Atom {
        match *self {
            Atom::Dot(_) => Atom::Dot(anchor),
            Atom::Square(_) => Atom::Square(anchor),
            Atom::Zigzag(s, _) => Atom::Zigzag(s, anchor),
        }
    }

    /// Cells occupied by this atom.
    pub fn cells(&self) -> Vec<Bidegree> {
        let (p0, q0) = self.anchor();
        self.relative_cells().into_iter().map(|(p, q)| (p0 + p, q0 + q)).collect()
    }

    pub fn build<F: Field>(&self, field: F) -> DoubleComplex<F> {
        let (p, q) = self.anchor();
        match *self {
            Atom::Dot(_) => make_dot(field, p, q),
            Atom::Square(_) => make_square(field, p, q),
            Atom::Zigzag(shape, anchor) => make_zigzag(field, shape, anchor),
        }
    }
}

/// A one-dimensional `A^{p,q}` with zero maps.
pub fn make_dot<F: Field>(field: F, p: i32, q: i32) -> DoubleComplex<F> {
    DoubleComplex::new(field, [((p, q), 1)], [], []).expect("dot anchor must be nonnegative")
}

/// The unit square at `(p,q)`: `d'_{p,q} = d''_{p,q} = d''_{p+1,q} = [1]`
/// and `d'_{p,q+1} = [-1]`.
pub fn make_square<F: Field>(field: F, p: i32, q: i32) -> DoubleComplex<F> {
    let one = Matrix::from_i64(field.clone(), 1, 1, &[1]);
    let minus_one = Matrix::from_i64(field.clone(), 1, 1, &[-1]);
    DoubleComplex::new(
        field,
        [((p, q), 1), ((p + 1, q), 1), ((p, q + 1), 1), ((p + 1, q + 1), 1)],
        [((p, q), one.clone()), ((p, q + 1), minus_one)],
        [((p, q), one.clone()), ((p + 1, q), one)],
    )
    .expect("square anchor must be nonnegative")
}

/// # Panics
/// If some cell of the shape would have a negative index.
pub fn make_zigzag<F: Field>(field: F, shape: ZigzagShape, (p0, q0): Bidegree) -> DoubleComplex<F> {
    let (cells, maps) = shape.layout();
    let cells: Vec<Bidegree> = cells.into_iter().map(|(p, q)| (p0 + p, q0 + q)).collect();
    let one = Matrix::from_i64(field.clone(), 1, 1, &[1]);
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for (horizontal, src, _) in maps {
        if horizontal {
            d1.push((cells[src], one.clone()));
        } else {
            d2.push((cells[src], one.clone()));
        }
    }
    DoubleComplex::new(field, cells.into_iter().map(|c| (c, 1)), d1, d2)
        .expect("zigzag must fit in the first quadrant")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AtomMix {
    /// Squares and dots only; the first atom is a square with probability
    /// 0.85.
    #[serde(rename = "squares+dots")]
    SquaresAndDots,
    /// Zigzags only (horizontal, vertical, L-shaped and staircases).
    #[serde(rename = "zigzags")]
    Zigzags,
    /// Every atom kind.
    #[serde(rename = "mixed")]
    Mixed,
}

impl AtomMix {
    pub fn name(self) -> &'static str {
        match self {
            AtomMix::SquaresAndDots => "squares+dots",
            AtomMix::Zigzags => "zigzags",
            AtomMix::Mixed => "mixed",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "squares+dots" | "squares-dots" | "dd" => Some(AtomMix::SquaresAndDots),
            "zigzags" | "mixed-zigzags" => Some(AtomMix::Zigzags),
            "mixed" => Some(AtomMix::Mixed),
            _ => None,
        }
    }
}

/// Generator settings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Recipe {
    pub mix: AtomMix,
    /// Support lies in `[0, window.0] x [0, window.1]`.
    pub window: (i32, i32),
    pub max_dim: usize,
    pub max_atoms: usize,
    /// Whether to conjugate by a random basis change.
    pub basis_change: bool,
}

impl Recipe {
    pub fn new(mix: AtomMix) -> Self {
        Self { mix, window: (4, 4), max_dim: 3, max_atoms: 4, basis_change: true }
    }
}

/// A random complex together with the data it was assembled from, so that
/// failures can be shrunk by dropping atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedComplex<F: Field> {
    pub atoms: Vec<Atom>,
    /// Seed of the basis change, `None` for the identity.
    pub iso_seed: Option<u64>,
    pub complex: DoubleComplex<F>,
}

impl<F: Field> GeneratedComplex<F> {
    /// Direct sum of `atoms`, conjugated by the basis change drawn from
    /// `iso_seed` for the resulting support.
    pub fn assemble(field: F, atoms: Vec<Atom>, iso_seed: Option<u64>) -> Result<Self, ComplexError> {
        let mut complex = DoubleComplex::zero(field.clone());
        for atom in &atoms {
            complex = complex.direct_sum(&atom.build(field.clone()))?;
        }
        if let Some(seed) = iso_seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dims: BTreeMap<Bidegree, usize> = complex.cells().collect();
            complex = complex.change_basis(&random_iso(&field, &dims, &mut rng))?;
        }
        Ok(Self { atoms, iso_seed, complex })
    }
}

/// Random invertible matrix in each cell, entries drawn from `{-2,...,2}`.
pub fn random_iso<F: Field, R: Rng>(field: &F, dims: &BTreeMap<Bidegree, usize>, rng: &mut R) -> BigradedIso<F> {
    let mut iso = BigradedIso::identity();
    for (&(p, q), &n) in dims {
        let g = loop {
            let entries: Vec<i64> = (0..n * n).map(|_| rng.random_range(-2..=2)).collect();
            let g = Matrix::from_i64(field.clone(), n, n, &entries);
            if g.inverse().is_some() {
                break g;
            }
        };
        iso.insert(p, q, g);
    }
    iso
}

fn pick_atom(mix: AtomMix, first: bool, rng: &mut ChaCha8Rng) -> Atom {
    let origin = (0, 0);
    let staircase = |rng: &mut ChaCha8Rng| {
        let len = rng.random_range(3..=5);
        let start = if rng.random_bool(0.5) { StairStart::Source } else { StairStart::Target };
        Atom::Zigzag(ZigzagShape::Staircase { len, start }, origin)
    };
    match mix {
        AtomMix::SquaresAndDots => {
            let p_square = if first { 0.85 } else { 0.5 };
            if rng.random_bool(p_square) {
                Atom::Square(origin)
            } else {
                Atom::Dot(origin)
            }
        }
        AtomMix::Zigzags => match rng.random_range(0..4) {
            0 => Atom::Zigzag(ZigzagShape::Horizontal, origin),
            1 => Atom::Zigzag(ZigzagShape::Vertical, origin),
            2 => Atom::Zigzag(ZigzagShape::L3, origin),
            _ => staircase(rng),
        },
        AtomMix::Mixed => match rng.random_range(0..6) {
            0 => Atom::Dot(origin),
            1 => Atom::Square(origin),
            2 => Atom::Zigzag(ZigzagShape::Horizontal, origin),
            3 => Atom::Zigzag(ZigzagShape::Vertical, origin),
            4 => Atom::Zigzag(ZigzagShape::L3, origin),
            _ => staircase(rng),
        },
    }
}

/// Places `atom` at a random anchor where it fits the window and the
/// per-cell dimension cap.
fn place(atom: Atom, recipe: &Recipe, used: &BTreeMap<Bidegree, usize>, rng: &mut ChaCha8Rng) -> Option<Atom> {
    let rel = atom.relative_cells();
    let (min_p, max_p) = (rel.iter().map(|c| c.0).min()?, rel.iter().map(|c| c.0).max()?);
    let (min_q, max_q) = (rel.iter().map(|c| c.1).min()?, rel.iter().map(|c| c.1).max()?);
    let (lo_p, hi_p) = (-min_p, recipe.window.0 - max_p);
    let (lo_q, hi_q) = (-min_q, recipe.window.1 - max_q);
    if lo_p > hi_p || lo_q > hi_q {
        return None;
    }
    for _ in 0..8 {
        let candidate = atom.with_anchor((rng.random_range(lo_p..=hi_p), rng.random_range(lo_q..=hi_q)));
        let fits = candidate
            .cells()
            .iter()
            .all(|c| used.get(c).copied().unwrap_or(0) < recipe.max_dim);
        if fits {
            return Some(candidate);
        }
    }
    None
}

/// Deterministic in `(field, seed, recipe)`.
pub fn random_complex<F: Field>(field: F, seed: u64, recipe: &Recipe) -> GeneratedComplex<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.random_range(1..=recipe.max_atoms.max(1));
    let mut used: BTreeMap<Bidegree, usize> = BTreeMap::new();
    let mut atoms = Vec::new();
    for i in 0..count {
        let atom = pick_atom(recipe.mix, i == 0, &mut rng);
        if let Some(placed) = place(atom, recipe, &used, &mut rng) {
            for c in placed.cells() {
                *used.entry(c).or_insert(0) += 1;
            }
            atoms.push(placed);
        }
    }
    let iso_seed = recipe.basis_change.then(|| rng.random());
    GeneratedComplex::assemble(field, atoms, iso_seed).expect("generated atoms fit the first quadrant")
}
