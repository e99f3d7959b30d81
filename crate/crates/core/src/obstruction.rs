//! The d'd''-lemma, the comparison maps `α`, `β`, and the obstruction sets
//! `ℰ^{p,q}_r` that locate the degeneration page.
//!
//! # Comparison maps
//!
//! Both maps land in `Z^{p,q}_r / (Z^{p+1,q-1}_{r-1} + B^{p,q}_r)`:
//! `α_{p,q,r}` starts at `E^{p,q}_{r+1}` and `β_{p,q,r}` at `E^{p,q}_r`. A
//! natural map `G/H → G'/H'` with `H ⊆ G ∩ H'` is injective iff
//! `G ∩ H' = H` and surjective iff `G' = G + H'`, so both are decided by
//! subspace identities.
//!
//! # Leading terms
//!
//! For `ξ = ξ_0 + … + ξ_{r-1}` with `ξ_i ∈ A^{p+i,q-i}`, the condition
//! "`ξ_0` is not the leading term of any `d`-closed `η`" holds iff
//! `ξ_0 ∉ L^{p,q}`, where `L^{p,q}` is the projection of `Z^{p,q}_∞` onto
//! `A^{p,q}`. A nonzero `ξ_0` is the leading term of `η ∈ F^p` exactly when
//! it is the `A^{p,q}` component of `η`, and `ξ_0 = 0` is the leading term
//! of `η = 0`, which lies in every subspace.
//!
//! # Obstruction sets
//!
//! For `r ≥ 1`, `ℰ^{p,q}_r` is the set of `ξ` as above with `dξ = d'ξ_{r-1}`,
//! `d'ξ_{r-1} ∉ Im d''` and `ξ_0 ∉ L^{p,q}`. The first condition is the
//! linear system `S`: `d''ξ_0 = 0`, `d'ξ_i + d''ξ_{i+1} = 0`. The other two
//! each cut out a subspace `W_1`, `W_2` of `S` to avoid, and `S` is never
//! the union of two proper subspaces (over any field), so `ℰ ≠ ∅` iff
//! `S ⊄ W_1` and `S ⊄ W_2`.
//!
//! For `r = 0` the set `B^{p,q+1}_0 ∖ (Z^{p+1,q}_{-1} + B^{p,q+1}_{-1})` is
//! filed under the key `(p, q, 0)`: the cell index is shifted down by one
//! in `q`, as in the usual notation `ℰ^{p,q-1}_0` for the set built from
//! `B^{p,q}_0`. This keeps the degeneration criterion uniform: the
//! sequence degenerates at `E_r` and not before iff `ℰ_k = ∅` for all
//! `k ≥ r` and `ℰ_{r-1} ≠ ∅` somewhere.
//!
//! The comparison step `Z^{p+1,q-1}_{r-1}` is used throughout, including the
//! place where one argument about `β` writes `Z^{p+1,q}_{r-1}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bicomplex::io::{decode_entry, encode_entry, Entry, ParseError};
use crate::bicomplex::{Bidegree, DoubleComplex};
use crate::exactlin::{avoid_two_subspaces, natural_map, Field, FieldSpec, Matrix, NaturalMap, Subspace};
use crate::fault::Fault;
use crate::filtration::{FilteredTotal, PageIndex};
use crate::pages::degeneration_page;
use crate::InternalError;

/// The d'd''-lemma spaces at one bidegree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdCell {
    pub p: i32,
    pub q: i32,
    /// `dim(Im d' ∩ ker d'')`.
    pub im_d1_ker_d2: usize,
    /// `dim(ker d' ∩ Im d'')`.
    pub ker_d1_im_d2: usize,
    /// `dim(Im d'd'')`.
    pub im_d1d2: usize,
    /// `Im d'd''` lies in both other spaces.
    pub subset_facts: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdLemmaReport {
    pub cells: Vec<DdCell>,
}

impl DdLemmaReport {
    pub fn passes(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn failing_cells(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.cells.iter().filter(|c| !c.pass).map(|c| (c.p, c.q))
    }
}

/// The three d'd''-lemma spaces in `A^{p,q}`, computed from the blocks
/// `d'_{p-1,q}`, `d''_{p,q}`, `d'_{p,q}`, `d''_{p,q-1}` and `d''_{p-1,q-1}`.
pub fn dd_lemma<F: Field>(c: &DoubleComplex<F>, p: i32, q: i32) -> DdCell {
    let im_d1 = c.d1(p - 1, q).image();
    let ker_d2 = c.d2(p, q).kernel();
    let ker_d1 = c.d1(p, q).kernel();
    let im_d2 = c.d2(p, q - 1).image();
    let im_d1d2 = c.d1(p - 1, q).mul(&c.d2(p - 1, q - 1)).image();
    let first = im_d1.intersect(&ker_d2);
    let second = ker_d1.intersect(&im_d2);
    DdCell {
        p,
        q,
        im_d1_ker_d2: first.dim(),
        ker_d1_im_d2: second.dim(),
        im_d1d2: im_d1d2.dim(),
        subset_facts: first.contains(&im_d1d2) && second.contains(&im_d1d2),
        pass: first == im_d1d2 && second == im_d1d2,
    }
}

/// The d'd''-lemma at every nonzero cell.
pub fn dd_lemma_report<F: Field>(c: &DoubleComplex<F>) -> DdLemmaReport {
    DdLemmaReport { cells: c.cells().map(|((p, q), _)| dd_lemma(c, p, q)).collect() }
}

fn plus<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Subspace<F> {
    a.sum(b)
}

/// `α_{p,q,r}: E^{p,q}_{r+1} → Z^{p,q}_r / (Z^{p+1,q-1}_{r-1} + B^{p,q}_r)`.
pub fn alpha_map<F: Field>(ft: &FilteredTotal<F>, p: i32, q: i32, r: i32) -> Result<NaturalMap, InternalError> {
    let g = ft.z_space(p, q, r + 1);
    let h = plus(&ft.z_space(p + 1, q - 1, r), &ft.b_space(p, q, r));
    let g2 = ft.z_space(p, q, r);
    let h2 = plus(&ft.z_space(p + 1, q - 1, r - 1), &ft.b_space(p, q, r));
    natural_map(&g, &h, &g2, &h2).map_err(|_| InternalError::IllDefinedNaturalMap { map: "alpha", p, q, r })
}

/// `β_{p,q,r}: E^{p,q}_r → Z^{p,q}_r / (Z^{p+1,q-1}_{r-1} + B^{p,q}_r)`.
pub fn beta_map<F: Field>(ft: &FilteredTotal<F>, p: i32, q: i32, r: i32) -> Result<NaturalMap, InternalError> {
    let g = ft.z_space(p, q, r);
    let h = plus(&ft.z_space(p + 1, q - 1, r - 1), &ft.b_space(p, q, r - 1));
    let h2 = plus(&ft.z_space(p + 1, q - 1, r - 1), &ft.b_space(p, q, r));
    natural_map(&g, &h, &g, &h2).map_err(|_| InternalError::IllDefinedNaturalMap { map: "beta", p, q, r })
}

pub fn alpha_iso<F: Field>(ft: &FilteredTotal<F>, p: i32, q: i32, r: i32) -> Result<bool, InternalError> {
    Ok(alpha_map(ft, p, q, r)?.is_iso())
}

pub fn beta_iso<F: Field>(ft: &FilteredTotal<F>, p: i32, q: i32, r: i32) -> Result<bool, InternalError> {
    Ok(beta_map(ft, p, q, r)?.is_iso())
}

/// `L^{p,q}`: the `A^{p,q}` components of `d`-closed elements of `F^p`.
pub fn leading_space<F: Field>(ft: &FilteredTotal<F>, p: i32, q: i32) -> Subspace<F> {
    let dim = ft.complex().dim(p, q);
    if ft.fault() == Some(Fault::LeadingTermIgnored) {
        return Subspace::zero(ft.field().clone(), dim);
    }
    ft.z_space(p, q, PageIndex::Infinity).image_under(&ft.projection(p, q))
}

/// An element of an obstruction set, in block coordinates.
///
/// For `r ≥ 1`, `components[i] ∈ A^{p+i,q-i}` for `i < r`. For `r = 0`,
/// `components[i] ∈ A^{p+i,q+1-i}` for `i ≤ q+1`: an element of
/// `B^{p,q+1}_0` (the key is shifted as described in the module docs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<F: Field> {
    pub p: i32,
    pub q: i32,
    pub r: usize,
    pub components: Vec<Vec<F::Elem>>,
}

impl<F: Field> Witness<F> {
    /// Bidegree of `components[i]`.
    pub fn block(&self, i: usize) -> Bidegree {
        let i = i as i32;
        if self.r == 0 {
            (self.p + i, self.q + 1 - i)
        } else {
            (self.p + i, self.q - i)
        }
    }

    pub fn to_document(&self, field: &F) -> String {
        let doc = WitnessDoc {
            field: field.spec(),
            p: self.p,
            q: self.q,
            r: self.r,
            components: self
                .components
                .iter()
                .map(|v| v.iter().map(|x| encode_entry(field, x)).collect())
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("witness documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_document(field: &F, text: &str) -> Result<Self, ParseError> {
        let doc = parse_witness_document(text)?;
        if doc.field != field.spec() {
            return Err(ParseError {
                location: "field".into(),
                message: format!("witness is over {}, expected {}", doc.field, field.spec()),
            });
        }
        let components = doc
            .components
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.iter()
                    .enumerate()
                    .map(|(j, e)| {
                        decode_entry(field, e)
                            .map_err(|message| ParseError { location: format!("components[{i}][{j}]"), message })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { p: doc.p, q: doc.q, r: doc.r, components })
    }

    /// Human-readable form, one block per line.
    pub fn render(&self, field: &F) -> String {
        let mut out = format!("witness for E^{{{},{}}}_{}\n", self.p, self.q, self.r);
        for (i, v) in self.components.iter().enumerate() {
            let (a, b) = self.block(i);
            let entries: Vec<String> = v.iter().map(|x| field.format(x)).collect();
            let name = if self.r == 0 { "b" } else { "xi" };
            out.push_str(&format!("  {name}{i} in A^{{{a},{b}}}: ({})\n", entries.join(", ")));
        }
        out
    }
}

/// On-disk witness: field, key and block components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub field: FieldSpec,
    pub p: i32,
    pub q: i32,
    pub r: usize,
    pub components: Vec<Vec<Entry>>,
}

pub fn parse_witness_document(text: &str) -> Result<WitnessDoc, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

/// Decides `ℰ^{p,q}_r ≠ ∅` and returns an element when nonempty. Every
/// element is confirmed by [`check_witness`] before it is returned.
pub fn obstruction_nonempty<F: Field>(
    ft: &FilteredTotal<F>,
    p: i32,
    q: i32,
    r: usize,
) -> Result<Option<Witness<F>>, InternalError> {
    let found = if r == 0 { boundary_obstruction(ft, p, q) } else { chain_obstruction(ft, p, q, r) };
    match found {
        Some(w) if !check_witness(ft.complex(), &w) => Err(InternalError::UnsoundWitness { p, q, r }),
        other => Ok(other),
    }
}

fn boundary_obstruction<F: Field>(ft: &FilteredTotal<F>, p: i32, q: i32) -> Option<Witness<F>> {
    let b = ft.b_space(p, q + 1, 0);
    let avoid = ft.z_space(p + 1, q, -1).sum(&ft.b_space(p, q + 1, -1));
    let element = b.basis().iter().find(|v| !avoid.member(v))?;
    let components = (0..=q + 1).map(|i| ft.project(p + i, q + 1 - i, element)).collect();
    Some(Witness { p, q, r: 0, components })
}

fn chain_obstruction<F: Field>(ft: &FilteredTotal<F>, p: i32, q: i32, r: usize) -> Option<Witness<F>> {
    let c = ft.complex();
    let field = c.field().clone();
    let ri = r as i32;
    let dims: Vec<usize> = (0..ri).map(|i| c.dim(p + i, q - i)).collect();
    let offsets: Vec<usize> = std::iter::once(0)
        .chain(dims.iter().scan(0, |acc, d| {
            *acc += d;
            Some(*acc)
        }))
        .collect();
    let n = offsets[r];
    if dims[0] == 0 {
        return None;
    }
    // Equations: d''ξ_0 = 0 in A^{p,q+1}, then d'ξ_i + d''ξ_{i+1} = 0 in
    // A^{p+i+1,q-i}.
    let mut rows_dims = vec![c.dim(p, q + 1)];
    rows_dims.extend((0..ri - 1).map(|i| c.dim(p + i + 1, q - i)));
    let mut m = Matrix::zeros(field.clone(), rows_dims.iter().sum(), n);
    m.set_block(0, 0, &c.d2(p, q));
    let mut row = rows_dims[0];
    for i in 0..r - 1 {
        let (a, b) = (p + i as i32, q - i as i32);
        m.set_block(row, offsets[i], &c.d1(a, b));
        m.set_block(row, offsets[i + 1], &c.d2(a + 1, b - 1));
        row += rows_dims[i + 1];
    }
    let s = m.kernel();

    let mut first = Matrix::zeros(field.clone(), dims[0], n);
    first.set_block(0, 0, &Matrix::identity(field.clone(), dims[0]));
    let w1 = Subspace::preimage(&first, &leading_space(ft, p, q));

    let (last_p, last_q) = (p + ri - 1, q - ri + 1);
    let mut last = Matrix::zeros(field.clone(), c.dim(last_p + 1, last_q), n);
    last.set_block(0, offsets[r - 1], &c.d1(last_p, last_q));
    let w2 = if ft.fault() == Some(Fault::ObstructionSkipsImageCondition) {
        Subspace::zero(field, n)
    } else {
        Subspace::preimage(&last, &c.d2(last_p + 1, last_q - 1).image())
    };

    let x = avoid_two_subspaces(&s, &w1, &w2)?;
    let components = (0..r).map(|i| x[offsets[i]..offsets[i + 1]].to_vec()).collect();
    Some(Witness { p, q, r, components })
}

/// Block layout of `A^k` by ascending `p`, rebuilt from the complex alone.
struct Layout {
    k: i32,
    offsets: Vec<usize>,
}

impl Layout {
    fn new<F: Field>(c: &DoubleComplex<F>, k: i32) -> Self {
        let mut offsets = vec![0];
        for p in 0..=k.max(-1) {
            offsets.push(offsets.last().unwrap() + c.dim(p, k - p));
        }
        Self { k, offsets }
    }

    fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn start(&self, p: i32) -> usize {
        if p <= 0 {
            0
        } else if p > self.k {
            self.dim()
        } else {
            self.offsets[p as usize]
        }
    }
}

/// `d: F^{p0}A^k → A^{k+1}` assembled from the blocks of `d'` and `d''`.
fn total_from<F: Field>(c: &DoubleComplex<F>, k: i32, p0: i32) -> (Matrix<F>, Layout, Layout) {
    let src = Layout::new(c, k);
    let dst = Layout::new(c, k + 1);
    let start = src.start(p0);
    let mut m = Matrix::zeros(c.field().clone(), dst.dim(), src.dim() - start);
    for s in p0.max(0)..=k {
        let col = src.offsets[s as usize] - start;
        if c.dim(s, k - s) == 0 {
            continue;
        }
        m.set_block(dst.offsets[s as usize], col, &c.d2(s, k - s));
        m.set_block(dst.offsets[s as usize + 1], col, &c.d1(s, k - s));
    }
    (m, src, dst)
}

fn in_column_space<F: Field>(m: &Matrix<F>, v: &[F::Elem]) -> bool {
    m.image().member(v)
}

/// Re-derives membership of `w` in its obstruction set from the raw
/// blocks of `d'` and `d''`, without the filtration machinery.
///
/// For `r = 0` it checks `w ∈ d(F^pA^{p+q})` and that the `A^{p,q+1}`
/// component is nonzero; `Z^{p+1,q}_{-1} + B^{p,q+1}_{-1}` is all of
/// `F^{p+1}A^{p+q+1}`, and `d` preserves the filtration, so these are the
/// defining conditions.
pub fn check_witness<F: Field>(c: &DoubleComplex<F>, w: &Witness<F>) -> bool {
    let f = c.field();
    let block_dim = |(a, b): Bidegree| c.dim(a, b);
    let expected = if w.r == 0 { (w.q + 2).max(0) as usize } else { w.r };
    if expected == 0 || w.components.len() != expected || (0..expected).any(|i| w.components[i].len() != block_dim(w.block(i))) {
        return false;
    }
    let is_zero = |v: &[F::Elem]| v.iter().all(|x| f.is_zero(x));
    let (p, q) = (w.p, w.q);
    if w.r == 0 {
        if is_zero(&w.components[0]) {
            return false;
        }
        let k = p + q;
        let (d, _, dst) = total_from(c, k, p);
        let mut element = vec![f.zero(); dst.dim()];
        for (i, v) in w.components.iter().enumerate() {
            let start = dst.start(p + i as i32);
            element[start..start + v.len()].clone_from_slice(v);
        }
        return in_column_space(&d, &element);
    }
    let xi = &w.components;
    if !is_zero(&c.d2(p, q).apply(&xi[0])) {
        return false;
    }
    for i in 0..w.r - 1 {
        let (a, b) = (p + i as i32, q - i as i32);
        let lhs = c.d1(a, b).apply(&xi[i]);
        let rhs = c.d2(a + 1, b - 1).apply(&xi[i + 1]);
        if !lhs.iter().zip(&rhs).all(|(x, y)| f.is_zero(&f.add(x, y))) {
            return false;
        }
    }
    let (a, b) = w.block(w.r - 1);
    if in_column_space(&c.d2(a + 1, b - 1), &c.d1(a, b).apply(&xi[w.r - 1])) {
        return false;
    }
    // ξ_0 is the leading term of a closed η iff ξ_0 ≠ 0 and
    // -dξ_0 ∈ d(F^{p+1}A^{p+q}).
    if is_zero(&xi[0]) {
        return false;
    }
    let k = p + q;
    let (d_rest, _, dst) = total_from(c, k, p + 1);
    let mut target = vec![f.zero(); dst.dim()];
    let lower = c.d2(p, q).apply(&xi[0]);
    let right = c.d1(p, q).apply(&xi[0]);
    let (s0, s1) = (dst.start(p), dst.start(p + 1));
    for (t, x) in target[s0..s0 + lower.len()].iter_mut().zip(&lower) {
        *t = f.neg(x);
    }
    for (t, x) in target[s1..s1 + right.len()].iter_mut().zip(&right) {
        *t = f.neg(x);
    }
    !in_column_space(&d_rest, &target)
}

/// Keys `(p, q, r)` of the obstruction sets that can be nonempty, for
/// `r ≤ R` with `R` the cutoff.
pub fn obstruction_keys<F: Field>(ft: &FilteredTotal<F>) -> Vec<(i32, i32, usize)> {
    let top = ft.top_degree();
    let mut keys = Vec::new();
    for r in 0..=ft.cutoff() {
        let bound = if r == 0 { top - 1 } else { top };
        for k in 0..=bound {
            for p in 0..=k {
                keys.push((p, k - p, r));
            }
        }
    }
    keys
}

/// Nonemptiness of every obstruction set up to the cutoff, with witnesses.
#[derive(Debug, Clone)]
pub struct ObstructionTable<F: Field> {
    pub cutoff: usize,
    pub entries: BTreeMap<(i32, i32, usize), Option<Witness<F>>>,
}

impl<F: Field> ObstructionTable<F> {
    pub fn compute(ft: &FilteredTotal<F>) -> Result<Self, InternalError> {
        let entries = obstruction_keys(ft)
            .into_iter()
            .map(|(p, q, r)| Ok(((p, q, r), obstruction_nonempty(ft, p, q, r)?)))
            .collect::<Result<_, InternalError>>()?;
        Ok(Self { cutoff: ft.cutoff(), entries })
    }

    pub fn is_nonempty(&self, p: i32, q: i32, r: usize) -> bool {
        matches!(self.entries.get(&(p, q, r)), Some(Some(_)))
    }

    pub fn nonempty_keys(&self) -> impl Iterator<Item = (i32, i32, usize)> + '_ {
        self.entries.iter().filter(|(_, w)| w.is_some()).map(|(&k, _)| k)
    }

    /// `1 + max{r : ℰ_r ≠ ∅ somewhere}`, or `0` when every set is empty.
    pub fn degeneration_page(&self) -> usize {
        self.nonempty_keys().map(|(_, _, r)| r + 1).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqDegVerdict {
    pub by_pages: usize,
    pub by_obstructions: usize,
    pub agree: bool,
}

/// The degeneration page computed from the pages and from the obstruction
/// sets.
pub fn eqdeg_verdict<F: Field>(ft: &FilteredTotal<F>) -> Result<EqDegVerdict, InternalError> {
    let by_pages = degeneration_page(ft)?;
    let by_obstructions = ObstructionTable::compute(ft)?.degeneration_page();
    Ok(EqDegVerdict { by_pages, by_obstructions, agree: by_pages == by_obstructions })
}

/// "A complex satisfying the d'd''-lemma whose spectral sequence does not
/// degenerate at `E_0` degenerates at `E_1`", evaluated on one complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainTheoremCheck {
    pub dd_lemma: bool,
    pub degeneration_page: usize,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
    pub consistent: bool,
}

pub fn main_theorem_check<F: Field>(ft: &FilteredTotal<F>) -> Result<MainTheoremCheck, InternalError> {
    let dd_lemma = dd_lemma_report(ft.complex()).passes();
    let degeneration_page = degeneration_page(ft)?;
    let hypotheses_hold = dd_lemma && degeneration_page > 0;
    let conclusion_holds = degeneration_page <= 1;
    Ok(MainTheoremCheck {
        dd_lemma,
        degeneration_page,
        hypotheses_hold,
        conclusion_holds,
        consistent: !hypotheses_hold || conclusion_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::{make_dot, make_square, make_zigzag, ZigzagShape};
    use crate::exactlin::{PrimeField, Rationals};
    use crate::filtration::totalize;

    fn hz() -> FilteredTotal<Rationals> {
        totalize(&make_zigzag(Rationals, ZigzagShape::Horizontal, (0, 0))).unwrap()
    }

    #[test]
    fn dd_lemma_cells() {
        let sq = make_square(Rationals, 0, 0);
        assert!(dd_lemma_report(&sq).passes());
        let top = dd_lemma(&sq, 1, 1);
        assert_eq!((top.im_d1_ker_d2, top.ker_d1_im_d2, top.im_d1d2), (1, 1, 1));
        let hz = make_zigzag(Rationals, ZigzagShape::Horizontal, (0, 0));
        let cell = dd_lemma(&hz, 1, 0);
        assert_eq!((cell.im_d1_ker_d2, cell.im_d1d2, cell.pass), (1, 0, false));
        assert!(cell.subset_facts);
        assert!(dd_lemma_report(&make_dot(Rationals, 0, 0)).passes());
    }

    #[test]
    fn comparison_maps() {
        let sq = totalize(&make_square(Rationals, 0, 0)).unwrap();
        assert!(!beta_iso(&sq, 0, 1, 0).unwrap());
        assert!(!alpha_iso(&hz(), 0, 0, 1).unwrap());
        let dot = totalize(&make_dot(Rationals, 0, 0)).unwrap();
        for r in 0..3 {
            assert!(beta_iso(&dot, 0, 0, r).unwrap());
            assert!(alpha_iso(&dot, 0, 0, r).unwrap());
        }
    }

    #[test]
    fn horizontal_zigzag_obstruction() {
        let ft = hz();
        let w = obstruction_nonempty(&ft, 0, 0, 1).unwrap().expect("nonempty");
        assert_eq!(w.components, vec![vec![Rationals.one()]]);
        assert!(check_witness(ft.complex(), &w));
        let table = ObstructionTable::compute(&ft).unwrap();
        assert_eq!(table.nonempty_keys().collect::<Vec<_>>(), vec![(0, 0, 1)]);
        assert_eq!(eqdeg_verdict(&ft).unwrap(), EqDegVerdict { by_pages: 2, by_obstructions: 2, agree: true });
    }

    #[test]
    fn square_obstructions_sit_on_page_zero() {
        let ft = totalize(&make_square(Rationals, 0, 0)).unwrap();
        let table = ObstructionTable::compute(&ft).unwrap();
        assert!(table.nonempty_keys().all(|(_, _, r)| r == 0));
        assert!(table.is_nonempty(0, 0, 0));
        assert_eq!(eqdeg_verdict(&ft).unwrap().by_obstructions, 1);
        let check = main_theorem_check(&ft).unwrap();
        assert!(check.hypotheses_hold && check.conclusion_holds && check.consistent);
    }

    #[test]
    fn dot_has_no_obstructions() {
        let ft = totalize(&make_dot(Rationals, 0, 0)).unwrap();
        assert_eq!(ObstructionTable::compute(&ft).unwrap().nonempty_keys().count(), 0);
        assert!(!main_theorem_check(&ft).unwrap().hypotheses_hold);
    }

    #[test]
    fn tampered_witnesses_are_rejected() {
        let ft = hz();
        let w = obstruction_nonempty(&ft, 0, 0, 1).unwrap().unwrap();
        let mut zero = w.clone();
        zero.components[0] = vec![Rationals.zero()];
        assert!(!check_witness(ft.complex(), &zero));
        let mut short = w;
        short.components.clear();
        assert!(!check_witness(ft.complex(), &short));
    }

    #[test]
    fn witness_document_round_trip() {
        let f3 = PrimeField::new(3).unwrap();
        let ft = totalize(&make_zigzag(f3.clone(), ZigzagShape::Horizontal, (0, 0))).unwrap();
        let w = obstruction_nonempty(&ft, 0, 0, 1).unwrap().unwrap();
        let text = w.to_document(&f3);
        assert_eq!(Witness::from_document(&f3, &text).unwrap(), w);
        assert!(Witness::<Rationals>::from_document(&Rationals, &text).is_err());
    }
}
