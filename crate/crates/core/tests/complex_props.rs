//! Invariants of the spectral-sequence computation on generated complexes:
//! independence of the basis, additivity under direct sums, agreement of
//! `E_1` with vertical cohomology, and the file and regrading round trips.

use proptest::prelude::*;

use specseq::bicomplex::io::{parse_complex, to_document, AnyComplex};
use specseq::bicomplex::{
    degrade, random_complex, random_iso, AtomMix, DoubleComplex, GeneratedComplex, Recipe, regrade_bidifferential,
    RegradeMode,
};
use specseq::exactlin::{Field, FieldSpec, PrimeField, Rationals};
use specseq::filtration::totalize;
use specseq::obstruction::{dd_lemma_report, ObstructionTable};
use specseq::pages::{DimTable, SpectralSequence};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mix() -> impl Strategy<Value = AtomMix> {
    prop_oneof![Just(AtomMix::SquaresAndDots), Just(AtomMix::Zigzags), Just(AtomMix::Mixed)]
}

fn plain_recipe(mix: AtomMix) -> Recipe {
    Recipe { basis_change: false, ..Recipe::new(mix) }
}

fn page_dims<F: Field>(c: &DoubleComplex<F>) -> (Vec<DimTable>, DimTable, usize) {
    let ss = SpectralSequence::compute(&totalize(c).unwrap()).unwrap();
    (ss.pages().iter().map(|p| p.dims()).collect(), ss.infinity().dims.clone(), ss.degeneration_page())
}

fn add(a: &DimTable, b: &DimTable) -> DimTable {
    let mut out = a.clone();
    for (&k, &v) in b {
        *out.entry(k).or_insert(0) += v;
    }
    out
}

fn invariance<F: Field>(field: F, seed: u64, mix: AtomMix) {
    let g = random_complex(field.clone(), seed, &plain_recipe(mix));
    let dims = g.complex.cells().collect();
    let iso = random_iso(&field, &dims, &mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
    let conjugated = g.complex.change_basis(&iso).unwrap();
    assert!(conjugated.is_valid());
    let (pages, inf, deg) = page_dims(&g.complex);
    let (pages2, inf2, deg2) = page_dims(&conjugated);
    let cutoff = totalize(&g.complex).unwrap().cutoff();
    assert_eq!(pages[..=cutoff], pages2[..=cutoff]);
    assert_eq!((inf, deg), (inf2, deg2));
    assert_eq!(dd_lemma_report(&g.complex).passes(), dd_lemma_report(&conjugated).passes());
    let keys = |c: &DoubleComplex<F>| {
        ObstructionTable::compute(&totalize(c).unwrap()).unwrap().nonempty_keys().collect::<Vec<_>>()
    };
    assert_eq!(keys(&g.complex), keys(&conjugated));
}

fn additivity<F: Field>(field: F, seed: u64, mix: AtomMix) {
    let a = random_complex(field.clone(), seed, &Recipe::new(mix)).complex;
    let b = random_complex(field, seed.wrapping_add(1), &Recipe::new(mix)).complex;
    let sum = a.direct_sum(&b).unwrap();
    let (pa, ia, da) = page_dims(&a);
    let (pb, ib, db) = page_dims(&b);
    let (ps, is, ds) = page_dims(&sum);
    for (r, page) in ps.iter().enumerate() {
        let last = |p: &Vec<DimTable>| p.get(r).cloned().unwrap_or_else(|| p.last().unwrap().clone());
        assert_eq!(page, &add(&last(&pa), &last(&pb)), "E_{r}");
    }
    assert_eq!(is, add(&ia, &ib));
    assert_eq!(ds, da.max(db));
}

fn e1_is_vertical_cohomology<F: Field>(field: F, seed: u64, mix: AtomMix) {
    let c = random_complex(field, seed, &Recipe::new(mix)).complex;
    let expected: DimTable = c
        .cells()
        .map(|((p, q), n)| ((p, q), n - c.d2(p, q).rank() - c.d2(p, q - 1).rank()))
        .filter(|&(_, d)| d > 0)
        .collect();
    assert_eq!(page_dims(&c).0[1], expected);
}

fn round_trips<F: Field>(field: F, seed: u64, mix: AtomMix)
where
    AnyComplex: From<DoubleComplex<F>>,
{
    let c = random_complex(field, seed, &Recipe::new(mix)).complex;
    let text = to_document(&c);
    let parsed = parse_complex(&text).unwrap();
    assert_eq!(parsed.to_document(), text);
    assert_eq!(parsed, AnyComplex::from(c.clone()));
    assert_eq!(regrade_bidifferential(&degrade(&c), RegradeMode::Strict).unwrap(), c);
}

fn run_all(field: FieldSpec, seed: u64, mix: AtomMix) {
    match field {
        FieldSpec::Rationals => {
            invariance(Rationals, seed, mix);
            additivity(Rationals, seed, mix);
            e1_is_vertical_cohomology(Rationals, seed, mix);
            round_trips(Rationals, seed, mix);
        }
        FieldSpec::PrimeField(p) => {
            let f = PrimeField::new(p).unwrap();
            invariance(f.clone(), seed, mix);
            additivity(f.clone(), seed, mix);
            e1_is_vertical_cohomology(f.clone(), seed, mix);
            round_trips(f, seed, mix);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_complex_invariants(
        seed in any::<u64>(),
        mix in mix(),
        field in prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::PrimeField(2)), Just(FieldSpec::PrimeField(3)), Just(FieldSpec::PrimeField(7))],
    ) {
        run_all(field, seed, mix);
    }
}

#[test]
fn squares_and_dots_satisfy_the_dd_lemma_in_any_basis() {
    for seed in 0..100 {
        let g: GeneratedComplex<Rationals> = random_complex(Rationals, seed, &Recipe::new(AtomMix::SquaresAndDots));
        assert!(dd_lemma_report(&g.complex).passes(), "seed {seed}");
    }
}
