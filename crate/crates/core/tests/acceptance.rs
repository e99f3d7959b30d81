//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.
//!
//! ```text
//! cargo test --release --test acceptance
//! ```

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use specseq::bicomplex::{make_dot, make_square, make_zigzag, random_complex, Atom, AtomMix, DoubleComplex, Recipe, ZigzagShape};
use specseq::exactlin::{Field, FieldSpec, Matrix, PrimeField, Rationals, Subspace};
use specseq::fault::Fault;
use specseq::filtration::totalize;
use specseq::harness::{run_campaign, Campaign, CampaignReport, Property};
use specseq::obstruction::{check_witness, dd_lemma_report, eqdeg_verdict, ObstructionTable};
use specseq::pages::{page_via_cohomology, DimTable, SpectralSequence};

type Verdict = Result<String, String>;

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn campaign(seed: u64, mix: AtomMix, properties: Vec<Property>) -> CampaignReport {
    run_campaign(&Campaign::new(seed, 1000, Recipe::new(mix), properties), None).expect("campaign runs")
}

fn all_pass(report: &CampaignReport) -> Result<(), String> {
    ensure(report.failures() == 0, || report.to_text())
}

fn dims(entries: &[((i32, i32), usize)]) -> DimTable {
    entries.iter().copied().collect()
}

struct CatalogEntry {
    name: &'static str,
    complex: DoubleComplex<Rationals>,
    e0: DimTable,
    e1: DimTable,
    e2: DimTable,
    degeneration: usize,
    failing_cells: Vec<(i32, i32)>,
    higher_obstructions: Vec<(i32, i32, usize)>,
}

fn catalog() -> Vec<CatalogEntry> {
    let square_cells = dims(&[((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]);
    let hz_cells = dims(&[((0, 0), 1), ((1, 0), 1)]);
    vec![
        CatalogEntry {
            name: "dot",
            complex: make_dot(Rationals, 0, 0),
            e0: dims(&[((0, 0), 1)]),
            e1: dims(&[((0, 0), 1)]),
            e2: dims(&[((0, 0), 1)]),
            degeneration: 0,
            failing_cells: vec![],
            higher_obstructions: vec![],
        },
        CatalogEntry {
            name: "square",
            complex: make_square(Rationals, 0, 0),
            e0: square_cells,
            e1: DimTable::new(),
            e2: DimTable::new(),
            degeneration: 1,
            failing_cells: vec![],
            higher_obstructions: vec![],
        },
        CatalogEntry {
            name: "hz",
            complex: make_zigzag(Rationals, ZigzagShape::Horizontal, (0, 0)),
            e0: hz_cells.clone(),
            e1: hz_cells,
            e2: DimTable::new(),
            degeneration: 2,
            failing_cells: vec![(1, 0)],
            higher_obstructions: vec![(0, 0, 1)],
        },
        CatalogEntry {
            name: "vz",
            complex: make_zigzag(Rationals, ZigzagShape::Vertical, (0, 0)),
            e0: dims(&[((0, 0), 1), ((0, 1), 1)]),
            e1: DimTable::new(),
            e2: DimTable::new(),
            degeneration: 1,
            failing_cells: vec![(0, 1)],
            higher_obstructions: vec![],
        },
        CatalogEntry {
            name: "l3",
            complex: make_zigzag(Rationals, ZigzagShape::L3, (0, 0)),
            e0: dims(&[((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]),
            e1: dims(&[((0, 1), 1)]),
            e2: dims(&[((0, 1), 1)]),
            degeneration: 1,
            failing_cells: vec![(1, 1)],
            higher_obstructions: vec![],
        },
    ]
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    for entry in catalog() {
        let name = entry.name;
        let c = &entry.complex;
        let ft = totalize(c).map_err(|e| format!("{name}: {e}"))?;
        let ss = SpectralSequence::compute(&ft).map_err(|e| format!("{name}: {e}"))?;
        for (r, want) in [&entry.e0, &entry.e1, &entry.e2].into_iter().enumerate() {
            let got = ss.page(r).unwrap().dims();
            ensure(&got == want, || format!("{name}: E_{r} = {got:?}, expected {want:?}"))?;
        }
        for r in 0..=ft.cutoff() {
            let direct = ss.page(r + 1).unwrap().dims();
            let via = page_via_cohomology(ss.page(r).unwrap());
            ensure(direct == via, || format!("{name}: two paths disagree at E_{}", r + 1))?;
        }
        ensure(ss.degeneration_page() == entry.degeneration, || {
            format!("{name}: degeneration page {}", ss.degeneration_page())
        })?;
        let failing: Vec<_> = dd_lemma_report(c).failing_cells().collect();
        ensure(failing == entry.failing_cells, || format!("{name}: d'd''-lemma fails at {failing:?}"))?;
        let table = ObstructionTable::compute(&ft).map_err(|e| format!("{name}: {e}"))?;
        let page_zero: Vec<_> = c
            .cells()
            .map(|(k, _)| k)
            .filter(|&(p, q)| !c.d2(p, q).is_zero())
            .map(|(p, q)| (p, q, 0))
            .collect();
        let zero: Vec<_> = table.nonempty_keys().filter(|k| k.2 == 0).collect();
        let higher: Vec<_> = table.nonempty_keys().filter(|k| k.2 > 0).collect();
        ensure(zero == page_zero, || format!("{name}: page-zero obstructions {zero:?}"))?;
        ensure(higher == entry.higher_obstructions, || format!("{name}: obstructions {higher:?}"))?;
        ensure(table.entries.values().flatten().all(|w| check_witness(c, w)), || format!("{name}: unsound witness"))?;
        let verdict = eqdeg_verdict(&ft).map_err(|e| format!("{name}: {e}"))?;
        ensure(verdict.agree && verdict.by_pages == entry.degeneration, || format!("{name}: {verdict:?}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("5 complexes in {:.3}s", elapsed.as_secs_f64()))
}

fn criteria_2_and_3() -> (Verdict, Verdict) {
    let start = Instant::now();
    let report = campaign(20_240_601, AtomMix::Mixed, vec![Property::PageOracle, Property::Convergence]);
    let elapsed = start.elapsed();
    let line = |property: Property| {
        let p = report.property(property).unwrap();
        ensure(p.fail == 0, || report.to_text())?;
        Ok(format!("{} pass, 0 fail", p.pass))
    };
    let pages = line(Property::PageOracle).and_then(|s| {
        ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
        Ok(format!("{s}, {:.1}s", elapsed.as_secs_f64()))
    });
    (pages, line(Property::Convergence))
}

fn criterion_4() -> Verdict {
    let seed = 20_240_602;
    let report = campaign(seed, AtomMix::SquaresAndDots, vec![Property::MainTheorem]);
    all_pass(&report)?;
    let p = report.property(Property::MainTheorem).unwrap();
    let rate = p.vacuous as f64 / 1000.0;
    ensure(rate < 0.5, || format!("vacuous rate {rate}"))?;
    let c = &report.campaign;
    let with_square = c
        .trial_seeds()
        .into_iter()
        .filter(|&s| random_complex(Rationals, s, &c.recipe).atoms.iter().any(|a| matches!(a, Atom::Square(_))))
        .count();
    ensure(with_square >= 800, || format!("only {with_square} complexes contain a square"))?;
    Ok(format!("{} pass, 0 fail, vacuous rate {:.1}%, square atom in {with_square}", p.pass, rate * 100.0))
}

fn criterion_5() -> Verdict {
    let report = campaign(20_240_603, AtomMix::Mixed, vec![Property::EqDeg]);
    all_pass(&report)?;
    Ok(format!("{} agree, 0 disagree", report.property(Property::EqDeg).unwrap().pass))
}

fn criterion_6() -> Verdict {
    let properties = vec![Property::PropAlphaBeta, Property::LemmaAlpha, Property::LemmaBeta, Property::WitnessSoundness];
    let report = campaign(20_240_604, AtomMix::Mixed, properties);
    all_pass(&report)?;
    let counts: Vec<String> =
        report.properties.iter().map(|p| format!("{} {}/{}", p.property, p.pass, p.pass + p.vacuous)).collect();
    Ok(counts.join(", "))
}

fn random_matrix<F: Field>(field: &F, rng: &mut ChaCha8Rng, entry: impl Fn(&mut ChaCha8Rng) -> F::Elem) -> Matrix<F> {
    let rows = rng.random_range(1..=5);
    let cols = rng.random_range(1..=5);
    let body = (0..rows).map(|_| (0..cols).map(|_| entry(rng)).collect()).collect();
    Matrix::from_rows(field.clone(), cols, body).expect("rows have the declared width")
}

fn random_subspace<F: Field>(
    field: &F,
    ambient: usize,
    rng: &mut ChaCha8Rng,
    entry: &impl Fn(&mut ChaCha8Rng) -> F::Elem,
) -> Subspace<F> {
    let count = rng.random_range(0..=ambient + 1);
    let vectors: Vec<Vec<F::Elem>> = (0..count).map(|_| (0..ambient).map(|_| entry(rng)).collect()).collect();
    Subspace::span(field.clone(), ambient, vectors)
}

fn kernel_case<F: Field>(field: &F, rng: &mut ChaCha8Rng, entry: impl Fn(&mut ChaCha8Rng) -> F::Elem) -> Result<(), String> {
    let m = random_matrix(field, rng, &entry);
    ensure(m.rank() + m.kernel().dim() == m.cols(), || format!("rank-nullity fails for {m}"))?;
    let rref = m.rref().reduced;
    ensure(rref.rref().reduced == rref, || format!("rref not idempotent for {m}"))?;
    let ambient = m.rows();
    let u = random_subspace(field, ambient, rng, &entry);
    let v = random_subspace(field, ambient, rng, &entry);
    ensure(u.sum(&v).dim() + u.intersect(&v).dim() == u.dim() + v.dim(), || "modularity fails".to_string())?;
    let basis = u.basis();
    let mixed = (0..basis.len()).rev().map(|i| {
        let next = &basis[(i + 1) % basis.len()];
        basis[i].iter().zip(next).map(|(a, b)| field.add(a, &field.add(b, b))).collect::<Vec<_>>()
    });
    let respanned = Subspace::span(field.clone(), ambient, mixed.chain(basis.iter().cloned()));
    ensure(respanned == u, || "canonical form depends on the spanning set".to_string())?;
    Ok(())
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_605);
    let huge = BigInt::from(10).pow(30);
    let rational = |rng: &mut ChaCha8Rng| {
        let scale = if rng.random_bool(0.3) { huge.clone() } else { BigInt::from(1) };
        let num = BigInt::from(rng.random_range(-4i64..=4)) * scale + BigInt::from(rng.random_range(-3i64..=3));
        BigRational::new(num, BigInt::from(rng.random_range(1i64..=5)))
    };
    let f2 = PrimeField::new(2).unwrap();
    let f3 = PrimeField::new(3).unwrap();
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for i in 0..10_000 {
        match i % 3 {
            0 => {
                kernel_case(&Rationals, &mut rng, rational)?;
                *counts.entry("Q").or_default() += 1;
            }
            1 => {
                kernel_case(&f2, &mut rng, |r| f2.from_i64(r.random_range(0..2)))?;
                *counts.entry("F2").or_default() += 1;
            }
            _ => {
                kernel_case(&f3, &mut rng, |r| f3.from_i64(r.random_range(0..3)))?;
                *counts.entry("F3").or_default() += 1;
            }
        }
    }
    Ok(format!("10000 cases {counts:?}"))
}

fn criterion_8() -> Verdict {
    let mut c = Campaign::new(20_240_606, 200, Recipe::new(AtomMix::Mixed), Property::ALL.to_vec());
    c.fields = vec![FieldSpec::Rationals, FieldSpec::PrimeField(2), FieldSpec::PrimeField(3)];
    let first = run_campaign(&c, None).map_err(|e| e.to_string())?.to_json();
    let second = run_campaign(&c, None).map_err(|e| e.to_string())?.to_json();
    ensure(first == second, || "repeated campaign reports differ".to_string())?;
    let mut caught = Vec::new();
    for fault in Fault::ALL {
        let mut faulty = Campaign::new(1, 100, Recipe::new(AtomMix::Mixed), Property::ALL.to_vec());
        faulty.fault = Some(fault);
        let report = run_campaign(&faulty, None).map_err(|e| e.to_string())?;
        ensure(report.failures() > 0, || format!("fault {fault} went undetected"))?;
        caught.push(fault.to_string());
    }
    Ok(format!("reports byte-identical, faults detected: {}", caught.join(", ")))
}

fn guarded(f: impl FnOnce() -> Verdict) -> Verdict {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let message = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".to_string());
        Err(format!("panicked: {message}"))
    })
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, &str, Verdict)> = Vec::new();
    let mut record = |n, name, verdict: Verdict| {
        let (status, detail) = match &verdict {
            Ok(d) => ("pass", d.clone()),
            Err(d) => ("fail", d.clone()),
        };
        println!("criterion {n} ({name}): {status}: {detail}");
        results.push((n, name, verdict));
    };
    record(1, "catalog", guarded(criterion_1));
    let (two, three) = catch_unwind(criteria_2_and_3).unwrap_or_else(|_| {
        (Err("panicked".to_string()), Err("panicked".to_string()))
    });
    record(2, "two-path page oracle", two);
    record(3, "convergence", three);
    record(4, "main theorem campaign", guarded(criterion_4));
    record(5, "degeneration characterization campaign", guarded(criterion_5));
    record(6, "comparison-map and obstruction suites", guarded(criterion_6));
    record(7, "linear-algebra kernel", guarded(criterion_7));
    record(8, "determinism and fault injection", guarded(criterion_8));
    let failed = results.iter().filter(|r| r.2.is_err()).count();
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
