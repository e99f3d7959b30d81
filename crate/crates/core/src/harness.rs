//! Seeded property campaigns.
//!
//! A [`Campaign`] draws `trials` complexes from a [`Recipe`], cycling
//! through its fields, and evaluates each [`Property`] on every complex.
//! Trial `i` uses field `fields[i % fields.len()]` and a seed drawn from a
//! ChaCha stream keyed by the campaign seed, so a report depends only on
//! the campaign settings. Wall time is measured but kept out of the
//! serialized report, which therefore reproduces byte for byte.
//!
//! On a failure the complex is shrunk by dropping atoms (and finally the
//! basis change) while the property keeps failing, and written to the
//! bundle directory in the complex file format next to a JSON sidecar
//! naming the property, the message, the page dimensions and the
//! obstruction table.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bicomplex::io::to_document;
use crate::bicomplex::{random_complex, GeneratedComplex, Recipe};
use crate::exactlin::{Field, FieldSpec, LinAlgError, PrimeField, Rationals};
use crate::fault::Fault;
use crate::filtration::FilteredTotal;
use crate::obstruction::{
    alpha_iso, beta_iso, check_witness, main_theorem_check, obstruction_nonempty, eqdeg_verdict,
    ObstructionTable,
};
use crate::pages::{page_via_cohomology, SpectralSequence};
use crate::InternalError;

pub const SCHEMA: &str = "specseq/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Property {
    /// `dim E_{r+1} = dim H(E_r, d_r)` and `d_r ∘ d_r = 0` for `r ≤ R`.
    #[serde(rename = "page-oracle")]
    PageOracle,
    /// `Σ_{p+q=k} dim E^{p,q}_∞ = dim H^k`, and `E_{R+1} = E_∞`.
    #[serde(rename = "convergence")]
    Convergence,
    /// d'd''-lemma and `d_s ≠ 0` for some `s` imply degeneration at `E_1`.
    #[serde(rename = "main-theorem")]
    MainTheorem,
    /// Degeneration page from pages equals the one from obstruction sets.
    #[serde(rename = "eqdeg")]
    EqDeg,
    /// `d_r = 0 ⇔ every β_{·,·,r} is an isomorphism`, and `d_r = 0 ⇒ every
    /// α_{·,·,r} is an isomorphism`.
    #[serde(rename = "prop-alpha-beta")]
    PropAlphaBeta,
    /// A non-isomorphic `α_{p,q,r}` (`r ≥ 1`) comes with an element of
    /// `ℰ^{p,q}_r`; `α` isomorphic from `r_0` on empties `ℰ_r` for `r ≥ r_0`.
    #[serde(rename = "lemma-alpha")]
    LemmaAlpha,
    /// `ℰ^{p,q-1}_0 = ∅ ⇔ β_{p,q,0}` iso; for `r ≥ 1`, `ℰ^{p-r,q+r-1}_r = ∅`
    /// implies `β_{p,q,r}` iso, and otherwise `β_{p,q,1}` or `β_{p,q,r}` is
    /// not.
    #[serde(rename = "lemma-beta")]
    LemmaBeta,
    /// Every element of the obstruction table passes the independent check
    /// and survives a file round trip.
    #[serde(rename = "witness-soundness")]
    WitnessSoundness,
    /// The inclusions among the `Z` and `B` spaces.
    #[serde(rename = "inclusions")]
    Inclusions,
}

impl Property {
    pub const ALL: [Property; 9] = [
        Property::PageOracle,
        Property::Convergence,
        Property::MainTheorem,
        Property::EqDeg,
        Property::PropAlphaBeta,
        Property::LemmaAlpha,
        Property::LemmaBeta,
        Property::WitnessSoundness,
        Property::Inclusions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::PageOracle => "page-oracle",
            Property::Convergence => "convergence",
            Property::MainTheorem => "main-theorem",
            Property::EqDeg => "eqdeg",
            Property::PropAlphaBeta => "prop-alpha-beta",
            Property::LemmaAlpha => "lemma-alpha",
            Property::LemmaBeta => "lemma-beta",
            Property::WitnessSoundness => "witness-soundness",
            Property::Inclusions => "inclusions",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

/// Result of one property on one complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// The property's hypothesis did not hold.
    Vacuous,
    Fail(String),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

fn fail(message: impl Into<String>) -> Outcome {
    Outcome::Fail(message.into())
}

/// Cells `(p,q)` with `p, q ≥ 0` and `p + q ≤ top`.
fn cells<F: Field>(ft: &FilteredTotal<F>) -> Vec<(i32, i32)> {
    let top = ft.top_degree();
    (0..=top).flat_map(|k| (0..=k).map(move |p| (p, k - p))).collect()
}

fn evaluate<F: Field>(property: Property, ft: &FilteredTotal<F>) -> Result<Outcome, InternalError> {
    let cutoff = ft.cutoff();
    Ok(match property {
        Property::PageOracle => {
            let ss = SpectralSequence::compute(ft)?;
            for r in 0..=cutoff {
                let page = ss.page(r).expect("pages through R + 1");
                if !page.differential_squares_to_zero() {
                    return Ok(fail(format!("d_{r} ∘ d_{r} ≠ 0")));
                }
                let next = ss.page(r + 1).expect("pages through R + 1").dims();
                let expected = page_via_cohomology(page);
                if next != expected {
                    return Ok(fail(format!("E_{}: {next:?}, H(E_{r}): {expected:?}", r + 1)));
                }
            }
            Outcome::Pass
        }
        Property::Convergence => {
            let ss = SpectralSequence::compute(ft)?;
            let inf = ss.infinity();
            if !inf.converges() {
                fail(format!("E_∞ {:?} against H {:?}", inf.dims, inf.cohomology))
            } else if ss.page(cutoff + 1).expect("pages through R + 1").dims() != inf.dims {
                fail("E_{R+1} differs from E_∞")
            } else {
                Outcome::Pass
            }
        }
        Property::MainTheorem => {
            let check = main_theorem_check(ft)?;
            if !check.hypotheses_hold {
                Outcome::Vacuous
            } else if check.consistent {
                Outcome::Pass
            } else {
                fail(format!("d'd''-lemma holds but degeneration page is {}", check.degeneration_page))
            }
        }
        Property::EqDeg => {
            let v = eqdeg_verdict(ft)?;
            if v.agree {
                Outcome::Pass
            } else {
                fail(format!("pages give {}, obstructions give {}", v.by_pages, v.by_obstructions))
            }
        }
        Property::PropAlphaBeta => {
            let ss = SpectralSequence::compute_through(ft, cutoff)?;
            for r in 0..=cutoff {
                let dr_zero = ss.page(r).expect("pages through R").differential_is_zero();
                let ri = r as i32;
                let mut all_beta = true;
                for &(p, q) in &cells(ft) {
                    all_beta &= beta_iso(ft, p, q, ri)?;
                    if dr_zero && !alpha_iso(ft, p, q, ri)? {
                        return Ok(fail(format!("d_{r} = 0 but alpha_{{{p},{q},{r}}} is not an isomorphism")));
                    }
                }
                if dr_zero != all_beta {
                    return Ok(fail(format!("d_{r} = 0 is {dr_zero} but all beta_{{·,·,{r}}} iso is {all_beta}")));
                }
            }
            Outcome::Pass
        }
        Property::LemmaAlpha => {
            let mut exercised = false;
            let mut iso_from = 1;
            for r in 1..=cutoff {
                for &(p, q) in &cells(ft) {
                    if alpha_iso(ft, p, q, r as i32)? {
                        continue;
                    }
                    exercised = true;
                    iso_from = r + 1;
                    if obstruction_nonempty(ft, p, q, r)?.is_none() {
                        return Ok(fail(format!("alpha_{{{p},{q},{r}}} not iso but E^{{{p},{q}}}_{r} is empty")));
                    }
                }
            }
            for r in iso_from..=cutoff {
                for &(p, q) in &cells(ft) {
                    if obstruction_nonempty(ft, p, q, r)?.is_some() {
                        return Ok(fail(format!("alpha iso from {iso_from} on but E^{{{p},{q}}}_{r} is nonempty")));
                    }
                }
            }
            if exercised {
                Outcome::Pass
            } else {
                Outcome::Vacuous
            }
        }
        Property::LemmaBeta => {
            for &(p, q) in &cells(ft) {
                let empty = obstruction_nonempty(ft, p, q - 1, 0)?.is_none();
                if empty != beta_iso(ft, p, q, 0)? {
                    return Ok(fail(format!("E^{{{p},{}}}_0 empty is {empty}, beta_{{{p},{q},0}} disagrees", q - 1)));
                }
                for r in 1..=cutoff {
                    let ri = r as i32;
                    let nonempty = obstruction_nonempty(ft, p - ri, q + ri - 1, r)?.is_some();
                    let beta_r = beta_iso(ft, p, q, ri)?;
                    if !nonempty && !beta_r {
                        return Ok(fail(format!("E^{{{},{}}}_{r} empty but beta_{{{p},{q},{r}}} not iso", p - ri, q + ri - 1)));
                    }
                    if nonempty && beta_r && beta_iso(ft, p, q, 1)? {
                        return Ok(fail(format!(
                            "E^{{{},{}}}_{r} nonempty but beta_{{{p},{q},1}} and beta_{{{p},{q},{r}}} are iso",
                            p - ri,
                            q + ri - 1
                        )));
                    }
                }
            }
            Outcome::Pass
        }
        Property::WitnessSoundness => {
            let table = ObstructionTable::compute(ft)?;
            let field = ft.field();
            let mut seen = 0;
            for w in table.entries.values().flatten() {
                seen += 1;
                if !check_witness(ft.complex(), w) {
                    return Ok(fail(format!("witness for ({},{},{}) rejected", w.p, w.q, w.r)));
                }
                let reparsed = crate::obstruction::Witness::from_document(field, &w.to_document(field));
                if reparsed.as_ref() != Ok(w) {
                    return Ok(fail(format!("witness for ({},{},{}) does not round-trip", w.p, w.q, w.r)));
                }
            }
            if seen == 0 {
                Outcome::Vacuous
            } else {
                Outcome::Pass
            }
        }
        Property::Inclusions => {
            for &(p, q) in &cells(ft) {
                for r in -1..=cutoff as i32 + 1 {
                    if let Some(name) = ft.inclusion_violations(p, q, r).first() {
                        return Ok(fail(format!("({p},{q},{r}): {name}")));
                    }
                }
            }
            Outcome::Pass
        }
    })
}

fn build<F: Field>(g: &GeneratedComplex<F>, fault: Option<Fault>) -> Result<FilteredTotal<F>, String> {
    let built = match fault {
        Some(f) => FilteredTotal::with_fault(&g.complex, f),
        None => FilteredTotal::new(&g.complex),
    };
    built.map_err(|e| format!("generated complex rejected: {e}"))
}

/// Evaluates `property` on a complex, with a kernel fault if given.
/// Internal errors count as failures.
pub fn check_property<F: Field>(property: Property, g: &GeneratedComplex<F>, fault: Option<Fault>) -> Outcome {
    match build(g, fault) {
        Ok(ft) => evaluate(property, &ft).unwrap_or_else(|e| fail(format!("internal error: {e}"))),
        Err(message) => fail(message),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShrinkError {
    #[error("property {0} holds on the complex; nothing to shrink")]
    PropertyHolds(Property),
}

/// Greedily drops atoms, then the basis change, while `property` keeps
/// failing. The result fails `property` and dropping any single atom from
/// it makes the property hold.
pub fn shrink<F: Field>(
    g: &GeneratedComplex<F>,
    property: Property,
    fault: Option<Fault>,
) -> Result<GeneratedComplex<F>, ShrinkError> {
    if !check_property(property, g, fault).is_fail() {
        return Err(ShrinkError::PropertyHolds(property));
    }
    let field = g.complex.field().clone();
    let still_fails = |atoms: Vec<_>, iso: Option<u64>| {
        GeneratedComplex::assemble(field.clone(), atoms, iso)
            .ok()
            .filter(|c| check_property(property, c, fault).is_fail())
    };
    let mut current = g.clone();
    'outer: loop {
        for i in 0..current.atoms.len() {
            let mut atoms = current.atoms.clone();
            atoms.remove(i);
            if let Some(smaller) = still_fails(atoms, current.iso_seed) {
                current = smaller;
                continue 'outer;
            }
        }
        break;
    }
    if current.iso_seed.is_some() {
        if let Some(plain) = still_fails(current.atoms.clone(), None) {
            current = plain;
        }
    }
    Ok(current)
}

/// Campaign settings. Equal settings give byte-identical reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Campaign {
    pub seed: u64,
    pub trials: usize,
    pub recipe: Recipe,
    pub fields: Vec<FieldSpec>,
    pub properties: Vec<Property>,
    /// Kernel mutation to run under; `None` outside fault-injection tests.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fault: Option<Fault>,
}

impl Campaign {
    pub fn new(seed: u64, trials: usize, recipe: Recipe, properties: Vec<Property>) -> Self {
        Self {
            seed,
            trials,
            recipe,
            fields: vec![FieldSpec::Rationals, FieldSpec::PrimeField(2), FieldSpec::PrimeField(3)],
            properties,
            fault: None,
        }
    }

    /// Seeds of the trials, in order.
    pub fn trial_seeds(&self) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.trials).map(|_| rng.next_u64()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub trial: usize,
    pub seed: u64,
    pub field: FieldSpec,
    pub message: String,
    /// Atoms left after shrinking.
    pub shrunk_atoms: usize,
    /// Path of the persisted complex, when a bundle directory was given.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bundle: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_failure: Option<FailureRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema: String,
    pub campaign: Campaign,
    pub properties: Vec<PropertyReport>,
    /// Measured but not serialized, so reports stay reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CampaignReport {
    pub fn failures(&self) -> usize {
        self.properties.iter().map(|p| p.fail).sum()
    }

    pub fn property(&self, property: Property) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.property == property)
    }

    /// Canonical JSON, ending in a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    /// One line per property.
    pub fn to_text(&self) -> String {
        let c = &self.campaign;
        let fields: Vec<String> = c.fields.iter().map(ToString::to_string).collect();
        let mut out = format!(
            "campaign seed {} trials {} recipe {} fields {}\n",
            c.seed,
            c.trials,
            c.recipe.mix.name(),
            fields.join(",")
        );
        for p in &self.properties {
            out.push_str(&format!("{}: pass {} fail {} vacuous {}\n", p.property, p.pass, p.fail, p.vacuous));
            if let Some(f) = &p.first_failure {
                out.push_str(&format!("  first failure: trial {} seed {} field {}: {}\n", f.trial, f.seed, f.field, f.message));
                if let Some(b) = &f.bundle {
                    out.push_str(&format!("  bundle: {b}\n"));
                }
            }
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("campaign needs at least one field")]
    NoFields,
    #[error("invalid field: {0}")]
    Field(#[from] LinAlgError),
    #[error("writing failure bundle {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

/// Runs `campaign`; failures are shrunk and, with `bundle_dir`, persisted.
pub fn run_campaign(campaign: &Campaign, bundle_dir: Option<&Path>) -> Result<CampaignReport, CampaignError> {
    let start = Instant::now();
    if campaign.fields.is_empty() && campaign.trials > 0 {
        return Err(CampaignError::NoFields);
    }
    let mut reports: Vec<PropertyReport> = campaign
        .properties
        .iter()
        .map(|&property| PropertyReport { property, pass: 0, fail: 0, vacuous: 0, first_failure: None })
        .collect();
    for (trial, seed) in campaign.trial_seeds().into_iter().enumerate() {
        let spec = campaign.fields[trial % campaign.fields.len()];
        match spec {
            FieldSpec::Rationals => run_trial(Rationals, campaign, trial, seed, &mut reports, bundle_dir)?,
            FieldSpec::PrimeField(p) => {
                run_trial(PrimeField::new(p)?, campaign, trial, seed, &mut reports, bundle_dir)?
            }
        }
    }
    Ok(CampaignReport {
        schema: SCHEMA.to_string(),
        campaign: campaign.clone(),
        properties: reports,
        wall_time: start.elapsed(),
    })
}

fn run_trial<F: Field>(
    field: F,
    campaign: &Campaign,
    trial: usize,
    seed: u64,
    reports: &mut [PropertyReport],
    bundle_dir: Option<&Path>,
) -> Result<(), CampaignError> {
    let g = random_complex(field.clone(), seed, &campaign.recipe);
    let ft = build(&g, campaign.fault);
    for report in reports.iter_mut() {
        let outcome = match &ft {
            Ok(ft) => evaluate(report.property, ft).unwrap_or_else(|e| fail(format!("internal error: {e}"))),
            Err(message) => fail(message.clone()),
        };
        match outcome {
            Outcome::Pass => report.pass += 1,
            Outcome::Vacuous => report.vacuous += 1,
            Outcome::Fail(message) => {
                report.fail += 1;
                if report.first_failure.is_none() {
                    let shrunk = shrink(&g, report.property, campaign.fault).unwrap_or_else(|_| g.clone());
                    let bundle = match bundle_dir {
                        Some(dir) => Some(write_bundle(dir, report.property, trial, &message, &shrunk, campaign.fault)?),
                        None => None,
                    };
                    report.first_failure = Some(FailureRecord {
                        trial,
                        seed,
                        field: field.spec(),
                        message,
                        shrunk_atoms: shrunk.atoms.len(),
                        bundle,
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct BundleSidecar {
    schema: &'static str,
    property: Property,
    trial: usize,
    message: String,
    complex: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    fault: Option<Fault>,
    pages: Vec<Vec<((i32, i32), usize)>>,
    infinity: Vec<((i32, i32), usize)>,
    nonempty_obstructions: Vec<(i32, i32, usize)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    errors: Vec<String>,
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CampaignError> {
    let io_err = |source| CampaignError::Io { path: path.to_path_buf(), source };
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

/// Writes `<property>-trial<N>.json` (the complex) and
/// `<property>-trial<N>.bundle.json` (property, message, pages and the
/// obstruction table). Returns the complex path.
fn write_bundle<F: Field>(
    dir: &Path,
    property: Property,
    trial: usize,
    message: &str,
    g: &GeneratedComplex<F>,
    fault: Option<Fault>,
) -> Result<String, CampaignError> {
    fs::create_dir_all(dir).map_err(|source| CampaignError::Io { path: dir.to_path_buf(), source })?;
    let stem = format!("{property}-trial{trial}");
    let complex_path = dir.join(format!("{stem}.json"));
    write_atomic(&complex_path, &to_document(&g.complex))?;

    let mut errors = Vec::new();
    let (mut pages, mut infinity, mut nonempty_obstructions) = (Vec::new(), Vec::new(), Vec::new());
    match build(g, fault) {
        Ok(ft) => {
            match SpectralSequence::compute(&ft) {
                Ok(ss) => {
                    pages = ss.pages().iter().map(|p| p.dims().into_iter().collect()).collect();
                    infinity = ss.infinity().dims.clone().into_iter().collect();
                }
                Err(e) => errors.push(e.to_string()),
            }
            match ObstructionTable::compute(&ft) {
                Ok(t) => nonempty_obstructions = t.nonempty_keys().collect(),
                Err(e) => errors.push(e.to_string()),
            }
        }
        Err(e) => errors.push(e),
    }
    let sidecar = BundleSidecar {
        schema: SCHEMA,
        property,
        trial,
        message: message.to_string(),
        complex: format!("{stem}.json"),
        fault,
        pages,
        infinity,
        nonempty_obstructions,
        errors,
    };
    let mut text = serde_json::to_string_pretty(&sidecar).expect("bundles always serialize");
    text.push('\n');
    write_atomic(&dir.join(format!("{stem}.bundle.json")), &text)?;
    Ok(complex_path.display().to_string())
}
