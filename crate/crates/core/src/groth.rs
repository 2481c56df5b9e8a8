//! The recursion for `G_w`, a table of computed classes, verification of
//! entries and the on-disk cache.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{AffineCartanData, CartanSpec};
use crate::cocycle::{solve_coboundary, SolveOptions, MAX_GROW};
use crate::error::{CacheError, GrothError};
use crate::expr::{records_from_element, element_from_records, TermRecord};
use crate::kring::KElement;
use crate::weyl::WeylElement;

/// Names of the checks understood by [`GrothTable::verify_entry`].
pub const CHECKS: [&str; 6] = ["window", "demazure", "localization", "psi", "ring", "reverse"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub value: KElement,
    pub verified: BTreeSet<String>,
}

/// Computed classes for one Cartan datum, keyed by Weyl element.
#[derive(Clone, Debug)]
pub struct GrothTable {
    cartan: AffineCartanData,
    entries: BTreeMap<WeylElement, Entry>,
    check_compat: bool,
}

impl PartialEq for GrothTable {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan && self.entries == other.entries
    }
}

/// One step of the recursion: `G_w` from the classes `G_{w s_i}` for the
/// right descents `i` of `w`.
pub fn grothendieck_step(
    cartan: &AffineCartanData,
    w: &WeylElement,
    lower: impl Fn(&WeylElement) -> KElement,
    opts: &SolveOptions,
) -> Result<KElement, GrothError> {
    if w.is_identity() {
        return Ok(KElement::one(cartan));
    }
    let descents = w.right_descents(cartan);
    let rho_j = cartan.rho_subset(&descents);
    let v: Vec<KElement> = cartan
        .nodes()
        .map(|i| {
            if !descents.contains(&i) {
                return KElement::zero();
            }
            let g = lower(&w.mul_simple_right(cartan, i));
            let factor = &KElement::one(cartan) - &KElement::exp(cartan, &-cartan.simple_root(i));
            (&factor * &g).shift(cartan, &rho_j)
        })
        .collect();
    let top = cartan.level(&rho_j);
    let b = solve_coboundary(cartan, &v, (top - cartan.dual_coxeter(), top), opts)?;
    let c = b.j_map(cartan, &WeylElement::identity(cartan));
    let corr = c.eta_embed(cartan).expect("j_e lands in the root lattice");
    let g = (&b - &corr).shift(cartan, &-&rho_j);
    if !g.level_window(-cartan.dual_coxeter(), 0) {
        return Err(GrothError::Window(format!("w = {}", w.to_text(cartan))));
    }
    Ok(g)
}

/// `prod_{beta in inv(w)} (1 - e^beta)`.
pub fn inversion_product(cartan: &AffineCartanData, w: &WeylElement) -> KElement {
    w.inversion_set(cartan).iter().fold(KElement::one(cartan), |acc, b| {
        &acc * &(&KElement::one(cartan) - &KElement::exp(cartan, b))
    })
}

impl GrothTable {
    pub fn new(cartan: AffineCartanData) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(
            WeylElement::identity(&cartan),
            Entry { value: KElement::one(&cartan), verified: BTreeSet::new() },
        );
        GrothTable { cartan, entries, check_compat: cfg!(debug_assertions) }
    }

    /// Enables or disables the cocycle check on each recursion step.
    pub fn set_check_compat(&mut self, on: bool) {
        self.check_compat = on;
    }

    pub fn cartan(&self) -> &AffineCartanData {
        &self.cartan
    }

    pub fn cartan_key(&self) -> String {
        self.cartan.key()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&WeylElement, &Entry)> {
        self.entries.iter()
    }

    pub fn get(&self, w: &WeylElement) -> Option<&KElement> {
        self.entries.get(w).map(|e| &e.value)
    }

    fn options(&self, reverse: bool) -> SolveOptions {
        SolveOptions { reverse_order: reverse, check_cocycle: self.check_compat, max_grow: MAX_GROW }
    }

    /// `G_w`, computing and storing any missing lower entries first.
    pub fn compute(&mut self, w: &WeylElement) -> Result<KElement, GrothError> {
        if let Some(g) = self.get(w) {
            return Ok(g.clone());
        }
        // every w s_i with i a right descent, transitively
        let mut needed: BTreeSet<WeylElement> = BTreeSet::new();
        let mut stack = vec![w.clone()];
        while let Some(x) = stack.pop() {
            if self.entries.contains_key(&x) || needed.contains(&x) {
                continue;
            }
            for i in x.right_descents(&self.cartan) {
                stack.push(x.mul_simple_right(&self.cartan, i));
            }
            needed.insert(x);
        }
        for x in needed {
            let g = self.step(&x, false)?;
            self.entries.insert(x, Entry { value: g, verified: BTreeSet::new() });
        }
        Ok(self.get(w).unwrap().clone())
    }

    fn step(&self, w: &WeylElement, reverse: bool) -> Result<KElement, GrothError> {
        let opts = self.options(reverse);
        grothendieck_step(&self.cartan, w, |x| self.entries[x].value.clone(), &opts)
    }

    /// Recomputes `G_w` from the stored lower entries with the solver's
    /// elimination order reversed.
    pub fn recompute_reversed(&self, w: &WeylElement) -> Result<KElement, GrothError> {
        self.step(w, true)
    }

    /// Fills every element of length at most `max_len`, one length layer at
    /// a time; entries within a layer are computed on `jobs` threads.
    pub fn fill_up_to(&mut self, max_len: usize, jobs: usize) -> Result<(), GrothError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| GrothError::Invalid(e.to_string()))?;
        for layer in WeylElement::layers(&self.cartan, max_len) {
            let missing: Vec<WeylElement> =
                layer.into_iter().filter(|w| !self.entries.contains_key(w)).collect();
            let this = &*self;
            let results: Vec<Result<(WeylElement, KElement), GrothError>> = pool.install(|| {
                missing.par_iter().map(|w| this.step(w, false).map(|g| (w.clone(), g))).collect()
            });
            for r in results {
                let (w, g) = r?;
                self.entries.insert(w, Entry { value: g, verified: BTreeSet::new() });
            }
        }
        Ok(())
    }

    /// Runs the named checks on `G_w` and records those that pass.
    pub fn verify_entry(&mut self, w: &WeylElement, checks: &[&str], probe_length: usize) -> VerifyReport {
        let mut report = VerifyReport { word: w.to_text(&self.cartan), items: Vec::new() };
        let g = match self.compute(w) {
            Ok(g) => g,
            Err(e) => {
                report.items.push(CheckItem::fail("compute", e.to_string()));
                return report;
            }
        };
        let c = self.cartan.clone();
        for &name in checks {
            let item = match name {
                "window" => CheckItem::from_bool(name, g.level_window(-c.dual_coxeter(), 0), "level outside (-k*, 0]"),
                "demazure" => self.check_demazure(w, &g),
                "localization" => check_localization(&c, w, &g, probe_length),
                "psi" => match self.compute(&w.inverse(&c)) {
                    Ok(gi) => CheckItem::from_bool(name, g.psi(&c) == gi, "psi(G_w) != G_{w^-1}"),
                    Err(e) => CheckItem::fail(name, e.to_string()),
                },
                "ring" => CheckItem::from_bool(
                    name,
                    g.iter().all(|(_, v)| v.in_coefficient_ring()),
                    "denominator is not a product of (1-q^k) factors",
                ),
                "reverse" => match self.recompute_reversed(w) {
                    Ok(h) => CheckItem::from_bool(name, h == g, "reversed elimination order changes G_w"),
                    Err(e) => CheckItem::fail(name, e.to_string()),
                },
                other => CheckItem::fail(other, "unknown check".into()),
            };
            report.items.push(item);
        }
        let passed: Vec<String> =
            report.items.iter().filter(|i| i.passed).map(|i| i.name.clone()).collect();
        if let Some(e) = self.entries.get_mut(w) {
            e.verified.extend(passed);
        }
        report
    }

    fn check_demazure(&mut self, w: &WeylElement, g: &KElement) -> CheckItem {
        let c = self.cartan.clone();
        for i in c.nodes() {
            let d = g.demazure(&c, i);
            let expect = if w.has_right_descent(&c, i) {
                match self.compute(&w.mul_simple_right(&c, i)) {
                    Ok(x) => x,
                    Err(e) => return CheckItem::fail("demazure", e.to_string()),
                }
            } else {
                g.clone()
            };
            if d != expect {
                return CheckItem::fail("demazure", format!("D_{} G_w mismatch", c.label(i)));
            }
        }
        CheckItem::pass("demazure")
    }

    /// Cache file for this table inside `dir`.
    pub fn cache_path(&self, dir: &Path) -> PathBuf {
        let key: String = self
            .cartan_key()
            .chars()
            .map(|ch| if ch.is_ascii_alphanumeric() || ch == '-' { ch } else { '_' })
            .collect();
        dir.join(format!("{key}.json"))
    }

    pub fn to_json(&self) -> String {
        let file = CacheFile {
            cartan: self.cartan.spec(),
            entries: self
                .entries
                .iter()
                .map(|(w, e)| CacheEntry {
                    word: w.labels(&self.cartan),
                    terms: records_from_element(&self.cartan, &e.value),
                    verified: e.verified.iter().cloned().collect(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CacheError> {
        let file: CacheFile = serde_json::from_str(text).map_err(|e| CacheError::Format(e.to_string()))?;
        let cartan = AffineCartanData::from_spec(&file.cartan).map_err(|e| CacheError::Format(e.to_string()))?;
        let mut table = GrothTable::new(cartan);
        for e in file.entries {
            let w = WeylElement::from_labels(&table.cartan, &e.word).map_err(|e| CacheError::Format(e.to_string()))?;
            if w.labels(&table.cartan) != e.word {
                return Err(CacheError::Format(format!("word {:?} is not canonical", e.word)));
            }
            let value =
                element_from_records(&table.cartan, &e.terms).map_err(|e| CacheError::Format(e.to_string()))?;
            table.entries.insert(w, Entry { value, verified: e.verified.into_iter().collect() });
        }
        Ok(table)
    }

    pub fn save(&self, dir: &Path) -> Result<PathBuf, CacheError> {
        std::fs::create_dir_all(dir)?;
        let path = self.cache_path(dir);
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, self.to_json())?;
        std::fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Loads the cache for `cartan` from `dir`, or an empty table if none
    /// exists yet.
    pub fn load_or_new(cartan: AffineCartanData, dir: &Path) -> Result<Self, CacheError> {
        let fresh = GrothTable::new(cartan);
        let path = fresh.cache_path(dir);
        if !path.exists() {
            return Ok(fresh);
        }
        let text = std::fs::read_to_string(&path)?;
        let table = Self::from_json(&text)?;
        if table.cartan.gcm() != fresh.cartan.gcm() || table.cartan.labels() != fresh.cartan.labels() {
            return Err(CacheError::Mismatch(path.display().to_string()));
        }
        Ok(GrothTable { cartan: fresh.cartan, entries: table.entries, check_compat: fresh.check_compat })
    }
}

/// `j_x(G_w) = 0` for probed `x` not above `w`, and `j_w(G_w)` equal to the
/// inversion product.
pub fn check_localization(cartan: &AffineCartanData, w: &WeylElement, g: &KElement, probe_length: usize) -> CheckItem {
    if g.j_map(cartan, w) != inversion_product(cartan, w) {
        return CheckItem::fail("localization", "j_w(G_w) differs from the inversion product".into());
    }
    for x in WeylElement::enumerate_up_to(cartan, probe_length) {
        if !w.bruhat_leq(cartan, &x) && !g.j_map(cartan, &x).is_zero() {
            return CheckItem::fail("localization", format!("j_x(G_w) != 0 at x = {}", x.to_text(cartan)));
        }
    }
    CheckItem::pass("localization")
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    cartan: CartanSpec,
    entries: Vec<CacheEntry>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    word: Vec<u32>,
    terms: Vec<TermRecord>,
    verified: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckItem {
    fn pass(name: &str) -> Self {
        CheckItem { name: name.into(), passed: true, detail: String::new() }
    }

    fn fail(name: &str, detail: String) -> Self {
        CheckItem { name: name.into(), passed: false, detail }
    }

    fn from_bool(name: &str, ok: bool, detail: &str) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, detail.into())
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub word: String,
    pub items: Vec<CheckItem>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .items
            .iter()
            .map(|i| {
                if i.passed {
                    format!("{}=ok", i.name)
                } else {
                    format!("{}=FAIL({})", i.name, i.detail)
                }
            })
            .collect();
        write!(f, "{}: {}", self.word, parts.join(" "))
    }
}
