//! Exhaustive checks of the depth and extension theorems over a small,
//! seeded corpus.
//!
//! Each check runs per corpus member and yields a [`TheoremReport`]; a failing
//! report carries a witness (matroid file, decomposition, subset) that fails
//! again when replayed.

mod corpus;

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use corpus::{multigraphs, Corpus, CorpusEntry, Family};

use crate::bitset::ElementSet;
use crate::decomposition::{
    csd, csd_search, is_valid, valid_decompositions_by_shape, SearchOptions, StarDecomposition,
};
use crate::depth::{
    contraction_depth, csd_gf2_quotient, deletion_depth, DepthKind, DepthMemo,
};
use crate::error::{Error, Result};
use crate::matroid::{
    components_by_rank, components_from_circuits, dual, minor, ElementKind, Explicit, Gf2,
    Matroid, MatroidFile, MatroidRef, RankTable, DEFAULT_SUBSET_CAP,
};
use crate::tamed::{distribute_by_marking, ExtendedSet, Mutation, TamedExtension};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// Rank axioms, duality formula, components and the bridge lemma on `M`.
    Matroid,
    /// `csd ≤ cd - 1`, or `csd = cd ≤ 1` when only loops and coloops occur.
    Upper,
    /// `cd(M^T) = csd(M) + 1` for an optimal decomposition.
    Main,
    /// Independence axioms of the tamed sets and `E(T)` as a basis.
    Axioms,
    /// Tamed subsets of `M` are exactly the independent sets of `M`.
    Restriction,
    /// Token totals, non-negativity and subtree sums.
    Tokens,
    /// `cd(M^T) ≤ height(T)` for every decomposition found.
    DepthBound,
    /// `cd'(M^T) = csd(M)` for an optimal decomposition.
    Altered,
    /// Loops after contracting a leaf path; component blocks below branchings.
    Structure,
    /// Decomposition search against the quotient recursion on binary matroids.
    CrossOracle,
    /// `cd(M) = dd(M*)` and `csd ≤ cd ≤ 4^csd + 1`.
    Duality,
    /// Properties of valid decompositions themselves.
    Decomposition,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::Matroid,
        Check::Upper,
        Check::Main,
        Check::Axioms,
        Check::Restriction,
        Check::Tokens,
        Check::DepthBound,
        Check::Altered,
        Check::Structure,
        Check::CrossOracle,
        Check::Duality,
        Check::Decomposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Matroid => "matroid",
            Check::Upper => "upper",
            Check::Main => "main",
            Check::Axioms => "axioms",
            Check::Restriction => "restriction",
            Check::Tokens => "tokens",
            Check::DepthBound => "depth-bound",
            Check::Altered => "altered",
            Check::Structure => "structure",
            Check::CrossOracle => "cross-oracle",
            Check::Duality => "duality",
            Check::Decomposition => "decomposition",
        }
    }

    /// Checks that run once per valid decomposition shape.
    pub fn per_decomposition(self) -> bool {
        matches!(
            self,
            Check::Axioms | Check::Restriction | Check::Tokens | Check::DepthBound | Check::Structure
        )
    }

    /// Parses `all` or a comma-separated list of check names.
    pub fn parse_suite(text: &str) -> std::result::Result<Vec<Check>, String> {
        if text == "all" {
            return Ok(Check::ALL.to_vec());
        }
        let mut out: Vec<Check> = text
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<std::result::Result<_, _>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub mutation: Mutation,
    pub search: SearchOptions,
    /// Ground-set cap for rank tabulation and depth recursions.
    pub subset_cap: usize,
    /// Largest extension ground set checked exhaustively against the axioms.
    pub extension_cap: usize,
    /// Random subsets drawn per extension or decomposition.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            mutation: Mutation::None,
            search: SearchOptions::default(),
            subset_cap: DEFAULT_SUBSET_CAP,
            extension_cap: 12,
            samples: 200,
        }
    }
}

/// First violated assertion of a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub detail: String,
    pub subset: Option<ElementSet>,
    pub decomposition: Option<StarDecomposition>,
}

/// Assertion count plus the first failure, if any.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub checks: u64,
    pub failure: Option<Failure>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn record(&mut self, ok: bool, subset: Option<ElementSet>, detail: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(Failure {
                detail: detail(),
                subset,
                decomposition: None,
            });
        }
        ok
    }

    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) -> bool {
        self.record(ok, None, detail)
    }

    fn expect_on(&mut self, ok: bool, subset: ElementSet, detail: impl FnOnce() -> String) -> bool {
        self.record(ok, Some(subset), detail)
    }

    /// Folds in the outcome of a check on decomposition `d`.
    fn absorb(&mut self, other: Outcome, d: &StarDecomposition) {
        self.checks += other.checks;
        if self.failure.is_none() {
            self.failure = other.failure.map(|mut f| {
                f.decomposition.get_or_insert_with(|| d.clone());
                f
            });
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// The matroid in the text file format.
    pub matroid: String,
    /// The decomposition as DOT, when the check involved one.
    pub decomposition: Option<String>,
    pub subset: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Box<Witness>),
    /// Not applicable to this instance, or beyond a resource cap.
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub check: Check,
    pub instance: usize,
    pub label: String,
    pub checks: u64,
    pub verdict: Verdict,
}

impl TheoremReport {
    pub fn failed(&self) -> bool {
        matches!(self.verdict, Verdict::Fail(_))
    }

    pub fn skipped(&self) -> bool {
        matches!(self.verdict, Verdict::Skipped(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            Verdict::Fail(w) => Some(w),
            _ => None,
        }
    }

    /// One line for the verify output.
    pub fn line(&self) -> String {
        let head = format!("{:<13} #{:<3} {:<40}", self.check.name(), self.instance, self.label);
        match &self.verdict {
            Verdict::Pass => format!("{head} pass ({} checks)", self.checks),
            Verdict::Skipped(why) => format!("{head} skip ({why})"),
            Verdict::Fail(w) => format!("{head} FAIL: {}", w.detail),
        }
    }
}

/// Per-check totals for the summary table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SummaryRow {
    pub instances: usize,
    pub checks: u64,
    pub skipped: usize,
    pub failures: usize,
}

pub fn summarize(reports: &[TheoremReport]) -> Vec<(Check, SummaryRow)> {
    let mut rows: Vec<(Check, SummaryRow)> = Vec::new();
    for r in reports {
        let i = match rows.iter().position(|(c, _)| *c == r.check) {
            Some(i) => i,
            None => {
                rows.push((r.check, SummaryRow::default()));
                rows.len() - 1
            }
        };
        let row = &mut rows[i].1;
        row.instances += 1;
        row.checks += r.checks;
        row.skipped += usize::from(r.skipped());
        row.failures += usize::from(r.failed());
    }
    rows.sort_by_key(|(c, _)| *c);
    rows
}

pub fn summary_table(reports: &[TheoremReport]) -> String {
    let mut out = format!(
        "{:<13} {:>9} {:>9} {:>7} {:>8}\n",
        "check", "instances", "checks", "skipped", "failures"
    );
    for (c, row) in summarize(reports) {
        out += &format!(
            "{:<13} {:>9} {:>9} {:>7} {:>8}\n",
            c.name(),
            row.instances,
            row.checks,
            row.skipped,
            row.failures
        );
    }
    out
}

/// Runs `checks` over the whole corpus in parallel. Reports come back sorted
/// by check and then corpus index, whatever the scheduling.
pub fn run_suite(corpus: &Corpus, checks: &[Check], config: &VerifyConfig) -> Vec<TheoremReport> {
    let jobs: Vec<(Check, usize)> = checks
        .iter()
        .flat_map(|&c| (0..corpus.len()).map(move |i| (c, i)))
        .collect();
    let mut reports: Vec<TheoremReport> = jobs
        .par_iter()
        .map(|&(c, i)| run_check(c, i, &corpus.entries[i], config))
        .collect();
    reports.sort_by_key(|r| (r.check, r.instance));
    reports
}

pub fn run_check(check: Check, instance: usize, entry: &CorpusEntry, config: &VerifyConfig) -> TheoremReport {
    let result = evaluate(check, instance, entry, config);
    let (checks, verdict) = match result {
        Ok(Evaluation::Done(o)) => match o.failure {
            None => (o.checks, Verdict::Pass),
            Some(f) => (
                o.checks,
                Verdict::Fail(Box::new(Witness {
                    matroid: entry.file.to_text(),
                    decomposition: f.decomposition.map(|d| d.to_dot()),
                    subset: f.subset.map(|s| s.to_string()),
                    detail: f.detail,
                })),
            ),
        },
        Ok(Evaluation::NotApplicable(why)) => (0, Verdict::Skipped(why.into())),
        Err(e) if e.is_resource() => (0, Verdict::Skipped(e.to_string())),
        Err(e) => (
            0,
            Verdict::Fail(Box::new(Witness {
                matroid: entry.file.to_text(),
                decomposition: None,
                subset: None,
                detail: format!("error: {e}"),
            })),
        ),
    };
    TheoremReport {
        check,
        instance,
        label: entry.label.clone(),
        checks,
        verdict,
    }
}

enum Evaluation {
    Done(Outcome),
    NotApplicable(&'static str),
}

fn rng_for(config: &VerifyConfig, check: Check, instance: usize) -> ChaCha8Rng {
    let stream = (check as u64) << 32 | instance as u64;
    ChaCha8Rng::seed_from_u64(config.seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn evaluate(check: Check, instance: usize, entry: &CorpusEntry, config: &VerifyConfig) -> Result<Evaluation> {
    let m = &entry.matroid;
    let mut rng = rng_for(config, check, instance);
    let done = Evaluation::Done;
    Ok(match check {
        Check::Matroid => done(check_matroid(m.as_ref(), config)?),
        Check::Upper => done(check_upper(m.as_ref(), config)?),
        Check::Main => {
            if is_exceptional(m.as_ref()) {
                Evaluation::NotApplicable("only loops and coloops, not all loops")
            } else {
                done(check_main(m, config)?)
            }
        }
        Check::Altered => done(check_altered(m, config)?),
        Check::CrossOracle => match &entry.file {
            MatroidFile::Gf2 { rows, columns } => {
                done(check_cross_oracle(&Gf2::new(*rows, columns.clone())?, config)?)
            }
            _ => Evaluation::NotApplicable("not a binary matroid"),
        },
        Check::Duality => done(check_duality(m, config)?),
        Check::Decomposition => done(check_decomposition(m, config, &mut rng)?),
        _ => {
            let mut out = Outcome::default();
            for d in valid_decompositions_by_shape(m.as_ref(), &config.search)? {
                let o = check_on_decomposition(check, m, &d, config, &mut rng)?;
                out.absorb(o, &d);
                if !out.passed() {
                    break;
                }
            }
            done(out)
        }
    })
}

/// One per-decomposition check on one decomposition.
pub fn check_on_decomposition(
    check: Check,
    m: &MatroidRef,
    d: &StarDecomposition,
    config: &VerifyConfig,
    rng: &mut impl Rng,
) -> Result<Outcome> {
    let ext = TamedExtension::with_mutation(m.clone(), d.clone(), config.mutation)?;
    match check {
        Check::Axioms => check_matroid_axioms(&ext, config),
        Check::Restriction => Ok(check_restriction(&ext)),
        Check::Tokens => Ok(check_token_laws(&ext, config.samples, rng)),
        Check::DepthBound => check_depth_bound(&ext, config),
        Check::Structure => check_structure_lemmas(&ext, config),
        other => Err(Error::invalid(format!("{other} is not a per-decomposition check"))),
    }
}

/// Re-runs a check on a witness: the matroid text and, for per-decomposition
/// checks, the decomposition DOT.
pub fn replay(check: Check, matroid: &str, dot: Option<&str>, config: &VerifyConfig) -> Result<Outcome> {
    let file = MatroidFile::parse(matroid)?;
    let entry = CorpusEntry::from_file("witness", Family::DirectSum, file)?;
    match (check.per_decomposition(), dot) {
        (true, Some(dot)) => {
            let d = StarDecomposition::from_dot(dot)?;
            let mut rng = rng_for(config, check, 0);
            check_on_decomposition(check, &entry.matroid, &d, config, &mut rng)
        }
        _ => match evaluate(check, 0, &entry, config)? {
            Evaluation::Done(o) => Ok(o),
            Evaluation::NotApplicable(why) => Err(Error::invalid(why)),
        },
    }
}

/// Writes the witness of a failing report as `<check>-<instance>.matroid`,
/// `.dot` and `.txt` files under `dir`.
pub fn write_witness(dir: &Path, report: &TheoremReport) -> Result<Vec<PathBuf>> {
    let Some(w) = report.witness() else {
        return Ok(Vec::new());
    };
    std::fs::create_dir_all(dir)?;
    let stem = format!("{}-{}", report.check.name(), report.instance);
    let mut written = Vec::new();
    let mut put = |ext: &str, body: &str| -> Result<()> {
        let path = dir.join(format!("{stem}.{ext}"));
        std::fs::write(&path, body)?;
        written.push(path);
        Ok(())
    };
    put("matroid", &w.matroid)?;
    if let Some(dot) = &w.decomposition {
        put("dot", dot)?;
    }
    let mut note = format!("check {}\ninstance {} {}\n{}\n", report.check, report.instance, report.label, w.detail);
    if let Some(s) = &w.subset {
        note += &format!("subset {s}\n");
    }
    put("txt", &note)?;
    Ok(written)
}

fn optimal(m: &dyn Matroid, config: &VerifyConfig) -> Result<(usize, StarDecomposition)> {
    let report = csd_search(m, &config.search)?
        .ok_or_else(|| Error::invalid("search found no decomposition"))?;
    Ok((report.depth, report.decomposition))
}

fn extension_depth(ext: &TamedExtension, kind: DepthKind, config: &VerifyConfig) -> Result<usize> {
    let table = ext.rank_table(config.subset_cap)?;
    Ok(DepthMemo::from_table(table, kind).report().value)
}

/// Rank axioms on every subset, the dual rank against the dual built from
/// complemented bases, the component partition, and the bridge lemma.
pub fn check_matroid(m: &dyn Matroid, config: &VerifyConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n = m.len();
    let table = RankTable::build(m, config.subset_cap)?;
    let r = table.full_rank();
    out.expect(table.get(ElementSet::empty()) == 0, || "rank of the empty set".into());
    for x in m.ground().subsets() {
        let rx = table.get(x);
        if !out.expect_on(rx <= x.len(), x, || "rank exceeds size".into()) {
            return Ok(out);
        }
        for a in m.ground() - x {
            let ra = table.get(x.with(a));
            if !out.expect_on(ra == rx || ra == rx + 1, x.with(a), || "rank jumps by more than one".into()) {
                return Ok(out);
            }
            for b in (m.ground() - x).iter().filter(|&b| b > a) {
                let ok = ra + table.get(x.with(b)) >= table.get(x.with(a).with(b)) + rx;
                if !out.expect_on(ok, x.with(a).with(b), || "submodularity".into()) {
                    return Ok(out);
                }
            }
        }
    }
    let base: MatroidRef = Arc::new(table.clone());
    let complemented = m.bases(config.subset_cap)?.iter().map(|b| b.complement(n)).collect();
    let explicit_dual = Explicit::new(n, complemented)?;
    let view = dual(&base);
    for x in m.ground().subsets() {
        let ok = view.rank_unchecked(x) == explicit_dual.rank_unchecked(x);
        if !out.expect_on(ok, x, || "dual rank disagrees with complemented bases".into()) {
            return Ok(out);
        }
    }
    let parts = m.components(config.subset_cap)?;
    let total: usize = parts.blocks.iter().map(|&b| table.get(b)).sum();
    out.expect(total == r, || format!("component ranks sum to {total}, not {r}"));
    let circuits = m.circuits(config.subset_cap)?;
    for c in &circuits {
        let inside = parts.blocks.iter().any(|b| c.is_subset(*b));
        out.expect_on(inside, *c, || "circuit spans two components".into());
    }
    let mut by_circuits = components_from_circuits(m.ground(), &circuits);
    let mut by_rank = components_by_rank(m.ground(), |x| table.get(x));
    by_circuits.sort_by_key(|b| b.bits());
    by_rank.sort_by_key(|b| b.bits());
    out.expect(by_circuits == by_rank, || "component routes disagree".into());
    for x in m.ground().subsets() {
        let contracted = minor(&base, x, ElementSet::empty())?;
        for e in m.ground() - x {
            if table.classify(e)? == ElementKind::Coloop {
                continue;
            }
            let local = contracted.view_index(e).expect("element survives the contraction");
            let ok = contracted.classify(local)? != ElementKind::Coloop;
            if !out.expect_on(ok, x.with(e), || format!("element {e} becomes a coloop")) {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Every element is a loop or a coloop, and at least one is a coloop. Only
/// then may csd and cd coincide.
pub fn is_exceptional(m: &dyn Matroid) -> bool {
    m.full_rank() > 0 && m.is_loops_and_coloops_only()
}

pub fn check_upper(m: &dyn Matroid, config: &VerifyConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let s = csd(m, &config.search)?;
    let c = contraction_depth(m, config.subset_cap)?;
    if is_exceptional(m) {
        out.expect(s == c && c <= 1, || format!("loops and coloops only, yet csd = {s}, cd = {c}"));
    } else {
        out.expect(s < c, || format!("csd = {s} but cd = {c}"));
    }
    Ok(out)
}

pub fn check_main(m: &MatroidRef, config: &VerifyConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let (s, d) = optimal(m.as_ref(), config)?;
    let ext = TamedExtension::with_mutation(m.clone(), d.clone(), config.mutation)?;
    let c = extension_depth(&ext, DepthKind::Contraction, config)?;
    let mut inner = Outcome::default();
    inner.expect(c == s + 1, || format!("cd of the extension is {c}, csd is {s}"));
    out.absorb(inner, &d);
    Ok(out)
}

pub fn check_altered(m: &MatroidRef, config: &VerifyConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let (s, d) = optimal(m.as_ref(), config)?;
    let ext = TamedExtension::with_mutation(m.clone(), d.clone(), config.mutation)?;
    let c = extension_depth(&ext, DepthKind::AlteredContraction, config)?;
    let mut inner = Outcome::default();
    inner.expect(c == s, || format!("altered cd of the extension is {c}, csd is {s}"));
    out.absorb(inner, &d);
    Ok(out)
}

pub fn check_cross_oracle(m: &Gf2, config: &VerifyConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let searched = csd(m, &config.search)?;
    let quotient = csd_gf2_quotient(m, config.search.rank_cap)?;
    out.expect(searched == quotient, || format!("search gives {searched}, quotient recursion {quotient}"));
    Ok(out)
}

pub fn check_duality(m: &MatroidRef, config: &VerifyConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let c = contraction_depth(m.as_ref(), config.subset_cap)?;
    let dd_dual = deletion_depth(&dual(m), config.subset_cap)?;
    out.expect(c == dd_dual, || format!("cd = {c} but dd of the dual = {dd_dual}"));
    let s = csd(m.as_ref(), &config.search)?;
    let bound = 4usize.pow(s as u32) + 1;
    out.expect(s <= c && c <= bound, || format!("csd = {s}, cd = {c}, bound {bound}"));
    if m.len() <= 6 {
        for kind in DepthKind::ALL {
            let cached = DepthMemo::new(m.as_ref(), kind, config.subset_cap)?.report();
            let plain = DepthMemo::uncached(m.as_ref(), kind, config.subset_cap)?.report();
            out.expect(cached == plain, || format!("memoised {kind} disagrees with the plain recursion"));
        }
    }
    Ok(out)
}

/// Closure domination on random subsets, loop placement, the component and
/// edge-count lemmas, and minor-monotonicity of csd.
pub fn check_decomposition(m: &MatroidRef, config: &VerifyConfig, rng: &mut impl Rng) -> Result<Outcome> {
    let mut out = Outcome::default();
    let (s, d) = optimal(m.as_ref(), config)?;
    let tree = d.tree();
    let n = m.len();
    if tree.num_edges() > 0 {
        for _ in 0..config.samples {
            let x = ElementSet::from_bits(rng.gen::<u64>()) & m.ground();
            if x.is_empty() {
                continue;
            }
            let edges = tree.upward_closure_edges(d.leaves_of(x))?.len();
            let r = m.rank_unchecked(x);
            if !out.expect_on(edges >= r, x, || format!("closure has {edges} edges, rank is {r}")) {
                return Ok(out);
            }
        }
    }
    let loops: Vec<usize> = (0..n).filter(|&e| m.rank_unchecked(ElementSet::singleton(e)) == 0).collect();
    for leaf in tree.leaves() {
        let mut assignment = d.assignment().to_vec();
        for &e in &loops {
            assignment[e] = leaf;
        }
        let moved = StarDecomposition::new(tree.clone(), assignment)?;
        out.expect(is_valid(m.as_ref(), &moved)?, || format!("loops moved to leaf {leaf} break validity"));
    }
    for shape in valid_decompositions_by_shape(m.as_ref(), &config.search)? {
        let mut inner = Outcome::default();
        decomposition_lemmas(m.as_ref(), &shape, &mut inner);
        out.absorb(inner, &shape);
    }
    for e in 0..n {
        let single = ElementSet::singleton(e);
        for (contract, delete) in [(single, ElementSet::empty()), (ElementSet::empty(), single)] {
            let view = minor(m, contract, delete)?;
            let v = csd(&view, &config.search)?;
            out.expect(v <= s, || format!("removing element {e} raises csd from {s} to {v}"));
        }
    }
    Ok(out)
}

fn decomposition_lemmas(m: &dyn Matroid, d: &StarDecomposition, out: &mut Outcome) {
    let tree = d.tree();
    let ground = m.ground();
    let r = m.full_rank();
    for v in tree.top_branching_or_leaf_descendants(tree.root()) {
        let part = d.elements_under(v);
        let split = m.rank_unchecked(part) + m.rank_unchecked(ground - part);
        out.expect_on(split == r, part, || format!("elements under v{v} are not a union of components"));
    }
    for v in tree.vertices() {
        if v == tree.root() || !(tree.is_leaf(v) || tree.is_branching(v)) {
            continue;
        }
        let top = tree.branching_or_root_ancestor(v).expect("non-root vertex");
        let f = (tree.subtree(v) | tree.path_edges(v, top)).len();
        let local = r - m.rank_unchecked(ground - d.elements_under(v));
        out.expect(f <= local, || format!("v{v} has {f} edges above a local rank of {local}"));
    }
}

/// Non-emptiness, heredity and augmentation over all subsets, `E(T)` as a
/// basis, and the greedy rank against exhaustive maximisation.
pub fn check_matroid_axioms(ext: &TamedExtension, config: &VerifyConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n = ext.len();
    if n > config.extension_cap {
        return Err(Error::CapExceeded {
            what: "extension ground set for the axiom check",
            size: n,
            cap: config.extension_cap,
        });
    }
    let tamed: Vec<bool> = (0..1u64 << n).map(|b| ext.is_tamed_set(ElementSet::from_bits(b))).collect();
    let is = |s: ElementSet| tamed[s.bits() as usize];
    out.expect(is(ElementSet::empty()), || "the empty set is not tamed".into());
    let mut by_size: Vec<Vec<ElementSet>> = vec![Vec::new(); n + 1];
    for b in 0..1u64 << n {
        let s = ElementSet::from_bits(b);
        if is(s) {
            by_size[s.len()].push(s);
            let closed = s.iter().all(|e| is(s.without(e)));
            if !out.expect_on(closed, s, || "a subset of a tamed set is not tamed".into()) {
                return Ok(out);
            }
        }
    }
    // with heredity, augmenting from sets one larger is enough
    for k in 0..n {
        for &x in &by_size[k] {
            for &y in &by_size[k + 1] {
                let ok = (y - x).iter().any(|e| is(x.with(e)));
                if !out.expect_on(ok, x | y, || format!("{x} cannot be augmented from {y}")) {
                    return Ok(out);
                }
            }
        }
    }
    let edges = ext.all_edges();
    let brute = RankTable::from_independence(n, config.subset_cap, &is)?;
    let r = brute.full_rank();
    out.expect_on(is(edges) && r == edges.len(), edges, || {
        format!("E(T) is not a basis: rank is {r}, |E(T)| = {}", edges.len())
    });
    for s in ext.ground().subsets() {
        let ok = ext.rank_unchecked(s) == brute.get(s);
        if !out.expect_on(ok, s, || "greedy rank differs from the largest tamed subset".into()) {
            break;
        }
    }
    Ok(out)
}

pub fn check_restriction(ext: &TamedExtension) -> Outcome {
    let mut out = Outcome::default();
    let base = ext.base();
    for x in base.ground().subsets() {
        let independent = base.rank_unchecked(x) == x.len();
        let tamed = ext.is_tamed_set(x);
        let ok = independent == tamed;
        if !out.expect_on(ok, x, || format!("independent in M: {independent}, tamed: {tamed}")) {
            break;
        }
    }
    out
}

/// Random subsets of the extension with independent matroid part.
fn independent_part_sample(ext: &TamedExtension, rng: &mut impl Rng) -> ExtendedSet {
    let raw = ext.split(ElementSet::from_bits(rng.gen::<u64>()) & ext.ground());
    let mut order = raw.matroid_part.to_vec();
    order.shuffle(rng);
    let mut kept = ElementSet::empty();
    for e in order {
        if ext.base().rank_unchecked(kept.with(e)) == kept.len() + 1 {
            kept.insert(e);
        }
    }
    ExtendedSet::new(kept, raw.edge_part)
}

pub fn check_token_laws(ext: &TamedExtension, samples: usize, rng: &mut impl Rng) -> Outcome {
    let mut out = Outcome::default();
    let tree = ext.tree();
    let base = ext.base();
    let ground = base.ground();
    for _ in 0..samples {
        let set = independent_part_sample(ext, rng);
        let shown = ext.combine(&set);
        let assigned = ext.token_assignment(&set);
        let total: i64 = assigned.iter().sum();
        if !out.expect_on(total == set.len() as i64, shown, || format!("{total} tokens for {} elements", set.len())) {
            break;
        }
        if !out.expect_on(assigned.iter().all(|&t| t >= 0), shown, || "negative token count".into()) {
            break;
        }
        for v in tree.vertices() {
            if v == tree.root() || !(tree.is_leaf(v) || tree.is_branching(v)) {
                continue;
            }
            let below: i64 = tree.subtree(v).iter().map(|u| assigned[u]).sum();
            let top = tree.branching_or_root_ancestor(v).expect("non-root vertex");
            let f = tree.subtree(v) | tree.path_edges(v, top);
            let under = ext.decomposition().elements_under(v);
            let outside = ground - under;
            let local = base.rank_unchecked((set.matroid_part & under) | outside) - base.rank_unchecked(outside);
            let expected = (set.edge_part & f).len() as i64 + local as i64;
            if !out.expect_on(below == expected, shown, || format!("subtree of v{v} holds {below} tokens, expected {expected}")) {
                return out;
            }
        }
        let ledger = ext.ledger(&set);
        let (marked, _) = distribute_by_marking(tree, &assigned);
        if ext.mutation() == Mutation::None {
            out.expect_on(marked == ledger, shown, || "marking loop disagrees with the post-order pass".into());
        }
    }
    out
}

pub fn check_depth_bound(ext: &TamedExtension, config: &VerifyConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let c = extension_depth(ext, DepthKind::Contraction, config)?;
    let h = ext.tree().height();
    out.expect(c <= h, || format!("cd of the extension is {c}, tree height {h}"));
    Ok(out)
}

/// Leaf-path contraction makes the leaf's elements loops, and below every
/// branching vertex or the root the blocks `T(v_i) ∪ F_i` are unions of
/// components of the extension with the root path contracted.
pub fn check_structure_lemmas(ext: &TamedExtension, config: &VerifyConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let table: MatroidRef = Arc::new(ext.rank_table(config.subset_cap)?);
    let tree = ext.tree();
    let d = ext.decomposition();
    for leaf in tree.leaves() {
        if leaf == tree.root() {
            continue;
        }
        let p = ext.edge_elements(tree.root_path_edges(leaf));
        let view = minor(&table, p, ElementSet::empty())?;
        for e in d.elements_under(leaf) {
            let local = view.view_index(e).expect("matroid elements survive");
            let ok = view.rank_unchecked(ElementSet::singleton(local)) == 0;
            if !out.expect_on(ok, p.with(e), || format!("element {e} is not a loop after contracting the path to v{leaf}")) {
                return Ok(out);
            }
        }
    }
    for v in tree.vertices() {
        if v != tree.root() && !tree.is_branching(v) {
            continue;
        }
        let p = if v == tree.root() {
            ElementSet::empty()
        } else {
            ext.edge_elements(tree.root_path_edges(v))
        };
        let view = minor(&table, p, ElementSet::empty())?;
        let parts = view.components(config.subset_cap)?;
        let tops = tree.top_branching_or_leaf_descendants(v);
        for (&child, &vi) in tree.children(v).iter().zip(&tops) {
            let block = d.elements_under(vi) | ext.edge_elements(tree.subtree(child));
            let local = view.project(block);
            let ok = parts.blocks.iter().all(|b| b.is_subset(local) || b.is_disjoint(local));
            if !out.expect_on(ok, block, || format!("block under v{child} is not a union of components")) {
                return Ok(out);
            }
        }
    }
    Ok(out)
}
