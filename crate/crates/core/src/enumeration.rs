//! Corpora of numerical semigroups and batch verification over them.

use std::collections::HashSet;
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gluing::{detect_complete_intersection, detect_free, glue};
use crate::hw::{check_all_ideals, check_all_two_generated, is_huneke_wiegand, Verdict};
use crate::ideal::RelativeIdeal;
use crate::semigroup::NumericalSemigroup;
use crate::sequences::find_irreducible_two_step;

pub const DEFAULT_SYMMETRIC_BOUND: i64 = 40;
pub const DEFAULT_MULTIPLIER_CAP: i64 = 15;

/// Depth-first walk of the semigroup tree down to a genus limit. Each
/// semigroup of genus at most the limit is yielded once.
pub struct GenusTree {
    stack: Vec<NumericalSemigroup>,
    max_genus: u64,
}

pub fn genus_tree(max_genus: u64) -> GenusTree {
    GenusTree {
        stack: vec![NumericalSemigroup::natural()],
        max_genus,
    }
}

impl Iterator for GenusTree {
    type Item = NumericalSemigroup;

    fn next(&mut self) -> Option<NumericalSemigroup> {
        let s = self.stack.pop()?;
        if s.genus() < self.max_genus {
            self.stack.extend(s.tree_children().into_iter().rev());
        }
        Some(s)
    }
}

/// Number of semigroups of each genus `0..=max_genus`.
pub fn genus_counts(max_genus: u64) -> Vec<u64> {
    let mut counts = vec![0; max_genus as usize + 1];
    for s in genus_tree(max_genus) {
        counts[s.genus() as usize] += 1;
    }
    counts
}

/// Collects the subtree under `root`, keeping nodes that satisfy `keep`
/// and descending only while `descend` holds.
fn walk(
    root: NumericalSemigroup,
    descend: &(impl Fn(&NumericalSemigroup) -> bool + Sync),
    child_ok: &(impl Fn(&NumericalSemigroup) -> bool + Sync),
    keep: &(impl Fn(&NumericalSemigroup) -> bool + Sync),
) -> Vec<NumericalSemigroup> {
    let mut out = Vec::new();
    let mut stack = vec![root];
    while let Some(s) = stack.pop() {
        if descend(&s) {
            stack.extend(s.tree_children().into_iter().filter(child_ok).rev());
        }
        if keep(&s) {
            out.push(s);
        }
    }
    out
}

/// Walks the tree in parallel: the first few levels are expanded serially
/// and the resulting subtrees are processed independently, then
/// concatenated in order.
fn parallel_walk(
    descend: impl Fn(&NumericalSemigroup) -> bool + Sync,
    child_ok: impl Fn(&NumericalSemigroup) -> bool + Sync,
    keep: impl Fn(&NumericalSemigroup) -> bool + Sync,
) -> Vec<NumericalSemigroup> {
    let mut head = Vec::new();
    let mut frontier = vec![NumericalSemigroup::natural()];
    for _ in 0..4 {
        let mut next = Vec::new();
        for s in frontier {
            if descend(&s) {
                next.extend(s.tree_children().into_iter().filter(&child_ok));
            }
            head.push(s);
        }
        frontier = next;
    }
    let mut out: Vec<NumericalSemigroup> = head.into_iter().filter(&keep).collect();
    let tails: Vec<Vec<NumericalSemigroup>> = frontier
        .into_par_iter()
        .map(|root| walk(root, &descend, &child_ok, &keep))
        .collect();
    out.extend(tails.into_iter().flatten());
    out
}

/// Symmetric semigroups other than `N` with Frobenius number below `bound`,
/// ordered by Frobenius number and then generators.
pub fn symmetric_below(bound: i64) -> Vec<NumericalSemigroup> {
    let max_genus = (bound + 1) / 2;
    let mut out = parallel_walk(
        |s| (s.genus() as i64) < max_genus,
        |c| c.frobenius() < bound,
        |s| !s.is_natural() && s.frobenius() < bound && s.is_symmetric().unwrap_or(false),
    );
    out.sort_by(|x, y| (x.frobenius(), x.generators()).cmp(&(y.frobenius(), y.generators())));
    out
}

/// Every semigroup of genus at most `max_genus`, ordered by genus and then
/// generators, passing `keep`.
pub fn genus_filtered(max_genus: u64, keep: impl Fn(&NumericalSemigroup) -> bool + Sync) -> Vec<NumericalSemigroup> {
    let mut out = parallel_walk(|s| s.genus() < max_genus, |_| true, keep);
    out.sort_by(|x, y| (x.genus(), x.generators()).cmp(&(y.genus(), y.generators())));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct GluingClosure {
    /// `levels[0]` holds the seeds; `levels[i]` the semigroups first reached
    /// at step `i`.
    pub levels: Vec<Vec<NumericalSemigroup>>,
    pub multiplier_cap: i64,
}

impl GluingClosure {
    pub fn all(&self) -> impl Iterator<Item = &NumericalSemigroup> {
        self.levels.iter().flatten()
    }
}

/// Repeatedly adds every gluing `a1 S1 + a2 S2` of pairs from the current
/// family with `2 <= a1, a2 <= cap`. `depth` counts the gluing rounds.
pub fn gluing_closure(seeds: &[NumericalSemigroup], depth: usize, cap: i64) -> Result<GluingClosure> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut first = Vec::new();
    for s in seeds {
        if seen.insert(s.generators().to_vec()) {
            first.push(s.clone());
        }
    }
    let mut family: Vec<Arc<NumericalSemigroup>> = first.iter().cloned().map(Arc::new).collect();
    let mut levels = vec![first];
    for _ in 0..depth {
        let mut fresh = Vec::new();
        for s1 in &family {
            for s2 in &family {
                for a1 in 2..=cap {
                    if !s2.contains(a1) {
                        continue;
                    }
                    for a2 in 2..=cap {
                        if !s1.contains(a2) || crate::semigroup::gcd(a1, a2) != 1 {
                            continue;
                        }
                        let g = glue(s1, a1, s2, a2)?;
                        if seen.insert(g.glued().generators().to_vec()) {
                            fresh.push(g.glued().as_ref().clone());
                        }
                    }
                }
            }
        }
        fresh.sort_by(|x, y| x.generators().cmp(y.generators()));
        family.extend(fresh.iter().cloned().map(Arc::new));
        levels.push(fresh);
    }
    Ok(GluingClosure { levels, multiplier_cap: cap })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CorpusMode {
    GenusTree { max_genus: u64 },
    SymmetricBelow { bound: i64 },
    GluingClosure { seed_bound: i64, depth: usize, cap: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusFilter {
    All,
    Symmetric,
    Free,
    CompleteIntersection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CorpusCheck {
    /// Every ideal `(0, s)` for `s` a gap.
    TwoGenerated,
    /// Every ideal up to shift, optionally capped in generator count.
    AllIdeals { max_extra_gens: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub mode: CorpusMode,
    pub filter: CorpusFilter,
    pub check: CorpusCheck,
    /// Also search for an irreducible `(x;s;2)` for every gap and compare.
    pub cross_check: bool,
    /// Worker threads; 1 runs serially.
    pub jobs: usize,
}

impl CorpusSpec {
    pub fn new(mode: CorpusMode) -> Self {
        CorpusSpec {
            mode,
            filter: CorpusFilter::All,
            check: CorpusCheck::TwoGenerated,
            cross_check: false,
            jobs: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = match self.mode {
            CorpusMode::SymmetricBelow { bound } => bound < 1,
            CorpusMode::GluingClosure { seed_bound, depth, cap } => seed_bound < 1 || depth < 1 || cap < 2,
            CorpusMode::GenusTree { .. } => false,
        };
        if bad || self.jobs == 0 {
            return Err(Error::Parse(format!("invalid corpus parameters {:?}", self)));
        }
        Ok(())
    }

    /// The semigroups of the corpus, in a fixed order.
    pub fn semigroups(&self) -> Result<Vec<NumericalSemigroup>> {
        self.validate()?;
        let base = match self.mode {
            CorpusMode::GenusTree { max_genus } => genus_filtered(max_genus, |_| true),
            CorpusMode::SymmetricBelow { bound } => symmetric_below(bound),
            CorpusMode::GluingClosure { seed_bound, depth, cap } => {
                gluing_closure(&symmetric_below(seed_bound), depth, cap)?.all().cloned().collect()
            }
        };
        let filter = self.filter;
        Ok(base
            .into_iter()
            .filter(|s| match filter {
                CorpusFilter::All => true,
                CorpusFilter::Symmetric => s.is_symmetric().unwrap_or(false),
                CorpusFilter::Free => detect_free(s).is_some(),
                CorpusFilter::CompleteIntersection => detect_complete_intersection(s).is_some(),
            })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub semigroup: Vec<i64>,
    pub ideal: Vec<i64>,
}

impl Counterexample {
    /// Re-runs the criterion; `true` when the ideal is still not HW.
    pub fn replays(&self) -> Result<bool> {
        let s = Arc::new(NumericalSemigroup::from_generators(&self.semigroup)?);
        let a = RelativeIdeal::from_generators(&s, &self.ideal)?;
        Ok(is_huneke_wiegand(&a).verdict == Verdict::NotHW)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemigroupRecord {
    pub generators: Vec<i64>,
    pub frobenius: i64,
    pub genus: u64,
    pub gaps_checked: u64,
    pub ideals_checked: u64,
    pub all_hw: bool,
    /// Two-generated ideals `(0, s)` with their witness elements.
    pub witnesses: Vec<(i64, Option<i64>)>,
    pub counterexamples: Vec<Counterexample>,
    /// Gaps where the sequence search and the ideal verdict disagree.
    pub disagreements: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub spec: CorpusSpec,
    pub semigroups: u64,
    pub ideals_checked: u64,
    pub all_hw: bool,
    pub counterexamples: Vec<Counterexample>,
    pub disagreements: u64,
    pub records: Vec<SemigroupRecord>,
    pub wall_time_ms: u128,
}

impl VerificationReport {
    /// Every field except the wall time.
    pub fn same_results(&self, other: &VerificationReport) -> bool {
        self.semigroups == other.semigroups
            && self.ideals_checked == other.ideals_checked
            && self.all_hw == other.all_hw
            && self.counterexamples == other.counterexamples
            && self.disagreements == other.disagreements
            && self.records == other.records
    }

    /// One JSON object per semigroup, keys sorted.
    pub fn write_jsonl(&self, mut out: impl Write) -> Result<()> {
        for r in &self.records {
            let value = serde_json::to_value(r).map_err(|e| Error::InternalInconsistency(e.to_string()))?;
            writeln!(out, "{value}")?;
        }
        Ok(())
    }
}

fn verify_one(s: &NumericalSemigroup, spec: &CorpusSpec) -> Result<SemigroupRecord> {
    let s = Arc::new(s.clone());
    let mut record = SemigroupRecord {
        generators: s.generators().to_vec(),
        frobenius: s.frobenius(),
        genus: s.genus(),
        gaps_checked: 0,
        ideals_checked: 0,
        all_hw: true,
        witnesses: Vec::new(),
        counterexamples: Vec::new(),
        disagreements: Vec::new(),
    };
    let two = check_all_two_generated(&s);
    record.gaps_checked = two.reports.len() as u64;
    for r in &two.reports {
        let gap = r.ideal.generators()[1];
        record.witnesses.push((gap, r.witness_element));
        if r.verdict == Verdict::NotHW {
            record.counterexamples.push(Counterexample {
                semigroup: record.generators.clone(),
                ideal: r.ideal.generators().to_vec(),
            });
        }
        if spec.cross_check {
            let search = find_irreducible_two_step(&s, gap, None)?;
            if search.found != r.verdict.is_hw() {
                record.disagreements.push(gap);
            }
        }
    }
    match spec.check {
        CorpusCheck::TwoGenerated => record.ideals_checked = record.gaps_checked,
        CorpusCheck::AllIdeals { max_extra_gens } => {
            let scan = check_all_ideals(&s, max_extra_gens);
            record.ideals_checked = scan.ideals;
            for r in &scan.not_hw {
                let c = Counterexample {
                    semigroup: record.generators.clone(),
                    ideal: r.ideal.generators().to_vec(),
                };
                if !record.counterexamples.contains(&c) {
                    record.counterexamples.push(c);
                }
            }
        }
    }
    record.all_hw = record.counterexamples.is_empty();
    Ok(record)
}

/// Runs the configured checks on every semigroup of the corpus. The first
/// [`Error::BoundInsufficient`] from the sequence search aborts the run.
pub fn verify_hw_corpus(spec: &CorpusSpec) -> Result<VerificationReport> {
    let started = Instant::now();
    let corpus = spec.semigroups()?;
    let records: Vec<SemigroupRecord> = if spec.jobs == 1 {
        corpus.iter().map(|s| verify_one(s, spec)).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.jobs)
            .build()
            .map_err(|e| Error::InternalInconsistency(e.to_string()))?;
        pool.install(|| corpus.par_iter().map(|s| verify_one(s, spec)).collect::<Result<_>>())?
    };
    let counterexamples: Vec<Counterexample> = records.iter().flat_map(|r| r.counterexamples.clone()).collect();
    Ok(VerificationReport {
        spec: spec.clone(),
        semigroups: records.len() as u64,
        ideals_checked: records.iter().map(|r| r.ideals_checked).sum(),
        all_hw: counterexamples.is_empty(),
        disagreements: records.iter().map(|r| r.disagreements.len() as u64).sum(),
        counterexamples,
        records,
        wall_time_ms: started.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    #[test]
    fn small_genus_counts() {
        assert_eq!(genus_counts(7), vec![1, 1, 2, 4, 7, 12, 23, 39]);
        let zero: Vec<_> = genus_tree(0).collect();
        assert_eq!(zero, vec![NumericalSemigroup::natural()]);
    }

    #[test]
    fn genus_tree_has_no_duplicates() {
        let all: Vec<_> = genus_tree(9).collect();
        let keys: HashSet<Vec<i64>> = all.iter().map(|s| s.generators().to_vec()).collect();
        assert_eq!(keys.len(), all.len());
        assert_eq!(genus_filtered(9, |_| true).len(), all.len());
    }

    #[test]
    fn symmetric_examples() {
        assert_eq!(symmetric_below(2), vec![sg(&[2, 3])]);
        let f7: Vec<_> = symmetric_below(8).into_iter().filter(|s| s.frobenius() == 7).collect();
        assert_eq!(f7, vec![sg(&[2, 9]), sg(&[3, 5]), sg(&[4, 5, 6])]);
        assert!(symmetric_below(20).iter().all(|s| s.is_symmetric().unwrap()));
    }

    #[test]
    fn closure_examples() {
        let seeds = [sg(&[2, 3]), NumericalSemigroup::natural()];
        let c = gluing_closure(&seeds, 1, 10).unwrap();
        assert!(c.all().any(|s| s.generators() == [4, 6, 9]));
        let zero = gluing_closure(&seeds, 0, 10).unwrap();
        assert_eq!(zero.all().count(), 2);
        assert!(c.all().all(|s| s.is_symmetric().unwrap()));
    }

    #[test]
    fn corpus_runs_are_deterministic() {
        let mut spec = CorpusSpec::new(CorpusMode::SymmetricBelow { bound: 16 });
        spec.cross_check = true;
        let serial = verify_hw_corpus(&spec).unwrap();
        spec.jobs = 4;
        let parallel = verify_hw_corpus(&spec).unwrap();
        assert!(serial.same_results(&parallel));
        assert!(serial.all_hw);
        assert_eq!(serial.disagreements, 0);
        let mut buf = Vec::new();
        serial.write_jsonl(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count() as u64, serial.semigroups);
    }

    #[test]
    fn empty_corpus_is_vacuous() {
        let mut spec = CorpusSpec::new(CorpusMode::GenusTree { max_genus: 0 });
        spec.filter = CorpusFilter::Symmetric;
        let report = verify_hw_corpus(&spec).unwrap();
        // N is symmetric, but contributes no gaps.
        assert_eq!(report.ideals_checked, 0);
        assert!(report.all_hw);
    }
}
