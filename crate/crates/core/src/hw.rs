//! Deciding the Huneke-Wiegand property.
//!
//! A relative ideal `A` is Huneke-Wiegand when it is principal, or when some
//! partition of its minimal generators into `P`, `Q` gives
//! `(P + A*) n (Q + A*) != (P n Q) + A*`. Only generator partitions are
//! searched; arbitrary covers `P u Q = A` reduce to these.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{enumerate_ideals_up_to_shift, RelativeIdeal};
use crate::semigroup::NumericalSemigroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Principal,
    HW,
    NotHW,
}

impl Verdict {
    /// Principal ideals count as Huneke-Wiegand.
    pub fn is_hw(self) -> bool {
        !matches!(self, Verdict::NotHW)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HWReport {
    pub ideal: RelativeIdeal,
    pub verdict: Verdict,
    pub witness_partition: Option<Partition>,
    pub witness_element: Option<i64>,
    pub checked_partitions: u64,
    /// How the verdict was reached.
    pub criterion: &'static str,
}

const PARTITION_CRITERION: &str = "generator-partition";

/// Subsets of `{1, .., n-1}` by size, then lexicographically; index 0 is
/// always on the `P` side.
fn partitions(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.saturating_sub(1)).flat_map(move |k| Combinations::new(n - 1, k).map(|c| c.into_iter().map(|i| i + 1).collect()))
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Raw membership of `w` in `(P + A*)`, `(Q + A*)` and `(P n Q) + A*`,
/// computed from semigroup membership alone.
pub fn witness_memberships(a: &RelativeIdeal, partition: &Partition, w: i64) -> (bool, bool, bool) {
    let s = a.ambient();
    let in_dual = |z: i64| a.generators().iter().all(|&x| s.contains(z + x));
    let in_gen = |gens: &[i64], x: i64| gens.iter().any(|&g| s.contains(x - g));
    let in_p = partition.p.iter().any(|&p| in_dual(w - p));
    let in_q = partition.q.iter().any(|&q| in_dual(w - q));
    // z in A* needs z >= -min(A); w - z in P n Q needs w - z >= max(min P, min Q).
    let floor = partition.p[0].max(partition.q[0]);
    let in_meet = (-a.min()..=w - floor).any(|z| in_dual(z) && in_gen(&partition.p, w - z) && in_gen(&partition.q, w - z));
    (in_p, in_q, in_meet)
}

/// Checks a report's witness without using any ideal arithmetic.
pub fn verify_witness(report: &HWReport) -> bool {
    match (report.verdict, &report.witness_partition, report.witness_element) {
        (Verdict::HW, Some(part), Some(w)) => {
            let (p, q, meet) = witness_memberships(&report.ideal, part, w);
            p && q && !meet
        }
        (Verdict::HW, _, _) => false,
        (Verdict::Principal, None, None) => report.ideal.is_principal(),
        (Verdict::NotHW, None, None) => !report.ideal.is_principal(),
        _ => false,
    }
}

pub fn is_huneke_wiegand(a: &RelativeIdeal) -> HWReport {
    let n = a.len();
    if n == 1 {
        return HWReport {
            ideal: a.clone(),
            verdict: Verdict::Principal,
            witness_partition: None,
            witness_element: None,
            checked_partitions: 0,
            criterion: PARTITION_CRITERION,
        };
    }
    let s = a.ambient();
    let gens = a.generators();
    let dual = a.dual();
    let mut checked = 0;
    for side in partitions(n) {
        checked += 1;
        let mut in_p = vec![false; n];
        in_p[0] = true;
        for &i in &side {
            in_p[i] = true;
        }
        let p_gens: Vec<i64> = (0..n).filter(|&i| in_p[i]).map(|i| gens[i]).collect();
        let q_gens: Vec<i64> = (0..n).filter(|&i| !in_p[i]).map(|i| gens[i]).collect();
        let p = RelativeIdeal::from_minimal_unchecked(s.clone(), p_gens.clone());
        let q = RelativeIdeal::from_minimal_unchecked(s.clone(), q_gens.clone());
        let left = p
            .add(&dual)
            .and_then(|pd| q.add(&dual).and_then(|qd| pd.intersect(&qd)))
            .expect("same ambient");
        let right = p.intersect(&q).and_then(|m| m.add(&dual)).expect("same ambient");
        if left != right {
            let w = left.first_difference(&right).expect("same ambient");
            return HWReport {
                ideal: a.clone(),
                verdict: Verdict::HW,
                witness_partition: Some(Partition { p: p_gens, q: q_gens }),
                witness_element: w,
                checked_partitions: checked,
                criterion: PARTITION_CRITERION,
            };
        }
    }
    HWReport {
        ideal: a.clone(),
        verdict: Verdict::NotHW,
        witness_partition: None,
        witness_element: None,
        checked_partitions: checked,
        criterion: PARTITION_CRITERION,
    }
}

/// The two-generated ideal `(0, s)` for a gap `s`.
pub fn check_two_generated(semigroup: &Arc<NumericalSemigroup>, s: i64) -> Result<HWReport> {
    if s <= 0 || semigroup.contains(s) {
        return Err(Error::NotAGap(s));
    }
    let ideal = RelativeIdeal::from_minimal_unchecked(semigroup.clone(), vec![0, s]);
    Ok(is_huneke_wiegand(&ideal))
}

/// Like [`check_two_generated`], but reports `(0, s)` as principal when `s`
/// lies in the semigroup.
pub fn check_two_generated_lenient(semigroup: &Arc<NumericalSemigroup>, s: i64) -> Result<HWReport> {
    match check_two_generated(semigroup, s) {
        Err(Error::NotAGap(_)) if s >= 0 => {
            let ideal = RelativeIdeal::from_generators(semigroup, &[0, s])?;
            Ok(is_huneke_wiegand(&ideal))
        }
        other => other,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoGeneratedScan {
    pub semigroup: Vec<i64>,
    pub reports: Vec<HWReport>,
    pub all_hw: bool,
}

/// One report per gap.
pub fn check_all_two_generated(semigroup: &Arc<NumericalSemigroup>) -> TwoGeneratedScan {
    let reports: Vec<HWReport> = semigroup
        .gaps()
        .into_iter()
        .map(|s| check_two_generated(semigroup, s).expect("gap"))
        .collect();
    let all_hw = reports.iter().all(|r| r.verdict.is_hw());
    TwoGeneratedScan {
        semigroup: semigroup.generators().to_vec(),
        reports,
        all_hw,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealScan {
    pub semigroup: Vec<i64>,
    pub max_extra_gens: Option<usize>,
    pub ideals: u64,
    pub principal: u64,
    pub hw: u64,
    pub not_hw: Vec<HWReport>,
    pub all_hw: bool,
}

/// Runs the check over every ideal up to translation (bounded by
/// `max_extra_gens` generators beyond `0` when given).
pub fn check_all_ideals(semigroup: &Arc<NumericalSemigroup>, max_extra_gens: Option<usize>) -> IdealScan {
    let ideals: Vec<RelativeIdeal> = enumerate_ideals_up_to_shift(semigroup, max_extra_gens).collect();
    let verdicts: Vec<(Verdict, Option<HWReport>)> = ideals
        .par_iter()
        .map(|a| {
            let r = is_huneke_wiegand(a);
            let v = r.verdict;
            (v, (v == Verdict::NotHW).then_some(r))
        })
        .collect();
    let principal = verdicts.iter().filter(|(v, _)| *v == Verdict::Principal).count() as u64;
    let hw = verdicts.iter().filter(|(v, _)| *v == Verdict::HW).count() as u64;
    let not_hw: Vec<HWReport> = verdicts.into_iter().filter_map(|(_, r)| r).collect();
    IdealScan {
        semigroup: semigroup.generators().to_vec(),
        max_extra_gens,
        ideals: ideals.len() as u64,
        principal,
        hw,
        all_hw: not_hw.is_empty(),
        not_hw,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityWitness {
    pub element: i64,
    pub partition: Partition,
}

/// For symmetric `S`, `g` in `S \ {0}` with every difference of
/// `Ap(S, g) \ {0}` divisible by `a`, and `A` normalized so that `0` is its
/// smallest generator: when some generator is not a multiple of `a`, the
/// split into multiples and non-multiples of `a` has witness `F + g`.
///
/// Returns `Ok(None)` when every generator is a multiple of `a`.
pub fn apery_divisibility_witness(
    semigroup: &Arc<NumericalSemigroup>,
    g: i64,
    a: i64,
    ideal: &RelativeIdeal,
) -> Result<Option<DivisibilityWitness>> {
    let violated = |m: &str| Err(Error::HypothesisViolated(m.to_string()));
    if ideal.ambient().generators() != semigroup.generators() {
        return Err(Error::AmbientMismatch);
    }
    if semigroup.is_natural() || !semigroup.is_symmetric()? {
        return violated("semigroup is not symmetric");
    }
    if g <= 0 || !semigroup.contains(g) {
        return violated("g is not a nonzero element of the semigroup");
    }
    if a <= 0 {
        return violated("a is not positive");
    }
    if ideal.min() != 0 {
        return violated("ideal is not normalized to have 0 as smallest generator");
    }
    let ap = semigroup.apery(g)?;
    if ap.elements()[1..].iter().any(|&w| (w - ap.elements()[1]) % a != 0) {
        return violated("Delta(Ap(S, g) \\ {0}) is not contained in aN");
    }
    let (p, q): (Vec<i64>, Vec<i64>) = ideal.generators().iter().partition(|&&x| x % a == 0);
    if q.is_empty() {
        return Ok(None);
    }
    let element = semigroup.frobenius() + g;
    let partition = Partition { p, q };
    let (in_p, in_q, in_meet) = witness_memberships(ideal, &partition, element);
    if !(in_p && in_q && !in_meet) {
        return Err(Error::InternalInconsistency(format!(
            "F + g = {element} fails as a witness for {ideal:?}"
        )));
    }
    Ok(Some(DivisibilityWitness { element, partition }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[i64]) -> Arc<NumericalSemigroup> {
        Arc::new(NumericalSemigroup::from_generators(g).unwrap())
    }

    #[test]
    fn partition_order() {
        let all: Vec<Vec<usize>> = partitions(4).collect();
        assert_eq!(
            all,
            vec![vec![], vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(partitions(2).count(), 1);
        assert_eq!(partitions(6).count(), (1 << 5) - 1);
    }

    #[test]
    fn principal_ideal() {
        let s = sg(&[3, 5]);
        let r = is_huneke_wiegand(&RelativeIdeal::principal(&s, 4));
        assert_eq!(r.verdict, Verdict::Principal);
        assert!(verify_witness(&r));
    }

    #[test]
    fn three_five_zero_one() {
        let s = sg(&[3, 5]);
        let a = RelativeIdeal::from_generators(&s, &[0, 1]).unwrap();
        let r = is_huneke_wiegand(&a);
        assert_eq!(r.verdict, Verdict::HW);
        assert_eq!(r.witness_partition, Some(Partition { p: vec![0], q: vec![1] }));
        assert_eq!(r.witness_element, Some(9));
        assert_eq!(r.checked_partitions, 1);
        assert!(verify_witness(&r));

        // (6,10) + (5,9) = (11,15,19) misses 9.
        let meet = RelativeIdeal::principal(&s, 0).intersect(&RelativeIdeal::principal(&s, 1)).unwrap();
        let right = meet.add(&a.dual()).unwrap();
        assert!(!right.contains(9));
    }

    #[test]
    fn two_generated_checks() {
        let s = sg(&[3, 5]);
        assert_eq!(check_two_generated(&s, 1).unwrap().verdict, Verdict::HW);
        assert!(matches!(check_two_generated(&s, 3), Err(Error::NotAGap(3))));
        assert_eq!(check_two_generated_lenient(&s, 3).unwrap().verdict, Verdict::Principal);
        let t = sg(&[6, 15, 16, 25, 26]);
        assert_eq!(check_two_generated(&t, 9).unwrap().verdict, Verdict::HW);
        assert_eq!(check_two_generated(&t, 1).unwrap().verdict, Verdict::HW);
    }

    #[test]
    fn whole_semigroup_scans() {
        let scan = check_all_two_generated(&sg(&[2, 3]));
        assert_eq!(scan.reports.len(), 1);
        assert!(scan.all_hw);
        let scan = check_all_two_generated(&sg(&[1]));
        assert!(scan.reports.is_empty() && scan.all_hw);
        let scan = check_all_two_generated(&sg(&[6, 15, 16, 25, 26]));
        assert_eq!(scan.reports.len(), 18);
        assert!(scan.all_hw);
        assert!(scan.reports.iter().all(verify_witness));

        let n = check_all_ideals(&sg(&[1]), None);
        assert_eq!((n.ideals, n.principal), (1, 1));
        let t = check_all_ideals(&sg(&[2, 3]), None);
        assert_eq!((t.ideals, t.principal, t.hw), (2, 1, 1));
        assert!(t.all_hw);
    }

    #[test]
    fn divisibility_witness() {
        let s = sg(&[4, 6, 9]);
        assert_eq!(s.frobenius(), 11);
        let a = RelativeIdeal::from_generators(&s, &[0, 1]).unwrap();
        let w = apery_divisibility_witness(&s, 9, 2, &a).unwrap().unwrap();
        assert_eq!(w.element, 20);
        assert_eq!(w.partition, Partition { p: vec![0], q: vec![1] });

        let even = RelativeIdeal::from_generators(&s, &[0, 2]).unwrap();
        assert_eq!(apery_divisibility_witness(&s, 9, 2, &even).unwrap(), None);

        let ns = sg(&[3, 5, 7]);
        let b = RelativeIdeal::from_generators(&ns, &[0, 1]).unwrap();
        assert!(matches!(apery_divisibility_witness(&ns, 3, 2, &b), Err(Error::HypothesisViolated(_))));
        assert!(matches!(apery_divisibility_witness(&s, 4, 2, &a), Err(Error::HypothesisViolated(_))));
        assert!(matches!(apery_divisibility_witness(&s, 9, 2, &a.shift(1)), Err(Error::HypothesisViolated(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const SEMIGROUPS: &[&[i64]] = &[&[3, 5], &[4, 6, 9], &[5, 7, 9], &[4, 5, 11], &[3, 7, 11], &[5, 6, 13]];

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn witnesses_and_shift_invariance(k in 0..SEMIGROUPS.len(), gens in prop::collection::vec(-8i64..16, 1..5), x in -20i64..20) {
                let s = sg(SEMIGROUPS[k]);
                let a = RelativeIdeal::from_generators(&s, &gens).unwrap();
                let r = is_huneke_wiegand(&a);
                prop_assert!(verify_witness(&r));
                prop_assert_eq!(r.verdict == Verdict::Principal, a.is_principal());
                let shifted = is_huneke_wiegand(&a.shift(x));
                prop_assert_eq!(shifted.verdict, r.verdict);
            }
        }
    }
}
