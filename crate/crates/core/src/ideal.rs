//! Relative ideals of a numerical semigroup and their arithmetic.
//!
//! Every ideal is kept as its unique minimal generating set. Binary
//! operations materialize membership on a finite window: nothing lies below
//! the window and everything at or above its upper end is a member.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{AperySet, NumericalSemigroup};

#[derive(Clone)]
pub struct RelativeIdeal {
    ambient: Arc<NumericalSemigroup>,
    generators: Vec<i64>,
}

impl PartialEq for RelativeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && same_ambient(&self.ambient, &other.ambient)
    }
}

impl Eq for RelativeIdeal {}

impl std::hash::Hash for RelativeIdeal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.generators().hash(state);
        self.generators.hash(state);
    }
}

impl fmt::Debug for RelativeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.ambient)
    }
}

impl fmt::Display for RelativeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

fn same_ambient(a: &Arc<NumericalSemigroup>, b: &Arc<NumericalSemigroup>) -> bool {
    Arc::ptr_eq(a, b) || a.generators() == b.generators()
}

impl RelativeIdeal {
    /// `gens + S`, reduced to its minimal generating set.
    pub fn from_generators(ambient: &Arc<NumericalSemigroup>, gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        Ok(Self::minimalize(ambient.clone(), gens.to_vec()))
    }

    /// `x + S`.
    pub fn principal(ambient: &Arc<NumericalSemigroup>, x: i64) -> Self {
        RelativeIdeal {
            ambient: ambient.clone(),
            generators: vec![x],
        }
    }

    /// The ambient semigroup viewed as the ideal `(0)`.
    pub fn whole(ambient: &Arc<NumericalSemigroup>) -> Self {
        Self::principal(ambient, 0)
    }

    /// Trusts the caller that `gens` is sorted and minimal.
    pub(crate) fn from_minimal_unchecked(ambient: Arc<NumericalSemigroup>, generators: Vec<i64>) -> Self {
        debug_assert!(generators.windows(2).all(|w| w[0] < w[1]));
        RelativeIdeal { ambient, generators }
    }

    fn minimalize(ambient: Arc<NumericalSemigroup>, mut gens: Vec<i64>) -> Self {
        gens.sort_unstable();
        gens.dedup();
        let keep: Vec<i64> = gens
            .iter()
            .copied()
            .filter(|&g| !gens.iter().any(|&h| h < g && ambient.contains(g - h)))
            .collect();
        RelativeIdeal {
            ambient,
            generators: keep,
        }
    }

    /// Builds an ideal from exact membership on `[lo, hi)`; below `lo`
    /// nothing is a member and from `hi` on everything is.
    fn from_window(ambient: &Arc<NumericalSemigroup>, lo: i64, hi: i64, member: impl Fn(i64) -> bool) -> Self {
        let hi = hi.max(lo);
        let m = ambient.multiplicity();
        // A minimal generator x has x - m outside the set, so x < hi + m.
        let end = hi + m;
        let window: Vec<bool> = (lo..end).map(|x| x >= hi || member(x)).collect();
        let at = |x: i64| x >= lo && (x >= end || window[(x - lo) as usize]);
        let gens: Vec<i64> = (lo..end)
            .filter(|&x| at(x) && ambient.generators().iter().all(|&n| !at(x - n)))
            .collect();
        RelativeIdeal {
            ambient: ambient.clone(),
            generators: gens,
        }
    }

    pub fn ambient(&self) -> &Arc<NumericalSemigroup> {
        &self.ambient
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_principal(&self) -> bool {
        self.generators.len() == 1
    }

    /// Smallest element.
    pub fn min(&self) -> i64 {
        self.generators[0]
    }

    /// `max(generators) + F + 1`: every integer from here on is a member.
    pub fn conductor(&self) -> i64 {
        *self.generators.last().expect("non-empty") + self.ambient.frobenius() + 1
    }

    #[inline]
    pub fn contains(&self, x: i64) -> bool {
        self.generators.iter().any(|&g| self.ambient.contains(x - g))
    }

    /// Members in `[lo, hi)`.
    pub fn elements_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..hi).filter(|&x| self.contains(x)).collect()
    }

    fn check_ambient(&self, other: &RelativeIdeal) -> Result<()> {
        if same_ambient(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// `A + B`.
    pub fn add(&self, other: &RelativeIdeal) -> Result<RelativeIdeal> {
        self.check_ambient(other)?;
        let sums: Vec<i64> = self
            .generators
            .iter()
            .flat_map(|&x| other.generators.iter().map(move |&y| x + y))
            .collect();
        Ok(Self::minimalize(self.ambient.clone(), sums))
    }

    /// `A u B`.
    pub fn union(&self, other: &RelativeIdeal) -> Result<RelativeIdeal> {
        self.check_ambient(other)?;
        let gens: Vec<i64> = self.generators.iter().chain(&other.generators).copied().collect();
        Ok(Self::minimalize(self.ambient.clone(), gens))
    }

    /// `A n B`.
    pub fn intersect(&self, other: &RelativeIdeal) -> Result<RelativeIdeal> {
        self.check_ambient(other)?;
        let lo = self.min().max(other.min());
        let hi = self.conductor().max(other.conductor());
        Ok(Self::from_window(&self.ambient, lo, hi, |x| {
            self.contains(x) && other.contains(x)
        }))
    }

    /// `A -_Z B = {z | z + B in A}`, checked against the minimal generators
    /// of `B` only.
    pub fn subtract(&self, other: &RelativeIdeal) -> Result<RelativeIdeal> {
        self.check_ambient(other)?;
        let lo = self.min() - other.min();
        let hi = self.conductor() - other.min();
        Ok(Self::from_window(&self.ambient, lo, hi, |z| {
            other.generators.iter().all(|&y| self.contains(z + y))
        }))
    }

    /// `A* = S -_Z A`.
    pub fn dual(&self) -> RelativeIdeal {
        RelativeIdeal::whole(&self.ambient)
            .subtract(self)
            .expect("same ambient")
    }

    /// `x + A`.
    pub fn shift(&self, x: i64) -> RelativeIdeal {
        RelativeIdeal {
            ambient: self.ambient.clone(),
            generators: self.generators.iter().map(|&g| g + x).collect(),
        }
    }

    /// Equality of minimal generating sets.
    pub fn equals(&self, other: &RelativeIdeal) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.generators == other.generators)
    }

    /// Whether `self` is a subset of `other`.
    pub fn is_subset(&self, other: &RelativeIdeal) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.generators.iter().all(|&g| other.contains(g)))
    }

    /// `Ap(A, z)` for `z` a nonzero element of the ambient semigroup.
    pub fn apery(&self, z: i64) -> Result<AperySet> {
        if z <= 0 || !self.ambient.contains(z) {
            return Err(Error::ModulusNotInSemigroup(z));
        }
        Ok(AperySet::scan(z, self.min(), |x| self.contains(x)))
    }

    /// Smallest element of `self \ other` below the larger conductor, if any.
    pub fn first_difference(&self, other: &RelativeIdeal) -> Result<Option<i64>> {
        self.check_ambient(other)?;
        let hi = self.conductor().max(other.conductor());
        Ok((self.min()..hi).find(|&x| self.contains(x) && !other.contains(x)))
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            ambient: self.ambient.generators().to_vec(),
            generators: self.generators.clone(),
        }
    }
}

/// JSON shape of an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub ambient: Vec<i64>,
    pub generators: Vec<i64>,
}

impl Serialize for RelativeIdeal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl IdealJson {
    pub fn build(&self) -> Result<RelativeIdeal> {
        let ambient = Arc::new(NumericalSemigroup::from_generators(&self.ambient)?);
        RelativeIdeal::from_generators(&ambient, &self.generators)
    }
}

/// One representative per translation class: `(0)` first, then `{0} u T`
/// for every non-empty antichain `T` of gaps, lexicographically by `T`.
pub struct IdealsUpToShift {
    ambient: Arc<NumericalSemigroup>,
    gaps: Vec<i64>,
    max_extra: usize,
    // Chosen gap indices, and for each depth the next index to try.
    chosen: Vec<usize>,
    next: Vec<usize>,
    started: bool,
}

pub fn enumerate_ideals_up_to_shift(ambient: &Arc<NumericalSemigroup>, max_extra_gens: Option<usize>) -> IdealsUpToShift {
    IdealsUpToShift {
        ambient: ambient.clone(),
        gaps: ambient.gaps(),
        max_extra: max_extra_gens.unwrap_or(usize::MAX),
        chosen: Vec::new(),
        next: vec![0],
        started: false,
    }
}

impl IdealsUpToShift {
    fn compatible(&self, idx: usize) -> bool {
        let t = self.gaps[idx];
        self.chosen.iter().all(|&c| !self.ambient.contains(t - self.gaps[c]))
    }

    fn current(&self) -> RelativeIdeal {
        let mut gens = Vec::with_capacity(self.chosen.len() + 1);
        gens.push(0);
        gens.extend(self.chosen.iter().map(|&c| self.gaps[c]));
        RelativeIdeal::from_minimal_unchecked(self.ambient.clone(), gens)
    }
}

impl Iterator for IdealsUpToShift {
    type Item = RelativeIdeal;

    fn next(&mut self) -> Option<RelativeIdeal> {
        if !self.started {
            self.started = true;
            return Some(self.current());
        }
        loop {
            let depth = self.next.len() - 1;
            let start = self.next[depth];
            let found = if self.chosen.len() < self.max_extra {
                (start..self.gaps.len()).find(|&i| self.compatible(i))
            } else {
                None
            };
            match found {
                Some(i) => {
                    self.next[depth] = i + 1;
                    self.chosen.push(i);
                    self.next.push(i + 1);
                    return Some(self.current());
                }
                None => {
                    if depth == 0 {
                        return None;
                    }
                    self.next.pop();
                    self.chosen.pop();
                }
            }
        }
    }
}
