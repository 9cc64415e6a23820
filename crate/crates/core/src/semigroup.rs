//! Numerical semigroups: construction from generators, membership, gaps,
//! symmetry, Apéry sets and delta sets.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitTable;
use crate::error::{Error, Result};

/// Largest Frobenius number (and multiplicity) accepted at construction.
pub const MAX_FROBENIUS: i64 = 1 << 28;

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A cofinite submonoid of the non-negative integers.
///
/// Membership below the Frobenius number is answered from a bit table;
/// everything above it is a member. `N` itself is encoded with Frobenius
/// number `-1` and an empty table.
#[derive(Clone)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    frobenius: i64,
    genus: u64,
    members: BitTable,
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for NumericalSemigroup {}

impl std::hash::Hash for NumericalSemigroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.generators.hash(state);
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

impl NumericalSemigroup {
    /// The semigroup of all non-negative integers.
    pub fn natural() -> Self {
        NumericalSemigroup {
            generators: vec![1],
            frobenius: -1,
            genus: 0,
            members: BitTable::new(0),
        }
    }

    /// Builds `<gens>` and recomputes its minimal generating set.
    pub fn from_generators(gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&bad) = gens.iter().find(|&&g| g <= 0) {
            return Err(Error::NonPositiveGenerator(bad));
        }
        let mut gens = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let d = gens.iter().fold(0, |acc, &g| gcd(acc, g));
        if d != 1 {
            return Err(Error::NotCoprime { gcd: d });
        }
        let m = gens[0];
        if m == 1 {
            return Ok(Self::natural());
        }
        if m > MAX_FROBENIUS {
            return Err(Error::TooLarge {
                frobenius: m,
                limit: MAX_FROBENIUS,
            });
        }

        // Apéry set with respect to the multiplicity: shortest paths over
        // residues mod m, one edge per generator.
        let mu = m as usize;
        let mut dist = vec![i64::MAX; mu];
        dist[0] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0i64, 0usize)));
        while let Some(Reverse((d, r))) = heap.pop() {
            if d > dist[r] {
                continue;
            }
            for &g in &gens[1..] {
                let nr = (r + (g % m) as usize) % mu;
                let nd = d.saturating_add(g);
                if nd < dist[nr] {
                    dist[nr] = nd;
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        let max_ap = *dist.iter().max().expect("m >= 2");
        let frobenius = max_ap - m;
        if frobenius > MAX_FROBENIUS {
            return Err(Error::TooLarge {
                frobenius,
                limit: MAX_FROBENIUS,
            });
        }
        let genus: u64 = dist.iter().map(|&w| (w / m) as u64).sum();

        let mut members = BitTable::new((frobenius + 1) as usize);
        for x in 0..=frobenius {
            if x >= dist[(x % m) as usize] {
                members.set(x as usize, true);
            }
        }

        let mut semigroup = NumericalSemigroup {
            generators: Vec::new(),
            frobenius,
            genus,
            members,
        };

        // A minimal generator other than m lies in Ap(m) and is not a sum of
        // two nonzero Apéry elements.
        let mut apery: Vec<i64> = dist.clone();
        apery.sort_unstable();
        let mut minimal = vec![m];
        for &g in &gens[1..] {
            if dist[(g % m) as usize] != g {
                continue;
            }
            let decomposable = apery[1..]
                .iter()
                .take_while(|&&w| w < g)
                .any(|&w| semigroup.contains(g - w));
            if !decomposable {
                minimal.push(g);
            }
        }
        semigroup.generators = minimal;
        Ok(semigroup)
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    pub fn max_generator(&self) -> i64 {
        *self.generators.last().expect("non-empty")
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn is_natural(&self) -> bool {
        self.frobenius < 0
    }

    /// Smallest integer `c` with `[c, inf)` inside the semigroup.
    pub fn conductor(&self) -> i64 {
        self.frobenius + 1
    }

    #[inline]
    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            false
        } else if x > self.frobenius {
            true
        } else {
            self.members.get(x as usize)
        }
    }

    /// Gaps in increasing order.
    pub fn gaps(&self) -> Vec<i64> {
        (1..=self.frobenius).filter(|&x| !self.contains(x)).collect()
    }

    /// Symmetry via the genus count, cross-checked against the complement
    /// characterization `x in S <=> F - x not in S`.
    ///
    /// `N` is reported as symmetric.
    pub fn is_symmetric(&self) -> Result<bool> {
        if self.is_natural() {
            return Ok(true);
        }
        let f = self.frobenius;
        let by_genus = 2 * self.genus as i64 == f + 1;
        let by_complement = (0..=f).all(|x| self.contains(x) != self.contains(f - x));
        if by_genus != by_complement {
            return Err(Error::InternalInconsistency(format!(
                "symmetry criteria disagree for {self}: genus says {by_genus}, complement says {by_complement}"
            )));
        }
        Ok(by_genus)
    }

    /// `Ap(S, z)`; `z` must be a nonzero element.
    pub fn apery(&self, z: i64) -> Result<AperySet> {
        if z <= 0 || !self.contains(z) {
            return Err(Error::ModulusNotInSemigroup(z));
        }
        Ok(AperySet::scan(z, 0, |x| self.contains(x)))
    }

    /// Intersection of `Delta(Ap(S, a))` over every nonzero element `a`.
    ///
    /// Runs `a` over the members of `[1, 2F + max generator]`, then over a
    /// guard window of `multiplicity` further members; any change inside the
    /// guard is reported as [`Error::NonStabilized`].
    pub fn delta_intersection(&self) -> Result<DeltaIntersection> {
        let bound = 2 * self.frobenius + self.max_generator();
        let guard = self.multiplicity();
        let mut current: Option<Vec<i64>> = None;
        let mut last_change = None;
        let mut checked = 0usize;
        let mut a = 0;
        let mut guard_left = guard;
        loop {
            a += 1;
            if a > bound {
                if guard_left == 0 {
                    break;
                }
                guard_left -= 1;
            }
            if !self.contains(a) {
                continue;
            }
            checked += 1;
            let ap = self.apery(a)?;
            let next = match &current {
                None => delta_set(ap.elements()),
                Some(cur) => cur.iter().copied().filter(|&d| ap.has_difference(d)).collect(),
            };
            if current.as_ref().is_some_and(|cur| *cur != next) {
                last_change = Some(a);
            }
            current = Some(next);
        }
        if let Some(last_change) = last_change.filter(|&c| c > bound) {
            return Err(Error::NonStabilized { last_change });
        }
        Ok(DeltaIntersection {
            values: current.unwrap_or_default(),
            moduli_checked: checked,
            scanned_up_to: a - 1,
        })
    }

    /// Children in the semigroup tree: `S \ {g}` for each minimal generator
    /// `g > F(S)`, in increasing order of `g`.
    pub fn tree_children(&self) -> Vec<NumericalSemigroup> {
        self.generators
            .iter()
            .filter(|&&g| g > self.frobenius)
            .map(|&g| self.remove_large_generator(g))
            .collect()
    }

    /// `S \ {g}` for a minimal generator `g` above the Frobenius number.
    pub fn remove_minimal_generator(&self, g: i64) -> Result<NumericalSemigroup> {
        if g <= self.frobenius || !self.generators.contains(&g) {
            return Err(Error::HypothesisViolated(format!(
                "{g} is not a minimal generator above F = {}",
                self.frobenius
            )));
        }
        Ok(self.remove_large_generator(g))
    }

    fn remove_large_generator(&self, g: i64) -> NumericalSemigroup {
        let mut members = self.members.clone();
        members.resize((g + 1) as usize, true);
        members.set(g as usize, false);
        let mut child = NumericalSemigroup {
            generators: Vec::new(),
            frobenius: g,
            genus: self.genus + 1,
            members,
        };
        // Generators below g are untouched; new ones lie in (g, g + m'].
        let mut gens: Vec<i64> = self.generators.iter().copied().filter(|&h| h < g).collect();
        let m_new = gens.first().copied().unwrap_or(g + 1);
        for x in g + 1..=g + m_new {
            let decomposable = (1..=x / 2).any(|y| child.contains(y) && child.contains(x - y));
            if !decomposable {
                gens.push(x);
            }
        }
        child.generators = gens;
        child
    }

    pub fn summary(&self) -> SemigroupSummary {
        SemigroupSummary {
            generators: self.generators.clone(),
            frobenius: self.frobenius,
            genus: self.genus,
            symmetric: self.is_symmetric().unwrap_or(false),
        }
    }
}

/// Minimum element of a set in every residue class modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AperySet {
    modulus: i64,
    elements: Vec<i64>,
}

impl AperySet {
    /// Scans upward from `lo` (no member below it) keeping `w` with `w` in
    /// the set and `w - z` outside it, until one element per residue is found.
    pub(crate) fn scan(z: i64, lo: i64, contains: impl Fn(i64) -> bool) -> AperySet {
        let mut elements = Vec::with_capacity(z as usize);
        let mut w = lo;
        while (elements.len() as i64) < z {
            if contains(w) && (w - z < lo || !contains(w - z)) {
                elements.push(w);
            }
            w += 1;
        }
        AperySet {
            modulus: z,
            elements,
        }
    }

    pub(crate) fn from_parts(modulus: i64, mut elements: Vec<i64>) -> AperySet {
        elements.sort_unstable();
        AperySet { modulus, elements }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// The element congruent to `x` modulo the modulus.
    pub fn representative(&self, x: i64) -> i64 {
        let r = x.rem_euclid(self.modulus);
        *self
            .elements
            .iter()
            .find(|&&w| w.rem_euclid(self.modulus) == r)
            .expect("Apéry set covers every residue")
    }

    /// Whether `d` is a difference of two elements.
    pub fn has_difference(&self, d: i64) -> bool {
        self.elements.iter().any(|&e| self.contains(e + d))
    }

    pub fn delta(&self) -> Vec<i64> {
        delta_set(&self.elements)
    }
}

/// All positive pairwise differences of `set`, sorted.
pub fn delta_set(set: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for (i, &s) in set.iter().enumerate() {
        for &t in &set[..i] {
            if s != t {
                out.push((s - t).abs());
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaIntersection {
    pub values: Vec<i64>,
    pub moduli_checked: usize,
    pub scanned_up_to: i64,
}

/// JSON shape of a semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupSummary {
    pub generators: Vec<i64>,
    pub frobenius: i64,
    pub genus: u64,
    pub symmetric: bool,
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.summary().serialize(serializer)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SemigroupInput {
    List(Vec<i64>),
    Object { generators: Vec<i64> },
}

impl<'de> Deserialize<'de> for NumericalSemigroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let gens = match SemigroupInput::deserialize(deserializer)? {
            SemigroupInput::List(g) => g,
            SemigroupInput::Object { generators } => generators,
        };
        NumericalSemigroup::from_generators(&gens).map_err(serde::de::Error::custom)
    }
}

/// Parses `"<3,5>"`, `"3,5"`, `"3 5"` or a JSON array/object.
pub fn parse_integer_list(text: &str) -> Result<Vec<i64>> {
    let t = text.trim();
    if t.starts_with('{') || t.starts_with('[') {
        let value: serde_json::Value =
            serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        let list = match &value {
            serde_json::Value::Array(_) => &value,
            serde_json::Value::Object(map) => map
                .get("generators")
                .ok_or_else(|| Error::Parse("object has no \"generators\" field".into()))?,
            _ => return Err(Error::Parse("expected a list".into())),
        };
        return serde_json::from_value(list.clone()).map_err(|e| Error::Parse(e.to_string()));
    }
    let inner = t
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .or_else(|| t.strip_prefix('(').and_then(|s| s.strip_suffix(')')))
        .unwrap_or(t);
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        })
        .collect()
}
