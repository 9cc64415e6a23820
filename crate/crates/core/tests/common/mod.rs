//! Random instance builders and brute-force oracles shared by the
//! integration suites. Nothing here calls into the library's algorithms
//! except to construct the objects under test.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use hwsg::enumeration::symmetric_below;
use hwsg::gluing::{glue, Gluing};
use hwsg::semigroup::gcd;
use hwsg::{NumericalSemigroup, RelativeIdeal};
use rand::rngs::StdRng;
use rand::Rng;

/// Membership table over `[0, limit]` by closure under addition.
pub fn members(gens: &[i64], limit: i64) -> Vec<bool> {
    let mut m = vec![false; (limit + 1) as usize];
    m[0] = true;
    for x in 1..=limit {
        m[x as usize] = gens.iter().any(|&g| g <= x && m[(x - g) as usize]);
    }
    m
}

/// Brute-force membership for a semigroup with small Frobenius number.
pub struct Oracle {
    table: Vec<bool>,
}

impl Oracle {
    pub fn new(gens: &[i64]) -> Self {
        let big = gens.iter().max().copied().unwrap_or(1);
        Oracle { table: members(gens, big * big + 2 * big) }
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && (x as usize >= self.table.len() || self.table[x as usize])
    }

    pub fn frobenius(&self) -> i64 {
        (0..self.table.len() as i64).rev().find(|&x| !self.contains(x)).unwrap_or(-1)
    }
}

/// `(x; s; 2)` is irreducible when no `y, y+s` and `x-y, x-y+s` all lie in `S`.
pub fn brute_irreducible(o: &Oracle, x: i64, s: i64) -> bool {
    let terms_in = [x, x + s, x + 2 * s].iter().all(|&t| o.contains(t));
    terms_in && !(1..x).any(|y| o.contains(y) && o.contains(y + s) && o.contains(x - y) && o.contains(x - y + s))
}

/// Numbers of semigroups with genus `0..=max` by scanning gap sets inside
/// `[1, 2g - 1]` and testing closure of the complement.
pub fn genus_counts_by_gap_sets(max: usize) -> Vec<u64> {
    (0..=max)
        .map(|g| {
            if g == 0 {
                return 1;
            }
            let top = 2 * g - 1;
            let mut count = 0;
            for mask in 0u64..(1u64 << top) {
                if mask.count_ones() as usize != g {
                    continue;
                }
                let gap = |x: usize| x >= 1 && x <= top && mask >> (x - 1) & 1 == 1;
                let closed = (1..=top).all(|a| gap(a) || (1..=top - a).all(|b| gap(b) || !gap(a + b)));
                if closed {
                    count += 1;
                }
            }
            count
        })
        .collect()
}

/// Gap sets of symmetric semigroups with Frobenius number `f`, picking one
/// element of each pair `{x, f - x}` and keeping the closed choices.
pub fn symmetric_gap_sets(f: usize) -> Vec<BTreeSet<usize>> {
    let pairs: Vec<(usize, usize)> = (1..f.div_ceil(2)).map(|x| (x, f - x)).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut gaps: BTreeSet<usize> = BTreeSet::from([f]);
        for (i, &(x, y)) in pairs.iter().enumerate() {
            gaps.insert(if mask >> i & 1 == 1 { x } else { y });
        }
        let closed = (1..f).all(|a| gaps.contains(&a) || (1..f - a + 1).all(|b| gaps.contains(&b) || !gaps.contains(&(a + b))));
        if closed {
            out.push(gaps);
        }
    }
    out
}

pub fn random_semigroup(rng: &mut StdRng) -> Arc<NumericalSemigroup> {
    loop {
        let m = rng.random_range(2..=6);
        let extra = rng.random_range(1..=3);
        let mut gens = vec![m];
        for _ in 0..extra {
            gens.push(rng.random_range(m + 1..=3 * m + 2));
        }
        if gens.iter().fold(0, |a, &b| gcd(a, b)) == 1 {
            let s = NumericalSemigroup::from_generators(&gens).unwrap();
            if s.frobenius() <= 40 {
                return Arc::new(s);
            }
        }
    }
}

pub fn random_symmetric(rng: &mut StdRng, pool: &[NumericalSemigroup]) -> Arc<NumericalSemigroup> {
    Arc::new(pool[rng.random_range(0..pool.len())].clone())
}

pub fn symmetric_pool(bound: i64) -> Vec<NumericalSemigroup> {
    let mut v = symmetric_below(bound);
    v.push(NumericalSemigroup::natural());
    v
}

pub fn random_ideal(rng: &mut StdRng, s: &Arc<NumericalSemigroup>) -> RelativeIdeal {
    let n = rng.random_range(1..=3);
    let hi = s.frobenius().max(1) + 4;
    let gens: Vec<i64> = (0..n).map(|_| rng.random_range(-4..=hi)).collect();
    RelativeIdeal::from_generators(s, &gens).unwrap()
}

/// A gluing of two random semigroups with multipliers in `[2, 12]`.
pub fn random_gluing(rng: &mut StdRng, left: impl Fn(&mut StdRng) -> Arc<NumericalSemigroup>, right: impl Fn(&mut StdRng) -> Arc<NumericalSemigroup>) -> Gluing {
    loop {
        let g1 = left(rng);
        let g2 = right(rng);
        let a1 = rng.random_range(2..=12);
        let a2 = rng.random_range(2..=12);
        if gcd(a1, a2) == 1 && g2.contains(a1) && g1.contains(a2) {
            if let Ok(g) = glue(&g1, a1, &g2, a2) {
                if g.glued().frobenius() <= 400 {
                    return g;
                }
            }
        }
    }
}
