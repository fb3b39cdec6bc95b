//! Seeded generators of random test instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::homology::SimplicialComplex;
use crate::lcm_lattice::LcmLattice;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::poset::{FinitePoset, PosetMap};

/// A minimized ideal with `1..=max_gens` generators before minimization,
/// each a nonconstant monomial with exponents at most `max_exp`.
pub fn ideal<R: Rng>(rng: &mut R, nvars: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    let r = rng.gen_range(1..=max_gens);
    let gens = (0..r)
        .map(|_| loop {
            let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
            if e.iter().any(|&x| x > 0) {
                break Monomial::new(e);
            }
        })
        .collect();
    let vars = (1..=nvars).map(|i| format!("x{i}")).collect();
    MonomialIdeal::new(vars, gens).expect("lengths match").minimize().0
}

/// A minimized strongly generic ideal: in each variable the nonzero
/// exponents of distinct generators are distinct.
pub fn strongly_generic_ideal<R: Rng>(rng: &mut R, nvars: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    loop {
        let r = rng.gen_range(1..=max_gens);
        let mut exps = vec![vec![0u32; nvars]; r];
        for v in 0..nvars {
            let mut values: Vec<u32> = (1..=max_exp.max(r as u32)).collect();
            values.shuffle(rng);
            for (g, row) in exps.iter_mut().enumerate() {
                if rng.gen_bool(0.7) {
                    row[v] = values[g];
                }
            }
        }
        if exps.iter().any(|e| e.iter().all(|&x| x == 0)) {
            continue;
        }
        let vars = (1..=nvars).map(|i| format!("x{i}")).collect();
        let gens = exps.into_iter().map(Monomial::new).collect();
        return MonomialIdeal::new(vars, gens).expect("lengths match").minimize().0;
    }
}

/// A ranked poset built level by level: every element of a level covers a
/// nonempty subset of the previous level and is covered from the next one.
/// With `with_top`, a greatest element is added above the last level.
pub fn ranked_poset<R: Rng>(rng: &mut R, max_elems: usize, with_top: bool) -> FinitePoset {
    let budget = max_elems.saturating_sub(1 + usize::from(with_top)).max(1);
    let mut levels: Vec<Vec<usize>> = vec![vec![0]];
    let mut next = 1;
    let mut covers = Vec::new();
    while next <= budget {
        let width = rng.gen_range(2..=5).min(budget + 1 - next);
        let prev = levels.last().expect("nonempty").clone();
        let level: Vec<usize> = (next..next + width).collect();
        next += width;
        for &x in &level {
            let mut below: Vec<usize> = prev.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            if below.is_empty() {
                below.push(*prev.choose(rng).expect("nonempty"));
            }
            covers.extend(below.into_iter().map(|b| (b, x)));
        }
        for &b in &prev {
            if !covers.iter().any(|&(lo, _)| lo == b) {
                covers.push((b, *level.choose(rng).expect("nonempty")));
            }
        }
        levels.push(level);
    }
    if with_top {
        let top = next;
        next += 1;
        for &x in levels.last().expect("nonempty") {
            covers.push((x, top));
        }
    }
    let labels = (0..next).map(|i| format!("p{i}")).collect();
    FinitePoset::from_covers(labels, &covers).expect("levelled covers form a poset")
}

/// A poset with a least element that is not ranked, from a random DAG.
pub fn nonranked_poset<R: Rng>(rng: &mut R, max_elems: usize) -> FinitePoset {
    loop {
        let n = rng.gen_range(4..=max_elems.max(4));
        let mut relations: Vec<(usize, usize)> = (1..n).map(|j| (0, j)).collect();
        for i in 1..n {
            for j in i + 1..n {
                if rng.gen_bool(0.3) {
                    relations.push((i, j));
                }
            }
        }
        let labels = (0..n).map(|i| format!("q{i}")).collect();
        let p = FinitePoset::from_relations(labels, &relations).expect("DAG with a least element");
        if !p.is_ranked() {
            return p;
        }
    }
}

/// A finite lattice: either an LCM-lattice of a random ideal or the family
/// of intersections of random subsets of a small ground set.
pub fn lattice<R: Rng>(rng: &mut R, max_elems: usize) -> FinitePoset {
    loop {
        let p = if rng.gen_bool(0.5) {
            let n = rng.gen_range(2..=4);
            let i = ideal(rng, n, 5, 2);
            LcmLattice::build(&i, 22).expect("small ideal").poset().clone()
        } else {
            intersection_lattice(rng)
        };
        if p.len() <= max_elems && p.len() >= 2 {
            return p;
        }
    }
}

fn intersection_lattice<R: Rng>(rng: &mut R) -> FinitePoset {
    let ground = rng.gen_range(3..=5u32);
    let full: u32 = (1 << ground) - 1;
    let mut family: BTreeSet<u32> = BTreeSet::new();
    family.insert(full);
    for _ in 0..rng.gen_range(2..=6) {
        family.insert(rng.gen_range(0..full));
    }
    loop {
        let sets: Vec<u32> = family.iter().copied().collect();
        let before = family.len();
        for &a in &sets {
            for &b in &sets {
                family.insert(a & b);
            }
        }
        if family.len() == before {
            break;
        }
    }
    let mut sets: Vec<u32> = family.into_iter().collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    let labels = sets.iter().map(|s| format!("s{s:b}")).collect();
    FinitePoset::from_order(labels, |x, y| sets[x] & !sets[y] == 0).expect("inclusion order")
}

/// A monotone map with `η(0̂) = 0` and nonzero atoms: `η(x)` is the
/// componentwise maximum of random nonzero vectors attached to the nonzero
/// elements below `x`.
pub fn poset_map<R: Rng>(rng: &mut R, p: &FinitePoset, nvars: usize, max_exp: u32) -> PosetMap {
    let weights: Vec<Monomial> = (0..p.len())
        .map(|_| loop {
            let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
            if e.iter().any(|&x| x > 0) {
                break Monomial::new(e);
            }
        })
        .collect();
    let images = (0..p.len())
        .map(|x| {
            (0..p.len())
                .filter(|&y| y != p.bottom() && p.leq(y, x))
                .fold(Monomial::one(nvars), |acc, y| acc.lcm_unchecked(&weights[y]))
        })
        .collect();
    PosetMap::new(p, images).expect("construction is monotone")
}

/// A complex generated by random facets on `nverts` vertices.
pub fn complex<R: Rng>(rng: &mut R, nverts: u32, max_facets: usize, max_dim: usize) -> SimplicialComplex {
    let count = rng.gen_range(0..=max_facets);
    let facets: Vec<Vec<u32>> = (0..count)
        .map(|_| {
            let mut verts: Vec<u32> = (0..nverts).collect();
            verts.shuffle(rng);
            let size = rng.gen_range(1..=(max_dim + 1).min(nverts as usize));
            let mut f = verts[..size].to_vec();
            f.sort_unstable();
            f
        })
        .collect();
    SimplicialComplex::from_facets(facets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::is_strongly_generic;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let i = strongly_generic_ideal(&mut rng, 3, 6, 5);
            assert!(is_strongly_generic(&i) && i.is_minimal() && !i.is_empty());
            let top = rng.gen_bool(0.5);
            let p = ranked_poset(&mut rng, 25, top);
            assert!(p.is_ranked() && p.len() <= 25);
            assert!(!nonranked_poset(&mut rng, 9).is_ranked());
            assert!(lattice(&mut rng, 40).is_lattice());
            let eta = poset_map(&mut rng, &p, 3, 2);
            assert_eq!(eta.images().len(), p.len());
        }
    }

    #[test]
    fn seeds_reproduce() {
        let a = ideal(&mut ChaCha8Rng::seed_from_u64(3), 4, 6, 4);
        let b = ideal(&mut ChaCha8Rng::seed_from_u64(3), 4, 6, 4);
        assert_eq!(a, b);
    }
}
