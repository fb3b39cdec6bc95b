//! Finite posets with a least element, their Hasse diagrams, and the
//! simplicial complexes attached to intervals below an element.
//!
//! Two families of complexes are built here. For the order-complex family,
//! vertices are poset elements labelled by their position in the fixed
//! linear extension, `D_λ` is the order complex of `(0̂, λ]` and
//! `Δ_α = ⋃_{λ⋖α} D_λ` is the order complex of `(0̂, α)`. For the crosscut
//! family, vertices are atoms labelled by their index in [`FinitePoset::atoms`],
//! `G_λ` is the full simplex on the atoms below `λ` and `Γ_α = ⋃_{λ⋖α} G_λ`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{Face, SimplicialComplex};
use crate::monomial::Monomial;

/// Fixed-width bitset row used for the cached order relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitRow(Vec<u64>);

impl BitRow {
    fn new(n: usize) -> Self {
        BitRow(vec![0; n.div_ceil(64)])
    }
    pub(crate) fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn or_with(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
    fn and_not(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }
    fn and_with(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }
    fn is_subset_of(&self, other: &BitRow) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// A finite poset with a least element `0̂`.
///
/// Construction eagerly caches the Hasse diagram, the full order relation,
/// ranks and a linear extension (stable topological sort by input index);
/// the value is immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// `above[x]` = `{y : x <= y}`.
    above: Vec<BitRow>,
    /// `below[x]` = `{y : y <= x}`.
    below: Vec<BitRow>,
    bottom: usize,
    linear_extension: Vec<usize>,
    position: Vec<usize>,
    ranks: Vec<usize>,
}

impl FinitePoset {
    /// Builds from the Hasse diagram; each pair `(lower, upper)` must be a
    /// cover relation of the order it generates.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let p = Self::from_relations(labels, covers)?;
        for &(lo, hi) in covers {
            if !p.up[lo].contains(&hi) {
                return Err(Error::InvalidPoset(format!(
                    "{} < {} is not a cover relation",
                    p.labels[lo], p.labels[hi]
                )));
            }
        }
        Ok(p)
    }

    /// Builds from arbitrary strict relations `lower < upper`; the order is
    /// their transitive closure and the Hasse diagram its reduction.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidPoset("a poset needs a least element".into()));
        }
        let mut succ = vec![Vec::new(); n];
        for &(lo, hi) in relations {
            if lo >= n || hi >= n {
                return Err(Error::InvalidPoset(format!("relation ({lo}, {hi}) out of range")));
            }
            if lo == hi {
                return Err(Error::InvalidPoset(format!("{} < {} is reflexive", labels[lo], labels[hi])));
            }
            succ[lo].push(hi);
        }
        let order = stable_topological_sort(&succ)
            .ok_or_else(|| Error::InvalidPoset("relations contain a cycle".into()))?;
        let mut above = vec![BitRow::new(n); n];
        for &x in order.iter().rev() {
            above[x].set(x);
            for &y in &succ[x] {
                let row = above[y].clone();
                above[x].or_with(&row);
            }
        }
        Self::from_closure(labels, above, order)
    }

    /// Builds from an order predicate `leq(x, y)`, which must be a partial order.
    pub fn from_order<F: Fn(usize, usize) -> bool>(labels: Vec<String>, leq: F) -> Result<Self> {
        let n = labels.len();
        let mut relations = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && leq(x, y) {
                    if leq(y, x) {
                        return Err(Error::InvalidPoset(format!(
                            "{} and {} are mutually below each other",
                            labels[x], labels[y]
                        )));
                    }
                    relations.push((x, y));
                }
            }
        }
        Self::from_relations(labels, &relations)
    }

    fn from_closure(labels: Vec<String>, above: Vec<BitRow>, order: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        let mut position = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            position[x] = i;
        }
        // transitive reduction: covers of x are strict upper bounds not above another one
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for x in 0..n {
            let mut strict = above[x].clone();
            let mut me = BitRow::new(n);
            me.set(x);
            strict.and_not(&me);
            let mut covers = strict.clone();
            for z in strict.iter() {
                let mut beyond = above[z].clone();
                let mut zz = BitRow::new(n);
                zz.set(z);
                beyond.and_not(&zz);
                covers.and_not(&beyond);
            }
            let mut cs: Vec<usize> = covers.iter().collect();
            cs.sort_by_key(|&y| position[y]);
            for &y in &cs {
                down[y].push(x);
            }
            up[x] = cs;
        }
        for d in &mut down {
            d.sort_by_key(|&y| position[y]);
        }
        let minimal: Vec<usize> = (0..n).filter(|&x| down[x].is_empty()).collect();
        if minimal.len() != 1 {
            let names: Vec<&str> = minimal.iter().map(|&x| labels[x].as_str()).collect();
            return Err(Error::InvalidPoset(format!(
                "expected a unique least element, found minimal elements {names:?}"
            )));
        }
        let bottom = minimal[0];
        let mut below = vec![BitRow::new(n); n];
        for (x, row) in above.iter().enumerate() {
            for y in row.iter() {
                below[y].set(x);
            }
        }
        let mut ranks = vec![0; n];
        for &x in &order {
            ranks[x] = down[x].iter().map(|&y| ranks[y] + 1).max().unwrap_or(0);
        }
        Ok(FinitePoset {
            labels,
            up,
            down,
            above,
            below,
            bottom,
            linear_extension: order,
            position,
            ranks,
        })
    }

    /// The Boolean lattice of subsets of `{0..r-1}`; element index = bitmask.
    pub fn boolean_lattice(r: usize) -> Self {
        assert!(r < 20, "Boolean lattice too large");
        let n = 1usize << r;
        let labels = (0..n)
            .map(|m| {
                let items: Vec<String> =
                    (0..r).filter(|i| m >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        let mut covers = Vec::new();
        for m in 0..n {
            for i in 0..r {
                if m >> i & 1 == 0 {
                    covers.push((m, m | 1 << i));
                }
            }
        }
        Self::from_covers(labels, &covers).expect("Boolean lattice is a poset")
    }

    /// The chain `0 < 1 < ... < len-1`.
    pub fn chain(len: usize) -> Self {
        let labels = (0..len).map(|i| i.to_string()).collect();
        let covers: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
        Self::from_covers(labels, &covers).expect("chain is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// The unique maximal element, if there is one.
    pub fn top(&self) -> Option<usize> {
        let maximal: Vec<usize> = (0..self.len()).filter(|&x| self.up[x].is_empty()).collect();
        (maximal.len() == 1).then(|| maximal[0])
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.above[x].get(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Upper covers of `x`, in linear-extension order.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    /// Lower covers of `x`, in linear-extension order.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// All cover pairs `(lower, upper)`, ordered by upper then lower element
    /// in the linear extension.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.linear_extension
            .iter()
            .flat_map(|&a| self.down[a].iter().map(move |&b| (b, a)))
            .collect()
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.linear_extension
    }

    /// Position of `x` in the linear extension.
    pub fn position(&self, x: usize) -> usize {
        self.position[x]
    }

    /// Length of the longest chain from `0̂` to `x`.
    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    /// Covers of `0̂` in linear-extension order.
    pub fn atoms(&self) -> &[usize] {
        &self.up[self.bottom]
    }

    /// Whether every cover raises the rank by exactly one.
    pub fn is_ranked(&self) -> bool {
        self.cover_pairs()
            .iter()
            .all(|&(b, a)| self.ranks[a] == self.ranks[b] + 1)
    }

    fn bound_of(&self, rows: &[BitRow], set: &[usize], least: bool) -> Option<usize> {
        let (&first, others) = set.split_first()?;
        let mut common = rows[first].clone();
        for &x in others {
            common.and_with(&rows[x]);
        }
        // a least upper bound must come first in the linear extension
        let pick = if least {
            common.iter().min_by_key(|&u| self.position[u])?
        } else {
            common.iter().max_by_key(|&u| self.position[u])?
        };
        let extremal = if least { &self.above[pick] } else { &self.below[pick] };
        common.is_subset_of(extremal).then_some(pick)
    }

    /// Least upper bound of a nonempty set, if it exists.
    pub fn join(&self, set: &[usize]) -> Option<usize> {
        self.bound_of(&self.above, set, true)
    }

    /// Greatest lower bound of a nonempty set, if it exists.
    pub fn meet(&self, set: &[usize]) -> Option<usize> {
        self.bound_of(&self.below, set, false)
    }

    /// Whether every pair of elements has a join and a meet.
    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x + 1..n).all(|y| self.join(&[x, y]).is_some() && self.meet(&[x, y]).is_some()))
    }

    /// Subdivides every Hasse edge `β⋖α` with rank gap `n >= 2` into a chain
    /// through `n - 1` new elements. The result is ranked; old elements keep
    /// their indices (the returned embedding is the identity on them) and
    /// their ranks.
    pub fn rank_completion(&self) -> (FinitePoset, Vec<usize>) {
        let mut labels = self.labels.clone();
        let mut covers = Vec::new();
        for (b, a) in self.cover_pairs() {
            let gap = self.ranks[a] - self.ranks[b];
            let mut prev = b;
            for k in 1..gap {
                let id = labels.len();
                labels.push(format!("{}..{}#{}", self.labels[b], self.labels[a], k));
                covers.push((prev, id));
                prev = id;
            }
            covers.push((prev, a));
        }
        let completed =
            FinitePoset::from_covers(labels, &covers).expect("subdividing edges keeps a poset");
        let embedding = (0..self.len()).collect();
        (completed, embedding)
    }

    /// Elements strictly between `0̂` and `alpha` (or up to and including
    /// `alpha`), as linear-extension positions in increasing order.
    fn interval_positions(&self, alpha: usize, inclusive: bool) -> Vec<u32> {
        let mut v: Vec<u32> = (0..self.len())
            .filter(|&x| {
                x != self.bottom && self.leq(x, alpha) && (inclusive || x != alpha)
            })
            .map(|x| self.position[x] as u32)
            .collect();
        v.sort_unstable();
        v
    }

    fn chain_complex_on(&self, elems: &[u32]) -> SimplicialComplex {
        let mut faces: Vec<Face> = Vec::new();
        let mut stack: Vec<u32> = Vec::new();
        fn extend(
            p: &FinitePoset,
            elems: &[u32],
            start: usize,
            stack: &mut Vec<u32>,
            faces: &mut Vec<Face>,
        ) {
            for i in start..elems.len() {
                let e = elems[i];
                if let Some(&last) = stack.last() {
                    let (x, y) = (
                        p.linear_extension[last as usize],
                        p.linear_extension[e as usize],
                    );
                    if !p.leq(x, y) {
                        continue;
                    }
                }
                stack.push(e);
                faces.push(stack.clone().into_boxed_slice());
                extend(p, elems, i + 1, stack, faces);
                stack.pop();
            }
        }
        extend(self, elems, 0, &mut stack, &mut faces);
        SimplicialComplex::from_closed_faces(faces)
    }

    /// `Δ_α`: the order complex of the open interval `(0̂, α)`, vertices
    /// labelled by linear-extension position. For an atom (or `0̂`) this is
    /// the complex with only the empty face.
    pub fn open_interval_complex(&self, alpha: usize) -> SimplicialComplex {
        self.chain_complex_on(&self.interval_positions(alpha, false))
    }

    /// `D_λ`: the order complex of the half-open interval `(0̂, λ]`, a cone
    /// with apex `λ`.
    pub fn half_open_interval_complex(&self, lambda: usize) -> SimplicialComplex {
        self.chain_complex_on(&self.interval_positions(lambda, true))
    }

    /// Whether a face of an order complex (positions) lies in `D_λ`.
    pub fn chain_below(&self, face: &[u32], lambda: usize) -> bool {
        face.iter()
            .all(|&p| self.leq(self.linear_extension[p as usize], lambda))
    }

    /// Indices (into [`FinitePoset::atoms`]) of the atoms below `x`.
    pub fn atoms_below(&self, x: usize) -> Vec<u32> {
        self.atoms()
            .iter()
            .enumerate()
            .filter(|&(_, &a)| self.leq(a, x))
            .map(|(i, _)| i as u32)
            .collect()
    }

    /// `G_λ`: the full simplex on the atoms below `λ` (empty face only for `0̂`).
    pub fn atom_simplex(&self, lambda: usize) -> SimplicialComplex {
        SimplicialComplex::from_facets([self.atoms_below(lambda)])
    }

    /// Whether a face of a crosscut complex (atom indices) lies in `G_λ`.
    pub fn atoms_all_below(&self, face: &[u32], lambda: usize) -> bool {
        let atoms = self.atoms();
        face.iter().all(|&i| self.leq(atoms[i as usize], lambda))
    }

    /// `Γ_α`: atom sets lying below a single cover of `α`.
    pub fn crosscut_interval_complex(&self, alpha: usize) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.down[alpha].iter().map(|&l| self.atoms_below(l)))
    }

    /// The two pieces of the Mayer-Vietoris cover of `Δ_α` at the cover
    /// `λ⋖α`: `D_λ` and `⋃_{β⋖α, β≠λ} D_β`.
    pub fn order_cover_pieces(&self, alpha: usize, lambda: usize) -> (SimplicialComplex, SimplicialComplex) {
        let part = self.half_open_interval_complex(lambda);
        let rest = self.down[alpha]
            .iter()
            .filter(|&&b| b != lambda)
            .fold(SimplicialComplex::empty(), |acc, &b| {
                acc.union(&self.half_open_interval_complex(b))
            });
        (part, rest)
    }

    /// The two pieces of the Mayer-Vietoris cover of `Γ_α` at `λ⋖α`:
    /// `G_λ` and `⋃_{β⋖α, β≠λ} G_β`.
    pub fn crosscut_cover_pieces(&self, alpha: usize, lambda: usize) -> (SimplicialComplex, SimplicialComplex) {
        let part = self.atom_simplex(lambda);
        let rest = SimplicialComplex::from_facets(
            self.down[alpha]
                .iter()
                .filter(|&&b| b != lambda)
                .map(|&b| self.atoms_below(b)),
        );
        (part, rest)
    }

    /// Checks the crosscut axioms for `set` inside the proper part
    /// `P ∖ {0̂}`: it is an antichain, every maximal chain has an element of
    /// `set` comparable to all of its elements, and every subset with an
    /// upper or lower bound has a join or a meet.
    pub fn crosscut_check(&self, set: &[usize]) -> bool {
        let b = self.bottom;
        let set: Vec<usize> = {
            let mut s = set.to_vec();
            s.sort_unstable();
            s.dedup();
            s
        };
        if set.is_empty() || set.contains(&b) {
            return false;
        }
        if set.iter().enumerate().any(|(i, &x)| set[i + 1..].iter().any(|&y| self.comparable(x, y))) {
            return false;
        }
        if !self.maximal_chains_meet(&set) {
            return false;
        }
        let mut bottom_only = BitRow::new(self.len());
        bottom_only.set(b);
        let k = set.len();
        assert!(k < 26, "crosscut check enumerates subsets of the candidate set");
        (1u64..(1u64 << k)).filter(|m| m.count_ones() >= 2).all(|mask| {
            let sub: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| set[i]).collect();
            let mut ub = self.above[sub[0]].clone();
            let mut lb = self.below[sub[0]].clone();
            for &x in &sub[1..] {
                ub.and_with(&self.above[x]);
                lb.and_with(&self.below[x]);
            }
            lb.and_not(&bottom_only);
            if ub.is_empty() && lb.is_empty() {
                return true;
            }
            // upper bounds never contain 0̂, so the join is the join in P
            let has_join = self.join(&sub).is_some();
            let has_meet = lb.iter().any(|l| lb.is_subset_of(&self.below[l]));
            has_join || has_meet
        })
    }

    fn maximal_chains_meet(&self, set: &[usize]) -> bool {
        let b = self.bottom;
        let starts: Vec<usize> = self.up[b].clone();
        let mut chain = Vec::new();
        fn walk(p: &FinitePoset, x: usize, chain: &mut Vec<usize>, set: &[usize]) -> bool {
            chain.push(x);
            let ok = if p.up[x].is_empty() {
                set.iter().any(|&c| chain.iter().all(|&y| p.comparable(c, y)))
            } else {
                p.up[x].iter().all(|&y| walk(p, y, chain, set))
            };
            chain.pop();
            ok
        }
        starts.iter().all(|&s| walk(self, s, &mut chain, set))
    }
}

/// Kahn's algorithm always taking the smallest available index.
fn stable_topological_sort(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &y in s {
            indeg[y] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&x| indeg[x] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(x)) = ready.pop() {
        order.push(x);
        for &y in &succ[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                ready.push(Reverse(y));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// A monotone map `η: P -> ℕⁿ` with `η(0̂) = 0` and nonzero atom images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetMap {
    images: Vec<Monomial>,
}

impl PosetMap {
    pub fn new(poset: &FinitePoset, images: Vec<Monomial>) -> Result<Self> {
        if images.len() != poset.len() {
            return Err(Error::InvalidPosetMap(format!(
                "{} images for {} elements",
                images.len(),
                poset.len()
            )));
        }
        let n = images[0].nvars();
        if images.iter().any(|m| m.nvars() != n) {
            return Err(Error::InvalidPosetMap("images have different lengths".into()));
        }
        if !images[poset.bottom()].is_one() {
            return Err(Error::InvalidPosetMap("the least element must map to 0".into()));
        }
        for &a in poset.atoms() {
            if images[a].is_one() {
                return Err(Error::InvalidPosetMap(format!(
                    "atom {} maps to 0",
                    poset.label(a)
                )));
            }
        }
        for (b, a) in poset.cover_pairs() {
            if !images[b].divides_unchecked(&images[a]) {
                return Err(Error::InvalidPosetMap(format!(
                    "not monotone on {} < {}",
                    poset.label(b),
                    poset.label(a)
                )));
            }
        }
        Ok(PosetMap { images })
    }

    pub fn image(&self, x: usize) -> &Monomial {
        &self.images[x]
    }

    pub fn images(&self) -> &[Monomial] {
        &self.images
    }

    pub fn nvars(&self) -> usize {
        self.images[0].nvars()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::homology::reduced_homology;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// 0 < a < b < d, 0 < c < d.
    pub(crate) fn unranked() -> FinitePoset {
        FinitePoset::from_covers(
            labels(&["0", "a", "b", "c", "d"]),
            &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
        )
        .unwrap()
    }

    /// 0 < a, b < c, d (two tops each covering both atoms).
    fn no_join_diamond() -> FinitePoset {
        FinitePoset::from_covers(
            labels(&["0", "a", "b", "c", "d"]),
            &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)],
        )
        .unwrap()
    }

    #[test]
    fn ranks() {
        let b3 = FinitePoset::boolean_lattice(3);
        assert_eq!(b3.rank(0b011), 2);
        assert_eq!(b3.rank(b3.bottom()), 0);
        assert_eq!(FinitePoset::chain(4).rank(3), 3);
    }

    #[test]
    fn atoms_examples() {
        assert_eq!(FinitePoset::boolean_lattice(3).atoms(), &[1, 2, 4]);
        assert_eq!(FinitePoset::chain(3).atoms(), &[1]);
        let anti = FinitePoset::from_covers(labels(&["0", "p", "q", "r"]), &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(anti.atoms(), &[1, 2, 3]);
    }

    #[test]
    fn ranked_examples() {
        assert!(FinitePoset::boolean_lattice(3).is_ranked());
        let p = unranked();
        assert!(!p.is_ranked());
        assert_eq!(p.rank(4), 3);
        assert_eq!(p.rank(3), 1);
        assert!(FinitePoset::chain(1).is_ranked());
    }

    #[test]
    fn joins_and_meets() {
        let b3 = FinitePoset::boolean_lattice(3);
        assert_eq!(b3.join(&[1, 4]), Some(5));
        assert_eq!(b3.meet(&[3, 6]), Some(2));
        assert!(b3.is_lattice());
        let d = no_join_diamond();
        assert_eq!(d.join(&[1, 2]), None);
        assert_eq!(d.meet(&[3, 4]), None);
        assert!(!d.is_lattice());
    }

    #[test]
    fn invalid_posets() {
        assert!(FinitePoset::from_covers(labels(&["a", "b"]), &[(0, 1), (1, 0)]).is_err());
        assert!(FinitePoset::from_covers(labels(&["a", "b", "c"]), &[(0, 1)]).is_err());
        // redundant edge is not a cover
        assert!(FinitePoset::from_covers(labels(&["a", "b", "c"]), &[(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(FinitePoset::from_relations(labels(&["a", "b", "c"]), &[(0, 1), (1, 2), (0, 2)]).is_ok());
    }

    #[test]
    fn rank_completion_examples() {
        let b3 = FinitePoset::boolean_lattice(3);
        let (same, emb) = b3.rank_completion();
        assert_eq!(same.len(), b3.len());
        assert_eq!(emb, (0..8).collect::<Vec<_>>());

        let p = unranked();
        let (q, _) = p.rank_completion();
        assert_eq!(q.len(), 6);
        assert!(q.is_ranked());
        let new = 5;
        assert_eq!(q.lower_covers(new), &[3]);
        assert_eq!(q.upper_covers(new), &[4]);
        for x in 0..p.len() {
            assert_eq!(q.rank(x), p.rank(x));
            for y in 0..p.len() {
                assert_eq!(q.leq(x, y), p.leq(x, y));
            }
        }

        // gap three: 0 < a < b < c < t and 0 < t' with t' < t directly
        let g = FinitePoset::from_covers(
            labels(&["0", "a", "b", "c", "t", "s"]),
            &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (5, 4)],
        )
        .unwrap();
        let (gc, _) = g.rank_completion();
        assert_eq!(gc.len(), g.len() + 2);
        assert!(gc.is_ranked());
    }

    #[test]
    fn open_interval_complex_examples() {
        let q = Rationals;
        let b3 = FinitePoset::boolean_lattice(3);
        let hex = b3.open_interval_complex(7);
        assert_eq!(hex.num_faces(0), 6);
        assert_eq!(hex.num_faces(1), 6);
        let h = reduced_homology(&q, &hex);
        assert_eq!(h.dimension(1), 1);
        assert_eq!(h.dimension(0), 0);

        let atom = b3.open_interval_complex(1);
        assert_eq!(atom.dim(), -1);
        assert_eq!(reduced_homology(&q, &atom).dimension(-1), 1);

        let two = b3.open_interval_complex(0b011);
        assert_eq!(two.num_faces(0), 2);
        assert_eq!(two.num_faces(1), 0);
        assert_eq!(reduced_homology(&q, &two).dimension(0), 1);
    }

    #[test]
    fn crosscut_interval_complex_examples() {
        let q = Rationals;
        let b3 = FinitePoset::boolean_lattice(3);
        let tri = b3.crosscut_interval_complex(7);
        assert_eq!(tri.num_faces(1), 3);
        assert_eq!(tri.num_faces(2), 0);
        assert_eq!(reduced_homology(&q, &tri).dimension(1), 1);
        assert_eq!(b3.crosscut_interval_complex(2).dim(), -1);

        // 0 < a < b: b covers a, only atom below is a
        let c = FinitePoset::chain(3);
        let point = c.crosscut_interval_complex(2);
        assert_eq!(point.num_faces(0), 1);
        let h = reduced_homology(&q, &point);
        assert!((-1..=0).all(|d| h.dimension(d) == 0));
    }

    #[test]
    fn crosscut_examples() {
        let b3 = FinitePoset::boolean_lattice(3);
        assert!(b3.crosscut_check(b3.atoms()));
        assert!(!b3.crosscut_check(&[1, 3]));
        let d = no_join_diamond();
        // {a, b} is bounded above by c but has neither join nor meet in P ∖ 0̂
        assert!(!d.crosscut_check(d.atoms()));
    }

    #[test]
    fn poset_map_validation() {
        let c = FinitePoset::chain(3);
        let m = |v: u32| Monomial::new(vec![v]);
        assert!(PosetMap::new(&c, vec![m(0), m(1), m(2)]).is_ok());
        assert!(PosetMap::new(&c, vec![m(0), m(0), m(2)]).is_err());
        assert!(PosetMap::new(&c, vec![m(0), m(2), m(1)]).is_err());
        assert!(PosetMap::new(&c, vec![m(1), m(2), m(3)]).is_err());
    }
}
