//! The LCM-lattice `L_N` of a monomial ideal.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::poset::{FinitePoset, PosetMap};

/// Default limit on the number of minimal generators.
pub const DEFAULT_MAX_GENERATORS: usize = 22;

/// `L_N` as a poset ordered by divisibility, with `deg` as its [`PosetMap`].
///
/// Element 0 is `1`, elements `1..=r` are the generators in input order, and
/// the remaining lcms follow sorted by total degree then exponent vector.
#[derive(Clone, Debug)]
pub struct LcmLattice {
    ideal: MonomialIdeal,
    poset: FinitePoset,
    degree: PosetMap,
    index: HashMap<Monomial, usize>,
}

impl LcmLattice {
    /// Builds `L_N` by closing the generators under pairwise lcm.
    pub fn build(ideal: &MonomialIdeal, max_generators: usize) -> Result<Self> {
        check_input(ideal, max_generators)?;
        let gens = ideal.generators();
        let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
        let mut queue: Vec<Monomial> = gens.to_vec();
        while let Some(m) = queue.pop() {
            for g in gens {
                let l = m.lcm_unchecked(g);
                if seen.insert(l.clone()) {
                    queue.push(l);
                }
            }
        }
        Self::assemble(ideal, seen)
    }

    /// Builds `L_N` from the lcms of all `2^r` generator subsets; same output
    /// as [`LcmLattice::build`], kept for cross-checking.
    pub fn build_by_enumeration(ideal: &MonomialIdeal, max_generators: usize) -> Result<Self> {
        check_input(ideal, max_generators)?;
        let r = ideal.len();
        let seen: HashSet<Monomial> = (1u64..1 << r).map(|mask| ideal.mask_lcm(mask)).collect();
        Self::assemble(ideal, seen)
    }

    fn assemble(ideal: &MonomialIdeal, lcms: HashSet<Monomial>) -> Result<Self> {
        let gens = ideal.generators();
        let gen_set: HashSet<&Monomial> = gens.iter().collect();
        let mut rest: Vec<Monomial> = lcms.into_iter().filter(|m| !gen_set.contains(m)).collect();
        rest.sort_by(|a, b| (a.total_degree(), a).cmp(&(b.total_degree(), b)));
        let mut elements = vec![Monomial::one(ideal.nvars())];
        elements.extend(gens.iter().cloned());
        elements.extend(rest);
        let labels = elements.iter().map(|m| ideal.render(m)).collect();
        let poset =
            FinitePoset::from_order(labels, |x, y| elements[x].divides_unchecked(&elements[y]))?;
        let degree = PosetMap::new(&poset, elements.clone())?;
        let index = elements.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(LcmLattice {
            ideal: ideal.clone(),
            poset,
            degree,
            index,
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    /// The map `deg: L_N -> ℕⁿ`.
    pub fn degree(&self) -> &PosetMap {
        &self.degree
    }

    pub fn monomial(&self, x: usize) -> &Monomial {
        self.degree.image(x)
    }

    pub fn element_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Element of the `i`-th generator.
    pub fn generator_element(&self, i: usize) -> usize {
        i + 1
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }
}

fn check_input(ideal: &MonomialIdeal, max_generators: usize) -> Result<()> {
    if ideal.generators().iter().any(Monomial::is_one) {
        return Err(Error::UnitIdeal);
    }
    if !ideal.is_minimal() {
        return Err(Error::Structural(
            "generators must be minimized before building the LCM-lattice".into(),
        ));
    }
    if ideal.len() > max_generators.min(63) {
        return Err(Error::CapExceeded {
            generators: ideal.len(),
            cap: max_generators.min(63),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(nvars: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(nvars, rows).unwrap()
    }

    fn labels(l: &LcmLattice) -> Vec<String> {
        l.poset().labels().to_vec()
    }

    #[test]
    fn two_generators() {
        let vars = vec!["x".into(), "y".into(), "z".into()];
        let i = MonomialIdeal::new(
            vars,
            vec![Monomial::new(vec![1, 1, 0]), Monomial::new(vec![0, 1, 1])],
        )
        .unwrap();
        let l = LcmLattice::build(&i, DEFAULT_MAX_GENERATORS).unwrap();
        assert_eq!(labels(&l), ["1", "x*y", "y*z", "x*y*z"]);
        assert_eq!(l.poset().cover_pairs(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn seven_elements() {
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]);
        let l = LcmLattice::build(&i, DEFAULT_MAX_GENERATORS).unwrap();
        assert_eq!(l.len(), 7);
        let expect: HashSet<Vec<u32>> =
            [[0, 0], [2, 0], [1, 1], [0, 3], [2, 1], [1, 3], [2, 3]].iter().map(|v| v.to_vec()).collect();
        let got: HashSet<Vec<u32>> =
            (0..7).map(|x| l.monomial(x).exponents().to_vec()).collect();
        assert_eq!(got, expect);
        assert!(l.poset().is_lattice());
        assert_eq!(l.poset().top(), l.element_of(&Monomial::new(vec![2, 3])));
    }

    #[test]
    fn zero_ideal() {
        let l = LcmLattice::build(&ideal(2, &[]), DEFAULT_MAX_GENERATORS).unwrap();
        assert_eq!(l.len(), 1);
        assert!(l.poset().atoms().is_empty());
    }

    #[test]
    fn errors() {
        assert_eq!(
            LcmLattice::build(&ideal(1, &[&[0]]), 22).unwrap_err(),
            Error::UnitIdeal
        );
        assert!(matches!(
            LcmLattice::build(&ideal(2, &[&[1, 0], &[0, 1]]), 1),
            Err(Error::CapExceeded { generators: 2, cap: 1 })
        ));
        assert!(LcmLattice::build(&ideal(2, &[&[1, 0], &[1, 1]]), 22).is_err());
    }

    #[test]
    fn closure_matches_enumeration_and_joins_are_lcms() {
        let i = ideal(3, &[&[2, 1, 0], &[0, 1, 2], &[1, 0, 1], &[0, 3, 0]]);
        let a = LcmLattice::build(&i, 22).unwrap();
        let b = LcmLattice::build_by_enumeration(&i, 22).unwrap();
        assert_eq!(a.poset(), b.poset());
        let p = a.poset();
        assert_eq!(p.atoms(), &[1, 2, 3, 4]);
        for x in 0..p.len() {
            for y in 0..p.len() {
                let j = p.join(&[x, y]).unwrap();
                assert_eq!(a.monomial(j), &a.monomial(x).lcm(a.monomial(y)).unwrap());
            }
        }
    }
}
