//! Monomials as exponent vectors and monomial ideals given by generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x^a`, identified with its exponent vector `a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn check_len(&self, other: &Monomial) -> Result<()> {
        if self.0.len() != other.0.len() {
            return Err(Error::LengthMismatch {
                left: self.0.len(),
                right: other.0.len(),
            });
        }
        Ok(())
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_len(other)?;
        Ok(self.lcm_unchecked(other))
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` as an exponent vector; `None` unless `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.0.len() != other.0.len() || !self.divides_unchecked(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }

    /// Render with the given variable names, e.g. `x1^2*x3`; `1` for the unit.
    pub fn render(&self, variables: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = variables
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

/// A monomial ideal in a fixed set of variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    variables: Vec<String>,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds an ideal; every generator must have one exponent per variable.
    pub fn new(variables: Vec<String>, generators: Vec<Monomial>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != variables.len() {
                return Err(Error::LengthMismatch {
                    left: variables.len(),
                    right: g.nvars(),
                });
            }
        }
        Ok(MonomialIdeal {
            variables,
            generators,
        })
    }

    /// Ideal in variables `x1..xn` from raw exponent rows.
    pub fn from_exponents(nvars: usize, rows: &[&[u32]]) -> Result<Self> {
        let variables = (1..=nvars).map(|i| format!("x{i}")).collect();
        Self::new(
            variables,
            rows.iter().map(|r| Monomial::new(r.to_vec())).collect(),
        )
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn render(&self, m: &Monomial) -> String {
        m.render(&self.variables)
    }

    /// Whether `m` lies in the ideal, i.e. some generator divides it.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides_unchecked(m))
    }

    /// Keeps the divisibility-minimal generators (first copy of duplicates,
    /// input order preserved); also returns the dropped generators.
    pub fn minimize(&self) -> (MonomialIdeal, Vec<Monomial>) {
        let mut kept = Vec::new();
        let mut removed = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let redundant = self.generators.iter().enumerate().any(|(j, h)| {
                j != i && h.divides_unchecked(g) && (h != g || j < i)
            });
            if redundant {
                removed.push(g.clone());
            } else {
                kept.push(g.clone());
            }
        }
        (
            MonomialIdeal {
                variables: self.variables.clone(),
                generators: kept,
            },
            removed,
        )
    }

    pub fn is_minimal(&self) -> bool {
        self.minimize().1.is_empty()
    }

    /// `lcm` of the generators indexed by `subset`; `1` for the empty set.
    pub fn subset_lcm(&self, subset: &[usize]) -> Result<Monomial> {
        let mut m = Monomial::one(self.nvars());
        for &i in subset {
            let g = self.generators.get(i).ok_or(Error::IndexOutOfRange {
                index: i,
                count: self.generators.len(),
            })?;
            m = m.lcm_unchecked(g);
        }
        Ok(m)
    }

    /// `lcm` of the generators selected by the bits of `mask`.
    pub(crate) fn mask_lcm(&self, mask: u64) -> Monomial {
        let mut m = Monomial::one(self.nvars());
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            m = m.lcm_unchecked(&self.generators[i]);
            bits &= bits - 1;
        }
        m
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| self.render(g)).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn lcm_examples() {
        // x1x2x3, x1x3x5 -> x1x2x3x5
        assert_eq!(
            m(&[1, 1, 1, 0, 0]).lcm(&m(&[1, 0, 1, 0, 1])).unwrap(),
            m(&[1, 1, 1, 0, 1])
        );
        assert_eq!(m(&[2, 1]).lcm(&Monomial::one(2)).unwrap(), m(&[2, 1]));
        assert_eq!(m(&[2, 0]).lcm(&m(&[1, 1])).unwrap(), m(&[2, 1]));
        assert!(matches!(
            m(&[1]).lcm(&m(&[1, 2])),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn divides_examples() {
        assert!(m(&[1, 1]).divides(&m(&[2, 1])).unwrap());
        assert!(!m(&[2, 0]).divides(&m(&[1, 1])).unwrap());
        assert!(Monomial::one(2).divides(&m(&[0, 3])).unwrap());
        assert!(m(&[1]).divides(&m(&[1, 0])).is_err());
    }

    #[test]
    fn minimize_examples() {
        let i = MonomialIdeal::from_exponents(2, &[&[1, 0], &[1, 1]]).unwrap();
        let (min, removed) = i.minimize();
        assert_eq!(min.generators(), &[m(&[1, 0])]);
        assert_eq!(removed, vec![m(&[1, 1])]);

        let i = MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1], &[0, 3]]).unwrap();
        let (min, removed) = i.minimize();
        assert_eq!(min, i);
        assert!(removed.is_empty());

        let i = MonomialIdeal::from_exponents(2, &[&[1, 1], &[1, 1]]).unwrap();
        let (min, removed) = i.minimize();
        assert_eq!(min.generators(), &[m(&[1, 1])]);
        assert_eq!(removed, vec![m(&[1, 1])]);
    }

    #[test]
    fn subset_lcm_examples() {
        let i = MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1], &[0, 3]]).unwrap();
        assert_eq!(i.subset_lcm(&[0, 1]).unwrap(), m(&[2, 1]));
        assert_eq!(i.subset_lcm(&[]).unwrap(), Monomial::one(2));
        assert_eq!(i.subset_lcm(&[0, 1, 2]).unwrap(), m(&[2, 3]));
        assert_eq!(i.mask_lcm(0b101), m(&[2, 3]));
        assert!(matches!(
            i.subset_lcm(&[3]),
            Err(Error::IndexOutOfRange { index: 3, count: 3 })
        ));
    }

    #[test]
    fn rendering() {
        let vars = vec!["x".to_string(), "y".to_string()];
        assert_eq!(m(&[2, 1]).render(&vars), "x^2*y");
        assert_eq!(Monomial::one(2).render(&vars), "1");
        assert_eq!(m(&[0, 0, 1]).to_string(), "x3");
    }

    fn mono(n: usize) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..4, n).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn lcm_laws(a in mono(3), b in mono(3), c in mono(3)) {
            let ab = a.lcm(&b).unwrap();
            prop_assert_eq!(&ab, &b.lcm(&a).unwrap());
            prop_assert_eq!(ab.lcm(&c).unwrap(), a.lcm(&b.lcm(&c).unwrap()).unwrap());
            prop_assert_eq!(a.lcm(&a).unwrap(), a.clone());
            prop_assert!(a.divides(&ab).unwrap());
        }

        #[test]
        fn minimize_preserves_membership(
            gens in prop::collection::vec(mono(3), 0..7),
            probe in mono(3),
        ) {
            let ideal = MonomialIdeal::new(
                vec!["a".into(), "b".into(), "c".into()], gens).unwrap();
            let (min, removed) = ideal.minimize();
            prop_assert_eq!(min.len() + removed.len(), ideal.len());
            prop_assert_eq!(min.contains(&probe), ideal.contains(&probe));
            let (again, none) = min.minimize();
            prop_assert_eq!(again, min);
            prop_assert!(none.is_empty());
        }
    }
}
