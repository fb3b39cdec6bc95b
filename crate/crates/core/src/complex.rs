//! Multigraded free complexes over `R = k[x1..xn]` and Betti tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;

/// A free generator of a multigraded module in a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    /// Human-readable key, e.g. a poset element label and local index.
    pub key: String,
    pub multidegree: Monomial,
}

/// One nonzero entry `scalar * x^weight` of a differential, mapping
/// generator `src` of degree `i` to generator `dst` of degree `i - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry<F: Field> {
    pub src: usize,
    pub dst: usize,
    pub scalar: F::Elem,
    pub weight: Monomial,
}

/// A complex of free multigraded `R`-modules
/// `... -> F_2 -> F_1 -> F_0`, stored as generator lists per homological
/// degree and sparse monomial-weighted differentials.
#[derive(Clone, Debug)]
pub struct MultigradedComplex<F: Field> {
    field: F,
    nvars: usize,
    generators: Vec<Vec<Generator>>,
    /// `differentials[i]` holds the entries of `∂_i : F_i -> F_{i-1}`; index 0 is unused.
    differentials: Vec<Vec<Entry<F>>>,
}

impl<F: Field> MultigradedComplex<F> {
    pub fn new(field: &F, nvars: usize) -> Self {
        MultigradedComplex {
            field: field.clone(),
            nvars,
            generators: Vec::new(),
            differentials: Vec::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn ensure_degree(&mut self, i: usize) {
        while self.generators.len() <= i {
            self.generators.push(Vec::new());
            self.differentials.push(Vec::new());
        }
    }

    /// Appends a generator in homological degree `i`, returning its index there.
    pub fn add_generator(&mut self, i: usize, key: impl Into<String>, multidegree: Monomial) -> usize {
        assert_eq!(multidegree.nvars(), self.nvars, "multidegree length");
        self.ensure_degree(i);
        self.generators[i].push(Generator {
            key: key.into(),
            multidegree,
        });
        self.generators[i].len() - 1
    }

    /// Adds `scalar * x^weight` from generator `src` in degree `i` to `dst`
    /// in degree `i - 1`; zero scalars are dropped.
    pub fn add_entry(&mut self, i: usize, src: usize, dst: usize, scalar: F::Elem, weight: Monomial) {
        assert!(i >= 1, "differentials start in degree 1");
        if self.field.is_zero(&scalar) {
            return;
        }
        self.ensure_degree(i);
        self.differentials[i].push(Entry {
            src,
            dst,
            scalar,
            weight,
        });
    }

    /// Adds an entry whose weight is the quotient of the multidegrees.
    pub fn add_homogeneous_entry(&mut self, i: usize, src: usize, dst: usize, scalar: F::Elem) -> Result<()> {
        let weight = self.generators[i - 1][dst]
            .multidegree
            .quotient_of(&self.generators[i][src].multidegree)
            .ok_or_else(|| {
                Error::Structural(format!(
                    "degree {} generator {} does not map homogeneously to {}",
                    i, self.generators[i][src].key, self.generators[i - 1][dst].key
                ))
            })?;
        self.add_entry(i, src, dst, scalar, weight);
        Ok(())
    }

    /// Highest degree with a generator slot (possibly empty), or 0.
    pub fn length(&self) -> usize {
        self.generators.len().saturating_sub(1)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.generators.get(i).map_or(0, Vec::len)
    }

    /// Ranks `F_0, F_1, ...` up to the last nonzero one.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r: Vec<usize> = (0..=self.length()).map(|i| self.rank(i)).collect();
        while r.len() > 1 && r.last() == Some(&0) {
            r.pop();
        }
        r
    }

    pub fn generators(&self, i: usize) -> &[Generator] {
        self.generators.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn entries(&self, i: usize) -> &[Entry<F>] {
        self.differentials.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn entries_mut(&mut self, i: usize) -> &mut Vec<Entry<F>> {
        self.ensure_degree(i);
        &mut self.differentials[i]
    }

    /// Checks every entry's indices and that `dst.multidegree * x^weight`
    /// equals `src.multidegree`.
    pub fn check_homogeneous(&self) -> Result<()> {
        for i in 1..self.differentials.len() {
            for e in &self.differentials[i] {
                let (Some(s), Some(d)) = (self.generators[i].get(e.src), self.generators[i - 1].get(e.dst)) else {
                    return Err(Error::Structural(format!(
                        "degree {i} entry ({}, {}) refers to a missing generator",
                        e.src, e.dst
                    )));
                };
                if d.multidegree.quotient_of(&s.multidegree).as_ref() != Some(&e.weight) {
                    return Err(Error::Structural(format!(
                        "degree {i} entry {} -> {} has weight {} but multidegrees {} and {}",
                        s.key, d.key, e.weight, s.multidegree, d.multidegree
                    )));
                }
            }
        }
        Ok(())
    }

    /// Ranks grouped by multidegree, as a Betti-shaped table.
    pub fn rank_table(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for (i, gens) in self.generators.iter().enumerate() {
            for g in gens {
                t.add(i, g.multidegree.clone(), 1);
            }
        }
        t
    }
}

/// Multigraded Betti numbers `β_{i,α}`, only nonzero entries stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    multigraded: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    pub fn add(&mut self, i: usize, degree: Monomial, count: usize) {
        if count > 0 {
            *self.multigraded.entry((i, degree)).or_insert(0) += count;
        }
    }

    pub fn get(&self, i: usize, degree: &Monomial) -> usize {
        self.multigraded.get(&(i, degree.clone())).copied().unwrap_or(0)
    }

    pub fn multigraded(&self) -> &BTreeMap<(usize, Monomial), usize> {
        &self.multigraded
    }

    /// `β_{i,j}` summed over multidegrees of total degree `j`.
    pub fn graded(&self) -> BTreeMap<(usize, u32), usize> {
        let mut out = BTreeMap::new();
        for ((i, m), c) in &self.multigraded {
            *out.entry((*i, m.total_degree())).or_insert(0) += c;
        }
        out
    }

    /// `β_0, β_1, ...` up to the last nonzero homological degree.
    pub fn totals(&self) -> Vec<usize> {
        let len = self.multigraded.keys().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut t = vec![0; len];
        for ((i, _), c) in &self.multigraded {
            t[*i] += c;
        }
        t
    }
}

/// The triangular layout used by common computer algebra systems: column
/// `i`, row `j - i` holds `β_{i,j}`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let graded = self.graded();
        let totals = self.totals();
        let cols = totals.len();
        let max_row = graded.keys().map(|&(i, j)| j as i64 - i as i64).max().unwrap_or(0);
        let min_row = graded.keys().map(|&(i, j)| j as i64 - i as i64).min().unwrap_or(0);
        let cell = |v: usize| if v == 0 { ".".to_string() } else { v.to_string() };
        let width = totals.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        let head = format!("{}", max_row.max(1)).len().max(5) + 2;
        write!(f, "{:>head$}", "")?;
        for i in 0..cols {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>head$}", "total:")?;
        for t in &totals {
            write!(f, " {:>width$}", t)?;
        }
        writeln!(f)?;
        for row in min_row..=max_row {
            write!(f, "{:>head$}", format!("{row}:"))?;
            for i in 0..cols {
                let j = i as i64 + row;
                let v = if j < 0 { 0 } else { graded.get(&(i, j as u32)).copied().unwrap_or(0) };
                write!(f, " {:>width$}", cell(v))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn betti_display() {
        let mut t = BettiTable::default();
        t.add(0, m(&[0, 0]), 1);
        t.add(1, m(&[2, 0]), 1);
        t.add(1, m(&[1, 1]), 1);
        t.add(1, m(&[0, 3]), 1);
        t.add(2, m(&[2, 1]), 1);
        t.add(2, m(&[1, 3]), 1);
        assert_eq!(t.totals(), vec![1, 3, 2]);
        let text = t.to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0].trim_end(), "        0 1 2");
        assert_eq!(lines[1], " total: 1 3 2");
        assert_eq!(lines[2], "     0: 1 . .");
        assert_eq!(lines[3], "     1: . 2 1");
        assert_eq!(lines[4], "     2: . 1 1");
    }

    #[test]
    fn homogeneity() {
        let q = Rationals;
        let mut c = MultigradedComplex::new(&q, 2);
        c.add_generator(0, "1", m(&[0, 0]));
        c.add_generator(1, "x", m(&[1, 0]));
        c.add_homogeneous_entry(1, 0, 0, q.one()).unwrap();
        assert!(c.check_homogeneous().is_ok());
        assert_eq!(c.entries(1)[0].weight, m(&[1, 0]));
        c.entries_mut(1)[0].weight = m(&[0, 1]);
        assert!(c.check_homogeneous().is_err());
        assert_eq!(c.ranks(), vec![1, 1]);
    }
}
