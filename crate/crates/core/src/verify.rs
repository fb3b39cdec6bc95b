//! Deciding whether a multigraded complex is a (minimal) free resolution of
//! `R/N`, the Tor-based Betti oracle, and the lattice-linearity and Scarf
//! decisions built on them.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::classical::scarf;
use crate::complex::{BettiTable, MultigradedComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lcm_lattice::LcmLattice;
use crate::linalg::Matrix;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::par::Execution;
use crate::resolution::{build_sequence, homogenize, PosetSequence, Variant};

/// A complex restricted to one multidegree: a finite complex of vector spaces.
#[derive(Clone, Debug)]
pub struct Strand<F: Field> {
    /// Generator indices (into the ambient degree-`i` list) per degree.
    pub basis: Vec<Vec<usize>>,
    /// `maps[i]: degree i -> degree i-1`; `maps[0]` is `0 × dim_0`.
    pub maps: Vec<Matrix<F>>,
}

impl<F: Field> Strand<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// First degree `i` with `∂_{i-1} ∂_i ≠ 0`.
    pub fn square_defect(&self) -> Option<usize> {
        (2..self.maps.len()).find(|&i| !self.maps[i - 1].mul(&self.maps[i]).is_zero())
    }

    /// `dim H_i` for every degree, including `H_0 = dim_0 - rank ∂_1`.
    pub fn homology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.maps.iter().map(Matrix::rank).collect();
        (0..self.basis.len())
            .map(|i| {
                let out = if i == 0 { 0 } else { ranks[i] };
                let inc = ranks.get(i + 1).copied().unwrap_or(0);
                self.basis[i].len() - out - inc
            })
            .collect()
    }
}

/// The strand of `c` at `β`: generators whose multidegree divides `x^β`,
/// with monomial weights dropped.
pub fn strand<F: Field>(c: &MultigradedComplex<F>, beta: &Monomial) -> Strand<F> {
    let field = c.field();
    let len = c.length() + 1;
    let mut basis = Vec::with_capacity(len);
    let mut local: Vec<HashMap<usize, usize>> = Vec::with_capacity(len);
    for i in 0..len {
        let idx: Vec<usize> = c
            .generators(i)
            .iter()
            .enumerate()
            .filter(|(_, g)| g.multidegree.divides_unchecked(beta))
            .map(|(k, _)| k)
            .collect();
        local.push(idx.iter().enumerate().map(|(l, &k)| (k, l)).collect());
        basis.push(idx);
    }
    let mut maps = vec![Matrix::zeros(field, 0, basis[0].len())];
    for i in 1..len {
        let mut m = Matrix::zeros(field, basis[i - 1].len(), basis[i].len());
        for e in c.entries(i) {
            let (Some(&col), Some(&row)) = (local[i].get(&e.src), local[i - 1].get(&e.dst)) else {
                continue;
            };
            let v = field.add(m.get(row, col), &e.scalar);
            m.set(row, col, v);
        }
        maps.push(m);
    }
    Strand { basis, maps }
}

/// A strand where a check failed: the degree, the multidegree, and (for
/// exactness failures) the dimension of the offending homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandWitness {
    pub degree: usize,
    pub multidegree: Monomial,
    pub homology_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub is_complex: bool,
    pub complex_witness: Option<StrandWitness>,
    pub is_resolution: bool,
    pub resolution_witness: Option<StrandWitness>,
    pub strands_checked: usize,
}

/// The lcm-closure of the complex's multidegrees and the ideal's
/// generators, plus `0`. Every strand equals the strand at one of these.
fn strand_degrees<F: Field>(c: &MultigradedComplex<F>, ideal: &MonomialIdeal) -> Vec<Monomial> {
    let mut seeds: BTreeSet<Monomial> = ideal.generators().iter().cloned().collect();
    for i in 0..=c.length() {
        seeds.extend(c.generators(i).iter().map(|g| g.multidegree.clone()));
    }
    let seeds: Vec<Monomial> = seeds.into_iter().collect();
    let mut seen: HashSet<Monomial> = seeds.iter().cloned().collect();
    seen.insert(Monomial::one(ideal.nvars()));
    let mut queue = seeds.clone();
    while let Some(m) = queue.pop() {
        for s in &seeds {
            let l = m.lcm_unchecked(s);
            if seen.insert(l.clone()) {
                queue.push(l);
            }
        }
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| (a.total_degree(), a).cmp(&(b.total_degree(), b)));
    out
}

/// Checks that `c` is a complex and resolves `R/N`: every strand at `β`
/// must have `H_0 = k` if `x^β ∉ N` and `0` otherwise, and no homology in
/// positive degrees.
pub fn verify_resolution<F: Field>(
    c: &MultigradedComplex<F>,
    ideal: &MonomialIdeal,
    exec: Execution,
) -> Result<VerificationReport> {
    if c.nvars() != ideal.nvars() {
        return Err(Error::LengthMismatch {
            left: c.nvars(),
            right: ideal.nvars(),
        });
    }
    c.check_homogeneous()?;
    if c.rank(0) != 1 || !c.generators(0)[0].multidegree.is_one() {
        return Err(Error::Structural(
            "degree 0 must be a single generator in multidegree 0".into(),
        ));
    }
    let degrees = strand_degrees(c, ideal);
    let results = exec.map(&degrees, |beta| {
        let s = strand(c, beta);
        if let Some(i) = s.square_defect() {
            return (Some(i), None);
        }
        let expect0 = usize::from(!ideal.contains(beta));
        let h = s.homology();
        let bad = h
            .iter()
            .enumerate()
            .find(|&(i, &d)| d != if i == 0 { expect0 } else { 0 })
            .map(|(i, &d)| (i, d));
        (None, bad)
    });
    let complex_witness = degrees.iter().zip(&results).find_map(|(beta, (sq, _))| {
        sq.map(|i| StrandWitness {
            degree: i,
            multidegree: beta.clone(),
            homology_dim: 0,
        })
    });
    let resolution_witness = if complex_witness.is_some() {
        None
    } else {
        degrees.iter().zip(&results).find_map(|(beta, (_, bad))| {
            bad.map(|(i, d)| StrandWitness {
                degree: i,
                multidegree: beta.clone(),
                homology_dim: d,
            })
        })
    };
    let is_complex = complex_witness.is_none();
    Ok(VerificationReport {
        is_complex,
        complex_witness,
        is_resolution: is_complex && resolution_witness.is_none(),
        resolution_witness,
        strands_checked: degrees.len(),
    })
}

/// A differential entry with a unit weight, named by generator keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryWitness {
    pub degree: usize,
    pub source: String,
    pub target: String,
}

/// `None` if every nonzero entry has a nonconstant weight; otherwise the
/// first unit entry.
pub fn verify_minimal<F: Field>(c: &MultigradedComplex<F>) -> Option<EntryWitness> {
    (1..=c.length()).find_map(|i| {
        c.entries(i).iter().find(|e| e.weight.is_one()).map(|e| EntryWitness {
            degree: i,
            source: c.generators(i)[e.src].key.clone(),
            target: c.generators(i - 1)[e.dst].key.clone(),
        })
    })
}

/// Multigraded Betti numbers of `R/N` as `Tor(R/N, k)`, computed from the
/// Taylor complex tensored with `k`: in multidegree `m` only subsets with
/// `m_I = m` contribute, and an entry `(I, I∖j)` survives iff `m_{I∖j} = m_I`.
pub fn betti_oracle<F: Field>(
    field: &F,
    ideal: &MonomialIdeal,
    max_generators: usize,
    exec: Execution,
) -> Result<BettiTable> {
    let r = ideal.len();
    let cap = max_generators.min(30);
    if r > cap {
        return Err(Error::CapExceeded { generators: r, cap });
    }
    let mut groups: HashMap<Monomial, Vec<u64>> = HashMap::new();
    for mask in 0..1u64 << r {
        groups.entry(ideal.mask_lcm(mask)).or_default().push(mask);
    }
    let mut groups: Vec<(Monomial, Vec<u64>)> = groups.into_iter().collect();
    groups.sort();
    let per_group = exec.map(&groups, |(m, masks)| (m.clone(), tor_in_degree(field, masks, r)));
    let mut t = BettiTable::default();
    for (m, betti) in per_group {
        for (i, b) in betti.into_iter().enumerate() {
            t.add(i, m.clone(), b);
        }
    }
    Ok(t)
}

fn tor_in_degree<F: Field>(field: &F, masks: &[u64], r: usize) -> Vec<usize> {
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); r + 1];
    for &m in masks {
        by_size[m.count_ones() as usize].push(m);
    }
    let index: Vec<HashMap<u64, usize>> = by_size
        .iter()
        .map(|v| v.iter().enumerate().map(|(k, &m)| (m, k)).collect())
        .collect();
    let mut ranks = vec![0; r + 2];
    for i in 1..=r {
        if by_size[i].is_empty() || by_size[i - 1].is_empty() {
            continue;
        }
        let mut d = Matrix::zeros(field, by_size[i - 1].len(), by_size[i].len());
        for (col, &mask) in by_size[i].iter().enumerate() {
            for (j, b) in (0..r).filter(|b| mask >> b & 1 == 1).enumerate() {
                if let Some(&row) = index[i - 1].get(&(mask & !(1 << b))) {
                    let s = if j % 2 == 0 { field.one() } else { field.neg(&field.one()) };
                    d.set(row, col, s);
                }
            }
        }
        ranks[i] = d.rank();
    }
    (0..=r)
        .map(|i| by_size[i].len() - ranks[i] - ranks[i + 1])
        .collect()
}

/// Settings for [`is_lattice_linear`].
#[derive(Clone, Copy, Debug)]
pub struct LatticeLinearOptions {
    pub variant: Variant,
    /// Also build the other variant and require equal dimensions.
    pub cross_check: bool,
    pub max_generators: usize,
    pub exec: Execution,
}

impl Default for LatticeLinearOptions {
    fn default() -> Self {
        LatticeLinearOptions {
            variant: Variant::Gamma,
            cross_check: false,
            max_generators: crate::lcm_lattice::DEFAULT_MAX_GENERATORS,
            exec: Execution::default(),
        }
    }
}

/// Outcome of [`is_lattice_linear`].
#[derive(Clone, Debug)]
pub struct LatticeLinearReport<F: Field> {
    pub lattice_linear: bool,
    pub lattice: LcmLattice,
    pub sequence: PosetSequence<F>,
    pub complex: MultigradedComplex<F>,
    pub verification: VerificationReport,
    pub unit_entry: Option<EntryWitness>,
    /// Ranks of `F(deg)` by multidegree; the Betti table when lattice-linear.
    pub betti: BettiTable,
}

/// Decides lattice-linearity of `N` as "`F(deg)` over `L_N` is a minimal
/// free resolution of `R/N`". On success the ranks are compared with
/// [`betti_oracle`]; a disagreement is an internal error.
pub fn is_lattice_linear<F: Field>(
    field: &F,
    ideal: &MonomialIdeal,
    opts: LatticeLinearOptions,
) -> Result<LatticeLinearReport<F>> {
    let (ideal, _) = ideal.minimize();
    let lattice = LcmLattice::build(&ideal, opts.max_generators)?;
    let sequence = build_sequence(lattice.poset(), field, opts.variant, opts.exec)?;
    if opts.cross_check {
        let other = match opts.variant {
            Variant::Delta => Variant::Gamma,
            Variant::Gamma => Variant::Delta,
        };
        let second = build_sequence(lattice.poset(), field, other, opts.exec)?;
        if second.dims() != sequence.dims() {
            return Err(Error::Internal(
                "delta and gamma variants disagree on an LCM-lattice".into(),
            ));
        }
    }
    let complex = homogenize(&sequence, lattice.degree())?;
    let verification = verify_resolution(&complex, &ideal, opts.exec)?;
    let unit_entry = verify_minimal(&complex);
    let lattice_linear = verification.is_resolution && unit_entry.is_none();
    let betti = complex.rank_table();
    if lattice_linear {
        let oracle = betti_oracle(field, &ideal, opts.max_generators, opts.exec)?;
        if oracle != betti {
            return Err(Error::Internal(
                "F(deg) is a minimal resolution but its ranks differ from Tor".into(),
            ));
        }
    }
    Ok(LatticeLinearReport {
        lattice_linear,
        lattice,
        sequence,
        complex,
        verification,
        unit_entry,
        betti,
    })
}

/// Whether the Scarf complex of `N` resolves `R/N`.
pub fn is_scarf_ideal<F: Field>(
    field: &F,
    ideal: &MonomialIdeal,
    max_generators: usize,
    exec: Execution,
) -> Result<(bool, VerificationReport)> {
    let (ideal, _) = ideal.minimize();
    let s = scarf(field, &ideal, max_generators)?;
    let report = verify_resolution(&s.complex, &ideal, exec)?;
    Ok((report.is_resolution, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::taylor;
    use crate::field::{PrimeField, Rationals};

    fn ideal(nvars: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(nvars, rows).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn strand_examples() {
        let q = Rationals;
        let t = taylor(&q, &ideal(2, &[&[1, 0], &[0, 1]]), 22).unwrap();
        assert_eq!(strand(&t, &m(&[1, 1])).dims(), vec![1, 2, 1]);
        assert_eq!(strand(&t, &m(&[0, 0])).dims(), vec![1, 0, 0]);
        let t = taylor(&q, &ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]), 22).unwrap();
        assert_eq!(strand(&t, &m(&[2, 1])).dims()[1], 2);
        let s = strand(&t, &m(&[2, 3]));
        assert_eq!(s.homology(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn taylor_resolves_and_mutation_is_caught() {
        let q = Rationals;
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]);
        let mut t = taylor(&q, &i, 22).unwrap();
        let r = verify_resolution(&t, &i, Execution::Sequential).unwrap();
        assert!(r.is_complex && r.is_resolution, "{r:?}");
        t.entries_mut(2).remove(0);
        let r = verify_resolution(&t, &i, Execution::Sequential).unwrap();
        assert!(!r.is_resolution);
        assert!(r.complex_witness.is_some() || r.resolution_witness.is_some());
    }

    #[test]
    fn minimality_examples() {
        let q = Rationals;
        let t = taylor(&q, &ideal(2, &[&[1, 0], &[1, 1]]), 22).unwrap();
        let w = verify_minimal(&t).unwrap();
        assert_eq!((w.degree, w.source.as_str(), w.target.as_str()), (2, "{1,2}", "{2}"));
        let k = taylor(&q, &ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 22).unwrap();
        assert!(verify_minimal(&k).is_none());
    }

    #[test]
    fn oracle_examples() {
        let q = Rationals;
        let k = ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(betti_oracle(&q, &k, 22, Execution::Parallel).unwrap().totals(), vec![1, 3, 3, 1]);
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]);
        assert_eq!(betti_oracle(&q, &i, 22, Execution::Parallel).unwrap().totals(), vec![1, 3, 2]);
    }

    #[test]
    fn lattice_linear_examples() {
        let q = Rationals;
        let k = ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let rep = is_lattice_linear(&q, &k, LatticeLinearOptions { cross_check: true, ..Default::default() }).unwrap();
        assert!(rep.lattice_linear);
        assert_eq!(rep.betti.totals(), vec![1, 3, 3, 1]);
        let g = PrimeField::new(2).unwrap();
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]);
        assert!(is_lattice_linear(&g, &i, LatticeLinearOptions::default()).unwrap().lattice_linear);
    }

    #[test]
    fn scarf_ideal_examples() {
        let q = Rationals;
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]);
        assert!(is_scarf_ideal(&q, &i, 22, Execution::Parallel).unwrap().0);
        let tri = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert!(!is_scarf_ideal(&q, &tri, 22, Execution::Parallel).unwrap().0);
        assert!(is_scarf_ideal(&q, &ideal(1, &[&[3]]), 22, Execution::Parallel).unwrap().0);
    }

    #[test]
    fn bad_degree_zero_is_structural() {
        let q = Rationals;
        let c = MultigradedComplex::new(&q, 1);
        assert!(matches!(
            verify_resolution(&c, &ideal(1, &[&[1]]), Execution::Sequential),
            Err(Error::Structural(_))
        ));
    }
}
