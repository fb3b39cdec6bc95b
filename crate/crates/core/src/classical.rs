//! Taylor and Scarf complexes built directly from generator subsets.

use std::collections::HashMap;

use crate::complex::MultigradedComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::poset::{FinitePoset, PosetMap};

fn check_cap(ideal: &MonomialIdeal, max_generators: usize) -> Result<()> {
    let cap = max_generators.min(30);
    if ideal.len() > cap {
        return Err(Error::CapExceeded {
            generators: ideal.len(),
            cap,
        });
    }
    Ok(())
}

/// `{1,3}`-style label of a generator subset (1-based).
pub fn subset_label(mask: u64) -> String {
    let items: Vec<String> = (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Subsets in homological-degree order: by size, then by mask value.
fn ordered_subsets(r: usize, keep: impl Fn(u64) -> bool) -> Vec<Vec<u64>> {
    let mut by_size = vec![Vec::new(); r + 1];
    for mask in 0..1u64 << r {
        if keep(mask) {
            by_size[mask.count_ones() as usize].push(mask);
        }
    }
    while by_size.len() > 1 && by_size.last().is_some_and(Vec::is_empty) {
        by_size.pop();
    }
    by_size
}

/// The complex on the given subset family with the Taylor differential
/// `e_I ↦ Σ_j (-1)^{j+1} (m_I / m_{I∖i_j}) e_{I∖i_j}`.
fn subset_complex<F: Field>(field: &F, ideal: &MonomialIdeal, family: &[Vec<u64>]) -> MultigradedComplex<F> {
    let mut c = MultigradedComplex::new(field, ideal.nvars());
    let mut index: HashMap<u64, usize> = HashMap::new();
    for (i, masks) in family.iter().enumerate() {
        for &mask in masks {
            let at = c.add_generator(i, subset_label(mask), ideal.mask_lcm(mask));
            index.insert(mask, at);
        }
    }
    for (i, masks) in family.iter().enumerate().skip(1) {
        for &mask in masks {
            let src = index[&mask];
            let members = (0..64).filter(|b| mask >> b & 1 == 1);
            for (j, b) in members.enumerate() {
                let face = mask & !(1 << b);
                let Some(&dst) = index.get(&face) else { continue };
                let sign = if j % 2 == 0 { field.one() } else { field.neg(&field.one()) };
                c.add_homogeneous_entry(i, src, dst, sign)
                    .expect("subset lcms divide superset lcms");
            }
        }
    }
    c
}

/// The Taylor complex of the given generators (which need not be minimal).
pub fn taylor<F: Field>(field: &F, ideal: &MonomialIdeal, max_generators: usize) -> Result<MultigradedComplex<F>> {
    check_cap(ideal, max_generators)?;
    Ok(subset_complex(field, ideal, &ordered_subsets(ideal.len(), |_| true)))
}

/// The Scarf complex: subsets `I` whose lcm `m_I` is attained by no other subset.
#[derive(Clone, Debug)]
pub struct ScarfComplex<F: Field> {
    /// Faces as generator bitmasks, grouped by size.
    pub faces: Vec<Vec<u64>>,
    pub complex: MultigradedComplex<F>,
}

pub fn scarf<F: Field>(field: &F, ideal: &MonomialIdeal, max_generators: usize) -> Result<ScarfComplex<F>> {
    check_cap(ideal, max_generators)?;
    let r = ideal.len();
    let mut count: HashMap<Monomial, u32> = HashMap::new();
    for mask in 0..1u64 << r {
        *count.entry(ideal.mask_lcm(mask)).or_insert(0) += 1;
    }
    let is_face = |mask: u64| count[&ideal.mask_lcm(mask)] == 1;
    let faces = ordered_subsets(r, is_face);
    for masks in &faces {
        for &mask in masks {
            let m = ideal.mask_lcm(mask);
            let determined = (0..r)
                .filter(|&i| ideal.generators()[i].divides_unchecked(&m))
                .fold(0u64, |acc, i| acc | 1 << i);
            if determined != mask {
                return Err(Error::Internal(format!(
                    "Scarf face {} is not determined by its lcm",
                    subset_label(mask)
                )));
            }
            if (0..r).any(|b| mask >> b & 1 == 1 && !is_face(mask & !(1 << b))) {
                return Err(Error::Internal(format!(
                    "Scarf complex is not closed under subsets at {}",
                    subset_label(mask)
                )));
            }
        }
    }
    let complex = subset_complex(field, ideal, &faces);
    Ok(ScarfComplex { faces, complex })
}

/// No variable appears with the same nonzero exponent in two generators.
pub fn is_strongly_generic(ideal: &MonomialIdeal) -> bool {
    (0..ideal.nvars()).all(|v| {
        let mut seen: Vec<u32> = ideal
            .generators()
            .iter()
            .map(|g| g.exponents()[v])
            .filter(|&e| e > 0)
            .collect();
        let n = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == n
    })
}

/// The Boolean lattice `B_r` with `η(I) = m_I`.
pub fn boolean_degree_map(ideal: &MonomialIdeal) -> Result<(FinitePoset, PosetMap)> {
    let r = ideal.len();
    if r >= 20 {
        return Err(Error::CapExceeded { generators: r, cap: 19 });
    }
    let b = FinitePoset::boolean_lattice(r);
    let images = (0..1u64 << r).map(|m| ideal.mask_lcm(m)).collect();
    let eta = PosetMap::new(&b, images)?;
    Ok((b, eta))
}

/// Finds `d_I ∈ {±1}` with `other = D · reference · D⁻¹`, i.e. every entry
/// satisfies `other_{J,I} d_I = d_J reference_{J,I}` with equal weights.
/// Both complexes must list the same generators in the same order (keys
/// are compared up to a `#` suffix). Returns the diagonal per degree, or a
/// description of the first mismatch.
pub fn sign_diagonal<F: Field>(
    reference: &MultigradedComplex<F>,
    other: &MultigradedComplex<F>,
) -> std::result::Result<Vec<Vec<i8>>, String> {
    let field = reference.field();
    let ranks = reference.ranks();
    if ranks != other.ranks() {
        return Err(format!("ranks {:?} vs {:?}", ranks, other.ranks()));
    }
    for i in 0..ranks.len() {
        for (a, b) in reference.generators(i).iter().zip(other.generators(i)) {
            let key = b.key.split('#').next().unwrap_or("");
            if a.key != key || a.multidegree != b.multidegree {
                return Err(format!("degree {i}: generator {} vs {}", a.key, b.key));
            }
        }
    }
    let one = field.one();
    let minus = field.neg(&one);
    let mut diag: Vec<Vec<Option<F::Elem>>> = ranks.iter().map(|&n| vec![None; n]).collect();
    if let Some(d0) = diag.first_mut() {
        d0.iter_mut().for_each(|d| *d = Some(one.clone()));
    }
    type Table<E> = HashMap<(usize, usize), (E, Monomial)>;
    let table = |c: &MultigradedComplex<F>, i: usize| -> Table<F::Elem> {
        c.entries(i)
            .iter()
            .map(|e| ((e.src, e.dst), (e.scalar.clone(), e.weight.clone())))
            .collect()
    };
    for i in 1..ranks.len() {
        let t = table(reference, i);
        let f = table(other, i);
        let mut keys: Vec<&(usize, usize)> = t.keys().chain(f.keys()).collect();
        keys.sort_unstable();
        keys.dedup();
        for &&(src, dst) in &keys {
            let (Some((ts, tw)), Some((fs, fw))) = (t.get(&(src, dst)), f.get(&(src, dst))) else {
                return Err(format!("degree {i}: entry ({src}, {dst}) present in only one complex"));
            };
            if tw != fw {
                return Err(format!("degree {i}: entry ({src}, {dst}) weights {tw} vs {fw}"));
            }
            let dj = diag[i - 1][dst].clone().ok_or("unreached generator")?;
            let inv = field.inv(fs).ok_or("zero entry")?;
            let want = field.mul(&field.mul(&dj, ts), &inv);
            match &diag[i][src] {
                None => diag[i][src] = Some(want),
                Some(d) if *d == want => {}
                Some(_) => return Err(format!("degree {i}: inconsistent sign at generator {src}")),
            }
        }
    }
    diag.into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(k, d)| match d {
                    // a generator with no outgoing entries can take either sign
                    None => Ok(1),
                    Some(d) if d == one => Ok(1),
                    Some(d) if d == minus => Ok(-1),
                    Some(d) => Err(format!("degree {i} generator {k}: scale {d} is not a sign")),
                })
                .collect()
        })
        .collect()
}
