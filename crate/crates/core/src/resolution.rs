//! The sequence `C•(P)` of a poset and its homogenization `F(η)`.
//!
//! For `α ≠ 0̂` the component `C_{i,α}` is `H̃_{i-2}(K_α)` where `K_α` is
//! `Δ_α` (order-complex variant) or `Γ_α` (crosscut variant); `C_0 = k`
//! sits at `0̂`. For a cover `λ⋖α` the block `φ_i^{α,λ}` sends a basis cycle
//! `z` of `K_α` to the class in `K_λ` of `∂c'`, where `c'` collects the
//! terms of `z` lying in `D_λ` (or `G_λ`).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::{BettiTable, MultigradedComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{mv_connect_by, reduced_homology, ChainVector, ClassError, Face, HomologyData, SimplicialComplex};
use crate::linalg::Matrix;
use crate::par::Execution;
use crate::poset::{FinitePoset, PosetMap};

/// Which family of interval complexes houses the components.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Order complexes `Δ_α` of open intervals.
    Delta,
    /// Crosscut complexes `Γ_α` on the atoms.
    #[default]
    Gamma,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Delta => "delta",
            Variant::Gamma => "gamma",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(Variant::Delta),
            "gamma" => Ok(Variant::Gamma),
            _ => Err(Error::Parse(format!("unknown variant `{s}` (expected delta or gamma)"))),
        }
    }
}

/// `K_α` for the chosen variant.
pub fn interval_complex(p: &FinitePoset, variant: Variant, alpha: usize) -> SimplicialComplex {
    match variant {
        Variant::Delta => p.open_interval_complex(alpha),
        Variant::Gamma => p.crosscut_interval_complex(alpha),
    }
}

/// Whether a face of `K_α` lies in `D_λ` (or `G_λ`).
fn face_below(p: &FinitePoset, variant: Variant, face: &[u32], lambda: usize) -> bool {
    match variant {
        Variant::Delta => p.chain_below(face, lambda),
        Variant::Gamma => p.atoms_all_below(face, lambda),
    }
}

/// Whether the atoms of `p` form a crosscut, decided cheaply for lattices.
pub fn atoms_form_crosscut(p: &FinitePoset) -> Option<bool> {
    if p.atoms().is_empty() || p.is_lattice() {
        return Some(true);
    }
    (p.atoms().len() <= 20).then(|| p.crosscut_check(p.atoms()))
}

/// Key of a `φ` block: `(i, α, λ)` with `λ⋖α`.
pub type BlockKey = (usize, usize, usize);

/// The sequence `C•(P)` with its homology-backed components and `φ` blocks.
#[derive(Clone, Debug)]
pub struct PosetSequence<F: Field> {
    field: F,
    variant: Variant,
    poset: FinitePoset,
    homology: Vec<Option<HomologyData<F>>>,
    phi: BTreeMap<BlockKey, Matrix<F>>,
    warnings: Vec<String>,
}

/// Builds `C•(P)`; components are computed per element and `φ` blocks per
/// cover, in parallel under [`Execution::Parallel`].
///
/// For the crosscut variant on a poset whose atoms are not a crosscut a
/// warning is recorded; if a connecting map then leaves `Γ_λ` the build
/// fails with [`Error::Structural`].
pub fn build_sequence<F: Field>(
    p: &FinitePoset,
    field: &F,
    variant: Variant,
    exec: Execution,
) -> Result<PosetSequence<F>> {
    let mut warnings = Vec::new();
    if variant == Variant::Gamma {
        match atoms_form_crosscut(p) {
            Some(true) => {}
            Some(false) => warnings.push("the atoms do not form a crosscut".to_string()),
            None => warnings.push("could not verify that the atoms form a crosscut".to_string()),
        }
    }
    let homology: Vec<Option<HomologyData<F>>> = exec.map_range(p.len(), |a| {
        (a != p.bottom()).then(|| reduced_homology(field, &interval_complex(p, variant, a)))
    });
    let covers = p.cover_pairs();
    let blocks = exec.try_map(&covers, |&(lambda, alpha)| {
        phi_blocks(p, field, variant, &homology, lambda, alpha)
    })?;
    Ok(PosetSequence {
        field: field.clone(),
        variant,
        poset: p.clone(),
        homology,
        phi: blocks.into_iter().flatten().collect(),
        warnings,
    })
}

fn phi_blocks<F: Field>(
    p: &FinitePoset,
    field: &F,
    variant: Variant,
    homology: &[Option<HomologyData<F>>],
    lambda: usize,
    alpha: usize,
) -> Result<Vec<(BlockKey, Matrix<F>)>> {
    if lambda == p.bottom() {
        return Ok(vec![((1, alpha, lambda), Matrix::identity(field, 1))]);
    }
    let (Some(ha), Some(hl)) = (&homology[alpha], &homology[lambda]) else {
        unreachable!("only the bottom lacks homology data");
    };
    let others: Vec<usize> = p.lower_covers(alpha).iter().copied().filter(|&b| b != lambda).collect();
    let mut out = Vec::new();
    for d in 0..=ha.top_dim() {
        let cycles = ha.basis_cycles(d);
        if cycles.is_empty() {
            continue;
        }
        let mut columns = Vec::with_capacity(cycles.len());
        for z in &cycles {
            let image = mv_connect_by(
                field,
                z,
                |f| face_below(p, variant, f, lambda),
                |f| others.iter().any(|&b| face_below(p, variant, f, b)),
            )?;
            let coords = hl.class_of(&image).map_err(|e| match e {
                ClassError::FaceOutsideComplex(face) => Error::Structural(format!(
                    "connecting map for {} < {} lands on face {:?} outside the target complex",
                    p.label(lambda),
                    p.label(alpha),
                    face
                )),
                other => Error::Internal(format!(
                    "connecting map for {} < {}: {other}",
                    p.label(lambda),
                    p.label(alpha)
                )),
            })?;
            columns.push(coords);
        }
        let rows = hl.dimension(d - 1);
        if rows > 0 {
            let i = (d + 2) as usize;
            out.push(((i, alpha, lambda), Matrix::from_columns(field, rows, &columns)));
        }
    }
    Ok(out)
}

impl<F: Field> PosetSequence<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Homology data of `K_α`; `None` for `0̂`.
    pub fn homology(&self, alpha: usize) -> Option<&HomologyData<F>> {
        self.homology[alpha].as_ref()
    }

    /// `dim C_{i,α}`.
    pub fn dim(&self, i: usize, alpha: usize) -> usize {
        match &self.homology[alpha] {
            None => usize::from(i == 0),
            Some(h) => h.dimension(i as isize - 2),
        }
    }

    /// Largest `i` with some nonzero `C_{i,α}`.
    pub fn length(&self) -> usize {
        self.dims().keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Nonzero `dim C_{i,α}`, keyed by `(i, α)`.
    pub fn dims(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for a in 0..self.poset.len() {
            let top = self.homology[a].as_ref().map_or(0, |h| h.top_dim() + 2);
            for i in 0..=top.max(0) as usize {
                let d = self.dim(i, a);
                if d > 0 {
                    out.insert((i, a), d);
                }
            }
        }
        out
    }

    /// `dim C_{i,α}` keyed by `(i, η(α))`.
    pub fn dims_report(&self, eta: &PosetMap) -> BettiTable {
        let mut t = BettiTable::default();
        for ((i, a), d) in self.dims() {
            t.add(i, eta.image(a).clone(), d);
        }
        t
    }

    /// `φ_i^{α,λ}`, if nonzero-sized.
    pub fn phi(&self, i: usize, alpha: usize, lambda: usize) -> Option<&Matrix<F>> {
        self.phi.get(&(i, alpha, lambda))
    }

    /// `φ_i^{α,λ}` as a dense matrix, zero when no block is stored.
    pub fn phi_dense(&self, i: usize, alpha: usize, lambda: usize) -> Matrix<F> {
        self.phi(i, alpha, lambda).cloned().unwrap_or_else(|| {
            Matrix::zeros(&self.field, self.dim(i - 1, lambda), self.dim(i, alpha))
        })
    }

    pub fn phi_blocks(&self) -> impl Iterator<Item = (&BlockKey, &Matrix<F>)> {
        self.phi.iter()
    }

    /// First `(i, α, μ)` with `Σ_{μ⋖λ⋖α} φ_{i-1}^{λ,μ} φ_i^{α,λ} ≠ 0`, i.e.
    /// a witness that the sequence is not a complex.
    pub fn complex_defect(&self) -> Option<(usize, usize, usize)> {
        let p = &self.poset;
        for i in 2..=self.length() {
            for &alpha in p.linear_extension() {
                if self.dim(i, alpha) == 0 {
                    continue;
                }
                let mut targets: Vec<usize> =
                    p.lower_covers(alpha).iter().flat_map(|&l| p.lower_covers(l).iter().copied()).collect();
                targets.sort_by_key(|&m| p.position(m));
                targets.dedup();
                for mu in targets {
                    let mut sum = Matrix::zeros(&self.field, self.dim(i - 2, mu), self.dim(i, alpha));
                    for &lambda in p.lower_covers(alpha) {
                        if p.lower_covers(lambda).contains(&mu) {
                            let prod = self.phi_dense(i - 1, lambda, mu).mul(&self.phi_dense(i, alpha, lambda));
                            sum = add(&self.field, &sum, &prod);
                        }
                    }
                    if !sum.is_zero() {
                        return Some((i, alpha, mu));
                    }
                }
            }
        }
        None
    }
}

fn add<F: Field>(field: &F, a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let mut out = a.clone();
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, field.add(a.get(r, c), b.get(r, c)));
        }
    }
    out
}

fn matrices_equal<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> bool {
    a.rows() == b.rows() && a.cols() == b.cols() && (0..a.rows()).all(|r| a.row(r) == b.row(r))
}

/// `F(η)`: generators of `C_{i,α}` placed in multidegree `η(α)`, with the
/// `φ` block of `λ⋖α` weighted by `x^{η(α)-η(λ)}`.
pub fn homogenize<F: Field>(seq: &PosetSequence<F>, eta: &PosetMap) -> Result<MultigradedComplex<F>> {
    let p = &seq.poset;
    if eta.images().len() != p.len() {
        return Err(Error::InvalidPosetMap(format!(
            "map has {} images for a poset with {} elements",
            eta.images().len(),
            p.len()
        )));
    }
    let mut c = MultigradedComplex::new(&seq.field, eta.nvars());
    let mut offset: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 0..=seq.length() {
        for &a in p.linear_extension() {
            let d = seq.dim(i, a);
            if d == 0 {
                continue;
            }
            offset.insert((i, a), c.rank(i));
            for s in 0..d {
                c.add_generator(i, format!("{}#{}", p.label(a), s), eta.image(a).clone());
            }
        }
    }
    for (&(i, alpha, lambda), m) in &seq.phi {
        let (Some(&src0), Some(&dst0)) = (offset.get(&(i, alpha)), offset.get(&(i - 1, lambda))) else {
            continue;
        };
        let weight = eta
            .image(lambda)
            .quotient_of(eta.image(alpha))
            .ok_or_else(|| Error::InvalidPosetMap("map is not monotone".into()))?;
        for col in 0..m.cols() {
            for row in 0..m.rows() {
                c.add_entry(i, src0 + col, dst0 + row, m.get(row, col).clone(), weight.clone());
            }
        }
    }
    Ok(c)
}

/// The simplicial map `f♯` on one chain `a_0 < ... < a_k` of `(0̂, α]`:
/// each `a_j` goes to `s_{a_j}`, the first atom below it. Returns the atom
/// face (indices into [`FinitePoset::atoms`], increasing) and its sign, or
/// `None` when the `s` values are not strictly decreasing along the chain.
///
/// The sign `(-1)^{k(k+1)/2}` reorders `(s_{a_0}, ..., s_{a_k})` increasingly,
/// which makes `f♯` commute with the boundary.
pub fn chain_comparison_map(p: &FinitePoset, chain: &[usize]) -> Option<(Face, i8)> {
    let atoms = p.atoms();
    let s: Vec<u32> = chain
        .iter()
        .map(|&a| atoms.iter().position(|&t| p.leq(t, a)).expect("chain element above an atom") as u32)
        .collect();
    if s.windows(2).any(|w| w[1] >= w[0]) {
        return None;
    }
    let k = s.len().saturating_sub(1);
    let sign = if (k * (k + 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    Some((s.into_iter().rev().collect(), sign))
}

/// Applies `f♯` to a chain of order-complex faces (linear-extension positions).
pub fn apply_comparison<F: Field>(field: &F, p: &FinitePoset, z: &ChainVector<F>) -> ChainVector<F> {
    let mut out = ChainVector::zero(z.dim());
    for (face, c) in z.terms() {
        let chain: Vec<usize> = face.iter().map(|&pos| p.linear_extension()[pos as usize]).collect();
        if let Some((image, sign)) = chain_comparison_map(p, &chain) {
            let c = if sign < 0 { field.neg(c) } else { c.clone() };
            out.add_term(field, &image, c);
        }
    }
    out
}

/// Matrix of `f♯` on `H̃_d` from `Δ_α` to `Γ_α` in the chosen bases.
pub fn comparison_on_homology<F: Field>(
    delta: &PosetSequence<F>,
    gamma: &PosetSequence<F>,
    alpha: usize,
    d: isize,
) -> Result<Matrix<F>> {
    let field = &delta.field;
    let (Some(hd), Some(hg)) = (delta.homology(alpha), gamma.homology(alpha)) else {
        return Ok(Matrix::identity(field, 1));
    };
    let columns = hd
        .basis_cycles(d)
        .iter()
        .map(|z| {
            hg.class_of(&apply_comparison(field, &delta.poset, z))
                .map_err(|e| Error::Internal(format!("comparison map at {}: {e}", delta.poset.label(alpha))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(field, hg.dimension(d), &columns))
}

/// Checks that the delta and gamma sequences of the same poset have equal
/// dimensions, that `f♯` induces isomorphisms `C_{i,α}(Δ) -> C_{i,α}(Γ)`,
/// and that `φ^Γ ∘ f_α = f_λ ∘ φ^Δ` for every block. Returns the number of
/// squares checked.
pub fn comparison_square_check<F: Field>(delta: &PosetSequence<F>, gamma: &PosetSequence<F>) -> Result<usize> {
    if delta.variant != Variant::Delta || gamma.variant != Variant::Gamma {
        return Err(Error::Internal("expected a delta and a gamma sequence".into()));
    }
    let p = &delta.poset;
    if delta.dims() != gamma.dims() {
        return Err(Error::Internal("delta and gamma dimensions differ".into()));
    }
    let mut iso: BTreeMap<(usize, usize), Matrix<F>> = BTreeMap::new();
    for ((i, a), d) in delta.dims() {
        let m = comparison_on_homology(delta, gamma, a, i as isize - 2)?;
        if m.rank() != d {
            return Err(Error::Internal(format!(
                "comparison map is not an isomorphism on C_{{{i},{}}}",
                p.label(a)
            )));
        }
        iso.insert((i, a), m);
    }
    let field = &delta.field;
    let f = |i: usize, a: usize| {
        iso.get(&(i, a))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(field, delta.dim(i, a), delta.dim(i, a)))
    };
    let mut checked = 0;
    for (lambda, alpha) in p.cover_pairs() {
        for i in 1..=delta.length() {
            if delta.dim(i, alpha) == 0 || delta.dim(i - 1, lambda) == 0 {
                continue;
            }
            let left = gamma.phi_dense(i, alpha, lambda).mul(&f(i, alpha));
            let right = f(i - 1, lambda).mul(&delta.phi_dense(i, alpha, lambda));
            if !matrices_equal(&left, &right) {
                return Err(Error::Internal(format!(
                    "comparison square fails at i = {i}, {} < {}",
                    p.label(lambda),
                    p.label(alpha)
                )));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
