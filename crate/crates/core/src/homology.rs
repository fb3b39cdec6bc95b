//! Reduced simplicial homology over a field with explicit cycle
//! representatives, class resolution and the Mayer-Vietoris connecting map.
//!
//! Chains are augmented: the empty face is the unique face of dimension -1
//! and the boundary of a vertex is the empty face. Vertex labels are
//! `u32`s and the vertex order is their numeric order, so a face is stored
//! as a strictly increasing label slice and the orientation of a face is
//! the order of its labels.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A face: strictly increasing vertex labels.
pub type Face = Box<[u32]>;

/// A finite abstract simplicial complex, always containing the empty face.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    /// `faces[k]` holds the faces with `k` vertices (dimension `k - 1`), sorted.
    faces: Vec<Vec<Face>>,
    index: Vec<HashMap<Face, usize>>,
}

impl SimplicialComplex {
    /// The complex with only the empty face.
    pub fn empty() -> Self {
        Self::from_closed_faces(std::iter::empty())
    }

    /// The downward closure of the given faces (vertex lists in any order).
    pub fn from_facets<I, V>(facets: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let mut all: HashSet<Face> = HashSet::new();
        for facet in facets {
            let mut v: Vec<u32> = facet.as_ref().to_vec();
            v.sort_unstable();
            v.dedup();
            if all.contains(v.as_slice()) {
                continue;
            }
            let k = v.len();
            assert!(k < 64, "facet too large to close");
            for mask in 0u64..(1u64 << k) {
                let sub: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).collect();
                all.insert(sub.into_boxed_slice());
            }
        }
        Self::from_closed_faces(all)
    }

    /// Builds from a face collection the caller guarantees to be closed
    /// under taking subsets (checked in debug builds). Faces must be sorted.
    pub fn from_closed_faces<I: IntoIterator<Item = Face>>(faces: I) -> Self {
        let mut by_size: Vec<Vec<Face>> = vec![vec![Vec::new().into_boxed_slice()]];
        let mut seen: HashSet<Face> = HashSet::new();
        for f in faces {
            debug_assert!(f.windows(2).all(|w| w[0] < w[1]), "unsorted face {f:?}");
            if f.is_empty() || !seen.insert(f.clone()) {
                continue;
            }
            if by_size.len() <= f.len() {
                by_size.resize_with(f.len() + 1, Vec::new);
            }
            by_size[f.len()].push(f);
        }
        for level in &mut by_size {
            level.sort();
        }
        let index = by_size
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, f)| (f.clone(), i))
                    .collect::<HashMap<_, _>>()
            })
            .collect();
        let k = SimplicialComplex {
            faces: by_size,
            index,
        };
        debug_assert!(k.is_closed(), "face set is not closed under subsets");
        k
    }

    fn is_closed(&self) -> bool {
        self.faces.iter().skip(2).all(|level| {
            level.iter().all(|f| {
                (0..f.len()).all(|j| {
                    let sub: Vec<u32> = f
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != j)
                        .map(|(_, &v)| v)
                        .collect();
                    self.contains(&sub)
                })
            })
        })
    }

    /// Top dimension; `-1` for the complex with only the empty face.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    /// Faces of dimension `d` (empty slice when there are none).
    pub fn faces(&self, d: isize) -> &[Face] {
        let k = d + 1;
        if k < 0 || k as usize >= self.faces.len() {
            return &[];
        }
        &self.faces[k as usize]
    }

    pub fn num_faces(&self, d: isize) -> usize {
        self.faces(d).len()
    }

    pub fn total_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.faces(0).iter().map(|f| f[0]).collect()
    }

    pub fn face_index(&self, face: &[u32]) -> Option<usize> {
        self.index.get(face.len())?.get(face).copied()
    }

    pub fn contains(&self, face: &[u32]) -> bool {
        self.face_index(face).is_some()
    }

    /// Iterates over every face, lowest dimension first.
    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().flatten()
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self::from_closed_faces(self.all_faces().chain(other.all_faces()).cloned())
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self::from_closed_faces(self.all_faces().filter(|f| other.contains(f)).cloned())
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.all_faces().all(|f| other.contains(f))
    }

    /// Reduced Euler characteristic `sum_d (-1)^d f_d`, `d >= -1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        (-1..=self.dim())
            .map(|d| {
                let n = self.num_faces(d) as i64;
                if d.rem_euclid(2) == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = self.faces.iter().map(Vec::len).collect();
        write!(f, "SimplicialComplex(f-vector from dim -1: {counts:?})")
    }
}

/// The boundary matrix `C_d -> C_{d-1}` for `d >= 0`, with columns indexed
/// by `d`-faces and rows by `(d-1)`-faces.
pub fn boundary_matrix<F: Field>(field: &F, k: &SimplicialComplex, d: isize) -> Matrix<F> {
    assert!(d >= 0, "boundary is defined from dimension 0 upwards");
    let rows = k.faces(d - 1);
    let cols = k.faces(d);
    let mut m = Matrix::zeros(field, rows.len(), cols.len());
    let plus = field.one();
    let minus = field.neg(&plus);
    for (j, face) in cols.iter().enumerate() {
        for (pos, sub) in facets_of(face) {
            let i = k.face_index(&sub).expect("complex closed under subsets");
            m.set(i, j, if pos % 2 == 0 { plus.clone() } else { minus.clone() });
        }
    }
    m
}

/// The codimension-one faces of `face` with the removed position.
fn facets_of(face: &[u32]) -> impl Iterator<Item = (usize, Vec<u32>)> + '_ {
    (0..face.len()).map(move |j| {
        let mut sub = Vec::with_capacity(face.len() - 1);
        sub.extend_from_slice(&face[..j]);
        sub.extend_from_slice(&face[j + 1..]);
        (j, sub)
    })
}

/// A simplicial chain of a fixed dimension, stored sparsely by face.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainVector<F: Field> {
    dim: isize,
    coeffs: BTreeMap<Face, F::Elem>,
}

impl<F: Field> ChainVector<F> {
    pub fn zero(dim: isize) -> Self {
        ChainVector {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// A single oriented face with coefficient `c`.
    pub fn face(field: &F, face: &[u32], c: F::Elem) -> Self {
        let mut v = Self::zero(face.len() as isize - 1);
        v.add_term(field, face, c);
        v
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Face, &F::Elem)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, field: &F, face: &[u32]) -> F::Elem {
        self.coeffs.get(face).cloned().unwrap_or_else(|| field.zero())
    }

    /// Adds `c * face`; `face` must be sorted and have `dim + 1` vertices.
    pub fn add_term(&mut self, field: &F, face: &[u32], c: F::Elem) {
        assert_eq!(face.len() as isize, self.dim + 1, "face dimension mismatch");
        if field.is_zero(&c) {
            return;
        }
        match self.coeffs.get_mut(face) {
            Some(v) => {
                let s = field.add(v, &c);
                if field.is_zero(&s) {
                    self.coeffs.remove(face);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(face.into(), c);
            }
        }
    }

    pub fn add(&self, field: &F, other: &ChainVector<F>) -> ChainVector<F> {
        assert_eq!(self.dim, other.dim, "chain dimension mismatch");
        let mut out = self.clone();
        for (f, c) in &other.coeffs {
            out.add_term(field, f, c.clone());
        }
        out
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> ChainVector<F> {
        let mut out = Self::zero(self.dim);
        for (f, v) in &self.coeffs {
            out.add_term(field, f, field.mul(c, v));
        }
        out
    }

    /// The simplicial boundary; the boundary of a vertex is the empty face.
    pub fn boundary(&self, field: &F) -> ChainVector<F> {
        let mut out = Self::zero(self.dim - 1);
        if self.dim < 0 {
            return out;
        }
        for (face, c) in &self.coeffs {
            for (pos, sub) in facets_of(face) {
                let term = if pos % 2 == 0 { c.clone() } else { field.neg(c) };
                out.add_term(field, &sub, term);
            }
        }
        out
    }

    /// Keeps the terms whose face satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(&[u32]) -> bool) -> ChainVector<F> {
        ChainVector {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(f, _)| keep(f))
                .map(|(f, c)| (f.clone(), c.clone()))
                .collect(),
        }
    }

    /// Dense coordinates in `k`'s face order; fails naming a face outside `k`.
    pub fn to_dense(&self, field: &F, k: &SimplicialComplex) -> Result<Vec<F::Elem>, Face> {
        let mut v = vec![field.zero(); k.num_faces(self.dim)];
        for (f, c) in &self.coeffs {
            match k.face_index(f) {
                Some(i) => v[i] = c.clone(),
                None => return Err(f.clone()),
            }
        }
        Ok(v)
    }

    pub fn from_dense(field: &F, k: &SimplicialComplex, dim: isize, v: &[F::Elem]) -> Self {
        let mut out = Self::zero(dim);
        for (face, c) in k.faces(dim).iter().zip(v) {
            out.add_term(field, face, c.clone());
        }
        out
    }
}

impl<F: Field> fmt::Debug for ChainVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(face, c)| format!("{c}*{face:?}"))
            .collect();
        write!(f, "Chain[d={}]({})", self.dim, terms.join(" + "))
    }
}

/// Why a chain could not be resolved into homology coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassError {
    /// The chain has a nonzero boundary.
    NotACycle,
    /// The chain uses a face the complex does not have.
    FaceOutsideComplex(Face),
    /// A cycle was not in span(cycles, boundaries): the homology data is broken.
    NotInSpan,
}

impl fmt::Display for ClassError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassError::NotACycle => write!(f, "chain is not a cycle"),
            ClassError::FaceOutsideComplex(face) => write!(f, "face {face:?} is not in the complex"),
            ClassError::NotInSpan => write!(f, "cycle not in span of homology basis and boundaries"),
        }
    }
}

impl std::error::Error for ClassError {}

/// A sparse vector over face indices, sorted by index, without zeros.
type Column<E> = Vec<(usize, E)>;

/// `a - c * b`.
fn sub_scaled<F: Field>(field: &F, a: &Column<F::Elem>, c: &F::Elem, b: &Column<F::Elem>) -> Column<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.neg(&field.mul(c, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub_mul(&a[i].1, c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Column reduction of one boundary map: reduced columns keyed by their
/// lowest (largest) row, and the kernel columns it exposes.
struct Reduction<E> {
    /// `low -> reduced column`, an echelon basis of the image.
    image: HashMap<usize, Column<E>>,
    /// `j -> v_j` for the columns that reduced to zero; `v_j` has leading
    /// entry 1 at `j`, so these form an echelon basis of the kernel.
    kernel: BTreeMap<usize, Column<E>>,
}

fn reduce<F: Field>(field: &F, columns: Vec<Column<F::Elem>>) -> Reduction<F::Elem> {
    let mut image: HashMap<usize, Column<F::Elem>> = HashMap::new();
    let mut owner: HashMap<usize, Column<F::Elem>> = HashMap::new();
    let mut kernel = BTreeMap::new();
    for (j, mut r) in columns.into_iter().enumerate() {
        let mut v: Column<F::Elem> = vec![(j, field.one())];
        while let Some((low, x)) = r.last().cloned() {
            let Some(pivot) = image.get(&low) else { break };
            let lead = &pivot.last().expect("reduced columns are nonzero").1;
            let c = field.mul(&x, &field.inv(lead).expect("pivot entries are nonzero"));
            r = sub_scaled(field, &r, &c, pivot);
            v = sub_scaled(field, &v, &c, &owner[&low]);
        }
        match r.last() {
            Some(&(low, _)) => {
                image.insert(low, r);
                owner.insert(low, v);
            }
            None => {
                kernel.insert(j, v);
            }
        }
    }
    Reduction { image, kernel }
}

/// Sparse boundary columns of `C_d -> C_{d-1}`, `d >= 0`.
fn boundary_columns<F: Field>(field: &F, k: &SimplicialComplex, d: isize) -> Vec<Column<F::Elem>> {
    let one = field.one();
    let minus = field.neg(&one);
    k.faces(d)
        .iter()
        .map(|face| {
            let mut col: Column<F::Elem> = facets_of(face)
                .map(|(pos, sub)| {
                    let row = k.face_index(&sub).expect("complex is closed under subsets");
                    (row, if pos % 2 == 0 { one.clone() } else { minus.clone() })
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect()
}

/// Homology in one dimension.
#[derive(Clone, Debug)]
struct HomologyDim<F: Field> {
    /// Representative cycles with distinct leading faces.
    cycles: Vec<Column<F::Elem>>,
    cycle_low: HashMap<usize, usize>,
    /// Echelon basis of the boundaries, keyed by leading face.
    boundaries: BTreeMap<usize, Column<F::Elem>>,
}

/// Reduced homology of a complex, with a basis of representative cycles in
/// every dimension and echelon bases for class resolution.
#[derive(Clone, Debug)]
pub struct HomologyData<F: Field> {
    field: F,
    complex: SimplicialComplex,
    /// Indexed by `d + 1`.
    dims: Vec<HomologyDim<F>>,
}

/// Reduced homology of `k` over `field`.
///
/// Each boundary map is column-reduced once, in face order. A face whose
/// column reduces to zero contributes a cycle with that face as leading
/// term; the cycles whose leading face is not the leading face of a reduced
/// boundary form the homology basis. The choice is deterministic.
pub fn reduced_homology<F: Field>(field: &F, k: &SimplicialComplex) -> HomologyData<F> {
    let top = k.dim();
    // the augmentation: the empty face is a cycle
    let mut kernel: BTreeMap<usize, Column<F::Elem>> = BTreeMap::from([(0, vec![(0, field.one())])]);
    let mut dims = Vec::with_capacity((top + 2) as usize);
    for d in -1..=top {
        let up = if d < top {
            reduce(field, boundary_columns(field, k, d + 1))
        } else {
            Reduction {
                image: HashMap::new(),
                kernel: BTreeMap::new(),
            }
        };
        let boundaries: BTreeMap<usize, Column<F::Elem>> = up.image.into_iter().collect();
        let cycles: Vec<Column<F::Elem>> = kernel
            .into_iter()
            .filter(|(j, _)| !boundaries.contains_key(j))
            .map(|(_, v)| v)
            .collect();
        let cycle_low = cycles.iter().enumerate().map(|(i, c)| (c.last().expect("nonzero").0, i)).collect();
        dims.push(HomologyDim {
            cycles,
            cycle_low,
            boundaries,
        });
        kernel = up.kernel;
    }
    HomologyData {
        field: field.clone(),
        complex: k.clone(),
        dims,
    }
}

impl<F: Field> HomologyData<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    fn at(&self, d: isize) -> Option<&HomologyDim<F>> {
        if d < -1 {
            return None;
        }
        self.dims.get((d + 1) as usize)
    }

    fn chain(&self, d: isize, col: &Column<F::Elem>) -> ChainVector<F> {
        let mut z = ChainVector::zero(d);
        for (i, c) in col {
            z.add_term(&self.field, &self.complex.faces(d)[*i], c.clone());
        }
        z
    }

    /// `dim H~_d`; zero outside the complex's dimension range.
    pub fn dimension(&self, d: isize) -> usize {
        self.at(d).map_or(0, |h| h.cycles.len())
    }

    /// Top dimension with a chance of nonzero homology.
    pub fn top_dim(&self) -> isize {
        self.complex.dim()
    }

    /// Representative cycles of the chosen basis of `H~_d`.
    pub fn basis_cycles(&self, d: isize) -> Vec<ChainVector<F>> {
        self.at(d)
            .map_or_else(Vec::new, |h| h.cycles.iter().map(|c| self.chain(d, c)).collect())
    }

    /// Independent chains spanning the boundaries `B_d`.
    pub fn boundary_space(&self, d: isize) -> Vec<ChainVector<F>> {
        self.at(d)
            .map_or_else(Vec::new, |h| h.boundaries.values().map(|c| self.chain(d, c)).collect())
    }

    /// Coordinates of `[z]` in the chosen basis of `H~_{dim z}`.
    pub fn class_of(&self, z: &ChainVector<F>) -> Result<Vec<F::Elem>, ClassError> {
        let f = &self.field;
        let d = z.dim();
        let Some(h) = self.at(d) else {
            // outside the face range only the zero chain exists
            return match z.terms().next() {
                None => Ok(Vec::new()),
                Some((face, _)) => Err(ClassError::FaceOutsideComplex(face.clone())),
            };
        };
        let mut r: Column<F::Elem> = Vec::new();
        for (face, c) in z.terms() {
            let i = self
                .complex
                .face_index(face)
                .ok_or_else(|| ClassError::FaceOutsideComplex(face.clone()))?;
            r.push((i, c.clone()));
        }
        r.sort_unstable_by_key(|e| e.0);
        if !z.boundary(f).is_zero() {
            return Err(ClassError::NotACycle);
        }
        let mut coeffs = vec![f.zero(); h.cycles.len()];
        while let Some((low, x)) = r.last().cloned() {
            if let Some(b) = h.boundaries.get(&low) {
                let lead = &b.last().expect("nonzero").1;
                let c = f.mul(&x, &f.inv(lead).expect("nonzero pivot"));
                r = sub_scaled(f, &r, &c, b);
            } else if let Some(&i) = h.cycle_low.get(&low) {
                // cycles have leading coefficient 1
                r = sub_scaled(f, &r, &x, &h.cycles[i]);
                coeffs[i] = x;
            } else {
                return Err(ClassError::NotInSpan);
            }
        }
        Ok(coeffs)
    }

    /// Alternating sum of homology dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        (-1..=self.top_dim())
            .map(|d| {
                let n = self.dimension(d) as i64;
                if d.rem_euclid(2) == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }
}

/// Mayer-Vietoris connecting map on chains.
///
/// For a cycle `z` of `big = part ∪ rest`, the terms whose face lies in
/// `part` form `c'`, and the result is `∂c'`, a cycle of `part ∩ rest` one
/// dimension lower. Fails if a term of `z` lies in neither piece or the
/// result leaves the intersection.
pub fn mv_connect<F: Field>(
    field: &F,
    big: &SimplicialComplex,
    part: &SimplicialComplex,
    rest: &SimplicialComplex,
    z: &ChainVector<F>,
) -> Result<ChainVector<F>> {
    if let Some((face, _)) = z.terms().find(|(f, _)| !big.contains(f)) {
        return Err(Error::Internal(format!(
            "connecting map: face {face:?} is not in the ambient complex"
        )));
    }
    mv_connect_by(field, z, |f| part.contains(f), |f| rest.contains(f))
}

/// [`mv_connect`] with the two pieces given as membership predicates.
pub fn mv_connect_by<F, P, Q>(
    field: &F,
    z: &ChainVector<F>,
    in_part: P,
    in_rest: Q,
) -> Result<ChainVector<F>>
where
    F: Field,
    P: Fn(&[u32]) -> bool,
    Q: Fn(&[u32]) -> bool,
{
    let split = z.restrict(&in_part);
    if let Some((face, _)) = z.terms().find(|(f, _)| !in_part(f) && !in_rest(f)) {
        return Err(Error::Internal(format!(
            "connecting map: face {face:?} lies in neither piece of the cover"
        )));
    }
    let image = split.boundary(field);
    if let Some((face, _)) = image.terms().find(|(f, _)| !(in_part(f) && in_rest(f))) {
        return Err(Error::Internal(format!(
            "connecting map: boundary face {face:?} leaves the intersection"
        )));
    }
    Ok(image)
}
