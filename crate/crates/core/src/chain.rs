//! Integer and mod-2 cubical chain and cochain complexes: boundary matrices,
//! homology and cohomology via Smith normal form, fundamental classes and the
//! boundary-orientation sign.

use crate::complex::{Cube, CubicalComplex, FaceKey};
use crate::linalg::{det_sign, integer_kernel_basis, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("operation requires degree {expected}, chain has degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("complex is not a closed pseudomanifold: {reason}")]
    NotClosed { reason: String },
    #[error("complex is not orientable")]
    NonOrientable,
}

/// Coefficient ring tag for homology computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Integer,
    Mod2,
}

/// Sparse integer (co)chain in a fixed degree, indexed by face keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<FaceKey, BigInt>,
}

/// Cochains share the sparse representation; evaluation is the pairing that
/// is 1 on the indexing face and 0 elsewhere.
pub type Cochain = Chain;

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, terms: BTreeMap::new() }
    }

    pub fn single(degree: usize, key: FaceKey) -> Self {
        let mut c = Chain::zero(degree);
        c.add_term(key, BigInt::one());
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: FaceKey, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            let dead: Vec<FaceKey> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn coefficient(&self, key: &FaceKey) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FaceKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn scaled(&self, s: &BigInt) -> Chain {
        let mut out = Chain::zero(self.degree);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * s);
        }
        out
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    /// Reduce all coefficients mod 2 to {0, 1}.
    pub fn mod2(&self) -> Chain {
        let mut out = Chain::zero(self.degree);
        for (k, v) in &self.terms {
            if v.is_odd() {
                out.add_term(k.clone(), BigInt::one());
            }
        }
        out
    }
}

use num_integer::Integer as _;

/// Graded bases (lexicographically ordered by sorted vertex names) and
/// integer boundary matrices of a complex.
#[derive(Debug, Clone)]
pub struct ChainComplexData {
    pub coefficients: Coefficients,
    /// basis[k] lists the k-faces in basis order
    pub basis: Vec<Vec<FaceKey>>,
    /// index of each face within its degree's basis
    pub index: BTreeMap<FaceKey, usize>,
    /// boundary[k]: matrix of the boundary from degree k to degree k-1
    /// (rows: (k-1)-faces, cols: k-faces); boundary[0] is the 0 x n. matrix
    pub boundary: Vec<IntMatrix>,
}

/// The coefficient of the facet (i, j) of a k-cube in the boundary formula
/// sum_i (-1)^i (face at x_i = 0 minus face at x_i = 1); i is 1-based.
pub fn boundary_coefficient(i: usize, j: usize) -> i64 {
    if (i + j) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign comparison between (outward normal at the facet x_i = j followed by
/// the facet's canonical basis) and the canonical basis of the n-cube,
/// computed by an exact determinant.
pub fn cube_face_boundary_sign(n: usize, i: usize, j: usize) -> i32 {
    assert!(1 <= i && i <= n && j <= 1);
    let mut m = IntMatrix::zero(n, n);
    // first column: outward normal at x_i = j is -e_i for j = 0, +e_i for j=1
    m[(i - 1, 0)] = if j == 0 { BigInt::from(-1) } else { BigInt::one() };
    // remaining columns: e_1 .. e_n omitting e_i
    let mut col = 1;
    for c in 0..n {
        if c == i - 1 {
            continue;
        }
        m[(c, col)] = BigInt::one();
        col += 1;
    }
    det_sign(&m).expect("square by construction")
}

/// Boundary of a single face as a chain.
pub fn boundary_of_face(complex: &CubicalComplex, cube: &Cube) -> Chain {
    let mut out = Chain::zero(cube.dim.saturating_sub(1));
    if cube.dim == 0 {
        return out;
    }
    for i in 1..=cube.dim {
        for j in 0..2usize {
            let flist = complex.facet(cube, i, j);
            let mut key = flist.clone();
            key.sort_unstable();
            out.add_term(key, BigInt::from(boundary_coefficient(i, j)));
        }
    }
    out
}

/// Boundary extended linearly to chains.
pub fn boundary_of_chain(complex: &CubicalComplex, chain: &Chain) -> Chain {
    let mut out = Chain::zero(chain.degree().saturating_sub(1));
    for (key, coeff) in chain.iter() {
        let cube = complex.cube(key).expect("chain term must be a face");
        let b = boundary_of_face(complex, cube);
        for (k, v) in b.iter() {
            out.add_term(k.clone(), v * coeff);
        }
    }
    out
}

/// Coboundary of a cochain under the convention (d F*)(x) = F*(boundary x).
pub fn coboundary_of_cochain(complex: &CubicalComplex, alpha: &Cochain) -> Cochain {
    let target = alpha.degree() + 1;
    let mut out = Chain::zero(target);
    for cube in complex.iter_faces() {
        if cube.dim != target {
            continue;
        }
        let b = boundary_of_face(complex, cube);
        let mut val = BigInt::zero();
        for (k, v) in b.iter() {
            val += v * alpha.coefficient(k);
        }
        if !val.is_zero() {
            out.add_term(cube.key.clone(), val);
        }
    }
    out
}

pub fn boundary_matrices(complex: &CubicalComplex, coefficients: Coefficients) -> ChainComplexData {
    let top = complex.top_dim();
    let mut basis = Vec::with_capacity(top + 1);
    let mut index = BTreeMap::new();
    for k in 0..=top {
        let faces: Vec<FaceKey> =
            complex.faces_of_dim_sorted(k).into_iter().map(|c| c.key.clone()).collect();
        for (i, f) in faces.iter().enumerate() {
            index.insert(f.clone(), i);
        }
        basis.push(faces);
    }
    let mut boundary = Vec::with_capacity(top + 1);
    boundary.push(IntMatrix::zero(0, basis[0].len()));
    for k in 1..=top {
        let rows = basis[k - 1].len();
        let cols = basis[k].len();
        let mut m = IntMatrix::zero(rows, cols);
        for (col, key) in basis[k].iter().enumerate() {
            let cube = complex.cube(key).expect("basis face exists");
            let b = boundary_of_face(complex, cube);
            for (fk, v) in b.iter() {
                let row = index[fk];
                let val = match coefficients {
                    Coefficients::Integer => v.clone(),
                    Coefficients::Mod2 => v.mod_floor(&BigInt::from(2)),
                };
                m[(row, col)] = val;
            }
        }
        boundary.push(m);
    }
    ChainComplexData { coefficients, basis, index, boundary }
}

impl ChainComplexData {
    /// Chain as a coordinate column in its degree's basis.
    pub fn to_column(&self, chain: &Chain) -> Vec<BigInt> {
        let k = chain.degree();
        let mut col = vec![BigInt::zero(); self.basis.get(k).map_or(0, |b| b.len())];
        for (key, coeff) in chain.iter() {
            col[self.index[key]] = coeff.clone();
        }
        col
    }

    pub fn from_column(&self, degree: usize, col: &[BigInt]) -> Chain {
        let mut chain = Chain::zero(degree);
        for (i, v) in col.iter().enumerate() {
            chain.add_term(self.basis[degree][i].clone(), v.clone());
        }
        chain
    }

    pub fn dim_of(&self, degree: usize) -> usize {
        self.basis.get(degree).map_or(0, |b| b.len())
    }

    /// Boundary matrix out of the given degree; degrees above the top are
    /// zero maps.
    pub fn boundary_from(&self, degree: usize) -> IntMatrix {
        if degree == 0 || degree >= self.boundary.len() {
            IntMatrix::zero(
                if degree == 0 { 0 } else { self.dim_of(degree - 1) },
                self.dim_of(degree),
            )
        } else {
            self.boundary[degree].clone()
        }
    }
}

/// Betti number, ordered torsion coefficients, and optional generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    pub generators: Option<Vec<Chain>>,
}

impl HomologyResult {
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

fn rank_mod2(m: &IntMatrix) -> usize {
    let two = BigInt::from(2);
    let rows = m.rows();
    let cols = m.cols();
    let mut data: Vec<Vec<bool>> = (0..rows)
        .map(|i| (0..cols).map(|j| m[(i, j)].mod_floor(&two).is_one()).collect())
        .collect();
    let mut rank = 0;
    for j in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| data[i][j]) else { continue };
        data.swap(rank, piv);
        for i in 0..rows {
            if i != rank && data[i][j] {
                let (a, b) = if i < rank {
                    let (lo, hi) = data.split_at_mut(rank);
                    (&mut lo[i], &hi[0])
                } else {
                    let (lo, hi) = data.split_at_mut(i);
                    (&mut hi[0], &lo[rank])
                };
                for jj in 0..cols {
                    a[jj] ^= b[jj];
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Homology in one degree. Over the integers this is Betti plus torsion from
/// the Smith normal forms of the two adjacent boundary maps; generators are
/// reconstructed from the recorded unimodular transforms.
pub fn homology(
    complex: &CubicalComplex,
    degree: usize,
    coefficients: Coefficients,
    with_generators: bool,
) -> HomologyResult {
    let data = boundary_matrices(complex, Coefficients::Integer);
    homology_from_data(&data, degree, coefficients, with_generators)
}

pub fn homology_from_data(
    data: &ChainComplexData,
    degree: usize,
    coefficients: Coefficients,
    with_generators: bool,
) -> HomologyResult {
    let n_k = data.dim_of(degree);
    if n_k == 0 {
        return HomologyResult { betti: 0, torsion: vec![], generators: None };
    }
    let d_out = data.boundary_from(degree);
    let d_in = data.boundary_from(degree + 1);

    if coefficients == Coefficients::Mod2 {
        let betti = n_k - rank_mod2(&d_out) - rank_mod2(&d_in);
        return HomologyResult { betti, torsion: vec![], generators: None };
    }

    let kernel = integer_kernel_basis(&d_out);
    let z = kernel.len();
    // express the image of d_in in kernel coordinates: K * Y = d_in
    let kernel_mat = IntMatrix::new(
        n_k,
        z,
        (0..n_k)
            .flat_map(|i| kernel.iter().map(move |v| v[i].clone()))
            .collect(),
    );
    let relations = solve_integer(&kernel_mat, &d_in);
    let snf = smith_normal_form(&relations);
    let betti = z - snf.rank();
    let torsion = snf.torsion();

    let generators = if with_generators {
        // new cycle basis K * U^{-1}: columns r with factor 0 or > 1 generate
        let inv_left = integer_inverse(&snf.left);
        let new_basis = kernel_mat.mul(&inv_left);
        let mut gens = Vec::new();
        for (r, f) in snf.factors.iter().enumerate() {
            if *f > BigInt::one() {
                gens.push(data.from_column(degree, &new_basis.column(r)));
            }
        }
        for r in snf.rank()..z {
            gens.push(data.from_column(degree, &new_basis.column(r)));
        }
        Some(gens)
    } else {
        None
    };

    HomologyResult { betti, torsion, generators }
}

/// Cohomology of the transposed complex under (d F*)(x) = F*(boundary x);
/// no extra sign.
pub fn cohomology(
    complex: &CubicalComplex,
    degree: usize,
    coefficients: Coefficients,
    with_generators: bool,
) -> HomologyResult {
    let data = boundary_matrices(complex, Coefficients::Integer);
    cohomology_from_data(&data, degree, coefficients, with_generators)
}

pub fn cohomology_from_data(
    data: &ChainComplexData,
    degree: usize,
    coefficients: Coefficients,
    with_generators: bool,
) -> HomologyResult {
    let n_k = data.dim_of(degree);
    if n_k == 0 {
        return HomologyResult { betti: 0, torsion: vec![], generators: None };
    }
    // coboundary out of degree k is the transpose of the boundary into k
    let d_out = data.boundary_from(degree + 1).transpose();
    let d_in = data.boundary_from(degree).transpose();

    if coefficients == Coefficients::Mod2 {
        let betti = n_k - rank_mod2(&d_out) - rank_mod2(&d_in);
        return HomologyResult { betti, torsion: vec![], generators: None };
    }

    let kernel = integer_kernel_basis(&d_out);
    let z = kernel.len();
    let kernel_mat = IntMatrix::new(
        n_k,
        z,
        (0..n_k)
            .flat_map(|i| kernel.iter().map(move |v| v[i].clone()))
            .collect(),
    );
    let relations = solve_integer(&kernel_mat, &d_in);
    let snf = smith_normal_form(&relations);
    let betti = z - snf.rank();
    let torsion = snf.torsion();
    let generators = if with_generators {
        let inv_left = integer_inverse(&snf.left);
        let new_basis = kernel_mat.mul(&inv_left);
        let mut gens = Vec::new();
        for (r, f) in snf.factors.iter().enumerate() {
            if *f > BigInt::one() {
                gens.push(data.from_column(degree, &new_basis.column(r)));
            }
        }
        for r in snf.rank()..z {
            gens.push(data.from_column(degree, &new_basis.column(r)));
        }
        Some(gens)
    } else {
        None
    };
    HomologyResult { betti, torsion, generators }
}

/// Solve K * Y = B over the integers, where the columns of B lie in the
/// saturated lattice spanned by K (true for boundaries inside a kernel).
fn solve_integer(k: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    use crate::linalg::{QMat, Rat};
    let kq = QMat::new(
        k.rows(),
        k.cols(),
        (0..k.rows())
            .flat_map(|i| (0..k.cols()).map(move |j| Rat::from_integer(k[(i, j)].clone())))
            .collect(),
    );
    let bq = QMat::new(
        b.rows(),
        b.cols(),
        (0..b.rows())
            .flat_map(|i| (0..b.cols()).map(move |j| Rat::from_integer(b[(i, j)].clone())))
            .collect(),
    );
    let sol = kq.solve_matrix(&bq, None).expect("image lies in the kernel lattice");
    let mut out = IntMatrix::zero(k.cols(), b.cols());
    for i in 0..k.cols() {
        for j in 0..b.cols() {
            let v = &sol[(i, j)];
            assert!(v.is_integer(), "saturated kernel coordinates must be integral");
            out[(i, j)] = v.to_integer();
        }
    }
    out
}

/// Inverse of a unimodular integer matrix.
fn integer_inverse(u: &IntMatrix) -> IntMatrix {
    use crate::linalg::{QMat, Rat};
    let n = u.rows();
    let uq = QMat::new(
        n,
        n,
        (0..n)
            .flat_map(|i| (0..n).map(move |j| Rat::from_integer(u[(i, j)].clone())))
            .collect(),
    );
    let inv = uq.solve_matrix(&QMat::identity(n), None).expect("unimodular matrix inverts");
    let mut out = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            assert!(inv[(i, j)].is_integer());
            out[(i, j)] = inv[(i, j)].to_integer();
        }
    }
    out
}

/// Sum of the coefficients of a degree-0 chain.
pub fn augmentation(chain: &Chain) -> Result<BigInt, ChainError> {
    if chain.degree() != 0 {
        return Err(ChainError::WrongDegree { expected: 0, found: chain.degree() });
    }
    Ok(chain.iter().map(|(_, v)| v.clone()).sum())
}

/// Top-degree cycle with all coefficients +-1, found by sign propagation
/// across shared codimension-one faces. The lexicographically first top cube
/// of each component is normalized to +1.
pub fn fundamental_class(complex: &CubicalComplex) -> Result<Chain, ChainError> {
    let m = complex.top_dim();
    // purity: every face must be contained in an m-face
    let tops: Vec<&Cube> = complex.iter_faces().filter(|c| c.dim == m).collect();
    for c in complex.iter_faces() {
        let covered = c.dim == m
            || tops
                .iter()
                .any(|t| c.key.iter().all(|v| t.key.binary_search(v).is_ok()));
        if !covered {
            return Err(ChainError::NotClosed {
                reason: format!("face {{{}}} lies in no top cube", complex.render_key(&c.key)),
            });
        }
    }

    // ridge -> incident (top cube, coefficient of ridge in its boundary)
    let mut incidence: BTreeMap<FaceKey, Vec<(FaceKey, BigInt)>> = BTreeMap::new();
    let data = boundary_matrices(complex, Coefficients::Integer);
    for t in &tops {
        let b = boundary_of_face(complex, t);
        for (ridge, coeff) in b.iter() {
            incidence.entry(ridge.clone()).or_default().push((t.key.clone(), coeff.clone()));
        }
    }
    for (ridge, inc) in &incidence {
        if inc.len() != 2 {
            return Err(ChainError::NotClosed {
                reason: format!(
                    "face {{{}}} lies in {} top cubes, expected 2",
                    complex.render_key(ridge),
                    inc.len()
                ),
            });
        }
    }

    // breadth-first sign propagation, component by component, seeded at the
    // basis-order (lexicographic) first unvisited top cube
    let mut signs: BTreeMap<FaceKey, BigInt> = BTreeMap::new();
    let top_order: Vec<FaceKey> = data.basis[m].clone();
    let mut neighbors: BTreeMap<FaceKey, Vec<(FaceKey, BigInt, BigInt)>> = BTreeMap::new();
    for inc in incidence.values() {
        let (a, ca) = &inc[0];
        let (b, cb) = &inc[1];
        neighbors.entry(a.clone()).or_default().push((b.clone(), ca.clone(), cb.clone()));
        neighbors.entry(b.clone()).or_default().push((a.clone(), cb.clone(), ca.clone()));
    }
    for seed in &top_order {
        if signs.contains_key(seed) {
            continue;
        }
        signs.insert(seed.clone(), BigInt::one());
        let mut queue = std::collections::VecDeque::from([seed.clone()]);
        while let Some(cur) = queue.pop_front() {
            let cur_sign = signs[&cur].clone();
            for (next, c_cur, c_next) in neighbors.get(&cur).cloned().unwrap_or_default() {
                // cancellation: sign(cur) c_cur + sign(next) c_next = 0
                let required = -(&cur_sign * &c_cur) / &c_next;
                match signs.get(&next) {
                    None => {
                        signs.insert(next.clone(), required);
                        queue.push_back(next);
                    }
                    Some(s) if *s == required => {}
                    Some(_) => return Err(ChainError::NonOrientable),
                }
            }
        }
    }

    let mut chain = Chain::zero(m);
    for (k, s) in signs {
        debug_assert!(s.abs().is_one());
        chain.add_term(k, s);
    }
    // verify the propagated signs really form a cycle
    if !boundary_of_chain(complex, &chain).is_zero() {
        return Err(ChainError::NonOrientable);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::generate::*;

    fn betti_profile(c: &CubicalComplex) -> Vec<usize> {
        (0..=c.top_dim())
            .map(|k| homology(c, k, Coefficients::Integer, false).betti)
            .collect()
    }

    #[test]
    fn edge_boundary_is_difference() {
        let c = crate::complex::CubicalComplex::build_and_validate(&[
            crate::complex::CubeSpec::new(vec!["v0".into(), "v1".into()]),
        ])
        .unwrap();
        let e = c.cube(&c.key_from_names(&["v0".into(), "v1".into()]).unwrap()).unwrap();
        let b = boundary_of_face(&c, e);
        let v0 = c.key_from_names(&["v0".into()]).unwrap();
        let v1 = c.key_from_names(&["v1".into()]).unwrap();
        assert_eq!(b.coefficient(&v0), BigInt::from(-1));
        assert_eq!(b.coefficient(&v1), BigInt::from(1));
    }

    #[test]
    fn square_boundary_expansion() {
        // boundary Q = (right - left) + (bottom - top)
        let sq = standard_cube(2).unwrap();
        let top_key = sq.top_cubes()[0].key.clone();
        let q = sq.cube(&top_key).unwrap();
        let b = boundary_of_face(&sq, q);
        let name = |k: usize| format!("c{k:02b}");
        let face = |a: usize, b: usize| {
            sq.key_from_names(&[name(a), name(b)]).unwrap()
        };
        // coordinates: bit 0 is x (coordinate 1), bit 1 is y (coordinate 2)
        let left = face(0b00, 0b10); // x = 0
        let right = face(0b01, 0b11); // x = 1
        let bottom = face(0b00, 0b01); // y = 0
        let top = face(0b10, 0b11); // y = 1
        assert_eq!(b.coefficient(&right), BigInt::one());
        assert_eq!(b.coefficient(&left), BigInt::from(-1));
        assert_eq!(b.coefficient(&bottom), BigInt::one());
        assert_eq!(b.coefficient(&top), BigInt::from(-1));
    }

    #[test]
    fn boundary_squared_vanishes_on_builtins() {
        for c in [
            point(),
            path(5).unwrap(),
            circle(3).unwrap(),
            standard_cube(3).unwrap(),
            cube_boundary(3).unwrap(),
            torus_grid(4, 4).unwrap(),
            klein_corpus(),
        ] {
            let data = boundary_matrices(&c, Coefficients::Integer);
            for k in 2..=c.top_dim() {
                let prod = data.boundary[k - 1].mul(&data.boundary[k]);
                for i in 0..prod.rows() {
                    for j in 0..prod.cols() {
                        assert!(prod[(i, j)].is_zero(), "d^2 != 0 at degree {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn homology_of_point_and_circle() {
        let p = point();
        let h0 = homology(&p, 0, Coefficients::Integer, false);
        assert_eq!((h0.betti, h0.torsion.len()), (1, 0));
        let c = circle(3).unwrap();
        assert_eq!(betti_profile(&c), vec![1, 1]);
        let h1 = cohomology(&c, 1, Coefficients::Integer, false);
        assert_eq!((h1.betti, h1.torsion.len()), (1, 0));
    }

    #[test]
    fn homology_of_torus_and_sphere() {
        let t = torus_grid(4, 4).unwrap();
        assert_eq!(betti_profile(&t), vec![1, 2, 1]);
        for k in 0..=2 {
            assert!(homology(&t, k, Coefficients::Integer, false).torsion.is_empty());
        }
        let s = cube_boundary(3).unwrap();
        assert_eq!(betti_profile(&s), vec![1, 0, 1]);
    }

    #[test]
    fn homology_of_klein_bottle() {
        let k = klein_corpus();
        let h0 = homology(&k, 0, Coefficients::Integer, false);
        assert_eq!((h0.betti, h0.torsion.clone()), (1, vec![]));
        let h1 = homology(&k, 1, Coefficients::Integer, false);
        assert_eq!(h1.betti, 1);
        assert_eq!(h1.torsion, vec![BigInt::from(2)]);
        let h2 = homology(&k, 2, Coefficients::Integer, false);
        assert_eq!((h2.betti, h2.torsion.len()), (0, 0));
        // over Z/2 degree 1 has dimension 2
        let h1m2 = homology(&k, 1, Coefficients::Mod2, false);
        assert_eq!(h1m2.betti, 2);
        // cohomology H^2 = Z/2
        let h2c = cohomology(&k, 2, Coefficients::Integer, false);
        assert_eq!((h2c.betti, h2c.torsion.clone()), (0, vec![BigInt::from(2)]));
    }

    #[test]
    fn fundamental_classes() {
        let s = cube_boundary(3).unwrap();
        let fc = fundamental_class(&s).unwrap();
        assert!(boundary_of_chain(&s, &fc).is_zero());
        assert_eq!(fc.iter().count(), 6);

        let t = torus_grid(4, 4).unwrap();
        let fc = fundamental_class(&t).unwrap();
        assert!(boundary_of_chain(&t, &fc).is_zero());

        assert_eq!(fundamental_class(&klein_corpus()), Err(ChainError::NonOrientable));
        assert!(matches!(
            fundamental_class(&path(3).unwrap()),
            Err(ChainError::NotClosed { .. })
        ));
    }

    #[test]
    fn augmentation_rules() {
        let c = path(1).unwrap();
        let e = c.top_cubes()[0].key.clone();
        let cube = c.cube(&e).unwrap();
        let b = boundary_of_face(&c, cube);
        assert_eq!(augmentation(&b).unwrap(), BigInt::zero());
        let mut ch = Chain::zero(0);
        ch.add_term(c.key_from_names(&["p0".into()]).unwrap(), BigInt::from(3));
        ch.add_term(c.key_from_names(&["p1".into()]).unwrap(), BigInt::from(-2));
        assert_eq!(augmentation(&ch).unwrap(), BigInt::one());
        let edge_chain = Chain::single(1, e);
        assert!(matches!(
            augmentation(&edge_chain),
            Err(ChainError::WrongDegree { .. })
        ));
    }

    #[test]
    fn face_boundary_sign_formula() {
        assert_eq!(cube_face_boundary_sign(1, 1, 0), -1);
        for n in 1..=4usize {
            for i in 1..=n {
                for j in 0..2usize {
                    let expected = if (i + j) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(cube_face_boundary_sign(n, i, j), expected, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn face_boundary_sign_matches_matrices() {
        for n in 1..=4usize {
            let c = standard_cube(n).unwrap();
            let top_key = c.top_cubes()[0].key.clone();
            let cube = c.cube(&top_key).unwrap();
            let b = boundary_of_face(&c, cube);
            for i in 1..=n {
                for j in 0..2usize {
                    let mut key = c.facet(cube, i, j);
                    key.sort_unstable();
                    let coeff = b.coefficient(&key);
                    assert_eq!(
                        coeff,
                        BigInt::from(cube_face_boundary_sign(n, i, j) as i64),
                        "n={n} i={i} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn euler_characteristic_equals_betti_alternation() {
        for c in [
            circle(4).unwrap(),
            torus_grid(3, 3).unwrap(),
            cube_boundary(3).unwrap(),
            klein_corpus(),
        ] {
            let chi: i64 = c.euler_characteristic();
            let alt: i64 = (0..=c.top_dim())
                .map(|k| {
                    let b = homology(&c, k, Coefficients::Integer, false).betti as i64;
                    if k % 2 == 0 {
                        b
                    } else {
                        -b
                    }
                })
                .sum();
            assert_eq!(chi, alt);
        }
    }

    #[test]
    fn uct_rank_and_torsion_shift() {
        for c in [torus_grid(3, 3).unwrap(), klein_corpus(), cube_boundary(3).unwrap()] {
            for k in 0..=c.top_dim() {
                let h = homology(&c, k, Coefficients::Integer, false);
                let hc = cohomology(&c, k, Coefficients::Integer, false);
                assert_eq!(h.betti, hc.betti, "rank H^{k} = rank H_{k}");
                let prev = if k == 0 {
                    vec![]
                } else {
                    homology(&c, k - 1, Coefficients::Integer, false).torsion
                };
                assert_eq!(hc.torsion, prev, "torsion H^{k} = torsion H_{k}-1");
            }
        }
    }

    #[test]
    fn generators_are_independent_cycles() {
        let k = klein_corpus();
        let h1 = homology(&k, 1, Coefficients::Integer, true);
        let gens = h1.generators.unwrap();
        assert_eq!(gens.len(), 2); // one torsion, one free
        for g in &gens {
            assert!(boundary_of_chain(&k, g).is_zero());
        }
    }
}
