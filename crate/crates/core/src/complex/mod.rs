//! Ordered cubical complexes: a poset of vertices together with cubes whose
//! characteristic maps identify their vertex sets with power-set posets.
//! Faces are determined by their vertex sets; validation enforces face
//! closure, characteristic-map compatibility and global poset consistency.

pub mod generate;
pub mod subdivide;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("order relations from cubes are inconsistent (cycle through vertex '{vertex}')")]
    PosetCycle { vertex: String },
    #[error("two distinct cubes share the vertex set {{{vertices}}}")]
    DuplicateVertexSet { vertices: String },
    #[error("malformed cube spec: {reason}")]
    MalformedSpec { reason: String },
    #[error("interval closure failure at vertex set {{{vertices}}}")]
    IntervalClosureFailure { vertices: String },
    #[error("unknown face {{{vertices}}}")]
    UnknownFace { vertices: String },
    #[error("parameter too small: {reason}")]
    ParamTooSmall { reason: String },
    #[error("unknown corpus entry '{name}'")]
    UnknownCorpusEntry { name: String },
}

/// Index of a vertex within a complex; display names are kept alongside.
pub type VertexIdx = u32;

/// Ordered list of 2^n vertices: position k holds the vertex mapped by the
/// characteristic map to the subset of {1..n} with binary encoding k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeSpec {
    pub vertex_list: Vec<String>,
}

impl CubeSpec {
    pub fn new(vertex_list: Vec<String>) -> Self {
        CubeSpec { vertex_list }
    }

    pub fn dim(&self) -> usize {
        self.vertex_list.len().trailing_zeros() as usize
    }
}

/// Sorted vertex-index set identifying a face.
pub type FaceKey = Vec<VertexIdx>;

/// A face of a validated complex: its key, dimension, and the ordered list
/// of vertex indices realizing the characteristic map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    pub key: FaceKey,
    pub dim: usize,
    /// position k holds the vertex with binary encoding k
    pub list: Vec<VertexIdx>,
}

/// Reference to a face of a specific complex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceRef {
    pub key: FaceKey,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct CubicalComplex {
    vertex_names: Vec<String>,
    vertex_index: HashMap<String, VertexIdx>,
    /// all faces, keyed by sorted vertex set
    cubes: BTreeMap<FaceKey, Cube>,
    /// reachability closure of the union of per-cube orders
    reach: Vec<BTreeSet<VertexIdx>>,
    top_dim: usize,
}

fn encode_subset(bits: usize, of: &[usize]) -> usize {
    // subset of coordinate positions -> binary code
    let mut k = 0;
    for (i, &c) in of.iter().enumerate() {
        if bits & (1 << c) != 0 {
            k |= 1 << i;
        }
    }
    k
}

impl CubicalComplex {
    /// Build the face closure of the listed cubes and verify every invariant.
    pub fn build_and_validate(specs: &[CubeSpec]) -> Result<Self, ComplexError> {
        // intern vertices in first-appearance order
        let mut vertex_names: Vec<String> = Vec::new();
        let mut vertex_index: HashMap<String, VertexIdx> = HashMap::new();
        for spec in specs {
            let len = spec.vertex_list.len();
            if len == 0 || !len.is_power_of_two() {
                return Err(ComplexError::MalformedSpec {
                    reason: format!("vertex list length {len} is not a power of two"),
                });
            }
            let mut seen = BTreeSet::new();
            for v in &spec.vertex_list {
                if v.is_empty() || v.chars().any(|c| c.is_whitespace()) {
                    return Err(ComplexError::MalformedSpec {
                        reason: format!("invalid vertex name '{v}'"),
                    });
                }
                if !seen.insert(v.clone()) {
                    return Err(ComplexError::MalformedSpec {
                        reason: format!("repeated vertex '{v}' in cube"),
                    });
                }
                if !vertex_index.contains_key(v) {
                    vertex_index.insert(v.clone(), vertex_names.len() as VertexIdx);
                    vertex_names.push(v.clone());
                }
            }
        }

        // insert all interval faces of every listed cube
        let mut cubes: BTreeMap<FaceKey, Cube> = BTreeMap::new();
        let mut listed: BTreeSet<FaceKey> = BTreeSet::new();
        let mut top_dim = 0;
        for spec in specs {
            let n = spec.dim();
            top_dim = top_dim.max(n);
            let list: Vec<VertexIdx> =
                spec.vertex_list.iter().map(|v| vertex_index[v]).collect();
            let key = Self::key_of(&list);
            let is_new_listed = listed.insert(key.clone());
            if !is_new_listed {
                // the same vertex set was listed twice; identical lists are
                // a harmless repetition, different lists are duplicates
                if cubes.get(&key).map(|c| &c.list) != Some(&list) {
                    return Err(ComplexError::DuplicateVertexSet {
                        vertices: Self::render_key_with(&vertex_names, &key),
                    });
                }
                continue;
            }
            if let Some(existing) = cubes.get(&key) {
                if existing.list != list {
                    return Err(ComplexError::DuplicateVertexSet {
                        vertices: Self::render_key_with(&vertex_names, &key),
                    });
                }
            }
            // enumerate intervals [u, w], u subset of w
            for w_bits in 0..(1usize << n) {
                let coords: Vec<usize> = (0..n).filter(|c| w_bits & (1 << c) != 0).collect();
                let mut u_bits = 0usize;
                loop {
                    // u ranges over subsets of the complement of w within w's
                    // bound-to-one part: intervals are pairs u <= w, so u is
                    // any subset of w_bits' complement? No: u <= w means
                    // u's set is a subset of w's set.
                    // iterate u over subsets of w_bits
                    let u = u_bits;
                    let free: Vec<usize> =
                        coords.iter().copied().filter(|c| u & (1 << c) == 0).collect();
                    // face vertices: subsets s with u <= s <= w
                    let fdim = free.len();
                    let mut flist = Vec::with_capacity(1 << fdim);
                    for t in 0..(1usize << fdim) {
                        let mut s = u;
                        for (i, &c) in free.iter().enumerate() {
                            if t & (1 << i) != 0 {
                                s |= 1 << c;
                            }
                        }
                        flist.push(list[s]);
                    }
                    let fkey = Self::key_of(&flist);
                    let face = Cube { key: fkey.clone(), dim: fdim, list: flist };
                    match cubes.get(&fkey) {
                        None => {
                            cubes.insert(fkey, face);
                        }
                        Some(existing) if existing.list == face.list => {}
                        Some(_) => {
                            // conflicting characteristic maps on one vertex set
                            let err = if listed.contains(&fkey) && fdim == n {
                                ComplexError::DuplicateVertexSet {
                                    vertices: Self::render_key_with(&vertex_names, &fkey),
                                }
                            } else {
                                ComplexError::IntervalClosureFailure {
                                    vertices: Self::render_key_with(&vertex_names, &fkey),
                                }
                            };
                            return Err(err);
                        }
                    }
                    if u_bits == w_bits {
                        break;
                    }
                    u_bits = (u_bits.wrapping_sub(w_bits)) & w_bits; // next subset
                }
            }
        }

        // global poset: cover relations from each cube, then reachability
        let nv = vertex_names.len();
        let mut succ: Vec<BTreeSet<VertexIdx>> = vec![BTreeSet::new(); nv];
        for cube in cubes.values() {
            let n = cube.dim;
            for s in 0..(1usize << n) {
                for c in 0..n {
                    if s & (1 << c) == 0 {
                        let t = s | (1 << c);
                        succ[cube.list[s] as usize].insert(cube.list[t]);
                    }
                }
            }
        }
        let reach = transitive_closure(&succ);
        for (v, r) in reach.iter().enumerate() {
            if r.contains(&(v as VertexIdx)) {
                return Err(ComplexError::PosetCycle { vertex: vertex_names[v].clone() });
            }
        }

        Ok(CubicalComplex { vertex_names, vertex_index, cubes, reach, top_dim })
    }

    fn key_of(list: &[VertexIdx]) -> FaceKey {
        let mut key: Vec<VertexIdx> = list.to_vec();
        key.sort_unstable();
        key
    }

    fn render_key_with(names: &[String], key: &FaceKey) -> String {
        key.iter().map(|&v| names[v as usize].as_str()).collect::<Vec<_>>().join(",")
    }

    pub fn render_key(&self, key: &FaceKey) -> String {
        Self::render_key_with(&self.vertex_names, key)
    }

    pub fn vertex_name(&self, v: VertexIdx) -> &str {
        &self.vertex_names[v as usize]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn top_dim(&self) -> usize {
        self.top_dim
    }

    pub fn face_count(&self) -> usize {
        self.cubes.len()
    }

    /// v < w in the global vertex poset
    pub fn vertex_lt(&self, v: VertexIdx, w: VertexIdx) -> bool {
        self.reach[v as usize].contains(&w)
    }

    pub fn contains(&self, key: &FaceKey) -> bool {
        self.cubes.contains_key(key)
    }

    pub fn cube(&self, key: &FaceKey) -> Result<&Cube, ComplexError> {
        self.cubes.get(key).ok_or_else(|| ComplexError::UnknownFace {
            vertices: self.render_key(key),
        })
    }

    pub fn face_ref(&self, key: &FaceKey) -> Result<FaceRef, ComplexError> {
        let cube = self.cube(key)?;
        Ok(FaceRef { key: cube.key.clone(), dim: cube.dim })
    }

    /// Resolve a list of vertex names to a face key.
    pub fn key_from_names(&self, names: &[String]) -> Result<FaceKey, ComplexError> {
        let mut key = Vec::with_capacity(names.len());
        for n in names {
            match self.vertex_index.get(n) {
                Some(&i) => key.push(i),
                None => {
                    return Err(ComplexError::UnknownFace { vertices: names.join(",") });
                }
            }
        }
        key.sort_unstable();
        key.dedup();
        Ok(key)
    }

    /// All faces in deterministic order (by dimension, then by vertex set in
    /// lexicographic vertex-name order is NOT used; keys sort by index which
    /// follows first appearance). Callers needing name-lexicographic order
    /// should use `faces_of_dim_sorted`.
    pub fn iter_faces(&self) -> impl Iterator<Item = &Cube> {
        self.cubes.values()
    }

    /// Faces of one dimension, sorted lexicographically by vertex-name set.
    pub fn faces_of_dim_sorted(&self, dim: usize) -> Vec<&Cube> {
        let mut faces: Vec<&Cube> = self.cubes.values().filter(|c| c.dim == dim).collect();
        faces.sort_by_cached_key(|c| {
            let mut names: Vec<&str> =
                c.key.iter().map(|&v| self.vertex_names[v as usize].as_str()).collect();
            names.sort_unstable();
            names.iter().map(|s| s.to_string()).collect::<Vec<_>>()
        });
        faces
    }

    /// Top cubes (faces not properly contained in another face).
    pub fn top_cubes(&self) -> Vec<&Cube> {
        let mut tops: Vec<&Cube> = Vec::new();
        let mut keys: BTreeSet<&FaceKey> = self.cubes.keys().collect();
        for cube in self.cubes.values().rev() {
            if !keys.contains(&cube.key) {
                continue;
            }
            // a face is top iff no strictly larger cube contains all its
            // vertices; check by scanning larger-dimension cubes
            let is_top = !self.cubes.values().any(|other| {
                other.dim > cube.dim && cube.key.iter().all(|v| other.key.binary_search(v).is_ok())
            });
            if is_top {
                tops.push(cube);
                keys.remove(&cube.key);
            }
        }
        tops.sort_by(|a, b| a.key.cmp(&b.key));
        tops
    }

    /// All 3^dim faces of a face together with their defining intervals
    /// [u, w] in the face's own coordinates.
    pub fn faces(&self, face: &FaceRef) -> Result<Vec<(FaceRef, (usize, usize))>, ComplexError> {
        let cube = self.cube(&face.key)?;
        let n = cube.dim;
        let mut out = Vec::new();
        for w_bits in 0..(1usize << n) {
            let mut u_bits = 0usize;
            loop {
                let sub = self.interval_face(cube, u_bits, w_bits);
                out.push((
                    FaceRef { key: Self::key_of(&sub), dim: (w_bits & !u_bits).count_ones() as usize },
                    (u_bits, w_bits),
                ));
                if u_bits == w_bits {
                    break;
                }
                u_bits = (u_bits.wrapping_sub(w_bits)) & w_bits;
            }
        }
        Ok(out)
    }

    /// Vertex list of the interval face [u, w] of a cube.
    pub fn interval_face(&self, cube: &Cube, u_bits: usize, w_bits: usize) -> Vec<VertexIdx> {
        debug_assert_eq!(u_bits & !w_bits, 0, "u must be a subset of w");
        let free: Vec<usize> =
            (0..cube.dim).filter(|c| (w_bits & !u_bits) & (1 << c) != 0).collect();
        let mut flist = Vec::with_capacity(1 << free.len());
        for t in 0..(1usize << free.len()) {
            let mut s = u_bits;
            for (i, &c) in free.iter().enumerate() {
                if t & (1 << i) != 0 {
                    s |= 1 << c;
                }
            }
            flist.push(cube.list[s]);
        }
        flist
    }

    /// The facet of `cube` with coordinate `i` (1-based) bound to `j`.
    pub fn facet(&self, cube: &Cube, i: usize, j: usize) -> Vec<VertexIdx> {
        debug_assert!(1 <= i && i <= cube.dim && j <= 1);
        let c = i - 1;
        let w_bits = ((1usize << cube.dim) - 1) & !(1 << c);
        let u_bits = if j == 1 { 1 << c } else { 0 };
        // [u, u | w] where the remaining coords stay free
        let mut flist = Vec::with_capacity(1 << (cube.dim - 1));
        for t in 0..(1usize << cube.dim) {
            if (t >> c) & 1 == j {
                let _ = w_bits;
                let _ = u_bits;
                flist.push(cube.list[t]);
            }
        }
        // reorder: positions must follow the binary encoding on remaining coords
        // (they already do: t with bit c fixed, increasing t enumerates the
        // remaining coordinates in order)
        flist
    }

    /// Product complex: vertices are pairs, cubes are pairwise products with
    /// the left factor's coordinates first.
    pub fn product(&self, other: &CubicalComplex) -> Result<CubicalComplex, ComplexError> {
        let mut specs = Vec::new();
        for a in self.top_cubes() {
            for b in other.top_cubes() {
                let s = a.dim;
                let t = b.dim;
                let mut list = Vec::with_capacity(1 << (s + t));
                for k in 0..(1usize << (s + t)) {
                    let ka = k & ((1 << s) - 1);
                    let kb = k >> s;
                    list.push(format!(
                        "{}|{}",
                        self.vertex_name(a.list[ka]),
                        other.vertex_name(b.list[kb])
                    ));
                }
                specs.push(CubeSpec::new(list));
            }
        }
        CubicalComplex::build_and_validate(&specs)
    }

    /// Euler characteristic: alternating sum of face counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.cubes
            .values()
            .map(|c| if c.dim % 2 == 0 { 1i64 } else { -1i64 })
            .sum()
    }

    /// Top cubes as specs with vertex names, for rebuilding and serialization.
    pub fn top_cube_specs(&self) -> Vec<CubeSpec> {
        self.top_cubes()
            .iter()
            .map(|c| {
                CubeSpec::new(c.list.iter().map(|&v| self.vertex_name(v).to_string()).collect())
            })
            .collect()
    }

    /// Count faces per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.top_dim + 1];
        for c in self.cubes.values() {
            f[c.dim] += 1;
        }
        f
    }
}

fn transitive_closure(succ: &[BTreeSet<VertexIdx>]) -> Vec<BTreeSet<VertexIdx>> {
    let n = succ.len();
    let mut reach = vec![BTreeSet::new(); n];
    for start in 0..n {
        let mut stack: Vec<VertexIdx> = succ[start].iter().copied().collect();
        while let Some(v) = stack.pop() {
            if reach[start].insert(v) {
                for &w in &succ[v as usize] {
                    if !reach[start].contains(&w) {
                        stack.push(w);
                    }
                }
            }
        }
    }
    reach
}
