//! Central subdivision. Faces of sd(X) are pairs (E, G) with E a face of G;
//! the pair corresponds to the face of the subdivided cube G whose
//! coordinates free in E are bound to the midpoint and whose coordinates
//! bound in E range over the adjacent half-interval.

use super::{Cube, CubicalComplex, CubeSpec, FaceKey};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// A face of the subdivision, identified by the pair of vertex-set keys.
pub type SdKey = (FaceKey, FaceKey);

/// Sparse integer chain on subdivision faces of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualChain {
    degree: usize,
    terms: BTreeMap<SdKey, BigInt>,
}

impl DualChain {
    pub fn zero(degree: usize) -> Self {
        DualChain { degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: SdKey, coeff: BigInt) {
        use num_traits::Zero;
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, key: &SdKey) -> BigInt {
        use num_traits::Zero;
        self.terms.get(key).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SdKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn mod2(&self) -> DualChain {
        use num_integer::Integer;
        use num_traits::One;
        let mut out = DualChain::zero(self.degree);
        for (k, v) in &self.terms {
            if v.is_odd() {
                out.add_term(k.clone(), BigInt::one());
            }
        }
        out
    }
}

/// The central subdivision of a complex: the pair poset together with the
/// boundary operator of the realized subdivision.
#[derive(Debug, Clone)]
pub struct SubdividedComplex {
    /// faces grouped by dimension (dim G - dim E), each as (E, G)
    pub faces: Vec<Vec<SdKey>>,
    pub index: BTreeMap<SdKey, usize>,
    top_dim: usize,
}

impl SubdividedComplex {
    pub fn top_dim(&self) -> usize {
        self.top_dim
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(|f| f.len()).sum()
    }

    pub fn dim_of(&self, degree: usize) -> usize {
        self.faces.get(degree).map_or(0, |f| f.len())
    }
}

/// Enumerate all pairs (E, G) with E a face of G.
pub fn central_subdivision(complex: &CubicalComplex) -> SubdividedComplex {
    let top = complex.top_dim();
    let mut faces: Vec<Vec<SdKey>> = vec![Vec::new(); top + 1];
    for g in complex.iter_faces() {
        let n = g.dim;
        for w_bits in 0..(1usize << n) {
            let mut u_bits = 0usize;
            loop {
                let e_list = complex.interval_face(g, u_bits, w_bits);
                let mut e_key = e_list;
                e_key.sort_unstable();
                let e_dim = (w_bits & !u_bits).count_ones() as usize;
                faces[n - e_dim].push((e_key, g.key.clone()));
                if u_bits == w_bits {
                    break;
                }
                u_bits = (u_bits.wrapping_sub(w_bits)) & w_bits;
            }
        }
    }
    let mut index = BTreeMap::new();
    for bucket in &mut faces {
        bucket.sort();
        bucket.dedup();
    }
    for bucket in &faces {
        for (i, k) in bucket.iter().enumerate() {
            index.insert(k.clone(), i);
        }
    }
    SubdividedComplex { faces, index, top_dim: top }
}

/// How E sits inside G: for each coordinate of G, either free in E or bound
/// to 0 or 1. Returns (epsilons, free positions): epsilons[c] = None when
/// coordinate c of G is free in E.
fn bindings_within(complex: &CubicalComplex, e_key: &FaceKey, g: &Cube) -> Vec<Option<usize>> {
    // E's vertex positions within G's binary coding
    let positions: Vec<usize> = (0..(1usize << g.dim))
        .filter(|&s| e_key.binary_search(&g.list[s]).is_ok())
        .collect();
    let u = positions.iter().fold(usize::MAX, |a, &b| a & b);
    let w = positions.iter().fold(0usize, |a, &b| a | b);
    (0..g.dim)
        .map(|c| {
            if w & (1 << c) != 0 && u & (1 << c) == 0 {
                None // free in E
            } else {
                Some((u >> c) & 1)
            }
        })
        .collect()
}

/// Boundary of a subdivision face (E, G): per coordinate free in (E, G)
/// (free in G, bound in E to epsilon), binding to the midpoint gives the
/// internal facet (E^+, G); binding to the outer endpoint gives the external
/// facet (E, G'). Signs follow the cube boundary formula with the coordinate
/// order of G.
pub fn sd_boundary_of_face(
    complex: &CubicalComplex,
    key: &SdKey,
) -> (DualChain, DualChain) {
    let (e_key, g_key) = key;
    let g = complex.cube(g_key).expect("pair names faces");
    let bindings = bindings_within(complex, e_key, g);
    let free_coords: Vec<(usize, usize)> = bindings
        .iter()
        .enumerate()
        .filter_map(|(c, b)| b.map(|eps| (c, eps)))
        .collect();
    let degree = free_coords.len();
    let mut internal = DualChain::zero(degree.saturating_sub(1));
    let mut external = DualChain::zero(degree.saturating_sub(1));
    for (pos, &(c, eps)) in free_coords.iter().enumerate() {
        let i = pos + 1; // 1-based position among the face's free coordinates
        // internal facet: coordinate c becomes free in E
        let mut u_bits = 0usize;
        let mut w_bits = 0usize;
        for (cc, b) in bindings.iter().enumerate() {
            match b {
                None => {
                    w_bits |= 1 << cc;
                }
                Some(1) if cc != c => {
                    u_bits |= 1 << cc;
                    w_bits |= 1 << cc;
                }
                _ => {}
            }
        }
        // E^+: frees coordinate c as well
        let eplus_bits_w = w_bits | (1 << c);
        let eplus_bits_u = u_bits;
        let mut eplus = complex.interval_face(g, eplus_bits_u, eplus_bits_w);
        eplus.sort_unstable();
        // sign of the internal facet: midpoint is the high end for eps = 0
        // and the low end for eps = 1
        let internal_sign = if (i + eps) % 2 == 0 { -1i64 } else { 1 };
        internal.add_term((eplus, g_key.clone()), BigInt::from(internal_sign));

        // external facet: G' binds coordinate c to eps, E unchanged
        let gprime_w = ((1usize << g.dim) - 1) & !(1 << c);
        let gprime_u = if eps == 1 { 1 << c } else { 0 };
        let mut gprime = complex.interval_face(g, gprime_u, gprime_w | gprime_u);
        gprime.sort_unstable();
        let external_sign = if (i + eps) % 2 == 0 { 1i64 } else { -1 };
        external.add_term((e_key.clone(), gprime), BigInt::from(external_sign));
    }
    (internal, external)
}

/// Full boundary of a dual chain in the subdivision.
pub fn sd_boundary(complex: &CubicalComplex, chain: &DualChain) -> DualChain {
    let mut out = DualChain::zero(chain.degree().saturating_sub(1));
    for (key, coeff) in chain.iter() {
        let (internal, external) = sd_boundary_of_face(complex, key);
        for (k, v) in internal.iter().chain(external.iter()) {
            out.add_term(k.clone(), v * coeff);
        }
    }
    out
}

/// The subdivision realized as an honest cubical complex: vertices are the
/// centers of faces, named by the face's sorted vertex set; top cubes are
/// the pairs (vertex, top cube).
pub fn sd_as_complex(complex: &CubicalComplex) -> CubicalComplex {
    let center_name = |key: &FaceKey| -> String {
        let mut names: Vec<&str> =
            key.iter().map(|&v| complex.vertex_name(v)).collect();
        names.sort_unstable();
        format!("[{}]", names.join("."))
    };
    let mut specs = Vec::new();
    for g in complex.top_cubes() {
        let n = g.dim;
        for corner in 0..(1usize << n) {
            // subcube at this corner: vertex k is the center of the face
            // with free set S (the bits of k), bound elsewhere matching the
            // corner
            let mut list = Vec::with_capacity(1 << n);
            for k in 0..(1usize << n) {
                let u = corner & !k;
                let w = corner | k;
                let mut fkey = complex.interval_face(g, u, w);
                fkey.sort_unstable();
                list.push(center_name(&fkey));
            }
            specs.push(CubeSpec::new(list));
        }
    }
    CubicalComplex::build_and_validate(&specs).expect("subdivision of a valid complex is valid")
}
