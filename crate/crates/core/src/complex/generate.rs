//! Built-in complex generators and the fixed corpus.

use super::{ComplexError, CubeSpec, CubicalComplex};

/// A single vertex.
pub fn point() -> CubicalComplex {
    CubicalComplex::build_and_validate(&[CubeSpec::new(vec!["pt".into()])])
        .expect("point complex is valid")
}

/// The standard n-cube as one top cube with binary-coded vertex names.
pub fn standard_cube(n: usize) -> Result<CubicalComplex, ComplexError> {
    assert!(n <= 16, "cube dimension out of range");
    let list: Vec<String> = (0..(1usize << n)).map(|k| format!("c{k:0>width$b}", width = n.max(1))).collect();
    CubicalComplex::build_and_validate(&[CubeSpec::new(list)])
}

/// The boundary of the standard n-cube: its 2n facets as top cubes.
pub fn cube_boundary(n: usize) -> Result<CubicalComplex, ComplexError> {
    if n == 0 {
        return Err(ComplexError::ParamTooSmall {
            reason: "cube-boundary requires n >= 1".into(),
        });
    }
    let name = |k: usize| format!("c{k:0>width$b}", width = n);
    let mut specs = Vec::new();
    for c in 0..n {
        for j in 0..2usize {
            let mut list = Vec::with_capacity(1 << (n - 1));
            for k in 0..(1usize << n) {
                if (k >> c) & 1 == j {
                    list.push(name(k));
                }
            }
            specs.push(CubeSpec::new(list));
        }
    }
    CubicalComplex::build_and_validate(&specs)
}

/// A path with k edges and k+1 vertices.
pub fn path(k: usize) -> Result<CubicalComplex, ComplexError> {
    if k == 0 {
        return Err(ComplexError::ParamTooSmall { reason: "path requires k >= 1".into() });
    }
    let specs: Vec<CubeSpec> = (0..k)
        .map(|i| CubeSpec::new(vec![format!("p{i}"), format!("p{}", i + 1)]))
        .collect();
    CubicalComplex::build_and_validate(&specs)
}

/// A circle with k vertices and k edges; the seam edge runs from c0 so the
/// poset stays acyclic.
pub fn circle(k: usize) -> Result<CubicalComplex, ComplexError> {
    if k < 3 {
        return Err(ComplexError::ParamTooSmall { reason: "circle requires k >= 3".into() });
    }
    let mut specs: Vec<CubeSpec> = (0..k - 1)
        .map(|i| CubeSpec::new(vec![format!("c{i}"), format!("c{}", i + 1)]))
        .collect();
    specs.push(CubeSpec::new(vec!["c0".into(), format!("c{}", k - 1)]));
    CubicalComplex::build_and_validate(&specs)
}

/// Torus as a p x q grid of squares with wraparound in both directions.
/// Seam squares are oriented so their poset-minimal vertex is the preimage
/// of the empty set, keeping the global order acyclic.
pub fn torus_grid(p: usize, q: usize) -> Result<CubicalComplex, ComplexError> {
    if p < 2 || q < 2 {
        return Err(ComplexError::ParamTooSmall {
            reason: "torus requires p, q >= 2 (and >= 3 to validate)".into(),
        });
    }
    let name = |i: usize, j: usize| format!("t{}_{}", i % p, j % q);
    let mut specs = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for i in 0..p {
        for j in 0..q {
            // x endpoints in increasing poset order: a wrapping span runs
            // from index 0 up to p-1
            let (x0, x1) = if i + 1 == p { (0, p - 1) } else { (i, i + 1) };
            let (y0, y1) = if j + 1 == q { (0, q - 1) } else { (j, j + 1) };
            let list =
                vec![name(x0, y0), name(x1, y0), name(x0, y1), name(x1, y1)];
            // the grid's p*q squares are distinct cells: a collision of
            // vertex sets (p or q = 2) cannot be a cubical complex
            let mut key = list.clone();
            key.sort();
            if !seen.insert(key) {
                return Err(ComplexError::DuplicateVertexSet { vertices: list.join(",") });
            }
            specs.push(CubeSpec::new(list));
        }
    }
    CubicalComplex::build_and_validate(&specs)
}

/// The checked-in Klein bottle complex, validated at load.
pub fn klein_corpus() -> CubicalComplex {
    let doc: crate::io::ComplexDocument =
        crate::io::parse_complex(include_str!("../../data/klein.json").as_bytes())
            .expect("embedded klein corpus parses");
    doc.build().expect("embedded klein corpus is a valid complex")
}

/// Named built-in corpus entries.
pub fn corpus_load(name: &str) -> Result<CubicalComplex, ComplexError> {
    match name {
        "point" => Ok(point()),
        "klein" => Ok(klein_corpus()),
        "torus-3" => torus_grid(3, 3),
        "torus-4" => torus_grid(4, 4),
        "torus-5" => torus_grid(5, 5),
        "cube-boundary-3" => cube_boundary(3),
        _ => Err(ComplexError::UnknownCorpusEntry { name: name.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_loads_with_euler_zero() {
        let k = klein_corpus();
        assert_eq!(k.euler_characteristic(), 0);
        assert_eq!(k.f_vector(), vec![16, 32, 16]);
    }

    #[test]
    fn corpus_entries() {
        assert!(corpus_load("klein").is_ok());
        let t4 = corpus_load("torus-4").unwrap();
        assert_eq!(t4.f_vector(), torus_grid(4, 4).unwrap().f_vector());
        assert!(matches!(
            corpus_load("nope"),
            Err(ComplexError::UnknownCorpusEntry { .. })
        ));
    }
}
