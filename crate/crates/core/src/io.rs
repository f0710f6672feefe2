//! JSON document formats for complexes and (co)chains, shared by the CLI and
//! the test suites. Serialization is canonical: cubes and terms are sorted so
//! identical inputs produce byte-identical outputs.

use crate::chain::Chain;
use crate::complex::{ComplexError, CubeSpec, CubicalComplex};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("semantic error in cube [{cube}]: {message}")]
    Semantic { cube: String, message: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Top-level complex document; only top cubes are listed and the face
/// closure is regenerated on build.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexDocument {
    pub name: String,
    pub cubes: Vec<Vec<String>>,
}

impl ComplexDocument {
    pub fn from_complex(name: &str, complex: &CubicalComplex) -> Self {
        let mut cubes: Vec<Vec<String>> =
            complex.top_cube_specs().into_iter().map(|s| s.vertex_list).collect();
        cubes.sort();
        ComplexDocument { name: name.to_string(), cubes }
    }

    pub fn build(&self) -> Result<CubicalComplex, IoError> {
        for cube in &self.cubes {
            if cube.is_empty() || !cube.len().is_power_of_two() {
                return Err(IoError::Semantic {
                    cube: cube.join(","),
                    message: format!("vertex list length {} is not a power of two", cube.len()),
                });
            }
        }
        let specs: Vec<CubeSpec> =
            self.cubes.iter().map(|c| CubeSpec::new(c.clone())).collect();
        Ok(CubicalComplex::build_and_validate(&specs)?)
    }
}

pub fn parse_complex(bytes: &[u8]) -> Result<ComplexDocument, IoError> {
    serde_json::from_slice(bytes).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Canonical serialization: cubes sorted lexicographically, keys in a fixed
/// order, one trailing newline.
pub fn write_complex(doc: &ComplexDocument) -> Vec<u8> {
    let mut canonical = doc.clone();
    canonical.cubes.sort();
    let mut out = serde_json::to_vec_pretty(&canonical).expect("document serializes");
    out.push(b'\n');
    out
}

/// A chain or cochain document: a degree and signed terms indexed by vertex
/// sets.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChainDocument {
    pub degree: usize,
    pub terms: Vec<(Vec<String>, String)>,
}

impl ChainDocument {
    pub fn from_chain(complex: &CubicalComplex, chain: &Chain) -> Self {
        let mut terms: Vec<(Vec<String>, String)> = chain
            .iter()
            .map(|(key, coeff)| {
                let names: Vec<String> =
                    key.iter().map(|&v| complex.vertex_name(v).to_string()).collect();
                (names, coeff.to_string())
            })
            .collect();
        terms.sort();
        ChainDocument { degree: chain.degree(), terms }
    }

    /// Resolve against a complex, checking each vertex set names a face of
    /// the stated degree.
    pub fn resolve(&self, complex: &CubicalComplex) -> Result<Chain, IoError> {
        let mut chain = Chain::zero(self.degree);
        for (names, coeff) in &self.terms {
            let key = complex.key_from_names(names).map_err(|_| IoError::Semantic {
                cube: names.join(","),
                message: "unknown vertex in term".into(),
            })?;
            let face = complex.cube(&key).map_err(|_| IoError::Semantic {
                cube: names.join(","),
                message: "vertex set is not a face".into(),
            })?;
            if face.dim != self.degree {
                return Err(IoError::Semantic {
                    cube: names.join(","),
                    message: format!(
                        "face has dimension {}, document says {}",
                        face.dim, self.degree
                    ),
                });
            }
            let c = BigInt::from_str(coeff).map_err(|_| IoError::Semantic {
                cube: names.join(","),
                message: format!("bad coefficient '{coeff}'"),
            })?;
            chain.add_term(key, c);
        }
        Ok(chain)
    }
}

pub fn parse_chain(bytes: &[u8]) -> Result<ChainDocument, IoError> {
    serde_json::from_slice(bytes).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn write_chain(doc: &ChainDocument) -> Vec<u8> {
    let mut canonical = doc.clone();
    canonical.terms.sort();
    let mut out = serde_json::to_vec_pretty(&canonical).expect("document serializes");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_document_round_trip() {
        let doc = parse_complex(br#"{"name":"pt","cubes":[["v"]]}"#).unwrap();
        let c = doc.build().unwrap();
        assert_eq!(c.face_count(), 1);
        let re = parse_complex(&write_complex(&doc)).unwrap();
        assert_eq!(doc, re);
    }

    #[test]
    fn torus_round_trip_is_isomorphic() {
        let t = crate::complex::generate::torus_grid(4, 4).unwrap();
        let doc = ComplexDocument::from_complex("torus", &t);
        let rebuilt = parse_complex(&write_complex(&doc)).unwrap().build().unwrap();
        assert_eq!(rebuilt.f_vector(), t.f_vector());
    }

    #[test]
    fn three_vertex_cube_is_malformed() {
        let doc = parse_complex(br#"{"name":"bad","cubes":[["a","b","c"]]}"#).unwrap();
        assert!(matches!(doc.build(), Err(IoError::Semantic { .. })));
    }

    #[test]
    fn syntax_error_reports_location() {
        let err = parse_complex(b"{ not json");
        match err {
            Err(IoError::Syntax { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
