//! Built-in example manifolds, maps, and expected invariants.
//!
//! Four complexes ship with the crate: the triangle circle `s1`, the
//! octahedral sphere `s2-oct`, the 9-vertex torus `t2-9`, and the 6-vertex
//! projective plane `rp2-6`. The expected tables (Betti numbers, Euler
//! characteristics, map degrees) are frozen from hand enumeration and serve
//! as oracles for the verification suite.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::Result;

/// Frozen expectations for one corpus entry.
#[derive(Debug, Clone)]
pub struct Expected {
    pub betti: Vec<usize>,
    pub euler: i64,
    pub orientable: bool,
    /// Degrees of the named self-maps, for sphere entries.
    pub map_degrees: BTreeMap<&'static str, i64>,
}

/// A named complex with its named maps, subcomplexes, and expected table.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub complex: Arc<SimplicialComplex>,
    /// Named maps; endomaps of `complex` plus, for ambient entries, a few
    /// embeddings whose domain is another corpus complex.
    pub maps: BTreeMap<&'static str, SimplicialMap>,
    /// Named subcomplexes, as facet lists in ambient vertex labels.
    pub subcomplexes: BTreeMap<&'static str, Vec<Vec<usize>>>,
    pub expected: Expected,
    /// Pairs (f, g) known to be geometrically coincidence free.
    pub coincidence_free: Vec<(&'static str, &'static str)>,
}

impl CorpusEntry {
    pub fn map(&self, name: &str) -> Option<&SimplicialMap> {
        self.maps.get(name)
    }

    /// Named endomaps of this entry's complex, in name order.
    pub fn endomaps(&self) -> Vec<(&'static str, &SimplicialMap)> {
        self.maps
            .iter()
            .filter(|(_, m)| m.domain().name() == self.complex.name())
            .map(|(n, m)| (*n, m))
            .collect()
    }
}

/// The built-in corpus.
#[derive(Debug, Clone)]
pub struct Corpus {
    entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn builtin() -> Corpus {
        build().expect("built-in corpus must validate")
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name).collect()
    }
}

fn endo(complex: &Arc<SimplicialComplex>, vertex_map: Vec<usize>) -> Result<SimplicialMap> {
    SimplicialMap::new(complex.clone(), complex.clone(), vertex_map)
}

fn build() -> Result<Corpus> {
    // s1: boundary of a triangle.
    let s1 = Arc::new(SimplicialComplex::from_facets(
        "s1",
        &[vec![0, 1], vec![1, 2], vec![0, 2]],
    )?);
    let mut s1_maps = BTreeMap::new();
    s1_maps.insert("identity", SimplicialMap::identity(s1.clone()));
    s1_maps.insert("rotation", endo(&s1, vec![1, 2, 0])?);
    s1_maps.insert("constant", endo(&s1, vec![0, 0, 0])?);
    let s1_entry = CorpusEntry {
        name: "s1",
        complex: s1.clone(),
        maps: s1_maps,
        subcomplexes: BTreeMap::new(),
        expected: Expected {
            betti: vec![1, 1],
            euler: 0,
            orientable: true,
            map_degrees: BTreeMap::from([("identity", 1), ("rotation", 1), ("constant", 0)]),
        },
        coincidence_free: vec![("rotation", "identity")],
    };

    // s2-oct: octahedron, antipodal vertex pairs (0,1), (2,3), (4,5).
    let oct_facets: Vec<Vec<usize>> = [0usize, 1]
        .iter()
        .flat_map(|&a| {
            [2usize, 3]
                .iter()
                .flat_map(move |&b| [4usize, 5].iter().map(move |&c| vec![a, b, c]))
        })
        .collect();
    let s2 = Arc::new(SimplicialComplex::from_facets("s2-oct", &oct_facets)?);
    let mut s2_maps = BTreeMap::new();
    s2_maps.insert("identity", SimplicialMap::identity(s2.clone()));
    s2_maps.insert("antipodal", endo(&s2, vec![1, 0, 3, 2, 5, 4])?);
    s2_maps.insert("constant", endo(&s2, vec![0; 6])?);
    let s2_entry = CorpusEntry {
        name: "s2-oct",
        complex: s2.clone(),
        maps: s2_maps,
        subcomplexes: BTreeMap::from([("vertex0", vec![vec![0]])]),
        expected: Expected {
            betti: vec![1, 0, 1],
            euler: 2,
            orientable: true,
            map_degrees: BTreeMap::from([("identity", 1), ("antipodal", -1), ("constant", 0)]),
        },
        coincidence_free: vec![("antipodal", "identity")],
    };

    // t2-9: 3x3 grid torus with diagonals.
    let t2 = Arc::new(grid_torus(3)?);
    let mut t2_maps = BTreeMap::new();
    t2_maps.insert("identity", SimplicialMap::identity(t2.clone()));
    t2_maps.insert("shift", grid_torus_shift(&t2, 3)?);
    t2_maps.insert("constant", endo(&t2, vec![0; 9])?);
    // Embeddings of the circle onto grid circles, for intersection tests.
    t2_maps.insert(
        "embed-h0",
        SimplicialMap::new(s1.clone(), t2.clone(), vec![0, 1, 2])?,
    );
    t2_maps.insert(
        "embed-h1",
        SimplicialMap::new(s1.clone(), t2.clone(), vec![3, 4, 5])?,
    );
    t2_maps.insert(
        "embed-v0",
        SimplicialMap::new(s1.clone(), t2.clone(), vec![0, 3, 6])?,
    );
    let t2_entry = CorpusEntry {
        name: "t2-9",
        complex: t2.clone(),
        maps: t2_maps,
        subcomplexes: BTreeMap::from([
            ("h0", vec![vec![0, 1], vec![1, 2], vec![0, 2]]),
            ("h1", vec![vec![3, 4], vec![4, 5], vec![3, 5]]),
            ("v0", vec![vec![0, 3], vec![3, 6], vec![0, 6]]),
        ]),
        expected: Expected {
            betti: vec![1, 2, 1],
            euler: 0,
            orientable: true,
            map_degrees: BTreeMap::new(),
        },
        coincidence_free: vec![("shift", "identity")],
    };

    // rp2-6: minimal triangulation of the projective plane.
    let rp2_facets: Vec<Vec<usize>> = [
        [0, 1, 2],
        [0, 1, 3],
        [0, 2, 4],
        [0, 3, 5],
        [0, 4, 5],
        [1, 2, 5],
        [1, 3, 4],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
    ]
    .iter()
    .map(|f| f.to_vec())
    .collect();
    let rp2 = Arc::new(SimplicialComplex::from_facets("rp2-6", &rp2_facets)?);
    let mut rp2_maps = BTreeMap::new();
    rp2_maps.insert("identity", SimplicialMap::identity(rp2.clone()));
    let rp2_entry = CorpusEntry {
        name: "rp2-6",
        complex: rp2,
        maps: rp2_maps,
        subcomplexes: BTreeMap::new(),
        expected: Expected {
            betti: vec![1, 0, 0],
            euler: 1,
            orientable: false,
            map_degrees: BTreeMap::new(),
        },
        coincidence_free: vec![],
    };

    Ok(Corpus {
        entries: vec![s1_entry, s2_entry, t2_entry, rp2_entry],
    })
}

/// k x k grid torus with diagonals: k² vertices, 2k² triangles.
///
/// Vertex (r, c) is `k*r + c`; each grid cell carries the two triangles cut
/// by the diagonal from (r, c) to (r+1, c+1), rows and columns wrapping.
pub fn grid_torus(k: usize) -> Result<SimplicialComplex> {
    assert!(k >= 3, "grid torus needs k >= 3 to stay simplicial");
    let v = |r: usize, c: usize| (r % k) * k + (c % k);
    let mut facets = Vec::with_capacity(2 * k * k);
    for r in 0..k {
        for c in 0..k {
            facets.push(vec![v(r, c), v(r, c + 1), v(r + 1, c + 1)]);
            facets.push(vec![v(r, c), v(r + 1, c), v(r + 1, c + 1)]);
        }
    }
    let name = if k == 3 {
        "t2-9".to_string()
    } else {
        format!("t2-grid-{k}")
    };
    SimplicialComplex::from_facets(name, &facets)
}

/// The fixed-point-free translation (r, c) ↦ (r, c+1) of a grid torus.
pub fn grid_torus_shift(torus: &Arc<SimplicialComplex>, k: usize) -> Result<SimplicialMap> {
    let vertex_map = (0..k * k).map(|v| (v / k) * k + (v % k + 1) % k).collect();
    SimplicialMap::new(torus.clone(), torus.clone(), vertex_map)
}
