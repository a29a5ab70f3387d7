//! Face lattice of a full-dimensional polytope, computed combinatorially from
//! vertex-facet incidences by closing vertex sets under facet intersection.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::linalg::affine_rank;

use super::Polytope;

/// A nonempty face, identified by its vertex set.
#[derive(Clone, Debug)]
pub struct Face {
    pub dim: usize,
    /// Sorted indices into `Polytope::vertices`.
    pub vertex_set: Vec<usize>,
    /// Facets active on every vertex of the face.
    pub active: Vec<usize>,
    /// Indices of faces of one dimension lower contained in this face.
    pub children: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
    /// Index of the whole polytope.
    pub top: usize,
}

impl Polytope {
    pub fn face_lattice(&self) -> Result<FaceLattice, Error> {
        if !self.is_full_dimensional() {
            return Err(Error::Degenerate(
                "face lattice requires a full-dimensional polytope".into(),
            ));
        }
        let nv = self.vertices.len();
        let nf = self.ineqs.len();
        // vertices on each facet
        let mut on_facet: Vec<Vec<usize>> = vec![Vec::new(); nf];
        for (v, acts) in self.active.iter().enumerate() {
            for &i in acts {
                on_facet[i].push(v);
            }
        }
        let mut faces: Vec<Face> = Vec::new();
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let top_set: Vec<usize> = (0..nv).collect();
        faces.push(Face {
            dim: self.dim,
            vertex_set: top_set.clone(),
            active: Vec::new(),
            children: Vec::new(),
        });
        index.insert(top_set, 0);
        let mut queue = vec![0usize];
        while let Some(fi) = queue.pop() {
            let current = faces[fi].vertex_set.clone();
            let current_active = faces[fi].active.clone();
            for facet in 0..nf {
                if current_active.contains(&facet) {
                    continue;
                }
                let sub: Vec<usize> = current
                    .iter()
                    .copied()
                    .filter(|v| self.active[*v].contains(&facet))
                    .collect();
                if sub.is_empty() || sub == current {
                    continue;
                }
                if index.contains_key(&sub) {
                    continue;
                }
                let active: Vec<usize> = (0..nf)
                    .filter(|&i| sub.iter().all(|&v| self.active[v].contains(&i)))
                    .collect();
                let coords: Vec<_> = sub.iter().map(|&v| self.vertices[v].clone()).collect();
                let dim = affine_rank(&coords);
                let idx = faces.len();
                faces.push(Face {
                    dim,
                    vertex_set: sub.clone(),
                    active,
                    children: Vec::new(),
                });
                index.insert(sub, idx);
                queue.push(idx);
            }
        }
        // children: maximal proper subfaces have dimension exactly one lower
        for i in 0..faces.len() {
            let mut kids = Vec::new();
            for j in 0..faces.len() {
                if faces[j].dim + 1 == faces[i].dim
                    && is_subset(&faces[j].vertex_set, &faces[i].vertex_set)
                {
                    kids.push(j);
                }
            }
            faces[i].children = kids;
        }
        Ok(FaceLattice {
            faces,
            top: 0,
        })
    }

    /// All codimension-two faces, each reported with its active facet set and
    /// vertex list. For simple faces the active set has exactly two entries.
    pub fn codim2_faces(&self) -> Result<Vec<Face>, Error> {
        let lat = self.face_lattice()?;
        Ok(lat
            .faces
            .iter()
            .filter(|f| f.dim + 2 == self.dim)
            .cloned()
            .collect())
    }

    /// Alternating sum of face counts, the polytope included and the empty
    /// face excluded; equals 1 for every polytope.
    pub fn euler_characteristic(&self) -> Result<i64, Error> {
        let lat = self.face_lattice()?;
        Ok(lat
            .faces
            .iter()
            .map(|f| if f.dim % 2 == 0 { 1i64 } else { -1i64 })
            .sum())
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}
