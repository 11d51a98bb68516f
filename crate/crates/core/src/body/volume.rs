//! Exact volume: every facet gets a pulling triangulation, and each of its
//! simplices is coned over the vertex centroid.

use std::collections::HashMap;

use num::{Signed, Zero};

use super::polytope::{affine_rank, centroid, Polytope};
use crate::exact::rational::{factorial, vsub, Rational};
use crate::exact::RatMatrix;

struct Triangulator<'a> {
    verts: &'a [Vec<Rational>],
    facet_sets: Vec<Vec<usize>>,
    memo: HashMap<Vec<usize>, Vec<Vec<usize>>>,
}

impl Triangulator<'_> {
    /// Simplices (vertex index lists) of a pulling triangulation of the face
    /// with vertex set `face` and dimension `k`.
    fn triangulate(&mut self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![face[0]]];
        }
        if face.len() == k + 1 {
            return vec![face.to_vec()];
        }
        if let Some(t) = self.memo.get(face) {
            return t.clone();
        }
        let apex = face[0];
        let mut subfaces: Vec<Vec<usize>> = Vec::new();
        for fs in &self.facet_sets {
            let s: Vec<usize> = face.iter().copied().filter(|i| fs.binary_search(i).is_ok()).collect();
            if s.len() < k || s.len() == face.len() || s.binary_search(&apex).is_ok() {
                continue;
            }
            let pts: Vec<Vec<Rational>> = s.iter().map(|&i| self.verts[i].clone()).collect();
            if affine_rank(&pts) == k - 1 {
                subfaces.push(s);
            }
        }
        subfaces.sort();
        subfaces.dedup();
        let mut out = Vec::new();
        for s in subfaces {
            for mut simplex in self.triangulate(&s, k - 1) {
                simplex.insert(0, apex);
                out.push(simplex);
            }
        }
        self.memo.insert(face.to_vec(), out.clone());
        out
    }
}

pub fn volume(p: &Polytope) -> Rational {
    let d = p.dim();
    let verts = p.vertices();
    let facet_sets: Vec<Vec<usize>> = p
        .halfspaces()
        .iter()
        .map(|h| (0..verts.len()).filter(|&i| h.is_tight(&verts[i])).collect())
        .collect();
    let c = centroid(verts);
    let mut tri = Triangulator { verts, facet_sets: facet_sets.clone(), memo: HashMap::new() };
    let mut total = Rational::zero();
    for fs in &facet_sets {
        for simplex in tri.triangulate(fs, d - 1) {
            let rows: Vec<Vec<Rational>> = simplex.iter().map(|&i| vsub(&verts[i], &c)).collect();
            let det = RatMatrix::from_rows(rows).expect("square").determinant().expect("square");
            total += det.abs();
        }
    }
    total / Rational::from_integer(factorial(d as u32))
}

/// Volume of a simplex given by `dim + 1` vertices.
pub fn simplex_volume(vertices: &[Vec<Rational>]) -> Rational {
    let d = vertices.len() - 1;
    let rows: Vec<Vec<Rational>> = vertices[1..].iter().map(|v| vsub(v, &vertices[0])).collect();
    let det = RatMatrix::from_rows(rows).expect("square").determinant().expect("square");
    det.abs() / Rational::from_integer(factorial(d as u32))
}
