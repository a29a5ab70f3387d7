//! Exact volumes via the pulling triangulation, and symbolic volume
//! polynomials for parametric families.
//!
//! The pulling triangulation of a face recursively cones its lexicographically
//! smallest vertex over the triangulations of the facets avoiding it. It is
//! determined by the face lattice alone, so within the parameter cone where
//! the combinatorial type is constant the same simplices triangulate every
//! member, and each simplex determinant keeps a constant sign. Summing the
//! signed determinants of parameter-affine vertex differences therefore gives
//! the volume polynomial of the family on that cone.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::Error;
use crate::linalg::Mat;
use crate::mpoly::MPoly;
use crate::rat::{rat_int, Rat};

use super::faces::FaceLattice;
use super::{ParamPolytope, Polytope};

/// Simplices of the pulling triangulation, as vertex-index tuples.
pub fn pulling_triangulation(lat: &FaceLattice) -> Vec<Vec<usize>> {
    let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    pull(lat, lat.top, &mut memo);
    memo.remove(&lat.top).unwrap()
}

fn pull(lat: &FaceLattice, fi: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) {
    if memo.contains_key(&fi) {
        return;
    }
    let face = &lat.faces[fi];
    if face.vertex_set.len() == face.dim + 1 {
        memo.insert(fi, vec![face.vertex_set.clone()]);
        return;
    }
    let v0 = *face.vertex_set.iter().min().unwrap();
    let mut simplices = Vec::new();
    for &child in &face.children {
        if lat.faces[child].vertex_set.contains(&v0) {
            continue;
        }
        pull(lat, child, memo);
        for s in memo.get(&child).unwrap().clone() {
            let mut t = s;
            t.insert(0, v0);
            simplices.push(t);
        }
    }
    memo.insert(fi, simplices);
}

fn factorial(n: usize) -> Rat {
    let mut f = rat_int(1);
    for k in 2..=n {
        f *= rat_int(k as i64);
    }
    f
}

impl Polytope {
    /// Exact Euclidean volume. Lower-dimensional polytopes have volume zero.
    pub fn volume(&self) -> Result<Rat, Error> {
        if self.affine_dim < self.dim {
            return Ok(rat_int(0));
        }
        let lat = self.face_lattice()?;
        let simplices = pulling_triangulation(&lat);
        let mut total = rat_int(0);
        for s in simplices {
            let v0 = &self.vertices[s[0]];
            let rows: Vec<Vec<Rat>> = s[1..]
                .iter()
                .map(|&vi| {
                    self.vertices[vi]
                        .iter()
                        .zip(v0)
                        .map(|(a, b)| a - b)
                        .collect()
                })
                .collect();
            let d = Mat::from_rows(rows).det()?;
            total += if d < rat_int(0) { -d } else { d };
        }
        Ok(total / factorial(self.dim))
    }
}

impl ParamPolytope {
    /// Volume polynomial of the family in its parameters, valid on the cone of
    /// parameters around the reference point where the combinatorial type is
    /// constant.
    pub fn volume_polynomial(&self) -> Result<MPoly, Error> {
        let reference = self.reference.clone();
        let inst = self.instantiate(&reference)?;
        if !inst.is_full_dimensional() {
            return Err(Error::Degenerate(
                "volume polynomial needs a full-dimensional reference member".into(),
            ));
        }
        let chart = self.vertex_chart(&reference)?;
        debug_assert_eq!(chart.vertices.len(), inst.vertices.len());
        let lat = inst.face_lattice()?;
        let simplices = pulling_triangulation(&lat);
        let vars: Vec<&str> = self.params.iter().map(|s| s.as_str()).collect();
        let mut total = MPoly::zero(&vars);
        for s in &simplices {
            // symbolic determinant of parameter-affine vertex differences
            let rows: Vec<Vec<MPoly>> = s[1..]
                .iter()
                .map(|&vi| {
                    (0..self.dim)
                        .map(|c| {
                            chart.vertices[vi].coords[c]
                                .sub(&chart.vertices[s[0]].coords[c])
                                .to_mpoly(&vars)
                        })
                        .collect()
                })
                .collect();
            let det = det_mpoly(&rows)?;
            // the sign at the reference point stays constant on the cone
            let at_ref = det.eval(&reference)?;
            if at_ref.is_zero() {
                return Err(Error::Degenerate(
                    "degenerate simplex in reference triangulation".into(),
                ));
            }
            let signed = if at_ref < rat_int(0) { det.neg() } else { det };
            total = total.add(&signed)?;
        }
        Ok(total.scale(&(rat_int(1) / factorial(self.dim))))
    }
}

/// Determinant of a small matrix of polynomials by first-column Laplace
/// expansion with memoization over row subsets.
pub fn det_mpoly(rows: &[Vec<MPoly>]) -> Result<MPoly, Error> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Invalid("empty determinant".into()));
    }
    let vars: Vec<&str> = rows[0][0].vars().iter().map(|s| s.as_str()).collect();
    let full: u32 = (1 << n) - 1;
    let mut memo: HashMap<u32, MPoly> = HashMap::new();
    memo.insert(0, MPoly::constant(&vars, rat_int(1)));
    fn rec(
        rows: &[Vec<MPoly>],
        mask: u32,
        col: usize,
        memo: &mut HashMap<u32, MPoly>,
        vars: &[&str],
    ) -> Result<MPoly, Error> {
        if let Some(p) = memo.get(&mask) {
            return Ok(p.clone());
        }
        let mut acc = MPoly::zero(vars);
        let mut sign = true;
        for r in 0..rows.len() {
            if mask & (1 << r) == 0 {
                continue;
            }
            let sub = rec(rows, mask & !(1 << r), col + 1, memo, vars)?;
            let term = rows[r][col].mul(&sub)?;
            acc = if sign { acc.add(&term)? } else { acc.sub(&term)? };
            sign = !sign;
        }
        memo.insert(mask, acc.clone());
        Ok(acc)
    }
    rec(rows, full, 0, &mut memo, &vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::trapezoid_family;
    use crate::polytope::hull::convex_hull;
    use crate::polytope::family;
    use crate::rat::rat;

    fn pts(xs: &[&[i64]]) -> Vec<Vec<Rat>> {
        xs.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn unit_cube_volume_is_one() {
        let cube = convex_hull(
            3,
            pts(&[
                &[0, 0, 0],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[1, 1, 0],
                &[1, 0, 1],
                &[0, 1, 1],
                &[1, 1, 1],
            ]),
        )
        .unwrap();
        assert_eq!(cube.volume().unwrap(), rat_int(1));
    }

    #[test]
    fn trapezoid_volume_at_reference() {
        // reference (a, b) = (2, 1): area = ab + b^2/2 = 5/2
        let p = trapezoid_family().instantiate_ref().unwrap();
        assert_eq!(p.volume().unwrap(), rat(5, 2));
    }

    #[test]
    fn trapezoid_volume_polynomial_matches_example() {
        let fam = trapezoid_family();
        let vol = fam.volume_polynomial().unwrap();
        let expect = MPoly::parse("a*b + 1/2*b^2", &["a", "b", "x0", "y0"]).unwrap();
        assert_eq!(vol, expect);
        assert!(vol.is_independent_of("x0").unwrap());
        assert!(vol.is_independent_of("y0").unwrap());
    }

    #[test]
    fn segment_family_volume_polynomial() {
        let fam = family(1, &["a"], &[(&[-1], 0, &[0]), (&[1], 0, &[1])], &[1]);
        assert_eq!(
            fam.volume_polynomial().unwrap(),
            MPoly::parse("a", &["a"]).unwrap()
        );
    }

    #[test]
    fn volume_polynomial_agrees_with_instances() {
        let fam = trapezoid_family();
        let vol = fam.volume_polynomial().unwrap();
        for (a, b) in [(rat_int(2), rat_int(1)), (rat(5, 2), rat(1, 3)), (rat_int(1), rat_int(1))] {
            let point = vec![a.clone(), b.clone(), rat(1, 7), rat_int(-2)];
            let inst = fam.instantiate(&point).unwrap();
            assert_eq!(inst.volume().unwrap(), vol.eval(&point).unwrap());
        }
    }

    #[test]
    fn det_mpoly_matches_rational_det() {
        let vars = ["t"];
        let rows = vec![
            vec![
                MPoly::parse("t + 1", &vars).unwrap(),
                MPoly::parse("2", &vars).unwrap(),
            ],
            vec![
                MPoly::parse("t", &vars).unwrap(),
                MPoly::parse("t", &vars).unwrap(),
            ],
        ];
        // det = (t+1)t - 2t = t^2 - t
        assert_eq!(
            det_mpoly(&rows).unwrap(),
            MPoly::parse("t^2 - t", &vars).unwrap()
        );
    }
}
