//! Convex hulls of rational point sets and the operations built on them:
//! Minkowski sums and Cayley sums.
//!
//! Facets of a full-dimensional hull are obtained by polar duality: translate
//! an interior point to the origin, then the extreme rays of the homogenized
//! dual cone are exactly the facet normals. Lower-dimensional hulls are
//! reduced to local coordinates on their affine hull and keep only their
//! vertex description.

use num_traits::Zero;

use crate::error::Error;
use crate::linalg::{affine_rank, dot, Mat};
use crate::rat::{rat_int, Rat};

use super::{cmp_vecs, dd, Polytope};

/// Convex hull of a finite point set.
pub fn convex_hull(dim: usize, mut points: Vec<Vec<Rat>>) -> Result<Polytope, Error> {
    for p in &points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch(p.len(), dim));
        }
    }
    points.sort_by(|a, b| cmp_vecs(a, b));
    points.dedup();
    if points.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let ad = affine_rank(&points);
    if ad < dim {
        return degenerate_hull(dim, ad, points);
    }
    // interior point: the average of all points
    let m = rat_int(points.len() as i64);
    let centroid: Vec<Rat> = (0..dim)
        .map(|i| points.iter().map(|p| &p[i]).sum::<Rat>() / &m)
        .collect();
    // homogenized dual cone rows: (p - q, -1) and (0, -1)
    let mut rows: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| {
            let mut r: Vec<Rat> = p.iter().zip(&centroid).map(|(a, b)| a - b).collect();
            r.push(rat_int(-1));
            r
        })
        .collect();
    let mut tpos = vec![rat_int(0); dim];
    tpos.push(rat_int(-1));
    rows.push(tpos);
    let rays = dd::cone_rays(&rows, dim + 1)?;
    let mut ineqs: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for ray in rays {
        let t = &ray[dim];
        if t <= &rat_int(0) {
            return Err(Error::Degenerate(
                "polar dual unbounded: interior point was not interior".into(),
            ));
        }
        // dual vertex c = y/t gives the facet <c, x - q> <= 1
        let c: Vec<Rat> = ray[..dim].iter().map(|y| y / t).collect();
        let b = rat_int(1) + dot(&c, &centroid);
        ineqs.push((c, b));
    }
    // keep only the points that are vertices: active facet normals span R^dim
    let actives: Vec<Vec<usize>> = points
        .iter()
        .map(|p| {
            ineqs
                .iter()
                .enumerate()
                .filter(|(_, (n, b))| &dot(n, p) == b)
                .map(|(i, _)| i)
                .collect::<Vec<_>>()
        })
        .collect();
    let mut vertices = Vec::new();
    let mut active = Vec::new();
    for (p, acts) in points.into_iter().zip(actives) {
        let rows: Vec<Vec<Rat>> = acts.iter().map(|&i| ineqs[i].0.clone()).collect();
        if !rows.is_empty() && Mat::from_rows(rows).rank() == dim {
            vertices.push(p);
            active.push(acts);
        }
    }
    let mut poly = Polytope {
        dim,
        affine_dim: dim,
        ineqs,
        vertices,
        active,
    };
    canonical_sort(&mut poly);
    Ok(poly)
}

fn canonical_sort(p: &mut Polytope) {
    // normalize facet scaling (primitive integer normals), sort, remap actives
    let mut canon: Vec<(Vec<Rat>, Rat)> = p
        .ineqs
        .iter()
        .map(|(n, b)| {
            let prim = crate::rat::primitive_direction(n).expect("zero facet normal");
            let k = n.iter().position(|c| !c.is_zero()).unwrap();
            let s = Rat::from(prim[k].clone()) / &n[k];
            (prim.into_iter().map(Rat::from).collect(), b * &s)
        })
        .collect();
    canon.sort_by(|a, b| cmp_vecs(&a.0, &b.0).then_with(|| a.1.cmp(&b.1)));
    canon.dedup();
    p.active = p
        .vertices
        .iter()
        .map(|v| {
            canon
                .iter()
                .enumerate()
                .filter(|(_, (n, b))| &dot(n, v) == b)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    p.ineqs = canon;
}

/// Hull of a point set that is not full-dimensional: recurse in coordinates on
/// the affine hull and keep the vertex description only.
fn degenerate_hull(dim: usize, ad: usize, points: Vec<Vec<Rat>>) -> Result<Polytope, Error> {
    if ad == 0 {
        return Ok(Polytope {
            dim,
            affine_dim: 0,
            ineqs: Vec::new(),
            vertices: points,
            active: Vec::new(),
        });
    }
    let base = points[0].clone();
    // pick ad directions spanning the affine hull
    let mut dirs: Vec<Vec<Rat>> = Vec::new();
    for p in &points[1..] {
        if dirs.len() == ad {
            break;
        }
        let d: Vec<Rat> = p.iter().zip(&base).map(|(a, b)| a - b).collect();
        let mut test = dirs.clone();
        test.push(d.clone());
        if Mat::from_rows(test).rank() == dirs.len() + 1 {
            dirs.push(d);
        }
    }
    // local coordinates: solve D^T t = p - base using ad independent rows
    let dmat_cols = dirs.len();
    let full = Mat::from_rows((0..dim).map(|r| (0..dmat_cols).map(|c| dirs[c][r].clone()).collect()).collect());
    // choose ad independent rows of `full`
    let mut rows_idx: Vec<usize> = Vec::new();
    for r in 0..dim {
        if rows_idx.len() == ad {
            break;
        }
        let mut sel: Vec<Vec<Rat>> = rows_idx.iter().map(|&i| full.data[i].clone()).collect();
        sel.push(full.data[r].clone());
        if Mat::from_rows(sel).rank() == rows_idx.len() + 1 {
            rows_idx.push(r);
        }
    }
    let sq = Mat::from_rows(rows_idx.iter().map(|&i| full.data[i].clone()).collect());
    let mut local: Vec<Vec<Rat>> = Vec::new();
    for p in &points {
        let rhs: Vec<Rat> = rows_idx
            .iter()
            .map(|&i| &p[i] - &base[i])
            .collect();
        let t = sq.solve(&rhs).ok_or(Error::SingularSystem)?;
        local.push(t);
    }
    let inner = convex_hull(ad, local)?;
    let vertices: Vec<Vec<Rat>> = inner
        .vertices
        .iter()
        .map(|t| {
            (0..dim)
                .map(|r| {
                    let mut x = base[r].clone();
                    for (c, tc) in t.iter().enumerate() {
                        x += &dirs[c][r] * tc;
                    }
                    x
                })
                .collect()
        })
        .collect();
    let mut vertices = vertices;
    vertices.sort_by(|a, b| cmp_vecs(a, b));
    Ok(Polytope {
        dim,
        affine_dim: ad,
        ineqs: Vec::new(),
        vertices,
        active: Vec::new(),
    })
}

/// Membership of a point in the convex hull of a point set (works in any
/// dimension, including degenerate hulls).
pub fn in_hull(points: &[Vec<Rat>], x: &[Rat]) -> bool {
    if points.iter().any(|p| p == x) {
        return true;
    }
    let mut aug = points.to_vec();
    aug.push(x.to_vec());
    match convex_hull(x.len(), aug) {
        Ok(h) => !h.vertices.contains(&x.to_vec()),
        Err(_) => false,
    }
}

impl Polytope {
    /// Minkowski sum: hull of pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        convex_hull(self.dim, pts)
    }

    /// Cayley sum: hull of `(self x {1}) U (other x {0})`, new coordinate last.
    pub fn cayley_sum(&self, other: &Polytope) -> Result<Polytope, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut pts = Vec::new();
        for v in &self.vertices {
            let mut w = v.clone();
            w.push(rat_int(1));
            pts.push(w);
        }
        for v in &other.vertices {
            let mut w = v.clone();
            w.push(rat_int(0));
            pts.push(w);
        }
        convex_hull(self.dim + 1, pts)
    }

    /// Embed into a higher-dimensional space by appending zero coordinates.
    pub fn embed(&self, target_dim: usize) -> Result<Polytope, Error> {
        if target_dim < self.dim {
            return Err(Error::DimensionMismatch(self.dim, target_dim));
        }
        let pts: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.resize(target_dim, rat_int(0));
                w
            })
            .collect();
        convex_hull(target_dim, pts)
    }

    /// Drop trailing coordinates (projection); valid when the polytope lies in
    /// the subspace where the dropped coordinates are constant.
    pub fn project_out_last(&self, keep: usize) -> Result<Polytope, Error> {
        let pts: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| v[..keep].to_vec())
            .collect();
        convex_hull(keep, pts)
    }
}
