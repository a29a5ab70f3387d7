//! Double description method for pointed polyhedral cones.
//!
//! `cone_rays` computes the extreme rays of `{z : <r_i, z> <= 0 for all i}`.
//! It seeds the computation with a simplicial subcone (any `ambient` rows with
//! independent normals) and inserts the remaining halfspaces one at a time,
//! combining adjacent positive/negative ray pairs. Adjacency is decided by the
//! standard combinatorial zero-set test, which is valid for pointed cones.

use num_traits::Zero;

use crate::error::Error;
use crate::linalg::{dot, Mat};
use crate::rat::{primitive_direction, rat_int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Self) -> Self {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn contains_all(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    coords: Vec<Rat>,
    zero: BitSet,
}

/// Extreme rays of the cone `{z : <r_i, z> <= 0}`, normalized to primitive
/// integer vectors and sorted. Errors when the cone is not pointed (its
/// lineality space is nontrivial).
pub fn cone_rays(rows: &[Vec<Rat>], ambient: usize) -> Result<Vec<Vec<Rat>>, Error> {
    let rows: Vec<&Vec<Rat>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let m = rows.len();
    // greedy basis selection
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..m {
        if basis.len() == ambient {
            break;
        }
        let mut sel: Vec<Vec<Rat>> = basis.iter().map(|&j| rows[j].clone()).collect();
        sel.push(rows[i].clone());
        if Mat::from_rows(sel).rank() == basis.len() + 1 {
            basis.push(i);
        }
    }
    if basis.len() < ambient {
        return Err(Error::Degenerate(
            "cone has nontrivial lineality space".into(),
        ));
    }
    // initial simplicial cone: rays are the columns of -B^{-1}
    let bmat = Mat::from_rows(basis.iter().map(|&i| rows[i].clone()).collect());
    let mut rays: Vec<Ray> = Vec::new();
    for k in 0..ambient {
        let mut e = vec![rat_int(0); ambient];
        e[k] = rat_int(-1);
        let col = bmat.solve(&e).ok_or(Error::SingularSystem)?;
        let mut zero = BitSet::new(m);
        for (pos, &bi) in basis.iter().enumerate() {
            if pos != k {
                zero.set(bi);
            }
        }
        rays.push(Ray {
            coords: normalize(&col),
            zero,
        });
    }
    // insert the remaining halfspaces
    for j in 0..m {
        if basis.contains(&j) {
            continue;
        }
        let vals: Vec<Rat> = rays.iter().map(|r| dot(rows[j], &r.coords)).collect();
        if vals.iter().all(|v| v <= &rat_int(0)) {
            // no strictly positive value: just record new incidences
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zero.set(j);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > rat_int(0)).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < rat_int(0)).collect();
        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let z = rays[p].zero.and(&rays[n].zero);
                let adjacent = rays.iter().enumerate().all(|(q, r)| {
                    q == p || q == n || !r.zero.contains_all(&z)
                });
                if !adjacent {
                    continue;
                }
                let coords: Vec<Rat> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(cn, cp)| &vals[p] * cn - &vals[n] * cp)
                    .collect();
                let coords = normalize(&coords);
                if new_rays.iter().any(|r| r.coords == coords) {
                    continue;
                }
                let mut zero = z.clone();
                zero.set(j);
                new_rays.push(Ray { coords, zero });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, r) in rays.into_iter().enumerate() {
            if vals[i] < rat_int(0) {
                kept.push(r);
            } else if vals[i].is_zero() {
                let mut r = r;
                r.zero.set(j);
                kept.push(r);
            }
        }
        kept.extend(new_rays);
        rays = kept;
    }
    let mut out: Vec<Vec<Rat>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort_by(|a, b| super::cmp_vecs(a, b));
    out.dedup();
    Ok(out)
}

fn normalize(v: &[Rat]) -> Vec<Rat> {
    match primitive_direction(v) {
        Some(p) => p.into_iter().map(Rat::from).collect(),
        None => v.to_vec(),
    }
}
