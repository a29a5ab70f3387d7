//! Exact parametric polytopes.
//!
//! A `ParamPolytope` is a family `{x : <normal_i, x> <= offset_i(params)}`
//! whose right-hand sides are affine forms in named parameters (the support
//! numbers of the family). Instantiating at a rational parameter point gives
//! a concrete `Polytope` with enumerated vertices; around the reference point
//! the vertex coordinates are themselves affine in the parameters, which is
//! what makes symbolic volume polynomials possible.

mod dd;
mod faces;
mod fan;
mod hull;
mod volume;

pub use dd::cone_rays;
pub use faces::{Face, FaceLattice};
pub use fan::NormalFan;
pub use hull::convex_hull;

use std::fmt;

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{affine_rank, dot, Mat};
use crate::mpoly::MPoly;
use crate::rat::{fmt_rat, parse_rat, primitive_direction, rat_int, Rat};

/// Affine form `constant + sum(coeff_i * param_i)` in the family parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffForm {
    pub constant: Rat,
    pub coeffs: Vec<Rat>,
}

impl AffForm {
    pub fn zero(nparams: usize) -> Self {
        AffForm {
            constant: rat_int(0),
            coeffs: vec![rat_int(0); nparams],
        }
    }

    pub fn constant(nparams: usize, c: Rat) -> Self {
        AffForm {
            constant: c,
            coeffs: vec![rat_int(0); nparams],
        }
    }

    /// The form equal to a single parameter.
    pub fn param(nparams: usize, idx: usize) -> Self {
        let mut f = Self::zero(nparams);
        f.coeffs[idx] = rat_int(1);
        f
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        &self.constant + dot(&self.coeffs, point)
    }

    pub fn add(&self, other: &Self) -> Self {
        AffForm {
            constant: &self.constant + &other.constant,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AffForm {
            constant: &self.constant - &other.constant,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        AffForm {
            constant: &self.constant * s,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_const(&self, c: &Rat) -> Self {
        let mut f = self.clone();
        f.constant += c;
        f
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(|c| c.is_zero())
    }

    /// As a degree-<=1 polynomial in the given variables (one per parameter).
    pub fn to_mpoly(&self, vars: &[&str]) -> MPoly {
        let mut p = MPoly::constant(vars, self.constant.clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0u32; vars.len()];
            e[i] = 1;
            p.add_term(&e, c);
        }
        p
    }
}

/// One family inequality `<normal, x> <= offset(params)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ineq {
    pub normal: Vec<Rat>,
    pub offset: AffForm,
}

/// Parametric polytope family (common inequality skeleton, affine offsets).
#[derive(Clone, Debug)]
pub struct ParamPolytope {
    pub dim: usize,
    pub params: Vec<String>,
    pub ineqs: Vec<Ineq>,
    pub reference: Vec<Rat>,
}

/// A vertex of the family chart: reference coordinates, the full active set
/// there, and coordinates as affine forms in the parameters.
#[derive(Clone, Debug)]
pub struct ChartVertex {
    pub coords_ref: Vec<Rat>,
    pub active: Vec<usize>,
    pub coords: Vec<AffForm>,
    /// Exactly `dim` facets are active here.
    pub simple: bool,
}

/// All vertices of a family member, with parameter-affine coordinates valid
/// on the cone of parameters preserving the combinatorial type.
#[derive(Clone, Debug)]
pub struct VertexChart {
    pub reference: Vec<Rat>,
    pub vertices: Vec<ChartVertex>,
}

/// Instantiated polytope: irredundant H-representation (when full-dimensional)
/// plus the complete vertex list. Lower-dimensional instances keep only their
/// vertices.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub dim: usize,
    pub affine_dim: usize,
    /// Facet inequalities, normalized to primitive integer normals and sorted.
    /// Empty when `affine_dim < dim`.
    pub ineqs: Vec<(Vec<Rat>, Rat)>,
    /// Lexicographically sorted vertex list.
    pub vertices: Vec<Vec<Rat>>,
    /// Per vertex, indices of the facets active at it (full-dimensional case).
    pub active: Vec<Vec<usize>>,
}

impl ParamPolytope {
    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn param_names(&self) -> Vec<&str> {
        self.params.iter().map(|s| s.as_str()).collect()
    }

    /// Concrete H-representation at a parameter point.
    pub fn ineqs_at(&self, point: &[Rat]) -> Vec<(Vec<Rat>, Rat)> {
        self.ineqs
            .iter()
            .map(|iq| (iq.normal.clone(), iq.offset.eval(point)))
            .collect()
    }

    /// Instantiate the member at a parameter point.
    pub fn instantiate(&self, point: &[Rat]) -> Result<Polytope, Error> {
        if point.len() != self.nparams() {
            return Err(Error::ArityMismatch {
                expected: self.nparams(),
                got: point.len(),
            });
        }
        Polytope::from_ineqs(self.dim, self.ineqs_at(point))
    }

    pub fn instantiate_ref(&self) -> Result<Polytope, Error> {
        self.instantiate(&self.reference.clone())
    }

    /// All vertices at the given point, with coordinates back-solved as affine
    /// forms in the parameters from each vertex's active facet set.
    pub fn vertex_chart(&self, point: &[Rat]) -> Result<VertexChart, Error> {
        let inst = self.instantiate(point)?;
        if inst.affine_dim < self.dim {
            return Err(Error::Degenerate(format!(
                "member is {}-dimensional in R^{}",
                inst.affine_dim, self.dim
            )));
        }
        // Map the instantiated facets back to family inequality indices: the
        // canonical instance may drop redundant rows, so recompute active sets
        // against the raw family inequalities.
        let raw = self.ineqs_at(point);
        let mut vertices = Vec::new();
        for v in &inst.vertices {
            let active: Vec<usize> = raw
                .iter()
                .enumerate()
                .filter(|(_, (n, b))| &dot(n, v) == b)
                .map(|(i, _)| i)
                .collect();
            // pick dim active rows with independent normals
            let chosen = choose_independent(&raw, &active, self.dim)
                .ok_or_else(|| Error::Degenerate("vertex without full active rank".into()))?;
            let mat = Mat::from_rows(chosen.iter().map(|&i| raw[i].0.clone()).collect());
            // solve N x = offset(params) columnwise: constants, then each param
            let consts: Vec<Rat> = chosen
                .iter()
                .map(|&i| self.ineqs[i].offset.constant.clone())
                .collect();
            let x0 = mat.solve(&consts).ok_or(Error::SingularSystem)?;
            let mut coords: Vec<AffForm> = x0
                .into_iter()
                .map(|c| AffForm::constant(self.nparams(), c))
                .collect();
            for p in 0..self.nparams() {
                let rhs: Vec<Rat> = chosen
                    .iter()
                    .map(|&i| self.ineqs[i].offset.coeffs[p].clone())
                    .collect();
                let xp = mat.solve(&rhs).ok_or(Error::SingularSystem)?;
                for (c, val) in coords.iter_mut().zip(xp) {
                    c.coeffs[p] = val;
                }
            }
            debug_assert_eq!(
                coords.iter().map(|c| c.eval(point)).collect::<Vec<_>>(),
                *v
            );
            vertices.push(ChartVertex {
                coords_ref: v.clone(),
                simple: active.len() == self.dim,
                active,
                coords,
            });
        }
        Ok(VertexChart {
            reference: point.to_vec(),
            vertices,
        })
    }

    /// Remove inequalities that do not support a facet at the reference point
    /// and normalize the rest. Returns the canonical family and the indices of
    /// removed inequalities.
    pub fn canonicalize(&self) -> Result<(ParamPolytope, Vec<usize>), Error> {
        let raw = self.ineqs_at(&self.reference);
        let inst = Polytope::from_ineqs_raw(self.dim, raw.clone())?;
        if inst.affine_dim < self.dim {
            return Err(Error::Degenerate(
                "cannot canonicalize a lower-dimensional member".into(),
            ));
        }
        let mut keep = Vec::new();
        let mut removed = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for (i, iq) in self.ineqs.iter().enumerate() {
            let contact: Vec<Vec<Rat>> = inst
                .vertices
                .iter()
                .filter(|v| dot(&iq.normal, v) == raw[i].1)
                .cloned()
                .collect();
            let supports_facet = !contact.is_empty() && affine_rank(&contact) == self.dim - 1;
            if !supports_facet {
                removed.push(i);
                continue;
            }
            let canon = normalize_ineq_family(iq);
            let key = format!("{canon:?}");
            if seen.insert(key) {
                keep.push(canon);
            } else {
                removed.push(i);
            }
        }
        keep.sort_by(|a, b| cmp_vecs(&a.normal, &b.normal).then_with(|| cmp_aff(&a.offset, &b.offset)));
        Ok((
            ParamPolytope {
                dim: self.dim,
                params: self.params.clone(),
                ineqs: keep,
                reference: self.reference.clone(),
            },
            removed,
        ))
    }

    /// Normal fan of the member at a point.
    pub fn normal_fan(&self, point: &[Rat]) -> Result<NormalFan, Error> {
        self.instantiate(point)?.normal_fan()
    }

    /// Human-readable inequality list, coordinates named `u1, u2, ...`.
    pub fn ineq_strings(&self) -> Vec<String> {
        self.ineqs
            .iter()
            .map(|iq| {
                let lhs: Vec<String> = iq
                    .normal
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| {
                        if c == &rat_int(1) {
                            format!("u{}", i + 1)
                        } else if c == &rat_int(-1) {
                            format!("-u{}", i + 1)
                        } else {
                            format!("{}*u{}", fmt_rat(c), i + 1)
                        }
                    })
                    .collect();
                let mut rhs: Vec<String> = Vec::new();
                if !iq.offset.constant.is_zero() {
                    rhs.push(fmt_rat(&iq.offset.constant));
                }
                for (i, c) in iq.offset.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if c == &rat_int(1) {
                        rhs.push(self.params[i].clone());
                    } else {
                        rhs.push(format!("{}*{}", fmt_rat(c), self.params[i]));
                    }
                }
                let rhs = if rhs.is_empty() {
                    "0".to_string()
                } else {
                    rhs.join(" + ")
                };
                format!("{} <= {}", lhs.join(" + "), rhs)
            })
            .collect()
    }
}

pub(crate) fn cmp_vecs(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

fn cmp_aff(a: &AffForm, b: &AffForm) -> std::cmp::Ordering {
    a.constant
        .cmp(&b.constant)
        .then_with(|| cmp_vecs(&a.coeffs, &b.coeffs))
}

/// Scale an inequality so its normal is a primitive integer vector.
fn normalize_ineq_family(iq: &Ineq) -> Ineq {
    let prim = primitive_direction(&iq.normal).expect("zero normal");
    // find the positive scale factor prim = s * normal
    let k = iq.normal.iter().position(|c| !c.is_zero()).unwrap();
    let s = Rat::from(prim[k].clone()) / &iq.normal[k];
    Ineq {
        normal: prim.into_iter().map(Rat::from).collect(),
        offset: iq.offset.scale(&s),
    }
}

/// Pick `want` indices from `active` whose normals are linearly independent.
fn choose_independent(
    raw: &[(Vec<Rat>, Rat)],
    active: &[usize],
    want: usize,
) -> Option<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    for &i in active {
        if chosen.len() == want {
            break;
        }
        let mut rows: Vec<Vec<Rat>> = chosen.iter().map(|&j| raw[j].0.clone()).collect();
        rows.push(raw[i].0.clone());
        if Mat::from_rows(rows).rank() == chosen.len() + 1 {
            chosen.push(i);
        }
    }
    (chosen.len() == want).then_some(chosen)
}

impl Polytope {
    /// Build from an H-representation: enumerate all vertices by exhaustive
    /// search over `dim`-subsets of inequalities (exact solve + feasibility
    /// check), verify boundedness via the recession cone, then canonicalize
    /// the facet list.
    pub fn from_ineqs(dim: usize, ineqs: Vec<(Vec<Rat>, Rat)>) -> Result<Polytope, Error> {
        let mut p = Self::from_ineqs_raw(dim, ineqs)?;
        if p.affine_dim == p.dim {
            p.canonicalize_facets();
        }
        Ok(p)
    }

    /// Same as `from_ineqs` but keeps the given inequality list untouched
    /// (active sets refer to the raw list).
    pub fn from_ineqs_raw(dim: usize, ineqs: Vec<(Vec<Rat>, Rat)>) -> Result<Polytope, Error> {
        for (n, _) in &ineqs {
            if n.len() != dim {
                return Err(Error::DimensionMismatch(n.len(), dim));
            }
        }
        // recession cone {x : Ax <= 0} must be {0}
        let normals: Vec<Vec<Rat>> = ineqs.iter().map(|(n, _)| n.clone()).collect();
        match dd::cone_rays(&normals, dim) {
            Err(_) => return Err(Error::Unbounded),
            Ok(rays) if !rays.is_empty() => return Err(Error::Unbounded),
            Ok(_) => {}
        }
        let vertices = enumerate_vertices_exhaustive(dim, &ineqs)?;
        if vertices.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        let affine_dim = affine_rank(&vertices);
        let active = vertices
            .iter()
            .map(|v| {
                ineqs
                    .iter()
                    .enumerate()
                    .filter(|(_, (n, b))| &dot(n, v) == b)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok(Polytope {
            dim,
            affine_dim,
            ineqs,
            vertices,
            active,
        })
    }

    /// Replace the inequality list with the canonical facet list: primitive
    /// integer normals, deduplicated, facet-supporting only, sorted.
    fn canonicalize_facets(&mut self) {
        let mut canon: Vec<(Vec<Rat>, Rat)> = Vec::new();
        for (n, b) in &self.ineqs {
            let contact: Vec<Vec<Rat>> = self
                .vertices
                .iter()
                .filter(|v| &dot(n, v) == b)
                .cloned()
                .collect();
            if contact.is_empty() || affine_rank(&contact) != self.dim - 1 {
                continue;
            }
            let prim = primitive_direction(n).expect("zero normal");
            let k = n.iter().position(|c| !c.is_zero()).unwrap();
            let s = Rat::from(prim[k].clone()) / &n[k];
            let row = (
                prim.into_iter().map(Rat::from).collect::<Vec<Rat>>(),
                b * &s,
            );
            if !canon.contains(&row) {
                canon.push(row);
            }
        }
        canon.sort_by(|a, b| cmp_vecs(&a.0, &b.0).then_with(|| a.1.cmp(&b.1)));
        self.active = self
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
        self.ineqs = canon;
    }

    /// Build directly from a known vertex description (full-dimensional data
    /// is recomputed via the hull).
    pub fn from_points(dim: usize, points: Vec<Vec<Rat>>) -> Result<Polytope, Error> {
        hull::convex_hull(dim, points)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        if self.is_full_dimensional() {
            self.ineqs.iter().all(|(n, b)| &dot(n, x) <= b)
        } else {
            // fall back to a hull membership test through the vertex set
            hull::in_hull(&self.vertices, x)
        }
    }

    /// Polytopes are equal iff their vertex sets coincide.
    pub fn same_as(&self, other: &Polytope) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }

    /// Facet sets as canonical (primitive normal, offset) pairs.
    pub fn facet_set(&self) -> Vec<(Vec<Rat>, Rat)> {
        self.ineqs.clone()
    }

    pub fn translate(&self, t: &[Rat]) -> Polytope {
        let vertices: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        let ineqs = self
            .ineqs
            .iter()
            .map(|(n, b)| (n.clone(), b + dot(n, t)))
            .collect();
        let mut p = Polytope {
            dim: self.dim,
            affine_dim: self.affine_dim,
            ineqs,
            vertices,
            active: self.active.clone(),
        };
        p.sort_vertices();
        p
    }

    pub fn scale(&self, s: &Rat) -> Result<Polytope, Error> {
        if s.is_zero() {
            // collapses to a point
            let origin = vec![rat_int(0); self.dim];
            return hull::convex_hull(self.dim, vec![origin]);
        }
        if s < &rat_int(0) {
            return Err(Error::Invalid("negative polytope scaling".into()));
        }
        let vertices: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|c| c * s).collect())
            .collect();
        let ineqs = self
            .ineqs
            .iter()
            .map(|(n, b)| (n.clone(), b * s))
            .collect();
        let mut p = Polytope {
            dim: self.dim,
            affine_dim: self.affine_dim,
            ineqs,
            vertices,
            active: self.active.clone(),
        };
        p.sort_vertices();
        Ok(p)
    }

    fn sort_vertices(&mut self) {
        let mut idx: Vec<usize> = (0..self.vertices.len()).collect();
        idx.sort_by(|&a, &b| cmp_vecs(&self.vertices[a], &self.vertices[b]));
        self.vertices = idx.iter().map(|&i| self.vertices[i].clone()).collect();
        if !self.active.is_empty() {
            self.active = idx.iter().map(|&i| self.active[i].clone()).collect();
        }
    }

    /// Slice `{x : (x, t) in self}` by fixing the last coordinate.
    pub fn fix_last_coord(&self, t: &Rat) -> Result<Polytope, Error> {
        if self.ineqs.is_empty() {
            return Err(Error::Degenerate("slice needs an H-representation".into()));
        }
        let n = self.dim - 1;
        let ineqs = self
            .ineqs
            .iter()
            .map(|(nor, b)| {
                let head = nor[..n].to_vec();
                let rhs = b - &nor[n] * t;
                (head, rhs)
            })
            .filter(|(nor, _)| nor.iter().any(|c| !c.is_zero()))
            .collect();
        Polytope::from_ineqs(n, ineqs)
    }
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "polytope in R^{} (affine dim {}), {} vertices, {} facets",
            self.dim,
            self.affine_dim,
            self.vertices.len(),
            self.ineqs.len()
        )?;
        for (n, b) in &self.ineqs {
            let lhs = n
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| format!("{}*x{}", fmt_rat(c), i + 1))
                .join(" + ");
            writeln!(f, "  {lhs} <= {}", fmt_rat(b))?;
        }
        Ok(())
    }
}

/// Exhaustive vertex enumeration: every `dim`-subset of inequalities with
/// invertible normal matrix contributes a candidate, kept when feasible.
fn enumerate_vertices_exhaustive(
    dim: usize,
    ineqs: &[(Vec<Rat>, Rat)],
) -> Result<Vec<Vec<Rat>>, Error> {
    let m = ineqs.len();
    if m < dim {
        return Err(Error::Unbounded);
    }
    let mut verts: Vec<Vec<Rat>> = Vec::new();
    for subset in (0..m).combinations(dim) {
        let mat = Mat::from_rows(subset.iter().map(|&i| ineqs[i].0.clone()).collect());
        let rhs: Vec<Rat> = subset.iter().map(|&i| ineqs[i].1.clone()).collect();
        if mat.rank() < dim {
            continue;
        }
        let Some(x) = mat.solve(&rhs) else { continue };
        if ineqs.iter().all(|(n, b)| &dot(n, &x) <= b) && !verts.contains(&x) {
            verts.push(x);
        }
    }
    verts.sort_by(|a, b| cmp_vecs(a, b));
    Ok(verts)
}

// ---------------------------------------------------------------------------
// JSON form
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct ParamPolytopeJson {
    pub dim: usize,
    pub params: Vec<String>,
    pub ineqs: Vec<IneqJson>,
    pub reference: std::collections::BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
pub struct IneqJson {
    pub normal: Vec<String>,
    pub offset: std::collections::BTreeMap<String, String>,
}

impl From<&ParamPolytope> for ParamPolytopeJson {
    fn from(p: &ParamPolytope) -> Self {
        ParamPolytopeJson {
            dim: p.dim,
            params: p.params.clone(),
            ineqs: p
                .ineqs
                .iter()
                .map(|iq| {
                    let mut offset = std::collections::BTreeMap::new();
                    if !iq.offset.constant.is_zero() {
                        offset.insert("const".to_string(), fmt_rat(&iq.offset.constant));
                    }
                    for (i, c) in iq.offset.coeffs.iter().enumerate() {
                        if !c.is_zero() {
                            offset.insert(p.params[i].clone(), fmt_rat(c));
                        }
                    }
                    IneqJson {
                        normal: iq.normal.iter().map(fmt_rat).collect(),
                        offset,
                    }
                })
                .collect(),
            reference: p
                .params
                .iter()
                .zip(&p.reference)
                .map(|(name, v)| (name.clone(), fmt_rat(v)))
                .collect(),
        }
    }
}

impl ParamPolytopeJson {
    pub fn to_family(&self) -> Result<ParamPolytope, Error> {
        let nparams = self.params.len();
        let mut ineqs = Vec::new();
        for iq in &self.ineqs {
            if iq.normal.len() != self.dim {
                return Err(Error::DimensionMismatch(iq.normal.len(), self.dim));
            }
            let normal = iq
                .normal
                .iter()
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<_>, _>>()?;
            let mut offset = AffForm::zero(nparams);
            for (key, val) in &iq.offset {
                let v = parse_rat(val)?;
                if key == "const" {
                    offset.constant = v;
                } else {
                    let idx = self
                        .params
                        .iter()
                        .position(|p| p == key)
                        .ok_or_else(|| Error::UnknownVariable(key.clone()))?;
                    offset.coeffs[idx] = v;
                }
            }
            ineqs.push(Ineq { normal, offset });
        }
        let mut reference = vec![rat_int(0); nparams];
        for (key, val) in &self.reference {
            let idx = self
                .params
                .iter()
                .position(|p| p == key)
                .ok_or_else(|| Error::UnknownVariable(key.clone()))?;
            reference[idx] = parse_rat(val)?;
        }
        Ok(ParamPolytope {
            dim: self.dim,
            params: self.params.clone(),
            ineqs,
            reference,
        })
    }
}

// ---------------------------------------------------------------------------
// Virtual polytopes
// ---------------------------------------------------------------------------

/// An element of the support-number lattice of a family: a formal (possibly
/// non-representable) member given by its parameter coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualPolytope {
    pub coords: Vec<Rat>,
}

impl VirtualPolytope {
    pub fn new(coords: Vec<Rat>) -> Self {
        VirtualPolytope { coords }
    }

    pub fn add(&self, other: &Self) -> Self {
        VirtualPolytope {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        VirtualPolytope {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Convenient constructors used across tests and the tower
// ---------------------------------------------------------------------------

/// Family builder from string data: normals as integer slices, offsets as
/// `(constant, [per-param coeffs])`.
pub fn family(
    dim: usize,
    params: &[&str],
    rows: &[(&[i64], i64, &[i64])],
    reference: &[i64],
) -> ParamPolytope {
    let nparams = params.len();
    let ineqs = rows
        .iter()
        .map(|(normal, c, coeffs)| {
            assert_eq!(normal.len(), dim);
            assert_eq!(coeffs.len(), nparams);
            Ineq {
                normal: normal.iter().map(|&x| rat_int(x)).collect(),
                offset: AffForm {
                    constant: rat_int(*c),
                    coeffs: coeffs.iter().map(|&x| rat_int(x)).collect(),
                },
            }
        })
        .collect();
    ParamPolytope {
        dim,
        params: params.iter().map(|s| s.to_string()).collect(),
        ineqs,
        reference: reference.iter().map(|&x| rat_int(x)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::trapezoid_family;
    use crate::rat::rat;

    /// `0 <= x_i <= a` unit-cube family in one parameter.
    fn cube_family(dim: usize) -> ParamPolytope {
        let mut rows: Vec<(Vec<Rat>, AffForm)> = Vec::new();
        for i in 0..dim {
            let mut lo = vec![rat_int(0); dim];
            lo[i] = rat_int(-1);
            rows.push((lo, AffForm::zero(1)));
            let mut hi = vec![rat_int(0); dim];
            hi[i] = rat_int(1);
            rows.push((hi, AffForm::param(1, 0)));
        }
        ParamPolytope {
            dim,
            params: vec!["a".into()],
            ineqs: rows
                .into_iter()
                .map(|(normal, offset)| Ineq { normal, offset })
                .collect(),
            reference: vec![rat_int(1)],
        }
    }

    #[test]
    fn unit_square_has_four_vertices() {
        let sq = cube_family(2);
        let p = sq.instantiate(&[rat_int(1)]).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.ineqs.len(), 4);
        assert!(p.is_full_dimensional());
    }

    #[test]
    fn trapezoid_vertices_at_reference() {
        let p = trapezoid_family().instantiate_ref().unwrap();
        let expect: Vec<Vec<Rat>> = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(3), rat_int(0)],
        ];
        assert_eq!(p.vertices, expect);
    }

    #[test]
    fn empty_and_unbounded_are_rejected() {
        // x <= -1 and -x <= 0 is empty
        let bad = vec![
            (vec![rat_int(1)], rat_int(-1)),
            (vec![rat_int(-1)], rat_int(0)),
        ];
        assert!(matches!(
            Polytope::from_ineqs(1, bad),
            Err(Error::EmptyPolytope)
        ));
        // x >= 0 alone is unbounded
        let ub = vec![(vec![rat_int(-1)], rat_int(0))];
        assert!(matches!(Polytope::from_ineqs(1, ub), Err(Error::Unbounded)));
        // quadrant in R^2: has a vertex but unbounded
        let quad = vec![
            (vec![rat_int(-1), rat_int(0)], rat_int(0)),
            (vec![rat_int(0), rat_int(-1)], rat_int(0)),
        ];
        assert!(matches!(Polytope::from_ineqs(2, quad), Err(Error::Unbounded)));
    }

    #[test]
    fn chart_coords_are_affine_in_params() {
        let fam = trapezoid_family();
        let chart = fam.vertex_chart(&fam.reference.clone()).unwrap();
        assert_eq!(chart.vertices.len(), 4);
        // vertex (x0 + a, y0 + b): check the affine forms against a second point
        let other = [rat(3, 2), rat(1, 2), rat_int(1), rat_int(-1)];
        let inst = fam.instantiate(&other).unwrap();
        for cv in &chart.vertices {
            let moved: Vec<Rat> = cv.coords.iter().map(|f| f.eval(&other)).collect();
            assert!(
                inst.vertices.contains(&moved),
                "chart vertex {moved:?} missing at {other:?}"
            );
            assert!(cv.simple);
        }
    }

    #[test]
    fn canonicalize_drops_redundant_rows() {
        // unit square plus the redundant x + y <= 5 and a duplicate facet
        let fam = family(
            2,
            &["a"],
            &[
                (&[-1, 0], 0, &[0]),
                (&[0, -1], 0, &[0]),
                (&[1, 0], 0, &[1]),
                (&[0, 1], 0, &[1]),
                (&[1, 1], 3, &[1]),
                (&[2, 0], 0, &[2]),
            ],
            &[1],
        );
        let (canon, removed) = fam.canonicalize().unwrap();
        assert_eq!(canon.ineqs.len(), 4);
        assert_eq!(removed, vec![4, 5]);
    }

    #[test]
    fn translation_and_scaling() {
        let sq = cube_family(2).instantiate(&[rat_int(1)]).unwrap();
        let tr = sq.translate(&[rat_int(3), rat_int(-1)]);
        assert!(tr.vertices.contains(&vec![rat_int(3), rat_int(-1)]));
        assert!(tr.vertices.contains(&vec![rat_int(4), rat_int(0)]));
        let sc = sq.scale(&rat(1, 2)).unwrap();
        assert!(sc.vertices.contains(&vec![rat(1, 2), rat(1, 2)]));
    }
}
