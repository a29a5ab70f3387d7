//! Khovanskii-Pukhlikov rings.
//!
//! For a homogeneous volume polynomial `vol` of degree `n` in variables
//! `t_1..t_l`, the ring is `Q[d_1..d_l] / Ann(vol)` where `d_i` acts as
//! `d/dt_i`. Classes are represented by their action on `vol` (the Macaulay
//! inverse-system fingerprint): a degree-d operator is zero in the quotient
//! exactly when it annihilates `vol`, so equality, multiplication and relation
//! checks all reduce to differentiation plus exact kernels; no Groebner
//! machinery is needed.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::Error;
use crate::linalg::Mat;
use crate::mpoly::{Expo, MPoly};
use crate::rat::{rat_int, Rat};

/// Monomials of total degree `d` in `nvars` variables, in lexicographic order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Expo> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Expo>) {
        if prefix.len() + 1 == nvars {
            let mut e = prefix.clone();
            e.push(d);
            out.push(e);
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(nvars, d - k, prefix, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// One graded piece: the operator monomials of that degree, the matrix of
/// their action on `vol` (columns. indexed by monomials), a kernel basis of
/// the annihilator, and the monomials chosen as a basis of the quotient.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: u32,
    pub monomials: Vec<Expo>,
    /// Kernel basis vectors in the monomial coordinates (annihilator piece).
    pub ann_basis: Vec<Vec<Rat>>,
    /// Monomials whose images are independent: a basis of the quotient piece.
    pub quotient_basis: Vec<Expo>,
}

#[derive(Clone, Debug)]
pub struct KhpRing {
    pub vol: MPoly,
    pub vars: Vec<String>,
    /// Total degree of `vol` (= top nonzero grade of the quotient).
    pub degree: u32,
    pub pieces: Vec<GradedPiece>,
    pub hilbert: Vec<usize>,
}

/// A ring element: an operator polynomial plus its fingerprint `rep(vol)`.
#[derive(Clone)]
pub struct RingClass {
    pub ring: Arc<KhpRing>,
    pub rep: MPoly,
    pub canonical: MPoly,
}

/// Affine solution set of `D(vol) = target` in a fixed operator degree.
#[derive(Clone, Debug)]
pub struct OperatorSolution {
    pub degree: u32,
    pub particular: Option<MPoly>,
    pub kernel: Vec<MPoly>,
}

impl KhpRing {
    /// Build the graded quotient from a nonzero homogeneous polynomial. The
    /// Gorenstein symmetry of the resulting Hilbert function is checked on
    /// construction.
    pub fn build(vol: MPoly) -> Result<Arc<KhpRing>, Error> {
        if vol.is_zero() {
            return Err(Error::Invalid("volume polynomial is zero".into()));
        }
        if !vol.is_homogeneous() {
            return Err(Error::Invalid(
                "volume polynomial must be homogeneous".into(),
            ));
        }
        let vars = vol.vars().to_vec();
        let nvars = vars.len();
        let n = vol.total_degree();
        let mut pieces = Vec::new();
        let mut hilbert = Vec::new();
        for d in 0..=n {
            let monos = monomials_of_degree(nvars, d);
            // images D(vol) are homogeneous of degree n - d: coordinates in that
            // monomial space
            let image_monos = monomials_of_degree(nvars, n - d);
            let col_of = |e: &Expo| -> Vec<Rat> {
                let mono = MPoly::from_terms(vars.clone(), [(e.clone(), rat_int(1))]);
                let img = mono.apply_operator(&vol).expect("arity");
                image_monos.iter().map(|m| img.coeff(m)).collect()
            };
            let cols: Vec<Vec<Rat>> = monos.iter().map(col_of).collect();
            let mat = transpose(&cols, image_monos.len());
            let ann_basis = mat.kernel();
            // greedy lex-ordered choice of independent columns
            let mut quotient_basis = Vec::new();
            let mut chosen: Vec<Vec<Rat>> = Vec::new();
            for (i, c) in cols.iter().enumerate() {
                let mut test = chosen.clone();
                test.push(c.clone());
                if Mat::from_rows(test).rank() == chosen.len() + 1 {
                    chosen.push(c.clone());
                    quotient_basis.push(monos[i].clone());
                }
            }
            hilbert.push(quotient_basis.len());
            pieces.push(GradedPiece {
                degree: d,
                monomials: monos,
                ann_basis,
                quotient_basis,
            });
        }
        let ring = KhpRing {
            vol,
            vars,
            degree: n,
            pieces,
            hilbert,
        };
        ring.check_gorenstein()?;
        Ok(Arc::new(ring))
    }

    fn check_gorenstein(&self) -> Result<(), Error> {
        let h = &self.hilbert;
        let n = self.degree as usize;
        if h[0] != 1 || h[n] != 1 {
            return Err(Error::Invalid(format!(
                "socle dimensions are not one: hilbert = {h:?}"
            )));
        }
        for d in 0..=n {
            if h[d] != h[n - d] {
                return Err(Error::Invalid(format!(
                    "hilbert function is not symmetric: {h:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn total_dimension(&self) -> usize {
        self.hilbert.iter().sum()
    }

    /// Annihilator basis of one degree as operator polynomials.
    pub fn ann_generators(&self, d: u32) -> Vec<MPoly> {
        let piece = &self.pieces[d as usize];
        piece
            .ann_basis
            .iter()
            .map(|v| {
                MPoly::from_terms(
                    self.vars.clone(),
                    piece
                        .monomials
                        .iter()
                        .cloned()
                        .zip(v.iter().cloned())
                        .filter(|(_, c)| !c.is_zero()),
                )
            })
            .collect()
    }

    /// Degrees d with `Ann_d` strictly larger than `m_1 * Ann_{d-1}` would be
    /// the minimal generators; for reporting we expose the full graded basis.
    pub fn ann_dimensions(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.ann_basis.len()).collect()
    }

    /// Does the operator annihilate the volume polynomial?
    pub fn is_relation(&self, op: &MPoly) -> Result<bool, Error> {
        Ok(op.apply_operator(&self.vol)?.is_zero())
    }

    /// Solve `D(vol) = target` over homogeneous operators of degree `d`.
    /// Returns the canonical particular solution (lex-first monomials carry
    /// the pivots) together with a kernel basis; `particular == None` means
    /// the equation has no solution.
    pub fn solve_for_operator(&self, target: &MPoly, d: u32) -> Result<OperatorSolution, Error> {
        if d > self.degree {
            return Ok(OperatorSolution {
                degree: d,
                particular: target.is_zero().then(|| MPoly::zero_with(self.vars.clone())),
                kernel: Vec::new(),
            });
        }
        let piece = &self.pieces[d as usize];
        let image_monos = monomials_of_degree(self.vars.len(), self.degree - d);
        let cols: Vec<Vec<Rat>> = piece
            .monomials
            .iter()
            .map(|e| {
                let mono = MPoly::from_terms(self.vars.clone(), [(e.clone(), rat_int(1))]);
                let img = mono.apply_operator(&self.vol).expect("arity");
                image_monos.iter().map(|m| img.coeff(m)).collect()
            })
            .collect();
        let mat = transpose(&cols, image_monos.len());
        let rhs: Vec<Rat> = image_monos.iter().map(|m| target.coeff(m)).collect();
        // target must live in the right degree
        let target_ok = target.is_zero()
            || (target.is_homogeneous() && target.total_degree() == self.degree - d);
        if !target_ok {
            return Err(Error::Invalid(format!(
                "target must be homogeneous of degree {}",
                self.degree - d
            )));
        }
        let particular = mat.solve(&rhs).map(|x| {
            MPoly::from_terms(
                self.vars.clone(),
                piece
                    .monomials
                    .iter()
                    .cloned()
                    .zip(x)
                    .filter(|(_, c)| !c.is_zero()),
            )
        });
        Ok(OperatorSolution {
            degree: d,
            particular,
            kernel: self.ann_generators(d),
        })
    }

    /// Human-readable presentation `Z[da,db]/(da^2, db^2 - da*db)` listing the
    /// annihilator bases of every positive degree up to the top.
    pub fn presentation(&self) -> String {
        let vars = self
            .vars
            .iter()
            .map(|v| format!("∂{v}"))
            .collect::<Vec<_>>()
            .join(",");
        let mut gens: Vec<String> = Vec::new();
        for d in 1..=self.degree {
            let mut level: Vec<MPoly> = self
                .ann_generators(d)
                .into_iter()
                .filter(|g| !self.reducible_from_lower(g, d))
                .collect();
            // leading (lex-largest) monomial first, matching display order
            level.sort_by(|a, b| {
                let la = a.terms().map(|(e, _)| e.clone()).max();
                let lb = b.terms().map(|(e, _)| e.clone()).max();
                lb.cmp(&la)
            });
            gens.extend(level.iter().map(|g| op_string(g, &self.vars)));
        }
        format!("Z[{vars}]/({})", gens.join(", "))
    }

    /// True when `g` lies in the ideal generated by the annihilator pieces of
    /// smaller degree (so it is not a minimal generator).
    fn reducible_from_lower(&self, g: &MPoly, d: u32) -> bool {
        if d == 0 {
            return false;
        }
        // span of { m * ann : ann in Ann_{d'}, m monomial of degree d - d' }
        let piece = &self.pieces[d as usize];
        let coords = |p: &MPoly| -> Vec<Rat> {
            piece.monomials.iter().map(|m| p.coeff(m)).collect()
        };
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for dl in 1..d {
            for ann in self.ann_generators(dl) {
                for m in monomials_of_degree(self.vars.len(), d - dl) {
                    let mono = MPoly::from_terms(self.vars.clone(), [(m, rat_int(1))]);
                    rows.push(coords(&ann.mul(&mono).expect("vars")));
                }
            }
        }
        if rows.is_empty() {
            return false;
        }
        let rank_without = Mat::from_rows(rows.clone()).rank();
        rows.push(coords(g));
        Mat::from_rows(rows).rank() == rank_without
    }
}

fn transpose(cols: &[Vec<Rat>], nrows: usize) -> Mat {
    let ncols = cols.len();
    let mut m = Mat::new(nrows, ncols);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m.data[i][j] = v.clone();
        }
    }
    m
}

/// Operator polynomial rendered with `∂`-prefixed variables.
pub fn op_string(p: &MPoly, vars: &[String]) -> String {
    let renamed: Vec<String> = vars.iter().map(|v| format!("∂{v}")).collect();
    let q = MPoly::from_terms(
        renamed,
        p.terms().map(|(e, c)| (e.clone(), c.clone())),
    );
    q.to_string()
}

impl RingClass {
    pub fn new(ring: &Arc<KhpRing>, rep: MPoly) -> Result<RingClass, Error> {
        let canonical = rep.apply_operator(&ring.vol)?;
        Ok(RingClass {
            ring: Arc::clone(ring),
            rep,
            canonical,
        })
    }

    /// Degree-one class of a (virtual) family member with the given support
    /// coordinates: `sum_i x_i d_i`.
    pub fn of_polytope(ring: &Arc<KhpRing>, coords: &[Rat]) -> Result<RingClass, Error> {
        if coords.len() != ring.vars.len() {
            return Err(Error::ArityMismatch {
                expected: ring.vars.len(),
                got: coords.len(),
            });
        }
        let mut rep = MPoly::zero_with(ring.vars.clone());
        for (i, c) in coords.iter().enumerate() {
            let mut e = vec![0u32; ring.vars.len()];
            e[i] = 1;
            rep.add_term(&e, c);
        }
        RingClass::new(ring, rep)
    }

    /// Classes are equal iff they act identically on the volume polynomial.
    pub fn same_as(&self, other: &RingClass) -> bool {
        self.canonical == other.canonical
    }

    pub fn is_zero(&self) -> bool {
        self.canonical.is_zero()
    }

    pub fn multiply(&self, other: &RingClass) -> Result<RingClass, Error> {
        if !Arc::ptr_eq(&self.ring, &other.ring) && self.ring.vol != other.ring.vol {
            return Err(Error::Invalid("classes live in different rings".into()));
        }
        RingClass::new(&self.ring, self.rep.mul(&other.rep)?)
    }

    pub fn add(&self, other: &RingClass) -> Result<RingClass, Error> {
        RingClass::new(&self.ring, self.rep.add(&other.rep)?)
    }

    pub fn scale(&self, s: &Rat) -> RingClass {
        RingClass {
            ring: Arc::clone(&self.ring),
            rep: self.rep.scale(s),
            canonical: self.canonical.scale(s),
        }
    }

    /// Evaluation of a top-degree class on the volume polynomial.
    pub fn socle_pairing(&self) -> Result<Rat, Error> {
        if self.rep.is_zero() {
            return Ok(rat_int(0));
        }
        if !self.rep.is_homogeneous() || self.rep.total_degree() != self.ring.degree {
            return Err(Error::Invalid(format!(
                "socle pairing needs a homogeneous class of degree {}",
                self.ring.degree
            )));
        }
        self.canonical
            .as_constant()
            .ok_or_else(|| Error::Invalid("socle image is not constant".into()))
    }
}

impl fmt::Debug for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", op_string(&self.rep, &self.ring.vars))
    }
}

/// JSON report of a ring: Hilbert function, annihilator generators by degree,
/// chosen quotient basis monomials.
#[derive(Serialize)]
pub struct RingReport {
    pub vars: Vec<String>,
    pub volume_polynomial: String,
    pub degree: u32,
    pub hilbert: Vec<usize>,
    pub total_dimension: usize,
    pub presentation: String,
    pub ann_generators: Vec<AnnDegree>,
    pub quotient_basis: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct AnnDegree {
    pub degree: u32,
    pub generators: Vec<String>,
}

impl RingReport {
    pub fn new(ring: &KhpRing) -> RingReport {
        RingReport {
            vars: ring.vars.clone(),
            volume_polynomial: ring.vol.to_string(),
            degree: ring.degree,
            hilbert: ring.hilbert.clone(),
            total_dimension: ring.total_dimension(),
            presentation: ring.presentation(),
            ann_generators: (1..=ring.degree)
                .map(|d| AnnDegree {
                    degree: d,
                    generators: ring
                        .ann_generators(d)
                        .iter()
                        .map(|g| op_string(g, &ring.vars))
                        .collect(),
                })
                .collect(),
            quotient_basis: ring
                .pieces
                .iter()
                .map(|p| {
                    p.quotient_basis
                        .iter()
                        .map(|e| expo_string(e, &ring.vars))
                        .collect()
                })
                .collect(),
        }
    }
}

fn expo_string(e: &Expo, vars: &[String]) -> String {
    let s: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("∂{}", vars[i])
            } else {
                format!("∂{}^{}", vars[i], k)
            }
        })
        .collect();
    if s.is_empty() {
        "1".to_string()
    } else {
        s.join("*")
    }
}

/// Check that the span of `ops` equals the span of `expected` inside the
/// degree-d monomial coordinates (used by tests to pin annihilator pieces).
pub fn same_span(a: &[MPoly], b: &[MPoly]) -> bool {
    if a.is_empty() && b.is_empty() {
        return true;
    }
    let mut monos: Vec<Expo> = Vec::new();
    for p in a.iter().chain(b) {
        for (e, _) in p.terms() {
            if !monos.contains(e) {
                monos.push(e.clone());
            }
        }
    }
    monos.sort();
    let coords = |p: &MPoly| -> Vec<Rat> { monos.iter().map(|m| p.coeff(m)).collect() };
    let rows_a: Vec<Vec<Rat>> = a.iter().map(coords).collect();
    let rows_b: Vec<Vec<Rat>> = b.iter().map(coords).collect();
    let rank_a = Mat::from_rows(rows_a.clone()).rank();
    let rank_b = Mat::from_rows(rows_b.clone()).rank();
    let mut all = rows_a;
    all.extend(rows_b);
    let rank_all = Mat::from_rows(all).rank();
    rank_a == rank_b && rank_b == rank_all
}
