//! The Bott-Samelson polytope tower for the word (1,2,1,3,2) in type A_3.
//!
//! Each step is built two ways and cross-checked: from its explicit
//! inequality list, and as a push-pull (Cayley sum) family over the previous
//! step. The ring of every step carries the presentation produced by the
//! projective bundle formula; the dictionary `xi1 -> da, xi2 -> db,
//! xi3 -> dc - db, xi4 -> dd, xi5 -> de - dd` translates the presentation
//! relations into operators annihilating the step's volume polynomial.
//! The final polytope decomposes as a Minkowski sum of three FFLV polytopes,
//! and its volume polynomial matches the socle evaluation of the fifth power
//! of the divisor class `a xi1 + (b+c) xi2 + c xi3 + (d+e) xi4 + e xi5`.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::Error;
use crate::fflv::fflv_polytope;
use crate::khp::{op_string, KhpRing};
use crate::mpoly::MPoly;
use crate::polytope::{family, AffForm, ParamPolytope};
use crate::pushpull::{verify_theorem_main, CutSpec, TheoremVerification, TruncationSpec, VerificationReport};
use crate::rat::{fmt_rat, rat_int, Rat};
use crate::sample::Sampler;

pub const WORD: [usize; 5] = [1, 2, 1, 3, 2];
pub const PARAM_LETTERS: [&str; 5] = ["a", "b", "c", "d", "e"];

/// One storey of the tower.
pub struct TowerStep {
    pub k: usize,
    pub word_prefix: Vec<usize>,
    /// Canonical explicit family.
    pub family: ParamPolytope,
    pub vol: MPoly,
    pub ring: Arc<KhpRing>,
    /// Presentation relations in the `xi` variables.
    pub relations_xi: Vec<MPoly>,
    /// Dictionary entries `xi_i -> ` operator polynomial in the parameters.
    pub dictionary: Vec<MPoly>,
    /// Every relation, translated, annihilates the volume polynomial.
    pub relations_annihilate: bool,
    /// Push-pull route comparison (absent for the first step).
    pub routes: Option<RouteCheck>,
    pub theorem: Option<TheoremVerification>,
}

pub struct RouteCheck {
    pub pushpull_family: ParamPolytope,
    pub hrep_equal: bool,
    pub fan_equal: bool,
    pub volume_equal: bool,
    /// Rows of the raw explicit inequality list dropped as redundant when
    /// canonicalizing (none are expected).
    pub explicit_rows_removed: Vec<usize>,
}

/// Explicit inequality families printed in the construction. `k` in 1..=5.
pub fn explicit_family(k: usize) -> ParamPolytope {
    let ones = |k: usize| vec![1i64; k];
    match k {
        1 => family(1, &PARAM_LETTERS[..1], &[(&[-1], 0, &[0]), (&[1], 0, &[1])], &ones(1)),
        2 => family(
            2,
            &PARAM_LETTERS[..2],
            &[
                (&[-1, 0], 0, &[0, 0]),
                (&[0, -1], 0, &[0, 0]),
                (&[0, 1], 0, &[0, 1]),
                (&[1, 1], 0, &[1, 1]),
            ],
            &ones(2),
        ),
        3 => family(
            3,
            &PARAM_LETTERS[..3],
            &[
                (&[-1, 0, 0], 0, &[0, 0, 0]),
                (&[0, -1, 0], 0, &[0, 0, 0]),
                (&[0, 0, -1], 0, &[0, 0, 0]),
                (&[1, 0, 0], 0, &[1, 1, 0]),
                (&[0, 0, 1], 0, &[0, 0, 1]),
                (&[0, 1, 1], 0, &[0, 1, 1]),
                (&[1, 1, 1], 0, &[1, 1, 1]),
            ],
            &ones(3),
        ),
        4 => family(
            4,
            &PARAM_LETTERS[..4],
            &[
                (&[-1, 0, 0, 0], 0, &[0, 0, 0, 0]),
                (&[0, -1, 0, 0], 0, &[0, 0, 0, 0]),
                (&[0, 0, -1, 0], 0, &[0, 0, 0, 0]),
                (&[0, 0, 0, -1], 0, &[0, 0, 0, 0]),
                (&[0, 0, 1, 0], 0, &[0, 0, 1, 0]),
                (&[0, 0, 0, 1], 0, &[0, 0, 0, 1]),
                (&[1, 0, 0, 1], 0, &[1, 1, 0, 1]),
                (&[0, 1, 1, 1], 0, &[0, 1, 1, 1]),
                (&[1, 1, 1, 1], 0, &[1, 1, 1, 1]),
            ],
            &ones(4),
        ),
        5 => family(
            5,
            &PARAM_LETTERS,
            &[
                (&[-1, 0, 0, 0, 0], 0, &[0, 0, 0, 0, 0]),
                (&[0, -1, 0, 0, 0], 0, &[0, 0, 0, 0, 0]),
                (&[0, 0, -1, 0, 0], 0, &[0, 0, 0, 0, 0]),
                (&[0, 0, 0, -1, 0], 0, &[0, 0, 0, 0, 0]),
                (&[0, 0, 0, 0, -1], 0, &[0, 0, 0, 0, 0]),
                (&[1, 0, 0, 0, 0], 0, &[1, 1, 0, 1, 0]),
                (&[0, 0, 0, 0, 1], 0, &[0, 0, 0, 0, 1]),
                (&[0, 0, 1, 0, 1], 0, &[0, 0, 1, 0, 1]),
                (&[0, 0, 0, 1, 1], 0, &[0, 0, 0, 1, 1]),
                (&[1, 0, 0, 1, 1], 0, &[1, 1, 0, 1, 1]),
                (&[0, 1, 1, 0, 1], 0, &[0, 1, 1, 1, 1]),
                (&[0, 1, 0, 1, 1], 0, &[0, 1, 1, 1, 1]),
                (&[1, 1, 1, 0, 1], 0, &[1, 1, 1, 1, 1]),
                (&[1, 1, 0, 1, 1], 0, &[1, 1, 1, 1, 1]),
                (&[0, 1, 1, 1, 2], 0, &[0, 1, 1, 1, 2]),
                (&[1, 1, 1, 1, 2], 0, &[1, 1, 1, 1, 2]),
            ],
            &ones(5),
        ),
        _ => panic!("tower has five steps"),
    }
}

/// Truncation data turning step `k-1` into step `k` (k in 2..=5).
pub fn step_truncation(k: usize) -> Result<TruncationSpec, Error> {
    let mut base = explicit_family(k - 1);
    let (hat, p_point): (Vec<i64>, Vec<i64>) = match k {
        2 => (vec![2], vec![1]),
        3 => (vec![1, 2], vec![1, 1]),
        4 => (vec![1, 2, 1], vec![1, 1, 1]),
        5 => (vec![1, 1, 2, 2], vec![1, 1, 1, 1]),
        _ => return Err(Error::Invalid("tower steps are 2..=5".into())),
    };
    base.reference = hat.iter().map(|&x| rat_int(x)).collect();
    let base = base.canonicalize()?.0;
    let p_point: Vec<Rat> = p_point.iter().map(|&x| rat_int(x)).collect();
    let cuts = match k {
        2 | 4 => vec![],
        3 => vec![cut(&base, &[1, 0], &[&[0, -1], &[1, 1]], (-1, &[1, 1]))?],
        5 => {
            // facet normals of the step-4 family involved in the cuts
            let g14: &[i64] = &[1, 0, 0, 1]; // u1 + u4 <= a+b+d
            let g234: &[i64] = &[0, 1, 1, 1]; // u2 + u3 + u4 <= b+c+d
            let g1234: &[i64] = &[1, 1, 1, 1]; // u1+u2+u3+u4 <= a+b+c+d
            let u3_0: &[i64] = &[0, 0, -1, 0];
            let u4_0: &[i64] = &[0, 0, 0, -1];
            vec![
                cut(&base, &[1, 0, 0, 0], &[u4_0, g14], (-1, &[1, 1, 0, 1]))?,
                cut(&base, &[0, 1, 0, 1], &[u3_0, g234], (-1, &[0, 1, 1, 1]))?,
                cut(&base, &[0, 1, 1, 0], &[u4_0, g234], (-1, &[0, 1, 1, 1]))?,
                cut(&base, &[1, 1, 0, 1], &[u3_0, g1234], (-1, &[1, 1, 1, 1]))?,
                cut(&base, &[1, 1, 1, 0], &[u4_0, g1234], (-1, &[1, 1, 1, 1]))?,
            ]
        }
        _ => unreachable!(),
    };
    Ok(TruncationSpec::new(base, p_point, cuts))
}

/// Build a cut, resolving the face's facet indices through their normals.
fn cut(
    base: &ParamPolytope,
    psi: &[i64],
    face_normals: &[&[i64]],
    q_level: (i64, &[i64]),
) -> Result<CutSpec, Error> {
    let mut face = Vec::new();
    for target in face_normals {
        let want: Vec<Rat> = target.iter().map(|&x| rat_int(x)).collect();
        let idx = base
            .ineqs
            .iter()
            .position(|iq| iq.normal == want)
            .ok_or_else(|| Error::Invalid(format!("no facet with normal {target:?}")))?;
        face.push(idx);
    }
    Ok(CutSpec {
        face,
        psi: psi.iter().map(|&x| rat_int(x)).collect(),
        q_level: AffForm {
            constant: rat_int(q_level.0),
            coeffs: q_level.1.iter().map(|&x| rat_int(x)).collect(),
        },
    })
}

/// `base relations + (new^2 - c1 new + c2)` in one more `xi` variable.
/// `c1` and `c2` are polynomials of degree <= 1 and <= 2 in the existing
/// variables.
pub fn projective_bundle_presentation(
    base_relations: &[MPoly],
    c1: &MPoly,
    c2: &MPoly,
    new_var: &str,
) -> Result<Vec<MPoly>, Error> {
    if c1.total_degree() > 1 || c2.total_degree() > 2 {
        return Err(Error::Invalid(format!(
            "chern data has degrees {} and {}, expected <= 1 and <= 2",
            c1.total_degree(),
            c2.total_degree()
        )));
    }
    let mut vars: Vec<String> = c1.vars().to_vec();
    vars.push(new_var.to_string());
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let mut out = Vec::new();
    for r in base_relations {
        out.push(r.with_vars(&names)?);
    }
    let x = MPoly::var(&names, names.len() - 1);
    let rel = x
        .mul(&x)?
        .sub(&c1.with_vars(&names)?.mul(&x)?)?
        .add(&c2.with_vars(&names)?)?;
    out.push(rel);
    Ok(out)
}

/// Presentation relations of step `k`, produced by iterating the projective
/// bundle formula with the Chern data of each storey.
pub fn step_relations(k: usize) -> Result<Vec<MPoly>, Error> {
    let mut rels: Vec<MPoly> = Vec::new();
    let mut vars: Vec<String> = Vec::new();
    for step in 1..=k {
        let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let zero = MPoly::zero(&names);
        let (c1, c2) = match step {
            1 => (zero.clone(), zero.clone()),
            2 => (MPoly::parse("ξ1", &names)?, zero.clone()),
            3 => (
                MPoly::parse("-ξ2", &names)?,
                MPoly::parse("ξ2^2", &names)?,
            ),
            4 => (MPoly::parse("ξ2", &names)?, zero.clone()),
            // Chern data of the last storey. Note the sign of the second
            // Chern root: the change of variable x = ξ4 + ξ5 turns this
            // relation into x^2 - (∂c+∂d)x + (∂c^2+∂d^2), and only this sign
            // convention annihilates the volume polynomial; the variant with
            // ξ3(ξ4 - ξ2) fails and is reported by `sign_variant_check`.
            5 => (
                MPoly::parse("ξ2 + ξ3 - ξ4", &names)?,
                MPoly::parse("ξ2*ξ3 - ξ3*ξ4", &names)?,
            ),
            _ => unreachable!(),
        };
        rels = projective_bundle_presentation(&rels, &c1, &c2, &format!("ξ{step}"))?;
        vars.push(format!("ξ{step}"));
    }
    Ok(rels)
}

/// Dictionary `xi_i ->` operator polynomial over the step-`k` parameters.
pub fn step_dictionary(k: usize) -> Vec<MPoly> {
    let names: Vec<&str> = PARAM_LETTERS[..k].to_vec();
    (1..=k)
        .map(|i| {
            let text = match i {
                1 => "a",
                2 => "b",
                3 => "c - b",
                4 => "d",
                5 => "e - d",
                _ => unreachable!(),
            };
            MPoly::parse(text, &names).expect("dictionary entry")
        })
        .collect()
}

/// Translate a `xi`-relation through the dictionary into an operator
/// polynomial over the parameters.
pub fn translate_relation(rel: &MPoly, dictionary: &[MPoly]) -> Result<MPoly, Error> {
    rel.substitute(dictionary)
}

/// Outcome of testing both sign conventions of the last storey's second
/// Chern root against the volume polynomial.
#[derive(Serialize, Clone, Debug)]
pub struct SignVariantReport {
    /// The relation used by the presentation (annihilates the volume).
    pub used: String,
    pub used_annihilates: bool,
    /// The opposite-sign variant (rejected; its residual is nonzero).
    pub variant: String,
    pub variant_annihilates: bool,
    pub variant_residual: String,
}

/// Test the final-storey relation in both sign conventions of the second
/// Chern root. Exactly one of them annihilates the volume polynomial.
pub fn sign_variant_check(vol5: &MPoly) -> Result<SignVariantReport, Error> {
    let names = ["ξ1", "ξ2", "ξ3", "ξ4", "ξ5"];
    let used = MPoly::parse("ξ5^2 - ξ5*ξ2 - ξ5*ξ3 + ξ5*ξ4 + ξ2*ξ3 - ξ3*ξ4", &names)?;
    let variant = MPoly::parse("ξ5^2 - ξ5*ξ3 - ξ5*ξ4 + ξ5*ξ2 + ξ3*ξ4 - ξ2*ξ3", &names)?;
    let dict = step_dictionary(5);
    let used_res = translate_relation(&used, &dict)?.apply_operator(vol5)?;
    let variant_res = translate_relation(&variant, &dict)?.apply_operator(vol5)?;
    Ok(SignVariantReport {
        used: used.to_string(),
        used_annihilates: used_res.is_zero(),
        variant: variant.to_string(),
        variant_annihilates: variant_res.is_zero(),
        variant_residual: variant_res.to_string(),
    })
}

fn binomial_row(k: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for _ in 0..k {
        let mut next = vec![1usize];
        for w in row.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1);
        row = next;
    }
    row
}

/// Build all five steps with both routes and every cross-check.
pub fn build_tower_12132() -> Result<Vec<TowerStep>, Error> {
    let mut steps = Vec::new();
    for k in 1..=5usize {
        let raw = explicit_family(k);
        let (family, explicit_rows_removed) = raw.canonicalize()?;
        let vol = family.volume_polynomial()?;
        let ring = KhpRing::build(vol.clone())?;
        let relations_xi = step_relations(k)?;
        let dictionary = step_dictionary(k);
        let mut relations_annihilate = true;
        for rel in &relations_xi {
            let op = translate_relation(rel, &dictionary)?;
            if !op.apply_operator(&vol)?.is_zero() {
                relations_annihilate = false;
            }
        }
        let (routes, theorem) = if k >= 2 {
            let spec = step_truncation(k)?;
            let pushpull_family = spec.build_pushpull_family(PARAM_LETTERS[k - 1])?;
            let hrep_equal = pushpull_family.ineqs == family.ineqs
                && pushpull_family.params == family.params;
            let fan_equal = pushpull_family
                .normal_fan(&family.reference)?
                .same_as(&family.normal_fan(&family.reference)?);
            let volume_equal = pushpull_family.volume_polynomial()? == vol;
            let theorem = verify_theorem_main(&spec, PARAM_LETTERS[k - 1], false)?;
            (
                Some(RouteCheck {
                    pushpull_family,
                    hrep_equal,
                    fan_equal,
                    volume_equal,
                    explicit_rows_removed,
                }),
                Some(theorem),
            )
        } else {
            (None, None)
        };
        steps.push(TowerStep {
            k,
            word_prefix: WORD[..k].to_vec(),
            family,
            vol,
            ring,
            relations_xi,
            dictionary,
            relations_annihilate,
            routes,
            theorem,
        });
    }
    Ok(steps)
}

impl TowerStep {
    /// Hilbert function equals the binomial row, total dimension `2^k`.
    pub fn hilbert_ok(&self) -> bool {
        self.ring.hilbert == binomial_row(self.k)
            && self.ring.total_dimension() == 1 << self.k
    }

    pub fn routes_ok(&self) -> bool {
        match &self.routes {
            None => true,
            Some(r) => r.hrep_equal && r.fan_equal && r.volume_equal,
        }
    }
}

// ---------------------------------------------------------------------------
// Minkowski decomposition of the final polytope
// ---------------------------------------------------------------------------

#[derive(Serialize, Clone, Debug)]
pub struct MinkowskiPointReport {
    pub point: Vec<String>,
    pub equal: bool,
    pub witness: Option<String>,
}

/// Compare the final family against `P1(0,a) + P2(0,b,b+c) + P3(0,d,d+e,d+e)`
/// at one positive parameter point.
pub fn check_minkowski_at(
    delta5: &ParamPolytope,
    point: &[Rat],
) -> Result<MinkowskiPointReport, Error> {
    let (a, b, c, d, e) = (
        point[0].clone(),
        point[1].clone(),
        point[2].clone(),
        point[3].clone(),
        point[4].clone(),
    );
    let zero = rat_int(0);
    let p1 = fflv_polytope(&[zero.clone(), a.clone()])?.instantiate_ref()?;
    let p2 = fflv_polytope(&[zero.clone(), b.clone(), &b + &c])?.instantiate_ref()?;
    let p3 = fflv_polytope(&[zero.clone(), d.clone(), &d + &e, &d + &e])?.instantiate_ref()?;
    // the repeated weight pins the sixth coordinate of the third factor at 0
    if p3.vertices.iter().any(|v| !v[5].is_zero()) {
        return Err(Error::Invalid(
            "third factor does not lie in the u6 = 0 slice".into(),
        ));
    }
    let p1e = p1.embed(5)?;
    let p2e = p2.embed(5)?;
    let p3e = p3.project_out_last(5)?;
    let sum = p1e.minkowski_sum(&p2e)?.minkowski_sum(&p3e)?;
    let delta = delta5.instantiate(point)?;
    let mut equal = sum.same_as(&delta);
    let mut witness = None;
    if equal && sum.is_full_dimensional() && delta.is_full_dimensional() {
        equal = sum.facet_set() == delta.facet_set();
        if !equal {
            witness = Some("facet lists differ".into());
        }
    }
    if !equal && witness.is_none() {
        // find a separating inequality
        'search: {
            for (n, bnd) in &delta.ineqs {
                for v in &sum.vertices {
                    if &crate::linalg::dot(n, v) > bnd {
                        witness = Some(format!(
                            "sum vertex {:?} violates {:?} <= {}",
                            v.iter().map(fmt_rat).collect::<Vec<_>>(),
                            n.iter().map(fmt_rat).collect::<Vec<_>>(),
                            fmt_rat(bnd)
                        ));
                        break 'search;
                    }
                }
            }
            for (n, bnd) in &sum.ineqs {
                for v in &delta.vertices {
                    if &crate::linalg::dot(n, v) > bnd {
                        witness = Some(format!(
                            "final-polytope vertex {:?} outside the sum: violates {:?} <= {}",
                            v.iter().map(fmt_rat).collect::<Vec<_>>(),
                            n.iter().map(fmt_rat).collect::<Vec<_>>(),
                            fmt_rat(bnd)
                        ));
                        break 'search;
                    }
                }
            }
            witness = Some("vertex sets differ".into());
        }
    }
    Ok(MinkowskiPointReport {
        point: point.iter().map(fmt_rat).collect(),
        equal,
        witness,
    })
}

/// Run the decomposition check at seeded positive rational points.
pub fn check_minkowski_decomposition(
    delta5: &ParamPolytope,
    samples: usize,
    seed: u64,
) -> Result<Vec<MinkowskiPointReport>, Error> {
    let mut sampler = Sampler::new(seed);
    let mut out = Vec::new();
    for _ in 0..samples {
        let point = sampler.positive_vec(5, 3);
        out.push(check_minkowski_at(delta5, &point)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Self-intersection of the distinguished divisor
// ---------------------------------------------------------------------------

#[derive(Serialize, Clone, Debug)]
pub struct SelfIntersectionReport {
    pub divisor: String,
    pub lhs_volume: String,
    pub rhs_socle: String,
    /// `"identity"` when socle = volume, `"factorial"` when socle = 5! volume.
    pub normalization: Option<String>,
    pub passed: bool,
}

/// Evaluate the fifth power of `a xi1 + (b+c) xi2 + c xi3 + (d+e) xi4 + e xi5`
/// on the volume polynomial of the final step, with the parameters kept
/// symbolic, and decide which normalization relates it to the volume.
pub fn check_prop_self_intersection(step5: &TowerStep) -> Result<SelfIntersectionReport, Error> {
    assert_eq!(step5.k, 5);
    let vol = &step5.vol;
    let dict = &step5.dictionary;
    let params: Vec<&str> = PARAM_LETTERS.to_vec();
    // divisor coefficients in the xi basis
    let coeffs = [
        MPoly::parse("a", &params)?,
        MPoly::parse("b + c", &params)?,
        MPoly::parse("c", &params)?,
        MPoly::parse("d + e", &params)?,
        MPoly::parse("e", &params)?,
    ];
    // doubled variable space: parameters first, operator slots second
    let doubled_names: Vec<String> = params
        .iter()
        .map(|s| s.to_string())
        .chain(params.iter().map(|s| format!("D{s}")))
        .collect();
    let doubled: Vec<&str> = doubled_names.iter().map(|s| s.as_str()).collect();
    let mut divisor = MPoly::zero(&doubled);
    for (coef, entry) in coeffs.iter().zip(dict) {
        for (ce, cc) in coef.terms() {
            for (oe, oc) in entry.terms() {
                let mut e = vec![0u32; 10];
                e[..5].copy_from_slice(ce);
                for (i, &x) in oe.iter().enumerate() {
                    e[5 + i] = x;
                }
                divisor.add_term(&e, &(cc * oc));
            }
        }
    }
    let power = divisor.pow(5)?;
    // apply: a term t^alpha D^beta contributes t^alpha * (d^beta vol)
    let mut rhs = MPoly::zero(&params);
    for (e, c) in power.terms() {
        let mut derived = vol.clone();
        for (i, &order) in e[5..].iter().enumerate() {
            if order > 0 {
                derived = derived.diff_idx(i, order);
            }
        }
        if derived.is_zero() {
            continue;
        }
        let mut mono = MPoly::zero(&params);
        mono.add_term(&e[..5].to_vec(), c);
        rhs = rhs.add(&mono.mul(&derived)?)?;
    }
    let identity = rhs == *vol;
    let factorial = rhs == vol.scale(&rat_int(120));
    let normalization = match (identity, factorial) {
        (true, false) => Some("identity".to_string()),
        (false, true) => Some("factorial".to_string()),
        _ => None,
    };
    Ok(SelfIntersectionReport {
        divisor: "a*ξ1 + (b+c)*ξ2 + c*ξ3 + (d+e)*ξ4 + e*ξ5".to_string(),
        lhs_volume: vol.to_string(),
        rhs_socle: rhs.to_string(),
        passed: normalization.is_some(),
        normalization,
    })
}

// ---------------------------------------------------------------------------
// JSON report
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct TowerReport {
    pub seed: u64,
    pub steps: Vec<StepReport>,
    pub minkowski: Vec<MinkowskiPointReport>,
    pub self_intersection: SelfIntersectionReport,
    pub sign_variant: SignVariantReport,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct StepReport {
    pub word: Vec<usize>,
    pub inequalities: Vec<String>,
    pub volume_polynomial: String,
    pub hilbert: Vec<usize>,
    pub total_dimension: usize,
    pub hilbert_ok: bool,
    pub relations: Vec<String>,
    pub dictionary: Vec<String>,
    pub relations_annihilate: bool,
    pub routes: Option<RouteCheckReport>,
    pub theorem: Option<VerificationReport>,
}

#[derive(Serialize)]
pub struct RouteCheckReport {
    pub hrep_equal: bool,
    pub fan_equal: bool,
    pub volume_equal: bool,
    pub explicit_rows_removed: Vec<usize>,
}

/// Run the full pipeline and aggregate the verdicts.
pub fn tower_report(samples: usize, seed: u64) -> Result<TowerReport, Error> {
    let steps = build_tower_12132()?;
    let step5 = steps.last().unwrap();
    let minkowski = check_minkowski_decomposition(&step5.family, samples, seed)?;
    let self_intersection = check_prop_self_intersection(step5)?;
    let sign_variant = sign_variant_check(&step5.vol)?;
    let mut passed = minkowski.iter().all(|m| m.equal)
        && self_intersection.passed
        && sign_variant.used_annihilates
        && !sign_variant.variant_annihilates;
    let step_reports: Vec<StepReport> = steps
        .iter()
        .map(|s| {
            let ok = s.hilbert_ok()
                && s.relations_annihilate
                && s.routes_ok()
                && s.theorem.as_ref().map_or(true, |t| t.report.passed);
            passed &= ok;
            StepReport {
                word: s.word_prefix.clone(),
                inequalities: s.family.ineq_strings(),
                volume_polynomial: s.vol.to_string(),
                hilbert: s.ring.hilbert.clone(),
                total_dimension: s.ring.total_dimension(),
                hilbert_ok: s.hilbert_ok(),
                relations: s
                    .relations_xi
                    .iter()
                    .map(|r| r.to_string())
                    .collect(),
                dictionary: s
                    .dictionary
                    .iter()
                    .enumerate()
                    .map(|(i, d)| format!("ξ{} -> {}", i + 1, op_string(d, &s.ring.vars)))
                    .collect(),
                relations_annihilate: s.relations_annihilate,
                routes: s.routes.as_ref().map(|r| RouteCheckReport {
                    hrep_equal: r.hrep_equal,
                    fan_equal: r.fan_equal,
                    volume_equal: r.volume_equal,
                    explicit_rows_removed: r.explicit_rows_removed.clone(),
                }),
                theorem: s.theorem.as_ref().map(|t| t.report.clone()),
            }
        })
        .collect();
    Ok(TowerReport {
        seed,
        steps: step_reports,
        minkowski,
        self_intersection,
        sign_variant,
        passed,
    })
}
