//! Acceptance suite: one test per criterion, each printing a verdict line.
//!
//! Every check is exact (tolerance zero). The seeded checks print their seed;
//! rerunning with the same seed reproduces them bit for bit.

use std::sync::LazyLock;

use num_traits::Zero;

use pushpull_core::khp::{same_span, KhpRing};
use pushpull_core::mpoly::MPoly;
use pushpull_core::polytope::Polytope;
use pushpull_core::pushpull::{
    check_ode, prism_truncation, trapezoid_truncation, verify_theorem_main,
};
use pushpull_core::rat::{rat, rat_int, Rat};
use pushpull_core::sample::{Sampler, DEFAULT_SEED};
use pushpull_core::tower::{
    build_tower_12132, check_minkowski_decomposition, check_prop_self_intersection,
    sign_variant_check, step_truncation, TowerStep,
};
use pushpull_core::weyl::{
    dominant_vertex, gk_cube, verify_chevalley_pieri, verify_lemma_demazure,
    word_to_betas_type_a, BetaSequence,
};
use pushpull_core::{gallery, Error};

static TOWER: LazyLock<Vec<TowerStep>> =
    LazyLock::new(|| build_tower_12132().expect("tower build"));

fn pass(n: u32, what: &str) {
    println!("criterion {n}: PASS - {what}");
}

#[test]
fn criterion_01_trapezoid_volume_polynomial() {
    let fam = gallery::trapezoid_family();
    let vol = fam.volume_polynomial().unwrap();
    let expect = MPoly::parse("a*b + 1/2*b^2", &["a", "b", "x0", "y0"]).unwrap();
    assert_eq!(vol, expect);
    assert!(vol.is_independent_of("x0").unwrap());
    assert!(vol.is_independent_of("y0").unwrap());
    pass(1, "volume polynomial a*b + b^2/2, independent of the translations");
}

#[test]
fn criterion_02_trapezoid_ring() {
    let vol = MPoly::parse("a*b + 1/2*b^2", &["a", "b"]).unwrap();
    let ring = KhpRing::build(vol).unwrap();
    assert_eq!(ring.hilbert, vec![1, 2, 1]);
    let expected = vec![
        MPoly::parse("a^2", &["a", "b"]).unwrap(),
        MPoly::parse("b^2 - a*b", &["a", "b"]).unwrap(),
    ];
    assert!(same_span(&ring.ann_generators(2), &expected));
    assert!(ring.ann_generators(1).is_empty());
    pass(2, "hilbert (1,2,1), degree-2 annihilator span {da^2, db^2 - da db}");
}

#[test]
fn criterion_03_pushpull_of_the_trapezoid() {
    let spec = trapezoid_truncation();
    let v = verify_theorem_main(&spec, "s", false).unwrap();
    let expect = MPoly::parse(
        "s*a*b + 1/2*s*b^2 + 1/2*s^2*a + 1/2*s^2*b",
        &["a", "b", "s"],
    )
    .unwrap();
    assert_eq!(v.vol_delta, expect);
    let rel = MPoly::parse("s^2 - b*s + a*b", &["a", "b", "s"]).unwrap();
    assert!(rel.apply_operator(&v.vol_delta).unwrap().is_zero());
    assert!(v.report.passed, "{:#?}", v.report);
    for check in &v.report.checks {
        assert!(check.passed, "sub-check failed: {}", check.name);
    }
    pass(3, "vol_Delta matches, ds^2 - db ds + da db annihilates, all sub-checks pass");
}

#[test]
fn criterion_04_ode() {
    assert!(check_ode(&trapezoid_truncation(), "s").unwrap());
    let prism = prism_truncation(gallery::square_family().canonicalize().unwrap().0);
    assert!(check_ode(&prism, "s").unwrap());
    assert!(check_ode(&step_truncation(5).unwrap(), "e").unwrap());
    pass(4, "F'' - c1 F' + D_F F = 0 for the worked example, the prism and the final tower step");
}

#[test]
fn criterion_05_tower_rings() {
    let steps = &*TOWER;
    for step in steps.iter() {
        assert!(step.hilbert_ok(), "hilbert at step {}", step.k);
        assert!(
            step.relations_annihilate,
            "a translated relation fails at step {}",
            step.k
        );
    }
    assert_eq!(steps[4].ring.total_dimension(), 32);
    // the detected sign discrepancy in the last storey's printed relation:
    // the corrected convention annihilates, the variant does not
    let sv = sign_variant_check(&steps[4].vol).unwrap();
    assert!(sv.used_annihilates);
    assert!(!sv.variant_annihilates);
    println!(
        "criterion 5: note - last-storey relation sign variant `{}` does NOT annihilate \
         (residual {}); the presentation uses `{}`",
        sv.variant, sv.variant_residual, sv.used
    );
    pass(5, "hilbert rows (1+t)^k, rank 32 at the top, all dictionary-translated relations annihilate");
}

#[test]
fn criterion_06_route_equivalence() {
    let steps = &*TOWER;
    for step in steps.iter().skip(1) {
        let r = step.routes.as_ref().unwrap();
        assert!(r.fan_equal, "fan mismatch at step {}", step.k);
        assert!(r.volume_equal, "volume mismatch at step {}", step.k);
        assert!(r.hrep_equal, "h-rep mismatch at step {}", step.k);
        println!(
            "criterion 6: step {} redundant rows in the explicit list: {:?}",
            step.k, r.explicit_rows_removed
        );
        assert!(r.explicit_rows_removed.is_empty());
    }
    assert_eq!(steps[4].family.ineqs.len(), 16);
    pass(6, "explicit lists and push-pull construction agree for every step; 16 facets, none redundant");
}

#[test]
fn criterion_07_minkowski_identity() {
    let steps = &*TOWER;
    let reports = check_minkowski_decomposition(&steps[4].family, 3, DEFAULT_SEED).unwrap();
    assert_eq!(reports.len(), 3);
    for r in &reports {
        assert!(r.equal, "at {:?}: {:?}", r.point, r.witness);
    }
    println!(
        "criterion 7: seed {DEFAULT_SEED}, points {:?}",
        reports.iter().map(|r| r.point.clone()).collect::<Vec<_>>()
    );
    pass(7, "three-factor FFLV Minkowski sum equals the final polytope at 3 seeded points");
}

#[test]
fn criterion_08_self_intersection_normalization() {
    let steps = &*TOWER;
    let report = check_prop_self_intersection(&steps[4]).unwrap();
    assert!(report.passed, "{report:?}");
    assert_eq!(report.normalization.as_deref(), Some("factorial"));
    println!(
        "criterion 8: normalization recorded = {} (socle of the 5th power equals 5! times the volume)",
        report.normalization.as_deref().unwrap()
    );
    pass(8, "divisor self-intersection matches the volume under exactly one normalization");
}

#[test]
fn criterion_09_gk_cubes() {
    let seed = DEFAULT_SEED;
    let mut sampler = Sampler::new(seed);
    let mut vertex_checked = 0;
    let mut unique_checked = 0;
    let mut lemma_checked = 0;
    while vertex_checked < 20 {
        let rank = if sampler.index(2) == 0 { 2 } else { 3 };
        let len = 2 + sampler.index(rank);
        let word: Vec<usize> = (0..len).map(|_| 1 + sampler.index(rank)).collect();
        let betas = word_to_betas_type_a(rank, &word).unwrap();
        let lambda = sampler.rat_vec(rank + 1, -2, 6);
        let cube = gk_cube(&betas, &lambda).unwrap();
        if cube.virtual_flag {
            continue;
        }
        let member = cube.family.instantiate_ref().unwrap();
        let dv = dominant_vertex(&betas, &lambda);
        assert!(
            member.vertices.contains(&dv),
            "formula vertex missing: word {word:?}, lambda {lambda:?}"
        );
        vertex_checked += 1;
        if dv.iter().all(|c| !c.is_zero()) {
            let all_nonzero: Vec<_> = member
                .vertices
                .iter()
                .filter(|v| v.iter().all(|c| !c.is_zero()))
                .collect();
            assert_eq!(all_nonzero, vec![&dv], "word {word:?}, lambda {lambda:?}");
            unique_checked += 1;
        }
        match verify_lemma_demazure(&betas, &lambda) {
            Ok(ok) => {
                assert!(ok, "lemma failed: word {word:?}, lambda {lambda:?}");
                lemma_checked += 1;
            }
            // precondition unsatisfied: twisted or lower-dimensional cubes
            Err(Error::VirtualPolytope(_)) | Err(Error::Degenerate(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(unique_checked > 0);
    assert!(lemma_checked > 0);
    println!(
        "criterion 9: seed {seed}; vertex formula on {vertex_checked} instances, uniqueness on \
         {unique_checked}, inductive lemma on {lemma_checked}"
    );
    pass(9, "formula vertex in the vertex set, unique all-nonzero vertex, lemma holds where defined");
}

#[test]
fn criterion_10_property_suites() {
    let seed = DEFAULT_SEED;
    let mut sampler = Sampler::new(seed);

    // Gorenstein symmetry of every ring constructed by the pipeline
    let steps = &*TOWER;
    let mut rings: Vec<&KhpRing> = steps.iter().map(|s| &*s.ring).collect();
    let example = verify_theorem_main(&trapezoid_truncation(), "s", false).unwrap();
    rings.push(&example.base_ring);
    rings.push(&example.delta_ring);
    for ring in rings {
        let h = &ring.hilbert;
        let n = ring.degree as usize;
        assert_eq!(h[0], 1);
        assert_eq!(h[n], 1);
        for d in 0..=n {
            assert_eq!(h[d], h[n - d], "asymmetric hilbert {h:?}");
        }
    }

    // volume additivity of valid truncations at sampled parameters
    for spec_decl in [trapezoid_truncation(), step_truncation(5).unwrap()] {
        let qdata = spec_decl.extract_q_data("szz").unwrap();
        for _ in 0..3 {
            let shift = sampler.rat_vec(spec_decl.base.nparams(), 0, 1);
            let mut moved = spec_decl.clone();
            moved.base.reference = spec_decl
                .base
                .reference
                .iter()
                .zip(&shift)
                .map(|(r, s)| r + s)
                .collect();
            moved.p_point = spec_decl
                .p_point
                .iter()
                .zip(&shift)
                .map(|(r, s)| r + s)
                .collect();
            if moved.validate().is_err() {
                continue;
            }
            let (_p, hat, q) = moved.members().unwrap();
            let mut point = moved.base.reference.clone();
            point.push(rat_int(1));
            let lost = qdata.q.eval(&point).unwrap();
            assert_eq!(
                hat.volume().unwrap(),
                q.volume().unwrap() + lost,
                "additivity fails at {point:?}"
            );
        }
    }

    // cayley slice identity: slice at t equals t P + (1-t) Q
    let tri = gallery::unit_triangle();
    let seg = gallery::unit_vertical_segment();
    let q = tri.minkowski_sum(&seg).unwrap();
    let trap = gallery::trapezoid_family_ab()
        .instantiate(&[rat_int(1), rat_int(1)])
        .unwrap();
    let q2 = trap.minkowski_sum(&seg).unwrap();
    for (p, q) in [(tri, q), (trap, q2)] {
        let delta = p.cayley_sum(&q).unwrap();
        for t in [rat_int(0), rat(1, 2), rat_int(1)] {
            let slice = delta.fix_last_coord(&t).unwrap();
            let combo = combination(&p, &q, &t).unwrap();
            assert!(
                slice.same_as(&combo),
                "slice at {t} differs from the Minkowski combination"
            );
        }
    }

    // reflection involution and pairing invariance
    for rank in [2usize, 3] {
        let betas = BetaSequence::new(
            pushpull_core::weyl::type_a_simple_roots(rank),
            pushpull_core::weyl::identity_gram(rank + 1),
        )
        .unwrap();
        for _ in 0..10 {
            let x = sampler.rat_vec(rank + 1, -4, 4);
            let y = sampler.rat_vec(rank + 1, -4, 4);
            let i = sampler.index(rank);
            assert_eq!(betas.reflect(i, &betas.reflect(i, &x)), x);
            assert_eq!(
                betas.inner(&x, &y),
                betas.inner(&betas.reflect(i, &x), &betas.reflect(i, &y))
            );
        }
    }

    // a seeded chevalley-pieri annihilation for good measure
    let betas = word_to_betas_type_a(2, &[1, 2]).unwrap();
    assert!(verify_chevalley_pieri(&betas, &[rat_int(4), rat_int(1), rat_int(-2)]).unwrap());

    println!("criterion 10: seed {seed}");
    pass(10, "gorenstein symmetry, truncation volume additivity, cayley slices, reflection invariants");
}

/// `t P + (1-t) Q` as a polytope (0 <= t <= 1).
fn combination(p: &Polytope, q: &Polytope, t: &Rat) -> Result<Polytope, Error> {
    let one_minus = rat_int(1) - t;
    if t.is_zero() {
        return q.scale(&rat_int(1));
    }
    if one_minus.is_zero() {
        return p.scale(&rat_int(1));
    }
    p.scale(t)?.minkowski_sum(&q.scale(&one_minus)?)
}
