//! Normal fans and the "analogous" test: two polytopes belong to the same
//! family exactly when their normal fans coincide.

use num_bigint::BigInt;

use crate::error::Error;
use crate::rat::primitive_direction;

use super::Polytope;

/// Normal fan in canonical form: sorted primitive rays plus the maximal cones
/// as sorted ray-index sets (one per vertex). The maximal cones determine the
/// whole fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFan {
    pub rays: Vec<Vec<BigInt>>,
    pub maximal_cones: Vec<Vec<usize>>,
}

impl Polytope {
    pub fn normal_fan(&self) -> Result<NormalFan, Error> {
        if !self.is_full_dimensional() {
            return Err(Error::Degenerate(
                "normal fan requires a full-dimensional polytope".into(),
            ));
        }
        let rays: Vec<Vec<BigInt>> = self
            .ineqs
            .iter()
            .map(|(n, _)| primitive_direction(n).expect("zero facet normal"))
            .collect();
        // facet list is canonical (primitive + sorted), so rays are sorted and
        // distinct; facet i corresponds to ray i
        let mut cones: Vec<Vec<usize>> = self.active.clone();
        for c in &mut cones {
            c.sort_unstable();
        }
        cones.sort();
        cones.dedup();
        Ok(NormalFan {
            rays,
            maximal_cones: cones,
        })
    }
}

impl NormalFan {
    /// Fans are equal when they have the same ray set and the same maximal
    /// cones under the ray identification.
    pub fn same_as(&self, other: &NormalFan) -> bool {
        self.rays == other.rays && self.maximal_cones == other.maximal_cones
    }

    /// Compare after permuting coordinates of `self` by `perm`:
    /// new_ray[i] = old_ray[perm[i]].
    pub fn permuted(&self, perm: &[usize]) -> NormalFan {
        let mut rays: Vec<(Vec<BigInt>, usize)> = self
            .rays
            .iter()
            .enumerate()
            .map(|(i, r)| (perm.iter().map(|&j| r[j].clone()).collect(), i))
            .collect();
        rays.sort();
        let old_to_new: Vec<usize> = {
            let mut m = vec![0; rays.len()];
            for (new_idx, (_, old_idx)) in rays.iter().enumerate() {
                m[*old_idx] = new_idx;
            }
            m
        };
        let mut cones: Vec<Vec<usize>> = self
            .maximal_cones
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.iter().map(|&i| old_to_new[i]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        cones.sort();
        NormalFan {
            rays: rays.into_iter().map(|(r, _)| r).collect(),
            maximal_cones: cones,
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::gallery::{unit_triangle, unit_vertical_segment};
    use crate::polytope::hull::convex_hull;
    use crate::rat::rat_int;
    use crate::Rat;

    fn pts(xs: &[&[i64]]) -> Vec<Vec<Rat>> {
        xs.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn square_fan() {
        let sq = convex_hull(2, pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let fan = sq.normal_fan().unwrap();
        assert_eq!(fan.rays.len(), 4);
        assert_eq!(fan.maximal_cones.len(), 4);
    }

    #[test]
    fn translation_and_dilation_preserve_the_fan() {
        let sq = convex_hull(2, pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let moved = sq.translate(&[rat_int(5), rat_int(-3)]).scale(&rat_int(3)).unwrap();
        assert!(sq.normal_fan().unwrap().same_as(&moved.normal_fan().unwrap()));
    }

    #[test]
    fn support_number_changes_preserve_the_family_fan() {
        let fam = crate::gallery::trapezoid_family();
        let reference_fan = fam.normal_fan(&fam.reference.clone()).unwrap();
        for point in [
            [rat_int(1), rat_int(1), rat_int(0), rat_int(0)],
            [rat_int(3), rat_int(2), rat_int(1), rat_int(-1)],
            [rat_int(5), rat_int(1), rat_int(-2), rat_int(4)],
        ] {
            let fan = fam.normal_fan(&point).unwrap();
            assert!(fan.same_as(&reference_fan));
        }
    }

    #[test]
    fn truncation_adds_a_ray() {
        // triangle P vs Q = P + segment: Q's fan has one extra ray
        let p = unit_triangle();
        let q = p.minkowski_sum(&unit_vertical_segment()).unwrap();
        let fan_p = p.normal_fan().unwrap();
        let fan_q = q.normal_fan().unwrap();
        assert!(!fan_p.same_as(&fan_q));
        assert_eq!(fan_p.rays.len() + 1, fan_q.rays.len());
        for r in &fan_p.rays {
            assert!(fan_q.rays.contains(r));
        }
    }
}
