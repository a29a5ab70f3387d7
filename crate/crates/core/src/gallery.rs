//! Worked example families used by the verifiers, the CLI figures and tests.

use crate::polytope::{family, ParamPolytope, Polytope};
use crate::rat::{rat_int, Rat};

/// Trapezoid family `0 <= x - x0; 0 <= y - y0 <= b; (x-x0)+(y-y0) <= a+b`
/// with parameters `(a, b, x0, y0)`, reference `(2, 1, 0, 0)`.
pub fn trapezoid_family() -> ParamPolytope {
    family(
        2,
        &["a", "b", "x0", "y0"],
        &[
            (&[-1, 0], 0, &[0, 0, -1, 0]),
            (&[0, -1], 0, &[0, 0, 0, -1]),
            (&[0, 1], 0, &[0, 1, 0, 1]),
            (&[1, 1], 0, &[1, 1, 1, 1]),
        ],
        &[2, 1, 0, 0],
    )
}

/// Translation-free trapezoid family in parameters `(a, b)`, reference `(1, 1)`.
pub fn trapezoid_family_ab() -> ParamPolytope {
    family(
        2,
        &["a", "b"],
        &[
            (&[-1, 0], 0, &[0, 0]),
            (&[0, -1], 0, &[0, 0]),
            (&[0, 1], 0, &[0, 1]),
            (&[1, 1], 0, &[1, 1]),
        ],
        &[1, 1],
    )
}

/// Unit triangle `conv{(0,0),(1,0),(0,1)}`.
pub fn unit_triangle() -> Polytope {
    Polytope::from_points(
        2,
        vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
        ],
    )
    .expect("triangle")
}

/// Vertical unit segment `[(0,0),(0,1)]` in the plane.
pub fn unit_vertical_segment() -> Polytope {
    Polytope::from_points(
        2,
        vec![vec![rat_int(0), rat_int(0)], vec![rat_int(0), rat_int(1)]],
    )
    .expect("segment")
}

/// Square family `0 <= x <= a, 0 <= y <= b`, reference `(1, 1)`.
pub fn square_family() -> ParamPolytope {
    family(
        2,
        &["a", "b"],
        &[
            (&[-1, 0], 0, &[0, 0]),
            (&[1, 0], 0, &[1, 0]),
            (&[0, -1], 0, &[0, 0]),
            (&[0, 1], 0, &[0, 1]),
        ],
        &[1, 1],
    )
}

pub fn rat_point(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| rat_int(x)).collect()
}
