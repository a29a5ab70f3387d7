//! SVG (2-d) and OFF (3-d) emitters for instantiated polytopes.
//!
//! All geometry is computed exactly; floating point appears only when the
//! final coordinate strings are printed.

use anyhow::{bail, Result};
use num_traits::ToPrimitive;

use pushpull_core::linalg::{dot, Mat};
use pushpull_core::polytope::Polytope;
use pushpull_core::rat::{rat_int, Rat};

fn to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// Exact angular comparison of plane vectors around the origin
/// (counterclockwise from the positive x-axis).
fn angle_cmp(a: &[Rat; 2], b: &[Rat; 2]) -> std::cmp::Ordering {
    let half = |v: &[Rat; 2]| -> u8 {
        // 0 for the upper half plane (y > 0, or y = 0 and x > 0)
        if v[1] > rat_int(0) || (v[1] == rat_int(0) && v[0] > rat_int(0)) {
            0
        } else {
            1
        }
    };
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    // same half plane: compare by cross product
    let cross = &a[0] * &b[1] - &a[1] * &b[0];
    cross.cmp(&rat_int(0)).reverse()
}

/// Vertices of a polygon in counterclockwise boundary order.
fn polygon_cycle(p: &Polytope) -> Vec<Vec<Rat>> {
    let n = rat_int(p.vertices.len() as i64);
    let centroid: Vec<Rat> = (0..2)
        .map(|i| p.vertices.iter().map(|v| &v[i]).sum::<Rat>() / &n)
        .collect();
    let mut verts = p.vertices.clone();
    verts.sort_by(|u, v| {
        let du = [&u[0] - &centroid[0], &u[1] - &centroid[1]];
        let dv = [&v[0] - &centroid[0], &v[1] - &centroid[1]];
        angle_cmp(&du, &dv)
    });
    verts
}

/// A standalone SVG drawing of a 2-d polytope.
pub fn svg_polygon(p: &Polytope, title: &str) -> Result<String> {
    if p.dim != 2 {
        bail!("svg output needs a 2-d polytope, got dimension {}", p.dim);
    }
    let cycle = polygon_cycle(p);
    let xs: Vec<f64> = cycle.iter().map(|v| to_f64(&v[0])).collect();
    let ys: Vec<f64> = cycle.iter().map(|v| to_f64(&v[1])).collect();
    let (xmin, xmax) = (
        xs.iter().cloned().fold(f64::MAX, f64::min),
        xs.iter().cloned().fold(f64::MIN, f64::max),
    );
    let (ymin, ymax) = (
        ys.iter().cloned().fold(f64::MAX, f64::min),
        ys.iter().cloned().fold(f64::MIN, f64::max),
    );
    let pad = 0.3;
    let scale = 80.0;
    let w = (xmax - xmin + 2.0 * pad) * scale;
    let h = (ymax - ymin + 2.0 * pad) * scale;
    let map = |x: f64, y: f64| {
        (
            (x - xmin + pad) * scale,
            h - (y - ymin + pad) * scale, // svg y grows downward
        )
    };
    let points: Vec<String> = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| {
            let (px, py) = map(x, y);
            format!("{px:.2},{py:.2}")
        })
        .collect();
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" \
         viewBox=\"0 0 {w:.2} {h:.2}\">\n"
    ));
    out.push_str(&format!("  <title>{title}</title>\n"));
    out.push_str(&format!(
        "  <polygon points=\"{}\" fill=\"#9ecae1\" stroke=\"#08519c\" stroke-width=\"2\"/>\n",
        points.join(" ")
    ));
    for (&x, &y) in xs.iter().zip(&ys) {
        let (px, py) = map(x, y);
        out.push_str(&format!(
            "  <circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"3\" fill=\"#08519c\"/>\n"
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Vertex indices of one facet, ordered along its boundary.
fn facet_cycle(p: &Polytope, facet: usize) -> Vec<usize> {
    let (normal, _) = &p.ineqs[facet];
    let on: Vec<usize> = (0..p.vertices.len())
        .filter(|&v| p.active[v].contains(&facet))
        .collect();
    // build a 2-d frame inside the facet plane
    let base = &p.vertices[on[0]];
    let mut u = None;
    for &v in &on[1..] {
        let d: Vec<Rat> = p.vertices[v].iter().zip(base).map(|(a, b)| a - b).collect();
        if d.iter().any(|x| x != &rat_int(0)) {
            u = Some(d);
            break;
        }
    }
    let u = u.expect("facet with a single vertex");
    // w = normal x u (3-d cross product) spans the rest of the plane
    let w = vec![
        &normal[1] * &u[2] - &normal[2] * &u[1],
        &normal[2] * &u[0] - &normal[0] * &u[2],
        &normal[0] * &u[1] - &normal[1] * &u[0],
    ];
    let gram = Mat::from_rows(vec![u.clone(), w.clone()]);
    let centroid: Vec<Rat> = (0..3)
        .map(|i| {
            on.iter().map(|&v| &p.vertices[v][i]).sum::<Rat>() / rat_int(on.len() as i64)
        })
        .collect();
    let mut cycle = on.clone();
    cycle.sort_by(|&a, &b| {
        let da: Vec<Rat> = p.vertices[a].iter().zip(&centroid).map(|(x, c)| x - c).collect();
        let db: Vec<Rat> = p.vertices[b].iter().zip(&centroid).map(|(x, c)| x - c).collect();
        let pa = gram.mat_vec(&da);
        let pb = gram.mat_vec(&db);
        angle_cmp(&[pa[0].clone(), pa[1].clone()], &[pb[0].clone(), pb[1].clone()])
    });
    // orient the cycle so it is counterclockwise seen from outside
    let a = &p.vertices[cycle[0]];
    let b = &p.vertices[cycle[1]];
    let c = &p.vertices[cycle[2]];
    let ab: Vec<Rat> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let ac: Vec<Rat> = c.iter().zip(a).map(|(x, y)| x - y).collect();
    let cross = vec![
        &ab[1] * &ac[2] - &ab[2] * &ac[1],
        &ab[2] * &ac[0] - &ab[0] * &ac[2],
        &ab[0] * &ac[1] - &ab[1] * &ac[0],
    ];
    if dot(&cross, normal) < rat_int(0) {
        cycle.reverse();
    }
    cycle
}

/// OFF file of a 3-d polytope.
pub fn off_polytope(p: &Polytope) -> Result<String> {
    if p.dim != 3 || !p.is_full_dimensional() {
        bail!("off output needs a full-dimensional 3-d polytope");
    }
    let mut out = String::from("OFF\n");
    let nfaces = p.ineqs.len();
    out.push_str(&format!("{} {} 0\n", p.vertices.len(), nfaces));
    for v in &p.vertices {
        let coords: Vec<String> = v.iter().map(|x| format!("{}", to_f64(x))).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    for f in 0..nfaces {
        let cycle = facet_cycle(p, f);
        out.push_str(&format!("{}", cycle.len()));
        for v in cycle {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    Ok(out)
}
