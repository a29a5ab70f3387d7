//! FFLV polytopes: nonnegativity plus one inequality per Dyck path through
//! the triangular table.
//!
//! Coordinates are indexed by pairs `(i, j)` with `1 <= i < j <= n`. The
//! variable `u_k` sits at position `(i, j)` of the table via the bijection
//! `k = (j-1)(j-2)/2 + i`, so the first subdiagonal row is `u1, u3, u6, ...`,
//! the next one `u2, u5, ...`, and so on. A Dyck path from `i` to `j` starts
//! at `(i, i+1)`, ends at `(j-1, j)` and increases one index at a time.

use crate::error::Error;
use crate::polytope::{AffForm, Ineq, ParamPolytope};
use crate::rat::{rat_int, Rat};

/// 1-based variable index of table position `(i, j)`, `1 <= i < j <= n`.
pub fn table_index(i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j);
    (j - 1) * (j - 2) / 2 + i
}

/// All Dyck paths from `lambda_i` to `lambda_j`, each as the sorted list of
/// 1-based variable indices it visits.
pub fn dyck_paths(n: usize, i: usize, j: usize) -> Result<Vec<Vec<usize>>, Error> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::Invalid(format!(
            "need 1 <= i < j <= n, got i={i}, j={j}, n={n}"
        )));
    }
    let mut out = Vec::new();
    let mut path = vec![(i, i + 1)];
    fn step(
        target: (usize, usize),
        path: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let (a, b) = *path.last().unwrap();
        if (a, b) == target {
            let mut ids: Vec<usize> = path.iter().map(|&(x, y)| table_index(x, y)).collect();
            ids.sort_unstable();
            out.push(ids);
            return;
        }
        if a + 1 < b && a + 1 <= target.0 {
            path.push((a + 1, b));
            step(target, path, out);
            path.pop();
        }
        if b + 1 <= target.1 {
            path.push((a, b + 1));
            step(target, path, out);
            path.pop();
        }
    }
    step((j - 1, j), &mut path, &mut out);
    out.sort();
    Ok(out)
}

/// FFLV family for weights `lambda_1 <= ... <= lambda_n`: variables `u_k`
/// (`k = 1 .. n(n-1)/2`), parameters the consecutive differences
/// `d_k = lambda_{k+1} - lambda_k`, one inequality per Dyck path bounded by
/// `lambda_j - lambda_i = d_i + ... + d_{j-1}`.
pub fn fflv_polytope(lambdas: &[Rat]) -> Result<ParamPolytope, Error> {
    let n = lambdas.len();
    if n < 2 {
        return Err(Error::Invalid("need at least two weights".into()));
    }
    let nparams = n - 1;
    for k in 0..nparams {
        if lambdas[k + 1] < lambdas[k] {
            return Err(Error::VirtualPolytope(format!(
                "weights must be weakly increasing: {:?}",
                lambdas
            )));
        }
    }
    let dim = n * (n - 1) / 2;
    let mut ineqs = Vec::new();
    for k in 0..dim {
        let mut lo = vec![rat_int(0); dim];
        lo[k] = rat_int(-1);
        ineqs.push(Ineq {
            normal: lo,
            offset: AffForm::zero(nparams),
        });
    }
    for j in 2..=n {
        for i in 1..j {
            for path in dyck_paths(n, i, j)? {
                let mut normal = vec![rat_int(0); dim];
                for id in &path {
                    normal[id - 1] = rat_int(1);
                }
                let mut offset = AffForm::zero(nparams);
                for coeff in offset.coeffs.iter_mut().take(j - 1).skip(i - 1) {
                    *coeff = rat_int(1);
                }
                ineqs.push(Ineq { normal, offset });
            }
        }
    }
    let reference: Vec<Rat> = (0..nparams)
        .map(|k| &lambdas[k + 1] - &lambdas[k])
        .collect();
    Ok(ParamPolytope {
        dim,
        params: (1..=nparams).map(|k| format!("d{k}")).collect(),
        ineqs,
        reference,
    })
}
