//! Dense complex polynomials, coefficients in ascending order.

use nalgebra::DMatrix;

use crate::C64;

pub fn eval(p: &[C64], z: C64) -> C64 {
    p.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

pub fn max_coeff(p: &[C64]) -> f64 {
    p.iter().fold(0.0, |m: f64, a| m.max(a.norm()))
}

/// Drop trailing coefficients below `rel` times the largest one.
pub fn trim(p: &[C64], rel: f64) -> Vec<C64> {
    let cut = rel * max_coeff(p);
    let mut out = p.to_vec();
    while out.len() > 1 && out.last().unwrap().norm() <= cut {
        out.pop();
    }
    if out.is_empty() {
        out.push(C64::new(0.0, 0.0));
    }
    out
}

pub fn mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    if a.is_empty() || b.is_empty() {
        return vec![C64::new(0.0, 0.0)];
    }
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn add(a: &[C64], b: &[C64]) -> Vec<C64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or_default() + b.get(i).copied().unwrap_or_default())
        .collect()
}

pub fn scale(a: &[C64], s: C64) -> Vec<C64> {
    a.iter().map(|&x| x * s).collect()
}

pub fn from_roots(roots: &[C64]) -> Vec<C64> {
    roots
        .iter()
        .fold(vec![C64::new(1.0, 0.0)], |acc, &r| mul(&acc, &[-r, C64::new(1.0, 0.0)]))
}

fn derivative(p: &[C64]) -> Vec<C64> {
    p.iter().enumerate().skip(1).map(|(k, &a)| a * k as f64).collect()
}

/// All roots with multiplicity: exact zeros at the origin are split off,
/// the rest come from companion-matrix eigenvalues polished by Newton.
pub fn roots(p: &[C64]) -> Vec<C64> {
    let p = trim(p, 0.0);
    let lead_zeros = p.iter().take_while(|a| a.norm() == 0.0).count();
    if lead_zeros == p.len() {
        return Vec::new();
    }
    let q = &p[lead_zeros..];
    let d = q.len() - 1;
    let mut out = vec![C64::new(0.0, 0.0); lead_zeros];
    if d == 0 {
        return out;
    }
    let lead = q[d];
    let comp = DMatrix::<C64>::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -q[i] / lead
        } else if i == j + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let eig = nalgebra::linalg::Schur::new(comp)
        .eigenvalues()
        .expect("complex Schur form is triangular");
    let dq = derivative(q);
    for mut r in eig.iter().copied() {
        for _ in 0..3 {
            let (f, df) = (eval(q, r), eval(&dq, r));
            if df.norm() == 0.0 {
                break;
            }
            let step = f / df;
            let cand = r - step;
            if eval(q, cand).norm() < f.norm() {
                r = cand;
            } else {
                break;
            }
        }
        out.push(r);
    }
    out
}

/// Group roots closer than `tol` into one root (their mean) with multiplicity.
pub fn cluster(roots: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![i];
        used[i] = true;
        let mut k = 0;
        while k < members.len() {
            let a = roots[members[k]];
            for j in 0..roots.len() {
                if !used[j] && (roots[j] - a).norm() < tol {
                    used[j] = true;
                    members.push(j);
                }
            }
            k += 1;
        }
        let mean = members.iter().map(|&j| roots[j]).sum::<C64>() / members.len() as f64;
        out.push((mean, members.len()));
    }
    out
}
