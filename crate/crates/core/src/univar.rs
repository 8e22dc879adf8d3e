//! Dense univariate polynomials over GF(p), just enough for root finding.
//!
//! Coefficients are stored low-to-high. Root finding is the usual
//! distinct-degree step (gcd with y^p - y) followed by quadratic-residue
//! splitting with a deterministic shift sequence, so repeated runs return
//! the same roots in the same (sorted) order.

use crate::field::PrimeField;

pub fn trim(mut p: Vec<u64>) -> Vec<u64> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

pub fn degree(p: &[u64]) -> usize {
    let mut d = p.len();
    while d > 0 && p[d - 1] == 0 {
        d -= 1;
    }
    d.saturating_sub(1)
}

pub fn is_zero(p: &[u64]) -> bool {
    p.iter().all(|&c| c == 0)
}

pub fn eval(field: &PrimeField, p: &[u64], x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in p.iter().rev() {
        acc = field.add(field.mul(acc, x), c);
    }
    acc
}

fn rem(field: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = degree(b);
    let lead_inv = field.inv(b[db]).expect("nonzero divisor");
    let mut r = a.to_vec();
    while !is_zero(&r) && degree(&r) >= db {
        let dr = degree(&r);
        let factor = field.mul(r[dr], lead_inv);
        for i in 0..=db {
            r[dr - db + i] = field.sub(r[dr - db + i], field.mul(factor, b[i]));
        }
    }
    trim(r)
}

pub fn gcd(field: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !is_zero(&b) {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    if !is_zero(&a) {
        let inv = field.inv(a[degree(&a)]).unwrap();
        for c in a.iter_mut() {
            *c = field.mul(*c, inv);
        }
    }
    a
}

fn mul_mod(field: &PrimeField, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(ai, bj));
        }
    }
    rem(field, &trim(out), m)
}

/// base^exp mod m.
fn pow_mod(field: &PrimeField, base: &[u64], mut exp: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = rem(field, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(field, &acc, &base, m);
        }
        base = mul_mod(field, &base, &base, m);
        exp >>= 1;
    }
    acc
}

/// All roots in GF(p) of a nonzero polynomial, sorted ascending.
pub fn roots(field: &PrimeField, p: &[u64]) -> Vec<u64> {
    let p = trim(p.to_vec());
    assert!(!is_zero(&p), "roots of the zero polynomial are undefined");
    if degree(&p) == 0 {
        return Vec::new();
    }
    // split off the x = 0 root so the power computations stay tidy
    let mut out = Vec::new();
    let mut q = p;
    while q[0] == 0 && degree(&q) > 0 {
        q.remove(0);
        if out.is_empty() {
            out.push(0);
        }
    }
    if degree(&q) >= 1 {
        // gcd with x^p - x restricted to nonzero roots: x^(p-1) - 1
        let xp = pow_mod(field, &[0, 1], field.modulus() - 1, &q);
        let mut g = xp;
        if g.is_empty() {
            g = vec![0];
        }
        if g.len() < 2 {
            g.resize(2.max(g.len()), 0);
        }
        g[0] = field.sub(g[0], 1);
        let g = gcd(field, &q, &trim(g));
        if degree(&g) >= 1 {
            split_roots(field, g, &mut out, 0);
        }
    }
    out.sort_unstable();
    out
}

/// g is monic, squarefree and splits into distinct linear factors with
/// nonzero roots. Deterministic shifts a = 0, 1, 2, ... drive the splitting.
fn split_roots(field: &PrimeField, g: Vec<u64>, out: &mut Vec<u64>, shift: u64) {
    match degree(&g) {
        0 => {}
        1 => {
            // monic: x + g[0]
            out.push(field.neg(g[0]));
        }
        _ => {
            let mut a = shift;
            loop {
                // (x + a)^((p-1)/2) - 1 mod g
                let w = pow_mod(field, &[a, 1], (field.modulus() - 1) / 2, &g);
                let mut w = if w.is_empty() { vec![0] } else { w };
                w[0] = field.sub(w[0], 1);
                let h = gcd(field, &g, &trim(w));
                let dh = degree(&h);
                if dh >= 1 && dh < degree(&g) {
                    let other = quotient_exact(field, &g, &h);
                    split_roots(field, h, out, a + 1);
                    split_roots(field, other, out, a + 1);
                    return;
                }
                a += 1;
            }
        }
    }
}

fn quotient_exact(field: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let da = degree(a);
    let db = degree(b);
    let lead_inv = field.inv(b[db]).unwrap();
    let mut r = a.to_vec();
    let mut q = vec![0u64; da - db + 1];
    for k in (0..=da - db).rev() {
        let factor = field.mul(r[db + k], lead_inv);
        q[k] = factor;
        if factor != 0 {
            for i in 0..=db {
                r[k + i] = field.sub(r[k + i], field.mul(factor, b[i]));
            }
        }
    }
    debug_assert!(is_zero(&trim(r)));
    trim(q)
}
