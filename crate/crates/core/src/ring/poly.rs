//! Dense univariate polynomials over Z: content, pseudo-remainders and gcd.
//!
//! Coefficient vectors are ascending (`p[k]` is the coefficient of `q^k`) and
//! carry no trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type DensePoly = Vec<BigInt>;

pub fn trim(p: &mut DensePoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &DensePoly) -> Option<usize> {
    (!p.is_empty()).then(|| p.len() - 1)
}

pub fn content(p: &DensePoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub fn scale_div(p: &DensePoly, c: &BigInt) -> DensePoly {
    p.iter().map(|x| x / c).collect()
}

pub fn primitive_part(p: &DensePoly) -> DensePoly {
    let c = content(p);
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    scale_div(p, &c)
}

pub fn mul(a: &DensePoly, b: &DensePoly) -> DensePoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &DensePoly, b: &DensePoly) -> DensePoly {
    let n = a.len().max(b.len());
    let mut out: DensePoly = (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_default();
            let y = b.get(k).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
pub fn pseudo_rem(a: &DensePoly, b: &DensePoly) -> DensePoly {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (k, c) in b.iter().enumerate() {
            r[k + shift] -= &lr * c;
        }
        trim(&mut r);
    }
    r
}

/// Exact quotient when `b | a` over Z, otherwise `None`.
pub fn div_exact(a: &DensePoly, b: &DensePoly) -> Option<DensePoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (qc, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, c) in b.iter().enumerate() {
            r[k + j] -= &qc * c;
        }
        q[k] = qc;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Gcd in Z[q], normalized to positive leading coefficient.
pub fn gcd(a: &DensePoly, b: &DensePoly) -> DensePoly {
    if a.is_empty() {
        return normalize_sign(b.clone());
    }
    if b.is_empty() {
        return normalize_sign(a.clone());
    }
    let c = content(a).gcd(&content(b));
    let (mut x, mut y) = (primitive_part(a), primitive_part(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive_part(&r) };
    }
    let g: DensePoly = x.iter().map(|v| v * &c).collect();
    normalize_sign(g)
}

fn normalize_sign(mut p: DensePoly) -> DensePoly {
    if p.last().is_some_and(|c| c.is_negative()) {
        for c in p.iter_mut() {
            *c = -c.clone();
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> DensePoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[1, 0, -1]); // 1 - q^2
        let b = p(&[1, -1]); // 1 - q
        let c = p(&[2, 3, 1]);
        assert_eq!(gcd(&mul(&a, &c), &mul(&b, &c)), mul(&p(&[-1, 1]), &c));
        assert_eq!(gcd(&p(&[4, 6]), &p(&[6, 9])), p(&[2, 3]));
    }

    #[test]
    fn exact_division() {
        let a = mul(&p(&[1, 2, 3]), &p(&[-5, 0, 1]));
        assert_eq!(div_exact(&a, &p(&[-5, 0, 1])).unwrap(), p(&[1, 2, 3]));
        assert!(div_exact(&a, &p(&[7, 1])).is_none());
    }
}
