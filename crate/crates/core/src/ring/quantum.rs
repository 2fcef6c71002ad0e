//! Quantum integers, factorials and Gaussian binomials in `q_i = q^d`.

use num_bigint::BigInt;

use super::RingError;
use crate::ZLaurent;

/// `[n]_d = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`; negative `n` gives `-[−n]_d`.
pub fn quantum_int(n: i64, d: u32) -> ZLaurent {
    let d = d as i32;
    let m = n.unsigned_abs() as i32;
    let terms = (0..m).map(|k| (d * (m - 1 - 2 * k), BigInt::from(1)));
    let p = ZLaurent::from_terms(terms);
    if n < 0 {
        -p
    } else {
        p
    }
}

/// `[n]_d! = [1]_d [2]_d ⋯ [n]_d` with `[0]! = 1`.
pub fn quantum_factorial(n: i64, d: u32) -> Result<ZLaurent, RingError> {
    if n < 0 {
        return Err(RingError::NegativeFactorial(n));
    }
    let mut acc = ZLaurent::one();
    for k in 1..=n {
        acc = &acc * &quantum_int(k, d);
    }
    Ok(acc)
}

/// The balanced Gaussian binomial `[m; k]_d = [m]!/([k]! [m-k]!)`, zero when `k ∉ [0, m]`.
pub fn gaussian_binomial(m: i64, k: i64, d: u32) -> Result<ZLaurent, RingError> {
    if m < 0 {
        return Err(RingError::NegativeFactorial(m));
    }
    if k < 0 || k > m {
        return Ok(ZLaurent::zero());
    }
    // q-Pascal: [m;k] = q^{-dk}[m-1;k] + q^{d(m-k)}[m-1;k-1]
    let d = d as i32;
    let mut row = vec![ZLaurent::one()];
    for r in 1..=m {
        let mut next = Vec::with_capacity(r as usize + 1);
        for j in 0..=r {
            let mut v = ZLaurent::zero();
            if j < r {
                v += &row[j as usize].shift(-d * j as i32);
            }
            if j > 0 {
                v += &row[(j - 1) as usize].shift(d * (r - j) as i32);
            }
            next.push(v);
        }
        row = next;
    }
    Ok(row[k as usize].clone())
}
