//! String lengths `ε_i(x)`: the largest `k` with `x ∈ f_i^k U_q^-`.

use super::engine::{Algebra, Element};
use super::linalg::Echelon;
use super::monomial::enumerate_monomials;
use crate::ZLaurent;

/// The decomposition `x = Σ_n f_i^{(n)} x_n` with `e_i' x_n = 0`.
pub fn i_string(alg: &Algebra, i: usize, x: &Element) -> Vec<(u32, Element)> {
    let d = alg.datum().d(i) as i64;
    let mut rest = x.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        let n = alg.e_prime_depth(i, &rest);
        let top = alg.e_prime_pow(i, n, &rest).expect("depth within weight");
        // e_i'^n f_i^{(n)} y = q_i^{-n(n-1)/2} y when e_i' y = 0.
        let xn = top.scale(&ZLaurent::q_pow((d * n as i64 * (n as i64 - 1) / 2) as i32));
        let lift = alg.product(&alg.f_power(i, n), &xn);
        rest = rest.sub(&lift);
        out.push((n, xn));
    }
    out.reverse();
    out
}

/// `ε_i(x)` by peeling the `i`-string; `x` must be nonzero.
pub fn epsilon(alg: &Algebra, i: usize, x: &Element) -> u32 {
    i_string(alg, i, x)
        .first()
        .map(|(n, _)| *n)
        .expect("nonzero element")
}

/// `ε_i(x)` by membership rank tests against `{f_i^{(k)} m}`.
pub fn epsilon_rank(alg: &Algebra, i: usize, x: &Element) -> u32 {
    let b = x.weight();
    for k in (1..=b.get(i)).rev() {
        let rest = b.sub_simple(i, k).expect("k ≤ n_i");
        let fk = alg.f_power(i, k);
        let mut ech = Echelon::new();
        for m in enumerate_monomials(&rest) {
            let row = alg.product(&fk, &alg.monomial(&m));
            ech.insert(row.psi());
        }
        if ech.contains(x.psi()) {
            return k;
        }
    }
    0
}
