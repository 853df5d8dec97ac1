//! Rank over a large prime field.
//!
//! `rank_p(M) <= rank_Q(M)` for every prime not dividing a denominator, with
//! equality for all but finitely many primes. Used as a cross-check of the
//! exact rational rank, never as the answer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::linalg::RationalMatrix;
use crate::ring::Rational;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A random prime in `[2^61, 2^62)`.
pub fn random_prime<R: Rng>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

fn reduce_rational(x: &Rational, p: u64) -> Option<u64> {
    let den = reduce_int(x.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(reduce_int(x.numer(), p), inv_mod(den, p), p))
}

/// Rank of `m` modulo `p`, or `None` if `p` divides some denominator.
pub fn modular_rank(m: &RationalMatrix, p: u64) -> Option<usize> {
    let mut pivot_row: Vec<Option<usize>> = vec![None; m.rows()];
    let mut rows: Vec<Vec<(usize, u64)>> = Vec::new();
    for c in 0..m.cols() {
        let mut v: Vec<(usize, u64)> = Vec::new();
        for (i, x) in m.column(c) {
            let r = reduce_rational(x, p)?;
            if r != 0 {
                v.push((*i, r));
            }
        }
        let mut pos = 0;
        while pos < v.len() {
            let (k, val) = v[pos];
            match pivot_row[k] {
                None => pos += 1,
                Some(ri) => {
                    // pivot rows are normalized to leading coefficient 1
                    let row = &rows[ri];
                    let mut out = Vec::with_capacity(v.len() + row.len());
                    out.extend_from_slice(&v[..pos]);
                    let (mut a, mut b) = (pos, 0);
                    while a < v.len() || b < row.len() {
                        match (v.get(a), row.get(b)) {
                            (Some(&(ia, ca)), Some(&(ib, cb))) if ia == ib => {
                                let s = (ca + p - mul_mod(val, cb, p)) % p;
                                if s != 0 {
                                    out.push((ia, s));
                                }
                                a += 1;
                                b += 1;
                            }
                            (Some(&(ia, ca)), Some(&(ib, _))) if ia < ib => {
                                out.push((ia, ca));
                                a += 1;
                            }
                            (Some(&(ia, ca)), None) => {
                                out.push((ia, ca));
                                a += 1;
                            }
                            (_, Some(&(ib, cb))) => {
                                out.push((ib, (p - mul_mod(val, cb, p)) % p));
                                b += 1;
                            }
                            (None, None) => unreachable!(),
                        }
                    }
                    v = out;
                }
            }
        }
        if let Some(&(k, lead)) = v.first() {
            let inv = inv_mod(lead, p);
            for e in &mut v {
                e.1 = mul_mod(e.1, inv, p);
            }
            pivot_row[k] = Some(rows.len());
            rows.push(v);
        }
    }
    Some(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn primality() {
        assert!(is_prime(2305843009213693951)); // 2^61 - 1
        assert!(!is_prime(2305843009213693953));
        assert!(is_prime(97));
        assert!(!is_prime(1));
    }

    #[test]
    fn rank_drops_only_for_bad_primes() {
        // det = 5
        let m = RationalMatrix::from_dense(&[vec![rat(1), rat(2)], vec![rat(3), rat(11)]]);
        assert_eq!(modular_rank(&m, 7), Some(2));
        assert_eq!(modular_rank(&m, 5), Some(1));
        let half = RationalMatrix::from_dense(&[vec![Rational::new(1.into(), 2.into())]]);
        assert_eq!(modular_rank(&half, 2), None);
    }
}
