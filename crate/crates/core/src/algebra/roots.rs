//! Exact rational roots of rational polynomials by Hensel lifting of the
//! roots modulo a small prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::upoly;
use super::{denominator_lcm, AlgebraError, Rational, Rationals};

fn eval_mod(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Is `p mod q` squarefree of the same degree?
fn good_prime(p: &[BigInt], q: u64) -> bool {
    let pm: Vec<u64> = p.iter().map(|c| c.mod_floor(&BigInt::from(q)).try_into().unwrap()).collect();
    if *pm.last().unwrap() == 0 {
        return false;
    }
    let (mut a, mut b) = (pm.clone(), derivative_mod(&pm, q));
    trim_mod(&mut b);
    while !b.is_empty() {
        let r = rem_mod(&a, &b, q);
        a = b;
        b = r;
    }
    a.len() == 1
}

fn trim_mod(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn derivative_mod(p: &[u64], q: u64) -> Vec<u64> {
    p.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % q) * c % q).collect()
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

fn rem_mod(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let inv = pow_mod(*b.last().unwrap(), q - 2, q);
    while r.len() >= b.len() {
        let c = r.last().unwrap() * inv % q;
        let shift = r.len() - b.len();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + q - c * bj % q) % q;
        }
        trim_mod(&mut r);
    }
    r
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|i| i * i <= n).all(|i| !n.is_multiple_of(i))
}

/// All rational roots of a nonzero squarefree polynomial, ascending.
pub fn rational_roots(p: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
    let p = upoly::trimmed(&Rationals, p.to_vec());
    if p.is_empty() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    // strip the root at zero so the constant term is nonzero
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(Rational::zero());
    }
    let p = &p[zeros..];
    if p.len() == 1 {
        return Ok(out);
    }
    let l = Rational::from_integer(denominator_lcm(p.iter()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * &l).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
    let n = ints.len() - 1;
    let lc = ints[n].clone();
    // monic P(X) = lc^(n-1) p(X / lc); integer roots m give roots m / lc
    let mut monic = Vec::with_capacity(n + 1);
    let mut lpow = BigInt::one();
    for i in (0..=n).rev() {
        monic.push(&ints[i] * &lpow);
        if i < n {
            lpow *= &lc;
        }
    }
    monic.reverse();
    monic[n] = BigInt::one();
    // Cauchy bound on integer roots
    let bound = monic[..n].iter().map(|c| c.abs()).max().unwrap_or_default() + 1;
    let q = (3u64..).find(|&q| is_prime(q) && good_prime(&monic, q))
        .expect("some prime keeps a squarefree polynomial squarefree");
    let qb = BigInt::from(q);
    let dp = derivative(&monic);
    let target = &bound * 2 + 1;
    for r0 in 0..q {
        let r0 = BigInt::from(r0);
        if !eval_mod(&monic, &r0, &qb).is_zero() {
            continue;
        }
        // Newton iteration doubling the modulus
        let (mut r, mut m) = (r0, qb.clone());
        while m < target {
            let m2 = &m * &m;
            let fv = eval_mod(&monic, &r, &m2);
            let dv = eval_mod(&dp, &r, &m2);
            let inv = dv.extended_gcd(&m2).x.mod_floor(&m2);
            r = (&r - fv * inv).mod_floor(&m2);
            m = m2;
        }
        let half = &m / 2;
        let cand = if r > half { r - &m } else { r };
        let val = monic.iter().rev().fold(BigInt::zero(), |acc, c| acc * &cand + c);
        if val.is_zero() {
            out.push(Rational::new(cand, lc.clone()));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
