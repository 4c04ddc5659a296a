//! Closed-form histograms for A, B, C, D from cycle types.

use super::{CharPolyHistogram, CharPolyVector, Family, LieType};
use crate::error::{Error, Result};

/// All partitions of n, parts in non-increasing order.
pub(crate) fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// x^l + sign
fn binom_poly(l: usize, sign: i64) -> Vec<i64> {
    let mut p = vec![0i64; l + 1];
    p[0] = sign;
    p[l] = 1;
    p
}

/// Exact division by (x - 1), synthetic.
fn div_x_minus_1(p: &[i64]) -> Vec<i64> {
    let d = p.len() - 1;
    let mut q = vec![0i64; d];
    let mut carry = 0i64;
    for k in (1..=d).rev() {
        carry += p[k];
        q[k - 1] = carry;
    }
    debug_assert_eq!(carry + p[0], 0, "divisible by x - 1");
    q
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// prod over distinct part sizes k of (w*k)^{a_k} a_k!
fn centralizer(parts: &[usize], w: u128) -> u128 {
    let mut z = 1u128;
    let mut i = 0;
    while i < parts.len() {
        let k = parts[i];
        let mut a = 0;
        while i < parts.len() && parts[i] == k {
            a += 1;
            i += 1;
        }
        z *= (w * k as u128).pow(a as u32) * factorial(a);
    }
    z
}

fn to_u64(x: u128, t: LieType) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::ResourceExhausted(format!("class sizes of W({t}) overflow u64")))
}

/// One conjugacy class of a classical Weyl group given by cycle type:
/// positive cycles `lambda`, negative cycles `mu` (empty for type A).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClass {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    pub char_poly: CharPolyVector,
    pub size: u64,
}

/// Cycle-type classes of W(A_n), W(B_n) = W(C_n), or the D_n-restriction
/// (split D_n classes are reported merged).
pub fn classical_classes(t: LieType) -> Result<Vec<CycleClass>> {
    let n = t.rank;
    if t.is_exceptional() {
        return Err(Error::InvalidArgument(format!("{t} is not a classical type")));
    }
    if t.group_order().is_none() || n > 30 {
        return Err(Error::ResourceExhausted(format!("W({t}) is too large")));
    }
    let mut out = Vec::new();
    match t.family {
        Family::A => {
            let total = factorial(n + 1);
            for lam in partitions(n + 1) {
                let full = lam.iter().fold(vec![1i64], |acc, &l| poly_mul(&acc, &binom_poly(l, -1)));
                let size = to_u64(total / centralizer(&lam, 1), t)?;
                out.push(CycleClass { lambda: lam, mu: vec![], char_poly: CharPolyVector::new(div_x_minus_1(&full)), size });
            }
        }
        Family::B | Family::C | Family::D => {
            let total = (1u128 << n) * factorial(n);
            for k in 0..=n {
                for lam in partitions(k) {
                    for mu in partitions(n - k) {
                        if t.family == Family::D && mu.len() % 2 == 1 {
                            continue;
                        }
                        let mut poly = vec![1i64];
                        for &l in &lam {
                            poly = poly_mul(&poly, &binom_poly(l, -1));
                        }
                        for &l in &mu {
                            poly = poly_mul(&poly, &binom_poly(l, 1));
                        }
                        let size = to_u64(total / (centralizer(&lam, 2) * centralizer(&mu, 2)), t)?;
                        out.push(CycleClass { lambda: lam.clone(), mu, char_poly: CharPolyVector::new(poly), size });
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(out)
}

pub fn histogram_classical(t: LieType) -> Result<CharPolyHistogram> {
    let mut h = CharPolyHistogram::empty(t);
    for class in classical_classes(t)? {
        h.insert(class.char_poly, class.size);
    }
    h.validate()?;
    Ok(h)
}
