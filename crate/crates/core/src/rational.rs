//! Exact rational vector helpers used by the cone machinery.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::linalg::primitive;

pub type Rat = BigRational;

pub fn rat_from_int(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn rat_from_i64(v: &[i64]) -> Vec<Rat> {
    v.iter()
        .map(|&x| Rat::from_integer(BigInt::from(x)))
        .collect()
}

/// Pairing of an integer functional with a rational point.
pub fn dot_int_rat(a: &[BigInt], p: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), p.len());
    a.iter()
        .zip(p)
        .map(|(x, y)| Rat::from_integer(x.clone()) * y)
        .sum()
}

fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Primitive integer vector in the direction of a rational vector.
pub fn rational_to_primitive(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(&ints)
}

/// Component of `v` orthogonal to the span of `basis`, as a primitive
/// integer vector. This is the canonical representative of `v` modulo
/// the span: it does not depend on the choice of basis.
pub fn project_off_span(v: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    if basis.is_empty() {
        return primitive(v);
    }
    // Gram-Schmidt over the rationals, then one subtraction per basis vector.
    let mut ortho: Vec<Vec<Rat>> = Vec::with_capacity(basis.len());
    for b in basis {
        let mut w = rat_from_int(b);
        for o in &ortho {
            let denom = dot_rat(o, o);
            if denom.is_zero() {
                continue;
            }
            let coeff = dot_rat(&w, o) / denom;
            for (wi, oi) in w.iter_mut().zip(o) {
                *wi -= &coeff * oi;
            }
        }
        ortho.push(w);
    }
    let mut r = rat_from_int(v);
    for o in &ortho {
        let denom = dot_rat(o, o);
        if denom.is_zero() {
            continue;
        }
        let coeff = dot_rat(&r, o) / denom;
        for (ri, oi) in r.iter_mut().zip(o) {
            *ri -= &coeff * oi;
        }
    }
    rational_to_primitive(&r)
}
