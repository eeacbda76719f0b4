//! Real root isolation for integer polynomials via Sturm sequences over Q.
//!
//! Roots are bracketed by Sturm counts on dyadic rationals and bisected until
//! the bracket is narrower than `2^-ROOT_WIDTH_LOG2`. Evaluation is exact, so the
//! result does not depend on floating point rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

type QPoly = Vec<BigRational>;

/// Final bracket width, 2^-47 (about 7.1e-15).
pub const ROOT_WIDTH_LOG2: u32 = 47;

#[derive(Debug, Clone)]
pub struct IsolatedRoot {
    pub value: f64,
    /// Bound on |value - root|.
    pub error: f64,
}

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn to_q(p: &[BigInt]) -> QPoly {
    let mut q: QPoly = p.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    trim(&mut q);
    q
}

fn derivative(p: &QPoly) -> QPoly {
    let mut d: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut d);
    d
}

fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let q = &r[k] / &lead;
        for i in 0..=db {
            let t = &q * &b[i];
            r[k - db + i] -= t;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn eval(p: &QPoly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Sturm chain of `p`. The last entry is (up to scaling) gcd(p, p').
fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn variations(chain: &[QPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = eval(p, x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Result of analysing a monic integer polynomial.
pub struct RealRootAnalysis {
    pub squarefree: bool,
    pub roots: Vec<IsolatedRoot>,
}

pub fn analyse(poly: &[BigInt]) -> RealRootAnalysis {
    let p = to_q(poly);
    let chain = sturm_chain(&p);
    let squarefree = chain.last().is_some_and(|g| g.len() == 1);
    if !squarefree {
        return RealRootAnalysis { squarefree, roots: Vec::new() };
    }
    // Cauchy bound for a monic polynomial.
    let bound = poly[..poly.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default()
        + 1;
    let r = BigRational::from_integer(bound);
    let lo = -r.clone();
    let vlo = variations(&chain, &lo);
    let vhi = variations(&chain, &r);
    let mut roots = Vec::new();
    isolate(&chain, lo, r, vlo, vhi, &mut roots);
    RealRootAnalysis { squarefree, roots }
}

fn isolate(
    chain: &[QPoly],
    lo: BigRational,
    hi: BigRational,
    vlo: usize,
    vhi: usize,
    out: &mut Vec<IsolatedRoot>,
) {
    match vlo - vhi {
        0 => {}
        1 => out.push(refine(chain, lo, hi, vlo)),
        _ => {
            let mid = (&lo + &hi) / BigRational::from_integer(2.into());
            let vmid = variations(chain, &mid);
            isolate(chain, lo, mid.clone(), vlo, vmid, out);
            isolate(chain, mid, hi, vmid, vhi, out);
        }
    }
}

/// Bisect a bracket (lo, hi] holding exactly one root.
fn refine(chain: &[QPoly], mut lo: BigRational, mut hi: BigRational, vlo: usize) -> IsolatedRoot {
    let width = BigRational::new(BigInt::from(1), BigInt::from(1u64) << ROOT_WIDTH_LOG2);
    let two = BigRational::from_integer(2.into());
    if eval(&chain[0], &hi).is_zero() {
        let value = hi.to_f64().unwrap_or(f64::NAN);
        return IsolatedRoot { value, error: value.abs() * f64::EPSILON };
    }
    while &hi - &lo > width {
        let mid = (&lo + &hi) / &two;
        if eval(&chain[0], &mid).is_zero() {
            let value = mid.to_f64().unwrap_or(f64::NAN);
            return IsolatedRoot { value, error: value.abs() * f64::EPSILON };
        }
        if vlo - variations(chain, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mid = (&lo + &hi) / &two;
    let value = mid.to_f64().unwrap_or(f64::NAN);
    let half = ((&hi - &lo) / &two).to_f64().unwrap_or(f64::INFINITY);
    IsolatedRoot { value, error: half + value.abs() * f64::EPSILON }
}
