//! Univariate polynomials over the rationals: exact arithmetic, gcd and
//! squarefree parts, Sturm chains, and bisection-based real root isolation
//! with exact rational brackets.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::Error;
use crate::scalar::{big, bigratio, rational_to_f64};

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq)]
pub struct PolyQ {
    coeffs: Vec<BigRational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: vec![] }
    }

    pub fn one() -> Self {
        PolyQ::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        PolyQ::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        PolyQ::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        PolyQ::new(coeffs.iter().map(|&c| big(c)).collect())
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut v = vec![BigRational::zero(); degree + 1];
        v[degree] = c;
        PolyQ::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> PolyQ {
        if self.coeffs.len() <= 1 {
            return PolyQ::zero();
        }
        PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * big(k as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &PolyQ) -> PolyQ {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }

    pub fn scale(&self, s: &BigRational) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> PolyQ {
        if self.is_zero() {
            return PolyQ::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Euclidean division: `self = q*rhs + r` with `deg r < deg rhs`.
    pub fn divmod(&self, rhs: &PolyQ) -> (PolyQ, PolyQ) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let mut rem = self.clone();
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(rhs.coeffs.len()) + 1];
        let dl = rhs.leading();
        while !rem.is_zero() && rem.degree() >= rhs.degree() {
            let shift = rem.degree() - rhs.degree();
            let f = rem.leading() / &dl;
            q[shift] = f.clone();
            rem = rem.sub(&rhs.mul(&PolyQ::monomial(f, shift)));
        }
        (PolyQ::new(q), rem)
    }

    pub fn gcd(&self, rhs: &PolyQ) -> PolyQ {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// `p / gcd(p, p')`: same roots, each simple.
    pub fn squarefree_part(&self) -> PolyQ {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        self.divmod(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Cauchy bound: all real roots lie in `[-B, B]`.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading();
        let mut best = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let r = (c / &lead).abs();
            if r > best {
                best = r;
            }
        }
        best + BigRational::one()
    }

    /// Sturm chain `p, p', -rem(...)`, dropping the final constants' zeros.
    pub fn sturm_chain(&self) -> Vec<PolyQ> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].divmod(&chain[n - 1]);
            chain.push(r.neg());
        }
        chain
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }
}

fn sign_variations(chain: &[PolyQ], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_zero() {
            continue;
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Exact count of distinct real roots of `p` in the half-open interval `(lo, hi]`.
///
/// Inputs that are not squarefree are reduced by `gcd(p, p')` first, so the
/// count is over distinct roots.
pub fn sturm_count(p: &PolyQ, lo: &BigRational, hi: &BigRational) -> Result<usize, Error> {
    if p.is_zero() {
        return Err(Error::Polynomial("Sturm count of the zero polynomial".into()));
    }
    if lo >= hi {
        return Err(Error::Polynomial("empty interval for Sturm count".into()));
    }
    let sf = p.squarefree_part();
    if sf.eval(lo).is_zero() {
        return Err(Error::Polynomial(
            "root at the open endpoint of the Sturm interval".into(),
        ));
    }
    let chain = sf.sturm_chain();
    Ok(sign_variations(&chain, lo) - sign_variations(&chain, hi))
}

/// Distinct real roots of `p` over the whole line.
pub fn count_real_roots(p: &PolyQ) -> Result<usize, Error> {
    let b = p.squarefree_part().root_bound();
    sturm_count(p, &(-b.clone()), &b)
}

/// An isolated real root: a floating approximation plus its exact bracket.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub approx: f64,
    pub lo: BigRational,
    pub hi: BigRational,
}

/// Isolate and refine all distinct real roots to brackets of width `<= tol`.
///
/// Roots are returned in increasing order with exact rational brackets
/// `(lo, hi]` each containing exactly one root of the squarefree part.
pub fn real_roots(p: &PolyQ, tol: &BigRational) -> Result<Vec<IsolatedRoot>, Error> {
    if p.is_zero() {
        return Err(Error::Polynomial("root isolation of the zero polynomial".into()));
    }
    if !tol.is_positive() {
        return Err(Error::Polynomial("tolerance must be positive".into()));
    }
    let sf = p.squarefree_part();
    if sf.degree() == 0 {
        return Ok(vec![]);
    }
    let chain = sf.sturm_chain();
    let bound = sf.root_bound();
    let mut lo = -bound.clone();
    // nudge the left end below any root (roots in (lo, hi])
    while sf.eval(&lo).is_zero() {
        lo -= BigRational::one();
    }
    let total = sign_variations(&chain, &lo) - sign_variations(&chain, &bound);
    let mut stack = vec![(lo, bound, total)];
    let mut isolated = Vec::new();
    while let Some((a, b, count)) = stack.pop() {
        match count {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                // pick a split point that is not itself a root so every
                // sub-interval stays half-open with non-root endpoints
                let mut mid = (&a + &b) / big(2);
                let mut shift = (&b - &a) / big(4);
                while sf.eval(&mid).is_zero() {
                    mid += &shift;
                    shift /= big(2);
                }
                let left = sign_variations(&chain, &a) - sign_variations(&chain, &mid);
                let right = count - left;
                if left > 0 {
                    stack.push((a, mid.clone(), left));
                }
                if right > 0 {
                    stack.push((mid, b, right));
                }
            }
        }
    }
    let mut out: Vec<IsolatedRoot> = isolated
        .into_iter()
        .map(|(a, b)| {
            let (lo, hi) = bisect_to(&sf, a, b, tol);
            let approx = (rational_to_f64(&lo) + rational_to_f64(&hi)) / 2.0;
            IsolatedRoot { approx, lo, hi }
        })
        .collect();
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Shrink a bracket `(lo, hi]` known to contain exactly one root of a
/// squarefree `p` down to width `<= tol` by exact bisection.
fn bisect_to(p: &PolyQ, mut lo: BigRational, mut hi: BigRational, tol: &BigRational) -> (BigRational, BigRational) {
    let slo = p.eval(&lo);
    debug_assert!(!slo.is_zero());
    let mut sign_lo = slo.is_positive();
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / big(2);
        let v = p.eval(&mid);
        if v.is_zero() {
            return (mid.clone() - tol / big(2), mid);
        }
        if v.is_positive() == sign_lo {
            lo = mid;
            sign_lo = v.is_positive();
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Convenience: rational tolerance `1/10^k`.
pub fn tol_pow10(k: u32) -> BigRational {
    bigratio(1, 10i64.pow(k))
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*X")?,
                _ => write!(f, "{c}*X^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divmod_gcd_squarefree() {
        // (x-1)^2 (x+2)
        let p = PolyQ::from_i64(&[2, -3, 0, 1]);
        let g = p.gcd(&p.derivative());
        assert_eq!(g, PolyQ::from_i64(&[-1, 1])); // x - 1, monic
        let sf = p.squarefree_part();
        assert_eq!(sf, PolyQ::from_i64(&[-2, 1, 1])); // (x-1)(x+2) = x^2 + x - 2
    }

    #[test]
    fn sturm_counts() {
        // x^3 - 6x^2 + 5x - 1: three real roots in (0, 10]
        let f1 = PolyQ::from_i64(&[-1, 5, -6, 1]);
        assert_eq!(sturm_count(&f1, &big(0), &big(10)).unwrap(), 3);
        // x^3 - 3x^2 + 2x - 1: exactly one real root
        let g = PolyQ::from_i64(&[-1, 2, -3, 1]);
        assert_eq!(sturm_count(&g, &big(-10), &big(10)).unwrap(), 1);
        // x^2 + 1: none
        let h = PolyQ::from_i64(&[1, 0, 1]);
        assert_eq!(sturm_count(&h, &big(-10), &big(10)).unwrap(), 0);
    }

    #[test]
    fn sturm_reduces_repeated_roots() {
        // (x-1)^2: one distinct root
        let p = PolyQ::from_i64(&[1, -2, 1]);
        assert_eq!(count_real_roots(&p).unwrap(), 1);
    }

    #[test]
    fn roots_of_paper_cubics() {
        let tol = tol_pow10(6);
        let f1 = PolyQ::from_i64(&[-1, 5, -6, 1]);
        let r = real_roots(&f1, &tol).unwrap();
        assert_eq!(r.len(), 3);
        let expect = [0.3080, 0.6431, 5.0489];
        for (root, e) in r.iter().zip(expect) {
            assert!((root.approx - e).abs() < 5e-4, "{} vs {}", root.approx, e);
            // bracket really contains the root: sign change
            assert!(!f1.eval(&root.lo).is_positive() || !f1.eval(&root.hi).is_positive());
        }
        let f2 = PolyQ::from_i64(&[-1, 17, -10, 1]);
        let r2 = real_roots(&f2, &tol).unwrap();
        let expect2 = [0.0610, 2.0882, 7.8509];
        for (root, e) in r2.iter().zip(expect2) {
            assert!((root.approx - e).abs() < 5e-4);
        }
        // x^3 + x^2 - 1: one real root near 0.7549
        let u2 = PolyQ::from_i64(&[-1, 0, 1, 1]);
        let r3 = real_roots(&u2, &tol).unwrap();
        assert_eq!(r3.len(), 1);
        assert!((r3[0].approx - 0.7549).abs() < 5e-4);
    }

    #[test]
    fn rational_root_exact_hit() {
        // (x - 1/2)(x - 2), bisection may land exactly on 1/2 or 2
        let p = PolyQ::new(vec![big(1), bigratio(-5, 2), big(1)]);
        let r = real_roots(&p, &tol_pow10(8)).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].approx - 0.5).abs() < 1e-6);
        assert!((r[1].approx - 2.0).abs() < 1e-6);
    }
}
