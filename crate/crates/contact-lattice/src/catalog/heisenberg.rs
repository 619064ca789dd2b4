//! The (2n+1)-dimensional Heisenberg group in upper-triangular matrix
//! coordinates: exact group law, exp/ln closed forms, integer-point closure,
//! and the left-invariant contact form evaluated by exact pullback.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::big;

/// Group element `(z, x, y)`: the matrix with first row `(1, x, z)`, middle
/// block `I_n` with last column `y^t`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergPoint {
    pub n: usize,
    pub x: Vec<BigRational>,
    pub y: Vec<BigRational>,
    pub z: BigRational,
}

/// Algebra element `(c, a, b)`: strictly upper triangular with row `a`,
/// column `b`, corner `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergAlgebraElement {
    pub n: usize,
    pub a: Vec<BigRational>,
    pub b: Vec<BigRational>,
    pub c: BigRational,
}

fn dot(u: &[BigRational], v: &[BigRational]) -> BigRational {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

impl HeisenbergPoint {
    pub fn identity(n: usize) -> Self {
        HeisenbergPoint {
            n,
            x: vec![BigRational::zero(); n],
            y: vec![BigRational::zero(); n],
            z: BigRational::zero(),
        }
    }

    pub fn new(x: Vec<BigRational>, y: Vec<BigRational>, z: BigRational) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Dimension("x and y must have equal length".into()));
        }
        Ok(HeisenbergPoint { n: x.len(), x, y, z })
    }

    pub fn is_integral(&self) -> bool {
        self.z.is_integer()
            && self.x.iter().all(BigRational::is_integer)
            && self.y.iter().all(BigRational::is_integer)
    }
}

/// Matrix-model group law: `z'' = z + z' + <x, y'>`, coordinates add.
pub fn heisenberg_mul(p: &HeisenbergPoint, q: &HeisenbergPoint) -> Result<HeisenbergPoint> {
    if p.n != q.n {
        return Err(Error::Dimension("group law needs matching n".into()));
    }
    Ok(HeisenbergPoint {
        n: p.n,
        x: p.x.iter().zip(&q.x).map(|(a, b)| a + b).collect(),
        y: p.y.iter().zip(&q.y).map(|(a, b)| a + b).collect(),
        z: &p.z + &q.z + dot(&p.x, &q.y),
    })
}

pub fn heisenberg_inverse(p: &HeisenbergPoint) -> HeisenbergPoint {
    HeisenbergPoint {
        n: p.n,
        x: p.x.iter().map(|a| -a.clone()).collect(),
        y: p.y.iter().map(|a| -a.clone()).collect(),
        z: -p.z.clone() + dot(&p.x, &p.y),
    }
}

/// Exact exponential: `(c, a, b) -> (c + <a,b>/2, a, b)`.
pub fn heisenberg_exp(v: &HeisenbergAlgebraElement) -> HeisenbergPoint {
    HeisenbergPoint {
        n: v.n,
        x: v.a.clone(),
        y: v.b.clone(),
        z: &v.c + dot(&v.a, &v.b) / big(2),
    }
}

/// Exact logarithm: `(z, x, y) -> (z - <x,y>/2, x, y)`.
pub fn heisenberg_ln(p: &HeisenbergPoint) -> HeisenbergAlgebraElement {
    HeisenbergAlgebraElement {
        n: p.n,
        a: p.x.clone(),
        b: p.y.clone(),
        c: &p.z - dot(&p.x, &p.y) / big(2),
    }
}

/// The left-invariant contact form `dz - sum x_i dy_i` evaluated at the
/// point `g` on a tangent vector written in point coordinates `(wz, wx, wy)`.
pub fn contact_form_at(
    g: &HeisenbergPoint,
    wx: &[BigRational],
    wy: &[BigRational],
    wz: &BigRational,
) -> BigRational {
    let _ = wx;
    wz - dot(&g.x, wy)
}

/// Push an algebra element to the tangent space at `g` by the derivative of
/// left translation (matrix product in the matrix model).
pub fn left_translate_tangent(
    g: &HeisenbergPoint,
    v: &HeisenbergAlgebraElement,
) -> (Vec<BigRational>, Vec<BigRational>, BigRational) {
    // g * v in matrix coordinates: rows stay, corner picks up <x, b>
    (v.a.clone(), v.b.clone(), &v.c + dot(&g.x, &v.b))
}

/// Exact left-invariance statement: the form at `g` applied to the
/// translated tangent equals the form at the identity applied to `v`.
pub fn left_invariance_defect(
    g: &HeisenbergPoint,
    v: &HeisenbergAlgebraElement,
) -> BigRational {
    let (wx, wy, wz) = left_translate_tangent(g, v);
    contact_form_at(g, &wx, &wy, &wz) - &v.c
}

/// Closure report for the integer points (and half-integer-z variants).
#[derive(Debug)]
pub struct IntegerLatticeReport {
    pub n: usize,
    pub products_checked: usize,
    pub closed_under_product: bool,
    pub closed_under_inverse: bool,
    pub half_z_closed: bool,
}

impl IntegerLatticeReport {
    pub fn passed(&self) -> bool {
        self.closed_under_product && self.closed_under_inverse && self.half_z_closed
    }
}

/// Exact closure check of the integer points under the group operations, on
/// a deterministic grid of generators; `z + z' + <x, y'>` keeps integrality,
/// and half-integer offsets confined to `z` also survive.
pub fn integer_lattice_check(n: usize) -> Result<IntegerLatticeReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("n >= 1".into()));
    }
    let vals = [-2i64, -1, 0, 1, 3];
    let mut pts = Vec::new();
    for &xv in &vals {
        for &yv in &vals {
            for &zv in &[-1i64, 0, 2] {
                let mut x = vec![BigRational::zero(); n];
                let mut y = vec![BigRational::zero(); n];
                x[0] = big(xv);
                y[n - 1] = big(yv);
                if n > 1 {
                    x[n - 1] = big(yv - xv);
                    y[0] = big(xv * yv);
                }
                pts.push(HeisenbergPoint::new(x, y, big(zv))?);
            }
        }
    }
    let mut products = 0;
    let mut closed_mul = true;
    let mut closed_inv = true;
    for p in &pts {
        if !heisenberg_inverse(p).is_integral() {
            closed_inv = false;
        }
        for q in &pts {
            products += 1;
            if !heisenberg_mul(p, q)?.is_integral() {
                closed_mul = false;
            }
        }
    }
    // half-integer z offsets: x, y integral, z in (1/2)Z
    let mut half_ok = true;
    for p in pts.iter().take(20) {
        let mut ph = p.clone();
        ph.z += crate::scalar::bigratio(1, 2);
        for q in pts.iter().take(20) {
            let mut qh = q.clone();
            qh.z += crate::scalar::bigratio(1, 2);
            let prod = heisenberg_mul(&ph, &qh)?;
            let doubled = &prod.z * big(2);
            if !(doubled.is_integer()
                && prod.x.iter().all(BigRational::is_integer)
                && prod.y.iter().all(BigRational::is_integer))
            {
                half_ok = false;
            }
        }
    }
    Ok(IntegerLatticeReport {
        n,
        products_checked: products,
        closed_under_product: closed_mul,
        closed_under_inverse: closed_inv,
        half_z_closed: half_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::bigratio;

    fn pt(n: usize, seed: i64) -> HeisenbergPoint {
        let x = (0..n).map(|i| bigratio(seed + i as i64, 3)).collect();
        let y = (0..n).map(|i| bigratio(2 * seed - i as i64, 5)).collect();
        HeisenbergPoint::new(x, y, bigratio(seed, 7)).unwrap()
    }

    #[test]
    fn group_law_z_coordinate() {
        let p = pt(2, 1);
        let q = pt(2, -4);
        let r = heisenberg_mul(&p, &q).unwrap();
        let expect = &p.z + &q.z + p.x.iter().zip(&q.y).map(|(a, b)| a * b).sum::<BigRational>();
        assert_eq!(r.z, expect);
    }

    #[test]
    fn inverses_and_identity() {
        let p = pt(3, 5);
        let e = HeisenbergPoint::identity(3);
        assert_eq!(heisenberg_mul(&p, &heisenberg_inverse(&p)).unwrap(), e);
        assert_eq!(heisenberg_mul(&heisenberg_inverse(&p), &p).unwrap(), e);
        assert_eq!(heisenberg_ln(&e).c, BigRational::zero());
    }

    #[test]
    fn exp_ln_inverse_pair() {
        let p = pt(2, 9);
        assert_eq!(heisenberg_exp(&heisenberg_ln(&p)), p);
        let v = HeisenbergAlgebraElement {
            n: 2,
            a: vec![big(1), big(0)],
            b: vec![big(0), big(1)],
            c: BigRational::zero(),
        };
        // <a, b> = 0 here, so the corner stays put
        let ep = heisenberg_exp(&v);
        assert_eq!(ep.z, BigRational::zero());
        assert_eq!(heisenberg_ln(&ep), v);
    }

    #[test]
    fn integer_points_closed() {
        for n in [1, 2] {
            let rep = integer_lattice_check(n).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn left_invariance_exact() {
        for seed in [1i64, 2, 7, -3] {
            let g = pt(2, seed);
            let v = heisenberg_ln(&pt(2, seed + 11));
            assert_eq!(left_invariance_defect(&g, &v), BigRational::zero());
        }
    }
}
