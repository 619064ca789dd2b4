//! Exterior algebra on the dual of a Lie algebra: sparse alternating forms,
//! the Chevalley–Eilenberg differential, interior products, and the contact,
//! symplectic, and Reeb computations built from them.
//!
//! Sign convention: `d eta (X, Y) = -eta([X, Y])`, extended to all degrees as
//! an antiderivation.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{basis_vector, LieAlgebra, Vector};
use crate::error::{Error, Result};
use crate::matrix::SMat;
use crate::scalar::Scalar;

/// Sort an index tuple, returning the permutation sign; `None` when an index
/// repeats (the term vanishes).
pub fn sort_indices(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// An alternating k-form with exact coefficients, stored sparsely on
/// strictly increasing index tuples.
#[derive(Clone, PartialEq)]
pub struct KForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl KForm {
    /// The zero form of a given degree. Degrees above the dimension are
    /// allowed and necessarily stay empty (no strictly increasing tuple fits).
    pub fn zero(dim: usize, degree: usize) -> Self {
        KForm { dim, degree, terms: BTreeMap::new() }
    }

    /// A single term `c * e*_{i1} ^ ... ^ e*_{ik}` (0-based indices, any order).
    pub fn term(dim: usize, idx: &[usize], c: Scalar) -> Self {
        let mut f = KForm::zero(dim, idx.len());
        f.add_term(idx, c);
        f
    }

    /// The basis covector `e*_i`.
    pub fn covector(dim: usize, i: usize) -> Self {
        KForm::term(dim, &[i], Scalar::one())
    }

    /// A 1-form from covector coefficients.
    pub fn one_form(coeffs: &[Scalar]) -> Self {
        let mut f = KForm::zero(coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(&[i], c.clone());
        }
        f
    }

    pub fn add_term(&mut self, idx: &[usize], c: Scalar) {
        assert_eq!(idx.len(), self.degree, "term degree mismatch");
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        if c.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_indices(idx) else { return };
        let c = if sign < 0 { -&c } else { c };
        let entry = self.terms.entry(sorted);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = &*e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    /// Coefficient on a (possibly unsorted) index tuple, with sign.
    pub fn coeff(&self, idx: &[usize]) -> Scalar {
        match sort_indices(idx) {
            None => Scalar::zero(),
            Some((sorted, sign)) => {
                let c = self.terms.get(&sorted).cloned().unwrap_or_else(Scalar::zero);
                if sign < 0 {
                    -&c
                } else {
                    c
                }
            }
        }
    }

    pub fn add(&self, rhs: &KForm) -> KForm {
        assert_eq!((self.dim, self.degree), (rhs.dim, rhs.degree), "form mismatch");
        let mut out = self.clone();
        for (idx, c) in &rhs.terms {
            out.add_term(idx, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> KForm {
        let mut out = KForm::zero(self.dim, self.degree);
        for (idx, c) in &self.terms {
            out.add_term(idx, c * s);
        }
        out
    }

    pub fn neg(&self) -> KForm {
        self.scale(&Scalar::int(-1))
    }

    /// Evaluate on degree-many vectors (alternating multilinear expansion).
    pub fn eval(&self, vectors: &[&Vector]) -> Scalar {
        assert_eq!(vectors.len(), self.degree);
        let mut total = Scalar::zero();
        for (idx, c) in &self.terms {
            // determinant of the (degree x degree) minor picked by idx
            let minor = SMat::from_fn(self.degree, self.degree, |r, col| {
                vectors[col][idx[r]].clone()
            });
            total = &total + &(c * &minor.det());
        }
        total
    }

    /// `k`-th wedge power.
    pub fn wedge_pow(&self, k: usize) -> Result<KForm> {
        if k == 0 {
            return Ok(KForm::term(self.dim, &[], Scalar::one()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = wedge(&acc, self)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (pos, i) in idx.iter().enumerate() {
                if pos > 0 {
                    write!(f, "^")?;
                }
                write!(f, "e{}*", i + 1)?;
            }
        }
        Ok(())
    }
}

/// Graded-commutative exact wedge product.
pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm> {
    if a.dim != b.dim {
        return Err(Error::Dimension("wedge of forms on different algebras".into()));
    }
    let mut out = KForm::zero(a.dim, a.degree + b.degree);
    if a.degree + b.degree > a.dim {
        return Ok(out);
    }
    for (ia, ca) in &a.terms {
        for (ib, cb) in &b.terms {
            let mut idx = ia.clone();
            idx.extend_from_slice(ib);
            out.add_term(&idx, ca * cb);
        }
    }
    Ok(out)
}

/// Chevalley–Eilenberg differential, determined on covectors by
/// `d e*_k = -sum_{i<j} c_{ij}^k e*_i ^ e*_j` and extended as an
/// antiderivation; `d` of a 0-form is zero.
pub fn ce_differential(algebra: &LieAlgebra, form: &KForm) -> Result<KForm> {
    let n = algebra.dim();
    if form.dim() != n {
        return Err(Error::Dimension("form does not live on this algebra".into()));
    }
    if form.degree() == 0 || form.degree() + 1 > n {
        return Ok(KForm::zero(n, form.degree() + 1));
    }
    // d(e*_k) as sparse 2-forms, computed once
    let mut d_cov: Vec<KForm> = vec![KForm::zero(n, 2); n];
    for (&(i, j), terms) in algebra.table() {
        for (k, c) in terms {
            d_cov[*k].add_term(&[i, j], -c);
        }
    }
    let mut out = KForm::zero(n, form.degree() + 1);
    for (idx, c) in form.terms() {
        for (pos, &ip) in idx.iter().enumerate() {
            // replace slot `pos` by d(e*_{ip}), with the antiderivation sign
            let sign = if pos % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
            for (didx, dc) in d_cov[ip].terms() {
                let mut new_idx: Vec<usize> = Vec::with_capacity(idx.len() + 1);
                new_idx.extend_from_slice(didx);
                for (q, &other) in idx.iter().enumerate() {
                    if q != pos {
                        new_idx.push(other);
                    }
                }
                // moving d(e*) to the front costs (-1)^pos, folded into `sign`
                out.add_term(&new_idx, &(c * dc) * &sign);
            }
        }
    }
    Ok(out)
}

/// Interior product `i_x`: antiderivation of degree -1.
pub fn interior_product(x: &[Scalar], form: &KForm) -> Result<KForm> {
    if x.len() != form.dim() {
        return Err(Error::Dimension("vector/form dimension mismatch".into()));
    }
    if form.degree() == 0 {
        return Ok(KForm::zero(form.dim(), 0));
    }
    let mut out = KForm::zero(form.dim(), form.degree() - 1);
    for (idx, c) in form.terms() {
        for (pos, &i) in idx.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            let sign = if pos % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
            let rest: Vec<usize> =
                idx.iter().enumerate().filter(|(q, _)| *q != pos).map(|(_, &v)| v).collect();
            out.add_term(&rest, &(&x[i] * c) * &sign);
        }
    }
    Ok(out)
}

/// Contact condition on an odd-dimensional algebra: `eta ^ (d eta)^n != 0`.
pub fn is_contact(algebra: &LieAlgebra, eta: &KForm) -> Result<bool> {
    let dim = algebra.dim();
    if dim % 2 == 0 {
        return Err(Error::Dimension("contact condition needs odd dimension".into()));
    }
    if eta.degree() != 1 {
        return Err(Error::Dimension("contact form must be a 1-form".into()));
    }
    let n = (dim - 1) / 2;
    let d_eta = ce_differential(algebra, eta)?;
    let top = wedge(eta, &d_eta.wedge_pow(n)?)?;
    Ok(!top.is_zero())
}

/// Symplectic condition on an even-dimensional algebra: closed and
/// nondegenerate (`omega^m != 0`).
pub fn is_symplectic(algebra: &LieAlgebra, omega: &KForm) -> Result<bool> {
    let dim = algebra.dim();
    if dim % 2 != 0 {
        return Err(Error::Dimension("symplectic condition needs even dimension".into()));
    }
    if omega.degree() != 2 {
        return Err(Error::Dimension("symplectic form must be a 2-form".into()));
    }
    let closed = ce_differential(algebra, omega)?.is_zero();
    let top = omega.wedge_pow(dim / 2)?;
    Ok(closed && !top.is_zero())
}

/// The Reeb vector of a contact form: the unique `xi` with `eta(xi) = 1` and
/// `i_xi d eta = 0`, solved as one exact linear system.
pub fn reeb_vector(algebra: &LieAlgebra, eta: &KForm) -> Result<Vector> {
    let n = algebra.dim();
    if eta.degree() != 1 || eta.dim() != n {
        return Err(Error::Dimension("Reeb vector needs a 1-form on the algebra".into()));
    }
    let d_eta = ce_differential(algebra, eta)?;
    // rows: d_eta(e_i, e_j) paired against unknown xi, plus the eta row
    let mut sys = SMat::zeros(n + 1, n);
    let mut rhs = vec![Scalar::zero(); n + 1];
    for j in 0..n {
        for i in 0..n {
            // row j: sum_i xi_i * d_eta(e_i, e_j) = 0
            sys[(j, i)] = d_eta.coeff(&[i, j]);
        }
    }
    for i in 0..n {
        sys[(n, i)] = eta.coeff(&[i]);
    }
    rhs[n] = Scalar::one();
    sys.solve(&rhs)
        .map_err(|_| Error::Singular("degenerate contact data: Reeb system has no unique solution".into()))
}

/// Convenience: evaluate a 1-form on a vector.
pub fn pair(eta: &KForm, x: &Vector) -> Scalar {
    eta.eval(&[x])
}

/// The top-form coefficient of `eta ^ (d eta)^n`, for golden-value tests.
pub fn contact_volume(algebra: &LieAlgebra, eta: &KForm) -> Result<Scalar> {
    let dim = algebra.dim();
    let n = (dim - 1) / 2;
    let d_eta = ce_differential(algebra, eta)?;
    let top = wedge(eta, &d_eta.wedge_pow(n)?)?;
    Ok(top.coeff(&(0..dim).collect::<Vec<_>>()))
}

/// A named direction that must fail the contact test (e.g. covectors killing
/// the derived ideal of a nilpotent algebra).
pub fn non_contact_covector(algebra: &LieAlgebra, index: usize) -> Result<bool> {
    let eta = KForm::covector(algebra.dim(), index);
    is_contact(algebra, &eta)
}

pub fn reeb_defect(algebra: &LieAlgebra, eta: &KForm, xi: &Vector) -> Result<(Scalar, KForm)> {
    let d_eta = ce_differential(algebra, eta)?;
    let pairing = pair(eta, xi);
    let contraction = interior_product(xi, &d_eta)?;
    Ok((pairing, contraction))
}

pub fn basis_vectors(dim: usize) -> Vec<Vector> {
    (0..dim).map(|i| basis_vector(dim, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn h3() -> LieAlgebra {
        LieAlgebra::new(
            "H3",
            vec!["e1".into(), "e2".into(), "e3".into()],
            vec![((1, 2), vec![(0, Scalar::one())])],
        )
        .unwrap()
    }

    #[test]
    fn wedge_basics() {
        let e1 = KForm::covector(5, 0);
        assert!(wedge(&e1, &e1).unwrap().is_zero());
        let e23 = KForm::term(5, &[1, 2], Scalar::one());
        let e45 = KForm::term(5, &[3, 4], Scalar::one());
        let w = wedge(&e23, &e45).unwrap();
        assert_eq!(w.coeff(&[1, 2, 3, 4]), Scalar::one());
        // sign normalization on construction
        let f = KForm::term(5, &[2, 1], Scalar::one());
        assert_eq!(f.coeff(&[1, 2]), Scalar::int(-1));
    }

    #[test]
    fn omega_squared_doubles_cross_terms() {
        // omega = e2*^e3* + e4*^e5* on a 5-dim space: omega^2 = 2 e2345
        let mut omega = KForm::zero(5, 2);
        omega.add_term(&[1, 2], Scalar::one());
        omega.add_term(&[3, 4], Scalar::one());
        let sq = omega.wedge_pow(2).unwrap();
        assert_eq!(sq.coeff(&[1, 2, 3, 4]), Scalar::int(2));
    }

    #[test]
    fn ce_differential_on_h3() {
        let l = h3();
        // d e1* = -e2*^e3*
        let d = ce_differential(&l, &KForm::covector(3, 0)).unwrap();
        assert_eq!(d.coeff(&[1, 2]), Scalar::int(-1));
        assert!(ce_differential(&l, &KForm::covector(3, 1)).unwrap().is_zero());
        // d is zero on 0-forms
        let c = KForm::term(3, &[], Scalar::int(7));
        assert!(ce_differential(&l, &c).unwrap().is_zero());
    }

    #[test]
    fn d_squared_vanishes() {
        let l = h3();
        for i in 0..3 {
            let d1 = ce_differential(&l, &KForm::covector(3, i)).unwrap();
            let d2 = ce_differential(&l, &d1).unwrap();
            assert!(d2.is_zero());
        }
    }

    #[test]
    fn interior_product_signs() {
        let e23 = KForm::term(5, &[1, 2], Scalar::one());
        let e2 = basis_vector(5, 1);
        let e3 = basis_vector(5, 2);
        assert_eq!(interior_product(&e2, &e23).unwrap().coeff(&[2]), Scalar::one());
        assert_eq!(interior_product(&e3, &e23).unwrap().coeff(&[1]), Scalar::int(-1));
        // i_x i_x = 0
        let once = interior_product(&e2, &e23).unwrap();
        assert!(interior_product(&e2, &once).unwrap().is_zero());
    }

    #[test]
    fn h3_contact_and_reeb() {
        let l = h3();
        let eta = KForm::covector(3, 0);
        assert!(is_contact(&l, &eta).unwrap());
        let xi = reeb_vector(&l, &eta).unwrap();
        assert_eq!(xi, basis_vector(3, 0));
        // scaling: reeb(c*eta) = (1/c) xi
        let eta2 = eta.scale(&Scalar::int(3));
        let xi2 = reeb_vector(&l, &eta2).unwrap();
        assert_eq!(xi2, crate::algebra::vec_scale(&xi, &Scalar::ratio(1, 3)));
    }

    #[test]
    fn degenerate_reeb_is_an_error() {
        let l = h3();
        // e2* is not contact on H3: d e2* = 0
        assert!(!is_contact(&l, &KForm::covector(3, 1)).unwrap());
        assert!(reeb_vector(&l, &KForm::covector(3, 1)).is_err());
    }

    #[test]
    fn even_dimension_is_an_error() {
        let l = LieAlgebra::abelian("R4", 4);
        assert!(is_contact(&l, &KForm::covector(4, 0)).is_err());
        let odd = h3();
        assert!(is_symplectic(&odd, &KForm::zero(3, 2)).is_err());
    }
}
