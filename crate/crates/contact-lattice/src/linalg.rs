//! Exact matrix algorithms over the rationals: characteristic polynomials,
//! Jordan–Chevalley decomposition, nilpotent and symbolic exponentials, and
//! a tolerance-controlled numeric layer (verified matrix exponential,
//! simultaneous eigenbases of commuting matrices).

use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{FMat, Mat, QMat};
use crate::poly::{real_roots, PolyQ};
use crate::scalar::{big, bigratio, rational_to_f64, Scalar};

/// Exact monic characteristic polynomial `det(X I - M)` by the
/// Faddeev–LeVerrier recurrence (division only by integers).
pub fn char_poly(m: &QMat) -> Result<PolyQ> {
    if !m.is_square() {
        return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut a = m.clone();
    for k in 1..=n {
        let c = -a.trace() / big(k as i64);
        coeffs[n - k] = c.clone();
        if k < n {
            let shifted = &a + &QMat::identity(n).scale(&c);
            a = m.matmul(&shifted);
        }
    }
    Ok(PolyQ::new(coeffs))
}

/// Evaluate a rational polynomial at a square rational matrix (Horner).
pub fn eval_poly_at_matrix(p: &PolyQ, m: &QMat) -> QMat {
    let n = m.rows();
    let mut acc = QMat::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = m.matmul(&acc);
        acc = &acc + &QMat::identity(n).scale(c);
    }
    acc
}

/// Additive (and, for invertible input, multiplicative) Jordan–Chevalley
/// decomposition computed entirely over the rationals.
#[derive(Clone, Debug)]
pub struct JordanChevalley {
    pub matrix: QMat,
    pub semisimple: QMat,
    pub nilpotent: QMat,
    /// `S^{-1} M`, unipotent, present when the input is invertible.
    pub unipotent: Option<QMat>,
}

/// Newton iteration on the squarefree part of the characteristic polynomial:
/// the semisimple part is a rational polynomial in `M`, no eigenvalues needed.
pub fn jordan_chevalley(m: &QMat) -> Result<JordanChevalley> {
    if !m.is_square() {
        return Err(Error::Dimension("decomposition of a non-square matrix".into()));
    }
    let n = m.rows();
    let chi = char_poly(m)?;
    let f = chi.squarefree_part();
    let fp = f.derivative();
    let mut s = m.clone();
    let mut steps = 0usize;
    while !eval_poly_at_matrix(&f, &s).is_zero() {
        let fs = eval_poly_at_matrix(&f, &s);
        let fps = eval_poly_at_matrix(&fp, &s);
        let correction = fs.matmul(&fps.inverse().map_err(|_| {
            Error::Singular("derivative of the squarefree part is singular along the iteration".into())
        })?);
        s = &s - &correction;
        steps += 1;
        if steps > n + 2 {
            return Err(Error::Numeric("Jordan-Chevalley iteration failed to terminate".into()));
        }
    }
    let nilp = m - &s;
    debug_assert!(nilp.pow(n).is_zero());
    debug_assert!(s.commutes_with(&nilp));
    let unipotent = if m.det().is_zero() {
        None
    } else {
        Some(s.inverse()?.matmul(m))
    };
    Ok(JordanChevalley { matrix: m.clone(), semisimple: s, nilpotent: nilp, unipotent })
}

/// Index of nilpotency, or an error when the matrix is not nilpotent.
pub fn nilpotency_index(m: &QMat) -> Result<usize> {
    let n = m.rows();
    let mut p = QMat::identity(n);
    for k in 0..=n {
        if p.is_zero() {
            return Ok(k);
        }
        p = p.matmul(m);
    }
    Err(Error::NotNilpotent(format!("{n}x{n} matrix has nonzero {n}-th power")))
}

/// Exact exponential of a nilpotent matrix: the finite series.
pub fn exp_nilpotent(m: &QMat) -> Result<QMat> {
    let k = nilpotency_index(m)?;
    let n = m.rows();
    let mut acc = QMat::identity(n);
    let mut pw = QMat::identity(n);
    let mut fact = BigRational::one();
    for j in 1..k.max(1) {
        pw = pw.matmul(m);
        fact *= big(j as i64);
        acc = &acc + &pw.scale(&fact.recip());
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Symbolic closed forms: sums of  c * t^k * exp(<r, x>) * {1 | cos<b,x> | sin<b,x>}
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Trig {
    Cos,
    Sin,
}

/// One closed-form term of a one- or two-parameter matrix group entry.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpTerm {
    pub coeff: BigRational,
    /// Power of the single parameter; only nonzero for one-dimensional `T`.
    pub tpow: usize,
    /// Linear exponent `<rates, x>`.
    pub exp_rates: Vec<BigRational>,
    /// Optional trigonometric factor with a linear argument.
    pub trig: Option<(Trig, Vec<BigRational>)>,
}

impl ExpTerm {
    pub fn constant(c: BigRational, tdim: usize) -> Self {
        ExpTerm { coeff: c, tpow: 0, exp_rates: vec![BigRational::zero(); tdim], trig: None }
    }

    pub fn exp(c: BigRational, rates: Vec<BigRational>) -> Self {
        ExpTerm { coeff: c, tpow: 0, exp_rates: rates, trig: None }
    }

    pub fn poly(c: BigRational, tpow: usize, tdim: usize) -> Self {
        ExpTerm { coeff: c, tpow, exp_rates: vec![BigRational::zero(); tdim], trig: None }
    }

    fn normalize(mut self) -> Option<ExpTerm> {
        if self.coeff.is_zero() {
            return None;
        }
        if let Some((kind, rates)) = self.trig.clone() {
            if rates.iter().all(Zero::is_zero) {
                match kind {
                    Trig::Cos => self.trig = None,
                    Trig::Sin => return None,
                }
            } else {
                let first = rates.iter().find(|r| !r.is_zero()).unwrap();
                if first.is_negative() {
                    let flipped: Vec<BigRational> = rates.iter().map(|r| -r.clone()).collect();
                    if kind == Trig::Sin {
                        self.coeff = -self.coeff;
                    }
                    self.trig = Some((kind, flipped));
                }
            }
        }
        Some(self)
    }

    fn signature(&self) -> String {
        format!("{}|{:?}|{:?}", self.tpow, self.exp_rates, self.trig)
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let mut v = rational_to_f64(&self.coeff);
        if self.tpow > 0 {
            v *= x[0].powi(self.tpow as i32);
        }
        let e: f64 = self.exp_rates.iter().zip(x).map(|(r, xi)| rational_to_f64(r) * xi).sum();
        v *= e.exp();
        if let Some((kind, rates)) = &self.trig {
            let arg: f64 = rates.iter().zip(x).map(|(r, xi)| rational_to_f64(r) * xi).sum();
            v *= match kind {
                Trig::Cos => arg.cos(),
                Trig::Sin => arg.sin(),
            };
        }
        v
    }
}

/// A matrix of closed-form entries: the exact shape of `db(x) = exp(beta(x))`.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub tdim: usize,
    pub n: usize,
    entries: Vec<Vec<ExpTerm>>,
}

impl ClosedForm {
    pub fn zero(n: usize, tdim: usize) -> Self {
        ClosedForm { tdim, n, entries: vec![Vec::new(); n * n] }
    }

    pub fn push(&mut self, i: usize, j: usize, term: ExpTerm) {
        assert_eq!(term.exp_rates.len(), self.tdim);
        if let Some(t) = term.normalize() {
            self.entries[i * self.n + j].push(t);
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &[ExpTerm] {
        &self.entries[i * self.n + j]
    }

    fn normalized_entry(&self, i: usize, j: usize) -> Vec<ExpTerm> {
        let mut terms: Vec<ExpTerm> = Vec::new();
        for t in &self.entries[i * self.n + j] {
            if let Some(t) = t.clone().normalize() {
                match terms.iter_mut().find(|u| u.signature() == t.signature()) {
                    Some(u) => u.coeff += &t.coeff,
                    None => terms.push(t),
                }
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort_by_key(ExpTerm::signature);
        terms
    }

    /// Structural equality of closed forms (exact, term by term).
    pub fn equivalent(&self, other: &ClosedForm) -> bool {
        if self.n != other.n || self.tdim != other.tdim {
            return false;
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if self.normalized_entry(i, j) != other.normalized_entry(i, j) {
                    return false;
                }
            }
        }
        true
    }

    pub fn eval_f64(&self, x: &[f64]) -> FMat {
        assert_eq!(x.len(), self.tdim);
        FMat::from_fn(self.n, self.n, |i, j| {
            self.entries[i * self.n + j].iter().map(|t| t.eval_f64(x)).sum()
        })
    }

    /// Exact evaluation at a rational parameter; every surviving exponential
    /// or trigonometric factor must collapse (`<r, x> = 0`).
    pub fn eval_exact_rational(&self, x: &[BigRational]) -> Result<QMat> {
        assert_eq!(x.len(), self.tdim);
        let mut out = QMat::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = BigRational::zero();
                for t in &self.entries[i * self.n + j] {
                    let e: BigRational = t.exp_rates.iter().zip(x).map(|(r, xi)| r * xi).sum();
                    if !e.is_zero() {
                        return Err(Error::NotRational(format!(
                            "entry ({i},{j}) has a live exponential at this parameter"
                        )));
                    }
                    let mut v = t.coeff.clone();
                    for _ in 0..t.tpow {
                        v *= &x[0];
                    }
                    if let Some((kind, rates)) = &t.trig {
                        let arg: BigRational = rates.iter().zip(x).map(|(r, xi)| r * xi).sum();
                        if !arg.is_zero() {
                            return Err(Error::NotRational(format!(
                                "entry ({i},{j}) has a live trigonometric factor"
                            )));
                        }
                        if *kind == Trig::Sin {
                            continue;
                        }
                    }
                    acc += v;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Exact evaluation at `t = k * pi/2` (single parameter): polynomial and
    /// exponential parts must be absent, trigonometric arguments must land on
    /// quarter turns.
    pub fn eval_exact_quarter_turn(&self, k: i64) -> Result<Mat<Scalar>> {
        if self.tdim != 1 {
            return Err(Error::Dimension("quarter-turn evaluation needs a single parameter".into()));
        }
        let mut out = Mat::<Scalar>::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Scalar::zero();
                for t in &self.entries[i * self.n + j] {
                    if t.tpow > 0 || !t.exp_rates[0].is_zero() {
                        return Err(Error::NotRational(format!(
                            "entry ({i},{j}) is not pure quarter-turn trigonometry"
                        )));
                    }
                    let factor = match &t.trig {
                        None => Scalar::one(),
                        Some((kind, rates)) => {
                            // argument = rate * k * (pi/2); exact iff rate*k is integral
                            let turns_q = &rates[0] * big(k);
                            if !turns_q.is_integer() {
                                return Err(Error::NotRational(format!(
                                    "entry ({i},{j}) trig argument is off the quarter-turn grid"
                                )));
                            }
                            let turns: i64 = turns_q.numer().try_into().map_err(|_| {
                                Error::Numeric("quarter-turn count overflows".into())
                            })?;
                            match kind {
                                Trig::Cos => Scalar::cos_quarter_turns(turns),
                                Trig::Sin => Scalar::sin_quarter_turns(turns),
                            }
                        }
                    };
                    acc = &acc + &(&Scalar::Rational(t.coeff.clone()) * &factor);
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }
}

/// Structural spectral shape of a rational semisimple matrix: diagonal
/// entries plus coordinate-aligned 2x2 rotation-scaling blocks
/// `[[a, -b], [b, a]]`.
struct SemisimpleShape {
    diag: Vec<BigRational>,
    blocks: Vec<(usize, usize, BigRational)>, // (i, j, b) with i < j
}

fn analyze_semisimple(s: &QMat) -> Result<SemisimpleShape> {
    let n = s.rows();
    let mut used = vec![false; n];
    let mut diag = vec![BigRational::zero(); n];
    let mut blocks = Vec::new();
    let shape_err = || Error::Structure {
        check: "semisimple-shape".into(),
        detail: "semisimple part is not diagonal-plus-rotation in this basis".into(),
    };
    for i in 0..n {
        if used[i] {
            continue;
        }
        let off: Vec<usize> = (0..n).filter(|&j| j != i && !s[(i, j)].is_zero()).collect();
        match off[..] {
            [] => {
                diag[i] = s[(i, i)].clone();
                used[i] = true;
            }
            [j] => {
                if used[j] {
                    return Err(shape_err());
                }
                let a = s[(i, i)].clone();
                let b = s[(j, i)].clone();
                let clean = (0..n).all(|k| {
                    k == i
                        || k == j
                        || (s[(k, i)].is_zero()
                            && s[(k, j)].is_zero()
                            && s[(i, k)].is_zero()
                            && s[(j, k)].is_zero())
                });
                if s[(j, j)] != a || s[(i, j)] != -b.clone() || b.is_zero() || !clean {
                    return Err(shape_err());
                }
                let (lo, hi, b) = if i < j { (i, j, b) } else { (j, i, -b) };
                diag[lo] = a.clone();
                diag[hi] = a;
                blocks.push((lo, hi, b));
                used[i] = true;
                used[j] = true;
            }
            _ => return Err(shape_err()),
        }
    }
    Ok(SemisimpleShape { diag, blocks })
}

/// Exact symbolic closed form of `exp(t * beta)` for a rational matrix whose
/// semisimple part is diagonal-plus-rotation in the stored basis.
pub fn symbolic_exp(beta: &QMat) -> Result<ClosedForm> {
    symbolic_exp_combination(std::slice::from_ref(beta))
}

/// Exact symbolic `exp(x_1 beta_1 + ... + x_k beta_k)` for commuting rational
/// matrices. With several parameters the generators must be jointly
/// semisimple of diagonal-plus-rotation shape; with a single parameter a
/// nilpotent part is multiplied in as an exact polynomial factor.
pub fn symbolic_exp_combination(betas: &[QMat]) -> Result<ClosedForm> {
    let k = betas.len();
    assert!(k > 0, "need at least one generator");
    let n = betas[0].rows();
    for (a, x) in betas.iter().enumerate() {
        if x.rows() != n || !x.is_square() {
            return Err(Error::Dimension("generator size mismatch".into()));
        }
        for y in betas.iter().skip(a + 1) {
            if !x.commutes_with(y) {
                return Err(Error::structure("commuting-family", "generators do not commute"));
            }
        }
    }
    let decomps: Vec<JordanChevalley> =
        betas.iter().map(jordan_chevalley).collect::<Result<_>>()?;
    if k > 1 && decomps.iter().any(|d| !d.nilpotent.is_zero()) {
        return Err(Error::structure(
            "multi-parameter-nilpotent",
            "nilpotent parts with several parameters are not supported",
        ));
    }
    let shapes: Vec<SemisimpleShape> =
        decomps.iter().map(|d| analyze_semisimple(&d.semisimple)).collect::<Result<_>>()?;
    // the rotation pairs must agree across generators
    let mut partner: Vec<Option<usize>> = vec![None; n];
    for sh in &shapes {
        for &(i, j, _) in &sh.blocks {
            match partner[i] {
                None => {
                    partner[i] = Some(j);
                    partner[j] = Some(i);
                }
                Some(p) if p == j => {}
                _ => {
                    return Err(Error::structure(
                        "joint-blocks",
                        "rotation blocks of the generators are not aligned",
                    ))
                }
            }
        }
    }
    let mut semi = ClosedForm::zero(n, k);
    let mut handled = vec![false; n];
    for i in 0..n {
        if handled[i] {
            continue;
        }
        let rates: Vec<BigRational> = shapes.iter().map(|sh| sh.diag[i].clone()).collect();
        match partner[i] {
            None => {
                semi.push(i, i, ExpTerm::exp(BigRational::one(), rates));
                handled[i] = true;
            }
            Some(j) => {
                let (lo, hi) = (i.min(j), i.max(j));
                let trig_rates: Vec<BigRational> = shapes
                    .iter()
                    .map(|sh| {
                        sh.blocks
                            .iter()
                            .find(|(a, b, _)| *a == lo && *b == hi)
                            .map(|(_, _, r)| r.clone())
                            .unwrap_or_else(BigRational::zero)
                    })
                    .collect();
                // exp(aI + bJ) = e^a [[cos b, -sin b], [sin b, cos b]] on (lo, hi)
                for rc in [lo, hi] {
                    semi.push(rc, rc, ExpTerm {
                        coeff: BigRational::one(),
                        tpow: 0,
                        exp_rates: rates.clone(),
                        trig: Some((Trig::Cos, trig_rates.clone())),
                    });
                }
                semi.push(lo, hi, ExpTerm {
                    coeff: -BigRational::one(),
                    tpow: 0,
                    exp_rates: rates.clone(),
                    trig: Some((Trig::Sin, trig_rates.clone())),
                });
                semi.push(hi, lo, ExpTerm {
                    coeff: BigRational::one(),
                    tpow: 0,
                    exp_rates: rates,
                    trig: Some((Trig::Sin, trig_rates)),
                });
                handled[lo] = true;
                handled[hi] = true;
            }
        }
    }
    if k > 1 {
        return Ok(semi);
    }
    let nilp = &decomps[0].nilpotent;
    if nilp.is_zero() {
        return Ok(semi);
    }
    // single parameter: exact polynomial factor exp(t N) = sum t^p N^p / p!
    let idx = nilpotency_index(nilp)?;
    let mut npows = vec![QMat::identity(n)];
    for p in 1..idx {
        let prev = npows[p - 1].clone();
        npows.push(prev.matmul(nilp).scale(&big(p as i64).recip()));
    }
    let mut out = ClosedForm::zero(n, 1);
    for i in 0..n {
        for l in 0..n {
            if semi.entry(i, l).is_empty() {
                continue;
            }
            for (p, npow) in npows.iter().enumerate() {
                for j in 0..n {
                    if npow[(l, j)].is_zero() {
                        continue;
                    }
                    for term in semi.entry(i, l) {
                        let mut t = term.clone();
                        t.coeff *= &npow[(l, j)];
                        t.tpow += p;
                        out.push(i, j, t);
                    }
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Verified numeric exponential
// ---------------------------------------------------------------------------

/// Floating matrix exponential by scaling-and-squaring, cross-checked against
/// an exact rational rerun with a rigorously propagated truncation bound.
/// The result matches the true exponential within `tol` per entry, relative
/// to entry magnitude.
pub fn exp_numeric(m: &FMat, tol: f64) -> Result<FMat> {
    if !(tol > 0.0) {
        return Err(Error::Numeric("tolerance must be positive".into()));
    }
    if !m.is_square() {
        return Err(Error::Dimension("exponential of a non-square matrix".into()));
    }
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            if !m[(i, j)].is_finite() {
                return Err(Error::Numeric("non-finite entry".into()));
            }
        }
    }
    let norm = m.inf_norm();
    if norm > 512.0 {
        return Err(Error::Numeric(
            "overflow: matrix norm too large for a verified exponential".into(),
        ));
    }
    let s = if norm <= 0.5 { 0 } else { (norm / 0.5).log2().ceil() as u32 };
    let scale = 2f64.powi(s as i32);
    let x = m.map(|v| v / scale);
    let mut acc = FMat::identity(n);
    let mut term = FMat::identity(n);
    for j in 1..=30u32 {
        term = term.matmul(&x).map(|v| v / f64::from(j));
        acc = &acc + &term;
        if term.inf_norm() < 1e-19 {
            break;
        }
    }
    let mut float_result = acc;
    for _ in 0..s {
        float_result = float_result.matmul(&float_result);
    }
    // exact rational rerun with a rigorous tail bound
    let mq: QMat = m.map(|&v| BigRational::from_f64(v).expect("finite entry"));
    let (exact, err_bound) = exp_rational_bounded(&mq, s, 24);
    let bound_f = rational_to_f64(&err_bound);
    if !(bound_f < tol / 4.0) {
        return Err(Error::Numeric(format!(
            "verified rerun could not certify the requested tolerance (bound {bound_f:e})"
        )));
    }
    let exact_f = exact.to_f64();
    for i in 0..n {
        for j in 0..n {
            let reference = exact_f[(i, j)];
            let diff = (float_result[(i, j)] - reference).abs();
            let denom = reference.abs().max(1.0);
            if diff / denom + bound_f > tol {
                return Err(Error::Numeric(format!(
                    "entry ({i},{j}) disagrees with the verified rerun by {diff:e}"
                )));
            }
        }
    }
    Ok(float_result)
}

/// Exact partial-sum exponential of `m / 2^s`, squared back up, with an
/// exactly-propagated truncation bound (infinity norm).
fn exp_rational_bounded(m: &QMat, s: u32, terms: usize) -> (QMat, BigRational) {
    let n = m.rows();
    let scale = big(2).pow(s as i32);
    let x = m.scale(&scale.recip());
    let mut acc = QMat::identity(n);
    let mut pw = QMat::identity(n);
    let mut fact = BigRational::one();
    for j in 1..=terms {
        pw = pw.matmul(&x);
        fact *= big(j as i64);
        acc = &acc + &pw.scale(&fact.recip());
    }
    // remainder after K terms of exp(x), ||x|| <= 1/2: bounded by
    // 2 * ||x||^{K+1} / (K+1)!
    let xnorm = inf_norm_rational(&x);
    let mut xpow = BigRational::one();
    for _ in 0..=terms {
        xpow *= &xnorm;
    }
    let next_fact = &fact * &big((terms + 1) as i64);
    let mut err = big(2) * xpow / next_fact;
    let mut current = acc;
    for _ in 0..s {
        // ||E^2 - P^2|| <= err * (2||P|| + err)
        let pn = inf_norm_rational(&current);
        err = &err * &(&(&pn * &big(2)) + &err);
        current = current.matmul(&current);
    }
    (current, err)
}

fn inf_norm_rational(m: &QMat) -> BigRational {
    let mut best = BigRational::zero();
    for i in 0..m.rows() {
        let mut row = BigRational::zero();
        for j in 0..m.cols() {
            row += m[(i, j)].abs();
        }
        if row > best {
            best = row;
        }
    }
    best
}

/// Exact commutation test.
pub fn commute(a: &QMat, b: &QMat) -> bool {
    a.commutes_with(b)
}

// ---------------------------------------------------------------------------
// Simultaneous eigenbasis of commuting rational matrices
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum SpectralBlock {
    Real(f64),
    /// `modulus * rotation(angle)` on an invariant plane.
    RotScale { modulus: f64, angle: f64 },
}

#[derive(Clone, Debug)]
pub struct SimultaneousEigen {
    pub psi: FMat,
    pub psi_inv: FMat,
    pub blocks_a: Vec<SpectralBlock>,
    pub blocks_b: Vec<SpectralBlock>,
    pub residual: f64,
}

/// Numeric simultaneous block-diagonalization of two exactly-commuting
/// rational matrices, each semisimple, with either all-distinct real
/// eigenvalues or (for 3x3) one real eigenvalue and a complex pair.
///
/// Eigenvalues come from exact Sturm isolation refined far past `tol`; only
/// the eigenvector extraction is floating point. The reported residual
/// `max ||Psi^-1 M Psi - blockdiag||` must come out below `tol`.
pub fn simultaneous_eigenbasis(a: &QMat, b: &QMat, tol: f64) -> Result<SimultaneousEigen> {
    let n = a.rows();
    if !a.is_square() || !b.is_square() || b.rows() != n {
        return Err(Error::Dimension("commuting pair must be square of equal size".into()));
    }
    if !commute(a, b) {
        return Err(Error::structure("commuting", "matrices do not commute"));
    }
    // scalar matrices carry no basis information: lean on the other factor
    if is_scalar_matrix(a) {
        if is_scalar_matrix(b) {
            let psi = FMat::identity(n);
            let lam_a = rational_to_f64(&a[(0, 0)]);
            let lam_b = rational_to_f64(&b[(0, 0)]);
            return Ok(SimultaneousEigen {
                psi: psi.clone(),
                psi_inv: psi,
                blocks_a: (0..n).map(|_| SpectralBlock::Real(lam_a)).collect(),
                blocks_b: (0..n).map(|_| SpectralBlock::Real(lam_b)).collect(),
                residual: 0.0,
            });
        }
        let sw = simultaneous_eigenbasis(b, a, tol)?;
        return Ok(SimultaneousEigen {
            psi: sw.psi,
            psi_inv: sw.psi_inv,
            blocks_a: sw.blocks_b,
            blocks_b: sw.blocks_a,
            residual: sw.residual,
        });
    }
    let chi = char_poly(a)?;
    if !chi.is_squarefree() {
        return Err(Error::structure(
            "semisimple",
            "primary matrix has repeated eigenvalues (defective within tolerance)",
        ));
    }
    let real_count = crate::poly::count_real_roots(&chi)?;
    let tol_rat = bigratio(1, 10i64.pow(14));
    let roots = real_roots(&chi, &tol_rat)?;
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut pattern: Vec<bool> = Vec::new(); // true marks the start of a 2x2 block
    if real_count == n {
        for r in &roots {
            columns.push(approx_eigenvector(&a.to_f64(), r.approx)?);
            pattern.push(false);
        }
    } else if n == 3 && real_count == 1 {
        let rho = roots[0].approx;
        columns.push(approx_eigenvector(&a.to_f64(), rho)?);
        pattern.push(false);
        // quadratic cofactor chi/(x - rho) = x^2 + px + q, numerically
        let c = chi.to_f64_coeffs();
        let p = c[2] + rho;
        let q = c[1] + rho * p;
        let re = -p / 2.0;
        let im_sq = q - re * re;
        if im_sq <= 0.0 {
            return Err(Error::structure("spectral-shape", "complex pair collapsed"));
        }
        let im = im_sq.sqrt();
        let af = a.to_f64();
        // invariant plane = kernel of a^2 + p a + q I
        let quad = &(&af.matmul(&af) + &af.map(|v| v * p)) + &FMat::identity(3).map(|v| v * q);
        let plane = approx_kernel(&quad, 2)?;
        let u = plane[0].clone();
        // w = (re*u - a u)/im makes a act as [[re, im], [-im, re]] on (u, w)
        let au = af.matvec(&u);
        let w: Vec<f64> = u.iter().zip(&au).map(|(ui, aui)| (re * ui - aui) / im).collect();
        columns.push(u);
        columns.push(w);
        pattern.push(true);
        pattern.push(false);
    } else {
        return Err(Error::structure(
            "spectral-shape",
            format!("unsupported spectral shape: {real_count} real roots in dimension {n}"),
        ));
    }
    let mut psi = FMat::from_cols(n, &columns);
    let af = a.to_f64();
    let bf = b.to_f64();
    // orient 2x2 blocks so the primary matrix rotates by a positive angle
    let psi_inv = invert_f64(&psi)?;
    let da = psi_inv.matmul(&af.matmul(&psi));
    for j in 0..n {
        if pattern[j] && da[(j + 1, j)] < 0.0 {
            let col: Vec<f64> = (0..n).map(|i| -psi[(i, j + 1)]).collect();
            psi.set_col(j + 1, &col);
        }
    }
    let psi_inv = invert_f64(&psi)?;
    let da = psi_inv.matmul(&af.matmul(&psi));
    let db = psi_inv.matmul(&bf.matmul(&psi));
    let (blocks_a, res_a) = read_blocks(&da, &pattern);
    let (blocks_b, res_b) = read_blocks(&db, &pattern);
    let residual = res_a.max(res_b);
    if residual > tol {
        return Err(Error::Numeric(format!(
            "simultaneous diagonalization residual {residual:e} exceeds tolerance {tol:e}"
        )));
    }
    Ok(SimultaneousEigen { psi, psi_inv, blocks_a, blocks_b, residual })
}

fn is_scalar_matrix(m: &QMat) -> bool {
    let n = m.rows();
    let lam = m[(0, 0)].clone();
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j { lam.clone() } else { BigRational::zero() };
            if m[(i, j)] != expect {
                return false;
            }
        }
    }
    true
}

fn read_blocks(d: &FMat, pattern: &[bool]) -> (Vec<SpectralBlock>, f64) {
    let n = d.rows();
    let mut blocks = Vec::new();
    let mut residual = 0.0f64;
    let mut in_block = vec![false; n];
    let mut j = 0;
    while j < n {
        if pattern[j] {
            let (a, c) = (d[(j, j)], d[(j + 1, j)]);
            blocks.push(SpectralBlock::RotScale {
                modulus: (a * a + c * c).sqrt(),
                angle: c.atan2(a),
            });
            residual = residual.max((d[(j + 1, j + 1)] - a).abs());
            residual = residual.max((d[(j, j + 1)] + c).abs());
            in_block[j] = true;
            in_block[j + 1] = true;
            j += 2;
        } else {
            blocks.push(SpectralBlock::Real(d[(j, j)]));
            j += 1;
        }
    }
    // everything off the declared blocks must vanish
    let mut col = 0;
    while col < n {
        let width = if pattern[col] { 2 } else { 1 };
        for r in 0..n {
            for c in col..col + width {
                let inside = r >= col && r < col + width;
                if !inside {
                    residual = residual.max(d[(r, c)].abs());
                }
            }
        }
        col += width;
    }
    (blocks, residual)
}

/// Kernel direction of `m - lambda I` for an isolated approximate eigenvalue.
fn approx_eigenvector(m: &FMat, lambda: f64) -> Result<Vec<f64>> {
    let n = m.rows();
    let shifted = FMat::from_fn(n, n, |i, j| m[(i, j)] - if i == j { lambda } else { 0.0 });
    Ok(approx_kernel(&shifted, 1)?.into_iter().next().unwrap())
}

/// The `count` weakest directions of a nearly rank-deficient square matrix:
/// full-pivot elimination, then back-substitution with the weakest pivots
/// freed.
fn approx_kernel(m: &FMat, count: usize) -> Result<Vec<Vec<f64>>> {
    let n = m.rows();
    let mut a = m.clone();
    let mut pivots: Vec<(usize, usize, f64)> = Vec::new();
    let mut used_rows = vec![false; n];
    let mut used_cols = vec![false; n];
    for _ in 0..n {
        let mut best = (usize::MAX, usize::MAX, -1.0f64);
        for i in (0..n).filter(|&i| !used_rows[i]) {
            for j in (0..n).filter(|&j| !used_cols[j]) {
                if a[(i, j)].abs() > best.2 {
                    best = (i, j, a[(i, j)].abs());
                }
            }
        }
        let (pi, pj, pv) = best;
        if pv <= 0.0 {
            break;
        }
        used_rows[pi] = true;
        used_cols[pj] = true;
        pivots.push((pi, pj, pv));
        for i in (0..n).filter(|&i| !used_rows[i]) {
            if a[(i, pj)] != 0.0 {
                let f = a[(i, pj)] / a[(pi, pj)];
                for j in 0..n {
                    a[(i, j)] -= f * a[(pi, j)];
                }
            }
        }
    }
    if pivots.len() + count < n {
        return Err(Error::Numeric("kernel larger than expected".into()));
    }
    pivots.sort_by(|x, y| x.2.partial_cmp(&y.2).unwrap());
    let freed: Vec<usize> = pivots.iter().take(count).map(|&(_, c, _)| c).collect();
    let strong: Vec<(usize, usize, f64)> = pivots.iter().skip(count).cloned().collect();
    let mut out = Vec::new();
    for &free_col in &freed {
        let mut v = vec![0.0; n];
        v[free_col] = 1.0;
        // rows were fully reduced below each pivot only; solve strongest-first
        let mut rows = strong.clone();
        rows.sort_by(|x, y| y.2.partial_cmp(&x.2).unwrap());
        for _ in 0..strong.len() {
            for &(ri, ci, _) in &rows {
                let mut rhs = 0.0;
                for j in 0..n {
                    if j != ci {
                        rhs -= a[(ri, j)] * v[j];
                    }
                }
                v[ci] = rhs / a[(ri, ci)];
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Numeric("degenerate kernel direction".into()));
        }
        out.push(v.iter().map(|x| x / norm).collect());
    }
    Ok(out)
}

fn invert_f64(m: &FMat) -> Result<FMat> {
    m.inverse().map_err(|_| Error::Singular("numerically singular basis".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::QMat;
    use crate::poly::sturm_count;

    fn t1() -> QMat {
        QMat::from_i64(&[&[0, 0, 1], &[1, 0, -5], &[0, 1, 6]])
    }

    fn t2() -> QMat {
        QMat::from_i64(&[&[-4, -4, -3], &[21, 16, 11], &[-4, -3, -2]])
    }

    fn u1() -> QMat {
        QMat::from_i64(&[&[0, 0, 1], &[1, 0, -2], &[0, 1, 3]])
    }

    fn u2() -> QMat {
        QMat::from_i64(&[&[0, 1, 1], &[-2, -2, -1], &[1, 1, 1]])
    }

    #[test]
    fn char_poly_golden() {
        assert_eq!(char_poly(&t1()).unwrap(), PolyQ::from_i64(&[-1, 5, -6, 1]));
        assert_eq!(char_poly(&t2()).unwrap(), PolyQ::from_i64(&[-1, 17, -10, 1]));
        // (X-1)^3 for the identity
        assert_eq!(char_poly(&QMat::identity(3)).unwrap(), PolyQ::from_i64(&[-1, 3, -3, 1]));
    }

    #[test]
    fn cayley_hamilton_on_goldens() {
        for m in [t1(), t2(), u1(), u2()] {
            let chi = char_poly(&m).unwrap();
            assert!(eval_poly_at_matrix(&chi, &m).is_zero());
        }
    }

    #[test]
    fn jordan_chevalley_cases() {
        let n = QMat::from_i64(&[&[0, 1, 2], &[0, 0, 3], &[0, 0, 0]]);
        let jc = jordan_chevalley(&n).unwrap();
        assert!(jc.semisimple.is_zero());
        assert_eq!(jc.nilpotent, n);

        let m = QMat::from_i64(&[&[0, 1], &[1, 0]]);
        let jc = jordan_chevalley(&m).unwrap();
        assert_eq!(jc.semisimple, m);
        assert!(jc.nilpotent.is_zero());

        let mixed = QMat::from_i64(&[&[1, 1], &[0, 1]]);
        let jc = jordan_chevalley(&mixed).unwrap();
        assert_eq!(jc.semisimple, QMat::identity(2));
        assert!(jc.semisimple.commutes_with(&jc.nilpotent));
        assert_eq!(jc.unipotent.unwrap(), mixed); // S = I, so U = M
    }

    #[test]
    fn exp_nilpotent_golden() {
        let n = QMat::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(exp_nilpotent(&n).unwrap(), QMat::from_i64(&[&[1, 1], &[0, 1]]));
        assert!(exp_nilpotent(&QMat::identity(2)).is_err());
        assert_eq!(exp_nilpotent(&QMat::zeros(3, 3)).unwrap(), QMat::identity(3));
    }

    #[test]
    fn exp_numeric_identity_and_commuting() {
        let z = FMat::zeros(3, 3);
        let e = exp_numeric(&z, 1e-12).unwrap();
        assert!(e.max_abs_diff(&FMat::identity(3)) < 1e-12);
        let a = QMat::from_i64(&[&[1, 2], &[0, 1]]).to_f64();
        let b = QMat::from_i64(&[&[2, 4], &[0, 2]]).to_f64();
        let eab = exp_numeric(&(&a + &b), 1e-10).unwrap();
        let ea = exp_numeric(&a, 1e-10).unwrap();
        let eb = exp_numeric(&b, 1e-10).unwrap();
        assert!(eab.max_abs_diff(&ea.matmul(&eb)) < 1e-8);
    }

    #[test]
    fn simultaneous_all_real() {
        let s = simultaneous_eigenbasis(&t1(), &t2(), 1e-8).unwrap();
        let da: Vec<f64> = s
            .blocks_a
            .iter()
            .map(|b| match b {
                SpectralBlock::Real(x) => *x,
                SpectralBlock::RotScale { .. } => panic!("expected real blocks"),
            })
            .collect();
        let mut sorted = da.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (x, e) in sorted.iter().zip([0.3080, 0.6431, 5.0489]) {
            assert!((x - e).abs() < 5e-4, "{x} vs {e}");
        }
        assert!(s.residual < 1e-8);
    }

    #[test]
    fn simultaneous_complex_pair() {
        let s = simultaneous_eigenbasis(&u1(), &u2(), 1e-8).unwrap();
        assert_eq!(s.blocks_a.len(), 2);
        match (&s.blocks_a[0], &s.blocks_a[1]) {
            (SpectralBlock::Real(r), SpectralBlock::RotScale { modulus, angle }) => {
                assert!((r - 2.3247).abs() < 5e-4);
                assert!((modulus - 1.0 / 2.3247f64.sqrt()).abs() < 1e-3);
                assert!((angle - 1.0300).abs() < 5e-4, "angle {angle}");
            }
            _ => panic!("unexpected block layout"),
        }
        match &s.blocks_b[1] {
            SpectralBlock::RotScale { angle, .. } => {
                // orientation fixed by the first matrix: the second rotates back
                assert!((angle + 2.4378).abs() < 5e-4, "angle {angle}");
            }
            _ => panic!("expected a rotation block"),
        }
        assert!(s.residual < 1e-8);
    }

    #[test]
    fn identity_pair_is_trivial() {
        let i = QMat::identity(3);
        let s = simultaneous_eigenbasis(&i, &i, 1e-10).unwrap();
        assert_eq!(s.residual, 0.0);
        assert!(matches!(s.blocks_a[0], SpectralBlock::Real(x) if (x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn non_commuting_rejected() {
        let a = QMat::from_i64(&[&[0, 1], &[0, 0]]);
        let b = QMat::from_i64(&[&[0, 0], &[1, 0]]);
        assert!(simultaneous_eigenbasis(&a, &b, 1e-8).is_err());
    }

    #[test]
    fn symbolic_exp_diagonal_and_rotation() {
        let d = QMat::from_i64(&[&[-1, 0], &[0, 1]]);
        let cf = symbolic_exp(&d).unwrap();
        let at = cf.eval_f64(&[0.5]);
        assert!((at[(0, 0)] - (-0.5f64).exp()).abs() < 1e-14);
        assert!((at[(1, 1)] - 0.5f64.exp()).abs() < 1e-14);

        let j = QMat::from_i64(&[&[0, -1], &[1, 0]]);
        let cf = symbolic_exp(&j).unwrap();
        let at = cf.eval_f64(&[0.7]);
        assert!((at[(0, 0)] - 0.7f64.cos()).abs() < 1e-14);
        assert!((at[(0, 1)] + 0.7f64.sin()).abs() < 1e-14);
        assert!((at[(1, 0)] - 0.7f64.sin()).abs() < 1e-14);
        // exact quarter turn: t = pi/2
        let q = cf.eval_exact_quarter_turn(1).unwrap();
        assert_eq!(q[(0, 0)], Scalar::zero());
        assert_eq!(q[(0, 1)], Scalar::int(-1));
        assert_eq!(q[(1, 0)], Scalar::int(1));
    }

    #[test]
    fn symbolic_exp_with_nilpotent_part() {
        let m = QMat::from_i64(&[&[0, 1], &[0, 0]]);
        let cf = symbolic_exp(&m).unwrap();
        let exact = cf.eval_exact_rational(&[bigratio(3, 2)]).unwrap();
        assert_eq!(exact[(0, 1)], bigratio(3, 2));
        assert_eq!(exact[(0, 0)], big(1));
    }

    #[test]
    fn sturm_root_counts_match() {
        let c1 = char_poly(&t1()).unwrap();
        assert_eq!(crate::poly::count_real_roots(&c1).unwrap(), 3);
        let cu = char_poly(&u1()).unwrap();
        assert_eq!(crate::poly::count_real_roots(&cu).unwrap(), 1);
        assert_eq!(sturm_count(&c1, &big(0), &big(10)).unwrap(), 3);
    }
}
