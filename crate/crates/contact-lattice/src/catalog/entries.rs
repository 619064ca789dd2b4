//! Compiled-in catalog data: bracket tables, contact forms, semidirect
//! decompositions with their derivation matrices and closed-form
//! one-parameter groups, and expected invariants for every entry.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{unit_one_form, CatalogEntry, CentralExtension, EntrySplit, ExpectedFlags, LatticeStatus};
use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::linalg::{ClosedForm, ExpTerm, Trig};
use crate::matrix::QMat;
use crate::scalar::{big, bigratio, Scalar};

/// Optional parameters for the parameterized families, with the defaults
/// used by the golden tests: `D4: p=2`, `D10: p=1`, `D11: eps=+1`,
/// `SY: a1=a2=1`, `H/HR: n=1`.
#[derive(Clone, Debug)]
pub struct Params {
    pub p: Option<BigRational>,
    pub eps: Option<i64>,
    pub a1: Option<BigRational>,
    pub a2: Option<BigRational>,
    pub n: Option<usize>,
}

impl Default for Params {
    fn default() -> Self {
        Params { p: None, eps: None, a1: None, a2: None, n: None }
    }
}

impl Params {
    pub fn with_p(p: BigRational) -> Self {
        Params { p: Some(p), ..Default::default() }
    }

    pub fn with_n(n: usize) -> Self {
        Params { n: Some(n), ..Default::default() }
    }
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

type Brackets = Vec<((usize, usize), Vec<(usize, Scalar)>)>;

fn alg(name: &str, dim: usize, brackets: Brackets) -> crate::algebra::LieAlgebra {
    crate::algebra::LieAlgebra::new(name, labels(dim), brackets).expect("catalog table is well-formed")
}

fn q(n: i64, d: i64) -> BigRational {
    bigratio(n, d)
}

fn s(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn sq(v: &BigRational) -> Scalar {
    Scalar::Rational(v.clone())
}

/// Diagonal closed form `diag(e^{r_i . x})` for rates given per generator.
fn db_diag_exp(rates: &[Vec<BigRational>]) -> ClosedForm {
    let n = rates.len();
    let tdim = rates[0].len();
    let mut cf = ClosedForm::zero(n, tdim);
    for (i, r) in rates.iter().enumerate() {
        cf.push(i, i, ExpTerm::exp(BigRational::one(), r.clone()));
    }
    cf
}

fn term_poly(c: BigRational, tpow: usize) -> ExpTerm {
    ExpTerm::poly(c, tpow, 1)
}

fn term_exp_poly(c: BigRational, tpow: usize, rate: BigRational) -> ExpTerm {
    ExpTerm { coeff: c, tpow, exp_rates: vec![rate], trig: None }
}

fn term_trig(c: BigRational, exp_rates: Vec<BigRational>, kind: Trig, trig_rates: Vec<BigRational>) -> ExpTerm {
    ExpTerm { coeff: c, tpow: 0, exp_rates, trig: Some((kind, trig_rates)) }
}

// ---------------------------------------------------------------------------
// The twelve five-dimensional unimodular solvable contact entries
// ---------------------------------------------------------------------------

fn d1() -> CatalogEntry {
    let a = alg(
        "D1",
        5,
        vec![((1, 3), vec![(0, s(1, 1))]), ((2, 4), vec![(0, s(1, 1))])],
    );
    let base = alg("D1-base", 4, vec![]);
    let mut omega = KForm::zero(4, 2);
    omega.add_term(&[0, 2], Scalar::one());
    omega.add_term(&[1, 3], Scalar::one());
    CatalogEntry {
        key: "D1".into(),
        name: "D1".into(),
        algebra: a,
        contact: Some(unit_one_form(5, &[1])),
        symplectic: None,
        nilradical: vec![0, 1, 2, 3, 4],
        split: Some(EntrySplit {
            n_indices: vec![0, 1, 2, 3, 4],
            t_indices: vec![],
            beta: vec![],
            db: ClosedForm::zero(5, 0),
        }),
        central: Some(CentralExtension {
            center_index: 0,
            base_indices: vec![1, 2, 3, 4],
            base,
            omega,
            base_split: None,
        }),
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: true,
            lattice: LatticeStatus::Exists,
        },
        notes: vec![],
        params: vec![],
    }
}

fn d2() -> CatalogEntry {
    let a = alg(
        "D2",
        5,
        vec![
            ((2, 3), vec![(0, s(1, 1))]),
            ((1, 4), vec![(0, s(1, 1))]),
            ((2, 4), vec![(1, s(1, 1))]),
        ],
    );
    // inner decomposition on the ordered basis (e1, e3, e4, e2)
    let beta = QMat::from_i64(&[&[0, 0, 0, -1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, -1, 0, 0]]);
    let mut db = ClosedForm::zero(4, 1);
    for i in 0..4 {
        db.push(i, i, term_poly(BigRational::one(), 0));
    }
    db.push(0, 1, term_poly(q(1, 2), 2));
    db.push(0, 3, term_poly(q(-1, 1), 1));
    db.push(3, 1, term_poly(q(-1, 1), 1));
    let base = alg("D2-base", 4, vec![((1, 3), vec![(0, s(1, 1))])]);
    let mut omega = KForm::zero(4, 2);
    omega.add_term(&[1, 2], Scalar::one());
    omega.add_term(&[0, 3], Scalar::one());
    CatalogEntry {
        key: "D2".into(),
        name: "D2".into(),
        algebra: a,
        contact: Some(unit_one_form(5, &[1])),
        symplectic: None,
        nilradical: vec![0, 1, 2, 3, 4],
        split: Some(EntrySplit {
            n_indices: vec![0, 2, 3, 1],
            t_indices: vec![4],
            beta: vec![beta],
            db,
        }),
        central: Some(CentralExtension {
            center_index: 0,
            base_indices: vec![1, 2, 3, 4],
            base,
            omega,
            base_split: None,
        }),
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: true,
            lattice: LatticeStatus::Exists,
        },
        notes: vec![],
        params: vec![],
    }
}

fn d3() -> CatalogEntry {
    let a = alg(
        "D3",
        5,
        vec![
            ((2, 3), vec![(0, s(1, 1))]),
            ((1, 4), vec![(0, s(1, 1))]),
            ((2, 4), vec![(1, s(1, 1))]),
            ((3, 4), vec![(2, s(1, 1))]),
        ],
    );
    let beta = QMat::from_i64(&[&[0, 0, 0, -1], &[0, 0, -1, 0], &[0, 0, 0, 0], &[0, -1, 0, 0]]);
    let mut db = ClosedForm::zero(4, 1);
    for i in 0..4 {
        db.push(i, i, term_poly(BigRational::one(), 0));
    }
    db.push(0, 1, term_poly(q(1, 2), 2));
    db.push(0, 2, term_poly(q(-1, 6), 3));
    db.push(0, 3, term_poly(q(-1, 1), 1));
    db.push(1, 2, term_poly(q(-1, 1), 1));
    db.push(3, 1, term_poly(q(-1, 1), 1));
    let base = alg(
        "D3-base",
        4,
        vec![((1, 3), vec![(0, s(1, 1))]), ((2, 3), vec![(1, s(1, 1))])],
    );
    let mut omega = KForm::zero(4, 2);
    omega.add_term(&[1, 2], Scalar::one());
    omega.add_term(&[0, 3], Scalar::one());
    CatalogEntry {
        key: "D3".into(),
        name: "D3".into(),
        algebra: a,
        contact: Some(unit_one_form(5, &[1])),
        symplectic: None,
        nilradical: vec![0, 1, 2, 3, 4],
        split: Some(EntrySplit {
            n_indices: vec![0, 2, 3, 1],
            t_indices: vec![4],
            beta: vec![beta],
            db,
        }),
        central: Some(CentralExtension {
            center_index: 0,
            base_indices: vec![1, 2, 3, 4],
            base,
            omega,
            base_split: None,
        }),
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: true,
            lattice: LatticeStatus::Exists,
        },
        notes: vec![],
        params: vec![],
    }
}

fn d4(p: &BigRational) -> Result<CatalogEntry> {
    if p == &q(-1, 1) {
        return Err(Error::InvalidParameter("D4 requires p != -1".into()));
    }
    let p1 = p + BigRational::one();
    let a = alg(
        "D4",
        5,
        vec![
            ((1, 2), vec![(0, s(1, 1))]),
            ((0, 4), vec![(0, sq(&p1))]),
            ((1, 4), vec![(1, s(1, 1))]),
            ((2, 4), vec![(2, sq(p))]),
            ((3, 4), vec![(3, sq(&(-big(2) * &p1)))]),
        ],
    );
    let rates = vec![-p1.clone(), -BigRational::one(), -p.clone(), big(2) * &p1];
    let beta = QMat::from_fn(4, 4, |i, j| {
        if i == j {
            rates[i].clone()
        } else {
            BigRational::zero()
        }
    });
    let db = db_diag_exp(&rates.iter().map(|r| vec![r.clone()]).collect::<Vec<_>>());
    Ok(CatalogEntry {
        key: "D4".into(),
        name: format!("D4(p={p})"),
        algebra: a,
        contact: Some(unit_one_form(5, &[1, 4])),
        symplectic: None,
        nilradical: vec![0, 1, 2, 3],
        split: Some(EntrySplit { n_indices: vec![0, 1, 2, 3], t_indices: vec![4], beta: vec![beta], db }),
        central: None,
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: false,
            lattice: LatticeStatus::None,
        },
        notes: vec![],
        params: vec![("p".into(), p.clone())],
    })
}

fn d5() -> CatalogEntry {
    let a = alg(
        "D5",
        5,
        vec![
            ((1, 2), vec![(0, s(1, 1))]),
            ((1, 4), vec![(1, s(1, 1))]),
            ((2, 4), vec![(2, s(-1, 1))]),
            ((3, 4), vec![(0, s(1, 1))]),
        ],
    );
    let beta = QMat::from_i64(&[&[0, 0, 0, -1], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0]]);
    let mut db = ClosedForm::zero(4, 1);
    db.push(0, 0, term_poly(BigRational::one(), 0));
    db.push(3, 3, term_poly(BigRational::one(), 0));
    db.push(0, 3, term_poly(q(-1, 1), 1));
    db.push(1, 1, term_exp_poly(BigRational::one(), 0, q(-1, 1)));
    db.push(2, 2, term_exp_poly(BigRational::one(), 0, q(1, 1)));
    let base = alg(
        "D5-base",
        4,
        vec![((0, 3), vec![(0, s(1, 1))]), ((1, 3), vec![(1, s(-1, 1))])],
    );
    let mut omega = KForm::zero(4, 2);
    omega.add_term(&[0, 1], Scalar::one());
    omega.add_term(&[2, 3], Scalar::one());
    let base_beta = QMat::from_i64(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
    CatalogEntry {
        key: "D5".into(),
        name: "D5".into(),
        algebra: a,
        contact: Some(unit_one_form(5, &[1])),
        symplectic: None,
        nilradical: vec![0, 1, 2, 3],
        split: Some(EntrySplit {
            n_indices: vec![0, 1, 2, 3],
            t_indices: vec![4],
            beta: vec![beta],
            db,
        }),
        central: Some(CentralExtension {
            center_index: 0,
            base_indices: vec![1, 2, 3, 4],
            base,
            omega,
            base_split: Some((vec![0, 1, 2], vec![3], base_beta)),
        }),
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: false,
            lattice: LatticeStatus::Exists,
        },
        notes: vec![],
        params: vec![],
    }
}

fn d8() -> CatalogEntry {
    let a = alg(
        "D8",
        5,
        vec![
            ((1, 2), vec![(0, s(1, 1))]),
            ((0, 4), vec![(0, s(2, 1))]),
            ((1, 4), vec![(1, s(1, 1)), (2, s(1, 1))]),
            ((2, 4), vec![(2, s(1, 1))]),
            ((3, 4), vec![(3, s(-4, 1))]),
        ],
    );
    let beta =
        QMat::from_i64(&[&[-2, 0, 0, 0], &[0, -1, 0, 0], &[0, -1, -1, 0], &[0, 0, 0, 4]]);
    let mut db = ClosedForm::zero(4, 1);
    db.push(0, 0, term_exp_poly(BigRational::one(), 0, q(-2, 1)));
    db.push(1, 1, term_exp_poly(BigRational::one(), 0, q(-1, 1)));
    db.push(2, 2, term_exp_poly(BigRational::one(), 0, q(-1, 1)));
    db.push(2, 1, term_exp_poly(q(-1, 1), 1, q(-1, 1)));
    db.push(3, 3, term_exp_poly(BigRational::one(), 0, q(4, 1)));
    CatalogEntry {
        key: "D8".into(),
        name: "D8".into(),
        algebra: a,
        contact: Some(unit_one_form(5, &[1, 4])),
        symplectic: None,
        nilradical: vec![0, 1, 2, 3],
        split: Some(EntrySplit { n_indices: vec![0, 1, 2, 3], t_indices: vec![4], beta: vec![beta], db }),
        central: None,
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: false,
            lattice: LatticeStatus::None,
        },
        notes: vec![],
        params: vec![],
    }
}

fn d10(p: &BigRational) -> Result<CatalogEntry> {
    if p.is_zero() {
        return Err(Error::InvalidParameter("D10 requires p != 0".into()));
    }
    let a = alg(
        "D10",
        5,
        vec![
            ((1, 2), vec![(0, s(1, 1))]),
            ((0, 4), vec![(0, sq(&(big(2) * p)))]),
            ((1, 4), vec![(1, sq(p)), (2, s(1, 1))]),
            ((2, 4), vec![(1, s(-1, 1)), (2, sq(p))]),
            ((3, 4), vec![(3, sq(&(big(-4) * p)))]),
        ],
    );
    let mut beta = QMat::zeros(4, 4);
    beta[(0, 0)] = big(-2) * p;
    beta[(1, 1)] = -p.clone();
    beta[(2, 2)] = -p.clone();
    beta[(1, 2)] = BigRational::one();
    beta[(2, 1)] = -BigRational::one();
    beta[(3, 3)] = big(4) * p;
    let mut db = ClosedForm::zero(4, 1);
    db.push(0, 0, term_exp_poly(BigRational::one(), 0, big(-2) * p));
    let mp = -p.clone();
    db.push(1, 1, term_trig(BigRational::one(), vec![mp.clone()], Trig::Cos, vec![big(1)]));
    db.push(2, 2, term_trig(BigRational::one(), vec![mp.clone()], Trig::Cos, vec![big(1)]));
    db.push(1, 2, term_trig(BigRational::one(), vec![mp.clone()], Trig::Sin, vec![big(1)]));
    db.push(2, 1, term_trig(-BigRational::one(), vec![mp], Trig::Sin, vec![big(1)]));
    db.push(3, 3, term_exp_poly(BigRational::one(), 0, big(4) * p));
    Ok(CatalogEntry {
        key: "D10".into(),
        name: format!("D10(p={p})"),
        algebra: a,
        contact: Some(unit_one_form(5, &[1, 4])),
        symplectic: None,
        nilradical: vec![0, 1, 2, 3],
        split: Some(EntrySplit { n_indices: vec![0, 1, 2, 3], t_indices: vec![4], beta: vec![beta], db }),
        central: None,
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: false,
            lattice: LatticeStatus::None,
        },
        notes: vec![],
        params: vec![("p".into(), p.clone())],
    })
}

fn d11(eps: i64) -> Result<CatalogEntry> {
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidParameter("D11 requires eps in {+1, -1}".into()));
    }
    let a = alg(
        "D11",
        5,
        vec![
            ((1, 2), vec![(0, s(1, 1))]),
            ((1, 4), vec![(2, s(-1, 1))]),
            ((2, 4), vec![(1, s(1, 1))]),
            ((3, 4), vec![(0, s(eps, 1))]),
        ],
    );
    let mut beta = QMat::zeros(4, 4);
    beta[(0, 3)] = big(-eps);
    beta[(1, 2)] = -BigRational::one();
    beta[(2, 1)] = BigRational::one();
    let mut db = ClosedForm::zero(4, 1);
    db.push(0, 0, term_poly(BigRational::one(), 0));
    db.push(3, 3, term_poly(BigRational::one(), 0));
    db.push(0, 3, term_poly(big(-eps), 1));
    db.push(1, 1, term_trig(BigRational::one(), vec![big(0)], Trig::Cos, vec![big(1)]));
    db.push(2, 2, term_trig(BigRational::one(), vec![big(0)], Trig::Cos, vec![big(1)]));
    db.push(1, 2, term_trig(-BigRational::one(), vec![big(0)], Trig::Sin, vec![big(1)]));
    db.push(2, 1, term_trig(BigRational::one(), vec![big(0)], Trig::Sin, vec![big(1)]));
    let base = alg(
        "D11-base",
        4,
        vec![((0, 3), vec![(1, s(-1, 1))]), ((1, 3), vec![(0, s(1, 1))])],
    );
    let mut omega = KForm::zero(4, 2);
    omega.add_term(&[0, 1], Scalar::one());
    omega.add_term(&[2, 3], s(eps, 1));
    let mut base_beta = QMat::zeros(3, 3);
    base_beta[(0, 1)] = -BigRational::one();
    base_beta[(1, 0)] = BigRational::one();
    Ok(CatalogEntry {
        key: "D11".into(),
        name: format!("D11(eps={eps:+})"),
        algebra: a,
        contact: Some(unit_one_form(5, &[1])),
        symplectic: None,
        nilradical: vec![0, 1, 2, 3],
        split: Some(EntrySplit {
            n_indices: vec![0, 1, 2, 3],
            t_indices: vec![4],
            beta: vec![beta],
            db,
        }),
        central: Some(CentralExtension {
            center_index: 0,
            base_indices: vec![1, 2, 3, 4],
            base,
            omega,
            base_split: Some((vec![0, 1, 2], vec![3], base_beta)),
        }),
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: false,
            lattice: LatticeStatus::Exists,
        },
        notes: vec![
            "rotation orientation fixed so that db(t) = exp(t beta) holds \
             exactly; the source's bracket signs for [e2,e5], [e3,e5] are \
             flipped accordingly (an isomorphism via e5 -> -e5)"
                .into(),
        ],
        params: vec![("eps".into(), big(eps))],
    })
}

fn d13() -> CatalogEntry {
    let a = alg(
        "D13",
        5,
        vec![
            ((1, 2), vec![(0, s(1, 1))]),
            ((0, 4), vec![(0, s(-1, 2))]),
            ((1, 4), vec![(1, s(-3, 2))]),
            ((2, 4), vec![(2, s(1, 1)), (3, s(1, 1))]),
            ((3, 4), vec![(3, s(1, 1))]),
        ],
    );
    let mut beta = QMat::zeros(4, 4);
    beta[(0, 0)] = q(1, 2);
    beta[(1, 1)] = q(3, 2);
    beta[(2, 2)] = -BigRational::one();
    beta[(3, 3)] = -BigRational::one();
    beta[(3, 2)] = -BigRational::one();
    let mut db = ClosedForm::zero(4, 1);
    db.push(0, 0, term_exp_poly(BigRational::one(), 0, q(1, 2)));
    db.push(1, 1, term_exp_poly(BigRational::one(), 0, q(3, 2)));
    db.push(2, 2, term_exp_poly(BigRational::one(), 0, q(-1, 1)));
    db.push(3, 3, term_exp_poly(BigRational::one(), 0, q(-1, 1)));
    db.push(3, 2, term_exp_poly(q(-1, 1), 1, q(-1, 1)));
    CatalogEntry {
        key: "D13".into(),
        name: "D13".into(),
        algebra: a,
        contact: Some(unit_one_form(5, &[1, 4])),
        symplectic: None,
        nilradical: vec![0, 1, 2, 3],
        split: Some(EntrySplit { n_indices: vec![0, 1, 2, 3], t_indices: vec![4], beta: vec![beta], db }),
        central: None,
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: false,
            lattice: LatticeStatus::None,
        },
        notes: vec![],
        params: vec![],
    }
}

fn d15() -> CatalogEntry {
    let a = alg(
        "D15",
        5,
        vec![
            ((1, 3), vec![(0, s(1, 1))]),
            ((2, 3), vec![(1, s(1, 1))]),
            ((0, 4), vec![(0, s(2, 3))]),
            ((1, 4), vec![(1, s(-1, 3))]),
            ((2, 4), vec![(2, s(-4, 3))]),
            ((3, 4), vec![(3, s(1, 1))]),
        ],
    );
    let rates = vec![q(-2, 3), q(1, 3), q(4, 3), q(-1, 1)];
    let beta = QMat::from_fn(4, 4, |i, j| {
        if i == j {
            rates[i].clone()
        } else {
            BigRational::zero()
        }
    });
    let db = db_diag_exp(&rates.iter().map(|r| vec![r.clone()]).collect::<Vec<_>>());
    CatalogEntry {
        key: "D15".into(),
        name: "D15".into(),
        algebra: a,
        contact: Some(unit_one_form(5, &[1, 3])),
        symplectic: None,
        nilradical: vec![0, 1, 2, 3],
        split: Some(EntrySplit { n_indices: vec![0, 1, 2, 3], t_indices: vec![4], beta: vec![beta], db }),
        central: None,
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: false,
            lattice: LatticeStatus::None,
        },
        notes: vec![
            "contact form stored as e1* + e3* (the source prints the vector \
             e3 in a covector slot)"
                .into(),
            "weight of [e2,e5] stored as -1/3: the printed +1/3 violates \
             both Jacobi and unimodularity; the split data version is kept"
                .into(),
        ],
        params: vec![],
    }
}

fn d18() -> CatalogEntry {
    let a = alg(
        "D18",
        5,
        vec![
            ((0, 3), vec![(0, s(1, 1))]),
            ((2, 3), vec![(2, s(-1, 1))]),
            ((1, 4), vec![(1, s(1, 1))]),
            ((2, 4), vec![(2, s(-1, 1))]),
        ],
    );
    let beta4 = QMat::from_i64(&[&[-1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
    let beta5 = QMat::from_i64(&[&[0, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
    let db = db_diag_exp(&[
        vec![q(-1, 1), q(0, 1)],
        vec![q(0, 1), q(-1, 1)],
        vec![q(1, 1), q(1, 1)],
    ]);
    CatalogEntry {
        key: "D18".into(),
        name: "D18".into(),
        algebra: a,
        contact: Some(unit_one_form(5, &[1, 2, 3])),
        symplectic: None,
        nilradical: vec![0, 1, 2],
        split: Some(EntrySplit {
            n_indices: vec![0, 1, 2],
            t_indices: vec![3, 4],
            beta: vec![beta4, beta5],
            db,
        }),
        central: None,
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: false,
            lattice: LatticeStatus::Exists,
        },
        notes: vec![],
        params: vec![],
    }
}

fn d20() -> CatalogEntry {
    let a = alg(
        "D20",
        5,
        vec![
            ((0, 3), vec![(0, s(-2, 1))]),
            ((1, 3), vec![(1, s(1, 1))]),
            ((2, 3), vec![(2, s(1, 1))]),
            ((1, 4), vec![(2, s(-1, 1))]),
            ((2, 4), vec![(1, s(1, 1))]),
        ],
    );
    let beta4 = QMat::from_i64(&[&[2, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
    let mut beta5 = QMat::zeros(3, 3);
    beta5[(1, 2)] = -BigRational::one();
    beta5[(2, 1)] = BigRational::one();
    let mut db = ClosedForm::zero(3, 2);
    db.push(0, 0, ExpTerm::exp(BigRational::one(), vec![q(2, 1), q(0, 1)]));
    let rate = vec![q(-1, 1), q(0, 1)];
    let trig = vec![q(0, 1), q(1, 1)];
    db.push(1, 1, term_trig(BigRational::one(), rate.clone(), Trig::Cos, trig.clone()));
    db.push(2, 2, term_trig(BigRational::one(), rate.clone(), Trig::Cos, trig.clone()));
    db.push(1, 2, term_trig(-BigRational::one(), rate.clone(), Trig::Sin, trig.clone()));
    db.push(2, 1, term_trig(BigRational::one(), rate, Trig::Sin, trig));
    CatalogEntry {
        key: "D20".into(),
        name: "D20".into(),
        algebra: a,
        contact: Some(unit_one_form(5, &[1, 2])),
        symplectic: None,
        nilradical: vec![0, 1, 2],
        split: Some(EntrySplit {
            n_indices: vec![0, 1, 2],
            t_indices: vec![3, 4],
            beta: vec![beta4, beta5],
            db,
        }),
        central: None,
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: false,
            lattice: LatticeStatus::Exists,
        },
        notes: vec![
            "the source lists no contact form for this entry; eta = e1* + e2* \
             is stored and verified"
                .into(),
        ],
        params: vec![],
    }
}

// ---------------------------------------------------------------------------
// Heisenberg, special affine, and weighted double-Heisenberg families
// ---------------------------------------------------------------------------

/// `H(n)`: the (2n+1)-dimensional Heisenberg algebra, brackets
/// `[e_{1+k}, e_{1+n+k}] = e_1`.
pub fn heisenberg_algebra(n: usize) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(Error::InvalidParameter("Heisenberg needs n >= 1".into()));
    }
    let dim = 2 * n + 1;
    let mut brackets = Brackets::new();
    for k in 1..=n {
        brackets.push(((k, n + k), vec![(0, Scalar::one())]));
    }
    let a = alg(&format!("H{dim}"), dim, brackets);
    Ok(CatalogEntry {
        key: "H".into(),
        name: format!("H{dim}"),
        algebra: a,
        contact: Some(unit_one_form(dim, &[1])),
        symplectic: None,
        nilradical: (0..dim).collect(),
        split: Some(EntrySplit {
            n_indices: (0..dim).collect(),
            t_indices: vec![],
            beta: vec![],
            db: ClosedForm::zero(dim, 0),
        }),
        central: None,
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: true,
            lattice: LatticeStatus::Exists,
        },
        notes: vec![],
        params: vec![("n".into(), big(n as i64))],
    })
}

/// `HR(n)`: `H(2n+1) + R`, with the product symplectic form when `n = 1`.
pub fn heisenberg_times_r(n: usize) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(Error::InvalidParameter("HR needs n >= 1".into()));
    }
    let dim = 2 * n + 2;
    let mut brackets = Brackets::new();
    for k in 1..=n {
        brackets.push(((k, n + k), vec![(0, Scalar::one())]));
    }
    let a = alg(&format!("HR{dim}"), dim, brackets);
    let symplectic = (n == 1).then(|| {
        // e1*^e3* + e4*^e2* on (e1..e4)
        let mut omega = KForm::zero(4, 2);
        omega.add_term(&[0, 2], Scalar::one());
        omega.add_term(&[3, 1], Scalar::one());
        omega
    });
    Ok(CatalogEntry {
        key: "HR".into(),
        name: format!("HR{dim}"),
        algebra: a,
        contact: None,
        symplectic,
        nilradical: (0..dim).collect(),
        split: None,
        central: None,
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: true,
            lattice: LatticeStatus::Exists,
        },
        notes: vec![],
        params: vec![("n".into(), big(n as i64))],
    })
}

/// `SA(n)`: the special affine contact algebra `R^n x sl(n, R)` in the
/// matrix-unit basis, with `eta = sum e*_{i,i+1}`.
pub fn sa_algebra(n: usize) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::InvalidParameter("special affine family needs n >= 2".into()));
    }
    // basis: off-diagonal e_{ij} (i != j, i,j <= n), diagonals h_i, then
    // translations e_{i,n+1}; each element is an (n+1)x(n+1) matrix
    let mut names = Vec::new();
    let mut mats: Vec<QMat> = Vec::new();
    let unit = |i: usize, j: usize| {
        QMat::from_fn(n + 1, n + 1, |r, c| {
            if r == i && c == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    };
    for i in 0..n {
        for j in 0..n {
            if i != j {
                names.push(format!("e{}{}", i + 1, j + 1));
                mats.push(unit(i, j));
            }
        }
    }
    for i in 0..n - 1 {
        names.push(format!("h{}", i + 1));
        mats.push(&unit(i, i) - &unit(i + 1, i + 1));
    }
    for i in 0..n {
        names.push(format!("e{}{}", i + 1, n + 1));
        mats.push(unit(i, n));
    }
    let dim = names.len();
    // express a subalgebra matrix in the basis coordinates
    let coords = |m: &QMat| -> Vec<BigRational> {
        let mut v = Vec::with_capacity(dim);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    v.push(m[(i, j)].clone());
                }
            }
        }
        let mut partial = BigRational::zero();
        for i in 0..n - 1 {
            partial += &m[(i, i)];
            v.push(partial.clone());
        }
        for i in 0..n {
            v.push(m[(i, n)].clone());
        }
        v
    };
    let mut brackets = Brackets::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let comm = &mats[i].matmul(&mats[j]) - &mats[j].matmul(&mats[i]);
            let c = coords(&comm);
            let terms: Vec<(usize, Scalar)> = c
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k, sq(&x)))
                .collect();
            if !terms.is_empty() {
                brackets.push(((i, j), terms));
            }
        }
    }
    let a = crate::algebra::LieAlgebra::new(format!("SA{n}"), names.clone(), brackets)?;
    // eta = sum of the duals of e_{i,i+1}, i = 1..n
    let mut eta_coeffs = vec![Scalar::zero(); dim];
    for i in 1..=n {
        let target = format!("e{}{}", i, i + 1);
        let pos = names.iter().position(|x| *x == target).expect("basis member");
        eta_coeffs[pos] = Scalar::one();
    }
    Ok(CatalogEntry {
        key: "SA".into(),
        name: format!("SA{n}"),
        algebra: a,
        contact: Some(KForm::one_form(&eta_coeffs)),
        symplectic: None,
        nilradical: ((dim - n)..dim).collect(), // the translation ideal is the radical, not checked as nilradical
        split: None,
        central: None,
        expected: ExpectedFlags {
            unimodular: true,
            solvable: false,
            nilpotent: false,
            lattice: LatticeStatus::OutOfScope,
        },
        notes: vec!["non-solvable; uniform-lattice nonexistence is out of checking scope".into()],
        params: vec![("n".into(), big(n as i64))],
    })
}

/// A uniform combination `(1/n) sum e_{i,i+1}` on `SA(n)`. This pairs to 1
/// against `eta` but is *not* the Reeb vector for `n >= 2` (the contraction
/// `i_xi d eta` does not vanish on the diagonal directions); the exact Reeb
/// vector comes from `exterior::reeb_vector` and carries non-uniform weights.
pub fn sa_uniform_combination(entry: &CatalogEntry, n: usize) -> Vec<Scalar> {
    let dim = entry.dim();
    let mut v = vec![Scalar::zero(); dim];
    for i in 1..=n {
        let target = format!("e{}{}", i, i + 1);
        let pos = entry.algebra.label_index(&target).expect("basis member");
        v[pos] = Scalar::ratio(1, n as i64);
    }
    v
}

/// `SY(a1, a2)`: the seven-dimensional `(H3 + H3) x R` family with weights
/// `(a1, a2, a1 + a2)` on one copy and their negatives on the other.
pub fn sy_algebra(a1: &BigRational, a2: &BigRational) -> Result<CatalogEntry> {
    let a3 = a1 + a2;
    let mut brackets = Brackets::new();
    // basis: X1 X2 X3 Z1 Z2 Z3 A
    brackets.push(((0, 1), vec![(2, Scalar::one())]));
    brackets.push(((3, 4), vec![(5, Scalar::one())]));
    let weights = [a1.clone(), a2.clone(), a3.clone()];
    for (j, w) in weights.iter().enumerate() {
        // [X_j, A] = -a_j X_j, [Z_j, A] = a_j Z_j
        if !w.is_zero() {
            brackets.push(((j, 6), vec![(j, sq(&-w.clone()))]));
            brackets.push(((3 + j, 6), vec![(3 + j, sq(w))]));
        }
    }
    let names = vec![
        "X1".into(),
        "X2".into(),
        "X3".into(),
        "Z1".into(),
        "Z2".into(),
        "Z3".into(),
        "A".into(),
    ];
    let a = crate::algebra::LieAlgebra::new(format!("SY({a1},{a2})"), names, brackets)?;
    let rates: Vec<BigRational> =
        vec![a1.clone(), a2.clone(), a3.clone(), -a1.clone(), -a2.clone(), -a3.clone()];
    let beta = QMat::from_fn(6, 6, |i, j| {
        if i == j {
            rates[i].clone()
        } else {
            BigRational::zero()
        }
    });
    let db = db_diag_exp(&rates.iter().map(|r| vec![r.clone()]).collect::<Vec<_>>());
    let integral = a1.is_integer() && a2.is_integer();
    Ok(CatalogEntry {
        key: "SY".into(),
        name: format!("SY(a1={a1},a2={a2})"),
        algebra: a,
        contact: None,
        symplectic: None,
        nilradical: vec![0, 1, 2, 3, 4, 5],
        split: Some(EntrySplit {
            n_indices: vec![0, 1, 2, 3, 4, 5],
            t_indices: vec![6],
            beta: vec![beta],
            db,
        }),
        central: None,
        expected: ExpectedFlags {
            unimodular: true,
            solvable: true,
            nilpotent: false,
            lattice: if integral { LatticeStatus::Exists } else { LatticeStatus::OutOfScope },
        },
        notes: vec![],
        params: vec![("a1".into(), a1.clone()), ("a2".into(), a2.clone())],
    })
}

// ---------------------------------------------------------------------------
// Lookup
// ---------------------------------------------------------------------------

/// Instantiate a catalog entry by family name. Parameterized families read
/// their parameters (or documented defaults) from `params`.
pub fn get(name: &str, params: &Params) -> Result<CatalogEntry> {
    match name {
        "D1" => Ok(d1()),
        "D2" => Ok(d2()),
        "D3" => Ok(d3()),
        "D4" => d4(params.p.as_ref().unwrap_or(&big(2))),
        "D5" => Ok(d5()),
        "D8" => Ok(d8()),
        "D10" => d10(params.p.as_ref().unwrap_or(&big(1))),
        "D11" => d11(params.eps.unwrap_or(1)),
        "D13" => Ok(d13()),
        "D15" => Ok(d15()),
        "D18" => Ok(d18()),
        "D20" => Ok(d20()),
        "H" => heisenberg_algebra(params.n.unwrap_or(1)),
        "H3" => heisenberg_algebra(1),
        "H5" => heisenberg_algebra(2),
        "H7" => heisenberg_algebra(3),
        "HR" => heisenberg_times_r(params.n.unwrap_or(1)),
        "HR4" => heisenberg_times_r(1),
        "SA" => sa_algebra(params.n.unwrap_or(2)),
        "SA2" => sa_algebra(2),
        "SA3" => sa_algebra(3),
        "SY" => sy_algebra(
            params.a1.as_ref().unwrap_or(&big(1)),
            params.a2.as_ref().unwrap_or(&big(1)),
        ),
        other => Err(Error::UnknownEntry(other.into())),
    }
}

/// The twelve five-dimensional unimodular solvable contact entries, at the
/// documented default parameters.
pub fn standard_twelve() -> Vec<CatalogEntry> {
    ["D1", "D2", "D3", "D4", "D5", "D8", "D10", "D11", "D13", "D15", "D18", "D20"]
        .iter()
        .map(|k| get(k, &Params::default()).expect("default parameters are valid"))
        .collect()
}

/// The full default catalog: the twelve plus the auxiliary families.
pub fn all_entries() -> Vec<CatalogEntry> {
    let mut v = standard_twelve();
    for k in ["H3", "H5", "H7", "HR4", "SA2", "SA3", "SY"] {
        v.push(get(k, &Params::default()).expect("default parameters are valid"));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis_vector;
    use crate::exterior::{is_contact, reeb_vector, KForm};

    #[test]
    fn twelve_defaults_exist() {
        assert_eq!(standard_twelve().len(), 12);
    }

    #[test]
    fn d20_bracket_table_golden() {
        let e = get("D20", &Params::default()).unwrap();
        let a = &e.algebra;
        let five = |i: usize| basis_vector(5, i);
        // [e1,e4] = -2 e1, [e2,e4] = e2, [e3,e4] = e3, [e2,e5] = -e3, [e3,e5] = e2
        assert_eq!(a.bracket(&five(0), &five(3)).unwrap()[0], Scalar::int(-2));
        assert_eq!(a.bracket(&five(1), &five(3)).unwrap()[1], Scalar::one());
        assert_eq!(a.bracket(&five(2), &five(3)).unwrap()[2], Scalar::one());
        assert_eq!(a.bracket(&five(1), &five(4)).unwrap()[2], Scalar::int(-1));
        assert_eq!(a.bracket(&five(2), &five(4)).unwrap()[1], Scalar::one());
    }

    #[test]
    fn d1_is_h5() {
        let d1 = get("D1", &Params::default()).unwrap();
        let h5 = get("H5", &Params::default()).unwrap();
        assert_eq!(d1.algebra.table(), h5.algebra.table());
    }

    #[test]
    fn d4_excludes_minus_one() {
        assert!(get("D4", &Params::with_p(big(-1))).is_err());
        assert!(get("D10", &Params::with_p(big(0))).is_err());
        assert!(get("nope", &Params::default()).is_err());
    }

    #[test]
    fn d3_bracket_linearity_example() {
        // [e4 + e3, e5] = e3 + e2
        let e = get("D3", &Params::default()).unwrap();
        let mut x = basis_vector(5, 3);
        x[2] = Scalar::one();
        let w = e.algebra.bracket(&x, &basis_vector(5, 4)).unwrap();
        assert_eq!(w[2], Scalar::one());
        assert_eq!(w[1], Scalar::one());
        assert!(w[0].is_zero() && w[3].is_zero() && w[4].is_zero());
    }

    #[test]
    fn sa2_contact_with_reeb() {
        let e = get("SA2", &Params::default()).unwrap();
        assert_eq!(e.dim(), 5);
        assert!(!e.algebra.is_solvable());
        assert!(e.algebra.is_unimodular());
        let eta = e.contact.clone().unwrap();
        assert!(is_contact(&e.algebra, &eta).unwrap());
        let xi = reeb_vector(&e.algebra, &eta).unwrap();
        // hand-derived: eta([xi, h1]) = -2a + b forces (a, b) = (1/3, 2/3)
        let e12 = e.algebra.label_index("e12").unwrap();
        let e23 = e.algebra.label_index("e23").unwrap();
        assert_eq!(xi[e12], Scalar::ratio(1, 3));
        assert_eq!(xi[e23], Scalar::ratio(2, 3));
        // the uniform combination pairs to 1 but fails the contraction
        let uniform = sa_uniform_combination(&e, 2);
        let (pairing, contraction) = crate::exterior::reeb_defect(&e.algebra, &eta, &uniform).unwrap();
        assert_eq!(pairing, Scalar::one());
        assert!(!contraction.is_zero());
    }

    #[test]
    fn sa3_contact_and_reeb_equations() {
        let e = get("SA3", &Params::default()).unwrap();
        assert_eq!(e.dim(), 11);
        let eta = e.contact.clone().unwrap();
        assert!(is_contact(&e.algebra, &eta).unwrap());
        let xi = reeb_vector(&e.algebra, &eta).unwrap();
        let (pairing, contraction) = crate::exterior::reeb_defect(&e.algebra, &eta, &xi).unwrap();
        assert_eq!(pairing, Scalar::one());
        assert!(contraction.is_zero());
    }

    #[test]
    fn sy_weights_and_brackets() {
        let e = get("SY", &Params { a1: Some(big(1)), a2: Some(big(2)), ..Default::default() }).unwrap();
        let a = &e.algebra;
        // [X1, X2] = X3 and [Z1, Z2] = Z3
        assert_eq!(a.bracket(&basis_vector(7, 0), &basis_vector(7, 1)).unwrap()[2], Scalar::one());
        assert_eq!(a.bracket(&basis_vector(7, 3), &basis_vector(7, 4)).unwrap()[5], Scalar::one());
        // [A, X2] = 2 X2
        let w = a.bracket(&basis_vector(7, 6), &basis_vector(7, 1)).unwrap();
        assert_eq!(w[1], Scalar::int(2));
        // trace of beta vanishes
        let split = e.split.as_ref().unwrap();
        assert!(split.beta[0].trace().is_zero());
    }

    #[test]
    fn sy_beta_diag_example() {
        let e = get("SY", &Params::default()).unwrap();
        let split = e.split.as_ref().unwrap();
        let expect = [1i64, 1, 2, -1, -1, -2];
        for (i, v) in expect.iter().enumerate() {
            assert_eq!(split.beta[0][(i, i)], big(*v));
        }
    }

    #[test]
    fn hr4_symplectic_form() {
        let e = get("HR4", &Params::default()).unwrap();
        let omega = e.symplectic.clone().unwrap();
        assert!(crate::exterior::is_symplectic(&e.algebra, &omega).unwrap());
        // degenerate form rejected
        let degenerate = KForm::term(4, &[1, 2], Scalar::one());
        assert!(!crate::exterior::is_symplectic(&e.algebra, &degenerate).unwrap());
    }
}
