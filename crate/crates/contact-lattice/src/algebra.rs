//! Lie algebras given by exact structure constants: brackets, adjoint
//! matrices, Jacobi checking, ideal chains, nilradical verification,
//! semidirect decompositions, central extensions, and the splitting
//! construction that embeds a solvable algebra into a splittable one.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{Mat, SMat};
use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

pub fn basis_vector(dim: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

pub fn vec_add(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn vec_scale(x: &[Scalar], s: &Scalar) -> Vector {
    x.iter().map(|a| a * s).collect()
}

pub fn vec_is_zero(x: &[Scalar]) -> bool {
    x.iter().all(Scalar::is_zero)
}

/// A finite-dimensional Lie algebra over exact scalars, stored sparsely:
/// only the nonzero brackets `[e_i, e_j]` for `i < j` (0-based indices).
#[derive(Clone, PartialEq)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    table: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
}

impl LieAlgebra {
    /// Build from a sparse table. Bracket targets use the same 0-based basis
    /// indices; pairs may be given in any order and are normalized to `i < j`.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        brackets: Vec<((usize, usize), Vec<(usize, Scalar)>)>,
    ) -> Result<Self> {
        let dim = basis.len();
        let mut table: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
        for ((i, j), terms) in brackets {
            if i >= dim || j >= dim || terms.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::Dimension(format!(
                    "bracket ({i},{j}) out of range for dimension {dim}"
                )));
            }
            if i == j {
                return Err(Error::Structure {
                    check: "antisymmetry".into(),
                    detail: format!("bracket [e{0},e{0}] must vanish", i + 1),
                });
            }
            let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
            let entry = table.entry(key).or_default();
            for (k, c) in terms {
                let c = if flip { -&c } else { c };
                match entry.iter_mut().find(|(kk, _)| *kk == k) {
                    Some((_, cc)) => *cc = &*cc + &c,
                    None => entry.push((k, c)),
                }
            }
        }
        for terms in table.values_mut() {
            terms.retain(|(_, c)| !c.is_zero());
            terms.sort_by_key(|(k, _)| *k);
        }
        table.retain(|_, terms| !terms.is_empty());
        Ok(LieAlgebra { name: name.into(), basis, table })
    }

    /// Abelian algebra of the given dimension with basis `e1..en`.
    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        LieAlgebra {
            name: name.into(),
            basis: (1..=dim).map(|i| format!("e{i}")).collect(),
            table: BTreeMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|l| l == label)
    }

    /// Sparse structure constants, normalized to `i < j`.
    pub fn table(&self) -> &BTreeMap<(usize, usize), Vec<(usize, Scalar)>> {
        &self.table
    }

    /// `[e_i, e_j]` for arbitrary index order.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        let mut out = vec![Scalar::zero(); self.dim()];
        if i == j {
            return out;
        }
        let (key, sign) = if i < j { ((i, j), 1) } else { ((j, i), -1) };
        if let Some(terms) = self.table.get(&key) {
            for (k, c) in terms {
                out[*k] = if sign > 0 { c.clone() } else { -c };
            }
        }
        out
    }

    /// Bilinear antisymmetric bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::Dimension(format!(
                "bracket expects vectors of length {n}, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        let mut out = vec![Scalar::zero(); n];
        for (&(i, j), terms) in &self.table {
            // contribution of the (i,j) and (j,i) slots
            let c = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if c.is_zero() {
                continue;
            }
            for (k, coeff) in terms {
                out[*k] = &out[*k] + &(&c * coeff);
            }
        }
        Ok(out)
    }

    /// Matrix of `ad_x : y -> [x, y]` in the algebra basis.
    pub fn ad(&self, x: &[Scalar]) -> Result<SMat> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::Dimension(format!(
                "ad expects a vector of length {n}, got {}",
                x.len()
            )));
        }
        let mut m = SMat::zeros(n, n);
        for j in 0..n {
            let col = self.bracket(x, &basis_vector(n, j))?;
            m.set_col(j, &col);
        }
        Ok(m)
    }

    /// All basis triples violating the Jacobi identity; empty means pass.
    pub fn check_jacobi(&self) -> Vec<JacobiViolation> {
        let n = self.dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let ei = basis_vector(n, i);
                    let ej = basis_vector(n, j);
                    let ek = basis_vector(n, k);
                    let mut defect = vec![Scalar::zero(); n];
                    for (x, y, z) in [(&ei, &ej, &ek), (&ej, &ek, &ei), (&ek, &ei, &ej)] {
                        let t = self.bracket(&self.bracket(x, y).unwrap(), z).unwrap();
                        defect = vec_add(&defect, &t);
                    }
                    if !vec_is_zero(&defect) {
                        bad.push(JacobiViolation { triple: (i, j, k), defect });
                    }
                }
            }
        }
        bad
    }

    /// Unimodular: `trace(ad_x) = 0` for every basis vector `x`.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim()).all(|i| {
            self.ad(&basis_vector(self.dim(), i))
                .map(|m| m.trace().is_zero())
                .unwrap_or(false)
        })
    }

    /// Derived series `g, [g,g], [[g,g],[g,g]], ...` until stabilization.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut chain = vec![Subspace::full(self.dim())];
        loop {
            let last = chain.last().unwrap();
            let next = self.bracket_span(last, last);
            if next.rank() == last.rank() {
                break;
            }
            let stop = next.rank() == 0;
            chain.push(next);
            if stop {
                break;
            }
        }
        chain
    }

    /// Lower central series `g, [g,g], [[g,g],g], ...` until stabilization.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut chain = vec![full.clone()];
        loop {
            let last = chain.last().unwrap();
            let next = self.bracket_span(last, &full);
            if next.rank() == last.rank() {
                break;
            }
            let stop = next.rank() == 0;
            chain.push(next);
            if stop {
                break;
            }
        }
        chain
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().rank() == 0
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().rank() == 0
    }

    /// Exact center: all `x` with `[x, e_i] = 0` for every basis vector.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // stack the maps x -> [x, e_j] and take the joint kernel
        let mut stacked = SMat::zeros(n * n, n);
        for j in 0..n {
            for col in 0..n {
                let w = self.basis_bracket(col, j);
                for i in 0..n {
                    stacked[(j * n + i, col)] = w[i].clone();
                }
            }
        }
        Subspace::span(n, &stacked.kernel())
    }

    /// Span of all brackets `[a, b]`, `a` in `u`, `b` in `v`.
    pub fn bracket_span(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut gens = Vec::new();
        for a in u.generators() {
            for b in v.generators() {
                let w = self.bracket(a, b).unwrap();
                if !vec_is_zero(&w) {
                    gens.push(w);
                }
            }
        }
        Subspace::span(self.dim(), &gens)
    }

    /// Derived ideal `[g, g]`.
    pub fn derived_ideal(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_span(&full, &full)
    }

    /// Structure constants all rational (a Q-algebra in the stored basis).
    pub fn has_rational_constants(&self) -> bool {
        self.table
            .values()
            .all(|terms| terms.iter().all(|(_, c)| c.is_rational()))
    }

    /// Relabel the basis through a permutation: `new index p(i) = old i`.
    pub fn permute_basis(&self, perm: &[usize]) -> Result<LieAlgebra> {
        let n = self.dim();
        if perm.len() != n {
            return Err(Error::Dimension("permutation length mismatch".into()));
        }
        let mut brackets = Vec::new();
        for (&(i, j), terms) in &self.table {
            brackets.push((
                (perm[i], perm[j]),
                terms.iter().map(|(k, c)| (perm[*k], c.clone())).collect(),
            ));
        }
        let mut basis = vec![String::new(); n];
        for i in 0..n {
            basis[perm[i]] = self.basis[i].clone();
        }
        LieAlgebra::new(format!("{}~perm", self.name), basis, brackets)
    }

}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {})", self.name, self.dim())
    }
}

#[derive(Clone, Debug)]
pub struct JacobiViolation {
    /// 0-based basis triple `(i, j, k)`.
    pub triple: (usize, usize, usize),
    pub defect: Vector,
}

/// A subspace of a fixed-dimension ambient space, stored as an echelonized
/// generating set so that membership and rank are exact.
#[derive(Clone, PartialEq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>, // reduced row echelon over columns
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Subspace { ambient, basis: vec![] };
        }
        let m = Mat::from_rows(vectors.to_vec());
        assert_eq!(m.cols(), ambient);
        let basis = m.row_echelon_basis();
        Subspace { ambient, basis }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, &(0..ambient).map(|i| basis_vector(ambient, i)).collect::<Vec<_>>())
    }

    pub fn from_indices(ambient: usize, idx: &[usize]) -> Self {
        Subspace::span(ambient, &idx.iter().map(|&i| basis_vector(ambient, i)).collect::<Vec<_>>())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of `v` in the stored basis, when `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.basis.is_empty() {
            return if vec_is_zero(v) { Some(vec![]) } else { None };
        }
        let m = SMat::from_cols(self.ambient, &self.basis.to_vec());
        m.solve(v).ok()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// Sum of subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &gens)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(rank {} of {})", self.rank(), self.ambient)
    }
}

/// A semidirect decomposition `g = n (+)_beta t`: an ideal with chosen basis,
/// an abelian complement, and the derivation matrices of the complement's
/// action on the ideal.
#[derive(Clone)]
pub struct SplitData {
    pub n_basis: Vec<Vector>,
    pub t_basis: Vec<Vector>,
    /// `beta[i]` is the matrix of `ad(t_i)` restricted to `n`, in `n_basis`.
    pub beta: Vec<SMat>,
}

impl SplitData {
    pub fn n_dim(&self) -> usize {
        self.n_basis.len()
    }

    pub fn t_dim(&self) -> usize {
        self.t_basis.len()
    }

    /// `beta` evaluated on a T-coordinate vector.
    pub fn beta_at(&self, coords: &[Scalar]) -> SMat {
        assert_eq!(coords.len(), self.t_dim());
        let m = self.n_dim();
        let mut out = SMat::zeros(m, m);
        for (c, b) in coords.iter().zip(&self.beta) {
            out = &out + &b.scale(c);
        }
        out
    }
}

/// Check that a matrix is a derivation of the algebra structure carried by
/// `n_local` (structure constants in the local basis): `D[x,y] = [Dx,y] + [x,Dy]`.
pub fn is_derivation(n_local: &LieAlgebra, d: &SMat) -> bool {
    let m = n_local.dim();
    for i in 0..m {
        for j in (i + 1)..m {
            let ei = basis_vector(m, i);
            let ej = basis_vector(m, j);
            let lhs = d.matvec(&n_local.bracket(&ei, &ej).unwrap());
            let r1 = n_local.bracket(&d.matvec(&ei), &ej).unwrap();
            let r2 = n_local.bracket(&ei, &d.matvec(&ej)).unwrap();
            if lhs != vec_add(&r1, &r2) {
                return false;
            }
        }
    }
    true
}

/// Extract and verify a semidirect decomposition `g = n (+) t` from chosen
/// basis vectors: `n` must be an ideal, `t` an abelian complement; the beta
/// matrices are read off the brackets and checked to be derivations.
pub fn semidirect_split(
    algebra: &LieAlgebra,
    n_vectors: &[Vector],
    t_vectors: &[Vector],
) -> Result<SplitData> {
    let dim = algebra.dim();
    if n_vectors.len() + t_vectors.len() != dim {
        return Err(Error::structure(
            "split-spans",
            format!(
                "{} + {} basis vectors for dimension {dim}",
                n_vectors.len(),
                t_vectors.len()
            ),
        ));
    }
    let mut all = n_vectors.to_vec();
    all.extend(t_vectors.iter().cloned());
    if Subspace::span(dim, &all).rank() != dim {
        return Err(Error::structure("split-spans", "n + t does not span the algebra"));
    }
    let n_sub = Subspace::span(dim, n_vectors);
    // ideal: [g, n] inside n
    let full = Subspace::full(dim);
    if !n_sub.contains_subspace(&algebra.bracket_span(&full, &n_sub)) {
        return Err(Error::structure("ideal", "n is not an ideal"));
    }
    // t abelian
    for (a, x) in t_vectors.iter().enumerate() {
        for y in t_vectors.iter().skip(a + 1) {
            if !vec_is_zero(&algebra.bracket(x, y)?) {
                return Err(Error::structure("abelian-complement", "t is not abelian"));
            }
        }
    }
    // beta matrices: coordinates of [t_i, n_j] in the chosen n basis
    let n_mat = SMat::from_cols(dim, &n_vectors.to_vec());
    let m = n_vectors.len();
    let mut beta = Vec::new();
    for t in t_vectors {
        let mut b = SMat::zeros(m, m);
        for (j, nj) in n_vectors.iter().enumerate() {
            let w = algebra.bracket(t, nj)?;
            let coords = n_mat
                .solve(&w)
   .map_err(|_| Error::structure("ideal", "[t, n] leaves the span of n"))?;
            b.set_col(j, &coords);
        }
        beta.push(b);
    }
    // derivation property, stated over n's own structure constants
    let n_local = local_structure(algebra, n_vectors)?;
    for b in &beta {
        if !is_derivation(&n_local, b) {
            return Err(Error::structure("derivation", "beta(t) is not a derivation of n"));
        }
    }
    Ok(SplitData { n_basis: n_vectors.to_vec(), t_basis: t_vectors.to_vec(), beta })
}

/// Structure constants of a bracket-closed span, in exactly the given basis
/// order (no echelonization).
pub fn local_structure(algebra: &LieAlgebra, vectors: &[Vector]) -> Result<LieAlgebra> {
    let dim = algebra.dim();
    let m = vectors.len();
    let mat = SMat::from_cols(dim, &vectors.to_vec());
    let mut brackets = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let w = algebra.bracket(&vectors[i], &vectors[j])?;
            if vec_is_zero(&w) {
                continue;
            }
            let coords = mat.solve(&w).map_err(|_| {
                Error::structure("closed-under-bracket", "bracket leaves the span")
            })?;
            let terms: Vec<(usize, Scalar)> =
                coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            brackets.push(((i, j), terms));
        }
    }
    LieAlgebra::new(
        format!("{}|local", algebra.name()),
        (1..=m).map(|i| format!("f{i}")).collect(),
        brackets,
    )
}

/// Outcome of `verify_nilradical`: which of the four checks failed, if any.
#[derive(Clone, Debug)]
pub struct NilradicalReport {
    pub ideal: bool,
    pub nilpotent: bool,
    pub contains_derived: bool,
    pub maximal: bool,
    pub detail: String,
}

impl NilradicalReport {
    pub fn passed(&self) -> bool {
        self.ideal && self.nilpotent && self.contains_derived && self.maximal
    }
}

/// Check that `candidate` is the nilradical: an ideal, nilpotent, containing
/// `[g,g]`, and maximal against adjoining any single ambient basis vector.
pub fn verify_nilradical(algebra: &LieAlgebra, candidate: &Subspace) -> Result<NilradicalReport> {
    let dim = algebra.dim();
    if candidate.ambient() != dim {
        return Err(Error::Dimension("candidate lives in a different ambient space".into()));
    }
    let full = Subspace::full(dim);
    let ideal = candidate.contains_subspace(&algebra.bracket_span(&full, candidate));
    let nilpotent = ideal && subspace_is_nilpotent(algebra, candidate);
    let contains_derived = candidate.contains_subspace(&algebra.derived_ideal());
    let mut maximal = true;
    let mut detail = String::new();
    if ideal && nilpotent {
        for i in 0..dim {
            let v = basis_vector(dim, i);
            if candidate.contains(&v) {
                continue;
            }
            let bigger = candidate.sum(&Subspace::span(dim, &[v]));
            let bigger_ideal = bigger.contains_subspace(&algebra.bracket_span(&full, &bigger));
            if bigger_ideal && subspace_is_nilpotent(algebra, &bigger) {
                maximal = false;
                detail = format!("adjoining e{} keeps a nilpotent ideal", i + 1);
                break;
            }
        }
    }
    if !ideal {
        detail = "candidate is not an ideal".into();
    } else if !nilpotent {
        detail = "candidate is not nilpotent".into();
    } else if !contains_derived {
        detail = "candidate does not contain [g,g]".into();
    }
    Ok(NilradicalReport { ideal, nilpotent, contains_derived, maximal, detail })
}

/// Lower central series of the subspace (as a subalgebra) terminates at zero.
fn subspace_is_nilpotent(algebra: &LieAlgebra, sub: &Subspace) -> bool {
    let mut current = sub.clone();
    for _ in 0..=sub.rank() {
        if current.rank() == 0 {
            return true;
        }
        let next = algebra.bracket_span(&current, sub);
        if next.rank() == current.rank() {
            return false;
        }
        current = next;
    }
    current.rank() == 0
}

/// Central extension of `base` by a closed 2-form: a new central generator
/// `z` is prepended, and `[x, y]_new = [x, y] + omega(x, y) z`.
pub fn central_extend(
    base: &LieAlgebra,
    omega: &crate::exterior::KForm,
    name: &str,
) -> Result<LieAlgebra> {
    use crate::exterior::ce_differential;
    if omega.degree() != 2 || omega.dim() != base.dim() {
        return Err(Error::Dimension("central extension needs a 2-form on the base".into()));
    }
    let d_omega = ce_differential(base, omega)?;
    if !d_omega.is_zero() {
        return Err(Error::structure("closed-cocycle", "d(omega) != 0, extension violates Jacobi"));
    }
    let n = base.dim();
    let mut basis = vec!["z".to_string()];
    basis.extend(base.basis_labels().iter().cloned());
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = base.basis_bracket(i, j);
            let mut terms: Vec<(usize, Scalar)> = w
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k + 1, c.clone()))
                .collect();
            let pairing = omega.coeff(&[i, j]);
            if !pairing.is_zero() {
                terms.push((0, pairing));
            }
            if !terms.is_empty() {
                brackets.push(((i + 1, j + 1), terms));
            }
        }
    }
    LieAlgebra::new(name, basis, brackets)
}

/// Quotient by a one-dimensional central direction (given by basis index),
/// recovering the base of a central extension.
pub fn quotient_central(algebra: &LieAlgebra, center_index: usize) -> Result<LieAlgebra> {
    let n = algebra.dim();
    let z = basis_vector(n, center_index);
    for j in 0..n {
        if !vec_is_zero(&algebra.bracket(&z, &basis_vector(n, j))?) {
            return Err(Error::structure("central", "chosen direction is not central"));
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| i != center_index).collect();
    let pos = |i: usize| keep.iter().position(|&k| k == i);
    let mut brackets = Vec::new();
    for (&(i, j), terms) in algebra.table() {
        let (Some(pi), Some(pj)) = (pos(i), pos(j)) else { continue };
        let terms: Vec<(usize, Scalar)> = terms
            .iter()
            .filter_map(|(k, c)| pos(*k).map(|pk| (pk, c.clone())))
            .collect();
        if !terms.is_empty() {
            brackets.push(((pi, pj), terms));
        }
    }
    LieAlgebra::new(
        format!("{}/center", algebra.name()),
        keep.iter().map(|&i| algebra.basis_labels()[i].clone()).collect(),
        brackets,
    )
}

/// Result of the splitting construction `(n x_bn t) x_phi t`.
pub struct MaltsevSplitting {
    pub algebra: LieAlgebra,
    /// The inner ideal `n x_bn t` (first m + k coordinates).
    pub inner_ideal: Subspace,
    /// Outer abelian complement (last k coordinates).
    pub outer: Subspace,
}

/// Embed a splittable solvable algebra into the splittable hull
/// `(n x_{bn} t) x_phi t`, where `phi` acts by the semisimple part on `n`
/// and trivially on the inner copy of `t`.
///
/// `beta_s[i] + beta_n[i]` must reproduce `split.beta[i]` and each pair must
/// commute; the declared nilradical of the result is the inner ideal.
pub fn maltsev_splitting(
    algebra: &LieAlgebra,
    split: &SplitData,
    beta_s: &[SMat],
    beta_n: &[SMat],
) -> Result<MaltsevSplitting> {
    let m = split.n_dim();
    let k = split.t_dim();
    if beta_s.len() != k || beta_n.len() != k {
        return Err(Error::Dimension("one semisimple/nilpotent pair per t generator".into()));
    }
    for i in 0..k {
        if &(&beta_s[i] + &beta_n[i]) != &split.beta[i] {
            return Err(Error::structure("parts-sum", "beta_s + beta_n != beta"));
        }
        if !beta_s[i].commutes_with(&beta_n[i]) {
            return Err(Error::structure("parts-commute", "beta_s and beta_n do not commute"));
        }
    }
    let n_local = local_structure(algebra, &split.n_basis)?;
    let total = m + 2 * k;
    let mut basis: Vec<String> = (1..=m).map(|i| format!("n{i}")).collect();
    basis.extend((1..=k).map(|i| format!("t{i}")));
    basis.extend((1..=k).map(|i| format!("s{i}")));
    let mut brackets = Vec::new();
    for (&(i, j), terms) in n_local.table() {
        brackets.push(((i, j), terms.clone()));
    }
    for g in 0..k {
        for j in 0..m {
            let col_n: Vec<(usize, Scalar)> = (0..m)
                .filter(|&i| !beta_n[g][(i, j)].is_zero())
                .map(|i| (i, beta_n[g][(i, j)].clone()))
                .collect();
            if !col_n.is_empty() {
                brackets.push(((m + g, j), col_n));
            }
            let col_s: Vec<(usize, Scalar)> = (0..m)
                .filter(|&i| !beta_s[g][(i, j)].is_zero())
                .map(|i| (i, beta_s[g][(i, j)].clone()))
                .collect();
            if !col_s.is_empty() {
                brackets.push(((m + k + g, j), col_s));
            }
        }
    }
    let hull = LieAlgebra::new(format!("M({})", algebra.name()), basis, brackets)?;
    if !hull.check_jacobi().is_empty() {
        return Err(Error::structure("jacobi", "splitting hull violates Jacobi"));
    }
    let inner = Subspace::from_indices(total, &(0..m + k).collect::<Vec<_>>());
    let outer = Subspace::from_indices(total, &(m + k..total).collect::<Vec<_>>());
    Ok(MaltsevSplitting { algebra: hull, inner_ideal: inner, outer })
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
    fn bracket_antisymmetry_and_linearity() {
        let l = h3();
        let x = vec![Scalar::int(2), Scalar::int(1), Scalar::int(3)];
        let y = vec![Scalar::int(0), Scalar::int(-1), Scalar::int(5)];
        let xy = l.bracket(&x, &y).unwrap();
        let yx = l.bracket(&y, &x).unwrap();
        assert_eq!(xy, vec_scale(&yx, &Scalar::int(-1)));
        assert!(vec_is_zero(&l.bracket(&x, &x).unwrap()));
        // [e2, e3] = e1
        assert_eq!(
            l.basis_bracket(1, 2),
            vec![Scalar::one(), Scalar::zero(), Scalar::zero()]
        );
    }

    #[test]
    fn jacobi_detects_corruption() {
        // aff(R)-like 3-dim with a bad extra bracket: [e1,e2]=e3, [e1,e3]=e3, [e2,e3]=e1
        let bad = LieAlgebra::new(
            "bad",
            vec!["e1".into(), "e2".into(), "e3".into()],
            vec![
                ((0, 1), vec![(2, Scalar::one())]),
                ((0, 2), vec![(2, Scalar::one())]),
                ((1, 2), vec![(0, Scalar::one())]),
            ],
        )
        .unwrap();
        assert!(!bad.check_jacobi().is_empty());
        assert!(h3().check_jacobi().is_empty());
    }

    #[test]
    fn unimodularity() {
        assert!(h3().is_unimodular());
        // aff(R): [e1, e2] = e2 has trace ad(e1) = 1
        let aff = LieAlgebra::new(
            "aff",
            vec!["e1".into(), "e2".into()],
            vec![((0, 1), vec![(1, Scalar::one())])],
        )
        .unwrap();
        assert!(!aff.is_unimodular());
        assert!(LieAlgebra::abelian("R5", 5).is_unimodular());
    }

    #[test]
    fn center_and_series_of_h3() {
        let l = h3();
        let c = l.center();
        assert_eq!(c.rank(), 1);
        assert!(c.contains(&basis_vector(3, 0)));
        let lcs = l.lower_central_series();
        assert_eq!(lcs.last().unwrap().rank(), 0);
        assert!(l.is_nilpotent());
        let abelian = LieAlgebra::abelian("a", 4);
        assert_eq!(abelian.derived_series().len(), 2);
    }

    #[test]
    fn nilradical_of_whole_nilpotent_algebra() {
        let l = h3();
        let report = verify_nilradical(&l, &Subspace::full(3)).unwrap();
        assert!(report.passed(), "{}", report.detail);
    }

    #[test]
    fn maltsev_of_nilpotent_is_identity_dimension() {
        let l = h3();
        let split = SplitData {
            n_basis: (0..3).map(|i| basis_vector(3, i)).collect(),
            t_basis: vec![],
            beta: vec![],
        };
        let m = maltsev_splitting(&l, &split, &[], &[]).unwrap();
        assert_eq!(m.algebra.dim(), 3);
        assert!(m.outer.rank() == 0);
    }
}
