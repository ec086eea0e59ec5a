//! The finite-rank symplectic layer: the space `V` with its antisymmetric
//! form, `G = sp(V)` and the module `S` of trace-zero form-symmetric
//! operators presented by weight bases of matrix units, diagonal
//! projectors, the trace-corrected product `e o f = ef + fe - (tr(ef)/l) J0`
//! and the pair of operators attached to two vectors of `V`, plus generic
//! weight decomposition and submodule-generation machinery.
//!
//! Indexing: `I = {0, .., n-1}`, the barred copy sits at `n + i`, so
//! operators live on a `2n`-dimensional space. The distinguished subset
//! `I_0` is the first `ell` indices. The form is
//!
//! ```text
//! (v_j, v_kbar) = -(v_kbar, v_j) = 2 delta_{jk},   (v_j, v_k) = (v_jbar, v_kbar) = 0.
//! ```

use crate::linalg::{integer_eigenspaces, qi, qr, Matrix, Q, QVec, SpanSolver, Subspace};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymplecticError {
    RankTooSmall { n: usize, need: usize },
    /// `circ_trace` requires both operands to lie in `G` or `S`.
    NotInGS,
    /// A weight decomposition found the span not closed under the Cartan
    /// action (or the action not semisimple with integer eigenvalues).
    NotClosed,
}

impl fmt::Display for SymplecticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymplecticError::RankTooSmall { n, need } => {
                write!(f, "rank {n} too small, need at least {need}")
            }
            SymplecticError::NotInGS => write!(f, "operand is not in G or S"),
            SymplecticError::NotClosed => {
                write!(f, "span is not closed under the Cartan action")
            }
        }
    }
}

impl std::error::Error for SymplecticError {}

/// Finite-rank index data: `n` indices with their formal duals, and the
/// distinguished subset `I_0 = {0, .., ell-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IndexData {
    pub n: usize,
    pub ell: usize,
}

impl IndexData {
    pub fn new(n: usize, ell: usize) -> Self {
        assert!(ell >= 1 && ell <= n, "need 1 <= ell <= n");
        IndexData { n, ell }
    }

    pub fn dim_v(&self) -> usize {
        2 * self.n
    }

    /// Index of the barred copy of `i`.
    pub fn bar(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn i0(&self) -> Vec<usize> {
        (0..self.ell).collect()
    }
}

/// Endomorphism of `V` as a sparse matrix over the `2n` basis indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseOp {
    pub dim: usize,
    pub entries: BTreeMap<(usize, usize), Q>,
}

impl SparseOp {
    pub fn zero(dim: usize) -> Self {
        SparseOp { dim, entries: BTreeMap::new() }
    }

    /// The matrix unit `e_{j,k}`.
    pub fn unit(dim: usize, j: usize, k: usize) -> Self {
        let mut op = SparseOp::zero(dim);
        op.add(j, k, &qi(1));
        op
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = SparseOp::zero(dim);
        for i in 0..dim {
            op.add(i, i, &qi(1));
        }
        op
    }

    pub fn get(&self, j: usize, k: usize) -> Q {
        self.entries.get(&(j, k)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&mut self, j: usize, k: usize, c: &Q) {
        if c.is_zero() {
            return;
        }
        let cur = self.get(j, k) + c;
        if cur.is_zero() {
            self.entries.remove(&(j, k));
        } else {
            self.entries.insert((j, k), cur);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn plus(&self, other: &SparseOp) -> SparseOp {
        let mut out = self.clone();
        for ((j, k), c) in &other.entries {
            out.add(*j, *k, c);
        }
        out
    }

    pub fn minus(&self, other: &SparseOp) -> SparseOp {
        self.plus(&other.scaled(&-qi(1)))
    }

    pub fn scaled(&self, c: &Q) -> SparseOp {
        let mut out = SparseOp::zero(self.dim);
        if c.is_zero() {
            return out;
        }
        for ((j, k), v) in &self.entries {
            out.entries.insert((*j, *k), v * c);
        }
        out
    }

    pub fn compose(&self, other: &SparseOp) -> SparseOp {
        // (self . other)(v) = self(other(v))
        let mut out = SparseOp::zero(self.dim);
        for ((j, k), a) in &self.entries {
            for ((k2, l), b) in &other.entries {
                if k == k2 {
                    out.add(*j, *l, &(a * b));
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &SparseOp) -> SparseOp {
        self.compose(other).minus(&other.compose(self))
    }

    pub fn anticommutator(&self, other: &SparseOp) -> SparseOp {
        self.compose(other).plus(&other.compose(self))
    }

    pub fn trace(&self) -> Q {
        let mut t = Q::zero();
        for ((j, k), c) in &self.entries {
            if j == k {
                t += c;
            }
        }
        t
    }

    pub fn apply(&self, v: &QVec) -> QVec {
        assert_eq!(v.dim(), self.dim);
        let mut out = QVec::zero(self.dim);
        for ((j, k), c) in &self.entries {
            let vk = v.get(*k);
            if !vk.is_zero() {
                let cur = out.get(*j) + c * vk;
                out.set(*j, cur);
            }
        }
        out
    }

    /// Row-major flattening into a vector of length `dim^2`.
    pub fn flatten(&self) -> QVec {
        let mut out = QVec::zero(self.dim * self.dim);
        for ((j, k), c) in &self.entries {
            out.set(j * self.dim + k, c.clone());
        }
        out
    }
}

impl crate::linalg::LinearOp for SparseOp {
    fn apply(&self, v: &QVec) -> QVec {
        SparseOp::apply(self, v)
    }
}

/// A basis operator together with its integer weight in the epsilon
/// coordinates.
#[derive(Clone, Debug)]
pub struct WeightedOp {
    pub op: SparseOp,
    pub weight: Vec<i64>,
}

/// The antisymmetric form on `V`, evaluated on two coordinate vectors.
pub fn form_eval(idx: &IndexData, u: &QVec, w: &QVec) -> Q {
    let mut out = Q::zero();
    for (j, cu) in u.iter() {
        for (k, cw) in w.iter() {
            if k == idx.bar(j) && j < idx.n {
                out += cu * cw * qi(2);
            } else if j == idx.bar(k) && k < idx.n {
                out -= cu * cw * qi(2);
            }
        }
    }
    out
}

fn form_matrix(idx: &IndexData) -> SparseOp {
    let mut omega = SparseOp::zero(idx.dim_v());
    for i in 0..idx.n {
        omega.add(i, idx.bar(i), &qi(2));
        omega.add(idx.bar(i), i, &qi(-2));
    }
    omega
}

/// `(op v, w) = -(v, op w)` for all `v, w`; the defining property of `G`.
pub fn is_form_skew(idx: &IndexData, op: &SparseOp) -> bool {
    // M^T Omega + Omega M = 0
    let omega = form_matrix(idx);
    let mut defect = omega.compose(op);
    for ((j, k), c) in &op.entries {
        // (M^T Omega)[k'][..]: transpose on the fly
        for ((j2, l), w) in &omega.entries {
            if j2 == j {
                defect.add(*k, *l, &(c * w));
            }
        }
    }
    defect.is_zero()
}

/// `(op v, w) = (v, op w)` for all `v, w`; with zero trace this defines `S`.
pub fn is_form_symmetric(idx: &IndexData, op: &SparseOp) -> bool {
    let omega = form_matrix(idx);
    let mut defect = omega.compose(op);
    for ((j, k), c) in &op.entries {
        for ((j2, l), w) in &omega.entries {
            if j2 == j {
                defect.add(*k, *l, &(-(c * w)));
            }
        }
    }
    defect.is_zero()
}

fn eps_weight(n: usize, entries: &[(usize, i64)]) -> Vec<i64> {
    let mut w = vec![0i64; n];
    for (i, c) in entries {
        w[*i] += c;
    }
    w
}

/// Weight basis of `G = sp(V)`: `e_{i,j} - e_{jbar,ibar}` (i != j),
/// `e_{i,jbar} + e_{j,ibar}` (i < j) with `e_{i,ibar}` at the doubled
/// weights, the barred mirror family, and the Cartan elements
/// `h_i = e_{i,i} - e_{ibar,ibar}`. Dimension `n(2n+1)`.
pub fn build_g(idx: &IndexData) -> Vec<WeightedOp> {
    let n = idx.n;
    let d = idx.dim_v();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let op = SparseOp::unit(d, i, j)
                    .minus(&SparseOp::unit(d, idx.bar(j), idx.bar(i)));
                out.push(WeightedOp { op, weight: eps_weight(n, &[(i, 1), (j, -1)]) });
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            let op = if i == j {
                SparseOp::unit(d, i, idx.bar(i))
            } else {
                SparseOp::unit(d, i, idx.bar(j)).plus(&SparseOp::unit(d, j, idx.bar(i)))
            };
            out.push(WeightedOp { op, weight: eps_weight(n, &[(i, 1), (j, 1)]) });
        }
    }
    for i in 0..n {
        for j in i..n {
            let op = if i == j {
                SparseOp::unit(d, idx.bar(i), i)
            } else {
                SparseOp::unit(d, idx.bar(i), j).plus(&SparseOp::unit(d, idx.bar(j), i))
            };
            out.push(WeightedOp { op, weight: eps_weight(n, &[(i, -1), (j, -1)]) });
        }
    }
    for i in 0..n {
        let op = SparseOp::unit(d, i, i).minus(&SparseOp::unit(d, idx.bar(i), idx.bar(i)));
        out.push(WeightedOp { op, weight: vec![0; n] });
    }
    out
}

/// Weight basis of `S`, the trace-zero form-symmetric operators:
/// `e_{i,jbar} - e_{j,ibar}` and `e_{ibar,j} - e_{jbar,i}` (i < j),
/// `e_{i,j} + e_{jbar,ibar}` (i != j), and the `n - 1` diagonal elements
/// `e_{r,r} + e_{rbar,rbar} - (1/n) sum_i (e_{i,i} + e_{ibar,ibar})`.
/// Dimension `2n^2 - n - 1`; requires `n >= 2`.
pub fn build_s(idx: &IndexData) -> Result<Vec<WeightedOp>, SymplecticError> {
    let n = idx.n;
    if n < 2 {
        return Err(SymplecticError::RankTooSmall { n, need: 2 });
    }
    let d = idx.dim_v();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let op = SparseOp::unit(d, i, idx.bar(j)).minus(&SparseOp::unit(d, j, idx.bar(i)));
            out.push(WeightedOp { op, weight: eps_weight(n, &[(i, 1), (j, 1)]) });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let op = SparseOp::unit(d, idx.bar(i), j).minus(&SparseOp::unit(d, idx.bar(j), i));
            out.push(WeightedOp { op, weight: eps_weight(n, &[(i, -1), (j, -1)]) });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let op = SparseOp::unit(d, i, j).plus(&SparseOp::unit(d, idx.bar(j), idx.bar(i)));
                out.push(WeightedOp { op, weight: eps_weight(n, &[(i, 1), (j, -1)]) });
            }
        }
    }
    let avg = qr(1, n as i64);
    for r in 0..(n - 1) {
        let mut op = SparseOp::unit(d, r, r).plus(&SparseOp::unit(d, idx.bar(r), idx.bar(r)));
        for i in 0..n {
            op.add(i, i, &-avg.clone());
            op.add(idx.bar(i), idx.bar(i), &-avg.clone());
        }
        out.push(WeightedOp { op, weight: vec![0; n] });
    }
    Ok(out)
}

/// Weight basis of `V`: `v_i` at weight `eps_i`, `v_ibar` at `-eps_i`.
pub fn build_v(idx: &IndexData) -> Vec<(QVec, Vec<i64>)> {
    let d = idx.dim_v();
    let mut out = Vec::new();
    for i in 0..idx.n {
        out.push((QVec::unit(d, i), eps_weight(idx.n, &[(i, 1)])));
    }
    for i in 0..idx.n {
        out.push((QVec::unit(d, idx.bar(i)), eps_weight(idx.n, &[(i, -1)])));
    }
    out
}

/// Diagonal idempotent onto `span{v_r, v_rbar : r in lam}`; trace `2|lam|`.
pub fn projector(idx: &IndexData, lam: &[usize]) -> SparseOp {
    let mut op = SparseOp::zero(idx.dim_v());
    for &r in lam {
        assert!(r < idx.n);
        op.add(r, r, &qi(1));
        op.add(idx.bar(r), idx.bar(r), &qi(1));
    }
    op
}

/// The projector at the distinguished subset `I_0`.
pub fn j0(idx: &IndexData) -> SparseOp {
    projector(idx, &idx.i0())
}

/// Coordinates of a form-skew operator in the `build_g` basis, or `None`
/// if the operator is not in `G`. The basis supports are disjoint, so the
/// coordinates are direct entry reads, verified by reassembly.
pub fn g_coords(idx: &IndexData, op: &SparseOp) -> Option<Vec<Q>> {
    let n = idx.n;
    let mut coords = Vec::with_capacity(n * (2 * n + 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                coords.push(op.get(i, j));
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            coords.push(op.get(i, idx.bar(j)));
        }
    }
    for i in 0..n {
        for j in i..n {
            coords.push(op.get(idx.bar(i), j));
        }
    }
    for i in 0..n {
        coords.push(op.get(i, i));
    }
    let basis = build_g(idx);
    let mut rebuilt = SparseOp::zero(idx.dim_v());
    for (c, b) in coords.iter().zip(&basis) {
        rebuilt = rebuilt.plus(&b.op.scaled(c));
    }
    (&rebuilt == op).then_some(coords)
}

/// Coordinates of a trace-zero form-symmetric operator in the `build_s`
/// basis, or `None` if the operator is not in `S`.
pub fn s_coords(idx: &IndexData, op: &SparseOp) -> Option<Vec<Q>> {
    let n = idx.n;
    let mut coords = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            coords.push(op.get(i, idx.bar(j)));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            coords.push(op.get(idx.bar(i), j));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                coords.push(op.get(i, j));
            }
        }
    }
    let last = op.get(n - 1, n - 1);
    for r in 0..(n - 1) {
        coords.push(op.get(r, r) - &last);
    }
    let basis = build_s(idx).ok()?;
    let mut rebuilt = SparseOp::zero(idx.dim_v());
    for (c, b) in coords.iter().zip(&basis) {
        rebuilt = rebuilt.plus(&b.op.scaled(c));
    }
    (&rebuilt == op).then_some(coords)
}

/// Membership in `G U S` (the precondition of the trace-corrected product).
pub fn in_g_or_s(idx: &IndexData, op: &SparseOp) -> bool {
    is_form_skew(idx, op) || (is_form_symmetric(idx, op) && op.trace().is_zero())
}

/// `e o f = ef + fe - (tr(ef)/ell) J_0` for `e, f` in `G U S`.
pub fn circ_trace(idx: &IndexData, e: &SparseOp, f: &SparseOp) -> Result<SparseOp, SymplecticError> {
    if !in_g_or_s(idx, e) || !in_g_or_s(idx, f) {
        return Err(SymplecticError::NotInGS);
    }
    Ok(circ_trace_unchecked(idx, e, f))
}

pub(crate) fn circ_trace_unchecked(idx: &IndexData, e: &SparseOp, f: &SparseOp) -> SparseOp {
    let ef = e.compose(f);
    let t = ef.trace();
    let mut out = ef.plus(&f.compose(e));
    if !t.is_zero() {
        out = out.minus(&j0(idx).scaled(&(t * qr(1, idx.ell as i64))));
    }
    out
}

/// The two operators attached to a pair of vectors of `V`:
///
/// ```text
/// sym(u, w):  x -> -1/2 ((x,u) w + (x,w) u)                      (lies in G)
/// skew(u, w): x ->  1/2 ((x,u) w - (x,w) u) + ((u,w)/2l) J_0 x   (lies in S)
/// ```
///
/// `sym` is symmetric in `(u, w)`, `skew` antisymmetric; the scalars are
/// pinned by the Jacobi identity of the graded bracket (see the
/// calibration test in the graded module).
pub fn v_ops(idx: &IndexData, u: &QVec, w: &QVec) -> (SparseOp, SparseOp) {
    let d = idx.dim_v();
    let half = qr(1, 2);
    // (e_c, u) for each basis index c
    let pair_with = |vec: &QVec| -> Vec<Q> {
        (0..d).map(|c| form_eval(idx, &QVec::unit(d, c), vec)).collect()
    };
    let pu = pair_with(u);
    let pw = pair_with(w);
    let mut sym = SparseOp::zero(d);
    let mut skew = SparseOp::zero(d);
    for c in 0..d {
        if !pu[c].is_zero() {
            for (r, wr) in w.iter() {
                sym.add(r, c, &(-(&half) * &pu[c] * wr));
                skew.add(r, c, &(&half * &pu[c] * wr));
            }
        }
        if !pw[c].is_zero() {
            for (r, ur) in u.iter() {
                sym.add(r, c, &(-(&half) * &pw[c] * ur));
                skew.add(r, c, &(-(&half) * &pw[c] * ur));
            }
        }
    }
    let uw = form_eval(idx, u, w);
    if !uw.is_zero() {
        skew = skew.plus(&j0(idx).scaled(&(uw * qr(1, 2 * idx.ell as i64))));
    }
    (sym, skew)
}

// ---------------------------------------------------------------------------
// weight decomposition and submodule generation
// ---------------------------------------------------------------------------

/// Express the images of a linear action in the coordinates of a spanning
/// list. Returns the action matrix in list-coordinates, or `None` if an
/// image leaves the span.
fn action_matrix(solver: &SpanSolver, images: &[QVec]) -> Option<Matrix> {
    let m = images.len();
    let mut out = Matrix::zero(m, m);
    for (j, img) in images.iter().enumerate() {
        let x = solver.coords(img)?;
        for (i, c) in x.iter() {
            out.set(i, j, c.clone());
        }
    }
    Some(out)
}

/// Simultaneous eigenspace decomposition of a list of commuting,
/// semisimple, integer-spectrum matrices acting on `F^dim`. Returns
/// `(weight, subspace)` pairs keyed by the eigenvalue tuples.
pub fn simultaneous_eigenspaces(
    mats: &[Matrix],
    dim: usize,
) -> Result<Vec<(Vec<i64>, Subspace)>, SymplecticError> {
    let mut parts: Vec<(Vec<i64>, Subspace)> = vec![(Vec::new(), Subspace::full(dim))];
    for m in mats {
        let mut next = Vec::new();
        for (w, space) in &parts {
            let restricted = crate::linalg::restrict_to_basis(m, space);
            let eig = integer_eigenspaces(&restricted).ok_or(SymplecticError::NotClosed)?;
            for (lam, sub) in eig {
                let mut lifted = Subspace::zero(dim);
                for v in sub.basis() {
                    lifted.insert(&space.from_coords(&v.to_dense()));
                }
                let mut w2 = w.clone();
                w2.push(lam);
                next.push((w2, lifted));
            }
        }
        parts = next;
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(parts)
}

/// Weight decomposition of a list of operators under the adjoint action of
/// the Cartan elements `h_i`. The subspaces are in the coordinates of the
/// input list.
pub fn weight_decompose_ops(
    idx: &IndexData,
    ops: &[SparseOp],
) -> Result<Vec<(Vec<i64>, Subspace)>, SymplecticError> {
    let flat: Vec<QVec> = ops.iter().map(SparseOp::flatten).collect();
    let solver = SpanSolver::new(&flat);
    let mut mats = Vec::new();
    for i in 0..idx.n {
        let h = SparseOp::unit(idx.dim_v(), i, i)
            .minus(&SparseOp::unit(idx.dim_v(), idx.bar(i), idx.bar(i)));
        let images: Vec<QVec> = ops.iter().map(|op| h.commutator(op).flatten()).collect();
        mats.push(action_matrix(&solver, &images).ok_or(SymplecticError::NotClosed)?);
    }
    simultaneous_eigenspaces(&mats, ops.len())
}

/// Weight decomposition of a list of vectors of `V` under the `h_i`.
pub fn weight_decompose_vectors(
    idx: &IndexData,
    vecs: &[QVec],
) -> Result<Vec<(Vec<i64>, Subspace)>, SymplecticError> {
    let solver = SpanSolver::new(vecs);
    let mut mats = Vec::new();
    for i in 0..idx.n {
        let h = SparseOp::unit(idx.dim_v(), i, i)
            .minus(&SparseOp::unit(idx.dim_v(), idx.bar(i), idx.bar(i)));
        let images: Vec<QVec> = vecs.iter().map(|v| h.apply(v)).collect();
        mats.push(action_matrix(&solver, &images).ok_or(SymplecticError::NotClosed)?);
    }
    simultaneous_eigenspaces(&mats, vecs.len())
}

/// The operators of `G` supported on a subset `lam` of the index set:
/// `G^lam`, per the intersection with `span{e_{r,s} : r, s in lam U lambar}`.
pub fn g_sub_basis(idx: &IndexData, lam: &[usize]) -> Vec<WeightedOp> {
    let inside: std::collections::BTreeSet<usize> = lam
        .iter()
        .flat_map(|&r| [r, idx.bar(r)])
        .collect();
    build_g(idx)
        .into_iter()
        .filter(|wop| {
            wop.op
                .entries
                .keys()
                .all(|(j, k)| inside.contains(j) && inside.contains(k))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{generated_submodule, kernel, span, LinearOp};

    fn idx(n: usize) -> IndexData {
        IndexData::new(n, n.min(4))
    }

    #[test]
    fn form_basic_values() {
        let ix = idx(2);
        let d = ix.dim_v();
        let v1 = QVec::unit(d, 0);
        let v1bar = QVec::unit(d, ix.bar(0));
        let v2 = QVec::unit(d, 1);
        assert_eq!(form_eval(&ix, &v1, &v1bar), qi(2));
        assert_eq!(form_eval(&ix, &v1bar, &v1), qi(-2));
        assert_eq!(form_eval(&ix, &v1, &v2), qi(0));
        assert_eq!(form_eval(&ix, &v1, &v1), qi(0));
    }

    #[test]
    fn g_dimension_and_skewness() {
        for n in 2..=4 {
            let ix = idx(n);
            let g = build_g(&ix);
            assert_eq!(g.len(), n * (2 * n + 1));
            for wop in &g {
                assert!(is_form_skew(&ix, &wop.op));
            }
            // the basis is linearly independent
            let flat: Vec<QVec> = g.iter().map(|w| w.op.flatten()).collect();
            assert_eq!(span(&flat, ix.dim_v() * ix.dim_v()).rank(), g.len());
        }
    }

    #[test]
    fn g_matches_brute_force_skewness_kernel_at_n2() {
        // independent oracle: solve the linear system M^T Omega + Omega M = 0
        // over all 4x4 matrices and compare spans
        let ix = idx(2);
        let d = ix.dim_v();
        let dim2 = d * d;
        let rows: Vec<QVec> = (0..dim2)
            .map(|p| {
                let (j, k) = (p / d, p % d);
                // contribution of unknown M[j][k] to the defect matrix
                let m = SparseOp::unit(d, j, k);
                let omega = form_matrix(&ix);
                let mut defect = omega.compose(&m);
                // add M^T Omega
                for ((a, b), w) in &omega.entries {
                    if *a == j {
                        defect.add(k, *b, w);
                    }
                }
                defect.flatten()
            })
            .collect();
        let solutions = kernel(&rows, dim2);
        assert_eq!(solutions.rank(), 10);
        let g = build_g(&ix);
        let g_span = span(&g.iter().map(|w| w.op.flatten()).collect::<Vec<_>>(), dim2);
        for sol in solutions.basis() {
            // sol is in M-coordinate space = flattened space directly
            assert!(g_span.contains(sol));
        }
    }

    #[test]
    fn s_dimension_and_symmetry() {
        for n in 2..=4 {
            let ix = idx(n);
            let s = build_s(&ix).unwrap();
            assert_eq!(s.len(), 2 * n * n - n - 1);
            for wop in &s {
                assert!(is_form_symmetric(&ix, &wop.op));
                assert!(wop.op.trace().is_zero());
            }
            let flat: Vec<QVec> = s.iter().map(|w| w.op.flatten()).collect();
            assert_eq!(span(&flat, ix.dim_v() * ix.dim_v()).rank(), s.len());
        }
    }

    #[test]
    fn s_rejects_rank_one() {
        assert!(matches!(
            build_s(&IndexData::new(1, 1)),
            Err(SymplecticError::RankTooSmall { .. })
        ));
    }

    #[test]
    fn g_weight_decomposition() {
        let n = 2;
        let ix = idx(n);
        let g = build_g(&ix);
        let ops: Vec<SparseOp> = g.iter().map(|w| w.op.clone()).collect();
        let parts = weight_decompose_ops(&ix, &ops).unwrap();
        let mut zero_dim = 0;
        for (w, space) in &parts {
            if w.iter().all(|c| *c == 0) {
                zero_dim = space.rank();
            } else {
                assert_eq!(space.rank(), 1, "root {w:?} should be one-dimensional");
            }
        }
        assert_eq!(zero_dim, n);
        // roots are exactly {+-e_i +- e_j} U {+-2e_i}
        let nonzero: Vec<Vec<i64>> =
            parts.iter().filter(|(w, _)| w.iter().any(|c| *c != 0)).map(|(w, _)| w.clone()).collect();
        assert_eq!(nonzero.len(), 2 * n * n);
        // declared weights match the computed decomposition
        for wop in &g {
            let coords_space = parts
                .iter()
                .find(|(w, _)| *w == wop.weight)
                .map(|(_, s)| s)
                .expect("declared weight appears");
            let mut coord_vec = QVec::zero(ops.len());
            let pos = g.iter().position(|x| x.op == wop.op).unwrap();
            coord_vec.set(pos, qi(1));
            assert!(coords_space.contains(&coord_vec));
        }
    }

    #[test]
    fn v_weight_decomposition() {
        let ix = idx(2);
        let vecs: Vec<QVec> = build_v(&ix).into_iter().map(|(v, _)| v).collect();
        let parts = weight_decompose_vectors(&ix, &vecs).unwrap();
        assert_eq!(parts.len(), 4);
        for (w, space) in &parts {
            assert_eq!(space.rank(), 1);
            assert_eq!(w.iter().map(|c| c.abs()).sum::<i64>(), 1);
        }
    }

    #[test]
    fn s_weight_decomposition() {
        let n = 2;
        let ix = idx(n);
        let s = build_s(&ix).unwrap();
        let ops: Vec<SparseOp> = s.iter().map(|w| w.op.clone()).collect();
        let parts = weight_decompose_ops(&ix, &ops).unwrap();
        let zero = parts.iter().find(|(w, _)| w.iter().all(|c| *c == 0)).unwrap();
        assert_eq!(zero.1.rank(), n - 1);
        for (w, space) in &parts {
            if w.iter().any(|c| *c != 0) {
                assert_eq!(space.rank(), 1);
                // weights of S are +-(e_i + e_j) and e_i - e_j, never 2e_i
                assert!(w.iter().all(|c| c.abs() <= 1), "unexpected S-weight {w:?}");
            }
        }
    }

    #[test]
    fn projector_values() {
        let ix = IndexData::new(4, 4);
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(projector(&ix, &all), SparseOp::identity(8));
        assert!(projector(&ix, &[]).is_zero());
        assert_eq!(j0(&ix).trace(), qi(8));
    }

    #[test]
    fn circ_trace_properties() {
        let ix = IndexData::new(4, 4);
        let g = build_g(&ix);
        // x = e_{0,0bar} squares to zero and is traceless
        let x = SparseOp::unit(8, 0, ix.bar(0));
        assert!(circ_trace(&ix, &x, &x).unwrap().is_zero());
        // symmetry and zero trace on a sample of pairs
        for a in g.iter().step_by(7) {
            for b in g.iter().step_by(5) {
                let ab = circ_trace(&ix, &a.op, &b.op).unwrap();
                let ba = circ_trace(&ix, &b.op, &a.op).unwrap();
                assert_eq!(ab, ba);
                assert!(ab.trace().is_zero());
            }
        }
        // a non-member is rejected
        let bad = SparseOp::unit(8, 0, 0);
        assert_eq!(circ_trace(&ix, &bad, &x), Err(SymplecticError::NotInGS));
    }

    #[test]
    fn closure_under_brackets() {
        let ix = IndexData::new(3, 3);
        let g = build_g(&ix);
        let s = build_s(&ix).unwrap();
        for a in &g {
            for b in &g {
                let c = a.op.commutator(&b.op);
                assert!(g_coords(&ix, &c).is_some(), "[G,G] left G");
            }
            for b in &s {
                let c = a.op.commutator(&b.op);
                assert!(s_coords(&ix, &c).is_some(), "[G,S] left S");
            }
        }
    }

    #[test]
    fn v_ops_membership_and_symmetry() {
        let ix = IndexData::new(4, 4);
        let d = ix.dim_v();
        let vecs = [QVec::unit(d, 0), QVec::unit(d, ix.bar(0)), QVec::unit(d, 2),
            QVec::unit(d, 1).plus(&QVec::unit(d, ix.bar(3)))];
        for u in &vecs {
            for w in &vecs {
                let (sym, skew) = v_ops(&ix, u, w);
                assert!(is_form_skew(&ix, &sym), "sym not in G");
                assert!(is_form_symmetric(&ix, &skew), "skew not form-symmetric");
                assert!(skew.trace().is_zero(), "skew not traceless");
                let (sym2, skew2) = v_ops(&ix, w, u);
                assert_eq!(sym, sym2);
                assert_eq!(skew, skew2.scaled(&qi(-1)));
            }
            let (_, skew_diag) = v_ops(&ix, u, u);
            assert!(skew_diag.is_zero());
        }
    }

    #[test]
    fn g_sub_basis_matches_lower_rank() {
        // operators of G at rank 5 supported on the first 4 indices are in
        // bijection with build_g at rank 4, with matching brackets
        let big = IndexData::new(5, 4);
        let small = IndexData::new(4, 4);
        let sub = g_sub_basis(&big, &[0, 1, 2, 3]);
        let low = build_g(&small);
        assert_eq!(sub.len(), low.len());
        // reindex big (n=5) J-indices onto small (n=4): i -> i, 5+i -> 4+i
        let reindex = |op: &SparseOp| -> SparseOp {
            let mut out = SparseOp::zero(small.dim_v());
            for ((j, k), c) in &op.entries {
                let rj = if *j >= 5 { j - 5 + 4 } else { *j };
                let rk = if *k >= 5 { k - 5 + 4 } else { *k };
                out.add(rj, rk, c);
            }
            out
        };
        for (a, b) in sub.iter().zip(&low) {
            assert_eq!(reindex(&a.op), b.op);
        }
        // brackets agree under the reindexing
        for a in sub.iter().step_by(3) {
            for b in sub.iter().step_by(4) {
                let big_br = reindex(&a.op.commutator(&b.op));
                let small_br = reindex(&a.op).commutator(&reindex(&b.op));
                assert_eq!(big_br, small_br);
            }
        }
    }

    #[test]
    fn projector_commutes_with_supported_subalgebra() {
        let ix = IndexData::new(5, 3);
        let jl = projector(&ix, &[0, 1, 2]);
        for wop in g_sub_basis(&ix, &[0, 1, 2]) {
            assert!(jl.commutator(&wop.op).is_zero());
        }
    }

    #[test]
    fn invariant_complement_of_trivial_summand() {
        // W = G (+) F as an sp(2)-module (adjoint plus a trivial line),
        // U = the trivial line; solving the commuting-projection system
        // returns exactly the adjoint block as the complement
        use crate::linalg::{invariant_complement, Matrix};
        let ix = idx(2);
        let g = build_g(&ix);
        let dim_w = g.len() + 1;
        let actions: Vec<Matrix> = g
            .iter()
            .map(|wop| {
                let mut m = Matrix::zero(dim_w, dim_w);
                for (j, b) in g.iter().enumerate() {
                    let img = wop.op.commutator(&b.op);
                    let coords = g_coords(&ix, &img).unwrap();
                    for (i, c) in coords.iter().enumerate() {
                        m.set(i, j, c.clone());
                    }
                }
                m
            })
            .collect();
        let w_space = Subspace::full(dim_w);
        let u = span(&[QVec::unit(dim_w, dim_w - 1)], dim_w);
        let refs: Vec<&dyn LinearOp> = actions.iter().map(|m| m as &dyn LinearOp).collect();
        let p = invariant_complement(&w_space, &refs, &u).unwrap();
        assert_eq!(p.rank(), g.len());
        for k in 0..g.len() {
            assert!(p.contains(&QVec::unit(dim_w, k)));
        }
        assert_eq!(u.intersection_rank(&p), 0);
        assert_eq!(u.sum(&p).rank(), dim_w);
        // the complement is preserved by every operator
        for m in &actions {
            for v in p.basis() {
                assert!(p.contains(&m.apply(v)));
            }
        }
    }

    #[test]
    fn s_and_v_are_irreducible_under_g() {
        let ix = idx(2);
        let g = build_g(&ix);
        // S under the commutator action: any single weight vector generates
        let s = build_s(&ix).unwrap();
        let dim2 = ix.dim_v() * ix.dim_v();
        let s_span = span(&s.iter().map(|w| w.op.flatten()).collect::<Vec<_>>(), dim2);
        let actions: Vec<Box<dyn Fn(&QVec) -> QVec>> = g
            .iter()
            .map(|w| {
                let op = w.op.clone();
                let d = ix.dim_v();
                Box::new(move |v: &QVec| {
                    let mut m = SparseOp::zero(d);
                    for (p, c) in v.iter() {
                        m.add(p / d, p % d, c);
                    }
                    op.commutator(&m).flatten()
                }) as Box<dyn Fn(&QVec) -> QVec>
            })
            .collect();
        let refs: Vec<&dyn LinearOp> = actions.iter().map(|b| b as &dyn LinearOp).collect();
        for seed_op in &s {
            let seed = span(&[seed_op.op.flatten()], dim2);
            let generated = generated_submodule(&seed, &refs, &s_span);
            assert_eq!(generated.rank(), s.len(), "S not generated from {:?}", seed_op.weight);
        }
        // V under the defining action
        let v_refs: Vec<&dyn LinearOp> =
            g.iter().map(|w| &w.op as &dyn LinearOp).collect();
        let v_amb = Subspace::full(ix.dim_v());
        for i in 0..ix.dim_v() {
            let seed = span(&[QVec::unit(ix.dim_v(), i)], ix.dim_v());
            let generated = generated_submodule(&seed, &v_refs, &v_amb);
            assert_eq!(generated.rank(), ix.dim_v(), "V not generated from v_{i}");
        }
    }

    #[test]
    fn adjoint_generates_all_of_g() {
        // sp_4 is simple: the submodule generated by a single root vector
        // under the adjoint action is everything
        let ix = idx(2);
        let g = build_g(&ix);
        let flat: Vec<QVec> = g.iter().map(|w| w.op.flatten()).collect();
        let dim2 = ix.dim_v() * ix.dim_v();
        let ambient = span(&flat, dim2);
        let seed = span(&[g[0].op.flatten()], dim2);
        let actions: Vec<Box<dyn Fn(&QVec) -> QVec>> = g
            .iter()
            .map(|w| {
                let op = w.op.clone();
                let d = ix.dim_v();
                Box::new(move |v: &QVec| {
                    // commutator action on flattened operators
                    let mut m = SparseOp::zero(d);
                    for (p, c) in v.iter() {
                        m.add(p / d, p % d, c);
                    }
                    op.commutator(&m).flatten()
                }) as Box<dyn Fn(&QVec) -> QVec>
            })
            .collect();
        let action_refs: Vec<&dyn LinearOp> = actions.iter().map(|b| b as &dyn LinearOp).collect();
        let generated = generated_submodule(&seed, &action_refs, &ambient);
        assert_eq!(generated.rank(), g.len());
    }
}
