//! Exact linear algebra over the rationals.
//!
//! Everything downstream (relation spaces, homology kernels, weight
//! decompositions, extension certificates) reduces to spans, kernels and
//! quotients of sparse rational vectors. All arithmetic is exact: rationals
//! are arbitrary-precision `BigRational`s and no floating point appears
//! anywhere in the crate.
//!
//! Row reduction is deterministic: pivots are the leftmost nonzero columns
//! and input vectors are processed in order, so reduced bases and canonical
//! coset representatives are reproducible across runs.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

/// Rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Rational `n/d`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    /// `invariant_complement` found the commuting-projection system unsolvable.
    NoComplement,
    /// A vector index fell outside the declared ambient dimension.
    IndexOutOfRange { index: usize, dim: usize },
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::NoComplement => {
                write!(f, "no action-commuting projection exists (module not completely reducible)")
            }
            LinAlgError::IndexOutOfRange { index, dim } => {
                write!(f, "index {index} out of range for ambient dimension {dim}")
            }
        }
    }
}

impl std::error::Error for LinAlgError {}

/// Sparse rational vector in a fixed ambient dimension.
///
/// Invariant: no zero coefficient is ever stored and every index is below
/// `dim`.
#[derive(Clone, PartialEq, Eq)]
pub struct QVec {
    dim: usize,
    entries: BTreeMap<usize, Q>,
}

impl fmt::Debug for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QVec{}{{", self.dim)?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {v}")?;
        }
        write!(f, "}}")
    }
}

impl QVec {
    pub fn zero(dim: usize) -> Self {
        QVec { dim, entries: BTreeMap::new() }
    }

    /// Standard basis vector `e_index`.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = QVec::zero(dim);
        v.set(index, Q::one());
        v
    }

    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self, LinAlgError>
    where
        I: IntoIterator<Item = (usize, Q)>,
    {
        let mut v = QVec::zero(dim);
        for (i, c) in entries {
            if i >= dim {
                return Err(LinAlgError::IndexOutOfRange { index: i, dim });
            }
            let cur = v.get(i) + c;
            v.set(i, cur);
        }
        Ok(v)
    }

    pub fn from_dense(coords: &[Q]) -> Self {
        let mut v = QVec::zero(coords.len());
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                v.entries.insert(i, c.clone());
            }
        }
        v
    }

    pub fn to_dense(&self) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        assert!(i < self.dim, "index {i} out of range for dim {}", self.dim);
        self.entries.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, i: usize, c: Q) {
        assert!(i < self.dim, "index {i} out of range for dim {}", self.dim);
        if c.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Leftmost nonzero coordinate, if any.
    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.entries.iter().next().map(|(i, c)| (*i, c))
    }

    /// `self += coeff * other`.
    pub fn add_scaled(&mut self, other: &QVec, coeff: &Q) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if coeff.is_zero() {
            return;
        }
        for (i, c) in &other.entries {
            let cur = self.entries.get(i).cloned().unwrap_or_else(Q::zero) + c * coeff;
            if cur.is_zero() {
                self.entries.remove(i);
            } else {
                self.entries.insert(*i, cur);
            }
        }
    }

    pub fn plus(&self, other: &QVec) -> QVec {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn minus(&self, other: &QVec) -> QVec {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn scaled(&self, coeff: &Q) -> QVec {
        let mut out = QVec::zero(self.dim);
        out.add_scaled(self, coeff);
        out
    }

    pub fn neg(&self) -> QVec {
        self.scaled(&-Q::one())
    }

    /// Reinterpret in a larger ambient dimension (indices unchanged).
    pub fn extended(&self, dim: usize) -> QVec {
        assert!(dim >= self.dim);
        QVec { dim, entries: self.entries.clone() }
    }
}

/// A linear operator usable by the generic subspace machinery.
pub trait LinearOp {
    fn apply(&self, v: &QVec) -> QVec;
}

impl<F: Fn(&QVec) -> QVec> LinearOp for F {
    fn apply(&self, v: &QVec) -> QVec {
        self(v)
    }
}

/// Dense rational matrix, row-major. Used for operators on small spaces
/// (coordinate algebras, derivations of `b`) and for homomorphism matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Q) -> Self {
        let mut m = Matrix::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_cols(rows: usize, cols: &[QVec]) -> Self {
        let mut m = Matrix::zero(rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.dim(), rows);
            for (i, c) in v.iter() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Q) {
        let cur = self.get(r, c).clone() + v;
        self.set(r, c, cur);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn plus(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn minus(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scaled(&self, coeff: &Q) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= coeff;
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.add_to(r, c, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).minus(&other.mul(self))
    }

    pub fn apply(&self, v: &QVec) -> QVec {
        assert_eq!(v.dim(), self.cols);
        let mut out = QVec::zero(self.rows);
        for (j, c) in v.iter() {
            for r in 0..self.rows {
                let a = self.get(r, j);
                if !a.is_zero() {
                    let cur = out.get(r) + a * c;
                    out.set(r, cur);
                }
            }
        }
        out
    }

    /// Row-major flattening into a sparse vector of length `rows*cols`.
    pub fn flatten(&self) -> QVec {
        let mut v = QVec::zero(self.rows * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() {
                    v.set(r * self.cols + c, a.clone());
                }
            }
        }
        v
    }
}

impl LinearOp for Matrix {
    fn apply(&self, v: &QVec) -> QVec {
        Matrix::apply(self, v)
    }
}

/// Subspace of `F^ambient` held as a reduced row-echelon basis.
///
/// Each row's pivot coefficient is 1, every other row is zero in that
/// column, and rows are ordered by pivot. This makes membership tests and
/// canonical coset representatives cheap and deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<QVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| QVec::unit(ambient, i)).collect();
        Subspace { ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[QVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical coset representative of `v` modulo this subspace: the pivot
    /// coordinates of the result are zero. `reduce(v) == reduce(w)` iff
    /// `v - w` lies in the subspace.
    pub fn reduce(&self, v: &QVec) -> QVec {
        assert_eq!(v.dim(), self.ambient, "ambient dimension mismatch");
        let mut out = v.clone();
        for (row, p) in self.rows.iter().zip(&self.pivots) {
            let c = out.get(*p);
            if !c.is_zero() {
                out.add_scaled(row, &-c);
            }
        }
        out
    }

    pub fn contains(&self, v: &QVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Insert a vector, keeping the basis in RREF. Returns true if the rank grew.
    pub fn insert(&mut self, v: &QVec) -> bool {
        let mut red = self.reduce(v);
        let Some((pivot, lead)) = red.leading().map(|(i, c)| (i, c.clone())) else {
            return false;
        };
        red = red.scaled(&(Q::one() / lead));
        // Back-substitute into the existing rows so the new pivot column clears.
        for row in self.rows.iter_mut() {
            let c = row.get(pivot);
            if !c.is_zero() {
                row.add_scaled(&red, &-c);
            }
        }
        let pos = self.pivots.binary_search(&pivot).unwrap_err();
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, red);
        true
    }

    /// Coordinates of `v` with respect to the RREF basis, or `None` if `v`
    /// is not in the subspace. For an RREF basis these are just the pivot
    /// coordinates of `v`.
    pub fn coords_of(&self, v: &QVec) -> Option<Vec<Q>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|p| v.get(*p)).collect())
    }

    /// Linear combination of basis rows with the given coefficients.
    pub fn from_coords(&self, coords: &[Q]) -> QVec {
        assert_eq!(coords.len(), self.rank());
        let mut out = QVec::zero(self.ambient);
        for (row, c) in self.rows.iter().zip(coords) {
            out.add_scaled(row, c);
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r);
        }
        out
    }

    pub fn intersection_rank(&self, other: &Subspace) -> usize {
        self.rank() + other.rank() - self.sum(other).rank()
    }
}

/// Row-reduced span of a list of vectors. Deterministic: vectors are
/// processed in input order and pivots are leftmost nonzero columns.
pub fn span(vectors: &[QVec], ambient: usize) -> Subspace {
    let mut s = Subspace::zero(ambient);
    for v in vectors {
        s.insert(v);
    }
    s
}

/// Repeated coordinate solves against a fixed independent spanning list:
/// row-reduce once, remembering each reduced row as a combination of the
/// inputs, then express further vectors by reduction.
pub struct SpanSolver {
    n_inputs: usize,
    rows: Vec<(QVec, QVec)>, // (reduced row, combination over the inputs)
    pivots: Vec<usize>,
}

impl SpanSolver {
    /// Panics if the input list is linearly dependent.
    pub fn new(vectors: &[QVec]) -> Self {
        let n = vectors.len();
        let mut solver = SpanSolver { n_inputs: n, rows: Vec::new(), pivots: Vec::new() };
        for (i, v) in vectors.iter().enumerate() {
            let mut row = v.clone();
            let mut combo = QVec::unit(n, i);
            for ((rrow, rcombo), p) in solver.rows.iter().zip(&solver.pivots) {
                let c = row.get(*p);
                if !c.is_zero() {
                    let nc = -c;
                    row.add_scaled(rrow, &nc);
                    combo.add_scaled(rcombo, &nc);
                }
            }
            let (p, lead) = row
                .leading()
                .map(|(p, c)| (p, c.clone()))
                .expect("SpanSolver inputs must be linearly independent");
            let inv = Q::one() / lead;
            let pos = solver.pivots.binary_search(&p).unwrap_err();
            solver.pivots.insert(pos, p);
            solver.rows.insert(pos, (row.scaled(&inv), combo.scaled(&inv)));
        }
        solver
    }

    /// Coordinates of `v` over the input list, or `None` if `v` is outside
    /// the span.
    pub fn coords(&self, v: &QVec) -> Option<QVec> {
        let mut rem = v.clone();
        let mut out = QVec::zero(self.n_inputs);
        for ((rrow, rcombo), p) in self.rows.iter().zip(&self.pivots) {
            let c = rem.get(*p);
            if !c.is_zero() {
                rem.add_scaled(rrow, &-c.clone());
                out.add_scaled(rcombo, &c);
            }
        }
        rem.is_zero().then_some(out)
    }
}

/// Null space of the linear map `F^n -> F^m` that sends the `i`-th standard
/// basis vector to `rows[i]`. The result is a subspace of `F^n` with
/// `rank(map) + nullity = n`.
pub fn kernel(rows: &[QVec], codomain_dim: usize) -> Subspace {
    let n = rows.len();
    // Row-reduce while tracking the combination of input rows forming each
    // reduced row; combinations that reduce to zero are kernel vectors.
    let mut reduced: Vec<(QVec, QVec)> = Vec::new(); // (image row, combination)
    let mut pivots: Vec<usize> = Vec::new();
    let mut ker = Subspace::zero(n);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r.dim(), codomain_dim, "row dimension mismatch");
        let mut row = r.clone();
        let mut combo = QVec::unit(n, i);
        for ((rrow, rcombo), p) in reduced.iter().zip(&pivots) {
            let c = row.get(*p);
            if !c.is_zero() {
                let nc = -c;
                row.add_scaled(rrow, &nc);
                combo.add_scaled(rcombo, &nc);
            }
        }
        match row.leading().map(|(p, c)| (p, c.clone())) {
            Some((p, lead)) => {
                let inv = Q::one() / lead;
                row = row.scaled(&inv);
                let combo = combo.scaled(&inv);
                let pos = pivots.binary_search(&p).unwrap_err();
                pivots.insert(pos, p);
                reduced.insert(pos, (row, combo));
            }
            None => {
                ker.insert(&combo);
            }
        }
    }
    ker
}

/// Solve `A x = b` where `A`'s rows are given sparsely over `unknowns`
/// columns. Returns one particular solution (free variables set to zero),
/// or `None` if the system is inconsistent.
pub fn solve(rows: &[QVec], rhs: &[Q], unknowns: usize) -> Option<Vec<Q>> {
    assert_eq!(rows.len(), rhs.len());
    // Augmented reduction over columns 0..unknowns with rhs as column `unknowns`.
    let mut reduced: Vec<QVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (r, b) in rows.iter().zip(rhs) {
        assert_eq!(r.dim(), unknowns);
        let mut row = r.extended(unknowns + 1);
        if !b.is_zero() {
            row.set(unknowns, b.clone());
        }
        for (rrow, p) in reduced.iter().zip(&pivots) {
            let c = row.get(*p);
            if !c.is_zero() {
                row.add_scaled(rrow, &-c);
            }
        }
        if let Some((p, lead)) = row.leading().map(|(i, c)| (i, c.clone())) {
            if p == unknowns {
                return None; // 0 = nonzero
            }
            row = row.scaled(&(Q::one() / lead));
            for (rrow, rp) in reduced.iter_mut().zip(&pivots) {
                debug_assert_ne!(*rp, p);
                let c = rrow.get(p);
                if !c.is_zero() {
                    rrow.add_scaled(&row, &-c);
                }
            }
            let pos = pivots.binary_search(&p).unwrap_err();
            pivots.insert(pos, p);
            reduced.insert(pos, row);
        }
    }
    let mut x = vec![Q::zero(); unknowns];
    for (row, p) in reduced.iter().zip(&pivots) {
        x[*p] = row.get(unknowns);
    }
    Some(x)
}

/// Matrix of `op` restricted to a subspace, in the subspace's basis
/// coordinates. Panics if the operator leaves the subspace.
pub fn restrict_to_basis(op: &dyn LinearOp, space: &Subspace) -> Matrix {
    let r = space.rank();
    let mut m = Matrix::zero(r, r);
    for (j, bv) in space.basis().iter().enumerate() {
        let img = op.apply(bv);
        let coords = space
            .coords_of(&img)
            .unwrap_or_else(|| panic!("operator does not preserve the subspace"));
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

/// Action-invariant complement: given `U <= W` with both closed under every
/// listed operator, find `P` with `W = U (+) P` and `op(P) <= P` for every
/// operator. Solves for a projection `q : W -> U` commuting with the action
/// and restricting to the identity on `U`; `P` is its kernel.
pub fn invariant_complement(
    w: &Subspace,
    action: &[&dyn LinearOp],
    u: &Subspace,
) -> Result<Subspace, LinAlgError> {
    assert!(w.contains_subspace(u), "U must be contained in W");
    let wr = w.rank();
    let ur = u.rank();
    if ur == wr {
        return Ok(Subspace::zero(w.ambient_dim()));
    }
    if ur == 0 {
        return Ok(w.clone());
    }
    // Operators in W- and U-coordinates.
    let gw: Vec<Matrix> = action.iter().map(|op| restrict_to_basis(*op, w)).collect();
    let gu: Vec<Matrix> = action.iter().map(|op| restrict_to_basis(*op, u)).collect();
    // U's basis in W-coordinates: iota is wr x ur.
    let mut iota = Matrix::zero(wr, ur);
    for (j, ub) in u.basis().iter().enumerate() {
        let coords = w.coords_of(ub).expect("U must be contained in W");
        for (i, c) in coords.into_iter().enumerate() {
            iota.set(i, j, c);
        }
    }
    // Unknowns: q (ur x wr), flattened row-major.
    let unknowns = ur * wr;
    let qidx = |r: usize, c: usize| r * wr + c;
    let mut rows: Vec<QVec> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    // q * iota = Id_U
    for r in 0..ur {
        for c in 0..ur {
            let mut eq = QVec::zero(unknowns);
            for k in 0..wr {
                let v = iota.get(k, c);
                if !v.is_zero() {
                    eq.set(qidx(r, k), v.clone());
                }
            }
            rows.push(eq);
            rhs.push(if r == c { Q::one() } else { Q::zero() });
        }
    }
    // q * G_W = G_U * q, for every operator
    for (mw, mu) in gw.iter().zip(&gu) {
        for r in 0..ur {
            for c in 0..wr {
                let mut eq = QVec::zero(unknowns);
                for k in 0..wr {
                    let v = mw.get(k, c);
                    if !v.is_zero() {
                        eq.set(qidx(r, k), eq.get(qidx(r, k)) + v);
                    }
                }
                for k in 0..ur {
                    let v = mu.get(r, k);
                    if !v.is_zero() {
                        eq.set(qidx(k, c), eq.get(qidx(k, c)) - v);
                    }
                }
                rows.push(eq);
                rhs.push(Q::zero());
            }
        }
    }
    let sol = solve(&rows, &rhs, unknowns).ok_or(LinAlgError::NoComplement)?;
    let mut qmat = Matrix::zero(ur, wr);
    for r in 0..ur {
        for c in 0..wr {
            qmat.set(r, c, sol[qidx(r, c)].clone());
        }
    }
    // P = ker(q), expressed back in ambient coordinates.
    let qrows: Vec<QVec> = (0..wr)
        .map(|c| {
            let mut col = QVec::zero(ur);
            for r in 0..ur {
                let v = qmat.get(r, c);
                if !v.is_zero() {
                    col.set(r, v.clone());
                }
            }
            col
        })
        .collect();
    let ker_w = kernel(&qrows, ur);
    let mut p = Subspace::zero(w.ambient_dim());
    for kv in ker_w.basis() {
        p.insert(&w.from_coords(&kv.to_dense()));
    }
    Ok(p)
}

/// Smallest subspace of `ambient` containing `seed` and closed under every
/// operator. Grows the span to a fixed point; terminates because the rank
/// strictly increases.
pub fn generated_submodule(
    seed: &Subspace,
    action: &[&dyn LinearOp],
    ambient: &Subspace,
) -> Subspace {
    let mut out = seed.clone();
    let mut frontier: Vec<QVec> = seed.basis().to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for op in action {
                let img = op.apply(v);
                debug_assert!(ambient.contains(&img), "action leaves the ambient space");
                if out.insert(&img) {
                    next.push(img);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Gershgorin-style bound on the absolute value of any eigenvalue.
fn eigenvalue_bound(m: &Matrix) -> i64 {
    let mut best = Q::zero();
    for r in 0..m.rows() {
        let mut s = Q::zero();
        for c in 0..m.cols() {
            s += m.get(r, c).abs();
        }
        if s > best {
            best = s;
        }
    }
    // ceil to an integer
    let (num, den) = (best.numer().clone(), best.denom().clone());
    let q = &num / &den;
    let bound = if &q * den == num { q } else { q + 1u32 };
    i64::try_from(&bound).unwrap_or(i64::MAX)
}

/// Split `F^dim` into eigenspaces of a matrix known to be diagonalizable
/// with integer eigenvalues. Returns `(eigenvalue, eigenspace)` pairs in
/// ascending eigenvalue order, or `None` if the eigenspaces fail to fill the
/// space (non-integral spectrum or non-semisimple action).
pub fn integer_eigenspaces(m: &Matrix) -> Option<Vec<(i64, Subspace)>> {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return Some(Vec::new());
    }
    let bound = eigenvalue_bound(m);
    let mut out = Vec::new();
    let mut total = 0usize;
    for lam in -bound..=bound {
        let shifted_rows: Vec<QVec> = (0..n)
            .map(|j| {
                // column j of (m - lam I), viewed as the image of e_j
                let mut v = QVec::zero(n);
                for i in 0..n {
                    let mut val = m.get(i, j).clone();
                    if i == j {
                        val -= qi(lam);
                    }
                    if !val.is_zero() {
                        v.set(i, val);
                    }
                }
                v
            })
            .collect();
        let ker = kernel(&shifted_rows, n);
        if ker.rank() > 0 {
            total += ker.rank();
            out.push((lam, ker));
        }
        if total == n {
            break;
        }
    }
    if total == n {
        Some(out)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(dim: usize, entries: &[(usize, i64)]) -> QVec {
        QVec::from_entries(dim, entries.iter().map(|(i, c)| (*i, qi(*c)))).unwrap()
    }

    #[test]
    fn span_standard_basis() {
        let s = span(&[v(2, &[(0, 1)]), v(2, &[(1, 1)])], 2);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.basis()[0], v(2, &[(0, 1)]));
        assert_eq!(s.basis()[1], v(2, &[(1, 1)]));
    }

    #[test]
    fn span_empty_and_dependent() {
        assert_eq!(span(&[], 5).rank(), 0);
        let s = span(&[v(2, &[(0, 1), (1, 1)]), v(2, &[(0, 2), (1, 2)])], 2);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.basis()[0], v(2, &[(0, 1), (1, 1)]));
    }

    #[test]
    fn span_is_idempotent() {
        let s = span(&[v(3, &[(0, 2), (2, 4)]), v(3, &[(1, 3), (2, 1)]), v(3, &[(0, 1), (1, 3), (2, 3)])], 3);
        let s2 = span(s.basis(), 3);
        assert_eq!(s, s2);
    }

    #[test]
    fn kernel_zero_and_identity_maps() {
        let zero_rows: Vec<QVec> = (0..3).map(|_| QVec::zero(2)).collect();
        assert_eq!(kernel(&zero_rows, 2).rank(), 3);
        let id_rows: Vec<QVec> = (0..3).map(|i| QVec::unit(3, i)).collect();
        assert_eq!(kernel(&id_rows, 3).rank(), 0);
    }

    #[test]
    fn kernel_single_relation() {
        // map F^2 -> F^1, e0 -> 1, e1 -> 1; kernel = span{(1,-1)}
        let rows = vec![v(1, &[(0, 1)]), v(1, &[(0, 1)])];
        let k = kernel(&rows, 1);
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&v(2, &[(0, 1), (1, -1)])));
    }

    #[test]
    fn kernel_rank_nullity() {
        let rows = vec![
            v(3, &[(0, 1), (1, 2)]),
            v(3, &[(0, 2), (1, 4)]),
            v(3, &[(2, 1)]),
            v(3, &[(0, 1), (1, 2), (2, 1)]),
        ];
        let k = kernel(&rows, 3);
        let rank = span(&rows, 3).rank();
        assert_eq!(rank + k.rank(), 4);
        // every kernel vector maps to zero exactly
        for kv in k.basis() {
            let mut img = QVec::zero(3);
            for (i, c) in kv.iter() {
                img.add_scaled(&rows[i], c);
            }
            assert!(img.is_zero());
        }
    }

    #[test]
    fn reduce_members_and_trivial_subspace() {
        let k = span(&[v(3, &[(0, 1), (1, 1)]), v(3, &[(2, 1)])], 3);
        for b in k.basis() {
            assert!(k.reduce(b).is_zero());
        }
        let trivial = Subspace::zero(3);
        let x = v(3, &[(0, 5), (1, -2)]);
        assert_eq!(trivial.reduce(&x), x);
        // idempotence
        let y = v(3, &[(0, 7), (1, 1), (2, 3)]);
        assert_eq!(k.reduce(&k.reduce(&y)), k.reduce(&y));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        // x + y = 3, x - y = 1 -> x = 2, y = 1
        let rows = vec![v(2, &[(0, 1), (1, 1)]), v(2, &[(0, 1), (1, -1)])];
        let sol = solve(&rows, &[qi(3), qi(1)], 2).unwrap();
        assert_eq!(sol, vec![qi(2), qi(1)]);
        // x + y = 1, x + y = 2 -> inconsistent
        let rows = vec![v(2, &[(0, 1), (1, 1)]), v(2, &[(0, 1), (1, 1)])];
        assert!(solve(&rows, &[qi(1), qi(2)], 2).is_none());
    }

    #[test]
    fn invariant_complement_degenerate_cases() {
        let w = span(&[v(3, &[(0, 1)]), v(3, &[(1, 1)]), v(3, &[(2, 1)])], 3);
        let ops: Vec<&dyn LinearOp> = Vec::new();
        // U = W -> P = 0
        let p = invariant_complement(&w, &ops, &w).unwrap();
        assert_eq!(p.rank(), 0);
        // U = 0 -> P = W
        let p = invariant_complement(&w, &ops, &Subspace::zero(3)).unwrap();
        assert_eq!(p, w);
    }

    #[test]
    fn invariant_complement_swap_action() {
        // W = F^2 with the coordinate-swap action; U = span{(1,1)}.
        // The unique invariant complement is span{(1,-1)}.
        let swap = Matrix::from_fn(2, 2, |r, c| if r != c { Q::one() } else { Q::zero() });
        let w = Subspace::full(2);
        let u = span(&[v(2, &[(0, 1), (1, 1)])], 2);
        let ops: Vec<&dyn LinearOp> = vec![&swap];
        let p = invariant_complement(&w, &ops, &u).unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.contains(&v(2, &[(0, 1), (1, -1)])));
        assert_eq!(u.intersection_rank(&p), 0);
        assert_eq!(u.sum(&p).rank(), 2);
    }

    #[test]
    fn generated_submodule_trivial_cases() {
        let amb = Subspace::full(3);
        let ops: Vec<&dyn LinearOp> = Vec::new();
        let seed = span(&[v(3, &[(1, 1)])], 3);
        assert_eq!(generated_submodule(&seed, &ops, &amb), seed);
        let zero = Subspace::zero(3);
        assert_eq!(generated_submodule(&zero, &ops, &amb).rank(), 0);
    }

    #[test]
    fn integer_eigenspaces_diagonalizable() {
        // diag(1, 1, -2) conjugated by nothing
        let mut m = Matrix::zero(3, 3);
        m.set(0, 0, qi(1));
        m.set(1, 1, qi(1));
        m.set(2, 2, qi(-2));
        let eig = integer_eigenspaces(&m).unwrap();
        assert_eq!(eig.len(), 2);
        assert_eq!(eig[0].0, -2);
        assert_eq!(eig[0].1.rank(), 1);
        assert_eq!(eig[1].0, 1);
        assert_eq!(eig[1].1.rank(), 2);
    }

    #[test]
    fn integer_eigenspaces_rejects_nilpotent() {
        let mut m = Matrix::zero(2, 2);
        m.set(0, 1, qi(1));
        assert!(integer_eigenspaces(&m).is_none());
    }

    proptest! {
        #[test]
        fn reduce_is_additive(
            a in proptest::collection::vec(-20i64..20, 4),
            b in proptest::collection::vec(-20i64..20, 4),
            k1 in proptest::collection::vec(-5i64..5, 4),
            k2 in proptest::collection::vec(-5i64..5, 4),
        ) {
            let kk = span(&[
                QVec::from_dense(&k1.iter().map(|x| qi(*x)).collect::<Vec<_>>()),
                QVec::from_dense(&k2.iter().map(|x| qi(*x)).collect::<Vec<_>>()),
            ], 4);
            let va = QVec::from_dense(&a.iter().map(|x| qi(*x)).collect::<Vec<_>>());
            let vb = QVec::from_dense(&b.iter().map(|x| qi(*x)).collect::<Vec<_>>());
            let lhs = kk.reduce(&va.plus(&vb));
            let rhs = kk.reduce(&kk.reduce(&va).plus(&kk.reduce(&vb)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn span_rank_bounded_and_idempotent(
            vs in proptest::collection::vec(proptest::collection::vec(-9i64..9, 3), 0..6)
        ) {
            let vecs: Vec<QVec> = vs.iter()
                .map(|row| QVec::from_dense(&row.iter().map(|x| qi(*x)).collect::<Vec<_>>()))
                .collect();
            let s = span(&vecs, 3);
            prop_assert!(s.rank() <= 3);
            prop_assert_eq!(span(s.basis(), 3), s.clone());
            for v in &vecs {
                prop_assert!(s.contains(v));
            }
        }
    }
}
