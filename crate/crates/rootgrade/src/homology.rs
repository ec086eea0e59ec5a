//! The Lie algebra `{b,b} = (b (x) b)/K`, its full skew-dihedral homology
//! group `HF(b)`, the uniform-property check and quotients `<b,b>`.
//!
//! `K` is spanned by seven generator families over basis tuples (mixed
//! tensors, the `A (x) B` block, symmetrizers in the algebra slots,
//! antisymmetrizers in the module slots, the three-term cyclic relation and
//! the form/action compatibility relation). The quotient carries the Lie
//! bracket
//!
//! ```text
//! [{b1,b2}, {b1',b2'}] = {d(b1'), b2'} + {b1', d(b2')},   d = d_{b1,b2},
//! ```
//!
//! extended bilinearly over canonical coset representatives. `HF(b)` is the
//! kernel of the linear map sending a class to its total derivation; a
//! subspace of it is *uniform* when the induced `beta*` map vanishes on it.
//!
//! Classes are stored in the coordinates of the non-pivot elementary
//! tensors of `K`'s reduced basis, so every class vector is its own
//! canonical representative. Operator flattening is row-major over the
//! `b`-basis, fixed for reproducible kernels.

use crate::bee::{BAlgebra, BElement, EllParam};
use crate::coords::{CoordinateQuadruple, CoordsError};
use crate::linalg::{kernel, span, Matrix, Q, QVec, Subspace};
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomologyError {
    /// The candidate subspace is not contained in `HF(b)`.
    NotInHF,
    /// The candidate subspace fails the uniform property; carries the
    /// violating basis vector (class coordinates).
    NotUniform { witness: QVec },
}

impl fmt::Display for HomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyError::NotInHF => write!(f, "subspace is not contained in HF(b)"),
            HomologyError::NotUniform { .. } => {
                write!(f, "subspace fails the uniform property")
            }
        }
    }
}

impl std::error::Error for HomologyError {}

/// Outcome of the uniform-property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniformOutcome {
    Uniform,
    NotUniform { witness: QVec, beta_star: QVec },
}

/// `{b,b}` with all the per-basis-pair data cached.
#[derive(Clone)]
pub struct BbAlgebra {
    pub b: BAlgebra,
    pub ell: EllParam,
    /// The relation subspace `K` of `b (x) b`.
    pub kk: Subspace,
    /// Tensor indices of the elementary classes forming the `{b,b}` basis
    /// (the non-pivot columns of `K`).
    pub class_idx: Vec<usize>,
    d_pairs: Vec<Vec<Matrix>>,
    bstar_pairs: Vec<Vec<QVec>>,
}

impl BbAlgebra {
    pub fn new(q: &CoordinateQuadruple, ell: EllParam) -> Result<Self, CoordsError> {
        let b = BAlgebra::new(q)?;
        let kk = build_relations(&b);
        let db = b.dim_b();
        let pivots: std::collections::BTreeSet<usize> = kk.pivots().iter().copied().collect();
        let class_idx: Vec<usize> = (0..db * db).filter(|i| !pivots.contains(i)).collect();
        let mut d_pairs = Vec::with_capacity(db);
        let mut bstar_pairs = Vec::with_capacity(db);
        for i in 0..db {
            let mut drow = Vec::with_capacity(db);
            let mut brow = Vec::with_capacity(db);
            for j in 0..db {
                drow.push(b.derivation(&b.basis(i), &b.basis(j), ell));
                brow.push(b.beta_star(&b.basis(i), &b.basis(j)).0);
            }
            d_pairs.push(drow);
            bstar_pairs.push(brow);
        }
        Ok(BbAlgebra { b, ell, kk, class_idx, d_pairs, bstar_pairs })
    }

    pub fn dim_b(&self) -> usize {
        self.b.dim_b()
    }

    pub fn dim_tensor(&self) -> usize {
        self.dim_b() * self.dim_b()
    }

    /// Dimension of `{b,b}`.
    pub fn dim_bb(&self) -> usize {
        self.class_idx.len()
    }

    pub fn tensor_index(&self, i: usize, j: usize) -> usize {
        i * self.dim_b() + j
    }

    /// Cached `beta*` value of a basis pair of `b`.
    pub fn beta_star_pair(&self, i: usize, j: usize) -> &QVec {
        &self.bstar_pairs[i][j]
    }

    /// Cached derivation `d_{e_i, e_j}`.
    pub fn derivation_pair(&self, i: usize, j: usize) -> &Matrix {
        &self.d_pairs[i][j]
    }

    /// Elementary tensor `x (x) y` of two `b`-elements.
    pub fn tensor(&self, x: &BElement, y: &BElement) -> QVec {
        let vx = self.b.to_qvec(x);
        let vy = self.b.to_qvec(y);
        let mut out = QVec::zero(self.dim_tensor());
        for (i, ci) in vx.iter() {
            for (j, cj) in vy.iter() {
                out.set(self.tensor_index(i, j), ci * cj);
            }
        }
        out
    }

    /// Class coordinates of a raw tensor: reduce modulo `K`, then read off
    /// the non-pivot coordinates.
    pub fn class_of_tensor(&self, t: &QVec) -> QVec {
        let red = self.kk.reduce(t);
        let mut out = QVec::zero(self.dim_bb());
        for (k, idx) in self.class_idx.iter().enumerate() {
            let c = red.get(*idx);
            if !c.is_zero() {
                out.set(k, c);
            }
        }
        out
    }

    /// Canonical reduced representative of a class vector.
    pub fn class_to_tensor(&self, cls: &QVec) -> QVec {
        assert_eq!(cls.dim(), self.dim_bb());
        let mut out = QVec::zero(self.dim_tensor());
        for (k, c) in cls.iter() {
            out.set(self.class_idx[k], c.clone());
        }
        out
    }

    /// The class `{x, y}`.
    pub fn class_of_pair(&self, x: &BElement, y: &BElement) -> QVec {
        self.class_of_tensor(&self.tensor(x, y))
    }

    /// Total derivation attached to a raw tensor `sum c_ij e_i (x) e_j`:
    /// `sum c_ij d_{e_i, e_j}`.
    pub fn operator_of_tensor(&self, t: &QVec) -> Matrix {
        let db = self.dim_b();
        let mut m = Matrix::zero(db, db);
        for (p, c) in t.iter() {
            let (i, j) = (p / db, p % db);
            m = m.plus(&self.d_pairs[i][j].scaled(c));
        }
        m
    }

    /// Total derivation of a class (computed on the canonical representative;
    /// well-defined because every `K`-generator has zero total derivation).
    pub fn operator_of_class(&self, cls: &QVec) -> Matrix {
        self.operator_of_tensor(&self.class_to_tensor(cls))
    }

    /// Induced `beta*` value of a class, a vector in `a`.
    pub fn beta_star_of_class(&self, cls: &QVec) -> QVec {
        self.beta_star_of_tensor(&self.class_to_tensor(cls))
    }

    pub fn beta_star_of_tensor(&self, t: &QVec) -> QVec {
        let db = self.dim_b();
        let mut out = QVec::zero(self.b.dim_a());
        for (p, c) in t.iter() {
            let (i, j) = (p / db, p % db);
            out.add_scaled(&self.bstar_pairs[i][j], c);
        }
        out
    }

    /// Bilinear extension of the bracket formula on raw tensors, without
    /// any reduction: `(D (x) 1 + 1 (x) D)(t)` where `D` is `s`'s total
    /// derivation.
    pub fn bracket_raw(&self, s: &QVec, t: &QVec) -> QVec {
        let db = self.dim_b();
        let d = self.operator_of_tensor(s);
        let mut out = QVec::zero(self.dim_tensor());
        for (p, c) in t.iter() {
            let (k, l) = (p / db, p % db);
            for m in 0..db {
                let a = d.get(m, k);
                if !a.is_zero() {
                    let idx = self.tensor_index(m, l);
                    let cur = out.get(idx) + a * c;
                    out.set(idx, cur);
                }
                let a = d.get(m, l);
                if !a.is_zero() {
                    let idx = self.tensor_index(k, m);
                    let cur = out.get(idx) + a * c;
                    out.set(idx, cur);
                }
            }
        }
        out
    }

    /// The Lie bracket of `{b,b}` on class coordinates.
    pub fn bracket_bb(&self, s: &QVec, t: &QVec) -> QVec {
        let raw = self.bracket_raw(&self.class_to_tensor(s), &self.class_to_tensor(t));
        self.class_of_tensor(&raw)
    }

    /// `HF(b)`: kernel of the map sending a class to its total derivation,
    /// flattened row-major over the `b`-basis.
    pub fn compute_hf(&self) -> Subspace {
        let rows: Vec<QVec> = (0..self.dim_bb())
            .map(|k| self.operator_of_class(&QVec::unit(self.dim_bb(), k)).flatten())
            .collect();
        kernel(&rows, self.dim_tensor())
    }

    /// Uniform property of a subspace of class space: membership in `HF(b)`
    /// (else `NotInHF`), then vanishing of the induced `beta*` map on each
    /// basis vector, with the first violator reported as witness.
    pub fn check_uniform(&self, k_sub: &Subspace) -> Result<UniformOutcome, HomologyError> {
        let hf = self.compute_hf();
        if !hf.contains_subspace(k_sub) {
            return Err(HomologyError::NotInHF);
        }
        for v in k_sub.basis() {
            let image = self.beta_star_of_class(v);
            if !image.is_zero() {
                return Ok(UniformOutcome::NotUniform { witness: v.clone(), beta_star: image });
            }
        }
        Ok(UniformOutcome::Uniform)
    }

    /// The quotient `<b,b> = {b,b}/K_sub` with its induced bracket.
    pub fn quotient(&self, k_sub: &Subspace) -> Result<QuotientDd, HomologyError> {
        match self.check_uniform(k_sub)? {
            UniformOutcome::Uniform => {}
            UniformOutcome::NotUniform { witness, .. } => {
                return Err(HomologyError::NotUniform { witness });
            }
        }
        let pivots: std::collections::BTreeSet<usize> = k_sub.pivots().iter().copied().collect();
        let dd_idx: Vec<usize> = (0..self.dim_bb()).filter(|i| !pivots.contains(i)).collect();
        Ok(QuotientDd { k_sub: k_sub.clone(), dd_idx })
    }

    // -- verification sweeps (exercised by the acceptance suite) -----------

    /// Every `K` basis vector must have zero total derivation and zero
    /// induced `beta*` (this is what makes `HF` and the uniform property
    /// well-defined on the quotient).
    pub fn verify_quotient_well_defined(&self) -> Result<(), String> {
        for (i, g) in self.kk.basis().iter().enumerate() {
            if !self.operator_of_tensor(g).is_zero() {
                return Err(format!("K basis vector {i} has nonzero total derivation"));
            }
            if !self.beta_star_of_tensor(g).is_zero() {
                return Err(format!("K basis vector {i} has nonzero beta*"));
            }
        }
        Ok(())
    }

    /// The raw bracket must map `K x (b(x)b)` and `(b(x)b) x K` into `K`.
    pub fn verify_bracket_well_defined(&self) -> Result<(), String> {
        let db = self.dim_b();
        // apply (D (x) 1 + 1 (x) D) to a raw tensor
        let spread = |d: &Matrix, t: &QVec| -> QVec {
            let mut out = QVec::zero(self.dim_tensor());
            for (p, c) in t.iter() {
                let (k, l) = (p / db, p % db);
                for m in 0..db {
                    let a = d.get(m, k);
                    if !a.is_zero() {
                        let idx = self.tensor_index(m, l);
                        let cur = out.get(idx) + a * c;
                        out.set(idx, cur);
                    }
                    let a = d.get(m, l);
                    if !a.is_zero() {
                        let idx = self.tensor_index(k, m);
                        let cur = out.get(idx) + a * c;
                        out.set(idx, cur);
                    }
                }
            }
            out
        };
        for (gi, g) in self.kk.basis().iter().enumerate() {
            // [K, -]: the total derivation of a K element is computed once
            let d_g = self.operator_of_tensor(g);
            for k in 0..db {
                for l in 0..db {
                    let mut e = QVec::zero(self.dim_tensor());
                    e.set(self.tensor_index(k, l), Q::from_integer(1.into()));
                    if !self.kk.contains(&spread(&d_g, &e)) {
                        return Err(format!("[K#{gi}, e{k}(x)e{l}] left K"));
                    }
                    // [-, K]: the cached pair derivation acts on g
                    if !self.kk.contains(&spread(&self.d_pairs[k][l], g)) {
                        return Err(format!("[e{k}(x)e{l}, K#{gi}] left K"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Antisymmetry and the Jacobi identity on the full `{b,b}` basis.
    pub fn verify_lie_structure(&self) -> Result<(), String> {
        let n = self.dim_bb();
        let basis: Vec<QVec> = (0..n).map(|k| QVec::unit(n, k)).collect();
        let mut brackets = vec![vec![QVec::zero(n); n]; n];
        for i in 0..n {
            for j in 0..n {
                brackets[i][j] = self.bracket_bb(&basis[i], &basis[j]);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if brackets[i][j] != brackets[j][i].neg() {
                    return Err(format!("antisymmetry fails at ({i},{j})"));
                }
            }
        }
        // [e_i, w] for a class vector w, via the cached basis brackets
        let ad = |i: usize, w: &QVec| -> QVec {
            let mut out = QVec::zero(n);
            for (m, c) in w.iter() {
                out.add_scaled(&brackets[i][m], c);
            }
            out
        };
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    // [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0
                    let sum = ad(i, &brackets[j][k])
                        .plus(&ad(j, &brackets[k][i]))
                        .plus(&ad(k, &brackets[i][j]));
                    if !sum.is_zero() {
                        return Err(format!("Jacobi fails at ({i},{j},{k})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every `HF` basis element must be central in `{b,b}`.
    pub fn verify_hf_central(&self) -> Result<(), String> {
        let hf = self.compute_hf();
        let n = self.dim_bb();
        for (i, z) in hf.basis().iter().enumerate() {
            for j in 0..n {
                if !self.bracket_bb(z, &QVec::unit(n, j)).is_zero() {
                    return Err(format!("HF basis vector {i} fails to centralize class {j}"));
                }
            }
        }
        Ok(())
    }
}

/// The relation subspace `K` spanned by the seven generator families over
/// all basis tuples.
pub fn build_relations(b: &BAlgebra) -> Subspace {
    let da = b.dim_a();
    let dc = b.dim_c();
    let db = b.dim_b();
    let dim_t = db * db;
    let tidx = |i: usize, j: usize| i * db + j;
    let tensor = |x: &QVec, y: &QVec| -> QVec {
        // x, y in b-coordinates
        let mut out = QVec::zero(dim_t);
        for (i, ci) in x.iter() {
            for (j, cj) in y.iter() {
                let cur = out.get(tidx(i, j)) + ci * cj;
                out.set(tidx(i, j), cur);
            }
        }
        out
    };
    let a_vec = |v: &QVec| b.to_qvec(&b.embed_a(v.clone()));
    let c_vec = |v: &QVec| b.to_qvec(&b.embed_c(v.clone()));

    let mut gens: Vec<QVec> = Vec::new();

    // alpha (x) c and c (x) alpha
    for i in 0..da {
        for t in 0..dc {
            let mut g = QVec::zero(dim_t);
            g.set(tidx(i, da + t), Q::from_integer(1.into()));
            gens.push(g);
            let mut g = QVec::zero(dim_t);
            g.set(tidx(da + t, i), Q::from_integer(1.into()));
            gens.push(g);
        }
    }
    // a (x) b over the star-eigenspace bases
    for av in b.split.a_plus.basis() {
        for bv in b.split.b_minus.basis() {
            gens.push(tensor(&a_vec(av), &a_vec(bv)));
        }
    }
    // alpha (x) alpha' + alpha' (x) alpha
    for i in 0..da {
        for j in i..da {
            let mut g = QVec::zero(dim_t);
            let one = Q::from_integer(1.into());
            let cur = g.get(tidx(i, j)) + &one;
            g.set(tidx(i, j), cur);
            let cur = g.get(tidx(j, i)) + &one;
            g.set(tidx(j, i), cur);
            gens.push(g);
        }
    }
    // c (x) c' - c' (x) c
    for s in 0..dc {
        for t in (s + 1)..dc {
            let mut g = QVec::zero(dim_t);
            g.set(tidx(da + s, da + t), Q::from_integer(1.into()));
            g.set(tidx(da + t, da + s), Q::from_integer((-1).into()));
            gens.push(g);
        }
    }
    // (alpha alpha') (x) alpha'' + (alpha'' alpha) (x) alpha' + (alpha' alpha'') (x) alpha
    for i in 0..da {
        for j in 0..da {
            for k in 0..da {
                let ei = QVec::unit(da, i);
                let ej = QVec::unit(da, j);
                let ek = QVec::unit(da, k);
                let mut g = tensor(&a_vec(&b.q.a.mul_vec(&ei, &ej)), &a_vec(&ek));
                g = g.plus(&tensor(&a_vec(&b.q.a.mul_vec(&ek, &ei)), &a_vec(&ej)));
                g = g.plus(&tensor(&a_vec(&b.q.a.mul_vec(&ej, &ek)), &a_vec(&ei)));
                gens.push(g);
            }
        }
    }
    // f(c, c') (x) alpha + (alpha* . c') (x) c - (alpha . c) (x) c'
    for s in 0..dc {
        for t in 0..dc {
            for i in 0..da {
                let cs = QVec::unit(dc, s);
                let ct = QVec::unit(dc, t);
                let ei = QVec::unit(da, i);
                let mut g = tensor(&a_vec(&b.q.c.f_vec(da, &cs, &ct)), &a_vec(&ei));
                let staret = b.q.a.star_vec(&ei);
                g = g.plus(&tensor(&c_vec(&b.q.c.act_vec(&staret, &ct)), &c_vec(&cs)));
                g = g.minus(&tensor(&c_vec(&b.q.c.act_vec(&ei, &cs)), &c_vec(&ct)));
                gens.push(g);
            }
        }
    }

    span(&gens, dim_t)
}

/// The quotient `<b,b> = {b,b}/K_sub`, coordinatized by the non-pivot class
/// positions of `K_sub`.
#[derive(Clone, Debug)]
pub struct QuotientDd {
    pub k_sub: Subspace,
    pub dd_idx: Vec<usize>,
}

impl QuotientDd {
    pub fn dim(&self) -> usize {
        self.dd_idx.len()
    }

    /// Quotient coordinates of a `{b,b}` class vector.
    pub fn project(&self, cls: &QVec) -> QVec {
        let red = self.k_sub.reduce(cls);
        let mut out = QVec::zero(self.dim());
        for (k, idx) in self.dd_idx.iter().enumerate() {
            let c = red.get(*idx);
            if !c.is_zero() {
                out.set(k, c);
            }
        }
        out
    }

    /// Canonical class representative of a quotient vector.
    pub fn lift(&self, dd: &QVec) -> QVec {
        assert_eq!(dd.dim(), self.dim());
        let mut out = QVec::zero(self.k_sub.ambient_dim());
        for (k, c) in dd.iter() {
            out.set(self.dd_idx[k], c.clone());
        }
        out
    }

    /// Induced bracket on the quotient.
    pub fn bracket(&self, bb: &BbAlgebra, s: &QVec, t: &QVec) -> QVec {
        self.project(&bb.bracket_bb(&self.lift(s), &self.lift(t)))
    }
}
