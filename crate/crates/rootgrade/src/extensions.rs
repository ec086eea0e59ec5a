//! Central extensions of the graded algebras: 2-cocycles and the
//! extensions they define, grading transfer to a perfect extension,
//! triviality of cocycles against ad-trivial submodules, and the universal
//! central extension `L(q, {0}) -> L(q, K)` with its certificates.
//!
//! A cocycle is an alternating bilinear map `tau : L x L -> E` obeying the
//! cyclic law `tau([x,y],z) + tau([y,z],x) + tau([z,x],y) = 0`; the
//! extension `L~ = L (+) E` carries `[x+e, y+f] = [x,y] + tau(x,y)`.
//! Certificates are exhaustive basis sweeps, never spot checks: a
//! `HomCertificate` is only produced after the defining identity has been
//! verified on every basis pair.

use crate::graded::{assemble, jacobi_witness, CheckStatus, GradedAlgebra, GradedError};
use crate::linalg::{kernel, qi, span, Q, QVec, Subspace};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    InvalidCocycle(String),
    NotPerfect,
    /// `grade_extension` requires `tau(L, G) = 0`.
    TauGNonzero { g_index: usize, l_index: usize },
    /// `check_trivial_submodule` requires `[G, D] = 0` in the base.
    DNotTrivial { g_index: usize, d_vector: usize },
    CertificateFailure(String),
}

impl fmt::Display for ExtensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionError::InvalidCocycle(w) => write!(f, "invalid cocycle: {w}"),
            ExtensionError::NotPerfect => write!(f, "extension is not perfect"),
            ExtensionError::TauGNonzero { g_index, l_index } => {
                write!(f, "tau(G, L) != 0 at (g {g_index}, basis {l_index})")
            }
            ExtensionError::DNotTrivial { g_index, d_vector } => {
                write!(f, "[G, D] != 0 at (g {g_index}, D vector {d_vector})")
            }
            ExtensionError::CertificateFailure(w) => write!(f, "certificate failure: {w}"),
        }
    }
}

impl std::error::Error for ExtensionError {}

/// An alternating bilinear map `L x L -> E` by its values on basis pairs.
#[derive(Clone, Debug)]
pub struct Cocycle {
    pub dim_l: usize,
    pub e_dim: usize,
    /// `values[i][j]` with `values[j][i] = -values[i][j]` enforced at
    /// construction.
    values: Vec<Vec<QVec>>,
}

impl Cocycle {
    pub fn zero(dim_l: usize, e_dim: usize) -> Self {
        Cocycle { dim_l, e_dim, values: vec![vec![QVec::zero(e_dim); dim_l]; dim_l] }
    }

    /// Build from values on the upper triangle; the lower triangle is the
    /// negative.
    pub fn from_upper(dim_l: usize, e_dim: usize, mut f: impl FnMut(usize, usize) -> QVec) -> Self {
        let mut values = vec![vec![QVec::zero(e_dim); dim_l]; dim_l];
        for i in 0..dim_l {
            for j in (i + 1)..dim_l {
                let v = f(i, j);
                assert_eq!(v.dim(), e_dim);
                values[j][i] = v.neg();
                values[i][j] = v;
            }
        }
        Cocycle { dim_l, e_dim, values }
    }

    /// The coboundary of a linear map `mu : L -> E` (columns over the
    /// basis): `tau(x, y) = mu([x, y])`.
    pub fn coboundary(alg: &GradedAlgebra, mu: &[QVec]) -> Self {
        assert_eq!(mu.len(), alg.dim());
        let e_dim = if mu.is_empty() { 0 } else { mu[0].dim() };
        Cocycle::from_upper(alg.dim(), e_dim, |i, j| {
            let mut out = QVec::zero(e_dim);
            for (k, c) in alg.sc[i][j].iter() {
                out.add_scaled(&mu[k], c);
            }
            out
        })
    }

    /// A cocycle supported on the `<b,b>` component of brackets:
    /// `tau(x, y) = mu_dd(dd-component of [x, y])`. Vanishes on
    /// `G (x) 1 x L` whenever `[G (x) 1, L]` has no `<b,b>` component
    /// (the case `n = ell`).
    pub fn dd_supported(alg: &GradedAlgebra, mu_dd: &[QVec]) -> Self {
        let n_dd = alg.summand_dims()[3];
        assert_eq!(mu_dd.len(), n_dd);
        let e_dim = if mu_dd.is_empty() { 0 } else { mu_dd[0].dim() };
        let dd_offset = alg.dim() - n_dd;
        Cocycle::from_upper(alg.dim(), e_dim, |i, j| {
            let mut out = QVec::zero(e_dim);
            for (k, c) in alg.sc[i][j].iter() {
                if k >= dd_offset {
                    out.add_scaled(&mu_dd[k - dd_offset], c);
                }
            }
            out
        })
    }

    pub fn eval_basis(&self, i: usize, j: usize) -> &QVec {
        &self.values[i][j]
    }

    pub fn eval(&self, x: &QVec, y: &QVec) -> QVec {
        let mut out = QVec::zero(self.e_dim);
        for (i, cx) in x.iter() {
            for (j, cy) in y.iter() {
                out.add_scaled(&self.values[i][j], &(cx * cy));
            }
        }
        out
    }
}

/// A violation of the cocycle axioms, as data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleViolation {
    pub law: &'static str,
    pub witness: String,
}

/// Check the alternating property and the cyclic cocycle law on all basis
/// pairs and triples.
pub fn validate_cocycle(tau: &Cocycle, alg: &GradedAlgebra) -> Vec<CocycleViolation> {
    let mut out = Vec::new();
    let dim = alg.dim();
    assert_eq!(tau.dim_l, dim);
    for i in 0..dim {
        if !tau.values[i][i].is_zero() {
            out.push(CocycleViolation { law: "alternating", witness: format!("({i},{i})") });
        }
        for j in 0..dim {
            if tau.values[i][j] != tau.values[j][i].neg() {
                out.push(CocycleViolation { law: "alternating", witness: format!("({i},{j})") });
            }
        }
    }
    'outer: for i in 0..dim {
        for j in (i + 1)..dim {
            for k in (j + 1)..dim {
                let total = tau
                    .eval(&alg.sc[i][j], &QVec::unit(dim, k))
                    .plus(&tau.eval(&alg.sc[j][k], &QVec::unit(dim, i)))
                    .plus(&tau.eval(&alg.sc[k][i], &QVec::unit(dim, j)));
                if !total.is_zero() {
                    out.push(CocycleViolation {
                        law: "cocycle",
                        witness: format!("({i},{j},{k})"),
                    });
                    break 'outer;
                }
            }
        }
    }
    out
}

/// The central extension `L~ = L (+) E` of a base algebra by a validated
/// cocycle, with its total structure constants cached.
pub struct CentralExtension<'a> {
    pub base: &'a GradedAlgebra,
    pub tau: Cocycle,
    /// Structure constants of the total space; the last `e_dim` coordinates
    /// are the central block.
    pub sc_total: Vec<Vec<QVec>>,
}

impl<'a> CentralExtension<'a> {
    pub fn total_dim(&self) -> usize {
        self.base.dim() + self.tau.e_dim
    }

    pub fn bracket_total(&self, x: &QVec, y: &QVec) -> QVec {
        let mut out = QVec::zero(self.total_dim());
        for (i, cx) in x.iter() {
            for (j, cy) in y.iter() {
                out.add_scaled(&self.sc_total[i][j], &(cx * cy));
            }
        }
        out
    }

    /// Weight of a total-space basis element (central block at weight zero).
    fn weight(&self, k: usize) -> Vec<i64> {
        if k < self.base.dim() {
            self.base.weights[k].clone()
        } else {
            vec![0; self.base.idx.n]
        }
    }
}

/// Build the extension after validating the cocycle, then re-verify kernel
/// centrality, the projection homomorphism property, and the Jacobi
/// identity on the total space.
pub fn central_extend<'a>(
    alg: &'a GradedAlgebra,
    tau: Cocycle,
) -> Result<CentralExtension<'a>, ExtensionError> {
    let violations = validate_cocycle(&tau, alg);
    if let Some(v) = violations.first() {
        return Err(ExtensionError::InvalidCocycle(format!("{} at {}", v.law, v.witness)));
    }
    let dim = alg.dim();
    let total = dim + tau.e_dim;
    let mut sc_total = vec![vec![QVec::zero(total); total]; total];
    for i in 0..dim {
        for j in 0..dim {
            let mut v = alg.sc[i][j].extended(total);
            for (e, c) in tau.values[i][j].iter() {
                v.set(dim + e, c.clone());
            }
            sc_total[i][j] = v;
        }
    }
    let ext = CentralExtension { base: alg, tau, sc_total };
    // kernel centrality: the central block brackets to zero with everything
    for e in dim..total {
        for j in 0..total {
            if !ext.sc_total[e][j].is_zero() || !ext.sc_total[j][e].is_zero() {
                return Err(ExtensionError::CertificateFailure(format!(
                    "central block element {e} is not central against {j}"
                )));
            }
        }
    }
    // projection homomorphism: dropping the E-part of a total bracket gives
    // the base bracket of the projections
    for i in 0..dim {
        for j in 0..dim {
            let mut projected = QVec::zero(dim);
            for (k, c) in ext.sc_total[i][j].iter() {
                if k < dim {
                    projected.set(k, c.clone());
                }
            }
            if projected != alg.sc[i][j] {
                return Err(ExtensionError::CertificateFailure(format!(
                    "projection fails to be a homomorphism at ({i},{j})"
                )));
            }
        }
    }
    // Jacobi on the total space
    if let Some((i, j, k)) = jacobi_witness(&ext.sc_total) {
        return Err(ExtensionError::CertificateFailure(format!(
            "Jacobi fails on the extension at ({i},{j},{k})"
        )));
    }
    Ok(ext)
}

/// Grading transfer to a perfect central extension with `tau(L, G) = 0`:
/// the weight layers away from zero are untouched and the zero layer gains
/// the whole central block, recovered exactly as the span of brackets of
/// opposite layers.
pub fn grade_extension(
    ext: &CentralExtension<'_>,
) -> Result<BTreeMap<Vec<i64>, usize>, ExtensionError> {
    let alg = ext.base;
    let dim = alg.dim();
    let total = ext.total_dim();
    // tau(G (x) 1, L) must vanish
    for gi in 0..alg.g_basis.len() {
        let mut coords = vec![Q::zero(); alg.g_basis.len()];
        coords[gi] = qi(1);
        let g = alg.g_tensor_unit(&coords);
        for j in 0..dim {
            if !ext.tau.eval(&g, &QVec::unit(dim, j)).is_zero() {
                return Err(ExtensionError::TauGNonzero { g_index: gi, l_index: j });
            }
        }
    }
    // perfectness of the total space
    let mut derived = Subspace::zero(total);
    'span: for i in 0..total {
        for j in (i + 1)..total {
            derived.insert(&ext.sc_total[i][j]);
            if derived.rank() == total {
                break 'span;
            }
        }
    }
    if derived.rank() != total {
        return Err(ExtensionError::NotPerfect);
    }
    // the zero layer is recovered from opposite-weight brackets
    let mut zero_span = Subspace::zero(total);
    for i in 0..total {
        let wi = ext.weight(i);
        if wi.iter().all(|c| *c == 0) {
            continue;
        }
        let neg: Vec<i64> = wi.iter().map(|c| -c).collect();
        for j in 0..total {
            if ext.weight(j) == neg {
                zero_span.insert(&ext.sc_total[i][j]);
            }
        }
    }
    let zero_dim = (0..total).filter(|k| ext.weight(*k).iter().all(|c| *c == 0)).count();
    if zero_span.rank() != zero_dim {
        return Err(ExtensionError::CertificateFailure(format!(
            "opposite layers span {} of the {}-dimensional zero layer",
            zero_span.rank(),
            zero_dim
        )));
    }
    for k in 0..total {
        if ext.weight(k).iter().all(|c| *c == 0) && !zero_span.contains(&QVec::unit(total, k)) {
            return Err(ExtensionError::CertificateFailure(format!(
                "zero-layer basis element {k} not recovered"
            )));
        }
    }
    let mut dims: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for k in 0..total {
        *dims.entry(ext.weight(k)).or_insert(0) += 1;
    }
    Ok(dims)
}

/// Cocycles vanish against ad(G)-trivial submodules: for a subspace `D` of
/// the base with `[G, D] = 0`, complete reducibility of the G-action
/// forces `tau(G, D) = 0`. Errors if `D` is not actually ad(G)-trivial;
/// returns whether the vanishing holds for this cocycle.
pub fn check_trivial_submodule(
    ext: &CentralExtension<'_>,
    d_sub: &Subspace,
) -> Result<bool, ExtensionError> {
    let alg = ext.base;
    for gi in 0..alg.g_basis.len() {
        let mut coords = vec![Q::zero(); alg.g_basis.len()];
        coords[gi] = qi(1);
        let g = alg.g_tensor_unit(&coords);
        for (dv, d) in d_sub.basis().iter().enumerate() {
            if !alg.bracket_vec(&g, d).is_zero() {
                return Err(ExtensionError::DNotTrivial { g_index: gi, d_vector: dv });
            }
        }
    }
    for gi in 0..alg.g_basis.len() {
        let mut coords = vec![Q::zero(); alg.g_basis.len()];
        coords[gi] = qi(1);
        let g = alg.g_tensor_unit(&coords);
        for d in d_sub.basis() {
            if !ext.tau.eval(&g, d).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A linear map between two graded algebras whose homomorphism property
/// has been verified on every basis pair.
#[derive(Clone, Debug)]
pub struct HomCertificate {
    /// `cols[i]` is the image of the `i`-th domain basis element.
    pub cols: Vec<QVec>,
    pub dom_dim: usize,
    pub cod_dim: usize,
    pub checked: bool,
}

impl HomCertificate {
    pub fn apply(&self, v: &QVec) -> QVec {
        assert_eq!(v.dim(), self.dom_dim);
        let mut out = QVec::zero(self.cod_dim);
        for (i, c) in v.iter() {
            out.add_scaled(&self.cols[i], c);
        }
        out
    }

    pub fn image_rank(&self) -> usize {
        span(&self.cols, self.cod_dim).rank()
    }

    pub fn kernel(&self) -> Subspace {
        kernel(&self.cols, self.cod_dim)
    }

    /// Composition `other . self` (apply `self` first).
    pub fn then(&self, other: &HomCertificate) -> HomCertificate {
        assert_eq!(self.cod_dim, other.dom_dim);
        HomCertificate {
            cols: self.cols.iter().map(|c| other.apply(c)).collect(),
            dom_dim: self.dom_dim,
            cod_dim: other.cod_dim,
            checked: false,
        }
    }
}

/// Verify `map([x,y]) = [map(x), map(y)]` on all basis pairs.
pub fn certify_hom(
    cols: Vec<QVec>,
    dom: &GradedAlgebra,
    cod: &GradedAlgebra,
) -> Result<HomCertificate, ExtensionError> {
    assert_eq!(cols.len(), dom.dim());
    let cert = HomCertificate { cols, dom_dim: dom.dim(), cod_dim: cod.dim(), checked: false };
    for i in 0..dom.dim() {
        for j in (i + 1)..dom.dim() {
            let lhs = cert.apply(&dom.sc[i][j]);
            let rhs = cod.bracket_vec(&cert.cols[i], &cert.cols[j]);
            if lhs != rhs {
                return Err(ExtensionError::CertificateFailure(format!(
                    "homomorphism fails at pair ({i},{j})"
                )));
            }
        }
    }
    Ok(HomCertificate { checked: true, ..cert })
}

/// The canonical quotient `L(q, K_from) -> L(q, K_to)` for nested uniform
/// subspaces: identity on the tensor summands, class projection on the
/// homology summand.
pub fn quotient_hom(from: &GradedAlgebra, to: &GradedAlgebra) -> Result<Vec<QVec>, ExtensionError> {
    if from.bb.class_idx != to.bb.class_idx || from.idx != to.idx {
        return Err(ExtensionError::CertificateFailure(
            "quotient_hom requires the same quadruple, rank and homology layer".into(),
        ));
    }
    if !to.dd.k_sub.contains_subspace(&from.dd.k_sub) {
        return Err(ExtensionError::CertificateFailure(
            "quotient_hom requires K_from <= K_to".into(),
        ));
    }
    let tensor_dim = from.dim() - from.summand_dims()[3];
    assert_eq!(tensor_dim, to.dim() - to.summand_dims()[3]);
    let mut cols = Vec::with_capacity(from.dim());
    for i in 0..tensor_dim {
        cols.push(QVec::unit(to.dim(), i));
    }
    for di in 0..from.summand_dims()[3] {
        let class = from.dd.lift(&QVec::unit(from.summand_dims()[3], di));
        let image = to.dd.project(&class);
        let mut col = QVec::zero(to.dim());
        for (k, c) in image.iter() {
            col.set(tensor_dim + k, c.clone());
        }
        cols.push(col);
    }
    Ok(cols)
}

/// Present the perfect central extension `phi : L(q,K0) -> L(q,K)` as a
/// cocycle extension of the base: choose the canonical linear section
/// `sigma` (identity on the tensor blocks, canonical class lift on the
/// homology block) and set `tau(x,y) = [sigma x, sigma y] - sigma([x,y])`,
/// expressed in coordinates of `ker(phi)`. The resulting extension is
/// perfect and satisfies `tau(G, L) = 0` at `n = ell`.
pub fn splitting_cocycle(
    ext_alg: &GradedAlgebra,
    l_alg: &GradedAlgebra,
) -> Result<Cocycle, ExtensionError> {
    let phi_cols = quotient_hom(ext_alg, l_alg)?;
    let phi = HomCertificate {
        cols: phi_cols,
        dom_dim: ext_alg.dim(),
        cod_dim: l_alg.dim(),
        checked: false,
    };
    let ker = phi.kernel();
    let tensor_dim = l_alg.dim() - l_alg.summand_dims()[3];
    let sigma = |x: &QVec| -> QVec {
        let mut out = QVec::zero(ext_alg.dim());
        let mut dd_part = QVec::zero(l_alg.summand_dims()[3]);
        for (i, c) in x.iter() {
            if i < tensor_dim {
                out.set(i, c.clone());
            } else {
                dd_part.set(i - tensor_dim, c.clone());
            }
        }
        let class = l_alg.dd.lift(&dd_part);
        for (k, c) in ext_alg.dd.project(&class).iter() {
            out.set(tensor_dim + k, c.clone());
        }
        out
    };
    let dim = l_alg.dim();
    let mut tau = Cocycle::zero(dim, ker.rank());
    for i in 0..dim {
        for j in (i + 1)..dim {
            let lifted = ext_alg.bracket_vec(
                &sigma(&QVec::unit(dim, i)),
                &sigma(&QVec::unit(dim, j)),
            );
            let defect = lifted.minus(&sigma(&l_alg.sc[i][j]));
            let coords = ker.coords_of(&defect).ok_or_else(|| {
                ExtensionError::CertificateFailure(
                    "splitting defect left the kernel of phi".into(),
                )
            })?;
            let v = QVec::from_dense(&coords);
            tau.values[j][i] = v.neg();
            tau.values[i][j] = v;
        }
    }
    Ok(tau)
}

/// The full universal-central-extension report for `pi : L(q,{0}) -> L(q,K)`.
pub struct UcexReport {
    pub a_dim: usize,
    pub l_dim: usize,
    pub kernel_dim: usize,
    pub center_dim: usize,
    pub pi: HomCertificate,
    pub surjective: CheckStatus,
    pub homomorphism: CheckStatus,
    pub kernel_matches_k: CheckStatus,
    pub kernel_central: CheckStatus,
}

impl UcexReport {
    pub fn all_passed(&self) -> bool {
        self.surjective.passed()
            && self.homomorphism.passed()
            && self.kernel_matches_k.passed()
            && self.kernel_central.passed()
    }

    pub fn checks(&self) -> [(&'static str, &CheckStatus); 4] {
        [
            ("surjective", &self.surjective),
            ("homomorphism", &self.homomorphism),
            ("kernel_matches_K", &self.kernel_matches_k),
            ("kernel_central", &self.kernel_central),
        ]
    }
}

/// Dimension of the center, via the kernel of the adjoint representation.
pub fn center_dim(alg: &GradedAlgebra) -> usize {
    let dim = alg.dim();
    let rows: Vec<QVec> = (0..dim)
        .map(|i| {
            let mut flat = QVec::zero(dim * dim);
            for j in 0..dim {
                for (k, c) in alg.sc[i][j].iter() {
                    flat.set(j * dim + k, c.clone());
                }
            }
            flat
        })
        .collect();
    kernel(&rows, dim * dim).rank()
}

/// Build `A = L(q, {0})` over the same quadruple and rank as `l_alg` and
/// certify the canonical projection onto it.
pub fn universal_extension(
    l_alg: &GradedAlgebra,
) -> Result<(GradedAlgebra, UcexReport), GradedError> {
    let q = l_alg.bb.b.q.clone();
    let zero_k = Subspace::zero(l_alg.bb.dim_bb());
    let a_alg = assemble(&q, l_alg.idx, &zero_k)?;
    let report = certify_projection(&a_alg, l_alg);
    Ok((a_alg, report))
}

/// Certify `pi : A -> L` where both algebras share the quadruple and rank
/// and `A`'s homology layer quotients onto `L`'s.
pub fn certify_projection(a_alg: &GradedAlgebra, l_alg: &GradedAlgebra) -> UcexReport {
    let cols = quotient_hom(a_alg, l_alg).expect("compatible algebras");
    let homomorphism = match certify_hom(cols.clone(), a_alg, l_alg) {
        Ok(_) => CheckStatus::Pass,
        Err(e) => CheckStatus::Fail(e.to_string()),
    };
    let pi = HomCertificate {
        cols,
        dom_dim: a_alg.dim(),
        cod_dim: l_alg.dim(),
        checked: homomorphism.passed(),
    };
    let surjective = if pi.image_rank() == l_alg.dim() {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail(format!("image rank {} < {}", pi.image_rank(), l_alg.dim()))
    };
    // kernel = K embedded in the homology block of A
    let ker = pi.kernel();
    let tensor_dim = a_alg.dim() - a_alg.summand_dims()[3];
    let mut embedded_k = Subspace::zero(a_alg.dim());
    for kv in l_alg.dd.k_sub.basis() {
        // A's homology block is the whole class space, so class coordinates
        // embed directly after the tensor blocks
        let mut v = QVec::zero(a_alg.dim());
        for (k, c) in kv.iter() {
            v.set(tensor_dim + k, c.clone());
        }
        embedded_k.insert(&v);
    }
    let kernel_matches_k = if ker == embedded_k {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail(format!(
            "kernel dimension {} vs embedded K dimension {}",
            ker.rank(),
            embedded_k.rank()
        ))
    };
    let mut kernel_central = CheckStatus::Pass;
    'central: for z in ker.basis() {
        for j in 0..a_alg.dim() {
            if !a_alg.bracket_vec(z, &QVec::unit(a_alg.dim(), j)).is_zero() {
                kernel_central = CheckStatus::Fail(format!("kernel vector hits basis {j}"));
                break 'central;
            }
        }
    }
    UcexReport {
        a_dim: a_alg.dim(),
        l_dim: l_alg.dim(),
        kernel_dim: ker.rank(),
        center_dim: center_dim(a_alg),
        pi,
        surjective,
        homomorphism,
        kernel_matches_k,
        kernel_central,
    }
}

/// The factoring map of the universality argument: for `K0 <= K` uniform,
/// the perfect central extension `phi : L(q,K0) -> L(q,K)` receives
/// `psi : A = L(q,{0}) -> L(q,K0)` with `phi . psi = pi` exactly.
pub struct FactorReport {
    pub ext_dim: usize,
    pub psi: HomCertificate,
    pub phi: HomCertificate,
    pub psi_hom: CheckStatus,
    pub phi_hom: CheckStatus,
    pub composition_matches: CheckStatus,
}

impl FactorReport {
    pub fn all_passed(&self) -> bool {
        self.psi_hom.passed() && self.phi_hom.passed() && self.composition_matches.passed()
    }
}

pub fn factor_through(
    a_alg: &GradedAlgebra,
    l_alg: &GradedAlgebra,
    pi: &HomCertificate,
    ext_alg: &GradedAlgebra,
) -> Result<FactorReport, ExtensionError> {
    let psi_cols = quotient_hom(a_alg, ext_alg)?;
    let phi_cols = quotient_hom(ext_alg, l_alg)?;
    let (psi_hom, psi) = match certify_hom(psi_cols.clone(), a_alg, ext_alg) {
        Ok(c) => (CheckStatus::Pass, c),
        Err(e) => (
            CheckStatus::Fail(e.to_string()),
            HomCertificate {
                cols: psi_cols,
                dom_dim: a_alg.dim(),
                cod_dim: ext_alg.dim(),
                checked: false,
            },
        ),
    };
    let (phi_hom, phi) = match certify_hom(phi_cols.clone(), ext_alg, l_alg) {
        Ok(c) => (CheckStatus::Pass, c),
        Err(e) => (
            CheckStatus::Fail(e.to_string()),
            HomCertificate {
                cols: phi_cols,
                dom_dim: ext_alg.dim(),
                cod_dim: l_alg.dim(),
                checked: false,
            },
        ),
    };
    let composed = psi.then(&phi);
    let composition_matches = if composed.cols == pi.cols {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail("phi . psi differs from pi".into())
    };
    Ok(FactorReport {
        ext_dim: ext_alg.dim(),
        psi,
        phi,
        psi_hom,
        phi_hom,
        composition_matches,
    })
}
