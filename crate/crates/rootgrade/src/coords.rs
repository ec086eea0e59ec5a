//! Coordinate quadruples `(a, *, C, f)` of the five kinds, their validation,
//! and a catalog of concrete desk-scale instances.
//!
//! A quadruple consists of a finite-dimensional unital algebra `a` given by
//! structure constants, a linear map `*` on `a`, a finite-dimensional
//! `a`-module `C`, and a bilinear form `f : C x C -> a`. Which axioms apply
//! depends on the kind:
//!
//! * kind A: `a` associative, `*` is the identity map, `C = 0`;
//! * kind B: `a` is a Clifford Jordan algebra (commutative, generally
//!   non-associative), `*` fixes the even part and negates the odd part;
//! * kind C: `a` associative, `*` an involution (self-inverting
//!   antiautomorphism), `C = 0`;
//! * kind D: `a` commutative associative, `*` the identity, `C = 0`;
//! * kind BC: `a` associative, `*` an involution, `C` a unital left
//!   `a`-module, `f` a skew-hermitian sesquilinear form.
//!
//! Validation reports violations as data (axiom name plus witnessing basis
//! tuple) rather than failing fast, so a single run surfaces everything
//! wrong with an instance.

use crate::linalg::{kernel, Matrix, Q, QVec, Subspace};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Kind {
    A,
    B,
    C,
    D,
    BC,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::A => "A",
            Kind::B => "B",
            Kind::C => "C",
            Kind::D => "D",
            Kind::BC => "BC",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "A" => Some(Kind::A),
            "B" => Some(Kind::B),
            "C" => Some(Kind::C),
            "D" => Some(Kind::D),
            "BC" => Some(Kind::BC),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoordsError {
    StarNotInvolutive,
    UnknownName(String),
}

impl fmt::Display for CoordsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordsError::StarNotInvolutive => write!(f, "star is not an involution"),
            CoordsError::UnknownName(n) => write!(f, "unknown catalog name: {n}"),
        }
    }
}

impl std::error::Error for CoordsError {}

/// Finite-dimensional unital algebra by structure constants, with an
/// optional linear map `*` (`None` means the identity).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteAlgebra {
    pub dim: usize,
    pub unit: QVec,
    /// `mul[i][j]` is the product `e_i e_j` in basis coordinates.
    pub mul: Vec<Vec<QVec>>,
    pub star: Option<Matrix>,
}

impl FiniteAlgebra {
    pub fn zero_vec(&self) -> QVec {
        QVec::zero(self.dim)
    }

    /// Bilinear extension of the structure-constant product.
    pub fn mul_vec(&self, x: &QVec, y: &QVec) -> QVec {
        let mut out = QVec::zero(self.dim);
        for (i, ci) in x.iter() {
            for (j, cj) in y.iter() {
                out.add_scaled(&self.mul[i][j], &(ci * cj));
            }
        }
        out
    }

    pub fn star_vec(&self, x: &QVec) -> QVec {
        match &self.star {
            None => x.clone(),
            Some(m) => m.apply(x),
        }
    }

    pub fn commutator(&self, x: &QVec, y: &QVec) -> QVec {
        self.mul_vec(x, y).minus(&self.mul_vec(y, x))
    }

    pub fn anticommutator(&self, x: &QVec, y: &QVec) -> QVec {
        self.mul_vec(x, y).plus(&self.mul_vec(y, x))
    }

    /// Projection onto the `*`-fixed part, `(x + x*)/2`.
    pub fn sym_part(&self, x: &QVec) -> QVec {
        x.plus(&self.star_vec(x)).scaled(&crate::linalg::qr(1, 2))
    }

    /// Projection onto the `*`-negated part, `(x - x*)/2`.
    pub fn skew_part(&self, x: &QVec) -> QVec {
        x.minus(&self.star_vec(x)).scaled(&crate::linalg::qr(1, 2))
    }
}

/// The module `C` with its `a`-action and the form `f : C x C -> a`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleC {
    pub dim: usize,
    /// `act[i][t]` is `e_i . c_t` in `C`-coordinates (`i` over the `a`-basis).
    pub act: Vec<Vec<QVec>>,
    /// `f[s][t]` is `f(c_s, c_t)` in `a`-coordinates.
    pub f: Vec<Vec<QVec>>,
}

impl ModuleC {
    pub fn trivial() -> Self {
        ModuleC { dim: 0, act: Vec::new(), f: Vec::new() }
    }

    pub fn act_vec(&self, alpha: &QVec, c: &QVec) -> QVec {
        let mut out = QVec::zero(self.dim);
        for (i, ci) in alpha.iter() {
            for (t, ct) in c.iter() {
                out.add_scaled(&self.act[i][t], &(ci * ct));
            }
        }
        out
    }

    pub fn f_vec(&self, a_dim: usize, c1: &QVec, c2: &QVec) -> QVec {
        let mut out = QVec::zero(a_dim);
        for (s, cs) in c1.iter() {
            for (t, ct) in c2.iter() {
                out.add_scaled(&self.f[s][t], &(cs * ct));
            }
        }
        out
    }
}

/// A coordinate quadruple: the kind tag, the algebra `(a, *)` and the pair
/// `(C, f)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoordinateQuadruple {
    pub kind: Kind,
    pub a: FiniteAlgebra,
    pub c: ModuleC,
}

/// Eigenspace split of `a` under `*`: `A` is the fixed part, `B` the
/// skew-fixed part.
#[derive(Clone, Debug)]
pub struct ABSplit {
    pub a_plus: Subspace,
    pub b_minus: Subspace,
}

/// A named axiom violation with the basis tuple that witnesses it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.axiom, self.witness)
    }
}

fn push(violations: &mut Vec<Violation>, axiom: &'static str, witness: String) {
    violations.push(Violation { axiom, witness });
}

/// Check every per-kind axiom on all basis tuples. An empty result means the
/// quadruple is valid.
pub fn validate_quadruple(q: &CoordinateQuadruple) -> Vec<Violation> {
    let mut out = Vec::new();
    let a = &q.a;
    let dim = a.dim;

    // unit is a two-sided identity
    for i in 0..dim {
        let e = QVec::unit(dim, i);
        if a.mul_vec(&a.unit, &e) != e {
            push(&mut out, "unit_identity", format!("unit*e{i}"));
        }
        if a.mul_vec(&e, &a.unit) != e {
            push(&mut out, "unit_identity", format!("e{i}*unit"));
        }
    }

    // associativity for kinds A, C, D, BC (Jordan algebras of kind B are
    // commutative but not associative)
    if q.kind != Kind::B {
        'assoc: for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let ei = QVec::unit(dim, i);
                    let ej = QVec::unit(dim, j);
                    let ek = QVec::unit(dim, k);
                    let lhs = a.mul_vec(&a.mul_vec(&ei, &ej), &ek);
                    let rhs = a.mul_vec(&ei, &a.mul_vec(&ej, &ek));
                    if lhs != rhs {
                        push(&mut out, "associativity", format!("(e{i},e{j},e{k})"));
                        break 'assoc;
                    }
                }
            }
        }
    }

    // commutativity for kinds B and D
    if q.kind == Kind::B || q.kind == Kind::D {
        for i in 0..dim {
            for j in (i + 1)..dim {
                let ei = QVec::unit(dim, i);
                let ej = QVec::unit(dim, j);
                if a.mul_vec(&ei, &ej) != a.mul_vec(&ej, &ei) {
                    push(&mut out, "commutativity", format!("(e{i},e{j})"));
                }
            }
        }
    }

    // star axioms per kind
    match q.kind {
        Kind::A | Kind::D => {
            if a.star.is_some() {
                let id = Matrix::identity(dim);
                if a.star.as_ref() != Some(&id) {
                    push(&mut out, "star_identity", "star".into());
                }
            }
        }
        Kind::B | Kind::C | Kind::BC => {
            // self-inverting
            for i in 0..dim {
                let e = QVec::unit(dim, i);
                if a.star_vec(&a.star_vec(&e)) != e {
                    push(&mut out, "star_involution", format!("e{i}"));
                }
            }
            // antiautomorphism: (xy)* = y* x*
            for i in 0..dim {
                for j in 0..dim {
                    let ei = QVec::unit(dim, i);
                    let ej = QVec::unit(dim, j);
                    let lhs = a.star_vec(&a.mul_vec(&ei, &ej));
                    let rhs = a.mul_vec(&a.star_vec(&ej), &a.star_vec(&ei));
                    if lhs != rhs {
                        push(&mut out, "star_antiautomorphism", format!("(e{i},e{j})"));
                    }
                }
            }
        }
    }

    // C must be trivial away from kind BC
    if q.kind != Kind::BC && q.c.dim != 0 {
        push(&mut out, "c_trivial", format!("dim C = {}", q.c.dim));
    }

    if q.c.dim > 0 {
        let cdim = q.c.dim;
        // the unit acts as the identity
        for t in 0..cdim {
            let ct = QVec::unit(cdim, t);
            if q.c.act_vec(&a.unit, &ct) != ct {
                push(&mut out, "c_unit_action", format!("c{t}"));
            }
        }
        // action is associative with the algebra product
        for i in 0..dim {
            for j in 0..dim {
                for t in 0..cdim {
                    let ei = QVec::unit(dim, i);
                    let ej = QVec::unit(dim, j);
                    let ct = QVec::unit(cdim, t);
                    let lhs = q.c.act_vec(&a.mul_vec(&ei, &ej), &ct);
                    let rhs = q.c.act_vec(&ei, &q.c.act_vec(&ej, &ct));
                    if lhs != rhs {
                        push(&mut out, "c_action_associativity", format!("(e{i},e{j},c{t})"));
                    }
                }
            }
        }
        // f is skew-hermitian: f(c,c')* = -f(c',c)
        for s in 0..cdim {
            for t in 0..cdim {
                let lhs = a.star_vec(&q.c.f[s][t]);
                let rhs = q.c.f[t][s].neg();
                if lhs != rhs {
                    push(&mut out, "f_skew_hermitian", format!("(c{s},c{t})"));
                }
            }
        }
        // f is sesquilinear over the action: f(a.c, c') = a f(c, c')
        for i in 0..dim {
            for s in 0..cdim {
                for t in 0..cdim {
                    let ei = QVec::unit(dim, i);
                    let cs = QVec::unit(cdim, s);
                    let ct = QVec::unit(cdim, t);
                    let lhs = q.c.f_vec(dim, &q.c.act_vec(&ei, &cs), &ct);
                    let rhs = a.mul_vec(&ei, &q.c.f_vec(dim, &cs, &ct));
                    if lhs != rhs {
                        push(&mut out, "f_sesquilinear", format!("(e{i},c{s},c{t})"));
                    }
                }
            }
        }
    }

    out
}

/// Eigenspace split of `*` into the fixed part `A` and the skew-fixed part
/// `B`. Requires `star . star = id`.
pub fn split_ab(q: &CoordinateQuadruple) -> Result<ABSplit, CoordsError> {
    let dim = q.a.dim;
    match &q.a.star {
        None => Ok(ABSplit { a_plus: Subspace::full(dim), b_minus: Subspace::zero(dim) }),
        Some(m) => {
            for i in 0..dim {
                let e = QVec::unit(dim, i);
                if m.apply(&m.apply(&e)) != e {
                    return Err(CoordsError::StarNotInvolutive);
                }
            }
            // A = ker(star - 1), B = ker(star + 1), via columns of the shifted maps
            let cols_minus: Vec<QVec> = (0..dim)
                .map(|j| {
                    let mut v = m.apply(&QVec::unit(dim, j));
                    let c = v.get(j) - Q::one();
                    v.set(j, c);
                    v
                })
                .collect();
            let cols_plus: Vec<QVec> = (0..dim)
                .map(|j| {
                    let mut v = m.apply(&QVec::unit(dim, j));
                    let c = v.get(j) + Q::one();
                    v.set(j, c);
                    v
                })
                .collect();
            let a_plus = kernel(&cols_minus, dim);
            let b_minus = kernel(&cols_plus, dim);
            debug_assert_eq!(a_plus.rank() + b_minus.rank(), dim);
            Ok(ABSplit { a_plus, b_minus })
        }
    }
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

fn unit_alg(dim: usize, unit_idx: usize, mul: Vec<Vec<QVec>>, star: Option<Matrix>) -> FiniteAlgebra {
    FiniteAlgebra { dim, unit: QVec::unit(dim, unit_idx), mul, star }
}

/// `F` itself.
fn field_algebra() -> FiniteAlgebra {
    unit_alg(1, 0, vec![vec![QVec::unit(1, 0)]], None)
}

/// `F (+) F` with componentwise product.
fn double_field(star_exchange: bool) -> FiniteAlgebra {
    let mul = (0..2)
        .map(|i| {
            (0..2)
                .map(|j| if i == j { QVec::unit(2, i) } else { QVec::zero(2) })
                .collect()
        })
        .collect();
    let star = star_exchange.then(|| Matrix::from_fn(2, 2, |r, c| if r != c { Q::one() } else { Q::zero() }));
    let mut a = unit_alg(2, 0, mul, star);
    a.unit = QVec::from_dense(&[Q::one(), Q::one()]);
    a
}

/// Truncated polynomial algebra `F[x_1..x_k] / (x_i x_j)` with basis
/// `{1, x_1, .., x_k}`.
fn nilpotent_square_zero(k: usize) -> FiniteAlgebra {
    let dim = k + 1;
    let mul = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == 0 {
                        QVec::unit(dim, j)
                    } else if j == 0 {
                        QVec::unit(dim, i)
                    } else {
                        QVec::zero(dim)
                    }
                })
                .collect()
        })
        .collect();
    unit_alg(dim, 0, mul, None)
}

/// 2x2 matrices over `F` with basis `E11, E12, E21, E22` (row-major).
fn matrix2(star_transpose: bool) -> FiniteAlgebra {
    let idx = |r: usize, c: usize| 2 * r + c;
    let mut mul = vec![vec![QVec::zero(4); 4]; 4];
    for r in 0..2 {
        for c in 0..2 {
            for r2 in 0..2 {
                for c2 in 0..2 {
                    if c == r2 {
                        mul[idx(r, c)][idx(r2, c2)] = QVec::unit(4, idx(r, c2));
                    }
                }
            }
        }
    }
    let star = star_transpose.then(|| {
        Matrix::from_fn(4, 4, |out, inp| {
            let (r, c) = (inp / 2, inp % 2);
            if out == idx(c, r) { Q::one() } else { Q::zero() }
        })
    });
    let mut a = unit_alg(4, 0, mul, star);
    a.unit = QVec::from_entries(4, [(idx(0, 0), Q::one()), (idx(1, 1), Q::one())]).unwrap();
    a
}

fn bc_symplectic_rank1() -> CoordinateQuadruple {
    let a = field_algebra();
    let act = vec![(0..2).map(|t| QVec::unit(2, t)).collect()];
    let mut f = vec![vec![QVec::zero(1); 2]; 2];
    f[0][1] = QVec::unit(1, 0);
    f[1][0] = QVec::unit(1, 0).neg();
    CoordinateQuadruple { kind: Kind::BC, a, c: ModuleC { dim: 2, act, f } }
}

fn bc_exchange() -> CoordinateQuadruple {
    let a = double_field(true);
    // C = a as a left module
    let act: Vec<Vec<QVec>> = (0..2)
        .map(|i| {
            (0..2)
                .map(|t| if i == t { QVec::unit(2, t) } else { QVec::zero(2) })
                .collect()
        })
        .collect();
    // f(c, c') = c w c'* with w = e0 - e1 (skew under the exchange involution)
    let w = QVec::from_dense(&[Q::one(), -Q::one()]);
    let mut f = vec![vec![QVec::zero(2); 2]; 2];
    for s in 0..2 {
        for t in 0..2 {
            let cs = QVec::unit(2, s);
            let ct_star = a.star_vec(&QVec::unit(2, t));
            f[s][t] = a.mul_vec(&a.mul_vec(&cs, &w), &ct_star);
        }
    }
    CoordinateQuadruple { kind: Kind::BC, a, c: ModuleC { dim: 2, act, f } }
}

fn d_dual_numbers() -> CoordinateQuadruple {
    // F[t]/(t^2), basis {1, t}
    let mut mul = vec![vec![QVec::zero(2); 2]; 2];
    mul[0][0] = QVec::unit(2, 0);
    mul[0][1] = QVec::unit(2, 1);
    mul[1][0] = QVec::unit(2, 1);
    let a = unit_alg(2, 0, mul, None);
    CoordinateQuadruple { kind: Kind::D, a, c: ModuleC::trivial() }
}

fn a_matrix2() -> CoordinateQuadruple {
    CoordinateQuadruple { kind: Kind::A, a: matrix2(false), c: ModuleC::trivial() }
}

fn c_transpose2() -> CoordinateQuadruple {
    CoordinateQuadruple { kind: Kind::C, a: matrix2(true), c: ModuleC::trivial() }
}

fn bc_matrix2() -> CoordinateQuadruple {
    let a = matrix2(true);
    let idx = |r: usize, c: usize| 2 * r + c;
    // C = M2 as a left module
    let act: Vec<Vec<QVec>> = (0..4)
        .map(|i| (0..4).map(|t| a.mul[i][t].clone()).collect())
        .collect();
    // f(c, c') = c J c'^T with J = E12 - E21; J^T = -J makes f skew-hermitian
    let j = QVec::from_entries(4, [(idx(0, 1), Q::one()), (idx(1, 0), -Q::one())]).unwrap();
    let mut f = vec![vec![QVec::zero(4); 4]; 4];
    for s in 0..4 {
        for t in 0..4 {
            let cs = QVec::unit(4, s);
            let ct_star = a.star_vec(&QVec::unit(4, t));
            f[s][t] = a.mul_vec(&a.mul_vec(&cs, &j), &ct_star);
        }
    }
    CoordinateQuadruple { kind: Kind::BC, a, c: ModuleC { dim: 4, act, f } }
}

fn b_clifford2() -> CoordinateQuadruple {
    // A = F, B = F^2 with the standard symmetric form; product
    // (a + b)(a' + b') = (aa' + g(b, b')) + (a b' + a' b)
    let dim = 3;
    let mut mul = vec![vec![QVec::zero(dim); dim]; dim];
    for i in 0..dim {
        mul[0][i] = QVec::unit(dim, i);
        mul[i][0] = QVec::unit(dim, i);
    }
    for i in 1..dim {
        mul[i][i] = QVec::unit(dim, 0);
    }
    let star = Matrix::from_fn(dim, dim, |r, c| {
        if r != c {
            Q::zero()
        } else if r == 0 {
            Q::one()
        } else {
            -Q::one()
        }
    });
    let a = unit_alg(dim, 0, mul, Some(star));
    CoordinateQuadruple { kind: Kind::B, a, c: ModuleC::trivial() }
}

fn bc_nil(k: usize) -> CoordinateQuadruple {
    CoordinateQuadruple { kind: Kind::BC, a: nilpotent_square_zero(k), c: ModuleC::trivial() }
}

fn bc_heisenberg() -> CoordinateQuadruple {
    // Truncated Heisenberg algebra: basis {1, x, y, z} with xy = z,
    // yx = -z, all other products of generators zero, and the involution
    // negating x, y, z. The commutator [x, y] = 2z is central and
    // star-skew, which is what a non-uniform direction in HF(b) requires.
    let dim = 4;
    let mut mul = vec![vec![QVec::zero(dim); dim]; dim];
    for i in 0..dim {
        mul[0][i] = QVec::unit(dim, i);
        mul[i][0] = QVec::unit(dim, i);
    }
    mul[1][2] = QVec::unit(dim, 3);
    mul[2][1] = QVec::unit(dim, 3).neg();
    let star = Matrix::from_fn(dim, dim, |r, c| {
        if r != c {
            Q::zero()
        } else if r == 0 {
            Q::one()
        } else {
            -Q::one()
        }
    });
    let a = FiniteAlgebra { dim, unit: QVec::unit(dim, 0), mul, star: Some(star) };
    CoordinateQuadruple { kind: Kind::BC, a, c: ModuleC::trivial() }
}

pub const CATALOG_NAMES: [&str; 10] = [
    "bc-symplectic-rank1",
    "bc-exchange",
    "bc-matrix2",
    "bc-heisenberg",
    "bc-nil2",
    "bc-nil3",
    "d-dual-numbers",
    "a-matrix2",
    "c-transpose2",
    "b-clifford2",
];

/// Look up a shipped instance by name. Every entry validates with zero
/// violations.
pub fn catalog(name: &str) -> Result<CoordinateQuadruple, CoordsError> {
    match name {
        "bc-symplectic-rank1" => Ok(bc_symplectic_rank1()),
        "bc-exchange" => Ok(bc_exchange()),
        "bc-matrix2" => Ok(bc_matrix2()),
        "bc-heisenberg" => Ok(bc_heisenberg()),
        "bc-nil2" => Ok(bc_nil(2)),
        "bc-nil3" => Ok(bc_nil(3)),
        "d-dual-numbers" => Ok(d_dual_numbers()),
        "a-matrix2" => Ok(a_matrix2()),
        "c-transpose2" => Ok(c_transpose2()),
        "b-clifford2" => Ok(b_clifford2()),
        other => Err(CoordsError::UnknownName(other.to_string())),
    }
}

// ---------------------------------------------------------------------------
// quadruple file format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    dim: usize,
    unit: Vec<String>,
    mul: Vec<Vec<Vec<String>>>,
    star: StarFile,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum StarFile {
    Named(String),
    Rows(Vec<Vec<String>>),
}

#[derive(Serialize, Deserialize)]
struct ModuleFile {
    dim: usize,
    act: Vec<Vec<Vec<String>>>,
    f: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
struct QuadrupleFile {
    kind: String,
    a: AlgebraFile,
    #[serde(rename = "C")]
    c: ModuleFile,
}

#[derive(Debug)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quadruple parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

fn q_to_string(q: &Q) -> String {
    q.to_string()
}

fn q_from_string(s: &str) -> Result<Q, ParseError> {
    Q::from_str(s).map_err(|e| ParseError(format!("bad rational {s:?}: {e}")))
}

fn vec_to_strings(v: &QVec) -> Vec<String> {
    v.to_dense().iter().map(q_to_string).collect()
}

fn vec_from_strings(dim: usize, ss: &[String]) -> Result<QVec, ParseError> {
    if ss.len() != dim {
        return Err(ParseError(format!("expected {dim} coordinates, got {}", ss.len())));
    }
    let coords = ss.iter().map(|s| q_from_string(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(QVec::from_dense(&coords))
}

/// Serialize a quadruple to the documented JSON format. Deterministic; the
/// output round-trips bit-exactly through `quadruple_from_json`.
pub fn quadruple_to_json(q: &CoordinateQuadruple) -> String {
    let star = match &q.a.star {
        None => StarFile::Named("identity".into()),
        Some(m) => StarFile::Rows(
            (0..q.a.dim)
                .map(|i| vec_to_strings(&m.apply(&QVec::unit(q.a.dim, i))))
                .collect(),
        ),
    };
    let file = QuadrupleFile {
        kind: q.kind.as_str().to_string(),
        a: AlgebraFile {
            dim: q.a.dim,
            unit: vec_to_strings(&q.a.unit),
            mul: q.a.mul.iter().map(|row| row.iter().map(vec_to_strings).collect()).collect(),
            star,
        },
        c: ModuleFile {
            dim: q.c.dim,
            act: q.c.act.iter().map(|row| row.iter().map(vec_to_strings).collect()).collect(),
            f: q.c.f.iter().map(|row| row.iter().map(vec_to_strings).collect()).collect(),
        },
    };
    let mut out = serde_json::to_string_pretty(&file).expect("serialization cannot fail");
    out.push('\n');
    out
}

pub fn quadruple_from_json(text: &str) -> Result<CoordinateQuadruple, ParseError> {
    let file: QuadrupleFile = serde_json::from_str(text)
        .map_err(|e| ParseError(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let kind = Kind::parse(&file.kind)
        .ok_or_else(|| ParseError(format!("unknown kind {:?}", file.kind)))?;
    let dim = file.a.dim;
    if file.a.mul.len() != dim {
        return Err(ParseError(format!("mul must have {dim} rows")));
    }
    let mut mul = Vec::with_capacity(dim);
    for row in &file.a.mul {
        if row.len() != dim {
            return Err(ParseError(format!("mul rows must have {dim} entries")));
        }
        mul.push(row.iter().map(|v| vec_from_strings(dim, v)).collect::<Result<Vec<_>, _>>()?);
    }
    let star = match &file.a.star {
        StarFile::Named(s) if s == "identity" => None,
        StarFile::Named(s) => return Err(ParseError(format!("unknown star {s:?}"))),
        StarFile::Rows(rows) => {
            if rows.len() != dim {
                return Err(ParseError(format!("star must have {dim} rows")));
            }
            let mut m = Matrix::zero(dim, dim);
            for (i, row) in rows.iter().enumerate() {
                let v = vec_from_strings(dim, row)?;
                for (k, c) in v.iter() {
                    m.set(k, i, c.clone());
                }
            }
            Some(m)
        }
    };
    let unit = vec_from_strings(dim, &file.a.unit)?;
    let cdim = file.c.dim;
    if file.c.act.len() != if cdim == 0 { 0 } else { dim } {
        return Err(ParseError("act must have one row per a-basis element".into()));
    }
    let mut act = Vec::new();
    for row in &file.c.act {
        if row.len() != cdim {
            return Err(ParseError(format!("act rows must have {cdim} entries")));
        }
        act.push(row.iter().map(|v| vec_from_strings(cdim, v)).collect::<Result<Vec<_>, _>>()?);
    }
    if file.c.f.len() != cdim {
        return Err(ParseError(format!("f must have {cdim} rows")));
    }
    let mut f = Vec::new();
    for row in &file.c.f {
        if row.len() != cdim {
            return Err(ParseError(format!("f rows must have {cdim} entries")));
        }
        f.push(row.iter().map(|v| vec_from_strings(dim, v)).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(CoordinateQuadruple {
        kind,
        a: FiniteAlgebra { dim, unit, mul, star },
        c: ModuleC { dim: cdim, act, f },
    })
}
