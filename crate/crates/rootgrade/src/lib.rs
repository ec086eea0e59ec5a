//! Exact-arithmetic construction and verification of root-graded Lie
//! algebras of type BC at finite rank, together with their central
//! extensions.
//!
//! The pipeline mirrors the underlying algebra:
//!
//! 1. [`coords`] defines coordinate quadruples `(a, *, C, f)` of five kinds
//!    and ships a catalog of desk-scale instances;
//! 2. [`bee`] builds the algebra `b = a (+) C` with its product, derivation
//!    family `d_{x,y}` and `beta*` maps;
//! 3. [`homology`] forms the Lie algebra `{b,b} = (b (x) b)/K`, its full
//!    skew-dihedral homology group `HF(b)`, the uniform-property check and
//!    the quotients `<b,b>`;
//! 4. [`symplectic`] realizes the finite-rank symplectic layer: `G = sp`,
//!    the module `S` of trace-zero form-symmetric operators, the natural
//!    module `V`, projectors, the trace-corrected product and weight
//!    decompositions;
//! 5. [`graded`] assembles `L(q, K) = (G (x) A) (+) (S (x) B) (+) (V (x) C)
//!    (+) <b,b>` with the nine-row bracket table and verifies the graded
//!    axioms;
//! 6. [`extensions`] handles 2-cocycles, central extensions, grading
//!    transfer, and the universal central extension certificates.
//!
//! Everything is exact: scalars are arbitrary-precision rationals
//! ([`linalg::Q`]) and every verification is an identity check, not an
//! approximation.

#![forbid(unsafe_code)]

pub mod bee;
pub mod coords;
pub mod extensions;
pub mod graded;
pub mod homology;
pub mod linalg;
pub mod symplectic;
