//! Equivariant polynomial ideals over infinite, structured variable
//! domains: Groebner bases, ideal membership with certificates, and two
//! applications (reversible Petri nets with data, orbit-finite linear
//! systems).
//!
//! Variables come from a domain expression (`ord[k]`, `fin[d]`,
//! lexicographic products, the rational order `q`, equality atoms `eq`);
//! embeddings of the domain act on polynomials by renaming variables, and
//! ideals are closed under that action. Over well-ordered domains the
//! completion procedure in [`gb`] decides membership; `q`/`eq` instances
//! are translated into `ord[2]`-instances by [`front::reduce_instance`].
//!
//! Everything is exact (rationals or GF(p)) and deterministic: the same
//! inputs always produce byte-identical outputs and certificates.

pub mod domain;
pub mod emb;
pub mod error;
pub mod field;
pub mod front;
pub mod gb;
pub mod monomial;
pub mod orbits;
pub mod ordinal;
pub mod poly;
pub mod text;

pub use domain::{DomainExpr, Element};
pub use emb::{ca1_extends, ca2_presentation, compose, extend_local, LocalEmbedding};
pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use gb::{
    autoreduce, buchberger, buchberger_with, classical_gb, classical_member, classical_reduce,
    divide_step, member, member_with, member_with_expansion, pres, reduce, reduce_with_fuel,
    spoly, verify_certificate, Basis, Certificate, DivisionStep, EngineOptions, FuelConfig,
    Membership, RunStats,
};
pub use monomial::{mono_cmp_lex, mono_wqo_leq, Monomial};
pub use orbits::{canonical_tuple, tuple_orbit_reps};
pub use ordinal::{ord_add, ord_sub, Ordinal};
pub use poly::{rename, rename_monomial, Polynomial};
