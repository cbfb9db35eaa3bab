//! Text formats: parsers for every input grammar and canonical printers.
//!
//! Parsing and printing are inverse on canonical forms: `print ∘ parse`
//! canonicalizes, `parse ∘ print` is the identity.

mod parse;
mod print;

pub use parse::{
    parse_domain, parse_element, parse_element_set, parse_family, parse_ideal,
    parse_local_embedding, parse_monomial, parse_petri, parse_polynomial, parse_target_vector,
};
pub use print::{print_basis, print_certificate, print_ideal, print_pair_line};
