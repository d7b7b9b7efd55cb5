//! Exact algebra behind Hewett's finite subgroups of Morava stabilizer
//! groups: cyclotomic arithmetic, cyclic crossed-product algebras built from
//! an explicit 2-cocycle, the metacyclic groups `G_alpha`, local
//! class-field-theory bookkeeping, and positive involutions of the second
//! kind on the algebras `D'` carrying them.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;

pub mod arith;
pub mod artin;
pub mod crossed;
pub mod cyclotomic;
pub mod groups;
pub mod hewett;
pub mod involution;
pub mod numeric;
