//! Exact binomial partition sums and the inequalities around them.
//!
//! The central object is
//!
//! ```text
//! p(n,k) = sum_{j=0}^{k} C(n-j, k-j) * p(j)
//! ```
//!
//! where `p(j)` is the partition function. The crate computes these values
//! exactly, checks the unimodality of each row `p(n, 1..=n)` and the explicit
//! upper bounds known for them, and reports the Ado-type dimension bounds
//! for nilpotent Lie algebras that `p(n,k)` feeds into.
//!
//! - [`partitions`]: `p(n)`, restricted counts `p_k(j)`, an enumeration
//!   oracle and generating-function coefficient checks.
//! - [`sums`]: the `p(n,k)` triangle, the generic `F(n, l)` framework,
//!   peak location and the exact sign lemmas.
//! - [`interval`]: outward-rounded interval arithmetic on dyadic endpoints.
//! - [`certified`]: q-series tail enclosures and margin-checked verification
//!   of the real-valued inequalities.
//! - [`lie`]: `mu(g)` bounds for nilpotent Lie algebras.
//! - [`cli`]: the `binpart` command line front end.

pub mod binomial;
pub mod certified;
pub mod cli;
mod error;
pub mod interval;
pub mod lie;
pub mod partitions;
pub mod sums;

pub use error::{Error, Result};

/// Arbitrary-precision nonnegative integer used for every count in the crate.
pub type Nat = num_bigint::BigUint;

/// Serde helpers that write big integers as decimal strings.
pub mod decimal {
    use num_bigint::{BigInt, BigUint};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }

    pub mod signed {
        use super::*;

        pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
            s.collect_str(value)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
            let text = String::deserialize(d)?;
            text.parse().map_err(serde::de::Error::custom)
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(
            value: &Option<BigUint>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<BigUint>, D::Error> {
            let text = Option::<String>::deserialize(d)?;
            text.map(|t| t.parse().map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
