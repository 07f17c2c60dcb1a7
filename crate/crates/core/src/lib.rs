//! Certificate-producing decision engine for substructural logics with a
//! theorem of alternatives.
//!
//! ```
//! use toa::alternatives::prove_consequence;
//! use toa::formula::parse;
//! use toa::logics::lookup_logic;
//! use toa::oracles::Budget;
//!
//! let a = lookup_logic("A").unwrap();
//! let hyps = [parse("p -> q").unwrap(), parse("q -> r").unwrap()];
//! let report = prove_consequence(&a, &hyps, &parse("p -> r").unwrap(), &Budget::default()).unwrap();
//! assert!(report.is_proved());
//! ```

pub mod alternatives;
pub mod cli;
pub mod density;
pub mod formula;
pub mod gen;
pub mod interpolation;
pub mod linear;
pub mod logics;
pub mod normalizer;
pub mod oracles;
pub mod semantics;
