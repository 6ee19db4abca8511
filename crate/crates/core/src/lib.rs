//! Rational subsets of free and virtually free groups as explicit machines.
//!
//! * [`words`]: signed alphabets, free and cyclic reduction.
//! * [`automata`]: finite automata with the rational operations.
//! * [`free_subsets`]: Benois saturation and decisions on rational subsets of a free group.
//! * [`grammar`]: context-free grammars, CYK, Bar-Hillel intersection.
//! * [`conjugates`]: grammars for the conjugate set α(K, L) and the doubly
//!   generalized conjugacy problem with rational constraints.
//! * [`vfree`]: virtually free groups, normal forms and geodesic languages.
//! * [`oracles`]: brute-force references used by the test suites.

pub mod acceptance;
pub mod automata;
pub mod conjugates;
pub mod error;
pub mod free_subsets;
pub mod grammar;
pub mod oracles;
pub mod vfree;
pub mod words;

pub use automata::Nfa;
pub use error::{Error, Result};
pub use grammar::Cfg;
pub use words::{Alphabet, Letter, ReducedWord, Term, Word};
