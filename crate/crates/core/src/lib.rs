//! The six-valued logic of involutive Stone algebras: finite algebras, formulas,
//! degree-preserving semantics, conjunctive normal forms and a sequent
//! calculus with a checker and prover.

pub mod algebra;
pub mod lfi;
pub mod normalform;
pub mod semantics;
pub mod sequent;
pub mod syntax;

pub use algebra::{AlgebraError, FiniteAlgebra, TruthValue};
pub use normalform::{nf_derivation, to_conjunctive_form, Block, ConjunctiveForm, NfDerivation, NfError, NfOptions};
pub use semantics::{find_countermodel, Countermodel, EntailmentResult, Valuation};
pub use sequent::{check_proof, expand_macros, prove, ProofOutcome, ProofTree, Rule, Sequent, SequentError};
pub use syntax::{parse_formula, Formula, ParseError};
