//! Sequent calculus for propositional logic with questions and defeaters.
//!
//! * [`formula`]: declarative formulas, questions, parsing.
//! * [`semantics`]: entailment, evocation, question implication.
//! * [`sequent`]: sequents, defeater sets, defeater assignments.
//! * [`calculus`]: rules, proof trees, the checker.
//! * [`prover`]: decision procedures and bounded search.
//! * [`strategy`]: subquestion discovery and the questioning agent.
//!
//! ```
//! use erotetic::prover::{prove, SearchBounds};
//! use erotetic::sequent::{parse_sequent, DefeaterAssignment};
//!
//! let s = parse_sequent("p | q, ~p |- [] q").unwrap();
//! assert!(prove(&s, &DefeaterAssignment::new(), &SearchBounds::default()).is_provable());
//! ```

pub mod calculus;
pub mod formula;
pub mod prover;
pub mod semantics;
pub mod sequent;
pub mod strategy;
