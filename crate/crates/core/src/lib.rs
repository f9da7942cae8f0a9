//! Engine for homotopical structures on finite categories.
//!
//! A homotopical structure assigns to each object `S` a cylinder-like object
//! `Ŝ` together with two end inclusions `i_S, j_S : S → Ŝ`, subject to four
//! axioms (a retraction onto `S`, an end swap, a pasting rule for maps out of
//! `Ŝ`, and functoriality of the assignment). Two morphisms `φ, ψ : R → Q`
//! are homotopic when some `h : R̂ → Q` restricts to `φ` at one end and `ψ`
//! at the other. The engine decides the axioms by exhaustive witness search
//! over a finite composition table, computes the induced congruence and its
//! quotient category, and instantiates the construction both on groupoid
//! cylinders and on a finite-dimensional operator model of Banach spaces.
//!
//! Everything is deterministic: searches scan in input order, reports
//! serialize with sorted keys, and parallel runs merge in a fixed order.

pub use nalgebra;

pub mod banach;
pub mod error;
pub mod fincat;
pub mod homotopy;
pub mod hstruct;
pub mod instances;
pub mod quotient;
pub mod report;
pub mod union_find;

pub use error::EngineError;
pub use fincat::{CategoryData, FinCategory, MorId, ObjId, ValidationReport};
pub use hstruct::{AxiomReport, HomotopicalStructure, StructureData};
