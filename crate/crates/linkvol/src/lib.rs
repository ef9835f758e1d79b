//! Combinatorial analysis of link diagrams.
//!
//! Given a planar diagram code, a braid word, or a plat specification,
//! this crate computes the all-A state, the reduced state graph and its
//! Euler characteristic, the twist-region census with small-inner- and
//! special-circle classification, and every volume bound those counts
//! license, with the hypothesis checklist that gates each one. A
//! brute-force Kauffman bracket serves as an independent oracle for the
//! stable coefficient identity on small diagrams.
//!
//! ```
//! use linkvol::diagram::parse_pd;
//! use linkvol::state::{all_a_state, build_ga, reduce_ga};
//!
//! let d = parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
//! let state = all_a_state(&d);
//! let reduced = reduce_ga(&build_ga(&state));
//! assert_eq!(reduced.neg_euler_char(), 0);
//! ```

pub mod bounds;
pub mod braid;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod jones;
pub mod plat;
pub mod report;
pub mod state;
pub mod twist;

pub use diagram::{parse_pd, LinkDiagram};
pub use error::{AnalysisError, CorpusError, DiagramError};
pub use report::{analyze, AnalysisInput, AnalysisOptions, AnalysisReport};
