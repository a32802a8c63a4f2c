//! Knowledge value stream analytics.
//!
//! Models who-approaches-whom knowledge-flow graphs and decision logs for a
//! product development organisation and computes:
//!
//! - [`flow`]: density, reciprocity, tacit/explicit split, cut points,
//!   mutual cliques and the density-reciprocity quadrant per knowledge area;
//! - [`flux`]: knowledge flux (ties per decision), favorable learning-cycle
//!   rate, learning-cycle distributions, decision codification and a
//!   one-dimensional principal-component projection;
//! - [`scenario`]: knowledge-gap scenarios, uncertainty-variability
//!   scenarios, the perception-reality matrix and uncertainty posets;
//! - [`maturity`]: CVSS scorecards, deployment phase and waste points;
//! - [`report`]: the flow-flux report with health assessment, rendered as
//!   text, JSON, CSV or SVG.
//!
//! Datasets are read from a directory with [`load_dataset`]; see [`io`] for
//! the file layout. The `kvstream` binary exposes everything through
//! [`cli::run_command`].
//!
//! ```
//! use kvstream::flow::{self, FlowGraph};
//! use kvstream::model::ActorKind::{Person, Repository};
//!
//! let g = FlowGraph::from_parts(
//!     "fpga",
//!     [("ann", Person), ("bob", Person), ("wiki", Repository)],
//!     [("ann", "bob", 1), ("bob", "ann", 1), ("bob", "wiki", 5)],
//! )
//! .unwrap();
//! assert_eq!(flow::density(&g).unwrap(), 1.0);
//! assert_eq!(flow::reciprocity(&g).unwrap(), 100.0);
//! ```

pub mod cli;
pub mod config;
pub mod flow;
pub mod flux;
pub mod io;
pub mod maturity;
pub mod model;
pub mod pca;
pub mod report;
pub mod scenario;
pub mod validate;

pub use config::Config;
pub use io::{load_dataset, parse_dataset, save_dataset, LoadError};
pub use model::Dataset;
pub use validate::{validate_dataset, ValidationReport};
