//! Edge-connectivity toolkit for undirected multigraphs.
//!
//! The centerpiece is the decomposition of an arbitrary multigraph into its
//! 4-edge-connected components, computed by reducing to 3-edge-connected
//! instances, enumerating every 3-edge-cut of each instance (either with a
//! randomized xor-hashing pass or a fully deterministic pass), and reading the
//! component labels off the tree of 3-edge-cuts.
//!
//! Entry points:
//! - [`reduction::four_ecc`]: vertex partition into 4-edge-connected components.
//! - [`cuts::enumerate_3cuts`]: all 3-edge-cuts of a 3-edge-connected multigraph.
//! - [`cuttree::build_cut_tree`]: the rooted tree whose edges biject with the cuts.
//! - [`oracle`]: brute-force ground truth for every stage, used by `verify`
//!   workflows and the test suite.

pub mod cuts;
pub mod cuttree;
pub mod dfs;
pub mod dsu;
pub mod error;
pub mod gen;
pub mod graph;
pub mod hashing;
pub mod oracle;
pub mod pathtopk;
pub mod reduction;

pub use cuts::{Cut3, CutSet, Mode};
pub use error::Error;
pub use graph::{EdgeId, Labeling, Multigraph, VertexId};

pub type Result<T> = std::result::Result<T, Error>;
