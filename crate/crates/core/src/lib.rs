//! Gallai colorings of complete graphs: rainbow-triangle-free edge colorings,
//! their modular decomposition, monochromatic cycle search, extremal
//! constructions with checkable absence certificates, and a harness that
//! checks Gallai-Ramsey statements for cycles on generated instances.
//!
//! ```
//! use gallai::{build_odd_extremal, find_mono_cycle};
//!
//! let c = build_odd_extremal(3, 2).unwrap();
//! assert_eq!(c.order(), 12);
//! assert!(c.is_gallai());
//! assert!(find_mono_cycle(&c, 7, None).unwrap().is_none());
//! ```

pub mod coloring;
pub mod constructions;
pub mod cycles;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod verify;

pub use coloring::{load_coloring, pair_count, Color, ColoredKn, TriangleWitness, MAX_COLORS};
pub use constructions::{
    build_even_extremal, build_g0, build_odd_extremal, certify_no_mono_cycle, AbsenceCertificate,
    CertificateReport, ConstructionSpec, Family, G0Graph,
};
pub use cycles::{
    bipartite_even_cycle, bondy_certificate, find_mono_cycle, has_cycle_length,
    multipartite_odd_cycle, BondyOutcome, CycleWitness, EvenCycleOutcome, G0Witness,
    DEFAULT_BUDGET,
};
pub use decomposition::{
    compose, decompose_full, enumerate_gallai, gallai_partition, random_gallai, reduced_graph,
    refine_connected, EnumerationCaps, EnumerationMode, GallaiPartition, GallaiTree, TreeNode,
};
pub use error::{Error, Result};
pub use graph::SimpleGraph;
