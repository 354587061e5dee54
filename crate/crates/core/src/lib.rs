//! Spectral and covering relations between small graphs.
//!
//! The crate computes walk matrices, main eigenvalues and main eigenspaces, canonical
//! double coverings and TF-isomorphisms, evaluates how these relations imply one another
//! for pairs of graphs, and runs a census over graph6 corpora looking for pairs with
//! isomorphic double covers.

pub mod canon;
pub mod cdc;
pub mod census;
pub mod error;
pub mod exact;
pub mod graph;
pub mod graph6;
pub mod hierarchy;
pub mod report;
pub mod spectral;
pub mod tf;
pub mod walk;

pub use canon::{certificate, isomorphic, Certificate};
pub use cdc::{cdc, CdcGraph};
pub use census::{census_of_graphs, run_census, scan_hierarchy, CensusOptions, CensusReport};
pub use error::{Error, Result};
pub use exact::{column_space_equal, int_rank, solve_rational, IntMatrix, RatMatrix, RatVector};
pub use graph::{Bipartition, Graph};
pub use graph6::{parse_graph6, read_graph6_file, write_graph6};
pub use hierarchy::{
    analyze_pair, check_question_cdc_implies_comain, implication_violations, relation_profile,
    PairAnalysis, RelationProfile, Violation,
};
pub use report::{CdcReport, GraphReport, PairReport};
pub use spectral::{
    comain, main_decomposition, same_principal_main_vectors, spectrum, walk_count_total,
    MainDecomposition, MainPolynomial, Spectrum,
};
pub use tf::{tf_isomorphism, verify_tf, TfWitness};
pub use walk::{
    main_eigenspace_equal, related_walk_matrices, same_walk_matrices_all_k, same_walk_matrix,
    walk_matrix, walk_matrix_k, WalkMatrixFamily,
};
